//! Exact sparse row reduction over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;
use crate::tensor::add_to;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// `x += c · y`.
pub fn axpy<K: Ord + Clone>(x: &mut SparseVec<K>, c: &Q, y: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in y {
        add_to(x, k.clone(), c * v);
    }
}

/// A reduced row echelon basis of a subspace, each row having pivot at its
/// smallest key with coefficient 1 and no other row mentioning that pivot.
///
/// When `track` is on, each row also remembers which inserted vectors it is a
/// combination of, so relations among inputs can be recovered.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
    combos: BTreeMap<K, SparseVec<usize>>,
    track: bool,
    inserted: usize,
    relations: Vec<SparseVec<usize>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new(), combos: BTreeMap::new(), track: false, inserted: 0, relations: Vec::new() }
    }

    pub fn tracking() -> Self {
        Echelon { track: true, ..Echelon::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K>)> {
        self.rows.iter()
    }

    /// Reduces `v` against the basis; the result has no pivot keys.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_tracked(v.clone(), None).0
    }

    /// Expresses `v` as a combination of inserted vectors, if it lies in the span.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        assert!(self.track, "solve needs a tracking echelon");
        let (r, c) = self.reduce_tracked(v.clone(), Some(SparseVec::new()));
        if r.is_empty() {
            let mut c = c.unwrap();
            for x in c.values_mut() {
                *x = -x.clone();
            }
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    fn reduce_tracked(
        &self,
        mut v: SparseVec<K>,
        mut combo: Option<SparseVec<usize>>,
    ) -> (SparseVec<K>, Option<SparseVec<usize>>) {
        let pivots: Vec<K> = v.keys().filter(|k| self.rows.contains_key(*k)).cloned().collect();
        for p in pivots {
            let c = match v.get(&p) {
                Some(c) => -c.clone(),
                None => continue,
            };
            axpy(&mut v, &c, &self.rows[&p]);
            if let Some(cb) = combo.as_mut() {
                axpy(cb, &c, &self.combos[&p]);
            }
        }
        (v, combo)
    }

    /// Inserts a vector; returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let start = self.track.then(|| SparseVec::from([(index, Q::one())]));
        let (mut v, combo) = self.reduce_tracked(v, start);
        let Some((pivot, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            if let Some(c) = combo {
                self.relations.push(c);
            }
            return false;
        };
        let inv = Q::one() / lead;
        for x in v.values_mut() {
            *x *= &inv;
        }
        let combo = combo.map(|mut c| {
            for x in c.values_mut() {
                *x *= &inv;
            }
            c
        });
        for (p, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &-c.clone(), &v);
                if let Some(nc) = &combo {
                    axpy(self.combos.get_mut(p).unwrap(), &-c, nc);
                }
            }
        }
        if let Some(c) = combo {
            self.combos.insert(pivot.clone(), c);
        }
        self.rows.insert(pivot, v);
        true
    }

    /// Linear relations among the inserted vectors found so far (tracking only).
    pub fn relations(&self) -> &[SparseVec<usize>] {
        &self.relations
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, q(c))).collect()
    }

    #[test]
    fn rank_and_reduce() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(e.insert(v(&[(2, 1), (3, 1)])));
        assert!(!e.insert(v(&[(1, 1), (3, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(1, 2), (2, 4), (3, 2)])));
        assert!(!e.contains(&v(&[(3, 1)])));
        assert_eq!(rank(vec![v(&[(1, 1)]), v(&[(1, 2)])]), 1);
    }

    #[test]
    fn solve_and_relations() {
        let mut e = Echelon::tracking();
        e.insert(v(&[(1, 1), (2, 1)]));
        e.insert(v(&[(2, 1), (3, 1)]));
        e.insert(v(&[(1, 1), (3, -1)]));
        let target = v(&[(1, 2), (2, 1), (3, -1)]);
        let sol = e.solve(&target).unwrap();
        let mut rebuilt = SparseVec::new();
        let inputs = [v(&[(1, 1), (2, 1)]), v(&[(2, 1), (3, 1)])];
        for (i, c) in &sol {
            axpy(&mut rebuilt, c, &inputs[*i]);
        }
        assert_eq!(rebuilt, target);
        let rel = &e.relations()[0];
        assert_eq!(rel, &BTreeMap::from([(0, q(-1)), (1, q(1)), (2, q(1))]));
    }
}
