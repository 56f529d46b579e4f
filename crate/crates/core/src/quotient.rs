//! The ideal `I` generated by `ω0` and the quotient `L_g = L_{g,1}/I`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::letter::Genus;
use crate::lie::{omega0, LieElement, LieMonomial};
use crate::linalg::{Echelon, SparseVec};
use crate::sp::Weight;

/// Row-reduced basis of `I(k)` split by weight; reduction against it gives
/// canonical coset representatives in `L_g(k)`.
#[derive(Debug)]
pub struct QuotientContext {
    degree: usize,
    genus: Genus,
    by_weight: BTreeMap<Weight, Echelon<LieMonomial>>,
}

pub(crate) fn lie_vec(x: &LieElement) -> SparseVec<LieMonomial> {
    x.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub(crate) fn lie_from_vec(degree: usize, v: SparseVec<LieMonomial>) -> LieElement {
    LieElement::from_terms(degree, v)
}

impl QuotientContext {
    /// The shared context for `(k, g)`, built on first use.
    pub fn get(k: usize, g: Genus) -> Result<Arc<QuotientContext>> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<QuotientContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.lock().unwrap().get(&(k, g.get())) {
            return Ok(c.clone());
        }
        let ctx = Arc::new(QuotientContext::build(k, g)?);
        Ok(cache.lock().unwrap().entry((k, g.get())).or_insert(ctx).clone())
    }

    fn build(k: usize, g: Genus) -> Result<QuotientContext> {
        if k < 2 {
            return Err(Error::arg(format!("the ideal starts in degree 2, not {k}")));
        }
        let spanning: Vec<LieElement> = if k == 2 {
            vec![omega0(g)]
        } else {
            let prev = QuotientContext::get(k - 1, g)?.basis();
            g.letters()
                .collect::<Vec<_>>()
                .into_par_iter()
                .flat_map_iter(|l| {
                    let y = LieElement::letter(l);
                    prev.iter().map(move |v| y.bracket(v)).collect::<Vec<_>>()
                })
                .collect()
        };
        let mut by_weight: BTreeMap<Weight, Echelon<LieMonomial>> = BTreeMap::new();
        for x in spanning {
            let Some((m, _)) = x.terms().next() else { continue };
            by_weight.entry(m.weight(g)).or_default().insert(lie_vec(&x));
        }
        Ok(QuotientContext { degree: k, genus: g, by_weight })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn ideal_dim(&self) -> usize {
        self.by_weight.values().map(Echelon::rank).sum()
    }

    pub fn quotient_dim(&self) -> usize {
        crate::lie::witt_dimension(self.degree, self.genus) - self.ideal_dim()
    }

    /// The reduced basis of `I(k)`.
    pub fn basis(&self) -> Vec<LieElement> {
        self.by_weight
            .values()
            .flat_map(|e| e.rows().map(|(_, r)| lie_from_vec(self.degree, r.clone())))
            .collect()
    }

    /// Pivot monomials; the remaining Lyndon monomials form a basis of `L_g(k)`.
    pub fn pivots(&self) -> impl Iterator<Item = &LieMonomial> {
        self.by_weight.values().flat_map(|e| e.pivots())
    }

    /// Canonical representative of the coset `x + I(k)`.
    pub fn project(&self, x: &LieElement) -> Result<LieElement> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: x.degree() });
        }
        let mut split: BTreeMap<Weight, SparseVec<LieMonomial>> = BTreeMap::new();
        for (m, c) in x.terms() {
            split.entry(m.weight(self.genus)).or_default().insert(m.clone(), c.clone());
        }
        let mut out = LieElement::zero(self.degree);
        for (w, v) in split {
            let r = match self.by_weight.get(&w) {
                Some(e) => e.reduce(&v),
                None => v,
            };
            for (m, c) in r {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, x: &LieElement) -> Result<bool> {
        Ok(self.project(x)?.is_zero())
    }
}

/// A basis of `I(k)`.
pub fn ideal_component(k: usize, g: Genus) -> Result<Vec<LieElement>> {
    Ok(QuotientContext::get(k, g)?.basis())
}

/// Canonical representative of `x` in `L_g(k)`.
pub fn quotient_project(x: &LieElement, g: Genus) -> Result<LieElement> {
    if x.degree() < 2 {
        return Ok(x.clone());
    }
    QuotientContext::get(x.degree(), g)?.project(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter as L;
    use crate::lie::lyndon_basis;
    use crate::sp::SpGenerator;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    #[test]
    fn ideal_dimensions() {
        assert_eq!(ideal_component(2, g(2)).unwrap().len(), 1);
        assert_eq!(ideal_component(3, g(2)).unwrap().len(), 4);
        assert_eq!(QuotientContext::get(3, g(2)).unwrap().quotient_dim(), 16);
        assert!(ideal_component(1, g(2)).is_err());
    }

    #[test]
    fn quotient_kills_ideal() {
        let w = omega0(g(2));
        assert!(quotient_project(&w, g(2)).unwrap().is_zero());
        let x = LieElement::letter(L::a(1)).bracket(&w);
        assert!(quotient_project(&x, g(2)).unwrap().is_zero());
        for m in lyndon_basis(3, g(2)) {
            let y = LieElement::monomial(m);
            let p = quotient_project(&y, g(2)).unwrap();
            assert_eq!(quotient_project(&(&y + &x), g(2)).unwrap(), p);
            assert_eq!(quotient_project(&p, g(2)).unwrap(), p);
        }
    }

    #[test]
    fn ideal_is_closed_and_sp_stable() {
        let ctx3 = QuotientContext::get(3, g(2)).unwrap();
        let ctx4 = QuotientContext::get(4, g(2)).unwrap();
        for v in ctx3.basis() {
            for l in g(2).letters() {
                assert!(ctx4.contains(&LieElement::letter(l).bracket(&v)).unwrap());
            }
            for gen in SpGenerator::all(g(2)) {
                assert!(ctx3.contains(&v.sp_apply(gen)).unwrap());
            }
        }
    }
}
