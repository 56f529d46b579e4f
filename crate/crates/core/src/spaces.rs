//! Explicit weight tables of the degree-2 spaces `h_{g,1}(2)`, `h_{g,*}(2)`
//! and `h_g(2)`, computed from per-weight ranks.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hl::HLElement;
use crate::letter::{Genus, Letter, Word};
use crate::lie::{lyndon_basis, LieElement, LieMonomial};
use crate::linalg::{Echelon, SparseVec};
use crate::quotient::QuotientContext;
use crate::rep::WeightTable;
use crate::sp::{SpGenerator, Weight};
use crate::tensor::Tensor;
use crate::tree::phi;

fn tensor_vec(t: &Tensor) -> SparseVec<Word> {
    t.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

fn lie_vec(x: &LieElement) -> SparseVec<LieMonomial> {
    x.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

/// Basis of `H ⊗ L(3)` (or of `H ⊗ L_g(3)` when `closed`) grouped by weight.
fn domain_by_weight(g: Genus, closed: bool) -> Result<BTreeMap<Weight, Vec<(Letter, LieMonomial)>>> {
    let pivots: Vec<LieMonomial> = if closed {
        QuotientContext::get(3, g)?.pivots().cloned().collect()
    } else {
        Vec::new()
    };
    let mut out: BTreeMap<Weight, Vec<(Letter, LieMonomial)>> = BTreeMap::new();
    for m in lyndon_basis(3, g) {
        if pivots.contains(&m) {
            continue;
        }
        for x in g.letters() {
            let w = Weight::of_word(g, &[x]).add(&m.weight(g));
            out.entry(w).or_default().push((x, m.clone()));
        }
    }
    Ok(out)
}

/// The three degree-2 spaces as weight tables.
#[derive(Clone, Debug)]
pub struct DegreeTwoSpaces {
    pub h: WeightTable,
    pub hstar: WeightTable,
    pub hg: WeightTable,
}

impl DegreeTwoSpaces {
    /// Cached per genus.
    pub fn get(g: Genus) -> Result<Arc<DegreeTwoSpaces>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DegreeTwoSpaces>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.lock().unwrap().get(&g.get()) {
            return Ok(s.clone());
        }
        let s = Arc::new(DegreeTwoSpaces { h: h2_weights(g)?, hstar: hstar2_weights(g)?, hg: hg2_weights(g)? });
        cache.lock().unwrap().insert(g.get(), s.clone());
        Ok(s)
    }

    /// `[2²]`, `[1²]` and `[0]` parts, read off as successive differences.
    pub fn summands(&self) -> (WeightTable, WeightTable, WeightTable) {
        (self.hg.clone(), self.hstar.minus(&self.hg), self.h.minus(&self.hstar))
    }
}

/// Weights of `h_{g,1}(2) = Ker(H ⊗ L(3) → L(4))`.
pub fn h2_weights(g: Genus) -> Result<WeightTable> {
    let domain = domain_by_weight(g, false)?;
    let rows: Vec<(Weight, i64)> = domain
        .into_par_iter()
        .map(|(w, items)| {
            let mut e = Echelon::new();
            for (x, m) in &items {
                e.insert(tensor_vec(&Tensor::letter(*x).commutator(&m.iota())));
            }
            (w, (items.len() - e.rank()) as i64)
        })
        .collect();
    Ok(table(rows))
}

/// Weights of `h_{g,*}(2) = Ker(H ⊗ L_g(3) → L_g(4))`.
pub fn hstar2_weights(g: Genus) -> Result<WeightTable> {
    let q4 = QuotientContext::get(4, g)?;
    let domain = domain_by_weight(g, true)?;
    let rows: Result<Vec<(Weight, i64)>> = domain
        .into_par_iter()
        .map(|(w, items)| {
            let mut e = Echelon::new();
            for (x, m) in &items {
                let b = LieElement::letter(*x).bracket(&LieElement::monomial(m.clone()));
                e.insert(lie_vec(&q4.project(&b)?));
            }
            Ok((w, (items.len() - e.rank()) as i64))
        })
        .collect();
    Ok(table(rows?))
}

/// Weights of `h_g(2) = h_{g,*}(2) / Ψ_2(L_g(2))`.
pub fn hg2_weights(g: Genus) -> Result<WeightTable> {
    let hstar = hstar2_weights(g)?;
    let mut by_weight: BTreeMap<Weight, Echelon<(Letter, LieMonomial)>> = BTreeMap::new();
    for m in lyndon_basis(2, g) {
        let image: HLElement = phi(&LieElement::monomial(m.clone()), g).eta().closed_project(g)?;
        let v: SparseVec<(Letter, LieMonomial)> = image.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
        by_weight.entry(m.weight(g)).or_default().insert(v);
    }
    let mut out = hstar;
    for (w, e) in by_weight {
        out.add(w, -(e.rank() as i64));
    }
    Ok(out)
}

fn table(rows: Vec<(Weight, i64)>) -> WeightTable {
    let mut out = WeightTable::new();
    for (w, m) in rows {
        out.add(w, m);
    }
    out
}

/// Weights of the span of `vectors`, each split into weight components.
pub fn weights_of_subspace(vectors: &[Tensor], g: Genus) -> Result<WeightTable> {
    let Some(first) = vectors.first() else { return Ok(WeightTable::new()) };
    if vectors.iter().any(|v| v.degree() != first.degree()) {
        return Err(Error::arg("vectors of different degrees"));
    }
    let mut by_weight: BTreeMap<Weight, Echelon<Word>> = BTreeMap::new();
    for v in vectors {
        for (w, part) in v.weight_components(g) {
            by_weight.entry(w).or_default().insert(tensor_vec(&part));
        }
    }
    Ok(table(by_weight.into_iter().map(|(w, e)| (w, e.rank() as i64)).collect()))
}

/// Weights of the `sp(2g)`-submodule generated by `v`.
pub fn generated_submodule(v: &Tensor, g: Genus) -> Result<WeightTable> {
    v.check_genus(g)?;
    let gens = SpGenerator::all(g);
    let mut by_weight: BTreeMap<Weight, Echelon<Word>> = BTreeMap::new();
    let mut queue: VecDeque<Tensor> = VecDeque::new();
    for (_, part) in v.weight_components(g) {
        queue.push_back(part);
    }
    while let Some(x) = queue.pop_front() {
        let Some(w) = crate::sp::weight_of(g, &x) else { continue };
        let e = by_weight.entry(w).or_default();
        let r = e.reduce(&tensor_vec(&x));
        if r.is_empty() {
            continue;
        }
        e.insert(r);
        for &gen in &gens {
            let y = x.sp_apply(gen);
            if !y.is_zero() {
                queue.push_back(y);
            }
        }
    }
    Ok(table(by_weight.into_iter().map(|(w, e)| (w, e.rank() as i64)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::decompose;

    #[test]
    fn degree_two_spaces_at_genus_two() {
        let g = Genus::new(2).unwrap();
        let s = DegreeTwoSpaces::get(g).unwrap();
        assert_eq!(decompose(&s.h, g).unwrap().to_string(), "[2²] + [1²] + [0]");
        assert_eq!(decompose(&s.hstar, g).unwrap().to_string(), "[2²] + [1²]");
        assert_eq!(decompose(&s.hg, g).unwrap().to_string(), "[2²]");
    }

    #[test]
    fn weights_of_simple_spans() {
        let g = Genus::new(2).unwrap();
        let letters: Vec<Tensor> = g.letters().map(Tensor::letter).collect();
        let t = weights_of_subspace(&letters, g).unwrap();
        assert_eq!(t.dim(), 4);
        assert!(weights_of_subspace(&[], g).unwrap().is_empty());
        let sub = generated_submodule(&Tensor::letter(Letter::b(2)), g).unwrap();
        assert_eq!(sub, t);
    }
}
