//! Detectors on `h_{g,1}(2)` and membership in the image of `Ψ_k`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hl::HLElement;
use crate::letter::{Genus, Letter};
use crate::lie::{lyndon_basis, LieElement, LieMonomial};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Q;
use crate::sp::Weight;
use crate::tree::phi;
use crate::wedge::{project, MultiWedgeElement, WedgeShape};

fn require_degree_two(h: &HLElement) -> Result<()> {
    if h.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: h.degree() });
    }
    Ok(())
}

/// `p_2^{(1,2)} ∘ C_4^{(1,2)}` on the tensor image, landing in `∧²H`.
pub fn q12(h: &HLElement) -> Result<MultiWedgeElement> {
    require_degree_two(h)?;
    project(&h.to_tensor().contract(1, 2)?, &WedgeShape::new(vec![vec![1, 2]])?)
}

/// `C_2^{(1,2)} ∘ C_4^{(1,2)}` on the tensor image.
pub fn q0(h: &HLElement) -> Result<Q> {
    require_degree_two(h)?;
    let t = h.to_tensor().contract(1, 2)?.contract(1, 2)?;
    Ok(t.coeff(&[]))
}

type Key = (Letter, LieMonomial);

fn hl_vec(h: &HLElement) -> SparseVec<Key> {
    h.terms().map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// Whether `h ∈ h_{g,1}(k)` maps to zero in `h_g(k)`, i.e. its image in
/// `H ⊗ L_g(k+1)` lies in `Ψ_k(L_g(k))`.
pub fn is_in_closed_kernel(h: &HLElement, g: Genus) -> Result<bool> {
    if !h.is_in_h() {
        return Err(Error::ContractViolation("input is not in h_(g,1)".into()));
    }
    let k = h.degree();
    let target = h.closed_project(g)?;
    let mut by_weight: BTreeMap<Weight, SparseVec<Key>> = BTreeMap::new();
    for (key, c) in target.terms() {
        let w = Weight::of_word(g, &[key.0]).add(&key.1.weight(g));
        by_weight.entry(w).or_default().insert(key.clone(), c.clone());
    }
    let basis = lyndon_basis(k, g);
    for (w, v) in by_weight {
        let mut span = Echelon::new();
        for m in basis.iter().filter(|m| m.weight(g) == w) {
            let image = phi(&LieElement::monomial(m.clone()), g).eta().closed_project(g)?;
            span.insert(hl_vec(&image));
        }
        if !span.contains(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of the weight-`w` part of `Ker(h_{g,1}(k) → h_{g,*}(k))`, i.e. of
/// `h_{g,1}(k) ∩ H ⊗ I(k+1)`.
pub fn pointed_kernel_vectors(k: usize, g: Genus, w: &Weight) -> Result<Vec<HLElement>> {
    let ideal = crate::quotient::ideal_component(k + 1, g)?;
    let mut candidates: Vec<(Letter, LieElement)> = Vec::new();
    for m in &ideal {
        let Some((mono, _)) = m.terms().next() else { continue };
        let mw = mono.weight(g);
        for x in g.letters() {
            if Weight::of_word(g, &[x]).add(&mw) == *w {
                candidates.push((x, m.clone()));
            }
        }
    }
    let mut e: Echelon<LieMonomial> = Echelon::tracking();
    for (x, m) in &candidates {
        let b = LieElement::letter(*x).bracket(m);
        e.insert(b.terms().map(|(m, c)| (m.clone(), c.clone())).collect());
    }
    Ok(e.relations()
        .iter()
        .map(|rel| {
            let mut h = HLElement::zero(k);
            for (i, c) in rel {
                let (x, m) = &candidates[*i];
                h.add_simple(*x, m, c);
            }
            h
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter as L;
    use crate::lie::omega0;
    use crate::rational::q;
    use crate::tree::{h_tree, phi_pair};

    #[test]
    fn detector_values_on_named_vectors() {
        for n in 3..=5u32 {
            let g = Genus::new(n).unwrap();
            let gi = i64::from(n);
            let (a1, b1) = (L::a(1), L::b(1));
            let th = h_tree(a1, b1, a1, b1).eta();
            assert_eq!(q12(&th).unwrap().to_string(), "12 a1∧b1");
            assert_eq!(q0(&th).unwrap(), q(12));
            let p = phi_pair(a1, b1, g).eta();
            assert_eq!(q0(&p).unwrap(), q(8 * gi + 4));
            let mut expect = MultiWedgeElement::from_blocks(vec![vec![a1, b1]], q(4 * gi + 4));
            for i in 1..=n {
                expect += &MultiWedgeElement::from_blocks(vec![vec![L::a(i), L::b(i)]], q(4));
            }
            assert_eq!(q12(&p).unwrap(), expect);
            let po = phi(&omega0(g), g).eta();
            assert_eq!(q0(&po).unwrap(), q(8 * gi * gi + 4 * gi));
        }
    }

    #[test]
    fn closed_kernel_rejects_non_members() {
        let g = Genus::new(3).unwrap();
        let bad = HLElement::simple(L::a(1), &LieElement::letter(L::a(1)).bracket(&LieElement::letter(L::a(2))));
        assert!(is_in_closed_kernel(&bad, g).is_err());
        let x = LieElement::letter(L::a(1)).bracket(&LieElement::letter(L::a(2)));
        assert!(is_in_closed_kernel(&phi(&x, g).eta(), g).unwrap());
        assert!(!is_in_closed_kernel(&h_tree(L::a(1), L::a(2), L::a(1), L::a(2)).eta(), g).unwrap());
    }
}
