//! Sparse exact tensors in `H^{⊗k}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::letter::{fmt_word, mu, Genus, Letter, Word};
use crate::rational::{fmt_sum, q, Q};
use crate::sp::{SpGenerator, Weight};

/// A homogeneous element of `H^{⊗k}` stored as a sparse map from words to
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    degree: usize,
    terms: BTreeMap<Word, Q>,
}

pub(crate) fn add_to<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl Tensor {
    pub fn zero(degree: usize) -> Tensor {
        Tensor { degree, terms: BTreeMap::new() }
    }

    /// The unit of `H^{⊗0} = Q`.
    pub fn one() -> Tensor {
        Tensor::scalar(q(1))
    }

    pub fn scalar(c: Q) -> Tensor {
        let mut t = Tensor::zero(0);
        t.add_term(Word::new(), c);
        t
    }

    pub fn letter(l: Letter) -> Tensor {
        Tensor::word(&[l])
    }

    pub fn word(w: &[Letter]) -> Tensor {
        let mut t = Tensor::zero(w.len());
        t.add_term(w.iter().copied().collect(), q(1));
        t
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Word, Q)>) -> Tensor {
        let mut t = Tensor::zero(degree);
        for (w, c) in terms {
            t.add_term(w, c);
        }
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    #[cfg(test)]
    pub(crate) fn into_terms(self) -> BTreeMap<Word, Q> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Letter]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    /// Smallest word in the support.
    pub fn leading(&self) -> Option<(&Word, &Q)> {
        self.terms.iter().next()
    }

    /// Adds `c·w`; panics when `w` has the wrong length.
    pub fn add_term(&mut self, w: Word, c: Q) {
        assert_eq!(w.len(), self.degree, "word {:?} in a degree {} tensor", w, self.degree);
        add_to(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.degree);
        }
        Tensor {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// `self ⊗ other`.
    pub fn otimes(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.degree + other.degree);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// `self ⊗ other - other ⊗ self`.
    pub fn commutator(&self, other: &Tensor) -> Tensor {
        &self.otimes(other) - &other.otimes(self)
    }

    /// The contraction `C_k^{(i,j)}` with 1-based positions `i < j`.
    ///
    /// Remaining positions keep their relative order.
    pub fn contract(&self, i: usize, j: usize) -> Result<Tensor> {
        let k = self.degree;
        if !(1 <= i && i < j && j <= k) {
            return Err(Error::arg(format!("contraction ({i},{j}) invalid in degree {k}")));
        }
        let mut out = Tensor::zero(k - 2);
        for (w, c) in &self.terms {
            let m = mu(w[i - 1], w[j - 1]);
            if m == 0 {
                continue;
            }
            let rest: Word = w
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i - 1 && p != j - 1)
                .map(|(_, &l)| l)
                .collect();
            out.add_term(rest, c * q(m));
        }
        Ok(out)
    }

    /// Applies a letter-level linear map to every position (Leibniz rule).
    ///
    /// Each letter may map to a tensor of any fixed degree `d`; the result has
    /// degree `k - 1 + d`.
    pub fn derive(&self, image: impl Fn(Letter) -> Tensor) -> Tensor {
        let mut cache: HashMap<Letter, Tensor> = HashMap::new();
        let mut out: Option<Tensor> = None;
        for (w, c) in &self.terms {
            for p in 0..w.len() {
                let img = cache.entry(w[p]).or_insert_with(|| image(w[p]));
                let acc = out.get_or_insert_with(|| Tensor::zero(self.degree - 1 + img.degree));
                assert_eq!(acc.degree, self.degree - 1 + img.degree, "inconsistent image degrees");
                for (u, d) in &img.terms {
                    let mut nw: Word = Word::with_capacity(w.len() - 1 + u.len());
                    nw.extend_from_slice(&w[..p]);
                    nw.extend_from_slice(u);
                    nw.extend_from_slice(&w[p + 1..]);
                    acc.add_term(nw, c * d);
                }
            }
        }
        out.unwrap_or_else(|| {
            let d = if self.degree == 0 { 0 } else { self.degree - 1 + image_degree_hint(&image) };
            Tensor::zero(d)
        })
    }

    /// Action of an element of `sp(2g, Q)`, extended to `H^{⊗k}` as a derivation.
    pub fn sp_apply(&self, generator: SpGenerator) -> Tensor {
        if self.degree == 0 {
            return Tensor::zero(0);
        }
        self.derive(|l| generator.apply_letter(l))
    }

    /// Applies an operator word; the rightmost generator acts first.
    pub fn sp_apply_word(&self, word: &[SpGenerator]) -> Tensor {
        word.iter().rev().fold(self.clone(), |t, &gen| t.sp_apply(gen))
    }

    /// Substitutes letters simultaneously (the action of a group element that
    /// permutes basis letters).
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Tensor {
        Tensor::from_terms(
            self.degree,
            self.terms.iter().map(|(w, c)| (w.iter().map(|&l| f(l)).collect(), c.clone())),
        )
    }

    /// Splits into weight-homogeneous components.
    pub fn weight_components(&self, g: Genus) -> BTreeMap<Weight, Tensor> {
        let mut out: BTreeMap<Weight, Tensor> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(Weight::of_word(g, w))
                .or_insert_with(|| Tensor::zero(self.degree))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// Largest letter index appearing, 0 for scalars or zero.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().flat_map(|w| w.iter().map(|l| l.index())).max().unwrap_or(0)
    }

    pub fn check_genus(&self, g: Genus) -> Result<()> {
        let m = self.max_index();
        if m > 0 {
            g.check_index(m)?;
        }
        Ok(())
    }

    /// If `self = c · other` for a nonzero scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Tensor) -> Option<Q> {
        if self.degree != other.degree || self.len() != other.len() || other.is_zero() {
            return None;
        }
        let (w0, c0) = other.leading()?;
        let r = self.coeff(w0) / c0;
        if r.is_zero() {
            return None;
        }
        if other.scale(&r) == *self {
            Some(r)
        } else {
            None
        }
    }
}

// Degree of the letter image when the input tensor is empty; probes `a1`.
fn image_degree_hint(image: &impl Fn(Letter) -> Tensor) -> usize {
    image(Letter::a(1)).degree
}

/// `u ⊗ v - v ⊗ u`, the embedding of `u ∧ v` into `H^{⊗2k}`.
pub fn wedge_square_embed(u: &Tensor, v: &Tensor) -> Result<Tensor> {
    if u.degree != v.degree {
        return Err(Error::DegreeMismatch { expected: u.degree, found: v.degree });
    }
    Ok(u.commutator(v))
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sum(self.terms.iter().map(|(w, c)| (c, fmt_word(w, "⊗")))))
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor[{}]({})", self.degree, self)
    }
}

impl AddAssign<&Tensor> for Tensor {
    fn add_assign(&mut self, rhs: &Tensor) {
        assert_eq!(self.degree, rhs.degree, "adding tensors of different degree");
        for (w, c) in &rhs.terms {
            add_to(&mut self.terms, w.clone(), c.clone());
        }
    }
}

impl SubAssign<&Tensor> for Tensor {
    fn sub_assign(&mut self, rhs: &Tensor) {
        assert_eq!(self.degree, rhs.degree, "subtracting tensors of different degree");
        for (w, c) in &rhs.terms {
            add_to(&mut self.terms, w.clone(), -c);
        }
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Tensor {
    type Output = Tensor;
    fn add(mut self, rhs: Tensor) -> Tensor {
        self += &rhs;
        self
    }
}

impl Sub for Tensor {
    type Output = Tensor;
    fn sub(mut self, rhs: Tensor) -> Tensor {
        self -= &rhs;
        self
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&-Q::one())
    }
}

impl Neg for Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter as L;

    fn w(ls: &[L]) -> Tensor {
        Tensor::word(ls)
    }

    #[test]
    fn contraction_examples() {
        let t = w(&[L::a(1), L::b(1)]);
        assert_eq!(t.contract(1, 2).unwrap(), Tensor::one());
        let t = w(&[L::a(1), L::a(2), L::b(1), L::b(2)]);
        assert_eq!(t.contract(1, 3).unwrap(), w(&[L::a(2), L::b(2)]));
        let t = w(&[L::a(1), L::a(2), L::a(1), L::a(2)]);
        assert!(t.contract(1, 2).unwrap().is_zero());
        assert!(t.contract(2, 2).is_err());
        assert!(t.contract(3, 5).is_err());
        assert!(t.contract(0, 2).is_err());
    }

    #[test]
    fn sp_generator_examples() {
        let t = w(&[L::a(1), L::b(1)]);
        assert_eq!(t.sp_apply(SpGenerator::U(1)), w(&[L::a(1), L::a(1)]));
        let t = w(&[L::a(2), L::a(2)]);
        assert_eq!(
            t.sp_apply(SpGenerator::X(1, 2)),
            w(&[L::a(1), L::a(2)]) + w(&[L::a(2), L::a(1)])
        );
        assert_eq!(w(&[L::a(1)]).sp_apply(SpGenerator::V(1)), w(&[L::b(1)]));
    }

    #[test]
    fn wedge_square_examples() {
        let a1 = w(&[L::a(1)]);
        let b1 = w(&[L::b(1)]);
        assert!(wedge_square_embed(&a1, &a1).unwrap().is_zero());
        assert_eq!(
            wedge_square_embed(&a1, &b1).unwrap(),
            w(&[L::a(1), L::b(1)]) - w(&[L::b(1), L::a(1)])
        );
        let u = &a1 + &b1.scale(&q(3));
        let v = w(&[L::a(2)]);
        let s = wedge_square_embed(&u, &v).unwrap() + wedge_square_embed(&v, &u).unwrap();
        assert!(s.is_zero());
        assert!(wedge_square_embed(&a1, &Tensor::one()).is_err());
    }

    #[test]
    fn display() {
        let t = w(&[L::a(1), L::b(1)]) - w(&[L::b(1), L::a(1)]).scale(&q(2));
        assert_eq!(t.to_string(), "a1⊗b1 - 2 b1⊗a1");
        assert_eq!(Tensor::zero(3).to_string(), "0");
        assert_eq!(Tensor::scalar(q(-4)).to_string(), "-4");
    }

    #[test]
    fn ratio() {
        let t = w(&[L::a(1), L::b(1)]) - w(&[L::b(1), L::a(1)]);
        assert_eq!(t.scale(&q(-3)).ratio_to(&t), Some(q(-3)));
        assert_eq!(w(&[L::a(1), L::b(1)]).ratio_to(&t), None);
    }
}
