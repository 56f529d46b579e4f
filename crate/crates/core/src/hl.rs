//! Elements of `H ⊗ L_{g,1}(k+1)` and the derivation bracket on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::One;

use crate::error::{Error, Result};
use crate::letter::{mu, Genus, Letter, Word};
use crate::lie::{LieElement, LieMonomial};
use crate::quotient::quotient_project;
use crate::rational::{fmt_sum, q, Q};
use crate::sp::SpGenerator;
use crate::tensor::{add_to, Tensor};

/// An element `Σ x ⊗ u` of `H ⊗ L_{g,1}(k+1)`; `degree` is `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HLElement {
    degree: usize,
    terms: BTreeMap<(Letter, LieMonomial), Q>,
}

// Sign relating the derivation bracket to the tree bracket.
const BRACKET_SIGN: i64 = 1;

impl HLElement {
    pub fn zero(degree: usize) -> HLElement {
        HLElement { degree, terms: BTreeMap::new() }
    }

    /// `x ⊗ u`.
    pub fn simple(x: Letter, u: &LieElement) -> HLElement {
        assert!(u.degree() >= 1, "H ⊗ L needs a Lie factor of positive degree");
        let mut out = HLElement::zero(u.degree() - 1);
        out.add_simple(x, u, &Q::one());
        out
    }

    /// Adds `c · x ⊗ u`.
    pub fn add_simple(&mut self, x: Letter, u: &LieElement, c: &Q) {
        assert_eq!(u.degree(), self.degree + 1, "Lie factor of wrong degree");
        for (m, d) in u.terms() {
            add_to(&mut self.terms, (x, m.clone()), c * d);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Letter, LieMonomial), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The Lie component paired with each first-factor letter.
    pub fn components(&self) -> BTreeMap<Letter, LieElement> {
        let mut out: BTreeMap<Letter, LieElement> = BTreeMap::new();
        for ((x, m), c) in &self.terms {
            out.entry(*x)
                .or_insert_with(|| LieElement::zero(self.degree + 1))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> HLElement {
        let mut out = HLElement::zero(self.degree);
        for (k, x) in &self.terms {
            add_to(&mut out.terms, k.clone(), x * c);
        }
        out
    }

    /// The image `Σ x ⊗ ι(u)` in `H^{⊗(k+2)}`.
    pub fn to_tensor(&self) -> Tensor {
        let mut out = Tensor::zero(self.degree + 2);
        for ((x, m), c) in &self.terms {
            for (w, d) in m.iota().terms() {
                let mut word = Word::with_capacity(w.len() + 1);
                word.push(*x);
                word.extend_from_slice(w);
                out.add_term(word, c * d);
            }
        }
        out
    }

    /// Inverse of [`HLElement::to_tensor`] on `H ⊗ ι(L)`.
    pub fn from_tensor(t: &Tensor) -> Result<HLElement> {
        if t.degree() < 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: t.degree() });
        }
        let mut split: BTreeMap<Letter, Tensor> = BTreeMap::new();
        for (w, c) in t.terms() {
            split
                .entry(w[0])
                .or_insert_with(|| Tensor::zero(t.degree() - 1))
                .add_term(w[1..].into(), c.clone());
        }
        let mut out = HLElement::zero(t.degree() - 2);
        for (x, rest) in split {
            out.add_simple(x, &LieElement::from_tensor(&rest)?, &Q::one());
        }
        Ok(out)
    }

    /// The tensor image of `Σ [x, u]`.
    pub fn bracket_image(&self) -> Tensor {
        let mut out = Tensor::zero(self.degree + 2);
        for (x, u) in self.components() {
            out += &Tensor::letter(x).commutator(&u.iota());
        }
        out
    }

    /// Membership in `h_{g,1}(k)`: `Σ [x, u] = 0`.
    pub fn is_in_h(&self) -> bool {
        self.bracket_image().is_zero()
    }

    fn require_h(&self, what: &str) -> Result<()> {
        if self.is_in_h() {
            Ok(())
        } else {
            Err(Error::ContractViolation(format!("{what} is not in h_(g,1)")))
        }
    }

    /// The derivation of the tensor algebra determined on letters by
    /// `y ↦ Σ μ(x, y) u`.
    pub fn derivation_image(&self, y: Letter) -> Tensor {
        let mut out = Tensor::zero(self.degree + 1);
        for ((x, m), c) in &self.terms {
            let s = mu(*x, y);
            if s != 0 {
                out += &m.iota().scale(&(c * q(s)));
            }
        }
        out
    }

    /// Builds `h` from a derivation given by its values on letters.
    fn from_derivation(g: Genus, degree: usize, image: impl Fn(Letter) -> Tensor) -> Result<HLElement> {
        let mut out = HLElement::zero(degree);
        for i in 1..=g.get() {
            let (a, b) = (Letter::a(i), Letter::b(i));
            out.add_simple(a, &LieElement::from_tensor(&image(b))?, &Q::one());
            out.add_simple(b, &LieElement::from_tensor(&image(a))?, &-Q::one());
        }
        Ok(out)
    }

    /// The bracket of `h_{g,1}`, computed as the commutator of derivations.
    pub fn derivation_bracket(&self, other: &HLElement, g: Genus) -> Result<HLElement> {
        self.require_h("left operand")?;
        other.require_h("right operand")?;
        let image = |y: Letter| {
            let d1 = other.derivation_image(y).derive(|l| self.derivation_image(l));
            let d2 = self.derivation_image(y).derive(|l| other.derivation_image(l));
            (&d1 - &d2).scale(&q(BRACKET_SIGN))
        };
        HLElement::from_derivation(g, self.degree + other.degree, image)
    }

    pub fn sp_apply(&self, generator: SpGenerator) -> HLElement {
        HLElement::from_tensor(&self.to_tensor().sp_apply(generator)).expect("sp action preserves H ⊗ L")
    }

    pub fn sp_apply_word(&self, word: &[SpGenerator]) -> HLElement {
        word.iter().rev().fold(self.clone(), |h, &gen| h.sp_apply(gen))
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> HLElement {
        HLElement::from_tensor(&self.to_tensor().map_letters(f)).expect("letter substitution preserves H ⊗ L")
    }

    /// Reduces the Lie factor modulo the ideal generated by `ω0`.
    pub fn closed_project(&self, g: Genus) -> Result<HLElement> {
        let mut out = HLElement::zero(self.degree);
        for (x, u) in self.components() {
            out.add_simple(x, &quotient_project(&u, g)?, &Q::one());
        }
        Ok(out)
    }

    pub fn max_index(&self) -> u32 {
        self.to_tensor().max_index()
    }
}

/// `Σ_i (a_i ⊗ [b_i, x] - b_i ⊗ [a_i, x])`.
pub fn symplectic_sum(x: &LieElement, g: Genus) -> HLElement {
    let mut out = HLElement::zero(x.degree());
    for i in 1..=g.get() {
        let (a, b) = (Letter::a(i), Letter::b(i));
        out.add_simple(a, &LieElement::letter(b).bracket(x), &Q::one());
        out.add_simple(b, &LieElement::letter(a).bracket(x), &-Q::one());
    }
    out
}

impl fmt::Display for HLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sum(self.terms.iter().map(|((x, m), c)| (c, format!("{x}⊗{m}")))))
    }
}

impl fmt::Debug for HLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HL[{}]({})", self.degree, self)
    }
}

impl AddAssign<&HLElement> for HLElement {
    fn add_assign(&mut self, rhs: &HLElement) {
        assert_eq!(self.degree, rhs.degree, "adding H⊗L elements of different degree");
        for (k, c) in &rhs.terms {
            add_to(&mut self.terms, k.clone(), c.clone());
        }
    }
}

impl SubAssign<&HLElement> for HLElement {
    fn sub_assign(&mut self, rhs: &HLElement) {
        assert_eq!(self.degree, rhs.degree, "subtracting H⊗L elements of different degree");
        for (k, c) in &rhs.terms {
            add_to(&mut self.terms, k.clone(), -c);
        }
    }
}

impl Add for &HLElement {
    type Output = HLElement;
    fn add(self, rhs: &HLElement) -> HLElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &HLElement {
    type Output = HLElement;
    fn sub(self, rhs: &HLElement) -> HLElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &HLElement {
    type Output = HLElement;
    fn neg(self) -> HLElement {
        self.scale(&-Q::one())
    }
}

