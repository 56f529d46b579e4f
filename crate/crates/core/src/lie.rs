//! The free Lie algebra `L_{g,1}` on `H` in the Lyndon basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::letter::{Genus, Letter, Word};
use crate::rational::{fmt_sum, q, Q};
use crate::sp::{SpGenerator, Weight};
use crate::tensor::{add_to, Tensor};

/// A Lyndon word, standing for its standard bracketing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LieMonomial(Word);

pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

impl LieMonomial {
    pub fn new(w: Word) -> Result<LieMonomial> {
        if is_lyndon(&w) {
            Ok(LieMonomial(w))
        } else {
            Err(Error::arg(format!("{} is not a Lyndon word", crate::letter::fmt_word(&w, ""))))
        }
    }

    pub fn letter(l: Letter) -> LieMonomial {
        LieMonomial(std::iter::once(l).collect())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Standard factorization `w = uv`, `v` the longest proper Lyndon suffix.
    pub fn factor(&self) -> Option<(LieMonomial, LieMonomial)> {
        let w = &self.0;
        if w.len() < 2 {
            return None;
        }
        let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).unwrap();
        Some((LieMonomial(w[..split].into()), LieMonomial(w[split..].into())))
    }

    /// `ι(P_w)`, memoized.
    pub fn iota(&self) -> Arc<Tensor> {
        static CACHE: OnceLock<RwLock<HashMap<Word, Arc<Tensor>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.read().unwrap().get(&self.0) {
            return t.clone();
        }
        let t = Arc::new(match self.factor() {
            None => Tensor::word(&self.0),
            Some((u, v)) => u.iota().commutator(&v.iota()),
        });
        cache.write().unwrap().insert(self.0.clone(), t.clone());
        t
    }

    pub fn weight(&self, g: Genus) -> Weight {
        Weight::of_word(g, &self.0)
    }
}

impl fmt::Display for LieMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factor() {
            None => write!(f, "{}", self.0[0]),
            Some((u, v)) => write!(f, "[{u},{v}]"),
        }
    }
}

/// Lyndon words of length `k` over the letters of genus `g`, increasing.
pub fn lyndon_basis(k: usize, g: Genus) -> Vec<LieMonomial> {
    // Duval's generation of Lyndon words up to length k.
    let n = 2 * g.get() as u8;
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == k {
            out.push(LieMonomial(w.iter().map(|&c| letter_of_code(c)).collect()));
        }
        let m = w.len();
        while w.len() < k {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(n - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(c) => *c += 1,
        }
    }
    out
}

fn letter_of_code(c: u8) -> Letter {
    let index = u32::from(c / 2) + 1;
    if c.is_multiple_of(2) {
        Letter::a(index)
    } else {
        Letter::b(index)
    }
}

/// Witt's dimension formula for `L_{g,1}(k)`.
pub fn witt_dimension(k: usize, g: Genus) -> usize {
    let r = g.rank() as i128;
    let mut total: i128 = 0;
    for d in 1..=k {
        if k.is_multiple_of(d) {
            total += mobius(d) * r.pow((k / d) as u32);
        }
    }
    (total / k as i128) as usize
}

fn mobius(n: usize) -> i128 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// A homogeneous element of `L_{g,1}(k)` in the Lyndon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElement {
    degree: usize,
    terms: BTreeMap<LieMonomial, Q>,
}

impl LieElement {
    pub fn zero(degree: usize) -> LieElement {
        LieElement { degree, terms: BTreeMap::new() }
    }

    pub fn letter(l: Letter) -> LieElement {
        LieElement::monomial(LieMonomial::letter(l))
    }

    pub fn monomial(m: LieMonomial) -> LieElement {
        let mut out = LieElement::zero(m.degree());
        out.add_term(m, q(1));
        out
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (LieMonomial, Q)>) -> LieElement {
        let mut out = LieElement::zero(degree);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: LieMonomial, c: Q) {
        assert_eq!(m.degree(), self.degree, "monomial {m} in a degree {} element", self.degree);
        add_to(&mut self.terms, m, c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LieMonomial, &Q)> {
        self.terms.iter()
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

    pub fn coeff(&self, m: &LieMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> LieElement {
        let mut out = LieElement::zero(self.degree);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// The image in `H^{⊗k}` under the commutator embedding.
    pub fn iota(&self) -> Tensor {
        let mut out = Tensor::zero(self.degree);
        for (m, c) in &self.terms {
            out += &m.iota().scale(c);
        }
        out
    }

    /// Recovers a Lie element from its tensor image; fails with
    /// [`Error::NotLie`] if the tensor is not a Lie polynomial.
    pub fn from_tensor(t: &Tensor) -> Result<LieElement> {
        let mut rest = t.clone();
        let mut out = LieElement::zero(t.degree());
        while let Some((w, c)) = rest.leading().map(|(w, c)| (w.clone(), c.clone())) {
            if !is_lyndon(&w) {
                return Err(Error::NotLie(format!("{t}")));
            }
            let m = LieMonomial(w);
            rest -= &m.iota().scale(&c);
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let t = self.iota().commutator(&other.iota());
        LieElement::from_tensor(&t).expect("commutator of Lie polynomials is Lie")
    }

    pub fn sp_apply(&self, generator: SpGenerator) -> LieElement {
        LieElement::from_tensor(&self.iota().sp_apply(generator)).expect("sp action preserves Lie polynomials")
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> LieElement {
        LieElement::from_tensor(&self.iota().map_letters(f)).expect("letter substitution preserves Lie polynomials")
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.0.iter().map(|l| l.index())).max().unwrap_or(0)
    }
}

/// `ω0 = Σ_i [a_i, b_i]`.
pub fn omega0(g: Genus) -> LieElement {
    let mut out = LieElement::zero(2);
    for i in 1..=g.get() {
        out.add_term(LieMonomial(Word::from_slice(&[Letter::a(i), Letter::b(i)])), q(1));
    }
    out
}

/// Left-normed bracket `[x1,[x2,…[x_{n-1},x_n]…]]` of Lie elements.
pub fn nested_bracket(xs: &[LieElement]) -> LieElement {
    let (last, init) = xs.split_last().expect("nested bracket of nothing");
    init.iter().rev().fold(last.clone(), |acc, x| x.bracket(&acc))
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sum(self.terms.iter().map(|(m, c)| (c, m.to_string()))))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lie[{}]({})", self.degree, self)
    }
}

impl AddAssign<&LieElement> for LieElement {
    fn add_assign(&mut self, rhs: &LieElement) {
        assert_eq!(self.degree, rhs.degree, "adding Lie elements of different degree");
        for (m, c) in &rhs.terms {
            add_to(&mut self.terms, m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LieElement> for LieElement {
    fn sub_assign(&mut self, rhs: &LieElement) {
        assert_eq!(self.degree, rhs.degree, "subtracting Lie elements of different degree");
        for (m, c) in &rhs.terms {
            add_to(&mut self.terms, m.clone(), -c);
        }
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter as L;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn l(x: L) -> LieElement {
        LieElement::letter(x)
    }

    #[test]
    fn basis_sizes_match_witt() {
        assert_eq!(lyndon_basis(1, g(2)).len(), 4);
        assert_eq!(lyndon_basis(2, g(1)).len(), 1);
        assert_eq!(lyndon_basis(3, g(2)).len(), 20);
        for n in 1..=4 {
            for k in 1..=5 {
                if n >= 3 && k == 5 {
                    continue;
                }
                assert_eq!(lyndon_basis(k, g(n)).len(), witt_dimension(k, g(n)), "k={k} g={n}");
            }
        }
    }

    #[test]
    fn iota_examples() {
        let x = l(L::a(1)).bracket(&l(L::b(1)));
        assert_eq!(x.iota().to_string(), "a1⊗b1 - b1⊗a1");
        assert!(l(L::a(1)).bracket(&l(L::a(1))).is_zero());
        let y = l(L::a(1)).bracket(&l(L::a(2))).bracket(&l(L::a(1)));
        let expect = Tensor::word(&[L::a(1), L::a(2), L::a(1)]).scale(&q(2))
            - Tensor::word(&[L::a(2), L::a(1), L::a(1)])
            - Tensor::word(&[L::a(1), L::a(1), L::a(2)]);
        assert_eq!(y.iota(), expect);
    }

    #[test]
    fn iota_is_injective_in_degree_three() {
        let vs = lyndon_basis(3, g(2)).into_iter().map(|m| m.iota().as_ref().clone().into_terms());
        assert_eq!(crate::linalg::rank(vs), 20);
    }

    #[test]
    fn non_lie_tensor_rejected() {
        assert!(LieElement::from_tensor(&Tensor::word(&[L::a(1), L::b(1)])).is_err());
    }

    #[test]
    fn omega_and_printing() {
        let w = omega0(g(2));
        assert_eq!(w.to_string(), "[a1,b1] + [a2,b2]");
        assert_eq!(w.iota().to_string(), "a1⊗b1 - b1⊗a1 + a2⊗b2 - b2⊗a2");
    }

    #[test]
    fn jacobi_on_letters() {
        let (x, y, z) = (l(L::a(1)), l(L::b(1)), l(L::a(2)).bracket(&l(L::b(2))));
        let s = &(&x.bracket(&y.bracket(&z)) + &y.bracket(&z.bracket(&x))) + &z.bracket(&x.bracket(&y));
        assert!(s.is_zero());
    }
}
