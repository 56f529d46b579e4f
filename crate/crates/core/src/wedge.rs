//! Multi-wedge targets `∧^{k1}H ⊗ … ⊗ ∧^{kl}H` and the projections onto them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::letter::{fmt_word, Letter, Word};
use crate::rational::{fmt_sum, q, Q};
use crate::sp::SpGenerator;
use crate::tensor::{add_to, Tensor};

/// An ordered partition of the positions `1..=k` into blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WedgeShape {
    blocks: Vec<Vec<usize>>,
}

impl WedgeShape {
    /// Blocks of 1-based positions; they must be disjoint and cover `1..=k`.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<WedgeShape> {
        let k: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; k + 1];
        for &p in blocks.iter().flatten() {
            if p == 0 || p > k || seen[p] {
                return Err(Error::arg(format!("wedge shape {blocks:?} is not a partition of 1..={k}")));
            }
            seen[p] = true;
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::arg("wedge shape has an empty block"));
        }
        Ok(WedgeShape { blocks })
    }

    /// Parses the cycle-like notation `(1,3)(2)`.
    pub fn parse(s: &str) -> Result<WedgeShape> {
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|e| (&r[..e], &r[e + 1..])))
                .ok_or_else(|| Error::arg(format!("bad wedge shape {s:?}")))?;
            let block = body
                .0
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::arg(format!("bad wedge shape {s:?}")))?;
            blocks.push(block);
            rest = body.1.trim_start();
        }
        WedgeShape::new(blocks)
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

impl fmt::Display for WedgeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            let parts: Vec<String> = b.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Sorts letters into increasing order; returns the permutation sign, or
/// `None` if a letter repeats.
pub(crate) fn sort_with_sign(letters: &mut [Letter]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..letters.len() {
        let mut j = i;
        while j > 0 && letters[j - 1] > letters[j] {
            letters.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if letters.windows(2).any(|p| p[0] == p[1]) {
        None
    } else {
        Some(sign)
    }
}

/// An element of `∧^{k1}H ⊗ … ⊗ ∧^{kl}H`; each block is a strictly
/// increasing word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiWedgeElement {
    sizes: Vec<usize>,
    terms: BTreeMap<Vec<Word>, Q>,
}

impl MultiWedgeElement {
    pub fn zero(sizes: Vec<usize>) -> MultiWedgeElement {
        MultiWedgeElement { sizes, terms: BTreeMap::new() }
    }

    /// `c · (w1) ⊗ … ⊗ (wl)` where each block is wedged and normalized.
    pub fn from_blocks(blocks: Vec<Vec<Letter>>, c: Q) -> MultiWedgeElement {
        let mut out = MultiWedgeElement::zero(blocks.iter().map(Vec::len).collect());
        out.add_blocks(blocks, c);
        out
    }

    pub fn add_blocks(&mut self, blocks: Vec<Vec<Letter>>, c: Q) {
        assert_eq!(blocks.len(), self.sizes.len(), "block count mismatch");
        let mut sign = 1;
        let mut key = Vec::with_capacity(blocks.len());
        for (mut b, &n) in blocks.into_iter().zip(&self.sizes) {
            assert_eq!(b.len(), n, "block size mismatch");
            match sort_with_sign(&mut b) {
                Some(s) => sign *= s,
                None => return,
            }
            key.push(b.into_iter().collect::<Word>());
        }
        add_to(&mut self.terms, key, c * q(sign));
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Q)> {
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

    pub fn coeff(&self, blocks: &[Vec<Letter>]) -> Q {
        let mut probe = MultiWedgeElement::zero(self.sizes.clone());
        probe.add_blocks(blocks.to_vec(), Q::one());
        match probe.terms.iter().next() {
            Some((k, s)) => self.terms.get(k).map(|c| c * s).unwrap_or_else(Q::zero),
            None => Q::zero(),
        }
    }

    pub fn scale(&self, c: &Q) -> MultiWedgeElement {
        let mut out = MultiWedgeElement::zero(self.sizes.clone());
        for (k, x) in &self.terms {
            add_to(&mut out.terms, k.clone(), x * c);
        }
        out
    }

    /// Concatenates the blocks of two elements.
    pub fn otimes(&self, other: &MultiWedgeElement) -> MultiWedgeElement {
        let mut sizes = self.sizes.clone();
        sizes.extend_from_slice(&other.sizes);
        let mut out = MultiWedgeElement::zero(sizes);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                add_to(&mut out.terms, k, c1 * c2);
            }
        }
        out
    }

    /// The antisymmetrized tensor representing each block, concatenated.
    pub fn to_tensor(&self) -> Tensor {
        let degree = self.sizes.iter().sum();
        let mut out = Tensor::zero(degree);
        for (key, c) in &self.terms {
            let mut acc = Tensor::scalar(c.clone());
            for block in key {
                acc = acc.otimes(&alternate(block));
            }
            out += &acc;
        }
        out
    }

    /// Action of `sp(2g)` by the Leibniz rule.
    pub fn sp_apply(&self, generator: SpGenerator) -> MultiWedgeElement {
        let mut out = MultiWedgeElement::zero(self.sizes.clone());
        for (key, c) in &self.terms {
            for bi in 0..key.len() {
                for p in 0..key[bi].len() {
                    for (img, d) in generator.apply_letter(key[bi][p]).terms() {
                        let blocks: Vec<Vec<Letter>> = key
                            .iter()
                            .enumerate()
                            .map(|(j, b)| {
                                let mut v = b.to_vec();
                                if j == bi {
                                    v[p] = img[0];
                                }
                                v
                            })
                            .collect();
                        out.add_blocks(blocks, c * d);
                    }
                }
            }
        }
        out
    }

    /// If `self = c · other` for a nonzero scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &MultiWedgeElement) -> Option<Q> {
        if self.sizes != other.sizes || self.len() != other.len() {
            return None;
        }
        let (k, c0) = other.terms.iter().next()?;
        let r = self.terms.get(k)? / c0;
        (other.scale(&r) == *self).then_some(r)
    }
}

fn alternate(block: &[Letter]) -> Tensor {
    let n = block.len();
    let mut out = Tensor::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let sign = permutation_sign(&mut p.to_vec());
        out.add_term(p.iter().map(|&i| block[i]).collect(), q(sign));
    });
    out
}

fn permutations(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

fn permutation_sign(p: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..p.len() {
        while p[i] != i {
            let j = p[i];
            p.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// The projection `p_k^σ`: routes positions into the blocks of `σ` in their
/// listed order and wedges within each block.
pub fn project(t: &Tensor, shape: &WedgeShape) -> Result<MultiWedgeElement> {
    if shape.degree() != t.degree() {
        return Err(Error::DegreeMismatch { expected: shape.degree(), found: t.degree() });
    }
    let mut out = MultiWedgeElement::zero(shape.block_sizes());
    for (w, c) in t.terms() {
        let blocks = shape.blocks.iter().map(|b| b.iter().map(|&p| w[p - 1]).collect()).collect();
        out.add_blocks(blocks, c.clone());
    }
    Ok(out)
}

impl fmt::Display for MultiWedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.sizes.len() == 1;
        let body = |key: &Vec<Word>| {
            if single {
                fmt_word(&key[0], "∧")
            } else {
                key.iter().map(|b| format!("({})", fmt_word(b, "∧"))).collect::<Vec<_>>().join("⊗")
            }
        };
        f.write_str(&fmt_sum(self.terms.iter().map(|(k, c)| (c, body(k)))))
    }
}

impl fmt::Debug for MultiWedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Wedge{:?}({})", self.sizes, self)
    }
}

impl AddAssign<&MultiWedgeElement> for MultiWedgeElement {
    fn add_assign(&mut self, rhs: &MultiWedgeElement) {
        assert_eq!(self.sizes, rhs.sizes, "adding wedges of different shape");
        for (k, c) in &rhs.terms {
            add_to(&mut self.terms, k.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiWedgeElement> for MultiWedgeElement {
    fn sub_assign(&mut self, rhs: &MultiWedgeElement) {
        assert_eq!(self.sizes, rhs.sizes, "subtracting wedges of different shape");
        for (k, c) in &rhs.terms {
            add_to(&mut self.terms, k.clone(), -c);
        }
    }
}

impl Add for &MultiWedgeElement {
    type Output = MultiWedgeElement;
    fn add(self, rhs: &MultiWedgeElement) -> MultiWedgeElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiWedgeElement {
    type Output = MultiWedgeElement;
    fn sub(self, rhs: &MultiWedgeElement) -> MultiWedgeElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MultiWedgeElement {
    type Output = MultiWedgeElement;
    fn neg(self) -> MultiWedgeElement {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter as L;

    #[test]
    fn projection_examples() {
        let t = Tensor::word(&[L::a(1), L::b(2), L::a(3)]);
        let s = WedgeShape::parse("(1,3)(2)").unwrap();
        let p = project(&t, &s).unwrap();
        assert_eq!(p, MultiWedgeElement::from_blocks(vec![vec![L::a(1), L::a(3)], vec![L::b(2)]], q(1)));
        assert_eq!(p.to_string(), "(a1∧a3)⊗(b2)");

        let t = Tensor::word(&[L::a(1), L::a(1), L::a(2)]);
        assert!(project(&t, &WedgeShape::parse("(1,2)(3)").unwrap()).unwrap().is_zero());

        let t = Tensor::word(&[L::b(1), L::a(1)]);
        let p = project(&t, &WedgeShape::parse("(1,2)").unwrap()).unwrap();
        assert_eq!(p.to_string(), "-a1∧b1");
        assert!(project(&t, &WedgeShape::parse("(1,2,3)").unwrap()).is_err());
    }

    #[test]
    fn shape_validation() {
        assert!(WedgeShape::parse("(1,1)").is_err());
        assert!(WedgeShape::parse("(1,3)").is_err());
        assert!(WedgeShape::parse("(2)(1)").is_ok());
        assert_eq!(WedgeShape::parse("(1,3)(2)").unwrap().to_string(), "(1,3)(2)");
    }

    #[test]
    fn to_tensor_round_trip() {
        let x = MultiWedgeElement::from_blocks(vec![vec![L::a(1), L::b(1), L::a(2)]], q(1));
        let t = x.to_tensor();
        assert_eq!(t.len(), 6);
        let back = project(&t, &WedgeShape::parse("(1,2,3)").unwrap()).unwrap();
        assert_eq!(back, x.scale(&q(6)));
    }

    #[test]
    fn sp_action_matches_tensor_action() {
        let x = MultiWedgeElement::from_blocks(vec![vec![L::a(1), L::b(2)], vec![L::b(1)]], q(2));
        let shape = WedgeShape::parse("(1,2)(3)").unwrap();
        for gen in [SpGenerator::X(1, 2), SpGenerator::U(1), SpGenerator::Y(1, 2), SpGenerator::V(2)] {
            let via_tensor = project(&x.to_tensor().sp_apply(gen), &shape).unwrap();
            assert_eq!(x.sp_apply(gen).scale(&q(2)), via_tensor, "{gen}");
        }
    }
}
