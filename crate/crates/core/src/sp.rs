//! Generators of `sp(2g, Q)` acting on `H` and the weight lattice.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::letter::{Genus, Kind, Letter};
use crate::rational::q;
use crate::tensor::Tensor;

/// Chevalley-style generators, indices 1-based.
///
/// * `X(i,j)`: `a_j ↦ a_i`, `b_i ↦ -b_j`.
/// * `Y(i,j)` (`i ≠ j`): `b_i ↦ a_j`, `b_j ↦ a_i`.
/// * `U(i)`: `b_i ↦ a_i`.  `V(i)`: `a_i ↦ b_i`.
///
/// Letters not mentioned map to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpGenerator {
    X(u32, u32),
    Y(u32, u32),
    U(u32),
    V(u32),
}

impl SpGenerator {
    pub fn check(self, g: Genus) -> Result<()> {
        match self {
            SpGenerator::X(i, j) => {
                g.check_index(i)?;
                g.check_index(j)
            }
            SpGenerator::Y(i, j) => {
                g.check_index(i)?;
                g.check_index(j)?;
                if i == j {
                    return Err(Error::arg(format!("Y[{i},{j}] needs distinct indices")));
                }
                Ok(())
            }
            SpGenerator::U(i) | SpGenerator::V(i) => g.check_index(i),
        }
    }

    /// Image of a single letter as a degree-1 tensor.
    pub fn apply_letter(self, l: Letter) -> Tensor {
        let k = l.index();
        let mut t = Tensor::zero(1);
        let mut put = |x: Letter, c: i64| t.add_term(std::iter::once(x).collect(), q(c));
        match (self, l.kind()) {
            (SpGenerator::X(i, j), Kind::A) if j == k => put(Letter::a(i), 1),
            (SpGenerator::X(i, j), Kind::B) if i == k => put(Letter::b(j), -1),
            (SpGenerator::Y(i, j), Kind::B) => {
                if i == k {
                    put(Letter::a(j), 1);
                }
                if j == k {
                    put(Letter::a(i), 1);
                }
            }
            (SpGenerator::U(i), Kind::B) if i == k => put(Letter::a(i), 1),
            (SpGenerator::V(i), Kind::A) if i == k => put(Letter::b(i), 1),
            _ => {}
        }
        t
    }

    /// Weight shift produced by the generator.
    pub fn root(self, g: Genus) -> Weight {
        let mut w = Weight::zero(g);
        match self {
            SpGenerator::X(i, j) => {
                w.0[i as usize - 1] += 1;
                w.0[j as usize - 1] -= 1;
            }
            SpGenerator::Y(i, j) => {
                w.0[i as usize - 1] += 1;
                w.0[j as usize - 1] += 1;
            }
            SpGenerator::U(i) => w.0[i as usize - 1] += 2,
            SpGenerator::V(i) => w.0[i as usize - 1] -= 2,
        }
        w
    }

    /// Simple raising operators `X(i,i+1)` and `U(g)`.
    pub fn simple_raising(g: Genus) -> Vec<SpGenerator> {
        let n = g.get();
        let mut v: Vec<_> = (1..n).map(|i| SpGenerator::X(i, i + 1)).collect();
        v.push(SpGenerator::U(n));
        v
    }

    /// A generating set of the Lie algebra.
    pub fn all(g: Genus) -> Vec<SpGenerator> {
        let n = g.get();
        let mut v = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                v.push(SpGenerator::X(i, j));
                if i < j {
                    v.push(SpGenerator::Y(i, j));
                }
            }
            v.push(SpGenerator::U(i));
            v.push(SpGenerator::V(i));
        }
        v
    }
}

impl fmt::Display for SpGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpGenerator::X(i, j) => write!(f, "X[{i},{j}]"),
            SpGenerator::Y(i, j) => write!(f, "Y[{i},{j}]"),
            SpGenerator::U(i) => write!(f, "U[{i}]"),
            SpGenerator::V(i) => write!(f, "V[{i}]"),
        }
    }
}

/// A weight for the diagonal torus: `a_i` has weight `e_i`, `b_i` has `-e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub SmallVec<[i32; 8]>);

impl Weight {
    pub fn zero(g: Genus) -> Weight {
        Weight(SmallVec::from_elem(0, g.get() as usize))
    }

    pub fn of_word(g: Genus, w: &[Letter]) -> Weight {
        let mut out = Weight::zero(g);
        for l in w {
            let p = l.index() as usize - 1;
            match l.kind() {
                Kind::A => out.0[p] += 1,
                Kind::B => out.0[p] -= 1,
            }
        }
        out
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1]) && self.0.last().is_none_or(|&x| x >= 0)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Weight of a homogeneous tensor, or `None` if it mixes weights or is zero.
pub fn weight_of(g: Genus, t: &Tensor) -> Option<Weight> {
    let mut it = t.terms().map(|(w, _)| Weight::of_word(g, w));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_shift_weight_by_root() {
        let g = Genus::new(3).unwrap();
        for gen in SpGenerator::all(g) {
            for l in g.letters() {
                let img = gen.apply_letter(l);
                if let Some(w) = weight_of(g, &img) {
                    assert_eq!(w, Weight::of_word(g, &[l]).add(&gen.root(g)), "{gen} on {l}");
                }
            }
        }
    }

    #[test]
    fn generators_preserve_the_form() {
        // μ(Ax, y) + μ(x, Ay) = 0 on letters.
        let g = Genus::new(3).unwrap();
        for gen in SpGenerator::all(g) {
            for x in g.letters() {
                for y in g.letters() {
                    let t = Tensor::word(&[x, y]);
                    let s = t.sp_apply(gen).contract(1, 2).unwrap();
                    assert!(s.is_zero(), "{gen} on {x},{y}");
                }
            }
        }
    }

    #[test]
    fn dominance() {
        assert!(Weight([2, 2, 0].into_iter().collect()).is_dominant());
        assert!(!Weight([1, 2].into_iter().collect()).is_dominant());
        assert!(!Weight([1, -1].into_iter().collect()).is_dominant());
    }
}
