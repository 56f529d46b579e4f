//! Symplectic basis letters and words.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Genus of the surface; `H` has dimension `2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGenus(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Dimension of `H`.
    pub fn rank(self) -> usize {
        2 * self.0 as usize
    }

    pub fn check_index(self, index: u32) -> Result<()> {
        if index == 0 || index > self.0 {
            return Err(Error::IndexOutOfRange { index, genus: self.0 });
        }
        Ok(())
    }

    /// All basis letters in the order `a1 < b1 < a2 < b2 < ...`.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..2 * self.0 as u8).map(Letter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
}

/// A basis vector `a_i` or `b_i` of `H`.
///
/// Encoded as `2(i-1)` for `a_i` and `2(i-1)+1` for `b_i`, so the derived
/// order is index-major with `a` before `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(kind: Kind, index: u32) -> Letter {
        assert!((1..=127).contains(&index), "letter index {index} out of range");
        let base = 2 * (index as u8 - 1);
        Letter(match kind {
            Kind::A => base,
            Kind::B => base + 1,
        })
    }

    pub fn a(index: u32) -> Letter {
        Letter::new(Kind::A, index)
    }

    pub fn b(index: u32) -> Letter {
        Letter::new(Kind::B, index)
    }

    pub fn kind(self) -> Kind {
        if self.0.is_multiple_of(2) {
            Kind::A
        } else {
            Kind::B
        }
    }

    pub fn index(self) -> u32 {
        u32::from(self.0 / 2) + 1
    }

    /// The symplectic partner: `a_i <-> b_i`.
    pub fn dual(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    /// Parses `a3`, `b12`.
    pub fn parse(s: &str) -> Option<Letter> {
        let kind = match s.as_bytes().first()? {
            b'a' => Kind::A,
            b'b' => Kind::B,
            _ => return None,
        };
        let rest = &s[1..];
        if rest.is_empty() || !rest.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let index: u32 = rest.parse().ok()?;
        if index == 0 || index > 127 {
            return None;
        }
        Some(Letter::new(kind, index))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind() {
            Kind::A => 'a',
            Kind::B => 'b',
        };
        write!(f, "{}{}", c, self.index())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The intersection form: `mu(a_i, b_j) = delta_ij = -mu(b_j, a_i)`, all other
/// pairings zero.
pub fn mu(x: Letter, y: Letter) -> i64 {
    if x.index() != y.index() {
        return 0;
    }
    match (x.kind(), y.kind()) {
        (Kind::A, Kind::B) => 1,
        (Kind::B, Kind::A) => -1,
        _ => 0,
    }
}

/// `mu` checked against a genus context.
pub fn mu_checked(g: Genus, x: Letter, y: Letter) -> Result<Q> {
    g.check_index(x.index())?;
    g.check_index(y.index())?;
    Ok(q(mu(x, y)))
}

/// A word in the letters; the basis element `x_1 ⊗ ... ⊗ x_k` of `H^{⊗k}`.
pub type Word = SmallVec<[Letter; 8]>;

pub(crate) fn fmt_word(w: &[Letter], sep: &str) -> String {
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(sep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_order_is_index_major() {
        let g = Genus::new(3).unwrap();
        let names: Vec<String> = g.letters().map(|l| l.to_string()).collect();
        assert_eq!(names, ["a1", "b1", "a2", "b2", "a3", "b3"]);
        assert!(Letter::b(1) < Letter::a(2));
        assert_eq!(Letter::parse("b12"), Some(Letter::b(12)));
        assert_eq!(Letter::parse("a0"), None);
        assert_eq!(Letter::parse("c1"), None);
    }

    #[test]
    fn intersection_form() {
        let g = Genus::new(2).unwrap();
        assert_eq!(mu_checked(g, Letter::a(1), Letter::b(1)).unwrap(), q(1));
        assert_eq!(mu_checked(g, Letter::b(1), Letter::a(1)).unwrap(), q(-1));
        assert_eq!(mu_checked(g, Letter::a(1), Letter::a(2)).unwrap(), q(0));
        assert_eq!(mu(Letter::a(1), Letter::b(2)), 0);
        assert!(matches!(
            mu_checked(g, Letter::a(3), Letter::b(1)),
            Err(Error::IndexOutOfRange { index: 3, genus: 2 })
        ));
    }
}
