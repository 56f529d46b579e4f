//! Characters of the graded pieces of the free Lie algebra, of its quotient
//! by the ideal generated by `ω0`, and of the spaces `h(k)` built from them.
//!
//! Each Lie algebra is recovered from its universal enveloping algebra: if
//! `u_n` is the character of the degree-`n` part of the envelope, then the
//! characters `c_n` defined by `n u_n = Σ c_k u_{n-k}` satisfy
//! `n L_n = Σ_{d | n} μ(d) ψ^d(c_{n/d})`.

use crate::error::Result;
use crate::letter::Genus;
use crate::rep::WeightTable;
use crate::sp::Weight;

/// Character of `H`.
pub fn letter_character(g: Genus) -> WeightTable {
    let mut out = WeightTable::new();
    for l in g.letters() {
        out.add(Weight::of_word(g, &[l]), 1);
    }
    out
}

fn trivial(g: Genus) -> WeightTable {
    let mut out = WeightTable::new();
    out.add(Weight::zero(g), 1);
    out
}

fn moebius(mut n: usize) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Lie characters `L_1..=L_n` from envelope characters `u_0..=u_n`.
fn from_envelope(u: &[WeightTable]) -> Result<Vec<WeightTable>> {
    let n_max = u.len() - 1;
    let mut c: Vec<WeightTable> = vec![WeightTable::new()];
    for n in 1..=n_max {
        let mut cn = u[n].scaled(n as i64);
        for k in 1..n {
            cn = cn.minus(&c[k].tensor(&u[n - k]));
        }
        c.push(cn);
    }
    let mut lie = vec![WeightTable::new()];
    for n in 1..=n_max {
        let mut acc = WeightTable::new();
        for d in (1..=n).filter(|d| n % d == 0) {
            let mu = moebius(d);
            if mu != 0 {
                acc = acc.plus(&c[n / d].adams(d as i32).scaled(mu));
            }
        }
        lie.push(acc.divided(n as i64)?);
    }
    Ok(lie)
}

/// Characters of the free Lie algebra in degrees `0..=n` (degree 0 empty).
pub fn free_lie_characters(n: usize, g: Genus) -> Result<Vec<WeightTable>> {
    let h = letter_character(g);
    let mut u = vec![trivial(g)];
    for k in 1..=n {
        u.push(u[k - 1].tensor(&h));
    }
    from_envelope(&u)
}

/// Characters of the quotient by `⟨ω0⟩` in degrees `0..=n`, from the
/// envelope series `1 / (1 - H t + t²)`.
pub fn quotient_lie_characters(n: usize, g: Genus) -> Result<Vec<WeightTable>> {
    let h = letter_character(g);
    let mut u = vec![trivial(g)];
    for k in 1..=n {
        let mut next = u[k - 1].tensor(&h);
        if k >= 2 {
            next = next.minus(&u[k - 2]);
        }
        u.push(next);
    }
    from_envelope(&u)
}

/// Character of `h_{g,1}(k)`, the kernel of the surjective bracket
/// `H ⊗ L(k+1) → L(k+2)`.
pub fn boundary_h_character(k: usize, g: Genus) -> Result<WeightTable> {
    let l = free_lie_characters(k + 2, g)?;
    Ok(letter_character(g).tensor(&l[k + 1]).minus(&l[k + 2]))
}

/// Character of `h_{g,*}(k)`, the analogous kernel over the quotient algebra.
pub fn point_h_character(k: usize, g: Genus) -> Result<WeightTable> {
    let l = quotient_lie_characters(k + 2, g)?;
    Ok(letter_character(g).tensor(&l[k + 1]).minus(&l[k + 2]))
}

/// Character of `h_g(k) = h_{g,*}(k) / Ψ_k(L_g(k))`.
pub fn closed_h_character(k: usize, g: Genus) -> Result<WeightTable> {
    let l = quotient_lie_characters(k, g)?;
    Ok(point_h_character(k, g)?.minus(&l[k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::witt_dimension;
    use crate::quotient::QuotientContext;
    use crate::spaces::DegreeTwoSpaces;

    #[test]
    fn dimensions_match_direct_computation() {
        for n in 2..=4 {
            let g = Genus::new(n).unwrap();
            let free = free_lie_characters(5, g).unwrap();
            let quot = quotient_lie_characters(5, g).unwrap();
            assert_eq!(quot[1], free[1]);
            for k in 1..=5 {
                assert_eq!(free[k].dim() as usize, witt_dimension(k, g));
            }
            for k in 2..=5 {
                assert_eq!(quot[k].dim() as usize, QuotientContext::get(k, g).unwrap().quotient_dim());
            }
        }
    }

    #[test]
    fn degree_two_spaces_agree() {
        for n in 2..=3 {
            let g = Genus::new(n).unwrap();
            let s = DegreeTwoSpaces::get(g).unwrap();
            assert_eq!(boundary_h_character(2, g).unwrap(), s.h);
            assert_eq!(point_h_character(2, g).unwrap(), s.hstar);
            assert_eq!(closed_h_character(2, g).unwrap(), s.hg);
        }
    }

    #[test]
    fn moebius_values() {
        let got: Vec<i64> = (1..=10).map(moebius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
