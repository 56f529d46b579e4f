//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational; always kept in lowest terms by `num-rational`.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical printing: `3`, `-3/7`.
pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Coefficient prefix for a term in a printed sum: `""` for 1, `"-"` for -1,
/// otherwise the number followed by a space.
pub(crate) fn coeff_prefix(c: &Q) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{} ", fmt_q(c))
    }
}

/// Joins `(coefficient, body)` pairs into `t1 + t2 - t3`; empty input prints `0`.
pub(crate) fn fmt_sum<'a>(terms: impl IntoIterator<Item = (&'a Q, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        if c.is_zero() {
            continue;
        }
        let magnitude = if out.is_empty() {
            c.clone()
        } else if c.is_negative() {
            out.push_str(" - ");
            -c
        } else {
            out.push_str(" + ");
            c.clone()
        };
        if body.is_empty() {
            out.push_str(&fmt_q(&magnitude));
        } else {
            out.push_str(&coeff_prefix(&magnitude));
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        assert_eq!(fmt_q(&qf(6, -4)), "-3/2");
        assert_eq!(fmt_sum([(&q(1), "a1".into()), (&q(-2), "b1".into())]), "a1 - 2 b1");
        assert_eq!(fmt_sum([(&q(-1), "a1".into())]), "-a1");
        assert_eq!(fmt_sum(std::iter::empty()), "0");
        assert_eq!(fmt_sum([(&q(-1), String::new()), (&q(-5), "a1".into())]), "-1 - 5 a1");
    }
}
