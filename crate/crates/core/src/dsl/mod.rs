//! A small expression language for elements of the tensor algebra, Lie
//! algebra, tree space and wedge spaces.
//!
//! ```
//! use johnson_algebra::{dsl, Genus};
//! let g = Genus::new(3).unwrap();
//! let v = dsl::evaluate("q12(Ht[a1,b1,a1,b1])", g).unwrap();
//! assert_eq!(v.to_string(), "12 a1∧b1");
//! ```

mod eval;
mod lexer;
mod parser;
mod value;

pub use eval::{eval, eval_with};
pub use parser::{parse, parse_with, Expr, ExprKind, Func, Index, SpOp};
pub use value::Value;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::letter::Genus;

/// Parses `src` and rejects literal letter or generator indices above `g`.
pub fn parse_for_genus(src: &str, g: Genus) -> Result<Expr> {
    let e = parse(src)?;
    check_indices(&e, g)?;
    Ok(e)
}

/// Parses and evaluates `src` in genus `g`.
pub fn evaluate(src: &str, g: Genus) -> Result<Value> {
    eval(&parse_for_genus(src, g)?, g)
}

/// Parses and evaluates `src`, resolving the names in `bound`.
pub fn evaluate_with(src: &str, g: Genus, bound: &HashMap<String, Value>) -> Result<Value> {
    let names: Vec<&str> = bound.keys().map(String::as_str).collect();
    let e = parse_with(src, &names)?;
    check_indices(&e, g)?;
    eval_with(&e, g, bound)
}

fn check_index(i: &Index, g: Genus, pos: usize) -> Result<()> {
    if let Index::Lit(n) = i {
        if *n > g.get() {
            return Err(Error::Parse { pos, message: format!("index {n} out of range for genus {}", g.get()) });
        }
    }
    Ok(())
}

fn check_indices(e: &Expr, g: Genus) -> Result<()> {
    match &e.kind {
        ExprKind::Num(_) | ExprKind::Genus | ExprKind::Var(_) | ExprKind::Bound(_) | ExprKind::Omega0 => Ok(()),
        ExprKind::Letter(_, i) => check_index(i, g, e.pos),
        ExprKind::Terms(ts) => ts.iter().try_for_each(|(_, t)| check_indices(t, g)),
        ExprKind::Mul(a, b)
        | ExprKind::Div(a, b)
        | ExprKind::LieBracket(a, b) => {
            check_indices(a, g)?;
            check_indices(b, g)
        }
        ExprKind::Neg(a) | ExprKind::Contract(_, _, a) | ExprKind::Project(_, a) => check_indices(a, g),
        ExprKind::Otimes(fs) | ExprKind::WedgeProd(fs) | ExprKind::Call(_, fs) => {
            fs.iter().try_for_each(|f| check_indices(f, g))
        }
        ExprKind::Sp { indices, arg, .. } => {
            for i in indices {
                check_index(i, g, e.pos)?;
            }
            check_indices(arg, g)
        }
        ExprKind::Sum { lo, hi, body, .. } => {
            check_indices(lo, g)?;
            check_indices(hi, g)?;
            check_indices(body, g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn ev(s: &str, n: u32) -> Value {
        evaluate(s, g(n)).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn sample_session_value() {
        let v = ev("4 p[(1,2)(3,4)](C[1,2](C[1,2](brac[Ht[a1,a2,a1,a2], Ht[a3,b3,a3,b3]])))", 3);
        assert!(v.same_as(&ev("-576 (a1∧a2)⊗(a1∧a2)", 3)), "{v}");
    }

    #[test]
    fn wedge_of_equal_letters_vanishes() {
        assert!(ev("wedge(a1,a1)", 2).is_zero());
        assert_eq!(ev("a2∧a1", 2).to_string(), "-a1∧a2");
    }

    #[test]
    fn sums_and_scalars() {
        assert_eq!(ev("sum(i,1,g, i)", 4), Value::Scalar(q(10)));
        assert_eq!(ev("3/2 - 1/2", 1), Value::Scalar(q(1)));
        let w = ev("sum(i,1,g,[ai,bi])", 3);
        assert_eq!(w, Value::Lie(crate::omega0(g(3))));
    }

    #[test]
    fn genus_is_checked() {
        assert!(matches!(evaluate("Ht[a1,a9,a1,a2]", g(4)), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(evaluate("X[1,5](a1)", g(4)), Err(Error::Parse { .. })));
        assert!(matches!(evaluate("[a1⊗a2, b1]", g(4)), Err(Error::Type { .. })));
    }

    #[test]
    fn printed_values_reparse() {
        let exprs = [
            "Ht[a1,b1,a2,b2] - 2 Ht[a1,a2,a1,b1]",
            "T[a1,a2,a1,a1,a2,a1] + sum(i,1,g,Tr[ai,[bi,[a1,[a2,[a1,b1]]]]])",
            "eta(Ht[a1,a2,a1,b1])",
            "[[a1,b2],a2] + 1/2 [a1,[a1,b1]]",
            "tens[a1,b1,a2] - 3 tens[b1,a1,a2]",
            "p[(1,2)(3)](tens[a1,a2,b1] - tens[a2,b2,b1])",
            "a1∧a2∧b2",
            "q12(Ht[a1,b1,a1,b1])",
            "q0(Ht[a1,b1,a1,b1])",
            "U[2]^3(X[1,2]^3(wedge(Ht[a1,b1,a1,b1], Ht[a2,b2,a2,b2])))",
        ];
        for s in exprs {
            let v = ev(s, 3);
            let printed = v.to_string();
            let w = ev(&printed, 3);
            assert!(v.same_as(&w), "{s}: {printed} reparsed as {w}");
            assert_eq!(printed, w.to_string(), "{s}");
        }
    }

    #[test]
    fn weld_matches_derivation_bracket() {
        let t = ev("[Ht[a1,a2,a1,a2], Ht[a1,b2,a1,a2]]", 3);
        let h = ev("[eta(Ht[a1,a2,a1,a2]), eta(Ht[a1,b2,a1,a2])]", 3);
        assert!(t.same_as(&h));
        assert!(t.same_as(&ev("2 T[a1,a2,a1,a1,a2,a1]", 3)));
    }
}
