use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::parser::{Expr, ExprKind, Func, Index, SpOp};
use super::value::Value;
use crate::detect;
use crate::error::{Error, Result};
use crate::hl::HLElement;
use crate::letter::{Genus, Letter};
use crate::lie::omega0;
use crate::rational::Q;
use crate::sp::SpGenerator;
use crate::tensor::{wedge_square_embed, Tensor};
use crate::tree::{self, LabeledTree, Planar, TreeElement};
use crate::wedge::{project, MultiWedgeElement};

/// Evaluates `expr` in genus `g`.
pub fn eval(expr: &Expr, g: Genus) -> Result<Value> {
    eval_with(expr, g, &HashMap::new())
}

/// Evaluates `expr` with values for the names it was parsed with.
pub fn eval_with(expr: &Expr, g: Genus, bound: &HashMap<String, Value>) -> Result<Value> {
    Evaluator { g, vars: HashMap::new(), bound }.eval(expr)
}

struct Evaluator<'a> {
    g: Genus,
    vars: HashMap<String, i64>,
    bound: &'a HashMap<String, Value>,
}

fn type_error(pos: usize, message: impl Into<String>) -> Error {
    Error::Type { pos, message: message.into() }
}

/// Attaches a position to errors raised by the algebra layer.
fn at(pos: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } | Error::Type { .. } | Error::IndexOutOfRange { .. } => e,
        other => Error::Type { pos, message: other.to_string() },
    }
}

/// Expands a degree-1 value into letters with coefficients.
fn letter_terms(v: &Value, pos: usize) -> Result<Vec<(Letter, Q)>> {
    let t = match v {
        Value::Tensor(t) if t.degree() == 1 => t.clone(),
        Value::Lie(x) if x.degree() == 1 => x.iota(),
        _ => return Err(type_error(pos, format!("expected a degree-1 element, found a {}", v.kind()))),
    };
    Ok(t.terms().map(|(w, c)| (w[0], c.clone())).collect())
}

fn add(a: Value, b: Value, pos: usize) -> Result<Value> {
    if let Value::Scalar(c) = &a {
        if c.is_zero() && !matches!(b, Value::Scalar(_)) {
            return Ok(b);
        }
    }
    if let Value::Scalar(c) = &b {
        if c.is_zero() && !matches!(a, Value::Scalar(_)) {
            return Ok(a);
        }
    }
    if a.degree() != b.degree() {
        return Err(type_error(pos, format!("cannot add terms of degree {} and {}", a.degree(), b.degree())));
    }
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
        (Value::Lie(mut x), Value::Lie(y)) => {
            x += &y;
            Value::Lie(x)
        }
        (Value::Tree(mut x), Value::Tree(y)) => {
            x += &y;
            Value::Tree(x)
        }
        (Value::HL(mut x), Value::HL(y)) => {
            x += &y;
            Value::HL(x)
        }
        (Value::HL(mut x), Value::Tree(y)) | (Value::Tree(y), Value::HL(mut x)) => {
            x += &y.eta();
            Value::HL(x)
        }
        (Value::Wedge(mut x), Value::Wedge(y)) => {
            if x.sizes() != y.sizes() {
                return Err(type_error(pos, "cannot add wedges of different shapes"));
            }
            x += &y;
            Value::Wedge(x)
        }
        (Value::Wedge(_), other) | (other, Value::Wedge(_)) => {
            return Err(type_error(pos, format!("cannot add a wedge and a {}", other.kind())))
        }
        (x @ Value::Lie(_), y) | (y, x @ Value::Lie(_)) if y.as_lie().is_some() => {
            let mut l = x.as_lie().expect("lie");
            l += &y.as_lie().expect("checked");
            Value::Lie(l)
        }
        (x, y) => Value::Tensor(x.to_tensor() + y.to_tensor()),
    })
}

fn neg(v: Value) -> Value {
    v.scale(&-Q::one())
}

fn planar(e: &Expr, ev: &Evaluator) -> Result<Vec<(Planar, Q)>> {
    match &e.kind {
        ExprKind::LieBracket(l, r) => {
            let mut out = Vec::new();
            for (pl, cl) in planar(l, ev)? {
                for (pr, cr) in planar(r, ev)? {
                    out.push((Planar::node(pl.clone(), pr), &cl * &cr));
                }
            }
            Ok(out)
        }
        _ => {
            let v = ev.eval(e)?;
            Ok(letter_terms(&v, e.pos)?.into_iter().map(|(l, c)| (Planar::Leaf(l), c)).collect())
        }
    }
}

impl Evaluator<'_> {
    fn index(&self, i: &Index, pos: usize) -> Result<u32> {
        let n = match i {
            Index::Lit(n) => *n as i64,
            Index::Genus => self.g.get() as i64,
            Index::Var(v) => self.vars[v],
        };
        let n = u32::try_from(n).map_err(|_| type_error(pos, format!("index {n} out of range")))?;
        self.g.check_index(n)?;
        Ok(n)
    }

    fn integer(&self, e: &Expr) -> Result<i64> {
        match self.eval(e)? {
            Value::Scalar(c) if c.is_integer() => c
                .to_integer()
                .to_i64()
                .ok_or_else(|| type_error(e.pos, "integer too large")),
            other => Err(type_error(e.pos, format!("expected an integer, found {other}"))),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Value> {
        let pos = e.pos;
        match &e.kind {
            ExprKind::Num(n) => Ok(Value::Scalar(Q::from_integer(n.clone()))),
            ExprKind::Genus => Ok(Value::Scalar(Q::from_integer(BigInt::from(self.g.get())))),
            ExprKind::Bound(name) => {
                self.bound.get(name).cloned().ok_or_else(|| type_error(pos, format!("no value bound to {name}")))
            }
            ExprKind::Var(v) => Ok(Value::Scalar(Q::from_integer(BigInt::from(self.vars[v])))),
            ExprKind::Letter(kind, i) => {
                let i = self.index(i, pos)?;
                Ok(Value::Tensor(Tensor::letter(Letter::new(*kind, i))))
            }
            ExprKind::Omega0 => Ok(Value::Lie(omega0(self.g))),
            ExprKind::Terms(terms) => {
                let mut acc = Value::Scalar(Q::zero());
                for (negated, t) in terms {
                    let v = self.eval(t)?;
                    acc = add(acc, if *negated { neg(v) } else { v }, t.pos)?;
                }
                Ok(acc)
            }
            ExprKind::Neg(a) => Ok(neg(self.eval(a)?)),
            ExprKind::Mul(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match (&x, &y) {
                    (Value::Scalar(c), v) | (v, Value::Scalar(c)) => Ok(v.scale(c)),
                    _ => Err(type_error(pos, format!("cannot multiply a {} by a {}; use ⊗", x.kind(), y.kind()))),
                }
            }
            ExprKind::Div(a, b) => {
                let x = self.eval(a)?;
                match self.eval(b)? {
                    Value::Scalar(c) if !c.is_zero() => Ok(x.scale(&c.recip())),
                    Value::Scalar(_) => Err(type_error(b.pos, "division by zero")),
                    other => Err(type_error(b.pos, format!("cannot divide by a {}", other.kind()))),
                }
            }
            ExprKind::Otimes(fs) => {
                let vals = fs.iter().map(|f| self.eval(f)).collect::<Result<Vec<_>>>()?;
                self.otimes(vals, fs)
            }
            ExprKind::WedgeProd(fs) => {
                let vals = fs.iter().map(|f| self.eval(f)).collect::<Result<Vec<_>>>()?;
                self.wedge(vals, pos)
            }
            ExprKind::LieBracket(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                match (&x, &y) {
                    (Value::Tree(s), Value::Tree(t)) => Ok(Value::Tree(s.weld(t))),
                    (Value::HL(_) | Value::Tree(_), Value::HL(_) | Value::Tree(_)) => {
                        let (s, t) = (x.as_hl()?, y.as_hl()?);
                        Ok(Value::HL(s.derivation_bracket(&t, self.g).map_err(at(pos))?))
                    }
                    _ => match (x.as_lie(), y.as_lie()) {
                        (Some(s), Some(t)) => Ok(Value::Lie(s.bracket(&t))),
                        _ => Err(type_error(
                            pos,
                            format!("cannot bracket a {} with a {}; use brac[..] for the commutator", x.kind(), y.kind()),
                        )),
                    },
                }
            }
            ExprKind::Call(f, args) => self.call(*f, args, pos),
            ExprKind::Sp { op, indices, power, arg } => {
                let ix = indices.iter().map(|i| self.index(i, pos)).collect::<Result<Vec<_>>>()?;
                let mut v = self.eval(arg)?;
                if *op == SpOp::Swap {
                    let (i, j) = (ix[0], ix[1]);
                    let swap = move |l: Letter| {
                        let k = if l.index() == i {
                            j
                        } else if l.index() == j {
                            i
                        } else {
                            l.index()
                        };
                        Letter::new(l.kind(), k)
                    };
                    for _ in 0..*power {
                        v = v.map_letters(swap);
                    }
                    return Ok(v);
                }
                let gen = match op {
                    SpOp::X => SpGenerator::X(ix[0], ix[1]),
                    SpOp::Y => SpGenerator::Y(ix[0], ix[1]),
                    SpOp::U => SpGenerator::U(ix[0]),
                    SpOp::V => SpGenerator::V(ix[0]),
                    SpOp::Swap => unreachable!(),
                };
                gen.check(self.g).map_err(at(pos))?;
                for _ in 0..*power {
                    v = v.sp_apply(gen);
                }
                Ok(v)
            }
            ExprKind::Contract(i, j, arg) => {
                let t = self.eval(arg)?.to_tensor();
                Ok(Value::Tensor(t.contract(*i, *j).map_err(at(pos))?))
            }
            ExprKind::Project(shape, arg) => {
                let t = self.eval(arg)?.to_tensor();
                Ok(Value::Wedge(project(&t, shape).map_err(at(pos))?))
            }
            ExprKind::Sum { var, lo, hi, body } => {
                let (lo, hi) = (self.integer(lo)?, self.integer(hi)?);
                let mut inner = Evaluator { g: self.g, vars: self.vars.clone(), bound: self.bound };
                let mut acc = Value::Scalar(Q::zero());
                for i in lo..=hi {
                    inner.vars.insert(var.clone(), i);
                    acc = add(acc, inner.eval(body)?, pos)?;
                }
                Ok(acc)
            }
        }
    }

    fn otimes(&self, vals: Vec<Value>, exprs: &[Expr]) -> Result<Value> {
        if vals.iter().any(|v| matches!(v, Value::Wedge(_))) {
            let mut coeff = Q::one();
            let mut out: Option<MultiWedgeElement> = None;
            for (v, e) in vals.iter().zip(exprs) {
                let w = match v {
                    Value::Scalar(c) => {
                        coeff *= c;
                        continue;
                    }
                    Value::Wedge(w) => w.clone(),
                    other => {
                        let mut w = MultiWedgeElement::zero(vec![1]);
                        for (l, c) in letter_terms(other, e.pos)? {
                            w.add_blocks(vec![vec![l]], c);
                        }
                        w
                    }
                };
                out = Some(match out {
                    None => w,
                    Some(acc) => acc.otimes(&w),
                });
            }
            return Ok(Value::Wedge(out.expect("a wedge factor").scale(&coeff)));
        }
        if vals.len() == 2 {
            if let (Value::Tensor(x), Value::Lie(u)) = (&vals[0], &vals[1]) {
                if x.degree() == 1 && u.degree() >= 2 {
                    let mut h = HLElement::zero(u.degree() - 1);
                    for (w, c) in x.terms() {
                        h.add_simple(w[0], u, c);
                    }
                    return Ok(Value::HL(h));
                }
            }
        }
        let mut acc = Tensor::one();
        for v in &vals {
            acc = acc.otimes(&v.to_tensor());
        }
        Ok(if acc.degree() == 0 { Value::Scalar(acc.coeff(&[])) } else { Value::Tensor(acc) })
    }

    fn wedge(&self, vals: Vec<Value>, pos: usize) -> Result<Value> {
        let simple = vals.iter().all(|v| {
            matches!(v, Value::Scalar(_)) || v.degree() == 1 || matches!(v, Value::Wedge(w) if w.sizes().len() == 1)
        });
        if simple {
            let mut terms: Vec<(Vec<Letter>, Q)> = vec![(Vec::new(), Q::one())];
            for v in &vals {
                let factor: Vec<(Vec<Letter>, Q)> = match v {
                    Value::Scalar(c) => vec![(Vec::new(), c.clone())],
                    Value::Wedge(w) => w.terms().map(|(k, c)| (k[0].to_vec(), c.clone())).collect(),
                    other => letter_terms(other, pos)?.into_iter().map(|(l, c)| (vec![l], c)).collect(),
                };
                let mut next = Vec::new();
                for (a, ca) in &terms {
                    for (b, cb) in &factor {
                        let mut w = a.clone();
                        w.extend_from_slice(b);
                        next.push((w, ca * cb));
                    }
                }
                terms = next;
            }
            let size = terms.first().map_or(0, |t| t.0.len());
            let mut out = MultiWedgeElement::zero(vec![size]);
            for (w, c) in terms {
                out.add_blocks(vec![w], c);
            }
            return Ok(Value::Wedge(out));
        }
        if vals.len() != 2 {
            return Err(type_error(pos, "the exterior square takes exactly two factors"));
        }
        if matches!(vals[0], Value::Wedge(_)) || matches!(vals[1], Value::Wedge(_)) {
            return Err(type_error(pos, "cannot wedge a multi-block wedge"));
        }
        let t = wedge_square_embed(&vals[0].to_tensor(), &vals[1].to_tensor()).map_err(at(pos))?;
        Ok(Value::Tensor(t))
    }

    fn tree_args(&self, args: &[Expr]) -> Result<Vec<Vec<(Letter, Q)>>> {
        args.iter().map(|a| letter_terms(&self.eval(a)?, a.pos)).collect()
    }

    fn call(&self, f: Func, args: &[Expr], pos: usize) -> Result<Value> {
        match f {
            Func::Tens => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>>>()?;
                let mut acc = Tensor::one();
                for v in &vals {
                    if let Value::Wedge(_) = v {
                        return Err(type_error(pos, "tens[..] takes tensors, not wedges"));
                    }
                    acc = acc.otimes(&v.to_tensor());
                }
                Ok(if acc.degree() == 0 { Value::Scalar(acc.coeff(&[])) } else { Value::Tensor(acc) })
            }
            Func::Brac => {
                let (x, y) = (self.eval(&args[0])?, self.eval(&args[1])?);
                match (&x, &y) {
                    (Value::Lie(s), Value::Lie(t)) => Ok(Value::Lie(s.bracket(t))),
                    (Value::Wedge(_), _) | (_, Value::Wedge(_)) => Err(type_error(pos, "brac[..] takes tensors")),
                    _ => Ok(Value::Tensor(x.to_tensor().commutator(&y.to_tensor()))),
                }
            }
            Func::Ht | Func::Caterpillar => {
                let letters = self.tree_args(args)?;
                let mut out = TreeElement::zero(if f == Func::Ht { 2 } else { 4 });
                let mut choice = vec![0usize; letters.len()];
                if letters.iter().any(|l| l.is_empty()) {
                    return Ok(Value::Tree(out));
                }
                loop {
                    let ls: Vec<Letter> = choice.iter().zip(&letters).map(|(&k, l)| l[k].0).collect();
                    let c = choice.iter().zip(&letters).fold(Q::one(), |acc, (&k, l)| acc * &l[k].1);
                    let t = if f == Func::Ht {
                        tree::h_tree(ls[0], ls[1], ls[2], ls[3])
                    } else {
                        tree::caterpillar(ls[0], ls[1], ls[2], ls[3], ls[4], ls[5])
                    };
                    out += &t.scale(&c);
                    let mut k = 0;
                    while k < choice.len() {
                        choice[k] += 1;
                        if choice[k] < letters[k].len() {
                            break;
                        }
                        choice[k] = 0;
                        k += 1;
                    }
                    if k == choice.len() {
                        return Ok(Value::Tree(out));
                    }
                }
            }
            Func::Rooted => {
                let roots = letter_terms(&self.eval(&args[0])?, args[0].pos)?;
                let bodies = planar(&args[1], self)?;
                let degree = bodies.first().map_or(0, |b| b.0.leaf_count()).saturating_sub(1);
                if degree == 0 {
                    return Err(type_error(args[1].pos, "a tree body needs at least two leaves"));
                }
                let mut out = TreeElement::zero(degree);
                for (r, cr) in &roots {
                    for (b, cb) in &bodies {
                        out.add_term(LabeledTree::new(*r, b.clone()), cr * cb);
                    }
                }
                Ok(Value::Tree(out))
            }
            Func::Wedge => {
                let vals = vec![self.eval(&args[0])?, self.eval(&args[1])?];
                self.wedge(vals, pos)
            }
            Func::Weld => {
                let (x, y) = (self.eval(&args[0])?, self.eval(&args[1])?);
                match (x, y) {
                    (Value::Tree(s), Value::Tree(t)) => Ok(Value::Tree(s.weld(&t))),
                    (x, y) => Err(type_error(pos, format!("weld[..] takes trees, found a {} and a {}", x.kind(), y.kind()))),
                }
            }
            Func::Phi(k) => {
                let v = self.eval(&args[0])?;
                let x = v
                    .as_lie()
                    .ok_or_else(|| type_error(args[0].pos, format!("phi takes a Lie element, found a {}", v.kind())))?;
                if let Some(k) = k {
                    if k != x.degree() {
                        return Err(type_error(pos, format!("phi{k} takes degree {k}, found degree {}", x.degree())));
                    }
                }
                if x.degree() < 2 {
                    return Err(type_error(pos, "phi takes a Lie element of degree at least 2"));
                }
                Ok(Value::Tree(tree::phi(&x, self.g)))
            }
            Func::Eta => Ok(Value::HL(self.eval(&args[0])?.as_hl().map_err(at(args[0].pos))?)),
            Func::Q12 => {
                let h = self.eval(&args[0])?.as_hl().map_err(at(args[0].pos))?;
                Ok(Value::Wedge(detect::q12(&h).map_err(at(pos))?))
            }
            Func::Q0 => {
                let h = self.eval(&args[0])?.as_hl().map_err(at(args[0].pos))?;
                Ok(Value::Scalar(detect::q0(&h).map_err(at(pos))?))
            }
        }
    }
}
