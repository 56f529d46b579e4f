use num_bigint::BigInt;

use super::lexer::{lex, Tok, Token};
use crate::error::{Error, Result};
use crate::letter::Kind;
use crate::wedge::WedgeShape;

/// A letter index or a generator index: a literal, `g`, or a summation variable.
#[derive(Clone, Debug, PartialEq)]
pub enum Index {
    Lit(u32),
    Genus,
    Var(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpOp {
    X,
    Y,
    U,
    V,
    Swap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Tens,
    Brac,
    Ht,
    Caterpillar,
    Rooted,
    Wedge,
    Weld,
    Phi(Option<usize>),
    Eta,
    Q12,
    Q0,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Num(BigInt),
    Genus,
    Var(String),
    /// A name bound by the caller.
    Bound(String),
    Letter(Kind, Index),
    Omega0,
    /// Signed terms; `true` marks a subtracted term.
    Terms(Vec<(bool, Expr)>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Otimes(Vec<Expr>),
    WedgeProd(Vec<Expr>),
    LieBracket(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    Sp { op: SpOp, indices: Vec<Index>, power: u32, arg: Box<Expr> },
    Contract(usize, usize, Box<Expr>),
    Project(WedgeShape, Box<Expr>),
    Sum { var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
}

/// Parsed expression with the character offset where it starts.
#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: usize,
}

impl Expr {
    fn new(kind: ExprKind, pos: usize) -> Expr {
        Expr { kind, pos }
    }
}

/// Parses an expression.
pub fn parse(src: &str) -> Result<Expr> {
    parse_with(src, &[])
}

/// Parses an expression in which `names` refer to caller-supplied values.
pub fn parse_with(src: &str, names: &[&str]) -> Result<Expr> {
    let tokens = lex(src)?;
    let bound = names.iter().map(|s| s.to_string()).collect();
    let mut p = Parser { tokens, at: 0, vars: Vec::new(), bound };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    vars: Vec<String>,
    bound: Vec<String>,
}

fn letter_parts(name: &str) -> Option<(Kind, &str)> {
    let kind = match name.chars().next()? {
        'a' => Kind::A,
        'b' => Kind::B,
        _ => return None,
    };
    let rest = &name[1..];
    if rest.is_empty() {
        None
    } else {
        Some((kind, rest))
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].pos
    }

    fn next(&mut self) -> Tok {
        let t = self.tokens[self.at].tok.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos(), message: message.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut terms = Vec::new();
        let mut negated = match self.peek() {
            Tok::Minus => {
                self.next();
                true
            }
            Tok::Plus => {
                self.next();
                false
            }
            _ => false,
        };
        loop {
            terms.push((negated, self.term()?));
            negated = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.next();
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::new(ExprKind::Terms(terms), pos))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::LParen | Tok::LBracket)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.next();
                    let rhs = self.unary()?;
                    lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
                }
                Tok::Slash => {
                    self.next();
                    let rhs = self.unary()?;
                    lhs = Expr::new(ExprKind::Div(Box::new(lhs), Box::new(rhs)), pos);
                }
                _ if self.starts_atom() => {
                    let rhs = self.tprod()?;
                    lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        if *self.peek() == Tok::Minus {
            self.next();
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
        }
        self.tprod()
    }

    fn tprod(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut factors = vec![self.wprod()?];
        while *self.peek() == Tok::Otimes {
            self.next();
            factors.push(self.wprod()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::new(ExprKind::Otimes(factors), pos) })
    }

    fn wprod(&mut self) -> Result<Expr> {
        let pos = self.pos();
        let mut factors = vec![self.atom()?];
        while matches!(self.peek(), Tok::Wedge | Tok::Caret) {
            self.next();
            factors.push(self.atom()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::new(ExprKind::WedgeProd(factors), pos) })
    }

    fn args(&mut self, open: Tok, close: Tok, what: &str) -> Result<Vec<Expr>> {
        self.expect(open, what)?;
        let mut out = Vec::new();
        if *self.peek() == close {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.next() {
                Tok::Comma => continue,
                t if t == close => return Ok(out),
                _ => {
                    self.at -= 1;
                    return Err(self.error("expected ',' or closing delimiter"));
                }
            }
        }
    }

    fn arity(&self, name: &str, args: &[Expr], n: usize, pos: usize) -> Result<()> {
        if args.len() != n {
            return Err(Error::Parse {
                pos,
                message: format!("{name} expects {n} arguments, found {}", args.len()),
            });
        }
        Ok(())
    }

    fn number(&mut self) -> Result<u64> {
        match self.next() {
            Tok::Num(s) => s.parse().map_err(|_| self.error("number too large")),
            _ => {
                self.at -= 1;
                Err(self.error("expected a number"))
            }
        }
    }

    fn index(&mut self) -> Result<Index> {
        match self.next() {
            Tok::Num(s) => Ok(Index::Lit(s.parse().map_err(|_| self.error("index too large"))?)),
            Tok::Ident(s) if s == "g" => Ok(Index::Genus),
            Tok::Ident(s) if self.vars.contains(&s) => Ok(Index::Var(s)),
            _ => {
                self.at -= 1;
                Err(self.error("expected an index"))
            }
        }
    }

    fn indices(&mut self, n: usize) -> Result<Vec<Index>> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = Vec::new();
        for k in 0..n {
            if k > 0 {
                self.expect(Tok::Comma, "','")?;
            }
            out.push(self.index()?);
        }
        self.expect(Tok::RBracket, "']'")?;
        Ok(out)
    }

    fn unary_arg(&mut self) -> Result<Expr> {
        self.expect(Tok::LParen, "'('")?;
        let e = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.next() {
            Tok::Num(s) => Ok(Expr::new(ExprKind::Num(s.parse().expect("digits")), pos)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LBracket => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.expr()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(Expr::new(ExprKind::LieBracket(Box::new(a), Box::new(b)), pos))
            }
            Tok::Ident(name) => self.named(name, pos),
            _ => {
                self.at -= 1;
                Err(self.error("expected an expression"))
            }
        }
    }

    fn named(&mut self, name: String, pos: usize) -> Result<Expr> {
        let call = |f: Func, args: Vec<Expr>| Ok(Expr::new(ExprKind::Call(f, args), pos));
        match name.as_str() {
            "g" => return Ok(Expr::new(ExprKind::Genus, pos)),
            "omega0" => return Ok(Expr::new(ExprKind::Omega0, pos)),
            "tens" => {
                let args = self.args(Tok::LBracket, Tok::RBracket, "'['")?;
                return call(Func::Tens, args);
            }
            "brac" | "weld" | "Tr" => {
                let args = self.args(Tok::LBracket, Tok::RBracket, "'['")?;
                self.arity(&name, &args, 2, pos)?;
                let f = match name.as_str() {
                    "brac" => Func::Brac,
                    "weld" => Func::Weld,
                    _ => Func::Rooted,
                };
                return call(f, args);
            }
            "Ht" => {
                let args = self.args(Tok::LBracket, Tok::RBracket, "'['")?;
                self.arity("Ht", &args, 4, pos)?;
                return call(Func::Ht, args);
            }
            "T" => {
                let args = self.args(Tok::LBracket, Tok::RBracket, "'['")?;
                self.arity("T", &args, 6, pos)?;
                return call(Func::Caterpillar, args);
            }
            "wedge" => {
                let args = self.args(Tok::LParen, Tok::RParen, "'('")?;
                self.arity("wedge", &args, 2, pos)?;
                return call(Func::Wedge, args);
            }
            "eta" | "q12" | "q0" => {
                let arg = self.unary_arg()?;
                let f = match name.as_str() {
                    "eta" => Func::Eta,
                    "q12" => Func::Q12,
                    _ => Func::Q0,
                };
                return call(f, vec![arg]);
            }
            "sum" => return self.sum(pos),
            "C" => {
                let i = self.bracketed_pair()?;
                let arg = self.unary_arg()?;
                return Ok(Expr::new(ExprKind::Contract(i.0, i.1, Box::new(arg)), pos));
            }
            "p" => {
                let shape = self.shape()?;
                let arg = self.unary_arg()?;
                return Ok(Expr::new(ExprKind::Project(shape, Box::new(arg)), pos));
            }
            "X" | "Y" | "U" | "V" | "S" => {
                let (op, n) = match name.as_str() {
                    "X" => (SpOp::X, 2),
                    "Y" => (SpOp::Y, 2),
                    "U" => (SpOp::U, 1),
                    "V" => (SpOp::V, 1),
                    _ => (SpOp::Swap, 2),
                };
                let indices = self.indices(n)?;
                let mut power = 1;
                if *self.peek() == Tok::Caret {
                    self.next();
                    power = u32::try_from(self.number()?).map_err(|_| self.error("power too large"))?;
                }
                let arg = self.unary_arg()?;
                return Ok(Expr::new(ExprKind::Sp { op, indices, power, arg: Box::new(arg) }, pos));
            }
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("phi") {
            let k = if rest.is_empty() {
                None
            } else {
                Some(rest.parse().map_err(|_| Error::Parse { pos, message: format!("unknown name {name}") })?)
            };
            let arg = self.unary_arg()?;
            return call(Func::Phi(k), vec![arg]);
        }
        if self.vars.contains(&name) {
            return Ok(Expr::new(ExprKind::Var(name), pos));
        }
        if self.bound.contains(&name) {
            return Ok(Expr::new(ExprKind::Bound(name), pos));
        }
        if let Some((kind, rest)) = letter_parts(&name) {
            if let Ok(i) = rest.parse::<u32>() {
                if i == 0 {
                    return Err(Error::Parse { pos, message: "letter indices start at 1".into() });
                }
                return Ok(Expr::new(ExprKind::Letter(kind, Index::Lit(i)), pos));
            }
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            if rest == "g" {
                return Ok(Expr::new(ExprKind::Letter(kind, Index::Genus), pos));
            }
            if self.vars.iter().any(|v| v == rest) {
                return Ok(Expr::new(ExprKind::Letter(kind, Index::Var(rest.to_string())), pos));
            }
        }
        Err(Error::Parse { pos, message: format!("unknown name {name}") })
    }

    fn bracketed_pair(&mut self) -> Result<(usize, usize)> {
        self.expect(Tok::LBracket, "'['")?;
        let i = self.number()? as usize;
        self.expect(Tok::Comma, "','")?;
        let j = self.number()? as usize;
        self.expect(Tok::RBracket, "']'")?;
        Ok((i, j))
    }

    fn shape(&mut self) -> Result<WedgeShape> {
        self.expect(Tok::LBracket, "'['")?;
        let pos = self.pos();
        let mut blocks = Vec::new();
        while *self.peek() == Tok::LParen {
            self.next();
            let mut block = vec![self.number()? as usize];
            while *self.peek() == Tok::Comma {
                self.next();
                block.push(self.number()? as usize);
            }
            self.expect(Tok::RParen, "')'")?;
            blocks.push(block);
        }
        self.expect(Tok::RBracket, "']'")?;
        WedgeShape::new(blocks).map_err(|e| Error::Parse { pos, message: e.to_string() })
    }

    fn sum(&mut self, pos: usize) -> Result<Expr> {
        self.expect(Tok::LParen, "'('")?;
        let var = match self.next() {
            Tok::Ident(v) if v != "g" && letter_parts(&v).is_none() => v,
            _ => {
                self.at -= 1;
                return Err(self.error("expected a summation variable"));
            }
        };
        self.expect(Tok::Comma, "','")?;
        let lo = self.expr()?;
        self.expect(Tok::Comma, "','")?;
        let hi = self.expr()?;
        self.expect(Tok::Comma, "','")?;
        self.vars.push(var.clone());
        let body = self.expr();
        self.vars.pop();
        let body = body?;
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::new(ExprKind::Sum { var, lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }, pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("2 a1⊗b1 - b1@a1").unwrap();
        assert!(matches!(&e.kind, ExprKind::Terms(t) if t.len() == 2 && t[1].0));
        let e = parse("a1∧a2⊗a3").unwrap();
        let ExprKind::Otimes(f) = e.kind else { panic!() };
        assert!(matches!(f[0].kind, ExprKind::WedgeProd(_)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("Ht[a1,a2]").unwrap_err(), Error::Parse { pos: 0, message: "Ht expects 4 arguments, found 2".into() });
        assert!(matches!(parse("a1 + ]"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse("ai"), Err(Error::Parse { .. })));
        assert!(parse("sum(i,1,g, ai⊗bi)").is_ok());
        assert!(parse("X[1,2]^3(Ht[a1,b1,a1,b1])").is_ok());
        assert!(parse("p[(1,2)(3)](tens[a1,a2,a3])").is_ok());
    }
}
