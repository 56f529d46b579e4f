//! Representations of `Sp(2g, Q)`: Young diagrams, the Weyl dimension
//! formula, Freudenthal multiplicities and decomposition of characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::letter::Genus;
use crate::sp::{SpGenerator, Weight};
use crate::tensor::Tensor;

/// A Young diagram `[n1 ≥ n2 ≥ … ≥ nl > 0]`; the empty diagram is `[0]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct YoungDiagram(Vec<u32>);

impl YoungDiagram {
    pub fn new(mut rows: Vec<u32>) -> Result<YoungDiagram> {
        rows.retain(|&r| r > 0);
        if rows.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::arg(format!("rows {rows:?} are not weakly decreasing")));
        }
        Ok(YoungDiagram(rows))
    }

    pub fn trivial() -> YoungDiagram {
        YoungDiagram(Vec::new())
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn check(&self, g: Genus) -> Result<()> {
        if self.0.len() > g.get() as usize {
            return Err(Error::arg(format!("{self} has more than {} rows", g.get())));
        }
        Ok(())
    }

    /// The highest weight `(n1, …, nl, 0, …, 0)`.
    pub fn highest_weight(&self, g: Genus) -> Result<Weight> {
        self.check(g)?;
        let mut w = Weight::zero(g);
        for (i, &r) in self.0.iter().enumerate() {
            w.0[i] = r as i32;
        }
        Ok(w)
    }

    pub fn from_weight(w: &Weight) -> Result<YoungDiagram> {
        if !w.is_dominant() {
            return Err(Error::arg(format!("{w} is not dominant")));
        }
        YoungDiagram::new(w.0.iter().map(|&x| x as u32).collect())
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("[0]");
        }
        let wide = self.0[0] >= 10;
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let r = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == r).count();
            parts.push(if run > 1 { format!("{r}{}", superscript(run)) } else { r.to_string() });
            i += run;
        }
        write!(f, "[{}]", parts.join(if wide { " " } else { "" }))
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;

    /// Accepts `[2 2]`, `[2,2]`, `[2^2]`, `[22]`, `[31^3]`, `[2²1²]` and `[0]`.
    fn from_str(s: &str) -> Result<YoungDiagram> {
        let bad = || Error::arg(format!("cannot read Young diagram {s:?}"));
        let body = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let spaced = body.contains([' ', ',']);
        let mut rows = Vec::new();
        let mut chars = body.chars().peekable();
        while let Some(&c) = chars.peek() {
            if c == ' ' || c == ',' {
                chars.next();
                continue;
            }
            let mut num = String::new();
            if spaced {
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    num.push(d);
                    chars.next();
                }
            } else if c.is_ascii_digit() {
                num.push(c);
                chars.next();
            }
            let row: u32 = num.parse().map_err(|_| bad())?;
            let mut exp = String::new();
            if chars.peek() == Some(&'^') {
                chars.next();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    exp.push(d);
                    chars.next();
                    if !spaced {
                        break;
                    }
                }
            } else {
                while let Some(d) = chars.peek().and_then(|&d| "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|x| x == d)) {
                    exp.push(char::from_digit(d as u32, 10).unwrap());
                    chars.next();
                }
            }
            let times: usize = if exp.is_empty() { 1 } else { exp.parse().map_err(|_| bad())? };
            rows.extend(std::iter::repeat_n(row, times));
        }
        YoungDiagram::new(rows)
    }
}

fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn rho(g: Genus) -> Vec<i64> {
    (1..=g.get() as i64).rev().collect()
}

fn positive_roots(g: Genus) -> Vec<Vec<i64>> {
    let n = g.get() as usize;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut a = vec![0; n];
            a[i] = 1;
            a[j] = -1;
            out.push(a.clone());
            a[j] = 1;
            out.push(a);
        }
        let mut a = vec![0; n];
        a[i] = 2;
        out.push(a);
    }
    out
}

/// Dimension of the irreducible representation `[λ]` of `Sp(2g)`.
pub fn weyl_dim(lambda: &YoungDiagram, g: Genus) -> Result<BigInt> {
    let hw = lambda.highest_weight(g)?;
    let r = rho(g);
    let l: Vec<i64> = hw.0.iter().zip(&r).map(|(&a, b)| a as i64 + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in positive_roots(g) {
        num *= dot(&l, &a);
        den *= dot(&r, &a);
    }
    Ok(num / den)
}

/// A multiset of weights, possibly with negative entries for virtual
/// characters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightTable(pub BTreeMap<Weight, i64>);

impl WeightTable {
    pub fn new() -> WeightTable {
        WeightTable::default()
    }

    pub fn add(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.0.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&w);
        }
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &WeightTable) -> WeightTable {
        let mut out = self.clone();
        for (w, &m) in &other.0 {
            out.add(w.clone(), m);
        }
        out
    }

    pub fn minus(&self, other: &WeightTable) -> WeightTable {
        let mut out = self.clone();
        for (w, &m) in &other.0 {
            out.add(w.clone(), -m);
        }
        out
    }

    pub fn scaled(&self, c: i64) -> WeightTable {
        let mut out = WeightTable::new();
        for (w, &m) in &self.0 {
            out.add(w.clone(), c * m);
        }
        out
    }

    /// Character of `V ⊗ W`.
    pub fn tensor(&self, other: &WeightTable) -> WeightTable {
        let mut out = WeightTable::new();
        for (w1, m1) in &self.0 {
            for (w2, m2) in &other.0 {
                out.add(w1.add(w2), m1 * m2);
            }
        }
        out
    }

    /// The Adams operation `ψ^d`, scaling every weight by `d`.
    pub fn adams(&self, d: i32) -> WeightTable {
        WeightTable(self.0.iter().map(|(w, &m)| (Weight(w.0.iter().map(|x| d * x).collect()), m)).collect())
    }

    /// Divides every multiplicity by `k`, which must divide them all.
    pub fn divided(&self, k: i64) -> Result<WeightTable> {
        let mut out = WeightTable::new();
        for (w, &m) in &self.0 {
            if m % k != 0 {
                return Err(Error::NotCharacter(format!("multiplicity {m} at {w} is not divisible by {k}")));
            }
            out.add(w.clone(), m / k);
        }
        Ok(out)
    }

    /// Character of `∧²V`: `(χ(x)² - χ(x²)) / 2`.
    pub fn wedge2(&self) -> WeightTable {
        let sq = self.tensor(self);
        let mut out = WeightTable::new();
        for (w, &m) in &sq.0 {
            out.add(w.clone(), m);
        }
        for (w, &m) in &self.0 {
            out.add(Weight(w.0.iter().map(|x| 2 * x).collect()), -m);
        }
        let mut halved = WeightTable::new();
        for (w, m) in out.0 {
            debug_assert!(m % 2 == 0, "odd coefficient in ∧² character");
            halved.add(w, m / 2);
        }
        halved
    }

    /// Entries at dominant weights.
    pub fn dominant(&self) -> BTreeMap<Weight, i64> {
        self.0.iter().filter(|(w, _)| w.is_dominant()).map(|(w, &m)| (w.clone(), m)).collect()
    }

    /// Whether the table is invariant under signed permutations.
    pub fn is_weyl_symmetric(&self) -> bool {
        self.0.iter().all(|(w, &m)| self.mult(&dominant_conjugate(w)) == m)
    }
}

/// The dominant weight in the Weyl orbit of `w`.
pub fn dominant_conjugate(w: &Weight) -> Weight {
    let mut v: SmallVec<[i32; 8]> = w.0.iter().map(|x| x.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Weight(v)
}

/// `μ ≤ λ` in the dominance order of type C.
fn dominated(mu: &[i64], lambda: &[i64]) -> bool {
    let mut s = 0;
    for (l, m) in lambda.iter().zip(mu) {
        s += l - m;
        if s < 0 {
            return false;
        }
    }
    s % 2 == 0
}

struct Freudenthal {
    lambda: Vec<i64>,
    norm: i64,
    roots: Vec<Vec<i64>>,
    rho: Vec<i64>,
    memo: HashMap<Vec<i64>, i64>,
}

impl Freudenthal {
    fn mult(&mut self, mu: &[i64]) -> i64 {
        let mut d: Vec<i64> = mu.iter().map(|x| x.abs()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        if !dominated(&d, &self.lambda) {
            return 0;
        }
        if d == self.lambda {
            return 1;
        }
        if let Some(&m) = self.memo.get(&d) {
            return m;
        }
        let mut num: i64 = 0;
        for a in self.roots.clone() {
            let mut k = 1;
            loop {
                let nu: Vec<i64> = d.iter().zip(&a).map(|(x, y)| x + k * y).collect();
                let mut nd: Vec<i64> = nu.iter().map(|x| x.abs()).collect();
                nd.sort_unstable_by(|x, y| y.cmp(x));
                if !dominated(&nd, &self.lambda) {
                    break;
                }
                num += self.mult(&nu) * dot(&nu, &a);
                k += 1;
            }
        }
        let shifted: Vec<i64> = d.iter().zip(&self.rho).map(|(x, r)| x + r).collect();
        let den = self.norm - dot(&shifted, &shifted);
        let m = 2 * num / den;
        debug_assert_eq!(2 * num % den, 0);
        self.memo.insert(d, m);
        m
    }
}

fn signed_orbit(w: &Weight) -> Vec<Weight> {
    let mut out = std::collections::BTreeSet::new();
    let mut v: Vec<i32> = w.0.iter().map(|x| x.abs()).collect();
    v.sort_unstable();
    loop {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
        for mask in 0u32..(1 << nz.len()) {
            let mut s = v.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    s[i] = -s[i];
                }
            }
            out.insert(Weight(s.into_iter().collect()));
        }
        if !next_permutation(&mut v) {
            break;
        }
    }
    out.into_iter().collect()
}

fn next_permutation(v: &mut [i32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Dominant weights `μ ≤ λ` with their multiplicities in `[λ]`.
pub fn dominant_multiplicities(lambda: &YoungDiagram, g: Genus) -> Result<Arc<BTreeMap<Weight, i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<(YoungDiagram, u32), Arc<BTreeMap<Weight, i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.clone(), g.get());
    if let Some(t) = cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let hw = lambda.highest_weight(g)?;
    let lam: Vec<i64> = hw.0.iter().map(|&x| x as i64).collect();
    let r = rho(g);
    let shifted: Vec<i64> = lam.iter().zip(&r).map(|(x, y)| x + y).collect();
    let mut f = Freudenthal { lambda: lam.clone(), norm: dot(&shifted, &shifted), roots: positive_roots(g), rho: r, memo: HashMap::new() };
    let mut out = BTreeMap::new();
    let total = lam.iter().sum::<i64>();
    let n = g.get() as usize;
    for mu in partitions_up_to(total, n) {
        if (total - mu.iter().sum::<i64>()) % 2 != 0 || !dominated(&mu, &lam) {
            continue;
        }
        let m = f.mult(&mu);
        if m != 0 {
            out.insert(Weight(mu.iter().map(|&x| x as i32).collect()), m);
        }
    }
    let out = Arc::new(out);
    cache.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

fn partitions_up_to(max_total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(prefix: &mut Vec<i64>, left: i64, cap: i64, parts: usize, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == parts {
            out.push(prefix.clone());
            return;
        }
        for x in (0..=cap.min(left)).rev() {
            prefix.push(x);
            rec(prefix, left - x, x, parts, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_total, max_total, parts, &mut out);
    out
}

/// Full weight multiplicity table of `[λ]`.
pub fn freudenthal(lambda: &YoungDiagram, g: Genus) -> Result<WeightTable> {
    let dom = dominant_multiplicities(lambda, g)?;
    let mut out = WeightTable::new();
    for (w, &m) in dom.iter() {
        for v in signed_orbit(w) {
            out.add(v, m);
        }
    }
    Ok(out)
}

/// Multiplicities of irreducible summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionResult(pub BTreeMap<YoungDiagram, u64>);

impl DecompositionResult {
    pub fn mult(&self, lambda: &YoungDiagram) -> u64 {
        self.0.get(lambda).copied().unwrap_or(0)
    }

    pub fn dim(&self, g: Genus) -> BigInt {
        self.0.iter().map(|(l, &m)| weyl_dim(l, g).unwrap() * m).sum()
    }

    /// Summands listed from the largest diagram down, e.g. `[42] + 2[31]`.
    pub fn sorted(&self) -> Vec<(YoungDiagram, u64)> {
        let mut v: Vec<_> = self.0.iter().map(|(l, &m)| (l.clone(), m)).collect();
        v.sort_by(|a, b| diagram_order(&b.0, &a.0));
        v
    }
}

/// Orders diagrams lexicographically by rows.
pub fn diagram_order(a: &YoungDiagram, b: &YoungDiagram) -> std::cmp::Ordering {
    a.rows().cmp(b.rows())
}

impl fmt::Display for DecompositionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sorted()
            .into_iter()
            .map(|(l, m)| if m == 1 { l.to_string() } else { format!("{m}{l}") })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl DecompositionResult {
    /// Keeps only the diagrams with at most `g` rows.
    pub fn restricted(&self, g: Genus) -> DecompositionResult {
        DecompositionResult(self.0.iter().filter(|(l, _)| l.rows().len() <= g.get() as usize).map(|(l, &m)| (l.clone(), m)).collect())
    }

    /// Summand-wise `max(0, self - other)`.
    pub fn saturating_sub(&self, other: &DecompositionResult) -> DecompositionResult {
        DecompositionResult(
            self.0.iter().filter(|(l, &m)| m > other.mult(l)).map(|(l, &m)| (l.clone(), m - other.mult(l))).collect(),
        )
    }

    pub fn plus(&self, other: &DecompositionResult) -> DecompositionResult {
        let mut out = self.clone();
        for (l, &m) in &other.0 {
            *out.0.entry(l.clone()).or_insert(0) += m;
        }
        out.0.retain(|_, m| *m > 0);
        out
    }

    /// Summand-wise maximum.
    pub fn max(&self, other: &DecompositionResult) -> DecompositionResult {
        let mut out = self.clone();
        for (l, &m) in &other.0 {
            let e = out.0.entry(l.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        out.0.retain(|_, m| *m > 0);
        out
    }
}

impl FromStr for DecompositionResult {
    type Err = Error;

    /// Parses sums such as `[42] + 2[31] + [2^3]`; `0` is the empty sum.
    fn from_str(s: &str) -> Result<DecompositionResult> {
        let mut out = DecompositionResult::default();
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for part in s.split('+') {
            let part = part.trim();
            let open = part.find('[').ok_or_else(|| Error::arg(format!("bad summand {part:?}")))?;
            let m: u64 = if open == 0 {
                1
            } else {
                part[..open].trim().parse().map_err(|_| Error::arg(format!("bad multiplicity in {part:?}")))?
            };
            let lambda: YoungDiagram = part[open..].parse()?;
            *out.0.entry(lambda).or_insert(0) += m;
        }
        out.0.retain(|_, m| *m > 0);
        Ok(out)
    }
}

/// Peels off irreducible characters, largest dominant weight first.
pub fn decompose(table: &WeightTable, g: Genus) -> Result<DecompositionResult> {
    let mut rest = table.dominant();
    let mut out = DecompositionResult::default();
    rest.retain(|_, x| *x != 0);
    while let Some((w, m)) = rest.iter().next_back().map(|(w, &m)| (w.clone(), m)) {
        if m < 0 {
            return Err(Error::NotCharacter(format!("negative multiplicity {m} at {w}")));
        }
        let lambda = YoungDiagram::from_weight(&w)?;
        for (v, &k) in dominant_multiplicities(&lambda, g)?.iter() {
            let e = rest.entry(v.clone()).or_insert(0);
            *e -= k * m;
        }
        rest.retain(|_, x| *x != 0);
        out.0.insert(lambda, m as u64);
    }
    Ok(out)
}

/// Character of a direct sum of irreducibles.
pub fn character(d: &DecompositionResult, g: Genus) -> Result<WeightTable> {
    let mut out = WeightTable::new();
    for (l, &m) in &d.0 {
        out = out.plus(&freudenthal(l, g)?.scaled(m as i64));
    }
    Ok(out)
}

/// Whether `v` has weight `λ` and is killed by every simple raising operator.
pub fn is_highest_weight_vector(v: &Tensor, lambda: &YoungDiagram, g: Genus) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::arg("the zero vector is not a highest weight vector"));
    }
    let hw = lambda.highest_weight(g)?;
    if crate::sp::weight_of(g, v) != Some(hw) {
        return Ok(false);
    }
    Ok(SpGenerator::simple_raising(g).into_iter().all(|gen| v.sp_apply(gen).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn yd(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(yd("[2 2]"), yd("[2^2]"));
        assert_eq!(yd("[22]"), yd("[2²]"));
        assert_eq!(yd("[31^3]").rows(), &[3, 1, 1, 1]);
        assert_eq!(yd("[3 1 1 1]").to_string(), "[31³]");
        assert_eq!(yd("[0]"), YoungDiagram::trivial());
        assert_eq!(yd("[2 2 1 1]").to_string(), "[2²1²]");
        assert_eq!(yd("[2^21^2]"), yd("[2 2 1 1]"));
        assert_eq!(yd("[32^21]").rows(), &[3, 2, 2, 1]);
        assert!("[1 2]".parse::<YoungDiagram>().is_err());
        assert!("2 2".parse::<YoungDiagram>().is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dim(&yd("[0]"), g(3)).unwrap(), BigInt::from(1));
        assert_eq!(weyl_dim(&yd("[1]"), g(5)).unwrap(), BigInt::from(10));
        assert_eq!(weyl_dim(&yd("[2 2]"), g(4)).unwrap(), BigInt::from(308));
        assert_eq!(weyl_dim(&yd("[1 1 1]"), g(3)).unwrap(), BigInt::from(14));
        assert!(weyl_dim(&yd("[1 1 1]"), g(2)).is_err());
    }

    #[test]
    fn freudenthal_small_cases() {
        let t = freudenthal(&yd("[1]"), g(3)).unwrap();
        assert_eq!(t.dim(), 6);
        assert!(t.iter().all(|(_, &m)| m == 1));
        let t = freudenthal(&yd("[1 1]"), g(4)).unwrap();
        assert_eq!(t.mult(&Weight::zero(g(4))), 3);
        assert_eq!(t.dim(), 27);
        let t = freudenthal(&yd("[0]"), g(2)).unwrap();
        assert_eq!(t.0.len(), 1);
    }

    #[test]
    fn freudenthal_matches_weyl_and_round_trips() {
        for n in 1..=4 {
            for size in 0..=4u32 {
                for lam in partitions_up_to(size as i64, n as usize) {
                    if lam.iter().sum::<i64>() != size as i64 {
                        continue;
                    }
                    let l = YoungDiagram::new(lam.iter().map(|&x| x as u32).collect()).unwrap();
                    let t = freudenthal(&l, g(n)).unwrap();
                    assert_eq!(BigInt::from(t.dim()), weyl_dim(&l, g(n)).unwrap(), "{l} g={n}");
                    assert!(t.is_weyl_symmetric());
                    let d = decompose(&t, g(n)).unwrap();
                    assert_eq!(d.0, BTreeMap::from([(l.clone(), 1)]), "{l} g={n}");
                }
            }
        }
    }

    #[test]
    fn wedge_square_of_h() {
        let h = freudenthal(&yd("[1]"), g(2)).unwrap();
        let d = decompose(&h.wedge2(), g(2)).unwrap();
        assert_eq!(d.to_string(), "[1²] + [0]");
        assert!(decompose(&h.scaled(-1), g(2)).is_err());
    }
}
