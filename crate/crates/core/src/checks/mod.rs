//! Named verification scenarios and the multiplicity bookkeeping built on them.
//!
//! Each check evaluates DSL expressions at a concrete genus and compares the
//! results with stored expected values exactly. Expected values may mention
//! `g`, so one registry entry serves every genus.

mod cases;
mod ledger;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::dsl::{self, Value};
use crate::error::{Error, Result};
use crate::letter::Genus;
use crate::linalg::{rank, SparseVec};
use crate::rational::{fmt_q, Q};
use crate::rep::{is_highest_weight_vector, DecompositionResult, YoungDiagram};

pub use ledger::{multiplicity_ledger, LedgerRow, MultiplicityLedger, Scope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-genus-too-small")]
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped-genus-too-small",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub genus: u32,
    #[serde(rename = "paper_location")]
    pub location: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub elapsed_ms: u64,
    pub notes: String,
    /// Summands whose presence the check certifies, when it passes.
    #[serde(skip)]
    pub established: DecompositionResult,
}

pub(crate) enum Body {
    Plain(fn(&mut Comparison) -> Result<()>),
    Ledger(Scope),
}

pub struct Check {
    pub id: &'static str,
    /// Where the checked statement sits, in words.
    pub location: &'static str,
    pub min_genus: u32,
    pub(crate) body: Body,
}

impl Check {
    pub fn is_ledger(&self) -> bool {
        matches!(self.body, Body::Ledger(_))
    }
}

/// All checks in their fixed order.
pub fn registry() -> &'static [Check] {
    cases::REGISTRY
}

pub fn find(id: &str) -> Option<&'static Check> {
    registry().iter().find(|c| c.id == id)
}

/// Runs one check at genus `g`. Unknown ids are an error; everything else,
/// including evaluation errors inside the check, is reported as data.
pub fn run_check(id: &str, g: Genus) -> Result<CheckResult> {
    let check = find(id).ok_or_else(|| Error::arg(format!("unknown check id {id}")))?;
    Ok(run(check, g))
}

/// Every check applicable at `g`, in registry order.
pub fn run_all(g: Genus) -> Vec<CheckResult> {
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    run_checks(&ids, g).expect("registry ids are known")
}

/// Runs the named checks, plain ones concurrently and ledgers afterwards,
/// and returns the results in the order given.
pub fn run_checks(ids: &[&str], g: Genus) -> Result<Vec<CheckResult>> {
    let checks: Vec<&'static Check> = ids
        .iter()
        .map(|id| find(id).ok_or_else(|| Error::arg(format!("unknown check id {id}"))))
        .collect::<Result<_>>()?;
    let pool = thread_pool();
    let plain: Vec<CheckResult> = pool.install(|| {
        use rayon::prelude::*;
        checks.par_iter().filter(|c| !c.is_ledger()).map(|c| run(c, g)).collect()
    });
    let mut by_id: HashMap<&str, CheckResult> = HashMap::new();
    for r in plain {
        let id = find(&r.id).unwrap().id;
        by_id.insert(id, r);
    }
    for c in checks.iter().filter(|c| c.is_ledger()) {
        by_id.insert(c.id, pool.install(|| run(c, g)));
    }
    Ok(checks.iter().map(|c| by_id[c.id].clone()).collect())
}

fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var("ENGINE_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            b = b.num_threads(n);
        }
    }
    b.build().expect("thread pool")
}

fn skipped(check: &Check, g: Genus) -> CheckResult {
    CheckResult {
        id: check.id.to_string(),
        genus: g.get(),
        location: check.location.to_string(),
        status: Status::Skipped,
        expected: String::new(),
        computed: String::new(),
        elapsed_ms: 0,
        notes: format!("needs genus at least {}", check.min_genus),
        established: DecompositionResult::default(),
    }
}

fn run(check: &Check, g: Genus) -> CheckResult {
    if g.get() < check.min_genus {
        return skipped(check, g);
    }
    match check.body {
        Body::Plain(f) => run_plain_cached(check, f, g),
        Body::Ledger(scope) => {
            let start = Instant::now();
            let mut r = ledger::ledger_check(g, scope);
            r.id = check.id.to_string();
            r.location = check.location.to_string();
            r.elapsed_ms = start.elapsed().as_millis() as u64;
            r
        }
    }
}

// Ledgers read the certified summands of other checks; caching keeps a full
// run from computing those twice.
fn run_plain_cached(check: &Check, f: fn(&mut Comparison) -> Result<()>, g: Genus) -> CheckResult {
    static CACHE: OnceLock<Mutex<HashMap<(&'static str, u32), CheckResult>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (check.id, g.get());
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let start = Instant::now();
    let mut cmp = Comparison::new(g);
    let outcome = f(&mut cmp);
    let mut r = cmp.finish(outcome);
    r.id = check.id.to_string();
    r.location = check.location.to_string();
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    cache.lock().unwrap().insert(key, r.clone());
    r
}

/// Result of a plain check run through the cache, for ledgers.
pub(crate) fn feed(id: &str, g: Genus) -> CheckResult {
    let check = find(id).expect("feeding check is registered");
    run(check, g)
}

/// Accumulates the comparisons made by one check.
pub struct Comparison {
    g: Genus,
    vars: HashMap<String, Value>,
    expected: Vec<String>,
    computed: Vec<String>,
    notes: Vec<String>,
    ok: bool,
    established: BTreeMap<YoungDiagram, u64>,
}

/// One column of a detector table: a bound name, its defining expression and
/// the least genus at which it makes sense.
pub(crate) struct Column {
    pub name: &'static str,
    pub src: &'static str,
    pub min_genus: u32,
}

/// A table of detector values: `entries[row][column]` is the scalar with
/// `row(column) = entry · basis`.
pub(crate) struct Table {
    pub diagram: &'static str,
    pub columns: &'static [Column],
    pub rows: &'static [&'static str],
    pub entries: &'static [&'static [&'static str]],
    pub basis: &'static str,
}

impl Comparison {
    pub fn new(g: Genus) -> Comparison {
        Comparison {
            g,
            vars: HashMap::new(),
            expected: Vec::new(),
            computed: Vec::new(),
            notes: Vec::new(),
            ok: true,
            established: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> Genus {
        self.g
    }

    pub fn eval(&self, src: &str) -> Result<Value> {
        dsl::evaluate_with(src, self.g, &self.vars)
    }

    pub fn bind(&mut self, name: &str, src: &str) -> Result<Value> {
        let v = self.eval(src)?;
        self.vars.insert(name.to_string(), v.clone());
        Ok(v)
    }

    pub fn bind_value(&mut self, name: &str, v: Value) {
        self.vars.insert(name.to_string(), v);
    }

    /// Compares two printed forms.
    pub fn expect_eq(&mut self, label: &str, expected: impl ToString, computed: impl ToString) {
        let (e, c) = (expected.to_string(), computed.to_string());
        if e != c {
            self.ok = false;
        }
        self.expected.push(format!("{label}: {e}"));
        self.computed.push(format!("{label}: {c}"));
    }

    /// Evaluates `src` and compares it with the value of `expected_src`.
    pub fn expect_value(&mut self, label: &str, src: &str, expected_src: &str) -> Result<Value> {
        let got = self.eval(src)?;
        let want = self.eval(expected_src)?;
        let same = got.same_as(&want) || (got.is_zero() && want.is_zero());
        let shown_want = if same { got.to_string() } else { want.to_string() };
        if !same {
            self.ok = false;
        }
        self.expected.push(format!("{label}: {shown_want}"));
        self.computed.push(format!("{label}: {got}"));
        Ok(got)
    }

    /// Records a condition that must hold but is not part of the printed
    /// comparison.
    pub fn require(&mut self, cond: bool, what: &str) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("failed: {what}"));
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn establish(&mut self, diagram: &str, mult: u64) {
        if mult > 0 {
            let d: YoungDiagram = diagram.parse().expect("registry diagram");
            *self.established.entry(d).or_default() += mult;
        }
    }

    /// Certifies that the value of `src` is a highest weight vector of weight `diagram`.
    pub fn expect_hwv(&mut self, label: &str, src: &str, diagram: &str) -> Result<()> {
        let v = self.eval(src)?;
        self.expect_hwv_value(label, &v, diagram)
    }

    pub fn expect_hwv_value(&mut self, label: &str, v: &Value, diagram: &str) -> Result<()> {
        let d: YoungDiagram = diagram.parse()?;
        let hw = is_highest_weight_vector(&v.to_tensor(), &d, self.g)?;
        self.expect_eq(&format!("{label} highest weight {d}"), true, hw);
        Ok(())
    }

    /// A single detector output: compares it, certifies it as a highest weight
    /// vector and records one copy of `diagram`.
    pub fn detector(&mut self, label: &str, src: &str, expected_src: &str, diagram: &str) -> Result<()> {
        let before = self.ok;
        let v = self.expect_value(label, src, expected_src)?;
        if v.is_zero() {
            self.require(false, &format!("{label} is nonzero"));
            return Ok(());
        }
        self.expect_hwv_value(label, &v, diagram)?;
        if before && self.ok {
            self.establish(diagram, 1);
        }
        Ok(())
    }

    /// Checks that `word` (with `{}` standing for the argument) maps `source`
    /// to a nonzero multiple of `target`, and binds `name` to `target`.
    pub fn chain(&mut self, name: &str, word: &str, source: &str, target: &str) -> Result<Value> {
        let image = self.eval(&word.replace("{}", &format!("({source})")))?;
        let shown = self.eval(target)?;
        let applied = word.replace("{}", source);
        match ratio(&image, &shown) {
            Some(c) if !c.is_zero() => {
                self.note(format!("{name}: {applied} = {} × target", fmt_q(&c)))
            }
            _ => self.require(false, &format!("{name}: {applied} is a nonzero multiple of {target}")),
        }
        self.vars.insert(name.to_string(), shown.clone());
        Ok(shown)
    }

    /// Notes whether `word` applied to `source` gives the intermediate
    /// `target`; intermediates are informative only.
    pub fn intermediate(&mut self, word: &str, source: &str, target: &str) -> Result<()> {
        let image = self.eval(&word.replace("{}", &format!("({source})")))?;
        let shown = self.eval(target)?;
        let msg = match ratio(&image, &shown) {
            Some(c) if c == Q::from_integer(1.into()) => format!("intermediate {target} matches"),
            Some(c) => format!("intermediate {target} matches up to the factor {}", fmt_q(&c)),
            None => format!("intermediate {target} does not match; the computed image has {} tensor terms", image.to_tensor().len()),
        };
        self.note(msg);
        Ok(())
    }

    /// Evaluates a detector table: every entry, the rank of the matrix of
    /// coefficients and the highest weight property of the basis vector.
    pub(crate) fn table(&mut self, t: &Table) -> Result<()> {
        let before = self.ok;
        let g = self.g.get();
        let cols: Vec<(usize, &Column)> = t.columns.iter().enumerate().filter(|(_, c)| c.min_genus <= g).collect();
        for (_, c) in &cols {
            if !self.vars.contains_key(c.name) {
                self.bind(c.name, c.src)?;
            }
        }
        for (_, c) in t.columns.iter().enumerate().filter(|(_, c)| c.min_genus > g) {
            self.note(format!("column {} needs genus at least {}", c.name, c.min_genus));
        }
        let basis = self.eval(t.basis)?;
        let mut vectors: Vec<SparseVec<usize>> = vec![SparseVec::new(); cols.len()];
        for (r, row) in t.rows.iter().enumerate() {
            for (k, (j, c)) in cols.iter().enumerate() {
                let src = row.replace("{}", c.name);
                let want = format!("({}) ({})", t.entries[r][*j], t.basis);
                let got = self.expect_value(&src, &src, &want)?;
                match ratio(&got, &basis) {
                    Some(x) if !x.is_zero() => {
                        vectors[k].insert(r, x);
                    }
                    Some(_) => {}
                    None => self.require(false, &format!("{src} is a multiple of {}", t.basis)),
                }
            }
        }
        let rk = rank(vectors);
        self.expect_eq(&format!("rank of the {} table", t.diagram), cols.len(), rk);
        self.expect_hwv_value(t.basis, &basis, t.diagram)?;
        if before && self.ok {
            self.establish(t.diagram, rk as u64);
        }
        Ok(())
    }

    fn finish(self, outcome: Result<()>) -> CheckResult {
        let mut notes = self.notes;
        let mut ok = self.ok;
        if let Err(e) = outcome {
            ok = false;
            notes.push(format!("error: {e}"));
        }
        CheckResult {
            id: String::new(),
            genus: self.g.get(),
            location: String::new(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: self.expected.join("; "),
            computed: self.computed.join("; "),
            elapsed_ms: 0,
            notes: notes.join("; "),
            established: if ok { DecompositionResult(self.established) } else { DecompositionResult::default() },
        }
    }
}

/// `c` with `a = c · b`; zero `a` gives `0`.
pub(crate) fn ratio(a: &Value, b: &Value) -> Option<Q> {
    if a.is_zero() {
        return Some(Q::zero());
    }
    match (a, b) {
        (Value::Wedge(x), Value::Wedge(y)) => x.ratio_to(y),
        _ => a.to_tensor().ratio_to(&b.to_tensor()),
    }
}
