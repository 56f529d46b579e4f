use std::collections::BTreeSet;

use serde::Serialize;

use super::{feed, CheckResult, Status};
use crate::error::{Error, Result};
use crate::graded::{boundary_h_character, closed_h_character};
use crate::letter::Genus;
use crate::rep::{decompose, DecompositionResult, YoungDiagram};
use crate::spaces::DegreeTwoSpaces;

/// Which surface the bracket image is taken for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Boundary,
    Point,
    Closed,
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scope::Boundary => "boundary",
            Scope::Point => "point",
            Scope::Closed => "closed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerRow {
    pub diagram: YoungDiagram,
    pub total: u64,
    pub kernel: u64,
    pub surviving: u64,
}

impl LedgerRow {
    pub fn closes(&self) -> bool {
        self.kernel + self.surviving == self.total
    }
}

/// Per-diagram bookkeeping for the exterior square of `h(2)`: the summands
/// hit by the bracket (kernel side) and those certified by abelian cycles
/// (surviving side).
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityLedger {
    pub genus: u32,
    pub scope: Scope,
    pub rows: Vec<LedgerRow>,
    pub stated_kernel: DecompositionResult,
}

impl MultiplicityLedger {
    fn column(&self, f: impl Fn(&LedgerRow) -> u64) -> DecompositionResult {
        DecompositionResult(self.rows.iter().map(|r| (r.diagram.clone(), f(r))).filter(|(_, m)| *m > 0).collect())
    }

    pub fn kernel(&self) -> DecompositionResult {
        self.column(|r| r.kernel)
    }

    pub fn surviving(&self) -> DecompositionResult {
        self.column(|r| r.surviving)
    }

    pub fn total(&self) -> DecompositionResult {
        self.column(|r| r.total)
    }

    pub fn closes(&self) -> bool {
        self.rows.iter().all(LedgerRow::closes)
    }

    pub fn kernel_matches(&self) -> bool {
        self.kernel() == self.stated_kernel
    }
}

const KERNEL_FEEDS: &[&str] =
    &["bracket-[42]", "bracket-[31^3]", "bracket-[2^3]", "bracket-[31]", "bracket-[2]", "bracket-[21^2]"];
const SURVIVING_FEEDS: &[&str] = &[
    "cycle-[431]",
    "cycle-[32^21]",
    "cycle-[321]",
    "cycle-[21^2]",
    "cycle-[3^2]",
    "cycle-[2^21^2]",
    "cycle-[2^2]",
    "cycle-[1^2]",
];

fn stated_kernel(g: Genus, scope: Scope) -> &'static str {
    match (g.get(), scope) {
        (2, Scope::Closed) => "[42]+[2]",
        (2, _) => "[42]+[31]+2[2]",
        (3, Scope::Closed) => "[42]+[31]+[2^3]+[2]",
        (3, _) => "[42]+2[31]+[2^3]+[21^2]+2[2]",
        (_, Scope::Closed) => "[42]+[31^3]+[31]+[2^3]+[2]",
        _ => "[42]+[31^3]+2[31]+[2^3]+[21^2]+2[2]",
    }
}

fn established(ids: &[&str], g: Genus) -> DecompositionResult {
    ids.iter().fold(DecompositionResult::default(), |acc, id| acc.plus(&feed(id, g).established))
}

/// Builds the ledger for `g ≥ 2` from the certified summands of the
/// bracket and abelian-cycle checks.
///
/// The point and closed columns are derived from the boundary ones: summands
/// in the kernel of the restriction `∧²h(2) → ∧²h_*(2)` (or `∧²h_g(2)`) leave
/// the surviving side, summands of `Ker(h(4) → h_g(4))` leave the kernel side,
/// and the point or closed checks add back what they certify.
pub fn multiplicity_ledger(g: Genus, scope: Scope) -> Result<MultiplicityLedger> {
    if g.get() < 2 {
        return Err(Error::arg(format!("ledgers need genus at least 2, not {}", g.get())));
    }
    let spaces = DegreeTwoSpaces::get(g)?;
    let kernel = established(KERNEL_FEEDS, g);
    let surviving = established(SURVIVING_FEEDS, g);
    let (total, kernel, surviving) = match scope {
        Scope::Boundary => (decompose(&spaces.h.wedge2(), g)?, kernel, surviving),
        Scope::Point => {
            let lost = decompose(&spaces.h.wedge2().minus(&spaces.hstar.wedge2()), g)?;
            let two: DecompositionResult = "[2]".parse()?;
            let kernel = kernel.saturating_sub(&two).plus(&feed("pointed-bracket-[2]", g).established);
            (decompose(&spaces.hstar.wedge2(), g)?, kernel, surviving.saturating_sub(&lost))
        }
        Scope::Closed => {
            let lost = decompose(&spaces.h.wedge2().minus(&spaces.hg.wedge2()), g)?;
            let ker4 = decompose(&boundary_h_character(4, g)?.minus(&closed_h_character(4, g)?), g)?;
            let kernel = kernel.saturating_sub(&ker4).plus(&feed("closed-chi-table", g).established);
            let surviving = surviving.saturating_sub(&lost).max(&feed("closed-reductions", g).established);
            (decompose(&spaces.hg.wedge2(), g)?, kernel, surviving)
        }
    };
    let diagrams: BTreeSet<YoungDiagram> =
        total.0.keys().chain(kernel.0.keys()).chain(surviving.0.keys()).cloned().collect();
    let mut rows: Vec<LedgerRow> = diagrams
        .into_iter()
        .map(|d| LedgerRow { total: total.mult(&d), kernel: kernel.mult(&d), surviving: surviving.mult(&d), diagram: d })
        .collect();
    rows.sort_by(|a, b| b.diagram.rows().cmp(a.diagram.rows()));
    Ok(MultiplicityLedger { genus: g.get(), scope, rows, stated_kernel: stated_kernel(g, scope).parse()? })
}

pub(crate) fn ledger_check(g: Genus, scope: Scope) -> CheckResult {
    let mut r = CheckResult {
        id: String::new(),
        genus: g.get(),
        location: String::new(),
        status: Status::Fail,
        expected: String::new(),
        computed: String::new(),
        elapsed_ms: 0,
        notes: String::new(),
        established: DecompositionResult::default(),
    };
    let ledger = match multiplicity_ledger(g, scope) {
        Ok(l) => l,
        Err(e) => {
            r.notes = format!("error: {e}");
            return r;
        }
    };
    let closes = ledger.closes();
    r.expected = format!("kernel: {}; kernel + surviving = total: true", ledger.stated_kernel);
    r.computed = format!("kernel: {}; kernel + surviving = total: {closes}", ledger.kernel());
    let rows: Vec<String> = ledger
        .rows
        .iter()
        .map(|row| {
            let mark = if row.closes() { "" } else { " (mismatch)" };
            format!("{} total {} = kernel {} + surviving {}{mark}", row.diagram, row.total, row.kernel, row.surviving)
        })
        .collect();
    r.notes = rows.join("; ");
    if closes && ledger.kernel_matches() {
        r.status = Status::Pass;
    }
    r
}
