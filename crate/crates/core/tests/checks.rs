use johnson_algebra::checks::{multiplicity_ledger, registry, run_all, run_check, run_checks, Scope, Status};
use johnson_algebra::rep::DecompositionResult;
use johnson_algebra::Genus;

fn genus(n: u32) -> Genus {
    Genus::new(n).unwrap()
}

fn dr(s: &str) -> DecompositionResult {
    s.parse().unwrap()
}

#[test]
fn every_applicable_check_passes() {
    for n in 2..=5 {
        let results = run_all(genus(n));
        assert_eq!(results.len(), registry().len());
        for (r, c) in results.iter().zip(registry()) {
            assert_eq!(r.id, c.id);
            let want = if n >= c.min_genus { Status::Pass } else { Status::Skipped };
            assert_eq!(r.status, want, "{} at g={n}: expected {}; computed {}; {}", r.id, r.expected, r.computed, r.notes);
        }
    }
}

#[test]
fn small_genus_skips_instead_of_failing() {
    let r = run_check("bracket-[31^3]", genus(2)).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert_eq!(r.genus, 2);
    let r = run_check("cycle-[32^21]", genus(3)).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(run_check("no-such-check", genus(3)).is_err());
}

#[test]
fn results_come_back_in_requested_order() {
    let ids = ["ledger-closed", "bracket-[2]", "detector-values"];
    let results = run_checks(&ids, genus(3)).unwrap();
    let got: Vec<&str> = results.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(got, ids);
}

#[test]
fn reruns_are_identical() {
    let a = run_check("bracket-[31]", genus(4)).unwrap();
    let b = run_check("bracket-[31]", genus(4)).unwrap();
    assert_eq!((a.expected, a.computed, a.notes), (b.expected, b.computed, b.notes));
}

#[test]
fn boundary_ledger_at_genus_four() {
    let l = multiplicity_ledger(genus(4), Scope::Boundary).unwrap();
    assert_eq!(l.kernel(), dr("[42]+[31^3]+2[31]+[2^3]+[21^2]+2[2]"));
    assert_eq!(l.surviving(), dr("[431]+[3^2]+[32^21]+2[321]+[2^21^2]+2[2^2]+2[21^2]+2[1^2]"));
    assert!(l.closes());
    assert!(l.kernel_matches());
}

#[test]
fn point_ledger_keeps_both_copies_of_two() {
    let l = multiplicity_ledger(genus(4), Scope::Point).unwrap();
    assert_eq!(l.kernel().mult(&"[2]".parse().unwrap()), 2);
    assert_eq!(l.surviving().mult(&"[2 2]".parse().unwrap()), 1);
    assert!(l.closes());
}

#[test]
fn closed_ledgers() {
    let l = multiplicity_ledger(genus(4), Scope::Closed).unwrap();
    assert_eq!(l.kernel(), dr("[42]+[31^3]+[31]+[2^3]+[2]"));
    assert_eq!(l.surviving(), dr("[431]+[32^21]+[321]+[21^2]"));
    assert!(l.closes());
    let l = multiplicity_ledger(genus(2), Scope::Closed).unwrap();
    assert_eq!(l.kernel(), dr("[42]+[2]"));
    assert!(l.surviving().0.is_empty());
    assert!(multiplicity_ledger(genus(1), Scope::Closed).is_err());
}
