//! One line per acceptance criterion; exits nonzero if any line fails.
//! Runs without the libtest harness so the lines always print.

use std::collections::BTreeMap;

use johnson_algebra::checks::{multiplicity_ledger, run_check, Scope, Status};
use johnson_algebra::lie::{lyndon_basis, witt_dimension};
use johnson_algebra::rep::{decompose, freudenthal, weyl_dim, YoungDiagram};
use johnson_algebra::spaces::DegreeTwoSpaces;
use johnson_algebra::tree::{Planar, TreeElement};
use johnson_algebra::{Genus, Kind, Letter, LieElement};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn genus(n: u32) -> Genus {
    Genus::new(n).unwrap()
}

/// Runs the named checks at each genus and requires every one to pass.
fn checks_pass(ids: &[&str], genera: &[u32]) -> Outcome {
    let mut ran = 0;
    for &n in genera {
        for id in ids {
            let r = run_check(id, genus(n)).map_err(|e| e.to_string())?;
            if r.status != Status::Pass {
                return Err(format!("{id} at g={n}: {}; expected {}; computed {}", r.status, r.expected, r.computed));
            }
            ran += 1;
        }
    }
    Ok(format!("{ran} check runs"))
}

fn random_letter(rng: &mut ChaCha8Rng, g: u32) -> Letter {
    let kind = if rng.gen_bool(0.5) { Kind::A } else { Kind::B };
    Letter::new(kind, rng.gen_range(1..=g))
}

fn random_planar(rng: &mut ChaCha8Rng, g: u32, leaves: usize) -> Planar {
    if leaves == 1 {
        return Planar::Leaf(random_letter(rng, g));
    }
    let at = rng.gen_range(1..leaves);
    Planar::node(random_planar(rng, g, at), random_planar(rng, g, leaves - at))
}

fn random_tree(rng: &mut ChaCha8Rng, g: u32, degree: usize) -> TreeElement {
    let root = random_letter(rng, g);
    TreeElement::rooted(root, random_planar(rng, g, degree + 1))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let g = 2 + i % 3;
        let t = random_tree(&mut rng, g, 1 + (i as usize) % 4);
        if !t.eta().is_in_h() {
            return Err(format!("eta({t}) is not in h at g={g}"));
        }
    }
    let g3 = genus(3);
    for _ in 0..20 {
        let dx = rng.gen_range(1..=3);
        let dy = rng.gen_range(1..=2);
        let (x, y) = (random_tree(&mut rng, 3, dx), random_tree(&mut rng, 3, dy));
        let derived = x.eta().derivation_bracket(&y.eta(), g3).map_err(|e| e.to_string())?;
        if derived != x.weld(&y).eta() {
            return Err(format!("weld and derivation bracket differ on {x}, {y}"));
        }
    }
    for _ in 0..20 {
        let root = random_letter(&mut rng, 3);
        let [x, y, z] = [1, 2, 1].map(|n| random_planar(&mut rng, 3, n));
        let n = Planar::node;
        if let Planar::Node(l, r) = n(x.clone(), y.clone()) {
            let a = TreeElement::rooted(root, Planar::Node(l.clone(), r.clone()));
            let b = TreeElement::rooted(root, Planar::Node(r, l));
            if !(&a.eta_tensor() + &b.eta_tensor()).is_zero() {
                return Err("AS relation fails under eta".into());
            }
        }
        let ihx = &(&TreeElement::rooted(root, n(x.clone(), n(y.clone(), z.clone())))
            + &TreeElement::rooted(root, n(y.clone(), n(z.clone(), x.clone()))))
            + &TreeElement::rooted(root, n(z, n(x, y)));
        if !ihx.eta_tensor().is_zero() {
            return Err("IHX relation fails under eta".into());
        }
    }
    for _ in 0..20 {
        let [x, y, z]: [LieElement; 3] = [3, 2, 2].map(|n| random_planar(&mut rng, 2, n).to_lie());
        let s = &(&x.bracket(&y.bracket(&z)) + &y.bracket(&z.bracket(&x))) + &z.bracket(&x.bracket(&y));
        if !s.is_zero() {
            return Err("Jacobi fails".into());
        }
    }
    for n in 1..=2 {
        for k in 1..=5 {
            if lyndon_basis(k, genus(n)).len() != witt_dimension(k, genus(n)) {
                return Err(format!("Witt dimension mismatch at k={k} g={n}"));
            }
        }
    }
    for n in 1..=4u32 {
        let g = genus(n);
        for rows in [vec![], vec![1], vec![2], vec![1, 1], vec![3], vec![2, 1], vec![1, 1, 1], vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]] {
            if rows.len() > n as usize {
                continue;
            }
            let lambda = YoungDiagram::new(rows).unwrap();
            let table = freudenthal(&lambda, g).map_err(|e| e.to_string())?;
            let back = decompose(&table, g).map_err(|e| e.to_string())?;
            if back.0 != BTreeMap::from([(lambda.clone(), 1)]) || BigInt::from(table.dim()) != weyl_dim(&lambda, g).unwrap() {
                return Err(format!("Freudenthal round trip fails for {lambda} at g={n}"));
            }
        }
    }
    Ok("trees, brackets, relations, Witt dimensions, round trips".into())
}

fn tables() -> Outcome {
    let summary = checks_pass(&["decomposition-tables"], &[2, 3, 4])?;
    let g = genus(4);
    let s = DegreeTwoSpaces::get(g).map_err(|e| e.to_string())?;
    let wedge = decompose(&s.h.wedge2(), g).map_err(|e| e.to_string())?;
    let total = wedge.dim(g);
    if total != BigInt::from(56280) || BigInt::from(s.h.dim()) != BigInt::from(336) {
        return Err(format!("dim ∧²h(2) at g=4 is {total}"));
    }
    Ok(format!("{summary}; Σ weyl_dim = {total}"))
}

fn ledgers() -> Outcome {
    let mut rows = 0;
    for n in 2..=5 {
        for scope in [Scope::Boundary, Scope::Point, Scope::Closed] {
            let l = multiplicity_ledger(genus(n), scope).map_err(|e| e.to_string())?;
            if !l.closes() || !l.kernel_matches() {
                return Err(format!("{scope} ledger at g={n}: kernel {} vs stated {}", l.kernel(), l.stated_kernel));
            }
            rows += l.rows.len();
        }
    }
    checks_pass(&["ledger-boundary", "ledger-point", "ledger-closed"], &[2, 3, 4, 5])?;
    Ok(format!("12 ledgers, {rows} rows close"))
}

const BRACKETS: &[&str] = &["bracket-[42]", "bracket-[31^3]", "bracket-[2^3]", "bracket-[31]", "bracket-[2]", "bracket-[21^2]"];
const CYCLES: &[&str] = &[
    "cycle-source",
    "cycle-[431]",
    "cycle-[32^21]",
    "cycle-[321]",
    "cycle-[21^2]",
    "cycle-[3^2]",
    "cycle-[2^21^2]",
    "cycle-[2^2]",
    "cycle-[1^2]",
];

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("sample session gives -576 at g=4", Box::new(|| checks_pass(&["sample-session"], &[4]))),
        ("degree-two detector table at g=3,4,5", Box::new(|| checks_pass(&["detector-values"], &[3, 4, 5]))),
        ("[2²]-projection is killed by both detectors", Box::new(|| checks_pass(&["closed-projection"], &[3, 4, 5]))),
        ("eta-expansion of the symplectic sum for h=1,2 at g=4", Box::new(|| checks_pass(&["symplectic-sum-eta"], &[4]))),
        ("bracket image cases at g=4,5", Box::new(|| checks_pass(BRACKETS, &[4, 5]))),
        ("abelian cycle cases at g=4", Box::new(|| checks_pass(CYCLES, &[4]))),
        ("closed χ-table at g=4,5", Box::new(|| checks_pass(&["closed-chi-table"], &[4, 5]))),
        ("closed reductions at g=4", Box::new(|| checks_pass(&["closed-reductions"], &[4]))),
        ("decomposition tables at g=2,3,4", Box::new(tables)),
        ("multiplicity ledgers close", Box::new(ledgers)),
        ("property suites", Box::new(property_suites)),
        (
            "highest weight certification",
            Box::new(|| {
                checks_pass(&["hwv-degree-two"], &[2, 3, 4, 5])?;
                checks_pass(&[BRACKETS, CYCLES, &["closed-chi-table", "closed-reductions"]].concat(), &[4])
            }),
        ),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} pass: {name} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL: {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
