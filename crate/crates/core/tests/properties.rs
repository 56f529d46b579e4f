use std::collections::BTreeMap;

use johnson_algebra::lie::{lyndon_basis, witt_dimension};
use johnson_algebra::rep::{decompose, freudenthal, weyl_dim, YoungDiagram};
use johnson_algebra::tree::{Planar, TreeElement};
use johnson_algebra::{Genus, Kind, Letter, LieElement};
use num_bigint::BigInt;
use proptest::prelude::*;

fn genus(n: u32) -> Genus {
    Genus::new(n).unwrap()
}

fn letter(g: u32, code: u32) -> Letter {
    let code = code % (2 * g);
    let kind = if code.is_multiple_of(2) { Kind::A } else { Kind::B };
    Letter::new(kind, code / 2 + 1)
}

/// Builds a planar tree over `labels`, splitting according to `cuts`.
fn planar(labels: &[Letter], cuts: &mut impl Iterator<Item = u32>) -> Planar {
    if labels.len() == 1 {
        return Planar::Leaf(labels[0]);
    }
    let at = 1 + cuts.next().unwrap_or(0) as usize % (labels.len() - 1);
    let left = planar(&labels[..at], cuts);
    let right = planar(&labels[at..], cuts);
    Planar::node(left, right)
}

#[derive(Debug, Clone)]
struct RandomTree {
    g: u32,
    root: Letter,
    body: Planar,
}

impl RandomTree {
    fn element(&self) -> TreeElement {
        TreeElement::rooted(self.root, self.body.clone())
    }
}

fn tree_strategy(genera: std::ops::RangeInclusive<u32>, degrees: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RandomTree> {
    (genera, degrees).prop_flat_map(|(g, k)| {
        (prop::collection::vec(any::<u32>(), k + 2), prop::collection::vec(any::<u32>(), k + 2)).prop_map(move |(codes, cuts)| {
            let labels: Vec<Letter> = codes.iter().map(|&c| letter(g, c)).collect();
            let body = planar(&labels[1..], &mut cuts.into_iter());
            RandomTree { g, root: labels[0], body }
        })
    })
}

fn lie_strategy(g: u32, max_degree: usize) -> impl Strategy<Value = LieElement> {
    (1..=max_degree).prop_flat_map(move |k| {
        (prop::collection::vec(any::<u32>(), k), prop::collection::vec(any::<u32>(), k)).prop_map(move |(codes, cuts)| {
            let labels: Vec<Letter> = codes.iter().map(|&c| letter(g, c)).collect();
            planar(&labels, &mut cuts.into_iter()).to_lie()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn eta_lands_in_h(t in tree_strategy(2..=4, 1..=4)) {
        let x = t.element();
        prop_assert!(x.eta().is_in_h(), "{x} at g={}", t.g);
    }

    #[test]
    fn antisymmetry_negates_eta(t in tree_strategy(2..=3, 1..=4)) {
        if let Planar::Node(l, r) = &t.body {
            let swapped = TreeElement::rooted(t.root, Planar::Node(r.clone(), l.clone()));
            prop_assert!((&t.element().eta_tensor() + &swapped.eta_tensor()).is_zero());
        }
    }

    #[test]
    fn ihx_vanishes(
        root in 0u32..8,
        parts in prop::collection::vec(tree_strategy(3..=3, 0..=1), 3),
    ) {
        let root = letter(3, root);
        let [x, y, z] = [0, 1, 2].map(|i| parts[i].body.clone());
        let n = Planar::node;
        let sum = &(&TreeElement::rooted(root, n(x.clone(), n(y.clone(), z.clone())))
            + &TreeElement::rooted(root, n(y.clone(), n(z.clone(), x.clone()))))
            + &TreeElement::rooted(root, n(z, n(x, y)));
        prop_assert!(sum.eta_tensor().is_zero());
    }

    #[test]
    fn jacobi(x in lie_strategy(2, 3), y in lie_strategy(2, 3), z in lie_strategy(2, 2)) {
        let s = &(&x.bracket(&y.bracket(&z)) + &y.bracket(&z.bracket(&x))) + &z.bracket(&x.bracket(&y));
        prop_assert!(s.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn weld_agrees_with_derivation_bracket(
        x in tree_strategy(3..=3, 1..=3),
        y in tree_strategy(3..=3, 1..=2),
    ) {
        let g = genus(3);
        let (x, y) = (x.element(), y.element());
        let derived = x.eta().derivation_bracket(&y.eta(), g).unwrap();
        prop_assert_eq!(derived, x.weld(&y).eta());
    }
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
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

#[test]
fn witt_dimensions_up_to_degree_five() {
    for n in 1..=4u32 {
        let rank = 2 * n as i64;
        for k in 1..=5usize {
            let necklace: i64 = (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * rank.pow((k / d) as u32)).sum::<i64>() / k as i64;
            assert_eq!(witt_dimension(k, genus(n)) as i64, necklace, "k={k} g={n}");
            if k <= 4 || n <= 2 {
                assert_eq!(lyndon_basis(k, genus(n)).len() as i64, necklace, "k={k} g={n}");
            }
        }
    }
}

fn partitions(n: u32, max_part: u32, max_len: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    if max_len == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max_part)).rev() {
        for mut rest in partitions(n - first, first, max_len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn freudenthal_round_trips_through_decompose() {
    for n in 1..=4u32 {
        let g = genus(n);
        for size in 0..=4 {
            for rows in partitions(size, size, n as usize) {
                let lambda = YoungDiagram::new(rows).unwrap();
                let table = freudenthal(&lambda, g).unwrap();
                assert_eq!(BigInt::from(table.dim()), weyl_dim(&lambda, g).unwrap(), "{lambda} g={n}");
                assert_eq!(decompose(&table, g).unwrap().0, BTreeMap::from([(lambda.clone(), 1)]), "{lambda} g={n}");
            }
        }
    }
}
