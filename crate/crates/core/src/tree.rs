//! Labelled unitrivalent trees, the welding bracket and the map `η`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::One;

use crate::error::{Error, Result};
use crate::hl::HLElement;
use crate::letter::{mu, Genus, Letter};
use crate::lie::{LieElement, LieMonomial};
use crate::rational::{fmt_sum, q, Q};
use crate::sp::SpGenerator;
use crate::tensor::{add_to, Tensor};

/// A rooted planar binary tree with labelled leaves, read as a bracket.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Planar {
    Leaf(Letter),
    Node(Box<Planar>, Box<Planar>),
}

impl Planar {
    pub fn node(l: Planar, r: Planar) -> Planar {
        Planar::Node(Box::new(l), Box::new(r))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Planar::Leaf(_) => 1,
            Planar::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn leaves(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Letter>) {
        match self {
            Planar::Leaf(l) => out.push(*l),
            Planar::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Tensor image of the bracket this tree reads as.
    pub fn iota(&self) -> Tensor {
        match self {
            Planar::Leaf(l) => Tensor::letter(*l),
            Planar::Node(a, b) => a.iota().commutator(&b.iota()),
        }
    }

    pub fn to_lie(&self) -> LieElement {
        LieElement::from_tensor(&self.iota()).expect("brackets are Lie")
    }

    /// The standard bracketing of a Lyndon word.
    pub fn from_monomial(m: &LieMonomial) -> Planar {
        match m.factor() {
            None => Planar::Leaf(m.word()[0]),
            Some((u, v)) => Planar::node(Planar::from_monomial(&u), Planar::from_monomial(&v)),
        }
    }

    /// Replaces the `n`-th leaf (left to right) by `l`.
    fn with_leaf(&self, n: &mut usize, l: Letter) -> Planar {
        match self {
            Planar::Leaf(x) => {
                let out = if *n == 0 { Planar::Leaf(l) } else { Planar::Leaf(*x) };
                *n = n.wrapping_sub(1);
                out
            }
            Planar::Node(a, b) => {
                let a = a.with_leaf(n, l);
                Planar::node(a, b.with_leaf(n, l))
            }
        }
    }
}

impl fmt::Display for Planar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Planar::Leaf(l) => write!(f, "{l}"),
            Planar::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Clone, Debug)]
enum GNode {
    Leaf(Letter, usize),
    Tri([usize; 3]),
}

/// A tree as a graph with a cyclic order at each trivalent vertex.
#[derive(Clone, Debug)]
struct Graph {
    nodes: Vec<GNode>,
}

impl Graph {
    fn from_rooted(root: Letter, body: &Planar) -> Graph {
        let mut g = Graph { nodes: vec![GNode::Leaf(root, 1)] };
        g.push(body, 0);
        g
    }

    fn push(&mut self, p: &Planar, parent: usize) -> usize {
        let id = self.nodes.len();
        match p {
            Planar::Leaf(l) => self.nodes.push(GNode::Leaf(*l, parent)),
            Planar::Node(a, b) => {
                self.nodes.push(GNode::Tri([parent, 0, 0]));
                let x = self.push(a, id);
                let y = self.push(b, id);
                self.nodes[id] = GNode::Tri([parent, x, y]);
            }
        }
        id
    }

    fn leaves(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| matches!(self.nodes[i], GNode::Leaf(..))).collect()
    }

    fn label(&self, v: usize) -> Letter {
        match self.nodes[v] {
            GNode::Leaf(l, _) => l,
            GNode::Tri(_) => unreachable!("label of a trivalent vertex"),
        }
    }

    fn read(&self, v: usize, from: usize) -> Planar {
        match &self.nodes[v] {
            GNode::Leaf(l, _) => Planar::Leaf(*l),
            GNode::Tri(n) => {
                let k = n.iter().position(|&x| x == from).expect("broken adjacency");
                let (x1, x2) = (n[(k + 1) % 3], n[(k + 2) % 3]);
                Planar::node(self.read(x1, v), self.read(x2, v))
            }
        }
    }

    /// `(label, body)` as seen from leaf `v`.
    fn rooted_at(&self, v: usize) -> (Letter, Planar) {
        match self.nodes[v] {
            GNode::Leaf(l, n) => (l, self.read(n, v)),
            GNode::Tri(_) => unreachable!("rooting at a trivalent vertex"),
        }
    }

    fn replace_neighbor(&mut self, v: usize, old: usize, new: usize) {
        match &mut self.nodes[v] {
            GNode::Leaf(_, n) => *n = new,
            GNode::Tri(ns) => {
                for x in ns.iter_mut() {
                    if *x == old {
                        *x = new;
                    }
                }
            }
        }
    }

    fn neighbor_of_leaf(&self, v: usize) -> usize {
        match self.nodes[v] {
            GNode::Leaf(_, n) => n,
            GNode::Tri(_) => unreachable!(),
        }
    }
}

/// A labelled unitrivalent tree, stored in canonical rooted form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LabeledTree {
    root: Letter,
    body: Planar,
}

impl LabeledTree {
    /// The tree obtained by attaching a leaf labelled `root` to the root of
    /// `body`; the cyclic order at each vertex is (parent, left, right).
    pub fn new(root: Letter, body: Planar) -> LabeledTree {
        let g = Graph::from_rooted(root, &body);
        let (root, body) = g.leaves().into_iter().map(|v| g.rooted_at(v)).min().unwrap();
        LabeledTree { root, body }
    }

    pub fn root(&self) -> Letter {
        self.root
    }

    pub fn body(&self) -> &Planar {
        &self.body
    }

    /// Number of univalent vertices minus two.
    pub fn degree(&self) -> usize {
        self.body.leaf_count() - 1
    }

    fn graph(&self) -> Graph {
        Graph::from_rooted(self.root, &self.body)
    }

    /// Readings `(label, body)` from every univalent vertex.
    pub fn readings(&self) -> Vec<(Letter, Planar)> {
        let g = self.graph();
        g.leaves().into_iter().map(|v| g.rooted_at(v)).collect()
    }

    pub fn labels(&self) -> Vec<Letter> {
        let mut v = vec![self.root];
        v.extend(self.body.leaves());
        v
    }

    /// `η(T) = Σ_v ℓ(v) ⊗ T_v`.
    pub fn eta_tensor(&self) -> Tensor {
        let mut out = Tensor::zero(self.degree() + 2);
        for (l, body) in self.readings() {
            out += &Tensor::letter(l).otimes(&body.iota());
        }
        out
    }

    /// All trees `T1 *_{u,v} T2` with their `μ(ℓ(u), ℓ(v))` weights.
    fn welds(&self, other: &LabeledTree) -> Vec<(LabeledTree, i64)> {
        let g1 = self.graph();
        let g2 = other.graph();
        let off = g1.nodes.len();
        let mut out = Vec::new();
        for u in g1.leaves() {
            for v in g2.leaves() {
                let m = mu(g1.label(u), g2.label(v));
                if m == 0 {
                    continue;
                }
                let mut g = g1.clone();
                for node in &g2.nodes {
                    g.nodes.push(match node {
                        GNode::Leaf(l, n) => GNode::Leaf(*l, n + off),
                        GNode::Tri(ns) => GNode::Tri(ns.map(|x| x + off)),
                    });
                }
                let (vv, nu, nv) = (v + off, g1.neighbor_of_leaf(u), g2.neighbor_of_leaf(v) + off);
                g.replace_neighbor(nu, u, nv);
                g.replace_neighbor(nv, vv, nu);
                let start = g.leaves().into_iter().find(|&x| x != u && x != vv).expect("welded tree has leaves");
                let (root, body) = g.rooted_at(start);
                out.push((LabeledTree::new(root, body), m));
            }
        }
        out
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tr[{},{}]", self.root, self.body)
    }
}

/// A formal rational combination of labelled trees.  AS and IHX are not
/// imposed; compare elements through [`TreeElement::eta`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeElement {
    degree: usize,
    terms: BTreeMap<LabeledTree, Q>,
}

impl TreeElement {
    pub fn zero(degree: usize) -> TreeElement {
        TreeElement { degree, terms: BTreeMap::new() }
    }

    pub fn tree(t: LabeledTree) -> TreeElement {
        let mut out = TreeElement::zero(t.degree());
        out.add_term(t, Q::one());
        out
    }

    pub fn rooted(root: Letter, body: Planar) -> TreeElement {
        TreeElement::tree(LabeledTree::new(root, body))
    }

    pub fn add_term(&mut self, t: LabeledTree, c: Q) {
        assert_eq!(t.degree(), self.degree, "tree of wrong degree");
        add_to(&mut self.terms, t, c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LabeledTree, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> TreeElement {
        let mut out = TreeElement::zero(self.degree);
        for (t, x) in &self.terms {
            out.add_term(t.clone(), x * c);
        }
        out
    }

    /// `η` as a tensor in `H^{⊗(k+2)}`.
    pub fn eta_tensor(&self) -> Tensor {
        let mut out = Tensor::zero(self.degree + 2);
        for (t, c) in &self.terms {
            out += &t.eta_tensor().scale(c);
        }
        out
    }

    /// `η : T(k) → H ⊗ L_{g,1}(k+1)`.
    pub fn eta(&self) -> HLElement {
        HLElement::from_tensor(&self.eta_tensor()).expect("η lands in H ⊗ L")
    }

    /// The welding bracket `Σ μ(ℓ(u), ℓ(v)) T1 *_{u,v} T2`.
    pub fn weld(&self, other: &TreeElement) -> TreeElement {
        let mut out = TreeElement::zero(self.degree + other.degree);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                for (t, m) in t1.welds(t2) {
                    out.add_term(t, c1 * c2 * q(m));
                }
            }
        }
        out
    }

    /// Action of `sp(2g)` on labels by the Leibniz rule.
    pub fn sp_apply(&self, generator: SpGenerator) -> TreeElement {
        let mut out = TreeElement::zero(self.degree);
        for (t, c) in &self.terms {
            let labels = t.labels();
            for (pos, &l) in labels.iter().enumerate() {
                for (img, d) in generator.apply_letter(l).terms() {
                    let (root, body) = if pos == 0 {
                        (img[0], t.body.clone())
                    } else {
                        (t.root, t.body.with_leaf(&mut (pos - 1), img[0]))
                    };
                    out.add_term(LabeledTree::new(root, body), c * d);
                }
            }
        }
        out
    }

    pub fn sp_apply_word(&self, word: &[SpGenerator]) -> TreeElement {
        word.iter().rev().fold(self.clone(), |t, &gen| t.sp_apply(gen))
    }

    /// Substitutes labels simultaneously.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> TreeElement {
        let mut out = TreeElement::zero(self.degree);
        for (t, c) in &self.terms {
            let mut body = t.body.clone();
            for (i, l) in t.body.leaves().into_iter().enumerate() {
                body = body.with_leaf(&mut { i }, f(l));
            }
            out.add_term(LabeledTree::new(f(t.root), body), c.clone());
        }
        out
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().flat_map(|t| t.labels()).map(|l| l.index()).max().unwrap_or(0)
    }
}

fn leaf(l: Letter) -> Planar {
    Planar::Leaf(l)
}

/// The H-shaped tree `T^H(a,b,c,d)`, with `η = a⊗[b,[c,d]] + …`.
pub fn h_tree(a: Letter, b: Letter, c: Letter, d: Letter) -> TreeElement {
    TreeElement::rooted(a, Planar::node(leaf(b), Planar::node(leaf(c), leaf(d))))
}

/// The caterpillar `T(a,b,c,d,e,f)` of degree 4.
pub fn caterpillar(a: Letter, b: Letter, c: Letter, d: Letter, e: Letter, f: Letter) -> TreeElement {
    let inner = Planar::node(Planar::node(Planar::node(leaf(f), leaf(e)), leaf(d)), leaf(c));
    TreeElement::rooted(a, Planar::node(inner, leaf(b)))
}

/// The degree-1 tree with three leaves.
pub fn tripod(x: Letter, y: Letter, z: Letter) -> TreeElement {
    TreeElement::rooted(x, Planar::node(leaf(y), leaf(z)))
}

/// `Φ(x) = Σ_i` of the tree gluing `x` to the `ω0` tree at its root.
pub fn phi(x: &LieElement, g: Genus) -> TreeElement {
    let mut out = TreeElement::zero(x.degree());
    for i in 1..=g.get() {
        for (m, c) in x.terms() {
            let body = Planar::node(leaf(Letter::b(i)), Planar::from_monomial(m));
            out.add_term(LabeledTree::new(Letter::a(i), body), c.clone());
        }
    }
    out
}

/// `Σ_i T^H(x, y, a_i, b_i)`, the image of `[x, y]` under `Φ`.
pub fn phi_pair(x: Letter, y: Letter, g: Genus) -> TreeElement {
    let mut out = TreeElement::zero(2);
    for i in 1..=g.get() {
        out += &h_tree(x, y, Letter::a(i), Letter::b(i));
    }
    out
}

/// Checks all labels of a tree against the genus.
pub fn check_tree(t: &TreeElement, g: Genus) -> Result<()> {
    let m = t.max_index();
    if m > g.get() {
        return Err(Error::IndexOutOfRange { index: m, genus: g.get() });
    }
    Ok(())
}

impl fmt::Display for TreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_sum(self.terms.iter().map(|(t, c)| (c, t.to_string()))))
    }
}

impl fmt::Debug for TreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree[{}]({})", self.degree, self)
    }
}

impl AddAssign<&TreeElement> for TreeElement {
    fn add_assign(&mut self, rhs: &TreeElement) {
        assert_eq!(self.degree, rhs.degree, "adding trees of different degree");
        for (t, c) in &rhs.terms {
            add_to(&mut self.terms, t.clone(), c.clone());
        }
    }
}

impl SubAssign<&TreeElement> for TreeElement {
    fn sub_assign(&mut self, rhs: &TreeElement) {
        assert_eq!(self.degree, rhs.degree, "subtracting trees of different degree");
        for (t, c) in &rhs.terms {
            add_to(&mut self.terms, t.clone(), -c);
        }
    }
}

impl Add for &TreeElement {
    type Output = TreeElement;
    fn add(self, rhs: &TreeElement) -> TreeElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TreeElement {
    type Output = TreeElement;
    fn sub(self, rhs: &TreeElement) -> TreeElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &TreeElement {
    type Output = TreeElement;
    fn neg(self) -> TreeElement {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::Letter as L;

    fn g(n: u32) -> Genus {
        Genus::new(n).unwrap()
    }

    fn t(l: L) -> Tensor {
        Tensor::letter(l)
    }

    fn br(x: &Tensor, y: &Tensor) -> Tensor {
        x.commutator(y)
    }

    #[test]
    fn eta_of_h_tree_matches_four_term_expansion() {
        let (a, b, c, d) = (L::a(1), L::b(2), L::a(3), L::b(1));
        let (ta, tb, tc, td) = (t(a), t(b), t(c), t(d));
        let expect = ta.otimes(&br(&tb, &br(&tc, &td)))
            + tb.otimes(&br(&br(&tc, &td), &ta))
            + tc.otimes(&br(&td, &br(&ta, &tb)))
            + td.otimes(&br(&br(&ta, &tb), &tc));
        assert_eq!(h_tree(a, b, c, d).eta_tensor(), expect);
    }

    #[test]
    fn eta_of_caterpillar_matches_six_term_expansion() {
        let ls = [L::a(1), L::b(2), L::a(2), L::b(3), L::a(3), L::b(1)];
        let [a, b, c, d, e, f] = ls.map(t);
        let fe = br(&f, &e);
        let ba = br(&b, &a);
        let expect = a.otimes(&br(&br(&br(&fe, &d), &c), &b))
            - b.otimes(&br(&br(&br(&fe, &d), &c), &a))
            - c.otimes(&br(&br(&fe, &d), &ba))
            - d.otimes(&br(&br(&ba, &c), &fe))
            + e.otimes(&br(&br(&br(&ba, &c), &d), &f))
            - f.otimes(&br(&br(&br(&ba, &c), &d), &e));
        let [la, lb, lc, ld, le, lf] = ls;
        assert_eq!(caterpillar(la, lb, lc, ld, le, lf).eta_tensor(), expect);
    }

    #[test]
    fn eta_of_tripod() {
        let (x, y, z) = (L::a(1), L::b(1), L::a(2));
        let expect = t(x).otimes(&br(&t(y), &t(z))) + t(y).otimes(&br(&t(z), &t(x))) + t(z).otimes(&br(&t(x), &t(y)));
        assert_eq!(tripod(x, y, z).eta_tensor(), expect);
    }

    #[test]
    fn canonical_form_ignores_rooting() {
        let (a, b, c, d) = (L::a(1), L::b(2), L::a(3), L::b(1));
        let t1 = h_tree(a, b, c, d);
        let t2 = TreeElement::rooted(c, Planar::node(Planar::Leaf(d), Planar::node(Planar::Leaf(a), Planar::Leaf(b))));
        assert_eq!(t1, t2);
    }

    #[test]
    fn as_and_ihx_hold_under_eta() {
        let (a, b, c, d) = (L::a(1), L::b(2), L::a(3), L::b(1));
        let swapped = TreeElement::rooted(a, Planar::node(Planar::node(Planar::Leaf(c), Planar::Leaf(d)), Planar::Leaf(b)));
        assert!((&h_tree(a, b, c, d).eta() + &swapped.eta()).is_zero());
        // Jacobi on the body gives IHX.
        let lf = Planar::Leaf;
        let i1 = TreeElement::rooted(a, Planar::node(lf(b), Planar::node(lf(c), lf(d))));
        let i2 = TreeElement::rooted(a, Planar::node(lf(c), Planar::node(lf(d), lf(b))));
        let i3 = TreeElement::rooted(a, Planar::node(lf(d), Planar::node(lf(b), lf(c))));
        assert!((&(&i1 + &i2) + &i3).eta_tensor().is_zero());
    }

    #[test]
    fn eta_lands_in_h() {
        let (a, b, c, d) = (L::a(1), L::b(2), L::a(2), L::b(1));
        assert!(h_tree(a, b, c, d).eta().is_in_h());
        assert!(caterpillar(a, b, c, d, a, b).eta().is_in_h());
        assert!(tripod(a, b, c).eta().is_in_h());
        let bad = HLElement::simple(L::a(1), &LieElement::letter(L::a(1)).bracket(&LieElement::letter(L::a(2))));
        assert!(!bad.is_in_h());
        assert!(HLElement::zero(2).is_in_h());
    }

    #[test]
    fn weld_anchor() {
        let (a1, a2, b2) = (L::a(1), L::a(2), L::b(2));
        let w = h_tree(a1, a2, a1, a2).weld(&h_tree(a1, b2, a1, a2));
        let expect = caterpillar(a1, a2, a1, a1, a2, a1).scale(&q(2));
        assert_eq!(w.eta_tensor(), expect.eta_tensor());
        let z = h_tree(a1, a2, a1, a2).weld(&h_tree(L::a(3), L::a(4), L::a(3), L::a(4)));
        assert!(z.is_zero());
    }

    #[test]
    fn derivation_bracket_matches_weld() {
        let gg = g(3);
        let (a1, a2, b2) = (L::a(1), L::a(2), L::b(2));
        let x = h_tree(a1, a2, a1, a2);
        let y = h_tree(a1, b2, a1, a2);
        let d = x.eta().derivation_bracket(&y.eta(), gg).unwrap();
        assert_eq!(d, x.weld(&y).eta());
        assert!(x.eta().derivation_bracket(&x.eta(), gg).unwrap().is_zero());
        let bad = HLElement::simple(a1, &LieElement::letter(a1).bracket(&LieElement::letter(a2)));
        assert!(x.eta().derivation_bracket(&bad, gg).is_err());
    }

    #[test]
    fn phi_examples() {
        let gg = g(3);
        let x = LieElement::letter(L::a(3)).bracket(&LieElement::letter(L::b(2)));
        assert_eq!(phi(&x, gg).eta(), phi_pair(L::a(3), L::b(2), gg).eta());
        let closed = crate::hl::symplectic_sum(&x, gg);
        let diff = &phi(&x, gg).eta() - &closed;
        assert!(diff.closed_project(gg).unwrap().is_zero());
    }

    #[test]
    fn sp_action_on_trees_matches_tensors() {
        let (a, b, c, d) = (L::a(1), L::b(2), L::a(2), L::b(1));
        let x = h_tree(a, b, c, d);
        for gen in SpGenerator::all(g(2)) {
            assert_eq!(x.sp_apply(gen).eta_tensor(), x.eta_tensor().sp_apply(gen), "{gen}");
        }
        let swapped = x.map_letters(|l| if l.index() == 1 { Letter::new(l.kind(), 2) } else { Letter::new(l.kind(), 1) });
        assert_eq!(swapped, h_tree(L::a(2), L::b(1), L::a(1), L::b(2)));
    }
}
