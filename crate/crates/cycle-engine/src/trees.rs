//! Expansion of `ρ₁` as a sum over rooted binary trees on the interior.

use std::fmt;

use cut_dga::Sequence;
use exact_kernel::{q, qf, FieldElement, Q};
use num_traits::Zero;

use crate::cycle::{attach, ext, Cycle, Slot};
use crate::theory::{delta_coeff, DeltaRule, Engine, Theory};
use crate::CycleError;

/// A plane binary tree whose leaves are interior positions (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    /// All binary trees with leaves `lo..=hi` in order.
    pub fn all(lo: usize, hi: usize) -> Vec<Tree> {
        if lo == hi {
            return vec![Tree::Leaf(lo)];
        }
        let mut out = Vec::new();
        for m in lo..hi {
            for l in Tree::all(lo, m) {
                for r in Tree::all(m + 1, hi) {
                    out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }

    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    fn first(&self) -> usize {
        match self {
            Tree::Leaf(i) => *i,
            Tree::Node(l, _) => l.first(),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf(i) => write!(f, "{i}"),
            Tree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// One summand of the tree expansion. For the binary theory `eps` is the
/// upper index and `decoration` lists the root-first choices among the six
/// root terms at nodes with more than two leaves (`0` marks a two-leaf node).
#[derive(Clone, Debug)]
pub struct TreeTerm {
    pub tree: Tree,
    pub eps: Option<usize>,
    pub decoration: Vec<u8>,
    pub cycle: Cycle,
}

pub fn tree_terms(engine: &Engine, a: &Sequence) -> Result<Vec<TreeTerm>, CycleError> {
    engine.check(a)?;
    let e = a.entries();
    let n = a.n();
    let mut out = Vec::new();
    match engine.theory() {
        Theory::Binary(..) => {
            for eps in 0..2 {
                for (tree, decoration, cycle) in decorated(engine, e, 1, n, eps) {
                    out.push(TreeTerm {
                        tree,
                        eps: Some(eps),
                        decoration,
                        cycle,
                    });
                }
            }
        }
        _ => {
            for tree in Tree::all(1, n) {
                let cycle = plain(engine, e, &tree);
                out.push(TreeTerm {
                    tree,
                    eps: None,
                    decoration: Vec::new(),
                    cycle,
                });
            }
        }
    }
    Ok(out)
}

fn plain(engine: &Engine, e: &[FieldElement], tree: &Tree) -> Cycle {
    match tree {
        Tree::Leaf(j) => engine.base(&e[j - 1], &e[*j]),
        Tree::Node(l, r) => {
            let c = match engine.theory() {
                Theory::AGeneric(a) => a.clone(),
                _ => e[tree.first() - 1].clone(),
            };
            let s = FieldElement::var(&ext(1));
            let lead = |t: &FieldElement| (&s - t).checked_div(&(&c - t)).expect("generic");
            let (lc, rc) = (plain(engine, e, l), plain(engine, e, r));
            attach(&lead, &[(&lc, Slot::Fresh), (&rc, Slot::Fresh)], &q(1))
        }
    }
}

/// The six root terms: coefficient selector, backward lead, and the
/// (upper index, slot) of the left and right subtrees.
const ROOT_TERMS: [(u8, bool, (usize, Slot), (usize, Slot)); 6] = [
    (0, false, (1, Slot::Fresh), (0, Slot::Fresh)),
    (1, true, (1, Slot::Fresh), (0, Slot::External)),
    (1, true, (0, Slot::Fresh), (1, Slot::External)),
    (0, false, (0, Slot::Fresh), (1, Slot::Fresh)),
    (2, true, (0, Slot::External), (1, Slot::Fresh)),
    (2, true, (1, Slot::External), (0, Slot::Fresh)),
];

fn decorated(
    engine: &Engine,
    e: &[FieldElement],
    lo: usize,
    hi: usize,
    eps: usize,
) -> Vec<(Tree, Vec<u8>, Cycle)> {
    let (x, y) = match engine.theory() {
        Theory::Binary(x, y) => (x, y),
        _ => unreachable!("binary only"),
    };
    let alpha = if eps == 0 { x } else { y };
    let n = hi - lo + 1;
    if n == 1 {
        if &e[lo] == alpha {
            return Vec::new();
        }
        return vec![(Tree::Leaf(lo), Vec::new(), engine.base(&e[lo], &e[lo]))];
    }
    let s = FieldElement::var(&ext(1));
    let lead = |t: &FieldElement| (&s - t).checked_div(&(alpha - t)).expect("generic");
    let back = |t: &FieldElement| engine.back(alpha, t);
    if n == 2 {
        let l = engine.base(&e[lo], &e[lo]);
        let r = engine.base(&e[hi], &e[hi]);
        let c = attach(&lead, &[(&l, Slot::Fresh), (&r, Slot::Fresh)], &qf(1, 2));
        if c.is_zero() {
            return Vec::new();
        }
        let tree = Tree::Node(Box::new(Tree::Leaf(lo)), Box::new(Tree::Leaf(hi)));
        return vec![(tree, vec![0], c)];
    }
    let mut out = Vec::new();
    for m in lo..hi {
        let (nl, nr) = (m - lo + 1, hi - m);
        let coeff = |sel: u8| -> Q {
            let (left_t, left_s) = match engine.rule() {
                DeltaRule::FirstBlock => (nl, nr),
                DeltaRule::SplitIndex => (nl, nl),
                DeltaRule::RightLeaves => (nr, nl),
            };
            match sel {
                0 => q(1),
                1 => delta_coeff(left_t, n),
                _ => delta_coeff(left_s, n),
            }
        };
        for (j, (sel, backward, (el, sl), (er, sr))) in ROOT_TERMS.iter().enumerate() {
            let c = coeff(*sel);
            if c.is_zero() {
                continue;
            }
            let ls = decorated(engine, e, lo, m, *el);
            let rs = decorated(engine, e, m + 1, hi, *er);
            for (lt, ld, lc) in &ls {
                for (rt, rd, rc) in &rs {
                    let f: &dyn Fn(&FieldElement) -> FieldElement =
                        if *backward { &back } else { &lead };
                    let cycle = attach(f, &[(lc, *sl), (rc, *sr)], &c);
                    let mut dec = vec![j as u8 + 1];
                    dec.extend(ld.iter().copied());
                    dec.extend(rd.iter().copied());
                    let tree = Tree::Node(Box::new(lt.clone()), Box::new(rt.clone()));
                    out.push((tree, dec, cycle));
                }
            }
        }
    }
    out
}
