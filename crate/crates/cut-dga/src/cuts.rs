//! Cuts of a generator, computed on positions so that two cuts are equal
//! exactly when their pieces occupy the same indices.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::Sequence;

/// Increasing positions into the entry list `a₀,…,a_{n+1}` of the parent.
pub type Piece = Vec<usize>;
pub type Cut = Vec<Piece>;

/// All 2-cuts of a piece, in the order of the index pair (i, j).
pub fn two_cuts_of(piece: &[usize]) -> Vec<(Piece, Piece)> {
    let m = piece.len() - 2;
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..=m {
            if (i, j) == (0, m) {
                continue;
            }
            let mut left: Piece = piece[..=i].to_vec();
            left.extend_from_slice(&piece[j + 1..]);
            let right: Piece = piece[i..=j + 1].to_vec();
            out.push((left, right));
        }
    }
    out
}

fn full(n: usize) -> Piece {
    (0..n + 2).collect()
}

fn compute_all_cuts(n: usize) -> Vec<Cut> {
    let mut out: Vec<Cut> = vec![vec![full(n)]];
    let mut level: BTreeSet<Cut> = out.iter().cloned().collect();
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for cut in &level {
            for r in 0..cut.len() {
                for (a, b) in two_cuts_of(&cut[r]) {
                    let mut c = Vec::with_capacity(cut.len() + 1);
                    c.extend_from_slice(&cut[..r]);
                    c.push(a);
                    c.push(b);
                    c.extend_from_slice(&cut[r + 1..]);
                    next.insert(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

fn table() -> &'static Mutex<HashMap<usize, Arc<Vec<Cut>>>> {
    static TABLE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Cut>>>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// All cuts of a generator with `n` interior entries, 1-cut first.
pub fn all_cut_indices(n: usize) -> Arc<Vec<Cut>> {
    if let Some(c) = table().lock().unwrap().get(&n) {
        return c.clone();
    }
    let cuts = Arc::new(compute_all_cuts(n));
    table().lock().unwrap().entry(n).or_insert(cuts).clone()
}

pub fn is_elementary(cut: &Cut) -> bool {
    cut[1..]
        .iter()
        .all(|p| p.windows(2).all(|w| w[1] == w[0] + 1))
}

/// Elementary cuts with the trailing pieces taken as an unordered family.
/// Reorderings of `A₂,…,A_k` are often cuts too, and the shuffle product
/// `T(A₂)⋯T(A_k)` already accounts for every order.
pub fn elementary_cut_classes(n: usize) -> Vec<Cut> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in all_cut_indices(n).iter().filter(|c| is_elementary(c)) {
        let mut key = c[1..].to_vec();
        key.sort();
        if seen.insert((c[0].clone(), key)) {
            out.push(c.clone());
        }
    }
    out
}

pub fn realize(a: &Sequence, cut: &Cut) -> Vec<Sequence> {
    cut.iter().map(|p| a.piece(p)).collect()
}

pub fn two_cuts(a: &Sequence) -> Vec<(Sequence, Sequence)> {
    two_cuts_of(&full(a.n()))
        .into_iter()
        .map(|(l, r)| (a.piece(&l), a.piece(&r)))
        .collect()
}

pub fn all_cuts(a: &Sequence) -> Vec<Vec<Sequence>> {
    all_cut_indices(a.n())
        .iter()
        .map(|c| realize(a, c))
        .collect()
}

pub fn elementary_cuts(a: &Sequence) -> Vec<Vec<Sequence>> {
    all_cut_indices(a.n())
        .iter()
        .filter(|c| is_elementary(c))
        .map(|c| realize(a, c))
        .collect()
}
