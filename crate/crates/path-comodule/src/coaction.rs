use std::fmt;

use bar_complex::{shuffle_product, word, Bar, BarWord, Dga};
use cut_dga::{all_cut_indices, elementary_cut_classes, Cs, Mono, RelationIdeal, Sequence};
use exact_kernel::{FieldElement, Lin};
use itertools::Itertools;

use crate::series::{NcSeries, Word};
use crate::ComoduleError;

/// `Σ c · X_w ⊗ [A₂|…|A_k]`.
pub type Coacted = Lin<(Word, Vec<Mono>)>;

/// `Π^C(S, a, b)` for a finite alphabet `S`, coacted on by `B(C_{S,S'})`.
#[derive(Clone, Debug)]
pub struct Comodule {
    letters: Vec<FieldElement>,
    algebra: Cs,
}

impl Comodule {
    pub fn new(letters: Vec<FieldElement>) -> Self {
        Self::with_algebra(letters, Cs::default())
    }

    pub fn with_algebra(letters: Vec<FieldElement>, algebra: Cs) -> Self {
        Comodule { letters, algebra }
    }

    pub fn letters(&self) -> &[FieldElement] {
        &self.letters
    }

    pub fn algebra(&self) -> Cs {
        self.algebra
    }

    fn check(&self, w: &Word) -> Result<(), ComoduleError> {
        match w.letters().iter().find(|l| !self.letters.contains(l)) {
            Some(l) => Err(ComoduleError::Alphabet(l.to_string())),
            None => Ok(()),
        }
    }

    /// Bar words from the pieces, expanded through the algebra's generators.
    fn slots(&self, pieces: &[Sequence]) -> Lin<Vec<Mono>> {
        let mut acc: Lin<Vec<Mono>> = Lin::single(Vec::new());
        for p in pieces {
            let g = self.algebra.gen(p);
            let mut next = Lin::zero();
            for (pre, c) in acc.iter() {
                for (m, d) in g.iter() {
                    let mut v = pre.clone();
                    v.push(m.clone());
                    next.add_term(v, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    /// `ν(X_w) = Σ X_{A₁} ⊗ [A₂|…|A_k]` over all cuts of `(a; w; b)`.
    pub fn coaction(
        &self,
        w: &Word,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<Coacted, ComoduleError> {
        self.check(w)?;
        let Some(seq) = w.sequence(a, b) else {
            return Ok(Lin::single((Word::empty(), Vec::new())));
        };
        let mut out = Lin::zero();
        for cut in all_cut_indices(seq.n()).iter() {
            let pieces: Vec<Sequence> = cut.iter().map(|p| seq.piece(p)).collect();
            let left = Word(pieces[0].interior().to_vec());
            for (slots, c) in self.slots(&pieces[1..]).iter() {
                out.add_term((left.clone(), slots.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// `ν(X_w) = Σ X_{A₁} ⊗ T(A₂)⋯T(A_k)` over elementary cuts, the
    /// trailing pieces taken as an unordered family.
    pub fn coaction_elementary(
        &self,
        w: &Word,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<Coacted, ComoduleError> {
        self.check(w)?;
        let Some(seq) = w.sequence(a, b) else {
            return Ok(Lin::single((Word::empty(), Vec::new())));
        };
        let mut out = Lin::zero();
        for cut in elementary_cut_classes(seq.n()) {
            let pieces: Vec<Sequence> = cut.iter().map(|p| seq.piece(p)).collect();
            let left = Word(pieces[0].interior().to_vec());
            let mut right: Bar<(), Mono> = word(Vec::new());
            for p in &pieces[1..] {
                let t = self.algebra.t_element(p);
                right = shuffle_product(&self.algebra, &right, &t).expect("commutative");
            }
            for (bw, c) in right.iter() {
                out.add_term((left.clone(), bw.slots.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// [`Comodule::coaction`] plus the term `1 ⊗ T(a; w; b)` for the cut that
    /// keeps no letter.
    pub fn augmented_coaction(
        &self,
        w: &Word,
        a: &FieldElement,
        b: &FieldElement,
    ) -> Result<Coacted, ComoduleError> {
        let mut out = self.coaction(w, a, b)?;
        if let Some(seq) = w.sequence(a, b) {
            for (bw, c) in self.algebra.t_element(&seq).iter() {
                out.add_term((Word::empty(), bw.slots.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// Linear extension of [`Comodule::coaction`] to a series.
    pub fn coact(&self, x: &NcSeries) -> Result<Coacted, ComoduleError> {
        let mut out = Lin::zero();
        for (w, c) in x.terms().iter() {
            out.add_scaled(&self.coaction(w, x.start(), x.end())?, c);
        }
        Ok(out)
    }

    /// Adams degree of a bar word.
    pub fn adams(&self, slots: &[Mono]) -> usize {
        slots.iter().map(|m| self.algebra.adams(m) as usize).sum()
    }
}

/// Product on `Π ⊗ B`: concatenation on the left, shuffle on the right.
fn coacted_product(cs: &Cs, x: &Coacted, y: &Coacted) -> Coacted {
    let mut out = Lin::zero();
    for ((lx, sx), cx) in x.iter() {
        for ((ly, sy), cy) in y.iter() {
            let bx: Bar<(), Mono> = word(sx.clone());
            let by: Bar<(), Mono> = word(sy.clone());
            let sh = shuffle_product(cs, &bx, &by).expect("commutative");
            for (bw, c) in sh.iter() {
                out.add_term((lx.concat(ly), bw.slots.clone()), &(cx * cy) * c);
            }
        }
    }
    out
}

/// The comodule law that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Coassociativity,
    Counit,
    FormsAgree,
    Grading,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Coassociativity => "coassociativity",
            Law::Counit => "counit",
            Law::FormsAgree => "all-cuts and elementary forms agree",
            Law::Grading => "grading",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawFailure {
    pub law: Law,
    pub word: Word,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleReport {
    pub words_checked: usize,
    pub failure: Option<LawFailure>,
}

impl ComoduleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for ComoduleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass ({} words)", self.words_checked),
            Some(x) => write!(f, "FAIL {} on {}: {}", x.law, x.word, x.detail),
        }
    }
}

fn all_words(letters: &[FieldElement], max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|n| {
            (0..n)
                .map(|_| letters.iter().cloned())
                .multi_cartesian_product()
                .map(Word)
                .collect::<Vec<_>>()
        })
        .chain(std::iter::once(Word::empty()))
        .unique()
        .collect()
}

type Triple = Lin<(Word, Vec<Mono>, Vec<Mono>)>;

fn laws(
    m: &Comodule,
    w: &Word,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<Option<(Law, String)>, ComoduleError> {
    let nu = m.coaction(w, a, b)?;
    let mut lhs: Triple = Lin::zero();
    let mut rhs: Triple = Lin::zero();
    let mut counit: Lin<Word> = Lin::zero();
    for ((l, s), c) in nu.iter() {
        for i in 0..=s.len() {
            lhs.add_term((l.clone(), s[..i].to_vec(), s[i..].to_vec()), c.clone());
        }
        for ((l2, s2), c2) in m.coaction(l, a, b)?.iter() {
            rhs.add_term((l2.clone(), s2.clone(), s.clone()), c * c2);
        }
        if s.is_empty() {
            counit.add_term(l.clone(), c.clone());
        }
        if l.weight() + 2 * m.adams(s) != w.weight() {
            return Ok(Some((Law::Grading, format!("{l} ⊗ {} slots", s.len()))));
        }
    }
    if lhs != rhs {
        let diff = &lhs - &rhs;
        let ((l, s1, s2), c) = diff.iter().next().expect("nonzero");
        let show = |s: &[Mono]| s.iter().map(|x| x.to_string()).join("|");
        return Ok(Some((
            Law::Coassociativity,
            format!("{c} * {l} ⊗ [{}] ⊗ [{}]", show(s1), show(s2)),
        )));
    }
    if counit != Lin::single(w.clone()) {
        return Ok(Some((Law::Counit, format!("{counit:?}"))));
    }
    if m.coaction_elementary(w, a, b)? != nu {
        return Ok(Some((Law::FormsAgree, String::new())));
    }
    Ok(None)
}

/// Checks coassociativity, the counit law, agreement of the two forms of
/// `ν` and the weight bookkeeping on every word of length at most `depth`.
pub fn comodule_check(
    letters: &[FieldElement],
    a: &FieldElement,
    b: &FieldElement,
    depth: usize,
) -> Result<ComoduleReport, ComoduleError> {
    comodule_check_with(&Comodule::new(letters.to_vec()), a, b, depth)
}

pub fn comodule_check_with(
    m: &Comodule,
    a: &FieldElement,
    b: &FieldElement,
    depth: usize,
) -> Result<ComoduleReport, ComoduleError> {
    let words = all_words(m.letters(), depth);
    for (i, w) in words.iter().enumerate() {
        if let Some((law, detail)) = laws(m, w, a, b)? {
            return Ok(ComoduleReport {
                words_checked: i,
                failure: Some(LawFailure {
                    law,
                    word: w.clone(),
                    detail,
                }),
            });
        }
    }
    Ok(ComoduleReport {
        words_checked: words.len(),
        failure: None,
    })
}

fn reduce_grouped<K: Clone + Ord>(
    ideal: &RelationIdeal,
    diff: &Lin<(K, Vec<Mono>)>,
) -> Result<Lin<(K, Vec<Mono>)>, ComoduleError> {
    let mut residual = Lin::zero();
    for (key, group) in &diff.iter().chunk_by(|((k, _), _)| k.clone()) {
        let bar: Bar<(), Mono> = group
            .map(|((_, s), c)| (BarWord { module: (), slots: s.clone() }, c.clone()))
            .collect();
        for (bw, c) in ideal.reduce_bar(&bar)?.iter() {
            residual.add_term((key.clone(), bw.slots.clone()), c.clone());
        }
    }
    Ok(residual)
}

/// `ν(X_u X_v) - ν(X_u)·ν(X_v)` for `u` on `(a, b)` and `v` on `(b, c)`,
/// reduced modulo the relation ideal: whether concatenation intertwines the
/// coactions. Returns the first pair whose difference survives.
pub fn concatenation_defect(
    letters: &[FieldElement],
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    depth: usize,
) -> Result<Option<(Word, Word, Coacted)>, ComoduleError> {
    let ideal = RelationIdeal::new(letters.to_vec(), vec![a.clone(), b.clone(), c.clone()]);
    let m = Comodule::with_algebra(letters.to_vec(), ideal.algebra());
    let words = all_words(letters, depth);
    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= depth) {
            let whole = m.coaction(&u.concat(v), a, c)?;
            let split = coacted_product(&m.algebra, &m.coaction(u, a, b)?, &m.coaction(v, b, c)?);
            let residual = reduce_grouped(&ideal, &(&whole - &split))?;
            if !residual.is_zero() {
                return Ok(Some((u.clone(), v.clone(), residual)));
            }
        }
    }
    Ok(None)
}

/// `Σ X_u ⊗ X_v ⊗ [bar word]`.
pub type CoactedPair = Lin<((Word, Word), Vec<Mono>)>;

/// Path composition seen from the coordinate side: splitting a word
/// `w = uv` on `(a, c)` into `X_u ⊗ X_v` on `(a, b)` and `(b, c)` should
/// commute with the augmented coaction modulo the relation ideal. Returns
/// the first word of length at most `depth` where it does not, with the
/// reduced residual.
pub fn path_compatibility(
    letters: &[FieldElement],
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    depth: usize,
) -> Result<Option<(Word, CoactedPair)>, ComoduleError> {
    let ideal = RelationIdeal::new(letters.to_vec(), vec![a.clone(), b.clone(), c.clone()]);
    let m = Comodule::with_algebra(letters.to_vec(), ideal.algebra());
    for w in all_words(letters, depth) {
        let mut diff: CoactedPair = Lin::zero();
        for ((l, s), k) in m.augmented_coaction(&w, a, c)?.iter() {
            for i in 0..=l.len() {
                let (x, y) = l.letters().split_at(i);
                diff.add_term(((Word(x.to_vec()), Word(y.to_vec())), s.clone()), k.clone());
            }
        }
        for i in 0..=w.len() {
            let (x, y) = w.letters().split_at(i);
            let left = m.augmented_coaction(&Word(x.to_vec()), a, b)?;
            let right = m.augmented_coaction(&Word(y.to_vec()), b, c)?;
            for ((lx, sx), cx) in left.iter() {
                for ((ly, sy), cy) in right.iter() {
                    let sh = shuffle_product(&m.algebra, &word(sx.clone()), &word(sy.clone()))
                        .expect("commutative");
                    for (bw, k) in sh.iter() {
                        diff.add_term(((lx.clone(), ly.clone()), bw.slots.clone()), -&(&(cx * cy) * k));
                    }
                }
            }
        }
        let residual = reduce_grouped(&ideal, &diff)?;
        if !residual.is_zero() {
            return Ok(Some((w, residual)));
        }
    }
    Ok(None)
}

/// `(id ⊗ ε)`: the coefficient of each left word against the empty bar word.
pub fn counit_part(x: &Coacted) -> Lin<Word> {
    x.iter()
        .filter(|((_, s), _)| s.is_empty())
        .map(|((l, _), c)| (l.clone(), c.clone()))
        .collect()
}
