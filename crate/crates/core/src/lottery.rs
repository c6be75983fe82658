//! Cyclic ladder lotteries as bar words.
//!
//! A bar on column `c` joins lines `c` and `c + 1`; column `n` is the seam
//! joining line `n` with line `1`. Words are read top to bottom. Two words
//! that differ by swapping adjacent bars on non-adjacent columns draw the
//! same pseudoline arrangement, so a lottery is always stored in the
//! greedy level normal form produced by [`canonicalize`], and equality of
//! lotteries is equality of normal forms.
//!
//! Tangled triples, chirality and minimality are only defined for lotteries
//! in which every pair of routes crosses at most once.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::displacement::{is_valid_dv, DisplacementVector};
use crate::perm::Permutation;
use crate::{Error, Result};

fn next_column(n: usize, c: usize) -> usize {
    c % n + 1
}

fn prev_column(n: usize, c: usize) -> usize {
    (c + n - 2) % n + 1
}

/// Greedy earliest-level schedule of a bar word: each bar sits one level
/// below the deepest earlier bar sharing a line with it.
pub fn canonical_levels(n: usize, word: &[usize]) -> Vec<usize> {
    let mut col_level = vec![0usize; n + 1];
    word.iter()
        .map(|&c| {
            let level = 1 + col_level[c]
                .max(col_level[prev_column(n, c)])
                .max(col_level[next_column(n, c)]);
            col_level[c] = level;
            level
        })
        .collect()
}

/// Normal form of a word up to commutation of bars on non-adjacent columns:
/// bars listed level by level, by column within a level.
pub fn canonicalize(n: usize, word: &[usize]) -> Vec<usize> {
    let levels = canonical_levels(n, word);
    let mut keyed: Vec<(usize, usize)> = levels.into_iter().zip(word.iter().copied()).collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, c)| c).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn flipped(self) -> Chirality {
        match self {
            Chirality::Left => Chirality::Right,
            Chirality::Right => Chirality::Left,
        }
    }
}

/// Three pairwise crossing routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangledTriple {
    /// Sorted elements.
    pub elements: [usize; 3],
    pub chirality: Chirality,
    /// A braid move applies directly to the triple.
    pub minimal: bool,
}

#[derive(Serialize, Deserialize)]
struct LotteryRepr {
    n: usize,
    word: Vec<usize>,
}

/// A cyclic ladder lottery in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LotteryRepr", into = "LotteryRepr")]
pub struct CyclicLadderLottery {
    n: usize,
    word: Vec<usize>,
}

impl TryFrom<LotteryRepr> for CyclicLadderLottery {
    type Error = Error;

    fn try_from(r: LotteryRepr) -> Result<Self> {
        CyclicLadderLottery::new(r.n, r.word)
    }
}

impl From<CyclicLadderLottery> for LotteryRepr {
    fn from(l: CyclicLadderLottery) -> LotteryRepr {
        LotteryRepr {
            n: l.n,
            word: l.word,
        }
    }
}

impl fmt::Debug for CyclicLadderLottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CLL(n={}, {:?})", self.n, self.word)
    }
}

/// Which elements meet on each bar of an at-most-once lottery.
pub(crate) struct Crossings {
    n: usize,
    /// `(moves right, moves left)` per bar.
    pub(crate) bars: Vec<(usize, usize)>,
    /// `pair[(a - 1) * n + (b - 1)]`: bar index where `a` and `b` cross.
    pair: Vec<Option<usize>>,
}

impl Crossings {
    pub(crate) fn bar_of(&self, a: usize, b: usize) -> Option<usize> {
        self.pair[(a - 1) * self.n + (b - 1)]
    }
}

impl CyclicLadderLottery {
    /// Builds a lottery from any bar word, storing its canonical form.
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPermutation { n, entries: vec![] });
        }
        for &c in &word {
            if c == 0 || c > n || n < 2 {
                return Err(Error::InvalidColumn { column: c, n });
            }
        }
        let word = canonicalize(n, &word);
        Ok(CyclicLadderLottery { n, word })
    }

    pub fn empty(n: usize) -> Self {
        assert!(n >= 1);
        CyclicLadderLottery { n, word: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical word, top to bottom.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn bar_count(&self) -> usize {
        self.word.len()
    }

    /// Canonical level of each bar of [`Self::word`] (1 = topmost).
    pub fn levels(&self) -> Vec<usize> {
        canonical_levels(self.n, &self.word)
    }

    /// Lotteries are stored canonically, so this is a clone; kept for
    /// symmetry with the free [`canonicalize`].
    pub fn canonicalize(&self) -> CyclicLadderLottery {
        self.clone()
    }

    /// Bottom labeling reached from the identity.
    pub fn evaluate(&self) -> Permutation {
        let mut at: Vec<usize> = (1..=self.n).collect();
        for &c in &self.word {
            at.swap(c - 1, next_column(self.n, c) - 1);
        }
        Permutation::new(at).expect("swaps keep a bijection")
    }

    /// Net rightward movement of each element; crossing the seam from line
    /// `n` to line `1` counts as rightward.
    pub fn dv_of(&self) -> DisplacementVector {
        let mut at: Vec<usize> = (1..=self.n).collect();
        let mut x = vec![0i64; self.n];
        for &c in &self.word {
            let r = next_column(self.n, c);
            let (left, right) = (at[c - 1], at[r - 1]);
            x[left - 1] += 1;
            x[right - 1] -= 1;
            at.swap(c - 1, r - 1);
        }
        DisplacementVector::new(x).expect("each bar adds +1 and -1")
    }

    fn trace(&self) -> (Crossings, bool) {
        let n = self.n;
        let mut at: Vec<usize> = (1..=n).collect();
        let mut bars = Vec::with_capacity(self.word.len());
        let mut pair = vec![None; n * n];
        let mut once = true;
        for (idx, &c) in self.word.iter().enumerate() {
            let r = next_column(n, c);
            let (left, right) = (at[c - 1], at[r - 1]);
            bars.push((left, right));
            let slot = (left - 1) * n + (right - 1);
            if pair[slot].is_some() {
                once = false;
            }
            pair[slot] = Some(idx);
            pair[(right - 1) * n + (left - 1)] = Some(idx);
            at.swap(c - 1, r - 1);
        }
        (Crossings { n, bars, pair }, once)
    }

    /// No unordered pair of elements swaps on more than one bar.
    pub fn is_at_most_once(&self) -> bool {
        self.trace().1
    }

    pub(crate) fn crossings(&self) -> Result<Crossings> {
        match self.trace() {
            (c, true) => Ok(c),
            (_, false) => Err(Error::NotAtMostOnce),
        }
    }

    /// Bars in the open word interval `(first, last)` reachable from `first`
    /// through chains of non-commuting bars.
    fn forward_closure(&self, first: usize, last: usize) -> Vec<bool> {
        let n = self.n;
        let mut hit = vec![false; n + 1];
        hit[self.word[first]] = true;
        let mut inside = vec![false; self.word.len()];
        for (p, &c) in self.word.iter().enumerate().take(last).skip(first + 1) {
            if hit[c] || hit[prev_column(n, c)] || hit[next_column(n, c)] {
                inside[p] = true;
                hit[c] = true;
            }
        }
        inside
    }

    /// Bars in `(first, last)` from which `last` is reachable.
    fn backward_closure(&self, first: usize, last: usize) -> Vec<bool> {
        let n = self.n;
        let mut hit = vec![false; n + 1];
        hit[self.word[last]] = true;
        let mut inside = vec![false; self.word.len()];
        for p in (first + 1..last).rev() {
            let c = self.word[p];
            if hit[c] || hit[prev_column(n, c)] || hit[next_column(n, c)] {
                inside[p] = true;
                hit[c] = true;
            }
        }
        inside
    }

    /// Bars that must stay above bar `b` under every commutation.
    pub(crate) fn ancestor_count(&self, b: usize) -> usize {
        if b == 0 {
            return 0;
        }
        let n = self.n;
        let mut hit = vec![false; n + 1];
        hit[self.word[b]] = true;
        let mut count = 0;
        for p in (0..b).rev() {
            let c = self.word[p];
            if hit[c] || hit[prev_column(n, c)] || hit[next_column(n, c)] {
                count += 1;
                hit[c] = true;
            }
        }
        count
    }

    fn triple_bars(cr: &Crossings, t: [usize; 3]) -> Option<[usize; 3]> {
        let [i, j, k] = t;
        let mut b = [cr.bar_of(i, j)?, cr.bar_of(i, k)?, cr.bar_of(j, k)?];
        b.sort_unstable();
        Some(b)
    }

    fn classify(&self, cr: &Crossings, bars: [usize; 3]) -> (Chirality, bool) {
        let [w1, w2, w3] = bars;
        // The element moving right at the first mutual crossing either takes
        // part in the second one (induced word (a, a+1, a), right) or it does
        // not (induced word (a, a-1, a), left).
        let mover = cr.bars[w1].0;
        let (p, q) = cr.bars[w2];
        let chirality = if p == mover || q == mover {
            Chirality::Right
        } else {
            Chirality::Left
        };
        let after_first = self.forward_closure(w1, w3);
        let before_last = self.backward_closure(w1, w3);
        let minimal = (w1 + 1..w3).all(|p| p == w2 || !(after_first[p] && before_last[p]));
        (chirality, minimal)
    }

    /// Every triple of pairwise crossing routes, in lexicographic order.
    pub fn tangled_triples(&self) -> Result<Vec<TangledTriple>> {
        let cr = self.crossings()?;
        Ok(self.triples_with(&cr))
    }

    fn triples_with(&self, cr: &Crossings) -> Vec<TangledTriple> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if cr.bar_of(i, j).is_none() {
                    continue;
                }
                for k in j + 1..=n {
                    if let Some(bars) = Self::triple_bars(cr, [i, j, k]) {
                        let (chirality, minimal) = self.classify(cr, bars);
                        out.push(TangledTriple {
                            elements: [i, j, k],
                            chirality,
                            minimal,
                        });
                    }
                }
            }
        }
        out
    }

    /// `LT(L)`: the left tangled triples.
    pub fn left_triples(&self) -> Result<BTreeSet<[usize; 3]>> {
        Ok(self
            .tangled_triples()?
            .into_iter()
            .filter(|t| t.chirality == Chirality::Left)
            .map(|t| t.elements)
            .collect())
    }

    /// Minimal triples of the given chirality, in lexicographic order.
    pub fn minimal_triples(&self, chirality: Chirality) -> Result<Vec<[usize; 3]>> {
        Ok(self
            .tangled_triples()?
            .into_iter()
            .filter(|t| t.minimal && t.chirality == chirality)
            .map(|t| t.elements)
            .collect())
    }

    /// Looks up the current status of a triple given in any order.
    pub fn triple(&self, elements: [usize; 3]) -> Result<TangledTriple> {
        let cr = self.crossings()?;
        let t = sorted_triple(elements, self.n)?;
        let bars = Self::triple_bars(&cr, t).ok_or(Error::NotTangled(t))?;
        let (chirality, minimal) = self.classify(&cr, bars);
        Ok(TangledTriple {
            elements: t,
            chirality,
            minimal,
        })
    }

    /// Braid move on a minimal tangled triple: its three crossings are made
    /// consecutive by commutations and the factor `(a, b, a)` is rewritten
    /// to `(b, a, b)`.
    pub fn apply_braid(&self, elements: [usize; 3]) -> Result<CyclicLadderLottery> {
        let cr = self.crossings()?;
        let t = sorted_triple(elements, self.n)?;
        let [w1, w2, w3] = Self::triple_bars(&cr, t).ok_or(Error::NotTangled(t))?;
        let after_first = self.forward_closure(w1, w3);
        let before_last = self.backward_closure(w1, w3);
        if (w1 + 1..w3).any(|p| p != w2 && after_first[p] && before_last[p]) {
            return Err(Error::NotMinimal(t));
        }
        let (a, b) = (self.word[w1], self.word[w2]);
        if self.word[w3] != a {
            return Err(Error::Internal(format!(
                "minimal triple {t:?} does not sit on columns (a, b, a) in {:?}",
                self.word
            )));
        }
        let mut word = Vec::with_capacity(self.word.len());
        word.extend_from_slice(&self.word[..w1]);
        word.extend(
            (w1 + 1..w3)
                .filter(|&p| !after_first[p])
                .map(|p| self.word[p]),
        );
        word.extend([b, a, b]);
        word.extend(
            (w1 + 1..w3)
                .filter(|&p| p != w2 && after_first[p])
                .map(|p| self.word[p]),
        );
        word.extend_from_slice(&self.word[w3 + 1..]);
        CyclicLadderLottery::new(self.n, word)
    }

    /// Same variant as [`Self::apply_braid`], taking a triple record.
    pub fn apply_braid_triple(&self, t: &TangledTriple) -> Result<CyclicLadderLottery> {
        self.apply_braid(t.elements)
    }
}

fn sorted_triple(mut t: [usize; 3], n: usize) -> Result<[usize; 3]> {
    t.sort_unstable();
    for &e in &t {
        if e == 0 || e > n {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
    }
    if t[0] == t[1] || t[1] == t[2] {
        return Err(Error::NotTangled(t));
    }
    Ok(t)
}

/// Builds a lottery of `π` with displacement vector `y` by repeatedly
/// inserting a bar on a productive column.
///
/// State is the current bottom labeling and, per position, the remaining
/// displacement of the element standing there. An interior column `c` is
/// productive when `y_c > y_{c+1}`; the seam is productive when `y_n >= 1`
/// and `y_1 <= -1`. Productive columns are kept in a worklist and the
/// smallest is taken first. The result is checked to be at-most-once.
pub fn construct_lottery(
    perm: &Permutation,
    y: &DisplacementVector,
) -> Result<CyclicLadderLottery> {
    if !is_valid_dv(perm, y)? {
        return Err(Error::InvalidDisplacementVector(y.entries().to_vec()));
    }
    let n = perm.n();
    let mut at: Vec<usize> = (1..=n).collect();
    let mut rest: Vec<i64> = y.entries().to_vec();
    let productive = |rest: &[i64], c: usize| -> bool {
        if n < 2 {
            false
        } else if c < n {
            rest[c - 1] > rest[c]
        } else {
            rest[n - 1] >= 1 && rest[0] <= -1
        }
    };
    let mut work: BTreeSet<usize> = (1..=n).filter(|&c| productive(&rest, c)).collect();
    let mut word = Vec::with_capacity(y.inversion_number() as usize);
    while let Some(c) = work.pop_first() {
        let r = next_column(n, c);
        at.swap(c - 1, r - 1);
        let moved_right = rest[c - 1] - 1;
        let moved_left = rest[r - 1] + 1;
        rest[c - 1] = moved_left;
        rest[r - 1] = moved_right;
        word.push(c);
        for d in [prev_column(n, c), c, r] {
            if productive(&rest, d) {
                work.insert(d);
            } else {
                work.remove(&d);
            }
        }
    }
    if rest.iter().any(|&v| v != 0) || at != perm.entries() {
        return Err(Error::Stuck);
    }
    let lottery = CyclicLadderLottery::new(n, word)?;
    if !lottery.is_at_most_once() {
        return Err(Error::NotAtMostOnce);
    }
    Ok(lottery)
}
