//! Shortest reconfiguration.
//!
//! Lotteries with the same permutation and displacement vector are connected
//! by braid moves, and the distance between two of them is the size of the
//! symmetric difference of their left-triple sets. Optimal displacement
//! vectors of a permutation are connected by max-min contractions, and the
//! distance is half the number of coordinates in which they differ.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::displacement::{is_optimal_dv, DisplacementVector};
use crate::lottery::CyclicLadderLottery;
use crate::perm::Permutation;
use crate::{Error, Result};

/// One reconfiguration step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReconfigStep {
    /// Braid move on a minimal tangled triple (sorted elements).
    #[serde(rename = "braid")]
    BraidMove([usize; 3]),
    /// Max-min contraction `T_ij`: `[max index i, min index j]`.
    #[serde(rename = "contract")]
    MaxMinContraction([usize; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconfigSequence<T> {
    pub start: T,
    pub steps: Vec<ReconfigStep>,
    pub end: T,
}

impl<T> ReconfigSequence<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Replays braid steps from `start`.
pub fn replay_braids(
    start: &CyclicLadderLottery,
    steps: &[ReconfigStep],
) -> Result<CyclicLadderLottery> {
    steps.iter().try_fold(start.clone(), |l, s| match s {
        ReconfigStep::BraidMove(t) => l.apply_braid(*t),
        ReconfigStep::MaxMinContraction(_) => Err(Error::Internal(
            "contraction step in a lottery sequence".into(),
        )),
    })
}

/// Replays contraction steps from `start`.
pub fn replay_contractions(
    start: &DisplacementVector,
    steps: &[ReconfigStep],
) -> Result<DisplacementVector> {
    steps.iter().try_fold(start.clone(), |x, s| match s {
        ReconfigStep::MaxMinContraction([i, j]) => x.contract(*i, *j),
        ReconfigStep::BraidMove(_) => {
            Err(Error::Internal("braid step in a vector sequence".into()))
        }
    })
}

/// Braids the lottery until the crossing of routes `i` and `i + 1` (cyclic)
/// has no bar above it.
///
/// Each round either braids the triple formed by `i`, `i + 1` and the route
/// met just above their crossing on both sides (parallel strands inside the
/// region they enclose), or braids a minimal triple through `i` or `i + 1`
/// that pushes an interior crossing out of that region. Every round lowers
/// the number of bars forced above the crossing.
pub fn push_to_top(
    lottery: &CyclicLadderLottery,
    i: usize,
) -> Result<(CyclicLadderLottery, ReconfigSequence<CyclicLadderLottery>)> {
    let n = lottery.n();
    if i == 0 || i > n {
        return Err(Error::ElementOutOfRange { element: i, n });
    }
    let k = i % n + 1;
    let mut current = lottery.clone();
    let mut steps = Vec::new();
    loop {
        let cr = current.crossings()?;
        let b = cr.bar_of(i, k).ok_or(Error::RoutesDoNotCross(i, k))?;
        let above = current.ancestor_count(b);
        if above == 0 {
            break;
        }
        let mut candidates: Vec<[usize; 3]> = Vec::new();
        let prev_on = |e: usize| {
            (0..b)
                .rev()
                .find(|&p| cr.bars[p].0 == e || cr.bars[p].1 == e)
        };
        if let (Some(u), Some(v)) = (prev_on(i), prev_on(k)) {
            let other = |p: usize, e: usize| {
                if cr.bars[p].0 == e {
                    cr.bars[p].1
                } else {
                    cr.bars[p].0
                }
            };
            let (ju, jv) = (other(u, i), other(v, k));
            if ju == jv {
                let mut t = [i, k, ju];
                t.sort_unstable();
                candidates.push(t);
            }
        }
        for t in current.tangled_triples()? {
            if !t.minimal || candidates.contains(&t.elements) {
                continue;
            }
            let has_i = t.elements.contains(&i);
            let has_k = t.elements.contains(&k);
            if has_i != has_k {
                candidates.push(t.elements);
            }
        }
        let mut advanced = false;
        for t in candidates {
            let Ok(next) = current.apply_braid(t) else {
                continue;
            };
            let nb = next
                .crossings()?
                .bar_of(i, k)
                .expect("braid keeps crossings");
            if next.ancestor_count(nb) < above {
                current = next;
                steps.push(ReconfigStep::BraidMove(t));
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Err(Error::Internal(format!(
                "no braid move lowers the crossing of {i} and {k} in {current:?}"
            )));
        }
    }
    let seq = ReconfigSequence {
        start: lottery.clone(),
        steps,
        end: current.clone(),
    };
    Ok((current, seq))
}

fn check_same_class(a: &CyclicLadderLottery, b: &CyclicLadderLottery) -> Result<()> {
    if !a.is_at_most_once() || !b.is_at_most_once() {
        return Err(Error::NotAtMostOnce);
    }
    if a.n() != b.n() || a.evaluate() != b.evaluate() || a.dv_of() != b.dv_of() {
        return Err(Error::ClassMismatch);
    }
    Ok(())
}

/// `LT(L) Δ LT(L')`.
pub fn lt_symmetric_difference(
    a: &CyclicLadderLottery,
    b: &CyclicLadderLottery,
) -> Result<BTreeSet<[usize; 3]>> {
    check_same_class(a, b)?;
    let la = a.left_triples()?;
    let lb = b.left_triples()?;
    Ok(la.symmetric_difference(&lb).copied().collect())
}

/// Length of a shortest braid-move sequence between two lotteries of one class.
pub fn cll_distance(a: &CyclicLadderLottery, b: &CyclicLadderLottery) -> Result<usize> {
    Ok(lt_symmetric_difference(a, b)?.len())
}

/// A shortest braid-move sequence from `a` to `b`.
///
/// Repeatedly braids a triple of the symmetric difference that is minimal in
/// the current lottery (lexicographically smallest first); when none is,
/// a triple minimal on the target side is braided there and the step is
/// appended to the tail of the path instead.
pub fn cll_path(
    a: &CyclicLadderLottery,
    b: &CyclicLadderLottery,
) -> Result<ReconfigSequence<CyclicLadderLottery>> {
    let budget = cll_distance(a, b)?;
    let mut front = a.clone();
    let mut back = b.clone();
    let mut head = Vec::new();
    let mut tail = Vec::new();
    while front != back {
        if head.len() + tail.len() >= budget {
            return Err(Error::Internal("braid path exceeds |LT Δ LT'|".into()));
        }
        let diff = lt_symmetric_difference(&front, &back)?;
        let pick = |l: &CyclicLadderLottery| -> Result<Option<[usize; 3]>> {
            Ok(l.tangled_triples()?
                .into_iter()
                .find(|t| t.minimal && diff.contains(&t.elements))
                .map(|t| t.elements))
        };
        if let Some(t) = pick(&front)? {
            front = front.apply_braid(t)?;
            head.push(ReconfigStep::BraidMove(t));
        } else if let Some(t) = pick(&back)? {
            back = back.apply_braid(t)?;
            tail.push(ReconfigStep::BraidMove(t));
        } else {
            return Err(Error::Internal(format!(
                "no minimal triple in the symmetric difference of {front:?} and {back:?}"
            )));
        }
    }
    head.extend(tail.into_iter().rev());
    Ok(ReconfigSequence {
        start: a.clone(),
        steps: head,
        end: b.clone(),
    })
}

/// Number of coordinates in which two vectors differ.
pub fn dv_symmetric_difference(x: &DisplacementVector, y: &DisplacementVector) -> Result<usize> {
    if x.n() != y.n() {
        return Err(Error::DimensionMismatch {
            expected: x.n(),
            actual: y.n(),
        });
    }
    Ok(x.entries()
        .iter()
        .zip(y.entries())
        .filter(|(a, b)| a != b)
        .count())
}

fn check_optimal_pair(
    x: &DisplacementVector,
    y: &DisplacementVector,
    perm: &Permutation,
) -> Result<usize> {
    let delta = dv_symmetric_difference(x, y)?;
    for v in [x, y] {
        if !is_optimal_dv(perm, v)? {
            return Err(Error::NotOptimal(v.entries().to_vec()));
        }
    }
    if delta % 2 != 0 {
        return Err(Error::Internal(format!(
            "optimal vectors {x:?} and {y:?} differ in an odd number of places"
        )));
    }
    Ok(delta)
}

/// Length of a shortest max-min contraction sequence between two optimal
/// vectors of `π`.
pub fn dv_distance(
    x: &DisplacementVector,
    y: &DisplacementVector,
    perm: &Permutation,
) -> Result<usize> {
    Ok(check_optimal_pair(x, y, perm)? / 2)
}

/// A shortest max-min contraction sequence from `x` to `y`.
///
/// Every differing coordinate holds `max` on one side and `min` on the
/// other; coordinates going down are paired in index order with
/// coordinates going up and each pair is contracted once.
pub fn dv_path(
    x: &DisplacementVector,
    y: &DisplacementVector,
    perm: &Permutation,
) -> Result<ReconfigSequence<DisplacementVector>> {
    check_optimal_pair(x, y, perm)?;
    let (hi, lo) = (x.max_entry(), x.min_entry());
    let mut down = Vec::new();
    let mut up = Vec::new();
    for a in 1..=x.n() {
        let (from, to) = (x.get(a), y.get(a));
        if from == to {
            continue;
        }
        if from == hi && to == lo {
            down.push(a);
        } else if from == lo && to == hi {
            up.push(a);
        } else {
            return Err(Error::Internal(format!(
                "coordinate {a} moves from {from} to {to}, not between max and min"
            )));
        }
    }
    if down.len() != up.len() {
        return Err(Error::Internal("unbalanced max-min pairing".into()));
    }
    let steps: Vec<ReconfigStep> = down
        .into_iter()
        .zip(up)
        .map(|(a, b)| ReconfigStep::MaxMinContraction([a, b]))
        .collect();
    Ok(ReconfigSequence {
        start: x.clone(),
        steps,
        end: y.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lottery::construct_lottery;

    fn cll(n: usize, word: &[usize]) -> CyclicLadderLottery {
        CyclicLadderLottery::new(n, word.to_vec()).unwrap()
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn dv(v: &[i64]) -> DisplacementVector {
        DisplacementVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn push_to_top_examples() {
        let l = cll(4, &[1, 2, 1]);
        let (m, seq) = push_to_top(&l, 1).unwrap();
        assert_eq!(m, l);
        assert!(seq.is_empty());

        let l = cll(4, &[2, 1, 2, 3]);
        let (m, seq) = push_to_top(&l, 1).unwrap();
        assert_eq!(seq.steps, vec![ReconfigStep::BraidMove([1, 2, 3])]);
        assert_eq!(replay_braids(&l, &seq.steps).unwrap(), m);
        assert_eq!(m.word()[0], 1);
        assert_eq!(m.levels()[0], 1);

        assert_eq!(
            push_to_top(&l, 3).unwrap_err(),
            Error::RoutesDoNotCross(3, 4)
        );
    }

    #[test]
    fn three_cycle_class_distance() {
        let a = cll(4, &[1, 2, 1]);
        let b = cll(4, &[2, 1, 2]);
        assert_eq!(lt_symmetric_difference(&a, &a).unwrap(), BTreeSet::new());
        assert_eq!(
            lt_symmetric_difference(&a, &b).unwrap(),
            BTreeSet::from([[1, 2, 3]])
        );
        assert_eq!(cll_distance(&a, &b).unwrap(), 1);
        let p = cll_path(&a, &b).unwrap();
        assert_eq!(p.steps, vec![ReconfigStep::BraidMove([1, 2, 3])]);
        assert!(cll_path(&a, &a).unwrap().is_empty());
    }

    #[test]
    fn class_mismatch_is_reported() {
        let a = construct_lottery(&perm(&[4, 2, 6, 1, 5, 3]), &dv(&[-3, 0, -3, 3, 0, 3])).unwrap();
        let b = construct_lottery(&perm(&[4, 2, 6, 1, 5, 3]), &dv(&[-3, 0, 3, -3, 0, 3])).unwrap();
        assert_eq!(cll_distance(&a, &b), Err(Error::ClassMismatch));
        assert_eq!(cll_path(&a, &b).unwrap_err(), Error::ClassMismatch);
        assert_eq!(
            cll_distance(&cll(3, &[1, 2, 3]), &a),
            Err(Error::NotAtMostOnce)
        );
    }

    #[test]
    fn dv_examples() {
        let p = perm(&[4, 2, 6, 1, 5, 3]);
        let x = dv(&[-3, 0, -3, 3, 0, 3]);
        let y = dv(&[-3, 0, 3, -3, 0, 3]);
        assert_eq!(dv_symmetric_difference(&x, &x).unwrap(), 0);
        assert_eq!(dv_symmetric_difference(&x, &y).unwrap(), 2);
        assert_eq!(dv_distance(&x, &y, &p).unwrap(), 1);
        assert_eq!(dv_distance(&x, &x, &p).unwrap(), 0);
        let path = dv_path(&y, &x, &p).unwrap();
        assert_eq!(path.steps, vec![ReconfigStep::MaxMinContraction([3, 4])]);
        assert_eq!(replay_contractions(&y, &path.steps).unwrap(), x);
        assert!(dv_path(&x, &x, &p).unwrap().is_empty());
    }

    #[test]
    fn dv_rejects_non_optimal() {
        let id = Permutation::identity(2);
        assert_eq!(
            dv_distance(&dv(&[2, -2]), &dv(&[0, 0]), &id),
            Err(Error::NotOptimal(vec![2, -2]))
        );
        assert!(dv_symmetric_difference(&dv(&[0, 0]), &dv(&[0, 0, 0])).is_err());
    }

    #[test]
    fn sequence_json_shape() {
        let p = perm(&[4, 2, 6, 1, 5, 3]);
        let path = dv_path(&dv(&[-3, 0, 3, -3, 0, 3]), &dv(&[-3, 0, -3, 3, 0, 3]), &p).unwrap();
        assert_eq!(
            serde_json::to_string(&path).unwrap(),
            r#"{"start":[-3,0,3,-3,0,3],"steps":[{"contract":[3,4]}],"end":[-3,0,-3,3,0,3]}"#
        );
        let s: ReconfigStep = serde_json::from_str(r#"{"braid":[1,2,3]}"#).unwrap();
        assert_eq!(s, ReconfigStep::BraidMove([1, 2, 3]));
    }
}
