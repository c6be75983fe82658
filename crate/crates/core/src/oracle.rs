//! Brute-force ground truth at small `n`.
//!
//! Nothing here uses the structural results the main modules rely on: bar
//! words are searched exhaustively, optimal vectors are found by scanning a
//! box of valid vectors, and distances come from breadth-first search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::displacement::{base_dv, is_valid_dv, optimal_dv, DisplacementVector};
use crate::enumerate::{dv_root, enum_all, enum_cll, enum_dv};
use crate::lottery::{canonicalize, construct_lottery, CyclicLadderLottery};
use crate::perm::Permutation;
use crate::reconfig::{
    cll_distance, cll_path, dv_distance, dv_path, replay_braids, replay_contractions,
};
use crate::{Error, Result};

/// Default cap on the number of words or states a search may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// One oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForceReport {
    pub instance: String,
    pub expected: Value,
    pub actual: Value,
    pub agree: bool,
}

impl BruteForceReport {
    fn new(instance: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let agree = expected == actual;
        BruteForceReport {
            instance: instance.into(),
            expected,
            actual,
            agree,
        }
    }
}

/// All permutations of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).expect("itertools yields bijections"))
}

fn swap_column(at: &mut [usize], c: usize) {
    let n = at.len();
    at.swap(c - 1, c % n);
}

fn evaluate_word(n: usize, word: &[usize]) -> Vec<usize> {
    let mut at: Vec<usize> = (1..=n).collect();
    for &c in word {
        swap_column(&mut at, c);
    }
    at
}

/// Fewest bars of any lottery of `π`, by breadth-first search over bottom
/// labelings.
pub fn min_bar_count(perm: &Permutation) -> usize {
    let n = perm.n();
    let start: Vec<usize> = (1..=n).collect();
    if start == perm.entries() {
        return 0;
    }
    let mut dist: BTreeMap<Vec<usize>, usize> = BTreeMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        for c in 1..=n {
            let mut next = cur.clone();
            swap_column(&mut next, c);
            if dist.contains_key(&next) {
                continue;
            }
            if next == perm.entries() {
                return d + 1;
            }
            dist.insert(next.clone(), d + 1);
            queue.push_back(next);
        }
    }
    unreachable!("adjacent transpositions generate the symmetric group")
}

/// Canonical words of each length `0..=max_bars`, grown one bar at a time.
/// With `at_most_once`, words in which some pair of elements swaps twice are
/// dropped (their extensions never qualify).
pub fn canonical_words(
    n: usize,
    max_bars: usize,
    at_most_once: bool,
    budget: u64,
) -> Result<Vec<BTreeSet<Vec<usize>>>> {
    let mut layers = vec![BTreeSet::from([Vec::new()])];
    let mut visited: u64 = 1;
    let columns: Vec<usize> = if n == 1 { vec![] } else { (1..=n).collect() };
    for _ in 0..max_bars {
        let mut next = BTreeSet::new();
        for w in layers.last().expect("non-empty") {
            for &c in &columns {
                visited += 1;
                if visited > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                let mut ext = w.clone();
                ext.push(c);
                if at_most_once && !swaps_each_pair_once(n, &ext) {
                    continue;
                }
                next.insert(canonicalize(n, &ext));
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    Ok(layers)
}

fn swaps_each_pair_once(n: usize, word: &[usize]) -> bool {
    let mut at: Vec<usize> = (1..=n).collect();
    let mut seen = BTreeSet::new();
    for &c in word {
        let (a, b) = (at[c - 1], at[c % n]);
        if !seen.insert((a.min(b), a.max(b))) {
            return false;
        }
        swap_column(&mut at, c);
    }
    true
}

/// Result of an exhaustive word search for one permutation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LotterySearch {
    /// Every canonical lottery of `π` with at most `max_bars` bars.
    pub lotteries: BTreeSet<CyclicLadderLottery>,
    /// The members in which every pair of routes crosses at most once.
    pub at_most_once: BTreeSet<CyclicLadderLottery>,
    /// Fewest bars found, if any lottery was found.
    pub min_bars: Option<usize>,
}

/// Every canonical lottery of `π` with at most `max_bars` bars.
pub fn brute_lotteries(perm: &Permutation, max_bars: usize, budget: u64) -> Result<LotterySearch> {
    let n = perm.n();
    let layers = canonical_words(n, max_bars, false, budget)?;
    let mut out = LotterySearch::default();
    for (len, layer) in layers.iter().enumerate() {
        for w in layer {
            if evaluate_word(n, w) != perm.entries() {
                continue;
            }
            out.min_bars.get_or_insert(len);
            let l = CyclicLadderLottery::new(n, w.clone())?;
            if swaps_each_pair_once(n, w) {
                out.at_most_once.insert(l.clone());
            }
            out.lotteries.insert(l);
        }
    }
    Ok(out)
}

/// Minimum-bar lotteries of `π`.
pub fn brute_optimal_lotteries(
    perm: &Permutation,
    budget: u64,
) -> Result<BTreeSet<CyclicLadderLottery>> {
    let k = min_bar_count(perm);
    let found = brute_lotteries(perm, k, budget)?;
    Ok(found
        .lotteries
        .into_iter()
        .filter(|l| l.bar_count() == k)
        .collect())
}

/// Key of a class: bottom labeling and displacement vector.
pub type ClassKey = (Permutation, DisplacementVector);

/// Every lottery on `n` lines in which each pair of routes crosses at most
/// once, grouped by class.
pub fn at_most_once_classes(
    n: usize,
    budget: u64,
) -> Result<BTreeMap<ClassKey, BTreeSet<CyclicLadderLottery>>> {
    let max_bars = n * (n - 1) / 2;
    let mut out: BTreeMap<ClassKey, BTreeSet<CyclicLadderLottery>> = BTreeMap::new();
    for layer in canonical_words(n, max_bars, true, budget)? {
        for w in layer {
            let l = CyclicLadderLottery::new(n, w)?;
            out.entry((l.evaluate(), l.dv_of())).or_default().insert(l);
        }
    }
    Ok(out)
}

fn inversion_count_by_walk(n: usize, x: &DisplacementVector) -> u64 {
    // count pairs of straight-line routes on the universal cover that meet,
    // treating every translate of the second route separately
    let mut total = 0u64;
    for i in 1..=n {
        for j in i + 1..=n {
            let (si, ei) = (i as i64, i as i64 + x.get(i));
            let reach = (x.get(i).abs() + x.get(j).abs()) / n as i64 + 2;
            for shift in -reach..=reach {
                let (sj, ej) = (
                    j as i64 + shift * n as i64,
                    j as i64 + x.get(j) + shift * n as i64,
                );
                if (si - sj).signum() * (ei - ej).signum() < 0 {
                    total += 1;
                }
            }
        }
    }
    total
}

/// Optimal displacement vectors of `π`: valid vectors `base_dv(π) + n·k`
/// with every `|k_i| <= radius` that minimize the inversion number.
pub fn brute_optimal_dvs_within(perm: &Permutation, radius: i64) -> BTreeSet<DisplacementVector> {
    let n = perm.n();
    let base = base_dv(perm);
    let mut best = u64::MAX;
    let mut out = BTreeSet::new();
    let range: Vec<i64> = (-radius..=radius).collect();
    for ks in std::iter::repeat_n(range.iter(), n).multi_cartesian_product() {
        if ks.iter().copied().sum::<i64>() != 0 {
            continue;
        }
        let entries: Vec<i64> = (0..n)
            .map(|i| base.entries()[i] + *ks[i] * n as i64)
            .collect();
        let x = DisplacementVector::new(entries).expect("shifts keep the sum");
        let inv = inversion_count_by_walk(n, &x);
        if inv < best {
            best = inv;
            out.clear();
        }
        if inv == best {
            out.insert(x);
        }
    }
    out
}

/// [`brute_optimal_dvs_within`] with radius 2.
pub fn brute_optimal_dvs(perm: &Permutation) -> BTreeSet<DisplacementVector> {
    brute_optimal_dvs_within(perm, 2)
}

/// Unweighted shortest path length from `a` to `b`.
pub fn bfs_distance<T, F>(a: &T, b: &T, mut neighbors: F, budget: u64) -> Result<usize>
where
    T: Ord + Clone,
    F: FnMut(&T) -> Vec<T>,
{
    let mut dist = BTreeMap::from([(a.clone(), 0usize)]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if &cur == b {
            return Ok(d);
        }
        for nb in neighbors(&cur) {
            if !dist.contains_key(&nb) {
                if dist.len() as u64 >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                dist.insert(nb.clone(), d + 1);
                queue.push_back(nb);
            }
        }
    }
    Err(Error::Unreachable)
}

/// Lotteries one braid move away: for each triple of crossing routes whose
/// three bars can be made adjacent as `(a, b, a)` by commutations.
pub fn braid_neighbors(l: &CyclicLadderLottery) -> Vec<CyclicLadderLottery> {
    let n = l.n();
    let w = l.word();
    let mut out = BTreeSet::new();
    // search the commutation class for words with an (a, b, a) factor
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut stack = vec![w.to_vec()];
    while let Some(word) = stack.pop() {
        for p in 0..word.len().saturating_sub(2) {
            let (a, b, c) = (word[p], word[p + 1], word[p + 2]);
            if a == c && a != b && adjacent(n, a, b) {
                let mut nw = word.clone();
                nw[p] = b;
                nw[p + 1] = a;
                nw[p + 2] = b;
                out.insert(CyclicLadderLottery::new(n, nw).expect("columns in range"));
            }
        }
        for p in 0..word.len().saturating_sub(1) {
            if !adjacent(n, word[p], word[p + 1]) && word[p] != word[p + 1] {
                let mut nw = word.clone();
                nw.swap(p, p + 1);
                if seen.insert(nw.clone()) {
                    stack.push(nw);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn adjacent(n: usize, a: usize, b: usize) -> bool {
    n >= 3 && (a % n + 1 == b || b % n + 1 == a)
}

/// Vectors one max-min contraction away.
pub fn contraction_neighbors(x: &DisplacementVector) -> Vec<DisplacementVector> {
    let n = x.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if let Ok(y) = x.contract(i, j) {
                out.push(y);
            }
        }
    }
    out
}

/// Largest `inv(optimal_dv(π))` over all `π` of `[n]`, with its maximizers.
pub fn longest_scan(n: usize) -> (u64, BTreeSet<Permutation>) {
    let mut best = 0;
    let mut arg = BTreeSet::new();
    for p in all_permutations(n) {
        let v = optimal_dv(&p).inversion_number();
        if v > best {
            best = v;
            arg.clear();
        }
        if v == best {
            arg.insert(p);
        }
    }
    (best, arg)
}

pub fn reverse_identity_min_inv(n: usize) -> u64 {
    optimal_dv(&Permutation::reverse_identity(n)).inversion_number()
}

/// `(m+1, ..., 2m-1, 1, ..., m)`.
pub fn odd_rotation_high(m: usize) -> Permutation {
    Permutation::new((m + 1..2 * m).chain(1..=m).collect()).expect("rotation")
}

/// `(m, ..., 2m-1, 1, ..., m-1)`.
pub fn odd_rotation_low(m: usize) -> Permutation {
    Permutation::new((m..2 * m).chain(1..m).collect()).expect("rotation")
}

/// `(m+1, ..., 2m, 1, ..., m)`.
pub fn even_rotation(m: usize) -> Permutation {
    Permutation::new((m + 1..=2 * m).chain(1..=m).collect()).expect("rotation")
}

fn sorted_entries(x: &DisplacementVector) -> Vec<i64> {
    let mut v = x.entries().to_vec();
    v.sort_unstable();
    v
}

fn multiset(groups: &[(i64, usize)]) -> Vec<i64> {
    let mut v: Vec<i64> = groups
        .iter()
        .flat_map(|&(val, k)| std::iter::repeat_n(val, k))
        .collect();
    v.sort_unstable();
    v
}

/// Entry multisets of every optimal vector of the three rotations for `m`.
pub fn rotation_multisets_check(m: usize) -> BruteForceReport {
    let mi = m as i64;
    let cases = [
        (odd_rotation_high(m), multiset(&[(mi - 1, m), (-mi, m - 1)])),
        (odd_rotation_low(m), multiset(&[(mi, m - 1), (1 - mi, m)])),
        (even_rotation(m), multiset(&[(mi, m), (-mi, m)])),
    ];
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    for (p, want) in cases {
        let got: BTreeSet<Vec<i64>> = brute_optimal_dvs(&p).iter().map(sorted_entries).collect();
        expected.push(json!({"perm": p, "multisets": [want]}));
        actual.push(json!({"perm": p, "multisets": got}));
    }
    BruteForceReport::new(format!("rotation multisets, m={m}"), expected, actual)
}

/// Value of the reverse identity's minimum inversion number by the closed
/// form for `n = 2m - 1` and `n = 2m`.
pub fn reverse_identity_formula(n: usize) -> u64 {
    let m = n.div_ceil(2) as u64;
    if n % 2 == 1 {
        (m - 1) * (m - 1)
    } else if m % 2 == 1 {
        m * (m - 1) + 1
    } else {
        m * (m - 1)
    }
}

/// Maximum of the minimum inversion number over `π` of `[n]`, with the
/// permutations attaining it.
pub fn longest_formula(n: usize) -> (u64, BTreeSet<Permutation>) {
    let m = n.div_ceil(2);
    if n % 2 == 1 {
        let arg = BTreeSet::from([odd_rotation_high(m), odd_rotation_low(m)]);
        ((m * (m - 1)) as u64, arg)
    } else {
        ((m * m) as u64, BTreeSet::from([even_rotation(m)]))
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 7] = [
    "longest",
    "remark",
    "rotations",
    "distances",
    "enumeration",
    "roundtrip",
    "optimal",
];

/// Runs a named comparison suite for every `n` up to `max_n` (each suite
/// also has its own cap).
pub fn run_suite(name: &str, max_n: usize, budget: u64) -> Result<Vec<BruteForceReport>> {
    match name {
        "longest" => Ok((3..=max_n.min(8)).map(suite_longest).collect()),
        "remark" => Ok((3..=max_n.min(10)).map(suite_remark).collect()),
        "rotations" => Ok((2..=4)
            .filter(|m| 2 * m <= max_n)
            .map(rotation_multisets_check)
            .collect()),
        "distances" => {
            let mut out = Vec::new();
            for n in 1..=max_n.min(5) {
                out.push(suite_lottery_distances(n, budget)?);
            }
            for n in 1..=max_n.min(6) {
                out.push(suite_dv_distances(n, budget)?);
            }
            Ok(out)
        }
        "enumeration" => {
            let mut out = Vec::new();
            for n in 1..=max_n.min(5) {
                out.push(suite_enum_lotteries(n, budget)?);
                out.push(suite_enum_classes(n, budget)?);
            }
            for n in 1..=max_n.min(6) {
                out.push(suite_enum_dvs(n));
            }
            Ok(out)
        }
        "roundtrip" => (1..=max_n.min(5))
            .map(|n| suite_roundtrip(n, budget))
            .collect(),
        "optimal" => Ok((1..=max_n.min(6)).map(suite_optimal).collect()),
        other => Err(Error::Internal(format!("unknown suite {other:?}"))),
    }
}

fn suite_longest(n: usize) -> BruteForceReport {
    BruteForceReport::new(
        format!("longest, n={n}"),
        longest_formula(n),
        longest_scan(n),
    )
}

fn suite_remark(n: usize) -> BruteForceReport {
    let mut actual = vec![reverse_identity_min_inv(n)];
    let mut expected = vec![reverse_identity_formula(n)];
    if n <= 6 {
        actual.push(min_bar_count(&Permutation::reverse_identity(n)) as u64);
        expected.push(reverse_identity_formula(n));
    }
    BruteForceReport::new(format!("reverse identity, n={n}"), expected, actual)
}

fn suite_optimal(n: usize) -> BruteForceReport {
    let mut mismatches = Vec::new();
    for p in all_permutations(n) {
        let x = optimal_dv(&p);
        let brute = brute_optimal_dvs(&p);
        let ok = x.inversion_number() == min_bar_count(&p) as u64
            && brute.contains(&x)
            && brute.last() == Some(&dv_root(&p));
        if !ok {
            mismatches.push(p);
        }
    }
    BruteForceReport::new(
        format!("optimal vectors, n={n}"),
        Vec::<Permutation>::new(),
        mismatches,
    )
}

fn suite_enum_dvs(n: usize) -> BruteForceReport {
    let mut mismatches = Vec::new();
    for p in all_permutations(n) {
        let listed: Vec<_> = enum_dv(&p).collect();
        let set: BTreeSet<_> = listed.iter().cloned().collect();
        if set.len() != listed.len() || set != brute_optimal_dvs(&p) {
            mismatches.push(p);
        }
    }
    BruteForceReport::new(
        format!("vector enumeration, n={n}"),
        Vec::<Permutation>::new(),
        mismatches,
    )
}

fn suite_enum_lotteries(n: usize, budget: u64) -> Result<BruteForceReport> {
    let mut mismatches = Vec::new();
    for p in all_permutations(n) {
        let listed: Vec<_> = enum_all(&p).collect();
        let set: BTreeSet<_> = listed.iter().cloned().collect();
        if set.len() != listed.len() || set != brute_optimal_lotteries(&p, budget)? {
            mismatches.push(p);
        }
    }
    Ok(BruteForceReport::new(
        format!("lottery enumeration, n={n}"),
        Vec::<Permutation>::new(),
        mismatches,
    ))
}

fn suite_enum_classes(n: usize, budget: u64) -> Result<BruteForceReport> {
    let mut mismatches = Vec::new();
    for ((p, y), class) in at_most_once_classes(n, budget)? {
        let listed: Vec<_> = enum_cll(&p, &y)?.collect();
        let set: BTreeSet<_> = listed.iter().cloned().collect();
        let roots = class
            .iter()
            .filter(|l| l.left_triples().map(|t| t.is_empty()).unwrap_or(false))
            .count();
        if set.len() != listed.len() || set != class || roots != 1 {
            mismatches.push(json!({"perm": p, "dv": y}));
        }
    }
    Ok(BruteForceReport::new(
        format!("class enumeration, n={n}"),
        Vec::<Value>::new(),
        mismatches,
    ))
}

fn suite_lottery_distances(n: usize, budget: u64) -> Result<BruteForceReport> {
    let mut mismatches = Vec::new();
    for ((p, y), class) in at_most_once_classes(n, budget)? {
        let graph: BTreeMap<_, _> = class
            .iter()
            .map(|l| (l.clone(), braid_neighbors(l)))
            .collect();
        for a in &class {
            for b in &class {
                let bfs = bfs_distance(a, b, |l| graph[l].clone(), budget)?;
                let formula = cll_distance(a, b)?;
                let path = cll_path(a, b)?;
                let replayed = replay_braids(a, &path.steps)?;
                if bfs != formula || path.len() != bfs || &replayed != b {
                    mismatches.push(json!({"perm": p, "dv": y, "from": a, "to": b}));
                }
            }
        }
    }
    Ok(BruteForceReport::new(
        format!("braid distances, n={n}"),
        Vec::<Value>::new(),
        mismatches,
    ))
}

fn suite_dv_distances(n: usize, budget: u64) -> Result<BruteForceReport> {
    let mut mismatches = Vec::new();
    for p in all_permutations(n) {
        let vectors: Vec<_> = brute_optimal_dvs(&p).into_iter().collect();
        for x in &vectors {
            for y in &vectors {
                let bfs = bfs_distance(x, y, contraction_neighbors, budget)?;
                let formula = dv_distance(x, y, &p)?;
                let path = dv_path(x, y, &p)?;
                let replayed = replay_contractions(x, &path.steps)?;
                if bfs != formula || path.len() != bfs || &replayed != y {
                    mismatches.push(json!({"perm": p, "from": x, "to": y}));
                }
            }
        }
    }
    Ok(BruteForceReport::new(
        format!("contraction distances, n={n}"),
        Vec::<Value>::new(),
        mismatches,
    ))
}

fn suite_roundtrip(n: usize, budget: u64) -> Result<BruteForceReport> {
    let mut mismatches = Vec::new();
    for (p, y) in at_most_once_classes(n, budget)?.into_keys() {
        let ok = match construct_lottery(&p, &y) {
            Ok(l) => {
                l.evaluate() == p
                    && l.dv_of() == y
                    && l.bar_count() as u64 == y.inversion_number()
                    && is_valid_dv(&p, &y)?
            }
            Err(_) => false,
        };
        if !ok {
            mismatches.push(json!({"perm": p, "dv": y}));
        }
    }
    Ok(BruteForceReport::new(
        format!("construction round trip, n={n}"),
        Vec::<Value>::new(),
        mismatches,
    ))
}
