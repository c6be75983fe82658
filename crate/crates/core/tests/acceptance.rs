//! Acceptance checks. Runs as a plain binary and prints one line per
//! criterion; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclads::displacement::{is_optimal_dv, is_valid_dv};
use cyclads::enumerate::{enum_all, enum_cll, enum_dv, TraversalStats};
use cyclads::oracle::{
    all_permutations, at_most_once_classes, bfs_distance, braid_neighbors, brute_optimal_dvs,
    brute_optimal_lotteries, contraction_neighbors, longest_scan, min_bar_count,
    reverse_identity_min_inv, rotation_multisets_check, DEFAULT_BUDGET,
};
use cyclads::reconfig::{
    cll_distance, cll_path, dv_distance, dv_path, dv_symmetric_difference, lt_symmetric_difference,
    replay_braids, replay_contractions,
};
use cyclads::{CyclicLadderLottery, DisplacementVector, Error, Permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn dv(v: &[i64]) -> DisplacementVector {
    DisplacementVector::new(v.to_vec()).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reverse_identity_values() -> Outcome {
    let expected: [(usize, u64); 8] = [
        (3, 1),
        (4, 2),
        (5, 4),
        (6, 7),
        (7, 9),
        (8, 12),
        (9, 16),
        (10, 21),
    ];
    let mut slowest = Duration::ZERO;
    for (n, want) in expected {
        let t = Instant::now();
        let got = reverse_identity_min_inv(n);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        check(got == want, || format!("n={n}: got {got}, want {want}"))?;
        check(dt < Duration::from_secs(1), || {
            format!("n={n}: took {dt:?}")
        })?;
    }
    let t = Instant::now();
    for (n, want) in expected.iter().filter(|(n, _)| *n <= 6) {
        let got = min_bar_count(&Permutation::reverse_identity(*n)) as u64;
        check(got == *want, || {
            format!("exhaustive n={n}: got {got}, want {want}")
        })?;
    }
    let oracle = t.elapsed();
    check(oracle < Duration::from_secs(60), || {
        format!("exhaustive search took {oracle:?}")
    })?;
    Ok(format!(
        "n=3..10 exact, slowest {slowest:?}, exhaustive n<=6 in {oracle:?}"
    ))
}

fn longest_values() -> Outcome {
    let cases: Vec<(usize, u64, Vec<Vec<usize>>)> = vec![
        (3, 2, vec![vec![3, 1, 2], vec![2, 3, 1]]),
        (4, 4, vec![vec![3, 4, 1, 2]]),
        (5, 6, vec![vec![4, 5, 1, 2, 3], vec![3, 4, 5, 1, 2]]),
        (6, 9, vec![vec![4, 5, 6, 1, 2, 3]]),
        (
            7,
            12,
            vec![vec![5, 6, 7, 1, 2, 3, 4], vec![4, 5, 6, 7, 1, 2, 3]],
        ),
        (8, 16, vec![vec![5, 6, 7, 8, 1, 2, 3, 4]]),
    ];
    let mut at8 = Duration::ZERO;
    for (n, want, arg) in cases {
        let t = Instant::now();
        let (got, got_arg) = longest_scan(n);
        let dt = t.elapsed();
        if n == 8 {
            at8 = dt;
        }
        let want_arg: BTreeSet<Permutation> = arg.iter().map(|v| perm(v)).collect();
        check(got == want, || format!("n={n}: max {got}, want {want}"))?;
        check(got_arg == want_arg, || format!("n={n}: argmax {got_arg:?}"))?;
        check(dt < Duration::from_secs(600), || {
            format!("n={n}: took {dt:?}")
        })?;
    }
    Ok(format!(
        "n=3..8 exact maxima and maximizers, n=8 scan {at8:?}"
    ))
}

fn rotation_multisets() -> Outcome {
    for m in 2..=4 {
        let r = rotation_multisets_check(m);
        check(r.agree, || serde_json::to_string(&r).unwrap())?;
    }
    Ok("m=2,3,4 all optimal vectors match".into())
}

fn eight_line_vector() -> Outcome {
    let p = perm(&[4, 7, 5, 3, 1, 2, 6, 8]);
    let x = dv(&[-4, 4, 1, -3, -2, 1, 3, 0]);
    check(is_valid_dv(&p, &x) == Ok(true), || {
        "vector is not valid".into()
    })?;
    check(is_optimal_dv(&p, &x) == Ok(true), || {
        "vector is not optimal".into()
    })?;
    let bars = min_bar_count(&p) as u64;
    check(x.inversion_number() == bars, || {
        format!("inv {} but {bars} bars suffice", x.inversion_number())
    })?;
    Ok(format!(
        "valid and optimal, inv = {bars} = exhaustive minimum"
    ))
}

fn two_class_instance() -> Outcome {
    let p = perm(&[4, 2, 6, 1, 5, 3]);
    let a = dv(&[-3, 0, -3, 3, 0, 3]);
    let b = dv(&[-3, 0, 3, -3, 0, 3]);
    let all: BTreeSet<_> = enum_dv(&p).collect();
    check(all.contains(&a) && all.contains(&b), || {
        format!("enumeration {all:?}")
    })?;
    let d = dv_distance(&a, &b, &p).map_err(|e| e.to_string())?;
    check(d == 1, || format!("vector distance {d}"))?;
    let la = enum_cll(&p, &a).map_err(|e| e.to_string())?.next().unwrap();
    let lb = enum_cll(&p, &b).map_err(|e| e.to_string())?.next().unwrap();
    check(cll_distance(&la, &lb) == Err(Error::ClassMismatch), || {
        "lottery pair reported reachable".into()
    })?;
    check(
        bfs_distance(&la, &lb, braid_neighbors, DEFAULT_BUDGET) == Err(Error::Unreachable),
        || "exhaustive search connects the classes".into(),
    )?;
    Ok("both vectors enumerated, distance 1, cross-class lotteries unreachable".into())
}

fn distance_formulas() -> Outcome {
    let mut pairs = 0u64;
    for n in 1..=5 {
        for (_, class) in at_most_once_classes(n, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
            let graph: std::collections::BTreeMap<_, _> = class
                .iter()
                .map(|l| (l.clone(), braid_neighbors(l)))
                .collect();
            for a in &class {
                for b in &class {
                    pairs += 1;
                    let formula = cll_distance(a, b).map_err(|e| e.to_string())?;
                    let delta = lt_symmetric_difference(a, b)
                        .map_err(|e| e.to_string())?
                        .len();
                    let bfs = bfs_distance(a, b, |l| graph[l].clone(), DEFAULT_BUDGET)
                        .map_err(|e| e.to_string())?;
                    let path = cll_path(a, b).map_err(|e| e.to_string())?;
                    let end = replay_braids(a, &path.steps).map_err(|e| e.to_string())?;
                    check(
                        formula == delta && delta == bfs && path.len() == bfs && &end == b,
                        || {
                            format!("{a:?} -> {b:?}: formula {formula}, delta {delta}, bfs {bfs}, path {}", path.len())
                        },
                    )?;
                }
            }
        }
    }
    let mut vpairs = 0u64;
    for n in 1..=6 {
        for p in all_permutations(n) {
            let vectors = brute_optimal_dvs(&p);
            for x in &vectors {
                for y in &vectors {
                    vpairs += 1;
                    let formula = dv_distance(x, y, &p).map_err(|e| e.to_string())?;
                    let half = dv_symmetric_difference(x, y).map_err(|e| e.to_string())? / 2;
                    let bfs = bfs_distance(x, y, contraction_neighbors, DEFAULT_BUDGET)
                        .map_err(|e| e.to_string())?;
                    let path = dv_path(x, y, &p).map_err(|e| e.to_string())?;
                    let end = replay_contractions(x, &path.steps).map_err(|e| e.to_string())?;
                    check(
                        formula == half && half == bfs && path.len() == bfs && &end == y,
                        || format!("{x:?} -> {y:?}: formula {formula}, half {half}, bfs {bfs}"),
                    )?;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} lottery pairs (n<=5), {vpairs} vector pairs (n<=6), zero mismatches"
    ))
}

fn enumeration_completeness() -> Outcome {
    let mut total = 0usize;
    for n in 1..=5 {
        for p in all_permutations(n) {
            let listed: Vec<_> = enum_all(&p).collect();
            let set: BTreeSet<_> = listed.iter().cloned().collect();
            check(set.len() == listed.len(), || format!("{p}: duplicates"))?;
            let truth = brute_optimal_lotteries(&p, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            check(set == truth, || {
                format!("{p}: {} listed, {} exhaustive", set.len(), truth.len())
            })?;
            total += set.len();
        }
        for ((p, y), class) in at_most_once_classes(n, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
            let roots = class
                .iter()
                .filter(|l| l.left_triples().unwrap().is_empty())
                .count();
            check(roots == 1, || {
                format!("{p} {y:?}: {roots} members without left triples")
            })?;
            let listed: BTreeSet<_> = enum_cll(&p, &y).map_err(|e| e.to_string())?.collect();
            check(listed == class, || {
                format!("{p} {y:?}: class enumeration differs")
            })?;
        }
    }
    Ok(format!(
        "{total} optimal lotteries over all n<=5, sets equal, one root per class"
    ))
}

fn worst(into: &mut TraversalStats, s: TraversalStats) {
    into.outputs += s.outputs;
    into.max_moves_between_outputs = into
        .max_moves_between_outputs
        .max(s.max_moves_between_outputs);
    into.max_sequence_reads_per_step = into
        .max_sequence_reads_per_step
        .max(s.max_sequence_reads_per_step);
}

fn delay_proxy() -> Outcome {
    let mut acc = TraversalStats::default();
    for n in 1..=5 {
        for p in all_permutations(n) {
            let mut e = enum_dv(&p);
            for _ in e.by_ref() {}
            worst(&mut acc, e.stats());
            let mut all = enum_all(&p);
            for _ in all.by_ref() {}
            worst(&mut acc, all.stats());
        }
        for (p, y) in at_most_once_classes(n, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?
            .into_keys()
        {
            let mut e = enum_cll(&p, &y).map_err(|e| e.to_string())?;
            for _ in e.by_ref() {}
            worst(&mut acc, e.stats());
        }
    }
    check(acc.max_moves_between_outputs <= 2, || {
        format!("{} moves between outputs", acc.max_moves_between_outputs)
    })?;
    check(acc.max_sequence_reads_per_step <= 2, || {
        format!(
            "{} sequence reads in one step",
            acc.max_sequence_reads_per_step
        )
    })?;
    Ok(format!(
        "{} outputs, at most {} moves between outputs, at most {} sequence reads per step",
        acc.outputs, acc.max_moves_between_outputs, acc.max_sequence_reads_per_step
    ))
}

fn round_trips() -> Outcome {
    let (mut built, mut braids) = (0, 0);
    for n in 1..=5 {
        for ((p, y), class) in at_most_once_classes(n, DEFAULT_BUDGET).map_err(|e| e.to_string())? {
            let l = cyclads::lottery::construct_lottery(&p, &y)
                .map_err(|e| format!("{p} {y:?}: {e}"))?;
            check(l.evaluate() == p && l.dv_of() == y, || {
                format!("{p} {y:?}: built {l:?}")
            })?;
            check(l.bar_count() as u64 == y.inversion_number(), || {
                format!("{p} {y:?}: {} bars", l.bar_count())
            })?;
            built += 1;
            for m in &class {
                for t in m
                    .tangled_triples()
                    .unwrap()
                    .into_iter()
                    .filter(|t| t.minimal)
                {
                    let b: CyclicLadderLottery =
                        m.apply_braid(t.elements).map_err(|e| e.to_string())?;
                    check(
                        b.evaluate() == p && b.dv_of() == y && b.bar_count() == m.bar_count(),
                        || format!("braid {:?} on {m:?}", t.elements),
                    )?;
                    let flipped = b.triple(t.elements).map_err(|e| e.to_string())?.chirality;
                    check(flipped == t.chirality.flipped(), || {
                        format!("braid {:?} on {m:?} kept chirality", t.elements)
                    })?;
                    braids += 1;
                }
            }
        }
    }
    Ok(format!(
        "{built} vectors rebuilt, {braids} braid moves preserve the class"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "reverse identity minimum inversion numbers",
            reverse_identity_values,
        ),
        ("maximum over permutations and maximizers", longest_values),
        (
            "optimal vector entry multisets of rotations",
            rotation_multisets,
        ),
        ("eight-line sample vector", eight_line_vector),
        ("instance with two optimal classes", two_class_instance),
        ("distance formulas", distance_formulas),
        ("enumeration completeness", enumeration_completeness),
        ("bounded work between outputs", delay_proxy),
        ("round trips", round_trips),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} ({msg}) [{dt:.2?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({msg}) [{dt:.2?}]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
