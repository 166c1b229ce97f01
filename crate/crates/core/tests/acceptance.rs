//! Acceptance checks. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero if any fails.
//!
//! Expected costs and minimizers are computed here by an independent
//! brute force over key subsets, never by the library's own tables.

use std::process::ExitCode;

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twocst::dp::root_split_costs;
use twocst::lab::{balanced_pattern_claims, check_side_weight_theorem, generate, GeneratorSpec, TieBreak};
use twocst::pruned::{refined_interval, refined_interval_scan, solve_bounded_const, solve_bounded_log, solve_pruned};
use twocst::threeway::{solve_3wcst_cubic, solve_3wcst_knuth_yao};
use twocst::tree::RootKind;
use twocst::{solve_full, CutRange, DpTable, Error, SearchTree, SubproblemId, Weight, WeightedInstance};

// ---------------------------------------------------------------------------
// Reference brute force

/// Optimal cost of every subset of keys, allowing an equal-to test on any
/// key and a less-than test between any two consecutive keys.
struct Brute {
    w: Vec<u128>,
    rank: Vec<usize>,
    cost: Vec<u128>,
}

impl Brute {
    fn new(w: &[u64]) -> Self {
        let n = w.len();
        assert!(n <= 20, "brute force limited to 20 keys");
        let w: Vec<u128> = w.iter().map(|&x| x as u128).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (w[k], k));
        let mut rank = vec![0; n];
        for (r, &k) in order.iter().enumerate() {
            rank[k] = r + 1;
        }
        let mut cost = vec![0u128; 1 << n];
        for mask in 1usize..1 << n {
            if mask.count_ones() < 2 {
                continue;
            }
            let total: u128 = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| w[k]).sum();
            let mut best = u128::MAX;
            let mut left = 0usize;
            let members: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            for (idx, &k) in members.iter().enumerate() {
                best = best.min(cost[mask ^ 1 << k]);
                if idx + 1 < members.len() {
                    left |= 1 << k;
                    best = best.min(cost[left] + cost[mask ^ left]);
                }
            }
            cost[mask] = total + best;
        }
        Brute { w, rank, cost }
    }

    fn n(&self) -> usize {
        self.w.len()
    }

    /// Keys `i..=j` (1-based) among the `h` lightest.
    fn sub(&self, i: usize, j: usize, h: usize) -> usize {
        (i..=j).filter(|&k| self.rank[k - 1] <= h).fold(0, |m, k| m | 1 << (k - 1))
    }

    fn c(&self, mask: usize) -> u128 {
        self.cost[mask]
    }

    fn weight(&self, mask: usize) -> u128 {
        (0..self.n()).filter(|k| mask >> k & 1 == 1).map(|k| self.w[k]).sum()
    }

    fn all(&self) -> usize {
        (1 << self.n()) - 1
    }

    /// `(l, C(left) + C(right))` for every position cut leaving keys of the
    /// sub-instance on both sides.
    fn cut_costs(&self, i: usize, j: usize, h: usize) -> Vec<(usize, u128, usize, usize)> {
        let mask = self.sub(i, j, h);
        (i..j)
            .filter_map(|l| {
                let left = mask & self.sub(i, l, h);
                let right = mask ^ left;
                (left != 0 && right != 0).then(|| (l, self.c(left) + self.c(right), left, right))
            })
            .collect()
    }

    fn minimizers(&self, i: usize, j: usize, h: usize) -> Vec<usize> {
        let cuts = self.cut_costs(i, j, h);
        let best = cuts.iter().map(|c| c.1).min().expect("at least one cut");
        cuts.iter().filter(|c| c.1 == best).map(|c| c.0).collect()
    }

    /// Best equal-to root on the heaviest key present.
    fn c_eq(&self, mask: usize) -> u128 {
        let heaviest = (0..self.n()).filter(|k| mask >> k & 1 == 1).max_by_key(|&k| self.rank[k]).expect("non-empty");
        self.weight(mask) + self.c(mask ^ 1 << heaviest)
    }

    /// Best less-than root over cuts leaving at least `min_side` keys on
    /// each side.
    fn c_lt(&self, i: usize, j: usize, h: usize, min_side: u32) -> Option<u128> {
        let total = self.weight(self.sub(i, j, h));
        self.cut_costs(i, j, h)
            .into_iter()
            .filter(|c| c.2.count_ones() >= min_side && c.3.count_ones() >= min_side)
            .map(|c| total + c.1)
            .min()
    }
}

fn tree_cost(t: &SearchTree, w: &[u64]) -> u128 {
    fn go(t: &SearchTree, w: &[u64], d: u128) -> u128 {
        match t {
            SearchTree::Leaf { key } => w[key - 1] as u128 * d,
            SearchTree::Eq { yes, no, .. } | SearchTree::Lt { yes, no, .. } => go(yes, w, d + 1) + go(no, w, d + 1),
        }
    }
    go(t, w, 0)
}

fn tree_weight(t: &SearchTree, w: &[u64]) -> u128 {
    match t {
        SearchTree::Leaf { key } => w[key - 1] as u128,
        SearchTree::Eq { yes, no, .. } | SearchTree::Lt { yes, no, .. } => tree_weight(yes, w) + tree_weight(no, w),
    }
}

fn routes_correctly(t: &SearchTree, keys: &[usize]) -> bool {
    let mut leaves = Vec::new();
    fn collect(t: &SearchTree, out: &mut Vec<usize>) {
        match t {
            SearchTree::Leaf { key } => out.push(*key),
            SearchTree::Eq { yes, no, .. } | SearchTree::Lt { yes, no, .. } => {
                collect(yes, out);
                collect(no, out);
            }
        }
    }
    collect(t, &mut leaves);
    leaves.sort_unstable();
    if leaves != keys {
        return false;
    }
    keys.iter().all(|&q| {
        let mut node = t;
        loop {
            node = match node {
                SearchTree::Leaf { key } => break *key == q,
                SearchTree::Eq { key, yes, no } => {
                    if q == *key {
                        yes
                    } else {
                        no
                    }
                }
                SearchTree::Lt { key, yes, no } => {
                    if q < *key {
                        yes
                    } else {
                        no
                    }
                }
            };
        }
    })
}

fn u(x: Weight) -> u128 {
    x.to_u64().expect("test weights fit in 64 bits") as u128
}

fn inst(w: &[u64]) -> WeightedInstance {
    WeightedInstance::from_u64(w).expect("valid instance")
}

fn id(i: usize, j: usize, h: usize) -> SubproblemId {
    SubproblemId::new(i, j, h)
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize, lo: u64, hi: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}

fn instance_weights(i: &WeightedInstance) -> Vec<u64> {
    i.weights().iter().map(|&x| x.to_u64().expect("fits")).collect()
}

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Criteria

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let (mut log_checked, mut log_rejected) = (0, 0);
    for case in 0..200 {
        let n = 1 + case % 9;
        let w = if case % 2 == 0 {
            let mut pool: Vec<u64> = (0..=10).collect();
            pool.shuffle(&mut rng);
            pool[..n].to_vec()
        } else {
            random_weights(&mut rng, n, 0, 10)
        };
        let b = Brute::new(&w);
        let truth = b.c(b.all());
        let i = inst(&w);
        let keys: Vec<usize> = (1..=n).collect();
        let full = solve_full(&i);
        let pruned = solve_pruned(&i);
        ensure(u(full.cost) == truth, || format!("{w:?}: full {} vs brute {truth}", full.cost))?;
        ensure(u(pruned.cost) == truth, || format!("{w:?}: pruned {} vs brute {truth}", pruned.cost))?;
        for (name, t) in [("full", &full.tree), ("pruned", &pruned.tree)] {
            ensure(routes_correctly(t, &keys) && tree_cost(t, &w) == truth, || format!("{w:?}: bad {name} tree"))?;
        }
        match solve_bounded_log(&i) {
            Ok(s) => {
                ensure(u(s.cost) == truth, || format!("{w:?}: bounded-log {} vs brute {truth}", s.cost))?;
                ensure(routes_correctly(&s.tree, &keys) && tree_cost(&s.tree, &w) == truth, || {
                    format!("{w:?}: bad bounded-log tree")
                })?;
                log_checked += 1;
            }
            Err(Error::ZeroWeight { .. }) if w.contains(&0) => log_rejected += 1,
            Err(e) => return Err(format!("{w:?}: bounded-log failed: {e}")),
        }
    }
    Ok(format!(
        "200/200 full and pruned agree; bounded-log agrees on {log_checked}, rejects {log_rejected} with zero weights"
    ))
}

fn eight_key_tree() -> Outcome {
    let w = [10u64, 1, 2, 3, 1, 3, 1, 11];
    let depths = [2u64, 4, 4, 5, 5, 4, 2, 2];
    let by_profile: u64 = w.iter().zip(depths).map(|(a, d)| a * d).sum();
    ensure(by_profile == 88, || format!("depth profile gives {by_profile}"))?;
    type T = SearchTree;
    let drawn = T::lt(
        7,
        T::eq(1, T::lt(4, T::lt(3, T::leaf(2), T::leaf(3)), T::eq(6, T::lt(5, T::leaf(4), T::leaf(5))))),
        T::lt(8, T::leaf(7), T::leaf(8)),
    );
    let i = inst(&w);
    let lib = drawn.cost(&i).map_err(|e| e.to_string())?;
    ensure(u(lib) == 88 && tree_cost(&drawn, &w) == 88, || format!("drawn tree costs {lib}"))?;
    ensure(routes_correctly(&drawn, &(1..=8).collect::<Vec<_>>()), || "drawn tree misroutes".into())?;
    let opt = solve_full(&i).cost;
    let truth = Brute::new(&w).c(255);
    ensure(u(opt) == truth && truth <= 88, || format!("optimum {opt}, brute {truth}"))?;
    Ok(format!("profile cost 88, optimum {opt}"))
}

fn quadrangle_counterexamples() -> Outcome {
    let w = [1u64, 10, 1];
    let b = Brute::new(&w);
    let owned = inst(&w);
    let t = DpTable::build(&owned, CutRange::Full);
    let probes = [(1, 2), (2, 3), (1, 3), (2, 2)];
    let want = [11u128, 11, 14, 0];
    for ((i, j), v) in probes.into_iter().zip(want) {
        let lib = u(t.cost_at(id(i, j, 3)).map_err(|e| e.to_string())?);
        ensure(lib == v && b.c(b.sub(i, j, 3)) == v, || {
            format!("C_{i},{j}: lib {lib}, brute {}", b.c(b.sub(i, j, 3)))
        })?;
    }

    let w = [1u64, 9, 1, 1, 9, 1];
    let b = Brute::new(&w);
    let owned = inst(&w);
    let t = DpTable::build(&owned, CutRange::Full);
    for (i, want) in [(1, 3), (2, 2)] {
        let brute = b.minimizers(i, 6, 6);
        let lib = t.minimizers_at(id(i, 6, 6)).map_err(|e| e.to_string())?.minimizers;
        ensure(brute == [want] && lib == brute, || format!("L_{i},6: brute {brute:?}, lib {lib:?}"))?;
    }

    let mut family = Vec::new();
    for s in [2u32, 3] {
        let v = (1u64 << (s + 1)) + 1;
        let block = 1usize << s;
        let mut w = vec![1u64; 2 * block + 1];
        w[block] = v;
        let n = w.len();
        let j = block + 1;
        let b = Brute::new(&w);
        let c = |a: usize, z: usize| b.c(b.sub(a, z, n));
        let (lhs, rhs) = (c(1, j) + c(j, n), c(j, j) + c(1, n));
        let owned = inst(&w);
        let t = DpTable::build(&owned, CutRange::Full);
        let l = |a: usize, z: usize| u(t.cost_at(id(a, z, n)).expect("valid"));
        ensure(lhs > rhs && l(1, j) + l(j, n) == lhs && l(j, j) + l(1, n) == rhs, || format!("s={s}: {lhs} vs {rhs}"))?;
        family.push(format!("s={s}: {lhs} > {rhs}"));
    }
    Ok(format!("(11,11,14,0); L_16=3, L_26=2 unique; {}", family.join(", ")))
}

fn monotonicity_counterexample() -> Outcome {
    let w = [0u64, 2, 2, 0, 1, 1];
    let b = Brute::new(&w);
    let owned = inst(&w);
    let t = DpTable::build(&owned, CutRange::Full);
    let brute = |i: usize| -> Vec<(usize, u128)> { b.cut_costs(i, 6, 6).into_iter().map(|c| (c.0, c.1)).collect() };
    let lib = |i: usize| -> Vec<(usize, u128)> {
        t.cut_costs(id(i, 6, 6)).expect("valid").into_iter().map(|(l, c)| (l, u(c))).collect()
    };
    for (i, want) in [(1, vec![(2, 9), (3, 9), (4, 8)]), (2, vec![(3, 7), (4, 8)])] {
        let (br, lb) = (brute(i), lib(i));
        ensure(br == lb, || format!("[{i},6] cut costs: brute {br:?}, lib {lb:?}"))?;
        for p in want {
            ensure(br.contains(&p), || format!("[{i},6] lacks {p:?}: {br:?}"))?;
        }
    }
    let (l16, l26) = (b.minimizers(1, 6, 6), b.minimizers(2, 6, 6));
    ensure(l16 == [4] && l26.contains(&3) && l26.iter().all(|&l| l < 4), || format!("L_16 {l16:?}, L_26 {l26:?}"))?;

    let owned = inst(&w);
    let ti = DpTable::build(&owned, CutRange::Interior);
    let (a, c) = (
        ti.minimizers_at(id(1, 6, 6)).map_err(|e| e.to_string())?,
        ti.minimizers_at(id(2, 6, 6)).map_err(|e| e.to_string())?,
    );
    ensure(a.minimizers == [4] && c.minimizers == [3], || {
        format!("interior cuts: L_16 {:?}, L_26 {:?}", a.minimizers, c.minimizers)
    })?;
    Ok(format!("cut costs exact; L_16 = 4 > 3 (minimizers of [2,6]: {l26:?}); interior cuts 4 > 3"))
}

fn diagonal_counterexamples() -> Outcome {
    let unit = 1_000_000u64;
    let w = [1, 2 * unit, 2 * unit, 0, unit, unit, 0];
    let b = Brute::new(&w);
    let (l16, l27) = (b.minimizers(1, 6, 7), b.minimizers(2, 7, 7));
    let owned = inst(&w);
    let t = DpTable::build(&owned, CutRange::Full);
    let lib = (
        t.minimizers_at(id(1, 6, 7)).map_err(|e| e.to_string())?,
        t.minimizers_at(id(2, 7, 7)).map_err(|e| e.to_string())?,
    );
    ensure(lib.0.minimizers == l16 && lib.1.minimizers == l27, || "library minimizers differ from brute force".into())?;
    ensure(l16 == [4] && l27.contains(&3) && l27.iter().all(|&l| l < 4), || format!("L_16 {l16:?}, L_27 {l27:?}"))?;

    let w = [12u64, 10, 3, 9, 8, 2, 6, 7, 5, 1, 11, 13];
    let b = Brute::new(&w);
    let (a, c) = (b.minimizers(1, 11, 12), b.minimizers(2, 12, 12));
    ensure(a == [6] && c == [5], || format!("L_1,11 {a:?}, L_2,12 {c:?}"))?;
    let owned = inst(&w);
    let t = DpTable::build(&owned, CutRange::Full);
    let lib = (
        t.minimizers_at(id(1, 11, 12)).map_err(|e| e.to_string())?,
        t.minimizers_at(id(2, 12, 12)).map_err(|e| e.to_string())?,
    );
    ensure(lib.0.minimizers == a && lib.1.minimizers == c, || "library minimizers differ".into())?;
    for (i, j) in [(1, 11), (2, 12)] {
        let part = &w[i - 1..j];
        let (max, total) = (*part.iter().max().expect("non-empty"), part.iter().sum::<u64>());
        ensure(4 * max < total, || format!("[{i},{j}]: max {max}, total {total}"))?;
        let mask = b.sub(i, j, 12);
        let lt = b.c_lt(i, j, 12, 2).expect("cuts exist");
        ensure(lt < b.c_eq(mask) && lt == b.c(mask), || format!("[{i},{j}] root is not forced less-than"))?;
    }
    Ok(format!("L_16 = 4 > 3 (minimizers of [2,7]: {l27:?}); L_1,11 = 6 > 5 = L_2,12 unique; both light"))
}

fn marginal_advantage() -> Outcome {
    let w = [11u64, 23, 23, 13, 0];
    let b = Brute::new(&w);
    let got = [(1usize, 4usize), (1, 5)].map(|(i, j)| {
        let mask = b.sub(i, j, 5);
        (b.c_eq(mask), b.c_lt(i, j, 5, 2).expect("cuts exist"))
    });
    ensure(got == [(141, 140), (152, 153)], || format!("brute force gives {got:?}"))?;
    let owned = inst(&w);
    let t = DpTable::build(&owned, CutRange::Full);
    for ((i, j), (e, l)) in [(1, 4), (1, 5)].into_iter().zip(got) {
        let r = t.root_split_at(id(i, j, 5)).map_err(|e| e.to_string())?;
        ensure(u(r.eq) == e && r.lt.map(u) == Some(l), || format!("[{i},{j}] lib ({}, {:?})", r.eq, r.lt))?;
    }
    Ok("(141,140) on [1,4], (152,153) on [1,5]".into())
}

fn pattern_claims() -> Outcome {
    let mut identity_rows = 0;
    let mut minimizer_rows = 0;
    let mut leftmost_misses = 0;
    for p in 2..=6u32 {
        let r = balanced_pattern_claims(p).map_err(|e| e.to_string())?;
        let lo = (1usize << (p + 1)) + 2;
        let hi = 3 * (1usize << p);
        let ns: Vec<usize> = r.identity.iter().map(|x| x.n).collect();
        let want: Vec<usize> = (lo..=hi).filter(|n| n % 2 == 0).collect();
        ensure(ns == want, || format!("p={p}: band {ns:?}"))?;
        for row in &r.identity {
            let (a, b, c, d) = (u(row.c_1_nm1), u(row.c_2_n), u(row.c_2_nm1), u(row.c_1_n));
            ensure(a + b == c + d + 1, || format!("p={p} n={}: {a}+{b} != {c}+{d}+1", row.n))?;
            identity_rows += 1;
        }
        for row in r.shift.iter().chain(&r.shrink) {
            ensure(row.holds(TieBreak::Rightmost), || format!("p={p} n={}: minimizer relation fails", row.n))?;
            leftmost_misses += usize::from(!row.holds(TieBreak::Leftmost));
            minimizer_rows += 1;
        }
    }

    // The smallest band is small enough for the brute force.
    let w: Vec<u64> = (0..12).map(|k| if k % 2 == 0 { 1 } else { 3 }).collect();
    let b = Brute::new(&w);
    for n in [10usize, 12] {
        let c = |i: usize, j: usize| b.c(b.sub(i, j, 12));
        ensure(c(1, n - 1) + c(2, n) == c(2, n - 1) + c(1, n) + 1, || format!("brute identity fails at n={n}"))?;
    }
    let (l2, l3) = (b.minimizers(2, 10, 12), b.minimizers(3, 10, 12));
    ensure(l2.iter().any(|a| l3.iter().any(|c| *a == c + 1)), || format!("brute L_2,10 {l2:?}, L_3,10 {l3:?}"))?;

    let i = generate(&GeneratorSpec::Pattern { cycle: vec![1, 3], n: 24 }).map_err(|e| e.to_string())?;
    let t = DpTable::build(&i, CutRange::Full);
    let corners = [(1, 24), (2, 23), (1, 23), (2, 24)].map(|(a, z)| u(t.cost_at(id(a, z, 24)).expect("valid")));
    ensure(corners == [216, 193, 200, 210], || format!("n=24 corners {corners:?}"))?;
    Ok(format!(
        "identity on {identity_rows} even n for p=2..6; corners 216/193/200/210; {minimizer_rows} minimizer rows hold \
         with the rightmost minimizer ({leftmost_misses} differ under the leftmost)"
    ))
}

fn thresholds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let mut fired = [0usize; 4];
    for case in 0..500 {
        let n = 2 + case % 11;
        let w = random_weights(&mut rng, n, 0, 20);
        let b = Brute::new(&w);
        let all = b.all();
        let total = b.weight(all);
        if total == 0 {
            continue;
        }
        let mut sorted = w.clone();
        sorted.sort_unstable_by(|a, c| c.cmp(a));
        let (alpha, beta) = (sorted[0] as u128, sorted[1] as u128);
        let opt = b.c(all);
        let eq = b.c_eq(all);
        let lt_any = b.c_lt(1, n, n, 1).expect("n >= 2");
        let lt_proper = b.c_lt(1, n, n, 2);

        let lib = root_split_costs(&inst(&w)).map_err(|e| e.to_string())?;
        ensure(u(lib.eq) == eq && lib.lt.map(u) == lt_proper && lib.lt_any.map(u) == Some(lt_any), || {
            format!("{w:?}: library root costs differ")
        })?;

        if 7 * alpha > 3 * total {
            fired[0] += 1;
            ensure(eq <= lt_any, || format!("{w:?}: alpha > 3W/7 but C_eq {eq} > C_lt {lt_any}"))?;
        }
        if 4 * alpha < total {
            fired[1] += 1;
            ensure(lt_proper.is_some_and(|lt| lt < eq), || format!("{w:?}: alpha < W/4 but C_lt >= C_eq"))?;
        }
        if 2 * alpha + beta >= total {
            fired[2] += 1;
            ensure(eq <= lt_any, || format!("{w:?}: 2alpha+beta >= W but C_eq {eq} > C_lt {lt_any}"))?;
        }
        if n >= 3 && 2 * (alpha + beta) < total {
            fired[3] += 1;
            for a in 0..n {
                for c in 0..n {
                    if a == c {
                        continue;
                    }
                    let eq_eq = total + (total - w[a] as u128) + b.c(all ^ 1 << a ^ 1 << c);
                    ensure(eq_eq > opt, || format!("{w:?}: equal-to on {} then {} is optimal", a + 1, c + 1))?;
                }
            }
        }
    }
    Ok(format!("500 instances, implications fired {fired:?}, zero failures"))
}

fn tightness() -> Outcome {
    let (alpha, beta, eps) = (700u64, 600u64, 2u64);
    let w = [alpha / 2, alpha, beta - eps, alpha / 2 + eps];
    let total: u64 = w.iter().sum();
    ensure(2 * alpha + beta == total && 5 * alpha < 2 * total && eps * 1000 == total, || "tight4 parameters".into())?;
    let b = Brute::new(&w);
    let (eq, lt) = (b.c_eq(b.all()), b.c_lt(1, 4, 4, 2).expect("4 keys"));
    ensure(eq == lt + eps as u128, || format!("tight4: C_eq {eq}, C_lt {lt}"))?;
    let lib = generate(&GeneratorSpec::Tight4 {
        alpha: Ratio::from_integer(alpha.into()),
        beta: Ratio::from_integer(beta.into()),
        eps: Ratio::from_integer(eps.into()),
    })
    .map_err(|e| e.to_string())?;
    ensure(instance_weights(&lib) == w, || "tight4 generator differs".into())?;

    let (alpha, beta) = (2u64, 1u64);
    let w = [alpha, 0, beta, 0, beta, beta, 0, beta];
    let total: u64 = w.iter().sum();
    ensure(3 * alpha == total && alpha + 4 * beta == total, || "tight8 parameters".into())?;
    let b = Brute::new(&w);
    let (eq, lt) = (b.c_eq(b.all()) as i128, b.c_lt(1, 8, 8, 2).expect("8 keys") as i128);
    let gap = 2 * beta as i128 - alpha as i128;
    ensure(eq - lt == gap && gap <= 0, || format!("tight8: C_eq {eq}, C_lt {lt}"))?;
    let lib = generate(&GeneratorSpec::Tight8 {
        alpha: Ratio::new(1u32.into(), 3u32.into()),
        beta: Ratio::new(1u32.into(), 6u32.into()),
    })
    .map_err(|e| e.to_string())?;
    ensure(instance_weights(&lib) == w, || "tight8 generator differs".into())?;
    Ok(format!("tight4 gap {} = eps; tight8 gap {gap} = 2beta - alpha", eps))
}

/// Side weight of the root under every admissible reading, paired with
/// the main branch of that reading.
fn readings<'a>(t: &'a SearchTree, w: &[u64]) -> Vec<(u128, &'a SearchTree)> {
    let mut out = Vec::new();
    match t {
        SearchTree::Leaf { .. } => {}
        SearchTree::Eq { key, no, .. } => out.push((w[key - 1] as u128, &**no)),
        SearchTree::Lt { yes, no, .. } => {
            let (a, c) = (tree_weight(yes, w), tree_weight(no, w));
            if a <= c {
                out.push((a, &**no));
            }
            if c <= a {
                out.push((c, &**yes));
            }
            if let SearchTree::Leaf { key } = **yes {
                out.push((w[key - 1] as u128, &**no));
            }
            if let SearchTree::Leaf { key } = **no {
                out.push((w[key - 1] as u128, &**yes));
            }
        }
    }
    out
}

fn side_weights() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3003);
    let mut trees = 0;
    for case in 0..200 {
        let n = 3 + case % 8;
        let w = random_weights(&mut rng, n, 0, 10);
        let b = Brute::new(&w);
        let i = inst(&w);
        let t = DpTable::build(&i, CutRange::Full);
        for a in 1..=n {
            for z in a..=n {
                for h in 1..=n {
                    let mask = b.sub(a, z, h);
                    if mask.count_ones() < 3 {
                        continue;
                    }
                    let tree = t.reconstruct(id(a, z, h)).map_err(|e| e.to_string())?;
                    let keys: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| k + 1).collect();
                    ensure(routes_correctly(&tree, &keys) && tree_cost(&tree, &w) == b.c(mask), || {
                        format!("{w:?} ({a},{z},{h}): reconstructed tree is not optimal")
                    })?;
                    let total = b.weight(mask);
                    let ok = readings(&tree, &w).into_iter().any(|(sw0, main)| {
                        let sw1 = readings(main, &w).into_iter().map(|r| r.0).max().unwrap_or(0);
                        4 * sw0 >= total && 2 * (sw0 + sw1) >= total
                    });
                    ensure(ok, || format!("{w:?} ({a},{z},{h}): side weights too small"))?;
                    trees += 1;
                }
            }
        }
        check_side_weight_theorem(&i).map_err(|v| format!("{w:?}: library check reports {v:?}"))?;
    }
    Ok(format!("{trees} optimal sub-instance trees satisfy both bounds"))
}

fn refined_intervals() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4004);
    let (mut ids, mut optimal_cuts) = (0, 0);
    for case in 0..50 {
        let n = 2 + case % 11;
        let w = random_weights(&mut rng, n, 0, 12);
        let b = Brute::new(&w);
        let i = inst(&w);
        for a in 1..=n {
            for z in a + 1..=n {
                for h in 1..=n {
                    let mask = b.sub(a, z, h);
                    if mask.count_ones() < 2 {
                        continue;
                    }
                    let v = b.weight(mask);
                    let scan: Vec<usize> = (a..z)
                        .filter(|&l| {
                            let left = b.weight(mask & b.sub(a, l, h));
                            4 * left.min(v - left) >= v
                        })
                        .collect();
                    let r = refined_interval(&i, id(a, z, h)).map_err(|e| e.to_string())?;
                    let got: Vec<usize> = r.cuts().collect();
                    let lib_scan = refined_interval_scan(&i, id(a, z, h)).map_err(|e| e.to_string())?;
                    ensure(got == scan && lib_scan == scan, || {
                        format!("{w:?} ({a},{z},{h}): search {got:?}, scan {scan:?}")
                    })?;
                    ensure(scan.windows(2).all(|p| p[1] == p[0] + 1), || format!("{w:?}: {scan:?} has a gap"))?;
                    let opt = b.c(mask);
                    for (l, c, left, right) in b.cut_costs(a, z, h) {
                        if v + c == opt && left.count_ones() >= 2 && right.count_ones() >= 2 {
                            ensure(r.contains(l), || format!("{w:?} ({a},{z},{h}): optimal cut {l} outside {scan:?}"))?;
                            optimal_cuts += 1;
                        }
                    }
                    ids += 1;
                }
            }
        }
    }
    Ok(format!(
        "{ids} sub-problems: search equals scan, contiguous, contains all {optimal_cuts} optimal less-than cuts"
    ))
}

fn speedups() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5005);
    for _ in 0..50 {
        let w = random_weights(&mut rng, 30, 1, 3);
        let i = inst(&w);
        let (full, fast) = (solve_full(&i).cost, solve_bounded_const(&i, 3).map_err(|e| e.to_string())?);
        ensure(full == fast.cost && u(fast.tree.cost(&i).expect("valid")) == u(full), || {
            format!("{w:?}: bounded-const {} vs full {full}", fast.cost)
        })?;
    }
    for _ in 0..50 {
        let w = random_weights(&mut rng, 40, 1, 1000);
        let i = inst(&w);
        let (full, fast) = (solve_full(&i).cost, solve_bounded_log(&i).map_err(|e| e.to_string())?);
        ensure(full == fast.cost && tree_cost(&fast.tree, &w) == u(full), || {
            format!("{w:?}: bounded-log {} vs full {full}", fast.cost)
        })?;
    }
    let mut scans = Vec::new();
    for n in [28usize, 56, 112] {
        let i = generate(&GeneratorSpec::hard(n)).map_err(|e| e.to_string())?;
        let s = solve_pruned(&i);
        if n <= 56 {
            ensure(s.cost == solve_full(&i).cost, || format!("hard n={n}: pruned differs from full"))?;
        }
        scans.push(s.stats.cutpoints_scanned);
    }
    let ratios = [scans[1] as f64 / scans[0] as f64, scans[2] as f64 / scans[1] as f64];
    ensure(scans[1] >= 6 * scans[0] && scans[2] >= 6 * scans[1], || format!("cutpoints {scans:?}"))?;
    Ok(format!("50+50 instances agree; hard cutpoints {scans:?}, ratios {:.1} and {:.1}", ratios[0], ratios[1]))
}

fn geometric() -> Outcome {
    let n = 25;
    let mut roots = Vec::new();
    for (p, q, want_eq) in [(4u64, 7u64, true), (11, 20, true), (7, 10, false)] {
        let gamma = Ratio::new(p.into(), q.into());
        let i = generate(&GeneratorSpec::Geometric { gamma, n }).map_err(|e| e.to_string())?;
        let w: Vec<BigUint> = i.weights().iter().map(Weight::to_biguint).collect();
        for k in 0..n - 1 {
            ensure(&w[k] * p == &w[k + 1] * q, || format!("{p}/{q}: weights are not geometric"))?;
        }
        let r = root_split_costs(&i).map_err(|e| e.to_string())?;
        let full = solve_full(&i);
        if want_eq {
            ensure(r.lt_any.is_some_and(|lt| r.eq <= lt) && full.cost == r.eq, || format!("{p}/{q}: C_eq > C_lt"))?;
            ensure(full.tree.root_kind() == RootKind::EqualTo, || format!("{p}/{q}: root is not equal-to"))?;
        } else {
            ensure(r.lt.is_some_and(|lt| lt < r.eq), || format!("{p}/{q}: C_lt >= C_eq"))?;
            ensure(full.tree.root_kind() == RootKind::LessThan, || format!("{p}/{q}: root is not less-than"))?;
        }
        roots.push(format!("{p}/{q} {}", full.tree.root_kind()));
    }

    // γ = 1/2: keys 1..n-1 tested for equality in turn.
    let i = generate(&GeneratorSpec::Geometric { gamma: Ratio::new(1u32.into(), 2u32.into()), n })
        .map_err(|e| e.to_string())?;
    let w = instance_weights(&i);
    let mut chain = SearchTree::leaf(n);
    for k in (1..n).rev() {
        chain = SearchTree::eq(k, chain);
    }
    let lib_cost = u(chain.cost(&i).map_err(|e| e.to_string())?);
    let closed: Ratio<u128> =
        (0..n).map(|k| Ratio::new((k + 1).min(n - 1) as u128, 1u128 << k)).fold(Ratio::from_integer(0), |a, b| a + b);
    let scale = u(i.scale());
    ensure(Ratio::new(lib_cost, scale) == closed && Ratio::new(tree_cost(&chain, &w), scale) == closed, || {
        format!("chain cost {lib_cost}/{scale} vs closed form {closed}")
    })?;
    Ok(format!("{}; gamma=1/2 chain cost {closed} matches the finite sum", roots.join(", ")))
}

/// Optimal three-way tree cost by trying every root of every range.
fn brute_3way(w: &[u64], i: usize, j: usize) -> u128 {
    if i > j {
        return 0;
    }
    let total: u128 = w[i - 1..j].iter().map(|&x| x as u128).sum();
    total + (i..=j).map(|r| brute_3way(w, i, r - 1) + brute_3way(w, r + 1, j)).min().expect("non-empty")
}

fn threeway() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6006);
    let mut tested = 0;
    let mut exceeds = Vec::new();
    let mut compare = |w: &[u64], three: Weight| {
        let two = solve_full(&inst(w)).cost;
        tested += 1;
        if three > two {
            exceeds.push(format!("{w:?} {three} > {two}"));
        }
    };
    for case in 0..100 {
        let n = 1 + case % 40;
        let w = random_weights(&mut rng, n, 0, 100);
        let i = inst(&w);
        let (cubic, ky) = (solve_3wcst_cubic(&i), solve_3wcst_knuth_yao(&i));
        ensure(cubic.cost == ky.cost, || format!("{w:?}: cubic {} vs Knuth-Yao {}", cubic.cost, ky.cost))?;
        if n <= 9 {
            ensure(u(cubic.cost) == brute_3way(&w, 1, n), || format!("{w:?}: cubic differs from brute force"))?;
        }
        compare(&w, cubic.cost);
    }
    for s in 1..=7u32 {
        let n = (1usize << s) - 1;
        let w = vec![1; n];
        let i = inst(&w);
        let balanced: u128 = (1..=s).map(|d| d as u128 * (1u128 << (d - 1))).sum();
        let ky = solve_3wcst_knuth_yao(&i);
        ensure(u(ky.cost) == balanced && u(solve_3wcst_cubic(&i).cost) == balanced, || {
            format!("n={n}: {} vs balanced {balanced}", ky.cost)
        })?;
        compare(&w, ky.cost);
    }
    let summary = "Knuth-Yao equals cubic on 100 instances; balanced costs for n = 1..127";
    if exceeds.is_empty() {
        Ok(format!("{summary}; three-way <= two-way on all {tested}"))
    } else {
        let first: Vec<&str> = exceeds.iter().take(3).map(String::as_str).collect();
        Err(format!(
            "{summary}; three-way optimum exceeds two-way on {} of {tested} instances, e.g. {}",
            exceeds.len(),
            first.join("; ")
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 14] = [
        ("oracle equivalence", oracle_equivalence),
        ("eight-key tree arithmetic", eight_key_tree),
        ("quadrangle counter-examples", quadrangle_counterexamples),
        ("monotonicity counter-example", monotonicity_counterexample),
        ("diagonal counter-examples", diagonal_counterexamples),
        ("marginal advantage", marginal_advantage),
        ("balanced pattern claims", pattern_claims),
        ("threshold implications", thresholds),
        ("tightness witnesses", tightness),
        ("side-weight theorem", side_weights),
        ("refined intervals", refined_intervals),
        ("speedup agreement and scaling", speedups),
        ("geometric regime", geometric),
        ("three-way baseline", threeway),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
