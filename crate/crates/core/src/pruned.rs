//! Speedups of the direct dynamic program.
//!
//! * [`refined_interval`]: the cuts whose lighter side carries at least a
//!   quarter of the sub-instance weight, found by binary search.
//! * [`solve_pruned`]: top-down recurrence that skips the less-than option
//!   when the heaviest key is at least 3/7 of the weight, skips the equal-to
//!   option when it is below 1/4, and scans only the refined interval.
//! * [`solve_bounded_const`]: for weights in `[1, R]`, intervals longer than
//!   `4R` never need holes.
//! * [`solve_bounded_log`]: the `s`-th hole of an interval is only explored
//!   when it weighs at least a quarter of what remains.
//!
//! Every solver memoizes on `(i, j, t)` states as in [`crate::dp`] and counts
//! each state and each scanned cut exactly once.

use serde::Serialize;

use crate::dp::{solve_full, StateLayout};
use crate::error::{Error, Result};
use crate::instance::{SubproblemId, WeightedInstance};
use crate::stats::SolveStats;
use crate::tree::SearchTree;
use crate::weight::Weight;

/// The cut-points `l` of `I^h_{i,j}` with `4 * min(w^h_{i,l}, w^h_{l+1,j}) >= w^h_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedInterval {
    pub lo: usize,
    pub hi: usize,
    pub empty: bool,
    /// Number of side-weight evaluations the search used.
    #[serde(skip)]
    pub probes: u32,
}

impl RefinedInterval {
    fn none(probes: u32) -> Self {
        RefinedInterval { lo: 0, hi: 0, empty: true, probes }
    }

    pub fn contains(&self, l: usize) -> bool {
        !self.empty && self.lo <= l && l <= self.hi
    }

    /// Members in ascending order.
    #[allow(clippy::reversed_empty_ranges)]
    pub fn cuts(&self) -> std::ops::RangeInclusive<usize> {
        if self.empty {
            return 1..=0;
        }
        self.lo..=self.hi
    }
}

/// Result of one of the pruned solvers.
#[derive(Clone, Debug, Serialize)]
pub struct PrunedSolution {
    pub cost: Weight,
    pub tree: SearchTree,
    pub stats: SolveStats,
}

/// Computes `ℐ^h_{i,j}` in O(log n) side-weight probes: a binary search for
/// any member, then one for each endpoint.
pub fn refined_interval(inst: &WeightedInstance, id: SubproblemId) -> Result<RefinedInterval> {
    inst.check(id)?;
    if inst.count_in(id.h, id.i, id.j) < 2 {
        return Err(Error::TooFewKeys { i: id.i, j: id.j, h: id.h });
    }
    Ok(refined_by_search(inst, id.h, id.i, id.j))
}

/// The same set by scanning every cut; used as a cross-check.
pub fn refined_interval_scan(inst: &WeightedInstance, id: SubproblemId) -> Result<Vec<usize>> {
    inst.check(id)?;
    let SubproblemId { i, j, h } = id;
    let v = inst.weight_in(h, i, j);
    Ok((i..j)
        .filter(|&l| {
            let left = inst.weight_in(h, i, l);
            is_member(left, v - left, v)
        })
        .collect())
}

#[inline]
fn is_member(left: Weight, right: Weight, v: Weight) -> bool {
    left.min(right).times(4) >= v
}

fn refined_by_search(inst: &WeightedInstance, h: usize, i: usize, j: usize) -> RefinedInterval {
    let v = inst.weight_in(h, i, j);
    let mut probes = 0u32;
    let mut side = |l: usize| {
        probes += 1;
        let left = inst.weight_in(h, i, l);
        (left, v - left)
    };

    // Round 1: move towards the lighter side until a member is found.
    let (mut a, mut b) = (i, j - 1);
    let mut member = None;
    while a <= b {
        let m = a + (b - a) / 2;
        let (left, right) = side(m);
        if is_member(left, right, v) {
            member = Some(m);
            break;
        }
        if left < right {
            a = m + 1;
        } else {
            b = m - 1;
        }
    }
    let Some(c) = member else {
        return RefinedInterval::none(probes);
    };

    // Rounds 2 and 3: the first and last members, knowing `c` is one.
    let (mut a, mut b) = (i, c);
    while a < b {
        let m = a + (b - a) / 2;
        let (left, right) = side(m);
        if is_member(left, right, v) {
            b = m;
        } else {
            a = m + 1;
        }
    }
    let lo = a;
    let (mut a, mut b) = (c, j - 1);
    while a < b {
        let m = a + (b - a).div_ceil(2);
        let (left, right) = side(m);
        if is_member(left, right, v) {
            a = m;
        } else {
            b = m - 1;
        }
    }
    RefinedInterval { lo, hi: a, empty: false, probes }
}

/// For each interval `[i, j]` and each `t`, the `t`-th lightest key.
struct IntervalOrder {
    layout: StateLayout,
    keys: Vec<u32>,
}

impl IntervalOrder {
    fn new(inst: &WeightedInstance) -> Self {
        let n = inst.n();
        let layout = StateLayout::new(n);
        let mut keys = vec![0u32; layout.len()];
        let mut sorted: Vec<usize> = Vec::with_capacity(n);
        for i in 1..=n {
            sorted.clear();
            for j in i..=n {
                let pos = sorted.partition_point(|&k| inst.rank(k) < inst.rank(j));
                sorted.insert(pos, j);
                for (t, &k) in sorted.iter().enumerate() {
                    keys[layout.index(i, j, t + 1)] = k as u32;
                }
            }
        }
        IntervalOrder { layout, keys }
    }

    #[inline]
    fn heaviest(&self, i: usize, j: usize, t: usize) -> usize {
        self.keys[self.layout.index(i, j, t)] as usize
    }
}

/// Which options a top-down solver explores at a state.
struct Options {
    eq: bool,
    lo: usize,
    hi: usize,
}

/// Memoized top-down evaluation over `(i, j, t)` states with a pluggable
/// option filter.
struct TopDown<'a, F> {
    inst: &'a WeightedInstance,
    order: IntervalOrder,
    cost: Vec<Option<Weight>>,
    choice: Vec<usize>,
    stats: SolveStats,
    filter: F,
}

const EQ: usize = usize::MAX;

impl<'a, F> TopDown<'a, F>
where
    F: FnMut(&WeightedInstance, usize, usize, usize, Weight, Weight, &mut SolveStats) -> Options,
{
    fn new(inst: &'a WeightedInstance, filter: F) -> Self {
        let order = IntervalOrder::new(inst);
        let len = order.layout.len();
        TopDown { inst, order, cost: vec![None; len], choice: vec![0; len], stats: SolveStats::default(), filter }
    }

    fn solve(&mut self, i: usize, j: usize, t: usize) -> Weight {
        if t == 0 {
            return Weight::ZERO;
        }
        let at = self.order.layout.index(i, j, t);
        if let Some(c) = self.cost[at] {
            return c;
        }
        self.stats.subproblems_evaluated += 1;
        self.stats.max_holes = self.stats.max_holes.max((j - i + 1 - t) as u64);
        if t == 1 {
            self.cost[at] = Some(Weight::ZERO);
            return Weight::ZERO;
        }

        let heaviest = self.order.heaviest(i, j, t);
        let h = self.inst.rank(heaviest);
        let v = self.inst.weight_in(h, i, j);
        let opts = (self.filter)(self.inst, h, i, j, v, self.inst.weight(heaviest), &mut self.stats);

        let mut best: Option<(Weight, usize)> = None;
        if opts.lo <= opts.hi {
            for l in opts.lo..=opts.hi {
                let tl = self.inst.count_in(h, i, l);
                if tl == 0 || tl == t {
                    continue;
                }
                self.stats.cutpoints_scanned += 1;
                let c = self.solve(i, l, tl) + self.solve(l + 1, j, t - tl);
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, l));
                }
            }
        }
        if opts.eq || best.is_none() {
            let c = self.solve(i, j, t - 1);
            if best.is_none_or(|(b, _)| c <= b) {
                best = Some((c, EQ));
            }
        }
        let (c, ch) = best.expect("at least one option");
        self.cost[at] = Some(v + c);
        self.choice[at] = ch;
        v + c
    }

    fn tree(&self, i: usize, j: usize, t: usize) -> SearchTree {
        let key = self.order.heaviest(i, j, t);
        if t == 1 {
            return SearchTree::leaf(key);
        }
        match self.choice[self.order.layout.index(i, j, t)] {
            EQ => SearchTree::eq(key, self.tree(i, j, t - 1)),
            l => {
                let tl = self.inst.count_in(self.inst.rank(key), i, l);
                SearchTree::lt(l + 1, self.tree(i, l, tl), self.tree(l + 1, j, t - tl))
            }
        }
    }

    fn run(mut self) -> PrunedSolution {
        let n = self.inst.n();
        let cost = self.solve(1, n, n);
        let tree = self.tree(1, n, n);
        PrunedSolution { cost, tree, stats: self.stats }
    }
}

/// The threshold-pruned recurrence with refined intervals.
pub fn solve_pruned(inst: &WeightedInstance) -> PrunedSolution {
    TopDown::new(inst, |inst, h, i, j, v, wm, stats| {
        if wm.times(7) >= v.times(3) {
            stats.eq_prunes += 1;
            return Options { eq: true, lo: 1, hi: 0 };
        }
        let r = refined_by_search(inst, h, i, j);
        let (lo, hi) = if r.empty { (1, 0) } else { (r.lo, r.hi) };
        if wm.times(4) < v {
            stats.lt_prunes += 1;
            Options { eq: false, lo, hi }
        } else {
            Options { eq: true, lo, hi }
        }
    })
    .run()
}

/// Exact optimum for weights in `[1, R]` in O(n³) for constant `R`.
///
/// Intervals of at most `4R` keys are solved by the full dynamic program on
/// the window starting at their left end; longer intervals have a maximum
/// weight below a quarter of their total, so their optimum is a less-than
/// split into hole-free intervals.
pub fn solve_bounded_const(inst: &WeightedInstance, r: u64) -> Result<PrunedSolution> {
    if r == 0 {
        return Err(Error::InvalidParameter("R must be at least 1".into()));
    }
    let (lo, hi) = (Weight::new(1), Weight::new(r));
    for (k, &w) in inst.weights().iter().enumerate() {
        if w < lo || w > hi {
            return Err(Error::WeightOutOfRange {
                key: k + 1,
                value: w.to_string(),
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
    }

    let n = inst.n();
    let window = (4 * r).min(n as u64) as usize;
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut cost = vec![Weight::ZERO; n * n];
    let mut split = vec![0usize; n * n];
    let mut stats = SolveStats::default();

    for i in 1..=n {
        let end = (i + window - 1).min(n);
        let sub = inst.slice(i, end)?;
        let sol = solve_full(&sub);
        stats.absorb(&sol.table.stats());
        for j in i..=end {
            let len = j - i + 1;
            cost[idx(i, j)] = sol.table.cost_by_count(1, len, len);
        }
    }
    for len in window + 1..=n {
        for i in 1..=n + 1 - len {
            let j = i + len - 1;
            stats.subproblems_evaluated += 1;
            let mut best: Option<(Weight, usize)> = None;
            for l in i..j {
                stats.cutpoints_scanned += 1;
                let c = cost[idx(i, l)] + cost[idx(l + 1, j)];
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, l));
                }
            }
            let (c, l) = best.expect("interval has a cut");
            cost[idx(i, j)] = inst.weight_in(n, i, j) + c;
            split[idx(i, j)] = l;
        }
    }

    fn build(inst: &WeightedInstance, split: &[usize], window: usize, i: usize, j: usize) -> Result<SearchTree> {
        let n = inst.n();
        if j - i < window {
            let sub = inst.slice(i, j)?;
            return Ok(solve_full(&sub).tree.relabel(&|k| k + i - 1));
        }
        let l = split[(i - 1) * n + (j - 1)];
        Ok(SearchTree::lt(l + 1, build(inst, split, window, i, l)?, build(inst, split, window, l + 1, j)?))
    }

    let tree = build(inst, &split, window, 1, n)?;
    Ok(PrunedSolution { cost: cost[idx(1, n)], tree, stats })
}

/// Exact optimum for positive weights, exploring the `s`-th hole of an
/// interval only when it weighs at least a quarter of what remains.
pub fn solve_bounded_log(inst: &WeightedInstance) -> Result<PrunedSolution> {
    if let Some(key) = inst.has_zero_weight() {
        return Err(Error::ZeroWeight { key });
    }
    Ok(TopDown::new(inst, |_, _, i, j, v, wm, stats| {
        let eq = wm.times(4) >= v;
        if !eq {
            stats.lt_prunes += 1;
        }
        Options { eq, lo: i, hi: j - 1 }
    })
    .run())
}

/// Largest hole count the quarter rule allows: `floor(log_{4/3}(total / min))`.
pub fn hole_depth_bound(inst: &WeightedInstance) -> u64 {
    let min = inst.weight(inst.asc_perm()[0]);
    if min.is_zero() {
        return u64::MAX;
    }
    let ratio = inst.total().to_f64() / min.to_f64();
    (ratio.ln() / (4.0f64 / 3.0).ln()).floor() as u64
}
