//! The direct O(n⁴) dynamic program over sub-instances `I^h_{i,j}`.
//!
//! ```text
//! C^h_{i,j} = 0                                        if |I^h_{i,j}| <= 1
//! C^h_{i,j} = C^{h-1}_{i,j}                            if a_h not in I^h_{i,j}
//! C^h_{i,j} = w^h_{i,j} + min(C^{h-1}_{i,j}, S^h_{i,j})  otherwise
//! S^h_{i,j} = min_l C^h_{i,l} + C^h_{l+1,j}
//! ```
//!
//! The first option is the equal-to test on `a_h`, the heaviest key
//! present; the second is the less-than test `<(l+1)`. Cuts that leave one
//! side empty are skipped.
//!
//! Since `C^h_{i,j}` only changes when `a_h` falls inside `[i, j]`, the table
//! is stored per interval and indexed by `t = |I^h_{i,j}|`: sub-instance
//! `(i, j, t)` holds the `t` lightest keys of `[i, j]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{SubproblemId, WeightedInstance};
use crate::stats::SolveStats;
use crate::tree::SearchTree;
use crate::weight::Weight;

/// Which cut-points `S^h_{i,j}` ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutRange {
    /// `l = i, …, j-1`.
    #[default]
    Full,
    /// `l = i+1, …, j-2`: both sides of the root keep at least two
    /// positions, boundary keys are only reachable by equal-to tests.
    Interior,
}

impl CutRange {
    #[inline]
    pub(crate) fn bounds(self, i: usize, j: usize) -> (usize, usize) {
        match self {
            CutRange::Full => (i, j.saturating_sub(1)),
            CutRange::Interior => (i + 1, j.saturating_sub(2)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Choice {
    Empty,
    Leaf,
    EqOnHeaviest,
    SplitAt(usize),
}

impl Choice {
    fn encode(self) -> u32 {
        match self {
            Choice::Empty => 0,
            Choice::Leaf => 1,
            Choice::EqOnHeaviest => 2,
            Choice::SplitAt(l) => l as u32 + 3,
        }
    }

    fn decode(c: u32) -> Self {
        match c {
            0 => Choice::Empty,
            1 => Choice::Leaf,
            2 => Choice::EqOnHeaviest,
            l => Choice::SplitAt(l as usize - 3),
        }
    }
}

/// Flat storage for `(i, j, t)` states, `1 <= i <= j <= n`, `0 <= t <= j-i+1`.
#[derive(Clone, Debug)]
pub(crate) struct StateLayout {
    n: usize,
    offsets: Vec<usize>,
    len: usize,
}

impl StateLayout {
    pub(crate) fn new(n: usize) -> Self {
        let mut offsets = vec![usize::MAX; n * n];
        let mut next = 0;
        for i in 1..=n {
            for j in i..=n {
                offsets[(i - 1) * n + (j - 1)] = next;
                next += j - i + 2;
            }
        }
        StateLayout { n, offsets, len: next }
    }

    pub(crate) fn state_count(n: usize) -> usize {
        (1..=n).map(|len| (n - len + 1) * (len + 1)).sum()
    }

    #[inline]
    pub(crate) fn index(&self, i: usize, j: usize, t: usize) -> usize {
        debug_assert!(i >= 1 && i <= j && j <= self.n && t <= j - i + 1);
        self.offsets[(i - 1) * self.n + (j - 1)] + t
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }
}

/// Costs `C^h_{i,j}` and the option that attains each of them.
#[derive(Clone, Debug)]
pub struct DpTable<'a> {
    inst: &'a WeightedInstance,
    cuts: CutRange,
    layout: StateLayout,
    costs: Vec<Weight>,
    choices: Vec<u32>,
    stats: SolveStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizerReport {
    pub id: SubproblemId,
    pub split_cost: Weight,
    /// Every cut `l` with `C^h_{i,l} + C^h_{l+1,j} = S^h_{i,j}`, ascending.
    pub minimizers: Vec<usize>,
    /// The leftmost minimizer.
    pub canonical: usize,
    /// The rightmost minimizer.
    pub rightmost: usize,
}

impl MinimizerReport {
    pub fn is_unique(&self) -> bool {
        self.minimizers.len() == 1
    }
}

/// Best equal-to-rooted and best less-than-rooted costs of a sub-instance.
///
/// A less-than test that splits off a single key routes exactly like the
/// equal-to test on that key, so `lt` only counts cuts leaving at least two
/// keys on each side. `lt_any` is `w + S^h_{i,j}` over every cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootSplit {
    /// `w + C^{h'-1}_{i,j}` where `a_{h'}` is the heaviest key present.
    pub eq: Weight,
    /// `None` when fewer than four keys are present.
    pub lt: Option<Weight>,
    pub lt_any: Option<Weight>,
}

impl RootSplit {
    pub fn best(&self) -> Weight {
        [self.lt, self.lt_any].into_iter().flatten().fold(self.eq, Weight::min)
    }
}

#[derive(Clone, Debug)]
pub struct FullSolution<'a> {
    pub table: DpTable<'a>,
    pub cost: Weight,
    pub tree: SearchTree,
}

/// Solves the whole instance with the unrestricted cut range.
pub fn solve_full(inst: &WeightedInstance) -> FullSolution<'_> {
    solve_with(inst, CutRange::Full)
}

pub fn solve_with(inst: &WeightedInstance, cuts: CutRange) -> FullSolution<'_> {
    let table = DpTable::build(inst, cuts);
    let n = inst.n();
    let id = SubproblemId::new(1, n, n);
    let cost = table.cost_at(id).expect("root id is valid");
    let tree = table.reconstruct(id).expect("non-empty root");
    FullSolution { table, cost, tree }
}

impl<'a> DpTable<'a> {
    /// Approximate heap size of a table for `n` keys.
    pub fn estimated_bytes(n: usize) -> u64 {
        StateLayout::state_count(n) as u64 * (std::mem::size_of::<Weight>() as u64 + 4)
    }

    pub fn build(inst: &'a WeightedInstance, cuts: CutRange) -> Self {
        let n = inst.n();
        let layout = StateLayout::new(n);
        let mut costs = vec![Weight::ZERO; layout.len()];
        let mut choices = vec![0u32; layout.len()];
        let mut stats = SolveStats::default();
        let perm = inst.asc_perm();

        for len in 1..=n {
            for i in 1..=n + 1 - len {
                let j = i + len - 1;
                choices[layout.index(i, j, 0)] = Choice::Empty.encode();
                let mut t = 0;
                for h in 1..=n {
                    let k = perm[h - 1];
                    if k < i || k > j {
                        continue;
                    }
                    t += 1;
                    stats.subproblems_evaluated += 1;
                    let at = layout.index(i, j, t);
                    if t == 1 {
                        choices[at] = Choice::Leaf.encode();
                        continue;
                    }
                    let eq = costs[layout.index(i, j, t - 1)];
                    let mut best: Option<(Weight, usize)> = None;
                    let (lo, hi) = cuts.bounds(i, j);
                    for l in lo..=hi.min(j - 1) {
                        let tl = inst.count_in(h, i, l);
                        if tl == 0 || tl == t {
                            continue;
                        }
                        stats.cutpoints_scanned += 1;
                        let c = costs[layout.index(i, l, tl)] + costs[layout.index(l + 1, j, t - tl)];
                        if best.is_none_or(|(b, _)| c < b) {
                            best = Some((c, l));
                        }
                    }
                    let w = inst.weight_in(h, i, j);
                    let (c, choice) = match best {
                        Some((s, l)) if s < eq => (s, Choice::SplitAt(l)),
                        _ => (eq, Choice::EqOnHeaviest),
                    };
                    costs[at] = w + c;
                    choices[at] = choice.encode();
                }
            }
        }
        DpTable { inst, cuts, layout, costs, choices, stats }
    }

    pub fn instance(&self) -> &'a WeightedInstance {
        self.inst
    }

    pub fn cut_range(&self) -> CutRange {
        self.cuts
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    /// `|I^h_{i,j}|` for a validated id.
    fn size_of(&self, id: SubproblemId) -> Result<usize> {
        self.inst.check(id)?;
        Ok(self.inst.count_in(id.h, id.i, id.j))
    }

    /// `C^h_{i,j}`.
    pub fn cost_at(&self, id: SubproblemId) -> Result<Weight> {
        let t = self.size_of(id)?;
        Ok(self.costs[self.layout.index(id.i, id.j, t)])
    }

    /// Cost of the sub-instance made of the `t` lightest keys of `[i, j]`.
    pub fn cost_by_count(&self, i: usize, j: usize, t: usize) -> Weight {
        self.costs[self.layout.index(i, j, t)]
    }

    pub fn choice_at(&self, id: SubproblemId) -> Result<Choice> {
        let t = self.size_of(id)?;
        Ok(Choice::decode(self.choices[self.layout.index(id.i, id.j, t)]))
    }

    /// `C^h_{i,l} + C^h_{l+1,j}` for every admissible cut `l`.
    pub fn cut_costs(&self, id: SubproblemId) -> Result<Vec<(usize, Weight)>> {
        let t = self.size_of(id)?;
        if t < 2 {
            return Err(Error::TooFewKeys { i: id.i, j: id.j, h: id.h });
        }
        let SubproblemId { i, j, h } = id;
        let (lo, hi) = self.cuts.bounds(i, j);
        let mut out = Vec::new();
        for l in lo..=hi.min(j - 1) {
            let tl = self.inst.count_in(h, i, l);
            if tl == 0 || tl == t {
                continue;
            }
            out.push((l, self.cost_by_count(i, l, tl) + self.cost_by_count(l + 1, j, t - tl)));
        }
        Ok(out)
    }

    /// The exact set of cuts attaining `S^h_{i,j}`.
    pub fn minimizers_at(&self, id: SubproblemId) -> Result<MinimizerReport> {
        let cuts = self.cut_costs(id)?;
        let split_cost = cuts.iter().map(|&(_, c)| c).min().ok_or(Error::NoValidCut { i: id.i, j: id.j, h: id.h })?;
        let minimizers: Vec<usize> = cuts.iter().filter(|&&(_, c)| c == split_cost).map(|&(l, _)| l).collect();
        Ok(MinimizerReport {
            id,
            split_cost,
            canonical: minimizers[0],
            rightmost: minimizers[minimizers.len() - 1],
            minimizers,
        })
    }

    /// Best costs with an equal-to root and with a less-than root.
    pub fn root_split_at(&self, id: SubproblemId) -> Result<RootSplit> {
        let t = self.size_of(id)?;
        if t < 2 {
            return Err(Error::TooFewKeys { i: id.i, j: id.j, h: id.h });
        }
        let w = self.inst.weight_in(id.h, id.i, id.j);
        let eq = w + self.cost_by_count(id.i, id.j, t - 1);
        let cuts = self.cut_costs(id)?;
        let lt_any = cuts.iter().map(|&(_, c)| w + c).min();
        let lt = cuts
            .iter()
            .filter(|&&(l, _)| {
                let tl = self.inst.count_in(id.h, id.i, l);
                tl >= 2 && t - tl >= 2
            })
            .map(|&(_, c)| w + c)
            .min();
        Ok(RootSplit { eq, lt, lt_any })
    }

    /// Walks the stored choices back into a tree for `I^h_{i,j}`.
    pub fn reconstruct(&self, id: SubproblemId) -> Result<SearchTree> {
        let t = self.size_of(id)?;
        if t == 0 {
            return Err(Error::TooFewKeys { i: id.i, j: id.j, h: id.h });
        }
        Ok(self.rebuild(id.i, id.j, t))
    }

    fn rebuild(&self, i: usize, j: usize, t: usize) -> SearchTree {
        let h = self.inst.level(i, j, t);
        match Choice::decode(self.choices[self.layout.index(i, j, t)]) {
            Choice::Empty => unreachable!("empty sub-instance reached during reconstruction"),
            Choice::Leaf => SearchTree::leaf(self.inst.asc_perm()[h - 1]),
            Choice::EqOnHeaviest => SearchTree::eq(self.inst.asc_perm()[h - 1], self.rebuild(i, j, t - 1)),
            Choice::SplitAt(l) => {
                let tl = self.inst.count_in(h, i, l);
                SearchTree::lt(l + 1, self.rebuild(i, l, tl), self.rebuild(l + 1, j, t - tl))
            }
        }
    }
}

/// `C⁼` and `C<` for the whole instance.
pub fn root_split_costs(inst: &WeightedInstance) -> Result<RootSplit> {
    let n = inst.n();
    if n < 2 {
        return Err(Error::TooFewKeys { i: 1, j: n, h: n });
    }
    DpTable::build(inst, CutRange::Full).root_split_at(SubproblemId::new(1, n, n))
}
