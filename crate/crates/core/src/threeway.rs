//! Optimal three-way comparison search trees (every node compares the query
//! with its key and branches on `<`, `=`, `>`), successful queries only.
//!
//! `C[i,j] = w(i,j) + min_r C[i,r-1] + C[r+1,j]`, with `C` of an empty range
//! equal to 0, so a key at depth `d` (root depth 1) costs `d` comparisons.

use serde::Serialize;

use crate::instance::WeightedInstance;
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeWaySolution {
    pub cost: Weight,
    /// Root chosen for the whole range (leftmost among optimal roots).
    pub root: usize,
    /// Number of candidate roots evaluated.
    pub root_scans: u64,
}

struct Tables {
    n: usize,
    cost: Vec<Weight>,
    root: Vec<usize>,
}

impl Tables {
    fn new(n: usize) -> Self {
        Tables { n, cost: vec![Weight::ZERO; (n + 2) * (n + 2)], root: vec![0; (n + 2) * (n + 2)] }
    }

    // ranges with j = i - 1 are empty and keep cost 0
    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * (self.n + 2) + j
    }
}

fn solve(inst: &WeightedInstance, knuth_yao: bool) -> ThreeWaySolution {
    let n = inst.n();
    let mut t = Tables::new(n);
    let mut scans = 0u64;
    for i in 1..=n {
        let at = t.at(i, i);
        t.cost[at] = inst.weight(i);
        t.root[at] = i;
    }
    for len in 2..=n {
        for i in 1..=n + 1 - len {
            let j = i + len - 1;
            let (lo, hi) = if knuth_yao { (t.root[t.at(i, j - 1)], t.root[t.at(i + 1, j)]) } else { (i, j) };
            let mut best: Option<(Weight, usize)> = None;
            for r in lo..=hi {
                scans += 1;
                let c = t.cost[t.at(i, r - 1)] + t.cost[t.at(r + 1, j)];
                if best.is_none_or(|(b, _)| c < b) {
                    best = Some((c, r));
                }
            }
            let (c, r) = best.expect("non-empty root range");
            let at = t.at(i, j);
            t.cost[at] = inst.weight_in(n, i, j) + c;
            t.root[at] = r;
        }
    }
    let at = t.at(1, n);
    ThreeWaySolution { cost: t.cost[at], root: t.root[at], root_scans: scans }
}

/// Every root of every range is tried: O(n³).
pub fn solve_3wcst_cubic(inst: &WeightedInstance) -> ThreeWaySolution {
    solve(inst, false)
}

/// Roots of `[i, j]` are searched in `[R[i,j-1], R[i+1,j]]`: O(n²) in total.
pub fn solve_3wcst_knuth_yao(inst: &WeightedInstance) -> ThreeWaySolution {
    solve(inst, true)
}
