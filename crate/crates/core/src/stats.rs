use serde::Serialize;

/// Exact work counters collected by the solvers.
///
/// A sub-problem is counted once when its value is first computed; memo hits
/// are free. Every (sub-problem, cut) pair whose cost is evaluated adds one
/// to `cutpoints_scanned`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub subproblems_evaluated: u64,
    pub cutpoints_scanned: u64,
    /// Sub-problems where only the equal-to option was considered.
    pub eq_prunes: u64,
    /// Sub-problems where only less-than options were considered.
    pub lt_prunes: u64,
    /// Largest number of holes (removed heavier keys) in any evaluated
    /// sub-problem.
    pub max_holes: u64,
}

impl SolveStats {
    pub fn absorb(&mut self, other: &SolveStats) {
        self.subproblems_evaluated += other.subproblems_evaluated;
        self.cutpoints_scanned += other.cutpoints_scanned;
        self.eq_prunes += other.eq_prunes;
        self.lt_prunes += other.lt_prunes;
        self.max_holes = self.max_holes.max(other.max_holes);
    }
}
