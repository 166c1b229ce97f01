//! One entry point over every solver, with a memory estimate per solver.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use serde::Serialize;

use crate::dp::{solve_full, StateLayout};
use crate::error::{Error, Result};
use crate::instance::WeightedInstance;
use crate::oracle::{brute_force_optimal, ORACLE_MAX_KEYS};
use crate::pruned::{solve_bounded_const, solve_bounded_log, solve_pruned};
use crate::stats::SolveStats;
use crate::threeway::{solve_3wcst_cubic, solve_3wcst_knuth_yao};
use crate::tree::{RootKind, SearchTree};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Full,
    Pruned,
    BoundedConst,
    BoundedLog,
    Oracle,
    #[value(name = "3wcst")]
    #[serde(rename = "3wcst")]
    ThreeWay,
    #[value(name = "3wcst-ky")]
    #[serde(rename = "3wcst-ky")]
    ThreeWayKy,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Full => "full",
            Algorithm::Pruned => "pruned",
            Algorithm::BoundedConst => "bounded-const",
            Algorithm::BoundedLog => "bounded-log",
            Algorithm::Oracle => "oracle",
            Algorithm::ThreeWay => "3wcst",
            Algorithm::ThreeWayKy => "3wcst-ky",
        }
    }

    /// Rough peak heap use in bytes for `n` keys.
    pub fn estimated_bytes(self, n: usize) -> u64 {
        let states = StateLayout::state_count(n) as u64;
        let w = std::mem::size_of::<Weight>() as u64;
        match self {
            Algorithm::Full => crate::DpTable::estimated_bytes(n),
            Algorithm::Pruned | Algorithm::BoundedLog => states * (w + 8 + 8 + 4),
            Algorithm::BoundedConst => (n as u64).pow(2) * (w + 8),
            Algorithm::Oracle => {
                if n >= 40 {
                    u64::MAX
                } else {
                    (1u64 << n) * w
                }
            }
            Algorithm::ThreeWay | Algorithm::ThreeWayKy => (n as u64 + 2).pow(2) * (w + 8),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub scale: Weight,
    pub cost: Weight,
    /// `None` for the three-way solvers, which build no two-way tree.
    pub root: Option<RootKind>,
    pub stats: SolveStats,
    #[serde(skip)]
    pub tree: Option<SearchTree>,
    #[serde(skip)]
    pub wall: Duration,
}

/// Fails with [`Error::MemoryBudget`] when the estimate exceeds `limit_mb`.
pub fn check_budget(alg: Algorithm, n: usize, limit_mb: Option<u64>) -> Result<()> {
    let Some(limit_mb) = limit_mb else { return Ok(()) };
    let need = alg.estimated_bytes(n);
    let need_mb = need.div_ceil(1 << 20);
    if need_mb > limit_mb {
        return Err(Error::MemoryBudget { need_mb, limit_mb });
    }
    Ok(())
}

/// Reads `TWOCST_MEM_LIMIT_MB`.
pub fn env_memory_limit() -> Result<Option<u64>> {
    match std::env::var("TWOCST_MEM_LIMIT_MB") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::InvalidParameter(format!("TWOCST_MEM_LIMIT_MB={v:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

/// Runs `alg`. `r` is the weight bound for `bounded-const`; it defaults to
/// the largest weight.
pub fn run_algorithm(inst: &WeightedInstance, alg: Algorithm, r: Option<u64>) -> Result<AlgorithmReport> {
    let start = Instant::now();
    let n = inst.n();
    let (cost, tree, stats) = match alg {
        Algorithm::Full => {
            let s = solve_full(inst);
            (s.cost, Some(s.tree), s.table.stats())
        }
        Algorithm::Pruned => {
            let s = solve_pruned(inst);
            (s.cost, Some(s.tree), s.stats)
        }
        Algorithm::BoundedConst => {
            let r = match r {
                Some(r) => r,
                None => inst
                    .max_weight()
                    .to_u64()
                    .ok_or_else(|| Error::InvalidParameter("largest weight exceeds 64 bits; pass --r".into()))?,
            };
            let s = solve_bounded_const(inst, r)?;
            (s.cost, Some(s.tree), s.stats)
        }
        Algorithm::BoundedLog => {
            let s = solve_bounded_log(inst)?;
            (s.cost, Some(s.tree), s.stats)
        }
        Algorithm::Oracle => {
            if n > ORACLE_MAX_KEYS {
                return Err(Error::TooLarge { n, limit: ORACLE_MAX_KEYS });
            }
            let keys: Vec<usize> = (1..=n).collect();
            let (c, t) = brute_force_optimal(inst, &keys)?;
            (c, Some(t), SolveStats::default())
        }
        Algorithm::ThreeWay | Algorithm::ThreeWayKy => {
            let s = if alg == Algorithm::ThreeWay { solve_3wcst_cubic(inst) } else { solve_3wcst_knuth_yao(inst) };
            let stats = SolveStats { cutpoints_scanned: s.root_scans, ..SolveStats::default() };
            (s.cost, None, stats)
        }
    };
    Ok(AlgorithmReport {
        algorithm: alg,
        n,
        scale: inst.scale(),
        cost,
        root: tree.as_ref().map(SearchTree::root_kind),
        stats,
        tree,
        wall: start.elapsed(),
    })
}
