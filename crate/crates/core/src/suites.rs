//! Verification suites behind `twocst verify`. Each suite returns named
//! pass/fail checks with a short detail string.

use rayon::prelude::*;
use serde::Serialize;

use crate::dp::{DpTable, RootSplit};
use crate::error::{Error, Result};
use crate::instance::{parse_rational, SubproblemId, WeightedInstance};
use crate::lab::{
    balanced_pattern_claims, check_minimizer_monotonicity, check_thresholds, default_tight4, default_tight8,
    epsilon_instance, generate, geometric_scan, marginal_advantage_check, GeneratorSpec, MonotonicityMode, TieBreak,
};
use crate::oracle::brute_force_cost;
use crate::pruned::{solve_bounded_log, solve_pruned};
use crate::tree::{RootKind, SearchTree};
use crate::weight::Weight;
use crate::{solve_full, CutRange};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.ok).count();
        SuiteReport { suite: suite.into(), passed, failed: checks.len() - passed, checks }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), ok, detail: detail.into() }
}

fn w(v: u64) -> Weight {
    Weight::new(v)
}

fn id(i: usize, j: usize, h: usize) -> SubproblemId {
    SubproblemId::new(i, j, h)
}

fn fixed(weights: &[u64]) -> WeightedInstance {
    WeightedInstance::from_u64(weights).expect("fixed instance is valid")
}

fn eq_lt(r: &RootSplit) -> String {
    format!("C_eq={} C_lt={}", r.eq, r.lt.map_or("none".into(), |x| x.to_string()))
}

/// Exact values of every published counter-example.
pub fn counterexamples() -> Result<SuiteReport> {
    let mut out = Vec::new();

    let fig1 = fixed(&[10, 1, 2, 3, 1, 3, 1, 11]);
    type T = SearchTree;
    let drawn = T::lt(
        7,
        T::eq(1, T::lt(4, T::lt(3, T::leaf(2), T::leaf(3)), T::eq(6, T::lt(5, T::leaf(4), T::leaf(5))))),
        T::lt(8, T::leaf(7), T::leaf(8)),
    );
    let drawn_cost = drawn.cost(&fig1)?;
    let opt = solve_full(&fig1).cost;
    out.push(check("eight-key tree costs 88", drawn_cost == w(88), format!("cost {drawn_cost}")));
    out.push(check("eight-key optimum <= 88", opt <= w(88), format!("optimum {opt}")));

    let i = fixed(&[1, 10, 1]);
    let t = DpTable::build(&i, CutRange::Full);
    let vals = [id(1, 2, 3), id(2, 3, 3), id(1, 3, 3), id(2, 2, 3)].map(|x| t.cost_at(x).expect("valid id"));
    out.push(check("[1,10,1] costs (11, 11, 14, 0)", vals == [w(11), w(11), w(14), w(0)], format!("{vals:?}")));
    out.push(check(
        "[1,10,1] violates the quadrangle inequality",
        vals[0] + vals[1] > vals[2] + vals[3],
        format!("{} > {}", vals[0] + vals[1], vals[2] + vals[3]),
    ));

    let i = fixed(&[1, 9, 1, 1, 9, 1]);
    let t = DpTable::build(&i, CutRange::Full);
    let (a, b) = (t.minimizers_at(id(1, 6, 6))?, t.minimizers_at(id(2, 6, 6))?);
    out.push(check(
        "[1,9,1,1,9,1] L_16 = 3 > 2 = L_26, unique",
        a.minimizers == [3] && b.minimizers == [2],
        format!("{:?} {:?}", a.minimizers, b.minimizers),
    ));

    for s in [2u32, 3] {
        let v = (1u64 << (s + 1)) + 1;
        let i = generate(&GeneratorSpec::HeavyMid { v, s })?;
        let n = i.n();
        let j = (1usize << s) + 1;
        let t = DpTable::build(&i, CutRange::Full);
        let c = |a: usize, b: usize| t.cost_at(id(a, b, n)).expect("valid id");
        let (lhs, rhs) = (c(1, j) + c(j, n), c(j, j) + c(1, n));
        out.push(check(format!("heavy middle s={s} V={v} violates QI"), lhs > rhs, format!("{lhs} > {rhs}")));
    }

    let i = fixed(&[0, 2, 2, 0, 1, 1]);
    let t = DpTable::build(&i, CutRange::Full);
    let c16 = t.cut_costs(id(1, 6, 6))?;
    let c26 = t.cut_costs(id(2, 6, 6))?;
    let has = |v: &[(usize, Weight)], l: usize, c: u64| v.iter().any(|&(x, y)| x == l && y == w(c));
    out.push(check(
        "[0,2,2,0,1,1] cut costs",
        has(&c16, 2, 9) && has(&c16, 3, 9) && has(&c16, 4, 8) && has(&c26, 3, 7) && has(&c26, 4, 8),
        format!("[1,6] {c16:?}; [2,6] {c26:?}"),
    ));
    let (a, b) = (t.minimizers_at(id(1, 6, 6))?, t.minimizers_at(id(2, 6, 6))?);
    out.push(check(
        "[0,2,2,0,1,1] L_16 = 4 > 3 = L_26",
        a.minimizers == [4] && b.rightmost == 3,
        format!("{:?} {:?}", a.minimizers, b.minimizers),
    ));
    let ti = DpTable::build(&i, CutRange::Interior);
    let (a, b) = (ti.minimizers_at(id(1, 6, 6))?, ti.minimizers_at(id(2, 6, 6))?);
    out.push(check(
        "[0,2,2,0,1,1] interior cuts: L_16 = 4 > 3 = L_26",
        a.minimizers == [4] && b.minimizers == [3],
        format!("{:?} {:?}", a.minimizers, b.minimizers),
    ));

    let i = fixed(&epsilon_instance());
    let t = DpTable::build(&i, CutRange::Full);
    let (a, b) = (t.minimizers_at(id(1, 6, 7))?, t.minimizers_at(id(2, 7, 7))?);
    out.push(check(
        "seven-key instance L_16 = 4 > 3 = L_27",
        a.minimizers == [4] && b.rightmost == 3 && a.canonical > b.rightmost,
        format!("{:?} {:?}", a.minimizers, b.minimizers),
    ));

    let i = fixed(&[12, 10, 3, 9, 8, 2, 6, 7, 5, 1, 11, 13]);
    let t = DpTable::build(&i, CutRange::Full);
    let (a, b) = (t.minimizers_at(id(1, 11, 12))?, t.minimizers_at(id(2, 12, 12))?);
    out.push(check(
        "twelve-key instance L_1,11 = 6 > 5 = L_2,12, unique",
        a.minimizers == [6] && b.minimizers == [5],
        format!("{:?} {:?}", a.minimizers, b.minimizers),
    ));
    let light = |a: usize, b: usize| {
        let max = (a..=b).map(|k| i.weight(k)).max().expect("non-empty");
        max.times(4) < i.weight_in(12, a, b)
    };
    out.push(check("twelve-key sub-instances have max weight < W/4", light(1, 11) && light(2, 12), ""));
    let diag = check_minimizer_monotonicity(&i, MonotonicityMode::Diagonal);
    out.push(check(
        "twelve-key diagonal violation found by the checker",
        diag.iter().any(|v| v.at == id(1, 11, 12) && v.robust),
        format!("{} violations", diag.len()),
    ));

    let m = marginal_advantage_check(1)?;
    out.push(check(
        "[11,23,23,13,0] root costs (141,140) and (152,153)",
        (m.prefix.eq, m.prefix.lt, m.whole.eq, m.whole.lt) == (w(141), Some(w(140)), w(152), Some(w(153))),
        format!("[1,4] {}; [1,5] {}", eq_lt(&m.prefix), eq_lt(&m.whole)),
    ));

    let i = generate(&GeneratorSpec::Pattern { cycle: vec![1, 3], n: 24 })?;
    let t = DpTable::build(&i, CutRange::Full);
    let vals = [id(1, 24, 24), id(2, 23, 24), id(1, 23, 24), id(2, 24, 24)].map(|x| t.cost_at(x).expect("valid id"));
    out.push(check(
        "(1,3) pattern n=24 costs 216/193/200/210",
        vals == [w(216), w(193), w(200), w(210)],
        format!("{vals:?}"),
    ));

    Ok(SuiteReport::new("counterexamples", out))
}

/// Threshold implications on random instances plus both tightness
/// witnesses.
pub fn thresholds(max_n: usize, cases: usize, seed: u64) -> Result<SuiteReport> {
    if max_n < 2 {
        return Err(Error::InvalidParameter("thresholds suite needs --n >= 2".into()));
    }
    let reports: Vec<Result<(usize, Vec<String>)>> = (0..cases as u64)
        .into_par_iter()
        .map(|c| {
            let n = 2 + (c as usize % (max_n - 1));
            let inst = generate(&GeneratorSpec::Random { seed: seed.wrapping_add(c), lo: 0, hi: 20, n })?;
            let r = check_thresholds(&inst)?;
            let applied = r.implications.iter().filter(|x| x.applicable).count();
            Ok((applied, r.failures().map(|f| format!("case {c}: {}", f.name)).collect()))
        })
        .collect();
    let mut applied = 0;
    let mut failures = Vec::new();
    for r in reports {
        let (a, f) = r?;
        applied += a;
        failures.extend(f);
    }
    let mut out = vec![check(
        format!("{cases} random instances, n <= {max_n}"),
        failures.is_empty(),
        if failures.is_empty() { format!("{applied} applicable implications hold") } else { failures.join("; ") },
    )];

    let t4 = check_thresholds(&generate(&default_tight4())?)?;
    let lt = t4.c_lt.unwrap_or(Weight::MAX);
    out.push(check(
        "tight4: C_eq - C_lt = eps",
        t4.c_eq.checked_sub(lt) == Some(w(2)),
        format!("C_eq={} C_lt={lt}", t4.c_eq),
    ));
    let t8 = check_thresholds(&generate(&default_tight8())?)?;
    let (a, b) = (t8.alpha, t8.beta);
    let lt = t8.c_lt.unwrap_or(Weight::MAX);
    out.push(check(
        "tight8 at alpha = W/3: C_eq - C_lt = 2 beta - alpha",
        t8.c_eq + a == lt + b.times(2),
        format!("C_eq={} C_lt={lt} alpha={a} beta={b}", t8.c_eq),
    ));
    Ok(SuiteReport::new("thresholds", out))
}

/// Agreement of the exact solvers with the brute-force oracle on random
/// `n`-key instances with weights in `[0, 10]`.
pub fn oracle(n: usize, cases: usize, seed: u64) -> Result<SuiteReport> {
    if n == 0 || n > 16 {
        return Err(Error::InvalidParameter(format!("oracle suite needs 1 <= n <= 16, got {n}")));
    }
    let rows: Vec<Result<Option<String>>> = (0..cases as u64)
        .into_par_iter()
        .map(|c| {
            let inst = generate(&GeneratorSpec::Random { seed: seed.wrapping_add(c), lo: 0, hi: 10, n })?;
            let truth = brute_force_cost(&inst)?;
            let full = solve_full(&inst).cost;
            let pruned = solve_pruned(&inst).cost;
            let log = match solve_bounded_log(&inst) {
                Ok(s) => Some(s.cost),
                Err(Error::ZeroWeight { .. }) => None,
                Err(e) => return Err(e),
            };
            let ok = full == truth && pruned == truth && log.is_none_or(|x| x == truth);
            Ok((!ok).then(|| format!("case {c}: oracle {truth}, full {full}, pruned {pruned}, bounded-log {log:?}")))
        })
        .collect();
    let mut bad = Vec::new();
    for r in rows {
        if let Some(m) = r? {
            bad.push(m);
        }
    }
    let agree = cases - bad.len();
    let detail = if bad.is_empty() { format!("{agree}/{cases} agree") } else { bad.join("; ") };
    Ok(SuiteReport::new("oracle", vec![check(format!("n={n} seed={seed}"), bad.is_empty(), detail)]))
}

/// The cost identity and both minimizer relations on the `(1, 3)` pattern.
/// Minimizer relations are judged with the rightmost minimizer; the
/// leftmost result is reported in the detail.
pub fn pattern_claims(p: u32) -> Result<SuiteReport> {
    let r = balanced_pattern_claims(p)?;
    let ns: Vec<usize> = r.identity.iter().map(|x| x.n).collect();
    let bad: Vec<usize> = r.identity.iter().filter(|x| !x.holds).map(|x| x.n).collect();
    let mut out = vec![check(
        format!("p={p} cost identity"),
        bad.is_empty(),
        format!("even n in [{}, {}]; failing n: {bad:?}", ns.first().unwrap_or(&0), ns.last().unwrap_or(&0)),
    )];
    for (name, rows) in [("L_2n = L_3n + 1", &r.shift), ("L_1n = L_1,n-1 - 1", &r.shrink)] {
        let right = rows.iter().all(|x| x.holds(TieBreak::Rightmost));
        let left = rows.iter().all(|x| x.holds(TieBreak::Leftmost));
        out.push(check(
            format!("p={p} {name}"),
            right,
            format!("{} values of n; leftmost minimizers {}", rows.len(), if left { "agree" } else { "disagree" }),
        ));
    }
    Ok(SuiteReport::new("pattern-claims", out))
}

/// Root type on truncated geometric instances and the all-equal-to chain
/// cost against its closed form.
pub fn geometric(n: usize) -> Result<SuiteReport> {
    let gammas = ["4/7", "11/20", "3/5", "5/8", "7/10", "1/2"];
    let parsed =
        gammas.iter().map(|g| parse_rational(g).map_err(Error::InvalidParameter)).collect::<Result<Vec<_>>>()?;
    let rows = geometric_scan(n, &parsed)?;
    let mut out = Vec::new();
    for row in &rows {
        let expect = match row.gamma.as_str() {
            "4/7" | "11/20" => Some(RootKind::EqualTo),
            "7/10" => Some(RootKind::LessThan),
            _ => None,
        };
        let detail = format!("root {}, C_eq={}, C_lt={:?}", row.root, row.c_eq, row.c_lt.map(|x| x.to_string()));
        match expect {
            Some(k) => out.push(check(format!("gamma={} n={n} root {k}", row.gamma), row.root == k, detail)),
            None => out.push(check(format!("gamma={} n={n} (reported)", row.gamma), true, detail)),
        }
        out.push(check(
            format!("gamma={} chain closed form", row.gamma),
            row.closed_form_matches,
            row.all_eq_cost.to_string(),
        ));
    }
    Ok(SuiteReport::new("geometric", out))
}
