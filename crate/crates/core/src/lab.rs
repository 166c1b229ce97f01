//! Instance generators and checks of the structural properties of optimal
//! trees: root-type thresholds, side weights, minimizer monotonicity,
//! quadrangle-inequality tables and geometric instances.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dp::{DpTable, RootSplit};
use crate::error::{Error, Result};
use crate::instance::{Rational, SubproblemId, WeightedInstance};
use crate::tree::{RootKind, SearchTree};
use crate::weight::Weight;
use crate::CutRange;

/// Parameters of the special instance families.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// `(1, γ, γ², …, γ^{n-1})`.
    Geometric { gamma: Rational, n: usize },
    /// `cycle` repeated and truncated to `n` keys.
    Pattern { cycle: Vec<u64>, n: usize },
    /// Uniform integers in `[lo, hi]` from a ChaCha8 stream.
    Random { seed: u64, lo: u64, hi: u64, n: usize },
    /// `(α/2, α, β-ε, α/2+ε)`.
    Tight4 { alpha: Rational, beta: Rational, eps: Rational },
    /// `(α, 0, β, 0, β, β, 0, β)`.
    Tight8 { alpha: Rational, beta: Rational },
    /// `(X₁, G, X₂, G, X₃, G, X₀)` with `X_k = (γ^{4i+k})` for
    /// `i < n/7` and `G` a run of `n/7` zeros.
    Hard { n: usize, gamma: Rational },
    /// `2^s` ones, one key of weight `V`, `2^s` ones.
    HeavyMid { v: u64, s: u32 },
}

impl GeneratorSpec {
    pub fn hard(n: usize) -> Self {
        GeneratorSpec::Hard { n, gamma: Ratio::new(3u32.into(), 4u32.into()) }
    }

    /// Short name used as the instance id in reports.
    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::Geometric { gamma, n } => format!("geometric-{gamma}-n{n}"),
            GeneratorSpec::Pattern { cycle, n } => {
                let c: Vec<String> = cycle.iter().map(u64::to_string).collect();
                format!("pattern-{}-n{n}", c.join("_"))
            }
            GeneratorSpec::Random { seed, lo, hi, n } => format!("random-s{seed}-{lo}_{hi}-n{n}"),
            GeneratorSpec::Tight4 { alpha, beta, eps } => format!("tight4-{alpha}-{beta}-{eps}"),
            GeneratorSpec::Tight8 { alpha, beta } => format!("tight8-{alpha}-{beta}"),
            GeneratorSpec::Hard { n, gamma } => format!("hard-{gamma}-n{n}"),
            GeneratorSpec::HeavyMid { v, s } => format!("heavy-mid-v{v}-s{s}"),
        }
    }
}

fn rat(p: u64, q: u64) -> Rational {
    Ratio::new(p.into(), q.into())
}

fn check_ratio(name: &str, g: &Rational) -> Result<()> {
    if g.is_zero() || *g >= Rational::one() {
        return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {g}")));
    }
    Ok(())
}

pub fn generate(spec: &GeneratorSpec) -> Result<WeightedInstance> {
    let positive = |name: &str, n: usize| {
        if n == 0 {
            Err(Error::InvalidParameter(format!("{name}: n must be positive")))
        } else {
            Ok(())
        }
    };
    match spec {
        GeneratorSpec::Geometric { gamma, n } => {
            positive("geometric", *n)?;
            check_ratio("gamma", gamma)?;
            let w: Vec<Rational> = (0..*n).map(|i| num_traits::pow(gamma.clone(), i)).collect();
            WeightedInstance::from_rationals(&w)
        }
        GeneratorSpec::Pattern { cycle, n } => {
            positive("pattern", *n)?;
            if cycle.is_empty() {
                return Err(Error::InvalidParameter("pattern cycle is empty".into()));
            }
            WeightedInstance::from_u64(&cycle.iter().copied().cycle().take(*n).collect::<Vec<_>>())
        }
        GeneratorSpec::Random { seed, lo, hi, n } => {
            positive("random", *n)?;
            if lo > hi {
                return Err(Error::InvalidParameter(format!("empty range [{lo}, {hi}]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let w: Vec<u64> = (0..*n).map(|_| rng.gen_range(*lo..=*hi)).collect();
            WeightedInstance::from_u64(&w)
        }
        GeneratorSpec::Tight4 { alpha, beta, eps } => {
            let half = alpha / BigUint::from(2u32);
            if beta > alpha || eps.is_zero() || half >= *beta || *eps >= beta - &half {
                return Err(Error::InvalidParameter(format!(
                    "tight4 needs beta <= alpha and 0 < eps < beta - alpha/2 (alpha={alpha}, beta={beta}, eps={eps})"
                )));
            }
            WeightedInstance::from_rationals(&[half.clone(), alpha.clone(), beta - eps, half + eps])
        }
        GeneratorSpec::Tight8 { alpha, beta } => {
            if beta > alpha || beta.is_zero() {
                return Err(Error::InvalidParameter(format!("tight8 needs 0 < beta <= alpha ({alpha}, {beta})")));
            }
            let z = Rational::zero();
            let (a, b) = (alpha.clone(), beta.clone());
            WeightedInstance::from_rationals(&[a, z.clone(), b.clone(), z.clone(), b.clone(), b.clone(), z, b])
        }
        GeneratorSpec::Hard { n, gamma } => {
            check_ratio("gamma", gamma)?;
            if *n == 0 || n % 7 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "hard instance needs n a positive multiple of 7, got {n}"
                )));
            }
            let m = n / 7;
            let x = |k: usize| -> Vec<Rational> { (0..m).map(|i| num_traits::pow(gamma.clone(), 4 * i + k)).collect() };
            let g = vec![Rational::zero(); m];
            let w: Vec<Rational> = [x(1), g.clone(), x(2), g.clone(), x(3), g, x(0)].concat();
            WeightedInstance::from_rationals(&w)
        }
        GeneratorSpec::HeavyMid { v, s } => {
            if *s > 20 {
                return Err(Error::InvalidParameter(format!("heavy-mid block size 2^{s} too large")));
            }
            let block = 1usize << s;
            let mut w = vec![1u64; 2 * block + 1];
            w[block] = *v;
            WeightedInstance::from_u64(&w)
        }
    }
}

// ---------------------------------------------------------------------------
// Quadrangle-inequality tables

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QiCell {
    Undefined,
    Gray,
    Red,
}

impl QiCell {
    fn pgm(self) -> u8 {
        match self {
            QiCell::Undefined => 0,
            QiCell::Gray => 128,
            QiCell::Red => 255,
        }
    }

    fn name(self) -> &'static str {
        match self {
            QiCell::Undefined => "undefined",
            QiCell::Gray => "gray",
            QiCell::Red => "red",
        }
    }
}

/// Cell `(i, j)` is red iff `C_{i+1,j} + C_{i,j-1} > C_{i+1,j-1} + C_{i,j}`
/// over hole-free intervals, with `C` of an empty interval equal to 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QiTable {
    pub n: usize,
    cells: Vec<QiCell>,
}

impl QiTable {
    pub fn cell(&self, i: usize, j: usize) -> QiCell {
        self.cells[(i - 1) * self.n + (j - 1)]
    }

    pub fn red_cells(&self) -> Vec<(usize, usize)> {
        self.defined().filter(|&(_, _, c)| c == QiCell::Red).map(|(i, j, _)| (i, j)).collect()
    }

    pub fn red_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == QiCell::Red).count()
    }

    pub fn gray_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == QiCell::Gray).count()
    }

    fn defined(&self) -> impl Iterator<Item = (usize, usize, QiCell)> + '_ {
        (1..=self.n).flat_map(move |i| (i + 1..=self.n).map(move |j| (i, j, self.cell(i, j))))
    }

    /// `i,j,class` rows for every defined cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,class\n");
        for (i, j, c) in self.defined() {
            out.push_str(&format!("{i},{j},{}\n", c.name()));
        }
        out
    }

    /// Plain PGM: row `i`, column `j`; gray 128, red 255, undefined 0.
    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n255\n", self.n, self.n);
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n).map(|j| self.cell(i, j).pgm().to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn qi_table(inst: &WeightedInstance) -> Result<QiTable> {
    let n = inst.n();
    if n < 3 {
        return Err(Error::InvalidParameter(format!("QI table needs n >= 3, got {n}")));
    }
    let table = DpTable::build(inst, CutRange::Full);
    Ok(qi_from_table(&table))
}

/// QI classification from an already computed table.
pub fn qi_from_table(table: &DpTable<'_>) -> QiTable {
    let n = table.instance().n();
    let c = |i: usize, j: usize| {
        if i > j {
            Weight::ZERO
        } else {
            table.cost_by_count(i, j, j - i + 1)
        }
    };
    let mut cells = vec![QiCell::Undefined; n * n];
    for i in 1..=n {
        for j in i + 1..=n {
            let red = c(i + 1, j) + c(i, j - 1) > c(i + 1, j - 1) + c(i, j);
            cells[(i - 1) * n + (j - 1)] = if red { QiCell::Red } else { QiCell::Gray };
        }
    }
    QiTable { n, cells }
}

// ---------------------------------------------------------------------------
// Minimizer monotonicity

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotonicityMode {
    /// `L^h_{i,j-1} <= L^h_{i,j} <= L^h_{i+1,j}`.
    Sandwich,
    /// `L^h_{i,j} <= L^h_{i+1,j+1}`.
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizerProbe {
    pub id: SubproblemId,
    pub canonical: usize,
    pub rightmost: usize,
    pub minimizers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    pub mode: MonotonicityMode,
    pub at: SubproblemId,
    /// Sandwich: `(i, j-1)`, `(i, j)`, `(i+1, j)`. Diagonal: `(i, j)`,
    /// `(i+1, j+1)`.
    pub probes: Vec<MinimizerProbe>,
    /// The inequality fails for every choice of minimizers, not only for
    /// the leftmost ones.
    pub robust: bool,
}

fn probe(table: &DpTable<'_>, i: usize, j: usize, h: usize) -> Option<MinimizerProbe> {
    let id = SubproblemId::new(i, j, h);
    let r = table.minimizers_at(id).ok()?;
    Some(MinimizerProbe { id, canonical: r.canonical, rightmost: r.rightmost, minimizers: r.minimizers })
}

pub fn check_minimizer_monotonicity(inst: &WeightedInstance, mode: MonotonicityMode) -> Vec<MonotonicityViolation> {
    monotonicity_in_table(&DpTable::build(inst, CutRange::Full), mode)
}

/// Checks every `(i, j, h)` of a computed table where all probed minimizers
/// exist.
pub fn monotonicity_in_table(table: &DpTable<'_>, mode: MonotonicityMode) -> Vec<MonotonicityViolation> {
    let n = table.instance().n();
    let mut out = Vec::new();
    for h in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                let at = SubproblemId::new(i, j, h);
                let v = match mode {
                    MonotonicityMode::Sandwich => sandwich_at(table, i, j, h),
                    MonotonicityMode::Diagonal if j < n => diagonal_at(table, i, j, h),
                    MonotonicityMode::Diagonal => None,
                };
                if let Some((probes, robust)) = v {
                    out.push(MonotonicityViolation { mode, at, probes, robust });
                }
            }
        }
    }
    out
}

fn sandwich_at(table: &DpTable<'_>, i: usize, j: usize, h: usize) -> Option<(Vec<MinimizerProbe>, bool)> {
    let a = probe(table, i, j - 1, h)?;
    let b = probe(table, i, j, h)?;
    let c = probe(table, i + 1, j, h)?;
    if a.canonical <= b.canonical && b.canonical <= c.canonical {
        return None;
    }
    let robust = !b.minimizers.iter().any(|&l| a.canonical <= l && l <= c.rightmost);
    Some((vec![a, b, c], robust))
}

fn diagonal_at(table: &DpTable<'_>, i: usize, j: usize, h: usize) -> Option<(Vec<MinimizerProbe>, bool)> {
    let a = probe(table, i, j, h)?;
    let b = probe(table, i + 1, j + 1, h)?;
    if a.canonical <= b.canonical {
        return None;
    }
    let robust = a.canonical > b.rightmost;
    Some((vec![a, b], robust))
}

// ---------------------------------------------------------------------------
// Root-type thresholds

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: bool,
}

/// Exact root costs of a whole instance and the threshold implications
/// that apply to it.
///
/// `c_lt` counts only less-than roots that leave at least two keys on each
/// side; a cut that isolates one key is the equal-to test on that key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub n: usize,
    pub total: Weight,
    pub alpha: Weight,
    pub beta: Weight,
    pub optimum: Weight,
    pub c_eq: Weight,
    pub c_lt: Option<Weight>,
    /// Best cost among trees whose two top nodes are equal-to tests.
    pub c_eq_eq: Option<Weight>,
    pub eq_root_optimal_exists: bool,
    pub lt_root_strictly_better: bool,
    pub two_consecutive_eq_at_top: bool,
    pub implications: Vec<Implication>,
}

impl ThresholdReport {
    pub fn failures(&self) -> impl Iterator<Item = &Implication> {
        self.implications.iter().filter(|c| c.applicable && !c.holds)
    }
}

pub fn check_thresholds(inst: &WeightedInstance) -> Result<ThresholdReport> {
    let n = inst.n();
    if n < 2 {
        return Err(Error::TooFewKeys { i: 1, j: n, h: n });
    }
    let table = DpTable::build(inst, CutRange::Full);
    let id = SubproblemId::new(1, n, n);
    let optimum = table.cost_at(id)?;
    let RootSplit { eq: c_eq, lt: c_lt, .. } = table.root_split_at(id)?;
    let perm = inst.asc_perm();
    let w = inst.total();
    let alpha = inst.weight(perm[n - 1]);
    let beta = inst.weight(perm[n - 2]);
    let c_eq_eq = (n >= 3).then(|| w + (w - alpha) + table.cost_by_count(1, n, n - 2));

    let eq_le_lt = c_lt.is_none_or(|lt| c_eq <= lt);
    let lt_lt_eq = c_lt.is_some_and(|lt| lt < c_eq);
    let eqeq_worse = c_eq_eq.is_none_or(|c| c > optimum);

    let implications = vec![
        Implication { name: "alpha > 3/7 W => C_eq <= C_lt", applicable: alpha.times(7) > w.times(3), holds: eq_le_lt },
        Implication { name: "alpha < 1/4 W => C_lt < C_eq", applicable: alpha.times(4) < w, holds: lt_lt_eq },
        Implication {
            name: "2 alpha + beta >= W => C_eq <= C_lt",
            applicable: alpha.times(2) + beta >= w,
            holds: eq_le_lt,
        },
        Implication {
            name: "alpha + beta < 1/2 W => no optimal eq-eq prefix",
            applicable: n >= 3 && (alpha + beta).times(2) < w,
            holds: eqeq_worse,
        },
        Implication {
            name: "alpha + 4 beta < W => no optimal eq-eq prefix",
            applicable: n >= 3 && alpha + beta.times(4) < w,
            holds: eqeq_worse,
        },
    ];
    Ok(ThresholdReport {
        n,
        total: w,
        alpha,
        beta,
        optimum,
        c_eq,
        c_lt,
        c_eq_eq,
        eq_root_optimal_exists: eq_le_lt,
        lt_root_strictly_better: lt_lt_eq,
        two_consecutive_eq_at_top: c_eq_eq == Some(optimum),
        implications,
    })
}

// ---------------------------------------------------------------------------
// Side weights of optimal roots

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideWeightViolation {
    pub id: SubproblemId,
    pub weight: Weight,
    pub sw_root: Weight,
    pub sw_main: Weight,
    pub tree: SearchTree,
}

/// Ways to read a node as a test: its side weight and its main branch.
///
/// A less-than node with a leaf child routes exactly like the equal-to test
/// on that leaf, so it is offered both readings. Equal subtree weights
/// offer both children as the main branch.
fn readings<'t>(node: &'t SearchTree, inst: &WeightedInstance) -> Vec<(Weight, Option<&'t SearchTree>)> {
    let wt = |t: &SearchTree| t.weight(inst).expect("keys of a reconstructed tree");
    match node {
        SearchTree::Leaf { .. } => vec![(Weight::ZERO, None)],
        SearchTree::Eq { key, no, .. } => vec![(inst.weight(*key), Some(no))],
        SearchTree::Lt { yes, no, .. } => {
            let (wy, wn) = (wt(yes), wt(no));
            let mut out = Vec::new();
            if wy >= wn {
                out.push((wn, Some(&**yes)));
            }
            if wn >= wy {
                out.push((wy, Some(&**no)));
            }
            if let SearchTree::Leaf { key } = **yes {
                out.push((inst.weight(key), Some(&**no)));
            }
            if let SearchTree::Leaf { key } = **no {
                out.push((inst.weight(key), Some(&**yes)));
            }
            out
        }
    }
}

/// `(sw(v₀), sw(v₁))` for the reading of the root that satisfies both
/// inequalities, or the first reading if none does.
fn root_side_weights(tree: &SearchTree, inst: &WeightedInstance, w: Weight) -> (Weight, Weight, bool) {
    let mut first = None;
    for (sw0, main) in readings(tree, inst) {
        let sw1 =
            main.map_or(Weight::ZERO, |m| readings(m, inst).into_iter().map(|(s, _)| s).max().unwrap_or(Weight::ZERO));
        let ok = sw0.times(4) >= w && (sw0 + sw1).times(2) >= w;
        if ok {
            return (sw0, sw1, true);
        }
        first.get_or_insert((sw0, sw1));
    }
    let (a, b) = first.expect("a tree has at least one reading");
    (a, b, false)
}

/// Checks `sw(v₀) + sw(v₁) >= w/2` and `sw(v₀) >= w/4` on the reconstructed
/// optimal tree of every sub-instance with at least three keys.
pub fn check_side_weight_theorem(inst: &WeightedInstance) -> Result<(), Box<SideWeightViolation>> {
    let table = DpTable::build(inst, CutRange::Full);
    let n = inst.n();
    for i in 1..=n {
        for j in i + 2..=n {
            for t in 3..=j - i + 1 {
                let id = SubproblemId::new(i, j, inst.level(i, j, t));
                let tree = table.reconstruct(id).expect("non-empty sub-instance");
                let w = inst.weight_in(id.h, i, j);
                let (sw_root, sw_main, ok) = root_side_weights(&tree, inst, w);
                if !ok {
                    return Err(Box::new(SideWeightViolation { id, weight: w, sw_root, sw_main, tree }));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Geometric instances

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricRow {
    pub gamma: String,
    pub n: usize,
    /// Weights are `γ^i · scale`.
    pub scale: Weight,
    pub c_eq: Weight,
    pub c_lt: Option<Weight>,
    pub root: RootKind,
    /// Cost of the tree testing keys `1, 2, …, n-1` for equality in turn.
    pub all_eq_cost: Weight,
    /// `Σ_{i<n-1} (i+1)γ^i + (n-1)γ^{n-1}`, scaled.
    pub closed_form_matches: bool,
}

/// Cost of the all-equal-to chain on `n` keys of weights `γ^i`, as an exact
/// rational: the last two keys share depth `n - 1`.
pub fn geometric_chain_cost(gamma: &Rational, n: usize) -> Rational {
    let mut sum = Rational::zero();
    for i in 0..n {
        let depth = (i + 1).min(n - 1) as u64;
        sum += num_traits::pow(gamma.clone(), i) * BigUint::from(depth);
    }
    sum
}

pub fn geometric_scan(n: usize, gammas: &[Rational]) -> Result<Vec<GeometricRow>> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("geometric scan needs n >= 4, got {n}")));
    }
    gammas
        .iter()
        .map(|g| {
            let inst = generate(&GeneratorSpec::Geometric { gamma: g.clone(), n })?;
            let table = DpTable::build(&inst, CutRange::Full);
            let split = table.root_split_at(SubproblemId::new(1, n, n))?;
            let root = if split.lt.is_none_or(|lt| split.eq <= lt) { RootKind::EqualTo } else { RootKind::LessThan };
            let chain = (1..n).rev().fold(SearchTree::leaf(n), |acc, k| SearchTree::eq(k, acc));
            let all_eq_cost = chain.cost(&inst)?;
            let expected = geometric_chain_cost(g, n) * inst.scale().to_biguint();
            Ok(GeometricRow {
                gamma: g.to_string(),
                n,
                scale: inst.scale(),
                c_eq: split.eq,
                c_lt: split.lt,
                root,
                all_eq_cost,
                closed_form_matches: expected == Ratio::from_integer(all_eq_cost.to_biguint()),
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Balanced pattern claims

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub n: usize,
    pub c_1_nm1: Weight,
    pub c_2_n: Weight,
    pub c_2_nm1: Weight,
    pub c_1_n: Weight,
    pub holds: bool,
}

/// Which minimizer stands for `L` when several cuts attain the minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    Leftmost,
    Rightmost,
}

impl MinimizerProbe {
    pub fn pick(&self, tie: TieBreak) -> usize {
        match tie {
            TieBreak::Leftmost => self.canonical,
            TieBreak::Rightmost => self.rightmost,
        }
    }
}

/// One relation `L(left) = L(right) + offset` between two minimizers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizerRow {
    pub n: usize,
    pub left: MinimizerProbe,
    pub right: MinimizerProbe,
    pub offset: i64,
}

impl MinimizerRow {
    pub fn holds(&self, tie: TieBreak) -> bool {
        self.left.pick(tie) as i64 == self.right.pick(tie) as i64 + self.offset
    }

    /// Some choice of minimizers on both sides satisfies the relation.
    pub fn holds_for_some_choice(&self) -> bool {
        self.left.minimizers.iter().any(|&a| self.right.minimizers.iter().any(|&b| a as i64 == b as i64 + self.offset))
    }
}

/// Results on the pattern `(1, 3, 1, 3, …)` for every even `n` of the band
/// belonging to `p`. Costs and minimizers over hole-free intervals depend
/// only on the interval's own weights, so one table for the largest `n`
/// serves every smaller `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternClaimReport {
    pub p: u32,
    /// `C_{1,n-1} + C_{2,n} = C_{2,n-1} + C_{1,n} + 1` on `[2^{p+1}+2, 3·2^p]`.
    pub identity: Vec<IdentityRow>,
    /// `L_{2,n} = L_{3,n} + 1` on `[2^{p+1}+2, 5·2^{p-1}]`.
    pub shift: Vec<MinimizerRow>,
    /// `L_{1,n} = L_{1,n-1} - 1` on `[5·2^{p-1}+2, 3·2^p]`.
    pub shrink: Vec<MinimizerRow>,
}

impl PatternClaimReport {
    pub fn identity_holds(&self) -> bool {
        self.identity.iter().all(|r| r.holds)
    }

    pub fn minimizer_claims_hold(&self, tie: TieBreak) -> bool {
        self.shift.iter().chain(&self.shrink).all(|r| r.holds(tie))
    }

    pub fn all_hold(&self, tie: TieBreak) -> bool {
        self.identity_holds() && self.minimizer_claims_hold(tie)
    }
}

pub const PATTERN_MAX_P: u32 = 7;

pub fn balanced_pattern_claims(p: u32) -> Result<PatternClaimReport> {
    if !(2..=PATTERN_MAX_P).contains(&p) {
        return Err(Error::InvalidParameter(format!("p must lie in [2, {PATTERN_MAX_P}], got {p}")));
    }
    let lo = (1usize << (p + 1)) + 2;
    let mid = 5 * (1usize << (p - 1));
    let hi = 3 * (1usize << p);
    let inst = generate(&GeneratorSpec::Pattern { cycle: vec![1, 3], n: hi })?;
    let table = DpTable::build(&inst, CutRange::Full);
    let c = |i: usize, j: usize| table.cost_by_count(i, j, j - i + 1);
    let l = |i: usize, j: usize| probe(&table, i, j, hi).expect("intervals of length >= 2 have cuts");

    let evens = |a: usize, b: usize| (a..=b).filter(|n| n % 2 == 0);
    let identity = evens(lo, hi)
        .map(|n| {
            let row = (c(1, n - 1), c(2, n), c(2, n - 1), c(1, n));
            IdentityRow {
                n,
                c_1_nm1: row.0,
                c_2_n: row.1,
                c_2_nm1: row.2,
                c_1_n: row.3,
                holds: row.0 + row.1 == row.2 + row.3 + Weight::new(1),
            }
        })
        .collect();
    let shift = evens(lo, mid).map(|n| MinimizerRow { n, left: l(2, n), right: l(3, n), offset: 1 }).collect();
    let shrink =
        evens(mid + 2, hi).map(|n| MinimizerRow { n, left: l(1, n), right: l(1, n - 1), offset: -1 }).collect();
    Ok(PatternClaimReport { p, identity, shift, shrink })
}

// ---------------------------------------------------------------------------
// Marginal advantage of equal-to tests

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginalReport {
    pub weights: Vec<Weight>,
    /// Root costs on keys `1..=4`.
    pub prefix: RootSplit,
    /// Root costs on keys `1..=5`.
    pub whole: RootSplit,
    /// Less-than root wins on the prefix, equal-to root wins on the whole.
    pub holds: bool,
}

/// Runs the check on `(11, 23, 23, 13, 0)` with every weight multiplied by
/// `scale`.
pub fn marginal_advantage_check(scale: u64) -> Result<MarginalReport> {
    let inst = WeightedInstance::from_u64(&[11, 23, 23, 13, 0])?.scaled_by(scale)?;
    let table = DpTable::build(&inst, CutRange::Full);
    let prefix = table.root_split_at(SubproblemId::new(1, 4, 5))?;
    let whole = table.root_split_at(SubproblemId::new(1, 5, 5))?;
    let holds = prefix.lt.is_some_and(|lt| lt < prefix.eq) && whole.lt.is_some_and(|lt| whole.eq < lt);
    Ok(MarginalReport { weights: inst.weights().to_vec(), prefix, whole, holds })
}

// ---------------------------------------------------------------------------
// Region scan over the two heaviest weights

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCell {
    /// `α / W` and `β / W` as fractions of `steps`.
    pub alpha_steps: u64,
    pub beta_steps: u64,
    pub instances: usize,
    /// Instances with an optimal equal-to root.
    pub eq_root: usize,
    /// Instances where some optimal tree starts with two equal-to tests.
    pub eq_eq_prefix: usize,
}

/// For each grid point `(α, β) = (a/steps, b/steps)·W` with `b <= a` and
/// `a + b <= steps`, draws `samples` random `n`-key instances whose two
/// heaviest weights are `α` and `β` and classifies their optimal roots.
/// Grid points whose remaining weight cannot be spread under `β` are
/// skipped.
pub fn region_scan(n: usize, steps: u64, samples: usize, seed: u64) -> Result<Vec<RegionCell>> {
    if n < 3 || steps == 0 {
        return Err(Error::InvalidParameter("region scan needs n >= 3 and steps >= 1".into()));
    }
    let unit = 64 * n as u64;
    let total = steps * unit;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = Vec::new();
    for a in 1..=steps {
        for b in 1..=a.min(steps - a) {
            let (alpha, beta) = (a * unit, b * unit);
            let rest = total - alpha - beta;
            if rest > beta * (n as u64 - 2) {
                continue;
            }
            let mut cell = RegionCell { alpha_steps: a, beta_steps: b, instances: 0, eq_root: 0, eq_eq_prefix: 0 };
            for _ in 0..samples {
                let mut w = spread(rest, n - 2, beta, &mut rng);
                w.push(alpha);
                w.push(beta);
                shuffle(&mut w, &mut rng);
                let r = check_thresholds(&WeightedInstance::from_u64(&w)?)?;
                cell.instances += 1;
                cell.eq_root += r.eq_root_optimal_exists as usize;
                cell.eq_eq_prefix += r.two_consecutive_eq_at_top as usize;
            }
            cells.push(cell);
        }
    }
    Ok(cells)
}

/// `k` random parts summing to `rest`, each at most `cap`.
fn spread(rest: u64, k: usize, cap: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut w = vec![0u64; k];
    let mut left = rest;
    while left > 0 {
        let slot = rng.gen_range(0..k);
        let room = cap - w[slot];
        if room == 0 {
            continue;
        }
        let add = rng.gen_range(1..=room.min(left));
        w[slot] += add;
        left -= add;
    }
    w
}

fn shuffle(w: &mut [u64], rng: &mut ChaCha8Rng) {
    for i in (1..w.len()).rev() {
        w.swap(i, rng.gen_range(0..=i));
    }
}

/// The tightness instance for `α < 1/4` style checks: `tight4` with
/// `W = 2000`, `α = 700`, `β = 600`, `ε = 2`.
pub fn default_tight4() -> GeneratorSpec {
    GeneratorSpec::Tight4 { alpha: rat(700, 1), beta: rat(600, 1), eps: rat(2, 1) }
}

/// `tight8` at `α = W/3`, `β = W/6`.
pub fn default_tight8() -> GeneratorSpec {
    GeneratorSpec::Tight8 { alpha: rat(1, 3), beta: rat(1, 6) }
}

/// Integer weights of the seven-key diagonal counter-example, with the
/// small first weight realized as 1 against a unit of 10⁶.
pub fn epsilon_instance() -> Vec<u64> {
    let u = 1_000_000;
    vec![1, 2 * u, 2 * u, 0, u, u, 0]
}
