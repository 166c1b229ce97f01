//! Weight sequences and the sub-instances `I^h_{i,j}` the dynamic programs
//! range over.
//!
//! Keys are `1..=n`. `I^h_{i,j}` holds the keys of `[i, j]` whose rank in
//! ascending weight order is at most `h`; equal weights are ranked by key
//! index. A per-rank prefix table answers `|I^h_{i,j}|` and `w^h_{i,j}` in
//! O(1).

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Non-negative exact rational used at ingestion and by generators.
pub type Rational = Ratio<BigUint>;

/// Identifies the sub-instance `I^h_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubproblemId {
    pub i: usize,
    pub j: usize,
    pub h: usize,
}

impl SubproblemId {
    pub fn new(i: usize, j: usize, h: usize) -> Self {
        SubproblemId { i, j, h }
    }
}

#[derive(Clone, Debug)]
pub struct WeightedInstance {
    weights: Vec<Weight>,
    total: Weight,
    asc_perm: Vec<usize>,
    rank: Vec<usize>,
    scale: Weight,
    // (n+1) x (n+1), row h: prefix over key positions restricted to rank <= h
    prefix_count: Vec<u32>,
    prefix_weight: Vec<Weight>,
}

impl WeightedInstance {
    /// Builds an instance from integer weights with scale factor 1.
    pub fn new(weights: Vec<Weight>) -> Result<Self> {
        Self::with_scale(weights, Weight::new(1))
    }

    pub fn from_u64(weights: &[u64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| Weight::new(w)).collect())
    }

    /// Builds an instance from exact rationals, multiplying every weight by
    /// the LCM of the denominators. The multiplier is kept as `scale()`.
    pub fn from_rationals(values: &[Rational]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let lcm = values.iter().fold(BigUint::one(), |acc, r| acc.lcm(r.denom()));
        let weights = values
            .iter()
            .map(|r| {
                let scaled = r.numer() * (&lcm / r.denom());
                Weight::from_biguint(&scaled)
                    .ok_or_else(|| Error::Overflow(format!("scaled weight {scaled} exceeds 256 bits")))
            })
            .collect::<Result<Vec<_>>>()?;
        let scale =
            Weight::from_biguint(&lcm).ok_or_else(|| Error::Overflow("common denominator exceeds 256 bits".into()))?;
        Self::with_scale(weights, scale)
    }

    pub fn with_scale(weights: Vec<Weight>, scale: Weight) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        if scale.is_zero() {
            return Err(Error::InvalidParameter("scale must be positive".into()));
        }
        let total = weights
            .iter()
            .try_fold(Weight::ZERO, |acc, &w| acc.checked_add(w))
            .ok_or_else(|| Error::Overflow("total weight".into()))?;
        // Every cost is at most total * (n - 1); threshold tests multiply by 7.
        total
            .checked_mul_u64(8 * (n as u64 + 1))
            .ok_or_else(|| Error::Overflow(format!("total weight {total} times n={n}")))?;

        let mut asc_perm: Vec<usize> = (1..=n).collect();
        asc_perm.sort_by(|&a, &b| weights[a - 1].cmp(&weights[b - 1]).then(a.cmp(&b)));
        let mut rank = vec![0; n + 1];
        for (t, &k) in asc_perm.iter().enumerate() {
            rank[k] = t + 1;
        }

        let stride = n + 1;
        let mut prefix_count = vec![0u32; stride * stride];
        let mut prefix_weight = vec![Weight::ZERO; stride * stride];
        for h in 1..=n {
            let (prev, cur) = prefix_count.split_at_mut(h * stride);
            cur[..stride].copy_from_slice(&prev[(h - 1) * stride..]);
            let (prevw, curw) = prefix_weight.split_at_mut(h * stride);
            curw[..stride].copy_from_slice(&prevw[(h - 1) * stride..]);
            let k = asc_perm[h - 1];
            for p in k..=n {
                cur[p] += 1;
                curw[p] += weights[k - 1];
            }
        }

        Ok(WeightedInstance { weights, total, asc_perm, rank, scale, prefix_count, prefix_weight })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Weight of key `k` (1-based).
    pub fn weight(&self, k: usize) -> Weight {
        self.weights[k - 1]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn total(&self) -> Weight {
        self.total
    }

    /// Keys in ascending weight order, ties by key index (`a_1..a_n`).
    pub fn asc_perm(&self) -> &[usize] {
        &self.asc_perm
    }

    /// Position of key `k` in `asc_perm`, 1-based.
    pub fn rank(&self, k: usize) -> usize {
        self.rank[k]
    }

    /// Common denominator the weights were multiplied by at ingestion.
    pub fn scale(&self) -> Weight {
        self.scale
    }

    pub fn max_weight(&self) -> Weight {
        self.weight(self.asc_perm[self.n() - 1])
    }

    pub fn check(&self, id: SubproblemId) -> Result<()> {
        let n = self.n();
        if id.i >= 1 && id.i <= id.j && id.j <= n && id.h <= n {
            Ok(())
        } else {
            Err(Error::InvalidSubproblem { i: id.i, j: id.j, h: id.h, n })
        }
    }

    /// `|I^h_{i,j}|` without bounds checks on the id; `i = j + 1` yields 0.
    #[inline]
    pub(crate) fn count_in(&self, h: usize, i: usize, j: usize) -> usize {
        let row = h * (self.n() + 1);
        (self.prefix_count[row + j] - self.prefix_count[row + i - 1]) as usize
    }

    /// `w^h_{i,j}` without bounds checks on the id.
    #[inline]
    pub(crate) fn weight_in(&self, h: usize, i: usize, j: usize) -> Weight {
        let row = h * (self.n() + 1);
        self.prefix_weight[row + j] - self.prefix_weight[row + i - 1]
    }

    pub fn sub_count(&self, id: SubproblemId) -> Result<usize> {
        self.check(id)?;
        Ok(self.count_in(id.h, id.i, id.j))
    }

    /// Keys of `I^h_{i,j}` in ascending key order.
    pub fn sub_keys(&self, id: SubproblemId) -> Result<Vec<usize>> {
        self.check(id)?;
        Ok((id.i..=id.j).filter(|&k| self.rank[k] <= id.h).collect())
    }

    /// Total weight `w^h_{i,j}`, O(1).
    pub fn sub_weight(&self, id: SubproblemId) -> Result<Weight> {
        self.check(id)?;
        Ok(self.weight_in(id.h, id.i, id.j))
    }

    /// The `t` lightest keys of `[i, j]` form `I^h_{i,j}` for
    /// `h = level(i, j, t)`; returns 0 for `t = 0`.
    pub fn level(&self, i: usize, j: usize, t: usize) -> usize {
        if t == 0 {
            return 0;
        }
        let mut ranks: Vec<usize> = (i..=j).map(|k| self.rank[k]).collect();
        ranks.sort_unstable();
        ranks[t - 1]
    }

    /// The instance restricted to keys `i..=j`, renumbered from 1.
    pub fn slice(&self, i: usize, j: usize) -> Result<WeightedInstance> {
        if i < 1 || i > j || j > self.n() {
            return Err(Error::InvalidSubproblem { i, j, h: self.n(), n: self.n() });
        }
        Self::with_scale(self.weights[i - 1..j].to_vec(), self.scale)
    }

    pub fn reversed(&self) -> WeightedInstance {
        let mut w = self.weights.clone();
        w.reverse();
        Self::with_scale(w, self.scale).expect("reversal keeps bounds")
    }

    /// Every weight multiplied by `c`.
    pub fn scaled_by(&self, c: u64) -> Result<WeightedInstance> {
        let w = self
            .weights
            .iter()
            .map(|w| w.checked_mul_u64(c).ok_or_else(|| Error::Overflow("scaling".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(w)
    }

    /// Weights as exact rationals of the original (unscaled) input.
    pub fn rational_weights(&self) -> Vec<Rational> {
        let d = self.scale.to_biguint();
        self.weights.iter().map(|w| Ratio::new(w.to_biguint(), d.clone())).collect()
    }

    pub fn has_zero_weight(&self) -> Option<usize> {
        self.weights.iter().position(|w| w.is_zero()).map(|p| p + 1)
    }
}

/// Parses `"3"`, `"0.55"`, or `"3/7"` as a non-negative rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some(rest) = s.strip_prefix('-') {
        let rest = parse_rational(rest)?;
        if rest.is_zero() {
            return Ok(rest);
        }
        return Err(format!("negative value {s}"));
    }
    let digits = |t: &str| -> std::result::Result<BigUint, String> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed number {s:?}"));
        }
        t.parse::<BigUint>().map_err(|e| e.to_string())
    };
    let s = s.strip_prefix('+').unwrap_or(s);
    if let Some((p, q)) = s.split_once('/') {
        let q = digits(q.trim())?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Ratio::new(digits(p.trim())?, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| format!("malformed exponent in {s:?}"))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let int = if int.is_empty() { "0" } else { int };
    let all = format!("{int}{frac}");
    let num = digits(&all)?;
    let frac_len = frac.len() as i32 - exp;
    let ten = BigUint::from(10u32);
    Ok(if frac_len >= 0 {
        Ratio::new(num, ten.pow(frac_len as u32))
    } else {
        Ratio::from_integer(num * ten.pow((-frac_len) as u32))
    })
}
