//! Exponential ground truth: the optimal tree over an arbitrary key subset,
//! allowing an equal-to test on any member and a less-than test at any cut
//! between consecutive members.
//!
//! Both test types can produce any subset of the input, so the memo is a
//! dense array over all `2^m` subsets, filled in increasing mask order.

use crate::error::{Error, Result};
use crate::instance::WeightedInstance;
use crate::tree::SearchTree;
use crate::weight::Weight;

/// Largest key set the oracle accepts.
pub const ORACLE_MAX_KEYS: usize = 22;

/// Optimal cost and one optimal tree for the keys in `keyset`.
///
/// Among equal-cost options the equal-to test on the heaviest member is
/// preferred, then other equal-to tests, then the leftmost cut.
pub fn brute_force_optimal(inst: &WeightedInstance, keyset: &[usize]) -> Result<(Weight, SearchTree)> {
    let keys = normalize(inst, keyset)?;
    let m = keys.len();
    let w: Vec<Weight> = keys.iter().map(|&k| inst.weight(k)).collect();
    let full = (1usize << m) - 1;

    let mut cost = vec![Weight::ZERO; 1 << m];
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        cost[mask] = mask_weight(&w, mask) + best_option(&cost, mask).0;
    }

    let tree = rebuild(&keys, &w, &cost, full);
    Ok((cost[full], tree))
}

/// Optimal cost over every key of the instance.
pub fn brute_force_cost(inst: &WeightedInstance) -> Result<Weight> {
    let keys: Vec<usize> = (1..=inst.n()).collect();
    brute_force_optimal(inst, &keys).map(|(c, _)| c)
}

fn normalize(inst: &WeightedInstance, keyset: &[usize]) -> Result<Vec<usize>> {
    if keyset.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let mut keys = keyset.to_vec();
    keys.sort_unstable();
    keys.dedup();
    if keys.len() != keyset.len() {
        return Err(Error::InvalidParameter("duplicate key in key set".into()));
    }
    if let Some(&k) = keys.iter().find(|&&k| k == 0 || k > inst.n()) {
        return Err(Error::UnknownKey(k));
    }
    if keys.len() > ORACLE_MAX_KEYS {
        return Err(Error::TooLarge { n: keys.len(), limit: ORACLE_MAX_KEYS });
    }
    Ok(keys)
}

fn mask_weight(w: &[Weight], mask: usize) -> Weight {
    bits(mask).map(|b| w[b]).sum()
}

fn bits(mut mask: usize) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

#[derive(Clone, Copy)]
enum Test {
    Eq(usize),
    /// Members at bit positions below the cut go to the yes-branch.
    Lt(usize),
}

/// Cheapest children cost for `mask` (at least two members).
fn best_option(cost: &[Weight], mask: usize) -> (Weight, Test) {
    let members: Vec<usize> = bits(mask).collect();
    let mut best: Option<(Weight, Test)> = None;
    for &b in &members {
        let c = cost[mask & !(1 << b)];
        if best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, Test::Eq(b)));
        }
    }
    for &b in &members[1..] {
        let low = mask & ((1 << b) - 1);
        let c = cost[low] + cost[mask & !low];
        if best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, Test::Lt(b)));
        }
    }
    best.expect("mask has at least two members")
}

fn rebuild(keys: &[usize], w: &[Weight], cost: &[Weight], mask: usize) -> SearchTree {
    if mask.count_ones() == 1 {
        return SearchTree::leaf(keys[mask.trailing_zeros() as usize]);
    }
    let (c, test) = best_option(cost, mask);
    // prefer the heaviest member for equal-to roots when it is optimal
    let heaviest = bits(mask).max_by(|&a, &b| w[a].cmp(&w[b]).then(keys[a].cmp(&keys[b]))).expect("non-empty mask");
    let test = if cost[mask & !(1 << heaviest)] == c { Test::Eq(heaviest) } else { test };
    match test {
        Test::Eq(b) => SearchTree::eq(keys[b], rebuild(keys, w, cost, mask & !(1 << b))),
        Test::Lt(b) => {
            let low = mask & ((1 << b) - 1);
            SearchTree::lt(keys[b], rebuild(keys, w, cost, low), rebuild(keys, w, cost, mask & !low))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(w: &[u64]) -> WeightedInstance {
        WeightedInstance::from_u64(w).unwrap()
    }

    #[test]
    fn heavy_middle_key() {
        let i = inst(&[1, 10, 1]);
        let (c, t) = brute_force_optimal(&i, &[1, 2, 3]).unwrap();
        assert_eq!(c, Weight::new(14));
        assert_eq!(t.cost(&i).unwrap(), c);
        assert!(t.validate(&[1, 2, 3]).is_ok());
    }

    #[test]
    fn singleton_is_free() {
        let i = inst(&[4, 5]);
        let (c, t) = brute_force_optimal(&i, &[2]).unwrap();
        assert_eq!(c, Weight::ZERO);
        assert_eq!(t, SearchTree::leaf(2));
    }

    #[test]
    fn sixteen_equal_weights() {
        let i = inst(&[1; 16]);
        assert_eq!(brute_force_cost(&i).unwrap(), Weight::new(64));
    }

    #[test]
    fn subset_of_keys() {
        let i = inst(&[5, 1, 5, 1, 5]);
        let (c, t) = brute_force_optimal(&i, &[1, 3, 5]).unwrap();
        assert_eq!(c, Weight::new(25));
        assert!(t.validate(&[1, 3, 5]).is_ok());
    }

    #[test]
    fn rejects_bad_key_sets() {
        let i = inst(&[1, 2, 3]);
        assert!(matches!(brute_force_optimal(&i, &[]), Err(Error::EmptyInstance)));
        assert!(matches!(brute_force_optimal(&i, &[4]), Err(Error::UnknownKey(4))));
        assert!(brute_force_optimal(&i, &[1, 1]).is_err());
        let big = inst(&[1; 23]);
        let all: Vec<usize> = (1..=23).collect();
        assert!(matches!(brute_force_optimal(&big, &all), Err(Error::TooLarge { .. })));
    }
}
