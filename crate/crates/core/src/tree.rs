//! Two-way comparison search trees: cost, validity, side weights, export.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::WeightedInstance;
use crate::weight::Weight;

/// A decision tree over keys `1..=n`.
///
/// `Eq` tests `q == key`, `Lt` tests `q < key`; `yes` is taken when the test
/// holds. A cut between keys `l` and `l + 1` is written `Lt { key: l + 1 }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SearchTree {
    Leaf { key: usize },
    Eq { key: usize, yes: Box<SearchTree>, no: Box<SearchTree> },
    Lt { key: usize, yes: Box<SearchTree>, no: Box<SearchTree> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    Leaf,
    EqualTo,
    LessThan,
}

impl std::fmt::Display for RootKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RootKind::Leaf => "leaf",
            RootKind::EqualTo => "equal-to",
            RootKind::LessThan => "less-than",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Defect {
    /// The search for `query` ends at the leaf of `reached`.
    Misrouted {
        query: usize,
        reached: usize,
    },
    MissingLeaf(usize),
    DuplicateLeaf(usize),
    UnexpectedLeaf(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub defects: Vec<Defect>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.defects.is_empty()
    }
}

impl SearchTree {
    pub fn leaf(key: usize) -> Self {
        SearchTree::Leaf { key }
    }

    /// `Eq` node whose yes-branch is the leaf of `key`.
    pub fn eq(key: usize, no: SearchTree) -> Self {
        SearchTree::Eq { key, yes: Box::new(SearchTree::leaf(key)), no: Box::new(no) }
    }

    pub fn lt(key: usize, yes: SearchTree, no: SearchTree) -> Self {
        SearchTree::Lt { key, yes: Box::new(yes), no: Box::new(no) }
    }

    pub fn root_kind(&self) -> RootKind {
        match self {
            SearchTree::Leaf { .. } => RootKind::Leaf,
            SearchTree::Eq { .. } => RootKind::EqualTo,
            SearchTree::Lt { .. } => RootKind::LessThan,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, SearchTree::Leaf { .. })
    }

    pub fn children(&self) -> Option<(&SearchTree, &SearchTree)> {
        match self {
            SearchTree::Leaf { .. } => None,
            SearchTree::Eq { yes, no, .. } | SearchTree::Lt { yes, no, .. } => Some((yes, no)),
        }
    }

    /// Leaf keys, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk_leaves(0, &mut |k, _| out.push(k));
        out
    }

    /// `(key, depth)` for every leaf, left to right.
    pub fn depths(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.walk_leaves(0, &mut |k, d| out.push((k, d)));
        out
    }

    fn walk_leaves(&self, depth: usize, f: &mut impl FnMut(usize, usize)) {
        match self {
            SearchTree::Leaf { key } => f(*key, depth),
            SearchTree::Eq { yes, no, .. } | SearchTree::Lt { yes, no, .. } => {
                yes.walk_leaves(depth + 1, f);
                no.walk_leaves(depth + 1, f);
            }
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self.children() {
            None => 0,
            Some((a, b)) => 1 + a.internal_nodes() + b.internal_nodes(),
        }
    }

    pub fn height(&self) -> usize {
        match self.children() {
            None => 0,
            Some((a, b)) => 1 + a.height().max(b.height()),
        }
    }

    fn check_keys(&self, inst: &WeightedInstance) -> Result<()> {
        self.leaves().into_iter().find(|&k| k == 0 || k > inst.n()).map_or(Ok(()), |k| Err(Error::UnknownKey(k)))
    }

    /// Total weight of the leaves.
    pub fn weight(&self, inst: &WeightedInstance) -> Result<Weight> {
        self.check_keys(inst)?;
        Ok(self.leaves().into_iter().map(|k| inst.weight(k)).sum())
    }

    /// `Σ w_k · depth(k)`. The same value is recomputed as the sum of
    /// subtree weights over internal nodes and the two are asserted equal.
    pub fn cost(&self, inst: &WeightedInstance) -> Result<Weight> {
        self.check_keys(inst)?;
        let by_depth: Weight = self.depths().into_iter().map(|(k, d)| inst.weight(k).times(d as u64)).sum();
        let (_, by_nodes) = self.node_weight_sum(inst);
        assert_eq!(by_depth, by_nodes, "cost identity violated");
        Ok(by_depth)
    }

    // (subtree weight, sum of internal-node weights)
    fn node_weight_sum(&self, inst: &WeightedInstance) -> (Weight, Weight) {
        match self {
            SearchTree::Leaf { key } => (inst.weight(*key), Weight::ZERO),
            SearchTree::Eq { yes, no, .. } | SearchTree::Lt { yes, no, .. } => {
                let (wy, cy) = yes.node_weight_sum(inst);
                let (wn, cn) = no.node_weight_sum(inst);
                let w = wy + wn;
                (w, w + cy + cn)
            }
        }
    }

    /// The leaf a search for `q` ends in.
    pub fn route(&self, q: usize) -> usize {
        let mut node = self;
        loop {
            match node {
                SearchTree::Leaf { key } => return *key,
                SearchTree::Eq { key, yes, no } => node = if q == *key { yes } else { no },
                SearchTree::Lt { key, yes, no } => node = if q < *key { yes } else { no },
            }
        }
    }

    /// Checks that the leaves are exactly `keyset` and that every query in
    /// `keyset` is routed to its own leaf.
    pub fn validate(&self, keyset: &[usize]) -> ValidationReport {
        let mut defects = Vec::new();
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for k in self.leaves() {
            *seen.entry(k).or_default() += 1;
        }
        let wanted: std::collections::BTreeSet<usize> = keyset.iter().copied().collect();
        for (&k, &c) in &seen {
            if !wanted.contains(&k) {
                defects.push(Defect::UnexpectedLeaf(k));
            } else if c > 1 {
                defects.push(Defect::DuplicateLeaf(k));
            }
        }
        for &q in &wanted {
            if !seen.contains_key(&q) {
                defects.push(Defect::MissingLeaf(q));
            }
            let reached = self.route(q);
            if reached != q {
                defects.push(Defect::Misrouted { query: q, reached });
            }
        }
        ValidationReport { defects }
    }

    /// Side weight of this node: 0 for a leaf, the tested key's weight for
    /// an equal-to test, the lighter subtree's weight for a less-than test.
    pub fn side_weight(&self, inst: &WeightedInstance) -> Weight {
        match self {
            SearchTree::Leaf { .. } => Weight::ZERO,
            SearchTree::Eq { key, .. } => inst.weight(*key),
            SearchTree::Lt { yes, no, .. } => {
                let a = yes.leaves().into_iter().map(|k| inst.weight(k)).sum::<Weight>();
                let b = no.leaves().into_iter().map(|k| inst.weight(k)).sum::<Weight>();
                a.min(b)
            }
        }
    }

    /// Parent/child pairs (as pre-order node indices) whose side weights
    /// decrease going up, i.e. `sw(parent) < sw(child)`.
    pub fn side_weight_inversions(&self, inst: &WeightedInstance) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut next = 0;
        self.inversions_rec(inst, None, &mut next, &mut out);
        out
    }

    fn inversions_rec(
        &self,
        inst: &WeightedInstance,
        parent: Option<(usize, Weight)>,
        next: &mut usize,
        out: &mut Vec<(usize, usize)>,
    ) {
        let me = *next;
        *next += 1;
        let sw = self.side_weight(inst);
        if let Some((p, psw)) = parent {
            if psw < sw {
                out.push((p, me));
            }
        }
        if let Some((a, b)) = self.children() {
            a.inversions_rec(inst, Some((me, sw)), next, out);
            b.inversions_rec(inst, Some((me, sw)), next, out);
        }
    }

    /// Maps every key through `f`; used to shift trees built on a window.
    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> SearchTree {
        match self {
            SearchTree::Leaf { key } => SearchTree::Leaf { key: f(*key) },
            SearchTree::Eq { key, yes, no } => {
                SearchTree::Eq { key: f(*key), yes: Box::new(yes.relabel(f)), no: Box::new(no.relabel(f)) }
            }
            SearchTree::Lt { key, yes, no } => {
                SearchTree::Lt { key: f(*key), yes: Box::new(yes.relabel(f)), no: Box::new(no.relabel(f)) }
            }
        }
    }

    /// Graphviz rendering; internal nodes are labelled `=k` / `<k`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph tree {\n  node [fontname=\"Helvetica\"];\n");
        let mut next = 0;
        self.dot_rec(&mut s, &mut next);
        s.push_str("}\n");
        s
    }

    fn dot_rec(&self, s: &mut String, next: &mut usize) -> usize {
        let me = *next;
        *next += 1;
        match self {
            SearchTree::Leaf { key } => {
                let _ = writeln!(s, "  n{me} [label=\"{key}\", shape=box];");
            }
            SearchTree::Eq { key, yes, no } | SearchTree::Lt { key, yes, no } => {
                let op = if matches!(self, SearchTree::Eq { .. }) { '=' } else { '<' };
                let _ = writeln!(s, "  n{me} [label=\"{op}{key}\", shape=ellipse];");
                let y = yes.dot_rec(s, next);
                let _ = writeln!(s, "  n{me} -> n{y} [label=\"yes\"];");
                let n = no.dot_rec(s, next);
                let _ = writeln!(s, "  n{me} -> n{n} [label=\"no\"];");
            }
        }
        me
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::WeightedInstance;

    fn inst(w: &[u64]) -> WeightedInstance {
        WeightedInstance::from_u64(w).unwrap()
    }

    /// Keys 1,2,3,4,5,7,8,9 renumbered to 1..8.
    fn eight_key_tree() -> SearchTree {
        use SearchTree as T;
        T::lt(
            7,
            T::eq(1, T::lt(4, T::lt(3, T::leaf(2), T::leaf(3)), T::eq(6, T::lt(5, T::leaf(4), T::leaf(5))))),
            T::lt(8, T::leaf(7), T::leaf(8)),
        )
    }

    #[test]
    fn eight_key_cost() {
        let i = inst(&[10, 1, 2, 3, 1, 3, 1, 11]);
        let t = eight_key_tree();
        assert!(t.validate(&(1..=8).collect::<Vec<_>>()).is_ok());
        let mut depths = t.depths();
        depths.sort();
        let profile: Vec<usize> = depths.into_iter().map(|(_, d)| d).collect();
        assert_eq!(profile, vec![2, 4, 4, 5, 5, 4, 2, 2]);
        assert_eq!(t.cost(&i).unwrap(), Weight::new(88));
    }

    #[test]
    fn leaf_costs_nothing() {
        assert_eq!(SearchTree::leaf(1).cost(&inst(&[9])).unwrap(), Weight::ZERO);
    }

    #[test]
    fn two_key_eq_tree() {
        let t = SearchTree::Eq { key: 1, yes: Box::new(SearchTree::leaf(1)), no: Box::new(SearchTree::leaf(2)) };
        assert_eq!(t.cost(&inst(&[3, 4])).unwrap(), Weight::new(7));
    }

    #[test]
    fn unknown_leaf_is_an_error() {
        let t = SearchTree::eq(1, SearchTree::leaf(5));
        assert!(matches!(t.cost(&inst(&[1, 2])), Err(Error::UnknownKey(5))));
    }

    #[test]
    fn validate_examples() {
        let ok = SearchTree::eq(2, SearchTree::leaf(1));
        assert!(ok.validate(&[1, 2]).is_ok());
        let bad = SearchTree::lt(2, SearchTree::leaf(2), SearchTree::leaf(1));
        let r = bad.validate(&[1, 2]);
        assert!(r.defects.contains(&Defect::Misrouted { query: 1, reached: 2 }));
    }

    #[test]
    fn validate_reports_leaf_set_defects() {
        let t = SearchTree::lt(2, SearchTree::leaf(1), SearchTree::leaf(1));
        let r = t.validate(&[1, 2]);
        assert!(r.defects.contains(&Defect::DuplicateLeaf(1)));
        assert!(r.defects.contains(&Defect::MissingLeaf(2)));
        let r = SearchTree::leaf(3).validate(&[1]);
        assert!(r.defects.contains(&Defect::UnexpectedLeaf(3)));
    }

    #[test]
    fn side_weights() {
        let i = inst(&[5, 7, 4, 5]);
        assert_eq!(SearchTree::leaf(1).side_weight(&i), Weight::ZERO);
        assert_eq!(SearchTree::eq(2, SearchTree::leaf(1)).side_weight(&i), Weight::new(7));
        let lt = SearchTree::lt(
            2,
            SearchTree::leaf(1),
            SearchTree::eq(2, SearchTree::lt(4, SearchTree::leaf(3), SearchTree::leaf(4))),
        );
        assert_eq!(lt.side_weight(&i), Weight::new(5));
    }

    #[test]
    fn json_and_dot() {
        let t = SearchTree::lt(2, SearchTree::leaf(1), SearchTree::eq(3, SearchTree::leaf(2)));
        let js = serde_json::to_string(&t).unwrap();
        assert!(js.starts_with(r#"{"kind":"lt","key":2"#));
        let back: SearchTree = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
        let dot = t.to_dot();
        assert!(dot.contains("label=\"<2\""));
        assert!(dot.contains("label=\"=3\""));
    }
}
