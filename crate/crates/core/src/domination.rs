//! Exact domination quantities: `γ(G;A)`, `γ_w(G;A)`, the independent
//! domination number and its weak variant.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graphs::Graph;
use crate::vertex_set::VertexSet;

/// A domination number, which may be infinite. Serialized as a number or
/// the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DominationValue {
    Finite(usize),
    Infinite,
}

impl DominationValue {
    pub fn finite(self) -> Option<usize> {
        match self {
            DominationValue::Finite(v) => Some(v),
            DominationValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == DominationValue::Infinite
    }
}

impl Ord for DominationValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use DominationValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for DominationValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DominationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DominationValue::Finite(v) => write!(f, "{v}"),
            DominationValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for DominationValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            DominationValue::Finite(v) => serializer.serialize_u64(*v as u64),
            DominationValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for DominationValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(usize),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Finite(v) => Ok(DominationValue::Finite(v)),
            Repr::Text(t) if t == "inf" => Ok(DominationValue::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("expected a count or \"inf\", got {t:?}"))),
        }
    }
}

/// An independent set attaining a maximum together with an optimal
/// (weakly) dominating set for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationWitness {
    pub target: VertexSet,
    /// Absent when the value is infinite.
    pub dominating: Option<VertexSet>,
    pub value: DominationValue,
}

/// Every `a ∈ A` has a neighbor in `D`. Membership in `D` alone does not count.
pub fn dominates(g: &Graph, d: VertexSet, a: VertexSet) -> bool {
    a.is_subset(g.neighborhood(d))
}

/// Every `a ∈ A` lies in `W` or has a neighbor in `W`.
pub fn weakly_dominates(g: &Graph, w: VertexSet, a: VertexSet) -> bool {
    a.is_subset(w.union(g.neighborhood(w)))
}

/// Smallest `D` drawn from `pool` with `covered(D) ⊇ target`, searched by
/// increasing size. Returns `None` if even `pool` itself fails.
fn min_cover_from_pool(
    pool: VertexSet,
    target: VertexSet,
    covered: impl Fn(VertexSet) -> VertexSet,
) -> Option<VertexSet> {
    if !target.is_subset(covered(pool)) {
        return None;
    }
    (0..=pool.len()).find_map(|k| {
        pool.subsets_of_size(k)
            .find(|&d| target.is_subset(covered(d)))
    })
}

/// `γ(G;A)` with a minimum dominating set. Infinite iff `A` contains an
/// isolated vertex.
pub fn gamma_with_witness(g: &Graph, a: VertexSet) -> (DominationValue, Option<VertexSet>) {
    // Only neighbors of A can help dominate A.
    let pool = g.neighborhood(a);
    match min_cover_from_pool(pool, a, |d| g.neighborhood(d)) {
        Some(d) => (DominationValue::Finite(d.len()), Some(d)),
        None => (DominationValue::Infinite, None),
    }
}

pub fn gamma(g: &Graph, a: VertexSet) -> DominationValue {
    gamma_with_witness(g, a).0
}

/// `γ_w(G;A)` with a minimum weakly dominating set. Always finite.
pub fn gamma_w_with_witness(g: &Graph, a: VertexSet) -> (usize, VertexSet) {
    let pool = a.union(g.neighborhood(a));
    let d = min_cover_from_pool(pool, a, |d| d.union(g.neighborhood(d)))
        .expect("A weakly dominates itself");
    (d.len(), d)
}

pub fn gamma_w(g: &Graph, a: VertexSet) -> usize {
    gamma_w_with_witness(g, a).0
}

/// Enumerates every maximal independent set exactly once, via Bron–Kerbosch
/// with pivoting on the complement graph.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    // Non-neighbors of v, excluding v itself: adjacency in the complement.
    let co_adj: Vec<VertexSet> = (1..=n)
        .map(|v| g.neighbors(v).with(v).complement(n))
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&co_adj, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut out);
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[VertexSet],
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| adj[u - 1].intersection(p).len())
        .expect("P ∪ X non-empty");
    for v in p.difference(adj[pivot - 1]) {
        let nv = adj[v - 1];
        bron_kerbosch(adj, r.with(v), p.intersection(nv), x.intersection(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

/// Maximum of `value` over maximal independent sets; ties go to the
/// numerically smallest mask.
fn max_over_maximal_independent<T: Ord + Copy>(
    g: &Graph,
    value: impl Fn(VertexSet) -> T,
) -> (VertexSet, T) {
    let mut best: Option<(VertexSet, T)> = None;
    // maximal_independent_sets is sorted by mask, so strict > keeps the
    // first (smallest) maximiser.
    for i in maximal_independent_sets(g) {
        let v = value(i);
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.expect("every graph has a maximal independent set")
}

/// `iγ(G)` and a witness. Infinite iff `G` has an isolated vertex, in which
/// case the witness targets the isolated vertices.
pub fn igamma(g: &Graph) -> DominationWitness {
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        return DominationWitness {
            target: isolated,
            dominating: None,
            value: DominationValue::Infinite,
        };
    }
    let (target, value) = max_over_maximal_independent(g, |i| gamma(g, i));
    let (_, dominating) = gamma_with_witness(g, target);
    DominationWitness {
        target,
        dominating,
        value,
    }
}

/// Brute-force `iγ(G)` over every independent set, for cross-checking.
pub fn igamma_all_independent(g: &Graph) -> DominationValue {
    g.vertices()
        .subsets()
        .filter(|&s| g.is_independent(s))
        .map(|s| gamma(g, s))
        .max()
        .expect("the empty set is independent")
}

/// `iγ_w(G)` and a witness; always finite.
pub fn igamma_w(g: &Graph) -> DominationWitness {
    let (target, value) = max_over_maximal_independent(g, |i| gamma_w(g, i));
    let (_, dominating) = gamma_w_with_witness(g, target);
    DominationWitness {
        target,
        dominating: Some(dominating),
        value: DominationValue::Finite(value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::all_graphs;
    use crate::vertex_set::Vertex;
    use DominationValue::*;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn value_serde() {
        assert_eq!(serde_json::to_string(&Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<DominationValue>("\"inf\"").unwrap(), Infinite);
        assert_eq!(serde_json::from_str::<DominationValue>("2").unwrap(), Finite(2));
        assert!(serde_json::from_str::<DominationValue>("\"many\"").is_err());
    }

    /// Minimum dominating size by scanning every subset of the ground set.
    fn brute_gamma(g: &Graph, a: VertexSet, weak: bool) -> DominationValue {
        g.vertices()
            .subsets()
            .filter(|&d| {
                if weak {
                    weakly_dominates(g, d, a)
                } else {
                    dominates(g, d, a)
                }
            })
            .map(|d| d.len())
            .min()
            .map_or(Infinite, Finite)
    }

    #[test]
    fn dominates_examples() {
        let p3 = Graph::path(3);
        assert!(dominates(&p3, VertexSet::EMPTY, VertexSet::EMPTY));
        assert!(dominates(&p3, set(&[2]), set(&[1, 3])));
        assert!(!dominates(&p3, set(&[1]), set(&[1])));
    }

    #[test]
    fn weakly_dominates_examples() {
        let p3 = Graph::path(3);
        assert!(weakly_dominates(&p3, set(&[1]), set(&[1])));
        assert!(!weakly_dominates(&p3, VertexSet::EMPTY, set(&[1])));
        assert!(weakly_dominates(&Graph::empty(2), set(&[1, 2]), set(&[1, 2])));
    }

    #[test]
    fn gamma_examples() {
        let p3 = Graph::path(3);
        assert_eq!(gamma_with_witness(&p3, set(&[1, 3])), (Finite(1), Some(set(&[2]))));
        let c6 = Graph::cycle(6);
        assert_eq!(brute_gamma(&c6, set(&[1, 4]), false), Finite(2));
        assert_eq!(gamma(&c6, set(&[1, 4])), Finite(2));
        let iso = Graph::parse("p edge 3 1\ne 1 2").unwrap();
        assert_eq!(gamma(&iso, set(&[3])), Infinite);
        assert_eq!(gamma(&iso, VertexSet::EMPTY), Finite(0));
    }

    #[test]
    fn gamma_w_examples() {
        assert_eq!(gamma_w(&Graph::cycle(6), VertexSet::EMPTY), 0);
        assert_eq!(gamma_w(&Graph::empty(2), set(&[1, 2])), 2);
        let c6 = Graph::cycle(6);
        assert_eq!(brute_gamma(&c6, set(&[1, 4]), true), Finite(2));
        assert_eq!(gamma_w(&c6, set(&[1, 4])), 2);
    }

    #[test]
    fn gamma_matches_brute_force() {
        for n in 1..=5 {
            for (_, g) in all_graphs(n).unwrap() {
                for a in g.vertices().subsets() {
                    assert_eq!(gamma(&g, a), brute_gamma(&g, a, false), "{g:?} {a}");
                    assert_eq!(Finite(gamma_w(&g, a)), brute_gamma(&g, a, true), "{g:?} {a}");
                }
            }
        }
    }

    #[test]
    fn igamma_examples() {
        assert_eq!(igamma(&Graph::cycle(6)).value, Finite(2));
        assert_eq!(igamma(&Graph::cycle(9)).value, Finite(3));
        assert_eq!(igamma(&Graph::complete(3)).value, Finite(1));
        let w = igamma(&Graph::cycle(6));
        assert_eq!(w.target, set(&[1, 4]));
        assert!(dominates(&Graph::cycle(6), w.dominating.unwrap(), w.target));
        assert_eq!(igamma(&Graph::empty(2)).value, Infinite);
    }

    #[test]
    fn igamma_w_examples() {
        assert_eq!(igamma_w(&Graph::cycle(6)).value, Finite(2));
        for k in 1..=4 {
            assert_eq!(igamma_w(&Graph::empty(k)).value, Finite(k));
        }
        let g = Graph::cycle(6).disjoint_union(&Graph::empty(2));
        assert_eq!(igamma_w(&g).value, Finite(4));
    }

    #[test]
    fn maximal_independent_set_examples() {
        assert_eq!(
            maximal_independent_sets(&Graph::complete(3)),
            vec![set(&[1]), set(&[2]), set(&[3])]
        );
        assert_eq!(maximal_independent_sets(&Graph::path(3)), vec![set(&[2]), set(&[1, 3])]);
        assert_eq!(maximal_independent_sets(&Graph::empty(2)), vec![set(&[1, 2])]);
    }

    #[test]
    fn maximal_independent_sets_match_brute_force() {
        for n in 1..=5 {
            for (_, g) in all_graphs(n).unwrap() {
                let brute: Vec<VertexSet> = g
                    .vertices()
                    .subsets()
                    .filter(|&s| {
                        g.is_independent(s)
                            && g.vertices().difference(s).iter().all(|v| !g.is_independent(s.with(v)))
                    })
                    .collect();
                assert_eq!(maximal_independent_sets(&g), brute, "{g:?}");
            }
        }
    }

    #[test]
    fn igamma_over_maximal_equals_over_all_independent() {
        for n in 1..=6 {
            for (_, g) in all_graphs(n).unwrap() {
                assert_eq!(igamma(&g).value, igamma_all_independent(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn weak_and_strict_agree_without_isolated_vertices() {
        for n in 2..=6 {
            for (_, g) in all_graphs(n).unwrap().isolated_free() {
                assert_eq!(igamma_w(&g).value, igamma(&g).value, "{g:?}");
            }
        }
    }
}
