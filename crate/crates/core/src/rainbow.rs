//! Rainbow covers: covers assembled from at most one representative of each
//! set in an indexed family, plus the two cover statements that follow from
//! collapsibility and Lerayness of the non-cover complex.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domination::igamma;
use crate::error::{Error, Result};
use crate::graphs::{Edge, Graph};
use crate::homology::CheckStatus;
use crate::vertex_set::{Vertex, VertexSet};

/// Ground sets above this size are refused by the brute-force hypothesis
/// check.
pub const HYPOTHESIS_MAX_N: usize = 20;

/// A graph with an ordered family `W_1, ..., W_m` of vertex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSystem {
    pub graph: Graph,
    pub covers: Vec<VertexSet>,
}

impl CoverSystem {
    pub fn new(graph: Graph, covers: Vec<VertexSet>) -> Result<Self> {
        let ground = graph.vertices();
        if let Some(bad) = covers.iter().find(|w| !w.is_subset(ground)) {
            return Err(Error::Precondition(format!(
                "{bad} is not a subset of the vertex set"
            )));
        }
        Ok(CoverSystem { graph, covers })
    }

    pub fn all_covers(&self) -> bool {
        self.covers.iter().all(|&w| self.graph.is_cover(w))
    }

    /// `n - iγ(G)`, the family size the cover statements are about.
    pub fn expected_len(&self) -> Result<usize> {
        let ig = igamma(&self.graph)
            .value
            .finite()
            .ok_or(Error::IsolatedVertex {
                vertices: self.graph.isolated_vertices(),
            })?;
        Ok(self.graph.n() - ig)
    }
}

/// `{w_{i_1}, ..., w_{i_k}}` with `i_1 < ... < i_k` and `w_{i_j} ∈ W_{i_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowCover {
    /// 1-based indices into the family, strictly increasing.
    pub indices: Vec<usize>,
    pub vertices: Vec<Vertex>,
    pub cover: VertexSet,
}

impl RainbowCover {
    /// Replays the defining conditions against `sys`.
    pub fn is_valid_for(&self, sys: &CoverSystem) -> bool {
        self.indices.len() == self.vertices.len()
            && self.indices.windows(2).all(|w| w[0] < w[1])
            && self.indices.iter().zip(&self.vertices).all(|(&i, &v)| {
                i >= 1 && i <= sys.covers.len() && sys.covers[i - 1].contains(v)
            })
            && self.cover == self.vertices.iter().collect()
            && sys.graph.is_cover(self.cover)
    }
}

/// Lower bound on the vertices needed to cover `edges`: the size of a greedy
/// matching.
fn matching_lower_bound(edges: &[Edge]) -> usize {
    let mut used = VertexSet::EMPTY;
    let mut size = 0;
    for e in edges {
        if used.is_disjoint(e.endpoints()) {
            used = used.union(e.endpoints());
            size += 1;
        }
    }
    size
}

/// Exhaustive search over indices in ascending order, trying representatives
/// in ascending order before skipping an index. `None` is a proof of absence.
pub fn find_rainbow_cover(sys: &CoverSystem) -> Option<RainbowCover> {
    let m = sys.covers.len();
    // suffix[i] = W_{i+1} ∪ ... ∪ W_m
    let mut suffix = vec![VertexSet::EMPTY; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1].union(sys.covers[i]);
    }
    let mut search = RainbowSearch {
        sys,
        suffix,
        dead: HashSet::new(),
        picks: Vec::new(),
    };
    search.run(0, VertexSet::EMPTY).then(|| {
        let (indices, vertices): (Vec<usize>, Vec<Vertex>) =
            search.picks.iter().map(|&(i, v)| (i + 1, v)).unzip();
        let cover = vertices.iter().collect();
        RainbowCover {
            indices,
            vertices,
            cover,
        }
    })
}

struct RainbowSearch<'a> {
    sys: &'a CoverSystem,
    suffix: Vec<VertexSet>,
    dead: HashSet<(usize, VertexSet)>,
    picks: Vec<(usize, Vertex)>,
}

impl RainbowSearch<'_> {
    fn run(&mut self, i: usize, chosen: VertexSet) -> bool {
        let uncovered: Vec<Edge> = self
            .sys
            .graph
            .edges()
            .filter(|e| e.endpoints().is_disjoint(chosen))
            .collect();
        if uncovered.is_empty() {
            return true;
        }
        let m = self.sys.covers.len();
        if i == m
            || self.dead.contains(&(i, chosen))
            || uncovered
                .iter()
                .any(|e| e.endpoints().is_disjoint(self.suffix[i]))
            || matching_lower_bound(&uncovered) > m - i
        {
            return false;
        }
        let useful: VertexSet = uncovered
            .iter()
            .fold(VertexSet::EMPTY, |acc, e| acc.union(e.endpoints()));
        for v in self.sys.covers[i].intersection(useful) {
            self.picks.push((i, v));
            if self.run(i + 1, chosen.with(v)) {
                return true;
            }
            self.picks.pop();
        }
        if self.run(i + 1, chosen) {
            return true;
        }
        self.dead.insert((i, chosen));
        false
    }
}

/// Outcome of the brute-force cover-statement checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverStatementReport {
    /// Every `A` meeting all `W_i` and containing some `W_j` is a cover.
    pub hypothesis_holds: bool,
    /// A set satisfying both conditions that is not a cover.
    pub counterexample: Option<VertexSet>,
    pub rainbow: Option<RainbowCover>,
    pub status: CheckStatus,
}

/// Brute-force test of the hypothesis: every `A` with `A ∩ W_i ≠ ∅` for all
/// `i` and `W_j ⊆ A` for some `j` is a cover. Returns the first violating
/// `A` in mask order.
pub fn cover_hypothesis_counterexample(sys: &CoverSystem) -> Result<Option<VertexSet>> {
    let n = sys.graph.n();
    if n > HYPOTHESIS_MAX_N {
        return Err(Error::GuardExceeded {
            what: "cover hypothesis enumeration",
            limit: HYPOTHESIS_MAX_N,
            reached: n,
        });
    }
    Ok(sys.graph.vertices().subsets().find(|&a| {
        sys.covers.iter().all(|w| w.intersects(a))
            && sys.covers.iter().any(|w| w.is_subset(a))
            && !sys.graph.is_cover(a)
    }))
}

fn require_family_len(sys: &CoverSystem) -> Result<()> {
    let expected = sys.expected_len()?;
    if sys.covers.len() != expected {
        return Err(Error::Precondition(format!(
            "family has {} sets, expected n - iγ = {expected}",
            sys.covers.len()
        )));
    }
    Ok(())
}

/// For `m = n - iγ(G)`: if the hypothesis holds, a rainbow cover must exist.
/// When the hypothesis fails nothing is asserted and the check is skipped.
pub fn check_rainbow_hypothesis(sys: &CoverSystem) -> Result<CoverStatementReport> {
    require_family_len(sys)?;
    let counterexample = cover_hypothesis_counterexample(sys)?;
    if counterexample.is_some() {
        return Ok(CoverStatementReport {
            hypothesis_holds: false,
            counterexample,
            rainbow: None,
            status: CheckStatus::Skipped("hypothesis fails".into()),
        });
    }
    let rainbow = find_rainbow_cover(sys);
    Ok(CoverStatementReport {
        hypothesis_holds: true,
        counterexample: None,
        status: CheckStatus::from_bool(rainbow.is_some()),
        rainbow,
    })
}

/// For `m = n - iγ(G)` covers: a rainbow cover must exist.
pub fn check_rainbow_for_covers(sys: &CoverSystem) -> Result<CoverStatementReport> {
    require_family_len(sys)?;
    if !sys.all_covers() {
        return Err(Error::Precondition("every set in the family must be a cover".into()));
    }
    let rainbow = find_rainbow_cover(sys);
    Ok(CoverStatementReport {
        hypothesis_holds: true,
        counterexample: None,
        status: CheckStatus::from_bool(rainbow.is_some()),
        rainbow,
    })
}

/// `C_{3k}` with `2k - 1` copies of `M = {1,2,4,5,...,3k-2,3k-1}`. `M` is a
/// cover inducing a matching with `k` edges, and this family has no rainbow
/// cover.
pub fn tightness_instance(k: usize) -> Result<CoverSystem> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    let graph = Graph::cycle(3 * k);
    let m: VertexSet = (0..k).flat_map(|j| [3 * j + 1, 3 * j + 2]).collect();
    CoverSystem::new(graph, vec![m; 2 * k - 1])
}

/// Draws `count` families of `n - iγ(G)` covers, each cover rejection-sampled
/// from uniformly random vertex subsets.
pub fn sample_cover_systems<R: Rng>(g: &Graph, count: usize, rng: &mut R) -> Result<Vec<CoverSystem>> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let len = CoverSystem {
        graph: g.clone(),
        covers: Vec::new(),
    }
    .expected_len()?;
    let full = g.vertices().bits();
    let mut draw_cover = || loop {
        let w = VertexSet::from_bits(rng.gen::<u64>() & full);
        if g.is_cover(w) {
            return w;
        }
    };
    (0..count)
        .map(|_| CoverSystem::new(g.clone(), (0..len).map(|_| draw_cover()).collect()))
        .collect()
}

/// On-disk form of a cover system: `{ "graph": <edge-list path>, "covers": [[...], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub graph: String,
    pub covers: Vec<Vec<Vertex>>,
}
