//! Simplicial complexes stored by their facets.
//!
//! The void complex (no faces) has an empty facet list; the empty complex
//! `{∅}` has the single facet `∅`. The two are never conflated.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::vertex_set::{Vertex, VertexSet, MAX_VERTICES};

/// Default cap on the number of distinct faces materialised at once.
pub const DEFAULT_FACE_BUDGET: usize = 1 << 22;

/// Ground sets larger than this are refused by [`alexander_dual`].
pub const DUAL_MAX_N: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    ground_n: usize,
    facets: Vec<VertexSet>,
}

/// Canonical facet order: lexicographic on ascending vertex lists.
fn lex_cmp(a: &VertexSet, b: &VertexSet) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}

impl SimplicialComplex {
    /// Builds a complex from generating sets, keeping only the maximal ones.
    pub fn from_facets(ground_n: usize, sets: impl IntoIterator<Item = VertexSet>) -> Self {
        assert!(ground_n <= MAX_VERTICES);
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        let ground = VertexSet::full(ground_n);
        assert!(
            sets.iter().all(|s| s.is_subset(ground)),
            "facet outside ground set [{ground_n}]"
        );
        // Larger sets first, so a set only needs checking against kept ones.
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<VertexSet> = Vec::with_capacity(sets.len());
        for s in sets {
            if !facets.iter().any(|f| s.is_subset(*f)) {
                facets.push(s);
            }
        }
        Self::from_antichain(ground_n, facets)
    }

    fn from_antichain(ground_n: usize, mut facets: Vec<VertexSet>) -> Self {
        facets.sort_by(lex_cmp);
        let x = SimplicialComplex { ground_n, facets };
        debug_assert!(x.is_antichain(), "facets not an antichain: {:?}", x.facets);
        x
    }

    pub fn void(ground_n: usize) -> Self {
        SimplicialComplex {
            ground_n,
            facets: Vec::new(),
        }
    }

    /// `{∅}`.
    pub fn empty_complex(ground_n: usize) -> Self {
        SimplicialComplex {
            ground_n,
            facets: vec![VertexSet::EMPTY],
        }
    }

    /// The full simplex on `[ground_n]`.
    pub fn simplex(ground_n: usize) -> Self {
        SimplicialComplex {
            ground_n,
            facets: vec![VertexSet::full(ground_n)],
        }
    }

    pub fn ground_n(&self) -> usize {
        self.ground_n
    }

    pub fn ground(&self) -> VertexSet {
        VertexSet::full(self.ground_n)
    }

    /// Facets in canonical (lexicographic) order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn is_antichain(&self) -> bool {
        self.facets.iter().enumerate().all(|(i, a)| {
            self.facets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(*b))
        })
    }

    /// Largest facet size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn contains_face(&self, sigma: VertexSet) -> bool {
        self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    pub fn containing_facets(&self, sigma: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.facets.iter().copied().filter(move |f| sigma.is_subset(*f))
    }

    /// `X[W]`: faces of `X` lying inside `W`.
    pub fn induced_subcomplex(&self, w: VertexSet) -> Self {
        Self::from_facets(self.ground_n, self.facets.iter().map(|f| f.intersection(w)))
    }

    /// Vertices appearing in some facet.
    pub fn vertex_support(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    /// Every face once, sorted by mask. Fails if more than `budget` distinct
    /// faces would be produced.
    pub fn enumerate_faces(&self, budget: usize) -> Result<Vec<VertexSet>> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                if seen.insert(s) && seen.len() > budget {
                    return Err(Error::GuardExceeded {
                        what: "face enumeration",
                        limit: budget,
                        reached: seen.len(),
                    });
                }
            }
        }
        let mut faces: Vec<VertexSet> = seen.into_iter().collect();
        faces.sort();
        Ok(faces)
    }

    /// `v` lies in every facet. Vacuously true for the void complex.
    pub fn is_cone_with_apex(&self, v: Vertex) -> bool {
        self.facets.iter().all(|f| f.contains(v))
    }

    /// Inclusion-minimal subsets of the ground set that are not faces.
    pub fn minimal_non_faces(&self) -> Result<Vec<VertexSet>> {
        if self.ground_n > DUAL_MAX_N {
            return Err(Error::GuardExceeded {
                what: "alexander dual ground set",
                limit: DUAL_MAX_N,
                reached: self.ground_n,
            });
        }
        let mut out = Vec::new();
        // Sizes in increasing order: a non-face is minimal iff every subset one
        // smaller is a face.
        for k in 0..=self.ground_n {
            for s in self.ground().subsets_of_size(k) {
                if !self.contains_face(s) && s.iter().all(|v| self.contains_face(s.without(v))) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ground_n: self.ground_n,
            facets: self.facets.iter().map(|f| f.to_vec()).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        if json.ground_n > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "ground set of {} exceeds {MAX_VERTICES}",
                json.ground_n
            )));
        }
        let mut sets = Vec::with_capacity(json.facets.len());
        for f in &json.facets {
            if let Some(v) = f.iter().find(|&&v| v == 0 || v > json.ground_n) {
                return Err(Error::Precondition(format!(
                    "vertex {v} outside ground set [{}]",
                    json.ground_n
                )));
            }
            sets.push(f.iter().collect());
        }
        Ok(Self::from_facets(json.ground_n, sets))
    }
}

/// Canonical JSON form: `{ "ground_n": n, "facets": [[v, ...], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ground_n: usize,
    pub facets: Vec<Vec<Vertex>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = ComplexJson::deserialize(deserializer)?;
        SimplicialComplex::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// `I(G)`: facets are the maximal independent sets.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    SimplicialComplex::from_antichain(g.n(), crate::domination::maximal_independent_sets(g))
}

/// `NC(G)`: facets are complements of edges; void when `G` has no edges.
pub fn noncover_complex(g: &Graph) -> SimplicialComplex {
    let n = g.n();
    SimplicialComplex::from_facets(n, g.edges().map(|e| e.endpoints().complement(n)))
}

/// Combinatorial Alexander dual `D(X) = { W : [n] \ W ∉ X }`, computed from
/// the minimal non-faces of `X`.
pub fn alexander_dual(x: &SimplicialComplex) -> Result<SimplicialComplex> {
    let n = x.ground_n();
    let facets = x.minimal_non_faces()?.into_iter().map(|s| s.complement(n));
    Ok(SimplicialComplex::from_antichain(n, facets.collect()))
}
