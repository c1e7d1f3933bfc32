//! Minimal exclusion sequences over a linear ordering of facets, and the
//! edge-induced ordering of the facets of a non-cover complex.
//!
//! For a non-cover complex the graph is first relabeled so that a witness
//! independent set `I` for the independent domination number occupies the
//! top labels `n-|I|+1..=n`. Facets (complements of edges) are then ordered
//! by their edges, comparing larger endpoints first.

use serde::{Deserialize, Serialize};

use crate::complexes::{noncover_complex, SimplicialComplex};
use crate::domination::{gamma, igamma, maximal_independent_sets, DominationValue};
use crate::error::{Error, Result};
use crate::graphs::{Edge, Graph};
use crate::vertex_set::{Vertex, VertexSet};

/// A linear order `σ_1, ..., σ_m` on the facets of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetOrdering {
    ground_n: usize,
    facets: Vec<VertexSet>,
}

impl FacetOrdering {
    /// Checks that `order` is a permutation of the facets of `x`.
    pub fn new(x: &SimplicialComplex, order: Vec<VertexSet>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort();
        let mut expected = x.facets().to_vec();
        expected.sort();
        if sorted != expected {
            return Err(Error::Precondition(
                "ordering is not a permutation of the facets".into(),
            ));
        }
        Ok(FacetOrdering {
            ground_n: x.ground_n(),
            facets: order,
        })
    }

    /// Facets in the order they are listed.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.ground_n, self.facets.iter().copied())
    }

    /// 1-based index of the first facet containing `sigma`.
    pub fn first_index(&self, sigma: VertexSet) -> Option<usize> {
        self.facets
            .iter()
            .position(|f| sigma.is_subset(*f))
            .map(|i| i + 1)
    }
}

/// `mes(σ)` together with its support `M(σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesRecord {
    pub face: VertexSet,
    /// 1-based index of the first facet containing `face`.
    pub first_index: usize,
    pub sequence: Vec<Vertex>,
    pub support: VertexSet,
}

impl MesRecord {
    /// Structural invariants of a minimal exclusion sequence against `ord`.
    pub fn is_well_formed(&self, ord: &FacetOrdering) -> bool {
        self.sequence.len() + 1 == self.first_index
            && self.sequence.iter().all(|&v| self.face.contains(v))
            && self
                .sequence
                .iter()
                .zip(ord.facets())
                .all(|(&v, f)| !f.contains(v))
            && self.support == self.sequence.iter().collect()
    }

    fn map_vertices(&self, map: impl Fn(Vertex) -> Vertex) -> MesRecord {
        MesRecord {
            face: self.face.iter().map(&map).collect(),
            first_index: self.first_index,
            sequence: self.sequence.iter().map(|&v| map(v)).collect(),
            support: self.support.iter().map(&map).collect(),
        }
    }
}

/// Computes the minimal exclusion sequence of `sigma` with the literal
/// recurrence: `v_k` is the least earlier entry missing from `σ_k` if one
/// exists, otherwise the least vertex of `σ \ σ_k`.
pub fn mes(ord: &FacetOrdering, sigma: VertexSet) -> Result<MesRecord> {
    let first_index = ord.first_index(sigma).ok_or(Error::NotAFace { face: sigma })?;
    let mut sequence = Vec::with_capacity(first_index - 1);
    let mut support = VertexSet::EMPTY;
    for facet in &ord.facets()[..first_index - 1] {
        let excluded = sigma.difference(*facet);
        let v = support
            .intersection(excluded)
            .min()
            .or_else(|| excluded.min())
            .expect("σ is not contained in an earlier facet");
        sequence.push(v);
        support.insert(v);
    }
    Ok(MesRecord {
        face: sigma,
        first_index,
        sequence,
        support,
    })
}

/// `d(X) = max |M(σ)|` over all faces, with the first face attaining it
/// (faces scanned in mask order). `None` for the void complex.
pub fn d_prec(ord: &FacetOrdering, face_budget: usize) -> Result<Option<(usize, MesRecord)>> {
    let faces = ord.complex().enumerate_faces(face_budget)?;
    let mut best: Option<(usize, MesRecord)> = None;
    for sigma in faces {
        let rec = mes(ord, sigma)?;
        let size = rec.support.len();
        if best.as_ref().is_none_or(|(b, _)| size > *b) {
            best = Some((size, rec));
        }
    }
    Ok(best)
}

/// A graph relabeled so that its domination witness `I` sits on the top
/// labels, keeping the relative order of the remaining vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelabeledInstance {
    pub original: Graph,
    /// `perm[v - 1]` is the new label of original vertex `v`.
    pub perm: Vec<Vertex>,
    pub relabeled: Graph,
    /// The witness independent set, in original labels.
    pub witness: VertexSet,
    pub igamma: usize,
}

impl RelabeledInstance {
    pub fn n(&self) -> usize {
        self.original.n()
    }

    pub fn i_size(&self) -> usize {
        self.witness.len()
    }

    /// `I` in relabeled coordinates: `[n] \ [n - |I|]`.
    pub fn top(&self) -> VertexSet {
        let n = self.n();
        VertexSet::full(n).difference(VertexSet::full(n - self.i_size()))
    }

    /// Original label of relabeled vertex `v`.
    pub fn original_label(&self, v: Vertex) -> Vertex {
        self.perm
            .iter()
            .position(|&p| p == v)
            .map(|i| i + 1)
            .expect("label within range")
    }

    pub fn to_original(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.original_label(v)).collect()
    }

    pub fn to_relabeled(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.perm[v - 1]).collect()
    }
}

fn require_isolated_free(g: &Graph) -> Result<()> {
    let isolated = g.isolated_vertices();
    if isolated.is_empty() {
        Ok(())
    } else {
        Err(Error::IsolatedVertex { vertices: isolated })
    }
}

/// Relabels `g` around its deterministic `iγ` witness.
pub fn normalize_instance(g: &Graph) -> Result<RelabeledInstance> {
    require_isolated_free(g)?;
    normalize_with_witness(g, igamma(g).target)
}

/// Relabels `g` around a caller-chosen witness, which must be independent
/// and attain `iγ(G)`. A non-maximal witness is extended by adding the
/// smallest admissible vertices.
pub fn normalize_with_witness(g: &Graph, witness: VertexSet) -> Result<RelabeledInstance> {
    require_isolated_free(g)?;
    if !g.is_independent(witness) || !witness.is_subset(g.vertices()) {
        return Err(Error::Precondition(format!("{witness} is not an independent set")));
    }
    let ig = igamma(g).value.finite().expect("isolated-free graphs have finite iγ");
    if gamma(g, witness) != DominationValue::Finite(ig) {
        return Err(Error::Precondition(format!(
            "{witness} does not attain iγ = {ig}"
        )));
    }
    let mut witness = witness;
    for v in g.vertices().difference(witness) {
        if g.neighbors(v).is_disjoint(witness) {
            witness.insert(v);
        }
    }
    debug_assert!(maximal_independent_sets(g).contains(&witness));

    let n = g.n();
    let rest = g.vertices().difference(witness);
    let mut perm = vec![0; n];
    for (i, v) in rest.iter().chain(witness.iter()).enumerate() {
        perm[v - 1] = i + 1;
    }
    Ok(RelabeledInstance {
        original: g.clone(),
        relabeled: g.relabel(&perm),
        perm,
        witness,
        igamma: ig,
    })
}

/// Orders the facets of `NC(relabeled)` by their complementary edges.
pub fn noncover_ordering(instance: &RelabeledInstance) -> Result<FacetOrdering> {
    let g = &instance.relabeled;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.sort_by_key(|e| e.order_key());
    let order = edges.iter().map(|e| e.endpoints().complement(n)).collect();
    FacetOrdering::new(&noncover_complex(g), order)
}

/// Normalizes `g` and returns its facet ordering.
pub fn facet_ordering(g: &Graph) -> Result<(RelabeledInstance, FacetOrdering)> {
    let instance = normalize_instance(g)?;
    let ord = noncover_ordering(&instance)?;
    Ok((instance, ord))
}

/// The edge underlying a facet of a non-cover complex.
pub fn facet_edge(n: usize, facet: VertexSet) -> Option<Edge> {
    let c = facet.complement(n);
    (c.len() == 2).then(|| Edge::new(c.min().unwrap(), c.max().unwrap()))
}

/// `β(σ) = |N(σ̄ ∩ Ī) ∩ σ̄ ∩ I|` in relabeled coordinates.
pub fn beta(instance: &RelabeledInstance, sigma: VertexSet) -> usize {
    let n = instance.n();
    let top = instance.top();
    let co_sigma = sigma.complement(n);
    let outside = co_sigma.difference(top);
    instance
        .relabeled
        .neighborhood(outside)
        .intersection(co_sigma)
        .intersection(top)
        .len()
}

/// `n - iγ(G) - 1`.
pub fn collapsibility_bound(g: &Graph) -> Result<usize> {
    require_isolated_free(g)?;
    let ig = igamma(g).value.finite().expect("isolated-free");
    // iγ <= |I| <= n - 1 once an edge exists.
    (g.n())
        .checked_sub(ig + 1)
        .ok_or_else(|| Error::Precondition(format!("iγ = {ig} exceeds n - 1")))
}

/// Result of checking `|M(σ)| <= n - iγ(G) - 1` over every face of `NC(G)`.
/// Faces and sequences are reported in the original labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesBoundReport {
    pub n: usize,
    pub igamma: usize,
    pub bound: usize,
    pub d_prec: usize,
    pub witness_face: VertexSet,
    pub mes: Vec<Vertex>,
    /// `perm[v - 1]` is the label used for `v` during the computation.
    pub permutation: Vec<Vertex>,
    pub passed: bool,
}

pub fn verify_mes_bound(g: &Graph, face_budget: usize) -> Result<MesBoundReport> {
    let (instance, ord) = facet_ordering(g)?;
    let bound = collapsibility_bound(g)?;
    let (d, rec) = d_prec(&ord, face_budget)?.expect("complex with edges is non-void");
    let rec = rec.map_vertices(|v| instance.original_label(v));
    Ok(MesBoundReport {
        n: g.n(),
        igamma: instance.igamma,
        bound,
        d_prec: d,
        witness_face: rec.face,
        mes: rec.sequence,
        permutation: instance.perm.clone(),
        passed: d <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::DEFAULT_FACE_BUDGET;
    use crate::graphs::all_graphs;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn normalize_path_with_explicit_witness() {
        let inst = normalize_with_witness(&Graph::path(3), set(&[1, 3])).unwrap();
        assert_eq!(inst.perm, vec![2, 1, 3]);
        let edges: Vec<_> = inst.relabeled.edges().map(|e| (e.a, e.b)).collect();
        assert_eq!(edges, vec![(1, 2), (1, 3)]);
        assert_eq!(inst.top(), set(&[2, 3]));
    }

    #[test]
    fn normalize_cycle() {
        let c6 = Graph::cycle(6);
        let inst = normalize_instance(&c6).unwrap();
        assert_eq!(inst.witness, set(&[1, 4]));
        assert_eq!(inst.to_relabeled(set(&[2, 3, 5, 6])), set(&[1, 2, 3, 4]));
        assert_eq!(inst.to_relabeled(inst.witness), set(&[5, 6]));
        assert_eq!(inst.to_original(set(&[5, 6])), set(&[1, 4]));
    }

    #[test]
    fn normalize_identity_when_witness_on_top() {
        // Star centered at 1 with its leaves {2,3,4} as witness.
        let star = Graph::star(3);
        let inst = normalize_with_witness(&star, set(&[2, 3, 4])).unwrap();
        assert_eq!(inst.witness, set(&[2, 3, 4]));
        assert_eq!(inst.perm, vec![1, 2, 3, 4]);
        assert_eq!(inst.relabeled, star);
    }

    #[test]
    fn normalize_extends_and_rejects() {
        // {1} attains iγ(P_3) = 1 but is not maximal.
        let inst = normalize_with_witness(&Graph::path(3), set(&[1])).unwrap();
        assert_eq!(inst.witness, set(&[1, 3]));

        assert!(matches!(
            normalize_instance(&Graph::empty(2)),
            Err(Error::IsolatedVertex { .. })
        ));
        assert!(normalize_with_witness(&Graph::path(3), set(&[1, 2])).is_err());
        assert!(normalize_with_witness(&Graph::cycle(6), set(&[1])).is_err());
    }

    #[test]
    fn ordering_examples() {
        let inst = normalize_with_witness(&Graph::path(3), set(&[1, 3])).unwrap();
        let ord = noncover_ordering(&inst).unwrap();
        assert_eq!(ord.facets(), &[set(&[3]), set(&[2])]);

        let (_, ord) = facet_ordering(&Graph::complete(3)).unwrap();
        assert_eq!(ord.facets(), &[set(&[3]), set(&[2]), set(&[1])]);

        let (_, ord) = facet_ordering(&Graph::path(2)).unwrap();
        assert_eq!(ord.facets().len(), 1);
    }

    #[test]
    fn mes_examples() {
        let inst = normalize_with_witness(&Graph::path(3), set(&[1, 3])).unwrap();
        let ord = noncover_ordering(&inst).unwrap();
        let rec = mes(&ord, set(&[3])).unwrap();
        assert!(rec.sequence.is_empty());
        assert_eq!(rec.support, VertexSet::EMPTY);
        let rec = mes(&ord, set(&[2])).unwrap();
        assert_eq!((rec.first_index, rec.sequence.clone()), (2, vec![2]));
        assert_eq!(rec.support, set(&[2]));
        assert!(matches!(mes(&ord, set(&[2, 3])), Err(Error::NotAFace { .. })));

        let (_, ord) = facet_ordering(&Graph::complete(3)).unwrap();
        let rec = mes(&ord, set(&[1])).unwrap();
        assert_eq!(rec.first_index, 3);
        assert_eq!(rec.sequence, vec![1, 1]);
        assert_eq!(rec.support, set(&[1]));
    }

    #[test]
    fn mes_prefers_earlier_entries() {
        // Facets {3,4}, {1,4}, {1,2,3}; σ = {1,3}.
        // v1 = min({1,3} \ {3,4}) = 1; v2: {1} ∩ ({1,3} \ {1,4}) = ∅ → min{3} = 3.
        let x = SimplicialComplex::from_facets(4, [set(&[3, 4]), set(&[1, 4]), set(&[1, 2, 3])]);
        let ord = FacetOrdering::new(&x, vec![set(&[3, 4]), set(&[1, 4]), set(&[1, 2, 3])]).unwrap();
        let rec = mes(&ord, set(&[1, 3])).unwrap();
        assert_eq!(rec.sequence, vec![1, 3]);
        // σ = {1,2,3} against order {1,4}, {3,4}, {1,2,3}:
        // v1 = min({2,3}) = 2; v2: {2} ∩ {1,2} = {2} → 2.
        let ord = FacetOrdering::new(&x, vec![set(&[1, 4]), set(&[3, 4]), set(&[1, 2, 3])]).unwrap();
        let rec = mes(&ord, set(&[1, 2, 3])).unwrap();
        assert_eq!(rec.sequence, vec![2, 2]);
        assert!(rec.is_well_formed(&ord));
        assert!(FacetOrdering::new(&x, vec![set(&[1, 4])]).is_err());
    }

    #[test]
    fn d_prec_examples() {
        let inst = normalize_with_witness(&Graph::path(3), set(&[1, 3])).unwrap();
        let ord = noncover_ordering(&inst).unwrap();
        let (d, rec) = d_prec(&ord, DEFAULT_FACE_BUDGET).unwrap().unwrap();
        assert_eq!((d, rec.face), (1, set(&[2])));

        let (_, ord) = facet_ordering(&Graph::complete(3)).unwrap();
        assert_eq!(d_prec(&ord, DEFAULT_FACE_BUDGET).unwrap().unwrap().0, 1);

        let x = SimplicialComplex::simplex(4);
        let ord = FacetOrdering::new(&x, x.facets().to_vec()).unwrap();
        assert_eq!(d_prec(&ord, DEFAULT_FACE_BUDGET).unwrap().unwrap().0, 0);
    }

    #[test]
    fn beta_examples() {
        let inst = normalize_with_witness(&Graph::path(3), set(&[1, 3])).unwrap();
        assert_eq!(beta(&inst, set(&[2])), 1);
        // C_6 relabeled: Ī = {1..4}; the edge 12 lies inside Ī. Both I-vertices
        // 5,6 belong to σ = [6] \ {1,2}, so β = 0.
        let inst = normalize_instance(&Graph::cycle(6)).unwrap();
        assert!(inst.relabeled.has_edge(1, 2));
        assert_eq!(beta(&inst, set(&[3, 4, 5, 6])), 0);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(collapsibility_bound(&Graph::cycle(6)).unwrap(), 3);
        assert_eq!(collapsibility_bound(&Graph::path(3)).unwrap(), 1);
        assert_eq!(collapsibility_bound(&Graph::complete(3)).unwrap(), 1);
        assert!(matches!(
            collapsibility_bound(&Graph::parse("p edge 3 1\ne 1 2").unwrap()),
            Err(Error::IsolatedVertex { .. })
        ));
    }

    #[test]
    fn verify_bound_examples() {
        let r = verify_mes_bound(&Graph::cycle(6), DEFAULT_FACE_BUDGET).unwrap();
        assert!(r.passed && r.d_prec <= 3);
        assert_eq!((r.n, r.igamma, r.bound), (6, 2, 3));
        let r = verify_mes_bound(&Graph::path(3), DEFAULT_FACE_BUDGET).unwrap();
        assert!(r.passed);
        assert_eq!(r.d_prec, 1);
        assert!(verify_mes_bound(&Graph::cycle(6), 5).is_err());
    }

    #[test]
    fn records_well_formed_and_bounded() {
        for n in 2..=5 {
            for (_, g) in all_graphs(n).unwrap().isolated_free() {
                let (_, ord) = facet_ordering(&g).unwrap();
                for sigma in ord.complex().enumerate_faces(DEFAULT_FACE_BUDGET).unwrap() {
                    assert!(mes(&ord, sigma).unwrap().is_well_formed(&ord));
                }
                assert!(verify_mes_bound(&g, DEFAULT_FACE_BUDGET).unwrap().passed, "{g:?}");
            }
        }
    }

    #[test]
    fn inner_edges_precede_cross_edges() {
        for n in 2..=5 {
            for (_, g) in all_graphs(n).unwrap().isolated_free() {
                let (inst, ord) = facet_ordering(&g).unwrap();
                let top = inst.top();
                let inner: Vec<bool> = ord
                    .facets()
                    .iter()
                    .map(|&f| facet_edge(n, f).unwrap().endpoints().is_disjoint(top))
                    .collect();
                // Once a cross edge appears, no inner edge follows.
                assert!(inner.windows(2).all(|w| w[0] || !w[1]), "{g:?}");
            }
        }
    }
}
