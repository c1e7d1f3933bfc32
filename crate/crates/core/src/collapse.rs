//! Elementary d-collapses and exact d-collapsibility with replayable
//! certificates.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Default cap on distinct complexes visited by [`is_d_collapsible`].
pub const DEFAULT_STATE_BUDGET: usize = 1 << 20;

/// Removal of every face containing `free`, whose unique facet is `facet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollapseStep {
    pub free: VertexSet,
    pub facet: VertexSet,
}

impl CollapseStep {
    pub fn d_used(&self) -> usize {
        self.free.len()
    }
}

/// Steps leading from a complex to the void complex. Serializes as the bare
/// step list `[{"free": [...], "facet": [...]}, ...]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CollapseCertificate {
    pub steps: Vec<CollapseStep>,
}

impl CollapseCertificate {
    /// Largest free face size used; 0 for an empty certificate.
    pub fn max_d_used(&self) -> usize {
        self.steps.iter().map(|s| s.d_used()).max().unwrap_or(0)
    }

    /// Replays the certificate on `x`, re-checking freeness, the size bound
    /// and the claimed facet at every step, and that the result is void.
    /// Returns the intermediate complexes, starting with `x`.
    pub fn replay(&self, x: &SimplicialComplex, d: usize) -> Result<Vec<SimplicialComplex>> {
        let mut states = vec![x.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            let invalid = |reason: String| Error::InvalidCertificate { step: i + 1, reason };
            if step.d_used() > d {
                return Err(invalid(format!(
                    "free face {} has size {} > {d}",
                    step.free,
                    step.d_used()
                )));
            }
            let current = states.last().expect("non-empty");
            let facet = unique_facet(current, step.free).map_err(|e| invalid(e.to_string()))?;
            if facet != step.facet {
                return Err(invalid(format!(
                    "{} lies in facet {facet}, not {}",
                    step.free, step.facet
                )));
            }
            let next = apply_collapse(current, step.free).map_err(|e| invalid(e.to_string()))?;
            states.push(next);
        }
        let last = states.last().expect("non-empty");
        if !last.is_void() {
            return Err(Error::InvalidCertificate {
                step: self.steps.len(),
                reason: format!("final complex is not void: {:?}", last.facets()),
            });
        }
        Ok(states)
    }
}

fn unique_facet(x: &SimplicialComplex, sigma: VertexSet) -> Result<VertexSet> {
    let containing: Vec<VertexSet> = x.containing_facets(sigma).collect();
    match containing.as_slice() {
        [] => Err(Error::NotAFace { face: sigma }),
        [tau] => Ok(*tau),
        _ => Err(Error::NotFree {
            face: sigma,
            containing,
        }),
    }
}

/// Free faces of size at most `d` with their facets, ordered by size and
/// then by mask.
pub fn free_faces(x: &SimplicialComplex, d: usize) -> Vec<(VertexSet, VertexSet)> {
    let facets = x.facets();
    let mut out = Vec::new();
    for (i, &tau) in facets.iter().enumerate() {
        let others = || facets.iter().enumerate().filter(move |(j, _)| *j != i);
        for k in 0..=d.min(tau.len()) {
            for sigma in tau.subsets_of_size(k) {
                if others().all(|(_, f)| !sigma.is_subset(*f)) {
                    out.push((sigma, tau));
                }
            }
        }
    }
    out.sort_by_key(|(s, _)| (s.len(), *s));
    out
}

/// Deletes every face containing the free face `sigma`.
pub fn apply_collapse(x: &SimplicialComplex, sigma: VertexSet) -> Result<SimplicialComplex> {
    let tau = unique_facet(x, sigma)?;
    let survivors = x.facets().iter().copied().filter(|&f| f != tau);
    // Faces of τ not containing σ are generated by τ \ {v}, v ∈ σ.
    let replacements = sigma.iter().map(|v| tau.without(v));
    Ok(SimplicialComplex::from_facets(
        x.ground_n(),
        survivors.chain(replacements),
    ))
}

/// Repeatedly collapses the first free face. Failure says nothing about
/// collapsibility.
pub fn greedy_collapse(x: &SimplicialComplex, d: usize) -> Option<CollapseCertificate> {
    let mut current = x.clone();
    let mut steps = Vec::new();
    while !current.is_void() {
        let (free, facet) = *free_faces(&current, d).first()?;
        current = apply_collapse(&current, free).expect("free face");
        steps.push(CollapseStep { free, facet });
    }
    Some(CollapseCertificate { steps })
}

/// Exact decision by depth-first search over free-face choices, memoizing
/// complexes already shown to be stuck. The first branch explored is the
/// greedy one. `Ok(None)` means not d-collapsible; exhausting
/// `state_budget` distinct complexes is an error, not a negative answer.
/// A returned certificate has been replayed against `x`.
pub fn is_d_collapsible(
    x: &SimplicialComplex,
    d: usize,
    state_budget: usize,
) -> Result<Option<CollapseCertificate>> {
    let mut search = Search {
        d,
        budget: state_budget,
        dead: HashSet::new(),
        visited: 0,
        steps: Vec::new(),
    };
    if !search.run(x)? {
        return Ok(None);
    }
    let cert = CollapseCertificate {
        steps: search.steps,
    };
    cert.replay(x, d)?;
    Ok(Some(cert))
}

struct Search {
    d: usize,
    budget: usize,
    dead: HashSet<Vec<VertexSet>>,
    visited: usize,
    steps: Vec<CollapseStep>,
}

impl Search {
    fn run(&mut self, x: &SimplicialComplex) -> Result<bool> {
        if x.is_void() {
            return Ok(true);
        }
        if self.dead.contains(x.facets()) {
            return Ok(false);
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        for (free, facet) in free_faces(x, self.d) {
            let next = apply_collapse(x, free)?;
            self.steps.push(CollapseStep { free, facet });
            if self.run(&next)? {
                return Ok(true);
            }
            self.steps.pop();
        }
        self.dead.insert(x.facets().to_vec());
        Ok(false)
    }
}

/// Least `d` for which `x` is d-collapsible; 0 for the void complex.
pub fn collapsibility_number(x: &SimplicialComplex, state_budget: usize) -> Result<usize> {
    // Every facet is free once d reaches the largest facet size.
    let top = x.facets().iter().map(|f| f.len()).max().unwrap_or(0);
    for d in 0..top {
        if is_d_collapsible(x, d, state_budget)?.is_some() {
            return Ok(d);
        }
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::noncover_complex;
    use crate::graphs::Graph;
    use crate::vertex_set::Vertex;

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().collect()
    }

    fn cx(n: usize, facets: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, facets.iter().map(|f| set(f)))
    }

    fn triangle_boundary() -> SimplicialComplex {
        cx(3, &[&[1, 2], &[1, 3], &[2, 3]])
    }

    #[test]
    fn free_face_examples() {
        let p3 = noncover_complex(&Graph::path(3));
        assert_eq!(free_faces(&p3, 1), vec![(set(&[1]), set(&[1])), (set(&[3]), set(&[3]))]);
        assert_eq!(free_faces(&cx(2, &[&[1, 2]]), 0), vec![(VertexSet::EMPTY, set(&[1, 2]))]);
        let two = cx(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(free_faces(&two, 1), vec![(set(&[1]), set(&[1, 2])), (set(&[3]), set(&[2, 3]))]);
    }

    #[test]
    fn apply_collapse_examples() {
        let x = cx(3, &[&[1], &[3]]);
        assert_eq!(apply_collapse(&x, set(&[1])).unwrap(), cx(3, &[&[3]]));
        let y = apply_collapse(&cx(3, &[&[3]]), set(&[3])).unwrap();
        assert!(y.is_empty_complex() && !y.is_void());
        assert!(apply_collapse(&y, VertexSet::EMPTY).unwrap().is_void());
        assert!(matches!(
            apply_collapse(&triangle_boundary(), set(&[1])),
            Err(Error::NotFree { .. })
        ));
        assert!(matches!(
            apply_collapse(&x, set(&[1, 3])),
            Err(Error::NotAFace { .. })
        ));
        // Collapsing an edge of a solid triangle leaves the other two sides.
        let t = SimplicialComplex::simplex(3);
        assert_eq!(apply_collapse(&t, set(&[1, 2])).unwrap(), cx(3, &[&[1, 3], &[2, 3]]));
    }

    #[test]
    fn collapsibility_examples() {
        let cert = is_d_collapsible(&SimplicialComplex::void(3), 0, DEFAULT_STATE_BUDGET)
            .unwrap()
            .unwrap();
        assert!(cert.steps.is_empty());

        let p3 = noncover_complex(&Graph::path(3));
        let cert = is_d_collapsible(&p3, 1, DEFAULT_STATE_BUDGET).unwrap().unwrap();
        assert_eq!(
            cert.steps,
            vec![
                CollapseStep { free: set(&[1]), facet: set(&[1]) },
                CollapseStep { free: VertexSet::EMPTY, facet: set(&[3]) },
            ]
        );
        // The longer route through {3} and then ∅ is also a valid certificate.
        let manual = CollapseCertificate {
            steps: vec![
                CollapseStep { free: set(&[1]), facet: set(&[1]) },
                CollapseStep { free: set(&[3]), facet: set(&[3]) },
                CollapseStep { free: VertexSet::EMPTY, facet: VertexSet::EMPTY },
            ],
        };
        assert_eq!(manual.replay(&p3, 1).unwrap().len(), 4);
        assert!(is_d_collapsible(&triangle_boundary(), 1, DEFAULT_STATE_BUDGET)
            .unwrap()
            .is_none());
        assert!(is_d_collapsible(&triangle_boundary(), 2, DEFAULT_STATE_BUDGET)
            .unwrap()
            .is_some());
    }

    #[test]
    fn budget_is_distinct_from_no() {
        let boundary = triangle_boundary();
        assert!(matches!(
            is_d_collapsible(&boundary, 1, 0),
            Err(Error::BudgetExceeded { budget: 0 })
        ));
    }

    #[test]
    fn greedy_examples() {
        let p3 = noncover_complex(&Graph::path(3));
        assert!(greedy_collapse(&p3, 1).is_some());
        assert!(greedy_collapse(&triangle_boundary(), 1).is_none());
        let c6 = noncover_complex(&Graph::cycle(6));
        let cert = greedy_collapse(&c6, 3).expect("greedy collapses NC(C_6) at d = 3");
        cert.replay(&c6, 3).unwrap();
        assert!(is_d_collapsible(&c6, 3, DEFAULT_STATE_BUDGET).unwrap().is_some());
    }

    #[test]
    fn collapsibility_number_examples() {
        assert_eq!(collapsibility_number(&noncover_complex(&Graph::path(3)), DEFAULT_STATE_BUDGET).unwrap(), 1);
        assert_eq!(collapsibility_number(&SimplicialComplex::simplex(3), DEFAULT_STATE_BUDGET).unwrap(), 0);
        assert_eq!(collapsibility_number(&triangle_boundary(), DEFAULT_STATE_BUDGET).unwrap(), 2);
        assert_eq!(collapsibility_number(&SimplicialComplex::void(2), DEFAULT_STATE_BUDGET).unwrap(), 0);
        assert_eq!(collapsibility_number(&SimplicialComplex::empty_complex(2), DEFAULT_STATE_BUDGET).unwrap(), 0);
    }

    #[test]
    fn replay_rejects_tampering() {
        let p3 = noncover_complex(&Graph::path(3));
        let mut cert = is_d_collapsible(&p3, 1, DEFAULT_STATE_BUDGET).unwrap().unwrap();
        assert_eq!(cert.replay(&p3, 1).unwrap().len(), 3);
        assert!(matches!(cert.replay(&p3, 0), Err(Error::InvalidCertificate { step: 1, .. })));
        cert.steps.swap(0, 1);
        assert!(matches!(cert.replay(&p3, 1), Err(Error::InvalidCertificate { step: 1, .. })));
        let short = CollapseCertificate { steps: vec![] };
        assert!(short.replay(&p3, 1).is_err());
        let wrong_facet = CollapseCertificate {
            steps: vec![CollapseStep { free: set(&[1]), facet: set(&[3]) }],
        };
        assert!(matches!(wrong_facet.replay(&p3, 1), Err(Error::InvalidCertificate { step: 1, .. })));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = CollapseCertificate {
            steps: vec![CollapseStep { free: set(&[1]), facet: set(&[1, 2]) }],
        };
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"[{"free":[1],"facet":[1,2]}]"#);
        assert_eq!(serde_json::from_str::<CollapseCertificate>(&json).unwrap(), cert);
    }

    #[test]
    fn cone_over_isolated_vertex_collapses() {
        let g = Graph::parse("p edge 3 1\ne 1 2").unwrap();
        let nc = noncover_complex(&g);
        assert!(nc.is_cone_with_apex(3));
        assert!(is_d_collapsible(&nc, 0, DEFAULT_STATE_BUDGET).unwrap().is_some());
    }
}
