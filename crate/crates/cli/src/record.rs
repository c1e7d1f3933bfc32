//! The single-graph verification pipeline and its JSON record.

use std::time::Instant;

use noncover::collapse::{is_d_collapsible, CollapseCertificate};
use noncover::complexes::noncover_complex;
use noncover::domination::{igamma, igamma_w, DominationValue};
use noncover::homology::{check_independence_connectivity, check_noncover_vanishing, CheckStatus};
use noncover::mes::verify_mes_bound;
use noncover::rainbow::{check_rainbow_for_covers, sample_cover_systems};
use noncover::{Error, Graph};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub face: usize,
    pub state: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineConfig {
    pub budgets: Budgets,
    pub seed: u64,
    /// Sampled cover families per graph for the rainbow check.
    pub rainbow_samples: usize,
    /// Skip the induced-subcomplex vanishing check above this many vertices.
    pub induced_max_n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Collapsible {
    True,
    False,
    BudgetExceeded,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowSummary {
    pub systems: usize,
    pub found: usize,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub collapse_ms: f64,
    pub homology_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub graph_id: String,
    pub n: usize,
    pub edges: usize,
    pub igamma: DominationValue,
    /// `n - iγ - 1`, present for graphs without isolated vertices.
    pub bound: Option<usize>,
    pub d_prec: Option<usize>,
    pub mes_bound: CheckStatus,
    pub collapsible: Collapsible,
    pub certificate: Option<CollapseCertificate>,
    /// `n - iγ_w - 1` and collapsibility there, for graphs with isolated
    /// vertices and at least one edge.
    pub weak_bound: Option<usize>,
    pub collapsible_at_weak_bound: Collapsible,
    pub vanishing: CheckStatus,
    pub eta: CheckStatus,
    pub rainbow: RainbowSummary,
    pub notes: Vec<String>,
    pub timings: Timings,
}

impl VerificationRecord {
    /// A theorem-backed check came out false.
    pub fn contradiction(&self) -> bool {
        self.collapsible == Collapsible::False
            || self.collapsible_at_weak_bound == Collapsible::False
            || self.mes_bound.is_fail()
            || self.vanishing.is_fail()
            || self.eta.is_fail()
            || self.rainbow.status.is_fail()
    }

    pub fn budget_exceeded(&self) -> bool {
        let skipped_budget = |s: &CheckStatus| matches!(s, CheckStatus::Skipped(r) if r.contains("budget") || r.contains("guard"));
        self.collapsible == Collapsible::BudgetExceeded
            || self.collapsible_at_weak_bound == Collapsible::BudgetExceeded
            || [&self.mes_bound, &self.vanishing, &self.eta, &self.rainbow.status]
                .into_iter()
                .any(skipped_budget)
    }
}

fn is_budget(e: &Error) -> bool {
    matches!(e, Error::BudgetExceeded { .. } | Error::GuardExceeded { .. })
}

fn skipped(e: &Error) -> CheckStatus {
    CheckStatus::Skipped(e.to_string())
}

fn ms(start: Instant) -> f64 {
    // Millisecond precision keeps records short.
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn collapse_at(g: &Graph, d: usize, budgets: Budgets) -> (Collapsible, Option<CollapseCertificate>) {
    match is_d_collapsible(&noncover_complex(g), d, budgets.state) {
        Ok(Some(cert)) => (Collapsible::True, Some(cert)),
        Ok(None) => (Collapsible::False, None),
        Err(e) if is_budget(&e) => (Collapsible::BudgetExceeded, None),
        Err(e) => panic!("collapse search failed unexpectedly: {e}"),
    }
}

pub fn analyze(graph_id: String, g: &Graph, cfg: &PipelineConfig) -> VerificationRecord {
    let start = Instant::now();
    let mut notes = Vec::new();
    let ig = igamma(g).value;
    let has_edges = g.edge_count() > 0;
    let isolated = g.isolated_vertices();
    let na = || CheckStatus::Skipped("not applicable".into());

    if !has_edges {
        notes.push("no edges: the non-cover complex is the void complex".into());
    }
    if !isolated.is_empty() && has_edges {
        notes.push(format!(
            "isolated vertices {isolated}: iγ is infinite; the non-cover complex is a cone"
        ));
    }

    let mut record = VerificationRecord {
        graph_id,
        n: g.n(),
        edges: g.edge_count(),
        igamma: ig,
        bound: None,
        d_prec: None,
        mes_bound: na(),
        collapsible: Collapsible::NotApplicable,
        certificate: None,
        weak_bound: None,
        collapsible_at_weak_bound: Collapsible::NotApplicable,
        vanishing: na(),
        eta: na(),
        rainbow: RainbowSummary {
            systems: 0,
            found: 0,
            status: na(),
        },
        notes,
        timings: Timings::default(),
    };

    record.eta = match check_independence_connectivity(g, cfg.budgets.face) {
        Ok(r) => r.status,
        Err(e) => skipped(&e),
    };

    let collapse_start = Instant::now();
    match ig {
        DominationValue::Finite(value) if has_edges => {
            let bound = g.n() - value - 1;
            record.bound = Some(bound);
            match verify_mes_bound(g, cfg.budgets.face) {
                Ok(r) => {
                    record.d_prec = Some(r.d_prec);
                    record.mes_bound = CheckStatus::from_bool(r.passed);
                }
                Err(e) => record.mes_bound = skipped(&e),
            }
            let (c, cert) = collapse_at(g, bound, cfg.budgets);
            record.collapsible = c;
            record.certificate = cert;
        }
        _ if has_edges => {
            let weak = igamma_w(g).value.finite().expect("weak domination is finite");
            let bound = g.n() - weak - 1;
            record.weak_bound = Some(bound);
            let (c, cert) = collapse_at(g, bound, cfg.budgets);
            record.collapsible_at_weak_bound = c;
            record.certificate = cert;
        }
        _ => {
            record.collapsible = Collapsible::True;
            record.certificate = Some(CollapseCertificate::default());
        }
    }
    record.timings.collapse_ms = ms(collapse_start);

    let homology_start = Instant::now();
    if has_edges && isolated.is_empty() {
        let induced = g.n() <= cfg.induced_max_n;
        record.vanishing = match check_noncover_vanishing(g, induced, cfg.budgets.face) {
            Ok(r) => r.status,
            Err(e) => skipped(&e),
        };
    }
    record.timings.homology_ms = ms(homology_start);

    if has_edges && isolated.is_empty() && cfg.rainbow_samples > 0 {
        let mut rng = StdRng::seed_from_u64(cfg.seed);
        let systems = sample_cover_systems(g, cfg.rainbow_samples, &mut rng).expect("graph has edges");
        let found = systems
            .iter()
            .filter(|s| {
                check_rainbow_for_covers(s)
                    .map(|r| r.status.is_pass())
                    .unwrap_or(false)
            })
            .count();
        record.rainbow = RainbowSummary {
            systems: systems.len(),
            found,
            status: CheckStatus::from_bool(found == systems.len()),
        };
    }

    record.timings.total_ms = ms(start);
    record
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PipelineConfig {
        PipelineConfig {
            budgets: Budgets {
                face: 1 << 22,
                state: 1 << 20,
            },
            seed: 1,
            rainbow_samples: 5,
            induced_max_n: 6,
        }
    }

    #[test]
    fn cycle_record() {
        let r = analyze("c6".into(), &Graph::cycle(6), &cfg());
        assert_eq!(r.igamma, DominationValue::Finite(2));
        assert_eq!(r.bound, Some(3));
        assert!(r.d_prec.unwrap() <= 3);
        assert_eq!(r.collapsible, Collapsible::True);
        assert!(!r.contradiction() && !r.budget_exceeded());
        assert_eq!(r.rainbow.found, 5);
    }

    #[test]
    fn path_record() {
        let r = analyze("p3".into(), &Graph::path(3), &cfg());
        assert_eq!((r.bound, r.collapsible), (Some(1), Collapsible::True));
    }

    #[test]
    fn edgeless_record() {
        let r = analyze("e2".into(), &Graph::empty(2), &cfg());
        assert_eq!(r.igamma, DominationValue::Infinite);
        assert!(r.notes.iter().any(|n| n.contains("void complex")));
        assert!(!r.contradiction());
    }

    #[test]
    fn isolated_vertex_uses_weak_bound() {
        let g = Graph::cycle(6).disjoint_union(&Graph::empty(2));
        let r = analyze("g".into(), &g, &cfg());
        assert_eq!(r.igamma, DominationValue::Infinite);
        // n = 8, iγ_w = 4.
        assert_eq!(r.weak_bound, Some(3));
        assert_eq!(r.collapsible_at_weak_bound, Collapsible::True);
        assert!(matches!(r.eta, CheckStatus::Skipped(_)));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let mut c = cfg();
        c.budgets.state = 0;
        let r = analyze("c6".into(), &Graph::cycle(6), &c);
        assert_eq!(r.collapsible, Collapsible::BudgetExceeded);
        assert!(r.budget_exceeded() && !r.contradiction());
    }
}
