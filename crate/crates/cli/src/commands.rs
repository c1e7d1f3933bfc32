use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, Context};
use noncover::collapse::CollapseCertificate;
use noncover::graphs::{AllGraphs, DEFAULT_MAX_ENUMERATION_N};
use noncover::homology::{
    check_alexander_duality, check_independence_connectivity, check_noncover_vanishing, eta_of, reduced_betti,
    CheckStatus, HomologyProfile,
};
use noncover::rainbow::{
    check_rainbow_for_covers, check_rainbow_hypothesis, find_rainbow_cover, tightness_instance, CoverSystem,
    RainbowCover, SystemJson,
};
use noncover::{alexander_dual, igamma, independence_complex, noncover_complex, Error, Graph, SimplicialComplex};
use noncover::DominationValue;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::record::{analyze, Budgets, PipelineConfig, VerificationRecord};
use crate::{Cli, Command, RunConfig};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass = 0,
    Usage = 1,
    Contradiction = 2,
    BudgetExceeded = 3,
}

impl Outcome {
    /// Contradictions dominate budget overruns, which dominate passes.
    fn combine(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Contradiction, _) | (_, Contradiction) => Contradiction,
            (BudgetExceeded, _) | (_, BudgetExceeded) => BudgetExceeded,
            _ => self.max(other),
        }
    }

    fn of_status(status: &CheckStatus) -> Outcome {
        if status.is_fail() {
            Outcome::Contradiction
        } else {
            Outcome::Pass
        }
    }

    fn of_record(r: &VerificationRecord) -> Outcome {
        if r.contradiction() {
            Outcome::Contradiction
        } else if r.budget_exceeded() {
            Outcome::BudgetExceeded
        } else {
            Outcome::Pass
        }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Analyze { path, rainbow_samples } => {
            let g = load_graph(path, cfg)?;
            let record = analyze(graph_id(path), &g, &pipeline(cfg, *rainbow_samples, usize::MAX));
            emit(cfg, &record)?;
            Ok(Outcome::of_record(&record))
        }
        Command::Sweep {
            n,
            isolated_free,
            connected,
            rainbow_samples,
            induced_max_n,
        } => sweep(cfg, *n, *isolated_free, *connected, &pipeline(cfg, *rainbow_samples, *induced_max_n)),
        Command::VerifyCert { complex, certificate, d } => verify_cert(cfg, complex, certificate, *d),
        Command::Rainbow { system } => rainbow(cfg, system),
        Command::Tightness { k, copies } => tightness(cfg, *k, *copies),
        Command::DualCheck { path } => dual_check(cfg, path),
        Command::Homology { path } => homology(cfg, path),
    }
}

fn pipeline(cfg: &RunConfig, rainbow_samples: usize, induced_max_n: usize) -> PipelineConfig {
    PipelineConfig {
        budgets: Budgets {
            face: cfg.face_budget,
            state: cfg.state_budget,
        },
        seed: cfg.seed,
        rainbow_samples,
        induced_max_n,
    }
}

fn graph_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path, cfg: &RunConfig) -> anyhow::Result<Graph> {
    let g = Graph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if g.n() as u64 > cfg.max_n {
        bail!("{}: {} vertices exceeds --max-n {}", path.display(), g.n(), cfg.max_n);
    }
    Ok(g)
}

enum Input {
    Complex(SimplicialComplex),
    Graph(Graph),
}

/// Complex JSON if the file starts with `{`, an edge list otherwise.
fn load_input(path: &Path, cfg: &RunConfig) -> anyhow::Result<Input> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let x: SimplicialComplex =
            serde_json::from_str(&text).with_context(|| format!("parsing complex {}", path.display()))?;
        if x.ground_n() as u64 > cfg.max_n {
            bail!("{}: ground set {} exceeds --max-n {}", path.display(), x.ground_n(), cfg.max_n);
        }
        Ok(Input::Complex(x))
    } else {
        load_graph(path, cfg).map(Input::Graph)
    }
}

/// Writes `value` as one appended JSON line to `--out`, or pretty-printed to
/// stdout.
fn emit<T: Serialize>(cfg: &RunConfig, value: &T) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            writeln!(file, "{}", serde_json::to_string(value)?)?;
        }
        None => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

/// Budget and guard errors become [`Outcome::BudgetExceeded`]; anything else
/// is propagated.
fn budgeted<T>(result: noncover::Result<T>) -> anyhow::Result<Result<T, Outcome>> {
    match result {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (Error::BudgetExceeded { .. } | Error::GuardExceeded { .. })) => {
            eprintln!("budget exceeded: {e}");
            Ok(Err(Outcome::BudgetExceeded))
        }
        Err(e) => Err(e.into()),
    }
}

const SWEEP_CHUNK: usize = 4096;

fn sweep(cfg: &RunConfig, n: usize, isolated_free: bool, connected: bool, pc: &PipelineConfig) -> anyhow::Result<Outcome> {
    let guard = (cfg.max_n as usize).min(DEFAULT_MAX_ENUMERATION_N);
    let mut graphs = AllGraphs::new(n, guard)?;
    if isolated_free {
        graphs = graphs.isolated_free();
    }
    let width = ((n * n.saturating_sub(1) / 2) as f64 * 2f64.log10()).ceil().max(1.0) as usize;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()?;

    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(io::BufWriter::new(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };

    let mut graphs = graphs.filter(|(_, g)| !connected || g.is_connected()).peekable();
    let (mut total, mut contradictions, mut overruns) = (0usize, 0usize, 0usize);
    while graphs.peek().is_some() {
        let chunk: Vec<(u64, Graph)> = graphs.by_ref().take(SWEEP_CHUNK).collect();
        // `collect` on an indexed parallel iterator keeps input order.
        let records: Vec<VerificationRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(mask, g)| analyze(format!("n{n}-g{mask:0width$}"), g, pc))
                .collect()
        });
        for r in &records {
            writeln!(sink, "{}", serde_json::to_string(r)?)?;
            match Outcome::of_record(r) {
                Outcome::Contradiction => {
                    contradictions += 1;
                    eprintln!("CONTRADICTION: {} violates a proven statement", r.graph_id);
                }
                Outcome::BudgetExceeded => overruns += 1,
                _ => {}
            }
        }
        total += records.len();
    }
    sink.flush()?;
    eprintln!("sweep n={n}: {total} graphs, {contradictions} contradictions, {overruns} budget overruns");
    Ok(if contradictions > 0 {
        Outcome::Contradiction
    } else if overruns > 0 {
        Outcome::BudgetExceeded
    } else {
        Outcome::Pass
    })
}

fn verify_cert(cfg: &RunConfig, complex: &Path, certificate: &Path, d: Option<usize>) -> anyhow::Result<Outcome> {
    let x: SimplicialComplex =
        serde_json::from_str(&read(complex)?).with_context(|| format!("parsing complex {}", complex.display()))?;
    let cert: CollapseCertificate = serde_json::from_str(&read(certificate)?)
        .with_context(|| format!("parsing certificate {}", certificate.display()))?;
    let bound = d.unwrap_or(usize::MAX);
    let (valid, error) = match cert.replay(&x, bound) {
        Ok(_) => (true, Value::Null),
        Err(Error::InvalidCertificate { step, reason }) => {
            eprintln!("invalid certificate at step {step}: {reason}");
            (false, json!({ "step": step, "reason": reason }))
        }
        Err(e) => return Err(e.into()),
    };
    emit(
        cfg,
        &json!({
            "valid": valid,
            "steps": cert.steps.len(),
            "max_d_used": cert.max_d_used(),
            "d": d,
            "error": error,
        }),
    )?;
    if valid {
        Ok(Outcome::Pass)
    } else {
        bail!("certificate rejected")
    }
}

fn load_system(path: &Path, cfg: &RunConfig) -> anyhow::Result<CoverSystem> {
    let json: SystemJson =
        serde_json::from_str(&read(path)?).with_context(|| format!("parsing system {}", path.display()))?;
    let graph_path = path.parent().unwrap_or(Path::new(".")).join(&json.graph);
    let g = load_graph(&graph_path, cfg)?;
    let covers = json.covers.iter().map(|w| w.iter().collect()).collect();
    Ok(CoverSystem::new(g, covers)?)
}

fn rainbow(cfg: &RunConfig, path: &Path) -> anyhow::Result<Outcome> {
    let sys = load_system(path, cfg)?;
    let ig = igamma(&sys.graph).value;
    let expected = ig.finite().map(|v| sys.graph.n() - v);
    // A proven statement applies only to families of exactly n - iγ sets.
    let (statement, status) = if expected != Some(sys.covers.len()) {
        ("none", CheckStatus::Skipped(format!("family size is not n - iγ = {expected:?}")))
    } else if sys.all_covers() {
        ("covers", check_rainbow_for_covers(&sys)?.status)
    } else {
        match budgeted(check_rainbow_hypothesis(&sys))? {
            Ok(report) => ("hypothesis", report.status),
            Err(outcome) => return Ok(outcome),
        }
    };
    let found: Option<RainbowCover> = find_rainbow_cover(&sys);
    emit(
        cfg,
        &json!({
            "graph_id": graph_id(path),
            "n": sys.graph.n(),
            "igamma": ig,
            "family_len": sys.covers.len(),
            "rainbow": found,
            "statement": statement,
            "status": status,
        }),
    )?;
    Ok(Outcome::of_status(&status))
}

fn tightness(cfg: &RunConfig, k: usize, copies: Option<usize>) -> anyhow::Result<Outcome> {
    let base = tightness_instance(k)?;
    let copies = copies.unwrap_or(2 * k - 1);
    let m = base.covers[0];
    let sys = CoverSystem::new(base.graph, vec![m; copies])?;
    let found = find_rainbow_cover(&sys);
    // The only cover inside M is M itself, which needs all 2k copies.
    let expected_found = copies >= 2 * k;
    let status = CheckStatus::from_bool(found.is_some() == expected_found);
    emit(
        cfg,
        &json!({
            "k": k,
            "n": sys.graph.n(),
            "igamma": igamma(&sys.graph).value,
            "matching_cover": m,
            "copies": copies,
            "rainbow": found,
            "absent": found.is_none(),
            "status": status,
        }),
    )?;
    Ok(Outcome::of_status(&status))
}

fn dual_check(cfg: &RunConfig, path: &Path) -> anyhow::Result<Outcome> {
    let (x, noncover) = match load_input(path, cfg)? {
        Input::Complex(x) => (x, None),
        Input::Graph(g) => (independence_complex(&g), Some(noncover_complex(&g))),
    };
    let report = match budgeted(check_alexander_duality(&x, cfg.face_budget))? {
        Ok(r) => r,
        Err(outcome) => return Ok(outcome),
    };
    let mut outcome = Outcome::of_status(&report.status);
    let mut value = serde_json::to_value(&report)?;
    if let Some(nc) = noncover {
        let matches = alexander_dual(&x)? == nc;
        value["dual_is_noncover"] = json!(matches);
        if !matches {
            outcome = Outcome::Contradiction;
        }
    }
    emit(cfg, &value)?;
    Ok(outcome)
}

fn profile_json(p: &HomologyProfile) -> Value {
    json!({
        "betti": p.betti,
        "eta": eta_of(p),
        "euler_characteristic": p.euler_characteristic(),
    })
}

fn homology(cfg: &RunConfig, path: &Path) -> anyhow::Result<Outcome> {
    match load_input(path, cfg)? {
        Input::Complex(x) => {
            let p = match budgeted(reduced_betti(&x, cfg.face_budget))? {
                Ok(p) => p,
                Err(outcome) => return Ok(outcome),
            };
            emit(cfg, &profile_json(&p))?;
            Ok(Outcome::Pass)
        }
        Input::Graph(g) => {
            let budget = cfg.face_budget;
            let nc = match budgeted(reduced_betti(&noncover_complex(&g), budget))? {
                Ok(p) => p,
                Err(outcome) => return Ok(outcome),
            };
            let ind = match budgeted(reduced_betti(&independence_complex(&g), budget))? {
                Ok(p) => p,
                Err(outcome) => return Ok(outcome),
            };
            let ig = igamma(&g).value;
            let applicable = g.edge_count() > 0 && ig != DominationValue::Infinite;
            let (vanishing, connectivity) = if applicable {
                let v = match budgeted(check_noncover_vanishing(&g, false, budget))? {
                    Ok(r) => r.status,
                    Err(outcome) => return Ok(outcome),
                };
                let c = match budgeted(check_independence_connectivity(&g, budget))? {
                    Ok(r) => r.status,
                    Err(outcome) => return Ok(outcome),
                };
                (v, c)
            } else {
                let na = CheckStatus::Skipped("needs edges and no isolated vertices".into());
                (na.clone(), na)
            };
            let outcome = Outcome::of_status(&vanishing).combine(Outcome::of_status(&connectivity));
            emit(
                cfg,
                &json!({
                    "graph_id": graph_id(path),
                    "n": g.n(),
                    "igamma": ig,
                    "noncover": profile_json(&nc),
                    "independence": profile_json(&ind),
                    "vanishing": vanishing,
                    "connectivity": connectivity,
                    "isolated": g.isolated_vertices(),
                }),
            )?;
            Ok(outcome)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_precedence() {
        use Outcome::*;
        assert_eq!(Pass.combine(BudgetExceeded), BudgetExceeded);
        assert_eq!(BudgetExceeded.combine(Contradiction), Contradiction);
        assert_eq!(Pass.combine(Pass), Pass);
        assert_eq!(Usage.combine(Pass), Usage);
    }

    #[test]
    fn graph_id_is_file_stem() {
        assert_eq!(graph_id(Path::new("/tmp/c6.txt")), "c6");
    }
}
