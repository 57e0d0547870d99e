//! The four user-facing operations, independent of argument parsing.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use dcsf_core::advisor::{
    max_spread_metric, spacing_metric, Advisor, AdvisorMode, FallbackAdvisor, LlmAdvisor, StaticAdvisor,
};
use dcsf_core::indicators::{front_hypervolume, knee_point, Normalization};
use dcsf_core::scenario::nearest_uav;
use dcsf_core::solver::{run, RunMode};
use dcsf_core::{Individual, ObjectiveTriple, Position3, Scenario};
use serde::{Deserialize, Serialize};

use crate::artifacts::{self, history_csv, params_csv, write_text, ResolvedConfig, RunDir, RunReport};
use crate::endpoint::{HttpEndpoint, URL_VAR};
use crate::error::{CliError, Result};
use crate::files::{
    load_config, load_scenario, load_similarity, read_json, save_scenario, RunConfig, ScenarioSpec,
};

/// Writes a generated scenario and returns a one-line summary.
pub fn cmd_generate(spec: &ScenarioSpec, out: &Path) -> Result<String> {
    let s = spec.generate()?;
    save_scenario(out, &s)?;
    let b = s.bounds();
    Ok(format!(
        "{}: {} users over {}x{} m, {} UAVs at {}-{} m, BS at ({}, {}, {}), seed {}",
        out.display(),
        s.n_users(),
        b.x_max - b.x_min,
        b.y_max - b.y_min,
        s.n_uavs(),
        b.z_min,
        b.z_max,
        s.bs_pos().x,
        s.bs_pos().y,
        s.bs_pos().z,
        s.seed()
    ))
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Scenario file; the default generated scenario when absent.
    pub scenario: Option<PathBuf>,
    pub config: Option<PathBuf>,
    pub similarity: Option<PathBuf>,
    pub mode: RunMode,
    pub advisor: AdvisorMode,
    pub seed: Option<u64>,
    pub population: Option<usize>,
    pub ao_iterations: Option<usize>,
    pub local_generations: Option<usize>,
    pub model: Option<String>,
    pub out: PathBuf,
}

impl SolveOptions {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            scenario: None,
            config: None,
            similarity: None,
            mode: RunMode::LlmAoa,
            advisor: AdvisorMode::Llm,
            seed: None,
            population: None,
            ao_iterations: None,
            local_generations: None,
            model: None,
            out: out.into(),
        }
    }

    fn resolve(&self) -> Result<(Scenario, RunConfig)> {
        let scenario = match &self.scenario {
            Some(path) => load_scenario(path)?,
            None => ScenarioSpec::default().generate()?,
        };
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        if let Some(path) = &self.similarity {
            cfg.params.similarity = load_similarity(path)?;
        }
        let solver = &mut cfg.solver;
        solver.advisor_mode = self.advisor;
        if let Some(seed) = self.seed {
            solver.seed = seed;
        }
        if let Some(m) = self.population {
            solver.population_size = m;
        }
        if let Some(t) = self.ao_iterations {
            solver.ao_iterations = t;
        }
        if let Some(t) = self.local_generations {
            solver.local_generations = t;
        }
        if let Some(model) = &self.model {
            solver.model.clone_from(model);
        }
        cfg.params.validate()?;
        cfg.solver.validate()?;
        Ok((scenario, cfg))
    }
}

enum Chosen {
    Static(StaticAdvisor),
    Fallback(FallbackAdvisor),
    Llm(LlmAdvisor<HttpEndpoint>),
}

impl Chosen {
    fn pick(mode: RunMode, wanted: AdvisorMode, model: &str) -> Self {
        if mode != RunMode::LlmAoa {
            return Self::Static(StaticAdvisor);
        }
        match wanted {
            AdvisorMode::Static => Self::Static(StaticAdvisor),
            AdvisorMode::Fallback => Self::Fallback(FallbackAdvisor),
            AdvisorMode::Llm => match HttpEndpoint::from_env() {
                Some(endpoint) => Self::Llm(LlmAdvisor::new(endpoint, model)),
                None => {
                    eprintln!("warning: {URL_VAR} is not set; using the fallback advisor");
                    Self::Fallback(FallbackAdvisor)
                }
            },
        }
    }

    fn mode(&self) -> AdvisorMode {
        match self {
            Self::Static(_) => AdvisorMode::Static,
            Self::Fallback(_) => AdvisorMode::Fallback,
            Self::Llm(_) => AdvisorMode::Llm,
        }
    }

    fn as_dyn(&mut self) -> &mut dyn Advisor {
        match self {
            Self::Static(a) => a,
            Self::Fallback(a) => a,
            Self::Llm(a) => a,
        }
    }
}

fn mode_name(mode: RunMode) -> &'static str {
    match mode {
        RunMode::LlmAoa => "llm-aoa",
        RunMode::Aoa => "aoa",
        RunMode::MonolithicNsga2 => "monolithic-nsga2",
    }
}

fn advisor_name(mode: AdvisorMode) -> &'static str {
    match mode {
        AdvisorMode::Llm => "llm",
        AdvisorMode::Fallback => "fallback",
        AdvisorMode::Static => "static",
    }
}

/// Runs the solver and writes the artifact directory.
pub fn cmd_solve(opts: &SolveOptions) -> Result<RunReport> {
    let (scenario, cfg) = opts.resolve()?;
    let mut advisor = Chosen::pick(opts.mode, opts.advisor, &cfg.solver.model);
    let started = Instant::now();
    let outcome = run(opts.mode, &scenario, &cfg.params, &cfg.solver, advisor.as_dyn())?;
    let wall_time_s = started.elapsed().as_secs_f64();

    fs::create_dir_all(&opts.out).map_err(|e| CliError::write(&opts.out, e))?;
    let dir = opts.out.as_path();
    let front = outcome.final_front();
    let objectives: Vec<ObjectiveTriple> = front.iter().map(|i| *i.fitness()).collect();
    let knee = knee_point(&objectives);

    let mut artifacts = vec![
        artifacts::save(
            dir,
            artifacts::CONFIG,
            &ResolvedConfig {
                mode: opts.mode,
                advisor: advisor.mode(),
                config: cfg.clone(),
            },
        )?,
        {
            save_scenario(&dir.join(artifacts::SCENARIO), &scenario)?;
            PathBuf::from(artifacts::SCENARIO)
        },
    ];
    write_text(&dir.join(artifacts::HISTORY), &history_csv(&outcome.history)?)?;
    write_text(&dir.join(artifacts::PARAMS), &params_csv(&outcome.params)?)?;
    artifacts.extend([
        PathBuf::from(artifacts::HISTORY),
        PathBuf::from(artifacts::PARAMS),
    ]);
    artifacts.push(artifacts::save(dir, artifacts::PARETO, &front)?);
    if let Some(k) = knee {
        artifacts.push(artifacts::save(dir, artifacts::DEPLOYMENT, &front[k])?);
    }
    artifacts.push(PathBuf::from(artifacts::REPORT));

    let llm_calls = match &advisor {
        Chosen::Llm(a) => Some((a.llm_answers, a.fallbacks)),
        _ => None,
    };
    let report = RunReport {
        run_id: format!(
            "{}-{}-seed{}",
            mode_name(opts.mode),
            advisor_name(advisor.mode()),
            cfg.solver.seed
        ),
        mode: opts.mode,
        advisor: advisor.mode(),
        seed: cfg.solver.seed,
        wall_time_s,
        front_size: front.len(),
        knee: knee.map(|k| objectives[k]),
        hypervolume: front_hypervolume(&objectives, &outcome.normalization),
        hv_reference: RunReport::reference(),
        normalization: outcome.normalization,
        llm_calls,
        artifacts,
    };
    artifacts::save(dir, artifacts::REPORT, &report)?;
    Ok(report)
}

/// One row of a comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub run: String,
    pub dir: PathBuf,
    pub mode: RunMode,
    pub advisor: AdvisorMode,
    pub seed: u64,
    pub front_size: usize,
    pub knee: Option<ObjectiveTriple>,
    pub hypervolume: f64,
    pub sp: f64,
    pub m3: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub rows: Vec<CompareRow>,
    /// `ratios[i][j]` = hypervolume of run `i` over that of run `j`.
    pub ratios: Vec<Vec<f64>>,
    /// Shared normalization of every compared front.
    pub normalization: Option<Normalization>,
    /// When the runs form exactly two configurations, per-seed hypervolume
    /// ratios of the first over the second and their median.
    pub paired: Option<PairedSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairedSummary {
    pub numerator: String,
    pub denominator: String,
    pub ratios: Vec<(u64, f64)>,
    pub wins: usize,
    pub median_ratio: f64,
}

fn ratio(a: f64, b: f64) -> f64 {
    match (a == 0.0, b == 0.0) {
        (true, true) => 1.0,
        (false, true) => f64::INFINITY,
        _ => a / b,
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

fn config_label(r: &CompareRow) -> String {
    format!("{}/{}", mode_name(r.mode), advisor_name(r.advisor))
}

fn paired(rows: &[CompareRow]) -> Option<PairedSummary> {
    let mut labels: Vec<String> = Vec::new();
    for r in rows {
        let l = config_label(r);
        if !labels.contains(&l) {
            labels.push(l);
        }
    }
    let [num, den] = <[String; 2]>::try_from(labels).ok()?;
    let mut ratios = Vec::new();
    for a in rows.iter().filter(|r| config_label(r) == num) {
        if let Some(b) = rows.iter().find(|r| config_label(r) == den && r.seed == a.seed) {
            ratios.push((a.seed, ratio(a.hypervolume, b.hypervolume)));
        }
    }
    if ratios.is_empty() {
        return None;
    }
    let wins = ratios.iter().filter(|r| r.1 >= 1.0).count();
    let median_ratio = median(&mut ratios.iter().map(|r| r.1).collect::<Vec<_>>());
    Some(PairedSummary {
        numerator: num,
        denominator: den,
        ratios,
        wins,
        median_ratio,
    })
}

/// Compares finished runs on a common normalization of all their fronts.
pub fn compare_runs(dirs: &[PathBuf]) -> Result<Comparison> {
    if dirs.is_empty() {
        return Err(CliError::Input("nothing to compare".into()));
    }
    let runs = dirs.iter().map(|d| RunDir::open(d)).collect::<Result<Vec<_>>>()?;
    let fronts: Vec<Vec<ObjectiveTriple>> = runs.iter().map(RunDir::objectives).collect();
    let normalization = Normalization::from_points(fronts.iter().flatten());
    let rows: Vec<CompareRow> = runs
        .iter()
        .zip(&fronts)
        .map(|(r, f)| CompareRow {
            run: r.report.run_id.clone(),
            dir: r.dir.clone(),
            mode: r.report.mode,
            advisor: r.report.advisor,
            seed: r.report.seed,
            front_size: f.len(),
            knee: knee_point(f).map(|k| f[k]),
            hypervolume: normalization.as_ref().map_or(0.0, |n| front_hypervolume(f, n)),
            sp: spacing_metric(f),
            m3: max_spread_metric(f),
        })
        .collect();
    let ratios = rows
        .iter()
        .map(|a| rows.iter().map(|b| ratio(a.hypervolume, b.hypervolume)).collect())
        .collect();
    let paired = paired(&rows);
    Ok(Comparison {
        rows,
        ratios,
        normalization,
        paired,
    })
}

impl Comparison {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = [
            "run",
            "dir",
            "mode",
            "advisor",
            "seed",
            "front_size",
            "knee_f1",
            "knee_f2",
            "knee_f3",
        ]
        .into_iter()
        .chain(["hypervolume", "sp", "m3"])
        .map(String::from)
        .collect();
        header.extend((0..self.rows.len()).map(|j| format!("hv_ratio_{j}")));
        let fail = |e: csv::Error| CliError::Runtime(e.to_string());
        w.write_record(&header).map_err(fail)?;
        for (r, ratios) in self.rows.iter().zip(&self.ratios) {
            let knee = |f: fn(&ObjectiveTriple) -> f64| {
                r.knee.as_ref().map(f).map_or(String::new(), |v| v.to_string())
            };
            let mut record = vec![
                r.run.clone(),
                r.dir.display().to_string(),
                mode_name(r.mode).into(),
                advisor_name(r.advisor).into(),
                r.seed.to_string(),
                r.front_size.to_string(),
                knee(|k| k.f1),
                knee(|k| k.f2),
                knee(|k| k.f3),
                r.hypervolume.to_string(),
                r.sp.to_string(),
                r.m3.to_string(),
            ];
            record.extend(ratios.iter().map(f64::to_string));
            w.write_record(&record).map_err(fail)?;
        }
        artifacts::finish_csv(w)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{:<4} {:<36} {:>6} {:>12} {:>12} {:>12} {:>10} {:>8} {:>8}\n",
            "#", "run", "front", "knee f1", "knee f2", "knee f3", "HV", "SP", "M3*"
        );
        for (i, r) in self.rows.iter().enumerate() {
            let k = r
                .knee
                .unwrap_or(ObjectiveTriple::new(f64::NAN, f64::NAN, f64::NAN));
            let _ = writeln!(
                out,
                "{:<4} {:<36} {:>6} {:>12.4e} {:>12.4e} {:>12.4e} {:>10.5} {:>8.4} {:>8.4}",
                i, r.run, r.front_size, k.f1, k.f2, k.f3, r.hypervolume, r.sp, r.m3
            );
        }
        out.push_str("\nhypervolume ratios (row / column)\n     ");
        for j in 0..self.rows.len() {
            let _ = write!(out, "{j:>9}");
        }
        out.push('\n');
        for (i, row) in self.ratios.iter().enumerate() {
            let _ = write!(out, "{i:<5}");
            for v in row {
                let _ = write!(out, "{v:>9.4}");
            }
            out.push('\n');
        }
        if let Some(p) = &self.paired {
            let _ = writeln!(
                out,
                "\n{} vs {}: {} of {} seeds at least as good, median ratio {:.4}",
                p.numerator,
                p.denominator,
                p.wins,
                p.ratios.len(),
                p.median_ratio
            );
        }
        out
    }
}

/// Prints the comparison and optionally writes it as CSV.
pub fn cmd_compare(dirs: &[PathBuf], csv: Option<&Path>) -> Result<Comparison> {
    let cmp = compare_runs(dirs)?;
    if let Some(path) = csv {
        write_text(path, &cmp.to_csv()?)?;
    }
    Ok(cmp)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UserRow {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub uav: usize,
    pub cluster: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UavRow {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub weight: f64,
    pub cluster: usize,
    pub cluster_size: usize,
    /// Not part of any multi-UAV array.
    pub independent: bool,
    pub users_served: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeploymentPlot {
    pub bs: Position3,
    pub objectives: Option<ObjectiveTriple>,
    pub users: Vec<UserRow>,
    pub uavs: Vec<UavRow>,
}

/// Per-user and per-UAV rows for the knee deployment of a run. Cluster
/// labels are 1-based.
pub fn deployment_plot(scenario: &Scenario, knee: &Individual) -> DeploymentPlot {
    let clusters = knee.assignment.clusters();
    let serving: Vec<usize> = scenario
        .users()
        .iter()
        .map(|u| nearest_uav(&u.pos, &knee.positions))
        .collect();
    let users = scenario
        .users()
        .iter()
        .zip(&serving)
        .map(|(u, &v)| UserRow {
            id: u.id,
            x: u.pos.x,
            y: u.pos.y,
            uav: v,
            cluster: knee.assignment.label(v) + 1,
        })
        .collect();
    let uavs = knee
        .positions
        .iter()
        .enumerate()
        .map(|(v, q)| {
            let c = knee.assignment.label(v);
            UavRow {
                id: v,
                x: q.x,
                y: q.y,
                z: q.z,
                weight: knee.weights[v],
                cluster: c + 1,
                cluster_size: clusters[c].len(),
                independent: clusters[c].len() == 1,
                users_served: serving.iter().filter(|&&s| s == v).count(),
            }
        })
        .collect();
    DeploymentPlot {
        bs: scenario.bs_pos(),
        objectives: knee.objectives,
        users,
        uavs,
    }
}

impl DeploymentPlot {
    /// One CSV with a `kind` column distinguishing user and UAV rows.
    pub fn to_csv(&self) -> Result<String> {
        let users = self.users.iter().map(|u| PlotRow {
            kind: "user",
            id: u.id,
            x: u.x,
            y: u.y,
            z: 0.0,
            uav: u.uav,
            cluster: u.cluster,
            cluster_size: None,
            independent: None,
            weight: None,
        });
        let uavs = self.uavs.iter().map(|v| PlotRow {
            kind: "uav",
            id: v.id,
            x: v.x,
            y: v.y,
            z: v.z,
            uav: v.id,
            cluster: v.cluster,
            cluster_size: Some(v.cluster_size),
            independent: Some(v.independent),
            weight: Some(v.weight),
        });
        artifacts::csv_text(&users.chain(uavs).collect::<Vec<_>>())
    }
}

#[derive(Serialize)]
struct PlotRow {
    kind: &'static str,
    id: usize,
    x: f64,
    y: f64,
    z: f64,
    uav: usize,
    cluster: usize,
    cluster_size: Option<usize>,
    independent: Option<bool>,
    weight: Option<f64>,
}

pub const PLOT_JSON: &str = "deployment_plot.json";
pub const PLOT_CSV: &str = "deployment_plot.csv";

/// Writes `deployment_plot.json` and `.csv` for a run into `out` (the run
/// directory by default) and returns their paths.
pub fn cmd_export_deployment(run_dir: &Path, out: Option<&Path>) -> Result<(PathBuf, PathBuf)> {
    if !run_dir.is_dir() {
        return Err(CliError::Input(format!(
            "{} is not a run directory",
            run_dir.display()
        )));
    }
    let knee_path = run_dir.join(artifacts::DEPLOYMENT);
    if !knee_path.exists() {
        return Err(CliError::Runtime(format!(
            "{} has no feasible deployment to export",
            run_dir.display()
        )));
    }
    let scenario = load_scenario(&run_dir.join(artifacts::SCENARIO))?;
    let knee: Individual = read_json(&knee_path)?;
    knee.check_shape()?;
    if knee.positions.len() != scenario.n_uavs() {
        return Err(CliError::Input(
            "deployment does not match the run's scenario".into(),
        ));
    }
    let plot = deployment_plot(&scenario, &knee);
    let dir = out.unwrap_or(run_dir);
    fs::create_dir_all(dir).map_err(|e| CliError::write(dir, e))?;
    let json = dir.join(PLOT_JSON);
    let csv = dir.join(PLOT_CSV);
    crate::files::write_json(&json, &plot)?;
    write_text(&csv, &plot.to_csv()?)?;
    Ok((json, csv))
}
