use std::path::Path;

use amalgam_core::amalgam::{ball_norm, default_mesh, partition_norm_result, AmalgamResult, Form, ESS_SUP_NOTE};
use amalgam_core::counterexample::{counterexample_report, fractional_bound_constant};
use amalgam_core::exponent::Exponent;
use amalgam_core::fracmean::{fractional_norm_ball, fractional_norm_partition, ExponentTriple, RadiusGrid};
use amalgam_core::group::{GroupDescriptor, GroupKind};
use amalgam_core::partition::{n_pi_bound, UniformPartition};
use amalgam_core::simplefn::{FunctionSpec, SimpleFunction};
use amalgam_core::verify::{criterion_summary, report, run_suite, InequalityCase, SuiteConfig};
use serde::Serialize;

use crate::args::{Command, FormArg};
use crate::output::{table, timestamp, Num, Outcome};
use crate::CliError;

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Norm { function, form, q, p, r, mesh } => norm(function, *form, *q, *p, *r, *mesh),
        Command::Lorentz { function, q, p } => lorentz(function, *q, *p),
        Command::Fracnorm { function, form, q, p, alpha, r_min, r_max, steps, mesh } => {
            let f = load_function(function)?;
            let mut grid = RadiusGrid::default_for(&f);
            grid.r_min = r_min.unwrap_or(grid.r_min);
            grid.r_max = r_max.unwrap_or(grid.r_max);
            grid.steps_per_octave = steps.unwrap_or(grid.steps_per_octave);
            let grid = RadiusGrid::new(grid.r_min, grid.r_max, grid.steps_per_octave)?;
            fracnorm(&f, *form, ExponentTriple::new(*q, *p, *alpha), &grid, *mesh)
        }
        Command::PartitionInfo { group, r, samples, seed } => partition_info(*group, *r, *samples, *seed),
        Command::Counterexample { q, p, alpha, levels } => counterexample(*q, *p, *alpha, *levels),
        Command::Verify { config, seed, only } => verify(config.as_deref(), *seed, only),
    }
}

fn load_function(path: &Path) -> Result<SimpleFunction, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    Ok(FunctionSpec::from_json(&text)?.build()?)
}

fn mesh_for(f: &SimpleFunction, mesh: Option<f64>) -> f64 {
    mesh.unwrap_or_else(|| default_mesh(f.group().kind))
}

#[derive(Serialize)]
struct NormReport {
    command: &'static str,
    timestamp: String,
    group: &'static str,
    form: String,
    q: Exponent,
    p: Exponent,
    r: Num,
    method: &'static str,
    mesh: Option<Num>,
    value: Num,
    notes: Vec<String>,
}

fn norm(path: &Path, form: FormArg, q: Exponent, p: Exponent, r: f64, mesh: Option<f64>) -> Result<Outcome, CliError> {
    let f = load_function(path)?;
    let res: AmalgamResult = match form {
        FormArg::Partition => partition_norm_result(&f, &UniformPartition::global(f.group(), r)?, q, p)?,
        FormArg::Ball => ball_norm(&f, r, q, p, mesh_for(&f, mesh))?,
    };
    let rep = NormReport {
        command: "norm",
        timestamp: timestamp(),
        group: f.group().name(),
        form: res.form.to_string(),
        q,
        p,
        r: Num(r),
        method: res.method.name(),
        mesh: res.method.mesh().map(Num),
        value: Num(res.value),
        notes: if res.form == Form::Ball && p.is_infinite() { vec![ESS_SUP_NOTE.to_string()] } else { Vec::new() },
    };
    let row = vec![
        rep.group.to_string(),
        rep.form.clone(),
        q.to_string(),
        p.to_string(),
        rep.r.to_string(),
        rep.method.to_string(),
        rep.mesh.map(|m| m.to_string()).unwrap_or_default(),
        rep.value.to_string(),
    ];
    let csv = table(&["group", "form", "q", "p", "r", "method", "mesh", "value"], &[row])?;
    Outcome::new(&rep, csv)
}

#[derive(Serialize)]
struct LorentzReport {
    command: &'static str,
    timestamp: String,
    group: &'static str,
    q: Exponent,
    p: Exponent,
    value: Num,
}

fn lorentz(path: &Path, q: Exponent, p: Exponent) -> Result<Outcome, CliError> {
    let f = load_function(path)?;
    let value = f.lorentz_norm(q, p)?;
    let rep = LorentzReport { command: "lorentz", timestamp: timestamp(), group: f.group().name(), q, p, value: Num(value) };
    let row = vec![rep.group.to_string(), q.to_string(), p.to_string(), rep.value.to_string()];
    Outcome::new(&rep, table(&["group", "q", "p", "value"], &[row])?)
}

#[derive(Serialize)]
struct ProfilePoint {
    r: Num,
    weighted: Num,
}

#[derive(Serialize)]
struct FracReport {
    command: &'static str,
    timestamp: String,
    group: &'static str,
    form: String,
    q: Exponent,
    p: Exponent,
    alpha: Exponent,
    classification: &'static str,
    r_min: Num,
    r_max: Num,
    steps_per_octave: u32,
    value: Num,
    argmax_r: Num,
    divergent: bool,
    notes: Vec<String>,
    profile: Vec<ProfilePoint>,
}

fn fracnorm(
    f: &SimpleFunction,
    form: FormArg,
    t: ExponentTriple,
    grid: &RadiusGrid,
    mesh: Option<f64>,
) -> Result<Outcome, CliError> {
    let res = match form {
        FormArg::Partition => fractional_norm_partition(f, &t, grid)?,
        FormArg::Ball => fractional_norm_ball(f, &t, grid, mesh_for(f, mesh))?,
    };
    let rep = FracReport {
        command: "fracnorm",
        timestamp: timestamp(),
        group: f.group().name(),
        form: res.form.to_string(),
        q: t.q,
        p: t.p,
        alpha: t.alpha,
        classification: res.classification.name(),
        r_min: Num(grid.r_min),
        r_max: Num(grid.r_max),
        steps_per_octave: grid.steps_per_octave,
        value: Num(res.value),
        argmax_r: Num(res.argmax_r),
        divergent: res.divergent,
        notes: res.notes.clone(),
        profile: res.profile.iter().map(|&(r, v)| ProfilePoint { r: Num(r), weighted: Num(v) }).collect(),
    };
    let rows: Vec<Vec<String>> = rep.profile.iter().map(|pt| vec![pt.r.to_string(), pt.weighted.to_string()]).collect();
    Outcome::new(&rep, table(&["r", "weighted"], &rows)?)
}

#[derive(Serialize)]
struct Validation {
    valid: bool,
    cells_checked: usize,
    probes: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct PartitionReport {
    command: &'static str,
    timestamp: String,
    group: &'static str,
    rho: Num,
    gamma: Num,
    r: Num,
    u_radius: Num,
    v_radius: Num,
    tile_lo: Vec<Num>,
    tile_hi: Vec<Num>,
    cell_measure: Num,
    /// `λ(B(e, r/2γ))`, which bounds every cell measure.
    cell_measure_bound: Num,
    /// `n_π(K, L)` with `K = V` and `L = B(e, r)`.
    n_pi_bound: Num,
    validation: Validation,
}

fn partition_info(kind: GroupKind, r: f64, samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let g = GroupDescriptor::of_kind(kind);
    let part = UniformPartition::global(&g, r)?;
    let v = part.validate_seeded(samples, seed);
    let rep = PartitionReport {
        command: "partition-info",
        timestamp: timestamp(),
        group: g.name(),
        rho: Num(g.rho),
        gamma: Num(g.gamma),
        r: Num(r),
        u_radius: Num(part.u_radius()),
        v_radius: Num(part.v_radius()),
        tile_lo: part.tile().lo.iter().copied().map(Num).collect(),
        tile_hi: part.tile().hi.iter().copied().map(Num).collect(),
        cell_measure: Num(part.cell_measure()),
        cell_measure_bound: Num(g.ball_measure(r / (2.0 * g.gamma))?),
        n_pi_bound: Num(n_pi_bound(&g, part.u_radius(), part.v_radius(), r)?),
        validation: Validation { valid: v.valid, cells_checked: v.cells_checked, probes: v.probes, failures: v.failures },
    };
    let join = |xs: &[Num]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let rows: Vec<Vec<String>> = [
        ("group", rep.group.to_string()),
        ("rho", rep.rho.to_string()),
        ("gamma", rep.gamma.to_string()),
        ("r", rep.r.to_string()),
        ("u_radius", rep.u_radius.to_string()),
        ("v_radius", rep.v_radius.to_string()),
        ("tile_lo", join(&rep.tile_lo)),
        ("tile_hi", join(&rep.tile_hi)),
        ("cell_measure", rep.cell_measure.to_string()),
        ("cell_measure_bound", rep.cell_measure_bound.to_string()),
        ("n_pi_bound", rep.n_pi_bound.to_string()),
        ("valid", rep.validation.valid.to_string()),
        ("probes", rep.validation.probes.to_string()),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    Outcome::new(&rep, table(&["key", "value"], &rows)?)
}

#[derive(Serialize)]
struct LevelRow {
    levels: u32,
    measure: Num,
    weak_norm: Num,
    fractional_norm: Num,
    argmax_r: Num,
    bound: Num,
    margin: Num,
    same_level_separated: bool,
    disjoint: bool,
    cross_level_separated: bool,
    cross_level_enforced: bool,
}

#[derive(Serialize)]
struct CounterexampleReport {
    command: &'static str,
    timestamp: String,
    q: Num,
    p: Exponent,
    alpha: Num,
    constants: [Num; 4],
    ratio: Num,
    bound: Num,
    levels: Vec<LevelRow>,
}

fn counterexample(q: f64, p: Exponent, alpha: f64, levels: u32) -> Result<Outcome, CliError> {
    let consts = fractional_bound_constant(q, p, alpha, &GroupDescriptor::real_line())?;
    let rows = counterexample_report(q, p, alpha, levels)?;
    let rep = CounterexampleReport {
        command: "counterexample",
        timestamp: timestamp(),
        q: Num(q),
        p,
        alpha: Num(alpha),
        constants: [Num(consts.c1), Num(consts.c2), Num(consts.c3), Num(consts.c4)],
        ratio: Num(consts.ratio),
        bound: Num(consts.bound),
        levels: rows
            .iter()
            .map(|l| LevelRow {
                levels: l.levels,
                measure: Num(l.measure),
                weak_norm: Num(l.weak_norm),
                fractional_norm: Num(l.fractional_norm),
                argmax_r: Num(l.argmax_r),
                bound: Num(l.bound),
                margin: Num(l.margin),
                same_level_separated: l.separations.same_level,
                disjoint: l.separations.disjoint,
                cross_level_separated: l.separations.cross_level,
                cross_level_enforced: l.cross_level_enforced,
            })
            .collect(),
    };
    let csv_rows: Vec<Vec<String>> = rep
        .levels
        .iter()
        .map(|l| {
            vec![
                l.levels.to_string(),
                l.measure.to_string(),
                l.weak_norm.to_string(),
                l.fractional_norm.to_string(),
                l.argmax_r.to_string(),
                l.bound.to_string(),
                l.margin.to_string(),
                l.same_level_separated.to_string(),
                l.disjoint.to_string(),
                l.cross_level_separated.to_string(),
                l.cross_level_enforced.to_string(),
            ]
        })
        .collect();
    let header = [
        "levels",
        "measure",
        "weak_norm",
        "fractional_norm",
        "argmax_r",
        "bound",
        "margin",
        "same_level_separated",
        "disjoint",
        "cross_level_separated",
        "cross_level_enforced",
    ];
    Outcome::new(&rep, table(&header, &csv_rows)?)
}

#[derive(Serialize)]
struct SummaryRow {
    criterion: String,
    ok: bool,
    cases: usize,
    passed: usize,
    failed: usize,
    misuse: usize,
    worst_slack: Num,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    command: &'static str,
    timestamp: String,
    seed: u64,
    summary: Vec<SummaryRow>,
    cases: &'a [InequalityCase],
}

fn verify(config: Option<&Path>, seed: Option<u64>, only: &[String]) -> Result<Outcome, CliError> {
    let mut cfg = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
            SuiteConfig::from_json(&text)?
        }
        None => SuiteConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if !only.is_empty() {
        cfg.checks.retain(|c| only.iter().any(|o| o == &c.criterion));
        if cfg.checks.is_empty() {
            return Err(CliError::Usage(format!("--only {} selects no checks", only.join(","))));
        }
    }
    let cases = run_suite(&cfg);
    let summary = criterion_summary(&cases);
    for s in &summary {
        eprintln!(
            "{:<4} {} {}/{} pass, {} fail, {} misuse",
            s.criterion,
            if s.ok() { "PASS" } else { "FAIL" },
            s.passed,
            s.cases,
            s.failed,
            s.misuse
        );
    }
    let failed = summary.iter().any(|s| !s.ok());
    let rep = VerifyReport {
        command: "verify",
        timestamp: timestamp(),
        seed: cfg.seed,
        summary: summary
            .iter()
            .map(|s| SummaryRow {
                criterion: s.criterion.clone(),
                ok: s.ok(),
                cases: s.cases,
                passed: s.passed,
                failed: s.failed,
                misuse: s.misuse,
                worst_slack: Num(s.worst_slack),
            })
            .collect(),
        cases: &cases,
    };
    let mut out = Outcome::new(&rep, report::to_csv(&cases)?)?;
    out.failed = failed;
    Ok(out)
}
