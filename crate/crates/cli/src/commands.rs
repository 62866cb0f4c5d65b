use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ohara::energy::{alpha_grid, SweepCell};
use ohara::seminorm::test_suite;
use ohara::tangentmap::{first_variation_fd, random_tangential_field, read_sampled_map, EL_SIGNS, FD_STEP};
use ohara::{
    alpha_sweep, bracket_seminorm, distortion as curve_distortion, el_operators, gagliardo,
    ohara_energy, ohara_energy_full, sphere_inversion, write_curve, EnergyParams64, Error,
    SampledMap64, SeminormParams, SphereMap64, Vec3d,
};

use crate::config::Config;
use crate::source::{load_curve, parse_curve_list};
use crate::{CliError, CurveArgs};

/// Largest relative error `elcheck` accepts.
pub const ELCHECK_TOL: f64 = 1e-3;

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> CliError {
    CliError::Lib(Error::Io(e))
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io)?
    };
}

fn curve_n(cfg: &Config, args: &CurveArgs) -> Result<usize, CliError> {
    cfg.pick(args.n, "n", 1000)
}

/// `α` and `p`, with `p = 4/α` unless given.
fn alpha_p(cfg: &Config, alpha: Option<f64>, p: Option<f64>, default_alpha: f64) -> Result<(f64, f64), CliError> {
    let alpha = cfg.pick(alpha, "alpha", default_alpha)?;
    let p = cfg.pick(p, "p", 4.0 / alpha)?;
    Ok((alpha, p))
}

pub fn generate(cfg: &Config, args: &CurveArgs, path: Option<PathBuf>, out: Out) -> Result<ExitCode, CliError> {
    let n = curve_n(cfg, args)?;
    let curve = load_curve(&args.source, n)?;
    match cfg.pick_opt(path, "out")? {
        Some(p) => {
            write_curve(&curve, &p)?;
            emit!(out, "n={}", curve.len());
            emit!(out, "out={}", p.display());
        }
        None => write!(out, "{}", ohara::curve::format_curve(&curve)).map_err(io)?,
    }
    Ok(ExitCode::SUCCESS)
}

pub fn energy(
    cfg: &Config,
    args: &CurveArgs,
    alpha: Option<f64>,
    p: Option<f64>,
    stable: bool,
    out: Out,
) -> Result<ExitCode, CliError> {
    let (alpha, p) = alpha_p(cfg, alpha, p, 2.0)?;
    let params = EnergyParams64::new(alpha, p)?;
    let stable = cfg.switch(stable, "stable")?;
    if stable && !params.is_scale_invariant() {
        return Err(Error::InvalidParams(format!("--stable needs alpha*p = 4, got {}", alpha * p)).into());
    }
    let curve = load_curve(&args.source, curve_n(cfg, args)?)?;
    let r = if stable { ohara_energy_full(&curve, params)? } else { ohara_energy(&curve, params)? };
    emit!(out, "curve={}", args.source);
    emit!(out, "n={}", curve.len());
    emit!(out, "alpha={alpha}");
    emit!(out, "p={p}");
    emit!(out, "value={}", r.value);
    if let Some(s) = r.scaled {
        emit!(out, "scaled={s}");
    }
    if let (Some(s), Some(v)) = (r.stable_scaled, r.stable_value) {
        emit!(out, "stable_scaled={s}");
        emit!(out, "stable_value={v}");
    }
    emit!(out, "beta={}", r.beta);
    emit!(out, "terms={}", r.terms);
    emit!(out, "max_term={}", r.max_term);
    let tags: Vec<&str> = r.warnings.iter().map(|w| w.tag()).collect();
    emit!(out, "warnings={}", if tags.is_empty() { "none".into() } else { tags.join(",") });
    Ok(ExitCode::SUCCESS)
}

pub struct SweepArgs {
    pub curves: Option<String>,
    pub alphas: Option<String>,
    pub alpha_grid: Option<String>,
    pub n: Option<usize>,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

fn parse_alphas(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Config(format!("bad alpha '{s}'"))))
        .collect()
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Config(format!("alpha-grid must be start:end:count, got '{text}'"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(alpha_grid(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?))
}

pub fn sweep(cfg: &Config, args: SweepArgs, out: Out) -> Result<ExitCode, CliError> {
    let n = cfg.pick(args.n, "n", 1000)?;
    let curves = cfg
        .pick_opt(args.curves, "curves")?
        .ok_or_else(|| CliError::Config("sweep needs curves".into()))?;
    let list = cfg.pick_opt(args.alphas, "alphas")?;
    let grid = cfg.pick_opt(args.alpha_grid, "alpha-grid")?;
    let alphas = match (list, grid) {
        (Some(_), Some(_)) => return Err(CliError::Config("give either alphas or alpha-grid".into())),
        (Some(l), None) => parse_alphas(&l)?,
        (None, Some(g)) => parse_grid(&g)?,
        (None, None) => alpha_grid(0.05, 2.0, 40),
    };
    let csv_path = cfg.pick_opt(args.out, "out")?;
    let plot_path = cfg.pick_opt(args.plot, "plot")?;
    if plot_path.is_some() && csv_path.is_none() {
        return Err(CliError::Config("plot needs out".into()));
    }
    let mut cells = Vec::new();
    for (id, src) in parse_curve_list(&curves)? {
        if cells.iter().any(|c: &SweepCell<f64>| c.id == id) {
            return Err(CliError::Config(format!("duplicate curve id '{id}'")));
        }
        cells.push(SweepCell { id, curve: load_curve(&src, n)? });
    }
    let table = alpha_sweep(&cells, &alphas).map_err(|e| match e {
        Error::InvalidParams(m) => CliError::Config(m),
        e => e.into(),
    })?;
    let csv = table.to_csv();
    match &csv_path {
        None => write!(out, "{csv}").map_err(io)?,
        Some(path) => {
            std::fs::write(path, &csv).map_err(io)?;
            emit!(out, "rows={}", table.rows.len());
            emit!(out, "flagged={}", table.flagged().count());
            emit!(out, "csv={}", path.display());
            if let Some(plot) = &plot_path {
                let png = plot.with_extension("png");
                let script = table.plot_script(&path.display().to_string(), &png.display().to_string());
                std::fs::write(plot, script).map_err(io)?;
                emit!(out, "plot={}", plot.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn distortion(cfg: &Config, args: &CurveArgs, out: Out) -> Result<ExitCode, CliError> {
    let curve = load_curve(&args.source, curve_n(cfg, args)?)?;
    emit!(out, "curve={}", args.source);
    emit!(out, "n={}", curve.len());
    emit!(out, "distortion={}", curve_distortion(&curve)?);
    Ok(ExitCode::SUCCESS)
}

pub fn invert(
    cfg: &Config,
    args: &CurveArgs,
    center: [f64; 3],
    radius: f64,
    path: Option<PathBuf>,
    out: Out,
) -> Result<ExitCode, CliError> {
    let curve = load_curve(&args.source, curve_n(cfg, args)?)?;
    let inv = sphere_inversion(&curve, Vec3d::new(center[0], center[1], center[2]), radius, None)?;
    match cfg.pick_opt(path, "out")? {
        Some(p) => {
            write_curve(&inv, &p)?;
            emit!(out, "n={}", inv.len());
            emit!(out, "out={}", p.display());
        }
        None => write!(out, "{}", ohara::curve::format_curve(&inv)).map_err(io)?,
    }
    Ok(ExitCode::SUCCESS)
}

pub struct ElcheckArgs {
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub degree: Option<usize>,
    pub phi: Option<String>,
}

pub fn elcheck(cfg: &Config, args: ElcheckArgs, out: Out) -> Result<ExitCode, CliError> {
    let n = cfg.pick(args.n, "n", 500)?;
    let (alpha, p) = alpha_p(cfg, args.alpha, args.p, 2.0)?;
    let params = EnergyParams64::new(alpha, p)?;
    if !params.is_scale_invariant() || p < 2.0 {
        return Err(CliError::Config(format!("elcheck needs alpha*p = 4 and p >= 2, got alpha={alpha} p={p}")));
    }
    let trials = cfg.pick(args.trials, "trials", 10)?;
    let seed = cfg.pick(args.seed, "seed", 0)?;
    let degree = cfg.pick(args.degree, "degree", 3)?;
    let mode = cfg.pick(args.phi, "phi", "random".to_string())?;
    let u = SphereMap64::circle_tangent(n)?;
    let phis: Vec<SampledMap64> = match mode.as_str() {
        "random" => (0..trials as u64)
            .map(|t| random_tangential_field(&u, degree, seed.wrapping_add(t)))
            .collect(),
        "u" => vec![(*u).clone()],
        other => return Err(CliError::Config(format!("phi must be random or u, got '{other}'"))),
    };
    let mut worst_err = 0f64;
    let mut worst_res = 0f64;
    for phi in &phis {
        let ops = el_operators(&u, phi, params)?;
        let fd = first_variation_fd(&u, phi, params, FD_STEP)?;
        worst_err = worst_err.max(ops.relative_error(fd, EL_SIGNS));
        worst_res = worst_res.max(ops.variation().abs() / ops.scale);
    }
    let pass = worst_err < ELCHECK_TOL;
    emit!(out, "n={n}");
    emit!(out, "alpha={alpha}");
    emit!(out, "p={p}");
    emit!(out, "trials={}", phis.len());
    emit!(out, "seed={seed}");
    emit!(out, "signs={},{}", EL_SIGNS.0, EL_SIGNS.1);
    emit!(out, "max_rel_error={worst_err:.6e}");
    emit!(out, "max_residual={worst_res:.6e}");
    emit!(out, "tolerance={ELCHECK_TOL:e}");
    emit!(out, "status={}", if pass { "pass" } else { "fail" });
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn seminorm(
    cfg: &Config,
    source: &str,
    beta: Option<f64>,
    p: Option<f64>,
    n: Option<usize>,
    out: Out,
) -> Result<ExitCode, CliError> {
    let p = cfg.pick(p, "p", 2.0)?;
    let beta = cfg.pick(beta, "beta", 1.0 / p)?;
    let params = SeminormParams::circle(beta, p)?;
    let maps: Vec<(String, SampledMap64)> = if source == "suite" {
        test_suite(cfg.pick(n, "n", 512)?)?
            .into_iter()
            .map(|(id, u)| (id.to_string(), u))
            .collect()
    } else {
        vec![(String::new(), read_sampled_map(source)?)]
    };
    emit!(out, "beta={beta}");
    emit!(out, "p={p}");
    emit!(out, "in_equivalence_range={}", params.in_equivalence_range());
    for (id, u) in &maps {
        let g = gagliardo(u, params)?;
        let b = bracket_seminorm(u, params)?;
        let prefix = if id.is_empty() { String::new() } else { format!("{id}.") };
        emit!(out, "{prefix}n={}", u.len());
        emit!(out, "{prefix}gagliardo={g}");
        emit!(out, "{prefix}bracket={b}");
        emit!(out, "{prefix}ratio={}", b / g);
    }
    Ok(ExitCode::SUCCESS)
}
