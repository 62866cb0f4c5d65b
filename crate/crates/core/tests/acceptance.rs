//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Exits nonzero when a criterion fails that is not listed in
//! [`KNOWN_RED`]. Set `ACCEPTANCE_STRICT=1` to fail on those too.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use common::{perturbed_circle, rel, richardson, wavy_total_curvature, CIRCLE_MOBIUS};
use ohara::energy::{alpha_grid, SweepCell};
use ohara::seminorm::{ast_integral_numeric, test_suite};
use ohara::tangentmap::{first_variation_fd, random_tangential_field, EL_SIGNS, FD_STEP};
use ohara::{
    alpha_sweep, bracket_seminorm, distortion, el_operators, energy_e, energy_e_tilde, generate,
    gagliardo, ohara_energy, scaled_energy_stable, sphere_inversion, total_curvature,
    total_curvature_limit, CurveKind, EnergyParams64, PolyCurve64, SeminormParams, SphereMap64,
    Vec3d,
};

/// Criteria that fail for a documented reason (see README, "Known deviations").
const KNOWN_RED: &[u32] = &[1];

/// Operator residuals below this, relative to the absolute integrand
/// scale, are rounding noise.
const ROUNDING_FLOOR: f64 = 1e-13;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn moebius() -> EnergyParams64 {
    EnergyParams64::new(2.0, 2.0).unwrap()
}

fn curve(kind: CurveKind, n: usize) -> PolyCurve64 {
    generate(kind, n).unwrap()
}

fn inverted(kind: CurveKind, n: usize) -> PolyCurve64 {
    sphere_inversion(&curve(kind, n), Vec3d::zero(), 1.0, None).unwrap()
}

fn circle_validation() -> Outcome {
    let t = Instant::now();
    let e = ohara_energy(&curve(CurveKind::Circle, 1000), moebius()).unwrap().value;
    let secs = t.elapsed().as_secs_f64();
    let refs = [2000, 4000, 8000].map(|n| ohara_energy(&curve(CurveKind::Circle, n), moebius()).unwrap().value);
    let (reference, order) = richardson(refs);
    let err = rel(e, reference);
    outcome(
        err < 1e-3 && secs < 5.0,
        format!(
            "E(N=1000) = {e:.8}, reference {reference:.8} (order {order:.2}, closed form {CIRCLE_MOBIUS}), rel err {err:.2e} (tol 1e-3), {secs:.2}s"
        ),
    )
}

fn distortion_values() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, c, check) in [
        ("square", curve(CurveKind::Square, 1000), (|b: f64| (b - 2.0).abs() <= 1e-2) as fn(f64) -> bool),
        ("stadion", curve(CurveKind::Stadion, 1000), |b| (b - PI).abs() <= 1e-2),
        ("inverted square", inverted(CurveKind::Square, 1000), |b| b >= PI / 2f64.sqrt() - 1e-2),
    ] {
        let t = Instant::now();
        let b = distortion(&c).unwrap();
        let secs = t.elapsed().as_secs_f64();
        pass &= check(b) && secs < 2.0;
        parts.push(format!("{name} {b:.5} ({secs:.2}s)"));
    }
    outcome(pass, parts.join(", "))
}

fn alpha_to_zero() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in [CurveKind::Circle, CurveKind::Stadion] {
        let c = curve(kind, 2000);
        let s = scaled_energy_stable(&c, 0.01).unwrap();
        let lb = distortion(&c).unwrap().ln();
        let err = rel(s, lb);
        pass &= err < 0.05;
        parts.push(format!("{} {s:.5} vs log β {lb:.5} ({:.2}%)", kind.name(), 100.0 * err));
    }
    outcome(pass, parts.join(", "))
}

fn moebius_contrast() -> Outcome {
    let st = curve(CurveKind::Stadion, 2000);
    let inv = inverted(CurveKind::Stadion, 2000);
    let at = |alpha: f64| {
        let a = scaled_energy_stable(&st, alpha).unwrap();
        let b = scaled_energy_stable(&inv, alpha).unwrap();
        (a, b, rel(b, a))
    };
    let (a2, b2, d2) = at(2.0);
    let (a1, b1, d1) = at(1.0);
    outcome(
        d2 < 0.01 && d1 > 0.05,
        format!(
            "α=2: {a2:.5} vs {b2:.5} ({:.3}%, tol 1%); α=1: {a1:.5} vs {b1:.5} ({:.2}%, need > 5%)",
            100.0 * d2,
            100.0 * d1
        ),
    )
}

fn scale_invariance() -> Outcome {
    let mut worst = 0f64;
    for kind in [CurveKind::Circle, CurveKind::Square, CurveKind::Stadion, CurveKind::WAVY_DEFAULT] {
        let c = curve(kind, 500);
        for params in [moebius(), EnergyParams64::new(1.0, 4.0).unwrap()] {
            let e = ohara_energy(&c, params).unwrap().value;
            for lambda in [1e-3, 1e3] {
                let s = ohara_energy(&c.scaled(lambda).unwrap(), params).unwrap().value;
                worst = worst.max(rel(s, e));
            }
        }
    }
    outcome(worst <= 1e-12, format!("worst rel change {worst:.2e} (tol 1e-12)"))
}

fn equivalence_chain() -> Outcome {
    let mut worst = 0f64;
    let mut parts = Vec::new();
    for kind in [CurveKind::Circle, CurveKind::WAVY_DEFAULT] {
        let c = curve(kind, 1000);
        let o = ohara_energy(&c, moebius()).unwrap().value;
        let u = SphereMap64::tangent_of(&c);
        let e = energy_e(&u, moebius()).unwrap();
        let et = energy_e_tilde(&u, moebius()).unwrap();
        let spread = [rel(e, o), rel(et, o), rel(et, e)].into_iter().fold(0.0, f64::max);
        worst = worst.max(spread);
        parts.push(format!("{}: O {o:.6} E {e:.6} Ẽ {et:.6}", kind.name()));
    }
    outcome(worst < 0.01, format!("{}; max pairwise {:.3}%", parts.join("; "), 100.0 * worst))
}

fn euler_lagrange() -> Outcome {
    let mut residuals = Vec::new();
    let mut err500 = 0.0;
    for n in [250, 500, 1000] {
        let u = SphereMap64::circle_tangent(n).unwrap();
        let mut worst_err = 0f64;
        let mut worst_res = 0f64;
        for seed in 0..10 {
            let phi = random_tangential_field(&u, 3, seed);
            let ops = el_operators(&u, &phi, moebius()).unwrap();
            if n == 500 {
                let fd = first_variation_fd(&u, &phi, moebius(), FD_STEP).unwrap();
                worst_err = worst_err.max(ops.relative_error(fd, EL_SIGNS));
            }
            worst_res = worst_res.max(ops.variation().abs() / ops.scale);
        }
        if n == 500 {
            err500 = worst_err;
        }
        residuals.push(worst_res);
    }
    let monotone = residuals.windows(2).all(|w| w[1] <= w[0]);
    let at_floor = residuals.iter().all(|&r| r < ROUNDING_FLOOR);
    let res = residuals.iter().map(|r| format!("{r:.1e}")).collect::<Vec<_>>().join(" ");
    outcome(
        err500 < 1e-3 && (monotone || at_floor),
        format!(
            "N=500 max rel err {err500:.2e} (tol 1e-3); residual over N=250/500/1000: {res}{}",
            if monotone { " (monotone)" } else if at_floor { " (all at rounding floor)" } else { " (not monotone)" }
        ),
    )
}

fn circle_minimality() -> Outcome {
    let circle = ohara_energy(&curve(CurveKind::Circle, 512), moebius()).unwrap().value;
    let energies: Vec<f64> = (0..50)
        .map(|seed| ohara_energy(&perturbed_circle(seed, 512, 0.1), moebius()).unwrap().value)
        .collect();
    let lowest = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    outcome(
        lowest >= circle * (1.0 - 1e-3),
        format!("circle {circle:.6}, lowest of 50 perturbed {lowest:.6}"),
    )
}

fn ast_formula() -> Outcome {
    let mut worst = 0f64;
    for mu in [0.5, 1.0, 2.0] {
        for gap in [0.5, 1.0, 2.0] {
            let numeric = ast_integral_numeric(0.0, gap, mu).unwrap();
            let exact = 2.0 / (mu * (1.0 + mu)) * gap.powf(-mu);
            worst = worst.max(rel(numeric, exact));
        }
    }
    outcome(worst < 1e-3, format!("max rel err {worst:.2e} (tol 1e-3)"))
}

fn alpha_to_four() -> Outcome {
    let circle = curve(CurveKind::Circle, 2000);
    let wavy = curve(CurveKind::WAVY_DEFAULT, 2000);
    let energy_ratio = total_curvature_limit(&wavy, 3.9).unwrap() / total_curvature_limit(&circle, 3.9).unwrap();
    let kappa_ratio = total_curvature(&wavy) / total_curvature(&circle);
    let err = rel(energy_ratio, kappa_ratio);
    outcome(
        err < 0.15,
        format!(
            "energy ratio {energy_ratio:.4}, curvature ratio {kappa_ratio:.4} (∫|κ| oracle {:.4}), {:.2}% (tol 15%)",
            wavy_total_curvature(5, 0.3) / (2.0 * PI),
            100.0 * err
        ),
    )
}

fn seminorm_probe() -> Outcome {
    let mut worst = 1f64;
    let mut name = "";
    for p in [2.0, 3.0, 4.0] {
        let params = SeminormParams::circle(1.0 / p, p).unwrap();
        let ratios: Vec<Vec<(&str, f64)>> = [256, 512, 1024]
            .iter()
            .map(|&n| {
                test_suite::<f64>(n)
                    .unwrap()
                    .into_iter()
                    .map(|(id, u)| (id, bracket_seminorm(&u, params).unwrap() / gagliardo(&u, params).unwrap()))
                    .collect()
            })
            .collect();
        for f in 0..ratios[0].len() {
            let vals: Vec<f64> = ratios.iter().map(|r| r[f].1).collect();
            let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
            let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
            if hi / lo > worst {
                worst = hi / lo;
                name = ratios[0][f].0;
            }
        }
    }
    outcome(worst < 2.0, format!("largest max/min ratio across N {worst:.4} ({name})"))
}

fn determinism() -> Outcome {
    let cells: Vec<SweepCell<f64>> = [
        ("circle", curve(CurveKind::Circle, 400)),
        ("stadion", curve(CurveKind::Stadion, 400)),
        ("inverted-stadion", inverted(CurveKind::Stadion, 400)),
    ]
    .into_iter()
    .map(|(id, curve)| SweepCell { id: id.into(), curve })
    .collect();
    let alphas = alpha_grid(0.05, 2.0, 8);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| alpha_sweep(&cells, &alphas).unwrap().to_csv())
    };
    let reference = run(1);
    let same = [2, 3, 8].iter().all(|&t| run(t) == reference);
    outcome(same, format!("{} CSV bytes, thread counts 1/2/3/8 identical: {same}", reference.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "circle validation", circle_validation),
        (2, "distortion values", distortion_values),
        (3, "alpha -> 0 limit", alpha_to_zero),
        (4, "Moebius invariance contrast", moebius_contrast),
        (5, "discrete scale invariance", scale_invariance),
        (6, "energy equivalence chain", equivalence_chain),
        (7, "Euler-Lagrange gradient check", euler_lagrange),
        (8, "circle minimality", circle_minimality),
        (9, "Ast integral", ast_formula),
        (10, "alpha -> 4 proportionality", alpha_to_four),
        (11, "seminorm equivalence probe", seminorm_probe),
        (12, "determinism", determinism),
    ];
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let o = run();
        let known = KNOWN_RED.contains(&id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !o.pass && (strict || !known) {
            unexpected += 1;
        }
        println!("{tag} [{id:>2}] {name}: {}", o.detail);
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
