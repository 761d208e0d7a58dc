//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadstab::cli::{parse_experiment, run};
use quadstab::exact::{rat, Poly1, Poly3};
use quadstab::fixpoint::{Branch, GenMetricValue};
use quadstab::funceq::{default_sweep, solution_space, symbolic_residual, verify_identity, Coupling, EquationId};
use quadstab::stability::{
    bound_formulas_agree, lipschitz_for_power, printed_lipschitz, run_experiment, theoretical_bound,
    ControlFunction, StabilityReport,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn demo_configs() -> Vec<PathBuf> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(configs_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "conf"))
        .collect();
    paths.sort();
    paths
}

fn experiment(name: &str) -> Result<StabilityReport, String> {
    let text = std::fs::read_to_string(configs_dir().join(name)).map_err(|e| e.to_string())?;
    let file = parse_experiment(&text).map_err(|e| e.to_string())?;
    run_experiment(&file.config).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const COUPLINGS: [i64; 5] = [-3, -2, 2, 3, 5];

fn symbolic_residual_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut r = || rat(rng.random_range(-99..=99), rng.random_range(1..=20));
    let mut checked = 0;
    for _ in 0..25 {
        let (a, b, d) = (r(), r(), r());
        let f = Poly1::from_coeffs([d.clone(), b.clone(), a.clone()]);
        for c in COUPLINGS {
            let c2 = rat(c * c, 1);
            let lin = rat(-2, 1) * &b * &c2;
            let expected = &Poly3::linear(&lin, &lin, &rat(0, 1)) + &Poly3::constant(rat(-6, 1) * &c2 * &d);
            let got = symbolic_residual(&f, EquationId::main(c).unwrap());
            ensure(got == expected, || format!("f = {f}, c = {c}: got {got}, expected {expected}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (f, c) pairs equal -2bc^2(x+y) - 6c^2 d exactly"))
}

fn polynomial_solution_spaces() -> Outcome {
    let x2 = vec![Poly1::monomial(rat(1, 1), 2)];
    let mut checked = 0;
    for degree in [4, 6, 8] {
        let mut eqs = vec![EquationId::QuadBase];
        eqs.extend(COUPLINGS.iter().map(|&c| EquationId::main(c).unwrap()));
        for eq in eqs {
            let basis = solution_space(eq, degree).map_err(|e| e.to_string())?;
            ensure(basis == x2, || format!("{eq}, degree {degree}: basis {basis:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} spaces, each of dimension 1 spanned by x^2"))
}

fn lemma_suite() -> Outcome {
    let sweep = default_sweep();
    for id in &sweep {
        let v = verify_identity(*id).map_err(|e| e.to_string())?;
        ensure(v.holds, || format!("{id}: difference {}", v.difference))?;
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["quadstab", "lemmas"], &mut out, &mut err);
    ensure(code == 0, || format!("`lemmas` exited with {code}"))?;
    Ok(format!("{} identity instances reduce to 0; `lemmas` exit 0", sweep.len()))
}

fn fixed_point_extraction() -> Outcome {
    let mut notes = Vec::new();
    for (p, name) in [(0.0, "power_p0.conf"), (1.0, "power_p1.conf"), (3.0, "power_p3.conf")] {
        let report = experiment(name)?;
        let s = &report.summary;
        let branch = if p < 2.0 { Branch::Dilate } else { Branch::Contract };
        ensure(s.j == branch, || format!("p = {p}: branch {:?}", s.j))?;
        let n = s.iterations.ok_or_else(|| format!("p = {p}: no convergence"))?;
        ensure(n <= 60, || format!("p = {p}: {n} iterations"))?;
        let worst = report.points.iter().map(|pt| (pt.q - pt.x * pt.x).abs()).fold(0.0, f64::max);
        ensure(worst <= 1e-9, || format!("p = {p}: max |Q - x^2| = {worst:e}"))?;
        let l = 2f64.powf((p - 2.0) * f64::from(branch.sign()));
        let rate = s.empirical_lipschitz.ok_or_else(|| format!("p = {p}: no rate"))?;
        ensure((rate - l).abs() <= 0.05 * l, || format!("p = {p}: rate {rate} vs L = {l}"))?;
        notes.push(format!("p={p}: n={n}, |Q-x^2|<={worst:.1e}, rate {rate:.4}/L {l}"));
    }
    Ok(notes.join("; "))
}

fn bound_formula_coincidence() -> Outcome {
    let c = Coupling::new(2).unwrap();
    for p in [0.0, 0.5, 1.0, 1.5, 3.0, 4.0] {
        let branch = if p < 2.0 { Branch::Dilate } else { Branch::Contract };
        let l = lipschitz_for_power(p, branch).map_err(|e| e.to_string())?;
        ensure(bound_formulas_agree(p, branch, l, c), || format!("p = {p}: formulas disagree with L = {l}"))?;
        let printed = printed_lipschitz(p, branch);
        ensure(!bound_formulas_agree(p, branch, printed, c), || {
            format!("p = {p}: formulas agree with the 2^((p-3)j) constant {printed}")
        })?;
    }
    Ok("agree to 1e-12 with 2^((p-2)j) and disagree with 2^((p-3)j) for all six p".into())
}

fn constant_control_bound() -> Outcome {
    let c = Coupling::new(2).unwrap();
    for delta in [0.36, 0.44, 1.0, 7.5] {
        let control = ControlFunction::constant(delta).unwrap();
        let b = theoretical_bound(&control, c, Branch::Dilate, 1.0).map_err(|e| e.to_string())?;
        ensure((b - delta / 36.0).abs() <= 1e-15 * delta, || format!("delta = {delta}: bound {b}"))?;
    }
    let report = experiment("constant_noise.conf")?;
    let fails = report.points.iter().filter(|p| !p.pass).count();
    ensure(!report.points.is_empty() && fails == 0, || format!("{fails} grid points exceed the bound"))?;
    let delta = report.summary.control.parameter();
    let expected = 0.01 * (4.0 + 10.0 * 4.0);
    ensure((delta - expected).abs() < 1e-15, || format!("analytic delta {delta}"))?;
    Ok(format!(
        "bound = delta/36; noise run passes at all {} grid points (delta = {delta})",
        report.points.len()
    ))
}

fn proof_checkpoints() -> Outcome {
    let mut count = 0;
    for path in demo_configs() {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let report = experiment(&name)?;
        let s = &report.summary;
        if s.iterations.is_none() {
            continue;
        }
        let c2 = s.c.squared();
        let l = match s.control {
            ControlFunction::Power { p, .. } => 2f64.powf((p - 2.0) * f64::from(s.j.sign())),
            ControlFunction::Constant { .. } => 0.25,
        };
        let limit = match s.j {
            Branch::Dilate => l / c2,
            Branch::Contract => 1.0 / c2,
        };
        ensure(s.d_f_tf.le_with_slack(GenMetricValue::Finite(limit), 1e-9), || {
            format!("{name}: d(f, Tf) = {} > {limit}", s.d_f_tf)
        })?;
        count += 1;
    }
    Ok(format!("d(f, Tf) within the checkpoint in all {count} converged demo runs"))
}

fn limit_solves_the_equation() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for path in demo_configs() {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let report = experiment(&name)?;
        let Some(m) = report.summary.quadraticity_max else {
            continue;
        };
        ensure(m <= 1e-7, || format!("{name}: max |Delta_Q| = {m:e}"))?;
        worst = worst.max(m);
        count += 1;
    }
    Ok(format!("max |Delta_Q| = {worst:.2e} over {count} demo runs"))
}

fn determinism() -> Outcome {
    let once = || -> Vec<(i32, Vec<u8>)> {
        let mut bodies = Vec::new();
        for path in demo_configs() {
            for format in ["json-lines", "csv"] {
                let (mut out, mut err) = (Vec::new(), Vec::new());
                let p = path.to_string_lossy().to_string();
                let code = run(["quadstab", "experiment", &p, "--format", format, "--output", "-"], &mut out, &mut err);
                bodies.push((code, out));
            }
        }
        bodies
    };
    let (a, b) = (once(), once());
    ensure(a.iter().all(|(code, _)| *code == 0), || "a demo run did not exit 0".into())?;
    ensure(a == b, || "report bodies differ between runs".into())?;
    let bytes: usize = a.iter().map(|(_, body)| body.len()).sum();
    Ok(format!("{} report bodies ({bytes} bytes) identical across two runs", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("symbolic residual exactness", symbolic_residual_exactness),
        ("polynomial solution spaces", polynomial_solution_spaces),
        ("identity catalogue", lemma_suite),
        ("fixed-point extraction and rate", fixed_point_extraction),
        ("bound formula coincidence", bound_formula_coincidence),
        ("constant-control bound", constant_control_bound),
        ("proof checkpoints", proof_checkpoints),
        ("limit solves the equation", limit_solves_the_equation),
        ("determinism", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
