//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p fiveq --test acceptance`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fiveq::config::{Experiment, RunConfig};
use fiveq::report::to_json;
use fiveq::runner::{default_grid, device_for, load_targets, run};
use fiveq_core::circuit::{Circuit, Gate};
use fiveq_core::experiments::{
    bell_correlations_exact, bell_experiment, dense_coding_circuit, direct_prime_state, exact_prime_observables,
    ghz_preparation, mermin_test, prime_counts, prime_experiment, prime_state_circuit, prime_theory,
    qft_verification_circuit, RunSettings,
};
use fiveq_core::noise::{fit_noise, NoiseModel};
use fiveq_core::observables::{mermin_polynomial, MerminMode};
use fiveq_core::state::{exact_distribution, execute, full_unitary, run_circuit, total_variation, StateVector};
use fiveq_core::transpile::{
    cz_decomposition, decompose_crz, reverse_cx, route, simplify, swap_decomposition, toffoli_decomposition,
    zero_controlled_cx,
};
use fiveq_core::unitary::Matrix;
use fiveq_core::{rng, Device};
use num_complex::Complex64;

const SEED: u64 = 20170101;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

type Outcome = Result<Verdict, String>;
type Check = Box<dyn Fn() -> Outcome>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn defaults() -> RunSettings {
    RunSettings {
        seed: SEED,
        ..RunSettings::default()
    }
}

/// `(value - target)` in units of `std`; exact agreement is 0 and any
/// disagreement at zero spread is infinite.
fn sigmas(value: f64, target: f64, std: f64) -> f64 {
    let d = (value - target).abs();
    if d == 0.0 {
        0.0
    } else {
        d / std
    }
}

fn bell(budget: Duration) -> Outcome {
    let start = Instant::now();
    let [ab, ac, bc] = bell_correlations_exact().map_err(err)?;
    let exact = (ab - ac).abs() - bc;
    let report = bell_experiment(&Device::ideal(), &defaults()).map_err(err)?;
    let stat = report.quantity("|P(a,b)-P(a,c)|-P(b,c)").ok_or("missing statistic")?;
    let elapsed = start.elapsed();
    let k = sigmas(stat.mean, 1.5, stat.std);
    Ok(verdict(
        (exact - 1.5).abs() < 1e-9 && k <= 3.0 && elapsed < budget,
        format!(
            "exact {exact:.12}; sampled {:.4} +- {:.4} ({k:.2} sigma from 1.5); {elapsed:.2?}",
            stat.mean, stat.std
        ),
    ))
}

fn mermin(budget: Duration) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, qm) in [(3usize, 4.0), (4, 8.0 * 2f64.sqrt()), (5, 16.0)] {
        let poly = mermin_polynomial(n).map_err(err)?;
        let state = run_circuit(&ghz_preparation(n).map_err(err)?, StateVector::zero(n).map_err(err)?).map_err(err)?;
        let exact = poly.exact_value(&state).map_err(err)?;
        let report = mermin_test(n, MerminMode::PerTerm, &Device::ideal(), &defaults()).map_err(err)?;
        let m = report.quantity(&format!("<M{n}>")).ok_or("missing <M>")?;
        let excess = if m.std == 0.0 {
            if m.mean > poly.lr_bound {
                f64::INFINITY
            } else {
                0.0
            }
        } else {
            (m.mean - poly.lr_bound) / m.std
        };
        ok &= (exact - qm).abs() < 1e-9 && excess >= 5.0;
        parts.push(format!(
            "n={n}: exact {exact:.9} (QM {qm:.6}), sampled {:.4} +- {:.4} vs LR {} ({excess:.1} sigma)",
            m.mean, m.std, poly.lr_bound
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < budget;
    parts.push(format!("{elapsed:.2?}"));
    Ok(verdict(ok, parts.join("; ")))
}

fn deterministic_protocols() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, m) in ["00", "01", "10", "11"].iter().enumerate() {
        let p = exact_distribution(&dense_coding_circuit(m).map_err(err)?).map_err(err)?;
        worst = worst.max((p[i] - 1.0).abs());
    }
    for (input, expected) in [("000", 0b000usize), ("011", 0b101)] {
        let p = exact_distribution(&qft_verification_circuit(input).map_err(err)?).map_err(err)?;
        worst = worst.max((p[expected] - 1.0).abs());
    }
    Ok(verdict(
        worst < 1e-10,
        format!("dense coding 00/01/10/11 and QFT 000->000, 011->101; largest deviation from 1: {worst:.2e}"),
    ))
}

fn prime_state() -> Outcome {
    let circuit = prime_state_circuit();
    let state = run_circuit(&circuit.without_measurements(), StateVector::zero(4).map_err(err)?).map_err(err)?;
    // Ancilla in |0>, data qubits in (|2> + |3> + |5> + |7>)/2.
    let mut target = vec![Complex64::new(0.0, 0.0); 16];
    for k in [2, 3, 5, 7] {
        target[k] = Complex64::new(0.5, 0.0);
    }
    let overlap = state.overlap(&StateVector::from_amplitudes(target).map_err(err)?);
    let obs = exact_prime_observables(&state).map_err(err)?;
    let exact = [obs.sigma_z1.value, obs.sigma_x1.value, obs.xx_yy.value];
    let want = [-0.5, 0.5, 1.0];
    let exact_ok = exact.iter().zip(want).all(|(v, w)| (v - w).abs() < 1e-9);
    let report = prime_experiment(&Device::ideal(), &defaults()).map_err(err)?;
    let mut sampled_ok = true;
    let mut sampled = Vec::new();
    for (name, w) in ["<sz1>", "<sx1>", "<sx1sx2+sy1sy2>"].iter().zip(want) {
        let q = report.quantity(name).ok_or("missing observable")?;
        let k = sigmas(q.mean, w, q.std);
        sampled_ok &= k <= 3.0;
        sampled.push(format!("{name} {:.4} +- {:.4} ({k:.2} sigma)", q.mean, q.std));
    }
    Ok(verdict(
        (overlap - 1.0).abs() < 1e-10 && exact_ok && sampled_ok,
        format!(
            "overlap {overlap:.12}; exact {:.6} {:.6} {:.6}; sampled {}",
            exact[0],
            exact[1],
            exact[2],
            sampled.join(", ")
        ),
    ))
}

fn is_prime(k: u64) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

fn prime_formulas(budget: Duration) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut failures = Vec::new();
    for n in 3..=10usize {
        let limit = (1u64 << n) - 1;
        let counts = prime_counts(limit).map_err(err)?;
        let brute_pi = (2..=limit).filter(|&k| is_prime(k)).count() as u64;
        if counts.pi != brute_pi || counts.pi != counts.pi41 + counts.pi43 + 1 {
            ok = false;
            failures.push(format!("n={n}: sieve count {} vs trial division {brute_pi}", counts.pi));
        }
        let theory = prime_theory(&counts);
        let obs = exact_prime_observables(&direct_prime_state(n).map_err(err)?).map_err(err)?;
        for (name, got, want) in [
            ("sz1", obs.sigma_z1.value, theory.sigma_z1.value),
            ("sx1", obs.sigma_x1.value, theory.sigma_x1.value),
            ("xx+yy", obs.xx_yy.value, theory.xx_yy.value),
        ] {
            if (got - want).abs() >= 1e-10 {
                ok = false;
                failures.push(format!("n={n} {name}: state {got:.6} vs closed form {want:.6}"));
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed < budget;
    let detail = if failures.is_empty() {
        format!("all three closed forms match for n = 3..10; {elapsed:.2?}")
    } else {
        format!("{}; {elapsed:.2?}", failures.join("; "))
    };
    Ok(verdict(ok, detail))
}

fn permutation(n: usize, f: impl Fn(usize) -> usize) -> Matrix {
    Matrix::permutation(1 << n, f)
}

fn diagonal(n: usize, f: impl Fn(usize) -> Complex64) -> Matrix {
    let mut m = Matrix::identity(1 << n);
    for j in 0..1 << n {
        m[(j, j)] = f(j);
    }
    m
}

fn transpiler() -> Outcome {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut r = rng::stream(SEED);
    let mut rewrite_failures = 0;
    let u = |gates: Vec<Gate>| full_unitary(&Circuit::from_gates(3, gates).unwrap()).unwrap();
    for _ in 0..50 {
        let mut q: Vec<usize> = (0..3).collect();
        q.shuffle(&mut r);
        let (a, b, c) = (q[0], q[1], q[2]);
        let bit = |j: usize, k: usize| (j >> k) & 1;
        let lambda: f64 = r.gen_range(-std::f64::consts::TAU..std::f64::consts::TAU);
        let checks = [
            (u(reverse_cx(a, b).unwrap()), permutation(3, |j| j ^ (bit(j, a) << b))),
            (
                u(zero_controlled_cx(a, b).unwrap()),
                permutation(3, |j| j ^ ((1 - bit(j, a)) << b)),
            ),
            (
                u(swap_decomposition(a, b).unwrap()),
                permutation(3, |j| (j & !(1 << a) & !(1 << b)) | (bit(j, b) << a) | (bit(j, a) << b)),
            ),
            (
                u(cz_decomposition(a, b).unwrap()),
                diagonal(3, |j| {
                    Complex64::new(if bit(j, a) & bit(j, b) == 1 { -1.0 } else { 1.0 }, 0.0)
                }),
            ),
            (
                u(toffoli_decomposition(a, b, c).unwrap()),
                permutation(3, |j| j ^ ((bit(j, a) & bit(j, b)) << c)),
            ),
            (
                u(decompose_crz(a, b, lambda).unwrap()),
                diagonal(3, |j| {
                    Complex64::from_polar(1.0, if bit(j, a) & bit(j, b) == 1 { lambda } else { 0.0 })
                }),
            ),
        ];
        rewrite_failures += checks
            .iter()
            .filter(|(got, want)| !got.equals_up_to_phase(want, 1e-10))
            .count();
    }
    let mut worst_tv: f64 = 0.0;
    let mut routing_failures = 0;
    for name in ["ibmqx2", "ibmqx4"] {
        let map = fiveq::coupling::builtin_map(name).map_err(err)?;
        for k in 0..100 {
            let mut c = Circuit::random(4, 40, rng::derive(SEED, k));
            c.measure_all().map_err(err)?;
            let physical = simplify(&route(&c, &map).map_err(err)?.circuit);
            let want = exact_distribution(&c).map_err(err)?;
            let got = execute(&physical, 100_000, rng::derive(SEED + 1, k))
                .map_err(err)?
                .distribution();
            let tv = total_variation(&want, &got);
            worst_tv = worst_tv.max(tv);
            routing_failures += usize::from(tv >= 0.01);
        }
    }
    Ok(verdict(
        rewrite_failures == 0 && routing_failures == 0,
        format!(
            "{rewrite_failures} of 300 rewrite checks failed; {routing_failures} of 200 routed circuits off; \
             worst TV {worst_tv:.4}"
        ),
    ))
}

fn calibration() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/targets/dense-coding");
    let device = device_for("ibmqx4", NoiseModel::ideal()).map_err(err)?;
    let targets = load_targets(&dir, &device).map_err(err)?;
    let fit = fit_noise(&targets, &default_grid(), 2048, SEED).map_err(err)?;
    let m = fit.model;
    let mut detail = format!(
        "best fit p1 = {}, p2 = {}, p_read = {}; RMS residual {:.4} over 16 cells",
        m.p1, m.p2, m.p_read, fit.residual
    );
    if fit.residual > 0.10 {
        detail.push_str(" (WARNING: above 0.10)");
    }
    let fitted = Device::new("ibmqx4", device.coupling.clone(), m);
    let bell = bell_experiment(&fitted, &defaults()).map_err(err)?;
    let s = bell.quantity("|P(a,b)-P(a,c)|-P(b,c)").ok_or("missing statistic")?;
    detail.push_str(&format!(
        "; Bell under fitted noise {:.3} +- {:.3} (hardware 1.182 +- 0.020)",
        s.mean, s.std
    ));
    Ok(verdict(true, detail))
}

fn determinism() -> Outcome {
    let mut mismatches = Vec::new();
    for e in Experiment::ALL {
        let mut c = RunConfig::new(e);
        c.backend = String::from(if e == Experiment::Mermin { "ibmqx2" } else { "ibmqx4" });
        c.noise = NoiseModel::new(0.005, 0.03, 0.04).map_err(err)?;
        c.seed = SEED;
        c.shots = 2048;
        c.n = 4;
        let a = to_json(&run(&c).map_err(err)?).map_err(err)?;
        let b = to_json(&run(&c).map_err(err)?).map_err(err)?;
        if a != b {
            mismatches.push(e.name());
        }
    }
    let cli = || {
        Command::new(env!("CARGO_BIN_EXE_fiveq"))
            .args(["run", "bell", "--backend", "ibmqx4", "--seed", "7", "--shots", "1024"])
            .output()
            .map(|o| o.stdout)
    };
    let (x, y) = (cli().map_err(err)?, cli().map_err(err)?);
    if x.is_empty() || x != y {
        mismatches.push("cli");
    }
    Ok(verdict(
        mismatches.is_empty(),
        if mismatches.is_empty() {
            String::from("JSON byte-identical for all five experiments and across CLI invocations")
        } else {
            format!("differing output: {}", mismatches.join(", "))
        },
    ))
}

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        ("ideal Bell statistic", Box::new(|| bell(Duration::from_secs(1)))),
        ("ideal Mermin values", Box::new(|| mermin(Duration::from_secs(5)))),
        ("dense coding and QFT outcomes", Box::new(deterministic_protocols)),
        ("prime state", Box::new(prime_state)),
        (
            "prime-counting closed forms",
            Box::new(|| prime_formulas(Duration::from_secs(10))),
        ),
        ("transpiler soundness", Box::new(transpiler)),
        ("noise calibration (soft)", Box::new(calibration)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
        failed += usize::from(!v.passed);
        println!(
            "criterion {} [{}] {name}: {}",
            i + 1,
            if v.passed { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
