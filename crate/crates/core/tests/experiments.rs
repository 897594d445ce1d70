use fiveq_core::experiments::{
    bell_experiment, dense_coding_experiment, direct_prime_state, exact_prime_observables, ghz_preparation,
    mermin_test, prime_counts, prime_experiment, prime_state_circuit, prime_theory, qft_experiment, RunSettings,
};
use fiveq_core::noise::NoiseModel;
use fiveq_core::observables::{evaluate_mermin, exact_expectation, mermin_polynomial, MerminMode, Pauli, PauliString};
use fiveq_core::state::{run_circuit, sample, StateVector};
use fiveq_core::Device;

fn settings(shots: u64, runs: usize, seed: u64) -> RunSettings {
    RunSettings::new(shots, runs, seed).unwrap()
}

#[test]
fn bell_pair_counts_within_binomial_bounds() {
    let prep = fiveq_core::circuit::Circuit::from_gates(
        2,
        [fiveq_core::circuit::Gate::h(0), fiveq_core::circuit::Gate::cx(0, 1)],
    )
    .unwrap();
    let s = run_circuit(&prep, StateVector::zero(2).unwrap()).unwrap();
    let h = sample(&s, 8192, 5, &[0, 1]).unwrap();
    let bound = 3.0 * (8192.0f64 * 0.25).sqrt();
    for key in ["00", "11"] {
        assert!((h.count(key) as f64 - 4096.0).abs() <= bound);
    }
    assert_eq!(h.count("00") + h.count("11"), 8192);
}

#[test]
fn p3_counts_within_binomial_bounds() {
    let s = direct_prime_state(3).unwrap();
    let h = sample(&s, 8192, 8, &[0, 1, 2]).unwrap();
    let bound = 3.0 * (8192.0f64 * 0.1875).sqrt();
    for key in ["010", "011", "101", "111"] {
        assert!((h.count(key) as f64 - 2048.0).abs() <= bound, "{key}");
    }
    assert_eq!(h.count("001"), 0);
}

#[test]
fn mermin_terms_are_permutation_symmetric() {
    let state = run_circuit(&ghz_preparation(3).unwrap(), StateVector::zero(3).unwrap()).unwrap();
    let vals: Vec<f64> = ["YXX", "XYX", "XXY"]
        .iter()
        .map(|s| exact_expectation(&state, &PauliString::parse(s, 1.0).unwrap()).unwrap())
        .collect();
    assert!((vals[0] - 1.0).abs() < 1e-10);
    assert!(vals.iter().all(|v| (v - vals[0]).abs() < 1e-10));
    let yyy = exact_expectation(&state, &PauliString::parse("YYY", 1.0).unwrap()).unwrap();
    assert!((yyy + 1.0).abs() < 1e-10);
}

#[test]
fn mermin_exact_values_and_bounds() {
    for n in 3..=5 {
        let poly = mermin_polynomial(n).unwrap();
        let state = run_circuit(&ghz_preparation(n).unwrap(), StateVector::zero(n).unwrap()).unwrap();
        let v = poly.exact_value(&state).unwrap();
        assert!((v - poly.qm_value).abs() < 1e-9, "n={n}: {v}");
        assert!(v.abs() <= poly.coefficient_norm() + 1e-9);
        for t in &poly.terms {
            assert!(exact_expectation(&state, t).unwrap().abs() <= 1.0 + 1e-12);
        }
    }
}

/// Local realism: every factor is a fixed ±1 per measurement setting, so the
/// bound is the maximum over all 4^n deterministic assignments.
#[test]
fn mermin_local_realism_bounds_by_enumeration() {
    for n in 3..=5 {
        let poly = mermin_polynomial(n).unwrap();
        let mut best = f64::MIN;
        for assignment in 0..1usize << (2 * n) {
            let value = |q: usize, p: Pauli| -> f64 {
                let shift = 2 * q + usize::from(p == Pauli::Y);
                if assignment >> shift & 1 == 1 {
                    -1.0
                } else {
                    1.0
                }
            };
            let total: f64 = poly
                .terms
                .iter()
                .map(|t| t.coefficient() * (0..n).map(|q| value(q, t.factor(q))).product::<f64>())
                .sum();
            best = best.max(total);
        }
        assert_eq!(best, poly.lr_bound, "n={n}");
    }
}

#[test]
fn mermin_modes_agree_under_noise() {
    let poly = mermin_polynomial(4).unwrap();
    let prep = ghz_preparation(4).unwrap();
    let device = Device::ideal().with_noise(NoiseModel::new(0.01, 0.03, 0.02).unwrap());
    let a = evaluate_mermin(&poly, &prep, MerminMode::PerTerm, 4096, 1, &device).unwrap();
    let b = evaluate_mermin(&poly, &prep, MerminMode::Symmetric, 4096, 2, &device).unwrap();
    let sigma = (a.std * a.std + b.std * b.std).sqrt();
    assert!((a.value - b.value).abs() <= 3.0 * sigma, "{a:?} vs {b:?}");
    assert!(a.value < poly.qm_value);
}

#[test]
fn mermin_report_flags_violation() {
    for n in 3..=5 {
        let r = mermin_test(n, MerminMode::Symmetric, &Device::ideal(), &settings(2048, 3, 4)).unwrap();
        assert_eq!(r.flag("violation"), Some(true));
        let m = r.quantity(&format!("<M{n}>")).unwrap();
        assert!((m.mean - m.expected.unwrap()).abs() < 1e-9 || m.std > 0.0);
    }
}

#[test]
fn sigma_z_and_sigma_x_closed_forms_hold_to_ten_qubits() {
    for n in 3..=10 {
        let obs = exact_prime_observables(&direct_prime_state(n).unwrap()).unwrap();
        let theory = prime_theory(&prime_counts((1 << n) - 1).unwrap());
        assert!((obs.sigma_z1.value - theory.sigma_z1.value).abs() < 1e-10, "n={n}");
        assert!((obs.sigma_x1.value - theory.sigma_x1.value).abs() < 1e-10, "n={n}");
    }
}

/// `σx¹σx² + σy¹σy²` only exchanges `…011` and `…101`, so it counts twin pairs
/// with `p ≡ 3 (mod 8)`. That agrees with `4π₂⁽³⁾/π` until the first twin pair
/// with `p ≡ 7 (mod 8)`, which is (71, 73).
#[test]
fn xx_yy_counts_twins_three_mod_eight() {
    for n in 3..=10 {
        let limit = (1usize << n) - 1;
        let is_prime = |k: usize| k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d));
        let pi = (2..=limit).filter(|&k| is_prime(k)).count() as f64;
        let twins_3_mod_8 = (3..=limit.saturating_sub(2))
            .filter(|&p| p % 8 == 3 && is_prime(p) && is_prime(p + 2))
            .count() as f64;
        let obs = exact_prime_observables(&direct_prime_state(n).unwrap()).unwrap();
        assert!((obs.xx_yy.value - 4.0 * twins_3_mod_8 / pi).abs() < 1e-10, "n={n}");
        let stated = prime_theory(&prime_counts(limit as u64).unwrap()).xx_yy.value;
        assert_eq!((obs.xx_yy.value - stated).abs() < 1e-10, n <= 6, "n={n}");
    }
}

#[test]
fn prime_circuit_observables_exact() {
    let state = run_circuit(
        &prime_state_circuit().without_measurements(),
        StateVector::zero(4).unwrap(),
    )
    .unwrap();
    let obs = exact_prime_observables(&state).unwrap();
    assert!((obs.sigma_z1.value + 0.5).abs() < 1e-9);
    assert!((obs.sigma_x1.value - 0.5).abs() < 1e-9);
    assert!((obs.xx_yy.value - 1.0).abs() < 1e-9);
}

#[test]
fn experiments_are_deterministic() {
    let device = Device::ideal().with_noise(NoiseModel::new(0.01, 0.02, 0.03).unwrap());
    let s = settings(256, 2, 17);
    assert_eq!(
        dense_coding_experiment(&device, &s).unwrap(),
        dense_coding_experiment(&device, &s).unwrap()
    );
    assert_eq!(
        bell_experiment(&device, &s).unwrap(),
        bell_experiment(&device, &s).unwrap()
    );
    assert_eq!(
        prime_experiment(&device, &s).unwrap(),
        prime_experiment(&device, &s).unwrap()
    );
    assert_eq!(
        qft_experiment(&["000", "011"], &device, &s).unwrap(),
        qft_experiment(&["000", "011"], &device, &s).unwrap()
    );
    let other = settings(256, 2, 18);
    assert_ne!(
        bell_experiment(&device, &s).unwrap(),
        bell_experiment(&device, &other).unwrap()
    );
}

#[test]
fn ideal_reports_hit_expected_values() {
    let s = settings(1024, 3, 2);
    let dc = dense_coding_experiment(&Device::ideal(), &s).unwrap();
    for q in &dc.quantities {
        assert_eq!((q.mean, q.std), (1.0, 0.0), "{}", q.name);
    }
    let qft = qft_experiment(&["000", "011"], &Device::ideal(), &s).unwrap();
    assert!(qft.quantity("p_success[011->101]").is_some());
    assert!(qft.quantities.iter().all(|q| q.mean == 1.0));
    let bell = bell_experiment(&Device::ideal(), &s).unwrap();
    assert_eq!(bell.flag("violation"), Some(true));
}

/// Correct decoding never improves as any one noise rate grows.
#[test]
fn dense_coding_degrades_monotonically() {
    use fiveq_core::experiments::dense_coding;
    let shots = 100_000;
    let success = |m: NoiseModel| {
        let h = dense_coding("00", shots, 3, &Device::ideal().with_noise(m)).unwrap();
        h.frequency("00")
    };
    let axes: [fn(f64) -> NoiseModel; 3] = [
        |p| NoiseModel::new(p, 0.0, 0.0).unwrap(),
        |p| NoiseModel::new(0.0, p, 0.0).unwrap(),
        |p| NoiseModel::new(0.0, 0.0, p).unwrap(),
    ];
    for axis in axes {
        let values: Vec<f64> = [0.0, 0.02, 0.05, 0.1].iter().map(|&p| success(axis(p))).collect();
        for w in values.windows(2) {
            let allowance = 3.0 * (w[0] * (1.0 - w[0]) / shots as f64).sqrt().max(1.0 / shots as f64);
            assert!(w[1] <= w[0] + allowance, "{values:?}");
        }
    }
}
