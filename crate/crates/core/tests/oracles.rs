use edgeworth_lab::exact::*;
use edgeworth_lab::metrics::cdf_on_grid;

/// Composite Simpson on `[lo, hi]` with `panels` (even) subintervals.
fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let h = (hi - lo) / panels as f64;
    let inner: f64 = (1..panels)
        .map(|i| f(lo + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    h / 3.0 * (f(lo) + inner + f(hi))
}

#[test]
fn hypergeometric_matches_euler_integral() {
    // Γ(c)/(Γ(b)Γ(c-b)) ∫ t^(b-1) (1-t)^(c-b-1) (1-xt)^(-a) dt with a=b=1/2, c=5/2,
    // prefactor 3/4; t = s² removes the endpoint singularity.
    let x = 0.3;
    let integral = simpson(
        |s| 2.0 * (1.0 - s * s) / (1.0 - x * s * s).sqrt(),
        0.0,
        1.0,
        2000,
    );
    let expected = 0.75 * integral;
    let got = gauss_2f1(0.5, 0.5, 2.5, x).unwrap();
    assert!((got - expected).abs() < 1e-13, "{got} vs {expected}");
}

#[test]
fn hypergeometric_term_counts_stay_small_on_the_hotelling_range() {
    // |ρ| <= 0.9 keeps the argument (1 + ρr)/2 below 0.95.
    for &(n, bound) in &[(5u32, 500), (20, 50), (35, 50), (200, 50)] {
        let (_, terms) = gauss_2f1_with_terms(0.5, 0.5, n as f64 - 0.5, 0.95).unwrap();
        assert!(terms < bound, "n={n}: {terms} terms");
    }
}

#[test]
fn hotelling_reflection_symmetry() {
    for &(n, rho) in &[(35u32, -0.85), (20, 0.3), (8, 0.6)] {
        for &r in &[-0.95, -0.5, 0.0, 0.2, 0.77] {
            let a = hotelling_pdf_r(n, rho, r).unwrap();
            let b = hotelling_pdf_r(n, -rho, -r).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.max(1.0), "n={n} rho={rho} r={r}");
        }
    }
}

#[test]
fn hotelling_zero_rho_is_beta_shaped() {
    // (1-r²)^((n-4)/2) / B(1/2, (n-2)/2)
    let n = 12u32;
    let beta = (log_gamma(0.5).unwrap() + log_gamma(5.0).unwrap() - log_gamma(5.5).unwrap()).exp();
    for &r in &[0.0f64, 0.3, -0.7] {
        let expected = (1.0 - r * r).powi(4) / beta;
        assert!((hotelling_pdf_r(n, 0.0, r).unwrap() - expected).abs() < 1e-12);
    }
}

#[test]
fn hotelling_normalizes_for_small_n() {
    for &(n, rho) in &[(5u32, 0.5), (10, -0.9), (100, 0.2)] {
        let g = cdf_on_grid(|r| hotelling_pdf_r(n, rho, r).unwrap(), 8001, 1e-6).unwrap();
        // n = 5 has a (1-r²)^(1/2) edge, which costs Simpson some accuracy.
        assert!((g.total() - 1.0).abs() < 1e-5, "n={n}: {}", g.total());
    }
}

#[test]
fn monte_carlo_mean_at_zero_rho() {
    let cfg = McConfig {
        n: 100,
        rho: 0.0,
        replicates: 100_000,
        seed: 11,
    };
    let s = mc_sample_r(&cfg).unwrap();
    let mean = s.iter().sum::<f64>() / s.len() as f64;
    assert!(mean.abs() < 4.0 / (100.0 * 100_000.0f64).sqrt(), "{mean}");
}

#[test]
fn monte_carlo_does_not_depend_on_thread_count() {
    let cfg = McConfig {
        n: 12,
        rho: -0.4,
        replicates: 3 * MC_CHUNK + 17,
        seed: 5,
    };
    let parallel = mc_sample_r(&cfg).unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| mc_sample_r(&cfg).unwrap());
    assert_eq!(parallel, single);
}
