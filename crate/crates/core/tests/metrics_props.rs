use edgeworth_lab::metrics::*;
use proptest::prelude::*;

/// Largest `|ΔF̂ - ΔF|` over every pair of grid points.
fn brute_force(approx: &CdfGrid, exact: &CdfGrid) -> f64 {
    let d: Vec<f64> = approx
        .values()
        .iter()
        .zip(exact.values())
        .map(|(a, b)| a - b)
        .collect();
    let mut best = 0.0f64;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            best = best.max((d[j] - d[i]).abs());
        }
    }
    best
}

fn cdf_fixture(weights: &[f64]) -> CdfGrid {
    let xs = uniform_grid(2001, DEFAULT_CLIP);
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    let values = (0..xs.len())
        .map(|i| {
            if i > 0 {
                acc += weights[(i - 1) % weights.len()] / total * (weights.len() as f64 / 2000.0);
            }
            acc
        })
        .collect();
    CdfGrid::new(xs, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn range_of_difference_equals_brute_force(
        a in prop::collection::vec(0.0..1.0f64, 1..40),
        b in prop::collection::vec(0.0..1.0f64, 1..40),
    ) {
        let (ga, gb) = (cdf_fixture(&a), cdf_fixture(&b));
        let e = max_interval_error(&ga, &gb).unwrap();
        prop_assert_eq!(e.error, brute_force(&ga, &gb));
        prop_assert!(e.a <= e.b);
    }

    #[test]
    fn swapping_arguments_keeps_the_value(
        a in prop::collection::vec(0.0..1.0f64, 1..40),
        b in prop::collection::vec(0.0..1.0f64, 1..40),
    ) {
        let (ga, gb) = (cdf_fixture(&a), cdf_fixture(&b));
        let e1 = max_interval_error(&ga, &gb).unwrap();
        let e2 = max_interval_error(&gb, &ga).unwrap();
        prop_assert_eq!(e1.error, e2.error);
        prop_assert_eq!((e1.a, e1.b), (e2.a, e2.b));
    }
}

#[test]
fn smooth_densities_against_brute_force() {
    let p = cdf_on_grid(|x| 0.75 * (1.0 - x * x), 2001, DEFAULT_CLIP).unwrap();
    let q = cdf_on_grid(|x| 0.5 + 0.4 * x * (1.0 - x * x), 2001, DEFAULT_CLIP).unwrap();
    assert_eq!(
        max_interval_error(&p, &q).unwrap().error,
        brute_force(&p, &q)
    );
}
