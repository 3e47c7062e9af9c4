//! End-to-end acceptance suite. Each test prints one pass/fail line; a
//! test reaching its final print has verified every assertion of its
//! criterion at the stated tolerance.

use simplex_orders::density::{
    joint_diagonalize, lift_compare, lowner_psd_leq, random_density, random_unitary, CMatrix,
    DensityMatrix, DEFAULT_MATRIX_TOL,
};
use simplex_orders::suite::{
    check_contradiction, check_degeneracy, check_information_ordering, check_measurement,
    region_scan, sample, Relation, SampleConfig, SampleStrategy,
};
use simplex_orders::{
    graded_leq, graded_sup_p, lowner_minus_leq, lowner_plus_leq, restricted_leq, ComparisonResult,
    Distribution, Measurement, OrderSpec, RestrictedParams,
};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn d(values: &[f64]) -> Distribution {
    Distribution::from_values(values).unwrap()
}

fn grid(n: usize, denominator: u32, boundary: bool) -> Vec<Distribution> {
    sample(&SampleConfig {
        n,
        strategy: SampleStrategy::Grid { denominator },
        include_boundary: boundary,
    })
}

fn random_pool(n: usize, count: usize, seed: u64) -> Vec<Distribution> {
    sample(&SampleConfig {
        n,
        strategy: SampleStrategy::Random { count, seed },
        include_boundary: false,
    })
}

/// The six order specs under test, instantiated at dimension `n`.
fn six_specs(n: usize) -> Vec<OrderSpec> {
    vec![
        OrderSpec::LownerPlus,
        OrderSpec::LownerMinus,
        OrderSpec::Bayesian,
        OrderSpec::Restricted(RestrictedParams::zeros(n)),
        OrderSpec::Restricted(RestrictedParams::from_a10_a13(n, 0.0, 1.0)),
        OrderSpec::Majorization,
    ]
}

/// The leading-parameter grid intersected with the validity constraints.
fn valid_param_grid(n: usize) -> Vec<RestrictedParams> {
    let mut out = Vec::new();
    for a10 in [-0.4, 0.0, 1.0, 10.0] {
        for a13 in [-0.5, 0.0, 1.0, 10.0] {
            let p = RestrictedParams::from_a10_a13(n, a10, a13);
            if p.is_valid() {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn criterion_01_axiom_suite_on_grids_and_random_pools() {
    let started = Instant::now();
    let boundary_grid = grid(3, 10, true);
    assert_eq!(boundary_grid.len(), 66);
    for spec in six_specs(3) {
        let report = check_information_ordering(&spec, &boundary_grid).unwrap();
        assert!(
            report.passed(),
            "{spec} fails on the boundary grid: {:?}",
            report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .collect::<Vec<_>>()
        );
    }

    for n in 2..=5 {
        let pool = random_pool(n, 10_000, 0x5EED + n as u64);
        for spec in six_specs(n) {
            let report = check_information_ordering(&spec, &pool).unwrap();
            assert!(
                report.passed(),
                "{spec} fails on the random pool at n = {n}: {:?}",
                report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .collect::<Vec<_>>()
            );
        }
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 240,
        "axiom suite took {elapsed:?}, exceeding the runtime budget"
    );
    println!(
        "criterion 01 axiom suite (6 orders, boundary grid + 4 random pools): PASS ({:.1?})",
        elapsed
    );
}

#[test]
fn criterion_02_contradiction_pair_between_the_renormalised_orders() {
    let x = d(&[0.6, 0.2, 0.2]);
    let y = d(&[0.5, 1.0 / 3.0, 1.0 / 6.0]);

    // strict in opposite directions, per the defining inequalities
    assert!(lowner_plus_leq(&y, &x).unwrap());
    assert!(!lowner_plus_leq(&x, &y).unwrap());
    assert!(lowner_minus_leq(&x, &y).unwrap());
    assert!(!lowner_minus_leq(&y, &x).unwrap());

    // the checker reports exactly this pair on a pool containing it
    let mut pool = grid(3, 10, true);
    pool.push(y.clone());
    let report = check_contradiction(&OrderSpec::LownerPlus, &OrderSpec::LownerMinus, &pool).unwrap();
    let outcome = &report.checks[0];
    assert_eq!(outcome.violation_count, 1, "{:?}", outcome.violations);
    let witnesses = &outcome.violations[0].witnesses;
    let linf = |w: &[f64], p: &Distribution| {
        w.iter()
            .zip(p.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    assert!(linf(&witnesses[0], &y) < 1e-12);
    assert!(linf(&witnesses[1], &x) < 1e-12);

    println!("criterion 02 contradiction pair: PASS");
}

#[test]
fn criterion_03_bayesian_equals_zero_parameter_restricted() {
    for (n, denominator, points) in [(3usize, 12u32, 91usize), (4, 6, 84)] {
        let pts = grid(n, denominator, true);
        assert_eq!(pts.len(), points);
        let bayes = OrderSpec::Bayesian;
        let zero = OrderSpec::Restricted(RestrictedParams::zeros(n));
        let mut disagreements = 0u64;
        for x in &pts {
            for y in &pts {
                if bayes.leq(x, y).unwrap() != zero.leq(x, y).unwrap() {
                    disagreements += 1;
                }
            }
        }
        assert_eq!(disagreements, 0, "n = {n}");
    }
    println!("criterion 03 bayesian = restricted(0) on 91^2 and 84^2 ordered pairs: PASS");
}

#[test]
fn criterion_04_degeneracy_condition() {
    let pts3 = grid(3, 12, true);
    let pts4 = grid(4, 6, true);
    for n_pts in [&pts3, &pts4] {
        let n = n_pts[0].dim();
        for params in [
            RestrictedParams::zeros(n),
            RestrictedParams::from_a10_a13(n, 0.0, 1.0),
        ] {
            let report = check_degeneracy(&OrderSpec::Restricted(params), n_pts).unwrap();
            assert!(report.passed(), "restricted degeneracy violated at n = {n}");
        }
    }
    for spec in [OrderSpec::LownerPlus, OrderSpec::LownerMinus] {
        let report = check_degeneracy(&spec, &pts3).unwrap();
        let outcome = &report.checks[0];
        assert!(
            outcome.violation_count >= 1,
            "{spec} unexpectedly satisfies the degeneracy condition"
        );
        assert!(!outcome.violations.is_empty(), "witness not recorded");
    }
    println!("criterion 04 degeneracy: restricted orders clean, witnesses found for both renormalised orders: PASS");
}

#[test]
fn criterion_05_measurements_are_monotone_and_strict() {
    let pools = [grid(3, 12, true), grid(4, 6, true)];
    for pts in &pools {
        let n = pts[0].dim();

        let report = check_measurement(&OrderSpec::LownerPlus, Measurement::MuPlus, pts).unwrap();
        assert!(report.passed(), "mu-plus fails at n = {n}");

        let report = check_measurement(&OrderSpec::LownerMinus, Measurement::MuMinus, pts).unwrap();
        assert!(report.passed(), "mu-minus fails for lowner-minus at n = {n}");

        for params in valid_param_grid(n) {
            let spec = OrderSpec::Restricted(params);
            let report = check_measurement(&spec, Measurement::MuMinus, pts).unwrap();
            assert!(report.passed(), "mu-minus fails for {spec} at n = {n}");
        }

        let report =
            check_measurement(&OrderSpec::LownerPlus, Measurement::ShannonEntropy, pts).unwrap();
        assert!(report.passed(), "entropy not monotone for lowner-plus at n = {n}");
    }
    println!("criterion 05 measurements (mu-plus, mu-minus over the parameter grid, entropy): PASS");
}

#[test]
fn criterion_06_no_contradictions_with_restricted_orders() {
    let pools = [grid(3, 12, true), grid(4, 6, true)];
    for pts in &pools {
        let n = pts[0].dim();
        for params in valid_param_grid(n) {
            let restricted = OrderSpec::Restricted(params);
            for lowner in [OrderSpec::LownerPlus, OrderSpec::LownerMinus] {
                let report = check_contradiction(&lowner, &restricted, pts).unwrap();
                assert!(
                    report.passed(),
                    "{lowner} contradicts {restricted} at n = {n}: {:?}",
                    report.checks[0].violations
                );
            }
        }
    }
    println!("criterion 06 non-contradiction with every tested restricted order: PASS");
}

#[test]
fn criterion_07_unique_order_on_the_two_dimensional_simplex() {
    let pts = grid(2, 32, true);
    assert_eq!(pts.len(), 33);
    let specs = six_specs(2);
    for x in &pts {
        for y in &pts {
            let results: Vec<ComparisonResult> = specs
                .iter()
                .map(|spec| spec.compare(x, y).unwrap())
                .collect();
            assert!(
                results.windows(2).all(|w| w[0] == w[1]),
                "orders disagree on {:?} vs {:?}: {results:?}",
                x.values(),
                y.values()
            );
        }
    }
    println!("criterion 07 unique order on the 2-simplex (6 specs, 33x33 pairs): PASS");
}

#[test]
fn criterion_08_region_scans_nest_with_the_parameters() {
    let started = Instant::now();
    let base = d(&[0.5, 1.0 / 3.0, 1.0 / 6.0]);
    let resolution = 200;

    // lower parameters shrink the order, higher ones widen it; the stated
    // low corner (-0.4, -0.5) violates the validity constraints, so the
    // tail coefficient is raised to the nearest round valid value
    let low = RestrictedParams::from_a10_a13(3, -0.4, 0.25);
    assert!(low.is_valid());
    assert!(!RestrictedParams::from_a10_a13(3, -0.4, -0.5).is_valid());
    let high = RestrictedParams::from_a10_a13(3, 10.0, 10.0);

    let scan_low = region_scan(&OrderSpec::Restricted(low), &base, resolution).unwrap();
    let scan_bayes = region_scan(&OrderSpec::Bayesian, &base, resolution).unwrap();
    let scan_high = region_scan(&OrderSpec::Restricted(high), &base, resolution).unwrap();

    let nested = |inner: &[usize], outer: &[usize]| -> usize {
        let outer: std::collections::BTreeSet<_> = outer.iter().collect();
        inner.iter().filter(|k| !outer.contains(k)).count()
    };
    for relation in [Relation::Up, Relation::Down] {
        let low_cells = scan_low.region(relation);
        let bayes_cells = scan_bayes.region(relation);
        let high_cells = scan_high.region(relation);
        assert_eq!(
            nested(&low_cells, &bayes_cells),
            0,
            "{relation:?}: low order escapes the bayesian region"
        );
        assert_eq!(
            nested(&bayes_cells, &high_cells),
            0,
            "{relation:?}: bayesian order escapes the high-parameter region"
        );
        assert!(low_cells.len() < bayes_cells.len() && bayes_cells.len() < high_cells.len());
    }

    // the marked point is comparable to the base under the plus-renormalised order
    let scan_plus = region_scan(&OrderSpec::LownerPlus, &base, resolution).unwrap();
    let cell = scan_plus
        .cells
        .iter()
        .find(|c| (c.a - 0.6).abs() < 1e-9 && (c.b - 0.2).abs() < 1e-9)
        .expect("cell (0.6, 0.2, 0.2) is on the grid");
    assert_eq!(cell.relation, Relation::Up);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "scans took {elapsed:?}");
    println!("criterion 08 region scans nest at resolution 200: PASS ({elapsed:.1?})");
}

#[test]
fn criterion_09_density_layer() {
    // (a) diagonal embedding agrees with the simplex comparison
    for n in 2..=4usize {
        let xs = random_pool(n, 1000, 0xD1A6 + n as u64);
        let ys = random_pool(n, 1000, 0xD1A7 + n as u64);
        let specs = six_specs(n);
        for (x, y) in xs.iter().zip(&ys) {
            let dx = DensityMatrix::from_diag(x);
            let dy = DensityMatrix::from_diag(y);
            for spec in &specs {
                assert_eq!(
                    lift_compare(spec, &dx, &dy, DEFAULT_MATRIX_TOL).unwrap(),
                    spec.compare(x, y).unwrap(),
                    "diagonal consistency broken for {spec} at n = {n}"
                );
            }
        }
    }

    // (b) unitary invariance of the lifted comparison
    let mut rng = ChaCha8Rng::seed_from_u64(0x1A5E);
    let n = 3;
    let v = random_unitary(n, &mut rng);
    let spectra = (
        d(&[0.5, 0.3, 0.2]),
        d(&[0.7, 0.2, 0.1]),
    );
    let rho = DensityMatrix::from_diag(&spectra.0).conjugate(&v);
    let pi = DensityMatrix::from_diag(&spectra.1).conjugate(&v);
    let specs = six_specs(n);
    let baseline: Vec<ComparisonResult> = specs
        .iter()
        .map(|s| lift_compare(s, &rho, &pi, DEFAULT_MATRIX_TOL).unwrap())
        .collect();
    for _ in 0..100 {
        let u = random_unitary(n, &mut rng);
        let rho_u = rho.conjugate(&u);
        let pi_u = pi.conjugate(&u);
        for (spec, expected) in specs.iter().zip(&baseline) {
            assert_eq!(
                lift_compare(spec, &rho_u, &pi_u, DEFAULT_MATRIX_TOL).unwrap(),
                *expected,
                "unitary invariance broken for {spec}"
            );
        }
    }

    // (c) the raw Löwner order is trivial on density matrices
    let mut rng = ChaCha8Rng::seed_from_u64(0x70FA);
    for _ in 0..1000 {
        let a = random_density(3, &mut rng);
        let b = random_density(3, &mut rng);
        assert!(!lowner_psd_leq(a.matrix(), b.matrix(), 1e-10).unwrap());
        assert!(!lowner_psd_leq(b.matrix(), a.matrix(), 1e-10).unwrap());
    }

    // (d) the worked commuting pair
    let rho = DensityMatrix::from_matrix(CMatrix::from_fn(2, 2, |i, j| {
        Complex64::new(if i == j { 0.5 } else { 0.2 }, 0.0)
    }))
    .unwrap();
    let pi = DensityMatrix::from_matrix(CMatrix::from_fn(2, 2, |i, j| {
        Complex64::new(if i == j { 0.5 } else { -0.1 }, 0.0)
    }))
    .unwrap();
    let jd = joint_diagonalize(&rho, &pi, DEFAULT_MATRIX_TOL).unwrap();
    let mut pairs: Vec<(f64, f64)> = jd
        .rho_eigs
        .values()
        .iter()
        .zip(jd.pi_eigs.values())
        .map(|(&a, &b)| (a, b))
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    assert!((pairs[0].0 - 0.7).abs() < 1e-10 && (pairs[0].1 - 0.4).abs() < 1e-10);
    assert!((pairs[1].0 - 0.3).abs() < 1e-10 && (pairs[1].1 - 0.6).abs() < 1e-10);
    for spec in six_specs(2) {
        assert_eq!(
            lift_compare(&spec, &rho, &pi, DEFAULT_MATRIX_TOL).unwrap(),
            ComparisonResult::Incomparable,
            "worked pair should be incomparable under {spec}"
        );
    }

    println!("criterion 09 density layer (diagonal consistency, unitary invariance, Löwner triviality, worked pair): PASS");
}

/// Independent oracle: bisect the supremal scaling factor directly on the
/// head and tail ratios of the two distributions.
fn bisection_oracle_bayesian_sup_p(x: &[f64], y: &[f64]) -> f64 {
    let feature = |v: &[f64]| [v[0] / v[1], v[1] / v[2]];
    let (fx, fy) = (feature(x), feature(y));
    let holds = |p: f64| fx.iter().zip(&fy).all(|(a, b)| p * a <= b + 1e-12);
    assert!(holds(0.0));
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if holds(1.0) {
        return 1.0;
    }
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_10_graded_entailment() {
    let x = d(&[0.6, 0.25, 0.15]);
    let y = d(&[0.65, 0.3, 0.05]);

    let oracle = bisection_oracle_bayesian_sup_p(x.values(), y.values());
    assert!(
        (0.9027..=0.9029).contains(&oracle),
        "oracle sup-p = {oracle}"
    );
    // analytic value: the binding head ratio gives (13/6) / 2.4
    assert!((oracle - 13.0 / 14.4).abs() < 1e-6);

    let sup = graded_sup_p(&OrderSpec::Bayesian, &x, &y).unwrap().unwrap();
    assert!(
        (0.9027..=0.9029).contains(&sup),
        "implementation sup-p = {sup}"
    );
    assert!((sup - oracle).abs() < 2e-6);

    assert!(!graded_leq(&OrderSpec::Bayesian, 1.0, &x, &y).unwrap());

    // the widened restricted order relates the pair outright
    let wide = RestrictedParams::from_a10_a13(3, 0.0, 1.0);
    assert!(restricted_leq(&wide, &x, &y).unwrap());

    println!("criterion 10 graded entailment (sup-p = {sup:.6}): PASS");
}
