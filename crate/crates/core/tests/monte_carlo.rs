use divorient::bounds::best_corollary5_bound;
use divorient::exact::{exact_expectation_polynomial, DEFAULT_EDGE_LIMIT};
use divorient::simulate::{frontier_ratio, run_grid, ExperimentConfig, SimRecord, Statistic};

fn lscc_grid(n_values: Vec<u32>, rho_values: Vec<f64>, samples: u32, seed: u64) -> Vec<SimRecord> {
    run_grid(&ExperimentConfig {
        n_values,
        rho_values,
        samples_per_cell: samples,
        master_seed: seed,
        statistic: Statistic::LsccSize,
    })
    .unwrap()
}

#[test]
fn small_cells_match_exact_polynomials() {
    let rhos = vec![0.1, 0.2, 0.3, 0.4, 0.5];
    let records = lscc_grid((1..=9).collect(), rhos, 100_000, 31);
    for r in &records {
        let p = exact_expectation_polynomial(r.n, DEFAULT_EDGE_LIMIT).unwrap();
        let exact = p.evaluate(r.rho);
        let se = r.std_error().max(1e-12);
        assert!(
            (r.mean - exact).abs() <= 4.0 * se,
            "N={} rho={}: mean {} exact {} se {}",
            r.n,
            r.rho,
            r.mean,
            exact,
            se
        );
    }
}

#[test]
fn rho_and_one_minus_rho_agree() {
    let lo = lscc_grid((2..=12).collect(), vec![0.1, 0.2, 0.3], 20_000, 5);
    let hi = lscc_grid((2..=12).collect(), vec![0.9, 0.8, 0.7], 20_000, 6);
    for (a, b) in lo.iter().zip(&hi) {
        assert_eq!(a.n, b.n);
        assert!(((a.rho + b.rho) - 1.0).abs() < 1e-12);
        let combined = (a.variance / f64::from(a.samples) + b.variance / f64::from(b.samples)).sqrt();
        assert!(
            (a.mean - b.mean).abs() < 5.0 * combined.max(1e-12),
            "N={} rho={}: {} vs {}",
            a.n,
            a.rho,
            a.mean,
            b.mean
        );
    }
}

#[test]
fn means_respect_primorial_bound() {
    let records = lscc_grid(vec![64, 256, 1024, 2048], vec![0.1, 0.3, 0.5], 20, 12);
    for r in &records {
        let b = best_corollary5_bound(u64::from(r.n), r.rho).unwrap();
        assert!(r.mean >= b.value - 4.0 * r.std_error(), "N={} rho={}", r.n, r.rho);
        assert!(r.mean >= 1.0 && r.mean <= f64::from(r.n));
    }
    for (_, ratio) in frontier_ratio(&records).unwrap() {
        assert!(ratio > 0.0 && ratio <= 1.0);
    }
}

#[test]
fn zero_rho_is_acyclic() {
    for r in lscc_grid(vec![10, 500, 3000], vec![0.0], 4, 0) {
        assert_eq!((r.mean, r.variance), (1.0, 0.0));
    }
}

#[test]
fn diameters_stay_in_range() {
    let records = run_grid(&ExperimentConfig {
        n_values: vec![1, 2, 50, 400],
        rho_values: vec![0.2, 0.5],
        samples_per_cell: 5,
        master_seed: 3,
        statistic: Statistic::Diameter,
    })
    .unwrap();
    for r in &records {
        assert!(r.mean >= 0.0 && r.mean <= f64::from(r.n - 1));
    }
    assert_eq!(records[0].mean, 0.0);
}
