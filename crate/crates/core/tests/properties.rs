use num_complex::Complex64;
use proptest::prelude::*;
use weil_core::numerics::{Domain, Grid, GridFunction};
use weil_core::special_fn::{log_gamma, omega_profile, theta_xi, xi};
use weil_core::weil_form::{gram_matrix, hermitian_min_eigenvalue, weil_pairing, TestFunction};
use weil_core::zero_catalog::{format_zeros, iterate_symmetric, load_zeros, parse_zeros, ZeroSet};
use weil_core::Exec;

const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/zeros_first_30.txt");

fn zeros(t: f64) -> ZeroSet {
    load_zeros(TABLE, t).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bump() -> impl Strategy<Value = TestFunction> {
    (-2.0..2.0f64, 0.2..1.5f64).prop_map(|(c, w)| TestFunction::bump(c, w).unwrap())
}

fn combination() -> impl Strategy<Value = TestFunction> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, bump()), 1..4)
        .prop_map(|terms| TestFunction::combination(terms.into_iter().map(|(a, b, f)| (c(a, b), f)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_is_unimodular_on_the_line(x in -800.0..800.0f64) {
        let v = theta_xi(c(x, 0.0)).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-11, "{x}: {}", v.norm());
    }

    #[test]
    fn theta_contracts_in_upper_half_plane(x in -200.0..200.0f64, y in 0.01..5.0f64) {
        prop_assert!(theta_xi(c(x, y)).unwrap().norm() < 1.0);
    }

    #[test]
    fn xi_is_real_on_critical_line(t in -60.0..60.0f64) {
        let v = xi(c(0.5, t)).xi;
        prop_assert!(v.im.abs() <= 1e-10 * (1.0 + v.re.abs()));
    }

    #[test]
    fn xi_conjugate_symmetry(s in -3.0..4.0f64, t in -40.0..40.0f64) {
        let a = xi(c(s, t)).xi;
        let b = xi(c(s, -t)).xi.conj();
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-300));
    }

    #[test]
    fn log_gamma_recurrence(re in 0.1..30.0f64, im in -50.0..50.0f64) {
        let z = c(re, im);
        let lhs = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln()).exp();
        prop_assert!((lhs - 1.0).norm() < 1e-11);
    }

    #[test]
    fn omega_is_even(x in 0.0..0.5f64) {
        let a = omega_profile(x).unwrap();
        let b = omega_profile(-x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn symmetric_iteration(t in 10.0..100.0f64) {
        let zs = zeros(100.0).truncate_to(t).unwrap();
        let sym = iterate_symmetric(&zs);
        prop_assert_eq!(sym.len(), 2 * zs.len());
        prop_assert!(sym.windows(2).all(|w| w[0].0 < w[1].0));
        for i in 0..sym.len() {
            prop_assert_eq!(sym[i].0, -sym[sym.len() - 1 - i].0);
            prop_assert_eq!(sym[i].1, sym[sym.len() - 1 - i].1);
        }
    }

    #[test]
    fn zero_table_round_trip(mut v in prop::collection::vec(1.0..99.0f64, 1..20)) {
        v.sort_by(f64::total_cmp);
        v.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        let text: String = v.iter().map(|g| format!("{g:.12}\n")).collect();
        let zs = parse_zeros(&text, 100.0).unwrap();
        prop_assert_eq!(format_zeros(&zs), text);
    }

    #[test]
    fn grid_spec_round_trip(a in -1e3..1e3f64, w in 1e-3..1e3f64, n in 2usize..5000) {
        let g = Grid::parse_spec(&format!("{a}:{}:{n}", a + w)).unwrap();
        prop_assert_eq!(g.len(), n);
        prop_assert_eq!(g.node(0), a);
        prop_assert!((g.node(n - 1) - (a + w)).abs() <= 1e-9 * (1.0 + a.abs() + w));
    }

    #[test]
    fn csv_round_trip(vals in prop::collection::vec((-1e6..1e6f64, -1e6..1e6f64), 2..64)) {
        let g = Grid::new(-1.5, 2.5, vals.len()).unwrap();
        let f = GridFunction::new(g, vals.iter().map(|&(a, b)| c(a, b)).collect(), Domain::Frequency).unwrap();
        let back = GridFunction::from_csv_str(&f.to_csv_string(), Domain::Frequency).unwrap();
        prop_assert_eq!(back.values(), f.values());
        prop_assert!(back.grid().same_as(f.grid()));
    }

    #[test]
    fn exec_policies_agree(n in 0usize..500) {
        let f = |i: usize| (i as f64).sin();
        prop_assert_eq!(Exec::Parallel.map_range(n, f), Exec::Sequential.map_range(n, f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn gram_matrix_is_psd(nodes in prop::collection::vec(-3.0..3.0f64, 2..12)) {
        let zs = zeros(100.0);
        let g = gram_matrix(&nodes, &zs);
        for i in 0..nodes.len() {
            for j in 0..nodes.len() {
                prop_assert!((g[(i, j)] - g[(j, i)].conj()).norm() < 1e-12);
            }
        }
        let (min, trace) = hermitian_min_eigenvalue(&g);
        prop_assert!(min >= -1e-8 * trace.max(1.0), "{min}");
    }

    #[test]
    fn weil_form_is_hermitian(a in combination(), b in combination()) {
        let zs = zeros(50.0);
        let ab = weil_pairing(&a, &b, &zs).unwrap();
        let ba = weil_pairing(&b, &a, &zs).unwrap();
        prop_assert!((ab.value() - ba.value().conj()).norm() <= 1e-9 * (1.0 + ab.value().norm()));
    }

    #[test]
    fn weil_form_is_sesquilinear(a in combination(), b in combination(), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let zs = zeros(50.0);
        let k = c(re, im);
        let base = weil_pairing(&a, &b, &zs).unwrap().value();
        let left = weil_pairing(&a.scaled(k), &b, &zs).unwrap().value();
        let right = weil_pairing(&a, &b.scaled(k), &zs).unwrap().value();
        let tol = 1e-9 * (1.0 + base.norm() * k.norm());
        prop_assert!((left - k * base).norm() <= tol);
        prop_assert!((right - k.conj() * base).norm() <= tol);
    }

    #[test]
    fn weil_form_is_nonnegative(a in combination()) {
        let zs = zeros(100.0);
        let w = weil_pairing(&a, &a, &zs).unwrap();
        prop_assert!(w.value().re >= -w.budget(), "{} (budget {})", w.value().re, w.budget());
        prop_assert!(w.value().im.abs() <= 1e-9 * (1.0 + w.value().re.abs()));
    }
}

#[test]
fn theta_at_origin() {
    let v = theta_xi(c(0.0, 0.0)).unwrap();
    assert!((v.norm() - 1.0).abs() < 1e-12);
}
