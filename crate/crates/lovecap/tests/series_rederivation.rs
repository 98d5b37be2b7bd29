//! Cross-validation of the matching recursion against the hard-coded
//! small-separation series, coefficient by coefficient in the L basis.

use lovecap::constants::ConstantsRegistry;
use lovecap::logpoly::LogPoly;
use lovecap::matching::{capacitance_series_from_table, run_matching};
use lovecap::small_kappa::builtin_coefficients;

#[test]
fn rederived_series_matches_builtin_table() {
    let reg = ConstantsRegistry::new(50);
    let table = run_matching(&reg, 7).expect("order-7 recursion");
    let derived = capacitance_series_from_table(&reg, &table, 7).expect("series assembly");
    let builtin = builtin_coefficients(&reg);
    for j in -1..=7 {
        let got = derived.coefficient(j).unwrap();
        let expected = builtin.coefficient(j).unwrap();
        let diff = got - expected;
        // Relative, against the largest builtin coefficient of this order.
        let scale = 2f64.powi(expected.max_coeff_exponent().clamp(0, 60) as i32);
        let tol = if j <= 4 { 1e-30 } else { 1e-25 } * scale;
        let max_diff = diff
            .coeffs()
            .iter()
            .map(|c| c.abs().to_f64())
            .fold(0.0, f64::max);
        assert!(
            max_diff <= tol,
            "b_{j}: max coefficient deviation {max_diff:e} (tol {tol:e})\n  got {got}\n  expected {expected}"
        );
        println!("b_{j}: max deviation {max_diff:.3e} (tol {tol:.1e})");
    }
}
