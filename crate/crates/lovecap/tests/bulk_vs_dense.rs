//! The truncated bulk expansions (f and the resolvent) against the dense
//! Nystrom solution inside their validity windows, plus the moment series.

use num_complex::Complex64;

use lovecap::constants::ConstantsRegistry;
use lovecap::lieb_liniger::{Backend, LiebLiniger};
use lovecap::love::{moment, resolvent_numeric, solve_love, SeparationKappa};
use lovecap::matching::{f_bulk_eval, resolvent_bulk_eval, run_matching, t2_series_from_table};

fn kappa(v: f64) -> SeparationKappa {
    SeparationKappa::new(v).unwrap()
}

#[test]
fn bulk_f_converges_to_dense_solution() {
    let reg = ConstantsRegistry::new(50);
    let table = run_matching(&reg, 7).unwrap();
    let k = 0.05;
    let sol = solve_love(kappa(k), 1e-10).unwrap();
    let dense = sol.f_at(0.0);
    let mut errs = Vec::new();
    for order in [0, 1, 2] {
        let bulk = f_bulk_eval(&table, 0.0, kappa(k), order).unwrap();
        errs.push((bulk - dense).abs() / dense);
    }
    println!("f bulk rel errs at x=0, kappa=0.05: {errs:?}");
    // Spec example: order 2 within 1e-3 relative; convergence with order.
    assert!(errs[2] < 1e-3, "{errs:?}");
    assert!(errs[2] < errs[0], "{errs:?}");
    // Symmetry after the real reduction.
    let plus = f_bulk_eval(&table, 0.4, kappa(k), 2).unwrap();
    let minus = f_bulk_eval(&table, -0.4, kappa(k), 2).unwrap();
    assert!((plus - minus).abs() <= 1e-12 * plus.abs());
    // Leading order is sqrt(1-x^2)/kappa.
    let lead = f_bulk_eval(&table, 0.3, kappa(0.01), 0).unwrap();
    let expected = (1.0f64 - 0.09).sqrt() / 0.01;
    assert!((lead - expected).abs() / expected < 0.05, "{lead} vs {expected}");
    // Outside the window the evaluator refuses.
    assert!(f_bulk_eval(&table, 0.9999, kappa(0.05), 2).is_err());
}

#[test]
fn bulk_resolvent_converges_to_dense_resolvent() {
    let reg = ConstantsRegistry::new(50);
    let table = run_matching(&reg, 7).unwrap();
    let k = 0.1;
    let sol = solve_love(kappa(k), 1e-10).unwrap();
    let z = Complex64::new(2.0, 0.0);
    let dense = resolvent_numeric(&sol, z).unwrap();
    let mut errs = Vec::new();
    for order in [0, 2, 5] {
        let bulk = resolvent_bulk_eval(&table, z, kappa(k), order).unwrap();
        errs.push((bulk - dense).norm() / dense.norm());
    }
    println!("resolvent bulk rel errs at z=2, kappa=0.1: {errs:?}");
    assert!(errs[2] < 1e-4, "{errs:?}");
    assert!(errs[2] < errs[0], "{errs:?}");
    // Schwarz reflection with the principal branch.
    let zc = Complex64::new(2.2, 0.8);
    let a = resolvent_bulk_eval(&table, zc, kappa(k), 5).unwrap();
    let b = resolvent_bulk_eval(&table, zc.conj(), kappa(k), 5).unwrap();
    assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
    // Large-z tail: z R(z) -> T_0.
    let zfar = Complex64::new(50.0, 0.0);
    let r = resolvent_bulk_eval(&table, zfar, kappa(k), 5).unwrap();
    let t0 = moment(&sol, 0);
    assert!((zfar.re * r.re - t0).abs() / t0 < 1e-3);
    // Inside an edge disk the evaluator refuses.
    assert!(resolvent_bulk_eval(&table, Complex64::new(1.0005, 0.0), kappa(k), 2).is_err());
}

#[test]
fn t2_series_tracks_dense_moment() {
    let reg = ConstantsRegistry::new(50);
    let table = run_matching(&reg, 7).unwrap();
    let t2 = t2_series_from_table(&reg, &table, 5).unwrap();
    let k = 0.1;
    let sol = solve_love(kappa(k), 1e-10).unwrap();
    let dense = moment(&sol, 2);
    let series = t2.eval(k);
    println!("T2 at kappa=0.1: series {series} vs dense {dense}");
    assert!((series - dense).abs() < 1e-4, "{series} vs {dense}");
}

#[test]
fn t2_truncation_scales_like_next_order() {
    // The order-0 truncation misses first the kappa (L^2-2)/16pi term of the
    // m = 1 bracket; the measured deviation from the dense moment should
    // track that term within a factor of two at small kappa.
    let reg = ConstantsRegistry::new(50);
    let table = run_matching(&reg, 7).unwrap();
    let t2_order0 = t2_series_from_table(&reg, &table, 0).unwrap();
    for k in [0.05, 0.025] {
        let sol = solve_love(kappa(k), 1e-10).unwrap();
        let dense = moment(&sol, 2);
        let err = (t2_order0.eval(k) - dense).abs();
        let ell = (16.0 * core::f64::consts::PI / k).ln();
        let next = k * (ell * ell - 2.0) / (16.0 * core::f64::consts::PI);
        let ratio = err / next;
        println!("kappa={k}: t2 order-0 err {err:.4e}, next-term {next:.4e}, ratio {ratio:.3}");
        assert!(
            (0.5..2.0).contains(&ratio),
            "kappa={k}: deviation {err:.3e} vs next-order term {next:.3e}"
        );
    }
}

#[test]
fn energy_cross_backend_sweep() {
    // Beyond the single acceptance point: the two backends agree over a
    // range of couplings where both are valid.
    let ll = LiebLiniger::new(ConstantsRegistry::new(50));
    for gamma in [0.3, 1.0, 1.5] {
        let g = lovecap::lieb_liniger::CouplingGamma::new(gamma).unwrap();
        let a = ll.ground_state_energy(g, Backend::Nystrom).unwrap();
        let b = ll.ground_state_energy(g, Backend::SmallSeries).unwrap();
        println!("gamma={gamma}: nystrom {a}, small-series {b}, dev {:.2e}", (a - b).abs());
        assert!((a - b).abs() < 2e-4, "gamma={gamma}: {a} vs {b}");
    }
}
