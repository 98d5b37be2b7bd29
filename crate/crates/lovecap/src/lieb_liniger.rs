//! Ground-state energy of one-dimensional contact bosons via the moment
//! mapping onto the Love equation.
//!
//! The coupling maps as gamma = 2 pi kappa / T_0(kappa) and the dimensionless
//! energy density is e(gamma) = 4 pi^2 T_2 / T_0^3 evaluated at the matching
//! kappa. Everything here is numeric through the kappa-mapping; no
//! weak-coupling series is transcribed from elsewhere.

use std::sync::OnceLock;

use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::large_kappa::{capacitance_large_series, solve_large_system, MIN_SERIES_KAPPA};
use crate::love::{moment, solve_love, SeparationKappa, MAX_KAPPA, MIN_KAPPA};
use crate::matching::{run_matching, t2_series_from_table};
use crate::series::SeriesExpansion;
use crate::small_kappa::{builtin_coefficients, eval_small_kappa, SmallKappaSeries};

/// Positive dimensionless Lieb-Liniger coupling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingGamma(f64);

impl CouplingGamma {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::Domain(format!(
                "coupling gamma must be positive and finite, got {gamma}"
            )));
        }
        Ok(CouplingGamma(gamma))
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// Which route supplies the moments T_0 and T_2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Dense Love solve; valid across the whole supported kappa range.
    Nystrom,
    /// Small-separation series: the hard-coded capacitance table for T_0 and
    /// the matching-engine resolvent series for T_2.
    SmallSeries,
    /// Large-separation Legendre expansion.
    LargeSeries,
}

/// Validity window of each backend in kappa.
fn backend_range(backend: Backend) -> (f64, f64) {
    match backend {
        Backend::Nystrom => (MIN_KAPPA, MAX_KAPPA),
        Backend::SmallSeries => (1e-12, 1.0),
        Backend::LargeSeries => (MIN_SERIES_KAPPA, 1e12),
    }
}

/// Shared evaluation state for the mapping.
pub struct LiebLiniger {
    reg: ConstantsRegistry,
    small: SmallKappaSeries,
    t2_small: OnceLock<SeriesExpansion>,
    nystrom_tolerance: f64,
}

impl LiebLiniger {
    pub fn new(reg: ConstantsRegistry) -> Self {
        let small = builtin_coefficients(&reg);
        LiebLiniger {
            reg,
            small,
            t2_small: OnceLock::new(),
            nystrom_tolerance: 1e-11,
        }
    }

    pub fn registry(&self) -> &ConstantsRegistry {
        &self.reg
    }

    fn t2_small_series(&self) -> &SeriesExpansion {
        self.t2_small.get_or_init(|| {
            let table = run_matching(&self.reg, 7).expect("order-7 matching table");
            t2_series_from_table(&self.reg, &table, 5).expect("T2 series")
        })
    }

    /// Zeroth moment T_0(kappa) = 2 pi C(kappa) from the chosen backend.
    pub fn t0(&self, kappa: SeparationKappa, backend: Backend) -> Result<f64> {
        let two_pi = 2.0 * core::f64::consts::PI;
        match backend {
            Backend::Nystrom => {
                let sol = solve_love(kappa, self.nystrom_tolerance)?;
                Ok(moment(&sol, 0))
            }
            Backend::SmallSeries => {
                Ok(two_pi * eval_small_kappa(&self.reg, &self.small, kappa, 7)?)
            }
            Backend::LargeSeries => {
                Ok(two_pi * capacitance_large_series(&self.reg, kappa)?)
            }
        }
    }

    /// Second moment T_2(kappa) from the chosen backend.
    pub fn t2(&self, kappa: SeparationKappa, backend: Backend) -> Result<f64> {
        match backend {
            Backend::Nystrom => {
                let sol = solve_love(kappa, self.nystrom_tolerance)?;
                Ok(moment(&sol, 2))
            }
            Backend::SmallSeries => Ok(self.t2_small_series().eval(kappa.get())),
            Backend::LargeSeries => Ok(solve_large_system(kappa, 5)?.moment(2)),
        }
    }

    /// gamma(kappa) = 2 pi kappa / T_0(kappa).
    pub fn gamma_of_kappa(&self, kappa: SeparationKappa, backend: Backend) -> Result<CouplingGamma> {
        let t0 = self.t0(kappa, backend)?;
        CouplingGamma::new(2.0 * core::f64::consts::PI * kappa.get() / t0)
    }

    /// Inverts gamma(kappa) by bracketing bisection on a log scale.
    ///
    /// The bracket is seeded from the two asymptotes gamma ~ 4 kappa^2 and
    /// gamma ~ pi kappa, then clamped to the backend's validity window.
    pub fn kappa_of_gamma(&self, gamma: CouplingGamma, backend: Backend) -> Result<SeparationKappa> {
        let g = gamma.get();
        let pi = core::f64::consts::PI;
        let seed_small = (g / 4.0).sqrt();
        let seed_large = g / pi;
        let (range_lo, range_hi) = backend_range(backend);
        let mut lo = (seed_small.min(seed_large) / 8.0).max(range_lo);
        let mut hi = (seed_small.max(seed_large) * 8.0).min(range_hi);
        if lo >= hi {
            return Err(Error::Domain(format!(
                "gamma = {g} maps outside the {backend:?} backend's kappa window \
                 [{range_lo}, {range_hi}]"
            )));
        }
        let eval = |k: f64| -> Result<f64> {
            Ok(self
                .gamma_of_kappa(SeparationKappa::new(k)?, backend)?
                .get())
        };
        let mut glo = eval(lo)?;
        let mut ghi = eval(hi)?;
        // Widen within the validity window if the seed bracket missed.
        for _ in 0..8 {
            if glo > g && lo > range_lo {
                lo = (lo / 8.0).max(range_lo);
                glo = eval(lo)?;
            }
            if ghi < g && hi < range_hi {
                hi = (hi * 8.0).min(range_hi);
                ghi = eval(hi)?;
            }
        }
        if glo > ghi {
            return Err(Error::Domain(format!(
                "gamma(kappa) is not increasing on [{lo}, {hi}] ({glo} vs {ghi}); \
                 cannot bracket gamma = {g}"
            )));
        }
        if !(glo <= g && g <= ghi) {
            return Err(Error::Domain(format!(
                "failed to bracket gamma = {g} within the {backend:?} window: \
                 gamma({lo}) = {glo}, gamma({hi}) = {ghi}"
            )));
        }
        let mut last_mid = lo;
        for _ in 0..64 {
            let mid = (lo * hi).sqrt();
            last_mid = mid;
            let gm = eval(mid)?;
            if gm < glo || gm > ghi {
                return Err(Error::Domain(format!(
                    "gamma(kappa) non-monotone near kappa = {mid}: \
                     gamma = {gm} outside [{glo}, {ghi}]"
                )));
            }
            if gm < g {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
            if hi / lo - 1.0 < 1e-13 {
                break;
            }
        }
        SeparationKappa::new(last_mid.max(lo.min(hi)))
    }

    /// e(gamma) = 4 pi^2 T_2 / T_0^3 at kappa(gamma).
    pub fn ground_state_energy(&self, gamma: CouplingGamma, backend: Backend) -> Result<f64> {
        let kappa = self.kappa_of_gamma(gamma, backend)?;
        let t0 = self.t0(kappa, backend)?;
        let t2 = self.t2(kappa, backend)?;
        let pi2 = core::f64::consts::PI * core::f64::consts::PI;
        Ok(4.0 * pi2 * t2 / (t0 * t0 * t0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = core::f64::consts::PI;

    fn map() -> LiebLiniger {
        LiebLiniger::new(ConstantsRegistry::new(50))
    }

    fn kappa(v: f64) -> SeparationKappa {
        SeparationKappa::new(v).unwrap()
    }

    fn gamma(v: f64) -> CouplingGamma {
        CouplingGamma::new(v).unwrap()
    }

    #[test]
    fn rejects_nonpositive_coupling() {
        assert!(CouplingGamma::new(-1.0).is_err());
        assert!(CouplingGamma::new(0.0).is_err());
        assert!(CouplingGamma::new(f64::NAN).is_err());
    }

    #[test]
    fn strong_coupling_asymptote() {
        // kappa -> infinity: T_0 -> 2, so gamma -> pi kappa.
        let ll = map();
        let g = ll
            .gamma_of_kappa(kappa(1e6), Backend::LargeSeries)
            .unwrap()
            .get();
        assert!((g / (PI * 1e6) - 1.0).abs() < 1e-5, "{g}");
    }

    #[test]
    fn weak_coupling_asymptote() {
        // kappa -> 0: T_0 -> pi/(2 kappa), so gamma -> 4 kappa^2.
        let ll = map();
        let k = 0.005;
        let g = ll
            .gamma_of_kappa(kappa(k), Backend::SmallSeries)
            .unwrap()
            .get();
        assert!((g / (4.0 * k * k) - 1.0).abs() < 0.02, "{g}");
    }

    #[test]
    fn unit_kappa_coupling_from_nystrom() {
        // Frozen: gamma(1) = 2 pi / T_0(1) with T_0(1) = 3.641569965665266.
        let ll = map();
        let g = ll.gamma_of_kappa(kappa(1.0), Backend::Nystrom).unwrap().get();
        assert!((g - 1.7254056262603574).abs() < 1e-9, "{g}");
    }

    #[test]
    fn round_trips_through_the_mapping() {
        let ll = map();
        for k in [0.1, 1.0, 10.0] {
            let g = ll.gamma_of_kappa(kappa(k), Backend::Nystrom).unwrap();
            let back = ll.kappa_of_gamma(g, Backend::Nystrom).unwrap().get();
            assert!(
                (back - k).abs() <= 1e-10 * k,
                "round trip at kappa = {k}: {back}"
            );
        }
    }

    #[test]
    fn coupling_one_root_residual() {
        let ll = map();
        let k = ll.kappa_of_gamma(gamma(1.0), Backend::Nystrom).unwrap();
        let g = ll.gamma_of_kappa(k, Backend::Nystrom).unwrap().get();
        assert!((g - 1.0).abs() < 1e-10, "residual {}", g - 1.0);
    }

    #[test]
    fn tonks_limit() {
        // gamma -> infinity: e -> pi^2/3 (T_0 = 2, T_2 = 2/3).
        let ll = map();
        let e = ll
            .ground_state_energy(gamma(1e4), Backend::LargeSeries)
            .unwrap();
        let tonks = PI * PI / 3.0;
        assert!((e - tonks).abs() / tonks < 0.01, "e = {e}");
        // The deviation scales like 1/gamma.
        assert!((e - tonks).abs() / tonks > 1e-5);
    }

    #[test]
    fn weak_coupling_energy_ratio() {
        // e(gamma)/gamma -> 1 as gamma -> 0; at gamma = 0.1 the first
        // correction keeps the ratio within 15 percent.
        let ll = map();
        let e = ll
            .ground_state_energy(gamma(0.1), Backend::Nystrom)
            .unwrap();
        assert!((e / 0.1 - 1.0).abs() < 0.15, "e/gamma = {}", e / 0.1);
    }

    #[test]
    fn backends_agree_at_unit_coupling() {
        let ll = map();
        let a = ll
            .ground_state_energy(gamma(1.0), Backend::Nystrom)
            .unwrap();
        let b = ll
            .ground_state_energy(gamma(1.0), Backend::SmallSeries)
            .unwrap();
        assert!((a - b).abs() < 1e-4, "nystrom {a} vs small-series {b}");
    }

    #[test]
    fn monotone_coupling_on_a_grid() {
        // gamma(kappa) strictly increases over the supported range; the small
        // series covers the cheap low end, the dense solver the middle, and
        // the Legendre series the top.
        let ll = map();
        let lo: f64 = 5e-3;
        let hi: f64 = 1e4;
        let points = 20usize;
        let mut prev = f64::NEG_INFINITY;
        for i in 0..points {
            let t = i as f64 / (points - 1) as f64;
            let k = lo * (hi / lo).powf(t);
            let backend = if k < 0.05 {
                Backend::SmallSeries
            } else if k <= 4.0 {
                Backend::Nystrom
            } else {
                Backend::LargeSeries
            };
            let g = ll.gamma_of_kappa(kappa(k), backend).unwrap().get();
            assert!(
                g > prev,
                "gamma not increasing at kappa = {k}: {g} after {prev}"
            );
            prev = g;
        }
    }

    #[test]
    fn out_of_window_gamma_is_rejected() {
        let ll = map();
        // gamma = 1e9 maps to kappa ~ 3e8, beyond the dense solver's range.
        let err = ll.kappa_of_gamma(gamma(1e9), Backend::Nystrom).unwrap_err();
        assert!(err.to_string().contains("bracket") || err.to_string().contains("window"));
    }
}
