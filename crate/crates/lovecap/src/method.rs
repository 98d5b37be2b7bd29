//! Method selection and single-point capacitance evaluation.

use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::large_kappa::{capacitance_large_series, MIN_SERIES_KAPPA};
use crate::love::{capacitance_numeric, solve_love_with, SeparationKappa, MAX_KAPPA};
use crate::small_kappa::{builtin_coefficients, eval_small_kappa, SmallKappaSeries, MAX_ORDER};

/// Which route evaluates the capacitance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodSelector {
    /// Small series below kappa = 1, large series above kappa = 4, dense
    /// solver in between.
    Auto,
    Nystrom,
    Small { order: i32 },
    Large,
}

/// Validated kappa window for an explicitly requested small series.
pub const SMALL_METHOD_MAX_KAPPA: f64 = 1.0;

impl MethodSelector {
    /// Applies the crossover rule; `Auto` never resolves to a method outside
    /// its validated range.
    pub fn resolve(&self, kappa: f64) -> MethodSelector {
        match self {
            MethodSelector::Auto => {
                if kappa < 1.0 {
                    MethodSelector::Small { order: MAX_ORDER }
                } else if kappa > 4.0 {
                    MethodSelector::Large
                } else {
                    MethodSelector::Nystrom
                }
            }
            other => *other,
        }
    }

    pub fn label(&self) -> String {
        match self {
            MethodSelector::Auto => "auto".into(),
            MethodSelector::Nystrom => "nystrom".into(),
            MethodSelector::Small { order } => format!("small(order={order})"),
            MethodSelector::Large => "large".into(),
        }
    }
}

/// Runtime knobs shared by the evaluators and the self-check suite.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Decimal digits carried by the extended-precision machinery.
    pub digits: u32,
    /// Nystrom refinement tolerance.
    pub tolerance: f64,
    /// Unknowns allowed after symmetry reduction.
    pub node_budget: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: crate::constants::DEFAULT_DIGITS,
            tolerance: 1e-10,
            node_budget: crate::love::DEFAULT_NODE_BUDGET,
        }
    }
}

/// Registry plus the hard-coded series table, built once per process.
pub struct Toolkit {
    pub reg: ConstantsRegistry,
    pub small: SmallKappaSeries,
    pub config: RunConfig,
}

impl Toolkit {
    pub fn new(config: RunConfig) -> Self {
        let reg = ConstantsRegistry::new(config.digits);
        let small = builtin_coefficients(&reg);
        Toolkit { reg, small, config }
    }
}

impl Default for Toolkit {
    fn default() -> Self {
        Toolkit::new(RunConfig::default())
    }
}

/// One evaluated capacitance point.
#[derive(Clone, Debug)]
pub struct CapacitanceRecord {
    pub kappa: f64,
    pub capacitance: f64,
    pub method: String,
    /// Solver doubling estimate, or the magnitude of the last retained
    /// series term as a first-omitted-term proxy.
    pub error_estimate: f64,
}

/// Evaluates the capacitance with the requested method.
pub fn evaluate_capacitance(
    tk: &Toolkit,
    kappa: SeparationKappa,
    selector: MethodSelector,
) -> Result<CapacitanceRecord> {
    let k = kappa.get();
    let resolved = selector.resolve(k);
    match resolved {
        MethodSelector::Nystrom => {
            let sol = solve_love_with(kappa, tk.config.tolerance, tk.config.node_budget)?;
            Ok(CapacitanceRecord {
                kappa: k,
                capacitance: capacitance_numeric(&sol),
                method: resolved.label(),
                error_estimate: sol.error_estimate(),
            })
        }
        MethodSelector::Small { order } => {
            if k > SMALL_METHOD_MAX_KAPPA {
                return Err(Error::Validity(format!(
                    "the small-separation series is validated for kappa <= \
                     {SMALL_METHOD_MAX_KAPPA}; use method 'nystrom' (kappa <= {MAX_KAPPA}) \
                     or 'large' (kappa >= {MIN_SERIES_KAPPA}) at kappa = {k}"
                )));
            }
            let value = eval_small_kappa(&tk.reg, &tk.small, kappa, order)?;
            Ok(CapacitanceRecord {
                kappa: k,
                capacitance: value,
                method: resolved.label(),
                error_estimate: tk.small.term(&tk.reg, k, order).abs(),
            })
        }
        MethodSelector::Large => {
            let value = capacitance_large_series(&tk.reg, kappa)?;
            // Last retained term |c_8| / kappa^8 as the error proxy.
            let c8 = crate::large_kappa::series_coefficients(&tk.reg)[8].to_f64();
            Ok(CapacitanceRecord {
                kappa: k,
                capacitance: value,
                method: resolved.label(),
                error_estimate: (c8 / k.powi(8)).abs(),
            })
        }
        MethodSelector::Auto => unreachable!("resolve never returns Auto"),
    }
}

/// Physical capacitance in farads for plates of radius `radius` (meters) at
/// gap `gap` (meters): C = 4 pi epsilon0 R * C_reduced(gap / radius).
pub fn physical_capacitance_farads(
    tk: &Toolkit,
    radius: f64,
    gap: f64,
    epsilon0: f64,
    selector: MethodSelector,
) -> Result<(CapacitanceRecord, f64)> {
    if !(radius > 0.0 && radius.is_finite() && gap > 0.0 && gap.is_finite()) {
        return Err(Error::Domain(format!(
            "radius and gap must be positive and finite, got {radius} and {gap}"
        )));
    }
    if !(epsilon0 > 0.0 && epsilon0.is_finite()) {
        return Err(Error::Domain(format!(
            "epsilon0 must be positive and finite, got {epsilon0}"
        )));
    }
    let kappa = SeparationKappa::new(gap / radius)?;
    let record = evaluate_capacitance(tk, kappa, selector)?;
    let farads = 4.0 * core::f64::consts::PI * epsilon0 * radius * record.capacitance;
    Ok((record, farads))
}
