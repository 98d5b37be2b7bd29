//! Direct Nystrom solution of the Love integral equation
//!
//!   f(x) - (kappa/pi) \int_{-1}^{1} f(y) / (kappa^2 + (y-x)^2) dy = 1
//!
//! on a composite Gauss-Legendre grid, with the even symmetry of f used to
//! fold the kernel and halve the dense system.

use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::QuadratureGrid;

/// Smallest separation the dense solver accepts; below this the node budget
/// explodes and the small-kappa series is the right tool.
pub const MIN_KAPPA: f64 = 5e-3;
/// Largest supported separation.
pub const MAX_KAPPA: f64 = 1e7;
/// Unknowns allowed after symmetry reduction.
pub const DEFAULT_NODE_BUDGET: usize = 40_000;
/// Gauss points per panel.
const GAUSS_ORDER: usize = 8;

/// Dimensionless plate separation (gap over plate radius).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationKappa(f64);

impl SeparationKappa {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::Domain(format!(
                "separation kappa must be positive and finite, got {kappa}"
            )));
        }
        Ok(SeparationKappa(kappa))
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// Solved Love equation on a quadrature grid.
#[derive(Clone, Debug)]
pub struct LoveSolution {
    kappa: SeparationKappa,
    grid: QuadratureGrid,
    f_values: Vec<f64>,
    error_estimate: f64,
}

impl LoveSolution {
    pub fn kappa(&self) -> f64 {
        self.kappa.0
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    /// f at the grid nodes, mirrored exactly under x -> -x.
    pub fn f_values(&self) -> &[f64] {
        &self.f_values
    }

    /// Conservative accuracy estimate: the capacitance change over the last
    /// grid doubling, floored by the algebraic residual of the dense solve.
    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    /// Nystrom interpolation: evaluates the right-hand side of the integral
    /// equation at an arbitrary point using the solved nodal values.
    pub fn f_at(&self, x: f64) -> f64 {
        let kappa = self.kappa.0;
        let sum: f64 = self
            .grid
            .nodes()
            .iter()
            .zip(self.grid.weights())
            .zip(&self.f_values)
            .map(|((&y, &w), &f)| w * f / (kappa * kappa + (y - x) * (y - x)))
            .sum();
        1.0 + kappa / core::f64::consts::PI * sum
    }
}

/// Solves the Love equation, refining the grid until two successive
/// resolutions agree on the capacitance to `tolerance`.
pub fn solve_love(kappa: SeparationKappa, tolerance: f64) -> Result<LoveSolution> {
    solve_love_with(kappa, tolerance, DEFAULT_NODE_BUDGET)
}

/// [`solve_love`] with an explicit node budget (unknowns after symmetry
/// reduction).
pub fn solve_love_with(
    kappa: SeparationKappa,
    tolerance: f64,
    node_budget: usize,
) -> Result<LoveSolution> {
    if !(1e-12..=1e-2).contains(&tolerance) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must lie in [1e-12, 1e-2], got {tolerance}"
        )));
    }
    let k = kappa.get();
    if k < MIN_KAPPA {
        return Err(Error::Convergence {
            message: format!(
                "kappa = {k} is below the dense-solver range [{MIN_KAPPA}, {MAX_KAPPA}]; \
                 use the small-kappa series (eval_small_kappa) instead"
            ),
            best: f64::NAN,
            achieved: f64::NAN,
        });
    }
    if k > MAX_KAPPA {
        return Err(Error::Domain(format!(
            "kappa = {k} is above the dense-solver range [{MIN_KAPPA}, {MAX_KAPPA}]; \
             use the large-kappa series (capacitance_large_series) instead"
        )));
    }

    let width = (k / 2.0).min(0.125);
    let mut grid = QuadratureGrid::composite(width, GAUSS_ORDER)?;
    let mut previous: Option<(f64, QuadratureGrid, Vec<f64>)> = None;
    loop {
        if grid.len() / 2 > node_budget {
            let (best, achieved) = match &previous {
                Some((cap, _, _)) => (*cap, f64::INFINITY),
                None => (f64::NAN, f64::INFINITY),
            };
            return Err(Error::Convergence {
                message: format!(
                    "node budget {node_budget} exceeded before reaching tolerance {tolerance}"
                ),
                best,
                achieved,
            });
        }
        let f_full = solve_on_grid(k, &grid)?;
        let cap = quadrature_capacitance(&grid, &f_full);
        if let Some((prev_cap, _, _)) = &previous {
            let diff = (cap - prev_cap).abs();
            if diff < tolerance {
                let residual = residual_inf(k, &grid, &f_full);
                if let Some(&bad) = f_full.iter().find(|v| !(**v > 0.0)) {
                    return Err(Error::LinearSolve(format!(
                        "solved f contains a non-positive value {bad}"
                    )));
                }
                return Ok(LoveSolution {
                    kappa,
                    grid,
                    f_values: f_full,
                    error_estimate: diff.max(residual),
                });
            }
        }
        let next = grid.refined()?;
        previous = Some((cap, grid, f_full));
        grid = next;
    }
}

/// Assembles and solves the symmetry-reduced dense system on one grid,
/// returning f on the full (mirrored) grid.
pub(crate) fn solve_on_grid(kappa: f64, grid: &QuadratureGrid) -> Result<Vec<f64>> {
    let half = grid.positive_start();
    let nodes = &grid.nodes()[half..];
    let weights = &grid.weights()[half..];
    let n = nodes.len();
    let k2 = kappa * kappa;
    let scale = kappa / core::f64::consts::PI;

    let mut data = vec![0.0f64; n * n];
    data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let xi = nodes[i];
        for (j, slot) in row.iter_mut().enumerate() {
            let xj = nodes[j];
            let direct = 1.0 / (k2 + (xj - xi) * (xj - xi));
            let mirrored = 1.0 / (k2 + (xj + xi) * (xj + xi));
            *slot = -scale * weights[j] * (direct + mirrored);
        }
        row[i] += 1.0;
    });
    let a = Array2::from_shape_vec((n, n), data).expect("square matrix");
    let b = Array1::from_elem(n, 1.0);
    // OpenBLAS's parallel LU recurses on the calling thread's stack, which
    // overflows the 2 MiB default of spawned threads; give it its own stack.
    let f_half = std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(64 * 1024 * 1024)
            .spawn_scoped(scope, move || a.solve_into(b))
            .expect("spawn dense-solve thread")
            .join()
            .expect("dense-solve thread panicked")
    })
    .map_err(|e| Error::LinearSolve(e.to_string()))?;

    let mut f_full = vec![0.0f64; 2 * n];
    for i in 0..n {
        f_full[half + i] = f_half[i];
        f_full[half - 1 - i] = f_half[i];
    }
    Ok(f_full)
}

/// (1/2 pi) sum w_i f_i.
fn quadrature_capacitance(grid: &QuadratureGrid, f: &[f64]) -> f64 {
    let sum: f64 = grid.weights().iter().zip(f).map(|(w, v)| w * v).sum();
    sum / (2.0 * core::f64::consts::PI)
}

/// Max-norm residual of the discretized integral equation.
fn residual_inf(kappa: f64, grid: &QuadratureGrid, f: &[f64]) -> f64 {
    let half = grid.positive_start();
    let nodes = &grid.nodes()[half..];
    let weights = &grid.weights()[half..];
    let fs = &f[half..];
    let k2 = kappa * kappa;
    let scale = kappa / core::f64::consts::PI;
    (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            let xi = nodes[i];
            let mut acc = 0.0;
            for j in 0..nodes.len() {
                let xj = nodes[j];
                let direct = 1.0 / (k2 + (xj - xi) * (xj - xi));
                let mirrored = 1.0 / (k2 + (xj + xi) * (xj + xi));
                acc += weights[j] * fs[j] * (direct + mirrored);
            }
            (fs[i] - scale * acc - 1.0).abs()
        })
        .reduce(|| 0.0, f64::max)
}

/// Reduced capacitance C(kappa) = (1/2 pi) integral of f.
pub fn capacitance_numeric(sol: &LoveSolution) -> f64 {
    quadrature_capacitance(&sol.grid, &sol.f_values)
}

/// Moment T_n = integral of x^n f(x); odd moments vanish by symmetry and are
/// returned as an exact zero.
pub fn moment(sol: &LoveSolution, n: u32) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    sol.grid
        .nodes()
        .iter()
        .zip(sol.grid.weights())
        .zip(&sol.f_values)
        .map(|((&x, &w), &f)| w * x.powi(n as i32) * f)
        .sum()
}

/// Resolvent R(z) = integral of f(x)/(z - x) for z away from the cut [-1, 1].
pub fn resolvent_numeric(sol: &LoveSolution, z: Complex64) -> Result<Complex64> {
    let dist = distance_to_cut(z);
    let guard = 10.0 * sol.grid.panel_width();
    if dist <= guard {
        return Err(Error::Accuracy(format!(
            "resolvent point {z} is {dist:.3e} from the cut [-1, 1]; the quadrature \
             needs distance > {guard:.3e} at this resolution"
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for ((&x, &w), &f) in sol
        .grid
        .nodes()
        .iter()
        .zip(sol.grid.weights())
        .zip(&sol.f_values)
    {
        acc += w * f / (z - x);
    }
    Ok(acc)
}

fn distance_to_cut(z: Complex64) -> f64 {
    if z.re.abs() <= 1.0 {
        z.im.abs()
    } else {
        let dx = z.re.abs() - 1.0;
        (dx * dx + z.im * z.im).sqrt()
    }
}
