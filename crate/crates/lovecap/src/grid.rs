//! Composite Gauss-Legendre quadrature on [-1, 1].
//!
//! The Love kernel is a Lorentzian of width kappa, so the Nystrom grid uses
//! uniform panels no wider than kappa/2 with a fixed-order Gauss rule per
//! panel; refinement halves the panel width.

use crate::error::{Error, Result};

/// Nodes and weights of one Gauss-Legendre rule on [-1, 1].
fn gauss_legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 2);
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess, refined by Newton on P_n.
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..60 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Symmetrize against roundoff: average mirrored pairs.
    for i in 0..n / 2 {
        let m = n - 1 - i;
        let avg = 0.5 * (nodes[m] - nodes[i]);
        nodes[i] = -avg;
        nodes[m] = avg;
        let w = 0.5 * (weights[i] + weights[m]);
        weights[i] = w;
        weights[m] = w;
    }
    (nodes, weights)
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Composite quadrature grid on [-1, 1], symmetric under x -> -x.
#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panel_count: usize,
    panel_width: f64,
    gauss_order: usize,
}

impl QuadratureGrid {
    /// Builds uniform panels of width at most `target_width` with a
    /// `gauss_order`-point rule on each.
    pub fn composite(target_width: f64, gauss_order: usize) -> Result<Self> {
        if !(target_width > 0.0 && target_width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "panel width must be positive, got {target_width}"
            )));
        }
        let panel_count = (2.0 / target_width).ceil() as usize;
        let panel_width = 2.0 / panel_count as f64;
        let (gx, gw) = gauss_legendre_rule(gauss_order);
        let total = gauss_order * panel_count;
        let mut nodes = vec![0.0; total];
        let mut weights = vec![0.0; total];
        let half = panel_width / 2.0;
        // Fill the left half, then mirror so the grid is symmetric exactly.
        let half_count = total / 2;
        let mut idx = 0;
        'panels: for p in 0..panel_count {
            let center = -1.0 + (p as f64 + 0.5) * panel_width;
            for (x, w) in gx.iter().zip(&gw) {
                if idx == half_count {
                    break 'panels;
                }
                nodes[idx] = center + half * x;
                weights[idx] = half * w;
                idx += 1;
            }
        }
        for i in 0..half_count {
            nodes[total - 1 - i] = -nodes[i];
            weights[total - 1 - i] = weights[i];
        }
        Ok(QuadratureGrid {
            nodes,
            weights,
            panel_count,
            panel_width,
            gauss_order,
        })
    }

    /// Same layout with panels half as wide (double the node count).
    pub fn refined(&self) -> Result<Self> {
        Self::composite(self.panel_width / 2.0, self.gauss_order)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn panel_width(&self) -> f64 {
        self.panel_width
    }

    pub fn panel_count(&self) -> usize {
        self.panel_count
    }

    pub fn gauss_order(&self) -> usize {
        self.gauss_order
    }

    /// Index of the first strictly positive node; nodes [half..] mirror
    /// nodes [..half] in reverse order.
    pub fn positive_start(&self) -> usize {
        debug_assert!(self.nodes.len() % 2 == 0);
        self.nodes.len() / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eight_point_rule_matches_published_values() {
        let (x, w) = gauss_legendre_rule(8);
        let known_x = [
            0.1834346424956498,
            0.5255324099163290,
            0.7966664774136267,
            0.9602898564975362,
        ];
        let known_w = [
            0.3626837833783620,
            0.3137066458778873,
            0.2223810344533745,
            0.1012285362903763,
        ];
        for i in 0..4 {
            assert_abs_diff_eq!(x[4 + i], known_x[i], epsilon = 1e-15);
            assert_abs_diff_eq!(x[3 - i], -known_x[i], epsilon = 1e-15);
            assert_abs_diff_eq!(w[4 + i], known_w[i], epsilon = 1e-15);
            assert_abs_diff_eq!(w[3 - i], known_w[i], epsilon = 1e-15);
        }
    }

    #[test]
    fn weights_sum_to_two() {
        for width in [0.5, 0.13, 2.0 / 3.0] {
            let g = QuadratureGrid::composite(width, 8).unwrap();
            let sum: f64 = g.weights().iter().sum();
            assert!((sum - 2.0).abs() < 1e-14, "width {width}: sum {sum}");
        }
    }

    #[test]
    fn nodes_strictly_increasing_and_symmetric() {
        let g = QuadratureGrid::composite(0.3, 8).unwrap();
        let n = g.len();
        for i in 1..n {
            assert!(g.nodes()[i] > g.nodes()[i - 1]);
        }
        for i in 0..n {
            let mirror = g.nodes()[n - 1 - i];
            assert_abs_diff_eq!(g.nodes()[i], -mirror, epsilon = 1e-16);
            assert_abs_diff_eq!(g.weights()[i], g.weights()[n - 1 - i], epsilon = 1e-16);
        }
        assert!(g.nodes()[g.positive_start()] > 0.0);
        assert!(g.nodes()[g.positive_start() - 1] < 0.0);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let g = QuadratureGrid::composite(0.25, 8).unwrap();
        // Degree-14 polynomial is exact for an 8-point rule.
        let integral: f64 = g
            .nodes()
            .iter()
            .zip(g.weights())
            .map(|(x, w)| w * x.powi(14))
            .sum();
        assert_abs_diff_eq!(integral, 2.0 / 15.0, epsilon = 1e-14);
        let even: f64 = g
            .nodes()
            .iter()
            .zip(g.weights())
            .map(|(x, w)| w * x * x)
            .sum();
        assert_abs_diff_eq!(even, 2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn refinement_halves_panels() {
        let g = QuadratureGrid::composite(0.5, 8).unwrap();
        let r = g.refined().unwrap();
        assert_eq!(r.panel_count(), 2 * g.panel_count());
        assert_eq!(r.len(), 2 * g.len());
    }
}
