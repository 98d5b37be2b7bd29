//! Evaluable truncated asymptotic series.

use crate::bigreal::BigReal;
use crate::logpoly::LogPoly;

/// A truncated expansion sum_i p_i(ln kappa) * kappa^{power_i}.
///
/// Small-kappa series carry genuine log-polynomials; the large-kappa series
/// uses constant coefficients with negative powers.
#[derive(Clone, Debug)]
pub struct SeriesExpansion {
    terms: Vec<(i32, LogPoly)>,
    bits: u32,
}

impl SeriesExpansion {
    pub fn new(terms: Vec<(i32, LogPoly)>, bits: u32) -> Self {
        SeriesExpansion { terms, bits }
    }

    pub fn terms(&self) -> &[(i32, LogPoly)] {
        &self.terms
    }

    pub fn eval_bigreal(&self, kappa: &BigReal) -> BigReal {
        let bits = self.bits.max(kappa.bits());
        let ln_kappa = kappa.ln();
        let mut acc = BigReal::zero(bits);
        for (power, poly) in &self.terms {
            let coeff = poly.eval(&ln_kappa);
            acc = &acc + &(&coeff * &kappa.powi(*power as i64));
        }
        acc
    }

    pub fn eval(&self, kappa: f64) -> f64 {
        self.eval_bigreal(&BigReal::from_f64(kappa, self.bits)).to_f64()
    }
}
