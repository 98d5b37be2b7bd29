//! Truncated Taylor series ("jets") with log-polynomial coefficients.
//!
//! A jet of order N stores the Taylor coefficients a_0..a_N of a function at
//! x = 0, so the operator [A(x)]^{(n)}_{x=0} is n! times coefficient n. The
//! matching formulas need jets whose coefficients are themselves polynomials
//! in ln kappa: the factor e^{x ln(4 pi e / kappa)} contributes one power of
//! Lambda = ln kappa per Taylor order.

use crate::bigreal::BigReal;
use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::polygamma::{factorial_bigreal, gamma, polygamma};

/// Truncated Taylor series at x = 0 of order `N` with [`LogPoly`] coefficients.
#[derive(Clone, Debug)]
pub struct Jet {
    coeffs: Vec<LogPoly>,
    bits: u32,
}

impl Jet {
    pub fn zero(order: usize, bits: u32) -> Self {
        Jet {
            coeffs: vec![LogPoly::zero(bits); order + 1],
            bits,
        }
    }

    pub fn constant(c: LogPoly, order: usize, bits: u32) -> Self {
        let mut jet = Jet::zero(order, bits);
        jet.coeffs[0] = c;
        jet
    }

    pub fn from_coeffs(coeffs: Vec<LogPoly>, bits: u32) -> Self {
        assert!(!coeffs.is_empty());
        Jet { coeffs, bits }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Taylor coefficient k (not the derivative).
    pub fn coeff(&self, k: usize) -> &LogPoly {
        &self.coeffs[k]
    }

    /// k-th derivative at x = 0, i.e. k! * coeff(k).
    pub fn derivative_at_zero(&self, k: usize) -> LogPoly {
        self.coeffs[k].scale(&factorial_bigreal(k as u32, self.bits))
    }

    /// Truncates or zero-extends to the given order.
    pub fn resized(&self, order: usize) -> Jet {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, LogPoly::zero(self.bits));
        coeffs.truncate(order + 1);
        Jet {
            coeffs,
            bits: self.bits,
        }
    }

    /// Composition with x -> -x: flips the sign of odd coefficients.
    pub fn negate_variable(&self) -> Jet {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        Jet {
            coeffs,
            bits: self.bits,
        }
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.order(), rhs.order());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Jet {
            coeffs,
            bits: self.bits.max(rhs.bits),
        }
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        assert_eq!(self.order(), rhs.order());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Jet {
            coeffs,
            bits: self.bits.max(rhs.bits),
        }
    }

    pub fn scale(&self, s: &LogPoly) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            bits: self.bits.max(s.bits()),
        }
    }

    pub fn scale_real(&self, s: &BigReal) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
            bits: self.bits.max(s.bits()),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        let order = self.order().min(rhs.order());
        let bits = self.bits.max(rhs.bits);
        let mut out = vec![LogPoly::zero(bits); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        Jet { coeffs: out, bits }
    }

    /// Multiplicative inverse; requires a constant (degree-0) nonzero leading
    /// coefficient so the result stays inside the log-polynomial ring.
    pub fn recip(&self) -> Result<Jet> {
        let lead = &self.coeffs[0];
        if lead.is_zero() || !lead.is_constant() {
            return Err(Error::Domain(
                "jet reciprocal requires a nonzero constant leading coefficient".into(),
            ));
        }
        let order = self.order();
        let bits = self.bits;
        let inv0 = lead.coeff(0).recip();
        let mut out = vec![LogPoly::zero(bits); order + 1];
        out[0] = LogPoly::constant(inv0.clone());
        for k in 1..=order {
            // b_k = -inv0 * sum_{j=1..k} a_j b_{k-j}
            let mut acc = LogPoly::zero(bits);
            for j in 1..=k {
                if self.coeffs[j].is_zero() || out[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &out[k - j]);
            }
            out[k] = (-acc).scale(&inv0);
        }
        Ok(Jet { coeffs: out, bits })
    }

    /// exp of a jet whose leading coefficient is constant.
    pub fn exp(&self) -> Result<Jet> {
        if !self.coeffs[0].is_constant() {
            return Err(Error::Domain(
                "jet exp requires a constant leading coefficient".into(),
            ));
        }
        let order = self.order();
        let bits = self.bits;
        let scale = self.coeffs[0].coeff(0).exp();
        // exp(a0 + T) = e^{a0} sum_j T^j / j! with T nilpotent.
        let mut tail = self.clone();
        tail.coeffs[0] = LogPoly::zero(bits);
        let mut acc = Jet::constant(LogPoly::constant(BigReal::from_i64(1, bits)), order, bits);
        let mut power = acc.clone();
        for j in 1..=order {
            power = power.mul(&tail);
            let jf = factorial_bigreal(j as u32, bits);
            acc = acc.add(&power.scale_real(&jf.recip()));
        }
        Ok(acc.scale_real(&scale))
    }

    /// log of a jet with positive constant leading coefficient.
    pub fn log(&self) -> Result<Jet> {
        let lead = &self.coeffs[0];
        if lead.is_zero() || !lead.is_constant() || lead.coeff(0).is_negative() {
            return Err(Error::Domain(
                "jet log requires a positive constant leading coefficient".into(),
            ));
        }
        let order = self.order();
        let bits = self.bits;
        let a0 = lead.coeff(0);
        // log(a0 (1 + U)) = ln a0 + sum_j (-1)^{j+1} U^j / j
        let mut u = self.scale_real(&a0.recip());
        u.coeffs[0] = LogPoly::zero(bits);
        let mut acc = Jet::constant(LogPoly::constant(a0.ln()), order, bits);
        let mut power = Jet::constant(LogPoly::constant(BigReal::from_i64(1, bits)), order, bits);
        for j in 1..=order {
            power = power.mul(&u);
            let coeff = BigReal::from_ratio_i64(if j % 2 == 1 { 1 } else { -1 }, j as i64, bits);
            acc = acc.add(&power.scale_real(&coeff));
        }
        Ok(acc)
    }
}

/// Taylor expansion of Gamma(a + x) about x = 0 up to order `n`.
///
/// Built as Gamma(a) * exp(sum_{k>=1} psi^{(k-1)}(a) x^k / k!), which keeps
/// every Gamma-derivative bracket in the matching formulas inside one uniform
/// evaluation scheme.
pub fn gamma_jet(reg: &ConstantsRegistry, a: f64, n: usize) -> Result<Jet> {
    let bits = reg.bits();
    let g = gamma(a, bits)?;
    let mut series = Jet::zero(n, bits);
    for k in 1..=n {
        let psi = polygamma(k as u32 - 1, a, bits)?;
        let coeff = &psi / &factorial_bigreal(k as u32, bits);
        series.coeffs[k] = LogPoly::constant(coeff);
    }
    Ok(series.exp()?.scale_real(&g))
}

/// Taylor coefficients of e^{c x}: entry k holds c^k / k!.
///
/// `c` may be a genuine log-polynomial; the matching engine passes
/// c = 1 + ln(4 pi) - Lambda for the edge-side factor e^{x ln(4 pi e / kappa)}.
pub fn exp_ln_jet(c: &LogPoly, n: usize) -> Jet {
    let bits = c.bits();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(LogPoly::constant(BigReal::from_i64(1, bits)));
    let mut power = LogPoly::constant(BigReal::from_i64(1, bits));
    for k in 1..=n {
        power = &power * c;
        coeffs.push(power.scale(&factorial_bigreal(k as u32, bits).recip()));
    }
    Jet::from_coeffs(coeffs, bits)
}
