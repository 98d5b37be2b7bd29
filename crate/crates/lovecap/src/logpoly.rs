//! Polynomials in Lambda = ln kappa with extended-precision coefficients.
//!
//! Every coefficient produced by the bulk/edge matching recursion lives in
//! this ring. The paper-facing reporting variable is L = ln(16 pi / kappa);
//! conversion is the affine substitution Lambda -> ln(16 pi) - L.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::bigreal::BigReal;

/// Polynomial in the series variable Lambda = ln kappa, ascending degree.
///
/// Canonical form: the highest-degree stored coefficient is nonzero (the zero
/// polynomial stores nothing).
#[derive(Clone, Debug)]
pub struct LogPoly {
    coeffs: Vec<BigReal>,
    bits: u32,
}

impl LogPoly {
    pub fn zero(bits: u32) -> Self {
        LogPoly {
            coeffs: Vec::new(),
            bits,
        }
    }

    pub fn constant(c: BigReal) -> Self {
        let bits = c.bits();
        LogPoly {
            coeffs: vec![c],
            bits,
        }
        .normalized()
    }

    /// The monomial Lambda.
    pub fn variable(bits: u32) -> Self {
        LogPoly {
            coeffs: vec![BigReal::zero(bits), BigReal::from_i64(1, bits)],
            bits,
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigReal>, bits: u32) -> Self {
        LogPoly { coeffs, bits }.normalized()
    }

    fn normalized(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn coeff(&self, k: usize) -> BigReal {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| BigReal::zero(self.bits))
    }

    pub fn coeffs(&self) -> &[BigReal] {
        &self.coeffs
    }

    /// True when this polynomial is constant (degree 0 or zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, s: &BigReal) -> Self {
        LogPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            bits: self.bits.max(s.bits()),
        }
        .normalized()
    }

    /// Horner evaluation at a BigReal point.
    pub fn eval(&self, x: &BigReal) -> BigReal {
        let bits = self.bits.max(x.bits());
        let mut acc = BigReal::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.eval(&BigReal::from_f64(x, self.bits)).to_f64()
    }

    /// Substitutes Lambda = a + b * Y, returning the polynomial in Y.
    ///
    /// With a = ln(16 pi) and b = -1 this converts from the internal
    /// Lambda = ln kappa basis to the reporting basis L = ln(16 pi / kappa).
    pub fn compose_affine(&self, a: &BigReal, b: &BigReal) -> Self {
        let bits = self.bits.max(a.bits()).max(b.bits());
        // Horner in the substituted variable: p(a + bY) built from the top down.
        let mut acc = LogPoly::zero(bits);
        let linear = LogPoly::from_coeffs(vec![a.clone(), b.clone()], bits);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &linear) + &LogPoly::constant(c.clone());
        }
        acc
    }

    /// Largest coefficient magnitude, as a binary exponent.
    pub fn max_coeff_exponent(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude_exponent())
            .max()
            .unwrap_or(i64::MIN / 2)
    }

    /// True when every coefficient of `self - other` is below `tol` in magnitude.
    pub fn approx_eq_abs(&self, other: &LogPoly, tol: f64) -> bool {
        let diff = self - other;
        diff.coeffs
            .iter()
            .all(|c| c.abs().to_f64() <= tol)
    }

    /// Drops coefficients of degree > `budget`, requiring them to be smaller
    /// than `tol`; returns false if a significant coefficient would be lost.
    pub fn truncate_to_degree(&mut self, budget: usize, tol: f64) -> bool {
        while self.coeffs.len() > budget + 1 {
            let c = self.coeffs.pop().expect("nonempty");
            if c.abs().to_f64() > tol {
                return false;
            }
        }
        *self = self.clone().normalized();
        true
    }
}

impl Add for &LogPoly {
    type Output = LogPoly;
    fn add(self, rhs: &LogPoly) -> LogPoly {
        let bits = self.bits.max(rhs.bits);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        LogPoly { coeffs: out, bits }.normalized()
    }
}

impl Sub for &LogPoly {
    type Output = LogPoly;
    fn sub(self, rhs: &LogPoly) -> LogPoly {
        self + &-rhs
    }
}

impl Neg for &LogPoly {
    type Output = LogPoly;
    fn neg(self) -> LogPoly {
        LogPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            bits: self.bits,
        }
    }
}

impl Mul for &LogPoly {
    type Output = LogPoly;
    fn mul(self, rhs: &LogPoly) -> LogPoly {
        let bits = self.bits.max(rhs.bits);
        if self.is_zero() || rhs.is_zero() {
            return LogPoly::zero(bits);
        }
        let mut out = vec![BigReal::zero(bits); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LogPoly { coeffs: out, bits }.normalized()
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LogPoly {
            type Output = LogPoly;
            fn $method(self, rhs: LogPoly) -> LogPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LogPoly> for LogPoly {
            type Output = LogPoly;
            fn $method(self, rhs: &LogPoly) -> LogPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for LogPoly {
    type Output = LogPoly;
    fn neg(self) -> LogPoly {
        -&self
    }
}

impl fmt::Display for LogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 200;

    fn c(v: f64) -> BigReal {
        BigReal::from_f64(v, BITS)
    }

    #[test]
    fn canonical_form_strips_top_zeros() {
        let p = LogPoly::from_coeffs(vec![c(1.0), c(0.0), c(0.0)], BITS);
        assert_eq!(p.degree(), 0);
        assert!(LogPoly::from_coeffs(vec![c(0.0)], BITS).is_zero());
    }

    #[test]
    fn ring_operations() {
        let x = LogPoly::variable(BITS);
        let one = LogPoly::constant(c(1.0));
        // (1 + X)^2 = 1 + 2X + X^2
        let p = &(&one + &x) * &(&one + &x);
        assert_eq!(p.coeff(0).to_f64(), 1.0);
        assert_eq!(p.coeff(1).to_f64(), 2.0);
        assert_eq!(p.coeff(2).to_f64(), 1.0);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn evaluation_matches_f64_horner() {
        let p = LogPoly::from_coeffs(vec![c(2.0), c(-3.0), c(0.5)], BITS);
        let x = 1.7f64;
        let expected = 2.0 - 3.0 * x + 0.5 * x * x;
        assert!((p.eval_f64(x) - expected).abs() < 1e-14);
    }

    #[test]
    fn affine_substitution_round_trips() {
        // Lambda -> a - L followed by L -> a - Lambda is the identity.
        let p = LogPoly::from_coeffs(vec![c(1.0), c(2.0), c(3.0), c(-0.25)], BITS);
        let a = c(2.5);
        let minus_one = c(-1.0);
        let q = p.compose_affine(&a, &minus_one);
        let back = q.compose_affine(&a, &minus_one);
        assert!(back.approx_eq_abs(&p, 1e-50));
    }

    #[test]
    fn truncation_budget_guards_real_coefficients() {
        let mut junk = LogPoly::from_coeffs(vec![c(1.0), c(1e-46)], BITS);
        assert!(junk.truncate_to_degree(0, 1e-40));
        assert_eq!(junk.degree(), 0);
        let mut real = LogPoly::from_coeffs(vec![c(1.0), c(0.5)], BITS);
        assert!(!real.truncate_to_degree(0, 1e-40));
    }
}
