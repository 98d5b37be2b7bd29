//! Shared mathematical constants at a configurable working precision.

use crate::bigreal::{self, digits_to_bits, BigReal};
use crate::polygamma::polygamma;

/// Default number of decimal digits carried by the matching engine.
pub const DEFAULT_DIGITS: u32 = 50;

/// Euler numbers E_0..E_8.
pub const EULER_NUMBERS: [i64; 9] = [1, 0, -1, 0, 5, 0, -61, 0, 1385];

/// High-precision constants used throughout the small-kappa machinery.
///
/// Everything is derived at construction time: pi from a Machin formula,
/// the Euler-Mascheroni constant and the odd zeta values from polygamma at 1,
/// so the registry doubles as an internal consistency check on the special
/// function code.
#[derive(Clone, Debug)]
pub struct ConstantsRegistry {
    digits: u32,
    bits: u32,
    pub pi: BigReal,
    pub sqrt_pi: BigReal,
    pub euler_gamma: BigReal,
    pub ln2: BigReal,
    pub zeta3: BigReal,
    pub zeta5: BigReal,
    pub zeta7: BigReal,
    pub euler_numbers: [i64; 9],
    ln_pi: BigReal,
}

impl ConstantsRegistry {
    pub fn new(digits: u32) -> Self {
        let bits = digits_to_bits(digits);
        let pi = bigreal::pi(bits);
        let sqrt_pi = pi.sqrt();
        let ln2 = bigreal::ln2(bits);
        let ln_pi = pi.ln();
        // psi^{(m)}(1) = (-1)^{m+1} m! zeta(m+1)
        let euler_gamma = -polygamma(0, 1.0, bits).expect("psi(1)");
        let zeta3 = -polygamma(2, 1.0, bits).expect("psi''(1)").mul_pow2(-1);
        let zeta5 =
            -(&polygamma(4, 1.0, bits).expect("psi^(4)(1)") / &BigReal::from_i64(24, bits));
        let zeta7 =
            -(&polygamma(6, 1.0, bits).expect("psi^(6)(1)") / &BigReal::from_i64(720, bits));
        ConstantsRegistry {
            digits,
            bits,
            pi,
            sqrt_pi,
            euler_gamma,
            ln2,
            zeta3,
            zeta5,
            zeta7,
            euler_numbers: EULER_NUMBERS,
            ln_pi,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn from_i64(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.bits)
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> BigReal {
        BigReal::from_ratio_i64(n, d, self.bits)
    }

    pub fn from_f64(&self, v: f64) -> BigReal {
        BigReal::from_f64(v, self.bits)
    }

    /// ln(16 pi), the offset between the series variables Lambda = ln kappa
    /// and L = ln(16 pi / kappa).
    pub fn ln_16pi(&self) -> BigReal {
        &self.ln_pi + &self.ln2.mul_pow2(2)
    }

    /// ln(4 pi).
    pub fn ln_4pi(&self) -> BigReal {
        &self.ln_pi + &self.ln2.mul_pow2(1)
    }

    pub fn ln_pi(&self) -> BigReal {
        self.ln_pi.clone()
    }

    /// Fault injection hook for the self-check harness: returns a registry
    /// whose zeta(3) is wrong by `rel` relatively.
    #[doc(hidden)]
    pub fn with_perturbed_zeta3(mut self, rel: f64) -> Self {
        let bump = &self.zeta3 * &self.from_f64(rel);
        self.zeta3 = &self.zeta3 + &bump;
        self
    }
}

impl Default for ConstantsRegistry {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifty_digit_reference_values() {
        let reg = ConstantsRegistry::new(50);
        let cases = [
            (
                &reg.pi,
                "3.1415926535897932384626433832795028841971693993751e0",
            ),
            (
                &reg.sqrt_pi,
                "1.7724538509055160272981674833411451827975494561224e0",
            ),
            (
                &reg.euler_gamma,
                "5.7721566490153286060651209008240243104215933593992e-1",
            ),
            (
                &reg.ln2,
                "6.9314718055994530941723212145817656807550013436026e-1",
            ),
            (
                &reg.zeta3,
                "1.2020569031595942853997381615114499907649862923405e0",
            ),
            (
                &reg.zeta5,
                "1.0369277551433699263313654864570341680570809195019e0",
            ),
            (
                &reg.zeta7,
                "1.0083492773819228268397975498497967595998635605652e0",
            ),
        ];
        for (value, expected) in cases {
            assert_eq!(value.to_decimal_string(50), expected);
        }
    }

    #[test]
    fn euler_numbers_table() {
        let reg = ConstantsRegistry::new(20);
        assert_eq!(reg.euler_numbers, [1, 0, -1, 0, 5, 0, -61, 0, 1385]);
    }

    #[test]
    fn zeta2_consistency_with_pi() {
        // Two independent code paths: psi'(1) vs pi^2/6.
        let reg = ConstantsRegistry::new(50);
        let psi1 = polygamma(1, 1.0, reg.bits()).unwrap();
        let pi2_6 = &(&reg.pi * &reg.pi) / &reg.from_i64(6);
        let err = (&psi1 - &pi2_6).abs();
        assert!(err.magnitude_exponent() < -(reg.bits() as i64 - 16));
    }

    #[test]
    fn configurable_precision_carries_through() {
        let reg = ConstantsRegistry::new(80);
        let product = &reg.sqrt_pi * &reg.sqrt_pi;
        let err = (&product - &reg.pi).abs();
        // 80 digits ~ 265 bits; the product should stay accurate to nearly that.
        assert!(err.magnitude_exponent() < -250);
    }
}
