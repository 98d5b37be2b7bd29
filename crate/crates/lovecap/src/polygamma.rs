//! Polygamma and gamma function values at arbitrary precision.
//!
//! Both are computed by shifting the argument upward with the recurrence
//! until the Bernoulli-number asymptotic series converges at the working
//! precision. Negative half-integer arguments are reached by the same
//! recurrence, which is what the bulk/edge matching formulas require.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Mutex, OnceLock};

use crate::bigreal::{ln2, BigReal};
use crate::error::{Error, Result};

/// Exact Bernoulli numbers B_0..B_n via the defining recurrence.
fn bernoulli_upto(n: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut list = cache.lock().unwrap();
    while list.len() <= n {
        let m = list.len();
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in list.iter().enumerate() {
            if !b.is_zero() {
                acc += BigRational::from(binom.clone()) * b;
            }
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let b = -acc / BigRational::from(BigInt::from(m + 1));
        list.push(b);
    }
    list[..=n].to_vec()
}

fn is_nonpositive_integer(a: f64) -> bool {
    a <= 0.0 && a.fract() == 0.0
}

/// Argument size above which the asymptotic series reaches `bits` precision.
fn asymptotic_threshold(bits: u32) -> f64 {
    ((bits + 16) as f64 * core::f64::consts::LN_2 / core::f64::consts::TAU).ceil() + 2.0
}

/// psi^{(k)}(a) at the given working precision.
///
/// `a` must avoid the poles at 0, -1, -2, ...; negative non-integer
/// arguments (the matching engine uses negative half-integers) are shifted
/// up through the recurrence.
pub fn polygamma(k: u32, a: f64, bits: u32) -> Result<BigReal> {
    if !a.is_finite() || is_nonpositive_integer(a) {
        return Err(Error::Domain(format!(
            "polygamma({k}, {a}): argument is a pole of the gamma function"
        )));
    }
    let x_min = asymptotic_threshold(bits);
    let shift = if a >= x_min {
        0u32
    } else {
        (x_min - a).ceil() as u32
    };
    let y = BigReal::from_f64(a, bits) + BigReal::from_i64(shift as i64, bits);
    let mut value = polygamma_asymptotic(k, &y, bits);
    if shift > 0 {
        // psi^{(k)}(a) = psi^{(k)}(a + N) - (-1)^k k! sum_i (a+i)^{-k-1}
        let kfact = factorial_bigreal(k, bits);
        let mut sum = BigReal::zero(bits);
        let a_big = BigReal::from_f64(a, bits);
        for i in 0..shift {
            let base = &a_big + &BigReal::from_i64(i as i64, bits);
            sum = &sum + &base.powi(-(k as i64) - 1);
        }
        let correction = &kfact * &sum;
        value = if k % 2 == 0 {
            &value - &correction
        } else {
            &value + &correction
        };
    }
    Ok(value)
}

/// Asymptotic polygamma series, valid for large positive `y`.
fn polygamma_asymptotic(k: u32, y: &BigReal, bits: u32) -> BigReal {
    let limit = -(bits as i64 + 8);
    let inv_y = y.recip();
    let inv_y2 = &inv_y * &inv_y;
    if k == 0 {
        // ln y - 1/(2y) - sum_j B_{2j} / (2j y^{2j})
        let mut acc = &y.ln() - &inv_y.mul_pow2(-1);
        let mut pow = inv_y2.clone();
        for j in 1..400usize {
            let b = bernoulli_rational(2 * j, bits);
            let term = &(&b * &pow) / &BigReal::from_i64(2 * j as i64, bits);
            acc = &acc - &term;
            if term.magnitude_exponent() < limit {
                return acc;
            }
            pow = &pow * &inv_y2;
        }
        panic!("polygamma asymptotic series failed to converge");
    }
    // (-1)^{k-1} [ (k-1)!/y^k + k!/(2 y^{k+1}) + sum_j B_{2j} (2j+k-1)!/((2j)! y^{2j+k}) ]
    let inv_yk = inv_y.powi(k as i64);
    let mut acc = &(&factorial_bigreal(k - 1, bits) * &inv_yk)
        + &(&factorial_bigreal(k, bits) * &(&inv_yk * &inv_y)).mul_pow2(-1);
    let mut pow = &inv_yk * &inv_y2;
    for j in 1..400usize {
        let b = bernoulli_rational(2 * j, bits);
        // (2j+k-1)! / (2j)! as an exact integer ratio
        let mut ratio = BigInt::one();
        for i in (2 * j + 1)..=(2 * j + k as usize - 1) {
            ratio *= BigInt::from(i);
        }
        let term = &(&b * &BigReal::from_bigint(ratio, bits)) * &pow;
        acc = &acc + &term;
        if term.magnitude_exponent() < limit {
            break;
        }
        pow = &pow * &inv_y2;
    }
    if k % 2 == 0 {
        -acc
    } else {
        acc
    }
}

fn bernoulli_rational(n: usize, bits: u32) -> BigReal {
    let b = &bernoulli_upto(n)[n];
    BigReal::from_big_ratio(b.numer(), b.denom(), bits)
}

pub(crate) fn factorial_bigreal(n: u32, bits: u32) -> BigReal {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= BigInt::from(i);
    }
    BigReal::from_bigint(acc, bits)
}

/// Gamma function at arbitrary precision for any non-pole real argument.
pub fn gamma(a: f64, bits: u32) -> Result<BigReal> {
    if !a.is_finite() || is_nonpositive_integer(a) {
        return Err(Error::Domain(format!(
            "gamma({a}): argument is a pole of the gamma function"
        )));
    }
    let x_min = asymptotic_threshold(bits);
    let shift = if a >= x_min {
        0u32
    } else {
        (x_min - a).ceil() as u32
    };
    let y = BigReal::from_f64(a, bits) + BigReal::from_i64(shift as i64, bits);
    // ln Gamma(y) = (y - 1/2) ln y - y + ln(2 pi)/2 + sum_j B_{2j} / (2j (2j-1) y^{2j-1})
    let limit = -(bits as i64 + 8);
    let half = BigReal::from_ratio_i64(1, 2, bits);
    let ln_2pi = &crate::bigreal::pi(bits).ln() + &ln2(bits);
    let mut lng = &(&(&y - &half) * &y.ln()) - &y;
    lng = &lng + &ln_2pi.mul_pow2(-1);
    let inv_y = y.recip();
    let inv_y2 = &inv_y * &inv_y;
    let mut pow = inv_y.clone();
    for j in 1..400usize {
        let b = bernoulli_rational(2 * j, bits);
        let den = BigReal::from_i64((2 * j as i64) * (2 * j as i64 - 1), bits);
        let term = &(&b * &pow) / &den;
        lng = &lng + &term;
        if term.magnitude_exponent() < limit {
            break;
        }
        pow = &pow * &inv_y2;
    }
    let gamma_y = lng.exp();
    if shift == 0 {
        return Ok(gamma_y);
    }
    // Gamma(a) = Gamma(a + N) / prod_{i=0}^{N-1} (a + i)
    let a_big = BigReal::from_f64(a, bits);
    let mut prod = BigReal::from_i64(1, bits);
    for i in 0..shift {
        prod = &prod * &(&a_big + &BigReal::from_i64(i as i64, bits));
    }
    Ok(&gamma_y / &prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::digits_to_bits;

    const BITS: u32 = 200;

    fn assert_digits(value: &BigReal, expected: &str, sig: u32) {
        assert_eq!(value.to_decimal_string(sig), expected);
    }

    #[test]
    fn bernoulli_first_values() {
        let b = bernoulli_upto(12);
        assert_eq!(b[0], BigRational::one());
        assert_eq!(b[1], BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(b[2], BigRational::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(b[3], BigRational::zero());
        assert_eq!(
            b[12],
            BigRational::new(BigInt::from(-691), BigInt::from(2730))
        );
    }

    #[test]
    fn digamma_reference_values() {
        assert_digits(
            &polygamma(0, 1.0, BITS).unwrap(),
            "-5.772156649015328606065120900824024310422e-1",
            40,
        );
        assert_digits(
            &polygamma(0, 0.5, BITS).unwrap(),
            "-1.963510026021423479440976332998755567193e0",
            40,
        );
        assert_digits(
            &polygamma(0, 1.5, BITS).unwrap(),
            "3.648997397857652055902366700124443280684e-2",
            40,
        );
    }

    #[test]
    fn higher_order_reference_values() {
        assert_digits(
            &polygamma(1, 1.0, BITS).unwrap(),
            "1.644934066848226436472415166646025189219e0",
            40,
        );
        assert_digits(
            &polygamma(2, 1.5, BITS).unwrap(),
            "-8.287966442343199955963342611602998707098e-1",
            40,
        );
    }

    #[test]
    fn negative_half_integer_arguments() {
        assert_digits(
            &polygamma(3, -2.5, BITS).unwrap(),
            "1.947478762191876224216255178738902964349e2",
            40,
        );
        assert_digits(
            &polygamma(5, -3.5, BITS).unwrap(),
            "1.538220532694920158118571611378773928592e4",
            40,
        );
    }

    #[test]
    fn pole_arguments_rejected() {
        assert!(polygamma(0, 0.0, BITS).is_err());
        assert!(polygamma(2, -3.0, BITS).is_err());
        assert!(gamma(-1.0, BITS).is_err());
    }

    #[test]
    fn series_oracle_brute_force() {
        // Independent check: psi^{(k)}(a) = (-1)^{k+1} k! sum_n (n+a)^{-k-1}
        // summed directly with an Euler-Maclaurin tail estimate.
        for (k, a) in [(1u32, 1.0f64), (1, 0.5), (2, 1.5), (3, 2.5)] {
            let n_terms = 200_000u64;
            let mut sum = 0.0f64;
            for n in (0..n_terms).rev() {
                sum += (n as f64 + a).powi(-(k as i32) - 1);
            }
            let top = n_terms as f64 + a;
            let tail = top.powi(-(k as i32)) / k as f64 + 0.5 * top.powi(-(k as i32) - 1);
            let mut kfact = 1.0;
            for i in 2..=k {
                kfact *= i as f64;
            }
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            let oracle = sign * kfact * (sum + tail);
            let got = polygamma(k, a, BITS).unwrap().to_f64();
            assert!(
                (got - oracle).abs() <= 1e-10 * oracle.abs().max(1.0),
                "psi({k},{a}): {got} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn gamma_reference_values() {
        assert_digits(
            &gamma(-0.5, BITS).unwrap(),
            "-3.544907701811032054596334966682290365595e0",
            40,
        );
        assert_digits(
            &gamma(7.5, BITS).unwrap(),
            "1.871254305797788346476077053603950424042e3",
            40,
        );
        assert_digits(&gamma(13.0, BITS).unwrap(), "4.790016e8", 7);
    }

    #[test]
    fn gamma_half_matches_sqrt_pi() {
        let bits = digits_to_bits(50);
        let g = gamma(0.5, bits).unwrap();
        let sp = crate::bigreal::pi(bits).sqrt();
        let err = (&g - &sp).abs();
        assert!(err.magnitude_exponent() < -(bits as i64 - 16));
    }
}
