//! Arbitrary-precision binary floating point on top of `num-bigint`.
//!
//! A [`BigReal`] is `mantissa * 2^exp` rounded to a configurable number of
//! significant bits. The coefficient recursion loses tens of digits to
//! cancellation by order seven, so everything feeding it runs at 50 decimal
//! digits (plus guard bits) by default.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

const LOG2_10: f64 = core::f64::consts::LOG2_10;

/// Guard bits carried beyond the requested decimal precision.
const GUARD_BITS: u32 = 32;

/// Working mantissa bits for a decimal-digit request.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Extended-precision real number: `mant * 2^exp` with `bits` working precision.
#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    bits: u32,
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            exp: 0,
            bits,
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        BigReal {
            mant: BigInt::from(v),
            exp: 0,
            bits,
        }
        .normalized()
    }

    pub fn from_bigint(v: BigInt, bits: u32) -> Self {
        BigReal {
            mant: v,
            exp: 0,
            bits,
        }
        .normalized()
    }

    /// Exact embedding of a finite binary64 value.
    pub fn from_f64(v: f64, bits: u32) -> Self {
        assert!(v.is_finite(), "BigReal::from_f64 requires a finite value");
        if v == 0.0 {
            return Self::zero(bits);
        }
        let b = v.to_bits();
        let sign = if b >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((b >> 52) & 0x7ff) as i64;
        let frac = b & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        BigReal {
            mant: BigInt::from(sign) * BigInt::from(m),
            exp: e,
            bits,
        }
        .normalized()
    }

    /// `n / d` rounded to the working precision.
    pub fn from_ratio_i64(n: i64, d: i64, bits: u32) -> Self {
        Self::from_i64(n, bits) / Self::from_i64(d, bits)
    }

    pub fn from_big_ratio(n: &BigInt, d: &BigInt, bits: u32) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        Self::from_bigint(n.clone(), bits) / Self::from_bigint(d.clone(), bits)
    }

    /// Parses a plain or scientific decimal string ("-1.25e-3").
    pub fn from_decimal_str(s: &str, bits: u32) -> Option<Self> {
        let s = s.trim();
        let (mant_part, exp10) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
            None => (s, 0i64),
        };
        let (sign, digits) = match mant_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, mant_part.strip_prefix('+').unwrap_or(mant_part)),
        };
        let (int_part, frac_part) = match digits.find('.') {
            Some(i) => (&digits[..i], &digits[i + 1..]),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let all: String = format!("{int_part}{frac_part}");
        let i = all.parse::<BigInt>().ok()?;
        let p = exp10 - frac_part.len() as i64;
        let value = if p >= 0 {
            Self::from_bigint(i * BigInt::from(10u32).pow(p as u32), bits)
        } else {
            let den = BigInt::from(10u32).pow((-p) as u32);
            Self::from_big_ratio(&i, &den, bits)
        };
        Some(if sign < 0 { -&value } else { value })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            exp: self.exp,
            bits: self.bits,
        }
    }

    /// Rounds the mantissa to `bits` significant bits (half to even).
    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        // Strip trailing zero bits so exact values stay small.
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        let nbits = self.mant.bits() as u32;
        if nbits <= self.bits {
            return self;
        }
        let shift = (nbits - self.bits) as u64;
        let (sign, mag) = (self.mant.sign(), self.mant.magnitude().clone());
        let kept: BigUint = &mag >> shift;
        let dropped: BigUint = &mag - (&kept << shift);
        let half: BigUint = BigUint::from(1u32) << (shift - 1);
        let round_up = match dropped.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => kept.bit(0),
        };
        let kept = if round_up {
            kept + BigUint::from(1u32)
        } else {
            kept
        };
        self.mant = BigInt::from_biguint(sign, kept);
        self.exp += shift as i64;
        // Rounding may have produced a new trailing zero run or an extra bit.
        if !self.mant.is_zero() {
            let tz = self.mant.trailing_zeros().unwrap_or(0);
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        } else {
            self.exp = 0;
        }
        self
    }

    fn with_bits(&self, bits: u32) -> Self {
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp,
            bits,
        }
        .normalized()
    }

    /// Exact sum before rounding; used by the arithmetic operators and `cmp`.
    fn add_exact(&self, other: &Self) -> (BigInt, i64) {
        if self.mant.is_zero() {
            return (other.mant.clone(), other.exp);
        }
        if other.mant.is_zero() {
            return (self.mant.clone(), self.exp);
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        (a + b, exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.mant.is_zero() {
            return self.clone();
        }
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp + k,
            bits: self.bits,
        }
    }

    pub fn recip(&self) -> Self {
        Self::from_i64(1, self.bits) / self.clone()
    }

    pub fn powi(&self, mut n: i64) -> Self {
        let bits = self.bits;
        if n == 0 {
            return Self::from_i64(1, bits);
        }
        let invert = n < 0;
        if invert {
            n = -n;
        }
        let mut base = self.clone();
        let mut acc = Self::from_i64(1, bits);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        if invert {
            acc.recip()
        } else {
            acc
        }
    }

    /// Square root; panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigReal");
        if self.is_zero() {
            return self.clone();
        }
        let t = (self.bits + 8) as i64;
        let mb = self.mant.bits() as i64;
        let mut s = (2 * t - mb).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let scaled: BigUint = self.mant.magnitude() << s as u64;
        let root = scaled.sqrt();
        BigReal {
            mant: BigInt::from_biguint(Sign::Plus, root),
            exp: (self.exp - s) / 2,
            bits: self.bits,
        }
        .normalized()
    }

    /// Natural logarithm; panics on non-positive input.
    pub fn ln(&self) -> Self {
        assert!(
            !self.is_zero() && !self.is_negative(),
            "ln of non-positive BigReal"
        );
        let bits = self.bits;
        // x = f * 2^p with f in [1, 2).
        let mb = self.mant.bits() as i64;
        let p = self.exp + mb - 1;
        let f = BigReal {
            mant: self.mant.clone(),
            exp: -(mb - 1),
            bits,
        };
        let one = Self::from_i64(1, bits);
        let t = &(&f - &one) / &(&f + &one);
        let t2 = &t * &t;
        let mut term = t.clone();
        let mut sum = t;
        let mut k = 1i64;
        let limit = -(bits as i64 + 8);
        loop {
            term = &term * &t2;
            k += 2;
            let contrib = &term / &Self::from_i64(k, bits);
            if contrib.is_zero() || contrib.magnitude_exponent() < limit {
                break;
            }
            sum = &sum + &contrib;
        }
        let ln_f = sum.mul_pow2(1);
        if p == 0 {
            ln_f
        } else {
            &ln_f + &(&ln2(bits) * &Self::from_i64(p, bits))
        }
    }

    /// Exponential function.
    pub fn exp(&self) -> Self {
        let bits = self.bits;
        let one = Self::from_i64(1, bits);
        if self.is_zero() {
            return one;
        }
        let l2 = ln2(bits);
        let k = (self.to_f64() / core::f64::consts::LN_2).round() as i64;
        let r = self - &(&l2 * &Self::from_i64(k, bits));
        let mut term = one.clone();
        let mut sum = one;
        let mut j = 1i64;
        let limit = -(bits as i64 + 8);
        loop {
            term = &(&term * &r) / &Self::from_i64(j, bits);
            if term.is_zero() || term.magnitude_exponent() < limit {
                break;
            }
            sum = &sum + &term;
            j += 1;
        }
        sum.mul_pow2(k)
    }

    /// Exponent of the leading bit: value magnitude is in [2^e, 2^(e+1)).
    pub fn magnitude_exponent(&self) -> i64 {
        if self.mant.is_zero() {
            i64::MIN / 2
        } else {
            self.exp + self.mant.bits() as i64 - 1
        }
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Correctly rounded conversion to binary64.
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let nbits = mag.bits() as i64;
        // Take 54 bits plus a sticky flag, then round to 53.
        let shift = nbits - 54;
        let (top, sticky) = if shift > 0 {
            let kept: BigUint = mag >> shift as u64;
            let sticky = (mag - (&kept << shift as u64)) != BigUint::zero();
            (kept.to_u64().unwrap(), sticky)
        } else {
            ((mag << (-shift) as u64).to_u64().unwrap(), false)
        };
        let mut e2 = self.exp + shift;
        let low = top & 1;
        let mut m = top >> 1;
        e2 += 1;
        if low == 1 && (sticky || (m & 1) == 1) {
            m += 1;
            if m == (1u64 << 53) {
                m >>= 1;
                e2 += 1;
            }
        }
        let mut v = m as f64;
        // Apply 2^e2 in safe chunks.
        let mut e = e2;
        while e > 600 {
            v *= 2f64.powi(600);
            e -= 600;
        }
        while e < -600 {
            v *= 2f64.powi(-600);
            e += 600;
        }
        v *= 2f64.powi(e as i32);
        if neg {
            -v
        } else {
            v
        }
    }

    /// Exact comparison of the represented values.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        let (diff, _) = self.add_exact(&-other);
        match diff.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    /// Scientific-notation decimal string with `sig` significant digits.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.mant.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        // Find d with 10^d <= |v| < 10^(d+1).
        let l2 = self.magnitude_exponent();
        let mut d = (l2 as f64 * core::f64::consts::LOG10_2).floor() as i64;
        while self.abs().cmp_pow10(d) == Ordering::Less {
            d -= 1;
        }
        while self.abs().cmp_pow10(d + 1) != Ordering::Less {
            d += 1;
        }
        // N = round(|v| * 10^(sig-1-d)), an integer with `sig` digits.
        let k = sig as i64 - 1 - d;
        let mag = self.mant.magnitude().clone();
        let n = if k >= 0 {
            let scaled = mag * BigUint::from(10u32).pow(k as u32);
            shift_round(&scaled, -self.exp)
        } else {
            let den = BigUint::from(10u32).pow((-k) as u32);
            if self.exp >= 0 {
                div_round(&(mag << self.exp as u64), &den)
            } else {
                div_round(&mag, &(den << (-self.exp) as u64))
            }
        };
        let mut digits = n.to_string();
        // Rounding can push to sig+1 digits (e.g. 9.99 -> 10.0).
        let extra = digits.len() as i64 - sig as i64;
        if extra > 0 {
            digits.truncate(sig as usize);
            d += extra;
        }
        while digits.len() < sig as usize {
            digits.push('0');
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&d.to_string());
        out
    }

    /// Compares |self| against 10^d.
    fn cmp_pow10(&self, d: i64) -> Ordering {
        let mag = self.mant.magnitude().clone();
        // Compare mag * 2^exp with 10^d by clearing negative exponents.
        let (mut lhs, mut rhs) = if d >= 0 {
            (mag, BigUint::from(10u32).pow(d as u32))
        } else {
            (mag * BigUint::from(10u32).pow((-d) as u32), BigUint::from(1u32))
        };
        if self.exp >= 0 {
            lhs <<= self.exp as u64;
        } else {
            rhs <<= (-self.exp) as u64;
        }
        lhs.cmp(&rhs)
    }
}

/// `v >> shift` with round-half-to-even (shift may be negative for a left shift).
fn shift_round(v: &BigUint, shift: i64) -> BigUint {
    if shift <= 0 {
        return v << (-shift) as u64;
    }
    let shift = shift as u64;
    let kept: BigUint = v >> shift;
    let dropped = v - (&kept << shift);
    let half: BigUint = BigUint::from(1u32) << (shift - 1);
    match dropped.cmp(&half) {
        Ordering::Greater => kept + 1u32,
        Ordering::Less => kept,
        Ordering::Equal => {
            if kept.bit(0) {
                kept + 1u32
            } else {
                kept
            }
        }
    }
}

/// `n / d` with round-half-to-even.
fn div_round(n: &BigUint, d: &BigUint) -> BigUint {
    let q = n / d;
    let r = n - &q * d;
    let twice = &r << 1u32;
    match twice.cmp(d) {
        Ordering::Greater => q + 1u32,
        Ordering::Less => q,
        Ordering::Equal => {
            if q.bit(0) {
                q + 1u32
            } else {
                q
            }
        }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -self.mant.clone(),
            exp: self.exp,
            bits: self.bits,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        let bits = self.bits.max(rhs.bits);
        // A huge exponent gap means the smaller operand is below the rounding
        // granularity of the larger one.
        if !self.mant.is_zero() && !rhs.mant.is_zero() {
            let gap = self.magnitude_exponent() - rhs.magnitude_exponent();
            if gap > bits as i64 * 2 + 64 {
                return self.with_bits(bits);
            }
            if gap < -(bits as i64 * 2 + 64) {
                return rhs.with_bits(bits);
            }
        }
        let (m, e) = self.add_exact(rhs);
        BigReal { mant: m, exp: e, bits }.normalized()
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self + &-rhs
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        BigReal {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
            bits: self.bits.max(rhs.bits),
        }
        .normalized()
    }
}

impl Div for &BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        assert!(!rhs.mant.is_zero(), "division by zero BigReal");
        let bits = self.bits.max(rhs.bits);
        if self.mant.is_zero() {
            return BigReal::zero(bits);
        }
        let na = self.mant.bits() as i64;
        let nb = rhs.mant.bits() as i64;
        let s = bits as i64 + 3 + (nb - na).max(0);
        let num = &self.mant << s as u64;
        let q = &num / &rhs.mant;
        let r = &num - &q * &rhs.mant;
        // Fold the remainder into a sticky bit.
        let mant = if r.is_zero() {
            q << 1u32
        } else {
            (q << 1u32) + BigInt::from(self.mant.sign() == rhs.mant.sign()) * 2 - 1
        };
        BigReal {
            mant,
            exp: self.exp - rhs.exp - s - 1,
            bits,
        }
        .normalized()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_real(other) == Ordering::Equal
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_real(other))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits.saturating_sub(GUARD_BITS)) as f64 / LOG2_10).floor() as u32;
        write!(f, "{}", self.to_decimal_string(digits.max(17)))
    }
}

fn constant_cache() -> &'static Mutex<HashMap<(u8, u32), BigReal>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, u32), BigReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(bits: u32) -> BigReal {
    if let Some(v) = constant_cache().lock().unwrap().get(&(0, bits)) {
        return v.clone();
    }
    let third = BigReal::from_ratio_i64(1, 3, bits);
    let t2 = &third * &third;
    let mut term = third.clone();
    let mut sum = third;
    let mut k = 1i64;
    let limit = -(bits as i64 + 8);
    loop {
        term = &term * &t2;
        k += 2;
        let contrib = &term / &BigReal::from_i64(k, bits);
        if contrib.is_zero() || contrib.magnitude_exponent() < limit {
            break;
        }
        sum = &sum + &contrib;
    }
    let v = sum.mul_pow2(1);
    constant_cache().lock().unwrap().insert((0, bits), v.clone());
    v
}

/// pi from the Machin formula 16 atan(1/5) - 4 atan(1/239).
pub fn pi(bits: u32) -> BigReal {
    if let Some(v) = constant_cache().lock().unwrap().get(&(1, bits)) {
        return v.clone();
    }
    let v = &atan_inv(5, bits).mul_pow2(4) - &atan_inv(239, bits).mul_pow2(2);
    constant_cache().lock().unwrap().insert((1, bits), v.clone());
    v
}

/// atan(1/q) by its Maclaurin series.
fn atan_inv(q: i64, bits: u32) -> BigReal {
    let x = BigReal::from_ratio_i64(1, q, bits);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = x;
    let mut k = 1i64;
    let mut negate = true;
    let limit = -(bits as i64 + 8);
    loop {
        power = &power * &x2;
        k += 2;
        let contrib = &power / &BigReal::from_i64(k, bits);
        if contrib.is_zero() || contrib.magnitude_exponent() < limit {
            break;
        }
        sum = if negate { &sum - &contrib } else { &sum + &contrib };
        negate = !negate;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 200;

    fn br(v: f64) -> BigReal {
        BigReal::from_f64(v, BITS)
    }

    #[test]
    fn arithmetic_round_trips_through_f64() {
        let a = br(3.5);
        let b = br(-1.25);
        assert_eq!((&a + &b).to_f64(), 2.25);
        assert_eq!((&a - &b).to_f64(), 4.75);
        assert_eq!((&a * &b).to_f64(), -4.375);
        assert_eq!((&a / &b).to_f64(), -2.8);
    }

    #[test]
    fn division_matches_rational() {
        let x = BigReal::from_ratio_i64(1, 3, BITS);
        let three = br(3.0);
        let back = &x * &three;
        let err = (&back - &br(1.0)).abs();
        assert!(err.magnitude_exponent() < -(BITS as i64 - 4));
    }

    #[test]
    fn sqrt_squares_back() {
        let two = br(2.0);
        let r = two.sqrt();
        let err = (&(&r * &r) - &two).abs();
        assert!(err.magnitude_exponent() < -(BITS as i64 - 8));
    }

    #[test]
    fn exp_ln_inverse() {
        for v in [0.1, 1.0, 2.5, 123.456, 1e-8, 7.0e9] {
            let x = br(v);
            let err = (&x.ln().exp() - &x).abs();
            let rel = &err / &x.abs();
            assert!(
                rel.magnitude_exponent() < -(BITS as i64 - 16),
                "exp(ln({v})) off by 2^{}",
                rel.magnitude_exponent()
            );
        }
    }

    #[test]
    fn pi_reference_digits() {
        let p = pi(digits_to_bits(50));
        assert_eq!(
            p.to_decimal_string(50),
            "3.1415926535897932384626433832795028841971693993751e0"
        );
    }

    #[test]
    fn ln2_reference_digits() {
        let v = ln2(digits_to_bits(50));
        assert_eq!(
            v.to_decimal_string(50),
            "6.9314718055994530941723212145817656807550013436026e-1"
        );
    }

    #[test]
    fn decimal_string_round_trip() {
        for s in ["1.25e0", "-3.0e-7", "9.999999999e9", "4.0e0"] {
            let v = BigReal::from_decimal_str(s, BITS).unwrap();
            let back = BigReal::from_decimal_str(&v.to_decimal_string(30), BITS).unwrap();
            let err = (&v - &back).abs();
            assert!(err.is_zero() || err.magnitude_exponent() < v.magnitude_exponent() - 90);
        }
    }

    #[test]
    fn to_f64_rounds_correctly() {
        // 1 + 2^-60 rounds to 1.0 in binary64.
        let one = br(1.0);
        let tiny = BigReal::from_i64(1, BITS).mul_pow2(-60);
        assert_eq!((&one + &tiny).to_f64(), 1.0);
        // 1 + 2^-52 is representable.
        let ulp = BigReal::from_i64(1, BITS).mul_pow2(-52);
        assert_eq!((&one + &ulp).to_f64(), 1.0 + 2f64.powi(-52));
    }

    #[test]
    fn comparisons_are_exact() {
        let a = BigReal::from_ratio_i64(1, 3, BITS);
        let b = BigReal::from_ratio_i64(1, 3, 64);
        assert!(a != b, "different precisions of 1/3 differ as reals");
        assert_eq!(br(2.0).cmp_real(&br(2.0)), Ordering::Equal);
        assert!(br(-1.0) < br(1.0));
    }

    #[test]
    fn powi_handles_negative_exponents() {
        let two = br(2.0);
        assert_eq!(two.powi(10).to_f64(), 1024.0);
        assert_eq!(two.powi(-3).to_f64(), 0.125);
        assert_eq!(two.powi(0).to_f64(), 1.0);
    }
}
