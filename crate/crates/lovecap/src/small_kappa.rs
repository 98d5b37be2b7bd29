//! Hard-coded small-separation capacitance series.
//!
//! The capacitance at kappa << 1 is written as
//!
//!   C(kappa) = (1/pi) sum_{j=-1}^{7} b_j(L) (kappa/8pi)^j,   L = ln(16 pi / kappa),
//!
//! with the b_j stored verbatim in the published normalization. This table is
//! the trust anchor the matching engine must reproduce, so it is kept fully
//! independent of the recursion code.

use crate::bigreal::BigReal;
use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::love::SeparationKappa;

/// Coefficients b_{-1}..b_7 as polynomials in the reporting variable L.
#[derive(Clone, Debug)]
pub struct SmallKappaSeries {
    /// Entry i holds b_{i-1}; index 0 is the 1/kappa coefficient.
    coeffs: Vec<LogPoly>,
    bits: u32,
}

pub const MIN_ORDER: i32 = -1;
pub const MAX_ORDER: i32 = 7;

impl SmallKappaSeries {
    pub fn from_coeffs(coeffs: Vec<LogPoly>, bits: u32) -> Self {
        SmallKappaSeries { coeffs, bits }
    }

    /// b_j as a polynomial in L.
    pub fn coefficient(&self, j: i32) -> Option<&LogPoly> {
        if j < MIN_ORDER {
            return None;
        }
        self.coeffs.get((j - MIN_ORDER) as usize)
    }

    pub fn max_order(&self) -> i32 {
        MIN_ORDER + self.coeffs.len() as i32 - 1
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Partial sum (1/pi) sum_{j<=order} b_j(L) (kappa/8pi)^j at full precision.
    pub fn eval_bigreal(&self, reg: &ConstantsRegistry, kappa: &BigReal, order: i32) -> BigReal {
        let ell = &reg.ln_16pi() - &kappa.ln();
        let x = kappa / &reg.pi.mul_pow2(3);
        let mut acc = BigReal::zero(reg.bits());
        for j in MIN_ORDER..=order.min(self.max_order()) {
            let b = self.coefficient(j).expect("coefficient in range");
            acc = &acc + &(&b.eval(&ell) * &x.powi(j as i64));
        }
        &acc / &reg.pi
    }

    /// The j-th series term alone, (1/pi) b_j(L) (kappa/8pi)^j.
    pub fn term(&self, reg: &ConstantsRegistry, kappa: f64, j: i32) -> f64 {
        let kb = reg.from_f64(kappa);
        let ell = &reg.ln_16pi() - &kb.ln();
        let x = &kb / &reg.pi.mul_pow2(3);
        let b = self.coefficient(j).expect("coefficient in range");
        (&(&b.eval(&ell) * &x.powi(j as i64)) / &reg.pi).to_f64()
    }
}

/// Leading two terms of the small-separation capacitance:
/// 1/(4 kappa) + (ln(16 pi / kappa) - 1)/(4 pi).
pub fn kirchhoff_capacitance(reg: &ConstantsRegistry, kappa: SeparationKappa) -> f64 {
    let k = reg.from_f64(kappa.get());
    let ell = &reg.ln_16pi() - &k.ln();
    let quarter = k.mul_pow2(2).recip();
    let edge = &(&ell - &reg.from_i64(1)) / &reg.pi.mul_pow2(2);
    (&quarter + &edge).to_f64()
}

/// Partial sum of the hard-coded series through (kappa/8pi)^order.
pub fn eval_small_kappa(
    reg: &ConstantsRegistry,
    series: &SmallKappaSeries,
    kappa: SeparationKappa,
    order: i32,
) -> Result<f64> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "series order must lie in [{MIN_ORDER}, {MAX_ORDER}], got {order}"
        )));
    }
    let k = reg.from_f64(kappa.get());
    Ok(series.eval_bigreal(reg, &k, order).to_f64())
}

/// The full hard-coded coefficient table b_{-1}..b_7.
pub fn builtin_coefficients(reg: &ConstantsRegistry) -> SmallKappaSeries {
    let bits = reg.bits();
    let r = |n: i64, d: i64| reg.from_ratio(n, d);
    let i = |n: i64| reg.from_i64(n);
    let z3 = &reg.zeta3;
    let z5 = &reg.zeta5;
    let z7 = &reg.zeta7;
    let z3z3 = z3 * z3;
    let z3z5 = z3 * z5;
    // Combination helper: c0 + c3*zeta3 + c33*zeta3^2 + c5*zeta5 + c35*zeta3*zeta5 + c7*zeta7
    let zc = |c0: BigReal, c3: i64, c33: i64, c5: i64, c35: i64, c7: i64| -> BigReal {
        let mut acc = c0;
        if c3 != 0 {
            acc = &acc + &(z3 * &i(c3));
        }
        if c33 != 0 {
            acc = &acc + &(&z3z3 * &i(c33));
        }
        if c5 != 0 {
            acc = &acc + &(z5 * &i(c5));
        }
        if c35 != 0 {
            acc = &acc + &(&z3z5 * &i(c35));
        }
        if c7 != 0 {
            acc = &acc + &(z7 * &i(c7));
        }
        acc
    };
    let poly = |coeffs: Vec<BigReal>| LogPoly::from_coeffs(coeffs, bits);

    let b_m1 = poly(vec![r(1, 32)]);
    let b_0 = poly(vec![r(-1, 4), r(1, 4)]);
    let b_1 = poly(vec![i(-1), i(0), r(1, 2)]);
    let b_2 = poly(vec![zc(i(-1), -3, 0, 0, 0, 0), i(0), i(2)]);
    let b_3 = poly(vec![
        zc(i(0), -32, 0, 0, 0, 0),
        zc(i(4), 12, 0, 0, 0, 0),
        i(8),
        r(-8, 3),
    ]);
    let b_4 = poly(vec![
        zc(i(2), -240, 0, -135, 0, 0),
        zc(i(16), 304, 0, 0, 0, 0),
        zc(i(16), -48, 0, 0, 0, 0),
        i(-32),
        r(16, 3),
    ]);
    let b_5 = poly(vec![
        zc(i(8), -1104, 648, -4896, 0, 0),
        zc(i(40), 4096, 0, 1620, 0, 0),
        zc(i(-32), -2016, 0, 0, 0, 0),
        zc(i(-192), 192, 0, 0, 0, 0),
        r(352, 3),
        r(-64, 5),
    ]);
    let b_6 = poly(vec![
        zc(r(64, 3), -2368, 32928, -90720, 0, -28350),
        zc(i(32), 34048, -10368, 84816, 0, 0),
        zc(i(-448), -40832, 0, -12960, 0, 0),
        zc(r(-1792, 3), 11520, 0, 0, 0, 0),
        zc(r(3712, 3), -768, 0, 0, 0, 0),
        r(-1280, 3),
        r(512, 15),
    ]);
    let b_7 = poly(vec![
        zc(i(32), 9952, 818048, -1053360, 434160, -1855872),
        zc(r(-896, 3), 183552, -700032, 2153664, 0, 567000),
        zc(i(-2112), -503808, 103680, -900000, 0, 0),
        // (128/3)(7460 zeta3 + 2025 zeta5 + 14); the zeta3 multiplier is not integral.
        &(&r(1792, 3) + &(z3 * &r(954880, 3))) + &(z5 * &i(86400)),
        zc(i(7936), -60672, 0, 0, 0, 0),
        zc(i(-6656), 3072, 0, 0, 0, 0),
        r(70144, 45),
        r(-2048, 21),
    ]);

    SmallKappaSeries::from_coeffs(
        vec![b_m1, b_0, b_1, b_2, b_3, b_4, b_5, b_6, b_7],
        bits,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg() -> ConstantsRegistry {
        ConstantsRegistry::new(50)
    }

    fn kappa(v: f64) -> SeparationKappa {
        SeparationKappa::new(v).unwrap()
    }

    #[test]
    fn kirchhoff_log_term_vanishes_at_sixteen_pi() {
        // At kappa = 16 pi, L = 0 and the value is 1/(64 pi) - 1/(4 pi).
        let r = reg();
        let pi = r.pi.to_f64();
        let got = kirchhoff_capacitance(&r, kappa(16.0 * pi));
        let expected = 1.0 / (64.0 * pi) - 1.0 / (4.0 * pi);
        assert!((got - expected).abs() < 1e-15, "{got} vs {expected}");
    }

    #[test]
    fn kirchhoff_parallel_plate_limit() {
        // kappa -> 0+: 4 kappa C(kappa) -> 1.
        let r = reg();
        let k = 1e-8;
        let v = 4.0 * k * kirchhoff_capacitance(&r, kappa(k));
        assert!((v - 1.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn order_zero_equals_kirchhoff_everywhere() {
        let r = reg();
        let series = builtin_coefficients(&r);
        for k in [0.01, 0.1, 0.5, 2.0, 100.0] {
            let a = eval_small_kappa(&r, &series, kappa(k), 0).unwrap();
            let b = kirchhoff_capacitance(&r, kappa(k));
            assert!((a - b).abs() <= 1e-15 * b.abs(), "kappa={k}: {a} vs {b}");
        }
    }

    #[test]
    fn order_four_matches_fifty_digit_literal() {
        // Frozen from an independent 50-digit evaluation of the printed
        // expansion at kappa = 0.1.
        let r = reg();
        let series = builtin_coefficients(&r);
        let got = eval_small_kappa(&r, &series, kappa(0.1), 4).unwrap();
        assert!((got - 2.9389807965326336).abs() < 1e-15, "{got}");
        // Exact decimal 0.1, matching the independent evaluation.
        let tenth = BigReal::from_decimal_str("0.1", r.bits()).unwrap();
        let exact = series.eval_bigreal(&r, &tenth, 4);
        let frozen = BigReal::from_decimal_str(
            "2.9389807965326334325584239454928309044571202885073",
            r.bits(),
        )
        .unwrap();
        let err = (&exact - &frozen).abs();
        assert!(err.to_f64() < 1e-45, "50-digit mismatch: {}", err.to_f64());
    }

    #[test]
    fn stored_table_reproduces_literal_expansion() {
        // Double-entry check: rebuild each b_j from the printed expansion's
        // bracket polynomial and prefactor (coefficient of kappa^j is
        // sign * bracket / (q pi^w)), then compare coefficient by coefficient:
        // b_j = pi (8 pi)^j * coeff.
        let r = reg();
        let bits = r.bits();
        let series = builtin_coefficients(&r);
        let z3 = &r.zeta3;
        let z5 = &r.zeta5;
        let i = |n: i64| r.from_i64(n);
        let brackets: Vec<(i32, Vec<BigReal>, i64, u32)> = vec![
            (-1, vec![i(1)], 4, 0),
            (0, vec![i(-1), i(1)], 4, 1),
            (1, vec![i(-2), i(0), i(1)], 16, 2),
            (
                2,
                vec![&i(-1) - &(z3 * &i(3)), i(0), i(2)],
                64,
                3,
            ),
            (
                3,
                vec![
                    z3 * &i(24),
                    &i(-3) - &(z3 * &i(9)),
                    i(-6),
                    i(2),
                ],
                -384,
                4,
            ),
            (
                4,
                vec![
                    &(&i(6) - &(z3 * &i(720))) - &(z5 * &i(405)),
                    &i(48) + &(z3 * &i(912)),
                    &i(48) - &(z3 * &i(144)),
                    i(-96),
                    i(16),
                ],
                12288,
                5,
            ),
        ];
        for (j, bracket, q, pi_pow) in brackets {
            let lit = LogPoly::from_coeffs(bracket, bits);
            // b_j = bracket * 8^j * pi^{1+j-pi_pow} / q
            let factor = &(&r.from_i64(8).powi(j as i64) * &r.pi.powi(1 + j as i64 - pi_pow as i64))
                / &r.from_i64(q);
            let rebuilt = lit.scale(&factor);
            let stored = series.coefficient(j).unwrap();
            let diff = &rebuilt - stored;
            let scale = 2f64.powi(stored.max_coeff_exponent().max(0) as i32);
            assert!(
                diff.approx_eq_abs(&LogPoly::zero(bits), 1e-40 * scale),
                "b_{j} mismatch: stored {stored}, rebuilt {rebuilt}"
            );
        }
    }

    #[test]
    fn b5_at_zero_log() {
        let r = reg();
        let series = builtin_coefficients(&r);
        let b5 = series.coefficient(5).unwrap();
        let z3 = r.zeta3.to_f64();
        let z5 = r.zeta5.to_f64();
        let expected = 8.0 * (-138.0 * z3 + 81.0 * z3 * z3 - 612.0 * z5 + 1.0);
        let got = b5.eval(&r.from_i64(0)).to_f64();
        assert!((got - expected).abs() < 1e-10 * expected.abs(), "{got} vs {expected}");
    }

    #[test]
    fn truncation_consistency() {
        // |S_j - S_{j+1}| is exactly the next term, so it is bounded by
        // 2 |b_{j+1}(L)| (kappa/8pi)^{j+1} / pi.
        let r = reg();
        let series = builtin_coefficients(&r);
        for k in [0.05, 0.2, 0.5] {
            let ell = &r.ln_16pi() - &r.from_f64(k).ln();
            for j in MIN_ORDER..MAX_ORDER {
                let a = eval_small_kappa(&r, &series, kappa(k), j).unwrap();
                let b = eval_small_kappa(&r, &series, kappa(k), j + 1).unwrap();
                let bound = 2.0
                    * series.coefficient(j + 1).unwrap().eval(&ell).to_f64().abs()
                    * (k / (8.0 * r.pi.to_f64())).powi(j as i32 + 1)
                    / r.pi.to_f64();
                assert!(
                    (a - b).abs() <= bound.max(1e-18),
                    "kappa={k} j={j}: diff {} bound {bound}",
                    (a - b).abs()
                );
            }
        }
    }

    #[test]
    fn order_seven_term_scale() {
        let r = reg();
        let series = builtin_coefficients(&r);
        let six = eval_small_kappa(&r, &series, kappa(0.1), 6).unwrap();
        let seven = eval_small_kappa(&r, &series, kappa(0.1), 7).unwrap();
        let term7 = series.term(&r, 0.1, 7);
        // The partial sums are O(3), so their f64 difference carries their
        // rounding; compare at that scale.
        assert!(((seven - six) - term7).abs() <= 1e-15 * seven.abs());
        // The term really is O((kappa/8pi)^7).
        assert!(term7.abs() < 1e-9);
    }

    #[test]
    fn rejects_out_of_range_order() {
        let r = reg();
        let series = builtin_coefficients(&r);
        assert!(eval_small_kappa(&r, &series, kappa(0.1), 8).is_err());
        assert!(eval_small_kappa(&r, &series, kappa(0.1), -2).is_err());
    }
}
