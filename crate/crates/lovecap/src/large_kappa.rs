//! Large-separation solution by Legendre-polynomial expansion.
//!
//! Writing f(x, kappa) = sum a_n(kappa) P_n(x) (even n only) turns the Love
//! equation into a small linear system for the a_n whose truncation at order
//! M is accurate to O(1/kappa^{2M+2}); the capacitance is a_0/pi. The module
//! also carries the printed nine-term 1/kappa series as a hard-coded check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::love::SeparationKappa;

/// Largest supported truncation order of the linear system.
pub const MAX_SYSTEM_ORDER: usize = 12;
/// The coefficient matrix degenerates near kappa = 2/pi; refuse below
/// (1 + margin) times that.
const ILL_CONDITIONING_MARGIN: f64 = 0.5;
/// The printed series' tail is O(1) near kappa = 1; the evaluator refuses
/// below this.
pub const MIN_SERIES_KAPPA: f64 = 2.0;

/// Truncated Legendre solution: coefficients a_0, a_2, ..., a_{2M}.
#[derive(Clone, Debug)]
pub struct LegendreSolution {
    kappa: SeparationKappa,
    order: usize,
    /// a[i] is the coefficient of P_{2i}.
    a: Vec<f64>,
}

impl LegendreSolution {
    pub fn kappa(&self) -> f64 {
        self.kappa.get()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of P_n; odd n and n > 2M are identically zero.
    pub fn coefficient(&self, n: usize) -> f64 {
        if n % 2 == 1 {
            return 0.0;
        }
        self.a.get(n / 2).copied().unwrap_or(0.0)
    }

    /// Capacitance a_0 / pi.
    pub fn capacitance(&self) -> f64 {
        self.a[0] / core::f64::consts::PI
    }

    /// Moment T_n = sum_r a_r F_r^n of the expanded solution.
    pub fn moment(&self, n: u32) -> f64 {
        if n % 2 == 1 {
            return 0.0;
        }
        let mut acc = 0.0;
        for (i, &a) in self.a.iter().enumerate() {
            acc += a * legendre_moment_f64(2 * i, n as usize);
        }
        acc
    }
}

/// Exact moment F_n^l = integral of x^l P_n(x) over [-1, 1].
///
/// Nonzero only for l >= n with l + n even, where it equals
/// 2^{n+1} l! ((l+n)/2)! / ((l+n+1)! ((l-n)/2)!).
pub fn legendre_moment(n: usize, l: usize) -> BigRational {
    if l < n || (l + n) % 2 == 1 {
        return BigRational::zero();
    }
    let num = BigInt::from(2u32).pow(n as u32 + 1) * factorial(l) * factorial((l + n) / 2);
    let den = factorial(l + n + 1) * factorial((l - n) / 2);
    BigRational::new(num, den)
}

fn legendre_moment_f64(n: usize, l: usize) -> f64 {
    ratio_to_f64(&legendre_moment(n, l))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Exact binomial coefficient.
fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Cached exact moments F_n^l for n, l <= max_index.
#[derive(Clone, Debug)]
pub struct LegendreMomentTable {
    max_index: usize,
    values: Vec<Vec<BigRational>>,
}

impl LegendreMomentTable {
    pub fn new(max_index: usize) -> Self {
        let values = (0..=max_index)
            .map(|n| (0..=max_index).map(|l| legendre_moment(n, l)).collect())
            .collect();
        LegendreMomentTable { max_index, values }
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn get(&self, n: usize, l: usize) -> &BigRational {
        &self.values[n][l]
    }
}

/// Solves the truncated linear system for the even Legendre coefficients.
pub fn solve_large_system(kappa: SeparationKappa, order: usize) -> Result<LegendreSolution> {
    let k = kappa.get();
    if order > MAX_SYSTEM_ORDER {
        return Err(Error::InvalidArgument(format!(
            "truncation order {order} exceeds the supported maximum {MAX_SYSTEM_ORDER}"
        )));
    }
    let threshold = 2.0 / core::f64::consts::PI * (1.0 + ILL_CONDITIONING_MARGIN);
    if k <= threshold {
        return Err(Error::Accuracy(format!(
            "kappa = {k} is too close to the degeneracy of the truncated system near \
             2/pi (requires kappa > {threshold:.4})"
        )));
    }
    let m = order;
    let dim = m + 1;
    let table = LegendreMomentTable::new(2 * m);
    // Row n, column r (both even, stored as indices i = n/2, j = r/2):
    //   (2/(2n+1)) a_n - sum G_{n r} a_r = 2 delta_{n 0},
    //   G_{n r} = sum_{mm<=M} sum_{l<=2mm} (-1)^{mm+l}/pi C(2mm, l)
    //             kappa^{-2mm-1} F_r^l F_n^{2mm-l}.
    let mut a = vec![0.0f64; dim * dim];
    let mut rhs = vec![0.0f64; dim];
    rhs[0] = 2.0;
    for i in 0..dim {
        let n = 2 * i;
        for j in 0..dim {
            let r = 2 * j;
            let mut g = 0.0f64;
            for mm in 0..=m {
                let mut inner = 0.0f64;
                for l in 0..=(2 * mm) {
                    let f_r_l = ratio_to_f64(table.get(r, l));
                    if f_r_l == 0.0 {
                        continue;
                    }
                    let f_n = ratio_to_f64(table.get(n, 2 * mm - l));
                    if f_n == 0.0 {
                        continue;
                    }
                    let sign = if (mm + l) % 2 == 0 { 1.0 } else { -1.0 };
                    let binom = binomial(2 * mm, l).to_f64().unwrap();
                    inner += sign * binom * f_r_l * f_n;
                }
                g += inner * k.powi(-(2 * mm as i32) - 1);
            }
            a[i * dim + j] = -g / core::f64::consts::PI;
        }
        a[i * dim + i] += 2.0 / (2 * n + 1) as f64;
    }
    let coeffs = solve_dense_small(&mut a, &mut rhs, dim)?;
    Ok(LegendreSolution {
        kappa,
        order,
        a: coeffs,
    })
}

/// Gaussian elimination with partial pivoting; fine for dim <= 13.
fn solve_dense_small(a: &mut [f64], b: &mut [f64], n: usize) -> Result<Vec<f64>> {
    for col in 0..n {
        let mut pivot = col;
        for row in (col + 1)..n {
            if a[row * n + col].abs() > a[pivot * n + col].abs() {
                pivot = row;
            }
        }
        if a[pivot * n + col].abs() < 1e-300 {
            return Err(Error::LinearSolve(
                "singular truncated Legendre system".into(),
            ));
        }
        if pivot != col {
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            b.swap(col, pivot);
        }
        let d = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / d;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0f64; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * x[k];
        }
        x[col] = acc / a[col * n + col];
    }
    Ok(x)
}

/// The printed nine-term 1/kappa expansion, evaluated at high precision.
pub fn capacitance_large_series(reg: &ConstantsRegistry, kappa: SeparationKappa) -> Result<f64> {
    let k = kappa.get();
    if k < MIN_SERIES_KAPPA {
        return Err(Error::Accuracy(format!(
            "kappa = {k} is below the validated range of the 1/kappa series \
             (requires kappa >= {MIN_SERIES_KAPPA}); use the dense solver instead"
        )));
    }
    let kb = reg.from_f64(k);
    Ok(large_series_bigreal(reg, &kb).to_f64())
}

pub(crate) fn large_series_bigreal(
    reg: &ConstantsRegistry,
    kappa: &crate::bigreal::BigReal,
) -> crate::bigreal::BigReal {
    let coeffs = series_coefficients(reg);
    let inv_k = kappa.recip();
    let mut acc = crate::bigreal::BigReal::zero(reg.bits());
    let mut power = reg.from_i64(1);
    for c in &coeffs {
        acc = &acc + &(c * &power);
        power = &power * &inv_k;
    }
    acc
}

/// Coefficients of kappa^{-j}, j = 0..8, as exact-rational-in-pi expressions.
pub(crate) fn series_coefficients(reg: &ConstantsRegistry) -> Vec<crate::bigreal::BigReal> {
    let pi = &reg.pi;
    let pi2 = pi * pi;
    let pi4 = &pi2 * &pi2;
    let pi6 = &pi4 * &pi2;
    let i = |n: i64| reg.from_i64(n);
    let r = |n: i64, d: i64| reg.from_ratio(n, d);
    vec![
        pi.recip(),
        &i(2) / &pi2,
        &i(4) / &(&pi2 * pi),
        &(&r(-4, 3) * &(&pi2 - &i(6))) / &pi4,
        &(&r(-16, 3) * &(&pi2 - &i(3))) / &(&pi4 * pi),
        &(&r(16, 15) * &(&(&pi4.mul_pow2(1) - &(&pi2 * &i(15))) + &i(30))) / &pi6,
        &(&r(32, 3) * &(&(&pi4 - &(&pi2 * &i(4))) + &i(6))) / &(&pi6 * pi),
        &(&r(-32, 315)
            * &(&(&(&(&pi6 * &i(45)) - &(&pi4 * &i(371))) + &(&pi2 * &i(1050))) - &i(1260)))
            / &(&pi6 * &pi2),
        &(&r(-64, 315)
            * &(&(&(&(&pi6 * &i(128)) - &(&pi4 * &i(567))) + &(&pi2 * &i(1260))) - &i(1260)))
            / &(&pi6 * &(&pi2 * pi)),
    ]
}

/// Evaluates the truncated Legendre expansion at a point x in [-1, 1].
pub fn f_large_eval(sol: &LegendreSolution, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "Legendre expansion point must lie in [-1, 1], got {x}"
        )));
    }
    // P_n by upward recurrence, accumulating only even terms.
    let mut acc = 0.0;
    let mut p_prev = 1.0; // P_0
    let mut p_curr = x; // P_1
    acc += sol.coefficient(0) * p_prev;
    let top = 2 * sol.order();
    for n in 2..=top.max(2) {
        let nf = n as f64;
        let p_next = ((2.0 * nf - 1.0) * x * p_curr - (nf - 1.0) * p_prev) / nf;
        p_prev = p_curr;
        p_curr = p_next;
        if n % 2 == 0 {
            acc += sol.coefficient(n) * p_curr;
        }
    }
    Ok(acc)
}
