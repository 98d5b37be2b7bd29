//! Machine derivation of the small-separation expansion by bulk/edge matching.
//!
//! The resolvent carries two asymptotic representations: a bulk ansatz with
//! coefficients c_{n,m,k} multiplying log powers, and an edge (Laplace-space)
//! ansatz with coefficients Q_{n,m}. Equating their expansions term by term
//! in kappa^m s^n ln^l(kappa/4s) gives one linear equation per index triple;
//! walked in the right order, each equation contains exactly one unknown
//! coefficient and the whole family is fixed recursively. Every unknown is a
//! polynomial in Lambda = ln kappa.
//!
//! The gamma-derivative brackets on both sides are evaluated with jet
//! arithmetic, never symbolically.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bigreal::BigReal;
use crate::constants::ConstantsRegistry;
use crate::error::{Error, Result};
use crate::jet::{exp_ln_jet, gamma_jet, Jet};
use crate::logpoly::LogPoly;
use crate::love::SeparationKappa;
use crate::series::SeriesExpansion;
use crate::small_kappa::SmallKappaSeries;

/// Largest total order with published check data.
pub const MAX_PUBLISHED_ORDER: i32 = 7;

/// Index triple of one matching equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchEquationId {
    pub n: i32,
    pub m: i32,
    pub l: i32,
}

impl MatchEquationId {
    pub fn new(n: i32, m: i32, l: i32) -> Result<Self> {
        if m < 0 || n < -m || l < 0 {
            return Err(Error::InvalidArgument(format!(
                "matching equation indices require m >= 0, n >= -m, l >= 0; got ({n}, {m}, {l})"
            )));
        }
        Ok(MatchEquationId { n, m, l })
    }
}

impl fmt::Display for MatchEquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.m, self.l)
    }
}

/// Identifier of a coefficient referenced by a matching equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoefId {
    /// Bulk coefficient c_{n,m,k}.
    Bulk { n: i32, m: i32, k: i32 },
    /// Edge coefficient Q_{n,m}.
    Edge { n: i32, m: i32 },
}

impl fmt::Display for CoefId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefId::Bulk { n, m, k } => write!(f, "c[{n},{m},{k}]"),
            CoefId::Edge { n, m } => write!(f, "Q[{n},{m}]"),
        }
    }
}

/// One side of a matching equation: the known part plus at most one
/// unresolved coefficient with its (constant or log-polynomial) factor.
#[derive(Clone, Debug)]
pub struct VContribution {
    pub known: LogPoly,
    pub unknown: Option<(CoefId, LogPoly)>,
}

impl VContribution {
    /// The fully evaluated value; errors if an unknown is still present.
    pub fn into_logpoly(self) -> Result<LogPoly> {
        match self.unknown {
            None => Ok(self.known),
            Some((id, _)) => Err(Error::MissingCoefficients(vec![id.to_string()])),
        }
    }
}

/// Storage for the solved bulk and edge coefficients.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    bulk: BTreeMap<(i32, i32, i32), LogPoly>,
    edge: BTreeMap<(i32, i32), LogPoly>,
    max_order: i32,
    digits: u32,
}

impl CoefficientTable {
    fn empty(digits: u32) -> Self {
        CoefficientTable {
            bulk: BTreeMap::new(),
            edge: BTreeMap::new(),
            max_order: -1,
            digits,
        }
    }

    /// Bulk coefficient c_{n,m,k} as a polynomial in Lambda = ln kappa.
    pub fn c(&self, n: i32, m: i32, k: i32) -> Option<&LogPoly> {
        self.bulk.get(&(n, m, k))
    }

    /// Edge coefficient Q_{n,m}.
    pub fn q(&self, n: i32, m: i32) -> Option<&LogPoly> {
        self.edge.get(&(n, m))
    }

    /// Total order P: every coefficient with n + m <= P is present.
    pub fn max_order(&self) -> i32 {
        self.max_order
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    fn require_c(&self, n: i32, m: i32, k: i32) -> Result<&LogPoly> {
        self.c(n, m, k).ok_or_else(|| {
            Error::IncompleteTable(format!(
                "c[{n},{m},{k}] requires a table of order {} (have {})",
                n + m,
                self.max_order
            ))
        })
    }
}

/// Shared evaluation state: the registry plus memoized gamma-bracket values.
pub struct MatchingContext<'a> {
    reg: &'a ConstantsRegistry,
    gamma_bracket: RefCell<HashMap<(i32, i32, bool, usize), BigReal>>,
    edge_jet: RefCell<Option<Jet>>,
}

impl<'a> MatchingContext<'a> {
    pub fn new(reg: &'a ConstantsRegistry) -> Self {
        MatchingContext {
            reg,
            gamma_bracket: RefCell::new(HashMap::new()),
            edge_jet: RefCell::new(None),
        }
    }

    pub fn registry(&self) -> &ConstantsRegistry {
        self.reg
    }

    /// Derivative order N coefficient of the bulk gamma bracket
    ///   [Gamma(n+2j+x+1/2) - 2j lambda_k Gamma(n+2j+x-1/2)]
    ///     / (Gamma(n-x+1/2) Gamma(n+j+x+1/2))
    /// as a Taylor coefficient (not multiplied by N!).
    fn bulk_bracket_coeff(&self, n: i32, j: i32, k_odd: bool, order: usize) -> Result<BigReal> {
        let key = (n, j, k_odd && j > 0, order);
        if let Some(v) = self.gamma_bracket.borrow().get(&key) {
            return Ok(v.clone());
        }
        let reg = self.reg;
        let num1 = gamma_jet(reg, n as f64 + 2.0 * j as f64 + 0.5, order)?;
        let numerator = if k_odd && j > 0 {
            let num2 = gamma_jet(reg, n as f64 + 2.0 * j as f64 - 0.5, order)?;
            num1.sub(&num2.scale_real(&reg.from_i64(2 * j as i64)))
        } else {
            num1
        };
        let den1 = gamma_jet(reg, n as f64 + 0.5, order)?
            .negate_variable()
            .recip()?;
        let den2 = gamma_jet(reg, n as f64 + j as f64 + 0.5, order)?.recip()?;
        let bracket = numerator.mul(&den1).mul(&den2);
        let coeff = bracket.coeff(order);
        debug_assert!(coeff.is_constant());
        let value = coeff.coeff(0);
        self.gamma_bracket.borrow_mut().insert(key, value.clone());
        Ok(value)
    }

    /// Taylor coefficient `order` of e^{x ln(4 pi e / kappa)} Gamma(1 + x);
    /// a polynomial of degree `order` in Lambda.
    fn edge_factor_coeff(&self, order: usize) -> Result<LogPoly> {
        {
            let cached = self.edge_jet.borrow();
            if let Some(jet) = cached.as_ref() {
                if jet.order() >= order {
                    return Ok(jet.coeff(order).clone());
                }
            }
        }
        let reg = self.reg;
        let bits = reg.bits();
        // ln(4 pi e / kappa) = 1 + ln(4 pi) - Lambda
        let exponent = LogPoly::from_coeffs(
            vec![&reg.from_i64(1) + &reg.ln_4pi(), reg.from_i64(-1)],
            bits,
        );
        let target = order.max(8);
        let jet = exp_ln_jet(&exponent, target).mul(&gamma_jet(reg, 1.0, target)?);
        let coeff = jet.coeff(order).clone();
        *self.edge_jet.borrow_mut() = Some(jet);
        Ok(coeff)
    }
}

/// Closed form of the edge seed coefficients:
/// Q_{n,0} = -(sqrt(pi)/2) [(2n)!]^2 / (4^n n!)^3 * (2n+1)/(2n-1).
pub fn q_closed_form(reg: &ConstantsRegistry, n: u32) -> BigReal {
    let two_n_fact = big_factorial(2 * n);
    let n_fact = big_factorial(n);
    let four_n = BigInt::from(4u32).pow(n);
    let num = &two_n_fact * &two_n_fact * BigInt::from(2 * n as i64 + 1);
    let den = (four_n * n_fact).pow(3) * BigInt::from(2 * n as i64 - 1);
    let ratio = BigReal::from_big_ratio(&num, &den, reg.bits());
    -&(&reg.sqrt_pi.mul_pow2(-1) * &ratio)
}

fn big_factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n as u64 {
        acc *= BigInt::from(i);
    }
    acc
}

/// Bulk side V_b(n, m, l) of the matching equation.
///
/// Sums (-1)^j k!/(4^j j! (k-l)!) c_{n+j, m-j, k} [gamma bracket]^{(k-l)}
/// over j in [max(0, -n), m] and k in [l, n+m+1]. Absent coefficients are
/// returned through the affine contract; more than one absent coefficient is
/// a dependency error listing them.
pub fn assemble_vb(
    ctx: &MatchingContext<'_>,
    id: MatchEquationId,
    table: &CoefficientTable,
) -> Result<VContribution> {
    let reg = ctx.registry();
    let bits = reg.bits();
    let mut known = LogPoly::zero(bits);
    let mut unknown: Option<(CoefId, LogPoly)> = None;
    let mut missing: Vec<CoefId> = Vec::new();
    for j in 0.max(-id.n)..=id.m {
        for k in id.l..=(id.n + id.m + 1) {
            // prefactor (-1)^j k! / (4^j j!) together with the (k-l)! from
            // turning the derivative into a Taylor coefficient.
            let num = big_factorial(k as u32);
            let den = BigInt::from(4u32).pow(j as u32) * big_factorial(j as u32);
            let mut pref = BigReal::from_big_ratio(&num, &den, bits);
            if j % 2 == 1 {
                pref = -pref;
            }
            let bracket = ctx.bulk_bracket_coeff(id.n, j, k % 2 == 1, (k - id.l) as usize)?;
            let factor = LogPoly::constant(&pref * &bracket);
            let target = CoefId::Bulk {
                n: id.n + j,
                m: id.m - j,
                k,
            };
            match table.c(id.n + j, id.m - j, k) {
                Some(c) => known = &known + &(c * &factor),
                None => {
                    if unknown.is_none() && missing.is_empty() {
                        unknown = Some((target, factor));
                    } else {
                        if let Some((prev, _)) = unknown.take() {
                            missing.push(prev);
                        }
                        missing.push(target);
                    }
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCoefficients(
            missing.iter().map(|c| c.to_string()).collect(),
        ));
    }
    Ok(VContribution { known, unknown })
}

/// Edge side V_e(n, m, l) of the matching equation.
///
/// Sums pi^{-j} Q_{j-n-1, m+n+1-j} [e^{x ln(4 pi e/kappa)} Gamma(1+x)]^{(j-l)}
/// over j in [max(l, n+1), m+n+1], with the same affine contract as
/// [`assemble_vb`].
pub fn assemble_ve(
    ctx: &MatchingContext<'_>,
    id: MatchEquationId,
    table: &CoefficientTable,
) -> Result<VContribution> {
    let reg = ctx.registry();
    let bits = reg.bits();
    let mut known = LogPoly::zero(bits);
    let mut unknown: Option<(CoefId, LogPoly)> = None;
    let mut missing: Vec<CoefId> = Vec::new();
    for j in id.l.max(id.n + 1)..=(id.m + id.n + 1) {
        let factor = ctx
            .edge_factor_coeff((j - id.l) as usize)?
            .scale(&reg.pi.powi(-(j as i64)));
        let target = CoefId::Edge {
            n: j - id.n - 1,
            m: id.m + id.n + 1 - j,
        };
        match table.q(j - id.n - 1, id.m + id.n + 1 - j) {
            Some(q) => known = &known + &(q * &factor),
            None => {
                if unknown.is_none() && missing.is_empty() {
                    unknown = Some((target, factor));
                } else {
                    if let Some((prev, _)) = unknown.take() {
                        missing.push(prev);
                    }
                    missing.push(target);
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCoefficients(
            missing.iter().map(|c| c.to_string()).collect(),
        ));
    }
    Ok(VContribution { known, unknown })
}

/// Residual V_b - V_e of a fully determined equation.
pub fn equation_residual(
    ctx: &MatchingContext<'_>,
    id: MatchEquationId,
    table: &CoefficientTable,
) -> Result<LogPoly> {
    let vb = assemble_vb(ctx, id, table)?.into_logpoly()?;
    let ve = assemble_ve(ctx, id, table)?.into_logpoly()?;
    Ok(&vb - &ve)
}

/// Runs the dependency-ordered recursion up to total order `p_max` <= 7.
///
/// Orders beyond 7 have no published cross-check; use
/// [`run_matching_unanchored`] to compute them anyway.
pub fn run_matching(reg: &ConstantsRegistry, p_max: i32) -> Result<CoefficientTable> {
    if !(0..=MAX_PUBLISHED_ORDER).contains(&p_max) {
        return Err(Error::InvalidArgument(format!(
            "matching order must lie in [0, {MAX_PUBLISHED_ORDER}], got {p_max}"
        )));
    }
    run_matching_unanchored(reg, p_max)
}

/// [`run_matching`] without the published-order cap.
#[doc(hidden)]
pub fn run_matching_unanchored(reg: &ConstantsRegistry, p_max: i32) -> Result<CoefficientTable> {
    if p_max < 0 {
        return Err(Error::InvalidArgument("order must be nonnegative".into()));
    }
    let ctx = MatchingContext::new(reg);
    let mut table = CoefficientTable::empty(reg.digits());
    // Seed the edge coefficients fixed by the single-summation terms.
    for n in 0..=p_max {
        table
            .edge
            .insert((n, 0), LogPoly::constant(q_closed_form(reg, n as u32)));
    }
    for p in 0..=p_max {
        // Edge coefficients Q_{a,b} of this order, in ascending b so each
        // equation sees the previously solved ones.
        for b in 1..=p {
            let a = p - b;
            let id = MatchEquationId::new(-a - 1, p, 0)?;
            let expected = CoefId::Edge { n: a, m: b };
            let value = solve_single_unknown(&ctx, id, &table, expected)?;
            table.edge.insert((a, b), value);
        }
        // Bulk coefficients c_{n,m,k} of this order: k descending, then m
        // ascending, mirroring the dependency structure of the worked
        // low-order solution.
        for k in (0..=p + 1).rev() {
            for m in 0..=p {
                let n = p - m;
                let id = MatchEquationId::new(n, m, k)?;
                let expected = CoefId::Bulk { n, m, k };
                let value = solve_single_unknown(&ctx, id, &table, expected)?;
                table.bulk.insert((n, m, k), value);
            }
        }
        table.max_order = p;
    }
    Ok(table)
}

/// Solves V_b(id) = V_e(id) for its single absent coefficient.
fn solve_single_unknown(
    ctx: &MatchingContext<'_>,
    id: MatchEquationId,
    table: &CoefficientTable,
    expected: CoefId,
) -> Result<LogPoly> {
    let vb = assemble_vb(ctx, id, table)?;
    let ve = assemble_ve(ctx, id, table)?;
    let (key, factor, rhs) = match (vb.unknown, ve.unknown) {
        (Some((key, factor)), None) => (key, factor, &ve.known - &vb.known),
        (None, Some((key, factor))) => (key, factor, &vb.known - &ve.known),
        (None, None) => {
            return Err(Error::OrderingViolation {
                id: id.to_string(),
                detail: "no unknown coefficient in this equation".into(),
            })
        }
        (Some((a, _)), Some((b, _))) => {
            return Err(Error::OrderingViolation {
                id: id.to_string(),
                detail: format!("multiple unknowns: {a}, {b}"),
            })
        }
    };
    if key != expected {
        return Err(Error::OrderingViolation {
            id: id.to_string(),
            detail: format!("solved for {key}, expected {expected}"),
        });
    }
    if !factor.is_constant() || factor.is_zero() {
        return Err(Error::OrderingViolation {
            id: id.to_string(),
            detail: format!("unknown {key} has a non-constant or vanishing factor {factor}"),
        });
    }
    let mut value = rhs.scale(&factor.coeff(0).recip());
    // The ansatz bounds the log-degree of every coefficient by n+m+1; what
    // lies above must be cancellation residue at the working precision.
    let budget = match key {
        CoefId::Bulk { n, m, .. } => (n + m + 1) as usize,
        CoefId::Edge { n, m } => (n + m + 1) as usize,
    };
    let junk_tol = 10f64.powi(-(ctx.registry().digits() as i32 - 15));
    let scale = 2f64.powi(value.max_coeff_exponent().clamp(-60, 60) as i32);
    if !value.truncate_to_degree(budget, junk_tol * scale.max(1.0)) {
        return Err(Error::OrderingViolation {
            id: id.to_string(),
            detail: format!("{key} exceeds its log-degree budget {budget}"),
        });
    }
    Ok(value)
}

/// Assembles the capacitance series from the solved table:
/// C = 1/(4 kappa) + (1/2 pi) sum_m (c_{0,m,0} - 2 c_{0,m,1}) kappa^m,
/// re-expressed in the b_j / L normalization.
pub fn capacitance_series_from_table(
    reg: &ConstantsRegistry,
    table: &CoefficientTable,
    m_max: i32,
) -> Result<SmallKappaSeries> {
    if m_max < 0 || m_max > table.max_order() {
        return Err(Error::IncompleteTable(format!(
            "capacitance series to order {m_max} needs a table of that order (have {})",
            table.max_order()
        )));
    }
    let bits = reg.bits();
    let ln16pi = reg.ln_16pi();
    let minus_one = reg.from_i64(-1);
    let mut coeffs = Vec::with_capacity((m_max + 2) as usize);
    coeffs.push(LogPoly::constant(reg.from_ratio(1, 32)));
    for j in 0..=m_max {
        let c0 = table.require_c(0, j, 0)?;
        let c1 = table.require_c(0, j, 1)?;
        // b_j = (8 pi)^j / 2 * (c_{0,j,0} - 2 c_{0,j,1}), converted to L.
        let eight_pi_j = reg.pi.mul_pow2(3).powi(j as i64);
        let combined = (c0 - &c1.scale(&reg.from_i64(2))).scale(&eight_pi_j.mul_pow2(-1));
        coeffs.push(combined.compose_affine(&ln16pi, &minus_one));
    }
    Ok(SmallKappaSeries::from_coeffs(coeffs, bits))
}

/// Second moment from the resolvent:
/// T_2 = pi/(8 kappa) + sum_m [ (c_{0,m,0}/2 - 5 c_{0,m,1}/3) kappa^m
///   + (4 c_{0,m+1,2} + c_{1,m,0} - 2 c_{1,m,1}) kappa^{m+1}
///   - 8 c_{0,m+2,3} kappa^{m+2} ].
pub fn t2_series_from_table(
    reg: &ConstantsRegistry,
    table: &CoefficientTable,
    m_max: i32,
) -> Result<SeriesExpansion> {
    if m_max < 0 || m_max + 2 > table.max_order() {
        return Err(Error::IncompleteTable(format!(
            "T2 series to order {m_max} reaches c[0,{},3]; the table holds order {}",
            m_max + 2,
            table.max_order()
        )));
    }
    let bits = reg.bits();
    let mut terms: Vec<(i32, LogPoly)> = Vec::new();
    terms.push((-1, LogPoly::constant(reg.pi.mul_pow2(-3))));
    for m in 0..=m_max {
        let lead = &table.require_c(0, m, 0)?.scale(&reg.from_ratio(1, 2))
            - &table.require_c(0, m, 1)?.scale(&reg.from_ratio(5, 3));
        terms.push((m, lead));
        let mid = &(&table.require_c(0, m + 1, 2)?.scale(&reg.from_i64(4))
            + table.require_c(1, m, 0)?)
            - &table.require_c(1, m, 1)?.scale(&reg.from_i64(2));
        terms.push((m + 1, mid));
        let tail = table.require_c(0, m + 2, 3)?.scale(&reg.from_i64(-8));
        terms.push((m + 2, tail));
    }
    Ok(SeriesExpansion::new(terms, bits))
}

/// Evaluates the truncated bulk ansatz for f(x) at small kappa.
///
/// Valid well away from the endpoints: requires 1 - x^2 >= 10 kappa.
pub fn f_bulk_eval(
    table: &CoefficientTable,
    x: f64,
    kappa: SeparationKappa,
    order: i32,
) -> Result<f64> {
    let k = kappa.get();
    if 1.0 - x * x < 10.0 * k {
        return Err(Error::Validity(format!(
            "bulk ansatz for f needs 1 - x^2 >= 10 kappa; got x = {x}, kappa = {k}"
        )));
    }
    if order > table.max_order() {
        return Err(Error::IncompleteTable(format!(
            "bulk evaluation to order {order} exceeds table order {}",
            table.max_order()
        )));
    }
    let ln_kappa = k.ln();
    let log_ratio = ((1.0 - x) / (1.0 + x)).ln();
    let one_minus_x2 = 1.0 - x * x;
    let pi = core::f64::consts::PI;
    let mut acc = Complex64::new(one_minus_x2.sqrt() / k, 0.0);
    for n in 0..=order {
        for m in 0..=(order - n) {
            let kappa_pow = k.powi(n + m);
            let weight = (if n % 2 == 0 { 1.0 } else { -1.0 })
                / one_minus_x2.powf(n as f64 + 0.5)
                / pi;
            for kk in 0..=(n + m + 1) {
                let c = table
                    .c(n, m, kk)
                    .expect("complete table")
                    .eval_f64(ln_kappa);
                if c == 0.0 {
                    continue;
                }
                let x_pow = if kk % 2 == 1 { x } else { 1.0 };
                // Inner sum over p with the parity selector
                // lambda_{k-p+1} = 1 iff k - p is even.
                let mut inner = Complex64::new(0.0, 0.0);
                for p in 0..=kk {
                    if (kk - p) % 2 != 0 {
                        continue;
                    }
                    let comb = binomial_f64(kk as u32, p as u32);
                    inner += Complex64::new(0.0, pi).powi(kk - p)
                        * comb
                        * log_ratio.powi(p);
                }
                acc += weight * kappa_pow * c * x_pow * inner;
            }
        }
    }
    debug_assert!(
        acc.im.abs() <= 1e-30 * (1.0 + acc.re.abs()),
        "imaginary residue {} survived the parity reduction",
        acc.im
    );
    Ok(acc.re)
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Evaluates the truncated bulk resolvent R(z) = pi z / kappa + R~_b(z).
///
/// Valid outside disks of radius 10 kappa around z = +-1.
pub fn resolvent_bulk_eval(
    table: &CoefficientTable,
    z: Complex64,
    kappa: SeparationKappa,
    order: i32,
) -> Result<Complex64> {
    let k = kappa.get();
    let guard = 10.0 * k;
    if (z - 1.0).norm() < guard || (z + 1.0).norm() < guard {
        return Err(Error::Validity(format!(
            "bulk resolvent needs |z -+ 1| >= 10 kappa; got z = {z}, kappa = {k}"
        )));
    }
    if order > table.max_order() {
        return Err(Error::IncompleteTable(format!(
            "bulk evaluation to order {order} exceeds table order {}",
            table.max_order()
        )));
    }
    let ln_kappa = k.ln();
    let pi = core::f64::consts::PI;
    // Principal branches of sqrt(z-1) sqrt(z+1) put the cut on [-1, 1].
    let root = (z - 1.0).sqrt() * (z + 1.0).sqrt();
    let log_ratio = ((z - 1.0) / (z + 1.0)).ln();
    let mut acc = (pi / k) * (z - root);
    for n in 0..=order {
        for m in 0..=(order - n) {
            let kappa_pow = k.powi(n + m);
            let z2_pow = root.powi(2 * n + 1); // (z^2-1)^{n+1/2}
            for kk in 0..=(n + m + 1) {
                let c = table
                    .c(n, m, kk)
                    .expect("complete table")
                    .eval_f64(ln_kappa);
                if c == 0.0 {
                    continue;
                }
                let z_pow = if kk % 2 == 1 { z } else { Complex64::new(1.0, 0.0) };
                acc += c * kappa_pow * z_pow * log_ratio.powi(kk) / z2_pow;
            }
        }
    }
    Ok(acc)
}

#[derive(Serialize, Deserialize)]
struct TableEntryJson {
    kind: String,
    n: i32,
    m: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<i32>,
    poly_lnk: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    precision: u32,
    #[serde(rename = "P")]
    p: i32,
    entries: Vec<TableEntryJson>,
}

impl CoefficientTable {
    /// JSON document with every coefficient as decimal strings, ascending in
    /// Lambda = ln kappa.
    pub fn to_json(&self) -> serde_json::Value {
        let digits = self.digits;
        let poly_strings = |poly: &LogPoly| -> Vec<String> {
            poly.coeffs()
                .iter()
                .map(|c| c.to_decimal_string(digits))
                .collect()
        };
        let mut entries = Vec::new();
        for ((n, m, k), poly) in &self.bulk {
            entries.push(TableEntryJson {
                kind: "c".into(),
                n: *n,
                m: *m,
                k: Some(*k),
                poly_lnk: poly_strings(poly),
            });
        }
        for ((n, m), poly) in &self.edge {
            entries.push(TableEntryJson {
                kind: "Q".into(),
                n: *n,
                m: *m,
                k: None,
                poly_lnk: poly_strings(poly),
            });
        }
        serde_json::to_value(TableJson {
            precision: digits,
            p: self.max_order,
            entries,
        })
        .expect("table serialization")
    }

    /// Parses a document produced by [`CoefficientTable::to_json`].
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let parsed: TableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidArgument(format!("coefficient table JSON: {e}")))?;
        let bits = crate::bigreal::digits_to_bits(parsed.precision);
        let mut table = CoefficientTable::empty(parsed.precision);
        table.max_order = parsed.p;
        for entry in parsed.entries {
            let coeffs = entry
                .poly_lnk
                .iter()
                .map(|s| {
                    BigReal::from_decimal_str(s, bits).ok_or_else(|| {
                        Error::InvalidArgument(format!("bad decimal string {s:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let poly = LogPoly::from_coeffs(coeffs, bits);
            match entry.kind.as_str() {
                "c" => {
                    let k = entry.k.ok_or_else(|| {
                        Error::InvalidArgument("bulk entry without k index".into())
                    })?;
                    table.bulk.insert((entry.n, entry.m, k), poly);
                }
                "Q" => {
                    table.edge.insert((entry.n, entry.m), poly);
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown coefficient kind {other:?}"
                    )))
                }
            }
        }
        Ok(table)
    }
}
