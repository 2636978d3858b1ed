//! Second-order recurrences `F_{n+2} = -A F_{n+1} - B F_n` reduced mod m,
//! their periods, and the Wall-Sun-Sun and p-rationality tests built on
//! them.
//!
//! Periods are computed from powers of the companion matrix, deliberately
//! without going through [`crate::quadpoly`], so the two stay independent
//! checks of each other.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modnum::{
    add_mod, factorize, is_prime, legendre, mul_mod, order_from_multiple, quadratic_unit_exponent_factors,
    reduce_signed, sub_mod, Residue,
};
use crate::pell::{fundamental_unit_with_bound, recurrence_from_unit};
use crate::quadpoly::MonicQuadratic;

/// Coefficients of `X^2 + A X + B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
}

impl RecurrenceSpec {
    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    /// `F_{n+2} = trace F_{n+1} - norm F_n`.
    pub fn from_trace_norm(trace: i64, norm: i64) -> Self {
        Self { a: -trace, b: norm }
    }

    pub fn fibonacci() -> Self {
        Self { a: -1, b: -1 }
    }

    pub fn trace(&self) -> i64 {
        -self.a
    }

    pub fn norm(&self) -> i64 {
        self.b
    }

    /// `A^2 - 4B`.
    pub fn discriminant(&self) -> i128 {
        self.a as i128 * self.a as i128 - 4 * self.b as i128
    }

    pub fn char_poly(&self, modulus: u64) -> Result<MonicQuadratic> {
        MonicQuadratic::new(self.a, self.b, modulus)
    }
}

pub fn sequence(spec: &RecurrenceSpec, modulus: u64, init: (i64, i64), len: usize) -> Result<Vec<Residue>> {
    if modulus < 2 {
        return Err(Error::InvalidModulus(modulus));
    }
    let m = modulus;
    let (ca, cb) = (reduce_signed(spec.a as i128, m), reduce_signed(spec.b as i128, m));
    let (mut x, mut y) = (reduce_signed(init.0 as i128, m), reduce_signed(init.1 as i128, m));
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(Residue::from_u64(x, m)?);
        let z = sub_mod(0, add_mod(mul_mod(ca, y, m), mul_mod(cb, x, m), m), m);
        (x, y) = (y, z);
    }
    Ok(out)
}

type Matrix = [[u64; 2]; 2];

fn mat_mul(l: &Matrix, r: &Matrix, m: u64) -> Matrix {
    let cell = |i: usize, j: usize| add_mod(mul_mod(l[i][0], r[0][j], m), mul_mod(l[i][1], r[1][j], m), m);
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

fn mat_pow(base: &Matrix, mut exp: u128, m: u64) -> Matrix {
    let mut acc = [[1 % m, 0], [0, 1 % m]];
    let mut b = *base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mat_mul(&acc, &b, m);
        }
        b = mat_mul(&b, &b, m);
        exp >>= 1;
    }
    acc
}

/// Maps `(F_n, F_{n+1})` to `(F_{n+1}, F_{n+2})`.
fn companion(spec: &RecurrenceSpec, m: u64) -> Matrix {
    [[0, 1 % m], [reduce_signed(-(spec.b as i128), m), reduce_signed(-(spec.a as i128), m)]]
}

fn is_identity(x: &Matrix, m: u64) -> bool {
    *x == [[1 % m, 0], [0, 1 % m]]
}

/// `F_n mod m` for the `(0, 1)` start, by matrix power.
pub fn term(spec: &RecurrenceSpec, m: u64, n: u128) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(mat_pow(&companion(spec, m), n, m)[0][1])
}

fn require_invertible_norm(spec: &RecurrenceSpec, m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let b = reduce_signed(spec.b as i128, m);
    if b.gcd(&m) != 1 {
        return Err(Error::NotInvertible { value: b, modulus: m });
    }
    Ok(())
}

/// Period modulo `q^k`, climbing one power at a time. Each step may only
/// keep the period or multiply it by `q`.
fn prime_power_period(spec: &RecurrenceSpec, q: u64, k: u32) -> Result<u128> {
    let (multiple, factors) = quadratic_unit_exponent_factors(q, 1);
    let mat = companion(spec, q);
    if !is_identity(&mat_pow(&mat, multiple, q), q) {
        return Err(Error::Verification(format!("companion matrix mod {q} has no order dividing {multiple}")));
    }
    let mut period = order_from_multiple(multiple, &factors, |e| is_identity(&mat_pow(&mat, e, q), q));
    let mut m = q;
    for _ in 1..k {
        let below = period;
        m *= q;
        let mat = companion(spec, m);
        period = if is_identity(&mat_pow(&mat, below, m), m) {
            below
        } else if is_identity(&mat_pow(&mat, below * q as u128, m), m) {
            below * q as u128
        } else {
            let (full, full_factors) = quadratic_unit_exponent_factors(q, k);
            let actual = order_from_multiple(full, &full_factors, |e| is_identity(&mat_pow(&mat, e, m), m));
            return Err(Error::DichotomyViolation {
                p: q,
                kp: below as u64,
                kp2: u64::try_from(actual).unwrap_or(u64::MAX),
            });
        };
    }
    Ok(period)
}

/// Least `T > 0` with `(F_T, F_{T+1}) = (0, 1)`. Requires `gcd(B, m) = 1`.
pub fn period(spec: &RecurrenceSpec, modulus: u64) -> Result<u64> {
    require_invertible_norm(spec, modulus)?;
    let mut total: u128 = 1;
    for (q, k) in factorize(modulus) {
        total = total.lcm(&prime_power_period(spec, q, k)?);
    }
    let total =
        u64::try_from(total).map_err(|_| Error::InvalidArgument(format!("period mod {modulus} exceeds 64 bits")))?;
    debug_assert_eq!(
        Some(total),
        spec.char_poly(modulus).ok().and_then(|f| crate::quadpoly::poly_order(&f).ok()),
        "period and polynomial order disagree for {spec:?} mod {modulus}"
    );
    Ok(total)
}

/// Period by stepping the sequence until `(0, 1)` returns. `O(period)`.
pub fn period_by_iteration(spec: &RecurrenceSpec, modulus: u64) -> Result<u64> {
    require_invertible_norm(spec, modulus)?;
    let m = modulus;
    let (ca, cb) = (reduce_signed(spec.a as i128, m), reduce_signed(spec.b as i128, m));
    let (mut x, mut y) = (0u64, 1 % m);
    let bound = m as u128 * m as u128;
    let mut t = 0u128;
    loop {
        let z = sub_mod(0, add_mod(mul_mod(ca, y, m), mul_mod(cb, x, m), m), m);
        (x, y) = (y, z);
        t += 1;
        if (x, y) == (0, 1 % m) {
            return Ok(t as u64);
        }
        if t > bound {
            return Err(Error::Verification(format!("no period within {bound} steps mod {m}")));
        }
    }
}

pub const ASSUMPTION_NOTE: &str =
    "hypothesis p ∤ (ε−ε̄)²h (class number) not verified; p-rationality verdicts assume it";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub p: u64,
    pub kp: u64,
    pub kp2: u64,
    pub is_wss: bool,
    pub assumption_note: String,
}

/// Periods modulo `p` and `p^2`; `p` is Wall-Sun-Sun for the spec when they
/// coincide.
pub fn wss_test(spec: &RecurrenceSpec, p: u64) -> Result<PeriodReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let kp = period(spec, p)?;
    let kp2 = period(spec, p * p)?;
    if kp2 != kp && kp2 != kp * p {
        return Err(Error::DichotomyViolation { p, kp, kp2 });
    }
    Ok(PeriodReport { p, kp, kp2, is_wss: kp == kp2, assumption_note: ASSUMPTION_NOTE.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PRationalityReport {
    pub d: u64,
    pub p: u64,
    /// Legendre symbol `(d/p)`.
    pub symbol: i8,
    /// `p - (d/p)`.
    pub index: u64,
    /// `F_index mod p^2`.
    pub term_mod_p2: u64,
    pub p_rational: bool,
    pub assumption_note: String,
}

/// `Q(√d)` is p-rational iff `F_{p-(d/p)} ≠ 0 (mod p^2)`, with `F` the
/// sequence of the fundamental unit started at `(0, 1)`.
pub fn fibonacci_prationality(d: u64, p: u64, pell_bound: u64) -> Result<PRationalityReport> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("p = {p} must be a prime >= 5")));
    }
    let symbol = legendre(i64::try_from(d % p).expect("residue fits"), p)?;
    if symbol == 0 {
        return Err(Error::InvalidArgument(format!("p = {p} divides d = {d}")));
    }
    let spec = recurrence_from_unit(&fundamental_unit_with_bound(d, pell_bound)?);
    let index = (p as i64 - symbol as i64) as u64;
    let value = term(&spec, p * p, index as u128)?;
    Ok(PRationalityReport {
        d,
        p,
        symbol,
        index,
        term_mod_p2: value,
        p_rational: value != 0,
        assumption_note: ASSUMPTION_NOTE.to_string(),
    })
}

fn inverses_mod(p: u64, upto: u64) -> Vec<u64> {
    let mut inv = vec![0u64; upto as usize + 1];
    if upto >= 1 {
        inv[1] = 1;
    }
    for i in 2..=upto as usize {
        let i64_ = i as u64;
        inv[i] = mul_mod(p - p / i64_, inv[(p % i64_) as usize], p);
    }
    inv
}

/// `Σ 1/k (mod p)` over `1 <= k <= (p-1)/2` with `k ≡ i (mod d)`. The class
/// of multiples of `d` is written `i = d`.
pub fn alpha_sum(p: u64, d: u64, i: u64) -> Result<Residue> {
    crate::modnum::require_odd_prime(p)?;
    if d == 0 || i == 0 || i > d {
        return Err(Error::InvalidArgument(format!("need 0 < i <= d, got i = {i}, d = {d}")));
    }
    let half = (p - 1) / 2;
    let inv = inverses_mod(p, half);
    Residue::from_u64(alpha_from_table(&inv, p, d, i), p)
}

fn alpha_from_table(inv: &[u64], p: u64, d: u64, i: u64) -> u64 {
    let half = inv.len() as u64 - 1;
    let mut k = if i == d { d } else { i };
    let mut acc = 0;
    while k <= half {
        acc = add_mod(acc, inv[k as usize], p);
        k += d;
    }
    acc
}

/// The `Q(√5)` congruence `α(1) + 2α(5) ≡ α(4) − α(2) (mod p)`, evaluated
/// exactly as written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEvaluation {
    pub p: u64,
    /// `α(i)` for `i = 1..=5`.
    pub alphas: [u64; 5],
    pub lhs: u64,
    pub rhs: u64,
    /// The congruence holds, i.e. the formula claims "not p-rational".
    pub congruence_holds: bool,
}

pub fn q5_alpha_evaluation(p: u64) -> Result<AlphaEvaluation> {
    if !is_prime(p) || p % 5 != 1 {
        return Err(Error::InvalidArgument(format!("p = {p} must be a prime congruent to 1 mod 5")));
    }
    let inv = inverses_mod(p, (p - 1) / 2);
    let mut alphas = [0u64; 5];
    for (slot, i) in alphas.iter_mut().zip(1..=5) {
        *slot = alpha_from_table(&inv, p, 5, i);
    }
    let lhs = add_mod(alphas[0], mul_mod(2, alphas[4], p), p);
    let rhs = sub_mod(alphas[3], alphas[1], p);
    Ok(AlphaEvaluation { p, alphas, lhs, rhs, congruence_holds: lhs == rhs })
}

/// True when the transcribed congruence holds (claiming `Q(√5)` is not
/// p-rational).
pub fn q5_alpha_criterion(p: u64) -> Result<bool> {
    Ok(q5_alpha_evaluation(p)?.congruence_holds)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaDisagreement {
    pub p: u64,
    pub congruence_holds: bool,
    pub kp: u64,
    pub kp2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCrossCheck {
    pub limit: u64,
    pub primes_checked: usize,
    pub disagreements: Vec<AlphaDisagreement>,
}

impl AlphaCrossCheck {
    pub fn consistent(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares the congruence with the Fibonacci period test (not p-rational
/// ⇔ `k(p) = k(p^2)`) for every prime `p ≡ 1 (mod 5)` up to `limit`.
pub fn alpha_cross_check(limit: u64) -> Result<AlphaCrossCheck> {
    let primes: Vec<u64> = (11..=limit).step_by(10).filter(|&p| is_prime(p)).collect();
    let mut disagreements = primes
        .par_iter()
        .map(|&p| -> Result<Option<AlphaDisagreement>> {
            let eval = q5_alpha_evaluation(p)?;
            let report = wss_test(&RecurrenceSpec::fibonacci(), p)?;
            Ok((eval.congruence_holds != report.is_wss).then_some(AlphaDisagreement {
                p,
                congruence_holds: eval.congruence_holds,
                kp: report.kp,
                kp2: report.kp2,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    disagreements.sort_by_key(|d| d.p);
    Ok(AlphaCrossCheck { limit, primes_checked: primes.len(), disagreements })
}
