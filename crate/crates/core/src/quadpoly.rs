//! Monic quadratics `x^2 + a1 x + a0` over `Z_m`.
//!
//! Besides the polynomial itself this module owns the arithmetic of the
//! quotient ring `Z_m[x]/(f)`, which is where orders are computed: the order
//! of `f` is the multiplicative order of the class of `x`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modnum::{
    add_mod, factorize, inverse_mod, is_prime, legendre_unchecked, mul_mod, multiplicative_order, order_from_multiple,
    primitive_root, quadratic_unit_exponent_factors, reduce_signed, require_odd_prime, squarefree_part, sub_mod,
    Fp2Element, Fp2Field, Residue,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicQuadratic {
    a1: u64,
    a0: u64,
    modulus: u64,
}

impl MonicQuadratic {
    pub fn new(a1: i64, a0: i64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self::from_canonical(reduce_signed(a1 as i128, modulus), reduce_signed(a0 as i128, modulus), modulus))
    }

    pub fn from_residues(a1: Residue, a0: Residue) -> Result<Self> {
        if a1.modulus() != a0.modulus() {
            return Err(Error::ModulusMismatch { left: a1.modulus(), right: a0.modulus() });
        }
        Ok(Self::from_canonical(a1.value(), a0.value(), a1.modulus()))
    }

    pub(crate) fn from_canonical(a1: u64, a0: u64, modulus: u64) -> Self {
        debug_assert!(a1 < modulus && a0 < modulus);
        Self { a1, a0, modulus }
    }

    /// Coefficient of `x`.
    pub fn a1(&self) -> Residue {
        Residue::raw(self.a1, self.modulus)
    }

    /// Constant term.
    pub fn a0(&self) -> Residue {
        Residue::raw(self.a0, self.modulus)
    }

    /// `(a1, a0)` as canonical representatives.
    pub fn coefficients(&self) -> (u64, u64) {
        (self.a1, self.a0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let x = x % m;
        add_mod(add_mod(mul_mod(x, x, m), mul_mod(self.a1, x, m), m), self.a0, m)
    }

    /// `a1^2 - 4 a0` reduced mod m.
    pub fn discriminant(&self) -> Residue {
        let m = self.modulus;
        Residue::raw(sub_mod(mul_mod(self.a1, self.a1, m), mul_mod(4 % m, self.a0, m), m), m)
    }

    /// `A^2 - 4B` over the integers with `A, B` the canonical lifts in `[0, m)`.
    pub fn integer_discriminant(&self) -> i128 {
        let (a, b) = (self.a1 as i128, self.a0 as i128);
        a * a - 4 * b
    }

    /// Coefficient-wise reduction to a modulus dividing the current one.
    pub fn reduce(&self, modulus: u64) -> Result<Self> {
        if modulus < 2 || self.modulus % modulus != 0 {
            return Err(Error::InvalidArgument(format!("{modulus} does not divide {}", self.modulus)));
        }
        Ok(Self::from_canonical(self.a1 % modulus, self.a0 % modulus, modulus))
    }

    /// `x^2 f(1/x) / f(0)`: the monic reciprocal, whose roots are the inverses
    /// of the roots of `f`.
    pub fn reciprocal(&self) -> Result<Self> {
        let m = self.modulus;
        let inv = inverse_mod(self.a0, m).ok_or(Error::NotInvertible { value: self.a0, modulus: m })?;
        Ok(Self::from_canonical(mul_mod(self.a1, inv, m), inv, m))
    }

    /// The polynomial part of the text form, e.g. `x^2+29x+19`.
    pub fn polynomial_string(&self) -> String {
        let mut s = String::from("x^2");
        match self.a1 {
            0 => {}
            1 => s.push_str("+x"),
            c => s.push_str(&format!("+{c}x")),
        }
        if self.a0 != 0 {
            s.push_str(&format!("+{}", self.a0));
        }
        s
    }

    /// Parses the polynomial part and reduces it modulo `modulus`. A trailing
    /// `(mod N)` is accepted if it agrees.
    pub fn parse_with_modulus(text: &str, modulus: u64) -> Result<Self> {
        let (a1, a0, stated) = parse_terms(text)?;
        if let Some(stated) = stated {
            if stated != modulus {
                return Err(Error::Parse(format!("polynomial says mod {stated}, caller says mod {modulus}")));
            }
        }
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self::from_canonical(reduce_signed(a1, modulus), reduce_signed(a0, modulus), modulus))
    }
}

impl fmt::Display for MonicQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.polynomial_string(), self.modulus)
    }
}

impl FromStr for MonicQuadratic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a1, a0, modulus) = parse_terms(s)?;
        let modulus = modulus.ok_or_else(|| Error::Parse(format!("missing '(mod m)' in {s:?}")))?;
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self::from_canonical(reduce_signed(a1, modulus), reduce_signed(a0, modulus), modulus))
    }
}

impl Serialize for MonicQuadratic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MonicQuadratic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_terms(text: &str) -> Result<(i128, i128, Option<u64>)> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let (poly, modulus) = match compact.find("(mod") {
        Some(i) => {
            let rest = compact[i + 4..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated modulus in {text:?}")))?;
            let m = rest.parse::<u64>().map_err(|_| Error::Parse(format!("bad modulus {rest:?}")))?;
            (&compact[..i], Some(m))
        }
        None => (compact.as_str(), None),
    };
    let body = poly
        .strip_prefix("x^2")
        .ok_or_else(|| Error::Parse(format!("expected a monic quadratic starting with x^2, got {text:?}")))?;

    let (mut a1, mut a0) = (None::<i128>, None::<i128>);
    let mut rest = body;
    while !rest.is_empty() {
        let sign: i128 = match rest.as_bytes()[0] {
            b'+' => 1,
            b'-' => -1,
            _ => return Err(Error::Parse(format!("expected '+' or '-' in {text:?}"))),
        };
        rest = &rest[1..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (slot, digits, implicit_one) = match term.strip_suffix('x') {
            Some(coef) => (&mut a1, coef.strip_suffix('*').unwrap_or(coef), true),
            None => (&mut a0, term, false),
        };
        let value = if digits.is_empty() && implicit_one {
            1
        } else {
            digits.parse::<i128>().map_err(|_| Error::Parse(format!("bad term {term:?} in {text:?}")))?
        };
        if slot.is_some() {
            return Err(Error::Parse(format!("repeated term in {text:?}")));
        }
        *slot = Some(sign * value);
    }
    Ok((a1.unwrap_or(0), a0.unwrap_or(0), modulus))
}

/// `c0 + c1 x` in `Z_m[x]/(x^2 + a1 x + a0)`.
pub(crate) type RingElem = (u64, u64);

pub(crate) fn ring_mul(f: &MonicQuadratic, u: RingElem, v: RingElem) -> RingElem {
    let m = f.modulus;
    let low = mul_mod(u.0, v.0, m);
    let mid = add_mod(mul_mod(u.0, v.1, m), mul_mod(u.1, v.0, m), m);
    let high = mul_mod(u.1, v.1, m);
    // x^2 = -a1 x - a0
    (sub_mod(low, mul_mod(high, f.a0, m), m), sub_mod(mid, mul_mod(high, f.a1, m), m))
}

pub(crate) fn ring_pow(f: &MonicQuadratic, mut base: RingElem, mut exp: u128) -> RingElem {
    let mut acc = (1 % f.modulus, 0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ring_mul(f, acc, base);
        }
        base = ring_mul(f, base, base);
        exp >>= 1;
    }
    acc
}

pub(crate) fn x_pow(f: &MonicQuadratic, exp: u128) -> RingElem {
    ring_pow(f, (0, 1 % f.modulus), exp)
}

fn is_one(f: &MonicQuadratic, e: RingElem) -> bool {
    e == (1 % f.modulus, 0)
}

/// True when `f` divides `x^n - 1` over `Z_m`.
pub fn divides_x_pow_minus_one(f: &MonicQuadratic, n: u64) -> bool {
    is_one(f, x_pow(f, n as u128))
}

/// Exact remainder of `x^n - 1` on division by `f`, as `(c0, c1)`.
pub fn remainder_of_x_pow_minus_one(f: &MonicQuadratic, n: u64) -> (u64, u64) {
    let (c0, c1) = x_pow(f, n as u128);
    (sub_mod(c0, 1 % f.modulus, f.modulus), c1)
}

/// Norm `c0^2 - a1 c0 c1 + a0 c1^2` of `c0 + c1 x` in `Z_m[x]/(f)`; the
/// element is a unit iff the norm is.
fn ring_norm(f: &MonicQuadratic, u: RingElem) -> u64 {
    let m = f.modulus;
    let t = add_mod(mul_mod(u.0, u.0, m), mul_mod(f.a0, mul_mod(u.1, u.1, m), m), m);
    sub_mod(t, mul_mod(f.a1, mul_mod(u.0, u.1, m), m), m)
}

fn ring_inverse(f: &MonicQuadratic, u: RingElem) -> Option<RingElem> {
    let m = f.modulus;
    let inv = inverse_mod(ring_norm(f, u), m)?;
    // conjugate: c0 + c1 * (-a1 - x)
    let conj = (sub_mod(u.0, mul_mod(f.a1, u.1, m), m), (m - u.1) % m);
    Some((mul_mod(conj.0, inv, m), mul_mod(conj.1, inv, m)))
}

/// Irreducibility over `F_p` via the Legendre symbol of the discriminant.
pub fn is_irreducible(f: &MonicQuadratic) -> Result<bool> {
    require_odd_prime(f.modulus)?;
    Ok(legendre_unchecked(f.discriminant().value(), f.modulus) == -1)
}

/// Roots of `f` in `F_p` by exhaustive scan.
pub fn roots_mod_p(f: &MonicQuadratic) -> Result<Vec<u64>> {
    if !is_prime(f.modulus) {
        return Err(Error::NotPrime(f.modulus));
    }
    Ok((0..f.modulus).filter(|&x| f.eval(x) == 0).collect())
}

/// Least `e > 0` with `f | x^e - 1` over `Z_m`.
pub fn poly_order(f: &MonicQuadratic) -> Result<u64> {
    let m = f.modulus;
    if f.a0.gcd(&m) != 1 {
        return Err(Error::NotInvertible { value: f.a0, modulus: m });
    }
    let mut order: u128 = 1;
    for (q, k) in factorize(m) {
        let local = f.reduce(q.pow(k))?;
        let (multiple, factors) = quadratic_unit_exponent_factors(q, k);
        if !is_one(&local, x_pow(&local, multiple)) {
            return Err(Error::Verification(format!("x^{multiple} != 1 modulo {local}")));
        }
        let e = order_from_multiple(multiple, &factors, |e| is_one(&local, x_pow(&local, e)));
        order = order.lcm(&e);
    }
    u64::try_from(order).map_err(|_| Error::InvalidArgument(format!("order of {f} exceeds 64 bits")))
}

/// A Hensel lift together with its integer discriminant data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiftResult {
    pub h: MonicQuadratic,
    #[serde(rename = "H")]
    pub lifted: MonicQuadratic,
    pub n: u64,
    /// `A^2 - 4B` with the canonical lifts `A, B` of `H`.
    pub delta: i128,
    /// Signed square-free part of `delta`.
    pub d: i128,
}

impl LiftResult {
    pub fn new(h: MonicQuadratic, lifted: MonicQuadratic, n: u64) -> Result<Self> {
        let delta = lifted.integer_discriminant();
        Ok(Self { h, lifted, n, delta, d: signed_squarefree(delta)? })
    }
}

/// Square-free part keeping the sign; `0` maps to `0`.
pub fn signed_squarefree(x: i128) -> Result<i128> {
    if x == 0 {
        return Ok(0);
    }
    let magnitude =
        u64::try_from(x.unsigned_abs()).map_err(|_| Error::InvalidArgument(format!("{x} exceeds 64 bits")))?;
    Ok(x.signum() * squarefree_part(magnitude)? as i128)
}

/// Lifts a monic divisor `h` of `x^n - 1` over `F_p` to the unique monic
/// divisor `H` of `x^n - 1` over `Z_{p^2}` with `H = h (mod p)`.
///
/// With `x^n - 1 = h g + p r` over `Z_{p^2}` the correction is
/// `H = h + p (r / g mod h)`; `g` is invertible modulo `h` exactly when the
/// factorization mod p has no repeated factor.
pub fn hensel_lift(h: &MonicQuadratic, n: u64) -> Result<MonicQuadratic> {
    let p = h.modulus;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("length must be positive".into()));
    }
    if !divides_x_pow_minus_one(h, n) {
        return Err(Error::NotADivisor { divisor: h.to_string(), target: format!("x^{n}-1") });
    }
    let m = p * p;
    let start = MonicQuadratic::from_canonical(h.a1, h.a0, m);

    // Long division of x^n - 1 by `start` over Z_{p^2}. Quotient coefficients
    // appear from the top degree down, so g mod (p, h) accumulates by Horner.
    let mut coeffs = vec![0u64; n as usize + 1];
    coeffs[n as usize] = 1;
    coeffs[0] = add_mod(coeffs[0], m - 1, m);
    let mut cofactor: RingElem = (0, 0);
    for i in (2..=n as usize).rev() {
        let q = coeffs[i];
        cofactor = ring_mul(h, cofactor, (0, 1));
        cofactor.0 = add_mod(cofactor.0, q % p, p);
        coeffs[i - 1] = sub_mod(coeffs[i - 1], mul_mod(q, start.a1, m), m);
        coeffs[i - 2] = sub_mod(coeffs[i - 2], mul_mod(q, start.a0, m), m);
    }
    let (r1, r0) = (coeffs[1], coeffs[0]);
    if r0 % p != 0 || r1 % p != 0 {
        return Err(Error::Verification(format!("x^{n}-1 mod {h} has a remainder not divisible by p")));
    }
    let rho: RingElem = (r0 / p, r1 / p);
    let g_inv = ring_inverse(h, cofactor).ok_or_else(|| Error::RepeatedFactor(h.to_string()))?;
    let u = ring_mul(h, rho, g_inv);
    let lifted = MonicQuadratic::from_canonical(
        add_mod(start.a1, mul_mod(p, u.1, m), m),
        add_mod(start.a0, mul_mod(p, u.0, m), m),
        m,
    );
    if !divides_x_pow_minus_one(&lifted, n) {
        return Err(Error::Verification(format!("{lifted} does not divide x^{n}-1")));
    }
    Ok(lifted)
}

pub fn lift(h: &MonicQuadratic, n: u64) -> Result<LiftResult> {
    LiftResult::new(*h, hensel_lift(h, n)?, n)
}

/// Every monic `x^2 + a x + b` over `Z_{p^2}` reducing to `(x - 1)^2` mod p
/// and dividing `x^p - 1`, by exhaustive search of the `p^2` candidates.
/// Only `p = 3` has any: for `p >= 5` the set is empty.
pub fn lift_double_root(p: u64) -> Result<Vec<MonicQuadratic>> {
    require_odd_prime(p)?;
    let m = p * p;
    let mut out = Vec::new();
    for s in 0..p {
        for t in 0..p {
            let f = MonicQuadratic::from_canonical(p - 2 + p * s, 1 + p * t, m);
            if divides_x_pow_minus_one(&f, p) {
                out.push(f);
            }
        }
    }
    Ok(out)
}

/// Outcome of the double-root search, including whether `(x - 1)^2` itself
/// is among the lifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleRootReport {
    pub p: u64,
    pub lifts: Vec<MonicQuadratic>,
    /// False when no lift exists at all, against the claim that one does.
    pub lift_exists: bool,
    pub square_is_lift: bool,
    /// Remainder `(c0, c1)` of `x^p - 1` divided by `x^2 - 2x + 1` mod p^2.
    pub square_remainder: (u64, u64),
}

impl DoubleRootReport {
    pub fn compute(p: u64) -> Result<Self> {
        let lifts = lift_double_root(p)?;
        let square = MonicQuadratic::new(-2, 1, p * p)?;
        let square_remainder = remainder_of_x_pow_minus_one(&square, p);
        Ok(Self { p, lift_exists: !lifts.is_empty(), square_is_lift: lifts.contains(&square), lifts, square_remainder })
    }

    pub fn conjecture_holds(&self) -> bool {
        self.square_is_lift
    }
}

/// `(x - 1)(x - b)` where `1/b = g^((p-1)/D)` for the smallest primitive
/// root `g`; the recurrence attached to this check polynomial has
/// characteristic roots `1` and `g^((p-1)/D)`.
pub fn construct_reducible(p: u64, order: u64) -> Result<MonicQuadratic> {
    require_odd_prime(p)?;
    if order < 2 || (p - 1) % order != 0 {
        return Err(Error::InvalidArgument(format!("order {order} must be >= 2 and divide p - 1 = {}", p - 1)));
    }
    let g = primitive_root(p)?;
    let root = crate::modnum::pow_mod(g, (p - 1) / order, p);
    let beta = inverse_mod(root, p).expect("nonzero mod p");
    // x^2 - (1 + b) x + b
    Ok(MonicQuadratic::from_canonical(sub_mod(0, add_mod(1, beta, p), p), beta, p))
}

/// An element of order `2p + 2` in `F_{p^2}` (so `a^(p+1) = -1`, `a` not in
/// `F_p`). Among all of them the one whose minimal polynomial has the
/// smallest canonical `x` coefficient is returned, ties broken by `c1`.
pub fn find_alpha(p: u64) -> Result<Fp2Element> {
    require_odd_prime(p)?;
    let field = Fp2Field::new(p)?;
    let group = (p as u128 - 1) * (p as u128 + 1);
    let factors = crate::modnum::merge_factors(&[&factorize(p - 1), &factorize(p + 1)]);
    let generator = field
        .nonzero_elements()
        .find(|x| factors.iter().all(|&(q, _)| x.pow(group / q as u128) != field.one()))
        .expect("F_p^2 has a generator");
    let target = 2 * p + 2;
    let base = generator.pow(((p - 1) / 2) as u128);
    let mut best: Option<((u64, u64), Fp2Element)> = None;
    let mut current = field.one();
    for k in 1..target {
        current = current * base;
        if k.gcd(&target) != 1 {
            continue;
        }
        let key = ((p - current.trace()) % p, current.c1());
        if best.map_or(true, |(b, _)| key < b) {
            best = Some((key, current));
        }
    }
    Ok(best.expect("phi(2p+2) > 0").1)
}

/// Minimal polynomial `(x - b)(x - b^p)` of an element outside `F_p`.
pub fn minimal_polynomial(b: Fp2Element) -> MonicQuadratic {
    let p = b.field().characteristic();
    MonicQuadratic::from_canonical((p - b.trace()) % p, b.norm(), p)
}

/// Irreducible check polynomial of order `D | 2p+2`: the minimal polynomial
/// of `alpha^((2p+2)/D)`.
pub fn construct_irreducible(p: u64, order: u64) -> Result<MonicQuadratic> {
    require_odd_prime(p)?;
    let full = 2 * p + 2;
    if order == 0 || full % order != 0 {
        return Err(Error::InvalidArgument(format!("order {order} must divide 2p + 2 = {full}")));
    }
    let beta = find_alpha(p)?.pow((full / order) as u128);
    if beta.in_base_field() {
        return Err(Error::DegenerateOrder { p, order });
    }
    Ok(minimal_polynomial(beta))
}

/// Order of the quotient of the two roots of `h` over `F_p`.
pub fn root_ratio_order(h: &MonicQuadratic) -> Result<u64> {
    let p = h.modulus;
    require_odd_prime(p)?;
    if is_irreducible(h)? {
        // roots x and x^p; their quotient is x^(p-1)
        let n = poly_order(h)?;
        return Ok(n / n.gcd(&(p - 1)));
    }
    let roots = roots_mod_p(h)?;
    match roots.as_slice() {
        [_] => Ok(1),
        [r1, r2] => {
            let inv = inverse_mod(*r1, p).ok_or(Error::NotInvertible { value: *r1, modulus: p })?;
            multiplicative_order(Residue::raw(mul_mod(*r2, inv, p), p))
        }
        _ => unreachable!("a split quadratic has one or two roots"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a1: i64, a0: i64, m: u64) -> MonicQuadratic {
        MonicQuadratic::new(a1, a0, m).unwrap()
    }

    fn brute_order(f: &MonicQuadratic) -> u64 {
        let mut acc = (0, 1 % f.modulus);
        let mut e = 1;
        while !is_one(f, acc) {
            acc = ring_mul(f, acc, (0, 1));
            e += 1;
            assert!(e <= f.modulus * f.modulus * f.modulus, "no order for {f}");
        }
        e
    }

    #[test]
    fn text_form() {
        let f = q(29, 19, 49);
        assert_eq!(f.to_string(), "x^2+29x+19 (mod 49)");
        assert_eq!("x^2+29x+19 (mod 49)".parse::<MonicQuadratic>().unwrap(), f);
        assert_eq!("x^2 - 20x - 30 (mod 49)".parse::<MonicQuadratic>().unwrap(), f);
        assert_eq!("x^2+x+5 (mod 7)".parse::<MonicQuadratic>().unwrap(), q(1, 5, 7));
        assert_eq!(MonicQuadratic::parse_with_modulus("x^2-2x+1", 9).unwrap(), q(7, 1, 9));
        assert_eq!(MonicQuadratic::parse_with_modulus("x^2+5", 7).unwrap().to_string(), "x^2+5 (mod 7)");
        assert!("x^2+x+5".parse::<MonicQuadratic>().is_err());
        assert!("x^3+1 (mod 7)".parse::<MonicQuadratic>().is_err());
        assert!("x^2+x+x (mod 7)".parse::<MonicQuadratic>().is_err());
        assert!(MonicQuadratic::parse_with_modulus("x^2+1 (mod 5)", 7).is_err());
    }

    #[test]
    fn discriminants() {
        let h = q(29, 19, 49);
        assert_eq!(h.integer_discriminant(), 765);
        assert_eq!(q(29, 48, 49).integer_discriminant(), 649);
        assert_eq!(q(1, 5, 7).discriminant().value(), (1 + 49 - 20) % 7);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&q(1, 6, 7)).unwrap());
        assert!(!is_irreducible(&q(1, 5, 7)).unwrap());
        for p in [3u64, 5, 7, 11] {
            assert!(!is_irreducible(&q(-2, 1, p)).unwrap());
        }
        assert!(is_irreducible(&q(1, 1, 9)).is_err());
    }

    #[test]
    fn irreducible_iff_rootless() {
        for p in (3..=31).filter(|&p| is_prime(p)) {
            for a1 in 0..p {
                for a0 in 0..p {
                    let f = MonicQuadratic::from_canonical(a1, a0, p);
                    assert_eq!(is_irreducible(&f).unwrap(), roots_mod_p(&f).unwrap().is_empty(), "{f}");
                }
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(poly_order(&q(1, 5, 7)).unwrap(), 6);
        assert_eq!(poly_order(&q(1, 6, 7)).unwrap(), 16);
        assert_eq!(poly_order(&q(29, 19, 49)).unwrap(), 6);
        assert!(poly_order(&q(1, 7, 49)).is_err());
    }

    #[test]
    fn order_matches_brute_force() {
        for m in [2u64, 3, 4, 5, 7, 9, 11, 13, 25, 49, 10, 12, 27] {
            for a1 in 0..m {
                for a0 in (0..m).filter(|a0| a0.gcd(&m) == 1) {
                    let f = MonicQuadratic::from_canonical(a1, a0, m);
                    assert_eq!(poly_order(&f).unwrap(), brute_order(&f), "{f}");
                }
            }
        }
    }

    /// Over F_p the order of f is the lcm of its root orders.
    #[test]
    fn order_is_root_order_over_fp() {
        for p in [5u64, 7, 11, 13] {
            let field = Fp2Field::new(p).unwrap();
            for beta in field.nonzero_elements().filter(|b| !b.in_base_field()) {
                let f = minimal_polynomial(beta);
                assert_eq!(poly_order(&f).unwrap(), crate::modnum::fp2_order(beta).unwrap());
            }
            for r1 in 1..p {
                for r2 in 1..p {
                    let f = q(-((r1 + r2) as i64), (r1 * r2) as i64, p);
                    let o1 = multiplicative_order(Residue::raw(r1, p)).unwrap();
                    let o2 = multiplicative_order(Residue::raw(r2, p)).unwrap();
                    // a double root r contributes ord(r) * p
                    let expected = if r1 == r2 { o1 * p } else { o1.lcm(&o2) };
                    assert_eq!(poly_order(&f).unwrap(), expected, "{f}");
                }
            }
        }
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_lift(&q(1, 5, 7), 6).unwrap(), q(29, 19, 49));
        assert_eq!(hensel_lift(&q(1, 6, 7), 16).unwrap(), q(29, 48, 49));
        assert_eq!(hensel_lift(&q(2, 10, 11), 24).unwrap(), q(24, 120, 121));
    }

    #[test]
    fn hensel_errors() {
        // not a divisor
        assert!(matches!(hensel_lift(&q(1, 5, 7), 5), Err(Error::NotADivisor { .. })));
        // double root: (x-1)^2 | x^7 - 1 mod 7
        assert!(matches!(hensel_lift(&q(-2, 1, 7), 7), Err(Error::RepeatedFactor(_))));
        // p | n makes the cofactor share a root
        assert!(matches!(hensel_lift(&q(1, 5, 7), 42), Err(Error::RepeatedFactor(_))));
        assert!(hensel_lift(&q(1, 5, 49), 6).is_err());
    }

    fn exhaustive_lifts(h: &MonicQuadratic, n: u64) -> Vec<MonicQuadratic> {
        let p = h.modulus;
        let mut out = Vec::new();
        for s in 0..p {
            for t in 0..p {
                let f = MonicQuadratic::from_canonical(h.a1 + p * s, h.a0 + p * t, p * p);
                if divides_x_pow_minus_one(&f, n) {
                    out.push(f);
                }
            }
        }
        out
    }

    #[test]
    fn hensel_agrees_with_exhaustive_search_and_preserves_order() {
        for p in [5u64, 7, 11, 13, 17] {
            for a1 in 0..p {
                for a0 in 1..p {
                    let h = MonicQuadratic::from_canonical(a1, a0, p);
                    if h.discriminant().is_zero() {
                        continue;
                    }
                    let n = poly_order(&h).unwrap();
                    let lifted = hensel_lift(&h, n).unwrap();
                    assert_eq!(exhaustive_lifts(&h, n), vec![lifted], "{h}");
                    assert_eq!(lifted.reduce(p).unwrap(), h);
                    assert_eq!(poly_order(&lifted).unwrap(), n, "{h}");
                }
            }
        }
    }

    #[test]
    fn double_root_lifts() {
        let lifts = lift_double_root(3).unwrap();
        assert_eq!(lifts, vec![q(1, 1, 9), q(4, 7, 9), q(7, 4, 9)]);
        assert!(!lifts.contains(&q(-2, 1, 9)));
        let report = DoubleRootReport::compute(3).unwrap();
        assert!(!report.conjecture_holds());
        // remainder p(x - 1) = 3x - 3
        assert_eq!(report.square_remainder, (6, 3));
        for f in lifts {
            assert_eq!(poly_order(&f).unwrap(), 3, "{f}");
        }
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            assert!(lift_double_root(p).unwrap().is_empty());
            let report = DoubleRootReport::compute(p).unwrap();
            assert_eq!(report.square_remainder, (p * p - p, p));
        }
    }

    #[test]
    fn reducible_construction() {
        assert_eq!(construct_reducible(7, 6).unwrap(), q(1, 5, 7));
        let h = construct_reducible(11, 10).unwrap();
        assert_eq!(h.eval(1), 0);
        assert_eq!(poly_order(&h).unwrap(), 10);
        assert!(construct_reducible(7, 1).is_err());
        assert!(construct_reducible(7, 4).is_err());
        for p in [7u64, 11, 13, 17, 19, 23, 29, 31] {
            for d in (2..p).filter(|d| (p - 1) % d == 0) {
                let h = construct_reducible(p, d).unwrap();
                assert_eq!(h.eval(1), 0);
                assert_eq!(poly_order(&h).unwrap(), d);
            }
        }
    }

    #[test]
    fn alpha_properties() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97] {
            let a = find_alpha(p).unwrap();
            assert!(!a.in_base_field());
            assert_eq!(crate::modnum::fp2_order(a).unwrap(), 2 * p + 2);
            assert_eq!(a.pow(p as u128 + 1), -a.field().one());
        }
    }

    #[test]
    fn irreducible_construction() {
        assert_eq!(construct_irreducible(7, 16).unwrap(), q(1, 6, 7));
        let h = construct_irreducible(13, 28).unwrap();
        assert!(is_irreducible(&h).unwrap());
        assert_eq!(poly_order(&h).unwrap(), 28);
        // D | gcd(2p + 2, p - 1) lands in F_p
        assert!(matches!(construct_irreducible(7, 2), Err(Error::DegenerateOrder { .. })));
        assert!(matches!(construct_irreducible(13, 4), Err(Error::DegenerateOrder { .. })));
        assert_eq!(poly_order(&construct_irreducible(7, 4).unwrap()).unwrap(), 4);
        assert!(construct_irreducible(7, 5).is_err());
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
            for d in (1..=2 * p + 2).filter(|d| (2 * p + 2) % d == 0) {
                match construct_irreducible(p, d) {
                    Ok(h) => {
                        assert!(is_irreducible(&h).unwrap());
                        assert_eq!(poly_order(&h).unwrap(), d);
                    }
                    Err(Error::DegenerateOrder { .. }) => assert_eq!((p - 1) % d, 0),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn constant_terms_of_paired_constructions() {
        for p in [7u64, 11, 17, 19, 23, 29, 31] {
            let plus = construct_reducible(p, p - 1).unwrap();
            let minus = construct_irreducible(p, 2 * p + 2).unwrap();
            assert_eq!(plus.eval(1), 0);
            assert_eq!(minus.eval(0), p - 1);
            assert_eq!(minus.eval(0), sub_mod(plus.eval(1), 1, p));
        }
    }

    #[test]
    fn ratio_orders() {
        assert_eq!(root_ratio_order(&q(1, 5, 7)).unwrap(), 6);
        assert_eq!(root_ratio_order(&q(1, 6, 7)).unwrap(), 8);
        assert_eq!(root_ratio_order(&q(-2, 1, 7)).unwrap(), 1);
    }

    proptest! {
        #[test]
        fn reciprocal_has_same_order(p in prop::sample::select(vec![5u64, 7, 11, 13, 49, 121]), a1 in 0u64..1000, a0 in 1u64..1000) {
            let f = MonicQuadratic::from_canonical(a1 % p, a0 % p, p);
            prop_assume!(f.a0.gcd(&p) == 1);
            let r = f.reciprocal().unwrap();
            prop_assert_eq!(poly_order(&r).unwrap(), poly_order(&f).unwrap());
            prop_assert_eq!(r.reciprocal().unwrap(), f);
        }

        #[test]
        fn parse_display_round_trip(m in 2u64..100_000, a1 in 0u64..100_000, a0 in 0u64..100_000) {
            let f = MonicQuadratic::from_canonical(a1 % m, a0 % m, m);
            prop_assert_eq!(f.to_string().parse::<MonicQuadratic>().unwrap(), f);
        }
    }
}
