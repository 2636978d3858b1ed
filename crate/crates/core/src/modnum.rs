//! Exact modular arithmetic over `Z_m`, the quadratic extension `F_{p^2}`,
//! and the elementary number theory the rest of the crate leans on.
//!
//! All residues are kept in the canonical range `[0, m)`. Products go through
//! `u128`, so any modulus below `2^64` is safe.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadpoly::MonicQuadratic;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        (m - (b - a) % m) % m
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer to its canonical representative in `[0, m)`.
#[inline]
pub fn reduce_signed(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order. Intended for the group orders met here (at most a few
/// times `10^12`).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |q: u64, n: &mut u64| {
        let mut k = 0;
        while *n % q == 0 {
            *n /= q;
            k += 1;
        }
        if k > 0 {
            out.push((q, k));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut q = 5u64;
    while q.saturating_mul(q) <= n {
        push(q, &mut n);
        push(q + 2, &mut n);
        q += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn merge_factors(parts: &[&[(u64, u32)]]) -> Vec<(u64, u32)> {
    let mut all: Vec<(u64, u32)> = Vec::new();
    for part in parts {
        for &(q, k) in part.iter() {
            match all.iter_mut().find(|(r, _)| *r == q) {
                Some(entry) => entry.1 += k,
                None => all.push((q, k)),
            }
        }
    }
    all.sort_unstable();
    all
}

/// Factorization of `q^k (q^2 - 1)`, a multiple of the exponent of the unit
/// group of `(Z/q^k)[x]/(f)` for every monic quadratic `f`.
pub(crate) fn quadratic_unit_exponent_factors(q: u64, k: u32) -> (u128, Vec<(u64, u32)>) {
    let below = factorize(q - 1);
    let above = factorize(q + 1);
    let own = [(q, k)];
    let factors = merge_factors(&[&own, &below, &above]);
    let value = (q as u128).pow(k) * (q as u128 - 1) * (q as u128 + 1);
    (value, factors)
}

/// Least `e` dividing `multiple` with `is_one(e)`, found by stripping prime
/// factors one at a time. `is_one(multiple)` must already hold.
pub(crate) fn order_from_multiple(multiple: u128, factors: &[(u64, u32)], is_one: impl Fn(u128) -> bool) -> u128 {
    let mut e = multiple;
    for &(q, _) in factors {
        let q = q as u128;
        while e % q == 0 && is_one(e / q) {
            e /= q;
        }
    }
    e
}

/// `Some((p, k))` when `m = p^k` for a prime `p`.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    match factorize(m).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// An element of `Z_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self { value: reduce_signed(value as i128, modulus), modulus })
    }

    /// Wraps an unsigned value; reduces it if needed.
    pub fn from_u64(value: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self { value: value % modulus, modulus })
    }

    pub(crate) fn raw(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus >= 2 && value < modulus);
        Self { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        self.value.gcd(&self.modulus) == 1
    }

    fn same_modulus(self, rhs: Self) -> Result<u64> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: rhs.modulus });
        }
        Ok(self.modulus)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let m = self.same_modulus(rhs)?;
        Ok(Self::raw(add_mod(self.value, rhs.value, m), m))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let m = self.same_modulus(rhs)?;
        Ok(Self::raw(sub_mod(self.value, rhs.value, m), m))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let m = self.same_modulus(rhs)?;
        Ok(Self::raw(mul_mod(self.value, rhs.value, m), m))
    }

    pub fn pow(self, exp: u64) -> Self {
        Self::raw(pow_mod(self.value, exp, self.modulus), self.modulus)
    }

    pub fn inverse(self) -> Result<Self> {
        mod_inverse(self)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

// Operator forms panic on mismatched moduli; use the `checked_*` methods to
// get an error instead.
impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("residue moduli differ")
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("residue moduli differ")
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("residue moduli differ")
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Self {
        Self::raw((self.modulus - self.value) % self.modulus, self.modulus)
    }
}

/// Raw modular inverse; `None` when `gcd(x, m) != 1`.
pub fn inverse_mod(x: u64, m: u64) -> Option<u64> {
    let e = (x as i128 % m as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(reduce_signed(e.x, m))
}

pub fn mod_inverse(x: Residue) -> Result<Residue> {
    inverse_mod(x.value, x.modulus)
        .map(|v| Residue::raw(v, x.modulus))
        .ok_or(Error::NotInvertible { value: x.value, modulus: x.modulus })
}

/// Legendre symbol `(x/p)` by Euler's criterion.
pub fn legendre(x: i64, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    Ok(legendre_unchecked(reduce_signed(x as i128, p), p))
}

pub(crate) fn legendre_unchecked(x: u64, p: u64) -> i8 {
    let x = x % p;
    if x == 0 {
        return 0;
    }
    if pow_mod(x, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square-free `d` with `n = d * s^2`.
pub fn squarefree_part(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("squarefree part of 0".into()));
    }
    Ok(factorize(n).into_iter().filter(|&(_, k)| k % 2 == 1).map(|(q, _)| q).product())
}

/// Least `e > 0` with `x^e = 1 (mod m)`.
pub fn multiplicative_order(x: Residue) -> Result<u64> {
    if !x.is_unit() {
        return Err(Error::NotInvertible { value: x.value, modulus: x.modulus });
    }
    let m = x.modulus;
    // Euler's phi as a multiple of the order.
    let mut phi_factors: Vec<&[(u64, u32)]> = Vec::new();
    let mut owned = Vec::new();
    let mut phi: u128 = 1;
    for (q, k) in factorize(m) {
        phi *= (q as u128 - 1) * (q as u128).pow(k - 1);
        if k > 1 {
            owned.push(vec![(q, k - 1)]);
        }
        owned.push(factorize(q - 1));
    }
    for f in &owned {
        phi_factors.push(f);
    }
    let factors = merge_factors(&phi_factors);
    let e = order_from_multiple(phi, &factors, |e| pow_mod(x.value, e as u64, m) == 1 % m);
    Ok(e as u64)
}

pub fn smallest_nonresidue(p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    Ok((2..p).find(|&r| legendre_unchecked(r, p) == -1).expect("odd primes have non-residues"))
}

/// Smallest generator of `F_p^x`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let qs: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    Ok((2..p).find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("cyclic group has a generator"))
}

/// `F_{p^2}` presented as `F_p[w]/(w^2 - r)` with `r` the smallest
/// quadratic non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2Field {
    p: u64,
    nonresidue: u64,
}

impl Fp2Field {
    pub fn new(p: u64) -> Result<Self> {
        let nonresidue = smallest_nonresidue(p)?;
        Ok(Self { p, nonresidue })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    /// Minimal polynomial `x^2 - r` of the adjoined square root.
    pub fn reduction(&self) -> MonicQuadratic {
        MonicQuadratic::from_canonical(0, (self.p - self.nonresidue) % self.p, self.p)
    }

    pub fn element(&self, c0: u64, c1: u64) -> Fp2Element {
        Fp2Element { c0: c0 % self.p, c1: c1 % self.p, field: *self }
    }

    pub fn one(&self) -> Fp2Element {
        self.element(1, 0)
    }

    pub fn zero(&self) -> Fp2Element {
        self.element(0, 0)
    }

    /// Iterates over all `p^2 - 1` nonzero elements, `c1` major.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fp2Element> + '_ {
        let p = self.p;
        (0..p)
            .flat_map(move |c1| (0..p).map(move |c0| (c0, c1)))
            .filter(|&(c0, c1)| c0 != 0 || c1 != 0)
            .map(move |(c0, c1)| self.element(c0, c1))
    }
}

/// `c0 + c1*w` in `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2Element {
    c0: u64,
    c1: u64,
    field: Fp2Field,
}

impl Fp2Element {
    pub fn c0(&self) -> u64 {
        self.c0
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    pub fn field(&self) -> Fp2Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn in_base_field(&self) -> bool {
        self.c1 == 0
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.field, rhs.field, "elements of different fields");
    }

    pub fn pow(self, mut exp: u128) -> Self {
        let mut acc = self.field.one();
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// `x -> x^p`, which maps `c0 + c1 w` to `c0 - c1 w`.
    pub fn frobenius(self) -> Self {
        let p = self.field.p;
        self.field.element(self.c0, (p - self.c1) % p)
    }

    /// `x^(p+1) = c0^2 - r c1^2`.
    pub fn norm(self) -> u64 {
        let p = self.field.p;
        sub_mod(mul_mod(self.c0, self.c0, p), mul_mod(self.field.nonresidue, mul_mod(self.c1, self.c1, p), p), p)
    }

    pub fn trace(self) -> u64 {
        add_mod(self.c0, self.c0, self.field.p)
    }

    pub fn inverse(self) -> Result<Self> {
        let n = self.norm();
        let n_inv = inverse_mod(n, self.field.p).ok_or(Error::NotInvertible { value: 0, modulus: self.field.p })?;
        let conj = self.frobenius();
        Ok(self.field.element(mul_mod(conj.c0, n_inv, self.field.p), mul_mod(conj.c1, n_inv, self.field.p)))
    }
}

impl Add for Fp2Element {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p;
        self.field.element(add_mod(self.c0, rhs.c0, p), add_mod(self.c1, rhs.c1, p))
    }
}

impl Sub for Fp2Element {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p;
        self.field.element(sub_mod(self.c0, rhs.c0, p), sub_mod(self.c1, rhs.c1, p))
    }
}

impl Neg for Fp2Element {
    type Output = Self;
    fn neg(self) -> Self {
        self.field.zero() - self
    }
}

impl Mul for Fp2Element {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let p = self.field.p;
        let r = self.field.nonresidue;
        let c0 = add_mod(mul_mod(self.c0, rhs.c0, p), mul_mod(r, mul_mod(self.c1, rhs.c1, p), p), p);
        let c1 = add_mod(mul_mod(self.c0, rhs.c1, p), mul_mod(self.c1, rhs.c0, p), p);
        self.field.element(c0, c1)
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}w (w^2 = {}, mod {})", self.c0, self.c1, self.field.nonresidue, self.field.p)
    }
}

/// Multiplicative order of a nonzero element; divides `p^2 - 1`.
pub fn fp2_order(x: Fp2Element) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("order of zero in F_p^2".into()));
    }
    let p = x.field.p;
    let factors = merge_factors(&[&factorize(p - 1), &factorize(p + 1)]);
    let group = (p as u128 - 1) * (p as u128 + 1);
    let one = x.field.one();
    Ok(order_from_multiple(group, &factors, |e| x.pow(e) == one) as u64)
}
