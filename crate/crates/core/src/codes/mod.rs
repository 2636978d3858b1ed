//! Dimension-2 cyclic codes over `Z_p` and `Z_{p^2}` built from a check
//! polynomial, with exact weight distributions and classification.
//!
//! A code is the set of length-`n` windows of every sequence obeying the
//! recurrence whose characteristic polynomial is the monic reciprocal of the
//! check polynomial. The two generator rows are the orbits of the initial
//! states `(1, 0)` and `(0, 1)`, so the codeword `a·row₁ + b·row₂` begins
//! with `(a, b)`.

mod classify;
mod enumerate;
mod formulas;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modnum::{add_mod, inverse_mod, mul_mod, prime_power, sub_mod, Residue};
use crate::quadpoly::{divides_x_pow_minus_one, poly_order, MonicQuadratic};
use crate::recurrence::RecurrenceSpec;

pub use classify::{classify, extremal_nmds_code, ClassificationReport, DualDistance, ExtremalNmdsCode};
pub use enumerate::{enumerate_columns, p_submodule_distribution, weight_distribution_enumerate, DEFAULT_BUDGET};
pub use formulas::{
    closed_form_distribution, field_two_weight_distribution, mds_lift_distributions, mds_lift_divisibility,
    mds_weight_distribution, ring_two_weight_distribution,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    check: MonicQuadratic,
    p: u64,
    length: u64,
    rows: [Vec<u64>; 2],
}

impl CyclicCode {
    /// The code of length `ord(h)` with check polynomial `h`.
    pub fn from_check(h: &MonicQuadratic) -> Result<Self> {
        Self::with_length(h, poly_order(h)?)
    }

    /// The code of length `n` with check polynomial `h`; `h` must divide
    /// `x^n - 1`, and over `Z_{p^2}` the length must be prime to `p`.
    pub fn with_length(h: &MonicQuadratic, n: u64) -> Result<Self> {
        let m = h.modulus();
        let p = match prime_power(m) {
            Some((p, 1)) | Some((p, 2)) => p,
            _ => return Err(Error::InvalidArgument(format!("modulus {m} is neither a prime nor a prime square"))),
        };
        if n < 2 {
            return Err(Error::InvalidArgument(format!("length {n} is too short for dimension 2")));
        }
        if m != p && n.gcd(&p) != 1 {
            return Err(Error::LengthNotCoprime { n, p });
        }
        if inverse_mod(h.a0().value(), m).is_none() {
            return Err(Error::NotInvertible { value: h.a0().value(), modulus: m });
        }
        if !divides_x_pow_minus_one(h, n) {
            return Err(Error::NotADivisor { divisor: h.to_string(), target: format!("x^{n}-1") });
        }
        let spec = recurrence_for_check(h)?;
        let row = |init: (u64, u64)| -> Vec<u64> {
            let (ca, cb) = (spec.0, spec.1);
            let (mut x, mut y) = init;
            (0..n)
                .map(|_| {
                    let out = x;
                    let z = sub_mod(0, add_mod(mul_mod(ca, y, m), mul_mod(cb, x, m), m), m);
                    (x, y) = (y, z);
                    out
                })
                .collect()
        };
        Ok(Self { check: *h, p, length: n, rows: [row((1, 0)), row((0, 1 % m))] })
    }

    /// The code attached to a recurrence: its check polynomial is the monic
    /// reciprocal of the characteristic polynomial.
    pub fn from_recurrence(spec: &RecurrenceSpec, modulus: u64) -> Result<Self> {
        Self::from_check(&spec.char_poly(modulus)?.reciprocal()?)
    }

    /// `C(a, b)`: check polynomial `(1 - a x)(1 - b x)/(ab)`, i.e. the
    /// sequences `λ a^i + μ b^i`.
    pub fn c_ab(a: Residue, b: Residue, n: u64) -> Result<Self> {
        let m = a.modulus();
        if b.modulus() != m {
            return Err(Error::ModulusMismatch { left: m, right: b.modulus() });
        }
        let (p, _) = prime_power(m).ok_or_else(|| Error::InvalidArgument(format!("{m} is not a prime power")))?;
        if (p as u128 * (p as u128 - 1)) % n as u128 != 0 {
            return Err(Error::InvalidArgument(format!("length {n} must divide p(p-1)")));
        }
        if a.value() % p == b.value() % p {
            return Err(Error::NotFree);
        }
        let (ia, ib) = (a.inverse()?, b.inverse()?);
        for unit in [a, b] {
            if unit.pow(n) != Residue::from_u64(1, m)? {
                return Err(Error::InvalidArgument(format!("order of {unit} does not divide {n}")));
            }
        }
        // (x - 1/a)(x - 1/b)
        let h = MonicQuadratic::from_residues(-(ia + ib), ia * ib)?;
        Self::with_length(&h, n)
    }

    pub fn check(&self) -> MonicQuadratic {
        self.check
    }

    pub fn modulus(&self) -> u64 {
        self.check.modulus()
    }

    /// The prime under the modulus.
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn rows(&self) -> (&[u64], &[u64]) {
        (&self.rows[0], &self.rows[1])
    }

    pub fn is_over_field(&self) -> bool {
        self.modulus() == self.p
    }

    /// `(row₁[j], row₂[j])` for every coordinate.
    pub fn columns(&self) -> Vec<(u64, u64)> {
        self.rows[0].iter().copied().zip(self.rows[1].iter().copied()).collect()
    }

    pub fn codeword(&self, a: u64, b: u64) -> Vec<u64> {
        let m = self.modulus();
        self.columns().into_iter().map(|(x, y)| add_mod(mul_mod(a % m, x, m), mul_mod(b % m, y, m), m)).collect()
    }

    pub fn contains(&self, word: &[u64]) -> bool {
        word.len() as u64 == self.length && word.len() >= 2 && self.codeword(word[0], word[1]) == word
    }

    /// The code over `F_p` cut out by `h mod p`, at the same length.
    pub fn reduce_mod_p(&self) -> Result<Self> {
        Self::with_length(&self.check.reduce(self.p)?, self.length)
    }
}

/// `(A, B)` mod m of the recurrence `F_{n+2} = -A F_{n+1} - B F_n` whose
/// characteristic polynomial is the monic reciprocal of `h`.
fn recurrence_for_check(h: &MonicQuadratic) -> Result<(u64, u64)> {
    let g = h.reciprocal()?;
    Ok(g.coefficients())
}

/// Weight → number of codewords, including the zero word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: u64,
    pub modulus: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    /// From nonzero-weight counts; the zero word is added.
    pub fn from_nonzero(n: u64, modulus: u64, nonzero: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut counts = BTreeMap::from([(0, 1)]);
        for (w, c) in nonzero {
            if c > 0 {
                *counts.entry(w).or_insert(0) += c;
            }
        }
        Self { n, modulus, counts }
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_distance(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    /// Frequencies of the nonzero weights in increasing weight order.
    pub fn frequencies(&self) -> Vec<u64> {
        self.nonzero_weights().iter().map(|&w| self.count(w)).collect()
    }

    /// The first two power moments for a rank-2 free code whose columns each
    /// contain a unit: `Σ A_w = m^2 - 1` and `Σ w A_w = n m (m - 1)`.
    pub fn satisfies_pless(&self) -> bool {
        let m = self.modulus as u128;
        let mut zeroth = 0u128;
        let mut first = 0u128;
        for (&w, &c) in self.counts.range(1..) {
            zeroth += c as u128;
            first += w as u128 * c as u128;
        }
        self.count(0) == 1 && zeroth == m * m - 1 && first == self.n as u128 * m * (m - 1)
    }

    /// Reads `w:count,...`; the zero word is implied.
    pub fn parse(text: &str, n: u64, modulus: u64) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (w, c) = item.split_once(':').ok_or_else(|| Error::Parse(format!("expected w:count, got {item:?}")))?;
            let w = w.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad weight {w:?}")))?;
            let c = c.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad count {c:?}")))?;
            if w == 0 || w > n {
                return Err(Error::Parse(format!("weight {w} outside 1..={n}")));
            }
            pairs.push((w, c));
        }
        Ok(Self::from_nonzero(n, modulus, pairs))
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.range(1..).map(|(w, c)| format!("{w}:{c}")).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a1: i64, a0: i64, m: u64) -> MonicQuadratic {
        MonicQuadratic::new(a1, a0, m).unwrap()
    }

    /// Oracle: every codeword c(x) satisfies c(x) h(x) ≡ 0 (mod x^n - 1).
    fn annihilated(word: &[u64], h: &MonicQuadratic) -> bool {
        let m = h.modulus();
        let n = word.len();
        let (a1, a0) = h.coefficients();
        let check = [a0, a1, 1];
        let mut prod = vec![0u64; n];
        for (i, &c) in word.iter().enumerate() {
            for (j, &r) in check.iter().enumerate() {
                let k = (i + j) % n;
                prod[k] = add_mod(prod[k], mul_mod(c, r, m), m);
            }
        }
        prod.iter().all(|&v| v == 0)
    }

    #[test]
    fn construction_examples() {
        let c = CyclicCode::from_check(&q(1, 5, 7)).unwrap();
        assert_eq!((c.length(), c.modulus(), c.prime()), (6, 7, 7));
        let c2 = CyclicCode::from_check(&q(29, 19, 49)).unwrap();
        assert_eq!((c2.length(), c2.modulus()), (6, 49));
        assert!(matches!(CyclicCode::from_check(&q(1, 1, 9)), Err(Error::LengthNotCoprime { n: 3, p: 3 })));
        assert!(CyclicCode::from_check(&q(1, 1, 3)).is_ok());
        assert!(CyclicCode::from_check(&q(1, 1, 15)).is_err());
    }

    #[test]
    fn codewords_are_annihilated_by_check() {
        for h in [q(1, 5, 7), q(1, 6, 7), q(29, 19, 49), q(29, 48, 49), q(4, 6, 11)] {
            let c = CyclicCode::from_check(&h).unwrap();
            let m = h.modulus();
            for (a, b) in [(1, 0), (0, 1), (3, 5), (m - 1, 2)] {
                assert!(annihilated(&c.codeword(a, b), &h), "{h}");
            }
            // cyclic shift stays in the code
            let mut w = c.codeword(2, 3);
            w.rotate_right(1);
            assert!(c.contains(&w));
        }
    }

    #[test]
    fn free_of_rank_two() {
        let c = CyclicCode::from_check(&q(29, 19, 49)).unwrap();
        let mut seen = std::collections::HashSet::new();
        for a in 0..49 {
            for b in 0..49 {
                seen.insert(c.codeword(a, b));
            }
        }
        assert_eq!(seen.len(), 49 * 49);
    }

    #[test]
    fn c_ab_rejections() {
        let r = |v: i64| Residue::new(v, 49).unwrap();
        assert!(matches!(CyclicCode::c_ab(r(1), r(8), 6), Err(Error::NotFree)));
        assert!(CyclicCode::c_ab(r(1), r(7), 6).is_err());
        assert!(CyclicCode::c_ab(r(1), r(18), 5).is_err());
        // 18 = Teichmüller lift of 4 mod 7 (order 3)
        let c = CyclicCode::c_ab(r(1), r(18), 6).unwrap();
        assert_eq!(c.length(), 6);
    }

    #[test]
    fn text_round_trip() {
        let wd = WeightDistribution::from_nonzero(6, 7, [(5, 36), (6, 12)]);
        assert_eq!(wd.to_string(), "5:36,6:12");
        assert_eq!(WeightDistribution::parse("5:36, 6:12", 6, 7).unwrap(), wd);
        assert!(WeightDistribution::parse("7:1", 6, 7).is_err());
        assert!(WeightDistribution::parse("5-36", 6, 7).is_err());
        assert!(wd.satisfies_pless());
        assert_eq!(wd.total(), 49);
    }
}
