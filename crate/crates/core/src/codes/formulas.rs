//! Closed-form weight distributions.

use super::{CyclicCode, WeightDistribution};
use crate::error::{Error, Result};
use crate::quadpoly::root_ratio_order;

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `A_w = C(n,w)(q-1) Σ_{j=0}^{w-d} (-1)^j C(w-1,j) q^{w-d-j}` for an MDS
/// code of dimension 2, so `d = n - 1`.
pub fn mds_weight_distribution(n: u64, d: u64, q: u64) -> Result<WeightDistribution> {
    if n < 2 || d + 1 != n {
        return Err(Error::InvalidArgument(format!("[{n}, 2, {d}] is not MDS: need d = n - 1")));
    }
    let q128 = q as i128;
    let mut counts = Vec::new();
    for w in d..=n {
        let mut inner = 0i128;
        for j in 0..=(w - d) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            inner += sign * binomial(w - 1, j) * q128.pow((w - d - j) as u32);
        }
        let a = binomial(n, w) * (q128 - 1) * inner;
        counts.push((w, u64::try_from(a).map_err(|_| Error::InvalidArgument(format!("A_{w} = {a} out of range")))?));
    }
    Ok(WeightDistribution::from_nonzero(n, q, counts))
}

/// The distributions of a two-weight MDS code `C1` of length `n <= p + 1`
/// over `F_p` and of its lift `C2` over `Z_{p^2}`.
pub fn mds_lift_distributions(n: u64, p: u64) -> Result<(WeightDistribution, WeightDistribution)> {
    if n < 2 || n > p + 1 {
        return Err(Error::InvalidArgument(format!("length {n} must lie in 2..=p+1 = {}", p + 1)));
    }
    let q = p * p;
    let c1 = WeightDistribution::from_nonzero(n, p, [(n - 1, n * (p - 1)), (n, (p - 1) * (p + 1 - n))]);
    let c2 = WeightDistribution::from_nonzero(n, q, [(n - 1, n * (q - 1)), (n, (q - 1) * (q + 1 - n))]);
    Ok((c1, c2))
}

fn two_weights(n: u64, e: u64, base: u64) -> Result<WeightDistribution> {
    if e < 2 || n % e != 0 {
        return Err(Error::InvalidArgument(format!("e = {e} must be at least 2 and divide n = {n}")));
    }
    let high =
        (base + 1).checked_sub(e).ok_or_else(|| Error::InvalidArgument(format!("e = {e} exceeds {}", base + 1)))?;
    Ok(WeightDistribution::from_nonzero(n, base, [(n - n / e, e * (base - 1)), (n, (base - 1) * high)]))
}

/// Weights `{n - n/e, n}` of `C(a, b)` over `Z_{p^2}`, `e` the order of `b/a`.
pub fn ring_two_weight_distribution(n: u64, p: u64, e: u64) -> Result<WeightDistribution> {
    two_weights(n, e, p * p)
}

/// Weights `{n - n/e, n}` of the reduction over `F_p`; one weight when
/// `e = p + 1`.
pub fn field_two_weight_distribution(n: u64, p: u64, e: u64) -> Result<WeightDistribution> {
    if e > p + 1 {
        return Err(Error::InvalidArgument(format!("e = {e} exceeds p + 1")));
    }
    two_weights(n, e, p)
}

/// Whether `(p - n + 1) | (p + 1)(p^2 - n + 1)`, for `2 <= n <= p`.
pub fn mds_lift_divisibility(n: u64, p: u64) -> Result<bool> {
    if n < 2 || n > p {
        return Err(Error::InvalidArgument(format!("length {n} must lie in 2..=p (p - n + 1 must be positive)")));
    }
    let divisor = (p - n + 1) as u128;
    Ok(((p as u128 + 1) * (p as u128 * p as u128 - n as u128 + 1)) % divisor == 0)
}

/// The closed form matching a code: the root ratio `e` of its check
/// polynomial mod `p` picks the two weights, over `F_p` or `Z_{p^2}`.
pub fn closed_form_distribution(code: &CyclicCode) -> Result<WeightDistribution> {
    let (n, p) = (code.length(), code.prime());
    let e = root_ratio_order(&code.check().reduce(p)?)?;
    match (code.is_over_field(), e == n && n <= p + 1) {
        (true, _) => field_two_weight_distribution(n, p, e),
        (false, true) => Ok(mds_lift_distributions(n, p)?.1),
        (false, false) => ring_two_weight_distribution(n, p, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mds_examples() {
        assert_eq!(mds_weight_distribution(6, 5, 7).unwrap().to_string(), "5:36,6:12");
        assert_eq!(mds_weight_distribution(30, 29, 31).unwrap().to_string(), "29:900,30:60");
        for (n, q) in [(4u64, 5u64), (8, 7), (12, 11), (14, 13), (50, 49)] {
            assert_eq!(mds_weight_distribution(n, n - 1, q).unwrap().total(), (q * q) as u128);
        }
        assert!(mds_weight_distribution(6, 4, 7).is_err());
    }

    #[test]
    fn mds_lift_examples() {
        let (c1, c2) = mds_lift_distributions(30, 31).unwrap();
        assert_eq!(c2.to_string(), "29:28800,30:894720");
        assert_eq!(c1.to_string(), "29:900,30:60");
        assert_eq!(mds_lift_distributions(6, 7).unwrap().0.to_string(), "5:36,6:12");
        assert!(mds_lift_distributions(33, 31).is_err());
        for (n, p) in [(6u64, 7u64), (30, 31), (8, 7), (10, 11)] {
            let (c1, c2) = mds_lift_distributions(n, p).unwrap();
            assert_eq!(c1, mds_weight_distribution(n, n - 1, p).unwrap());
            assert!(c1.satisfies_pless() && c2.satisfies_pless());
        }
    }

    #[test]
    fn ring_two_weight_examples() {
        assert_eq!(ring_two_weight_distribution(104, 103, 52).unwrap().count(102), 551_616);
        assert_eq!(ring_two_weight_distribution(28, 13, 7).unwrap().to_string(), "24:1176,28:27384");
        assert_eq!(ring_two_weight_distribution(484, 241, 121).unwrap().count(480), 7_027_680);
        assert_eq!(ring_two_weight_distribution(174, 523, 87).unwrap().count(172), 23_796_936);
        assert!(ring_two_weight_distribution(28, 13, 5).is_err());
    }

    #[test]
    fn field_two_weight_examples() {
        assert_eq!(field_two_weight_distribution(16, 7, 8).unwrap().to_string(), "14:48");
        assert_eq!(field_two_weight_distribution(36, 17, 9).unwrap().to_string(), "32:144,36:144");
        assert_eq!(field_two_weight_distribution(28, 13, 7).unwrap().to_string(), "24:84,28:84");
        assert!(field_two_weight_distribution(28, 13, 6).is_err());
    }

    #[test]
    fn pless_holds_for_formulas() {
        for p in [5u64, 7, 11, 13, 17] {
            for e in 2..=p + 1 {
                for n in [e, 2 * e, 3 * e] {
                    assert!(field_two_weight_distribution(n, p, e).unwrap().satisfies_pless(), "{n} {p} {e}");
                    assert!(ring_two_weight_distribution(n, p, e).unwrap().satisfies_pless());
                }
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        assert!(mds_lift_divisibility(30, 31).unwrap());
        assert!(mds_lift_divisibility(16, 31).unwrap());
        // p - n + 1 = 3 and p^2 - n + 1 = 933 = 3 * 311
        assert!(mds_lift_divisibility(29, 31).unwrap());
        assert!(!mds_lift_divisibility(25, 31).unwrap());
        for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 97] {
            assert!(mds_lift_divisibility(p - 1, p).unwrap());
            assert!(mds_lift_divisibility((p + 1) / 2, p).unwrap());
        }
        assert!(mds_lift_divisibility(32, 31).is_err());
    }

    #[test]
    fn closed_form_matches_enumeration() {
        use crate::codes::weight_distribution_enumerate;
        use crate::quadpoly::MonicQuadratic;
        for (a1, a0, m) in [(1, 5, 7), (1, 6, 7), (29, 19, 49), (29, 48, 49), (4, 6, 11), (26, 94, 121), (24, 120, 121)]
        {
            let code = CyclicCode::from_check(&MonicQuadratic::new(a1, a0, m).unwrap()).unwrap();
            let enumerated = weight_distribution_enumerate(&code, 1 << 30).unwrap();
            assert_eq!(closed_form_distribution(&code).unwrap(), enumerated, "({a1},{a0}) mod {m}");
        }
    }
}
