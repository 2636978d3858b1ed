use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_columns, weight_distribution_enumerate, DEFAULT_BUDGET};
use super::{CyclicCode, WeightDistribution};
use crate::error::{Error, Result};
use crate::modnum::mul_mod;
use crate::quadpoly::construct_irreducible;

/// Minimum distance of the dual code, as far as dimension 2 needs it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualDistance {
    /// A zero column.
    One,
    /// Two columns are unit multiples of each other.
    Two,
    /// Projective.
    AtLeastThree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: u64,
    pub modulus: u64,
    pub min_distance: u64,
    pub nonzero_weights: Vec<u64>,
    pub is_mds: bool,
    pub is_amds: bool,
    pub is_nmds: bool,
    pub dual_distance: DualDistance,
    pub is_projective: bool,
    /// Common size of the column classes under unit scaling; 1 when the
    /// classes are uneven.
    pub repetition_factor: u64,
    /// `(n/ℓ, 2, d/ℓ)` when `ℓ > 1`.
    pub quotient_params: Option<(u64, u64, u64)>,
    pub quotient_is_mds: Option<bool>,
    /// Whether the quotient's enumerated distribution scales back to this
    /// one; `None` when it was over budget.
    pub quotient_verified: Option<bool>,
    /// Largest divisor of `w₂ - w₁` prime to `p`, for two-weight codes.
    pub weight_gap_factor: Option<u64>,
    /// `w₂ - w₁` is a power of `p`, or its `p`-free part is the repetition
    /// factor.
    pub weight_gap_law: bool,
    /// NMDS of length `2p + 2`, the longest possible in dimension 2.
    pub is_extremal_nmds: bool,
    pub label: String,
}

/// Smallest `(u·x, u·y)` over units `u`: equal for columns that are unit
/// multiples of each other.
fn normal_form(col: (u64, u64), m: u64, units: &[u64]) -> (u64, u64) {
    units.iter().map(|&u| (mul_mod(u, col.0, m), mul_mod(u, col.1, m))).min().expect("1 is a unit")
}

pub fn classify(code: &CyclicCode, wd: &WeightDistribution) -> Result<ClassificationReport> {
    let (n, m, p) = (code.length(), code.modulus(), code.prime());
    if wd.n != n || wd.modulus != m || wd.total() != m as u128 * m as u128 {
        return Err(Error::InvalidArgument(format!(
            "distribution (n = {}, m = {}, {} words) does not belong to a [{n}, 2] code over Z_{m}",
            wd.n,
            wd.modulus,
            wd.total()
        )));
    }
    let weights = wd.nonzero_weights();
    let d = *weights.first().ok_or_else(|| Error::InvalidArgument("no nonzero codewords".into()))?;

    let units: Vec<u64> = (1..m).filter(|u| u.gcd(&m) == 1).collect();
    let columns = code.columns();
    let mut classes: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
    let mut has_zero_column = false;
    for (j, &col) in columns.iter().enumerate() {
        if col == (0, 0) {
            has_zero_column = true;
            continue;
        }
        classes.entry(normal_form(col, m, &units)).or_default().push(j);
    }
    let sizes: Vec<usize> = classes.values().map(Vec::len).collect();
    let largest = sizes.iter().copied().max().unwrap_or(0);
    let dual_distance = if has_zero_column {
        DualDistance::One
    } else if largest >= 2 {
        DualDistance::Two
    } else {
        DualDistance::AtLeastThree
    };
    let uniform = !has_zero_column && sizes.iter().all(|&s| s == largest);
    let repetition_factor = if uniform { largest as u64 } else { 1 };

    let is_mds = d + 1 == n;
    let is_amds = d + 2 == n;
    let is_nmds = is_amds && dual_distance == DualDistance::Two;

    let (mut quotient_params, mut quotient_is_mds, mut quotient_verified) = (None, None, None);
    if repetition_factor > 1 {
        let l = repetition_factor;
        let params = (n / l, 2, d / l);
        quotient_params = Some(params);
        quotient_is_mds = Some(d % l == 0 && params.2 + 1 == params.0);
        let reps: Vec<(u64, u64)> = classes.values().map(|js| columns[js[0]]).collect();
        if (m as u128).pow(2) * reps.len() as u128 <= DEFAULT_BUDGET {
            let hist = enumerate_columns(&reps, m, 1, m);
            let scaled = hist.iter().enumerate().all(|(w, &c)| wd.count(w as u64 * l) == c);
            let total_ok = hist.iter().sum::<u64>() as u128 == wd.total();
            quotient_verified = Some(scaled && total_ok);
        }
    }

    let weight_gap_factor = match weights.as_slice() {
        [w1, w2] => {
            let mut gap = w2 - w1;
            while gap % p == 0 {
                gap /= p;
            }
            Some(gap)
        }
        _ => None,
    };
    let weight_gap_law = weight_gap_factor.map_or(true, |f| f == 1 || f == repetition_factor);
    let is_extremal_nmds = is_nmds && m == p && n == 2 * p + 2;

    let label = if is_mds {
        "MDS".to_string()
    } else if repetition_factor > 1 && quotient_is_mds == Some(true) {
        if is_nmds {
            format!("NMDS, {repetition_factor}-MDS")
        } else {
            format!("{repetition_factor}-MDS")
        }
    } else if is_nmds {
        "NMDS".to_string()
    } else if is_amds {
        "AMDS".to_string()
    } else {
        format!("[{n},2,{d}]")
    };

    Ok(ClassificationReport {
        n,
        modulus: m,
        min_distance: d,
        nonzero_weights: weights,
        is_mds,
        is_amds,
        is_nmds,
        dual_distance,
        is_projective: dual_distance == DualDistance::AtLeastThree,
        repetition_factor,
        quotient_params,
        quotient_is_mds,
        quotient_verified,
        weight_gap_factor,
        weight_gap_law,
        is_extremal_nmds,
        label,
    })
}

/// The one-weight NMDS code of length `2p + 2` for `p ≡ 3 (mod 4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalNmdsCode {
    pub code: CyclicCode,
    pub distribution: WeightDistribution,
    pub report: ClassificationReport,
}

/// Builds the code from the order-`(2p+2)` irreducible check polynomial and
/// verifies that it is a one-weight `[2p+2, 2, 2p]` NMDS code and a 2-fold
/// repetition of a `[p+1, 2, p]` MDS code.
pub fn extremal_nmds_code(p: u64) -> Result<ExtremalNmdsCode> {
    if p <= 5 || p % 4 != 3 {
        return Err(Error::InvalidArgument(format!("p = {p} must exceed 5 and be 3 mod 4")));
    }
    let h = construct_irreducible(p, 2 * p + 2)?;
    let code = CyclicCode::from_check(&h)?;
    let distribution = weight_distribution_enumerate(&code, DEFAULT_BUDGET)?;
    let report = classify(&code, &distribution)?;
    let expected = (
        code.length() == 2 * p + 2,
        report.nonzero_weights == [2 * p],
        report.is_nmds,
        report.repetition_factor == 2,
        report.quotient_params == Some((p + 1, 2, p)),
        report.quotient_verified == Some(true),
    );
    if expected != (true, true, true, true, true, true) {
        return Err(Error::Verification(format!(
            "code from {h} is not a one-weight NMDS double of a simplex code: {report:?}"
        )));
    }
    Ok(ExtremalNmdsCode { code, distribution, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadpoly::MonicQuadratic;

    fn report(a1: i64, a0: i64, m: u64) -> ClassificationReport {
        let code = CyclicCode::from_check(&MonicQuadratic::new(a1, a0, m).unwrap()).unwrap();
        let wd = weight_distribution_enumerate(&code, DEFAULT_BUDGET).unwrap();
        classify(&code, &wd).unwrap()
    }

    #[test]
    fn mds_example() {
        let r = report(1, 5, 7);
        assert!(r.is_mds && r.is_projective && !r.is_nmds);
        assert_eq!(r.label, "MDS");
        assert_eq!(r.repetition_factor, 1);
    }

    #[test]
    fn nmds_double() {
        let r = report(1, 6, 7);
        assert!(r.is_nmds && r.is_amds && !r.is_projective);
        assert_eq!(r.dual_distance, DualDistance::Two);
        assert_eq!(r.repetition_factor, 2);
        assert_eq!(r.quotient_params, Some((8, 2, 7)));
        assert_eq!(r.quotient_verified, Some(true));
        assert_eq!(r.label, "NMDS, 2-MDS");
        assert!(r.is_extremal_nmds);
    }

    #[test]
    fn fourfold_repetition() {
        let h = construct_irreducible(13, 28).unwrap();
        let code = CyclicCode::from_check(&h).unwrap();
        let wd = weight_distribution_enumerate(&code, DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.to_string(), "24:84,28:84");
        let r = classify(&code, &wd).unwrap();
        assert_eq!(r.repetition_factor, 4);
        assert_eq!(r.quotient_params, Some((7, 2, 6)));
        assert_eq!(r.quotient_is_mds, Some(true));
        assert_eq!(r.label, "4-MDS");
        assert_eq!(r.weight_gap_factor, Some(4));
        assert!(r.weight_gap_law);
    }

    #[test]
    fn rejects_mismatched_distribution() {
        let code = CyclicCode::from_check(&MonicQuadratic::new(1, 5, 7).unwrap()).unwrap();
        let wrong = WeightDistribution::from_nonzero(6, 49, [(5, 288), (6, 2112)]);
        assert!(classify(&code, &wrong).is_err());
    }

    #[test]
    fn extremal_nmds_small() {
        let c = extremal_nmds_code(7).unwrap();
        assert_eq!(c.distribution.to_string(), "14:48");
        assert_eq!(extremal_nmds_code(11).unwrap().distribution.count(22), 120);
        assert_eq!(extremal_nmds_code(19).unwrap().distribution.count(38), 360);
        assert!(extremal_nmds_code(13).is_err());
        assert!(extremal_nmds_code(3).is_err());
    }
}
