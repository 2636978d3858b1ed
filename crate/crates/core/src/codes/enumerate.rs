use std::collections::HashMap;

use rayon::prelude::*;

use super::{CyclicCode, WeightDistribution};
use crate::error::{Error, Result};
use crate::modnum::mul_mod;

/// Default cap on `m^2 · n` cell visits.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Histogram of `a·x + b·y` over all `a, b` in `{0, s, 2s, ..., (count-1)s}`
/// for the given columns `(x, y)` mod `m`, where `s = step`. Identical
/// columns are visited once and weighted by their multiplicity; the `b` loop
/// adds `s·y` incrementally.
pub fn enumerate_columns(columns: &[(u64, u64)], m: u64, step: u64, count: u64) -> Vec<u64> {
    let mut grouped: HashMap<(u64, u64), u64> = HashMap::new();
    for &c in columns {
        *grouped.entry(c).or_insert(0) += 1;
    }
    let mut distinct: Vec<((u64, u64), u64)> = grouped.into_iter().collect();
    distinct.sort_unstable();
    let xs: Vec<u64> = distinct.iter().map(|(c, _)| c.0).collect();
    let increments: Vec<u64> = distinct.iter().map(|(c, _)| mul_mod(step, c.1, m)).collect();
    let mult: Vec<u64> = distinct.iter().map(|(_, k)| *k).collect();
    let n = columns.len();

    (0..count)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut hist, a| {
                let a = mul_mod(a, step, m);
                let mut cur: Vec<u64> = xs.iter().map(|&x| mul_mod(a, x, m)).collect();
                for _ in 0..count {
                    let mut w = 0;
                    for ((v, inc), k) in cur.iter_mut().zip(&increments).zip(&mult) {
                        if *v != 0 {
                            w += k;
                        }
                        *v += inc;
                        if *v >= m {
                            *v -= m;
                        }
                    }
                    hist[w as usize] += 1;
                }
                hist
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut l, r| {
                l.iter_mut().zip(r).for_each(|(x, y)| *x += y);
                l
            },
        )
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Every one of the `m^2` codewords, counted by weight.
pub fn weight_distribution_enumerate(code: &CyclicCode, budget: u128) -> Result<WeightDistribution> {
    let m = code.modulus();
    let n = code.length();
    check_budget(m as u128 * m as u128 * n as u128, budget)?;
    let hist = enumerate_columns(&code.columns(), m, 1, m);
    let wd = WeightDistribution::from_nonzero(n, m, hist.iter().enumerate().skip(1).map(|(w, &c)| (w as u64, c)));
    if hist[0] != 1 {
        return Err(Error::Verification(format!("{} codewords of weight 0; the code is not free", hist[0])));
    }
    Ok(wd)
}

/// The `p^2` codewords `p·c` of a code over `Z_{p^2}`. Their weights are
/// the weights of the reductions `c mod p`, so the result should equal the
/// distribution of the code over `F_p`; the returned modulus is `p`.
pub fn p_submodule_distribution(code: &CyclicCode, budget: u128) -> Result<WeightDistribution> {
    let p = code.prime();
    let m = code.modulus();
    if m != p * p {
        return Err(Error::InvalidArgument(format!("modulus {m} is not a prime square")));
    }
    let n = code.length();
    check_budget(p as u128 * p as u128 * n as u128, budget)?;
    let hist = enumerate_columns(&code.columns(), m, p, p);
    Ok(WeightDistribution::from_nonzero(n, p, hist.iter().enumerate().skip(1).map(|(w, &c)| (w as u64, c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadpoly::MonicQuadratic;
    use std::collections::BTreeMap;

    fn code(a1: i64, a0: i64, m: u64) -> CyclicCode {
        CyclicCode::from_check(&MonicQuadratic::new(a1, a0, m).unwrap()).unwrap()
    }

    /// Oracle: build each codeword and count its nonzero entries.
    fn naive(c: &CyclicCode) -> BTreeMap<u64, u64> {
        let m = c.modulus();
        let mut out = BTreeMap::new();
        for a in 0..m {
            for b in 0..m {
                let w = c.codeword(a, b).iter().filter(|&&v| v != 0).count() as u64;
                *out.entry(w).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn examples() {
        let wd = weight_distribution_enumerate(&code(1, 5, 7), DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.to_string(), "5:36,6:12");
        assert_eq!(wd.count(0), 1);
        let wd = weight_distribution_enumerate(&code(29, 19, 49), DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.to_string(), "5:288,6:2112");
        let wd = weight_distribution_enumerate(&code(1, 6, 7), DEFAULT_BUDGET).unwrap();
        assert_eq!(wd.to_string(), "14:48");
    }

    #[test]
    fn matches_naive_enumeration() {
        for (a1, a0, m) in
            [(1, 5, 7), (1, 6, 7), (29, 19, 49), (4, 6, 11), (2, 10, 11), (0, 1, 9), (1, 1, 25), (0, 3, 5)]
        {
            let c = code(a1, a0, m);
            assert_eq!(
                weight_distribution_enumerate(&c, DEFAULT_BUDGET).unwrap().counts,
                naive(&c),
                "({a1},{a0}) mod {m}"
            );
        }
    }

    #[test]
    fn budget() {
        let c = code(29, 19, 49);
        assert!(matches!(
            weight_distribution_enumerate(&c, 1000),
            Err(Error::BudgetExceeded { needed: 14406, budget: 1000 })
        ));
    }

    #[test]
    fn p_submodule_matches_reduction() {
        for (a1, a0, m) in [(29, 19, 49), (29, 48, 49), (26, 94, 121), (24, 120, 121)] {
            let c2 = code(a1, a0, m);
            let c1 = c2.reduce_mod_p().unwrap();
            let sub = p_submodule_distribution(&c2, DEFAULT_BUDGET).unwrap();
            assert_eq!(sub, weight_distribution_enumerate(&c1, DEFAULT_BUDGET).unwrap());
        }
        assert!(p_submodule_distribution(&code(1, 5, 7), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn reduction_compatibility() {
        for (a1, a0, m) in [(29, 19, 49), (29, 48, 49), (26, 94, 121)] {
            let c2 = code(a1, a0, m);
            let c1 = c2.reduce_mod_p().unwrap();
            let p = c2.prime();
            for a in 0..m {
                for b in (0..m).step_by(3) {
                    let w = c2.codeword(a, b);
                    let r: Vec<u64> = w.iter().map(|v| v % p).collect();
                    assert!(c1.contains(&r));
                    let wt = |v: &[u64]| v.iter().filter(|&&x| x != 0).count();
                    assert!(wt(&w) >= wt(&r));
                }
            }
        }
    }
}
