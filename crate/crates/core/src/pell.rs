//! Fundamental units `(a + b√d)/2` from the least solution of
//! `x^2 - d y^2 = ±4`, and the recurrence they generate.

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceSpec;

pub const DEFAULT_PELL_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FundamentalUnit {
    pub d: u64,
    pub a: u64,
    pub b: u64,
    /// `(a^2 - d b^2) / 4`, either `-1` or `1`.
    pub unit_norm: i8,
}

impl FundamentalUnit {
    /// Discriminant `a^2 - 4 N` of the unit's minimal polynomial; equals `d b^2`.
    pub fn discriminant(&self) -> u128 {
        self.d as u128 * self.b as u128 * self.b as u128
    }
}

fn exact_sqrt(x: u128) -> Option<u64> {
    let r = x.sqrt();
    (r * r == x).then_some(r as u64)
}

pub fn fundamental_unit(d: u64) -> Result<FundamentalUnit> {
    fundamental_unit_with_bound(d, DEFAULT_PELL_BOUND)
}

/// Scans `b = 1, 2, ...` up to `bound`. At equal `b` the norm `-1` solution
/// is the smaller unit and wins.
///
/// Any non-square `d > 1` is accepted; for non-fundamental `d` this is simply
/// the least solution of the literal equation.
pub fn fundamental_unit_with_bound(d: u64, bound: u64) -> Result<FundamentalUnit> {
    if d <= 1 {
        return Err(Error::InvalidArgument(format!("d = {d} must exceed 1")));
    }
    if exact_sqrt(d as u128).is_some() {
        return Err(Error::PerfectSquare(d));
    }
    for b in 1..=bound {
        let t = d as u128 * b as u128 * b as u128;
        if let Some(a) = t.checked_sub(4).and_then(exact_sqrt) {
            return Ok(FundamentalUnit { d, a, b, unit_norm: -1 });
        }
        if let Some(a) = exact_sqrt(t + 4) {
            return Ok(FundamentalUnit { d, a, b, unit_norm: 1 });
        }
    }
    Err(Error::PellBoundExceeded { d, bound })
}

/// `F_{n+2} = a F_{n+1} - N F_n`, the recurrence whose characteristic
/// polynomial `X^2 - aX + N` has the unit and its conjugate as roots.
pub fn recurrence_from_unit(unit: &FundamentalUnit) -> RecurrenceSpec {
    RecurrenceSpec::from_trace_norm(unit.a as i64, unit.unit_norm as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modnum::squarefree_part;

    #[test]
    fn small_units() {
        let cases =
            [(5, 1, 1, -1), (8, 2, 1, -1), (12, 4, 1, 1), (13, 3, 1, -1), (24, 10, 2, 1), (2, 2, 2, -1), (3, 4, 2, 1)];
        for (d, a, b, n) in cases {
            assert_eq!(fundamental_unit(d).unwrap(), FundamentalUnit { d, a, b, unit_norm: n }, "d = {d}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(fundamental_unit(16), Err(Error::PerfectSquare(16))));
        assert!(fundamental_unit(1).is_err());
        assert!(fundamental_unit(0).is_err());
        assert!(matches!(fundamental_unit_with_bound(94, 10), Err(Error::PellBoundExceeded { d: 94, bound: 10 })));
    }

    #[test]
    fn recurrences() {
        assert_eq!(recurrence_from_unit(&fundamental_unit(5).unwrap()), RecurrenceSpec::fibonacci());
        let r8 = recurrence_from_unit(&fundamental_unit(8).unwrap());
        assert_eq!((r8.trace(), r8.norm()), (2, -1));
        let r12 = recurrence_from_unit(&fundamental_unit(12).unwrap());
        assert_eq!((r12.trace(), r12.norm()), (4, 1));
    }

    /// Independent oracle: for each b' < b, look for a' near sqrt(d b'^2)
    /// using floating point and exact integer confirmation.
    fn has_smaller_solution(d: u64, b: u64) -> bool {
        (1..b).any(|bb| {
            let t = d as i128 * bb as i128 * bb as i128;
            let guess = (t as f64).sqrt() as i128;
            (guess - 2..=guess + 2).any(|a| a >= 0 && (a * a - t).abs() == 4)
        })
    }

    #[test]
    fn minimal_and_exact_up_to_1000() {
        let mut solved = 0;
        for d in 2..=1000u64 {
            match fundamental_unit_with_bound(d, 100_000) {
                Ok(u) => {
                    let lhs = u.a as i128 * u.a as i128 - u.discriminant() as i128;
                    assert_eq!(lhs, 4 * u.unit_norm as i128);
                    if u.b <= 20_000 {
                        assert!(!has_smaller_solution(d, u.b), "d = {d}");
                    }
                    solved += 1;
                }
                Err(Error::PerfectSquare(_)) => assert_eq!(d.sqrt() * d.sqrt(), d),
                Err(Error::PellBoundExceeded { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(solved > 700, "only {solved} units found");
    }

    #[test]
    fn discriminant_has_squarefree_part_d() {
        for d in (2..=100u64).filter(|&d| squarefree_part(d).unwrap() == d) {
            let u = fundamental_unit(d).unwrap();
            assert_eq!(squarefree_part(u64::try_from(u.discriminant()).unwrap()).unwrap(), d);
        }
    }
}
