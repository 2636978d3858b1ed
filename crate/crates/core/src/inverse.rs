//! The inverse problem: given `p`, produce an integer recurrence for which
//! `p` is Wall-Sun-Sun, together with the discriminant class it lands in.
//!
//! A check polynomial of the wanted order is built over `F_p`, lifted to
//! `Z_{p^2}`, and its coefficients are read as integers `A, B`. The periods
//! of `X^2 + AX + B` mod `p` and `p^2` are then recomputed rather than
//! trusted.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modnum::{reduce_signed, require_odd_prime};
use crate::quadpoly::{
    construct_irreducible, construct_reducible, hensel_lift, lift_double_root, signed_squarefree, MonicQuadratic,
};
use crate::recurrence::{wss_test, RecurrenceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// Roots `1` and an element of order `D | p - 1`.
    Reducible,
    /// `(x - 1)^2`, order `p`.
    DoubleRoot,
    /// Conjugate roots of order `D | 2p + 2`.
    Irreducible,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Reducible => "reducible",
            Case::DoubleRoot => "double_root",
            Case::Irreducible => "irreducible",
        })
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "reducible" | "red" => Ok(Case::Reducible),
            "double_root" | "double" => Ok(Case::DoubleRoot),
            "irreducible" | "irr" => Ok(Case::Irreducible),
            other => Err(Error::Parse(format!("unknown case {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseCertificate {
    pub p: u64,
    pub case: Case,
    /// Target order `D`.
    pub order: u64,
    pub h: MonicQuadratic,
    #[serde(rename = "H")]
    pub lifted: MonicQuadratic,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    pub delta: i128,
    pub d: i128,
    pub k_p: u64,
    pub k_p2: u64,
}

impl InverseCertificate {
    pub fn spec(&self) -> RecurrenceSpec {
        RecurrenceSpec::new(self.a, self.b)
    }
}

/// Default target order for each case: `p - 1`, `p` and `2p + 2`.
pub fn default_order(p: u64, case: Case) -> u64 {
    match case {
        Case::Reducible => p - 1,
        Case::DoubleRoot => p,
        Case::Irreducible => 2 * p + 2,
    }
}

/// Builds and verifies a certificate. `lift` overrides the integer pair
/// `(A, B)`, which must still reduce to an admissible lift mod `p^2`;
/// otherwise `(A, B)` are the canonical coefficients of the lift with `B`
/// lowered by `p^2` until `A^2 - 4B > 0`.
pub fn construct(p: u64, case: Case, order: Option<u64>, lift: Option<(i64, i64)>) -> Result<InverseCertificate> {
    require_odd_prime(p)?;
    let order = order.unwrap_or_else(|| default_order(p, case));
    let m = p * p;
    let (h, lifts) = match case {
        Case::Reducible => {
            let h = construct_reducible(p, order)?;
            (h, vec![hensel_lift(&h, order)?])
        }
        Case::Irreducible => {
            let h = construct_irreducible(p, order)?;
            (h, vec![hensel_lift(&h, order)?])
        }
        Case::DoubleRoot => {
            if order != p {
                return Err(Error::InvalidArgument(format!("the double-root case has order p = {p}, not {order}")));
            }
            let lifts = lift_double_root(p)?;
            if lifts.is_empty() {
                return Err(Error::Verification(format!(
                    "no lift of (x-1)^2 divides x^{p}-1 modulo {m}; the double-root construction fails for p = {p}"
                )));
            }
            (MonicQuadratic::new(-2, 1, p)?, lifts)
        }
    };

    let (lifted, a, b) = match lift {
        Some((a, b)) => {
            let reduced = MonicQuadratic::new(a, b, m)?;
            if !lifts.contains(&reduced) {
                return Err(Error::InvalidArgument(format!("(A, B) = ({a}, {b}) does not reduce to a lift of {h}")));
            }
            (reduced, a, b)
        }
        None => {
            let lifted = lifts[0];
            let (a, mut b) = (lifted.coefficients().0 as i64, lifted.coefficients().1 as i64);
            while (a as i128).pow(2) - 4 * b as i128 <= 0 {
                b -= m as i64;
            }
            (lifted, a, b)
        }
    };

    let spec = RecurrenceSpec::new(a, b);
    let delta = spec.discriminant();
    if delta <= 0 {
        return Err(Error::InvalidArgument(format!("A^2 - 4B = {delta} must be positive")));
    }
    debug_assert_eq!(reduce_signed(b as i128, m), lifted.coefficients().1);
    let report = wss_test(&spec, p)?;
    if report.kp != order || report.kp2 != order {
        return Err(Error::Verification(format!(
            "X^2 + {a}X + {b}: k(p) = {}, k(p^2) = {}, expected both {order}",
            report.kp, report.kp2
        )));
    }
    Ok(InverseCertificate {
        p,
        case,
        order,
        h,
        lifted,
        a,
        b,
        delta,
        d: signed_squarefree(delta)?,
        k_p: report.kp,
        k_p2: report.kp2,
    })
}
