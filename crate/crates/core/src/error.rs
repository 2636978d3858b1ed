use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("{divisor} does not divide {target}")]
    NotADivisor { divisor: String, target: String },

    #[error("repeated factor: {0} and its cofactor are not coprime modulo p; use the double-root lift instead")]
    RepeatedFactor(String),

    #[error("degenerate order {order} for p = {p}: the root lies in F_p")]
    DegenerateOrder { p: u64, order: u64 },

    #[error("{0} is a perfect square")]
    PerfectSquare(u64),

    #[error("no solution of x^2 - {d}y^2 = +-4 with y <= {bound} (bound exceeded)")]
    PellBoundExceeded { d: u64, bound: u64 },

    #[error("work budget exceeded: {needed} cell visits > {budget}; use the closed-form path")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("period dichotomy violated modulo {p}^2: k(p) = {kp}, k(p^2) = {kp2}")]
    DichotomyViolation { p: u64, kp: u64, kp2: u64 },

    #[error("gcd(n, p) = gcd({n}, {p}) != 1: cyclic codes over Z_(p^2) need a length coprime to p")]
    LengthNotCoprime { n: u64, p: u64 },

    #[error("a = b (mod p): C(a,b) would have p^3 codewords and not be free")]
    NotFree,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("verification failed: {0}")]
    Verification(String),
}
