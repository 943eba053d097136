use thiserror::Error;

/// Errors raised by the algebra in this crate.
///
/// Verdicts such as "not an automorphism" or "not conjugate" are ordinary
/// return values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("bad input: {0}")]
    BadInput(String),

    #[error("divisor must have positive degree and a unit leading coefficient")]
    BadDivisor,

    #[error("input polynomial is zero")]
    ZeroInput,

    #[error("endomorphism is not invertible: {0}")]
    NotInvertible(String),

    #[error("internal check failed: {0}")]
    InternalCheckFailed(String),

    #[error("order exceeds cap {0}")]
    OrderExceedsCap(u64),

    #[error("search space of {size} exceeds the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },

    #[error("Z_{0} is reduced (n is squarefree)")]
    RingIsReduced(u64),

    #[error("{r} * {q} is not a coprime factorization of {n}")]
    BadFactorization { n: u64, r: u64, q: u64 },

    #[error("set is not closed under the group law")]
    NotAGroup,

    #[error("degree bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),

    #[error("operation requires modulus 4, got {0}")]
    NotZ4(u64),

    #[error("fixed ring disagrees with catalog ring {catalog} at degree bound {degree}, work bound {work}")]
    InconsistentWithCatalog {
        catalog: String,
        degree: usize,
        work: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Default bound on brute-force candidate counts.
pub const SEARCH_BOUND: u128 = 10_000_000;

pub(crate) fn guard(size: u128) -> Result<()> {
    if size > SEARCH_BOUND {
        Err(Error::SearchSpaceTooLarge {
            size,
            bound: SEARCH_BOUND,
        })
    } else {
        Ok(())
    }
}
