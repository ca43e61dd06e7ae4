use crate::lattice::Weight;

/// Everything the engine can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {w} is not {l}-restricted")]
    NotRestricted { w: Weight, l: i64 },
    #[error("l must be at least 2, got {0}")]
    BadL(i64),
    #[error("p must be 0 or prime, got {0}")]
    BadP(i64),
    #[error("only characteristic zero is supported here (p = {0})")]
    PositiveCharacteristic(i64),
    #[error("{0}")]
    OutOfRange(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_l(l: i64) -> Result<()> {
    if l < 2 {
        return Err(Error::BadL(l));
    }
    Ok(())
}
