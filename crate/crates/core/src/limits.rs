use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order any guard may be raised to.
pub const HARD_MAX_GROUP_ORDER: usize = 48;
/// Largest arity (`n` in `G x S_n`) any guard may be raised to.
pub const HARD_MAX_ARITY: usize = 8;
/// Arity bound of the brute-force component oracle.
pub const ORACLE_MAX_ARITY: usize = 4;

/// Size guards for the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_group_order: usize,
    pub max_arity: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 24,
            max_arity: 6,
        }
    }
}

impl Limits {
    pub fn new(max_group_order: usize, max_arity: usize) -> Result<Self> {
        if max_group_order > HARD_MAX_GROUP_ORDER {
            return Err(Error::SizeLimitExceeded {
                what: "group order guard",
                size: max_group_order,
                limit: HARD_MAX_GROUP_ORDER,
            });
        }
        if max_arity > HARD_MAX_ARITY {
            return Err(Error::SizeLimitExceeded {
                what: "arity guard",
                size: max_arity,
                limit: HARD_MAX_ARITY,
            });
        }
        Ok(Limits {
            max_group_order,
            max_arity,
        })
    }

    pub fn check_group_order(&self, order: usize) -> Result<()> {
        if order > self.max_group_order {
            return Err(Error::SizeLimitExceeded {
                what: "group order",
                size: order,
                limit: self.max_group_order,
            });
        }
        Ok(())
    }

    pub fn check_arity(&self, n: usize) -> Result<()> {
        if n > self.max_arity {
            return Err(Error::SizeLimitExceeded {
                what: "arity",
                size: n,
                limit: self.max_arity,
            });
        }
        Ok(())
    }
}
