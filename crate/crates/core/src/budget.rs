use crate::error::{Error, Result};

/// Operations estimated above this many field operations are refused.
pub const DEFAULT_OP_LIMIT: u128 = 10_000_000_000;

/// Guard against accidentally launching an exhaustive run that cannot finish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u128,
    pub force: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: DEFAULT_OP_LIMIT,
            force: false,
        }
    }
}

impl Budget {
    pub fn forced() -> Self {
        Budget {
            force: true,
            ..Budget::default()
        }
    }

    pub fn check(&self, estimate: u128) -> Result<()> {
        if self.force || estimate <= self.limit {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                estimate,
                limit: self.limit,
            })
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}
