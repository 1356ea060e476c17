//! Size guards for the computations whose cost grows factorially.
//!
//! The group-enumeration cap is process-wide and may be raised by callers
//! (the CLI reads it from `WEINGARTEN_GROUP_CAP`). The other caps are fixed.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::{Error, Result};

/// Default largest `n` for which `S_n` is enumerated element by element (8! = 40320).
pub const DEFAULT_GROUP_CAP: usize = 8;

/// Largest `n` accepted by the character and class-function routines.
pub const CLASS_FUNCTION_CAP: usize = 12;

/// Largest `n` for the explicit `n! × n!` Gram matrix.
pub const GRAM_CAP: usize = 5;

/// Largest `n` for the floating-point regular representation used by the
/// Jucys–Murphy eigenvalue check.
pub const REGULAR_REP_CAP: usize = 5;

/// Hard upper limit for the group cap override.
pub const MAX_GROUP_CAP: usize = 10;

static GROUP_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_GROUP_CAP);

pub fn group_cap() -> usize {
    GROUP_CAP.load(Ordering::Relaxed)
}

/// Overrides the group-enumeration cap. Values above [`MAX_GROUP_CAP`] are rejected.
pub fn set_group_cap(cap: usize) -> Result<()> {
    if cap == 0 || cap > MAX_GROUP_CAP {
        return Err(Error::InvalidArgument(format!(
            "group cap must lie in 1..={MAX_GROUP_CAP}, got {cap}"
        )));
    }
    GROUP_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_group(n: usize) -> Result<()> {
    let cap = group_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "n",
            requested: n,
            cap,
            reason: "enumerating S_n costs n! elements",
        });
    }
    Ok(())
}

pub(crate) fn check_class_function(n: usize) -> Result<()> {
    if n > CLASS_FUNCTION_CAP {
        return Err(Error::CapExceeded {
            what: "n",
            requested: n,
            cap: CLASS_FUNCTION_CAP,
            reason: "character tables are limited to S_12",
        });
    }
    Ok(())
}

pub(crate) fn check_gram(n: usize) -> Result<()> {
    if n > GRAM_CAP {
        return Err(Error::CapExceeded {
            what: "n",
            requested: n,
            cap: GRAM_CAP,
            reason: "the Gram matrix is n! x n!",
        });
    }
    Ok(())
}

pub(crate) fn check_dimension(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}
