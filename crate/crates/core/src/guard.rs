//! Resource guards for the exponential searches.
//!
//! Every guard can be overridden through `STARUNIV_GUARD`, which takes either a
//! single integer (applied to every guard as a multiplier) or a comma separated
//! list of `name=value` pairs that replace individual limits.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "STARUNIV_GUARD";

/// Returns the effective limit for the guard `name` with default `default`.
pub fn limit(name: &str, default: usize) -> usize {
    let Ok(raw) = std::env::var(ENV_VAR) else {
        return default;
    };
    let raw = raw.trim();
    if let Ok(factor) = raw.parse::<usize>() {
        return default.saturating_mul(factor.max(1));
    }
    for pair in raw.split(',') {
        if let Some((k, v)) = pair.split_once('=') {
            if k.trim() == name {
                if let Ok(v) = v.trim().parse::<usize>() {
                    return v;
                }
            }
        }
    }
    default
}

pub fn check(name: &str, value: usize, default: usize) -> Result<()> {
    let lim = limit(name, default);
    if value > lim {
        return Err(Error::Resource(format!(
            "{name}: {value} exceeds limit {lim} (override with {ENV_VAR})"
        )));
    }
    Ok(())
}
