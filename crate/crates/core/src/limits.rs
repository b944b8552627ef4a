//! Dimension caps and default tolerances.
//!
//! Dense cube functions hold 2ⁿ doubles, so `n` must be bounded. The caps are
//! read once from `CUBE_SPECTRA_MAX_N` when set (the single value replaces
//! both caps), otherwise the defaults below apply.

use std::sync::OnceLock;

/// Default cap for dense transforms (2²⁸ doubles is about 2 GiB).
pub const DEFAULT_TRANSFORM_MAX_N: usize = 28;
/// Default cap for exact bitset sweeps over the cube.
pub const DEFAULT_SWEEP_MAX_N: usize = 24;
/// Hard ceiling imposed by the index width used for cube points.
pub const HARD_MAX_N: usize = 32;

/// Default absolute tolerance for floating comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

pub const MAX_N_ENV: &str = "CUBE_SPECTRA_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub transform: usize,
    pub sweep: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            transform: DEFAULT_TRANSFORM_MAX_N,
            sweep: DEFAULT_SWEEP_MAX_N,
        }
    }
}

impl Caps {
    /// Caps from the environment; unparsable values fall back to the defaults.
    pub fn from_env() -> Self {
        match std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) => {
                let n = n.min(HARD_MAX_N);
                Caps {
                    transform: n,
                    sweep: n,
                }
            }
            None => Caps::default(),
        }
    }
}

static CAPS: OnceLock<Caps> = OnceLock::new();

/// Process-wide caps, initialised from the environment on first use.
pub fn caps() -> Caps {
    *CAPS.get_or_init(Caps::from_env)
}
