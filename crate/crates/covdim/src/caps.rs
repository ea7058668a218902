//! Enumeration caps.
//!
//! Every exhaustive operation is gated by a cap so that a typo in a CLI
//! argument fails fast instead of starting a week-long enumeration. The
//! defaults are sized for desk-scale runs (q <= 5, n <= 14 or so); the
//! environment variable `CCDIM_CAPS` overrides them with a comma-separated
//! list such as `codewords=33554432,subspaces=200000000,subsets=26`.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest codeword enumeration: q^k (and q^{km} for tuple counts).
    pub max_codewords: u64,
    /// Largest subspace stream: the Gaussian binomial being enumerated.
    pub max_subspaces: u64,
    /// Largest ground set for 2^n subset sweeps (characteristic polynomial).
    pub max_subset_ground: usize,
    /// Largest ground set for flat enumeration.
    pub max_flat_ground: usize,
    /// Largest number of codes a single search run may stream.
    pub max_codes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_codewords: 1 << 24,
            max_subspaces: 100_000_000,
            max_subset_ground: 24,
            max_flat_ground: 16,
            max_codes: 10_000_000,
        }
    }
}

impl Caps {
    /// Caps with overrides applied from the `CCDIM_CAPS` environment variable.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("CCDIM_CAPS") {
            Ok(spec) => Caps::with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Parse a `key=value,key=value` override string.
    ///
    /// Recognised keys: `codewords`, `subspaces`, `subsets` (ground-set size
    /// for subset sweeps), `flats`, `codes`.
    pub fn with_overrides(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("cap override `{part}` is not key=value"))
            })?;
            let parse = |v: &str| -> Result<u64> {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad cap value `{v}`")))
            };
            match key.trim() {
                "codewords" => caps.max_codewords = parse(value)?,
                "subspaces" => caps.max_subspaces = parse(value)?,
                "subsets" => caps.max_subset_ground = parse(value)? as usize,
                "flats" => caps.max_flat_ground = parse(value)? as usize,
                "codes" => caps.max_codes = parse(value)?,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown cap key `{other}`"
                    )))
                }
            }
        }
        Ok(caps)
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128, cap: u64) -> Result<()> {
        if needed > cap as u128 {
            Err(Error::CapExceeded {
                what,
                needed,
                cap: cap as u128,
            })
        } else {
            Ok(())
        }
    }
}
