use serde::{Deserialize, Serialize};

use crate::algebra::DEFAULT_LENGTH_CAP;
use crate::error::{Error, Result};
use crate::exactla::{is_prime, DEFAULT_PRIME};

/// Environment variable overriding [`Config::seed`].
pub const SEED_ENV: &str = "DERANGE_SEED";

/// Run-wide knobs: field, randomness and search budgets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub prime: u32,
    pub seed: u64,
    /// Random Fitting samples per indecomposability test.
    pub fitting_trials: usize,
    /// Random chain maps tried before exhaustive isomorphism search.
    pub iso_trials: usize,
    /// Largest hom space (in elements) searched exhaustively.
    pub iso_budget: u64,
    /// Largest number of differential assignments a census may enumerate.
    pub census_budget: u64,
    pub length_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            seed: 0x5eed,
            fitting_trials: 32,
            iso_trials: 64,
            iso_budget: 1 << 20,
            census_budget: 1 << 22,
            length_cap: DEFAULT_LENGTH_CAP,
        }
    }
}

impl Config {
    /// Default config with the seed taken from `DERANGE_SEED` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(s) = std::env::var(SEED_ENV) {
            cfg.seed = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{SEED_ENV}={s} is not an unsigned integer")))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.prime) || self.prime >= 1 << 31 {
            return Err(Error::InvalidPrime(self.prime));
        }
        if self.fitting_trials == 0 || self.iso_budget == 0 || self.census_budget == 0 || self.length_cap == 0 {
            return Err(Error::InvalidInput("budgets must be positive".into()));
        }
        Ok(())
    }
}
