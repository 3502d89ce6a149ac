//! Enumeration and size caps.
//!
//! Caps are runtime configuration. The process-wide value starts at the defaults and can be
//! replaced with [`set_global`], typically from the `MATROID_ALLOC_CAPS` environment variable.

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const ENV_VAR: &str = "MATROID_ALLOC_CAPS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest set enumerated exhaustively by submodular minimization.
    pub ground: usize,
    /// Assignment count for brute force on classical instances.
    pub enum_classical: u128,
    /// Product of per-item basis counts for brute force on matroid instances.
    pub enum_matroid: u128,
    /// Copies in a unit expansion.
    pub expansion: usize,
    /// Variables in the assignment LP.
    pub lp_vars: usize,
    /// Configurations per player.
    pub configs: usize,
    /// Points in a guess grid.
    pub guess_grid: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ground: 24,
            enum_classical: 10_000_000,
            enum_matroid: 1_000_000,
            expansion: 64,
            lp_vars: 200,
            configs: 100_000,
            guess_grid: 1 << 16,
        }
    }
}

impl Caps {
    /// Applies `key=value` overrides separated by commas, e.g. `ground=20,lp=300`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("cap override `{part}` lacks `=`")))?;
            let parsed: u128 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("cap `{key}` has non-integer value `{value}`")))?;
            let small = || usize::try_from(parsed).map_err(|_| Error::InvalidInput(format!("cap `{key}` too large")));
            match key.trim() {
                "ground" => self.ground = small()?,
                "enum" | "enum_classical" => self.enum_classical = parsed,
                "enum_matroid" => self.enum_matroid = parsed,
                "expansion" => self.expansion = small()?,
                "lp" | "lp_vars" => self.lp_vars = small()?,
                "configs" => self.configs = small()?,
                "grid" | "guess_grid" => self.guess_grid = small()?,
                other => return Err(Error::InvalidInput(format!("unknown cap `{other}`"))),
            }
        }
        Ok(())
    }

    /// Defaults with the environment overrides applied.
    pub fn from_env() -> Result<Caps> {
        let mut caps = Caps::default();
        if let Ok(spec) = std::env::var(ENV_VAR) {
            caps.apply_overrides(&spec)?;
        }
        Ok(caps)
    }
}

static GLOBAL: RwLock<Option<Caps>> = RwLock::new(None);

/// The process-wide caps.
pub fn global() -> Caps {
    GLOBAL.read().expect("caps lock poisoned").clone().unwrap_or_default()
}

pub fn set_global(caps: Caps) {
    *GLOBAL.write().expect("caps lock poisoned") = Some(caps);
}
