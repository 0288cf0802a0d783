//! Resource limits shared by the enumerators and scans.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable holding budget overrides, `key=value` pairs separated by commas.
pub const BUDGET_ENV: &str = "ORDERCONE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budgets {
    /// Maximum handle-reduction steps for a single word.
    pub reduction_steps: u64,
    /// Maximum ball radius for B_3 (and B_2).
    pub braid_ball_radius_3: usize,
    /// Maximum ball radius for B_n with n >= 4.
    pub braid_ball_radius_4: usize,
    /// Maximum ball radius for Z^k and the Klein bottle group.
    pub ball_radius: usize,
    pub census_radius_braid: usize,
    pub census_radius: usize,
    /// Search nodes allowed in one census enumeration.
    pub census_nodes: u64,
    /// Frontier nodes allowed in semigroup searches.
    pub frontier: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            reduction_steps: 1_000_000,
            braid_ball_radius_3: 4,
            braid_ball_radius_4: 3,
            ball_radius: 12,
            census_radius_braid: 3,
            census_radius: 6,
            census_nodes: 50_000_000,
            frontier: 1_000_000,
        }
    }
}

impl Budgets {
    /// Budgets large enough for the acceptance experiments (conjugator balls of radius 6,
    /// comparison resolution up to 10 in B_3).
    pub fn experiment() -> Self {
        Budgets {
            braid_ball_radius_3: 10,
            braid_ball_radius_4: 5,
            ..Budgets::default()
        }
    }

    pub fn braid_ball_radius(&self, n: usize) -> usize {
        if n <= 3 {
            self.braid_ball_radius_3
        } else {
            self.braid_ball_radius_4
        }
    }

    /// Applies `key=value,key=value` overrides.
    pub fn apply_overrides(&mut self, text: &str) -> Result<()> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget override `{item}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("budget value `{value}` is not an integer")))?;
            if value == 0 {
                return Err(Error::Parse(format!("budget `{key}` must be positive")));
            }
            let v = value as usize;
            match key.trim() {
                "reduction_steps" => self.reduction_steps = value,
                "braid_ball_radius_3" => self.braid_ball_radius_3 = v,
                "braid_ball_radius_4" => self.braid_ball_radius_4 = v,
                "ball_radius" => self.ball_radius = v,
                "census_radius_braid" => self.census_radius_braid = v,
                "census_radius" => self.census_radius = v,
                "census_nodes" => self.census_nodes = value,
                "frontier" => self.frontier = v,
                other => return Err(Error::Parse(format!("unknown budget `{other}`"))),
            }
        }
        Ok(())
    }

    /// Defaults with `ORDERCONE_BUDGET` applied, if set.
    pub fn from_env() -> Result<Self> {
        let mut budgets = Budgets::default();
        if let Ok(text) = std::env::var(BUDGET_ENV) {
            budgets.apply_overrides(&text)?;
        }
        Ok(budgets)
    }
}
