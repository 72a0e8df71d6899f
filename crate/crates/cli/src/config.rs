//! Experiment configuration shared by the suites.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

/// Named experiment suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Cpm,
    Order,
    Hodograph,
    Causality,
    Circle,
    Escape,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cpm" => Ok(Suite::Cpm),
            "order" => Ok(Suite::Order),
            "hodograph" => Ok(Suite::Hodograph),
            "causality" => Ok(Suite::Causality),
            "circle" => Ok(Suite::Circle),
            "escape" => Ok(Suite::Escape),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite `{other}` (expected cpm, order, hodograph, causality, circle, escape or all)"
            )),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Suite::Cpm => "cpm",
            Suite::Order => "order",
            Suite::Hodograph => "hodograph",
            Suite::Causality => "causality",
            Suite::Circle => "circle",
            Suite::Escape => "escape",
            Suite::All => "all",
        };
        f.write_str(name)
    }
}

/// Configuration of one run: suite, seed, grid resolutions and tolerance
/// overrides. Identical configurations produce byte-identical report
/// payloads.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub seed: u64,
    pub circle_resolution: usize,
    pub sphere_resolution: usize,
    pub tolerances: BTreeMap<String, f64>,
}

impl SuiteConfig {
    pub fn new(suite: Suite, seed: u64) -> SuiteConfig {
        SuiteConfig {
            suite,
            seed,
            circle_resolution: 1024,
            sphere_resolution: 4096,
            tolerances: BTreeMap::new(),
        }
    }

    /// Tolerance lookup with an override map.
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// Derive a check-specific RNG seed from the run seed.
    pub fn seed_for(&self, check: &str) -> u64 {
        // FNV-1a over the check name, folded into the run seed
        let mut h: u64 = 0xcbf29ce484222325;
        for b in check.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        self.seed ^ h
    }
}
