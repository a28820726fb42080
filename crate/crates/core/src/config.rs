//! Engine limits shared by every decision procedure.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Working precisions (bits) tried in order before doubling further.
    pub precision_ladder: Vec<u32>,
    /// Hard ceiling; exceeding it is an error, never a silent guess.
    pub max_precision_bits: u32,
    /// Largest spherical-harmonic degree certified by full-operator queries.
    pub l_max: u32,
    /// Maximum number of ₀F₃ series terms.
    pub series_term_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            precision_ladder: vec![128, 256, 512, 1024],
            max_precision_bits: 4096,
            l_max: 50,
            series_term_cap: 1_000_000,
        }
    }
}

impl Config {
    /// Precisions to attempt: the ladder, then doubling up to the ceiling.
    pub fn precisions(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .precision_ladder
            .iter()
            .copied()
            .filter(|&p| p <= self.max_precision_bits)
            .collect();
        let mut p = out.last().copied().unwrap_or(64);
        while p < self.max_precision_bits {
            p = (p * 2).min(self.max_precision_bits);
            out.push(p);
        }
        if out.is_empty() {
            out.push(self.max_precision_bits);
        }
        out
    }

    pub fn starting_at(&self, bits: u32) -> Self {
        let mut c = self.clone();
        c.precision_ladder = vec![bits];
        c
    }
}
