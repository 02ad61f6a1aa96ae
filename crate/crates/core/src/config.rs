//! Analysis parameters shared by the pipeline, the report and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expand::ExpansionBudget;
use crate::substitution::Substitution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    /// Longest factor length examined by tables, recurrence and certificates.
    pub k: usize,
    /// Length up to which the bounded language is computed.
    pub horizon: usize,
    /// Iteration bound for witness searches; `None` means `2·|A| + 4`.
    pub n_max: Option<usize>,
    /// Window length for the uniform recurrence check.
    pub window: usize,
    /// Half-width of scanned point segments `x[−M, M]`.
    pub m: usize,
    pub budget: ExpansionBudget,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            k: 6,
            horizon: 24,
            n_max: None,
            window: 2000,
            m: 5000,
            budget: ExpansionBudget::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = self.k > 0
            && self.horizon > 0
            && self.n_max != Some(0)
            && self.window > 0
            && self.m > 0
            && self.budget.max_length > 0
            && self.budget.max_power > 0;
        if !positive {
            return Err(Error::PreconditionFailed(
                "all analysis parameters must be positive".into(),
            ));
        }
        if self.horizon < self.k + 2 {
            return Err(Error::PreconditionFailed(format!(
                "horizon {} must be at least k + 2 = {}",
                self.horizon,
                self.k + 2
            )));
        }
        if self.window > 2 * self.m {
            return Err(Error::PreconditionFailed(format!(
                "window {} exceeds the scanned segment 2·M = {}",
                self.window,
                2 * self.m
            )));
        }
        Ok(())
    }

    pub fn n_max_for(&self, sub: &Substitution) -> usize {
        self.n_max.unwrap_or(2 * sub.len() + 4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = AnalysisConfig::default();
        c.validate().unwrap();
        let s = Substitution::parse("a -> ab\nb -> a").unwrap();
        assert_eq!(c.n_max_for(&s), 8);
    }

    #[test]
    fn rejects_short_horizon_and_zeros() {
        let c = AnalysisConfig {
            horizon: 7,
            ..AnalysisConfig::default()
        };
        assert!(c.validate().is_err());
        let c = AnalysisConfig {
            k: 0,
            ..AnalysisConfig::default()
        };
        assert!(c.validate().is_err());
        let c = AnalysisConfig {
            window: 20_000,
            ..AnalysisConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
