//! Factorization pipelines, one strategy per certificate kind.
//!
//! Each pipeline lives behind [`DecompositionStrategy`], is registered by
//! name in [`StrategyRegistry`], and is selected at runtime (the CLI's
//! `--kind` flag). All strategies emit a [`Certificate`] whose witnesses
//! replay by exact composition.

pub mod commutators;
pub mod corner;
pub mod fixnorm;
pub mod flips;
pub mod periodic;
pub mod reversible;
pub mod rotations;
pub mod shrink;
pub mod vaserstein;

use crate::cert::Certificate;
use crate::error::Result;
use crate::fiet::Fiet;

pub use corner::{corner_support_decomposition, fix_increasing_involution};
pub use fixnorm::normalize_fixed_set;
pub use flips::{factor_flips, symmetry_as_commutator};
pub use periodic::{
    periodic_as_commutator, periodic_normal_form, reverse_periodic, sqrt_of_periodic,
};
pub use rotations::{restricted_rotation_as_commutator, to_restricted_rotations};
pub use shrink::{shrink_support, ShrinkResult};
pub use vaserstein::{dyadic_depth, step_count, vaserstein_step};

/// Pipeline tuning shared by the strategies.
#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    /// Power-iteration cap used to probe irrational maps for periodicity
    /// before running the general pipeline. Rational maps are decided
    /// exactly regardless of this cap.
    pub periodic_probe_cap: u64,
    /// The `n` of the corner-support strategy: the tail support is
    /// [1 - 1/n, 1).
    pub corner_n: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            periodic_probe_cap: 64,
            corner_n: 2,
        }
    }
}

/// A named factorization algorithm producing one kind of certificate.
pub trait DecompositionStrategy: Send + Sync {
    /// Registry name (the CLI `--kind` value).
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn decompose(&self, target: &Fiet, opts: &DecomposeOptions) -> Result<Certificate>;
}

/// All built-in strategies, selectable by name.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn DecompositionStrategy>>,
}

impl StrategyRegistry {
    pub fn with_builtins() -> StrategyRegistry {
        StrategyRegistry {
            entries: vec![
                Box::new(rotations::RotationsStrategy),
                Box::new(commutators::CommutatorsStrategy),
                Box::new(reversible::StronglyReversibleStrategy),
                Box::new(reversible::InvolutionsStrategy),
                Box::new(corner::CornerSupportStrategy),
            ],
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn DecompositionStrategy> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        StrategyRegistry::with_builtins()
    }
}
