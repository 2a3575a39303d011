//! Closed-form RAACH curvature and the harnesses that check it.

pub mod formulas;
pub mod monotonicity;
pub mod sweeps;

pub use formulas::{
    be_case, lambda2_bound_check, lap_identity, lap_identity_check, edge_pattern_kappa, edge_pattern_graph, pair_laplacian,
    thm_be_raach, thm_or_raach, BeCase, BeClosedForm, LapIdentity, SpectralSummary,
};
pub use monotonicity::{
    adapt, adapted_weights, lipschitz_quotient_check, monotonicity_check, MonotonicityOutcome, Weighting,
    WeightingScheme,
};
pub use sweeps::{raach_family, ConcavityProfile, TransitivitySpread};
