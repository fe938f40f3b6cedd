//! Thermodynamics of the superconducting phases: critical fields, specific
//! heat, free energies and phase selection.

pub mod fields;
pub mod heat;
pub mod phase;

pub use fields::{
    condensation_radicand, coupling_field_integral, hc0_novel, hc0_ratio, hc0_standard,
    hc_ratio_novel, hc_standard, hi_average_rep1, phi, FieldZero, NormalInteraction,
    StandardFieldMode,
};
pub use heat::{
    entropy_sum_rule, novel_transition_report, specific_heat_ratio_novel, specific_heat_standard,
    standard_heat_jump, EntropySumRule, SpecificHeat, StandardHeat, StandardHeatBranch,
    TransitionReport, NEAR_TC_SWITCH,
};
pub use phase::{
    df_novel, df_standard, free_energy_curves, novel_curve, omega_difference_check, phase_select,
    FreeEnergyPoint, OmegaCheck, Phase, PhaseParams, PhaseVerdict, ThermoCurve, PHASE_TOL,
};
