//! Gap equations: standard BCS, the film solution, and shell mode counting.

pub mod modes;
pub mod novel;
pub mod standard;

pub use modes::{
    bulk_gap_collapse_check, nu_count, nu_count_analytic, nu_count_lattice, nu_cube, nu_film,
    BulkCollapseVerdict, CollapseEntry, NuCount, ShellGeometry, DEFAULT_LATTICE_BUDGET,
};
pub use novel::{
    anomalous_average_novel, epsilon_of_t, eta, novel_tc, solve_novel, solve_spectrum_equation,
    spectrum_residual, NovelGapSolution, NovelSpectrum,
};
pub use standard::{
    bcs_gap_at, bcs_gap_zero_closed_form, bcs_tc, solve_standard, CriticalTemperature,
    StandardGapSolution,
};
