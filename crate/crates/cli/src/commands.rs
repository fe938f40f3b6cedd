//! One function per subcommand. Each returns its CSV payload and, for
//! curves, the curve itself for optional SVG rendering.

use bcsreps_core::consts::{HBAR, K_B, M_E};
use bcsreps_core::fockring::{
    bogoliubov_transform, build_h02, build_mode_operators, exp_iq, hermitian_spectrum, mul,
    thermal_anomalous_average, vacuum_overlap, verify_ring, AlphaFamily, CMatrix, PairingParams,
};
use bcsreps_core::gap::{
    bcs_gap_at, bcs_tc, epsilon_of_t, eta, nu_count, nu_cube, nu_film, ShellGeometry,
};
use bcsreps_core::material::density_of_states;
use bcsreps_core::thermo::{
    free_energy_curves, hc0_ratio, hc0_standard, hc_ratio_novel, hc_standard, phase_select,
    specific_heat_ratio_novel, Phase, PhaseParams, StandardFieldMode,
};

use crate::config::{FieldMode, GeometryKind, RunConfig};
use crate::curve::{Curve, Report};
use crate::CliError;

pub enum Output {
    Curve(Curve),
    Report(Report),
}

impl Output {
    pub fn to_csv(&self) -> Result<String, CliError> {
        match self {
            Output::Curve(c) => c.to_csv(),
            Output::Report(r) => r.to_csv(),
        }
    }
}

/// Tolerances of the Fock-space checks.
pub const RING_TOL: f64 = 1e-12;
pub const CONJUGATION_TOL: f64 = 1e-10;
pub const OVERLAP_TOL: f64 = 1e-12;
pub const SPECTRUM_TOL: f64 = 1e-10;
pub const THERMAL_TOL: f64 = 1e-10;
/// Above this many pairs the dense eigenproblems are skipped.
pub const FOCK_EIGEN_MAX_PAIRS: usize = 5;

pub fn tc(cfg: &RunConfig) -> Result<Output, CliError> {
    let bcs = bcs_tc(cfg.g_n0, cfg.debye_temperature)?;
    let gap0 = bcs_gap_at(0.0, cfg.g_n0, cfg.debye_temperature)? * cfg.debye_temperature;
    let film = epsilon_of_t(
        0.0,
        cfg.effective_coupling,
        cfg.fermi_temperature,
        Some(cfg.debye_temperature),
    )?;
    if film.exceeds_debye {
        eprintln!(
            "warning: film gap {:.4} K exceeds the Debye temperature {} K; the window assumption fails",
            film.epsilon0, cfg.debye_temperature
        );
    }
    let mut r = Report::default();
    r.push("bcs_tc_numeric_K", bcs.numeric);
    r.push("bcs_tc_closed_form_K", bcs.closed_form);
    r.push("bcs_gap0_K", gap0);
    r.push("bcs_gap_ratio", 2.0 * gap0 / bcs.numeric);
    r.push("film_tc_K", film.tc);
    r.push("film_epsilon0_K", film.epsilon0);
    r.push("film_ratio", film.epsilon0 / film.tc);
    r.push(
        "film_exceeds_debye",
        f64::from(u8::from(film.exceeds_debye)),
    );
    Ok(Output::Report(r))
}

pub fn gap_curve(cfg: &RunConfig) -> Result<Output, CliError> {
    let rows = cfg
        .tau_grid()
        .into_iter()
        .map(|t| vec![t, eta(t)])
        .collect();
    Ok(Output::Curve(Curve::new(&["tau", "eta"], rows)?))
}

fn standard_mode(cfg: &RunConfig) -> StandardFieldMode {
    match cfg.field_mode {
        FieldMode::TwoFluid => StandardFieldMode::TwoFluid,
        FieldMode::Coupling => StandardFieldMode::CouplingIntegral {
            g_n0: cfg.g_n0,
            debye_temperature: cfg.debye_temperature,
        },
    }
}

/// H′_c(0) and H_c(0) in gauss for a free-electron metal at the configured
/// Fermi temperature.
fn zero_fields(cfg: &RunConfig) -> Result<(f64, f64), CliError> {
    let k_f = (2.0 * M_E * K_B * cfg.fermi_temperature).sqrt() / HBAR;
    let n0 = density_of_states(M_E, k_f)?;
    let standard = hc0_standard(n0, cfg.tc_prime)?;
    Ok((
        standard * hc0_ratio(cfg.tc, cfg.tc_prime, cfg.g_n0),
        standard,
    ))
}

pub fn hc_curve(cfg: &RunConfig) -> Result<Output, CliError> {
    let mode = standard_mode(cfg);
    let (scale_novel, scale_standard) = if cfg.absolute_fields {
        zero_fields(cfg)?
    } else {
        (1.0, 1.0)
    };
    let rows = cfg
        .tau_grid()
        .into_iter()
        .map(|t| {
            Ok(vec![
                t,
                scale_novel * hc_ratio_novel(t)?,
                scale_standard * hc_standard(t, mode)?,
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let header: &[&str] = if cfg.absolute_fields {
        &["tau", "H_novel_gauss", "H_standard_gauss"]
    } else {
        &["tau", "R_H_novel", "R_H_standard"]
    };
    Ok(Output::Curve(Curve::new(header, rows)?))
}

pub fn cv_curve(cfg: &RunConfig) -> Result<Output, CliError> {
    let rows = cfg
        .tau_grid()
        .into_iter()
        .map(|t| Ok(vec![t, specific_heat_ratio_novel(t, cfg.g_n0)?.r_c]))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Output::Curve(Curve::new(&["tau", "R_C"], rows)?))
}

fn phase_params(cfg: &RunConfig) -> Result<PhaseParams, CliError> {
    Ok(PhaseParams::new(cfg.tc, cfg.tc_prime, cfg.g_n0)?)
}

pub fn free_energy(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = phase_params(cfg)?;
    let temps: Vec<f64> = cfg.tau_grid().into_iter().map(|t| t * cfg.tc).collect();
    let rows = free_energy_curves(&temps, &p)?
        .into_iter()
        .map(|f| vec![f.t, f.df_novel, f.df_standard])
        .collect();
    Ok(Output::Curve(Curve::new(
        &["T", "df_novel", "df_standard"],
        rows,
    )?))
}

pub fn phase(cfg: &RunConfig) -> Result<Output, CliError> {
    let p = phase_params(cfg)?;
    let v = phase_select(cfg.temperature, &p)?;
    let winner = match v.winner {
        Phase::Normal => 0.0,
        Phase::StandardBcs => 1.0,
        Phase::Novel => 2.0,
    };
    eprintln!("phase at T = {} K: {:?}", cfg.temperature, v.winner);
    let mut r = Report::default();
    r.push("T_K", v.t);
    r.push("winner", winner);
    r.push("df_novel", v.df_novel);
    r.push("df_standard", v.df_standard);
    r.push("field_ratio", v.field_ratio);
    r.push("film_condition", f64::from(u8::from(v.condition_film)));
    // the condition holds exactly above this coupling
    r.push(
        "gN0_threshold",
        6.0 * (-2.0 * bcsreps_core::consts::EULER_GAMMA).exp() * (cfg.tc_prime / cfg.tc).powi(2),
    );
    Ok(Output::Report(r))
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Runs the operator-algebra checks and fails with the worst residual when
/// any of them exceeds its tolerance.
pub fn fock_verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let pairs = cfg.pairs;
    let ops = build_mode_operators(pairs)?;
    let angles: Vec<f64> = (0..pairs)
        .map(|p| cfg.alpha * (p + 1) as f64 / pairs as f64)
        .collect();
    let alphas = AlphaFamily::new(angles)?;
    let mut r = Report::default();
    let mut failures = Vec::new();
    let mut check = |r: &mut Report, name: &str, value: f64, tol: f64| {
        r.push(name, value);
        if value.is_nan() || value > tol {
            failures.push(format!("{name} = {value:e} exceeds {tol:e}"));
        }
    };
    r.push("pairs", pairs as f64);
    r.push("dimension", ops.dim() as f64);

    let before = verify_ring(&ops, RING_TOL);
    check(&mut r, "ring_deviation", before.max_deviation, RING_TOL);
    let c = bogoliubov_transform(&ops, &alphas)?;
    let after = verify_ring(&c, RING_TOL);
    check(
        &mut r,
        "ring_deviation_transformed",
        after.max_deviation,
        RING_TOL,
    );

    let u = exp_iq(&ops, &alphas)?;
    let u_adj = u.adjoint();
    let conj = ops
        .annihilators()
        .iter()
        .zip(c.annihilators())
        .map(|(a, ci)| max_abs(&(mul(&mul(&u, a), &u_adj) - ci)))
        .fold(0.0, f64::max);
    check(&mut r, "conjugation_deviation", conj, CONJUGATION_TOL);

    let closed = vacuum_overlap(&alphas);
    r.push("vacuum_overlap", closed);
    check(
        &mut r,
        "vacuum_overlap_deviation",
        (u[(0, 0)].re - closed).abs().max(u[(0, 0)].im.abs()),
        OVERLAP_TOL,
    );

    if pairs <= FOCK_EIGEN_MAX_PAIRS {
        let params = PairingParams {
            xi: (0..pairs)
                .map(|p| -1.0 + (2 * p + 1) as f64 / pairs as f64)
                .collect(),
            delta: 0.3,
            mask: vec![true; pairs],
            v_over_g: 1.0,
        };
        let h = build_h02(&ops, &params)?;
        let spectrum = hermitian_spectrum(&h)
            .iter()
            .zip(params.closed_form_spectrum())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        check(&mut r, "spectrum_deviation", spectrum, SPECTRUM_TOL);

        let beta = 2.0;
        let mut thermal: f64 = 0.0;
        for p in 0..pairs {
            let e = params.quasiparticle_energy(p);
            let expected = params.delta / (2.0 * e) * (beta * e / 2.0).tanh();
            let got = thermal_anomalous_average(&h, &ops, beta, p)?;
            thermal = thermal.max((got.re - expected).abs()).max(got.im.abs());
        }
        check(&mut r, "thermal_average_deviation", thermal, THERMAL_TOL);
    } else {
        eprintln!("note: spectrum and thermal checks skipped above {FOCK_EIGEN_MAX_PAIRS} pairs");
    }

    if failures.is_empty() {
        Ok(Output::Report(r))
    } else {
        Err(CliError::Check {
            report: r,
            failures,
        })
    }
}

pub fn nu_count_cmd(cfg: &RunConfig) -> Result<Output, CliError> {
    let k = cfg
        .k
        .ok_or_else(|| CliError::Usage("nu-count requires key `k`".into()))?;
    let l = cfg
        .l
        .ok_or_else(|| CliError::Usage("nu-count requires key `L`".into()))?;
    let geometry = match cfg.geometry {
        GeometryKind::Cube => ShellGeometry::Cube { l },
        GeometryKind::Film => {
            let d = cfg
                .d
                .ok_or_else(|| CliError::Usage("film geometry requires key `d`".into()))?;
            ShellGeometry::Film { d, l }
        }
        GeometryKind::Box => {
            let d = cfg
                .d
                .ok_or_else(|| CliError::Usage("box geometry requires key `d`".into()))?;
            ShellGeometry::Box {
                l1: l,
                l2: l,
                l3: d,
            }
        }
    };
    let q = cfg.q.unwrap_or_else(|| geometry.natural_q());
    let n = nu_count(k, q, geometry, cfg.lattice_budget)?;
    let lattice = n.nu_lattice.unwrap_or(0) as f64;
    let mut r = Report::default();
    r.push("k", k);
    r.push("q", q);
    r.push("nu_analytic", n.nu_analytic);
    r.push("nu_lattice", lattice);
    r.push("lattice_over_analytic", lattice / n.nu_analytic);
    match geometry {
        ShellGeometry::Cube { l } => r.push("nu_cube_closed_form", nu_cube(k, l)),
        ShellGeometry::Film { l, .. } => r.push("nu_film_closed_form", nu_film(k, l)),
        ShellGeometry::Box { .. } => {}
    }
    r.push("wide_shell", f64::from(u8::from(n.wide_shell)));
    Ok(Output::Report(r))
}
