//! Reduced free energies of the two superconducting phases, phase
//! selection, and the grand-potential consistency check.

use alloc::vec::Vec;

use crate::consts::EULER_GAMMA;
use crate::error::{ensure_positive, Error, Result};
use crate::gap::eta;
use crate::numerics::{integrate, QuadConfig};
use crate::thermo::fields::{condensation_radicand, hc0_ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Normal,
    StandardBcs,
    Novel,
}

/// Scenario shared by the free-energy routines: both critical temperatures
/// in kelvin and the standard coupling gN(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseParams {
    pub tc: f64,
    pub tc_prime: f64,
    pub g_n0: f64,
}

impl PhaseParams {
    pub fn new(tc: f64, tc_prime: f64, g_n0: f64) -> Result<Self> {
        ensure_positive("T_c", tc)?;
        ensure_positive("T_c'", tc_prime)?;
        ensure_positive("gN(0)", g_n0)?;
        Ok(Self { tc, tc_prime, g_n0 })
    }

    /// [H_c(0)/H′_c(0)]² = e^{2γ}(T_c/T′_c)²·gN(0)/6.
    pub fn field_ratio_squared(&self) -> f64 {
        let r = self.tc / self.tc_prime;
        libm::exp(2.0 * EULER_GAMMA) * r * r * self.g_n0 / 6.0
    }

    /// T_c > e^{−γ}√(6/gN(0))·T′_c
    pub fn film_condition(&self) -> bool {
        self.tc > libm::exp(-EULER_GAMMA) * libm::sqrt(6.0 / self.g_n0) * self.tc_prime
    }
}

/// Δf of the film phase at temperature `t`, in units of H′_c(0)²V/8π.
pub fn df_novel(t: f64, p: &PhaseParams) -> Result<f64> {
    let tau = t / p.tc;
    if tau >= 1.0 {
        return Ok(0.0);
    }
    Ok(-p.field_ratio_squared() * condensation_radicand(tau)?.max(0.0))
}

/// Δf′ = −(1 − τ′²)² of the standard phase.
pub fn df_standard(t: f64, p: &PhaseParams) -> f64 {
    let tp = t / p.tc_prime;
    if tp >= 1.0 {
        return 0.0;
    }
    let a = 1.0 - tp * tp;
    -a * a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEnergyPoint {
    pub t: f64,
    pub df_novel: f64,
    pub df_standard: f64,
}

pub fn free_energy_curves(temperatures: &[f64], p: &PhaseParams) -> Result<Vec<FreeEnergyPoint>> {
    temperatures
        .iter()
        .map(|&t| {
            if t.is_nan() || t < 0.0 {
                return Err(Error::Domain {
                    what: "temperature",
                    value: t,
                });
            }
            Ok(FreeEnergyPoint {
                t,
                df_novel: df_novel(t, p)?,
                df_standard: df_standard(t, p),
            })
        })
        .collect()
}

/// Tolerance below which a free-energy difference counts as zero.
pub const PHASE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseVerdict {
    pub t: f64,
    pub winner: Phase,
    pub df_novel: f64,
    pub df_standard: f64,
    /// T_c > e^{−γ}√(6/gN(0))·T′_c
    pub condition_film: bool,
    /// H_c(0)/H′_c(0); the condition holds exactly when this exceeds one.
    pub field_ratio: f64,
}

pub fn phase_select(t: f64, p: &PhaseParams) -> Result<PhaseVerdict> {
    let dn = df_novel(t, p)?;
    let ds = df_standard(t, p);
    let winner = if dn >= -PHASE_TOL && ds >= -PHASE_TOL {
        Phase::Normal
    } else if dn <= ds {
        Phase::Novel
    } else {
        Phase::StandardBcs
    };
    Ok(PhaseVerdict {
        t,
        winner,
        df_novel: dn,
        df_standard: ds,
        condition_film: p.film_condition(),
        field_ratio: hc0_ratio(p.tc, p.tc_prime, p.g_n0),
    })
}

/// Two routes to Ω_s − Ω_n for the film phase, in units ε_F = k_B = 1 and
/// with the common prefactor removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaCheck {
    pub tau: f64,
    /// ∫_T^G 16G′²η⁴(T/G′) dG′ over the coupling G′.
    pub numeric: f64,
    /// (16/3)G³[η⁴ − ½τ³φ(η)]
    pub closed_form: f64,
    pub residual: f64,
}

/// Integrates the coupling-constant form of Ω_s − Ω_n at T = τ·G_max and
/// compares it with the closed form.
pub fn omega_difference_check(tau: f64, g_max: f64) -> Result<OmegaCheck> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau,
        });
    }
    ensure_positive("G_max", g_max)?;
    let t = tau * g_max;
    // ε(G′) = 2G′η(T/G′) in units of ε_F; the integrand ε⁴/G′² carries a
    // factor 16G′²η⁴ and vanishes at G′ = T where η(1) = 0.
    let numeric = integrate(
        |gp| {
            let e = eta(t / gp);
            16.0 * gp * gp * e * e * e * e
        },
        t,
        g_max,
        QuadConfig {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_intervals: 4000,
        },
    )?
    .value;
    let closed_form = 16.0 / 3.0 * g_max * g_max * g_max * condensation_radicand(tau)?;
    let residual = (numeric - closed_form).abs() / closed_form.abs();
    Ok(OmegaCheck {
        tau,
        numeric,
        closed_form,
        residual,
    })
}

/// Reduced observables of one phase on a τ-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurve {
    pub phase: Phase,
    pub tau: Vec<f64>,
    pub eta: Vec<f64>,
    pub r_h: Vec<f64>,
    /// Empty where no heat curve is defined.
    pub r_c: Vec<f64>,
    pub delta_f: Vec<f64>,
    pub params: PhaseParams,
}

pub fn novel_curve(taus: &[f64], p: &PhaseParams) -> Result<ThermoCurve> {
    let mut out = ThermoCurve {
        phase: Phase::Novel,
        tau: taus.to_vec(),
        eta: Vec::with_capacity(taus.len()),
        r_h: Vec::with_capacity(taus.len()),
        r_c: Vec::with_capacity(taus.len()),
        delta_f: Vec::with_capacity(taus.len()),
        params: *p,
    };
    for &tau in taus {
        out.eta.push(eta(tau));
        out.r_h.push(crate::thermo::fields::hc_ratio_novel(tau)?);
        out.r_c
            .push(crate::thermo::heat::specific_heat_ratio_novel(tau, p.g_n0)?.r_c);
        out.delta_f.push(df_novel(tau * p.tc, p)?);
    }
    Ok(out)
}
