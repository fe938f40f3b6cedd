//! Standard BCS gap equation with a constant density of states.
//!
//! In units of ħω_D the gap equation reads
//! `1 = gN(0) ∫₀¹ dx tanh(√(x²+δ²)/2t) / √(x²+δ²)` with t = T/T_D.
//! Substituting x = δ·sinh s turns the integrand into `tanh(δ cosh s / 2t)`,
//! bounded by one on `[0, asinh(1/δ)]`.

use alloc::vec::Vec;

use crate::consts::BCS_TC_PREFACTOR;
use crate::error::{ensure_positive, Error, Result};
use crate::numerics::{bisect_secant, integrate, QuadConfig, RootConfig};

/// Smallest gap (units of ħω_D) distinguished from the trivial root.
pub const GAP_FLOOR: f64 = 1e-12;

const QUAD: QuadConfig = QuadConfig {
    abs_tol: 1e-15,
    rel_tol: 1e-12,
    max_intervals: 4000,
};

fn gap_integral(delta: f64, t: f64) -> Result<f64> {
    let upper = libm::asinh(1.0 / delta);
    if t == 0.0 {
        return Ok(upper);
    }
    let scale = delta / (2.0 * t);
    Ok(integrate(|s| libm::tanh(scale * libm::cosh(s)), 0.0, upper, QUAD)?.value)
}

fn check_coupling(g_n0: f64, max: f64) -> Result<()> {
    if g_n0 > 0.0 && g_n0 <= max {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "gN(0)",
            value: g_n0,
        })
    }
}

/// Gap Δ(T) in units of ħω_D; zero when only the trivial root exists.
pub fn bcs_gap_at(temperature: f64, g_n0: f64, debye_temperature: f64) -> Result<f64> {
    check_coupling(g_n0, 1.0)?;
    ensure_positive("Debye temperature", debye_temperature)?;
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::Domain {
            what: "temperature",
            value: temperature,
        });
    }
    let t = temperature / debye_temperature;
    let residual = |delta: f64| gap_integral(delta, t).map(|i| g_n0 * i - 1.0);

    if residual(GAP_FLOOR)? <= 0.0 {
        return Ok(0.0);
    }
    let mut failure = None;
    let root = bisect_secant(
        |d| match residual(d) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        GAP_FLOOR,
        1.0,
        RootConfig {
            x_tol: 1e-16,
            polish_width: 1e-3,
            max_iter: 300,
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(root?.x)
}

/// Zero-temperature gap 1/sinh(1/gN(0)) in units of ħω_D.
pub fn bcs_gap_zero_closed_form(g_n0: f64) -> f64 {
    1.0 / libm::sinh(1.0 / g_n0)
}

/// `∫₀^{1/2t} tanh(y)/y dy`, the linearised gap integral. Equals 1/gN(0)
/// at the critical temperature t = T_c/T_D.
pub fn linearized_gap_integral(t: f64) -> Result<f64> {
    let upper = 0.5 / t;
    // tanh(40) = 1 to far below double precision; the tail is a logarithm.
    let cut = upper.min(40.0);
    let core = integrate(
        |y| {
            if y < 1e-8 {
                1.0 - y * y / 3.0
            } else {
                libm::tanh(y) / y
            }
        },
        0.0,
        cut,
        QUAD,
    )?
    .value;
    Ok(if upper > cut {
        core + libm::log(upper / cut)
    } else {
        core
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTemperature {
    /// Root of the linearised gap equation, K.
    pub numeric: f64,
    /// (2e^γ/π)·T_D·exp(−1/gN(0)), K.
    pub closed_form: f64,
}

/// Critical temperature of the standard phase, numerically and in closed form.
pub fn bcs_tc(g_n0: f64, debye_temperature: f64) -> Result<CriticalTemperature> {
    check_coupling(g_n0, 0.5)?;
    ensure_positive("Debye temperature", debye_temperature)?;
    let closed = BCS_TC_PREFACTOR * libm::exp(-1.0 / g_n0);
    if closed == 0.0 {
        return Ok(CriticalTemperature {
            numeric: 0.0,
            closed_form: 0.0,
        });
    }
    let f = |t: f64| {
        linearized_gap_integral(t)
            .map(|l| g_n0 * l - 1.0)
            .unwrap_or(f64::NAN)
    };
    let (mut lo, mut hi) = (closed / 16.0, closed * 16.0);
    for _ in 0..8 {
        if f(lo) > 0.0 && f(hi) < 0.0 {
            break;
        }
        lo /= 16.0;
        hi *= 16.0;
    }
    let root = bisect_secant(
        f,
        lo,
        hi,
        RootConfig {
            x_tol: closed * 1e-14,
            polish_width: 1e-4,
            max_iter: 400,
        },
    )?;
    Ok(CriticalTemperature {
        numeric: root.x * debye_temperature,
        closed_form: closed * debye_temperature,
    })
}

/// Δ(T) tabulated on a temperature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardGapSolution {
    pub g_n0: f64,
    pub debye_temperature: f64,
    /// (T in K, Δ in units of ħω_D)
    pub table: Vec<(f64, f64)>,
    pub tc: CriticalTemperature,
}

pub fn solve_standard(
    g_n0: f64,
    debye_temperature: f64,
    temperatures: &[f64],
) -> Result<StandardGapSolution> {
    let tc = bcs_tc(g_n0, debye_temperature)?;
    let table = temperatures
        .iter()
        .map(|&t| bcs_gap_at(t, g_n0, debye_temperature).map(|d| (t, d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(StandardGapSolution {
        g_n0,
        debye_temperature,
        table,
        tc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_temperature_matches_closed_form() {
        let d = bcs_gap_at(0.0, 0.3, 300.0).unwrap();
        let exact = 1.0 / (1.0f64 / 0.3).sinh();
        assert!((d - exact).abs() < 1e-13, "{d} vs {exact}");
        assert!((d - 0.0713).abs() < 5e-4);
    }

    #[test]
    fn above_tc_is_trivial() {
        let tc = bcs_tc(0.3, 300.0).unwrap();
        assert_eq!(bcs_gap_at(1.01 * tc.numeric, 0.3, 300.0).unwrap(), 0.0);
        assert_eq!(bcs_gap_at(5.0 * tc.numeric, 0.3, 300.0).unwrap(), 0.0);
    }

    #[test]
    fn closed_form_tc_value() {
        let tc = bcs_tc(0.3, 300.0).unwrap();
        let expected = 2.0 * crate::consts::EXP_EULER_GAMMA / core::f64::consts::PI
            * 300.0
            * (-1.0f64 / 0.3).exp();
        assert!((tc.closed_form - expected).abs() < 1e-12);
        assert!((tc.closed_form - 12.1).abs() < 0.05);
    }

    #[test]
    fn numeric_tc_tracks_closed_form() {
        for g in [0.1, 0.2, 0.3] {
            let tc = bcs_tc(g, 300.0).unwrap();
            let ratio = tc.numeric / tc.closed_form;
            assert!((0.995..=1.005).contains(&ratio), "g={g}: {ratio}");
        }
    }

    #[test]
    fn gap_to_tc_ratio() {
        for g in [0.1, 0.2, 0.3] {
            let tc = bcs_tc(g, 300.0).unwrap().numeric / 300.0;
            let d0 = bcs_gap_at(0.0, g, 300.0).unwrap();
            let ratio = 2.0 * d0 / tc;
            assert!((ratio / 3.53 - 1.0).abs() < 0.01, "g={g}: {ratio}");
        }
    }

    #[test]
    fn tc_is_nonanalytic_at_zero_coupling() {
        let gs = [0.05, 0.03, 0.02, 0.01];
        let tcs: Vec<CriticalTemperature> = gs.iter().map(|&g| bcs_tc(g, 300.0).unwrap()).collect();
        for n in 1..=5 {
            let ratios: Vec<f64> = gs
                .iter()
                .zip(&tcs)
                .map(|(g, tc)| tc.numeric / g.powi(n))
                .collect();
            assert!(ratios.windows(2).all(|w| w[1] < w[0]), "n={n}: {ratios:?}");
            assert!(*ratios.last().unwrap() < 1e-25, "n={n}");
        }
    }

    #[test]
    fn rejects_bad_coupling() {
        assert!(bcs_gap_at(1.0, 0.0, 300.0).is_err());
        assert!(bcs_gap_at(1.0, 1.5, 300.0).is_err());
        assert!(bcs_tc(0.6, 300.0).is_err());
        assert!(bcs_gap_at(-1.0, 0.3, 300.0).is_err());
    }

    #[test]
    fn gap_decreases_and_vanishes_linearly_in_square() {
        let g = 0.3;
        let tc = bcs_tc(g, 300.0).unwrap().numeric;
        let temps: Vec<f64> = (0..40).map(|i| tc * i as f64 / 40.0).collect();
        let sol = solve_standard(g, 300.0, &temps).unwrap();
        for w in sol.table.windows(2).skip(1) {
            assert!(w[1].1 < w[0].1);
        }
        // Δ² ∝ (T_c − T) close to T_c
        let d1 = bcs_gap_at(tc * (1.0 - 1e-3), g, 300.0).unwrap();
        let d2 = bcs_gap_at(tc * (1.0 - 2e-3), g, 300.0).unwrap();
        assert!(((d2 * d2) / (d1 * d1) - 2.0).abs() < 0.01);
    }
}
