//! Film gap equation with a k-independent quasiparticle energy.
//!
//! Energies are in kelvin (k_B = 1). With T_c = G·T_F and ε₀ = 2G·T_F the
//! self-consistency condition `1 = G (2T_F/ε) tanh(ε/2T)` becomes
//! `η = tanh(η/τ)` for η = ε/ε₀ and τ = T/T_c.

use alloc::vec::Vec;

use crate::error::{ensure_positive, Error, Result};
use crate::numerics::{bisect_secant, RootConfig};

const ETA_FLOOR: f64 = 1e-12;
/// Below this distance from τ = 1 the two-term series for η² is used.
const SERIES_WINDOW: f64 = 1e-6;
/// Up to this τ, η is obtained through its deficit from one.
const DEFICIT_BRANCH: f64 = 0.25;

/// Largest non-negative root of η = tanh(η/τ). Zero for τ ≥ 1; one at τ = 0.
pub fn eta(tau: f64) -> f64 {
    if tau.is_nan() {
        return f64::NAN;
    }
    if tau <= 0.0 {
        return 1.0;
    }
    if tau >= 1.0 {
        return 0.0;
    }
    if 1.0 - tau < SERIES_WINDOW {
        return eta_series(tau);
    }
    if tau <= DEFICIT_BRANCH {
        return 1.0 - eta_deficit(tau);
    }
    eta_root(tau)
}

/// δ = 1 − η from δ = 2/(exp(2(1−δ)/τ) + 1). The map contracts with factor
/// about 2δ/τ, and iterating on δ keeps full relative precision where η
/// itself rounds to one.
fn eta_deficit(tau: f64) -> f64 {
    let mut d = 0.0;
    for _ in 0..200 {
        let next = 2.0 / (libm::exp(2.0 * (1.0 - d) / tau) + 1.0);
        if next == d {
            break;
        }
        d = next;
    }
    d
}

fn eta_root(tau: f64) -> f64 {
    let root = bisect_secant(
        |e| e - libm::tanh(e / tau),
        ETA_FLOOR,
        1.0,
        RootConfig {
            x_tol: 1e-16,
            polish_width: 1e-4,
            max_iter: 400,
        },
    );
    // f(floor) < 0 < f(1) holds analytically on (0, 1 − 1e-6)
    root.map_or_else(|_| eta_series(tau), |r| r.x)
}

/// artanh(η)/η = 1/τ  ⇒  η²/3 + η⁴/5 + … = (1−τ)/τ, solved to second order.
fn eta_series(tau: f64) -> f64 {
    let s = (1.0 - tau) / tau;
    libm::sqrt((3.0 * s - 5.4 * s * s).max(0.0))
}

/// Critical temperature T_c = G·T_F.
pub fn novel_tc(effective_coupling: f64, fermi_temperature: f64) -> f64 {
    effective_coupling * fermi_temperature
}

/// ε(T) and its derived quantities, energies in kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NovelSpectrum {
    pub temperature: f64,
    pub tc: f64,
    pub epsilon0: f64,
    pub tau: f64,
    pub eta: f64,
    pub epsilon: f64,
    /// ε(T) exceeds ħω_D/k_B; the k-window of the model is violated.
    pub exceeds_debye: bool,
}

/// Solves the film spectrum at temperature `temperature`.
///
/// `debye_temperature`, when given, is compared against ε(T) and the
/// result is flagged rather than rejected.
pub fn epsilon_of_t(
    temperature: f64,
    effective_coupling: f64,
    fermi_temperature: f64,
    debye_temperature: Option<f64>,
) -> Result<NovelSpectrum> {
    ensure_positive("effective coupling G", effective_coupling)?;
    ensure_positive("Fermi temperature", fermi_temperature)?;
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::Domain {
            what: "temperature",
            value: temperature,
        });
    }
    let tc = novel_tc(effective_coupling, fermi_temperature);
    let epsilon0 = 2.0 * effective_coupling * fermi_temperature;
    let tau = temperature / tc;
    let eta = eta(tau);
    let epsilon = epsilon0 * eta;
    let exceeds_debye = debye_temperature.is_some_and(|td| epsilon > td);
    Ok(NovelSpectrum {
        temperature,
        tc,
        epsilon0,
        tau,
        eta,
        epsilon,
        exceeds_debye,
    })
}

/// Solves `1 = G (2T_F/ε) tanh(ε/2T)` for ε directly in kelvin, without the
/// reduced variables. Used as an independent route to ε(T).
pub fn solve_spectrum_equation(
    temperature: f64,
    effective_coupling: f64,
    fermi_temperature: f64,
) -> Result<f64> {
    ensure_positive("effective coupling G", effective_coupling)?;
    ensure_positive("Fermi temperature", fermi_temperature)?;
    let e0 = 2.0 * effective_coupling * fermi_temperature;
    if temperature == 0.0 {
        return Ok(e0);
    }
    ensure_positive("temperature", temperature)?;
    if temperature >= novel_tc(effective_coupling, fermi_temperature) {
        return Ok(0.0);
    }
    let h = |e: f64| e - e0 * libm::tanh(e / (2.0 * temperature));
    let r = bisect_secant(
        h,
        e0 * ETA_FLOOR,
        e0,
        RootConfig {
            x_tol: e0 * 1e-16,
            polish_width: 1e-4,
            max_iter: 400,
        },
    )?;
    Ok(r.x)
}

/// Residual of the film self-consistency condition at a given ε.
pub fn spectrum_residual(
    epsilon: f64,
    temperature: f64,
    effective_coupling: f64,
    fermi_temperature: f64,
) -> f64 {
    let e0 = 2.0 * effective_coupling * fermi_temperature;
    if temperature == 0.0 {
        return 1.0 - e0 / epsilon;
    }
    1.0 - e0 / epsilon * libm::tanh(epsilon / (2.0 * temperature))
}

/// η(τ) tabulated on a τ-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct NovelGapSolution {
    pub effective_coupling: f64,
    pub fermi_temperature: f64,
    pub epsilon0: f64,
    pub taus: Vec<f64>,
    pub etas: Vec<f64>,
}

impl NovelGapSolution {
    pub fn tc(&self) -> f64 {
        novel_tc(self.effective_coupling, self.fermi_temperature)
    }
}

pub fn solve_novel(
    effective_coupling: f64,
    fermi_temperature: f64,
    taus: &[f64],
) -> Result<NovelGapSolution> {
    ensure_positive("effective coupling G", effective_coupling)?;
    ensure_positive("Fermi temperature", fermi_temperature)?;
    Ok(NovelGapSolution {
        effective_coupling,
        fermi_temperature,
        epsilon0: 2.0 * effective_coupling * fermi_temperature,
        taus: taus.to_vec(),
        etas: taus.iter().map(|&t| eta(t)).collect(),
    })
}

/// Anomalous average ⟨a_{−k,−}a_{k,+}⟩ for a mode at energy `xi` (kelvin).
///
/// Nonzero only inside the window |ξ| ≤ ε(T) and below T_c; Θ(0) = 1.
pub fn anomalous_average_novel(
    xi: f64,
    temperature: f64,
    effective_coupling: f64,
    fermi_temperature: f64,
) -> Result<f64> {
    let s = epsilon_of_t(temperature, effective_coupling, fermi_temperature, None)?;
    if temperature > s.tc || xi.abs() > s.epsilon {
        return Ok(0.0);
    }
    let radicand = (s.epsilon - xi) * (s.epsilon + xi);
    Ok(libm::sqrt(radicand.max(0.0)) / (4.0 * effective_coupling * fermi_temperature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eta_boundary_values() {
        assert_eq!(eta(1.0), 0.0);
        assert_eq!(eta(1.5), 0.0);
        assert_eq!(eta(0.0), 1.0);
    }

    #[test]
    fn eta_half_matches_bisection_oracle() {
        // plain bisection on [1e-9, 1]
        let (mut a, mut b) = (1e-9f64, 1.0f64);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m - (m / 0.5).tanh() < 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert!((eta(0.5) - a).abs() < 1e-12);
        assert!((eta(0.5) - 0.9575).abs() < 1e-4);
    }

    #[test]
    fn eta_near_tc() {
        let e = eta(0.99);
        assert!((e / (3.0f64 * 0.01).sqrt() - 1.0).abs() < 0.05);
    }

    #[test]
    fn eta_grid_residual_and_monotone() {
        let mut prev = 2.0;
        for i in 1..=1000 {
            let tau = i as f64 * 1e-3;
            let e = eta(tau);
            assert!((e - (e / tau).tanh()).abs() <= 1e-12, "tau={tau}");
            assert!((0.0..=1.0).contains(&e));
            // below τ ≈ 0.06 consecutive values may share the last ulp under one
            assert!(e <= prev, "tau={tau}");
            assert!(tau < 0.06 || e < prev, "tau={tau}");
            prev = e;
        }
    }

    #[test]
    fn branches_agree_at_their_seams() {
        for tau in [1.0 - 1e-6, 1.0 - 2e-6] {
            assert!((eta_series(tau) - eta_root(tau)).abs() < 1e-12, "tau={tau}");
        }
        for tau in [0.2, 0.25] {
            assert!(
                (1.0 - eta_deficit(tau) - eta_root(tau)).abs() < 1e-15,
                "tau={tau}"
            );
        }
        let tau = 1.0 - 5e-7;
        let e = eta(tau);
        assert!((e - (e / tau).tanh()).abs() <= 1e-12);
    }

    #[test]
    fn universal_ratio() {
        let s = epsilon_of_t(0.0, 0.01, 1e4, None).unwrap();
        assert!((s.epsilon0 / s.tc - 2.0).abs() < 1e-12);
        assert_eq!(s.epsilon, s.epsilon0);
    }

    #[test]
    fn low_temperature_expansion() {
        let s = epsilon_of_t(5.0, 0.01, 1e4, None).unwrap();
        let expected = 1.0 - 2.0 * (-2.0f64 / 0.05).exp();
        assert!((s.epsilon / s.epsilon0 - expected).abs() < 1e-8);
    }

    #[test]
    fn direct_route_agrees() {
        for t in [1.0, 20.0, 50.0, 80.0, 99.0, 99.9] {
            let a = epsilon_of_t(t, 0.01, 1e4, None).unwrap().epsilon;
            let b = solve_spectrum_equation(t, 0.01, 1e4).unwrap();
            assert!((a - b).abs() < 1e-9 * 200.0, "T={t}: {a} vs {b}");
            assert!(spectrum_residual(b, t, 0.01, 1e4).abs() < 1e-9);
        }
    }

    #[test]
    fn debye_flag() {
        let s = epsilon_of_t(10.0, 0.01, 1e4, Some(150.0)).unwrap();
        assert!(s.exceeds_debye);
        let s = epsilon_of_t(10.0, 0.01, 1e4, Some(500.0)).unwrap();
        assert!(!s.exceeds_debye);
    }

    #[test]
    fn rejects_nonpositive_coupling() {
        assert!(epsilon_of_t(1.0, 0.0, 1e4, None).is_err());
        assert_eq!(novel_tc(0.0, 1e4), 0.0);
        assert_eq!(novel_tc(0.01, 1e4), 100.0);
    }

    #[test]
    fn anomalous_average_cases() {
        assert_eq!(anomalous_average_novel(0.0, 0.0, 0.01, 1e4).unwrap(), 0.5);
        assert_eq!(anomalous_average_novel(250.0, 0.0, 0.01, 1e4).unwrap(), 0.0);
        assert_eq!(anomalous_average_novel(0.0, 120.0, 0.01, 1e4).unwrap(), 0.0);
    }

    #[test]
    fn closed_average_matches_mean_field_form() {
        // ⟨a a⟩ = Δ/(2E)·tanh(E/2T) with E = ε and Δ = √(ε² − ξ²)
        for t in [10.0, 50.0, 90.0] {
            let s = epsilon_of_t(t, 0.01, 1e4, None).unwrap();
            assert!(spectrum_residual(s.epsilon, t, 0.01, 1e4).abs() <= 1e-9);
            for frac in [0.0, 0.3, 0.9, 1.0] {
                let xi = frac * s.epsilon;
                let delta = (s.epsilon * s.epsilon - xi * xi).max(0.0).sqrt();
                let mean_field = delta / (2.0 * s.epsilon) * (s.epsilon / (2.0 * t)).tanh();
                let closed = anomalous_average_novel(xi, t, 0.01, 1e4).unwrap();
                assert!((closed - mean_field).abs() <= 1e-9, "T={t} xi={xi}");
            }
        }
    }

    proptest! {
        #[test]
        fn eta_residual_random(tau in 1e-4f64..0.999_999) {
            let e = eta(tau);
            prop_assert!((e - (e / tau).tanh()).abs() <= 1e-12);
        }

        #[test]
        fn eta_monotone_random(a in 1e-3f64..1.0, b in 1e-3f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(eta(lo) >= eta(hi));
        }
    }
}
