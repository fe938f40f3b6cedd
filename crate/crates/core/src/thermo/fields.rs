//! φ(η), condensation free energy and critical magnetic fields.

use core::f64::consts::PI;

use crate::consts::{CM3_PER_M3, ERG_PER_J, EULER_GAMMA, G_PER_KG, HBAR, K_B};
use crate::error::{ensure_positive, Error, Result};
use crate::gap::eta;
use crate::gap::standard::{bcs_gap_at, bcs_tc, linearized_gap_integral};
use crate::numerics::{integrate, integrate_pieces, QuadConfig};

/// Beyond u = 40 the weight sech²u is below 1e-34 and the tail is dropped.
const PHI_U_MAX: f64 = 40.0;

const PHI_QUAD: QuadConfig = QuadConfig {
    abs_tol: 0.0,
    rel_tol: 1e-14,
    max_intervals: 4000,
};

/// φ(η) = ∫₀^η ln³((1+x)/(1−x)) dx, evaluated as 8∫₀^{artanh η} u³ sech²u du.
pub fn phi(eta_val: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eta_val) {
        return Err(Error::Domain {
            what: "phi argument",
            value: eta_val,
        });
    }
    if eta_val == 0.0 {
        return Ok(0.0);
    }
    let upper = libm::atanh(eta_val).min(PHI_U_MAX);
    let weight = |u: f64| {
        let c = libm::cosh(u);
        u * u * u / (c * c)
    };
    // the weight peaks near u ≈ 1.6 and decays like e^{−2u}
    let mut points = [0.0, 0.0, 0.0, 0.0];
    let mut n = 1;
    for b in [2.0, 8.0] {
        if upper > b {
            points[n] = b;
            n += 1;
        }
    }
    points[n] = upper;
    Ok(8.0 * integrate_pieces(weight, &points[..=n], PHI_QUAD)?.value)
}

/// Reduced condensation energy f(τ) = η⁴ − ½τ³φ(η); zero for τ ≥ 1.
pub fn condensation_radicand(tau: f64) -> Result<f64> {
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau,
        });
    }
    if tau >= 1.0 {
        return Ok(0.0);
    }
    let e = eta(tau);
    let e2 = e * e;
    Ok(e2 * e2 - 0.5 * tau * tau * tau * phi(e)?)
}

/// H_c(T)/H_c(0) for the film phase.
pub fn hc_ratio_novel(tau: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau,
        });
    }
    let f = condensation_radicand(tau)?;
    if f < -1e-9 {
        return Err(Error::Consistency {
            what: "negative critical-field radicand",
            value: f,
        });
    }
    Ok(libm::sqrt(f.max(0.0)))
}

/// Both closed forms of the film H_c(0) in gauss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldZero {
    /// 2π²(g/6π)^{1/2}·N(0)·k_B·T_c
    pub via_density_of_states: f64,
    /// (g ε_F/3π)^{1/2}(m/ħ²)^{3/2}·k_B·T_c
    pub via_fermi_energy: f64,
}

/// Film critical field at T = 0 in gauss. SI inputs: `g` in J·m³, `epsilon_f`
/// in J, `m` in kg, `n0` in J⁻¹m⁻³, `tc` in K.
pub fn hc0_novel(g: f64, epsilon_f: f64, m: f64, n0: f64, tc: f64) -> Result<FieldZero> {
    ensure_positive("coupling g", g)?;
    ensure_positive("Fermi energy", epsilon_f)?;
    ensure_positive("mass", m)?;
    ensure_positive("density of states", n0)?;
    ensure_positive("critical temperature", tc)?;
    let g_cgs = g * ERG_PER_J * CM3_PER_M3;
    let ef = epsilon_f * ERG_PER_J;
    let m_cgs = m * G_PER_KG;
    let hbar = HBAR * ERG_PER_J;
    let n0_cgs = n0 / (ERG_PER_J * CM3_PER_M3);
    let kt = K_B * ERG_PER_J * tc;

    let a = 2.0 * PI * PI * libm::sqrt(g_cgs / (6.0 * PI)) * n0_cgs * kt;
    let mh = m_cgs / (hbar * hbar);
    let b = libm::sqrt(g_cgs * ef / (3.0 * PI)) * mh * libm::sqrt(mh) * kt;
    let rel = (a - b).abs() / a;
    if rel > 1e-8 {
        return Err(Error::Consistency {
            what: "H_c(0) closed forms disagree (units)",
            value: rel,
        });
    }
    Ok(FieldZero {
        via_density_of_states: a,
        via_fermi_energy: b,
    })
}

/// Standard-phase H′_c(0) = πe^{−γ}(4πN(0))^{1/2}·k_B·T′_c in gauss.
pub fn hc0_standard(n0: f64, tc_prime: f64) -> Result<f64> {
    ensure_positive("density of states", n0)?;
    ensure_positive("critical temperature", tc_prime)?;
    let n0_cgs = n0 / (ERG_PER_J * CM3_PER_M3);
    Ok(PI * libm::exp(-EULER_GAMMA) * libm::sqrt(4.0 * PI * n0_cgs) * K_B * ERG_PER_J * tc_prime)
}

/// H_c(0)/H′_c(0) = e^γ (T_c/T′_c) √(gN(0)/6).
pub fn hc0_ratio(tc: f64, tc_prime: f64, g_n0: f64) -> f64 {
    libm::exp(EULER_GAMMA) * tc / tc_prime * libm::sqrt(g_n0 / 6.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StandardFieldMode {
    /// 1 − τ′²
    TwoFluid,
    /// H′²(T) ∝ ∫₀^g Δ²(g′) dg′/g′², from the standard gap solver.
    CouplingIntegral { g_n0: f64, debye_temperature: f64 },
}

/// ∫ Δ²(w) dw over w = 1/(g′N(0)) from 1/gN(0) to the coupling at which
/// T is critical, with Δ in units of ħω_D and t = T/T_D.
pub fn coupling_field_integral(t: f64, g_n0: f64) -> Result<f64> {
    let w0 = 1.0 / g_n0;
    if t == 0.0 {
        // Δ = 1/sinh w  ⇒  ∫ sinh⁻²w dw = coth w0 − 1
        return Ok(libm::exp(-w0) / libm::sinh(w0));
    }
    let w_c = linearized_gap_integral(t)?;
    if w_c <= w0 {
        return Ok(0.0);
    }
    let mut failure = None;
    let value = integrate(
        |w| match bcs_gap_at(t, 1.0 / w, 1.0) {
            Ok(d) => d * d,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        w0,
        w_c,
        QuadConfig {
            abs_tol: 1e-18,
            rel_tol: 1e-9,
            max_intervals: 400,
        },
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(value.value),
    }
}

/// H′_c(T)/H′_c(0) for the standard phase at τ′ = T/T′_c.
pub fn hc_standard(tau_prime: f64, mode: StandardFieldMode) -> Result<f64> {
    if !(0.0..=1.0).contains(&tau_prime) {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau_prime,
        });
    }
    match mode {
        StandardFieldMode::TwoFluid => Ok(1.0 - tau_prime * tau_prime),
        StandardFieldMode::CouplingIntegral {
            g_n0,
            debye_temperature,
        } => {
            if tau_prime == 1.0 {
                return Ok(0.0);
            }
            let tc = bcs_tc(g_n0, debye_temperature)?.numeric / debye_temperature;
            let i0 = coupling_field_integral(0.0, g_n0)?;
            let it = coupling_field_integral(tau_prime * tc, g_n0)?;
            Ok(libm::sqrt(it / i0))
        }
    }
}

/// First-order interaction energy ⟨H_I⟩ in the normal representation, in
/// units of k_B·T. It does not scale with the volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalInteraction {
    /// ⟨H_I⟩/(k_B T) = −gN(0)·(ln[(1+t)/(1−t)] − t), t = tanh(ħω_D/2k_BT).
    pub value_over_kt: f64,
    pub volume_independent: bool,
}

pub fn hi_average_rep1(
    temperature: f64,
    g_n0: f64,
    debye_temperature: f64,
) -> Result<NormalInteraction> {
    ensure_positive("temperature", temperature)?;
    ensure_positive("debye temperature", debye_temperature)?;
    let u = debye_temperature / (2.0 * temperature);
    // ln[(1+tanh u)/(1−tanh u)] = 2u exactly
    let bracket = 2.0 * u - libm::tanh(u);
    Ok(NormalInteraction {
        value_over_kt: -g_n0 * bracket,
        volume_independent: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::{EV, M_E, ZETA3};

    #[test]
    fn phi_zero_and_one() {
        assert_eq!(phi(0.0).unwrap(), 0.0);
        assert!((phi(1.0).unwrap() - 9.0 * ZETA3).abs() < 1e-10);
        assert!(phi(1.01).is_err());
        assert!(phi(-0.1).is_err());
    }

    #[test]
    fn phi_small_eta_against_riemann_sum() {
        let e = 0.05;
        let n = 200_000;
        let h = e / n as f64;
        let riemann: f64 = (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) * h;
                ((1.0 + x) / (1.0 - x)).ln().powi(3) * h
            })
            .sum();
        let p = phi(e).unwrap();
        assert!((p - riemann).abs() < 1e-12 * 1e3);
        assert!((p / (2.0 * e.powi(4)) - 1.0).abs() <= 0.01);
    }

    #[test]
    fn phi_mid_against_direct_integral() {
        // direct x-integral is smooth enough away from x = 1
        let direct = integrate(
            |x| ((1.0 + x) / (1.0 - x)).ln().powi(3),
            0.0,
            0.8,
            QuadConfig::default(),
        )
        .unwrap()
        .value;
        assert!((phi(0.8).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn field_ratio_limits() {
        assert_eq!(hc_ratio_novel(0.0).unwrap(), 1.0);
        assert_eq!(hc_ratio_novel(1.0).unwrap(), 0.0);
        let near = hc_ratio_novel(0.999).unwrap() / (3.0 * 0.001f64.powf(1.5));
        assert!((near - 1.0).abs() < 0.03, "{near}");
        // H_c = H_c(0)(1 − (9ζ(3)/4)τ³) at low τ
        let low = hc_ratio_novel(0.1).unwrap();
        assert!(
            (low - (1.0 - 9.0 * ZETA3 / 4.0 * 1e-3)).abs() < 1e-4,
            "{low}"
        );
    }

    #[test]
    fn radicand_matches_integrated_derivative() {
        // f(1) = 0 and f′(τ) = −(3/2)τ²φ(η(τ)), so f(τ) = (3/2)∫_τ^1 s²φ(η(s)) ds
        for tau in [0.2, 0.5, 0.9, 0.99] {
            let integral = integrate(
                |s| 1.5 * s * s * phi(eta(s)).unwrap(),
                tau,
                1.0,
                QuadConfig::with_rel_tol(1e-11),
            )
            .unwrap()
            .value;
            let f = condensation_radicand(tau).unwrap();
            assert!(
                (f - integral).abs() < 1e-10 * f.max(1e-3),
                "tau={tau}: {f} vs {integral}"
            );
        }
    }

    #[test]
    fn field_ratio_monotone_and_nonnegative_radicand() {
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let tau = i as f64 * 1e-3;
            assert!(condensation_radicand(tau).unwrap() >= 0.0, "tau={tau}");
            let r = hc_ratio_novel(tau).unwrap();
            assert!(r < prev || (i <= 1 && r == prev), "tau={tau}");
            prev = r;
        }
    }

    #[test]
    fn hc0_forms_agree_and_scale() {
        let m = M_E;
        let ef = 1.0 * EV;
        let k_f = (2.0 * m * ef).sqrt() / HBAR;
        let n0 = m * k_f / (2.0 * PI * PI * HBAR * HBAR);
        let g = 1e-49;
        let a = hc0_novel(g, ef, m, n0, 100.0).unwrap();
        assert!((a.via_density_of_states / a.via_fermi_energy - 1.0).abs() < 1e-10);
        let b = hc0_novel(4.0 * g, ef, m, n0, 100.0).unwrap();
        assert!((b.via_density_of_states / a.via_density_of_states - 2.0).abs() < 1e-12);
        assert!(matches!(
            hc0_novel(g, ef, m, 1.5 * n0, 100.0),
            Err(Error::Consistency { .. })
        ));
    }

    #[test]
    fn hc0_ratio_matches_quotient() {
        let m = M_E;
        let ef = 1.0 * EV;
        let k_f = (2.0 * m * ef).sqrt() / HBAR;
        let n0 = m * k_f / (2.0 * PI * PI * HBAR * HBAR);
        // g chosen so that gN(0) = 0.1
        let g = 0.1 / n0;
        let novel = hc0_novel(g, ef, m, n0, 100.0)
            .unwrap()
            .via_density_of_states;
        let standard = hc0_standard(n0, 20.0).unwrap();
        let r = hc0_ratio(100.0, 20.0, 0.1);
        assert!((novel / standard / r - 1.0).abs() < 1e-12);
        assert!((r - 1.1497).abs() < 1e-3);
    }

    #[test]
    fn two_fluid_endpoints() {
        assert_eq!(hc_standard(0.0, StandardFieldMode::TwoFluid).unwrap(), 1.0);
        assert_eq!(hc_standard(1.0, StandardFieldMode::TwoFluid).unwrap(), 0.0);
    }

    #[test]
    fn coupling_integral_low_temperature_curvature() {
        let mode = StandardFieldMode::CouplingIntegral {
            g_n0: 0.2,
            debye_temperature: 300.0,
        };
        let tp = 0.1;
        let r = hc_standard(tp, mode).unwrap();
        let curvature = (1.0 - r) / (tp * tp);
        let expected = (2.0 * EULER_GAMMA).exp() / 3.0;
        assert!((curvature / expected - 1.0).abs() < 0.1, "{curvature}");
        assert_eq!(hc_standard(1.0, mode).unwrap(), 0.0);
    }

    #[test]
    fn coupling_integral_zero_temperature_closed_form() {
        let g = 0.25;
        let numeric = integrate(
            |w: f64| {
                let d = 1.0 / w.sinh();
                d * d
            },
            1.0 / g,
            60.0,
            QuadConfig::default(),
        )
        .unwrap()
        .value;
        assert!((coupling_field_integral(0.0, g).unwrap() - numeric).abs() < 1e-14);
    }

    #[test]
    fn normal_interaction() {
        let v = hi_average_rep1(150.0, 0.3, 300.0).unwrap();
        assert!((v.value_over_kt + 0.3 * (2.0 - 1f64.tanh())).abs() < 1e-15);
        assert!(v.volume_independent);
        assert!(
            hi_average_rep1(1e9, 0.3, 300.0)
                .unwrap()
                .value_over_kt
                .abs()
                < 1e-6
        );
        for t in [1.0, 10.0, 100.0, 1e4] {
            assert!(hi_average_rep1(t, 0.3, 300.0).unwrap().value_over_kt < 0.0);
        }
    }

    #[test]
    fn normal_interaction_against_fermi_integral() {
        // (1/k_BT)·∫_{−ħω}^{ħω} dξ n_F(ξ)²
        let (t, td) = (80.0, 300.0);
        let q = integrate(
            |x| {
                let n = 1.0 / ((x / t).exp() + 1.0);
                n * n
            },
            -td,
            td,
            QuadConfig::default(),
        )
        .unwrap()
        .value
            / t;
        let v = hi_average_rep1(t, 1.0, td).unwrap().value_over_kt;
        assert!((v + q).abs() < 1e-11);
    }
}
