//! Specific-heat anomaly of the film phase and the standard reference limits.

use crate::consts::ZETA3;
use crate::error::{Error, Result};
use crate::gap::eta;
use crate::numerics::{integrate_pieces, QuadConfig};
use crate::thermo::fields::phi;

/// Above this τ the 0/0 form is replaced by its limit 9(1 − τ).
pub const NEAR_TC_SWITCH: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecificHeat {
    /// (C_s − C_n)/C_n
    pub raw: f64,
    /// raw·8/(3gN(0))
    pub r_c: f64,
    pub limit_used: bool,
}

/// Film-phase (C_s − C_n)/C_n at τ = T/T_c and its normalised form R_C.
pub fn specific_heat_ratio_novel(tau: f64, g_n0: f64) -> Result<SpecificHeat> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau,
        });
    }
    if !(g_n0 > 0.0 && g_n0.is_finite()) {
        return Err(Error::Domain {
            what: "gN(0)",
            value: g_n0,
        });
    }
    let (r_c, limit_used) = if tau > NEAR_TC_SWITCH {
        (9.0 * (1.0 - tau), true)
    } else {
        let e = eta(tau);
        let e2 = e * e;
        let denom = e2 + tau - 1.0;
        if denom <= 0.0 {
            return Err(Error::Consistency {
                what: "specific-heat denominator",
                value: denom,
            });
        }
        // 1 − η² loses digits as η → 1; (1−η)(1+η) keeps them
        let one_minus = (1.0 - e) * (1.0 + e);
        let first = 2.0 / (tau * tau) * e2 * e2 * one_minus / denom;
        (first - 0.5 * tau * phi(e)?, false)
    };
    Ok(SpecificHeat {
        raw: 3.0 / 8.0 * g_n0 * r_c,
        r_c,
        limit_used,
    })
}

/// Heat-capacity behaviour of the film phase at T_c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionReport {
    /// ΔC(T_c)/C_n
    pub jump: f64,
    /// dR_C/dτ just below τ = 1
    pub left_slope: f64,
    /// 2 for a finite heat jump, 3 for a continuous C with a slope jump.
    pub order: u8,
}

pub fn novel_transition_report(g_n0: f64) -> Result<TransitionReport> {
    let at = specific_heat_ratio_novel(1.0, g_n0)?;
    let h = 1e-4;
    let below = specific_heat_ratio_novel(1.0 - h, g_n0)?;
    let left_slope = (at.r_c - below.r_c) / h;
    let order = if at.raw.abs() <= 1e-9 && left_slope.abs() > 1e-6 {
        3
    } else {
        2
    };
    Ok(TransitionReport {
        jump: at.raw,
        left_slope,
        order,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardHeatBranch {
    NearTc,
    LowTemperature,
}

/// Limiting value of (C′_s − C_n)/C_n for the standard phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardHeat {
    pub value: f64,
    pub branch: StandardHeatBranch,
    /// Size of the neglected correction: (1 − τ′)² or e^{−1/τ′}.
    pub correction_bound: f64,
}

/// Jump 12/(7ζ(3)) at T′_c.
pub fn standard_heat_jump() -> f64 {
    12.0 / (7.0 * ZETA3)
}

/// Two-branch reference: the jump value for τ′ ≥ ½, −1 below.
pub fn specific_heat_standard(tau_prime: f64) -> Result<StandardHeat> {
    if !(tau_prime > 0.0 && tau_prime <= 1.0) {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau_prime,
        });
    }
    Ok(if tau_prime >= 0.5 {
        StandardHeat {
            value: standard_heat_jump(),
            branch: StandardHeatBranch::NearTc,
            correction_bound: (1.0 - tau_prime) * (1.0 - tau_prime),
        }
    } else {
        StandardHeat {
            value: -1.0,
            branch: StandardHeatBranch::LowTemperature,
            correction_bound: libm::exp(-1.0 / tau_prime),
        }
    })
}

/// Entropy bookkeeping for the film phase in units where R_C is the
/// integrand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropySumRule {
    pub tau: f64,
    /// ∫_τ^1 R_C dτ′, proportional to ∫_T^{T_c} (C_s − C_n) dT′/T′.
    pub heat_integral: f64,
    /// τ²φ(η(τ))/2: −(S_s − S_n)(T) from the free energy, same units.
    pub entropy_difference: f64,
}

/// Compares the integrated heat anomaly above τ with the entropy difference
/// obtained by differentiating the condensation free energy.
pub fn entropy_sum_rule(tau: f64) -> Result<EntropySumRule> {
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::Domain {
            what: "reduced temperature",
            value: tau,
        });
    }
    let lower = tau.max(1e-9);
    let mut points = [lower, 0.5, 0.9, 0.99, 1.0];
    let start = points.iter().position(|&p| p > lower).unwrap_or(4);
    points[start - 1] = lower;
    let mut failure = None;
    let integral = integrate_pieces(
        |s| match specific_heat_ratio_novel(s, 1.0) {
            Ok(h) => h.r_c,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &points[start - 1..],
        QuadConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-10,
            max_intervals: 2000,
        },
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let e = eta(tau);
    Ok(EntropySumRule {
        tau,
        heat_integral: integral.value,
        entropy_difference: 0.5 * tau * tau * phi(e)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_tc_slope() {
        let h = specific_heat_ratio_novel(0.999, 0.1).unwrap();
        assert!(!h.limit_used);
        assert!((h.r_c / (9.0 * 0.001) - 1.0).abs() <= 0.05, "{}", h.r_c);
        let r = novel_transition_report(0.1).unwrap();
        assert_eq!(r.order, 3);
        assert!(r.jump.abs() <= 1e-9);
        assert!((r.left_slope / -9.0 - 1.0).abs() < 0.05, "{}", r.left_slope);
    }

    #[test]
    fn low_temperature_limit() {
        let h = specific_heat_ratio_novel(0.05, 0.1).unwrap();
        let expected = -(9.0 * ZETA3 / 2.0) * 0.05;
        assert!((h.r_c / expected - 1.0).abs() <= 0.02);
        assert!((h.raw - 3.0 / 8.0 * 0.1 * h.r_c).abs() < 1e-16);
    }

    #[test]
    fn switchover_is_continuous() {
        let a = specific_heat_ratio_novel(NEAR_TC_SWITCH - 1e-9, 0.1).unwrap();
        let b = specific_heat_ratio_novel(NEAR_TC_SWITCH + 1e-9, 0.1).unwrap();
        assert!(!a.limit_used && b.limit_used);
        assert!((a.r_c - b.r_c).abs() < 1e-7, "{} vs {}", a.r_c, b.r_c);
    }

    #[test]
    fn domain() {
        assert!(specific_heat_ratio_novel(0.0, 0.1).is_err());
        assert!(specific_heat_ratio_novel(1.1, 0.1).is_err());
        assert!(specific_heat_ratio_novel(0.5, 0.0).is_err());
    }

    #[test]
    fn standard_limits() {
        let near = specific_heat_standard(0.999).unwrap();
        assert!((near.value - 1.4262).abs() < 1e-4);
        let low = specific_heat_standard(0.05).unwrap();
        assert!((low.value + 1.0).abs() <= (-1.0f64 / 0.05).exp());
        assert!(low.correction_bound < 3e-9);
    }

    #[test]
    fn full_range_integral_vanishes() {
        // S_s = S_n at T_c and at T = 0
        let r = entropy_sum_rule(0.0).unwrap();
        let scale = entropy_sum_rule(0.5).unwrap().heat_integral.abs();
        assert!(r.heat_integral.abs() <= 1e-3 * scale, "{}", r.heat_integral);
        assert_eq!(r.entropy_difference, 0.0);
    }

    #[test]
    fn partial_integrals_carry_a_constant_factor() {
        // the heat formula is exactly half of −T·d²F/dT² at every τ
        for tau in [0.1, 0.3, 0.6, 0.9] {
            let r = entropy_sum_rule(tau).unwrap();
            let ratio = r.heat_integral / r.entropy_difference;
            assert!((ratio - 0.5).abs() < 1e-6, "tau={tau}: {ratio}");
        }
    }
}
