//! Physical and mathematical constants (SI, CODATA 2018).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Electron mass, kg.
pub const M_E: f64 = 9.109_383_701_5e-31;
/// Electron-volt, J.
pub const EV: f64 = 1.602_176_634e-19;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// e^γ. This is the 1.781 that often gets called "Euler's constant" in
/// superconductivity texts.
pub const EXP_EULER_GAMMA: f64 = 1.781_072_417_990_198;
/// Riemann ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Weak-coupling BCS prefactor 2e^γ/π ≈ 1.134 in T_c = (2e^γ/π) T_D e^{-1/gN(0)}.
pub const BCS_TC_PREFACTOR: f64 = 2.0 * EXP_EULER_GAMMA / core::f64::consts::PI;

// SI -> Gaussian (CGS) conversion factors.
pub(crate) const ERG_PER_J: f64 = 1e7;
pub(crate) const CM3_PER_M3: f64 = 1e6;
pub(crate) const G_PER_KG: f64 = 1e3;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_gamma_matches_gamma() {
        assert!((libm::exp(EULER_GAMMA) - EXP_EULER_GAMMA).abs() < 1e-15);
        assert!((BCS_TC_PREFACTOR - 1.1338).abs() < 1e-4);
    }
}
