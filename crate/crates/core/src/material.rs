//! Physical material parameters and the dimensionless groups derived from them.
//!
//! Everything downstream of this module works with reduced quantities
//! (gN(0), G, T/T_D, T/T_F, τ, η). SI enters and leaves only here.

use core::f64::consts::PI;

use crate::consts::{HBAR, K_B};
use crate::error::{ensure_positive, Error, Result};

/// Shape of the electron container.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// Box with edges `l1`, `l2`, `l3` (m).
    Box { l1: f64, l2: f64, l3: f64 },
    /// Film of thickness `d` (m) with unbounded lateral extent.
    Film { d: f64 },
    /// Cube of edge `l` (m). `f64::INFINITY` requests the thermodynamic limit.
    IsotropicBulk { l: f64 },
}

impl Geometry {
    fn validate(&self) -> Result<()> {
        match *self {
            Geometry::Box { l1, l2, l3 } => {
                ensure_positive("box edge L1", l1)?;
                ensure_positive("box edge L2", l2)?;
                ensure_positive("box edge L3", l3)
            }
            Geometry::Film { d } => ensure_positive("film thickness d", d),
            Geometry::IsotropicBulk { l } => {
                if l > 0.0 && !l.is_nan() {
                    Ok(())
                } else {
                    Err(Error::Domain {
                        what: "bulk edge L",
                        value: l,
                    })
                }
            }
        }
    }
}

/// Inputs of the BCS Hamiltonian in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    /// Coupling constant g, J·m³.
    pub g: f64,
    /// Electron mass, kg.
    pub m: f64,
    /// Fermi energy ε_F (= chemical potential μ), J.
    pub epsilon_f: f64,
    /// Debye angular frequency ω_D, rad/s.
    pub omega_d: f64,
    pub geometry: Geometry,
}

impl MaterialParams {
    /// Validates positivity and the weak-coupling window ħω_D < ε_F.
    pub fn new(g: f64, m: f64, epsilon_f: f64, omega_d: f64, geometry: Geometry) -> Result<Self> {
        ensure_positive("coupling g", g)?;
        ensure_positive("mass m", m)?;
        ensure_positive("Fermi energy", epsilon_f)?;
        ensure_positive("Debye frequency", omega_d)?;
        geometry.validate()?;
        if HBAR * omega_d >= epsilon_f {
            return Err(Error::Domain {
                what: "hbar*omega_D must lie below epsilon_F",
                value: HBAR * omega_d / epsilon_f,
            });
        }
        Ok(Self {
            g,
            m,
            epsilon_f,
            omega_d,
            geometry,
        })
    }

    pub fn fermi_wavenumber(&self) -> f64 {
        libm::sqrt(2.0 * self.m * self.epsilon_f) / HBAR
    }
}

/// Dimensionless groups and derived scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    /// g·N(0).
    pub g_n0: f64,
    /// T_D = ħω_D/k_B, K.
    pub debye_temperature: f64,
    /// T_F = ε_F/k_B, K.
    pub fermi_temperature: f64,
    /// Lowest confinement energy ε₁, J.
    pub epsilon1: f64,
    /// Effective film coupling G.
    pub effective_coupling: f64,
    /// Minimal confinement wave number q, 1/m.
    pub q: f64,
    /// Fermi wave number, 1/m.
    pub k_f: f64,
    /// Density of states per spin per volume at the Fermi level, 1/(J·m³).
    pub n0: f64,
    /// Set when the geometry is a bulk in the thermodynamic limit (q = 0).
    pub bulk_limit: bool,
    pub geometry: Geometry,
}

impl ReducedParams {
    /// Critical temperature of the film solution, T_c = G·T_F.
    pub fn novel_tc(&self) -> f64 {
        self.effective_coupling * self.fermi_temperature
    }

    /// Recovers the SI parameters for electron mass `m`.
    pub fn to_material(&self, m: f64) -> Result<MaterialParams> {
        MaterialParams::new(
            self.g_n0 / self.n0,
            m,
            K_B * self.fermi_temperature,
            K_B * self.debye_temperature / HBAR,
            self.geometry,
        )
    }
}

/// N(0) = m·k_F / (2π²ħ²), per spin and unit volume.
pub fn density_of_states(m: f64, k_f: f64) -> Result<f64> {
    ensure_positive("mass m", m)?;
    ensure_positive("Fermi wave number", k_f)?;
    Ok(m * k_f / (2.0 * PI * PI * HBAR * HBAR))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Confinement {
    /// |q| of the lowest box state, 1/m.
    pub q: f64,
    /// ħ²q²/2m, J.
    pub epsilon1: f64,
    /// True when q vanished because the bulk edge is infinite.
    pub bulk_limit: bool,
}

/// Lowest confinement wave number and energy of an electron of mass `m`.
///
/// A film confines only along its thickness, so q = π/d; a cube confines along
/// all three axes, so q = √3·π/L.
pub fn confinement(geometry: Geometry, m: f64) -> Result<Confinement> {
    ensure_positive("mass m", m)?;
    geometry.validate()?;
    let (q, bulk_limit) = match geometry {
        Geometry::Box { l1, l2, l3 } => {
            let q2 = (PI / l1) * (PI / l1) + (PI / l2) * (PI / l2) + (PI / l3) * (PI / l3);
            (libm::sqrt(q2), false)
        }
        Geometry::Film { d } => (PI / d, false),
        Geometry::IsotropicBulk { l } if l.is_infinite() => (0.0, true),
        Geometry::IsotropicBulk { l } => (libm::sqrt(3.0) * PI / l, false),
    };
    Ok(Confinement {
        q,
        epsilon1: HBAR * HBAR * q * q / (2.0 * m),
        bulk_limit,
    })
}

/// G = (g/4π²)(2m/ħ²)^{3/2} √ε₁.
pub fn effective_coupling(g: f64, m: f64, epsilon1: f64) -> Result<f64> {
    ensure_positive("mass m", m)?;
    if !(g >= 0.0 && g.is_finite()) {
        return Err(Error::Domain {
            what: "coupling g",
            value: g,
        });
    }
    if !(epsilon1 >= 0.0 && epsilon1.is_finite()) {
        return Err(Error::Domain {
            what: "confinement energy",
            value: epsilon1,
        });
    }
    let k_scale = 2.0 * m / (HBAR * HBAR);
    Ok(g / (4.0 * PI * PI) * k_scale * libm::sqrt(k_scale) * libm::sqrt(epsilon1))
}

/// Inverse of [`effective_coupling`]: the g that produces a given G.
pub fn coupling_for_effective(effective: f64, m: f64, epsilon1: f64) -> Result<f64> {
    ensure_positive("effective coupling", effective)?;
    ensure_positive("confinement energy", epsilon1)?;
    let unit = effective_coupling(1.0, m, epsilon1)?;
    Ok(effective / unit)
}

/// Derives every dimensionless group from `params`.
pub fn reduce(params: &MaterialParams) -> Result<ReducedParams> {
    let p = MaterialParams::new(
        params.g,
        params.m,
        params.epsilon_f,
        params.omega_d,
        params.geometry,
    )?;
    let k_f = p.fermi_wavenumber();
    let n0 = density_of_states(p.m, k_f)?;
    let conf = confinement(p.geometry, p.m)?;
    let effective = effective_coupling(p.g, p.m, conf.epsilon1)?;
    Ok(ReducedParams {
        g_n0: p.g * n0,
        debye_temperature: HBAR * p.omega_d / K_B,
        fermi_temperature: p.epsilon_f / K_B,
        epsilon1: conf.epsilon1,
        effective_coupling: effective,
        q: conf.q,
        k_f,
        n0,
        bulk_limit: conf.bulk_limit,
        geometry: p.geometry,
    })
}

/// Builds film parameters with prescribed G, T_F and gN(0).
///
/// The Debye temperature is free in the film solution; `debye_temperature`
/// only has to respect ħω_D < ε_F.
pub fn film_scenario(
    effective: f64,
    fermi_temperature: f64,
    g_n0: f64,
    debye_temperature: f64,
    m: f64,
) -> Result<MaterialParams> {
    ensure_positive("effective coupling", effective)?;
    ensure_positive("Fermi temperature", fermi_temperature)?;
    ensure_positive("gN(0)", g_n0)?;
    let epsilon_f = K_B * fermi_temperature;
    let k_f = libm::sqrt(2.0 * m * epsilon_f) / HBAR;
    let n0 = density_of_states(m, k_f)?;
    let g = g_n0 / n0;
    // G = g·m/(2πħ²d) for a film, solved for d.
    let d = g * m / (2.0 * PI * HBAR * HBAR * effective);
    MaterialParams::new(
        g,
        m,
        epsilon_f,
        K_B * debye_temperature / HBAR,
        Geometry::Film { d },
    )
}
