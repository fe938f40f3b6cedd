//! Counting wave vectors in the shell k − q < |k′| < k + q, and the
//! finite-size gain of the bulk pairing kernel.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{ensure_positive, Error, Result};

/// Default cap on enumerated lattice rows and points.
pub const DEFAULT_LATTICE_BUDGET: u64 = 100_000_000;

/// Box shapes for which ν(k) has a closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShellGeometry {
    Box {
        l1: f64,
        l2: f64,
        l3: f64,
    },
    Cube {
        l: f64,
    },
    /// Square film of lateral size `l` and thickness `d`.
    Film {
        d: f64,
        l: f64,
    },
}

impl ShellGeometry {
    pub fn volume(&self) -> f64 {
        match *self {
            ShellGeometry::Box { l1, l2, l3 } => l1 * l2 * l3,
            ShellGeometry::Cube { l } => l * l * l,
            ShellGeometry::Film { d, l } => l * l * d,
        }
    }

    pub fn edges(&self) -> [f64; 3] {
        match *self {
            ShellGeometry::Box { l1, l2, l3 } => [l1, l2, l3],
            ShellGeometry::Cube { l } => [l, l, l],
            ShellGeometry::Film { d, l } => [l, l, d],
        }
    }

    /// Shell half-width used by the closed forms: √3π/L for a cube and π/d
    /// for a film. A general box uses the full confinement wave number.
    pub fn natural_q(&self) -> f64 {
        match *self {
            ShellGeometry::Cube { l } => libm::sqrt(3.0) * PI / l,
            ShellGeometry::Film { d, .. } => PI / d,
            ShellGeometry::Box { l1, l2, l3 } => {
                PI * libm::sqrt(1.0 / (l1 * l1) + 1.0 / (l2 * l2) + 1.0 / (l3 * l3))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        for e in self.edges() {
            ensure_positive("box edge", e)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuCount {
    pub k: f64,
    pub q: f64,
    pub geometry: ShellGeometry,
    pub nu_analytic: f64,
    pub nu_lattice: Option<u64>,
    /// q/k ≥ 0.01, where the thin-shell approximation degrades.
    pub wide_shell: bool,
}

/// ν = q·V·k²/π².
pub fn nu_count_analytic(k: f64, q: f64, geometry: ShellGeometry) -> Result<NuCount> {
    ensure_positive("wave number k", k)?;
    ensure_positive("shell half-width q", q)?;
    geometry.validate()?;
    Ok(NuCount {
        k,
        q,
        geometry,
        nu_analytic: q * geometry.volume() * k * k / (PI * PI),
        nu_lattice: None,
        wide_shell: q / k >= 0.01,
    })
}

/// (2√3/π)·k²L² for a cube of edge L, as usually quoted. This is twice the
/// general shell count at q = √3π/L; [`nu_count_analytic`] gives the latter.
pub fn nu_cube(k: f64, l: f64) -> f64 {
    2.0 * libm::sqrt(3.0) / PI * k * k * l * l
}

/// k²L²/π for a film of lateral size L.
pub fn nu_film(k: f64, l: f64) -> f64 {
    k * k * l * l / PI
}

/// |k′|² from its three squared components. Summing in sorted order makes
/// the result independent of axis labelling, bit for bit.
fn norm2(mut terms: [f64; 3]) -> f64 {
    terms.sort_by(f64::total_cmp);
    (terms[0] + terms[1]) + terms[2]
}

/// Largest m ≥ 0 with `pred(m)`, given `pred` is true on a prefix of ℕ.
/// Returns −1 if `pred(0)` is false.
fn last_true(estimate: f64, mut pred: impl FnMut(i64) -> bool) -> i64 {
    let mut m = if estimate.is_finite() {
        estimate.max(0.0) as i64
    } else {
        0
    };
    while m >= 0 && !pred(m) {
        m -= 1;
    }
    while pred(m + 1) {
        m += 1;
    }
    m
}

/// Exact count of integer triples with k − q < |k′| < k + q, where
/// k′ = (2π n₁/L₁, 2π n₂/L₂, 2π n₃/L₃).
pub fn nu_count_lattice(k: f64, q: f64, edges: [f64; 3], budget: u64) -> Result<u64> {
    ensure_positive("wave number k", k)?;
    ensure_positive("shell half-width q", q)?;
    for e in edges {
        ensure_positive("box edge", e)?;
    }
    let inner = (k - q).max(0.0);
    let outer = k + q;
    let lo2 = inner * inner;
    let hi2 = outer * outer;

    // Longest axis innermost: fewest rows.
    let mut axes = edges;
    axes.sort_by(f64::total_cmp);
    let c: Vec<f64> = axes
        .iter()
        .map(|l| (2.0 * PI / l) * (2.0 * PI / l))
        .collect();
    let extent = |i: usize| libm::floor(outer * axes[i] / (2.0 * PI)) as u64;
    let (n1, n2) = (extent(0), extent(1));
    let rows = (2 * n1 + 1).saturating_mul(2 * n2 + 1);
    let predicted = q * axes[0] * axes[1] * axes[2] * k * k / (PI * PI);
    if rows > budget || predicted > budget as f64 {
        let got = rows.max(predicted as u64);
        return Err(Error::Size {
            what: "lattice shell enumeration",
            got: usize::try_from(got).unwrap_or(usize::MAX),
            limit: usize::try_from(budget).unwrap_or(usize::MAX),
        });
    }

    let mut total: u64 = 0;
    let (n1, n2) = (n1 as i64, n2 as i64);
    for i in -n1..=n1 {
        let t1 = c[0] * (i * i) as f64;
        if t1 >= hi2 {
            continue;
        }
        for j in -n2..=n2 {
            let t2 = c[1] * (j * j) as f64;
            if t1 + t2 >= hi2 * (1.0 + 1e-12) {
                continue;
            }
            let at = |m: i64| norm2([t1, t2, c[2] * (m * m) as f64]);
            let m_hi = last_true(libm::sqrt(((hi2 - t1 - t2) / c[2]).max(0.0)), |m| {
                at(m) < hi2
            });
            if m_hi < 0 {
                continue;
            }
            let m_lo = last_true(libm::sqrt(((lo2 - t1 - t2) / c[2]).max(0.0)), |m| {
                at(m) <= lo2
            });
            for m in (m_lo + 1)..=m_hi {
                total += if m == 0 { 1 } else { 2 };
            }
        }
    }
    Ok(total)
}

/// Analytic and lattice counts together.
pub fn nu_count(k: f64, q: f64, geometry: ShellGeometry, budget: u64) -> Result<NuCount> {
    let mut out = nu_count_analytic(k, q, geometry)?;
    out.nu_lattice = Some(nu_count_lattice(k, q, geometry.edges(), budget)?);
    Ok(out)
}

/// One entry of the bulk chain: the kernel gain at cube edge `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseEntry {
    pub l: f64,
    /// √3·g·k²/(πL), an energy.
    pub prefactor: f64,
    /// sup over E of prefactor·tanh(βE/2)/E = prefactor·β/2.
    pub max_gain: f64,
    pub nontrivial_possible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BulkCollapseVerdict {
    pub entries: Vec<CollapseEntry>,
    /// Edge beyond which the cube kernel gain stays below one.
    pub threshold_l: f64,
    /// Prefactor ratio between consecutive chain members equals the inverse
    /// edge ratio to 1e-12.
    pub inverse_edge_scaling: bool,
    /// Film kernel gain g·k²/(2πd)·β/2, independent of lateral size.
    pub film_gain: f64,
    pub film_nontrivial: bool,
}

/// Evaluates the bulk pairing kernel along a chain of cube edges `ls`.
///
/// `g` in J·m³, `k` in m⁻¹, `thermal_energy` = k_B·T in J, `film_d` in m.
pub fn bulk_gap_collapse_check(
    g: f64,
    k: f64,
    thermal_energy: f64,
    film_d: f64,
    ls: &[f64],
) -> Result<BulkCollapseVerdict> {
    ensure_positive("coupling g", g)?;
    ensure_positive("wave number k", k)?;
    ensure_positive("thermal energy", thermal_energy)?;
    ensure_positive("film thickness", film_d)?;
    let beta = 1.0 / thermal_energy;
    let entries: Vec<CollapseEntry> = ls
        .iter()
        .map(|&l| {
            let prefactor = libm::sqrt(3.0) * g * k * k / (PI * l);
            let max_gain = prefactor * beta / 2.0;
            CollapseEntry {
                l,
                prefactor,
                max_gain,
                nontrivial_possible: max_gain >= 1.0,
            }
        })
        .collect();
    let inverse_edge_scaling = entries.windows(2).all(|w| {
        let expected = w[0].l / w[1].l;
        (w[1].prefactor / w[0].prefactor / expected - 1.0).abs() < 1e-12
    });
    let threshold_l = libm::sqrt(3.0) * g * k * k * beta / (2.0 * PI);
    let film_gain = g * k * k / (2.0 * PI * film_d) * beta / 2.0;
    Ok(BulkCollapseVerdict {
        entries,
        threshold_l,
        inverse_edge_scaling,
        film_gain,
        film_nontrivial: film_gain > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_forms_follow_from_general_formula() {
        let (k, l, d) = (1.3e10, 2e-7, 1e-9);
        let film = ShellGeometry::Film { d, l };
        let n = nu_count_analytic(k, film.natural_q(), film).unwrap();
        assert!((n.nu_analytic / nu_film(k, l) - 1.0).abs() < 1e-14);
        let cube = ShellGeometry::Cube { l };
        let n = nu_count_analytic(k, cube.natural_q(), cube).unwrap();
        assert!((nu_cube(k, l) / n.nu_analytic - 2.0).abs() < 1e-14);
        let n2 = nu_count_analytic(2.0 * k, cube.natural_q(), cube).unwrap();
        assert!((n2.nu_analytic / n.nu_analytic - 4.0).abs() < 1e-12);
    }

    #[test]
    fn empty_shell() {
        // a shell strictly between the first two lattice spheres
        let l = 2.0 * PI;
        // |n|² would have to lie in (2.25, 2.89)
        let n = nu_count_lattice(1.6, 0.1, [l, l, l], DEFAULT_LATTICE_BUDGET).unwrap();
        assert_eq!(n, 0);
    }

    #[test]
    fn first_shell_of_unit_cube() {
        let l = 2.0 * PI;
        // |n| = 1: six points
        assert_eq!(
            nu_count_lattice(1.0, 0.1, [l, l, l], DEFAULT_LATTICE_BUDGET).unwrap(),
            6
        );
        // |n|² ∈ {1, 2}: 6 + 12
        assert_eq!(
            nu_count_lattice(1.2, 0.3, [l, l, l], DEFAULT_LATTICE_BUDGET).unwrap(),
            18
        );
    }

    #[test]
    fn brute_force_agrees_on_small_box() {
        let edges = [3.1, 4.7, 5.3];
        let (k, q) = (6.0, 0.4);
        let mut brute = 0u64;
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                for c in -20i64..=20 {
                    let v = norm2([
                        (2.0 * PI * a as f64 / edges[0]).powi(2),
                        (2.0 * PI * b as f64 / edges[1]).powi(2),
                        (2.0 * PI * c as f64 / edges[2]).powi(2),
                    ]);
                    if v > (k - q) * (k - q) && v < (k + q) * (k + q) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(
            nu_count_lattice(k, q, edges, DEFAULT_LATTICE_BUDGET).unwrap(),
            brute
        );
    }

    #[test]
    fn budget_is_enforced() {
        let l = 2.0 * PI * 1000.0;
        let e = nu_count_lattice(1.0, 0.01, [l, l, l], 1000).unwrap_err();
        assert!(matches!(e, Error::Size { .. }));
    }

    #[test]
    fn cube_halving_and_threshold() {
        let (g, k, kt) = (1e-50, 1e10, 1.38e-23 * 50.0);
        let ls = [1e-8, 2e-8, 4e-8, 8e-8];
        let v = bulk_gap_collapse_check(g, k, kt, 1e-9, &ls).unwrap();
        assert!(v.inverse_edge_scaling);
        for w in v.entries.windows(2) {
            assert!((w[1].prefactor / w[0].prefactor - 0.5).abs() < 1e-12);
        }
        for e in &v.entries {
            assert_eq!(e.nontrivial_possible, e.l <= v.threshold_l);
        }
    }

    proptest! {
        #[test]
        fn permutation_invariant(
            l1 in 5.0f64..25.0, l2 in 5.0f64..25.0, l3 in 5.0f64..25.0,
            k in 2.0f64..6.0, q in 0.05f64..0.5,
        ) {
            let base = nu_count_lattice(k, q, [l1, l2, l3], DEFAULT_LATTICE_BUDGET).unwrap();
            for p in [[l2, l1, l3], [l3, l2, l1], [l1, l3, l2], [l2, l3, l1], [l3, l1, l2]] {
                prop_assert_eq!(nu_count_lattice(k, q, p, DEFAULT_LATTICE_BUDGET).unwrap(), base);
            }
        }
    }
}
