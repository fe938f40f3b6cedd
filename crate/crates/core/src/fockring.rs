//! Exact finite-dimensional realisation of P fermion pair modes.
//!
//! Mode `2p` is (k_p, +) and mode `2p+1` is (−k_p, −). Basis state `n` has
//! mode `j` occupied iff bit `j` of `n` is set, so column 0 is the vacuum.
//! Annihilators carry Jordan–Wigner signs (−1)^{Σ_{i<j} n_i}.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{bisect_secant, RootConfig};

pub type CMatrix = DMatrix<Complex64>;

pub const MAX_PAIRS: usize = 6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// (k, +)
    Plus,
    /// (−k, −)
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    pub pair: usize,
    pub branch: Branch,
}

impl ModeIndex {
    pub fn new(pair: usize, branch: Branch) -> Self {
        Self { pair, branch }
    }

    /// Position in the total mode order.
    pub fn ordinal(&self) -> usize {
        2 * self.pair + usize::from(self.branch == Branch::Minus)
    }

    pub fn from_ordinal(j: usize) -> Self {
        let branch = if j.is_multiple_of(2) {
            Branch::Plus
        } else {
            Branch::Minus
        };
        Self {
            pair: j / 2,
            branch,
        }
    }
}

/// Annihilation operators of all 2P modes as dense 4^P × 4^P matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSet {
    pairs: usize,
    a: Vec<CMatrix>,
}

impl OperatorSet {
    /// Wraps externally built annihilators; shapes are checked, the algebra
    /// is not (use [`verify_ring`]).
    pub fn from_annihilators(pairs: usize, a: Vec<CMatrix>) -> Result<Self> {
        check_pairs(pairs)?;
        let dim = 1usize << (2 * pairs);
        if a.len() != 2 * pairs {
            return Err(Error::Size {
                what: "annihilator count",
                got: a.len(),
                limit: 2 * pairs,
            });
        }
        if let Some(m) = a.iter().find(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::Size {
                what: "annihilator dimension",
                got: m.nrows(),
                limit: dim,
            });
        }
        Ok(Self { pairs, a })
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.pairs)
    }

    pub fn modes(&self) -> usize {
        2 * self.pairs
    }

    pub fn annihilator(&self, mode: ModeIndex) -> &CMatrix {
        &self.a[mode.ordinal()]
    }

    pub fn annihilators(&self) -> &[CMatrix] {
        &self.a
    }

    pub fn into_annihilators(self) -> Vec<CMatrix> {
        self.a
    }

    /// Σ a†a over all modes.
    pub fn number_operator(&self) -> CMatrix {
        let mut n = CMatrix::zeros(self.dim(), self.dim());
        for a in &self.a {
            n += mul(&a.adjoint(), a);
        }
        n
    }
}

fn check_pairs(pairs: usize) -> Result<()> {
    if (1..=MAX_PAIRS).contains(&pairs) {
        Ok(())
    } else {
        Err(Error::Size {
            what: "pair count",
            got: pairs,
            limit: MAX_PAIRS,
        })
    }
}

/// Dense product that skips structurally zero entries of `b`. The operators
/// here have at most a few nonzeros per column.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), b.ncols());
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let bkj = b[(k, j)];
            if bkj == ZERO {
                continue;
            }
            for i in 0..a.nrows() {
                let aik = a[(i, k)];
                if aik != ZERO {
                    out[(i, j)] += aik * bkj;
                }
            }
        }
    }
    out
}

/// Builds the 2P annihilators with Jordan–Wigner signs.
pub fn build_mode_operators(pairs: usize) -> Result<OperatorSet> {
    check_pairs(pairs)?;
    let modes = 2 * pairs;
    let dim = 1usize << modes;
    let a = (0..modes)
        .map(|j| {
            let mut m = CMatrix::zeros(dim, dim);
            for n in 0..dim {
                if n & (1 << j) != 0 {
                    let below = (n & ((1 << j) - 1)).count_ones();
                    let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
                    m[(n ^ (1 << j), n)] = Complex64::new(sign, 0.0);
                }
            }
            m
        })
        .collect();
    Ok(OperatorSet { pairs, a })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingReport {
    /// max ‖{a_i, a†_j} − δ_ij‖
    pub mixed: f64,
    /// max ‖{a_i, a_j}‖
    pub annihilators: f64,
    /// max ‖{a†_i, a†_j}‖
    pub creators: f64,
    pub max_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Checks the canonical anticommutation relations in Frobenius norm, which
/// bounds the operator norm from above.
pub fn verify_ring(ops: &OperatorSet, tol: f64) -> RingReport {
    let dim = ops.dim();
    let adj: Vec<CMatrix> = ops.a.iter().map(|m| m.adjoint()).collect();
    let (mut mixed, mut ann, mut cre) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..ops.modes() {
        for j in 0..ops.modes() {
            let mut m = mul(&ops.a[i], &adj[j]) + mul(&adj[j], &ops.a[i]);
            if i == j {
                for d in 0..dim {
                    m[(d, d)] -= ONE;
                }
            }
            mixed = mixed.max(m.norm());
            if j >= i {
                ann = ann.max((mul(&ops.a[i], &ops.a[j]) + mul(&ops.a[j], &ops.a[i])).norm());
                cre = cre.max((mul(&adj[i], &adj[j]) + mul(&adj[j], &adj[i])).norm());
            }
        }
    }
    let max_deviation = mixed.max(ann).max(cre);
    RingReport {
        mixed,
        annihilators: ann,
        creators: cre,
        max_deviation,
        tol,
        passed: max_deviation <= tol,
    }
}

/// Largest |entry| in the vacuum column over all annihilators.
pub fn vacuum_residual(ops: &OperatorSet) -> f64 {
    ops.a
        .iter()
        .flat_map(|m| m.column(0).iter().map(|z| z.norm()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

/// One real angle per pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaFamily {
    alpha: Vec<f64>,
}

impl AlphaFamily {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = alpha.iter().find(|a| !a.is_finite()) {
            return Err(Error::Domain {
                what: "Bogoliubov angle",
                value: bad,
            });
        }
        Ok(Self { alpha })
    }

    pub fn uniform(pairs: usize, alpha: f64) -> Result<Self> {
        Self::new(vec![alpha; pairs])
    }

    pub fn angles(&self) -> &[f64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

fn check_family(ops: &OperatorSet, alphas: &AlphaFamily) -> Result<()> {
    if alphas.len() == ops.pairs {
        Ok(())
    } else {
        Err(Error::Size {
            what: "angle count",
            got: alphas.len(),
            limit: ops.pairs,
        })
    }
}

/// c₊ = cos α·a₊ + sin α·a†₋ and c₋ = cos α·a₋ − sin α·a†₊ for every pair.
pub fn bogoliubov_transform(ops: &OperatorSet, alphas: &AlphaFamily) -> Result<OperatorSet> {
    check_family(ops, alphas)?;
    let mut c = Vec::with_capacity(ops.modes());
    for (p, &alpha) in alphas.angles().iter().enumerate() {
        let (s, co) = (libm::sin(alpha), libm::cos(alpha));
        let (plus, minus) = (&ops.a[2 * p], &ops.a[2 * p + 1]);
        c.push(plus * Complex64::new(co, 0.0) + minus.adjoint() * Complex64::new(s, 0.0));
        c.push(minus * Complex64::new(co, 0.0) - plus.adjoint() * Complex64::new(s, 0.0));
    }
    Ok(OperatorSet {
        pairs: ops.pairs,
        a: c,
    })
}

/// T_p = i(a†₊a†₋ − a₋a₊) for pair `p`.
pub fn pair_generator(ops: &OperatorSet, p: usize) -> CMatrix {
    let (plus, minus) = (&ops.a[2 * p], &ops.a[2 * p + 1]);
    let create = mul(&plus.adjoint(), &minus.adjoint());
    let destroy = mul(minus, plus);
    (create - destroy) * I
}

/// Q = Σ_p α_p T_p.
pub fn q_operator(ops: &OperatorSet, alphas: &AlphaFamily) -> Result<CMatrix> {
    check_family(ops, alphas)?;
    let mut q = CMatrix::zeros(ops.dim(), ops.dim());
    for (p, &alpha) in alphas.angles().iter().enumerate() {
        q += pair_generator(ops, p) * Complex64::new(alpha, 0.0);
    }
    Ok(q)
}

/// e^{iQ} as the product over pairs of 1 + iT sin α + T²(cos α − 1).
pub fn exp_iq(ops: &OperatorSet, alphas: &AlphaFamily) -> Result<CMatrix> {
    check_family(ops, alphas)?;
    let dim = ops.dim();
    let mut u = CMatrix::identity(dim, dim);
    for (p, &alpha) in alphas.angles().iter().enumerate() {
        let t = pair_generator(ops, p);
        let t2 = mul(&t, &t);
        let factor = CMatrix::identity(dim, dim)
            + &t * (I * libm::sin(alpha))
            + t2 * Complex64::new(libm::cos(alpha) - 1.0, 0.0);
        u = mul(&u, &factor);
    }
    Ok(u)
}

/// ⟨0|e^{iQ}|0⟩ = Π cos α_p.
pub fn vacuum_overlap(alphas: &AlphaFamily) -> f64 {
    alphas.angles().iter().map(|&a| libm::cos(a)).product()
}

/// The same overlap read off the e^{iQ} matrix.
pub fn vacuum_overlap_matrix(ops: &OperatorSet, alphas: &AlphaFamily) -> Result<Complex64> {
    Ok(exp_iq(ops, alphas)?[(0, 0)])
}

/// Mean-field pairing Hamiltonian on the pair modes.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingParams {
    /// ξ per pair, shared by both branches.
    pub xi: Vec<f64>,
    pub delta: f64,
    /// Pairs inside the Debye window take part in pairing.
    pub mask: Vec<bool>,
    /// V/g
    pub v_over_g: f64,
}

impl PairingParams {
    fn check(&self, pairs: usize) -> Result<()> {
        if self.xi.len() != pairs {
            return Err(Error::Size {
                what: "xi count",
                got: self.xi.len(),
                limit: pairs,
            });
        }
        if self.mask.len() != pairs {
            return Err(Error::Size {
                what: "mask length",
                got: self.mask.len(),
                limit: pairs,
            });
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(Error::Domain {
                what: "Delta",
                value: self.delta,
            });
        }
        if let Some(&bad) = self.xi.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain {
                what: "xi",
                value: bad,
            });
        }
        Ok(())
    }

    /// Quasiparticle energy of pair `p`: √(ξ² + Δ²) inside the window, ξ outside.
    pub fn quasiparticle_energy(&self, p: usize) -> f64 {
        if self.mask[p] {
            libm::sqrt(self.xi[p] * self.xi[p] + self.delta * self.delta)
        } else {
            self.xi[p]
        }
    }

    /// Ground-state c-number: (V/g)Δ² + Σ_window (ξ − E).
    pub fn c_number(&self) -> f64 {
        let mut c = self.v_over_g * self.delta * self.delta;
        for p in 0..self.xi.len() {
            if self.mask[p] {
                c += self.xi[p] - self.quasiparticle_energy(p);
            }
        }
        c
    }

    /// Every eigenvalue as c-number plus a sum of occupied quasiparticle
    /// energies, sorted ascending.
    pub fn closed_form_spectrum(&self) -> Vec<f64> {
        let mut levels = vec![self.c_number()];
        for p in 0..self.xi.len() {
            let e = self.quasiparticle_energy(p);
            levels = levels
                .iter()
                .flat_map(|&l| [l, l + e, l + e, l + 2.0 * e])
                .collect();
        }
        levels.sort_by(f64::total_cmp);
        levels
    }
}

/// (V/g)Δ² + Σ ξ a†a − Σ_window Δ(a†₊a†₋ + a₋a₊).
pub fn build_h02(ops: &OperatorSet, params: &PairingParams) -> Result<CMatrix> {
    params.check(ops.pairs)?;
    let dim = ops.dim();
    let mut h = CMatrix::identity(dim, dim)
        * Complex64::new(params.v_over_g * params.delta * params.delta, 0.0);
    for p in 0..ops.pairs {
        let xi = Complex64::new(params.xi[p], 0.0);
        for j in [2 * p, 2 * p + 1] {
            h += mul(&ops.a[j].adjoint(), &ops.a[j]) * xi;
        }
        if params.mask[p] {
            let (plus, minus) = (&ops.a[2 * p], &ops.a[2 * p + 1]);
            let pair = mul(&plus.adjoint(), &minus.adjoint()) + mul(minus, plus);
            h -= pair * Complex64::new(params.delta, 0.0);
        }
    }
    Ok(h)
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_spectrum(h: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Tr(a₋a₊ e^{−βh})/Tr(e^{−βh}) for pair `pair`, by eigendecomposition.
pub fn thermal_anomalous_average(
    h: &CMatrix,
    ops: &OperatorSet,
    beta: f64,
    pair: usize,
) -> Result<Complex64> {
    if pair >= ops.pairs {
        return Err(Error::Size {
            what: "pair index",
            got: pair,
            limit: ops.pairs - 1,
        });
    }
    if beta.is_nan() || beta <= 0.0 {
        return Err(Error::Domain {
            what: "beta",
            value: beta,
        });
    }
    if !beta.is_finite() {
        return Err(Error::Overflow {
            what: "thermal_anomalous_average",
        });
    }
    let eig = h.clone().symmetric_eigen();
    let lowest = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    // shifting by the ground energy keeps every weight in (0, 1]
    let mut weights = Vec::with_capacity(eig.eigenvalues.len());
    for &e in eig.eigenvalues.iter() {
        let x = beta * (e - lowest);
        if !x.is_finite() {
            return Err(Error::Overflow {
                what: "thermal_anomalous_average",
            });
        }
        weights.push(libm::exp(-x));
    }
    let z: f64 = weights.iter().sum();
    if !(z.is_finite() && z >= 1.0) {
        return Err(Error::Overflow {
            what: "thermal_anomalous_average",
        });
    }
    let op = mul(&ops.a[2 * pair + 1], &ops.a[2 * pair]);
    let u = &eig.eigenvectors;
    let ou = mul(&op, u);
    let mut acc = ZERO;
    for (k, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let diag: Complex64 = u
            .column(k)
            .iter()
            .zip(ou.column(k).iter())
            .map(|(x, y)| x.conj() * y)
            .sum();
        acc += diag * w;
    }
    Ok(acc / z)
}

/// Self-consistent Δ from Δ = (g/V) Σ_window ⟨a₋a₊⟩ evaluated by exact
/// traces, as a bracketed root on (0, `upper`]. Zero when only the trivial
/// solution exists.
pub fn self_consistent_gap(
    ops: &OperatorSet,
    params: &PairingParams,
    g_over_v: f64,
    beta: f64,
    upper: f64,
) -> Result<f64> {
    let mut failure = None;
    let mut residual = |d: f64| {
        let p = PairingParams {
            delta: d,
            ..params.clone()
        };
        let run = || -> Result<f64> {
            let h = build_h02(ops, &p)?;
            let mut sum = 0.0;
            for k in 0..ops.pairs {
                if p.mask[k] {
                    sum += thermal_anomalous_average(&h, ops, beta, k)?.re;
                }
            }
            Ok(g_over_v * sum / d - 1.0)
        };
        run().unwrap_or_else(|e| {
            failure.get_or_insert(e);
            0.0
        })
    };
    const FLOOR: f64 = 1e-9;
    if residual(FLOOR) <= 0.0 {
        return failure.map_or(Ok(0.0), Err);
    }
    let cfg = RootConfig {
        x_tol: 1e-14,
        ..Default::default()
    };
    let root = bisect_secant(&mut residual, FLOOR, upper, cfg);
    match failure {
        Some(e) => Err(e),
        None => Ok(root?.x),
    }
}
