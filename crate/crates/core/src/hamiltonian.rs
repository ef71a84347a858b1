//! Spin-J angular momentum, the linear and LMG Hamiltonians, and their phase
//! diagrams in the `(g₋, g₊)` plane.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::states::{invariants, p_to_lambda, BlochDiagonal, InvariantVector, ProbabilityVector};
use crate::thermal::{gibbs_state, Spectrum};

/// A spin quantum number stored as `2J` so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice: 1 };
    pub const ONE: Spin = Spin { twice: 2 };
    pub const THREE_HALVES: Spin = Spin { twice: 3 };

    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice == 0 {
            return Err(Error::UnsupportedSpin(0.0));
        }
        Ok(Self { twice })
    }

    /// Accepts `J` when `2J` is a positive integer.
    pub fn new(j: f64) -> Result<Self> {
        let t = 2.0 * j;
        if !t.is_finite() || t < 1.0 || t.fract() != 0.0 || t > u32::MAX as f64 {
            return Err(Error::UnsupportedSpin(j));
        }
        Ok(Self { twice: t as u32 })
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    /// Number of levels, `2J + 1`.
    pub fn dimension(self) -> usize {
        self.twice as usize + 1
    }

    /// Magnetic numbers `M = J, J-1, …, -J`.
    pub fn magnetic_numbers(self) -> Vec<f64> {
        (0..=self.twice).map(|k| (self.twice as f64 - 2.0 * k as f64) / 2.0).collect()
    }
}

/// `Jx, Jy, Jz` in the `|J, M⟩` basis ordered `M = J … -J`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularMomentum {
    pub spin: Spin,
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
}

impl AngularMomentum {
    pub fn casimir(&self) -> CMatrix {
        &self.jx * &self.jx + &self.jy * &self.jy + &self.jz * &self.jz
    }

    /// `n̂·J⃗` for the direction with polar angle `theta` and azimuth `phi`.
    pub fn along(&self, theta: f64, phi: f64) -> CMatrix {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let c = |x: f64| Complex64::new(x, 0.0);
        &self.jx * c(st * cp) + &self.jy * c(st * sp) + &self.jz * c(ct)
    }
}

pub fn angular_momentum(spin: Spin) -> AngularMomentum {
    let d = spin.dimension();
    let j = spin.value();
    let m = spin.magnetic_numbers();
    // ⟨M+1|J₊|M⟩ = √(J(J+1) - M(M+1)); row a holds M = m[a]
    let mut jp = DMatrix::<f64>::zeros(d, d);
    for a in 1..d {
        let mm = m[a];
        jp[(a - 1, a)] = (j * (j + 1.0) - mm * (mm + 1.0)).sqrt();
    }
    let jm = jp.transpose();
    let jx = ((&jp + &jm) * 0.5).map(|x| Complex64::new(x, 0.0));
    // Jy = (J₊ - J₋)/2i
    let jy = ((&jp - &jm) * 0.5).map(|x| Complex64::new(0.0, -x));
    let jz = CMatrix::from_fn(d, d, |r, c| if r == c { Complex64::new(m[r], 0.0) } else { Complex64::new(0.0, 0.0) });
    AngularMomentum { spin, jx, jy, jz }
}

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("ω must be positive and finite, got {omega}")));
    }
    Ok(())
}

/// `E_M = ωM`, ascending.
pub fn linear_spectrum(spin: Spin, omega: f64) -> Result<Spectrum> {
    check_omega(omega)?;
    let mut e: Vec<f64> = spin.magnetic_numbers().into_iter().map(|m| omega * m).collect();
    e.reverse();
    Spectrum::new(e)
}

/// `ω n̂·J⃗`.
pub fn linear_hamiltonian(spin: Spin, omega: f64, theta: f64, phi: f64) -> Result<CMatrix> {
    check_omega(omega)?;
    Ok(angular_momentum(spin).along(theta, phi) * Complex64::new(omega, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LMGParams {
    pub omega: f64,
    pub gx: f64,
    pub gy: f64,
}

impl LMGParams {
    pub fn new(omega: f64, gx: f64, gy: f64) -> Result<Self> {
        check_omega(omega)?;
        if !(gx.is_finite() && gy.is_finite()) {
            return Err(Error::domain("couplings must be finite"));
        }
        Ok(Self { omega, gx, gy })
    }

    pub fn from_pm(omega: f64, g_minus: f64, g_plus: f64) -> Result<Self> {
        Self::new(omega, 0.5 * (g_plus + g_minus), 0.5 * (g_plus - g_minus))
    }

    pub fn g_plus(&self) -> f64 {
        self.gx + self.gy
    }

    pub fn g_minus(&self) -> f64 {
        self.gx - self.gy
    }
}

/// `H = 2ω(Jz + g_x Jx² + g_y Jy²)`.
pub fn lmg_hamiltonian(spin: Spin, params: &LMGParams) -> CMatrix {
    let am = angular_momentum(spin);
    let c = |x: f64| Complex64::new(x, 0.0);
    let jx2 = &am.jx * &am.jx;
    let jy2 = &am.jy * &am.jy;
    (&am.jz + jx2 * c(params.gx) + jy2 * c(params.gy)) * c(2.0 * params.omega)
}

/// Closed-form levels `E₁..E_n` in their conventional labelling, for J ∈ {1, 3/2}.
pub fn lmg_levels(spin: Spin, params: &LMGParams) -> Result<Vec<f64>> {
    let (w, gp, gm) = (params.omega, params.g_plus(), params.g_minus());
    match spin.twice {
        2 => {
            let r = (4.0 + gm * gm).sqrt();
            Ok(vec![2.0 * w * gp, w * (gp - r), w * (gp + r)])
        }
        3 => {
            let a = (3.0 * gm * gm + (gp - 2.0).powi(2)).sqrt();
            let b = (3.0 * gm * gm + (gp + 2.0).powi(2)).sqrt();
            let h = 0.5 * w;
            Ok(vec![
                h * (5.0 * gp + 2.0 - 2.0 * a),
                h * (5.0 * gp - 2.0 - 2.0 * b),
                h * (5.0 * gp - 2.0 + 2.0 * b),
                h * (5.0 * gp + 2.0 + 2.0 * a),
            ])
        }
        _ => Err(Error::UnsupportedSpin(spin.value())),
    }
}

/// Spectrum by Jacobi diagonalisation of [`lmg_hamiltonian`].
pub fn lmg_spectrum_numeric(spin: Spin, params: &LMGParams) -> Result<Spectrum> {
    Spectrum::new(hermitian_eigenvalues(&lmg_hamiltonian(spin, params))?)
}

/// Closed forms (labelled) for J ∈ {1, 3/2}; numeric for any other spin.
pub fn lmg_spectrum(spin: Spin, params: &LMGParams) -> Result<Spectrum> {
    match lmg_levels(spin, params) {
        Ok(levels) => Spectrum::from_levels(&levels),
        Err(Error::UnsupportedSpin(_)) => lmg_spectrum_numeric(spin, params),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Ground,
    Excited,
}

impl Branch {
    /// Level labels (0-based) that cross on this separatrix.
    pub fn crossing_pair(self, spin: Spin) -> Result<(usize, usize)> {
        match (spin.twice, self) {
            (2, Branch::Ground) | (3, Branch::Ground) => Ok((0, 1)),
            (2, Branch::Excited) => Ok((0, 2)),
            (3, Branch::Excited) => Ok((2, 3)),
            _ => Err(Error::UnsupportedSpin(spin.value())),
        }
    }
}

/// `g₊` on the separatrix for the given `g₋`.
pub fn separatrix(spin: Spin, branch: Branch, g_minus: f64) -> Result<f64> {
    let c = match spin.twice {
        2 => 4.0,
        3 => 1.0,
        _ => return Err(Error::UnsupportedSpin(spin.value())),
    };
    let r = (c + g_minus * g_minus).sqrt();
    Ok(match branch {
        Branch::Ground => -r,
        Branch::Excited => r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RegionId {
    I,
    II,
    III,
}

impl std::fmt::Display for RegionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegionId::I => "I",
            RegionId::II => "II",
            RegionId::III => "III",
        })
    }
}

/// A region of the phase diagram with its level ranking (0-based labels).
///
/// `energy_order[0]` is the ground level. Thermal occupations follow the same
/// ranking from largest to smallest, so `probability_order == energy_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseRegion {
    pub region: RegionId,
    pub energy_order: Vec<usize>,
    pub probability_order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RegionClass {
    Interior(PhaseRegion),
    /// Two levels coincide. `branch` is set when the point lies on a separatrix;
    /// it is `None` for isolated degeneracies such as `E₁ = E₄` at `(0, 2)`.
    Boundary {
        region: Option<RegionId>,
        branch: Option<Branch>,
        pair: (usize, usize),
    },
}

impl RegionClass {
    pub fn region(&self) -> Option<RegionId> {
        match self {
            RegionClass::Interior(r) => Some(r.region),
            RegionClass::Boundary { region, .. } => *region,
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, RegionClass::Boundary { .. })
    }
}

/// Which side of the separatrices `(g₋, g₊)` falls on, ignoring degeneracies.
pub fn region_of(spin: Spin, params: &LMGParams) -> Result<RegionId> {
    let gm = params.g_minus();
    let gp = params.g_plus();
    let lo = separatrix(spin, Branch::Ground, gm)?;
    let hi = separatrix(spin, Branch::Excited, gm)?;
    Ok(if gp < lo {
        RegionId::I
    } else if gp <= hi {
        RegionId::II
    } else {
        RegionId::III
    })
}

/// Locates a point of the J ∈ {1, 3/2} phase diagram.
///
/// Points where two levels agree within `tol · max(1, max|E|/ω)·ω` are
/// reported as boundaries carrying the degenerate pair.
pub fn classify_region(spin: Spin, params: &LMGParams, tol: f64) -> Result<RegionClass> {
    let levels = lmg_levels(spin, params)?;
    let spec = Spectrum::from_levels(&levels)?;
    let order = spec.labels().to_vec();
    let scale = params.omega * levels.iter().fold(1.0_f64, |m, e| m.max(e.abs() / params.omega));
    let region = region_of(spin, params)?;

    let gm = params.g_minus();
    let on_branch = |b: Branch| -> Result<bool> {
        let s = separatrix(spin, b, gm)?;
        Ok((params.g_plus() - s).abs() <= tol * s.abs().max(1.0))
    };
    for branch in [Branch::Ground, Branch::Excited] {
        if on_branch(branch)? {
            return Ok(RegionClass::Boundary { region: None, branch: Some(branch), pair: branch.crossing_pair(spin)? });
        }
    }
    for w in order.windows(2) {
        if (levels[w[1]] - levels[w[0]]).abs() <= tol * scale {
            let pair = (w[0].min(w[1]), w[0].max(w[1]));
            return Ok(RegionClass::Boundary { region: Some(region), branch: None, pair });
        }
    }
    Ok(RegionClass::Interior(PhaseRegion { region, probability_order: order.clone(), energy_order: order }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridAxes {
    /// First axis `g₋`, second axis `g₊`.
    MinusPlus,
    /// First axis `g_x`, second axis `g_y`.
    XY,
}

/// A rectangular coupling grid, traversed with the first axis outermost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamGrid {
    pub axes: GridAxes,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl ParamGrid {
    pub fn len(&self) -> usize {
        self.first.len() * self.second.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn params(&self, omega: f64) -> Result<Vec<LMGParams>> {
        let mut out = Vec::with_capacity(self.len());
        for &a in &self.first {
            for &b in &self.second {
                out.push(match self.axes {
                    GridAxes::MinusPlus => LMGParams::from_pm(omega, a, b)?,
                    GridAxes::XY => LMGParams::new(omega, a, b)?,
                });
            }
        }
        Ok(out)
    }
}

/// A thermal state of the LMG model at one grid point. `p` is in level-label
/// order so each region lands in its own simplex sector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub params: LMGParams,
    pub p: ProbabilityVector,
    pub lambda: BlochDiagonal,
    pub t: InvariantVector,
    /// `None` for spins without an analytic phase diagram.
    pub region: Option<RegionClass>,
}

pub fn sweep_point(spin: Spin, params: LMGParams, beta: f64, tol: f64) -> Result<SweepPoint> {
    let spec = lmg_spectrum(spin, &params)?;
    let state = gibbs_state(&spec, beta)?;
    let p = ProbabilityVector::new(spec.to_label_order(state.p.as_slice()))?;
    let region = match classify_region(spin, &params, tol) {
        Ok(r) => Some(r),
        Err(Error::UnsupportedSpin(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SweepPoint { params, lambda: p_to_lambda(&p), t: invariants(&p), p, region })
}

/// Maps every grid point to its thermal state; output follows grid order.
pub fn phase_sweep(spin: Spin, grid: &ParamGrid, beta: f64, omega: f64, tol: f64) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::domain("parameter grid is empty"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!("β must be non-negative and finite, got {beta}")));
    }
    let params = grid.params(omega)?;
    params.into_par_iter().map(|pr| sweep_point(spin, pr, beta, tol)).collect()
}
