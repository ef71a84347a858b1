//! Gibbs states of finite spectra and their paths through p-, λ- and t-space.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::{invariants, p_to_lambda, BlochDiagonal, InvariantVector, ProbabilityVector};

/// Grids at least this long are evaluated on the rayon pool.
const PARALLEL_GRID_LEN: usize = 2048;

/// Energy levels in ascending order (ħ = 1).
///
/// `labels[i]` is the original (model) index of the `i`-th lowest level, so a
/// spectrum built from labelled closed forms such as `E₁..E₄` remembers which
/// level is which after sorting. Ties keep their original order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    energies: Vec<f64>,
    labels: Vec<usize>,
}

impl Spectrum {
    /// Energies that are already sorted ascending; labels are the identity.
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        Self::check_len(energies.len())?;
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::domain("energies must be finite"));
        }
        if energies.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::domain("energies must be sorted ascending"));
        }
        let labels = (0..energies.len()).collect();
        Ok(Self { energies, labels })
    }

    /// Levels in model order; sorted with a stable sort and labelled.
    pub fn from_levels(levels: &[f64]) -> Result<Self> {
        Self::check_len(levels.len())?;
        if levels.iter().any(|e| !e.is_finite()) {
            return Err(Error::domain("energies must be finite"));
        }
        let mut labels: Vec<usize> = (0..levels.len()).collect();
        labels.sort_by(|&a, &b| levels[a].total_cmp(&levels[b]));
        let energies = labels.iter().map(|&i| levels[i]).collect();
        Ok(Self { energies, labels })
    }

    fn check_len(n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// Energies in model (label) order.
    pub fn levels(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for (e, &l) in self.energies.iter().zip(&self.labels) {
            out[l] = *e;
        }
        out
    }

    /// Reorders a per-level quantity from ascending-energy order into label order.
    pub fn to_label_order(&self, sorted: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; sorted.len()];
        for (v, &l) in sorted.iter().zip(&self.labels) {
            out[l] = *v;
        }
        out
    }

    /// Number of levels within `tol · max(1, max|h|)` of the ground energy.
    pub fn ground_degeneracy(&self, tol: f64) -> usize {
        let scale = self.energies.iter().fold(1.0_f64, |m, e| m.max(e.abs()));
        let h1 = self.energies[0];
        self.energies.iter().take_while(|&&e| e - h1 <= tol * scale).count()
    }
}

/// A Gibbs state `ρ = e^{-βH}/Z` with its thermodynamic functions (k_B = 1).
///
/// The partition function is stored in the gauge shifted by the ground
/// energy: `Z = z_shifted · e^{-β·shift}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalState {
    pub beta: f64,
    /// Occupations in ascending-energy order.
    pub p: ProbabilityVector,
    pub z_shifted: f64,
    pub shift: f64,
    pub internal_energy: f64,
    pub entropy: f64,
    /// `F = -T ln Z`; undefined at β = 0.
    pub free_energy: Option<f64>,
}

impl ThermalState {
    pub fn ln_partition_function(&self) -> f64 {
        self.z_shifted.ln() - self.beta * self.shift
    }

    /// `Z` in the unshifted gauge. Overflows for large `β·|h₁|`.
    pub fn partition_function(&self) -> f64 {
        self.ln_partition_function().exp()
    }

    pub fn temperature(&self) -> Option<f64> {
        (self.beta > 0.0).then(|| 1.0 / self.beta)
    }

    /// `T·S - U + F`, zero for a maximum-entropy state.
    pub fn free_energy_residual(&self) -> Option<f64> {
        let t = self.temperature()?;
        Some(t * self.entropy - self.internal_energy + self.free_energy?)
    }
}

fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

pub fn gibbs_state(spec: &Spectrum, beta: f64) -> Result<ThermalState> {
    if !beta.is_finite() {
        return Err(Error::domain("β must be finite; use endpoint_state for β → ∞"));
    }
    if beta < 0.0 {
        return Err(Error::domain(format!("β must be non-negative, got {beta}")));
    }
    let h1 = spec.ground_energy();
    let weights: Vec<f64> = spec.energies().iter().map(|h| (-beta * (h - h1)).exp()).collect();
    let z_shifted: f64 = weights.iter().sum();
    let p: Vec<f64> = weights.iter().map(|w| w / z_shifted).collect();
    let internal_energy = p.iter().zip(spec.energies()).map(|(p, h)| p * h).sum();
    let entropy = shannon_entropy(&p);
    let free_energy = (beta > 0.0).then(|| h1 - z_shifted.ln() / beta);
    Ok(ThermalState {
        beta,
        p: ProbabilityVector::new(p)?,
        z_shifted,
        shift: h1,
        internal_energy,
        entropy,
        free_energy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    /// β → ∞: uniform weight on the ground multiplet.
    ZeroTemperature,
    /// β → 0: the most mixed state.
    InfiniteTemperature,
}

/// Limit of the Gibbs state, in ascending-energy order.
pub fn endpoint_state(spec: &Spectrum, which: Endpoint, tol: f64) -> ProbabilityVector {
    let n = spec.len();
    match which {
        Endpoint::InfiniteTemperature => ProbabilityVector::uniform(n).expect("spectrum has n >= 2"),
        Endpoint::ZeroTemperature => {
            let k = spec.ground_degeneracy(tol);
            let p = (0..n).map(|i| if i < k { 1.0 / k as f64 } else { 0.0 }).collect();
            ProbabilityVector::new(p).expect("ground multiplet weights are normalised")
        }
    }
}

/// One state of a trajectory, expressed in the three spaces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalSample {
    pub beta: f64,
    pub p: ProbabilityVector,
    pub lambda: BlochDiagonal,
    pub t: InvariantVector,
}

impl ThermalSample {
    fn from_state(state: &ThermalState) -> Self {
        Self {
            beta: state.beta,
            lambda: p_to_lambda(&state.p),
            t: invariants(&state.p),
            p: state.p.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermalTrajectory {
    pub spectrum: Spectrum,
    pub samples: Vec<ThermalSample>,
}

/// Samples the Gibbs state along an ascending β grid.
pub fn trajectory(spec: &Spectrum, beta_grid: &[f64]) -> Result<ThermalTrajectory> {
    if beta_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("β grid must be sorted ascending"));
    }
    let eval = |&beta: &f64| gibbs_state(spec, beta).map(|s| ThermalSample::from_state(&s));
    let samples: Result<Vec<_>> = if beta_grid.len() >= PARALLEL_GRID_LEN {
        beta_grid.par_iter().map(eval).collect()
    } else {
        beta_grid.iter().map(eval).collect()
    };
    Ok(ThermalTrajectory { spectrum: spec.clone(), samples: samples? })
}

/// Like [`trajectory`] but always evaluated on the rayon pool.
pub fn trajectory_parallel(spec: &Spectrum, beta_grid: &[f64]) -> Result<ThermalTrajectory> {
    if beta_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("β grid must be sorted ascending"));
    }
    let samples = beta_grid
        .par_iter()
        .map(|&beta| gibbs_state(spec, beta).map(|s| ThermalSample::from_state(&s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ThermalTrajectory { spectrum: spec.clone(), samples })
}

/// A β grid: `count` points spaced linearly or logarithmically in `[lo, hi]`,
/// optionally preceded by the exact β = 0 endpoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaGrid {
    pub values: Vec<f64>,
}

impl BetaGrid {
    pub fn log(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) || count == 0 {
            return Err(Error::domain(format!("bad log grid {lo}:{hi}:{count}")));
        }
        if count == 1 {
            return Ok(Self { values: vec![lo] });
        }
        let (a, b) = (lo.ln(), hi.ln());
        let step = (b - a) / (count - 1) as f64;
        let mut values: Vec<f64> = (0..count).map(|i| (a + step * i as f64).exp()).collect();
        values[0] = lo;
        values[count - 1] = hi;
        Ok(Self { values })
    }

    pub fn linear(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo >= 0.0 && hi >= lo && hi.is_finite()) || count == 0 {
            return Err(Error::domain(format!("bad linear grid {lo}:{hi}:{count}")));
        }
        if count == 1 {
            return Ok(Self { values: vec![lo] });
        }
        let step = (hi - lo) / (count - 1) as f64;
        Ok(Self { values: (0..count).map(|i| lo + step * i as f64).collect() })
    }

    /// 200 log-spaced points in `[1e-3, 1e3]` plus β = 0.
    pub fn default_log() -> Self {
        Self::log(1e-3, 1e3, 200).expect("static grid").with_zero()
    }

    pub fn with_zero(mut self) -> Self {
        if self.values.first() != Some(&0.0) {
            self.values.insert(0, 0.0);
        }
        self
    }

    /// Merges several grids into one sorted, de-duplicated grid.
    pub fn merge(parts: impl IntoIterator<Item = BetaGrid>) -> Self {
        let mut values: Vec<f64> = parts.into_iter().flat_map(|g| g.values).collect();
        values.sort_by(|a, b| a.total_cmp(b));
        values.dedup();
        Self { values }
    }
}
