//! The three coordinate systems for diagonal density matrices and the maps
//! between them.
//!
//! `p ↔ λ` is the affine map `p = M Λ` with `Λ = (λ_{k_1}, …, λ_{k_{n-1}}, 1)`;
//! `p → t` is the non-invertible trace-power map.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gellmann::{bloch_bound, diagonal_generator_entries, simplex_frame, SimplexFrame};
use crate::linalg::{check_hermitian, CMatrix};
use crate::tolerance::Tolerances;

/// A point of the probability simplex: the diagonal of a density matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(p, Tolerances::DEFAULT.probability)
    }

    pub fn with_tolerance(p: Vec<f64>, tol: f64) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::InvalidDimension(p.len()));
        }
        if let Some((index, &value)) =
            p.iter().enumerate().find(|(_, &x)| !x.is_finite() || x < -tol || x > 1.0 + tol)
        {
            return Err(Error::Positivity { index, value });
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::Normalization(sum));
        }
        Ok(Self(p))
    }

    /// The most mixed state.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self(vec![1.0 / n as f64; n]))
    }

    /// Pure state with all weight on level `k` (0-based).
    pub fn vertex(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        if k >= n {
            return Err(Error::domain(format!("vertex index {k} out of range for n = {n}")));
        }
        let mut p = vec![0.0; n];
        p[k] = 1.0;
        Ok(Self(p))
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Coordinates reordered so that `out[i] = p[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.0.len() {
            return Err(Error::DimensionMismatch { expected: self.0.len(), got: perm.len() });
        }
        Ok(Self(perm.iter().map(|&i| self.0[i]).collect()))
    }
}

/// Coefficients of the diagonal generators, `λ_{k_ℓ}` for `ℓ = 1..n-1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochDiagonal(Vec<f64>);

impl BlochDiagonal {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidDimension(1));
        }
        Ok(Self(lambda))
    }

    pub fn dimension(&self) -> usize {
        self.0.len() + 1
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// True when the image in p-space lies in the simplex and the norm is within the Bloch bound.
    pub fn is_physical(&self) -> bool {
        let tol = Tolerances::DEFAULT.probability;
        lambda_to_p(self).is_ok() && self.norm() <= bloch_bound(self.dimension()).unwrap_or(0.0) + tol
    }
}

/// Trace powers `(t_2, …, t_n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantVector(Vec<f64>);

impl InvariantVector {
    pub fn new(t: Vec<f64>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidDimension(1));
        }
        Ok(Self(t))
    }

    pub fn dimension(&self) -> usize {
        self.0.len() + 1
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `t_ℓ` for `ℓ >= 2`.
    pub fn get(&self, l: usize) -> Option<f64> {
        l.checked_sub(2).and_then(|i| self.0.get(i)).copied()
    }

    pub fn purity(&self) -> f64 {
        self.0[0]
    }

    /// Checks `1/n^{ℓ-1} <= t_ℓ <= 1`.
    pub fn within_bounds(&self, tol: f64) -> bool {
        let n = self.dimension() as f64;
        self.0.iter().enumerate().all(|(i, &t)| {
            let l = (i + 2) as i32;
            t >= n.powi(1 - l) - tol && t <= 1.0 + tol
        })
    }
}

/// The affine map between p-space and λ-space for a fixed dimension.
#[derive(Debug, Clone)]
pub struct DiagonalMap {
    n: usize,
    /// `coeffs[ℓ][s] = (Λ_{k_ℓ})_{ss}`.
    coeffs: Vec<Vec<f64>>,
}

impl DiagonalMap {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let coeffs = (1..n).map(|l| diagonal_generator_entries(n, l)).collect();
        Ok(Self { n, coeffs })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `M` with `p = M Λ`, an `n × n` matrix whose last column is `1/n`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |s, col| {
            if col + 1 == n {
                1.0 / n as f64
            } else {
                0.5 * self.coeffs[col][s]
            }
        })
    }

    /// `M⁻¹`: the generator diagonals as rows, then a row of ones.
    pub fn inverse_matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |row, s| if row + 1 == n { 1.0 } else { self.coeffs[row][s] })
    }

    pub fn p_to_lambda(&self, p: &ProbabilityVector) -> Result<BlochDiagonal> {
        self.check(p.dimension())?;
        BlochDiagonal::new(self.raw_p_to_lambda(p.as_slice()))
    }

    /// `λ_ℓ = Σ_s (Λ_{k_ℓ})_{ss} p_s`, valid for points off the simplex as well.
    pub fn raw_p_to_lambda(&self, p: &[f64]) -> Vec<f64> {
        self.coeffs.iter().map(|row| row.iter().zip(p).map(|(a, x)| a * x).sum()).collect()
    }

    pub fn raw_lambda_to_p(&self, lambda: &[f64]) -> Vec<f64> {
        let base = 1.0 / self.n as f64;
        (0..self.n)
            .map(|s| base + 0.5 * self.coeffs.iter().zip(lambda).map(|(row, l)| row[s] * l).sum::<f64>())
            .collect()
    }

    pub fn lambda_to_p(&self, lambda: &BlochDiagonal) -> Result<ProbabilityVector> {
        self.check(lambda.dimension())?;
        let tol = Tolerances::DEFAULT.probability;
        let p = self.raw_lambda_to_p(lambda.as_slice());
        // a component above 1 forces another below 0; report the negative one
        let bad = p.iter().enumerate().find(|(_, &x)| x < -tol).or_else(|| p.iter().enumerate().find(|(_, &x)| x > 1.0 + tol));
        if let Some((index, &value)) = bad {
            return Err(Error::Positivity { index, value });
        }
        ProbabilityVector::new(p)
    }

    fn check(&self, got: usize) -> Result<()> {
        if got != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got });
        }
        Ok(())
    }
}

pub fn p_to_lambda(p: &ProbabilityVector) -> BlochDiagonal {
    let map = DiagonalMap::new(p.dimension()).expect("ProbabilityVector has n >= 2");
    BlochDiagonal(map.raw_p_to_lambda(p.as_slice()))
}

pub fn lambda_to_p(lambda: &BlochDiagonal) -> Result<ProbabilityVector> {
    DiagonalMap::new(lambda.dimension())?.lambda_to_p(lambda)
}

/// Power sums `Σ_j x_j^ℓ` for `ℓ = 2..=n` where `n = x.len()`.
pub fn power_sums(x: &[f64]) -> Vec<f64> {
    let mut acc = x.to_vec();
    let mut out = Vec::with_capacity(x.len().saturating_sub(1));
    for _ in 2..=x.len() {
        for (a, v) in acc.iter_mut().zip(x) {
            *a *= v;
        }
        out.push(acc.iter().sum());
    }
    out
}

pub fn invariants(p: &ProbabilityVector) -> InvariantVector {
    InvariantVector(power_sums(p.as_slice()))
}

/// The n vertices `t_k = (1/k, 1/k², …, 1/k^{n-1})` of the physical region of t-space.
pub fn t_vertices(n: usize) -> Result<Vec<InvariantVector>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    Ok((1..=n)
        .map(|k| {
            let inv = 1.0 / k as f64;
            InvariantVector((1..n as i32).map(|e| inv.powi(e)).collect())
        })
        .collect())
}

/// How the hyperspherical angles are attached to the frame axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum AngleConvention {
    /// For n = 4 the angles are `(φ, θ)` and the direction is
    /// `cosφ sinθ ê₁ + sinφ sinθ ê₂ + cosθ ê₃`. For every other n this is the
    /// same as [`AngleConvention::Hyperspherical`].
    #[default]
    Spherical,
    /// `cosθ₁ ê₁ + sinθ₁ cosθ₂ ê₂ + … + sinθ₁⋯sinθ_{n-2} ê_{n-1}`.
    Hyperspherical,
}

/// Result of the polar parametrisation; may lie off the simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarPoint {
    pub coords: Vec<f64>,
    pub physical: bool,
}

impl PolarPoint {
    pub fn to_probability(&self) -> Result<ProbabilityVector> {
        ProbabilityVector::new(self.coords.clone())
    }
}

/// Unit direction coefficients `c_ℓ` along the frame axes.
pub fn direction(n: usize, angles: &[f64], convention: AngleConvention) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    if n == 2 {
        // a single axis: the sign is fixed by cos of the one optional angle
        return Ok(vec![angles.first().map_or(1.0, |a| a.cos())]);
    }
    if angles.len() != n - 2 {
        return Err(Error::DimensionMismatch { expected: n - 2, got: angles.len() });
    }
    if n == 4 && convention == AngleConvention::Spherical {
        let (phi, theta) = (angles[0], angles[1]);
        return Ok(vec![phi.cos() * theta.sin(), phi.sin() * theta.sin(), theta.cos()]);
    }
    let mut c = Vec::with_capacity(n - 1);
    let mut sin_prod = 1.0;
    for a in angles {
        c.push(sin_prod * a.cos());
        sin_prod *= a.sin();
    }
    c.push(sin_prod);
    Ok(c)
}

/// `p = p_e + (r/√2) Σ_ℓ c_ℓ ê_ℓ`. Points outside the simplex are returned
/// with `physical = false`.
pub fn polar_to_p(n: usize, r: f64, angles: &[f64], convention: AngleConvention) -> Result<PolarPoint> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::domain(format!("radius must be finite and non-negative, got {r}")));
    }
    let frame = simplex_frame(n)?;
    let c = direction(n, angles, convention)?;
    Ok(polar_with_frame(&frame, r, &c))
}

pub(crate) fn polar_with_frame(frame: &SimplexFrame, r: f64, direction: &[f64]) -> PolarPoint {
    let scale = r / std::f64::consts::SQRT_2;
    let coeffs: Vec<f64> = direction.iter().map(|c| scale * c).collect();
    let coords = frame.expand(&coeffs);
    let physical = in_simplex(&coords, Tolerances::DEFAULT.probability);
    PolarPoint { coords, physical }
}

pub fn in_simplex(p: &[f64], tol: f64) -> bool {
    p.iter().all(|&x| x.is_finite() && x >= -tol && x <= 1.0 + tol) && (p.iter().sum::<f64>() - 1.0).abs() <= tol
}

/// Characteristic-polynomial coefficients `a_1..a_n` of
/// `det(x I - ρ) = x^n - a_1 x^{n-1} + a_2 x^{n-2} - …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositivityReport {
    pub positive: bool,
    pub coefficients: Vec<f64>,
}

/// Positivity test by Descartes' rule of signs: a Hermitian matrix is
/// positive semidefinite iff every `a_k >= 0`. The `a_k` are the elementary
/// symmetric functions of the eigenvalues, recovered from the trace powers
/// with Newton's identities.
pub fn positivity_check(h: &CMatrix) -> Result<PositivityReport> {
    positivity_check_with(h, &Tolerances::DEFAULT)
}

pub fn positivity_check_with(h: &CMatrix, tol: &Tolerances) -> Result<PositivityReport> {
    check_hermitian(h, tol.hermitian)?;
    let n = h.nrows();
    let mut power = h.clone();
    let mut sums = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            power = &power * h;
        }
        sums.push(crate::linalg::trace_re(&power));
    }
    let coefficients = newton_elementary(&sums);
    let positive = coefficients.iter().all(|&a| a >= -tol.positivity);
    Ok(PositivityReport { positive, coefficients })
}

/// Elementary symmetric polynomials `e_1..e_n` from power sums `s_1..s_n`.
pub fn newton_elementary(power_sums: &[f64]) -> Vec<f64> {
    let mut e = vec![1.0];
    for k in 1..=power_sums.len() {
        let mut acc = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[k - i] * power_sums[i - 1];
        }
        e.push(acc / k as f64);
    }
    e.remove(0);
    e
}

/// Eigenvalue multiplicities of a diagonal state and the dimension of its
/// unitary orbit, the flag manifold `U(n)/(U(m_1)⊗…⊗U(m_ℓ))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyPattern {
    pub multiplicities: Vec<usize>,
    pub orbit_dimension: usize,
}

impl DegeneracyPattern {
    pub fn from_multiplicities(multiplicities: Vec<usize>) -> Self {
        let n: usize = multiplicities.iter().sum();
        let sq: usize = multiplicities.iter().map(|m| m * m).sum();
        Self { multiplicities, orbit_dimension: n * n - sq }
    }

    pub fn dimension(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// Groups eigenvalues that agree within `tol · max(p)` and returns the
/// multiplicities in order of decreasing eigenvalue.
pub fn orbit_classification(p: &ProbabilityVector, tol: f64) -> DegeneracyPattern {
    let mut vals = p.as_slice().to_vec();
    vals.sort_by(|a, b| b.total_cmp(a));
    let gap = tol * vals[0].abs().max(f64::MIN_POSITIVE);
    let mut mult = vec![1usize];
    for w in vals.windows(2) {
        if (w[0] - w[1]).abs() <= gap {
            *mult.last_mut().unwrap() += 1;
        } else {
            mult.push(1);
        }
    }
    DegeneracyPattern::from_multiplicities(mult)
}

/// All integer partitions of `n` as degeneracy patterns, largest parts first.
pub fn degeneracy_patterns(n: usize) -> Vec<DegeneracyPattern> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.into_iter().map(DegeneracyPattern::from_multiplicities).collect()
}
