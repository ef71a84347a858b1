//! su(n) generators in the symmetric / antisymmetric / diagonal ordering, and
//! the orthonormal frame of the probability simplex built from the diagonal
//! generators.
//!
//! With that ordering the diagonal generator `F_ℓ` carries the global index
//! `k_ℓ = n² - n + ℓ`, so for a qutrit the diagonal coefficients are `λ₇, λ₈`
//! and for a ququart `λ₁₃, λ₁₄, λ₁₅`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{real_diagonal, CMatrix};

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    Ok(())
}

/// Diagonal entries of `F_ℓ` (1-based `ℓ`) for dimension `n`.
pub fn diagonal_generator_entries(n: usize, l: usize) -> Vec<f64> {
    let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
    (1..=n)
        .map(|r| {
            if r <= l {
                norm
            } else if r == l + 1 {
                -(l as f64) * norm
            } else {
                0.0
            }
        })
        .collect()
}

/// Global 1-based generator index of the `ℓ`-th diagonal generator.
pub fn diagonal_index(n: usize, l: usize) -> usize {
    n * n - n + l
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    n: usize,
    symmetric: Vec<CMatrix>,
    antisymmetric: Vec<CMatrix>,
    diagonal: Vec<CMatrix>,
}

impl GeneratorSet {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn symmetric(&self) -> &[CMatrix] {
        &self.symmetric
    }

    pub fn antisymmetric(&self) -> &[CMatrix] {
        &self.antisymmetric
    }

    /// The diagonal generators `F_1 .. F_{n-1}`.
    pub fn diagonal(&self) -> &[CMatrix] {
        &self.diagonal
    }

    pub fn len(&self) -> usize {
        self.n * self.n - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Generator `Λ_k` with the 1-based index used throughout the literature.
    pub fn get(&self, k: usize) -> Option<&CMatrix> {
        let half = self.n * (self.n - 1) / 2;
        match k {
            0 => None,
            k if k <= half => self.symmetric.get(k - 1),
            k if k <= 2 * half => self.antisymmetric.get(k - 1 - half),
            k => self.diagonal.get(k - 1 - 2 * half),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &CMatrix> {
        self.symmetric.iter().chain(&self.antisymmetric).chain(&self.diagonal)
    }
}

/// Builds the `n² - 1` generators of su(n), normalised to `Tr(Λ_j Λ_k) = 2δ_jk`.
///
/// Off-diagonal generators come from `A_jk + A_kj` and `-i(A_jk - A_kj)` for
/// `j < k` (pairs in lexicographic order), where `A_jk = |j⟩⟨k|`.
pub fn build_generators(n: usize) -> Result<GeneratorSet> {
    check_dimension(n)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut symmetric = Vec::with_capacity(n * (n - 1) / 2);
    let mut antisymmetric = Vec::with_capacity(n * (n - 1) / 2);
    for j in 0..n {
        for k in (j + 1)..n {
            let mut s = CMatrix::from_element(n, n, zero);
            s[(j, k)] = Complex64::new(1.0, 0.0);
            s[(k, j)] = Complex64::new(1.0, 0.0);
            symmetric.push(s);

            let mut a = CMatrix::from_element(n, n, zero);
            a[(j, k)] = Complex64::new(0.0, -1.0);
            a[(k, j)] = Complex64::new(0.0, 1.0);
            antisymmetric.push(a);
        }
    }
    let diagonal = (1..n)
        .map(|l| real_diagonal(&diagonal_generator_entries(n, l)))
        .collect();
    Ok(GeneratorSet { n, symmetric, antisymmetric, diagonal })
}

/// Centre and orthonormal axes of the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexFrame {
    pub n: usize,
    /// The most mixed point `(1/n, …, 1/n)`.
    pub center: Vec<f64>,
    /// `ê_ℓ = Diag(F_ℓ)/√2`, ℓ = 1..n-1.
    pub axes: Vec<Vec<f64>>,
}

impl SimplexFrame {
    /// `center + Σ_ℓ coeffs[ℓ] ê_ℓ`.
    pub fn expand(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut p = self.center.clone();
        for (axis, &c) in self.axes.iter().zip(coeffs) {
            for (pk, ek) in p.iter_mut().zip(axis) {
                *pk += c * ek;
            }
        }
        p
    }

    /// Coordinates of `p - center` along each axis.
    pub fn project(&self, p: &[f64]) -> Vec<f64> {
        self.axes
            .iter()
            .map(|axis| axis.iter().zip(p.iter().zip(&self.center)).map(|(e, (x, c))| e * (x - c)).sum())
            .collect()
    }
}

pub fn simplex_frame(n: usize) -> Result<SimplexFrame> {
    check_dimension(n)?;
    let axes = (1..n)
        .map(|l| {
            let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
            (1..=n)
                .map(|k| {
                    if k <= l {
                        norm
                    } else if k == l + 1 {
                        -(l as f64) * norm
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect();
    Ok(SimplexFrame { n, center: vec![1.0 / n as f64; n], axes })
}

/// Maximum Bloch-vector length `√(2(n-1)/n)`, attained by pure states.
pub fn bloch_bound(n: usize) -> Result<f64> {
    check_dimension(n)?;
    Ok((2.0 * (n - 1) as f64 / n as f64).sqrt())
}
