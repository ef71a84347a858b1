//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian input.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Sweeps before the solver gives up; 3x3..9x9 inputs converge in well under ten.
const MAX_SWEEPS: usize = 64;

pub fn real_diagonal(diag: &[f64]) -> CMatrix {
    CMatrix::from_fn(diag.len(), diag.len(), |i, j| {
        if i == j {
            Complex64::new(diag[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Largest entry of `|A - A†|`.
pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn check_hermitian(a: &CMatrix, tol: f64) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare(a.nrows(), a.ncols()));
    }
    let dev = hermitian_deviation(a);
    if dev > tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Real part of `Tr(A)`.
pub fn trace_re(a: &CMatrix) -> f64 {
    a.diagonal().iter().map(|z| z.re).sum()
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic Jacobi with a fixed row-by-row pivot order. Each rotation first
/// removes the phase of the pivot `a_pq` by a diagonal unitary acting on
/// index `q`, then applies the real symmetric Jacobi rotation that zeroes it.
/// The pivot order is fixed, so results are reproducible for a given
/// floating-point environment.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare(a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    let mut m = a.clone();
    // Symmetrise so round-off in the input cannot leak into the rotations.
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }

    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return Ok(vec![0.0; n]);
    }

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, p, q);
            }
        }
    }

    let mut vals: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    Ok(vals)
}

fn rotate(m: &mut CMatrix, p: usize, q: usize) {
    let n = m.nrows();
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }

    // Phase step: conjugate with diag(.., e^{-iφ} at q, ..) so that a_pq becomes |a_pq|.
    let phase = apq / mag;
    if (phase.im).abs() > 0.0 {
        let down = phase.conj();
        for k in 0..n {
            m[(k, q)] *= down;
        }
        for k in 0..n {
            m[(q, k)] *= phase;
        }
        m[(p, q)] = Complex64::new(mag, 0.0);
        m[(q, p)] = Complex64::new(mag, 0.0);
        m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
    } else if phase.re < 0.0 {
        for k in 0..n {
            m[(k, q)] = -m[(k, q)];
        }
        for k in 0..n {
            m[(q, k)] = -m[(q, k)];
        }
    }

    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * c - akq * s;
        m[(k, q)] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = apk * c - aqk * s;
        m[(q, k)] = apk * s + aqk * c;
    }
    m[(p, p)] = Complex64::new(app - t * mag, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * mag, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
}
