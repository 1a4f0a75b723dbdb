//! Dense symmetric eigenvalues by cyclic Jacobi rotations.
//!
//! Every spectral statement in this crate is ultimately checked against
//! [`eigenvalues`]. Only eigenvalues are computed.

use crate::error::{Error, Result};

/// Default off-diagonal convergence threshold, relative to `‖A‖_F + 1`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Sweep cap for [`eigenvalues`].
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues closer than this are reported as one value with multiplicity.
pub const GROUPING_TOL: f64 = 1e-7;

/// Real symmetric matrix in row-major storage. Symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds the matrix from the upper triangle (`i <= j`) of `f`.
    pub fn from_upper(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let x = f(i, j);
                entries[i * order + j] = x;
                entries[j * order + i] = x;
            }
        }
        SymmetricMatrix { order, entries }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_upper(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `P A Pᵀ` where `P` maps index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.entries[i * n + j];
            }
        }
        SymmetricMatrix { order: n, entries }
    }
}

/// Eigenvalues sorted non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueList {
    pub values: Vec<f64>,
    pub sweeps: usize,
}

impl EigenvalueList {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = a[i * n + j];
            s += x * x;
        }
    }
    (2.0 * s).sqrt()
}

/// All eigenvalues of `a`, sorted non-increasing.
///
/// Cyclic row-by-row Jacobi sweeps run until the off-diagonal Frobenius
/// norm drops below `tol * (‖A‖_F + 1)`; [`Error::NoConvergence`] is
/// returned if that has not happened after [`MAX_SWEEPS`] sweeps.
pub fn eigenvalues(a: &SymmetricMatrix, tol: f64) -> Result<EigenvalueList> {
    let n = a.order;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut m = a.entries.clone();
    let threshold = tol * (a.frobenius_norm() + 1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m, n);
        if off < threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                // Element already negligible against both diagonal entries.
                if sweeps > 4 && (100.0 * apq).abs() + app.abs() == app.abs() && (100.0 * apq).abs() + aqq.abs() == aqq.abs() {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                rotate(&mut m, n, p, q);
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(EigenvalueList { values, sweeps })
}

/// Applies the rotation annihilating `m[p][q]`, keeping `m` symmetric.
fn rotate(m: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    m[p * n + p] -= t * apq;
    m[q * n + q] += t * apq;
    m[p * n + q] = 0.0;
    m[q * n + p] = 0.0;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        let new_kp = akp - s * (akq + tau * akp);
        let new_kq = akq + s * (akp - tau * akq);
        m[k * n + p] = new_kp;
        m[p * n + k] = new_kp;
        m[k * n + q] = new_kq;
        m[q * n + k] = new_kq;
    }
}

/// Groups a non-increasing list into `(value, multiplicity)` runs; a value
/// joins the current run while it is within `tol` of the previous one.
pub fn group_multiplicities(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut prev = f64::NAN;
    for &v in values {
        match groups.last_mut() {
            Some((_, count)) if (prev - v).abs() <= tol => *count += 1,
            _ => groups.push((v, 1)),
        }
        prev = v;
    }
    groups
}
