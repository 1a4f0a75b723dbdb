//! Laplacian and signless-Laplacian spectra, energies and cospectrality.

use serde::{Deserialize, Serialize};

use crate::eigen::{self, SymmetricMatrix, GROUPING_TOL};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default tolerance for [`are_cospectral`].
pub const COSPECTRAL_TOL: f64 = 1e-7;

/// Accuracy expected from the eigensolver on the graphs handled here.
pub const EIGEN_ACCURACY: f64 = 1e-9;

/// Energies `e1`, `e2` of graphs of order `n` are considered equal when
/// `|e1 - e2| <= ENERGY_EQ_TOL * n`.
pub const ENERGY_EQ_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// `L = D - A`
    Laplacian,
    /// `Q = D + A`
    SignlessLaplacian,
}

impl MatrixKind {
    fn sign(self) -> f64 {
        match self {
            MatrixKind::Laplacian => -1.0,
            MatrixKind::SignlessLaplacian => 1.0,
        }
    }
}

/// Eigenvalue multiset of `L(G)` or `Q(G)`, sorted non-increasing, together
/// with the order and size of the graph it belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: MatrixKind,
    pub values: Vec<f64>,
    pub n: usize,
    pub m: usize,
}

impl Spectrum {
    /// Sorts `values` non-increasing. `n` is taken from the number of values.
    pub fn new(kind: MatrixKind, mut values: Vec<f64>, m: usize) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { kind, n: values.len(), values, m }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `k`-th smallest eigenvalue, `k = 0` being the minimum.
    pub fn nth_smallest(&self, k: usize) -> Option<f64> {
        self.values.len().checked_sub(k + 1).map(|i| self.values[i])
    }

    pub fn smallest(&self) -> Option<f64> {
        self.nth_smallest(0)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `Σ |λ_i - 2m/n|`, evaluated as `Σ |n·λ_i - 2m| / n` so the average
    /// degree is never rounded on its own.
    pub fn energy(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let n = self.n as f64;
        let two_m = (2 * self.m) as f64;
        self.values.iter().map(|&x| (n * x - two_m).abs()).sum::<f64>() / n
    }

    /// Number of eigenvalues within [`GROUPING_TOL`] of zero.
    pub fn zero_multiplicity(&self) -> usize {
        self.values.iter().filter(|x| x.abs() <= GROUPING_TOL).count()
    }

    /// `(value, multiplicity)` runs at [`GROUPING_TOL`].
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        eigen::group_multiplicities(&self.values, GROUPING_TOL)
    }

    /// Largest pointwise difference against another spectrum of the same length.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

pub fn laplacian_matrix(g: &Graph) -> SymmetricMatrix {
    matrix(g, MatrixKind::Laplacian)
}

pub fn signless_laplacian_matrix(g: &Graph) -> SymmetricMatrix {
    matrix(g, MatrixKind::SignlessLaplacian)
}

fn matrix(g: &Graph, kind: MatrixKind) -> SymmetricMatrix {
    let deg = g.degrees();
    let off = kind.sign();
    SymmetricMatrix::from_upper(g.order(), |i, j| {
        if i == j {
            deg[i] as f64
        } else if g.has_edge(i, j) {
            off
        } else {
            0.0
        }
    })
}

pub fn spectrum(g: &Graph, kind: MatrixKind) -> Result<Spectrum> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let list = eigen::eigenvalues(&matrix(g, kind), eigen::DEFAULT_TOL)?;
    Ok(Spectrum { kind, n: g.order(), values: list.values, m: g.size() })
}

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    spectrum(g, MatrixKind::Laplacian)
}

pub fn signless_laplacian_spectrum(g: &Graph) -> Result<Spectrum> {
    spectrum(g, MatrixKind::SignlessLaplacian)
}

/// `LE(G) = Σ |μ_i - 2m/n|` over the Laplacian spectrum.
pub fn laplacian_energy(g: &Graph) -> Result<f64> {
    Ok(laplacian_spectrum(g)?.energy())
}

/// `LE⁺(G) = Σ |μ⁺_i - 2m/n|` over the signless Laplacian spectrum.
pub fn signless_laplacian_energy(g: &Graph) -> Result<f64> {
    Ok(signless_laplacian_spectrum(g)?.energy())
}

/// Second-smallest Laplacian eigenvalue.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(Error::TooFewVertices { needed: 2, found: g.order() });
    }
    let s = laplacian_spectrum(g)?;
    Ok(s.nth_smallest(1).expect("order >= 2"))
}

/// Same kind, same length, and sorted values within `tol` pointwise.
pub fn are_cospectral(s1: &Spectrum, s2: &Spectrum, tol: f64) -> Result<bool> {
    if s1.kind != s2.kind {
        return Err(Error::KindMismatch(s1.kind, s2.kind));
    }
    Ok(s1.max_deviation(s2).is_some_and(|d| d <= tol))
}

/// Energies and the degree/connectivity summary of one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub n: usize,
    pub m: usize,
    pub le: f64,
    pub le_plus: f64,
    pub avg_degree: f64,
    /// `None` for single-vertex graphs.
    pub algebraic_connectivity: Option<f64>,
}

pub fn energy_report(g: &Graph) -> Result<EnergyReport> {
    let l = laplacian_spectrum(g)?;
    let q = signless_laplacian_spectrum(g)?;
    Ok(EnergyReport {
        n: g.order(),
        m: g.size(),
        le: l.energy(),
        le_plus: q.energy(),
        avg_degree: (2 * g.size()) as f64 / g.order() as f64,
        algebraic_connectivity: l.nth_smallest(1),
    })
}
