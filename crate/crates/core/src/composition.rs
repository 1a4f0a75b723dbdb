//! Closed-form spectral rules for composed graphs, each paired with a
//! direct eigensolve of the composed graph.
//!
//! The rules are implemented exactly as stated, including the Kronecker
//! product rule (pairwise products of Laplacian eigenvalues), which does not
//! hold in general. [`cross_check`] measures the gap; it never assumes a rule.

use serde::Serialize;

use crate::eigen::GROUPING_TOL;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::{self, MatrixKind, Spectrum};

/// A rule prediction next to the eigensolver's answer for the built graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleOutcome {
    pub rule_spectrum: Spectrum,
    pub direct_spectrum: Spectrum,
    pub max_deviation: f64,
}

fn same_kind(s1: &Spectrum, s2: &Spectrum) -> Result<MatrixKind> {
    if s1.kind != s2.kind {
        return Err(Error::KindMismatch(s1.kind, s2.kind));
    }
    Ok(s1.kind)
}

fn require_laplacian(s: &Spectrum) -> Result<()> {
    if s.kind != MatrixKind::Laplacian {
        return Err(Error::NotLaplacian(format!("got a {:?} spectrum", s.kind)));
    }
    match s.smallest() {
        Some(z) if z.abs() <= GROUPING_TOL => Ok(()),
        Some(z) => Err(Error::NotLaplacian(format!("smallest eigenvalue is {z}, not 0"))),
        None => Err(Error::NotLaplacian("empty spectrum".into())),
    }
}

/// `G1 × G2`: all sums `μ_i + σ_j`.
pub fn rule_cartesian(s1: &Spectrum, s2: &Spectrum) -> Result<Spectrum> {
    let kind = same_kind(s1, s2)?;
    let values = s1.values.iter().flat_map(|a| s2.values.iter().map(move |b| a + b)).collect();
    Ok(Spectrum::new(kind, values, s1.n * s2.m + s2.n * s1.m))
}

/// `G1 ⊗ G2`: all products `μ_i σ_j`.
pub fn rule_kronecker(s1: &Spectrum, s2: &Spectrum) -> Result<Spectrum> {
    let kind = same_kind(s1, s2)?;
    let values = s1.values.iter().flat_map(|a| s2.values.iter().map(move |b| a * b)).collect();
    Ok(Spectrum::new(kind, values, 2 * s1.m * s2.m))
}

/// `G1 ∨ G2`: `n1+n2, n1+σ_j (j < n2), n2+μ_i (i < n1), 0`.
pub fn rule_join(s1: &Spectrum, s2: &Spectrum) -> Result<Spectrum> {
    same_kind(s1, s2)?;
    require_laplacian(s1)?;
    require_laplacian(s2)?;
    let (n1, n2) = (s1.n as f64, s2.n as f64);
    let mut values = Vec::with_capacity(s1.n + s2.n);
    values.push(n1 + n2);
    values.extend(s2.values[..s2.n - 1].iter().map(|x| n1 + x));
    values.extend(s1.values[..s1.n - 1].iter().map(|x| n2 + x));
    values.push(0.0);
    Ok(Spectrum::new(MatrixKind::Laplacian, values, s1.m + s2.m + s1.n * s2.n))
}

/// `G1 ∪ G2`: multiset union.
pub fn rule_union(s1: &Spectrum, s2: &Spectrum) -> Result<Spectrum> {
    let kind = same_kind(s1, s2)?;
    let values = s1.values.iter().chain(&s2.values).copied().collect();
    Ok(Spectrum::new(kind, values, s1.m + s2.m))
}

/// `Ḡ`: `n - μ_i` for every eigenvalue but the trailing zero, which is kept.
pub fn rule_complement(s: &Spectrum) -> Result<Spectrum> {
    require_laplacian(s)?;
    let n = s.n as f64;
    let mut values: Vec<f64> = s.values[..s.n - 1].iter().map(|x| n - x).collect();
    values.push(0.0);
    Ok(Spectrum::new(MatrixKind::Laplacian, values, s.n * (s.n - 1) / 2 - s.m))
}

/// `K_n - E(G)` for `G` on `s <= n` vertices: `n - μ_1, …, n - μ_s`, then
/// `n` repeated `n - s - 1` times, then `0`.
///
/// The listed values include `n - μ_s = n`. When `s = n` the repeat count is
/// `-1`, read as cancelling that one copy of `n`.
pub fn rule_kn_minus(n: usize, s: &Spectrum) -> Result<Spectrum> {
    if s.kind != MatrixKind::Laplacian {
        return Err(Error::NotLaplacian(format!("got a {:?} spectrum", s.kind)));
    }
    if s.n > n {
        return Err(Error::SubgraphTooLarge { found: s.n, ambient: n });
    }
    let nf = n as f64;
    let mut values: Vec<f64> = s.values.iter().map(|x| nf - x).collect();
    if s.n == n {
        // Drop the copy of n contributed by the zero eigenvalue.
        let idx = values
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - nf).abs().total_cmp(&(b.1 - nf).abs()))
            .map(|(i, _)| i)
            .expect("non-empty spectrum");
        values.remove(idx);
    } else {
        values.extend(std::iter::repeat_n(nf, n - s.n - 1));
    }
    values.push(0.0);
    Ok(Spectrum::new(MatrixKind::Laplacian, values, n * (n - 1) / 2 - s.m))
}

/// Compares a predicted spectrum with the eigensolver's spectrum of `built`.
pub fn cross_check(rule_spectrum: Spectrum, built: &Graph) -> Result<RuleOutcome> {
    if rule_spectrum.len() != built.order() {
        return Err(Error::LengthMismatch { rule: rule_spectrum.len(), graph: built.order() });
    }
    let direct_spectrum = spectra::spectrum(built, rule_spectrum.kind)?;
    let max_deviation = rule_spectrum.max_deviation(&direct_spectrum).expect("equal lengths");
    Ok(RuleOutcome { rule_spectrum, direct_spectrum, max_deviation })
}

/// The composition rules, as a value that can be audited on concrete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Lemma {
    CartesianL,
    CartesianQ,
    KroneckerL,
    KroneckerQ,
    Join,
    Union,
    Complement,
    KnMinus,
}

impl Lemma {
    pub const ALL: [Lemma; 8] = [
        Lemma::CartesianL,
        Lemma::CartesianQ,
        Lemma::KroneckerL,
        Lemma::KroneckerQ,
        Lemma::Join,
        Lemma::Union,
        Lemma::Complement,
        Lemma::KnMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::CartesianL => "cartesian-L",
            Lemma::CartesianQ => "cartesian-Q",
            Lemma::KroneckerL => "kronecker-L",
            Lemma::KroneckerQ => "kronecker-Q",
            Lemma::Join => "join",
            Lemma::Union => "union",
            Lemma::Complement => "complement",
            Lemma::KnMinus => "kn-minus",
        }
    }

    /// Applies the rule to the factors' spectra and cross-checks it against
    /// the composed graph. `Complement` ignores `g2`; `KnMinus` removes the
    /// edges of `g1` from `K_ambient`.
    pub fn evaluate(self, g1: &Graph, g2: &Graph, ambient: usize) -> Result<RuleOutcome> {
        use spectra::{laplacian_spectrum as lap, signless_laplacian_spectrum as signless};
        let (rule, built) = match self {
            Lemma::CartesianL => (rule_cartesian(&lap(g1)?, &lap(g2)?)?, g1.cartesian_product(g2)),
            Lemma::CartesianQ => (rule_cartesian(&signless(g1)?, &signless(g2)?)?, g1.cartesian_product(g2)),
            Lemma::KroneckerL => (rule_kronecker(&lap(g1)?, &lap(g2)?)?, g1.kronecker_product(g2)),
            Lemma::KroneckerQ => (rule_kronecker(&signless(g1)?, &signless(g2)?)?, g1.kronecker_product(g2)),
            Lemma::Join => (rule_join(&lap(g1)?, &lap(g2)?)?, g1.join(g2)),
            Lemma::Union => (rule_union(&lap(g1)?, &lap(g2)?)?, g1.union(g2)),
            Lemma::Complement => (rule_complement(&lap(g1)?)?, g1.complement()),
            Lemma::KnMinus => (rule_kn_minus(ambient, &lap(g1)?)?, Graph::kn_minus_edges(ambient, g1)?),
        };
        cross_check(rule, &built)
    }
}
