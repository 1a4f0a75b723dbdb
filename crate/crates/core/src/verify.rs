//! Verification harness: direct-eigensolve checks of constructed pairs,
//! composition-rule audits, and a ledger of claims that disagree with the
//! eigensolver.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::composition::{self, Lemma};
use crate::constructions::{self, ClosedFormMatch, PairProfile, Product, Recipe, RecipeId};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sample;
use crate::spectra::{self, MatrixKind, Spectrum};

/// Equienergy tolerance per vertex of the compared graphs.
pub const EQUALITY_TOL: f64 = 1e-8;
/// Maximum eigenvalue deviation for two spectra to count as equal.
pub const COSPECTRAL_TOL: f64 = 1e-7;
/// Deviations at or below this are not recorded as discrepancies.
pub const DISCREPANCY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub equality: f64,
    pub cospectral: f64,
    pub discrepancy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { equality: EQUALITY_TOL, cospectral: COSPECTRAL_TOL, discrepancy: DISCREPANCY_TOL }
    }
}

/// Which matrices [`verify_pair`] analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    L,
    Q,
    Both,
}

impl Which {
    fn laplacian(self) -> bool {
        self != Which::Q
    }
    fn signless(self) -> bool {
        self != Which::L
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancySource {
    /// Pairwise-product rule for Kronecker product spectra.
    KroneckerRule,
    /// Claimed signless Laplacian spectrum of `K_{p,p}`.
    KppSignlessSpectrum,
    /// Printed closed-form energy of a recipe output.
    ClosedFormConstant,
    Other,
}

/// A scalar or a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Real(f64),
    Spectrum(Vec<f64>),
}

/// A stated value that disagrees with direct computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyRecord {
    pub source: DiscrepancySource,
    pub instance: String,
    pub paper_value: Quantity,
    pub oracle_value: Quantity,
    pub deviation: f64,
}

/// Closed-form arbitration for one output graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormReport {
    pub formula_value: f64,
    pub variant_values: Vec<f64>,
    pub direct_value: f64,
    pub winner: ClosedFormMatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub recipe: Option<RecipeId>,
    pub p: Option<usize>,
    /// Order and size of the first output graph.
    pub n: usize,
    pub m: usize,
    /// Laplacian energies; `None` when only Q was requested.
    pub le1: Option<f64>,
    pub le2: Option<f64>,
    pub diff: Option<f64>,
    /// Signless Laplacian energies; `None` when only L was requested.
    pub le_plus1: Option<f64>,
    pub le_plus2: Option<f64>,
    pub q_diff: Option<f64>,
    pub cospectral_l: Option<bool>,
    pub cospectral_q: Option<bool>,
    /// Matrix whose energies the recipe claims are equal.
    pub energy_kind: Option<MatrixKind>,
    /// Whether the recipe's hypothesis holds, i.e. equality is predicted.
    pub predicted: bool,
    /// Whether the energies of `energy_kind` agree within tolerance.
    pub equal: Option<bool>,
    pub rule_dev: Option<f64>,
    pub closed_form: Option<ClosedFormReport>,
    pub discrepancies: Vec<DiscrepancyRecord>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    /// A predicted equality that did not hold.
    pub fn failed(&self) -> bool {
        self.predicted && self.equal == Some(false)
    }

    /// Difference of the energies the recipe compares.
    pub fn predicted_diff(&self) -> Option<f64> {
        match self.energy_kind? {
            MatrixKind::Laplacian => self.diff,
            MatrixKind::SignlessLaplacian => self.q_diff,
        }
    }
}

struct PairSpectra {
    energies: (f64, f64),
    cospectral: bool,
}

fn compare(h1: &Graph, h2: &Graph, kind: MatrixKind, tol: &Tolerances) -> Result<PairSpectra> {
    let s1 = spectra::spectrum(h1, kind)?;
    let s2 = spectra::spectrum(h2, kind)?;
    Ok(PairSpectra { energies: (s1.energy(), s2.energy()), cospectral: spectra::are_cospectral(&s1, &s2, tol.cospectral)? })
}

/// Energies and cospectrality of two graphs of the same order.
pub fn verify_pair(h1: &Graph, h2: &Graph, which: Which, tol: &Tolerances) -> Result<VerificationReport> {
    let start = Instant::now();
    if h1.order() != h2.order() {
        return Err(Error::OrderMismatch(h1.order(), h2.order()));
    }
    let l = which.laplacian().then(|| compare(h1, h2, MatrixKind::Laplacian, tol)).transpose()?;
    let q = which.signless().then(|| compare(h1, h2, MatrixKind::SignlessLaplacian, tol)).transpose()?;
    Ok(VerificationReport {
        recipe: None,
        p: None,
        n: h1.order(),
        m: h1.size(),
        le1: l.as_ref().map(|s| s.energies.0),
        le2: l.as_ref().map(|s| s.energies.1),
        diff: l.as_ref().map(|s| (s.energies.0 - s.energies.1).abs()),
        le_plus1: q.as_ref().map(|s| s.energies.0),
        le_plus2: q.as_ref().map(|s| s.energies.1),
        q_diff: q.as_ref().map(|s| (s.energies.0 - s.energies.1).abs()),
        cospectral_l: l.as_ref().map(|s| s.cospectral),
        cospectral_q: q.as_ref().map(|s| s.cospectral),
        energy_kind: None,
        predicted: false,
        equal: None,
        rule_dev: None,
        closed_form: None,
        discrepancies: Vec::new(),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Constructs the recipe pair at `p` (failing if the hypothesis does not
/// hold) and verifies it.
pub fn verify_recipe(recipe: &Recipe, g1: &Graph, g2: &Graph, p: usize, tol: &Tolerances) -> Result<VerificationReport> {
    let pair = PairProfile::new(g1, g2)?;
    constructions::construct_for(recipe, &pair, p)?;
    verify_instance(recipe, &pair, p, tol)
}

/// Builds and verifies the recipe pair at `p` whether or not the hypothesis
/// holds; `predicted` records which.
pub fn verify_instance(recipe: &Recipe, pair: &PairProfile, p: usize, tol: &Tolerances) -> Result<VerificationReport> {
    let start = Instant::now();
    let predicted = constructions::precondition_for(recipe, pair, p)?.satisfied;
    let (g1, g2) = (&pair.first.graph, &pair.second.graph);
    let h1 = constructions::build(recipe, g1, p)?;
    let h2 = constructions::build(recipe, g2, p)?;

    let mut report = verify_pair(&h1, &h2, Which::Both, tol)?;
    let kind = recipe.energy_kind();
    report.recipe = Some(recipe.id);
    report.p = Some(p);
    report.energy_kind = Some(kind);
    report.predicted = predicted;
    report.equal = report.predicted_diff().map(|d| d <= tol.equality * h1.order() as f64);

    let instance = format!("{} on (n={}, m={}) at p={}", recipe.id, g1.order(), g1.size(), p);
    let mut rule_dev: Option<f64> = None;
    for g in [g1, g2] {
        if let Some((product, x, f)) = constructions::product_factors(recipe, g, p)? {
            let (sx, sf) = (spectra::spectrum(&x, kind)?, spectra::spectrum(&f, kind)?);
            let (rule, built) = match product {
                Product::Cartesian => (composition::rule_cartesian(&sx, &sf)?, x.cartesian_product(&f)),
                Product::Kronecker => (composition::rule_kronecker(&sx, &sf)?, x.kronecker_product(&f)),
            };
            let outcome = composition::cross_check(rule, &built)?;
            if product == Product::Kronecker && outcome.max_deviation > tol.discrepancy {
                report.discrepancies.push(DiscrepancyRecord {
                    source: DiscrepancySource::KroneckerRule,
                    instance: instance.clone(),
                    paper_value: Quantity::Spectrum(outcome.rule_spectrum.values.clone()),
                    oracle_value: Quantity::Spectrum(outcome.direct_spectrum.values.clone()),
                    deviation: outcome.max_deviation,
                });
            }
            rule_dev = Some(rule_dev.map_or(outcome.max_deviation, |d| d.max(outcome.max_deviation)));
        }
    }
    report.rule_dev = rule_dev;

    if recipe.id == RecipeId::CartUnionEmptyBipartiteQ {
        if let Some(record) = kpp_signless_record(p, tol)? {
            report.discrepancies.push(record);
        }
    }

    let inputs = match recipe.id {
        RecipeId::JoinPairs => vec![pair.first.laplacian_energy(); 2],
        RecipeId::MultiJoin => vec![pair.first.laplacian_energy(); p],
        _ => Vec::new(),
    };
    if let Ok(cf) = constructions::closed_form_energy(recipe.id, g1.order(), g1.size(), p, &inputs) {
        let direct = report.le1.expect("laplacian computed");
        let winner = cf.arbitrate(direct, tol.discrepancy);
        let deviation = (direct - cf.formula_value).abs();
        if deviation > tol.discrepancy {
            report.discrepancies.push(DiscrepancyRecord {
                source: DiscrepancySource::ClosedFormConstant,
                instance,
                paper_value: Quantity::Real(cf.formula_value),
                oracle_value: Quantity::Real(direct),
                deviation,
            });
        }
        report.closed_form =
            Some(ClosedFormReport { formula_value: cf.formula_value, variant_values: cf.variant_values, direct_value: direct, winner });
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// The stated signless spectrum of `K_{p,p}`: `p`, then `p/2` with
/// multiplicity `p − 2`, then `0`.
pub fn stated_kpp_signless_spectrum(p: usize) -> Vec<f64> {
    let pf = p as f64;
    let mut v = vec![pf];
    v.extend(std::iter::repeat_n(pf / 2.0, p.saturating_sub(2)));
    v.push(0.0);
    v
}

/// Compares two non-increasing value lists position by position, padding the
/// shorter one with zeros.
fn padded_deviation(a: &[f64], b: &[f64]) -> f64 {
    (0..a.len().max(b.len())).map(|i| (a.get(i).unwrap_or(&0.0) - b.get(i).unwrap_or(&0.0)).abs()).fold(0.0, f64::max)
}

fn kpp_signless_record(p: usize, tol: &Tolerances) -> Result<Option<DiscrepancyRecord>> {
    let stated = stated_kpp_signless_spectrum(p);
    let direct = spectra::signless_laplacian_spectrum(&Graph::complete_bipartite(p, p))?;
    let deviation = padded_deviation(&stated, &direct.values);
    Ok((deviation > tol.discrepancy || stated.len() != direct.len()).then(|| DiscrepancyRecord {
        source: DiscrepancySource::KppSignlessSpectrum,
        instance: format!("K_{{{p},{p}}}"),
        paper_value: Quantity::Spectrum(stated),
        oracle_value: Quantity::Spectrum(direct.values),
        deviation,
    }))
}

/// The two 6-vertex trees whose Cartesian products with `K_p` separate the
/// `G × K_p` recipe from a general construction.
pub fn counterexample_trees() -> (Graph, Graph) {
    let g1 = Graph::from_edges(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (3, 5)]).expect("valid tree");
    let g2 = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (2, 4), (4, 5)]).expect("valid tree");
    (g1, g2)
}

/// `(LE(G1 × K_p), LE(G2 × K_p))` for the trees of [`counterexample_trees`].
pub fn counterexample_energies(p: usize) -> Result<(f64, f64)> {
    if p == 0 {
        return Err(Error::InvalidArgument("p must be at least 1".into()));
    }
    let (g1, g2) = counterexample_trees();
    let kp = Graph::complete(p);
    Ok((spectra::laplacian_energy(&g1.cartesian_product(&kp))?, spectra::laplacian_energy(&g2.cartesian_product(&kp))?))
}

/// Per-lemma summary of a rule audit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaSummary {
    pub lemma: Lemma,
    pub name: &'static str,
    pub trials: usize,
    pub max_deviation: f64,
    pub discrepancies: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaAudit {
    pub seed: u64,
    pub summaries: Vec<LemmaSummary>,
    pub discrepancies: Vec<DiscrepancyRecord>,
}

impl LemmaAudit {
    pub fn summary(&self, lemma: Lemma) -> &LemmaSummary {
        self.summaries.iter().find(|s| s.lemma == lemma).expect("every lemma audited")
    }
}

fn spectrum_label(s: &Spectrum) -> Vec<f64> {
    s.values.clone()
}

/// Random rule-vs-eigensolver audit of every composition rule.
///
/// Trial 0 is always `K_2` with `K_2`; the remaining `trials − 1` pairs are
/// uniform random graphs on `1..=max_n` vertices drawn from `seed`. The
/// complement-of-subgraph rule uses an ambient order one larger than the
/// first factor.
pub fn audit_lemmas(trials: usize, max_n: usize, seed: u64, tol: &Tolerances) -> Result<LemmaAudit> {
    if max_n < 2 {
        return Err(Error::InvalidArgument(format!("max-n must be at least 2, got {max_n}")));
    }
    let mut rng = sample::rng(seed);
    let mut pairs = vec![(Graph::complete(2), Graph::complete(2))];
    for _ in 1..trials.max(1) {
        let n1 = rand::Rng::gen_range(&mut rng, 1..=max_n);
        let n2 = rand::Rng::gen_range(&mut rng, 1..=max_n);
        let d = rand::Rng::gen_range(&mut rng, 0.0..=1.0);
        pairs.push((sample::random_gnp(&mut rng, n1, d), sample::random_gnp(&mut rng, n2, d)));
    }

    let mut results: Vec<(Lemma, usize, composition::RuleOutcome)> = pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(t, (g1, g2))| Lemma::ALL.into_iter().map(move |lemma| (lemma, t, g1, g2)))
        .map(|(lemma, t, g1, g2)| lemma.evaluate(g1, g2, g1.order() + 1).map(|o| (lemma, t, o)))
        .collect::<Result<_>>()?;
    results.sort_by_key(|(lemma, t, _)| (*lemma, *t));

    let mut discrepancies = Vec::new();
    let summaries = Lemma::ALL
        .into_iter()
        .map(|lemma| {
            let mut summary = LemmaSummary { lemma, name: lemma.name(), trials: 0, max_deviation: 0.0, discrepancies: 0 };
            for (_, t, outcome) in results.iter().filter(|r| r.0 == lemma) {
                summary.trials += 1;
                summary.max_deviation = summary.max_deviation.max(outcome.max_deviation);
                if outcome.max_deviation > tol.discrepancy {
                    summary.discrepancies += 1;
                    let (g1, g2) = &pairs[*t];
                    discrepancies.push(DiscrepancyRecord {
                        source: match lemma {
                            Lemma::KroneckerL | Lemma::KroneckerQ => DiscrepancySource::KroneckerRule,
                            _ => DiscrepancySource::Other,
                        },
                        instance: format!("{} trial {t}: {g1:?} with {g2:?}", lemma.name()),
                        paper_value: Quantity::Spectrum(spectrum_label(&outcome.rule_spectrum)),
                        oracle_value: Quantity::Spectrum(spectrum_label(&outcome.direct_spectrum)),
                        deviation: outcome.max_deviation,
                    });
                }
            }
            summary
        })
        .collect();
    Ok(LemmaAudit { seed, summaries, discrepancies })
}

/// One row of a `p` scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: usize,
    pub report: VerificationReport,
}

/// Verifies the recipe at every `p` in `p_from..=p_to`, in parallel,
/// returning rows sorted by `p`.
pub fn scan(recipe: &Recipe, g1: &Graph, g2: &Graph, p_from: usize, p_to: usize, tol: &Tolerances) -> Result<Vec<ScanRow>> {
    if p_from == 0 || p_to < p_from {
        return Err(Error::InvalidArgument(format!("empty or invalid p range {p_from}..={p_to}")));
    }
    let pair = PairProfile::new(g1, g2)?;
    let mut rows: Vec<ScanRow> = (p_from..=p_to)
        .into_par_iter()
        .map(|p| verify_instance(recipe, &pair, p, tol).map(|report| ScanRow { p, report }))
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.p);
    Ok(rows)
}
