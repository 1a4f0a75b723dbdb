//! Equienergetic construction recipes.
//!
//! Each recipe takes two connected graphs with the same order `n` and size
//! `m`, plus a padding parameter `p`, and builds one graph from each input by
//! the same expression. When the recipe's spectral hypothesis holds, the two
//! outputs are claimed to have equal Laplacian (or signless Laplacian)
//! energy. Every claim is checked downstream by direct eigensolves; nothing
//! here assumes a claim is true.
//!
//! | id    | expression                        | energy | p floor |
//! |-------|-----------------------------------|--------|---------|
//! | `R1`  | `G ∪ K̄p`                          | L      | 1       |
//! | `R2`  | `G ∪ K̄p`                          | Q      | 1       |
//! | `R3`  | `Ḡ ∨ Kp`                          | L      | 1       |
//! | `R4`  | `G ∨ K̄p`                          | L      | n       |
//! | `R5`  | `G ∨ complement(Kp,p)`            | L      | n       |
//! | `R6`  | `Ḡ ∪ Kp`                          | L      | n + 4   |
//! | `R7`  | `(K_N − E(G)) ∨ Kp`               | L      | 1       |
//! | `R8`  | `(K_N − E(G)) ∪ Kp`               | L      | N       |
//! | `R9`  | `(G ∪ K̄p) × Kp`                   | L      | n + 1   |
//! | `R10` | `(G ∪ K̄p) × Kp`                   | Q      | 1       |
//! | `R11` | `(G ∪ K̄p) × Kp,p`                 | Q      | 2n      |
//! | `R12` | `((K_N − E(G)) ∪ Kp) × Kp`        | L      | 1       |
//! | `R13` | `(Ḡ ∪ Kp) × Kp`                   | L      | 2n      |
//! | `R14` | `(Ḡ ∨ Kp) × Kp`                   | L      | 1       |
//! | `R15` | `((K_N − E(G)) ∨ Kp) × Kp`        | L      | 1       |
//! | `R16` | `(G ∨ K̄p) × Kp`                   | L      | n + 4   |
//! | `R17` | `(G ∨ Kp) ∪ K̄p`                   | L      | n       |
//! | `R18` | `G × Kp`                          | L      | n + 1   |
//! | `R19` | `(G ∨ K̄p) ⊗ Kp`                   | L      | n       |
//! | `R20` | `(G ∪ K̄p) ⊗ Kp`                   | L      | 1       |
//! | `R21` | `(G ∪ K̄p) ⊗ Kp`                   | Q      | n + 1   |
//! | `R22` | `G ∨ G` (equienergetic inputs)    | L      | –       |
//! | `R23` | `G ∨ … ∨ G`, `p` copies           | L      | 2       |
//!
//! `N` is the ambient order of the complete graph for the `K_N − E(G)`
//! recipes (default `n + 1`); their threshold uses `2m/(p + N)`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};
use crate::spectra::{self, MatrixKind, Spectrum, EIGEN_ACCURACY, ENERGY_EQ_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RecipeId {
    UnionEmpty,
    UnionEmptyQ,
    ComplementJoinComplete,
    JoinEmpty,
    JoinEmptyBipartiteComplement,
    ComplementUnionComplete,
    KnMinusJoinComplete,
    KnMinusUnionComplete,
    CartUnionEmpty,
    CartUnionEmptyQ,
    CartUnionEmptyBipartiteQ,
    CartKnMinusUnion,
    CartComplementUnion,
    CartComplementJoin,
    CartKnMinusJoin,
    CartJoinEmpty,
    JoinCompleteUnionEmpty,
    DirectCartesian,
    KronJoinEmpty,
    KronUnionEmpty,
    KronUnionEmptyQ,
    JoinPairs,
    MultiJoin,
}

use RecipeId::*;

impl RecipeId {
    pub const ALL: [RecipeId; 23] = [
        UnionEmpty,
        UnionEmptyQ,
        ComplementJoinComplete,
        JoinEmpty,
        JoinEmptyBipartiteComplement,
        ComplementUnionComplete,
        KnMinusJoinComplete,
        KnMinusUnionComplete,
        CartUnionEmpty,
        CartUnionEmptyQ,
        CartUnionEmptyBipartiteQ,
        CartKnMinusUnion,
        CartComplementUnion,
        CartComplementJoin,
        CartKnMinusJoin,
        CartJoinEmpty,
        JoinCompleteUnionEmpty,
        DirectCartesian,
        KronJoinEmpty,
        KronUnionEmpty,
        KronUnionEmptyQ,
        JoinPairs,
        MultiJoin,
    ];

    /// 1-based position in [`RecipeId::ALL`].
    pub fn number(self) -> usize {
        self as usize + 1
    }

    fn slug(self) -> &'static str {
        match self {
            UnionEmpty => "union-empty",
            UnionEmptyQ => "union-empty-q",
            ComplementJoinComplete => "complement-join-complete",
            JoinEmpty => "join-empty",
            JoinEmptyBipartiteComplement => "join-empty-bipartite-complement",
            ComplementUnionComplete => "complement-union-complete",
            KnMinusJoinComplete => "kn-minus-join-complete",
            KnMinusUnionComplete => "kn-minus-union-complete",
            CartUnionEmpty => "cart-union-empty",
            CartUnionEmptyQ => "cart-union-empty-q",
            CartUnionEmptyBipartiteQ => "cart-union-empty-bipartite-q",
            CartKnMinusUnion => "cart-kn-minus-union",
            CartComplementUnion => "cart-complement-union",
            CartComplementJoin => "cart-complement-join",
            CartKnMinusJoin => "cart-kn-minus-join",
            CartJoinEmpty => "cart-join-empty",
            JoinCompleteUnionEmpty => "join-complete-union-empty",
            DirectCartesian => "direct-cartesian",
            KronJoinEmpty => "kron-join-empty",
            KronUnionEmpty => "kron-union-empty",
            KronUnionEmptyQ => "kron-union-empty-q",
            JoinPairs => "join-pairs",
            MultiJoin => "multi-join",
        }
    }

    /// Stable identifier, e.g. `R9:cart-union-empty`.
    pub fn as_str(self) -> String {
        format!("R{}:{}", self.number(), self.slug())
    }

    pub fn expression(self) -> &'static str {
        match self {
            UnionEmpty | UnionEmptyQ => "G ∪ K̄p",
            ComplementJoinComplete => "Ḡ ∨ Kp",
            JoinEmpty => "G ∨ K̄p",
            JoinEmptyBipartiteComplement => "G ∨ complement(Kp,p)",
            ComplementUnionComplete => "Ḡ ∪ Kp",
            KnMinusJoinComplete => "(K_N − E(G)) ∨ Kp",
            KnMinusUnionComplete => "(K_N − E(G)) ∪ Kp",
            CartUnionEmpty | CartUnionEmptyQ => "(G ∪ K̄p) × Kp",
            CartUnionEmptyBipartiteQ => "(G ∪ K̄p) × Kp,p",
            CartKnMinusUnion => "((K_N − E(G)) ∪ Kp) × Kp",
            CartComplementUnion => "(Ḡ ∪ Kp) × Kp",
            CartComplementJoin => "(Ḡ ∨ Kp) × Kp",
            CartKnMinusJoin => "((K_N − E(G)) ∨ Kp) × Kp",
            CartJoinEmpty => "(G ∨ K̄p) × Kp",
            JoinCompleteUnionEmpty => "(G ∨ Kp) ∪ K̄p",
            DirectCartesian => "G × Kp",
            KronJoinEmpty => "(G ∨ K̄p) ⊗ Kp",
            KronUnionEmpty | KronUnionEmptyQ => "(G ∪ K̄p) ⊗ Kp",
            JoinPairs => "G ∨ G",
            MultiJoin => "G ∨ … ∨ G (p copies)",
        }
    }

    pub fn energy_kind(self) -> MatrixKind {
        match self {
            UnionEmptyQ | CartUnionEmptyQ | CartUnionEmptyBipartiteQ | KronUnionEmptyQ => MatrixKind::SignlessLaplacian,
            _ => MatrixKind::Laplacian,
        }
    }

    /// Recipes whose inputs live inside a larger complete graph `K_N`.
    pub fn uses_ambient(self) -> bool {
        matches!(self, KnMinusJoinComplete | KnMinusUnionComplete | CartKnMinusUnion | CartKnMinusJoin)
    }

    /// Recipes that need L-equienergetic inputs instead of a spectral threshold.
    pub fn needs_equienergetic_input(self) -> bool {
        matches!(self, JoinPairs | MultiJoin)
    }

    /// Recipes built on the Kronecker product rule or the `K_{p,p}` spectra,
    /// whose printed justification disagrees with direct computation.
    pub fn rests_on_disputed_rule(self) -> bool {
        matches!(self, KronJoinEmpty | KronUnionEmpty | KronUnionEmptyQ | JoinEmptyBipartiteComplement | CartUnionEmptyBipartiteQ)
    }

    fn hypothesis(self) -> Hypothesis {
        use Floor::*;
        use Gap::*;
        let h = |gap, offset, floor, min_gap: Option<f64>| Hypothesis { gap, offset, floor, min_gap };
        match self {
            UnionEmpty => h(Algebraic, 0, One, None),
            UnionEmptyQ => h(SignlessSecond, 0, One, None),
            ComplementJoinComplete => h(Algebraic, 1, One, Some(1.0)),
            JoinEmpty => h(Algebraic, 0, N, None),
            JoinEmptyBipartiteComplement => h(Algebraic, 0, N, None),
            ComplementUnionComplete => h(Algebraic, 0, NPlus(4), None),
            KnMinusJoinComplete => h(Algebraic, 1, One, Some(1.0)),
            KnMinusUnionComplete => h(Algebraic, 1, Ambient, Some(1.0)),
            CartUnionEmpty => h(Algebraic, 0, NPlus(1), None),
            CartUnionEmptyQ => h(SignlessSmallest, 1, One, None),
            CartUnionEmptyBipartiteQ => h(SignlessSmallest, 0, TwoN, None),
            CartKnMinusUnion => h(Algebraic, 2, One, Some(2.0)),
            CartComplementUnion => h(Algebraic, 0, TwoN, None),
            CartComplementJoin => h(Algebraic, 2, One, Some(2.0)),
            CartKnMinusJoin => h(Algebraic, 2, One, Some(2.0)),
            CartJoinEmpty => h(Algebraic, 0, NPlus(4), None),
            JoinCompleteUnionEmpty => h(Algebraic, 0, N, None),
            DirectCartesian => h(Algebraic, 0, NPlus(1), None),
            KronJoinEmpty => h(Algebraic, 0, N, None),
            KronUnionEmpty => h(Algebraic, 0, One, None),
            KronUnionEmptyQ => h(SignlessSmallest, 0, NPlus(1), None),
            JoinPairs => h(Equienergy, 0, One, None),
            MultiJoin => h(Equienergy, 0, Two, None),
        }
    }
}

impl fmt::Display for RecipeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str())
    }
}

impl Serialize for RecipeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_str())
    }
}

impl FromStr for RecipeId {
    type Err = Error;

    /// Accepts `R9`, `r9`, `R9:cart-union-empty` or `cart-union-empty`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (head, tail) = match t.split_once(':') {
            Some((h, rest)) => (h, Some(rest)),
            None => (t, None),
        };
        let by_number =
            head.strip_prefix(['R', 'r']).and_then(|d| d.parse::<usize>().ok()).and_then(|k| RecipeId::ALL.get(k.wrapping_sub(1)).copied());
        let found = match by_number {
            Some(id) => tail.is_none_or(|slug| slug == id.slug()).then_some(id),
            None => RecipeId::ALL.into_iter().find(|id| id.slug() == t),
        };
        found.ok_or_else(|| Error::UnknownRecipe(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gap {
    /// Second-smallest Laplacian eigenvalue.
    Algebraic,
    /// Second-smallest signless Laplacian eigenvalue.
    SignlessSecond,
    /// Smallest signless Laplacian eigenvalue.
    SignlessSmallest,
    /// No threshold; inputs must be L-equienergetic.
    Equienergy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Floor {
    One,
    Two,
    N,
    NPlus(usize),
    TwoN,
    Ambient,
}

#[derive(Debug, Clone, Copy)]
struct Hypothesis {
    gap: Gap,
    offset: u8,
    floor: Floor,
    /// Both inputs' gap eigenvalue must exceed this (e.g. algebraic
    /// connectivity greater than one).
    min_gap: Option<f64>,
}

/// A recipe together with its configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Recipe {
    pub id: RecipeId,
    /// Order of the ambient complete graph for the `K_N − E(G)` recipes.
    pub ambient_n: Option<usize>,
    /// `R5` only: build `G ∨ Kp,p` instead of `G ∨ complement(Kp,p)`.
    pub assume_bar_typo: bool,
}

impl Recipe {
    pub fn new(id: RecipeId) -> Self {
        Recipe { id, ambient_n: None, assume_bar_typo: false }
    }

    pub fn with_ambient(mut self, n: usize) -> Self {
        self.ambient_n = Some(n);
        self
    }

    pub fn with_bar_typo(mut self, on: bool) -> Self {
        self.assume_bar_typo = on;
        self
    }

    pub fn energy_kind(&self) -> MatrixKind {
        self.id.energy_kind()
    }

    /// Effective order used in the threshold `2m/(p + N)`.
    pub fn ambient_for(&self, n: usize) -> usize {
        if self.id.uses_ambient() {
            self.ambient_n.unwrap_or(n + 1)
        } else {
            n
        }
    }

    fn p_floor(&self, n: usize) -> usize {
        match self.id.hypothesis().floor {
            Floor::One => 1,
            Floor::Two => 2,
            Floor::N => n,
            Floor::NPlus(k) => n + k,
            Floor::TwoN => 2 * n,
            Floor::Ambient => self.ambient_for(n),
        }
        .max(1)
    }
}

impl From<RecipeId> for Recipe {
    fn from(id: RecipeId) -> Self {
        Recipe::new(id)
    }
}

/// Spectral data of one input graph, computed once and reused across `p`.
#[derive(Debug, Clone)]
pub struct InputProfile {
    pub graph: Graph,
    pub laplacian: Spectrum,
    pub signless: Spectrum,
    pub connected: bool,
}

impl InputProfile {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(InputProfile {
            graph: g.clone(),
            laplacian: spectra::laplacian_spectrum(g)?,
            signless: spectra::signless_laplacian_spectrum(g)?,
            connected: g.is_connected()?,
        })
    }

    pub fn laplacian_energy(&self) -> f64 {
        self.laplacian.energy()
    }

    fn gap(&self, gap: Gap) -> Result<f64> {
        let need_two = || Error::TooFewVertices { needed: 2, found: self.graph.order() };
        match gap {
            Gap::Algebraic => self.laplacian.nth_smallest(1).ok_or_else(need_two),
            Gap::SignlessSecond => self.signless.nth_smallest(1).ok_or_else(need_two),
            Gap::SignlessSmallest => Ok(self.signless.smallest().expect("non-empty")),
            Gap::Equienergy => Ok(0.0),
        }
    }
}

/// Both inputs of a recipe.
#[derive(Debug, Clone)]
pub struct PairProfile {
    pub first: InputProfile,
    pub second: InputProfile,
}

impl PairProfile {
    /// Fails with [`Error::MismatchedPair`] unless orders and sizes agree.
    pub fn new(g1: &Graph, g2: &Graph) -> Result<Self> {
        if (g1.order(), g1.size()) != (g2.order(), g2.size()) {
            return Err(Error::MismatchedPair { n1: g1.order(), m1: g1.size(), n2: g2.order(), m2: g2.size() });
        }
        Ok(PairProfile { first: InputProfile::new(g1)?, second: InputProfile::new(g2)? })
    }

    pub fn n(&self) -> usize {
        self.first.graph.order()
    }

    pub fn m(&self) -> usize {
        self.first.graph.size()
    }
}

/// Evaluation of a recipe's hypothesis at one `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Precondition {
    /// `2m/(p + N)` for threshold recipes; `2m/n + 1` for `R18`;
    /// `|LE(G1) − LE(G2)|` for `R22`/`R23`.
    pub threshold: f64,
    /// Minimum over both inputs of the spectral gap minus `gap_offset`
    /// (equality tolerance for `R22`/`R23`).
    pub bound: f64,
    pub p: usize,
    pub p_floor: usize,
    pub gap_offset: u8,
    pub connectivity_ok: bool,
    pub satisfied: bool,
}

impl Precondition {
    fn threshold_holds(&self, id: RecipeId) -> bool {
        if id == DirectCartesian {
            self.bound >= self.threshold
        } else {
            self.threshold < self.bound
        }
    }

    /// Human-readable description of the first failing clause.
    pub fn failing_clause(&self, id: RecipeId) -> Option<String> {
        if !self.connectivity_ok {
            return Some("input graphs violate the connectivity hypothesis".into());
        }
        if self.p < self.p_floor {
            return Some(format!("p = {} is below the floor {}", self.p, self.p_floor));
        }
        if !self.threshold_holds(id) {
            let rel = if id == DirectCartesian { "≥" } else { "<" };
            let lhs = if id == DirectCartesian { "bound" } else { "threshold" };
            let (a, b) = if id == DirectCartesian { (self.bound, self.threshold) } else { (self.threshold, self.bound) };
            return Some(format!("{lhs} condition {a} {rel} {b} fails"));
        }
        None
    }
}

/// Evaluates the recipe's hypothesis on a prepared input pair.
pub fn precondition_for(recipe: &Recipe, pair: &PairProfile, p: usize) -> Result<Precondition> {
    let hyp = recipe.id.hypothesis();
    let n = pair.n();
    let m = pair.m() as f64;
    let ambient = recipe.ambient_for(n);
    if ambient < n {
        return Err(Error::SubgraphTooLarge { found: n, ambient });
    }
    let requires_connected = !recipe.id.needs_equienergetic_input();
    if requires_connected && !(pair.first.connected && pair.second.connected) {
        return Err(Error::Disconnected { recipe: recipe.id.as_str() });
    }

    let (threshold, bound, mut connectivity_ok) = match hyp.gap {
        Gap::Equienergy => {
            let diff = (pair.first.laplacian_energy() - pair.second.laplacian_energy()).abs();
            (diff, ENERGY_EQ_TOL * n as f64, true)
        }
        gap => {
            let g1 = pair.first.gap(gap)?;
            let g2 = pair.second.gap(gap)?;
            let raw = g1.min(g2);
            let ok = hyp.min_gap.is_none_or(|t| raw > t + EIGEN_ACCURACY);
            let threshold = if recipe.id == DirectCartesian { 2.0 * m / n as f64 + 1.0 } else { 2.0 * m / (p + ambient) as f64 };
            (threshold, raw - f64::from(hyp.offset), ok)
        }
    };
    // Positive smallest signless eigenvalue (non-bipartite inputs) is part of
    // the union-with-empty signless hypothesis.
    if recipe.id == UnionEmptyQ {
        connectivity_ok &= pair.first.signless.smallest().unwrap_or(0.0) > EIGEN_ACCURACY
            && pair.second.signless.smallest().unwrap_or(0.0) > EIGEN_ACCURACY;
    }

    let mut pre =
        Precondition { threshold, bound, p, p_floor: recipe.p_floor(n), gap_offset: hyp.offset, connectivity_ok, satisfied: false };
    pre.satisfied = pre.connectivity_ok && p >= pre.p_floor && pre.threshold_holds(recipe.id);
    Ok(pre)
}

pub fn check_precondition(recipe: &Recipe, g1: &Graph, g2: &Graph, p: usize) -> Result<Precondition> {
    precondition_for(recipe, &PairProfile::new(g1, g2)?, p)
}

/// Upper limit on the `p` scan in [`minimal_p`].
pub const MAX_P: usize = 1 << 20;

/// Smallest `p >= 1` at which the hypothesis holds.
pub fn minimal_p_for(recipe: &Recipe, pair: &PairProfile) -> Result<usize> {
    let floor = recipe.p_floor(pair.n());
    let at_floor = precondition_for(recipe, pair, floor)?;
    if at_floor.satisfied {
        return Ok(floor);
    }
    let unsatisfiable = |bound| Error::ConditionUnsatisfiable { recipe: recipe.id.as_str(), bound };
    if recipe.id.needs_equienergetic_input() {
        return Err(Error::NotEquienergeticInput { diff: at_floor.threshold });
    }
    if !at_floor.connectivity_ok || at_floor.bound <= 0.0 || recipe.id == DirectCartesian {
        return Err(unsatisfiable(at_floor.bound));
    }
    // 2m/(p + N) < bound  <=>  p > 2m/bound − N; start just below and walk up.
    let ambient = recipe.ambient_for(pair.n()) as f64;
    let estimate = (2.0 * pair.m() as f64 / at_floor.bound - ambient).floor().max(0.0);
    if estimate > MAX_P as f64 {
        return Err(unsatisfiable(at_floor.bound));
    }
    let mut p = (estimate as usize).saturating_sub(1).max(floor);
    while p <= MAX_P {
        if precondition_for(recipe, pair, p)?.satisfied {
            return Ok(p);
        }
        p += 1;
    }
    Err(unsatisfiable(at_floor.bound))
}

pub fn minimal_p(recipe: &Recipe, g1: &Graph, g2: &Graph) -> Result<usize> {
    minimal_p_for(recipe, &PairProfile::new(g1, g2)?)
}

/// Order and size of a graph, tracked symbolically through the same
/// expressions the recipes build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub n: usize,
    pub m: usize,
}

impl Counts {
    pub fn of(g: &Graph) -> Self {
        Counts { n: g.order(), m: g.size() }
    }
    fn complete(p: usize) -> Self {
        Counts { n: p, m: p * p.saturating_sub(1) / 2 }
    }
    fn empty(p: usize) -> Self {
        Counts { n: p, m: 0 }
    }
    fn union(self, o: Self) -> Self {
        Counts { n: self.n + o.n, m: self.m + o.m }
    }
    fn join(self, o: Self) -> Self {
        Counts { n: self.n + o.n, m: self.m + o.m + self.n * o.n }
    }
    fn complement(self) -> Self {
        Counts { n: self.n, m: self.n * self.n.saturating_sub(1) / 2 - self.m }
    }
    fn kn_minus(self, ambient: usize) -> Self {
        Counts { n: ambient, m: ambient * ambient.saturating_sub(1) / 2 - self.m }
    }
    fn cartesian(self, o: Self) -> Self {
        Counts { n: self.n * o.n, m: self.n * o.m + o.n * self.m }
    }
    fn kronecker(self, o: Self) -> Self {
        Counts { n: self.n * o.n, m: 2 * self.m * o.m }
    }
}

/// Order and size of the recipe output for an input with counts `g`.
pub fn expected_counts(recipe: &Recipe, g: Counts, p: usize) -> Counts {
    let ambient = recipe.ambient_for(g.n);
    let kp = Counts::complete(p);
    let ep = Counts::empty(p);
    let kpp = Counts::empty(p).join(Counts::empty(p));
    match recipe.id {
        UnionEmpty | UnionEmptyQ => g.union(ep),
        ComplementJoinComplete => g.complement().join(kp),
        JoinEmpty => g.join(ep),
        JoinEmptyBipartiteComplement if recipe.assume_bar_typo => g.join(kpp),
        JoinEmptyBipartiteComplement => g.join(kpp.complement()),
        ComplementUnionComplete => g.complement().union(kp),
        KnMinusJoinComplete => g.kn_minus(ambient).join(kp),
        KnMinusUnionComplete => g.kn_minus(ambient).union(kp),
        CartUnionEmpty | CartUnionEmptyQ => g.union(ep).cartesian(kp),
        CartUnionEmptyBipartiteQ => g.union(ep).cartesian(kpp),
        CartKnMinusUnion => g.kn_minus(ambient).union(kp).cartesian(kp),
        CartComplementUnion => g.complement().union(kp).cartesian(kp),
        CartComplementJoin => g.complement().join(kp).cartesian(kp),
        CartKnMinusJoin => g.kn_minus(ambient).join(kp).cartesian(kp),
        CartJoinEmpty => g.join(ep).cartesian(kp),
        JoinCompleteUnionEmpty => g.join(kp).union(ep),
        DirectCartesian => g.cartesian(kp),
        KronJoinEmpty => g.join(ep).kronecker(kp),
        KronUnionEmpty | KronUnionEmptyQ => g.union(ep).kronecker(kp),
        JoinPairs => g.join(g),
        MultiJoin => (1..p.max(1)).fold(g, |acc, _| acc.join(g)),
    }
}

/// Builds the recipe output for a single input graph, without checking the
/// hypothesis.
pub fn build(recipe: &Recipe, g: &Graph, p: usize) -> Result<Graph> {
    let expected = expected_counts(recipe, Counts::of(g), p);
    if expected.n > MAX_ORDER {
        return Err(Error::TooLarge(expected.n));
    }
    let ambient = recipe.ambient_for(g.order());
    let kp = || Graph::complete(p);
    let ep = || Graph::empty(p);
    let kpp = || Graph::complete_bipartite(p, p);
    let kn_minus = || Graph::kn_minus_edges(ambient, g);
    Ok(match recipe.id {
        UnionEmpty | UnionEmptyQ => g.union(&ep()),
        ComplementJoinComplete => g.complement().join(&kp()),
        JoinEmpty => g.join(&ep()),
        JoinEmptyBipartiteComplement if recipe.assume_bar_typo => g.join(&kpp()),
        JoinEmptyBipartiteComplement => g.join(&kpp().complement()),
        ComplementUnionComplete => g.complement().union(&kp()),
        KnMinusJoinComplete => kn_minus()?.join(&kp()),
        KnMinusUnionComplete => kn_minus()?.union(&kp()),
        CartUnionEmpty | CartUnionEmptyQ => g.union(&ep()).cartesian_product(&kp()),
        CartUnionEmptyBipartiteQ => g.union(&ep()).cartesian_product(&kpp()),
        CartKnMinusUnion => kn_minus()?.union(&kp()).cartesian_product(&kp()),
        CartComplementUnion => g.complement().union(&kp()).cartesian_product(&kp()),
        CartComplementJoin => g.complement().join(&kp()).cartesian_product(&kp()),
        CartKnMinusJoin => kn_minus()?.join(&kp()).cartesian_product(&kp()),
        CartJoinEmpty => g.join(&ep()).cartesian_product(&kp()),
        JoinCompleteUnionEmpty => g.join(&kp()).union(&ep()),
        DirectCartesian => g.cartesian_product(&kp()),
        KronJoinEmpty => g.join(&ep()).kronecker_product(&kp()),
        KronUnionEmpty | KronUnionEmptyQ => g.union(&ep()).kronecker_product(&kp()),
        JoinPairs => g.join(g),
        MultiJoin => (1..p.max(1)).fold(g.clone(), |acc, _| acc.join(g)),
    })
}

/// Graph product used as the last step of a recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    Cartesian,
    Kronecker,
}

/// For product recipes, the product and its two factors `(X, F)` with
/// output `X × F` or `X ⊗ F`.
pub fn product_factors(recipe: &Recipe, g: &Graph, p: usize) -> Result<Option<(Product, Graph, Graph)>> {
    let inner = |id| build(&Recipe { id, ..*recipe }, g, p);
    let kp = Graph::complete(p);
    Ok(Some(match recipe.id {
        CartUnionEmpty | CartUnionEmptyQ => (Product::Cartesian, inner(UnionEmpty)?, kp),
        CartUnionEmptyBipartiteQ => (Product::Cartesian, inner(UnionEmpty)?, Graph::complete_bipartite(p, p)),
        CartKnMinusUnion => (Product::Cartesian, inner(KnMinusUnionComplete)?, kp),
        CartComplementUnion => (Product::Cartesian, inner(ComplementUnionComplete)?, kp),
        CartComplementJoin => (Product::Cartesian, inner(ComplementJoinComplete)?, kp),
        CartKnMinusJoin => (Product::Cartesian, inner(KnMinusJoinComplete)?, kp),
        CartJoinEmpty => (Product::Cartesian, inner(JoinEmpty)?, kp),
        DirectCartesian => (Product::Cartesian, g.clone(), kp),
        KronJoinEmpty => (Product::Kronecker, inner(JoinEmpty)?, kp),
        KronUnionEmpty | KronUnionEmptyQ => (Product::Kronecker, inner(UnionEmpty)?, kp),
        _ => return Ok(None),
    }))
}

/// Builds the recipe output pair once the hypothesis has been confirmed.
pub fn construct_for(recipe: &Recipe, pair: &PairProfile, p: usize) -> Result<(Graph, Graph)> {
    let pre = precondition_for(recipe, pair, p)?;
    if let Some(clause) = pre.failing_clause(recipe.id) {
        return Err(Error::PreconditionFailed { recipe: recipe.id.as_str(), p, clause });
    }
    Ok((build(recipe, &pair.first.graph, p)?, build(recipe, &pair.second.graph, p)?))
}

pub fn construct(recipe: &Recipe, g1: &Graph, g2: &Graph, p: usize) -> Result<(Graph, Graph)> {
    construct_for(recipe, &PairProfile::new(g1, g2)?, p)
}

/// `count` consecutive constructions starting at `p_from`.
pub fn sequence(recipe: &Recipe, g1: &Graph, g2: &Graph, p_from: usize, count: usize) -> Result<Vec<(usize, Graph, Graph)>> {
    let pair = PairProfile::new(g1, g2)?;
    (p_from..p_from + count).map(|p| construct_for(recipe, &pair, p).map(|(h1, h2)| (p, h1, h2))).collect()
}

fn check_equienergetic(a: &Graph, b: &Graph) -> Result<()> {
    if (a.order(), a.size()) != (b.order(), b.size()) {
        return Err(Error::MismatchedPair { n1: a.order(), m1: a.size(), n2: b.order(), m2: b.size() });
    }
    let diff = (spectra::laplacian_energy(a)? - spectra::laplacian_energy(b)?).abs();
    if diff > ENERGY_EQ_TOL * a.order() as f64 {
        return Err(Error::NotEquienergeticInput { diff });
    }
    Ok(())
}

/// `(G1 ∨ G2, G1' ∨ G2')` for L-equienergetic pairs `(G1, G1')`, `(G2, G2')`
/// sharing order and size.
pub fn join_pairs(g1: &Graph, g2: &Graph, g1p: &Graph, g2p: &Graph) -> Result<(Graph, Graph)> {
    multi_join(&[(g1.clone(), g1p.clone()), (g2.clone(), g2p.clone())])
}

/// Left fold of joins over the first and second members of each pair.
pub fn multi_join(pairs: &[(Graph, Graph)]) -> Result<(Graph, Graph)> {
    if pairs.len() < 2 {
        return Err(Error::TooFewPairs(pairs.len()));
    }
    let (n, m) = (pairs[0].0.order(), pairs[0].0.size());
    for (a, b) in pairs {
        if (a.order(), a.size()) != (n, m) {
            return Err(Error::MismatchedPair { n1: n, m1: m, n2: a.order(), m2: a.size() });
        }
        check_equienergetic(a, b)?;
    }
    let fold = |pick: fn(&(Graph, Graph)) -> &Graph| pairs[1..].iter().fold(pick(&pairs[0]).clone(), |acc, pr| acc.join(pick(pr)));
    Ok((fold(|pr| &pr.0), fold(|pr| &pr.1)))
}

/// A printed closed-form energy and its re-derived alternates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedForm {
    pub recipe: RecipeId,
    pub formula_value: f64,
    pub variant_values: Vec<f64>,
}

/// Which closed form a directly computed energy agrees with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosedFormMatch {
    Paper,
    Variant,
    Neither,
}

impl ClosedForm {
    /// Printed form wins if it agrees within `tol`, then any variant.
    pub fn arbitrate(&self, direct: f64, tol: f64) -> ClosedFormMatch {
        if (direct - self.formula_value).abs() < tol {
            ClosedFormMatch::Paper
        } else if self.variant_values.iter().any(|v| (direct - v).abs() < tol) {
            ClosedFormMatch::Variant
        } else {
            ClosedFormMatch::Neither
        }
    }
}

/// Evaluates the printed closed-form energy of a recipe output.
///
/// `n`, `m` describe the input graphs. `energies` supplies `LE` of the
/// joined graphs for `R22` (two values) and `R23` (one per factor, so
/// `k = energies.len()`); other recipes ignore it.
pub fn closed_form_energy(id: RecipeId, n: usize, m: usize, p: usize, energies: &[f64]) -> Result<ClosedForm> {
    let (nf, mf, pf) = (n as f64, m as f64, p as f64);
    let two_m = 2.0 * mf;
    let d = two_m / (pf + nf);
    let (formula_value, variant_values) = match id {
        UnionEmpty => (two_m + (pf - nf - 2.0) * d, vec![two_m + (pf - nf + 2.0) * d]),
        ComplementJoinComplete => {
            let avg = pf + nf - 1.0 - d;
            ((nf - pf) * avg + (pf + nf) * (pf - nf + 1.0), vec![two_m + (pf - nf + 1.0) * (1.0 + d) + avg])
        }
        JoinEmpty => {
            let avg = (two_m + 2.0 * pf * nf) / (pf + nf);
            ((pf - nf) * avg + 2.0 * (mf + nf), Vec::new())
        }
        DirectCartesian => {
            let a = two_m / nf;
            (two_m * (pf - 2.0) + nf * (pf - 2.0) * (1.0 - a) + pf * nf, vec![(pf - 1.0) * (two_m + (nf - 2.0) * (1.0 - a) + nf)])
        }
        JoinPairs => {
            let [e1, e2] = energies else {
                return Err(Error::InvalidArgument(format!("join-pairs closed form needs 2 energies, got {}", energies.len())));
            };
            (2.0 * nf + e1 + e2 - 2.0 * two_m / nf, Vec::new())
        }
        MultiJoin => {
            if energies.is_empty() {
                return Err(Error::InvalidArgument("multi-join closed form needs at least one energy".into()));
            }
            let k = energies.len() as f64;
            (energies.iter().sum::<f64>() + 2.0 * nf * (k - 1.0) - (2.0 * k - 2.0) * two_m / nf, Vec::new())
        }
        other => return Err(Error::NoClosedForm(other.as_str())),
    };
    Ok(ClosedForm { recipe: id, formula_value, variant_values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::laplacian_energy;
    use crate::testutil::arb_graph;
    use proptest::prelude::*;

    fn r(id: RecipeId) -> Recipe {
        Recipe::new(id)
    }

    fn triangle_with_tail() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap()
    }

    #[test]
    fn recipe_ids_round_trip() {
        for id in RecipeId::ALL {
            assert_eq!(id.as_str().parse::<RecipeId>().unwrap(), id);
            assert_eq!(format!("R{}", id.number()).parse::<RecipeId>().unwrap(), id);
            assert_eq!(id.slug().parse::<RecipeId>().unwrap(), id);
        }
        assert_eq!(CartUnionEmpty.as_str(), "R9:cart-union-empty");
        assert!("R24".parse::<RecipeId>().is_err());
        assert!("R0".parse::<RecipeId>().is_err());
        assert!("R9:union-empty".parse::<RecipeId>().is_err());
    }

    #[test]
    fn huge_p_satisfies_union_empty() {
        let (g1, g2) = (Graph::cycle(6), triangle_with_tail());
        let pre = check_precondition(&r(UnionEmpty), &g1, &g2, 100_000).unwrap();
        assert!(pre.satisfied && pre.threshold < 1e-3 && pre.bound > 0.0);
    }

    #[test]
    fn path_three_fails_complement_join_hypothesis() {
        let p3 = Graph::path(3);
        for p in [1, 10, 1000] {
            let pre = check_precondition(&r(ComplementJoinComplete), &p3, &p3, p).unwrap();
            assert!(!pre.connectivity_ok && !pre.satisfied);
        }
        assert!(matches!(minimal_p(&r(ComplementJoinComplete), &p3, &p3), Err(Error::ConditionUnsatisfiable { .. })));
    }

    #[test]
    fn five_cycle_union_empty_at_five() {
        let c5 = Graph::cycle(5);
        let pre = check_precondition(&r(UnionEmpty), &c5, &c5, 5).unwrap();
        assert!((pre.threshold - 1.0).abs() < 1e-15);
        let want = 2.0 - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos();
        assert!((pre.bound - want).abs() < 1e-10);
        assert!(pre.satisfied);
        assert_eq!(minimal_p(&r(UnionEmpty), &c5, &c5).unwrap(), 3);
    }

    #[test]
    fn minimal_p_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(minimal_p(&r(UnionEmpty), &k4, &k4).unwrap(), 1);
        assert_eq!(minimal_p(&r(ComplementUnionComplete), &k4, &k4).unwrap(), 8);
        let p4 = Graph::path(4);
        assert!(matches!(minimal_p(&r(CartComplementJoin), &p4, &p4), Err(Error::ConditionUnsatisfiable { .. })));
    }

    #[test]
    fn precondition_errors() {
        let c5 = Graph::cycle(5);
        assert!(matches!(check_precondition(&r(UnionEmpty), &c5, &Graph::path(5), 3), Err(Error::MismatchedPair { .. })));
        let split = Graph::cycle(3).union(&Graph::path(2));
        let other = Graph::path(5);
        assert_eq!(split.size(), 4);
        assert!(matches!(check_precondition(&r(UnionEmpty), &split, &other, 3), Err(Error::Disconnected { .. })));
        assert!(matches!(check_precondition(&r(KnMinusJoinComplete).with_ambient(4), &c5, &c5, 3), Err(Error::SubgraphTooLarge { .. })));
    }

    #[test]
    fn direct_cartesian_only_for_complete_inputs() {
        let k5 = Graph::complete(5);
        let pre = check_precondition(&r(DirectCartesian), &k5, &k5, 6).unwrap();
        assert!(pre.satisfied, "{pre:?}");
        let c5 = Graph::cycle(5);
        assert!(matches!(minimal_p(&r(DirectCartesian), &c5, &c5), Err(Error::ConditionUnsatisfiable { .. })));
    }

    #[test]
    fn construct_sizes() {
        let (g1, g2) = (Graph::cycle(6), triangle_with_tail());
        let p = minimal_p(&r(UnionEmpty), &g1, &g2).unwrap();
        assert_eq!(p, 31);
        let (h1, h2) = construct(&r(UnionEmpty), &g1, &g2, p).unwrap();
        assert_eq!((h1.order(), h1.size()), (37, 6));
        assert_eq!((h2.order(), h2.size()), (37, 6));
        let g1 = Graph::cycle(5);

        let k5 = Graph::complete(5);
        let (h, _) = construct(&r(CartUnionEmpty), &k5, &k5, 6).unwrap();
        assert_eq!(h.order(), (5 + 6) * 6);
        let h = build(&r(CartUnionEmpty), &g1, 3).unwrap();
        assert_eq!(h.order(), 24);

        let n = 5;
        let h = build(&r(JoinCompleteUnionEmpty), &g1, n).unwrap();
        assert_eq!((h.order(), h.size()), (3 * n, 5 + n * (n - 1) / 2 + n * n));
    }

    #[test]
    fn construct_rejects_failed_precondition() {
        let c5 = Graph::cycle(5);
        let err = construct(&r(UnionEmpty), &c5, &c5, 1).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed { p: 1, .. }), "{err}");
        let err = construct(&r(JoinEmpty), &c5, &c5, 4).unwrap_err();
        assert!(err.to_string().contains("below the floor"), "{err}");
    }

    #[test]
    fn sequence_lengths() {
        let c5 = Graph::cycle(5);
        let p0 = minimal_p(&r(UnionEmpty), &c5, &c5).unwrap();
        assert!(sequence(&r(UnionEmpty), &c5, &c5, p0, 0).unwrap().is_empty());
        let one = sequence(&r(UnionEmpty), &c5, &c5, p0, 1).unwrap();
        assert_eq!(one, vec![(p0, construct(&r(UnionEmpty), &c5, &c5, p0).unwrap().0, construct(&r(UnionEmpty), &c5, &c5, p0).unwrap().1)]);
        let five = sequence(&r(UnionEmpty), &c5, &c5, p0, 5).unwrap();
        assert_eq!(five.iter().map(|t| t.0).collect::<Vec<_>>(), (p0..p0 + 5).collect::<Vec<_>>());
        assert!(matches!(sequence(&r(UnionEmpty), &c5, &c5, 1, 3), Err(Error::PreconditionFailed { p: 1, .. })));
    }

    #[test]
    fn closed_forms() {
        let cf = closed_form_energy(JoinPairs, 6, 7, 0, &[5.5, 5.5]).unwrap();
        assert!((cf.formula_value - (12.0 + 11.0 - 28.0 / 6.0)).abs() < 1e-12);

        let cf = closed_form_energy(MultiJoin, 6, 7, 0, &[4.25]).unwrap();
        assert!((cf.formula_value - 4.25).abs() < 1e-12);

        let cf = closed_form_energy(UnionEmpty, 5, 5, 5, &[]).unwrap();
        assert!((cf.formula_value - 8.0).abs() < 1e-12);
        assert!((cf.variant_values[0] - 12.0).abs() < 1e-12);
        let direct = laplacian_energy(&Graph::cycle(5).union(&Graph::empty(5))).unwrap();
        assert_eq!(cf.arbitrate(direct, 1e-8), ClosedFormMatch::Variant);

        assert_eq!(closed_form_energy(CartUnionEmpty, 5, 5, 6, &[]), Err(Error::NoClosedForm(CartUnionEmpty.as_str())));
        assert!(closed_form_energy(JoinPairs, 5, 5, 0, &[1.0]).is_err());
    }

    #[test]
    fn join_pairs_and_multi_join() {
        let c5 = Graph::cycle(5);
        let p0 = minimal_p(&r(UnionEmpty), &c5, &c5).unwrap();
        let (a, b) = construct(&r(UnionEmpty), &c5, &Graph::cycle(5).permuted(&[1, 2, 3, 4, 0]), p0).unwrap();
        let (h1, h2) = join_pairs(&a, &a, &b, &b).unwrap();
        assert_eq!(h1.order(), 2 * a.order());
        let (k1, k2) = multi_join(&[(a.clone(), b.clone()), (a.clone(), b.clone())]).unwrap();
        assert_eq!((&h1, &h2), (&k1, &k2));

        let same = join_pairs(&c5, &c5, &c5, &c5).unwrap();
        assert_eq!(same.0, same.1);

        assert_eq!(multi_join(&[(c5.clone(), c5.clone())]), Err(Error::TooFewPairs(1)));
        let p5_plus = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        assert!(matches!(join_pairs(&c5, &c5, &p5_plus, &c5), Err(Error::NotEquienergeticInput { .. })));
    }

    #[test]
    fn bar_typo_flag_switches_graph() {
        let c5 = Graph::cycle(5);
        let literal = build(&r(JoinEmptyBipartiteComplement), &c5, 5).unwrap();
        let typo = build(&r(JoinEmptyBipartiteComplement).with_bar_typo(true), &c5, 5).unwrap();
        assert_eq!(literal.order(), typo.order());
        assert_eq!(literal.size(), 5 + 2 * 10 + 50);
        assert_eq!(typo.size(), 5 + 25 + 50);
    }

    #[test]
    fn product_factors_rebuild_output() {
        let g = Graph::cycle(4);
        for id in RecipeId::ALL {
            let recipe = Recipe::new(id);
            let Some((prod, x, f)) = product_factors(&recipe, &g, 3).unwrap() else { continue };
            let h = match prod {
                Product::Cartesian => x.cartesian_product(&f),
                Product::Kronecker => x.kronecker_product(&f),
            };
            assert_eq!(h, build(&recipe, &g, 3).unwrap(), "{id}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn built_counts_match_symbolic_counts(g in arb_graph(2, 6), p in 1usize..6, extra in 0usize..3) {
            for id in RecipeId::ALL {
                let recipe = Recipe::new(id).with_ambient(g.order() + extra);
                let h = build(&recipe, &g, p).unwrap();
                prop_assert_eq!(Counts::of(&h), expected_counts(&recipe, Counts::of(&g), p), "{}", id);
            }
        }

        #[test]
        fn precondition_is_monotone_in_p(g1 in arb_graph(3, 6), seed in any::<u64>()) {
            let n = g1.order();
            let mut rng = crate::sample::rng(seed);
            let m = g1.size().max(n - 1);
            let (a, b) = (crate::sample::random_connected(&mut rng, n, m), crate::sample::random_connected(&mut rng, n, m));
            let pair = PairProfile::new(&a, &b).unwrap();
            for id in RecipeId::ALL {
                let recipe = Recipe::new(id);
                let mut seen = false;
                for p in 1..40 {
                    let ok = precondition_for(&recipe, &pair, p).unwrap().satisfied;
                    prop_assert!(!seen || ok, "{} lost satisfaction at p = {}", id, p);
                    seen |= ok;
                }
            }
        }
    }
}
