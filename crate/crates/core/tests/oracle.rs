//! Cross-checks the Jacobi spectra against an unrelated eigenvalue method:
//! Householder reduction to tridiagonal form, then Sturm-count bisection.

use equienergy::constructions::{self, Recipe, RecipeId};
use equienergy::eigen::SymmetricMatrix;
use equienergy::spectra::{self, MatrixKind};
use equienergy::Graph;
use proptest::prelude::*;

fn dense(a: &SymmetricMatrix) -> Vec<Vec<f64>> {
    let n = a.order();
    (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect()
}

/// Householder tridiagonalization; returns (diagonal, off-diagonal).
fn tridiagonalize(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        let alpha = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let mut v = x.clone();
        v[0] += alpha.copysign(x[0]);
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- H A H with H = I - 2 v vᵀ / (vᵀv) acting on rows/cols k+1..n.
        let m = n - k - 1;
        let idx = |t: usize| k + 1 + t;
        let p: Vec<f64> = (0..n).map(|i| (0..m).map(|t| a[i][idx(t)] * v[t]).sum::<f64>() * 2.0 / vnorm2).collect();
        let vp: f64 = (0..m).map(|t| v[t] * p[idx(t)]).sum::<f64>() / vnorm2;
        let w: Vec<f64> = (0..n).map(|i| if i > k { p[i] - vp * v[i - k - 1] } else { p[i] }).collect();
        for i in 0..n {
            for j in 0..n {
                let vi = if i > k { v[i - k - 1] } else { 0.0 };
                let vj = if j > k { v[j - k - 1] } else { 0.0 };
                a[i][j] -= vi * w[j] + w[i] * vj;
            }
        }
    }
    let d = (0..n).map(|i| a[i][i]).collect();
    let e = (1..n).map(|i| a[i][i - 1]).collect();
    (d, e)
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
        q = d[i] - x - if i == 0 { 0.0 } else { off / q };
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues, non-increasing, by bisection.
fn oracle_eigenvalues(a: &SymmetricMatrix) -> Vec<f64> {
    let (d, e) = tridiagonalize(dense(a));
    let n = d.len();
    let radius = (0..n)
        .map(|i| d[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 })
        .fold(0.0, f64::max)
        + 1.0;
    let mut out: Vec<f64> = (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if sturm_count(&d, &e, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-13 {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    out.reverse();
    out
}

fn oracle_energy(g: &Graph, kind: MatrixKind) -> f64 {
    let a = match kind {
        MatrixKind::Laplacian => spectra::laplacian_matrix(g),
        MatrixKind::SignlessLaplacian => spectra::signless_laplacian_matrix(g),
    };
    let (n, two_m) = (g.order() as f64, 2.0 * g.size() as f64);
    oracle_eigenvalues(&a).iter().map(|x| (n * x - two_m).abs()).sum::<f64>() / n
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

#[test]
fn oracle_reproduces_known_spectra() {
    let c = oracle_eigenvalues(&spectra::laplacian_matrix(&Graph::cycle(4)));
    for (a, b) in c.iter().zip([4.0, 2.0, 2.0, 0.0]) {
        assert!((a - b).abs() < 1e-10, "{c:?}");
    }
    assert!((oracle_energy(&Graph::path(3), MatrixKind::Laplacian) - 10.0 / 3.0).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn jacobi_matches_bisection(g in arb_graph(24)) {
        for kind in [MatrixKind::Laplacian, MatrixKind::SignlessLaplacian] {
            let jacobi = spectra::spectrum(&g, kind).unwrap();
            let oracle = match kind {
                MatrixKind::Laplacian => oracle_eigenvalues(&spectra::laplacian_matrix(&g)),
                MatrixKind::SignlessLaplacian => oracle_eigenvalues(&spectra::signless_laplacian_matrix(&g)),
            };
            for (a, b) in jacobi.values.iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-9, "{:?} vs {:?}", jacobi.values, oracle);
            }
        }
    }
}

fn triangle_with_tail() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap()
}

#[test]
fn recipe_outputs_equal_under_the_oracle() {
    let (g1, g2) = (Graph::cycle(6), triangle_with_tail());
    for id in [
        RecipeId::UnionEmpty,
        RecipeId::JoinEmpty,
        RecipeId::ComplementUnionComplete,
        RecipeId::JoinCompleteUnionEmpty,
        RecipeId::CartUnionEmpty,
    ] {
        let recipe = Recipe::new(id);
        let p = constructions::minimal_p(&recipe, &g1, &g2).unwrap();
        // Bisection costs O(n) Sturm sweeps per eigenvalue; keep outputs small.
        let (h1, h2) = constructions::construct(&recipe, &g1, &g2, p).unwrap();
        if h1.order() > 200 {
            continue;
        }
        let (e1, e2) = (oracle_energy(&h1, MatrixKind::Laplacian), oracle_energy(&h2, MatrixKind::Laplacian));
        assert!((e1 - e2).abs() < 1e-8, "{id}: {e1} vs {e2}");
        assert!((e1 - spectra::laplacian_energy(&h1).unwrap()).abs() < 1e-8, "{id}");
    }
}

#[test]
fn union_empty_closed_form_under_the_oracle() {
    let direct = oracle_energy(&Graph::cycle(5).union(&Graph::empty(5)), MatrixKind::Laplacian);
    let cf = constructions::closed_form_energy(RecipeId::UnionEmpty, 5, 5, 5, &[]).unwrap();
    assert!((direct - cf.variant_values[0]).abs() < 1e-9);
    assert!((direct - cf.formula_value).abs() > 1.0);
}

#[test]
fn kronecker_rule_fails_under_the_oracle() {
    let k2 = Graph::complete(2);
    let direct = oracle_eigenvalues(&spectra::laplacian_matrix(&k2.kronecker_product(&k2)));
    for (a, b) in direct.iter().zip([2.0, 2.0, 0.0, 0.0]) {
        assert!((a - b).abs() < 1e-10, "{direct:?}");
    }
}
