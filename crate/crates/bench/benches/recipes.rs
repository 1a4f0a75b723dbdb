use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use equienergy::constructions::{self, PairProfile};
use equienergy::verify::{self, Tolerances};
use equienergy::{Recipe, RecipeId};
use equienergy_bench::connected_pair;

fn minimal_p(c: &mut Criterion) {
    let (g1, g2) = connected_pair(7, 3);
    let pair = PairProfile::new(&g1, &g2).unwrap();
    c.bench_function("minimal_p/all_recipes", |b| {
        b.iter(|| {
            RecipeId::ALL.iter().filter_map(|&id| constructions::minimal_p_for(&Recipe::new(id), black_box(&pair)).ok()).sum::<usize>()
        })
    });
}

fn verify_union_empty(c: &mut Criterion) {
    let (g1, g2) = connected_pair(7, 4);
    let recipe = Recipe::new(RecipeId::UnionEmpty);
    let p = constructions::minimal_p(&recipe, &g1, &g2).unwrap();
    c.bench_function("verify_recipe/union-empty", |b| {
        b.iter(|| verify::verify_recipe(&recipe, black_box(&g1), black_box(&g2), p, &Tolerances::default()).unwrap())
    });
}

fn lemma_audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("audit_lemmas");
    group.sample_size(10);
    group.bench_function("20x6", |b| b.iter(|| verify::audit_lemmas(20, 6, black_box(5), &Tolerances::default()).unwrap()));
    group.finish();
}

criterion_group!(benches, minimal_p, verify_union_empty, lemma_audit);
criterion_main!(benches);
