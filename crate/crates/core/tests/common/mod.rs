#![allow(dead_code)]

use std::sync::OnceLock;

use gfrob_core::braided::{braidize, BraidedSeries};
use gfrob_core::fixtures::{equivariant_average, small_modules};
use gfrob_core::module::{GradedModule, ModuleMorphism, TensorElement};
use gfrob_core::{qi, Matrix};
use rand::Rng;

pub fn modules() -> &'static [(String, GradedModule)] {
    static CELL: OnceLock<Vec<(String, GradedModule)>> = OnceLock::new();
    CELL.get_or_init(|| small_modules().expect("fixtures"))
}

pub fn random_tensor<R: Rng>(rng: &mut R, dim: usize, n: usize, terms: usize) -> TensorElement {
    let mut t = TensorElement::zero(n);
    for _ in 0..terms {
        let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..dim)).collect();
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            t.add_term(idx, qi(c));
        }
    }
    t
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| qi(rng.gen_range(-2..=2))).collect())
        .collect();
    Matrix::from_rows(data).unwrap_or_else(|_| Matrix::zeros(rows, cols))
}

/// Equivariant graded map obtained by averaging a random matrix.
pub fn random_morphism<R: Rng>(
    rng: &mut R,
    source: &GradedModule,
    target: &GradedModule,
) -> ModuleMorphism {
    let m = random_matrix(rng, target.dim(), source.dim());
    let avg = equivariant_average(source, target, &m);
    ModuleMorphism::new(source.clone(), target.clone(), avg).expect("averaged map is a morphism")
}

/// Braided series with a few random terms in every degree.
pub fn random_series<R: Rng>(
    rng: &mut R,
    module: &GradedModule,
    truncation: usize,
) -> BraidedSeries {
    let parts = (0..=truncation)
        .map(|d| {
            let t = random_tensor(rng, module.dim(), d, 3);
            braidize(module, &t).expect("braidize")
        })
        .collect();
    BraidedSeries::new(module.clone(), truncation, parts).expect("braided parts")
}

/// Pairs of fixture modules over the same group.
pub fn same_group_pairs() -> Vec<(usize, usize)> {
    let ms = modules();
    let mut out = Vec::new();
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            if ms[i].1.group() == ms[j].1.group() {
                out.push((i, j));
            }
        }
    }
    out
}
