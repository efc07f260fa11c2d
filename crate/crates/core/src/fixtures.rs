//! Small modules used by the tests, benchmarks and the command-line tool.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{cyclic_group, symmetric_group, Elem, FiniteGroup};
use crate::matrix::Matrix;
use crate::module::GradedModule;
use crate::rational::{qi, Rational};

/// Span of `e_m` for `m` in a union of conjugacy classes, with
/// `ρ(γ) e_m = e_{γ m γ^{-1}}` and `deg e_m = m`. Always self-invariant.
pub fn conjugation_module(group: Arc<FiniteGroup>, elements: &[Elem]) -> Result<GradedModule> {
    let pos = |m: Elem| elements.iter().position(|&x| x == m);
    let mut action = Vec::with_capacity(group.order());
    for el in group.elements() {
        let mut m = Matrix::zeros(elements.len(), elements.len());
        for (j, &x) in elements.iter().enumerate() {
            let i = pos(group.conj(el, x)).ok_or_else(|| {
                Error::InvalidAction(format!("{x} is conjugate to an element outside the basis"))
            })?;
            m[(i, j)] = qi(1);
        }
        action.push(m);
    }
    GradedModule::new(group, elements.to_vec(), action)
}

/// Z/3Z acting on `H_e = k²` by the rotation `[[0, -1], [1, -1]]` and
/// trivially on a one-dimensional `H_1`.
pub fn z3_rotation_module() -> Result<GradedModule> {
    let g = Arc::new(cyclic_group(3)?);
    let r = Matrix::from_rows(vec![
        vec![qi(0), qi(-1), qi(0)],
        vec![qi(1), qi(-1), qi(0)],
        vec![qi(0), qi(0), qi(1)],
    ])?;
    let r2 = r.mul(&r);
    GradedModule::new(g, vec![0, 0, 1], vec![Matrix::identity(3), r, r2])
}

/// Z/2Z module from degrees and the signs of a diagonal `ρ(g)`.
pub fn z2_sign_module(degrees: &[Elem], signs: &[i64]) -> Result<GradedModule> {
    let d: Vec<Rational> = signs.iter().map(|&s| qi(s)).collect();
    GradedModule::z2(degrees.to_vec(), Matrix::diagonal(&d))
}

/// Named modules of dimension at most four over the trivial group, Z/2Z,
/// Z/3Z and S_3.
pub fn small_modules() -> Result<Vec<(String, GradedModule)>> {
    let s3 = Arc::new(symmetric_group(3)?);
    let z3 = Arc::new(cyclic_group(3)?);
    let transpositions: Vec<Elem> = s3
        .conjugacy_classes()
        .into_iter()
        .find(|c| c.len() == 3)
        .unwrap();
    let three_cycles: Vec<Elem> = s3
        .conjugacy_classes()
        .into_iter()
        .find(|c| c.len() == 2)
        .unwrap();
    let mut s3_mixed = vec![s3.identity()];
    s3_mixed.extend(&transpositions);
    let mut s3_rot = vec![s3.identity()];
    s3_rot.extend(&three_cycles);
    Ok(vec![
        ("trivial-2".into(), GradedModule::trivial(2)),
        ("trivial-3".into(), GradedModule::trivial(3)),
        ("z2-ivg".into(), z2_sign_module(&[0, 0, 1], &[1, -1, 1])?),
        (
            "z2-iivg".into(),
            z2_sign_module(&[0, 0, 0, 1], &[1, 1, -1, 1])?,
        ),
        ("z2-gg".into(), z2_sign_module(&[1, 1], &[1, -1])?),
        (
            "z2-regular".into(),
            conjugation_module(Arc::new(cyclic_group(2)?), &[0, 1])?,
        ),
        ("z3-rotation".into(), z3_rotation_module()?),
        ("z3-regular".into(), conjugation_module(z3, &[0, 1, 2])?),
        (
            "s3-transpositions".into(),
            conjugation_module(s3.clone(), &transpositions)?,
        ),
        (
            "s3-e-transpositions".into(),
            conjugation_module(s3.clone(), &s3_mixed)?,
        ),
        ("s3-e-three-cycles".into(), conjugation_module(s3, &s3_rot)?),
    ])
}

/// `(1/|G|) Σ_γ ρ_K(γ) M ρ_H(γ)^{-1}`, after zeroing the entries of `m`
/// that do not preserve the grading: an equivariant graded map `H -> K`.
pub fn equivariant_average(source: &GradedModule, target: &GradedModule, m: &Matrix) -> Matrix {
    let g = source.group();
    let mut graded = m.clone();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if target.degree(r) != source.degree(c) {
                graded[(r, c)] = Rational::zero();
            }
        }
    }
    let mut sum = Matrix::zeros(m.rows(), m.cols());
    for el in g.elements() {
        sum = sum.add(&target.rho(el).mul(&graded).mul(source.rho(g.inv(el))));
    }
    sum.scale(&Rational::new(1.into(), (g.order() as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::ModuleMorphism;

    #[test]
    fn fixtures_are_valid() {
        for (name, h) in small_modules().unwrap() {
            assert!(h.dim() <= 4, "{name}");
            assert!(h.report().is_valid(), "{name}");
        }
        assert!(z3_rotation_module().unwrap().is_self_invariant());
    }

    #[test]
    fn averaging_gives_morphisms() {
        let h = z3_rotation_module().unwrap();
        let m = Matrix::from_rows(
            (0..3)
                .map(|i| (0..3).map(|j| qi((i * 3 + j) as i64 - 4)).collect())
                .collect(),
        )
        .unwrap();
        let avg = equivariant_average(&h, &h, &m);
        assert!(ModuleMorphism::new(h.clone(), h, avg).is_ok());
    }
}
