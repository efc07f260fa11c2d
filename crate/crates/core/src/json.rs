//! JSON wire formats. Rationals are strings `"p/q"`; integers are accepted on input.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{FrobeniusManifold, GFrobeniusAlgebra};
use crate::group::{Elem, FiniteGroup};
use crate::matrix::Matrix;
use crate::module::{GradedModule, TensorElement};
use crate::poly::MultiPoly;
use crate::rational::{QStr, Rational};

pub type MatrixJson = Vec<Vec<QStr>>;

fn qs(v: &[Rational]) -> Vec<QStr> {
    v.iter().cloned().map(QStr).collect()
}

fn unq(v: &[QStr]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.to_rows().iter().map(|r| qs(r)).collect()
}

/// Empty row lists are read as `0×0`.
pub fn matrix_from_json(m: &MatrixJson) -> Result<Matrix> {
    if m.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    Matrix::from_rows(m.iter().map(|r| unq(r)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<Elem>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            table: g.table().to_vec(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!(
                "order {} but {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.table.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: QStr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &MultiPoly) -> Self {
        let p = p.trim();
        PolyJson {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: QStr(c.clone()),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        MultiPoly::from_terms(
            &self.vars,
            self.terms.iter().map(|t| (t.exp.clone(), t.coef.0.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub group: GroupJson,
    pub dim: usize,
    pub degrees: Vec<Elem>,
    /// `ρ(γ)` keyed by the element index.
    pub action: BTreeMap<String, MatrixJson>,
}

impl ModuleJson {
    pub fn from_module(h: &GradedModule) -> Self {
        ModuleJson {
            group: GroupJson::from_group(h.group()),
            dim: h.dim(),
            degrees: h.degrees().to_vec(),
            action: h
                .action()
                .iter()
                .enumerate()
                .map(|(i, m)| (i.to_string(), matrix_to_json(m)))
                .collect(),
        }
    }

    pub fn to_module(&self) -> Result<GradedModule> {
        let g = self.group.to_group()?;
        if self.degrees.len() != self.dim {
            return Err(Error::Parse(format!(
                "{} degrees for dimension {}",
                self.degrees.len(),
                self.dim
            )));
        }
        let mut action = Vec::with_capacity(g.order());
        for el in g.elements() {
            let m = match self.action.get(&el.to_string()) {
                Some(m) => matrix_from_json(m)?,
                None if el == g.identity() => Matrix::identity(self.dim),
                None => return Err(Error::Parse(format!("no matrix for element {el}"))),
            };
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(Error::Parse(format!(
                    "matrix for element {el} is not {0}x{0}",
                    self.dim
                )));
            }
            action.push(m);
        }
        if let Some(k) = self
            .action
            .keys()
            .find(|k| k.parse::<usize>().map_or(true, |i| i >= g.order()))
        {
            return Err(Error::Parse(format!("unknown element key `{k}`")));
        }
        GradedModule::new(Arc::new(g), self.degrees.clone(), action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub idx: Vec<usize>,
    pub coef: QStr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub n: usize,
    pub terms: Vec<TensorTermJson>,
}

impl TensorJson {
    pub fn from_tensor(t: &TensorElement) -> Self {
        TensorJson {
            n: t.n(),
            terms: t
                .terms()
                .iter()
                .map(|(i, c)| TensorTermJson {
                    idx: i.clone(),
                    coef: QStr(c.clone()),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<TensorElement> {
        TensorElement::from_terms(
            self.n,
            self.terms.iter().map(|t| (t.idx.clone(), t.coef.0.clone())),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricJson {
    pub coords: Vec<String>,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfaJson {
    pub module: ModuleJson,
    pub metric: MatrixJson,
    /// `structure[a][b][l]`: coefficient of `e_l` in `e_a · e_b`.
    pub structure: Vec<Vec<Vec<QStr>>>,
    pub unit: Vec<QStr>,
}

impl GfaJson {
    pub fn from_algebra(a: &GFrobeniusAlgebra) -> Self {
        GfaJson {
            module: ModuleJson::from_module(&a.module),
            metric: matrix_to_json(&a.metric),
            structure: a
                .structure
                .iter()
                .map(|row| row.iter().map(|v| qs(v)).collect())
                .collect(),
            unit: qs(&a.unit),
        }
    }

    pub fn to_algebra(&self) -> Result<GFrobeniusAlgebra> {
        let module = self.module.to_module()?;
        let n = module.dim();
        let metric = matrix_from_json(&self.metric)?;
        let ok = self.structure.len() == n
            && self
                .structure
                .iter()
                .all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && self.unit.len() == n
            && metric.rows() == n
            && metric.cols() == n;
        if !ok {
            return Err(Error::Parse(format!(
                "structure, metric or unit does not match dimension {n}"
            )));
        }
        Ok(GFrobeniusAlgebra {
            module,
            metric,
            structure: self
                .structure
                .iter()
                .map(|r| r.iter().map(|v| unq(v)).collect())
                .collect(),
            unit: unq(&self.unit),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldJson {
    pub coords: Vec<String>,
    pub metric: MatrixJson,
    pub potential: PolyJson,
}

impl ManifoldJson {
    pub fn from_manifold(f: &FrobeniusManifold) -> Self {
        ManifoldJson {
            coords: f.coords.clone(),
            metric: matrix_to_json(&f.metric),
            potential: PolyJson::from_poly(&f.potential),
        }
    }

    pub fn to_manifold(&self) -> Result<FrobeniusManifold> {
        let metric = matrix_from_json(&self.metric)?;
        if metric.rows() != self.coords.len() || metric.cols() != self.coords.len() {
            return Err(Error::Parse(format!(
                "metric does not match {} coordinates",
                self.coords.len()
            )));
        }
        Ok(FrobeniusManifold {
            coords: self.coords.clone(),
            metric,
            potential: self.potential.to_poly()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreGfmJson {
    pub module: ModuleJson,
    pub metric: MatrixJson,
    pub coords: Vec<String>,
    pub potential: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssembleJson {
    pub untwisted: ManifoldJson,
    pub invariant: ManifoldJson,
    /// Columns embed the shared subspace into the untwisted coordinates.
    pub iota_e: MatrixJson,
    pub iota_g: MatrixJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::z3_rotation_module;
    use crate::rational::q;

    #[test]
    fn module_round_trip() {
        let h = z3_rotation_module().unwrap();
        let j = ModuleJson::from_module(&h);
        let s = serde_json::to_string(&j).unwrap();
        let back: ModuleJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_module().unwrap(), h);
    }

    #[test]
    fn poly_round_trip_and_integer_coefficients() {
        let p = MultiPoly::monomial(q(-1, 60), &[("t_2", 5)]);
        let j = PolyJson::from_poly(&p);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"vars":["t_2"],"terms":[{"exp":[5],"coef":"-1/60"}]}"#
        );
        let raw: PolyJson =
            serde_json::from_str(r#"{"vars":["x"],"terms":[{"exp":[2],"coef":3}]}"#).unwrap();
        assert_eq!(
            raw.to_poly().unwrap(),
            MultiPoly::monomial(crate::qi(3), &[("x", 2)])
        );
    }

    #[test]
    fn rejects_inconsistent_modules() {
        let mut j = ModuleJson::from_module(&z3_rotation_module().unwrap());
        j.degrees.pop();
        assert!(matches!(j.to_module(), Err(Error::Parse(_))));
    }
}
