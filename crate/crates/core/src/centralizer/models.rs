use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rootsys::{CartanType, Rat, RootSystem};

use super::CentralizerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelName {
    Adjoint,
    SimplyConnected,
    Gl,
    SlStandard,
    SoOdd,
    SoEven,
    Sp,
}

impl ModelName {
    pub const ALL: [ModelName; 7] = [
        ModelName::Adjoint,
        ModelName::SimplyConnected,
        ModelName::Gl,
        ModelName::SlStandard,
        ModelName::SoOdd,
        ModelName::SoEven,
        ModelName::Sp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::Adjoint => "adjoint",
            ModelName::SimplyConnected => "simply-connected",
            ModelName::Gl => "gl",
            ModelName::SlStandard => "sl-standard",
            ModelName::SoOdd => "so-odd",
            ModelName::SoEven => "so-even",
            ModelName::Sp => "sp",
        }
    }

    pub fn applies_to(self, ty: CartanType) -> bool {
        match self {
            ModelName::Adjoint | ModelName::SimplyConnected => true,
            ModelName::Gl | ModelName::SlStandard => ty == CartanType::A,
            ModelName::SoOdd => ty == CartanType::B,
            ModelName::SoEven => ty == CartanType::D,
            ModelName::Sp => ty == CartanType::C,
        }
    }

    /// Models of the groups whose centralizers are conjectured to be connected.
    pub fn connectedness_conjectured(self) -> bool {
        matches!(self, ModelName::Gl | ModelName::SoOdd | ModelName::Sp)
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelName {
    type Err = CentralizerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| CentralizerError::UnknownModel(s.to_string()))
    }
}

/// Character lattice `ℤ^N` of a maximal torus with the simple roots written in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusLatticeModel {
    pub name: String,
    #[serde(skip)]
    pub preset: Option<ModelName>,
    pub lattice_rank: usize,
    /// Row `i` is `α_i` in lattice coordinates.
    pub roots: Vec<Vec<i64>>,
    /// Optional form on `ℤ^N ⊗ ℚ` realizing the root Gram matrix.
    #[serde(skip)]
    pub pairing: Option<Vec<Vec<Rat>>>,
}

#[derive(Deserialize)]
struct ModelJson {
    name: String,
    lattice_rank: usize,
    roots: Vec<Vec<i64>>,
    #[serde(default)]
    pairing: Option<Vec<Vec<String>>>,
}

fn diag(n: usize, d: Rat) -> Vec<Vec<Rat>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { d } else { Rat::from(0) }).collect()).collect()
}

impl TorusLatticeModel {
    pub fn preset(name: ModelName, rs: &RootSystem) -> Result<Self, CentralizerError> {
        let n = rs.rank;
        let ty = rs.ty;
        if !name.applies_to(ty) || (name == ModelName::SoEven && n < 2) {
            return Err(CentralizerError::ModelMismatch(format!("{name} does not apply to {}", rs.label())));
        }
        let unit = |len: usize, i: usize| -> Vec<i64> { (0..len).map(|k| i64::from(k == i)).collect() };
        let diff = |len: usize, i: usize| -> Vec<i64> { (0..len).map(|k| i64::from(k == i) - i64::from(k == i + 1)).collect() };
        let (lattice_rank, roots, pairing) = match name {
            ModelName::Adjoint => (n, (0..n).map(|i| unit(n, i)).collect(), Some(rs.gram())),
            ModelName::SimplyConnected => (n, (0..n).map(|i| (0..n).map(|j| rs.cartan[j][i]).collect()).collect(), None),
            ModelName::Gl => (n + 1, (0..n).map(|i| diff(n + 1, i)).collect(), Some(diag(n + 1, Rat::from(1)))),
            ModelName::SlStandard => {
                let mut roots: Vec<Vec<i64>> = (0..n.saturating_sub(1)).map(|i| diff(n, i)).collect();
                roots.push((0..n).map(|k| if k + 1 == n { 2 } else { 1 }).collect());
                (n, roots, None)
            }
            ModelName::SoOdd | ModelName::SoEven | ModelName::Sp => {
                let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i)).collect();
                let last = match name {
                    ModelName::SoOdd => unit(n, n - 1),
                    ModelName::Sp => (0..n).map(|k| if k + 1 == n { 2 } else { 0 }).collect(),
                    _ => (0..n).map(|k| i64::from(k + 2 >= n)).collect(),
                };
                roots.push(last);
                let scale = if name == ModelName::Sp { Rat::new(1, 2) } else { Rat::from(1) };
                (n, roots, Some(diag(n, scale)))
            }
        };
        Ok(TorusLatticeModel { name: name.to_string(), preset: Some(name), lattice_rank, roots, pairing })
    }

    /// Parses a user-defined model: `{"name", "lattice_rank", "roots", "pairing"?}`.
    pub fn from_json(s: &str) -> Result<Self, CentralizerError> {
        let j: ModelJson = serde_json::from_str(s).map_err(|e| CentralizerError::BadModel(e.to_string()))?;
        if j.roots.iter().any(|r| r.len() != j.lattice_rank) {
            return Err(CentralizerError::BadModel("root vector length differs from lattice_rank".into()));
        }
        let pairing = match j.pairing {
            None => None,
            Some(p) => Some(
                p.iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| x.parse::<Rat>().map_err(|_| CentralizerError::BadModel(format!("bad rational {x:?}"))))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(TorusLatticeModel { name: j.name, preset: None, lattice_rank: j.lattice_rank, roots: j.roots, pairing })
    }

    pub fn check_rank(&self, rs: &RootSystem) -> Result<(), CentralizerError> {
        if self.roots.len() != rs.rank {
            return Err(CentralizerError::ModelMismatch(format!(
                "model {} has {} simple roots, {} needs {}",
                self.name,
                self.roots.len(),
                rs.label(),
                rs.rank
            )));
        }
        Ok(())
    }

    /// True iff `R·P·Rᵀ` reproduces the root Gram matrix (vacuously true without a pairing).
    pub fn pairing_matches(&self, rs: &RootSystem) -> bool {
        let Some(p) = &self.pairing else {
            return true;
        };
        let g = rs.gram();
        let n = self.roots.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut acc = Rat::from(0);
                for a in 0..self.lattice_rank {
                    for b in 0..self.lattice_rank {
                        acc += Rat::from(self.roots[i][a] * self.roots[j][b]) * p[a][b];
                    }
                }
                acc == g[i][j]
            })
        })
    }

    /// A weight in simple-root coordinates, written in lattice coordinates.
    pub fn to_lattice(&self, weight: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.lattice_rank];
        for (c, row) in weight.iter().zip(&self.roots) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }
}
