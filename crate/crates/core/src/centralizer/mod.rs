//! The centralizer `C(G, r)` as a diagonalizable subgroup of a maximal torus.

mod models;
pub mod snf;

pub use models::{ModelName, TorusLatticeModel};

use serde::Serialize;
use thiserror::Error;

use crate::chevalley::ChevalleyAlgebra;
use crate::tensor::Tensor2;
use snf::{smith, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentralizerError {
    #[error("unknown lattice model {0:?}")]
    UnknownModel(String),
    #[error("lattice model mismatch: {0}")]
    ModelMismatch(String),
    #[error("invalid lattice model: {0}")]
    BadModel(String),
}

fn normalize_sign(v: &mut [i64]) {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Characters (in lattice coordinates) of all supported terms of `r` with nonzero weight,
/// up to sign, deduplicated and sorted.
pub fn constraint_lattice(
    alg: &ChevalleyAlgebra,
    r: &Tensor2,
    model: &TorusLatticeModel,
) -> Result<IntMatrix, CentralizerError> {
    model.check_rank(alg.root_system())?;
    let mut rows: Vec<Vec<i64>> = r
        .iter()
        .map(|((a, b), _)| model.to_lattice(&Tensor2::torus_character_of_term(alg, a, b)))
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|mut v| {
            normalize_sign(&mut v);
            v
        })
        .collect();
    rows.sort();
    rows.dedup();
    Ok(rows)
}

/// `C ≅ T × μ_{m_1} × ⋯ × μ_{m_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagGroupDecomposition {
    pub lattice_rank: usize,
    pub torus_rank: usize,
    pub divisors: Vec<i64>,
    /// All nonzero elementary divisors, including 1s.
    pub elementary_divisors: Vec<i64>,
    /// Characters whose values cut out each `μ_{m_i}` factor (rows of `V⁻¹`), aligned with `divisors`.
    pub factor_characters: Vec<Vec<i64>>,
    /// Characters spanning the torus part's character group.
    pub torus_characters: Vec<Vec<i64>>,
}

pub fn decompose(m: &IntMatrix, lattice_rank: usize) -> DiagGroupDecomposition {
    let s = smith(m, lattice_rank);
    let r = s.invariants.len();
    let mut divisors = Vec::new();
    let mut factor_characters = Vec::new();
    for (i, &d) in s.invariants.iter().enumerate() {
        if d > 1 {
            divisors.push(d);
            factor_characters.push(s.v_inv[i].clone());
        }
    }
    DiagGroupDecomposition {
        lattice_rank,
        torus_rank: lattice_rank - r,
        divisors,
        elementary_divisors: s.invariants.clone(),
        factor_characters,
        torus_characters: s.v_inv[r..].to_vec(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Trivial,
    Nontrivial,
    InjectsInto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Description {
    pub factors: Vec<String>,
    pub verdict: Verdict,
}

/// `H¹(K, C) = Π K×/(K×)^{m_i}`; nontriviality of the BD cohomology is asserted only when `cd1` holds.
pub fn h1_describe(dec: &DiagGroupDecomposition, cd1: bool) -> H1Description {
    let factors: Vec<String> = dec.divisors.iter().filter(|&&m| m > 1).map(|m| format!("Kx/(Kx)^{m}")).collect();
    let verdict = if factors.is_empty() {
        Verdict::Trivial
    } else if cd1 {
        Verdict::Nontrivial
    } else {
        Verdict::InjectsInto
    };
    H1Description { factors, verdict }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerAnalysis {
    pub model: String,
    pub constraints: IntMatrix,
    pub decomposition: DiagGroupDecomposition,
    pub h1: H1Description,
    /// Set when a model expected to give connected centralizers produced a finite factor.
    pub conjecture_counterexample: bool,
}

pub fn analyze(
    alg: &ChevalleyAlgebra,
    r: &Tensor2,
    model: &TorusLatticeModel,
    cd1: bool,
) -> Result<CentralizerAnalysis, CentralizerError> {
    let constraints = constraint_lattice(alg, r, model)?;
    let decomposition = decompose(&constraints, model.lattice_rank);
    let h1 = h1_describe(&decomposition, cd1);
    let conjecture_counterexample =
        model.preset.is_some_and(ModelName::connectedness_conjectured) && !decomposition.divisors.is_empty();
    Ok(CentralizerAnalysis { model: model.name.clone(), constraints, decomposition, h1, conjecture_counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdtriple::{enumerate, validate, AdmissibleTriple, TripleSpec, DEFAULT_RANK_BOUND};
    use crate::rmatrix::{build_bd, build_dj, R0Choice};
    use crate::rootsys::{CartanType, RootSystem};

    fn alg(ty: CartanType, n: usize) -> ChevalleyAlgebra {
        ChevalleyAlgebra::build(&RootSystem::build(ty, n).unwrap()).unwrap()
    }

    fn triple(a: &ChevalleyAlgebra, s: &str) -> AdmissibleTriple {
        validate(a.root_system(), &TripleSpec::parse(s).unwrap()).unwrap()
    }

    fn model(a: &ChevalleyAlgebra, m: ModelName) -> TorusLatticeModel {
        TorusLatticeModel::preset(m, a.root_system()).unwrap()
    }

    fn models_for(a: &ChevalleyAlgebra) -> Vec<TorusLatticeModel> {
        ModelName::ALL
            .into_iter()
            .filter(|m| m.applies_to(a.root_system().ty))
            .map(|m| model(a, m))
            .collect()
    }

    #[test]
    fn presets_reproduce_gram() {
        use CartanType::*;
        for (ty, n) in [(A, 1), (A, 3), (B, 3), (C, 3), (D, 4), (D, 5), (G, 2), (F, 4)] {
            let a = alg(ty, n);
            for m in models_for(&a) {
                assert!(m.pairing_matches(a.root_system()), "{ty}{n} {}", m.name);
                assert_eq!(m.roots.len(), n);
            }
        }
        let a2 = alg(A, 2);
        assert!(TorusLatticeModel::preset(ModelName::Sp, a2.root_system()).is_err());
        assert_eq!(model(&a2, ModelName::Gl).lattice_rank, 3);
    }

    #[test]
    fn dj_has_trivial_centralizer_everywhere() {
        use CartanType::*;
        for (ty, n) in [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 3), (D, 4), (G, 2)] {
            let a = alg(ty, n);
            let r = build_dj(&a).unwrap().tensor;
            for m in models_for(&a) {
                let res = analyze(&a, &r, &m, true).unwrap();
                assert!(res.constraints.is_empty());
                assert_eq!(res.decomposition.torus_rank, m.lattice_rank);
                assert_eq!(res.h1.verdict, Verdict::Trivial);
            }
        }
    }

    #[test]
    fn a2_cg_adjoint() {
        let a = alg(CartanType::A, 2);
        let r = build_bd(&a, &triple(&a, "G1=[1];G2=[2];tau=1->2"), &R0Choice::Canonical).unwrap().tensor;
        let m = model(&a, ModelName::Adjoint);
        let rows = constraint_lattice(&a, &r, &m).unwrap();
        assert_eq!(rows, vec![vec![1, -1]]);
        let dec = decompose(&rows, 2);
        assert_eq!((dec.torus_rank, dec.divisors.clone()), (1, vec![]));
    }

    #[test]
    fn d4_so_even_gives_mu2() {
        let a = alg(CartanType::D, 4);
        let r = build_bd(&a, &triple(&a, "G1=[4];G2=[3];tau=4->3"), &R0Choice::Canonical).unwrap().tensor;
        let m = model(&a, ModelName::SoEven);
        let rows = constraint_lattice(&a, &r, &m).unwrap();
        assert_eq!(rows, vec![vec![0, 0, 0, 2]]);
        let res = analyze(&a, &r, &m, true).unwrap();
        assert_eq!(res.decomposition.torus_rank, 3);
        assert_eq!(res.decomposition.divisors, vec![2]);
        assert_eq!(res.h1.factors, vec!["Kx/(Kx)^2"]);
        assert_eq!(res.h1.verdict, Verdict::Nontrivial);
        assert_eq!(h1_describe(&res.decomposition, false).verdict, Verdict::InjectsInto);
        let adj = analyze(&a, &r, &model(&a, ModelName::Adjoint), true).unwrap();
        assert!(adj.decomposition.divisors.is_empty());
    }

    #[test]
    fn empty_and_unit_divisors() {
        let dec = decompose(&vec![], 3);
        assert_eq!((dec.torus_rank, dec.divisors.clone()), (3, vec![]));
        assert_eq!(h1_describe(&dec, true).verdict, Verdict::Trivial);
        let dec = decompose(&vec![vec![1, 0]], 2);
        assert_eq!(h1_describe(&dec, true).verdict, Verdict::Trivial);
    }

    fn same_lattice(m1: &IntMatrix, m2: &IntMatrix, n: usize) -> bool {
        let both: IntMatrix = m1.iter().chain(m2).cloned().collect();
        let inv = |m: &IntMatrix| snf::smith(m, n).invariants;
        inv(m1) == inv(&both) && inv(m2) == inv(&both)
    }

    #[test]
    fn constraint_lattice_is_generated_by_alpha_minus_tau_alpha() {
        use CartanType::*;
        for (ty, n) in [(A, 2), (A, 3), (B, 3), (C, 3), (G, 2), (D, 4), (A, 4)] {
            let a = alg(ty, n);
            for t in enumerate(a.root_system(), DEFAULT_RANK_BOUND).unwrap() {
                let r = build_bd(&a, &t, &R0Choice::Canonical).unwrap().tensor;
                for m in models_for(&a) {
                    let rows = constraint_lattice(&a, &r, &m).unwrap();
                    let gens: IntMatrix = t
                        .tau
                        .iter()
                        .map(|(&x, &y)| {
                            let mut w = vec![0; n];
                            w[x] += 1;
                            w[y] -= 1;
                            m.to_lattice(&w)
                        })
                        .collect();
                    assert!(same_lattice(&rows, &gens, m.lattice_rank), "{ty}{n} {t} {}", m.name);
                }
            }
        }
    }

    #[test]
    fn torus_points_satisfying_constraints_fix_r() {
        // Evaluate characters on a formal torus point given by ±1 values; fixedness is term-by-term.
        let a = alg(CartanType::D, 4);
        let r = build_bd(&a, &triple(&a, "G1=[4];G2=[3];tau=4->3"), &R0Choice::Canonical).unwrap().tensor;
        let m = model(&a, ModelName::SoEven);
        let rows = constraint_lattice(&a, &r, &m).unwrap();
        for mask in 0u32..16 {
            let vals: Vec<i64> = (0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let eval = |chi: &[i64]| chi.iter().zip(&vals).map(|(&c, &v)| v.pow(c.unsigned_abs() as u32)).product::<i64>();
            let member = rows.iter().all(|row| eval(row) == 1);
            let fixes = r.iter().all(|((x, y), _)| eval(&m.to_lattice(&Tensor2::torus_character_of_term(&a, x, y))) == 1);
            assert_eq!(member, fixes);
        }
    }

    #[test]
    fn user_models_from_json() {
        let a = alg(CartanType::A, 2);
        let m = TorusLatticeModel::from_json(r#"{"name":"mine","lattice_rank":2,"roots":[[1,0],[0,1]],"pairing":[["1","-1/2"],["-1/2","1"]]}"#).unwrap();
        assert!(!m.pairing_matches(a.root_system()));
        let m2 = TorusLatticeModel::from_json(r#"{"name":"mine","lattice_rank":2,"roots":[[1,0],[0,1]],"pairing":[["2","-1"],["-1","2"]]}"#).unwrap();
        assert!(m2.pairing_matches(a.root_system()));
        assert!(TorusLatticeModel::from_json(r#"{"name":"x","lattice_rank":3,"roots":[[1,0]]}"#).is_err());
        let bad_rank = TorusLatticeModel::from_json(r#"{"name":"x","lattice_rank":1,"roots":[[1]]}"#).unwrap();
        let r = build_dj(&a).unwrap().tensor;
        assert!(matches!(analyze(&a, &r, &bad_rank, false), Err(CentralizerError::ModelMismatch(_))));
    }

    #[test]
    fn conjectured_models_stay_connected_in_small_rank() {
        use CartanType::*;
        for (ty, n) in [(A, 1), (A, 2), (A, 3), (B, 2), (B, 3), (C, 2), (C, 3)] {
            let a = alg(ty, n);
            for t in enumerate(a.root_system(), DEFAULT_RANK_BOUND).unwrap() {
                let r = build_bd(&a, &t, &R0Choice::Canonical).unwrap().tensor;
                for m in models_for(&a).into_iter().filter(|m| m.preset.is_some_and(ModelName::connectedness_conjectured)) {
                    assert!(!analyze(&a, &r, &m, true).unwrap().conjecture_counterexample, "{ty}{n} {t} {}", m.name);
                }
            }
        }
    }
}
