//! Belavin–Drinfeld and Drinfeld–Jimbo r-matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bdtriple::{AdmissibleTriple, TauLift, TripleError};
use crate::chevalley::{AlgebraAutomorphism, ChevalleyAlgebra, Element};
use crate::linalg::{self, Matrix};
use crate::scalars::Scalar;
use crate::tensor::{Tensor2, Tensor3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("internal error: inconsistent system for r0")]
    InconsistentR0,
    #[error("r0 parameter count {got} does not match the homogeneous dimension {expected}")]
    ParamCount { expected: usize, got: usize },
    #[error("CYB(r) is nonzero; first term {0}")]
    CybeFailure(String),
    #[error("r + r21 differs from the Casimir element at {0}")]
    OmegaFailure(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

/// Affine solution set `particular + span(homogeneous)` for `r₀`.
#[derive(Clone, Debug)]
pub struct ContinuousParameter {
    pub particular: Tensor2,
    pub homogeneous: Vec<Tensor2>,
}

impl ContinuousParameter {
    pub fn dimension(&self) -> usize {
        self.homogeneous.len()
    }

    pub fn point(&self, params: &[Scalar]) -> Result<Tensor2, RMatrixError> {
        if params.len() != self.homogeneous.len() {
            return Err(RMatrixError::ParamCount { expected: self.homogeneous.len(), got: params.len() });
        }
        Ok(self.homogeneous.iter().zip(params).fold(self.particular.clone(), |acc, (h, c)| acc.add(&h.scale(c))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum R0Choice {
    Canonical,
    Params(Vec<Scalar>),
    /// Small random integer parameters drawn from a seeded generator.
    Random(u64),
}

impl R0Choice {
    pub fn resolve(&self, cp: &ContinuousParameter) -> Result<Tensor2, RMatrixError> {
        match self {
            R0Choice::Canonical => Ok(cp.particular.clone()),
            R0Choice::Params(p) => cp.point(p),
            R0Choice::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let p: Vec<Scalar> = (0..cp.dimension()).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect();
                cp.point(&p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Dj,
    Bd { triple: String },
    External,
}

#[derive(Clone, Debug)]
pub struct RMatrix {
    pub tensor: Tensor2,
    pub tag: Provenance,
    pub cybe_zero: bool,
    pub omega_symmetry: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    NotEquivalent,
    Equivalent,
    GaugeEquivalent,
}

fn skew_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Solves `r₀ + r₀²¹ = Ω₀` and `(τ(α)⊗1 + 1⊗α)(r₀) = 0` for `α ∈ Γ₁`.
pub fn solve_r0(alg: &ChevalleyAlgebra, triple: &AdmissibleTriple) -> Result<ContinuousParameter, RMatrixError> {
    let n = alg.rank();
    let half = Scalar::ratio(1, 2);
    let omega0 = alg.casimir().omega0;
    let sym: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| &omega0.get(alg.h(i), alg.h(j)) * &half).collect()).collect();
    let pairs = skew_pairs(n);
    let mut rows: Matrix = Vec::new();
    let mut rhs = Vec::new();
    let simple = |i: usize| alg.root_system().simple(i);
    for (&a, &ta) in &triple.tau {
        let alpha = |j: usize| alg.weight_on_coroot(&simple(a), j);
        let talpha = |i: usize| alg.weight_on_coroot(&simple(ta), i);
        // Coefficient of h_k in Σ c_ik τα(h_i) h_k + Σ c_kj α(h_j) h_k.
        for k in 0..n {
            let mut row = vec![Scalar::zero(); pairs.len()];
            for (p, &(i, j)) in pairs.iter().enumerate() {
                // c_ij = s, c_ji = -s.
                let mut v = 0;
                if j == k {
                    v += talpha(i);
                }
                if i == k {
                    v -= talpha(j);
                }
                if i == k {
                    v += alpha(j);
                }
                if j == k {
                    v -= alpha(i);
                }
                row[p] = Scalar::from_int(v);
            }
            let mut constant = Scalar::zero();
            for i in 0..n {
                constant = &constant + &(&sym[i][k] * &Scalar::from_int(talpha(i)));
                constant = &constant + &(&sym[k][i] * &Scalar::from_int(alpha(i)));
            }
            rows.push(row);
            rhs.push(-constant);
        }
    }
    let to_tensor = |coords: &[Scalar], base: bool| {
        let mut t = Tensor2::zero(alg.dim());
        if base {
            for i in 0..n {
                for j in 0..n {
                    t.add_term(alg.h(i), alg.h(j), &sym[i][j]);
                }
            }
        }
        for (p, &(i, j)) in pairs.iter().enumerate() {
            t.add_term(alg.h(i), alg.h(j), &coords[p]);
            t.add_term(alg.h(j), alg.h(i), &-&coords[p]);
        }
        t
    };
    if pairs.is_empty() {
        if rhs.iter().any(|x| !x.is_zero()) {
            return Err(RMatrixError::InconsistentR0);
        }
        return Ok(ContinuousParameter { particular: to_tensor(&[], true), homogeneous: Vec::new() });
    }
    let sol = linalg::solve_affine(&rows, &rhs, pairs.len()).ok_or(RMatrixError::InconsistentR0)?;
    Ok(ContinuousParameter {
        particular: to_tensor(&sol.particular, true),
        homogeneous: sol.kernel.iter().map(|k| to_tensor(k, false)).collect(),
    })
}

/// `Σ_{α>0} e_α ⊗ e_{-α}`.
fn standard_part(alg: &ChevalleyAlgebra) -> Tensor2 {
    let mut t = Tensor2::zero(alg.dim());
    for k in 0..alg.num_positive() {
        t.add_outer(&Element::basis(alg.e(k)), &alg.dual_negative(k), &Scalar::one());
    }
    t
}

/// Verifies `CYB(r) = 0` and `r + r²¹ = Ω`, reporting the first offending term.
pub fn verify(alg: &ChevalleyAlgebra, r: &Tensor2) -> Result<(), RMatrixError> {
    let omega = alg.casimir().omega;
    let diff = r.add(&r.swap()).sub(&omega);
    if let Some(((a, b), c)) = diff.iter().next() {
        return Err(RMatrixError::OmegaFailure(format!("({c}) {}⊗{}", alg.basis_name(a), alg.basis_name(b))));
    }
    let cyb = r.cyb(alg);
    if let Some((k, c)) = cyb.first_term() {
        return Err(RMatrixError::CybeFailure(Tensor3::describe_term(alg, k, c)));
    }
    Ok(())
}

/// `r_BD = r₀ + Σ_{α>0} e_α⊗e_{-α} + Σ_{α ∈ Span(Γ₁)⁺} Σ_{k≥1} e_α ∧ θ^k(e_{-α})`.
pub fn assemble_bd(
    alg: &ChevalleyAlgebra,
    triple: &AdmissibleTriple,
    r0: &Tensor2,
) -> Result<Tensor2, RMatrixError> {
    let lift = TauLift::build(alg, triple)?;
    let mut r = r0.add(&standard_part(alg));
    for entry in &lift.entries {
        let neg = alg.dual_negative(entry.target).scale(&Scalar::from_int(entry.sign));
        r.add_wedge(&Element::basis(alg.e(entry.root)), &neg, &Scalar::one());
    }
    Ok(r)
}

pub fn build_bd(alg: &ChevalleyAlgebra, triple: &AdmissibleTriple, choice: &R0Choice) -> Result<RMatrix, RMatrixError> {
    let cp = solve_r0(alg, triple)?;
    let r0 = choice.resolve(&cp)?;
    let tensor = assemble_bd(alg, triple, &r0)?;
    verify(alg, &tensor)?;
    Ok(RMatrix { tensor, tag: Provenance::Bd { triple: triple.to_string() }, cybe_zero: true, omega_symmetry: true })
}

/// `r_DJ = Σ_{α>0} e_α⊗e_{-α} + ½Ω₀`.
pub fn build_dj(alg: &ChevalleyAlgebra) -> Result<RMatrix, RMatrixError> {
    let tensor = standard_part(alg).add(&alg.casimir().omega0.scale(&Scalar::ratio(1, 2)));
    verify(alg, &tensor)?;
    Ok(RMatrix { tensor, tag: Provenance::Dj, cybe_zero: true, omega_symmetry: true })
}

impl RMatrix {
    /// Wraps an externally supplied tensor, recording (not enforcing) the verification flags.
    pub fn external(alg: &ChevalleyAlgebra, tensor: Tensor2) -> RMatrix {
        let cybe_zero = tensor.cyb(alg).is_zero();
        let omega_symmetry = tensor.add(&tensor.swap()) == alg.casimir().omega;
        RMatrix { tensor, tag: Provenance::External, cybe_zero, omega_symmetry }
    }

    /// True iff every coefficient lies in the base layer (fixed by the Galois conjugation).
    pub fn is_rational(&self) -> bool {
        self.tensor.iter().all(|(_, c)| c.conjugate() == *c)
    }

    pub fn support_size(&self) -> usize {
        self.tensor.len()
    }

    pub fn cobracket(&self, alg: &ChevalleyAlgebra, a: &Element) -> Tensor2 {
        self.tensor.cobracket(alg, a)
    }

    /// `δ(a) + δ(a)²¹ = 0` on every basis vector.
    pub fn cobracket_is_skew(&self, alg: &ChevalleyAlgebra) -> bool {
        (0..alg.dim()).all(|x| {
            let d = self.cobracket(alg, &Element::basis(x));
            d.add(&d.swap()).is_zero()
        })
    }
}

/// Decides `r' = c·Ad_X(r)` exactly.
pub fn verify_equivalence(r: &Tensor2, r_prime: &Tensor2, x: &AlgebraAutomorphism, c: &Scalar) -> Equivalence {
    if *r_prime != r.apply(x).scale(c) {
        Equivalence::NotEquivalent
    } else if c.is_one() {
        Equivalence::GaugeEquivalent
    } else {
        Equivalence::Equivalent
    }
}
