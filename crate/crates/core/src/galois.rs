//! Belavin–Drinfeld cocycles over a quadratic extension `L/K` with Galois generator `γ: j ↦ -j`.

use serde::Serialize;
use thiserror::Error;

use crate::centralizer::{constraint_lattice, decompose, CentralizerError, TorusLatticeModel};
use crate::chevalley::{AlgebraAutomorphism, ChevalleyAlgebra, Element};
use crate::linalg::{self, Matrix};
use crate::scalars::{kummer_class, BaseLayer, Scalar, ScalarError, Tower};
use crate::tensor::Tensor2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("torus point has a non-invertible value at coordinate {0}")]
    NotInvertible(usize),
    #[error("torus point has {got} values, the lattice has rank {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("the automorphism does not preserve brackets")]
    NotBracketPreserving,
    #[error("no solution over configured base field")]
    NoSolution,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Centralizer(#[from] CentralizerError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A homomorphism from the character lattice `ℤ^N` to the multiplicative group, by its basis values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    pub values: Vec<Scalar>,
}

impl TorusPoint {
    pub fn new(values: Vec<Scalar>) -> Result<Self, GaloisError> {
        if let Some(i) = values.iter().position(Scalar::is_zero) {
            return Err(GaloisError::NotInvertible(i));
        }
        Ok(TorusPoint { values })
    }

    pub fn identity(n: usize) -> Self {
        TorusPoint { values: vec![Scalar::one(); n] }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// `χ(X) = Π x_i^{χ_i}`.
    pub fn eval(&self, chi: &[i64]) -> Scalar {
        chi.iter().zip(&self.values).fold(Scalar::one(), |acc, (&c, x)| {
            &acc * &x.pow(c).expect("torus values are invertible")
        })
    }

    pub fn mul(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn conjugate(&self) -> TorusPoint {
        TorusPoint { values: self.values.iter().map(Scalar::conjugate).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdCocycle {
    /// `u(γ₁) = X⁻¹γ₁(X)`.
    pub value: TorusPoint,
    pub twisted: bool,
}

impl BdCocycle {
    /// Order-2 descent condition `u·γ₁(u) = 1`.
    pub fn is_order_two_cocycle(&self) -> bool {
        self.value.mul(&self.value.conjugate()).is_identity()
    }
}

pub fn cocycle_from_point(x: &TorusPoint) -> Result<BdCocycle, GaloisError> {
    let values = x
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| v.conjugate().div(v).ok_or(GaloisError::NotInvertible(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BdCocycle { value: TorusPoint { values }, twisted: false })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorClass {
    pub divisor: i64,
    /// `χ(X)^m`, an element of `K×` whose class in `K×/(K×)^m` is the image of the cocycle.
    pub value: String,
    /// Canonical square-class representative (only for `m = 2`).
    pub class: Option<String>,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UntwistedResult {
    pub member: bool,
    pub cocycle: Vec<String>,
    pub classes: Vec<FactorClass>,
}

fn layer_of(x: &Scalar) -> BaseLayer {
    if x.as_constant().is_some() {
        BaseLayer::Constants
    } else {
        BaseLayer::RationalFunctions
    }
}

pub fn verify_untwisted(
    alg: &ChevalleyAlgebra,
    x: &TorusPoint,
    r: &Tensor2,
    model: &TorusLatticeModel,
    tower: &Tower,
) -> Result<UntwistedResult, GaloisError> {
    if x.rank() != model.lattice_rank {
        return Err(GaloisError::WrongLength { expected: model.lattice_rank, got: x.rank() });
    }
    let u = cocycle_from_point(x)?;
    let rows = constraint_lattice(alg, r, model)?;
    let member = rows.iter().all(|row| u.value.eval(row).is_one());
    let dec = decompose(&rows, model.lattice_rank);
    let mut classes = Vec::new();
    if member {
        for (&m, chi) in dec.divisors.iter().zip(&dec.factor_characters) {
            let value = x.eval(chi).pow(m).expect("invertible");
            if !value.in_base_layer() {
                return Err(GaloisError::Scalar(ScalarError::NotInLayer(value.to_string())));
            }
            let (class, trivial) = if m == 2 {
                let c = kummer_class(&value, layer_of(&value), tower.base_square)?;
                (Some(c.to_string()), c.is_trivial())
            } else {
                (None, value.is_one())
            };
            classes.push(FactorClass { divisor: m, value: value.to_string(), class, trivial });
        }
    }
    Ok(UntwistedResult { member, cocycle: u.value.to_strings(), classes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedResult {
    /// `X⁻¹γ(X)` fixes `r` for the remaining Galois elements (`γ₁²` in the order-2 model).
    pub cond_a: bool,
    /// `Ad_{X⁻¹γ₁(X)}(r) = r²¹`.
    pub cond_b: bool,
    /// `Ad_{X⁻¹γ₁(X)}(r) = Ad_S(r)`.
    pub matches_s: bool,
}

pub fn verify_twisted(
    alg: &ChevalleyAlgebra,
    x: &AlgebraAutomorphism,
    r: &Tensor2,
    s: &AlgebraAutomorphism,
) -> Result<TwistedResult, GaloisError> {
    if x.bracket_violation(alg).is_some() {
        return Err(GaloisError::NotBracketPreserving);
    }
    let x_inv = x.inverse().ok_or(GaloisError::NotBracketPreserving)?;
    let gx = x.galois_conjugate();
    let y = x_inv.compose(&gx);
    let ggx = gx.galois_conjugate();
    let z = x_inv.compose(&ggx);
    let ad_y = r.apply(&y);
    Ok(TwistedResult { cond_a: r.apply(&z) == *r, cond_b: ad_y == r.swap(), matches_s: ad_y == r.apply(s) })
}

type Mat2 = [[Scalar; 2]; 2];

fn sl2_matrices() -> [Mat2; 3] {
    let (o, z, m) = (Scalar::one(), Scalar::zero(), Scalar::from_int(-1));
    [
        [[z.clone(), o.clone()], [z.clone(), z.clone()]],
        [[z.clone(), z.clone()], [o.clone(), z.clone()]],
        [[o, z.clone()], [z, m]],
    ]
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn det2(a: &Mat2) -> Scalar {
    &(&a[0][0] * &a[1][1]) - &(&a[0][1] * &a[1][0])
}

fn inv2(a: &Mat2) -> Option<Mat2> {
    let d = det2(a).inv()?;
    Some([
        [&a[1][1] * &d, &(-&a[0][1]) * &d],
        [&(-&a[1][0]) * &d, &a[0][0] * &d],
    ])
}

/// Coordinates of a traceless 2×2 matrix in the basis `e, f, h`.
fn sl2_coords(m: &Mat2) -> Element {
    [(0, m[0][1].clone()), (1, m[1][0].clone()), (2, m[0][0].clone())].into_iter().collect()
}

/// `Ad_g` on `sl₂` in the Chevalley basis.
pub fn adjoint_of(g: &Mat2) -> Option<AlgebraAutomorphism> {
    let gi = inv2(g)?;
    let cols = sl2_matrices().iter().map(|x| sl2_coords(&mul2(&mul2(g, x), &gi))).collect();
    Some(AlgebraAutomorphism::from_columns(cols))
}

/// Finds `J = Ad_g` over `L` with `γ₁(J) = J·S`, for `sl₂`.
///
/// Writes `g = A + jB` and looks for `γ₁(g) = μ·g·n` where `Ad_n = S` and `μ` runs over a small set
/// of base-field units.
pub fn solve_j(alg: &ChevalleyAlgebra, s: &AlgebraAutomorphism, tower: &Tower) -> Result<AlgebraAutomorphism, GaloisError> {
    if alg.rank() != 1 {
        return Err(GaloisError::Unsupported("the J solver handles rank 1 only".into()));
    }
    let j = tower.j()?;
    let basis = sl2_matrices();
    // n with n·x = S(x)·n for x = e, f, h; unknowns n00, n01, n10, n11.
    let mut rows: Matrix = Vec::new();
    for (k, x) in basis.iter().enumerate() {
        let sx = s.column(k);
        let sxm: Mat2 = [
            [sx.get(2), sx.get(0)],
            [sx.get(1), -sx.get(2)],
        ];
        for a in 0..2 {
            for b in 0..2 {
                // (n x)_{ab} - (sx n)_{ab}
                let mut row = vec![Scalar::zero(); 4];
                for c in 0..2 {
                    row[a * 2 + c] = &row[a * 2 + c] + &x[c][b];
                    row[c * 2 + b] = &row[c * 2 + b] - &sxm[a][c];
                }
                rows.push(row);
            }
        }
    }
    let n_vec = linalg::nullspace(&rows, 4).into_iter().next().ok_or(GaloisError::NoSolution)?;
    let n: Mat2 = [[n_vec[0].clone(), n_vec[1].clone()], [n_vec[2].clone(), n_vec[3].clone()]];
    if det2(&n).is_zero() {
        return Err(GaloisError::NoSolution);
    }
    let mut units = vec![Scalar::one(), Scalar::from_int(-1)];
    if let Ok(sq) = tower.s() {
        units.push(sq.clone());
        units.push(-sq);
    }
    for mu in &units {
        // A(I - μn) = 0 and B(I + μn) = 0; unknowns a00..a11, b00..b11.
        let mut sys: Matrix = Vec::new();
        for (off, sign) in [(0usize, -1i64), (4, 1)] {
            let m: Mat2 = {
                let id = |a: usize, b: usize| if a == b { Scalar::one() } else { Scalar::zero() };
                let f = |a: usize, b: usize| &id(a, b) + &(&(mu * &n[a][b]) * &Scalar::from_int(sign));
                [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
            };
            for a in 0..2 {
                for b in 0..2 {
                    let mut row = vec![Scalar::zero(); 8];
                    for c in 0..2 {
                        row[off + a * 2 + c] = m[c][b].clone();
                    }
                    sys.push(row);
                }
            }
        }
        let kernel = linalg::nullspace(&sys, 8);
        let mut candidates: Vec<Vec<Scalar>> = kernel.clone();
        for (i, k1) in kernel.iter().enumerate() {
            for k2 in &kernel[i + 1..] {
                candidates.push(k1.iter().zip(k2).map(|(a, b)| a + b).collect());
            }
        }
        for v in candidates {
            let g: Mat2 = [
                [&v[0] + &(&j * &v[4]), &v[1] + &(&j * &v[5])],
                [&v[2] + &(&j * &v[6]), &v[3] + &(&j * &v[7])],
            ];
            if det2(&g).is_zero() {
                continue;
            }
            let jm = adjoint_of(&g).expect("invertible");
            if jm.galois_conjugate() == jm.compose(s) {
                return Ok(jm);
            }
        }
    }
    Err(GaloisError::NoSolution)
}
