use crate::linalg::{self, Matrix};
use crate::rootsys::WeylElement;
use crate::scalars::Scalar;

use super::{ChevalleyAlgebra, Element};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AutomorphismFlags {
    pub involution: bool,
    pub stabilizes_h: bool,
    pub stabilizes_b: bool,
}

/// A linear map on the algebra, stored by the images of basis vectors.
#[derive(Clone, Debug)]
pub struct AlgebraAutomorphism {
    cols: Vec<Element>,
    pub flags: AutomorphismFlags,
}

impl PartialEq for AlgebraAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols
    }
}

impl Eq for AlgebraAutomorphism {}

impl AlgebraAutomorphism {
    pub fn identity(dim: usize) -> Self {
        Self::from_columns((0..dim).map(Element::basis).collect())
    }

    pub fn from_columns(cols: Vec<Element>) -> Self {
        AlgebraAutomorphism { cols, flags: AutomorphismFlags::default() }
    }

    pub fn with_flags(mut self, flags: AutomorphismFlags) -> Self {
        self.flags = flags;
        self
    }

    /// `m[i][j]` is the coefficient of `x_i` in the image of `x_j`.
    pub fn from_dense(m: &Matrix) -> Self {
        let n = m.len();
        let cols = (0..n).map(|j| (0..n).map(|i| (i, m[i][j].clone())).collect()).collect();
        Self::from_columns(cols)
    }

    pub fn to_dense(&self) -> Matrix {
        let n = self.dim();
        (0..n).map(|i| self.cols.iter().map(|c| c.get(i)).collect()).collect()
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &Element {
        &self.cols[j]
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (i, c) in x.iter() {
            out.add_scaled(&self.cols[i], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraAutomorphism) -> AlgebraAutomorphism {
        Self::from_columns(other.cols.iter().map(|c| self.apply(c)).collect())
    }

    pub fn inverse(&self) -> Option<AlgebraAutomorphism> {
        linalg::invert(&self.to_dense()).map(|m| Self::from_dense(&m).with_flags(self.flags))
    }

    /// Applies the Galois conjugation `j ↦ -j` to every matrix entry.
    pub fn galois_conjugate(&self) -> AlgebraAutomorphism {
        Self::from_columns(self.cols.iter().map(|c| c.map_coeffs(Scalar::conjugate)).collect()).with_flags(self.flags)
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| *c == Element::basis(j))
    }

    /// First basis pair with `φ[x,y] ≠ [φx, φy]`, if any.
    pub fn bracket_violation(&self, alg: &ChevalleyAlgebra) -> Option<(usize, usize)> {
        let dim = alg.dim();
        for a in 0..dim {
            for b in a + 1..dim {
                let lhs = self.apply(&alg.bracket(&Element::basis(a), &Element::basis(b)));
                let rhs = alg.bracket(&self.cols[a], &self.cols[b]);
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn entries_as_strings(&self) -> Vec<Vec<String>> {
        self.to_dense().iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect()
    }
}

/// `S = c∘d` together with its factors.
#[derive(Clone, Debug)]
pub struct InvolutionS {
    pub s: AlgebraAutomorphism,
    pub c: AlgebraAutomorphism,
    pub d: AlgebraAutomorphism,
    pub w0: WeylElement,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InvolutionChecks {
    pub s_squared_identity: bool,
    pub bracket_preserving: bool,
    pub cartan_restriction_is_w0: bool,
    pub root_spaces_follow_w0: bool,
    pub c_d_commute: bool,
    pub d_squared_identity: bool,
}

impl InvolutionChecks {
    pub fn all(&self) -> bool {
        self.s_squared_identity
            && self.bracket_preserving
            && self.cartan_restriction_is_w0
            && self.root_spaces_follow_w0
            && self.c_d_commute
            && self.d_squared_identity
    }
}

impl InvolutionS {
    pub fn verify(&self, alg: &ChevalleyAlgebra) -> InvolutionChecks {
        let rs = alg.root_system();
        let n = alg.rank();
        let w_h = rs.coroot_action(&self.w0);
        let cartan_restriction_is_w0 = (0..n).all(|j| {
            let col = self.s.column(alg.h(j));
            col.support().all(|i| alg.is_cartan(i))
                && (0..n).all(|i| {
                    let expected = w_h[i][j];
                    col.get(alg.h(i)) == Scalar::ratio(*expected.numer(), *expected.denom())
                })
        });
        let root_spaces_follow_w0 = (0..alg.dim()).all(|x| {
            if alg.is_cartan(x) {
                return true;
            }
            let target = alg.root_vector(&self.w0.apply(alg.weight(x)));
            let img = self.s.column(x);
            img.len() == 1 && img.support().next() == target
        });
        InvolutionChecks {
            s_squared_identity: self.s.compose(&self.s).is_identity(),
            bracket_preserving: self.s.bracket_violation(alg).is_none(),
            cartan_restriction_is_w0,
            root_spaces_follow_w0,
            c_d_commute: self.c.compose(&self.d) == self.d.compose(&self.c),
            d_squared_identity: self.d.compose(&self.d).is_identity(),
        }
    }
}
