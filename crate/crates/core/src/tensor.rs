//! Sparse tensors in `g⊗g` and `g⊗g⊗g` over the Chevalley basis.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chevalley::{AlgebraAutomorphism, ChevalleyAlgebra, Element};
use crate::rootsys::RootVec;
use crate::scalars::Scalar;

fn accumulate<K: Ord + Copy>(map: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, c.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub legs: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    dim: usize,
    terms: BTreeMap<(usize, usize), Scalar>,
}

impl Tensor2 {
    pub fn zero(dim: usize) -> Self {
        Tensor2 { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: &Scalar) {
        accumulate(&mut self.terms, (a, b), c);
    }

    /// Adds `c · x⊗y`.
    pub fn add_outer(&mut self, x: &Element, y: &Element, c: &Scalar) {
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                self.add_term(a, b, &(&(ca * cb) * c));
            }
        }
    }

    /// Adds `c · (x⊗y - y⊗x)`.
    pub fn add_wedge(&mut self, x: &Element, y: &Element, c: &Scalar) {
        self.add_outer(x, y, c);
        self.add_outer(y, x, &-c);
    }

    pub fn get(&self, a: usize, b: usize) -> Scalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `r²¹`.
    pub fn swap(&self) -> Tensor2 {
        Tensor2 { dim: self.dim, terms: self.terms.iter().map(|(&(a, b), v)| ((b, a), v.clone())).collect() }
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        for (&(a, b), v) in &other.terms {
            out.add_term(a, b, v);
        }
        out
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        for (&(a, b), v) in &other.terms {
            out.add_term(a, b, &-v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Tensor2 {
        let mut out = Tensor2::zero(self.dim);
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, &(v * c));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor2 {
        let mut out = Tensor2::zero(self.dim);
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, &f(v));
        }
        out
    }

    /// Entrywise Galois conjugation.
    pub fn conjugate(&self) -> Tensor2 {
        self.map_coeffs(Scalar::conjugate)
    }

    /// `(φ⊗φ)(r)`.
    pub fn apply(&self, phi: &AlgebraAutomorphism) -> Tensor2 {
        let mut out = Tensor2::zero(self.dim);
        for (&(a, b), v) in &self.terms {
            out.add_outer(phi.column(a), phi.column(b), v);
        }
        out
    }

    /// `[x⊗1 + 1⊗x, r]`; as a function of `x` this is the cobracket `δ(x)`.
    pub fn ad_action(&self, alg: &ChevalleyAlgebra, x: &Element) -> Tensor2 {
        let mut out = Tensor2::zero(self.dim);
        for (i, cx) in x.iter() {
            for (&(a, b), v) in &self.terms {
                let c = cx * v;
                for &(g, n) in alg.bracket_basis(i, a) {
                    out.add_term(g, b, &(&c * &Scalar::from_int(n)));
                }
                for &(g, n) in alg.bracket_basis(i, b) {
                    out.add_term(a, g, &(&c * &Scalar::from_int(n)));
                }
            }
        }
        out
    }

    pub fn cobracket(&self, alg: &ChevalleyAlgebra, x: &Element) -> Tensor2 {
        self.ad_action(alg, x)
    }

    /// Torus weight of the term `x_a⊗x_b`.
    pub fn torus_character_of_term(alg: &ChevalleyAlgebra, a: usize, b: usize) -> RootVec {
        alg.weight(a).iter().zip(alg.weight(b)).map(|(x, y)| x + y).collect()
    }

    /// `[r12,r13] + [r12,r23] + [r13,r23]`.
    pub fn cyb(&self, alg: &ChevalleyAlgebra) -> Tensor3 {
        let mut out = Tensor3::zero(self.dim);
        let terms: Vec<((usize, usize), &Scalar)> = self.iter().collect();
        for &((a, b), rab) in &terms {
            for &((c, d), rcd) in &terms {
                let coeff = rab * rcd;
                let add = |out: &mut Tensor3, br: &[(usize, i64)], f: &dyn Fn(usize) -> (usize, usize, usize)| {
                    for &(g, n) in br {
                        out.add_term(f(g), &(&coeff * &Scalar::from_int(n)));
                    }
                };
                add(&mut out, alg.bracket_basis(a, c), &|g| (g, b, d));
                add(&mut out, alg.bracket_basis(b, c), &|g| (a, g, d));
                add(&mut out, alg.bracket_basis(b, d), &|g| (a, c, g));
            }
        }
        out
    }

    pub fn to_json(&self, alg: &ChevalleyAlgebra) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(&(a, b), v)| TermJson { legs: vec![alg.basis_name(a), alg.basis_name(b)], coeff: v.to_string() })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dim: usize,
    terms: BTreeMap<(usize, usize, usize), Scalar>,
}

impl Tensor3 {
    pub fn zero(dim: usize) -> Self {
        Tensor3 { dim, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, k: (usize, usize, usize), c: &Scalar) {
        accumulate(&mut self.terms, k, c);
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Scalar {
        self.terms.get(&(a, b, c)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn first_term(&self) -> Option<((usize, usize, usize), &Scalar)> {
        self.iter().next()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn describe_term(alg: &ChevalleyAlgebra, k: (usize, usize, usize), c: &Scalar) -> String {
        format!("({c}) {}⊗{}⊗{}", alg.basis_name(k.0), alg.basis_name(k.1), alg.basis_name(k.2))
    }

    pub fn to_json(&self, alg: &ChevalleyAlgebra) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(&(a, b, c), v)| TermJson {
                legs: vec![alg.basis_name(a), alg.basis_name(b), alg.basis_name(c)],
                coeff: v.to_string(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanType, RootSystem};
    use proptest::prelude::*;

    fn sl2() -> ChevalleyAlgebra {
        ChevalleyAlgebra::build(&RootSystem::build(CartanType::A, 1).unwrap()).unwrap()
    }

    type M = Vec<Vec<i64>>;

    fn rho(a: &ChevalleyAlgebra, x: usize) -> M {
        if x == a.e(0) {
            vec![vec![0, 1], vec![0, 0]]
        } else if x == a.f(0) {
            vec![vec![0, 0], vec![1, 0]]
        } else {
            vec![vec![1, 0], vec![0, -1]]
        }
    }

    fn id2() -> M {
        vec![vec![1, 0], vec![0, 1]]
    }

    fn kron(x: &M, y: &M) -> M {
        let (n, m) = (x.len(), y.len());
        (0..n * m).map(|i| (0..n * m).map(|j| x[i / m][j / m] * y[i % m][j % m]).collect()).collect()
    }

    fn mul(x: &M, y: &M) -> M {
        let n = x.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    }

    fn axpy(acc: &mut M, c: i64, x: &M) {
        for (ra, rx) in acc.iter_mut().zip(x) {
            for (a, b) in ra.iter_mut().zip(rx) {
                *a += c * b;
            }
        }
    }

    /// CYB computed in the defining representation on `V⊗V⊗V`.
    fn cyb_in_rep(a: &ChevalleyAlgebra, r: &Tensor2) -> M {
        let int = |c: &Scalar| c.as_integer().unwrap();
        let mut r12 = vec![vec![0; 8]; 8];
        let mut r13 = r12.clone();
        let mut r23 = r12.clone();
        for ((x, y), c) in r.iter() {
            let (px, py) = (rho(a, x), rho(a, y));
            axpy(&mut r12, int(c), &kron(&kron(&px, &py), &id2()));
            axpy(&mut r13, int(c), &kron(&kron(&px, &id2()), &py));
            axpy(&mut r23, int(c), &kron(&kron(&id2(), &px), &py));
        }
        let mut out = vec![vec![0; 8]; 8];
        for (p, q) in [(&r12, &r13), (&r12, &r23), (&r13, &r23)] {
            axpy(&mut out, 1, &mul(p, q));
            axpy(&mut out, -1, &mul(q, p));
        }
        out
    }

    fn tensor3_in_rep(a: &ChevalleyAlgebra, t: &Tensor3) -> M {
        let mut out = vec![vec![0; 8]; 8];
        for ((x, y, z), c) in t.iter() {
            axpy(&mut out, c.as_integer().unwrap(), &kron(&kron(&rho(a, x), &rho(a, y)), &rho(a, z)));
        }
        out
    }

    #[test]
    fn sl2_standard_r_matrix_solves_cyb() {
        let a = sl2();
        let mut r = Tensor2::zero(a.dim());
        r.add_term(a.e(0), a.f(0), &Scalar::one());
        r.add_term(a.h(0), a.h(0), &Scalar::ratio(1, 4));
        assert!(r.cyb(&a).is_zero());
        let mut bad = Tensor2::zero(a.dim());
        bad.add_term(a.e(0), a.f(0), &Scalar::one());
        assert!(!bad.cyb(&a).is_zero());
    }

    #[test]
    fn swap_is_involutive() {
        let a = sl2();
        let mut r = Tensor2::zero(a.dim());
        r.add_term(0, 1, &Scalar::from_int(3));
        r.add_term(2, 0, &Scalar::ratio(1, 2));
        assert_eq!(r.swap().swap(), r);
        assert_eq!(r.swap().get(1, 0), Scalar::from_int(3));
    }

    #[test]
    fn characters_of_terms() {
        let a = sl2();
        assert_eq!(Tensor2::torus_character_of_term(&a, a.e(0), a.f(0)), vec![0]);
        assert_eq!(Tensor2::torus_character_of_term(&a, a.e(0), a.e(0)), vec![2]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn cyb_matches_expanded_oracle(coeffs in prop::collection::vec(-3i64..=3, 9)) {
            let a = sl2();
            let mut r = Tensor2::zero(a.dim());
            for (k, &c) in coeffs.iter().enumerate() {
                r.add_term(k / 3, k % 3, &Scalar::from_int(c));
            }
            prop_assert_eq!(tensor3_in_rep(&a, &r.cyb(&a)), cyb_in_rep(&a, &r));
        }

        #[test]
        fn ad_action_is_linear(c1 in -3i64..=3, c2 in -3i64..=3) {
            let a = sl2();
            let omega = a.casimir().omega;
            let mut r = omega.clone();
            r.add_term(a.e(0), a.f(0), &Scalar::from_int(c1));
            let x = Element::basis(a.e(0));
            let y = Element::basis(a.h(0));
            let xy = x.add(&y.scale(&Scalar::from_int(c2)));
            let lhs = r.ad_action(&a, &xy);
            let rhs = r.ad_action(&a, &x).add(&r.ad_action(&a, &y).scale(&Scalar::from_int(c2)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
