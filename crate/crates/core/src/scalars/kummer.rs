//! Square classes `x · (K×)²` with canonical representatives.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::BaseNum;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::tower::Scalar;
use super::ScalarError;

/// Which layer the square classes are taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseLayer {
    /// The constant field `F`.
    Constants,
    /// The rational-function field `F(t)`.
    RationalFunctions,
}

/// Canonical representative of a class in `K× / (K×)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass(pub Scalar);

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    pub fn representative(&self) -> &Scalar {
        &self.0
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Signed square-free kernel of an integer: `8 ↦ 2`, `-12 ↦ -3`.
pub fn squarefree_kernel(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= m;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

fn rational_class(r: &BigRational, q: i64) -> BigInt {
    let k = squarefree_kernel(&(r.numer() * r.denom()));
    if q == 0 {
        return k;
    }
    // In ℚ(√q) a rational k and k·q lie in the same square class.
    let qb = BigInt::from(q);
    let g = k.gcd(&qb);
    let alt = squarefree_kernel(&(&k * &qb / (&g * &g)));
    let key = |x: &BigInt| (x.abs(), x.is_negative());
    if key(&alt) < key(&k) {
        alt
    } else {
        k
    }
}

fn constant_class(c: &BaseNum, q: i64) -> Result<BaseNum, ScalarError> {
    match c.as_rational() {
        Some(r) => Ok(BaseNum::rational(BigRational::from_integer(rational_class(r, q)))),
        None => Err(ScalarError::Unsupported(format!(
            "square class of the irrational constant {c} in the base number field"
        ))),
    }
}

/// Canonical representative of `x` modulo squares of the given layer.
pub fn kummer_class(x: &Scalar, layer: BaseLayer, base_square: Option<i64>) -> Result<SquareClass, ScalarError> {
    if x.is_zero() {
        return Err(ScalarError::ZeroInput);
    }
    let r = x
        .as_ratfunc()
        .ok_or_else(|| ScalarError::NotInLayer(format!("{x} involves the quadratic generator")))?;
    let q = base_square.unwrap_or(0);
    match layer {
        BaseLayer::Constants => {
            let c = r
                .as_constant()
                .ok_or_else(|| ScalarError::NotInLayer(format!("{x} is not a constant")))?;
            Ok(SquareClass(Scalar::from_base(constant_class(&c, q)?)))
        }
        BaseLayer::RationalFunctions => {
            let p = r.numer().mul(r.denom());
            let lead = p.leading().cloned().expect("nonzero");
            let mut odd = Poly::one();
            for (i, factor) in p.squarefree_decomposition().iter().enumerate() {
                if i % 2 == 0 {
                    odd = odd.mul(factor);
                }
            }
            let c = constant_class(&lead, q)?;
            Ok(SquareClass(Scalar::from_ratfunc(RatFunc::from_poly(odd.scale(&c)))))
        }
    }
}
