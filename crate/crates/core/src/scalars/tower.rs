use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::base::{self, BaseNum};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::ScalarError;

/// The quadratic top layer `θ² = u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopLayer {
    /// No top layer: scalars live in `F(t)`.
    None,
    /// `θ² = t` (the twisted setting, `θ` written `j`).
    SqrtT,
    /// `θ² = d` for a rational `d` that is not a square in `F`.
    SqrtConst(BigRational),
}

impl TopLayer {
    fn join(&self, other: &TopLayer) -> TopLayer {
        match (self, other) {
            (TopLayer::None, o) => o.clone(),
            (s, TopLayer::None) => s.clone(),
            (a, b) if a == b => a.clone(),
            (a, b) => panic!("scalars from incompatible quadratic layers {a:?} and {b:?}"),
        }
    }

    fn square(&self) -> RatFunc {
        match self {
            TopLayer::None => RatFunc::zero(),
            TopLayer::SqrtT => RatFunc::from_poly(Poly::t()),
            TopLayer::SqrtConst(d) => RatFunc::constant(BaseNum::rational(d.clone())),
        }
    }
}

/// Description of a scalar tower `F ⊂ F(t) ⊂ F(t)(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    /// `Some(q)` adjoins `s` with `s² = q` to ℚ (`q = -1` prints as `i`).
    pub base_square: Option<i64>,
    pub top: TopLayer,
}

fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    &(&sn * &sn) == n && &(&sd * &sd) == d
}

/// Rational square root, when one exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    is_rational_square(r).then(|| BigRational::new(r.numer().sqrt(), r.denom().sqrt()))
}

impl Tower {
    /// ℚ(t) with no quadratic layer.
    pub fn rational() -> Self {
        Tower { base_square: None, top: TopLayer::None }
    }

    /// `F(t)(j)` with `j² = t`.
    pub fn twisted(base_square: Option<i64>) -> Result<Self, ScalarError> {
        Self::new(base_square, TopLayer::SqrtT)
    }

    /// `F(t)(j)` with `j² = d`.
    pub fn untwisted(base_square: Option<i64>, d: BigRational) -> Result<Self, ScalarError> {
        Self::new(base_square, TopLayer::SqrtConst(d))
    }

    pub fn new(base_square: Option<i64>, top: TopLayer) -> Result<Self, ScalarError> {
        if let Some(q) = base_square {
            let qr = BigRational::from_integer(BigInt::from(q));
            if q == 0 || is_rational_square(&qr) {
                return Err(ScalarError::InvalidTower(format!("{q} is a square in Q")));
            }
            if !is_squarefree(q) {
                return Err(ScalarError::InvalidTower(format!("{q} is not square-free")));
            }
        }
        if let TopLayer::SqrtConst(d) = &top {
            if d.is_zero() || is_rational_square(d) {
                return Err(ScalarError::InvalidTower(format!("{} is a square in the base field", base::fmt_rational(d))));
            }
            if let Some(q) = base_square {
                let dq = d / BigRational::from_integer(BigInt::from(q));
                if is_rational_square(&dq) {
                    return Err(ScalarError::InvalidTower(format!(
                        "{} is a square in Q(sqrt({q}))",
                        base::fmt_rational(d)
                    )));
                }
            }
        }
        Ok(Tower { base_square, top })
    }

    pub fn q(&self) -> i64 {
        self.base_square.unwrap_or(0)
    }

    pub fn has_top(&self) -> bool {
        self.top != TopLayer::None
    }

    /// The top generator `j`.
    pub fn j(&self) -> Result<Scalar, ScalarError> {
        if !self.has_top() {
            return Err(ScalarError::NoTopLayer);
        }
        Ok(Scalar {
            top: self.top.clone(),
            re: RatFunc::zero(),
            im: RatFunc::one(),
        })
    }

    /// The base generator `s` (`i` when `s² = -1`).
    pub fn s(&self) -> Result<Scalar, ScalarError> {
        match self.base_square {
            Some(q) => Ok(Scalar::from_base(BaseNum::generator(q))),
            None => Err(ScalarError::NoBaseGenerator),
        }
    }

    pub fn t(&self) -> Scalar {
        Scalar::t()
    }

    /// Lifts a scalar built from constants into this tower (records the top layer).
    pub fn embed(&self, x: &Scalar) -> Scalar {
        let mut y = x.clone();
        y.top = y.top.join(&self.top);
        y
    }

    pub fn parse(&self, s: &str) -> Result<Scalar, ScalarError> {
        super::parse::parse_scalar(self, s)
    }
}

fn is_squarefree(q: i64) -> bool {
    let mut n = q.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        if n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base_square {
            None => write!(f, "Q")?,
            Some(q) => write!(f, "Q({})", if q == -1 { "i".to_string() } else { format!("s: s^2={q}") })?,
        }
        write!(f, "(t)")?;
        match &self.top {
            TopLayer::None => Ok(()),
            TopLayer::SqrtT => write!(f, "(j: j^2=t)"),
            TopLayer::SqrtConst(d) => write!(f, "(j: j^2={})", base::fmt_rational(d)),
        }
    }
}

/// An exact scalar `re + im·j` of the tower.
#[derive(Clone, Debug)]
pub struct Scalar {
    pub(crate) top: TopLayer,
    pub(crate) re: RatFunc,
    pub(crate) im: RatFunc,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { top: TopLayer::None, re: RatFunc::zero(), im: RatFunc::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_base(BaseNum::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_base(BaseNum::rational(r))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_base(b: BaseNum) -> Self {
        Self::from_ratfunc(RatFunc::constant(b))
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        Scalar { top: TopLayer::None, re: r, im: RatFunc::zero() }
    }

    pub fn t() -> Self {
        Self::from_ratfunc(RatFunc::from_poly(Poly::t()))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Components `(a, b)` of `a + b·j`.
    pub fn parts(&self) -> (&RatFunc, &RatFunc) {
        (&self.re, &self.im)
    }

    /// True when the value lies in `F(t)`, the fixed field of the conjugation.
    pub fn in_base_layer(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        self.in_base_layer().then_some(&self.re)
    }

    pub fn as_constant(&self) -> Option<BaseNum> {
        self.as_ratfunc().and_then(RatFunc::as_constant)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().and_then(|b| b.as_rational().cloned())
    }

    pub fn as_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    pub fn top_layer(&self) -> &TopLayer {
        &self.top
    }

    /// The nontrivial automorphism of the top layer: `j ↦ -j`, identity below.
    pub fn conjugate(&self) -> Scalar {
        Scalar { top: self.top.clone(), re: self.re.clone(), im: self.im.neg() }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar { top: self.top.clone(), re: self.re.inv()?, im: RatFunc::zero() });
        }
        let u = self.top.square();
        let norm = self.re.mul(&self.re).sub(&u.mul(&self.im).mul(&self.im));
        let ninv = norm.inv()?;
        Some(Scalar { top: self.top.clone(), re: self.re.mul(&ninv), im: self.im.neg().mul(&ninv) })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|inv| self * &inv)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Some(acc)
    }

    /// The norm `x·γ(x)`, an element of `F(t)`.
    pub fn norm(&self) -> Scalar {
        self * &self.conjugate()
    }

    pub fn is_negative_monomial(&self) -> bool {
        self.im.is_zero() && self.re.is_polynomial() && self.re.num.is_negative_monomial()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { top: self.top.join(&rhs.top), re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { top: self.top.join(&rhs.top), re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let top = self.top.join(&rhs.top);
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar { top, re: self.re.mul(&rhs.re), im: RatFunc::zero() };
        }
        let u = top.square();
        let re = self.re.mul(&rhs.re).add(&u.mul(&self.im.mul(&rhs.im)));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Scalar { top, re, im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { top: self.top.clone(), re: self.re.neg(), im: self.im.neg() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let jpart = if self.im.is_one() {
            "j".to_string()
        } else if self.im.neg().is_one() {
            "-j".to_string()
        } else if self.im.is_simple() {
            format!("{}*j", self.im)
        } else {
            format!("({})*j", self.im)
        };
        if self.re.is_zero() {
            write!(f, "{jpart}")
        } else if jpart.starts_with('-') {
            write!(f, "{}{jpart}", self.re)
        } else {
            write!(f, "{}+{jpart}", self.re)
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Scalar {
    /// Whether `self` has the unit value `±1`.
    pub fn is_sign(&self) -> bool {
        self.as_rational().is_some_and(|r| r.abs().is_one())
    }
}
