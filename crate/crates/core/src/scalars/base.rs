//! The bottom field `F`: either ℚ or ℚ(s) with `s² = q` for a square-free integer `q ≠ 0, 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element `re + im·s` of the base field. `q == 0` means the field is ℚ and `im` is zero.
#[derive(Clone, Debug)]
pub struct BaseNum {
    pub(crate) re: BigRational,
    pub(crate) im: BigRational,
    pub(crate) q: i64,
}

pub(crate) fn join_q(a: i64, b: i64) -> i64 {
    if a == b || b == 0 {
        a
    } else if a == 0 {
        b
    } else {
        panic!("scalars from incompatible base fields Q(sqrt({a})) and Q(sqrt({b}))")
    }
}

impl BaseNum {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(re: BigRational) -> Self {
        BaseNum { re, im: BigRational::zero(), q: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The generator `s` of ℚ(s), `s² = q`.
    pub fn generator(q: i64) -> Self {
        BaseNum { re: BigRational::zero(), im: BigRational::one(), q }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.im.is_zero().then_some(&self.re)
    }

    pub fn q(&self) -> i64 {
        if self.im.is_zero() {
            0
        } else {
            self.q
        }
    }

    pub fn conj(&self) -> Self {
        BaseNum { re: self.re.clone(), im: -self.im.clone(), q: self.q }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(BaseNum { re: self.re.recip(), im: BigRational::zero(), q: self.q });
        }
        let q = BigRational::from_integer(BigInt::from(self.q));
        let norm = &self.re * &self.re - &q * &self.im * &self.im;
        Some(BaseNum { re: &self.re / &norm, im: -&self.im / &norm, q: self.q })
    }

    /// Whether the printed form is a single signed factor (no inner `+`/`-`).
    pub(crate) fn is_monomial(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }

    pub(crate) fn is_negative_monomial(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

impl PartialEq for BaseNum {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im && (self.im.is_zero() || self.q == other.q)
    }
}

impl Eq for BaseNum {}

impl<'a> Add<&'a BaseNum> for &'a BaseNum {
    type Output = BaseNum;
    fn add(self, rhs: &BaseNum) -> BaseNum {
        BaseNum { re: &self.re + &rhs.re, im: &self.im + &rhs.im, q: join_q(self.q, rhs.q) }
    }
}

impl<'a> Sub<&'a BaseNum> for &'a BaseNum {
    type Output = BaseNum;
    fn sub(self, rhs: &BaseNum) -> BaseNum {
        BaseNum { re: &self.re - &rhs.re, im: &self.im - &rhs.im, q: join_q(self.q, rhs.q) }
    }
}

impl<'a> Mul<&'a BaseNum> for &'a BaseNum {
    type Output = BaseNum;
    fn mul(self, rhs: &BaseNum) -> BaseNum {
        let q = join_q(self.q, rhs.q);
        if self.im.is_zero() && rhs.im.is_zero() {
            return BaseNum { re: &self.re * &rhs.re, im: BigRational::zero(), q };
        }
        let qq = BigRational::from_integer(BigInt::from(q));
        BaseNum {
            re: &self.re * &rhs.re + qq * &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
            q,
        }
    }
}

impl Neg for &BaseNum {
    type Output = BaseNum;
    fn neg(self) -> BaseNum {
        BaseNum { re: -self.re.clone(), im: -self.im.clone(), q: self.q }
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn generator_symbol(q: i64) -> &'static str {
    if q == -1 {
        "i"
    } else {
        "s"
    }
}

impl fmt::Display for BaseNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = generator_symbol(self.q);
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                gen.to_string()
            } else if (-im).is_one() {
                format!("-{gen}")
            } else {
                format!("{}*{gen}", fmt_rational(im))
            }
        };
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}", im_part(&self.im))
        } else {
            let im = im_part(&self.im);
            if im.starts_with('-') {
                write!(f, "{}{}", fmt_rational(&self.re), im)
            } else {
                write!(f, "{}+{}", fmt_rational(&self.re), im)
            }
        }
    }
}
