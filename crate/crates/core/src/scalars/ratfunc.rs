//! Rational functions `F(t)` in reduced form: coprime numerator and monic denominator.

use std::fmt;

use super::base::BaseNum;
use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    pub(crate) num: Poly,
    pub(crate) den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num, den: Poly::one() }
    }

    pub fn constant(c: BaseNum) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// Builds `num/den` in canonical form. Panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.leading().and_then(BaseNum::inv).expect("nonzero constant");
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lead = den.leading().and_then(BaseNum::inv).expect("nonzero leading coefficient");
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.scale(&lead), den: den.scale(&lead) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a base-field constant, when it has no `t`-dependence.
    pub fn as_constant(&self) -> Option<BaseNum> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn conj_base(&self) -> RatFunc {
        RatFunc { num: self.num.conj_base(), den: self.den.conj_base() }
    }

    /// True when the printed form is a single signed factor.
    pub(crate) fn is_simple(&self) -> bool {
        self.den.is_one() && self.num.term_count() == 1 && self.num.leading().is_some_and(BaseNum::is_monomial)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.term_count() == 1
            && self.num.leading().is_some_and(BaseNum::is_monomial)
        {
            self.num.to_string()
        } else {
            format!("({})", self.num)
        };
        let den = if self.den.term_count() == 1 {
            self.den.to_string()
        } else {
            format!("({})", self.den)
        };
        write!(f, "{num}/{den}")
    }
}
