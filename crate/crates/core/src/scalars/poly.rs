//! Dense univariate polynomials in `t` over the base field.

use std::fmt;

use super::base::BaseNum;

/// Coefficients in increasing degree; never carries trailing zeros, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub(crate) coeffs: Vec<BaseNum>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BaseNum::one())
    }

    pub fn constant(c: BaseNum) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![BaseNum::zero(), BaseNum::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BaseNum>) -> Self {
        while coeffs.last().is_some_and(BaseNum::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BaseNum> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BaseNum {
        self.coeffs.first().cloned().unwrap_or_else(BaseNum::zero)
    }

    pub fn coeffs(&self) -> &[BaseNum] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BaseNum::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BaseNum::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BaseNum) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn conj_base(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(BaseNum::conj).collect() }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().and_then(BaseNum::inv).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BaseNum::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &lead_inv;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * d);
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(BaseNum::is_zero) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &BaseNum::from_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub(crate) fn is_negative_monomial(&self) -> bool {
        self.term_count() == 1 && self.leading().is_some_and(|c| c.is_monomial() && c.is_negative_monomial())
    }

    /// Square-free decomposition `p = c · Π Pᵢ^i` (Yun); returns the monic factors `[P₁, P₂, …]`.
    pub fn squarefree_decomposition(&self) -> Vec<Poly> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let c = fp.div_rem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        loop {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.div_rem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            let c = d.div_rem(&g).0;
            d = c.sub(&b.derivative());
        }
        while out.last().is_some_and(|p| p.degree().unwrap_or(0) == 0) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = if k == 0 {
                c.to_string()
            } else {
                let var = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                if c.is_one() {
                    var
                } else if (-c).is_one() {
                    format!("-{var}")
                } else if c.is_monomial() {
                    format!("{c}*{var}")
                } else {
                    format!("({c})*{var}")
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        write!(f, "{out}")
    }
}
