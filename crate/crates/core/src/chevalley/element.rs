use std::collections::BTreeMap;

use crate::scalars::Scalar;

/// A sparse vector in the Chevalley basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    coeffs: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Scalar::one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(i, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&i) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.coeffs.remove(&i);
                }
            }
            None => {
                self.coeffs.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (i, v) in other.iter() {
            self.add_term(i, &(v * c));
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { coeffs: self.coeffs.iter().map(|(&i, v)| (i, v * c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut out = Element::zero();
        for (i, v) in self.iter() {
            out.add_term(i, &f(v));
        }
        out
    }
}

impl FromIterator<(usize, Scalar)> for Element {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut e = Element::zero();
        for (i, c) in iter {
            e.add_term(i, &c);
        }
        e
    }
}
