//! Coefficient fields: exact reals ([`Scalar`]) and exact complex numbers ([`Cx`]).

use std::fmt;

use num_complex::Complex64;

use crate::scalar::Scalar;

/// Arithmetic needed by the linear algebra layer.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Number of real coordinates per element (1 for reals, 2 for complex).
    const REAL_DIM: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fdiv(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn conj(&self) -> Self;
    /// Appends the real coordinates of `self` to `out`.
    fn push_real(&self, out: &mut Vec<Scalar>);
    fn to_c64(&self) -> Complex64;
    /// Inverse of [`Field::push_real`]; `coords.len() == REAL_DIM`.
    fn from_real(coords: &[Scalar]) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.fadd(&a.fmul(b));
    }
}

impl Field for Scalar {
    const REAL_DIM: usize = 1;

    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fdiv(&self, o: &Self) -> Self {
        self / o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn push_real(&self, out: &mut Vec<Scalar>) {
        out.push(self.clone());
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn from_real(coords: &[Scalar]) -> Self {
        coords[0].clone()
    }
}

/// Exact complex number `re + i*im`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cx {
    pub re: Scalar,
    pub im: Scalar,
}

impl Cx {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Cx { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        Cx { re, im: Scalar::zero() }
    }

    pub fn i() -> Self {
        Cx { re: Scalar::zero(), im: Scalar::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})i", self.im)
        } else {
            write!(f, "{} + ({})i", self.re, self.im)
        }
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Field for Cx {
    const REAL_DIM: usize = 2;

    fn zero() -> Self {
        Cx::default()
    }
    fn one() -> Self {
        Cx::real(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        Cx { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn fsub(&self, o: &Self) -> Self {
        Cx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn fmul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Cx::real(&self.re * &o.re);
        }
        Cx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn fdiv(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return Cx { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let n = o.norm_sqr();
        let num = self.fmul(&o.conj());
        Cx { re: &num.re / &n, im: &num.im / &n }
    }
    fn fneg(&self) -> Self {
        Cx { re: -&self.re, im: -&self.im }
    }
    fn from_scalar(s: Scalar) -> Self {
        Cx::real(s)
    }
    fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -&self.im }
    }
    fn push_real(&self, out: &mut Vec<Scalar>) {
        out.push(self.re.clone());
        out.push(self.im.clone());
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn from_real(coords: &[Scalar]) -> Self {
        Cx::new(coords[0].clone(), coords[1].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_division() {
        let a = Cx::new(Scalar::int(1), Scalar::int(2));
        let b = Cx::new(Scalar::int(3), Scalar::int(-1));
        assert_eq!(a.fmul(&b).fdiv(&b), a);
        assert_eq!(Cx::i().fmul(&Cx::i()), Cx::real(Scalar::int(-1)));
    }
}
