//! Exact scalars: rationals, optionally extended by a single square root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b*sqrt(d)` with `a, b` rational and `d` square-free.
///
/// Canonical form: `d == 0` exactly when `b == 0`. Two scalars carrying
/// different roots cannot be combined; that is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u32,
}

fn rat(n: i64, m: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(m))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero(), d: 0 }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar { a: BigRational::from_integer(BigInt::from(n)), b: BigRational::zero(), d: 0 }
    }

    /// `n/m`; panics on `m == 0`.
    pub fn frac(n: i64, m: i64) -> Self {
        assert!(m != 0, "zero denominator");
        Scalar { a: rat(n, m), b: BigRational::zero(), d: 0 }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { a: q, b: BigRational::zero(), d: 0 }
    }

    /// `a + b*sqrt(d)`; `d` must be a square-free integer greater than one.
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Result<Self> {
        if d < 2 || square_free_part(d as u64).0 != 1 {
            return Err(Error::InvalidInput(format!("sqrt({d}) is not a square-free root")));
        }
        Ok(Scalar { a, b, d }.canonical())
    }

    /// `sqrt(d)` for square-free `d > 1`.
    pub fn sqrt_int(d: u32) -> Result<Self> {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn canonical(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if there is no irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The adjoined root, 0 for rationals.
    pub fn root(&self) -> u32 {
        self.d
    }

    fn join_root(&self, other: &Scalar) -> u32 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("cannot combine sqrt({d}) and sqrt({e}) in one computation"),
        }
    }

    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Scalar::from_rational(self.a.recip());
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        Scalar { a: &self.a / &norm, b: -&self.b / &norm, d: self.d }.canonical()
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Exact square root of a non-negative rational, if it lies in some `Q(sqrt(d))`.
    pub fn sqrt(&self) -> Option<Scalar> {
        let q = self.to_rational()?;
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Scalar::zero());
        }
        // sqrt(p/r) = sqrt(p*r)/r
        let p = q.numer().clone();
        let r = q.denom().clone();
        let pr = (&p * &r).to_u64()?;
        let (sq, free) = square_free_part(pr);
        let coeff = BigRational::new(BigInt::from(sq), r);
        if free == 1 {
            Some(Scalar::from_rational(coeff))
        } else {
            Some(Scalar { a: BigRational::zero(), b: coeff, d: u32::try_from(free).ok()? })
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Closest rational with denominator at most `max_den` (continued fractions).
    pub fn approximate(x: f64, max_den: i64) -> Option<Scalar> {
        if !x.is_finite() {
            return None;
        }
        let (mut h0, mut h1) = (0i128, 1i128);
        let (mut k0, mut k1) = (1i128, 0i128);
        let mut v = x;
        for _ in 0..64 {
            let a = v.floor();
            if a.abs() > 1e15 {
                break;
            }
            let ai = a as i128;
            let h2 = ai * h1 + h0;
            let k2 = ai * k1 + k0;
            if k2 > max_den as i128 {
                break;
            }
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            let frac = v - a;
            if frac.abs() < 1e-12 {
                break;
            }
            v = 1.0 / frac;
        }
        if k1 == 0 {
            return None;
        }
        Some(Scalar::from_rational(BigRational::new(BigInt::from(h1), BigInt::from(k1))))
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Split `n = s^2 * f` with `f` square-free; returns `(s, f)`.
pub(crate) fn square_free_part(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    f *= n;
    (s, f)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::int(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'b> Add<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &'b Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let d = self.join_root(o);
        Scalar { a: &self.a + &o.a, b: &self.b + &o.b, d }.canonical()
    }
}

impl<'b> Sub<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &'b Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        let d = self.join_root(o);
        Scalar { a: &self.a - &o.a, b: &self.b - &o.b, d }.canonical()
    }
}

impl<'b> Mul<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &'b Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar::from_rational(&self.a * &o.a);
        }
        let d = self.join_root(o);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Scalar { a, b, d }.canonical()
    }
}

impl<'b> Div<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &'b Scalar) -> Scalar {
        if o.b.is_zero() {
            assert!(!o.a.is_zero(), "division by zero");
            if self.b.is_zero() {
                return Scalar::from_rational(&self.a / &o.a);
            }
            return Scalar { a: &self.a / &o.a, b: &self.b / &o.a, d: self.d }.canonical();
        }
        self * &o.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &'a Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let irr = format!("{}*sqrt({})", fmt_rat(&self.b), self.d);
        if self.a.is_zero() {
            write!(f, "{irr}")
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", fmt_rat(&self.a), fmt_rat(&-&self.b), self.d)
        } else {
            write!(f, "{} + {}", fmt_rat(&self.a), irr)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse { line: 0, msg: format!("bad rational '{s}'") };
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else if let Some((ip, fp)) = s.split_once('.') {
        // finite decimals are exact rationals
        let neg = ip.trim_start().starts_with('-');
        let digits = format!("{}{}", ip.trim().trim_start_matches(['-', '+']), fp.trim());
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), fp.trim().len());
        let q = BigRational::new(n, d);
        Ok(if neg { -q } else { q })
    } else {
        Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))
    }
}

/// Parses `p/q`, `p/q*sqrt(d)`, `a + b*sqrt(d)`, `sqrt(d)`, or a finite decimal.
impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse { line: 0, msg: "empty number".into() });
        }
        let Some(pos) = t.find("sqrt(") else {
            return Ok(Scalar::from_rational(parse_rat(&t)?));
        };
        let close = t[pos..].find(')').map(|c| c + pos).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unclosed sqrt in '{s}'"),
        })?;
        let radicand = parse_rat(&t[pos + 5..close])?;
        let root = Scalar::from_rational(radicand).sqrt().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("sqrt argument in '{s}' must be a non-negative rational"),
        })?;
        let head = &t[..pos];
        // split head into optional rational summand and coefficient
        let (summand, coeff) = match head.rfind(['+', '-']).filter(|&i| i > 0) {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let coeff = coeff.trim_end_matches('*');
        let c = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rat(other)?,
        };
        let mut out = &Scalar::from_rational(c) * &root;
        if !summand.is_empty() {
            out = &out + &Scalar::from_rational(parse_rat(summand)?);
        }
        let tail = &t[close + 1..];
        if !tail.is_empty() {
            out = &out + &Scalar::from_rational(parse_rat(tail)?);
        }
        Ok(out)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roundtrip() {
        let a = Scalar::frac(3, 7);
        let b = Scalar::frac(-5, 11);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(Scalar::frac(2, 4), Scalar::frac(1, 2));
    }

    #[test]
    fn quadratic_arithmetic() {
        let r3 = Scalar::sqrt_int(3).unwrap();
        assert_eq!(&r3 * &r3, Scalar::int(3));
        let x = &Scalar::int(1) + &r3;
        let y = x.recip();
        assert_eq!(&x * &y, Scalar::one());
        assert_eq!((&r3 - &r3).root(), 0);
    }

    #[test]
    fn sign_of_quadratic() {
        let r2 = Scalar::sqrt_int(2).unwrap();
        assert_eq!((&Scalar::int(1) - &r2).signum(), -1);
        assert_eq!((&Scalar::int(2) - &r2).signum(), 1);
        assert_eq!((&Scalar::frac(-3, 2) + &r2).signum(), -1);
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(Scalar::frac(9, 4).sqrt().unwrap(), Scalar::frac(3, 2));
        let s = Scalar::frac(3, 4).sqrt().unwrap();
        assert_eq!(s.to_string(), "1/2*sqrt(3)");
        assert_eq!(&s * &s, Scalar::frac(3, 4));
        assert!(Scalar::int(-1).sqrt().is_none());
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/6".parse::<Scalar>().unwrap(), Scalar::frac(1, 2));
        let s: Scalar = "1/6 * sqrt(3)".parse().unwrap();
        assert_eq!(s.to_string(), "1/6*sqrt(3)");
        let t: Scalar = "1 - 1/2*sqrt(5)".parse().unwrap();
        assert_eq!(t.to_string(), "1 - 1/2*sqrt(5)");
        assert_eq!("-sqrt(2)".parse::<Scalar>().unwrap(), -Scalar::sqrt_int(2).unwrap());
        assert_eq!("0.25".parse::<Scalar>().unwrap(), Scalar::frac(1, 4));
        assert_eq!("sqrt(3/4)".parse::<Scalar>().unwrap(), Scalar::frac(3, 4).sqrt().unwrap());
    }

    #[test]
    #[should_panic]
    fn mixed_roots_panic() {
        let _ = &Scalar::sqrt_int(2).unwrap() + &Scalar::sqrt_int(3).unwrap();
    }
}
