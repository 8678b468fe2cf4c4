//! Exact scalars: rationals, optionally extended by a single square root.
//!
//! A [`Scalar`] is `re + ir * sqrt(d)` with `re`, `ir` rational and `d` a
//! non-square integer. Elements with `ir == 0` are plain rationals and carry
//! `d == 0`. Two extension elements may only be combined when their radicands
//! differ by a rational square; anything else is a programming error and
//! panics, since every computation works inside one fixed field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Rational = BigRational;

/// Integer square root when `n` is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Rational square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/4"` or `"1.25"` (also `"1e-3"`-free decimals) exactly.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("invalid rational '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        let q = Rational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // very large numerator/denominator: scale down before converting
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Removes square factors `p^2` for small primes; returns `(f, d')` with `d = f^2 d'`.
fn strip_small_squares(d: &BigInt) -> (BigInt, BigInt) {
    let mut rest = d.clone();
    let mut f = BigInt::one();
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97] {
        let p2 = BigInt::from(p * p);
        while !rest.is_zero() && (&rest % &p2).is_zero() {
            rest /= &p2;
            f *= p;
        }
    }
    (f, rest)
}

#[derive(Clone, Debug)]
pub struct Scalar {
    re: Rational,
    ir: Rational,
    d: BigInt,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar { re: q, ir: Rational::zero(), d: BigInt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(ratio(n, d))
    }

    /// `re + ir * sqrt(d)`; `d` must not be a perfect square unless `ir` is zero.
    pub fn new_ext(re: Rational, ir: Rational, d: BigInt) -> Self {
        if ir.is_zero() {
            return Self::from_rational(re);
        }
        if let Some(r) = int_sqrt_exact(&d) {
            return Self::from_rational(re + ir * Rational::from_integer(r));
        }
        let (f, d2) = strip_small_squares(&d);
        Scalar { re, ir: ir * Rational::from_integer(f), d: d2 }
    }

    /// `sqrt(q)` for a rational `q`, landing in `Q(sqrt(q))` when `q` is not a square.
    pub fn sqrt_of_rational(q: &Rational) -> Scalar {
        if let Some(r) = rational_sqrt(q) {
            return Scalar::from_rational(r);
        }
        // sqrt(n/m) = sqrt(n m) / m
        let nm = q.numer() * q.denom();
        Scalar::new_ext(Rational::zero(), Rational::new(BigInt::one(), q.denom().clone()), nm)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn ir(&self) -> &Rational {
        &self.ir
    }

    /// Radicand of the extension, zero for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ir.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.ir.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.ir.is_zero()
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.re)
        } else {
            None
        }
    }

    /// True when the value is a real number.
    pub fn is_real(&self) -> bool {
        self.ir.is_zero() || self.d.is_positive()
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), ir: -self.ir.clone(), d: self.d.clone() }
    }

    /// `x * conj(x)`, always rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.ir * &self.ir * Rational::from_integer(self.d.clone())
    }

    /// Exact sign for real values, `None` for non-real ones.
    pub fn signum(&self) -> Option<i32> {
        if self.ir.is_zero() {
            return Some(sign_of(&self.re));
        }
        if !self.d.is_positive() {
            return None;
        }
        let sa = sign_of(&self.re);
        let sb = sign_of(&self.ir);
        if sa == 0 {
            return Some(sb);
        }
        if sa == sb {
            return Some(sa);
        }
        // opposite signs: compare re^2 with ir^2 d
        let lhs = &self.re * &self.re;
        let rhs = &self.ir * &self.ir * Rational::from_integer(self.d.clone());
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        })
    }

    pub fn cmp_real(&self, other: &Scalar) -> Option<Ordering> {
        (self - other).signum().map(|s| s.cmp(&0))
    }

    pub fn abs_real(&self) -> Option<Scalar> {
        self.signum().map(|s| if s < 0 { -self.clone() } else { self.clone() })
    }

    pub fn to_f64(&self) -> Option<f64> {
        if !self.is_real() {
            return None;
        }
        let (re, im) = self.to_complex_f64();
        debug_assert_eq!(im, 0.0);
        Some(re)
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        let re = rat_to_f64(&self.re);
        if self.ir.is_zero() {
            return (re, 0.0);
        }
        let d = self.d.to_f64().unwrap_or(f64::INFINITY);
        let ir = rat_to_f64(&self.ir);
        if d > 0.0 {
            (re + ir * d.sqrt(), 0.0)
        } else {
            (re, ir * (-d).sqrt())
        }
    }

    pub fn recip(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.ir.is_zero() {
            return Scalar::from_rational(self.re.recip());
        }
        let n = self.norm();
        Scalar { re: &self.re / &n, ir: -&self.ir / &n, d: self.d.clone() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A square root inside the current field (rationals, or the element's own
    /// quadratic extension), or a fresh `Q(sqrt(q))` for a rational `q`.
    /// Returns `None` when the root would need a larger field. The returned root
    /// has positive leading coordinate.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.ir.is_zero() {
            return Some(Scalar::sqrt_of_rational(&self.re));
        }
        let n = rational_sqrt(&self.norm())?;
        let two = rat(2);
        for cand in [(&self.re + &n) / &two, (&self.re - &n) / &two] {
            if cand.is_zero() {
                continue;
            }
            if let Some(x) = rational_sqrt(&cand) {
                let y = &self.ir / (&two * &x);
                let r = Scalar { re: x, ir: y, d: self.d.clone() };
                debug_assert!((&r * &r) == *self);
                return Some(r);
            }
        }
        // root could be y*sqrt(e) with e outside the field; not representable
        None
    }

    /// Square root only if it stays rational.
    pub fn sqrt_rational(&self) -> Option<Rational> {
        self.to_rational().and_then(rational_sqrt)
    }

    /// Brings two extension elements onto a common radicand.
    fn aligned(a: &Scalar, b: &Scalar) -> (Rational, Rational, Rational, Rational, BigInt) {
        if a.ir.is_zero() {
            return (a.re.clone(), Rational::zero(), b.re.clone(), b.ir.clone(), b.d.clone());
        }
        if b.ir.is_zero() || a.d == b.d {
            return (a.re.clone(), a.ir.clone(), b.re.clone(), b.ir.clone(), a.d.clone());
        }
        // d_a d_b must be a square k^2; then sqrt(d_b) = (k / d_a) sqrt(d_a)
        let prod = &a.d * &b.d;
        let k = int_sqrt_exact(&prod).unwrap_or_else(|| {
            panic!("incompatible quadratic extensions sqrt({}) and sqrt({})", a.d, b.d)
        });
        if a.d.abs() <= b.d.abs() {
            let f = Rational::new(k, a.d.clone());
            (a.re.clone(), a.ir.clone(), b.re.clone(), &b.ir * f, a.d.clone())
        } else {
            let f = Rational::new(k, b.d.clone());
            (a.re.clone(), &a.ir * f, b.re.clone(), b.ir.clone(), b.d.clone())
        }
    }

    /// True when `a` and `b` live in a common quadratic field.
    pub fn compatible(a: &Scalar, b: &Scalar) -> bool {
        a.ir.is_zero() || b.ir.is_zero() || a.d == b.d || int_sqrt_exact(&(&a.d * &b.d)).is_some()
    }

    fn build(re: Rational, ir: Rational, d: BigInt) -> Scalar {
        if ir.is_zero() {
            Scalar::from_rational(re)
        } else {
            Scalar { re, ir, d }
        }
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.re != other.re {
            return false;
        }
        match (self.ir.is_zero(), other.ir.is_zero()) {
            (true, true) => true,
            (false, false) => {
                self.d.is_positive() == other.d.is_positive()
                    && self.ir.is_positive() == other.ir.is_positive()
                    && &self.ir * &self.ir * Rational::from_integer(self.d.abs())
                        == &other.ir * &other.ir * Rational::from_integer(other.d.abs())
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_rational(s).map(Scalar::from_rational)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ir.is_zero() {
            return write!(f, "{}", self.re);
        }
        let rad = format!("sqrt({})", self.d);
        let irpart = if self.ir.is_one() {
            rad
        } else if (-&self.ir).is_one() {
            format!("-{rad}")
        } else {
            format!("{}*{rad}", self.ir)
        };
        if self.re.is_zero() {
            write!(f, "{irpart}")
        } else if irpart.starts_with('-') {
            write!(f, "{} - {}", self.re, &irpart[1..])
        } else {
            write!(f, "{} + {irpart}", self.re)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.ir.is_zero() && rhs.ir.is_zero() {
            return Scalar::from_rational(&self.re + &rhs.re);
        }
        let (a, b, c, e, d) = Scalar::aligned(self, rhs);
        Scalar::build(a + c, b + e, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if self.ir.is_zero() && rhs.ir.is_zero() {
            return Scalar::from_rational(&self.re - &rhs.re);
        }
        let (a, b, c, e, d) = Scalar::aligned(self, rhs);
        Scalar::build(a - c, b - e, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.ir.is_zero() && rhs.ir.is_zero() {
            return Scalar::from_rational(&self.re * &rhs.re);
        }
        let (a, b, c, e, d) = Scalar::aligned(self, rhs);
        let dq = Rational::from_integer(d.clone());
        let re = &a * &c + &b * &e * dq;
        let ir = a * e + b * c;
        Scalar::build(re, ir, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        if self.ir.is_zero() && rhs.ir.is_zero() {
            assert!(!rhs.re.is_zero(), "division by zero scalar");
            return Scalar::from_rational(&self.re / &rhs.re);
        }
        self * &rhs.recip()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), ir: -self.ir.clone(), d: self.d.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, ir: -self.ir, d: self.d }
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
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Scales a vector so it is a primitive integer vector with first nonzero
/// entry positive. Vectors with irrational entries are instead divided by
/// their first nonzero entry. Zero vectors are returned unchanged.
pub fn normalize_projective(v: &[Scalar]) -> Vec<Scalar> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    if v.iter().all(Scalar::is_rational) {
        let qs: Vec<&Rational> = v.iter().map(|x| x.re()).collect();
        let mut lcm = BigInt::one();
        for q in &qs {
            lcm = lcm.lcm(q.denom());
        }
        let ints: Vec<BigInt> = qs.iter().map(|q| (*q * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for n in &ints {
            g = g.gcd(n);
        }
        if first.re().is_negative() {
            g = -g;
        }
        return ints.into_iter().map(|n| Scalar::from_rational(Rational::new(n, g.clone()))).collect();
    }
    let inv = first.recip();
    v.iter().map(|x| x * &inv).collect()
}

/// Projective equality of coefficient vectors (nonzero scalar multiple).
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Scalar::is_zero);
    };
    if b[i].is_zero() {
        return false;
    }
    // a * b[i] == b * a[i] componentwise
    a.iter().zip(b).all(|(x, y)| x * &b[i] == y * &a[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-7/4").unwrap(), ratio(-7, 4));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let r = Scalar::sqrt_of_rational(&rat(2));
        assert!(!r.is_rational());
        assert_eq!(&r * &r, Scalar::from_int(2));
        let r8 = Scalar::sqrt_of_rational(&rat(8));
        // sqrt(8) = 2 sqrt(2) shares the field
        assert_eq!(&r8 * &r8, Scalar::from_int(8));
        assert_eq!(&r8 / &r, Scalar::from_int(2));
    }

    #[test]
    fn extension_field_ops() {
        let s = Scalar::sqrt_of_rational(&rat(3));
        let x = Scalar::from_int(1) + &s; // 1 + sqrt3
        let y = x.recip();
        assert_eq!(&x * &y, Scalar::one());
        assert_eq!(x.norm(), rat(-2));
        let sq = &x * &x; // 4 + 2 sqrt3
        let back = sq.sqrt().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn signs_of_real_extension() {
        let s2 = Scalar::sqrt_of_rational(&rat(2));
        assert_eq!((Scalar::from_ratio(3, 2) - &s2).signum(), Some(1));
        assert_eq!((Scalar::from_ratio(7, 5) - &s2).signum(), Some(-1));
        let i = Scalar::sqrt_of_rational(&rat(-1));
        assert_eq!(i.signum(), None);
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn projective_normalization() {
        let v = [Scalar::from_ratio(-1, 2), Scalar::from_int(3), Scalar::zero()];
        let n = normalize_projective(&v);
        assert_eq!(n, vec![Scalar::from_int(1), Scalar::from_int(-6), Scalar::zero()]);
        assert!(proportional(&v, &n));
    }

    #[test]
    #[should_panic(expected = "incompatible")]
    fn mixing_fields_panics() {
        let a = Scalar::sqrt_of_rational(&rat(2));
        let b = Scalar::sqrt_of_rational(&rat(3));
        let _ = a + b;
    }
}
