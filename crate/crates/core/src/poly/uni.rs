//! Dense univariate polynomials over [`Scalar`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(Scalar::from_rational).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Self::new(vec![-r.clone(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Scalar {
        self.eval(&Scalar::from_rational(x.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex_f64().0;
        }
        acc
    }

    pub fn scale(&self, k: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Scalar::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        UniPoly::new(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = &r[i + j] - &(&c * dc);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return if self.is_zero() { UniPoly::zero() } else { UniPoly::one() };
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's algorithm: monic `(factor, multiplicity)` pairs with pairwise
    /// coprime squarefree factors, so that `self = lc * prod factor^mult`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Returns `p` with `p^2 = self` when such a polynomial exists over the
    /// field (possibly after adjoining the square root of the leading
    /// coefficient). The root has a leading coefficient with positive leading
    /// coordinate.
    pub fn square_root(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let n = self.degree().unwrap();
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lead = self.lc().sqrt()?;
        if !self.coeffs.iter().all(|c| Scalar::compatible(&lead, c)) {
            return None;
        }
        let two_lead = &lead + &lead;
        // determine coefficients from the top down
        let mut p = vec![Scalar::zero(); m + 1];
        p[m] = lead;
        for k in (0..m).rev() {
            // coefficient of x^(m + k) in p^2
            let mut acc = self.coeff(m + k);
            for i in (k + 1)..=m {
                let j = m + k - i;
                if j > k && j <= m {
                    acc = &acc - &(&p[i] * &p[j]);
                }
            }
            p[k] = &acc / &two_lead;
        }
        let root = UniPoly::new(p);
        (&root * &root == *self).then_some(root)
    }

    /// True when `self = c * q^2` for a constant `c` and some polynomial `q`.
    pub fn is_const_times_square(&self) -> bool {
        !self.is_zero() && self.squarefree_decomposition().iter().all(|(_, m)| m % 2 == 0)
    }

    /// Multiplies through so that all coefficients are integers with gcd 1 and
    /// positive leading coefficient. Only for rational polynomials.
    pub fn primitive_integer(&self) -> UniPoly {
        assert!(self.is_rational(), "primitive_integer needs rational coefficients");
        let v = crate::scalar::normalize_projective(&self.coeffs.iter().rev().cloned().collect::<Vec<_>>());
        UniPoly::new(v.into_iter().rev().collect())
    }

    /// Composition `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Upper bound for the absolute value of every real root.
    pub fn root_bound(&self) -> Rational {
        let n = self.degree().expect("root bound of zero polynomial");
        let lc_low = abs_lower(&self.lc());
        let mut m = Rational::zero();
        for c in &self.coeffs[..n] {
            let v = abs_upper(c);
            if v > m {
                m = v;
            }
        }
        Rational::one() + m / lc_low
    }

    /// Signs of the values at `x` (Sturm helpers); needs real coefficients.
    pub(crate) fn sign_at(&self, x: &Rational) -> i32 {
        self.eval_rational(x).signum().expect("real polynomial required")
    }
}

/// A rational upper bound for `|x|` of a real scalar.
pub(crate) fn abs_upper(x: &Scalar) -> Rational {
    let re = x.re().abs();
    if x.is_rational() {
        return re;
    }
    let d = x.radicand().abs();
    // sqrt(d) <= isqrt(d) + 1
    let s = Rational::from_integer(num_integer::Roots::sqrt(&d) + 1);
    re + x.ir().abs() * s
}

/// A positive rational lower bound for `|x|`, for nonzero real `x`.
pub(crate) fn abs_lower(x: &Scalar) -> Rational {
    if x.is_rational() {
        return x.re().abs();
    }
    let ax = x.abs_real().expect("real scalar");
    assert!(!ax.is_zero(), "abs_lower of zero");
    let mut lo = abs_upper(x);
    while Scalar::from_rational(lo.clone()).cmp_real(&ax) != Some(std::cmp::Ordering::Less) {
        lo /= Rational::from_integer(2.into());
    }
    assert!(lo.is_positive(), "abs_lower of zero");
    lo
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        UniPoly::new(c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}
