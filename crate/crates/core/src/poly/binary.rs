//! Binary forms (homogeneous polynomials in two variables), points of the
//! projective line, and Möbius transformations.

use std::fmt;

use super::roots::{roots_in_field, Sturm};
use super::uni::UniPoly;
use crate::scalar::{normalize_projective, proportional, Scalar};
use crate::{Error, Result};

/// A point `[first, second]` of the projective line.
pub type P1 = [Scalar; 2];

pub fn p1(a: i64, b: i64) -> P1 {
    [Scalar::from_int(a), Scalar::from_int(b)]
}

pub fn p1_eq(a: &P1, b: &P1) -> bool {
    proportional(a, b)
}

/// Scales to `[1, r]`, or `[0, 1]`.
pub fn p1_normalize(a: &P1) -> P1 {
    if a[0].is_zero() {
        assert!(!a[1].is_zero(), "zero vector is not a point of P1");
        [Scalar::zero(), Scalar::one()]
    } else {
        [Scalar::one(), &a[1] / &a[0]]
    }
}

/// Canonical representative: primitive integer vector when rational.
pub fn p1_canonical(a: &P1) -> P1 {
    let v = normalize_projective(a);
    [v[0].clone(), v[1].clone()]
}

pub fn p1_det(a: &P1, b: &P1) -> Scalar {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// `sum c[i] * first^i * second^(deg - i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    deg: usize,
    c: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(deg: usize, mut c: Vec<Scalar>) -> Self {
        assert!(c.len() <= deg + 1, "too many coefficients for degree {deg}");
        c.resize(deg + 1, Scalar::zero());
        BinaryForm { deg, c }
    }

    pub fn zero(deg: usize) -> Self {
        Self::new(deg, Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(0, vec![c])
    }

    /// `a * first + b * second`.
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Self::new(1, vec![b, a])
    }

    /// The linear form vanishing at `p`.
    pub fn vanishing_at(p: &P1) -> Self {
        // p[1] * first - p[0] * second
        Self::linear(p[1].clone(), -p[0].clone())
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(Scalar::is_rational)
    }

    pub fn eval(&self, p: &P1) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            acc += &(&(ci * &p[0].pow(i as u32)) * &p[1].pow((self.deg - i) as u32));
        }
        acc
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        BinaryForm { deg: self.deg, c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.deg, other.deg);
        BinaryForm { deg: self.deg, c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.deg, other.deg);
        BinaryForm { deg: self.deg, c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![Scalar::zero(); self.deg + other.deg + 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        BinaryForm { deg: self.deg + other.deg, c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm::constant(Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to the first variable.
    pub fn d_first(&self) -> Self {
        if self.deg == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new(
            self.deg - 1,
            (1..=self.deg).map(|i| &self.c[i] * &Scalar::from_int(i as i64)).collect(),
        )
    }

    /// Partial derivative with respect to the second variable.
    pub fn d_second(&self) -> Self {
        if self.deg == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm::new(
            self.deg - 1,
            (0..self.deg).map(|i| &self.c[i] * &Scalar::from_int((self.deg - i) as i64)).collect(),
        )
    }

    /// Multiplicity of the root `[0, 1]` (where the first variable vanishes).
    pub fn mult_at_first_zero(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(self.deg + 1)
    }

    /// Multiplicity of the root `[1, 0]`.
    pub fn mult_at_second_zero(&self) -> usize {
        self.c.iter().rev().position(|x| !x.is_zero()).unwrap_or(self.deg + 1)
    }

    /// Polynomial in `t = second / first` obtained by setting `first = 1`; the
    /// degree drop equals the multiplicity of the root `[0, 1]`.
    pub fn dehomogenize_first(&self) -> UniPoly {
        UniPoly::new(self.c.iter().rev().cloned().collect())
    }

    /// Polynomial in `t = first / second` obtained by setting `second = 1`; the
    /// degree drop equals the multiplicity of the root `[1, 0]`.
    pub fn dehomogenize_second(&self) -> UniPoly {
        UniPoly::new(self.c.clone())
    }

    /// Inverse of [`Self::dehomogenize_first`] for a target degree `deg`.
    pub fn from_dehomogenized_first(p: &UniPoly, deg: usize) -> Self {
        let d = p.degree().unwrap_or(0);
        assert!(d <= deg, "degree {d} exceeds form degree {deg}");
        let mut c = vec![Scalar::zero(); deg + 1];
        for (j, pj) in p.coeffs().iter().enumerate() {
            c[deg - j] = pj.clone();
        }
        BinaryForm { deg, c }
    }

    /// Monic-normalized gcd (first nonzero coefficient of the dehomogenized
    /// part equal to one); the gcd of two zero forms is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let g = self.dehomogenize_first().gcd(&other.dehomogenize_first());
        let k = self.mult_at_first_zero().min(other.mult_at_first_zero());
        let d = g.degree().unwrap_or(0) + k;
        BinaryForm::from_dehomogenized_first(&g, d)
    }

    /// Scales so that the last nonzero coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.c.iter().rev().find(|x| !x.is_zero()) {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.deg > self.deg || d.is_zero() {
            return None;
        }
        let q = self.dehomogenize_first().div_exact(&d.dehomogenize_first())?;
        let deg = self.deg - d.deg;
        if q.degree().unwrap_or(0) > deg {
            return None;
        }
        let out = BinaryForm::from_dehomogenized_first(&q, deg);
        (out.mul(d) == *self).then_some(out)
    }

    pub fn is_proportional(&self, other: &Self) -> bool {
        self.deg == other.deg && proportional(&self.c, &other.c)
    }

    /// Squarefree decomposition as `(monic form, multiplicity)` pairs,
    /// including the factor `first` for a root at `[0, 1]`.
    pub fn squarefree_decomposition(&self) -> Vec<(BinaryForm, u32)> {
        let mut out = Vec::new();
        let k = self.mult_at_first_zero();
        if k > 0 && k <= self.deg {
            out.push((BinaryForm::linear(Scalar::one(), Scalar::zero()), k as u32));
        }
        for (f, m) in self.dehomogenize_first().squarefree_decomposition() {
            let d = f.degree().unwrap();
            out.push((BinaryForm::from_dehomogenized_first(&f, d), m));
        }
        out
    }

    /// True for a nonzero constant times the square of a form.
    pub fn is_const_times_square(&self) -> bool {
        !self.is_zero() && self.squarefree_decomposition().iter().all(|(_, m)| m % 2 == 0)
    }

    /// A form `p` with `p^2 = self`, when one exists over the field.
    pub fn square_root(&self) -> Option<BinaryForm> {
        if self.deg % 2 == 1 {
            return None;
        }
        let k = self.mult_at_first_zero();
        if k % 2 == 1 {
            return None;
        }
        let r = self.dehomogenize_first().square_root()?;
        Some(BinaryForm::from_dehomogenized_first(&r, self.deg / 2))
    }

    /// Distinct roots inside the field (or one quadratic extension over the
    /// rationals) with multiplicities; leftover irreducible factors are
    /// returned as dehomogenized polynomials in `second / first`.
    pub fn roots(&self) -> (Vec<(P1, u32)>, Vec<(UniPoly, u32)>) {
        let mut pts = Vec::new();
        let k = self.mult_at_first_zero();
        if k > 0 && k <= self.deg {
            pts.push(([Scalar::zero(), Scalar::one()], k as u32));
        }
        let fr = roots_in_field(&self.dehomogenize_first());
        for (r, m) in fr.roots {
            pts.push(([Scalar::one(), r], m));
        }
        (pts, fr.unresolved)
    }

    /// Number of distinct real roots (the form must have real coefficients).
    pub fn real_root_count(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = self.mult_at_first_zero();
        let p = self.dehomogenize_first();
        let n = if p.is_constant() { 0 } else { Sturm::new(&p)?.count_all() };
        Ok(n + usize::from(k > 0))
    }

    /// True when the form takes a positive value or vanishes somewhere on the
    /// real projective line.
    pub fn has_nonnegative_real_value(&self) -> Result<bool> {
        if self.real_root_count()? > 0 {
            return Ok(true);
        }
        // no real roots: constant sign, test at [1, 0]
        Ok(self.eval(&p1(1, 0)).signum().unwrap_or(-1) > 0)
    }

    /// `self(M (first, second))` for a 2x2 matrix `M`.
    pub fn compose(&self, m: &Mobius) -> Self {
        // first -> m00 first + m01 second, second -> m10 first + m11 second
        let f = BinaryForm::linear(m.m[0][0].clone(), m.m[0][1].clone());
        let s = BinaryForm::linear(m.m[1][0].clone(), m.m[1][1].clone());
        let mut acc = BinaryForm::zero(self.deg);
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            acc = acc.add(&f.pow(i as u32).mul(&s.pow((self.deg - i) as u32)).scale(ci));
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*u^{i}*v^{}", self.deg - i))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// A projective transformation of P1 given by an invertible 2x2 matrix acting
/// on column vectors `[first, second]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub m: [[Scalar; 2]; 2],
}

impl Mobius {
    pub fn new(m: [[Scalar; 2]; 2]) -> Result<Self> {
        let r = Mobius { m };
        if r.det().is_zero() {
            return Err(Error::InvalidInput("singular 2x2 matrix".into()));
        }
        Ok(r)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new([[a.into(), b.into()], [c.into(), d.into()]])
    }

    pub fn identity() -> Self {
        Mobius { m: [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]] }
    }

    pub fn det(&self) -> Scalar {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply(&self, p: &P1) -> P1 {
        [
            &(&self.m[0][0] * &p[0]) + &(&self.m[0][1] * &p[1]),
            &(&self.m[1][0] * &p[0]) + &(&self.m[1][1] * &p[1]),
        ]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det().recip();
        Mobius {
            m: [
                [&self.m[1][1] * &d, -(&self.m[0][1] * &d)],
                [-(&self.m[1][0] * &d), &self.m[0][0] * &d],
            ],
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        let mut m: [[Scalar; 2]; 2] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = &(&self.m[i][0] * &other.m[0][j]) + &(&self.m[i][1] * &other.m[1][j]);
            }
        }
        Mobius { m }
    }

    /// The map sending `a, b, c` to `[0,1], [1,0], [1,1]`.
    pub fn to_standard(a: &P1, b: &P1, c: &P1) -> Result<Self> {
        // p -> (k1 * det(a, p), k2 * det(b, p))
        let k1 = p1_det(b, c);
        let k2 = p1_det(a, c);
        if k1.is_zero() || k2.is_zero() || p1_det(a, b).is_zero() {
            return Err(Error::PointsCoincide);
        }
        let m = [
            [-(&k1 * &a[1]), &k1 * &a[0]],
            [-(&k2 * &b[1]), &k2 * &b[0]],
        ];
        Mobius::new(m)
    }

    /// The map sending `src[i]` to `dst[i]`.
    pub fn three_points(src: &[P1; 3], dst: &[P1; 3]) -> Result<Self> {
        let a = Self::to_standard(&src[0], &src[1], &src[2])?;
        let b = Self::to_standard(&dst[0], &dst[1], &dst[2])?;
        Ok(b.inverse().compose(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_map_hits_targets() {
        let a = p1(2, 3);
        let b = p1(-1, 5);
        let c = p1(4, 1);
        let m = Mobius::to_standard(&a, &b, &c).unwrap();
        assert!(p1_eq(&m.apply(&a), &p1(0, 1)));
        assert!(p1_eq(&m.apply(&b), &p1(1, 0)));
        assert!(p1_eq(&m.apply(&c), &p1(1, 1)));
    }

    #[test]
    fn forms_gcd_and_roots_at_infinity() {
        // first * (first - second) and first^2
        let f = BinaryForm::new(2, vec![0.into(), (-1).into(), 1.into()]);
        let g = BinaryForm::new(2, vec![0.into(), 0.into(), 1.into()]);
        assert_eq!(f.mult_at_first_zero(), 1);
        let h = f.gcd(&g);
        assert_eq!(h.degree(), 1);
        assert!(h.is_proportional(&BinaryForm::linear(1.into(), 0.into())));
        let (roots, rest) = f.roots();
        assert!(rest.is_empty());
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn composition_matches_pointwise() {
        let f = BinaryForm::new(3, vec![1.into(), (-2).into(), 0.into(), 5.into()]);
        let m = Mobius::from_ints(2, 1, -1, 3).unwrap();
        let g = f.compose(&m);
        let p = p1(3, -7);
        assert_eq!(g.eval(&p), f.eval(&m.apply(&p)));
    }
}
