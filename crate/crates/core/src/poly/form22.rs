//! Bihomogeneous forms on P1 x P1 in the variables `([w, x], [y, z])`.

use std::fmt;

use super::bi::{gcd_bipoly, BiPoly};
use super::binary::{BinaryForm, Mobius, P1};
use crate::scalar::{normalize_projective, proportional, Scalar};

/// `sum c[i][j] w^i x^(m-i) y^j z^(n-j)` of bidegree `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm {
    m: usize,
    n: usize,
    c: Vec<Vec<Scalar>>,
}

impl BiForm {
    pub fn zero(m: usize, n: usize) -> Self {
        BiForm { m, n, c: vec![vec![Scalar::zero(); n + 1]; m + 1] }
    }

    pub fn from_fn(m: usize, n: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        BiForm { m, n, c: (0..=m).map(|i| (0..=n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn one() -> Self {
        Self::from_fn(0, 0, |_, _| Scalar::one())
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Scalar {
        &self.c[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().flatten().all(Scalar::is_rational)
    }

    pub fn coeff_vec(&self) -> Vec<Scalar> {
        self.c.iter().flatten().cloned().collect()
    }

    pub fn eval(&self, p: &P1, q: &P1) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..=self.m {
            let a = &p[0].pow(i as u32) * &p[1].pow((self.m - i) as u32);
            for j in 0..=self.n {
                if self.c[i][j].is_zero() {
                    continue;
                }
                let b = &q[0].pow(j as u32) * &q[1].pow((self.n - j) as u32);
                acc += &(&(&self.c[i][j] * &a) * &b);
            }
        }
        acc
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::from_fn(self.m, self.n, |i, j| &self.c[i][j] * k)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.bidegree(), o.bidegree());
        Self::from_fn(self.m, self.n, |i, j| &self.c[i][j] + &o.c[i][j])
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.bidegree(), o.bidegree());
        Self::from_fn(self.m, self.n, |i, j| &self.c[i][j] - &o.c[i][j])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.m + o.m, self.n + o.n);
        for i in 0..=self.m {
            for j in 0..=self.n {
                if self.c[i][j].is_zero() {
                    continue;
                }
                for k in 0..=o.m {
                    for l in 0..=o.n {
                        r.c[i + k][j + l] += &(&self.c[i][j] * &o.c[k][l]);
                    }
                }
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Form in `(w, x)` multiplying `y^j z^(n-j)`.
    pub fn column(&self, j: usize) -> BinaryForm {
        BinaryForm::new(self.m, (0..=self.m).map(|i| self.c[i][j].clone()).collect())
    }

    /// Form in `(y, z)` multiplying `w^i x^(m-i)`.
    pub fn row(&self, i: usize) -> BinaryForm {
        BinaryForm::new(self.n, self.c[i].clone())
    }

    pub fn columns(&self) -> Vec<BinaryForm> {
        (0..=self.n).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<BinaryForm> {
        (0..=self.m).map(|i| self.row(i)).collect()
    }

    /// Product of a form in `(w, x)` and a form in `(y, z)`.
    pub fn from_product(a: &BinaryForm, b: &BinaryForm) -> Self {
        Self::from_fn(a.degree(), b.degree(), |i, j| a.coeff(i) * b.coeff(j))
    }

    /// Gcd of the columns: the largest factor depending on `(w, x)` only.
    pub fn content_first(&self) -> BinaryForm {
        self.columns().iter().fold(BinaryForm::zero(0), |acc, c| acc.gcd(c))
    }

    /// Gcd of the rows: the largest factor depending on `(y, z)` only.
    pub fn content_second(&self) -> BinaryForm {
        self.rows().iter().fold(BinaryForm::zero(0), |acc, r| acc.gcd(r))
    }

    pub fn d_w(&self) -> Self {
        if self.m == 0 {
            return Self::zero(0, self.n);
        }
        Self::from_fn(self.m - 1, self.n, |i, j| &self.c[i + 1][j] * &Scalar::from_int(i as i64 + 1))
    }

    pub fn d_x(&self) -> Self {
        if self.m == 0 {
            return Self::zero(0, self.n);
        }
        Self::from_fn(self.m - 1, self.n, |i, j| {
            &self.c[i][j] * &Scalar::from_int((self.m - i) as i64)
        })
    }

    pub fn d_y(&self) -> Self {
        self.transpose().d_w().transpose()
    }

    pub fn d_z(&self) -> Self {
        self.transpose().d_x().transpose()
    }

    /// Interchanges the two P1 factors.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.m, |i, j| self.c[j][i].clone())
    }

    /// `F(M1 (w, x), M2 (y, z))`.
    pub fn reparameterize(&self, m1: &Mobius, m2: &Mobius) -> Self {
        let cols: Vec<BinaryForm> = self.columns().iter().map(|c| c.compose(m1)).collect();
        let tmp = Self::from_fn(self.m, self.n, |i, j| cols[j].coeff(i).clone());
        let rows: Vec<BinaryForm> = tmp.rows().iter().map(|r| r.compose(m2)).collect();
        Self::from_fn(self.m, self.n, |i, j| rows[i].coeff(j).clone())
    }

    pub fn is_proportional(&self, o: &Self) -> bool {
        self.bidegree() == o.bidegree() && proportional(&self.coeff_vec(), &o.coeff_vec())
    }

    /// Dehomogenization at `w = 1, y = 1`: the coefficient of `x^a z^b` is
    /// `c[m-a][n-b]`.
    pub fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for i in 0..=self.m {
            for j in 0..=self.n {
                p.add_term((self.m - i) as u32, (self.n - j) as u32, self.c[i][j].clone());
            }
        }
        p
    }

    /// Homogenization to bidegree `(m, n)`; `None` when `p` is too large.
    pub fn from_bipoly(m: usize, n: usize, p: &BiPoly) -> Option<Self> {
        if p.deg_x() as usize > m || p.deg_z() as usize > n {
            return None;
        }
        let mut f = Self::zero(m, n);
        for (&(a, b), c) in p.terms() {
            f.c[m - a as usize][n - b as usize] = c.clone();
        }
        Some(f)
    }

    /// Multiplicity of `w` as a factor.
    pub fn mult_w(&self) -> usize {
        (0..=self.m).take_while(|&i| self.c[i].iter().all(Scalar::is_zero)).count()
    }

    /// Multiplicity of `y` as a factor.
    pub fn mult_y(&self) -> usize {
        self.transpose().mult_w()
    }

    /// Greatest common divisor, normalized like [`gcd_bipoly`]; factors `w`
    /// and `y` are restored.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let g = gcd_bipoly(&self.to_bipoly(), &o.to_bipoly());
        let kw = self.mult_w().min(o.mult_w());
        let ky = self.mult_y().min(o.mult_y());
        let base = Self::from_bipoly(g.deg_x() as usize, g.deg_z() as usize, &g).expect("fits");
        let w = Self::from_fn(1, 0, |i, _| Scalar::from_int(i as i64));
        let y = Self::from_fn(0, 1, |_, j| Scalar::from_int(j as i64));
        base.mul(&w.pow(kw as u32)).mul(&y.pow(ky as u32))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() || d.m > self.m || d.n > self.n {
            return None;
        }
        let q = self.to_bipoly().div_exact(&d.to_bipoly())?;
        let q = Self::from_bipoly(self.m - d.m, self.n - d.n, &q)?;
        (q.mul(d) == *self).then_some(q)
    }

    /// Projectively normalized copy (see [`normalize_projective`]).
    pub fn normalized(&self) -> Self {
        let v = normalize_projective(&self.coeff_vec());
        Self::from_fn(self.m, self.n, |i, j| v[i * (self.n + 1) + j].clone())
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in (0..=self.m).rev() {
            for j in (0..=self.n).rev() {
                let c = &self.c[i][j];
                if c.is_zero() {
                    continue;
                }
                let mut mono = String::new();
                for (v, e) in [("w", i), ("x", self.m - i), ("y", j), ("z", self.n - j)] {
                    match e {
                        0 => {}
                        1 => mono.push_str(&format!("*{v}")),
                        _ => mono.push_str(&format!("*{v}^{e}")),
                    }
                }
                parts.push(format!("({c}){mono}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A (2,2)-form, stored as `c[i][j]` = coefficient of `w^i x^(2-i) y^j z^(2-j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm22 {
    pub c: [[Scalar; 3]; 3],
}

impl BiForm22 {
    pub fn new(c: [[Scalar; 3]; 3]) -> Self {
        BiForm22 { c }
    }

    pub fn zero() -> Self {
        BiForm22 { c: Default::default() }
    }

    pub fn from_ints(c: [[i64; 3]; 3]) -> Self {
        BiForm22 { c: c.map(|r| r.map(Scalar::from_int)) }
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Scalar {
        &self.c[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Scalar::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().flatten().all(Scalar::is_rational)
    }

    pub fn coeff_vec(&self) -> Vec<Scalar> {
        self.c.iter().flatten().cloned().collect()
    }

    pub fn as_biform(&self) -> BiForm {
        BiForm::from_fn(2, 2, |i, j| self.c[i][j].clone())
    }

    pub fn from_biform(f: &BiForm) -> Option<Self> {
        if f.bidegree() != (2, 2) {
            return None;
        }
        let mut c: [[Scalar; 3]; 3] = Default::default();
        for (i, row) in c.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = f.coeff(i, j).clone();
            }
        }
        Some(BiForm22 { c })
    }

    pub fn eval(&self, p: &P1, q: &P1) -> Scalar {
        self.as_biform().eval(p, q)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        BiForm22 { c: self.c.clone().map(|r| r.map(|e| &e * k)) }
    }

    /// Quadratic forms in `(w, x)` multiplying `z^2`, `yz`, `y^2`.
    pub fn columns(&self) -> [BinaryForm; 3] {
        let b = self.as_biform();
        [b.column(0), b.column(1), b.column(2)]
    }

    /// Quadratic forms in `(y, z)` multiplying `x^2`, `wx`, `w^2`.
    pub fn rows(&self) -> [BinaryForm; 3] {
        let b = self.as_biform();
        [b.row(0), b.row(1), b.row(2)]
    }

    pub fn transpose(&self) -> Self {
        Self::from_biform(&self.as_biform().transpose()).unwrap()
    }

    pub fn reparameterize(&self, m1: &Mobius, m2: &Mobius) -> Self {
        Self::from_biform(&self.as_biform().reparameterize(m1, m2)).unwrap()
    }

    /// Projective equality.
    pub fn is_proportional(&self, o: &Self) -> bool {
        proportional(&self.coeff_vec(), &o.coeff_vec())
    }

    pub fn normalized(&self) -> Self {
        Self::from_biform(&self.as_biform().normalized()).unwrap()
    }

    pub fn to_bipoly(&self) -> BiPoly {
        self.as_biform().to_bipoly()
    }

    pub fn from_bipoly(p: &BiPoly) -> Option<Self> {
        Self::from_biform(&BiForm::from_bipoly(2, 2, p)?)
    }
}

impl fmt::Display for BiForm22 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_biform().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_restores_w_and_y_factors() {
        // f = w*y*(x + z), g = w*(x + z)*(x - 2z)
        let w = BiForm::from_fn(1, 0, |i, _| Scalar::from_int(i as i64));
        let y = BiForm::from_fn(0, 1, |_, j| Scalar::from_int(j as i64));
        let xz = BiForm::from_fn(1, 1, |i, j| Scalar::from_int(i64::from(i + j == 1)));
        let l = BiForm::from_fn(1, 1, |i, j| match (i, j) {
            (0, 1) => 1.into(),
            (1, 0) => (-2).into(),
            _ => 0.into(),
        });
        let f = w.mul(&y).mul(&xz);
        let g = w.mul(&xz).mul(&l);
        let h = f.gcd(&g);
        assert!(h.is_proportional(&w.mul(&xz)));
        assert!(f.div_exact(&h).unwrap().is_proportional(&y));
    }

    #[test]
    fn reparameterize_matches_evaluation() {
        let f = BiForm22::from_ints([[1, 2, -3], [0, 5, 1], [4, -1, 2]]);
        let m1 = Mobius::from_ints(1, 2, 3, -1).unwrap();
        let m2 = Mobius::from_ints(0, 1, 1, 4).unwrap();
        let g = f.reparameterize(&m1, &m2);
        let p = [Scalar::from_int(3), Scalar::from_int(-2)];
        let q = [Scalar::from_int(5), Scalar::from_int(7)];
        assert_eq!(g.eval(&p, &q), f.eval(&m1.apply(&p), &m2.apply(&q)));
    }

    #[test]
    fn dehomogenize_roundtrip() {
        let f = BiForm22::from_ints([[1, 2, -3], [0, 5, 1], [4, -1, 2]]);
        let p = f.to_bipoly();
        assert_eq!(p.coeff(2, 2), Scalar::from_int(1));
        assert_eq!(p.coeff(0, 0), Scalar::from_int(2));
        assert_eq!(BiForm22::from_bipoly(&p).unwrap(), f);
    }
}
