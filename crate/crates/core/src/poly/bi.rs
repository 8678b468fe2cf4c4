//! Sparse bivariate polynomials in the affine parameters `x` and `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::uni::UniPoly;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Variable identifier for [`BiPoly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Z,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Z,
            Var::Z => Var::X,
        }
    }
}

/// `sum c[(i, j)] x^i z^j`, without explicit zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn monomial(i: u32, j: u32, c: Scalar) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn z() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Scalar)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_int_terms(t: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(t.iter().map(|&(i, j, c)| (i, j, Scalar::from_int(c))))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Scalar::is_rational)
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if v == Var::X { i } else { j }).max()
    }

    pub fn deg_x(&self) -> u32 {
        self.degree_in(Var::X).unwrap_or(0)
    }

    pub fn deg_z(&self) -> u32 {
        self.degree_in(Var::Z).unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Leading monomial under graded lexicographic order with `x > z`.
    pub fn leading_grlex(&self) -> Option<((u32, u32), &Scalar)> {
        self.terms.iter().max_by_key(|(&(i, j), _)| (i + j, i)).map(|(k, v)| (*k, v))
    }

    fn leading_lex(&self) -> Option<((u32, u32), &Scalar)> {
        self.terms.iter().next_back().map(|(k, v)| (*k, v))
    }

    pub fn eval(&self, x: &Scalar, z: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(&(c * &x.pow(i)) * &z.pow(j));
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_complex_f64().0 * x.powi(i as i32) * z.powi(j as i32))
            .sum()
    }

    pub fn scale(&self, k: &Scalar) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| (i, j, c * k)))
    }

    /// Divides by the graded-lex leading coefficient.
    pub fn monic(&self) -> BiPoly {
        match self.leading_grlex() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some((i - 1, j, c * &Scalar::from_int(i as i64))),
            Var::Z if j > 0 => Some((i, j - 1, c * &Scalar::from_int(j as i64))),
            _ => None,
        }))
    }

    /// Swaps the roles of `x` and `z`.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| (j, i, c.clone())))
    }

    /// Coefficients as polynomials in `v`: entry `k` is the coefficient of
    /// `v^k`, a polynomial in the other variable.
    pub fn to_rec(&self, v: Var) -> Vec<UniPoly> {
        let n = self.degree_in(v).map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let (k, o) = if v == Var::X { (i, j) } else { (j, i) };
            let row = &mut rows[k as usize];
            if row.len() <= o as usize {
                row.resize(o as usize + 1, Scalar::zero());
            }
            row[o as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_rec(v: Var, rec: &[UniPoly]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (k, u) in rec.iter().enumerate() {
            for (o, c) in u.coeffs().iter().enumerate() {
                let (i, j) = if v == Var::X { (k as u32, o as u32) } else { (o as u32, k as u32) };
                p.add_term(i, j, c.clone());
            }
        }
        p
    }

    /// A univariate polynomial in `x` viewed as a bivariate one.
    pub fn from_uni(v: Var, u: &UniPoly) -> BiPoly {
        BiPoly::from_terms(u.coeffs().iter().enumerate().map(|(k, c)| match v {
            Var::X => (k as u32, 0, c.clone()),
            Var::Z => (0, k as u32, c.clone()),
        }))
    }

    /// Substitutes a value for one variable, leaving a polynomial in the other.
    pub fn specialize(&self, v: Var, val: &Scalar) -> UniPoly {
        let rec = self.to_rec(v.other());
        UniPoly::new(rec.iter().map(|u| u.eval(val)).collect())
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        let ((di, dj), dc) = d.leading_lex()?;
        let dc = dc.clone();
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        while let Some(((ri, rj), rc)) = r.leading_lex() {
            if ri < di || rj < dj {
                return None;
            }
            let t = BiPoly::monomial(ri - di, rj - dj, rc / &dc);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }
}

fn rec_content(rec: &[UniPoly]) -> UniPoly {
    rec.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

fn rec_primitive(rec: &[UniPoly]) -> Vec<UniPoly> {
    let c = rec_content(rec);
    if c.is_zero() {
        return rec.to_vec();
    }
    rec.iter().map(|u| u.div_exact(&c).expect("content divides")).collect()
}

fn rec_trim(mut v: Vec<UniPoly>) -> Vec<UniPoly> {
    while v.last().is_some_and(UniPoly::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` in the main variable.
fn rec_prem(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let mut a = rec_trim(a.to_vec());
    let b = rec_trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while a.len() > db && !a.is_empty() {
        let da = a.len() - 1;
        let la = a[da].clone();
        let mut next: Vec<UniPoly> = a.iter().map(|c| c * &lb).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + da - db] = &next[k + da - db] - &(&la * bk);
        }
        a = rec_trim(next);
    }
    a
}

/// Greatest common divisor, normalized to graded-lex leading coefficient one;
/// coprime inputs give the constant one.
pub fn gcd_bipoly(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let fr = f.to_rec(Var::Z);
    let gr = g.to_rec(Var::Z);
    let c = rec_content(&fr).gcd(&rec_content(&gr));
    let mut a = rec_primitive(&fr);
    let mut b = rec_primitive(&gr);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = rec_prem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { rec_primitive(&r) };
    }
    let pp = if a.len() <= 1 { BiPoly::one() } else { BiPoly::from_rec(Var::Z, &a) };
    (&pp * &BiPoly::from_uni(Var::X, &c)).monic()
}

/// Determinant of a matrix of univariate polynomials (fraction-free
/// elimination).
pub fn det_poly(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign = false;
    let mut prev = UniPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Sylvester resultant eliminating `v`; a polynomial in the other variable.
pub fn resultant_wrt(f: &BiPoly, g: &BiPoly, v: Var) -> Result<UniPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fr = f.to_rec(v);
    let gr = g.to_rec(v);
    let m = fr.len() - 1;
    let n = gr.len() - 1;
    if m == 0 || n == 0 {
        return Err(Error::CannotEliminate(format!("degree zero in {v:?}")));
    }
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in fr.iter().enumerate() {
            mat[r][r + m - k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in gr.iter().enumerate() {
            mat[n + r][r + n - k] = c.clone();
        }
    }
    Ok(det_poly(mat))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let parts: Vec<String> = keys
            .iter()
            .map(|&(i, j)| {
                let c = &self.terms[&(i, j)];
                let mut mono = String::new();
                match i {
                    0 => {}
                    1 => mono.push_str("*x"),
                    _ => mono.push_str(&format!("*x^{i}")),
                }
                match j {
                    0 => {}
                    1 => mono.push_str("*z"),
                    _ => mono.push_str(&format!("*z^{j}")),
                }
                format!("({c}){mono}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &'a BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (&(i, j), c) in &rhs.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &'a BiPoly) -> BiPoly {
        let mut p = self.clone();
        for (&(i, j), c) in &rhs.terms {
            p.add_term(i, j, -c);
        }
        p
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &'a BiPoly) -> BiPoly {
        let mut p = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        &self - &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}
