//! Dense exact linear algebra on small matrices of scalars.

use crate::scalar::Scalar;

pub type Mat = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let k = b.len();
    let n = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| (0..k).map(|t| &r[t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Mat, v: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn cross(a: &[Scalar], b: &[Scalar]) -> [Scalar; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &Mat) -> usize {
    let mut m = a.clone();
    echelon(&mut m).len()
}

pub fn det(a: &Mat) -> Scalar {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= &t;
            }
        }
    }
    d
}

/// Basis of the right kernel.
pub fn nullspace(a: &Mat) -> Vec<Vec<Scalar>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut m = a.clone();
    let pivots = echelon(&mut m);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        out.push(v);
    }
    out
}

/// Unique solution of `a x = b` for square invertible `a`.
pub fn solve(a: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut m: Mat = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let pivots = echelon(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Mat = a
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    let pivots = echelon(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn from_ints(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect()
}
