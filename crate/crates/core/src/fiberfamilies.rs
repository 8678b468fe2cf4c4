//! Quadrics in the fiber of the envelope map over a fixed (2,2)-curve: exact
//! membership, the explicit conic family of the second component and the
//! quadratic conditions on `(k, l)` cutting out all components.

use crate::classify22::{asymmetric_model, check_exclusion};
use crate::envelope::{is_e2, is_e3, phi};
use crate::linalg;
use crate::poly::BiForm22;
use crate::projgeom::LinePair;
use crate::quadrics::Quadric;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// `phi(quadric) = lambda * target`.
#[derive(Clone, Debug)]
pub struct FiberWitness {
    pub target: BiForm22,
    pub quadric: Quadric,
    pub lambda: Scalar,
}

/// `Some` iff `phi(qp)` is a nonzero multiple of `c`.
pub fn fiber_membership(pair: &LinePair, c: &BiForm22, qp: &Quadric) -> Option<FiberWitness> {
    assert!(!c.is_zero(), "target curve must be nonzero");
    let f = phi(pair, qp).expect("line pairs are skew")?;
    let (i, j) = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .find(|&(i, j)| !c.c[i][j].is_zero())
        .expect("nonzero");
    let lambda = &f.c[i][j] / &c.c[i][j];
    if lambda.is_zero() || f != c.scale(&lambda) {
        return None;
    }
    Some(FiberWitness { target: c.clone(), quadric: qp.clone(), lambda })
}

/// Which factor of `(s-1)k² - 2kl - l²` the conic lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `(√s + 1) k + l = 0`
    Plus,
    /// `(√s - 1) k - l = 0`
    Minus,
}

/// Labels `a, b, c, d, e, f, g, h, k, l` as indices.
mod ix {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
    pub const E: usize = 4;
    pub const F: usize = 5;
    pub const G: usize = 6;
    pub const H: usize = 7;
    pub const K: usize = 8;
    pub const L: usize = 9;
}

/// The eleven generators of the second fiber component at the given labels.
pub fn f2_generators(s: &Scalar, t: &Scalar, q: &[Scalar; 10]) -> [Scalar; 11] {
    use ix::*;
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let sm = s - &one;
    let tm = t - &one;
    let (a, b, c, d, e, f, g, h, k, l) =
        (&q[A], &q[B], &q[C], &q[D], &q[E], &q[F], &q[G], &q[H], &q[K], &q[L]);
    [
        &(&(&sm * &(k * k)) - &(&(&two * k) * l)) - &(l * l),
        &(&(&sm * h) + &(&(&two * &tm) * k)) + &(&tm * l),
        &(f * l) - &(g * k),
        &(e * l) - &(g * g),
        &(d + f) + g,
        c.clone(),
        &(&two * b) + e,
        a.clone(),
        &(&(&(&sm * f) * k) - &(&(&two * g) * k)) - &(g * l),
        &(&(&sm * &(f * f)) - &(&(&two * f) * g)) - &(g * g),
        &(e * k) - &(f * g),
    ]
}

/// The plane conic of the second fiber component over the model curve at
/// `(s, t)` lying over one factor of the `(k, l)`-quadratic.
#[derive(Clone, Debug)]
pub struct ConicF2 {
    pub s: Scalar,
    pub t: Scalar,
    pub branch: Branch,
    /// `+√s` on the plus branch, `-√s` on the minus branch.
    pub sigma: Scalar,
    /// Seven linear forms in the labels.
    pub linear: Vec<[Scalar; 10]>,
}

impl ConicF2 {
    pub fn build(s: &Scalar, t: &Scalar, branch: Branch) -> Result<Self> {
        check_exclusion(s, t)?;
        let root = s
            .sqrt()
            .filter(|r| Scalar::compatible(r, t))
            .ok_or_else(|| Error::ExtensionRequired(format!("square root of s = {s}")))?;
        let sigma = match branch {
            Branch::Plus => root,
            Branch::Minus => -root,
        };
        let one = Scalar::one();
        let sp = &sigma + &one;
        let row = |entries: &[(usize, Scalar)]| {
            let mut r: [Scalar; 10] = Default::default();
            for (i, v) in entries {
                r[*i] = v.clone();
            }
            r
        };
        use ix::*;
        let linear = vec![
            row(&[(A, one.clone())]),
            row(&[(C, one.clone())]),
            row(&[(B, Scalar::from_int(2)), (E, one.clone())]),
            row(&[(D, one.clone()), (F, one.clone()), (G, one.clone())]),
            row(&[(H, s - &one), (K, &Scalar::from_int(2) * &(t - &one)), (L, t - &one)]),
            row(&[(K, sp.clone()), (L, one.clone())]),
            row(&[(F, sp), (G, one)]),
        ];
        Ok(ConicF2 { s: s.clone(), t: t.clone(), branch, sigma, linear })
    }

    pub fn constraint_rank(&self) -> usize {
        linalg::rank(&self.linear.iter().map(|r| r.to_vec()).collect())
    }

    /// `el - g²`.
    pub fn quadratic(&self, q: &[Scalar; 10]) -> Scalar {
        &(&q[ix::E] * &q[ix::L]) - &(&q[ix::G] * &q[ix::G])
    }

    pub fn contains(&self, q: &[Scalar; 10]) -> bool {
        self.linear.iter().all(|r| linalg::dot(r, q).is_zero()) && self.quadratic(q).is_zero()
    }

    /// The conic point at `[u, v]`.
    pub fn point(&self, u: &Scalar, v: &Scalar) -> [Scalar; 10] {
        use ix::*;
        let one = Scalar::one();
        let sp = &self.sigma + &one;
        let mut q: [Scalar; 10] = Default::default();
        q[B] = &sp * &(v * v);
        q[F] = &Scalar::from_int(2) * &(u * v);
        q[K] = &Scalar::from_int(2) * &(u * u);
        q[E] = -&(&Scalar::from_int(2) * &q[B]);
        q[G] = -&(&sp * &q[F]);
        q[D] = &self.sigma * &q[F];
        q[L] = -&(&sp * &q[K]);
        q[H] = &(&(&self.t - &one) * &q[K]) / &sp;
        q
    }

    /// The point exhibiting a nonzero `w²z²` coefficient.
    pub fn witness_point(&self) -> [Scalar; 10] {
        let one = Scalar::one();
        let k = -&(&self.s - &one);
        self.point(&one, &one).map(|x| &x * &k)
    }

    pub fn target(&self) -> BiForm22 {
        asymmetric_model(&self.s, &self.t)
    }

    /// Samples `[1, (i - n/2) / 3]` for `i < n`.
    pub fn sample_and_verify(&self, pair: &LinePair, c: &BiForm22, n: usize) -> SampleReport {
        let samples = (0..n)
            .map(|i| {
                let u = Scalar::one();
                let v = Scalar::from_ratio(i as i64 - (n / 2) as i64, 3);
                let labels = self.point(&u, &v);
                let on_conic = self.contains(&labels);
                let witness = Quadric::from_labels(&labels).ok().and_then(|q| {
                    if is_e2(&q) || is_e3(&q) {
                        None
                    } else {
                        fiber_membership(pair, c, &q).map(|w| w.lambda)
                    }
                });
                Sample { param: [u, v], labels, on_conic, lambda: witness }
            })
            .collect();
        SampleReport { samples }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub param: [Scalar; 2],
    pub labels: [Scalar; 10],
    pub on_conic: bool,
    pub lambda: Option<Scalar>,
}

#[derive(Clone, Debug)]
pub struct SampleReport {
    pub samples: Vec<Sample>,
}

impl SampleReport {
    pub fn witnesses(&self) -> usize {
        self.samples.iter().filter(|s| s.lambda.is_some()).count()
    }

    pub fn degenerate(&self) -> Vec<usize> {
        (0..self.samples.len()).filter(|&i| self.samples[i].lambda.is_none()).collect()
    }

    pub fn all_on_conic(&self) -> bool {
        self.samples.iter().all(|s| s.on_conic)
    }
}

/// A binary quadratic in `(k, l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KlQuadratic {
    /// Coefficients of `k², kl, l²`.
    pub coeffs: [Scalar; 3],
    pub discriminant: Scalar,
    /// `coeffs[2] (l - ρ1 k)(l - ρ2 k)` when the roots lie in the field.
    pub roots: Option<[Scalar; 2]>,
}

impl KlQuadratic {
    fn new(coeffs: [Scalar; 3]) -> Self {
        let [a, b, c] = &coeffs;
        let discriminant = &(b * b) - &(&Scalar::from_int(4) * &(a * c));
        let roots = if c.is_zero() {
            None
        } else {
            discriminant.sqrt().filter(|r| coeffs.iter().all(|x| Scalar::compatible(x, r))).map(|r| {
                let den = c + c;
                [&(&-b + &r) / &den, &(&-b - &r) / &den]
            })
        };
        KlQuadratic { coeffs, discriminant, roots }
    }

    pub fn eval(&self, k: &Scalar, l: &Scalar) -> Scalar {
        let [a, b, c] = &self.coeffs;
        &(&(a * &(k * k)) + &(b * &(k * l))) + &(c * &(l * l))
    }

    /// Number of linear factors with real coefficients.
    pub fn real_factors(&self) -> usize {
        match &self.roots {
            Some(r) => r.iter().filter(|x| x.is_real()).count(),
            None => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct KlTable {
    pub quadratics: [KlQuadratic; 3],
    /// Set when `(s, t)` violates the exclusion condition.
    pub excluded: Option<String>,
}

impl KlTable {
    pub fn real_factors(&self) -> usize {
        self.quadratics.iter().map(KlQuadratic::real_factors).sum()
    }
}

/// The three `(k, l)`-quadratics, each appearing in two of the six components.
pub fn kl_quadratic_table(s: &Scalar, t: &Scalar) -> KlTable {
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let sm = s - &one;
    let sm2 = &sm * &sm;
    let q1 = [-&sm2, &two * &sm, &(s * t) - &one];
    let q2 = [sm.clone(), Scalar::from_int(-2), -&one];
    let q3 = [sm2, -&(&two * &sm), &one - t];
    let excluded = check_exclusion(s, t).err().map(|e| match e {
        Error::Excluded(m) => m,
        other => other.to_string(),
    });
    KlTable { quadratics: [q1, q2, q3].map(KlQuadratic::new), excluded }
}
