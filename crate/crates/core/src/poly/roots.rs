//! Real root isolation (Sturm sequences), rational roots, and factorization of
//! low-degree rational polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::uni::UniPoly;
use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// Half-open isolating interval `(lo, hi]` containing exactly one real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        Scalar::from_rational(self.midpoint()).to_f64().unwrap()
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Sturm sequence of a squarefree real polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<UniPoly>,
}

impl Sturm {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if p.coeffs().iter().any(|c| !c.is_real()) {
            return Err(Error::InvalidInput("real root isolation needs real coefficients".into()));
        }
        let p0 = p.squarefree_part();
        let mut seq = vec![p0.clone(), p0.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        Ok(Sturm { seq })
    }

    pub fn base(&self) -> &UniPoly {
        &self.seq[0]
    }

    fn variations_at(&self, x: &Rational) -> usize {
        let signs: Vec<i32> = self.seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs: Vec<i32> = self
            .seq
            .iter()
            .map(|p| {
                let s = p.lc().signum().unwrap();
                let odd = p.degree().unwrap_or(0) % 2 == 1;
                if !positive && odd {
                    -s
                } else {
                    s
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    pub fn isolate(&self) -> Vec<RootInterval> {
        let mut out = Vec::new();
        if self.base().is_constant() {
            return out;
        }
        let b = self.base().root_bound();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.count(&lo, &hi) {
                0 => {}
                1 => out.push(RootInterval { lo, hi }),
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Shrinks an isolating interval until its width is at most `width`.
    pub fn refine(&self, iv: &RootInterval, width: &Rational) -> RootInterval {
        let mut iv = iv.clone();
        while iv.width() > *width {
            let mid = iv.midpoint();
            if self.count(&iv.lo, &mid) == 1 {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
        iv
    }
}

/// Isolating intervals for the distinct real roots of `q`, in increasing order.
pub fn real_roots_isolate(q: &UniPoly) -> Result<Vec<RootInterval>> {
    Ok(Sturm::new(q)?.isolate())
}

/// Distinct rational roots of a rational polynomial, increasing.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    assert!(p.is_rational(), "rational_roots needs rational coefficients");
    if p.is_constant() {
        return Vec::new();
    }
    let sqf = p.squarefree_part().primitive_integer();
    let an: BigInt = sqf.lc().re().to_integer().abs();
    let sturm = Sturm::new(&sqf).expect("nonzero");
    // a rational root u/v in lowest terms has v | a_n, so a_n * root is an integer
    let width = Rational::new(BigInt::one(), &an * 4);
    let anq = Rational::from_integer(an.clone());
    let mut out = Vec::new();
    for iv in sturm.isolate() {
        let iv = sturm.refine(&iv, &width);
        let m = (&iv.hi * &anq).floor();
        for cand in [m.clone(), m + Rational::one()] {
            let r = cand / &anq;
            if r > iv.lo && r <= iv.hi && sqf.eval_rational(&r).is_zero() {
                out.push(r);
                break;
            }
        }
    }
    out
}

/// A factor of a rational polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactor {
    /// Monic factor.
    pub poly: UniPoly,
    pub multiplicity: u32,
    /// False when the factor has degree > 4 and was not split further.
    pub irreducible: bool,
}

/// Factorization over the rationals, complete for squarefree parts of
/// degree at most four.
pub fn factor_rational(p: &UniPoly) -> Vec<RationalFactor> {
    let mut out = Vec::new();
    for (sqf, m) in p.squarefree_decomposition() {
        let mut rest = sqf.clone();
        for r in rational_roots(&sqf) {
            let lin = UniPoly::linear_root(&Scalar::from_rational(r));
            rest = rest.div_exact(&lin).expect("root divides");
            out.push(RationalFactor { poly: lin, multiplicity: m, irreducible: true });
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(1..=3) => out.push(RationalFactor { poly: rest.monic(), multiplicity: m, irreducible: true }),
            Some(4) => match split_quartic(&rest.monic()) {
                Some((a, b)) => {
                    out.push(RationalFactor { poly: a, multiplicity: m, irreducible: true });
                    out.push(RationalFactor { poly: b, multiplicity: m, irreducible: true });
                }
                None => out.push(RationalFactor { poly: rest.monic(), multiplicity: m, irreducible: true }),
            },
            Some(_) => out.push(RationalFactor { poly: rest.monic(), multiplicity: m, irreducible: false }),
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.poly, &b.poly));
    out
}

/// Orders polynomials by degree, then by coefficients from the top.
pub fn cmp_poly(a: &UniPoly, b: &UniPoly) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
        match x.re().cmp(y.re()).then(x.ir().cmp(y.ir())) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Splits a monic rational quartic without rational roots into two rational
/// quadratics, if possible.
fn split_quartic(p: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let four = Scalar::from_int(4);
    let shift = &p.coeff(3) / &four;
    // y = x + a/4, i.e. x = y - a/4
    let q = p.compose(&UniPoly::new(vec![-shift.clone(), Scalar::one()]));
    let (pp, qq, rr) = (q.coeff(2), q.coeff(1), q.coeff(0));
    let two = Scalar::from_int(2);
    let back = UniPoly::new(vec![shift.clone(), Scalar::one()]);
    let done = |a: UniPoly, b: UniPoly| -> Option<(UniPoly, UniPoly)> {
        let a = a.compose(&back);
        let b = b.compose(&back);
        if &a * &b == *p {
            let (a, b) = if cmp_poly(&a, &b) == Ordering::Greater { (b, a) } else { (a, b) };
            Some((a, b))
        } else {
            None
        }
    };
    if qq.is_zero() {
        // y^4 + P y^2 + R
        let disc = &pp * &pp - &four * &rr;
        if let Some(sd) = disc.sqrt_rational() {
            let sd = Scalar::from_rational(sd);
            let v1 = &(&pp + &sd) / &two;
            let v2 = &(&pp - &sd) / &two;
            let r = done(
                UniPoly::new(vec![v1, Scalar::zero(), Scalar::one()]),
                UniPoly::new(vec![v2, Scalar::zero(), Scalar::one()]),
            );
            if r.is_some() {
                return r;
            }
        }
        if let Some(w) = rr.sqrt_rational() {
            for w in [w.clone(), -w] {
                let w = Scalar::from_rational(w);
                let u2 = &(&two * &w) - &pp;
                if let Some(u) = u2.sqrt_rational() {
                    if u.is_zero() {
                        continue;
                    }
                    let u = Scalar::from_rational(u);
                    let r = done(
                        UniPoly::new(vec![w.clone(), u.clone(), Scalar::one()]),
                        UniPoly::new(vec![w.clone(), -u, Scalar::one()]),
                    );
                    if r.is_some() {
                        return r;
                    }
                }
            }
        }
        return None;
    }
    // resolvent cubic in U = u^2
    let res = UniPoly::new(vec![
        -(&qq * &qq),
        &pp * &pp - &four * &rr,
        &two * &pp,
        Scalar::one(),
    ]);
    for uu in rational_roots(&res) {
        if !uu.is_positive() {
            continue;
        }
        let Some(u) = crate::scalar::rational_sqrt(&uu) else { continue };
        let u = Scalar::from_rational(u);
        let uu = Scalar::from_rational(uu);
        let qu = &qq / &u;
        let v = &(&(&pp + &uu) - &qu) / &two;
        let v2 = &(&(&pp + &uu) + &qu) / &two;
        let r = done(
            UniPoly::new(vec![v, u.clone(), Scalar::one()]),
            UniPoly::new(vec![v2, -u, Scalar::one()]),
        );
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Roots of a quadratic `c0 + c1 x + c2 x^2` (with `c2 != 0`), if its
/// discriminant has a square root compatible with the coefficients.
pub fn quadratic_roots(p: &UniPoly) -> Option<[Scalar; 2]> {
    assert_eq!(p.degree(), Some(2));
    let (c0, c1, c2) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = &c1 * &c1 - &(&Scalar::from_int(4) * &(&c0 * &c2));
    let sd = disc.sqrt()?;
    if !p.coeffs().iter().all(|c| Scalar::compatible(c, &sd)) {
        return None;
    }
    let den = &c2 + &c2;
    let r1 = &(&-&c1 - &sd) / &den;
    let r2 = &(&-&c1 + &sd) / &den;
    Some([r1, r2])
}

/// Roots lying in the coefficient field or in a single quadratic extension of
/// the rationals, with multiplicities, plus the factors that were not split.
#[derive(Clone, Debug, Default)]
pub struct FieldRoots {
    pub roots: Vec<(Scalar, u32)>,
    pub unresolved: Vec<(UniPoly, u32)>,
}

pub fn roots_in_field(p: &UniPoly) -> FieldRoots {
    let mut out = FieldRoots::default();
    if p.is_constant() {
        return out;
    }
    if p.is_rational() {
        for f in factor_rational(p) {
            match f.poly.degree() {
                Some(1) => out.roots.push((-f.poly.coeff(0), f.multiplicity)),
                Some(2) => match quadratic_roots(&f.poly) {
                    Some([a, b]) => {
                        out.roots.push((a, f.multiplicity));
                        out.roots.push((b, f.multiplicity));
                    }
                    None => out.unresolved.push((f.poly, f.multiplicity)),
                },
                _ => out.unresolved.push((f.poly, f.multiplicity)),
            }
        }
        return out;
    }
    for (sqf, m) in p.squarefree_decomposition() {
        let mut rest = sqf.clone();
        if sqf.degree() == Some(1) {
            out.roots.push((&-&sqf.coeff(0) / &sqf.coeff(1), m));
            continue;
        }
        if sqf.degree() == Some(2) {
            if let Some([a, b]) = quadratic_roots(&sqf) {
                out.roots.push((a, m));
                out.roots.push((b, m));
                continue;
            }
        }
        // candidates from the rational norm polynomial
        let conj = UniPoly::new(sqf.coeffs().iter().map(Scalar::conj).collect());
        let norm = &sqf * &conj;
        if norm.is_rational() {
            let cands = roots_in_field(&norm);
            for (r, _) in cands.roots {
                if !sqf.coeffs().iter().all(|c| Scalar::compatible(c, &r)) {
                    continue;
                }
                if rest.eval(&r).is_zero() {
                    rest = rest.div_exact(&UniPoly::linear_root(&r)).unwrap();
                    out.roots.push((r, m));
                }
            }
        }
        if !rest.is_constant() {
            out.unresolved.push((rest.monic(), m));
        }
    }
    out
}

/// Integer content helper used when normalizing rational vectors.
pub fn lcm_of_denominators(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Sign of a real scalar polynomial value at a rational point.
pub fn sign_at(p: &UniPoly, x: &Rational) -> i32 {
    p.eval_rational(x).signum().expect("real polynomial")
}
