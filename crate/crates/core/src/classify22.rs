//! Classification of (2,2)-curves, smoothness, ramification of the
//! projection to the first factor, and normal forms of smooth curves.

use std::cmp::Ordering;

use crate::poly::roots::{cmp_poly, Sturm};
use crate::poly::{p1_canonical, p1_det, p1_eq, BiForm, BiForm22, BinaryForm, Mobius, RootInterval, UniPoly, P1};
use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// The quartic `β² - 4αγ` in `(w, x)` where `α, β, γ` multiply `y², yz, z²`.
#[derive(Clone, Debug)]
pub struct Discriminant {
    pub form: BinaryForm,
    /// Dehomogenized at `x = 1`, a polynomial in `w`.
    pub poly: UniPoly,
    /// Multiplicity of the root `[w, x] = [1, 0]` (degree drop of `poly`).
    pub root_at_infinity: usize,
}

/// `α`, `β`, `γ`: the coefficients of `y²`, `yz`, `z²` as forms in `(w, x)`.
pub fn fiber_coefficients(f: &BiForm22) -> [BinaryForm; 3] {
    let [z2, yz, y2] = f.columns();
    [y2, yz, z2]
}

pub fn discriminant_in_yz(f: &BiForm22) -> Discriminant {
    let [a, b, c] = fiber_coefficients(f);
    let form = b.mul(&b).sub(&a.mul(&c).scale(&Scalar::from_int(4)));
    let poly = form.dehomogenize_second();
    let root_at_infinity = if form.is_zero() { 0 } else { form.mult_at_second_zero() };
    Discriminant { form, poly, root_at_infinity }
}

/// The double root of the fiber over `p` (which must be a ramification point
/// with a nonzero fiber).
pub fn double_point(f: &BiForm22, p: &P1) -> Option<P1> {
    let [a, b, c] = fiber_coefficients(f);
    let (a, b, c) = (a.eval(p), b.eval(p), c.eval(p));
    if !a.is_zero() {
        Some(p1_canonical(&[-b, &a + &a]))
    } else if !c.is_zero() {
        Some([Scalar::one(), Scalar::zero()])
    } else {
        None
    }
}

/// `sum c[i][j] w^i Y^j Z^(n-j)` at `x = 1` for univariate `Y, Z` in `w`.
fn substitute_x1(f: &BiForm, y: &UniPoly, z: &UniPoly) -> UniPoly {
    let (m, n) = f.bidegree();
    let mut acc = UniPoly::zero();
    for i in 0..=m {
        for j in 0..=n {
            let c = f.coeff(i, j);
            if c.is_zero() {
                continue;
            }
            let t = &(&y.pow(j as u32) * &z.pow((n - j) as u32)) * &UniPoly::x().pow(i as u32);
            acc = &acc + &t.scale(c);
        }
    }
    acc
}

/// True iff `F` and its gradient have no common zero on P1 x P1.
pub fn is_smooth(f: &BiForm22) -> bool {
    if f.is_zero() {
        return false;
    }
    let disc = discriminant_in_yz(f);
    if disc.form.is_zero() {
        return false;
    }
    let bf = f.as_biform();
    let fw = bf.d_w();
    let [a, b, c] = fiber_coefficients(f);
    let (ap, bp, cp) = (a.dehomogenize_second(), b.dehomogenize_second(), c.dehomogenize_second());
    let ds = disc.poly.squarefree_part();
    if !ds.is_constant() {
        let ds_b = ds.gcd(&ap);
        let ds_a = ds.div_exact(&ds_b).expect("gcd divides");
        if !ds_a.is_constant() {
            let h1 = substitute_x1(&fw, &-&bp, &(&ap + &ap));
            if !ds_a.gcd(&h1).is_constant() {
                return false;
            }
        }
        if !ds_b.is_constant() {
            if !ds_b.gcd(&cp).is_constant() {
                return false;
            }
            let h2 = substitute_x1(&fw, &UniPoly::one(), &UniPoly::zero());
            if !ds_b.gcd(&h2).is_constant() {
                return false;
            }
        }
    }
    if disc.root_at_infinity > 0 {
        let p = [Scalar::one(), Scalar::zero()];
        let Some(q) = double_point(f, &p) else {
            return false;
        };
        if bf.d_x().eval(&p, &q).is_zero() {
            return false;
        }
    }
    true
}

/// One irreducible (over the working field) component of a curve.
#[derive(Clone, Debug)]
pub struct Factor {
    pub bidegree: (usize, usize),
    pub multiplicity: u32,
    pub form: BiForm,
    /// Has real points (coefficients real and the real locus nonempty).
    pub real: bool,
}

/// One of the nine classes of (2,2)-curves together with its components.
#[derive(Clone, Debug)]
pub struct CurveClass {
    pub class: u8,
    /// The class description applies after interchanging the two factors.
    pub transposed: bool,
    pub factors: Vec<Factor>,
}

impl CurveClass {
    pub fn description(&self) -> &'static str {
        match self.class {
            1 => "smooth and irreducible",
            2 => "singular and irreducible",
            3 => "a (1,0)-curve and an irreducible (1,2)-curve",
            4 => "two distinct irreducible (1,1)-curves",
            5 => "an irreducible (1,1)-curve of multiplicity two",
            6 => "an irreducible (1,1)-curve, a (1,0)-curve and a (0,1)-curve",
            7 => "two distinct (1,0)-curves and two distinct (0,1)-curves",
            8 => "two distinct (1,0)-curves and a double (0,1)-curve",
            9 => "a double (1,0)-curve and a double (0,1)-curve",
            _ => "unknown",
        }
    }
}

fn all_real(f: &BiForm) -> bool {
    f.coeff_vec().iter().all(Scalar::is_real)
}

/// Splits a binary form into linear factors where possible.
fn line_factors(content: &BinaryForm, first: bool) -> Vec<Factor> {
    let mut out = Vec::new();
    if content.degree() == 0 {
        return out;
    }
    let one = BinaryForm::constant(Scalar::one());
    let lift = |b: &BinaryForm| {
        if first {
            BiForm::from_product(b, &one)
        } else {
            BiForm::from_product(&one, b)
        }
    };
    let (pts, unresolved) = content.roots();
    for (p, m) in pts {
        let real = p.iter().all(Scalar::is_real);
        let form = lift(&BinaryForm::vanishing_at(&p));
        out.push(Factor { bidegree: form.bidegree(), multiplicity: m, form, real });
    }
    for (u, m) in unresolved {
        let d = u.degree().unwrap_or(0);
        let b = BinaryForm::from_dehomogenized_first(&u, d);
        let real = u.is_rational() && Sturm::new(&u).map(|s| s.count_all() > 0).unwrap_or(false);
        let form = lift(&b);
        out.push(Factor { bidegree: form.bidegree(), multiplicity: m, form, real });
    }
    out
}

fn distinct_roots(b: &BinaryForm) -> bool {
    b.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
}

/// Writes a form as `κ E²`, when possible.
fn const_times_square(b: &BinaryForm) -> Option<(Scalar, BinaryForm)> {
    if !b.is_const_times_square() {
        return None;
    }
    let mut e = BinaryForm::constant(Scalar::one());
    for (f, m) in b.squarefree_decomposition() {
        e = e.mul(&f.pow(m / 2));
    }
    let e2 = e.mul(&e);
    let kappa = b.div_exact(&e2)?;
    Some((kappa.coeff(0).clone(), e))
}

pub fn classify(f: &BiForm22) -> CurveClass {
    assert!(!f.is_zero(), "classify needs a nonzero form");
    let bf = f.as_biform();
    let c10 = bf.content_first();
    let c01 = bf.content_second();
    let (d1, d2) = (c10.degree(), c01.degree());
    let mut factors = line_factors(&c10, true);
    factors.extend(line_factors(&c01, false));
    let denom = BiForm::from_product(&c10, &c01);
    let rest = bf.div_exact(&denom).expect("contents divide the form");
    let residual = |real: bool| Factor { bidegree: rest.bidegree(), multiplicity: 1, form: rest.clone(), real };
    let (class, transposed) = match (d1, d2) {
        (2, 2) => {
            let s1 = distinct_roots(&c10);
            let s2 = distinct_roots(&c01);
            match (s1, s2) {
                (true, true) => (7, false),
                (true, false) => (8, false),
                (false, true) => (8, true),
                (false, false) => (9, false),
            }
        }
        (1, 1) => {
            factors.push(residual(all_real(&rest)));
            (6, false)
        }
        (1, 0) | (0, 1) => {
            factors.push(residual(all_real(&rest)));
            (3, d2 == 1)
        }
        (0, 0) => return classify_no_lines(f),
        _ => unreachable!("content degrees ({d1}, {d2}) are impossible"),
    };
    CurveClass { class, transposed, factors }
}

fn classify_no_lines(f: &BiForm22) -> CurveClass {
    let bf = f.as_biform();
    let disc = discriminant_in_yz(f);
    if disc.form.is_zero() {
        let g = bf.gcd(&bf.d_y());
        let real = all_real(&g);
        let factors = vec![Factor { bidegree: g.bidegree(), multiplicity: 2, form: g, real }];
        return CurveClass { class: 5, transposed: false, factors };
    }
    if let Some((kappa, e)) = const_times_square(&disc.form) {
        let [a, b, _] = fiber_coefficients(f);
        let mut factors = Vec::new();
        match kappa.sqrt().filter(|r| f.coeff_vec().iter().all(|c| Scalar::compatible(c, r))) {
            Some(root) => {
                for sgn in [1, -1] {
                    let col_z = b.add(&e.scale(&(&root * &Scalar::from_int(sgn))));
                    // 2α y + (β ± √κ E) z, bidegree (2, 1)
                    let g = BiForm::from_fn(2, 1, |i, j| {
                        if j == 1 {
                            a.coeff(i) + a.coeff(i)
                        } else {
                            col_z.coeff(i).clone()
                        }
                    });
                    let h = g.div_exact(&BiForm::from_product(&g.content_first(), &BinaryForm::constant(Scalar::one())))
                        .expect("content divides");
                    let real = all_real(&h);
                    factors.push(Factor { bidegree: h.bidegree(), multiplicity: 1, form: h, real });
                }
            }
            None => {
                factors.push(Factor { bidegree: (2, 2), multiplicity: 1, form: bf.clone(), real: false });
            }
        }
        return CurveClass { class: 4, transposed: false, factors };
    }
    let real = f.is_rational() && disc.form.has_nonnegative_real_value().unwrap_or(false)
        || (!f.is_rational() && f.coeff_vec().iter().all(Scalar::is_real) && disc.form.is_rational()
            && disc.form.has_nonnegative_real_value().unwrap_or(false));
    let class = if is_smooth(f) { 1 } else { 2 };
    let factors = vec![Factor { bidegree: (2, 2), multiplicity: 1, form: bf, real }];
    CurveClass { class, transposed: false, factors }
}

/// A ramification point on the first line with the double point of its fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct RamificationPoint {
    pub point: P1,
    pub double_point: P1,
}

/// Ramification points not representable in the working field.
#[derive(Clone, Debug)]
pub struct AlgebraicRamification {
    /// Monic minimal polynomial of `x / w`.
    pub min_poly: UniPoly,
    pub real_roots: Vec<RootInterval>,
    pub complex_roots: usize,
}

#[derive(Clone, Debug)]
pub struct Ramification {
    pub points: Vec<RamificationPoint>,
    pub unresolved: Vec<AlgebraicRamification>,
}

fn min_poly_of(r: &Scalar) -> UniPoly {
    UniPoly::new(vec![Scalar::from_rational(r.norm()), -&(r + &r.conj()), Scalar::one()])
}

/// Rational points by increasing `x / w`, then `[0, 1]`, then quadratic
/// irrationalities grouped by minimal polynomial (real ones ascending, complex
/// ones with negative imaginary part first).
pub fn cmp_p1(a: &P1, b: &P1) -> Ordering {
    fn key(p: &P1) -> (u8, Option<Scalar>) {
        if p[0].is_zero() {
            return (1, None);
        }
        let r = &p[1] / &p[0];
        if r.is_rational() {
            (0, Some(r))
        } else {
            (2, Some(r))
        }
    }
    let (ka, ra) = key(a);
    let (kb, rb) = key(b);
    ka.cmp(&kb).then_with(|| match (ra, rb) {
        (Some(x), Some(y)) if ka == 0 => x.re().cmp(y.re()),
        (Some(x), Some(y)) => cmp_poly(&min_poly_of(&x), &min_poly_of(&y)).then_with(|| {
            if x.is_real() && y.is_real() {
                x.cmp_real(&y).unwrap_or(Ordering::Equal)
            } else {
                x.ir().cmp(y.ir())
            }
        }),
        _ => Ordering::Equal,
    })
}

pub fn ramification(f: &BiForm22) -> Result<Ramification> {
    if !is_smooth(f) {
        return Err(Error::Singular(classify(f).class));
    }
    let disc = discriminant_in_yz(f);
    let (pts, unresolved) = disc.form.roots();
    let mut points: Vec<RamificationPoint> = pts
        .into_iter()
        .map(|(p, _)| {
            let q = double_point(f, &p).expect("smooth curves have nonzero fibers");
            RamificationPoint { point: p1_canonical(&p), double_point: q }
        })
        .collect();
    points.sort_by(|x, y| cmp_p1(&x.point, &y.point));
    let unresolved = unresolved
        .into_iter()
        .map(|(u, _)| {
            let (real_roots, n) = if u.is_rational() {
                let s = Sturm::new(&u).expect("rational nonzero");
                let iv = s.isolate();
                let n = iv.len();
                (iv, n)
            } else {
                (Vec::new(), 0)
            };
            let complex_roots = u.degree().unwrap_or(0) - n;
            AlgebraicRamification { min_poly: u, real_roots, complex_roots }
        })
        .collect();
    Ok(Ramification { points, unresolved })
}

/// `[det(a1,a4)/det(a1,a3), det(a2,a4)/det(a2,a3)]`.
pub fn cross_ratio(a1: &P1, a2: &P1, a3: &P1, a4: &P1) -> Result<P1> {
    let d13 = p1_det(a1, a3);
    let d23 = p1_det(a2, a3);
    if d13.is_zero() || d23.is_zero() {
        return Err(Error::PointsCoincide);
    }
    let n1 = &p1_det(a1, a4) * &d23;
    let n2 = &p1_det(a2, a4) * &d13;
    if n1.is_zero() && n2.is_zero() {
        return Err(Error::PointsCoincide);
    }
    Ok(p1_canonical(&[n1, n2]))
}

/// The affine value `second / first` of a cross ratio.
pub fn cross_ratio_value(c: &P1) -> Result<Scalar> {
    if c[0].is_zero() {
        return Err(Error::PointsCoincide);
    }
    Ok(&c[1] / &c[0])
}

/// `s w²z² + (1-s) wxz² - 2 wxyz + (1-t) wxy² + t x²y²`.
pub fn asymmetric_model(s: &Scalar, t: &Scalar) -> BiForm22 {
    let mut f = BiForm22::zero();
    let one = Scalar::one();
    f.c[2][0] = s.clone();
    f.c[1][0] = &one - s;
    f.c[1][1] = Scalar::from_int(-2);
    f.c[1][2] = &one - t;
    f.c[0][2] = t.clone();
    f
}

/// `(x² - w²) y² + sign (x² - s² w²) z²`.
pub fn symmetric_model(s2: &Scalar, sign: i8) -> BiForm22 {
    let mut f = BiForm22::zero();
    let e = Scalar::from_int(sign as i64);
    f.c[0][2] = Scalar::one();
    f.c[2][2] = Scalar::from_int(-1);
    f.c[0][0] = e.clone();
    f.c[2][0] = -&(&e * s2);
    f
}

/// `st(s-1)(t-1)(s-t) != 0`, naming the first violated factor.
pub fn check_exclusion(s: &Scalar, t: &Scalar) -> Result<()> {
    let one = Scalar::one();
    for (v, name) in [
        (s.clone(), "s"),
        (t.clone(), "t"),
        (s - &one, "s-1"),
        (t - &one, "t-1"),
        (s - t, "s-t"),
    ] {
        if v.is_zero() {
            return Err(Error::Excluded(name.into()));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalFormKind {
    Asymmetric { s: Scalar, t: Scalar },
    /// `s` is one root of `s2`; the pair `±s`, `±1/s` describes the same curve.
    Symmetric { s: Scalar, s2: Scalar, sign: i8 },
}

/// `F(m1 p, m2 q) = scale * model(p, q)`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub gamma1: Scalar,
    pub gamma2: Option<Scalar>,
    pub ramification: Vec<RamificationPoint>,
    pub m1: Mobius,
    pub m2: Mobius,
    pub scale: Scalar,
}

impl NormalForm {
    pub fn model(&self) -> BiForm22 {
        match &self.kind {
            NormalFormKind::Asymmetric { s, t } => asymmetric_model(s, t),
            NormalFormKind::Symmetric { s2, sign, .. } => symmetric_model(s2, *sign),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.kind, NormalFormKind::Symmetric { .. })
    }
}

fn compatible_all(xs: &[&Scalar]) -> bool {
    xs.iter().all(|a| xs.iter().all(|b| Scalar::compatible(a, b)))
}

fn p1_scalars(ps: &[&P1]) -> Vec<Scalar> {
    ps.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// `(s, t)` from the cross ratios of ramification points and double points.
pub fn st_from_cross_ratios(g1: &Scalar, g2: &Scalar) -> Result<(Scalar, Scalar)> {
    let one = Scalar::one();
    if (g1 - &one).is_zero() {
        return Err(Error::Excluded("gamma1-1".into()));
    }
    if g2.is_zero() {
        return Err(Error::Excluded("gamma2".into()));
    }
    let d = &(g1 - &one) * g2;
    let s = &(g1 * &(g2 - &one)) / &d;
    let t = &(g2 - &one) / &(g1 - &one);
    Ok((s, t))
}

pub fn normal_form(f: &BiForm22) -> Result<NormalForm> {
    let ram = ramification(f)?;
    if !ram.unresolved.is_empty() || ram.points.len() != 4 {
        return Err(Error::ExtensionRequired(
            "ramification points need an extension of degree > 2".into(),
        ));
    }
    let pts = ram.points;
    let all: Vec<Scalar> = pts.iter().flat_map(|r| p1_scalars(&[&r.point, &r.double_point])).collect();
    if !compatible_all(&all.iter().collect::<Vec<_>>()) {
        return Err(Error::ExtensionRequired("ramification points lie in different quadratic fields".into()));
    }
    let mut images: Vec<P1> = Vec::new();
    for r in &pts {
        if !images.iter().any(|q| p1_eq(q, &r.double_point)) {
            images.push(r.double_point.clone());
        }
    }
    let a: Vec<&P1> = pts.iter().map(|r| &r.point).collect();
    let b: Vec<&P1> = pts.iter().map(|r| &r.double_point).collect();
    match images.len() {
        4 => asymmetric(f, &pts, &a, &b),
        2 => symmetric(f, &pts, &images),
        n => Err(Error::Internal(format!("double points project to {n} points"))),
    }
}

fn std3() -> [P1; 3] {
    [
        [Scalar::zero(), Scalar::one()],
        [Scalar::one(), Scalar::zero()],
        [Scalar::one(), Scalar::one()],
    ]
}

fn asymmetric(f: &BiForm22, pts: &[RamificationPoint], a: &[&P1], b: &[&P1]) -> Result<NormalForm> {
    let g1 = cross_ratio_value(&cross_ratio(a[0], a[1], a[2], a[3])?)?;
    let g2 = cross_ratio_value(&cross_ratio(b[0], b[1], b[2], b[3])?)?;
    let (s, t) = st_from_cross_ratios(&g1, &g2)?;
    let n1 = Mobius::three_points(&[a[0].clone(), a[1].clone(), a[2].clone()], &std3())?;
    let n2 = Mobius::three_points(&[b[0].clone(), b[1].clone(), b[2].clone()], &std3())?;
    let (m1, m2) = (n1.inverse(), n2.inverse());
    let g = f.reparameterize(&m1, &m2);
    let c11 = g.c[1][1].clone();
    if c11.is_zero() {
        return Err(Error::Internal("normalized form lost its wxyz term".into()));
    }
    let k = &Scalar::from_int(-2) / &c11;
    let gn = g.scale(&k);
    if gn.c[2][0] != s || gn.c[0][2] != t || gn != asymmetric_model(&s, &t) {
        return Err(Error::Internal("transformed curve does not match the normal form".into()));
    }
    Ok(NormalForm {
        kind: NormalFormKind::Asymmetric { s, t },
        gamma1: g1,
        gamma2: Some(g2),
        ramification: pts.to_vec(),
        m1,
        m2,
        scale: k.recip(),
    })
}

fn magnitude_gt_one(x: &Scalar) -> bool {
    if x.is_real() {
        let a = x.abs_real().expect("real");
        a.cmp_real(&Scalar::one()) == Some(Ordering::Greater)
    } else {
        x.norm() > Rational::from_integer(1.into())
    }
}

fn symmetric(f: &BiForm22, pts: &[RamificationPoint], images: &[P1]) -> Result<NormalForm> {
    let first: Vec<&P1> = pts.iter().filter(|r| p1_eq(&r.double_point, &images[0])).map(|r| &r.point).collect();
    let second: Vec<&P1> = pts.iter().filter(|r| p1_eq(&r.double_point, &images[1])).map(|r| &r.point).collect();
    if first.len() != 2 || second.len() != 2 {
        return Err(Error::Internal("double points do not pair up".into()));
    }
    let g = cross_ratio_value(&cross_ratio(first[0], first[1], second[0], second[1])?)?;
    let root = g.sqrt().ok_or_else(|| Error::ExtensionRequired("square root of the cross ratio".into()))?;
    let mut field: Vec<Scalar> = p1_scalars(&[first[0], first[1], second[0], second[1], &images[0], &images[1]]);
    field.push(root.clone());
    if !compatible_all(&field.iter().collect::<Vec<_>>()) {
        return Err(Error::ExtensionRequired("square root of the cross ratio".into()));
    }
    let one = Scalar::one();
    let mut s = &(&one - &root) / &(&one + &root);
    let s2 = &s * &s;
    if !magnitude_gt_one(&s2) && magnitude_gt_one(&s2.recip()) {
        s = s.recip();
    }
    let s2 = &s * &s;
    let targets = [
        [one.clone(), one.clone()],
        [one.clone(), -&one],
        [one.clone(), s.clone()],
    ];
    let n1 = Mobius::three_points(&[first[0].clone(), first[1].clone(), second[0].clone()], &targets)?;
    let m1 = n1.inverse();
    // columns B1, B2 send [1,0], [0,1] to the two double point images
    let base = Mobius::new([
        [images[0][0].clone(), images[1][0].clone()],
        [images[0][1].clone(), images[1][1].clone()],
    ])?;
    let g0 = f.reparameterize(&m1, &base);
    let (aa, cc) = (g0.c[0][2].clone(), g0.c[0][0].clone());
    if aa.is_zero() || cc.is_zero() {
        return Err(Error::Internal("symmetric normalization failed".into()));
    }
    let shape = {
        let mut h = BiForm22::zero();
        h.c[0][2] = aa.clone();
        h.c[2][2] = -&aa;
        h.c[0][0] = cc.clone();
        h.c[2][0] = -&(&cc * &s2);
        h
    };
    if g0 != shape {
        return Err(Error::Internal("transformed curve is not symmetric".into()));
    }
    // rescale z by λ with C λ² = ±A
    let ratio = &aa / &cc;
    let mut chosen = None;
    let prefer: [i8; 2] = if ratio.signum() == Some(-1) { [-1, 1] } else { [1, -1] };
    for sign in prefer {
        let target = &ratio * &Scalar::from_int(sign as i64);
        if let Some(l) = target.sqrt() {
            let mut fl = field.clone();
            fl.push(l.clone());
            if compatible_all(&fl.iter().collect::<Vec<_>>()) {
                chosen = Some((sign, l));
                break;
            }
        }
    }
    let (sign, lambda) = chosen.ok_or_else(|| Error::ExtensionRequired("rescaling the second line".into()))?;
    let zl = Mobius::new([[Scalar::one(), Scalar::zero()], [Scalar::zero(), lambda]])?;
    let m2 = base.compose(&zl);
    let gn = f.reparameterize(&m1, &m2);
    let model = symmetric_model(&s2, sign);
    if gn != model.scale(&aa) {
        return Err(Error::Internal("symmetric normal form mismatch".into()));
    }
    Ok(NormalForm {
        kind: NormalFormKind::Symmetric { s, s2, sign },
        gamma1: g,
        gamma2: None,
        ramification: pts.to_vec(),
        m1,
        m2,
        scale: aa,
    })
}

/// All `(s, t)` obtained from the model at `(s, t)` by reordering its four
/// ramification points.
pub fn orbit(s: &Scalar, t: &Scalar) -> Vec<(Scalar, Scalar)> {
    let one = Scalar::one();
    let r: [P1; 4] = [
        [Scalar::zero(), one.clone()],
        [one.clone(), Scalar::zero()],
        [one.clone(), one.clone()],
        [t * &(s - &one), s * &(t - &one)],
    ];
    let d: [P1; 4] = [
        [Scalar::zero(), one.clone()],
        [one.clone(), Scalar::zero()],
        [one.clone(), one.clone()],
        [s - &one, t - &one],
    ];
    let mut out: Vec<(Scalar, Scalar)> = Vec::new();
    for p in permutations4() {
        let cr = |v: &[P1; 4]| {
            cross_ratio(&v[p[0]], &v[p[1]], &v[p[2]], &v[p[3]]).and_then(|c| cross_ratio_value(&c))
        };
        if let (Ok(g1), Ok(g2)) = (cr(&r), cr(&d)) {
            if let Ok(st) = st_from_cross_ratios(&g1, &g2) {
                if !out.contains(&st) {
                    out.push(st);
                }
            }
        }
    }
    out
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = [a, b, c, d];
                    if (0..4).all(|i| v.contains(&i)) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}
