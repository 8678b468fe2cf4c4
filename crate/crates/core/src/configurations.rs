//! Two skew lines and two spheres: common components of the two tangent
//! curves, the infinite families of common tangents, recovery of a sphere
//! from its curve, and enumeration of finitely many common tangents.

use std::fmt;

use crate::classify22::{classify, CurveClass};
use crate::envelope::{affine_sphere_curve, check_directions, projective_sphere_curve, sphere_form};
use crate::linalg::{self, Mat};
use crate::poly::bi::det_poly;
use crate::poly::{p1_canonical, BiForm, BiForm22, BiPoly, BinaryForm, RootInterval, Sturm, UniPoly, P1};
use crate::projgeom::{transversal_through, FrameMode, LinePair, PluckerLine, ProjPoint, PAIRS};
use crate::quadrics::{sphere_to_quadric, tangency_value, Sphere};
use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// Two skew lines and two distinct spheres. In projective mode the second
/// line lies in the plane at infinity.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub pair: LinePair,
    pub spheres: [Sphere; 2],
    pub mode: FrameMode,
}

impl Configuration {
    /// Detects the mode from a line at infinity when `mode` is `None`; a
    /// first line at infinity is swapped into second position.
    pub fn new(pair: LinePair, s1: Sphere, s2: Sphere, mode: Option<FrameMode>) -> Result<Self> {
        if s1 == s2 {
            return Err(Error::InvalidInput("spheres must be distinct".into()));
        }
        let pair = if pair.l1.is_at_infinity() {
            LinePair::from_points(pair.c.clone(), pair.d.clone(), pair.a.clone(), pair.b.clone())?
        } else {
            pair
        };
        let detected = if pair.l2.is_at_infinity() { FrameMode::Projective } else { FrameMode::Affine };
        let mode = mode.unwrap_or(detected);
        if mode != detected {
            return Err(Error::InvalidInput(match mode {
                FrameMode::Projective => "projective mode needs a line at infinity".into(),
                FrameMode::Affine => "affine mode needs two finite lines".into(),
            }));
        }
        Ok(Configuration { pair, spheres: [s1, s2], mode })
    }

    pub fn curves(&self) -> Result<[BiForm22; 2]> {
        Ok([sphere_form(&self.pair, &self.spheres[0])?, sphere_form(&self.pair, &self.spheres[1])?])
    }
}

/// The infinite families of common tangents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// Spheres tangent at a point of one line, the other line in the common
    /// tangent plane.
    Affine1,
    /// Both lines tangent to both spheres, one ruling of a hyperboloid of
    /// revolution about the line of centers.
    Affine2,
    /// Spheres tangent at a point of the finite line, the line at infinity in
    /// the common tangent plane.
    Proj1,
    /// Transversals perpendicular to the finite line, spheres mirror images
    /// under `-1` perpendicular to it.
    Proj2,
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::Affine1 => "affine-1",
            CaseTag::Affine2 => "affine-2",
            CaseTag::Proj1 => "projective-1",
            CaseTag::Proj2 => "projective-2",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            CaseTag::Affine1 => {
                "spheres tangent at a point of one line, other line in the common tangent plane; pencil of tangents"
            }
            CaseTag::Affine2 => "lines in one ruling of a hyperboloid of revolution tangent to both spheres",
            CaseTag::Proj1 => "spheres tangent at a point of the finite line, line at infinity in the tangent plane",
            CaseTag::Proj2 => "transversals perpendicular to the finite line, spheres mirrored across it",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite,
    Infinite,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "FINITE",
            Verdict::Infinite => "INFINITE",
        })
    }
}

/// An irreducible common component of the two curves.
#[derive(Clone, Debug)]
pub struct Component {
    pub form: BiForm,
    pub multiplicity: u32,
    pub real: bool,
    pub case: Option<CaseTag>,
    /// Apex of the pencil for the point cases.
    pub point: Option<ProjPoint>,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub mode: FrameMode,
    pub verdict: Verdict,
    pub curves: [BiForm22; 2],
    pub curve_classes: [CurveClass; 2],
    /// Greatest common divisor of the two curves.
    pub common: BiForm,
    pub components: Vec<Component>,
    /// Present for finite verdicts.
    pub tangents: Option<TangentEnumeration>,
}

impl ClassificationReport {
    pub fn cases(&self) -> Vec<CaseTag> {
        self.components.iter().filter(|c| c.real).filter_map(|c| c.case).collect()
    }
}

/// Coefficients in `(y, z)` of `g([w, x], [y, z])` at a fixed `[w, x]`.
pub fn fiber_over_first(g: &BiForm, u: &P1) -> BinaryForm {
    let (m, n) = g.bidegree();
    let powers: Vec<Scalar> = (0..=m).map(|i| &u[0].pow(i as u32) * &u[1].pow((m - i) as u32)).collect();
    BinaryForm::new(n, (0..=n).map(|j| (0..=m).map(|i| g.coeff(i, j) * &powers[i]).sum()).collect())
}

/// Coefficients in `(w, x)` at a fixed `[y, z]`.
pub fn fiber_over_second(g: &BiForm, v: &P1) -> BinaryForm {
    fiber_over_first(&g.transpose(), v)
}

fn affine(p: &ProjPoint) -> Option<[Scalar; 3]> {
    p.to_affine()
}

fn sub3(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| &a[i] - &b[i])
}

/// Spheres tangent to each other at `p` with `other` in the common tangent
/// plane.
fn tangent_pencil_holds(p: &ProjPoint, other: (&ProjPoint, &ProjPoint), spheres: &[Sphere; 2]) -> bool {
    let Some(pa) = affine(p) else { return false };
    if spheres.iter().any(|s| !s.power(&pa).is_zero()) {
        return false;
    }
    let n1 = sub3(&spheres[0].center, &pa);
    let n2 = sub3(&spheres[1].center, &pa);
    if linalg::cross(&n1, &n2).iter().any(|x| !x.is_zero()) {
        return false;
    }
    let np = linalg::dot(&n1, &pa);
    [other.0, other.1].iter().all(|x| {
        let v = &x.0;
        (&linalg::dot(&n1, &v[1..]) - &(&np * &v[0])).is_zero()
    })
}

/// Directions of the line at infinity perpendicular to the finite line, and
/// the spheres mirror images across it.
fn reflection_holds(pair: &LinePair, spheres: &[Sphere; 2]) -> bool {
    let Some((p0, e)) = pair.l1.affine_data() else { return false };
    if [&pair.c, &pair.d].iter().any(|x| !linalg::dot(&x.0[1..], &e).is_zero()) {
        return false;
    }
    let [s1, s2] = spheres;
    let t = &linalg::dot(&sub3(&s1.center, &p0), &e) / &linalg::dot(&e, &e);
    let foot: [Scalar; 3] = std::array::from_fn(|i| &p0[i] + &(&t * &e[i]));
    let mirror: [Scalar; 3] = std::array::from_fn(|i| &(&foot[i] + &foot[i]) - &s1.center[i]);
    mirror == s2.center && s1.r2 == s2.r2
}

pub fn classify_configuration(cfg: &Configuration) -> Result<ClassificationReport> {
    let [c1, c2] = cfg.curves()?;
    let g = c1.as_biform().gcd(&c2.as_biform());
    let projective = cfg.mode == FrameMode::Projective;
    let mut components = Vec::new();
    if g.bidegree() != (0, 0) {
        if c1.is_proportional(&c2) {
            if !projective {
                return Err(Error::Internal("distinct spheres with the same curve".into()));
            }
            if !reflection_holds(&cfg.pair, &cfg.spheres) {
                return Err(Error::Internal("proportional curves without mirror symmetry".into()));
            }
            let real = classify(&c1).factors.iter().any(|f| f.real);
            components.push(Component { form: g.clone(), multiplicity: 1, real, case: Some(CaseTag::Proj2), point: None });
        } else {
            components = split_common(cfg, &g)?;
        }
    }
    let infinite = components.iter().any(|c| c.real && c.case.is_some());
    let tangents = if infinite {
        None
    } else {
        let f1 = c1.as_biform().div_exact(&g).expect("gcd divides");
        let f2 = c2.as_biform().div_exact(&g).expect("gcd divides");
        let mut t = enumerate_common_tangents(&f1, &f2)?;
        t.attach_lines(&cfg.pair);
        Some(t)
    };
    Ok(ClassificationReport {
        mode: cfg.mode,
        verdict: if infinite { Verdict::Infinite } else { Verdict::Finite },
        curve_classes: [classify(&c1), classify(&c2)],
        curves: [c1, c2],
        common: g,
        components,
        tangents,
    })
}

fn split_common(cfg: &Configuration, g: &BiForm) -> Result<Vec<Component>> {
    let projective = cfg.mode == FrameMode::Projective;
    let pair = &cfg.pair;
    let mut out = Vec::new();
    let c10 = g.content_first();
    let c01 = g.content_second();
    for (content, first) in [(&c10, true), (&c01, false)] {
        let (pts, unresolved) = content.roots();
        if !unresolved.is_empty() {
            return Err(Error::Internal("common line factor of degree > 2".into()));
        }
        for (p, m) in pts {
            let real = p.iter().all(Scalar::is_real);
            let one = BinaryForm::constant(Scalar::one());
            let lin = BinaryForm::vanishing_at(&p);
            let (form, point, other) = if first {
                (BiForm::from_product(&lin, &one), pair.point_on_l1(&p), (&pair.c, &pair.d))
            } else {
                (BiForm::from_product(&one, &lin), pair.point_on_l2(&p), (&pair.a, &pair.b))
            };
            let case = match (first, projective) {
                (true, false) | (false, false) => CaseTag::Affine1,
                (true, true) => CaseTag::Proj1,
                (false, true) if real => {
                    return Err(Error::Internal("common component through a point at infinity".into()))
                }
                (false, true) => CaseTag::Proj1,
            };
            if real && !tangent_pencil_holds(&point, other, &cfg.spheres) {
                return Err(Error::Internal(format!("{case} component without tangent spheres")));
            }
            let case = real.then_some(case);
            out.push(Component { form, multiplicity: m, real, case, point: Some(point) });
        }
    }
    let lines = BiForm::from_product(&c10, &c01);
    let rest = g.div_exact(&lines).expect("contents divide");
    match rest.bidegree() {
        (0, 0) => {}
        (1, 1) => {
            if projective {
                return Err(Error::Internal("(1,1) common component with a line at infinity".into()));
            }
            for s in &cfg.spheres {
                let chk = hyperboloid_axis_check(pair, &rest, s);
                if !chk.holds() {
                    return Err(Error::Internal(format!(
                        "(1,1) common component fails the hyperboloid check: {}",
                        chk.reason.unwrap_or_default()
                    )));
                }
            }
            let real = rest.coeff_vec().iter().all(Scalar::is_real);
            out.push(Component { form: rest, multiplicity: 1, real, case: Some(CaseTag::Affine2), point: None });
        }
        d => return Err(Error::Internal(format!("common component of bidegree {d:?}"))),
    }
    Ok(out)
}

/// Rationals `p/q` ordered by height `max(|p|, q)`.
fn small_rationals() -> impl Iterator<Item = Scalar> {
    std::iter::once(Scalar::zero()).chain((1i64..).flat_map(|h| {
        (1..=h).flat_map(move |q| {
            (-h..=h)
                .filter(move |p| (p.abs() == h || q == h) && *p != 0 && num_integer::gcd(*p, q) == 1)
                .map(move |p| Scalar::from_ratio(p, q))
        })
    }))
}

/// Up to `n` transversals on a component, skipping parameters where the
/// fiber is degenerate or has no real point.
pub fn component_lines(pair: &LinePair, comp: &BiForm, n: usize) -> Vec<PluckerLine> {
    let (m, k) = comp.bidegree();
    let mut out = Vec::new();
    for s in small_rationals().take(40 * n + 16) {
        if out.len() >= n {
            break;
        }
        let q = [Scalar::one(), s];
        if k == 0 {
            // pencil over a root of the (w, x)-content
            for (p, _) in comp.content_first().roots().0 {
                out.push(transversal_through(pair, &p, &q));
            }
            continue;
        }
        if m == 0 {
            for (p, _) in comp.content_second().roots().0 {
                out.push(transversal_through(pair, &q, &p));
            }
            continue;
        }
        let f = fiber_over_first(comp, &q);
        if f.is_zero() {
            continue;
        }
        for (v, _) in f.roots().0 {
            if v.iter().all(Scalar::is_real) && out.len() < n {
                out.push(transversal_through(pair, &q, &v));
            }
        }
    }
    out.truncate(n);
    out
}

/// Exact tangency of a line to a sphere.
pub fn is_tangent(s: &Sphere, l: &PluckerLine) -> bool {
    tangency_value(&sphere_to_quadric(s), l).is_zero()
}

/// A coordinate of a common solution.
#[derive(Clone, Debug)]
pub enum Coord {
    Exact(P1),
    /// A real root of `poly` (in the ratio `second / first`) in `interval`.
    Isolated { poly: UniPoly, interval: RootInterval, approx: f64 },
    /// `[y(x), z(x)]` evaluated at the isolated first coordinate `x`.
    Image { y: UniPoly, z: UniPoly, approx: [f64; 2] },
    Approx([f64; 2]),
}

impl Coord {
    pub fn approx(&self) -> [f64; 2] {
        match self {
            Coord::Exact(p) => [p[0].to_complex_f64().0, p[1].to_complex_f64().0],
            Coord::Isolated { approx, .. } => [1.0, *approx],
            Coord::Image { approx, .. } | Coord::Approx(approx) => *approx,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coord::Exact(_))
    }
}

#[derive(Clone, Debug)]
pub struct CommonTangent {
    /// Point of the first line.
    pub first: Coord,
    /// Point of the second line.
    pub second: Coord,
    pub multiplicity: u32,
    pub real: bool,
    /// Both curves vanish exactly at the solution.
    pub certified: bool,
    pub line: Option<PluckerLine>,
    pub line_approx: Option<[f64; 6]>,
}

#[derive(Clone, Debug)]
pub struct TangentEnumeration {
    /// Resultant eliminating `(y, z)`, a form in `(w, x)`.
    pub resultant: BinaryForm,
    pub solutions: Vec<CommonTangent>,
    /// Non-real solutions over unresolved factors, with multiplicity.
    pub complex_unresolved: u32,
}

impl TangentEnumeration {
    pub fn total_multiplicity(&self) -> u32 {
        self.solutions.iter().map(|s| s.multiplicity).sum::<u32>() + self.complex_unresolved
    }

    pub fn real_count(&self) -> usize {
        self.solutions.iter().filter(|s| s.real).count()
    }

    pub fn attach_lines(&mut self, pair: &LinePair) {
        let pt = |p: &ProjPoint| p.0.clone().map(|x| x.to_complex_f64().0);
        let (a, b, c, d) = (pt(&pair.a), pt(&pair.b), pt(&pair.c), pt(&pair.d));
        for s in &mut self.solutions {
            if let (Coord::Exact(u), Coord::Exact(v)) = (&s.first, &s.second) {
                s.line = Some(transversal_through(pair, u, v));
            }
            if s.real {
                let (u, v) = (s.first.approx(), s.second.approx());
                let p: [f64; 4] = std::array::from_fn(|i| u[0] * a[i] + u[1] * b[i]);
                let q: [f64; 4] = std::array::from_fn(|i| v[0] * c[i] + v[1] * d[i]);
                let l = PAIRS.map(|(i, j)| p[i] * q[j] - p[j] * q[i]);
                let n = l.iter().map(|x| x * x).sum::<f64>().sqrt();
                s.line_approx = Some(l.map(|x| x / n));
            }
        }
    }
}

/// Resultant eliminating the second factor, as a form in `(w, x)`.
pub fn resultant_second(f: &BiForm, g: &BiForm) -> BinaryForm {
    let (m1, n1) = f.bidegree();
    let (m2, n2) = g.bidegree();
    let total = m1 * n2 + m2 * n1;
    if n1 == 0 && n2 == 0 {
        return BinaryForm::constant(Scalar::one());
    }
    // coefficients in x with w = 1; row j multiplies y^j z^(n-j)
    let cf: Vec<UniPoly> = f.columns().iter().map(BinaryForm::dehomogenize_first).collect();
    let cg: Vec<UniPoly> = g.columns().iter().map(BinaryForm::dehomogenize_first).collect();
    let size = n1 + n2;
    let mut m: Vec<Vec<UniPoly>> = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n2 {
        for (j, c) in cf.iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..n1 {
        for (j, c) in cg.iter().rev().enumerate() {
            m[n2 + r][r + j] = c.clone();
        }
    }
    let det = det_poly(m);
    if det.is_zero() {
        return BinaryForm::zero(total);
    }
    BinaryForm::from_dehomogenized_first(&det, total)
}

fn p1_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    let na = a[0].hypot(a[1]);
    let nb = b[0].hypot(b[1]);
    (a[0] * b[1] - a[1] * b[0]).abs() / (na * nb)
}

/// Common zeros of two forms without common components, over the algebraic
/// closure, with multiplicities.
pub fn enumerate_common_tangents(f: &BiForm, g: &BiForm) -> Result<TangentEnumeration> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.gcd(g).bidegree() != (0, 0) {
        return Err(Error::InfiniteFamily);
    }
    let res = resultant_second(f, g);
    let res_other = resultant_second(&f.transpose(), &g.transpose());
    let (pts, unresolved) = res.roots();
    let (other_pts, other_unresolved) = res_other.roots();
    let mut solutions = Vec::new();
    let mut complex_unresolved = 0;
    for (u, m) in pts {
        let h = fiber_over_first(f, &u).gcd(&fiber_over_first(g, &u));
        let (vs, vun) = h.roots();
        let u_real = u.iter().all(Scalar::is_real);
        let single = vs.len() == 1 && vun.is_empty();
        let mut left = m;
        for (v, _) in vs {
            let mult = if single {
                m
            } else {
                other_pts.iter().find(|(q, _)| crate::poly::p1_eq(q, &v)).map_or(1, |x| x.1).min(left)
            };
            left -= mult;
            let real = u_real && v.iter().all(Scalar::is_real);
            solutions.push(CommonTangent {
                first: Coord::Exact(p1_canonical(&u)),
                second: Coord::Exact(p1_canonical(&v)),
                multiplicity: mult,
                real,
                certified: f.eval(&u, &v).is_zero() && g.eval(&u, &v).is_zero(),
                line: None,
                line_approx: None,
            });
        }
        for (poly, _) in vun {
            // roots in a second quadratic extension
            let real_pair = u_real && poly.degree() == Some(2) && {
                let [c, b, a] = [poly.coeff(0), poly.coeff(1), poly.coeff(2)];
                (&(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c))).signum() == Some(1)
            };
            if !real_pair {
                complex_unresolved += left;
                left = 0;
                continue;
            }
            let c: Vec<f64> = poly.coeffs().iter().map(|x| x.to_complex_f64().0).collect();
            let d = (c[1] * c[1] - 4.0 * c[0] * c[2]).sqrt();
            for r in [(-c[1] + d) / (2.0 * c[2]), (-c[1] - d) / (2.0 * c[2])] {
                let mult = if left >= 2 { left / 2 } else { left };
                left -= mult.min(left);
                let n = 1f64.hypot(r);
                solutions.push(CommonTangent {
                    first: Coord::Exact(p1_canonical(&u)),
                    second: Coord::Approx([1.0 / n, r / n]),
                    multiplicity: mult,
                    real: true,
                    certified: false,
                    line: None,
                    line_approx: None,
                });
            }
        }
        complex_unresolved += left;
    }
    let other_ivs: Vec<(UniPoly, Vec<RootInterval>)> = other_unresolved
        .iter()
        .filter(|(p, _)| p.is_rational())
        .map(|(p, _)| (p.clone(), Sturm::new(p).map(|s| s.isolate()).unwrap_or_default()))
        .collect();
    for (poly, m) in unresolved {
        let deg = poly.degree().unwrap_or(0) as u32;
        if !poly.is_rational() {
            complex_unresolved += deg * m;
            continue;
        }
        let sturm = Sturm::new(&poly)?;
        let ivs = sturm.isolate();
        complex_unresolved += (deg - ivs.len() as u32) * m;
        let image = second_as_polynomial(f, g, &poly);
        let tiny = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 50));
        for iv in ivs {
            let x = sturm.refine(&iv, &tiny).midpoint_f64();
            let (second, certified) = match &image {
                Some((y, z)) => {
                    let (a, b) = (y.eval_f64(x), z.eval_f64(x));
                    let n = a.hypot(b);
                    (Coord::Image { y: y.clone(), z: z.clone(), approx: [a / n, b / n] }, true)
                }
                None => (match_second(approx_common_root(f, g, x), &other_pts, &other_ivs), false),
            };
            solutions.push(CommonTangent {
                first: Coord::Isolated { poly: poly.clone(), interval: iv, approx: x },
                second,
                multiplicity: m,
                real: true,
                certified,
                line: None,
                line_approx: None,
            });
        }
    }
    Ok(TangentEnumeration { resultant: res, solutions, complex_unresolved })
}

/// Fiber coefficients at `[1, x]`, as polynomials in `x`.
fn fiber_polys(f: &BiForm) -> Vec<UniPoly> {
    f.columns().iter().map(BinaryForm::dehomogenize_first).collect()
}

fn eval_fiber_mod(a: &[UniPoly], y: &UniPoly, z: &UniPoly, p: &UniPoly) -> UniPoly {
    let n = a.len() - 1;
    let mut acc = UniPoly::zero();
    for (j, aj) in a.iter().enumerate() {
        let t = &(aj * &y.pow(j as u32)) * &z.pow((n - j) as u32);
        acc = (&acc + &t).rem(p);
    }
    acc
}

/// The common point of the fibers over a root `x` of `p` as `[y(x), z(x)]`,
/// checked exactly modulo `p`.
fn second_as_polynomial(f: &BiForm, g: &BiForm, p: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let (a, b) = (fiber_polys(f), fiber_polys(g));
    let (y, z) = match (a.len(), b.len()) {
        (2, _) => (-&a[0], a[1].clone()),
        (_, 2) => (-&b[0], b[1].clone()),
        (3, 3) => {
            // b2 f - a2 g = z (l y + k z)
            let l = &(&a[1] * &b[2]) - &(&a[2] * &b[1]);
            let k = &(&a[0] * &b[2]) - &(&a[2] * &b[0]);
            (-&k, l)
        }
        _ => return None,
    };
    let (y, z) = (y.rem(p), z.rem(p));
    if !p.gcd(&y.gcd(&z)).is_constant() {
        return None;
    }
    let ok = eval_fiber_mod(&a, &y, &z, p).is_zero() && eval_fiber_mod(&b, &y, &z, p).is_zero();
    ok.then_some((y, z))
}

/// Root `[y, z]` of the fibers of `f` and `g` over `[1, x]` closest to common.
fn approx_common_root(f: &BiForm, g: &BiForm, x: f64) -> [f64; 2] {
    let fiber = |h: &BiForm| -> Vec<f64> {
        let (m, n) = h.bidegree();
        (0..=n)
            .map(|j| (0..=m).map(|i| h.coeff(i, j).to_complex_f64().0 * x.powi((m - i) as i32)).sum())
            .collect()
    };
    let (a, b) = (fiber(f), fiber(g));
    let eval = |c: &[f64], p: [f64; 2]| -> f64 {
        let n = c.len() - 1;
        c.iter().enumerate().map(|(j, cj)| cj * p[0].powi(j as i32) * p[1].powi((n - j) as i32)).sum()
    };
    let mut cands: Vec<[f64; 2]> = Vec::new();
    for c in [&a, &b] {
        match c.len() {
            2 => cands.push([c[0], -c[1]]),
            3 => {
                // c2 y² + c1 yz + c0 z²
                let (c0, c1, c2) = (c[0], c[1], c[2]);
                if c2.abs() < 1e-300 {
                    cands.push([1.0, 0.0]);
                    cands.push([-c0, c1]);
                } else {
                    let d = (c1 * c1 - 4.0 * c0 * c2).max(0.0).sqrt();
                    cands.push([2.0 * c2, -c1 + d]);
                    cands.push([2.0 * c2, -c1 - d]);
                }
            }
            _ => {}
        }
    }
    cands
        .into_iter()
        .map(|p| {
            let n = p[0].hypot(p[1]).max(1e-300);
            [p[0] / n, p[1] / n]
        })
        .min_by(|p, q| {
            let e = |p: [f64; 2]| eval(&a, p).abs() + eval(&b, p).abs();
            e(*p).total_cmp(&e(*q))
        })
        .unwrap_or([1.0, 0.0])
}

fn match_second(v: [f64; 2], exact: &[(P1, u32)], ivs: &[(UniPoly, Vec<RootInterval>)]) -> Coord {
    let mut best: Option<(f64, Coord)> = None;
    for (p, _) in exact {
        if !p.iter().all(Scalar::is_real) {
            continue;
        }
        let c = Coord::Exact(p.clone());
        let d = p1_dist(c.approx(), v);
        if best.as_ref().map_or(true, |b| d < b.0) {
            best = Some((d, c));
        }
    }
    if v[0].abs() > 1e-12 {
        let z = v[1] / v[0];
        for (poly, list) in ivs {
            for iv in list {
                let lo = Scalar::from_rational(iv.lo.clone()).to_f64().unwrap();
                let hi = Scalar::from_rational(iv.hi.clone()).to_f64().unwrap();
                let d = if z > lo && z <= hi { 0.0 } else { (z - lo).abs().min((z - hi).abs()) };
                if best.as_ref().map_or(true, |b| d < b.0) {
                    best = Some((d, Coord::Isolated { poly: poly.clone(), interval: iv.clone(), approx: z }));
                }
            }
        }
    }
    best.map(|b| b.1).unwrap_or(Coord::Approx(v))
}

fn scaled_to(c: &BiPoly, i: u32, j: u32, target: &Scalar) -> Result<BiPoly> {
    let k = c.coeff(i, j);
    if k.is_zero() {
        return Err(Error::NotInImage(format!("coefficient of x^{i} z^{j} vanishes")));
    }
    Ok(c.scale(&(target / &k)))
}

/// Inverts the affine curve of a sphere.
pub fn recover_sphere_affine(c: &BiPoly, delta: &Scalar) -> Result<Sphere> {
    if delta.is_zero() {
        return Err(Error::NotSkew);
    }
    let d = delta;
    let four = Scalar::from_int(4);
    let one = Scalar::one();
    let c = scaled_to(c, 2, 2, &(&four * &(d * d)))?;
    let p = &c.coeff(2, 1) / &(&four * d);
    let m = -&(&c.coeff(1, 2) / &(&four * d));
    let b = &(&p + &m) / &Scalar::from_int(2);
    let a = &(&m - &p) / &(d + d);
    let nd = &one + &(d * d);
    let k1 = &(&c.coeff(2, 0) - &(&p * &p)) / &nd;
    let k2 = &(&c.coeff(0, 2) - &(&m * &m)) / &nd;
    let cz = &(&k1 - &k2) / &four;
    let r2 = &(&one + &cz).pow(2) - &k1;
    let s = Sphere::new([a, b, cz], r2).map_err(|e| Error::NotInImage(e.to_string()))?;
    if affine_sphere_curve(d, &s)? != c {
        return Err(Error::NotInImage("coefficients are inconsistent with a sphere".into()));
    }
    Ok(s)
}

/// The cubic left after removing `x - x0` from the curve of the sphere
/// tangent to the first line at `x0` with the second line in its tangent
/// plane, centered at parameter `λ` along the normal.
pub fn cubic_curve(delta: &Scalar, lambda: &Scalar, x0: &Scalar) -> BiPoly {
    let (d, l) = (delta, lambda);
    let one = Scalar::one();
    let d2 = d * d;
    let dd = &d2 - &one;
    BiPoly::from_terms([
        (1, 2, d2.clone()),
        (1, 1, &(d * &dd) * l),
        (1, 0, &(&one + &(&d2 * &(&one - &(l * l)))) + &(&(&(d * l) * &(&one + &d2)) * x0)),
        (0, 2, d * &(&(l * &(&one + &d2)) - &(d * x0))),
        (0, 1, &(&(d * &dd) * l) * x0),
        (0, 0, &(&(&Scalar::from_int(4) * d) * l) + &(&(&(&(&d2 * &(l * l)) - &d2) - &one) * x0)),
    ])
}

/// Center `(x0, δx0, 1) + λ(-δ, -1, δx0)` and `r² = λ²(1 + δ² + δ²x0²)`.
pub fn cubic_sphere(delta: &Scalar, lambda: &Scalar, x0: &Scalar) -> Result<Sphere> {
    let d = delta;
    let one = Scalar::one();
    let dx0 = d * x0;
    let center = [x0 - &(lambda * d), &dx0 - lambda, &one + &(lambda * &dx0)];
    let r2 = &(lambda * lambda) * &(&(&one + &(d * d)) + &(&dx0 * &dx0));
    Sphere::new(center, r2)
}

#[derive(Clone, Debug)]
pub struct CubicRecovery {
    pub x0: Scalar,
    pub lambda: Scalar,
    pub sphere: Sphere,
}

/// Recovers `(x0, λ)` and the sphere from the residual cubic.
pub fn recover_sphere_from_cubic(k: &BiPoly, delta: &Scalar) -> Result<CubicRecovery> {
    if delta.is_zero() {
        return Err(Error::NotSkew);
    }
    let d = delta;
    let one = Scalar::one();
    let d2 = d * d;
    let k = scaled_to(k, 1, 2, &d2)?;
    let mut cands: Vec<(Scalar, Scalar)> = Vec::new();
    if d2 != one {
        let lambda = &k.coeff(1, 1) / &(d * &(&d2 - &one));
        let den = &(d * &lambda) * &(&one + &d2);
        if den.is_zero() {
            return Err(Error::NotInImage("λ = 0".into()));
        }
        let x0 = &(&(&k.coeff(1, 0) - &one) - &(&d2 * &(&one - &(&lambda * &lambda)))) / &den;
        cands.push((lambda, x0));
    } else {
        // δ = ±1: the δ = 1 system in λ' = δλ
        let alpha = k.coeff(0, 2);
        let beta = k.coeff(1, 0);
        let disc = &(&(&alpha * &alpha) + &(&Scalar::from_int(3) * &beta)) - &Scalar::from_int(6);
        let root = disc.sqrt().ok_or_else(|| Error::NotInImage("α² + 3β - 6 is not a square".into()))?;
        let three = Scalar::from_int(3);
        let signs: &[i64] = if root.is_zero() { &[1] } else { &[1, -1] };
        for &sg in signs {
            let r = &root * &Scalar::from_int(sg);
            let lp = &(&alpha + &r) / &three;
            let x0 = &(&-&alpha + &(&Scalar::from_int(2) * &r)) / &three;
            cands.push((&lp * d, x0));
        }
    }
    let hits: Vec<(Scalar, Scalar)> =
        cands.into_iter().filter(|(l, x0)| !l.is_zero() && cubic_curve(d, l, x0) == k).collect();
    match hits.as_slice() {
        [(l, x0)] => Ok(CubicRecovery { x0: x0.clone(), lambda: l.clone(), sphere: cubic_sphere(d, l, x0)? }),
        [] => Err(Error::NotInImage("not the residual cubic of a sphere".into())),
        _ => Err(Error::Internal("two sign branches fit the same cubic".into())),
    }
}

/// Spheres with the given projective-mode curve: one, or the two mirror
/// images when both directions are perpendicular to the axis.
pub fn recover_sphere_projective(c: &BiPoly, u: &[Scalar; 3], v: &[Scalar; 3]) -> Result<Vec<Sphere>> {
    check_directions(u, v)?;
    let (u1, u2) = (&u[0], &u[1]);
    let (v1, v3) = (&v[0], &v[2]);
    let two = Scalar::from_int(2);
    let c = scaled_to(c, 2, 2, &(v3 * v3))?;
    let verify = |s: &Sphere| -> Result<bool> { Ok(projective_sphere_curve(u, v, s)? == c) };
    if !u1.is_zero() || !v1.is_zero() {
        let m: Mat = vec![
            vec![-&(&two * &(v3 * v3)), Scalar::zero(), &(&two * v1) * v3],
            vec![Scalar::zero(), &(&two * u2) * v1, &(&two * u1) * v3],
            vec![-&(&two * &(u2 * u2)), &(&two * u1) * u2, Scalar::zero()],
        ];
        let rhs = [c.coeff(1, 2), c.coeff(1, 1), c.coeff(1, 0)];
        let x = linalg::solve(&m, &rhs).ok_or_else(|| Error::Internal("singular recovery system".into()))?;
        let (a, b, cz) = (&x[0], &x[1], &x[2]);
        let bc2 = &(b * b) + &(cz * cz);
        let num = &(&(&(&bc2 * &(u1 * u1)) - &(&(&(&two * a) * b) * &(u1 * u2)))
            + &(&(&(a * a) + &(cz * cz)) * &(u2 * u2)))
            - &c.coeff(0, 0);
        let r2 = &num / &(&(u1 * u1) + &(u2 * u2));
        let s = Sphere::new(x.try_into().expect("three"), r2).map_err(|e| Error::NotInImage(e.to_string()))?;
        if !verify(&s)? {
            return Err(Error::NotInImage("coefficients are inconsistent with a sphere".into()));
        }
        return Ok(vec![s]);
    }
    let a = -&(&c.coeff(1, 0) / &(&two * &(u2 * u2)));
    let a2 = &a * &a;
    let gamma = &(&c.coeff(0, 2) / &(v3 * v3)) - &a2;
    let beta = -&(&c.coeff(0, 1) / &(&(&two * u2) * v3));
    let alpha = &(&c.coeff(0, 0) / &(u2 * u2)) - &a2;
    let disc = &(&alpha - &gamma).pow(2) + &(&Scalar::from_int(4) * &(&beta * &beta));
    let sq = disc.sqrt().ok_or_else(|| Error::ExtensionRequired("radius needs a square root".into()))?;
    let r2 = &(&(&-&alpha - &gamma) + &sq) / &two;
    let b2 = &gamma + &r2;
    let c2 = &alpha + &r2;
    let (b, cz) = if !b2.is_zero() {
        let b = b2.sqrt().ok_or_else(|| Error::ExtensionRequired("center needs a square root".into()))?;
        let cz = &beta / &b;
        (b, cz)
    } else {
        let cz = c2.sqrt().ok_or_else(|| Error::ExtensionRequired("center needs a square root".into()))?;
        (Scalar::zero(), cz)
    };
    let mut out = Vec::new();
    for sg in [1, -1] {
        let k = Scalar::from_int(sg);
        let s = Sphere::new([a.clone(), &b * &k, &cz * &k], r2.clone()).map_err(|e| Error::NotInImage(e.to_string()))?;
        if !verify(&s)? {
            return Err(Error::NotInImage("coefficients are inconsistent with a sphere".into()));
        }
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Outcome of testing whether a (1,1)-component sweeps a hyperboloid of
/// revolution whose axis passes through the center of a tangent sphere.
#[derive(Clone, Debug, Default)]
pub struct AxisCheck {
    pub revolution: bool,
    pub center_on_axis: bool,
    pub tangent: bool,
    /// Point and direction of the axis.
    pub axis: Option<([Scalar; 3], [Scalar; 3])>,
    pub reason: Option<String>,
}

impl AxisCheck {
    pub fn holds(&self) -> bool {
        self.revolution && self.center_on_axis && self.tangent
    }

    fn fail(reason: &str) -> Self {
        AxisCheck { reason: Some(reason.into()), ..Default::default() }
    }
}

fn quadric_row(x: &[Scalar; 4]) -> Vec<Scalar> {
    let mut r = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            let v = &x[i] * &x[j];
            r.push(if i == j { v } else { &v + &v });
        }
    }
    r
}

fn add4(a: &ProjPoint, b: &ProjPoint) -> [Scalar; 4] {
    std::array::from_fn(|i| &a.0[i] + &b.0[i])
}

pub fn hyperboloid_axis_check(pair: &LinePair, g: &BiForm, s: &Sphere) -> AxisCheck {
    if g.bidegree() != (1, 1) {
        return AxisCheck::fail("component is not of bidegree (1,1)");
    }
    let mut rows = vec![
        quadric_row(&pair.a.0),
        quadric_row(&pair.b.0),
        quadric_row(&add4(&pair.a, &pair.b)),
        quadric_row(&pair.c.0),
        quadric_row(&pair.d.0),
        quadric_row(&add4(&pair.c, &pair.d)),
    ];
    let mut rulings = Vec::new();
    for k in 0..12 {
        if rulings.len() == 3 {
            break;
        }
        let u = [Scalar::one(), Scalar::from_int(k)];
        let f = fiber_over_first(g, &u);
        if f.is_zero() {
            continue;
        }
        let Some((v, _)) = f.roots().0.into_iter().next() else { continue };
        let p = pair.point_on_l1(&u);
        let q = pair.point_on_l2(&v);
        rows.push(quadric_row(&add4(&p, &q)));
        rulings.push(transversal_through(pair, &u, &v));
    }
    if rulings.len() < 3 {
        return AxisCheck::fail("too few transversals on the component");
    }
    let ns = linalg::nullspace(&rows);
    if ns.len() != 1 {
        return AxisCheck::fail("degenerate ruled surface");
    }
    let h = &ns[0];
    let mut q: [[Scalar; 4]; 4] = Default::default();
    let mut idx = 0;
    for i in 0..4 {
        for j in i..4 {
            q[i][j] = h[idx].clone();
            q[j][i] = h[idx].clone();
            idx += 1;
        }
    }
    let a: Mat = (1..4).map(|i| (1..4).map(|j| q[i][j].clone()).collect()).collect();
    let lin: Vec<Scalar> = (1..4).map(|i| q[i][0].clone()).collect();
    let Some(ainv) = linalg::inverse(&a) else {
        return AxisCheck::fail("paraboloid: the ruled surface meets the plane at infinity in lines");
    };
    let chi = char_poly3(&a);
    let rep = chi.gcd(&chi.derivative());
    match rep.degree() {
        Some(1) => {}
        Some(2) => return AxisCheck::fail("all eigenvalues equal"),
        _ => return AxisCheck::fail("no repeated eigenvalue: not a surface of revolution"),
    }
    let lambda = -&(&rep.coeff(0) / &rep.coeff(1));
    let shifted: Mat =
        (0..3).map(|i| (0..3).map(|j| if i == j { &a[i][j] - &lambda } else { a[i][j].clone() }).collect()).collect();
    let Some(dir) = (0..3).map(|j| [shifted[0][j].clone(), shifted[1][j].clone(), shifted[2][j].clone()])
        .find(|c| c.iter().any(|x| !x.is_zero()))
    else {
        return AxisCheck::fail("all eigenvalues equal");
    };
    let m = linalg::mat_vec(&ainv, &lin);
    let center: [Scalar; 3] = std::array::from_fn(|i| -&m[i]);
    let center_on_axis = linalg::cross(&sub3(&s.center, &center), &dir).iter().all(Scalar::is_zero);
    let sq = sphere_to_quadric(s);
    let tangent = [&pair.l1, &pair.l2]
        .into_iter()
        .chain(rulings.iter())
        .all(|l| tangency_value(&sq, l).is_zero());
    let reason = match (center_on_axis, tangent) {
        (true, true) => None,
        (false, _) => Some("sphere center is off the axis".into()),
        (true, false) => Some("lines are not tangent to the sphere".into()),
    };
    AxisCheck { revolution: true, center_on_axis, tangent, axis: Some((center, dir)), reason }
}

/// `det(λ I - A)` for a 3x3 matrix.
fn char_poly3(a: &Mat) -> UniPoly {
    let tr = &(&a[0][0] + &a[1][1]) + &a[2][2];
    let m2 = |i: usize, j: usize| &(&a[i][i] * &a[j][j]) - &(&a[i][j] * &a[j][i]);
    let s2 = &(&m2(0, 1) + &m2(0, 2)) + &m2(1, 2);
    let det = linalg::det(a);
    UniPoly::new(vec![-det, s2, -tr, Scalar::one()])
}
