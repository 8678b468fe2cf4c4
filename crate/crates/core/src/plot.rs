//! Numeric samples of envelope curves, their transversals, ramification
//! lines and tangency points, for plotting.

use crate::classify22::{discriminant_in_yz, double_point};
use crate::envelope::phi;
use crate::poly::{BiForm22, Sturm, P1};
use crate::projgeom::LinePair;
use crate::quadrics::Quadric;
use crate::report::num_str;
use crate::Result;

/// A real point `(x, z)` of a curve, in the affine parameters `x / w` and
/// `z / y`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub quadric: usize,
    pub x: f64,
    pub z: f64,
}

/// A transversal as a point and a unit direction in affine space.
#[derive(Clone, Debug, PartialEq)]
pub struct LineRow {
    pub quadric: usize,
    pub x: f64,
    pub z: f64,
    pub point: [f64; 3],
    pub direction: [f64; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocusPoint {
    pub quadric: usize,
    pub x: f64,
    pub z: f64,
    pub point: [f64; 3],
}

#[derive(Clone, Debug, Default)]
pub struct PlotData {
    pub curves: Vec<CurvePoint>,
    pub tangents: Vec<LineRow>,
    pub ramification: Vec<LineRow>,
    pub locus: Vec<LocusPoint>,
}

struct Frame {
    a: [f64; 4],
    b: [f64; 4],
    c: [f64; 4],
    d: [f64; 4],
}

fn f64s<const N: usize>(v: &[crate::Scalar; N]) -> [f64; N] {
    std::array::from_fn(|i| v[i].to_complex_f64().0)
}

fn comb(p: &[f64; 4], s: f64, q: &[f64; 4], t: f64) -> [f64; 4] {
    std::array::from_fn(|i| s * p[i] + t * q[i])
}

fn affine(p: &[f64; 4]) -> Option<[f64; 3]> {
    let n = p.iter().map(|x| x.abs()).fold(0.0, f64::max);
    (p[0].abs() > 1e-12 * n).then(|| [p[1] / p[0], p[2] / p[0], p[3] / p[0]])
}

fn unit(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 1e-300).then(|| v.map(|x| x / n))
}

/// Point and direction of the line through two homogeneous points.
fn line_row(p: &[f64; 4], r: &[f64; 4]) -> Option<([f64; 3], [f64; 3])> {
    match (affine(p), affine(r)) {
        (Some(x), Some(y)) => Some((x, unit([y[0] - x[0], y[1] - x[1], y[2] - x[2]])?)),
        (Some(x), None) => Some((x, unit([r[1], r[2], r[3]])?)),
        (None, Some(y)) => Some((y, unit([p[1], p[2], p[3]])?)),
        (None, None) => None,
    }
}

fn bilinear(m: &[[f64; 4]; 4], p: &[f64; 4], r: &[f64; 4]) -> f64 {
    (0..4).map(|i| (0..4).map(|j| p[i] * m[i][j] * r[j]).sum::<f64>()).sum()
}

/// Touching point of a tangent line through `p` and `r`.
fn touching_point(m: &[[f64; 4]; 4], p: &[f64; 4], r: &[f64; 4]) -> [f64; 4] {
    let (qp, qr, b) = (bilinear(m, p, p), bilinear(m, r, r), bilinear(m, p, r));
    let t1 = comb(p, qr, r, -b);
    let t2 = comb(p, b, r, -qp);
    let norm = |v: &[f64; 4]| v.iter().map(|x| x * x).sum::<f64>();
    if norm(&t1) >= norm(&t2) {
        t1
    } else {
        t2
    }
}

/// Real roots `z` of `A0 z² + A1 z + A2` at `[w, x] = [1, x]`.
fn fiber_roots(f: &[[f64; 3]; 3], x: f64) -> Vec<f64> {
    let col = |j: usize| (0..3).map(|i| f[i][j] * x.powi((2 - i) as i32)).sum::<f64>();
    let (a2, a1, a0) = (col(2), col(1), col(0));
    let scale = a0.abs().max(a1.abs()).max(a2.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a0.abs() <= 1e-12 * scale {
        return if a1.abs() > 1e-12 * scale { vec![-a2 / a1] } else { Vec::new() };
    }
    let disc = a1 * a1 - 4.0 * a0 * a2;
    if disc < 0.0 {
        return Vec::new();
    }
    let r = disc.sqrt();
    vec![(-a1 - r) / (2.0 * a0), (-a1 + r) / (2.0 * a0)]
}

fn ratio(p: [f64; 2]) -> f64 {
    if p[0] == 0.0 {
        f64::INFINITY
    } else {
        p[1] / p[0]
    }
}

fn ramification_rows(f: &BiForm22, fr: &Frame, idx: usize, out: &mut Vec<LineRow>) {
    let disc = discriminant_in_yz(f);
    if disc.form.is_zero() {
        return;
    }
    let (pts, unresolved) = disc.form.roots();
    let mut params: Vec<([f64; 2], [f64; 2])> = Vec::new();
    for (p, _) in pts {
        if !p.iter().all(crate::Scalar::is_real) {
            continue;
        }
        let Some(q) = double_point(f, &p) else { continue };
        let pf: [f64; 2] = f64s::<2>(&p as &P1);
        params.push((pf, f64s::<2>(&q)));
    }
    let fc = f.c.clone().map(|r| f64s(&r));
    for (poly, _) in unresolved {
        let Ok(st) = Sturm::new(&poly) else { continue };
        for iv in st.isolate() {
            let x = st.refine(&iv, &crate::Rational::new(1.into(), (1u64 << 52).into())).midpoint_f64();
            let col = |j: usize| (0..3).map(|i| fc[i][j] * x.powi((2 - i) as i32)).sum::<f64>();
            let (a2, a1) = (col(2), col(1));
            // double root of a2 y² + a1 yz + a0 z²
            let q = if a2.abs() > 1e-300 { [-a1, 2.0 * a2] } else { [1.0, 0.0] };
            params.push(([1.0, x], q));
        }
    }
    for (u, v) in params {
        let p = comb(&fr.a, u[0], &fr.b, u[1]);
        let r = comb(&fr.c, v[0], &fr.d, v[1]);
        if let Some((point, direction)) = line_row(&p, &r) {
            out.push(LineRow { quadric: idx, x: ratio(u), z: ratio(v), point, direction });
        }
    }
}

/// Samples `n` parameters `x = tan θ` on the first line.
pub fn plot_data(pair: &LinePair, quadrics: &[Quadric], n: usize) -> Result<PlotData> {
    let fr = Frame { a: f64s(&pair.a.0), b: f64s(&pair.b.0), c: f64s(&pair.c.0), d: f64s(&pair.d.0) };
    let mut out = PlotData::default();
    for (idx, q) in quadrics.iter().enumerate() {
        let Some(f) = phi(pair, q)? else { continue };
        let m: [[f64; 4]; 4] = q.matrix().clone().map(|r| f64s(&r));
        let fc = f.c.clone().map(|r| f64s(&r));
        for i in 0..n {
            let th = -std::f64::consts::FRAC_PI_2 + (i as f64 + 0.5) * std::f64::consts::PI / n as f64;
            let x = th.tan();
            for z in fiber_roots(&fc, x) {
                out.curves.push(CurvePoint { quadric: idx, x, z });
                let p = comb(&fr.a, 1.0, &fr.b, x);
                let r = comb(&fr.c, 1.0, &fr.d, z);
                if let Some((point, direction)) = line_row(&p, &r) {
                    out.tangents.push(LineRow { quadric: idx, x, z, point, direction });
                }
                if let Some(t) = affine(&touching_point(&m, &p, &r)) {
                    out.locus.push(LocusPoint { quadric: idx, x, z, point: t });
                }
            }
        }
        ramification_rows(&f, &fr, idx, &mut out.ramification);
    }
    Ok(out)
}

impl PlotData {
    /// `(file name, contents)` for the four CSV files.
    pub fn csv(&self, digits: usize) -> [(&'static str, String); 4] {
        let n = |x: f64| if x.is_infinite() { "inf".to_string() } else { num_str(x, digits) };
        let v3 = |v: &[f64; 3]| v.iter().map(|x| n(*x)).collect::<Vec<_>>().join(",");
        let mut curves = String::from("quadric,x,z\n");
        for r in &self.curves {
            curves += &format!("{},{},{}\n", r.quadric, n(r.x), n(r.z));
        }
        let lines = |rows: &[LineRow]| {
            let mut s = String::from("quadric,x,z,px,py,pz,dx,dy,dz\n");
            for r in rows {
                s += &format!("{},{},{},{},{}\n", r.quadric, n(r.x), n(r.z), v3(&r.point), v3(&r.direction));
            }
            s
        };
        let mut locus = String::from("quadric,x,z,px,py,pz\n");
        for r in &self.locus {
            locus += &format!("{},{},{},{}\n", r.quadric, n(r.x), n(r.z), v3(&r.point));
        }
        [
            ("curves.csv", curves),
            ("tangents.csv", lines(&self.tangents)),
            ("ramification.csv", lines(&self.ramification)),
            ("locus.csv", locus),
        ]
    }
}
