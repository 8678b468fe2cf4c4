#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transtan_core::configurations::Configuration;
use transtan_core::poly::BiForm;
use transtan_core::projgeom::{LinePair, ProjPoint};
use transtan_core::quadrics::Sphere;
use transtan_core::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub fn qr(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

/// Rational with numerator in `-span..=span` and denominator in `1..=den`.
pub fn rand_rat(r: &mut impl Rng, span: i64, den: i64) -> Scalar {
    Scalar::from_ratio(r.gen_range(-span..=span), r.gen_range(1..=den))
}

pub fn rand_nonzero(r: &mut impl Rng, span: i64, den: i64) -> Scalar {
    loop {
        let x = rand_rat(r, span, den);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn affine_point(x: [Scalar; 3]) -> ProjPoint {
    ProjPoint::from_affine(&x)
}

pub fn ints3(v: [i64; 3]) -> ProjPoint {
    ProjPoint::from_affine(&v.map(Scalar::from_int))
}

/// Line through `p` with direction `d`.
pub fn line(p: [Scalar; 3], d: [Scalar; 3]) -> (ProjPoint, ProjPoint) {
    let z = Scalar::zero();
    (ProjPoint::from_affine(&p), ProjPoint([z, d[0].clone(), d[1].clone(), d[2].clone()]))
}

pub fn pair_of(l1: (ProjPoint, ProjPoint), l2: (ProjPoint, ProjPoint)) -> LinePair {
    LinePair::from_points(l1.0, l1.1, l2.0, l2.1).expect("skew lines")
}

pub fn rand_vec3(r: &mut impl Rng, span: i64, den: i64) -> [Scalar; 3] {
    std::array::from_fn(|_| rand_rat(r, span, den))
}

pub fn random_affine_pair(r: &mut impl Rng) -> LinePair {
    loop {
        let p = [0; 4].map(|_| ProjPoint::from_affine(&rand_vec3(r, 4, 2)));
        let [a, b, c, d] = p;
        if let Ok(pair) = LinePair::from_points(a, b, c, d) {
            return pair;
        }
    }
}

pub fn random_sphere(r: &mut impl Rng) -> Sphere {
    let c = rand_vec3(r, 3, 2);
    let r2 = Scalar::from_ratio(r.gen_range(1..=12), r.gen_range(1..=3));
    Sphere::new(c, r2).unwrap()
}

pub fn random_configuration(r: &mut impl Rng) -> Configuration {
    loop {
        let pair = random_affine_pair(r);
        let (s1, s2) = (random_sphere(r), random_sphere(r));
        if let Ok(cfg) = Configuration::new(pair, s1, s2, None) {
            return cfg;
        }
    }
}

/// Two unit spheres tangent at the origin, the first line through the origin,
/// the second in the plane `z = 0`.
pub fn affine1_fixture() -> Configuration {
    let pair = pair_of(line([q(0), q(0), q(0)], [q(1), q(0), q(1)]), line([q(0), q(1), q(0)], [q(1), q(0), q(0)]));
    Configuration::new(
        pair,
        Sphere::from_ints([0, 0, 1], 1).unwrap(),
        Sphere::from_ints([0, 0, -1], 1).unwrap(),
        None,
    )
    .unwrap()
}

/// Two rulings of `x² + y² - z² = 1` and two spheres about the `z`-axis
/// tangent to it.
pub fn affine2_fixture(r2: Scalar) -> Configuration {
    let pair = pair_of(line([q(1), q(0), q(0)], [q(0), q(1), q(1)]), line([q(0), q(1), q(0)], [q(-1), q(0), q(1)]));
    Configuration::new(pair, Sphere::from_ints([0, 0, 0], 1).unwrap(), Sphere::new([q(0), q(0), q(2)], r2).unwrap(), None)
        .unwrap()
}

/// The `x`-axis and the line at infinity of the plane `x + y = 0`, spheres
/// tangent at the origin.
pub fn proj1_fixture(c2: [i64; 3]) -> Configuration {
    let pair = LinePair::from_points(
        ProjPoint::from_ints([1, 0, 0, 0]),
        ProjPoint::from_ints([0, 1, 0, 0]),
        ProjPoint::from_ints([0, 1, -1, 0]),
        ProjPoint::from_ints([0, 0, 0, 1]),
    )
    .unwrap();
    Configuration::new(pair, Sphere::from_ints([1, 1, 0], 2).unwrap(), Sphere::from_ints(c2, 2).unwrap(), None).unwrap()
}

/// Mirror images across the `x`-axis, second line in the plane at infinity.
pub fn proj2_fixture(y: i64) -> Configuration {
    Configuration::new(
        LinePair::canonical(),
        Sphere::from_ints([0, 2, 0], 1).unwrap(),
        Sphere::from_ints([0, y, 0], 1).unwrap(),
        None,
    )
    .unwrap()
}

fn eval_angles(f: &[Vec<f64>], th: f64, ph: f64) -> f64 {
    let (w, x, y, z) = (th.cos(), th.sin(), ph.cos(), ph.sin());
    let m = f.len() - 1;
    let n = f[0].len() - 1;
    let mut acc = 0.0;
    for (i, row) in f.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            acc += c * w.powi(i as i32) * x.powi((m - i) as i32) * y.powi(j as i32) * z.powi((n - j) as i32);
        }
    }
    acc
}

fn as_f64(f: &BiForm) -> Vec<Vec<f64>> {
    let (m, n) = f.bidegree();
    (0..=m).map(|i| (0..=n).map(|j| f.coeff(i, j).to_f64().unwrap()).collect()).collect()
}

type Seg = ([f64; 2], [f64; 2]);

/// Zero-level segments of a bilinear interpolant on the unit cell with
/// corner values `v = [v00, v10, v11, v01]`.
fn cell_segments(v: [f64; 4], centre: f64) -> Vec<Seg> {
    let corners = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let mut pts = Vec::new();
    for e in 0..4 {
        let (a, b) = (v[e], v[(e + 1) % 4]);
        if (a < 0.0) != (b < 0.0) {
            let t = a / (a - b);
            let (p, q) = (corners[e], corners[(e + 1) % 4]);
            pts.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    match pts.len() {
        2 => vec![(pts[0], pts[1])],
        4 => {
            if (centre < 0.0) == (v[0] < 0.0) {
                vec![(pts[0], pts[1]), (pts[2], pts[3])]
            } else {
                vec![(pts[0], pts[3]), (pts[1], pts[2])]
            }
        }
        _ => Vec::new(),
    }
}

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_cross(s: Seg, t: Seg) -> bool {
    let d1 = cross2(t.0, t.1, s.0);
    let d2 = cross2(t.0, t.1, s.1);
    let d3 = cross2(s.0, s.1, t.0);
    let d4 = cross2(s.0, s.1, t.1);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0)
}

fn changes_sign(v: &[f64]) -> bool {
    v.iter().any(|x| *x < 0.0) && v.iter().any(|x| *x >= 0.0)
}

fn count_in_cell(f: &[Vec<f64>], g: &[Vec<f64>], th: f64, ph: f64, h: f64, depth: u32) -> usize {
    let at = |c: &[Vec<f64>], a: f64, b: f64| eval_angles(c, th + a * h, ph + b * h);
    let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    let vf = corners.map(|(a, b)| at(f, a, b));
    let vg = corners.map(|(a, b)| at(g, a, b));
    if !changes_sign(&vf) || !changes_sign(&vg) {
        // a closed oval inside one cell is below the grid resolution
        return 0;
    }
    if depth > 0 {
        let k = 4;
        let s = h / k as f64;
        let mut n = 0;
        for i in 0..k {
            for j in 0..k {
                n += count_in_cell(f, g, th + i as f64 * s, ph + j as f64 * s, s, depth - 1);
            }
        }
        return n;
    }
    let sf = cell_segments(vf, at(f, 0.5, 0.5));
    let sg = cell_segments(vg, at(g, 0.5, 0.5));
    sf.iter().map(|a| sg.iter().filter(|b| segments_cross(*a, **b)).count()).sum()
}

/// Real common zeros of two real forms of even bidegree on `P¹ x P¹`, counted
/// by sign changes on an angular grid over the torus with bisection of the
/// cells where both curves cross.
pub fn grid_real_common_zeros(f: &BiForm, g: &BiForm, n: usize) -> usize {
    let (ff, gg) = (as_f64(f), as_f64(g));
    let h = std::f64::consts::PI / n as f64;
    let off = 0.012_345_678_9;
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            total += count_in_cell(&ff, &gg, off + i as f64 * h, off * 1.7 + j as f64 * h, h, 2);
        }
    }
    total
}
