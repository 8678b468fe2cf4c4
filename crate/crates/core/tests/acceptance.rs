//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p transtan-core --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use rand_chacha::ChaCha8Rng;
use transtan_core::classify22::{
    asymmetric_model, check_exclusion, normal_form, orbit, ramification, NormalFormKind,
};
use transtan_core::configurations::*;
use transtan_core::envelope::{affine_sphere_curve, phi, projective_sphere_curve};
use transtan_core::fiberfamilies::{kl_quadratic_table, Branch, ConicF2};
use transtan_core::poly::{p1_eq, BiForm, BiForm22, BiPoly, Mobius, P1};
use transtan_core::projgeom::{LinePair, ProjPoint};
use transtan_core::quadrics::{quadric_rank, sphere_to_quadric, tangency_value, Quadric, Sphere};
use transtan_core::report::KL_TEMPLATES;
use transtan_core::Scalar;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn f22(entries: &[((usize, usize), Scalar)]) -> BiForm22 {
    let mut f = BiForm22::zero();
    for ((i, j), v) in entries {
        f.c[*i][*j] = v.clone();
    }
    f
}

fn rand_labels(r: &mut ChaCha8Rng) -> [Scalar; 10] {
    std::array::from_fn(|_| rand_rat(r, 9, 5))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let pair = LinePair::canonical();
    let mut r = rng(1);
    for n in 0..200 {
        let v = rand_labels(&mut r);
        let Ok(quad) = Quadric::from_labels(&v) else { continue };
        let [a, b, c, d, e, f, g, h, k, l] = &v;
        let two = q(2);
        // x²z², wxz², w²z², x²yz, wxyz, w²yz, x²y², wxy², w²y²
        let expected = f22(&[
            ((0, 0), e * l - g * g),
            ((1, 0), &two * &(b * l - d * g)),
            ((2, 0), a * l - d * d),
            ((0, 1), &two * &(e * k - g * f)),
            ((1, 1), &two * &(&(&q(2) * &(b * k)) - &(c * g) - d * f)),
            ((2, 1), &two * &(a * k - d * c)),
            ((0, 2), e * h - f * f),
            ((1, 2), &two * &(b * h - c * f)),
            ((2, 2), a * h - c * c),
        ]);
        let got = phi(&pair, &quad).map_err(|e| e.to_string())?.unwrap_or_else(BiForm22::zero);
        ensure!(got == expected, "instance {n}: {got} != {expected}");
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(5), "took {t:?}");
    Ok(format!("200 quadrics, {:.2} s", t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let pair = LinePair::canonical();
    let mut n = 0;
    for y0 in [q(0), qr(1, 2), q(2), q(3)] {
        for sign in [1i64, -1] {
            let e = q(sign);
            let z = Scalar::zero;
            let m = [
                [&(&y0 * &y0) - &q(1), z(), -&y0, z()],
                [z(), q(1), z(), z()],
                [-&y0, z(), q(1), z()],
                [z(), z(), z(), e.clone()],
            ];
            let quad = Quadric::from_matrix(m).map_err(|e| e.to_string())?;
            let got = phi(&pair, &quad).map_err(|e| e.to_string())?.ok_or("phi vanished")?;
            // (x² - w²) y² ± (x² - (1 - y0²) w²) z²
            let expected = f22(&[
                ((0, 2), q(1)),
                ((2, 2), q(-1)),
                ((0, 0), e.clone()),
                ((2, 0), -&(&e * &(&q(1) - &(&y0 * &y0)))),
            ]);
            ensure!(got.is_proportional(&expected), "y0 = {y0}, sign {sign}: {got}");
            n += 1;
        }
    }
    Ok(format!("{n} quadrics, spheres and hyperboloids"))
}

fn rand_mobius(r: &mut ChaCha8Rng) -> Mobius {
    loop {
        let m = [[rand_rat(r, 5, 3), rand_rat(r, 5, 3)], [rand_rat(r, 5, 3), rand_rat(r, 5, 3)]];
        if let Ok(m) = Mobius::new(m) {
            return m;
        }
    }
}

fn same_point_set(a: &[P1], b: &[P1]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| p1_eq(p, q))) && b.iter().all(|p| a.iter().any(|q| p1_eq(p, q)))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut n = 0;
    while n < 50 {
        let (s, t) = (rand_nonzero(&mut r, 12, 5), rand_nonzero(&mut r, 12, 5));
        if check_exclusion(&s, &t).is_err() {
            continue;
        }
        let one = q(1);
        let f = asymmetric_model(&s, &t);
        let ram = ramification(&f).map_err(|e| e.to_string())?;
        let got: Vec<P1> = ram.points.iter().map(|p| p.point.clone()).collect();
        let expected: Vec<P1> = vec![
            [q(0), q(1)],
            [q(1), q(0)],
            [q(1), q(1)],
            [&t * &(&s - &one), &s * &(&t - &one)],
        ];
        ensure!(ram.unresolved.is_empty() && same_point_set(&got, &expected), "(s, t) = ({s}, {t}): ramification {got:?}");
        let (m1, m2) = (rand_mobius(&mut r), rand_mobius(&mut r));
        let g = f.reparameterize(&m1, &m2);
        let nf = normal_form(&g).map_err(|e| format!("(s, t) = ({s}, {t}): {e}"))?;
        let NormalFormKind::Asymmetric { s: s2, t: t2 } = &nf.kind else {
            return Err(format!("(s, t) = ({s}, {t}): recovered a symmetric form"));
        };
        ensure!(orbit(&s, &t).contains(&(s2.clone(), t2.clone())), "({s2}, {t2}) not in the orbit of ({s}, {t})");
        ensure!(
            g.reparameterize(&nf.m1, &nf.m2) == asymmetric_model(s2, t2).scale(&nf.scale),
            "(s, t) = ({s}, {t}): reparameterization does not reach the model"
        );
        n += 1;
    }
    Ok("50 random (s, t), recovered within the ordering orbit".into())
}

fn rand_vec4(r: &mut ChaCha8Rng) -> [Scalar; 4] {
    loop {
        let v: [Scalar; 4] = std::array::from_fn(|_| rand_rat(r, 6, 3));
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn outer(u: &[Scalar; 4], v: &[Scalar; 4], k: &Scalar) -> [[Scalar; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&u[i] * &u[j]) - &(k * &(&v[i] * &v[j]))))
}

fn dot4(u: &[Scalar; 4], p: &ProjPoint) -> Scalar {
    (0..4).fold(Scalar::zero(), |acc, i| &acc + &(&u[i] * &p.0[i]))
}

/// `det [[u·P, u·R], [v·P, v·R]]` for `P` on the first line and `R` on the
/// second: vanishes exactly on transversals meeting the line `u = v = 0`.
fn meeting_form(pair: &LinePair, u: &[Scalar; 4], v: &[Scalar; 4]) -> BiForm {
    let first = [&pair.b, &pair.a];
    let second = [&pair.d, &pair.c];
    BiForm::from_fn(1, 1, |i, j| {
        let (p, r) = (first[i], second[j]);
        &(&dot4(u, p) * &dot4(v, r)) - &(&dot4(u, r) * &dot4(v, p))
    })
}

fn criterion_4() -> Outcome {
    let pair = LinePair::canonical();
    let mut r = rng(4);
    let zero = Scalar::zero;
    let phi_of = |m| -> Result<Option<BiForm22>, String> {
        let quad = Quadric::from_matrix(m).map_err(|e| e.to_string())?;
        phi(&pair, &quad).map_err(|e| e.to_string())
    };
    let (mut rank1, mut sing1, mut sing2, mut other) = (0, 0, 0, 0);
    while rank1 < 50 {
        let v = rand_vec4(&mut r);
        let m = outer(&v, &v, &q(-1)).map(|row| row.map(|x| &x / &q(2)));
        ensure!(phi_of(m)?.is_none(), "rank-1 quadric with nonzero phi");
        rank1 += 1;
    }
    for (through, count) in [([2usize, 3], &mut sing1), ([0, 1], &mut sing2)] {
        while *count < 50 {
            // planes containing span(e_i, e_j) with i, j not in `through`
            let mut u = rand_vec4(&mut r);
            let mut v = rand_vec4(&mut r);
            for i in [0, 1, 2, 3].into_iter().filter(|i| !through.contains(i)) {
                u[i] = zero();
                v[i] = zero();
            }
            let k = if *count % 2 == 0 { q(1) } else { q(-3) };
            let quad = Quadric::from_matrix(outer(&u, &v, &k)).map_err(|e| e.to_string())?;
            if quadric_rank(&quad) != 2 {
                continue;
            }
            ensure!(phi(&pair, &quad).map_err(|e| e.to_string())?.is_none(), "singular along a line of the pair, nonzero phi");
            *count += 1;
        }
    }
    while other < 50 {
        let (u, v) = (rand_vec4(&mut r), rand_vec4(&mut r));
        // u u^T - k v v^T; k = 2 gives planes conjugate over Q(√2)
        let k = if other % 2 == 0 { q(1) } else { q(2) };
        let quad = Quadric::from_matrix(outer(&u, &v, &k)).map_err(|e| e.to_string())?;
        if quadric_rank(&quad) != 2 {
            continue;
        }
        let g = meeting_form(&pair, &u, &v);
        if g.is_zero() || g.content_first().degree() > 0 || g.content_second().degree() > 0 {
            // the singular line meets or equals a line of the pair
            continue;
        }
        let f = phi(&pair, &quad).map_err(|e| e.to_string())?.ok_or("generic rank-2 quadric with phi = 0")?;
        ensure!(f.as_biform().is_proportional(&g.mul(&g)), "phi is not the square of the meeting form");
        other += 1;
    }
    Ok(format!("{rank1} rank-1, {sing1} + {sing2} singular along a line of the pair, {other} other rank-2"))
}

/// The generators of the second fiber component, as printed.
fn generators(s: &Scalar, t: &Scalar, p: &[Scalar; 10]) -> Vec<Scalar> {
    let [a, b, c, d, e, f, g, h, k, l] = p;
    let (sm, tm, two) = (s - &q(1), t - &q(1), q(2));
    vec![
        &(&sm * &(k * k)) - &(&(&two * k) * l) - l * l,
        &(&sm * h) + &(&(&two * &tm) * k) + &tm * l,
        f * l - g * k,
        e * l - g * g,
        &(d + f) + g,
        c.clone(),
        &(&two * b) + e,
        a.clone(),
        &(&(&sm * f) * k) - &(&(&two * g) * k) - g * l,
        &(&sm * &(f * f)) - &(&(&two * f) * g) - g * g,
        e * k - f * g,
    ]
}

/// The point p, read without the trailing exponent.
fn point_p(s: &Scalar, t: &Scalar, sigma: &Scalar) -> [Scalar; 10] {
    let (sm, tm, sp) = (s - &q(1), t - &q(1), sigma + &q(1));
    [
        q(0),
        -&(&sp * &sm),
        q(0),
        &q(-2) * &(sigma * &sm),
        &q(2) * &(&sp * &sm),
        &q(-2) * &sm,
        &q(2) * &(&sp * &sm),
        &(&q(4) * &tm) - &(&q(2) * &(&tm * &sp)),
        &q(-2) * &sm,
        &q(2) * &(&sp * &sm),
    ]
}

fn excess(v: &[Scalar; 10], quad: &Quadric) -> bool {
    let zero = |ix: &[usize]| ix.iter().all(|&i| v[i].is_zero());
    quadric_rank(quad) <= 1 || zero(&[0, 1, 2, 3, 4, 5, 6]) || zero(&[2, 3, 5, 6, 7, 8, 9])
}

const KL_PRINTED: [&str; 3] = [
    "(-s^2+2*s-1)*k^2+(2*s-2)*k*l+(s*t-1)*l^2",
    "(s-1)*k^2-2*k*l-l^2",
    "(s^2-2*s+1)*k^2+(-2*s+2)*k*l+(-t+1)*l^2",
];

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let pair = LinePair::canonical();
    ensure!(KL_TEMPLATES == KL_PRINTED, "stored templates differ from the printed table");
    let mut checked = 0;
    for (s, t) in [(q(4), q(9)), (q(9), q(25)), (qr(1, 4), qr(1, 9))] {
        let one = q(1);
        let target = f22(&[
            ((2, 0), s.clone()),
            ((1, 0), &one - &s),
            ((1, 1), q(-2)),
            ((1, 2), &one - &t),
            ((0, 2), t.clone()),
        ]);
        for branch in [Branch::Plus, Branch::Minus] {
            let conic = ConicF2::build(&s, &t, branch).map_err(|e| e.to_string())?;
            ensure!(&conic.sigma * &conic.sigma == s, "sigma is not a square root of s");
            let mut nondeg = 0;
            for i in 0..25i64 {
                let p = conic.point(&one, &qr(i - 12, 3));
                ensure!(generators(&s, &t, &p).iter().all(Scalar::is_zero), "sample {i} off the component");
                let quad = Quadric::from_labels(&p).map_err(|e| e.to_string())?;
                if excess(&p, &quad) {
                    continue;
                }
                nondeg += 1;
                let f = phi(&pair, &quad).map_err(|e| e.to_string())?.ok_or("phi vanished on a sample")?;
                ensure!(f.is_proportional(&target), "(s, t) = ({s}, {t}), sample {i} is not a fiber witness");
            }
            ensure!(nondeg >= 23, "only {nondeg} non-degenerate samples");
            let p = point_p(&s, &t, &conic.sigma);
            ensure!(generators(&s, &t, &p).iter().all(Scalar::is_zero), "point p off the component");
            let quad = Quadric::from_labels(&p).map_err(|e| e.to_string())?;
            let f = phi(&pair, &quad).map_err(|e| e.to_string())?.unwrap_or_else(BiForm22::zero);
            let sg = &conic.sigma;
            let w2z2 = &(&(&q(-4) * &s) * &(sg - &one).pow(2)) * &(sg + &one).pow(2);
            ensure!(f.c[2][0] == w2z2, "w²z² coefficient {} != {w2z2}", f.c[2][0]);
            checked += 1;
        }
        let table = kl_quadratic_table(&s, &t);
        let sm = &s - &one;
        let printed = [
            [-&(&s * &s) + &(&q(2) * &s) - one.clone(), &q(2) * &s - q(2), &(&s * &t) - &one],
            [sm.clone(), q(-2), q(-1)],
            [&(&s * &s) - &(&q(2) * &s) + one.clone(), &q(-2) * &s + q(2), &q(1) - &t],
        ];
        for (k, p) in table.quadratics.iter().zip(&printed) {
            ensure!(&k.coeffs == p, "(k, l) quadratic {:?} != printed {:?}", k.coeffs, p);
            ensure!(k.roots.is_some(), "(k, l) quadratic does not split at ({s}, {t})");
        }
        // (s-1)k² - 2kl - l² = ((√s+1)k + l)((√s-1)k - l)
        let sg = s.sqrt().ok_or("s is not a square")?;
        for (k, l) in [(q(1), q(0)), (q(0), q(1)), (q(2), q(-3)), (qr(1, 2), q(5))] {
            let prod = &(&(&(&sg + &one) * &k) + &l) * &(&(&(&sg - &one) * &k) - &l);
            ensure!(table.quadratics[1].eval(&k, &l) == prod, "second quadratic does not factor as printed");
        }
    }
    let el = start.elapsed();
    ensure!(el < Duration::from_secs(30), "took {el:?}");
    Ok(format!("{checked} branch conics, 25 samples each, {:.2} s", el.as_secs_f64()))
}

fn tangent_members(cfg: &Configuration, rep: &ClassificationReport) -> Result<usize, String> {
    let comp = rep.components.iter().find(|c| c.real && c.case.is_some()).ok_or("no tagged real component")?;
    let lines = component_lines(&cfg.pair, &comp.form, 20);
    ensure!(lines.len() == 20, "only {} sampled lines", lines.len());
    for l in &lines {
        for s in &cfg.spheres {
            ensure!(tangency_value(&sphere_to_quadric(s), l).is_zero(), "sampled line not tangent to {s}");
        }
    }
    Ok(lines.len())
}

fn infinite_with(cfg: &Configuration, tag: CaseTag) -> Result<usize, String> {
    let rep = classify_configuration(cfg).map_err(|e| e.to_string())?;
    ensure!(rep.verdict == Verdict::Infinite, "{} fixture is {}", tag.name(), rep.verdict);
    ensure!(rep.cases() == vec![tag], "expected {}, got {:?}", tag.name(), rep.cases());
    tangent_members(cfg, &rep)
}

fn finite(cfg: &Configuration) -> Result<(), String> {
    let rep = classify_configuration(cfg).map_err(|e| e.to_string())?;
    ensure!(rep.verdict == Verdict::Finite, "perturbed fixture is {}", rep.verdict);
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    infinite_with(&affine1_fixture(), CaseTag::Affine1)?;
    infinite_with(&affine2_fixture(q(3)), CaseTag::Affine2)?;
    let eps = rand_nonzero(&mut r, 3, 50);
    let mut c = affine1_fixture();
    c.spheres[1].center[2] = &c.spheres[1].center[2] + &eps;
    finite(&c)?;
    let eps2 = rand_nonzero(&mut r, 3, 50);
    finite(&affine2_fixture(&q(3) + &eps2))?;
    Ok(format!("affine-1 and affine-2 INFINITE with 20 tangent members each; perturbations by {eps}, {eps2} FINITE"))
}

fn criterion_7() -> Outcome {
    infinite_with(&proj2_fixture(-2), CaseTag::Proj2)?;
    infinite_with(&proj1_fixture([-1, -1, 0]), CaseTag::Proj1)?;
    finite(&proj2_fixture(-3))?;
    finite(&proj1_fixture([-1, -2, 0]))?;
    let mut r = rng(7);
    for n in 0..20 {
        let u = [q(0), rand_nonzero(&mut r, 5, 3), q(0)];
        let v = [q(0), q(0), rand_nonzero(&mut r, 5, 3)];
        let s = loop {
            let s = random_sphere(&mut r);
            if !s.center[1].is_zero() || !s.center[2].is_zero() {
                break s;
            }
        };
        let mirror = Sphere::new([s.center[0].clone(), -&s.center[1], -&s.center[2]], s.r2.clone()).unwrap();
        let c = projective_sphere_curve(&u, &v, &s).map_err(|e| e.to_string())?;
        let got = recover_sphere_projective(&c.scale(&rand_nonzero(&mut r, 7, 4)), &u, &v).map_err(|e| e.to_string())?;
        ensure!(got.len() == 2 && got.contains(&s) && got.contains(&mirror), "instance {n}: {got:?}");
    }
    Ok("projective-2 and projective-1 INFINITE; 20 mirror recoveries return both candidates".into())
}

fn rand_delta(r: &mut ChaCha8Rng, i: usize) -> Scalar {
    match i % 4 {
        0 => q(1),
        1 => q(-1),
        _ => loop {
            let d = rand_nonzero(r, 7, 4);
            if d != q(1) && d != q(-1) {
                break d;
            }
        },
    }
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    for i in 0..100 {
        let d = rand_delta(&mut r, i);
        let s = random_sphere(&mut r);
        let c = affine_sphere_curve(&d, &s).map_err(|e| e.to_string())?.scale(&rand_nonzero(&mut r, 9, 5));
        let got = recover_sphere_affine(&c, &d).map_err(|e| format!("affine {i}, δ = {d}: {e}"))?;
        ensure!(got == s, "affine {i}: recovered {got}, expected {s}");
    }
    let mut boundary = 0;
    for i in 0..100 {
        let d = rand_delta(&mut r, i);
        let lambda = rand_nonzero(&mut r, 6, 4);
        // x0 = -δλ puts |δ| = 1 on α² + 3β - 6 = 0
        let x0 = if i % 8 < 2 { -&(&d * &lambda) } else { rand_rat(&mut r, 6, 4) };
        let s = cubic_sphere(&d, &lambda, &x0).map_err(|e| e.to_string())?;
        let p = [x0.clone(), &d * &x0, q(1)];
        ensure!(s.power(&p).is_zero(), "cubic {i}: sphere does not touch the first line at x0");
        let full = affine_sphere_curve(&d, &s).map_err(|e| e.to_string())?;
        let lin = BiPoly::from_terms([(1, 0, q(1)), (0, 0, -&x0)]);
        let cubic = full.div_exact(&lin).ok_or("x - x0 does not divide the curve")?;
        let k = cubic.scale(&rand_nonzero(&mut r, 9, 5));
        if d == q(1) || d == q(-1) {
            let k2 = k.scale(&(&(&d * &d) / &k.coeff(1, 2)));
            let alpha = k2.coeff(0, 2);
            let disc = &(&(&alpha * &alpha) + &(&q(3) * &k2.coeff(1, 0))) - &q(6);
            if disc.is_zero() {
                boundary += 1;
            }
        }
        let got = recover_sphere_from_cubic(&k, &d).map_err(|e| format!("cubic {i}, δ = {d}, λ = {lambda}, x0 = {x0}: {e}"))?;
        ensure!(got.lambda == lambda && got.x0 == x0 && got.sphere == s, "cubic {i}: wrong recovery");
    }
    ensure!(boundary > 0, "no boundary instance was hit");
    Ok(format!("100 affine and 100 cubic roundtrips, {boundary} on α² + 3β - 6 = 0"))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let (mut real, mut max) = (0, 0);
    for n in 0..25 {
        let cfg = random_configuration(&mut r);
        let rep = classify_configuration(&cfg).map_err(|e| e.to_string())?;
        ensure!(rep.verdict == Verdict::Finite, "configuration {n} is {}", rep.verdict);
        let t = rep.tangents.as_ref().ok_or("missing enumeration")?;
        let total = t.total_multiplicity();
        ensure!(total as usize == t.resultant.degree() && total <= 8, "configuration {n}: multiplicity {total}, resultant degree {}", t.resultant.degree());
        ensure!(t.solutions.iter().all(|s| s.certified), "configuration {n}: uncertified solution");
        let [c1, c2] = &rep.curves;
        for s in &t.solutions {
            if let (Coord::Exact(u), Coord::Exact(v)) = (&s.first, &s.second) {
                ensure!(c1.eval(u, v).is_zero() && c2.eval(u, v).is_zero(), "configuration {n}: exact solution off a curve");
            }
        }
        let grid = grid_real_common_zeros(&c1.as_biform(), &c2.as_biform(), 200);
        ensure!(t.real_count() == grid, "configuration {n}: {} real solutions, grid oracle {grid}", t.real_count());
        real += grid;
        max = max.max(total);
    }
    Ok(format!("25 configurations, max multiplicity {max}, {real} real tangents agree with the grid oracle"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {n}: PASS ({msg}) [{t:.2} s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({msg}) [{t:.2} s]");
            }
        }
    }
    println!(
        "criterion 10: NOTE the Groebner dimension and multiplicity counts of the fiber are not recomputed; \
         the fiber statement is checked only at the parameters of criterion 5"
    );
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

