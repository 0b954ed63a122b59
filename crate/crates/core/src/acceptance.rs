//! The acceptance suite: ten exact checks over fixed seeds, shared by the
//! `acceptance` test target and the `selftest` command.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::classify::{classify, verify_classification, Classification};
use crate::geom::{self, circle_geometry, concyclic4, imh_plane_normal, Side};
use crate::implicit::{darboux_test, eval_implicit, implicitize_quotient};
use crate::pythagorean::{gen_tuple, verify_tuple, PythSeed};
use crate::qpoly::{separable_test, QPoly2, RPoly, Var};
use crate::quat::Quat;
use crate::random::{self, Gen};
use crate::rat::{rat, ratio, Rat};
use crate::splitting::split_h11;
use crate::surface::{
    self, builtin_surface, contains_check, eval_surface, iso_curve, iso_line_samples,
    verification_grid, Ambient, SurfaceSpec, BUILTIN_SURFACES,
};
use crate::Error;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} [{:>2}] {}: {}",
            self.id, self.name, self.detail
        )
    }
}

type Check = fn(&mut Gen) -> std::result::Result<String, String>;

const CRITERIA: [(u8, &str, Check); 10] = [
    (1, "Beauregard norm identity", beauregard_identity),
    (2, "splitting round trip", splitting_round_trip),
    (3, "torus pipeline", torus_pipeline),
    (4, "Clifford pipeline", clifford_pipeline),
    (5, "implicitization soundness", implicitization_soundness),
    (6, "two-circle property", two_circle_property),
    (7, "Pythagorean generator", pythagorean_generator),
    (
        8,
        "Euclidean translational round trip",
        euclidean_round_trip,
    ),
    (9, "geometry kernel", geometry_kernel),
    (
        10,
        "Darboux recognizer discrimination",
        darboux_discrimination,
    ),
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.0)
}

/// Runs one criterion; each gets its own generator derived from `seed`.
pub fn run_criterion(id: u8, seed: u64) -> Option<Report> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let mut rng = random::seeded(seed.wrapping_add(u64::from(id)));
    let (passed, detail) = match check(&mut rng) {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(Report {
        id,
        name,
        passed,
        detail,
    })
}

pub fn run_all(seed: u64) -> Vec<Report> {
    criterion_ids()
        .filter_map(|id| run_criterion(id, seed))
        .collect()
}

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    format!("{}: {e}", e.kind())
}

/// Parameter pairs `(a/2, b/2)` in a widening square, skipping poles.
fn surface_samples(spec: &SurfaceSpec, count: usize) -> Vec<(Rat, Rat, Quat)> {
    let mut out = Vec::with_capacity(count);
    'outer: for r in 0i64.. {
        for a in -r..=r {
            for b in -r..=r {
                if a.abs().max(b.abs()) != r {
                    continue;
                }
                let (u, v) = (ratio(a, 2), ratio(b, 2));
                if let Ok(p) = eval_surface(spec, &u, &v) {
                    out.push((u, v, p));
                    if out.len() == count {
                        break 'outer;
                    }
                }
            }
        }
        if r > 40 {
            break;
        }
    }
    out
}

fn beauregard_identity(_: &mut Gen) -> Outcome {
    let q = surface::beauregard();
    let norm = q.norm_sq().map_err(err)?;
    let quartic = |var: usize| {
        let mut e = [0; 4];
        e[var] = 4;
        &RPoly::monomial(2, e, Rat::one()) + &RPoly::one(2)
    };
    let (pu, pv) = (quartic(0), quartic(1));
    let expected = &pu * &pv;
    ensure(norm == expected, || {
        format!("|Q|^2 = {norm}, expected {expected}")
    })?;
    let (p, r) = separable_test(&norm).ok_or("norm square not recognized as separable")?;
    ensure(p == pu && r == pv, || format!("factors {p} and {r}"))?;
    Ok(format!("|Q|^2 = ({pu})({pv})"))
}

fn splitting_round_trip(rng: &mut Gen) -> Outcome {
    let total = 200;
    for n in 0..total {
        let (d, e) = random::split_factors(rng, 2);
        let q = if n % 2 == 0 { &d * &e } else { &e * &d };
        let s = split_h11(&q).map_err(|x| format!("case {n}: {}", err(x)))?;
        ensure(s.product() == q, || format!("case {n}: product differs"))?;
        ensure(
            !s.d().depends_on(Var::U) && !s.e().depends_on(Var::V),
            || format!("case {n}: factors mix variables"),
        )?;
        // q·Q1(u) + Q0(u) must be the constant p
        let q1 = QPoly2::linear(Var::U, q.coef(1, 1), q.coef(0, 1));
        let q0 = QPoly2::linear(Var::U, q.coef(1, 0), q.coef(0, 0));
        let p = &q1.left_mul(&s.witness_q) + &q0;
        ensure(p == QPoly2::constant(s.witness_p.clone()), || {
            format!("case {n}: witness {p} is not the constant {}", s.witness_p)
        })?;
    }
    Ok(format!("{total}/{total} split exactly, witnesses constant"))
}

fn torus_pipeline(_: &mut Gen) -> Outcome {
    let spec = surface::torus();
    let grid = verification_grid(&spec, 7).map_err(err)?;
    ensure(grid.poles.is_empty(), || {
        format!("{} poles on the 7x7 grid", grid.poles.len())
    })?;
    ensure(contains_check(&grid) == Ambient::InImH, || {
        "not in Im H".into()
    })?;
    let cls = classify(&spec).map_err(err)?;
    let Classification::DarbouxCyclide { f, .. } = &cls else {
        return Err(format!("classified as {}", cls.variant_name()));
    };
    ensure(darboux_test(f).is_some(), || {
        "darboux_test rejects F".into()
    })?;
    let SurfaceSpec::Quotient { a, b } = &spec else {
        unreachable!()
    };
    let quartic = implicitize_quotient(a, b).map_err(err)?;
    let samples = surface_samples(&spec, 50);
    ensure(samples.len() == 50, || "fewer than 50 samples".into())?;
    for (u, v, p) in &samples {
        ensure(eval_implicit(&quartic, p).is_zero(), || {
            format!("F != 0 at ({u}, {v})")
        })?;
    }
    Ok(format!(
        "DarbouxCyclide, F = {} vanishes at 50 samples",
        f.display_xyzt()
    ))
}

fn clifford_pipeline(_: &mut Gen) -> Outcome {
    let spec = surface::clifford();
    let grid = verification_grid(&spec, 7).map_err(err)?;
    for gp in &grid.points {
        ensure(gp.point.norm_sq().is_one(), || {
            format!("|Φ|^2 != 1 at ({}, {})", gp.u, gp.v)
        })?;
    }
    let cls = classify(&spec).map_err(err)?;
    ensure(
        matches!(cls, Classification::CliffordTranslational { .. }),
        || format!("classified as {}", cls.variant_name()),
    )?;
    let checked = verify_classification(&spec, &cls, 5).map_err(err)?;
    ensure(checked == 25, || format!("only {checked} points compared"))?;
    Ok(format!(
        "|Φ|^2 = 1 at {} grid points, witness product matches at 25",
        grid.points.len()
    ))
}

fn implicitization_soundness(rng: &mut Gen) -> Outcome {
    let (total, mut degenerate) = (100, 0);
    for n in 0..total {
        let spec = random::quotient_spec(rng, 2);
        let SurfaceSpec::Quotient { a, b } = &spec else {
            unreachable!()
        };
        let quartic = match implicitize_quotient(a, b) {
            Ok(q) => q,
            Err(Error::IdenticallyZeroDeterminant) => {
                degenerate += 1;
                continue;
            }
            Err(e) => return Err(format!("case {n}: {}", err(e))),
        };
        ensure(quartic.f.total_degree() <= 4, || {
            format!("case {n}: degree above 4")
        })?;
        let samples = surface_samples(&spec, 50);
        ensure(samples.len() == 50, || {
            format!("case {n}: fewer than 50 samples")
        })?;
        for (u, v, p) in &samples {
            ensure(eval_implicit(&quartic, p).is_zero(), || {
                format!("case {n}: F != 0 at ({u}, {v})")
            })?;
        }
    }
    ensure(degenerate * 10 <= total, || {
        format!("{degenerate}/{total} identically zero determinants")
    })?;
    Ok(format!(
        "{}/{total} quartics vanish at 50 samples, {degenerate} identically zero determinants",
        total - degenerate
    ))
}

/// Four distinct points on the iso-line `var = value`, cross-checked
/// against the iso-curve.
fn iso_line_points(
    spec: &SurfaceSpec,
    var: Var,
    value: &Rat,
) -> std::result::Result<Option<Vec<Quat>>, String> {
    let Ok(curve) = iso_curve(spec, var, value) else {
        return Ok(None);
    };
    let pts = iso_line_samples(spec, var, value, 4);
    if pts.len() < 4 {
        return Ok(None);
    }
    for (t, p) in &pts {
        if let Ok(c) = curve.eval(t) {
            ensure(&c == p, || {
                format!("iso-curve differs from surface at {var:?} = {value}, t = {t}")
            })?;
        }
    }
    Ok(Some(pts.into_iter().map(|(_, p)| p).collect()))
}

fn two_circle_property(rng: &mut Gen) -> Outcome {
    let mut specs: Vec<(String, SurfaceSpec)> = BUILTIN_SURFACES
        .iter()
        .map(|&n| (n.to_string(), builtin_surface(n).expect("builtin")))
        .collect();
    for n in 0..20 {
        specs.push((format!("random abc #{n}"), random::abc_spec(rng, 2)));
    }
    let mut lines = 0;
    for (name, spec) in &specs {
        for var in [Var::U, Var::V] {
            let mut found = 0;
            for value in geom::ladder().take(30) {
                let Some(pts) = iso_line_points(spec, var, &value)? else {
                    continue;
                };
                let ok = concyclic4([&pts[0], &pts[1], &pts[2], &pts[3]]).map_err(err)?;
                ensure(ok, || format!("{name}: {var:?} = {value} is not a circle"))?;
                found += 1;
                if found == 5 {
                    break;
                }
            }
            ensure(found == 5, || {
                format!("{name}: only {found} usable {var:?}-lines")
            })?;
            lines += found;
        }
    }
    Ok(format!(
        "{lines} iso-lines on {} surfaces are circles",
        specs.len()
    ))
}

fn pythagorean_generator(rng: &mut Gen) -> Outcome {
    let total = 1000;
    for n in 0..total {
        let seed = random::pyth_seed(rng, 2);
        let t = gen_tuple(&seed).map_err(|e| format!("seed {n}: {}", err(e)))?;
        ensure(verify_tuple(&t).is_valid(), || {
            format!("seed {n}: tuple invalid")
        })?;
    }
    let uv = |du, dv, c| RPoly::uv(du, dv, rat(c));
    let one = QPoly2::one();
    let z = RPoly::zero(2);
    let worked = [
        (
            PythSeed {
                a: one.clone(),
                b: one.clone(),
                c: one.clone(),
                d: RPoly::one(2),
            },
            [
                uv(0, 0, 2),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                uv(0, 0, 2),
            ],
        ),
        (
            PythSeed {
                a: QPoly2::u(),
                b: one.clone(),
                c: QPoly2::v(),
                d: RPoly::one(2),
            },
            [
                uv(1, 1, 2),
                z.clone(),
                z.clone(),
                z.clone(),
                &uv(0, 0, 1) - &uv(2, 2, 1),
                &uv(0, 0, 1) + &uv(2, 2, 1),
            ],
        ),
        {
            let norm = &(&uv(2, 0, 1) + &uv(0, 0, 1)) * &(&uv(0, 2, 1) + &uv(0, 0, 1));
            (
                PythSeed {
                    a: &QPoly2::u() + &QPoly2::constant(Quat::i()),
                    b: one.clone(),
                    c: &QPoly2::v() + &QPoly2::constant(Quat::j()),
                    d: RPoly::one(2),
                },
                [
                    uv(1, 1, 2),
                    uv(0, 1, 2),
                    uv(1, 0, 2),
                    uv(0, 0, 2),
                    &uv(0, 0, 1) - &norm,
                    &uv(0, 0, 1) + &norm,
                ],
            )
        },
    ];
    for (n, (seed, expected)) in worked.iter().enumerate() {
        let t = gen_tuple(seed).map_err(err)?;
        ensure(&t.0 == expected, || {
            format!("worked tuple {} differs", n + 1)
        })?;
    }
    Ok(format!(
        "{total}/{total} random tuples valid, 3 worked tuples exact"
    ))
}

fn euclidean_round_trip(rng: &mut Gen) -> Outcome {
    let total = 20;
    for n in 0..total {
        let alpha = random::imh_circle(rng, Side::Left, 2);
        let beta = random::imh_circle(rng, Side::Right, 2);
        let spec = random::encode_euclidean(&alpha, &beta);
        let cls = classify(&spec).map_err(|e| format!("pair {n}: {}", err(e)))?;
        let Classification::EuclideanTranslational {
            alpha: wa,
            beta: wb,
        } = &cls
        else {
            return Err(format!("pair {n}: classified as {}", cls.variant_name()));
        };
        for u in -2..=2 {
            for v in -2..=2 {
                let (u, v) = (rat(u), rat(v));
                let sum = |x: &geom::MoebiusCurve, y: &geom::MoebiusCurve| -> crate::Result<Quat> {
                    Ok(&x.eval(&u)? + &y.eval(&v)?)
                };
                let original = sum(&alpha, &beta).map_err(err)?;
                let witness = sum(wa, wb).map_err(err)?;
                ensure(original == witness, || {
                    format!("pair {n}: mismatch at ({u}, {v})")
                })?;
            }
        }
    }
    Ok(format!("{total}/{total} pairs recovered, 25 points each"))
}

/// `w^2 / |w|^2`, a rational point of `S^3`.
fn unit_quat(rng: &mut Gen) -> Quat {
    let w = random::nonzero_quat(rng, 3);
    (&w * &w).scale(&w.norm_sq().recip())
}

fn geometry_kernel(rng: &mut Gen) -> Outcome {
    for n in 0..100 {
        let q = random::imaginary(rng, 5).scale(&ratio(1, rng_den(rng)));
        let back = geom::stereo_to_imh(&geom::stereo_to_sphere(&q).map_err(err)?).map_err(err)?;
        ensure(back == q, || {
            format!("sample {n}: Im H round trip fails for {q}")
        })?;
        let s = unit_quat(rng);
        if s != Quat::one() {
            let back =
                geom::stereo_to_sphere(&geom::stereo_to_imh(&s).map_err(err)?).map_err(err)?;
            ensure(back == s, || {
                format!("sample {n}: S^3 round trip fails for {s}")
            })?;
        }
        let x = random::quat(rng, 3).scale(&ratio(1, rng_den(rng)));
        if x != Quat::one() {
            let twice =
                geom::inversion_c1_r2(&geom::inversion_c1_r2(&x).map_err(err)?).map_err(err)?;
            ensure(twice == x, || {
                format!("sample {n}: inversion not involutive at {x}")
            })?;
        }
    }
    for n in 0..20 {
        let side = if n % 2 == 0 { Side::Left } else { Side::Right };
        let curve = random::imh_circle(rng, side, 2);
        let normal = imh_plane_normal(&curve).map_err(err)?;
        let g = circle_geometry(&curve).map_err(err)?;
        ensure(
            normal.im_dot(&g.span1).is_zero() && normal.im_dot(&g.span2).is_zero(),
            || format!("circle {n}: normal not orthogonal to spans"),
        )?;
        let pts: Vec<Quat> = geom::ladder()
            .take(8)
            .filter_map(|t| curve.eval(&t).ok())
            .collect();
        for p in &pts[1..] {
            ensure(normal.im_dot(&(p - &pts[0])).is_zero(), || {
                format!("circle {n}: chord not orthogonal to normal")
            })?;
        }
    }
    Ok("stereographic maps and inversion exact on 100 samples, 20 plane normals orthogonal".into())
}

fn rng_den(rng: &mut Gen) -> i64 {
    random::small(rng, 3).abs() + 1
}

fn darboux_discrimination(rng: &mut Gen) -> Outcome {
    let total = 100;
    for n in 0..total {
        let form = random::darboux_form(rng, 3);
        let f = form.reconstruct();
        ensure(darboux_test(&f).as_ref() == Some(&form), || {
            format!("constructed quartic {n} not recovered")
        })?;
        let bad = random::perturb_quartic(rng, &f, 3);
        ensure(darboux_test(&bad).is_none(), || {
            format!("perturbed quartic {n} accepted")
        })?;
    }
    Ok(format!("{}/{} decisions correct", 2 * total, 2 * total))
}
