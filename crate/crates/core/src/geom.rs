//! Inversive geometry in the quaternions: Möbius-parametrized circles,
//! their metric data, stereographic projection and incidence predicates.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::quat::Quat;
use crate::rat::{rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `u -> (a·u + b)(c·u + d)^-1`
    Left,
    /// `u -> (c·u + d)^-1 (a·u + b)`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoebiusCurve {
    pub a: Quat,
    pub b: Quat,
    pub c: Quat,
    pub d: Quat,
    pub side: Side,
}

impl MoebiusCurve {
    pub fn new(a: Quat, b: Quat, c: Quat, d: Quat, side: Side) -> Self {
        MoebiusCurve { a, b, c, d, side }
    }

    pub fn left(a: Quat, b: Quat, c: Quat, d: Quat) -> Self {
        MoebiusCurve::new(a, b, c, d, Side::Left)
    }

    pub fn right(a: Quat, b: Quat, c: Quat, d: Quat) -> Self {
        MoebiusCurve::new(a, b, c, d, Side::Right)
    }

    /// Straight line `p + t·dir`.
    pub fn line(p: Quat, dir: Quat) -> Self {
        MoebiusCurve::left(dir, p, Quat::zero(), Quat::one())
    }

    pub fn validate(&self) -> Result<()> {
        if [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|q| q.is_zero())
        {
            return Err(Error::DegenerateInput(
                "all curve coefficients vanish".into(),
            ));
        }
        Ok(())
    }

    pub fn eval(&self, u: &Rat) -> Result<Quat> {
        curve_eval(self, u)
    }

    /// Reparametrization `t -> γ(t + s)`.
    pub fn shift_param(&self, s: &Rat) -> MoebiusCurve {
        MoebiusCurve {
            a: self.a.clone(),
            b: &self.a.scale(s) + &self.b,
            c: self.c.clone(),
            d: &self.c.scale(s) + &self.d,
            side: self.side,
        }
    }

    /// The curve `t -> l·γ(t)·r` in the same side convention.
    pub fn absorb(&self, l: &Quat, r: &Quat) -> Result<MoebiusCurve> {
        Ok(match self.side {
            Side::Left => {
                let ri = r.inv()?;
                MoebiusCurve::left(l * &self.a, l * &self.b, &ri * &self.c, &ri * &self.d)
            }
            Side::Right => {
                let li = l.inv()?;
                MoebiusCurve::right(&self.a * r, &self.b * r, &self.c * &li, &self.d * &li)
            }
        })
    }

    /// Image under `s -> (s+1)(s-1)^-1`, the map from `S^3` to `Im H`.
    ///
    /// `s ± 1` commute, so a left curve `N·D^-1` goes to `(N+D)(N-D)^-1`
    /// and a right curve `D^-1·N` to `(N-D)^-1 (N+D)`.
    pub fn stereo_to_imh(&self) -> Result<MoebiusCurve> {
        let c = &self.a - &self.c;
        let d = &self.b - &self.d;
        if c.is_zero() && d.is_zero() {
            return Err(Error::DomainViolation("curve is constantly 1".into()));
        }
        Ok(MoebiusCurve::new(
            &self.a + &self.c,
            &self.b + &self.d,
            c,
            d,
            self.side,
        ))
    }
}

/// Fixed parameter ladder `0, 1, -1, 2, -2, ...`.
pub fn ladder() -> impl Iterator<Item = Rat> {
    (0..).map(|n: i64| {
        if n % 2 == 1 {
            rat((n + 1) / 2)
        } else {
            rat(-n / 2)
        }
    })
}

pub fn curve_eval(g: &MoebiusCurve, u: &Rat) -> Result<Quat> {
    let den = &g.c.scale(u) + &g.d;
    if den.is_zero() {
        return Err(Error::pole_u(u));
    }
    let num = &g.a.scale(u) + &g.b;
    let di = den.inv()?;
    Ok(match g.side {
        Side::Left => num * di,
        Side::Right => di * num,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    Circle,
    Line,
    Point,
}

/// `γ(u) = f + g·(u+h)^-1` (left) or `f + (u+h)^-1·g` (right).
///
/// For lines `f` is a point on the line and `g` its direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDecomposition {
    pub kind: CurveKind,
    pub f: Quat,
    pub g: Quat,
    pub h: Quat,
}

pub fn decompose(curve: &MoebiusCurve) -> Result<CurveDecomposition> {
    let MoebiusCurve { a, b, c, d, side } = curve;
    if c.is_zero() {
        if d.is_zero() {
            return Err(Error::InvalidCurve);
        }
        let di = d.inv()?;
        let (f, g) = match side {
            Side::Left => (b * &di, a * &di),
            Side::Right => (&di * b, &di * a),
        };
        let kind = if g.is_zero() {
            CurveKind::Point
        } else {
            CurveKind::Line
        };
        return Ok(CurveDecomposition {
            kind,
            f,
            g,
            h: Quat::zero(),
        });
    }
    let ci = c.inv()?;
    let (f, g, h) = match side {
        Side::Left => {
            let f = a * &ci;
            let g = (b - &(&f * d)) * &ci;
            (f, g, d * &ci)
        }
        Side::Right => {
            let f = &ci * a;
            let g = &ci * &(b - &(d * &f));
            (f, g, &ci * d)
        }
    };
    let kind = if g.is_zero() {
        CurveKind::Point
    } else if h.is_real() {
        CurveKind::Line
    } else {
        CurveKind::Circle
    };
    Ok(CurveDecomposition { kind, f, g, h })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleGeometry {
    pub center: Quat,
    #[serde(with = "crate::rat::serde_rat")]
    pub radius_sq: Rat,
    pub span1: Quat,
    pub span2: Quat,
}

fn non_pole_samples(curve: &MoebiusCurve, n: usize) -> Vec<(Rat, Quat)> {
    ladder()
        .filter_map(|t| curve_eval(curve, &t).ok().map(|p| (t, p)))
        .take(n)
        .collect()
}

fn kind_name(kind: CurveKind) -> &'static str {
    match kind {
        CurveKind::Circle => "circle",
        CurveKind::Line => "line",
        CurveKind::Point => "point",
    }
}

pub fn circle_geometry(curve: &MoebiusCurve) -> Result<CircleGeometry> {
    let dec = decompose(curve)?;
    if dec.kind != CurveKind::Circle {
        return Err(Error::NotCircle(kind_name(dec.kind)));
    }
    let pts: Vec<Quat> = non_pole_samples(curve, 3)
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    circumcircle(&pts[0], &pts[1], &pts[2])
}

/// Circle through three sampled parameters of a circle-kind curve.
pub fn circle_geometry_at(curve: &MoebiusCurve, params: [&Rat; 3]) -> Result<CircleGeometry> {
    let dec = decompose(curve)?;
    if dec.kind != CurveKind::Circle {
        return Err(Error::NotCircle(kind_name(dec.kind)));
    }
    let p: Vec<Quat> = params
        .iter()
        .map(|t| curve_eval(curve, t))
        .collect::<Result<_>>()?;
    circumcircle(&p[0], &p[1], &p[2])
}

/// Exact circumcircle of three points of `R^4`.
pub fn circumcircle(p1: &Quat, p2: &Quat, p3: &Quat) -> Result<CircleGeometry> {
    let e1 = p2 - p1;
    let e2 = p3 - p1;
    let (g11, g12, g22) = (e1.dot(&e1), e1.dot(&e2), e2.dot(&e2));
    let two = rat(2);
    let m = vec![
        vec![&two * &g11, &two * &g12],
        vec![&two * &g12, &two * &g22],
    ];
    let st = linalg::solve(&m, &[g11.clone(), g22.clone()])
        .ok_or_else(|| Error::DegenerateInput("sample points are collinear".into()))?;
    let center = p1 + &(&e1.scale(&st[0]) + &e2.scale(&st[1]));
    let radius_sq = (p1 - &center).norm_sq();
    Ok(CircleGeometry {
        center,
        radius_sq,
        span1: e1,
        span2: e2,
    })
}

/// Normal `Im h` of the plane carrying a circle in `Im H`.
pub fn imh_plane_normal(curve: &MoebiusCurve) -> Result<Quat> {
    if non_pole_samples(curve, 5)
        .iter()
        .any(|(_, p)| !p.re.is_zero())
    {
        return Err(Error::NotInImH);
    }
    let dec = decompose(curve)?;
    match dec.kind {
        CurveKind::Circle => Ok(dec.h.im_part()),
        CurveKind::Line => Err(Error::LineCase),
        CurveKind::Point => Err(Error::NotCircle("point")),
    }
}

/// `q -> (q+1)(q-1)^-1`, from `Im H` onto `S^3` minus `1`.
pub fn stereo_to_sphere(q: &Quat) -> Result<Quat> {
    if !q.re.is_zero() {
        return Err(Error::DomainViolation(format!(
            "{q} is not purely imaginary"
        )));
    }
    let one = Quat::one();
    Ok((q + &one) * (q - &one).inv()?)
}

/// `s -> (s-1)^-1 (s+1)`, inverse of [`stereo_to_sphere`].
pub fn stereo_to_imh(s: &Quat) -> Result<Quat> {
    let one = Quat::one();
    if !s.norm_sq().is_one() || s == &one {
        return Err(Error::DomainViolation(format!(
            "{s} is not a unit quaternion other than 1"
        )));
    }
    Ok((s - &one).inv()? * (s + &one))
}

/// Inversion in the sphere of radius `sqrt 2` centred at `1`.
pub fn inversion_c1_r2(x: &Quat) -> Result<Quat> {
    let one = Quat::one();
    let w = x - &one;
    if w.is_zero() {
        return Err(Error::CenterPole);
    }
    let s = rat(2) / w.norm_sq();
    Ok(&one + &w.scale(&s))
}

fn lifted_rank(points: &[&Quat]) -> Result<usize> {
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoints);
        }
    }
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            let mut r = vec![Rat::one()];
            r.extend(p.components().into_iter().cloned());
            r.push(p.norm_sq());
            r
        })
        .collect();
    Ok(linalg::rank(&rows))
}

/// Whether four distinct points lie on one circle or line.
pub fn concyclic4(p: [&Quat; 4]) -> Result<bool> {
    Ok(lifted_rank(&p)? <= 3)
}

/// Whether five distinct points lie on one 2-sphere or plane.
pub fn cospheric5(p: [&Quat; 5]) -> Result<bool> {
    Ok(lifted_rank(&p)? <= 4)
}

/// Left Möbius curve through sampled points, or `None` when no curve of
/// that form fits all of them.
///
/// The first three samples determine the curve through the linear system
/// `γ_k·(c·u_k + d) = a·u_k + b` with `c = 1` (or `d = 1` when that fails);
/// the remaining samples are checked exactly.
pub fn fit_left_moebius(samples: &[(Rat, Quat)]) -> Option<MoebiusCurve> {
    if samples.len() < 3 {
        return None;
    }
    let fit = |normalize_c: bool| -> Option<MoebiusCurve> {
        // unknowns: a (0..4), b (4..8), free denominator coefficient (8..12)
        let mut rows = Vec::with_capacity(12);
        let mut rhs = Vec::with_capacity(12);
        for (t, g) in &samples[..3] {
            for comp in 0..4 {
                let mut row = vec![Rat::zero(); 12];
                for k in 0..4 {
                    let e = Quat::basis(k);
                    row[k] = e.scale(t).components()[comp].clone();
                    row[4 + k] = e.components()[comp].clone();
                    // g·e·(u or 1) is subtracted on the left-hand side
                    let ge = g * &e;
                    let factor = if normalize_c { Rat::one() } else { t.clone() };
                    row[8 + k] = -(ge.components()[comp] * &factor);
                }
                let known = if normalize_c { g.scale(t) } else { g.clone() };
                rows.push(row);
                rhs.push(known.components()[comp].clone());
            }
        }
        let x = linalg::solve(&rows, &rhs)?;
        let q = |o: usize| {
            Quat::new(
                x[o].clone(),
                x[o + 1].clone(),
                x[o + 2].clone(),
                x[o + 3].clone(),
            )
        };
        let (c, d) = if normalize_c {
            (Quat::one(), q(8))
        } else {
            (q(8), Quat::one())
        };
        Some(MoebiusCurve::left(q(0), q(4), c, d))
    };
    let candidate = fit(true).or_else(|| fit(false))?;
    samples
        .iter()
        .all(|(t, g)| curve_eval(&candidate, t).as_ref() == Ok(g))
        .then_some(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;
    use proptest::prelude::*;

    fn q(c: [i64; 4]) -> Quat {
        Quat::int(c[0], c[1], c[2], c[3])
    }

    #[test]
    fn ladder_order() {
        let first: Vec<Rat> = ladder().take(5).collect();
        assert_eq!(first, vec![rat(0), rat(1), rat(-1), rat(2), rat(-2)]);
    }

    #[test]
    fn evaluation_examples() {
        let id = MoebiusCurve::left(Quat::one(), Quat::zero(), Quat::zero(), Quat::one());
        assert_eq!(
            curve_eval(&id, &ratio(3, 7)).unwrap(),
            Quat::real(ratio(3, 7))
        );
        let line = MoebiusCurve::left(Quat::i(), Quat::j(), Quat::zero(), Quat::one());
        assert_eq!(curve_eval(&line, &rat(2)).unwrap(), q([0, 2, 1, 0]));
        let c = MoebiusCurve::left(Quat::zero(), Quat::i(), Quat::one(), Quat::k());
        assert_eq!(curve_eval(&c, &rat(0)).unwrap(), Quat::j());
        let pole = MoebiusCurve::left(
            Quat::one(),
            Quat::zero(),
            Quat::one(),
            Quat::int(-2, 0, 0, 0),
        );
        assert!(matches!(
            curve_eval(&pole, &rat(2)),
            Err(Error::PoleAt { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let id = MoebiusCurve::left(Quat::one(), Quat::zero(), Quat::zero(), Quat::one());
        let d = decompose(&id).unwrap();
        assert_eq!(
            (d.kind, d.f, d.g),
            (CurveKind::Line, Quat::zero(), Quat::one())
        );

        let ik = &Quat::i() * &Quat::k();
        let pt = MoebiusCurve::left(Quat::i(), ik, Quat::one(), Quat::k());
        let d = decompose(&pt).unwrap();
        assert_eq!((d.kind, d.f), (CurveKind::Point, Quat::i()));

        let c = MoebiusCurve::left(Quat::zero(), Quat::i(), Quat::one(), Quat::k());
        let d = decompose(&c).unwrap();
        assert_eq!(d.kind, CurveKind::Circle);
        assert_eq!((d.f, d.g, d.h), (Quat::zero(), Quat::i(), Quat::k()));

        let bad = MoebiusCurve::left(Quat::one(), Quat::one(), Quat::zero(), Quat::zero());
        assert_eq!(decompose(&bad), Err(Error::InvalidCurve));
    }

    #[test]
    fn circle_through_origin() {
        let c = MoebiusCurve::left(Quat::zero(), Quat::i(), Quat::one(), Quat::k());
        let geo = circle_geometry(&c).unwrap();
        assert_eq!(geo.center, Quat::j().scale(&ratio(1, 2)));
        assert_eq!(geo.radius_sq, ratio(1, 4));
        // the spans lie in the i,j-plane
        for s in [&geo.span1, &geo.span2] {
            assert!(s.re.is_zero() && s.z.is_zero());
        }
        for p in [
            Quat::j(),
            q([0, 1, 1, 0]).scale(&ratio(1, 2)),
            q([0, -1, 1, 0]).scale(&ratio(1, 2)),
        ] {
            assert_eq!((&p - &geo.center).norm_sq(), geo.radius_sq);
        }
        assert_eq!(imh_plane_normal(&c).unwrap(), Quat::k());
        assert_eq!(geo.span1.im_dot(&Quat::k()), rat(0));
    }

    #[test]
    fn unit_circle_in_real_plane() {
        // (u + i)(u - i)^-1 stays on the unit circle of the 1,i-plane
        let c = MoebiusCurve::left(Quat::one(), Quat::i(), Quat::one(), -Quat::i());
        let geo = circle_geometry(&c).unwrap();
        assert_eq!(geo.center, Quat::zero());
        assert_eq!(geo.radius_sq, rat(1));
    }

    #[test]
    fn constant_curve_is_a_point() {
        // u + i = i(-i·u + 1)
        let c = MoebiusCurve::left(Quat::one(), Quat::i(), -Quat::i(), Quat::one());
        assert_eq!(decompose(&c).unwrap().kind, CurveKind::Point);
    }

    #[test]
    fn non_circles_are_rejected() {
        let line = MoebiusCurve::line(Quat::zero(), Quat::i());
        assert_eq!(circle_geometry(&line), Err(Error::NotCircle("line")));
        assert_eq!(imh_plane_normal(&line), Err(Error::LineCase));
        let real_h =
            MoebiusCurve::left(Quat::zero(), Quat::i(), Quat::one(), Quat::int(2, 0, 0, 0));
        assert_eq!(imh_plane_normal(&real_h), Err(Error::LineCase));
        let off = MoebiusCurve::left(Quat::zero(), Quat::one(), Quat::one(), Quat::k());
        assert_eq!(imh_plane_normal(&off), Err(Error::NotInImH));
    }

    #[test]
    fn stereographic_examples() {
        assert_eq!(stereo_to_sphere(&Quat::zero()).unwrap(), -Quat::one());
        assert_eq!(stereo_to_sphere(&Quat::i()).unwrap(), -Quat::i());
        assert_eq!(stereo_to_imh(&-Quat::one()).unwrap(), Quat::zero());
        assert!(stereo_to_sphere(&Quat::one()).is_err());
        assert!(stereo_to_imh(&Quat::one()).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_c1_r2(&-Quat::one()).unwrap(), Quat::zero());
        assert_eq!(inversion_c1_r2(&Quat::i()).unwrap(), Quat::i());
        assert_eq!(inversion_c1_r2(&Quat::one()), Err(Error::CenterPole));
    }

    #[test]
    fn incidence_predicates() {
        let (i, j, k) = (Quat::i(), Quat::j(), Quat::k());
        let (ni, nj) = (-&i, -&j);
        assert!(concyclic4([&i, &j, &ni, &nj]).unwrap());
        let zero = Quat::zero();
        assert!(!concyclic4([&zero, &i, &j, &k]).unwrap());
        assert!(cospheric5([&i, &j, &k, &ni, &nj]).unwrap());
        let one_i = q([1, 1, 0, 0]);
        assert!(!cospheric5([&zero, &i, &j, &k, &one_i]).unwrap());
        assert_eq!(concyclic4([&i, &i, &j, &k]), Err(Error::DuplicatePoints));
    }

    #[test]
    fn fitting_recovers_curves() {
        let c = MoebiusCurve::left(
            q([1, 2, 0, -1]),
            q([0, 1, 1, 0]),
            q([0, 1, 0, 1]),
            q([2, 0, 1, 0]),
        );
        let samples: Vec<(Rat, Quat)> = ladder()
            .take(6)
            .map(|t| (t.clone(), curve_eval(&c, &t).unwrap()))
            .collect();
        let fit = fit_left_moebius(&samples).unwrap();
        for t in ladder().take(10) {
            assert_eq!(curve_eval(&fit, &t).unwrap(), curve_eval(&c, &t).unwrap());
        }
        // right curves are left curves too, after renormalising
        let r = MoebiusCurve::right(
            q([1, 0, 2, 0]),
            q([0, 0, 0, 1]),
            q([0, 1, 1, 0]),
            q([1, 0, 0, 0]),
        );
        let samples: Vec<(Rat, Quat)> = ladder()
            .take(6)
            .map(|t| (t.clone(), curve_eval(&r, &t).unwrap()))
            .collect();
        assert!(fit_left_moebius(&samples).is_some());
        let mut bad = samples.clone();
        bad[5].1 = &bad[5].1 + &Quat::one();
        assert!(fit_left_moebius(&bad).is_none());
    }

    fn arb_quat() -> impl Strategy<Value = Quat> {
        prop::array::uniform4(-3i64..4).prop_map(q)
    }

    fn arb_circle() -> impl Strategy<Value = MoebiusCurve> {
        (
            arb_quat(),
            arb_quat(),
            arb_quat(),
            arb_quat(),
            any::<bool>(),
        )
            .prop_map(|(a, b, c, d, left)| {
                MoebiusCurve::new(a, b, c, d, if left { Side::Left } else { Side::Right })
            })
            .prop_filter("circle", |c| {
                decompose(c)
                    .map(|d| d.kind == CurveKind::Circle)
                    .unwrap_or(false)
            })
    }

    proptest! {
        #[test]
        fn circle_points_are_concyclic(c in arb_circle()) {
            let pts: Vec<Quat> = non_pole_samples(&c, 4).into_iter().map(|(_, p)| p).collect();
            prop_assert!(concyclic4([&pts[0], &pts[1], &pts[2], &pts[3]]).unwrap());
        }

        #[test]
        fn circle_data_is_sample_independent(c in arb_circle()) {
            let a = circle_geometry(&c).unwrap();
            let b = circle_geometry_at(&c, [&rat(3), &rat(-3), &ratio(1, 2)]).unwrap();
            prop_assert_eq!(&a.center, &b.center);
            prop_assert_eq!(&a.radius_sq, &b.radius_sq);
            for (_, p) in non_pole_samples(&c, 6) {
                prop_assert_eq!((&p - &a.center).norm_sq(), a.radius_sq.clone());
            }
        }

        #[test]
        fn stereo_maps_are_inverse(c in prop::array::uniform3(-5i64..6), den in 1i64..5) {
            let p = Quat::new(rat(0), ratio(c[0], den), ratio(c[1], den), ratio(c[2], den));
            let s = stereo_to_sphere(&p).unwrap();
            prop_assert!(s.norm_sq().is_one());
            prop_assert_eq!(stereo_to_imh(&s).unwrap(), p);
        }

        #[test]
        fn inversion_is_involutive(c in prop::array::uniform4(-5i64..6), den in 1i64..5) {
            let p = Quat::new(ratio(c[0], den), ratio(c[1], den), ratio(c[2], den), ratio(c[3], den));
            prop_assume!(p != Quat::one());
            let image = inversion_c1_r2(&p).unwrap();
            prop_assert_eq!(inversion_c1_r2(&image).unwrap(), p);
        }

        #[test]
        fn absorbed_constants_match(c in arb_circle(), l in arb_quat(), r in arb_quat()) {
            prop_assume!(!l.is_zero() && !r.is_zero());
            let g = c.absorb(&l, &r).unwrap();
            for (t, p) in non_pole_samples(&c, 4) {
                prop_assert_eq!(curve_eval(&g, &t).unwrap(), &(&l * &p) * &r);
            }
        }
    }
}
