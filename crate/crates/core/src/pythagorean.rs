//! Pythagorean 6-tuples `X1^2 + ... + X5^2 = X6^2` of bidegree (2,2)
//! polynomials built from quaternion products.

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{QPoly2, RPoly, Var};
use crate::quat::Quat;
use crate::rat::Rat;

const MAX_BIDEGREE: (u32, u32) = (2, 2);

fn within(bd: (u32, u32), max: (u32, u32)) -> bool {
    bd.0 <= max.0 && bd.1 <= max.1
}

/// Six bivariate polynomials `X1..X6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PythTuple(pub [RPoly; 6]);

impl<'de> Deserialize<'de> for PythTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = <[RPoly; 6]>::deserialize(d)?;
        if raw.iter().any(|p| p.nvars() > 2) {
            return Err(serde::de::Error::custom("tuple entries must be bivariate"));
        }
        Ok(PythTuple(raw.map(|p| p.with_nvars(2))))
    }
}

impl PythTuple {
    /// `X1^2 + ... + X5^2 - X6^2`.
    pub fn defect(&self) -> RPoly {
        let x = &self.0;
        let mut sum = RPoly::zero(2);
        for xi in &x[..5] {
            sum = &sum + &(xi * xi);
        }
        &sum - &(&x[5] * &x[5])
    }

    pub fn quaternion(&self) -> QPoly2 {
        let x = &self.0;
        QPoly2::from_components([&x[0], &x[1], &x[2], &x[3]])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PythSeed {
    #[serde(rename = "A")]
    pub a: QPoly2,
    #[serde(rename = "B")]
    pub b: QPoly2,
    #[serde(rename = "C")]
    pub c: QPoly2,
    #[serde(rename = "D")]
    pub d: RPoly,
}

/// `X1 + i X2 + j X3 + k X4 = 2·A·B·C·D`,
/// `X5 = (|B|^2 - |AC|^2)·D`, `X6 = (|B|^2 + |AC|^2)·D`.
pub fn gen_tuple(seed: &PythSeed) -> Result<PythTuple> {
    for (name, p) in [("A", &seed.a), ("B", &seed.b), ("C", &seed.c)] {
        if !p.fits((1, 1)) {
            return Err(Error::BidegreeViolation(format!(
                "{name} has bidegree {:?}",
                p.bidegree()
            )));
        }
    }
    if seed.d.nvars() > 2 || !within(seed.d.bidegree(), MAX_BIDEGREE) {
        return Err(Error::BidegreeViolation(format!(
            "D has bidegree {:?}",
            seed.d.bidegree()
        )));
    }
    let d = seed.d.clone().with_nvars(2);
    let nb = &seed.b.norm_sq()? * &d;
    let nac = &(&seed.a * &seed.c).norm_sq()? * &d;
    for (name, p) in [("|B|^2 D", &nb), ("|AC|^2 D", &nac)] {
        if !within(p.bidegree(), MAX_BIDEGREE) {
            return Err(Error::BidegreeViolation(format!(
                "{name} has bidegree {:?}",
                p.bidegree()
            )));
        }
    }
    let q = (&(&seed.a * &seed.b) * &seed.c)
        .mul_real(&d)
        .scale(&Rat::from_integer(2.into()));
    let [x1, x2, x3, x4] = q.components();
    let t = PythTuple([x1, x2, x3, x4, &nb - &nac, &nb + &nac]);
    certify(t)
}

fn certify(t: PythTuple) -> Result<PythTuple> {
    let defect = t.defect();
    if !defect.is_zero() {
        return Err(Error::IdentityFailure(format!("defect {defect}")));
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum TupleCheck {
    Valid,
    Invalid { defect: RPoly, bidegrees_ok: bool },
}

impl TupleCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, TupleCheck::Valid)
    }
}

pub fn verify_tuple(t: &PythTuple) -> TupleCheck {
    let defect = t.defect();
    let bidegrees_ok = t.0.iter().all(|x| within(x.bidegree(), MAX_BIDEGREE));
    if defect.is_zero() && bidegrees_ok {
        TupleCheck::Valid
    } else {
        TupleCheck::Invalid {
            defect,
            bidegrees_ok,
        }
    }
}

fn univariate(p: &RPoly) -> RPoly {
    p.clone().with_nvars(1)
}

/// One-variable analogue: `X1 + i X2 + j X3 + k X4 = 2·A·B·D`,
/// `X5 = (|B|^2 - |A|^2)·D`, `X6 = (|B|^2 + |A|^2)·D`, all in `u`.
pub fn gen_univariate(a: &QPoly2, b: &QPoly2, d: &RPoly) -> Result<[RPoly; 6]> {
    if a.depends_on(Var::V) || b.depends_on(Var::V) || (d.nvars() > 1 && d.degree_in(1) > 0) {
        return Err(Error::DegenerateInput(
            "univariate input depends on v".into(),
        ));
    }
    let nb = &b.norm_sq()? * d;
    let na = &a.norm_sq()? * d;
    let q = (a * b).mul_real(d).scale(&Rat::from_integer(2.into()));
    let [x1, x2, x3, x4] = q.components();
    let t = certify(PythTuple([x1, x2, x3, x4, &nb - &na, &nb + &na]))?;
    Ok(t.0.map(|x| univariate(&x)))
}

/// Point `(X1 + i X2 + j X3 + k X4) / (X6 - X5)` of the projected tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSurface {
    numerator: QPoly2,
    denominator: RPoly,
}

pub fn tuple_to_surface(t: &PythTuple) -> Result<TupleSurface> {
    let denominator = &t.0[5] - &t.0[4];
    if denominator.is_zero() {
        return Err(Error::PoleAt {
            u: Rat::zero(),
            v: None,
            detail: Some("X6 - X5 vanishes identically".into()),
        });
    }
    Ok(TupleSurface {
        numerator: t.quaternion(),
        denominator,
    })
}

impl TupleSurface {
    pub fn eval(&self, u: &Rat, v: &Rat) -> Result<Quat> {
        let den = self.denominator.eval(&[u.clone(), v.clone()]);
        if den.is_zero() {
            return Err(Error::pole_uv(u, v));
        }
        Ok(self.numerator.eval(u, v).scale(&den.recip()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereMode {
    /// `X1^2 + ... + Xn^2 = X0^2`
    Sphere,
    /// `X1^2 + ... + Xn^2 = X0·Y`
    Paraboloid(RPoly),
}

pub fn verify_sphere_relation(x0: &RPoly, xs: &[RPoly], mode: &SphereMode) -> bool {
    let sum = xs
        .iter()
        .fold(RPoly::zero(x0.nvars()), |acc, x| &acc + &(x * x));
    let rhs = match mode {
        SphereMode::Sphere => x0 * x0,
        SphereMode::Paraboloid(y) => x0 * y,
    };
    (&sum - &rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::surface::{eval_surface, SurfaceSpec};
    use proptest::prelude::*;

    fn c(re: i64, x: i64, y: i64, z: i64) -> QPoly2 {
        QPoly2::constant(Quat::int(re, x, y, z))
    }

    fn p(du: u32, dv: u32, k: i64) -> RPoly {
        RPoly::uv(du, dv, rat(k))
    }

    fn seed(a: QPoly2, b: QPoly2, cc: QPoly2, d: RPoly) -> PythSeed {
        PythSeed { a, b, c: cc, d }
    }

    #[test]
    fn trivial_seed() {
        let t = gen_tuple(&seed(
            QPoly2::one(),
            QPoly2::one(),
            QPoly2::one(),
            RPoly::one(2),
        ))
        .unwrap();
        let z = RPoly::zero(2);
        let two = p(0, 0, 2);
        assert_eq!(t.0, [two.clone(), z.clone(), z.clone(), z.clone(), z, two]);
    }

    #[test]
    fn monomial_seed() {
        let t = gen_tuple(&seed(
            QPoly2::u(),
            QPoly2::one(),
            QPoly2::v(),
            RPoly::one(2),
        ))
        .unwrap();
        let z = RPoly::zero(2);
        assert_eq!(
            t.0,
            [
                p(1, 1, 2),
                z.clone(),
                z.clone(),
                z,
                &p(0, 0, 1) - &p(2, 2, 1),
                &p(0, 0, 1) + &p(2, 2, 1)
            ]
        );
    }

    #[test]
    fn shifted_seed() {
        let a = &QPoly2::u() + &c(0, 1, 0, 0);
        let cc = &QPoly2::v() + &c(0, 0, 1, 0);
        let t = gen_tuple(&seed(a, QPoly2::one(), cc, RPoly::one(2))).unwrap();
        let norm = &(&p(2, 0, 1) + &p(0, 0, 1)) * &(&p(0, 2, 1) + &p(0, 0, 1));
        assert_eq!(t.0[0], p(1, 1, 2));
        assert_eq!(t.0[1], p(0, 1, 2));
        assert_eq!(t.0[2], p(1, 0, 2));
        assert_eq!(t.0[3], p(0, 0, 2));
        assert_eq!(t.0[4], &p(0, 0, 1) - &norm);
        assert_eq!(t.0[5], &p(0, 0, 1) + &norm);
        let lhs = norm.scale(&rat(4));
        assert_eq!(lhs, &(&t.0[5] * &t.0[5]) - &(&t.0[4] * &t.0[4]));
    }

    #[test]
    fn side_condition_is_enforced() {
        let s = seed(QPoly2::u(), QPoly2::one(), QPoly2::v(), p(2, 2, 1));
        assert!(matches!(gen_tuple(&s), Err(Error::BidegreeViolation(_))));
        let s = seed(
            QPoly2::monomial(2, 0, Quat::one()),
            QPoly2::one(),
            QPoly2::one(),
            RPoly::one(2),
        );
        assert!(matches!(gen_tuple(&s), Err(Error::BidegreeViolation(_))));
    }

    #[test]
    fn verify_examples() {
        let one = p(0, 0, 1);
        let t = PythTuple([
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
            one,
            p(0, 0, 2),
        ]);
        assert_eq!(
            verify_tuple(&t),
            TupleCheck::Invalid {
                defect: p(0, 0, 1),
                bidegrees_ok: true
            }
        );
        let z = RPoly::zero(2);
        let t = PythTuple([
            &p(2, 0, 1) - &p(0, 0, 1),
            p(1, 0, 2),
            z.clone(),
            z.clone(),
            z,
            &p(2, 0, 1) + &p(0, 0, 1),
        ]);
        assert!(verify_tuple(&t).is_valid());
    }

    #[test]
    fn univariate_examples() {
        let u = |d: u32, k: i64| RPoly::monomial(1, [d, 0, 0, 0], rat(k));
        let z = RPoly::zero(1);
        let x = gen_univariate(&QPoly2::u(), &QPoly2::one(), &RPoly::one(1)).unwrap();
        assert_eq!(
            x,
            [
                u(1, 2),
                z.clone(),
                z.clone(),
                z.clone(),
                &u(0, 1) - &u(2, 1),
                &u(0, 1) + &u(2, 1)
            ]
        );

        let x = gen_univariate(&c(0, 1, 0, 0), &c(0, 0, 1, 0), &u(1, 1)).unwrap();
        assert_eq!(
            x,
            [z.clone(), z.clone(), z.clone(), u(1, 2), z.clone(), u(1, 2)]
        );

        let a = &QPoly2::u() + &c(0, 1, 0, 0);
        let b = &QPoly2::u() - &c(0, 0, 1, 0);
        let x = gen_univariate(&a, &b, &RPoly::one(1)).unwrap();
        assert_eq!(x[5], (&u(2, 1) + &u(0, 1)).scale(&rat(2)));
        assert!(verify_sphere_relation(&x[5], &x[..5], &SphereMode::Sphere));
    }

    #[test]
    fn projection_examples() {
        let t = gen_tuple(&seed(
            QPoly2::u(),
            QPoly2::one(),
            QPoly2::v(),
            RPoly::one(2),
        ))
        .unwrap();
        let s = tuple_to_surface(&t).unwrap();
        assert_eq!(s.eval(&rat(1), &rat(1)).unwrap(), Quat::one());
        assert!(matches!(
            s.eval(&rat(0), &rat(1)),
            Err(Error::PoleAt { .. })
        ));

        let t = gen_tuple(&seed(
            QPoly2::one(),
            QPoly2::one(),
            QPoly2::one(),
            RPoly::one(2),
        ))
        .unwrap();
        let s = tuple_to_surface(&t).unwrap();
        assert_eq!(s.eval(&rat(5), &rat(-3)).unwrap(), Quat::one());

        let mut t = t;
        t.0[4] = t.0[5].clone();
        assert!(matches!(tuple_to_surface(&t), Err(Error::PoleAt { .. })));
    }

    #[test]
    fn sphere_relation_examples() {
        let (x0, x1, x2) = (
            &p(2, 0, 1) + &p(0, 0, 1),
            &p(2, 0, 1) - &p(0, 0, 1),
            p(1, 0, 2),
        );
        assert!(verify_sphere_relation(&x0, &[x1, x2], &SphereMode::Sphere));
        assert!(verify_sphere_relation(
            &p(0, 0, 1),
            &[p(1, 0, 1)],
            &SphereMode::Paraboloid(p(2, 0, 1))
        ));
        let one = p(0, 0, 1);
        assert!(!verify_sphere_relation(
            &one,
            &[one.clone(), one.clone()],
            &SphereMode::Sphere
        ));
    }

    #[test]
    fn tuple_json_is_six_polynomials() {
        let t = gen_tuple(&seed(
            QPoly2::u(),
            QPoly2::one(),
            QPoly2::v(),
            RPoly::one(2),
        ))
        .unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json.as_array().unwrap().len(), 6);
        let back: PythTuple = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
    }

    fn arb_quat() -> impl Strategy<Value = Quat> {
        prop::array::uniform4(-2i64..=2).prop_map(|c| Quat::int(c[0], c[1], c[2], c[3]))
    }

    fn arb_h11() -> impl Strategy<Value = QPoly2> {
        prop::array::uniform4(arb_quat()).prop_map(|[a, b, c, d]| QPoly2::bilinear(a, b, c, d))
    }

    fn arb_lin(var: Var) -> impl Strategy<Value = QPoly2> {
        prop::array::uniform2(arb_quat()).prop_map(move |[x, y]| QPoly2::linear(var, x, y))
    }

    /// Seed shapes whose products stay within bidegree (2,2).
    fn arb_seed() -> impl Strategy<Value = PythSeed> {
        let separated = (arb_lin(Var::U), arb_h11(), arb_lin(Var::V), -2i64..=2)
            .prop_map(|(a, b, cc, d)| seed(a, b, cc, p(0, 0, d)));
        let one_sided = (arb_h11(), arb_h11(), arb_quat(), -2i64..=2)
            .prop_map(|(a, b, cc, d)| seed(a, b, QPoly2::constant(cc), p(0, 0, d)));
        let quadratic_d = (
            arb_lin(Var::V),
            arb_lin(Var::V),
            arb_quat(),
            prop::array::uniform3(-2i64..=2),
        )
            .prop_map(|(a, b, cc, d)| {
                let d = RPoly::from_terms(2, (0..3).map(|k| ([k as u32, 0, 0, 0], rat(d[k]))));
                seed(a, b, QPoly2::constant(cc), d)
            });
        prop_oneof![separated, one_sided, quadratic_d]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn generated_tuples_verify(s in arb_seed()) {
            let t = gen_tuple(&s).unwrap();
            prop_assert!(verify_tuple(&t).is_valid());
            for x in &t.0 {
                prop_assert!(within(x.bidegree(), MAX_BIDEGREE));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn projection_matches_abc_surface(a in arb_lin(Var::U), cc in arb_lin(Var::V)) {
            prop_assume!(!a.is_zero() && !cc.is_zero());
            let t = gen_tuple(&seed(a.clone(), QPoly2::one(), cc.clone(), RPoly::one(2))).unwrap();
            let proj = tuple_to_surface(&t).unwrap();
            // 2AC / (2|AC|^2) = conj(A)^-1 conj(C)^-1
            let spec = SurfaceSpec::Abc { a: a.conj(), b: QPoly2::one(), c: cc.conj() };
            for u in -2i64..=2 {
                for v in -2i64..=2 {
                    let (u, v) = (rat(u), rat(v));
                    match (proj.eval(&u, &v), eval_surface(&spec, &u, &v)) {
                        (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                        (Err(_), Err(_)) => {}
                        (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
                    }
                }
            }
        }

        #[test]
        fn univariate_agrees_with_bivariate(a in prop::array::uniform2(arb_quat()), b in prop::array::uniform2(arb_quat()), d in prop::array::uniform3(-2i64..=2)) {
            let a = QPoly2::linear(Var::U, a[0].clone(), a[1].clone());
            let b = QPoly2::linear(Var::U, b[0].clone(), b[1].clone());
            let d1 = RPoly::from_terms(1, (0..3).map(|k| ([k as u32, 0, 0, 0], rat(d[k]))));
            let x = gen_univariate(&a, &b, &d1).unwrap();
            let dd = d1.clone().with_nvars(2);
            // D of degree 2 in u needs |A|^2, |B|^2 constant in u
            if let Ok(t) = gen_tuple(&seed(a, b, QPoly2::one(), dd)) {
                for (xu, xb) in x.iter().zip(t.0.iter()) {
                    prop_assert_eq!(xu, &xb.clone().with_nvars(1));
                }
            }
        }
    }
}
