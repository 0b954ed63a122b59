//! Surface constructions, exact evaluation, iso-parameter circles and grid
//! sampling.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, curve_eval, fit_left_moebius, MoebiusCurve};
use crate::qpoly::{QPoly2, Var};
use crate::quat::Quat;
use crate::rat::{rat, serde_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceSpec {
    /// `A^-1 · B · C^-1`
    Abc {
        #[serde(rename = "A")]
        a: QPoly2,
        #[serde(rename = "B")]
        b: QPoly2,
        #[serde(rename = "C")]
        c: QPoly2,
    },
    /// `A · B^-1`
    Quotient {
        #[serde(rename = "A")]
        a: QPoly2,
        #[serde(rename = "B")]
        b: QPoly2,
    },
    /// `alpha(u) + beta(v)`
    EuclideanTranslational {
        alpha: MoebiusCurve,
        beta: MoebiusCurve,
    },
    /// `alpha(u) · beta(v)`, optionally followed by stereographic
    /// projection from `S^3` to `Im H`.
    CliffordTranslational {
        alpha: MoebiusCurve,
        beta: MoebiusCurve,
        #[serde(default)]
        project: bool,
    },
    /// Top-left quasideterminant of a 3x3 matrix.
    Quasidet {
        #[serde(rename = "M")]
        m: [[QPoly2; 3]; 3],
    },
}

fn check_h11(p: &QPoly2) -> Result<()> {
    if !p.fits((1, 1)) {
        return Err(Error::BidegreeTooHigh(p.bidegree()));
    }
    Ok(())
}

fn nonzero(name: &str, p: &QPoly2) -> Result<()> {
    if p.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "{name} is identically zero"
        )));
    }
    Ok(())
}

impl SurfaceSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            SurfaceSpec::Abc { .. } => "abc",
            SurfaceSpec::Quotient { .. } => "quotient",
            SurfaceSpec::EuclideanTranslational { .. } => "euclidean_translational",
            SurfaceSpec::CliffordTranslational { .. } => "clifford_translational",
            SurfaceSpec::Quasidet { .. } => "quasidet",
        }
    }

    /// Checks the shape constraints of each construction.
    pub fn validate(&self) -> Result<()> {
        match self {
            SurfaceSpec::Abc { a, b, c } => {
                for (n, p) in [("A", a), ("B", b), ("C", c)] {
                    check_h11(p)?;
                    nonzero(n, p)?;
                }
                let ac = a * c;
                if !ac.fits((1, 1)) {
                    return Err(Error::BidegreeViolation(format!(
                        "A*C has bidegree {:?}",
                        ac.bidegree()
                    )));
                }
                Ok(())
            }
            SurfaceSpec::Quotient { a, b } => {
                check_h11(a)?;
                check_h11(b)?;
                nonzero("B", b)
            }
            SurfaceSpec::EuclideanTranslational { alpha, beta } => {
                alpha.validate()?;
                beta.validate()
            }
            SurfaceSpec::CliffordTranslational { alpha, beta, .. } => {
                for curve in [alpha, beta] {
                    curve.validate()?;
                    for t in geom::ladder().take(4) {
                        if let Ok(p) = curve_eval(curve, &t) {
                            if !p.norm_sq().is_one() {
                                return Err(Error::NotInS3);
                            }
                        }
                    }
                }
                Ok(())
            }
            SurfaceSpec::Quasidet { m } => m.iter().flatten().try_for_each(check_h11),
        }
    }
}

fn inv_at(q: Quat, u: &Rat, v: &Rat, what: &str) -> Result<Quat> {
    if q.is_zero() {
        return Err(Error::PoleAt {
            u: u.clone(),
            v: Some(v.clone()),
            detail: Some(what.to_string()),
        });
    }
    q.inv()
}

fn curve_at(curve: &MoebiusCurve, t: &Rat, u: &Rat, v: &Rat, what: &str) -> Result<Quat> {
    curve_eval(curve, t).map_err(|e| match e {
        Error::PoleAt { .. } => Error::PoleAt {
            u: u.clone(),
            v: Some(v.clone()),
            detail: Some(what.to_string()),
        },
        other => other,
    })
}

pub fn eval_surface(s: &SurfaceSpec, u: &Rat, v: &Rat) -> Result<Quat> {
    match s {
        SurfaceSpec::Abc { a, b, c } => {
            let ai = inv_at(a.eval(u, v), u, v, "A")?;
            let ci = inv_at(c.eval(u, v), u, v, "C")?;
            Ok(ai * b.eval(u, v) * ci)
        }
        SurfaceSpec::Quotient { a, b } => {
            let bi = inv_at(b.eval(u, v), u, v, "B")?;
            Ok(a.eval(u, v) * bi)
        }
        SurfaceSpec::EuclideanTranslational { alpha, beta } => {
            Ok(curve_at(alpha, u, u, v, "alpha")? + curve_at(beta, v, u, v, "beta")?)
        }
        SurfaceSpec::CliffordTranslational {
            alpha,
            beta,
            project,
        } => {
            let p = curve_at(alpha, u, u, v, "alpha")? * curve_at(beta, v, u, v, "beta")?;
            if !project {
                return Ok(p);
            }
            if p == Quat::one() {
                return Err(Error::PoleAt {
                    u: u.clone(),
                    v: Some(v.clone()),
                    detail: Some("projection centre".into()),
                });
            }
            geom::stereo_to_imh(&p)
        }
        SurfaceSpec::Quasidet { m } => quasidet_eval(m, u, v),
    }
}

/// `|M|_11` by the four-term expansion
/// `M11 - M12 X^-1 M21 - M12 Y^-1 M31 - M13 Z^-1 M21 - M13 W^-1 M31` with
/// `X = M22 - M23 M33^-1 M32`, `Y = M32 - M33 M23^-1 M22`,
/// `Z = M23 - M22 M32^-1 M33`, `W = M33 - M32 M22^-1 M23`.
pub fn quasidet_eval(m: &[[QPoly2; 3]; 3], u: &Rat, v: &Rat) -> Result<Quat> {
    let e: Vec<Vec<Quat>> = m
        .iter()
        .map(|row| row.iter().map(|p| p.eval(u, v)).collect())
        .collect();
    let at = |r: usize, c: usize| &e[r - 1][c - 1];
    let inv = |q: Quat, what: &str| inv_at(q, u, v, what);
    let mut out = at(1, 1).clone();
    if !at(1, 2).is_zero() {
        let x = at(2, 2) - &(at(2, 3) * &inv(at(3, 3).clone(), "M33")? * at(3, 2));
        out = out - at(1, 2) * &inv(x, "M22 - M23 M33^-1 M32")? * at(2, 1);
        let y = at(3, 2) - &(at(3, 3) * &inv(at(2, 3).clone(), "M23")? * at(2, 2));
        out = out - at(1, 2) * &inv(y, "M32 - M33 M23^-1 M22")? * at(3, 1);
    }
    if !at(1, 3).is_zero() {
        let z = at(2, 3) - &(at(2, 2) * &inv(at(3, 2).clone(), "M32")? * at(3, 3));
        out = out - at(1, 3) * &inv(z, "M23 - M22 M32^-1 M33")? * at(2, 1);
        let w = at(3, 3) - &(at(3, 2) * &inv(at(2, 2).clone(), "M22")? * at(2, 3));
        out = out - at(1, 3) * &inv(w, "M33 - M32 M22^-1 M23")? * at(3, 1);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Composition {
    /// `const_left · core(t) · const_right`
    Multiplicative,
    /// `const_left + core(t) + const_right`
    Additive,
}

/// The curve traced when one surface parameter is held fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCurve {
    pub fixed: Var,
    #[serde(with = "serde_rat")]
    pub value: Rat,
    pub composition: Composition,
    pub const_left: Quat,
    pub core: MoebiusCurve,
    pub const_right: Quat,
}

impl IsoCurve {
    pub fn eval(&self, t: &Rat) -> Result<Quat> {
        let p = curve_eval(&self.core, t)?;
        Ok(match self.composition {
            Composition::Multiplicative => &self.const_left * &p * &self.const_right,
            Composition::Additive => &self.const_left + &p + &self.const_right,
        })
    }

    /// Surface parameters `(u, v)` of the point at free parameter `t`.
    pub fn params(&self, t: &Rat) -> (Rat, Rat) {
        match self.fixed {
            Var::U => (self.value.clone(), t.clone()),
            Var::V => (t.clone(), self.value.clone()),
        }
    }

    /// The core with both constants folded in (multiplicative case only).
    pub fn composed(&self) -> Result<MoebiusCurve> {
        match self.composition {
            Composition::Multiplicative => self.core.absorb(&self.const_left, &self.const_right),
            Composition::Additive => Err(Error::UnsupportedShape(
                "additive iso-curve has no single Möbius form".into(),
            )),
        }
    }
}

fn linear_coeffs(p: &QPoly2, fixed: Var, value: &Rat) -> (Quat, Quat) {
    let r = p.fix(fixed, value);
    let cs = r.coeffs_in(fixed.other());
    (cs.get(1).cloned().unwrap_or_default(), cs[0].clone())
}

fn whole_line_pole(fixed: Var, value: &Rat, what: &str) -> Error {
    let (u, v) = match fixed {
        Var::U => (value.clone(), None),
        Var::V => (Rat::zero(), Some(value.clone())),
    };
    Error::PoleAt {
        u,
        v,
        detail: Some(format!("{what} vanishes along the whole line")),
    }
}

pub fn iso_curve(s: &SurfaceSpec, fixed: Var, value: &Rat) -> Result<IsoCurve> {
    let mult = |l: Quat, core: MoebiusCurve, r: Quat| IsoCurve {
        fixed,
        value: value.clone(),
        composition: Composition::Multiplicative,
        const_left: l,
        core,
        const_right: r,
    };
    let add = |l: Quat, core: MoebiusCurve, r: Quat| IsoCurve {
        composition: Composition::Additive,
        ..mult(l, core, r)
    };
    match s {
        SurfaceSpec::Abc { a, b, c } => {
            let (a1, a0) = linear_coeffs(a, fixed, value);
            let (b1, b0) = linear_coeffs(b, fixed, value);
            let (c1, c0) = linear_coeffs(c, fixed, value);
            if a1.is_zero() {
                if a0.is_zero() {
                    return Err(whole_line_pole(fixed, value, "A"));
                }
                Ok(mult(
                    a0.inv()?,
                    MoebiusCurve::left(b1, b0, c1, c0),
                    Quat::one(),
                ))
            } else if c1.is_zero() {
                if c0.is_zero() {
                    return Err(whole_line_pole(fixed, value, "C"));
                }
                Ok(mult(
                    Quat::one(),
                    MoebiusCurve::right(b1, b0, a1, a0),
                    c0.inv()?,
                ))
            } else {
                Err(Error::UnsupportedShape(
                    "A and C both vary along the iso-line".into(),
                ))
            }
        }
        SurfaceSpec::Quotient { a, b } => {
            let (a1, a0) = linear_coeffs(a, fixed, value);
            let (b1, b0) = linear_coeffs(b, fixed, value);
            if b1.is_zero() && b0.is_zero() {
                return Err(whole_line_pole(fixed, value, "B"));
            }
            Ok(mult(
                Quat::one(),
                MoebiusCurve::left(a1, a0, b1, b0),
                Quat::one(),
            ))
        }
        SurfaceSpec::EuclideanTranslational { alpha, beta } => match fixed {
            Var::U => Ok(add(curve_eval(alpha, value)?, beta.clone(), Quat::zero())),
            Var::V => Ok(add(Quat::zero(), alpha.clone(), curve_eval(beta, value)?)),
        },
        SurfaceSpec::CliffordTranslational {
            alpha,
            beta,
            project,
        } => {
            let iso = match fixed {
                Var::U => mult(curve_eval(alpha, value)?, beta.clone(), Quat::one()),
                Var::V => mult(Quat::one(), alpha.clone(), curve_eval(beta, value)?),
            };
            if !project {
                return Ok(iso);
            }
            let on_sphere = iso.composed()?;
            Ok(mult(Quat::one(), on_sphere.stereo_to_imh()?, Quat::one()))
        }
        SurfaceSpec::Quasidet { .. } => {
            let samples: Vec<(Rat, Quat)> = geom::ladder()
                .take(40)
                .filter_map(|t| {
                    let (u, v) = match fixed {
                        Var::U => (value.clone(), t.clone()),
                        Var::V => (t.clone(), value.clone()),
                    };
                    eval_surface(s, &u, &v).ok().map(|p| (t, p))
                })
                .take(6)
                .collect();
            let core = fit_left_moebius(&samples)
                .ok_or_else(|| Error::UnsupportedShape("iso-line is not fraction-linear".into()))?;
            Ok(mult(Quat::one(), core, Quat::one()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    InImH,
    InS3,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub i: usize,
    pub j: usize,
    #[serde(with = "serde_rat")]
    pub u: Rat,
    #[serde(with = "serde_rat")]
    pub v: Rat,
    pub point: Quat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPole {
    pub i: usize,
    pub j: usize,
    #[serde(with = "serde_rat")]
    pub u: Rat,
    #[serde(with = "serde_rat")]
    pub v: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleGrid {
    pub n: usize,
    pub points: Vec<GridPoint>,
    pub poles: Vec<GridPole>,
}

/// `n` evenly spaced rationals from `lo` to `hi` inclusive.
pub fn lattice(lo: &Rat, hi: &Rat, n: usize) -> Vec<Rat> {
    let steps = Rat::from_integer((n.max(2) - 1).into());
    (0..n)
        .map(|k| lo + (hi - lo) * Rat::from_integer(k.into()) / &steps)
        .collect()
}

/// Samples an `n x n` lattice; poles are recorded and skipped.
pub fn sample_grid(
    s: &SurfaceSpec,
    u_range: (&Rat, &Rat),
    v_range: (&Rat, &Rat),
    n: usize,
) -> Result<SampleGrid> {
    if n < 2 {
        return Err(Error::DegenerateInput(format!("grid size {n} < 2")));
    }
    let us = lattice(u_range.0, u_range.1, n);
    let vs = lattice(v_range.0, v_range.1, n);
    let mut grid = SampleGrid {
        n,
        points: Vec::new(),
        poles: Vec::new(),
    };
    for (i, u) in us.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            match eval_surface(s, u, v) {
                Ok(point) => grid.points.push(GridPoint {
                    i,
                    j,
                    u: u.clone(),
                    v: v.clone(),
                    point,
                }),
                Err(Error::PoleAt { .. }) => grid.poles.push(GridPole {
                    i,
                    j,
                    u: u.clone(),
                    v: v.clone(),
                }),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(grid)
}

/// Integer grid of `n` consecutive values starting at `-(n-1)/2`, e.g. `-3..=3`
/// for `n = 7`.
pub fn verification_grid(s: &SurfaceSpec, n: usize) -> Result<SampleGrid> {
    let half = rat(((n as i64) - 1) / 2);
    let lo = -half.clone();
    let hi = &lo + rat(n as i64 - 1);
    sample_grid(s, (&lo, &hi), (&lo, &hi), n)
}

pub fn contains_check(grid: &SampleGrid) -> Ambient {
    if grid.points.is_empty() {
        return Ambient::Neither;
    }
    if grid.points.iter().all(|p| p.point.re.is_zero()) {
        Ambient::InImH
    } else if grid.points.iter().all(|p| p.point.norm_sq().is_one()) {
        Ambient::InS3
    } else {
        Ambient::Neither
    }
}

// ---------------------------------------------------------------------------
// Built-in fixtures
// ---------------------------------------------------------------------------

pub const BUILTIN_SURFACES: [&str; 5] = [
    "torus",
    "clifford",
    "euclidean-translational-sample",
    "quasidet-sample",
    "clifford-translational-sample",
];

fn lin(var: Var, a: Quat, b: Quat) -> QPoly2 {
    QPoly2::linear(var, a, b)
}

/// `(u - i)((2j + i)v - 2i - j) · ((u - i)(v - k))^-1`
pub fn torus() -> SurfaceSpec {
    let ui = lin(Var::U, Quat::one(), -Quat::i());
    SurfaceSpec::Quotient {
        a: &ui * &lin(Var::V, Quat::int(0, 1, 2, 0), Quat::int(0, -2, -1, 0)),
        b: &ui * &lin(Var::V, Quat::one(), -Quat::k()),
    }
}

/// `(v + i)^-1 (v + j)(u + k)(u + i)^-1`
pub fn clifford() -> SurfaceSpec {
    SurfaceSpec::Abc {
        a: lin(Var::V, Quat::one(), Quat::i()),
        b: &lin(Var::V, Quat::one(), Quat::j()) * &lin(Var::U, Quat::one(), Quat::k()),
        c: lin(Var::U, Quat::one(), Quat::i()),
    }
}

/// `i(u + k)^-1 + (v + i)^-1 j`: two circles in perpendicular planes.
pub fn euclidean_translational_sample() -> SurfaceSpec {
    SurfaceSpec::EuclideanTranslational {
        alpha: MoebiusCurve::left(Quat::zero(), Quat::i(), Quat::one(), Quat::k()),
        beta: MoebiusCurve::right(Quat::zero(), Quat::j(), Quat::one(), Quat::i()),
    }
}

/// Skew-hermitian matrix with `M22` linear in `u` and `M33` linear in `v`.
pub fn quasidet_sample_matrix() -> [[QPoly2; 3]; 3] {
    let c = |re, x, y, z| QPoly2::constant(Quat::int(re, x, y, z));
    [
        [c(0, 1, 0, 0), c(1, 0, 1, 0), c(1, 0, 0, 1)],
        [
            c(-1, 0, 1, 0),
            lin(Var::U, Quat::i(), Quat::j()),
            c(1, 1, 0, 0),
        ],
        [
            c(-1, 0, 0, 1),
            c(-1, 1, 0, 0),
            lin(Var::V, Quat::j(), Quat::k()),
        ],
    ]
}

pub fn quasidet_sample() -> SurfaceSpec {
    SurfaceSpec::Quasidet {
        m: quasidet_sample_matrix(),
    }
}

/// Stereographic image of `(u + i)(u - i)^-1 · (v + j)(v - k)^-1`.
pub fn clifford_translational_sample() -> SurfaceSpec {
    SurfaceSpec::CliffordTranslational {
        alpha: MoebiusCurve::left(Quat::one(), Quat::i(), Quat::one(), -Quat::i()),
        beta: MoebiusCurve::left(Quat::one(), Quat::j(), Quat::one(), -Quat::k()),
        project: true,
    }
}

/// Up to `count` distinct surface points along the line `var = value`,
/// taken at the ladder parameters `0, 1, -1, 2, ...`.
pub fn iso_line_samples(s: &SurfaceSpec, var: Var, value: &Rat, count: usize) -> Vec<(Rat, Quat)> {
    let mut out: Vec<(Rat, Quat)> = Vec::new();
    for t in geom::ladder().take(10 * count) {
        let (u, v) = match var {
            Var::U => (value.clone(), t.clone()),
            Var::V => (t.clone(), value.clone()),
        };
        if let Ok(p) = eval_surface(s, &u, &v) {
            if out.iter().all(|(_, q)| q != &p) {
                out.push((t, p));
            }
        }
        if out.len() == count {
            break;
        }
    }
    out
}

/// `u^2 v^2 - 1 + (u^2 - v^2)·i + 2uv·j`, whose norm square is
/// `(u^4 + 1)(v^4 + 1)`.
pub fn beauregard() -> QPoly2 {
    QPoly2::from_terms([
        ((2, 2), Quat::one()),
        ((0, 0), -Quat::one()),
        ((2, 0), Quat::i()),
        ((0, 2), -Quat::i()),
        ((1, 1), Quat::int(0, 0, 2, 0)),
    ])
}

pub fn builtin_surface(name: &str) -> Option<SurfaceSpec> {
    Some(match name {
        "torus" => torus(),
        "clifford" => clifford(),
        "euclidean-translational-sample" => euclidean_translational_sample(),
        "quasidet-sample" => quasidet_sample(),
        "clifford-translational-sample" => clifford_translational_sample(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{concyclic4, Side};
    use crate::rat::ratio;

    #[test]
    fn torus_at_origin() {
        let p = eval_surface(&torus(), &rat(0), &rat(0)).unwrap();
        assert_eq!(p, Quat::int(0, -1, -2, 0));
    }

    #[test]
    fn clifford_at_origin() {
        let p = eval_surface(&clifford(), &rat(0), &rat(0)).unwrap();
        assert_eq!(p, -Quat::i());
        assert!(p.norm_sq().is_one());
    }

    #[test]
    fn quotient_of_equal_polynomials_is_one() {
        let a = QPoly2::bilinear(Quat::one(), Quat::i(), Quat::j(), Quat::k());
        let s = SurfaceSpec::Quotient { a: a.clone(), b: a };
        for (u, v) in [(0, 0), (2, -1), (3, 5)] {
            assert_eq!(eval_surface(&s, &rat(u), &rat(v)).unwrap(), Quat::one());
        }
    }

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_SURFACES {
            builtin_surface(name).unwrap().validate().unwrap();
        }
        let bad = SurfaceSpec::Abc {
            a: QPoly2::u(),
            b: QPoly2::one(),
            c: QPoly2::u(),
        };
        assert!(matches!(bad.validate(), Err(Error::BidegreeViolation(_))));
    }

    fn check_iso(s: &SurfaceSpec, fixed: Var, value: Rat) {
        let iso = iso_curve(s, fixed, &value).unwrap();
        for t in geom::ladder().take(5) {
            let (u, v) = iso.params(&t);
            match eval_surface(s, &u, &v) {
                Ok(p) => assert_eq!(iso.eval(&t).unwrap(), p, "{} at ({u}, {v})", s.kind_name()),
                Err(Error::PoleAt { .. }) => assert!(iso.eval(&t).is_err()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn iso_curves_agree_with_evaluation() {
        for name in BUILTIN_SURFACES {
            let s = builtin_surface(name).unwrap();
            for value in [rat(0), rat(2), ratio(-1, 2)] {
                check_iso(&s, Var::U, value.clone());
                check_iso(&s, Var::V, value);
            }
        }
    }

    #[test]
    fn clifford_iso_line_at_v0() {
        let iso = iso_curve(&clifford(), Var::V, &rat(0)).unwrap();
        let expected = MoebiusCurve::left(Quat::one(), Quat::k(), Quat::one(), Quat::i())
            .absorb(&-Quat::k(), &Quat::one())
            .unwrap();
        for t in geom::ladder().take(5) {
            assert_eq!(iso.eval(&t).unwrap(), curve_eval(&expected, &t).unwrap());
        }
        assert_eq!(iso.core.side, Side::Left);
    }

    #[test]
    fn torus_iso_line_as_abc() {
        // with A = 1 the iso-line keeps the left form of B·C^-1
        let SurfaceSpec::Quotient { a, b } = torus() else {
            unreachable!()
        };
        let abc = SurfaceSpec::Abc {
            a: QPoly2::one(),
            b: a,
            c: b,
        };
        let iso = iso_curve(&abc, Var::U, &rat(0)).unwrap();
        assert_eq!(iso.core.side, Side::Left);
        for t in [rat(0), rat(1), rat(-1)] {
            assert_eq!(
                iso.eval(&t).unwrap(),
                eval_surface(&torus(), &rat(0), &t).unwrap()
            );
        }
    }

    #[test]
    fn ambient_detection() {
        let g = verification_grid(&torus(), 5).unwrap();
        assert_eq!(g.points.len(), 25);
        assert_eq!(contains_check(&g), Ambient::InImH);
        let g = verification_grid(&clifford(), 5).unwrap();
        assert_eq!(contains_check(&g), Ambient::InS3);
        let generic = SurfaceSpec::Quotient {
            a: QPoly2::one(),
            b: QPoly2::bilinear(Quat::one(), Quat::one(), Quat::i(), Quat::zero()),
        };
        let g = verification_grid(&generic, 5).unwrap();
        assert_eq!(contains_check(&g), Ambient::Neither);
    }

    #[test]
    fn grid_records_poles() {
        let s = SurfaceSpec::Abc {
            a: QPoly2::one(),
            b: QPoly2::one(),
            c: QPoly2::u(),
        };
        let g = sample_grid(&s, (&rat(-1), &rat(1)), (&rat(0), &rat(1)), 3).unwrap();
        assert_eq!(g.poles.len(), 3);
        assert!(g.poles.iter().all(|p| p.u.is_zero()));
        assert_eq!(g.points.len(), 6);
        let constant = SurfaceSpec::Quotient {
            a: QPoly2::one(),
            b: QPoly2::one(),
        };
        let g = sample_grid(&constant, (&rat(-1), &rat(1)), (&rat(-1), &rat(1)), 4).unwrap();
        assert!(g.points.iter().all(|p| p.point == Quat::one()));
        assert!(sample_grid(&constant, (&rat(0), &rat(1)), (&rat(0), &rat(1)), 1).is_err());
    }

    #[test]
    fn quasidet_collapses_without_off_diagonal_row() {
        let mut m = quasidet_sample_matrix();
        m[0][1] = QPoly2::zero();
        m[0][2] = QPoly2::zero();
        assert_eq!(quasidet_eval(&m, &rat(1), &rat(2)).unwrap(), Quat::i());
    }

    #[test]
    fn quasidet_sample_is_imaginary_and_circular() {
        let s = quasidet_sample();
        let g = verification_grid(&s, 5).unwrap();
        assert!(!g.points.is_empty());
        assert_eq!(contains_check(&g), Ambient::InImH);
        let pts: Vec<Quat> = [0, 1, -1, 2]
            .iter()
            .map(|&t| eval_surface(&s, &rat(t), &rat(1)).unwrap())
            .collect();
        assert!(concyclic4([&pts[0], &pts[1], &pts[2], &pts[3]]).unwrap());
    }

    #[test]
    fn quasidet_pole_names_subexpression() {
        let mut m = quasidet_sample_matrix();
        m[2][2] = QPoly2::v();
        match quasidet_eval(&m, &rat(1), &rat(0)) {
            Err(Error::PoleAt {
                detail: Some(d), ..
            }) => assert_eq!(d, "M33"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spec_json_roundtrip() {
        for name in BUILTIN_SURFACES {
            let s = builtin_surface(name).unwrap();
            let text = serde_json::to_string(&s).unwrap();
            assert_eq!(serde_json::from_str::<SurfaceSpec>(&text).unwrap(), s);
        }
        let text = serde_json::to_string(&clifford()).unwrap();
        assert!(text.starts_with(r#"{"kind":"abc","A":"#));
    }
}
