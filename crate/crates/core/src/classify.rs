//! Decision procedure for surfaces `A^-1·B·C^-1` lying in `Im H` or `S^3`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{self, MoebiusCurve};
use crate::implicit::{
    darboux_test, eval_implicit, implicitize_quotient, restrict_t0, DarbouxForm,
};
use crate::qpoly::{QPoly2, RPoly, Var};
use crate::quat::Quat;
use crate::rat::{serde_rat, Rat};
use crate::splitting::{split_h11, SplitOrder};
use crate::surface::{contains_check, eval_surface, verification_grid, Ambient, SurfaceSpec};

/// Grid size used for ambient detection.
pub const AMBIENT_GRID: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum Classification {
    /// Contained in `F(x, y, z) = 0`, a Darboux cyclide.
    DarbouxCyclide {
        #[serde(rename = "F")]
        f: RPoly,
        form: DarbouxForm,
    },
    /// Contained in `S^3` and in a second quadric; `F_projected` is the
    /// cyclide equation of the stereographic image in `Im H`.
    QuadricInS3 {
        #[serde(rename = "F_projected")]
        f_projected: RPoly,
        form: DarbouxForm,
    },
    /// `Φ(u, v) = alpha(u) + beta(v)`.
    EuclideanTranslational {
        alpha: MoebiusCurve,
        beta: MoebiusCurve,
    },
    /// `Φ = norm_ratio · alpha · beta` with `alpha` in the variable
    /// `alpha_var` and `beta` in the other one.
    CliffordTranslational {
        alpha: MoebiusCurve,
        beta: MoebiusCurve,
        #[serde(with = "serde_rat")]
        norm_ratio: Rat,
        alpha_var: Var,
    },
    /// Contained in the plane `im_dot(normal, p) = offset` of `Im H`.
    Planar {
        normal: Quat,
        #[serde(with = "serde_rat")]
        offset: Rat,
    },
}

impl Classification {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Classification::DarbouxCyclide { .. } => "DarbouxCyclide",
            Classification::QuadricInS3 { .. } => "QuadricInS3",
            Classification::EuclideanTranslational { .. } => "EuclideanTranslational",
            Classification::CliffordTranslational { .. } => "CliffordTranslational",
            Classification::Planar { .. } => "Planar",
        }
    }
}

/// How the normalized data relate to the input.
///
/// With `(s, t) = (u, v)`, or `(v, u)` when `swapped`, the input surface is
/// `Φ(s + u_shift, t + v_shift)` of the normalized one, and
/// `A' = left_scale^-1 · A`, `B' = left_scale^-1 · B · right_scale^-1`,
/// `C' = C · right_scale^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeOfVars {
    pub swapped: bool,
    #[serde(with = "serde_rat")]
    pub u_shift: Rat,
    #[serde(with = "serde_rat")]
    pub v_shift: Rat,
    pub left_scale: Quat,
    pub right_scale: Quat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub a: QPoly2,
    pub b: QPoly2,
    pub c: QPoly2,
    pub change: ChangeOfVars,
}

fn is_linear_in(p: &QPoly2, var: Var) -> bool {
    !p.depends_on(var.other())
        && match var {
            Var::U => p.bidegree().0 == 1,
            Var::V => p.bidegree().1 == 1,
        }
}

/// Brings `A(v)`, `C(u)` to `v + a` and `u + c` with `a, c` imaginary.
pub fn normalize_abc(a: &QPoly2, b: &QPoly2, c: &QPoly2) -> Result<Normalized> {
    if !is_linear_in(a, Var::V) {
        return Err(Error::PatternMismatch(format!(
            "A = {a} is not linear in v alone"
        )));
    }
    if !is_linear_in(c, Var::U) {
        return Err(Error::PatternMismatch(format!(
            "C = {c} is not linear in u alone"
        )));
    }
    let lead_a = a.coef(0, 1);
    let lead_c = c.coef(1, 0);
    let la = lead_a.inv()?;
    let lc = lead_c.inv()?;
    let a1 = a.left_mul(&la);
    let b1 = b.left_mul(&la).right_mul(&lc);
    let c1 = c.right_mul(&lc);
    let v_shift = a1.coef(0, 0).re.clone();
    let u_shift = c1.coef(0, 0).re.clone();
    let (du, dv) = (-u_shift.clone(), -v_shift.clone());
    Ok(Normalized {
        a: a1.shift(&du, &dv),
        b: b1.shift(&du, &dv),
        c: c1.shift(&du, &dv),
        change: ChangeOfVars {
            swapped: false,
            u_shift,
            v_shift,
            left_scale: lead_a,
            right_scale: lead_c,
        },
    })
}

/// Replaces the variable `var` by its reciprocal in a polynomial of degree
/// at most one in it, after multiplying through by the new variable.
fn reciprocal_in(p: &QPoly2, var: Var) -> QPoly2 {
    QPoly2::from_terms(p.terms().map(|(&(du, dv), q)| {
        let key = match var {
            Var::U => (1 - du, dv),
            Var::V => (du, 1 - dv),
        };
        (key, q.clone())
    }))
}

fn constant_term(p: &QPoly2) -> Option<Quat> {
    p.is_constant().then(|| p.coef(0, 0))
}

fn cyclide_of_quotient(n: &QPoly2, d: &QPoly2) -> Result<Classification> {
    let f = restrict_t0(&implicitize_quotient(n, d)?)?;
    let form = darboux_test(&f).ok_or(Error::NotDarboux)?;
    Ok(Classification::DarbouxCyclide { f, form })
}

/// `N·D^-1` in `S^3`: its stereographic image is `(N + D)(N - D)^-1`.
fn quadric_of_quotient(n: &QPoly2, d: &QPoly2) -> Result<Classification> {
    let f = restrict_t0(&implicitize_quotient(&(n + d), &(n - d))?)?;
    let form = darboux_test(&f).ok_or(Error::NotDarboux)?;
    Ok(Classification::QuadricInS3 {
        f_projected: f,
        form,
    })
}

/// Puts `A` in `v` and `C` in `u`, swapping the variables when needed.
fn orient(a: &QPoly2, b: &QPoly2, c: &QPoly2) -> Result<(QPoly2, QPoly2, QPoly2, bool)> {
    if is_linear_in(a, Var::V) && is_linear_in(c, Var::U) {
        Ok((a.clone(), b.clone(), c.clone(), false))
    } else if is_linear_in(a, Var::U) && is_linear_in(c, Var::V) {
        Ok((a.swap_vars(), b.swap_vars(), c.swap_vars(), true))
    } else {
        Err(Error::PatternMismatch(
            "A and C must be linear in different single variables".into(),
        ))
    }
}

fn require_ambient(a: &QPoly2, b: &QPoly2, c: &QPoly2, want: Ambient) -> Result<SurfaceSpec> {
    let spec = SurfaceSpec::Abc {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    };
    spec.validate()?;
    if contains_check(&verification_grid(&spec, AMBIENT_GRID)?) != want {
        return Err(match want {
            Ambient::InS3 => Error::NotInS3,
            _ => Error::NotInImH,
        });
    }
    Ok(spec)
}

/// Classifies `A^-1·B·C^-1` contained in `Im H`.
pub fn classify_r3(a: &QPoly2, b: &QPoly2, c: &QPoly2) -> Result<Classification> {
    let spec = require_ambient(a, b, c, Ambient::InImH)?;
    if let Some(a0) = constant_term(a) {
        return cyclide_of_quotient(&b.left_mul(&a0.inv()?), c);
    }
    if let Some(c0) = constant_term(c) {
        // Φ = -conj(Φ) = (-conj(C)^-1 conj(B)) conj(A)^-1
        let n = -b.conj().left_mul(&c0.conj().inv()?);
        return cyclide_of_quotient(&n, &a.conj());
    }
    let (a, b, c, swapped) = orient(a, b, c)?;
    let norm = normalize_abc(&a, &b, &c)?;
    let av = norm.a.coef(0, 0);
    let cu = norm.c.coef(0, 0);
    if av.is_zero() {
        // v^-1 B(u, v) = D(u, 1/v)
        return cyclide_of_quotient(&reciprocal_in(&norm.b, Var::V), &norm.c);
    }
    if cu.is_zero() {
        // B(u, v) u^-1 = D(1/u, v), then Φ = -conj(D) conj(A)^-1
        let d = reciprocal_in(&norm.b, Var::U);
        return cyclide_of_quotient(&-d.conj(), &norm.a.conj());
    }
    let bn = &norm.b;
    let b_u0 = bn.fix(Var::V, &Rat::zero());
    let b_0v = bn.fix(Var::U, &Rat::zero());
    let b00 = bn.coef(0, 0);
    let ai = av.inv()?;
    let ci = cu.inv()?;
    let phi00 = &ai * &b00 * &ci;
    let residue = bn - &(&norm.a.right_mul(&ai) * &b_u0) - (&b_0v.right_mul(&ci) * &norm.c)
        + (&norm.a * &norm.c.left_mul(&phi00));
    let bcoef = residue.coef(1, 1);
    if residue != QPoly2::monomial(1, 1, bcoef.clone()) {
        return Err(Error::NonpolynomialResidue);
    }
    if !bcoef.is_zero() {
        let normal = av.im_part();
        let p = first_sample(&spec)?;
        let offset = normal.im_dot(&p);
        return Ok(Classification::Planar { normal, offset });
    }
    // Φ(s, t) = Φ(s, 0) + (Φ(0, t) - Φ(0, 0)) in normalized coordinates
    let alpha = MoebiusCurve::left(&ai * &bn.coef(1, 0), &ai * &b00, Quat::one(), cu.clone());
    let beta = MoebiusCurve::right(
        &bn.coef(0, 1) * &ci - &phi00,
        &b00 * &ci - &(&av * &phi00),
        Quat::one(),
        av.clone(),
    );
    let alpha = alpha.shift_param(&norm.change.u_shift);
    let beta = beta.shift_param(&norm.change.v_shift);
    Ok(if swapped {
        Classification::EuclideanTranslational {
            alpha: beta,
            beta: alpha,
        }
    } else {
        Classification::EuclideanTranslational { alpha, beta }
    })
}

fn first_sample(spec: &SurfaceSpec) -> Result<Quat> {
    geom::ladder()
        .take(20)
        .find_map(|u| eval_surface(spec, &u, &Rat::zero()).ok())
        .ok_or_else(|| Error::DegenerateInput("no regular sample point".into()))
}

/// Real `r` with `p = r·q`, if any.
fn real_ratio(p: &RPoly, q: &RPoly) -> Option<Rat> {
    let (e, c) = q.terms().next()?;
    let r = p.coef(e) / c;
    (q.scale(&r) == *p).then_some(r)
}

/// Classifies `A^-1·B·C^-1` contained in `S^3`.
pub fn classify_s3(a: &QPoly2, b: &QPoly2, c: &QPoly2) -> Result<Classification> {
    require_ambient(a, b, c, Ambient::InS3)?;
    if let Some(a0) = constant_term(a) {
        return quadric_of_quotient(&b.left_mul(&a0.inv()?), c);
    }
    if let Some(c0) = constant_term(c) {
        // |Φ| = 1, so Φ = conj(Φ)^-1 = conj(A) · (conj(C)^-1 conj(B))^-1
        return quadric_of_quotient(&a.conj(), &b.conj().left_mul(&c0.conj().inv()?));
    }
    let (a, b, c, swapped) = orient(a, b, c)?;
    let na = a.norm_sq()?;
    let nc = c.norm_sq()?;
    if b.norm_sq()? != &na * &nc {
        return Err(Error::NormIdentityFails);
    }
    let split = split_h11(&b)?;
    let nd = split.d().norm_sq()?;
    let rho = real_ratio(&nd, &na).ok_or_else(|| {
        Error::InternalInconsistency("|D|^2 is not a constant multiple of |A|^2".into())
    })?;
    match split.order {
        SplitOrder::DThenE => {
            let (ac, dc) = (a.conj(), split.d().conj());
            let alpha =
                MoebiusCurve::left(ac.coef(0, 1), ac.coef(0, 0), dc.coef(0, 1), dc.coef(0, 0));
            let e = split.e();
            let beta = MoebiusCurve::left(e.coef(1, 0), e.coef(0, 0), c.coef(1, 0), c.coef(0, 0));
            Ok(Classification::CliffordTranslational {
                alpha,
                beta,
                norm_ratio: rho,
                alpha_var: if swapped { Var::U } else { Var::V },
            })
        }
        SplitOrder::EThenD => {
            let n = (&a.conj() * split.e()).scale(&rho);
            let d = &c * &split.d().conj();
            quadric_of_quotient(&n, &d)
        }
    }
}

/// Detects the ambient space and runs the matching procedure.
pub fn classify(spec: &SurfaceSpec) -> Result<Classification> {
    let (a, b, c) = match spec {
        SurfaceSpec::Abc { a, b, c } => (a.clone(), b.clone(), c.clone()),
        SurfaceSpec::Quotient { a, b } => (QPoly2::one(), a.clone(), b.clone()),
        other => {
            return Err(Error::UnsupportedShape(format!(
                "classification needs an abc or quotient spec, got {}",
                other.kind_name()
            )))
        }
    };
    spec.validate()?;
    match contains_check(&verification_grid(spec, AMBIENT_GRID)?) {
        Ambient::InImH => classify_r3(&a, &b, &c),
        Ambient::InS3 => classify_s3(&a, &b, &c),
        Ambient::Neither => Err(Error::AmbientNeither),
    }
}

/// Re-checks a classification against exact evaluations of the surface on
/// an `n x n` grid.
pub fn verify_classification(spec: &SurfaceSpec, cls: &Classification, n: usize) -> Result<usize> {
    let grid = verification_grid(spec, n)?;
    let fail = |what: &str, u: &Rat, v: &Rat| {
        Err(Error::VerificationFailed(format!("{what} at u={u}, v={v}")))
    };
    let mut checked = 0;
    for gp in &grid.points {
        let (u, v, p) = (&gp.u, &gp.v, &gp.point);
        match cls {
            Classification::DarbouxCyclide { f, .. } => {
                let x = [p.x.clone(), p.y.clone(), p.z.clone()];
                if !p.re.is_zero() || !f.eval(&x).is_zero() {
                    return fail("cyclide equation", u, v);
                }
            }
            Classification::QuadricInS3 { f_projected, .. } => {
                if !p.norm_sq().is_one() {
                    return fail("unit norm", u, v);
                }
                if *p == Quat::one() {
                    continue;
                }
                let q = geom::stereo_to_imh(p)?;
                if !eval_implicit(
                    &crate::implicit::ImplicitQuartic {
                        f: f_projected.clone().with_nvars(4),
                    },
                    &q,
                )
                .is_zero()
                {
                    return fail("projected quadric equation", u, v);
                }
            }
            Classification::EuclideanTranslational { alpha, beta } => {
                let (Ok(x), Ok(y)) = (alpha.eval(u), beta.eval(v)) else {
                    continue;
                };
                if &(&x + &y) != p {
                    return fail("alpha(u) + beta(v)", u, v);
                }
            }
            Classification::CliffordTranslational {
                alpha,
                beta,
                norm_ratio,
                alpha_var,
            } => {
                let (s, t) = match alpha_var {
                    Var::V => (v, u),
                    Var::U => (u, v),
                };
                let (Ok(x), Ok(y)) = (alpha.eval(s), beta.eval(t)) else {
                    continue;
                };
                if &(&x * &y).scale(norm_ratio) != p {
                    return fail("norm_ratio * alpha * beta", u, v);
                }
            }
            Classification::Planar { normal, offset } => {
                if !p.re.is_zero() || &normal.im_dot(p) != offset {
                    return fail("plane equation", u, v);
                }
            }
        }
        checked += 1;
    }
    Ok(checked)
}
