//! Factoring bidegree-(1,1) quaternionic polynomials whose norm square
//! splits into a `u`-part and a `v`-part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::{separable_test, QPoly2, RPoly};
use crate::quat::Quat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitOrder {
    /// `Q = D(v)·E(u)`
    #[serde(rename = "D_then_E")]
    DThenE,
    /// `Q = E(u)·D(v)`
    #[serde(rename = "E_then_D")]
    EThenD,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitResult {
    pub order: SplitOrder,
    pub left: QPoly2,
    pub right: QPoly2,
    pub witness_q: Quat,
    pub witness_p: Quat,
}

impl SplitResult {
    pub fn product(&self) -> QPoly2 {
        &self.left * &self.right
    }

    /// The factor depending on `v` only.
    pub fn d(&self) -> &QPoly2 {
        match self.order {
            SplitOrder::DThenE => &self.left,
            SplitOrder::EThenD => &self.right,
        }
    }

    /// The factor depending on `u` only.
    pub fn e(&self) -> &QPoly2 {
        match self.order {
            SplitOrder::DThenE => &self.right,
            SplitOrder::EThenD => &self.left,
        }
    }
}

/// Splits `Q = Q00 + Q10·u + Q01·v + Q11·uv` into linear factors in `u`
/// and `v` when `|Q|^2 = P(u)·R(v)`.
///
/// Writing `Q = v·Q1(u) + Q0(u)`, the quaternion `q = -Q10·Q11^-1` makes
/// `q·Q1 + Q0` a constant `p`, so `Q = (v - q)·Q1 + p`.
pub fn split_h11(q_poly: &QPoly2) -> Result<SplitResult> {
    if q_poly.bidegree() != (1, 1) {
        return Err(Error::DegenerateInput(format!(
            "bidegree {:?}, expected (1,1)",
            q_poly.bidegree()
        )));
    }
    let q11 = q_poly.coef(1, 1);
    if q11.is_zero() {
        return Err(Error::DegenerateInput("uv coefficient vanishes".into()));
    }
    if separable_test(&q_poly.norm_sq()?).is_none() {
        return Err(Error::NotSeparable);
    }
    let (q00, q10, q01) = (q_poly.coef(0, 0), q_poly.coef(1, 0), q_poly.coef(0, 1));
    let q = -(&q10 * &q11.inv()?);
    let p = &q * &q01 + &q00;
    let e = QPoly2::bilinear(q01.clone(), q11.clone(), Quat::zero(), Quat::zero());
    let result = if p.is_zero() {
        SplitResult {
            order: SplitOrder::DThenE,
            left: QPoly2::v() - QPoly2::constant(q.clone()),
            right: e,
            witness_q: q,
            witness_p: p,
        }
    } else {
        let pc = p.conj();
        let r = &pc * &q.conj() * pc.inv()?;
        SplitResult {
            order: SplitOrder::EThenD,
            left: e,
            right: QPoly2::v() - QPoly2::constant(r),
            witness_q: q,
            witness_p: p,
        }
    };
    if &result.product() != q_poly {
        return Err(Error::VerificationFailed(format!(
            "{} * {} != {}",
            result.left, result.right, q_poly
        )));
    }
    Ok(result)
}

/// `Q = X1 + i·X2 + j·X3 + k·X4` and the defect `|Q|^2 - (X6^2 - X5^2)`.
pub fn six_tuple_to_quat(x: &[RPoly; 6]) -> Result<(QPoly2, RPoly)> {
    let q = QPoly2::from_components([&x[0], &x[1], &x[2], &x[3]]);
    let defect = &q.norm_sq()? - &(&(&x[5] * &x[5]) - &(&x[4] * &x[4]));
    Ok((q, defect.with_nvars(2)))
}

fn pure_quadratic(p: &RPoly, var: usize) -> bool {
    let other = 1 - var;
    p.degree_in(var) == 2 && p.degree_in(other) == 0
}

/// Splits the quaternion built from a Pythagorean 6-tuple.
///
/// Requires `X6 + X5` and `X6 - X5` to be quadratics in different single
/// variables (either arrangement) and the tuple relation to hold exactly.
pub fn cor_splitting(x: &[RPoly; 6]) -> Result<SplitResult> {
    let violated = |m: &str| Err(Error::HypothesisViolated(m.into()));
    for (idx, xi) in x[..4].iter().enumerate() {
        let (du, dv) = xi.bidegree();
        if du > 1 || dv > 1 || xi.total_degree() > 2 {
            return violated(&format!("X{} exceeds bidegree (1,1)", idx + 1));
        }
    }
    for (idx, xi) in x[4..].iter().enumerate() {
        let (du, dv) = xi.bidegree();
        if du > 2 || dv > 2 {
            return violated(&format!("X{} exceeds bidegree (2,2)", idx + 5));
        }
    }
    let sum = &x[5] + &x[4];
    let diff = &x[5] - &x[4];
    let arranged = (pure_quadratic(&sum, 0) && pure_quadratic(&diff, 1))
        || (pure_quadratic(&sum, 1) && pure_quadratic(&diff, 0));
    if !arranged {
        return violated("X6 +/- X5 are not quadratics in separate variables");
    }
    let (q, defect) = six_tuple_to_quat(x)?;
    if !defect.is_zero() {
        return violated("tuple relation X1^2+X2^2+X3^2+X4^2+X5^2 = X6^2 fails");
    }
    split_h11(&q)
}
