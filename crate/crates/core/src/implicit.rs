//! Implicit equations of quotient surfaces and Darboux cyclide recognition.
//!
//! Points of `H` are written `t + x·i + y·j + z·k`; real polynomials in
//! these coordinates use variable order `(x, y, z, t)`.

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qpoly::{homogenize_11, QPoly2, RPoly};
use crate::quat::Quat;
use crate::rat::{rat, serde_rat, Rat};

pub const VARS: [&str; 4] = ["x", "y", "z", "t"];

/// Quartic (or lower degree) polynomial `F(x, y, z, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitQuartic {
    pub f: RPoly,
}

#[derive(Serialize, Deserialize)]
struct QuarticJson {
    vars: Vec<String>,
    poly: RPoly,
}

impl Serialize for ImplicitQuartic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuarticJson {
            vars: VARS.iter().map(|v| v.to_string()).collect(),
            poly: self.f.clone().with_nvars(4),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ImplicitQuartic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuarticJson::deserialize(d)?;
        if j.vars != VARS {
            return Err(D::Error::custom("variable order must be [x, y, z, t]"));
        }
        if j.poly.nvars() > 4 {
            return Err(D::Error::custom("too many variables"));
        }
        Ok(ImplicitQuartic {
            f: j.poly.with_nvars(4),
        })
    }
}

/// `x^2 + y^2 + z^2` in three variables.
pub fn g3() -> RPoly {
    RPoly::from_terms(
        3,
        [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0]].map(|e| (e, rat(1))),
    )
}

/// Linear form in `(x, y, z, t)` giving component `comp` of `a - X·b`.
fn entry(a: &Quat, b: &Quat, comp: usize) -> RPoly {
    let mut p = RPoly::constant(4, a.components()[comp].clone());
    // X·b = t·b + x·(i b) + y·(j b) + z·(k b)
    let shifted = [
        (0, &Quat::i() * b),
        (1, &Quat::j() * b),
        (2, &Quat::k() * b),
        (3, b.clone()),
    ];
    for (var, q) in shifted {
        let mut e = [0; 4];
        e[var] = 1;
        p.add_term(e, -q.components()[comp].clone());
    }
    p
}

fn det4(m: &[Vec<RPoly>]) -> RPoly {
    fn minor(m: &[Vec<RPoly>], rows: &[usize], col: usize) -> RPoly {
        if rows.len() == 1 {
            return m[rows[0]][col].clone();
        }
        let mut acc = RPoly::zero(4);
        for (idx, &r) in rows.iter().enumerate() {
            if m[r][col].is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let term = &m[r][col] * &minor(m, &rest, col + 1);
            acc = if idx % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }
    minor(m, &[0, 1, 2, 3], 0)
}

/// Quartic vanishing on the surface `A·B^-1`.
///
/// With `X = A·B^-1` the homogenized equation `Ã(u,v,w,s) - X·B̃(u,v,w,s) = 0`
/// is a real 4x4 homogeneous system in `(u, v, w, s)` whose determinant
/// vanishes at every point of the surface.
pub fn implicitize_quotient(a: &QPoly2, b: &QPoly2) -> Result<ImplicitQuartic> {
    if b.is_zero() {
        return Err(Error::DegenerateInput("B is identically zero".into()));
    }
    let ha = homogenize_11(a)?;
    let hb = homogenize_11(b)?;
    let cols: Vec<(&Quat, &Quat)> = ha.coeffs().into_iter().zip(hb.coeffs()).collect();
    let m: Vec<Vec<RPoly>> = (0..4)
        .map(|comp| cols.iter().map(|(ca, cb)| entry(ca, cb, comp)).collect())
        .collect();
    let f = det4(&m);
    debug_assert!(f.total_degree() <= 4);
    if f.is_zero() {
        return Err(Error::IdenticallyZeroDeterminant);
    }
    Ok(ImplicitQuartic { f })
}

pub fn eval_implicit(f: &ImplicitQuartic, p: &Quat) -> Rat {
    f.f.eval(&[p.x.clone(), p.y.clone(), p.z.clone(), p.re.clone()])
}

/// `F(x, y, z, 0)` as a polynomial in three variables.
pub fn restrict_t0(f: &ImplicitQuartic) -> Result<RPoly> {
    let r = f.f.substitute(3, &Rat::zero()).with_nvars(3);
    if r.is_zero() {
        return Err(Error::ZeroRestriction);
    }
    Ok(r)
}

/// `F = a·G^2 + G·L + Q` with `L` linear homogeneous and `deg Q <= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DarbouxForm {
    #[serde(with = "serde_rat")]
    pub a: Rat,
    #[serde(rename = "L")]
    pub l: RPoly,
    #[serde(rename = "Q")]
    pub q: RPoly,
}

impl DarbouxForm {
    pub fn reconstruct(&self) -> RPoly {
        let g = g3();
        &(&(&g * &g).scale(&self.a) + &(&g * &self.l)) + &self.q
    }
}

pub fn darboux_test(f: &RPoly) -> Option<DarbouxForm> {
    if f.is_zero() || f.total_degree() > 4 || f.terms().any(|(e, _)| e[3] != 0) {
        return None;
    }
    let g = g3();
    let f4 = f.homogeneous_part(4);
    let a = f4.coef(&[4, 0, 0, 0]);
    if f4 != (&g * &g).scale(&a) {
        return None;
    }
    let f3 = f.homogeneous_part(3);
    let l = RPoly::from_terms(
        3,
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]].map(|e| {
            let mut cube = e;
            cube.iter_mut().for_each(|x| *x *= 3);
            (e, f3.coef(&cube))
        }),
    );
    if f3 != &g * &l {
        return None;
    }
    let q = (0..=2).fold(RPoly::zero(3), |acc, d| &acc + &f.homogeneous_part(d));
    Some(DarbouxForm { a, l, q })
}

/// Exact quotient by `G = x^2 + y^2 + z^2`, or `None` if `G` does not divide.
pub fn divide_by_g(p: &RPoly) -> Option<RPoly> {
    let mut rem = p.clone().with_nvars(3);
    let mut quot = RPoly::zero(3);
    let g = g3();
    while let Some((e, c)) = rem
        .terms()
        .filter(|(e, _)| e[0] >= 2)
        .max_by_key(|(e, _)| e[0])
        .map(|(e, c)| (*e, c.clone()))
    {
        let mut qe = e;
        qe[0] -= 2;
        let step = RPoly::monomial(3, qe, c);
        rem = &rem - &(&step * &g);
        quot = &quot + &step;
    }
    rem.is_zero().then_some(quot)
}

/// `G^k · F(x/G, y/G, z/G)`, the image of `F = 0` under inversion in the
/// unit sphere.
pub fn invert_image(f: &RPoly, k: u32) -> Result<RPoly> {
    if k > 4 {
        return Err(Error::DomainViolation(format!("k = {k} exceeds 4")));
    }
    let g = g3();
    let top = f.total_degree();
    // G^top · F(x/G, ...) = sum over d of G^(top-d) · F_d
    let mut n = RPoly::zero(3);
    for d in 0..=top {
        n = &n + &(&g.pow(top - d) * &f.homogeneous_part(d));
    }
    if k >= top {
        return Ok(&n * &g.pow(k - top));
    }
    for _ in k..top {
        n = divide_by_g(&n).ok_or(Error::DenominatorNotCleared)?;
    }
    Ok(n)
}
