//! Polynomial rings: `H[u,v]` with quaternion coefficients and real
//! multivariate polynomials in up to four variables.
//!
//! The real variables `u`, `v` commute with every coefficient, so a product
//! of two `QPoly2` values only has to respect the coefficient order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::quat::Quat;
use crate::rat::{rat, serde_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::U => Var::V,
            Var::V => Var::U,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::V => 1,
        }
    }
}

// ---------------------------------------------------------------------------
// Real multivariate polynomials
// ---------------------------------------------------------------------------

pub const MAX_VARS: usize = 4;
pub type Exps = [u32; MAX_VARS];

/// Sparse polynomial with rational coefficients in `nvars <= 4` variables.
///
/// Unused exponent slots are always zero, so polynomials with different
/// `nvars` combine as if the smaller one were embedded in the larger ring.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RPoly {
    nvars: usize,
    terms: BTreeMap<Exps, Rat>,
}

impl RPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        RPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        RPoly::monomial(nvars, [0; MAX_VARS], c)
    }

    pub fn one(nvars: usize) -> Self {
        RPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars);
        let mut e = [0; MAX_VARS];
        e[idx] = 1;
        RPoly::monomial(nvars, e, Rat::one())
    }

    pub fn monomial(nvars: usize, exps: Exps, c: Rat) -> Self {
        let mut p = RPoly::zero(nvars);
        debug_assert!(exps[nvars..].iter().all(|&e| e == 0));
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Bivariate monomial `c·u^du·v^dv`.
    pub fn uv(du: u32, dv: u32, c: Rat) -> Self {
        RPoly::monomial(2, [du, dv, 0, 0], c)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, Rat)>) -> Self {
        let mut p = RPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        assert!(self
            .terms
            .keys()
            .all(|e| e[nvars..].iter().all(|&x| x == 0)));
        self.nvars = nvars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn coef(&self, exps: &Exps) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    /// `(deg_u, deg_v)` for bivariate polynomials.
    pub fn bidegree(&self) -> (u32, u32) {
        (self.degree_in(0), self.degree_in(1))
    }

    pub fn scale(&self, s: &Rat) -> RPoly {
        if s.is_zero() {
            return RPoly::zero(self.nvars);
        }
        RPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> RPoly {
        let mut acc = RPoly::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (idx, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[idx].clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> RPoly {
        RPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `value` for variable `idx`; the variable slot remains
    /// (with exponent zero) so `nvars` is unchanged.
    pub fn substitute(&self, idx: usize, value: &Rat) -> RPoly {
        let mut out = RPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[idx] = 0;
            out.add_term(e2, c * num_traits::pow(value.clone(), e[idx] as usize));
        }
        out
    }

    /// Exchanges variables `a` and `b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> RPoly {
        RPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2.swap(a, b);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    fn combine(&self, other: &RPoly, sign: bool) -> RPoly {
        let mut out = RPoly {
            nvars: self.nvars.max(other.nvars),
            terms: self.terms.clone(),
        };
        for (e, c) in &other.terms {
            out.add_term(*e, if sign { c.clone() } else { -c });
        }
        out
    }

    fn product(&self, other: &RPoly) -> RPoly {
        let mut out = RPoly::zero(self.nvars.max(other.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for (x, y) in e.iter_mut().zip(e2) {
                    *x += y;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Add<&RPoly> for &RPoly {
    type Output = RPoly;
    fn add(self, rhs: &RPoly) -> RPoly {
        self.combine(rhs, true)
    }
}

impl Sub<&RPoly> for &RPoly {
    type Output = RPoly;
    fn sub(self, rhs: &RPoly) -> RPoly {
        self.combine(rhs, false)
    }
}

impl Mul<&RPoly> for &RPoly {
    type Output = RPoly;
    fn mul(self, rhs: &RPoly) -> RPoly {
        self.product(rhs)
    }
}

impl Add for RPoly {
    type Output = RPoly;
    fn add(self, rhs: RPoly) -> RPoly {
        &self + &rhs
    }
}

impl Sub for RPoly {
    type Output = RPoly;
    fn sub(self, rhs: RPoly) -> RPoly {
        &self - &rhs
    }
}

impl Mul for RPoly {
    type Output = RPoly;
    fn mul(self, rhs: RPoly) -> RPoly {
        &self * &rhs
    }
}

impl Neg for &RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        self.scale(&rat(-1))
    }
}

impl Neg for RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        -&self
    }
}

const VAR_NAMES_UV: [&str; 4] = ["u", "v", "w", "s"];
const VAR_NAMES_XYZT: [&str; 4] = ["x", "y", "z", "t"];

impl RPoly {
    /// Human-readable form using the given variable names.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            if mono.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
                if !mono.is_empty() {
                    out.push('*');
                }
            }
            out.push_str(&mono.join("*"));
        }
        out
    }

    pub fn display_xyzt(&self) -> String {
        self.display_with(&VAR_NAMES_XYZT)
    }
}

impl fmt::Display for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&VAR_NAMES_UV))
    }
}

#[derive(Serialize, Deserialize)]
struct RTermJson {
    exps: Vec<u32>,
    #[serde(with = "serde_rat")]
    coef: Rat,
}

impl Serialize for RPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<RTermJson> = self
            .terms
            .iter()
            .map(|(e, c)| RTermJson {
                exps: e[..self.nvars].to_vec(),
                coef: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<RTermJson>::deserialize(d)?;
        let nvars = terms.first().map_or(0, |t| t.exps.len());
        if nvars > MAX_VARS {
            return Err(D::Error::custom("at most four variables"));
        }
        let mut p = RPoly::zero(nvars);
        for t in terms {
            if t.exps.len() != nvars {
                return Err(D::Error::custom("inconsistent exponent vector lengths"));
            }
            let mut e = [0; MAX_VARS];
            e[..nvars].copy_from_slice(&t.exps);
            p.add_term(e, t.coef);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Quaternion-coefficient bivariate polynomials
// ---------------------------------------------------------------------------

/// Element of `H[u,v]`, stored as a sparse map `(du, dv) -> coefficient`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly2 {
    terms: BTreeMap<(u32, u32), Quat>,
}

impl QPoly2 {
    pub fn zero() -> Self {
        QPoly2::default()
    }

    pub fn constant(q: Quat) -> Self {
        QPoly2::monomial(0, 0, q)
    }

    pub fn one() -> Self {
        QPoly2::constant(Quat::one())
    }

    pub fn u() -> Self {
        QPoly2::monomial(1, 0, Quat::one())
    }

    pub fn v() -> Self {
        QPoly2::monomial(0, 1, Quat::one())
    }

    pub fn monomial(du: u32, dv: u32, q: Quat) -> Self {
        let mut p = QPoly2::zero();
        p.add_term(du, dv, &q);
        p
    }

    /// `a·x + b` in a single variable.
    pub fn linear(var: Var, a: Quat, b: Quat) -> Self {
        let mut p = QPoly2::constant(b);
        match var {
            Var::U => p.add_term(1, 0, &a),
            Var::V => p.add_term(0, 1, &a),
        }
        p
    }

    /// `q00 + q10·u + q01·v + q11·uv`.
    pub fn bilinear(q00: Quat, q10: Quat, q01: Quat, q11: Quat) -> Self {
        QPoly2::from_terms([((0, 0), q00), ((1, 0), q10), ((0, 1), q01), ((1, 1), q11)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Quat)>) -> Self {
        let mut p = QPoly2::zero();
        for ((du, dv), q) in terms {
            p.add_term(du, dv, &q);
        }
        p
    }

    /// Embeds a real bivariate polynomial.
    pub fn from_real(p: &RPoly) -> Self {
        QPoly2::from_terms(
            p.terms()
                .map(|(e, c)| ((e[0], e[1]), Quat::real(c.clone()))),
        )
    }

    /// `X1 + i·X2 + j·X3 + k·X4`.
    pub fn from_components(x: [&RPoly; 4]) -> Self {
        let units = [Quat::one(), Quat::i(), Quat::j(), Quat::k()];
        let mut out = QPoly2::zero();
        for (p, unit) in x.into_iter().zip(units) {
            for (e, c) in p.terms() {
                out.add_term(e[0], e[1], &unit.scale(c));
            }
        }
        out
    }

    /// The four real component polynomials.
    pub fn components(&self) -> [RPoly; 4] {
        let mut out = [
            RPoly::zero(2),
            RPoly::zero(2),
            RPoly::zero(2),
            RPoly::zero(2),
        ];
        for (&(du, dv), q) in &self.terms {
            for (slot, c) in out.iter_mut().zip(q.components()) {
                slot.add_term([du, dv, 0, 0], c.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, du: u32, dv: u32, q: &Quat) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry((du, dv)).or_default();
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&(du, dv));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Quat)> {
        self.terms.iter()
    }

    pub fn coef(&self, du: u32, dv: u32) -> Quat {
        self.terms.get(&(du, dv)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(du, dv)| (a.max(du), b.max(dv)))
    }

    pub fn depends_on(&self, var: Var) -> bool {
        let (du, dv) = self.bidegree();
        match var {
            Var::U => du > 0,
            Var::V => dv > 0,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.bidegree() == (0, 0)
    }

    pub fn fits(&self, max: (u32, u32)) -> bool {
        let (du, dv) = self.bidegree();
        du <= max.0 && dv <= max.1
    }

    pub fn conj(&self) -> QPoly2 {
        QPoly2 {
            terms: self.terms.iter().map(|(k, q)| (*k, q.conj())).collect(),
        }
    }

    /// `q·P`.
    pub fn left_mul(&self, q: &Quat) -> QPoly2 {
        QPoly2::from_terms(self.terms.iter().map(|(k, c)| (*k, q * c)))
    }

    /// `P·q`.
    pub fn right_mul(&self, q: &Quat) -> QPoly2 {
        QPoly2::from_terms(self.terms.iter().map(|(k, c)| (*k, c * q)))
    }

    pub fn scale(&self, s: &Rat) -> QPoly2 {
        QPoly2::from_terms(self.terms.iter().map(|(k, c)| (*k, c.scale(s))))
    }

    pub fn mul_real(&self, r: &RPoly) -> QPoly2 {
        self * &QPoly2::from_real(r)
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Quat {
        let mut acc = Quat::zero();
        for (&(du, dv), c) in &self.terms {
            let s =
                num_traits::pow(u.clone(), du as usize) * num_traits::pow(v.clone(), dv as usize);
            acc += &c.scale(&s);
        }
        acc
    }

    /// Fixes one variable; the result depends on the other one only.
    pub fn fix(&self, var: Var, value: &Rat) -> QPoly2 {
        let mut out = QPoly2::zero();
        for (&(du, dv), c) in &self.terms {
            match var {
                Var::U => out.add_term(
                    0,
                    dv,
                    &c.scale(&num_traits::pow(value.clone(), du as usize)),
                ),
                Var::V => out.add_term(
                    du,
                    0,
                    &c.scale(&num_traits::pow(value.clone(), dv as usize)),
                ),
            }
        }
        out
    }

    pub fn swap_vars(&self) -> QPoly2 {
        QPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), q)| ((b, a), q.clone()))
                .collect(),
        }
    }

    /// `P(u + du_shift, v + dv_shift)`.
    pub fn shift(&self, u_shift: &Rat, v_shift: &Rat) -> QPoly2 {
        let mut out = QPoly2::zero();
        for (&(du, dv), c) in &self.terms {
            for a in 0..=du {
                for b in 0..=dv {
                    let s = Rat::from_integer(binomial(du, a) * binomial(dv, b))
                        * num_traits::pow(u_shift.clone(), (du - a) as usize)
                        * num_traits::pow(v_shift.clone(), (dv - b) as usize);
                    out.add_term(a, b, &c.scale(&s));
                }
            }
        }
        out
    }

    /// Coefficients of the single-variable polynomial, lowest degree first.
    pub fn coeffs_in(&self, var: Var) -> Vec<Quat> {
        debug_assert!(!self.depends_on(var.other()));
        let n = match var {
            Var::U => self.bidegree().0,
            Var::V => self.bidegree().1,
        };
        (0..=n)
            .map(|d| match var {
                Var::U => self.coef(d, 0),
                Var::V => self.coef(0, d),
            })
            .collect()
    }

    /// `|P|^2 = P·conj(P)` as a real polynomial.
    pub fn norm_sq(&self) -> Result<RPoly> {
        let prod = self * &self.conj();
        let mut out = RPoly::zero(2);
        for (&(du, dv), c) in &prod.terms {
            if !c.is_real() {
                return Err(Error::InternalInconsistency(format!(
                    "non-real coefficient {c} of u^{du} v^{dv} in P*conj(P)"
                )));
            }
            out.add_term([du, dv, 0, 0], c.re.clone());
        }
        Ok(out)
    }

    fn product(&self, other: &QPoly2) -> QPoly2 {
        let mut out = QPoly2::zero();
        for (&(a, b), p) in &self.terms {
            for (&(c, d), q) in &other.terms {
                out.add_term(a + c, b + d, &(p * q));
            }
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl Mul<&QPoly2> for &QPoly2 {
    type Output = QPoly2;
    fn mul(self, rhs: &QPoly2) -> QPoly2 {
        self.product(rhs)
    }
}

impl Mul for QPoly2 {
    type Output = QPoly2;
    fn mul(self, rhs: QPoly2) -> QPoly2 {
        self.product(&rhs)
    }
}

impl Add<&QPoly2> for &QPoly2 {
    type Output = QPoly2;
    fn add(self, rhs: &QPoly2) -> QPoly2 {
        let mut out = self.clone();
        for (&(a, b), q) in &rhs.terms {
            out.add_term(a, b, q);
        }
        out
    }
}

impl Add for QPoly2 {
    type Output = QPoly2;
    fn add(self, rhs: QPoly2) -> QPoly2 {
        &self + &rhs
    }
}

impl Sub<&QPoly2> for &QPoly2 {
    type Output = QPoly2;
    fn sub(self, rhs: &QPoly2) -> QPoly2 {
        let mut out = self.clone();
        for (&(a, b), q) in &rhs.terms {
            out.add_term(a, b, &-q);
        }
        out
    }
}

impl Sub for QPoly2 {
    type Output = QPoly2;
    fn sub(self, rhs: QPoly2) -> QPoly2 {
        &self - &rhs
    }
}

impl Neg for &QPoly2 {
    type Output = QPoly2;
    fn neg(self) -> QPoly2 {
        self.scale(&rat(-1))
    }
}

impl Neg for QPoly2 {
    type Output = QPoly2;
    fn neg(self) -> QPoly2 {
        -&self
    }
}

impl fmt::Display for QPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(du, dv), q)| {
                let mono = match (du, dv) {
                    (0, 0) => String::new(),
                    _ => {
                        let p = |n: &str, d: u32| match d {
                            0 => String::new(),
                            1 => n.to_string(),
                            _ => format!("{n}^{d}"),
                        };
                        format!("*{}{}", p("u", du), p("v", dv))
                    }
                };
                format!("({q}){mono}")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct QTermJson {
    du: u32,
    dv: u32,
    coef: Quat,
}

impl Serialize for QPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<QTermJson> = self
            .terms
            .iter()
            .map(|(&(du, dv), q)| QTermJson {
                du,
                dv,
                coef: q.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<QTermJson>::deserialize(d)?;
        Ok(QPoly2::from_terms(
            terms.into_iter().map(|t| ((t.du, t.dv), t.coef)),
        ))
    }
}

// ---------------------------------------------------------------------------
// Substitution, homogenization, separability
// ---------------------------------------------------------------------------

/// Substitutes the quaternion `q` for `var` in the real polynomial `f`.
/// Real coefficients commute with `q`, so the substitution is well defined.
pub fn subst_quat(f: &RPoly, var: Var, q: &Quat) -> QPoly2 {
    let mut out = QPoly2::zero();
    for (e, c) in f.terms() {
        let (keep, replaced) = match var {
            Var::U => ((0, e[1]), e[0]),
            Var::V => ((e[0], 0), e[1]),
        };
        out.add_term(keep.0, keep.1, &q.pow(replaced).scale(c));
    }
    out
}

/// Linear form `c_u·u + c_v·v + c_w·w + c_s·s` with `A(u,v) = Ã(u, v, uv, 1)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomLinearQuat {
    pub c_u: Quat,
    pub c_v: Quat,
    pub c_w: Quat,
    pub c_s: Quat,
}

impl HomLinearQuat {
    pub fn coeffs(&self) -> [&Quat; 4] {
        [&self.c_u, &self.c_v, &self.c_w, &self.c_s]
    }

    pub fn eval(&self, u: &Rat, v: &Rat, w: &Rat, s: &Rat) -> Quat {
        self.c_u.scale(u) + self.c_v.scale(v) + self.c_w.scale(w) + self.c_s.scale(s)
    }

    pub fn dehomogenize(&self) -> QPoly2 {
        QPoly2::bilinear(
            self.c_s.clone(),
            self.c_u.clone(),
            self.c_v.clone(),
            self.c_w.clone(),
        )
    }
}

pub fn homogenize_11(a: &QPoly2) -> Result<HomLinearQuat> {
    if !a.fits((1, 1)) {
        return Err(Error::BidegreeTooHigh(a.bidegree()));
    }
    Ok(HomLinearQuat {
        c_u: a.coef(1, 0),
        c_v: a.coef(0, 1),
        c_w: a.coef(1, 1),
        c_s: a.coef(0, 0),
    })
}

/// Decides whether `f(u,v) = P(u)·R(v)`.
///
/// The coefficient matrix `M[i][j]` (coefficient of `u^i v^j`) has rank one
/// exactly when `f` is separable. `P` is returned monic.
pub fn separable_test(f: &RPoly) -> Option<(RPoly, RPoly)> {
    if f.is_zero() || f.terms().any(|(e, _)| e[2] != 0 || e[3] != 0) {
        return None;
    }
    let (du, dv) = f.bidegree();
    let m: Vec<Vec<Rat>> = (0..=du)
        .map(|i| (0..=dv).map(|j| f.coef(&[i, j, 0, 0])).collect())
        .collect();
    if linalg::rank(&m) != 1 {
        return None;
    }
    let j0 = (0..=dv as usize).find(|&j| m.iter().any(|row| !row[j].is_zero()))?;
    let lead_row = (0..=du as usize).rev().find(|&i| !m[i][j0].is_zero())?;
    let lead = m[lead_row][j0].clone();
    let p = RPoly::from_terms(
        2,
        (0..=du).map(|i| ([i, 0, 0, 0], &m[i as usize][j0] / &lead)),
    );
    let r = RPoly::from_terms(
        2,
        (0..=dv).map(|j| ([0, j, 0, 0], m[lead_row][j as usize].clone())),
    );
    debug_assert_eq!(&(&p * &r), f);
    if &(&p * &r) != f {
        return None;
    }
    Some((p, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;
    use proptest::prelude::*;

    fn u() -> QPoly2 {
        QPoly2::u()
    }
    fn v() -> QPoly2 {
        QPoly2::v()
    }
    fn c(q: Quat) -> QPoly2 {
        QPoly2::constant(q)
    }
    fn ru(d: u32, cf: i64) -> RPoly {
        RPoly::uv(d, 0, rat(cf))
    }
    fn rv(d: u32, cf: i64) -> RPoly {
        RPoly::uv(0, d, rat(cf))
    }

    pub(crate) fn beauregard() -> QPoly2 {
        QPoly2::from_terms([
            ((2, 2), Quat::one()),
            ((0, 0), -Quat::one()),
            ((2, 0), Quat::i()),
            ((0, 2), -Quat::i()),
            ((1, 1), Quat::j().scale(&rat(2))),
        ])
    }

    #[test]
    fn product_of_linear_factors() {
        // (v - i)(u + j) = uv + j v - i u - k
        let p = (v() - c(Quat::i())) * (u() + c(Quat::j()));
        let expected = QPoly2::bilinear(-Quat::k(), -Quat::i(), Quat::j(), Quat::one());
        assert_eq!(p, expected);
        assert_eq!(&p * &QPoly2::one(), p);
        let m = QPoly2::monomial(1, 0, Quat::i()) * QPoly2::monomial(1, 0, Quat::j());
        assert_eq!(m, QPoly2::monomial(2, 0, Quat::k()));
    }

    #[test]
    fn beauregard_norm_square() {
        let expect = &(&ru(4, 1) + &ru(0, 1)) * &(&rv(4, 1) + &rv(0, 1));
        assert_eq!(beauregard().norm_sq().unwrap(), expect);
        let (p, r) = separable_test(&expect).unwrap();
        assert_eq!(p, &ru(4, 1) + &ru(0, 1));
        assert_eq!(r, &rv(4, 1) + &rv(0, 1));
    }

    #[test]
    fn norm_square_examples() {
        assert_eq!(QPoly2::one().norm_sq().unwrap(), RPoly::one(2));
        let q = u() + QPoly2::monomial(0, 1, Quat::i());
        assert_eq!(q.norm_sq().unwrap(), &ru(2, 1) + &rv(2, 1));
    }

    #[test]
    fn evaluation() {
        let p = QPoly2::monomial(1, 1, Quat::k());
        assert_eq!(p.eval(&rat(2), &rat(3)), Quat::int(0, 0, 0, 6));
        // (u - i)((2j + i)v - 2i - j) at (0,0) is -2 + k
        let torus_num = (u() - c(Quat::i()))
            * (QPoly2::monomial(0, 1, Quat::int(0, 1, 2, 0)) - c(Quat::int(0, 2, 1, 0)));
        assert_eq!(torus_num.eval(&rat(0), &rat(0)), Quat::int(-2, 0, 0, 1));
        assert_eq!(torus_num.eval(&rat(0), &rat(0)), torus_num.coef(0, 0));
    }

    #[test]
    fn quaternion_substitution() {
        assert_eq!(subst_quat(&rv(2, 1), Var::V, &Quat::i()), c(-Quat::one()));
        let f = &ru(2, 1) + &rv(2, 1);
        assert_eq!(
            subst_quat(&f, Var::V, &Quat::j()),
            u() * u() - QPoly2::one()
        );
        let g = &(&ru(2, 1) + &ru(0, 1)) * &(&rv(2, 1) + &rv(0, 1));
        assert!(subst_quat(&g, Var::V, &Quat::k()).is_zero());
    }

    #[test]
    fn homogenization() {
        let h = homogenize_11(&(u() + v())).unwrap();
        assert_eq!(
            (h.c_u.clone(), h.c_v.clone(), h.c_w.clone(), h.c_s.clone()),
            (Quat::one(), Quat::one(), Quat::zero(), Quat::zero())
        );
        let a = QPoly2::monomial(1, 1, Quat::i()) + c(Quat::j());
        let h = homogenize_11(&a).unwrap();
        assert_eq!(h.c_w, Quat::i());
        assert_eq!(h.c_s, Quat::j());
        assert!(h.c_u.is_zero() && h.c_v.is_zero());
        assert_eq!(
            homogenize_11(&(u() * u())),
            Err(Error::BidegreeTooHigh((2, 0)))
        );
    }

    #[test]
    fn separability() {
        let f = &(&ru(2, 1) + &ru(0, 1)) * &(&rv(2, 1) + &rv(0, 1));
        let (p, r) = separable_test(&f).unwrap();
        assert_eq!(p, &ru(2, 1) + &ru(0, 1));
        assert_eq!(r, &rv(2, 1) + &rv(0, 1));
        // u^2 v^2 + 1: the corner 2x2 minor of the coefficient matrix is 1
        let g = &RPoly::uv(2, 2, rat(1)) + &RPoly::one(2);
        assert!(separable_test(&g).is_none());
    }

    #[test]
    fn separable_factor_is_monic() {
        // (2u + 4)(3v - 1)
        let f = &(&ru(1, 2) + &ru(0, 4)) * &(&rv(1, 3) - &rv(0, 1));
        let (p, r) = separable_test(&f).unwrap();
        assert_eq!(p, &ru(1, 1) + &ru(0, 2));
        assert_eq!(r, &rv(1, 6) - &rv(0, 2));
    }

    #[test]
    fn json_shapes() {
        let p = QPoly2::monomial(1, 0, Quat::i());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"du":1,"dv":0,"coef":["0/1","1/1","0/1","0/1"]}]"#);
        assert_eq!(serde_json::from_str::<QPoly2>(&s).unwrap(), p);
        let r = RPoly::uv(2, 1, ratio(-3, 4));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"[{"exps":[2,1],"coef":"-3/4"}]"#);
        assert_eq!(serde_json::from_str::<RPoly>(&s).unwrap(), r);
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = beauregard();
        let s = p.shift(&rat(2), &ratio(-1, 3));
        for (a, b) in [(0, 0), (1, 2), (-3, 5)] {
            let (a, b) = (rat(a), rat(b));
            assert_eq!(s.eval(&a, &b), p.eval(&(&a + rat(2)), &(&b - ratio(1, 3))));
        }
    }

    pub(crate) fn arb_quat() -> impl Strategy<Value = Quat> {
        prop::array::uniform4(-3i64..4).prop_map(|c| Quat::int(c[0], c[1], c[2], c[3]))
    }

    pub(crate) fn arb_qpoly22() -> impl Strategy<Value = QPoly2> {
        prop::collection::vec(((0u32..3, 0u32..3), arb_quat()), 0..6).prop_map(QPoly2::from_terms)
    }

    fn arb_rpoly1(var: usize) -> impl Strategy<Value = RPoly> {
        prop::collection::vec(-3i64..4, 1..4).prop_map(move |cs| {
            RPoly::from_terms(
                2,
                cs.into_iter().enumerate().map(|(d, c)| {
                    let mut e = [0; 4];
                    e[var] = d as u32;
                    (e, rat(c))
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn conj_reverses_products(p in arb_qpoly22(), q in arb_qpoly22()) {
            prop_assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
        }

        #[test]
        fn norm_square_is_multiplicative(p in arb_qpoly22(), q in arb_qpoly22()) {
            let lhs = (&p * &q).norm_sq().unwrap();
            let rhs = &p.norm_sq().unwrap() * &q.norm_sq().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn eval_is_a_homomorphism(p in arb_qpoly22(), q in arb_qpoly22(), a in -4i64..5, b in 1i64..4) {
            let (x, y) = (ratio(a, b), ratio(b, 3));
            prop_assert_eq!((&p * &q).eval(&x, &y), p.eval(&x, &y) * q.eval(&x, &y));
        }

        #[test]
        fn separable_products_are_recovered(p in arb_rpoly1(0), r in arb_rpoly1(1)) {
            prop_assume!(!p.is_zero() && !r.is_zero());
            let f = &p * &r;
            let (p2, r2) = separable_test(&f).unwrap();
            prop_assert_eq!(&p2 * &r2, f);
        }

        #[test]
        fn homogenize_roundtrip(c in prop::array::uniform4(arb_quat())) {
            let [a, b, cc, d] = c;
            let p = QPoly2::bilinear(a, b, cc, d);
            prop_assert_eq!(homogenize_11(&p).unwrap().dehomogenize(), p);
        }
    }
}
