//! Seeded generators of random test inputs with small integer entries.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{MoebiusCurve, Side};
use crate::implicit::{g3, DarbouxForm};
use crate::pythagorean::PythSeed;
use crate::qpoly::{QPoly2, RPoly, Var};
use crate::quat::Quat;
use crate::rat::rat;
use crate::surface::SurfaceSpec;

pub type Gen = ChaCha8Rng;

pub fn seeded(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `-bound..=bound`.
pub fn small(rng: &mut Gen, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn quat(rng: &mut Gen, bound: i64) -> Quat {
    Quat::int(
        small(rng, bound),
        small(rng, bound),
        small(rng, bound),
        small(rng, bound),
    )
}

pub fn nonzero_quat(rng: &mut Gen, bound: i64) -> Quat {
    loop {
        let q = quat(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn imaginary(rng: &mut Gen, bound: i64) -> Quat {
    quat(rng, bound).im_part()
}

pub fn nonzero_imaginary(rng: &mut Gen, bound: i64) -> Quat {
    loop {
        let q = imaginary(rng, bound);
        if !q.is_zero() {
            return q;
        }
    }
}

/// `a·x + b` with `a != 0`.
pub fn linear(rng: &mut Gen, var: Var, bound: i64) -> QPoly2 {
    QPoly2::linear(var, nonzero_quat(rng, bound), quat(rng, bound))
}

pub fn bilinear(rng: &mut Gen, bound: i64) -> QPoly2 {
    QPoly2::bilinear(
        quat(rng, bound),
        quat(rng, bound),
        quat(rng, bound),
        quat(rng, bound),
    )
}

pub fn nonzero_bilinear(rng: &mut Gen, bound: i64) -> QPoly2 {
    loop {
        let p = bilinear(rng, bound);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Circle in `Im H` written `f + g·(t + h)^-1` (left) or `f + (t + h)^-1·g`
/// (right), returned in the `(a t + b)(c t + d)^-1` layout.
///
/// Staying in `Im H` needs `f, g` imaginary and `g ⊥ Im h`.
pub fn imh_circle(rng: &mut Gen, side: Side, bound: i64) -> MoebiusCurve {
    let f = imaginary(rng, bound);
    let (hi, g) = loop {
        let hi = nonzero_imaginary(rng, bound);
        let g = hi.im_cross(&nonzero_imaginary(rng, bound));
        if !g.is_zero() {
            break (hi, g);
        }
    };
    let h = &Quat::real(rat(small(rng, bound))) + &hi;
    match side {
        Side::Left => MoebiusCurve::left(f.clone(), &(&f * &h) + &g, Quat::one(), h),
        Side::Right => MoebiusCurve::right(f.clone(), &(&h * &f) + &g, Quat::one(), h),
    }
}

/// ABC data of `alpha(u) + beta(v)` for a left curve `alpha = P·C^-1` and a
/// right curve `beta = A^-1·R`: `B = A·P + R·C`.
pub fn encode_euclidean(alpha: &MoebiusCurve, beta: &MoebiusCurve) -> SurfaceSpec {
    assert_eq!(alpha.side, Side::Left);
    assert_eq!(beta.side, Side::Right);
    let p = QPoly2::linear(Var::U, alpha.a.clone(), alpha.b.clone());
    let c = QPoly2::linear(Var::U, alpha.c.clone(), alpha.d.clone());
    let r = QPoly2::linear(Var::V, beta.a.clone(), beta.b.clone());
    let a = QPoly2::linear(Var::V, beta.c.clone(), beta.d.clone());
    let b = &(&a * &p) + &(&r * &c);
    SurfaceSpec::Abc { a, b, c }
}

/// `A(v)^-1 · B(u, v) · C(u)^-1` with random entries.
pub fn abc_spec(rng: &mut Gen, bound: i64) -> SurfaceSpec {
    SurfaceSpec::Abc {
        a: linear(rng, Var::V, bound),
        b: nonzero_bilinear(rng, bound),
        c: linear(rng, Var::U, bound),
    }
}

pub fn quotient_spec(rng: &mut Gen, bound: i64) -> SurfaceSpec {
    SurfaceSpec::Quotient {
        a: nonzero_bilinear(rng, bound),
        b: nonzero_bilinear(rng, bound),
    }
}

/// `(D(v), E(u))` with nonzero leading coefficients.
pub fn split_factors(rng: &mut Gen, bound: i64) -> (QPoly2, QPoly2) {
    (linear(rng, Var::V, bound), linear(rng, Var::U, bound))
}

/// Seeds drawn from shapes that keep `|B|^2 D` and `|AC|^2 D` within
/// bidegree (2,2).
pub fn pyth_seed(rng: &mut Gen, bound: i64) -> PythSeed {
    let q = |rng: &mut Gen| quat(rng, bound);
    let lin = |rng: &mut Gen, var| QPoly2::linear(var, quat(rng, bound), quat(rng, bound));
    match rng.gen_range(0..3) {
        0 => PythSeed {
            a: lin(rng, Var::U),
            b: bilinear(rng, bound),
            c: lin(rng, Var::V),
            d: RPoly::constant(2, rat(small(rng, bound))),
        },
        1 => PythSeed {
            a: bilinear(rng, bound),
            b: bilinear(rng, bound),
            c: QPoly2::constant(q(rng)),
            d: RPoly::constant(2, rat(small(rng, bound))),
        },
        _ => {
            let d = RPoly::from_terms(2, (0..3).map(|k| ([k, 0, 0, 0], rat(small(rng, bound)))));
            PythSeed {
                a: lin(rng, Var::V),
                b: lin(rng, Var::V),
                c: QPoly2::constant(q(rng)),
                d,
            }
        }
    }
}

/// Random `a·G^2 + G·L + Q` in `(x, y, z)`, with `a != 0`.
pub fn darboux_form(rng: &mut Gen, bound: i64) -> DarbouxForm {
    let a = loop {
        let a = small(rng, bound);
        if a != 0 {
            break rat(a);
        }
    };
    let l = RPoly::from_terms(3, (0..3).map(|i| (exps(&[i]), rat(small(rng, bound)))));
    let mut q = RPoly::constant(3, rat(small(rng, bound)));
    for i in 0..3 {
        q.add_term(exps(&[i]), rat(small(rng, bound)));
        for j in i..3 {
            q.add_term(exps(&[i, j]), rat(small(rng, bound)));
        }
    }
    DarbouxForm { a, l, q }
}

fn exps(vars: &[usize]) -> [u32; 4] {
    let mut e = [0; 4];
    for &i in vars {
        e[i] += 1;
    }
    e
}

/// Adds a nonzero multiple of a random degree-4 monomial, which no
/// multiple of `G^2` can absorb.
pub fn perturb_quartic(rng: &mut Gen, f: &RPoly, bound: i64) -> RPoly {
    let quartics: Vec<[u32; 4]> = (0..=4u32)
        .flat_map(|x| (0..=4 - x).map(move |y| [x, y, 4 - x - y, 0]))
        .collect();
    let e = quartics[rng.gen_range(0..quartics.len())];
    let c = loop {
        let c = small(rng, bound);
        if c != 0 {
            break rat(c);
        }
    };
    let out = f + &RPoly::monomial(3, e, c);
    debug_assert!(out.homogeneous_part(4) != (&g3() * &g3()).scale(&out.coef(&[4, 0, 0, 0])));
    out
}
