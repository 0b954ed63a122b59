//! Exact quaternions over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{parse_rat, rat, rat_to_string, Rat};

/// `re + x·i + y·j + z·k` with `ij = k`, `jk = i`, `ki = j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Quat {
    pub re: Rat,
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

impl Quat {
    pub fn new(re: Rat, x: Rat, y: Rat, z: Rat) -> Self {
        Quat { re, x, y, z }
    }

    /// Integer components, mostly for fixtures and tests.
    pub fn int(re: i64, x: i64, y: i64, z: i64) -> Self {
        Quat::new(rat(re), rat(x), rat(y), rat(z))
    }

    pub fn zero() -> Self {
        Quat::default()
    }

    pub fn one() -> Self {
        Quat::int(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quat::int(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quat::int(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quat::int(0, 0, 0, 1)
    }

    /// `1, i, j, k` for `n = 0..4`.
    pub fn basis(n: usize) -> Self {
        match n {
            0 => Quat::one(),
            1 => Quat::i(),
            2 => Quat::j(),
            3 => Quat::k(),
            _ => panic!("basis index {n} out of range"),
        }
    }

    pub fn real(r: Rat) -> Self {
        Quat::new(r, Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn from_components(c: [Rat; 4]) -> Self {
        let [re, x, y, z] = c;
        Quat { re, x, y, z }
    }

    pub fn components(&self) -> [&Rat; 4] {
        [&self.re, &self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Quat {
        Quat::new(self.re.clone(), -&self.x, -&self.y, -&self.z)
    }

    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn re_part(&self) -> Rat {
        self.re.clone()
    }

    pub fn im_part(&self) -> Quat {
        Quat::new(Rat::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn scale(&self, s: &Rat) -> Quat {
        Quat::new(&self.re * s, &self.x * s, &self.y * s, &self.z * s)
    }

    pub fn inv(&self) -> Result<Quat> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// Four-dimensional Euclidean dot product.
    pub fn dot(&self, other: &Quat) -> Rat {
        &self.re * &other.re + &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn im_dot(&self, other: &Quat) -> Rat {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn im_cross(&self, other: &Quat) -> Quat {
        Quat::new(
            Rat::zero(),
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    pub fn pow(&self, n: u32) -> Quat {
        let mut acc = Quat::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn hamilton(p: &Quat, q: &Quat) -> Quat {
    Quat {
        re: &p.re * &q.re - &p.x * &q.x - &p.y * &q.y - &p.z * &q.z,
        x: &p.re * &q.x + &p.x * &q.re + &p.y * &q.z - &p.z * &q.y,
        y: &p.re * &q.y - &p.x * &q.z + &p.y * &q.re + &p.z * &q.x,
        z: &p.re * &q.z + &p.x * &q.y - &p.y * &q.x + &p.z * &q.re,
    }
}

impl Mul<&Quat> for &Quat {
    type Output = Quat;
    fn mul(self, rhs: &Quat) -> Quat {
        hamilton(self, rhs)
    }
}

impl Mul<Quat> for Quat {
    type Output = Quat;
    fn mul(self, rhs: Quat) -> Quat {
        hamilton(&self, &rhs)
    }
}

impl Mul<&Quat> for Quat {
    type Output = Quat;
    fn mul(self, rhs: &Quat) -> Quat {
        hamilton(&self, rhs)
    }
}

impl Mul<Quat> for &Quat {
    type Output = Quat;
    fn mul(self, rhs: Quat) -> Quat {
        hamilton(self, &rhs)
    }
}

impl Add<&Quat> for &Quat {
    type Output = Quat;
    fn add(self, rhs: &Quat) -> Quat {
        Quat::new(
            &self.re + &rhs.re,
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.z + &rhs.z,
        )
    }
}

impl Add<Quat> for Quat {
    type Output = Quat;
    fn add(self, rhs: Quat) -> Quat {
        &self + &rhs
    }
}

impl Add<&Quat> for Quat {
    type Output = Quat;
    fn add(self, rhs: &Quat) -> Quat {
        &self + rhs
    }
}

impl Sub<&Quat> for &Quat {
    type Output = Quat;
    fn sub(self, rhs: &Quat) -> Quat {
        Quat::new(
            &self.re - &rhs.re,
            &self.x - &rhs.x,
            &self.y - &rhs.y,
            &self.z - &rhs.z,
        )
    }
}

impl Sub<Quat> for Quat {
    type Output = Quat;
    fn sub(self, rhs: Quat) -> Quat {
        &self - &rhs
    }
}

impl Sub<&Quat> for Quat {
    type Output = Quat;
    fn sub(self, rhs: &Quat) -> Quat {
        &self - rhs
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.re, -&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        -&self
    }
}

impl AddAssign<&Quat> for Quat {
    fn add_assign(&mut self, rhs: &Quat) {
        self.re += &rhs.re;
        self.x += &rhs.x;
        self.y += &rhs.y;
        self.z += &rhs.z;
    }
}

impl SubAssign<&Quat> for Quat {
    fn sub_assign(&mut self, rhs: &Quat) {
        self.re -= &rhs.re;
        self.x -= &rhs.x;
        self.y -= &rhs.y;
        self.z -= &rhs.z;
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, unit) in self.components().into_iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if unit.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{unit}")?;
        }
        Ok(())
    }
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.components().into_iter().map(rat_to_string).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        if parts.len() != 4 {
            return Err(D::Error::custom("quaternion needs exactly four components"));
        }
        let mut c = parts.iter().map(|p| parse_rat(p).map_err(D::Error::custom));
        Ok(Quat::new(
            c.next().unwrap()?,
            c.next().unwrap()?,
            c.next().unwrap()?,
            c.next().unwrap()?,
        ))
    }
}
