use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in `i64` stay inline; anything
/// larger spills to a heap `BigRational`. The two representations never
/// overlap, so derived equality on the representation is value equality.
#[derive(Clone)]
pub struct ExactScalar(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// Short alias used throughout the crate.
pub type Q = ExactScalar;

impl ExactScalar {
    pub const ZERO: ExactScalar = ExactScalar(Repr::Small(0, 1));
    pub const ONE: ExactScalar = ExactScalar(Repr::Small(1, 1));

    pub fn from_int(v: i64) -> Self {
        ExactScalar(Repr::Small(v, 1))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => ExactScalar(Repr::Small(a, b)),
            _ => ExactScalar(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with a positive denominator.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => ExactScalar(Repr::Small(a, b)),
            _ => ExactScalar(Repr::Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Repr::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(a, _) => BigInt::from(*a),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, b) => BigInt::from(*b),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small(_, 1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(a, _) => a.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(a, b) => {
                assert!(*a != 0, "inverse of zero");
                Self::from_i128(*b as i128, *a as i128)
            }
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Q::ONE;
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^k` as a scalar.
    pub fn sign(negative: bool) -> Self {
        if negative {
            Q::from_int(-1)
        } else {
            Q::ONE
        }
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Q::ZERO
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Q::from_int(v)
    }
}

impl From<i32> for ExactScalar {
    fn from(v: i32) -> Self {
        Q::from_int(v as i64)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Q::from_big(r)
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for ExactScalar {}

impl Hash for ExactScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Q::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Q::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
                }
            }
            _ => Q::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Q::from_i128(*a as i128 - *c as i128, *b as i128)
                } else {
                    Q::from_i128(*a as i128 * *d as i128 - *c as i128 * *b as i128, *b as i128 * *d as i128)
                }
            }
            _ => Q::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let p = *a as i128 * *c as i128;
                    match i64::try_from(p) {
                        Ok(v) => ExactScalar(Repr::Small(v, 1)),
                        Err(_) => Q::from_i128(p, 1),
                    }
                } else {
                    Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
                }
            }
            _ => Q::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => Q::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            _ => Q::from_big(self.to_big() / rhs.to_big()),
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match &self.0 {
            Repr::Small(a, b) => match a.checked_neg() {
                Some(v) => ExactScalar(Repr::Small(v, *b)),
                None => Q::from_i128(-(*a as i128), *b as i128),
            },
            Repr::Big(r) => Q::from_big(-(**r).clone()),
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self - rhs;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        Q::ZERO
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Q::ONE
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Q::ZERO, |a, b| a + b)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Q::ONE, |a, b| a * b)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(a, 1) => write!(f, "{a}"),
            Repr::Small(a, b) => write!(f, "{a}/{b}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts `p`, `-p` and `p/q`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Q::from_big(BigRational::new(num, den)))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
