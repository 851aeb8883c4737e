//! Exact coefficient fields.
//!
//! Everything in the crate is generic over [`Scalar`]: a field with exact
//! arithmetic. Two families are provided, prime fields [`Fp`] (prime fixed at
//! compile time) and the rationals [`Q`].

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field. Every nonzero element is invertible.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    /// 0 for the rationals.
    fn characteristic() -> u64;

    /// Number of elements, `None` for infinite fields.
    fn order() -> Option<u64>;

    /// Human readable field name, as used in manifests (`GF(p)` or `QQ`).
    fn field_name() -> String;

    fn from_i64(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// The `i`-th element in a fixed enumeration of a finite field
    /// (`0, 1, 2, ...`). For infinite fields this enumerates `0, 1, -1, 2, -2, ...`.
    fn nth_element(i: u64) -> Self;

    /// True when the printed form needs parentheses as a coefficient.
    fn is_compound(&self) -> bool {
        false
    }

    /// True when the element is `1` or `-1` up to sign in printing.
    fn is_negative_display(&self) -> bool {
        false
    }
}

/// Prime field `Z/PZ`. `P` must be a prime below `2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

/// The default coefficient field.
pub type Gf32003 = Fp<32003>;

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    /// Representative in `[0, P)`.
    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in `(-P/2, P/2]`.
    pub fn symmetric(self) -> i64 {
        if self.0 > P / 2 {
            self.0 as i64 - P as i64
        } else {
            self.0 as i64
        }
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn order() -> Option<u64> {
        Some(P)
    }

    fn field_name() -> String {
        format!("GF({P})")
    }

    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced residue fits in u64"))
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn nth_element(i: u64) -> Self {
        Fp(i % P)
    }

    fn is_negative_display(&self) -> bool {
        self.symmetric() < 0
    }
}

/// Arbitrary-precision rationals.
pub type Q = BigRational;

impl Scalar for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn order() -> Option<u64> {
        None
    }

    fn field_name() -> String {
        "QQ".to_string()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn nth_element(i: u64) -> Self {
        // 0, 1, -1, 2, -2, ...
        let k = i.div_ceil(2) as i64;
        let v = if i % 2 == 1 { k } else { -k };
        Self::from_i64(v)
    }

    fn is_compound(&self) -> bool {
        !self.is_integer()
    }

    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}
