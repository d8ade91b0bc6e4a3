//! Exact scalar fields.
//!
//! Every form and bracket in this crate is generic over [`Scalar`], an exact
//! field of characteristic other than 2 and 3. Two implementations ship:
//! arbitrary-precision rationals ([`Rational`], the default) and prime fields
//! [`Fp`] for any prime `P >= 5`.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// An exact field with characteristic not 2 or 3.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    /// `num / den`. Panics if `den` vanishes in the field.
    fn from_ratio(num: i64, den: i64) -> Self {
        let d = Self::from_i64(den);
        assert!(!d.is_zero(), "denominator {den} vanishes in this field");
        Self::from_i64(num) / d
    }

    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// `self^exp` for any integer exponent. Panics on `0^k` with `k < 0`.
    fn pow_i(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            assert!(!self.is_zero(), "zero has no inverse");
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        // numer/denom is already reduced, so both must be perfect squares.
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(BigRational::new(n, d))
        } else {
            None
        }
    }
}

/// The prime field `Z/PZ`. `P` must be a prime `>= 5`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(P >= 5 && P < (1 << 63), "modulus must be a prime in [5, 2^63)");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn mul_mod(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow_u(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64 % P;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul_mod(acc, base);
            }
            base = Self::mul_mod(base, base);
            e >>= 1;
        }
        Fp(acc)
    }

    fn inv(self) -> Self {
        assert!(self.0 != 0, "division by zero in F_{P}");
        self.pow_u(P - 2)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(Self::mul_mod(self.0, rhs.0))
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }

    fn one() -> Self {
        Fp::new(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new((v as i128).rem_euclid(P as i128) as u64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    // Tonelli-Shanks.
    fn sqrt(&self) -> Option<Self> {
        if self.0 == 0 {
            return Some(*self);
        }
        if self.pow_u((P - 1) / 2).0 != 1 {
            return None;
        }
        let mut q = P - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = Fp::<P>::new(2);
        while z.pow_u((P - 1) / 2).0 == 1 {
            z = z + Fp::new(1);
        }
        let mut m = s;
        let mut c = z.pow_u(q);
        let mut t = self.pow_u(q);
        let mut r = self.pow_u((q + 1) / 2);
        while t.0 != 1 {
            let mut i = 1;
            let mut t2 = t * t;
            while t2.0 != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow_u(1 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        Some(r)
    }
}
