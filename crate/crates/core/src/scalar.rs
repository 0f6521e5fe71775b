//! Coefficient rings for the exact linear algebra.
//!
//! Everything in [`crate::chain`] is generic over [`EuclideanRing`]. The
//! integer instances use checked arithmetic so that a machine-word run can
//! report [`Overflow`] and be repeated with [`BigInt`]; `Fp<P>` gives field
//! coefficients for mod-p cross-checks.

use std::fmt::{self, Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

/// Arithmetic overflowed the machine representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

impl Display for Overflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("integer overflow")
    }
}

impl std::error::Error for Overflow {}

/// A Euclidean domain with checked arithmetic.
pub trait EuclideanRing: Clone + Debug + PartialEq + Zero + One + CheckedAdd + CheckedSub + CheckedMul + Neg<Output = Self> {
    /// Euclidean size; units are exactly the nonzero elements of size 1
    /// for integers, and every nonzero element for fields.
    fn size(&self) -> u128;

    fn is_unit(&self) -> bool;

    /// Inverse of a unit.
    fn unit_inverse(&self) -> Self;

    /// `(q, r)` with `self = q * d + r` and `r` strictly smaller than `d`
    /// (or zero).
    fn div_rem_euclid(&self, d: &Self) -> Result<(Self, Self), Overflow>;

    /// Unit `u` such that `u * self` is the canonical associate.
    fn normalizing_unit(&self) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_bigint(&self) -> BigInt;

    fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow>;

    fn add_checked(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_add(o).ok_or(Overflow)
    }

    fn sub_checked(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(o).ok_or(Overflow)
    }

    fn mul_checked(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(o).ok_or(Overflow)
    }
}

macro_rules! machine_int {
    ($t:ty) => {
        impl EuclideanRing for $t {
            fn size(&self) -> u128 {
                self.unsigned_abs() as u128
            }

            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }

            fn unit_inverse(&self) -> Self {
                *self
            }

            fn div_rem_euclid(&self, d: &Self) -> Result<(Self, Self), Overflow> {
                let q = self.checked_div_euclid(*d).ok_or(Overflow)?;
                let r = self.checked_rem_euclid(*d).ok_or(Overflow)?;
                Ok((q, r))
            }

            fn normalizing_unit(&self) -> Self {
                if *self < 0 {
                    -1
                } else {
                    1
                }
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }

            fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow> {
                <$t as TryFrom<&BigInt>>::try_from(v).map_err(|_| Overflow)
            }
        }
    };
}

machine_int!(i64);
machine_int!(i128);

impl EuclideanRing for BigInt {
    fn size(&self) -> u128 {
        // Saturates; only used to rank pivot candidates.
        self.abs().to_u128().unwrap_or(u128::MAX)
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn unit_inverse(&self) -> Self {
        self.clone()
    }

    fn div_rem_euclid(&self, d: &Self) -> Result<(Self, Self), Overflow> {
        if d.is_zero() {
            return Err(Overflow);
        }
        let (q, r) = self.div_mod_floor(d);
        if r.is_negative() {
            // div_mod_floor leaves r with the sign of d
            Ok((q + 1, r - d))
        } else {
            Ok((q, r))
        }
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow> {
        Ok(v.clone())
    }
}

/// The prime field Z/P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let m = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> std::ops::Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> std::ops::Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> std::ops::Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
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

impl<const P: u64> CheckedAdd for Fp<P> {
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(*self + *o)
    }
}

impl<const P: u64> CheckedSub for Fp<P> {
    fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(*self - *o)
    }
}

impl<const P: u64> CheckedMul for Fp<P> {
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        Some(*self * *o)
    }
}

impl<const P: u64> EuclideanRing for Fp<P> {
    fn size(&self) -> u128 {
        u128::from(self.0 != 0)
    }

    fn is_unit(&self) -> bool {
        self.0 != 0
    }

    fn unit_inverse(&self) -> Self {
        self.pow(P - 2)
    }

    fn div_rem_euclid(&self, d: &Self) -> Result<(Self, Self), Overflow> {
        if d.is_zero() {
            return Err(Overflow);
        }
        Ok((*self * d.unit_inverse(), Fp(0)))
    }

    fn normalizing_unit(&self) -> Self {
        if self.0 == 0 {
            Fp(1)
        } else {
            self.unit_inverse()
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0)
    }

    fn try_from_bigint(v: &BigInt) -> Result<Self, Overflow> {
        let m = BigInt::from(P);
        let r = v.mod_floor(&m);
        Ok(Fp(r.to_u64().ok_or(Overflow)?))
    }
}
