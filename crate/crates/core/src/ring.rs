//! Integer coefficient arithmetic for elimination.
//!
//! Elimination runs first over `i64` with checked arithmetic and is rerun
//! over `BigInt` if any intermediate value overflows, so results are always
//! exact.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = Result<T, Overflow>;

pub(crate) trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn add(&self, o: &Self) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    /// Exact quotient; `o` must divide `self`.
    fn div_exact(&self, o: &Self) -> Self;
    /// Floor quotient.
    fn div_floor(&self, o: &Self) -> Self;
    /// Non-negative gcd.
    fn gcd(&self, o: &Self) -> Checked<Self>;
    /// Rough size used to rank pivot candidates.
    fn magnitude(&self) -> u64;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn gcd(&self, o: &Self) -> Checked<Self> {
        // i64::MIN has no positive gcd representation
        if *self == i64::MIN || *o == i64::MIN {
            return Err(Overflow);
        }
        Ok(Integer::gcd(self, o))
    }
    fn magnitude(&self) -> u64 {
        self.unsigned_abs()
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        Signed::abs(self).is_one()
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn gcd(&self, o: &Self) -> Checked<Self> {
        Ok(Integer::gcd(self, o))
    }
    fn magnitude(&self) -> u64 {
        self.to_u64()
            .or_else(|| (-self).to_u64())
            .unwrap_or(u64::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_i64() {
        assert_eq!(Ring::mul(&i64::MAX, &2), Err(Overflow));
        assert_eq!(Ring::gcd(&12i64, &-18), Ok(6));
        assert_eq!(Ring::div_floor(&-7i64, &2), -4);
        assert!(Ring::is_unit(&-1i64));
        assert_eq!(Ring::neg(&i64::MIN), Err(Overflow));
    }

    #[test]
    fn bigint_agrees() {
        let a = BigInt::from(-7);
        assert_eq!(Ring::div_floor(&a, &BigInt::from(2)), BigInt::from(-4));
        assert_eq!(
            Ring::gcd(&BigInt::from(12), &BigInt::from(-18)).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(Ring::magnitude(&BigInt::from(-5)), 5);
    }
}
