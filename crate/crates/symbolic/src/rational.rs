//! Exact rational scalar used by every coefficient in the engine.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use malachite_base::num::arithmetic::traits::{Pow, Reciprocal};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::conversion::traits::{IsInteger, RoundingFrom};
use malachite_base::rounding_modes::RoundingMode;
use malachite_q::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(Rational);

impl Q {
    pub const ZERO: Q = Q(Rational::ZERO);
    pub const ONE: Q = Q(Rational::ONE);

    pub fn int(n: i64) -> Q {
        Q(Rational::from(n))
    }

    /// Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q(Rational::from_signeds(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == Rational::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.0 == Rational::ONE
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Rational::ZERO
    }

    pub fn is_integer(&self) -> bool {
        IsInteger::is_integer(&self.0)
    }

    /// Panics on zero.
    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "reciprocal of zero");
        Q((&self.0).reciprocal())
    }

    pub fn pow(&self, e: u64) -> Q {
        Q((&self.0).pow(e))
    }

    pub fn to_f64(&self) -> f64 {
        f64::rounding_from(&self.0, RoundingMode::Nearest).0
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(v: f64) -> Option<Q> {
        Rational::try_from(v).ok().map(Q)
    }

    pub fn inner(&self) -> &Rational {
        &self.0
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q(&self.0 $op &o.0)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                Q(self.0 $op o.0)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                Q(self.0 $op &o.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div<&Q> for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        Q(&self.0 / &o.0)
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        self.0 += &o.0;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        self.0 -= &o.0;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, o: &Q) {
        self.0 *= &o.0;
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = Q::ratio(1, 3);
        let b = Q::ratio(1, 6);
        assert_eq!(&a + &b, Q::ratio(1, 2));
        assert_eq!(&a * &b, Q::ratio(1, 18));
        assert_eq!(&a / &b, Q::int(2));
        assert_eq!(Q::ratio(-2, 4).to_string(), "-1/2");
        assert!(Q::int(7).is_integer());
        assert_eq!(Q::ratio(3, 4).to_f64(), 0.75);
        assert_eq!(Q::from_f64(0.25), Some(Q::ratio(1, 4)));
    }
}
