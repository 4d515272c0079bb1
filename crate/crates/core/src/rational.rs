//! Exact non-negative rational arithmetic.
//!
//! Values are kept in lowest terms with a positive denominator, so structural
//! equality is numeric equality. All quantities in this crate are ratios of
//! counts bounded by products of ring sizes; intermediates are widened to
//! `u128` before reduction so the arithmetic never wraps.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduced(num: u128, den: u128) -> Rational {
    assert!(den != 0, "zero denominator");
    if num == 0 {
        return Rational { num: 0, den: 1 };
    }
    let g = gcd(num, den);
    let (num, den) = (num / g, den / g);
    Rational {
        num: u64::try_from(num).expect("numerator overflow"),
        den: u64::try_from(den).expect("denominator overflow"),
    }
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        reduced(num as u128, den as u128)
    }

    pub fn from_int(n: u64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Rational { num: 1, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn recip(&self) -> Self {
        assert!(self.num != 0, "reciprocal of zero");
        Rational {
            num: self.den,
            den: self.num,
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let n = self.num as u128 * rhs.den as u128 + rhs.num as u128 * self.den as u128;
        reduced(n, self.den as u128 * rhs.den as u128)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        let a = self.num as u128 * rhs.den as u128;
        let b = rhs.num as u128 * self.den as u128;
        assert!(a >= b, "negative result in rational subtraction");
        reduced(a - b, self.den as u128 * rhs.den as u128)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        reduced(
            self.num as u128 * rhs.num as u128,
            self.den as u128 * rhs.den as u128,
        )
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        let a = self.num as u128 * other.den as u128;
        let b = other.num as u128 * self.den as u128;
        a.cmp(&b)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
