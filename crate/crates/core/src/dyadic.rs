//! Exact dyadic rationals (`num / 2^exp`) and points built from them.
//!
//! Every coordinate the curve maps produce is a dyadic rational, so equality
//! and ordering here are exact. Floating point only appears in [`Dyadic::to_f64`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// `num / 2^exp`, kept in lowest terms (`num` odd unless `exp == 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: i64,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i64, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    /// Power of two in the reduced denominator.
    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn half(self) -> Self {
        Dyadic::new(self.num, self.exp + 1)
    }

    /// Numerator over the fixed denominator `2^exp`; `None` if `exp` is too small.
    pub fn numerator_at(self, exp: u32) -> Option<i64> {
        if exp < self.exp {
            return None;
        }
        self.num.checked_shl(exp - self.exp)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / (2f64).powi(self.exp as i32)
    }

    /// Exact decimal expansion; every dyadic rational terminates after `exp` digits.
    pub fn to_decimal_string(self) -> String {
        let neg = self.num < 0;
        let mag = self.num.unsigned_abs() as u128;
        let int = mag >> self.exp;
        let frac = mag - (int << self.exp);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if self.exp > 0 {
            // frac / 2^exp == frac * 5^exp / 10^exp
            let scaled = frac * 5u128.pow(self.exp);
            let digits = format!("{:0width$}", scaled, width = self.exp as usize);
            s.push('.');
            s.push_str(digits.trim_end_matches('0'));
        }
        s
    }

    fn aligned(self, other: Dyadic) -> (i128, i128) {
        let e = self.exp.max(other.exp);
        (
            (self.num as i128) << (e - self.exp),
            (other.num as i128) << (e - other.exp),
        )
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let (a, b) = self.aligned(rhs);
        Dyadic::new((a + b) as i64, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(*other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

/// A point of the unit square with exact dyadic coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoint {
    pub x: Dyadic,
    pub y: Dyadic,
}

impl ExactPoint {
    pub const ORIGIN: ExactPoint = ExactPoint {
        x: Dyadic::ZERO,
        y: Dyadic::ZERO,
    };

    pub fn new(x: Dyadic, y: Dyadic) -> Self {
        ExactPoint { x, y }
    }

    /// Shorthand for `(xn / 2^exp, yn / 2^exp)`.
    pub fn from_parts(xn: i64, yn: i64, exp: u32) -> Self {
        ExactPoint {
            x: Dyadic::new(xn, exp),
            y: Dyadic::new(yn, exp),
        }
    }

    pub fn to_f64(self) -> [f64; 2] {
        [self.x.to_f64(), self.y.to_f64()]
    }

    /// Largest reduced denominator exponent of the two coordinates.
    pub fn exponent(self) -> u32 {
        self.x.exponent().max(self.y.exponent())
    }
}

impl Add for ExactPoint {
    type Output = ExactPoint;
    fn add(self, rhs: ExactPoint) -> ExactPoint {
        ExactPoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for ExactPoint {
    type Output = ExactPoint;
    fn sub(self, rhs: ExactPoint) -> ExactPoint {
        ExactPoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_to_lowest_terms() {
        let d = Dyadic::new(12, 4);
        assert_eq!((d.numerator(), d.exponent()), (3, 2));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(8, 3), Dyadic::ONE);
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Dyadic::new(1, 2); // 1/4
        let b = Dyadic::new(3, 3); // 3/8
        assert_eq!(a + b, Dyadic::new(5, 3));
        assert_eq!(a - b, Dyadic::new(-1, 3));
        assert_eq!(b.half(), Dyadic::new(3, 4));
        assert!(a < b);
    }

    #[test]
    fn decimal_rendering_terminates_exactly() {
        assert_eq!(Dyadic::new(5, 3).to_decimal_string(), "0.625");
        assert_eq!(Dyadic::new(-3, 1).to_decimal_string(), "-1.5");
        assert_eq!(Dyadic::from_int(2).to_decimal_string(), "2");
        assert_eq!(
            Dyadic::new(1, 20).to_decimal_string(),
            "0.00000095367431640625"
        );
    }
}
