use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use super::{CycNum, ExactError};

/// An element a + b·√D of Z[√D], used where dimensions are known to be
/// quadratic integers (FP-dimension recognition, sum-of-squares searches).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
    pub d: u32,
}

impl QuadInt {
    pub const fn new(a: i64, b: i64, d: u32) -> Self {
        QuadInt { a, b, d }
    }

    pub const fn int(a: i64, d: u32) -> Self {
        QuadInt { a, b: 0, d }
    }

    pub fn value(&self) -> f64 {
        self.a as f64 + self.b as f64 * (self.d as f64).sqrt()
    }

    pub fn conjugate_value(&self) -> f64 {
        self.a as f64 - self.b as f64 * (self.d as f64).sqrt()
    }

    /// Positive under both real embeddings.
    pub fn is_totally_positive(&self) -> bool {
        let s = (self.d as i128) * (self.b as i128) * (self.b as i128);
        let a = self.a as i128;
        a > 0 && a * a > s
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn to_cycnum(&self) -> Result<CycNum, ExactError> {
        CycNum::quadratic(self.a, self.b, self.d)
    }

    /// Exact quotient in Z[√D], if it exists.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.d, other.d);
        let norm = other.a * other.a - other.d as i64 * other.b * other.b;
        if norm == 0 {
            return None;
        }
        // (a + b√D)(c − e√D) / (c² − De²)
        let num_a = self.a * other.a - self.d as i64 * self.b * other.b;
        let num_b = self.b * other.a - self.a * other.b;
        (num_a % norm == 0 && num_b % norm == 0).then(|| QuadInt::new(num_a / norm, num_b / norm, self.d))
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, o.d);
        QuadInt::new(self.a + o.a, self.b + o.b, self.d)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, o.d);
        QuadInt::new(self.a - o.a, self.b - o.b, self.d)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        debug_assert_eq!(self.d, o.d);
        QuadInt::new(self.a * o.a + self.d as i64 * self.b * o.b, self.a * o.b + self.b * o.a, self.d)
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.d == other.d).then(|| (self.a, self.b).cmp(&(other.a, other.b)))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("√{}", self.d);
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "{root}"),
            (0, -1) => write!(f, "-{root}"),
            (0, b) => write!(f, "{b}{root}"),
            (a, 1) => write!(f, "{a}+{root}"),
            (a, -1) => write!(f, "{a}-{root}"),
            (a, b) if b > 0 => write!(f, "{a}+{b}{root}"),
            (a, b) => write!(f, "{a}{b}{root}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(QuadInt::new(3, 2, 3).to_string(), "3+2√3");
        assert_eq!(QuadInt::new(1, 1, 2).to_string(), "1+√2");
        assert_eq!(QuadInt::new(0, -1, 3).to_string(), "-√3");
        assert_eq!(QuadInt::new(2, -3, 3).to_string(), "2-3√3");
        assert_eq!(QuadInt::new(5, 0, 3).to_string(), "5");
    }

    #[test]
    fn arithmetic_matches_cycnum() {
        let d = QuadInt::new(3, 2, 3);
        assert_eq!(d.square(), QuadInt::new(21, 12, 3));
        let exact = d.to_cycnum().unwrap();
        assert_eq!(&exact * &exact, d.square().to_cycnum().unwrap());
        assert_eq!(QuadInt::new(24, 12, 3).checked_div(&QuadInt::new(8, 4, 3)), Some(QuadInt::int(3, 3)));
        assert_eq!(QuadInt::new(24, 12, 3).checked_div(&QuadInt::new(16, 8, 3)), None);
    }

    #[test]
    fn total_positivity() {
        assert!(QuadInt::new(24, 12, 3).is_totally_positive());
        assert!(!QuadInt::new(1, 1, 3).is_totally_positive());
        assert!(QuadInt::new(2, 1, 3).is_totally_positive());
    }
}
