use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{check_order, field};
use super::{ExactError, Rational};

/// An exact element of the cyclotomic field Q(ζ_N).
///
/// Stored in the reduced power basis {1, ζ_N, …, ζ_N^{φ(N)-1}} with a single
/// positive common denominator, fully cancelled. Two values of the same order
/// are equal iff their stored coordinates agree; values of different orders are
/// compared after lifting both to the lcm of the orders.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero(order: u32) -> Result<Self, ExactError> {
        let f = field(order)?;
        Ok(CycNum { order, num: vec![BigInt::zero(); f.phi], den: BigInt::one() })
    }

    pub fn from_rational(order: u32, q: &Rational) -> Result<Self, ExactError> {
        let mut out = Self::zero(order)?;
        out.num[0] = q.numer().clone();
        out.den = q.denom().clone();
        Ok(out)
    }

    pub fn from_int(n: i64) -> Self {
        CycNum { order: 1, num: vec![BigInt::from(n)], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// ζ_N^k in canonical form at order N.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self, ExactError> {
        let f = field(order)?;
        let e = k.rem_euclid(order as i64) as usize;
        Ok(CycNum { order, num: f.powers[e].iter().map(|&c| BigInt::from(c)).collect(), den: BigInt::one() })
    }

    /// e^{2πi·q} for a rational q, built at the reduced denominator of q.
    pub fn exp_2pi_i(q: &Rational) -> Result<Self, ExactError> {
        let red = q - q.floor();
        let order = red.denom().to_u64().ok_or(ExactError::CapExceeded(u64::MAX)).and_then(check_order)?;
        let k = red.numer().to_i64().unwrap_or(0);
        Self::root_of_unity(order, k)
    }

    /// sin(π·a/b) = (ζ_{2b}^a − ζ_{2b}^{−a})·(−ζ_4)/2, built in order lcm(4, 2b).
    pub fn sin_pi(a: i64, b: u32) -> Result<Self, ExactError> {
        let two_b = check_order(2 * b as u64)?;
        let diff = Self::root_of_unity(two_b, a)?.checked_sub(&Self::root_of_unity(two_b, -a)?)?;
        let minus_i = Self::root_of_unity(4, 3)?;
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        diff.checked_mul(&minus_i).map(|v| v.scale(&half))
    }

    /// √2 or √3 (any positive square-free D whose conductor fits under the cap).
    pub fn sqrt(d: u32) -> Result<Self, ExactError> {
        match d {
            1 => Ok(Self::one()),
            2 => Self::root_of_unity(8, 1)?.checked_add(&Self::root_of_unity(8, 7)?),
            3 => Self::root_of_unity(12, 1)?.checked_add(&Self::root_of_unity(12, 11)?),
            5 => {
                // 1 + 2(ζ_5 + ζ_5^4) = √5
                let t = Self::root_of_unity(5, 1)?.checked_add(&Self::root_of_unity(5, 4)?)?;
                Ok(t.scale_int(2).checked_add(&Self::one())?)
            }
            _ => Err(ExactError::Unsupported(format!("√{d}"))),
        }
    }

    /// a + b·√D with integer a, b.
    pub fn quadratic(a: i64, b: i64, d: u32) -> Result<Self, ExactError> {
        Self::sqrt(d)?.scale_int(b).checked_add(&Self::from_int(a))
    }

    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Result<Self, ExactError> {
        let f = field(order)?;
        if coeffs.len() != f.phi {
            return Err(ExactError::Length { order, expected: f.phi, got: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycNum { order, num, den }.normalized())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the reduced power basis, each in lowest terms.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|n| Rational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Re-express at a multiple of the current order.
    pub fn lift(&self, order: u32) -> Result<Self, ExactError> {
        if order == self.order {
            return Ok(self.clone());
        }
        if !order.is_multiple_of(self.order) {
            return Err(ExactError::NotAMultiple { from: self.order, to: order });
        }
        let target = field(order)?;
        let step = (order / self.order) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &p) in target.powers[(i * step) % order as usize].iter().enumerate() {
                if p != 0 {
                    num[t] += c * p;
                }
            }
        }
        Ok(CycNum { order, num, den: self.den.clone() })
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self), ExactError> {
        if a.order == b.order {
            return Ok((a.clone(), b.clone()));
        }
        let l = check_order((a.order as u64).lcm(&(b.order as u64)))?;
        Ok((a.lift(l)?, b.lift(l)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self, ExactError> {
        if self.order == other.order {
            return Ok(Self::combine_same(self, other, subtract));
        }
        let (a, b) = Self::common(self, other)?;
        Ok(Self::combine_same(&a, &b, subtract))
    }

    fn combine_same(a: &Self, b: &Self, subtract: bool) -> Self {
        let num = if a.den == b.den {
            a.num.iter().zip(&b.num).map(|(x, y)| if subtract { x - y } else { x + y }).collect()
        } else {
            a.num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| {
                    let l = x * &b.den;
                    let r = y * &a.den;
                    if subtract {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if a.den == b.den { a.den.clone() } else { &a.den * &b.den };
        CycNum { order: a.order, num, den }.normalized()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.order == other.order {
            return Ok(Self::mul_same(self, other));
        }
        if self.is_rational() {
            return Ok(other.scale(&self.as_rational().unwrap()));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.as_rational().unwrap()));
        }
        let (a, b) = Self::common(self, other)?;
        Ok(Self::mul_same(&a, &b))
    }

    fn mul_same(a: &Self, b: &Self) -> Self {
        let f = field(a.order).expect("order validated at construction");
        let n = a.order as usize;
        let mut conv = vec![BigInt::zero(); 2 * f.phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = vec![BigInt::zero(); f.phi];
        for (e, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e % n;
            if e < f.phi {
                num[e] += c;
            } else {
                for (t, &p) in f.powers[e].iter().enumerate() {
                    if p != 0 {
                        num[t] += &c * p;
                    }
                }
            }
        }
        CycNum { order: a.order, num, den: &a.den * &b.den }.normalized()
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, q: &Rational) -> Self {
        CycNum { order: self.order, num: self.num.iter().map(|c| c * q.numer()).collect(), den: &self.den * q.denom() }
            .normalized()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        CycNum { order: self.order, num: self.num.iter().map(|c| c * &k).collect(), den: self.den.clone() }.normalized()
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one().lift(self.order)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The automorphism ζ_N ↦ ζ_N^j.
    pub fn galois(&self, j: i64) -> Result<Self, ExactError> {
        let n = self.order as i64;
        if j.gcd(&n) != 1 {
            return Err(ExactError::BadAutomorphism { order: self.order, j });
        }
        let f = field(self.order)?;
        let mut num = vec![BigInt::zero(); f.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * j).rem_euclid(n) as usize;
            for (t, &p) in f.powers[e].iter().enumerate() {
                if p != 0 {
                    num[t] += c * p;
                }
            }
        }
        Ok(CycNum { order: self.order, num, den: self.den.clone() })
    }

    /// Complex conjugation, ζ_N ↦ ζ_N^{N−1}.
    pub fn conj(&self) -> Self {
        self.galois(self.order as i64 - 1).expect("N−1 is a unit mod N")
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Product of all Galois conjugates; always rational.
    pub fn norm(&self) -> Rational {
        let n = self.order as i64;
        let mut acc = self.clone();
        for j in 2..n {
            if j.gcd(&n) == 1 {
                acc = acc.checked_mul(&self.galois(j).unwrap()).unwrap();
            }
        }
        acc.as_rational().expect("field norm lies in Q")
    }

    /// Inverse via the product of the nontrivial conjugates over the norm.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroDivision);
        }
        if let Some(q) = self.as_rational() {
            return Self::from_rational(self.order, &q.recip());
        }
        let n = self.order as i64;
        let mut others = Self::one().lift(self.order)?;
        for j in 2..n {
            if j.gcd(&n) == 1 {
                others = others.checked_mul(&self.galois(j)?)?;
            }
        }
        let norm = self.checked_mul(&others)?.as_rational().expect("field norm lies in Q");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(&other.inverse()?)
    }

    /// Double-precision value of the power-basis expansion at e^{2πi/N}.
    pub fn embed(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let step = std::f64::consts::TAU / self.order as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN) / den, step * i as f64))
            .sum()
    }

    /// The same number at the smallest order M with it in Q(ζ_M).
    pub fn minimal_order(&self) -> Self {
        if self.is_rational() {
            return Self::from_rational(1, &self.as_rational().unwrap()).unwrap();
        }
        let n = self.order;
        for m in 1..n {
            if !n.is_multiple_of(m) || m % 4 == 2 {
                continue;
            }
            let fixed = (1..n as i64)
                .filter(|j| j.gcd(&(n as i64)) == 1 && j % m as i64 == 1 % m as i64)
                .all(|j| self.galois(j).map(|g| g == *self).unwrap_or(false));
            if fixed {
                if let Some(v) = self.descend(m) {
                    return v;
                }
            }
        }
        self.clone()
    }

    // Solve for coordinates at order m, m | N, given that the value lies there.
    fn descend(&self, m: u32) -> Option<Self> {
        let small = field(m).ok()?;
        let cols: Vec<Vec<Rational>> = (0..small.phi as i64)
            .map(|i| Self::root_of_unity(m, i).and_then(|z| z.lift(self.order)).map(|z| z.coeffs()).ok())
            .collect::<Option<_>>()?;
        let rhs = self.coeffs();
        let sol = solve_overdetermined(&cols, &rhs)?;
        let out = Self::from_coeffs(m, &sol).ok()?;
        (out == *self).then_some(out)
    }

    fn normalized(mut self) -> Self {
        if self.is_zero() {
            self.den = BigInt::one();
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }
}

// Gaussian elimination for a full-column-rank system given by columns.
fn solve_overdetermined(cols: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let unknowns = cols.len();
    let rows = rhs.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(unknowns);
    for col in 0..unknowns {
        let p = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=unknowns {
                    let sub = &factor * &m[pivot_row][c];
                    m[r][c] = &m[r][c] - sub;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // remaining rows must be consistent
    if m[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][unknowns].clone()).collect())
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        match Self::common(self, other) {
            Ok((a, b)) => a.den == b.den && a.num == b.num,
            // lcm above the cap: compare via a difference of minimal forms
            Err(_) => {
                let (a, b) = (self.minimal_order(), other.minimal_order());
                match Self::common(&a, &b) {
                    Ok((a, b)) => a.den == b.den && a.num == b.num,
                    Err(_) => false,
                }
            }
        }
    }
}

impl Eq for CycNum {}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Rational> for CycNum {
    fn from(q: &Rational) -> Self {
        Self::from_rational(1, q).expect("order 1 is always valid")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

// Operator forms panic only when the combined order exceeds the cap; use the
// `checked_*` methods where that can happen.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::from_int(0), |a, b| a + b)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt3() -> CycNum {
        CycNum::root_of_unity(12, 1).unwrap() + CycNum::root_of_unity(12, 11).unwrap()
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(CycNum::root_of_unity(1, 0).unwrap().is_one());
        assert_eq!(CycNum::root_of_unity(4, 2).unwrap(), CycNum::from_int(-1));
        assert_eq!(CycNum::root_of_unity(6, 6).unwrap(), CycNum::one());
    }

    #[test]
    fn sqrt3_squares_to_three() {
        let s = sqrt3();
        assert_eq!(&s * &s, CycNum::from_int(3));
        assert!((s.embed().re - 1.7320508).abs() < 1e-7);
        assert!(s.embed().im.abs() < 1e-12);
    }

    #[test]
    fn field_arithmetic_examples() {
        assert!((CycNum::one() + CycNum::from_int(-1)).is_zero());
        let i = CycNum::root_of_unity(4, 1).unwrap();
        let a = CycNum::one() + i.scale_int(2);
        let b = CycNum::one() - i.scale_int(2);
        assert_eq!(a * b, CycNum::from_int(5));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(CycNum::one().inverse().unwrap(), CycNum::one());
        assert_eq!(CycNum::from_int(-1).inverse().unwrap(), CycNum::from_int(-1));
        let two_plus = CycNum::from_int(2) + sqrt3();
        let two_minus = CycNum::from_int(2) - sqrt3();
        assert_eq!(two_plus.inverse().unwrap(), two_minus);
        assert_eq!(CycNum::zero(12).unwrap().inverse(), Err(ExactError::ZeroDivision));
    }

    #[test]
    fn embed_examples() {
        let z3 = CycNum::root_of_unity(3, 1).unwrap().embed();
        assert!((z3.re + 0.5).abs() < 1e-12 && (z3.im - 0.8660254037844386).abs() < 1e-12);
        let v = (CycNum::from_int(3) + sqrt3().scale_int(2)).embed();
        assert!((v.re - 6.464101615137754).abs() < 1e-12 && v.im.abs() < 1e-12);
        let w = CycNum::root_of_unity(8, 5).unwrap().embed();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w.re + h).abs() < 1e-12 && (w.im + h).abs() < 1e-12);
    }

    #[test]
    fn galois_examples() {
        let s = sqrt3();
        assert_eq!(s.galois(5).unwrap(), -&s);
        assert_eq!(s.galois(1).unwrap(), s);
        let i = CycNum::root_of_unity(4, 1).unwrap();
        assert_eq!(i.galois(3).unwrap(), -&i);
        assert!(matches!(s.galois(3), Err(ExactError::BadAutomorphism { .. })));
    }

    #[test]
    fn sine_construction() {
        let s = CycNum::sin_pi(1, 6).unwrap();
        assert_eq!(s, CycNum::from_rational(1, &Rational::new(1.into(), 2.into())).unwrap());
        let s = CycNum::sin_pi(1, 3).unwrap();
        assert_eq!(&s * &s, CycNum::from_rational(1, &Rational::new(3.into(), 4.into())).unwrap());
    }

    #[test]
    fn minimal_order_descends() {
        let s = sqrt3().lift(72).unwrap();
        let m = s.minimal_order();
        assert_eq!(m.order(), 12);
        assert_eq!(m, sqrt3());
        let z = CycNum::root_of_unity(36, 12).unwrap().minimal_order();
        assert_eq!(z.order(), 3);
        let r = CycNum::from_int(7).lift(24).unwrap().minimal_order();
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn cap_exceeded_on_large_lcm() {
        let a = CycNum::root_of_unity(7, 1).unwrap();
        let b = CycNum::root_of_unity(11, 1).unwrap();
        assert_eq!(a.checked_mul(&b), Err(ExactError::CapExceeded(77)));
    }

    #[test]
    fn pow_and_negative_pow() {
        let z = CycNum::root_of_unity(9, 2).unwrap();
        assert!(z.pow(9).unwrap().is_one());
        assert_eq!(z.pow(-1).unwrap(), z.conj());
    }
}
