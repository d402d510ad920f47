//! Simple objects, quantum dimensions, twists and fusion rules of
//! C(sl2, k) and C(sl3, k).

mod fusion;
mod weights;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{CycNum, ExactError, Rational};
use crate::fusring::{FusringError, ModularData};

pub use fusion::{classical_tensor, current_action, fuse, fusion_ring, simple_currents};
pub use weights::weight_multiplicities;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WzwError {
    #[error("level must be at least 1")]
    LevelZero,
    #[error("{weight} is not in the level-{level} alcove")]
    OutOfAlcove { weight: LevelWeight, level: u32 },
    #[error("{0} is not a simple current")]
    NotASimpleCurrent(LevelWeight),
    #[error("unknown algebra `{0}` (expected sl2 or sl3)")]
    UnknownAlgebra(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Ring(#[from] FusringError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RankType {
    A1,
    A2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub rank_type: RankType,
    pub level: u32,
}

impl AlgebraSpec {
    pub fn new(rank_type: RankType, level: u32) -> Result<Self, WzwError> {
        if level == 0 {
            return Err(WzwError::LevelZero);
        }
        Ok(AlgebraSpec { rank_type, level })
    }

    pub fn sl2(level: u32) -> Result<Self, WzwError> {
        Self::new(RankType::A1, level)
    }

    pub fn sl3(level: u32) -> Result<Self, WzwError> {
        Self::new(RankType::A2, level)
    }

    /// k + h^∨: the shifted level K that governs folding and dimensions.
    pub fn shifted_level(&self) -> u32 {
        match self.rank_type {
            RankType::A1 => self.level + 2,
            RankType::A2 => self.level + 3,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.rank_type {
            RankType::A1 => "sl2",
            RankType::A2 => "sl3",
        }
    }

    pub fn contains(&self, w: &LevelWeight) -> bool {
        match (self.rank_type, w) {
            (RankType::A1, LevelWeight::A1(m)) => *m <= self.level,
            (RankType::A2, LevelWeight::A2(a, b)) => a + b <= self.level,
            _ => false,
        }
    }

    pub fn check(&self, w: &LevelWeight) -> Result<(), WzwError> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(WzwError::OutOfAlcove { weight: *w, level: self.level })
        }
    }

    pub fn unit(&self) -> LevelWeight {
        match self.rank_type {
            RankType::A1 => LevelWeight::A1(0),
            RankType::A2 => LevelWeight::A2(0, 0),
        }
    }
}

impl FromStr for RankType {
    type Err = WzwError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" | "a1" => Ok(RankType::A1),
            "sl3" | "a2" => Ok(RankType::A2),
            _ => Err(WzwError::UnknownAlgebra(s.to_string())),
        }
    }
}

/// Dynkin labels of an integrable highest weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LevelWeight {
    A1(u32),
    A2(u32, u32),
}

impl LevelWeight {
    /// m₁ ≡ m₂ (mod 3) for sl3; every sl2 weight with m even.
    pub fn in_root_lattice(&self) -> bool {
        match *self {
            LevelWeight::A1(m) => m % 2 == 0,
            LevelWeight::A2(a, b) => (a + 2 * b) % 3 == 0,
        }
    }

    pub fn dual(&self) -> Self {
        match *self {
            LevelWeight::A1(m) => LevelWeight::A1(m),
            LevelWeight::A2(a, b) => LevelWeight::A2(b, a),
        }
    }
}

impl fmt::Display for LevelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelWeight::A1(m) => write!(f, "{m}"),
            LevelWeight::A2(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// All alcove weights in lexicographic order.
pub fn alcove(spec: &AlgebraSpec) -> Vec<LevelWeight> {
    let k = spec.level;
    match spec.rank_type {
        RankType::A1 => (0..=k).map(LevelWeight::A1).collect(),
        RankType::A2 => (0..=k).flat_map(|a| (0..=k - a).map(move |b| LevelWeight::A2(a, b))).collect(),
    }
}

/// Quantum dimension as a ratio of sines, reduced to its smallest field.
pub fn qdim(spec: &AlgebraSpec, w: &LevelWeight) -> Result<CycNum, WzwError> {
    spec.check(w)?;
    let kk = spec.shifted_level();
    let s = |a: u32| CycNum::sin_pi(a as i64, kk);
    let value = match *w {
        LevelWeight::A1(m) => s(m + 1)?.checked_div(&s(1)?)?,
        LevelWeight::A2(a, b) => {
            let num = s(a + 1)?.checked_mul(&s(b + 1)?)?.checked_mul(&s(a + b + 2)?)?;
            let den = s(2)?.checked_mul(&s(1)?)?.checked_mul(&s(1)?)?;
            num.checked_div(&den)?
        }
    };
    Ok(value.minimal_order())
}

/// θ_w = exp(2πi·h_w) with the conformal weight reduced mod 1 first.
pub fn twist(spec: &AlgebraSpec, w: &LevelWeight) -> Result<CycNum, WzwError> {
    spec.check(w)?;
    let kk = spec.shifted_level() as i64;
    let (num, den) = match *w {
        LevelWeight::A1(m) => {
            let m = m as i64;
            (m * (m + 2), 4 * kk)
        }
        LevelWeight::A2(a, b) => {
            let (a, b) = (a as i64, b as i64);
            (a * a + 3 * a + a * b + 3 * b + b * b, 3 * kk)
        }
    };
    Ok(CycNum::exp_2pi_i(&Rational::new(BigInt::from(num), BigInt::from(den)))?)
}

/// Ring, dims and twists over the alcove, with S from the balancing equation.
pub fn modular_data(spec: &AlgebraSpec) -> Result<ModularData, WzwError> {
    let ring = fusion_ring(spec)?;
    let weights = alcove(spec);
    let dims = weights.iter().map(|w| qdim(spec, w)).collect::<Result<Vec<_>, _>>()?;
    let twists = weights.iter().map(|w| twist(spec, w)).collect::<Result<Vec<_>, _>>()?;
    Ok(ModularData::from_balancing(ring, dims, twists)?)
}

pub(crate) fn index_of(spec: &AlgebraSpec, w: &LevelWeight) -> usize {
    let k = spec.level as usize;
    match *w {
        LevelWeight::A1(m) => m as usize,
        // rows a' < a contribute (k + 1 − a') entries each
        LevelWeight::A2(a, b) => {
            let a = a as usize;
            a * (k + 1) - a * (a.saturating_sub(1)) / 2 + b as usize
        }
    }
}

pub(crate) fn labels(spec: &AlgebraSpec) -> Vec<String> {
    alcove(spec).iter().map(|w| w.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl3(k: u32) -> AlgebraSpec {
        AlgebraSpec::sl3(k).unwrap()
    }

    #[test]
    fn alcove_sizes_and_order() {
        assert_eq!(alcove(&sl3(9)).len(), 55);
        assert_eq!(alcove(&AlgebraSpec::sl2(4).unwrap()).len(), 5);
        assert_eq!(alcove(&sl3(1)), vec![LevelWeight::A2(0, 0), LevelWeight::A2(0, 1), LevelWeight::A2(1, 0)]);
        let spec = sl3(9);
        for (i, w) in alcove(&spec).iter().enumerate() {
            assert_eq!(index_of(&spec, w), i);
        }
    }

    #[test]
    fn level_zero_is_rejected() {
        assert_eq!(AlgebraSpec::sl3(0), Err(WzwError::LevelZero));
    }

    #[test]
    fn sl3_level9_dims() {
        let spec = sl3(9);
        let q = |a, b| qdim(&spec, &LevelWeight::A2(a, b)).unwrap();
        assert!(q(0, 0).is_one());
        assert_eq!(q(1, 1), CycNum::quadratic(3, 2, 3).unwrap());
        assert_eq!(q(2, 2), CycNum::quadratic(8, 4, 3).unwrap());
        assert_eq!(q(3, 3), CycNum::quadratic(9, 6, 3).unwrap());
        assert!(matches!(qdim(&spec, &LevelWeight::A2(5, 5)), Err(WzwError::OutOfAlcove { .. })));
    }

    #[test]
    fn twists_match_closed_forms() {
        let spec = sl3(9);
        let t = |a, b| twist(&spec, &LevelWeight::A2(a, b)).unwrap();
        assert_eq!(t(1, 1), CycNum::root_of_unity(4, 1).unwrap());
        assert_eq!(t(3, 0), CycNum::from_int(-1));
        assert_eq!(t(2, 2), CycNum::root_of_unity(3, 2).unwrap());
        assert!(t(9, 0).is_one());
        let five = sl3(5);
        assert_eq!(twist(&five, &LevelWeight::A2(3, 0)).unwrap(), CycNum::root_of_unity(4, 3).unwrap());
        let sl2 = AlgebraSpec::sl2(4).unwrap();
        let got: Vec<CycNum> = alcove(&sl2).iter().map(|w| twist(&sl2, w).unwrap()).collect();
        let z = |n, k| CycNum::root_of_unity(n, k).unwrap();
        assert_eq!(got, vec![CycNum::one(), z(8, 1), z(3, 1), z(8, 5), CycNum::one()]);
    }

    #[test]
    fn root_lattice_and_duality() {
        assert!(LevelWeight::A2(1, 1).in_root_lattice());
        assert!(LevelWeight::A2(3, 0).in_root_lattice());
        assert!(!LevelWeight::A2(1, 0).in_root_lattice());
        assert_eq!(LevelWeight::A2(1, 4).dual(), LevelWeight::A2(4, 1));
    }
}
