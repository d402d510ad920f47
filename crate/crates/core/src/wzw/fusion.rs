use std::collections::BTreeMap;

use super::weights::{classical_dim, weight_multiplicities};
use super::{alcove, index_of, labels, qdim, AlgebraSpec, LevelWeight, RankType, WzwError};
use crate::fusring::FusionRing;

/// Classical tensor product by the Racah–Speiser weight shift: for each weight
/// ν of the smaller factor, λ + ν + ρ is reflected into the dominant chamber
/// and contributes with the sign of the reflection (nothing on a wall).
pub fn classical_tensor(a: &LevelWeight, b: &LevelWeight) -> Vec<(LevelWeight, u32)> {
    let (big, small) = if classical_dim(a) >= classical_dim(b) { (a, b) } else { (b, a) };
    let mut acc: BTreeMap<LevelWeight, i64> = BTreeMap::new();
    for ((n1, n2), m) in weight_multiplicities(small) {
        let shifted = match *big {
            LevelWeight::A1(l) => (l as i64 + n1 + 1, 0),
            LevelWeight::A2(l1, l2) => (l1 as i64 + n1 + 1, l2 as i64 + n2 + 1),
        };
        if let Some((w, sign)) = reflect(big, shifted, None) {
            *acc.entry(w).or_default() += sign * m as i64;
        }
    }
    collect(acc)
}

/// Level-k fusion: Racah–Speiser followed by folding through the shifted
/// affine Weyl group of level K = k + h^∨.
pub fn fuse(spec: &AlgebraSpec, a: &LevelWeight, b: &LevelWeight) -> Result<Vec<(LevelWeight, u32)>, WzwError> {
    spec.check(a)?;
    spec.check(b)?;
    let kk = spec.shifted_level() as i64;
    let mut acc: BTreeMap<LevelWeight, i64> = BTreeMap::new();
    for (w, m) in classical_tensor(a, b) {
        let shifted = match w {
            LevelWeight::A1(l) => (l as i64 + 1, 0),
            LevelWeight::A2(l1, l2) => (l1 as i64 + 1, l2 as i64 + 1),
        };
        if let Some((w, sign)) = reflect(a, shifted, Some(kk)) {
            *acc.entry(w).or_default() += sign * m as i64;
        }
    }
    Ok(collect(acc))
}

fn collect(acc: BTreeMap<LevelWeight, i64>) -> Vec<(LevelWeight, u32)> {
    acc.into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|(w, m)| {
            assert!(m > 0, "negative multiplicity {m} for {w}");
            (w, m as u32)
        })
        .collect()
}

// Fold a ρ-shifted weight into the open fundamental chamber (finite Weyl
// group) or the open level-K alcove (affine). Returns the unshifted weight
// and the sign, or None if the orbit meets a wall.
fn reflect(kind: &LevelWeight, mut x: (i64, i64), affine: Option<i64>) -> Option<(LevelWeight, i64)> {
    let mut sign = 1;
    match kind {
        LevelWeight::A1(_) => loop {
            let v = x.0;
            if v == 0 || affine == Some(v) {
                return None;
            }
            if v < 0 {
                x.0 = -v;
            } else if let Some(k) = affine.filter(|&k| v > k) {
                x.0 = 2 * k - v;
            } else {
                return Some((LevelWeight::A1((v - 1) as u32), sign));
            }
            sign = -sign;
        },
        LevelWeight::A2(..) => loop {
            let (x1, x2) = x;
            if x1 == 0 || x2 == 0 || affine == Some(x1 + x2) {
                return None;
            }
            if x1 < 0 {
                x = (-x1, x1 + x2);
            } else if x2 < 0 {
                x = (x1 + x2, -x2);
            } else if let Some(k) = affine.filter(|&k| x1 + x2 > k) {
                x = (k - x2, k - x1);
            } else {
                return Some((LevelWeight::A2((x1 - 1) as u32, (x2 - 1) as u32), sign));
            }
            sign = -sign;
        },
    }
}

/// The full level-k fusion ring over the alcove, labels `(m₁,m₂)` or `m`.
pub fn fusion_ring(spec: &AlgebraSpec) -> Result<FusionRing, WzwError> {
    let weights = alcove(spec);
    let r = weights.len();
    let mut n = vec![0u32; r * r * r];
    for i in 0..r {
        for j in i..r {
            for (w, m) in fuse(spec, &weights[i], &weights[j])? {
                let k = index_of(spec, &w);
                n[(i * r + j) * r + k] = m;
                n[(j * r + i) * r + k] = m;
            }
        }
    }
    let dual = weights.iter().map(|w| index_of(spec, &w.dual())).collect();
    Ok(FusionRing::new(labels(spec), 0, dual, n)?)
}

/// Alcove weights of quantum dimension exactly 1.
pub fn simple_currents(spec: &AlgebraSpec) -> Result<Vec<LevelWeight>, WzwError> {
    let mut out = Vec::new();
    for w in alcove(spec) {
        if qdim(spec, &w)?.is_one() {
            out.push(w);
        }
    }
    Ok(out)
}

/// The single summand of J ⊗ w for a simple current J.
pub fn current_action(spec: &AlgebraSpec, j: &LevelWeight, w: &LevelWeight) -> Result<LevelWeight, WzwError> {
    spec.check(j)?;
    spec.check(w)?;
    let is_current = match (spec.rank_type, *j) {
        (RankType::A1, LevelWeight::A1(m)) => m == 0 || m == spec.level,
        (RankType::A2, LevelWeight::A2(a, b)) => {
            (a, b) == (0, 0) || (a, b) == (spec.level, 0) || (a, b) == (0, spec.level)
        }
        _ => false,
    };
    if !is_current {
        return Err(WzwError::NotASimpleCurrent(*j));
    }
    match fuse(spec, j, w)?.as_slice() {
        [(out, 1)] => Ok(*out),
        _ => Err(WzwError::NotASimpleCurrent(*j)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycNum;

    fn w(a: u32, b: u32) -> LevelWeight {
        LevelWeight::A2(a, b)
    }

    #[test]
    fn adjoint_squared_at_level_nine() {
        let spec = AlgebraSpec::sl3(9).unwrap();
        let got = fuse(&spec, &w(1, 1), &w(1, 1)).unwrap();
        assert_eq!(got, vec![(w(0, 0), 1), (w(0, 3), 1), (w(1, 1), 2), (w(2, 2), 1), (w(3, 0), 1)]);
        assert_eq!(fuse(&spec, &w(0, 1), &w(0, 1)).unwrap(), vec![(w(0, 2), 1), (w(1, 0), 1)]);
        assert_eq!(fuse(&spec, &w(0, 0), &w(4, 2)).unwrap(), vec![(w(4, 2), 1)]);
    }

    #[test]
    fn classical_products_preserve_dimension() {
        for (a, b) in [(w(1, 1), w(1, 1)), (w(2, 0), w(1, 3)), (w(3, 3), w(2, 1))] {
            let total: u64 = classical_tensor(&a, &b).iter().map(|(x, m)| classical_dim(x) * *m as u64).sum();
            assert_eq!(total, classical_dim(&a) * classical_dim(&b));
        }
    }

    #[test]
    fn sl2_truncated_clebsch_gordan() {
        let spec = AlgebraSpec::sl2(4).unwrap();
        let a = LevelWeight::A1;
        assert_eq!(fuse(&spec, &a(1), &a(1)).unwrap(), vec![(a(0), 1), (a(2), 1)]);
        assert_eq!(fuse(&spec, &a(3), &a(3)).unwrap(), vec![(a(0), 1), (a(2), 1)]);
        assert_eq!(fuse(&spec, &a(2), &a(2)).unwrap(), vec![(a(0), 1), (a(2), 1), (a(4), 1)]);
    }

    #[test]
    fn currents_and_their_action() {
        let spec = AlgebraSpec::sl3(9).unwrap();
        assert_eq!(simple_currents(&spec).unwrap(), vec![w(0, 0), w(0, 9), w(9, 0)]);
        assert_eq!(current_action(&spec, &w(9, 0), &w(1, 1)).unwrap(), w(7, 1));
        assert_eq!(current_action(&spec, &w(9, 0), &w(3, 3)).unwrap(), w(3, 3));
        assert_eq!(current_action(&spec, &w(0, 0), &w(2, 5)).unwrap(), w(2, 5));
        assert!(matches!(current_action(&spec, &w(1, 1), &w(0, 0)), Err(WzwError::NotASimpleCurrent(_))));
        let sl2 = AlgebraSpec::sl2(4).unwrap();
        assert_eq!(simple_currents(&sl2).unwrap(), vec![LevelWeight::A1(0), LevelWeight::A1(4)]);
        assert_eq!(simple_currents(&AlgebraSpec::sl3(1).unwrap()).unwrap().len(), 3);
    }

    #[test]
    fn level_four_sl2_ring_and_dims() {
        let spec = AlgebraSpec::sl2(4).unwrap();
        let r = fusion_ring(&spec).unwrap();
        assert!(r.verify().passed());
        let dims: Vec<CycNum> = alcove(&spec).iter().map(|x| qdim(&spec, x).unwrap()).collect();
        let root3 = CycNum::sqrt(3).unwrap();
        assert_eq!(dims, vec![CycNum::one(), root3.clone(), CycNum::from_int(2), root3, CycNum::one()]);
    }
}
