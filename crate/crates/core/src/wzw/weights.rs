//! Weight diagrams of finite-dimensional sl2 / sl3 irreducibles.

use std::collections::BTreeMap;

use super::LevelWeight;

// Inner product on fundamental-weight coordinates, scaled by 3 so it is integral.
fn form(x: (i64, i64), y: (i64, i64)) -> i64 {
    2 * x.0 * y.0 + x.0 * y.1 + x.1 * y.0 + 2 * x.1 * y.1
}

const POSITIVE_ROOTS: [(i64, i64); 3] = [(2, -1), (-1, 2), (1, 1)];
const RHO: (i64, i64) = (1, 1);

/// Weights (in Dynkin coordinates) with their multiplicities.
///
/// sl3 uses Freudenthal's recursion over the depth below the highest weight;
/// for sl2 every weight m, m−2, …, −m occurs once.
pub fn weight_multiplicities(hw: &LevelWeight) -> Vec<((i64, i64), u32)> {
    match *hw {
        LevelWeight::A1(m) => (0..=m as i64).map(|j| ((m as i64 - 2 * j, 0), 1)).collect(),
        LevelWeight::A2(a, b) => freudenthal((a as i64, b as i64)),
    }
}

fn freudenthal(mu: (i64, i64)) -> Vec<((i64, i64), u32)> {
    let depth = (mu.0 + mu.1) as usize;
    // mult[n1][n2] for ν = μ − n1·α1 − n2·α2
    let mut mult = vec![vec![0i64; depth + 1]; depth + 1];
    let at = |n1: i64, n2: i64| (mu.0 - 2 * n1 + n2, mu.1 + n1 - 2 * n2);
    let top = {
        let s = (mu.0 + RHO.0, mu.1 + RHO.1);
        form(s, s)
    };
    let mut out = BTreeMap::new();
    for level in 0..=2 * depth {
        for n1 in 0..=depth.min(level) {
            let n2 = level - n1;
            if n2 > depth {
                continue;
            }
            let nu = at(n1 as i64, n2 as i64);
            let value = if level == 0 {
                1
            } else {
                let shifted = (nu.0 + RHO.0, nu.1 + RHO.1);
                let denom = top - form(shifted, shifted);
                if denom == 0 {
                    0
                } else {
                    let mut sum = 0;
                    for (r, &alpha) in POSITIVE_ROOTS.iter().enumerate() {
                        // α in root coordinates: α1 = (1,0), α2 = (0,1), θ = (1,1)
                        let (d1, d2) = [(1usize, 0usize), (0, 1), (1, 1)][r];
                        let mut j = 1;
                        while j * d1 <= n1 && j * d2 <= n2 {
                            let m = mult[n1 - j * d1][n2 - j * d2];
                            if m != 0 {
                                let w = (nu.0 + j as i64 * alpha.0, nu.1 + j as i64 * alpha.1);
                                sum += m * form(w, alpha);
                            }
                            j += 1;
                        }
                    }
                    debug_assert_eq!((2 * sum) % denom, 0, "Freudenthal recursion must be integral");
                    (2 * sum / denom).max(0)
                }
            };
            mult[n1][n2] = value;
            if value > 0 {
                out.insert(nu, value as u32);
            }
        }
    }
    out.into_iter().collect()
}

/// Weyl dimension formula, for cross-checks.
pub(crate) fn classical_dim(hw: &LevelWeight) -> u64 {
    match *hw {
        LevelWeight::A1(m) => m as u64 + 1,
        LevelWeight::A2(a, b) => (a as u64 + 1) * (b as u64 + 1) * (a as u64 + b as u64 + 2) / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_has_zero_weight_twice() {
        let w = weight_multiplicities(&LevelWeight::A2(1, 1));
        assert_eq!(w.iter().map(|(_, m)| *m as u64).sum::<u64>(), 8);
        assert!(w.contains(&((0, 0), 2)));
    }

    #[test]
    fn total_multiplicity_is_weyl_dimension() {
        for a in 0..7 {
            for b in 0..7 {
                let hw = LevelWeight::A2(a, b);
                let total: u64 = weight_multiplicities(&hw).iter().map(|(_, m)| *m as u64).sum();
                assert_eq!(total, classical_dim(&hw), "{hw}");
            }
        }
    }

    #[test]
    fn weights_are_weyl_symmetric() {
        let w: BTreeMap<_, _> = weight_multiplicities(&LevelWeight::A2(3, 1)).into_iter().collect();
        for (&(x, y), &m) in &w {
            // s1(x, y) = (−x, x + y)
            assert_eq!(w.get(&(-x, x + y)), Some(&m));
            assert_eq!(w.get(&(x + y, -y)), Some(&m));
        }
    }
}
