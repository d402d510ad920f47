use super::{group_label, FusionRing};

/// `(|G|, n)` when the ring has exactly one non-invertible basis element X
/// and X⊗X = Σ_g g + n·X.
pub fn near_group_recognize(r: &FusionRing) -> Option<(usize, u32)> {
    let rank = r.rank();
    let non_inv: Vec<usize> = (0..rank).filter(|&i| !r.is_invertible(i)).collect();
    let [x] = non_inv[..] else { return None };
    let sq = r.product(x, x);
    let n = sq.iter().find(|(k, _)| *k == x).map(|&(_, m)| m).unwrap_or(0);
    let group_part_ok = (0..rank).filter(|&g| g != x).all(|g| sq.contains(&(g, 1)));
    let nothing_else = sq.len() == rank - usize::from(n == 0);
    (group_part_ok && nothing_else).then_some((rank - 1, n))
}

/// Near-group ring for the cyclic group Z_m with X⊗X = Σ g + nX.
pub fn near_group_ring(m: usize, n: u32) -> FusionRing {
    let x = m;
    let mut labels: Vec<String> = (0..m).map(group_label).collect();
    labels.push("X".into());
    let mut dual: Vec<usize> = (0..m).map(|a| (m - a) % m).collect();
    dual.push(x);
    FusionRing::from_products(labels, 0, dual, |a, b| match (a == x, b == x) {
        (false, false) => vec![((a + b) % m, 1)],
        (true, false) | (false, true) => vec![(x, 1)],
        (true, true) => {
            let mut out: Vec<(usize, u32)> = (0..m).map(|g| (g, 1)).collect();
            if n > 0 {
                out.push((x, n));
            }
            out
        }
    })
    .expect("well-formed near-group ring")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_z3_plus_6() {
        let r = near_group_ring(3, 6);
        assert!(r.verify().passed());
        assert_eq!(near_group_recognize(&r), Some((3, 6)));
    }

    #[test]
    fn group_ring_is_not_near_group() {
        assert_eq!(near_group_recognize(&FusionRing::cyclic_group(3)), None);
    }

    #[test]
    fn tambara_yamagami_is_near_group_with_n_zero() {
        let r = near_group_ring(2, 0);
        assert!(r.verify().passed());
        assert_eq!(near_group_recognize(&r), Some((2, 0)));
    }
}
