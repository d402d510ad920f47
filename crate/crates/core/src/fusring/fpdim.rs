use super::{FusionRing, FusringError};
use crate::exactnum::{CycNum, QuadInt};

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100_000;

/// Frobenius–Perron dimensions, with an exact form when every value lies in
/// Z[√D] for D ∈ {3, 2} and the homomorphism identity holds exactly there.
#[derive(Clone, Debug, PartialEq)]
pub struct FpDims {
    pub values: Vec<f64>,
    pub exact: Option<Vec<QuadInt>>,
}

impl FpDims {
    pub fn exact_cycnum(&self) -> Option<Vec<CycNum>> {
        self.exact.as_ref()?.iter().map(|q| q.to_cycnum().ok()).collect()
    }

    pub fn global_dimension(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Power iteration on Σ_i L_i, where (L_i)_{jk} = N[i][j][k]; this matrix has
/// all entries positive and the FP dimension vector as its Perron vector.
pub fn fp_dims(r: &FusionRing) -> Result<FpDims, FusringError> {
    let n = r.rank();
    let mut m = vec![0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in r.product(i, j) {
                m[j * n + k] += c as f64;
            }
        }
    }
    let mut v = vec![1f64; n];
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut w: Vec<f64> = (0..n).map(|j| (0..n).map(|k| m[j * n + k] * v[k]).sum()).collect();
        let scale = w[r.unit()];
        if !(scale > 0.0) {
            return Err(FusringError::Shape("fusion matrix is not primitive".into()));
        }
        w.iter_mut().for_each(|x| *x /= scale);
        let delta = w.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if delta < TOLERANCE {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(FusringError::NoConvergence(MAX_ITERATIONS));
    }
    let exact = [3u32, 2].iter().find_map(|&d| {
        let q: Option<Vec<QuadInt>> = v.iter().map(|&x| recognize_quadratic(x, d)).collect();
        q.filter(|q| homomorphism_holds(r, q))
    });
    Ok(FpDims { values: v, exact })
}

/// Integers a, b with |a + b√d − x| < 1e−8, smallest |b| first.
pub fn recognize_quadratic(x: f64, d: u32) -> Option<QuadInt> {
    let root = (d as f64).sqrt();
    let bound = x.abs().ceil() as i64 + 2;
    (0..=bound).flat_map(|b| if b == 0 { vec![0] } else { vec![b, -b] }).find_map(|b| {
        let a = (x - b as f64 * root).round();
        ((a + b as f64 * root - x).abs() < 1e-8).then(|| QuadInt::new(a as i64, b, d))
    })
}

fn homomorphism_holds(r: &FusionRing, q: &[QuadInt]) -> bool {
    let n = r.rank();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let rhs = r
                .product(i, j)
                .into_iter()
                .fold(QuadInt::int(0, q[i].d), |acc, (k, c)| acc + QuadInt::int(c as i64, q[i].d) * q[k]);
            q[i] * q[j] == rhs
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_rings_have_unit_dims() {
        let d = fp_dims(&FusionRing::cyclic_group(5)).unwrap();
        assert!(d.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert!(d.exact.unwrap().iter().all(|q| *q == QuadInt::int(1, 3)));
    }

    #[test]
    fn fibonacci_is_not_in_the_recognized_rings() {
        let fib = FusionRing::from_products(vec!["I".into(), "τ".into()], 0, vec![0, 1], |a, b| match (a, b) {
            (0, x) | (x, 0) => vec![(x, 1)],
            _ => vec![(0, 1), (1, 1)],
        })
        .unwrap();
        let d = fp_dims(&fib).unwrap();
        assert!((d.values[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(d.exact.is_none());
    }

    #[test]
    fn recognizes_small_quadratics() {
        assert_eq!(recognize_quadratic(6.464101615137754, 3), Some(QuadInt::new(3, 2, 3)));
        assert_eq!(recognize_quadratic(1.0 + 2f64.sqrt(), 2), Some(QuadInt::new(1, 1, 2)));
        assert_eq!(recognize_quadratic(0.5, 3), None);
    }
}
