//! Per-order tables for Q(ζ_N): the cyclotomic polynomial and the reduced
//! power-basis image of every ζ_N^e, 0 ≤ e < N.

use std::sync::OnceLock;

use num_integer::Integer;

use super::{ExactError, MAX_ORDER};

pub(crate) struct CycloField {
    pub phi: usize,
    /// `powers[e]` holds the integer coordinates of ζ_N^e in {1, ζ, …, ζ^{φ-1}}.
    pub powers: Vec<Vec<i64>>,
}

static FIELDS: [OnceLock<CycloField>; MAX_ORDER as usize + 1] = [const { OnceLock::new() }; MAX_ORDER as usize + 1];

pub(crate) fn field(order: u32) -> Result<&'static CycloField, ExactError> {
    if order == 0 {
        return Err(ExactError::ZeroOrder);
    }
    if order > MAX_ORDER {
        return Err(ExactError::CapExceeded(order as u64));
    }
    Ok(FIELDS[order as usize].get_or_init(|| CycloField::build(order)))
}

pub(crate) fn check_order(order: u64) -> Result<u32, ExactError> {
    if order == 0 {
        Err(ExactError::ZeroOrder)
    } else if order > MAX_ORDER as u64 {
        Err(ExactError::CapExceeded(order))
    } else {
        Ok(order as u32)
    }
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

// Division by a monic polynomial that is known to be exact.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[i + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl CycloField {
    fn build(order: u32) -> Self {
        let poly = cyclotomic_polynomial(order);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then eliminate x^phi using the monic relation
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            next[1..phi].copy_from_slice(&cur[..phi - 1]);
            if top != 0 {
                for (t, slot) in next.iter_mut().enumerate() {
                    *slot -= top * poly[t];
                }
            }
            cur = next;
        }
        CycloField { phi, powers }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn totient_matches_degree() {
        for n in 1..=MAX_ORDER {
            assert_eq!(totient(n), cyclotomic_polynomial(n).len() - 1, "n = {n}");
        }
    }

    #[test]
    fn zeta_to_the_order_is_one() {
        for n in 1..=MAX_ORDER {
            let f = field(n).unwrap();
            // ζ^N = ζ^(N-1) · ζ; check through the table by one more step
            let last = &f.powers[n as usize - 1];
            let mut shifted = vec![0i64; f.phi];
            let poly = cyclotomic_polynomial(n);
            let top = last[f.phi - 1];
            shifted[1..f.phi].copy_from_slice(&last[..f.phi - 1]);
            for (t, s) in shifted.iter_mut().enumerate() {
                *s -= top * poly[t];
            }
            let mut one = vec![0i64; f.phi];
            one[0] = 1;
            assert_eq!(shifted, one, "order {n}");
        }
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(field(73), Err(ExactError::CapExceeded(73))));
        assert!(matches!(field(0), Err(ExactError::ZeroOrder)));
    }
}
