use crate::exactnum::QuadInt;

/// All multisets {d₁ ≤ d₂ ≤ …} of d = a + b√3 (a ≥ 1, b ≥ 0, d ≠ 1) with
/// `forced_invertibles + Σ dᵢ² = total`, in depth-first order.
///
/// Every square has nonnegative rational and √3 parts, so both parts of the
/// remainder bound the search.
pub fn sum_of_squares_search(total: QuadInt, forced_invertibles: u32) -> Vec<Vec<QuadInt>> {
    let rest = total - QuadInt::int(forced_invertibles as i64, total.d);
    if rest.a < 0 || rest.b < 0 {
        return Vec::new();
    }
    let mut candidates = Vec::new();
    let mut b = 0i64;
    while 3 * b * b <= rest.a {
        let mut a = 1i64;
        while a * a + 3 * b * b <= rest.a && 2 * a * b <= rest.b {
            if (a, b) != (1, 0) {
                candidates.push(QuadInt::new(a, b, total.d));
            }
            a += 1;
        }
        b += 1;
    }
    candidates.sort_by(|x, y| x.value().total_cmp(&y.value()));
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dfs(&candidates, 0, rest, &mut stack, &mut out);
    out
}

fn dfs(cands: &[QuadInt], from: usize, rest: QuadInt, stack: &mut Vec<QuadInt>, out: &mut Vec<Vec<QuadInt>>) {
    if rest.a == 0 && rest.b == 0 {
        out.push(stack.clone());
        return;
    }
    for (i, &c) in cands.iter().enumerate().skip(from) {
        let sq = c.square();
        if sq.a <= rest.a && sq.b <= rest.b {
            stack.push(c);
            dfs(cands, i, rest - sq, stack, out);
            stack.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b, 3)
    }

    #[test]
    fn two_decompositions_of_24_12() {
        let sols = sum_of_squares_search(q(24, 12), 3);
        assert_eq!(sols, vec![vec![q(2, 1), q(2, 1), q(2, 1)], vec![q(3, 2)]]);
    }

    #[test]
    fn only_invertibles() {
        assert_eq!(sum_of_squares_search(q(4, 0), 4), vec![Vec::<QuadInt>::new()]);
        assert!(sum_of_squares_search(q(3, 0), 4).is_empty());
    }

    #[test]
    fn results_reproduce_the_total() {
        for total in [q(24, 12), q(7, 2), q(40, 20), q(13, 4)] {
            for sol in sum_of_squares_search(total, 3) {
                let sum = sol.iter().fold(q(3, 0), |acc, d| acc + d.square());
                assert_eq!(sum, total);
            }
        }
    }

    #[test]
    fn one_plus_root3() {
        // (1+√3)² = 4+2√3
        assert_eq!(sum_of_squares_search(q(7, 2), 3), vec![vec![q(1, 1)]]);
        assert!(sum_of_squares_search(q(6, 2), 3).is_empty());
        assert_eq!(sum_of_squares_search(q(6, 2), 2), vec![vec![q(1, 1)]]);
    }
}
