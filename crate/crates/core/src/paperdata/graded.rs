use serde::{Deserialize, Serialize};

use crate::fusring::{near_group_recognize, FusionRing};
use crate::report::Report;

/// A fusion ring with a grading by the cyclic group Z_n (components written additively).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRing {
    pub ring: FusionRing,
    pub group: usize,
    pub component_of: Vec<usize>,
}

impl GradedRing {
    pub fn component(&self, h: usize) -> Vec<usize> {
        (0..self.ring.rank()).filter(|&i| self.component_of[i] == h).collect()
    }
}

/// Grading law, faithfulness, duality h ↦ −h, and the trivial component
/// being a near-group ring of type Z₃+6.
pub fn verify_graded(gr: &GradedRing) -> Report {
    let r = &gr.ring;
    let n = gr.group;
    let mut rep = Report::new(format!("Z{n}-graded ring of rank {}", r.rank()));
    let shape_ok = n > 0 && gr.component_of.len() == r.rank() && gr.component_of.iter().all(|&h| h < n);
    rep.check(
        "component map",
        shape_ok,
        if shape_ok { String::new() } else { "component map does not fit the ring".into() },
    );
    if !shape_ok {
        return rep;
    }
    let c = &gr.component_of;

    let empty: Vec<usize> = (0..n).filter(|&h| gr.component(h).is_empty()).collect();
    rep.check(
        "faithful",
        empty.is_empty(),
        if empty.is_empty() { String::new() } else { format!("empty components {empty:?}") },
    );

    let mut violation = None;
    'outer: for i in 0..r.rank() {
        for j in 0..r.rank() {
            for (k, _) in r.product(i, j) {
                if c[k] != (c[i] + c[j]) % n {
                    violation = Some(format!(
                        "{} ∈ {}⊗{} lies in component {} not {}",
                        r.label(k),
                        r.label(i),
                        r.label(j),
                        c[k],
                        (c[i] + c[j]) % n
                    ));
                    break 'outer;
                }
            }
        }
    }
    rep.check("grading law", violation.is_none(), violation.unwrap_or_default());

    let bad_dual = (0..r.rank()).find(|&i| c[r.dual(i)] != (n - c[i]) % n);
    rep.check(
        "duality reverses components",
        bad_dual.is_none(),
        bad_dual.map(|i| format!("{} and its dual {}", r.label(i), r.label(r.dual(i)))).unwrap_or_default(),
    );

    let trivial = gr.component(0);
    let (ok, detail) = if !trivial.contains(&r.unit()) {
        (false, "trivial component misses the unit".to_string())
    } else {
        match r.restrict(&trivial) {
            Ok(sub) => {
                let kind = near_group_recognize(&sub);
                (kind == Some((3, 6)), format!("{kind:?}"))
            }
            Err(e) => (false, e.to_string()),
        }
    };
    rep.check("trivial component is near-group Z3+6", ok, detail);
    rep
}

/// N[i][j][k] = N[j][i][k] for all triples.
pub fn verify_commutativity(r: &FusionRing) -> bool {
    r.is_commutative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paperdata::golden_tables;

    #[test]
    fn golden_extensions_are_graded() {
        let c = golden_tables().unwrap();
        let b = c.graded("ring-b").unwrap();
        assert!(verify_graded(&b).passed(), "{}", verify_graded(&b));
        let names: Vec<&str> = b.component(1).iter().map(|&i| b.ring.label(i)).collect();
        assert_eq!(names, ["Y", "Z1", "Z2", "Z3"]);
        assert!(!verify_commutativity(&b.ring));
        let d = c.graded("ring-d").unwrap();
        assert!(verify_graded(&d).passed(), "{}", verify_graded(&d));
        assert!(verify_commutativity(&d.ring));
    }

    #[test]
    fn wrong_group_breaks_the_grading_law() {
        let mut b = golden_tables().unwrap().graded("ring-b").unwrap();
        b.group = 3;
        b.component_of = vec![0, 1, 2, 0, 1, 1, 1, 1];
        let rep = verify_graded(&b);
        assert_eq!(rep.get("grading law").unwrap().status, crate::report::Status::Fail);
    }

    #[test]
    fn cyclic_group_ring_is_commutative() {
        assert!(verify_commutativity(&FusionRing::cyclic_group(3)));
    }
}
