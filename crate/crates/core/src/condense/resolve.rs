use std::collections::BTreeSet;

use super::{CondenseError, InducedFusion};
use crate::fusring::{verify_modular, CompletionProblem, FusionRing, ModularData};
use crate::wzw::AlgebraSpec;

pub const SPLIT_SIZE: usize = 3;

/// The unique ring completing `partial`, canonical under relabeling of the
/// split family.
pub fn resolve_split(spec: &AlgebraSpec, partial: &InducedFusion) -> Result<FusionRing, CondenseError> {
    let mut all = resolve_split_all(spec, partial, None)?;
    if all.len() > 1 {
        // fusion constraints alone can leave several rings; keep the modular ones
        let dims: Vec<_> = partial.simples.iter().map(|s| s.dim.clone()).collect();
        let twists: Vec<_> = partial.simples.iter().map(|s| s.twist.clone()).collect();
        all.retain(|ring| {
            ModularData::from_balancing(ring.clone(), dims.clone(), twists.clone())
                .is_ok_and(|md| verify_modular(&md).passed())
        });
    }
    match all.len() {
        0 => Err(CondenseError::NoSolution),
        1 => Ok(all.remove(0)),
        _ => Err(CondenseError::AmbiguousBeyondRelabeling(all)),
    }
}

/// Every completion, one representative per relabeling class. The seed only
/// changes the search order.
pub fn resolve_split_all(
    _spec: &AlgebraSpec,
    partial: &InducedFusion,
    seed: Option<u64>,
) -> Result<Vec<FusionRing>, CondenseError> {
    let split: Vec<usize> = partial.families.iter().filter(|f| f.len() > 1).flatten().copied().collect();
    if split.len() != SPLIT_SIZE || partial.families.iter().filter(|f| f.len() > 1).count() != 1 {
        return Err(CondenseError::PreconditionFailed(format!(
            "expected one split family of size {SPLIT_SIZE}, found {} split simples",
            split.len()
        )));
    }
    let labels = partial.labels();
    let r = labels.len();
    let unit = partial
        .simples
        .iter()
        .position(|s| s.ambient.iter().any(|w| *w == crate::wzw::AlgebraSpec::unit(_spec)))
        .ok_or_else(|| CondenseError::PreconditionFailed("no unit orbit".into()))?;
    let dims: Vec<_> = partial.simples.iter().map(|s| s.dim.clone()).collect();

    let mut found = BTreeSet::new();
    for dual in split_dualities(partial, &split, unit) {
        let mut p = CompletionProblem::new(labels.clone(), unit, dual).commutative(true).with_dims(dims.clone());
        for (&(a, b, c), &m) in &partial.known {
            p.fix(a, b, c, m);
        }
        for s in &partial.family_sums {
            let mut entries = Vec::new();
            for &i in &partial.families[s.left] {
                for &j in &partial.families[s.right] {
                    for &k in &partial.families[s.target] {
                        entries.push((i, j, k));
                    }
                }
            }
            p.add_family_sum(entries, s.total);
        }
        debug_assert_eq!(p.rank(), r);
        for ring in p.solve(seed)?.solutions {
            if ring.verify().passed() {
                found.insert(CanonKey(canonical_relabeling(&ring, &split)));
            }
        }
    }
    Ok(found.into_iter().map(|k| k.0).collect())
}

// Orbit duals are forced by the ambient duality; on the split family the
// involution is unknown, so try one representative per conjugacy class.
fn split_dualities(partial: &InducedFusion, split: &[usize], unit: usize) -> Vec<Vec<usize>> {
    let r = partial.simples.len();
    let mut base = vec![usize::MAX; r];
    for (i, s) in partial.simples.iter().enumerate() {
        if split.contains(&i) {
            continue;
        }
        let target = s.label.orbit_rep.dual();
        base[i] = partial
            .simples
            .iter()
            .position(|t| t.label.split_index.is_none() && t.ambient.contains(&target))
            .expect("dual of a local orbit is local");
    }
    debug_assert_eq!(base[unit], unit);
    let mut identity = base.clone();
    for &x in split {
        identity[x] = x;
    }
    let mut swap = identity.clone();
    swap[split[1]] = split[2];
    swap[split[2]] = split[1];
    vec![identity, swap]
}

/// Lexicographically smallest structure constants over all permutations of
/// `split`, among relabelings where the first split simple occurs in its own square.
pub fn canonical_relabeling(ring: &FusionRing, split: &[usize]) -> FusionRing {
    let r = ring.rank();
    let mut best: Option<FusionRing> = None;
    for perm in permutations(split.len()) {
        let mut full: Vec<usize> = (0..r).collect();
        for (a, &b) in perm.iter().enumerate() {
            full[split[a]] = split[b];
        }
        let cand = ring.permuted(&full);
        let x1 = split[0];
        let key = (cand.get(x1, x1, x1) == 0, cand.constants().to_vec());
        let better = match &best {
            None => true,
            Some(b) => key < (b.get(x1, x1, x1) == 0, b.constants().to_vec()),
        };
        if better {
            best = Some(cand);
        }
    }
    // the split simples are interchangeable, so positions keep their names
    best.expect("at least the identity permutation").relabeled(ring.labels().to_vec()).expect("same rank")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[derive(PartialEq, Eq)]
struct CanonKey(FusionRing);

impl PartialOrd for CanonKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.duals(), self.0.constants()).cmp(&(other.0.duals(), other.0.constants()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::induced_fusion;
    use super::*;

    #[test]
    fn level_nine_split_is_unique() {
        let spec = AlgebraSpec::sl3(9).unwrap();
        let partial = induced_fusion(&spec).unwrap();
        let ring = resolve_split(&spec, &partial).unwrap();
        let x = |i: u8| partial.simples.iter().position(|s| s.label.split_index == Some(i)).unwrap();
        let by = |a, b| {
            partial
                .simples
                .iter()
                .position(|s| s.label.split_index.is_none() && s.ambient.contains(&crate::wzw::LevelWeight::A2(a, b)))
                .unwrap()
        };
        let (x1, x2, x3) = (x(1), x(2), x(3));
        assert_eq!(ring.get(x1, x1, x1), 2);
        assert_eq!(ring.get(x1, x1, x2), 0);
        assert_eq!(ring.get(x1, x2, x3), 1);
        assert_eq!(ring.get(x1, x1, by(0, 0)), 1);
        assert_eq!(ring.get(x1, x2, by(1, 1)), 1);
        for seed in [1, 2, 3] {
            let again = resolve_split_all(&spec, &partial, Some(seed)).unwrap();
            assert_eq!(again, vec![ring.clone()]);
        }
    }

    #[test]
    fn permutations_of_three() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().collect::<BTreeSet<_>>().len(), 6);
    }

    #[test]
    fn level_three_keeps_the_modular_ring() {
        let spec = AlgebraSpec::sl3(3).unwrap();
        let induced = crate::condense::induced_fusion(&spec).unwrap();
        let all = resolve_split_all(&spec, &induced, None).unwrap();
        let self_dual = |r: &FusionRing| (0..r.rank()).all(|i| r.dual(i) == i);
        assert_eq!(all.len(), 2);
        assert_eq!(all.iter().filter(|r| self_dual(r)).count(), 1);
        let ring = resolve_split(&spec, &induced).unwrap();
        assert!(self_dual(&ring), "Z2×Z2 expected");
    }
}
