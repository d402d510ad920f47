//! Z₃ simple-current condensation of C(sl3, k) for 3 | k: orbits under the
//! current action, local simples, induced fusion, resolution of the split
//! fixed point, and the pipelines built on the condensed data.

mod pipelines;
mod resolve;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{CycNum, Rational};
use crate::fusring::{FusionRing, FusringError, ModularData};
use crate::report::Report;
use crate::wzw::{self, AlgebraSpec, LevelWeight, RankType, WzwError};

pub use pipelines::{near_group_pipeline, near_group_pipeline_with, prop38_pipeline, NearGroupOutcome};
pub use resolve::{canonical_relabeling, resolve_split, resolve_split_all, SPLIT_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CondenseError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no fusion ring satisfies the split constraints")]
    NoSolution,
    #[error("{} fusion rings satisfy the split constraints and differ beyond relabeling", .0.len())]
    AmbiguousBeyondRelabeling(Vec<FusionRing>),
    #[error("twist is not constant on the orbit of {0}")]
    TwistNotConstant(LevelWeight),
    #[error("rejection search unexpectedly found {0} ring(s)")]
    PipelineBranchSurvived(usize),
    #[error(transparent)]
    Wzw(#[from] WzwError),
    #[error(transparent)]
    Ring(#[from] FusringError),
}

impl From<crate::exactnum::ExactError> for CondenseError {
    fn from(e: crate::exactnum::ExactError) -> Self {
        CondenseError::Ring(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    Orbit,
    Split,
}

/// A simple object of the condensed category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CondensedLabel {
    pub kind: LabelKind,
    pub orbit_rep: LevelWeight,
    pub split_index: Option<u8>,
}

impl fmt::Display for CondensedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split_index {
            None => write!(f, "[{}]", self.orbit_rep),
            Some(i) => write!(f, "[{}]_{i}", self.orbit_rep),
        }
    }
}

/// Free orbits (size 3) and fixed points of the current action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbits {
    pub free: Vec<Vec<LevelWeight>>,
    pub fixed: Vec<LevelWeight>,
}

impl Orbits {
    pub fn orbit_of(&self, w: &LevelWeight) -> Option<&[LevelWeight]> {
        if self.fixed.contains(w) {
            return self.fixed.iter().find(|x| *x == w).map(std::slice::from_ref);
        }
        self.free.iter().find(|o| o.contains(w)).map(|o| o.as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSimple {
    pub label: CondensedLabel,
    pub dim: CycNum,
    pub twist: CycNum,
    /// Ambient weights the simple is built from (the orbit, or the fixed point).
    pub ambient: Vec<LevelWeight>,
}

/// Structure constants forced by the free-module functor F_A, before the
/// split family is resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedFusion {
    pub simples: Vec<LocalSimple>,
    /// Basis indices grouped by ambient source: one entry per orbit, one for the split family.
    pub families: Vec<Vec<usize>>,
    /// Exact N[a][b][c] for orbit-kind a, b, c.
    pub known: BTreeMap<(usize, usize, usize), u32>,
    /// Σ_{i∈F, j∈G, l∈H} N[i][j][l] = total for families F, G, H.
    pub family_sums: Vec<FamilySum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySum {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    pub total: u32,
}

impl InducedFusion {
    pub fn labels(&self) -> Vec<String> {
        self.simples.iter().map(|s| s.label.to_string()).collect()
    }

    pub fn family_of(&self, i: usize) -> usize {
        self.families.iter().position(|f| f.contains(&i)).expect("every simple lies in a family")
    }

    /// For orbit-kind a, b: the orbit part of a⊗b and the total multiplicity
    /// of the split family.
    pub fn product(&self, a: usize, b: usize) -> (Vec<(usize, u32)>, u32) {
        let orbit_part = (0..self.simples.len())
            .filter_map(|c| self.known.get(&(a, b, c)).filter(|&&m| m > 0).map(|&m| (c, m)))
            .collect();
        let (fa, fb) = (self.family_of(a), self.family_of(b));
        let split_total = self
            .family_sums
            .iter()
            .filter(|s| s.left == fa && s.right == fb && self.families[s.target].len() > 1)
            .map(|s| s.total)
            .sum();
        (orbit_part, split_total)
    }
}

/// Everything known about the condensed category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensedCategory {
    pub spec: AlgebraSpec,
    pub algebra: Vec<LevelWeight>,
    pub simples: Vec<CondensedLabel>,
    pub md: ModularData,
    /// Ambient weights of each simple, in the order of `simples`.
    pub ambient_map: Vec<Vec<LevelWeight>>,
}

fn require_a2(spec: &AlgebraSpec) -> Result<(), CondenseError> {
    if spec.rank_type != RankType::A2 {
        return Err(CondenseError::PreconditionFailed("condensation is implemented for sl3 only".into()));
    }
    Ok(())
}

fn generator(spec: &AlgebraSpec) -> LevelWeight {
    LevelWeight::A2(spec.level, 0)
}

/// Passes iff 3 | k and every nontrivial simple current has twist exactly 1.
pub fn etale_check(spec: &AlgebraSpec) -> Result<Report, CondenseError> {
    require_a2(spec)?;
    let mut rep = Report::new(format!("étale check for {} level {}", spec.name(), spec.level));
    let divisible = spec.level.is_multiple_of(3);
    rep.check(
        "level divisible by 3",
        divisible,
        if divisible { String::new() } else { format!("level not divisible by 3 (k = {})", spec.level) },
    );
    for j in wzw::simple_currents(spec)? {
        if j == spec.unit() {
            continue;
        }
        let t = wzw::twist(spec, &j)?;
        rep.check(format!("θ_{j} = 1"), t.is_one(), if t.is_one() { String::new() } else { format!("θ = {t}") });
    }
    Ok(rep)
}

fn require_etale(spec: &AlgebraSpec) -> Result<(), CondenseError> {
    let rep = etale_check(spec)?;
    let first = rep.failures().next().map(|c| if c.detail.is_empty() { c.key.clone() } else { c.detail.clone() });
    match first {
        None => Ok(()),
        Some(reason) => Err(CondenseError::PreconditionFailed(reason)),
    }
}

/// Orbits under the current (k,0); each free orbit listed from its lexicographically minimal member.
pub fn orbits(spec: &AlgebraSpec) -> Result<Orbits, CondenseError> {
    require_etale(spec)?;
    let j = generator(spec);
    let mut seen = std::collections::BTreeSet::new();
    let mut free = Vec::new();
    let mut fixed = Vec::new();
    for w in wzw::alcove(spec) {
        if seen.contains(&w) {
            continue;
        }
        let mut orbit = vec![w];
        let mut cur = wzw::current_action(spec, &j, &w)?;
        while cur != w {
            orbit.push(cur);
            cur = wzw::current_action(spec, &j, &cur)?;
        }
        seen.extend(orbit.iter().copied());
        match orbit.len() {
            1 => fixed.push(w),
            3 => free.push(orbit),
            n => return Err(CondenseError::PreconditionFailed(format!("orbit of {w} has size {n}"))),
        }
    }
    Ok(Orbits { free, fixed })
}

/// Local simples: root-lattice orbits (twist constancy is checked exactly),
/// then each fixed point split into three simples of a third of its dimension.
pub fn local_simples(spec: &AlgebraSpec) -> Result<Vec<LocalSimple>, CondenseError> {
    let orb = orbits(spec)?;
    let mut out = Vec::new();
    for o in &orb.free {
        let rep = o[0];
        let twists: Vec<CycNum> = o.iter().map(|w| wzw::twist(spec, w)).collect::<Result<_, _>>()?;
        let constant = twists.iter().all(|t| *t == twists[0]);
        if rep.in_root_lattice() != constant {
            return Err(CondenseError::TwistNotConstant(rep));
        }
        if !rep.in_root_lattice() {
            continue;
        }
        out.push(LocalSimple {
            label: CondensedLabel { kind: LabelKind::Orbit, orbit_rep: rep, split_index: None },
            dim: wzw::qdim(spec, &rep)?,
            twist: twists[0].clone(),
            ambient: o.clone(),
        });
    }
    let third = Rational::new(1.into(), (SPLIT_SIZE as i64).into());
    for &f in &orb.fixed {
        let dim = wzw::qdim(spec, &f)?.scale(&third);
        let twist = wzw::twist(spec, &f)?;
        for i in 1..=SPLIT_SIZE as u8 {
            out.push(LocalSimple {
                label: CondensedLabel { kind: LabelKind::Split, orbit_rep: f, split_index: Some(i) },
                dim: dim.clone(),
                twist: twist.clone(),
                ambient: vec![f],
            });
        }
    }
    Ok(out)
}

/// Push ambient fusion through F_A. Orbit-only triples are exact; anything
/// touching the split family is recorded as a family sum.
pub fn induced_fusion(spec: &AlgebraSpec) -> Result<InducedFusion, CondenseError> {
    let simples = local_simples(spec)?;
    let mut families: Vec<Vec<usize>> = Vec::new();
    for (i, s) in simples.iter().enumerate() {
        match families.iter_mut().find(|f| simples[f[0]].label.orbit_rep == s.label.orbit_rep) {
            Some(f) => f.push(i),
            None => families.push(vec![i]),
        }
    }
    let family_of_weight = |w: &LevelWeight| families.iter().position(|f| simples[f[0]].ambient.contains(w));
    let mut known = BTreeMap::new();
    let mut family_sums = Vec::new();
    for (fa, a) in families.iter().enumerate() {
        for (fb, b) in families.iter().enumerate() {
            let ra = simples[a[0]].ambient[0];
            let rb = simples[b[0]].ambient[0];
            let mut per_family = vec![0u32; families.len()];
            for (w, m) in wzw::fuse(spec, &ra, &rb)? {
                let t = family_of_weight(&w)
                    .ok_or_else(|| CondenseError::PreconditionFailed(format!("{ra}⊗{rb} contains non-local {w}")))?;
                per_family[t] += m;
            }
            for (ft, &m) in per_family.iter().enumerate() {
                let target = &families[ft];
                // F_A(fixed point) is the sum of the whole split family
                let total = m * target.len() as u32;
                if a.len() == 1 && b.len() == 1 && target.len() == 1 {
                    known.insert((a[0], b[0], target[0]), total);
                } else {
                    family_sums.push(FamilySum { left: fa, right: fb, target: ft, total });
                }
            }
        }
    }
    Ok(InducedFusion { simples, families, known, family_sums })
}

/// Resolved ring, inherited twists and balancing-equation S.
pub fn condensed_category(spec: &AlgebraSpec) -> Result<CondensedCategory, CondenseError> {
    let induced = induced_fusion(spec)?;
    let ring = resolve_split(spec, &induced)?;
    let dims = induced.simples.iter().map(|s| s.dim.clone()).collect();
    let twists = induced.simples.iter().map(|s| s.twist.clone()).collect();
    let md = ModularData::from_balancing(ring, dims, twists)?;
    let algebra = vec![spec.unit(), generator(spec), LevelWeight::A2(0, spec.level)];
    Ok(CondensedCategory {
        spec: *spec,
        algebra,
        simples: induced.simples.iter().map(|s| s.label).collect(),
        ambient_map: induced.simples.iter().map(|s| s.ambient.clone()).collect(),
        md,
    })
}

pub fn condensed_modular_data(spec: &AlgebraSpec) -> Result<ModularData, CondenseError> {
    Ok(condensed_category(spec)?.md)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: u32, b: u32) -> LevelWeight {
        LevelWeight::A2(a, b)
    }

    #[test]
    fn etale_levels() {
        assert!(etale_check(&AlgebraSpec::sl3(9).unwrap()).unwrap().passed());
        assert!(etale_check(&AlgebraSpec::sl3(3).unwrap()).unwrap().passed());
        let one = etale_check(&AlgebraSpec::sl3(1).unwrap()).unwrap();
        assert!(!one.passed());
        assert!(
            matches!(orbits(&AlgebraSpec::sl3(4).unwrap()), Err(CondenseError::PreconditionFailed(m)) if m.contains("not divisible by 3"))
        );
    }

    #[test]
    fn orbit_partition() {
        let o = orbits(&AlgebraSpec::sl3(9).unwrap()).unwrap();
        assert_eq!(o.free.len(), 18);
        assert_eq!(o.fixed, vec![w(3, 3)]);
        let mut y1 = o.orbit_of(&w(1, 1)).unwrap().to_vec();
        y1.sort();
        assert_eq!(y1, vec![w(1, 1), w(1, 7), w(7, 1)]);
        let o3 = orbits(&AlgebraSpec::sl3(3).unwrap()).unwrap();
        assert_eq!((o3.free.len(), o3.fixed.clone()), (3, vec![w(1, 1)]));
    }

    #[test]
    fn nine_local_simples() {
        let s = local_simples(&AlgebraSpec::sl3(9).unwrap()).unwrap();
        assert_eq!(s.len(), 9);
        assert!(s.iter().all(|x| x.label.orbit_rep != w(1, 0)));
        let total: CycNum = s.iter().map(|x| &x.dim * &x.dim).sum();
        assert_eq!(total, CycNum::quadratic(336, 192, 3).unwrap());
    }

    #[test]
    fn induced_products() {
        let spec = AlgebraSpec::sl3(9).unwrap();
        let f = induced_fusion(&spec).unwrap();
        let idx = |a, b| f.simples.iter().position(|s| s.label.orbit_rep == w(a, b)).unwrap();
        let (y1, y2, y3, y4) = (idx(1, 1), idx(0, 6), idx(0, 3), idx(2, 2));
        let (orbit, split) = f.product(y1, y1);
        let mut expect = vec![(idx(0, 0), 1), (y1, 2), (y2, 1), (y3, 1), (y4, 1)];
        expect.sort();
        assert_eq!((orbit, split), (expect, 0));
        let (_, split) = f.product(y4, y4);
        assert_eq!(split, 6);
    }
}
