//! Bounded exhaustive completion of partially known fusion rules.
//!
//! Unknown structure constants are grouped into classes that Frobenius
//! reciprocity (and optionally commutativity) forces to be equal. The search
//! assigns classes depth-first, pruning with linear constraints (family sums,
//! dimension additivity) and interval bounds on the associativity equations.
//! Every leaf is re-checked with [`FusionRing::verify`] and, when exact
//! dimensions are supplied, with exact dimension additivity.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FusionRing, FusringError};
use crate::exactnum::CycNum;

const EPS: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct CompletionProblem {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    known: Vec<Option<u32>>,
    family_sums: Vec<(Vec<(usize, usize, usize)>, u32)>,
    dims: Option<Vec<CycNum>>,
    bound: u32,
    commutative: bool,
    node_limit: u64,
}

#[derive(Clone, Debug)]
pub struct CompletionOutcome {
    pub solutions: Vec<FusionRing>,
    pub nodes: u64,
    pub unknowns: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Val {
    Known(u32),
    Var(usize),
}

struct Linear {
    terms: Vec<(usize, f64)>,
    target: f64,
}

// Σ lhs products = Σ rhs products, plus integer constants moved to each side.
#[derive(PartialEq, Eq, Hash)]
struct Assoc {
    lhs: Vec<(Val, Val)>,
    rhs: Vec<(Val, Val)>,
    lhs_const: u64,
    rhs_const: u64,
}

impl CompletionProblem {
    /// Unit and duality laws are filled in; everything else starts unknown.
    pub fn new(labels: Vec<String>, unit: usize, dual: Vec<usize>) -> Self {
        let r = labels.len();
        let mut p = CompletionProblem {
            labels,
            unit,
            dual,
            known: vec![None; r * r * r],
            family_sums: Vec::new(),
            dims: None,
            bound: u32::MAX,
            commutative: false,
            node_limit: 5_000_000,
        };
        for j in 0..r {
            for k in 0..r {
                let v = u32::from(j == k);
                let (a, b) = (p.idx(unit, j, k), p.idx(j, unit, k));
                p.known[a] = Some(v);
                p.known[b] = Some(v);
            }
        }
        for i in 0..r {
            for j in 0..r {
                let v = u32::from(j == p.dual[i]);
                let x = p.idx(i, j, unit);
                p.known[x] = Some(v);
            }
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let r = self.rank();
        (i * r + j) * r + k
    }

    pub fn fix(&mut self, i: usize, j: usize, k: usize, value: u32) {
        let x = self.idx(i, j, k);
        self.known[x] = Some(value);
    }

    pub fn known(&self, i: usize, j: usize, k: usize) -> Option<u32> {
        self.known[self.idx(i, j, k)]
    }

    pub fn add_family_sum(&mut self, entries: Vec<(usize, usize, usize)>, total: u32) {
        self.family_sums.push((entries, total));
    }

    /// Exact dimensions; used for bounds, float pruning and the final exact check.
    pub fn with_dims(mut self, dims: Vec<CycNum>) -> Self {
        self.dims = Some(dims);
        self
    }

    pub fn with_bound(mut self, bound: u32) -> Self {
        self.bound = bound;
        self
    }

    pub fn commutative(mut self, yes: bool) -> Self {
        self.commutative = yes;
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = limit;
        self
    }

    /// All completions. A seed shuffles the tie-breaking order of the
    /// variables; the solution set does not depend on it.
    pub fn solve(&self, seed: Option<u64>) -> Result<CompletionOutcome, FusringError> {
        let Some(mut st) = Compiled::build(self)? else {
            return Ok(CompletionOutcome { solutions: Vec::new(), nodes: 0, unknowns: 0 });
        };
        if let Some(seed) = seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            st.tiebreak.shuffle(&mut rng);
        }
        let mut solutions = Vec::new();
        let mut seen = HashSet::new();
        st.dfs(self, &mut solutions, &mut seen)?;
        solutions.sort_by(|a: &FusionRing, b| a.constants().cmp(b.constants()));
        Ok(CompletionOutcome { solutions, nodes: st.nodes, unknowns: st.class_of_var.len() })
    }
}

struct Compiled {
    entry_val: Vec<Val>,
    class_of_var: Vec<usize>,
    ub: Vec<u32>,
    value: Vec<Option<u32>>,
    linear: Vec<Linear>,
    assoc: Vec<Assoc>,
    lin_of: Vec<Vec<usize>>,
    assoc_of: Vec<Vec<usize>>,
    tiebreak: Vec<usize>,
    nodes: u64,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

impl Compiled {
    fn build(p: &CompletionProblem) -> Result<Option<Self>, FusringError> {
        let r = p.rank();
        let n = r * r * r;
        let mut parent: Vec<usize> = (0..n).collect();
        let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let x = p.idx(i, j, k);
                    union(&mut parent, x, p.idx(p.dual[i], k, j));
                    union(&mut parent, x, p.idx(k, p.dual[j], i));
                    if p.commutative {
                        union(&mut parent, x, p.idx(j, i, k));
                    }
                }
            }
        }
        let mut class_known: Vec<Option<u32>> = vec![None; n];
        for x in 0..n {
            if let Some(v) = p.known[x] {
                let c = find(&mut parent, x);
                match class_known[c] {
                    Some(w) if w != v => return Ok(None),
                    _ => class_known[c] = Some(v),
                }
            }
        }
        let fdims: Option<Vec<f64>> = p.dims.as_ref().map(|d| d.iter().map(|x| x.embed().re).collect());
        let mut var_of_class = vec![usize::MAX; n];
        let mut class_of_var = Vec::new();
        let mut ub = Vec::new();
        let mut entry_val = Vec::with_capacity(n);
        for x in 0..n {
            let c = find(&mut parent, x);
            if let Some(v) = class_known[c] {
                entry_val.push(Val::Known(v));
                continue;
            }
            if var_of_class[c] == usize::MAX {
                var_of_class[c] = class_of_var.len();
                class_of_var.push(c);
                ub.push(p.bound);
            }
            let v = var_of_class[c];
            if let Some(d) = &fdims {
                let (i, j, k) = (x / (r * r), (x / r) % r, x % r);
                let cap = (d[i] * d[j] / d[k] + EPS).floor();
                ub[v] = ub[v].min(cap.max(0.0) as u32);
            }
            entry_val.push(Val::Var(v));
        }
        let vars = class_of_var.len();

        let mut linear = Vec::new();
        let mut push_linear = |items: Vec<(Val, f64)>, target: f64| -> bool {
            let mut terms: Vec<(usize, f64)> = Vec::new();
            let mut t = target;
            for (val, c) in items {
                match val {
                    Val::Known(k) => t -= k as f64 * c,
                    Val::Var(v) => match terms.iter_mut().find(|(w, _)| *w == v) {
                        Some(slot) => slot.1 += c,
                        None => terms.push((v, c)),
                    },
                }
            }
            if terms.is_empty() {
                return t.abs() < EPS;
            }
            linear.push(Linear { terms, target: t });
            true
        };
        for (entries, total) in &p.family_sums {
            let items = entries.iter().map(|&(i, j, k)| (entry_val[p.idx(i, j, k)], 1.0)).collect();
            if !push_linear(items, *total as f64) {
                return Ok(None);
            }
        }
        if let Some(d) = &fdims {
            for i in 0..r {
                for j in 0..r {
                    let items = (0..r).map(|k| (entry_val[p.idx(i, j, k)], d[k])).collect();
                    if !push_linear(items, d[i] * d[j]) {
                        return Ok(None);
                    }
                }
            }
        }

        let mut assoc_set = HashSet::new();
        let mut assoc = Vec::new();
        for i in (0..r).filter(|&i| i != p.unit) {
            for j in (0..r).filter(|&j| j != p.unit) {
                for k in (0..r).filter(|&k| k != p.unit) {
                    for l in 0..r {
                        let mut a = Assoc { lhs: Vec::new(), rhs: Vec::new(), lhs_const: 0, rhs_const: 0 };
                        for m in 0..r {
                            let x = entry_val[p.idx(i, j, m)];
                            let y = entry_val[p.idx(m, k, l)];
                            add_product(&mut a.lhs, &mut a.lhs_const, x, y);
                            let x = entry_val[p.idx(j, k, m)];
                            let y = entry_val[p.idx(i, m, l)];
                            add_product(&mut a.rhs, &mut a.rhs_const, x, y);
                        }
                        if a.lhs.is_empty() && a.rhs.is_empty() {
                            if a.lhs_const != a.rhs_const {
                                return Ok(None);
                            }
                            continue;
                        }
                        a.lhs.sort();
                        a.rhs.sort();
                        if a.lhs == a.rhs && a.lhs_const == a.rhs_const {
                            continue;
                        }
                        if assoc_set.insert((a.lhs.clone(), a.rhs.clone(), a.lhs_const, a.rhs_const)) {
                            assoc.push(a);
                        }
                    }
                }
            }
        }

        let mut lin_of = vec![Vec::new(); vars];
        for (ci, c) in linear.iter().enumerate() {
            for &(v, _) in &c.terms {
                lin_of[v].push(ci);
            }
        }
        let mut assoc_of = vec![Vec::new(); vars];
        for (ci, c) in assoc.iter().enumerate() {
            let mut vs: Vec<usize> = c
                .lhs
                .iter()
                .chain(&c.rhs)
                .flat_map(|&(x, y)| [x, y])
                .filter_map(|v| match v {
                    Val::Var(v) => Some(v),
                    Val::Known(_) => None,
                })
                .collect();
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                assoc_of[v].push(ci);
            }
        }
        Ok(Some(Compiled {
            entry_val,
            class_of_var,
            ub,
            value: vec![None; vars],
            linear,
            assoc,
            lin_of,
            assoc_of,
            tiebreak: (0..vars).collect(),
            nodes: 0,
        }))
    }

    // Feasible range of a variable given the linear constraints.
    fn domain(&self, v: usize) -> (u32, u32) {
        let mut lo = 0u32;
        let mut hi = self.ub[v];
        for &ci in &self.lin_of[v] {
            let c = &self.linear[ci];
            let mut assigned = 0.0;
            let mut others_max = 0.0;
            let mut coef = 0.0;
            for &(w, a) in &c.terms {
                if w == v {
                    coef = a;
                } else {
                    match self.value[w] {
                        Some(x) => assigned += a * x as f64,
                        None => others_max += a * self.ub[w] as f64,
                    }
                }
            }
            let room = c.target - assigned;
            let h = ((room / coef) + EPS).floor();
            if h < 0.0 {
                return (1, 0);
            }
            hi = hi.min(h as u32);
            let l = ((room - others_max) / coef - EPS).ceil();
            if l > 0.0 {
                lo = lo.max(l as u32);
            }
        }
        (lo, hi)
    }

    fn bounds(&self, v: Val) -> (u64, u64) {
        match v {
            Val::Known(k) => (k as u64, k as u64),
            Val::Var(w) => match self.value[w] {
                Some(x) => (x as u64, x as u64),
                None => (0, self.ub[w] as u64),
            },
        }
    }

    fn side(&self, terms: &[(Val, Val)], c: u64) -> (u64, u64) {
        let (mut lo, mut hi) = (c, c);
        for &(x, y) in terms {
            let (a, b) = self.bounds(x);
            let (p, q) = self.bounds(y);
            lo += a * p;
            hi = hi.saturating_add(b.saturating_mul(q));
        }
        (lo, hi)
    }

    fn consistent(&self, v: usize) -> bool {
        for &ci in &self.lin_of[v] {
            let c = &self.linear[ci];
            let (mut lo, mut hi) = (0.0, 0.0);
            for &(w, a) in &c.terms {
                match self.value[w] {
                    Some(x) => {
                        lo += a * x as f64;
                        hi += a * x as f64;
                    }
                    None => hi += a * self.ub[w] as f64,
                }
            }
            if lo > c.target + EPS || hi < c.target - EPS {
                return false;
            }
        }
        for &ci in &self.assoc_of[v] {
            let c = &self.assoc[ci];
            let (llo, lhi) = self.side(&c.lhs, c.lhs_const);
            let (rlo, rhi) = self.side(&c.rhs, c.rhs_const);
            if llo > rhi || rlo > lhi {
                return false;
            }
        }
        true
    }

    fn pick(&self) -> Option<(usize, u32, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        for &v in &self.tiebreak {
            if self.value[v].is_some() {
                continue;
            }
            let (lo, hi) = self.domain(v);
            if lo > hi {
                return Some((v, lo, hi));
            }
            let better = match best {
                None => true,
                Some((_, blo, bhi)) => hi - lo < bhi - blo,
            };
            if better {
                best = Some((v, lo, hi));
                if lo == hi {
                    break;
                }
            }
        }
        best
    }

    fn dfs(
        &mut self,
        p: &CompletionProblem,
        out: &mut Vec<FusionRing>,
        seen: &mut HashSet<Vec<u32>>,
    ) -> Result<(), FusringError> {
        self.nodes += 1;
        if self.nodes > p.node_limit {
            return Err(FusringError::Shape(format!("completion search exceeded {} nodes", p.node_limit)));
        }
        let Some((v, lo, hi)) = self.pick() else {
            return self.leaf(p, out, seen);
        };
        for x in lo..=hi {
            self.value[v] = Some(x);
            if self.consistent(v) {
                self.dfs(p, out, seen)?;
            }
        }
        self.value[v] = None;
        Ok(())
    }

    fn leaf(
        &self,
        p: &CompletionProblem,
        out: &mut Vec<FusionRing>,
        seen: &mut HashSet<Vec<u32>>,
    ) -> Result<(), FusringError> {
        let n: Vec<u32> = self
            .entry_val
            .iter()
            .map(|v| match v {
                Val::Known(k) => *k,
                Val::Var(w) => self.value[*w].expect("leaf has every variable assigned"),
            })
            .collect();
        if !seen.insert(n.clone()) {
            return Ok(());
        }
        let ring = FusionRing::new(p.labels.clone(), p.unit, p.dual.clone(), n)?;
        if !ring.verify().passed() {
            return Ok(());
        }
        if let Some(d) = &p.dims {
            if !exact_dims_hold(&ring, d)? {
                return Ok(());
            }
        }
        out.push(ring);
        Ok(())
    }
}

fn add_product(terms: &mut Vec<(Val, Val)>, constant: &mut u64, x: Val, y: Val) {
    match (x, y) {
        (Val::Known(0), _) | (_, Val::Known(0)) => {}
        (Val::Known(a), Val::Known(b)) => *constant += a as u64 * b as u64,
        (a, b) => terms.push(if a <= b { (a, b) } else { (b, a) }),
    }
}

/// dim(i)·dim(j) = Σ_k N[i][j][k]·dim(k) exactly for all i, j.
pub(crate) fn exact_dims_hold(ring: &FusionRing, dims: &[CycNum]) -> Result<bool, FusringError> {
    let r = ring.rank();
    for i in 0..r {
        for j in 0..r {
            let lhs = dims[i].checked_mul(&dims[j])?;
            let mut rhs = CycNum::from_int(0);
            for (k, m) in ring.product(i, j) {
                rhs = rhs.checked_add(&dims[k].scale_int(m as i64))?;
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusring::near_group_ring;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn recovers_z3_from_unit_and_duality() {
        let p = CompletionProblem::new(labels(&["I", "g", "g²"]), 0, vec![0, 2, 1]).with_dims(vec![CycNum::one(); 3]);
        let out = p.solve(None).unwrap();
        assert_eq!(out.solutions, vec![FusionRing::cyclic_group(3)]);
    }

    #[test]
    fn recovers_near_group_from_dims() {
        let d = CycNum::quadratic(3, 2, 3).unwrap();
        let dims = vec![CycNum::one(), CycNum::one(), CycNum::one(), d];
        let mut p = CompletionProblem::new(labels(&["I", "g", "g²", "X"]), 0, vec![0, 2, 1, 3])
            .with_dims(dims)
            .commutative(true);
        // group law among the invertibles
        for a in 1..3 {
            for b in 1..3 {
                for c in 0..3 {
                    p.fix(a, b, c, u32::from(c == (a + b) % 3));
                }
            }
        }
        let out = p.solve(Some(7)).unwrap();
        assert_eq!(out.solutions, vec![near_group_ring(3, 6)]);
    }

    #[test]
    fn fibonacci_dims_admit_one_ring() {
        let phi = (CycNum::one() + CycNum::sqrt(5).unwrap()).scale(&crate::exactnum::Rational::new(1.into(), 2.into()));
        let p = CompletionProblem::new(labels(&["I", "τ"]), 0, vec![0, 1]).with_dims(vec![CycNum::one(), phi]);
        let out = p.solve(None).unwrap();
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(out.solutions[0].get(1, 1, 1), 1);
    }

    #[test]
    fn inconsistent_knowns_have_no_solution() {
        let mut p = CompletionProblem::new(labels(&["I", "g"]), 0, vec![0, 1]);
        p.fix(1, 1, 0, 2);
        assert!(p.solve(None).unwrap().solutions.is_empty());
    }
}
