use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FusringError;
use crate::report::Report;

/// Based ring with nonnegative integer structure constants.
///
/// `n[(i * rank + j) * rank + k]` is the multiplicity of basis element `k` in
/// `i ⊗ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingRepr {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<u32>,
}

impl<'de> Deserialize<'de> for FusionRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RingRepr::deserialize(d)?;
        FusionRing::new(r.labels, r.unit, r.dual, r.n).map_err(serde::de::Error::custom)
    }
}

/// Which axiom family a violation belongs to, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomFamily {
    Unit,
    Duality,
    Reciprocity,
    Associativity,
}

impl fmt::Display for AxiomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomFamily::Unit => "unit",
            AxiomFamily::Duality => "duality",
            AxiomFamily::Reciprocity => "Frobenius reciprocity",
            AxiomFamily::Associativity => "associativity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub family: AxiomFamily,
    pub detail: String,
}

/// First violation (in lexicographic index order) of each axiom family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub violations: Vec<Violation>,
}

impl RingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn failed(&self, family: AxiomFamily) -> bool {
        self.violations.iter().any(|v| v.family == family)
    }

    pub fn to_report(&self, title: &str) -> Report {
        let mut r = Report::new(title);
        for fam in [AxiomFamily::Unit, AxiomFamily::Duality, AxiomFamily::Reciprocity, AxiomFamily::Associativity] {
            match self.violations.iter().find(|v| v.family == fam) {
                Some(v) => r.check(fam.to_string(), false, v.detail.clone()),
                None => r.check(fam.to_string(), true, ""),
            }
        }
        r
    }
}

impl FusionRing {
    /// Shape-checked constructor; axioms are checked by [`FusionRing::verify`].
    pub fn new(labels: Vec<String>, unit: usize, dual: Vec<usize>, n: Vec<u32>) -> Result<Self, FusringError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(FusringError::Shape("empty basis".into()));
        }
        if unit >= rank {
            return Err(FusringError::Shape(format!("unit index {unit} out of range")));
        }
        if dual.len() != rank || dual.iter().any(|&d| d >= rank) {
            return Err(FusringError::Shape("dual must be a map on basis indices".into()));
        }
        if dual.iter().enumerate().any(|(i, &d)| dual[d] != i) {
            return Err(FusringError::Shape("dual must be an involution".into()));
        }
        if n.len() != rank * rank * rank {
            return Err(FusringError::Shape(format!("expected {} structure constants, got {}", rank.pow(3), n.len())));
        }
        Ok(FusionRing { labels, unit, dual, n })
    }

    /// Build from a product rule returning `(k, multiplicity)` pairs for `i ⊗ j`.
    pub fn from_products<F>(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        mut product: F,
    ) -> Result<Self, FusringError>
    where
        F: FnMut(usize, usize) -> Vec<(usize, u32)>,
    {
        let rank = labels.len();
        let mut n = vec![0u32; rank * rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                for (k, m) in product(i, j) {
                    if k >= rank {
                        return Err(FusringError::Shape(format!("product index {k} out of range")));
                    }
                    n[(i * rank + j) * rank + k] += m;
                }
            }
        }
        Self::new(labels, unit, dual, n)
    }

    /// Group ring of Z_n with basis I, g, g², …
    pub fn cyclic_group(order: usize) -> Self {
        let labels = (0..order).map(group_label).collect();
        let dual = (0..order).map(|a| (order - a) % order).collect();
        Self::from_products(labels, 0, dual, |a, b| vec![((a + b) % order, 1)]).expect("well-formed group ring")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn constants(&self) -> &[u32] {
        &self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: u32) {
        let r = self.rank();
        self.n[(i * r + j) * r + k] = value;
    }

    /// Nonzero summands of `i ⊗ j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        let r = self.rank();
        let row = &self.n[(i * r + j) * r..(i * r + j + 1) * r];
        row.iter().enumerate().filter(|(_, &m)| m > 0).map(|(k, &m)| (k, m)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (i + 1..r).all(|j| (0..r).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }

    pub fn is_invertible(&self, i: usize) -> bool {
        let p = self.product(i, self.dual[i]);
        p.len() == 1 && p[0] == (self.unit, 1)
    }

    /// Same ring under new names.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self, FusringError> {
        Self::new(labels, self.unit, self.dual.clone(), self.n.clone())
    }

    /// Relabel with `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let r = self.rank();
        let mut labels = vec![String::new(); r];
        let mut dual = vec![0; r];
        let mut n = vec![0u32; r * r * r];
        for i in 0..r {
            labels[perm[i]] = self.labels[i].clone();
            dual[perm[i]] = perm[self.dual[i]];
            for j in 0..r {
                for k in 0..r {
                    n[(perm[i] * r + perm[j]) * r + perm[k]] = self.get(i, j, k);
                }
            }
        }
        FusionRing { labels, unit: perm[self.unit], dual, n }
    }

    /// Restriction to a subset of the basis, which must be closed under ⊗.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self, FusringError> {
        let pos = |x: usize| subset.iter().position(|&s| s == x);
        let unit = pos(self.unit).ok_or_else(|| FusringError::Shape("subset misses the unit".into()))?;
        let mut dual = Vec::with_capacity(subset.len());
        for &s in subset {
            dual.push(pos(self.dual[s]).ok_or_else(|| FusringError::Shape("subset not closed under duality".into()))?);
        }
        let labels = subset.iter().map(|&s| self.labels[s].clone()).collect();
        let mut err = None;
        let ring = Self::from_products(labels, unit, dual, |a, b| {
            self.product(subset[a], subset[b])
                .into_iter()
                .filter_map(|(k, m)| match pos(k) {
                    Some(p) => Some((p, m)),
                    None => {
                        err = Some(k);
                        None
                    }
                })
                .collect()
        })?;
        match err {
            Some(k) => Err(FusringError::Shape(format!("subset not closed: product leaves it via {}", self.labels[k]))),
            None => Ok(ring),
        }
    }

    /// Exhaustive check of unit, duality, Frobenius reciprocity and
    /// associativity; reports the first violation of each family.
    pub fn verify(&self) -> RingReport {
        let mut violations = Vec::new();
        if let Some(v) = self.check_unit() {
            violations.push(v);
        }
        if let Some(v) = self.check_duality() {
            violations.push(v);
        }
        if let Some(v) = self.check_reciprocity() {
            violations.push(v);
        }
        if let Some(v) = self.check_associativity() {
            violations.push(v);
        }
        RingReport { violations }
    }

    fn check_unit(&self) -> Option<Violation> {
        let (r, u) = (self.rank(), self.unit);
        for j in 0..r {
            for k in 0..r {
                let want = u32::from(j == k);
                if self.get(u, j, k) != want || self.get(j, u, k) != want {
                    return Some(Violation {
                        family: AxiomFamily::Unit,
                        detail: format!(
                            "N[{0}][{1}][{2}] or N[{1}][{0}][{2}] differs from {want}",
                            self.labels[u], self.labels[j], self.labels[k]
                        ),
                    });
                }
            }
        }
        None
    }

    fn check_duality(&self) -> Option<Violation> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                let want = u32::from(j == self.dual[i]);
                let got = self.get(i, j, self.unit);
                if got != want {
                    return Some(Violation {
                        family: AxiomFamily::Duality,
                        detail: format!(
                            "N[{}][{}][{}] = {got}, expected {want}",
                            self.labels[i], self.labels[j], self.labels[self.unit]
                        ),
                    });
                }
            }
        }
        None
    }

    fn check_reciprocity(&self) -> Option<Violation> {
        let r = self.rank();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = self.get(i, j, k);
                    let a = self.get(self.dual[i], k, j);
                    let b = self.get(k, self.dual[j], i);
                    if v != a || v != b {
                        return Some(Violation {
                            family: AxiomFamily::Reciprocity,
                            detail: format!(
                                "N[{}][{}][{}] = {v} but N[{}*][{}][{}] = {a}, N[{}][{}*][{}] = {b}",
                                self.labels[i],
                                self.labels[j],
                                self.labels[k],
                                self.labels[i],
                                self.labels[k],
                                self.labels[j],
                                self.labels[k],
                                self.labels[j],
                                self.labels[i]
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    fn check_associativity(&self) -> Option<Violation> {
        let r = self.rank();
        let products: Vec<Vec<(usize, u32)>> = (0..r * r).map(|ij| self.product(ij / r, ij % r)).collect();
        let mut lhs = vec![0u64; r];
        let mut rhs = vec![0u64; r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for &(m, a) in &products[i * r + j] {
                        for &(l, b) in &products[m * r + k] {
                            lhs[l] += a as u64 * b as u64;
                        }
                    }
                    for &(m, a) in &products[j * r + k] {
                        for &(l, b) in &products[i * r + m] {
                            rhs[l] += a as u64 * b as u64;
                        }
                    }
                    if let Some(l) = (0..r).find(|&l| lhs[l] != rhs[l]) {
                        return Some(Violation {
                            family: AxiomFamily::Associativity,
                            detail: format!(
                                "({0}⊗{1})⊗{2} has {4}·{3} but {0}⊗({1}⊗{2}) has {5}·{3}",
                                self.labels[i], self.labels[j], self.labels[k], self.labels[l], lhs[l], rhs[l]
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    /// `i ⊗ j` written as a sum of labels, e.g. `I+2Y1+X2`.
    pub fn format_product(&self, i: usize, j: usize) -> String {
        let terms: Vec<String> = self
            .product(i, j)
            .into_iter()
            .map(|(k, m)| if m == 1 { self.labels[k].clone() } else { format!("{m}{}", self.labels[k]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Products keyed by `"a⊗b"` for every ordered pair.
    pub fn product_table(&self) -> BTreeMap<String, String> {
        let r = self.rank();
        let mut out = BTreeMap::new();
        for i in 0..r {
            for j in 0..r {
                out.insert(format!("{}⊗{}", self.labels[i], self.labels[j]), self.format_product(i, j));
            }
        }
        out
    }
}

const SUPERSCRIPTS: [&str; 10] = ["⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"];

/// `I`, `g`, `g²`, … for the elements of a cyclic group.
pub fn group_label(a: usize) -> String {
    match a {
        0 => "I".into(),
        1 => "g".into(),
        a => {
            let sup: String = a.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect();
            format!("g{sup}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_ring_passes() {
        for n in 1..6 {
            assert!(FusionRing::cyclic_group(n).verify().passed());
        }
        assert_eq!(FusionRing::cyclic_group(3).labels(), &["I", "g", "g²"]);
    }

    #[test]
    fn shape_errors() {
        assert!(FusionRing::new(vec!["I".into()], 1, vec![0], vec![1]).is_err());
        assert!(FusionRing::new(vec!["I".into(), "a".into()], 0, vec![1, 1], vec![0; 8]).is_err());
        assert!(FusionRing::new(vec!["I".into()], 0, vec![0], vec![1, 0]).is_err());
    }

    #[test]
    fn broken_unit_is_reported_first() {
        let mut r = FusionRing::cyclic_group(3);
        r.set(0, 1, 1, 0);
        let rep = r.verify();
        assert_eq!(rep.first().unwrap().family, AxiomFamily::Unit);
    }

    #[test]
    fn restriction_and_permutation() {
        let z4 = FusionRing::cyclic_group(4);
        let sub = z4.restrict(&[0, 2]).unwrap();
        assert!(sub.verify().passed());
        assert_eq!(sub.rank(), 2);
        assert!(z4.restrict(&[0, 1]).is_err());
        let p = z4.permuted(&[0, 3, 2, 1]);
        assert!(p.verify().passed());
        assert_eq!(p.label(3), "g");
    }

    #[test]
    fn json_round_trip_rejects_bad_shapes() {
        let z3 = FusionRing::cyclic_group(3);
        let s = serde_json::to_string(&z3).unwrap();
        let back: FusionRing = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z3);
        let bad = s.replace("\"unit\":0", "\"unit\":7");
        assert!(serde_json::from_str::<FusionRing>(&bad).is_err());
    }
}
