//! Golden tables shipped as JSON in `data/golden`, and the checks run
//! against them: graded extensions, the induction of the unit, the rank-24
//! component inventory and the full verification report.

mod checks;
mod graded;

use std::path::Path;
use std::sync::OnceLock;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condense::CondenseError;
use crate::exactnum::{parse, CycNum, ExactError};
use crate::fusring::{FusionRing, FusringError, ModularData};
use crate::wzw::WzwError;

pub use checks::{induction_unit_check, paper_named_condensed, remark311_checks, verify_paper, verify_paper_with};
pub use graded::{verify_commutativity, verify_graded, GradedRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PaperDataError {
    #[error("malformed golden file `{name}`: {reason}")]
    MalformedGoldenFile { name: String, reason: String },
    #[error("no golden table named `{0}`")]
    MissingTable(String),
    #[error(transparent)]
    Ring(#[from] FusringError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Wzw(#[from] WzwError),
    #[error(transparent)]
    Condense(#[from] CondenseError),
}

/// One transcribed table and where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenTable {
    pub name: String,
    pub locus: String,
    pub table: GoldenBody,
    pub notes: Vec<Note>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GoldenBody {
    Ring(RingTable),
    Matrix(MatrixTable),
    Facts(FactsTable),
    Components(ComponentsTable),
}

/// Products are written `a⊗b` → `I+2Y1+f1`; abbreviations expand inside sums.
/// A commutative table lists each unordered pair once. Products with the unit
/// are implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingTable {
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: Vec<String>,
    pub commutative: bool,
    pub abbreviations: IndexMap<String, String>,
    pub products: IndexMap<String, String>,
    pub dims: Option<Vec<String>>,
    pub twists: Option<Vec<String>>,
    pub ambient: Option<IndexMap<String, Vec<[u32; 2]>>>,
    pub components: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixTable {
    pub labels: Vec<String>,
    pub abbreviations: IndexMap<String, String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactsTable {
    pub entries: IndexMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentsTable {
    pub group: usize,
    pub components: Vec<Vec<String>>,
    pub dims: IndexMap<String, String>,
    pub products: IndexMap<String, String>,
}

/// Where the transcription departs from the printed text, or what it leaves out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Note {
    pub kind: NoteKind,
    pub stated: String,
    pub used: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoteKind {
    KnownDiscrepancy,
    Transcription,
    Variant,
    Convention,
    Omitted,
}

const EMBEDDED: [(&str, &str); 11] = [
    ("condensed-ring", include_str!("../../../../data/golden/condensed-ring.json")),
    ("condensed-s", include_str!("../../../../data/golden/condensed-s.json")),
    ("near-group", include_str!("../../../../data/golden/near-group.json")),
    ("near-group-facts", include_str!("../../../../data/golden/near-group-facts.json")),
    ("ring-b", include_str!("../../../../data/golden/ring-b.json")),
    ("ring-b-facts", include_str!("../../../../data/golden/ring-b-facts.json")),
    ("ring-b-prime", include_str!("../../../../data/golden/ring-b-prime.json")),
    ("adjoint-sector", include_str!("../../../../data/golden/adjoint-sector.json")),
    ("ring-d", include_str!("../../../../data/golden/ring-d.json")),
    ("induction-unit", include_str!("../../../../data/golden/induction-unit.json")),
    ("extension-components", include_str!("../../../../data/golden/extension-components.json")),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCatalog {
    tables: Vec<GoldenTable>,
    raw: Vec<String>,
}

/// The tables compiled into the crate.
pub fn golden_tables() -> Result<&'static GoldenCatalog, PaperDataError> {
    static CATALOG: OnceLock<Result<GoldenCatalog, PaperDataError>> = OnceLock::new();
    CATALOG
        .get_or_init(|| GoldenCatalog::from_sources(EMBEDDED.iter().map(|(n, s)| (n.to_string(), s.to_string()))))
        .as_ref()
        .map_err(Clone::clone)
}

fn malformed(name: &str, reason: impl Into<String>) -> PaperDataError {
    PaperDataError::MalformedGoldenFile { name: name.to_string(), reason: reason.into() }
}

impl GoldenCatalog {
    /// Parse `(file stem, contents)` pairs. The stem must match the table name.
    pub fn from_sources(sources: impl IntoIterator<Item = (String, String)>) -> Result<Self, PaperDataError> {
        let mut tables = Vec::new();
        let mut raw = Vec::new();
        for (stem, text) in sources {
            let t: GoldenTable = serde_json::from_str(&text).map_err(|e| malformed(&stem, e.to_string()))?;
            if t.name != stem {
                return Err(malformed(&stem, format!("table is named `{}`", t.name)));
            }
            let catalog_one = GoldenCatalog { tables: vec![t.clone()], raw: Vec::new() };
            // every ring, matrix and dimension list must parse now, not at first use
            match &t.table {
                GoldenBody::Ring(_) => {
                    catalog_one.ring(&t.name)?;
                    catalog_one.optional_values(&t.name, |r| r.dims.as_ref())?;
                    catalog_one.optional_values(&t.name, |r| r.twists.as_ref())?;
                }
                GoldenBody::Matrix(_) => {
                    catalog_one.matrix(&t.name)?;
                }
                GoldenBody::Components(c) => {
                    for v in c.dims.values() {
                        parse(v).map_err(|e| malformed(&t.name, e.to_string()))?;
                    }
                }
                GoldenBody::Facts(_) => {}
            }
            tables.push(t);
            raw.push(text);
        }
        Ok(GoldenCatalog { tables, raw })
    }

    /// Load every `*.json` in a directory, sorted by file name.
    pub fn load_dir(dir: &Path) -> Result<Self, PaperDataError> {
        let io = |e: std::io::Error| malformed(&dir.display().to_string(), e.to_string());
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        let mut sources = Vec::new();
        for p in paths {
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            sources.push((stem, std::fs::read_to_string(&p).map_err(io)?));
        }
        Self::from_sources(sources)
    }

    pub fn tables(&self) -> &[GoldenTable] {
        &self.tables
    }

    /// Source text as loaded, in the order of [`GoldenCatalog::tables`].
    pub fn raw(&self) -> &[String] {
        &self.raw
    }

    pub fn get(&self, name: &str) -> Result<&GoldenTable, PaperDataError> {
        self.tables.iter().find(|t| t.name == name).ok_or_else(|| PaperDataError::MissingTable(name.to_string()))
    }

    pub fn locus(&self, name: &str) -> String {
        self.get(name).map(|t| t.locus.clone()).unwrap_or_else(|_| name.to_string())
    }

    fn ring_table(&self, name: &str) -> Result<&RingTable, PaperDataError> {
        match &self.get(name)?.table {
            GoldenBody::Ring(r) => Ok(r),
            _ => Err(malformed(name, "not a ring table")),
        }
    }

    pub fn ring(&self, name: &str) -> Result<FusionRing, PaperDataError> {
        let t = self.ring_table(name)?;
        let r = t.labels.len();
        let index = |l: &str| {
            t.labels.iter().position(|x| x == l).ok_or_else(|| malformed(name, format!("unknown label `{l}`")))
        };
        let unit = index(&t.unit)?;
        if t.dual.len() != r {
            return Err(malformed(name, "dual list has the wrong length"));
        }
        let dual = t.dual.iter().map(|d| index(d)).collect::<Result<Vec<_>, _>>()?;
        let mut n: Vec<Option<u32>> = vec![None; r * r * r];
        let mut defined = vec![false; r * r];
        let mut put = |i: usize, j: usize, row: &[u32]| -> Result<(), PaperDataError> {
            if defined[i * r + j] {
                let same = (0..r).all(|k| n[(i * r + j) * r + k] == Some(row[k]));
                if !same {
                    return Err(malformed(name, format!("conflicting entries for {}⊗{}", t.labels[i], t.labels[j])));
                }
            }
            defined[i * r + j] = true;
            for k in 0..r {
                n[(i * r + j) * r + k] = Some(row[k]);
            }
            Ok(())
        };
        for x in 0..r {
            let row: Vec<u32> = (0..r).map(|k| u32::from(k == x)).collect();
            put(unit, x, &row)?;
            put(x, unit, &row)?;
        }
        for (key, sum) in &t.products {
            let (a, b) = key.split_once('⊗').ok_or_else(|| malformed(name, format!("product key `{key}` lacks ⊗")))?;
            let (i, j) = (index(a)?, index(b)?);
            let mut row = vec![0u32; r];
            for (m, lbl) in expand_sum(name, sum, &t.abbreviations)? {
                row[index(&lbl)?] += m;
            }
            put(i, j, &row)?;
            if t.commutative {
                put(j, i, &row)?;
            }
        }
        if let Some(p) = defined.iter().position(|d| !d) {
            return Err(malformed(name, format!("missing product {}⊗{}", t.labels[p / r], t.labels[p % r])));
        }
        Ok(FusionRing::new(t.labels.clone(), unit, dual, n.into_iter().map(|x| x.unwrap_or(0)).collect())?)
    }

    fn optional_values(
        &self,
        name: &str,
        pick: impl Fn(&RingTable) -> Option<&Vec<String>>,
    ) -> Result<Option<Vec<CycNum>>, PaperDataError> {
        let t = self.ring_table(name)?;
        let Some(v) = pick(t) else { return Ok(None) };
        if v.len() != t.labels.len() {
            return Err(malformed(name, "value list has the wrong length"));
        }
        v.iter().map(|s| parse(s).map_err(|e| malformed(name, e.to_string()))).collect::<Result<Vec<_>, _>>().map(Some)
    }

    pub fn dims(&self, name: &str) -> Result<Vec<CycNum>, PaperDataError> {
        self.optional_values(name, |r| r.dims.as_ref())?.ok_or_else(|| malformed(name, "no dims"))
    }

    pub fn twists(&self, name: &str) -> Result<Vec<CycNum>, PaperDataError> {
        self.optional_values(name, |r| r.twists.as_ref())?.ok_or_else(|| malformed(name, "no twists"))
    }

    /// Ambient weights per label, for tables that record them.
    pub fn ambient(&self, name: &str) -> Result<Vec<Vec<[u32; 2]>>, PaperDataError> {
        let t = self.ring_table(name)?;
        let amb = t.ambient.as_ref().ok_or_else(|| malformed(name, "no ambient map"))?;
        t.labels
            .iter()
            .map(|l| amb.get(l).cloned().ok_or_else(|| malformed(name, format!("no ambient weights for {l}"))))
            .collect()
    }

    pub fn matrix(&self, name: &str) -> Result<Vec<Vec<CycNum>>, PaperDataError> {
        let GoldenBody::Matrix(m) = &self.get(name)?.table else {
            return Err(malformed(name, "not a matrix table"));
        };
        let r = m.labels.len();
        if m.entries.len() != r || m.entries.iter().any(|row| row.len() != r) {
            return Err(malformed(name, format!("expected a {r}×{r} matrix")));
        }
        let mut keys: Vec<(&String, &String)> = m.abbreviations.iter().collect();
        keys.sort_by_key(|(k, _)| std::cmp::Reverse(k.len()));
        m.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let text = keys.iter().fold(e.clone(), |acc, (k, v)| acc.replace(k.as_str(), v));
                        parse(&text).map_err(|err| malformed(name, err.to_string()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Golden ring, dims, twists and S (ring and matrix tables share labels).
    pub fn modular_data(&self, ring: &str, s: &str) -> Result<ModularData, PaperDataError> {
        let GoldenBody::Matrix(m) = &self.get(s)?.table else {
            return Err(malformed(s, "not a matrix table"));
        };
        if m.labels != self.ring_table(ring)?.labels {
            return Err(malformed(s, format!("labels differ from `{ring}`")));
        }
        Ok(ModularData::new(self.ring(ring)?, self.dims(ring)?, self.twists(ring)?, self.matrix(s)?)?)
    }

    pub fn graded(&self, name: &str) -> Result<GradedRing, PaperDataError> {
        let t = self.ring_table(name)?;
        let comps = t.components.as_ref().ok_or_else(|| malformed(name, "no grading components"))?;
        let ring = self.ring(name)?;
        let mut component_of = vec![usize::MAX; ring.rank()];
        for (h, comp) in comps.iter().enumerate() {
            for l in comp {
                let i =
                    ring.index_of(l).ok_or_else(|| malformed(name, format!("unknown label `{l}` in components")))?;
                component_of[i] = h;
            }
        }
        if component_of.contains(&usize::MAX) {
            return Err(malformed(name, "components do not cover the basis"));
        }
        Ok(GradedRing { ring, group: comps.len(), component_of })
    }

    pub fn facts(&self, name: &str) -> Result<&IndexMap<String, Vec<String>>, PaperDataError> {
        match &self.get(name)?.table {
            GoldenBody::Facts(f) => Ok(&f.entries),
            _ => Err(malformed(name, "not a facts table")),
        }
    }

    pub fn fact(&self, name: &str, key: &str) -> Result<&[String], PaperDataError> {
        self.facts(name)?.get(key).map(|v| v.as_slice()).ok_or_else(|| malformed(name, format!("no entry `{key}`")))
    }

    pub fn components(&self, name: &str) -> Result<&ComponentsTable, PaperDataError> {
        match &self.get(name)?.table {
            GoldenBody::Components(c) => Ok(c),
            _ => Err(malformed(name, "not a components table")),
        }
    }

    pub fn notes(&self, kind: NoteKind) -> impl Iterator<Item = (&GoldenTable, &Note)> {
        self.tables.iter().flat_map(move |t| t.notes.iter().filter(move |n| n.kind == kind).map(move |n| (t, n)))
    }
}

/// `2Y1+f1+X3` → [(2,"Y1"), (1,"Y1"), (1,"Y2"), …] with abbreviations expanded.
pub(crate) fn expand_sum(
    name: &str,
    sum: &str,
    abbreviations: &IndexMap<String, String>,
) -> Result<Vec<(u32, String)>, PaperDataError> {
    let mut out = Vec::new();
    for term in sum.split('+').map(str::trim) {
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (coef, label) = term.split_at(digits);
        let m: u32 = if coef.is_empty() {
            1
        } else {
            coef.parse().map_err(|_| malformed(name, format!("bad coefficient in `{term}`")))?
        };
        if label.is_empty() {
            return Err(malformed(name, format!("empty term in `{sum}`")));
        }
        match abbreviations.get(label) {
            Some(expansion) => {
                for (k, l) in expand_sum(name, expansion, &IndexMap::new())? {
                    out.push((m * k, l));
                }
            }
            None => out.push((m, label.to_string())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_load() {
        let c = golden_tables().unwrap();
        assert_eq!(c.tables().len(), EMBEDDED.len());
        assert_eq!(c.matrix("condensed-s").unwrap().len(), 9);
        assert_eq!(c.ring("ring-b").unwrap().rank(), 8);
        assert_eq!(c.ring("ring-d").unwrap().rank(), 12);
    }

    #[test]
    fn tables_round_trip_byte_identically() {
        let c = golden_tables().unwrap();
        for (t, raw) in c.tables().iter().zip(c.raw()) {
            assert_eq!(&(serde_json::to_string_pretty(t).unwrap() + "\n"), raw, "{}", t.name);
        }
    }

    #[test]
    fn abbreviations_expand_with_coefficients() {
        let mut ab = IndexMap::new();
        ab.insert("f2".to_string(), "Y4+Y5".to_string());
        let got = expand_sum("t", "I+2f2", &ab).unwrap();
        assert_eq!(got, vec![(1, "I".into()), (2, "Y4".into()), (2, "Y5".into())]);
    }

    #[test]
    fn malformed_sources_are_rejected() {
        let bad = GoldenCatalog::from_sources([("x".to_string(), "{\"name\": \"x\"}".to_string())]);
        assert!(matches!(bad, Err(PaperDataError::MalformedGoldenFile { .. })));
        let text = EMBEDDED[4].1.replace("\"g⊗g\": \"g²\",", "");
        let missing = GoldenCatalog::from_sources([("ring-b".to_string(), text)]);
        assert!(
            matches!(missing, Err(PaperDataError::MalformedGoldenFile { reason, .. }) if reason.contains("missing product g⊗g"))
        );
    }

    #[test]
    fn every_golden_ring_satisfies_the_axioms() {
        let c = golden_tables().unwrap();
        for name in ["condensed-ring", "near-group", "ring-b", "ring-b-prime", "ring-d"] {
            let r = c.ring(name).unwrap();
            assert!(r.verify().passed(), "{name}: {:?}", r.verify().first());
        }
    }
}
