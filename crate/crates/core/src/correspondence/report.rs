use serde::{Deserialize, Serialize};

/// Outcome of verifying the correspondence for one field. Rationals appear
/// as `p/q` strings so the report survives serialization exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub field: FieldSummary,
    pub group: GroupSummary,
    pub lattice: LatticeSummary,
    pub verdicts: Vec<Verdict>,
    pub work: WorkCounters,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, part: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.part == part)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub degree: usize,
    /// Defining polynomial of the primitive element.
    pub defining_polynomial: String,
    /// Coordinates of the canonical roots in the power basis.
    pub roots: Vec<Vec<String>>,
    pub normal: bool,
    pub separable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    /// Each automorphism as a permutation of the canonical roots.
    pub elements: Vec<Vec<usize>>,
    pub element_orders: Vec<usize>,
    pub abelian: bool,
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub entries: Vec<LatticeEntry>,
    /// Covering relations `(smaller, larger)` between subgroups.
    pub hasse_edges: Vec<(usize, usize)>,
    /// How the field side was obtained.
    pub field_source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEntry {
    pub index: usize,
    pub members: Vec<usize>,
    pub order: usize,
    pub normal_subgroup: bool,
    pub field_degree: usize,
    pub field_normal: bool,
    pub min_poly: String,
    pub primitive_element: Vec<String>,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub part: String,
    pub pass: bool,
    /// Number of individual checks performed.
    pub checked: usize,
    /// Failing instances; empty on success.
    pub witnesses: Vec<String>,
}

impl Verdict {
    pub(crate) fn from_checks(part: &str, checks: Vec<Option<String>>) -> Self {
        let checked = checks.len();
        let witnesses: Vec<String> = checks.into_iter().flatten().collect();
        Self {
            part: part.into(),
            pass: witnesses.is_empty(),
            checked,
            witnesses,
        }
    }
}

/// Deterministic measures of the work done.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCounters {
    pub subgroups: usize,
    pub ordered_pairs: usize,
    pub proof_polynomials: usize,
    pub precision_bits: u32,
}
