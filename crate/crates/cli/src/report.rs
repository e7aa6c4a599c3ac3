//! Report model shared by every command. Serialises to JSON and renders as
//! aligned text tables.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub problem: ProblemSummary,
    #[serde(default)]
    pub fibers: Vec<FiberSummary>,
    #[serde(default)]
    pub scan: Option<ScanReport>,
    #[serde(default)]
    pub cases: Option<CaseTable>,
    #[serde(default)]
    pub orbits: Option<OrbitReport>,
    /// Oracle agreements and invariant checks.
    #[serde(default)]
    pub checks: Vec<CheckRecord>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, problem: ProblemSummary) -> Self {
        Report {
            command: command.to_string(),
            problem,
            fibers: Vec::new(),
            scan: None,
            cases: None,
            orbits: None,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckRecord { name: name.into(), passed, detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub name: String,
    pub n: String,
    pub q: String,
    pub central_generators: Vec<String>,
    pub central_structure: String,
    /// Rank of `H` over `C`.
    pub degree: usize,
    pub q0: Vec<u64>,
    pub maxspec: String,
    pub torsion_classes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSummary {
    pub point: String,
    pub torsion_class: Vec<u64>,
    pub root_order: u64,
    pub exponent_matrix: Vec<Vec<String>>,
    pub blocks: Vec<u64>,
    pub block_orders: Vec<u64>,
    pub irrep_dim: u64,
    pub block_count: u64,
    pub sd: u64,
    pub stabilizer_invariants: Vec<u64>,
    pub commutative: bool,
    pub center_dimension: Option<usize>,
    pub irrep: Option<IrrepSummary>,
    pub stabilizer: Option<StabilizerSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepSummary {
    pub available: bool,
    pub dim: usize,
    pub algebra_dimension: usize,
    /// Images of the generators of `N` then `Q`, entries as scalar strings.
    pub generator_matrices: Vec<Vec<Vec<String>>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerSummary {
    /// `bruteforce` (trace characters of an explicit irreducible) or `predicted`.
    pub method: String,
    pub order: usize,
    pub invariants: Vec<u64>,
    pub maximally_stable: bool,
    /// Exponent vectors of the characters on the generators of `Q₀`.
    pub characters: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub degree: usize,
    pub max_k: usize,
    pub transversal_is_generalized_permutation: bool,
    pub rows: Vec<ScanRow>,
    pub consistent: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub point: String,
    pub torsion_class: Vec<u64>,
    pub determinant: String,
    pub nonzero: bool,
    pub product_form_agrees: bool,
    pub oversized: Vec<OversizedCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OversizedCheck {
    pub k: usize,
    pub tuples: usize,
    pub all_singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTable {
    pub rows: Vec<CaseRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub label: String,
    /// Torsion classes of `MaxSpec C` in this case, as exponents on the
    /// torsion generators of `Z`.
    pub torsion_classes: Vec<Vec<u64>>,
    /// A representative point per class (free coordinates 1).
    pub representatives: Vec<String>,
    pub root_order: u64,
    pub blocks: Vec<u64>,
    pub irrep_dim: u64,
    pub block_count: u64,
    pub stabilizer_invariants: Vec<u64>,
    pub stabilizer_order: usize,
    pub stabilizer_characters: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub focus: Option<OrbitFocus>,
    /// Winding orbits among the examined points.
    pub classes: Vec<OrbitClass>,
    /// Generators of the commutator subgroup `A` inside `N`.
    pub commutator_values: Vec<Vec<i64>>,
    pub abelianization: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFocus {
    pub point: String,
    pub torsion_class: Vec<u64>,
    pub counit_orbit: bool,
    pub commutative_fiber: bool,
    pub same_orbit_as: Vec<String>,
    /// Values on the generators of `N` then `Q` of a character carrying the
    /// counit to the point, when exact radicals exist.
    pub witness_character: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub torsion_class: Vec<u64>,
    pub counit_orbit: bool,
    pub basic: bool,
    pub points: Vec<String>,
}
