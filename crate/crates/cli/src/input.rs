//! JSON problem descriptions and their translation into domain objects.

use cextdisc_core::abelian::FinGenAbelianGroup;
use cextdisc_core::cocycle::{BaseGroup, QElem, TableGroup, TwoCocycle};
use cextdisc_core::extension::{default_central_subgroup, CentralExtensionGroup, CentralSubgroupData, ExtElem};
use cextdisc_core::fiber::{default_free_samples, sample_points, SpecPoint};
use cextdisc_core::scalars::Cyclotomic;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub groups: GroupsSpec,
    pub cocycle: CocycleSpec,
    #[serde(default)]
    pub central: CentralSpec,
    #[serde(default)]
    pub points: PointsSpec,
    #[serde(default)]
    pub commands: CommandsSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsSpec {
    #[serde(rename = "N")]
    pub n: AbelianSpec,
    #[serde(rename = "Q")]
    pub q: BaseSpec,
}

/// `Z/d_1 x … x Z/d_k x Z^r` with `d_1 | d_2 | …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianSpec {
    #[serde(default)]
    pub invariant_factors: Vec<u64>,
    #[serde(default)]
    pub free_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseSpec {
    Abelian(AbelianSpec),
    /// Multiplication table of a finite group on `0..n`.
    Table { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CocycleSpec {
    Zero,
    /// `σ(g, h) = Σ g_i h_j b_ij`; omitted entries are zero.
    Bilinear { entries: Vec<BilinearEntry> },
    /// `values[g][h]` as coordinates in `N`, elements of `Q` by index.
    Table { values: Vec<Vec<Vec<i64>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralSpec {
    /// Central elements added to `N` and the default powers of free generators.
    #[serde(default)]
    pub extras: Vec<ElementSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    #[serde(default)]
    pub n: Vec<i64>,
    pub q: QSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QSpec {
    Coords(Vec<i64>),
    Index(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsSpec {
    /// Point keys: comma separated values on the generators of `Z`.
    #[serde(default)]
    pub explicit: Vec<String>,
    /// Number of sampled points added to the explicit ones.
    #[serde(default)]
    pub samples: Option<usize>,
    /// Extra values for the free coordinates of sampled points.
    #[serde(default)]
    pub free_values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandsSpec {
    #[serde(default = "yes")]
    pub fibers: bool,
    #[serde(default = "yes")]
    pub table: bool,
    #[serde(default = "yes")]
    pub orbits: bool,
    #[serde(default)]
    pub scan: Option<ScanSpec>,
}

fn yes() -> bool {
    true
}

impl Default for CommandsSpec {
    fn default() -> Self {
        CommandsSpec { fibers: true, table: true, orbits: true, scan: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub max_k: usize,
    pub samples: usize,
    /// Random oversized tuples tested per `k > d` and point.
    #[serde(default = "one")]
    pub tuples: usize,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }
}

fn validation<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> CliError + '_ {
    move |e| CliError::Validation(format!("{what}: {e}"))
}

fn abelian(spec: &AbelianSpec, what: &str) -> Result<FinGenAbelianGroup, CliError> {
    FinGenAbelianGroup::new(spec.free_rank, spec.invariant_factors.clone()).map_err(validation(what))
}

/// Validated domain objects for a spec.
#[derive(Clone, Debug)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub group: CentralExtensionGroup,
    pub center: CentralSubgroupData,
}

impl Problem {
    pub fn build(spec: ProblemSpec) -> Result<Self, CliError> {
        let n = abelian(&spec.groups.n, "groups.N")?;
        let base = match &spec.groups.q {
            BaseSpec::Abelian(a) => BaseGroup::Abelian(abelian(a, "groups.Q")?),
            BaseSpec::Table { table } => BaseGroup::Table(TableGroup::new(table.clone()).map_err(validation("groups.Q"))?),
        };
        let coords = |v: &[i64], what: &str| n.element(v).map_err(validation(what));
        let sigma = match &spec.cocycle {
            CocycleSpec::Zero => TwoCocycle::zero(base.clone(), n.clone()).map_err(validation("cocycle"))?,
            CocycleSpec::Bilinear { entries } => {
                let r = base
                    .as_abelian()
                    .ok_or_else(|| CliError::Validation("cocycle: bilinear forms need an abelian Q".into()))?
                    .rank();
                let mut b = vec![vec![n.identity(); r]; r];
                for e in entries {
                    if e.i >= r || e.j >= r {
                        return Err(CliError::Validation(format!("cocycle: entry ({}, {}) outside a {r} x {r} form", e.i, e.j)));
                    }
                    b[e.i][e.j] = coords(&e.value, "cocycle entry")?;
                }
                TwoCocycle::from_bilinear(base.clone(), n.clone(), b).map_err(validation("cocycle"))?
            }
            CocycleSpec::Table { values } => {
                let rows = values
                    .iter()
                    .map(|row| row.iter().map(|v| coords(v, "cocycle table")).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                TwoCocycle::from_table(base.clone(), n.clone(), rows).map_err(validation("cocycle"))?
            }
        };
        let group = CentralExtensionGroup::new(sigma).map_err(validation("cocycle"))?;
        let mut extras = Vec::new();
        for e in &spec.central.extras {
            let nn = if e.n.is_empty() { n.identity() } else { coords(&e.n, "central extra")? };
            let q = match (&e.q, &base) {
                (QSpec::Coords(c), BaseGroup::Abelian(a)) => QElem::Abelian(a.element(c).map_err(validation("central extra"))?),
                (QSpec::Index(i), BaseGroup::Table(t)) if *i < t.order() => QElem::Table(*i),
                _ => return Err(CliError::Validation("central extra: element of Q does not match the group".into())),
            };
            extras.push(group.element(nn, q).map_err(validation("central extra"))?);
        }
        let center = default_central_subgroup(&group, &extras).map_err(validation("central"))?;
        Ok(Problem { spec, group, center })
    }

    pub fn from_text(text: &str) -> Result<Self, CliError> {
        Self::build(ProblemSpec::parse(text)?)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn parse_point(&self, key: &str) -> Result<SpecPoint, CliError> {
        SpecPoint::parse_key(&self.center, key).map_err(validation("point"))
    }

    pub fn free_values(&self) -> Result<Vec<Cyclotomic>, CliError> {
        let mut vals = default_free_samples(&self.center);
        for s in &self.spec.points.free_values {
            let v: Cyclotomic = s.parse().map_err(validation("points.free_values"))?;
            if v.is_zero() {
                return Err(CliError::Validation("points.free_values: values must be nonzero".into()));
            }
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        Ok(vals)
    }

    /// `count` sampled points.
    pub fn sampled(&self, count: usize) -> Result<Vec<SpecPoint>, CliError> {
        Ok(sample_points(&self.center, count, &self.free_values()?)?)
    }

    /// Explicit points followed by the sampled ones, deduplicated and sorted by key.
    pub fn points(&self, default_samples: usize) -> Result<Vec<SpecPoint>, CliError> {
        let mut pts: Vec<SpecPoint> = self.spec.points.explicit.iter().map(|k| self.parse_point(k)).collect::<Result<_, _>>()?;
        pts.extend(self.sampled(self.spec.points.samples.unwrap_or(default_samples))?);
        pts.sort_by_key(SpecPoint::key);
        pts.dedup_by_key(|p| p.key());
        Ok(pts)
    }

    pub fn is_abelian(&self) -> bool {
        self.group.base().as_abelian().is_some()
    }

    pub fn extra(&self, i: usize) -> Option<&ExtElem> {
        self.center.generators().get(self.center.n_generator_count() + i)
    }
}
