//! Per-point fiber analysis, torsion-case classification and orbit reports.

use std::collections::BTreeSet;

use cextdisc_core::abelian::FinGenAbelianGroup;
use cextdisc_core::cycmatrix::CycMatrix;
use cextdisc_core::fiber::{
    center_dimension_oracle, fiber_algebra, fiber_structure_of, invariant_form, irrep_construct, point_from_structure,
    predicted_stabilizer, stabilizer_bruteforce, FiberStructure, SpecPoint,
};
use cextdisc_core::orbits::{abelianization, commutator_subgroup, counit_orbit_membership, extend_from_center, same_winding_orbit};
use cextdisc_core::scalars::Cyclotomic;
use cextdisc_core::Error;
use rayon::prelude::*;

use crate::input::Problem;
use crate::report::{
    CaseRow, CaseTable, CheckRecord, FiberSummary, IrrepSummary, OrbitClass, OrbitFocus, OrbitReport, ProblemSummary,
    StabilizerSummary,
};
use crate::CliError;

/// Largest `|Q₀|` for which the center-dimension oracle is run.
pub const CENTER_ORACLE_LIMIT: usize = 400;

pub fn maxspec_string(z: &FinGenAbelianGroup) -> String {
    let mut parts = Vec::new();
    let t = z.invariant_factors();
    let mut i = 0;
    while i < t.len() {
        let mut j = i;
        while j < t.len() && t[j] == t[i] {
            j += 1;
        }
        parts.push(if j - i == 1 { format!("Z/{}", t[i]) } else { format!("(Z/{})^{}", t[i], j - i) });
        i = j;
    }
    match z.free_rank() {
        0 => {}
        1 => parts.push("Gm".into()),
        r => parts.push(format!("Gm^{r}")),
    }
    if parts.is_empty() {
        "point".into()
    } else {
        parts.join(" x ")
    }
}

pub fn problem_summary(problem: &Problem) -> ProblemSummary {
    let z = &problem.center;
    let s = &z.structure().group;
    let q0 = match z.q0() {
        cextdisc_core::cocycle::BaseGroup::Abelian(a) => a.invariant_factors().to_vec(),
        cextdisc_core::cocycle::BaseGroup::Table(t) => vec![t.order() as u64],
    };
    let q = match problem.group.base() {
        cextdisc_core::cocycle::BaseGroup::Abelian(a) => a.to_string(),
        cextdisc_core::cocycle::BaseGroup::Table(t) => format!("table group of order {}", t.order()),
    };
    ProblemSummary {
        name: problem.spec.name.clone().unwrap_or_else(|| "unnamed".into()),
        n: problem.group.target().to_string(),
        q,
        central_generators: z.generators().iter().map(ToString::to_string).collect(),
        central_structure: s.to_string(),
        degree: z.degree(),
        q0,
        maxspec: maxspec_string(s),
        torsion_classes: s.invariant_factors().iter().product(),
    }
}

fn matrix_strings(m: &CycMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_short_string()).collect()).collect()
}

fn character_exponents(q0: &FinGenAbelianGroup, indices: &[usize]) -> Result<Vec<Vec<i64>>, CliError> {
    let elems = q0.elements()?;
    Ok(indices.iter().map(|&c| elems[c].torsion.clone()).collect())
}

/// Fiber structure, explicit irreducible and oracle agreements at one point.
pub fn analyze_fiber(problem: &Problem, p: &SpecPoint, with_matrices: bool) -> Result<(FiberSummary, Vec<CheckRecord>), CliError> {
    let z = &problem.center;
    let key = p.key();
    let alg = fiber_algebra(z, p)?;
    let fs = fiber_structure_of(&alg)?;
    let q0 = alg.q0().as_abelian().expect("abelian fibers").clone();
    let order = alg.dimension();
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(CheckRecord { name: format!("{name} at {key}"), passed, detail });
    };
    let commutative = alg.is_commutative();
    check("basic iff commutative", commutative == fs.is_basic(), format!("n = {}, commutative = {commutative}", fs.irrep_dim));

    let center_dimension = (order <= CENTER_ORACLE_LIMIT).then(|| center_dimension_oracle(&alg));
    if let Some(c) = center_dimension {
        check("center dimension", c as u64 == fs.block_count, format!("oracle {c}, |Q0|/n^2 = {}", fs.block_count));
    }

    let predicted = predicted_stabilizer(&alg, &fs)?;
    let predicted_invariants = invariant_form(&fs.stabilizer_invariants);
    let (irrep, stabilizer) = match irrep_construct(z, p) {
        Ok(rep) => {
            let st = stabilizer_bruteforce(&alg, &rep.basis_matrices)?;
            let n2 = (fs.irrep_dim * fs.irrep_dim) as usize;
            check("irreducible", rep.algebra_dimension == n2, format!("image algebra dimension {}", rep.algebra_dimension));
            check(
                "stabilizer structure",
                st.invariants == predicted_invariants,
                format!("brute force {:?}, predicted {:?}", st.invariants, predicted_invariants),
            );
            check("maximal stability", st.maximally_stable, format!("|Stab| = {}, n^2 = {n2}", st.order));
            check("predicted stabilizer", st.characters == predicted, format!("{} characters", st.characters.len()));
            let sd = order * n2 / st.order.max(1);
            check("sd identity", sd as u64 == fs.sd && fs.sd == order as u64, format!("|G0| n^2 / |Stab| = {sd}, |Q0| = {order}"));
            let irrep = IrrepSummary {
                available: true,
                dim: rep.dim,
                algebra_dimension: rep.algebra_dimension,
                generator_matrices: if with_matrices { rep.generator_matrices.iter().map(matrix_strings).collect() } else { Vec::new() },
                note: None,
            };
            let stab = StabilizerSummary {
                method: "bruteforce".into(),
                order: st.order,
                invariants: st.invariants,
                maximally_stable: st.maximally_stable,
                characters: character_exponents(&q0, &st.characters)?,
            };
            (irrep, stab)
        }
        Err(Error::RadicalUnavailable(msg)) => {
            let sd = order * (fs.irrep_dim * fs.irrep_dim) as usize / predicted.len().max(1);
            check("sd identity", sd as u64 == fs.sd && fs.sd == order as u64, format!("predicted stabilizer, sd = {sd}, |Q0| = {order}"));
            let irrep = IrrepSummary {
                available: false,
                dim: fs.irrep_dim as usize,
                algebra_dimension: 0,
                generator_matrices: Vec::new(),
                note: Some(format!("irreducible not constructed: {msg}")),
            };
            let stab = StabilizerSummary {
                method: "predicted".into(),
                order: predicted.len(),
                invariants: predicted_invariants,
                maximally_stable: predicted.len() as u64 == fs.irrep_dim * fs.irrep_dim,
                characters: character_exponents(&q0, &predicted)?,
            };
            (irrep, stab)
        }
        Err(e) => return Err(e.into()),
    };
    let summary = FiberSummary {
        point: key.clone(),
        torsion_class: p.torsion_class(z),
        root_order: fs.root_order,
        exponent_matrix: (0..fs.exponent_matrix.rows())
            .map(|i| (0..fs.exponent_matrix.cols()).map(|j| fs.exponent_matrix[(i, j)].to_string()).collect())
            .collect(),
        blocks: fs.blocks.clone(),
        block_orders: fs.block_orders.clone(),
        irrep_dim: fs.irrep_dim,
        block_count: fs.block_count,
        sd: fs.sd,
        stabilizer_invariants: fs.stabilizer_invariants.clone(),
        commutative,
        center_dimension,
        irrep: Some(irrep),
        stabilizer: Some(stabilizer),
    };
    Ok((summary, checks))
}

/// Analyses every point in parallel; output sorted by point key.
pub fn analyze_fibers(problem: &Problem, points: &[SpecPoint]) -> Result<(Vec<FiberSummary>, Vec<CheckRecord>), CliError> {
    let results: Vec<_> = points.par_iter().map(|p| analyze_fiber(problem, p, false)).collect::<Result<_, _>>()?;
    let mut results = results;
    results.sort_by(|a, b| a.0.point.cmp(&b.0.point));
    let mut fibers = Vec::new();
    let mut checks = Vec::new();
    for (f, c) in results {
        fibers.push(f);
        checks.extend(c);
    }
    Ok((fibers, checks))
}

fn roman(mut n: usize) -> String {
    const DIGITS: [(usize, &str); 9] =
        [(100, "C"), (90, "XC"), (50, "L"), (40, "XL"), (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I")];
    let mut out = String::new();
    for (v, s) in DIGITS {
        while n >= v {
            out.push_str(s);
            n -= v;
        }
    }
    out
}

/// Colexicographic key: last coordinate most significant.
fn colex(v: &[u64]) -> Vec<u64> {
    v.iter().rev().copied().collect()
}

struct ClassData {
    torsion: Vec<u64>,
    point: SpecPoint,
    fs: FiberStructure,
    stabilizer: Vec<usize>,
}

/// Groups the torsion classes of `MaxSpec C` by normal-form blocks,
/// stabilizer invariants, irreducible dimension, block count and the
/// stabilizer itself. Cases are labelled in order of their least class.
pub fn classify_torsion_cases(problem: &Problem) -> Result<CaseTable, CliError> {
    if !problem.is_abelian() {
        return Err(CliError::Validation("torsion cases need an abelian Q".into()));
    }
    let z = &problem.center;
    let s = &z.structure().group;
    let torsion_group = FinGenAbelianGroup::cyclic_product(s.invariant_factors().to_vec(), 0)?;
    let classes = torsion_group.elements()?;
    let free = vec![Cyclotomic::one(); s.free_rank()];
    let data: Vec<ClassData> = classes
        .par_iter()
        .map(|c| -> Result<ClassData, CliError> {
            let torsion: Vec<u64> = c.torsion.iter().map(|&k| k as u64).collect();
            let point = point_from_structure(z, &torsion, &free)?;
            let alg = fiber_algebra(z, &point)?;
            let fs = fiber_structure_of(&alg)?;
            let stabilizer = predicted_stabilizer(&alg, &fs)?;
            Ok(ClassData { torsion, point, fs, stabilizer })
        })
        .collect::<Result<_, _>>()?;
    let q0 = z.q0().as_abelian().expect("abelian").clone();
    let mut rows: Vec<(CaseRow, Vec<usize>)> = Vec::new();
    let mut order: Vec<&ClassData> = data.iter().collect();
    order.sort_by_key(|d| (d.fs.irrep_dim, colex(&d.torsion)));
    for d in order {
        let slot = rows.iter_mut().find(|(r, st)| {
            r.blocks == d.fs.blocks
                && r.stabilizer_invariants == d.fs.stabilizer_invariants
                && r.irrep_dim == d.fs.irrep_dim
                && r.block_count == d.fs.block_count
                && *st == d.stabilizer
        });
        match slot {
            Some((r, _)) => {
                r.torsion_classes.push(d.torsion.clone());
                r.representatives.push(d.point.key());
            }
            None => rows.push((
                CaseRow {
                    label: String::new(),
                    torsion_classes: vec![d.torsion.clone()],
                    representatives: vec![d.point.key()],
                    root_order: d.fs.root_order,
                    blocks: d.fs.blocks.clone(),
                    irrep_dim: d.fs.irrep_dim,
                    block_count: d.fs.block_count,
                    stabilizer_invariants: d.fs.stabilizer_invariants.clone(),
                    stabilizer_order: d.stabilizer.len(),
                    stabilizer_characters: character_exponents(&q0, &d.stabilizer)?,
                },
                d.stabilizer.clone(),
            )),
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, (mut r, _))| {
            r.label = roman(i + 1);
            r
        })
        .collect();
    Ok(CaseTable { rows })
}

/// Winding orbits among `points`, with optional detail for one point.
pub fn orbit_report(
    problem: &Problem,
    focus: Option<&SpecPoint>,
    points: &[SpecPoint],
) -> Result<(OrbitReport, Vec<CheckRecord>), CliError> {
    let z = &problem.center;
    let g = &problem.group;
    let a = commutator_subgroup(g)?;
    let ab = abelianization(g)?;
    let mut checks = Vec::new();
    let flags: Vec<(bool, bool)> = points
        .par_iter()
        .map(|p| -> Result<(bool, bool), CliError> {
            Ok((counit_orbit_membership(p, z)?, fiber_algebra(z, p)?.is_commutative()))
        })
        .collect::<Result<_, _>>()?;
    let mut classes: Vec<(SpecPoint, OrbitClass)> = Vec::new();
    for (p, &(member, commutative)) in points.iter().zip(&flags) {
        checks.push(CheckRecord {
            name: format!("counit orbit iff commutative at {}", p.key()),
            passed: member == commutative,
            detail: format!("orbit {member}, commutative {commutative}"),
        });
        let mut placed = false;
        for (rep, class) in classes.iter_mut() {
            if same_winding_orbit(rep, p, z)? {
                class.points.push(p.key());
                class.basic &= commutative;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((
                p.clone(),
                OrbitClass { torsion_class: p.torsion_class(z), counit_orbit: member, basic: commutative, points: vec![p.key()] },
            ));
        }
    }
    // equivalence relation: the partition must be symmetric and exclusive
    let reps: Vec<&SpecPoint> = classes.iter().map(|(r, _)| r).collect();
    let mut exclusive = true;
    for (i, r) in reps.iter().enumerate() {
        for s in &reps[i + 1..] {
            if same_winding_orbit(r, s, z)? || same_winding_orbit(s, r, z)? {
                exclusive = false;
            }
        }
    }
    checks.push(CheckRecord {
        name: "winding orbits partition the points".into(),
        passed: exclusive,
        detail: format!("{} orbits among {} points", classes.len(), points.len()),
    });
    let focus = match focus {
        None => None,
        Some(p) => {
            let member = counit_orbit_membership(p, z)?;
            let commutative = fiber_algebra(z, p)?.is_commutative();
            checks.push(CheckRecord {
                name: format!("counit orbit iff commutative at {}", p.key()),
                passed: member == commutative,
                detail: format!("orbit {member}, commutative {commutative}"),
            });
            let mut same: Vec<String> = Vec::new();
            for q in points {
                if q.key() != p.key() && same_winding_orbit(p, q, z)? {
                    same.push(q.key());
                }
            }
            let witness = match extend_from_center(p, z) {
                Ok(Some(chi)) => Some(chi.values().iter().map(Cyclotomic::to_short_string).collect()),
                Ok(None) | Err(Error::RadicalUnavailable(_)) => None,
                Err(e) => return Err(e.into()),
            };
            Some(OrbitFocus {
                point: p.key(),
                torsion_class: p.torsion_class(z),
                counit_orbit: member,
                commutative_fiber: commutative,
                same_orbit_as: same,
                witness_character: witness,
            })
        }
    };
    let mut classes: Vec<OrbitClass> = classes.into_iter().map(|(_, c)| c).collect();
    classes.sort_by(|a, b| a.points[0].cmp(&b.points[0]));
    Ok((
        OrbitReport {
            focus,
            classes,
            commutator_values: a.values.iter().map(|v| v.coords()).collect(),
            abelianization: ab.group().to_string(),
        },
        checks,
    ))
}

/// Stabilizer character sets of two cases, as sets of exponent vectors.
pub fn stabilizer_set(row: &CaseRow) -> BTreeSet<Vec<i64>> {
    row.stabilizer_characters.iter().cloned().collect()
}
