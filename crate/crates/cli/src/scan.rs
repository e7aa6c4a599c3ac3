//! Discriminant scans: at each point the transversal Gram determinant must
//! be nonzero and every oversized tuple must give a singular Gram matrix.

use cextdisc_core::cocycle::{BaseGroup, QElem};
use cextdisc_core::extension::{
    evaluate_matrix, regular_trace, transversal_basis, transversal_gram, AlgebraElement, CentralSubgroupData,
};
use cextdisc_core::fiber::SpecPoint;
use cextdisc_core::scalars::Cyclotomic;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::input::Problem;
use crate::report::{OversizedCheck, ScanReport, ScanRow};
use crate::CliError;

/// Deliberate corruption of the trace, for testing that scans catch it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFault {
    /// `tr'(h) = tr(h) + (coefficient of the identity in h)`.
    ShiftByIdentityCoefficient,
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub max_k: usize,
    pub samples: usize,
    pub tuples: usize,
    pub seed: u64,
    pub fault: Option<TraceFault>,
}

fn trace(h: &AlgebraElement, z: &CentralSubgroupData, fault: Option<TraceFault>) -> AlgebraElement {
    let t = regular_trace(h, z);
    match fault {
        None => t,
        Some(TraceFault::ShiftByIdentityCoefficient) => {
            let e = z.group().identity();
            let c = h.coefficient(&e);
            t.add(&AlgebraElement::term(e, c))
        }
    }
}

fn gram(tuple: &[AlgebraElement], z: &CentralSubgroupData, fault: Option<TraceFault>) -> Vec<Vec<AlgebraElement>> {
    let g = z.group();
    let k = tuple.len();
    let mut m = vec![vec![AlgebraElement::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = trace(&tuple[i].mul(&tuple[j], g), z, fault);
        }
    }
    m
}

/// An element of `H` with one to three terms and small coefficients.
pub fn random_element(z: &CentralSubgroupData, rng: &mut ChaCha8Rng) -> AlgebraElement {
    let g = z.group();
    let n = g.target();
    let terms = rng.gen_range(1..=3);
    let mut out = AlgebraElement::zero();
    for _ in 0..terms {
        let mut ncoords: Vec<i64> = n.invariant_factors().iter().map(|&t| rng.gen_range(0..t as i64)).collect();
        ncoords.extend((0..n.free_rank()).map(|_| rng.gen_range(-1..=1)));
        let nel = n.element(&ncoords).expect("valid coordinates");
        let x = match g.base() {
            BaseGroup::Abelian(q) => {
                let exps: Vec<i64> = (0..q.rank()).map(|_| rng.gen_range(-2..=2)).collect();
                g.mul(&g.embed(&nel), &g.monomial(&exps))
            }
            BaseGroup::Table(t) => g.mul(&g.embed(&nel), &g.section(&QElem::Table(rng.gen_range(0..t.order())))),
        };
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        out.add_term(x, &Cyclotomic::from_integer(c));
    }
    out
}

/// Runs the scan on the explicit points of the spec plus `samples` sampled ones.
pub fn scan_discriminant(problem: &Problem, opts: &ScanOptions) -> Result<ScanReport, CliError> {
    let z = &problem.center;
    let d = z.degree();
    let mut points: Vec<SpecPoint> =
        problem.spec.points.explicit.iter().map(|k| problem.parse_point(k)).collect::<Result<_, _>>()?;
    points.extend(problem.sampled(opts.samples)?);
    points.sort_by_key(SpecPoint::key);
    points.dedup_by_key(|p| p.key());
    if points.is_empty() {
        return Err(CliError::Validation("scan needs at least one point".into()));
    }

    let basis = transversal_basis(z);
    let tg = transversal_gram(z);
    let full = if opts.fault.is_some() { gram(&basis, z, opts.fault) } else { tg.matrix.clone() };
    let mut oversized: Vec<(usize, Vec<Vec<AlgebraElement>>)> = Vec::new();
    for k in d + 1..=opts.max_k {
        for t in 0..opts.tuples {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ ((k as u64) << 32) ^ t as u64);
            let mut tuple = basis.clone();
            while tuple.len() < k {
                tuple.push(random_element(z, &mut rng));
            }
            oversized.push((k, gram(&tuple, z, opts.fault)));
        }
    }

    let rows: Vec<ScanRow> = points
        .par_iter()
        .map(|p| -> Result<ScanRow, CliError> {
            let det = evaluate_matrix(&full, z, p)?.determinant();
            let product_form_agrees = match tg.product_form_at(z, p)? {
                Some(v) if opts.fault.is_none() => v == det,
                Some(_) => true,
                None => false,
            };
            let mut checks: Vec<OversizedCheck> = Vec::new();
            for (k, m) in &oversized {
                let singular = evaluate_matrix(m, z, p)?.determinant().is_zero();
                match checks.iter_mut().find(|c| c.k == *k) {
                    Some(c) => {
                        c.tuples += 1;
                        c.all_singular &= singular;
                    }
                    None => checks.push(OversizedCheck { k: *k, tuples: 1, all_singular: singular }),
                }
            }
            Ok(ScanRow {
                point: p.key(),
                torsion_class: p.torsion_class(z),
                nonzero: !det.is_zero(),
                determinant: det.to_short_string(),
                product_form_agrees,
                oversized: checks,
            })
        })
        .collect::<Result<_, _>>()?;

    let mut counterexample = None;
    for r in &rows {
        let problem = if !r.nonzero {
            Some(format!("transversal Gram determinant vanishes at {}", r.point))
        } else if let Some(c) = r.oversized.iter().find(|c| !c.all_singular) {
            Some(format!("a {}-tuple has a nonsingular Gram matrix at {}", c.k, r.point))
        } else if !r.product_form_agrees {
            Some(format!("determinant disagrees with the permutation product form at {}", r.point))
        } else {
            None
        };
        if problem.is_some() {
            counterexample = problem;
            break;
        }
    }
    Ok(ScanReport {
        degree: d,
        max_k: opts.max_k,
        transversal_is_generalized_permutation: tg.is_generalized_permutation(),
        consistent: counterexample.is_none() && tg.is_generalized_permutation(),
        counterexample,
        rows,
    })
}
