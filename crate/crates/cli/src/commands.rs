//! The subcommands, each producing a [`Report`].

use cextdisc_core::scalars::Cyclotomic;

use crate::analysis::{analyze_fiber, analyze_fibers, classify_torsion_cases, orbit_report, problem_summary, stabilizer_set};
use crate::input::Problem;
use crate::worked::{worked_module, worked_problem};
use crate::report::Report;
use crate::scan::{scan_discriminant, ScanOptions};
use crate::CliError;

/// Points examined when the spec does not ask for a number of samples.
pub const DEFAULT_SAMPLES: usize = 18;

fn need_abelian(problem: &Problem, what: &str) -> Result<(), CliError> {
    if problem.is_abelian() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("{what} needs an abelian Q")))
    }
}

/// Everything requested in the `commands` section of the input.
pub fn check(problem: &Problem) -> Result<Report, CliError> {
    let mut report = Report::new("check", problem_summary(problem));
    let cmds = problem.spec.commands.clone();
    let points = problem.points(DEFAULT_SAMPLES)?;
    report.check(
        "transversal rank",
        problem.center.degree() as u64 == report.problem.q0.iter().product::<u64>(),
        format!("d = {}", problem.center.degree()),
    );
    if problem.is_abelian() {
        if cmds.fibers {
            let (fibers, checks) = analyze_fibers(problem, &points)?;
            report.fibers = fibers;
            report.checks.extend(checks);
        }
        if cmds.table {
            report.cases = Some(classify_torsion_cases(problem)?);
        }
        if cmds.orbits {
            let (orbits, checks) = orbit_report(problem, None, &points)?;
            report.orbits = Some(orbits);
            report.checks.extend(checks);
        }
    } else {
        report.notes.push("Q is not abelian: fiber structure, cases and orbits are skipped".into());
    }
    if let Some(s) = cmds.scan {
        let opts = ScanOptions { max_k: s.max_k, samples: s.samples, tuples: s.tuples, seed: s.seed, fault: None };
        let scan = scan_discriminant(problem, &opts)?;
        report.check("discriminant scan", scan.consistent, scan.counterexample.clone().unwrap_or_else(|| "consistent".into()));
        report.scan = Some(scan);
    }
    Ok(report)
}

pub fn fiber(problem: &Problem, key: &str) -> Result<Report, CliError> {
    need_abelian(problem, "fiber analysis")?;
    let p = problem.parse_point(key)?;
    let mut report = Report::new("fiber", problem_summary(problem));
    let (summary, checks) = analyze_fiber(problem, &p, true)?;
    report.fibers.push(summary);
    report.checks.extend(checks);
    Ok(report)
}

pub fn scan(problem: &Problem, max_k: usize, samples: usize) -> Result<Report, CliError> {
    let mut report = Report::new("scan", problem_summary(problem));
    let (tuples, seed) = problem.spec.commands.scan.as_ref().map_or((1, 0), |s| (s.tuples, s.seed));
    let opts = ScanOptions { max_k, samples, tuples, seed, fault: None };
    let scan = scan_discriminant(problem, &opts)?;
    report.check("discriminant scan", scan.consistent, scan.counterexample.clone().unwrap_or_else(|| "consistent".into()));
    report.scan = Some(scan);
    Ok(report)
}

pub fn orbit(problem: &Problem, key: &str) -> Result<Report, CliError> {
    need_abelian(problem, "orbit analysis")?;
    let p = problem.parse_point(key)?;
    let mut report = Report::new("orbit", problem_summary(problem));
    let mut points = problem.points(DEFAULT_SAMPLES)?;
    if !points.iter().any(|q| q.key() == p.key()) {
        points.push(p.clone());
        points.sort_by_key(|q| q.key());
    }
    let (orbits, checks) = orbit_report(problem, Some(&p), &points)?;
    report.orbits = Some(orbits);
    report.checks.extend(checks);
    Ok(report)
}

pub fn table(problem: &Problem) -> Result<Report, CliError> {
    need_abelian(problem, "case classification")?;
    let mut report = Report::new("table", problem_summary(problem));
    report.cases = Some(classify_torsion_cases(problem)?);
    Ok(report)
}

/// Rebuilds the worked example and checks the expected case table.
pub fn run_worked_example() -> Result<Report, CliError> {
    let problem = worked_problem();
    let mut report = check(&problem)?;
    report.command = "example paper".into();
    let s = report.problem.clone();
    report.check("rank of H over C", s.degree == 27, format!("d = {}", s.degree));
    report.check("MaxSpec C", s.maxspec == "(Z/3)^2 x Gm^2", s.maxspec.clone());
    report.check("torsion classes", s.torsion_classes == 9, format!("{} classes", s.torsion_classes));
    let rows = report.cases.as_ref().map(|c| c.rows.clone()).unwrap_or_default();
    report.check("five cases", rows.len() == 5, format!("{} cases", rows.len()));
    if let Some(first) = rows.first() {
        report.check(
            "case I basic",
            first.irrep_dim == 1 && first.block_count == 27 && first.stabilizer_order == 1 && first.torsion_classes == vec![vec![0, 0]],
            format!("n = {}, {} blocks, |Stab| = {}", first.irrep_dim, first.block_count, first.stabilizer_order),
        );
    }
    for r in rows.iter().skip(1) {
        report.check(
            format!("case {}", r.label),
            r.root_order == 3
                && r.blocks == vec![1]
                && r.irrep_dim == 3
                && r.block_count == 3
                && r.stabilizer_invariants == vec![3, 3]
                && r.torsion_classes.len() == 2,
            format!("d = {}, blocks {:?}, n = {}, {} blocks, stabilizer {:?}", r.root_order, r.blocks, r.irrep_dim, r.block_count, r.stabilizer_invariants),
        );
    }
    if rows.len() >= 3 {
        let (a, b) = (stabilizer_set(&rows[1]), stabilizer_set(&rows[2]));
        report.check("stabilizers of cases II and III form no chain", !a.is_subset(&b) && !b.is_subset(&a), "mutually non-contained");
    }
    let module = worked_module(&problem, &Cyclotomic::root_of_unity(3, 1), &Cyclotomic::root_of_unity(3, 2))?;
    report.check(
        "explicit 3x3 module",
        module.relations.holds && module.algebra_dimension == 9,
        format!("relations hold: {}, image dimension {}", module.relations.holds, module.algebra_dimension),
    );
    Ok(report)
}
