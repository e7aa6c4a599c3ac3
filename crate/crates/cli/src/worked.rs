//! The built-in worked example: `N = (Z/3)^2`, `Q = Z/3 x Z/3 x Z^2`, with
//! the commutators `[a_1, a_2] = c_1` and `[a_1, a_4] = c_2`, and
//! `Z = <c_1, c_2, a_3, a_4^3>`.

use cextdisc_core::cycmatrix::CycMatrix;
use cextdisc_core::fiber::{generated_algebra_dimension, verify_group_representation, RelationCheck, SpecPoint};
use cextdisc_core::scalars::Cyclotomic;

use crate::input::Problem;
use crate::CliError;

pub const WORKED_SPEC: &str = r#"{
  "name": "worked example",
  "groups": {
    "N": {"invariant_factors": [3, 3]},
    "Q": {"invariant_factors": [3, 3], "free_rank": 2}
  },
  "cocycle": {
    "kind": "bilinear",
    "entries": [
      {"i": 0, "j": 1, "value": [1, 0]},
      {"i": 0, "j": 3, "value": [0, 1]}
    ]
  },
  "central": {"extras": [{"q": [0, 0, 1, 0]}]},
  "points": {"samples": 54},
  "commands": {"fibers": true, "table": true, "orbits": true}
}"#;

pub fn worked_problem() -> Problem {
    Problem::from_text(WORKED_SPEC).expect("built-in spec is valid")
}

/// The explicit three-dimensional module: `a_1 = diag(1, ξ, ξ²)`, `a_2` and
/// `a_4` cyclic shifts (the latter scaled by `∛x`), `a_3 = w`. These satisfy
/// the relations with `c_1 ↦ ξ²` and `c_2 ↦ ξ`.
pub struct WorkedModule {
    pub point: SpecPoint,
    /// `c_1, c_2, a_1, a_2, a_3, a_4`.
    pub matrices: Vec<CycMatrix>,
    pub relations: RelationCheck,
    pub algebra_dimension: usize,
}

pub fn worked_module(problem: &Problem, w: &Cyclotomic, x: &Cyclotomic) -> Result<WorkedModule, CliError> {
    let xi = Cyclotomic::primitive_root(3);
    let xi2 = &xi * &xi;
    let r = x.nth_root(3)?;
    let zero = Cyclotomic::zero;
    let one = Cyclotomic::one;
    let a1 = CycMatrix::from_rows(vec![
        vec![one(), zero(), zero()],
        vec![zero(), xi.clone(), zero()],
        vec![zero(), zero(), xi2.clone()],
    ]);
    let a2 = CycMatrix::from_rows(vec![vec![zero(), one(), zero()], vec![zero(), zero(), one()], vec![one(), zero(), zero()]]);
    let a4 = CycMatrix::from_rows(vec![
        vec![zero(), zero(), r.clone()],
        vec![r.clone(), zero(), zero()],
        vec![zero(), r.clone(), zero()],
    ]);
    let matrices = vec![
        CycMatrix::scalar(3, &xi2),
        CycMatrix::scalar(3, &xi),
        a1,
        a2,
        CycMatrix::scalar(3, w),
        a4,
    ];
    let point = SpecPoint::new(&problem.center, vec![xi2.clone(), xi.clone(), w.clone(), x.clone()])?;
    let relations = verify_group_representation(&problem.center, &point, &matrices)?;
    let algebra_dimension = generated_algebra_dimension(&matrices);
    Ok(WorkedModule { point, matrices, relations, algebra_dimension })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_spec() {
        let p = worked_problem();
        assert_eq!(p.center.degree(), 27);
        assert_eq!(p.center.generators().len(), 4);
    }

    #[test]
    fn module_relations() {
        let p = worked_problem();
        let m = worked_module(&p, &Cyclotomic::root_of_unity(3, 1), &Cyclotomic::root_of_unity(3, 2)).unwrap();
        assert!(m.relations.holds, "{:?}", m.relations.failures);
        assert_eq!(m.algebra_dimension, 9);
    }
}
