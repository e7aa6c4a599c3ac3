//! Group-like characters of `H = kG_σ`, the winding action they induce on
//! `MaxSpec C`, and orbit membership.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::abelian::{FinGenAbelianGroup, GroupElement, Quotient};
use crate::extension::{CentralExtensionGroup, CentralSubgroupData, ExtElem};
use crate::fiber::SpecPoint;
use crate::intlinalg::{smith_normal_form, IntMatrix};
use crate::scalars::Cyclotomic;
use crate::error::{Error, Result};

/// `A = [G, G]`, generated by the commutators of the generators of `Q`.
#[derive(Clone, Debug)]
pub struct CommutatorSubgroup {
    /// Distinct nonzero values `σ(x_i, x_j) - σ(x_j, x_i)` in `N`.
    pub values: Vec<GroupElement>,
    /// The same values embedded in `G_σ`.
    pub generators: Vec<ExtElem>,
    pub structure: FinGenAbelianGroup,
}

pub fn commutator_subgroup(g: &CentralExtensionGroup) -> Result<CommutatorSubgroup> {
    let n = g.target();
    let qg = g.q_generators();
    g.base().as_abelian().ok_or(Error::NonAbelianBase)?;
    let mut values: Vec<GroupElement> = Vec::new();
    for i in 0..qg.len() {
        for j in i + 1..qg.len() {
            let c = g.n_part(&g.commutator(&qg[i], &qg[j])).expect("commutators lie in N");
            if !c.is_zero() && !values.contains(&c) {
                values.push(c);
            }
        }
    }
    let generators = values.iter().map(|v| g.embed(v)).collect();
    let structure = n.subgroup_structure(&values);
    Ok(CommutatorSubgroup { values, generators, structure })
}

/// `G/A` on the generators of `N` followed by those of `Q`.
#[derive(Clone, Debug)]
pub struct Abelianization {
    /// Relations among the generators, one row each.
    pub relations: Vec<Vec<i64>>,
    pub quotient: Quotient,
}

impl Abelianization {
    pub fn group(&self) -> &FinGenAbelianGroup {
        &self.quotient.group
    }

    pub fn generator_count(&self) -> usize {
        self.quotient.source.rank()
    }
}

/// Exponent vector of `g` on the generators of `N` then `Q`.
pub fn generator_word(g: &CentralExtensionGroup, x: &ExtElem) -> Vec<i64> {
    let (n, e) = g.word_form(x);
    let mut w = n.coords();
    w.extend(e);
    w
}

pub fn abelianization(g: &CentralExtensionGroup) -> Result<Abelianization> {
    let q = g.base().as_abelian().ok_or(Error::NonAbelianBase)?;
    let n = g.target();
    let (rn, rq) = (n.rank(), q.rank());
    let mut relations = Vec::new();
    for (i, &t) in n.invariant_factors().iter().enumerate() {
        let mut row = vec![0; rn + rq];
        row[i] = t as i64;
        relations.push(row);
    }
    for a in commutator_subgroup(g)?.values {
        let mut row = a.coords();
        row.resize(rn + rq, 0);
        relations.push(row);
    }
    let qg = g.q_generators();
    for (i, &t) in q.invariant_factors().iter().enumerate() {
        let mut row: Vec<i64> = generator_word(g, &g.pow(&qg[i], t as i64)).iter().map(|v| -v).collect();
        row[rn + i] += t as i64;
        relations.push(row);
    }
    let free = FinGenAbelianGroup::free(rn + rq);
    let rel: Vec<GroupElement> = relations.iter().map(|r| free.element(r)).collect::<Result<_>>()?;
    let quotient = free.quotient_group(&rel);
    Ok(Abelianization { relations, quotient })
}

fn word_value(values: &[Cyclotomic], w: &[i64]) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::one();
    for (v, &e) in values.iter().zip(w) {
        if e != 0 {
            acc = &acc * &v.pow(e)?;
        }
    }
    Ok(acc)
}

/// A one-dimensional representation of `G_σ`, stored by its values on the
/// generators of `N` then `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCharacter {
    values: Vec<Cyclotomic>,
}

impl HCharacter {
    pub fn new(ab: &Abelianization, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != ab.generator_count() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} character values, got {}",
                ab.generator_count(),
                values.len()
            )));
        }
        if values.iter().any(Cyclotomic::is_zero) {
            return Err(Error::DimensionMismatch("character values must be nonzero".into()));
        }
        for r in &ab.relations {
            if !word_value(&values, r)?.is_one() {
                return Err(Error::DimensionMismatch(format!("values violate the relation {r:?}")));
            }
        }
        Ok(HCharacter { values })
    }

    pub fn trivial(ab: &Abelianization) -> Self {
        HCharacter { values: vec![Cyclotomic::one(); ab.generator_count()] }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn evaluate(&self, g: &CentralExtensionGroup, x: &ExtElem) -> Result<Cyclotomic> {
        word_value(&self.values, &generator_word(g, x))
    }

    pub fn multiply(&self, other: &HCharacter) -> HCharacter {
        HCharacter { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    /// `χ|_Z` as a point of `MaxSpec C`.
    pub fn restrict(&self, z: &CentralSubgroupData) -> Result<SpecPoint> {
        let g = z.group();
        let values = z.generators().iter().map(|x| self.evaluate(g, x)).collect::<Result<Vec<_>>>()?;
        SpecPoint::new(z, values)
    }
}

/// Side on which the character is applied to the comultiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
}

/// Image of a point under the winding automorphism of `χ`. On group-like
/// elements both sides scale `g` by `χ(g)`, so the two orientations agree.
pub fn winding_translate(
    p: &SpecPoint,
    chi: &HCharacter,
    z: &CentralSubgroupData,
    orientation: Orientation,
) -> Result<SpecPoint> {
    let r = chi.restrict(z)?;
    let out = match orientation {
        Orientation::Left => r.multiply(p),
        Orientation::Right => p.multiply(&r),
    };
    SpecPoint::new(z, out.values().to_vec())
}

/// A point is in the winding orbit of the counit iff it is trivial on `A`.
pub fn counit_orbit_membership(p: &SpecPoint, z: &CentralSubgroupData) -> Result<bool> {
    let a = commutator_subgroup(z.group())?;
    for x in &a.generators {
        if !p.value_at(x, z)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn same_winding_orbit(p: &SpecPoint, q: &SpecPoint, z: &CentralSubgroupData) -> Result<bool> {
    counit_orbit_membership(&q.multiply(&p.inverse()), z)
}

/// Some character of `G_σ` restricting to `ψ` on `Z`, or `None` when `ψ`
/// is not trivial on `A`. Needs radicals of the point's values.
pub fn extend_from_center(psi: &SpecPoint, z: &CentralSubgroupData) -> Result<Option<HCharacter>> {
    let g = z.group();
    let ab = abelianization(g)?;
    let m = ab.generator_count();
    let mut rows: Vec<Vec<i64>> = ab.relations.clone();
    let mut targets: Vec<Cyclotomic> = vec![Cyclotomic::one(); rows.len()];
    for (x, v) in z.generators().iter().zip(psi.values()) {
        rows.push(generator_word(g, x));
        targets.push(v.clone());
    }
    let b = IntMatrix::from_i64_rows(&rows, m);
    let snf = smith_normal_form(&b);
    // rows of U·B = S·V⁻¹ carry the values β^U
    let mut beta = Vec::with_capacity(rows.len());
    for k in 0..rows.len() {
        let mut acc = Cyclotomic::one();
        for (j, t) in targets.iter().enumerate() {
            let e = &snf.u[(k, j)];
            if !e.is_zero() && !t.is_one() {
                acc = &acc * &t.pow_big(e)?;
            }
        }
        beta.push(acc);
    }
    let diag = snf.diagonal();
    for (k, bk) in beta.iter().enumerate() {
        let s = diag.get(k).cloned().unwrap_or_else(BigInt::zero);
        if s.is_zero() && !bk.is_one() {
            return Ok(None);
        }
    }
    // y = c^{V⁻¹}, so c_i = Π_k y_k^{V_ik}
    let mut y = vec![Cyclotomic::one(); m];
    for k in 0..snf.rank {
        let s = diag[k].abs().to_u64().ok_or_else(|| Error::Internal("elementary divisor overflow".into()))?;
        y[k] = beta[k].nth_root(s)?;
    }
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = Cyclotomic::one();
        for (k, yk) in y.iter().enumerate() {
            let e = &snf.v[(i, k)];
            if !e.is_zero() && !yk.is_one() {
                acc = &acc * &yk.pow_big(e)?;
            }
        }
        values.push(acc);
    }
    let chi = HCharacter::new(&ab, values)?;
    if chi.restrict(z)? != *psi {
        return Err(Error::Internal("extended character does not restrict to the point".into()));
    }
    Ok(Some(chi))
}

/// A character `χ` with `q = χ|_Z · p`, when `p` and `q` share an orbit.
pub fn winding_witness(p: &SpecPoint, q: &SpecPoint, z: &CentralSubgroupData) -> Result<Option<HCharacter>> {
    extend_from_center(&q.multiply(&p.inverse()), z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::default_central_subgroup;
    use crate::extension::tests::{heisenberg, worked_center, worked_group, z2_over_z};
    use crate::fiber::{fiber_algebra, fiber_structure};

    fn z3(k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(3, k)
    }

    #[test]
    fn worked_commutators_span_n() {
        let g = worked_group();
        let a = commutator_subgroup(&g).unwrap();
        assert_eq!(a.structure.invariant_factors(), &[3, 3]);
        let ab = abelianization(&g).unwrap();
        // G/A = Q with N killed
        assert_eq!(ab.group().invariant_factors(), &[3, 3]);
        assert_eq!(ab.group().free_rank(), 2);
    }

    #[test]
    fn heisenberg_abelianization() {
        let g = heisenberg();
        let ab = abelianization(&g).unwrap();
        assert_eq!(ab.group().order(), Some(4));
        assert!(HCharacter::new(&ab, vec![Cyclotomic::from_integer(-1); 3]).is_err());
        let chi = HCharacter::new(&ab, vec![Cyclotomic::one(), Cyclotomic::from_integer(-1), Cyclotomic::one()]).unwrap();
        assert_eq!(chi.evaluate(&g, &g.q_generators()[0]).unwrap(), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn counit_orbit_is_commutative_locus() {
        let z = worked_center();
        let frees = [Cyclotomic::one(), Cyclotomic::from_integer(2), z3(1)];
        for u in 0..3 {
            for v in 0..3 {
                for w in &frees {
                    let p = SpecPoint::new(&z, vec![z3(u), z3(v), w.clone(), Cyclotomic::from_fraction(1, 2)]).unwrap();
                    let member = counit_orbit_membership(&p, &z).unwrap();
                    assert_eq!(member, fiber_algebra(&z, &p).unwrap().is_commutative());
                    assert_eq!(member, (u, v) == (0, 0));
                }
            }
        }
    }

    #[test]
    fn winding_orientations_agree_and_preserve_fibers() {
        let z = worked_center();
        let g = z.group();
        let ab = abelianization(g).unwrap();
        let mut vals = vec![Cyclotomic::one(); 2];
        vals.extend([z3(1), z3(2), Cyclotomic::from_integer(3), Cyclotomic::from_integer(-1)]);
        let chi = HCharacter::new(&ab, vals).unwrap();
        let p = SpecPoint::new(&z, vec![z3(1), z3(0), Cyclotomic::from_integer(2), Cyclotomic::one()]).unwrap();
        let l = winding_translate(&p, &chi, &z, Orientation::Left).unwrap();
        let r = winding_translate(&p, &chi, &z, Orientation::Right).unwrap();
        assert_eq!(l, r);
        assert!(same_winding_orbit(&p, &l, &z).unwrap());
        let fp = fiber_structure(&z, &p).unwrap();
        let fl = fiber_structure(&z, &l).unwrap();
        assert_eq!((fp.irrep_dim, fp.block_count), (fl.irrep_dim, fl.block_count));
        let w = winding_witness(&p, &l, &z).unwrap().expect("same orbit");
        assert_eq!(winding_translate(&p, &w, &z, Orientation::Left).unwrap(), l);
    }

    #[test]
    fn extension_fails_off_orbit() {
        let z = worked_center();
        let p = SpecPoint::new(&z, vec![z3(1), z3(1), Cyclotomic::one(), Cyclotomic::one()]).unwrap();
        assert!(extend_from_center(&p, &z).unwrap().is_none());
        let q = SpecPoint::new(&z, vec![z3(2), z3(2), Cyclotomic::one(), Cyclotomic::one()]).unwrap();
        assert!(!same_winding_orbit(&p, &q, &z).unwrap());
        let c = SpecPoint::new(&z, vec![Cyclotomic::one(), Cyclotomic::one(), Cyclotomic::from_integer(8), z3(1)]).unwrap();
        assert!(extend_from_center(&c, &z).unwrap().is_some());
    }

    #[test]
    fn integer_extension_characters() {
        // Z/2 extended by Z with σ(1,1) = 1: G ≅ Z, the double cover
        let g = z2_over_z();
        let z = default_central_subgroup(&g, &[]).unwrap();
        let p = SpecPoint::new(&z, vec![Cyclotomic::from_integer(4)]).unwrap();
        let chi = extend_from_center(&p, &z).unwrap().unwrap();
        assert_eq!(chi.restrict(&z).unwrap(), p);
        let ab = abelianization(&g).unwrap();
        assert_eq!(ab.group().free_rank(), 1);
        assert!(ab.group().invariant_factors().is_empty());
    }
}
