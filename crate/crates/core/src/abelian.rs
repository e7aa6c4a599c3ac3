//! Finitely generated abelian groups `Z/e_1 × … × Z/e_t × Z^r`.
//!
//! Groups built with [`FinGenAbelianGroup::new`] are in invariant factor form
//! (`e_1 | e_2 | …`); [`FinGenAbelianGroup::cyclic_product`] allows any cyclic
//! orders, which is convenient for presentations that are not yet
//! normalised. Elements are always stored reduced (`0 ≤ torsion[i] < e_i`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{smith_normal_form, IntMatrix, IntegerSolver};
use crate::scalars::Cyclotomic;
use crate::ExtendedOrder;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGenAbelianGroup {
    torsion: Vec<u64>,
    free_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub torsion: Vec<i64>,
    pub free: Vec<i64>,
}

impl GroupElement {
    /// Torsion coordinates followed by free coordinates.
    pub fn coords(&self) -> Vec<i64> {
        self.torsion.iter().chain(&self.free).copied().collect()
    }

    pub fn big_coords(&self) -> Vec<BigInt> {
        self.coords().into_iter().map(BigInt::from).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FinGenAbelianGroup {
    /// Group in invariant factor form; factors must exceed 1 and divide each other.
    pub fn new(free_rank: usize, invariant_factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = invariant_factors.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidInvariantFactors(format!("factor {bad} is not greater than 1")));
        }
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidInvariantFactors(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FinGenAbelianGroup { torsion: invariant_factors, free_rank })
    }

    /// Direct product of cyclic groups of the given orders (each at least 2)
    /// and a free part; not necessarily in invariant factor form.
    pub fn cyclic_product(orders: Vec<u64>, free_rank: usize) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidInvariantFactors(format!("cyclic order {bad} is not greater than 1")));
        }
        Ok(FinGenAbelianGroup { torsion: orders, free_rank })
    }

    pub fn trivial() -> Self {
        FinGenAbelianGroup { torsion: vec![], free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        FinGenAbelianGroup { torsion: vec![], free_rank: rank }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion.len()
    }

    /// Number of standard generators.
    pub fn rank(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_invariant_factor_form(&self) -> bool {
        self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Least common multiple of the torsion orders (1 for torsion-free groups).
    pub fn exponent(&self) -> u64 {
        self.torsion.iter().fold(1, |a, &e| a.lcm(&e))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { torsion: vec![0; self.torsion.len()], free: vec![0; self.free_rank] }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        self.element(&c).expect("generator index in range")
    }

    /// Element from torsion-then-free coordinates, reduced.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, found {}",
                self.rank(),
                coords.len()
            )));
        }
        let t = self.torsion.len();
        Ok(GroupElement {
            torsion: coords[..t].iter().zip(&self.torsion).map(|(c, &e)| c.rem_euclid(e as i64)).collect(),
            free: coords[t..].to_vec(),
        })
    }

    pub fn element_from_big(&self, coords: &[BigInt]) -> Result<GroupElement> {
        let t = self.torsion.len();
        let mut small = Vec::with_capacity(coords.len());
        for (i, c) in coords.iter().enumerate() {
            let v = if i < t { c.mod_floor(&BigInt::from(self.torsion[i])) } else { c.clone() };
            small.push(v.to_i64().ok_or_else(|| Error::ComponentOutOfRange(format!("coordinate {c}")))?);
        }
        self.element(&small)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.torsion.len() == self.torsion.len()
            && g.free.len() == self.free_rank
            && g.torsion.iter().zip(&self.torsion).all(|(&c, &e)| c >= 0 && (c as u64) < e)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("element {g} does not belong to {self}")))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), &e)| (x + y).rem_euclid(e as i64))
                .collect(),
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(a, -1)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement {
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(x, &e)| ((*x as i128 * k as i128).rem_euclid(e as i128)) as i64)
                .collect(),
            free: a.free.iter().map(|x| x * k).collect(),
        }
    }

    pub fn element_order(&self, g: &GroupElement) -> Result<ExtendedOrder> {
        self.check(g)?;
        if g.free.iter().any(|&c| c != 0) {
            return Ok(ExtendedOrder::Infinite);
        }
        let n = g.torsion.iter().zip(&self.torsion).fold(1u64, |acc, (&c, &e)| acc.lcm(&(e / (c as u64).gcd(&e))));
        Ok(ExtendedOrder::Finite(n))
    }

    /// Position of `g` in [`Self::elements`] (finite groups).
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.torsion.iter().zip(&self.torsion).fold(0usize, |acc, (&c, &e)| acc * e as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut torsion = vec![0i64; self.torsion.len()];
        for (slot, &e) in torsion.iter_mut().zip(&self.torsion).rev() {
            *slot = (index % e as usize) as i64;
            index /= e as usize;
        }
        GroupElement { torsion, free: vec![0; self.free_rank] }
    }

    /// All elements of a finite group, last coordinate varying fastest.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let n = self.order().ok_or(Error::InfiniteGroup)?;
        Ok((0..n as usize).map(|i| self.element_at(i)).collect())
    }

    /// Integer matrix with one column per element (coordinates) followed by
    /// one column `e_i·u_i` per torsion coordinate.
    pub(crate) fn span_matrix(&self, elements: &[GroupElement]) -> IntMatrix {
        let n = self.rank();
        let t = self.torsion.len();
        let m = elements.len();
        let mut a = IntMatrix::zeros(n, m + t);
        for (j, g) in elements.iter().enumerate() {
            for (i, c) in g.coords().into_iter().enumerate() {
                a[(i, j)] = BigInt::from(c);
            }
        }
        for (i, &e) in self.torsion.iter().enumerate() {
            a[(i, m + i)] = BigInt::from(e);
        }
        a
    }

    /// Generators of `{c ∈ Z^m : Σ c_k·g_k = 0}`.
    pub fn relation_lattice(&self, elements: &[GroupElement]) -> Vec<Vec<BigInt>> {
        let m = elements.len();
        IntegerSolver::new(&self.span_matrix(elements))
            .kernel_basis()
            .into_iter()
            .map(|mut v| {
                v.truncate(m);
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Coefficients `c` with `Σ c_k·g_k = target`, if `target` is in the span.
    pub fn span_coefficients(&self, elements: &[GroupElement], target: &GroupElement) -> Option<Vec<BigInt>> {
        let m = elements.len();
        IntegerSolver::new(&self.span_matrix(elements)).solve(&target.big_coords()).map(|mut v| {
            v.truncate(m);
            v
        })
    }

    /// Abstract isomorphism type of the subgroup generated by `elements`.
    pub fn subgroup_structure(&self, elements: &[GroupElement]) -> FinGenAbelianGroup {
        let rel = self.relation_lattice(elements);
        let ambient = FinGenAbelianGroup::free(elements.len());
        let rel: Vec<GroupElement> = rel
            .iter()
            .map(|v| ambient.element_from_big(v).expect("relation fits in i64"))
            .collect();
        ambient.quotient_group(&rel).group
    }

    pub fn quotient_group(&self, relations: &[GroupElement]) -> Quotient {
        let n = self.rank();
        let t = self.torsion.len();
        let rows = t + relations.len();
        let mut r = IntMatrix::zeros(rows, n);
        for (i, &e) in self.torsion.iter().enumerate() {
            r[(i, i)] = BigInt::from(e);
        }
        for (k, g) in relations.iter().enumerate() {
            for (i, c) in g.coords().into_iter().enumerate() {
                r[(t + k, i)] = BigInt::from(c);
            }
        }
        let snf = smith_normal_form(&r);
        let diag = |j: usize| if j < rows.min(n) { snf.s[(j, j)].clone() } else { BigInt::zero() };
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        let mut kept = Vec::new();
        for j in 0..n {
            let s = diag(j);
            if s == BigInt::from(1) {
                continue;
            }
            if s.is_zero() {
                free_rank += 1;
            } else {
                torsion.push(s.to_u64().expect("invariant factor fits in u64"));
            }
            kept.push(j);
        }
        let k = kept.len();
        let mut project = IntMatrix::zeros(k, n);
        let mut lift = IntMatrix::zeros(n, k);
        for (row, &j) in kept.iter().enumerate() {
            for i in 0..n {
                project[(row, i)] = snf.v[(i, j)].clone();
                lift[(i, row)] = snf.v_inv[(j, i)].clone();
            }
        }
        Quotient {
            source: self.clone(),
            group: FinGenAbelianGroup { torsion, free_rank },
            project,
            lift,
        }
    }

    /// Every character of a finite group, in the order of [`Self::elements`]
    /// applied to the dual exponents: `χ_k(g) = Π ζ_{e_i}^{k_i g_i}`.
    pub fn enumerate_characters(&self) -> Result<Vec<Character>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let roots: Vec<Cyclotomic> = self.torsion.iter().map(|&e| Cyclotomic::primitive_root(e)).collect();
        Ok(self
            .elements()?
            .into_iter()
            .map(|k| Character {
                images: k
                    .torsion
                    .iter()
                    .zip(&roots)
                    .map(|(&ki, r)| r.pow(ki).expect("roots of unity are invertible"))
                    .collect(),
            })
            .collect())
    }
}

impl fmt::Display for FinGenAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|e| format!("Z/{e}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A quotient `G/⟨relations⟩` in invariant factor form, with the projection
/// `G → quotient` and a lift of the quotient's standard generators.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub source: FinGenAbelianGroup,
    pub group: FinGenAbelianGroup,
    /// `k × n` matrix on source coordinates.
    pub project: IntMatrix,
    /// `n × k` matrix; column `j` lifts quotient generator `j`.
    pub lift: IntMatrix,
}

impl Quotient {
    pub fn project(&self, g: &GroupElement) -> GroupElement {
        let y = self.project.mul_vec(&g.big_coords());
        self.group.element_from_big(&y).expect("projection fits in i64")
    }

    pub fn lift(&self, q: &GroupElement) -> GroupElement {
        let x = self.lift.mul_vec(&q.big_coords());
        self.source.element_from_big(&x).expect("lift fits in i64")
    }

    /// Lift of the `j`-th standard generator of the quotient.
    pub fn lift_generator(&self, j: usize) -> GroupElement {
        self.lift(&self.group.generator(j))
    }
}

/// Homomorphism to the nonzero scalars, given by its values on standard
/// generators (torsion first, then free).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub images: Vec<Cyclotomic>,
}

impl Character {
    pub fn trivial(rank: usize) -> Self {
        Character { images: vec![Cyclotomic::one(); rank] }
    }

    pub fn evaluate(&self, g: &GroupElement) -> Cyclotomic {
        self.images
            .iter()
            .zip(g.torsion.iter().chain(&g.free))
            .fold(Cyclotomic::one(), |acc, (v, &k)| &acc * &v.pow(k).expect("character values are nonzero"))
    }

    pub fn multiply(&self, other: &Character) -> Character {
        Character { images: self.images.iter().zip(&other.images).map(|(a, b)| a * b).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(Cyclotomic::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(free: usize, f: &[u64]) -> FinGenAbelianGroup {
        FinGenAbelianGroup::new(free, f.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_invariant_factors() {
        assert!(FinGenAbelianGroup::new(0, vec![3, 2]).is_err());
        assert!(FinGenAbelianGroup::new(0, vec![1, 2]).is_err());
        assert!(FinGenAbelianGroup::new(1, vec![2, 4]).is_ok());
    }

    #[test]
    fn element_orders() {
        let z33 = g(0, &[3, 3]);
        assert_eq!(z33.element_order(&z33.identity()).unwrap(), ExtendedOrder::Finite(1));
        assert_eq!(z33.element_order(&z33.element(&[1, 0]).unwrap()).unwrap(), ExtendedOrder::Finite(3));
        let z46 = FinGenAbelianGroup::cyclic_product(vec![4, 6], 0).unwrap();
        let e = z46.element(&[2, 3]).unwrap();
        assert_eq!(z46.element_order(&e).unwrap(), ExtendedOrder::Finite(2));
        // oracle: iterate addition
        let mut acc = e.clone();
        let mut n = 1;
        while !acc.is_zero() {
            acc = z46.add(&acc, &e);
            n += 1;
        }
        assert_eq!(n, 2);
        let zz = g(1, &[2]);
        assert_eq!(zz.element_order(&zz.element(&[1, 1]).unwrap()).unwrap(), ExtendedOrder::Infinite);
        assert!(z33.element_order(&zz.identity()).is_err());
    }

    #[test]
    fn quotient_of_integers_by_two() {
        let z = FinGenAbelianGroup::free(1);
        let q = z.quotient_group(&[z.element(&[2]).unwrap()]);
        assert_eq!(q.group, g(0, &[2]));
        assert_eq!(q.project(&z.element(&[5]).unwrap()), q.group.element(&[1]).unwrap());
    }

    #[test]
    fn quotient_of_example_group() {
        let big = g(2, &[3, 3]);
        let rel = vec![big.element(&[0, 0, 1, 0]).unwrap(), big.element(&[0, 0, 0, 3]).unwrap()];
        let q = big.quotient_group(&rel);
        assert_eq!(q.group, g(0, &[3, 3, 3]));
        for k in q.group.elements().unwrap() {
            assert_eq!(q.project(&q.lift(&k)), k);
        }
        for r in &rel {
            assert!(q.project(r).is_zero());
        }
    }

    #[test]
    fn quotient_by_nothing() {
        let big = g(1, &[2, 4]);
        let q = big.quotient_group(&[]);
        assert_eq!(q.group, big);
        let again = q.group.quotient_group(&[]);
        assert_eq!(again.group, big);
    }

    #[test]
    fn characters_of_small_groups() {
        let t = FinGenAbelianGroup::trivial();
        let c = t.enumerate_characters().unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_trivial());

        let z333 = g(0, &[3, 3, 3]);
        let c = z333.enumerate_characters().unwrap();
        assert_eq!(c.len(), 27);
        for ch in &c {
            for v in &ch.images {
                assert!(v.pow(3).unwrap().is_one());
            }
        }

        // brute-force oracle: ±1 assignments on Z/2 × Z/2 generators, all multiplicative
        let z22 = g(0, &[2, 2]);
        let c = z22.enumerate_characters().unwrap();
        let mut oracle = Vec::new();
        for a in [1i64, -1] {
            for b in [1i64, -1] {
                oracle.push(vec![Cyclotomic::from_integer(a), Cyclotomic::from_integer(b)]);
            }
        }
        let mut got: Vec<Vec<String>> =
            c.iter().map(|ch| ch.images.iter().map(|v| v.to_short_string()).collect()).collect();
        let mut want: Vec<Vec<String>> =
            oracle.iter().map(|imgs| imgs.iter().map(|v| v.to_short_string()).collect()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(FinGenAbelianGroup::free(1).enumerate_characters().is_err());
    }

    #[test]
    fn subgroup_structures() {
        let z4 = g(0, &[4]);
        assert_eq!(z4.subgroup_structure(&[z4.element(&[2]).unwrap()]), g(0, &[2]));
        let z33 = g(0, &[3, 3]);
        let s = z33.subgroup_structure(&[z33.element(&[1, 0]).unwrap(), z33.element(&[0, 2]).unwrap()]);
        assert_eq!(s, z33);
        assert_eq!(z33.subgroup_structure(&[]), FinGenAbelianGroup::trivial());
    }

    fn arb_group() -> impl Strategy<Value = FinGenAbelianGroup> {
        prop::sample::select(vec![vec![2u64], vec![2, 2], vec![2, 4], vec![3, 3], vec![6], vec![2, 6], vec![3, 3, 3]])
            .prop_map(|f| g(0, &f))
    }

    proptest! {
        #[test]
        fn characters_count_and_separate(grp in arb_group()) {
            let chars = grp.enumerate_characters().unwrap();
            prop_assert_eq!(chars.len() as u64, grp.order().unwrap());
            let set: std::collections::HashSet<_> = chars.iter().cloned().collect();
            prop_assert_eq!(set.len(), chars.len());
            for x in grp.elements().unwrap() {
                if !x.is_zero() {
                    prop_assert!(chars.iter().any(|c| !c.evaluate(&x).is_one()));
                }
            }
            // closed under pointwise products
            for a in chars.iter().take(4) {
                for b in chars.iter().take(4) {
                    prop_assert!(set.contains(&a.multiply(b)));
                }
            }
        }

        #[test]
        fn quotient_lift_project(grp in arb_group(), k in 0usize..10) {
            let elems = grp.elements().unwrap();
            let rel = vec![elems[k % elems.len()].clone()];
            let q = grp.quotient_group(&rel);
            prop_assert_eq!(q.group.order().unwrap() * grp.subgroup_structure(&rel).order().unwrap(), grp.order().unwrap());
            for e in q.group.elements().unwrap() {
                prop_assert_eq!(q.project(&q.lift(&e)), e);
            }
        }
    }
}
