//! Points of `MaxSpec C`, the fiber algebras `H/mH` as twisted group
//! algebras of `Q₀`, their structure from the skew normal form of the
//! commutator pairing, explicit irreducible representations and the
//! brute-force oracles used to cross-check them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::abelian::{FinGenAbelianGroup, GroupElement};
use crate::cocycle::BaseGroup;
use crate::cycmatrix::CycMatrix;
use crate::error::{Error, Result};
use crate::extension::{AlgebraElement, CentralSubgroupData, ExtElem};
use crate::intlinalg::{alternating_normal_form, IntMatrix};
use crate::scalars::Cyclotomic;
use crate::ExtendedOrder;

/// A character of `Z`, given by its values on the generators of `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecPoint {
    values: Vec<Cyclotomic>,
}

impl SpecPoint {
    /// Checks the values against the relation lattice of the generators.
    pub fn new(z: &CentralSubgroupData, values: Vec<Cyclotomic>) -> Result<Self> {
        let r = z.generators().len();
        if values.len() != r {
            return Err(Error::PointShapeMismatch(format!("expected {r} values, got {}", values.len())));
        }
        if values.iter().any(Cyclotomic::is_zero) {
            return Err(Error::PointShapeMismatch("point values must be nonzero".into()));
        }
        let p = SpecPoint { values };
        for rel in z.relations() {
            if !p.monomial_value(rel).is_one() {
                return Err(Error::PointShapeMismatch(format!("values violate the relation {rel:?} among generators")));
            }
        }
        Ok(p)
    }

    /// The counit point: every generator goes to 1.
    pub fn counit(z: &CentralSubgroupData) -> Self {
        SpecPoint { values: vec![Cyclotomic::one(); z.generators().len()] }
    }

    /// Parses a comma separated list of scalars.
    pub fn parse_key(z: &CentralSubgroupData, key: &str) -> Result<Self> {
        let values = key.split(',').map(|s| s.trim().parse::<Cyclotomic>()).collect::<Result<Vec<_>>>()?;
        Self::new(z, values)
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn key(&self) -> String {
        self.values.iter().map(Cyclotomic::to_short_string).collect::<Vec<_>>().join(",")
    }

    fn monomial_value(&self, c: &[i64]) -> Cyclotomic {
        c.iter().zip(&self.values).fold(Cyclotomic::one(), |acc, (&k, v)| {
            if k == 0 {
                acc
            } else {
                &acc * &v.pow(k).expect("point values are nonzero")
            }
        })
    }

    /// Value of the character at an element of `Z`.
    pub fn value_at(&self, x: &ExtElem, z: &CentralSubgroupData) -> Result<Cyclotomic> {
        Ok(self.monomial_value(&z.z_coordinates(x)?))
    }

    /// Specialisation `C → C/m`.
    pub fn evaluate(&self, c: &AlgebraElement, z: &CentralSubgroupData) -> Result<Cyclotomic> {
        let mut acc = Cyclotomic::zero();
        for (x, coef) in c.terms() {
            acc = &acc + &(coef * &self.value_at(x, z)?);
        }
        Ok(acc)
    }

    /// Exponents `k_j` with the point equal to `ζ_{t_j}^{k_j}` on the torsion
    /// generators of `Z` (in the abstract structure of `Z`).
    pub fn torsion_class(&self, z: &CentralSubgroupData) -> Vec<u64> {
        let s = z.structure();
        s.group
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(j, &t)| {
                let lift = s.lift_generator(j).coords();
                let v = self.monomial_value(&lift);
                v.discrete_log(&Cyclotomic::primitive_root(t), t).expect("torsion values are roots of unity")
            })
            .collect()
    }

    /// Pointwise product of characters.
    pub fn multiply(&self, other: &SpecPoint) -> SpecPoint {
        SpecPoint { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn inverse(&self) -> SpecPoint {
        SpecPoint { values: self.values.iter().map(|v| v.inv().expect("nonzero")).collect() }
    }
}

pub fn evaluate_point(c: &AlgebraElement, p: &SpecPoint, z: &CentralSubgroupData) -> Result<Cyclotomic> {
    p.evaluate(c, z)
}

/// The point whose character on the abstract group `Z` sends torsion
/// generator `j` to `ζ_{t_j}^{k_j}` and free generator `j` to `free[j]`.
pub fn point_from_structure(z: &CentralSubgroupData, torsion: &[u64], free: &[Cyclotomic]) -> Result<SpecPoint> {
    let s = z.structure();
    let t = s.group.invariant_factors();
    if torsion.len() != t.len() || free.len() != s.group.free_rank() {
        return Err(Error::PointShapeMismatch("character does not match the structure of Z".into()));
    }
    let images: Vec<Cyclotomic> = t
        .iter()
        .zip(torsion)
        .map(|(&o, &k)| Cyclotomic::root_of_unity(o, k as i64))
        .chain(free.iter().cloned())
        .collect();
    let r = z.generators().len();
    let mut values = Vec::with_capacity(r);
    for i in 0..r {
        let mut acc = Cyclotomic::one();
        for (j, img) in images.iter().enumerate() {
            let e = s.project[(j, i)].to_i64().ok_or_else(|| Error::Internal("projection overflow".into()))?;
            if e != 0 {
                acc = &acc * &img.pow(e)?;
            }
        }
        values.push(acc);
    }
    SpecPoint::new(z, values)
}

/// `{1, -1, 2, 1/2, ζ_m}` with `m` the exponent of the torsion of `Z`
/// (at least 3).
pub fn default_free_samples(z: &CentralSubgroupData) -> Vec<Cyclotomic> {
    let m = z.structure().group.exponent().max(3);
    vec![
        Cyclotomic::one(),
        Cyclotomic::from_integer(-1),
        Cyclotomic::from_integer(2),
        Cyclotomic::from_fraction(1, 2),
        Cyclotomic::primitive_root(m),
    ]
}

/// Up to `count` points, cycling through the torsion classes of `Z` while
/// advancing through tuples of free values.
pub fn sample_points(z: &CentralSubgroupData, count: usize, free_values: &[Cyclotomic]) -> Result<Vec<SpecPoint>> {
    let s = &z.structure().group;
    let torsion_group = FinGenAbelianGroup::cyclic_product(s.invariant_factors().to_vec(), 0)?;
    let classes = torsion_group.elements()?;
    let f = s.free_rank();
    let per_free = free_values.len().max(1);
    let tuples = per_free.checked_pow(f as u32).unwrap_or(usize::MAX);
    let total = classes.len().saturating_mul(tuples);
    let mut out = Vec::new();
    for idx in 0..count.min(total) {
        let class = &classes[idx % classes.len()];
        let mut t = idx / classes.len();
        let mut free = Vec::with_capacity(f);
        for _ in 0..f {
            free.push(free_values[t % per_free].clone());
            t /= per_free;
        }
        let torsion: Vec<u64> = class.torsion.iter().map(|&k| k as u64).collect();
        out.push(point_from_structure(z, &torsion, &free)?);
    }
    Ok(out)
}

/// `k_γ Q₀`: basis `T_a`, `T_a T_b = γ(a, b) T_{ab}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedGroupAlgebra {
    q0: BaseGroup,
    mult: Vec<Vec<usize>>,
    gamma: Vec<Vec<Cyclotomic>>,
    identity: usize,
}

impl TwistedGroupAlgebra {
    /// Validates the multiplicative cocycle identity on every triple.
    pub fn new(q0: BaseGroup, mult: Vec<Vec<usize>>, gamma: Vec<Vec<Cyclotomic>>, identity: usize) -> Result<Self> {
        let a = TwistedGroupAlgebra { q0, mult, gamma, identity };
        if !a.is_associative() {
            return Err(Error::InvalidCocycle("scalar cocycle fails associativity".into()));
        }
        Ok(a)
    }

    pub fn dimension(&self) -> usize {
        self.mult.len()
    }

    pub fn q0(&self) -> &BaseGroup {
        &self.q0
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn gamma(&self, a: usize, b: usize) -> &Cyclotomic {
        &self.gamma[a][b]
    }

    /// `T_a T_b T_a⁻¹ T_b⁻¹ = γ(a, b) / γ(b, a)` for commuting `a, b`.
    pub fn commutator_scalar(&self, a: usize, b: usize) -> Cyclotomic {
        (&self.gamma[a][b] / &self.gamma[b][a]).expect("cocycle values are nonzero")
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mult[a][b];
                (0..n).all(|c| {
                    let bc = self.mult[b][c];
                    &self.gamma[a][b] * &self.gamma[ab][c] == &self.gamma[b][c] * &self.gamma[a][bc]
                })
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|a| (0..a).all(|b| self.mult[a][b] == self.mult[b][a] && self.gamma[a][b] == self.gamma[b][a]))
    }

    /// Product of coefficient vectors.
    pub fn multiply(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let n = self.dimension();
        let mut out = vec![Cyclotomic::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = self.mult[a][b];
                out[c] = &out[c] + &(&(xa * yb) * &self.gamma[a][b]);
            }
        }
        out
    }

    /// `(c, s)` with `T_a T_b = s T_c`.
    fn basis_product(&self, (a, s): (usize, Cyclotomic), b: usize) -> (usize, Cyclotomic) {
        (self.mult[a][b], &s * &self.gamma[a][b])
    }
}

/// `H/mH`, with basis the images of the transversal.
pub fn fiber_algebra(z: &CentralSubgroupData, p: &SpecPoint) -> Result<TwistedGroupAlgebra> {
    let g = z.group();
    let t = z.transversal();
    let d = t.len();
    let mut mult = vec![vec![0; d]; d];
    let mut gamma = vec![vec![Cyclotomic::one(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let (k, central) = z.decompose(&g.mul(&t[i], &t[j]));
            mult[i][j] = k;
            gamma[i][j] = p.value_at(&central, z)?;
        }
    }
    let identity = z.coset(&g.base().identity());
    TwistedGroupAlgebra::new(z.q0().clone(), mult, gamma, identity)
}

/// Wedderburn data of a fiber over an abelian quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberStructure {
    /// Order `d` of the root `ξ` generating the specialised commutators.
    pub root_order: u64,
    /// `ξ^{M_ij} = ā_ij` on the generators of `Q₀`.
    pub exponent_matrix: IntMatrix,
    /// `Uᵀ M U` is in skew normal form.
    pub change_of_basis: IntMatrix,
    /// Blocks of the integer skew normal form.
    pub integer_blocks: Vec<BigInt>,
    /// Blocks over `Z/d`, normalised to `gcd(k_i, d)`; blocks divisible by `d` dropped.
    pub blocks: Vec<u64>,
    /// `l_i = d / gcd(d, k_i)` for the retained blocks.
    pub block_orders: Vec<u64>,
    pub irrep_dim: u64,
    pub block_count: u64,
    /// `|Q₀|`, the sum of squared dimensions of the irreducibles.
    pub sd: u64,
    /// `(l_1, l_1, …, l_s, l_s)`.
    pub stabilizer_invariants: Vec<u64>,
    /// Indices in `Q₀` of the radical of the commutator pairing.
    pub radical: Vec<usize>,
}

impl FiberStructure {
    pub fn is_basic(&self) -> bool {
        self.irrep_dim == 1
    }

    pub fn is_simple(&self) -> bool {
        self.block_count == 1
    }
}

fn abelian_q0(alg: &TwistedGroupAlgebra) -> Result<&FinGenAbelianGroup> {
    alg.q0().as_abelian().ok_or(Error::NonAbelianBase)
}

pub fn fiber_structure(z: &CentralSubgroupData, p: &SpecPoint) -> Result<FiberStructure> {
    fiber_structure_of(&fiber_algebra(z, p)?)
}

pub fn fiber_structure_of(alg: &TwistedGroupAlgebra) -> Result<FiberStructure> {
    let q0 = abelian_q0(alg)?;
    let k = q0.rank();
    let gens: Vec<usize> = (0..k).map(|i| q0.index_of(&q0.generator(i))).collect();
    let a: Vec<Vec<Cyclotomic>> = gens.iter().map(|&x| gens.iter().map(|&y| alg.commutator_scalar(x, y)).collect()).collect();
    let mut d = 1u64;
    for v in a.iter().flatten() {
        match v.multiplicative_order()? {
            ExtendedOrder::Finite(o) => d = d.lcm(&o),
            ExtendedOrder::Infinite => return Err(Error::Internal("commutator scalar is not a root of unity".into())),
        }
    }
    let xi = Cyclotomic::primitive_root(d);
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let e = a[i][j].discrete_log(&xi, d).ok_or_else(|| Error::Internal("missing discrete log".into()))?;
            m[(i, j)] = BigInt::from(e);
            m[(j, i)] = -BigInt::from(e);
        }
    }
    let dec = alternating_normal_form(&m)?;
    let dd = BigInt::from(d);
    let mut blocks = Vec::new();
    let mut block_orders = Vec::new();
    for kb in &dec.block_values {
        let g = kb.gcd(&dd);
        if g != dd {
            let g = g.to_u64().expect("divides d");
            blocks.push(g);
            block_orders.push(d / g);
        }
    }
    let n: u64 = block_orders.iter().product();
    let order = alg.dimension() as u64;
    let radical: Vec<usize> =
        (0..alg.dimension()).filter(|&x| gens.iter().all(|&y| alg.commutator_scalar(x, y).is_one())).collect();
    if order % (n * n) != 0 || order / radical.len() as u64 != n * n {
        return Err(Error::Internal("normal form disagrees with the radical of the pairing".into()));
    }
    Ok(FiberStructure {
        root_order: d,
        exponent_matrix: m,
        change_of_basis: dec.u.clone(),
        integer_blocks: dec.block_values.clone(),
        blocks,
        stabilizer_invariants: block_orders.iter().flat_map(|&l| [l, l]).collect(),
        block_orders,
        irrep_dim: n,
        block_count: order / (n * n),
        sd: order,
        radical,
    })
}

/// Characters of `Q₀` (indices into `enumerate_characters`) trivial on the
/// radical: the stabilizer predicted by the structure.
pub fn predicted_stabilizer(alg: &TwistedGroupAlgebra, fs: &FiberStructure) -> Result<Vec<usize>> {
    let q0 = abelian_q0(alg)?;
    let elems = q0.elements()?;
    let chars = q0.enumerate_characters()?;
    Ok((0..chars.len()).filter(|&c| fs.radical.iter().all(|&r| chars[c].evaluate(&elems[r]).is_one())).collect())
}

pub fn fibers_isomorphic(a: &FiberStructure, b: &FiberStructure) -> bool {
    a.sd == b.sd && a.irrep_dim == b.irrep_dim
}

/// Invariant factors of `Π Z/o_i`.
pub fn invariant_form(orders: &[u64]) -> Vec<u64> {
    let o: Vec<u64> = orders.iter().copied().filter(|&x| x > 1).collect();
    FinGenAbelianGroup::cyclic_product(o, 0)
        .expect("orders above 1")
        .quotient_group(&[])
        .group
        .invariant_factors()
        .to_vec()
}

/// An irreducible representation of a fiber.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub dim: usize,
    /// `ρ(T_a)` for every basis element of the fiber.
    pub basis_matrices: Vec<CycMatrix>,
    /// Images of the standard generators of `N`, then of `Q`.
    pub generator_matrices: Vec<CycMatrix>,
    /// Dimension of the matrix algebra generated by the images.
    pub algebra_dimension: usize,
}

/// Irreducible of `k_γ Q₀` induced from a character of the Lagrangian
/// subgroup read off the skew normal form.
pub fn irrep_of_algebra(alg: &TwistedGroupAlgebra, fs: &FiberStructure) -> Result<(usize, Vec<CycMatrix>)> {
    let q0 = abelian_q0(alg)?;
    let k = q0.rank();
    let u = &fs.change_of_basis;
    let col = |j: usize| -> Result<GroupElement> {
        let c: Vec<i64> = (0..k)
            .map(|i| u[(i, j)].to_i64().ok_or_else(|| Error::Internal("basis change overflow".into())))
            .collect::<Result<_>>()?;
        q0.element(&c)
    };
    let d = BigInt::from(fs.root_order);
    let s = fs.integer_blocks.len();
    let mut lag_gens = Vec::new();
    let mut shifts = Vec::new();
    for (i, kb) in fs.integer_blocks.iter().enumerate() {
        let l = (&d / kb.gcd(&d)).to_i64().expect("small");
        lag_gens.push(col(2 * i)?);
        let y = col(2 * i + 1)?;
        lag_gens.push(q0.scale(&y, l));
        shifts.push((y, l));
    }
    for j in 2 * s..k {
        lag_gens.push(col(j)?);
    }

    // the Lagrangian subgroup as an abstract group with generators h_j
    let lag_free = FinGenAbelianGroup::free(lag_gens.len());
    let rel: Vec<GroupElement> =
        q0.relation_lattice(&lag_gens).iter().map(|v| lag_free.element_from_big(v)).collect::<Result<_>>()?;
    let lag = lag_free.quotient_group(&rel);
    let hs: Vec<GroupElement> = (0..lag.group.rank())
        .map(|j| {
            let c = lag.lift_generator(j).coords();
            c.iter().zip(&lag_gens).fold(q0.identity(), |acc, (&e, x)| q0.add(&acc, &q0.scale(x, e)))
        })
        .collect();
    let h_idx: Vec<usize> = hs.iter().map(|h| q0.index_of(h)).collect();
    let orders = lag.group.invariant_factors().to_vec();
    let one = (alg.identity(), Cyclotomic::one());
    let mut mu = Vec::new();
    for (&h, &o) in h_idx.iter().zip(&orders) {
        let (e, c) = (0..o).fold(one.clone(), |acc, _| alg.basis_product(acc, h));
        debug_assert_eq!(e, alg.identity());
        mu.push(c.nth_root(o)?);
    }
    let mut lambda: HashMap<usize, Cyclotomic> = HashMap::new();
    for e in lag.group.elements()? {
        let mut acc = one.clone();
        let mut val = Cyclotomic::one();
        for ((&h, &ej), m) in h_idx.iter().zip(&e.torsion).zip(&mu) {
            for _ in 0..ej {
                acc = alg.basis_product(acc, h);
                val = &val * m;
            }
        }
        let (l, kappa) = acc;
        lambda.insert(l, (&val / &kappa)?);
    }

    // coset representatives Σ e_i y_i with 0 ≤ e_i < l_i
    let mut reps = vec![q0.identity()];
    for (y, l) in &shifts {
        let mut next = Vec::new();
        for r in &reps {
            for e in 0..*l {
                next.push(q0.add(r, &q0.scale(y, e)));
            }
        }
        reps = next;
    }
    let rep_idx: Vec<usize> = reps.iter().map(|r| q0.index_of(r)).collect();
    let n = rep_idx.len();
    if n as u64 != fs.irrep_dim || lambda.len() * n != alg.dimension() {
        return Err(Error::Internal("Lagrangian subgroup has the wrong index".into()));
    }
    let elems = q0.elements()?;
    let mut split: Vec<Option<(usize, usize)>> = vec![None; alg.dimension()];
    for (ri, r) in reps.iter().enumerate() {
        for &l in lambda.keys() {
            let x = q0.index_of(&q0.add(r, &elems[l]));
            if split[x].replace((ri, l)).is_some() {
                return Err(Error::Internal("coset representatives overlap".into()));
            }
        }
    }

    let mut mats = Vec::with_capacity(alg.dimension());
    for a in 0..alg.dimension() {
        let mut m = CycMatrix::zeros(n, n);
        for (c, &rc) in rep_idx.iter().enumerate() {
            let x = alg.product(a, rc);
            let (c2, l) = split[x].expect("every element splits");
            let v = (&(alg.gamma(a, rc) * &lambda[&l]) / alg.gamma(rep_idx[c2], l))?;
            m[(c2, c)] = v;
        }
        mats.push(m);
    }

    // defining relations on generators times every basis element
    if mats[alg.identity()] != CycMatrix::identity(n) {
        return Err(Error::Internal("identity does not act trivially".into()));
    }
    for i in 0..k {
        let x = q0.index_of(&q0.generator(i));
        for b in 0..alg.dimension() {
            if mats[x].mul(&mats[b]) != mats[alg.product(x, b)].scale(alg.gamma(x, b)) {
                return Err(Error::Internal("induced matrices violate the fiber relations".into()));
            }
        }
    }
    Ok((n, mats))
}

/// Explicit irreducible of `H` over the point `p`, with every relation and
/// irreducibility verified.
pub fn irrep_construct(z: &CentralSubgroupData, p: &SpecPoint) -> Result<Irrep> {
    let alg = fiber_algebra(z, p)?;
    let fs = fiber_structure_of(&alg)?;
    let (n, basis_matrices) = irrep_of_algebra(&alg, &fs)?;
    let g = z.group();
    let mut generator_matrices = Vec::new();
    for x in g.n_generators().iter().chain(&g.q_generators()) {
        let (k, central) = z.decompose(x);
        generator_matrices.push(basis_matrices[k].scale(&p.value_at(&central, z)?));
    }
    let algebra_dimension = generated_algebra_dimension(&generator_matrices);
    if algebra_dimension != n * n {
        return Err(Error::Internal(format!("image algebra has dimension {algebra_dimension}, expected {}", n * n)));
    }
    let check = verify_group_representation(z, p, &generator_matrices)?;
    if !check.holds {
        return Err(Error::Internal(format!("relations fail: {}", check.failures.join("; "))));
    }
    Ok(Irrep { dim: n, basis_matrices, generator_matrices, algebra_dimension })
}

/// Outcome of [`verify_group_representation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// Checks that matrices for the standard generators of `N` and `Q` define a
/// representation of `G_σ` on which `Z` acts through `p`: `N` acts by the
/// point's scalars, generators commute up to the specialised commutators,
/// torsion generators satisfy their power relations, and every generator of
/// `Z` acts by its value.
pub fn verify_group_representation(z: &CentralSubgroupData, p: &SpecPoint, mats: &[CycMatrix]) -> Result<RelationCheck> {
    let g = z.group();
    let q = g.base().as_abelian().ok_or(Error::NonAbelianBase)?;
    let ngens = g.n_generators();
    let qgens = g.q_generators();
    if mats.len() != ngens.len() + qgens.len() {
        return Err(Error::DimensionMismatch("one matrix per generator of N and Q expected".into()));
    }
    let dim = mats.first().map_or(0, CycMatrix::rows);
    let scalar = |c: &Cyclotomic| CycMatrix::scalar(dim, c);
    let (nm, qm) = mats.split_at(ngens.len());
    let mut failures = Vec::new();
    for (i, c) in ngens.iter().enumerate() {
        if nm[i] != scalar(&p.value_at(c, z)?) {
            failures.push(format!("N generator {i} does not act by its point value"));
        }
    }
    for i in 0..qgens.len() {
        for j in 0..qgens.len() {
            let c = p.value_at(&g.commutator(&qgens[i], &qgens[j]), z)?;
            if qm[i].mul(&qm[j]) != qm[j].mul(&qm[i]).scale(&c) {
                failures.push(format!("commutation of generators {i} and {j}"));
            }
        }
    }
    for (i, &e) in q.invariant_factors().iter().enumerate() {
        let v = p.value_at(&g.pow(&qgens[i], e as i64), z)?;
        if qm[i].pow(e) != scalar(&v) {
            failures.push(format!("power relation of generator {i}"));
        }
    }
    let inverses: Vec<Option<CycMatrix>> = qm.iter().map(CycMatrix::inverse).collect();
    for (zi, x) in z.generators().iter().enumerate() {
        let (n_part, exps) = g.word_form(x);
        let mut m = CycMatrix::identity(dim);
        for (k, c) in n_part.coords().into_iter().enumerate() {
            if c != 0 {
                let base = if c < 0 { nm[k].inverse() } else { Some(nm[k].clone()) };
                let Some(base) = base else {
                    failures.push(format!("N generator {k} is singular"));
                    continue;
                };
                m = m.mul(&base.pow(c.unsigned_abs()));
            }
        }
        for (k, &e) in exps.iter().enumerate() {
            if e != 0 {
                let base = if e < 0 { inverses[k].clone() } else { Some(qm[k].clone()) };
                let Some(base) = base else {
                    failures.push(format!("Q generator {k} is singular"));
                    continue;
                };
                m = m.mul(&base.pow(e.unsigned_abs()));
            }
        }
        if m != scalar(&p.values()[zi]) {
            failures.push(format!("central generator {zi} does not act by its point value"));
        }
    }
    Ok(RelationCheck { holds: failures.is_empty(), failures })
}

/// Dimension of the unital algebra generated by square matrices.
pub fn generated_algebra_dimension(gens: &[CycMatrix]) -> usize {
    let Some(first) = gens.first() else { return 0 };
    let n = first.rows();
    let mut echelon: Vec<(usize, Vec<Cyclotomic>)> = Vec::new();
    let mut basis: Vec<CycMatrix> = Vec::new();
    let reduce_insert = |m: &CycMatrix, echelon: &mut Vec<(usize, Vec<Cyclotomic>)>| -> bool {
        let mut v = m.entries().to_vec();
        for (piv, row) in echelon.iter() {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[piv].inv().expect("nonzero pivot");
        let v: Vec<Cyclotomic> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in echelon.iter_mut() {
            if !row[piv].is_zero() {
                let f = row[piv].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        echelon.push((piv, v));
        true
    };
    let id = CycMatrix::identity(n);
    reduce_insert(&id, &mut echelon);
    basis.push(id);
    let mut i = 0;
    while i < basis.len() {
        for x in gens {
            let cand = x.mul(&basis[i]);
            if reduce_insert(&cand, &mut echelon) {
                basis.push(cand);
            }
        }
        i += 1;
    }
    basis.len()
}

/// Stabilizer of an irreducible under tensoring with characters of `Q₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    /// Indices into `enumerate_characters` of `Q₀`.
    pub characters: Vec<usize>,
    pub invariants: Vec<u64>,
    pub order: usize,
    pub maximally_stable: bool,
}

/// `χ ⊗ V ≅ V` decided by comparing trace characters on every basis element.
pub fn stabilizer_bruteforce(alg: &TwistedGroupAlgebra, basis_matrices: &[CycMatrix]) -> Result<Stabilizer> {
    let q0 = abelian_q0(alg)?;
    let elems = q0.elements()?;
    let chars = q0.enumerate_characters()?;
    let traces: Vec<Cyclotomic> = basis_matrices.iter().map(CycMatrix::trace).collect();
    let dim = basis_matrices.first().map_or(0, CycMatrix::rows);
    let characters: Vec<usize> = (0..chars.len())
        .filter(|&c| elems.iter().zip(&traces).all(|(e, t)| &(&chars[c].evaluate(e) * t) == t))
        .collect();
    let members: Vec<GroupElement> = characters.iter().map(|&c| elems[c].clone()).collect();
    let invariants = q0.subgroup_structure(&members).invariant_factors().to_vec();
    Ok(Stabilizer {
        order: characters.len(),
        maximally_stable: characters.len() == dim * dim,
        characters,
        invariants,
    })
}

/// Dimension of the center, by solving `z T_g = T_g z` for every basis `g`.
pub fn center_dimension_oracle(alg: &TwistedGroupAlgebra) -> usize {
    let n = alg.dimension();
    let mut m = CycMatrix::zeros(n * n, n);
    for g in 0..n {
        for a in 0..n {
            // T_a T_g - T_g T_a, as a column indexed by (g, basis element)
            let ag = alg.product(a, g);
            let ga = alg.product(g, a);
            m[(g * n + ag, a)] = &m[(g * n + ag, a)] + alg.gamma(a, g);
            m[(g * n + ga, a)] = &m[(g * n + ga, a)] - alg.gamma(g, a);
        }
    }
    n - m.rank()
}

impl SpecPoint {
    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::TwoCocycle;
    use crate::extension::tests::{ab, heisenberg, worked_center};
    use crate::extension::{default_central_subgroup, CentralExtensionGroup};

    fn zeta3(k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(3, k)
    }

    fn worked_point(z: &CentralSubgroupData, u: i64, v: i64, w: Cyclotomic, x: Cyclotomic) -> SpecPoint {
        SpecPoint::new(z, vec![zeta3(u), zeta3(v), w, x]).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let z = worked_center();
        let g = z.group();
        let p = worked_point(&z, 1, 2, Cyclotomic::from_integer(2), Cyclotomic::from_integer(5));
        let five = AlgebraElement::scalar(g, Cyclotomic::from_integer(5));
        assert_eq!(p.evaluate(&five, &z).unwrap(), Cyclotomic::from_integer(5));
        let c1 = AlgebraElement::basis(z.generators()[0].clone());
        let c2 = AlgebraElement::basis(z.generators()[1].clone());
        assert!(p.evaluate(&c1.sub(&AlgebraElement::scalar(g, zeta3(1))), &z).unwrap().is_zero());
        assert!(p.evaluate(&c1.mul(&c2, g), &z).unwrap().is_one());
        let a1 = AlgebraElement::basis(g.q_generators()[0].clone());
        assert!(matches!(p.evaluate(&a1, &z), Err(Error::SupportOutsideCenter)));
        assert!(SpecPoint::new(&z, vec![Cyclotomic::from_integer(2); 4]).is_err());
        assert!(SpecPoint::new(&z, vec![Cyclotomic::one(); 3]).is_err());
        assert_eq!(SpecPoint::parse_key(&z, &p.key()).unwrap(), p);
        assert_eq!(p.torsion_class(&z).len(), 2);
    }

    #[test]
    fn worked_fiber_relations() {
        let z = worked_center();
        let p = worked_point(&z, 1, 2, Cyclotomic::one(), Cyclotomic::from_integer(2));
        let alg = fiber_algebra(&z, &p).unwrap();
        let q0 = alg.q0().as_abelian().unwrap();
        let x = q0.index_of(&q0.generator(0));
        let y = q0.index_of(&q0.generator(1));
        let zz = q0.index_of(&q0.generator(2));
        assert_eq!(alg.commutator_scalar(x, y), zeta3(1));
        assert_eq!(alg.commutator_scalar(x, zz), zeta3(2));
        assert!(alg.commutator_scalar(y, zz).is_one());
        // Z^3 = x
        let (e, c) = (0..3).fold((alg.identity(), Cyclotomic::one()), |acc, _| alg.basis_product(acc, zz));
        assert_eq!(e, alg.identity());
        assert_eq!(c, Cyclotomic::from_integer(2));
    }

    #[test]
    fn worked_cases() {
        let z = worked_center();
        let w = Cyclotomic::from_integer(2);
        let x = Cyclotomic::from_fraction(1, 2);
        let basic = fiber_structure(&z, &worked_point(&z, 0, 0, w.clone(), x.clone())).unwrap();
        assert_eq!((basic.irrep_dim, basic.block_count), (1, 27));
        assert!(basic.stabilizer_invariants.is_empty());
        for (u, v) in [(1, 0), (2, 0), (0, 1), (1, 1), (1, 2), (2, 1)] {
            let fs = fiber_structure(&z, &worked_point(&z, u, v, w.clone(), x.clone())).unwrap();
            assert_eq!(fs.root_order, 3);
            assert_eq!(fs.blocks, vec![1]);
            assert_eq!((fs.irrep_dim, fs.block_count, fs.sd), (3, 3, 27));
            assert_eq!(fs.stabilizer_invariants, vec![3, 3]);
            assert!(fibers_isomorphic(&fs, &fs));
            assert!(!fibers_isomorphic(&fs, &basic));
        }
    }

    #[test]
    fn heisenberg_fiber() {
        let z = default_central_subgroup(&heisenberg(), &[]).unwrap();
        let p = SpecPoint::new(&z, vec![Cyclotomic::from_integer(-1)]).unwrap();
        let alg = fiber_algebra(&z, &p).unwrap();
        let fs = fiber_structure_of(&alg).unwrap();
        assert_eq!((fs.irrep_dim, fs.block_count), (2, 1));
        assert!(fs.is_simple());
        assert_eq!(center_dimension_oracle(&alg), 1);
        let q0 = alg.q0().as_abelian().unwrap();
        let (x, y) = (q0.index_of(&q0.generator(0)), q0.index_of(&q0.generator(1)));
        assert_eq!(alg.commutator_scalar(x, y), Cyclotomic::from_integer(-1));
        let rep = irrep_construct(&z, &p).unwrap();
        assert_eq!(rep.dim, 2);
        assert_eq!(rep.algebra_dimension, 4);
        let st = stabilizer_bruteforce(&alg, &rep.basis_matrices).unwrap();
        assert_eq!(st.invariants, vec![2, 2]);
        assert!(st.maximally_stable);

        let q = SpecPoint::counit(&z);
        let alg = fiber_algebra(&z, &q).unwrap();
        assert!(alg.is_commutative());
        assert_eq!(center_dimension_oracle(&alg), 4);
    }

    #[test]
    fn untwisted_center() {
        let g = CentralExtensionGroup::new(TwoCocycle::zero(BaseGroup::Abelian(ab(0, &[3])), ab(0, &[3])).unwrap()).unwrap();
        let z = default_central_subgroup(&g, &[]).unwrap();
        let alg = fiber_algebra(&z, &SpecPoint::counit(&z)).unwrap();
        assert_eq!(center_dimension_oracle(&alg), 3);
    }

    #[test]
    fn case_five_irrep_and_stabilizer() {
        let z = worked_center();
        let p = worked_point(&z, 1, 2, zeta3(1), Cyclotomic::from_integer(8));
        let alg = fiber_algebra(&z, &p).unwrap();
        let rep = irrep_construct(&z, &p).unwrap();
        assert_eq!(rep.dim, 3);
        assert_eq!(rep.algebra_dimension, 9);
        let st = stabilizer_bruteforce(&alg, &rep.basis_matrices).unwrap();
        assert_eq!(st.invariants, vec![3, 3]);
        assert!(st.maximally_stable);
        let fs = fiber_structure_of(&alg).unwrap();
        assert_eq!(predicted_stabilizer(&alg, &fs).unwrap(), st.characters);
        assert_eq!(center_dimension_oracle(&alg), 3);
        // χ(a2) = χ(a4)^2 on the stabilizer
        let q0 = alg.q0().as_abelian().unwrap();
        let chars = q0.enumerate_characters().unwrap();
        for &c in &st.characters {
            let v = |i: usize| chars[c].evaluate(&q0.generator(i));
            assert_eq!(v(1), &v(2) * &v(2));
        }
        // a non-cube free value has no exact irreducible
        let p2 = worked_point(&z, 1, 2, zeta3(1), Cyclotomic::from_integer(2));
        assert!(matches!(irrep_construct(&z, &p2), Err(Error::RadicalUnavailable(_))));
        // structure data is still available there
        assert_eq!(fiber_structure(&z, &p2).unwrap().irrep_dim, 3);
    }

    #[test]
    fn quantum_torus_pair() {
        // Z/n x Z/n over Z/n with σ(a, b) = c
        for n in [2u64, 3, 4, 5] {
            let q = ab(0, &[n, n]);
            let nn = ab(0, &[n]);
            let mut b = vec![vec![nn.identity(); 2]; 2];
            b[0][1] = nn.element(&[1]).unwrap();
            let g = CentralExtensionGroup::new(TwoCocycle::from_bilinear(BaseGroup::Abelian(q), nn, b).unwrap()).unwrap();
            let z = default_central_subgroup(&g, &[]).unwrap();
            let p = SpecPoint::new(&z, vec![Cyclotomic::primitive_root(n)]).unwrap();
            let rep = irrep_construct(&z, &p).unwrap();
            assert_eq!(rep.dim as u64, n);
            let alg = fiber_algebra(&z, &p).unwrap();
            let st = stabilizer_bruteforce(&alg, &rep.basis_matrices).unwrap();
            assert_eq!(st.order as u64, n * n);
        }
    }

    #[test]
    fn structure_independent_of_transversal() {
        // σ and σ + ∂f give isomorphic groups; the sections of the second
        // pull back to the transversal (f(q), q) of the first
        let q = ab(0, &[6, 6]);
        let n = ab(0, &[12]);
        let mut b = vec![vec![n.identity(); 2]; 2];
        b[0][1] = n.element(&[2]).unwrap();
        let sigma = TwoCocycle::from_bilinear(BaseGroup::Abelian(q.clone()), n.clone(), b).unwrap();
        let f: Vec<GroupElement> = (0..36).map(|i| n.element(&[(i * i + 5 * i + 1) % 12]).unwrap()).collect();
        let tau = sigma.add_coboundary(&f).unwrap();
        let z1 = default_central_subgroup(&CentralExtensionGroup::new(sigma).unwrap(), &[]).unwrap();
        let z2 = default_central_subgroup(&CentralExtensionGroup::new(tau).unwrap(), &[]).unwrap();
        for k in 0..12 {
            let v = vec![Cyclotomic::root_of_unity(12, k)];
            let p1 = SpecPoint::new(&z1, v.clone()).unwrap();
            let p2 = SpecPoint::new(&z2, v).unwrap();
            let (a1, a2) = (fiber_algebra(&z1, &p1).unwrap(), fiber_algebra(&z2, &p2).unwrap());
            if k % 2 == 1 {
                assert_ne!(a1, a2);
            }
            let (f1, f2) = (fiber_structure_of(&a1).unwrap(), fiber_structure_of(&a2).unwrap());
            assert_eq!(
                (f1.root_order, &f1.blocks, f1.irrep_dim, f1.block_count, &f1.stabilizer_invariants),
                (f2.root_order, &f2.blocks, f2.irrep_dim, f2.block_count, &f2.stabilizer_invariants)
            );
            assert_eq!(center_dimension_oracle(&a1), center_dimension_oracle(&a2));
        }
    }

    #[test]
    fn sampling_covers_torsion_classes() {
        let z = worked_center();
        let pts = sample_points(&z, 50, &default_free_samples(&z)).unwrap();
        assert_eq!(pts.len(), 50);
        let mut classes: Vec<Vec<u64>> = pts.iter().map(|p| p.torsion_class(&z)).collect();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), 9);
        let mut keys: Vec<String> = pts.iter().map(SpecPoint::key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 50);
    }

    #[test]
    fn generated_algebra_of_lemma_pair() {
        let w = Cyclotomic::primitive_root(4);
        let mut x = CycMatrix::zeros(4, 4);
        let mut y = CycMatrix::zeros(4, 4);
        for i in 0..4 {
            x[(i, i)] = w.pow(i as i64).unwrap();
            y[((i + 1) % 4, i)] = Cyclotomic::one();
        }
        assert_eq!(generated_algebra_dimension(&[x.clone(), y]), 16);
        assert_eq!(generated_algebra_dimension(&[x]), 4);
    }
}
