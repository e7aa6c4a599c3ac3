//! The extension group `G_σ`, its group algebra `H = kG_σ` as a free module
//! over `C = kZ` for a central subgroup `Z` of finite index, the regular
//! trace, Cayley-Hamilton identities and trace Gram matrices.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::abelian::{FinGenAbelianGroup, GroupElement, Quotient};
use crate::cocycle::{commutator_pairing, validate_cocycle, BaseGroup, QElem, TableGroup, TwoCocycle};
use crate::cycmatrix::CycMatrix;
use crate::error::{Error, Result};
use crate::fiber::SpecPoint;
use crate::intlinalg::IntegerSolver;
use crate::scalars::Cyclotomic;
use crate::ExtendedOrder;

/// Element `(n, q)` of `G_σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem {
    pub n: GroupElement,
    pub q: QElem,
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.n, self.q)
    }
}

/// `G_σ = N × Q` with `(m₁, g₁)(m₂, g₂) = (m₁ + m₂ + σ(g₁, g₂), g₁g₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionGroup {
    sigma: TwoCocycle,
    /// `σ(1, 1)`; the identity is `(-σ(1, 1), 1)`.
    shift: GroupElement,
}

impl CentralExtensionGroup {
    /// Fails with the violating triple when `σ` is not a cocycle.
    pub fn new(sigma: TwoCocycle) -> Result<Self> {
        let v = validate_cocycle(&sigma);
        if let Some((g, h, k)) = v.witness {
            return Err(Error::InvalidCocycle(format!("identity fails at ({g}, {h}, {k})")));
        }
        let e = sigma.base().identity();
        let shift = sigma.eval(&e, &e);
        Ok(CentralExtensionGroup { sigma, shift })
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.sigma
    }

    pub fn base(&self) -> &BaseGroup {
        self.sigma.base()
    }

    pub fn target(&self) -> &FinGenAbelianGroup {
        self.sigma.target()
    }

    pub fn identity(&self) -> ExtElem {
        ExtElem { n: self.target().neg(&self.shift), q: self.base().identity() }
    }

    pub fn element(&self, n: GroupElement, q: QElem) -> Result<ExtElem> {
        let e = ExtElem { n, q };
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, a: &ExtElem) -> Result<()> {
        if !self.target().contains(&a.n) {
            return Err(Error::ComponentOutOfRange(format!("{} is not an element of {}", a.n, self.target())));
        }
        if !self.base().contains(&a.q) {
            return Err(Error::ComponentOutOfRange(format!("{} is not an element of the base group", a.q)));
        }
        Ok(())
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let n = self.target();
        ExtElem {
            n: n.add(&n.add(&a.n, &b.n), &self.sigma.eval(&a.q, &b.q)),
            q: self.base().op(&a.q, &b.q),
        }
    }

    /// Checked product.
    pub fn multiply(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &ExtElem) -> ExtElem {
        let n = self.target();
        let qi = self.base().inverse(&a.q);
        let m = n.sub(&n.neg(&self.shift), &n.add(&a.n, &self.sigma.eval(&a.q, &qi)));
        ExtElem { n: m, q: qi }
    }

    pub fn pow(&self, a: &ExtElem, k: i64) -> ExtElem {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a b a⁻¹ b⁻¹`
    pub fn commutator(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&ab, &self.inverse(&ba))
    }

    pub fn commutes(&self, a: &ExtElem, b: &ExtElem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Image of `n ∈ N` in `G_σ`.
    pub fn embed(&self, n: &GroupElement) -> ExtElem {
        ExtElem { n: self.target().sub(n, &self.shift), q: self.base().identity() }
    }

    /// Inverse of [`Self::embed`] on elements over the identity of `Q`.
    pub fn n_part(&self, g: &ExtElem) -> Option<GroupElement> {
        (g.q == self.base().identity()).then(|| self.target().add(&g.n, &self.shift))
    }

    /// The set-theoretic section `q ↦ (0, q)`.
    pub fn section(&self, q: &QElem) -> ExtElem {
        ExtElem { n: self.target().identity(), q: q.clone() }
    }

    /// Images of the standard generators of `N`.
    pub fn n_generators(&self) -> Vec<ExtElem> {
        let n = self.target();
        (0..n.rank()).map(|i| self.embed(&n.generator(i))).collect()
    }

    /// `(0, x_i)` for the standard generators of an abelian base, or every
    /// `(0, q)` for a table base.
    pub fn q_generators(&self) -> Vec<ExtElem> {
        match self.base() {
            BaseGroup::Abelian(q) => (0..q.rank()).map(|i| self.section(&QElem::Abelian(q.generator(i)))).collect(),
            BaseGroup::Table(t) => (0..t.order()).map(|i| self.section(&QElem::Table(i))).collect(),
        }
    }

    /// `Π (0, x_i)^{e_i}` in generator order (abelian base).
    pub fn monomial(&self, exps: &[i64]) -> ExtElem {
        let gens = self.q_generators();
        exps.iter().zip(&gens).fold(self.identity(), |acc, (&e, x)| if e == 0 { acc } else { self.mul(&acc, &self.pow(x, e)) })
    }

    /// Writes `g = embed(n') · monomial(e)` with `e` the reduced coordinates of
    /// `g.q` (abelian base).
    pub fn word_form(&self, g: &ExtElem) -> (GroupElement, Vec<i64>) {
        let e = g.q.as_abelian().expect("abelian base").coords();
        let w = self.monomial(&e);
        let rest = self.mul(g, &self.inverse(&w));
        (self.n_part(&rest).expect("quotient by the monomial lies in N"), e)
    }

    pub fn is_central(&self, g: &ExtElem) -> bool {
        self.q_generators().iter().all(|x| self.commutes(g, x))
    }
}

#[derive(Clone, Debug)]
enum Locator {
    Abelian {
        /// `k × rank(Q)`: coordinates in `Q₀` are `projection · q` reduced mod the orders.
        projection: Vec<Vec<i64>>,
        /// Solves `Σ c_i q(z_i) = q` modulo the torsion of `Q`.
        z_solver: IntegerSolver,
        z_count: usize,
    },
    Table {
        coset_of: Vec<usize>,
        qz_coords: HashMap<usize, Vec<i64>>,
    },
}

/// A central subgroup `Z ⊇ N` of finite index, the quotient `Q₀ = G/Z` and a
/// transversal of monomials.
#[derive(Clone, Debug)]
pub struct CentralSubgroupData {
    group: CentralExtensionGroup,
    generators: Vec<ExtElem>,
    n_count: usize,
    relations: Vec<Vec<i64>>,
    structure: Quotient,
    q0: BaseGroup,
    q0_lifts: Vec<QElem>,
    transversal: Vec<ExtElem>,
    transversal_inv: Vec<ExtElem>,
    locator: Locator,
}

/// `Z = ⟨N, x_i^{l_i} for free generators x_i, extras⟩` with
/// `l_i = lcm_j |a_ij|`. Torsion generators of `Q` need no power since they
/// already have finite order in the quotient.
pub fn default_central_subgroup(g: &CentralExtensionGroup, extras: &[ExtElem]) -> Result<CentralSubgroupData> {
    let mut gens = Vec::new();
    if let BaseGroup::Abelian(q) = g.base() {
        let a = commutator_pairing(g.cocycle())?;
        let xs = g.q_generators();
        for i in q.torsion_rank()..q.rank() {
            let mut l = 1u64;
            let mut finite = true;
            for v in &a[i] {
                match g.target().element_order(v)? {
                    ExtendedOrder::Finite(o) => l = l.lcm(&o),
                    ExtendedOrder::Infinite => finite = false,
                }
            }
            if finite {
                gens.push(g.pow(&xs[i], l as i64));
            }
        }
    }
    gens.extend(extras.iter().cloned());
    CentralSubgroupData::new(g, gens)
}

impl CentralSubgroupData {
    /// Subgroup generated by `N` and `generators`; each generator must be central.
    pub fn new(g: &CentralExtensionGroup, generators: Vec<ExtElem>) -> Result<Self> {
        for z in &generators {
            g.check(z)?;
        }
        let id = g.identity();
        let mut gens: Vec<ExtElem> = g.n_generators();
        let n_count = gens.len();
        for z in generators {
            if z != id && !gens.contains(&z) {
                if !g.is_central(&z) {
                    return Err(Error::NotCentral(z.to_string()));
                }
                gens.push(z);
            }
        }
        let r = gens.len();

        let (q0, q0_lifts, kernel_gens, locator) = match g.base() {
            BaseGroup::Abelian(q) => Self::abelian_layout(q, &gens)?,
            BaseGroup::Table(t) => Self::table_layout(t, &gens),
        };

        // relations among the generators: q-part kernel, then the N-part kernel
        let phi = |c: &[i64]| -> ExtElem {
            c.iter().zip(&gens).fold(g.identity(), |acc, (&k, z)| if k == 0 { acc } else { g.mul(&acc, &g.pow(z, k)) })
        };
        let n_images: Vec<GroupElement> =
            kernel_gens.iter().map(|k| g.n_part(&phi(k)).expect("kernel vectors land in N")).collect();
        let lambda = g.target().relation_lattice(&n_images);
        let mut relations = Vec::new();
        for l in &lambda {
            let mut v = vec![BigInt::zero(); r];
            for (coef, k) in l.iter().zip(&kernel_gens) {
                for (slot, &x) in v.iter_mut().zip(k) {
                    *slot += coef * x;
                }
            }
            let v: Vec<i64> = v
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Internal("relation overflow".into())))
                .collect::<Result<_>>()?;
            if v.iter().any(|&x| x != 0) {
                relations.push(v);
            }
        }
        let free = FinGenAbelianGroup::free(r);
        let rel_elems: Vec<GroupElement> = relations.iter().map(|v| free.element(v)).collect::<Result<_>>()?;
        let structure = free.quotient_group(&rel_elems);

        let transversal: Vec<ExtElem> = match (&q0, g.base()) {
            (BaseGroup::Abelian(q0g), BaseGroup::Abelian(_)) => q0g
                .elements()?
                .iter()
                .map(|e| {
                    e.torsion.iter().zip(&q0_lifts).fold(g.identity(), |acc, (&k, x)| {
                        if k == 0 {
                            acc
                        } else {
                            g.mul(&acc, &g.pow(&g.section(x), k))
                        }
                    })
                })
                .collect(),
            _ => q0_lifts.iter().map(|x| g.section(x)).collect(),
        };
        let transversal_inv = transversal.iter().map(|t| g.inverse(t)).collect();
        Ok(CentralSubgroupData {
            group: g.clone(),
            generators: gens,
            n_count,
            relations,
            structure,
            q0,
            q0_lifts,
            transversal,
            transversal_inv,
            locator,
        })
    }

    #[allow(clippy::type_complexity)]
    fn abelian_layout(
        q: &FinGenAbelianGroup,
        gens: &[ExtElem],
    ) -> Result<(BaseGroup, Vec<QElem>, Vec<Vec<i64>>, Locator)> {
        let qz: Vec<GroupElement> = gens.iter().map(|z| z.q.as_abelian().expect("abelian base").clone()).collect();
        let quotient = q.quotient_group(&qz);
        let order = quotient.group.order().ok_or(Error::InfiniteQuotient)?;

        // prefer images of standard generators when they split Q₀
        let mut std_lifts = Vec::new();
        let mut std_orders = Vec::new();
        for i in 0..q.rank() {
            let x = q.generator(i);
            if let ExtendedOrder::Finite(o) = quotient.group.element_order(&quotient.project(&x))? {
                if o > 1 {
                    std_lifts.push(x);
                    std_orders.push(o);
                }
            }
        }
        let (lifts, orders) = if std_orders.iter().product::<u64>() == order {
            (std_lifts, std_orders)
        } else {
            let k = quotient.group.rank();
            ((0..k).map(|j| quotient.lift_generator(j)).collect(), quotient.group.invariant_factors().to_vec())
        };
        let q0 = if orders.is_empty() { FinGenAbelianGroup::trivial() } else { FinGenAbelianGroup::cyclic_product(orders, 0)? };

        let mut span: Vec<GroupElement> = lifts.clone();
        span.extend(qz.iter().cloned());
        let k = lifts.len();
        let mut projection = vec![vec![0i64; q.rank()]; k];
        for j in 0..q.rank() {
            let c = q
                .span_coefficients(&span, &q.generator(j))
                .ok_or_else(|| Error::Internal("transversal does not span the base".into()))?;
            for (row, v) in projection.iter_mut().zip(&c) {
                row[j] = v.to_i64().ok_or_else(|| Error::Internal("projection overflow".into()))?;
            }
        }

        let kernel: Vec<Vec<i64>> = q
            .relation_lattice(&qz)
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().ok_or_else(|| Error::Internal("relation overflow".into()))).collect())
            .collect::<Result<_>>()?;
        let locator = Locator::Abelian { projection, z_solver: IntegerSolver::new(&q.span_matrix(&qz)), z_count: qz.len() };
        Ok((BaseGroup::Abelian(q0), lifts.into_iter().map(QElem::Abelian).collect(), kernel, locator))
    }

    #[allow(clippy::type_complexity)]
    fn table_layout(t: &TableGroup, gens: &[ExtElem]) -> (BaseGroup, Vec<QElem>, Vec<Vec<i64>>, Locator) {
        let r = gens.len();
        let qz: Vec<usize> = gens
            .iter()
            .map(|z| match z.q {
                QElem::Table(i) => i,
                QElem::Abelian(_) => unreachable!("table base"),
            })
            .collect();
        // breadth-first search over the subgroup generated by the q-parts; the
        // non-tree edges generate the relation lattice
        let mut coords: HashMap<usize, Vec<i64>> = HashMap::new();
        coords.insert(t.identity(), vec![0; r]);
        let mut queue = VecDeque::from([t.identity()]);
        let mut kernel = Vec::new();
        while let Some(x) = queue.pop_front() {
            let cx = coords[&x].clone();
            for (i, &gq) in qz.iter().enumerate() {
                let y = t.mul(x, gq);
                let mut cy = cx.clone();
                cy[i] += 1;
                match coords.get(&y) {
                    Some(existing) => {
                        let diff: Vec<i64> = cy.iter().zip(existing).map(|(a, b)| a - b).collect();
                        if diff.iter().any(|&v| v != 0) && !kernel.contains(&diff) {
                            kernel.push(diff);
                        }
                    }
                    None => {
                        coords.insert(y, cy);
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut coset_of = vec![usize::MAX; t.order()];
        let mut reps = Vec::new();
        let mut members: Vec<usize> = coords.keys().copied().collect();
        members.sort_unstable();
        for x in 0..t.order() {
            if coset_of[x] == usize::MAX {
                let k = reps.len();
                reps.push(x);
                for &h in &members {
                    coset_of[t.mul(x, h)] = k;
                }
            }
        }
        let table: Vec<Vec<usize>> =
            reps.iter().map(|&a| reps.iter().map(|&b| coset_of[t.mul(a, b)]).collect()).collect();
        let q0 = TableGroup::new(table).expect("quotient by a central subgroup is a group");
        (
            BaseGroup::Table(q0),
            reps.into_iter().map(QElem::Table).collect(),
            kernel,
            Locator::Table { coset_of, qz_coords: coords },
        )
    }

    pub fn group(&self) -> &CentralExtensionGroup {
        &self.group
    }

    /// Generators of `Z`; the first [`Self::n_generator_count`] are the
    /// standard generators of `N`.
    pub fn generators(&self) -> &[ExtElem] {
        &self.generators
    }

    pub fn n_generator_count(&self) -> usize {
        self.n_count
    }

    /// Generators of `{c : Π z_i^{c_i} = 1}`.
    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// `Z` as an abstract group, with the projection from generator coordinates.
    pub fn structure(&self) -> &Quotient {
        &self.structure
    }

    pub fn q0(&self) -> &BaseGroup {
        &self.q0
    }

    /// Lifts to `Q` of the generators of `Q₀` (abelian case) or the coset
    /// representatives (table case).
    pub fn q0_lifts(&self) -> &[QElem] {
        &self.q0_lifts
    }

    pub fn transversal(&self) -> &[ExtElem] {
        &self.transversal
    }

    /// Rank of `H` over `C`.
    pub fn degree(&self) -> usize {
        self.transversal.len()
    }

    /// Index of the coset of `q` in `Q₀`, matching the transversal order.
    pub fn coset(&self, q: &QElem) -> usize {
        match &self.locator {
            Locator::Abelian { projection, .. } => {
                let coords = q.as_abelian().expect("abelian base").coords();
                let q0 = self.q0.as_abelian().expect("abelian quotient");
                let e: Vec<i64> = projection
                    .iter()
                    .map(|row| row.iter().zip(&coords).map(|(a, b)| a * b).sum::<i64>())
                    .collect();
                q0.index_of(&q0.element(&e).expect("projection has the quotient's rank"))
            }
            Locator::Table { coset_of, .. } => match q {
                QElem::Table(i) => coset_of[*i],
                QElem::Abelian(_) => unreachable!("table base"),
            },
        }
    }

    pub fn contains(&self, g: &ExtElem) -> bool {
        self.coset(&g.q) == self.coset(&self.group.base().identity())
    }

    /// `g = z · t_k` with `z ∈ Z`.
    pub fn decompose(&self, g: &ExtElem) -> (usize, ExtElem) {
        let k = self.coset(&g.q);
        (k, self.group.mul(g, &self.transversal_inv[k]))
    }

    /// Some `c` with `z = Π z_i^{c_i}`.
    pub fn z_coordinates(&self, z: &ExtElem) -> Result<Vec<i64>> {
        if !self.contains(z) {
            return Err(Error::SupportOutsideCenter);
        }
        let g = &self.group;
        let r = self.generators.len();
        let mut c = match &self.locator {
            Locator::Abelian { z_solver, z_count, .. } => {
                let b = z.q.as_abelian().expect("abelian base").big_coords();
                let x = z_solver.solve(&b).ok_or(Error::SupportOutsideCenter)?;
                x[..*z_count]
                    .iter()
                    .map(|v| v.to_i64().ok_or_else(|| Error::Internal("coordinate overflow".into())))
                    .collect::<Result<Vec<i64>>>()?
            }
            Locator::Table { qz_coords, .. } => match z.q {
                QElem::Table(i) => qz_coords.get(&i).cloned().ok_or(Error::SupportOutsideCenter)?,
                QElem::Abelian(_) => unreachable!("table base"),
            },
        };
        debug_assert_eq!(c.len(), r);
        let w = c.iter().zip(&self.generators).fold(g.identity(), |acc, (&k, x)| if k == 0 { acc } else { g.mul(&acc, &g.pow(x, k)) });
        let rest = g.n_part(&g.mul(z, &g.inverse(&w))).expect("same q-part");
        for (slot, v) in c.iter_mut().zip(rest.coords()) {
            *slot += v;
        }
        for (slot, &e) in c.iter_mut().zip(self.group.target().invariant_factors()) {
            *slot = slot.rem_euclid(e as i64);
        }
        Ok(c)
    }
}

/// Finitely supported `Σ c_g g` with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<ExtElem, Cyclotomic>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(g: &CentralExtensionGroup) -> Self {
        Self::basis(g.identity())
    }

    pub fn basis(x: ExtElem) -> Self {
        Self::term(x, Cyclotomic::one())
    }

    pub fn term(x: ExtElem, c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(x, c);
        }
        AlgebraElement { terms }
    }

    pub fn scalar(g: &CentralExtensionGroup, c: Cyclotomic) -> Self {
        Self::term(g.identity(), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ExtElem, Cyclotomic)>) -> Self {
        let mut out = Self::zero();
        for (x, c) in terms {
            out.add_term(x, &c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<ExtElem, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: &ExtElem) -> Cyclotomic {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, x: ExtElem, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.get(&x).map_or_else(|| c.clone(), |old| old + c);
        if v.is_zero() {
            self.terms.remove(&x);
        } else {
            self.terms.insert(x, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Cyclotomic::from_integer(-1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(x, v)| (x.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Self, g: &CentralExtensionGroup) -> Self {
        let mut out = Self::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                out.add_term(g.mul(x, y), &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32, g: &CentralExtensionGroup) -> Self {
        (0..k).fold(Self::one(g), |acc, _| acc.mul(self, g))
    }

    /// True when every group element of the support lies in `Z`.
    pub fn is_central_subalgebra_element(&self, z: &CentralSubgroupData) -> bool {
        self.terms.keys().all(|x| z.contains(x))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(x, c)| format!("{}*{}", c.to_short_string(), x)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Column `j` of the left-multiplication matrix of `h` on the transversal:
/// `h · t_j = Σ_k M[k][j] t_k` with `M[k][j] ∈ C`.
fn left_multiplication_column(h: &AlgebraElement, z: &CentralSubgroupData, j: usize) -> Vec<(usize, ExtElem, Cyclotomic)> {
    let g = z.group();
    h.terms()
        .iter()
        .map(|(x, c)| {
            let (k, central) = z.decompose(&g.mul(x, &z.transversal()[j]));
            (k, central, c.clone())
        })
        .collect()
}

/// The `d × d` matrix over `C` of left multiplication by `h`.
pub fn left_multiplication_matrix(h: &AlgebraElement, z: &CentralSubgroupData) -> Vec<Vec<AlgebraElement>> {
    let d = z.degree();
    let mut m = vec![vec![AlgebraElement::zero(); d]; d];
    for j in 0..d {
        for (k, central, c) in left_multiplication_column(h, z, j) {
            m[k][j].add_term(central, &c);
        }
    }
    m
}

/// Regular trace over `C`: the sum of the diagonal entries of the
/// left-multiplication matrix.
pub fn regular_trace(h: &AlgebraElement, z: &CentralSubgroupData) -> AlgebraElement {
    let mut tr = AlgebraElement::zero();
    for j in 0..z.degree() {
        for (k, central, c) in left_multiplication_column(h, z, j) {
            if k == j {
                tr.add_term(central, &c);
            }
        }
    }
    tr
}

/// `d · (part of h supported in Z)`; agrees with [`regular_trace`].
pub fn closed_form_trace(h: &AlgebraElement, z: &CentralSubgroupData) -> AlgebraElement {
    let d = Cyclotomic::from_integer(z.degree() as i64);
    AlgebraElement::from_terms(h.terms().iter().filter(|(x, _)| z.contains(x)).map(|(x, c)| (x.clone(), c * &d)))
}

/// Trace-characteristic data of an element.
#[derive(Clone, Debug)]
pub struct CayleyHamilton {
    /// `e_0, …, e_d` with `χ(x) = Σ (-1)^k e_k x^{d-k}`.
    pub coefficients: Vec<AlgebraElement>,
    pub power_traces: Vec<AlgebraElement>,
    /// `χ(h)` evaluated in `H`.
    pub residual: AlgebraElement,
    pub holds: bool,
}

/// Builds `χ_{d,h}` from the power traces by the Newton identities and
/// evaluates it at `h`.
pub fn cayley_hamilton_check(h: &AlgebraElement, z: &CentralSubgroupData) -> CayleyHamilton {
    let g = z.group();
    let d = z.degree();
    let mut powers = vec![AlgebraElement::one(g)];
    for i in 1..=d {
        powers.push(powers[i - 1].mul(h, g));
    }
    let power_traces: Vec<AlgebraElement> = powers.iter().map(|p| regular_trace(p, z)).collect();
    let mut e = vec![AlgebraElement::one(g)];
    for k in 1..=d {
        let mut acc = AlgebraElement::zero();
        for i in 1..=k {
            let t = e[k - i].mul(&power_traces[i], g);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        e.push(acc.scale(&Cyclotomic::from_fraction(1, k as i64)));
    }
    let mut residual = AlgebraElement::zero();
    for (k, ek) in e.iter().enumerate() {
        let t = ek.mul(&powers[d - k], g);
        residual = if k % 2 == 0 { residual.add(&t) } else { residual.sub(&t) };
    }
    CayleyHamilton { holds: residual.is_zero(), coefficients: e, power_traces: power_traces[1..].to_vec(), residual }
}

/// `G_ij = tr(y_i y_j)` with entries in `C`.
pub fn gram_matrix(tuple: &[AlgebraElement], z: &CentralSubgroupData) -> Vec<Vec<AlgebraElement>> {
    let g = z.group();
    tuple
        .iter()
        .map(|a| tuple.iter().map(|b| regular_trace(&a.mul(b, g), z)).collect())
        .collect()
}

/// Specialises a matrix over `C` at a point.
pub fn evaluate_matrix(m: &[Vec<AlgebraElement>], z: &CentralSubgroupData, p: &SpecPoint) -> Result<CycMatrix> {
    let rows: Vec<Vec<Cyclotomic>> = m
        .iter()
        .map(|row| row.iter().map(|c| p.evaluate(c, z)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(CycMatrix::zeros(0, 0));
    }
    Ok(CycMatrix::from_rows(rows))
}

pub fn gram_determinant_at_point(tuple: &[AlgebraElement], z: &CentralSubgroupData, p: &SpecPoint) -> Result<Cyclotomic> {
    Ok(evaluate_matrix(&gram_matrix(tuple, z), z, p)?.determinant())
}

/// Gram matrix of the transversal basis together with its shape.
#[derive(Clone, Debug)]
pub struct TransversalGram {
    pub matrix: Vec<Vec<AlgebraElement>>,
    /// `permutation[i] = j` for the unique nonzero entry of row `i`, when
    /// the matrix is a generalized permutation matrix.
    pub permutation: Option<Vec<usize>>,
}

impl TransversalGram {
    pub fn is_generalized_permutation(&self) -> bool {
        self.permutation.is_some()
    }

    /// `sign(π) Π G_{i, π(i)}` evaluated at `p`.
    pub fn product_form_at(&self, z: &CentralSubgroupData, p: &SpecPoint) -> Result<Option<Cyclotomic>> {
        let Some(perm) = &self.permutation else { return Ok(None) };
        let mut acc = Cyclotomic::one();
        for (i, &j) in perm.iter().enumerate() {
            acc = &acc * &p.evaluate(&self.matrix[i][j], z)?;
        }
        Ok(Some(if permutation_is_odd(perm) { -acc } else { acc }))
    }
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

pub fn transversal_basis(z: &CentralSubgroupData) -> Vec<AlgebraElement> {
    z.transversal().iter().cloned().map(AlgebraElement::basis).collect()
}

pub fn transversal_gram(z: &CentralSubgroupData) -> TransversalGram {
    let matrix = gram_matrix(&transversal_basis(z), z);
    let d = matrix.len();
    let mut perm = Vec::with_capacity(d);
    let mut col_used = vec![false; d];
    let mut ok = true;
    for row in &matrix {
        let nz: Vec<usize> = (0..d).filter(|&j| !row[j].is_zero()).collect();
        if nz.len() != 1 || col_used[nz[0]] {
            ok = false;
            break;
        }
        col_used[nz[0]] = true;
        perm.push(nz[0]);
    }
    TransversalGram { matrix, permutation: ok.then_some(perm) }
}
