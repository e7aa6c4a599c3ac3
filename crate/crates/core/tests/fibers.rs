use cextdisc_core::abelian::FinGenAbelianGroup;
use cextdisc_core::cocycle::{is_cohomologous, validate_cocycle, BaseGroup, QElem, TwoCocycle};
use cextdisc_core::extension::{
    closed_form_trace, default_central_subgroup, regular_trace, AlgebraElement, CentralExtensionGroup, ExtElem,
};
use cextdisc_core::fiber::{
    center_dimension_oracle, fiber_algebra, fiber_structure_of, invariant_form, irrep_construct, predicted_stabilizer,
    stabilizer_bruteforce, SpecPoint,
};
use cextdisc_core::orbits::{abelianization, counit_orbit_membership, winding_translate, HCharacter, Orientation};
use cextdisc_core::scalars::Cyclotomic;
use num_integer::Integer;
use proptest::prelude::*;

fn cyclic(orders: &[u64], free: usize) -> FinGenAbelianGroup {
    FinGenAbelianGroup::cyclic_product(orders.to_vec(), free).unwrap()
}

/// Bilinear cocycle `Π Z/o_i → Z/m` with `b_ij` scaled so it is killed by both orders.
fn bilinear_group(orders: &[u64], m: u64, raw: &[i64]) -> CentralExtensionGroup {
    let q = cyclic(orders, 0);
    let n = cyclic(&[m], 0);
    let k = orders.len();
    let mut b = vec![vec![n.identity(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let g = orders[i].gcd(&orders[j]).gcd(&m);
            let step = (m / g) as i64;
            b[i][j] = n.element(&[raw[i * k + j] * step]).unwrap();
        }
    }
    let sigma = TwoCocycle::from_bilinear(BaseGroup::Abelian(q), n, b).unwrap();
    CentralExtensionGroup::new(sigma).unwrap()
}

fn family() -> impl Strategy<Value = (Vec<u64>, u64, Vec<i64>, i64)> {
    prop::sample::select(vec![vec![2u64, 2], vec![3, 3], vec![2, 2, 2], vec![2, 4], vec![4, 4], vec![2, 2, 3], vec![6, 6], vec![2, 3, 6]])
        .prop_flat_map(|orders| {
            let k = orders.len();
            (Just(orders), prop::sample::select(vec![2u64, 3, 4, 6, 12]), prop::collection::vec(0i64..12, k * k), 0i64..12)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fiber_oracles_agree((orders, m, raw, k) in family()) {
        let g = bilinear_group(&orders, m, &raw);
        let z = default_central_subgroup(&g, &[]).unwrap();
        let p = SpecPoint::new(&z, vec![Cyclotomic::root_of_unity(m, k)]).unwrap();
        let alg = fiber_algebra(&z, &p).unwrap();
        let fs = fiber_structure_of(&alg).unwrap();
        let q0 = alg.dimension() as u64;
        prop_assert_eq!(fs.block_count * fs.irrep_dim * fs.irrep_dim, q0);
        prop_assert_eq!(center_dimension_oracle(&alg) as u64, fs.block_count);
        let rep = irrep_construct(&z, &p).unwrap();
        prop_assert_eq!(rep.dim as u64, fs.irrep_dim);
        let st = stabilizer_bruteforce(&alg, &rep.basis_matrices).unwrap();
        prop_assert_eq!(st.order as u64, fs.irrep_dim * fs.irrep_dim);
        prop_assert_eq!(&st.invariants, &invariant_form(&fs.stabilizer_invariants));
        prop_assert_eq!(predicted_stabilizer(&alg, &fs).unwrap(), st.characters);
    }

    #[test]
    fn extension_group_axioms(a in prop::collection::vec(-6i64..6, 3), b in prop::collection::vec(-6i64..6, 3), c in prop::collection::vec(-6i64..6, 3), f in prop::collection::vec(0i64..5, 9)) {
        // Z/3 x Z/3 over Z/3 x Z, twisted by a coboundary on top of a bilinear form
        let q = cyclic(&[3, 3], 0);
        let n = cyclic(&[3], 1);
        let mut bl = vec![vec![n.identity(); 2]; 2];
        bl[0][1] = n.element(&[1, 0]).unwrap();
        let sigma = TwoCocycle::from_bilinear(BaseGroup::Abelian(q.clone()), n.clone(), bl).unwrap();
        let fvals: Vec<_> = f.iter().map(|&v| n.element(&[v, v - 2]).unwrap()).collect();
        let tau = sigma.add_coboundary(&fvals).unwrap();
        prop_assert!(validate_cocycle(&tau).valid);
        prop_assert!(is_cohomologous(&sigma, &tau).unwrap().is_some());
        let g = CentralExtensionGroup::new(tau).unwrap();
        let el = |v: &[i64]| ExtElem { n: n.element(&[v[0], v[1]]).unwrap(), q: QElem::Abelian(q.element(&[v[2], v[0]]).unwrap()) };
        let (x, y, w) = (el(&a), el(&b), el(&c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &w), g.mul(&x, &g.mul(&y, &w)));
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        prop_assert_eq!(g.mul(&g.identity(), &y), y.clone());
        prop_assert_eq!(g.pow(&x, 7), g.mul(&g.pow(&x, 3), &g.pow(&x, 4)));
        prop_assert_eq!(g.pow(&x, -2), g.inverse(&g.pow(&x, 2)));
    }

    #[test]
    fn traces_match_closed_form(coefs in prop::collection::vec(-3i64..4, 4), shifts in prop::collection::vec(-4i64..5, 4)) {
        // x, y generating Z^2 with [x, y] of order 2 over Z/2
        let q = cyclic(&[], 2);
        let n = cyclic(&[2], 0);
        let mut bl = vec![vec![n.identity(); 2]; 2];
        bl[0][1] = n.element(&[1]).unwrap();
        let g = CentralExtensionGroup::new(TwoCocycle::from_bilinear(BaseGroup::Abelian(q.clone()), n, bl).unwrap()).unwrap();
        let z = default_central_subgroup(&g, &[]).unwrap();
        prop_assert_eq!(z.degree(), 4);
        let h = AlgebraElement::from_terms(coefs.iter().enumerate().map(|(i, &c)| {
            let e = [shifts[i], shifts[(i + 1) % 4]];
            (g.monomial(&e), Cyclotomic::from_integer(c))
        }));
        prop_assert_eq!(regular_trace(&h, &z), closed_form_trace(&h, &z));
    }

    #[test]
    fn winding_preserves_fiber_type(k in 0i64..6, t in prop::collection::vec(0i64..6, 2), w in prop::sample::select(vec![1i64, -1, 2, 3])) {
        // Z/6 x Z over Z/6 with the commutator of the generators a generator of N
        let q = cyclic(&[6], 1);
        let n = cyclic(&[6], 0);
        let mut bl = vec![vec![n.identity(); 2]; 2];
        bl[0][1] = n.element(&[1]).unwrap();
        let g = CentralExtensionGroup::new(TwoCocycle::from_bilinear(BaseGroup::Abelian(q), n, bl).unwrap()).unwrap();
        let z = default_central_subgroup(&g, &[]).unwrap();
        let ab = abelianization(&g).unwrap();
        let chi = HCharacter::new(&ab, vec![Cyclotomic::one(), Cyclotomic::root_of_unity(6, t[0]), Cyclotomic::from_integer(w)]).unwrap();
        let vals: Vec<Cyclotomic> = z.generators().iter().enumerate().map(|(i, _)| match i {
            0 => Cyclotomic::root_of_unity(6, k),
            _ => Cyclotomic::root_of_unity(6, t[1]),
        }).collect();
        let p = SpecPoint::new(&z, vals).unwrap();
        let p2 = winding_translate(&p, &chi, &z, Orientation::Left).unwrap();
        let a = fiber_structure_of(&fiber_algebra(&z, &p).unwrap()).unwrap();
        let b = fiber_structure_of(&fiber_algebra(&z, &p2).unwrap()).unwrap();
        prop_assert_eq!((a.irrep_dim, a.block_count), (b.irrep_dim, b.block_count));
        prop_assert_eq!(counit_orbit_membership(&p, &z).unwrap(), a.irrep_dim == 1);
    }
}
