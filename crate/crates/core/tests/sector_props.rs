use proptest::prelude::*;
use sectorfact_core::matrix::{pauli, Matrix};
use sectorfact_core::operad::Operation;
use sectorfact_core::sectors::algebra::{bicommutant, commutant};
use sectorfact_core::sectors::endo::inner_intertwiner;
use sectorfact_core::sectors::equivariance::same_family;
use sectorfact_core::sectors::pfa::controlled_z;
use sectorfact_core::sectors::*;
use std::sync::OnceLock;

fn net() -> &'static MatrixNet {
    static NET: OnceLock<MatrixNet> = OnceLock::new();
    NET.get_or_init(|| MatrixNet::qubit_chain(4))
}

fn data() -> &'static SectorGroupData {
    static DATA: OnceLock<SectorGroupData> = OnceLock::new();
    DATA.get_or_init(|| SectorGroupData::from_net(net()).unwrap())
}

fn gate(k: u8) -> Matrix {
    match k % 6 {
        0 => Matrix::identity(2),
        1 => pauli::x(),
        2 => pauli::y(),
        3 => pauli::z(),
        4 => pauli::s(),
        _ => Matrix::from_ints(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]]),
    }
}

/// Product of single-site gates on an interval, optionally with a CZ on
/// the first two sites.
fn sector(a: usize, b: usize, gates: &[u8], entangle: bool, name: &str) -> LocalizedEndo {
    let net = net();
    let mut u = Matrix::identity(16);
    for (k, s) in (a..=b).enumerate() {
        u = u.mul(&net.embed(s, &gate(gates[k % gates.len()])));
    }
    if entangle && b > a {
        u = u.mul(&controlled_z(net, a, a + 1));
    }
    LocalizedEndo::inner(net, name, net.region(&format!("[{a},{b}]")).unwrap(), u).unwrap()
}

fn interval() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=4).prop_flat_map(|a| (Just(a), a..=4))
}

fn sector_in(name: &'static str, iv: (usize, usize)) -> impl Strategy<Value = LocalizedEndo> {
    (prop::collection::vec(0u8..6, 4), any::<bool>()).prop_map(move |(g, e)| sector(iv.0, iv.1, &g, e, name))
}

fn any_sector(name: &'static str) -> impl Strategy<Value = LocalizedEndo> {
    interval().prop_flat_map(move |iv| sector_in(name, iv))
}

/// Two sectors localized in disjoint intervals.
fn disjoint_pair() -> impl Strategy<Value = (LocalizedEndo, LocalizedEndo)> {
    (1usize..=3)
        .prop_flat_map(|cut| ((1usize..=cut), (cut + 1..=4), Just(cut)))
        .prop_flat_map(|(a, d, cut)| (sector_in("a", (a, cut)), sector_in("b", (cut + 1, d))))
}

#[test]
fn double_commutant_and_dimension_bound() {
    let net = net();
    let broken = MatrixNet::qubit_chain(4).with_diagonal_region("[2,3]").unwrap();
    let n2 = 256;
    for m in [net, &broken] {
        for o in 0..m.category().num_objects() {
            let s = m.algebra(o);
            assert!(bicommutant(s).same_span(s), "{}", m.region_name(o));
            let d = s.dim() * commutant(s).dim();
            assert!(d >= n2);
            if m.regions()[o].kind == LocalKind::Full {
                assert_eq!(d, n2, "factor {}", m.region_name(o));
            }
        }
    }
    // the diagonal region is abelian, so its centre is all of it
    let o = broken.region("[2,3]").unwrap();
    let s = broken.algebra(o);
    let c = commutant(s);
    assert!(s.dim() > 1 && s.basis().iter().all(|b| c.contains(b)));
}

#[test]
fn unit_is_invariant() {
    let net = net();
    for o in 0..net.category().num_objects() {
        for g in 0..2 {
            let moved = g_act_sector(net, data(), g, &LocalizedEndo::identity(net, o)).unwrap();
            assert!(moved.endo.same(&Endo::identity(16), net));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monoid_laws(iv in interval(), g1 in prop::collection::vec(0u8..6, 4), g2 in prop::collection::vec(0u8..6, 4),
                   g3 in prop::collection::vec(0u8..6, 4), e in any::<bool>()) {
        let net = net();
        let (a, b, c) = (sector(iv.0, iv.1, &g1, e, "a"), sector(iv.0, iv.1, &g2, false, "b"), sector(iv.0, iv.1, &g3, e, "c"));
        let id = LocalizedEndo::identity(net, a.region);
        prop_assert!(diamond(net, &a, &id).unwrap().endo.same(&a.endo, net));
        prop_assert!(diamond(net, &id, &a).unwrap().endo.same(&a.endo, net));
        let l = diamond(net, &diamond(net, &a, &b).unwrap(), &c).unwrap();
        let r = diamond(net, &a, &diamond(net, &b, &c).unwrap()).unwrap();
        prop_assert!(l.endo.same(&r.endo, net));
    }

    #[test]
    fn intertwiners_lie_in_local_bicommutant(a in any_sector("a"), g in prop::collection::vec(0u8..6, 4)) {
        let net = net();
        let iv = sectorfact_core::orthogonal::fixtures::parse_interval(net.region_name(a.region)).unwrap();
        let b = sector(iv.0, iv.1, &g, true, "b");
        let t = inner_intertwiner(net, &a, &b).unwrap();
        prop_assert!(net.bicommutant(a.region).contains(t.matrix()));
        let v = net.region("[1,4]").unwrap();
        prop_assert!(net.bicommutant(v).contains(t.matrix()));
    }

    #[test]
    fn eckmann_hilton_swap((a, b) in disjoint_pair()) {
        let net = net();
        let c = net.category();
        let v = net.region("[1,4]").unwrap();
        let fa = c.hom(a.region, v)[0];
        let fb = c.hom(b.region, v)[0];
        let ab = pfa_structure_map(net, &Operation { target: v, arrows: vec![fa, fb] }, &[a.clone(), b.clone()]).unwrap();
        let ba = pfa_structure_map(net, &Operation { target: v, arrows: vec![fb, fa] }, &[b.clone(), a.clone()]).unwrap();
        prop_assert!(ab.endo.same(&ba.endo, net));
    }

    #[test]
    fn perp_commutativity_with_intertwiners((a, b) in disjoint_pair(), g in prop::collection::vec(0u8..6, 4)) {
        let net = net();
        let ia = sectorfact_core::orthogonal::fixtures::parse_interval(net.region_name(a.region)).unwrap();
        let a2 = sector(ia.0, ia.1, &g, true, "a2");
        let t1 = inner_intertwiner(net, &a, &a2).unwrap();
        let t2 = inner_intertwiner(net, &b, &b).unwrap();
        let rep = check_perp_commutativity_sectors(net, &a, &b, &t1, &t2).unwrap();
        prop_assert!(rep.passed, "{:?}", rep);
    }

    #[test]
    fn group_action_laws(a in any_sector("a"), b in any_sector("b")) {
        let net = net();
        let r = check_action_laws(net, data(), &[a.clone(), b.clone()]);
        prop_assert!(r.valid, "{:?}", r.violations);
    }

    #[test]
    fn covariant_sectors_closed_under_diamond(a in any_sector("a"), b in any_sector("b")) {
        let net = net();
        let d = data();
        let (Covariance::Found(fa), Covariance::Found(fb)) = (find_covariance(net, d, &a), find_covariance(net, d, &b)) else {
            return Err(TestCaseError::fail("inner sectors are covariant"));
        };
        let (fam, chain) = diamond_covariance(net, d, &a, &b, &fa, &fb).unwrap();
        prop_assert!(chain.passed);
        let prod = diamond_in(net, &a, &b, net.join(a.region, b.region)).unwrap();
        prop_assert!(verify_covariance(net, d, &prod, &fam));
        let Covariance::Found(direct) = find_covariance(net, d, &prod) else { unreachable!() };
        prop_assert!(same_family(net, &fam, &direct));
    }
}
