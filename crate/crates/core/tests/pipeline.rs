use arcgen::caps::Caps;
use arcgen::group_algebra::{action_matrix, gamma_chain, min_generators_local, Basis, Generator};
use arcgen::perm::{arc_orbit_size, is_automorphism, PermGroup};
use arcgen::pipeline::{build_bundle, verify_theorem1, Bundle, ClaimStatus, ConstructionParams, CLAIM_IDS};

fn params(p: u32, h: u32) -> ConstructionParams {
    ConstructionParams::new(p, h).unwrap()
}

#[test]
fn permutation_rank_equals_module_rank_plus_two() {
    let caps = Caps::default();
    for (p, h) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
        let b = Bundle::assemble(params(p, h)).unwrap();
        let chain = gamma_chain(b.group, &caps).unwrap();
        let actions = [
            action_matrix(b.group, Generator::A, Basis::E).unwrap(),
            action_matrix(b.group, Generator::B, Basis::E).unwrap(),
        ];
        let module_rank = min_generators_local(chain.get(b.group.q() - 1), &actions).unwrap();
        let group_rank = b.small_group.frattini_rank(p, &caps).unwrap();
        assert_eq!(group_rank, module_rank + 2, "(p, h) = ({p}, {h})");
    }
}

#[test]
fn big_group_rank_grows_with_h() {
    let caps = Caps::default();
    let ranks: Vec<usize> =
        (1..=3).map(|h| Bundle::assemble(params(2, h)).unwrap().big_group.frattini_rank(2, &caps).unwrap()).collect();
    assert_eq!(ranks, vec![3, 5, 7]);
}

#[test]
fn orders_of_family_groups() {
    let caps = Caps::default();
    for (p, h, small, big) in [(2, 1, 32u128, 64u128), (2, 2, 1 << 14, 1 << 16), (3, 1, 6561, 26244)] {
        let b = build_bundle(params(p, h)).unwrap();
        assert_eq!(b.small_group.order(&caps).unwrap(), small);
        assert_eq!(b.big_group.order(&caps).unwrap(), big);
        assert!(b.big_group.contains_group(&b.small_group, &caps).unwrap());
    }
    let b = Bundle::assemble(params(2, 3)).unwrap();
    assert_eq!(b.big_group.order(&caps).unwrap(), 1 << 44);
    assert_eq!(b.vertex_count(), 128);
}

#[test]
fn module_generators_have_order_p() {
    for (p, h) in [(2, 2), (3, 1)] {
        let b = Bundle::assemble(params(p, h)).unwrap();
        assert_eq!(b.module_gens.len(), b.group.q() * (b.group.q() + 1) / 2);
        for g in &b.module_gens {
            assert!(g.order() == p as u64 || g.is_identity());
            assert!(is_automorphism(b.graph(), g).unwrap());
        }
    }
}

#[test]
fn outer_automorphisms_are_transitive_on_connection_set() {
    let b = Bundle::assemble(params(3, 1)).unwrap();
    let group = b.group;
    let p = group.p() as usize;
    // The neighbours of (1, 0) in Δ, read as vertex indices of copy 0.
    let conn: Vec<usize> = b.family.cayley.connection_set().iter().map(|&s| group.index(s) * p).collect();
    let outer = PermGroup::new(b.vertex_count(), b.outer_gens.to_vec()).unwrap();
    let mut orbit = outer.orbit(&conn[..1]);
    orbit.retain(|x| conn.contains(x));
    assert_eq!(orbit.len(), 4);
}

#[test]
fn arc_orbit_counts() {
    for (p, h) in [(2, 2), (3, 1)] {
        let b = Bundle::assemble(params(p, h)).unwrap();
        let n = b.vertex_count();
        assert_eq!(arc_orbit_size(b.graph(), &b.big_group).unwrap(), n * b.valency());
        assert!(arc_orbit_size(b.graph(), &b.small_group).unwrap() < n * b.valency());
    }
}

#[test]
fn every_claim_appears_once() {
    let report = verify_theorem1(params(2, 2)).unwrap();
    let ids: Vec<&str> = report.claims.iter().map(|c| c.id).collect();
    assert_eq!(ids, CLAIM_IDS);
    assert!(report.claims.iter().all(|c| c.status == ClaimStatus::Pass));
    assert_eq!(report.claim("C7").unwrap().computed, "6");
    assert_eq!(report.claim("C8").unwrap().computed, "5");
}

#[test]
fn odd_prime_report() {
    let report = verify_theorem1(params(3, 1)).unwrap();
    for id in ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C9"] {
        assert_eq!(report.claim(id).unwrap().status, ClaimStatus::Pass, "{id}");
    }
    assert_eq!(report.claim("C6").unwrap().computed, "3");
    assert_eq!(report.claim("C7").unwrap().computed, "5");
    let c8 = report.claim("C8").unwrap();
    assert_eq!(c8.status, ClaimStatus::Reported);
    assert_eq!(c8.computed, "lower_bound=4,not_directly_computed");
}

#[test]
fn degenerate_parameters() {
    let report = verify_theorem1(params(2, 1)).unwrap();
    assert!(report.degenerate);
    assert_eq!(report.claim("C1").unwrap().computed, "4");
    assert_eq!(report.claim("C4").unwrap().computed, "not_arc_transitive,local_orbits=2");
    assert!(!report.any_failed());
}

#[test]
fn certificate_is_deterministic() {
    let a = verify_theorem1(params(2, 2)).unwrap().to_certificate(false);
    let b = verify_theorem1(params(2, 2)).unwrap().to_certificate(false);
    assert_eq!(a, b);
    assert!(a.starts_with("# p=2 h=2 n=32 valency=8 order=65536 family=stated\n"));
    assert_eq!(a.lines().count(), 10);
}

#[test]
fn claims_skip_individually_under_tight_caps() {
    let caps = Caps { order_cap: 1 << 15, ..Caps::default() };
    let report = verify_theorem1(ConstructionParams::with_caps(2, 2, caps).unwrap()).unwrap();
    // |γ⋊H| = 2^14 fits under the cap, |G_2| = 2^16 does not.
    for id in ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C9"] {
        assert_eq!(report.claim(id).unwrap().status, ClaimStatus::Pass, "{id}");
    }
    assert_eq!(report.claim("C8").unwrap().status, ClaimStatus::Skipped);
    assert!(report.order.is_none());
    assert!(report.to_certificate(false).contains("order=skipped"));
}
