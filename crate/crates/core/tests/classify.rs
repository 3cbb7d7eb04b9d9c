mod common;

use std::collections::BTreeMap;

use common::{catalogues, m14, members_up_to, non_bipartite_up_to};
use crystal::{
    apply_sequence, canonical_order, classify_list, code, connected_sum, decode, factorize, first_homology,
    is_colour_isomorphic, rigidify, sequences, split_by_h, theta, AbelianGroup, ClassRecord, Code, ColouredGraph,
    MoveSequence,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn h1(c: &Code) -> AbelianGroup {
    first_homology(&decode(c).unwrap()).unwrap()
}

/// Equal-h members share H1; members `d` apart in h differ by `Z^d`.
fn check_class(class: &ClassRecord) -> Vec<String> {
    let mut errors = Vec::new();
    let levels = split_by_h(class);
    let (h0, base) = &levels[0];
    let g0 = h1(&base[0]);
    for (h, members) in &levels {
        for c in members {
            let g = h1(c);
            if g.torsion != g0.torsion || g.rank + h0 != g0.rank + h {
                errors.push(format!("class {}: {c} at h = {h} has H1 = {g}, base {} has {g0}", class.id, base[0]));
            }
        }
    }
    errors
}

#[test]
fn classes_are_sound() {
    let list = non_bipartite_up_to(24);
    let classes = classify_list(&list, &BTreeMap::new()).unwrap();
    let total: usize = classes.iter().map(|c| c.members.len()).sum();
    assert_eq!(total, list.len());
    let errors: Vec<String> = classes.iter().flat_map(check_class).collect();
    assert!(errors.is_empty(), "{errors:#?}");

    let bipartite: Vec<Code> = catalogues().iter().filter(|c| c.vertex_count <= 20).flat_map(|c| c.bipartite.clone()).collect();
    let classes = classify_list(&bipartite, &BTreeMap::new()).unwrap();
    let errors: Vec<String> = classes.iter().flat_map(check_class).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn handle_sums_join_their_summand() {
    let handle = m14();
    for g in members_up_to(20) {
        let a = code(&g).unwrap();
        let b = code(&connected_sum(&g, &handle, 0, 0).unwrap()).unwrap();
        let classes = classify_list(&[a.clone(), b.clone()], &BTreeMap::new()).unwrap();
        assert_eq!(classes.len(), 1, "{a} and its handle sum are split");
        let h = |c: &Code| classes[0].members.iter().find(|m| &m.0 == c).unwrap().1;
        assert_eq!(h(&b), h(&a) + 1, "{a}");
    }
}

#[test]
fn classification_is_deterministic_and_named() {
    let list = non_bipartite_up_to(20);
    let mut known = BTreeMap::new();
    known.insert(list[0].clone(), "S1 x~ S2".to_string());
    let one = classify_list(&list, &known).unwrap();
    let two = classify_list(&list, &known).unwrap();
    assert_eq!(one, two);
    let named: Vec<_> = one.iter().filter(|c| c.name.is_some()).collect();
    assert_eq!(named.len(), 1);
    assert!(named[0].members.iter().any(|m| m.0 == list[0]));
    for (k, c) in one.iter().enumerate() {
        assert_eq!(c.id, k);
    }

    known.insert(list[1].clone(), "something else".to_string());
    let same_class = one.iter().any(|c| c.members.iter().any(|m| m.0 == list[1]) && c.name.is_some());
    let result = classify_list(&list, &known);
    assert_eq!(result.is_err(), same_class);
}

#[test]
fn theta_zero_and_empty_sequences_are_identities() {
    for c in non_bipartite_up_to(20) {
        let g = decode(&c).unwrap();
        let o = canonical_order(&g).unwrap();
        let r = theta(&o, 0).unwrap().unwrap();
        assert_eq!(code(&r.reduced).unwrap(), c);
        assert_eq!(r.rho3_count, 0);
        let id = MoveSequence::new(1, 0, false).unwrap();
        let r = apply_sequence(&g, &id).unwrap().unwrap();
        assert_eq!(code(&r.reduced).unwrap(), c);
    }
    assert_eq!(sequences().len(), 44);
    assert!(MoveSequence::new(0, 1, false).is_err());
    assert!(MoveSequence::new(1, 4, false).is_err());
    assert!(MoveSequence::new(1, 1, true).is_err());
}

#[test]
fn theta_is_deterministic_under_relabelling() {
    let mut rng = StdRng::seed_from_u64(7);
    for c in non_bipartite_up_to(22) {
        let g = decode(&c).unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        for k in (1..perm.len()).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        let h = g.relabel(&perm).unwrap();
        for eps in sequences() {
            let a = apply_sequence(&g, &eps).unwrap().map(|r| (code(&r.reduced).unwrap(), r.rho3_count));
            let b = apply_sequence(&h, &eps).unwrap().map(|r| (code(&r.reduced).unwrap(), r.rho3_count));
            assert_eq!(a, b, "{c} under {eps:?}");
        }
    }
}

/// Prime pieces of a graph, as codes, with its handle count.
fn primes(g: &ColouredGraph) -> (Vec<Code>, usize) {
    let f = factorize(&rigidify(g).unwrap().graph).unwrap();
    let mut pieces: Vec<Code> = f.pieces.iter().map(|p| code(p).unwrap()).collect();
    pieces.sort();
    (pieces, f.handles.len())
}

#[test]
fn connected_sums_factor_back() {
    let sphere = code(&ColouredGraph::dipole_sphere(4)).unwrap();
    let pool: Vec<ColouredGraph> =
        members_up_to(16).into_iter().filter(|g| code(g).unwrap() != sphere).collect();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut mismatches = Vec::new();
    for _ in 0..50 {
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let x = rng.gen_range(0..a.order());
        let y = rng.gen_range(0..b.order());
        let sum = connected_sum(a, b, x, y).unwrap();
        let (got, got_handles) = primes(&sum);
        let (pa, ha) = primes(a);
        let (pb, hb) = primes(b);
        let mut want: Vec<Code> = pa.into_iter().chain(pb).filter(|c| *c != sphere).collect();
        want.sort();
        if want.is_empty() {
            want.push(sphere.clone());
        }
        if got != want || got_handles != ha + hb {
            mismatches.push(format!("{} # {}: got {got:?} + {got_handles}", code(a).unwrap(), code(b).unwrap()));
        }
        // prime summands come back up to colour-isomorphism
        for (p, q) in factorize(&rigidify(&sum).unwrap().graph).unwrap().pieces.iter().zip(&got) {
            assert!(is_colour_isomorphic(p, &decode(q).unwrap()).unwrap());
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn prime_members_factor_as_themselves() {
    let sphere = code(&ColouredGraph::dipole_sphere(4)).unwrap();
    let f = factorize(&ColouredGraph::dipole_sphere(4)).unwrap();
    assert_eq!(f.pieces.len(), 1);
    assert_eq!(code(&f.pieces[0]).unwrap(), sphere);
    let m = m14();
    let (pieces, handles) = primes(&m);
    assert_eq!(pieces, vec![code(&m).unwrap()]);
    assert_eq!(handles, 0);
    // the 14-vertex bipartite member is RP3 # RP3
    let rp3 = common::catalogue(8).bipartite[0].clone();
    for c in &common::catalogue(14).bipartite {
        let (pieces, _) = primes(&decode(c).unwrap());
        assert_eq!(pieces, vec![rp3.clone(), rp3.clone()]);
    }
}
