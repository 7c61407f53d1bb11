use std::collections::BTreeSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seidel_forge_core::canon::canonical_key;
use seidel_forge_core::enumeration::{
    brute_force_counts, describe_subset, distinct_keys, omega_table, phi, representatives, s_table, small_exact_counts,
    transversal, verify_cao, verify_fiber_n6, E8Frame, OracleCounts,
};
use seidel_forge_core::graph::Graph;
use seidel_forge_core::lattice::gram_to_graph;
use seidel_forge_core::orbits::{mask_to_points, points_to_mask};

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut points: Vec<usize> = (0..28).collect();
    for i in 0..n {
        let j = i + (rng.next_u32() as usize % (28 - i));
        points.swap(i, j);
    }
    let mut out = points[..n].to_vec();
    out.sort();
    out
}

#[test]
fn phi_boundary_cases() {
    let frame = E8Frame::new().unwrap();
    assert_eq!(phi(&frame, &[]).unwrap(), canonical_key(&Graph::empty(0).unwrap()));
    let all: Vec<usize> = (0..28).collect();
    assert_eq!(representatives(&frame, 28).unwrap().len(), 1);
    assert_eq!(phi(&frame, &all).unwrap().order(), 28);
    assert!(phi(&frame, &[0, 0]).is_err());
    assert!(phi(&frame, &[28]).is_err());
}

#[test]
fn phi_is_orbit_invariant() {
    let frame = E8Frame::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..1000 {
        let n = 1 + rng.next_u32() as usize % 12;
        let subset = random_subset(&mut rng, n);
        let g = frame.class_group.random_element(&mut rng);
        let image = mask_to_points(g.apply_mask(points_to_mask(&subset)));
        assert_eq!(phi(&frame, &subset).unwrap(), phi(&frame, &image).unwrap());
    }
}

#[test]
fn phi_ignores_the_choice_of_class_member() {
    let frame = E8Frame::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = 1 + rng.next_u32() as usize % 10;
        let subset = random_subset(&mut rng, n);
        let vectors: Vec<_> = subset
            .iter()
            .map(|&i| {
                let c = &frame.classes[i];
                if rng.next_u32() % 2 == 0 { c.representative.clone() } else { c.partner.clone() }
            })
            .collect();
        let key = canonical_key(&gram_to_graph(&vectors).unwrap());
        assert_eq!(key, phi(&frame, &subset).unwrap());
    }
}

#[test]
fn representatives_are_bounded_and_injective() {
    let frame = E8Frame::new().unwrap();
    let omega = omega_table(&frame).unwrap();
    for n in (0..=8).chain(20..=28) {
        let reps = representatives(&frame, n).unwrap();
        assert_eq!(reps.len() as u64, omega.raw_orbit_counts[n]);
        for r in &reps {
            assert!(r.bounded && r.rank <= 7, "n = {n}, subset {:?}", r.subset);
        }
        let expected = omega.raw_orbit_counts[n] - u64::from(n == 6);
        assert_eq!(distinct_keys(&reps) as u64, expected, "n = {n}");
        assert_eq!(expected, omega.omega[n]);
    }
}

#[test]
fn fiber_at_six() {
    let frame = E8Frame::new().unwrap();
    let report = verify_fiber_n6(&frame).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.distinct_keys, 9);
    assert_eq!(report.repeated_keys, vec![canonical_key(&Graph::complete(6).unwrap())]);
    let witnesses: BTreeSet<_> = report.witnesses.iter().map(|w| w.subset.clone()).collect();
    let t: BTreeSet<_> = transversal(&frame, 6).unwrap().into_iter().collect();
    assert!(witnesses.is_subset(&t));
    let names: Vec<_> = report.witnesses.iter().map(|w| describe_subset(&frame, &w.subset).unwrap().lattice).collect();
    assert_eq!(names, ["A7", "A7"]);
}

#[test]
fn s_table_identities() {
    let frame = E8Frame::new().unwrap();
    let omega = omega_table(&frame).unwrap();
    let small = small_exact_counts(&frame).unwrap();
    let table = s_table(28, &omega, &small).unwrap();
    for n in 8..=28 {
        assert_eq!(table.s[n], table.s_e[n] + 2, "n = {n}");
        let excess = table.s[n] - omega.omega[n];
        let expected = if n <= 12 { n as u64 - 6 } else { n as u64 / 2 + 1 };
        assert_eq!(excess, expected, "n = {n}");
    }
    for n in 0..=7 {
        assert_eq!(table.s[n], omega.omega[n]);
    }
    let zero = s_table(0, &omega, &small).unwrap();
    assert_eq!((zero.s.clone(), zero.s_e.clone()), (vec![1], vec![0]));
}

#[test]
fn oracle_agrees_with_lattice_pipeline() {
    let frame = E8Frame::new().unwrap();
    let omega = omega_table(&frame).unwrap();
    let small = small_exact_counts(&frame).unwrap();
    let table = s_table(7, &omega, &small).unwrap();
    for n in 0..=7 {
        let oracle = brute_force_counts(n).unwrap();
        let expected = OracleCounts { s: table.s[n], s_e: table.s_e[n], omega: omega.omega[n] };
        assert_eq!(oracle, expected, "n = {n}");
    }
}

#[test]
fn cao_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let report = verify_cao(10, 400, &mut rng).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert!(report.rank_checks > 50);
    assert!(verify_cao(11, 1, &mut rng).is_err());
}
