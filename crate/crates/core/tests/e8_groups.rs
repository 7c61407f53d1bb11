use std::cmp::Ordering;

use num_bigint::BigUint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seidel_forge_core::enumeration::E8Frame;
use seidel_forge_core::lattice::{n_r, LatticeSpec};
use seidel_forge_core::orbits::{
    burnside_subset_counts, counts_as_u64, lex_cmp, min_image, subset_orbit_transversal, weyl_group_on_roots,
};
use seidel_forge_core::perm::PermGroup;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn e8_orders() {
    let frame = E8Frame::new().unwrap();
    assert_eq!(frame.roots.len(), 240);
    assert_eq!(frame.weyl.order(), big(696_729_600));
    assert_eq!(frame.stabilizer.order(), big(2_903_040));
    assert_eq!(frame.weyl.order(), big(240) * frame.stabilizer.order());
    assert_eq!(frame.class_group.order(), big(1_451_520));
    assert!(frame.weyl.is_transitive());
    assert!(frame.class_group.is_transitive());
    assert_eq!(n_r(&LatticeSpec::e8(), &frame.switching_root).unwrap().len(), 56);
    assert_eq!(frame.classes.len(), 28);
    let r = frame.switching_root_index;
    assert!(frame.stabilizer.generators().iter().all(|g| g.apply(r) == r));
}

#[test]
fn e8_order_survives_base_change() {
    let w = weyl_group_on_roots(&LatticeSpec::e8()).unwrap();
    let rebased = PermGroup::with_base(240, w.group.generators().to_vec(), &[239, 17, 100]).unwrap();
    assert_eq!(rebased.order(), w.group.order());
    assert_eq!(rebased.base()[..3], [239, 17, 100]);
}

#[test]
fn orbit_stabilizer_e7() {
    let spec = LatticeSpec::e(7).unwrap();
    let w = weyl_group_on_roots(&spec).unwrap();
    assert_eq!(w.roots.len(), 126);
    assert_eq!(w.group.order(), big(2_903_040));
    let r = w.index_of(&spec.standard_switching_root()).unwrap();
    let stab = w.group.point_stabilizer(r).unwrap();
    assert_eq!(big(w.group.orbit(r).len() as u64) * stab.order(), w.group.order());
}

#[test]
fn class_orbit_counts_and_transversals() {
    let frame = E8Frame::new().unwrap();
    let g = &frame.class_group;
    let counts = burnside_subset_counts(g).unwrap();
    let c = counts_as_u64(&counts).unwrap();
    assert_eq!(c.len(), 29);
    assert_eq!((c[0], c[6], c[14], c[22], c[28]), (1, 10, 103, 10, 1));
    assert!(counts.is_complement_symmetric());
    for n in (0..=8).chain(20..=28) {
        let t = subset_orbit_transversal(g, n).unwrap();
        assert_eq!(t.len() as u64, c[n], "n = {n}");
        assert!(t.iter().all(|m| m.count_ones() as usize == n));
    }
    assert!(subset_orbit_transversal(g, 14).is_err());
}

#[test]
fn transversal_members_are_orbit_minima() {
    let frame = E8Frame::new().unwrap();
    let g = &frame.class_group;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let elements: Vec<_> = (0..1000).map(|_| g.random_element(&mut rng)).collect();
    for n in [3, 5, 6, 8, 21, 25] {
        for rep in subset_orbit_transversal(g, n).unwrap() {
            for e in &elements {
                assert_ne!(lex_cmp(e.apply_mask(rep), rep), Ordering::Less, "n = {n}");
            }
        }
    }
    // a random set and any of its images share a minimal image
    for _ in 0..200 {
        let set = rng.next_u64() & ((1 << 28) - 1);
        let e = &elements[(rng.next_u32() % 1000) as usize];
        assert_eq!(min_image(g, set).unwrap(), min_image(g, e.apply_mask(set)).unwrap());
    }
}
