use omlkit::demos::{axis_fragment, bell_fragment_seed};
use omlkit::exactlin::{
    int_vector, lift_first, lift_second, schmidt_rank, subspace_closure, subspace_lattice_closure, RaySeed, Subspace,
    DEFAULT_CLOSURE_CAP,
};
use omlkit::products::{find_entangled_atoms, strong_perspectivity_witness, verify_product_conditions, ProductEmbedding};

#[test]
fn bell_fragment_over_the_axis_qubits() {
    let product = subspace_lattice_closure(&bell_fragment_seed(), DEFAULT_CLOSURE_CAP).unwrap();
    let l = product.lattice();
    assert_eq!(l.len(), 24);
    assert!(l.is_orthomodular() && product.is_sublattice());

    let factor = axis_fragment();
    let pe = ProductEmbedding::from_fragments(&factor, &factor, &product).unwrap();
    let r = verify_product_conditions(&pe).unwrap();
    assert!(r.independence_ok() && r.boolean_block_ok());
    // a finite fragment is reducible, and the axis images miss the Bell rays
    assert!(!r.piron_ok() && !r.generation_ok());

    let names: Vec<&str> = find_entangled_atoms(&pe).into_iter().map(|a| l.name(a)).collect();
    assert_eq!(names, ["<(1,0,0,1)>", "<(1,0,0,-1)>"]);

    let x = l.element("<(1,0,0,0)>").unwrap();
    let y = l.element("<(0,0,0,1)>").unwrap();
    let w = strong_perspectivity_witness(l, x, y).unwrap();
    assert_eq!(l.name(w.axis), "<(1,0,0,1)>");
    assert_eq!(product.subspace(w.global).dim(), 3);
    assert_eq!(schmidt_rank(&product.subspace(w.axis).basis()[0], 2, 2).unwrap(), 2);
}

#[test]
fn plane_images_of_two_mo2_factors() {
    let rays = [int_vector(&[1, 0]), int_vector(&[1, 1])];
    let factor = subspace_lattice_closure(&RaySeed::new(2, rays.to_vec(), 1), DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(factor.lattice().len(), 6);

    let mut seeds = Vec::new();
    for r in &rays {
        let s = Subspace::ray(r).unwrap();
        for t in [s.clone(), s.ortho()] {
            seeds.push(lift_first(&t, 2));
            seeds.push(lift_second(2, &t));
        }
    }
    let product = subspace_closure(4, &seeds, 2, DEFAULT_CLOSURE_CAP).unwrap();
    let l = product.lattice();
    assert_eq!(l.len(), 114);
    // the depth-2 truncation of an infinite sublattice
    assert!(!product.is_sublattice());
    assert!(!l.check_orthomodular().holds());

    let pe = ProductEmbedding::from_fragments(&factor, &factor, &product).unwrap();
    let r = verify_product_conditions(&pe).unwrap();
    assert!(r.independence_ok() && r.boolean_block_ok() && r.generation_ok());
    assert!(!r.piron_ok());
    assert!(find_entangled_atoms(&pe).is_empty());
}
