use num_complex::Complex64;
use proptest::prelude::*;

use omlkit::correlations::{boolean_prbox_analysis_with, boolean_prbox_host, parities_with_anti, CorrelationSpec};
use omlkit::exactlin::{
    int_vector, schmidt_rank, subspace_lattice_closure, tensor_vector, GaussianRational, RaySeed, Subspace,
};
use omlkit::lattice::format::LatticeFile;
use omlkit::lattice::generators::{boolean, mo, o6, pasted};
use omlkit::povm::{
    cabello_povms, entwined, max_abs, noncontextual_assignment_search, post_measurement_state, projector, sequential_povm,
    trace_distance_pure, Frame, ProjectiveMeasurement, DEFAULT_TOL,
};
use omlkit::products::ProductEmbedding;
use omlkit::FiniteOml;

fn catalog_lattice() -> impl Strategy<Value = FiniteOml> {
    prop_oneof![
        (1usize..=4).prop_map(|n| boolean(n).unwrap()),
        (1usize..=5).prop_map(|n| mo(n).unwrap()),
        prop::collection::vec(2usize..=3, 1..=3).prop_map(|b| pasted(&b).unwrap()),
        Just(o6()),
    ]
}

fn gaussian_int() -> impl Strategy<Value = GaussianRational> {
    (-2i64..=2, -1i64..=1).prop_map(|(re, im)| GaussianRational::from_ints(re, im))
}

fn exact_vector(dim: usize) -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec(gaussian_int(), dim)
}

fn subspace(dim: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(exact_vector(dim), 0..=dim).prop_map(move |vs| Subspace::span(dim, &vs).unwrap())
}

fn unit_columns(d: usize) -> impl Strategy<Value = Vec<Vec<Complex64>>> {
    prop::collection::vec(prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d), d)
        .prop_map(|cols| cols.into_iter().map(|c| c.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()).collect())
}

fn qubit_projector() -> impl Strategy<Value = Vec<Complex64>> {
    (0.05f64..3.09, 0.0f64..std::f64::consts::TAU).prop_map(|(t, p)| {
        vec![Complex64::new((t / 2.0).cos(), 0.0), Complex64::from_polar((t / 2.0).sin(), p)]
    })
}

fn check_lattice_laws(l: &FiniteOml) -> Result<(), TestCaseError> {
    let elems: Vec<_> = l.elements().collect();
    for &a in &elems {
        prop_assert_eq!(l.ortho(l.ortho(a)), a);
        prop_assert_eq!(l.meet(a, l.ortho(a)), l.zero());
        prop_assert_eq!(l.join(a, l.ortho(a)), l.one());
        for &b in &elems {
            let (m, j) = (l.meet(a, b), l.join(a, b));
            prop_assert_eq!(l.ortho(m), l.join(l.ortho(a), l.ortho(b)));
            prop_assert_eq!(l.ortho(j), l.meet(l.ortho(a), l.ortho(b)));
            if l.leq(a, b) {
                prop_assert!(l.leq(l.ortho(b), l.ortho(a)));
            }
            for &c in &elems {
                // greatest lower bound and least upper bound, from the order alone
                prop_assert_eq!(l.leq(c, a) && l.leq(c, b), l.leq(c, m));
                prop_assert_eq!(l.leq(a, c) && l.leq(b, c), l.leq(j, c));
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_lattices_obey_the_laws(l in catalog_lattice()) {
        check_lattice_laws(&l)?;
    }

    #[test]
    fn orthomodularity_matches_commutation_symmetry(l in catalog_lattice()) {
        let om = l.check_orthomodular().holds();
        prop_assert_eq!(om, l.check_commutation_symmetry().holds());
        prop_assert_eq!(om, l.is_orthomodular());
    }

    #[test]
    fn comparable_elements_commute(l in catalog_lattice()) {
        prop_assume!(l.is_orthomodular());
        for a in l.elements() {
            for b in l.elements() {
                if l.leq(a, b) {
                    prop_assert!(l.commutes(a, b) && l.commutes(b, a));
                }
            }
        }
    }

    #[test]
    fn lattice_files_round_trip(l in catalog_lattice()) {
        let text = LatticeFile::from_lattice(&l).to_json();
        let back = LatticeFile::from_json(&text).unwrap().build(64).unwrap();
        prop_assert_eq!(back.names(), l.names());
        for a in l.elements() {
            prop_assert_eq!(back.ortho(a), l.ortho(a));
            for b in l.elements() {
                prop_assert_eq!(back.leq(a, b), l.leq(a, b));
            }
        }
    }

    #[test]
    fn closure_fragments_are_orthomodular_sublattices(
        rays in prop::collection::vec(exact_vector(3), 1..=3),
    ) {
        let rays: Vec<_> = rays.into_iter().filter(|v| v.iter().any(|x| *x != GaussianRational::int(0))).collect();
        prop_assume!(!rays.is_empty());
        let Ok(f) = subspace_lattice_closure(&RaySeed::new(3, rays, 2), 256) else {
            return Err(TestCaseError::reject("fragment over the cap"));
        };
        // truncated closures need not be orthomodular; closed ones must be
        prop_assume!(f.is_sublattice());
        let l = f.lattice();
        check_lattice_laws(l)?;
        prop_assert!(l.check_orthomodular().holds());
        for e in l.elements() {
            prop_assert_eq!(f.subspace(l.ortho(e)), &f.subspace(e).ortho());
        }
    }

    #[test]
    fn subspace_dimension_formula(u in subspace(4), v in subspace(4)) {
        let s = u.sum(&v).unwrap();
        let m = u.intersect(&v).unwrap();
        prop_assert_eq!(s.dim() + m.dim(), u.dim() + v.dim());
        prop_assert!(m.is_subspace_of(&u).unwrap() && u.is_subspace_of(&s).unwrap());
        prop_assert_eq!(s.ortho(), u.ortho().intersect(&v.ortho()).unwrap());
    }

    #[test]
    fn orthocomplement_is_an_involution(u in subspace(4)) {
        let w = u.ortho();
        prop_assert_eq!(w.dim(), 4 - u.dim());
        prop_assert_eq!(&w.ortho(), &u);
        prop_assert!(u.intersect(&w).unwrap().is_zero());
        prop_assert!(u.sum(&w).unwrap().is_full());
    }

    #[test]
    fn product_vectors_have_schmidt_rank_one(x in exact_vector(2), y in exact_vector(3)) {
        let zero = GaussianRational::int(0);
        prop_assume!(x.iter().any(|c| *c != zero) && y.iter().any(|c| *c != zero));
        prop_assert_eq!(schmidt_rank(&tensor_vector(&x, &y), 2, 3).unwrap(), 1);
    }

    #[test]
    fn factor_images_commute(m in 1usize..=2, n in 1usize..=2) {
        let pe = ProductEmbedding::boolean_product(m, n).unwrap();
        let p = pe.product();
        for a in pe.factor_a().elements() {
            for b in pe.factor_b().elements() {
                prop_assert!(p.commutes(pe.inj_a(a), pe.inj_b(b)));
            }
        }
    }

    #[test]
    fn prbox_triples_do_not_depend_on_which_correlation_is_negative(k in 0usize..4) {
        let (host, standard) = boolean_prbox_host();
        let spec = CorrelationSpec { parities: parities_with_anti(k), ..standard };
        let r = boolean_prbox_analysis_with(&host, &spec);
        prop_assert!(r.holds());
        prop_assert_eq!(r.all_four, 0);
    }

    #[test]
    fn sequential_povms_ignore_the_sign_of_theta(theta in -3.1f64..3.1) {
        let z = ProjectiveMeasurement::z_basis();
        let plus = sequential_povm(&z, &ProjectiveMeasurement::spin(theta)).unwrap();
        let minus = sequential_povm(&z, &ProjectiveMeasurement::spin(-theta)).unwrap();
        for (e, f) in plus.effects().iter().zip(minus.effects()) {
            prop_assert!(max_abs(&(&e.matrix - &f.matrix)) < 1e-12);
        }
        prop_assert!(plus.validate(DEFAULT_TOL).is_valid());

        let up = omlkit::povm::CVector::from_column_slice(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let s1 = post_measurement_state(&up, &z, &ProjectiveMeasurement::spin(theta), (0, 0), DEFAULT_TOL).unwrap();
        let s2 = post_measurement_state(&up, &z, &ProjectiveMeasurement::spin(-theta), (0, 0), DEFAULT_TOL).unwrap();
        prop_assert!((trace_distance_pure(&s1, &s2) - theta.sin().abs()).abs() < 1e-9);
    }

    #[test]
    fn cabello_search_ignores_order(a in qubit_projector(), b in qubit_projector(), c in qubit_projector()) {
        let (pa, pb, pc) = (projector(&a), projector(&b), projector(&c));
        let Ok(povms) = cabello_povms(&pa, &pb, &pc, DEFAULT_TOL) else {
            return Err(TestCaseError::reject("degenerate triple"));
        };
        for p in &povms {
            prop_assert!(p.validate(DEFAULT_TOL).is_valid());
        }
        let forward = noncontextual_assignment_search(&povms, DEFAULT_TOL).unwrap();
        let [x, y, z] = povms;
        let backward = noncontextual_assignment_search(&[z, x, y], DEFAULT_TOL).unwrap();
        prop_assert_eq!(forward.total, 64);
        prop_assert_eq!(&forward.labels, &backward.labels);
        prop_assert_eq!(forward.valid, backward.valid);
    }

    #[test]
    fn entwinement_is_symmetric_and_irreflexive(c1 in unit_columns(3), c2 in unit_columns(3)) {
        let (Ok(f1), Ok(f2)) = (Frame::orthonormalized(&c1, 1e-6), Frame::orthonormalized(&c2, 1e-6)) else {
            return Err(TestCaseError::reject("dependent columns"));
        };
        prop_assert_eq!(entwined(&f1, &f2, DEFAULT_TOL).unwrap(), entwined(&f2, &f1, DEFAULT_TOL).unwrap());
        prop_assert!(!entwined(&f1, &f1, DEFAULT_TOL).unwrap());
    }
}

#[test]
fn integer_vectors_build_rays() {
    let r = Subspace::ray(&int_vector(&[1, 0, 0, 1])).unwrap();
    assert_eq!(r.dim(), 1);
    assert_eq!(schmidt_rank(&int_vector(&[1, 0, 0, 1]), 2, 2).unwrap(), 2);
}
