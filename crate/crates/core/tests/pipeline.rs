use proptest::prelude::*;

use csrig::constructions::{cross_polytope_boundary, simplex_boundary};
use csrig::enumerative::{f_vector, g_number, h_polynomial};
use csrig::geometry::{realize_script, round_dyadic, RationalVector, RealizedPolytope};
use csrig::io::{self, ComplexFile};
use csrig::rigidity::{is_infinitesimally_rigid, rigidity_matrix, stress_basis, symmetric_stress_subspace};
use csrig::verify::{stacked_script, symmetric_script};
use csrig::{validate_cs, Face, Rational, SubdivisionMap};

fn coordinate_bits(p: &RealizedPolytope) -> u64 {
    p.embedding
        .coords()
        .values()
        .flat_map(|v| v.entries().iter().map(|x| x.numer().bits() + x.denom().bits()))
        .max()
        .unwrap_or(0)
}

#[test]
fn realized_file_round_trips_through_json() {
    let script = symmetric_script(4, 2, 3).unwrap();
    let p = realize_script(&script, 3).unwrap();
    let file = ComplexFile::new(p.complex.clone())
        .with_name("sym")
        .with_involution(p.involution.clone().unwrap())
        .with_embedding(p.embedding.clone());
    let text = file.to_canonical_string();
    let back = ComplexFile::parse(&text).unwrap();
    assert_eq!(back.to_canonical_string(), text);
    assert_eq!(back.complex, p.complex);
    assert_eq!(back.embedding.as_ref(), Some(&p.embedding));
}

#[test]
fn stacking_apexes_stay_small() {
    let p = realize_script(&symmetric_script(5, 4, 1).unwrap(), 1).unwrap();
    assert!(coordinate_bits(&p) <= 96, "{} bits", coordinate_bits(&p));
    p.verify_convex_position().unwrap();
}

#[test]
fn dyadic_rounding() {
    let v = RationalVector::new(vec![
        Rational::new(1.into(), 3.into()),
        Rational::new((-5).into(), 7.into()),
    ]);
    let r = round_dyadic(&v, 4);
    assert_eq!(r.entries()[0], Rational::new(5.into(), 16.into()));
    assert_eq!(r.entries()[1], Rational::new((-11).into(), 16.into()));
}

#[test]
fn subdivision_json_round_trip_keeps_identity() {
    let base = cross_polytope_boundary(3).unwrap().complex().clone();
    let s = SubdivisionMap::stellar(&base, &Face::from([0, 2, 4]), 6)
        .unwrap()
        .refine_stellar(&Face::from([0, 2]), 7)
        .unwrap();
    let back = io::subdivision_from_json(&io::subdivision_to_json(&s)).unwrap();
    assert_eq!(back, s);
    assert!(back.check_ellh_identity());
}

#[test]
fn stacked_simplex_h_vector() {
    let c = stacked_script(4, 3, 0).unwrap().run().unwrap().complex;
    // a stacked 4-polytope with 8 vertices has h = (1, 4, 4, 4, 1)
    assert_eq!(h_polynomial(&c).unwrap().padded(5), vec![1, 4, 4, 4, 1]);
    assert_eq!(g_number(&c, 2).unwrap(), 0);
    assert!(!c.is_prime().unwrap());
}

#[test]
fn simplex_boundary_is_not_a_prime_polytope() {
    let c = simplex_boundary(4).unwrap();
    assert!(!c.is_prime_polytope().unwrap());
    assert_eq!(f_vector(&c).counts(), &[1, 5, 10, 10, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn symmetric_stackings_keep_g2_and_symmetry(d in 3usize..=4, k in 0usize..=3, seed in 0u64..1000) {
        let script = symmetric_script(d, k, seed).unwrap();
        let r = script.run().unwrap();
        let alpha = r.involution.clone().unwrap();
        prop_assert!(validate_cs(&r.complex, &alpha).is_ok());
        let want = (d * (d - 1) / 2) as i64 - d as i64;
        prop_assert_eq!(g_number(&r.complex, 2).unwrap(), want);
        let p = realize_script(&script, seed).unwrap();
        prop_assert_eq!(&p.complex, &r.complex);
        let g = p.complex.graph();
        prop_assert!(is_infinitesimally_rigid(&g, &p.embedding).unwrap());
        let b = stress_basis(&rigidity_matrix(&g, &p.embedding).unwrap());
        let sym = symmetric_stress_subspace(&b, &alpha).unwrap();
        prop_assert_eq!(b.dim() as i64, want);
        prop_assert!(sym.all_symmetric);
    }

    #[test]
    fn stacked_simplices_are_stress_free(d in 3usize..=5, k in 0usize..=4, seed in 0u64..1000) {
        let p = realize_script(&stacked_script(d, k, seed).unwrap(), seed).unwrap();
        let g = p.complex.graph();
        prop_assert_eq!(stress_basis(&rigidity_matrix(&g, &p.embedding).unwrap()).dim(), 0);
        prop_assert_eq!(g.num_vertices(), d + 1 + k);
    }
}
