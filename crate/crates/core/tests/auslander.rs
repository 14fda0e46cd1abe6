use ainf_core::auslander::{product_index_inequality, quotient_index_inequality, AuslanderCategory};
use ainf_core::corpus;
use ainf_core::filtration::{appendix_filtration, degree_filtration, index_tuples, radical, power, Filtration};
use ainf_core::linalg::Subspace;
use ainf_core::ExactField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: ExactField = ExactField::Rationals;

fn toy_gamma() -> AuslanderCategory {
    let r = corpus::toy();
    let (f, _) = appendix_filtration(&r, 1).unwrap();
    AuslanderCategory::build(&r, &f).unwrap()
}

#[test]
fn toy_hom_dimensions() {
    let a = toy_gamma();
    assert_eq!(
        a.hom_dims(),
        vec![vec![3, 2, 1, 1], vec![2, 2, 1, 0], vec![2, 2, 2, 1], vec![1, 1, 1, 1]]
    );
    assert_eq!(a.gamma().dim(), 23);
}

#[test]
fn toy_gamma_is_an_ainf_category() {
    let a = toy_gamma();
    assert!(a.gamma().validate_structure().passed());
    let rep = a.gamma().check_stasheff(None);
    assert!(rep.passed(), "{}", rep.summary());
}

#[test]
fn toy_gamma_lift_independence() {
    let a = toy_gamma();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rep = a.check_lift_independence(50, &mut rng);
    assert!(rep.passed(), "{}", rep.summary());
}

#[test]
fn index_inequalities_hold_exhaustively() {
    for n in 1..=8usize {
        for p in 1..=6usize {
            for idx in index_tuples(n, p + 1) {
                assert!(product_index_inequality(&idx), "{idx:?}");
                assert!(quotient_index_inequality(&idx, n), "{idx:?} n={n}");
            }
        }
    }
}

#[test]
fn single_step_filtration_gives_the_algebra() {
    let r = corpus::upper_triangular_3();
    let f = Filtration::new(vec![Subspace::full(Q, 6), Subspace::zero(Q, 6)]).unwrap();
    let a = AuslanderCategory::build(&r, &f).unwrap();
    assert_eq!(a.gamma().objects().len(), 1);
    assert_eq!(a.gamma().ops(), r.ops());
    a.embed_generator().unwrap();
}

#[test]
fn generator_embeds_at_object_zero() {
    let a = toy_gamma();
    let functor = a.embed_generator().unwrap();
    assert!(functor.is_strict());
    assert_eq!(functor.object_map(), &[0]);
    let sub = a.gamma().full_subcategory(&["0"]).unwrap();
    assert_eq!(sub.dim(), a.base().dim());
}

#[test]
fn radical_power_filtration_of_path_algebra() {
    let r = corpus::path_algebra_a3();
    let j = radical(&r).unwrap();
    let f = Filtration::new(vec![
        Subspace::full(Q, 6),
        j.clone(),
        power(&r, &j, 2).unwrap(),
        power(&r, &j, 3).unwrap(),
    ])
    .unwrap();
    assert_eq!(f.dims(), vec![6, 3, 1, 0]);
    let a = AuslanderCategory::build(&r, &f).unwrap();
    assert!(a.gamma().check_stasheff(None).passed());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(a.check_lift_independence(10, &mut rng).passed());
}

#[test]
fn flattening_is_a_unital_algebra() {
    let r = corpus::toy();
    let f = degree_filtration(&r).unwrap();
    let a = AuslanderCategory::build(&r, &f).unwrap();
    let flat = a.flatten().unwrap();
    assert!(flat.is_one_object());
    assert_eq!(flat.dim(), a.gamma().dim());
    assert!(flat.validate_structure().passed());
    assert!(flat.check_stasheff(Some(4)).passed());
}

#[test]
fn invalid_filtration_is_rejected() {
    let r = corpus::toy();
    let f = Filtration::new(vec![
        Subspace::full(Q, 3),
        Subspace::coordinate(Q, 3, [0, 2]),
        Subspace::zero(Q, 3),
    ])
    .unwrap();
    assert!(AuslanderCategory::build(&r, &f).is_err());
}
