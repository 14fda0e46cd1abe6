use ainf_core::ainf::{lin_add_terms, lin_to_terms, Lin};
use ainf_core::corpus;
use ainf_core::hochschild::{
    coboundary_isomorphism, cochain_basis, cocycle_basis, deform_by_cocycle, hochschild_differential, random_combination,
    square_zero_extension, Bimodule, DeformOptions, HochschildCochain, HochschildError,
};
use ainf_core::{AInfCategory, ExactField, Terms};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: ExactField = ExactField::Rationals;

fn mul(c: &AInfCategory, x: &Terms, y: &Terms) -> Terms {
    let mut acc = Lin::new();
    for (a, p) in x {
        for (b, q) in y {
            if let Some(out) = c.op(&[*a, *b]) {
                lin_add_terms(&mut acc, &(p * q), out);
            }
        }
    }
    lin_to_terms(acc)
}

fn value(phi: &HochschildCochain, args: &Terms, rest: &[usize], before: &[usize]) -> Terms {
    // φ(before, args, rest) with `args` a linear combination in one slot
    let mut acc = Lin::new();
    for (a, x) in args {
        let mut key = before.to_vec();
        key.push(*a);
        key.extend_from_slice(rest);
        if let Some(v) = phi.component(&key) {
            lin_add_terms(&mut acc, x, v);
        }
    }
    lin_to_terms(acc)
}

/// Textbook Hochschild differential for an ungraded algebra with M = C.
fn classical(c: &AInfCategory, phi: &HochschildCochain, k: usize, tuple: &[usize]) -> Terms {
    let one = Q.one();
    let basis = |i: usize| vec![(i, one.clone())];
    let mut acc = Lin::new();
    let first = phi.component(&tuple[1..]).cloned().unwrap_or_default();
    lin_add_terms(&mut acc, &one, &mul(c, &basis(tuple[0]), &first));
    for i in 0..k {
        let prod = mul(c, &basis(tuple[i]), &basis(tuple[i + 1]));
        let v = value(phi, &prod, &tuple[i + 2..], &tuple[..i]);
        lin_add_terms(&mut acc, &one.clone().signed(i % 2 == 0), &v);
    }
    let last = phi.component(&tuple[..k]).cloned().unwrap_or_default();
    lin_add_terms(&mut acc, &one.clone().signed((k + 1) % 2 == 1), &mul(c, &last, &basis(tuple[k])));
    lin_to_terms(acc)
}

fn graded_corpus() -> Vec<(&'static str, AInfCategory)> {
    let mut v = corpus::associative_corpus();
    v.push(("toy", corpus::toy()));
    v.push(("small_dg", corpus::small_dg()));
    v.push(("two_degree_chain", corpus::two_degree_chain()));
    v.push(("a2", corpus::a2_category()));
    v
}

#[test]
fn square_zero_extensions_satisfy_stasheff() {
    for (name, c) in graded_corpus() {
        let m = Bimodule::diagonal(&c);
        for shift in -2..=2 {
            let e = square_zero_extension(&c, &m, shift).unwrap();
            assert_eq!(e.dim(), 2 * c.dim());
            let rep = e.check_stasheff(Some(5));
            assert!(rep.passed(), "{name} shift {shift}: {rep:?}");
        }
    }
}

#[test]
fn differential_matches_textbook_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, c) in corpus::associative_corpus() {
        if c.dim() > 5 {
            continue;
        }
        let m = Bimodule::diagonal(&c);
        for k in 1..=2usize {
            let basis = cochain_basis(&c, &m, k as i64, k, false);
            for _ in 0..5 {
                let phi = random_combination(&basis, k as i64, Q, &mut rng);
                let d = hochschild_differential(&c, &m, &phi).unwrap();
                for first in 0..c.dim() {
                    for t in c.composable_tuples_from(first, k + 1) {
                        let want = classical(&c, &phi, k, &t);
                        let got = d.component(&t).cloned().unwrap_or_default();
                        assert_eq!(got, want, "{name} k={k} {t:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn differential_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, c) in graded_corpus() {
        if c.dim() > 5 {
            continue;
        }
        let m = Bimodule::diagonal(&c);
        for n in -1..=3i64 {
            for k in 0..=2usize {
                let basis = cochain_basis(&c, &m, n, k, false);
                let phi = random_combination(&basis, n, Q, &mut rng);
                let d = hochschild_differential(&c, &m, &phi).unwrap();
                let dd = hochschild_differential(&c, &m, &d).unwrap();
                assert!(dd.is_zero(), "{name} n={n} k={k}: {dd:?}");
            }
        }
    }
}

fn dual_eta() -> (AInfCategory, Bimodule, HochschildCochain) {
    let c = corpus::dual_numbers();
    let m = Bimodule::diagonal(&c);
    let eps = c.element("eps").unwrap();
    let table = [(vec![eps, eps], vec![(c.element("1").unwrap(), Q.one())])].into_iter().collect();
    (c.clone(), m, HochschildCochain::from_table(2, 2, table))
}

#[test]
fn deforming_dual_numbers() {
    let (c, m, eta) = dual_eta();
    assert!(hochschild_differential(&c, &m, &eta).unwrap().is_zero());
    let e = deform_by_cocycle(&c, &m, &eta, DeformOptions::default()).unwrap();
    assert_eq!(e.dim(), 4);
    let eps = e.element("eps").unwrap();
    assert_eq!(e.format_terms(e.op(&[eps, eps]).unwrap()), vec![("1'".to_string(), "1".to_string())]);
    assert!(e.check_stasheff(Some(4)).passed());
}

#[test]
fn non_normalized_cochains() {
    let c = corpus::dual_numbers();
    let m = Bimodule::diagonal(&c);
    let one = c.element("1").unwrap();
    let eps = c.element("eps").unwrap();
    let table = [(vec![one, eps], vec![(eps, Q.one())])].into_iter().collect();
    let eta = HochschildCochain::from_table(2, 2, table);
    assert!(matches!(
        deform_by_cocycle(&c, &m, &eta, DeformOptions::default()),
        Err(HochschildError::NotNormalized(_))
    ));
    assert!(!hochschild_differential(&c, &m, &eta).unwrap().is_zero());
    let e = deform_by_cocycle(&c, &m, &eta, DeformOptions { require_normalized: false }).unwrap();
    assert!(!e.check_stasheff(Some(3)).passed());
}

#[test]
fn cocycle_condition_matches_stasheff() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut hits = (0, 0);
    for (name, c) in graded_corpus() {
        if c.dim() > 5 {
            continue;
        }
        let m = Bimodule::diagonal(&c);
        for n in 2..=3i64 {
            for k in 2..=3usize {
                let basis = cochain_basis(&c, &m, n, k, true);
                if basis.is_empty() {
                    continue;
                }
                for _ in 0..3 {
                    let eta = random_combination(&basis, n, Q, &mut rng);
                    let closed = hochschild_differential(&c, &m, &eta).unwrap().is_zero();
                    let e = deform_by_cocycle(&c, &m, &eta, DeformOptions::default()).unwrap();
                    let ok = e.check_stasheff(Some(k + c.arity_bound())).passed();
                    assert_eq!(closed, ok, "{name} n={n} k={k}");
                    if closed { hits.0 += 1 } else { hits.1 += 1 }
                }
                for eta in cocycle_basis(&c, &m, n, k).unwrap() {
                    let e = deform_by_cocycle(&c, &m, &eta, DeformOptions::default()).unwrap();
                    assert!(e.check_stasheff(Some(k + c.arity_bound())).passed(), "{name} cocycle n={n} k={k}");
                    hits.0 += 1;
                }
            }
        }
    }
    assert!(hits.0 > 0 && hits.1 > 0, "{hits:?}");
}

#[test]
fn coboundaries_are_trivial_deformations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, c) in graded_corpus() {
        if c.dim() > 5 {
            continue;
        }
        let m = Bimodule::diagonal(&c);
        for n in 1..=2i64 {
            let k = n as usize;
            let basis = cochain_basis(&c, &m, n, k, true);
            for _ in 0..3 {
                let phi = random_combination(&basis, n, Q, &mut rng);
                let (deformed, plain, f) = coboundary_isomorphism(&c, &m, &phi).unwrap();
                assert!(deformed.check_stasheff(Some(4)).passed(), "{name} n={n}");
                let rep = f.verify(&deformed, &plain, Some(4));
                assert!(rep.passed(), "{name} n={n}: {rep:?}");
            }
        }
    }
}

#[test]
fn direct_sum_dimensions() {
    let c = corpus::upper_triangular_2();
    let m = Bimodule::diagonal(&c);
    let z = Bimodule::zero();
    let s = m.direct_sum(&m, &c);
    assert_eq!(s.dim(), 2 * c.dim());
    assert_eq!(m.direct_sum(&z, &c), m);
    let e = square_zero_extension(&c, &s, 0).unwrap();
    assert!(e.check_stasheff(Some(4)).passed());
    for k in 0..=2 {
        assert_eq!(cochain_basis(&c, &s, k as i64, k, false).len(), 2 * cochain_basis(&c, &m, k as i64, k, false).len());
    }
}

#[test]
fn degree_zero_differential_is_a_commutator() {
    let c = corpus::upper_triangular_2();
    let m = Bimodule::diagonal(&c);
    let x: Terms = vec![(1, Q.from_i64(2)), (2, Q.from_i64(-1))];
    let phi = HochschildCochain::from_table(0, 0, [(vec![0], x.clone())].into_iter().collect());
    let d = hochschild_differential(&c, &m, &phi).unwrap();
    for a in 0..c.dim() {
        let ea = vec![(a, Q.one())];
        let mut want = Lin::new();
        lin_add_terms(&mut want, &Q.one(), &mul(&c, &ea, &x));
        lin_add_terms(&mut want, &Q.from_i64(-1), &mul(&c, &x, &ea));
        assert_eq!(d.component(&[a]).cloned().unwrap_or_default(), lin_to_terms(want), "a = {a}");
    }
}

#[test]
fn spec_cocycle_on_dual_numbers() {
    let (c, m, eta) = dual_eta();
    let d = hochschild_differential(&c, &m, &eta).unwrap();
    let eps = c.element("eps").unwrap();
    assert!(d.component(&[eps, eps, eps]).is_none());
}

#[test]
fn trivial_extensions_and_deformations() {
    let c = corpus::toy();
    let e = square_zero_extension(&c, &Bimodule::zero(), 3).unwrap();
    assert_eq!(e, c);
    let m = Bimodule::diagonal(&c);
    for n in 2..=3 {
        let plain = square_zero_extension(&c, &m, n - 2).unwrap();
        let d = deform_by_cocycle(&c, &m, &HochschildCochain::zero(n), DeformOptions::default()).unwrap();
        assert_eq!(d, plain);
    }
}

#[test]
fn degree_mismatch_is_rejected() {
    let (c, m, eta) = dual_eta();
    let wrong = HochschildCochain { degree: 3, ..eta };
    assert!(matches!(
        deform_by_cocycle(&c, &m, &wrong, DeformOptions::default()),
        Err(HochschildError::CochainDegree { .. })
    ));
    assert!(hochschild_differential(&c, &m, &wrong).is_err());
}
