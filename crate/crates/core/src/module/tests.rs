use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactla::Field;
use crate::testkit::{dual_numbers, fix_a, fix_a_dprime, fix_a_prime, Q};

#[test]
fn standard_dimensions() {
    let a = fix_a(Q);
    assert_eq!(projective(&a, 0).unwrap().dim(), 3);
    assert_eq!(projective(&a, 1).unwrap().dim(), 4);
    assert_eq!(injective(&a, 1).unwrap().dim(), 3);
    let d = dual_numbers(Q);
    assert_eq!(projective(&d, 0).unwrap().dim(), 2);
    assert_eq!(simple(&d, 0).unwrap().dim(), 1);
    for alg in [a, d, fix_a_prime(Q), fix_a_dprime(Q)] {
        for i in 0..alg.num_prims() {
            for kind in [StandardKind::Simple, StandardKind::Projective, StandardKind::Injective] {
                standard_module(&alg, kind, i).unwrap().verify().unwrap();
            }
        }
        regular(&alg).verify().unwrap();
    }
}

#[test]
fn representation_matches_projective() {
    // P(1) of A as a representation: e1 -> {e1, a}, e2 -> {b}
    let a = fix_a(Q);
    let f = Q;
    let ma = Mat::from_i64(f, &[&[0, 0], &[1, 0]]);
    let mb = Mat::from_i64(f, &[&[1, 0]]);
    let mg = Mat::zeros(f, 2, 1);
    let m = Module::from_representation(&a, &[2, 1], &[ma, mb, mg]).unwrap();
    assert!(is_isomorphic(&m, &projective(&a, 0).unwrap(), 64, 1).unwrap().is_iso());
    // violating a*a = 0
    let bad = Mat::from_i64(f, &[&[0, 1], &[1, 0]]);
    let r = Module::from_representation(&a, &[2, 1], &[bad, Mat::from_i64(f, &[&[1, 0]]), Mat::zeros(f, 2, 1)]);
    assert!(matches!(r, Err(ModuleError::NotAModule(_))));
}

#[test]
fn hom_examples() {
    let d = dual_numbers(Q);
    let s = simple(&d, 0).unwrap();
    assert_eq!(hom_dim(&s, &s).unwrap(), 1);
    let a = fix_a(Q);
    let p1 = projective(&a, 0).unwrap();
    assert_eq!(hom_dim(&p1, &p1).unwrap(), 2);
    let (s1, s2) = (simple(&a, 0).unwrap(), simple(&a, 1).unwrap());
    assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
    for f in hom_space(&projective(&a, 1).unwrap(), &injective(&a, 1).unwrap()).unwrap() {
        f.verify().unwrap();
    }
}

#[test]
fn covers_and_syzygies() {
    let d = dual_numbers(Q);
    let s = simple(&d, 0).unwrap();
    let c = projective_cover(&s).unwrap();
    assert_eq!(c.map.source.dim(), 2);
    assert!(c.map.is_surjective());
    let omega = syzygy(&s).unwrap();
    assert_eq!(omega.dim(), 1);
    assert!(is_isomorphic(&omega, &s, 64, 0).unwrap().is_iso());

    let a = fix_a(Q);
    let p1 = projective(&a, 0).unwrap();
    let cp = projective_cover(&p1).unwrap();
    assert!(cp.map.is_isomorphism());
    let s2 = simple(&a, 1).unwrap();
    let o2 = syzygy(&s2).unwrap();
    assert_eq!(o2.dim(), 3);
    assert!(is_isomorphic(&o2, &p1, 64, 0).unwrap().is_iso());
    assert!(syzygy(&o2).unwrap().is_zero());

    let s1 = simple(&a, 0).unwrap();
    let o1 = syzygy(&s1).unwrap();
    let sum = direct_sum(&[s1.clone(), s2.clone()]).unwrap().module;
    assert!(is_isomorphic(&o1, &sum, 64, 0).unwrap().is_iso());
}

#[test]
fn cover_kernel_lies_in_radical() {
    let a = fix_a(Q);
    for i in 0..2 {
        let m = injective(&a, i).unwrap();
        let c = projective_cover(&m).unwrap();
        let (k, incl) = kernel_of(&c.map).unwrap();
        let p = &c.map.source;
        let parts: Vec<Mat> = a.radical().iter().map(|r| p.act(r)).collect();
        let refs: Vec<&Mat> = parts.iter().collect();
        let rad = crate::exactla::Subspace::new(Mat::hstack(Q, p.dim(), &refs).column_space()).unwrap();
        for v in incl.matrix.columns() {
            assert!(rad.contains(&v));
        }
        assert_eq!(top_dims(p), top_dims(&m));
        assert_eq!(p.dim(), m.dim() + k.dim());
    }
}

#[test]
fn dual_examples() {
    let a = fix_a(Q);
    let z = Module::zero(&a);
    assert!(z.dual().is_zero());
    let s = simple(&a, 0).unwrap().dual();
    assert!(std::sync::Arc::ptr_eq(s.algebra(), &a.opposite()));
    assert!(is_isomorphic(&s, &simple(&a.opposite(), 0).unwrap(), 64, 0).unwrap().is_iso());
    let dp2 = projective(&a, 1).unwrap().dual();
    assert_eq!(dp2.dim(), 4);
    assert!(is_isomorphic(&dp2, &injective(&a.opposite(), 1).unwrap(), 64, 0).unwrap().is_iso());
    let back = dp2.dual();
    assert!(std::sync::Arc::ptr_eq(back.algebra(), &a));
    assert!(back.same_as(&projective(&a, 1).unwrap()));
}

#[test]
fn iso_verdicts() {
    let a = fix_a(Q);
    let (s1, s2) = (simple(&a, 0).unwrap(), simple(&a, 1).unwrap());
    assert!(is_isomorphic(&s1, &s1, 64, 0).unwrap().is_iso());
    assert!(matches!(is_isomorphic(&s1, &s2, 64, 0).unwrap(), IsoVerdict::NotIso(_)));
    // same dimension vector, different modules: P(1) vs S1 ⊕ S1 ⊕ S2
    let p1 = projective(&a, 0).unwrap();
    let sum = direct_sum(&[s1.clone(), s1, s2]).unwrap().module;
    assert!(matches!(is_isomorphic(&p1, &sum, 64, 0).unwrap(), IsoVerdict::NotIso(_)));
}

#[test]
fn plumbing_examples() {
    let a = fix_a(Q);
    let p2 = projective(&a, 1).unwrap();
    let (k, _) = kernel_of(&ModuleMap::identity(&p2)).unwrap();
    assert!(k.is_zero());
    let s1 = simple(&a, 0).unwrap();
    let (c, _) = cokernel_of(&ModuleMap::zero(&s1, &p2)).unwrap();
    assert!(c.same_as(&p2));
    let cover = projective_cover(&simple(&a, 1).unwrap()).unwrap();
    let (im, _) = image_of(&cover.map).unwrap();
    assert_eq!(im.dim(), 1);
}

#[test]
fn strip_finds_projective_summands() {
    let a = fix_a(Q);
    let (s1, s2, p1) = (simple(&a, 0).unwrap(), simple(&a, 1).unwrap(), projective(&a, 0).unwrap());
    let m = direct_sum(&[s1.clone(), p1, s2.clone()]).unwrap().module;
    let st = strip_projective_summands(&m).unwrap();
    assert_eq!(st.projective_summands, vec![0]);
    assert_eq!(st.core.dim(), 2);
    st.inclusion.verify().unwrap();
    let s12 = direct_sum(&[s1, s2]).unwrap().module;
    assert!(is_isomorphic(&st.core, &s12, 64, 0).unwrap().is_iso());
    assert!(strip_projective_summands(&regular(&a)).unwrap().core.is_zero());
}

#[test]
fn small_prime_field_refuses_random_search() {
    let f = Field::Prime(3);
    let d = dual_numbers(f);
    let p = projective(&d, 0).unwrap();
    let x = Mat::from_i64(f, &[&[0, 0], &[2, 0]]);
    let m = Module::from_representation(&d, &[2], &[x]).unwrap();
    assert!(!m.same_as(&p));
    assert!(matches!(is_isomorphic(&m, &p, 8, 0), Err(ModuleError::FieldTooSmall(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn yoneda_for_projectives(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alg in [fix_a(Q), fix_a_dprime(Field::Prime(101))] {
            let n = random_module(&alg, &mut rng).unwrap();
            for i in 0..alg.num_prims() {
                let p = projective(&alg, i).unwrap();
                prop_assert_eq!(hom_dim(&p, &n).unwrap(), n.peirce()[i]);
            }
        }
    }

    #[test]
    fn syzygy_sequence_adds_up(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = fix_a(Q);
        let m = random_module(&alg, &mut rng).unwrap();
        m.verify().unwrap();
        let cover = projective_cover(&m).unwrap();
        let omega = syzygy(&m).unwrap();
        prop_assert_eq!(cover.map.source.dim(), m.dim() + omega.dim());
        prop_assert!(cover.map.verify().is_ok());
    }

    #[test]
    fn hom_bases_intertwine(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = fix_a_prime(Q);
        let m = random_module(&alg, &mut rng).unwrap();
        let n = random_module(&alg, &mut rng).unwrap();
        for f in hom_space(&m, &n).unwrap() {
            prop_assert!(f.verify().is_ok());
        }
    }

    #[test]
    fn dual_is_an_involution(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = fix_a(Q);
        let m = random_module(&alg, &mut rng).unwrap();
        let dd = m.dual().dual();
        prop_assert_eq!(dd.dim(), m.dim());
        prop_assert!(is_isomorphic(&dd, &m, 64, seed).unwrap().is_iso());
    }
}
