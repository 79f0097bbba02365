use proptest::prelude::*;
use spintorsion::algebra::{blades, indices};
use spintorsion::clifford::{hermitian, sigma_t, square_parts, Multivector, SpinRep};
use spintorsion::field::{Cx, Field};
use spintorsion::sample::Sampler;
use spintorsion::{Form, Scalar};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn spinor(s: &mut Sampler, d: usize) -> Vec<Cx> {
    (0..d).map(|_| Cx::new(s.rational(), s.rational())).collect()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn contraction_is_an_antiderivation(seed in any::<u64>(), n in 2usize..=8, ka in 0usize..=4, kb in 0usize..=4) {
        prop_assume!(ka + kb <= n);
        let mut s = Sampler::new(seed);
        let a = s.form(n, ka);
        let b = s.form(n, kb);
        let x = s.vector(n);
        let ab = a.wedge(&b).unwrap();
        prop_assume!(ka + kb > 0);
        let lhs = ab.contract(&x).unwrap();
        let mut rhs = if ka > 0 { a.contract(&x).unwrap().wedge(&b).unwrap() } else { Form::zero(n, kb - 1) };
        if kb > 0 {
            let second = a.wedge(&b.contract(&x).unwrap()).unwrap();
            rhs = if ka % 2 == 0 { rhs.add(&second).unwrap() } else { rhs.sub(&second).unwrap() };
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_contraction_vanishes(seed in any::<u64>(), n in 2usize..=8, k in 2usize..=5) {
        prop_assume!(k <= n);
        let mut s = Sampler::new(seed);
        let a = s.form(n, k);
        let x = s.vector(n);
        prop_assert!(a.contract(&x).unwrap().contract(&x).unwrap().is_zero());
    }

    #[test]
    fn hodge_star_is_an_isometry(seed in any::<u64>(), n in 1usize..=8, k in 0usize..=8) {
        prop_assume!(k <= n);
        let mut s = Sampler::new(seed);
        let a = s.form(n, k);
        let b = s.form(n, k);
        prop_assert_eq!(a.inner(&b).unwrap(), a.hodge_star().inner(&b.hodge_star()).unwrap());
    }

    #[test]
    fn exact_round_trips(seed in any::<u64>(), n in 1usize..=8, k in 1usize..=4) {
        prop_assume!(k <= n);
        let mut s = Sampler::new(seed);
        let a = s.form(n, k);
        // sum_i e_i ^ (e_i _| a) = k a
        let mut sum = Form::zero(n, k);
        for i in 1..=n {
            sum = sum.add(&Form::basis(n, &[i]).wedge(&a.contract_basis(i).unwrap()).unwrap()).unwrap();
        }
        prop_assert_eq!(&sum, &a.scale(&Scalar::int(k as i64)));
        if !a.is_zero() {
            prop_assert_eq!(&Form::parse(&a.to_text(), Some(n)).unwrap(), &a);
        }
        prop_assert_eq!(&Form::from_vec(n, k, &a.to_vec()), &a);
    }

    #[test]
    fn clifford_product_is_associative(seed in any::<u64>(), n in 1usize..=7) {
        let mut s = Sampler::new(seed);
        let mut mv = || {
            let k = s.int(0, n as i64) as usize;
            let f = s.form(n, k);
            let g = s.form(n, (k + 1) % (n + 1));
            Multivector::from(&f).add(&Multivector::from(&g)).unwrap()
        };
        let (a, b, c) = (mv(), mv(), mv());
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn vector_times_form(seed in any::<u64>(), n in 1usize..=8, k in 0usize..=6) {
        prop_assume!(k <= n);
        let mut s = Sampler::new(seed);
        let x = s.vector(n);
        let a = s.form(n, k);
        let mut v = Form::zero(n, 1);
        for (i, c) in x.iter().enumerate() {
            v.add_term(&[i + 1], c);
        }
        let prod = Multivector::from(&v).product(&Multivector::from(&a)).unwrap();
        let mut expected = Multivector::from(v.wedge(&a).unwrap());
        if k > 0 {
            expected = expected.sub(&Multivector::from(a.contract(&x).unwrap())).unwrap();
        }
        prop_assert_eq!(prod, expected);
    }

    #[test]
    fn vectors_act_skew_adjointly(seed in any::<u64>(), n in 1usize..=8) {
        let rep = SpinRep::new(n).unwrap();
        let mut s = Sampler::new(seed);
        let psi = spinor(&mut s, rep.spin_dim());
        let phi = spinor(&mut s, rep.spin_dim());
        for i in 1..=n {
            let x = Multivector::blade(n, &[i]);
            let sum = hermitian(&rep.act(&x, &psi).unwrap(), &phi).fadd(&hermitian(&psi, &rep.act(&x, &phi).unwrap()));
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn square_of_a_three_form(seed in any::<u64>(), n in 3usize..=9) {
        let mut s = Sampler::new(seed);
        let t = s.form(n, 3);
        let parts = square_parts(&t).unwrap();
        prop_assert!(parts.grades.iter().all(|g| *g == 0 || *g == 4));
        prop_assert_eq!(&parts.scalar, &t.norm_sqr());
        prop_assert_eq!(&parts.four, &sigma_t(&t).unwrap().scale(&Scalar::int(-2)));
        let m = Multivector::from(&t);
        let resummed = Multivector::scalar(n, parts.scalar.clone()).add(&Multivector::from(&parts.four)).unwrap();
        prop_assert_eq!(resummed, m.product(&m).unwrap());
    }

    #[test]
    fn sigma_vanishes_on_four_indices(seed in any::<u64>(), n in 4usize..=9) {
        let mut s = Sampler::new(seed);
        let quads = blades(n, 4);
        let support = indices(quads[s.int(0, quads.len() as i64 - 1) as usize]);
        let mut t = Form::zero(n, 3);
        for mask in blades(4, 3) {
            let idx: Vec<usize> = indices(mask).iter().map(|i| support[i - 1]).collect();
            t.add_term(&idx, &s.rational());
        }
        prop_assert!(sigma_t(&t).unwrap().is_zero());
    }
}
