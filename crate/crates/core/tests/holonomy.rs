use std::collections::BTreeSet;

use proptest::prelude::*;
use spintorsion::algebra::{blades, indices};
use spintorsion::holonomy::{decompose_torsion, g_star, g_star_vector, invariant_spinors, support_reduction, RepMode, Tensor3};
use spintorsion::lie::{bracket_closure_sized, ClosureReport};
use spintorsion::sample::Sampler;
use spintorsion::{Form, Scalar};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

/// A 3-form with a few random terms, or a dense one, so that small holonomies turn up.
fn sparse_three_form(s: &mut Sampler, n: usize) -> Form {
    if s.int(0, 4) == 0 {
        return s.form(n, 3);
    }
    let all = blades(n, 3);
    let mut t = Form::zero(n, 3);
    for _ in 0..s.int(1, 4) {
        let m = all[s.int(0, all.len() as i64 - 1) as usize];
        t.add_term(&indices(m), &s.nonzero_rational());
    }
    t
}

fn random_torsion(s: &mut Sampler, n: usize) -> Tensor3 {
    let a: Vec<Scalar> = (0..n * n * n).map(|_| s.rational()).collect();
    let at = |i: usize, j: usize, k: usize| &a[(i * n + j) * n + k];
    Tensor3::from_fn(n, |i, j, k| at(i, j, k) - at(j, i, k))
}

#[test]
fn low_dimensional_holonomy_lists() {
    let lists: [(usize, &[usize]); 3] = [(5, &[0, 3, 10]), (6, &[0, 3, 6, 10, 15]), (7, &[0, 3, 6, 10, 15, 21])];
    for (n, allowed) in lists {
        let mut s = Sampler::new(500 + n as u64);
        let mut seen = BTreeSet::from([g_star_vector(&Form::zero(n, 3)).unwrap().dim()]);
        for _ in 0..200 {
            let t = sparse_three_form(&mut s, n);
            let dim = g_star_vector(&t).unwrap().dim();
            assert!(allowed.contains(&dim), "n = {n}: {t} gives {dim}");
            seen.insert(dim);
        }
        assert!(seen.len() >= 3, "n = {n}: only {seen:?} sampled");
    }
}

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn three_form_holonomy_is_semisimple(seed in any::<u64>(), n in 5usize..=7) {
        let mut s = Sampler::new(seed);
        let t = sparse_three_form(&mut s, n);
        let sum = g_star(&t, RepMode::Vector).unwrap().summary();
        prop_assert_eq!(sum.derived_dim, sum.dim);
        prop_assert!(sum.dim == 0 || sum.semisimple);
        prop_assert!(sum.dim == 0 || sum.compact);
    }

    #[test]
    fn closure_is_idempotent(seed in any::<u64>(), n in 3usize..=7, gens in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let ms: Vec<_> = (0..gens).map(|_| sparse_two_form(&mut s, n).to_so().unwrap()).collect();
        let b = bracket_closure_sized(n, &ms).unwrap();
        prop_assert!(b.is_closed());
        for x in b.elements() {
            for y in b.elements() {
                prop_assert!(b.contains(&x.commutator(y)));
            }
        }
        let again = bracket_closure_sized(n, b.elements()).unwrap();
        prop_assert_eq!(again.dim(), b.dim());
        prop_assert!(b.elements().iter().all(|x| again.contains(x)));
    }

    #[test]
    fn full_support_bounds_dimension(seed in any::<u64>(), n in 3usize..=7) {
        let mut s = Sampler::new(seed);
        let t = sparse_three_form(&mut s, n);
        if support_reduction(&t).unwrap().len() == n {
            prop_assert!(g_star_vector(&t).unwrap().dim() >= n);
        }
    }

    #[test]
    fn torsion_classes_are_orthogonal(seed in any::<u64>(), n in 3usize..=6) {
        let mut s = Sampler::new(seed);
        let t = random_torsion(&mut s, n);
        let d = decompose_torsion(&t).unwrap();
        let skew = Tensor3::from_form(&d.skew).unwrap();
        prop_assert!(d.vectorial.inner(&skew).is_zero());
        prop_assert!(d.vectorial.inner(&d.prime).is_zero());
        prop_assert!(skew.inner(&d.prime).is_zero());
        prop_assert!(d.vectorial.add(&skew).add(&d.prime) == t);
    }

    #[test]
    fn nonzero_three_forms_fix_no_spinor(seed in any::<u64>(), n in 3usize..=8) {
        let mut s = Sampler::new(seed);
        let t = sparse_three_form(&mut s, n);
        prop_assume!(!t.is_zero());
        prop_assert!(invariant_spinors(&t).unwrap().is_empty());
    }
}

fn sparse_two_form(s: &mut Sampler, n: usize) -> Form {
    let all = blades(n, 2);
    let mut w = Form::zero(n, 2);
    for _ in 0..s.int(1, 3) {
        w.add_term(&indices(all[s.int(0, all.len() as i64 - 1) as usize]), &s.nonzero_rational());
    }
    w
}

#[test]
fn closure_report_of_so3() {
    let gens: Vec<_> = [[1, 2], [2, 3]].iter().map(|ix| Form::basis(3, ix).to_so().unwrap()).collect();
    let r = ClosureReport::from_generators_sized(3, &gens).unwrap();
    assert_eq!((r.dim, r.derived_dim, r.center_dim, r.rank), (3, 3, 0, 1));
    assert!(r.semisimple && r.compact && r.irreducible);
}
