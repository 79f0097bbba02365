use spintorsion::algebra::Form;
use spintorsion::clifford::square_parts;
use spintorsion::homogeneous::fixtures::{self, basis_spinor};
use spintorsion::homogeneous::{g2_form_of_spinor, g2_type, scalars_from_torsion, AloffWallach, G2Type, MetricParams};
use spintorsion::matrix::Echelon;
use spintorsion::sample::Sampler;
use spintorsion::{Error, Scalar};

fn params(s: Scalar, y: Scalar) -> MetricParams {
    MetricParams::new(s, y).unwrap()
}

fn rat(s: (i64, i64), y: (i64, i64)) -> MetricParams {
    MetricParams::rational(s, y).unwrap()
}

fn samples(n: usize, seed: u64) -> Vec<MetricParams> {
    let mut g = Sampler::new(seed);
    (0..n).map(|_| params(g.positive(), g.positive().square())).collect()
}

fn psi(k: usize) -> Vec<Scalar> {
    basis_spinor(k).unwrap()
}

#[test]
fn levi_civita_lift_matches_table() {
    for p in samples(25, 11) {
        let m = AloffWallach::new(p.clone()).unwrap();
        assert_eq!(m.levi_civita_lift().unwrap(), fixtures::lambda_tilde(&p));
        for l in m.levi_civita_map() {
            assert!(l.is_skew());
        }
    }
}

#[test]
fn lambda_seven_at_sasakian_point() {
    let m = AloffWallach::new(MetricParams::sasakian()).unwrap();
    let want = Form::int(7, &[(&[1, 2], 1), (&[3, 4], 1), (&[5, 6], -1)]).scale(&Scalar::frac(1, 2)).add(&Form::int(7, &[(&[1, 2], -1), (&[3, 4], -1), (&[5, 6], 1)]).scale(&Scalar::frac(1, 2))).unwrap();
    let want = want.add(&Form::basis(7, &[1, 2]).scale(&Scalar::frac(1, 2))).unwrap();
    assert_eq!(m.levi_civita_lift().unwrap()[6], want);
}

#[test]
fn exterior_derivatives_of_frame() {
    for p in samples(5, 3) {
        let m = AloffWallach::new(p.clone()).unwrap();
        let (s, y) = (&p.s, &p.y);
        let dx1 = m.coset_differential(&Form::basis(7, &[1])).unwrap();
        let want = Form::term(7, &[2, 7], &Scalar::int(-2) * s).add(&Form::int(7, &[(&[3, 5], 1), (&[4, 6], 1)]).scale(y)).unwrap();
        assert_eq!(dx1, want);
        let dx2 = m.coset_differential(&Form::basis(7, &[2])).unwrap();
        let want = Form::term(7, &[1, 7], &Scalar::int(2) * s).add(&Form::int(7, &[(&[4, 5], 1), (&[3, 6], -1)]).scale(y)).unwrap();
        assert_eq!(dx2, want);
        let dx7 = m.coset_differential(&Form::basis(7, &[7])).unwrap();
        let want = Form::term(7, &[1, 2], &Scalar::int(-2) / s).add(&Form::int(7, &[(&[3, 4], 1), (&[5, 6], -1)]).scale(&-(y / s))).unwrap();
        assert_eq!(dx7, want);
    }
}

#[test]
fn differential_squares_to_zero_on_invariant_forms() {
    let m = AloffWallach::new(rat((3, 2), (4, 9))).unwrap();
    for k in 0..7 {
        for f in m.invariant_forms(k) {
            let df = m.coset_differential(&f).unwrap();
            assert!(m.coset_differential(&df).unwrap().is_zero(), "d² ≠ 0 on {f}");
        }
    }
}

#[test]
fn differential_rejects_non_invariant() {
    let m = AloffWallach::new(MetricParams::sasakian()).unwrap();
    assert!(matches!(m.coset_differential(&Form::basis(7, &[3])), Err(Error::Precondition(_))));
}

#[test]
fn invariant_form_counts() {
    let m = AloffWallach::new(rat((2, 1), (4, 1))).unwrap();
    assert_eq!(m.invariant_forms(3).len(), 13);
    assert_eq!(m.invariant_forms(4).len(), 13);
    let mut a = Echelon::new(35);
    for f in fixtures::invariant_three_forms() {
        a.insert(f.hodge_star().to_vec());
    }
    for f in fixtures::four_form_ansatz() {
        assert!(a.contains(&f.to_vec()));
    }
    assert_eq!(a.rank(), 13);
}

#[test]
fn fixed_spinor_space_and_isotropy_spectrum() {
    let m = AloffWallach::new(rat((2, 1), (4, 1))).unwrap();
    assert_eq!(m.fixed_spinor_space().len(), 4);
    for k in 3..=6 {
        assert!(m.is_fixed_spinor(&psi(k)));
    }
    let g = m.isotropy_spin();
    assert_eq!(g.rank(), 4);
    // G³ = -9G: the nonzero eigenvalues are ±3i.
    let g3 = g.mul(g).mul(g);
    assert!(g3.add(&g.scale(&Scalar::int(9))).is_zero());
    let rot = Form::int(7, &[(&[3, 4], 3), (&[5, 6], 3)]).to_so().unwrap();
    assert_eq!(m.model().isotropy()[0], rot);
}

#[test]
fn torsion_forms_match_closed_forms() {
    for p in samples(25, 5) {
        let m = AloffWallach::new(p.clone()).unwrap();
        let ansatz = m.invariant_three_forms();
        for k in 3..=6 {
            let sol = m.solve_torsion(&psi(k), &ansatz).unwrap();
            assert!(sol.unique && sol.residual_is_zero());
            assert_eq!(sol.form, fixtures::torsion(k, &p).unwrap(), "T{k} at {p:?}");
        }
    }
}

#[test]
fn four_forms_match_closed_forms() {
    for p in samples(25, 6) {
        let m = AloffWallach::new(p.clone()).unwrap();
        let ansatz = m.invariant_four_forms();
        for k in 3..=6 {
            let sol = m.solve_four_form(&psi(k), &ansatz).unwrap();
            assert!(sol.unique && sol.residual_is_zero());
            assert_eq!(sol.form, fixtures::four_form(k, &p).unwrap(), "R{k} at {p:?}");
        }
    }
}

#[test]
fn spinors_recovered_from_torsion() {
    let p = rat((2, 1), (4, 1));
    let m = AloffWallach::new(p.clone()).unwrap();
    for k in 3..=6 {
        let ker = m.parallel_spinors(&fixtures::torsion(k, &p).unwrap()).unwrap();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        let w = psi(k);
        let i = w.iter().position(|x| !x.is_zero()).unwrap();
        let c = &w[i] / &v[i];
        assert!(v.iter().zip(&w).all(|(a, b)| &(a * &c) == b), "ψ{k}");
    }
}

#[test]
fn reference_linear_systems() {
    for p in samples(25, 7) {
        let m = AloffWallach::new(p.clone()).unwrap();
        for sys in fixtures::reference_systems() {
            let t = fixtures::torsion(sys.spinor, &p).unwrap();
            let x = fixtures::seven_term_coordinates(&t).unwrap();
            let rows = sys.rows(&p);
            for r in &rows {
                let v: Scalar = r[..7].iter().zip(&x).map(|(a, b)| a * b).sum();
                assert!((&v + &r[7]).is_zero(), "reference system {} not satisfied", sys.spinor);
            }
            // The same system, derived from the model over the seven single blades.
            let mut derived = Echelon::new(8);
            let psi_k = psi(sys.spinor);
            for (i, lt) in m.levi_civita_spin().iter().enumerate() {
                let base = lt.mul_vec(&psi_k);
                let cols: Vec<Vec<Scalar>> = spintorsion::homogeneous::AloffWallach::seven_term_ansatz()
                    .iter()
                    .map(|f| m.rep().real_form_matrix(&f.contract_basis(i + 1).unwrap()).unwrap().mul_vec(&psi_k))
                    .collect();
                for r in 0..8 {
                    let mut row: Vec<Scalar> = cols.iter().map(|c| c[r].clone()).collect();
                    row.push(base[r].clone());
                    derived.insert(row);
                }
            }
            let mut reference = Echelon::new(8);
            for r in rows {
                reference.insert(r);
            }
            assert_eq!(reference.rank(), 7);
            assert_eq!(derived.rank(), 7);
            assert!(reference.basis().iter().all(|r| derived.contains(r)), "system {}", sys.spinor);
        }
    }
}

#[test]
fn undeformed_metric_single_torsion() {
    let p = rat((1, 1), (1, 1));
    let m = AloffWallach::new(p.clone()).unwrap();
    let ansatz = m.invariant_three_forms();
    for k in 3..=6 {
        assert_eq!(m.solve_torsion(&psi(k), &ansatz).unwrap().form, fixtures::t_undeformed());
    }
    let r: Vec<Form> = (3..=6).map(|k| fixtures::four_form(k, &p).unwrap()).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            assert_ne!(r[i], r[j]);
        }
    }
}

#[test]
fn coincidence_loci() {
    let mut g = Sampler::new(21);
    for _ in 0..25 {
        let s = g.positive();
        let y = g.positive();
        // T3 = T4 ⟺ 2s² = 1 + y, T5 = T6 ⟺ y = 1, R3 = R4 ⟺ 4s² = 1 + y
        let on = |y: Scalar| params(s.clone(), y);
        let two_s2 = &Scalar::int(2) * &s.square();
        if (&two_s2 - &Scalar::one()).is_positive() {
            let p = on(&two_s2 - &Scalar::one());
            assert_eq!(fixtures::t3(&p), fixtures::t4(&p));
        }
        let four_s2 = &Scalar::int(4) * &s.square();
        if (&four_s2 - &Scalar::one()).is_positive() {
            let p = on(&four_s2 - &Scalar::one());
            assert_eq!(fixtures::r3(&p), fixtures::r4(&p));
        }
        let p = on(Scalar::one());
        assert_eq!(fixtures::t5(&p), fixtures::t6(&p));
        let p = on(y.clone());
        assert_ne!(fixtures::r5(&p), fixtures::r6(&p));
        if &two_s2 - &Scalar::one() != y {
            assert_ne!(fixtures::t3(&p), fixtures::t4(&p));
        }
        if &four_s2 - &Scalar::one() != y {
            assert_ne!(fixtures::r3(&p), fixtures::r4(&p));
        }
        if !y.is_one() {
            assert_ne!(fixtures::t5(&p), fixtures::t6(&p));
        }
    }
}

#[test]
fn opposite_torsion_point() {
    let s = &Scalar::sqrt_int(3).unwrap() * &Scalar::frac(1, 2);
    let p = params(s, Scalar::int(2));
    let m = AloffWallach::new(p.clone()).unwrap();
    let ansatz = m.invariant_three_forms();
    let t3 = m.solve_torsion(&psi(3), &ansatz).unwrap().form;
    let t4 = m.solve_torsion(&psi(4), &ansatz).unwrap().form;
    assert_eq!(t3, fixtures::t_opposite());
    assert_eq!(t4, fixtures::t_opposite().neg());
    assert!(!m.torsion_curvature(&t3).unwrap().is_flat());
    assert!(!m.torsion_curvature(&t4).unwrap().is_flat());
    assert!(!m.spinor_curvature(&t3).unwrap().is_flat());
}

#[test]
fn opposite_four_form_point() {
    let s = &Scalar::sqrt_int(5).unwrap() * &Scalar::frac(1, 2);
    let p = params(s, Scalar::int(2));
    let m = AloffWallach::new(p.clone()).unwrap();
    let ansatz = m.invariant_four_forms();
    let r3 = m.solve_four_form(&psi(3), &ansatz).unwrap().form;
    let r4 = m.solve_four_form(&psi(4), &ansatz).unwrap().form;
    assert_eq!(r3, fixtures::r_opposite());
    assert_eq!(r4, fixtures::r_opposite().neg());
    assert!(!m.spinor_curvature(&r3).unwrap().is_flat());
    assert!(!m.spinor_curvature(&r4).unwrap().is_flat());
}

#[test]
fn mixed_spinor_needs_s_equals_y() {
    let mut g = Sampler::new(8);
    for _ in 0..6 {
        let s = g.positive();
        let (a, b) = (g.nonzero_rational(), g.nonzero_rational());
        let spinor: Vec<Scalar> = psi(3).iter().zip(&psi(5)).map(|(x, y)| &(&a * x) + &(&b * y)).collect();
        let m = AloffWallach::new(params(s.clone(), s.clone())).unwrap();
        let sol = m.solve_torsion(&spinor, &m.invariant_three_forms()).unwrap();
        assert!(sol.unique);
        assert_eq!(sol.form, fixtures::t_ab(&s, &a, &b));
        let omega = g2_form_of_spinor(m.rep(), &spinor).unwrap();
        assert_eq!(omega, fixtures::omega_ab(&a, &b));
        assert_eq!(sol.form.inner(&omega).unwrap(), fixtures::t_ab_omega_inner(&s, &a, &b));
        let off = AloffWallach::new(params(s.clone(), &s + &Scalar::one())).unwrap();
        assert!(matches!(off.solve_torsion(&spinor, &off.invariant_three_forms()), Err(Error::NoSolution(_))));
    }
}

#[test]
fn three_spinor_family_needs_s_one() {
    let mut g = Sampler::new(9);
    for _ in 0..4 {
        let y = g.positive();
        let (a, b, c) = (g.nonzero_rational(), g.nonzero_rational(), g.nonzero_rational());
        let spinor: Vec<Scalar> = (0..8).map(|i| &(&(&a * &psi(3)[i]) + &(&b * &psi(4)[i])) + &(&c * &psi(6)[i])).collect();
        let m = AloffWallach::new(params(Scalar::one(), y.clone())).unwrap();
        let t = m.solve_torsion(&spinor, &m.invariant_three_forms()).unwrap();
        assert_eq!(t.form, fixtures::t_abc(&y, &a, &b, &c));
        let r = m.solve_four_form(&spinor, &m.invariant_four_forms()).unwrap();
        assert_eq!(r.form, fixtures::r_abc(&y, &a, &b, &c));
        let off = AloffWallach::new(params(Scalar::frac(3, 2), y)).unwrap();
        assert!(off.solve_torsion(&spinor, &off.invariant_three_forms()).is_err());
        assert!(off.solve_four_form(&spinor, &off.invariant_four_forms()).is_err());
    }
}

#[test]
fn zero_spinor_rejected() {
    let m = AloffWallach::new(MetricParams::sasakian()).unwrap();
    assert!(matches!(m.solve_torsion(&vec![Scalar::zero(); 8], &m.invariant_three_forms()), Err(Error::InvalidInput(_))));
}

#[test]
fn g2_forms_and_types() {
    let m = AloffWallach::new(MetricParams::sasakian()).unwrap();
    let w3 = g2_form_of_spinor(m.rep(), &psi(3)).unwrap();
    let w5 = g2_form_of_spinor(m.rep(), &psi(5)).unwrap();
    assert_eq!(w3, fixtures::omega3());
    assert_eq!(w5, fixtures::omega5());
    assert_eq!(w3.norm_sqr(), Scalar::int(7));
    let four = Scalar::int(4);
    let p = MetricParams::sasakian();
    assert_eq!(g2_type(&w3, &fixtures::t3(&p).scale(&four)).unwrap(), G2Type::W1);
    let p = MetricParams::einstein();
    assert_eq!(g2_type(&w5, &fixtures::t5(&p).scale(&four)).unwrap(), G2Type::W1);
    // 2s(2+y) = 1-y at y = 1/2 gives s = 1/10
    let p = rat((1, 10), (1, 2));
    assert_eq!(g2_type(&w5, &fixtures::t5(&p).scale(&four)).unwrap(), G2Type::W3);
    for p in samples(25, 12) {
        let t3 = fixtures::t3(&p);
        let t5 = fixtures::t5(&p);
        assert_eq!(t3.inner(&w3).unwrap(), fixtures::t3_omega3(&p));
        assert_eq!(t5.inner(&w5).unwrap(), fixtures::t5_omega5(&p));
        assert!(fixtures::t3_omega3(&p).is_positive());
        let ty = g2_type(&w3, &t3.scale(&four)).unwrap();
        assert!(ty == G2Type::W1W3 || ty == G2Type::W1);
        let m = AloffWallach::new(p).unwrap();
        for f in [&w3, &w5, &t3, &t5] {
            assert!(m.is_cocalibrated(f).unwrap());
        }
    }
}

#[test]
fn scalar_curvatures() {
    for p in samples(25, 13) {
        let four = Scalar::int(4);
        let (g3, n3) = scalars_from_torsion(&fixtures::omega3(), &fixtures::t3(&p).scale(&four)).unwrap();
        let (g5, n5) = scalars_from_torsion(&fixtures::omega5(), &fixtures::t5(&p).scale(&four)).unwrap();
        assert_eq!(g3, fixtures::scal_g(&p));
        assert_eq!(g5, fixtures::scal_g(&p));
        assert_eq!(n3, fixtures::scal3(&p));
        assert_eq!(n5, fixtures::scal5(&p));
        let m = AloffWallach::new(p.clone()).unwrap();
        assert_eq!(m.riemannian_scalar_curvature().unwrap(), fixtures::scal_g(&p));
        let ric = m.ricci_characteristic(&fixtures::omega3(), &fixtures::t3(&p).scale(&four)).unwrap();
        assert_eq!(ric.trace(), n3);
        assert_eq!(ric, ric.transpose());
    }
    let p = rat((1, 1), (4, 1));
    assert_eq!(fixtures::scal_g(&p), Scalar::int(54));
    assert_eq!(fixtures::scal3(&p), Scalar::zero());
    assert_eq!(fixtures::scal_g(&MetricParams::sasakian()), Scalar::int(42));
}

#[test]
fn example_points() {
    let p = rat((1, 1), (4, 1));
    let m = AloffWallach::new(p.clone()).unwrap();
    let t3 = fixtures::t3(&p);
    let x2dx2 = Form::basis(7, &[2]).wedge(&m.coset_differential(&Form::basis(7, &[2])).unwrap()).unwrap();
    assert_eq!(t3, x2dx2.scale(&Scalar::frac(-1, 4)));
    let dt = m.coset_differential(&t3).unwrap();
    assert_eq!(dt, Form::int(7, &[(&[3, 4, 5, 6], 8), (&[1, 4, 5, 7], -4), (&[1, 3, 6, 7], 4)]));
    assert_eq!(square_parts(&t3).unwrap().four, dt.scale(&Scalar::frac(1, 4)));
    let ric = m.ricci_characteristic(&fixtures::omega3(), &t3.scale(&Scalar::int(4))).unwrap();
    assert!(ric.trace().is_zero());

    let s = &Scalar::sqrt_int(6).unwrap() * &Scalar::frac(1, 2);
    let p = params(s, Scalar::int(2));
    let m = AloffWallach::new(p.clone()).unwrap();
    let t3 = fixtures::t3(&p);
    let x7dx7 = Form::basis(7, &[7]).wedge(&m.coset_differential(&Form::basis(7, &[7])).unwrap()).unwrap();
    assert_eq!(t3, x7dx7.scale(&Scalar::frac(1, 4)));
    let dt = m.coset_differential(&t3).unwrap();
    assert_eq!(dt, Form::int(7, &[(&[1, 2, 3, 4], 1), (&[1, 2, 5, 6], -1), (&[3, 4, 5, 6], -1)]).scale(&Scalar::frac(4, 3)));
    assert!(fixtures::scal3(&p).is_positive() && fixtures::scal_g(&p).is_positive());
}

#[test]
fn t3_in_contact_form_shape() {
    for p in samples(25, 14) {
        let m = AloffWallach::new(p.clone()).unwrap();
        let (s, y) = (&p.s, &p.y);
        let xdx = |i: usize| Form::basis(7, &[i]).wedge(&m.coset_differential(&Form::basis(7, &[i])).unwrap()).unwrap();
        let lin = |t: &[fixtures::Monomial]| fixtures::laurent(&p, t);
        let a = lin(&[(1, 2, 0, 0), (-1, 4, 0, 1), (1, 6, -1, 0), (1, 6, -1, 1), (-1, 3, 1, 0)]);
        let b = lin(&[(1, 2, 0, 0), (-1, 4, 0, 1), (-1, 6, -1, 0), (-1, 6, -1, 1), (1, 3, 1, 0)]);
        let c = lin(&[(4, 12, -1, 0), (1, 12, -1, 1), (-2, 3, 1, 0)]);
        let k = &-&(&(y - &Scalar::int(2)) * &(&(&(&Scalar::int(5) * &s.square()) - &Scalar::one()) - y)) / &(&(&Scalar::int(3) * s) * y);
        let want = Form::term(7, &[1, 2, 7], k)
            .add(&xdx(1).scale(&(&a / y)))
            .unwrap()
            .add(&xdx(2).scale(&(&b / y)))
            .unwrap()
            .add(&xdx(7).scale(&-&(&(s * &c) / y)))
            .unwrap();
        assert_eq!(fixtures::t3(&p), want);
    }
}
