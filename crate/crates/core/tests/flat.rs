use proptest::prelude::*;
use spintorsion::clifford::sigma_t;
use spintorsion::field::Cx;
use spintorsion::flat::{finite_difference_residual, integrability_element, nabla_codifferential, transport_loop, FlatConnection, PolygonLoop};
use spintorsion::holonomy::g_star_vector;
use spintorsion::lie::{bracket_closure_sized, derived_algebra};
use spintorsion::matrix::Matrix;
use spintorsion::sample::Sampler;
use spintorsion::{Form, Scalar};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn unit(n: usize, i: usize, h: f64) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = h;
    v
}

/// `2 M(e_i _| T)`, the vector part of the connection in direction `e_i`.
fn gamma(t: &Form, i: usize) -> Matrix<Scalar> {
    t.contract_basis(i + 1).unwrap().to_so().unwrap().scale(&Scalar::int(2))
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn small_squares_see_the_curvature(seed in any::<u64>(), n in 3usize..=6) {
        let mut s = Sampler::new(seed);
        let t = s.nonzero_form(n, 3);
        let conn = FlatConnection::new(t.clone());
        let h = 1e-4;
        let mut curvatures = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (unit(n, i, h), unit(n, j, h));
                let corners = vec![vec![0.0; n], a.clone(), a.iter().zip(&b).map(|(x, y)| x + y).collect(), b];
                let p = transport_loop(&conn, &PolygonLoop::closed(corners).unwrap()).unwrap();
                let r = gamma(&t, j).commutator(&gamma(&t, i));
                let mut err: f64 = 0.0;
                let mut size: f64 = 0.0;
                for x in 0..n {
                    for y in 0..n {
                        let id = if x == y { 1.0 } else { 0.0 };
                        let approx = (p[(x, y)] - id) / (h * h);
                        err = err.max((approx - r[(x, y)].to_f64()).abs());
                        size = size.max(r[(x, y)].to_f64().abs());
                    }
                }
                prop_assert!(err < 1e-2 * (1.0 + size), "({i}, {j}): error {err}");
                curvatures.push(r);
            }
        }
        let span = bracket_closure_sized(n, &curvatures).unwrap();
        let h_star = derived_algebra(&g_star_vector(&t).unwrap()).unwrap();
        prop_assert_eq!(span.dim(), h_star.dim());
        prop_assert!(span.elements().iter().all(|x| h_star.contains(x)));
    }

    #[test]
    fn one_form_fields_are_parallel(seed in any::<u64>(), n in 1usize..=6) {
        let mut s = Sampler::new(seed);
        let t = s.nonzero_form(n, 1);
        let conn = FlatConnection::new(t);
        let d = spintorsion::SpinRep::new(n).unwrap().spin_dim();
        let psi0: Vec<Cx> = (0..d).map(|_| Cx::new(s.rational(), s.rational())).collect();
        let m: Vec<f64> = s.vector(n).iter().map(|x| x.to_f64() / 4.0).collect();
        let x: Vec<f64> = s.nonzero_vector(n).iter().map(Scalar::to_f64).collect();
        let coarse = finite_difference_residual(&conn, &psi0, &m, &x, 1e-3).unwrap();
        let fine = finite_difference_residual(&conn, &psi0, &m, &x, 1e-4).unwrap();
        prop_assert!(fine <= coarse / 5.0 + 1e-9, "{coarse} -> {fine}");
    }

    #[test]
    fn torsion_codifferential_is_unchanged(seed in any::<u64>(), n in 3usize..=8) {
        let mut s = Sampler::new(seed);
        let t = s.form(n, 3);
        let delta = s.form(n, 2);
        prop_assert_eq!(nabla_codifferential(&t, &t, &delta).unwrap(), delta);
    }

    #[test]
    fn integrability_grades(seed in any::<u64>(), n in 4usize..=7) {
        let mut s = Sampler::new(seed);
        let t = s.form(n, 3);
        let dt = s.form(n, 4);
        let delta = s.form(n, 2);
        let scal = s.rational();
        let k = s.nonzero_rational();
        let sigma = sigma_t(&t).unwrap();
        let el = integrability_element(&dt, &sigma, &delta, &scal, &k).unwrap();
        let four = dt.scale(&(&Scalar::int(3) * &k)).sub(&sigma.scale(&(&Scalar::int(8) * &k.square()))).unwrap();
        prop_assert_eq!(el.grade_part(4), four);
        prop_assert_eq!(el.grade_part(2), delta.scale(&(&Scalar::int(2) * &k)));
        prop_assert_eq!(el.scalar_part(), &scal * &Scalar::frac(1, 4));
        prop_assert!(el.grades().iter().all(|g| [0, 2, 4].contains(g)));
    }
}
