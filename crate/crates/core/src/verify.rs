//! The acceptance suite: thirteen numbered checks, each producing a pass flag and a
//! one-line summary of what was measured.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::Form;
use crate::clifford::{det_endomorphism, square_parts, Multivector, SpinRep};
use crate::error::Result;
use crate::field::{Cx, Field};
use crate::flat::{self, FlatConnection};
use crate::holonomy::{self, annihilating_forms, g_star, invariant_spinors, isotropy_check, RepMode};
use crate::homogeneous::fixtures::{self, basis_spinor};
use crate::homogeneous::{
    g2_form_of_spinor, g2_type, scal3_f64, scal5_f64, scalars_from_torsion, scan_roots, AloffWallach, G2Type, MetricParams,
    ReductiveModel,
};
use crate::lie::ClosureReport;
use crate::sample::Sampler;
use crate::sasakian;
use crate::scalar::Scalar;
use crate::spin9;

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 13] = [
    ("holonomy-dimension-table", holonomy_table),
    ("semisimple-and-perfect", semisimple_perfect),
    ("no-invariant-spinors", no_invariant_spinors),
    ("annihilating-4-forms", annihilating_four_forms),
    ("spin9", spin9_appendix),
    ("aloff-wallach-solvers", aw_solvers),
    ("coincidence-loci", coincidence_loci),
    ("g2-analysis", g2_analysis),
    ("root-scan", root_scan),
    ("veronese", veronese),
    ("flat-transport", flat_transport),
    ("codifferential-and-det4", codifferential_det4),
    ("flatness-certificates", flatness),
];

/// Limits that are part of a criterion, in seconds.
fn time_limit(id: usize) -> Option<f64> {
    match id {
        1 | 9 => Some(10.0),
        5 => Some(60.0),
        _ => None,
    }
}

pub fn count() -> usize {
    CHECKS.len()
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize) -> Option<Criterion> {
    let (name, f) = *CHECKS.get(id.checked_sub(1)?)?;
    let start = Instant::now();
    let out = f();
    let seconds = start.elapsed().as_secs_f64();
    let (mut pass, mut detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(limit) = time_limit(id) {
        if seconds > limit {
            pass = false;
            detail.push_str(&format!("; took {seconds:.1}s, limit {limit}s"));
        }
    }
    Some(Criterion { id, name, pass, detail, seconds })
}

pub fn run_all() -> Vec<Criterion> {
    (1..=count()).filter_map(run).collect()
}

fn psi(k: usize) -> Vec<Scalar> {
    basis_spinor(k).expect("k in 3..=6")
}

fn metric_samples(n: usize, seed: u64) -> Result<Vec<MetricParams>> {
    let mut g = Sampler::new(seed);
    (0..n).map(|_| MetricParams::new(g.positive(), g.positive().square())).collect()
}

fn holonomy_table() -> Result<(bool, String)> {
    let mut g = Sampler::new(1);
    let (a, b) = (g.nonzero_rational(), g.nonzero_rational());
    let ab = Form::term(5, &[1, 2, 3], a).add(&Form::term(5, &[3, 4, 5], b))?;
    let g2 = fixtures_g2();
    let four7 = Form::int(7, &[(&[1, 2, 3, 4], 1), (&[1, 2, 5, 6], -1), (&[1, 4, 5, 7], -1), (&[1, 3, 6, 7], 1), (&[2, 3, 5, 7], -1), (&[2, 4, 6, 7], -1), (&[3, 4, 5, 6], -1)]);
    let e6 = Form::int(6, &[(&[1, 2, 3, 4], 1), (&[3, 4, 5, 6], 1)]);

    let mut rows = Vec::new();
    let mut ok = true;
    let mut expect = |name: &str, got: usize, want: usize, extra: String| {
        ok &= got == want;
        rows.push(format!("{name}: {got} (want {want}){extra}"));
    };
    expect("e123 R3", g_star(&Form::basis(3, &[1, 2, 3]), RepMode::Vector)?.dim(), 3, String::new());
    expect("a e123 + b e345 R5", g_star(&ab, RepMode::Vector)?.dim(), 10, String::new());
    expect("vol R6 spinor", g_star(&Form::basis(6, &[1, 2, 3, 4, 5, 6]), RepMode::Spinor)?.dim(), 21, String::new());
    expect("G2 isotropy", isotropy_check(&g2, None)?.len(), 14, String::new());
    expect("G2 closure", g_star(&g2, RepMode::Vector)?.dim(), 21, String::new());
    let s4 = g_star(&four7, RepMode::Spinor)?.summary();
    expect("4-form R7 spinor", s4.dim, 46, format!(" killing {:?}", s4.killing_signature));
    let s6 = g_star(&e6, RepMode::Spinor)?.summary();
    let semis = if s6.semisimple { " semisimple" } else { " non-semisimple" };
    expect("e1234 + e3456 R6 spinor", s6.dim, 15, semis.to_string());
    Ok((ok && !s6.semisimple, rows.join("; ")))
}

fn fixtures_g2() -> Form {
    Form::int(7, &[(&[1, 2, 3], 1), (&[1, 4, 5], 1), (&[1, 6, 7], 1), (&[2, 4, 6], 1), (&[2, 5, 7], -1), (&[3, 4, 7], -1), (&[3, 5, 6], -1)])
}

fn random_three_forms(seed: u64) -> Vec<Form> {
    let mut g = Sampler::new(seed);
    [5, 6, 7].iter().flat_map(|&n| (0..50).map(|_| g.nonzero_form(n, 3)).collect::<Vec<_>>()).collect()
}

fn semisimple_perfect() -> Result<(bool, String)> {
    let mut bad = 0;
    let mut dims = std::collections::BTreeSet::new();
    let forms = random_three_forms(2);
    for t in &forms {
        let r = ClosureReport::analyse(holonomy::g_star_vector(t)?)?;
        dims.insert((t.dim(), r.dim));
        if !(r.semisimple && r.derived_dim == r.dim) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} forms, {bad} failures, (n, dim) seen {dims:?}", forms.len())))
}

fn no_invariant_spinors() -> Result<(bool, String)> {
    let forms = random_three_forms(2);
    let mut bad = 0;
    for t in &forms {
        if !invariant_spinors(t)?.is_empty() {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} forms, {bad} with invariant spinors", forms.len())))
}

/// Projection of a random real spinor onto the +1 eigenspace of the volume element.
fn positive_spinor(rep: &SpinRep, g: &mut Sampler) -> Result<Vec<Scalar>> {
    let vol = rep.real_matrix(&Multivector::blade(8, &[1, 2, 3, 4, 5, 6, 7, 8]))?;
    loop {
        let v = g.vector(16);
        let w: Vec<Scalar> = v.iter().zip(vol.mul_vec(&v)).map(|(a, b)| a + &b).collect();
        if w.iter().any(|x| !x.is_zero()) {
            return Ok(w);
        }
    }
}

fn annihilating_four_forms() -> Result<(bool, String)> {
    let rep = SpinRep::new(8)?;
    let mut g = Sampler::new(4);
    let mut dims = Vec::new();
    for _ in 0..10 {
        let p = positive_spinor(&rep, &mut g)?;
        let pc: Vec<Cx> = p.into_iter().map(Cx::real).collect();
        dims.push(annihilating_forms(8, &pc, 4)?.len());
    }
    let ok = dims.iter().all(|&d| d == 7);
    Ok((ok, format!("dimensions {dims:?} (want 7)")))
}

fn spin9_appendix() -> Result<(bool, String)> {
    let c = spin9::check_all()?;
    let stages: Vec<usize> = c.prolongation.stages.iter().map(|s| s.dim).collect();
    Ok((
        c.pass,
        format!(
            "kernel dim {}, closed {}, irreducible {}, prolongation direct {} staged {stages:?}, generated dim {}, commutant {}",
            c.basis.dim, c.bracket_closed, c.basis.irreducible, c.prolongation.direct_dim, c.generated.dim, c.commutant_dim
        ),
    ))
}

fn aw_solvers() -> Result<(bool, String)> {
    let pts = metric_samples(25, 6)?;
    let mut bad = Vec::new();
    for p in &pts {
        let m = AloffWallach::new(p.clone())?;
        let (a3, a4) = (m.invariant_three_forms(), m.invariant_four_forms());
        for k in 3..=6 {
            let t = m.solve_torsion(&psi(k), &a3)?;
            if !(t.unique && t.residual_is_zero() && Some(&t.form) == fixtures::torsion(k, p).as_ref()) {
                bad.push(format!("T{k}"));
            }
            let r = m.solve_four_form(&psi(k), &a4)?;
            if !(r.unique && r.residual_is_zero() && Some(&r.form) == fixtures::four_form(k, p).as_ref()) {
                bad.push(format!("R{k}"));
            }
        }
        for sys in fixtures::reference_systems() {
            let t = fixtures::torsion(sys.spinor, p).expect("spinor index");
            let x = fixtures::seven_term_coordinates(&t).expect("seven-term form");
            for r in sys.rows(p) {
                let v: Scalar = r[..7].iter().zip(&x).map(|(a, b)| a * b).sum();
                if !(&v + &r[7]).is_zero() {
                    bad.push(format!("system {}", sys.spinor));
                }
            }
        }
    }
    let n = fixtures::reference_systems().len();
    Ok((bad.is_empty(), format!("{} points, T3-T6 and R3-R6 unique and equal to closed forms, {n} reference systems; mismatches {bad:?}", pts.len())))
}

fn coincidence_loci() -> Result<(bool, String)> {
    let mut g = Sampler::new(7);
    let mut fails = Vec::new();
    let one = Scalar::one();
    let mut check = |what: &str, cond: bool| {
        if !cond {
            fails.push(what.to_string());
        }
    };
    // s > 1 keeps 2s² - 1 and 4s² - 1 positive
    for _ in 0..10 {
        let s = &one + &g.positive();
        let p = MetricParams::new(s.clone(), &(&Scalar::int(2) * &s.square()) - &one)?;
        check("T3=T4 on curve", fixtures::t3(&p) == fixtures::t4(&p));
        let p = MetricParams::new(s.clone(), &(&Scalar::int(4) * &s.square()) - &one)?;
        check("R3=R4 on curve", fixtures::r3(&p) == fixtures::r4(&p));
        let p = MetricParams::new(s, one.clone())?;
        check("T5=T6 on curve", fixtures::t5(&p) == fixtures::t6(&p));
    }
    let mut off = 0;
    while off < 10 {
        let (s, y) = (g.positive(), g.positive());
        let s2 = s.square();
        if &(&Scalar::int(2) * &s2) - &one == y || &(&Scalar::int(4) * &s2) - &one == y || y.is_one() {
            continue;
        }
        off += 1;
        let p = MetricParams::new(s, y)?;
        check("T3≠T4 off curve", fixtures::t3(&p) != fixtures::t4(&p));
        check("R3≠R4 off curve", fixtures::r3(&p) != fixtures::r4(&p));
        check("T5≠T6 off curve", fixtures::t5(&p) != fixtures::t6(&p));
    }
    let half = Scalar::frac(1, 2);
    let m = AloffWallach::new(MetricParams::new(&Scalar::sqrt_int(3)? * &half, Scalar::int(2))?)?;
    let a3 = m.invariant_three_forms();
    let t3 = m.solve_torsion(&psi(3), &a3)?.form;
    let t4 = m.solve_torsion(&psi(4), &a3)?.form;
    check("T3=-T4 closed form", t3 == fixtures::t_opposite() && t4 == fixtures::t_opposite().neg());
    let m = AloffWallach::new(MetricParams::new(&Scalar::sqrt_int(5)? * &half, Scalar::int(2))?)?;
    let a4 = m.invariant_four_forms();
    let r3 = m.solve_four_form(&psi(3), &a4)?.form;
    let r4 = m.solve_four_form(&psi(4), &a4)?.form;
    check("R3=-R4 closed form", r3 == fixtures::r_opposite() && r4 == fixtures::r_opposite().neg());
    Ok((fails.is_empty(), format!("10 on-curve and 10 off-curve samples per locus, opposite points; failures {fails:?}")))
}

fn g2_analysis() -> Result<(bool, String)> {
    let mut fails = Vec::new();
    let mut check = |what: &str, cond: bool| {
        if !cond {
            fails.push(what.to_string());
        }
    };
    let four = Scalar::int(4);
    let (w3, w5) = (fixtures::omega3(), fixtures::omega5());
    for p in metric_samples(25, 8)? {
        let (s, y) = (&p.s, &p.y);
        let want = &(&(&(&four * &s.square()) + y) + &Scalar::one()) / &(&Scalar::int(6) * s);
        check("(T3, ω3)", fixtures::t3(&p).inner(&w3)? == want);
        let ty = g2_type(&w3, &fixtures::t3(&p).scale(&four))?;
        check("ω3 nearly parallel only at (1,2)", (ty == G2Type::W1) == (p == MetricParams::sasakian()));
        let ty = g2_type(&w5, &fixtures::t5(&p).scale(&four))?;
        let on = &(&Scalar::int(2) * s) * &(&Scalar::int(2) + y) == &Scalar::one() - y;
        check("ω5 W3 only on curve", (ty == G2Type::W3) == on);
    }
    let mut g = Sampler::new(9);
    for _ in 0..25 {
        let s = g.positive();
        let (a, b) = (g.nonzero_rational(), g.nonzero_rational());
        let spinor: Vec<Scalar> = psi(3).iter().zip(psi(5)).map(|(x, z)| &(&a * x) + &(&b * &z)).collect();
        let m = AloffWallach::new(MetricParams::new(s.clone(), s.clone())?)?;
        let t = m.solve_torsion(&spinor, &m.invariant_three_forms())?.form;
        let w = g2_form_of_spinor(m.rep(), &spinor)?;
        check("ω_ab pairing", t.inner(&w)? == fixtures::t_ab_omega_inner(&s, &a, &b));
    }
    for y in [(1, 2), (1, 3), (2, 3), (1, 5), (3, 4)] {
        let y = Scalar::frac(y.0, y.1);
        let s = &(&Scalar::one() - &y) / &(&Scalar::int(2) * &(&Scalar::int(2) + &y));
        let p = MetricParams::new(s, y)?;
        check("ω5 W3 on curve", g2_type(&w5, &fixtures::t5(&p).scale(&four))? == G2Type::W3);
    }
    check("ω3 W1 at (1,2)", g2_type(&w3, &fixtures::t3(&MetricParams::sasakian()).scale(&four))? == G2Type::W1);
    check("ω5 W1 at (1,2/5)", g2_type(&w5, &fixtures::t5(&MetricParams::einstein()).scale(&four))? == G2Type::W1);
    let p14 = MetricParams::rational((1, 1), (4, 1))?;
    let m14 = AloffWallach::new(p14.clone())?;
    let m12 = AloffWallach::new(MetricParams::sasakian())?;
    check("Scal^g(1,4) = 54", m14.riemannian_scalar_curvature()? == Scalar::int(54) && fixtures::scal_g(&p14) == Scalar::int(54));
    check("Scal^g(1,2) = 42", m12.riemannian_scalar_curvature()? == Scalar::int(42));
    let t3 = fixtures::t3(&p14);
    check("Scal3(1,4) = 0", scalars_from_torsion(&w3, &t3.scale(&four))?.1.is_zero());
    let dt = m14.coset_differential(&t3)?;
    check("(T3²)4 = dT3/4 at (1,4)", square_parts(&t3)?.four == dt.scale(&Scalar::frac(1, 4)));
    Ok((fails.is_empty(), format!("25-point pairings, type loci, scalar curvatures at (1,4) and (1,2); failures {fails:?}")))
}

fn root_scan() -> Result<(bool, String)> {
    let roots = scan_roots();
    let want = [(0.62066, 0.852508), (1.49934, 1.66564)];
    let close = roots.len() == 2 && roots.iter().zip(want).all(|(r, w)| (r.0 - w.0).abs() < 1e-4 && (r.1 - w.1).abs() < 1e-4);
    let residual = roots.iter().map(|&(s, y)| scal3_f64(s, y).abs().max(scal5_f64(s, y).abs())).fold(0.0, f64::max);
    Ok((close && residual < 1e-9, format!("roots {roots:?}, max residual {residual:.2e}")))
}

fn veronese() -> Result<(bool, String)> {
    let mut g = Sampler::new(10);
    let mut bad = 0;
    let mut points = 0;
    while points < 50 {
        let p: [Scalar; 4] = std::array::from_fn(|_| g.rational());
        if p.iter().all(Scalar::is_zero) {
            continue;
        }
        points += 1;
        let s = sasakian::veronese_torsion(&p)?;
        if !(s.unique && s.matches_closed_form && s.residual_zero && s.w == Scalar::frac(-1, 6) && s.norm_sqr() == Scalar::frac(1, 12)) {
            bad += 1;
        }
    }
    let mut bad4 = 0;
    for _ in 0..20 {
        let p: [Scalar; 4] = std::array::from_fn(|_| g.nonzero_rational());
        let s = sasakian::veronese_4form(&p)?;
        if !(s.unique && s.residual_zero) {
            bad4 += 1;
        }
    }
    Ok((bad == 0 && bad4 == 0, format!("50 points: {bad} 3-form mismatches; 20 points: {bad4} 4-form failures")))
}

fn flat_transport() -> Result<(bool, String)> {
    let conn = FlatConnection::new(flat::cartan_torsion());
    let tri = flat::cartan_triangles(&conn, 0.5)?;
    // a 1-form has abelian g*_T, so every constant spinor satisfies the precondition
    let t = Form::int(3, &[(&[1], 1), (&[2], -2)]).add(&Form::term(3, &[3], Scalar::frac(1, 2)))?;
    let conn = FlatConnection::new(t);
    let psi0 = vec![Cx::one(), Cx::real(Scalar::int(2))];
    let (m, x) = ([0.3, -0.2, 0.5], [0.6, 0.8, 0.0]);
    let res: Vec<f64> = [1e-2, 1e-3, 1e-4].iter().map(|&h| flat::finite_difference_residual(&conn, &psi0, &m, &x, h)).collect::<Result<_>>()?;
    let ratios = [res[0] / res[1], res[1] / res[2]];
    let ok = tri.generated_dim == 3 && ratios.iter().all(|r| (9.0..=11.0).contains(r));
    Ok((ok, format!("triangle holonomy generates dim {}; residuals {res:?}, ratios {ratios:?}", tri.generated_dim)))
}

fn codifferential_det4() -> Result<(bool, String)> {
    let mut g = Sampler::new(12);
    let mut bad_delta = 0;
    for _ in 0..100 {
        let n = g.int(3, 8) as usize;
        let t = g.form(n, 3);
        let delta_g = g.form(n, 2);
        if flat::nabla_codifferential(&t, &t, &delta_g)? != delta_g {
            bad_delta += 1;
        }
    }
    let mut bad_det = 0;
    for _ in 0..100 {
        let (a, f) = (g.rational(), g.rational());
        let d = det_endomorphism(&a, &g.form(4, 2), &f)?;
        if d.direct != d.closed_form {
            bad_det += 1;
        }
    }
    Ok((bad_delta == 0 && bad_det == 0, format!("100 torsion forms: {bad_delta} with δ^∇T ≠ δ^gT; 100 endomorphisms: {bad_det} determinant mismatches")))
}

/// Curvature of the su(2) model with connection `Λ + 2c·M(X⌟e₁₂₃)`.
pub fn su2_torsion_flat(c: &Scalar) -> Result<bool> {
    let m = ReductiveModel::su2(Scalar::one());
    let t = Form::basis(3, &[1, 2, 3]);
    let two = Scalar::int(2);
    let maps = m
        .levi_civita_map()
        .iter()
        .enumerate()
        .map(|(i, l)| Ok(l.add(&t.contract_basis(i + 1)?.to_so()?.scale(&(&two * c)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(m.vector_curvature(&maps)?.is_flat())
}

fn flatness() -> Result<(bool, String)> {
    let plus = su2_torsion_flat(&Scalar::frac(1, 4))?;
    let minus = su2_torsion_flat(&Scalar::frac(-1, 4))?;
    let other = su2_torsion_flat(&Scalar::frac(1, 8))?;
    let m = AloffWallach::new(MetricParams::new(&Scalar::sqrt_int(3)? * &Scalar::frac(1, 2), Scalar::int(2))?)?;
    let a3 = m.invariant_three_forms();
    let mut curved = true;
    for k in [3, 4] {
        let t = m.solve_torsion(&psi(k), &a3)?.form;
        curved &= !m.torsion_curvature(&t)?.is_flat() && !m.spinor_curvature(&t)?.is_flat();
    }
    Ok((plus && minus && !other && curved, format!("su(2) ±1/4 flat: {plus}/{minus}, 1/8 flat: {other}; (√3/2, 2) T3, T4 curved: {curved}")))
}
