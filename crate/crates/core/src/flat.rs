//! Spinorial connections with constant torsion on flat Rⁿ: parallel spinor fields, loop
//! transport, the integrability endomorphism and pointwise identities for forms.
//!
//! Normalization: a form `T` enters the spinor derivative as `∇_X ψ = ∂_X ψ + s (X ⌟ T)·ψ`.
//! For a 3-form the induced connection on vectors is `∇_X Y = ∂_X Y + 2s M(X ⌟ T) Y`, whose
//! torsion tensor is `4sT`.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{blades, indices, Form};
use crate::clifford::{self, hermitian, Multivector, SpinRep};
use crate::error::{Error, Result};
use crate::field::{Cx, Field};
use crate::holonomy;
use crate::lie;
use crate::matrix::Matrix;
use crate::numeric::{self, CMat, RMat};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct FlatConnection {
    pub t: Form,
    pub s: Scalar,
}

impl FlatConnection {
    pub fn new(t: Form) -> Self {
        FlatConnection { t, s: Scalar::one() }
    }

    pub fn with_scale(t: Form, s: Scalar) -> Self {
        FlatConnection { t, s }
    }

    pub fn dim(&self) -> usize {
        self.t.dim()
    }

    /// `s·ρ(X ⌟ T)` for a float direction `X`.
    fn spinor_term(&self, rep: &SpinRep, x: &[f64]) -> Result<CMat> {
        let d = rep.spin_dim();
        let mut out = CMat::zeros(d, d);
        let s = self.s.to_f64();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            let c = self.t.contract_basis(i + 1)?;
            out += rep.form_matrix(&c)?.to_c64() * Complex64::new(s * xi, 0.0);
        }
        Ok(out)
    }

    /// `2s M(X ⌟ T)` for a float direction `X`; 3-forms only.
    fn vector_term(&self, x: &[f64]) -> Result<RMat> {
        if self.t.grade() != 3 {
            return Err(Error::Grade(format!("vector transport needs a 3-form, got grade {}", self.t.grade())));
        }
        let n = self.dim();
        let mut out = RMat::zeros(n, n);
        let s = 2.0 * self.s.to_f64();
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0.0 {
                continue;
            }
            let m = self.t.contract_basis(i + 1)?.to_so()?;
            out += m.to_c64().map(|z| z.re) * (s * xi);
        }
        Ok(out)
    }
}

fn check_point(n: usize, m: &[f64]) -> Result<()> {
    if m.len() != n {
        return Err(Error::Dimension(format!("point of length {} in R^{n}", m.len())));
    }
    Ok(())
}

/// Checks that the holonomy algebra `h*_T = [g*_T, g*_T]` annihilates `psi0`.
pub fn check_parallel_precondition(t: &Form, psi0: &[Cx]) -> Result<()> {
    let rep = SpinRep::new(t.dim())?;
    if psi0.len() != rep.spin_dim() {
        return Err(Error::Dimension(format!("spinor of length {} for Δ_{} of dimension {}", psi0.len(), t.dim(), rep.spin_dim())));
    }
    let gens = holonomy::contractions(t)?.iter().map(|g| rep.form_matrix(g)).collect::<Result<Vec<_>>>()?;
    let g = lie::bracket_closure_sized(rep.spin_dim(), &gens)?;
    let h = lie::derived_algebra(&g)?;
    for (k, e) in h.elements().iter().enumerate() {
        if e.mul_vec(psi0).iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(format!("element {k} of the holonomy algebra basis does not annihilate the spinor")));
        }
    }
    Ok(())
}

/// `ψ(m) = Exp(-s·ρ(m ⌟ T))·ψ₀`, parallel when `h*_T·ψ₀ = 0`.
pub fn parallel_spinor_field(conn: &FlatConnection, psi0: &[Cx], m: &[f64]) -> Result<Vec<Complex64>> {
    check_point(conn.dim(), m)?;
    check_parallel_precondition(&conn.t, psi0)?;
    spinor_field_unchecked(conn, psi0, m)
}

fn spinor_field_unchecked(conn: &FlatConnection, psi0: &[Cx], m: &[f64]) -> Result<Vec<Complex64>> {
    let rep = SpinRep::new(conn.dim())?;
    let a = conn.spinor_term(&rep, m)?;
    let e = (-a).exp();
    let v = DVector::from_iterator(psi0.len(), psi0.iter().map(Cx::to_c64));
    Ok((e * v).iter().copied().collect())
}

/// Norm of the forward-difference residual `(ψ(m + hX) - ψ(m))/h + s·ρ(X ⌟ T)·ψ(m)`.
pub fn finite_difference_residual(conn: &FlatConnection, psi0: &[Cx], m: &[f64], x: &[f64], h: f64) -> Result<f64> {
    check_point(conn.dim(), m)?;
    check_point(conn.dim(), x)?;
    check_parallel_precondition(&conn.t, psi0)?;
    let rep = SpinRep::new(conn.dim())?;
    let here = DVector::from_vec(spinor_field_unchecked(conn, psi0, m)?);
    let moved: Vec<f64> = m.iter().zip(x).map(|(a, b)| a + h * b).collect();
    let there = DVector::from_vec(spinor_field_unchecked(conn, psi0, &moved)?);
    let term = conn.spinor_term(&rep, x)? * &here;
    Ok(((there - &here) / Complex64::new(h, 0.0) + term).norm())
}

/// A closed polygon; the last vertex repeats the first.
#[derive(Clone, Debug)]
pub struct PolygonLoop {
    points: Vec<Vec<f64>>,
}

impl PolygonLoop {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput("a loop needs at least two vertices".into()));
        }
        let n = points[0].len();
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::Dimension("loop vertices of different lengths".into()));
        }
        if points.first() != points.last() {
            return Err(Error::InvalidInput("loop is not closed".into()));
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("consecutive loop vertices coincide".into()));
        }
        Ok(PolygonLoop { points })
    }

    /// Closes the polygon by appending the first vertex.
    pub fn closed(mut points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(p) = points.first().cloned() {
            points.push(p);
        }
        PolygonLoop::new(points)
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

/// Transport of vectors around `lp`: each straight edge `d` contributes `exp(-2s M(d ⌟ T))`.
pub fn transport_loop(conn: &FlatConnection, lp: &PolygonLoop) -> Result<RMat> {
    let n = conn.dim();
    if lp.dim() != n {
        return Err(Error::Dimension(format!("loop in R^{} for a form on R^{n}", lp.dim())));
    }
    let mut total = RMat::identity(n, n);
    for w in lp.points.windows(2) {
        let d: Vec<f64> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
        let e = (-conn.vector_term(&d)?).exp();
        total = e * total;
    }
    Ok(total)
}

/// Cartan's connection `∇_X Y = ∇^g_X Y - X × Y` on R³ in the spinor normalization.
pub fn cartan_torsion() -> Form {
    Form::term(3, &[1, 2, 3], Scalar::frac(-1, 2))
}

/// Rotation angle and unit axis of a 3×3 rotation matrix.
pub fn rotation_angle_axis(r: &RMat) -> Option<(f64, [f64; 3])> {
    if r.nrows() != 3 || r.ncols() != 3 {
        return None;
    }
    let c = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let angle = c.acos();
    let v = [r[(2, 1)] - r[(1, 2)], r[(0, 2)] - r[(2, 0)], r[(1, 0)] - r[(0, 1)]];
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Some((angle, [0.0, 0.0, 0.0]));
    }
    Some((angle, [v[0] / norm, v[1] / norm, v[2] / norm]))
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleHolonomy {
    pub rotations: Vec<Vec<Vec<f64>>>,
    pub angles: Vec<f64>,
    pub generated_dim: usize,
}

/// Transports around right triangles in the three coordinate planes of R³ and returns the
/// dimension of the Lie algebra generated by the skew parts of the resulting rotations.
pub fn cartan_triangles(conn: &FlatConnection, size: f64) -> Result<TriangleHolonomy> {
    let mut rotations = Vec::new();
    let mut angles = Vec::new();
    let mut skews = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let o = vec![0.0; 3];
        let mut p = o.clone();
        p[a] = size;
        let mut q = o.clone();
        q[b] = size;
        let r = transport_loop(conn, &PolygonLoop::closed(vec![o, p, q])?)?;
        angles.push(rotation_angle_axis(&r).map_or(0.0, |x| x.0));
        skews.push((&r - r.transpose()) * 0.5);
        rotations.push((0..3).map(|i| (0..3).map(|j| r[(i, j)]).collect()).collect());
    }
    Ok(TriangleHolonomy { rotations, angles, generated_dim: numeric::closure_dim(&skews, 1e-9) })
}

/// `3s·dT - 8s²·σ_T + 2s·δT + ¼Scal^s` acting on Δ_n, with its exact determinant.
pub fn integrability_endomorphism(
    dt: &Form,
    sigma: &Form,
    delta_t: &Form,
    scal_s: &Scalar,
    s: &Scalar,
) -> Result<(Matrix<Cx>, Cx)> {
    let n = dt.dim();
    if sigma.dim() != n || delta_t.dim() != n {
        return Err(Error::Dimension("forms of different dimensions".into()));
    }
    if dt.grade() != 4 || sigma.grade() != 4 || delta_t.grade() != 2 {
        return Err(Error::Grade("expected 4-forms dT, σ_T and a 2-form δT".into()));
    }
    let el = integrability_element(dt, sigma, delta_t, scal_s, s)?;
    let m = SpinRep::new(n)?.matrix(&el)?;
    let det = m.det();
    Ok((m, det))
}

/// The Clifford element behind [`integrability_endomorphism`].
pub fn integrability_element(dt: &Form, sigma: &Form, delta_t: &Form, scal_s: &Scalar, s: &Scalar) -> Result<Multivector> {
    let n = dt.dim();
    let four = dt.scale(&(&Scalar::int(3) * s)).sub(&sigma.scale(&(&Scalar::int(8) * &s.square())))?;
    let two = delta_t.scale(&(&Scalar::int(2) * s));
    let zero = Multivector::scalar(n, scal_s * &Scalar::frac(1, 4));
    zero.add(&Multivector::from(&four))?.add(&Multivector::from(&two))
}

/// Admissible parameters from the pointwise form of the integrability conditions.
#[derive(Clone, Debug, Serialize)]
pub struct ParameterConstraint {
    /// `⟨σ_T ψ, ψ⟩ / |ψ|²`
    pub sigma_mean: Scalar,
    /// `⟨dT ψ, ψ⟩ / |ψ|²`
    pub dt_mean: Scalar,
    /// `T²₀ = ‖T‖²`
    pub t_sq: Scalar,
    pub scal_g: Scalar,
    /// `s = ⅛⟨dTψ,ψ⟩/⟨σ_Tψ,ψ⟩`, when the denominator is nonzero.
    pub quotient: Option<Scalar>,
    /// Solutions of `Scal^g = 24 s² T²₀`, when they are exact scalars.
    pub quadratic: Vec<Scalar>,
    /// Neither branch constrains `s`.
    pub unconstrained: bool,
}

impl ParameterConstraint {
    /// `Scal^s = Scal^g - 24 s² T²₀`.
    pub fn scal_s(&self, s: &Scalar) -> Scalar {
        &self.scal_g - &(&Scalar::int(24) * &(&s.square() * &self.t_sq))
    }

    /// `64 s²⟨σ_T ψ, ψ⟩ + Scal^s`; zero for admissible `s`.
    pub fn residual(&self, s: &Scalar) -> Scalar {
        &(&Scalar::int(64) * &(&s.square() * &self.sigma_mean)) + &self.scal_s(s)
    }

    pub fn admits(&self, s: &Scalar) -> bool {
        match &self.quotient {
            Some(q) => q == s && self.residual(s).is_zero(),
            None => self.residual(s).is_zero(),
        }
    }
}

fn expectation(rep: &SpinRep, f: &Form, psi: &[Cx], norm: &Scalar) -> Result<Scalar> {
    let v = rep.act(&Multivector::from(f), psi)?;
    Ok(&hermitian(&v, psi).re / norm)
}

pub fn parameter_constraints(t: &Form, dt: &Form, psi: &[Cx], scal_g: &Scalar) -> Result<ParameterConstraint> {
    if psi.iter().all(Cx::is_zero) {
        return Err(Error::InvalidInput("spinor is zero".into()));
    }
    let rep = SpinRep::new(t.dim())?;
    let norm = hermitian(psi, psi).re;
    let sigma = clifford::sigma_t(t)?;
    let sigma_mean = expectation(&rep, &sigma, psi, &norm)?;
    let dt_mean = expectation(&rep, dt, psi, &norm)?;
    let t_sq = t.norm_sqr();
    let quotient = (!sigma_mean.is_zero()).then(|| &(&dt_mean / &sigma_mean) * &Scalar::frac(1, 8));
    let mut quadratic = Vec::new();
    let unconstrained = t_sq.is_zero() && scal_g.is_zero() && sigma_mean.is_zero();
    if !t_sq.is_zero() {
        if let Some(r) = (scal_g / &(&Scalar::int(24) * &t_sq)).sqrt() {
            if r.is_zero() {
                quadratic.push(r);
            } else {
                quadratic.push(-&r);
                quadratic.push(r);
            }
        }
    }
    Ok(ParameterConstraint { sigma_mean, dt_mean, t_sq, scal_g: scal_g.clone(), quotient, quadratic, unconstrained })
}

/// `δ^∇ω = δ^gω - ½ Σ_{i,j} (e_i ⌟ e_j ⌟ T) ∧ (e_i ⌟ e_j ⌟ ω)`.
pub fn nabla_codifferential(t: &Form, omega: &Form, delta_g: &Form) -> Result<Form> {
    let corr = codifferential_correction(t, omega)?;
    if delta_g.dim() != omega.dim() || delta_g.grade() + 1 != omega.grade().max(1) {
        return Err(Error::Grade("δ^g ω must have one degree less than ω".into()));
    }
    delta_g.sub(&corr.scale(&Scalar::frac(1, 2)))
}

/// `Σ_{i,j} (e_i ⌟ e_j ⌟ T) ∧ (e_i ⌟ e_j ⌟ ω)`.
pub fn codifferential_correction(t: &Form, omega: &Form) -> Result<Form> {
    let n = t.dim();
    if omega.dim() != n {
        return Err(Error::Dimension("forms of different dimensions".into()));
    }
    if t.grade() != 3 {
        return Err(Error::Grade("torsion must be a 3-form".into()));
    }
    let k = omega.grade();
    if k < 2 {
        return Ok(Form::zero(n, k.saturating_sub(1)));
    }
    let mut out = Form::zero(n, k - 1);
    for i in 1..=n {
        for j in 1..=n {
            let a = t.contract_basis(j)?.contract_basis(i)?;
            let b = omega.contract_basis(j)?.contract_basis(i)?;
            if !a.is_zero() && !b.is_zero() {
                out = out.add(&a.wedge(&b)?)?;
            }
        }
    }
    Ok(out)
}

/// The three identities satisfied by a ∇-parallel 2-form, evaluated from components.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormIdentities {
    /// `δ^gΩ = ¼ Σ Ω_{βj} T_{βjγ} e_γ`
    pub codifferential: Form,
    /// `dΩ = Σ_j (e_j ⌟ Ω) ∧ (e_j ⌟ T)`
    pub differential: Form,
    /// `g(Ω, ∇*∇^g Ω) = ½ Σ Ω_{αγ} Ω_{αk} T_{βjk} T_{βjγ}`
    pub bochner_pairing: Scalar,
}

pub fn parallel_two_form_identities(omega: &Form, t: &Form) -> Result<TwoFormIdentities> {
    let n = t.dim();
    if omega.dim() != n || omega.grade() != 2 || t.grade() != 3 {
        return Err(Error::Grade("expected a 2-form and a 3-form on the same space".into()));
    }
    let w = |a: usize, b: usize| omega.eval_basis(&[a, b]);
    let tt = |a: usize, b: usize, c: usize| t.eval_basis(&[a, b, c]);
    let mut codiff = Form::zero(n, 1);
    let quarter = Scalar::frac(1, 4);
    for g in 1..=n {
        let mut acc = Scalar::zero();
        for b in 1..=n {
            for j in 1..=n {
                acc += &(&w(b, j) * &tt(b, j, g));
            }
        }
        codiff.add_term(&[g], &(&acc * &quarter));
    }
    let mut differential = Form::zero(n, 3);
    for j in 1..=n {
        let a = omega.contract_basis(j)?;
        let b = t.contract_basis(j)?;
        differential = differential.add(&a.wedge(&b)?)?;
    }
    let mut bochner = Scalar::zero();
    for a in 1..=n {
        for g in 1..=n {
            let wag = w(a, g);
            if wag.is_zero() {
                continue;
            }
            for k in 1..=n {
                let wak = w(a, k);
                if wak.is_zero() {
                    continue;
                }
                for b in 1..=n {
                    for j in 1..=n {
                        bochner += &(&(&wag * &wak) * &(&tt(b, j, k) * &tt(b, j, g)));
                    }
                }
            }
        }
    }
    Ok(TwoFormIdentities { codifferential: codiff, differential, bochner_pairing: &bochner * &Scalar::frac(1, 2) })
}

/// `½ (Ω ⌟ T)` with `Ω ⌟ T = Σ_{β<j} Ω_{βj} T(e_β, e_j, ·)`.
pub fn half_contraction(omega: &Form, t: &Form) -> Result<Form> {
    let n = t.dim();
    let mut out = Form::zero(n, 1);
    for m in blades(n, 2) {
        let ix = indices(m);
        let c = omega.coeff_mask(m);
        if c.is_zero() {
            continue;
        }
        let x = t.contract_basis(ix[0])?.contract_basis(ix[1])?;
        // T(e_β, e_j, ·) = e_j ⌟ e_β ⌟ T
        out = out.add(&x.scale(&c))?;
    }
    Ok(out.scale(&Scalar::frac(1, 2)))
}

/// The component formula for `dΩ`: `(1/6) Σ {Ω_{αj}T_{βjγ} - Ω_{βj}T_{αjγ} + Ω_{γj}T_{αjβ}} e_{αβγ}`.
pub fn differential_components(omega: &Form, t: &Form) -> Form {
    let n = t.dim();
    let w = |a: usize, b: usize| omega.eval_basis(&[a, b]);
    let tt = |a: usize, b: usize, c: usize| t.eval_basis(&[a, b, c]);
    let mut out = Form::zero(n, 3);
    let sixth = Scalar::frac(1, 6);
    for a in 1..=n {
        for b in 1..=n {
            for g in 1..=n {
                if a == b || b == g || a == g {
                    continue;
                }
                let mut acc = Scalar::zero();
                for j in 1..=n {
                    acc += &(&w(a, j) * &tt(b, j, g));
                    acc -= &(&w(b, j) * &tt(a, j, g));
                    acc += &(&w(g, j) * &tt(a, j, b));
                }
                out.add_term(&[a, b, g], &(&acc * &sixth));
            }
        }
    }
    out
}

/// The simplified pairing `½ Σ_κ Σ_{ij} (T²_{ij,2κ-1} + T²_{ij,2κ}) A²_κ` for
/// `Ω = Σ A_κ e_{2κ-1,2κ}`.
pub fn adapted_bochner(a: &[Scalar], t: &Form) -> Scalar {
    let n = t.dim();
    let mut total = Scalar::zero();
    for (k, ak) in a.iter().enumerate() {
        let mut s = Scalar::zero();
        for i in 1..=n {
            for j in 1..=n {
                s += &t.eval_basis(&[i, j, 2 * k + 1]).square();
                s += &t.eval_basis(&[i, j, 2 * k + 2]).square();
            }
        }
        total += &(&s * &ak.square());
    }
    &total * &Scalar::frac(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_helix() {
        let conn = FlatConnection::new(cartan_torsion());
        let t = 0.7;
        let r = transport_loop(&conn, &PolygonLoop::new(vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, t], vec![0.0, 0.0, 0.0]]).unwrap()).unwrap();
        assert!((r - RMat::identity(3, 3)).norm() < 1e-12);
        let e = (-conn.vector_term(&[0.0, 0.0, t]).unwrap()).exp();
        let v = e.column(0);
        assert!((v[0] - t.cos()).abs() < 1e-12 && (v[1] - t.sin()).abs() < 1e-12);
    }

    #[test]
    fn cartan_triangles_generate_so3() {
        let conn = FlatConnection::new(cartan_torsion());
        assert_eq!(cartan_triangles(&conn, 0.5).unwrap().generated_dim, 3);
    }

    #[test]
    fn one_form_field() {
        let t = Form::int(3, &[(&[1], 1), (&[2], -2)]);
        let conn = FlatConnection::new(t);
        let psi0 = vec![Cx::one(), Cx::zero()];
        let m = [0.3, 0.1, -0.4];
        let psi = parallel_spinor_field(&conn, &psi0, &m).unwrap();
        assert!((psi[0].re - (-(0.3 - 0.2f64)).exp()).abs() < 1e-12);
    }

    #[test]
    fn precondition_violation() {
        let t = Form::int(3, &[(&[1, 2, 3], 1)]);
        let psi0 = vec![Cx::one(), Cx::zero()];
        assert!(matches!(parallel_spinor_field(&FlatConnection::new(t), &psi0, &[0.0; 3]), Err(Error::Precondition(_))));
    }

    #[test]
    fn scalar_integrability() {
        let z4 = Form::zero(5, 4);
        let z2 = Form::zero(5, 2);
        let (_, det) = integrability_endomorphism(&z4, &z4, &z2, &Scalar::int(4), &Scalar::one()).unwrap();
        assert!(det.is_one());
    }

    #[test]
    fn torsion_codifferential_unchanged() {
        let t = Form::int(5, &[(&[1, 2, 3], 2), (&[2, 4, 5], -1), (&[1, 3, 5], 3)]);
        assert!(codifferential_correction(&t, &t).unwrap().is_zero());
    }
}
