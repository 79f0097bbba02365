//! SU(2)-invariant forms on R⁷ = R³ ⊕ R⁴ (fixing e₁, e₂, e₇) and the torsion forms
//! that turn a spinor of the trivial summand Δ₇⁰ into a solution of `(X - 2·X⌟T)·ψ = 0`.
//!
//! Spinor coordinates `(a, b, c, d)` refer to `aψ₃ + bψ₄ + cψ₅ + dψ₆` in the basis of
//! [`crate::homogeneous::fixtures::basis_spinor`].

use crate::algebra::Form;
use crate::clifford::{Multivector, SpinRep};
use crate::error::{Error, Result};
use crate::homogeneous::fixtures::basis_spinor;
use crate::homogeneous::g2_form_of_spinor;
use crate::matrix::{self, Matrix};
use crate::scalar::Scalar;

/// The index triple fixed by SU(2).
pub const FIXED: [usize; 3] = [1, 2, 7];

/// `e₃₄ + e₅₆, e₃₅ - e₄₆, e₃₆ + e₄₅`.
pub fn su2_generators() -> [Form; 3] {
    [
        Form::int(7, &[(&[3, 4], 1), (&[5, 6], 1)]),
        Form::int(7, &[(&[3, 5], 1), (&[4, 6], -1)]),
        Form::int(7, &[(&[3, 6], 1), (&[4, 5], 1)]),
    ]
}

/// `de₁ = e₃₅ + e₄₆`, `de₂ = e₄₅ - e₃₆`, `de₇ = e₃₄ - e₅₆`.
pub fn contact_forms() -> [Form; 3] {
    [
        Form::int(7, &[(&[3, 5], 1), (&[4, 6], 1)]),
        Form::int(7, &[(&[4, 5], 1), (&[3, 6], -1)]),
        Form::int(7, &[(&[3, 4], 1), (&[5, 6], -1)]),
    ]
}

/// `e_i ∧ de_j` for `i, j ∈ {1,2,7}` in row order, then `e₁₂₇`.
pub fn three_form_family() -> Vec<Form> {
    let de = contact_forms();
    let mut out: Vec<Form> = FIXED.iter().flat_map(|&i| de.iter().map(move |d| Form::basis(7, &[i]).wedge(d).unwrap())).collect();
    out.push(Form::basis(7, &[1, 2, 7]));
    out
}

/// `e_i ∧ e_j ∧ de_k` for `(i,j) ∈ {12, 17, 27}`, `k ∈ {1,2,7}`, then `e₃₄₅₆`.
pub fn four_form_family() -> Vec<Form> {
    let de = contact_forms();
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (1, 7), (2, 7)] {
        for d in &de {
            out.push(Form::basis(7, &[i, j]).wedge(d).unwrap());
        }
    }
    out.push(Form::basis(7, &[3, 4, 5, 6]));
    out
}

/// Annihilated by the su(2) action on forms.
pub fn is_su2_invariant(f: &Form) -> bool {
    su2_generators().iter().all(|g| f.derivation(&g.to_so().unwrap()).is_zero())
}

/// Joint kernel of the su(2) spin action on Δ₇.
pub fn trivial_summand(rep: &SpinRep) -> Result<Vec<Vec<Scalar>>> {
    let mats: Vec<Matrix<Scalar>> = su2_generators().iter().map(|g| rep.real_form_matrix(g)).collect::<Result<_>>()?;
    let rows: Vec<Vec<Scalar>> = mats.iter().flat_map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>()).collect();
    Ok(Matrix::from_rows(rows).nullspace())
}

/// `aψ₃ + bψ₄ + cψ₅ + dψ₆`.
pub fn spinor(point: &[Scalar; 4]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); 8];
    for (c, k) in point.iter().zip(3..=6) {
        for (o, x) in out.iter_mut().zip(basis_spinor(k).unwrap()) {
            *o += &(c * &x);
        }
    }
    out
}

fn check_point(point: &[Scalar; 4]) -> Result<Scalar> {
    let n: Scalar = point.iter().map(Scalar::square).sum();
    if n.is_zero() {
        return Err(Error::InvalidInput("the projective point (0,0,0,0) is not allowed".into()));
    }
    Ok(n)
}

/// Quadratic forms `x_ij = vᵀ Q_ij v / |v|²`, ordered `11, 12, 17, 21, 22, 27, 71, 72, 77`.
fn veronese_quadrics() -> Vec<Matrix<Scalar>> {
    let sym = |entries: &[(usize, usize, i64)]| {
        let mut m = Matrix::zeros(4, 4);
        for &(i, j, c) in entries {
            let c = Scalar::frac(c, 6);
            m[(i, j)] = c.clone();
            m[(j, i)] = c;
        }
        m
    };
    vec![
        sym(&[(0, 0, 1), (1, 1, -1), (2, 2, -1), (3, 3, 1)]),
        sym(&[(0, 1, 1), (2, 3, 1)]),
        sym(&[(0, 2, 1), (1, 3, -1)]),
        sym(&[(0, 1, 1), (2, 3, -1)]),
        sym(&[(0, 0, -1), (1, 1, 1), (2, 2, -1), (3, 3, 1)]),
        sym(&[(1, 2, 1), (0, 3, 1)]),
        sym(&[(0, 2, 1), (1, 3, 1)]),
        sym(&[(1, 2, 1), (0, 3, -1)]),
        sym(&[(0, 0, -1), (1, 1, -1), (2, 2, 1), (3, 3, 1)]),
    ]
}

fn quad(q: &Matrix<Scalar>, v: &[Scalar]) -> Scalar {
    q.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
}

/// The closed-form coefficients `x_ij` (row-major over `i, j ∈ {1,2,7}`) and `w = -1/6`.
pub fn veronese_closed_form(point: &[Scalar; 4]) -> Result<([[Scalar; 3]; 3], Scalar)> {
    let n = check_point(point)?;
    let vals: Vec<Scalar> = veronese_quadrics().iter().map(|q| &quad(q, point) / &n).collect();
    let x = std::array::from_fn(|i| std::array::from_fn(|j| vals[3 * i + j].clone()));
    Ok((x, Scalar::frac(-1, 6)))
}

fn assemble(family: &[Form], coeffs: &[Scalar], grade: usize) -> Form {
    let mut f = Form::zero(7, grade);
    for (c, b) in coeffs.iter().zip(family) {
        f = f.add(&b.scale(c)).unwrap();
    }
    f
}

/// The system `(e_i - 2 e_i⌟F)·ψ = 0` over a family of forms.
fn killing_system(rep: &SpinRep, psi: &[Scalar], family: &[Form]) -> Result<(Matrix<Scalar>, Vec<Scalar>)> {
    let m = family.len();
    let mut a = Matrix::zeros(56, m);
    let mut b = Vec::with_capacity(56);
    let two = Scalar::int(-2);
    for i in 0..7 {
        for (col, f) in family.iter().enumerate() {
            let v = rep.real_form_matrix(&f.contract_basis(i + 1)?)?.mul_vec(psi);
            for (r, x) in v.into_iter().enumerate() {
                a[(8 * i + r, col)] = &two * &x;
            }
        }
        let e = rep.real_matrix(&Multivector::blade(7, &[i + 1]))?.mul_vec(psi);
        b.extend(e.into_iter().map(|x| -x));
    }
    Ok((a, b))
}

/// Residual components of `(e_i - 2 e_i⌟T)·ψ`, i = 1..7.
pub fn killing_residual(rep: &SpinRep, psi: &[Scalar], t: &Form) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(56);
    let two = Scalar::int(2);
    for i in 0..7 {
        let e = rep.real_matrix(&Multivector::blade(7, &[i + 1]))?.mul_vec(psi);
        let c = rep.real_form_matrix(&t.contract_basis(i + 1)?)?.mul_vec(psi);
        out.extend(e.iter().zip(&c).map(|(x, y)| x - &(&two * y)));
    }
    Ok(out)
}

/// Whether `½X·ψ = (X⌟T)·ψ` for every `X`, i.e. whether a Killing spinor with Killing
/// number ½ is parallel for `∇^g + (X⌟T)·`.
pub fn killing_to_parallel_check(rep: &SpinRep, psi: &[Scalar], t: &Form) -> Result<bool> {
    Ok(killing_residual(rep, psi, t)?.iter().all(Scalar::is_zero))
}

#[derive(Clone, Debug)]
pub struct VeroneseSolution {
    pub point: [Scalar; 4],
    /// `x[i][j]` for `i, j` running over `1, 2, 7`.
    pub x: [[Scalar; 3]; 3],
    pub w: Scalar,
    pub form: Form,
    pub unique: bool,
    /// The solver output equals the closed form.
    pub matches_closed_form: bool,
    pub residual_zero: bool,
}

impl VeroneseSolution {
    pub fn norm_sqr(&self) -> Scalar {
        self.x.iter().flatten().map(Scalar::square).sum()
    }
}

/// Solves `(X - 2·X⌟T)·ψ = 0` over the ten-parameter invariant 3-form family.
pub fn veronese_torsion(point: &[Scalar; 4]) -> Result<VeroneseSolution> {
    check_point(point)?;
    let rep = SpinRep::new(7)?;
    let psi = spinor(point);
    let family = three_form_family();
    let (a, b) = killing_system(&rep, &psi, &family)?;
    let (c, homog) = matrix::solve(&a, &b).ok_or_else(|| Error::NoSolution("invariant 3-form system is inconsistent".into()))?;
    let form = assemble(&family, &c, 3);
    let x: [[Scalar; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| c[3 * i + j].clone()));
    let (cx, cw) = veronese_closed_form(point)?;
    let matches_closed_form = x == cx && c[9] == cw;
    let residual_zero = killing_to_parallel_check(&rep, &psi, &form)?;
    Ok(VeroneseSolution { point: point.clone(), x, w: c[9].clone(), form, unique: homog.is_empty(), matches_closed_form, residual_zero })
}

#[derive(Clone, Debug)]
pub struct FourFormSolution {
    pub point: [Scalar; 4],
    /// Coefficients over [`four_form_family`].
    pub coefficients: Vec<Scalar>,
    pub form: Form,
    pub rank: usize,
    pub unique: bool,
    pub residual_zero: bool,
}

/// Solves `(X - 2·X⌟T)·ψ = 0` over the ten-parameter invariant 4-form family.
pub fn veronese_4form(point: &[Scalar; 4]) -> Result<FourFormSolution> {
    check_point(point)?;
    let rep = SpinRep::new(7)?;
    let psi = spinor(point);
    let family = four_form_family();
    let (a, b) = killing_system(&rep, &psi, &family)?;
    let rank = a.rank();
    let (c, homog) = matrix::solve(&a, &b).ok_or_else(|| Error::NoSolution("invariant 4-form system is inconsistent".into()))?;
    let form = assemble(&family, &c, 4);
    let residual_zero = killing_to_parallel_check(&rep, &psi, &form)?;
    Ok(FourFormSolution { point: point.clone(), coefficients: c, form, rank, unique: homog.is_empty(), residual_zero })
}

/// Checks `[X⌟T, ω_ψ] = -X⌟*ω_ψ` in the Clifford algebra for every basis vector, where
/// `ω_ψ` is the G₂ form of `ψ`.
pub fn contraction_identity(rep: &SpinRep, psi: &[Scalar], t: &Form) -> Result<bool> {
    let omega = g2_form_of_spinor(rep, psi)?;
    let star = omega.hodge_star();
    let om = Multivector::from(&omega);
    for i in 1..=7 {
        let c = Multivector::from(t.contract_basis(i)?);
        let lhs = c.commutator(&om)?;
        let rhs = Multivector::from(star.contract_basis(i)?.neg());
        if lhs.sub(&rhs)?.is_zero() {
            continue;
        }
        return Ok(false);
    }
    Ok(true)
}

/// Dimension data for the Veronese family.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FamilyReport {
    /// Generic rank of the differential of `(a,b,c,d) ↦ x_ij` on `P³`.
    pub veronese_rank: usize,
    /// The same rank restricted to the Killing spinors `aψ₃ + bψ₄ + dψ₆` (a `P²`).
    pub killing_rank: usize,
    /// `Σ x_ij²` at every sampled point.
    pub norm_sqr: Scalar,
    pub norm_constant: bool,
    pub samples: usize,
}

fn jacobian(point: &[Scalar; 4], vars: &[usize]) -> Matrix<Scalar> {
    let n: Scalar = point.iter().map(Scalar::square).sum();
    let n2 = n.square();
    let qs = veronese_quadrics();
    Matrix::from_fn(qs.len(), vars.len(), |r, m| {
        let q = &qs[r];
        let grad = &Scalar::int(2) * &q.mul_vec(point)[vars[m]];
        let val = quad(q, point);
        let num = &(&grad * &n) - &(&(&Scalar::int(2) * &val) * &point[vars[m]]);
        &num / &n2
    })
}

/// Generic differential ranks and the sphere invariant, from `samples` random rational points.
pub fn family_dimension_report(samples: usize, seed: u64) -> Result<FamilyReport> {
    let mut g = crate::sample::Sampler::new(seed);
    let mut veronese_rank = 0;
    let mut killing_rank = 0;
    let mut norm: Option<Scalar> = None;
    let mut constant = true;
    for _ in 0..samples.max(1) {
        let p: [Scalar; 4] = std::array::from_fn(|_| g.nonzero_rational());
        veronese_rank = veronese_rank.max(jacobian(&p, &[0, 1, 2, 3]).rank());
        let k = [p[0].clone(), p[1].clone(), Scalar::zero(), p[3].clone()];
        killing_rank = killing_rank.max(jacobian(&k, &[0, 1, 3]).rank());
        let (x, _) = veronese_closed_form(&p)?;
        let s: Scalar = x.iter().flatten().map(Scalar::square).sum();
        match &norm {
            None => norm = Some(s),
            Some(n) => constant &= *n == s,
        }
    }
    Ok(FamilyReport { veronese_rank, killing_rank, norm_sqr: norm.unwrap(), norm_constant: constant, samples: samples.max(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: [i64; 4]) -> [Scalar; 4] {
        v.map(Scalar::int)
    }

    #[test]
    fn families_are_invariant() {
        for f in three_form_family().iter().chain(&four_form_family()) {
            assert!(is_su2_invariant(f));
        }
        assert!(!is_su2_invariant(&Form::basis(7, &[1, 3, 5])));
    }

    #[test]
    fn anchor_point() {
        let s = veronese_torsion(&pt([1, 0, 0, 0])).unwrap();
        assert!(s.unique && s.matches_closed_form && s.residual_zero);
        let d = [Scalar::frac(1, 6), Scalar::frac(-1, 6), Scalar::frac(-1, 6)];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.x[i][j], if i == j { d[i].clone() } else { Scalar::zero() });
            }
        }
        assert_eq!(s.w, Scalar::frac(-1, 6));
        assert_eq!(s.norm_sqr(), Scalar::frac(1, 12));
    }
}
