//! Invariant calculus on reductive homogeneous spaces G/H with abelian H, and the
//! Aloff-Wallach space N(1,1) = SU(3)/S¹ with its two-parameter metric family g_{s,y}.
//!
//! Torsion scales: the spinor equations solved here read `∇^g_X ψ + (X⌟T)·ψ = 0`. The
//! metric connection with that spinor lift has vector torsion `4T`, which is the scale
//! expected by [`scalars_from_torsion`], [`g2_type`] and [`ricci_characteristic`].

pub mod fixtures;

use crate::algebra::{blades, indices, Form};
use crate::clifford::{lift_element, SpinRep};
use crate::error::{Error, Result};
use crate::field::{Cx, Field};
use crate::matrix::{self, Echelon, Matrix};
use crate::scalar::Scalar;

/// Metric parameters `(s, y)`, both positive.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricParams {
    pub s: Scalar,
    pub y: Scalar,
}

impl MetricParams {
    pub fn new(s: Scalar, y: Scalar) -> Result<Self> {
        if !s.is_positive() || !y.is_positive() {
            return Err(Error::InvalidInput(format!("metric parameters must be positive, got s={s}, y={y}")));
        }
        Ok(MetricParams { s, y })
    }

    pub fn rational(s: (i64, i64), y: (i64, i64)) -> Result<Self> {
        MetricParams::new(Scalar::frac(s.0, s.1), Scalar::frac(y.0, y.1))
    }

    /// The 3-Sasakian metric.
    pub fn sasakian() -> Self {
        MetricParams::rational((1, 1), (2, 1)).unwrap()
    }

    /// The Einstein metric with one Killing spinor.
    pub fn einstein() -> Self {
        MetricParams::rational((1, 1), (2, 5)).unwrap()
    }
}

/// Structure constants of `g = m ⊕ h` in an orthonormal frame of `m`, with `h` abelian.
#[derive(Clone, Debug)]
pub struct ReductiveModel {
    n: usize,
    br: Vec<Vec<Vec<Scalar>>>,
    brh: Vec<Vec<Vec<Scalar>>>,
    iso: Vec<Matrix<Scalar>>,
}

impl ReductiveModel {
    /// `br[i][j][k]` is the `X_k` component of `[X_i, X_j]`, `brh[i][j][r]` its `H_r`
    /// component, and `iso[r]` the matrix of `ad(H_r)` on `m`.
    pub fn new(br: Vec<Vec<Vec<Scalar>>>, brh: Vec<Vec<Vec<Scalar>>>, iso: Vec<Matrix<Scalar>>) -> Result<Self> {
        let n = br.len();
        let r = iso.len();
        let shape_ok = br.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && brh.len() == n
            && brh.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == r))
            && iso.iter().all(|m| m.rows() == n && m.cols() == n);
        if !shape_ok {
            return Err(Error::Dimension("inconsistent structure constant shapes".into()));
        }
        let model = ReductiveModel { n, br, brh, iso };
        for i in 0..n {
            for j in 0..n {
                let anti = (0..n).all(|k| (&model.br[i][j][k] + &model.br[j][i][k]).is_zero())
                    && (0..r).all(|q| (&model.brh[i][j][q] + &model.brh[j][i][q]).is_zero());
                if !anti {
                    return Err(Error::InvalidInput(format!("bracket [X{},X{}] is not antisymmetric", i + 1, j + 1)));
                }
            }
        }
        if let Some((a, b, c)) = model.jacobi_violation() {
            return Err(Error::InvalidInput(format!("Jacobi identity fails on basis triple ({a}, {b}, {c})")));
        }
        Ok(model)
    }

    /// The Lie algebra su(2) with `[e_i, e_j] = λ ε_ijk e_k` and trivial isotropy.
    pub fn su2(lambda: Scalar) -> Self {
        let mut br = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            br[i][j][k] = lambda.clone();
            br[j][i][k] = -&lambda;
        }
        ReductiveModel::new(br, vec![vec![vec![]; 3]; 3], vec![]).expect("su(2) structure constants")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn isotropy_dim(&self) -> usize {
        self.iso.len()
    }

    /// Components of `[X_i, X_j]_m` (0-based indices).
    pub fn bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.br[i][j]
    }

    /// Components of `[X_i, X_j]_h`.
    pub fn bracket_h(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brh[i][j]
    }

    pub fn isotropy(&self) -> &[Matrix<Scalar>] {
        &self.iso
    }

    fn full_bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let (n, r) = (self.n, self.iso.len());
        let mut out = vec![Scalar::zero(); n + r];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for k in 0..n {
                    out[k] += &(&c * &self.br[i][j][k]);
                }
                for q in 0..r {
                    out[n + q] += &(&c * &self.brh[i][j][q]);
                }
            }
        }
        for q in 0..r {
            for j in 0..n {
                for k in 0..n {
                    let a = &self.iso[q][(k, j)];
                    if a.is_zero() {
                        continue;
                    }
                    out[k] += &(&(&u[n + q] * &v[j]) * a);
                    out[k] -= &(&(&v[n + q] * &u[j]) * a);
                }
            }
        }
        out
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.n + self.iso.len();
        let unit = |i: usize| (0..d).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect::<Vec<_>>();
        for a in 0..d {
            for b in a + 1..d {
                let ab = self.full_bracket(&unit(a), &unit(b));
                for c in b + 1..d {
                    let bc = self.full_bracket(&unit(b), &unit(c));
                    let ca = self.full_bracket(&unit(c), &unit(a));
                    let t1 = self.full_bracket(&ab, &unit(c));
                    let t2 = self.full_bracket(&bc, &unit(a));
                    let t3 = self.full_bracket(&ca, &unit(b));
                    if (0..d).any(|k| !(&(&t1[k] + &t2[k]) + &t3[k]).is_zero()) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Whether every isotropy generator annihilates `f`.
    pub fn is_invariant(&self, f: &Form) -> bool {
        f.dim() == self.n && self.iso.iter().all(|h| f.derivation(h).is_zero())
    }

    fn d_basis(&self, k: usize) -> Form {
        let mut out = Form::zero(self.n, 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let c = &self.br[i][j][k];
                if !c.is_zero() {
                    out.add_term(&[i + 1, j + 1], &-c);
                }
            }
        }
        out
    }

    /// Exterior derivative of an invariant form on `G/H`, i.e. the relative
    /// Chevalley-Eilenberg differential with forms extended by zero on `h`.
    pub fn coset_differential(&self, f: &Form) -> Result<Form> {
        if f.dim() != self.n {
            return Err(Error::Dimension(format!("{}-dimensional form on a {}-dimensional space", f.dim(), self.n)));
        }
        if !self.is_invariant(f) {
            return Err(Error::Precondition("form is not isotropy invariant".into()));
        }
        let dx: Vec<Form> = (0..self.n).map(|k| self.d_basis(k)).collect();
        let mut out = Form::zero(self.n, f.grade() + 1);
        for (mask, c) in f.terms() {
            let idx = indices(mask);
            for (p, &i) in idx.iter().enumerate() {
                let before = wedge_all(self.n, &idx[..p]);
                let after = wedge_all(self.n, &idx[p + 1..]);
                let term = before.wedge(&dx[i - 1])?.wedge(&after)?;
                let term = if p % 2 == 1 { term.neg() } else { term };
                out = out.add(&term.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Levi-Civita connection map, `Λ(X_i) X_j = ½[X_i,X_j]_m + U(X_i,X_j)`, as matrices
    /// with `Λ_i[k][j] = ⟨Λ(X_i)X_j, X_k⟩`.
    pub fn levi_civita_map(&self) -> Vec<Matrix<Scalar>> {
        let n = self.n;
        let half = Scalar::frac(1, 2);
        (0..n)
            .map(|i| {
                Matrix::from_fn(n, n, |k, j| {
                    let u = &self.br[k][i][j] + &self.br[k][j][i];
                    &half * &(&self.br[i][j][k] + &u)
                })
            })
            .collect()
    }

    /// `Λ_i + 2 M(X_i ⌟ T)`: the metric connection whose spinor lift is `Λ̃_i + (X_i⌟T)·`.
    /// Its torsion is `4T`.
    pub fn connection_with_torsion(&self, t: &Form) -> Result<Vec<Matrix<Scalar>>> {
        if t.grade() != 3 || t.dim() != self.n {
            return Err(Error::Grade("connection torsion must be a 3-form on m".into()));
        }
        let two = Scalar::int(2);
        self.levi_civita_map()
            .into_iter()
            .enumerate()
            .map(|(i, l)| Ok(l.add(&t.contract_basis(i + 1)?.to_so()?.scale(&two))))
            .collect()
    }

    /// Curvature of the invariant connection with maps `a_i`, where `iso` gives the
    /// action of the isotropy generators on the same module:
    /// `R(X_i,X_j) = [a_i, a_j] - Σ_k [X_i,X_j]^k a_k - Σ_r [X_i,X_j]^r iso_r`.
    pub fn nomizu_curvature(&self, a: &[Matrix<Scalar>], iso: &[Matrix<Scalar>]) -> Result<Curvature> {
        if a.len() != self.n || iso.len() != self.iso.len() {
            return Err(Error::Dimension("connection map count does not match the model".into()));
        }
        let mut comps = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let mut r = a[i].commutator(&a[j]);
                for k in 0..self.n {
                    let c = &self.br[i][j][k];
                    if !c.is_zero() {
                        r.add_scaled(&a[k], &-c);
                    }
                }
                for (q, h) in iso.iter().enumerate() {
                    let c = &self.brh[i][j][q];
                    if !c.is_zero() {
                        r.add_scaled(h, &-c);
                    }
                }
                comps.push(r);
            }
        }
        Ok(Curvature { n: self.n, comps })
    }

    /// Curvature of a connection on `m` itself.
    pub fn vector_curvature(&self, a: &[Matrix<Scalar>]) -> Result<Curvature> {
        self.nomizu_curvature(a, &self.iso)
    }
}

fn wedge_all(n: usize, idx: &[usize]) -> Form {
    if idx.is_empty() {
        let mut f = Form::zero(n, 0);
        f.add_term(&[], &Scalar::one());
        return f;
    }
    Form::basis(n, idx)
}

/// Curvature components `R(X_i, X_j)` for `i < j`.
#[derive(Clone, Debug)]
pub struct Curvature {
    n: usize,
    comps: Vec<Matrix<Scalar>>,
}

impl Curvature {
    fn slot(&self, i: usize, j: usize) -> usize {
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// `R(X_i, X_j)` (0-based), antisymmetric in `i, j`.
    pub fn get(&self, i: usize, j: usize) -> Matrix<Scalar> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.comps[self.slot(i, j)].clone(),
            std::cmp::Ordering::Greater => self.comps[self.slot(j, i)].neg(),
            std::cmp::Ordering::Equal => {
                let d = self.comps.first().map_or(0, |m| m.rows());
                Matrix::zeros(d, d)
            }
        }
    }

    pub fn is_flat(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    /// `Σ_{i,j} ⟨R(X_i,X_j)X_j, X_i⟩`; meaningful for connections on `m`.
    pub fn scalar(&self) -> Scalar {
        let mut out = Scalar::zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out += &self.comps[self.slot(i, j)][(i, j)];
            }
        }
        &out * &Scalar::int(2)
    }
}

/// A form on `m` known to be isotropy invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantForm {
    form: Form,
}

impl InvariantForm {
    pub fn new(model: &ReductiveModel, form: Form) -> Result<Self> {
        if !model.is_invariant(&form) {
            return Err(Error::Precondition(format!("{form} is not isotropy invariant")));
        }
        Ok(InvariantForm { form })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn into_form(self) -> Form {
        self.form
    }
}

/// Solution of a spinor equation `∇^g_X ψ + (X⌟F)·ψ = 0` over an Ansatz.
#[derive(Clone, Debug)]
pub struct TorsionSolution {
    pub form: Form,
    pub spinor: Vec<Scalar>,
    pub params: MetricParams,
    /// Ansatz coefficients of the particular solution.
    pub coefficients: Vec<Scalar>,
    pub unique: bool,
    /// Dimension of the homogeneous solution space inside the Ansatz.
    pub kernel_dim: usize,
    /// All components of `(Λ̃_i + X_i⌟F)ψ`, i = 1..7; exactly zero for a true solution.
    pub residual: Vec<Scalar>,
}

impl TorsionSolution {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().all(Scalar::is_zero)
    }
}

/// The Aloff-Wallach space N(1,1) with metric `g_{s,y}`, its Levi-Civita connection
/// and the real 8-dimensional spin representation of Spin(7).
#[derive(Clone, Debug)]
pub struct AloffWallach {
    params: MetricParams,
    model: ReductiveModel,
    rep: SpinRep,
    lc: Vec<Matrix<Scalar>>,
    lc_spin: Vec<Matrix<Scalar>>,
    iso_spin: Matrix<Scalar>,
}

fn unit3(i: usize, j: usize) -> Matrix<Cx> {
    let mut m = Matrix::zeros(3, 3);
    m[(i, j)] = Cx::one();
    m
}

/// `A_12, Ã_12, A_13, Ã_13, A_23, Ã_23, L` and the isotropy generator `H`.
fn su3_basis() -> (Vec<Matrix<Cx>>, Matrix<Cx>) {
    let a = |i: usize, j: usize| unit3(i, j).sub(&unit3(j, i));
    let at = |i: usize, j: usize| unit3(i, j).add(&unit3(j, i)).scale(&Cx::i());
    let diag = |v: [i64; 3]| Matrix::from_fn(3, 3, |r, c| if r == c { Cx::new(Scalar::zero(), Scalar::int(v[r])) } else { Cx::zero() });
    let bas = vec![a(0, 1), at(0, 1), a(0, 2), at(0, 2), a(1, 2), at(1, 2), diag([3, -3, 0])];
    (bas, diag([1, 1, -2]))
}

/// Coordinates of a traceless skew-hermitian 3x3 matrix in the basis and `H`.
fn su3_coords(m: &Matrix<Cx>) -> Result<(Vec<Scalar>, Scalar)> {
    let mut c = Vec::with_capacity(7);
    for (r, col) in [(0, 1), (0, 2), (1, 2)] {
        c.push(m[(r, col)].re.clone());
        c.push(m[(r, col)].im.clone());
    }
    let u: Vec<Scalar> = (0..3).map(|k| m[(k, k)].im.clone()).collect();
    let q = &u[2] * &Scalar::frac(-1, 2);
    c.push(&(&u[0] - &u[1]) * &Scalar::frac(1, 6));
    let (bas, h) = su3_basis();
    let mut rec = h.scale(&Cx::real(q.clone()));
    for (ck, b) in c.iter().zip(&bas) {
        rec.add_scaled(b, &Cx::real(ck.clone()));
    }
    if rec != *m {
        return Err(Error::InvalidInput("matrix is not in su(3)".into()));
    }
    Ok((c, q))
}

fn killing(a: &Matrix<Cx>, b: &Matrix<Cx>) -> Scalar {
    &a.trace_product(b).re * &Scalar::frac(-1, 2)
}

fn ipow(x: &Scalar, k: i32) -> Scalar {
    if k >= 0 {
        x.pow(k as u32)
    } else {
        x.recip().pow(k.unsigned_abs())
    }
}

impl AloffWallach {
    /// Orthonormal frame `X_1 = A_12, X_2 = Ã_12, X_{3..6} = √y (A_13, Ã_13, A_23, Ã_23)`,
    /// `X_7 = s L/3`. The factor `√y` only enters through even powers, so `y` may be any
    /// positive scalar.
    pub fn new(params: MetricParams) -> Result<Self> {
        let (bas, h) = su3_basis();
        // X_i = y^(ey_i/2) (s/3)^(es_i) B_i
        let ey = [0i32, 0, 1, 1, 1, 1, 0];
        let es = [0i32, 0, 0, 0, 0, 0, 1];
        let third = &params.s * &Scalar::frac(1, 3);
        let factor = |e: i32, t: i32| -> Result<Scalar> {
            if e % 2 != 0 {
                return Err(Error::InvalidInput("odd power of sqrt(y) in the frame".into()));
            }
            Ok(&ipow(&params.y, e / 2) * &ipow(&third, t))
        };
        let weight = [Scalar::one(), Scalar::one(), params.y.recip(), params.y.recip(), params.y.recip(), params.y.recip(), params.s.square().recip()];
        for i in 0..7 {
            for j in 0..7 {
                let b = killing(&bas[i], &bas[j]);
                let g = if i == j { &b * &(&weight[i] * &factor(2 * ey[i], 2 * es[i])?) } else { b };
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                if g != want {
                    return Err(Error::InvalidInput(format!("frame is not orthonormal at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        let mut br = vec![vec![vec![Scalar::zero(); 7]; 7]; 7];
        let mut brh = vec![vec![vec![Scalar::zero(); 1]; 7]; 7];
        for i in 0..7 {
            for j in 0..7 {
                let (c, q) = su3_coords(&bas[i].commutator(&bas[j]))?;
                for k in 0..7 {
                    if !c[k].is_zero() {
                        br[i][j][k] = &c[k] * &factor(ey[i] + ey[j] - ey[k], es[i] + es[j] - es[k])?;
                    }
                }
                if !q.is_zero() {
                    brh[i][j][0] = &q * &factor(ey[i] + ey[j], es[i] + es[j])?;
                }
            }
        }
        let mut ad = Matrix::zeros(7, 7);
        for j in 0..7 {
            let (c, q) = su3_coords(&h.commutator(&bas[j]))?;
            if !q.is_zero() {
                return Err(Error::InvalidInput("isotropy does not preserve m".into()));
            }
            for k in 0..7 {
                if !c[k].is_zero() {
                    ad[(k, j)] = &c[k] * &factor(ey[j] - ey[k], es[j] - es[k])?;
                }
            }
        }
        let model = ReductiveModel::new(br, brh, vec![ad])?;
        let rep = SpinRep::new(7)?;
        let lc = model.levi_civita_map();
        let lc_spin = lc.iter().map(|l| rep.real_matrix(&lift_element(l)?)).collect::<Result<Vec<_>>>()?;
        let iso_spin = rep.real_matrix(&lift_element(&model.isotropy()[0])?)?;
        Ok(AloffWallach { params, model, rep, lc, lc_spin, iso_spin })
    }

    pub fn params(&self) -> &MetricParams {
        &self.params
    }

    pub fn model(&self) -> &ReductiveModel {
        &self.model
    }

    pub fn rep(&self) -> &SpinRep {
        &self.rep
    }

    /// `Λ(X_i)` in so(7).
    pub fn levi_civita_map(&self) -> &[Matrix<Scalar>] {
        &self.lc
    }

    /// `Λ̃(X_i)` as a Clifford 2-form, under `e_a ∧ e_b ↦ ½ e_a e_b`.
    pub fn levi_civita_lift(&self) -> Result<Vec<Form>> {
        self.lc.iter().map(|l| Ok(Form::from_so(l)?.scale(&Scalar::frac(1, 2)))).collect()
    }

    /// `Λ̃(X_i)` acting on Δ₇.
    pub fn levi_civita_spin(&self) -> &[Matrix<Scalar>] {
        &self.lc_spin
    }

    /// Lift of the isotropy generator to Δ₇.
    pub fn isotropy_spin(&self) -> &Matrix<Scalar> {
        &self.iso_spin
    }

    /// Spinors fixed by the lifted isotropy.
    pub fn fixed_spinor_space(&self) -> Vec<Vec<Scalar>> {
        self.iso_spin.nullspace()
    }

    pub fn is_fixed_spinor(&self, psi: &[Scalar]) -> bool {
        self.iso_spin.mul_vec(psi).iter().all(Scalar::is_zero)
    }

    pub fn coset_differential(&self, f: &Form) -> Result<Form> {
        self.model.coset_differential(f)
    }

    fn check_spinor(&self, psi: &[Scalar]) -> Result<()> {
        if psi.len() != 8 {
            return Err(Error::Dimension(format!("spinor of length {} in Δ₇", psi.len())));
        }
        if psi.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidInput("zero spinor".into()));
        }
        Ok(())
    }

    /// The operators `Λ̃_i + (X_i⌟F)·` on Δ₇.
    pub fn spinor_connection(&self, f: &Form) -> Result<Vec<Matrix<Scalar>>> {
        if f.dim() != 7 || f.grade() == 0 {
            return Err(Error::Grade("the connection form must be a k-form on m with k ≥ 1".into()));
        }
        (0..7).map(|i| Ok(self.lc_spin[i].add(&self.rep.real_form_matrix(&f.contract_basis(i + 1)?)?))).collect()
    }

    /// Stacked components of `(Λ̃_i + X_i⌟F)ψ`, i = 1..7.
    pub fn residual(&self, psi: &[Scalar], f: &Form) -> Result<Vec<Scalar>> {
        self.check_spinor(psi)?;
        Ok(self.spinor_connection(f)?.iter().flat_map(|a| a.mul_vec(psi)).collect())
    }

    /// Spinors parallel for `Λ̃ + (X⌟F)·`.
    pub fn parallel_spinors(&self, f: &Form) -> Result<Vec<Vec<Scalar>>> {
        let ops = self.spinor_connection(f)?;
        let stacked = Matrix::from_rows(ops.iter().flat_map(|a| (0..8).map(|r| a.row(r).to_vec()).collect::<Vec<_>>()).collect());
        Ok(stacked.nullspace())
    }

    /// The linear system `A c = b` whose solutions are the Ansatz coefficients `c` with
    /// `Σ c_a F_a` solving the spinor equation for `ψ`.
    pub fn linear_system(&self, psi: &[Scalar], ansatz: &[InvariantForm]) -> Result<(Matrix<Scalar>, Vec<Scalar>)> {
        self.check_spinor(psi)?;
        let m = ansatz.len();
        let mut a = Matrix::zeros(56, m);
        for (col, f) in ansatz.iter().enumerate() {
            let f = f.form();
            if f.dim() != 7 || f.grade() == 0 {
                return Err(Error::Grade("Ansatz forms must be k-forms on m with k ≥ 1".into()));
            }
            for i in 0..7 {
                let v = self.rep.real_form_matrix(&f.contract_basis(i + 1)?)?.mul_vec(psi);
                for (r, x) in v.into_iter().enumerate() {
                    a[(8 * i + r, col)] = x;
                }
            }
        }
        let b = self.lc_spin.iter().flat_map(|l| l.mul_vec(psi)).map(|x| -x).collect();
        Ok((a, b))
    }

    fn solve_with(&self, psi: &[Scalar], ansatz: &[InvariantForm], grade: usize) -> Result<TorsionSolution> {
        if let Some(f) = ansatz.iter().find(|f| f.form().grade() != grade) {
            return Err(Error::Grade(format!("Ansatz form of grade {} where {grade} was expected", f.form().grade())));
        }
        let (a, b) = self.linear_system(psi, ansatz)?;
        let Some((x, homog)) = matrix::solve(&a, &b) else {
            let mut aug = Echelon::new(ansatz.len() + 1);
            for r in 0..a.rows() {
                let mut row = a.row(r).to_vec();
                row.push(b[r].clone());
                aug.insert(row);
            }
            return Err(Error::NoSolution(format!(
                "inconsistent system: rank {} of {} unknowns, augmented rank {}",
                a.rank(),
                ansatz.len(),
                aug.rank()
            )));
        };
        let mut form = Form::zero(7, grade);
        for (c, f) in x.iter().zip(ansatz) {
            form = form.add(&f.form().scale(c))?;
        }
        let residual = self.residual(psi, &form)?;
        Ok(TorsionSolution {
            form,
            spinor: psi.to_vec(),
            params: self.params.clone(),
            coefficients: x,
            unique: homog.is_empty(),
            kernel_dim: homog.len(),
            residual,
        })
    }

    /// Solves `∇^g_X ψ + (X⌟T)·ψ = 0` for a 3-form `T` in the span of `ansatz`.
    pub fn solve_torsion(&self, psi: &[Scalar], ansatz: &[InvariantForm]) -> Result<TorsionSolution> {
        self.solve_with(psi, ansatz, 3)
    }

    /// Solves `∇^g_X ψ + (X⌟R)·ψ = 0` for a 4-form `R` in the span of `ansatz`.
    pub fn solve_four_form(&self, psi: &[Scalar], ansatz: &[InvariantForm]) -> Result<TorsionSolution> {
        self.solve_with(psi, ansatz, 4)
    }

    /// The seven-term Ansatz `X_135, X_146, X_245, X_236, X_127, X_347, X_567`. Its members
    /// are not invariant one by one, so they are returned as plain forms.
    pub fn seven_term_ansatz() -> Vec<Form> {
        [[1, 3, 5], [1, 4, 6], [2, 4, 5], [2, 3, 6], [1, 2, 7], [3, 4, 7], [5, 6, 7]].iter().map(|i| Form::basis(7, i)).collect()
    }

    /// The thirteen invariant 3-forms.
    pub fn invariant_three_forms(&self) -> Vec<InvariantForm> {
        fixtures::invariant_three_forms().into_iter().map(|f| InvariantForm::new(&self.model, f).expect("invariant 3-form")).collect()
    }

    /// The thirteen-term 4-form Ansatz.
    pub fn invariant_four_forms(&self) -> Vec<InvariantForm> {
        fixtures::four_form_ansatz().into_iter().map(|f| InvariantForm::new(&self.model, f).expect("invariant 4-form")).collect()
    }

    /// Basis of all invariant k-forms on m.
    pub fn invariant_forms(&self, k: usize) -> Vec<Form> {
        let bl = blades(7, k);
        let pos = |m: u32| bl.iter().position(|&b| b == m).unwrap();
        let h = &self.model.isotropy()[0];
        let rows: Vec<Vec<Scalar>> = {
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for &b in &bl {
                let img = Form::basis(7, &indices(b)).derivation(h);
                let mut v = vec![Scalar::zero(); bl.len()];
                for (m, c) in img.terms() {
                    v[pos(m)] = c.clone();
                }
                cols.push(v);
            }
            (0..bl.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
        };
        Matrix::from_rows(rows).nullspace().into_iter().map(|v| Form::from_vec(7, k, &v)).collect()
    }

    /// Cocalibration `d*ω = 0`.
    pub fn is_cocalibrated(&self, omega: &Form) -> Result<bool> {
        Ok(self.coset_differential(&omega.hodge_star())?.is_zero())
    }

    /// Ricci tensor of the characteristic connection for torsion `t4` (already at the `4T` scale).
    pub fn ricci_characteristic(&self, omega: &Form, t4: &Form) -> Result<Matrix<Scalar>> {
        ricci_characteristic(omega, &self.coset_differential(t4)?)
    }

    /// Curvature of the metric connection with torsion `4T`.
    pub fn torsion_curvature(&self, t: &Form) -> Result<Curvature> {
        self.model.vector_curvature(&self.model.connection_with_torsion(t)?)
    }

    /// Curvature of the spinor connection `Λ̃ + (X⌟F)·`.
    pub fn spinor_curvature(&self, f: &Form) -> Result<Curvature> {
        self.model.nomizu_curvature(&self.spinor_connection(f)?, std::slice::from_ref(&self.iso_spin))
    }

    /// Scalar curvature of `g_{s,y}` from the Levi-Civita curvature.
    pub fn riemannian_scalar_curvature(&self) -> Result<Scalar> {
        Ok(self.model.vector_curvature(&self.lc)?.scalar())
    }
}

/// `ω(X,Y,Z) = -⟨X·Y·Z·ψ, ψ⟩ / |ψ|²` for a real spinor in Δ₇.
pub fn g2_form_of_spinor(rep: &SpinRep, psi: &[Scalar]) -> Result<Form> {
    if rep.dim() != 7 || !rep.is_real() || psi.len() != 8 {
        return Err(Error::Dimension("G₂ forms need a real spinor of Spin(7)".into()));
    }
    let norm: Scalar = psi.iter().map(|x| x * x).sum();
    if norm.is_zero() {
        return Err(Error::InvalidInput("zero spinor".into()));
    }
    let mut out = Form::zero(7, 3);
    for b in blades(7, 3) {
        let idx = indices(b);
        let v = rep.real_form_matrix(&Form::basis(7, &idx))?.mul_vec(psi);
        let p: Scalar = v.iter().zip(psi).map(|(a, b)| a * b).sum();
        out.add_term(&idx, &-(&p / &norm));
    }
    Ok(out)
}

/// Gray-Hervella type of a cocalibrated G₂-structure with characteristic torsion `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum G2Type {
    /// `T = 0`.
    Parallel,
    /// `T` proportional to `ω`: nearly parallel.
    W1,
    /// `(T, ω) = 0`.
    W3,
    /// Both components present.
    W1W3,
    /// `T` has a component in Λ³₇.
    Other,
}

/// Classifies `t` relative to the G₂ form `ω` (normalized by `(ω,ω) = 7`).
pub fn g2_type(omega: &Form, t: &Form) -> Result<G2Type> {
    if omega.grade() != 3 || t.grade() != 3 || omega.dim() != 7 || t.dim() != 7 {
        return Err(Error::Grade("G₂ type needs two 3-forms in dimension 7".into()));
    }
    if omega.norm_sqr() != Scalar::int(7) {
        return Err(Error::Precondition("G₂ form is not normalized to (ω,ω) = 7".into()));
    }
    if t.is_zero() {
        return Ok(G2Type::Parallel);
    }
    // The Λ³₇ part of T is detected by T ∧ ω; Λ³₁ and Λ³₂₇ wedge ω to zero.
    if !t.wedge(omega)?.is_zero() {
        return Ok(G2Type::Other);
    }
    let lambda = &t.inner(omega)? / &Scalar::int(7);
    let rest = t.sub(&omega.scale(&lambda))?;
    Ok(match (lambda.is_zero(), rest.is_zero()) {
        (false, true) => G2Type::W1,
        (true, _) => G2Type::W3,
        (false, false) => G2Type::W1W3,
    })
}

/// `(Scal^g, Scal^∇) = (2(T,ω)² - ½‖T‖², 2(T,ω)² - 2‖T‖²)` with `t` at the `4T` scale.
pub fn scalars_from_torsion(omega: &Form, t: &Form) -> Result<(Scalar, Scalar)> {
    let p = t.inner(omega)?;
    let base = &Scalar::int(2) * &p.square();
    let n = t.norm_sqr();
    Ok((&base - &(&n * &Scalar::frac(1, 2)), &base - &(&n * &Scalar::int(2))))
}

/// `Ric^∇(X_i, X_j) = ½ (X_i⌟dT, X_j⌟*ω)`.
pub fn ricci_characteristic(omega: &Form, dt: &Form) -> Result<Matrix<Scalar>> {
    if dt.grade() != 4 || omega.grade() != 3 {
        return Err(Error::Grade("Ricci pairing needs a 3-form ω and a 4-form dT".into()));
    }
    let n = omega.dim();
    let star = omega.hodge_star();
    let a: Vec<Form> = (1..=n).map(|i| dt.contract_basis(i)).collect::<Result<_>>()?;
    let b: Vec<Form> = (1..=n).map(|i| star.contract_basis(i)).collect::<Result<_>>()?;
    let half = Scalar::frac(1, 2);
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = &half * &a[i].inner(&b[j])?;
        }
    }
    Ok(m)
}

/// `Scal³ · (-3s²/4)` as a polynomial in `(s, y)`.
pub fn scal3_numerator(s: f64, y: f64) -> f64 {
    8.0 + 32.0 * s.powi(4) + 4.0 * y + 5.0 * y * y + 2.0 * s * s * (-4.0 - 28.0 * y + 3.0 * y * y)
}

/// `Scal⁵ · (-3s²/4)` as a polynomial in `(s, y)`.
pub fn scal5_numerator(s: f64, y: f64) -> f64 {
    8.0 - 4.0 * y + 5.0 * y * y + 8.0 * s * (-2.0 + y + y * y) + 2.0 * s * s * (4.0 - 20.0 * y + 7.0 * y * y)
}

fn scal_jacobian(s: f64, y: f64) -> [[f64; 2]; 2] {
    [
        [128.0 * s.powi(3) + 4.0 * s * (-4.0 - 28.0 * y + 3.0 * y * y), 4.0 + 10.0 * y + 2.0 * s * s * (-28.0 + 6.0 * y)],
        [8.0 * (-2.0 + y + y * y) + 4.0 * s * (4.0 - 20.0 * y + 7.0 * y * y), -4.0 + 10.0 * y + 8.0 * s * (1.0 + 2.0 * y) + 2.0 * s * s * (-20.0 + 14.0 * y)],
    ]
}

pub fn scal3_f64(s: f64, y: f64) -> f64 {
    -4.0 / (3.0 * s * s) * scal3_numerator(s, y)
}

pub fn scal5_f64(s: f64, y: f64) -> f64 {
    -4.0 / (3.0 * s * s) * scal5_numerator(s, y)
}

fn newton(mut s: f64, mut y: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let f = [scal3_numerator(s, y), scal5_numerator(s, y)];
        let j = scal_jacobian(s, y);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-14 {
            return None;
        }
        let ds = (f[0] * j[1][1] - f[1] * j[0][1]) / det;
        let dy = (j[0][0] * f[1] - j[1][0] * f[0]) / det;
        s -= ds;
        y -= dy;
        if !s.is_finite() || !y.is_finite() {
            return None;
        }
        if ds.abs() + dy.abs() < 1e-15 {
            break;
        }
    }
    let ok = scal3_numerator(s, y).abs() < 1e-10 && scal5_numerator(s, y).abs() < 1e-10;
    ok.then_some((s, y))
}

/// Common zeros of `Scal³` and `Scal⁵` in `[lo, hi]²`: grid scan for cells where both
/// numerators change sign, refined by Newton's method.
pub fn scan_roots_in(lo: f64, hi: f64, step: f64) -> Vec<(f64, f64)> {
    let cells = ((hi - lo) / step).round() as usize;
    let at = |i: usize| lo + step * i as f64;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for a in 0..cells {
        for b in 0..cells {
            let corners = [(at(a), at(b)), (at(a + 1), at(b)), (at(a), at(b + 1)), (at(a + 1), at(b + 1))];
            let changes = |f: fn(f64, f64) -> f64| {
                let v: Vec<f64> = corners.iter().map(|&(s, y)| f(s, y)).collect();
                v.iter().any(|x| *x <= 0.0) && v.iter().any(|x| *x >= 0.0)
            };
            if !(changes(scal3_numerator) && changes(scal5_numerator)) {
                continue;
            }
            let Some((s, y)) = newton(at(a) + step / 2.0, at(b) + step / 2.0) else { continue };
            if s < lo || s > hi || y < lo || y > hi {
                continue;
            }
            if roots.iter().all(|&(rs, ry)| (rs - s).abs() + (ry - y).abs() > 1e-7) {
                roots.push((s, y));
            }
        }
    }
    roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    roots
}

/// [`scan_roots_in`] on `[0.1, 3]²` with step 0.01.
pub fn scan_roots() -> Vec<(f64, f64)> {
    scan_roots_in(0.1, 3.0, 0.01)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aw(s: (i64, i64), y: (i64, i64)) -> AloffWallach {
        AloffWallach::new(MetricParams::rational(s, y).unwrap()).unwrap()
    }

    #[test]
    fn su2_jacobi_and_flat_connections() {
        let m = ReductiveModel::su2(Scalar::one());
        let t = Form::basis(3, &[1, 2, 3]);
        let two = Scalar::int(2);
        for (c, flat) in [(Scalar::frac(1, 4), true), (Scalar::frac(-1, 4), true), (Scalar::frac(1, 8), false)] {
            let maps: Vec<_> = m.levi_civita_map().iter().enumerate().map(|(i, l)| l.add(&t.contract_basis(i + 1).unwrap().to_so().unwrap().scale(&(&two * &c)))).collect();
            assert_eq!(m.vector_curvature(&maps).unwrap().is_flat(), flat);
        }
    }

    #[test]
    fn round_sphere_curvature_one() {
        let m = ReductiveModel::su2(Scalar::int(2));
        let r = m.vector_curvature(&m.levi_civita_map()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(r.get(i, j)[(i, j)], Scalar::one());
                }
            }
        }
        assert_eq!(r.scalar(), Scalar::int(6));
    }

    #[test]
    fn bad_jacobi_rejected() {
        let mut br = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        br[0][1][2] = Scalar::one();
        br[1][0][2] = Scalar::int(-1);
        br[1][2][0] = Scalar::one();
        br[2][1][0] = Scalar::int(-1);
        br[0][2][0] = Scalar::one();
        br[2][0][0] = Scalar::int(-1);
        assert!(ReductiveModel::new(br, vec![vec![vec![]; 3]; 3], vec![]).is_err());
    }

    #[test]
    fn model_builds_and_scalar_curvature() {
        let m = aw((1, 1), (2, 1));
        assert_eq!(m.riemannian_scalar_curvature().unwrap(), Scalar::int(42));
        assert_eq!(m.fixed_spinor_space().len(), 4);
        assert_eq!(m.invariant_forms(3).len(), 13);
    }

    #[test]
    fn roots() {
        let r = scan_roots();
        assert_eq!(r.len(), 2, "{r:?}");
        assert!((r[0].0 - 0.62066).abs() < 1e-4 && (r[0].1 - 0.852508).abs() < 1e-4);
        assert!((r[1].0 - 1.49934).abs() < 1e-4 && (r[1].1 - 1.66564).abs() < 1e-4);
    }
}
