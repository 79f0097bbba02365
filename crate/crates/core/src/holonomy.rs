//! Holonomy algebras of constant forms, invariant spinors and 2-forms, torsion classes,
//! support reduction, splitting and antisymmetric prolongation.

use serde::Serialize;

use crate::algebra::{blades, indices, Form};
use crate::clifford::{Multivector, SpinRep};
use crate::error::{Error, Result};
use crate::field::{Cx, Field};
use crate::lie::{self, ClosureReport, ClosureSummary, LieBasis};
use crate::matrix::{inverse, Echelon, Matrix};
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// A 3-tensor on Rⁿ stored densely, `t[(i, j, k)]` with 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zero(n: usize) -> Self {
        Tensor3 { n, data: vec![Scalar::zero(); n * n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Tensor3::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.data[(i * n + j) * n + k] = f(i, j, k);
                }
            }
        }
        t
    }

    /// The 3-form `f` as a totally antisymmetric tensor.
    pub fn from_form(f: &Form) -> Result<Self> {
        if f.grade() != 3 {
            return Err(Error::Grade(format!("expected a 3-form, got grade {}", f.grade())));
        }
        Ok(Tensor3::from_fn(f.dim(), |i, j, k| f.eval_basis(&[i + 1, j + 1, k + 1])))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Tensor3) -> Tensor3 {
        Tensor3::from_fn(self.n, |i, j, k| self.get(i, j, k) + o.get(i, j, k))
    }

    pub fn sub(&self, o: &Tensor3) -> Tensor3 {
        Tensor3::from_fn(self.n, |i, j, k| self.get(i, j, k) - o.get(i, j, k))
    }

    pub fn inner(&self, o: &Tensor3) -> Scalar {
        self.data.iter().zip(&o.data).map(|(a, b)| a * b).sum()
    }

    /// Antisymmetric in the first two slots (a torsion tensor).
    pub fn is_torsion(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| *self.get(i, j, k) == -self.get(j, i, k))))
    }

    /// Antisymmetric in the last two slots (a metric connection difference).
    pub fn is_metric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| *self.get(i, j, k) == -self.get(i, k, j))))
    }

    /// The 3-form with the same components, if totally antisymmetric.
    pub fn to_form(&self) -> Option<Form> {
        let n = self.n;
        let mut f = Form::zero(n, 3);
        for m in blades(n, 3) {
            let ix = indices(m);
            f.add_term(&ix, self.get(ix[0] - 1, ix[1] - 1, ix[2] - 1));
        }
        (Tensor3::from_form(&f).ok()? == *self).then_some(f)
    }

    /// `T_V(X, Y, Z) = g(X, Z) g(V, Y) - g(Y, Z) g(V, X)`.
    pub fn vectorial(v: &[Scalar]) -> Tensor3 {
        let d = |a: usize, b: usize| if a == b { Scalar::one() } else { Scalar::zero() };
        Tensor3::from_fn(v.len(), |x, y, z| &(&d(x, z) * &v[y]) - &(&d(y, z) * &v[x]))
    }

    /// Cyclic sum `(T(X,Y,Z) + T(Y,Z,X) + T(Z,X,Y)) / 3`.
    pub fn phi1(&self) -> Tensor3 {
        let third = Scalar::frac(1, 3);
        Tensor3::from_fn(self.n, |x, y, z| &third * &(&(self.get(x, y, z) + self.get(y, z, x)) + self.get(z, x, y)))
    }

    /// Trace contraction `c(T)(Z) = Σ_i T(e_i, Z, e_i)`.
    pub fn phi2(&self) -> Vec<Scalar> {
        (0..self.n).map(|z| (0..self.n).map(|i| self.get(i, z, i).clone()).sum()).collect()
    }
}

/// Torsion of the metric connection `∇^g + A`: `Φ(A)(X,Y,Z) = A(X,Y,Z) - A(Y,X,Z)`.
pub fn phi(a: &Tensor3) -> Result<Tensor3> {
    if !a.is_metric() {
        return Err(Error::InvalidInput("tensor is not antisymmetric in its last two slots".into()));
    }
    Ok(Tensor3::from_fn(a.n, |x, y, z| a.get(x, y, z) - a.get(y, x, z)))
}

/// `2Φ⁻¹(T)(X,Y,Z) = T(X,Y,Z) - T(Y,Z,X) + T(Z,X,Y)`.
pub fn phi_inverse(t: &Tensor3) -> Result<Tensor3> {
    if !t.is_torsion() {
        return Err(Error::InvalidInput("tensor is not antisymmetric in its first two slots".into()));
    }
    let half = Scalar::frac(1, 2);
    Ok(Tensor3::from_fn(t.n, |x, y, z| &half * &(&(t.get(x, y, z) - t.get(y, z, x)) + t.get(z, x, y))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionClass {
    Vectorial,
    Skew,
    Prime,
}

#[derive(Clone, Debug)]
pub struct TorsionDecomposition {
    pub vector: Vec<Scalar>,
    pub vectorial: Tensor3,
    pub skew: Form,
    pub prime: Tensor3,
    pub classes: Vec<TorsionClass>,
}

/// Splits a torsion tensor into its vectorial, skew and traceless-mixed parts.
pub fn decompose_torsion(t: &Tensor3) -> Result<TorsionDecomposition> {
    let n = t.n;
    if n < 3 {
        return Err(Error::InvalidInput(format!("torsion classes need n >= 3, got {n}")));
    }
    if !t.is_torsion() {
        return Err(Error::InvalidInput("tensor is not antisymmetric in its first two slots".into()));
    }
    let skew_t = t.phi1();
    let skew = skew_t.to_form().expect("cyclic sum of a torsion tensor is a 3-form");
    // c(T_V) = (n - 1) V
    let k = Scalar::frac(1, n as i64 - 1);
    let vector: Vec<Scalar> = t.phi2().iter().map(|x| x * &k).collect();
    let vectorial = Tensor3::vectorial(&vector);
    let prime = t.sub(&skew_t).sub(&vectorial);
    let mut classes = Vec::new();
    if !vectorial.is_zero() {
        classes.push(TorsionClass::Vectorial);
    }
    if !skew.is_zero() {
        classes.push(TorsionClass::Skew);
    }
    if !prime.is_zero() {
        classes.push(TorsionClass::Prime);
    }
    Ok(TorsionDecomposition { vector, vectorial, skew, prime, classes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepMode {
    /// so(n) acting on Rⁿ; 3-forms only.
    Vector,
    /// Clifford images acting on Δ_n.
    Spinor,
}

/// A generated algebra over whichever field the representation is defined on.
#[derive(Clone, Debug)]
pub enum Holonomy {
    Real(ClosureReport<Scalar>),
    Complex(ClosureReport<Cx>),
}

impl Holonomy {
    pub fn summary(&self) -> ClosureSummary {
        match self {
            Holonomy::Real(r) => r.summary(),
            Holonomy::Complex(r) => r.summary(),
        }
    }

    pub fn dim(&self) -> usize {
        self.summary().dim
    }
}

/// The generators `X ⌟ T` for `X = e_1..e_n`, dropping zero contractions.
pub fn contractions(t: &Form) -> Result<Vec<Form>> {
    if t.grade() == 0 {
        return Err(Error::Grade("g*_T needs a form of positive degree".into()));
    }
    (1..=t.dim())
        .map(|i| t.contract_basis(i))
        .filter(|c| !matches!(c, Ok(f) if f.is_zero()))
        .collect()
}

fn spinor_generators(rep: &SpinRep, gens: &[Form]) -> Result<Holonomy> {
    if rep.is_real() {
        let ms = gens.iter().map(|g| rep.real_form_matrix(g)).collect::<Result<Vec<_>>>()?;
        Ok(Holonomy::Real(ClosureReport::from_generators_sized(rep.spin_dim(), &ms)?))
    } else {
        let ms = gens.iter().map(|g| rep.form_matrix(g)).collect::<Result<Vec<_>>>()?;
        Ok(Holonomy::Complex(ClosureReport::from_generators_sized(rep.spin_dim(), &ms)?))
    }
}

/// The Lie algebra g*_T generated by all `X ⌟ T`.
pub fn g_star(t: &Form, mode: RepMode) -> Result<Holonomy> {
    let gens = contractions(t)?;
    match mode {
        RepMode::Vector => {
            if t.grade() != 3 {
                return Err(Error::Grade(format!("vector mode needs a 3-form, got grade {}", t.grade())));
            }
            let ms = gens.iter().map(Form::to_so).collect::<Result<Vec<_>>>()?;
            Ok(Holonomy::Real(ClosureReport::from_generators_sized(t.dim(), &ms)?))
        }
        RepMode::Spinor => spinor_generators(&SpinRep::new(t.dim())?, &gens),
    }
}

/// The closure in so(n) of a 3-form's contractions.
pub fn g_star_vector(t: &Form) -> Result<LieBasis<Scalar>> {
    if t.grade() != 3 {
        return Err(Error::Grade(format!("expected a 3-form, got grade {}", t.grade())));
    }
    let ms = contractions(t)?.iter().map(Form::to_so).collect::<Result<Vec<_>>>()?;
    lie::bracket_closure_sized(t.dim(), &ms)
}

/// 2-forms `ω` (from `candidates`, or all of so(n)) whose derivation action kills `t`.
pub fn isotropy_check(t: &Form, candidates: Option<&[Form]>) -> Result<Vec<Form>> {
    let n = t.dim();
    let all: Vec<Form>;
    let cands = match candidates {
        Some(c) => c,
        None => {
            all = blades(n, 2).into_iter().map(|m| Form::basis(n, &indices(m))).collect();
            &all
        }
    };
    let images = cands.iter().map(|w| Ok(t.derivation(&w.to_so()?).to_vec())).collect::<Result<Vec<_>>>()?;
    let rows = images.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(cands.len());
    for r in 0..rows {
        ech.insert(images.iter().map(|v| v[r].clone()).collect());
    }
    let mut out = Vec::new();
    let mut span = Echelon::new(blades(n, 2).len());
    for v in ech.nullspace() {
        let mut w = Form::zero(n, 2);
        for (c, f) in v.iter().zip(cands) {
            w = w.add(&f.scale(c))?;
        }
        if span.insert(w.to_vec()) {
            out.push(w);
        }
    }
    Ok(out)
}

/// The joint kernel on Δ_n of all `(e_i ⌟ T)·`; nonzero exactly when a constant spinor is
/// parallel for the flat connection with torsion `T`.
pub fn invariant_spinors(t: &Form) -> Result<Vec<Vec<Cx>>> {
    let rep = SpinRep::new(t.dim())?;
    let ms = contractions(t)?.iter().map(|g| rep.form_matrix(g)).collect::<Result<Vec<_>>>()?;
    Ok(lie::joint_kernel(rep.spin_dim(), &ms))
}

/// Stacks the real and imaginary parts of a complex linear system into real rows.
fn real_rows(cols: &[Vec<Cx>]) -> Echelon<Scalar> {
    let mut ech = Echelon::new(cols.len());
    let len = cols.first().map_or(0, Vec::len);
    for r in 0..len {
        ech.insert(cols.iter().map(|c| c[r].re.clone()).collect());
        ech.insert(cols.iter().map(|c| c[r].im.clone()).collect());
    }
    ech
}

/// All k-forms `T` with `(e_i ⌟ T)·ψ = 0` for every i.
pub fn annihilating_forms(n: usize, psi: &[Cx], k: usize) -> Result<Vec<Form>> {
    if psi.iter().all(Cx::is_zero) {
        return Err(Error::InvalidInput("spinor is zero".into()));
    }
    if k == 0 || k > n {
        return Err(Error::Grade(format!("grade {k} out of range for n = {n}")));
    }
    let rep = SpinRep::new(n)?;
    if psi.len() != rep.spin_dim() {
        return Err(Error::Dimension(format!("spinor of length {} for Δ_{n} of dimension {}", psi.len(), rep.spin_dim())));
    }
    let bl = blades(n, k);
    // one column per blade: the concatenation over i of ρ(e_i ⌟ e_B)ψ
    let cols: Vec<Vec<Cx>> = bl
        .iter()
        .map(|&m| {
            let b = Form::basis(n, &indices(m));
            let mut col = Vec::with_capacity(n * psi.len());
            for i in 1..=n {
                let c = b.contract_basis(i).expect("grade >= 1");
                col.extend(rep.act(&Multivector::from(&c), psi).expect("dimensions checked"));
            }
            col
        })
        .collect();
    let ech = real_rows(&cols);
    Ok(ech.nullspace().iter().map(|v| Form::from_vec(n, k, v)).collect())
}

/// `{T ∈ Λ³ : X ⌟ T ∈ g for every X}` for a subalgebra `g ⊂ so(n)`.
pub fn antisym_prolongation(g: &LieBasis<Scalar>) -> Result<Vec<Form>> {
    let n = g.size();
    let mut gforms = Vec::new();
    for m in g.elements() {
        if !m.is_skew() {
            return Err(Error::InvalidInput("prolongation needs antisymmetric matrices".into()));
        }
        gforms.push(Form::from_so(m)?);
    }
    let two = blades(n, 2);
    // orthogonal complement of g in Λ²
    let mut ech = Echelon::new(two.len());
    for f in &gforms {
        ech.insert(f.to_vec());
    }
    let perp: Vec<Vec<Scalar>> = ech.nullspace();
    let three = blades(n, 3);
    let pos2: std::collections::HashMap<u32, usize> = two.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    // ⟨e_i ⌟ T, h⟩ = 0 for each i and each h ⊥ g
    let mut sys = Echelon::new(three.len());
    for i in 1..=n {
        let contr: Vec<Option<(usize, Scalar)>> = three
            .iter()
            .map(|&m| {
                let c = Form::basis(n, &indices(m)).contract_basis(i).expect("grade 3");
                let first = c.terms().next().map(|(mm, x)| (pos2[&mm], x.clone()));
                first
            })
            .collect();
        for h in &perp {
            let row: Vec<Scalar> = contr
                .iter()
                .map(|c| match c {
                    Some((p, x)) => x * &h[*p],
                    None => Scalar::zero(),
                })
                .collect();
            sys.insert(row);
        }
    }
    Ok(sys.nullspace().iter().map(|v| Form::from_vec(n, 3, v)).collect())
}

/// Basis of `Ker(Φ_T)^⊥`, where `Φ_T(X) = X ⌟ T`: the smallest subspace carrying `T`.
pub fn support_reduction(t: &Form) -> Result<Vec<Vec<Scalar>>> {
    let n = t.dim();
    if t.grade() == 0 {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<Scalar>> = (1..=n).map(|i| t.contract_basis(i).map(|c| c.to_vec())).collect::<Result<_>>()?;
    let len = rows[0].len();
    let mut ech = Echelon::new(n);
    for b in 0..len {
        ech.insert(rows.iter().map(|r| r[b].clone()).collect());
    }
    Ok(ech.basis())
}

/// Orthogonal projection onto the span of `basis` (rational whenever the basis is).
pub fn projector(n: usize, basis: &[Vec<Scalar>]) -> Matrix<Scalar> {
    if basis.is_empty() {
        return Matrix::zeros(n, n);
    }
    let b = Matrix::from_fn(n, basis.len(), |r, c| basis[c][r].clone());
    let gram = b.transpose().mul(&b);
    let gi = inverse(&gram).expect("basis vectors are independent");
    b.mul(&gi).mul(&b.transpose())
}

/// A component of a split 3-form.
#[derive(Clone, Debug)]
pub struct TorsionComponent {
    pub subspace: Vec<Vec<Scalar>>,
    pub form: Form,
}

/// Splits a 3-form along a decomposition of Rⁿ into g*_T-invariant subspaces, obtained as
/// eigenspaces of a generic symmetric element of the commutant. Zero components are dropped.
pub fn split_torsion(t: &Form) -> Result<Vec<TorsionComponent>> {
    let n = t.dim();
    if t.is_zero() {
        return Ok(Vec::new());
    }
    let g = g_star_vector(t)?;
    let comm = lie::self_adjoint_commutant(n, g.elements());
    let mut pieces = None;
    let mut rng = Sampler::new(0x5eed);
    for _ in 0..8 {
        let mut s = Matrix::zeros(n, n);
        for c in &comm {
            s.add_scaled(c, &rng.nonzero_rational());
        }
        if let Some(p) = rational_eigenspaces(&s) {
            pieces = Some(p);
            break;
        }
    }
    let Some(pieces) = pieces else {
        return Ok(vec![TorsionComponent { subspace: support_reduction(t)?, form: t.clone() }]);
    };
    let mut out = Vec::new();
    let mut total = Form::zero(n, 3);
    for space in pieces {
        let f = t.pullback(&projector(n, &space));
        total = total.add(&f)?;
        if !f.is_zero() {
            out.push(TorsionComponent { subspace: space, form: f });
        }
    }
    if total != *t {
        return Err(Error::Precondition("invariant subspaces do not split the form".into()));
    }
    Ok(out)
}

/// Eigenspaces of a rational symmetric matrix, if every eigenvalue is rational.
fn rational_eigenspaces(s: &Matrix<Scalar>) -> Option<Vec<Vec<Vec<Scalar>>>> {
    let n = s.rows();
    let eig = s.to_c64().symmetric_eigen();
    let mut vals: Vec<Scalar> = Vec::new();
    for lam in eig.eigenvalues.iter() {
        let q = Scalar::approximate(*lam, 100_000)?;
        if !vals.contains(&q) {
            vals.push(q);
        }
    }
    let mut spaces = Vec::new();
    let mut total = 0;
    for q in vals {
        let k = s.sub(&Matrix::scalar_identity(n, q)).nullspace();
        total += k.len();
        if k.is_empty() {
            return None;
        }
        spaces.push(k);
    }
    (total == n).then_some(spaces)
}

/// 2-forms `Ω` with `[g*_T, Ω] = 0` (it suffices to commute with the generators).
pub fn invariant_two_forms(t: &Form) -> Result<Vec<Form>> {
    let n = t.dim();
    let gens = contractions(t)?.iter().map(Form::to_so).collect::<Result<Vec<_>>>()?;
    let two = blades(n, 2);
    let cols: Vec<Vec<Scalar>> = two
        .iter()
        .map(|&m| {
            let w = Form::basis(n, &indices(m)).to_so().expect("2-form");
            gens.iter().flat_map(|g| g.commutator(&w).data().to_vec()).collect()
        })
        .collect();
    let len = cols.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(two.len());
    for r in 0..len {
        ech.insert(cols.iter().map(|c| c[r].clone()).collect());
    }
    Ok(ech.nullspace().iter().map(|v| Form::from_vec(n, 2, v)).collect())
}

/// Whether a generic element of `span` is nondegenerate, tried on 8 random combinations.
pub fn has_nondegenerate(n: usize, span: &[Form], seed: u64) -> bool {
    if n % 2 == 1 || span.is_empty() {
        return false;
    }
    let mut rng = Sampler::new(seed);
    (0..8).any(|_| {
        let mut w = Form::zero(n, 2);
        for f in span {
            w = w.add(&f.scale(&rng.rational())).expect("same dimension");
        }
        w.to_so().expect("2-form").rank() == n
    })
}

/// Serializable report for the `holonomy` command.
#[derive(Clone, Debug, Serialize)]
pub struct HolonomyReport {
    pub n: usize,
    pub grade: usize,
    pub mode: RepMode,
    #[serde(flatten)]
    pub closure: ClosureSummary,
    pub support_dim: usize,
}

pub fn holonomy_report(t: &Form, mode: RepMode) -> Result<HolonomyReport> {
    let h = g_star(t, mode)?;
    Ok(HolonomyReport {
        n: t.dim(),
        grade: t.grade(),
        mode,
        closure: h.summary(),
        support_dim: support_reduction(t)?.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> Form {
        Form::int(7, &[(&[1, 2, 7], 1), (&[1, 3, 5], 1), (&[1, 4, 6], -1), (&[2, 3, 6], -1), (&[2, 4, 5], -1), (&[3, 4, 7], 1), (&[5, 6, 7], 1)])
    }

    #[test]
    fn cartan_so3() {
        let t = Form::int(3, &[(&[1, 2, 3], 1)]);
        assert_eq!(g_star(&t, RepMode::Vector).unwrap().dim(), 3);
        assert_eq!(g_star(&t, RepMode::Spinor).unwrap().dim(), 3);
    }

    #[test]
    fn g2_isotropy_and_closure() {
        assert_eq!(isotropy_check(&g2(), None).unwrap().len(), 14);
        let h = g_star(&g2(), RepMode::Vector).unwrap().summary();
        assert_eq!(h.dim, 21);
        assert!(h.compact && h.irreducible);
    }

    #[test]
    fn one_form_is_abelian() {
        let t = Form::int(4, &[(&[1], 1), (&[3], 2)]);
        let h = g_star(&t, RepMode::Spinor).unwrap().summary();
        assert_eq!((h.dim, h.derived_dim), (1, 0));
    }

    #[test]
    fn split_two_triangles() {
        let t = Form::int(6, &[(&[1, 2, 3], 1), (&[4, 5, 6], 1)]);
        let parts = split_torsion(&t).unwrap();
        assert_eq!(parts.len(), 2);
        let dims: Vec<usize> = parts.iter().map(|p| p.subspace.len()).collect();
        assert_eq!(dims, vec![3, 3]);
        assert_eq!(split_torsion(&g2()).unwrap().len(), 1);
    }

    #[test]
    fn decomposition_of_pure_parts() {
        let f = Form::int(4, &[(&[1, 2, 3], 1)]);
        let d = decompose_torsion(&Tensor3::from_form(&f).unwrap()).unwrap();
        assert_eq!(d.classes, vec![TorsionClass::Skew]);
        let v = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        let d = decompose_torsion(&Tensor3::vectorial(&v)).unwrap();
        assert_eq!(d.classes, vec![TorsionClass::Vectorial]);
        assert_eq!(d.vector, v);
    }

    #[test]
    fn phi_on_three_forms() {
        let f = Form::int(3, &[(&[1, 2, 3], 1)]);
        let t = Tensor3::from_form(&f).unwrap();
        let a = phi_inverse(&t).unwrap();
        assert_eq!(Tensor3::from_form(&f.scale(&Scalar::frac(1, 2))).unwrap(), a);
        assert_eq!(phi(&a).unwrap(), t);
    }

    #[test]
    fn prolongation_of_so_n() {
        let gens: Vec<Matrix<Scalar>> = blades(5, 2).into_iter().map(|m| Form::basis(5, &indices(m)).to_so().unwrap()).collect();
        let g = lie::bracket_closure(&gens).unwrap();
        assert_eq!(antisym_prolongation(&g).unwrap().len(), 10);
    }
}
