//! Clifford algebra Cl(Rⁿ) with `e_i² = -1` and its spin representations.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{self, reorder_sign, Form};
use crate::error::{Error, Result};
use crate::field::{Cx, Field};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `e_A e_B = sign * e_{A xor B}`.
pub fn blade_product_sign(a: u32, b: u32) -> i32 {
    let s = reorder_sign(a, b);
    if (a & b).count_ones() % 2 == 1 {
        -s
    } else {
        s
    }
}

/// Element of Cl(Rⁿ), a sum of blades of mixed grade.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    n: usize,
    terms: BTreeMap<u32, Scalar>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        Multivector { n, terms: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut m = Multivector::zero(n);
        m.add_mask(0, &c);
        m
    }

    pub fn blade(n: usize, idx: &[usize]) -> Self {
        Form::basis(n, idx).into()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    fn add_mask(&mut self, mask: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, o: &Multivector) -> Result<Multivector> {
        same_dim(self.n, o.n)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_mask(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Multivector) -> Result<Multivector> {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Multivector {
        let mut out = Multivector::zero(self.n);
        for (m, x) in &self.terms {
            out.add_mask(*m, &(x * c));
        }
        out
    }

    pub fn product(&self, o: &Multivector) -> Result<Multivector> {
        same_dim(self.n, o.n)?;
        let mut out = Multivector::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let p = x * y;
                let p = if blade_product_sign(*a, *b) < 0 { -p } else { p };
                out.add_mask(a ^ b, &p);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Multivector) -> Result<Multivector> {
        self.product(o)?.sub(&o.product(self)?)
    }

    /// Degree-`k` part as a form.
    pub fn grade_part(&self, k: usize) -> Form {
        Form::from_mask_map(
            self.n,
            k,
            self.terms.iter().filter(|(m, _)| algebra::grade(**m) == k).map(|(m, c)| (*m, c.clone())).collect(),
        )
    }

    /// Grades carrying nonzero coefficients.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|m| algebra::grade(*m)).collect();
        g.sort();
        g.dedup();
        g
    }

    pub fn scalar_part(&self) -> Scalar {
        self.terms.get(&0).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl From<Form> for Multivector {
    fn from(f: Form) -> Self {
        Multivector { n: f.dim(), terms: f.terms().map(|(m, c)| (m, c.clone())).collect() }
    }
}

impl From<&Form> for Multivector {
    fn from(f: &Form) -> Self {
        Multivector { n: f.dim(), terms: f.terms().map(|(m, c)| (m, c.clone())).collect() }
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c}) e{:?}", algebra::indices(*m)))
            .collect();
        write!(f, "Cl{}[{}]", self.n, parts.join(" + "))
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Dimension(format!("{a} vs {b}")));
    }
    Ok(())
}

/// A matrix with exactly one nonzero entry per column: `e_j ↦ coef[j] e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    perm: Vec<usize>,
    coef: Vec<Cx>,
}

impl Monomial {
    pub fn identity(d: usize) -> Self {
        Monomial { perm: (0..d).collect(), coef: vec![Cx::one(); d] }
    }

    fn from_matrix(m: &Matrix<Cx>) -> Self {
        let d = m.cols();
        let mut perm = vec![0; d];
        let mut coef = vec![Cx::zero(); d];
        for j in 0..d {
            let nz: Vec<usize> = (0..d).filter(|&r| !m[(r, j)].is_zero()).collect();
            assert_eq!(nz.len(), 1, "not a monomial matrix");
            perm[j] = nz[0];
            coef[j] = m[(nz[0], j)].clone();
        }
        Monomial { perm, coef }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self ∘ o`
    pub fn compose(&self, o: &Monomial) -> Monomial {
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut coef = Vec::with_capacity(d);
        for j in 0..d {
            let k = o.perm[j];
            perm[j] = self.perm[k];
            coef.push(self.coef[k].fmul(&o.coef[j]));
        }
        Monomial { perm, coef }
    }

    pub fn apply(&self, v: &[Cx]) -> Vec<Cx> {
        let mut out = vec![Cx::zero(); v.len()];
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.perm[j]] = self.coef[j].fmul(x);
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix<Cx> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            m[(self.perm[j], j)] = self.coef[j].clone();
        }
        m
    }

    fn add_scaled_into(&self, m: &mut Matrix<Cx>, c: &Cx) {
        for j in 0..self.dim() {
            let e = &mut m[(self.perm[j], j)];
            *e = e.fadd(&self.coef[j].fmul(c));
        }
    }

    fn kron(&self, o: &Monomial) -> Monomial {
        let (p, q) = (self.dim(), o.dim());
        let mut perm = vec![0; p * q];
        let mut coef = vec![Cx::zero(); p * q];
        for a in 0..p {
            for b in 0..q {
                perm[a * q + b] = self.perm[a] * q + o.perm[b];
                coef[a * q + b] = self.coef[a].fmul(&o.coef[b]);
            }
        }
        Monomial { perm, coef }
    }
}

/// Matrix realization of Cl(Rⁿ) on the spinor module Δ_n.
///
/// For n = 6, 7, 8 and 14, 15, 16 the representation is real (Δ₇ = R⁸, Δ₈ = R¹⁶);
/// otherwise it is complex. All generators are monomial matrices, so the action of a
/// blade is applied without forming dense products.
#[derive(Clone, Debug)]
pub struct SpinRep {
    n: usize,
    gens: Vec<Monomial>,
    real: bool,
}

fn pauli() -> [Matrix<Cx>; 4] {
    let o = Cx::one();
    let z = Cx::zero();
    let i = Cx::i();
    let x = Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]);
    let y = Matrix::from_rows(vec![vec![z.clone(), i.fneg()], vec![i.clone(), z.clone()]]);
    let zz = Matrix::from_rows(vec![vec![o.clone(), z.clone()], vec![z.clone(), o.fneg()]]);
    [Matrix::identity(2), x, y, zz]
}

fn kron_all(ms: &[Matrix<Cx>]) -> Matrix<Cx> {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.kron(m))
}

/// Octonion multiplication table on `{1, e_1..e_7}` from the triples `(i, i+1, i+3) mod 7`.
fn octonion_left(i: usize) -> Matrix<Cx> {
    let mut table = [[(0i64, 0usize); 8]; 8];
    for a in 0..8 {
        table[0][a] = (1, a);
        table[a][0] = (1, a);
        if a > 0 {
            table[a][a] = (-1, 0);
        }
    }
    for t in 0..7 {
        let (a, b, c) = (t % 7 + 1, (t + 1) % 7 + 1, (t + 3) % 7 + 1);
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            table[x][y] = (1, z);
            table[y][x] = (-1, z);
        }
    }
    let mut m = Matrix::zeros(8, 8);
    for j in 0..8 {
        let (s, k) = table[i][j];
        m[(k, j)] = Cx::real(Scalar::int(s));
    }
    m
}

impl SpinRep {
    pub fn new(n: usize) -> Result<SpinRep> {
        if !(1..=algebra::MAX_DIM).contains(&n) {
            return Err(Error::InvalidInput(format!("spin representation for n = {n} (supported 1..=16)")));
        }
        let (gens, real) = match n {
            1..=5 => (jordan_wigner(n), false),
            6 | 7 => (octonionic(n), true),
            8 => (eight(), true),
            _ => {
                let low = SpinRep::new(n - 8)?;
                let hi = eight();
                let vol8 = hi.iter().fold(Monomial::identity(16), |acc, g| acc.compose(g));
                let idl = Monomial::identity(low.spin_dim());
                let mut gens: Vec<Monomial> = hi.iter().map(|g| idl.kron(g)).collect();
                gens.extend(low.gens.iter().map(|g| g.kron(&vol8)));
                (gens, low.real)
            }
        };
        Ok(SpinRep { n, gens, real })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn spin_dim(&self) -> usize {
        self.gens[0].dim()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// ρ(e_i), 1-based.
    pub fn generator(&self, i: usize) -> Matrix<Cx> {
        self.gens[i - 1].to_matrix()
    }

    pub fn generators(&self) -> Vec<Matrix<Cx>> {
        self.gens.iter().map(Monomial::to_matrix).collect()
    }

    /// ρ(e_A) = ρ(e_{a_1}) ... ρ(e_{a_k}) with `a_1 < ... < a_k`.
    pub fn blade_action(&self, mask: u32) -> Monomial {
        let mut m = Monomial::identity(self.spin_dim());
        for i in algebra::indices(mask) {
            m = m.compose(&self.gens[i - 1]);
        }
        m
    }

    fn check(&self, n: usize) -> Result<()> {
        same_dim(self.n, n)
    }

    /// Matrix of Clifford multiplication by `a`.
    pub fn matrix(&self, a: &Multivector) -> Result<Matrix<Cx>> {
        self.check(a.dim())?;
        let d = self.spin_dim();
        let mut m = Matrix::zeros(d, d);
        for (mask, c) in a.terms() {
            self.blade_action(mask).add_scaled_into(&mut m, &Cx::real(c.clone()));
        }
        Ok(m)
    }

    pub fn form_matrix(&self, f: &Form) -> Result<Matrix<Cx>> {
        self.matrix(&Multivector::from(f))
    }

    /// Real matrix of Clifford multiplication; errors for complex representations.
    pub fn real_matrix(&self, a: &Multivector) -> Result<Matrix<Scalar>> {
        self.matrix(a)?
            .to_real()
            .ok_or_else(|| Error::InvalidInput(format!("Δ_{} is complex in this construction", self.n)))
    }

    pub fn real_form_matrix(&self, f: &Form) -> Result<Matrix<Scalar>> {
        self.real_matrix(&Multivector::from(f))
    }

    /// Clifford multiplication `a · ψ`.
    pub fn act(&self, a: &Multivector, psi: &[Cx]) -> Result<Vec<Cx>> {
        self.check(a.dim())?;
        if psi.len() != self.spin_dim() {
            return Err(Error::Dimension(format!("spinor of length {} for Δ_{} of dimension {}", psi.len(), self.n, self.spin_dim())));
        }
        let mut out = vec![Cx::zero(); psi.len()];
        for (mask, c) in a.terms() {
            let v = self.blade_action(mask).apply(psi);
            let c = Cx::real(c.clone());
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.fadd(&x.fmul(&c));
            }
        }
        Ok(out)
    }

    /// Real-spinor version of [`SpinRep::act`].
    pub fn act_real(&self, a: &Multivector, psi: &[Scalar]) -> Result<Vec<Scalar>> {
        let v: Vec<Cx> = psi.iter().map(|x| Cx::real(x.clone())).collect();
        Ok(self.act(a, &v)?.into_iter().map(|x| x.re).collect())
    }

    /// Spin lift of `A ∈ so(n)`: `½ Σ_{a<b} A[b][a] ρ(e_a) ρ(e_b)`.
    pub fn lift(&self, a: &Matrix<Scalar>) -> Result<Matrix<Cx>> {
        self.matrix(&lift_element(a)?)
    }
}

/// The element `½ Σ_{a<b} A[b][a] e_a e_b` of Cl(Rⁿ) lifting `A ∈ so(n)`.
pub fn lift_element(a: &Matrix<Scalar>) -> Result<Multivector> {
    Ok(Form::from_so(a)?.scale(&Scalar::frac(1, 2)).into())
}

fn jordan_wigner(n: usize) -> Vec<Monomial> {
    let [id, x, y, z] = pauli();
    let slots = n / 2;
    if slots == 0 {
        return vec![Monomial::from_matrix(&Matrix::scalar_identity(1, Cx::i()))];
    }
    let mut gens = Vec::new();
    for g in 0..n {
        let j = g / 2;
        let factors: Vec<Matrix<Cx>> = if j == slots {
            vec![z.clone(); slots]
        } else {
            (0..slots)
                .map(|t| match t.cmp(&j) {
                    std::cmp::Ordering::Less => z.clone(),
                    std::cmp::Ordering::Equal if g % 2 == 0 => x.clone(),
                    std::cmp::Ordering::Equal => y.clone(),
                    std::cmp::Ordering::Greater => id.clone(),
                })
                .collect()
        };
        gens.push(Monomial::from_matrix(&kron_all(&factors).scale(&Cx::i())));
    }
    gens
}

fn octonionic(n: usize) -> Vec<Monomial> {
    (1..=n).map(|i| Monomial::from_matrix(&octonion_left(i).neg())).collect()
}

fn eight() -> Vec<Monomial> {
    let z = Matrix::<Cx>::zeros(8, 8);
    let id = Matrix::<Cx>::identity(8);
    let mut gens: Vec<Monomial> = (1..=7)
        .map(|i| {
            let a = octonion_left(i).neg();
            Monomial::from_matrix(&Matrix::blocks(&z, &a, &a, &z))
        })
        .collect();
    gens.push(Monomial::from_matrix(&Matrix::blocks(&z, &id, &id.neg(), &z)));
    gens
}

/// `σ_T = ½ Σ_k (e_k ⌟ T) ∧ (e_k ⌟ T)`.
pub fn sigma_t(t: &Form) -> Result<Form> {
    if t.grade() != 3 {
        return Err(Error::Grade(format!("σ_T needs a 3-form, got grade {}", t.grade())));
    }
    let mut out = Form::zero(t.dim(), 4);
    for k in 1..=t.dim() {
        let c = t.contract_basis(k)?;
        out = out.add(&c.wedge(&c)?)?;
    }
    Ok(out.scale(&Scalar::frac(1, 2)))
}

/// Degree decomposition of the Clifford square of a 3-form.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareParts {
    /// `T²₀`, equal to the form norm `‖T‖²`.
    pub scalar: Scalar,
    /// `T²₄ = -2 σ_T`.
    pub four: Form,
    /// Grades present in `T·T`; always a subset of {0, 4}.
    pub grades: Vec<usize>,
}

pub fn square_parts(t: &Form) -> Result<SquareParts> {
    if t.grade() != 3 {
        return Err(Error::Grade(format!("square_parts needs a 3-form, got grade {}", t.grade())));
    }
    let m: Multivector = t.into();
    let sq = m.product(&m)?;
    Ok(SquareParts { scalar: sq.scalar_part(), four: sq.grade_part(4), grades: sq.grades() })
}

/// Both sides of the determinant formula on Δ₄ (complex, 4-dimensional) for
/// `a + ω + f·e₁₂₃₄` acting by Clifford multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct Det4 {
    pub direct: Scalar,
    pub closed_form: Scalar,
}

/// `det(a + ω + f e₁₂₃₄) = [(a-f)² + 2|ω₊|²] [(a+f)² + 2|ω₋|²]` where `ω± = (ω ± *ω)/2`
/// and `|·|²` is the form norm.
pub fn det_endomorphism(a: &Scalar, omega: &Form, f: &Scalar) -> Result<Det4> {
    if omega.dim() != 4 || omega.grade() != 2 {
        return Err(Error::Dimension("det_endomorphism needs a 2-form on R⁴".into()));
    }
    let rep = SpinRep::new(4)?;
    let mut el = Multivector::scalar(4, a.clone()).add(&omega.into())?;
    el = el.add(&Multivector::blade(4, &[1, 2, 3, 4]).scale(f))?;
    let det = rep.matrix(&el)?.det();
    if !det.im.is_zero() {
        return Err(Error::InvalidInput("determinant is not real".into()));
    }
    let star = omega.hodge_star();
    let half = Scalar::frac(1, 2);
    let plus = omega.add(&star)?.scale(&half);
    let minus = omega.sub(&star)?.scale(&half);
    let two = Scalar::int(2);
    let am = a - f;
    let ap = a + f;
    let closed = (&am * &am + &two * &plus.norm_sqr()) * (&ap * &ap + &two * &minus.norm_sqr());
    Ok(Det4 { direct: det.re, closed_form: closed })
}

/// Hermitian product `⟨φ, ψ⟩ = Σ φ_i conj(ψ_i)`; real part is the real inner product.
pub fn hermitian(phi: &[Cx], psi: &[Cx]) -> Cx {
    phi.iter().zip(psi).fold(Cx::zero(), |acc, (a, b)| acc.fadd(&a.fmul(&b.conj())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation_all_dims() {
        for n in 1..=10 {
            let rep = SpinRep::new(n).unwrap();
            let g = rep.generators();
            let d = rep.spin_dim();
            assert_eq!(d, 1 << (n / 2), "n = {n}");
            for i in 0..n {
                for j in 0..n {
                    let ac = g[i].anticommutator(&g[j]);
                    let want = if i == j { Matrix::scalar_identity(d, Cx::real(Scalar::int(-2))) } else { Matrix::zeros(d, d) };
                    assert_eq!(ac, want, "n = {n}, ({i}, {j})");
                }
                assert!(g[i].is_skew_adjoint());
            }
        }
    }

    #[test]
    fn small_products() {
        let e1 = Multivector::blade(3, &[1]);
        assert_eq!(e1.product(&e1).unwrap(), Multivector::scalar(3, Scalar::int(-1)));
        let e23 = Multivector::blade(3, &[2, 3]);
        assert_eq!(e1.product(&e23).unwrap(), Multivector::blade(3, &[1, 2, 3]));
        let v = Multivector::blade(3, &[1, 2, 3]);
        assert_eq!(v.product(&v).unwrap(), Multivector::scalar(3, Scalar::one()));
    }

    #[test]
    fn realness() {
        assert!(SpinRep::new(7).unwrap().is_real());
        assert!(SpinRep::new(8).unwrap().is_real());
        assert!(!SpinRep::new(5).unwrap().is_real());
        assert_eq!(SpinRep::new(16).unwrap().spin_dim(), 256);
    }
}
