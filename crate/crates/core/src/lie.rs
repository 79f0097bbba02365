//! Matrix Lie algebras over the reals: bracket closure, derived algebra, center,
//! Killing form, rank and irreducibility.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Echelon, Matrix};
use crate::numeric::CMat;
use crate::sample::Sampler;
use crate::scalar::Scalar;

/// A real-linearly independent list of square matrices, in reduced echelon form with
/// respect to their real coordinates (so coordinates of members are cheap to read off).
#[derive(Clone, Debug)]
pub struct LieBasis<F: Field> {
    size: usize,
    elems: Vec<Matrix<F>>,
    ech: Echelon<Scalar>,
}

fn real_len<F: Field>(size: usize) -> usize {
    size * size * F::REAL_DIM
}

fn from_real_coords<F: Field>(size: usize, v: &[Scalar]) -> Matrix<F> {
    let d = F::REAL_DIM;
    Matrix::from_fn(size, size, |r, c| {
        let at = (r * size + c) * d;
        F::from_real(&v[at..at + d])
    })
}

impl<F: Field> LieBasis<F> {
    pub fn empty(size: usize) -> Self {
        LieBasis { size, elems: Vec::new(), ech: Echelon::new(real_len::<F>(size)) }
    }

    /// Real span of `mats` (not closed under bracket unless the input is).
    pub fn span(size: usize, mats: &[Matrix<F>]) -> Result<Self> {
        let mut ech = Echelon::new(real_len::<F>(size));
        for m in mats {
            check_size(m, size)?;
            ech.insert(m.real_coords());
        }
        Ok(Self::from_echelon(size, ech))
    }

    fn from_echelon(size: usize, ech: Echelon<Scalar>) -> Self {
        let elems = ech.basis().iter().map(|v| from_real_coords(size, v)).collect();
        LieBasis { size, elems, ech }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Matrix<F>] {
        &self.elems
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        m.rows() == self.size && self.ech.contains(&m.real_coords())
    }

    /// Coordinates of `m` in [`LieBasis::elements`], if `m` lies in the span.
    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<Scalar>> {
        self.ech.coordinates(&m.real_coords())
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.size, self.size);
        for (c, e) in coeffs.iter().zip(&self.elems) {
            out.add_scaled(e, &F::from_scalar(c.clone()));
        }
        out
    }

    /// True if every bracket of basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !self.contains(&self.elems[i].commutator(&self.elems[j])) {
                    return false;
                }
            }
        }
        true
    }

    /// `ad(b_i)` as a `dim × dim` matrix of coordinates; requires closure.
    pub fn ad_matrices(&self) -> Result<Vec<Matrix<Scalar>>> {
        let d = self.dim();
        let mut ads = vec![Matrix::zeros(d, d); d];
        for i in 0..d {
            for j in 0..d {
                if j < i {
                    // [b_i, b_j] = -[b_j, b_i]
                    for k in 0..d {
                        ads[i][(k, j)] = -&ads[j][(k, i)];
                    }
                    continue;
                }
                if i == j {
                    continue;
                }
                let br = self.elems[i].commutator(&self.elems[j]);
                let c = self
                    .coordinates(&br)
                    .ok_or_else(|| Error::Precondition("basis is not closed under the bracket".into()))?;
                for (k, x) in c.into_iter().enumerate() {
                    ads[i][(k, j)] = x;
                }
            }
        }
        Ok(ads)
    }
}

fn check_size<F: Field>(m: &Matrix<F>, size: usize) -> Result<()> {
    if m.rows() != size || m.cols() != size {
        return Err(Error::Dimension(format!("{}x{} matrix among {size}x{size} generators", m.rows(), m.cols())));
    }
    Ok(())
}

/// Smallest Lie algebra containing `gens`. Deterministic for a given input order.
pub fn bracket_closure<F: Field>(gens: &[Matrix<F>]) -> Result<LieBasis<F>> {
    bracket_closure_sized(gens.first().map_or(0, Matrix::rows), gens)
}

/// [`bracket_closure`] with an explicit matrix size, so an empty generator list is allowed.
pub fn bracket_closure_sized<F: Field>(size: usize, gens: &[Matrix<F>]) -> Result<LieBasis<F>> {
    let mut ech = Echelon::new(real_len::<F>(size));
    let mut found: Vec<Matrix<F>> = Vec::new();
    let mut work: std::collections::VecDeque<Matrix<F>> = std::collections::VecDeque::new();
    for g in gens {
        check_size(g, size)?;
        work.push_back(g.clone());
    }
    while let Some(m) = work.pop_front() {
        if m.is_zero() || !ech.insert(m.real_coords()) {
            continue;
        }
        for b in &found {
            work.push_back(m.commutator(b));
        }
        found.push(m);
    }
    Ok(LieBasis::from_echelon(size, ech))
}

pub fn derived_algebra<F: Field>(b: &LieBasis<F>) -> Result<LieBasis<F>> {
    if !b.is_closed() {
        return Err(Error::Precondition("input is not closed under the bracket".into()));
    }
    let mut brackets = Vec::new();
    for i in 0..b.dim() {
        for j in i + 1..b.dim() {
            brackets.push(b.elems[i].commutator(&b.elems[j]));
        }
    }
    LieBasis::span(b.size, &brackets)
}

/// Dimension of `{x : [x, g] = 0}`.
pub fn center_dim(ads: &[Matrix<Scalar>]) -> usize {
    let d = ads.len();
    if d == 0 {
        return 0;
    }
    // x = Σ x_i b_i is central iff Σ x_i ad(b_i) = 0
    let mut ech = Echelon::new(d);
    for r in 0..d {
        for c in 0..d {
            ech.insert((0..d).map(|i| ads[i][(r, c)].clone()).collect());
        }
    }
    d - ech.rank()
}

pub fn killing_form(ads: &[Matrix<Scalar>]) -> Matrix<Scalar> {
    let d = ads.len();
    let mut k = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = ads[i].trace_product(&ads[j]);
            k[(j, i)] = v.clone();
            k[(i, j)] = v;
        }
    }
    k
}

/// `(positive, negative, zero)` counts of a symmetric matrix, by exact congruence.
pub fn signature(sym: &Matrix<Scalar>) -> (usize, usize, usize) {
    let mut a = sym.clone();
    let n = a.rows();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                // row/col i += row/col j makes a[(i, i)] = 2 a[(i, j)] != 0
                for &c in &active {
                    let v = &a[(i, c)] + &a[(j, c)];
                    a[(i, c)] = v;
                }
                for &r in &active {
                    let v = &a[(r, i)] + &a[(r, j)];
                    a[(r, i)] = v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != p);
        for &r in &active {
            if a[(r, p)].is_zero() {
                continue;
            }
            let f = &a[(r, p)] / &d;
            for &c in &active {
                let v = &a[(r, c)] - &(&f * &a[(p, c)]);
                a[(r, c)] = v;
            }
        }
    }
    (pos, neg, n - pos - neg)
}

/// How irreducibility was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityMethod {
    /// All elements real antisymmetric: irreducible over R iff the symmetric commutant is R·Id.
    SymmetricCommutant,
    /// All elements skew-hermitian: irreducible over C iff the hermitian commutant is R·Id.
    HermitianCommutant,
    /// Otherwise: absolutely irreducible iff the associative envelope is the full matrix algebra.
    Envelope,
}

#[derive(Clone, Debug)]
pub struct Irreducibility<F: Field> {
    pub irreducible: bool,
    pub method: IrreducibilityMethod,
    /// A proper invariant subspace, when one was found.
    pub witness: Option<Vec<Vec<F>>>,
}

fn hermitian_basis<F: Field>(m: usize) -> Vec<Matrix<F>> {
    let mut out = Vec::new();
    let one = F::one();
    for i in 0..m {
        for j in i..m {
            let mut h = Matrix::zeros(m, m);
            h[(i, j)] = one.clone();
            h[(j, i)] = one.clone();
            out.push(h);
        }
    }
    if F::REAL_DIM == 2 {
        let i_unit = F::from_real(&[Scalar::zero(), Scalar::one()]);
        for i in 0..m {
            for j in i + 1..m {
                let mut h = Matrix::zeros(m, m);
                h[(i, j)] = i_unit.clone();
                h[(j, i)] = i_unit.fneg();
                out.push(h);
            }
        }
    }
    out
}

/// Self-adjoint matrices commuting with every element of `elems`.
pub fn self_adjoint_commutant<F: Field>(m: usize, elems: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let basis = hermitian_basis::<F>(m);
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|h| elems.iter().flat_map(|e| h.commutator(e).real_coords()).collect())
        .collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let a = Matrix::from_fn(rows, basis.len(), |r, c| cols[c][r].clone());
    let mut ech = Echelon::new(basis.len());
    for r in 0..rows {
        ech.insert(a.row(r).to_vec());
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let mut s = Matrix::zeros(m, m);
            for (c, h) in v.iter().zip(&basis) {
                s.add_scaled(h, &F::from_scalar(c.clone()));
            }
            s
        })
        .collect()
}

/// An eigenspace of a non-scalar self-adjoint `s`, found from a rationalized numerical
/// eigenvalue that is then verified exactly.
fn eigenspace_witness<F: Field>(s: &Matrix<F>) -> Option<Vec<Vec<F>>> {
    let m = s.rows();
    let c: CMat = s.to_c64();
    let eig = c.symmetric_eigen();
    for lam in eig.eigenvalues.iter() {
        let Some(q) = Scalar::approximate(*lam, 10_000) else { continue };
        let shifted = s.sub(&Matrix::scalar_identity(m, F::from_scalar(q)));
        let ker = shifted.nullspace();
        if !ker.is_empty() && ker.len() < m {
            return Some(ker);
        }
    }
    // the image of a singular commuting operator is invariant as well
    let rank = s.rank();
    if rank > 0 && rank < m {
        let mut ech = Echelon::new(m);
        for c in 0..m {
            ech.insert(s.column(c));
        }
        return Some(ech.basis());
    }
    None
}

pub fn invariant_subspace_search<F: Field>(b: &LieBasis<F>) -> Irreducibility<F> {
    let m = b.size;
    let elems = &b.elems;
    let skew = elems.iter().all(|e| e.is_skew_adjoint());
    if m == 0 {
        return Irreducibility { irreducible: false, method: IrreducibilityMethod::Envelope, witness: None };
    }
    if skew {
        let method = if F::REAL_DIM == 1 {
            IrreducibilityMethod::SymmetricCommutant
        } else {
            IrreducibilityMethod::HermitianCommutant
        };
        let comm = self_adjoint_commutant(m, elems);
        if comm.len() <= 1 {
            return Irreducibility { irreducible: true, method, witness: None };
        }
        let id = Matrix::<F>::identity(m);
        let witness = comm
            .iter()
            .filter(|s| {
                let mut e = Echelon::new(m * m * F::REAL_DIM);
                e.insert(id.real_coords());
                e.insert(s.real_coords())
            })
            .find_map(eigenspace_witness);
        return Irreducibility { irreducible: false, method, witness };
    }
    let dim = envelope_dim(m, elems);
    Irreducibility { irreducible: dim == m * m, method: IrreducibilityMethod::Envelope, witness: None }
}

/// Dimension over the coefficient field of the unital associative algebra generated by `elems`.
pub fn envelope_dim<F: Field>(m: usize, elems: &[Matrix<F>]) -> usize {
    let mut ech = Echelon::new(m * m);
    let mut found = vec![Matrix::<F>::identity(m)];
    ech.insert(found[0].data().to_vec());
    let mut i = 0;
    while i < found.len() {
        let w = found[i].clone();
        i += 1;
        for e in elems {
            let p = e.mul(&w);
            if ech.insert(p.data().to_vec()) {
                found.push(p);
            }
        }
        if ech.rank() == m * m {
            break;
        }
    }
    ech.rank()
}

/// Common kernel of the given matrices.
pub fn joint_kernel<F: Field>(size: usize, mats: &[Matrix<F>]) -> Vec<Vec<F>> {
    let mut ech = Echelon::new(size);
    for m in mats {
        for r in 0..m.rows() {
            ech.insert(m.row(r).to_vec());
        }
    }
    ech.nullspace()
}

/// Dimension of the centralizer of a random element: the rank for reductive algebras.
pub fn generic_centralizer_dim(ads: &[Matrix<Scalar>], seed: u64) -> usize {
    let d = ads.len();
    if d == 0 {
        return 0;
    }
    let mut s = Sampler::new(seed);
    let mut best = d;
    for _ in 0..3 {
        let mut x = Matrix::zeros(d, d);
        for a in ads {
            x.add_scaled(a, &s.rational());
        }
        best = best.min(d - x.rank());
    }
    best
}

/// Evidence about a generated Lie algebra.
#[derive(Clone, Debug)]
pub struct ClosureReport<F: Field> {
    pub basis: LieBasis<F>,
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub semisimple: bool,
    /// Killing form negative definite.
    pub compact: bool,
    /// Killing form signature `(+, -, 0)`.
    pub killing_signature: (usize, usize, usize),
    pub rank: usize,
    pub irreducible: bool,
    pub irreducibility_method: IrreducibilityMethod,
    pub invariant_subspace: Option<Vec<Vec<F>>>,
}

/// Serializable part of a [`ClosureReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub semisimple: bool,
    pub compact: bool,
    pub killing_signature: (usize, usize, usize),
    pub rank: usize,
    pub irreducible: bool,
    pub irreducibility_method: IrreducibilityMethod,
}

impl<F: Field> ClosureReport<F> {
    pub fn from_generators(gens: &[Matrix<F>]) -> Result<Self> {
        Self::analyse(bracket_closure(gens)?)
    }

    pub fn from_generators_sized(size: usize, gens: &[Matrix<F>]) -> Result<Self> {
        Self::analyse(bracket_closure_sized(size, gens)?)
    }

    pub fn analyse(basis: LieBasis<F>) -> Result<Self> {
        let ads = basis.ad_matrices()?;
        let derived = derived_algebra(&basis)?;
        let killing = killing_form(&ads);
        let sig = signature(&killing);
        let d = basis.dim();
        let irr = invariant_subspace_search(&basis);
        Ok(ClosureReport {
            dim: d,
            derived_dim: derived.dim(),
            center_dim: center_dim(&ads),
            semisimple: d > 0 && sig.2 == 0,
            compact: d > 0 && sig.1 == d,
            killing_signature: sig,
            rank: generic_centralizer_dim(&ads, 7),
            irreducible: irr.irreducible,
            irreducibility_method: irr.method,
            invariant_subspace: irr.witness,
            basis,
        })
    }

    pub fn summary(&self) -> ClosureSummary {
        ClosureSummary {
            dim: self.dim,
            derived_dim: self.derived_dim,
            center_dim: self.center_dim,
            semisimple: self.semisimple,
            compact: self.compact,
            killing_signature: self.killing_signature,
            rank: self.rank,
            irreducible: self.irreducible,
            irreducibility_method: self.irreducibility_method,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Form;

    fn so3() -> Vec<Matrix<Scalar>> {
        [[1, 2], [1, 3], [2, 3]].iter().map(|ix| Form::basis(3, ix).to_so().unwrap()).collect()
    }

    #[test]
    fn so3_is_simple_compact_irreducible() {
        let r = ClosureReport::from_generators(&so3()[..2]).unwrap();
        assert_eq!(r.dim, 3);
        assert_eq!(r.derived_dim, 3);
        assert!(r.semisimple && r.compact && r.irreducible);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn abelian_identity() {
        let r = ClosureReport::from_generators(&[Matrix::<Scalar>::identity(3)]).unwrap();
        assert_eq!((r.dim, r.derived_dim, r.center_dim), (1, 0, 1));
        assert!(!r.semisimple);
    }

    #[test]
    fn empty_generators() {
        assert_eq!(bracket_closure::<Scalar>(&[]).unwrap().dim(), 0);
    }

    #[test]
    fn signature_counts() {
        let m = Matrix::int(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -3]]);
        assert_eq!(signature(&m), (1, 2, 0));
        let z = Matrix::int(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(signature(&z), (1, 0, 1));
    }

    #[test]
    fn reducible_witness() {
        // so(3) acting on the first three coordinates of R⁴
        let gens: Vec<Matrix<Scalar>> = [[1, 2], [1, 3], [2, 3]].iter().map(|ix| Form::basis(4, ix).to_so().unwrap()).collect();
        let b = bracket_closure(&gens).unwrap();
        let irr = invariant_subspace_search(&b);
        assert!(!irr.irreducible);
        let w = irr.witness.unwrap();
        assert!(w.len() == 1 || w.len() == 3);
    }
}
