//! Exterior algebra of Euclidean Rⁿ in an orthonormal frame.
//!
//! Blades are bitmasks: bit `i - 1` set means `e_i` is a factor.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub const MAX_DIM: usize = 16;

pub fn blade(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << (i - 1)))
}

/// 1-based indices of a blade, increasing.
pub fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn grade(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}` (zero overlap assumed).
pub fn reorder_sign(a: u32, b: u32) -> i32 {
    let mut swaps = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All blades of grade `k` in dimension `n`, in lexicographic index order.
pub fn blades(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (1..=k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(blade(&idx));
        let mut p = k;
        while p > 0 && idx[p - 1] == n - k + p {
            p -= 1;
        }
        if p == 0 {
            return out;
        }
        idx[p - 1] += 1;
        for q in p..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn lex_key(mask: u32) -> Vec<usize> {
    indices(mask)
}

/// A homogeneous k-form on Rⁿ with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    k: usize,
    terms: BTreeMap<u32, Scalar>,
}

impl Form {
    pub fn zero(n: usize, k: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        Form { n, k, terms: BTreeMap::new() }
    }

    /// The basis form `e_{i1...ik}`; indices must be distinct and in `1..=n`.
    pub fn basis(n: usize, idx: &[usize]) -> Self {
        Form::term(n, idx, Scalar::one())
    }

    /// `c * e_{i1} ∧ ... ∧ e_{ik}`, indices in any order.
    pub fn term(n: usize, idx: &[usize], c: Scalar) -> Self {
        let mut f = Form::zero(n, idx.len());
        f.add_term(idx, &c);
        f
    }

    pub fn from_terms<'a>(n: usize, k: usize, terms: impl IntoIterator<Item = (&'a [usize], Scalar)>) -> Result<Self> {
        let mut f = Form::zero(n, k);
        for (idx, c) in terms {
            if idx.len() != k {
                return Err(Error::Grade(format!("term {idx:?} in a {k}-form")));
            }
            check_indices(n, idx)?;
            f.add_term(idx, &c);
        }
        Ok(f)
    }

    /// Builds a form from integer-coefficient terms; panics on malformed indices.
    pub fn int(n: usize, terms: &[(&[usize], i64)]) -> Self {
        let k = terms.first().map_or(0, |t| t.0.len());
        Form::from_terms(n, k, terms.iter().map(|(i, c)| (*i, Scalar::int(*c)))).expect("malformed form")
    }

    pub(crate) fn from_mask_map(n: usize, k: usize, terms: BTreeMap<u32, Scalar>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Form { n, k, terms }
    }

    /// Adds `c * e_idx` with the sign of sorting `idx`; repeated indices contribute nothing.
    pub fn add_term(&mut self, idx: &[usize], c: &Scalar) {
        assert_eq!(idx.len(), self.k, "grade mismatch");
        let (sign, mask) = match sort_sign(idx) {
            Some(x) => x,
            None => return,
        };
        assert!(mask >> self.n == 0, "index out of range");
        let c = if sign < 0 { -c } else { c.clone() };
        self.add_mask(mask, &c);
    }

    pub(crate) fn add_mask(&mut self, mask: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted lexicographically by index tuple.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (lex_key(*m), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        match sort_sign(idx) {
            Some((s, m)) => {
                let c = self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
            None => Scalar::zero(),
        }
    }

    pub fn coeff_mask(&self, mask: u32) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Value on basis vectors `e_{idx[0]}, ..., e_{idx[k-1]}` in the given order.
    pub fn eval_basis(&self, idx: &[usize]) -> Scalar {
        self.coeff(idx)
    }

    /// Coefficient vector over [`blades`]`(n, k)`.
    pub fn to_vec(&self) -> Vec<Scalar> {
        blades(self.n, self.k).into_iter().map(|m| self.coeff_mask(m)).collect()
    }

    pub fn from_vec(n: usize, k: usize, v: &[Scalar]) -> Self {
        let bl = blades(n, k);
        assert_eq!(bl.len(), v.len(), "coefficient vector length");
        Form::from_mask_map(n, k, bl.into_iter().zip(v.iter().cloned()).collect())
    }

    /// Union of all index sets appearing in the form.
    pub fn support(&self) -> u32 {
        self.terms.keys().fold(0, |a, m| a | m)
    }

    fn check_same(&self, o: &Form, what: &str) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension(format!("{what}: {} vs {}", self.n, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Form) -> Result<Form> {
        self.check_same(o, "sum")?;
        if self.k != o.k && !o.is_zero() && !self.is_zero() {
            return Err(Error::Grade(format!("sum of a {}-form and a {}-form", self.k, o.k)));
        }
        let mut out = if self.is_zero() { Form::zero(self.n, o.k) } else { self.clone() };
        for (m, c) in &o.terms {
            out.add_mask(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Form) -> Result<Form> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.k);
        }
        Form { n: self.n, k: self.k, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn neg(&self) -> Form {
        Form { n: self.n, k: self.k, terms: self.terms.iter().map(|(m, x)| (*m, -x)).collect() }
    }

    pub fn wedge(&self, o: &Form) -> Result<Form> {
        self.check_same(o, "wedge")?;
        let mut out = Form::zero(self.n, self.k + o.k);
        if self.k + o.k > self.n {
            return Ok(out);
        }
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                let p = x * y;
                let p = if reorder_sign(*a, *b) < 0 { -p } else { p };
                out.add_mask(a | b, &p);
            }
        }
        Ok(out)
    }

    /// `e_i ⌟ self`.
    pub fn contract_basis(&self, i: usize) -> Result<Form> {
        if self.k == 0 {
            return Err(Error::Grade("interior product with a 0-form".into()));
        }
        if i == 0 || i > self.n {
            return Err(Error::Dimension(format!("basis vector e_{i} in dimension {}", self.n)));
        }
        let bit = 1u32 << (i - 1);
        let mut out = Form::zero(self.n, self.k - 1);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let c = if below % 2 == 1 { -c } else { c.clone() };
            out.add_mask(m & !bit, &c);
        }
        Ok(out)
    }

    /// `x ⌟ self` for a vector given by its frame components.
    pub fn contract(&self, x: &[Scalar]) -> Result<Form> {
        if x.len() != self.n {
            return Err(Error::Dimension(format!("vector of length {} in dimension {}", x.len(), self.n)));
        }
        let mut out = Form::zero(self.n, self.k.saturating_sub(1));
        if self.k == 0 {
            return Err(Error::Grade("interior product with a 0-form".into()));
        }
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out = out.add(&self.contract_basis(i + 1)?.scale(xi))?;
            }
        }
        Ok(out)
    }

    /// Hodge star with `a ∧ *a = |a|² vol`.
    pub fn hodge_star(&self) -> Form {
        let full = (1u32 << self.n) - 1;
        let mut out = Form::zero(self.n, self.n - self.k);
        for (m, c) in &self.terms {
            let comp = full & !m;
            let c = if reorder_sign(*m, comp) < 0 { -c } else { c.clone() };
            out.add_mask(comp, &c);
        }
        out
    }

    /// Inner product for which the blades `e_S` are orthonormal.
    pub fn inner(&self, o: &Form) -> Result<Scalar> {
        self.check_same(o, "inner product")?;
        if self.k != o.k {
            return Err(Error::Grade(format!("inner product of a {}-form and a {}-form", self.k, o.k)));
        }
        Ok(self.terms.iter().filter_map(|(m, c)| o.terms.get(m).map(|d| c * d)).sum())
    }

    pub fn norm_sqr(&self) -> Scalar {
        self.terms.values().map(|c| c * c).sum()
    }

    /// Derivation action of `a ∈ gl(n)` (with `a e_i = Σ_j a[j][i] e_j`).
    pub fn derivation(&self, a: &Matrix<Scalar>) -> Form {
        let mut out = Form::zero(self.n, self.k);
        for (m, c) in &self.terms {
            let idx = indices(*m);
            for (p, &i) in idx.iter().enumerate() {
                for j in 1..=self.n {
                    let x = &a[(j - 1, i - 1)];
                    if x.is_zero() {
                        continue;
                    }
                    let mut new = idx.clone();
                    new[p] = j;
                    out.add_term(&new, &(c * x));
                }
            }
        }
        out
    }

    /// Pullback `(P*ω)(v_1..v_k) = ω(P v_1, ..., P v_k)`.
    pub fn pullback(&self, p: &Matrix<Scalar>) -> Form {
        assert_eq!((p.rows(), p.cols()), (self.n, self.n), "pullback matrix shape");
        let mut out = Form::zero(self.n, self.k);
        for target in blades(self.n, self.k) {
            let cols = indices(target);
            let mut total = Scalar::zero();
            for (m, c) in &self.terms {
                let rows = indices(*m);
                let minor = Matrix::from_fn(self.k, self.k, |r, q| p[(rows[r] - 1, cols[q] - 1)].clone());
                let d = minor.det();
                if !d.is_zero() {
                    total += &(c * &d);
                }
            }
            out.add_mask(target, &total);
        }
        out
    }

    /// The matrix in so(n) of a 2-form: `ω_ij` at `(j, i)` and `-ω_ij` at `(i, j)` for `i < j`,
    /// so that `e_1 ∧ e_2` rotates `e_1` towards `e_2`.
    pub fn to_so(&self) -> Result<Matrix<Scalar>> {
        if self.k != 2 {
            return Err(Error::Grade(format!("so(n) matrix of a {}-form", self.k)));
        }
        let mut m = Matrix::zeros(self.n, self.n);
        for (mask, c) in &self.terms {
            let ix = indices(*mask);
            let (i, j) = (ix[0] - 1, ix[1] - 1);
            m[(j, i)] = c.clone();
            m[(i, j)] = -c;
        }
        Ok(m)
    }

    /// Inverse of [`Form::to_so`]; the input must be antisymmetric.
    pub fn from_so(m: &Matrix<Scalar>) -> Result<Form> {
        if !m.is_skew() {
            return Err(Error::InvalidInput("matrix is not antisymmetric".into()));
        }
        let n = m.rows();
        let mut f = Form::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.add_term(&[i + 1, j + 1], &m[(j, i)]);
            }
        }
        Ok(f)
    }

    /// Parses the text format: one term per line, `i j k : coefficient`, `#` comments.
    /// With `n = None` the dimension is the largest index used.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Form> {
        let mut rows: Vec<(usize, Vec<usize>, Scalar)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: no + 1, msg };
            let (lhs, rhs) = line.split_once(':').ok_or_else(|| perr("expected `indices : coefficient`".into()))?;
            let idx = lhs
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| perr(format!("bad index `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            let coef: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
            let c = coef.parse::<Scalar>().map_err(|e| match e {
                Error::Parse { msg, .. } => perr(msg),
                other => perr(other.to_string()),
            })?;
            if idx.iter().any(|&i| i == 0 || i > MAX_DIM) {
                return Err(perr(format!("index out of range 1..={MAX_DIM}")));
            }
            rows.push((no + 1, idx, c));
        }
        let dim = n.unwrap_or_else(|| rows.iter().flat_map(|r| r.1.iter().copied()).max().unwrap_or(0));
        let k = rows.first().map_or(0, |r| r.1.len());
        let mut f = Form::zero(dim, k);
        for (line, idx, c) in rows {
            if idx.len() != k {
                return Err(Error::Parse { line, msg: format!("term of grade {} in a {k}-form", idx.len()) });
            }
            check_indices(dim, &idx).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            f.add_term(&idx, &c);
        }
        Ok(f)
    }

    /// Text format accepted by [`Form::parse`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (idx, c) in self.sorted_terms() {
            let ix: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            s.push_str(&format!("{} : {}\n", ix.join(" "), c));
        }
        s
    }
}

fn check_indices(n: usize, idx: &[usize]) -> Result<()> {
    for &i in idx {
        if i == 0 || i > n {
            return Err(Error::Dimension(format!("index {i} outside 1..={n}")));
        }
    }
    Ok(())
}

/// Sign of the sorting permutation and the mask, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(i32, u32)> {
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] == idx[b] {
                return None;
            }
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    Some((if inv % 2 == 0 { 1 } else { -1 }, blade(idx)))
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(idx, c)| {
                let ix: String = idx.iter().map(|i| format!("{i}")).collect::<Vec<_>>().join(",");
                format!("({c}) e{{{ix}}}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={}, k={}]({self})", self.n, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let e1 = Form::basis(4, &[1]);
        let e2 = Form::basis(4, &[2]);
        assert_eq!(e1.wedge(&e2).unwrap(), Form::basis(4, &[1, 2]));
        assert_eq!(e2.wedge(&e1).unwrap(), Form::basis(4, &[1, 2]).neg());
        let a = Form::basis(4, &[1, 2]);
        assert!(a.wedge(&Form::basis(4, &[1, 3])).unwrap().is_zero());
        let b = Form::basis(4, &[3, 4]);
        assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
    }

    #[test]
    fn contraction_signs() {
        let t = Form::basis(3, &[1, 2, 3]);
        assert_eq!(t.contract_basis(1).unwrap(), Form::basis(3, &[2, 3]));
        assert_eq!(t.contract_basis(2).unwrap(), Form::basis(3, &[1, 3]).neg());
        assert!(Form::zero(3, 0).contract_basis(1).is_err());
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(Form::basis(3, &[1]).hodge_star(), Form::basis(3, &[2, 3]));
        let a = Form::basis(7, &[1, 2, 7]);
        let s = a.hodge_star();
        assert_eq!(a.wedge(&s).unwrap(), Form::basis(7, &[1, 2, 3, 4, 5, 6, 7]));
        assert_eq!(s.hodge_star(), a);
    }

    #[test]
    fn parse_round_trip() {
        let f = Form::parse("# demo\n1 3 5 : 1/6 * sqrt(3)\n2 1 4 : -2\n", Some(7)).unwrap();
        assert_eq!(f.coeff(&[1, 2, 4]), Scalar::int(2));
        assert_eq!(Form::parse(&f.to_text(), Some(7)).unwrap(), f);
        let e = Form::parse("1 2 : 1\n1 : 3\n", None).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn blade_enumeration() {
        assert_eq!(blades(5, 2).len(), 10);
        assert_eq!(blades(7, 3).len(), 35);
        assert_eq!(indices(blades(4, 2)[0]), vec![1, 2]);
    }
}
