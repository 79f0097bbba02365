//! spin(9) ⊂ so(16) cut out by 84 linear equations on the coordinates `ω_{i,j}`:
//! 56 two-term relations (table 1) and 28 five-term relations (table 2).

use std::collections::HashMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{blades, indices, Form};
use crate::clifford::SpinRep;
use crate::error::{Error, Result};
use crate::holonomy::antisym_prolongation;
use crate::lie::{ClosureReport, ClosureSummary, LieBasis};
use crate::matrix::{Echelon, Matrix, SparseRow};
use crate::scalar::Scalar;

const FIXTURE: &str = include_str!("../data/spin9_equations.txt");
const FIXTURE_SHA256: &str = "472086d9d102e259b35a21cbe76b68b155a6108a22f5c648d2113060974e3059";

pub const N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Table {
    One,
    Two,
}

/// One relation, stored as the functional `Σ c·ω_{i,j}` (left side minus right side).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spin9Equation {
    pub table: Table,
    /// 1-based row within its table.
    pub row: usize,
    pub terms: Vec<(i64, usize, usize)>,
    pub text: String,
}

impl Spin9Equation {
    pub fn eval(&self, w: &Form) -> Scalar {
        self.terms.iter().map(|&(c, i, j)| &Scalar::int(c) * &w.coeff(&[i, j])).sum()
    }

    fn by_mask(&self) -> HashMap<u32, i64> {
        let mut m = HashMap::new();
        for &(c, i, j) in &self.terms {
            *m.entry(crate::algebra::blade(&[i, j])).or_insert(0) += c;
        }
        m
    }
}

pub fn fixture_checksum() -> String {
    format!("{:x}", Sha256::digest(FIXTURE.as_bytes()))
}

fn parse_pair(tok: &str, line: usize) -> Result<(usize, usize)> {
    let err = || Error::Parse { line, msg: format!("bad index pair `{tok}`") };
    let (a, b) = tok.split_once(',').ok_or_else(err)?;
    let (i, j): (usize, usize) = (a.trim().parse().map_err(|_| err())?, b.trim().parse().map_err(|_| err())?);
    if !(1..=N).contains(&i) || !(1..=N).contains(&j) || i >= j {
        return Err(err());
    }
    Ok((i, j))
}

fn parse_signed(tok: &str, line: usize) -> Result<(i64, usize, usize)> {
    let (sign, rest) = match tok.as_bytes().first() {
        Some(b'-') => (-1, &tok[1..]),
        Some(b'+') => (1, &tok[1..]),
        _ => (1, tok),
    };
    let (c, pair) = match rest.split_once('*') {
        Some((c, p)) => (c.parse::<i64>().map_err(|_| Error::Parse { line, msg: format!("bad coefficient `{c}`") })?, p),
        None => (1, rest),
    };
    let (i, j) = parse_pair(pair, line)?;
    Ok((sign * c, i, j))
}

fn parse(text: &str) -> Result<Vec<Spin9Equation>> {
    let mut out = Vec::new();
    let mut table = None;
    let mut counts = [0usize; 2];
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[table1]" => table = Some(Table::One),
            "[table2]" => table = Some(Table::Two),
            _ => {
                let t = table.ok_or(Error::Parse { line: ln + 1, msg: "equation outside a table".into() })?;
                let (lhs, rhs) = line.split_once('=').ok_or(Error::Parse { line: ln + 1, msg: "missing `=`".into() })?;
                let mut terms = vec![parse_signed(lhs.trim(), ln + 1)?];
                let rhs = rhs.replace("+ ", "+").replace("- ", "-");
                for tok in rhs.split_whitespace() {
                    let (c, i, j) = parse_signed(tok, ln + 1)?;
                    terms.push((-c, i, j));
                }
                let k = t as usize;
                counts[k] += 1;
                out.push(Spin9Equation { table: t, row: counts[k], terms, text: line.to_string() });
            }
        }
    }
    Ok(out)
}

/// The 84 equations, after verifying the fixture checksum.
pub fn equations() -> Result<Vec<Spin9Equation>> {
    let sum = fixture_checksum();
    if sum != FIXTURE_SHA256 {
        return Err(Error::Precondition(format!("spin(9) equation fixture checksum mismatch: {sum}")));
    }
    parse(FIXTURE)
}

/// Counts and shape of the transcription.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TranscriptionReport {
    pub table1: usize,
    pub table2: usize,
    /// Each table 1 row relates exactly two coordinates.
    pub table1_two_terms: bool,
    /// Each table 2 row is `2ω_{i,j}` (i, j ≤ 8) against four `ω_{α,β}` (α, β ≥ 9).
    pub table2_pattern: bool,
}

pub fn transcription_report() -> Result<TranscriptionReport> {
    let eqs = equations()?;
    let t1: Vec<_> = eqs.iter().filter(|e| e.table == Table::One).collect();
    let t2: Vec<_> = eqs.iter().filter(|e| e.table == Table::Two).collect();
    let table1_two_terms = t1.iter().all(|e| e.terms.len() == 2 && e.terms[0].0 == 1 && e.terms[1].0.abs() == 1);
    let table2_pattern = t2.iter().all(|e| {
        let (c, i, j) = e.terms[0];
        e.terms.len() == 5 && c == 2 && j <= 8 && i < j && e.terms[1..].iter().all(|&(c, a, _)| c.abs() == 1 && a >= 9)
    });
    Ok(TranscriptionReport { table1: t1.len(), table2: t2.len(), table1_two_terms, table2_pattern })
}

fn functional_matrix(eqs: &[Spin9Equation]) -> Matrix<Scalar> {
    let two = blades(N, 2);
    let pos: HashMap<u32, usize> = two.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut m = Matrix::zeros(eqs.len(), two.len());
    for (r, e) in eqs.iter().enumerate() {
        for (mask, c) in e.by_mask() {
            m[(r, pos[&mask])] = Scalar::int(c);
        }
    }
    m
}

/// Kernel of the 84 functionals, as matrices in so(16).
pub fn spin9_basis() -> Result<LieBasis<Scalar>> {
    let eqs = equations()?;
    let kernel = functional_matrix(&eqs).nullspace();
    let mats: Vec<Matrix<Scalar>> = kernel.iter().map(|v| Form::from_vec(N, 2, v).to_so()).collect::<Result<_>>()?;
    LieBasis::span(N, &mats)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    /// `table:row: text` of every violated equation.
    pub violated: Vec<String>,
}

pub fn membership(m: &Matrix<Scalar>) -> Result<Membership> {
    if m.rows() != N || m.cols() != N {
        return Err(Error::Dimension(format!("expected a 16x16 matrix, got {}x{}", m.rows(), m.cols())));
    }
    if !m.is_skew() {
        return Err(Error::InvalidInput("membership needs an antisymmetric matrix".into()));
    }
    let w = Form::from_so(m)?;
    let violated: Vec<String> = equations()?
        .iter()
        .filter(|e| !e.eval(&w).is_zero())
        .map(|e| format!("table{}:{}: {}", e.table as usize + 1, e.row, e.text))
        .collect();
    Ok(Membership { member: violated.is_empty(), violated })
}

/// One stage of the elimination for `{T ∈ Λ³R¹⁶ : e_i⌟T satisfies the selected equations}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub name: String,
    pub dim: usize,
    /// No surviving `T` has a component `T_{8,a,b}` with `max(a,b) > 8`.
    pub mixed_eight_vanish: bool,
    /// `e₈⌟T = 0` for every survivor.
    pub e8_contraction_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProlongationReport {
    /// Dimension from the generic prolongation solver applied to [`spin9_basis`].
    pub direct_dim: usize,
    pub stages: Vec<Stage>,
    /// The last stage imposes every equation and agrees with the direct solver.
    pub consistent: bool,
}

fn stage(eqs: &[Spin9Equation], select: &dyn Fn(usize, Table) -> bool, name: &str) -> Stage {
    let three = blades(N, 3);
    let pos: HashMap<u32, usize> = three.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let maps: Vec<HashMap<u32, i64>> = eqs.iter().map(Spin9Equation::by_mask).collect();
    let mut ech = Echelon::<Scalar>::new(three.len());
    for i in 1..=N {
        let ei = 1u32 << (i - 1);
        for (e, map) in eqs.iter().zip(&maps) {
            if !select(i, e.table) {
                continue;
            }
            // e_i⌟e_{i,a,b} = ±e_{a,b}, so the row pairs the functional with T_{i,a,b}
            let mut row: SparseRow<Scalar> = map
                .iter()
                .filter(|(&m, &c)| m & ei == 0 && c != 0)
                .map(|(&m, &c)| {
                    let sign = (m & (ei - 1)).count_ones() % 2;
                    (pos[&(m | ei)], Scalar::int(if sign == 0 { c } else { -c }))
                })
                .collect();
            row.sort_by_key(|x| x.0);
            ech.insert_sparse(row);
        }
    }
    let null = ech.nullspace();
    let e8 = 1u32 << 7;
    let mixed: Vec<usize> = three.iter().enumerate().filter(|(_, &m)| m & e8 != 0 && m >> 8 != 0).map(|(i, _)| i).collect();
    let mixed_eight_vanish = null.iter().all(|v| mixed.iter().all(|&i| v[i].is_zero()));
    let e8_contraction_vanishes = null.iter().all(|v| Form::from_vec(N, 3, v).contract_basis(8).map(|f| f.is_zero()).unwrap_or(false));
    Stage { name: name.to_string(), dim: null.len(), mixed_eight_vanish, e8_contraction_vanishes }
}

/// The antisymmetric prolongation of spin(9) on R¹⁶, directly and in three stages:
/// table 1 for every `i`, then table 2 for `i = 8`, then everything.
pub fn prolongation_vanishes() -> Result<ProlongationReport> {
    let eqs = equations()?;
    let direct_dim = antisym_prolongation(&spin9_basis()?)?.len();
    let stages = vec![
        stage(&eqs, &|_, t| t == Table::One, "table 1"),
        stage(&eqs, &|i, t| t == Table::One || i == 8, "table 1 + table 2 at e_8"),
        stage(&eqs, &|_, _| true, "all equations"),
    ];
    let consistent = stages.last().map(|s| s.dim) == Some(direct_dim);
    Ok(ProlongationReport { direct_dim, stages, consistent })
}

/// `ω = Σ_k k·e_{2k-1,2k}` on R⁸, nondegenerate.
pub fn generic_two_form() -> Form {
    let mut w = Form::zero(8, 2);
    for k in 1..=4 {
        w.add_term(&[2 * k - 1, 2 * k], &Scalar::int(k as i64));
    }
    w
}

/// Lie algebra generated by `ρ(X⌟ω)` in End(Δ₈ = R¹⁶) for the generic 2-form ω.
pub fn generate_from_2form() -> Result<ClosureReport<Scalar>> {
    let rep = SpinRep::new(8)?;
    let w = generic_two_form();
    let gens: Vec<Matrix<Scalar>> = (1..=8).map(|i| rep.real_form_matrix(&w.contract_basis(i)?)).collect::<Result<_>>()?;
    ClosureReport::from_generators_sized(16, &gens)
}

/// 2-forms on R¹⁶ commuting with every element of `g`.
pub fn commutant(g: &LieBasis<Scalar>) -> Result<Vec<Form>> {
    let n = g.size();
    let two = blades(n, 2);
    let ws: Vec<Matrix<Scalar>> = two.iter().map(|&m| Form::basis(n, &indices(m)).to_so()).collect::<Result<_>>()?;
    let mut ech = Echelon::new(two.len());
    for x in g.elements() {
        let cols: Vec<Vec<Scalar>> = ws.iter().map(|w| w.commutator(x).data().to_vec()).collect();
        for r in 0..n * n {
            if ech.rank() == two.len() {
                break;
            }
            ech.insert(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    Ok(ech.nullspace().iter().map(|v| Form::from_vec(n, 2, v)).collect())
}

/// Everything `spin9 --check-all` reports.
#[derive(Clone, Debug, Serialize)]
pub struct Spin9Check {
    pub checksum_ok: bool,
    pub transcription: TranscriptionReport,
    pub basis: ClosureSummary,
    pub bracket_closed: bool,
    pub elementary_violates: Vec<String>,
    pub prolongation: ProlongationReport,
    pub generated: ClosureSummary,
    pub generated_invariant_spinors: usize,
    pub commutant_dim: usize,
    pub pass: bool,
}

pub fn check_all() -> Result<Spin9Check> {
    let transcription = transcription_report()?;
    let basis = spin9_basis()?;
    let bracket_closed = basis.is_closed();
    let mut e19 = Matrix::zeros(N, N);
    e19[(0, 8)] = Scalar::one();
    e19[(8, 0)] = -Scalar::one();
    let elementary_violates = membership(&e19)?.violated;
    let commutant_dim = commutant(&basis)?.len();
    let report = ClosureReport::analyse(basis)?.summary();
    let prolongation = prolongation_vanishes()?;
    let gen = generate_from_2form()?;
    let generated_invariant_spinors = crate::lie::joint_kernel(16, gen.basis.elements()).len();
    let generated = gen.summary();
    let pass = transcription.table1 == 56
        && transcription.table2 == 28
        && transcription.table1_two_terms
        && transcription.table2_pattern
        && report.dim == 36
        && report.compact
        && report.irreducible
        && bracket_closed
        && prolongation.direct_dim == 0
        && prolongation.consistent
        && generated.dim == 36
        && generated.compact
        && generated.irreducible
        && generated_invariant_spinors == 0
        && commutant_dim == 0;
    Ok(Spin9Check {
        checksum_ok: true,
        transcription,
        basis: report,
        bracket_closed,
        elementary_violates,
        prolongation,
        generated,
        generated_invariant_spinors,
        commutant_dim,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signs() {
        let e = parse("[table2]\n2*1,3 = -10,12 + 13,15 + 14,16 + 9,11\n").unwrap();
        assert_eq!(e[0].terms, vec![(2, 1, 3), (1, 10, 12), (-1, 13, 15), (-1, 14, 16), (-1, 9, 11)]);
        assert!(parse("[table1]\n3,2 = 1,4\n").is_err());
        assert!(parse("1,2 = 3,4\n").is_err());
    }
}
