//! Closed-form reference data for N(1,1): torsion forms, 4-forms, G₂ forms, scalar
//! curvatures and the seven-unknown linear systems, evaluated exactly at given parameters.

use super::MetricParams;
use crate::algebra::Form;
use crate::scalar::Scalar;

/// `(numerator, denominator, power of s, power of y)`.
pub type Monomial = (i64, i64, i32, i32);

/// Evaluates `Σ n/d · s^a y^b`.
pub fn laurent(p: &MetricParams, terms: &[Monomial]) -> Scalar {
    terms.iter().map(|&(n, d, a, b)| &(&Scalar::frac(n, d) * &super::ipow(&p.s, a)) * &super::ipow(&p.y, b)).sum()
}

fn combo(terms: &[(&[usize], i64)], c: &Scalar) -> Form {
    Form::int(7, terms).scale(c)
}

fn total(parts: Vec<Form>) -> Form {
    parts.into_iter().reduce(|a, b| a.add(&b).expect("same shape")).expect("nonempty")
}

const X135_146: &[(&[usize], i64)] = &[(&[1, 3, 5], 1), (&[1, 4, 6], 1)];
const X245_236: &[(&[usize], i64)] = &[(&[2, 4, 5], 1), (&[2, 3, 6], -1)];
const X347_567: &[(&[usize], i64)] = &[(&[3, 4, 7], 1), (&[5, 6, 7], -1)];
const X127: &[(&[usize], i64)] = &[(&[1, 2, 7], 1)];
const X1457_1367: &[(&[usize], i64)] = &[(&[1, 4, 5, 7], 1), (&[1, 3, 6, 7], -1)];
const X2357_2467: &[(&[usize], i64)] = &[(&[2, 3, 5, 7], 1), (&[2, 4, 6, 7], 1)];
const X1234_1256: &[(&[usize], i64)] = &[(&[1, 2, 3, 4], 1), (&[1, 2, 5, 6], -1)];
const X3456: &[(&[usize], i64)] = &[(&[3, 4, 5, 6], 1)];

/// The thirteen isotropy invariant 3-forms.
pub fn invariant_three_forms() -> Vec<Form> {
    let t: &[&[(&[usize], i64)]] = &[
        X135_146,
        &[(&[2, 3, 5], 1), (&[2, 4, 6], 1)],
        &[(&[3, 5, 7], 1), (&[4, 6, 7], 1)],
        &[(&[1, 4, 5], 1), (&[1, 3, 6], -1)],
        X245_236,
        &[(&[4, 5, 7], 1), (&[3, 6, 7], -1)],
        X127,
        &[(&[3, 4, 7], 1)],
        &[(&[5, 6, 7], 1)],
        &[(&[1, 3, 4], 1)],
        &[(&[2, 3, 4], 1)],
        &[(&[1, 5, 6], 1)],
        &[(&[2, 5, 6], 1)],
    ];
    t.iter().map(|x| Form::int(7, x)).collect()
}

/// The thirteen-term 4-form Ansatz.
pub fn four_form_ansatz() -> Vec<Form> {
    let t: &[&[(&[usize], i64)]] = &[
        &[(&[1, 2, 3, 4], 1)],
        &[(&[1, 2, 5, 6], 1)],
        X3456,
        &[(&[1, 3, 4, 7], 1)],
        &[(&[1, 5, 6, 7], 1)],
        &[(&[2, 3, 4, 7], 1)],
        &[(&[2, 5, 6, 7], 1)],
        &[(&[1, 2, 3, 5], 1), (&[1, 2, 4, 6], 1)],
        &[(&[1, 3, 5, 7], 1), (&[1, 4, 6, 7], 1)],
        &[(&[1, 2, 4, 5], 1), (&[1, 2, 3, 6], -1)],
        X1457_1367,
        &[(&[2, 4, 5, 7], 1), (&[2, 3, 6, 7], -1)],
        X2357_2467,
    ];
    t.iter().map(|x| Form::int(7, x)).collect()
}

fn t_family(p: &MetricParams, a: &[Monomial], b: &[Monomial], m: &[Monomial], c: &[Monomial]) -> Form {
    total(vec![
        combo(X135_146, &laurent(p, a)),
        combo(X245_236, &laurent(p, b)),
        combo(X127, &laurent(p, m)),
        combo(X347_567, &laurent(p, c)),
    ])
}

const TA: &[Monomial] = &[(1, 2, 0, 0), (-1, 4, 0, 1), (1, 6, -1, 0), (1, 6, -1, 1), (-1, 3, 1, 0)];
const TB: &[Monomial] = &[(1, 2, 0, 0), (-1, 4, 0, 1), (-1, 6, -1, 0), (-1, 6, -1, 1), (1, 3, 1, 0)];
const TM: &[Monomial] = &[(2, 6, -1, 1), (-1, 6, -1, 0), (-2, 3, 1, 0)];
const TC: &[Monomial] = &[(4, 12, -1, 0), (1, 12, -1, 1), (-2, 3, 1, 0)];

pub fn t3(p: &MetricParams) -> Form {
    t_family(p, TA, TB, TM, TC)
}

pub fn t4(p: &MetricParams) -> Form {
    t_family(p, TB, TA, TM, TC)
}

pub fn t5(p: &MetricParams) -> Form {
    let a: &[Monomial] = &[(1, 6, 0, 0), (1, 12, 0, 1), (1, 6, -1, 1), (-1, 6, -1, 0)];
    let m: &[Monomial] = &[(2, 3, 0, 0), (-2, 3, 0, 1), (-2, 6, -1, 1), (-1, 6, -1, 0)];
    let c: &[Monomial] = &[(1, 3, 0, 0), (-1, 3, 0, 1), (-4, 12, -1, 0), (1, 12, -1, 1)];
    t_family(p, a, a, m, c)
}

pub fn t6(p: &MetricParams) -> Form {
    let a: &[Monomial] = &[(1, 6, 0, 0), (1, 12, 0, 1), (-1, 6, -1, 1), (1, 6, -1, 0)];
    let m: &[Monomial] = &[(-2, 3, 0, 0), (2, 3, 0, 1), (-2, 6, -1, 1), (-1, 6, -1, 0)];
    let c: &[Monomial] = &[(-1, 3, 0, 0), (1, 3, 0, 1), (-4, 12, -1, 0), (1, 12, -1, 1)];
    t_family(p, a, a, m, c)
}

/// `T_k` for `k ∈ {3,4,5,6}`.
pub fn torsion(k: usize, p: &MetricParams) -> Option<Form> {
    match k {
        3 => Some(t3(p)),
        4 => Some(t4(p)),
        5 => Some(t5(p)),
        6 => Some(t6(p)),
        _ => None,
    }
}

/// The common torsion form at `s = y = 1`.
pub fn t_undeformed() -> Form {
    total(vec![
        combo(X135_146, &Scalar::frac(1, 4)),
        combo(X245_236, &Scalar::frac(1, 4)),
        combo(X127, &Scalar::frac(-1, 2)),
        combo(X347_567, &Scalar::frac(-1, 4)),
    ])
}

/// `√3/6 (X_135 + X_146 - X_245 + X_236)`, the torsion with `T_3 = -T_4` at `(√3/2, 2)`.
pub fn t_opposite() -> Form {
    let c = &Scalar::sqrt_int(3).unwrap() * &Scalar::frac(1, 6);
    total(vec![combo(X135_146, &c), combo(X245_236, &-&c)])
}

fn r_family(p: &MetricParams, a: &[Monomial], b: &[Monomial], c: &[Monomial], d: &[Monomial]) -> Form {
    total(vec![
        combo(X1457_1367, &laurent(p, a)),
        combo(X2357_2467, &laurent(p, b)),
        combo(X1234_1256, &laurent(p, c)),
        combo(X3456, &laurent(p, d)),
    ])
}

const RC: &[Monomial] = &[(-1, 2, 1, 0), (1, 8, -1, 1), (3, 8, -1, 0)];
const RD: &[Monomial] = &[(1, 2, 1, 0), (1, 8, -1, 0), (-3, 8, -1, 1)];

pub fn r3(p: &MetricParams) -> Form {
    let a: &[Monomial] = &[(1, 4, 0, 1), (-1, 2, 0, 0), (1, 8, -1, 0), (1, 8, -1, 1), (-1, 2, 1, 0)];
    let b: &[Monomial] = &[(1, 2, 0, 0), (-1, 4, 0, 1), (1, 8, -1, 0), (1, 8, -1, 1), (-1, 2, 1, 0)];
    r_family(p, a, b, RC, RD)
}

pub fn r4(p: &MetricParams) -> Form {
    let a: &[Monomial] = &[(1, 4, 0, 1), (-1, 2, 0, 0), (-1, 8, -1, 0), (-1, 8, -1, 1), (1, 2, 1, 0)];
    let b: &[Monomial] = &[(1, 2, 0, 0), (-1, 4, 0, 1), (-1, 8, -1, 0), (-1, 8, -1, 1), (1, 2, 1, 0)];
    r_family(p, a, b, RC, RD)
}

fn r56(p: &MetricParams, c: &[Monomial], d: &[Monomial], e: &[Monomial]) -> Form {
    let e = laurent(p, e);
    total(vec![
        combo(X1234_1256, &laurent(p, c)),
        combo(X3456, &laurent(p, d)),
        combo(X1457_1367, &e),
        combo(X2357_2467, &-&e),
    ])
}

pub fn r5(p: &MetricParams) -> Form {
    r56(
        p,
        &[(1, 2, 0, 0), (-1, 4, 0, 1), (1, 8, -1, 1), (-3, 8, -1, 0)],
        &[(-1, 2, 0, 0), (3, 4, 0, 1), (1, 8, -1, 0), (3, 8, -1, 1)],
        &[(1, 8, -1, 0), (-1, 8, -1, 1)],
    )
}

pub fn r6(p: &MetricParams) -> Form {
    r56(
        p,
        &[(-1, 2, 0, 0), (1, 4, 0, 1), (1, 8, -1, 1), (-3, 8, -1, 0)],
        &[(1, 2, 0, 0), (-3, 4, 0, 1), (1, 8, -1, 0), (3, 8, -1, 1)],
        &[(-1, 8, -1, 0), (1, 8, -1, 1)],
    )
}

/// `R_k` for `k ∈ {3,4,5,6}`.
pub fn four_form(k: usize, p: &MetricParams) -> Option<Form> {
    match k {
        3 => Some(r3(p)),
        4 => Some(r4(p)),
        5 => Some(r5(p)),
        6 => Some(r6(p)),
        _ => None,
    }
}

/// `-√5/10 [(X_1457 - X_1367) + (X_2357 + X_2467)]`, with `R_3 = -R_4` at `(√5/2, 2)`.
pub fn r_opposite() -> Form {
    let c = &Scalar::sqrt_int(5).unwrap() * &Scalar::frac(-1, 10);
    total(vec![combo(X1457_1367, &c), combo(X2357_2467, &c)])
}

fn poly(x: &Scalar, coeffs: &[i64]) -> Scalar {
    coeffs.iter().rev().fold(Scalar::zero(), |acc, &c| &(&acc * x) + &Scalar::int(c))
}

/// `T_{a,b}` for the spinor `aψ_3 + bψ_5` on the metrics with `s = y`.
pub fn t_ab(s: &Scalar, a: &Scalar, b: &Scalar) -> Form {
    let (a2, b2) = (a.square(), b.square());
    let n = &a2 + &b2;
    let ab = a * b;
    let den12 = &(&Scalar::int(12) * s) * &n;
    let den3 = &(&Scalar::int(3) * s) * &n;
    let c1 = &(&(&a2 * &poly(s, &[2, 8, -7])) + &(&b2 * &poly(s, &[-2, 4, 1]))) / &den12;
    let c2 = &poly(s, &[-2, 4, 1]) / &(&Scalar::int(12) * s);
    let c3 = &(&(&a2 * &poly(s, &[4, 1, -8])) + &(&b2 * &poly(s, &[-4, 5, -4]))) / &den12;
    let c4 = &poly(s, &[-1, 2, -4]) / &(&Scalar::int(6) * s);
    let c5 = &(&ab * &poly(s, &[1, 1, -2])) / &den3;
    let c6 = &(&ab * &poly(s, &[-2, 1, 1])) / &den3;
    total(vec![
        combo(X135_146, &c1),
        combo(X245_236, &c2),
        combo(X347_567, &c3),
        combo(X127, &c4),
        combo(&[(&[1, 3, 4], 1), (&[1, 5, 6], -1)], &c5),
        combo(&[(&[3, 5, 7], 1), (&[4, 6, 7], 1)], &c6),
    ])
}

/// `(T_{a,b}, ω_{a,b})` for the unit G₂ form of `aψ_3 + bψ_5`.
pub fn t_ab_omega_inner(s: &Scalar, a: &Scalar, b: &Scalar) -> Scalar {
    let (a2, b2) = (a.square(), b.square());
    let num = &(&b2 * &poly(s, &[1, -5, -2])) + &(&a2 * &poly(s, &[1, 1, 4]));
    &num / &(&(&Scalar::int(6) * s) * &(&a2 + &b2))
}

fn sum3(a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    &(&a.square() + &b.square()) + &c.square()
}

fn p3(y: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    let ab = &a.square() + &b.square();
    let num = &(&ab * &(&Scalar::int(4) - y)) + &(&c.square() * &(&Scalar::int(8) - &(&Scalar::int(5) * y)));
    &num / &(&Scalar::int(12) * &sum3(a, b, c))
}

fn q3(y: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    &(&(a * b) * &(y - &Scalar::one())) / &(&Scalar::int(3) * &sum3(a, b, c))
}

fn p4(y: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    let ab = &a.square() + &b.square();
    let num = &(&ab * &(y - &Scalar::one())) + &(&c.square() * &(&(&Scalar::int(3) * y) - &Scalar::int(7)));
    &num / &(&Scalar::int(8) * &sum3(a, b, c))
}

fn q4(y: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
    &(&(a * b) * &(y - &Scalar::int(3))) / &(&Scalar::int(4) * &sum3(a, b, c))
}

/// `T_{a,b,c}` for `aψ_3 + bψ_4 + cψ_6` on the metrics with `s = 1`. The `Q(a,c,b)`
/// bracket is `X_367 - X_457 + X_234 - X_256`.
pub fn t_abc(y: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Form {
    total(vec![
        combo(&[(&[5, 6, 7], 1), (&[3, 4, 7], -1)], &p3(y, a, b, c)),
        combo(X135_146, &p3(y, a, c, b)),
        combo(X245_236, &p3(y, b, c, a)),
        combo(&[(&[2, 3, 5], 1), (&[2, 4, 6], 1), (&[1, 4, 5], 1), (&[1, 3, 6], -1)], &q3(y, a, b, c)),
        combo(&[(&[3, 5, 7], 1), (&[4, 6, 7], 1), (&[1, 5, 6], 1), (&[1, 3, 4], -1)], &q3(y, b, c, a)),
        combo(&[(&[3, 6, 7], 1), (&[4, 5, 7], -1), (&[2, 3, 4], 1), (&[2, 5, 6], -1)], &q3(y, a, c, b)),
        combo(X127, &(&(&(&Scalar::int(2) * y) - &Scalar::int(5)) / &Scalar::int(6))),
    ])
}

/// `R_{a,b,c}` for `aψ_3 + bψ_4 + cψ_6` on the metrics with `s = 1`.
pub fn r_abc(y: &Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> Form {
    total(vec![
        combo(X1234_1256, &p4(y, a, b, c)),
        combo(X2357_2467, &-p4(y, a, c, b)),
        combo(X1457_1367, &p4(y, b, c, a)),
        combo(&[(&[2, 4, 5, 7], 1), (&[2, 3, 6, 7], -1), (&[1, 3, 5, 7], -1), (&[1, 4, 6, 7], -1)], &q4(y, a, b, c)),
        combo(&[(&[1, 2, 3, 5], 1), (&[1, 2, 4, 6], 1), (&[2, 5, 6, 7], 1), (&[2, 3, 4, 7], -1)], &q4(y, b, c, a)),
        combo(&[(&[1, 5, 6, 7], 1), (&[1, 3, 4, 7], -1), (&[1, 2, 4, 5], -1), (&[1, 2, 3, 6], 1)], &q4(y, a, c, b)),
        combo(X3456, &(&(&Scalar::int(5) - &(&Scalar::int(3) * y)) / &Scalar::int(8))),
    ])
}

pub fn omega3() -> Form {
    Form::int(7, &[(&[1, 2, 7], -1), (&[1, 3, 5], 1), (&[1, 4, 6], 1), (&[2, 3, 6], 1), (&[2, 4, 5], -1), (&[3, 4, 7], -1), (&[5, 6, 7], 1)])
}

pub fn omega5() -> Form {
    Form::int(7, &[(&[1, 2, 7], -1), (&[1, 3, 5], -1), (&[1, 4, 6], -1), (&[2, 3, 6], 1), (&[2, 4, 5], -1), (&[3, 4, 7], 1), (&[5, 6, 7], -1)])
}

/// The unit G₂ form of `aψ_3 + bψ_5`.
pub fn omega_ab(a: &Scalar, b: &Scalar) -> Form {
    let (a2, b2) = (a.square(), b.square());
    let n = &a2 + &b2;
    let cross = &(&Scalar::int(2) * &(a * b)) / &n;
    let diff = &(&a2 - &b2) / &n;
    total(vec![
        Form::int(7, &[(&[1, 2, 7], -1), (&[2, 3, 6], 1), (&[2, 4, 5], -1)]),
        combo(&[(&[1, 3, 4], 1), (&[1, 5, 6], -1), (&[3, 5, 7], 1), (&[4, 6, 7], 1)], &cross),
        combo(&[(&[1, 3, 5], 1), (&[1, 4, 6], 1), (&[3, 4, 7], -1), (&[5, 6, 7], 1)], &diff),
    ])
}

/// `(T_3, ω_3) = (4s² + y + 1)/(6s)`.
pub fn t3_omega3(p: &MetricParams) -> Scalar {
    laurent(p, &[(4, 6, 1, 0), (1, 6, -1, 1), (1, 6, -1, 0)])
}

/// `(T_5, ω_5) = -(4s + 2sy + y - 1)/(6s)`.
pub fn t5_omega5(p: &MetricParams) -> Scalar {
    laurent(p, &[(-4, 6, 0, 0), (-2, 6, 0, 1), (-1, 6, -1, 1), (1, 6, -1, 0)])
}

/// `Scal^g = 8 + 24y - 2y² - (2 + y²)/s²`.
pub fn scal_g(p: &MetricParams) -> Scalar {
    laurent(p, &[(8, 1, 0, 0), (24, 1, 0, 1), (-2, 1, 0, 2), (-2, 1, -2, 0), (-1, 1, -2, 2)])
}

/// `Scal³ = -4/(3s²) (8 + 32s⁴ + 4y + 5y² + 2s²(-4 - 28y + 3y²))`.
pub fn scal3(p: &MetricParams) -> Scalar {
    let inner = laurent(p, &[(8, 1, 0, 0), (32, 1, 4, 0), (4, 1, 0, 1), (5, 1, 0, 2), (-8, 1, 2, 0), (-56, 1, 2, 1), (6, 1, 2, 2)]);
    &inner * &laurent(p, &[(-4, 3, -2, 0)])
}

/// `Scal⁵ = -4/(3s²) (8 - 4y + 5y² + 8s(-2 + y + y²) + 2s²(4 - 20y + 7y²))`.
pub fn scal5(p: &MetricParams) -> Scalar {
    let inner = laurent(
        p,
        &[(8, 1, 0, 0), (-4, 1, 0, 1), (5, 1, 0, 2), (-16, 1, 1, 0), (8, 1, 1, 1), (8, 1, 1, 2), (8, 1, 2, 0), (-40, 1, 2, 1), (14, 1, 2, 2)],
    );
    &inner * &laurent(p, &[(-4, 3, -2, 0)])
}

/// `Λ̃(X_i)` as Clifford 2-forms (`e_{ab}` standing for `e_a·e_b`).
pub fn lambda_tilde(p: &MetricParams) -> Vec<Form> {
    let f = |terms: &[(&[usize], &[Monomial])]| total(terms.iter().map(|(i, c)| Form::term(7, i, laurent(p, c))).collect());
    let k: &[Monomial] = &[(-1, 2, 0, 0), (1, 4, 0, 1)];
    let nk: &[Monomial] = &[(1, 2, 0, 0), (-1, 4, 0, 1)];
    vec![
        f(&[(&[2, 7], &[(1, 2, -1, 0)]), (&[3, 5], k), (&[4, 6], k)]),
        f(&[(&[1, 7], &[(-1, 2, -1, 0)]), (&[4, 5], k), (&[3, 6], nk)]),
        f(&[(&[4, 7], &[(1, 4, -1, 1)]), (&[2, 6], &[(-1, 4, 0, 1)]), (&[1, 5], &[(1, 4, 0, 1)])]),
        f(&[(&[3, 7], &[(-1, 4, -1, 1)]), (&[1, 6], &[(1, 4, 0, 1)]), (&[2, 5], &[(1, 4, 0, 1)])]),
        f(&[(&[6, 7], &[(-1, 4, -1, 1)]), (&[1, 3], &[(-1, 4, 0, 1)]), (&[2, 4], &[(-1, 4, 0, 1)])]),
        f(&[(&[5, 7], &[(1, 4, -1, 1)]), (&[1, 4], &[(-1, 4, 0, 1)]), (&[2, 3], &[(1, 4, 0, 1)])]),
        f(&[(&[1, 2], &[(1, 1, 1, 0), (-1, 2, -1, 0)]), (&[3, 4], &[(1, 2, 1, 0), (-1, 4, -1, 1)]), (&[5, 6], &[(-1, 2, 1, 0), (1, 4, -1, 1)])]),
    ]
}

/// The basis spinors `ψ_3, ψ_4, ψ_5, ψ_6` of the fixed space in the library's Δ₇.
pub fn basis_spinor(k: usize) -> Option<Vec<Scalar>> {
    let v: [i64; 8] = match k {
        3 => [1, -1, 1, 1, 1, -1, 1, 1],
        4 => [-1, -1, -1, -1, 1, 1, 1, 1],
        5 => [1, -1, -1, -1, -1, -1, 1, -1],
        6 => [1, 1, -1, -1, 1, -1, -1, 1],
        _ => return None,
    };
    Some(v.iter().map(|&x| Scalar::int(x)).collect())
}

/// One equation `const(s,y) + Σ coeff_u · u = 0` of a seven-unknown system, unknowns ordered
/// as the coefficients of `X_135, X_146, X_245, X_236, X_127, X_347, X_567`.
#[derive(Clone, Debug)]
pub struct ReferenceEquation {
    pub constant: &'static [Monomial],
    pub coeffs: [i64; 7],
}

/// A reference seven-unknown linear system for the spinor `ψ_k`.
#[derive(Clone, Debug)]
pub struct ReferenceSystem {
    pub spinor: usize,
    pub equations: Vec<ReferenceEquation>,
}

impl ReferenceSystem {
    /// Augmented rows `[coeffs | const]` at the parameters.
    pub fn rows(&self, p: &MetricParams) -> Vec<Vec<Scalar>> {
        self.equations
            .iter()
            .map(|e| {
                let mut r: Vec<Scalar> = e.coeffs.iter().map(|&c| Scalar::int(c)).collect();
                r.push(laurent(p, e.constant));
                r
            })
            .collect()
    }
}

const fn eq(constant: &'static [Monomial], coeffs: [i64; 7]) -> ReferenceEquation {
    ReferenceEquation { constant, coeffs }
}

const Y4S: &[Monomial] = &[(1, 4, -1, 1)];
const MY4S: &[Monomial] = &[(-1, 4, -1, 1)];
const Y4S_Y2: &[Monomial] = &[(1, 4, -1, 1), (1, 2, 0, 1)];
const Y4S_MY2: &[Monomial] = &[(1, 4, -1, 1), (-1, 2, 0, 1)];

pub fn reference_systems() -> Vec<ReferenceSystem> {
    vec![
        ReferenceSystem {
            spinor: 3,
            equations: vec![
                eq(&[(1, 2, -1, 0), (1, 1, 0, 0), (-1, 2, 0, 1)], [-1, -1, 0, 0, 1, 0, 0]),
                eq(&[(-1, 2, -1, 0), (1, 1, 0, 0), (-1, 2, 0, 1)], [0, 0, -1, 1, -1, 0, 0]),
                eq(Y4S, [-1, 0, 0, -1, 0, 1, 0]),
                eq(Y4S, [0, -1, 1, 0, 0, 1, 0]),
                eq(MY4S, [1, 0, -1, 0, 0, 0, 1]),
                eq(MY4S, [0, 1, 0, 1, 0, 0, 1]),
                eq(&[(2, 1, 1, 0), (-1, 2, -1, 0), (-1, 2, -1, 1)], [0, 0, 0, 0, 1, 1, -1]),
            ],
        },
        ReferenceSystem {
            spinor: 4,
            equations: vec![
                eq(&[(1, 2, -1, 0), (-1, 1, 0, 0), (1, 2, 0, 1)], [1, 1, 0, 0, 1, 0, 0]),
                eq(&[(1, 2, -1, 0), (1, 1, 0, 0), (-1, 2, 0, 1)], [0, 0, -1, 1, 1, 0, 0]),
                eq(Y4S, [1, 0, 0, 1, 0, 1, 0]),
                eq(Y4S, [0, 1, -1, 0, 0, 1, 0]),
                eq(Y4S, [1, 0, -1, 0, 0, 0, -1]),
                eq(Y4S, [0, 1, 0, 1, 0, 0, -1]),
                eq(&[(-2, 1, 1, 0), (1, 2, -1, 0), (1, 2, -1, 1)], [0, 0, 0, 0, -1, -1, 1]),
            ],
        },
        ReferenceSystem {
            spinor: 5,
            equations: vec![
                eq(Y4S_Y2, [-1, 0, 0, 1, 0, 1, 0]),
                eq(Y4S_Y2, [0, -1, -1, 0, 0, 1, 0]),
                eq(Y4S_Y2, [-1, 0, -1, 0, 0, 0, -1]),
                eq(Y4S_Y2, [0, -1, 0, 1, 0, 0, -1]),
                eq(&[(1, 2, -1, 0), (-1, 1, 0, 0), (1, 2, 0, 1)], [0, 0, 1, -1, 1, 0, 0]),
                eq(&[(1, 2, -1, 0), (-1, 1, 0, 0), (1, 2, 0, 1)], [1, 1, 0, 0, 1, 0, 0]),
                eq(&[(1, 2, -1, 1), (-1, 2, -1, 0)], [0, 0, 0, 0, 1, -1, 1]),
            ],
        },
        ReferenceSystem {
            spinor: 6,
            equations: vec![
                eq(Y4S_MY2, [1, 0, 0, -1, 0, 1, 0]),
                eq(Y4S_MY2, [0, 1, 1, 0, 0, 1, 0]),
                eq(Y4S_MY2, [1, 0, 1, 0, 0, 0, -1]),
                eq(Y4S_MY2, [0, 1, 0, -1, 0, 0, -1]),
                eq(&[(-1, 2, -1, 0), (-1, 1, 0, 0), (1, 2, 0, 1)], [0, 0, 1, -1, -1, 0, 0]),
                eq(&[(-1, 2, -1, 0), (-1, 1, 0, 0), (1, 2, 0, 1)], [1, 1, 0, 0, -1, 0, 0]),
                eq(&[(1, 2, -1, 0), (-1, 2, -1, 1)], [0, 0, 0, 0, -1, 1, -1]),
            ],
        },
    ]
}

/// Coefficients of a 3-form on the seven-term Ansatz, or `None` if it has other terms.
pub fn seven_term_coordinates(t: &Form) -> Option<Vec<Scalar>> {
    let ansatz = super::AloffWallach::seven_term_ansatz();
    let coords: Vec<Scalar> = ansatz.iter().map(|f| f.inner(t).expect("3-forms")).collect();
    let mut rebuilt = Form::zero(7, 3);
    for (c, f) in coords.iter().zip(&ansatz) {
        rebuilt = rebuilt.add(&f.scale(c)).expect("3-forms");
    }
    (rebuilt == *t).then_some(coords)
}
