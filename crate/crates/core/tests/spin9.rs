use spintorsion::lie::{bracket_closure, ClosureReport};
use spintorsion::matrix::Matrix;
use spintorsion::sample::Sampler;
use spintorsion::scalar::Scalar;
use spintorsion::spin9::*;

fn elementary(i: usize, j: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(16, 16);
    m[(i - 1, j - 1)] = Scalar::one();
    m[(j - 1, i - 1)] = -Scalar::one();
    m
}

#[test]
fn transcription() {
    let r = transcription_report().unwrap();
    assert_eq!((r.table1, r.table2), (56, 28));
    assert!(r.table1_two_terms && r.table2_pattern);
    assert_eq!(equations().unwrap().len(), 84);
}

#[test]
fn basis_is_compact_irreducible_spin9() {
    let b = spin9_basis().unwrap();
    assert_eq!(b.dim(), 36);
    assert!(b.is_closed());
    let r = ClosureReport::analyse(b).unwrap();
    assert!(r.compact && r.semisimple && r.irreducible);
    assert_eq!(r.rank, 4);
}

#[test]
fn random_brackets_stay_inside() {
    let b = spin9_basis().unwrap();
    let mut g = Sampler::new(9);
    for _ in 0..3 {
        let x = b.combination(&g.vector(36));
        let y = b.combination(&g.vector(36));
        let z = x.commutator(&y);
        assert!(b.contains(&z));
        assert!(membership(&z).unwrap().member);
    }
}

#[test]
fn membership_examples() {
    let b = spin9_basis().unwrap();
    for m in b.elements().iter().take(5) {
        assert!(membership(m).unwrap().member);
    }
    assert!(membership(&Matrix::zeros(16, 16)).unwrap().member);
    let r = membership(&elementary(1, 9)).unwrap();
    assert!(!r.member);
    assert_eq!(r.violated[0], "table1:1: 1,9 = 8,16");
    assert!(membership(&Matrix::identity(16)).is_err());
    assert!(membership(&Matrix::zeros(8, 8)).is_err());
}

#[test]
fn prolongation_and_stages() {
    let r = prolongation_vanishes().unwrap();
    assert_eq!(r.direct_dim, 0);
    let dims: Vec<usize> = r.stages.iter().map(|s| s.dim).collect();
    assert_eq!(dims, vec![112, 91, 0]);
    assert!(r.stages[0].mixed_eight_vanish);
    assert!(!r.stages[0].e8_contraction_vanishes);
    assert!(r.stages[1].e8_contraction_vanishes);
    assert!(r.consistent);
}

#[test]
fn two_form_generates_spin9() {
    let g = generate_from_2form().unwrap();
    let b = ClosureReport::analyse(spin9_basis().unwrap()).unwrap();
    assert_eq!(g.dim, 36);
    assert!(g.compact && g.irreducible);
    assert_eq!(g.killing_signature, b.killing_signature);
    assert_eq!(spintorsion::lie::joint_kernel(16, g.basis.elements()).len(), 0);
}

#[test]
fn no_invariant_two_forms() {
    assert!(commutant(&spin9_basis().unwrap()).unwrap().is_empty());
    // a proper subalgebra does have invariant 2-forms
    let u1 = bracket_closure(&[elementary(1, 2)]).unwrap();
    assert!(!commutant(&u1).unwrap().is_empty());
}

#[test]
fn check_all_passes() {
    let c = check_all().unwrap();
    assert!(c.pass);
    assert_eq!(fixture_checksum().len(), 64);
}
