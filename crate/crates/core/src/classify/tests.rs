use super::*;
use crate::exactlin::{rat, ratio};
use crate::transform::{change_basis_multilinear, random_basis_change};

fn scrambled(n: usize, l: &ClassLabel, seed: u64) -> Algebra {
    let can = canonical(n, l).unwrap();
    change_basis_multilinear(&can, &random_basis_change(can.dim(), seed, 3)).unwrap()
}

fn exact_label(a: &Algebra) -> ClassLabel {
    let v = classify(a).unwrap();
    assert!(v.is_exact(), "not exact: {:?} {:?}", v.status, v.steps.iter().map(|s| &s.note).collect::<Vec<_>>());
    let w = v.witness.as_ref().unwrap();
    let l = v.label.unwrap();
    assert!(verify_isomorphism(a, &canonical(a.arity(), &l).unwrap(), w).unwrap());
    l
}

#[test]
fn canonical_tables_classify_to_themselves() {
    for n in 3..=4 {
        for l in ClassLabel::samples(n) {
            let a = canonical(n, &l).unwrap();
            assert_eq!(exact_label(&a), l, "n = {n}");
        }
    }
}

#[test]
fn scrambled_samples_round_trip() {
    for n in 3..=4 {
        for l in ClassLabel::samples(n) {
            for seed in 1..=3 {
                let a = scrambled(n, &l, seed * 7 + n as u64);
                assert_eq!(exact_label(&a), l, "n = {n}, seed {seed}");
            }
        }
    }
}

#[test]
fn c6_at_minus_quarter_is_c2() {
    let a = scrambled(3, &ClassLabel::C6 { alpha: ratio(-1, 4) }, 5);
    assert_eq!(exact_label(&a), ClassLabel::C2);
}

#[test]
fn c6_with_square_discriminant_is_c4() {
    // alpha + 1/4 = 9/4
    let a = scrambled(3, &ClassLabel::C6 { alpha: rat(2) }, 11);
    assert_eq!(exact_label(&a), ClassLabel::C4);
}

#[test]
fn c6_parameter_goes_to_squarefree_representative() {
    // 4 (2/3 + 1/4) = 11/3, squarefree part 33
    let a = scrambled(3, &ClassLabel::C6 { alpha: ratio(2, 3) }, 2);
    assert_eq!(exact_label(&a), ClassLabel::C6 { alpha: rat(8) });
}

#[test]
fn d5_parameters_are_separated() {
    let two = exact_label(&scrambled(3, &ClassLabel::D5 { beta: rat(2) }, 3));
    let three = exact_label(&scrambled(3, &ClassLabel::D5 { beta: rat(3) }, 3));
    assert_eq!(two, ClassLabel::D5 { beta: rat(2) });
    assert_eq!(three, ClassLabel::D5 { beta: rat(3) });
}

#[test]
fn d7_goes_to_cube_free_representative() {
    let l = ClassLabel::D7 {
        s: rat(16),
        t: rat(1),
        u: rat(3),
    };
    let got = exact_label(&scrambled(3, &l, 9));
    let ClassLabel::D7 { s, t, u } = &got else {
        panic!("{got}");
    };
    assert_eq!(*s, rat(2));
    assert!(matches!(
        crate::catalog::d7_equivalent((s, t, u), (&rat(16), &rat(1), &rat(3))),
        Ok(crate::catalog::D7Equivalence::Equivalent(_))
    ));
}

#[test]
fn lemma_d_at_arity_three() {
    let a = scrambled(3, &ClassLabel::LemD { r: 4 }, 4);
    assert_eq!(exact_label(&a), ClassLabel::LemD { r: 4 });
}

#[test]
fn permuted_basis_gives_same_label() {
    for l in ClassLabel::samples(3) {
        let can = canonical(3, &l).unwrap();
        let d = can.dim();
        let mut perm = Matrix::zeros(d, d);
        for i in 0..d {
            perm.set((i + 1) % d, i, rat(1));
        }
        let a = change_basis_multilinear(&can, &TransitionMatrix::new(perm).unwrap()).unwrap();
        assert_eq!(exact_label(&a), l);
    }
}

#[test]
fn samples_are_mutually_non_isomorphic() {
    // distinct samples classify to distinct labels, so no two are identified
    let labels = ClassLabel::samples(3);
    let mut got: Vec<ClassLabel> = labels.iter().map(|l| exact_label(&canonical(3, l).unwrap())).collect();
    got.sort();
    got.dedup();
    assert_eq!(got.len(), labels.len());
}

#[test]
fn irrational_normalization_is_family_only() {
    // traceless S with S^2 = 2: needs sqrt(2)
    let mut a = Algebra::abelian(3, 4).unwrap();
    a.set_bracket(&[1, 2, 3], vec![rat(2), rat(0), rat(0), rat(0)]).unwrap();
    a.set_bracket(&[0, 2, 3], vec![rat(0), rat(1), rat(0), rat(0)]).unwrap();
    let v = classify(&a).unwrap();
    assert_eq!(v.status, Status::FamilyOnly);
    assert_eq!(v.label, Some(ClassLabel::LemC1));
}

#[test]
fn arity_two_is_rejected() {
    let a = Algebra::abelian(2, 3).unwrap();
    assert!(matches!(classify(&a), Err(Error::UnsupportedArity(2))));
}

#[test]
fn wrong_dimension_is_rejected() {
    let a = Algebra::abelian(3, 6).unwrap();
    assert!(matches!(classify(&a), Err(Error::DimensionMismatch(_))));
}

#[test]
fn many_matches_single() {
    let algs: Vec<Algebra> = ClassLabel::samples(3).iter().map(|l| scrambled(3, l, 21)).collect();
    let many = classify_many(&algs);
    for (a, v) in algs.iter().zip(many) {
        assert_eq!(v.unwrap().label, classify(a).unwrap().label);
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn orbit_classifies_exactly(i in 0usize..64, seed in 0u64..100_000) {
            let labels = ClassLabel::samples(3);
            let l = &labels[i % labels.len()];
            let a = scrambled(3, l, seed);
            let v = classify(&a).unwrap();
            prop_assert!(v.is_exact());
            prop_assert_eq!(v.label.as_ref(), Some(l));
            prop_assert!(verify_isomorphism(&a, &canonical(3, l).unwrap(), v.witness.as_ref().unwrap()).unwrap());
        }

        #[test]
        fn signature_is_basis_invariant(i in 0usize..64, seed in 0u64..100_000) {
            let labels = ClassLabel::theorem_samples(3);
            let l = &labels[i % labels.len()];
            let can = canonical(3, l).unwrap();
            prop_assert_eq!(invariant_signature(&scrambled(3, l, seed)).unwrap(), invariant_signature(&can).unwrap());
        }
    }
}
