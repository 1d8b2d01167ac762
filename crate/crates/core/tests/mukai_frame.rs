use kummer_core::mukai::*;
use kummer_field::{RationalFunction as Rf, Var};

fn params() -> Vec<(Rf, Rf)> {
    vec![(Rf::s(), Rf::t()), (Rf::int(2), Rf::int(3))]
}

#[test]
fn frame_matches_template() {
    for (s, t) in params() {
        let frame = frame_and_alphas(&s, &t).unwrap();
        eprintln!("alpha = {:?}", frame.alpha.0.iter().map(|a| a.to_string()).collect::<Vec<_>>());
        assert!(frame.template_ratio().is_some());
        assert!(frame.sends_diagonal_to_basis().unwrap());
        assert!(!smoothness_disc(&frame.alpha).is_zero());
        assert!(verify_cremona_preserves_quadric(&frame.alpha).unwrap());
        assert!(cremona_is_involution(&frame.alpha).unwrap());
        assert_eq!(pij_swap_failures(&frame).unwrap(), vec![]);
        assert_eq!(line_swap_failures(&frame).unwrap(), Vec::<usize>::new());
        for k in 0..4 {
            assert!(cremona(&frame.alpha, &frame.point(k, k).unwrap()).is_err());
        }
        for k in 1..=4 {
            let img = conic_image(&frame.alpha, k).unwrap();
            assert!(img.eq_projective(&frame.point(k - 1, k - 1).unwrap()), "conic {k} -> {img}");
        }
    }
}

#[test]
fn alphas_at_two_three() {
    let frame = frame_and_alphas(&Rf::int(2), &Rf::int(3)).unwrap();
    assert_eq!(frame.alpha.0, [Rf::int(2), Rf::int(6), Rf::int(1)]);
    assert_eq!(smoothness_disc(&frame.alpha), Rf::one());
}

#[test]
fn determinant_vanishes_on_diagonal() {
    let d = non_coplanar_det(&Rf::s(), &Rf::t()).unwrap();
    assert!(!d.is_zero());
    assert!(d.subst(Var::T, &Rf::s()).unwrap().is_zero());
    assert!(matches!(frame_and_alphas(&Rf::s(), &Rf::s()), Err(kummer_core::error::MukaiError::Coplanar)));
}

#[test]
fn perturbed_quadric_not_preserved() {
    let a = AlphaTriple::new([Rf::var(Var::A[0]), Rf::var(Var::A[1]), Rf::var(Var::A[2])]).unwrap();
    assert!(verify_cremona_preserves_quadric(&a).unwrap());
    let bump = QuadricForm::from_monomials(&[((0, 0), Rf::one())]);
    assert!(!preserves_quadric(&a, &QuadricForm::template(&a).add(&bump)).unwrap());
    let degenerate = AlphaTriple::ints([1, 1, 4]).unwrap();
    assert!(verify_cremona_preserves_quadric(&degenerate).unwrap());
}
