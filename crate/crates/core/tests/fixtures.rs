use sigma3::basis::enumerate_kp_basis;
use sigma3::fixtures::golden;
use sigma3::sigma::SigmaElement;

#[test]
fn kp_basis_listing_matches_fixture() {
    for fx in &golden().kp_basis {
        let got: Vec<String> = enumerate_kp_basis(fx.degree).iter().map(ToString::to_string).collect();
        assert_eq!(got, fx.members, "degree {}", fx.degree);
    }
}

#[test]
fn leading_fixture_words_are_valid() {
    for fx in &golden().leading {
        assert!((1..=4).contains(&fx.word.len()), "{}", fx.id);
        assert!(fx.word.iter().all(|&i| (1..=3).contains(&i)), "{}", fx.id);
    }
}

#[test]
fn canonical_text_round_trips() {
    let samples = [
        sigma3::sigma::zeta_of(&[1, 1]),
        sigma3::sigma::zeta_of(&[1, 2, 3]),
        sigma3::sigma::v(0),
        sigma3::sigma::minor_of(&[1, 2, 3], &[1, 2, 3]),
        SigmaElement::sigma(),
        SigmaElement::zero(),
    ];
    for x in samples {
        let text = x.canonical();
        assert_eq!(SigmaElement::parse(&text).unwrap(), x, "{text}");
    }
}
