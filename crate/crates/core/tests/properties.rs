use proptest::prelude::*;

use quatmodp::{
    dim_pi, pi_xi, reduce_pi, reduce_r, rho_xi, AdmissiblePair, CharGroup, ExtKind, FieldParams,
    RepMultiset, RootOfUnity, TameChar,
};

fn field() -> impl Strategy<Value = FieldParams> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]).prop_map(|q| FieldParams::from_q(q).unwrap())
}

fn root(max_den: u64) -> impl Strategy<Value = RootOfUnity> {
    (1..=max_den).prop_flat_map(|d| (0..d).prop_map(move |k| RootOfUnity::from_exponent(k, d)))
}

/// An admissible pair, rejecting the data that is not admissible.
fn pair() -> impl Strategy<Value = AdmissiblePair> {
    (field(), 0u32..7, 0u64..80, root(12)).prop_filter_map("admissible", |(k, n, exp, w)| {
        let ext = if n % 2 == 0 { ExtKind::Unramified } else { ExtKind::RamifiedTame };
        AdmissiblePair::from_level(k, ext, n, exp, w).ok()
    })
}

fn fmult(k: FieldParams) -> impl Strategy<Value = TameChar> {
    (0..k.f_order(), root(6)).prop_map(move |(c, w)| TameChar::zero(k, CharGroup::Fmult, c, w, 0))
}

proptest! {
    #[test]
    fn reduction_preserves_dimension(p in pair()) {
        prop_assert_eq!(reduce_pi(&p, None).unwrap().total_dimension(), dim_pi(&p));
        prop_assert_eq!(reduce_r(&p, None).unwrap().total_dimension(), 2);
    }

    #[test]
    fn twisting_commutes_with_reduction((p, phi) in pair().prop_flat_map(|p| {
        let k = p.base();
        (Just(p), fmult(k))
    })) {
        let phi_bar = phi.reduce_char();
        let direct = reduce_pi(&p, Some(&phi)).unwrap();
        let after = reduce_pi(&p, None).unwrap().twisted(&phi_bar).unwrap();
        prop_assert_eq!(direct, after);
        let direct = reduce_r(&p, Some(&phi)).unwrap();
        let after = reduce_r(&p, None).unwrap().twisted(&phi_bar).unwrap();
        prop_assert_eq!(direct, after);
    }

    #[test]
    fn multisets_round_trip_through_json(p in pair()) {
        for ms in [reduce_pi(&p, None).unwrap(), reduce_r(&p, None).unwrap()] {
            let s = serde_json::to_string(&ms).unwrap();
            let back: RepMultiset = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(&back, &ms);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
    }

    #[test]
    fn reduction_has_one_central_character(p in pair()) {
        let ms = reduce_pi(&p, None).unwrap();
        let want = p.chi().reduce_char().restrict_to_f().unwrap();
        for l in ms.labels() {
            prop_assert_eq!(l.central_character(), want.clone());
        }
    }

    #[test]
    fn level_zero_pieces_have_dimension_two(k in field(), a in 0u64..80, w in root(8)) {
        let xi = TameChar::modp(k, CharGroup::Eunram, a % k.e_order(), w.reduce_mod_p(k.p()));
        prop_assert_eq!(pi_xi(&xi).unwrap().total_dimension(), 2);
        prop_assert_eq!(rho_xi(&xi).unwrap().total_dimension(), 2);
        let regular = xi.is_regular(ExtKind::Unramified).unwrap();
        prop_assert_eq!(pi_xi(&xi).unwrap().irreducible().is_some(), regular);
    }

    #[test]
    fn roots_reduce_to_prime_to_p_part(w in root(60), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let r = w.reduce_mod_p(p);
        prop_assert!(r.is_prime_to(p));
        prop_assert_eq!(r.reduce_mod_p(p), r.clone());
        prop_assert_eq!(w.pow(2).reduce_mod_p(p), r.pow(2));
    }
}
