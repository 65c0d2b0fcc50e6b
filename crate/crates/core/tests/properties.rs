use affine_gch::afweight::{act, affine_reflect, orbit_equiv, to_dominant_affine};
use affine_gch::charring::{apply_word, demazure_op, saturate, symmetrize};
use affine_gch::demazure::{thin_gch, weyl_gch};
use affine_gch::oracle::freudenthal;
use affine_gch::{AffineWeight, Engine, Family, GradedCharacter, Int, IrrepSum, RootSystem, Weight};
use proptest::prelude::*;

fn rs(label: &str, rank: usize) -> RootSystem {
    RootSystem::parse(label, rank).unwrap()
}

const SMALL: [(&str, usize); 4] = [("A", 1), ("A", 2), ("C", 2), ("G", 2)];
const UP_TO_FOUR: [(&str, usize); 11] =
    [("A", 1), ("A", 2), ("B", 2), ("C", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("A", 4)];

fn small(t: usize) -> RootSystem {
    rs(SMALL[t].0, SMALL[t].1)
}

/// An index into `SMALL` with a weight of matching rank.
fn typed_weight(lo: i32, hi: i32) -> impl Strategy<Value = (usize, Weight)> {
    (0..SMALL.len()).prop_flat_map(move |t| {
        let w = proptest::collection::vec(lo..=hi, SMALL[t].1).prop_map(|c| Weight::new(&c));
        (Just(t), w)
    })
}

fn weight_sum(f: &GradedCharacter) -> Int {
    let mut s = Int::ZERO;
    for (_, _, c) in f.terms() {
        s += c;
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn affine_reflections_are_involutions(
        (t, w) in typed_weight(-6, 6),
        level in 0i64..5,
        d in -5i64..5,
        i in 0usize..3,
    ) {
        let r = small(t);
        let i = i % (r.rank + 1);
        let mu = AffineWeight::new(w, level, d);
        prop_assert_eq!(affine_reflect(&r, i, &affine_reflect(&r, i, &mu)), mu);
    }

    #[test]
    fn dominant_representative_recovers_weight((t, w) in typed_weight(-6, 6), level in 1i64..4) {
        let r = small(t);
        let mu = AffineWeight::new(w, level, 0);
        let (dom, word) = to_dominant_affine(&r, &mu).unwrap();
        prop_assert!(dom.is_dominant(&r));
        prop_assert_eq!(act(&r, &word, &dom), mu);
    }

    #[test]
    fn demazure_operators_are_idempotent((t, w) in typed_weight(-3, 3), level in 0i64..3, i in 0usize..3) {
        let r = small(t);
        let i = i % (r.rank + 1);
        let f = GradedCharacter::from_affine(&AffineWeight::new(w, level, 0));
        let once = demazure_op(&r, i, &f).unwrap();
        prop_assert_eq!(demazure_op(&r, i, &once).unwrap(), once);
    }

    #[test]
    fn symmetrizing_dominant_weights_gives_irreducibles((t, w) in typed_weight(0, 3)) {
        let r = small(t);
        let f = GradedCharacter::monomial(w, 0, 0);
        prop_assert_eq!(symmetrize(&r, &f).unwrap(), r.finite_irrep_char(&w).unwrap());
    }

    #[test]
    fn irrep_decomposition_round_trips((t, w) in typed_weight(0, 3), k in 1i64..3) {
        let r = small(t);
        let f = weyl_gch(&r, &w, k).unwrap().with_level(0);
        let s = IrrepSum::from_character(&r, &f).unwrap();
        prop_assert!(s.is_nonnegative());
        prop_assert_eq!(s.to_character(&r, 0).unwrap(), f);
        let fast = Engine::new(&r).weyl_irreps(&w, k).unwrap();
        prop_assert_eq!(&fast.coeffs, &s.coeffs);
    }

    #[test]
    fn weyl_expansions_reconstruct((t, w) in typed_weight(0, 3), k in 1i64..3) {
        let r = small(t);
        let eng = Engine::new(&r);
        let f = weyl_gch(&r, &w, k).unwrap().with_level(0);
        let e = eng.expand_symmetric(&f, Family::Weyl, k + 1, None).unwrap();
        prop_assert!(e.is_nonnegative());
        prop_assert_eq!(eng.reconstruct(&e).unwrap(), f);
    }

    #[test]
    fn thin_expansions_reconstruct((t, w) in typed_weight(-2, 2), k in 1i64..3) {
        let r = small(t);
        let eng = Engine::new(&r);
        let f = thin_gch(&r, &w, k).unwrap();
        let n = f.max_exponent().unwrap_or(0);
        let e = eng.expand_thin(&f, k + 1, n).unwrap();
        prop_assert!(e.is_nonnegative());
        let back = eng.reconstruct(&e).unwrap();
        prop_assert_eq!(back.sorted_terms(), f.with_level(0).truncate(n).sorted_terms());
    }

    #[test]
    fn thin_characters_lie_inside_integrable((t, w) in typed_weight(-2, 2), k in 1i64..3) {
        let r = small(t);
        // D^(k)_λ ⊂ L(Λ), so every coefficient is bounded by the integrable one.
        let f = thin_gch(&r, &w, k).unwrap();
        let (dom, _) = to_dominant_affine(&r, &AffineWeight::new(w, k, 0)).unwrap();
        let depth = dom.delta - f.min_exponent().unwrap_or(0);
        let big = saturate(&r, &dom, depth).unwrap();
        for (mu, e, c) in f.terms() {
            prop_assert!(*c <= big.coeff(&mu, dom.delta - e), "{} q^{}", mu, e);
        }
    }

    #[test]
    fn transpose_reciprocity(lam in 0i32..3, mu in 0i32..4) {
        // [W^(1)_μ : V_λ]_q agrees with the 𝕎^(1)-coefficients of the projective cover.
        let r = rs("A", 1);
        let eng = Engine::new(&r);
        let (l, m) = (Weight::new(&[2 * lam]), Weight::new(&[mu]));
        if (l.at(1) - m.at(1)) % 2 == 0 {
            prop_assert!(eng.reciprocity_check(&l, &m, 1, 6).unwrap());
        }
    }
}

#[test]
fn weyl_dimension_matches_character_size() {
    for (t, n) in UP_TO_FOUR {
        let r = rs(t, n);
        let mut boxes = vec![r.zero(), r.rho()];
        boxes.extend((1..=n).map(|i| r.fundamental(i)));
        for lam in boxes {
            let ch = r.finite_irrep_char(&lam).unwrap();
            assert_eq!(weight_sum(&ch), Int::from(r.weyl_dimension(&lam).unwrap()), "{t}{n} {lam}");
        }
    }
}

#[test]
fn freudenthal_agrees_with_demazure() {
    for (t, n) in UP_TO_FOUR {
        let r = rs(t, n);
        let mut lams: Vec<Weight> = (1..=n).map(|i| r.fundamental(i)).collect();
        lams.push(r.rho());
        lams.push(r.fundamental(1).scaled_add(2, &r.fundamental(n)));
        for lam in lams {
            let f = freudenthal(&r, &lam).unwrap();
            let d = r.finite_irrep_char(&lam).unwrap().slice(0);
            assert_eq!(f, d, "{t}{n} {lam}");
        }
    }
}

#[test]
fn longest_word_has_length_of_positive_roots() {
    for (t, n) in UP_TO_FOUR {
        let r = rs(t, n);
        assert_eq!(r.longest_word().len(), r.positive_roots.len(), "{t}{n}");
        let f = GradedCharacter::monomial(r.rho(), 0, 0);
        let ch = apply_word(&r, r.longest_word(), &f).unwrap();
        assert_eq!(ch, r.finite_irrep_char(&r.rho()).unwrap());
    }
}

#[test]
fn saturation_of_basic_sl2_module() {
    // L(Λ_0) for sl(2) at depth ≤ 2: e^0(1 + q + 2q²) + (e^{±2})(q + q²).
    let r = rs("A", 1);
    let f = saturate(&r, &AffineWeight::new(r.zero(), 1, 0), 2).unwrap();
    let w = |c| Weight::new(&[c]);
    assert_eq!(f.coeff(&w(0), 0), Int::from(1i64));
    assert_eq!(f.coeff(&w(0), 1), Int::from(1i64));
    assert_eq!(f.coeff(&w(0), 2), Int::from(2i64));
    assert_eq!(f.coeff(&w(2), 1), Int::from(1i64));
    assert_eq!(f.coeff(&w(-2), 2), Int::from(1i64));
    assert_eq!(f.coeff(&w(4), 2), Int::ZERO);
}

#[test]
fn sl2_orbit_shifts() {
    let r = rs("A", 1);
    let z = Weight::new(&[0]);
    assert_eq!(orbit_equiv(&r, &z, &Weight::new(&[4]), 1).unwrap(), Some(4));
    assert_eq!(orbit_equiv(&r, &z, &Weight::new(&[6]), 1).unwrap(), Some(9));
    assert_eq!(orbit_equiv(&r, &z, &Weight::new(&[-4]), 1).unwrap(), Some(4));
    assert_eq!(orbit_equiv(&r, &z, &Weight::new(&[3]), 1).unwrap(), None);
}
