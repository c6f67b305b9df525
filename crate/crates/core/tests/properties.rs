//! Randomized invariants across the crate.

use proptest::prelude::*;

use chainsurg::chainstring::{
    canonical_form, cyclic_dual, equivalent, i_invariant, linear_dual, reverse, rotate, ChainString,
};
use chainsurg::classifier::{
    braid_word, burau, burau_trace_check, classify_surgery, mat_inv, mat_mul, normalize_with_certificate,
    square_order_obstruction, EllipticWord, MonodromyClass, Status, S, S_INV, T, T_INV,
};
use chainsurg::contfrac::{hj_eval, hj_expand, monodromy_matrix, torsion_order, Fraction, Parity, Sign};
use chainsurg::embedsearch::{find_embedding, SearchOutcome, SearchQuery};
use chainsurg::families::{assemble, in_s1, in_s2, member, FamilyParams, FamilyTag, MembershipMode};
use chainsurg::lattice::{
    all_contractions, apply_signed_permutation, classify_subset, expand, fixtures, stats, SubsetKind,
};

fn entries(max_len: usize, max_entry: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2..=max_entry, 1..=max_len)
}

fn hyperbolic(max_len: usize, max_entry: i64) -> impl Strategy<Value = ChainString> {
    entries(max_len, max_entry)
        .prop_filter("needs an entry >= 3", |v| v.iter().any(|&x| x >= 3))
        .prop_map(|v| ChainString::new(v).unwrap())
}

/// A family member built from random template parameters, then rotated and
/// possibly reversed.
fn family_member() -> impl Strategy<Value = (FamilyTag, ChainString)> {
    let tags = prop::sample::select(vec![
        FamilyTag::S1a,
        FamilyTag::S1b,
        FamilyTag::S1c,
        FamilyTag::S1d,
        FamilyTag::S2a,
        FamilyTag::S2b,
        FamilyTag::S2e,
    ]);
    (tags, entries(4, 5), 0i64..3, any::<prop::sample::Index>(), any::<bool>()).prop_filter_map(
        "k + l below the template minimum",
        |(tag, b, x, rot, rev)| {
            let c = linear_dual(&b).ok()?;
            if matches!(tag, FamilyTag::S1a | FamilyTag::S1d | FamilyTag::S2e) && b.len() + c.len() < 3 {
                return None;
            }
            let params = FamilyParams {
                k: Some(b.len()),
                l: Some(c.len()),
                x: (tag == FamilyTag::S2b).then_some(x),
                b: Some(b),
                c: Some(c),
                ..Default::default()
            };
            let mut v = assemble(tag, &params).ok()?;
            if rev {
                v.reverse();
            }
            let n = v.len();
            v.rotate_left(rot.index(n));
            Some((tag, ChainString::new(v).ok()?))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn canonical_form_is_an_orbit_invariant(v in entries(10, 9), k in 0usize..10) {
        let a = ChainString::new(v).unwrap();
        let c = canonical_form(&a);
        prop_assert_eq!(&canonical_form(&rotate(&a, k % a.len())), &c);
        prop_assert_eq!(&canonical_form(&reverse(&a)), &c);
        prop_assert!(equivalent(&a, &c));
    }

    #[test]
    fn linear_dual_is_an_involution_with_the_fraction_law(b in entries(10, 9)) {
        let c = linear_dual(&b).unwrap();
        prop_assert_eq!(linear_dual(&c).unwrap(), b.clone());
        let Fraction { p, q } = hj_eval(&b).unwrap();
        prop_assert_eq!(hj_eval(&c).unwrap(), Fraction::reduced(p, p - q));
    }

    #[test]
    fn cyclic_dual_involution_and_antisymmetry(a in hyperbolic(10, 9)) {
        let d = cyclic_dual(&a).unwrap();
        prop_assert_eq!(cyclic_dual(&d).unwrap(), a.canonical());
        prop_assert_eq!(i_invariant(&a) + i_invariant(&d), 0);
        for sign in [Sign::Plus, Sign::Minus] {
            prop_assert_eq!(torsion_order(&a, sign).unwrap(), torsion_order(&d, sign).unwrap());
        }
    }

    #[test]
    fn expansion_inverts_evaluation(b in entries(8, 9)) {
        prop_assert_eq!(hj_expand(hj_eval(&b).unwrap()).unwrap(), b);
    }

    #[test]
    fn reversal_law(b in entries(8, 9)) {
        let f = hj_eval(&b).unwrap();
        let rev: Vec<i64> = b.iter().rev().copied().collect();
        let g = hj_eval(&rev).unwrap();
        prop_assert_eq!(f.p, g.p);
        prop_assert_eq!((f.q * g.q).rem_euclid(f.p), 1 % f.p);
    }

    #[test]
    fn torsion_orders_differ_by_four(a in hyperbolic(8, 9)) {
        let plus = torsion_order(&a, Sign::Plus).unwrap();
        let minus = torsion_order(&a, Sign::Minus).unwrap();
        prop_assert_eq!(minus - plus, 4);
    }

    #[test]
    fn witnesses_reassemble_and_families_are_disjoint((tag, a) in family_member()) {
        for mode in [MembershipMode::Strict, MembershipMode::Relaxed] {
            let ws = member(&a, mode);
            for w in &ws {
                prop_assert_eq!(&w.reassemble().unwrap(), &a);
            }
            prop_assert!(!(in_s1(&a, mode) && in_s2(&a, mode)));
        }
        prop_assert!(member(&a, MembershipMode::Relaxed).iter().any(|w| w.tag == tag));
        prop_assert!((-4..=0).contains(&i_invariant(&a)));
    }

    #[test]
    fn classification_respects_equivalence(a in hyperbolic(7, 8), k in 0usize..7, t in -3i64..=3) {
        let b = reverse(&rotate(&a, k % a.len()));
        let va = classify_surgery(&a, t, MembershipMode::Strict).unwrap();
        let vb = classify_surgery(&b, t, MembershipMode::Strict).unwrap();
        prop_assert_eq!(va.status, vb.status);
    }

    #[test]
    fn mirror_verdicts_agree(a in hyperbolic(7, 8), t in -3i64..=3) {
        let d = cyclic_dual(&a).unwrap();
        let x = classify_surgery(&a, t, MembershipMode::Strict).unwrap().status;
        let y = classify_surgery(&d, -t, MembershipMode::Strict).unwrap().status;
        if x != Status::Unknown && y != Status::Unknown {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn never_bounds_at_both_zero_and_minus_one(a in hyperbolic(8, 9)) {
        let zero = classify_surgery(&a, 0, MembershipMode::Relaxed).unwrap().status;
        let minus = classify_surgery(&a, -1, MembershipMode::Relaxed).unwrap().status;
        prop_assert!(!(zero == Status::Bounds && minus == Status::Bounds));
    }

    #[test]
    fn bounding_verdicts_have_square_order(a in hyperbolic(8, 9), t in -3i64..=3) {
        let v = classify_surgery(&a, t, MembershipMode::Strict).unwrap();
        if v.status == Status::Bounds && a.len() > 1 {
            prop_assert!(square_order_obstruction(&a, Parity::of(t)).unwrap().is_none());
        }
    }

    #[test]
    fn burau_traces_match(v in entries(8, 9), t in -3i64..=3) {
        let a = ChainString::new(v).unwrap();
        prop_assert!(burau_trace_check(&a, t).unwrap().matches);
        let m = burau(&braid_word(&a, t).letters);
        let tr = monodromy_matrix(&a).unwrap().trace();
        prop_assert_eq!((m[0][0] + m[1][1]).abs(), tr.abs());
    }

    #[test]
    fn normal_form_is_a_conjugacy_invariant(
        class_ix in 0usize..12,
        a in hyperbolic(5, 6),
        word in prop::collection::vec(0usize..4, 0..10),
    ) {
        let class = match class_ix {
            0..=5 => MonodromyClass::Elliptic { word: EllipticWord::ALL[class_ix] },
            6..=8 => MonodromyClass::Parabolic { sign: Sign::Minus, n: class_ix as i64 - 7 },
            9 => MonodromyClass::Parabolic { sign: Sign::Plus, n: 2 },
            10 => MonodromyClass::Hyperbolic { sign: Sign::Plus, a: a.canonical() },
            _ => MonodromyClass::Hyperbolic { sign: Sign::Minus, a: a.canonical() },
        };
        let gens = [T, T_INV, S, S_INV];
        let x = word.iter().fold([[1, 0], [0, 1]], |acc, &g| mat_mul(&acc, &gens[g]));
        let m = mat_mul(&mat_mul(&x, &class.matrix().unwrap()), &mat_inv(&x));
        let nf = normalize_with_certificate(&m).unwrap();
        prop_assert_eq!(nf.class, class);
        prop_assert_eq!(mat_mul(&mat_mul(&nf.conjugator, &m), &mat_inv(&nf.conjugator)), nf.representative);
    }

    #[test]
    fn subset_kind_is_aut_invariant(ix in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = fixtures::all(3, 2);
        let f = &all[ix.index(all.len())];
        let s = classify_subset(f.vectors.clone()).unwrap();
        let d = s.dim();
        // a signed permutation from the seed
        let mut perm: Vec<usize> = (0..d).collect();
        let mut r = seed;
        for i in (1..d).rev() {
            r = r.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (r >> 33) as usize % (i + 1));
        }
        let signs: Vec<i64> = (0..d).map(|j| if (seed >> (j % 64)) & 1 == 1 { -1 } else { 1 }).collect();
        let t = apply_signed_permutation(&s, &perm, &signs).unwrap();
        prop_assert_eq!(t.kind, s.kind);
        prop_assert_eq!(&t.string, &s.string);
        prop_assert_eq!(t.gram(), s.gram());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn found_witnesses_revalidate(v in entries(5, 6), kind_ix in 0usize..3) {
        let kind = [SubsetKind::Standard, SubsetKind::NegativeCyclic, SubsetKind::PositiveCyclic][kind_ix];
        prop_assume!(!(kind.is_cyclic() && v.len() < 2));
        let a = ChainString::new(v).unwrap();
        let res = find_embedding(&SearchQuery::new(a.clone(), kind)).unwrap();
        if let SearchOutcome::Found(w) = res.outcome {
            let again = classify_subset(w.vectors.clone()).unwrap();
            prop_assert_eq!(again.kind, kind);
            prop_assert_eq!(again.string, a.entries().to_vec());
        }
    }
}

#[test]
fn contractions_of_fixtures_are_invertible() {
    for f in fixtures::all(4, 3) {
        let s = classify_subset(f.vectors).unwrap();
        for c in all_contractions(&s) {
            let (a, b) = (stats(&s), stats(&c.subset));
            assert_eq!(c.subset.kind, s.kind, "{}", f.name);
            assert_eq!(c.subset.i_invariant(), s.i_invariant(), "{}", f.name);
            assert_eq!(b.p(3) + 1, a.p(3), "{}", f.name);
            assert_eq!(expand(&c.subset, &c.record).unwrap().gram(), s.gram(), "{}", f.name);
        }
    }
}
