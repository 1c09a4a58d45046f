use lingroup::analysis::cocycle::{cover_for, tau_on};
use lingroup::graph::linear::{apply, step};
use lingroup::graph::WindowUniverse;
use lingroup::group::signature::{extend, offsets};
use lingroup::group::{equal, growth, restrict, GroupWord, Perm, Restriction, StabilizerChain};
use lingroup::oracle::{tree_act, tree_perm};
use lingroup::symbolic::builtin::{galpha, ghat, grigorchuk, BUILTIN_NAMES};
use lingroup::symbolic::segment::first_violation;
use lingroup::symbolic::{builtin, random_markov_segment, AlphaEntry, AlphaSequence, Alphabet, SubstitutionSystem, SystemConfig};
use lingroup::Exec;
use proptest::prelude::*;

fn alpha_entry() -> impl Strategy<Value = AlphaEntry> {
    prop_oneof![
        Just(AlphaEntry::Sigma),
        "[xy]{1,3}".prop_map(|w| AlphaEntry::word(&w).unwrap()),
    ]
}

fn alpha() -> impl Strategy<Value = AlphaSequence> {
    (prop::collection::vec(alpha_entry(), 0..3), prop::collection::vec(alpha_entry(), 1..3))
        .prop_map(|(p, t)| AlphaSequence::new(p, t).unwrap())
}

fn system() -> impl Strategy<Value = SubstitutionSystem> {
    prop_oneof![
        (0..BUILTIN_NAMES.len()).prop_map(|i| builtin(BUILTIN_NAMES[i], Some(&AlphaSequence::all_sigma())).unwrap()),
        alpha().prop_map(|a| galpha(&a).unwrap()),
    ]
}

fn word(letters: u8, max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec(0..letters, 0..=max).prop_map(GroupWord::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_segments_are_admissible(s in system()) {
        for n in 0..=8 {
            for seg in s.generation(n).unwrap().iter() {
                prop_assert!(first_violation(seg.sets()).is_none());
            }
        }
    }

    #[test]
    fn rules_reparse(s in system()) {
        for block in s.blocks() {
            for f in &block.formulas {
                let text = s.formula_text(f);
                prop_assert_eq!(&SubstitutionSystem::parse_formula(s.names(), &text).unwrap(), f);
            }
        }
    }

    #[test]
    fn config_round_trip(a in alpha()) {
        let s = galpha(&a).unwrap();
        let back = SystemConfig::from_toml(&SystemConfig::of(&s).to_toml().unwrap()).unwrap().build().unwrap();
        prop_assert_eq!(back.generation(6).unwrap(), s.generation(6).unwrap());
    }

    #[test]
    fn generators_are_involutions_on_windows(s in system(), r in 1usize..5) {
        let u = WindowUniverse::build(&s, r).unwrap();
        for w in u.windows() {
            for g in s.alphabet().symbols() {
                prop_assert_eq!(step(w, g, step(w, g, r)), r);
            }
        }
    }

    #[test]
    fn universes_restrict_and_reverse(s in system(), r in 2usize..5) {
        let u = WindowUniverse::build(&s, r).unwrap();
        prop_assert!(u.reversal_closed());
        for w in u.windows() {
            let rev: Vec<_> = w.iter().rev().copied().collect();
            prop_assert!(u.contains(&rev));
        }
        let direct = WindowUniverse::build(&s, r - 1).unwrap();
        let restricted = u.restricted(r - 1).unwrap();
        prop_assert_eq!(direct.windows().collect::<Vec<_>>(), restricted.windows().collect::<Vec<_>>());
    }

    #[test]
    fn signatures_compose(u in word(4, 3), v in word(4, 3)) {
        let g = grigorchuk();
        let uni = WindowUniverse::build(&g, 7).unwrap();
        let direct = offsets(&u.mul(&v), &uni, Exec::Sequential).unwrap();
        let mut o = offsets(&v, &uni, Exec::Sequential).unwrap();
        for &s in u.letters().iter().rev() {
            o = extend(&uni, &o, s);
        }
        prop_assert_eq!(direct, o);
    }

    #[test]
    fn growth_is_submultiplicative(s in system()) {
        let t = growth(&s, 4).unwrap();
        prop_assert!(t.is_monotone());
        prop_assert!(t.is_submultiplicative());
    }

    #[test]
    fn markov_segments_are_admissible(len in 1usize..2000, seed in any::<u64>()) {
        let a = Alphabet::new(["a", "b", "c"]).unwrap();
        let seg = random_markov_segment(&a, len, seed).unwrap();
        prop_assert_eq!(seg.len(), len);
        prop_assert_eq!(seg, random_markov_segment(&a, len, seed).unwrap());
    }

    #[test]
    fn restriction_commutes_with_reversal(w in word(6, 4)) {
        let g = ghat();
        let amb = g.segment(6, "J").unwrap();
        let sets = amb.sets();
        let rev: Vec<_> = sets.iter().rev().copied().collect();
        let len = sets.len();
        for start in [10usize, 31, 60] {
            let end = start + 7;
            let fwd = restrict(&w, sets, start, end).unwrap();
            let back = restrict(&w, &rev, len - end, len - start).unwrap();
            match (fwd, back) {
                (Restriction::Invariant { perm: p }, Restriction::Invariant { perm: q }) => {
                    let mirrored: Vec<usize> = (0..=7).map(|i| 7 - q.apply(7 - i)).collect();
                    prop_assert_eq!(p.images(), mirrored);
                }
                (Restriction::NotInvariant { .. }, Restriction::NotInvariant { .. }) => {}
                _ => prop_assert!(false, "invariance differs under reversal"),
            }
        }
    }

    #[test]
    fn linear_action_is_a_left_action(w in word(4, 6), v in word(4, 6)) {
        let g = grigorchuk();
        let seg = g.segment(9, "I").unwrap();
        let p = seg.len() / 2;
        prop_assert_eq!(apply(seg.sets(), w.mul(&v).letters(), p), apply(seg.sets(), w.letters(), apply(seg.sets(), v.letters(), p)));
    }

    #[test]
    fn tree_generators_are_involutions(v in prop::collection::vec(0u8..2, 0..=10), s in 0u8..4) {
        prop_assert_eq!(tree_act(&[s, s], &v), v);
    }

    #[test]
    fn phi_is_a_homomorphism(u in word(6, 6), v in word(6, 6)) {
        let g = ghat();
        let xi = cover_for(&g, 12).unwrap();
        let pu = tau_on(&xi, &u).unwrap();
        let pv = tau_on(&xi, &v).unwrap();
        let puv = tau_on(&xi, &u.mul(&v)).unwrap();
        prop_assert!(pu.fringe_clean && pv.fringe_clean && puv.fringe_clean);
        prop_assert_eq!(puv.phi_element, pu.phi_element ^ pv.phi_element);
    }

    #[test]
    fn stabilizer_chain_contains_products(seq in prop::collection::vec(0usize..3, 0..12)) {
        let gens = [
            Perm::parse(7, "(0 1 2)(3 4)").unwrap(),
            Perm::parse(7, "(2 5 6)").unwrap(),
            Perm::parse(7, "(0 3)").unwrap(),
        ];
        let chain = StabilizerChain::new(7, &gens).unwrap();
        let g = seq.iter().fold(Perm::identity(7), |acc, &i| acc.then(&gens[i]));
        prop_assert!(chain.contains(&g));
        prop_assert!(chain.contains(&g.inverse()));
    }
}

#[test]
fn grigorchuk_segment_lengths() {
    let g = grigorchuk();
    for n in 1..=14 {
        assert_eq!(g.segment(n, "I").unwrap().len(), (1 << n) - 1);
    }
}

#[test]
fn ghat_segments_are_palindromes() {
    let g = ghat();
    for n in 2..=12 {
        assert!(g.segment(n, "I").unwrap().is_palindrome(), "I_{n}");
    }
}

#[test]
fn ghat_a_generators_commute() {
    let g = ghat();
    let u = WindowUniverse::build(&g, 4).unwrap();
    let w = |t: &str| GroupWord::parse(g.alphabet(), t).unwrap();
    for (x, y) in [("a0", "a1"), ("a0", "a2"), ("a1", "a2")] {
        assert!(equal(&w(&format!("{x} {y}")), &w(&format!("{y} {x}")), &u).unwrap());
    }
}

#[test]
fn galpha_letters_commute() {
    let g = galpha(&AlphaSequence::all_sigma()).unwrap();
    let u = WindowUniverse::build(&g, 4).unwrap();
    let names = ["x", "y", "b", "c", "d"];
    let w = |t: &str| GroupWord::parse(g.alphabet(), t).unwrap();
    for (i, x) in names.iter().enumerate() {
        for y in &names[i + 1..] {
            assert!(equal(&w(&format!("{x} {y}")), &w(&format!("{y} {x}")), &u).unwrap(), "{x}{y}");
        }
    }
}

#[test]
fn tree_klein_relations() {
    let bc = tree_perm(&[1, 2], 8);
    assert_eq!(bc, tree_perm(&[2, 1], 8));
    assert_eq!(bc, tree_perm(&[3], 8));
}
