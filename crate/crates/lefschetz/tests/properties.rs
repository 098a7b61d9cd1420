use proptest::prelude::*;

use num_integer::Integer;

use lefschetz::chains::{self, BlowPos, ClassT, WahlStep};
use lefschetz::invariants;
use lefschetz::mcg::{mc_equal, Curve, Direction, Factorization, Page};
use lefschetz::palf::{self, HoleMap, PalfWord};
use lefschetz::plumbing::{self, PlumbingGraph};
use lefschetz::relations::{self, SubstitutionCertificate};

fn coprime_pair(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_filter("coprime", |(n, q)| n.gcd(q) == 1)
}

/// A random curve on `h` holes: a round interval moved by a short braid.
fn curve(h: usize) -> impl Strategy<Value = Curve> {
    let letter = (1..h as i32, any::<bool>()).prop_map(|(k, s)| if s { k } else { -k });
    let conj = if h >= 2 {
        prop::collection::vec(letter, 0..4).boxed()
    } else {
        Just(Vec::new()).boxed()
    };
    (1..=h)
        .prop_flat_map(move |lo| (Just(lo), lo..=h))
        .prop_flat_map(move |(lo, hi)| (Just(lo), Just(hi), conj.clone()))
        .prop_map(move |(lo, hi, c)| Curve::conjugated(c, lo, hi).simplify(h))
}

fn word(h: usize, max_len: usize) -> impl Strategy<Value = Factorization> {
    prop::collection::vec(curve(h), 2..=max_len).prop_map(move |w| Factorization::new(Page::planar(h), w))
}

/// Longest conjugating word for which the Hurwitz test compares monodromy.
const MC_CHECK_MAX_LETTERS: usize = 10;

fn moves(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..64, any::<bool>()), 0..=max)
}

fn apply_moves(f: &Factorization, m: &[(usize, bool)]) -> Factorization {
    let mut w = f.clone();
    for &(i, fwd) in m {
        let i = i % (w.len() - 1);
        let d = if fwd { Direction::Forward } else { Direction::Backward };
        w = w.hurwitz_move(i, d).unwrap();
    }
    w
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn continued_fraction_round_trip((n, q) in coprime_pair(100_000)) {
        let c = chains::hj_expand_frac(n, q).unwrap();
        prop_assert!(c.iter().all(|&x| x >= 2));
        prop_assert_eq!(chains::hj_eval(&c).unwrap().as_pair(), Some((n, q)));
    }

    #[test]
    fn blow_down_undoes_blow_up(c in prop::collection::vec(1i64..6, 1..6), gap in 0usize..8) {
        let pos = if gap == 0 || gap >= c.len() { BlowPos::End } else { BlowPos::Gap(gap) };
        let up = chains::blow_up(&c, pos).unwrap();
        let index = match pos { BlowPos::Gap(i) => i + 1, BlowPos::End => up.len() };
        prop_assert_eq!(chains::blow_down(&up, index).unwrap(), c);
    }

    #[test]
    fn blow_ups_keep_value_zero(trace in prop::collection::vec(0usize..6, 0..7)) {
        let mut t = vec![0];
        for g in trace {
            let pos = if g == 0 || g >= t.len() { BlowPos::End } else { BlowPos::Gap(g) };
            t = chains::blow_up(&t, pos).unwrap();
        }
        prop_assert!(chains::is_admissible(&t));
        prop_assert_eq!(chains::hj_eval(&t).unwrap().as_pair(), Some((0, 1)));
    }

    #[test]
    fn wahl_growth_stays_class_t(
        start in 0usize..2,
        r in 0i64..3,
        steps in prop::collection::vec(any::<bool>(), 0..5),
    ) {
        let base = if start == 0 { vec![4] } else {
            let mut b = vec![3];
            b.extend(std::iter::repeat_n(2, r as usize));
            b.push(3);
            b
        };
        let steps: Vec<WahlStep> = steps
            .into_iter()
            .map(|s| if s { WahlStep::PrependTwo } else { WahlStep::AppendTwo })
            .collect();
        let c = chains::wahl_grow(&base, &steps);
        match chains::is_class_t(&c) {
            ClassT::Wahl { d, .. } => prop_assert_eq!(d, if start == 0 { 1 } else { r + 2 }),
            other => prop_assert!(false, "{:?} gave {:?}", c, other),
        }
    }

    #[test]
    fn hurwitz_moves_preserve_invariants(f in word(4, 6), m in moves(6)) {
        let w = apply_moves(&f, &m);
        prop_assert_eq!(invariants::euler_char(&w), invariants::euler_char(&f));
        prop_assert_eq!(invariants::first_homology(&w).unwrap(), invariants::first_homology(&f).unwrap());
        // the free-group image of a curve grows fast under moves, so the
        // monodromy comparison only runs on short words
        if w.word.iter().all(|c| c.conj.len() <= MC_CHECK_MAX_LETTERS) {
            prop_assert!(mc_equal(&w.word, &f.word, 4));
        }
    }

    #[test]
    fn backward_undoes_forward(f in word(4, 5), i in 0usize..4) {
        let i = i % (f.len() - 1);
        let there = f.hurwitz_move(i, Direction::Forward).unwrap();
        let back = there.hurwitz_move(i, Direction::Backward).unwrap();
        for (a, b) in back.word.iter().zip(&f.word) {
            prop_assert!(mc_equal(std::slice::from_ref(a), std::slice::from_ref(b), 4));
        }
    }

    #[test]
    fn global_conjugation_preserves_invariants(f in word(4, 5), g in prop::collection::vec((curve(4), -2i32..=2), 1..3)) {
        let w = f.global_conjugate(&g);
        prop_assert_eq!(invariants::euler_char(&w), invariants::euler_char(&f));
        prop_assert_eq!(invariants::first_homology(&w).unwrap(), invariants::first_homology(&f).unwrap());
    }

    #[test]
    fn extension_preserves_relations(which in 0usize..4, extra in 0usize..3, pick in 0usize..64) {
        let cert = match which {
            0 => relations::lantern().unwrap(),
            1 => relations::daisy(3).unwrap(),
            2 => relations::rbd_relation(&[2, 5, 3]).unwrap(),
            _ => relations::rbd_relation(&[6, 2, 2]).unwrap(),
        };
        let (PalfWord::Planar(a), PalfWord::Planar(b)) = (&cert.lhs, &cert.rhs) else { unreachable!() };
        let h = a.page.holes;
        let maps = HoleMap::compositions(h, h + extra);
        let map = &maps[pick % maps.len()];
        let ea = palf::extend_factorization(a, map).unwrap();
        let eb = palf::extend_factorization(b, map).unwrap();
        prop_assert!(mc_equal(&ea.word, &eb.word, h + extra));
        let new = map.new_holes();
        let sa = palf::positive_stabilize(&ea, &new).unwrap();
        let sb = palf::positive_stabilize(&eb, &new).unwrap();
        prop_assert!(mc_equal(&sa.word, &sb.word, h + extra));
    }

    #[test]
    fn gay_mark_matches_plumbing_on_chains((n, q) in coprime_pair(400)) {
        let g = plumbing::build_cyclic(n, q).unwrap();
        let pd = palf::gay_mark_palf(&g).unwrap();
        let inv = plumbing::plumbing_invariants(&g);
        prop_assert_eq!(pd.euler_char(), inv.euler_char);
        prop_assert_eq!(pd.first_homology().unwrap(), inv.h1);
        let map = invariants::check_adjunction(&pd, &g, &pd.vertex_classes).unwrap();
        prop_assert!(map.values().all(|&ok| ok));
    }

    #[test]
    fn graph_text_round_trips((n, q) in coprime_pair(200)) {
        let g = plumbing::build_cyclic(n, q).unwrap();
        let g = g.with_decorations(vec![vec![1]]);
        prop_assert_eq!(PlumbingGraph::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn factorization_text_round_trips(f in word(5, 6)) {
        let back = lefschetz::text::parse_factorization(&f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn certificate_text_round_trips() {
    for c in relations::list().unwrap() {
        let back = SubstitutionCertificate::parse(&c.to_text()).unwrap();
        assert_eq!(back.lhs, c.lhs);
        assert_eq!(back.rhs, c.rhs);
        assert_eq!(back.chain, c.chain);
        assert_eq!(back.blowdown, c.blowdown);
        assert!(back.is_valid(), "{}", c.name);
    }
}
