mod common;

use std::collections::BTreeSet;

use mahonian::bcode::{all_codes, decode_with, encode_with, Layout};
use mahonian::qseries::{gf_bipartitional, gf_sorting, q_binomial};
use mahonian::relation::{
    complement, from_ordered_bipartition, is_bipartitional, is_essentially_bipartitional, satisfies_sor_conditions,
    to_ordered_bipartition,
};
use mahonian::stats::{
    graphical_inversions, graphical_major_index, graphical_sorting_index, inversions, major_index,
    maximal_chain_word, sort_trace, sorting_index,
};
use mahonian::word::{class_size, rearrangement_class};
use mahonian::{BCode, MultiplicityVector, OrderedBipartition, QPolynomial, Relation, TieRule, Word};
use proptest::collection::vec;
use proptest::prelude::*;

fn relation(n: usize) -> impl Strategy<Value = Relation> {
    vec(any::<bool>(), n * n).prop_map(move |bits| {
        let mut u = Relation::empty(n);
        for (i, b) in bits.into_iter().enumerate() {
            u.set(i as u32 / n as u32 + 1, i as u32 % n as u32 + 1, b);
        }
        u
    })
}

fn any_relation(max_n: usize) -> impl Strategy<Value = Relation> {
    (1..=max_n).prop_flat_map(relation)
}

fn bipartition(max_n: usize) -> impl Strategy<Value = OrderedBipartition> {
    (1..=max_n as u32)
        .prop_flat_map(|n| {
            (
                Just((1..=n).collect::<Vec<u32>>()).prop_shuffle(),
                vec(any::<bool>(), n as usize),
                vec(any::<bool>(), n as usize),
            )
        })
        .prop_map(|(letters, cuts, flags)| {
            let mut blocks: Vec<Vec<u32>> = vec![Vec::new()];
            for (i, x) in letters.into_iter().enumerate() {
                if i > 0 && cuts[i] {
                    blocks.push(Vec::new());
                }
                blocks.last_mut().unwrap().push(x);
            }
            for b in &mut blocks {
                b.sort_unstable_by(|a, b| b.cmp(a));
            }
            let k = blocks.len();
            OrderedBipartition::new(blocks, flags[..k].to_vec()).unwrap()
        })
}

fn word_over(max_n: u32, max_len: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n as usize), vec(1..=n, 0..=max_len)))
}

/// Blocks meeting the sorting conditions: descending intervals, singletons or
/// pairs with a multiplicity-one top above a final block of any size.
fn sorting_instance() -> impl Strategy<Value = (MultiplicityVector, OrderedBipartition)> {
    (1..=4usize)
        .prop_flat_map(|n| (vec(1..=2u32, n), vec(any::<bool>(), n), 1..=n))
        .prop_map(|(counts, pair, last)| {
            let n = counts.len() as u32;
            let last = last as u32;
            let mut blocks = Vec::new();
            let mut x = n;
            while x > last {
                if pair[x as usize - 1] && x - 1 > last && counts[x as usize - 1] == 1 {
                    blocks.push(vec![x, x - 1]);
                    x -= 2;
                } else {
                    blocks.push(vec![x]);
                    x -= 1;
                }
            }
            blocks.push((1..=last).rev().collect());
            (
                MultiplicityVector::new(counts).unwrap(),
                OrderedBipartition::plain(blocks).unwrap(),
            )
        })
}

fn words_of(alpha: &MultiplicityVector) -> Vec<Word> {
    rearrangement_class(alpha).unwrap().collect()
}

fn strict_order_on_permutation(w: &[u32]) -> (u64, u64) {
    let natural = Relation::natural_order(w.len());
    (common::inv(&natural, w), common::maj(&natural, w))
}

proptest! {
    #[test]
    fn complement_is_an_involution(u in any_relation(5)) {
        prop_assert_eq!(complement(&complement(&u)), u.clone());
        prop_assert_eq!(u.len() + complement(&u).len(), u.n() * u.n());
    }

    #[test]
    fn bipartitions_round_trip(bp in bipartition(6)) {
        let u = from_ordered_bipartition(&bp);
        prop_assert!(is_bipartitional(&u));
        prop_assert_eq!(to_ordered_bipartition(&u), Some(bp));
    }

    #[test]
    fn complement_reverses_blocks(bp in bipartition(6)) {
        let uc = complement(&from_ordered_bipartition(&bp));
        let rev = to_ordered_bipartition(&uc).expect("complement of a bipartitional relation");
        let blocks: Vec<Vec<u32>> = bp.blocks().iter().rev().cloned().collect();
        let flags: Vec<bool> = bp.flags().iter().rev().map(|f| !f).collect();
        prop_assert_eq!(rev.blocks(), &blocks[..]);
        prop_assert_eq!(rev.flags(), &flags[..]);
    }

    #[test]
    fn essential_witness_is_valid(u in any_relation(4), counts in vec(1..=3u32, 4)) {
        let alpha = MultiplicityVector::new(counts[..u.n()].to_vec()).unwrap();
        let witness = is_essentially_bipartitional(&u, &alpha).unwrap();
        // reference: try every loop assignment on multiplicity-one letters
        let free: Vec<u32> = (1..=u.n() as u32).filter(|&x| alpha.count(x) == 1).collect();
        let reachable = (0u32..1 << free.len()).any(|mask| {
            let mut v = u.clone();
            for (i, &x) in free.iter().enumerate() {
                v.set(x, x, mask >> i & 1 == 1);
            }
            common::is_bipartitional_by_definition(&v)
        });
        prop_assert_eq!(witness.is_some(), reachable);
        if let Some(w) = witness {
            let v = w.apply(&u);
            prop_assert_eq!(to_ordered_bipartition(&v), Some(w.bipartition.clone()));
            for x in w.removed_loops.iter().chain(&w.added_loops) {
                prop_assert_eq!(alpha.count(*x), 1);
            }
            prop_assert!(w.removed_loops.is_disjoint(&w.added_loops));
        }
    }

    #[test]
    fn sorting_conditions_force_descending_intervals(u in any_relation(4), counts in vec(1..=2u32, 4)) {
        let alpha = MultiplicityVector::new(counts[..u.n()].to_vec()).unwrap();
        let c = satisfies_sor_conditions(&u, &alpha);
        prop_assert_eq!(c.holds, c.failures.is_empty());
        if c.holds {
            let bp = c.bipartition.expect("bipartition when conditions hold");
            prop_assert!(bp.is_descending_intervals());
            prop_assert!(bp.flags().iter().all(|f| !f));
        }
    }

    #[test]
    fn complement_identity((n, letters) in word_over(6, 14), bits in vec(any::<bool>(), 36)) {
        let u = Relation::from_edges(n, (0..n * n).filter(|&i| bits[i]).map(|i| (i as u32 / n as u32 + 1, i as u32 % n as u32 + 1))).unwrap();
        let m = letters.len() as u64;
        let w = Word::with_alphabet(letters, n).unwrap();
        let uc = complement(&u);
        let pairs = m * m.saturating_sub(1) / 2;
        prop_assert_eq!(graphical_inversions(&u, &w).unwrap() + graphical_inversions(&uc, &w).unwrap(), pairs);
        prop_assert_eq!(graphical_major_index(&u, &w).unwrap() + graphical_major_index(&uc, &w).unwrap(), pairs);
    }

    #[test]
    fn statistics_match_reference((n, letters) in word_over(5, 12), u in relation(5)) {
        let u = Relation::from_edges(n, u.edges().filter(|&(x, y)| x as usize <= n && y as usize <= n)).unwrap();
        let w = Word::with_alphabet(letters.clone(), n).unwrap();
        prop_assert_eq!(graphical_inversions(&u, &w).unwrap(), common::inv(&u, &letters));
        prop_assert_eq!(graphical_major_index(&u, &w).unwrap(), common::maj(&u, &letters));
        prop_assert_eq!(graphical_sorting_index(&u, &w, TieRule::Rightmost).unwrap(), common::sor_rightmost(&u, &letters));
    }

    #[test]
    fn sorting_postcondition((n, letters) in word_over(5, 12), u in relation(5)) {
        let u = Relation::from_edges(n, u.edges().filter(|&(x, y)| x as usize <= n && y as usize <= n)).unwrap();
        let w = Word::with_alphabet(letters.clone(), n).unwrap();
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        for rule in TieRule::ALL {
            let trace = sort_trace(&u, &w, rule).unwrap();
            prop_assert_eq!(trace.final_word.letters(), &sorted[..]);
            prop_assert_eq!(trace.steps.len(), letters.len());
            prop_assert_eq!(trace.total(), graphical_sorting_index(&u, &w, rule).unwrap());
            prop_assert_eq!(sort_trace(&u, &w, rule).unwrap(), trace.clone());
            let mut current = letters.clone();
            for s in &trace.steps {
                prop_assert_eq!(current[s.mover - 1], s.letter);
                prop_assert!(s.mover <= s.target);
                prop_assert_eq!(current[..s.target].iter().max(), Some(&s.letter));
                current.swap(s.mover - 1, s.target - 1);
            }
        }
    }

    #[test]
    fn q_binomial_shape(n in 0..=24u64, k in 0..=24u64) {
        prop_assume!(k <= n);
        let p = q_binomial(n, k).unwrap();
        prop_assert_eq!(&p, &q_binomial(n, n - k).unwrap());
        prop_assert!(p.is_palindromic());
        prop_assert_eq!(p.eval_at_one().unwrap(), common::binomial(n, k));
        prop_assert_eq!(p.degree(), Some((k * (n - k)) as usize));
    }

    #[test]
    fn gf_counts_the_class(bp in bipartition(5), counts in vec(0..=3u32, 5)) {
        let alpha = MultiplicityVector::new(counts[..bp.n()].to_vec()).unwrap();
        let gf = gf_bipartitional(&alpha, &bp).unwrap();
        prop_assert_eq!(gf.eval_at_one().unwrap(), class_size(&alpha).unwrap());
    }

    #[test]
    fn gf_sorting_is_the_sorting_distribution((alpha, bp) in sorting_instance()) {
        let u = from_ordered_bipartition(&bp);
        let words = words_of(&alpha);
        let gf = gf_sorting(&alpha, &bp).unwrap();
        prop_assert_eq!(gf.coeffs(), common::histogram(words.iter().map(|w| common::sor_rightmost(&u, w.letters()))));
        prop_assert_eq!(gf.coeffs(), common::histogram(words.iter().map(|w| common::inv(&u, w.letters()))));
        prop_assert_eq!(gf.coeffs(), common::histogram(words.iter().map(|w| common::maj(&u, w.letters()))));
    }

    #[test]
    fn bcode_is_a_bijection((alpha, bp) in sorting_instance()) {
        let layout = Layout::new(&bp, &alpha).unwrap();
        let u = layout.relation().clone();
        let words = words_of(&alpha);
        let mut seen = BTreeSet::new();
        for w in &words {
            let code = encode_with(&layout, w).unwrap();
            prop_assert_eq!(&decode_with(&layout, &code).unwrap(), w);
            prop_assert_eq!(code.total(), common::sor_rightmost(&u, w.letters()));
            seen.insert((code.partitions, code.markers));
        }
        prop_assert_eq!(seen.len(), words.len());
        let codes = all_codes(&bp, &alpha).unwrap();
        prop_assert_eq!(codes.len() as u64, layout.code_count().unwrap());
        prop_assert_eq!(codes.len(), words.len());
        for code in &codes {
            let w = decode_with(&layout, code).unwrap();
            prop_assert_eq!(&encode_with(&layout, &w).unwrap(), code);
        }
        let code_dist = common::histogram(codes.iter().map(BCode::total));
        let gf = gf_sorting(&alpha, &bp).unwrap();
        prop_assert_eq!(gf.coeffs(), &code_dist[..]);
    }

    #[test]
    fn json_round_trips(u in any_relation(5), bp in bipartition(5), coeffs in vec(0..1000u64, 0..8)) {
        let back: Relation = serde_json::from_str(&serde_json::to_string(&u).unwrap()).unwrap();
        prop_assert_eq!(back, u);
        let back: OrderedBipartition = serde_json::from_str(&serde_json::to_string(&bp).unwrap()).unwrap();
        prop_assert_eq!(&back, &bp);
        let text: OrderedBipartition = bp.to_string().parse().unwrap();
        prop_assert_eq!(text, bp);
        let p = QPolynomial::from_coeffs(coeffs);
        let back: QPolynomial = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(&back, &p);
        let text: QPolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(text, p);
    }

    #[test]
    fn bcode_json_round_trips((alpha, bp) in sorting_instance(), pick in any::<prop::sample::Index>()) {
        let codes = all_codes(&bp, &alpha).unwrap();
        let code = pick.get(&codes);
        let json = serde_json::to_string(code).unwrap();
        let back: BCode = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, code);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}

#[test]
fn bipartition_tests_agree_on_all_small_relations() {
    for n in 1..=3usize {
        for mask in 0..1u64 << (n * n) {
            let u = Relation::from_mask(n, mask);
            let by_definition = common::is_bipartitional_by_definition(&u);
            assert_eq!(is_bipartitional(&u), by_definition, "{u}");
            assert_eq!(to_ordered_bipartition(&u).is_some(), by_definition, "{u}");
        }
    }
}

#[test]
fn permutations_have_classical_statistics() {
    for p in common::all_words(&[1; 7]) {
        let w = Word::from_letters(p.clone()).unwrap();
        let (inv, maj) = strict_order_on_permutation(&p);
        assert_eq!(inversions(&w), inv);
        assert_eq!(major_index(&w), maj);
        let sor = sorting_index(&w, TieRule::Rightmost);
        for rule in TieRule::ALL {
            assert_eq!(sorting_index(&w, rule), sor, "{w} under {rule}");
        }
    }
}

#[test]
fn permutation_statistics_are_mahonian() {
    let words = common::all_words(&[1; 6]);
    let expected = common::q_multinomial(&[1; 6]);
    for stat in [
        |w: &Word| inversions(w),
        |w: &Word| major_index(w),
        |w: &Word| sorting_index(w, TieRule::default()),
    ] {
        let values = words.iter().map(|p| stat(&Word::from_letters(p.clone()).unwrap()));
        assert_eq!(common::histogram(values), expected);
    }
}

#[test]
fn block_product_formula_for_small_alphabets() {
    for n in 1..=3usize {
        let alphas = common::all_strings(4, n).into_iter().map(|c| c.into_iter().map(|x| x - 1).collect::<Vec<u32>>());
        let alphas: Vec<Vec<u32>> = alphas.filter(|a| a.iter().sum::<u32>() <= 6).collect();
        for mask in 0..1u64 << (n * n) {
            let u = Relation::from_mask(n, mask);
            let Some(bp) = to_ordered_bipartition(&u) else { continue };
            for a in &alphas {
                let alpha = MultiplicityVector::new(a.clone()).unwrap();
                let words = common::all_words(a);
                let gf = gf_bipartitional(&alpha, &bp).unwrap();
                assert_eq!(gf.coeffs(), common::histogram(words.iter().map(|w| common::inv(&u, w))), "{u} {a:?}");
                assert_eq!(gf.coeffs(), common::histogram(words.iter().map(|w| common::maj(&u, w))), "{u} {a:?}");
            }
        }
    }
}

#[test]
fn maximal_chain_word_reaches_max_inversions() {
    for n in 1..=3usize {
        for a in [vec![1u32; n], vec![2; n], (1..=n as u32).collect()] {
            let alpha = MultiplicityVector::new(a).unwrap();
            let words = words_of(&alpha);
            for mask in 0..1u64 << (n * n) {
                let u = Relation::from_mask(n, mask);
                let max_inv = words.iter().map(|w| common::inv(&u, w.letters())).max().unwrap();
                let max_maj = words.iter().map(|w| common::maj(&u, w.letters())).max().unwrap();
                assert!(max_maj >= max_inv, "{u}");
                let chain = maximal_chain_word(&u, &alpha).unwrap();
                assert!(common::maj(&u, chain.letters()) >= max_inv, "{u}: {chain}");
            }
        }
    }
}
