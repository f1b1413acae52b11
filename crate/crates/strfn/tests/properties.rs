//! Property tests for the structural invariants: ordering, marginalization,
//! parsing round trips and Hankel layout.

use proptest::prelude::*;

use strfn::*;

fn exact() -> ArithmeticMode {
    ArithmeticMode::Exact
}

/// Random positive tables over a small binary horizon.
fn arb_table() -> impl Strategy<Value = DistributionTable> {
    (1usize..=4, proptest::collection::vec(1i64..200, 16)).prop_map(|(n, raw)| {
        let a = Alphabet::binary();
        let count = 1usize << n;
        let values: Vec<Scalar> = raw[..count].iter().map(|&v| Scalar::rat(v, 199)).collect();
        DistributionTable::new(a, n, TableKind::Raw, exact(), values).unwrap()
    })
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..2, 0..=max_len).prop_map(Word::new)
}

proptest! {
    #[test]
    fn shortlex_is_a_strict_total_order(a in arb_word(5), b in arb_word(5)) {
        use std::cmp::Ordering;
        let cmp = a.cmp(&b);
        prop_assert_eq!(cmp == Ordering::Equal, a == b);
        prop_assert_eq!(cmp, b.cmp(&a).reverse());
        if a.len() < b.len() {
            prop_assert_eq!(cmp, Ordering::Less);
        }
    }

    #[test]
    fn shortlex_enumeration_is_sorted_and_complete(max_len in 0usize..5) {
        let alphabet = Alphabet::binary();
        let words = shortlex_words(&alphabet, max_len);
        prop_assert_eq!(words.len(), (0..=max_len).map(|k| 1usize << k).sum::<usize>());
        for pair in words.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn marginals_are_consistent_level_by_level(table in arb_table()) {
        // p(u) = sum_a p(ua) for every u shorter than the table
        for u in shortlex_words(table.alphabet(), table.n() - 1) {
            let direct = table.marginal(&u).unwrap();
            let mut summed = Scalar::int(0);
            for a in 0..table.alphabet().len() as u8 {
                summed = &summed + &table.marginal(&u.append(a)).unwrap();
            }
            prop_assert_eq!(direct, summed);
        }
    }

    #[test]
    fn rational_display_parse_round_trip(num in -10_000i64..10_000, den in 1i64..10_000) {
        let s = Scalar::rat(num, den);
        let text = s.to_string();
        prop_assert_eq!(exact().parse(&text).unwrap(), s);
    }

    #[test]
    fn hankel_layout_matches_marginals(table in arb_table(), rows in 0usize..3, cols in 0usize..3) {
        prop_assume!(rows + cols <= table.n());
        let minor = build_partial_hankel(&table, rows, cols).unwrap();
        for (i, v) in minor.row_words().iter().enumerate() {
            for (j, w) in minor.col_words().iter().enumerate() {
                prop_assert_eq!(minor.entry(i, j), &table.marginal(&w.concat(v)).unwrap());
            }
        }
    }

    #[test]
    fn rank_never_exceeds_generator_dimension(d in 1usize..4, seed in 0u64..50) {
        let alphabet = Alphabet::binary();
        let g = random_realization(d, &alphabet, seed, true);
        let table = g.to_table(2 * d + 1);
        let rank = build_partial_hankel(&table, d, d).unwrap().rank();
        prop_assert!(rank <= d);
    }

    #[test]
    fn eval_matches_tabulation(seed in 0u64..30, n in 0usize..4) {
        let alphabet = Alphabet::binary();
        let g = random_realization(2, &alphabet, seed, false);
        let table = g.to_table(n);
        for w in words_of_length(&alphabet, n) {
            prop_assert_eq!(table.value(&w).unwrap(), &g.eval(&w));
        }
    }

    #[test]
    fn float_conversion_preserves_verdicts_on_ranks(seed in 0u64..20) {
        let alphabet = Alphabet::binary();
        let g = random_realization(2, &alphabet, seed, true);
        let table = g.to_table(5);
        let exact_rank = build_partial_hankel(&table, 2, 2).unwrap().rank();
        let float_rank = build_partial_hankel(&table.to_float(1e-9), 2, 2).unwrap().rank();
        prop_assert_eq!(exact_rank, float_rank);
    }
}
