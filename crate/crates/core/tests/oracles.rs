mod common;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use randsurf::census::count_word;
use randsurf::characters::{
    binomial, class_size, dimension, factorial, hook_char_k2, hook_chars_k3, max_genus_count,
    mn_character, restricted_classes, CharacterEngine, Partition,
};
use randsurf::exact::{
    brute_max_genus_count, enumerate_all_pairings, exact_conditional_moment, GenusSet,
};
use randsurf::gluing::{fat_graph, sample_pairing_at};
use randsurf::words::WordMultiset;

#[test]
fn census_matches_walk_oracle_at_n1() {
    let classes = common::classes_up_to(6);
    for p in enumerate_all_pairings(1).unwrap() {
        let g = fat_graph(&p);
        for c in &classes {
            assert_eq!(count_word(&g, c).unwrap(), common::walk_oracle(&g, c), "{c} on {p:?}");
        }
    }
}

#[test]
fn census_matches_walk_oracle_at_n2_sampled() {
    let classes = common::classes_up_to(5);
    for i in 0..40 {
        let g = fat_graph(&sample_pairing_at(2, 77, i).unwrap());
        for c in &classes {
            assert_eq!(count_word(&g, c).unwrap(), common::walk_oracle(&g, c));
        }
    }
}

#[test]
fn census_matches_walk_oracle_at_n3_long_words() {
    let classes: Vec<_> = common::classes_up_to(8)
        .into_iter()
        .filter(|c| c.length() >= 7)
        .collect();
    for i in 0..5 {
        let g = fat_graph(&sample_pairing_at(3, 5, i).unwrap());
        for c in &classes {
            assert_eq!(count_word(&g, c).unwrap(), common::walk_oracle(&g, c));
        }
    }
}

#[test]
fn column_orthogonality_small_n() {
    let mut engine = CharacterEngine::new();
    for n in 1..=6 {
        let parts = Partition::all(n);
        for a in &parts {
            for b in &parts {
                let sum: BigInt = parts
                    .iter()
                    .map(|l| engine.character(l, a).unwrap() * engine.character(l, b).unwrap())
                    .sum();
                let expected = if a == b {
                    BigInt::from(factorial(n) / class_size(a))
                } else {
                    BigInt::zero()
                };
                assert_eq!(sum, expected, "n={n} {a} {b}");
            }
        }
    }
}

#[test]
fn row_orthogonality_small_n() {
    let mut engine = CharacterEngine::new();
    for n in 1..=6 {
        let parts = Partition::all(n);
        for l1 in &parts {
            for l2 in &parts {
                let sum: BigInt = parts
                    .iter()
                    .map(|mu| {
                        BigInt::from(class_size(mu))
                            * engine.character(l1, mu).unwrap()
                            * engine.character(l2, mu).unwrap()
                    })
                    .sum();
                let expected = if l1 == l2 { BigInt::from(factorial(n)) } else { BigInt::zero() };
                assert_eq!(sum, expected);
            }
        }
    }
}

#[test]
fn hook_dimensions_are_binomials() {
    for d in 1..=14 {
        for p in 0..d {
            assert_eq!(dimension(&Partition::hook(d, p).unwrap()), binomial(d - 1, p));
        }
    }
}

#[test]
fn hook_closed_forms_match_mn() {
    let sets = [
        WordMultiset::empty(),
        WordMultiset::parse(&[("LR", 1)]).unwrap(),
        WordMultiset::parse(&[("LLR", 1)]).unwrap(),
        WordMultiset::parse(&[("LR", 2)]).unwrap(),
        WordMultiset::parse(&[("LR", 1), ("LLR", 1)]).unwrap(),
    ];
    for n in 1..=3 {
        for ws in &sets {
            let Ok(shapes) = restricted_classes(n, ws) else { continue };
            let d = shapes.ground_size;
            if d == 0 || d > 16 {
                continue;
            }
            let k3 = hook_chars_k3(n, ws).unwrap();
            for p in 0..d {
                let hook = Partition::hook(d, p).unwrap();
                assert_eq!(k3[p], mn_character(&hook, &shapes.k3_shape).unwrap());
                assert_eq!(
                    hook_char_k2(p, n, shapes.m).unwrap(),
                    mn_character(&hook, &shapes.k2_shape).unwrap()
                );
            }
        }
    }
}

#[test]
fn max_genus_count_matches_brute_force_small() {
    let sets = [
        WordMultiset::empty(),
        WordMultiset::parse(&[("LR", 1)]).unwrap(),
        WordMultiset::parse(&[("LLR", 1)]).unwrap(),
        WordMultiset::parse(&[("LR", 2)]).unwrap(),
        WordMultiset::parse(&[("LLRR", 1)]).unwrap(),
    ];
    for n in [1, 3] {
        for ws in &sets {
            let Ok(shapes) = restricted_classes(n, ws) else { continue };
            if shapes.ground_size == 0 || shapes.ground_size > 14 {
                continue;
            }
            let count = max_genus_count(n, ws).unwrap();
            assert_eq!(
                count.exact.to_u64().unwrap(),
                brute_max_genus_count(n, ws).unwrap(),
                "N={n} W={ws:?}"
            );
        }
    }
}

#[test]
fn conditional_lr_mean_from_characters_matches_enumeration() {
    // Each one-cusp gluing carrying an LR circuit is counted once per
    // placement of the circuit, and there are 3N(6N-3) placements.
    let lr = WordMultiset::parse(&[("LR", 1)]).unwrap();
    for n in [1usize, 3] {
        let base = max_genus_count(n, &WordMultiset::empty()).unwrap().exact;
        let with = max_genus_count(n, &lr).unwrap().exact;
        let via_chars = Ratio::new(
            (3 * n * (6 * n - 3)) as u64 * with.to_u64().unwrap(),
            base.to_u64().unwrap(),
        );
        let enumerated = exact_conditional_moment(n, &lr, &GenusSet::of([n.div_ceil(2)])).unwrap();
        assert_eq!(via_chars, enumerated);
    }
}

#[test]
fn unconditioned_lr_mean_exact() {
    let lr = WordMultiset::parse(&[("LR", 1)]).unwrap();
    for n in 1..=2u64 {
        assert_eq!(
            exact_conditional_moment(n as usize, &lr, &GenusSet::All).unwrap(),
            Ratio::new(3 * n, 6 * n - 1)
        );
    }
}

#[test]
fn sampler_is_uniform_at_n1() {
    let all: Vec<_> = enumerate_all_pairings(1).unwrap().collect();
    assert_eq!(all.len(), 15);
    let draws = 30_000u64;
    let mut counts = vec![0u64; 15];
    for i in 0..draws {
        let p = sample_pairing_at(1, 2024, i).unwrap();
        counts[all.iter().position(|q| *q == p).unwrap()] += 1;
    }
    let expected = draws as f64 / 15.0;
    let chi2: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    // 14 degrees of freedom, upper 0.1% point.
    assert!(chi2 < 36.12, "chi2 = {chi2}, counts {counts:?}");
}
