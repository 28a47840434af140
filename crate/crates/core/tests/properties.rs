mod common;

use common::*;
use conjlogic::bench::{random_generators, random_transcript};
use conjlogic::clifford::{Gate, GateKind};
use conjlogic::knowledge::independent;
use conjlogic::reduction::{augment, reduce_pair, reduce_set, reduce_single};
use conjlogic::{Error, KnowledgeState, PauliLetter, Proposition, Relation, Theory, TruthValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const THEORIES: [Theory; 2] = [Theory::QUANTUM, Theory::TOY];

#[test]
fn single_reduction_is_faithful() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for theory in THEORIES {
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let p = random_nontrivial(&mut rng, n);
            let r = reduce_single(&p, theory).unwrap();
            let reduced = r.transcript.apply(&p, theory).unwrap();
            assert_eq!(reduced, r.reduced[0]);
            assert_eq!(reduced.weight(), 1);
            let pivot = p.first_nontrivial().unwrap();
            assert_eq!(reduced.letter(pivot), PauliLetter::X);
            assert!(r
                .transcript
                .gates()
                .iter()
                .all(|g| matches!(g.kind(), GateKind::S | GateKind::H | GateKind::CZ)));
            assert_eq!(r.transcript.invert().apply(&reduced, theory).unwrap(), p);
        }
    }
}

#[test]
fn pair_reduction_tracks_compatibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for theory in THEORIES {
        let mut seen = [false; 2];
        let mut done = 0;
        while done < 500 {
            let n = rng.gen_range(1..=6);
            let p = random_nontrivial(&mut rng, n);
            let q = random_nontrivial(&mut rng, n);
            if p.same_string(&q) {
                assert!(matches!(reduce_pair(&p, &q, theory), Err(Error::SameQuestion { .. })));
                continue;
            }
            done += 1;
            let r = reduce_pair(&p, &q, theory).unwrap();
            let compatible = naive_commute(&p, &q);
            seen[compatible as usize] = true;
            for (orig, red) in [&p, &q].into_iter().zip(&r.reduced) {
                assert_eq!(&r.transcript.apply(orig, theory).unwrap(), red);
                assert_eq!(red.weight(), 1);
            }
            let sys = |x: &Proposition| x.first_nontrivial().unwrap();
            if compatible {
                assert_eq!(r.relation, Relation::CompatibleDistinctSystems);
                assert_ne!(sys(&r.reduced[0]), sys(&r.reduced[1]));
            } else {
                assert_eq!(r.relation, Relation::IncompatibleSameSystem);
                let s = sys(&r.reduced[0]);
                assert_eq!(s, sys(&r.reduced[1]));
                assert_ne!(r.reduced[0].letter(s), r.reduced[1].letter(s));
            }
        }
        assert_eq!(seen, [true, true]);
    }
}

#[test]
fn set_reduction_recovers_single_x_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for theory in THEORIES {
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let k = rng.gen_range(1..=n);
            let gens = random_generators(n, k, theory, &mut rng).unwrap();
            let r = reduce_set(&gens, theory).unwrap();
            let mut systems = r.systems.clone();
            systems.sort();
            systems.dedup();
            assert_eq!(systems.len(), k);
            for ((g, red), &s) in gens.iter().zip(&r.reduced).zip(&r.systems) {
                assert_eq!(&r.transcript.apply(g, theory).unwrap(), red);
                assert_eq!(red.weight(), 1);
                assert_eq!(red.letter(s), PauliLetter::X);
                assert_eq!(&r.transcript.invert().apply(red, theory).unwrap(), g);
            }
        }
    }
}

#[test]
fn a_maximal_set_admits_no_further_independent_member() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for theory in THEORIES {
        let mut checked = 0;
        while checked < 200 {
            let n = rng.gen_range(1..=6);
            let gens = random_generators(n, n, theory, &mut rng).unwrap();
            let extra = random_nontrivial(&mut rng, n);
            if !gens.iter().all(|g| naive_commute(g, &extra)) {
                continue;
            }
            checked += 1;
            let mut all = gens.clone();
            all.push(extra);
            assert_eq!(reduce_set(&all, theory), Err(Error::Dependent { index: n + 1 }));
        }
    }
}

#[test]
fn incompatible_members_are_named() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let mut gens = random_generators(n, n - 1, Theory::QUANTUM, &mut rng).unwrap();
        let extra = random_nontrivial(&mut rng, n);
        let Some(first) = gens.iter().position(|g| !naive_commute(g, &extra)) else {
            continue;
        };
        gens.push(extra);
        assert_eq!(
            reduce_set(&gens, Theory::QUANTUM),
            Err(Error::Incompatible { first: first + 1, second: n })
        );
    }
}

#[test]
fn augmentation_reaches_full_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for theory in THEORIES {
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let m = rng.gen_range(0..n);
            let gens = random_generators(n, m, theory, &mut rng).unwrap();
            let full = augment(&gens, theory).unwrap();
            if m == 0 {
                assert!(full.is_empty());
                continue;
            }
            assert_eq!(full.len(), n);
            assert_eq!(&full[..m], &gens[..]);
            assert!(independent(&full));
            for (i, p) in full.iter().enumerate() {
                for q in &full[i + 1..] {
                    assert!(naive_commute(p, q));
                }
            }
        }
    }
}

#[test]
fn independence_matches_naive_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let n = rng.gen_range(1..=70);
        let k = rng.gen_range(0..6);
        let base = random_generators(n, k.min(n), Theory::QUANTUM, &mut rng).unwrap();
        // Random GF(2) combinations of an independent set.
        let combos: Vec<Proposition> = (0..base.len())
            .map(|_| {
                let mut acc = Proposition::identity(n);
                for b in &base {
                    if rng.gen() {
                        acc = acc.combine_bits(b).unwrap();
                    }
                }
                acc
            })
            .collect();
        assert_eq!(independent(&combos), naive_rank(&combos) == combos.len());
        let random: Vec<Proposition> = (0..k).map(|_| random_prop(&mut rng, n)).collect();
        assert_eq!(independent(&random), naive_rank(&random) == random.len());
    }
}

#[test]
fn closure_size_and_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for theory in THEORIES {
        for _ in 0..1000 {
            let n = rng.gen_range(1..=16);
            let k = rng.gen_range(0..=n.min(10));
            let gens = random_generators(n, k, theory, &mut rng).unwrap();
            let state = KnowledgeState::from_generators(n, theory, gens.clone()).unwrap();
            let closure = state.closure().unwrap();
            assert_eq!(closure.len(), 1 << k);
            let mut strings: Vec<String> = closure.iter().map(Proposition::letter_string).collect();
            strings.dedup();
            assert_eq!(strings.len(), closure.len(), "p and ¬p both predicted");
            assert!(closure.contains(&Proposition::identity(n)));
            assert!(!closure.contains(&Proposition::contradiction(n)));
            for g in &gens {
                assert!(closure.contains(g));
            }
            for _ in 0..4 {
                let e = &closure[rng.gen_range(0..closure.len())];
                assert_eq!(state.predicts(e).unwrap(), TruthValue::True);
                assert_eq!(state.predicts(&e.negate()).unwrap(), TruthValue::False);
            }
            assert_eq!(state.closure().unwrap(), closure);
        }
    }
}

#[test]
fn predictions_outside_the_closure_are_indeterminate() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for theory in THEORIES {
        for _ in 0..300 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(0..=n);
            let gens = random_generators(n, k, theory, &mut rng).unwrap();
            let state = KnowledgeState::from_generators(n, theory, gens).unwrap();
            let closure = state.closure().unwrap();
            let q = random_prop(&mut rng, n);
            let expected = if closure.contains(&q) {
                TruthValue::True
            } else if closure.contains(&q.negate()) {
                TruthValue::False
            } else {
                TruthValue::Indeterminate
            };
            assert_eq!(state.predicts(&q).unwrap(), expected);
        }
    }
}

#[test]
fn measurement_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for theory in THEORIES {
        for _ in 0..500 {
            let n = rng.gen_range(1..=6);
            let k = rng.gen_range(0..=n);
            let gens = random_generators(n, k, theory, &mut rng).unwrap();
            let state = KnowledgeState::from_generators(n, theory, gens.clone()).unwrap();
            let q = random_nontrivial(&mut rng, n).question();
            let before = state.predicts(&q).unwrap();
            let (rec, after) = state.measure(&q, &mut rng).unwrap();
            assert_eq!(rec.resulting_prop.letter_string(), q.letter_string());
            assert_eq!(rec.resulting_prop.sign(), rec.outcome == 1);
            if let Some(v) = before.to_bool() {
                assert_eq!(rec.outcome == 0, v);
                assert_eq!(after, state);
            }
            assert_eq!(after.predicts(&rec.resulting_prop).unwrap(), TruthValue::True);
            let (again, _) = after.measure(&q, &mut rng).unwrap();
            assert_eq!(again.outcome, rec.outcome);
            for g in &gens {
                let expected = if naive_commute(g, &q) { TruthValue::True } else { TruthValue::Indeterminate };
                assert_eq!(after.predicts(g).unwrap(), expected, "{g} after measuring {q}");
            }
            assert_eq!(after.predicts(&Proposition::identity(n)).unwrap(), TruthValue::True);
            assert_eq!(after.predicts(&Proposition::contradiction(n)).unwrap(), TruthValue::False);
            assert!(!after.is_poisoned());
        }
    }
}

#[test]
fn transcripts_invert_in_both_variants() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for theory in THEORIES {
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let mut t = random_transcript(n, 20, &mut rng);
            t.push(Gate::Sinv(rng.gen_range(0..n)));
            t.push(Gate::FlipY(rng.gen_range(0..n)));
            let p = random_prop(&mut rng, n);
            let q = t.apply(&p, theory).unwrap();
            assert_eq!(t.invert().apply(&q, theory).unwrap(), p);
            assert_eq!(t.apply(&p.negate(), theory).unwrap(), q.negate());
        }
    }
}

#[test]
fn compatibility_is_preserved_by_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for theory in THEORIES {
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let t = random_transcript(n, 15, &mut rng);
            let p = random_prop(&mut rng, n);
            let q = random_prop(&mut rng, n);
            let (tp, tq) = (t.apply(&p, theory).unwrap(), t.apply(&q, theory).unwrap());
            assert_eq!(naive_commute(&p, &q), naive_commute(&tp, &tq));
        }
    }
}
