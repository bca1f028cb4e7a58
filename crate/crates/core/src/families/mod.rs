//! The word families behind the capture and mating constructions, their
//! substitutions, and exhaustive checks of the combinatorial facts about them.

mod base;
mod capture;
mod eau;
mod lengths;
mod level;
mod mating;
mod substitute;
mod verify;

use serde_json::json;
use thiserror::Error;

pub use base::{opening, BaseWords};
pub use capture::{capture_family, capture_window, verify_captures, CaptureSpec};
pub use eau::{
    check_eau_conditions, check_pair, eau_conditions, list_exchangeable_pairs,
    search_decompositions, verify_pairs, Decomposition, EauOutcome, ExchangeablePair,
};
pub use lengths::{length_report, length_table, LengthRow};
pub use level::{build_level, Families, FamilyLevel};
pub use mating::{mating_family, mating_window, verify_matings, MatingSpec};
pub use substitute::{
    capture_substitution, mating_substitution, substitute, substitute_before_markers,
    substituted_words, Source, SubstitutedWords, Substitution,
};
pub use verify::{verify_occurrences, verify_order_chain, verify_suffix_set, verify_suffix_sets};

use crate::coding::CodingError;
use crate::report::{Claim, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("substitution sites overlap at position {position}")]
    OverlapDetected { position: usize },
    #[error("occurrence of {marker} at {position} is not preceded by a")]
    UnmarkedOccurrence { marker: String, position: usize },
    #[error("{word} leaves its window: {arc}")]
    WindowViolation { word: String, arc: String },
    #[error("the leaf coded by ({word})^inf is degenerate")]
    DegenerateLeaf { word: String },
    #[error("levels k = {k}, n = {n} are out of range")]
    InvalidLevels { k: usize, n: usize },
    #[error("capture and mating substitutions disagree on w at k = {k}, n = {n}")]
    InconsistentSubstitution { k: usize, n: usize },
    #[error(transparent)]
    Coding(#[from] CodingError),
}

/// The level-0 configuration passes all eight conditions, every listed pair
/// passes its checks, and `v_n u_n` has at least `n + 1` decompositions.
pub fn verify_eau(fam: &Families, max_n: usize, max_j: usize) -> Report {
    let base = fam.base();
    let pairs = list_exchangeable_pairs(max_j);
    let mut r = Report::new();
    let e = opening();
    let out = eau_conditions(&e, &base.a, &base.b, &base.u0, &pairs);
    r.push(Claim::new(
        "eau.base",
        "(e, a, u) = (L3 L2 R3, a, u0) satisfies conditions 1 to 8",
        out.all(),
        json!({ "failed": out.failed() }),
    ));
    let bad = eau_conditions(&e, &base.a, &base.b, &base.c, &pairs);
    r.push(Claim::new(
        "eau.counterexample",
        "u = c violates the order sandwich eau < u < eb",
        bad.failed() == vec![5],
        json!({ "failed": bad.failed() }),
    ));
    r.extend(verify_pairs(max_j));
    for n in 0..=max_n.min(fam.max_level()) {
        let l = fam.level(n);
        let found = search_decompositions(&l.v.cat(&l.u), &pairs);
        r.push(Claim::new(
            format!("eau.search.n{n}"),
            format!("v_{n} u_{n} has at least {} decompositions e a u", n + 1),
            found.len() > n,
            json!({ "n": n, "length": l.v.len() + l.u.len(), "count": found.len(), "positions": found.iter().map(|d| d.position).collect::<Vec<_>>() }),
        ));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{upper_arc, word_less, Word};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn base_words() {
        let b = BaseWords::new();
        assert_eq!((b.a.len(), b.b.len(), b.c.len(), b.d.len()), (5, 5, 5, 7));
        for x in [&b.a, &b.b, &b.d, &b.v0, &b.w0, &b.t0] {
            assert_eq!(x.l_count() % 2, 1, "{x}");
        }
        assert_eq!((b.c.l_count(), b.u0.l_count()), (4, 4));
        assert_eq!(upper_arc(&b.a).unwrap().to_string(), "(67/224, 17/56)");
        assert_eq!(upper_arc(&b.b).unwrap().to_string(), "(37/112, 75/224)");
        assert!(word_less(&b.a, &b.d).unwrap());
        assert!(word_less(&b.d, &b.c).unwrap());
        assert!(word_less(&b.c, &b.b).unwrap());
    }

    #[test]
    fn level_lengths() {
        let f = Families::up_to(8);
        let v: Vec<usize> = f.levels().iter().map(|l| l.v.len()).collect();
        assert_eq!(v, [8, 23, 53, 113, 233, 473, 953, 1913, 3833]);
        assert_eq!(f.level(0).t.len(), 10);
        assert_eq!(f.level(1).t.len(), 25);
        for l in f.levels() {
            assert_eq!(l.t.len(), l.v.len() + 2);
            assert_eq!(l.v.len() + l.t.len(), 30 * (1 << l.k) - 12);
            if l.k > 0 {
                assert_eq!(l.u.len(), l.v.len());
            }
        }
        assert_eq!(build_level(2), f.level(2).clone());
    }

    #[test]
    fn substitution_at_level_zero_gives_w0() {
        let f = Families::up_to(3);
        let (w00, u00, sites) = capture_substitution(&f, 0, 0).unwrap();
        assert_eq!(w00, f.base().w0);
        assert_eq!(u00, f.base().u0);
        assert_eq!(sites, vec![3]);
        let (w, r, _) = mating_substitution(&f, 0, 0).unwrap();
        assert_eq!(w, f.base().w0);
        assert_eq!(r, f.base().t0);
    }

    #[test]
    fn substitution_k0_n1_changes_two_blocks_of_v1() {
        let f = Families::up_to(1);
        let (w01, _, sites) = capture_substitution(&f, 0, 1).unwrap();
        assert_eq!(sites, vec![3, 18, 26]);
        let v1 = &f.level(1).v;
        let changed: Vec<usize> = (0..v1.len()).filter(|&i| v1[i] != w01[i]).collect();
        let blocks: std::collections::BTreeSet<usize> =
            changed.iter().map(|&i| sites.iter().rev().find(|&&s| s <= i).copied().unwrap()).collect();
        assert_eq!(blocks.len(), 2);
    }

    #[test]
    fn diagonal_substitution_gives_the_level_words() {
        let f = Families::up_to(5);
        for n in 0..=5 {
            let (w, u, _) = capture_substitution(&f, n, n).unwrap();
            assert_eq!(w, f.level(n).w);
            assert_eq!(u, f.level(n).u);
        }
    }

    #[test]
    fn substituted_words_agree_between_constructions() {
        let f = Families::up_to(6);
        for n in 0..=6 {
            for k in 0..=n {
                let s = substituted_words(&f, k, n).unwrap();
                assert_eq!(s.w_kn.len(), f.level(n).v.len());
                assert_eq!(s.u_kn.len(), f.level(n).u.len());
                assert_eq!(s.r_kn.len(), f.level(n).t.len());
                for word in [&s.w_kn, &s.u_kn, &s.r_kn] {
                    assert!(word.is_admissible());
                }
                assert_eq!(substitute(&f, k, n, Source::T).unwrap(), s.r_kn);
            }
        }
        assert!(matches!(
            capture_substitution(&f, 2, 1),
            Err(FamilyError::InvalidLevels { .. })
        ));
    }

    #[test]
    fn substitution_rejects_unmarked_and_overlapping_sites() {
        let a = w("L3 L2");
        let b = w("L3 L3");
        let m = w("R3");
        assert!(matches!(
            substitute_before_markers(&w("L3 L3 L2 R3"), &a, &b, &[&w("L3 L2")]),
            Err(FamilyError::UnmarkedOccurrence { .. })
        ));
        let ok = substitute_before_markers(&w("L3 L2 R3"), &a, &b, &[&m]).unwrap();
        assert_eq!(ok.word, w("L3 L3 R3"));
        let aa = w("L3 L3");
        assert!(matches!(
            substitute_before_markers(&w("L3 L3 L3 L2"), &aa, &w("L2 R3"), &[&w("L3 L2"), &w("L2")]),
            Err(FamilyError::OverlapDetected { .. })
        ));
    }

    #[test]
    fn order_chain_and_occurrences() {
        let f = Families::up_to(8);
        let r = verify_order_chain(&f, 8);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = verify_occurrences(&f, 4);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(
            r.find("occurrences.k1.vt").unwrap().witness["found"],
            json!([0, 23])
        );
    }

    #[test]
    fn suffix_sets_small_levels() {
        let f = Families::up_to(3);
        let r = verify_suffix_sets(&f, 3).unwrap();
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn capture_level_zero() {
        let f = Families::up_to(2);
        let c = capture_family(&f, 0).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|s| s.preperiod == 13));
        assert_eq!(capture_family(&f, 2).unwrap().len(), 4);
        assert!(verify_captures(&f, 2).all_pass());
    }

    #[test]
    fn mating_level_zero() {
        let f = Families::up_to(1);
        let m = mating_family(&f, 0).unwrap();
        assert_eq!(m.len(), 2);
        for s in &m {
            assert_eq!((s.orbit.preperiod, s.orbit.period), (0, 18));
        }
        assert_ne!(m[0].q, m[1].q);
        assert!(verify_matings(&f, 1).all_pass());
    }

    #[test]
    fn length_report_flags_closed_forms() {
        let f = Families::up_to(3);
        let r = length_report(&f, 3);
        assert!(r.all_pass());
        assert_eq!(r.find("lengths.n0.v").unwrap().status, crate::report::Status::Pass);
        assert_eq!(r.find("lengths.n0.t").unwrap().status, crate::report::Status::Pass);
        assert_eq!(r.find("lengths.n1.v").unwrap().status, crate::report::Status::Flagged);
        assert_eq!(r.find("lengths.n1.v+t").unwrap().status, crate::report::Status::Pass);
    }

    #[test]
    fn eau_examples() {
        let f = Families::up_to(4);
        let b = f.base();
        let pairs = list_exchangeable_pairs(3);
        let e = opening();
        assert!(eau_conditions(&e, &b.a, &b.b, &b.u0, &pairs).all());
        assert!(eau_conditions(&e, &b.a, &b.b, &b.u0, &pairs).0[1]);
        assert_eq!(eau_conditions(&e, &b.a, &b.b, &b.c, &pairs).failed(), vec![5]);
        assert_eq!(eau_conditions(&e, &b.a, &b.b, &b.t0, &pairs).failed(), vec![3]);
        assert_eq!(pairs[0].a, b.a);
        assert_eq!(pairs[0].b, b.b);
        assert!(verify_pairs(3).all_pass());
        assert!(search_decompositions(&Word::empty(), &pairs).is_empty());
        let r = verify_eau(&f, 3, 3);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        let l = f.level(3);
        let pos: Vec<usize> = search_decompositions(&l.v.cat(&l.u), &pairs)
            .iter()
            .map(|d| d.position)
            .collect();
        assert_eq!(pos, vec![3, 18, 48, 108]);
    }

    proptest! {
        #[test]
        fn substitution_is_idempotent_and_length_preserving(n in 0usize..5, k in 0usize..5) {
            prop_assume!(k <= n);
            let f = Families::up_to(n);
            let b = f.base();
            let (lk, ln) = (f.level(k), f.level(n));
            let y = ln.v.cat(&ln.u);
            let once = substitute_before_markers(&y, &b.a, &b.b, &[&lk.v, &lk.t, &ln.u]).unwrap();
            prop_assert_eq!(once.word.len(), y.len());
            let twice = substitute_before_markers(&once.word, &b.a, &b.b, &[&lk.v, &lk.t, &ln.u]).unwrap();
            prop_assert_eq!(twice.word, once.word);
        }

        #[test]
        fn suffix_sets_grow_as_k_decreases(n in 1usize..4) {
            let f = Families::up_to(n);
            let counts: Vec<u64> = (0..=n)
                .map(|k| verify_suffix_set(&f, n, k).unwrap().witness["between"].as_u64().unwrap())
                .collect();
            for k in 1..n {
                prop_assert!(counts[k - 1] >= counts[k]);
            }
        }
    }
}
