//! Nine-region symbolic dynamics of the aeroplane map: region table,
//! itineraries, region arcs, the word order, precritical points and leaves
//! coded by periodic words.

mod arc;
mod leaf;
mod letter;
mod point;
mod region;
mod word;

use thiserror::Error;

pub use arc::{
    between_letters, compare_letters, compare_regions, letter_upper_arc, lower_arc, region_arc, strictly_between, upper_arc,
    word_less, word_less_by_arcs, Arc,
};
pub use leaf::{periodic_leaf, Leaf};
pub use letter::{Letter, ALL_LETTERS, COARSE_LETTERS};
pub use point::{PrecriticalPoint, CRITICAL_CYCLE};
pub use region::{consistent_arrangements, is_boundary, itinerary, region_of, verify_regions, RegionTable};
pub use word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodingError {
    #[error("angle {angle} at iterate {index} is a region boundary")]
    BoundaryAngle { angle: String, index: usize },
    #[error("word {word:?} breaks the transition table after letter {position}")]
    InadmissibleWord { word: String, position: usize },
    #[error("word {word:?} uses letters outside L3, L2, R3 and a final C")]
    UnsupportedAlphabet { word: String },
    #[error("{left:?} and {right:?} are prefix-related")]
    PrefixRelated { left: String, right: String },
    #[error("word {word:?} does not end in C")]
    MissingFinalC { word: String },
    #[error("word {word:?} has a C-class letter before its end")]
    EarlyC { word: String },
    #[error("word {word:?} is not admissible as a cycle")]
    InadmissibleCycle { word: String },
    #[error("{0}")]
    Parse(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ang(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn table_self_check_passes() {
        RegionTable::standard().self_check().unwrap();
        assert_eq!(consistent_arrangements().len(), 1);
    }

    #[test]
    fn region_examples() {
        assert_eq!(region_of(&ang("5/16")).unwrap(), Letter::L3);
        assert_eq!(region_of(&ang("1/4")).unwrap(), Letter::UC);
        assert_eq!(region_of(&ang("3/4")).unwrap(), Letter::BC);
        assert!(matches!(
            region_of(&ang("3/7")),
            Err(CodingError::BoundaryAngle { .. })
        ));
        assert_eq!(region_of(&Angle::zero()).unwrap(), Letter::R1);
        assert_eq!(region_of(&Angle::half()).unwrap(), Letter::L1);
    }

    #[test]
    fn itinerary_examples() {
        assert_eq!(
            itinerary(&ang("5/16"), 6, false).unwrap().to_string(),
            "L3 L2 C L1 R1 R1"
        );
        assert_eq!(itinerary(&Angle::zero(), 3, false).unwrap(), w("R1 R1 R1"));
        assert_eq!(
            itinerary(&ang("3/7"), 1, false),
            Err(CodingError::BoundaryAngle {
                angle: "3/7".into(),
                index: 0
            })
        );
        match itinerary(&ang("3/14"), 4, false) {
            Err(CodingError::BoundaryAngle { index, .. }) => assert_eq!(index, 0),
            other => panic!("{other:?}"),
        }
        match itinerary(&ang("3/28"), 4, false) {
            Err(CodingError::BoundaryAngle { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            itinerary(&ang("1/4"), 2, true).unwrap(),
            w("UC L1")
        );
    }

    #[test]
    fn admissibility_examples() {
        assert!(w("L2 R3").is_admissible());
        assert!(!w("C R3").is_admissible());
        assert!(w("L3 L2 C").is_admissible());
        assert!(w("UC L1").is_admissible());
        assert!(Word::parse_admissible("C R3").is_err());
    }

    #[test]
    fn parser_forms() {
        assert_eq!(w("L3.L2.R3.L3^5").len(), 8);
        assert_eq!(w("L3 L2 R3 C"), w("L3L2R3C"));
        assert_eq!(w("L3(L2R3)^2"), w("L3 L2 R3 L2 R3"));
        assert_eq!(w(""), Word::empty());
        assert!("L4".parse::<Word>().is_err());
        assert!("(L3".parse::<Word>().is_err());
        assert_eq!(w("L3^5").compact(), "L3^5");
        assert_eq!(w("L3 L2 R3 L3 L3").compact(), "L3.L2.R3.L3^2");
    }

    #[test]
    fn upper_arc_examples() {
        let s = |x: &str| upper_arc(&w(x)).unwrap().to_string();
        assert_eq!(s("L3 L2 R3 L3"), "(2/7, 33/112)");
        assert_eq!(s("L3"), "(2/7, 5/14)");
        assert_eq!(s("L3 L3"), "(9/28, 5/14)");
        assert_eq!(s("L3 (L2 R3)^2"), "(67/224, 17/56)");
        assert_eq!(s("L3^5"), "(37/112, 75/224)");
        assert!(matches!(
            upper_arc(&w("L3 R1")),
            Err(CodingError::InadmissibleWord { .. })
        ));
        assert!(matches!(
            upper_arc(&w("R1 R2")),
            Err(CodingError::UnsupportedAlphabet { .. })
        ));
        assert_eq!(
            lower_arc(&w("L3")).unwrap().to_string(),
            "(9/14, 5/7)"
        );
    }

    #[test]
    fn word_less_examples() {
        let a = w("L3 (L2 R3)^2");
        let b = w("L3^5");
        assert!(word_less(&a, &b).unwrap());
        assert!(!word_less(&b, &a).unwrap());
        assert!(matches!(
            word_less(&w("L3"), &w("L3 L2")),
            Err(CodingError::PrefixRelated { .. })
        ));
    }

    #[test]
    fn precritical_point_examples() {
        let p = PrecriticalPoint::new(w("C")).unwrap();
        assert_eq!(p.preperiod(), 0);
        assert_eq!(p.full_itinerary(3), w("C L1 R2"));
        assert_eq!(p.full_itinerary(1), w("C"));
        let q = PrecriticalPoint::new(w("L2 C")).unwrap();
        assert_eq!(q.full_itinerary(8), w("L2 C L1 R2 C L1 R2 C"));
        assert_eq!(q.preperiod(), 1);
        assert_eq!(PrecriticalPoint::new(w("L1 R2 C")).unwrap().preperiod(), 0);
        assert_eq!(
            PrecriticalPoint::new(w("L3 L2 R3 L3 L2 C")).unwrap().preperiod(),
            5
        );
        assert!(matches!(
            PrecriticalPoint::new(w("L3 L2")),
            Err(CodingError::MissingFinalC { .. })
        ));
        assert!(matches!(
            PrecriticalPoint::new(w("L3 R3 C")),
            Err(CodingError::InadmissibleWord { .. })
        ));
        assert!(!p.in_region(&w("L3")));
    }

    #[test]
    fn periodic_leaf_examples() {
        let l = periodic_leaf(&w("L3 L2 R3")).unwrap();
        assert_eq!((l.a.to_string(), l.b.to_string()), ("2/7".into(), "5/7".into()));
        let l = periodic_leaf(&w("L3")).unwrap();
        assert_eq!((l.a.to_string(), l.b.to_string()), ("1/3".into(), "2/3".into()));
        let l = periodic_leaf(&w("R1")).unwrap();
        assert!(l.is_degenerate());
        assert_eq!(l.a, Angle::zero());
        assert!(matches!(
            periodic_leaf(&w("L3 L2")),
            Err(CodingError::InadmissibleCycle { .. })
        ));
    }

    #[test]
    fn leaf_crossing() {
        let l = |x: &str, y: &str| Leaf::new(ang(x), ang(y));
        assert!(l("1/8", "5/8").crosses(&l("3/8", "7/8")));
        assert!(!l("1/8", "5/8").crosses(&l("1/8", "3/8")));
        assert!(!l("1/8", "3/8").crosses(&l("5/8", "7/8")));
    }

    fn restricted_word() -> impl Strategy<Value = Word> {
        (0usize..3, proptest::collection::vec(0usize..2, 0..24), any::<bool>()).prop_map(
            |(start, choices, final_c)| {
                use Letter::*;
                let mut v = vec![[L3, L2, R3][start]];
                for c in choices {
                    let next = match v.last().unwrap() {
                        L3 | R3 => [L3, L2][c],
                        _ => R3,
                    };
                    v.push(next);
                }
                if final_c {
                    if *v.last().unwrap() == L2 {
                        v.push(C);
                    } else {
                        v.push(L2);
                        v.push(C);
                    }
                }
                Word::new(v)
            },
        )
    }

    proptest! {
        #[test]
        fn symbolic_order_matches_arc_order(v in restricted_word(), u in restricted_word()) {
            prop_assume!(!v.prefix_related(&u));
            prop_assert_eq!(word_less(&v, &u).unwrap(), word_less_by_arcs(&v, &u).unwrap());
        }

        #[test]
        fn order_is_antisymmetric(v in restricted_word(), u in restricted_word()) {
            prop_assume!(!v.prefix_related(&u));
            prop_assert_ne!(word_less(&v, &u).unwrap(), word_less(&u, &v).unwrap());
        }

        #[test]
        fn order_is_transitive(a in restricted_word(), b in restricted_word(), c in restricted_word()) {
            prop_assume!(!a.prefix_related(&b) && !b.prefix_related(&c) && !a.prefix_related(&c));
            if word_less(&a, &b).unwrap() && word_less(&b, &c).unwrap() {
                prop_assert!(word_less(&a, &c).unwrap());
            }
        }

        #[test]
        fn extending_a_word_nests_its_arc(v in restricted_word()) {
            prop_assume!(v.len() >= 2 && v.is_admissible());
            let outer = upper_arc(&v.prefix(v.len() - 1)).unwrap();
            let inner = upper_arc(&v).unwrap();
            prop_assert!(outer.lo <= inner.lo && inner.hi <= outer.hi);
            prop_assert!(inner.width() < outer.width());
        }

        #[test]
        fn arc_interior_has_the_word_as_itinerary(v in restricted_word(), num in 1u32..1000) {
            let arc = upper_arc(&v).unwrap();
            let t = &arc.lo + arc.width() * num_rational::BigRational::new(num.into(), 1001.into());
            let theta = Angle::from_ratio(t);
            let it = itinerary(&theta, v.len(), false).unwrap();
            let coarse: Word = v.letters().iter().map(|l| l.coarse()).collect();
            prop_assert_eq!(it, coarse);
            let low = lower_arc(&v).unwrap();
            prop_assert!(low.contains_angle(&theta.conjugate()));
        }

        #[test]
        fn compact_and_spaced_forms_reparse(v in restricted_word()) {
            prop_assert_eq!(v.compact().parse::<Word>().unwrap(), v.clone());
            prop_assert_eq!(v.to_string().parse::<Word>().unwrap(), v);
        }

        #[test]
        fn periodic_leaf_endpoints_are_periodic(v in restricted_word()) {
            prop_assume!(!v.ends_in_c() && v.last().unwrap().may_precede(v.first().unwrap()));
            let leaf = periodic_leaf(&v).unwrap();
            let o = leaf.upper().orbit_type();
            prop_assert_eq!(o.preperiod, 0);
            // An odd number of L-letters swaps the two endpoints.
            let flips = v.letters().iter().filter(|l| l.reverses_order()).count() % 2 == 1;
            let cycle = if flips { 2 * v.len() } else { v.len() };
            prop_assert_eq!(cycle % o.period, 0);
            prop_assert_eq!(flips, leaf.upper().double_n(v.len()) == *leaf.lower());
            prop_assert_eq!(leaf.lower().orbit_type(), o);
            for m in 1..4 {
                let arc = upper_arc(&v.pow(m)).unwrap();
                let x = leaf.upper().as_ratio();
                prop_assert!(&arc.lo <= x && x <= &arc.hi);
            }
        }
    }
}
