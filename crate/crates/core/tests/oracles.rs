//! Brute-force cross-checks that share no code with the library's arc and
//! leaf computations: itineraries are read off integer grids.

use std::collections::{BTreeSet, HashMap};

use aeroplane_core::coding::{upper_arc, Letter, Word};
use aeroplane_core::families::mating_family;
use aeroplane_core::{Angle, Families};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Letter of the sector containing `n / den`, or `None` on a chord endpoint
/// `k/14` other than 0 and 1/2.
fn grid_letter(n: u64, den: u64) -> Option<Letter> {
    use Letter::*;
    let scaled = 14 * n;
    let s = scaled / den;
    if scaled % den == 0 && n != 0 && 2 * n != den {
        return None;
    }
    let upper = [R1, R2, R3, C, L3, L2, L1];
    Some(if s < 7 { upper[s as usize] } else { upper[(13 - s) as usize] })
}

fn grid_itinerary(mut n: u64, den: u64, len: usize) -> Option<Vec<Letter>> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(grid_letter(n, den)?);
        n = (2 * n) % den;
    }
    Some(out)
}

fn restricted_words(max_len: usize) -> Vec<Word> {
    use Letter::*;
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![vec![L3], vec![L2], vec![R3]];
    for len in 1..=max_len {
        for w in &layer {
            out.push(Word::new(w.clone()));
        }
        for w in &layer {
            if len < max_len && *w.last().unwrap() == L2 {
                let mut c = w.clone();
                c.push(C);
                out.push(Word::new(c));
            }
        }
        let mut next = Vec::new();
        for w in &layer {
            let succ: &[Letter] = match w.last().unwrap() {
                L3 | R3 => &[L3, L2],
                L2 => &[R3],
                _ => &[],
            };
            for &l in succ {
                let mut c = w.clone();
                c.push(l);
                next.push(c);
            }
        }
        layer = next;
    }
    out.push(Word::new(vec![C]));
    out
}

#[test]
fn upper_arcs_match_the_dyadic_hull() {
    const BITS: u32 = 14;
    const MAX_LEN: usize = 10;
    let den = 1u64 << BITS;
    // Hull of grid points in the upper half, indexed by itinerary prefix.
    let mut hull: HashMap<Vec<Letter>, (u64, u64)> = HashMap::new();
    for n in 0..=den / 2 {
        let Some(it) = grid_itinerary(n, den, MAX_LEN) else { continue };
        for m in 1..=MAX_LEN {
            let e = hull.entry(it[..m].to_vec()).or_insert((n, n));
            e.0 = e.0.min(n);
            e.1 = e.1.max(n);
        }
    }
    let grid = |n: u64| BigRational::new(BigInt::from(n), BigInt::from(den));
    let step = grid(1);
    let words = restricted_words(MAX_LEN);
    assert_eq!(words.len(), 748);
    let mut mismatches = Vec::new();
    for w in &words {
        let arc = upper_arc(w).unwrap();
        match hull.get(w.letters()) {
            Some(&(lo, hi)) => {
                let (glo, ghi) = (grid(lo), grid(hi));
                let inside = arc.contains(&glo) && arc.contains(&ghi);
                let tight = &glo - &arc.lo < step && &arc.hi - &ghi < step;
                if !inside || !tight {
                    mismatches.push(format!("{w}: arc {arc}, hull [{lo}, {hi}]/{den}"));
                }
            }
            None => {
                if arc.width() >= step {
                    mismatches.push(format!("{w}: arc {arc} has no grid point"));
                }
            }
        }
    }
    assert!(mismatches.is_empty(), "{} mismatches: {:?}", mismatches.len(), &mismatches[..mismatches.len().min(5)]);
}

#[test]
fn grid_points_inside_an_arc_carry_its_word() {
    // The converse direction: no foreign grid point hides inside an arc.
    let den = 1u64 << 12;
    for w in restricted_words(7) {
        let arc = upper_arc(&w).unwrap();
        for n in 0..=den / 2 {
            let x = BigRational::new(BigInt::from(n), BigInt::from(den));
            if arc.contains(&x) {
                let it = grid_itinerary(n, den, w.len()).expect("interior points avoid chord endpoints");
                assert_eq!(it.as_slice(), w.letters(), "{n}/{den} in {arc}");
            }
        }
    }
}

#[test]
fn level_zero_mating_angles_match_periodic_search() {
    let den: u64 = (1 << 18) - 1;
    let fam = Families::up_to(0);
    let specs = mating_family(&fam, 0).unwrap();
    let words: Vec<&Word> = specs.iter().map(|s| &s.word).collect();
    assert!(words.iter().all(|w| w.len() == 18));
    let mut found = BTreeSet::new();
    for j in den / 2 + 1..den {
        let Some(it) = grid_itinerary(j, den, 18) else { continue };
        if words.iter().any(|w| w.letters() == it.as_slice()) {
            found.insert(Angle::frac(j as i64, den as i64));
        }
    }
    let expected: BTreeSet<Angle> = specs.iter().map(|s| s.q.clone()).collect();
    assert_eq!(expected.len(), 2);
    assert_eq!(found, expected);
    for q in &found {
        assert_eq!(q.orbit_type().period, 18);
        assert_eq!(q.orbit_type().preperiod, 0);
    }
}
