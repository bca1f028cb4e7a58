//! Finite-depth pullbacks of an invariant lamination from its minor leaf.
//!
//! Every angle that appears at depth `d` has denominator dividing `q * 2^d`,
//! where `q` is the odd part of the minor's denominators. Leaves are stored as
//! integer numerator pairs over `q * 2^depth` and converted to exact angles at
//! the boundary of the module.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::angle::Angle;
use crate::coding::{Leaf, Letter, RegionTable};
use crate::report::{Claim, Report};

/// Deepest supported pullback. The last layer holds `2^depth` leaves.
pub const MAX_DEPTH: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaminationError {
    #[error("no minor leaf is known for angle {0}")]
    UnsupportedAngle(String),
    #[error("both pairings of the preimages of {leaf} are valid and equally long")]
    PairingAmbiguity { leaf: String },
    #[error("every pairing of the preimages of {leaf} crosses an existing leaf")]
    NoValidPairing { leaf: String },
    #[error("depth {depth} exceeds the supported maximum {max}")]
    TooDeep { depth: usize, max: usize },
}

/// The minor leaf of the lamination with a periodic endpoint at `p`.
///
/// Only the aeroplane pair 3/7, 4/7 is supported.
pub fn minor_leaf_of(p: &Angle) -> Result<Leaf, LaminationError> {
    let (a, b) = (Angle::frac(3, 7), Angle::frac(4, 7));
    if p == &a || p == &b {
        Ok(Leaf::new(a, b))
    } else {
        Err(LaminationError::UnsupportedAngle(p.to_string()))
    }
}

/// A chord as numerators over the lamination's denominator, `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: u128,
    pub b: u128,
}

impl Chord {
    fn new(x: u128, y: u128) -> Self {
        if x <= y {
            Chord { a: x, b: y }
        } else {
            Chord { a: y, b: x }
        }
    }

    /// Strict interleaving of endpoints.
    pub fn crosses(&self, o: &Chord) -> bool {
        let inside = |t: u128| self.a < t && t < self.b;
        let shared = self.a == o.a || self.a == o.b || self.b == o.a || self.b == o.b;
        !shared && inside(o.a) != inside(o.b)
    }

    /// Shorter arc length between the endpoints, in numerator units.
    fn length(&self, den: u128) -> u128 {
        let d = self.b - self.a;
        d.min(den - d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lamination {
    minor: Leaf,
    depth: usize,
    den: u128,
    /// `layers[d]` holds the depth-`d` leaves, sorted.
    layers: Vec<Vec<Chord>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerSummary {
    pub depth: usize,
    pub leaves: usize,
}

impl Lamination {
    pub fn minor(&self) -> &Leaf {
        &self.minor
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Common denominator of every endpoint.
    pub fn denominator(&self) -> u128 {
        self.den
    }

    pub fn layer(&self, d: usize) -> &[Chord] {
        &self.layers[d]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn chords(&self) -> impl Iterator<Item = &Chord> {
        self.layers.iter().flatten()
    }

    pub fn angle(&self, n: u128) -> Angle {
        Angle::new(BigInt::from(n), BigInt::from(self.den)).expect("nonzero denominator")
    }

    pub fn to_leaf(&self, c: &Chord) -> Leaf {
        Leaf::new(self.angle(c.a), self.angle(c.b))
    }

    /// Every leaf as exact angles, layer by layer.
    pub fn leaves(&self) -> Vec<Leaf> {
        self.chords().map(|c| self.to_leaf(c)).collect()
    }

    pub fn layer_leaves(&self, d: usize) -> Vec<Leaf> {
        self.layers[d].iter().map(|c| self.to_leaf(c)).collect()
    }

    /// Numerator of `theta` over the lamination denominator, if representable.
    pub fn numerator_of(&self, theta: &Angle) -> Option<u128> {
        let den = theta.denom().to_u128()?;
        if self.den % den != 0 {
            return None;
        }
        theta.numer().to_u128().map(|n| n * (self.den / den))
    }

    pub fn chord_of(&self, leaf: &Leaf) -> Option<Chord> {
        Some(Chord::new(self.numerator_of(&leaf.a)?, self.numerator_of(&leaf.b)?))
    }

    pub fn contains(&self, leaf: &Leaf) -> bool {
        self.chord_of(leaf)
            .is_some_and(|c| self.layers.iter().any(|l| l.binary_search(&c).is_ok()))
    }

    /// A copy with `leaf` removed from whichever layer holds it.
    pub fn without(&self, leaf: &Leaf) -> Lamination {
        let mut out = self.clone();
        if let Some(c) = self.chord_of(leaf) {
            for l in &mut out.layers {
                l.retain(|x| *x != c);
            }
        }
        out
    }

    pub fn summary(&self) -> Vec<LayerSummary> {
        self.layers
            .iter()
            .enumerate()
            .map(|(depth, l)| LayerSummary { depth, leaves: l.len() })
            .collect()
    }

    fn double(&self, n: u128) -> u128 {
        (2 * n) % self.den
    }

    fn image(&self, c: &Chord) -> Chord {
        Chord::new(self.double(c.a), self.double(c.b))
    }
}

/// Min and max partner over endpoint positions, for "does chord (a, b) cross
/// any stored chord" queries.
struct CrossIndex {
    pos: Vec<u128>,
    size: usize,
    min: Vec<u128>,
    max: Vec<u128>,
}

impl CrossIndex {
    fn build(chords: &[Chord]) -> Self {
        let mut pts: Vec<(u128, u128)> = chords
            .iter()
            .flat_map(|c| [(c.a, c.b), (c.b, c.a)])
            .collect();
        pts.sort_unstable();
        let size = pts.len().next_power_of_two().max(1);
        let mut min = vec![u128::MAX; 2 * size];
        let mut max = vec![0u128; 2 * size];
        for (i, &(_, p)) in pts.iter().enumerate() {
            min[size + i] = p;
            max[size + i] = p;
        }
        for i in (1..size).rev() {
            min[i] = min[2 * i].min(min[2 * i + 1]);
            max[i] = max[2 * i].max(max[2 * i + 1]);
        }
        CrossIndex {
            pos: pts.into_iter().map(|(x, _)| x).collect(),
            size,
            min,
            max,
        }
    }

    fn range(&self, mut lo: usize, mut hi: usize) -> (u128, u128) {
        let (mut mn, mut mx) = (u128::MAX, 0u128);
        lo += self.size;
        hi += self.size;
        while lo < hi {
            if lo & 1 == 1 {
                mn = mn.min(self.min[lo]);
                mx = mx.max(self.max[lo]);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                mn = mn.min(self.min[hi]);
                mx = mx.max(self.max[hi]);
            }
            lo /= 2;
            hi /= 2;
        }
        (mn, mx)
    }

    /// Some stored chord has one endpoint strictly inside `(c.a, c.b)` and the
    /// other strictly outside `[c.a, c.b]`.
    fn crossed_by(&self, c: &Chord) -> bool {
        let lo = self.pos.partition_point(|&x| x <= c.a);
        let hi = self.pos.partition_point(|&x| x < c.b);
        if lo >= hi {
            return false;
        }
        let (mn, mx) = self.range(lo, hi);
        mn < c.a || mx > c.b
    }
}

/// Sweep-stack test: a chord set is pairwise non-crossing iff reading the
/// endpoints in circular order closes chords in last-opened-first order.
/// Chords sharing an endpoint, and repeated chords, are allowed.
pub fn first_crossing(chords: &[Chord]) -> Option<(Chord, Chord)> {
    let mut chords = chords.to_vec();
    chords.sort_unstable();
    chords.dedup();
    let mut events: Vec<(u128, u8, usize)> = Vec::with_capacity(2 * chords.len());
    for (i, c) in chords.iter().enumerate() {
        if c.a == c.b {
            continue;
        }
        // At a shared point, close before opening; among closes, the
        // innermost (latest start) first; among opens, the outermost first.
        events.push((c.a, 1, i));
        events.push((c.b, 0, i));
    }
    events.sort_by(|x, y| {
        x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then_with(|| {
            let (cx, cy) = (&chords[x.2], &chords[y.2]);
            if x.1 == 0 {
                cy.a.cmp(&cx.a)
            } else {
                cy.b.cmp(&cx.b)
            }
        })
    });
    let mut stack: Vec<usize> = Vec::new();
    for (_, kind, i) in events {
        if kind == 1 {
            stack.push(i);
        } else {
            match stack.pop() {
                Some(j) if j == i => {}
                Some(j) => return Some((chords[j], chords[i])),
                None => unreachable!("close without open"),
            }
        }
    }
    None
}

fn numer_over(theta: &Angle, den: u128) -> u128 {
    let d = theta.denom().to_u128().expect("small denominator");
    theta.numer().to_u128().expect("small numerator") * (den / d)
}

/// Pull `minor` back `depth` times.
///
/// Each leaf `{t1, t2}` of the newest layer has four preimage endpoints
/// `t1/2, t1/2 + 1/2, t2/2, t2/2 + 1/2`; of the two pairings whose chords do not
/// cross each other, keep the one that crosses no earlier leaf, and break a
/// tie by the larger minimum chord length.
pub fn pullback_lamination(minor: &Leaf, depth: usize) -> Result<Lamination, LaminationError> {
    if depth > MAX_DEPTH {
        return Err(LaminationError::TooDeep { depth, max: MAX_DEPTH });
    }
    let q = minor
        .a
        .denom()
        .lcm(minor.b.denom())
        .to_u128()
        .filter(|q| q.leading_zeros() as usize > depth + 8)
        .ok_or(LaminationError::TooDeep { depth, max: MAX_DEPTH })?;
    let den = q << depth;
    let half = den / 2;
    let root = Chord::new(numer_over(&minor.a, den), numer_over(&minor.b, den));
    let mut lam = Lamination {
        minor: minor.clone(),
        depth,
        den,
        layers: vec![vec![root]],
    };
    for _ in 0..depth {
        let all: Vec<Chord> = lam.chords().copied().collect();
        let index = CrossIndex::build(&all);
        let frontier = lam.layers.last().expect("layer 0 exists");
        let mut next = Vec::with_capacity(2 * frontier.len());
        for c in frontier {
            // Halving an angle with numerator n over den is n/2 + offset; the
            // numerators are even because den has a spare factor of 2.
            let (x, y) = (c.a / 2, c.b / 2);
            let pairings = [
                [Chord::new(x, y + half), Chord::new(x + half, y)],
                [Chord::new(x, y), Chord::new(x + half, y + half)],
            ];
            let valid: Vec<&[Chord; 2]> = pairings
                .iter()
                .filter(|p| !p[0].crosses(&p[1]) && !p.iter().any(|n| index.crossed_by(n)))
                .collect();
            let chosen = match valid.as_slice() {
                [] => return Err(LaminationError::NoValidPairing { leaf: lam.to_leaf(c).to_string() }),
                [one] => **one,
                [p, r] => {
                    let score = |p: &[Chord; 2]| p[0].length(den).min(p[1].length(den));
                    match score(p).cmp(&score(r)) {
                        std::cmp::Ordering::Greater => **p,
                        std::cmp::Ordering::Less => **r,
                        std::cmp::Ordering::Equal => {
                            return Err(LaminationError::PairingAmbiguity { leaf: lam.to_leaf(c).to_string() })
                        }
                    }
                }
                _ => unreachable!("two pairings"),
            };
            next.extend(chosen);
        }
        next.sort_unstable();
        next.dedup();
        let mut all = all;
        all.extend(&next);
        if let Some((p, _)) = first_crossing(&all) {
            return Err(LaminationError::NoValidPairing { leaf: lam.to_leaf(&p).to_string() });
        }
        lam.layers.push(next);
    }
    for l in &mut lam.layers {
        l.sort_unstable();
    }
    Ok(lam)
}

/// The two chords bounding the critical region, read from the region table.
pub fn critical_chords() -> [Leaf; 2] {
    let t = RegionTable::standard();
    let (up, low) = (t.upper(Letter::C), t.lower(Letter::C));
    [
        Leaf::new(up.lo_angle(), Angle::from_ratio(low.hi.clone())),
        Leaf::new(up.hi_angle(), low.lo_angle()),
    ]
}

/// Forward and backward invariance, non-crossing, and the presence of the
/// minor leaf.
pub fn check_invariance(lam: &Lamination) -> Report {
    let mut r = Report::new();
    let all: Vec<Chord> = lam.chords().copied().collect();
    let crossing = first_crossing(&all);
    r.push(Claim::new(
        "lamination.noncrossing",
        "leaves are pairwise non-crossing",
        crossing.is_none(),
        json!({ "leaves": all.len(), "witness": crossing.map(|(a, b)| [lam.to_leaf(&a).to_string(), lam.to_leaf(&b).to_string()]) }),
    ));

    let set: std::collections::HashSet<Chord> = all.iter().copied().collect();
    let missing_images: Vec<String> = all
        .iter()
        .filter(|c| !set.contains(&lam.image(c)))
        .take(8)
        .map(|c| lam.to_leaf(c).to_string())
        .collect();
    r.push(Claim::new(
        "lamination.forward",
        "the image of every leaf is a leaf",
        missing_images.is_empty(),
        json!({ "missing": missing_images }),
    ));

    let mut missing_preimages = Vec::new();
    for d in 0..lam.depth {
        let mut counts: HashMap<Chord, usize> = HashMap::new();
        for c in lam.layer(d + 1) {
            *counts.entry(lam.image(c)).or_default() += 1;
        }
        for c in lam.layer(d) {
            let n = counts.get(c).copied().unwrap_or(0);
            if n != 2 {
                missing_preimages.push(json!({ "leaf": lam.to_leaf(c).to_string(), "depth": d, "preimages": n }));
            }
        }
    }
    missing_preimages.truncate(8);
    r.push(Claim::new(
        "lamination.backward",
        "every leaf above the last layer has both preimage leaves",
        missing_preimages.is_empty(),
        json!({ "defects": missing_preimages }),
    ));

    r.push(Claim::new(
        "lamination.minor",
        "the minor leaf belongs to the lamination",
        lam.contains(lam.minor()),
        json!({ "minor": lam.minor().to_string() }),
    ));
    r
}

/// Layer sizes `2^d`, critical chords at depth 1, plus [`check_invariance`].
pub fn verify_lamination(lam: &Lamination) -> Report {
    let mut r = check_invariance(lam);
    let sizes = lam.layer_sizes();
    let exact = sizes.iter().enumerate().all(|(d, &n)| n == 1usize << d);
    r.push(Claim::new(
        "lamination.layers",
        "layer d holds exactly 2^d leaves",
        exact,
        json!({ "sizes": sizes }),
    ));
    if lam.depth() >= 1 {
        let mut want: Vec<Leaf> = critical_chords().to_vec();
        want.sort();
        let got = lam.layer_leaves(1);
        r.push(Claim::new(
            "lamination.critical",
            "the depth-1 leaves bound the critical region",
            got == want,
            json!({ "depth1": got.iter().map(Leaf::to_string).collect::<Vec<_>>(), "critical": want.iter().map(Leaf::to_string).collect::<Vec<_>>() }),
        ));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn leaf(a: (i64, i64), b: (i64, i64)) -> Leaf {
        Leaf::new(Angle::frac(a.0, a.1), Angle::frac(b.0, b.1))
    }

    fn aeroplane(depth: usize) -> Lamination {
        pullback_lamination(&minor_leaf_of(&Angle::frac(3, 7)).unwrap(), depth).unwrap()
    }

    #[test]
    fn minor_leaf_examples() {
        let m = leaf((3, 7), (4, 7));
        assert_eq!(minor_leaf_of(&Angle::frac(3, 7)).unwrap(), m);
        assert_eq!(minor_leaf_of(&Angle::frac(4, 7)).unwrap(), m);
        assert!(matches!(
            minor_leaf_of(&Angle::frac(2, 5)),
            Err(LaminationError::UnsupportedAngle(_))
        ));
    }

    #[test]
    fn depth_zero_and_one() {
        let l0 = aeroplane(0);
        assert_eq!(l0.leaves(), vec![leaf((3, 7), (4, 7))]);
        let l1 = aeroplane(1);
        let mut got = l1.layer_leaves(1);
        got.sort();
        assert_eq!(got, vec![leaf((3, 14), (11, 14)), leaf((2, 7), (5, 7))]);
        let mut crit = critical_chords().to_vec();
        crit.sort();
        assert_eq!(got, crit);
        assert_eq!(aeroplane(2).layer_sizes(), vec![1, 2, 4]);
    }

    #[test]
    fn critical_leaves_map_to_minor() {
        let m = leaf((3, 7), (4, 7));
        for c in critical_chords() {
            assert_eq!(c.image(), m);
        }
    }

    #[test]
    fn depth_eight_is_invariant() {
        let lam = aeroplane(8);
        let rep = verify_lamination(&lam);
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn deleting_a_leaf_breaks_backward_invariance() {
        let lam = aeroplane(6);
        let victim = lam.layer_leaves(3)[1].clone();
        let rep = check_invariance(&lam.without(&victim));
        assert!(!rep.find("lamination.backward").unwrap().passed());
        assert!(rep.find("lamination.noncrossing").unwrap().passed());
    }

    #[test]
    fn depth_cap() {
        let m = leaf((3, 7), (4, 7));
        assert!(matches!(
            pullback_lamination(&m, MAX_DEPTH + 1),
            Err(LaminationError::TooDeep { .. })
        ));
    }

    #[test]
    fn sweep_detects_crossing() {
        let c = |a, b| Chord::new(a, b);
        assert!(first_crossing(&[c(0, 10), c(2, 5), c(5, 8)]).is_none());
        assert!(first_crossing(&[c(0, 10), c(2, 12)]).is_some());
        assert!(first_crossing(&[c(1, 4), c(1, 9), c(4, 9)]).is_none());
    }

    #[test]
    fn periodic_leaves_are_bracketed() {
        // Each region D(w^m) of a restricted periodic word is bounded by two
        // vertical lamination leaves that enclose the periodic leaf.
        use crate::coding::{periodic_leaf, upper_arc, Word};
        let lam = aeroplane(14);
        for code in ["L3", "L2 R3", "L3 L3 L2 R3", "L3 L2 R3 L2 R3"] {
            let w: Word = code.parse().unwrap();
            let pl = periodic_leaf(&w).unwrap();
            let p = w.pow(10 / w.len());
            let arc = upper_arc(&p).unwrap();
            for edge in [arc.lo_angle(), arc.hi_angle()] {
                assert!(lam.contains(&Leaf::vertical(edge.clone())), "{code}: {edge}");
            }
            assert!(arc.contains_angle(pl.upper()), "{code}");
        }
    }

    fn arb_chords() -> impl Strategy<Value = Vec<Chord>> {
        prop::collection::vec((0u128..40, 0u128..40), 0..12).prop_map(|v| {
            v.into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| Chord::new(a, b))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn sweep_agrees_with_pairwise(chords in arb_chords()) {
            let pairwise = chords.iter().enumerate().any(|(i, x)| chords[i + 1..].iter().any(|y| x.crosses(y)));
            prop_assert_eq!(first_crossing(&chords).is_some(), pairwise);
        }

        #[test]
        fn index_agrees_with_pairwise(chords in arb_chords(), a in 0u128..40, b in 0u128..40) {
            prop_assume!(a != b);
            let probe = Chord::new(a, b);
            let idx = CrossIndex::build(&chords);
            prop_assert_eq!(idx.crossed_by(&probe), chords.iter().any(|c| c.crosses(&probe)));
        }

        #[test]
        fn chord_crossing_matches_leaf_crossing(a in 1u128..63, b in 1u128..63, c in 1u128..63, d in 1u128..63) {
            let x = Chord::new(a, b);
            let y = Chord::new(c, d);
            let to = |n: u128| Angle::frac(n as i64, 64);
            let lx = Leaf::new(to(x.a), to(x.b));
            let ly = Leaf::new(to(y.a), to(y.b));
            prop_assert_eq!(x.crosses(&y), lx.crosses(&ly));
        }
    }
}
