use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::arc::{letter_upper_arc, Arc};
use super::letter::{Letter, COARSE_LETTERS};
use super::word::Word;
use super::CodingError;
use crate::angle::Angle;
use crate::report::{Claim, Report};

/// Per-letter upper and lower arcs. The C entries split into UC (upper) and BC
/// (lower).
#[derive(Debug, Clone)]
pub struct RegionTable {
    rows: Vec<(Letter, Arc, Arc)>,
}

impl RegionTable {
    pub fn standard() -> &'static RegionTable {
        static TABLE: OnceLock<RegionTable> = OnceLock::new();
        TABLE.get_or_init(|| RegionTable {
            rows: COARSE_LETTERS
                .iter()
                .map(|&l| {
                    let up = letter_upper_arc(l);
                    let low = up.conjugate();
                    (l, up, low)
                })
                .collect(),
        })
    }

    pub fn rows(&self) -> &[(Letter, Arc, Arc)] {
        &self.rows
    }

    pub fn upper(&self, l: Letter) -> &Arc {
        &self.row(l).1
    }

    pub fn lower(&self, l: Letter) -> &Arc {
        &self.row(l).2
    }

    fn row(&self, l: Letter) -> &(Letter, Arc, Arc) {
        self.rows
            .iter()
            .find(|r| r.0 == l.coarse())
            .expect("every coarse letter has a row")
    }

    /// For each letter, the set of full-circle sectors `(j/14, (j+1)/14)` its
    /// two arcs cover, read off the exact arcs.
    pub fn sectors_of(&self, l: Letter) -> BTreeSet<u32> {
        let (_, up, low) = self.row(l);
        let mut s = BTreeSet::new();
        for arc in [up, low] {
            let lo = (&arc.lo * BigInt::from(14)).to_integer().to_u32().unwrap();
            let hi = (&arc.hi * BigInt::from(14)).ceil().to_integer().to_u32().unwrap();
            s.extend(lo..hi);
        }
        s
    }

    /// Sectors covered by doubling both arcs of `l`.
    pub fn doubled_sectors(&self, l: Letter) -> BTreeSet<u32> {
        self.sectors_of(l)
            .into_iter()
            .flat_map(|j| [(2 * j) % 14, (2 * j + 1) % 14])
            .collect()
    }

    pub fn target_sectors(&self, l: Letter) -> BTreeSet<u32> {
        l.targets()
            .iter()
            .flat_map(|&t| self.sectors_of(t))
            .collect()
    }

    /// Doubling each letter's arcs covers exactly its transition targets, and
    /// no other assignment of labels to sectors has that property.
    pub fn self_check(&self) -> Result<(), String> {
        let mut covered = BTreeSet::new();
        for &l in &COARSE_LETTERS {
            let s = self.sectors_of(l);
            if !covered.is_disjoint(&s) {
                return Err(format!("{l} overlaps another region"));
            }
            covered.extend(s);
            if self.doubled_sectors(l) != self.target_sectors(l) {
                return Err(format!("doubling {l} misses its transition targets"));
            }
        }
        if covered.len() != 14 {
            return Err("regions do not tile the circle".into());
        }
        let solutions = consistent_arrangements();
        if solutions.len() != 1 {
            return Err(format!("{} arrangements satisfy the table", solutions.len()));
        }
        let ours: Vec<Letter> = (0..7).map(Letter::from_sector).collect();
        if solutions[0] != ours {
            return Err("the unique consistent arrangement differs from the table".into());
        }
        Ok(())
    }
}

/// One claim per letter (doubling its arcs covers exactly its targets), plus
/// tiling and uniqueness of the arrangement.
pub fn verify_regions() -> Report {
    let t = RegionTable::standard();
    let mut r = Report::new();
    for &l in &COARSE_LETTERS {
        let (got, want) = (t.doubled_sectors(l), t.target_sectors(l));
        r.push(Claim::new(
            format!("regions.{l}"),
            format!("doubling D({l}) covers exactly the regions of {:?}", l.targets().iter().map(|x| x.name()).collect::<Vec<_>>()),
            got == want,
            serde_json::json!({ "upper": t.upper(l).to_string(), "lower": t.lower(l).to_string(), "image_sectors": got, "target_sectors": want }),
        ));
    }
    let check = t.self_check();
    r.push(Claim::new(
        "regions.arrangement",
        "the seven regions tile the circle and no other labelling respects the transitions",
        check.is_ok(),
        serde_json::json!({ "error": check.err() }),
    ));
    r
}

/// Every assignment of the seven coarse labels to the upper sectors 0..7
/// (mirrored below) for which doubling respects the transition table.
pub fn consistent_arrangements() -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut perm: Vec<Letter> = COARSE_LETTERS.to_vec();
    permute(&mut perm, 0, &mut out);
    out
}

fn permute(p: &mut Vec<Letter>, k: usize, out: &mut Vec<Vec<Letter>>) {
    if k == p.len() {
        if arrangement_consistent(p) {
            out.push(p.clone());
        }
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, out);
        p.swap(k, i);
    }
}

fn arrangement_consistent(upper: &[Letter]) -> bool {
    let full = |j: u32| -> Letter {
        if j < 7 {
            upper[j as usize]
        } else {
            upper[(13 - j) as usize]
        }
    };
    upper.iter().enumerate().all(|(k, &l)| {
        let k = k as u32;
        let image: BTreeSet<Letter> = [k, 13 - k]
            .into_iter()
            .flat_map(|j| [(2 * j) % 14, (2 * j + 1) % 14])
            .map(full)
            .collect();
        let targets: BTreeSet<Letter> = l.targets().iter().copied().collect();
        image == targets
    })
}

/// `theta` is one of the chord endpoints `k/14`, `k != 0, 7`.
pub fn is_boundary(theta: &Angle) -> bool {
    BigInt::from(14).is_multiple_of(theta.denom())
        && !theta.is_zero()
        && theta != &Angle::half()
}

/// The letter of the region containing `theta`, with UC/BC on the C arcs.
/// Angle 0 belongs to R1 and 1/2 to L1.
pub fn region_of(theta: &Angle) -> Result<Letter, CodingError> {
    if is_boundary(theta) {
        return Err(CodingError::BoundaryAngle {
            angle: theta.to_string(),
            index: 0,
        });
    }
    let j = (theta.as_ratio() * BigInt::from(14))
        .floor()
        .to_integer()
        .to_u32()
        .expect("angle in [0,1)");
    let l = if j < 7 {
        Letter::from_sector(j)
    } else {
        Letter::from_sector(13 - j)
    };
    Ok(match l {
        Letter::C if j < 7 => Letter::UC,
        Letter::C => Letter::BC,
        other => other,
    })
}

/// Letters of `theta, 2 theta, ..., 2^(depth-1) theta`. C-class letters are
/// coarse unless `refine` is set.
pub fn itinerary(theta: &Angle, depth: usize, refine: bool) -> Result<Word, CodingError> {
    let mut t = theta.clone();
    let mut out = Vec::with_capacity(depth);
    for index in 0..depth {
        let l = region_of(&t).map_err(|_| CodingError::BoundaryAngle {
            angle: t.to_string(),
            index,
        })?;
        out.push(if refine { l } else { l.coarse() });
        t = t.double();
    }
    Ok(Word::new(out))
}
