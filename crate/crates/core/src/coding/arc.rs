use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::letter::Letter;
use super::word::Word;
use super::CodingError;
use crate::angle::{ratio_serde, Angle};

/// A circular interval `lo..hi` with `0 <= lo < hi <= 1`, stored as reals so
/// that the lower trace of D(R1) can end at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    #[serde(with = "ratio_serde")]
    pub lo: BigRational,
    #[serde(with = "ratio_serde")]
    pub hi: BigRational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl Arc {
    pub fn open(lo: BigRational, hi: BigRational) -> Self {
        Arc {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// Open arc `(lo/den, hi/den)` from small integers.
    pub fn from_fracs(lo: i64, hi: i64, den: i64) -> Self {
        Arc::open(
            BigRational::new(lo.into(), den.into()),
            BigRational::new(hi.into(), den.into()),
        )
    }

    pub fn lo_angle(&self) -> Angle {
        Angle::from_ratio(self.lo.clone())
    }

    pub fn hi_angle(&self) -> Angle {
        Angle::from_ratio(self.hi.clone())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    pub fn contains_angle(&self, t: &Angle) -> bool {
        self.contains(t.as_ratio())
    }

    /// `self` lies inside the open interval `(lo, hi)`.
    pub fn inside_open(&self, lo: &BigRational, hi: &BigRational) -> bool {
        &self.lo >= lo && &self.hi <= hi && !(self.lo_closed && &self.lo == lo)
            && !(self.hi_closed && &self.hi == hi)
    }

    pub fn conjugate(&self) -> Arc {
        Arc {
            lo: BigRational::one() - &self.hi,
            hi: BigRational::one() - &self.lo,
            lo_closed: self.hi_closed,
            hi_closed: self.lo_closed,
        }
    }

    /// Image under the inverse branch labelled by `prefix`: halving for
    /// R-letters, `(1 - theta)/2` for L-letters.
    pub fn pull_back_through(&self, prefix: Letter) -> Result<Arc, CodingError> {
        if prefix.is_c_class() {
            return Err(CodingError::UnsupportedAlphabet {
                word: prefix.to_string(),
            });
        }
        let two = BigInt::from(2);
        Ok(if prefix.reverses_order() {
            Arc {
                lo: (BigRational::one() - &self.hi) / &two,
                hi: (BigRational::one() - &self.lo) / &two,
                lo_closed: self.hi_closed,
                hi_closed: self.lo_closed,
            }
        } else {
            Arc {
                lo: &self.lo / &two,
                hi: &self.hi / &two,
                lo_closed: self.lo_closed,
                hi_closed: self.hi_closed,
            }
        })
    }

    /// Pull back through every letter of `prefix`, last letter first.
    ///
    /// Works on integer numerators over a doubling denominator and reduces
    /// once at the end, so long words stay quadratic in their length.
    pub fn pull_back_word(&self, prefix: &[Letter]) -> Result<Arc, CodingError> {
        if let Some(l) = prefix.iter().find(|l| l.is_c_class()) {
            return Err(CodingError::UnsupportedAlphabet { word: l.to_string() });
        }
        let mut den = self.lo.denom().lcm(self.hi.denom());
        let mut lo = self.lo.numer() * (&den / self.lo.denom());
        let mut hi = self.hi.numer() * (&den / self.hi.denom());
        let (mut lo_closed, mut hi_closed) = (self.lo_closed, self.hi_closed);
        for &l in prefix.iter().rev() {
            if l.reverses_order() {
                (lo, hi) = (&den - &hi, &den - &lo);
                std::mem::swap(&mut lo_closed, &mut hi_closed);
            }
            den <<= 1u32;
        }
        Ok(Arc {
            lo: BigRational::new(lo, den.clone()),
            hi: BigRational::new(hi, den),
            lo_closed,
            hi_closed,
        })
    }

    /// Disjoint from `other` up to a shared endpoint, and to its right
    /// (smaller angles).
    pub fn right_of(&self, other: &Arc) -> bool {
        self.hi <= other.lo
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}/{}, {}/{}{}",
            if self.lo_closed { "[" } else { "(" },
            self.lo.numer(),
            self.lo.denom(),
            self.hi.numer(),
            self.hi.denom(),
            if self.hi_closed { "]" } else { ")" }
        )
    }
}

/// Upper trace of a single letter's region.
pub fn letter_upper_arc(l: Letter) -> Arc {
    let k = l.sector() as i64;
    let mut arc = Arc::from_fracs(k, k + 1, 14);
    if l == Letter::R1 {
        arc.lo_closed = true;
    }
    if l == Letter::L1 {
        arc.hi_closed = true;
        arc.hi = half();
    }
    arc
}

/// Upper trace of D(w) for any admissible word whose letters before the last
/// are not C-class. Used internally for lifted discs with R1, R2, L1 letters.
pub fn region_arc(w: &Word) -> Result<Arc, CodingError> {
    let (last, init) = w
        .letters()
        .split_last()
        .ok_or_else(|| CodingError::Parse("empty word has no region".into()))?;
    w.check_admissible()?;
    letter_upper_arc(*last).pull_back_word(init)
}

fn require_restricted(w: &Word) -> Result<(), CodingError> {
    if w.is_empty() || !w.is_restricted() {
        return Err(CodingError::UnsupportedAlphabet {
            word: w.to_string(),
        });
    }
    Ok(())
}

/// The trace of D(w) on the upper semicircle.
pub fn upper_arc(w: &Word) -> Result<Arc, CodingError> {
    w.check_admissible()?;
    require_restricted(w)?;
    region_arc(w)
}

pub fn lower_arc(w: &Word) -> Result<Arc, CodingError> {
    upper_arc(w).map(|a| a.conjugate())
}

/// Symbolic comparison of region positions: `Less` means D(v) is to the
/// right of D(w). `None` when one word is a prefix of the other.
///
/// After the first differing letter the two regions occupy different
/// sectors, and each shared prefix letter either preserves or reverses the
/// order of upper angles.
pub fn compare_regions(v: &Word, w: &Word) -> Option<Ordering> {
    compare_letters(v.letters(), w.letters())
}

/// [`compare_regions`] on raw letter slices.
pub fn compare_letters(v: &[Letter], w: &[Letter]) -> Option<Ordering> {
    let mut reversed = false;
    for (x, y) in v.iter().zip(w) {
        if x.coarse() != y.coarse() {
            let ord = x.sector().cmp(&y.sector());
            return Some(if reversed { ord.reverse() } else { ord });
        }
        if x.reverses_order() {
            reversed = !reversed;
        }
    }
    None
}

/// `v < w`: D(v) lies to the right of D(w).
pub fn word_less(v: &Word, w: &Word) -> Result<bool, CodingError> {
    require_restricted(v)?;
    require_restricted(w)?;
    match compare_regions(v, w) {
        Some(o) => Ok(o == Ordering::Less),
        None => Err(CodingError::PrefixRelated {
            left: v.to_string(),
            right: w.to_string(),
        }),
    }
}

/// The definition of the order read off the exact arcs.
pub fn word_less_by_arcs(v: &Word, w: &Word) -> Result<bool, CodingError> {
    if v.prefix_related(w) {
        return Err(CodingError::PrefixRelated {
            left: v.to_string(),
            right: w.to_string(),
        });
    }
    Ok(upper_arc(v)?.hi <= upper_arc(w)?.lo)
}

/// `lo < s < hi` in the region order, with `s` over the restricted alphabet.
/// Prefix-related pairs are never between.
pub fn strictly_between(s: &Word, lo: &Word, hi: &Word) -> bool {
    between_letters(s.letters(), lo.letters(), hi.letters())
}

pub fn between_letters(s: &[Letter], lo: &[Letter], hi: &[Letter]) -> bool {
    let restricted = match s.split_last() {
        None => false,
        Some((last, init)) => {
            init.iter().all(|l| l.is_restricted()) && (last.is_restricted() || last.is_c_class())
        }
    };
    restricted
        && compare_letters(lo, s) == Some(Ordering::Less)
        && compare_letters(s, hi) == Some(Ordering::Less)
}
