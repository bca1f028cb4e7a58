use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CodingError;

/// One of the nine region labels.
///
/// Declaration order follows the upper semicircle from angle 0 to 1/2, so the
/// derived `Ord` on coarse letters is the angular order of their upper arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    R1,
    R2,
    R3,
    C,
    UC,
    BC,
    L3,
    L2,
    L1,
}

pub const ALL_LETTERS: [Letter; 9] = [
    Letter::R1,
    Letter::R2,
    Letter::R3,
    Letter::C,
    Letter::UC,
    Letter::BC,
    Letter::L3,
    Letter::L2,
    Letter::L1,
];

/// The seven coarse letters in upper-semicircle order.
pub const COARSE_LETTERS: [Letter; 7] = [
    Letter::R1,
    Letter::R2,
    Letter::R3,
    Letter::C,
    Letter::L3,
    Letter::L2,
    Letter::L1,
];

impl Letter {
    pub fn is_c_class(self) -> bool {
        matches!(self, Letter::C | Letter::UC | Letter::BC)
    }

    /// UC and BC collapse to C.
    pub fn coarse(self) -> Letter {
        if self.is_c_class() {
            Letter::C
        } else {
            self
        }
    }

    /// L-letters sit on the far side of the vertical through 1/4, so the inverse
    /// branch into them reverses the order of upper angles.
    pub fn reverses_order(self) -> bool {
        matches!(self, Letter::L1 | Letter::L2 | Letter::L3)
    }

    /// Letters allowed in region words of the restricted alphabet.
    pub fn is_restricted(self) -> bool {
        matches!(self, Letter::L3 | Letter::L2 | Letter::R3)
    }

    /// Index `k` of the upper sector `(k/14, (k+1)/14)` occupied by the letter.
    pub fn sector(self) -> u32 {
        match self.coarse() {
            Letter::R1 => 0,
            Letter::R2 => 1,
            Letter::R3 => 2,
            Letter::C => 3,
            Letter::L3 => 4,
            Letter::L2 => 5,
            Letter::L1 => 6,
            _ => unreachable!(),
        }
    }

    pub fn from_sector(k: u32) -> Letter {
        COARSE_LETTERS[k as usize]
    }

    /// Coarse letters whose regions the doubling map sends this region onto.
    pub fn targets(self) -> &'static [Letter] {
        use Letter::*;
        match self {
            R1 | L1 => &[R1, R2],
            R2 | L2 => &[R3, C],
            R3 | L3 => &[L3, L2],
            C | UC | BC => &[L1],
        }
    }

    pub fn may_precede(self, next: Letter) -> bool {
        self.targets().contains(&next.coarse())
    }

    pub fn name(self) -> &'static str {
        use Letter::*;
        match self {
            R1 => "R1",
            R2 => "R2",
            R3 => "R3",
            C => "C",
            UC => "UC",
            BC => "BC",
            L3 => "L3",
            L2 => "L2",
            L1 => "L1",
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Letter {
    type Err = CodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_LETTERS
            .iter()
            .copied()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CodingError::Parse(format!("unknown letter {s:?}")))
    }
}
