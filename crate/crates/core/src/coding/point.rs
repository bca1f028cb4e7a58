use serde::{Deserialize, Serialize};

use super::letter::Letter;
use super::word::Word;
use super::CodingError;

/// The itinerary of the critical point 0 after its own letter.
pub const CRITICAL_CYCLE: [Letter; 3] = [Letter::L1, Letter::R2, Letter::C];

/// p(w): the point of lowest preperiod in the backward orbit of 0 inside D(w).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecriticalPoint {
    word: Word,
    preperiod: usize,
}

impl PrecriticalPoint {
    pub fn new(w: Word) -> Result<Self, CodingError> {
        if !w.ends_in_c() {
            return Err(CodingError::MissingFinalC { word: w.to_string() });
        }
        if w.letters()[..w.len() - 1].iter().any(|l| l.is_c_class()) {
            return Err(CodingError::EarlyC { word: w.to_string() });
        }
        w.check_admissible()?;
        let preperiod = if is_cycle_word(&w) { 0 } else { w.len() - 1 };
        Ok(PrecriticalPoint { word: w, preperiod })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Steps to reach 0. The three points of the critical cycle, coded by C,
    /// R2 C and L1 R2 C, are periodic and have preperiod 0.
    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    /// The word followed by the cycle `(L1 R2 C)^inf`, truncated to `depth`.
    pub fn full_itinerary(&self, depth: usize) -> Word {
        let mut out: Vec<Letter> = self.word.letters().iter().map(|l| l.coarse()).collect();
        let mut i = 0;
        while out.len() < depth {
            out.push(CRITICAL_CYCLE[i % 3]);
            i += 1;
        }
        out.truncate(depth.max(self.word.len()));
        Word::new(out)
    }

    /// The point lies in D(e).
    pub fn in_region(&self, e: &Word) -> bool {
        let e_coarse: Word = e.letters().iter().map(|l| l.coarse()).collect();
        self.full_itinerary(e.len()).starts_with(&e_coarse)
    }
}

fn is_cycle_word(w: &Word) -> bool {
    use Letter::*;
    let c: Vec<Letter> = w.letters().iter().map(|l| l.coarse()).collect();
    matches!(c.as_slice(), [C] | [R2, C] | [L1, R2, C])
}
