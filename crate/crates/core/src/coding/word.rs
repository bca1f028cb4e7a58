use std::fmt;
use std::ops::{Add, Index};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::letter::Letter;
use super::CodingError;

/// A finite letter sequence; the canonical name of regions, gaps and precritical points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn cat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation of many words.
    pub fn join<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn suffix(&self, i: usize) -> Word {
        Word(self.0[i..].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn starts_with(&self, p: &Word) -> bool {
        self.0.starts_with(&p.0)
    }

    pub fn ends_with(&self, p: &Word) -> bool {
        self.0.ends_with(&p.0)
    }

    /// One word is a (not necessarily proper) prefix of the other.
    pub fn prefix_related(&self, other: &Word) -> bool {
        self.starts_with(other) || other.starts_with(self)
    }

    /// All suffixes, longest first (the word itself included).
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |i| self.suffix(i))
    }

    /// Start positions of every occurrence of `needle`.
    pub fn occurrences(&self, needle: &Word) -> Vec<usize> {
        if needle.is_empty() || needle.len() > self.len() {
            return Vec::new();
        }
        self.0
            .windows(needle.len())
            .enumerate()
            .filter(|(_, w)| *w == needle.letters())
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of letters L3 or L2.
    pub fn l_count(&self) -> usize {
        self.0
            .iter()
            .filter(|l| matches!(l, Letter::L3 | Letter::L2))
            .count()
    }

    /// Every consecutive pair follows the transition table.
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|p| p[0].may_precede(p[1]))
    }

    pub fn check_admissible(&self) -> Result<(), CodingError> {
        match self.0.windows(2).position(|p| !p[0].may_precede(p[1])) {
            None => Ok(()),
            Some(i) => Err(CodingError::InadmissibleWord {
                word: self.to_string(),
                position: i,
            }),
        }
    }

    /// Letters from {L3, L2, R3}, optionally followed by one C-class letter.
    pub fn is_restricted(&self) -> bool {
        match self.0.split_last() {
            None => true,
            Some((last, init)) => {
                init.iter().all(|l| l.is_restricted())
                    && (last.is_restricted() || last.is_c_class())
            }
        }
    }

    pub fn ends_in_c(&self) -> bool {
        self.last().is_some_and(|l| l.is_c_class())
    }

    /// Dotted form with runs folded into powers, e.g. "L3.L2.R3.L3^5".
    pub fn compact(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i + 1;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if j - i > 1 {
                out.push(format!("{}^{}", self.0[i], j - i));
            } else {
                out.push(self.0[i].to_string());
            }
            i = j;
        }
        out.join(".")
    }

    /// Parse and require admissibility.
    pub fn parse_admissible(s: &str) -> Result<Word, CodingError> {
        let w: Word = s.parse()?;
        w.check_admissible()?;
        Ok(w)
    }
}

impl Index<usize> for Word {
    type Output = Letter;

    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl Add<&Word> for &Word {
    type Output = Word;

    fn add(self, rhs: &Word) -> Word {
        self.cat(rhs)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Space-separated letters, e.g. "L3 L2 C L1 R1 R1".
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Grammar: `seq := item*`, `item := (LETTER | '(' seq ')') ('^' N)?`, with
/// optional dots or whitespace between items. Letters may also be juxtaposed,
/// as in "L3L2R3".
impl FromStr for Word {
    type Err = CodingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        let mut p = Parser { s: &chars, i: 0 };
        let w = p.seq()?;
        p.skip_separators();
        if p.i != chars.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(Word(w))
    }
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CodingError {
        let rest: String = self.s[self.i.min(self.s.len())..].iter().collect();
        CodingError::Parse(format!("{msg} at offset {} near {rest:?}", self.i))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c == '.' || c == '·' || c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn seq(&mut self) -> Result<Vec<Letter>, CodingError> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(')') => return Ok(out),
                Some('(') => {
                    self.i += 1;
                    let inner = self.seq()?;
                    if self.peek() != Some(')') {
                        return Err(self.err("missing ')'"));
                    }
                    self.i += 1;
                    let n = self.power()?;
                    for _ in 0..n {
                        out.extend_from_slice(&inner);
                    }
                }
                Some(_) => {
                    let l = self.letter()?;
                    let n = self.power()?;
                    out.extend(std::iter::repeat_n(l, n));
                }
            }
        }
    }

    fn letter(&mut self) -> Result<Letter, CodingError> {
        let c = self.peek().map(|c| c.to_ascii_uppercase());
        let next = self.s.get(self.i + 1).map(|c| c.to_ascii_uppercase());
        let (l, width) = match (c, next) {
            (Some('L'), Some(d @ ('1'..='3'))) => (format!("L{d}"), 2),
            (Some('R'), Some(d @ ('1'..='3'))) => (format!("R{d}"), 2),
            (Some('U'), Some('C')) => ("UC".to_string(), 2),
            (Some('B'), Some('C')) => ("BC".to_string(), 2),
            (Some('C'), _) => ("C".to_string(), 1),
            _ => return Err(self.err("expected a letter")),
        };
        self.i += width;
        l.parse()
    }

    fn power(&mut self) -> Result<usize, CodingError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.i += 1;
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        let digits: String = self.s[start..self.i].iter().collect();
        digits.parse().map_err(|_| self.err("expected a power"))
    }
}
