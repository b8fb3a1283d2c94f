use std::fmt;

use crate::error::{Error, Result};

/// One letter of a word: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorLetter {
    pub index: usize,
    pub inverted: bool,
}

impl GeneratorLetter {
    pub fn new(index: usize, inverted: bool) -> Self {
        GeneratorLetter { index, inverted }
    }

    pub fn inverse(self) -> Self {
        GeneratorLetter {
            index: self.index,
            inverted: !self.inverted,
        }
    }
}

impl fmt::Display for GeneratorLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.inverted { b'a' } else { b'A' };
        match u8::try_from(self.index).ok().filter(|&i| i < 26) {
            Some(i) => write!(f, "{}", (base + i) as char),
            None => write!(f, "g{}{}", self.index, if self.inverted { "'" } else { "" }),
        }
    }
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<GeneratorLetter>,
}

impl Word {
    pub fn new(letters: Vec<GeneratorLetter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// Parses `A..Z` as generators `0..25` and `a..z` as their inverses.
    /// Whitespace is ignored; `1`, `e` or `I` on their own denote the
    /// empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if matches!(trimmed, "1" | "e" | "I") {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for ch in trimmed.chars() {
            match ch {
                'A'..='Z' => letters.push(GeneratorLetter::new((ch as u8 - b'A') as usize, false)),
                'a'..='z' => letters.push(GeneratorLetter::new((ch as u8 - b'a') as usize, true)),
                c if c.is_whitespace() => {}
                other => return Err(Error::usage(format!("invalid letter {other:?} in word {s:?}"))),
            }
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[GeneratorLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let w = Word::parse("Ab aBA").unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "AbaBA");
        assert_eq!(w.inverse().to_string(), "abABa");
        assert!(Word::parse("e").unwrap().is_empty());
        assert!(Word::parse("A-").is_err());
    }
}
