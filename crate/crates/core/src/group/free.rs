use std::fmt;

use super::word::GeneratorLetter;

/// A freely reduced word in a free group of fixed rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<GeneratorLetter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = GeneratorLetter>) -> Self {
        let mut out: Vec<GeneratorLetter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        FreeWord { rank, letters: out }
    }

    /// Accepts `letters` only if it is already freely reduced.
    pub fn from_reduced(rank: usize, letters: Vec<GeneratorLetter>) -> Result<Self, ()> {
        let reduced = letters.windows(2).all(|w| w[1] != w[0].inverse());
        let in_range = letters.iter().all(|l| l.index < rank);
        if reduced && in_range {
            Ok(FreeWord { rank, letters })
        } else {
            Err(())
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[GeneratorLetter] {
        &self.letters
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        FreeWord {
            rank: self.rank,
            letters: out,
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

fn push_reduced(out: &mut Vec<GeneratorLetter>, l: GeneratorLetter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl fmt::Display for FreeWord {
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
