//! Group backends with canonical normal forms.
//!
//! Every element carries a canonical payload (a reduced tree pair, a freely
//! reduced word, or a coordinate vector), so two elements are equal exactly
//! when their payloads are. The [`Key`] byte encoding of an element is
//! injective per backend and is what the moment engine hashes and sorts.
//!
//! Key layout (version 1), all integers little-endian:
//!
//! | backend   | tag    | payload                                                        |
//! |-----------|--------|----------------------------------------------------------------|
//! | Thompson  | `0x01` | `u32` leaf count `L`, domain preorder bits, range preorder bits |
//! | free      | `0x02` | `u32` rank, `u32` length, one byte `2*index + inverted` per letter |
//! | lattice   | `0x03` | `u32` dimension, `i64` per coordinate                            |
//!
//! Preorder bits are `2L - 1` caret/leaf flags packed MSB-first into
//! `ceil((2L - 1) / 8)` bytes, padded with zero bits.

mod free;
mod tree;
mod word;

use std::fmt;

pub use free::FreeWord;
pub use tree::{BinaryTree, TreePair};
pub use word::{GeneratorLetter, Word};

use crate::error::{Error, Result};

pub const KEY_VERSION: u32 = 1;

const TAG_THOMPSON: u8 = 0x01;
const TAG_FREE: u8 = 0x02;
const TAG_LATTICE: u8 = 0x03;

/// Stable byte encoding of a canonical element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key(Box<[u8]>);

impl Key {
    pub fn from_bytes(bytes: impl Into<Box<[u8]>>) -> Self {
        Key(bytes.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0.iter() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// The groups the engine knows how to multiply in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupBackend {
    /// Thompson's group F on the generators `A = x0`, `B = x1`.
    Thompson,
    /// The free group on `rank` generators.
    Free { rank: usize },
    /// The lattice `Z^dim` written multiplicatively.
    Lattice { dim: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Payload {
    Tree(TreePair),
    Free(FreeWord),
    Lattice(Vec<i64>),
}

/// A group element in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CanonicalElement {
    payload: Payload,
}

impl CanonicalElement {
    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn backend(&self) -> GroupBackend {
        match &self.payload {
            Payload::Tree(_) => GroupBackend::Thompson,
            Payload::Free(w) => GroupBackend::Free { rank: w.rank() },
            Payload::Lattice(v) => GroupBackend::Lattice { dim: v.len() },
        }
    }

    pub fn key(&self) -> Key {
        let mut out = Vec::with_capacity(16);
        match &self.payload {
            Payload::Tree(pair) => {
                out.push(TAG_THOMPSON);
                out.extend_from_slice(&(pair.leaf_count() as u32).to_le_bytes());
                pack_bits(pair.domain().preorder(), &mut out);
                pack_bits(pair.range().preorder(), &mut out);
            }
            Payload::Free(w) => {
                out.push(TAG_FREE);
                out.extend_from_slice(&(w.rank() as u32).to_le_bytes());
                out.extend_from_slice(&(w.letters().len() as u32).to_le_bytes());
                out.extend(w.letters().iter().map(|l| (2 * l.index + l.inverted as usize) as u8));
            }
            Payload::Lattice(v) => {
                out.push(TAG_LATTICE);
                out.extend_from_slice(&(v.len() as u32).to_le_bytes());
                for c in v {
                    out.extend_from_slice(&c.to_le_bytes());
                }
            }
        }
        Key(out.into_boxed_slice())
    }

    /// Decodes a key produced by [`CanonicalElement::key`].
    pub fn from_key(key: &Key) -> Result<Self> {
        let bytes = key.as_bytes();
        let bad = |why: &str| Error::Structural(format!("malformed key {key:?}: {why}"));
        let (&tag, rest) = bytes.split_first().ok_or_else(|| bad("empty"))?;
        let read_u32 = |b: &[u8], at: usize| -> Result<u32> {
            b.get(at..at + 4)
                .map(|s| u32::from_le_bytes(s.try_into().unwrap()))
                .ok_or_else(|| bad("truncated"))
        };
        let payload = match tag {
            TAG_THOMPSON => {
                let leaves = read_u32(rest, 0)? as usize;
                let nbits = 2 * leaves - 1;
                let nbytes = nbits.div_ceil(8);
                if rest.len() != 4 + 2 * nbytes {
                    return Err(bad("wrong length"));
                }
                let d = unpack_bits(&rest[4..4 + nbytes], nbits);
                let r = unpack_bits(&rest[4 + nbytes..], nbits);
                let pair = TreePair::new(BinaryTree::from_preorder(d)?, BinaryTree::from_preorder(r)?)?;
                if !pair.is_reduced() {
                    return Err(bad("tree pair not reduced"));
                }
                Payload::Tree(pair)
            }
            TAG_FREE => {
                let rank = read_u32(rest, 0)? as usize;
                let len = read_u32(rest, 4)? as usize;
                let body = rest.get(8..).ok_or_else(|| bad("truncated"))?;
                if body.len() != len {
                    return Err(bad("wrong length"));
                }
                let letters = body
                    .iter()
                    .map(|&b| GeneratorLetter::new((b / 2) as usize, b % 2 == 1))
                    .collect();
                Payload::Free(FreeWord::from_reduced(rank, letters).map_err(|_| bad("not reduced"))?)
            }
            TAG_LATTICE => {
                let dim = read_u32(rest, 0)? as usize;
                let body = rest.get(4..).ok_or_else(|| bad("truncated"))?;
                if body.len() != 8 * dim {
                    return Err(bad("wrong length"));
                }
                Payload::Lattice(
                    body.chunks_exact(8)
                        .map(|c| i64::from_le_bytes(c.try_into().unwrap()))
                        .collect(),
                )
            }
            _ => return Err(bad("unknown backend tag")),
        };
        Ok(CanonicalElement { payload })
    }

    pub fn is_identity(&self) -> bool {
        match &self.payload {
            Payload::Tree(p) => p.is_identity(),
            Payload::Free(w) => w.letters().is_empty(),
            Payload::Lattice(v) => v.iter().all(|&c| c == 0),
        }
    }
}

impl fmt::Display for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Tree(p) => write!(f, "{p}"),
            Payload::Free(w) => write!(f, "{w}"),
            Payload::Lattice(v) => write!(f, "{v:?}"),
        }
    }
}

impl From<TreePair> for CanonicalElement {
    fn from(pair: TreePair) -> Self {
        CanonicalElement {
            payload: Payload::Tree(pair.reduce()),
        }
    }
}

fn pack_bits(bits: &[bool], out: &mut Vec<u8>) {
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> i;
            }
        }
        out.push(byte);
    }
}

fn unpack_bits(bytes: &[u8], nbits: usize) -> Vec<bool> {
    (0..nbits).map(|i| bytes[i / 8] & (0x80 >> (i % 8)) != 0).collect()
}

impl GroupBackend {
    /// Number of letters (generators, not counting inverses).
    pub fn alphabet_size(&self) -> usize {
        match *self {
            GroupBackend::Thompson => 2,
            GroupBackend::Free { rank } => rank,
            GroupBackend::Lattice { dim } => dim,
        }
    }

    /// Declared property; all three backends are torsion free.
    pub fn is_torsion_free(&self) -> bool {
        true
    }

    pub fn name(&self) -> String {
        match *self {
            GroupBackend::Thompson => "thompson-F".into(),
            GroupBackend::Free { rank } => format!("free-{rank}"),
            GroupBackend::Lattice { dim } => format!("Z^{dim}"),
        }
    }

    pub fn identity(&self) -> CanonicalElement {
        let payload = match *self {
            GroupBackend::Thompson => Payload::Tree(TreePair::identity()),
            GroupBackend::Free { rank } => Payload::Free(FreeWord::identity(rank)),
            GroupBackend::Lattice { dim } => Payload::Lattice(vec![0; dim]),
        };
        CanonicalElement { payload }
    }

    fn check_member(&self, a: &CanonicalElement) -> Result<()> {
        if a.backend() != *self {
            return Err(Error::usage(format!(
                "element of {} used with backend {}",
                a.backend().name(),
                self.name()
            )));
        }
        Ok(())
    }

    pub fn letter(&self, letter: GeneratorLetter) -> Result<CanonicalElement> {
        if letter.index >= self.alphabet_size() {
            return Err(Error::usage(format!(
                "letter index {} out of range for {} (alphabet size {})",
                letter.index,
                self.name(),
                self.alphabet_size()
            )));
        }
        let payload = match *self {
            GroupBackend::Thompson => {
                let g = if letter.index == 0 {
                    TreePair::generator_a()
                } else {
                    TreePair::generator_b()
                };
                Payload::Tree(if letter.inverted { g.inverse() } else { g })
            }
            GroupBackend::Free { rank } => Payload::Free(FreeWord::from_letters(rank, [letter])),
            GroupBackend::Lattice { dim } => {
                let mut v = vec![0; dim];
                v[letter.index] = if letter.inverted { -1 } else { 1 };
                Payload::Lattice(v)
            }
        };
        Ok(CanonicalElement { payload })
    }

    /// Canonical form of the product of the letters of `w`, left to right.
    pub fn element_from_word(&self, w: &Word) -> Result<CanonicalElement> {
        let mut acc = self.identity();
        for &l in w.letters() {
            let g = self.letter(l)?;
            acc = self.multiply(&acc, &g)?;
        }
        Ok(acc)
    }

    /// Group product `a · b`.
    ///
    /// For F a tree pair is read as the map from its domain subdivision to its
    /// range subdivision, and `a · b` is the composite `a ∘ b` (`b` applied
    /// first). With this order the defining relators `[AB⁻¹, A⁻¹BA]` and
    /// `[AB⁻¹, A⁻²BA²]` evaluate to the identity.
    pub fn multiply(&self, a: &CanonicalElement, b: &CanonicalElement) -> Result<CanonicalElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(multiply_unchecked(a, b))
    }

    pub fn invert(&self, a: &CanonicalElement) -> Result<CanonicalElement> {
        self.check_member(a)?;
        Ok(invert_unchecked(a))
    }
}

/// Product of two elements already known to share a backend.
pub(crate) fn multiply_unchecked(a: &CanonicalElement, b: &CanonicalElement) -> CanonicalElement {
    let payload = match (&a.payload, &b.payload) {
        (Payload::Tree(x), Payload::Tree(y)) => Payload::Tree(x.compose(y)),
        (Payload::Free(x), Payload::Free(y)) => Payload::Free(x.mul(y)),
        (Payload::Lattice(x), Payload::Lattice(y)) => {
            Payload::Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect())
        }
        _ => unreachable!("backend mismatch"),
    };
    CanonicalElement { payload }
}

pub(crate) fn invert_unchecked(a: &CanonicalElement) -> CanonicalElement {
    let payload = match &a.payload {
        Payload::Tree(x) => Payload::Tree(x.inverse()),
        Payload::Free(x) => Payload::Free(x.inverse()),
        Payload::Lattice(x) => Payload::Lattice(x.iter().map(|c| -c).collect()),
    };
    CanonicalElement { payload }
}
