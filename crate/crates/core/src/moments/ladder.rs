//! The ladder `h_1 = h`, `h_2 = h*h − (q+1)e`,
//! `h_{n+1} = h·h_n − q·h_{n−1}` (n even), `h_{n+1} = h*·h_n − q·h_{n−1}` (n odd).

use std::collections::HashMap;
use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::GeneratorSet;
use crate::error::{Error, Result};
use crate::group::{invert_unchecked, multiply_unchecked, CanonicalElement, Key, KEY_VERSION};

const MAGIC: &[u8; 4] = b"TGFL";

/// Which alternating pattern a ladder level sums: odd levels start with a
/// plain letter (`s1 s2⁻¹ s3 …`), even levels with an inverse (`s1⁻¹ s2 …`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// A group-ring element `Σ c_x x` with nonzero integer coefficients, sorted
/// by canonical key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    level: usize,
    terms: Vec<(Key, CanonicalElement, BigInt)>,
}

impl MultiplicityVector {
    /// Collects `(element, coefficient)` pairs, summing repeats and
    /// dropping zeros.
    pub fn from_terms(level: usize, terms: impl IntoIterator<Item = (CanonicalElement, BigInt)>) -> Self {
        let mut map: HashMap<CanonicalElement, BigInt> = HashMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        Self::from_map(level, map)
    }

    fn from_map(level: usize, map: HashMap<CanonicalElement, BigInt>) -> Self {
        let mut terms: Vec<_> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.key(), e, c))
            .collect();
        terms.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiplicityVector { level, terms }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn parity(&self) -> Parity {
        if self.level % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Number of distinct group elements with nonzero coefficient.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &CanonicalElement, &BigInt)> {
        self.terms.iter().map(|(k, e, c)| (k, e, c))
    }

    pub fn coefficient(&self, key: &Key) -> BigInt {
        match self.terms.binary_search_by(|t| t.0.cmp(key)) {
            Ok(i) => self.terms[i].2.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn identity_coefficient(&self) -> BigInt {
        self.terms
            .iter()
            .find(|t| t.1.is_identity())
            .map(|t| t.2.clone())
            .unwrap_or_default()
    }

    /// `Σ c_x²`.
    pub fn norm2(&self) -> BigInt {
        self.terms.iter().map(|t| &t.2 * &t.2).sum()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|t| &t.2).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| t.2.is_positive())
    }

    /// `self + factor · other` in the group ring.
    pub fn add_scaled(&self, other: &MultiplicityVector, factor: &BigInt) -> MultiplicityVector {
        let terms = self
            .terms
            .iter()
            .map(|(_, e, c)| (e.clone(), c.clone()))
            .chain(other.terms.iter().map(|(_, e, c)| (e.clone(), c * factor)));
        MultiplicityVector::from_terms(self.level, terms)
    }

    /// Group-ring product `self · other`.
    pub fn mul(&self, other: &MultiplicityVector) -> MultiplicityVector {
        let map = self
            .terms
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<CanonicalElement, BigInt>, (_, x, a)| {
                for (_, y, b) in &other.terms {
                    *acc.entry(multiply_unchecked(x, y)).or_default() += a * b;
                }
                acc
            })
            .reduce(HashMap::new, merge_maps);
        MultiplicityVector::from_map(self.level, map)
    }

    /// The adjoint `Σ c_x x⁻¹`.
    pub fn adjoint(&self) -> MultiplicityVector {
        MultiplicityVector::from_terms(
            self.level,
            self.terms.iter().map(|(_, e, c)| (invert_unchecked(e), c.clone())),
        )
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    /// Same coefficients keyed by element, ignoring the level tag.
    pub fn same_element(&self, other: &MultiplicityVector) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| a.0 == b.0 && a.2 == b.2)
    }

    /// First key where the two vectors disagree, with both coefficients.
    pub fn first_difference(&self, other: &MultiplicityVector) -> Option<(Key, BigInt, BigInt)> {
        let mut keys: Vec<&Key> = self.terms.iter().map(|t| &t.0).chain(other.terms.iter().map(|t| &t.0)).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coefficient(k), other.coefficient(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

fn merge_maps(
    mut a: HashMap<CanonicalElement, BigInt>,
    mut b: HashMap<CanonicalElement, BigInt>,
) -> HashMap<CanonicalElement, BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Coefficient of the identity in `h_{2n}`, which is `η_n`.
pub fn eta_direct(level: &MultiplicityVector) -> Result<BigInt> {
    if level.parity() != Parity::Even {
        return Err(Error::usage(format!(
            "eta needs an even ladder level, got {}",
            level.level()
        )));
    }
    Ok(level.identity_coefficient())
}

/// Per-level summary emitted by [`build_ladder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderLevel {
    pub n: usize,
    pub support: usize,
    pub h2norm: BigInt,
    pub identity_coefficient: BigInt,
    pub coefficient_sum: BigInt,
}

impl LadderLevel {
    fn of(v: &MultiplicityVector) -> Self {
        LadderLevel {
            n: v.level(),
            support: v.support_size(),
            h2norm: v.norm2(),
            identity_coefficient: v.identity_coefficient(),
            coefficient_sum: v.coefficient_sum(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LadderOptions {
    pub threads: usize,
    /// Write every level here and resume from the newest consecutive pair.
    pub checkpoint_dir: Option<PathBuf>,
}

impl Default for LadderOptions {
    fn default() -> Self {
        LadderOptions {
            threads: 1,
            checkpoint_dir: None,
        }
    }
}

/// A ladder in progress that holds only the two newest levels.
pub struct LadderRun {
    gen: GeneratorSet,
    inverses: Vec<CanonicalElement>,
    pool: rayon::ThreadPool,
    checkpoint_dir: Option<PathBuf>,
    prev: Option<MultiplicityVector>,
    cur: MultiplicityVector,
}

impl LadderRun {
    pub fn new(gen: &GeneratorSet, opts: &LadderOptions) -> Result<Self> {
        if opts.threads == 0 {
            return Err(Error::usage("threads must be at least 1"));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start thread pool: {e}")))?;
        let h = MultiplicityVector::from_terms(
            1,
            gen.elements().iter().map(|e| (e.clone(), BigInt::from(1))),
        );
        let run = LadderRun {
            gen: gen.clone(),
            inverses: gen.elements().iter().map(invert_unchecked).collect(),
            pool,
            checkpoint_dir: opts.checkpoint_dir.clone(),
            prev: None,
            cur: h,
        };
        if let Some(dir) = &run.checkpoint_dir {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            run.save(&run.cur)?;
        }
        Ok(run)
    }

    /// Like [`LadderRun::new`], but restarts from the newest pair of
    /// consecutive checkpoints not beyond `max_n` when there is one.
    pub fn resume(gen: &GeneratorSet, opts: &LadderOptions, max_n: usize) -> Result<Self> {
        let mut run = Self::new(gen, opts)?;
        let Some(dir) = run.checkpoint_dir.clone() else {
            return Ok(run);
        };
        for n in (2..=max_n).rev() {
            let (a, b) = (run.checkpoint_path(&dir, n - 1), run.checkpoint_path(&dir, n));
            if a.exists() && b.exists() {
                let prev = read_checkpoint(&a, gen.q())?;
                let cur = read_checkpoint(&b, gen.q())?;
                check_level(gen.q(), &cur)?;
                run.prev = Some(prev);
                run.cur = cur;
                break;
            }
        }
        Ok(run)
    }

    fn checkpoint_path(&self, dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("{}-level-{n:04}.tgfl", self.gen.label()))
    }

    fn save(&self, v: &MultiplicityVector) -> Result<()> {
        if let Some(dir) = &self.checkpoint_dir {
            write_checkpoint(&self.checkpoint_path(dir, v.level()), self.gen.q(), v)?;
        }
        Ok(())
    }

    pub fn current(&self) -> &MultiplicityVector {
        &self.cur
    }

    pub fn previous(&self) -> Option<&MultiplicityVector> {
        self.prev.as_ref()
    }

    /// Computes the next level and drops the oldest one.
    pub fn advance(&mut self) -> Result<&MultiplicityVector> {
        let n = self.cur.level();
        let q = self.gen.q();
        let left = if n % 2 == 0 { self.gen.elements() } else { &self.inverses[..] };
        let cur = &self.cur;
        let chunk = (cur.terms.len() / (self.pool.current_num_threads() * 8)).max(256);
        let mut map = self.pool.install(|| {
            cur.terms
                .par_chunks(chunk)
                .map(|slice| {
                    let mut acc: HashMap<CanonicalElement, BigInt> = HashMap::with_capacity(slice.len() * left.len());
                    for (_, x, c) in slice {
                        for y in left {
                            *acc.entry(multiply_unchecked(y, x)).or_default() += c;
                        }
                    }
                    acc
                })
                .reduce(HashMap::new, merge_maps)
        });
        match &self.prev {
            None => {
                let id = self.gen.backend().identity();
                *map.entry(id).or_default() -= BigInt::from(q + 1);
            }
            Some(prev) => {
                let qb = BigInt::from(q);
                for (_, e, c) in &prev.terms {
                    *map.entry(e.clone()).or_default() -= c * &qb;
                }
            }
        }
        let next = self.pool.install(|| MultiplicityVector::from_map(n + 1, map));
        if let Some((k, _, c)) = next.terms.iter().find(|t| t.2.is_negative()) {
            return Err(Error::Corruption {
                level: n + 1,
                detail: format!("coefficient {c} at key {k:?}"),
            });
        }
        check_level(q, &next)?;
        self.save(&next)?;
        self.prev = Some(std::mem::replace(&mut self.cur, next));
        Ok(&self.cur)
    }
}

/// Coefficient sum must be `(q+1) q^(n−1)`.
fn check_level(q: u64, v: &MultiplicityVector) -> Result<()> {
    let expected = BigInt::from(q + 1) * num_traits::pow(BigInt::from(q), v.level() - 1);
    let got = v.coefficient_sum();
    if got != expected || !v.is_nonnegative() {
        return Err(Error::Corruption {
            level: v.level(),
            detail: format!("coefficient sum {got}, expected {expected}"),
        });
    }
    Ok(())
}

/// Runs the ladder to `max_n` and reports one summary per level.
pub fn build_ladder(gen: &GeneratorSet, max_n: usize, opts: &LadderOptions) -> Result<Vec<LadderLevel>> {
    if max_n == 0 {
        return Err(Error::usage("max_n must be at least 1"));
    }
    let mut run = LadderRun::resume(gen, opts, max_n)?;
    let mut out = Vec::with_capacity(max_n);
    if let Some(p) = run.previous() {
        // Levels before the resume point are read back from their checkpoints.
        let dir = run.checkpoint_dir.clone().expect("resumed runs have a directory");
        for n in 1..p.level() {
            out.push(LadderLevel::of(&read_checkpoint(&run.checkpoint_path(&dir, n), gen.q())?));
        }
        out.push(LadderLevel::of(p));
    }
    out.push(LadderLevel::of(run.current()));
    while run.current().level() < max_n {
        out.push(LadderLevel::of(run.advance()?));
    }
    Ok(out)
}

/// Writes a level as `TGFL`, version, level, q, entry count, then
/// `(key length, key, sign, magnitude length, magnitude)` records in key
/// order. All integers are little-endian; lengths and header fields are
/// `u32` except the `u64` entry count.
pub fn write_checkpoint(path: &Path, q: u64, v: &MultiplicityVector) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let io = |e| Error::io(path, e);
    {
        let mut w = BufWriter::new(fs::File::create(&tmp).map_err(io)?);
        w.write_all(MAGIC).map_err(io)?;
        for x in [KEY_VERSION, v.level() as u32, q as u32] {
            w.write_all(&x.to_le_bytes()).map_err(io)?;
        }
        w.write_all(&(v.terms.len() as u64).to_le_bytes()).map_err(io)?;
        for (k, _, c) in &v.terms {
            let (sign, mag) = c.to_bytes_le();
            w.write_all(&(k.as_bytes().len() as u32).to_le_bytes()).map_err(io)?;
            w.write_all(k.as_bytes()).map_err(io)?;
            w.write_all(&[(sign == Sign::Minus) as u8]).map_err(io)?;
            w.write_all(&(mag.len() as u32).to_le_bytes()).map_err(io)?;
            w.write_all(&mag).map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    fs::rename(&tmp, path).map_err(io)
}

pub fn read_checkpoint(path: &Path, q: u64) -> Result<MultiplicityVector> {
    let io = |e| Error::io(path, e);
    let mut r = BufReader::new(fs::File::open(path).map_err(io)?);
    let bad = |why: &str| Error::Structural(format!("{}: {why}", path.display()));
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(io)?;
    if &magic != MAGIC {
        return Err(bad("not a ladder checkpoint"));
    }
    let mut u32buf = [0u8; 4];
    let mut read_u32 = |r: &mut BufReader<fs::File>| -> Result<u32> {
        r.read_exact(&mut u32buf).map_err(io)?;
        Ok(u32::from_le_bytes(u32buf))
    };
    let version = read_u32(&mut r)?;
    if version != KEY_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let level = read_u32(&mut r)? as usize;
    let file_q = read_u32(&mut r)? as u64;
    if file_q != q {
        return Err(bad(&format!("written for q = {file_q}, expected {q}")));
    }
    let mut cnt = [0u8; 8];
    r.read_exact(&mut cnt).map_err(io)?;
    let count = u64::from_le_bytes(cnt) as usize;
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        let klen = read_u32(&mut r)? as usize;
        let mut kb = vec![0u8; klen];
        r.read_exact(&mut kb).map_err(io)?;
        let mut sign = [0u8; 1];
        r.read_exact(&mut sign).map_err(io)?;
        let mlen = read_u32(&mut r)? as usize;
        let mut mb = vec![0u8; mlen];
        r.read_exact(&mut mb).map_err(io)?;
        let key = Key::from_bytes(kb);
        let elem = CanonicalElement::from_key(&key)?;
        let s = if sign[0] == 1 { Sign::Minus } else { Sign::Plus };
        terms.push((key, elem, BigInt::from_bytes_le(s, &mb)));
    }
    if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(bad("records not in strictly increasing key order"));
    }
    Ok(MultiplicityVector { level, terms })
}
