//! Red/blue colorings of the k-subsets of an ordered vertex set `0..n`.
//!
//! Bit `j` of the payload is the color of the colex-rank-`j` subset, with
//! red stored as 1. On disk a coloring is one ASCII header line followed by
//! the payload packed little-endian within each byte.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, next_colex, BinomialTable};
use crate::error::{Error, Result};

const MAGIC: &str = "ordered-coloring";
const VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    #[inline]
    pub fn from_bit(bit: bool) -> Color {
        if bit {
            Color::Red
        } else {
            Color::Blue
        }
    }

    #[inline]
    pub fn is_red(self) -> bool {
        self == Color::Red
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

impl std::str::FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Color> {
        match s.to_ascii_lowercase().as_str() {
            "red" => Ok(Color::Red),
            "blue" => Ok(Color::Blue),
            other => Err(Error::parse("color", format!("expected red or blue, got `{other}`"))),
        }
    }
}

/// A 2-coloring of all `k`-subsets of `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedColoring {
    k: usize,
    n: usize,
    len: usize,
    words: Vec<u64>,
    binom: BinomialTable,
}

impl fmt::Debug for OrderedColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedColoring")
            .field("k", &self.k)
            .field("n", &self.n)
            .field("red", &self.count_red())
            .finish()
    }
}

impl OrderedColoring {
    /// Monochromatic coloring of the `k`-subsets of `0..n`.
    pub fn new(k: usize, n: usize, fill: Color) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput(format!("uniformity must be at least 2, got {k}")));
        }
        let len = usize::try_from(binomial(n as u64, k as u64)?)
            .map_err(|_| Error::Overflow(format!("C({n}, {k})")))?;
        let binom = BinomialTable::new(n, k)?;
        let word = if fill.is_red() { u64::MAX } else { 0 };
        let mut c = OrderedColoring {
            k,
            n,
            len,
            words: vec![word; len.div_ceil(64)],
            binom,
        };
        c.clear_padding();
        Ok(c)
    }

    /// Builds a coloring by evaluating `f` on every subset in colex order.
    pub fn from_fn(k: usize, n: usize, mut f: impl FnMut(&[usize]) -> Color) -> Result<Self> {
        let mut c = OrderedColoring::new(k, n, Color::Blue)?;
        if n >= k {
            let mut s: Vec<usize> = (0..k).collect();
            let mut rank = 0;
            loop {
                if f(&s).is_red() {
                    c.words[rank / 64] |= 1u64 << (rank % 64);
                }
                rank += 1;
                if !next_colex(&mut s, n) {
                    break;
                }
            }
        }
        Ok(c)
    }

    /// Uniformly random coloring drawn from `rng`.
    pub fn random(k: usize, n: usize, rng: &mut impl RngCore) -> Result<Self> {
        let mut c = OrderedColoring::new(k, n, Color::Blue)?;
        for w in c.words.iter_mut() {
            *w = rng.next_u64();
        }
        c.clear_padding();
        Ok(c)
    }

    /// Uniformly random coloring from a ChaCha8 stream seeded with `seed`.
    pub fn seeded(k: usize, n: usize, seed: u64) -> Result<Self> {
        use rand::SeedableRng;
        Self::random(k, n, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    }

    fn clear_padding(&mut self) {
        let tail = self.len % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of k-subsets, `C(n, k)`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn binomials(&self) -> &BinomialTable {
        &self.binom
    }

    /// Colex rank of a sorted in-range k-subset (unchecked outside debug builds).
    #[inline]
    pub fn rank(&self, subset: &[usize]) -> usize {
        debug_assert_eq!(subset.len(), self.k);
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(subset.last().is_none_or(|&v| v < self.n));
        self.binom.rank(subset)
    }

    #[inline]
    pub fn bit(&self, rank: usize) -> bool {
        debug_assert!(rank < self.len);
        (self.words[rank / 64] >> (rank % 64)) & 1 == 1
    }

    #[inline]
    pub fn color_at(&self, rank: usize) -> Color {
        Color::from_bit(self.bit(rank))
    }

    /// Fast lookup for a sorted in-range subset.
    #[inline]
    pub fn is_red(&self, subset: &[usize]) -> bool {
        self.bit(self.rank(subset))
    }

    #[inline]
    pub fn get(&self, subset: &[usize]) -> Color {
        Color::from_bit(self.is_red(subset))
    }

    /// Checked lookup: the subset must have `k` strictly increasing entries below `n`.
    pub fn color_of(&self, subset: &[usize]) -> Result<Color> {
        self.check_subset(subset)?;
        Ok(self.get(subset))
    }

    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.len() != self.k {
            return Err(Error::invalid_subset(
                subset,
                format!("expected {} elements", self.k),
            ));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid_subset(subset, "not strictly increasing"));
        }
        if let Some(&v) = subset.last() {
            if v >= self.n {
                return Err(Error::invalid_subset(
                    subset,
                    format!("vertex {v} out of range 0..{}", self.n),
                ));
            }
        }
        Ok(())
    }

    pub fn set_at(&mut self, rank: usize, color: Color) {
        debug_assert!(rank < self.len);
        let mask = 1u64 << (rank % 64);
        if color.is_red() {
            self.words[rank / 64] |= mask;
        } else {
            self.words[rank / 64] &= !mask;
        }
    }

    pub fn set(&mut self, subset: &[usize], color: Color) -> Result<()> {
        self.check_subset(subset)?;
        let r = self.rank(subset);
        self.set_at(r, color);
        Ok(())
    }

    pub fn count_red(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Same subsets, colors exchanged.
    pub fn swapped(&self) -> OrderedColoring {
        let mut c = self.clone();
        for w in c.words.iter_mut() {
            *w = !*w;
        }
        c.clear_padding();
        c
    }

    /// Coloring induced on `vertices` (strictly increasing), relabelled `0..len`.
    /// Callers map results back through `vertices`.
    pub fn induced(&self, vertices: &[usize]) -> Result<OrderedColoring> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid_subset(vertices, "not strictly increasing"));
        }
        if vertices.last().is_some_and(|&v| v >= self.n) {
            return Err(Error::invalid_subset(vertices, "vertex out of range"));
        }
        let mut buf = vec![0usize; self.k];
        OrderedColoring::from_fn(self.k, vertices.len(), |s| {
            for (b, &i) in buf.iter_mut().zip(s) {
                *b = vertices[i];
            }
            self.get(&buf)
        })
    }

    /// Restriction to the first `n` vertices.
    pub fn prefix(&self, n: usize) -> Result<OrderedColoring> {
        if n > self.n {
            return Err(Error::InvalidInput(format!(
                "prefix of {n} vertices from a coloring on {}",
                self.n
            )));
        }
        let mut c = OrderedColoring::new(self.k, n, Color::Blue)?;
        // Colex order puts the subsets of 0..n first.
        let words = c.len.div_ceil(64);
        c.words[..words].copy_from_slice(&self.words[..words]);
        c.clear_padding();
        Ok(c)
    }

    /// Packed payload bytes, `ceil(len / 8)` of them.
    pub fn payload(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect()
    }

    pub fn write_to(&self, w: &mut impl Write, unverified: bool) -> Result<()> {
        let flag = if unverified { " unverified" } else { "" };
        write!(w, "{MAGIC} {VERSION} k={} n={}{flag}\n", self.k, self.n)?;
        w.write_all(&self.payload())?;
        Ok(())
    }

    /// Parses a coloring file, returning the coloring and its header.
    pub fn read_from(r: &mut impl Read) -> Result<(OrderedColoring, FileHeader)> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        let newline = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| Error::parse("header", "missing header line"))?;
        let line = std::str::from_utf8(&bytes[..newline])
            .map_err(|_| Error::parse("header", "header is not ASCII"))?;
        let header = FileHeader::parse(line)?;
        let payload = &bytes[newline + 1..];

        let mut c = OrderedColoring::new(header.k, header.n, Color::Blue)
            .map_err(|e| Error::parse("k", e.to_string()))?;
        let expected = c.len.div_ceil(8);
        if payload.len() != expected {
            return Err(Error::parse(
                "payload",
                format!(
                    "C({}, {}) = {} bits needs {expected} bytes, found {}",
                    header.n,
                    header.k,
                    c.len,
                    payload.len()
                ),
            ));
        }
        for (i, chunk) in payload.chunks(8).enumerate() {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            c.words[i] = u64::from_le_bytes(word);
        }
        let tail = c.len % 64;
        if tail != 0 {
            let last = *c.words.last().expect("non-empty payload");
            if last >> tail != 0 {
                return Err(Error::parse("payload", "non-zero padding bits"));
            }
        }
        Ok((c, header))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.save_marked(path, false)
    }

    pub fn save_marked(&self, path: impl AsRef<Path>, unverified: bool) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w, unverified)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<OrderedColoring> {
        Ok(Self::load_with_header(path)?.0)
    }

    pub fn load_with_header(path: impl AsRef<Path>) -> Result<(OrderedColoring, FileHeader)> {
        let mut r = BufReader::new(File::open(path)?);
        Self::read_from(&mut r)
    }
}

/// Parsed header line of a coloring file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileHeader {
    pub k: usize,
    pub n: usize,
    pub unverified: bool,
}

impl FileHeader {
    fn parse(line: &str) -> Result<FileHeader> {
        let mut tokens = line.split(' ');
        if tokens.next() != Some(MAGIC) {
            return Err(Error::parse("magic", format!("expected `{MAGIC}`")));
        }
        match tokens.next() {
            Some(VERSION) => {}
            other => {
                return Err(Error::parse(
                    "version",
                    format!("expected `{VERSION}`, got {other:?}"),
                ))
            }
        }
        let k = parse_field(tokens.next(), "k")?;
        let n = parse_field(tokens.next(), "n")?;
        let unverified = match tokens.next() {
            None => false,
            Some("unverified") => true,
            Some(other) => return Err(Error::parse("header", format!("unexpected token `{other}`"))),
        };
        if tokens.next().is_some() {
            return Err(Error::parse("header", "trailing tokens"));
        }
        Ok(FileHeader { k, n, unverified })
    }
}

fn parse_field(token: Option<&str>, name: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::parse(name, "missing"))?;
    let value = token
        .strip_prefix(name)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::parse(name, format!("expected `{name}=<int>`, got `{token}`")))?;
    value
        .parse()
        .map_err(|_| Error::parse(name, format!("`{value}` is not a non-negative integer")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_colorings() {
        let red = OrderedColoring::new(3, 6, Color::Red).unwrap();
        let blue = OrderedColoring::new(3, 6, Color::Blue).unwrap();
        assert_eq!(red.len(), 20);
        assert_eq!(red.count_red(), 20);
        assert_eq!(red.color_of(&[1, 3, 5]).unwrap(), Color::Red);
        assert_eq!(blue.color_of(&[0, 2, 4]).unwrap(), Color::Blue);
    }

    #[test]
    fn single_bit_is_rank_zero_subset() {
        let mut c = OrderedColoring::new(3, 5, Color::Blue).unwrap();
        c.set_at(0, Color::Red);
        assert_eq!(c.color_of(&[0, 1, 2]).unwrap(), Color::Red);
        assert_eq!(c.color_of(&[0, 1, 3]).unwrap(), Color::Blue);
    }

    #[test]
    fn out_of_range_is_rejected() {
        let c = OrderedColoring::new(2, 4, Color::Red).unwrap();
        assert!(matches!(c.color_of(&[1, 4]), Err(Error::InvalidSubset { .. })));
        assert!(matches!(c.color_of(&[2, 1]), Err(Error::InvalidSubset { .. })));
        assert!(matches!(c.color_of(&[1]), Err(Error::InvalidSubset { .. })));
    }

    #[test]
    fn save_load_all_red_k2_n5() {
        let c = OrderedColoring::new(2, 5, Color::Red).unwrap();
        let mut buf = Vec::new();
        c.write_to(&mut buf, false).unwrap();
        assert!(buf.starts_with(b"ordered-coloring v1 k=2 n=5\n"));
        assert_eq!(&buf[28..], &[0xff, 0x03]);
        let (back, header) = OrderedColoring::read_from(&mut buf.as_slice()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.len(), 10);
        assert!(!header.unverified);
    }

    #[test]
    fn short_payload_names_field() {
        // C(4, 3) = 4 bits need one payload byte; the payload here is empty.
        let file = b"ordered-coloring v1 k=3 n=4\n".to_vec();
        let err = OrderedColoring::read_from(&mut file.as_slice()).unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "payload"), "{err}");
    }

    #[test]
    fn k4_n8_payload_is_70_bits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = OrderedColoring::random(4, 8, &mut rng).unwrap();
        assert_eq!(c.len(), 70);
        let payload = c.payload();
        assert_eq!(payload.len(), 9);
        assert_eq!(payload[8] >> 6, 0, "pad bits must be zero");
    }

    #[test]
    fn malformed_headers() {
        for (text, field) in [
            ("ordered-colorin v1 k=2 n=3\n", "magic"),
            ("ordered-coloring v2 k=2 n=3\n", "version"),
            ("ordered-coloring v1 q=2 n=3\n", "k"),
            ("ordered-coloring v1 k=2 n=x\n", "n"),
            ("ordered-coloring v1 k=2 n=3 extra\n", "header"),
        ] {
            let mut bytes = text.as_bytes().to_vec();
            bytes.push(0);
            let err = OrderedColoring::read_from(&mut bytes.as_slice()).unwrap_err();
            assert!(matches!(err, Error::Parse { field: ref f, .. } if f == field), "{text}: {err}");
        }
    }

    #[test]
    fn nonzero_padding_rejected() {
        let mut bytes = b"ordered-coloring v1 k=2 n=3\n".to_vec();
        bytes.push(0b1000_0000);
        assert!(OrderedColoring::read_from(&mut bytes.as_slice()).is_err());
    }

    #[test]
    fn unverified_marker_round_trips() {
        let c = OrderedColoring::new(3, 5, Color::Blue).unwrap();
        let mut buf = Vec::new();
        c.write_to(&mut buf, true).unwrap();
        let (_, header) = OrderedColoring::read_from(&mut buf.as_slice()).unwrap();
        assert!(header.unverified);
    }

    #[test]
    fn induced_and_prefix_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = OrderedColoring::random(3, 10, &mut rng).unwrap();
        let p = c.prefix(7).unwrap();
        let verts: Vec<usize> = (0..7).collect();
        assert_eq!(p, c.induced(&verts).unwrap());
        let sub = c.induced(&[1, 4, 6, 9]).unwrap();
        assert_eq!(sub.get(&[0, 2, 3]), c.get(&[1, 6, 9]));
    }

    #[test]
    fn swapped_flips_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = OrderedColoring::random(2, 9, &mut rng).unwrap();
        let s = c.swapped();
        assert_eq!(s.count_red(), c.len() - c.count_red());
        assert_eq!(s.swapped(), c);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn file_round_trip(seed in any::<u64>(), k in 2usize..5, n in 0usize..21) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let c = OrderedColoring::random(k, n, &mut rng).unwrap();
                let mut buf = Vec::new();
                c.write_to(&mut buf, false).unwrap();
                let (back, _) = OrderedColoring::read_from(&mut buf.as_slice()).unwrap();
                prop_assert_eq!(back, c);
            }
        }
    }
}
