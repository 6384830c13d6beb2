//! Linear algebra over F₂ for short binary words.
//!
//! Words are stored in a single `u64`: coordinate `i` (1-indexed, as in every
//! public interface) lives in bit `i - 1`. Codes keep their basis in reduced
//! row-echelon form where the pivot of a row is its lowest coordinate, so two
//! codes are equal exactly when their bases are equal.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported block length.
pub const MAX_LENGTH: usize = 64;

#[inline]
pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LENGTH {
        Err(Error::LengthOutOfRange(n))
    } else {
        Ok(())
    }
}

/// A binary word of length `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

impl BitVector {
    pub fn zeros(len: usize) -> Result<Self> {
        check_length(len)?;
        Ok(BitVector { len, bits: 0 })
    }

    pub fn ones(len: usize) -> Result<Self> {
        check_length(len)?;
        Ok(BitVector {
            len,
            bits: mask(len),
        })
    }

    /// Builds a word from its packed representation (bit `i-1` is coordinate `i`).
    pub fn from_bits(len: usize, bits: u64) -> Result<Self> {
        check_length(len)?;
        if bits & !mask(len) != 0 {
            return Err(Error::CoordinateOutOfRange {
                coord: 64 - bits.leading_zeros() as usize,
                len,
            });
        }
        Ok(BitVector { len, bits })
    }

    /// Builds a word from a list of 1-indexed coordinates.
    pub fn from_support(len: usize, support: &[usize]) -> Result<Self> {
        check_length(len)?;
        let mut bits = 0u64;
        for &coord in support {
            if coord == 0 || coord > len {
                return Err(Error::CoordinateOutOfRange { coord, len });
            }
            bits |= 1 << (coord - 1);
        }
        Ok(BitVector { len, bits })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Value of the 1-indexed coordinate `coord`.
    pub fn get(&self, coord: usize) -> bool {
        coord >= 1 && coord <= self.len && self.bits >> (coord - 1) & 1 == 1
    }

    /// The 1-indexed coordinates holding a one, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        support_of(self.bits)
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(BitVector {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }
}

pub(crate) fn support_of(mut bits: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(bits.count_ones() as usize);
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize + 1);
        bits &= bits - 1;
    }
    out
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        check_length(s.len())?;
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("unexpected character `{other}` in binary word"),
                    })
                }
            }
        }
        Ok(BitVector { len: s.len(), bits })
    }
}

/// A binary linear code `C ≤ F₂ⁿ`, stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    n: usize,
    // Sorted by pivot (lowest set bit); every pivot column has exactly one row set.
    rows: Vec<u64>,
}

impl LinearCode {
    /// The zero code `{0}`.
    pub fn zero(n: usize) -> Result<Self> {
        check_length(n)?;
        Ok(LinearCode { n, rows: Vec::new() })
    }

    /// The whole space `F₂ⁿ`.
    pub fn full(n: usize) -> Result<Self> {
        check_length(n)?;
        Ok(LinearCode {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        })
    }

    /// Span of the given words.
    pub fn span<'a, I>(n: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a BitVector>,
    {
        let mut code = LinearCode::zero(n)?;
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            code.insert_bits(g.bits());
        }
        Ok(code)
    }

    /// Span of packed words.
    pub fn span_bits(n: usize, generators: &[u64]) -> Result<Self> {
        check_length(n)?;
        let mut code = LinearCode { n, rows: Vec::new() };
        for &g in generators {
            if g & !mask(n) != 0 {
                return Err(Error::CoordinateOutOfRange {
                    coord: 64 - g.leading_zeros() as usize,
                    len: n,
                });
            }
            code.insert_bits(g);
        }
        Ok(code)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Packed basis rows, sorted by pivot.
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<BitVector> {
        self.rows
            .iter()
            .map(|&bits| BitVector { len: self.n, bits })
            .collect()
    }

    /// 1-indexed pivot coordinates, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.trailing_zeros() as usize + 1)
            .collect()
    }

    pub(crate) fn pivot_mask(&self) -> u64 {
        self.rows.iter().fold(0, |acc, r| acc | (r & r.wrapping_neg()))
    }

    /// Clears every pivot coordinate of `v` by adding basis rows. The result
    /// is the canonical representative of the coset `v + C`.
    #[inline]
    pub fn reduce_bits(&self, mut v: u64) -> u64 {
        for &row in &self.rows {
            let pivot = row & row.wrapping_neg();
            if v & pivot != 0 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains_bits(&self, v: u64) -> bool {
        self.reduce_bits(v) == 0
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.contains_bits(v.bits))
    }

    /// Adds `v` to the code in place; returns whether the dimension grew.
    pub fn insert_bits(&mut self, v: u64) -> bool {
        let v = self.reduce_bits(v);
        if v == 0 {
            return false;
        }
        let pivot = v & v.wrapping_neg();
        for row in self.rows.iter_mut() {
            if *row & pivot != 0 {
                *row ^= v;
            }
        }
        let pos = self
            .rows
            .partition_point(|r| r.trailing_zeros() < v.trailing_zeros());
        self.rows.insert(pos, v);
        true
    }

    /// RREF basis of `⟨C ∪ {v}⟩` together with whether `v` was new.
    pub fn rref_insert(&self, v: &BitVector) -> Result<(LinearCode, bool)> {
        self.check_len(v)?;
        let mut code = self.clone();
        let grew = code.insert_bits(v.bits);
        Ok((code, grew))
    }

    /// The dual code `C^⊥`.
    pub fn dual(&self) -> LinearCode {
        let pivots = self.pivot_mask();
        let mut dual = LinearCode {
            n: self.n,
            rows: Vec::with_capacity(self.n - self.rows.len()),
        };
        // x ∈ C^⊥ is determined by its free coordinates: x_p = Σ_j row_p[j] x_j.
        for j in 0..self.n {
            let bit = 1u64 << j;
            if pivots & bit != 0 {
                continue;
            }
            let mut v = bit;
            for &row in &self.rows {
                if row & bit != 0 {
                    v |= row & row.wrapping_neg();
                }
            }
            dual.insert_bits(v);
        }
        dual
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.rows.iter().all(|&r| other.contains_bits(r))
    }

    /// Union of the supports of all codewords (equivalently, of the basis).
    pub fn support_union(&self) -> BTreeSet<usize> {
        support_of(self.rows.iter().fold(0, |acc, r| acc | r))
            .into_iter()
            .collect()
    }

    /// Minimum weight of a nonzero codeword, by enumerating all `2^k` codewords.
    pub fn min_distance(&self) -> Result<usize> {
        let k = self.rows.len();
        if k == 0 {
            return Err(Error::UndefinedDistance);
        }
        if k > 40 {
            return Err(Error::ResourceLimit {
                what: "codeword enumeration dimension",
                requested: k,
                limit: 40,
            });
        }
        let mut word = 0u64;
        let mut best = usize::MAX;
        for i in 1u64..(1u64 << k) {
            word ^= self.rows[i.trailing_zeros() as usize];
            best = best.min(word.count_ones() as usize);
        }
        Ok(best)
    }

    /// Every codeword, in Gray-code order starting from zero.
    pub fn codewords(&self) -> impl Iterator<Item = u64> + '_ {
        let k = self.rows.len();
        let mut word = 0u64;
        (0u64..(1u64 << k)).map(move |i| {
            if i > 0 {
                word ^= self.rows[i.trailing_zeros() as usize];
            }
            word
        })
    }

    /// Projects the code onto the given 1-indexed coordinates, in the given
    /// order. The projection of a span is the span of the projected basis.
    pub fn restrict(&self, coords: &[usize]) -> Result<LinearCode> {
        for &c in coords {
            if c == 0 || c > self.n {
                return Err(Error::CoordinateOutOfRange {
                    coord: c,
                    len: self.n,
                });
            }
        }
        let projected: Vec<u64> = self
            .rows
            .iter()
            .map(|&row| project_bits(row, coords))
            .collect();
        LinearCode::span_bits(coords.len(), &projected)
    }

    fn check_len(&self, v: &BitVector) -> Result<()> {
        if v.len() != self.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Serializes in the text code-file format.
    pub fn to_code_file(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.rows.len());
        for b in self.basis() {
            out.push_str(&b.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the text code-file format: a header line `n k` followed by `k`
    /// rows of `n` characters from `{0,1}`. Rows may be dependent. Blank lines
    /// and lines starting with `#` after the rows are ignored.
    pub fn parse_code_file(text: &str) -> Result<LinearCode> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (line_no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or(Error::Parse {
                line: 1,
                message: "missing header `n k`".into(),
            })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_field = |s: &str, name: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid {name} `{s}`"),
            })
        };
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: "header must be `n k`".into(),
            });
        }
        let n = parse_field(fields[0], "block length")?;
        let k = parse_field(fields[1], "row count")?;
        if n == 0 || n > MAX_LENGTH {
            return Err(Error::Parse {
                line: line_no,
                message: format!("block length {n} outside 1..={MAX_LENGTH}"),
            });
        }
        let mut code = LinearCode::zero(n)?;
        let mut read = 0;
        let mut last_line = line_no;
        for (line_no, line) in lines {
            last_line = line_no;
            if read == k {
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unexpected content after {k} rows"),
                });
            }
            if line.len() != n {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("row has length {}, expected {n}", line.len()),
                });
            }
            let row: BitVector = line.parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    line: line_no,
                    message,
                },
                other => other,
            })?;
            code.insert_bits(row.bits);
            read += 1;
        }
        if read < k {
            return Err(Error::Parse {
                line: last_line + 1,
                message: format!("expected {k} rows, found {read}"),
            });
        }
        Ok(code)
    }
}

pub(crate) fn project_bits(v: u64, coords: &[usize]) -> u64 {
    coords
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &c)| acc | ((v >> (c - 1) & 1) << i))
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis().iter().map(|b| b.to_string()).collect();
        write!(f, "LinearCode[n={}, k={}; {}]", self.n, self.rows.len(), rows.join(" "))
    }
}

/// A list of words of weight at most `w`, not necessarily independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    n: usize,
    max_weight: usize,
    generators: Vec<BitVector>,
}

impl GeneratorSet {
    pub fn new(n: usize, max_weight: usize, generators: Vec<BitVector>) -> Result<Self> {
        check_length(n)?;
        if max_weight == 0 {
            return Err(Error::Precondition("weight cap must be positive".into()));
        }
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            if g.weight() > max_weight {
                return Err(Error::Precondition(format!(
                    "generator {g} has weight {} > {max_weight}",
                    g.weight()
                )));
            }
        }
        Ok(GeneratorSet {
            n,
            max_weight,
            generators,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn generators(&self) -> &[BitVector] {
        &self.generators
    }

    /// `⋃ supp(g)` over the generators, 1-indexed.
    pub fn support_union(&self) -> BTreeSet<usize> {
        support_of(self.generators.iter().fold(0, |acc, g| acc | g.bits()))
            .into_iter()
            .collect()
    }

    pub fn covers_all(&self) -> bool {
        self.generators.iter().fold(0, |acc, g| acc | g.bits()) == mask(self.n)
    }

    pub fn span(&self) -> LinearCode {
        LinearCode::span(self.n, &self.generators).expect("generator lengths checked")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        let gens: Vec<BitVector> = rows.iter().map(|r| bv(r)).collect();
        LinearCode::span(n, &gens).unwrap()
    }

    fn hamming_7_4() -> LinearCode {
        code(7, &["1000110", "0100101", "0010011", "0001111"])
    }

    #[test]
    fn insert_zero_is_never_new() {
        let (c, new) = LinearCode::zero(3).unwrap().rref_insert(&bv("000")).unwrap();
        assert!(!new);
        assert_eq!(c.dimension(), 0);
    }

    #[test]
    fn insert_first_vector() {
        let (c, new) = LinearCode::zero(3).unwrap().rref_insert(&bv("111")).unwrap();
        assert!(new);
        assert_eq!(c.basis(), vec![bv("111")]);
    }

    #[test]
    fn insert_member_keeps_basis() {
        let c = code(3, &["110", "011"]);
        let (d, new) = c.rref_insert(&bv("101")).unwrap();
        assert!(!new);
        assert_eq!(c, d);
    }

    #[test]
    fn insert_length_mismatch() {
        let c = LinearCode::zero(3).unwrap();
        assert!(matches!(
            c.rref_insert(&bv("1111")),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn rref_shape() {
        let c = code(5, &["11010", "01101", "11111"]);
        let pivots = c.pivots();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (i, &p) in pivots.iter().enumerate() {
            for (j, row) in c.basis().iter().enumerate() {
                assert_eq!(row.get(p), i == j);
            }
        }
    }

    #[test]
    fn dual_of_zero_code_is_everything() {
        let d = LinearCode::zero(5).unwrap().dual();
        assert_eq!(d, LinearCode::full(5).unwrap());
    }

    #[test]
    fn dual_of_repetition_is_even_weight() {
        let d = code(3, &["111"]).dual();
        let words: BTreeSet<u64> = d.codewords().collect();
        let expected: BTreeSet<u64> = ["000", "110", "101", "011"]
            .iter()
            .map(|s| bv(s).bits())
            .collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn hamming_dual_by_exhaustive_orthogonality() {
        let h = hamming_7_4();
        let d = h.dual();
        assert_eq!(d.dimension(), 3);
        let words: Vec<u64> = h.codewords().collect();
        let orth: BTreeSet<u64> = (0u64..128)
            .filter(|x| words.iter().all(|c| (c & x).count_ones() % 2 == 0))
            .collect();
        let dual_words: BTreeSet<u64> = d.codewords().collect();
        assert_eq!(orth, dual_words);
        assert_eq!(d.dual(), h);
    }

    #[test]
    fn min_distances() {
        assert_eq!(code(3, &["111"]).min_distance().unwrap(), 3);
        assert_eq!(code(3, &["111"]).dual().min_distance().unwrap(), 2);
        // 15 nonzero codewords, weights 3, 4 and 7.
        let h = hamming_7_4();
        let brute = h.codewords().skip(1).map(|w| w.count_ones()).min().unwrap();
        assert_eq!(brute, 3);
        assert_eq!(h.min_distance().unwrap(), 3);
        assert!(matches!(
            LinearCode::zero(4).unwrap().min_distance(),
            Err(Error::UndefinedDistance)
        ));
    }

    #[test]
    fn support_unions() {
        let gs = GeneratorSet::new(6, 3, vec![bv("111000"), bv("000111")]).unwrap();
        assert_eq!(gs.support_union(), (1..=6).collect());
        assert!(gs.covers_all());
        let gs = GeneratorSet::new(6, 3, vec![bv("110000")]).unwrap();
        assert_eq!(gs.support_union(), [1, 2].into_iter().collect());
        let gs = GeneratorSet::new(6, 3, vec![]).unwrap();
        assert!(gs.support_union().is_empty());
    }

    #[test]
    fn generator_weight_cap() {
        assert!(GeneratorSet::new(4, 2, vec![bv("1110")]).is_err());
    }

    #[test]
    fn code_file_round_trip() {
        let h = hamming_7_4();
        let parsed = LinearCode::parse_code_file(&h.to_code_file()).unwrap();
        assert_eq!(parsed, h);
    }

    #[test]
    fn code_file_dependent_rows() {
        let c = LinearCode::parse_code_file("3 3\n110\n011\n101\n").unwrap();
        assert_eq!(c.dimension(), 2);
    }

    #[test]
    fn code_file_trailing_comment() {
        let c = LinearCode::parse_code_file("3 1\n111\n# ratio=1 lambda=0.5\n").unwrap();
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn code_file_errors_carry_line_numbers() {
        match LinearCode::parse_code_file("3 2\n111\n01\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match LinearCode::parse_code_file("3 1\n1x1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(LinearCode::parse_code_file("3 2\n111\n").is_err());
        assert!(LinearCode::parse_code_file("abc").is_err());
    }

    #[test]
    fn restriction() {
        let c = code(6, &["110011"]);
        let r = c.restrict(&[1, 2, 5]).unwrap();
        assert_eq!(r.basis(), vec![bv("111")]);
    }
}
