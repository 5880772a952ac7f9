//! Integer partitions: the index object for rows and columns of every
//! matrix in this crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

/// Outcome of comparing two partitions in a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartialCmp {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Partition {
    /// Builds a partition, rejecting sequences that are not weakly decreasing.
    /// Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Syntax {
                offset: 0,
                message: format!("{parts:?} is not a partition"),
            });
        }
        Ok(Partition(parts))
    }

    /// Caller guarantees the parts are weakly decreasing and positive.
    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first_part(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first_part();
        let mut cols = Vec::with_capacity(width);
        for c in 0..width {
            cols.push(self.0.iter().take_while(|&&p| p > c).count());
        }
        Partition(cols)
    }

    /// True iff no part value is repeated `e` or more times.
    pub fn is_e_regular(&self, e: usize) -> bool {
        let mut run = 0;
        let mut prev = 0;
        for &p in &self.0 {
            if p == prev {
                run += 1;
            } else {
                prev = p;
                run = 1;
            }
            if run >= e {
                return false;
            }
        }
        true
    }

    pub fn dominance_cmp(&self, other: &Partition) -> Result<PartialCmp> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let (mut ge, mut le) = (true, true);
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            ge &= a >= b;
            le &= a <= b;
        }
        Ok(match (ge, le) {
            (true, true) => PartialCmp::Equal,
            (true, false) => PartialCmp::Greater,
            (false, true) => PartialCmp::Less,
            (false, false) => PartialCmp::Incomparable,
        })
    }

    /// `self ⊵ other` in the dominance order; false for different sizes.
    pub fn dominates(&self, other: &Partition) -> bool {
        matches!(
            self.dominance_cmp(other),
            Ok(PartialCmp::Greater | PartialCmp::Equal)
        )
    }

    /// Drops the first part.
    pub fn remove_first_row(&self) -> Result<Partition> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Partition(self.0[1..].to_vec()))
    }

    /// Nodes `(row, col)`, 0-based, row by row.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    pub fn contains_node(&self, row: usize, col: usize) -> bool {
        self.part(row) > col
    }

    /// Every partition of `n` in descending lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Orders partitions descending-lexicographically, the deterministic order
/// used for every enumeration in the crate.
pub fn descending_lex(a: &Partition, b: &Partition) -> Ordering {
    b.cmp(a)
}

/// Parses a comma-separated part list with optional exponents, e.g.
/// `2^2,1`. The empty partition is written `-`.
pub(crate) fn parse_part_list(text: &str, base_offset: usize) -> Result<Vec<usize>> {
    let mut parts = Vec::new();
    let mut offset = base_offset;
    for piece in text.split(',') {
        let trimmed = piece.trim();
        let lead = piece.len() - piece.trim_start().len();
        let (base, exp) = match trimmed.split_once('^') {
            Some((b, x)) => (b.trim(), Some(x.trim())),
            None => (trimmed, None),
        };
        let err = |message: &str| Error::Syntax {
            offset: offset + lead,
            message: message.to_string(),
        };
        let value: usize = parse_uint(base).ok_or_else(|| err("expected a positive part"))?;
        if value == 0 {
            return Err(err("parts must be positive"));
        }
        let count = match exp {
            Some(x) => parse_uint(x).ok_or_else(|| err("expected an exponent"))?,
            None => 1,
        };
        if count == 0 {
            return Err(err("exponent must be positive"));
        }
        if parts.len() + count > 4096 {
            return Err(err("partition too long"));
        }
        parts.extend(std::iter::repeat_n(value, count));
        offset += piece.len() + 1;
    }
    Ok(parts)
}

pub(crate) fn parse_uint(s: &str) -> Option<usize> {
    if s.is_empty() || s.len() > 9 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "-" {
            return Ok(Partition::empty());
        }
        let parts = parse_part_list(t, s.len() - s.trim_start().len())?;
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonPartitionSubscript { offset: 0 });
        }
        Ok(Partition(parts))
    }
}

/// Writes parts with exponent shorthand for repeated values (`2^2,1`).
pub(crate) fn write_part_list(f: &mut impl fmt::Write, parts: &[usize]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        if !first {
            f.write_char(',')?;
        }
        first = false;
        if j - i > 1 {
            write!(f, "{}^{}", parts[i], j - i)?;
        } else {
            write!(f, "{}", parts[i])?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        write_part_list(f, &self.0)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[]).conjugate(), p(&[]));
        assert_eq!(p(&[3, 2]).conjugate(), p(&[2, 2, 1]));
        assert_eq!(p(&[5]).conjugate(), p(&[1, 1, 1, 1, 1]));
        for n in 0..10 {
            for q in Partition::all_of_size(n) {
                assert_eq!(q.conjugate().conjugate(), q);
            }
        }
    }

    #[test]
    fn regularity() {
        assert!(!p(&[1, 1]).is_e_regular(2));
        assert!(p(&[2]).is_e_regular(2));
        assert!(p(&[2, 2, 1]).is_e_regular(3));
        assert!(p(&[]).is_e_regular(2));
    }

    #[test]
    fn dominance() {
        assert_eq!(p(&[2]).dominance_cmp(&p(&[1, 1])).unwrap(), PartialCmp::Greater);
        assert_eq!(
            p(&[3, 1, 1]).dominance_cmp(&p(&[2, 2, 2])).unwrap_err(),
            Error::SizeMismatch(5, 6)
        );
        assert_eq!(
            p(&[3, 1, 1, 1]).dominance_cmp(&p(&[2, 2, 2])).unwrap(),
            PartialCmp::Incomparable
        );
        let l = p(&[4, 2, 1]);
        assert_eq!(l.dominance_cmp(&l).unwrap(), PartialCmp::Equal);
    }

    #[test]
    fn first_row_removal() {
        assert_eq!(p(&[5, 3, 1]).remove_first_row().unwrap(), p(&[3, 1]));
        assert_eq!(p(&[1]).remove_first_row().unwrap(), p(&[]));
        assert_eq!(p(&[4, 4]).remove_first_row().unwrap(), p(&[4]));
        assert_eq!(p(&[]).remove_first_row(), Err(Error::EmptyPartition));
    }

    #[test]
    fn text_form() {
        assert_eq!("5,3,1".parse::<Partition>().unwrap(), p(&[5, 3, 1]));
        assert_eq!("2^2,1".parse::<Partition>().unwrap(), p(&[2, 2, 1]));
        assert_eq!(" - ".parse::<Partition>().unwrap(), p(&[]));
        assert_eq!(p(&[2, 2, 1]).to_string(), "2^2,1");
        assert_eq!(p(&[]).to_string(), "-");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert!("3,,1".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..13).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let four = Partition::all_of_size(4);
        assert!(four.windows(2).all(|w| w[0] > w[1]));
    }
}
