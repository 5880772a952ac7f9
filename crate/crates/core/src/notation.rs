//! Angle-bracket block notation `<0_{λ(0)},...,(e-1)_{λ(e-1)} | b_0,...,b_{e-1}>`.
//!
//! Each entry names a runner and the partition carried by that runner when it
//! is read as a one-runner abacus. Runners carrying the empty partition are
//! omitted, and a bare runner index means the runner carries `(1)`.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr      := '<' (entry (',' entry)*)? ('|' int (',' int)*)? '>'
//! entry     := int ('_' subscript)?
//! subscript := int | '{' part (',' part)* '}'
//! part      := int ('^' int)?
//! ```
//!
//! Braces are required whenever the subscript has more than one part or an
//! exponent, so `1_3,2` reads as two entries.

use std::fmt;
use std::str::FromStr;

use crate::abacus::{display_from_quotient, AbacusDisplay, BlockId};
use crate::error::{Error, Result};
use crate::partition::{write_part_list, Partition};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BracketExpr {
    /// `(runner, runner partition)` pairs with distinct runners, sorted by runner.
    pub entries: Vec<(usize, Partition)>,
    pub bead_counts: Option<Vec<usize>>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", byte as char))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        if self.pos - start > 9 {
            self.pos = start;
            return self.err("integer too large");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits"))
    }

    fn part(&mut self, parts: &mut Vec<usize>) -> Result<()> {
        let at = self.pos;
        let value = self.int()?;
        if value == 0 {
            self.pos = at;
            return self.err("parts must be positive");
        }
        let count = if self.peek() == Some(b'^') {
            self.pos += 1;
            let c = self.int()?;
            if c == 0 || parts.len() + c > 4096 {
                return self.err("bad exponent");
            }
            c
        } else {
            1
        };
        parts.extend(std::iter::repeat_n(value, count));
        Ok(())
    }

    fn subscript(&mut self) -> Result<Partition> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let mut parts = Vec::new();
        if self.peek() == Some(b'{') {
            self.pos += 1;
            self.part(&mut parts)?;
            while self.peek() == Some(b',') {
                self.pos += 1;
                self.part(&mut parts)?;
            }
            self.expect(b'}')?;
        } else {
            let at = self.pos;
            let v = self.int()?;
            if v == 0 {
                self.pos = at;
                return self.err("parts must be positive");
            }
            parts.push(v);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonPartitionSubscript { offset: start });
        }
        Ok(Partition::from_sorted(parts))
    }

    fn entry(&mut self) -> Result<(usize, Partition)> {
        let runner = self.int()?;
        if self.peek() == Some(b'_') {
            self.pos += 1;
            Ok((runner, self.subscript()?))
        } else {
            Ok((runner, Partition::from_sorted(vec![1])))
        }
    }

    fn expr(&mut self) -> Result<BracketExpr> {
        self.expect(b'<')?;
        let mut entries = Vec::new();
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            entries.push(self.entry()?);
            while self.peek() == Some(b',') {
                self.pos += 1;
                entries.push(self.entry()?);
            }
        }
        let mut bead_counts = None;
        if self.peek() == Some(b'|') {
            self.pos += 1;
            let mut counts = vec![self.int()?];
            while self.peek() == Some(b',') {
                self.pos += 1;
                counts.push(self.int()?);
            }
            bead_counts = Some(counts);
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        entries.sort_by_key(|(r, _)| *r);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateRunner(w[0].0));
        }
        if let Some(counts) = &bead_counts {
            if let Some((runner, _)) = entries.iter().find(|(r, _)| *r >= counts.len()) {
                return Err(Error::RunnerOutOfRange {
                    runner: *runner,
                    e: counts.len(),
                });
            }
        }
        Ok(BracketExpr {
            entries,
            bead_counts,
        })
    }
}

impl BracketExpr {
    pub fn parse(text: &str) -> Result<Self> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
        .expr()
    }

    pub fn runner_partition(&self, runner: usize) -> Partition {
        self.entries
            .iter()
            .find(|(r, _)| *r == runner)
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    }

    /// Reads the concrete partition in `block`.
    pub fn decode(&self, block: &BlockId) -> Result<Partition> {
        let e = block.e;
        if let Some((runner, _)) = self.entries.iter().find(|(r, _)| *r >= e) {
            return Err(Error::RunnerOutOfRange { runner: *runner, e });
        }
        if let Some(counts) = &self.bead_counts {
            if counts != &block.core_beads {
                return Err(Error::BlockMismatch(format!(
                    "bead counts {counts:?} differ from block {block}"
                )));
            }
        }
        let quotient: Vec<Partition> = (0..e).map(|i| self.runner_partition(i)).collect();
        let found: usize = quotient.iter().map(Partition::size).sum();
        if found != block.weight {
            return Err(Error::WeightMismatch {
                expected: block.weight,
                found,
            });
        }
        if let Some(i) = (0..e).find(|&i| quotient[i].len() > block.core_beads[i]) {
            return Err(Error::BlockMismatch(format!(
                "runner {i} has {} beads, cannot carry {}",
                block.core_beads[i], quotient[i]
            )));
        }
        Ok(display_from_quotient(&block.core_beads, &quotient).to_partition())
    }

    /// Minimal form of λ relative to `block`: bead counts omitted.
    pub fn encode(lambda: &Partition, block: &BlockId) -> Result<Self> {
        if !block.contains(lambda) {
            return Err(Error::BlockMismatch(format!("{lambda} is not in {block}")));
        }
        let display = AbacusDisplay::new(lambda, block.e, block.bead_count())?;
        let entries = (0..block.e)
            .map(|i| (i, display.runner_partition(i)))
            .filter(|(_, q)| !q.is_empty())
            .collect();
        Ok(BracketExpr {
            entries,
            bead_counts: None,
        })
    }

    pub fn with_bead_counts(mut self, block: &BlockId) -> Self {
        self.bead_counts = Some(block.core_beads.clone());
        self
    }
}

impl FromStr for BracketExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BracketExpr::parse(s)
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        let mut first = true;
        for (runner, q) in self.entries.iter().filter(|(_, q)| !q.is_empty()) {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{runner}")?;
            match q.parts() {
                [1] => {}
                [k] => write!(f, "_{k}")?,
                parts => {
                    f.write_str("_{")?;
                    write_part_list(f, parts)?;
                    f.write_str("}")?;
                }
            }
        }
        if let Some(counts) = &self.bead_counts {
            f.write_str("|")?;
            for (i, c) in counts.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
        }
        f.write_str(">")
    }
}

/// Reads a partition argument given either as a part list (`5,3,1`, `-`) or
/// in bracket notation relative to `block`.
pub fn parse_partition_arg(text: &str, block: Option<&BlockId>) -> Result<Partition> {
    if text.trim_start().starts_with('<') {
        let expr = BracketExpr::parse(text)?;
        match block {
            Some(b) => expr.decode(b),
            None => Err(Error::BlockMismatch(
                "bracket notation needs a block context".into(),
            )),
        }
    } else {
        text.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::e_core_and_weight;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parses_examples() {
        let x = BracketExpr::parse("<1_{3,2}>").unwrap();
        assert_eq!(x.entries, vec![(1, p(&[3, 2]))]);
        assert_eq!(x.bead_counts, None);

        let x = BracketExpr::parse("<0,2_4|3,4,5>").unwrap();
        assert_eq!(x.entries, vec![(0, p(&[1])), (2, p(&[4]))]);
        assert_eq!(x.bead_counts, Some(vec![3, 4, 5]));

        let x = BracketExpr::parse(" < 1_{2^2} , 3 > ").unwrap();
        assert_eq!(x.entries, vec![(1, p(&[2, 2])), (3, p(&[1]))]);
        assert_eq!(x.to_string(), "<1_{2^2},3>");

        assert_eq!(BracketExpr::parse("<>").unwrap(), BracketExpr::default());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(BracketExpr::parse("<1_>"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(BracketExpr::parse("1>"), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(BracketExpr::parse("<1,2"), Err(Error::Syntax { .. })));
        assert!(matches!(BracketExpr::parse("<1><"), Err(Error::Syntax { .. })));
        assert_eq!(BracketExpr::parse("<1,1_2>"), Err(Error::DuplicateRunner(1)));
        assert_eq!(
            BracketExpr::parse("<3|5,5>"),
            Err(Error::RunnerOutOfRange { runner: 3, e: 2 })
        );
        assert_eq!(
            BracketExpr::parse("<1_{2,3}>"),
            Err(Error::NonPartitionSubscript { offset: 3 })
        );
        assert!(matches!(BracketExpr::parse("<1_0>"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn decode_examples() {
        let h0 = BlockId::principal(5, 0);
        assert_eq!(BracketExpr::parse("<>").unwrap().decode(&h0).unwrap(), p(&[]));

        // unique partition of 10 with empty 2-core whose runner-1 beads read (3,2)
        let b = BlockId::principal(2, 5);
        let decoded = BracketExpr::parse("<1_{3,2}>").unwrap().decode(&b).unwrap();
        let matches: Vec<Partition> = Partition::all_of_size(10)
            .into_iter()
            .filter(|l| e_core_and_weight(l, 2).unwrap().0.is_empty())
            .filter(|l| {
                let d = AbacusDisplay::new(l, 2, 10).unwrap();
                d.runner_partition(1) == p(&[3, 2]) && d.runner_partition(0).is_empty()
            })
            .collect();
        assert_eq!(matches, vec![decoded.clone()]);
        assert_eq!(decoded, p(&[6, 3, 1]));

        assert!(matches!(
            BracketExpr::parse("<1_5|5,4>").unwrap().decode(&b),
            Err(Error::BlockMismatch(_))
        ));
        assert_eq!(
            BracketExpr::parse("<1_4>").unwrap().decode(&b),
            Err(Error::WeightMismatch { expected: 5, found: 4 })
        );
    }

    #[test]
    fn encode_canonical_forms() {
        let b = BlockId::principal(4, 5);
        let x = BracketExpr::parse("<1_{2^2},3>").unwrap();
        let l = x.decode(&b).unwrap();
        assert_eq!(BracketExpr::encode(&l, &b).unwrap().to_string(), "<1_{2^2},3>");
        let core = b.core();
        assert_eq!(BracketExpr::encode(&core, &BlockId::principal(4, 0)).unwrap().to_string(), "<>");
    }

    #[test]
    fn decode_encode_round_trip_small_blocks() {
        for n in 0..=12 {
            for e in 2..=6 {
                let mut seen = std::collections::HashSet::new();
                for l in Partition::all_of_size(n) {
                    let block = BlockId::of(&l, e).unwrap();
                    if !seen.insert(block.clone()) {
                        continue;
                    }
                    let members = block.enumerate();
                    let mut texts = std::collections::HashSet::new();
                    for m in &members {
                        let x = BracketExpr::encode(m, &block).unwrap();
                        assert_eq!(&x.decode(&block).unwrap(), m);
                        let text = x.to_string();
                        assert_eq!(BracketExpr::parse(&text).unwrap(), x);
                        assert!(texts.insert(text), "encoding not injective");
                    }
                }
            }
        }
    }
}
