//! The Mullineux involution on e-regular partitions.
//!
//! [`mullineux`] strips successive e-rims to build the Mullineux symbol,
//! transforms it and rebuilds. [`mullineux_kleshchev`] peels good nodes and
//! re-adds cogood nodes of negated residue; the two must agree.

use std::collections::HashSet;

use crate::abacus::check_runners;
use crate::branching::{add_cogood_node, remove_good_node};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Columns `(a, r)`: nodes in each successive e-rim and the number of rows
/// of the partition it was stripped from.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MullineuxSymbol {
    pub columns: Vec<(usize, usize)>,
}

/// Rim nodes `(row, col)` (0-based) from the end of the first row to the
/// start of the last row.
fn rim(lambda: &Partition) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if lambda.is_empty() {
        return out;
    }
    let (mut row, mut col) = (0usize, lambda.part(0) - 1);
    loop {
        out.push((row, col));
        if lambda.contains_node(row + 1, col) {
            row += 1;
        } else if col == 0 {
            break;
        } else {
            col -= 1;
        }
    }
    out
}

/// The e-rim: e-segments of the rim, each new segment starting at the last
/// node of the row below the previous segment's final node.
pub fn e_rim(lambda: &Partition, e: usize) -> Vec<(usize, usize)> {
    let rim = rim(lambda);
    let mut out = Vec::new();
    let mut start = 0;
    while start < rim.len() {
        let end = (start + e).min(rim.len());
        out.extend_from_slice(&rim[start..end]);
        if end - start < e {
            break;
        }
        let (last_row, _) = rim[end - 1];
        if last_row + 1 >= lambda.len() {
            break;
        }
        let target = (last_row + 1, lambda.part(last_row + 1) - 1);
        start = match rim[end..].iter().position(|&n| n == target) {
            Some(k) => end + k,
            None => break,
        };
    }
    out
}

fn strip(lambda: &Partition, nodes: &[(usize, usize)]) -> Result<Partition> {
    let mut parts = lambda.parts().to_vec();
    let set: HashSet<(usize, usize)> = nodes.iter().copied().collect();
    for (row, len) in parts.iter_mut().enumerate() {
        let removed = set.iter().filter(|&&(r, _)| r == row).count();
        if (*len - removed..*len).any(|c| !set.contains(&(row, c))) {
            return Err(Error::Invariant(format!("e-rim of {lambda} is not a skew shape")));
        }
        *len -= removed;
    }
    Partition::new(parts).map_err(|_| Error::Invariant(format!("stripping the e-rim of {lambda} failed")))
}

pub fn mullineux_symbol(lambda: &Partition, e: usize) -> Result<MullineuxSymbol> {
    check_runners(e)?;
    let mut columns = Vec::new();
    let mut cur = lambda.clone();
    while !cur.is_empty() {
        let nodes = e_rim(&cur, e);
        columns.push((nodes.len(), cur.len()));
        cur = strip(&cur, &nodes)?;
    }
    Ok(MullineuxSymbol { columns })
}

/// Outer partitions ν with `rows` parts whose e-rim has `a` nodes and
/// strips to μ.
fn extensions(mu: &Partition, a: usize, rows: usize, e: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if mu.len() > rows || rows == 0 {
        return out;
    }
    let target = mu.size() + a;
    let mut cur = Vec::with_capacity(rows);
    fn rec(
        mu: &Partition,
        rows: usize,
        a: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let j = cur.len();
        if j == rows {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = mu.part(j).max(1);
        let mut hi = if j == 0 { mu.part(0) + a } else { (mu.part(j - 1) + 1).min(cur[j - 1]) };
        hi = hi.min(mu.part(j) + left);
        let rest_min: usize = (j + 1..rows).map(|k| mu.part(k).max(1) - mu.part(k)).sum();
        for v in lo..=hi {
            let used = v - mu.part(j);
            if used + rest_min > left {
                break;
            }
            cur.push(v);
            rec(mu, rows, a, left - used, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(mu, rows, a, a, &mut cur, &mut raw);
    for parts in raw {
        let nu = Partition::new(parts).expect("decreasing by construction");
        debug_assert_eq!(nu.size(), target);
        let nodes = e_rim(&nu, e);
        if nodes.len() == a && strip(&nu, &nodes).ok().as_ref() == Some(mu) {
            out.push(nu);
        }
    }
    out
}

/// Rebuilds the partition with the given symbol, innermost column first.
pub fn from_symbol(symbol: &MullineuxSymbol, e: usize) -> Result<Partition> {
    check_runners(e)?;
    let mut cur = Partition::empty();
    for &(a, rows) in symbol.columns.iter().rev() {
        let mut found = extensions(&cur, a, rows, e);
        if found.len() != 1 {
            return Err(Error::Invariant(format!(
                "symbol column ({a},{rows}) over {cur} has {} solutions",
                found.len()
            )));
        }
        cur = found.pop().expect("one solution");
    }
    Ok(cur)
}

fn check_regular(lambda: &Partition, e: usize) -> Result<()> {
    check_runners(e)?;
    if !lambda.is_e_regular(e) {
        return Err(Error::NotERegular {
            partition: lambda.clone(),
            e,
        });
    }
    Ok(())
}

/// `λ^◇` via the Mullineux symbol.
pub fn mullineux(lambda: &Partition, e: usize) -> Result<Partition> {
    check_regular(lambda, e)?;
    let symbol = mullineux_symbol(lambda, e)?;
    let dual = MullineuxSymbol {
        columns: symbol
            .columns
            .iter()
            .map(|&(a, r)| (a, a + usize::from(a % e != 0) - r))
            .collect(),
    };
    from_symbol(&dual, e)
}

/// `λ^◇` via good nodes: residues of the good-node path are negated.
pub fn mullineux_kleshchev(lambda: &Partition, e: usize) -> Result<Partition> {
    check_regular(lambda, e)?;
    let mut path = Vec::with_capacity(lambda.size());
    let mut cur = lambda.clone();
    while !cur.is_empty() {
        let mut next = None;
        for i in 0..e {
            if let Some(smaller) = remove_good_node(&cur, e, i)? {
                next = Some((i, smaller));
                break;
            }
        }
        let (i, smaller) =
            next.ok_or_else(|| Error::Invariant(format!("{cur} has no good node")))?;
        path.push(i);
        cur = smaller;
    }
    let mut out = Partition::empty();
    for &i in path.iter().rev() {
        out = add_cogood_node(&out, e, (e - i) % e)?
            .ok_or_else(|| Error::Invariant(format!("{out} has no cogood node of residue {}", (e - i) % e)))?;
    }
    Ok(out)
}
