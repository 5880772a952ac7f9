//! Canonical basis elements `G(μ)` by the LLT algorithm, with a shared cache.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::abacus::{reference_beads, BlockId};
use crate::error::{Error, Result};
use crate::fock::{f_divided, ladder_sequence, FockVector};
use crate::laurent::LaurentPoly;
use crate::partition::Partition;

type Slot = Arc<OnceLock<Result<Arc<FockVector>>>>;

/// Computed `G(μ)` keyed by `(e, μ)`. Each key is computed at most once, even
/// under concurrent use.
#[derive(Default)]
pub struct CanonicalCache {
    slots: RwLock<HashMap<(usize, Partition), Slot>>,
    extra_rows: usize,
}

impl CanonicalCache {
    pub fn new() -> Self {
        CanonicalCache::default()
    }

    /// A cache whose computations use `extra_rows * e` more beads than the
    /// reference count. The results must not depend on it.
    pub fn with_extra_rows(extra_rows: usize) -> Self {
        CanonicalCache {
            slots: RwLock::default(),
            extra_rows,
        }
    }

    fn bead_count(&self, n: usize, e: usize) -> usize {
        reference_beads(n, e).max(e) + self.extra_rows * e
    }

    fn slot(&self, e: usize, mu: &Partition) -> Slot {
        let key = (e, mu.clone());
        if let Some(s) = self.slots.read().expect("cache lock").get(&key) {
            return s.clone();
        }
        self.slots
            .write()
            .expect("cache lock")
            .entry(key)
            .or_default()
            .clone()
    }

    /// Number of completed entries.
    pub fn len(&self) -> usize {
        self.slots
            .read()
            .expect("cache lock")
            .values()
            .filter(|s| matches!(s.get(), Some(Ok(_))))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Completed entries sorted by `(e, size, μ)`.
    pub fn entries(&self) -> Vec<(usize, Partition, Arc<FockVector>)> {
        let mut out: Vec<_> = self
            .slots
            .read()
            .expect("cache lock")
            .iter()
            .filter_map(|((e, mu), s)| match s.get() {
                Some(Ok(g)) => Some((*e, mu.clone(), g.clone())),
                _ => None,
            })
            .collect();
        out.sort_by(|a, b| (a.0, a.1.size(), &a.1).cmp(&(b.0, b.1.size(), &b.1)));
        out
    }

    /// Computes `G(μ)` for every μ in parallel.
    pub fn compute_many(&self, mus: &[Partition], e: usize) -> Result<()> {
        mus.par_iter()
            .try_for_each(|mu| canonical_basis(mu, e, self).map(|_| ()))
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{CACHE_HEADER}")?;
        for (e, mu, g) in self.entries() {
            writeln!(w, "{}", format_record(e, &mu, &g))?;
        }
        Ok(())
    }

    /// Loads records, validating each against the defining properties of `G(μ)`.
    pub fn read_from(&self, r: impl BufRead) -> Result<usize> {
        let records = parse_cache(r)?;
        let count = records.len();
        for (e, mu, g) in records {
            let slot = self.slot(e, &mu);
            let _ = slot.set(Ok(Arc::new(g)));
        }
        Ok(count)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let io = |err: std::io::Error| Error::Cache {
            line: 0,
            message: err.to_string(),
        };
        let tmp = path.with_extension("tmp");
        let file = std::fs::File::create(&tmp).map_err(io)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w).map_err(io)?;
        w.flush().map_err(io)?;
        drop(w);
        std::fs::rename(&tmp, path).map_err(io)
    }

    pub fn load(&self, path: &std::path::Path) -> Result<usize> {
        let file = std::fs::File::open(path).map_err(|err| Error::Cache {
            line: 0,
            message: err.to_string(),
        })?;
        self.read_from(std::io::BufReader::new(file))
    }
}

pub const CACHE_HEADER: &str = "LLTCACHE 1";

fn format_record(e: usize, mu: &Partition, g: &FockVector) -> String {
    let mut line = format!("{e} {} {mu}", mu.size());
    for (lambda, c) in g.iter().rev() {
        let _ = write!(line, " ; {lambda} ");
        let terms: Vec<String> = c.terms().map(|(x, k)| format!("{x}:{k}")).collect();
        line.push_str(&terms.join(","));
    }
    line
}

/// Parses a cache file into validated `(e, μ, G(μ))` records.
pub fn parse_cache(r: impl BufRead) -> Result<Vec<(usize, Partition, FockVector)>> {
    let mut lines = r.lines();
    let err = |line: usize, message: &str| Error::Cache {
        line,
        message: message.to_string(),
    };
    let io = |line: usize| move |e: std::io::Error| Error::Cache {
        line,
        message: e.to_string(),
    };
    let header = lines.next().transpose().map_err(io(1))?;
    if header.as_deref().map(str::trim) != Some(CACHE_HEADER) {
        return Err(err(1, "missing LLTCACHE 1 header"));
    }
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (k, line) in lines.enumerate() {
        let no = k + 2;
        let line = line.map_err(io(no))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let (e, mu, g) = parse_record(text).map_err(|m| err(no, &m))?;
        if !seen.insert((e, mu.clone())) {
            return Err(err(no, "duplicate record"));
        }
        out.push((e, mu, g));
    }
    Ok(out)
}

fn parse_record(text: &str) -> std::result::Result<(usize, Partition, FockVector), String> {
    let mut fields = text.split(';');
    let head: Vec<&str> = fields.next().unwrap_or("").split_whitespace().collect();
    let [e, n, mu] = head[..] else {
        return Err("expected 'e n mu' before the first ';'".into());
    };
    let e: usize = crate::partition::parse_uint(e).ok_or("bad e")?;
    let n: usize = crate::partition::parse_uint(n).ok_or("bad n")?;
    if e < 2 {
        return Err("e must be at least 2".into());
    }
    let mu: Partition = mu.parse().map_err(|x: Error| x.to_string())?;
    if mu.size() != n {
        return Err(format!("{mu} does not have size {n}"));
    }
    if !mu.is_e_regular(e) {
        return Err(format!("{mu} is not {e}-regular"));
    }
    let mut g = FockVector::zero();
    for field in fields {
        let field = field.trim();
        let (lambda, poly) = field.split_once(' ').ok_or("expected 'lambda terms'")?;
        let lambda: Partition = lambda.parse().map_err(|x: Error| x.to_string())?;
        if lambda.size() != n {
            return Err(format!("{lambda} does not have size {n}"));
        }
        if g.get(&lambda).is_some() {
            return Err(format!("{lambda} listed twice"));
        }
        let mut c = LaurentPoly::zero();
        for term in poly.trim().split(',') {
            let (x, k) = term.split_once(':').ok_or("expected exp:coeff")?;
            let x: i32 = x.trim().parse().map_err(|_| "bad exponent")?;
            let k: i64 = k.trim().parse().map_err(|_| "bad coefficient")?;
            if x.unsigned_abs() > 1 << 16 {
                return Err("exponent out of range".into());
            }
            c.add_term(x, k);
        }
        if c.is_zero() {
            return Err(format!("zero coefficient at {lambda}"));
        }
        g.add_term(lambda, &c);
    }
    for (lambda, c) in g.iter() {
        let ok = if *lambda == mu { c.is_one() } else { c.in_v_z_v() };
        if !ok {
            return Err(format!("coefficient {c} at {lambda} violates G(mu) = s(mu) mod vL"));
        }
    }
    if g.get(&mu).is_none() {
        return Err(format!("missing the leading term at {mu}"));
    }
    Ok((e, mu, g))
}

/// The first approximation `A(μ)`: divided powers along the ladders of μ.
pub fn ladder_vector(mu: &Partition, e: usize, r: usize) -> Result<FockVector> {
    let mut x = FockVector::basis(Partition::empty());
    for (i, m) in ladder_sequence(mu, e)? {
        x = f_divided(&x, i, m, e, r)?;
    }
    Ok(x)
}

/// `G(μ)`.
pub fn canonical_basis(mu: &Partition, e: usize, cache: &CanonicalCache) -> Result<Arc<FockVector>> {
    crate::abacus::check_runners(e)?;
    if !mu.is_e_regular(e) {
        return Err(Error::NotERegular {
            partition: mu.clone(),
            e,
        });
    }
    let slot = cache.slot(e, mu);
    slot.get_or_init(|| compute(mu, e, cache).map(Arc::new))
        .clone()
}

fn compute(mu: &Partition, e: usize, cache: &CanonicalCache) -> Result<FockVector> {
    let r = cache.bead_count(mu.size(), e);
    let mut x = ladder_vector(mu, e, r)?;
    if !x.coeff(mu).is_one() {
        return Err(Error::Invariant(format!("ladder vector of {mu} lacks its leading term")));
    }
    if x.iter().next_back().map(|(top, _)| top) != Some(mu) {
        return Err(Error::CorrectionDiverged(mu.clone()));
    }
    // Walk down in lexicographic order; corrections only touch smaller terms.
    let mut cursor = mu.clone();
    let mut steps = 0usize;
    let limit = 4 * x.len() + 64;
    loop {
        let next = x
            .iter()
            .rev()
            .skip_while(|(lambda, _)| **lambda >= cursor)
            .find(|(_, c)| c.min_degree().is_some_and(|d| d <= 0))
            .map(|(lambda, c)| (lambda.clone(), c.symmetric_lower_part()));
        let Some((nu, beta)) = next else { break };
        if !nu.is_e_regular(e) {
            return Err(Error::CorrectionDiverged(nu));
        }
        let g = canonical_basis(&nu, e, cache)?;
        x.add_scaled(&-&beta, &g);
        cursor = nu;
        steps += 1;
        if steps > limit {
            return Err(Error::CorrectionDiverged(mu.clone()));
        }
    }
    Ok(x)
}

/// `d_{λμ}(v)`, the coefficient of `s(λ)` in `G(μ)`.
pub fn v_decomp(lambda: &Partition, mu: &Partition, e: usize, cache: &CanonicalCache) -> Result<LaurentPoly> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    Ok(canonical_basis(mu, e, cache)?.coeff(lambda))
}

/// `d'_{λμ}(1)`.
pub fn jc_bound(lambda: &Partition, mu: &Partition, e: usize, cache: &CanonicalCache) -> Result<i64> {
    Ok(v_decomp(lambda, mu, e, cache)?.derivative_at_one())
}

/// v-decomposition matrix of a block: rows are all partitions, columns the
/// e-regular ones, both in descending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    pub rows: Vec<Partition>,
    pub cols: Vec<Partition>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl DecompositionMatrix {
    pub fn at_one(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(LaurentPoly::eval_at_one).collect())
            .collect()
    }
}

pub fn decomposition_matrix(block: &BlockId, cache: &CanonicalCache) -> Result<DecompositionMatrix> {
    let e = block.e;
    let rows = block.enumerate();
    let cols: Vec<Partition> = rows.iter().filter(|l| l.is_e_regular(e)).cloned().collect();
    cache.compute_many(&cols, e)?;
    let gs: Vec<Arc<FockVector>> = cols
        .iter()
        .map(|mu| canonical_basis(mu, e, cache))
        .collect::<Result<_>>()?;
    let entries = rows
        .iter()
        .map(|lambda| gs.iter().map(|g| g.coeff(lambda)).collect())
        .collect();
    Ok(DecompositionMatrix { rows, cols, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_canonical_bases() {
        let cache = CanonicalCache::new();
        let g = canonical_basis(&p(&[2]), 2, &cache).unwrap();
        let want: FockVector = [(p(&[2]), LaurentPoly::one()), (p(&[1, 1]), LaurentPoly::v())]
            .into_iter()
            .collect();
        assert_eq!(*g, want);
        let g = canonical_basis(&p(&[]), 3, &cache).unwrap();
        assert_eq!(*g, FockVector::basis(p(&[])));
        assert!(canonical_basis(&p(&[1, 1]), 2, &cache).is_err());
    }

    #[test]
    fn weight_zero_and_h2_matrices() {
        let cache = CanonicalCache::new();
        let b = BlockId::of(&p(&[2]), 3).unwrap();
        let m = decomposition_matrix(&b, &cache).unwrap();
        assert_eq!(m.at_one(), vec![vec![1]]);
        let b = BlockId::of(&p(&[2]), 2).unwrap();
        let m = decomposition_matrix(&b, &cache).unwrap();
        assert_eq!(m.cols, vec![p(&[2])]);
        assert_eq!(m.at_one(), vec![vec![1], vec![1]]);
    }

    #[test]
    fn cache_file_round_trip() {
        let cache = CanonicalCache::new();
        for mu in [p(&[3, 2]), p(&[4, 1]), p(&[5])] {
            canonical_basis(&mu, 2, &cache).unwrap();
        }
        let mut buf = Vec::new();
        cache.write_to(&mut buf).unwrap();
        let warm = CanonicalCache::new();
        assert_eq!(warm.read_from(&buf[..]).unwrap(), cache.len());
        let mut again = Vec::new();
        warm.write_to(&mut again).unwrap();
        assert_eq!(buf, again);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("LLTCACHE 1\n"));
        assert!(text.contains("\n2 5 5 ; 5 0:1 ; "));
    }

    #[test]
    fn cache_file_rejections() {
        let bad = [
            "",
            "LLTCACHE 2\n",
            "LLTCACHE 1\n2 2 2 ; 2 0:1 ; 1^2 0:1\n",
            "LLTCACHE 1\n2 2 1^2 ; 1^2 0:1\n",
            "LLTCACHE 1\n2 2 2 ; 1^2 1:1\n",
            "LLTCACHE 1\n2 2 2 ; 2 0:2\n",
            "LLTCACHE 1\n2 3 2 ; 2 0:1\n",
            "LLTCACHE 1\n2 2 2 ; 2 0:1\n2 2 2 ; 2 0:1\n",
            "LLTCACHE 1\n2 2 2 ; 2 0:1 ; 2 0:1\n",
            "LLTCACHE 1\n2 2 2 ; 2 x:1\n",
        ];
        for text in bad {
            assert!(parse_cache(text.as_bytes()).is_err(), "{text:?}");
        }
        let good = "LLTCACHE 1\n\n2 2 2 ; 2 0:1 ; 1^2 1:1\n";
        assert_eq!(parse_cache(good.as_bytes()).unwrap().len(), 1);
    }
}
