use std::io::Write;
use std::path::PathBuf;

use hecke_core::abacus::{e_core_and_weight, BlockId};
use hecke_core::branching::{
    signature, simple_induce, simple_restrict, specht_induce_list, specht_restrict_list, Direction, RunnerMove, Signature,
};
use hecke_core::jantzen::{js_bound, ryom_hansen_check};
use hecke_core::llt::{canonical_basis, decomposition_matrix, parse_cache, CanonicalCache};
use hecke_core::mullineux::{mullineux, mullineux_symbol};
use hecke_core::notation::{parse_partition_arg, BracketExpr};
use hecke_core::verifier::report::report;
use hecke_core::verifier::tables::parse_mullineux_table;
use hecke_core::Partition;

use crate::render;
use crate::{BlockArgs, CacheAction, CacheArgs, Cli, Command, Failure};

pub const CACHE_DIR_VAR: &str = "HECKE_CACHE_DIR";

type Out<'a> = &'a mut dyn Write;

pub fn run(cli: &Cli, out: Out<'_>) -> Result<(), Failure> {
    match &cli.command {
        Command::Core { e, partition } => {
            let p = parse_partition_arg(partition, None)?;
            let (core, w) = e_core_and_weight(&p, *e)?;
            writeln!(out, "core: {core}  weight: {w}")?;
        }
        Command::Block { ctx, partition, list } => {
            let block = match partition {
                Some(text) => {
                    let given = ctx.block()?;
                    let p = parse_partition_arg(text, given.as_ref())?;
                    BlockId::of(&p, ctx.e()?)?
                }
                None => ctx.require_block()?,
            };
            writeln!(out, "block: {block}  core: {}  weight: {}  n: {}", block.core(), block.weight, block.size())?;
            if *list {
                for p in block.enumerate() {
                    writeln!(out, "{p}")?;
                }
            }
        }
        Command::Regular { ctx } => {
            let block = ctx.require_block()?;
            let e = block.e;
            for p in block.enumerate().into_iter().filter(|p| p.is_e_regular(e)) {
                writeln!(out, "{}\t{p}", label(&p, &block))?;
            }
        }
        Command::Mullineux {
            ctx,
            partition,
            symbol,
            table,
            check,
            max_e,
        } => match (partition, table) {
            (Some(text), _) => {
                let block = ctx.block()?;
                let p = parse_partition_arg(text, block.as_ref())?;
                let d = mullineux(&p, ctx.e()?)?;
                match &block {
                    Some(b) => writeln!(out, "{}", label(&d, b))?,
                    None => writeln!(out, "{d}")?,
                }
                if *symbol {
                    let s = mullineux_symbol(&p, ctx.e()?)?;
                    let top: Vec<String> = s.columns.iter().map(|c| c.0.to_string()).collect();
                    let bottom: Vec<String> = s.columns.iter().map(|c| c.1.to_string()).collect();
                    writeln!(out, "symbol: {} / {}", top.join(" "), bottom.join(" "))?;
                }
            }
            (None, Some(path)) => mullineux_table(path, *check, *max_e, out)?,
            (None, None) => return Err(Failure::Usage("give --partition or --table".into())),
        },
        Command::Branch {
            e,
            r,
            partition,
            pair,
            kappa,
            induce,
            chain,
        } => {
            let p = parse_partition_arg(partition, None)?;
            let block = match r {
                Some(r) => BlockId::of_with_beads(&p, *e, *r)?,
                None => BlockId::of(&p, *e)?,
            };
            match (pair, chain) {
                (Some(i), _) => branch_pair(&p, &block, *i, *kappa, *induce, out)?,
                (None, Some(steps)) => branch_chain(&p, &block, steps, out)?,
                (None, None) => return Err(Failure::Usage("give --pair or --chain".into())),
            }
        }
        Command::Llt { ctx, mu, cache } => {
            let block = ctx.block()?;
            let m = parse_partition_arg(mu, block.as_ref())?;
            let c = open_cache(cache, cli.verbose)?;
            let g = canonical_basis(&m, ctx.e()?, &c.cache)?;
            let b = BlockId::of(&m, ctx.e()?)?;
            writeln!(out, "G({m})  e={}  block {b}", b.e)?;
            for (l, coeff) in g.iter().rev() {
                writeln!(out, "{}\t{l}\t{coeff}", label(l, &b))?;
            }
            c.save()?;
        }
        Command::Dmatrix {
            e,
            core,
            weight,
            at_v1,
            format,
            cache,
        } => {
            let core: Partition = core.parse()?;
            let block = BlockId::from_core(&core, *e, *weight)?;
            let c = open_cache(cache, cli.verbose)?;
            let m = decomposition_matrix(&block, &c.cache)?;
            render::dmatrix(&m, &block, *at_v1, *format, out)?;
            c.save()?;
        }
        Command::Js {
            ctx,
            p,
            lambda,
            mu,
            check_ryom_hansen,
            max_n,
            es,
        } => {
            if *check_ryom_hansen {
                return ryom_hansen(es, *max_n, cli.verbose, out);
            }
            let block = ctx.block()?;
            let (Some(l), Some(m)) = (lambda, mu) else {
                return Err(Failure::Usage("give --lambda and --mu".into()));
            };
            let l = parse_partition_arg(l, block.as_ref())?;
            let m = parse_partition_arg(m, block.as_ref())?;
            let cache = CanonicalCache::new();
            let g = canonical_basis(&m, ctx.e()?, &cache)?;
            let j = js_bound(&l, &m, ctx.e()?, *p, |t| Ok(g.coeff(t).eval_at_one()))?;
            writeln!(out, "J(p={p}) = {j}")?;
            writeln!(out, "d(v) = {}  d'(1) = {}", g.coeff(&l), g.coeff(&l).derivative_at_one())?;
        }
        Command::Verify { e, format, all, cache } => {
            if *e < 2 {
                return Err(Failure::Usage(format!("e must be at least 2, got {e}")));
            }
            let c = open_cache(cache, cli.verbose)?;
            let rep = report(*e, &c.cache)?;
            render::report(&rep, *format, *all, out)?;
            c.save()?;
            if !rep.matches_expectation()? {
                return Err(Failure::Mismatch(format!(
                    "e = {e}: verdict {} differs from the expected one",
                    rep.summary.verdict
                )));
            }
        }
        Command::Cache { action } => match action {
            CacheAction::Check { file } => {
                let f = std::fs::File::open(file)?;
                let records = parse_cache(std::io::BufReader::new(f))?;
                writeln!(out, "{} records, valid", records.len())?;
            }
            CacheAction::Warm { e, cache } => {
                let c = open_cache(cache, cli.verbose)?;
                if c.path.is_none() {
                    return Err(Failure::Usage(format!("no cache file: pass --cache or set {CACHE_DIR_VAR}")));
                }
                let block = BlockId::principal(*e, 5);
                let cols: Vec<Partition> = block.enumerate().into_iter().filter(|p| p.is_e_regular(*e)).collect();
                c.cache.compute_many(&cols, *e)?;
                c.save()?;
                writeln!(out, "{} entries", c.cache.len())?;
            }
            CacheAction::Path => match default_cache_path() {
                Some(p) => writeln!(out, "{}", p.display())?,
                None => return Err(Failure::Usage(format!("{CACHE_DIR_VAR} is not set"))),
            },
        },
    }
    Ok(())
}

impl BlockArgs {
    pub fn e(&self) -> Result<usize, Failure> {
        match self.e {
            None => Err(Failure::Usage("--e is required".into())),
            Some(e) if e < 2 => Err(Failure::Usage(format!("e must be at least 2, got {e}"))),
            Some(e) => Ok(e),
        }
    }

    /// The block named by the flags, if any.
    pub fn block(&self) -> Result<Option<BlockId>, Failure> {
        let e = self.e()?;
        if self.principal_5e {
            return Ok(Some(BlockId::principal(e, 5)));
        }
        if let Some(core) = &self.core {
            let core: Partition = core.parse()?;
            let w = self.weight.unwrap_or(0);
            return Ok(Some(BlockId::from_core(&core, e, w)?));
        }
        if let Some(beads) = &self.block {
            let counts = beads
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad bead counts {beads:?}")))?;
            if counts.len() != e {
                return Err(Failure::Usage(format!("{} bead counts for e = {}", counts.len(), e)));
            }
            return Ok(Some(BlockId {
                e,
                core_beads: counts,
                weight: self.weight.unwrap_or(0),
            }));
        }
        Ok(None)
    }

    fn require_block(&self) -> Result<BlockId, Failure> {
        self.block()?
            .ok_or_else(|| Failure::Usage("give --principal-5e, --core/--weight or --block/--weight".into()))
    }
}

fn label(p: &Partition, block: &BlockId) -> String {
    BracketExpr::encode(p, block)
        .map(|b| b.to_string())
        .unwrap_or_else(|_| p.to_string())
}

/// One file holds records for every e.
pub fn default_cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_VAR).map(|d| PathBuf::from(d).join("llt.cache"))
}

struct OpenCache {
    cache: CanonicalCache,
    path: Option<PathBuf>,
    loaded: usize,
    verbose: bool,
}

impl OpenCache {
    fn save(&self) -> Result<(), Failure> {
        if let Some(path) = &self.path {
            if self.cache.len() != self.loaded {
                if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                self.cache.save(path)?;
                if self.verbose {
                    eprintln!("saved {} entries to {}", self.cache.len(), path.display());
                }
            }
        }
        Ok(())
    }
}

fn open_cache(args: &CacheArgs, verbose: bool) -> Result<OpenCache, Failure> {
    let path = match (&args.cache, args.no_cache) {
        (Some(p), _) => Some(p.clone()),
        (None, true) => None,
        (None, false) => default_cache_path(),
    };
    let cache = CanonicalCache::new();
    let mut loaded = 0;
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        loaded = cache.load(p)?;
        if verbose {
            eprintln!("loaded {loaded} entries from {}", p.display());
        }
    }
    Ok(OpenCache {
        cache,
        path,
        loaded,
        verbose,
    })
}

fn mullineux_table(path: &PathBuf, check: bool, max_e: usize, out: Out<'_>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)?;
    let rows = parse_mullineux_table(&text)?;
    let mut bad = Vec::new();
    let mut count = 0;
    for row in &rows {
        for e in 2..=max_e {
            for inst in row.instances(e)? {
                count += 1;
                let d = mullineux(&inst.mu, e)?;
                let b = BlockId::principal(e, 5);
                let ok = d == inst.mu_dual;
                if !check || !ok {
                    writeln!(
                        out,
                        "row {} e={} i={} j={}: {} -> {} (printed {}){}",
                        row.row,
                        e,
                        inst.vars.i,
                        inst.vars.j,
                        label(&inst.mu, &b),
                        label(&d, &b),
                        label(&inst.mu_dual, &b),
                        if ok { "" } else { "  MISMATCH" }
                    )?;
                }
                if !ok {
                    bad.push(row.row);
                }
            }
        }
    }
    writeln!(out, "{count} instances, {} mismatches", bad.len())?;
    if check && !bad.is_empty() {
        return Err(Failure::Mismatch(format!("rows {bad:?}")));
    }
    Ok(())
}

fn render_sig(sig: &Signature) -> String {
    let raw = Signature::render(&sig.raw);
    let red = Signature::render(&sig.reduced);
    format!("signature: {}  reduced: {}", if raw.is_empty() { "-" } else { &raw }, if red.is_empty() { "-" } else { &red })
}

fn branch_pair(p: &Partition, block: &BlockId, i: usize, kappa: usize, induce: bool, out: Out<'_>) -> Result<(), Failure> {
    let e = block.e;
    let sig = signature(p, e, block.bead_count(), i)?;
    writeln!(out, "{}", render_sig(&sig))?;
    writeln!(out, "normal rows: {:?}  conormal rows: {:?}", sig.normal_rows(), sig.conormal_rows())?;
    let dir = if induce { Direction::Induce } else { Direction::Restrict };
    let Some(mv) = RunnerMove::new(block, i, kappa, dir) else {
        writeln!(out, "no such move from {block}")?;
        return Ok(());
    };
    writeln!(out, "{mv}")?;
    let specht = match dir {
        Direction::Restrict => specht_restrict_list(p, &mv)?,
        Direction::Induce => specht_induce_list(p, &mv)?,
    };
    let terms: Vec<String> = specht.terms.iter().map(|t| t.to_string()).collect();
    writeln!(
        out,
        "specht: {} (multiplicity {})",
        if terms.is_empty() { "0".to_string() } else { terms.join(" + ") },
        specht.multiplicity
    )?;
    if p.is_e_regular(e) {
        let simple = match dir {
            Direction::Restrict => simple_restrict(p, &mv)?,
            Direction::Induce => simple_induce(p, &mv)?,
        };
        writeln!(out, "simple: {}", render::branch(&simple))?;
    }
    Ok(())
}

fn branch_chain(p: &Partition, block: &BlockId, steps: &str, out: Out<'_>) -> Result<(), Failure> {
    let mut block = block.clone();
    let mut current = p.clone();
    if !current.is_e_regular(block.e) {
        return Err(Failure::Usage(format!("{current} is not {}-regular", block.e)));
    }
    for step in steps.split(',') {
        let (runner, kappa) = match step.trim().split_once(':') {
            Some((a, b)) => (a.trim().parse::<usize>(), b.trim().parse::<usize>()),
            None => (step.trim().parse::<usize>(), Ok(1)),
        };
        let (Ok(runner), Ok(kappa)) = (runner, kappa) else {
            return Err(Failure::Usage(format!("bad chain step {step:?}")));
        };
        let Some(mv) = RunnerMove::new(&block, runner, kappa, Direction::Restrict) else {
            return Err(Failure::Usage(format!("no move along runner {runner} from {block}")));
        };
        let b = simple_restrict(&current, &mv)?;
        writeln!(out, "{mv}: {}", render::branch(&b))?;
        match b.label() {
            Some(l) => current = l.clone(),
            None => break,
        }
        block = mv.target;
    }
    Ok(())
}

fn ryom_hansen(es: &[usize], max_n: usize, verbose: bool, out: Out<'_>) -> Result<(), Failure> {
    let mut total_bad = 0;
    for &e in es {
        let cache = CanonicalCache::new();
        let mut checked = 0;
        let mut bad = 0;
        for n in 0..=max_n {
            let (c, b) = ryom_hansen_check(n, e, &cache)?;
            if verbose {
                eprintln!("e={e} n={n}: {c} pairs");
            }
            checked += c;
            bad += b.len();
            for m in b {
                writeln!(out, "mismatch e={e}: ({}, {}) J={} d'(1)={}", m.lambda, m.mu, m.bound, m.derivative)?;
            }
        }
        writeln!(out, "e={e} n<={max_n}: {checked} pairs, {bad} mismatches")?;
        total_bad += bad;
    }
    if total_bad > 0 {
        return Err(Failure::Mismatch(format!("{total_bad} pairs disagree")));
    }
    Ok(())
}
