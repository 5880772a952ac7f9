//! Replays the checked-in fuzz corpus through the same entry points as the
//! fuzz targets.

use std::path::{Path, PathBuf};

use hecke_core::abacus::BlockId;
use hecke_core::llt::CanonicalCache;
use hecke_core::notation::{parse_partition_arg, BracketExpr};
use hecke_core::verifier::tables::{parse_d_table, parse_mullineux_table};
use hecke_core::Partition;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|f| {
            let p = f.unwrap().path();
            let bytes = std::fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn partition_corpus() {
    let mut ok = 0;
    for (_, data) in seeds("parse_partition") {
        let Ok(text) = std::str::from_utf8(&data) else { continue };
        if let Ok(p) = text.parse::<Partition>() {
            assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
            ok += 1;
        }
        let _ = parse_partition_arg(text, None);
    }
    assert!(ok >= 5);
}

#[test]
fn bracket_corpus() {
    let mut decoded = 0;
    for (_, data) in seeds("parse_bracket") {
        let Ok(text) = std::str::from_utf8(&data) else { continue };
        let Ok(b) = BracketExpr::parse(text) else { continue };
        for e in 2..=6 {
            let block = BlockId::principal(e, 5);
            if let Ok(p) = b.decode(&block) {
                let again = BracketExpr::encode(&p, &block).unwrap();
                assert_eq!(again.decode(&block).unwrap(), p);
                decoded += 1;
            }
        }
    }
    assert!(decoded > 0);
}

#[test]
fn cache_corpus() {
    let mut loaded = 0;
    for (path, data) in seeds("load_cache") {
        let cache = CanonicalCache::new();
        match cache.read_from(&data[..]) {
            Ok(n) => {
                let mut out = Vec::new();
                cache.write_to(&mut out).unwrap();
                assert_eq!(CanonicalCache::new().read_from(&out[..]).unwrap(), n);
                loaded += 1;
            }
            Err(e) => assert!(path.ends_with("corrupt"), "{}: {e}", path.display()),
        }
    }
    assert_eq!(loaded, 3);
}

#[test]
fn fixture_corpus() {
    for (path, data) in seeds("parse_fixture") {
        let text = std::str::from_utf8(&data).unwrap();
        let name = path.file_name().unwrap().to_str().unwrap();
        if name.starts_with("d_values") {
            for row in parse_d_table(text).unwrap() {
                row.instances(6).unwrap();
            }
        } else {
            for row in parse_mullineux_table(text).unwrap() {
                for e in 2..=6 {
                    row.instances(e).unwrap();
                }
            }
        }
    }
}

/// Every instance of the Mullineux fixtures survives decode then encode.
#[test]
fn fixture_brackets_round_trip() {
    for (path, data) in seeds("parse_fixture") {
        let name = path.file_name().unwrap().to_str().unwrap();
        if !name.starts_with("mullineux") {
            continue;
        }
        for row in parse_mullineux_table(std::str::from_utf8(&data).unwrap()).unwrap() {
            for e in 2..=8 {
                for inst in row.instances(e).unwrap() {
                    let block = BlockId::principal(e, 5);
                    for p in [&inst.mu, &inst.mu_dual] {
                        let b = BracketExpr::encode(p, &block).unwrap();
                        assert_eq!(b.to_string().parse::<BracketExpr>().unwrap().decode(&block).unwrap(), *p);
                    }
                }
            }
        }
    }
}
