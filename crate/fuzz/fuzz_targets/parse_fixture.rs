#![no_main]

use hecke_core::verifier::tables::{parse_d_table, parse_mullineux_table};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = parse_d_table(text) {
        for row in &rows {
            let _ = row.instances(6);
        }
    }
    if let Ok(rows) = parse_mullineux_table(text) {
        for row in &rows {
            for e in 2..=6 {
                let _ = row.instances(e);
            }
        }
    }
});
