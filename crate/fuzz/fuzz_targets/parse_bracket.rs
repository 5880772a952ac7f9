#![no_main]

use hecke_core::abacus::BlockId;
use hecke_core::notation::BracketExpr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(b) = BracketExpr::parse(text) else {
        return;
    };
    for e in 2..=6 {
        let block = BlockId::principal(e, 5);
        if let Ok(p) = b.decode(&block) {
            let again = BracketExpr::encode(&p, &block).unwrap();
            assert_eq!(again.decode(&block).unwrap(), p);
        }
    }
});
