#![no_main]

use hecke_core::llt::CanonicalCache;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let cache = CanonicalCache::new();
    if cache.read_from(data).is_ok() {
        let mut out = Vec::new();
        cache.write_to(&mut out).unwrap();
        let again = CanonicalCache::new();
        assert_eq!(again.read_from(&out[..]).unwrap(), cache.len());
    }
});
