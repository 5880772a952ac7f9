#![no_main]

use hecke_core::notation::parse_partition_arg;
use hecke_core::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = text.parse::<Partition>() {
        assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }
    let _ = parse_partition_arg(text, None);
});
