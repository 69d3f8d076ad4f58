#![no_main]

use libfuzzer_sys::fuzz_target;
use toeplitz_syzygy::literal::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_rational(text) {
        assert_eq!(parse_rational(&v.to_string()).unwrap(), v);
    }
});
