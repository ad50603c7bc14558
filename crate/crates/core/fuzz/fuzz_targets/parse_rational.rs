#![no_main]

use angdecomp::combinatorics::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(value) = parse_rational(text) {
            let rendered = format_rational(&value);
            assert_eq!(parse_rational(&rendered).unwrap(), value);
        }
    }
});
