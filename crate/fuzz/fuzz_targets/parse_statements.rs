#![no_main]

use libfuzzer_sys::fuzz_target;
use reacproc::parser::parse_statements;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        for result in parse_statements(text) {
            if let Err(err) = result {
                assert!(err.offset <= text.len());
            }
        }
    }
});
