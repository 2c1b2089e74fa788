#![no_main]

use libfuzzer_sys::fuzz_target;
use reacproc::{Dictionary, PropertyTable};

// Input layout: particles table, then a NUL byte, then the lepton table.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let (props, leptons) = text.split_once('\0').unwrap_or((text, ""));
    let dict = Dictionary::bundled();
    if let Ok(table) = PropertyTable::parse(props, leptons, &dict) {
        for name in table.names() {
            assert_eq!(dict.resolve(name), name);
        }
    }
});
