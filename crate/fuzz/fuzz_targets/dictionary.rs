#![no_main]

use libfuzzer_sys::fuzz_target;
use reacproc::Dictionary;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(dict) = Dictionary::parse(text) {
        for (rank, entry) in dict.entries().enumerate() {
            for name in entry {
                assert_eq!(dict.rank(name), Some(rank));
                assert_eq!(dict.key_of(name), Some(entry[0].as_str()));
            }
        }
    }
});
