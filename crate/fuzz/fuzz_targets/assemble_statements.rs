#![no_main]

use libfuzzer_sys::fuzz_target;
use reacproc::batch::{assemble_statements, Pipeline};
use reacproc::{Law, OrderingMode, Tables};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let pipeline = Pipeline::new(Tables::bundled(), OrderingMode::Dict, Law::defaults());
    for statement in assemble_statements(text) {
        assert!(!statement.text.contains('\n'));
        assert_eq!(statement.terminated, statement.text.ends_with(';'));
        let _ = pipeline.process(&statement);
    }
});
