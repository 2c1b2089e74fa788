#![no_main]

use libfuzzer_sys::fuzz_target;
use reacproc::lexer::tokenize;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tokens) = tokenize(text) {
        let joined = tokens.iter().map(|t| t.text).collect::<Vec<_>>().join(" ");
        let again = tokenize(&joined).expect("re-spaced tokens lex");
        assert_eq!(
            tokens.iter().map(|t| t.kind).collect::<Vec<_>>(),
            again.iter().map(|t| t.kind).collect::<Vec<_>>()
        );
    }
});
