#![no_main]

use libfuzzer_sys::fuzz_target;
use reacproc::{canonicalize, parse_reaction, render_reaction, OrderingMode, Tables};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(reaction) = parse_reaction(text) else {
        return;
    };
    reaction.validate().expect("parsed tree is well formed");
    let rendered = render_reaction(&reaction);
    assert_eq!(
        parse_reaction(&rendered).expect("rendered text parses"),
        reaction
    );

    let tables = Tables::bundled();
    for mode in [OrderingMode::TrueLex, OrderingMode::Dict] {
        let canonical = canonicalize(&reaction, mode, &tables.dictionary);
        assert_eq!(
            canonicalize(&canonical, mode, &tables.dictionary),
            canonical
        );
        let text = render_reaction(&canonical);
        let back = parse_reaction(&text).expect("canonical text parses");
        if back != canonical.expand_counts() {
            // An empty first alternative before a `-` group comes back as `( )`.
            assert_eq!(canonicalize(&back, mode, &tables.dictionary), canonical);
        }
    }
});
