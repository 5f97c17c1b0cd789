#![no_main]

use inv231_cli::spec::{parse_pattern, SeqSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_pattern(text) {
        assert!(!c.parts().contains(&0));
    }
    let Ok(spec) = SeqSpec::parse(text) else {
        return;
    };
    assert_eq!(SeqSpec::parse(&spec.to_string()).unwrap(), spec);
    // small evaluations only; parameter bounds are the parser's job
    if !spec.is_bivariate() {
        let _ = spec.table(6);
    }
    let _ = spec.bivariate(6);
});
