#![no_main]

use inv231::{build_layered, decompose_layered, Composition};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(c) = text.parse::<Composition>() else {
        return;
    };
    assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
    if c.total() <= 24 {
        let p = build_layered(&c);
        assert!(p.is_involution());
        assert_eq!(decompose_layered(&p), Some(c));
    }
});
