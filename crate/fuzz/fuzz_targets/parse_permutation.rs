#![no_main]

use inv231::{decompose_layered, involution_to_tiling, tiling_to_involution, Permutation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = text.parse::<Permutation>() else {
        return;
    };
    assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    if p.len() > 16 {
        return;
    }
    let _ = decompose_layered(&p);
    // the inverse map either rejects its input or hands back a preimage
    if let Ok(t) = involution_to_tiling(&p) {
        assert_eq!(tiling_to_involution(&t), p);
    }
});
