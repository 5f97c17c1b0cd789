#![no_main]

use inv231::{involution_to_tiling, tiling_to_involution, RedBlueTiling};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(t) = text.parse::<RedBlueTiling>() else {
        return;
    };
    assert_eq!(t.to_string().parse::<RedBlueTiling>().unwrap(), t);
    if t.total() <= 40 {
        let p = tiling_to_involution(&t);
        assert_eq!(involution_to_tiling(&p).unwrap(), t);
    }
});
