#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_core::MonomialLabel;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(label) = text.parse::<MonomialLabel>() else { return };
    assert_eq!(label.to_string().parse::<MonomialLabel>(), Ok(label));
});
