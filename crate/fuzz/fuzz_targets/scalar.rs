#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_core::field::parse_field_element;
use poincare_core::{Fp, Scalar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = text.parse::<Scalar>() {
        assert_eq!(x.to_string().parse::<Scalar>().as_ref(), Ok(&x));
    }
    let _ = parse_field_element::<Fp>(text, 10007);
});
