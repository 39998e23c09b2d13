#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_core::algebra::{import_algebra, AnyAlgebra};

// Anything that imports must re-export to an identical document.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(alg) = import_algebra(text) else { return };
    let (doc, again) = match &alg {
        AnyAlgebra::Rational(a) => (a.to_json(), import_algebra(&a.to_json_string())),
        AnyAlgebra::Prime(a) => (a.to_json(), import_algebra(&a.to_json_string())),
    };
    let again = match again.expect("re-import of exported algebra") {
        AnyAlgebra::Rational(a) => a.to_json(),
        AnyAlgebra::Prime(a) => a.to_json(),
    };
    assert_eq!(doc, again);
});
