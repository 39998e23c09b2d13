#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_core::RationalSeries;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(series) = RationalSeries::from_json_str(text) else { return };
    assert_eq!(RationalSeries::from_json(&series.to_json()).as_ref(), Ok(&series));
});
