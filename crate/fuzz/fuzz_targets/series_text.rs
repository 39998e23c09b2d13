#![no_main]

use libfuzzer_sys::fuzz_target;
use poincare_core::RationalSeries;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(series) = text.parse::<RationalSeries>() else { return };
    let shown = series.to_string();
    assert_eq!(shown.parse::<RationalSeries>().as_ref(), Ok(&series), "{shown}");
    let _ = series.expand(8);
});
