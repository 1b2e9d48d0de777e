#![no_main]

use libfuzzer_sys::fuzz_target;
use odepoly::corpus::parse_fixture;
use odepoly::parse_equation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fx) = parse_fixture(text) {
        let _ = fx.options();
        let _ = parse_equation(&fx.equation);
    }
});
