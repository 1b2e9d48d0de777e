#![no_main]

use libfuzzer_sys::fuzz_target;
use odepoly::{parse_equation, print_equation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_equation(text) {
        let printed = print_equation(&f);
        let again = parse_equation(&printed).expect("printed equation parses");
        assert_eq!(again, f, "round trip through {printed:?}");
    }
});
