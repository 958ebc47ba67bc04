#![no_main]

use kkit_core::suite::parse_suite_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(suites) = parse_suite_list(text) else { return };
    assert!(!suites.is_empty());
    assert!(suites.windows(2).all(|w| w[0] < w[1]));
    let joined = suites.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(",");
    assert_eq!(parse_suite_list(&joined).unwrap(), suites);
});
