#![no_main]

use kkit_core::roots::{GroupSpec, RootDatum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = GroupSpec::parse(text) else { return };
    // Printing and reparsing is the identity on accepted specs.
    let printed = spec.to_string();
    assert_eq!(GroupSpec::parse(&printed).as_ref(), Ok(&spec), "{printed}");
    // Root data of small accepted specs build without panicking.
    if spec.factors.iter().map(|f| f.torus_rank()).sum::<usize>() <= 8 {
        let _ = RootDatum::new(spec);
    }
});
