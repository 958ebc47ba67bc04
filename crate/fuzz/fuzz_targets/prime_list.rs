#![no_main]

use kkit_core::linalg::is_prime;
use kkit_core::suite::parse_prime_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(primes) = parse_prime_list(text) else { return };
    assert!(!primes.is_empty());
    assert!(primes.windows(2).all(|w| w[0] < w[1]));
    assert!(primes.iter().all(|&p| p == 0 || (p < 1 << 32 && is_prime(p))));
    let joined = primes.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    assert_eq!(parse_prime_list(&joined).unwrap(), primes);
});
