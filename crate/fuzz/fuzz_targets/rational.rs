#![no_main]

use std::str::FromStr;

use libfuzzer_sys::fuzz_target;
use motive_heights::arithmetic::Rational;

fuzz_target!(|data: &str| {
    if let Ok(q) = Rational::from_str(data) {
        assert_eq!(Rational::from_str(&q.to_string()).unwrap(), q);
    }
});
