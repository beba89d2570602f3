#![no_main]

use libfuzzer_sys::fuzz_target;
use motive_heights::cli::parse_schedule;

fuzz_target!(|data: &str| {
    if let Ok(values) = parse_schedule(data) {
        assert!(!values.is_empty());
        assert!(values.windows(2).all(|w| w[0] < w[1]));
    }
});
