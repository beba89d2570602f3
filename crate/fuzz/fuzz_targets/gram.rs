#![no_main]

use libfuzzer_sys::fuzz_target;
use motive_heights::height::parse_gram;

fuzz_target!(|data: &str| {
    let _ = parse_gram(data);
});
