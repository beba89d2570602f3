#![no_main]

use libfuzzer_sys::fuzz_target;
use motive_heights::cli::{Theorem2Config, Theorem3Config};

fuzz_target!(|data: &str| {
    if let Ok(config) = Theorem2Config::from_toml_str(data) {
        let _ = config.build(128);
    }
    if let Ok(config) = Theorem3Config::from_toml_str(data) {
        let _ = config.build(128);
    }
});
