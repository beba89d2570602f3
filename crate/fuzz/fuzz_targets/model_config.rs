#![no_main]

use libfuzzer_sys::fuzz_target;
use motive_heights::height::ModelConfig;

fuzz_target!(|data: &str| {
    if let Ok(config) = ModelConfig::from_toml_str(data) {
        let _ = config.build();
    }
});
