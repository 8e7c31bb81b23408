#![no_main]

use branchix::Family;
use branchix_cli::cache::{decode, CacheKey};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    for key in [CacheKey::new(Family::Ut, 3, 3), CacheKey::new(Family::Gt, 2, 5)] {
        if let Ok(payload) = decode(data, &key) {
            assert_eq!(payload.registry.matrix(), payload.matrix);
        }
    }
});
