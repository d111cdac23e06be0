#![no_main]

use libfuzzer_sys::fuzz_target;
use sppn::cli::parse_mode_range;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(range) = parse_mode_range(text) {
        assert!(range.min <= range.max);
        // accepted ranges re-parse to themselves
        let again = parse_mode_range(&format!("{}:{}", range.min, range.max)).unwrap();
        assert_eq!(again, range);
    }
});
