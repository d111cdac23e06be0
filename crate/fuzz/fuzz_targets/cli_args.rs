#![no_main]

use libfuzzer_sys::fuzz_target;
use sppn::cli::{parse_args, CliError};

// Whitespace-separated argument lists; every rejection must be a one-line usage error.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("sppn").chain(text.split_whitespace());
    match parse_args(args) {
        Ok(_) => {}
        Err(CliError::Usage(msg)) => assert!(!msg.contains('\n'), "{msg:?}"),
        Err(other) => panic!("parser produced a non-usage error: {other:?}"),
    }
});
