//! Library half of the `selberg` command: output records, verification
//! suites and the chain benchmark. `main.rs` only parses flags and maps
//! results to exit codes.

pub mod bench;
pub mod output;
pub mod verify;

use selberg_core::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const SINGULAR: u8 = 2;
    pub const VERIFY_FAILED: u8 = 3;
}

/// Exit code for a library error.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ParameterSingular { .. } | Error::DivisionByZero(_) | Error::Divergent(_) => {
            exit::SINGULAR
        }
        Error::SizeGuard { .. } | Error::InvalidParameter(_) => exit::USAGE,
    }
}
