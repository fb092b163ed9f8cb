#![no_main]

use libfuzzer_sys::fuzz_target;

use gkz_dwork_cli::{parse_job, validate, CliError};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_job(text) {
        Ok(config) => {
            // Round trip through serde must be lossless.
            let text = serde_json::to_string(&config).expect("jobs serialize");
            assert_eq!(parse_job(&text).expect("serialized job parses"), config);
            if let Err(e) = validate(config) {
                assert_eq!(e.exit_code(), 2, "{e}");
            }
        }
        Err(e) => assert!(matches!(e, CliError::Parse(_))),
    }
});
