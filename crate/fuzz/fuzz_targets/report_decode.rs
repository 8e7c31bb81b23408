#![no_main]

use branchix::verify::VerifyReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(report) = serde_json::from_slice::<VerifyReport>(data) {
        let bytes = serde_json::to_vec(&report).expect("report serializes");
        let again: VerifyReport = serde_json::from_slice(&bytes).expect("round trip");
        assert_eq!(report, again);
        let _ = report.to_text();
    }
});
