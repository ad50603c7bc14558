#![no_main]

use angdecomp::render::DecomposeReport;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = DecomposeReport::from_json(text) {
        let rendered = report.to_json();
        let reparsed = DecomposeReport::from_json(&rendered).expect("rendered output parses");
        assert_eq!(reparsed, report);
        assert_eq!(reparsed.to_json(), rendered);
    }
});
