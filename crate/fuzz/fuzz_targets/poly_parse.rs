#![no_main]

use branchix::poly::parse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse(text) {
        let printed = p.to_string();
        let again = parse(&printed).expect("printed polynomial parses");
        assert_eq!(p, again, "{text:?} printed as {printed:?}");
    }
});
