#![no_main]

use branchix::{Family, GroupSpec, TriMatrix};
use libfuzzer_sys::fuzz_target;

const PRIMES: [u32; 6] = [3, 5, 7, 11, 13, 251];

// Byte 0 picks the group, bytes 1..9 an element code, the rest fill rows.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let family = if head & 1 == 0 { Family::Gt } else { Family::Ut };
    let n = 2 + usize::from((head >> 1) % 5);
    let q = PRIMES[usize::from(head >> 4) % PRIMES.len()];
    let Ok(spec) = GroupSpec::new(family, n, q) else {
        return;
    };

    if rest.len() >= 8 {
        let code = u64::from_le_bytes(rest[..8].try_into().unwrap());
        if let Ok(m) = spec.decode(code) {
            assert_eq!(spec.encode(&m).expect("decoded element encodes"), code);
        }
    }

    let cells = rest.get(8..).unwrap_or_default();
    if cells.len() < n * n {
        return;
    }
    let rows: Vec<Vec<u8>> = cells[..n * n].chunks(n).map(|r| r.to_vec()).collect();
    if let Ok(m) = TriMatrix::from_rows(&rows, family == Family::Ut) {
        if let Ok(code) = spec.encode(&m) {
            let back = spec.decode(code).expect("encoded element decodes");
            assert_eq!(back, m);
            assert_eq!(back.to_rows(), rows);
        }
    }
});
