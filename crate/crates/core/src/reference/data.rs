//! Transcribed branching tables.
//!
//! Each row lists the entries of one target type, one string per source
//! column. `0@k` abbreviates `k` consecutive zero entries. Entries are
//! written as printed, with factored forms kept factored.

pub(super) struct GroupData {
    pub labels: &'static [&'static str],
    pub regular: &'static [&'static str],
    pub new_types: &'static [&'static str],
    pub rows: &'static [&'static str],
    /// Centralizer orders as printed in the class tables; new types use the
    /// order of the common centralizer described where they first appear.
    pub centralizers: &'static [&'static str],
    /// `(numerator, denominator)` for k = 2..=5.
    pub cp: [(&'static str, &'static str); 4],
}

pub(super) const GT2: GroupData = GroupData {
    labels: &["C", "R1", "R2"],
    regular: &["R1", "R2"],
    new_types: &[],
    rows: &["q-1, 0, 0", "q-1, q(q-1), 0", "(q-1)(q-2), 0, (q-1)^2"],
    centralizers: &["(q-1)^2 q", "(q-1)q", "(q-1)^2"],
    cp: [
        ("1", "q - 1"),
        ("q^{2} - q + 2", "q^{4} - 2 q^{3} + q^{2}"),
        ("q^{2} - 2 q + 4", "q^{5} - 3 q^{4} + 3 q^{3} - q^{2}"),
        (
            "q^{4} - 3 q^{3} + 7 q^{2} - 3 q + 2",
            "q^{8} - 4 q^{7} + 6 q^{6} - 4 q^{5} + q^{4}",
        ),
    ],
};

pub(super) const GT3: GroupData = GroupData {
    labels: &["C", "A1", "A2", "B1", "R1", "R2", "R3"],
    regular: &["R1", "R2", "R3"],
    new_types: &[],
    rows: &[
        "q-1, 0@6",
        "2(q-1), q(q-1), 0@5",
        "q-1, 0, q(q-1), 0@4",
        "3(q-1)(q-2), 0, 0, (q-1)^2, 0@3",
        "q-1, q(q-1), q^2-1, 0, (q-1)q^2, 0, 0",
        "3(q-1)(q-2), q(q-1)(q-2), q(q-1)(q-2), (q-1)^2, 0, (q-1)^2q, 0",
        "(q-1)(q-2)(q-3), 0, 0, (q-1)^2(q-2), 0, 0, (q-1)^3",
    ],
    centralizers: &[
        "(q-1)^3q^3",
        "(q-1)^2q^2",
        "(q-1)^2q^3",
        "(q-1)^3q",
        "(q-1)q^2",
        "(q-1)^2q",
        "(q-1)^3",
    ],
    cp: [
        ("q^{2} + q - 1", "q^3(q-1)^2"),
        ("q^{3} - q^{2} + q + 5", "q^5(q-1)^4"),
        ("q^{5} - 3 q^{4} + 7 q^{3} - 5 q^{2} + 11 q + 4", "q^8(q-1)^6"),
        (
            "q^{7} - 5 q^{6} + 17 q^{5} - 32 q^{4} + 54 q^{3} - 34 q^{2} + 25 q + 2",
            "q^{11}(q-1)^8",
        ),
    ],
};

/// Three column blocks: 17 non-regular types, 5 regular types, 6 new types.
pub(super) const GT4: GroupData = GroupData {
    labels: &[
        "C", "A1", "A'1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "B1", "B2", "B3", "B4", "B5", "B6",
        "R1", "R2", "R3", "R4", "R5", "tNT1", "tNT2", "tNT3", "tNT4", "tNT5", "NR1",
    ],
    regular: &["R1", "R2", "R3", "R4", "R5", "NR1"],
    new_types: &["tNT1", "tNT2", "tNT3", "tNT4", "tNT5", "NR1"],
    rows: &[
        // C
        "q - 1, 0@16, 0@5, 0@6",
        // A1
        "2 q - 2, q^{2} - q, 0@15, 0@5, 0@6",
        // A'1
        "q - 1, 0, q^{2} - q, 0@14, 0@5, 0@6",
        // A2
        "2 q - 2, 0, 0, q^{2} - q, 0@13, 0@5, 0@6",
        // A3
        "q - 1, 0@3, q^{2} - q, 0@12, 0@5, 0@6",
        // A4
        "q - 1, 0@4, q^{2} - q, 0@11, 0@5, 0@6",
        // A5
        "q - 1, 0, q^{2} - q, q^{2} - q, q^{2} - q, 0, q^{3} - q^{2}, q(q-1)^2, 0@9, 0@5, 0@6",
        // A6
        "q - 1, 0@6, q^{2} - q, 0@9, 0@5, 0@6",
        // A7
        "2 q - 2, q^{2} - q, 0, q^{2} - q, 0@4, q^{3} - q^{2}, 0@8, 0@5, 0@6",
        // A8
        "q - 1, q^{2} - q, 0, 0, 2 q^{2} - 2 q, 0@4, q^{3} - q^{2}, 0@7, 0@5, 0@6",
        // A9
        "q - 1, 0@3, q^{2} - q, 0@5, q^{3} - q^{2}, 0@6, 0@5, 0@6",
        // B1
        "(3q-3).(q-2), 0@10, (q-1)^2, 0@5, 0@5, 0@6",
        // B2
        "(4q-4).(q-2), 0@11, (q-1)^2, 0@4, 0@5, 0@6",
        // B3
        "(8q-8).(q-2), 2(q^2-q).(q-2), 2(q^2-q).(q-2), (q^2-q).(q-2), 0@8, (q-1)^2, q(q-1)^2, 0@3, 0@5, 0@6",
        // B4
        "(4q-4).(q-2), 0, 0, (q^2-q).(q-2), 2(q^2-q).(q-2), 0@7, (q-1)^2, 0, q(q-1)^2, 0, 0, 0@5, 0@6",
        // B5
        "(6q-6).(q-2), (q^2-q).(q-2), (q^2-q).(q-2), (q^2-q).(q-2), (q^2-q).(q-2), 0@6, 2(q-1)^2, 0@3, (q^2-q).(q-2), 0, 0@5, 0@6",
        // B6
        "(6q-6).(q-2).(q-3), 0@10, 2 q^{3} - 8 q^{2} + 10 q - 4, q^{3} - 4 q^{2} + 5 q - 2, 0@3, (q-1)^3, 0@5, 0@6",
        // R1
        "q - 1, q^{2} - q, 0, q^{2} - q, q^{2} - 1, q^{3} - q^{2}, 0, q^{3} - q^{2}, q^{3} - q^{2}, q^{3} - q, q^{4} - q^{3} - q^{2} + q, 0@6, \
         q^{4} - q^{3}, 0@4, \
         q^{3} - q^{2}, 0, q^{3} - q^{2}, q^{4} - 2 q^{3} + q^{2}, q^{4} - q^{3} - q^{2} + q, 0",
        // R2 (leading entry printed as "(4q^-4).(q-2)")
        "(4q-4).(q-2), (2q-2).(q-2), (2q-2).(q-2), (3q-3).(q-2), 2 q^{3} - 4 q^{2} - 2 q + 4, 0@3, (q^3-q^2).(q-2), (q^3-q^2).(q-2), 0, 0, (q-1)^2, q(q-1)^2, q^{3} - q^{2} - q + 1, 0, 0, \
         0, q^{4} - 2 q^{3} + q^{2}, 0@3, \
         0, q^{4} - 3 q^{3} + 2 q^{2}, q^{4} - 3 q^{3} + 2 q^{2}, 0@3",
        // R3
        "(3q-3).(q-2), (q^2-q).(q-2), (q^2-q).(q-2), (q^2-q).(q-2), (q^2-q).(q-2), (q^3-q^2).(q-2), (q^3-q^2).(q-2), (q^3-q^2).(q-2), 0@3, (q-1)^2, 0@3, q(q-1)^2, 0, \
         0, 0, q^{4} - 2 q^{3} + q^{2}, 0, 0, \
         q^{4} - 3 q^{3} + 2 q^{2}, 0@5",
        // R4
        "(6q-6).(q-2).(q-3), q^{4} - 6 q^{3} + 11 q^{2} - 6 q, q^{4} - 6 q^{3} + 11 q^{2} - 6 q, q^{4} - 6 q^{3} + 11 q^{2} - 6 q, q^{4} - 6 q^{3} + 11 q^{2} - 6 q, 0@6, \
         2 q^{3} - 8 q^{2} + 10 q - 4, q^{3} - 4 q^{2} + 5 q - 2, q^{4} - 4 q^{3} + 5 q^{2} - 2 q, q^{4} - 4 q^{3} + 5 q^{2} - 2 q, q^{4} - 4 q^{3} + 5 q^{2} - 2 q, q^{3} - 3 q^{2} + 3 q - 1, \
         0@3, q^{4} - 3 q^{3} + 3 q^{2} - q, 0, \
         0@6",
        // R5 (leading entry printed as 4! binom(q-1, 4))
        "(q-1)(q-2)(q-3)(q-4), 0@10, q^{4} - 6q^{3} + 13q^{2} - 12q + 4, q^{4} - 7q^{3} + 17q^{2} - 17q + 6, 0@3, q^{4} - 5 q^{3} + 9 q^{2} - 7 q + 2, \
         0@4, (q-1)^4, \
         0@6",
        // tNT1
        "0, q^{2} - q, 0@3, q(q-1)^2, 0@11, 0@5, q^{3} - q^{2}, 0@5",
        // tNT2
        "0, 0, 2 q^{2} - 2 q, q - 1, 0@13, 0@5, 0, q^{3} - q^{2}, 0@4",
        // tNT3
        "0@3, q^{2} - q, 2 q - 2, 0@12, 0@5, 0, 0, q^{3} - q^{2}, 0@3",
        // tNT4
        "0@4, q - 1, 0, 0, q^{3} - q^{2}, 0@9, 0@5, 0@3, q^{3} - q^{2}, 0, 0",
        // tNT5
        "0@5, q^{2} - q, 0@11, 0@5, 0@4, q^{3} - q, 0",
        // NR1
        "0, 0, q^{3} + q^{2} - 2 q, q^{2} - 1, 0, 0, q^{4} - q^{2}, q^{3} - q^{2}, 0@9, 0@5, \
         0, q^{4} - q^{2}, q^{3} - q, q^{4} - q^{3} - q^{2} + q, 0, q^{5} - q^{4}",
    ],
    centralizers: &[
        "(q-1)^4q^6",
        "(q-1)^3q^4",
        "(q-1)^3q^4",
        "(q-1)^3q^5",
        "(q-1)^3q^6",
        "(q-1)^2q^4",
        "(q-1)^2q^4",
        "(q-1)^2q^5",
        "(q-1)^2q^3",
        "(q-1)^2q^4",
        "q(q-1)q^4",
        "(q-1)^4q^2",
        "(q-1)^4q^3",
        "(q-1)^3q^2",
        "(q-1)^3q^3",
        "(q-1)^3q^2",
        "(q-1)^4q",
        "(q-1)q^3",
        "(q-1)^2q^2",
        "(q-1)^2q^2",
        "(q-1)^3q",
        "(q-1)^4",
        "(q-1)^2q^3",
        "(q-1)^2q^4",
        "(q-1)^2q^5",
        "(q-1)q^5",
        "(q-1)q^4",
        "(q-1)q^4",
    ],
    cp: [
        ("q^{3} + 3 q^{2} - 2 q - 1", "q^{10}(q-1)^3"),
        ("12 q^{5} - 52 q^{4} + 116 q^{3} - 97 q^{2} + 63 q - 37", "q^{20}(q-1)^6"),
        (
            "6 q^{8} - 16 q^{7} + 3 q^{6} + 195 q^{5} - 593 q^{4} + 1105 q^{3} - 1129 q^{2} + 912 q - 477",
            "q^{30}(q-1)^9",
        ),
        (
            "7 q^{11} - 32 q^{10} + 122 q^{9} - 192 q^{8} + 342 q^{7} - 714 q^{6} + 2038 q^{5} - 3954 q^{4} \
             + 6136 q^{3} - 6304 q^{2} + 4596 q - 2213",
            "q^{40}(q-1)^{12}",
        ),
    ],
};

pub(super) const UT3: GroupData = GroupData {
    labels: &["C", "R1"],
    regular: &["R1"],
    new_types: &[],
    rows: &["q, 0", "q^2-1, q^2"],
    centralizers: &["q^3", "q^2"],
    cp: [
        ("q^{2} + q - 1", "q^{3}"),
        ("q^{3} + q^{2} - 1", "q^{5}"),
        ("q^{4} + q^{3} - 1", "q^{7}"),
        ("q^{5} + q^{4} - 1", "q^{9}"),
    ],
};

pub(super) const UT4: GroupData = GroupData {
    labels: &["C", "A1", "A2", "A3", "R1", "R2"],
    regular: &["R1", "R2"],
    new_types: &[],
    rows: &[
        "q, 0@5",
        "2(q-1), q^2, 0@4",
        "(q-1)^2, 0, q^2, 0@3",
        "q(q^2-1), 0, 0, q^2, 0, 0",
        "q(q-1), q(q^2-1), q^2(q-1), q(q^2-1), q^4, 0",
        "(q^2-1)(q-1), q^2(q-1), q(q^2-1), 0, 0, q^3",
    ],
    centralizers: &["q^6", "q^5", "q^5", "q^4", "q^4", "q^3"],
    cp: [
        ("2 q^{3} - 1", "q^{6}"),
        ("2 q^{4} + 3 q^{3} - 2 q^{2} - 3 q + 1", "q^{10}"),
        ("q^{7} + 3 q^{6} - 3 q^{5} + 5 q^{4} - 4 q^{3} - 3 q + 2", "q^{15}"),
        (
            "q^{10} + 2 q^{9} - 2 q^{8} + 3 q^{7} - q^{6} + q^{4} - 3 q^{3} - 2 q + 2",
            "q^{20}",
        ),
    ],
};

pub(super) const UT5: GroupData = GroupData {
    labels: &[
        "C", "A1", "A2", "A3", "A4", "A5", "B1", "B2", "B3", "B4", "B5", "B6", "D1", "D2", "R1", "R2", "R3",
        "UNT1", "UNT2", "UNT3",
    ],
    regular: &["R1", "R2", "R3"],
    new_types: &["UNT1", "UNT2", "UNT3"],
    rows: &[
        // C
        "q, 0@19",
        // A1
        "2(q-1), q^2, 0@18",
        // A2
        "q^2-q, q(q^2-1), q^4, 0@3, 3q^2-3q, 0@13",
        // A3
        "2q^2-2q, 0, 0, q^2, 0@16",
        // A4
        "2q^2-2q, 2q^2(q-1), 0, q(q^2-1), q^4, 0, 0, q^3-q, 0@12",
        // A5
        "(q^2-1).(2q-1), 0@4, q^2, 0@14",
        // B1
        "(q-1)^2, 0@5, q^2, 0@13",
        // B2
        "2q^2-2q, 0@6, q^2, 0@12",
        // B3
        "2(q-1)^2, q^2(q-1), 0, q^2(q-1), 0@4, q^3, 0@11",
        // B4
        "(2q^2+4).(q-1)^2, q(q-1).(q^3+q^2-1), 0@3, 2q(q-1), 0, q^2-q, 0, q^3, 0, 0, 2q(q-1), 0@7",
        // B5
        "q(q-1)^2, 0, 0, q^3(q-1), 0@6, q^2, 0@9",
        // B6
        "2q(q-1)^2, 0@4, q^2(q-1), q^2(q-1), q^4-q^3, 0, 0, (q^3+q).(q^2-1), q^3, 0@8",
        // D1
        "(q-1)^3, 0@11, q^2, 0@7",
        // D2
        "(2q+1).(q-1)^3, 0@12, q^3, 0@6",
        // R1
        "2(q-1)^2, 2q^3-2q^2, 2q^4-2q^2, q(q-1).(q^2+q-1), 0, 0, 2q^3-4q+2, (q^2-q).(q^2+q-1), q^2(q-1).(q^2+q-1), 0@5, q^6, 0, 0, 0, q^5-q^2, 0",
        // R2
        "q(q-1)^2, q(q-1)^2.(q+1), q(q^2-1)^2, q(q^2-1).(q-1), q^4(q-1), q^2(q-1), q(q-1)^2.(q+2), (q-1).(q^3-q), 0, q^4-q^2, 0@5, q^5, 0, q^4-q^2, q^4-q^3, q^4-q^2",
        // R3
        "(q^2-1).(q-1)^2, q^2(q-1)^2, 0, q^2(q-1)^2, q^3(q^2-1), q(q-1).(q^2-1), (q-1)^2.(q^2+q+1), q^2(q-1)^2, q^3(q-1), 0, q^4-q^3, q^2(q^2-1), q^2(q^2-1), q^2(q^2-1), 0, 0, q^4, q^4-q^3, q^4-q^3, q^4-q^3",
        // UNT1
        "0, 0, 0, q^2(q-1), 0, q(q-1)^2, (q-1)^2, q(q-1)^2, 0@9, q^3, 0, 0",
        // UNT2
        "0@6, 2q(q-1), q^3-q^2, 0@10, q^3, 0",
        // UNT3
        "0@6, (q-1)^3, 0@5, q(q-1)^2, 0@6, q^3",
    ],
    centralizers: &[
        "q^{10}", "q^9", "q^8", "q^8", "q^7", "q^7", "q^9", "q^8", "q^7", "q^6", "q^6", "q^5", "q^7", "q^5", "q^6",
        "q^5", "q^4", "q^6", "q^7", "q^6",
    ],
    cp: [
        ("5 q^{4} - 4 q^{3} + 9 q^{2} - 14 q + 5", "q^{10}"),
        (
            "11 q^{8} - 7 q^{7} + 23 q^{6} - 41 q^{5} + 5 q^{4} + 11 q^{3} + 3 q^{2} - 7 q + 3",
            "q^{20}",
        ),
        (
            "2 q^{13} + 3 q^{12} + 5 q^{11} + 10 q^{10} - 6 q^{9} - 20 q^{8} + 8 q^{7} - 27 q^{6} + 42 q^{5} \
             - 24 q^{4} + 9 q^{3} + q^{2} - 5 q + 3",
            "q^{29}",
        ),
        (
            "2 q^{18} + 5 q^{16} - 5 q^{15} + 23 q^{14} - 25 q^{13} + 28 q^{12} - 41 q^{11} + 23 q^{10} - 17 q^{9} \
             + 10 q^{8} - 25 q^{7} + 18 q^{6} + 23 q^{5} - 26 q^{4} + 7 q^{3} + 3 q^{2} - 5 q + 3",
            "q^{38}",
        ),
    ],
};
