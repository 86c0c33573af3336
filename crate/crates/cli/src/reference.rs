//! Printed tables the `examples` verb is checked against.

/// Cycles of the binary CCR of order 3.
pub const CCR3: [&str; 2] = ["01", "000111"];

/// Period-12 sequences from the inverse blockwise difference of `[000111]`.
pub const FROM_000111: [&str; 4] = ["000000111111", "001001110110", "010010101101", "011011100100"];

/// Sequences from the inverse blockwise difference of `[01]`.
pub const FROM_01: [&str; 2] = ["000010111101", "0011"];

/// Period-8 SDSs from the inverse blockwise difference (block 6) of `[0011]`.
pub const PERIOD8_FROM_0011: [&str; 2] = ["00001111", "00101101"];
pub const PERIOD24_FROM_0011: usize = 10;
pub const PERIOD24_FROM_PERIOD12: usize = 160;

/// The 9×30 array for m = n = 3: the three SDSs, then the 27 shifted columns.
pub const EXAMPLE3: [&str; 9] = [
    "001001122222112200000220011111",
    "011011111001122222112200000220",
    "000000220011111001122222112200",
    "112112200000220011111001122222",
    "122122222112200000220011111001",
    "111111001122222112200000220011",
    "220220011111001122222112200000",
    "200200000220011111001122222112",
    "222222112200000220011111001122",
];

/// Difference words for m = 4, one per column.
pub const EXAMPLE4_DIFFS: [&str; 4] = ["0012232331111100", "1111001120021123", "0222333322130332", "0210033222333000"];

/// The 16 aligned SDSs for m = 4 as columns.
pub const EXAMPLE4_SDS: [&str; 16] = [
    "0032211000000000",
    "0000003331111100",
    "1111000011132223",
    "1333333333222111",
    "1103322111111111",
    "1111110002222211",
    "2222111122203330",
    "2000000000333222",
    "2210033222222222",
    "2222221113333322",
    "3333222233310001",
    "3111111111000333",
    "3321100333333333",
    "3333332220000033",
    "0000333300021112",
    "0222222222111000",
];
