//! Plain-text formats for sequences and codes.
//!
//! Sequences: an optional header `# m=<m>` followed by one digit string per
//! line. Codes: a header `STGC m=<m> n=<n> P=<P>` followed by `P` rows of `n`
//! digits.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::stgc::Stgc;
use crate::zmseq::CyclicSeq;

/// Text I/O supports single-digit symbols only.
pub const MAX_TEXT_MODULUS: u8 = 10;

fn parse_modulus(v: &str, line: usize) -> Result<u8> {
    let m: u32 = v.trim().parse().map_err(|_| Error::Parse { line, msg: format!("bad modulus '{v}'") })?;
    if !(2..=MAX_TEXT_MODULUS as u32).contains(&m) {
        return Err(Error::Parse { line, msg: format!("modulus {m} outside 2..=10") });
    }
    Ok(m as u8)
}

fn parse_digits(m: u8, text: &str, line: usize) -> Result<Vec<u8>> {
    text.chars()
        .map(|ch| match ch.to_digit(10) {
            Some(v) if v < m as u32 => Ok(v as u8),
            Some(v) => Err(Error::Parse { line, msg: format!("digit {v} not in Z_{m}") }),
            None => Err(Error::Parse { line, msg: format!("unexpected character '{ch}'") }),
        })
        .collect()
}

/// Parses the sequence format. The modulus defaults to 2 without a header.
/// Blank lines and other `#` comment lines are skipped.
pub fn parse_sequences(text: &str) -> Result<(u8, Vec<CyclicSeq>)> {
    let mut m = 2u8;
    let mut seen_data = false;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("m=") {
                if seen_data {
                    return Err(Error::Parse { line, msg: "header after data".into() });
                }
                m = parse_modulus(v, line)?;
            }
            continue;
        }
        seen_data = true;
        let elems = parse_digits(m, t, line)?;
        out.push(CyclicSeq::new(m, elems)?);
    }
    Ok((m, out))
}

/// Writes sequences one per line, with a header when the modulus is not 2.
pub fn write_sequences(m: u8, seqs: &[CyclicSeq]) -> String {
    let mut s = String::new();
    if m != 2 {
        let _ = writeln!(s, "# m={m}");
    }
    for q in seqs {
        let _ = writeln!(s, "{}", q.digits());
    }
    s
}

fn header_field<'a>(fields: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<usize> {
    let f = fields.next().ok_or_else(|| Error::Parse { line: 1, msg: format!("missing {key}=") })?;
    let v = f
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse { line: 1, msg: format!("expected {key}=, found '{f}'") })?;
    v.parse().map_err(|_| Error::Parse { line: 1, msg: format!("bad value for {key}: '{v}'") })
}

pub fn parse_stgc(text: &str) -> Result<Stgc> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, head) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let mut fields = head.split_whitespace();
    if fields.next() != Some("STGC") {
        return Err(Error::Parse { line: 1, msg: "expected 'STGC' header".into() });
    }
    let m = header_field(&mut fields, "m")?;
    if !(2..=MAX_TEXT_MODULUS as usize).contains(&m) {
        return Err(Error::Parse { line: 1, msg: format!("modulus {m} outside 2..=10") });
    }
    let m = m as u8;
    let n = header_field(&mut fields, "n")?;
    let p = header_field(&mut fields, "P")?;
    if n == 0 || p == 0 {
        return Err(Error::Parse { line: 1, msg: "n and P must be positive".into() });
    }
    let mut rows = Vec::with_capacity(n * p);
    let mut count = 0;
    for (i, raw) in lines {
        let t = raw.trim();
        let elems = parse_digits(m, t, i + 1)?;
        if elems.len() != n {
            return Err(Error::Parse { line: i + 1, msg: format!("row has {} digits, expected {n}", elems.len()) });
        }
        rows.extend(elems);
        count += 1;
    }
    if count != p {
        return Err(Error::Parse { line: 1, msg: format!("header says P={p} but {count} rows follow") });
    }
    Stgc::new(m, n, rows)
}

pub fn write_stgc(code: &Stgc) -> String {
    let mut s = String::with_capacity(code.period() * (code.length() + 1) + 32);
    let _ = writeln!(s, "STGC m={} n={} P={}", code.modulus(), code.length(), code.period());
    for i in 0..code.period() {
        s.push_str(&crate::zmseq::digits(code.row(i)));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_roundtrip() {
        let (m, seqs) = parse_sequences("# m=3\n012\n000111222\n").unwrap();
        assert_eq!(m, 3);
        assert_eq!(seqs.len(), 2);
        assert_eq!(write_sequences(m, &seqs), "# m=3\n012\n000111222\n");
        let (m, seqs) = parse_sequences("01\n000111\n").unwrap();
        assert_eq!(m, 2);
        assert_eq!(write_sequences(m, &seqs), "01\n000111\n");
    }

    #[test]
    fn sequence_errors() {
        assert!(parse_sequences("012\n").is_err());
        assert!(parse_sequences("# m=11\n0\n").is_err());
        assert!(parse_sequences("0a1\n").is_err());
        assert!(parse_sequences("01\n# m=3\n").is_err());
    }

    #[test]
    fn stgc_roundtrip() {
        let text = "STGC m=2 n=2 P=4\n00\n01\n11\n10\n";
        let code = parse_stgc(text).unwrap();
        assert_eq!(write_stgc(&code), text);
    }

    #[test]
    fn stgc_errors() {
        assert!(parse_stgc("").is_err());
        assert!(parse_stgc("STGC m=2 n=2 P=3\n00\n01\n11\n10\n").is_err());
        assert!(parse_stgc("STGC m=2 n=2 P=1\n002\n").is_err());
        assert!(parse_stgc("STGC m=2 n=2 P=1\n02\n").is_err());
        assert!(parse_stgc("GRAY m=2 n=2 P=1\n01\n").is_err());
        assert!(parse_stgc("STGC n=2 m=2 P=1\n01\n").is_err());
    }
}
