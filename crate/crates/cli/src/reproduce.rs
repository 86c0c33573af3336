//! Regenerates the worked examples and diffs them against the printed tables.

use std::collections::BTreeSet;

use selfdual::operators::delta_inv;
use selfdual::registers::fsr_cycles;
use selfdual::stgc::diff::{diff_ordering, sds_to_diff};
use selfdual::stgc::{construct_from_sds, verify_stgc, SdsOrdering};
use selfdual::zmseq::{cycle_class, digits, for_each_word, is_self_dual};
use selfdual::{CyclicSeq, Error, RegisterSpec, Result, Word};

use crate::reference;

/// Report text and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

struct Log {
    text: String,
    passed: bool,
}

impl Log {
    fn new() -> Self {
        Log { text: String::new(), passed: true }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.passed &= ok;
        self.line(format!("check {label}: {}", if ok { "PASS" } else { "FAIL" }));
    }

    fn finish(mut self, id: u8) -> Outcome {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        self.line(format!("example {id}: {verdict}"));
        Outcome { text: self.text, passed: self.passed }
    }
}

pub fn example(id: u8) -> Result<Outcome> {
    match id {
        1 => example1(),
        3 => example3(),
        4 => example4(),
        _ => Err(Error::InvalidParameter(format!("no example {id}; choose 1, 3 or 4"))),
    }
}

fn binary(d: &str) -> CyclicSeq {
    CyclicSeq::from_digits(2, d).expect("binary table entry")
}

fn classes_of<'a>(seqs: impl IntoIterator<Item = &'a CyclicSeq>) -> BTreeSet<CyclicSeq> {
    seqs.into_iter().map(cycle_class).collect()
}

fn table_classes(rows: &[&str]) -> BTreeSet<CyclicSeq> {
    rows.iter().map(|d| cycle_class(&binary(d))).collect()
}

/// Distinct classes of the inverse blockwise difference of `s` over every Y in
/// lexicographic order, each in the alignment it first appears with, cut to its period.
fn inverse_classes(s: &CyclicSeq, block: usize) -> Result<Vec<CyclicSeq>> {
    let m = s.modulus();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut failure = None;
    for_each_word(m, block, |y| {
        if failure.is_some() {
            return;
        }
        let y = Word::new(m, y.to_vec()).expect("in range");
        match delta_inv(s, block, &y) {
            Ok(v) => {
                if seen.insert(cycle_class(&v)) {
                    out.push(v.primitive());
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn show(seqs: &[CyclicSeq]) -> String {
    seqs.iter().map(|s| s.digits()).collect::<Vec<_>>().join(" ")
}

fn example1() -> Result<Outcome> {
    let mut log = Log::new();
    let ccr3: Vec<CyclicSeq> = fsr_cycles(&RegisterSpec::ccr(2, 3)?)?.into_iter().collect();
    log.line(format!("CCR_3: {}", show(&ccr3)));
    log.check("CCR_3 cycles", ccr3.iter().map(|s| s.digits()).eq(reference::CCR3.iter().map(|s| s.to_string())));

    let from_a = inverse_classes(&binary("000111"), 3)?;
    let from_b = inverse_classes(&binary("01").repeat_to(6)?, 3)?;
    log.line(format!("block 3 inverse of [000111]: {}", show(&from_a)));
    log.line(format!("block 3 inverse of [01]: {}", show(&from_b)));
    log.check("period-12 classes from [000111]", classes_of(&from_a) == table_classes(&reference::FROM_000111));
    log.check("classes from [01]", classes_of(&from_b) == table_classes(&reference::FROM_01));
    let level6: Vec<CyclicSeq> = from_a.iter().chain(&from_b).cloned().collect();
    let ccr6 = fsr_cycles(&RegisterSpec::ccr(2, 6)?)?;
    log.check("union is the CCR_6 cycle set", classes_of(&level6) == ccr6);

    let mut from_twelve = BTreeSet::new();
    for s in level6.iter().filter(|s| s.len() == 12) {
        from_twelve.extend(classes_of(&inverse_classes(s, 6)?));
    }
    let long = from_twelve.iter().filter(|s| s.len() == 24).count();
    log.line(format!("block 6 inverse of the period-12 sequences: {} classes, {long} of period 24", from_twelve.len()));
    log.check("160 period-24 classes", long == reference::PERIOD24_FROM_PERIOD12 && long == from_twelve.len());

    let short = classes_of(&inverse_classes(&binary("0011").repeat_to(12)?, 6)?);
    let eight: Vec<CyclicSeq> = short.iter().filter(|s| s.len() == 8).cloned().collect();
    let long_short = short.iter().filter(|s| s.len() == 24).count();
    log.line(format!("block 6 inverse of [0011]: period 8: {}; period 24: {long_short}", show(&eight)));
    log.check("period-8 SDSs", classes_of(&eight) == table_classes(&reference::PERIOD8_FROM_0011));
    log.check(
        "ten period-24 classes from [0011]",
        long_short == reference::PERIOD24_FROM_0011 && long_short + eight.len() == short.len(),
    );
    let mut level12 = from_twelve;
    level12.extend(short);
    let ccr12 = fsr_cycles(&RegisterSpec::ccr(2, 12)?)?;
    log.check("union is the CCR_12 cycle set", level12 == ccr12);
    Ok(log.finish(1))
}

fn array_check(log: &mut Log, label: &str, got: &[String], want: &[&str]) {
    for row in got {
        log.line(row);
    }
    let ok = got.len() == want.len() && got.iter().zip(want).all(|(g, w)| g == w);
    if !ok {
        for (i, (g, w)) in got.iter().zip(want).enumerate().filter(|(_, (g, w))| g != *w) {
            log.line(format!("row {i}: got {g}, printed {w}"));
        }
    }
    log.check(label, ok);
}

fn code_checks(log: &mut Log, o: &SdsOrdering, period: usize) -> Result<selfdual::Stgc> {
    let code = construct_from_sds(o)?;
    let report = verify_stgc(&code);
    log.line(report.to_string());
    log.check(&format!("verified code with P={period}"), report.passed() && code.period() == period);
    log.check("every word appears once", report.exhaustive);
    Ok(code)
}

fn example3() -> Result<Outcome> {
    let mut log = Log::new();
    let o = diff_ordering(3)?;
    log.line(format!("ordering: {} ell={}", show(&o.seqs), o.ell));
    let track = o.track_len();
    let r = o.seqs.len();
    let rows: Vec<String> = (0..track)
        .map(|j| {
            let mut row: Vec<u8> = o.seqs.iter().map(|s| s.elems()[j]).collect();
            row.extend((0..track * r).map(|k| o.seqs[k % r].elems()[((k / r) * o.ell + j) % track]));
            digits(&row)
        })
        .collect();
    array_check(&mut log, "9x30 array", &rows, &reference::EXAMPLE3);
    log.check(
        "rows of the 9x27 part are self-dual",
        rows.iter().all(|row| is_self_dual(&CyclicSeq::from_digits(3, &row[r..]).expect("ternary"))),
    );
    let code = code_checks(&mut log, &o, 27)?;
    let top_rows = (0..code.period())
        .all(|c| (0..code.length()).all(|i| code.row(c)[i] == reference::EXAMPLE3[i].as_bytes()[r + c] - b'0'));
    log.check("code words are the columns of the top rows", top_rows);
    Ok(log.finish(3))
}

fn example4() -> Result<Outcome> {
    let mut log = Log::new();
    let o = diff_ordering(4)?;
    log.line(format!("ell={}", o.ell));
    let diffs = o.seqs.iter().map(sds_to_diff).collect::<Result<Vec<_>>>()?;
    let diff_rows: Vec<String> =
        (0..4).map(|k| digits(&diffs.iter().map(|d| d.digits()[k]).collect::<Vec<_>>())).collect();
    array_check(&mut log, "4x16 difference array", &diff_rows, &reference::EXAMPLE4_DIFFS);
    let sds_rows: Vec<String> =
        (0..16).map(|j| digits(&o.seqs.iter().map(|s| s.elems()[j]).collect::<Vec<_>>())).collect();
    array_check(&mut log, "16x16 SDS array", &sds_rows, &reference::EXAMPLE4_SDS);
    code_checks(&mut log, &o, 256)?;
    Ok(log.finish(4))
}
