//! Single-track Gray codes: data model, verifier and the ordering-based constructions.

pub mod diff;
pub mod ordering;
pub mod recursive;
pub mod search;

use std::collections::HashMap;
use std::fmt;

use crate::arith::{checked_pow, gcd};
use crate::error::{Error, Result};
use crate::zmseq::{canonical, enumerate_sds, hamming_slices, is_self_dual, period, rotate_slice, CyclicSeq, Word};

use ordering::{Adjacency, ClassSpace};

/// An ordered list of `P` words of length `n` over Z_m, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Stgc {
    modulus: u8,
    length: usize,
    rows: Vec<u8>,
}

impl Stgc {
    pub fn new(modulus: u8, length: usize, rows: Vec<u8>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus as u32));
        }
        if length == 0 || rows.is_empty() {
            return Err(Error::Empty);
        }
        if !rows.len().is_multiple_of(length) {
            return Err(Error::BlockMismatch { block: length, len: rows.len() });
        }
        if let Some((index, &v)) = rows.iter().enumerate().find(|(_, &v)| v >= modulus) {
            return Err(Error::ElementOutOfRange { index, value: v as u32, modulus });
        }
        Ok(Stgc { modulus, length, rows })
    }

    pub fn from_rows(modulus: u8, rows: &[Word]) -> Result<Self> {
        let length = rows.first().ok_or(Error::Empty)?.len();
        let mut flat = Vec::with_capacity(length * rows.len());
        for r in rows {
            if r.len() != length {
                return Err(Error::LengthMismatch { left: r.len(), right: length });
            }
            flat.extend_from_slice(r.elems());
        }
        Self::new(modulus, length, flat)
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    /// Word length n.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of codewords P.
    pub fn period(&self) -> usize {
        self.rows.len() / self.length
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.rows[i * self.length..(i + 1) * self.length]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.rows.chunks(self.length)
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        self.rows().map(|r| r[c]).collect()
    }
}

impl fmt::Debug for Stgc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stgc(m={}, n={}, P={})", self.modulus, self.length, self.period())
    }
}

/// Findings of [`verify_stgc`]. Nothing is an error; every failed check is recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub modulus: u8,
    pub length: usize,
    pub period: usize,
    /// First pair of equal rows.
    pub duplicate: Option<(usize, usize)>,
    /// First row i whose distance to row i+1 (cyclically) is not 1, with that distance.
    pub gray_violation: Option<(usize, usize)>,
    /// For every column c, the smallest k with column_c = E^k column_0.
    pub shifts: Vec<Option<usize>>,
    /// 2n | P, binary codes only.
    pub binary_divisible: Option<bool>,
    pub period_mod_mn: usize,
    /// Coordinates never changed between consecutive rows.
    pub untoggled: Vec<usize>,
    /// P = m^n and rows distinct.
    pub exhaustive: bool,
}

impl VerifyReport {
    pub fn single_track(&self) -> bool {
        self.shifts.iter().all(Option::is_some)
    }

    pub fn passed(&self) -> bool {
        self.duplicate.is_none()
            && self.gray_violation.is_none()
            && self.single_track()
            && self.binary_divisible != Some(false)
    }

    pub fn all_coordinates_toggled(&self) -> bool {
        self.untoggled.is_empty()
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "code: m={} n={} P={}", self.modulus, self.length, self.period)?;
        match self.duplicate {
            None => writeln!(f, "distinct: PASS")?,
            Some((i, j)) => writeln!(f, "distinct: FAIL rows {i} and {j} are equal")?,
        }
        match self.gray_violation {
            None => writeln!(f, "gray: PASS")?,
            Some((i, d)) => writeln!(f, "gray: FAIL rows {i} and {} differ in {d} coordinates", (i + 1) % self.period)?,
        }
        let shifts: Vec<String> =
            self.shifts.iter().map(|s| s.map_or_else(|| "-".to_string(), |k| k.to_string())).collect();
        write!(f, "single-track: {} shifts=[{}]", status(self.single_track()), shifts.join(","))?;
        if let Some(c) = self.shifts.iter().position(Option::is_none) {
            write!(f, " column {c} is not a rotation of column 0")?;
        }
        writeln!(f)?;
        match self.binary_divisible {
            None => writeln!(f, "binary 2n|P: n/a")?,
            Some(ok) => writeln!(f, "binary 2n|P: {}", status(ok))?,
        }
        writeln!(f, "P mod mn: {}", self.period_mod_mn)?;
        if self.untoggled.is_empty() {
            writeln!(f, "coverage: PASS")?;
        } else {
            let u: Vec<String> = self.untoggled.iter().map(|c| c.to_string()).collect();
            writeln!(f, "coverage: FAIL untoggled=[{}]", u.join(","))?;
        }
        writeln!(f, "all words: {}", if self.exhaustive { "yes" } else { "no" })?;
        write!(f, "result: {} P={}", status(self.passed()), self.period)
    }
}

/// Smallest k with `pattern` = E^k `text` (both of the same length), via KMP.
fn rotation_of(text: &[u8], pattern: &[u8]) -> Option<usize> {
    let n = pattern.len();
    if n != text.len() {
        return None;
    }
    let mut fail = vec![0usize; n];
    for i in 1..n {
        let mut k = fail[i - 1];
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for i in 0..2 * n - 1 {
        let c = text[i % n];
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == n {
            return Some(i + 1 - n);
        }
    }
    None
}

pub fn verify_stgc(code: &Stgc) -> VerifyReport {
    let p = code.period();
    let n = code.length();
    let m = code.modulus();

    let mut seen: HashMap<&[u8], usize> = HashMap::with_capacity(p);
    let mut duplicate = None;
    for (i, r) in code.rows().enumerate() {
        if let Some(&j) = seen.get(r) {
            duplicate = Some((j, i));
            break;
        }
        seen.insert(r, i);
    }

    let mut gray_violation = None;
    let mut toggled = vec![false; n];
    for i in 0..p {
        let (a, b) = (code.row(i), code.row((i + 1) % p));
        let d = hamming_slices(a, b);
        if d != 1 {
            if gray_violation.is_none() {
                gray_violation = Some((i, d));
            }
            continue;
        }
        if let Some(c) = (0..n).find(|&c| a[c] != b[c]) {
            toggled[c] = true;
        }
    }

    let col0 = code.column(0);
    let shifts = (0..n).map(|c| rotation_of(&col0, &code.column(c))).collect();

    let exhaustive = duplicate.is_none() && checked_pow(m as u64, n as u64).is_some_and(|total| total == p as u128);

    VerifyReport {
        modulus: m,
        length: n,
        period: p,
        duplicate,
        gray_violation,
        shifts,
        binary_divisible: (m == 2).then_some(p.is_multiple_of(2 * n)),
        period_mod_mn: p % (m as usize * n),
        untoggled: (0..n).filter(|&c| !toggled[c]).collect(),
        exhaustive,
    }
}

/// F^j S: the length-n window of S starting at offset j (cyclic).
pub fn window_f(s: &CyclicSeq, j: usize, n: usize) -> Result<Word> {
    if n == 0 || n > s.len() {
        return Err(Error::InvalidParameter(format!("window length {n} must be in 1..={}", s.len())));
    }
    let e = s.elems();
    let k = e.len();
    Word::new(s.modulus(), (0..n).map(|i| e[(j + i) % k]).collect())
}

/// Aligned SDSs of length m·n with a wrap offset ℓ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdsOrdering {
    pub modulus: u8,
    /// Word length n of the code; sequences have length m·n.
    pub n: usize,
    pub seqs: Vec<CyclicSeq>,
    pub ell: usize,
}

impl SdsOrdering {
    pub fn track_len(&self) -> usize {
        self.modulus as usize * self.n
    }
}

fn pairwise_inequivalent(seqs: &[CyclicSeq]) -> Result<()> {
    let mut seen = HashMap::new();
    for (i, s) in seqs.iter().enumerate() {
        if let Some(j) = seen.insert(canonical(s), i) {
            return Err(Error::Precondition(format!("sequences {j} and {i} are rotations of each other")));
        }
    }
    Ok(())
}

/// Ensures the code passes the verifier before handing it out.
fn verified(code: Stgc) -> Result<Stgc> {
    let report = verify_stgc(&code);
    if !report.passed() {
        return Err(Error::VerificationFailed(report.to_string()));
    }
    Ok(code)
}

/// Rows E^{kℓ}S_i for k = 0..n, i = 0..r, from r full-period necklaces of length n
/// in which consecutive sequences (and the last with E^ℓ of the first) differ in one coordinate.
pub fn construct_from_necklaces(seqs: &[CyclicSeq], ell: usize) -> Result<Stgc> {
    let first = seqs.first().ok_or(Error::Empty)?;
    let (m, n) = (first.modulus(), first.len());
    for (i, s) in seqs.iter().enumerate() {
        if s.modulus() != m {
            return Err(Error::ModulusMismatch { left: s.modulus(), right: m });
        }
        if s.len() != n {
            return Err(Error::LengthMismatch { left: s.len(), right: n });
        }
        if period(s) != n {
            return Err(Error::Precondition(format!("sequence {i} does not have full period {n}")));
        }
    }
    pairwise_inequivalent(seqs)?;
    if gcd(ell as u64, n as u64) != 1 {
        return Err(Error::Precondition(format!("gcd({ell}, {n}) is not 1")));
    }
    for i in 0..seqs.len() - 1 {
        let d = hamming_slices(seqs[i].elems(), seqs[i + 1].elems());
        if d != 1 {
            return Err(Error::Precondition(format!("sequences {i} and {} differ in {d} coordinates", i + 1)));
        }
    }
    let wrap = rotate_slice(first.elems(), ell);
    let d = hamming_slices(seqs[seqs.len() - 1].elems(), &wrap);
    if d != 1 {
        return Err(Error::Precondition(format!("last sequence and E^{ell} of the first differ in {d} coordinates")));
    }
    let mut rows = Vec::with_capacity(n * n * seqs.len());
    for k in 0..n {
        for s in seqs {
            rows.extend(rotate_slice(s.elems(), k * ell % n));
        }
    }
    verified(Stgc::new(m, n, rows)?)
}

fn check_ordering(o: &SdsOrdering) -> Result<()> {
    let first = o.seqs.first().ok_or(Error::Empty)?;
    let m = o.modulus;
    let track = o.track_len();
    for (i, s) in o.seqs.iter().enumerate() {
        if s.modulus() != m {
            return Err(Error::ModulusMismatch { left: s.modulus(), right: m });
        }
        if s.len() != track {
            return Err(Error::LengthMismatch { left: s.len(), right: track });
        }
        if period(s) != track {
            return Err(Error::Precondition(format!("sequence {i} does not have full period {track}")));
        }
        if !is_self_dual(s) {
            return Err(Error::Precondition(format!("sequence {i} is not self-dual")));
        }
    }
    pairwise_inequivalent(&o.seqs)?;
    if gcd(o.ell as u64, track as u64) != 1 {
        return Err(Error::Precondition(format!("gcd({}, {track}) is not 1", o.ell)));
    }
    let want = m as usize;
    for i in 0..o.seqs.len() - 1 {
        let d = hamming_slices(o.seqs[i].elems(), o.seqs[i + 1].elems());
        if d != want {
            return Err(Error::Precondition(format!(
                "sequences {i} and {} differ in {d} coordinates, expected {want}",
                i + 1
            )));
        }
    }
    let wrap = rotate_slice(first.elems(), o.ell);
    let d = hamming_slices(o.seqs[o.seqs.len() - 1].elems(), &wrap);
    if d != want {
        return Err(Error::Precondition(format!(
            "last sequence and E^{} of the first differ in {d} coordinates, expected {want}",
            o.ell
        )));
    }
    Ok(())
}

/// Rows F^{kℓ}S_i for k = 0..mn, i = 0..r: a length-n code of period m·n·r.
pub fn construct_from_sds(o: &SdsOrdering) -> Result<Stgc> {
    check_ordering(o)?;
    let track = o.track_len();
    let mut rows = Vec::with_capacity(track * o.seqs.len() * o.n);
    for k in 0..track {
        let j = k * o.ell % track;
        for s in &o.seqs {
            let e = s.elems();
            rows.extend((0..o.n).map(|i| e[(j + i) % track]));
        }
    }
    verified(Stgc::new(o.modulus, o.n, rows)?)
}

/// The binary case of [`construct_from_sds`]: consecutive SDSs differ in two coordinates.
pub fn construct_from_binary_sds(o: &SdsOrdering) -> Result<Stgc> {
    if o.modulus != 2 {
        return Err(Error::InvalidParameter(format!("expected a binary ordering, got m={}", o.modulus)));
    }
    construct_from_sds(o)
}

/// Nodes and repair steps spent by [`full_period_ordering`].
pub const ORDERING_NODES: u64 = 100_000;
pub const ORDERING_REPAIR_STEPS: u64 = 5_000_000;
pub const ORDERING_SEED: u64 = 0x7e57;

/// An ordering of every SDS class of length and period m·n, starting from the
/// smallest class, with the smallest wrap offset the search finds.
pub fn full_period_ordering(m: u8, n: usize) -> Result<SdsOrdering> {
    let track = m as usize * n;
    let classes: Vec<CyclicSeq> = enumerate_sds(m, track)?.into_iter().filter(|s| period(s) == track).collect();
    if classes.is_empty() {
        return Err(Error::Precondition(format!("no SDS of period {track} over Z_{m}")));
    }
    let space = ClassSpace::new(m, Adjacency::ResidueClass { n }, classes.iter().cloned())?;
    let arr = space.arrange(classes[0].elems(), ORDERING_NODES, ORDERING_REPAIR_STEPS, ORDERING_SEED)?;
    let seqs = arr.seqs.into_iter().map(|s| CyclicSeq::new_unchecked(m, s)).collect();
    Ok(SdsOrdering { modulus: m, n, seqs, ell: arr.ell })
}

/// Whether a code of length n and period P over Z_m has maximum period.
///
/// Binary: 2^n − P < 2n and 2n | P, except that no such code exists for n = 2^t
/// with t > 1. Non-binary: P = m^n.
pub fn is_max_period(m: u8, n: usize, p: u128) -> bool {
    if m == 2 {
        if n > 2 && n.is_power_of_two() {
            return false;
        }
        let Some(total) = checked_pow(2, n as u64) else {
            return false;
        };
        let n2 = 2 * n as u128;
        p <= total && total - p < n2 && p.is_multiple_of(n2)
    } else {
        checked_pow(m as u64, n as u64) == Some(p)
    }
}
