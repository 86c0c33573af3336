//! Length-m, period-m^m codes from difference words.
//!
//! An SDS of length m² in standard form is fixed by its start value and the word
//! d of its first m consecutive differences; d sums to 1 and the whole sequence
//! steps through d repeatedly. Rotating the SDS rotates d, so rotation classes of
//! SDSs correspond to rotation classes of d, of which there are m^(m−2).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::zmseq::{canonical_elems, for_each_word, CyclicSeq, Word};

use super::ordering::{Adjacency, ClassSpace};
use super::{construct_from_sds, SdsOrdering, Stgc};

/// Difference words for m = 4 as columns of a 4×16 array, in code order.
pub const SEED_M4: [&str; 4] = ["0012232331111100", "1111001120021123", "0222333322130332", "0210033222333000"];

/// Nodes explored by the backtracking search before falling back to repair.
const BACKTRACK_NODES: u64 = 10_000;
const REPAIR_STEPS: u64 = 5_000_000;
pub const REPAIR_SEED: u64 = 0x5d5;

/// A word of m differences summing to 1 mod m.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffSeq {
    modulus: u8,
    digits: Vec<u8>,
}

impl DiffSeq {
    pub fn new(modulus: u8, digits: Vec<u8>) -> Result<Self> {
        let w = Word::new(modulus, digits)?;
        if w.len() != modulus as usize {
            return Err(Error::LengthMismatch { left: w.len(), right: modulus as usize });
        }
        let sum = w.elems().iter().map(|&v| v as u32).sum::<u32>() % modulus as u32;
        if sum != 1 {
            return Err(Error::Precondition(format!("differences sum to {sum}, expected 1")));
        }
        Ok(DiffSeq { modulus, digits: w.elems().to_vec() })
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }
}

/// The SDS of length m² starting at `start` whose steps cycle through `d`.
pub fn diff_to_sds_from(d: &DiffSeq, start: u8) -> CyclicSeq {
    let m = d.modulus;
    let len = m as usize * m as usize;
    let mut out = Vec::with_capacity(len);
    let mut v = start % m;
    for i in 0..len {
        out.push(v);
        v = (v + d.digits[i % m as usize]) % m;
    }
    CyclicSeq::new_unchecked(m, out)
}

/// The SDS of length m² starting at zero whose steps cycle through `d`.
pub fn diff_to_sds(d: &DiffSeq) -> CyclicSeq {
    diff_to_sds_from(d, 0)
}

/// The first m differences of an SDS of length m².
pub fn sds_to_diff(s: &CyclicSeq) -> Result<DiffSeq> {
    let m = s.modulus();
    let e = s.elems();
    if e.len() != m as usize * m as usize {
        return Err(Error::LengthMismatch { left: e.len(), right: m as usize * m as usize });
    }
    DiffSeq::new(m, (0..m as usize).map(|i| (e[i + 1] + m - e[i]) % m).collect())
}

/// One difference word per rotation class (the least rotation), sorted.
pub fn diff_classes(m: u8) -> Result<Vec<DiffSeq>> {
    if m < 2 {
        return Err(Error::BadModulus(m as u32));
    }
    let mut set = BTreeSet::new();
    for_each_word(m, m as usize, |w| {
        if w.iter().map(|&v| v as u32).sum::<u32>() % m as u32 == 1 {
            set.insert(canonical_elems(w));
        }
    });
    set.into_iter().map(|d| DiffSeq::new(m, d)).collect()
}

/// The aligned successor of `prev` with difference word `next`: the two must
/// differ on a single residue class mod m by a constant.
fn aligned_successor(prev: &CyclicSeq, next: &DiffSeq) -> Result<CyclicSeq> {
    let m = prev.modulus();
    let mu = m as usize;
    let d = sds_to_diff(prev)?;
    let e: Vec<u8> = (0..mu).map(|k| (next.digits[k] + m - d.digits[k]) % m).collect();
    let nz: Vec<usize> = (0..mu).filter(|&k| e[k] != 0).collect();
    // d_{j-1} gains δ and d_j loses δ when residue class j is raised by δ
    let j = match nz.as_slice() {
        [a, b] if (a + 1) % mu == *b && (e[*a] + e[*b]).is_multiple_of(m) => *b,
        [a, b] if (b + 1) % mu == *a && (e[*a] + e[*b]).is_multiple_of(m) => *a,
        _ => {
            return Err(Error::Precondition(format!(
                "difference words {:?} and {:?} are not one residue change apart",
                d.digits, next.digits
            )))
        }
    };
    let delta = e[(j + mu - 1) % mu];
    let start = if j == 0 { (prev.elems()[0] + delta) % m } else { prev.elems()[0] };
    Ok(diff_to_sds_from(next, start))
}

/// Decodes the m = 4 seed columns into aligned SDSs and picks the smallest wrap offset.
pub fn seed_ordering_m4() -> Result<SdsOrdering> {
    let cols: Vec<DiffSeq> = (0..16)
        .map(|c| DiffSeq::new(4, SEED_M4.iter().map(|row| row.as_bytes()[c] - b'0').collect()))
        .collect::<Result<_>>()?;
    let mut seqs = vec![diff_to_sds(&cols[0])];
    for d in &cols[1..] {
        let next = aligned_successor(seqs.last().expect("nonempty"), d)?;
        seqs.push(next);
    }
    let space = ClassSpace::new(4, Adjacency::ResidueClass { n: 4 }, seqs.iter().cloned())?;
    let ell = space
        .closing_shift(seqs[15].elems(), seqs[0].elems())
        .ok_or_else(|| Error::SearchFailed("no wrap offset closes the m=4 seed ordering".into()))?;
    Ok(SdsOrdering { modulus: 4, n: 4, seqs, ell })
}

/// Ordering of all m^(m−2) SDSs of length m² for the difference construction.
///
/// m = 4 uses the printed seed table. Otherwise a backtracking search from the SDS of
/// the smallest difference word is run, with a seeded repair search as fallback.
pub fn diff_ordering(m: u8) -> Result<SdsOrdering> {
    if !(3..=5).contains(&m) {
        return Err(Error::InvalidParameter(format!("difference construction needs 3 <= m <= 5, got {m}")));
    }
    if m == 4 {
        return seed_ordering_m4();
    }
    let classes = diff_classes(m)?;
    let sds: Vec<CyclicSeq> = classes.iter().map(diff_to_sds).collect();
    let space = ClassSpace::new(m, Adjacency::ResidueClass { n: m as usize }, sds.iter().cloned())?;
    let arrangement = space
        .arrange(sds[0].elems(), BACKTRACK_NODES, REPAIR_STEPS, REPAIR_SEED)
        .map_err(|e| Error::SearchFailed(format!("m={m}: {e}")))?;
    let seqs = arrangement.seqs.into_iter().map(|s| CyclicSeq::new_unchecked(m, s)).collect();
    Ok(SdsOrdering { modulus: m, n: m as usize, seqs, ell: arrangement.ell })
}

/// A verified length-m, period-m^m code over Z_m.
pub fn build_diff_stgc(m: u8) -> Result<Stgc> {
    construct_from_sds(&diff_ordering(m)?)
}
