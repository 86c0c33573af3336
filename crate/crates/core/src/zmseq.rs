//! Cyclic sequences and plain words over Z_m.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::arith::checked_pow;
use crate::error::{Error, Result};

/// Upper bound on the number of candidates examined by [`enumerate_sds`].
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

fn check_elems(modulus: u8, elems: &[u8]) -> Result<()> {
    if modulus < 2 {
        return Err(Error::BadModulus(modulus as u32));
    }
    if elems.is_empty() {
        return Err(Error::Empty);
    }
    if let Some((index, &v)) = elems.iter().enumerate().find(|(_, &v)| v >= modulus) {
        return Err(Error::ElementOutOfRange { index, value: v as u32, modulus });
    }
    Ok(())
}

/// A sequence over Z_m regarded as cyclic. The stored rotation is kept, since
/// coordinatewise comparisons depend on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicSeq {
    modulus: u8,
    elems: Vec<u8>,
}

/// A fixed-length non-cyclic word over Z_m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    modulus: u8,
    elems: Vec<u8>,
}

impl CyclicSeq {
    pub fn new(modulus: u8, elems: Vec<u8>) -> Result<Self> {
        check_elems(modulus, &elems)?;
        Ok(CyclicSeq { modulus, elems })
    }

    /// Builds a sequence reducing every element mod `modulus`.
    pub fn from_reduced(modulus: u8, elems: impl IntoIterator<Item = u32>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus as u32));
        }
        let elems: Vec<u8> = elems.into_iter().map(|v| (v % modulus as u32) as u8).collect();
        Self::new(modulus, elems)
    }

    /// Parses a digit string such as `"000111"`.
    pub fn from_digits(modulus: u8, digits: &str) -> Result<Self> {
        let mut elems = Vec::with_capacity(digits.len());
        for (index, ch) in digits.chars().enumerate() {
            let v = ch.to_digit(10).ok_or_else(|| Error::InvalidParameter(format!("'{ch}' is not a digit")))?;
            if v >= modulus as u32 {
                return Err(Error::ElementOutOfRange { index, value: v, modulus });
            }
            elems.push(v as u8);
        }
        Self::new(modulus, elems)
    }

    pub(crate) fn new_unchecked(modulus: u8, elems: Vec<u8>) -> Self {
        debug_assert!(check_elems(modulus, &elems).is_ok());
        CyclicSeq { modulus, elems }
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[u8] {
        &self.elems
    }

    pub fn into_elems(self) -> Vec<u8> {
        self.elems
    }

    pub fn sum(&self) -> u8 {
        let m = self.modulus as u32;
        (self.elems.iter().map(|&v| v as u32).sum::<u32>() % m) as u8
    }

    /// The sequence repeated until it has length `len`. `len` must be a multiple of the length.
    pub fn repeat_to(&self, len: usize) -> Result<Self> {
        if !len.is_multiple_of(self.len()) {
            return Err(Error::BlockMismatch { block: self.len(), len });
        }
        Ok(CyclicSeq::new_unchecked(self.modulus, self.elems.repeat(len / self.len())))
    }

    /// The first `period(self)` elements as a sequence.
    pub fn primitive(&self) -> Self {
        let p = period(self);
        CyclicSeq::new_unchecked(self.modulus, self.elems[..p].to_vec())
    }

    pub fn as_word(&self) -> Word {
        Word { modulus: self.modulus, elems: self.elems.clone() }
    }

    pub fn digits(&self) -> String {
        digits(&self.elems)
    }
}

impl Ord for CyclicSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then(self.elems.len().cmp(&other.elems.len()))
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl PartialOrd for CyclicSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CyclicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.digits(), self.modulus)
    }
}

impl fmt::Display for CyclicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits())
    }
}

impl Word {
    pub fn new(modulus: u8, elems: Vec<u8>) -> Result<Self> {
        check_elems(modulus, &elems)?;
        Ok(Word { modulus, elems })
    }

    pub fn from_digits(modulus: u8, digits: &str) -> Result<Self> {
        Ok(CyclicSeq::from_digits(modulus, digits)?.as_word())
    }

    pub fn zeros(modulus: u8, len: usize) -> Result<Self> {
        Self::new(modulus, vec![0; len])
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[u8] {
        &self.elems
    }

    pub fn to_cyclic(&self) -> CyclicSeq {
        CyclicSeq::new_unchecked(self.modulus, self.elems.clone())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&digits(&self.elems))
    }
}

/// Digit string of raw elements.
pub fn digits(elems: &[u8]) -> String {
    elems.iter().map(|&v| char::from_digit(v as u32, 36).unwrap_or('?')).collect()
}

/// E^k S: rotate left by `k` (negative `k` rotates right).
pub fn shift(s: &CyclicSeq, k: i64) -> CyclicSeq {
    let n = s.len() as i64;
    let k = k.rem_euclid(n) as usize;
    let mut elems = Vec::with_capacity(s.len());
    elems.extend_from_slice(&s.elems[k..]);
    elems.extend_from_slice(&s.elems[..k]);
    CyclicSeq::new_unchecked(s.modulus, elems)
}

pub(crate) fn rotate_slice(v: &[u8], k: usize) -> Vec<u8> {
    let k = k % v.len();
    let mut out = Vec::with_capacity(v.len());
    out.extend_from_slice(&v[k..]);
    out.extend_from_slice(&v[..k]);
    out
}

/// Length of the shortest word whose repetition gives `s`.
pub fn period(s: &CyclicSeq) -> usize {
    period_of(&s.elems)
}

pub(crate) fn period_of(v: &[u8]) -> usize {
    let n = v.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && v[i] != v[k] {
            k = pi[k - 1];
        }
        if v[i] == v[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

pub fn add_const(s: &CyclicSeq, c: i64) -> CyclicSeq {
    let m = s.modulus as i64;
    let c = c.rem_euclid(m) as u8;
    let elems = s.elems.iter().map(|&v| ((v as u16 + c as u16) % m as u16) as u8).collect();
    CyclicSeq::new_unchecked(s.modulus, elems)
}

/// Offset `k` with `b == E^k a`, if `b` is a rotation of `a`.
pub fn rotation_offset(a: &[u8], b: &[u8]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    (0..n).find(|&k| (0..n).all(|i| a[(i + k) % n] == b[i]))
}

/// True iff adding 1 to every element yields a rotation of `s`.
pub fn is_self_dual(s: &CyclicSeq) -> bool {
    let plus = add_const(s, 1);
    canonical_elems(&plus.elems) == canonical_elems(&s.elems)
}

/// True iff the primitive period P has length divisible by m and
/// P_{i+d/m} = P_i + 1, i.e. P = [X, X+1, ..., X+(m-1)].
pub fn is_standard_sds(s: &CyclicSeq) -> bool {
    let m = s.modulus as usize;
    let d = period(s);
    if !d.is_multiple_of(m) {
        return false;
    }
    let b = d / m;
    (0..d - b).all(|i| s.elems[i + b] as usize == (s.elems[i] as usize + 1) % m)
}

/// Index of the lexicographically least rotation (two-pointer minimum expression).
pub(crate) fn least_rotation(v: &[u8]) -> usize {
    let n = v.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = v[(i + k) % n];
        let b = v[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

pub(crate) fn canonical_elems(v: &[u8]) -> Vec<u8> {
    rotate_slice(v, least_rotation(v))
}

/// The lexicographically least rotation.
pub fn canonical(s: &CyclicSeq) -> CyclicSeq {
    CyclicSeq::new_unchecked(s.modulus, canonical_elems(&s.elems))
}

/// Canonical form of the primitive period; identifies a cycle regardless of
/// how many times it is repeated.
pub fn cycle_class(s: &CyclicSeq) -> CyclicSeq {
    canonical(&s.primitive())
}

pub fn hamming(a: &Word, b: &Word) -> Result<usize> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch { left: a.modulus, right: b.modulus });
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(hamming_slices(&a.elems, &b.elems))
}

pub(crate) fn hamming_slices(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Builds [X, X+1, ..., X+(m-1)].
pub fn sds_from_block(x: &Word) -> CyclicSeq {
    let m = x.modulus;
    let mut elems = Vec::with_capacity(x.len() * m as usize);
    for c in 0..m {
        elems.extend(x.elems.iter().map(|&v| (v + c) % m));
    }
    CyclicSeq::new_unchecked(m, elems)
}

/// Calls `f` on every word of length `len` over Z_m in lexicographic order.
pub fn for_each_word(m: u8, len: usize, mut f: impl FnMut(&[u8])) {
    let mut w = vec![0u8; len];
    loop {
        f(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < m {
                break;
            }
            w[i] = 0;
        }
    }
}

/// All rotation classes of SDSs of period exactly `n` over Z_m, as canonical
/// representatives. Only sequences of the form [X, X+1, ..., X+(m-1)] are
/// candidates, so the work is m^(n/m) rather than m^n.
pub fn enumerate_sds(m: u8, n: usize) -> Result<BTreeSet<CyclicSeq>> {
    if m < 2 {
        return Err(Error::BadModulus(m as u32));
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut out = BTreeSet::new();
    if !n.is_multiple_of(m as usize) {
        return Ok(out);
    }
    let b = n / m as usize;
    let size = checked_pow(m as u64, b as u64).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded { size, limit: ENUMERATION_LIMIT });
    }
    for_each_word(m, b, |x| {
        let s = sds_from_block(&Word { modulus: m, elems: x.to_vec() });
        if period(&s) == n {
            out.insert(canonical(&s));
        }
    });
    Ok(out)
}
