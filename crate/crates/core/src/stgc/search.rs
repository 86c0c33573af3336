//! Exhaustive search for binary codes of length p and period 2^p − 2 built from
//! all full-period necklaces.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::zmseq::{canonical, for_each_word, period, CyclicSeq};

use super::construct_from_necklaces;
use super::ordering::{Adjacency, ClassSpace};
use super::Stgc;

const NODE_LIMIT: u64 = 50_000_000;

/// Binary necklaces of length n with period n, sorted.
pub fn full_period_necklaces(n: usize) -> Vec<CyclicSeq> {
    let mut set = std::collections::BTreeSet::new();
    for_each_word(2, n, |w| {
        let s = CyclicSeq::new_unchecked(2, w.to_vec());
        if period(&s) == n {
            set.insert(canonical(&s));
        }
    });
    set.into_iter().collect()
}

/// Orders all (2^p − 2)/p full-period binary necklaces of length p so consecutive
/// ones differ in one coordinate and the last differs from E^ℓ of the first in one
/// coordinate. Returns the resulting code, or `None` if no ordering exists.
pub fn search_thm3_max_period(p: u8) -> Result<Option<Stgc>> {
    if !is_prime(p as u64) || !(3..=7).contains(&p) {
        return Err(Error::InvalidParameter(format!("p must be one of 3, 5, 7, got {p}")));
    }
    let necklaces = full_period_necklaces(p as usize);
    let space = ClassSpace::new(2, Adjacency::Single, necklaces.iter().cloned())?;
    let Some(arr) = space.backtrack(necklaces[0].elems(), NODE_LIMIT)? else {
        return Ok(None);
    };
    let seqs: Vec<CyclicSeq> = arr.seqs.into_iter().map(|s| CyclicSeq::new_unchecked(2, s)).collect();
    construct_from_necklaces(&seqs, arr.ell).map(Some)
}
