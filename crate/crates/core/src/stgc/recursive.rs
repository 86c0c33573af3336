//! Maximum-period codes of length p^t over Z_p.
//!
//! Level t+1 SDSs come from level-t SDSs [X, X+1, ...] through the prime-p
//! recursion with parameters (Z, Y_1, ..., Y_{p−2}). Fixing the parameters and
//! feeding every SDS of the level-t ordering gives a component: a path of aligned
//! level-(t+1) SDSs, since consecutive X's differ in one position and so do the
//! resulting V's. Components partition the level-(t+1) classes.
//!
//! Components are chained greedily end to end wherever an endpoint of one is
//! adjacent to an aligned endpoint of another. Chaining alone cannot close the
//! cycle: the wrap offsets it produces are all multiples of p. A rotation repair
//! over single classes then completes and closes the ordering.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};
use crate::operators::general_p_recursion;
use crate::zmseq::{for_each_word, rotate_slice, rotation_offset, CyclicSeq, Word};

use super::diff::diff_ordering;
use super::ordering::{Adjacency, ClassSpace, Repair};
use super::{construct_from_sds, verify_stgc, SdsOrdering, Stgc};

/// Largest period built by [`build_recursive_stgc`].
pub const PERIOD_LIMIT: u128 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x3c0de;
const REPAIR_STEPS: u64 = 20_000_000;
const SEED_ATTEMPTS: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveStats {
    pub prime: u8,
    pub t: u32,
    pub components: usize,
    /// Components joined whole by the greedy chaining stage.
    pub chained_components: usize,
    pub repair_rotations: u64,
    pub repair_extensions: u64,
    /// Consecutive pairs (including the wrap) that lie in the same component.
    pub internal_links: usize,
    pub cross_links: usize,
    pub ell: usize,
    pub seed: u64,
}

impl fmt::Display for RecursiveStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} t={} components={} chained={} rotations={} extensions={} internal_links={} cross_links={} ell={} seed={}",
            self.prime,
            self.t,
            self.components,
            self.chained_components,
            self.repair_rotations,
            self.repair_extensions,
            self.internal_links,
            self.cross_links,
            self.ell,
            self.seed
        )
    }
}

fn check_params(p: u8, t: u32) -> Result<()> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let n = checked_pow(p as u64, t as u64).unwrap_or(u128::MAX);
    let period = if n > 64 { u128::MAX } else { checked_pow(p as u64, n as u64).unwrap_or(u128::MAX) };
    if period > PERIOD_LIMIT {
        return Err(Error::GuardExceeded { size: period, limit: PERIOD_LIMIT });
    }
    Ok(())
}

/// Every component as a list of aligned level-(t+1) SDSs, one per parameter tuple.
fn components(p: u8, lower: &SdsOrdering) -> Result<Vec<Vec<Vec<u8>>>> {
    let len = lower.n;
    let blocks: Vec<Word> =
        lower.seqs.iter().map(|s| Word::new(p, s.elems()[..len].to_vec())).collect::<Result<_>>()?;
    let free = p as usize - 2;
    let mut out = Vec::new();
    let mut failure = None;
    // parameters: Z (leading zero) then the free words, as one long word
    for_each_word(p, (1 + free) * len - 1, |params| {
        if failure.is_some() {
            return;
        }
        let mut z = vec![0u8];
        z.extend_from_slice(&params[..len - 1]);
        let z = Word::new(p, z).expect("in range");
        let ys: Vec<Word> = (0..free)
            .map(|k| Word::new(p, params[len - 1 + k * len..len - 1 + (k + 1) * len].to_vec()).expect("in range"))
            .collect();
        let mut comp = Vec::with_capacity(blocks.len());
        for x in &blocks {
            match general_p_recursion(p, x, &z, &ys) {
                Ok(s) => comp.push(s.into_elems()),
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            }
        }
        out.push(comp);
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Greedy end-to-end chaining of components.
fn chain_components(space: &ClassSpace, comps: &[Vec<Vec<u8>>], seed: u64) -> (Vec<Vec<u8>>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // class -> (component, is head)
    let mut ends: HashMap<usize, (usize, bool)> = HashMap::new();
    for (i, c) in comps.iter().enumerate() {
        ends.insert(space.class_of(&c[0]).expect("class"), (i, true));
        ends.insert(space.class_of(c.last().expect("nonempty")).expect("class"), (i, false));
    }
    let mut used = vec![false; comps.len()];
    used[0] = true;
    let mut path = comps[0].clone();
    let mut chained = 1;
    loop {
        let last = path.last().expect("nonempty").clone();
        let mut options: Vec<Vec<Vec<u8>>> = Vec::new();
        for (b, cls) in space.neighbours(&last) {
            let Some(&(ci, head)) = ends.get(&cls) else { continue };
            if used[ci] {
                continue;
            }
            let comp = &comps[ci];
            let anchor = if head { &comp[0] } else { comp.last().expect("nonempty") };
            let s = rotation_offset(anchor, &b).expect("same class");
            let mut seg: Vec<Vec<u8>> = comp.iter().map(|a| rotate_slice(a, s)).collect();
            if !head {
                seg.reverse();
            }
            options.push(seg);
        }
        let Some(seg) = options.choose(&mut rng) else { break };
        let ci = ends[&space.class_of(&seg[0]).expect("class")].0;
        used[ci] = true;
        path.extend(seg.iter().cloned());
        chained += 1;
    }
    (path, chained)
}

/// Ordering of all level-t SDSs, with statistics for t ≥ 2.
pub fn recursive_ordering(p: u8, t: u32) -> Result<(SdsOrdering, Option<RecursiveStats>)> {
    check_params(p, t)?;
    if t == 1 {
        return Ok((diff_ordering(p)?, None));
    }
    let (lower, _) = recursive_ordering(p, t - 1)?;
    let comps = components(p, &lower)?;
    let mut classes = Vec::with_capacity(comps.len() * lower.seqs.len());
    let mut owner = HashMap::new();
    for c in &comps {
        for s in c {
            classes.push(CyclicSeq::new_unchecked(p, s.clone()));
        }
    }
    let n = lower.n * p as usize;
    let space = ClassSpace::new(p, Adjacency::ResidueClass { n }, classes)?;
    if space.len() != comps.len() * lower.seqs.len() {
        return Err(Error::SearchFailed(format!(
            "components overlap: {} classes from {} components",
            space.len(),
            comps.len()
        )));
    }
    for (ci, c) in comps.iter().enumerate() {
        for (k, s) in c.iter().enumerate() {
            owner.insert(space.class_of(s).expect("class"), (ci, k));
        }
    }

    let mut last_err = None;
    for attempt in 0..SEED_ATTEMPTS {
        let seed = DEFAULT_SEED + attempt;
        let (path, chained) = chain_components(&space, &comps, seed);
        let mut repair = Repair::new(&space, path, seed)?;
        let Some(arr) = repair.run(REPAIR_STEPS) else {
            last_err = Some(Error::SearchFailed(format!("repair gave up with seed {seed}")));
            continue;
        };
        let total = arr.seqs.len();
        let internal = (0..total)
            .filter(|&i| {
                let a = owner[&space.class_of(&arr.seqs[i]).expect("class")];
                let b = owner[&space.class_of(&arr.seqs[(i + 1) % total]).expect("class")];
                a.0 == b.0 && a.1.abs_diff(b.1) == 1
            })
            .count();
        let stats = RecursiveStats {
            prime: p,
            t,
            components: comps.len(),
            chained_components: chained,
            repair_rotations: repair.rotations,
            repair_extensions: repair.extensions,
            internal_links: internal,
            cross_links: total - internal,
            ell: arr.ell,
            seed,
        };
        let seqs = arr.seqs.into_iter().map(|s| CyclicSeq::new_unchecked(p, s)).collect();
        return Ok((SdsOrdering { modulus: p, n, seqs, ell: arr.ell }, Some(stats)));
    }
    Err(last_err.unwrap_or_else(|| Error::SearchFailed("no attempts made".into())))
}

/// A verified length-p^t, period-p^(p^t) code over Z_p in which every coordinate
/// changes somewhere.
pub fn build_recursive_stgc(p: u8, t: u32) -> Result<(Stgc, Option<RecursiveStats>)> {
    let (ordering, stats) = recursive_ordering(p, t)?;
    let code = construct_from_sds(&ordering)?;
    let report = verify_stgc(&code);
    if !report.all_coordinates_toggled() {
        return Err(Error::VerificationFailed(format!("coordinates {:?} never change", report.untoggled)));
    }
    if !report.exhaustive {
        return Err(Error::VerificationFailed("code does not contain every word".into()));
    }
    Ok((code, stats))
}
