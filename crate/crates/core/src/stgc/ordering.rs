//! Searches for orderings of rotation classes in which consecutive aligned
//! representatives are adjacent and the last one is adjacent to E^ℓ of the first
//! for some ℓ coprime to the track length.
//!
//! A class is visited through one aligned representative. Moving to a neighbour
//! fixes the neighbour's alignment, so a path carries its own rotation offsets and
//! the wrap condition depends on all of them.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::zmseq::{canonical_elems, rotate_slice, rotation_offset, CyclicSeq};

const NONE: usize = usize::MAX;

/// An aligned representative with its class id.
type Member = (Vec<u8>, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjacency {
    /// Add a nonzero constant on one residue class mod n: the aligned sequences
    /// differ in track/n coordinates.
    ResidueClass { n: usize },
    /// Change one coordinate.
    Single,
}

/// A set of rotation classes with an adjacency rule on aligned representatives.
pub struct ClassSpace {
    modulus: u8,
    track: usize,
    adjacency: Adjacency,
    index: HashMap<Vec<u8>, usize>,
    classes: Vec<Vec<u8>>,
}

/// A cyclic arrangement: one aligned representative per class, plus the wrap offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    pub seqs: Vec<Vec<u8>>,
    pub ell: usize,
}

impl ClassSpace {
    /// Classes are deduplicated by rotation; their order fixes class ids.
    pub fn new(modulus: u8, adjacency: Adjacency, classes: impl IntoIterator<Item = CyclicSeq>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut reps = Vec::new();
        let mut track = None;
        for c in classes {
            if c.modulus() != modulus {
                return Err(Error::ModulusMismatch { left: c.modulus(), right: modulus });
            }
            match track {
                None => track = Some(c.len()),
                Some(t) if t != c.len() => return Err(Error::LengthMismatch { left: c.len(), right: t }),
                _ => {}
            }
            let key = canonical_elems(c.elems());
            if !index.contains_key(&key) {
                index.insert(key.clone(), reps.len());
                reps.push(key);
            }
        }
        let track = track.ok_or(Error::Empty)?;
        if let Adjacency::ResidueClass { n } = adjacency {
            if n == 0 || track % n != 0 {
                return Err(Error::BlockMismatch { block: n, len: track });
            }
        }
        Ok(ClassSpace { modulus, track, adjacency, index, classes: reps })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn track(&self) -> usize {
        self.track
    }

    /// Canonical representative of class `id`.
    pub fn class_rep(&self, id: usize) -> &[u8] {
        &self.classes[id]
    }

    pub fn class_of(&self, a: &[u8]) -> Option<usize> {
        self.index.get(&canonical_elems(a)).copied()
    }

    /// Neighbours of `a` inside the space, with their class ids, in generation order:
    /// residues 1, 2, ..., n−1, 0 (or coordinates 0..track), each with increasing constant.
    pub fn neighbours(&self, a: &[u8]) -> Vec<(Vec<u8>, usize)> {
        let m = self.modulus;
        let mut out = Vec::new();
        let mut push = |b: Vec<u8>| {
            if let Some(c) = self.class_of(&b) {
                out.push((b, c));
            }
        };
        match self.adjacency {
            Adjacency::ResidueClass { n } => {
                for r in 1..=n {
                    let j = r % n;
                    for delta in 1..m {
                        let mut b = a.to_vec();
                        for v in b.iter_mut().skip(j).step_by(n) {
                            *v = (*v + delta) % m;
                        }
                        push(b);
                    }
                }
            }
            Adjacency::Single => {
                for j in 0..self.track {
                    for delta in 1..m {
                        let mut b = a.to_vec();
                        b[j] = (b[j] + delta) % m;
                        push(b);
                    }
                }
            }
        }
        out
    }

    pub fn adjacent(&self, a: &[u8], b: &[u8]) -> bool {
        let m = self.modulus;
        let diffs: Vec<(usize, u8)> =
            a.iter().zip(b).enumerate().filter(|(_, (x, y))| x != y).map(|(i, (x, y))| (i, (y + m - x) % m)).collect();
        match self.adjacency {
            Adjacency::Single => diffs.len() == 1,
            Adjacency::ResidueClass { n } => {
                diffs.len() == self.track / n && diffs.iter().all(|&(i, d)| i % n == diffs[0].0 % n && d == diffs[0].1)
            }
        }
    }

    /// Smallest ℓ coprime to the track length with `last` adjacent to E^ℓ `first`.
    pub fn closing_shift(&self, last: &[u8], first: &[u8]) -> Option<usize> {
        (1..self.track)
            .filter(|&l| gcd(l as u64, self.track as u64) == 1)
            .find(|&l| self.adjacent(last, &rotate_slice(first, l)))
    }

    /// Backtracking from `start` for up to `max_nodes`, then a seeded repair search.
    pub fn arrange(&self, start: &[u8], max_nodes: u64, repair_steps: u64, seed: u64) -> Result<Arrangement> {
        match self.backtrack(start, max_nodes) {
            Ok(Some(a)) => Ok(a),
            Ok(None) => Err(Error::SearchFailed("no ordering exists".into())),
            Err(Error::SearchFailed(_)) => Repair::new(self, vec![start.to_vec()], seed)?
                .run(repair_steps)
                .ok_or_else(|| Error::SearchFailed(format!("repair search gave up after {repair_steps} steps"))),
            Err(e) => Err(e),
        }
    }

    fn onward_degree(&self, b: &[u8], visited: &[bool], own: usize) -> usize {
        let mut seen = Vec::new();
        for (_, c) in self.neighbours(b) {
            if c != own && !visited[c] && !seen.contains(&c) {
                seen.push(c);
            }
        }
        seen.len()
    }

    /// Exhaustive depth-first search from the aligned representative `start`.
    /// Candidates are tried by fewest onward unvisited classes, then generation order.
    /// Returns `Ok(None)` when the space is exhausted and an error when `max_nodes`
    /// is exceeded.
    pub fn backtrack(&self, start: &[u8], max_nodes: u64) -> Result<Option<Arrangement>> {
        let total = self.len();
        let start_class =
            self.class_of(start).ok_or_else(|| Error::InvalidParameter("start is not in the class space".into()))?;
        let mut visited = vec![false; total];
        visited[start_class] = true;
        let mut path: Vec<Vec<u8>> = vec![start.to_vec()];
        let mut classes = vec![start_class];
        let mut stack: Vec<(Vec<Member>, usize)> = Vec::new();
        let mut nodes = 0u64;

        let candidates = |path_last: &[u8], visited: &[bool]| -> Vec<(Vec<u8>, usize)> {
            let mut c: Vec<(usize, usize, Vec<u8>, usize)> = self
                .neighbours(path_last)
                .into_iter()
                .enumerate()
                .filter(|(_, (_, cls))| !visited[*cls])
                .map(|(i, (b, cls))| (self.onward_degree(&b, visited, cls), i, b, cls))
                .collect();
            c.sort_by_key(|t| (t.0, t.1));
            c.into_iter().map(|(_, _, b, cls)| (b, cls)).collect()
        };

        if total == 1 {
            return Ok(self.closing_shift(start, start).map(|ell| Arrangement { seqs: path, ell }));
        }
        stack.push((candidates(start, &visited), 0));
        while let Some((cands, next)) = stack.last_mut() {
            if *next >= cands.len() {
                stack.pop();
                if path.len() > 1 {
                    path.pop();
                    let c = classes.pop().expect("class stack");
                    visited[c] = false;
                }
                continue;
            }
            let (b, cls) = cands[*next].clone();
            *next += 1;
            nodes += 1;
            if nodes > max_nodes {
                return Err(Error::SearchFailed(format!("node limit {max_nodes} reached")));
            }
            if visited[cls] {
                continue;
            }
            visited[cls] = true;
            path.push(b);
            classes.push(cls);
            if path.len() == total {
                if let Some(ell) = self.closing_shift(path.last().expect("nonempty"), &path[0]) {
                    return Ok(Some(Arrangement { seqs: path, ell }));
                }
                path.pop();
                classes.pop();
                visited[cls] = false;
                continue;
            }
            let next_cands = candidates(path.last().expect("nonempty"), &visited);
            stack.push((next_cands, 0));
        }
        Ok(None)
    }
}

/// Randomized path extension with rotation repair.
///
/// Starting from `initial` (consecutive entries adjacent, classes distinct), the
/// path is extended through unvisited classes. When the endpoint is stuck, or every
/// class is covered but the wrap condition fails, a neighbour B = E^s A_i of the
/// endpoint A_k is used to reverse the tail: the path becomes
/// A_0..A_i, E^{-s}A_k, ..., E^{-s}A_{i+1}. All steps draw from a ChaCha RNG seeded
/// with `seed`, so results are reproducible.
pub struct Repair<'a> {
    space: &'a ClassSpace,
    path: Vec<Vec<u8>>,
    pos: Vec<usize>,
    rng: ChaCha8Rng,
    pub rotations: u64,
    pub extensions: u64,
}

impl<'a> Repair<'a> {
    pub fn new(space: &'a ClassSpace, initial: Vec<Vec<u8>>, seed: u64) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::Empty);
        }
        let mut pos = vec![NONE; space.len()];
        for (i, a) in initial.iter().enumerate() {
            let c = space
                .class_of(a)
                .ok_or_else(|| Error::InvalidParameter(format!("path entry {i} is not in the class space")))?;
            if pos[c] != NONE {
                return Err(Error::InvalidParameter(format!("path entry {i} repeats a class")));
            }
            if i > 0 && !space.adjacent(&initial[i - 1], a) {
                return Err(Error::InvalidParameter(format!("path entries {} and {i} are not adjacent", i - 1)));
            }
            pos[c] = i;
        }
        Ok(Repair { space, path: initial, pos, rng: ChaCha8Rng::seed_from_u64(seed), rotations: 0, extensions: 0 })
    }

    pub fn path(&self) -> &[Vec<u8>] {
        &self.path
    }

    fn rotate_tail(&mut self, i: usize, s: usize) {
        let k = self.path.len() - 1;
        let back = self.space.track - s % self.space.track;
        let tail: Vec<Vec<u8>> = self.path.drain(i + 1..).rev().map(|a| rotate_slice(&a, back)).collect();
        for (off, a) in tail.into_iter().enumerate() {
            let c = self.space.class_of(&a).expect("rotation keeps class");
            self.pos[c] = i + 1 + off;
            self.path.push(a);
        }
        debug_assert_eq!(self.path.len(), k + 1);
        self.rotations += 1;
    }

    fn reverse(&mut self) {
        self.path.reverse();
        for (i, a) in self.path.iter().enumerate() {
            let c = self.space.class_of(a).expect("class");
            self.pos[c] = i;
        }
    }

    /// One random rotation step at the endpoint; false if none is possible.
    fn random_rotation(&mut self) -> bool {
        let k = self.path.len() - 1;
        let last = self.path[k].clone();
        let options: Vec<(usize, Vec<u8>)> = self
            .space
            .neighbours(&last)
            .into_iter()
            .filter_map(|(b, c)| {
                let i = self.pos[c];
                (i != NONE && i < k).then_some((i, b))
            })
            .collect();
        let Some((i, b)) = options.choose(&mut self.rng).cloned() else {
            return false;
        };
        let s = rotation_offset(&self.path[i], &b).expect("same class");
        self.rotate_tail(i, s);
        true
    }

    /// Runs until every class is covered and the wrap closes, or `max_steps` is spent.
    pub fn run(&mut self, max_steps: u64) -> Option<Arrangement> {
        let total = self.space.len();
        for _ in 0..max_steps {
            let k = self.path.len() - 1;
            if self.path.len() == total {
                if let Some(ell) = self.space.closing_shift(&self.path[k], &self.path[0]) {
                    return Some(Arrangement { seqs: self.path.clone(), ell });
                }
                if self.rng.gen_ratio(1, 16) || !self.random_rotation() {
                    self.reverse();
                }
                continue;
            }
            let last = self.path[k].clone();
            let mut fresh: Vec<(Vec<u8>, usize)> =
                self.space.neighbours(&last).into_iter().filter(|(_, c)| self.pos[*c] == NONE).collect();
            if fresh.is_empty() {
                if self.rng.gen_ratio(1, 32) || !self.random_rotation() {
                    self.reverse();
                }
                continue;
            }
            fresh.shuffle(&mut self.rng);
            let visited: Vec<bool> = self.pos.iter().map(|&p| p != NONE).collect();
            let (b, c) =
                fresh.into_iter().min_by_key(|(b, c)| self.space.onward_degree(b, &visited, *c)).expect("nonempty");
            self.pos[c] = self.path.len();
            self.path.push(b);
            self.extensions += 1;
        }
        None
    }
}
