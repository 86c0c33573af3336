//! The difference operator D = E − 1, its inverse, the block operators Δ and Δ⁻¹,
//! and the recursive SDS constructions over prime alphabets.

use std::collections::BTreeSet;

use crate::arith::{checked_pow, gcd, is_prime};
use crate::error::{Error, Result};
use crate::zmseq::{cycle_class, for_each_word, is_self_dual, CyclicSeq, Word};

/// Upper bound on parameter combinations enumerated by the set-valued operations.
pub const FAMILY_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreimageKind {
    /// Binary, even weight: two complementary preimages of the same length.
    SinglePeriod,
    /// Preimage is longer than the input and self-dual.
    SdsDoubled,
    /// Any other family of running-sum preimages.
    Family,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageResult {
    pub kind: PreimageKind,
    pub sequences: Vec<CyclicSeq>,
    pub parameter_arity: usize,
}

/// D S = [s_2 − s_1, ..., s_1 − s_k].
pub fn apply_d(s: &CyclicSeq) -> CyclicSeq {
    let m = s.modulus();
    let e = s.elems();
    let k = e.len();
    let out = (0..k).map(|i| (e[(i + 1) % k] + m - e[i]) % m).collect();
    CyclicSeq::new_unchecked(m, out)
}

pub fn apply_d_pow(s: &CyclicSeq, r: usize) -> CyclicSeq {
    let mut t = s.clone();
    for _ in 0..r {
        t = apply_d(&t);
    }
    t
}

/// Running-sum preimage with leading element `lead`, continued until it closes.
fn running_sum(s: &CyclicSeq, lead: u8) -> CyclicSeq {
    let m = s.modulus();
    let sum = s.sum() as u64;
    let runs = (m as u64 / gcd(sum, m as u64)) as usize;
    let k = s.len();
    let mut out = Vec::with_capacity(runs * k);
    let mut acc = lead % m;
    for i in 0..runs * k {
        out.push(acc);
        acc = (acc + s.elems()[i % k]) % m;
    }
    CyclicSeq::new_unchecked(m, out)
}

/// All running-sum preimages of S, one per distinct cyclic result.
///
/// With s = ΣS and e = m / gcd(s, m): for e = 1 every lead gives a preimage of the
/// same length (m of them); otherwise the preimage has length e·k and leads that
/// differ by a multiple of s give rotations of each other, so only gcd(s, m) are kept.
pub fn apply_d_inv(s: &CyclicSeq) -> PreimageResult {
    let m = s.modulus();
    let g = gcd(s.sum() as u64, m as u64) as u8;
    let e = m / g;
    let leads = if e == 1 { m } else { g };
    let sequences: Vec<CyclicSeq> = (0..leads).map(|a| running_sum(s, a)).collect();
    let kind = match (m, e) {
        (2, 1) => PreimageKind::SinglePeriod,
        (_, e) if e == m => PreimageKind::SdsDoubled,
        _ => PreimageKind::Family,
    };
    debug_assert!(kind != PreimageKind::SdsDoubled || sequences.iter().all(is_self_dual));
    PreimageResult { kind, sequences, parameter_arity: 1 }
}

/// D^{-r} S with one leading element per level: `leads[0]` is used first.
pub fn apply_d_inv_pow_with(s: &CyclicSeq, leads: &[u8]) -> CyclicSeq {
    let mut t = s.clone();
    for &a in leads {
        t = running_sum(&t, a);
    }
    t
}

/// Every distinct cyclic sequence D^{-r} S over all lead words of length r.
pub fn apply_d_inv_pow(s: &CyclicSeq, r: usize) -> Result<PreimageResult> {
    let m = s.modulus();
    let size = checked_pow(m as u64, r as u64).unwrap_or(u128::MAX);
    if size > FAMILY_LIMIT {
        return Err(Error::GuardExceeded { size, limit: FAMILY_LIMIT });
    }
    let mut seen = BTreeSet::new();
    let mut sequences = Vec::new();
    for_each_word(m, r, |leads| {
        let t = apply_d_inv_pow_with(s, leads);
        if seen.insert(crate::zmseq::canonical(&t)) {
            sequences.push(t);
        }
    });
    let kind = if sequences.iter().all(|t| t.len() > s.len() && is_self_dual(t)) {
        PreimageKind::SdsDoubled
    } else {
        PreimageKind::Family
    };
    Ok(PreimageResult { kind, sequences, parameter_arity: r })
}

fn check_block(len: usize, block: usize) -> Result<()> {
    if block == 0 || !len.is_multiple_of(block) {
        return Err(Error::BlockMismatch { block, len });
    }
    Ok(())
}

/// Δ_b S = [X_2 − X_1, X_3 − X_2, ..., X_1 − X_r] for blocks X_i of length b.
pub fn delta(s: &CyclicSeq, block: usize) -> Result<CyclicSeq> {
    check_block(s.len(), block)?;
    let m = s.modulus();
    let e = s.elems();
    let n = e.len();
    let out = (0..n).map(|i| (e[(i + block) % n] + m - e[i]) % m).collect();
    Ok(CyclicSeq::new_unchecked(m, out))
}

/// Δ_b⁻¹ S = [Y, Y+X_1, Y+X_1+X_2, ...], continued through Y+Z, Y+2Z, ... with
/// Z = ΣX_i until a multiple of Z vanishes.
pub fn delta_inv(s: &CyclicSeq, block: usize, y: &Word) -> Result<CyclicSeq> {
    check_block(s.len(), block)?;
    if y.len() != block {
        return Err(Error::LengthMismatch { left: y.len(), right: block });
    }
    if y.modulus() != s.modulus() {
        return Err(Error::ModulusMismatch { left: y.modulus(), right: s.modulus() });
    }
    let m = s.modulus();
    let e = s.elems();
    let r = e.len() / block;
    let mut z = vec![0u8; block];
    for (i, &v) in e.iter().enumerate() {
        z[i % block] = (z[i % block] + v) % m;
    }
    // additive order of Z: lcm of the orders of its entries
    let order = z.iter().fold(1u64, |acc, &v| {
        let o = m as u64 / gcd(v as u64, m as u64);
        acc / gcd(acc, o) * o
    }) as usize;
    let mut out = Vec::with_capacity(order * e.len());
    let mut cur = y.elems().to_vec();
    for i in 0..order * r {
        out.extend_from_slice(&cur);
        let x = &e[(i % r) * block..(i % r + 1) * block];
        for (c, &v) in cur.iter_mut().zip(x) {
            *c = (*c + v) % m;
        }
    }
    Ok(CyclicSeq::new_unchecked(m, out))
}

/// Applies Δ_n⁻¹ with every Y of length n to each CCR_n cycle (materialized at
/// length 2n) and returns the resulting CCR_2n cycles as canonical classes.
pub fn recurse_ccr_sds(sds_set: &BTreeSet<CyclicSeq>, n: usize) -> Result<BTreeSet<CyclicSeq>> {
    let size = checked_pow(2, n as u64).unwrap_or(u128::MAX).saturating_mul(sds_set.len() as u128);
    if size > FAMILY_LIMIT {
        return Err(Error::GuardExceeded { size, limit: FAMILY_LIMIT });
    }
    let mut out = BTreeSet::new();
    for s in sds_set {
        if s.modulus() != 2 {
            return Err(Error::Precondition("recursion is binary only".into()));
        }
        if !is_self_dual(s) {
            return Err(Error::Precondition(format!("{s} is not self-dual")));
        }
        let full = s.repeat_to(2 * n)?;
        let mut err = None;
        for_each_word(2, n, |y| {
            let y = Word::new(2, y.to_vec()).expect("binary word");
            match delta_inv(&full, n, &y) {
                Ok(t) => {
                    out.insert(cycle_class(&t));
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalRows {
    pub prime: u8,
    pub rows: Vec<Vec<u8>>,
}

impl PascalRows {
    pub fn coeff(&self, row: usize, col: usize) -> u8 {
        self.rows[row][col]
    }
}

/// Rows 0..p−1 of Pascal's triangle mod p.
pub fn pascal_rows(p: u8) -> Result<PascalRows> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u32));
    }
    if p > 23 {
        return Err(Error::InvalidParameter("prime must be at most 23".into()));
    }
    let mut rows: Vec<Vec<u8>> = vec![vec![1]];
    for r in 1..p as usize {
        let prev = &rows[r - 1];
        let mut row = vec![1u8; r + 1];
        for j in 1..r {
            row[j] = (prev[j - 1] + prev[j]) % p;
        }
        rows.push(row);
    }
    Ok(PascalRows { prime: p, rows })
}

/// Builds [V, V+1, ..., V+(p−1)] from the source block X, a word Z starting with
/// zero, and p−2 free words. Block j of V is Σ_k C(j,k)·W_k over k ≤ j, where
/// W_0 = Z, W_k = Ys[p−2−k] for 1 ≤ k ≤ p−2, and W_{p−1} = X.
pub fn general_p_recursion(p: u8, x: &Word, z: &Word, ys: &[Word]) -> Result<CyclicSeq> {
    let rows = pascal_rows(p)?;
    let len = x.len();
    if ys.len() != p as usize - 2 {
        return Err(Error::LengthMismatch { left: ys.len(), right: p as usize - 2 });
    }
    for w in std::iter::once(z).chain(ys) {
        if w.len() != len {
            return Err(Error::LengthMismatch { left: w.len(), right: len });
        }
    }
    for w in std::iter::once(z).chain(ys).chain(std::iter::once(x)) {
        if w.modulus() != p {
            return Err(Error::ModulusMismatch { left: w.modulus(), right: p });
        }
    }
    if z.elems()[0] != 0 {
        return Err(Error::Precondition("Z must start with zero".into()));
    }
    let pu = p as usize;
    let w = |k: usize| -> &Word {
        if k == 0 {
            z
        } else if k == pu - 1 {
            x
        } else {
            &ys[pu - 2 - k]
        }
    };
    let mut v = Vec::with_capacity(pu * len);
    for j in 0..pu {
        for i in 0..len {
            let mut acc = 0usize;
            for k in 0..=j {
                acc += rows.coeff(j, k) as usize * w(k).elems()[i] as usize;
            }
            v.push((acc % pu) as u8);
        }
    }
    let mut out = Vec::with_capacity(pu * v.len());
    for c in 0..p {
        out.extend(v.iter().map(|&e| (e + c) % p));
    }
    Ok(CyclicSeq::new_unchecked(p, out))
}

/// [V, V+1, V+2] with V = (Z, Z+Y, Z+2Y+X).
pub fn z3_recursion(x: &Word, z: &Word, y: &Word) -> Result<CyclicSeq> {
    general_p_recursion(3, x, z, std::slice::from_ref(y))
}

/// [V, ..., V+4] with V = (Z, Z+Y3, Z+2Y3+Y2, Z+3Y3+3Y2+Y1, Z+4Y3+Y2+4Y1+X).
pub fn z5_recursion(x: &Word, z: &Word, y1: &Word, y2: &Word, y3: &Word) -> Result<CyclicSeq> {
    general_p_recursion(5, x, z, &[y1.clone(), y2.clone(), y3.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registers::{count_ccr_formula, count_mccr_formula, fsr_cycles, RegisterSpec};
    use crate::zmseq::{canonical, enumerate_sds, period, sds_from_block, shift};
    use proptest::prelude::*;

    fn seq(m: u8, d: &str) -> CyclicSeq {
        CyclicSeq::from_digits(m, d).unwrap()
    }

    fn word(m: u8, d: &str) -> Word {
        Word::from_digits(m, d).unwrap()
    }

    #[test]
    fn d_examples() {
        assert_eq!(apply_d(&seq(2, "0011")), seq(2, "0101"));
        assert_eq!(apply_d(&seq(2, "01")), seq(2, "11"));
        let s = seq(2, "001011");
        assert_eq!(apply_d(&apply_d(&s)), apply_d_pow(&s, 2));
        assert_eq!(apply_d_pow(&seq(2, "0011"), 2), seq(2, "1111"));
        assert_eq!(apply_d(&seq(3, "021")), seq(3, "222"));
    }

    #[test]
    fn d_inv_examples() {
        let r = apply_d_inv(&seq(2, "11"));
        assert_eq!(r.kind, PreimageKind::SinglePeriod);
        assert_eq!(r.sequences, vec![seq(2, "01"), seq(2, "10")]);
        let r = apply_d_inv(&seq(2, "10"));
        assert_eq!(r.kind, PreimageKind::SdsDoubled);
        assert_eq!(r.sequences.len(), 1);
        assert_eq!(canonical(&r.sequences[0]), seq(2, "0011"));
        let r = apply_d_inv(&seq(3, "1"));
        assert_eq!(r.kind, PreimageKind::SdsDoubled);
        assert_eq!(r.sequences, vec![seq(3, "012")]);
        // s = 2 in Z_4: order 2, two inequivalent leads
        let r = apply_d_inv(&seq(4, "11"));
        assert_eq!(r.kind, PreimageKind::Family);
        assert_eq!(r.sequences, vec![seq(4, "0123"), seq(4, "1230")]);
    }

    #[test]
    fn d_inv_pow_counts_distinct_results() {
        // period 2^(n+1) SDS, r = 2^n: 2^(2^n − 1) distinct cyclic results
        for (n, s) in [(1u32, "0011"), (2, "00001111"), (2, "00101101")] {
            let r = 1usize << n;
            let res = apply_d_inv_pow(&seq(2, s), r).unwrap();
            assert_eq!(res.sequences.len(), 1 << ((1 << n) - 1), "{s}");
            for t in &res.sequences {
                let back = apply_d_pow(t, r);
                assert_eq!(back, seq(2, s).repeat_to(t.len()).unwrap());
            }
        }
    }

    #[test]
    fn d_inv_pow_block_shape() {
        // D^{-2^n}[X, X̄] = [Z, X+Z, Z̄, X+Z̄]
        let n = 2;
        let x = [0u8, 1, 1, 1];
        let s = sds_from_block(&Word::new(2, x.to_vec()).unwrap());
        let mut shapes = BTreeSet::new();
        for_each_word(2, 1 << n, |leads| {
            let t = apply_d_inv_pow_with(&s, leads);
            assert_eq!(t.len(), 4 << n);
            let b = |i: usize| &t.elems()[i * 4..(i + 1) * 4];
            let z = b(0).to_vec();
            let zbar: Vec<u8> = z.iter().map(|v| v ^ 1).collect();
            let xz: Vec<u8> = z.iter().zip(&x).map(|(a, c)| a ^ c).collect();
            let xzbar: Vec<u8> = zbar.iter().zip(&x).map(|(a, c)| a ^ c).collect();
            assert_eq!(b(1), &xz[..]);
            assert_eq!(b(2), &zbar[..]);
            assert_eq!(b(3), &xzbar[..]);
            shapes.insert(z);
        });
        assert_eq!(shapes.len(), 1 << (1 << n));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&seq(2, "000010111101"), 3).unwrap(), seq(2, "010101010101"));
        assert_eq!(delta(&seq(2, "000000111111"), 3).unwrap(), seq(2, "000111000111"));
        assert_eq!(delta(&seq(3, "012012"), 3).unwrap(), seq(3, "000000"));
        assert!(delta(&seq(2, "0001"), 3).is_err());
    }

    #[test]
    fn delta_inv_examples() {
        let s = seq(2, "000111");
        assert_eq!(delta_inv(&s, 3, &word(2, "000")).unwrap(), seq(2, "000000111111"));
        assert_eq!(delta_inv(&s, 3, &word(2, "001")).unwrap(), seq(2, "001001110110"));
        assert_eq!(delta_inv(&seq(3, "000000"), 2, &word(3, "12")).unwrap(), seq(3, "121212"));
        assert!(delta_inv(&s, 3, &word(2, "01")).is_err());
        assert!(delta_inv(&s, 4, &word(2, "0101")).is_err());
    }

    #[test]
    fn recursion_reproduces_ccr6_and_ccr12() {
        let ccr3 = fsr_cycles(&RegisterSpec::ccr(2, 3).unwrap()).unwrap();
        let ccr6 = recurse_ccr_sds(&ccr3, 3).unwrap();
        assert_eq!(ccr6, fsr_cycles(&RegisterSpec::ccr(2, 6).unwrap()).unwrap());
        assert_eq!(ccr6.len(), 6);
        let ccr12 = recurse_ccr_sds(&ccr6, 6).unwrap();
        assert_eq!(ccr12.len(), 172);
        assert_eq!(Some(ccr12.len() as u64), crate::registers::to_u64(&count_ccr_formula(12)));
        assert_eq!(ccr12.iter().filter(|c| c.len() == 8).count(), 2);
        assert_eq!(ccr12.iter().filter(|c| c.len() == 24).count(), 170);
        let ccr5 = fsr_cycles(&RegisterSpec::ccr(2, 5).unwrap()).unwrap();
        assert_eq!(recurse_ccr_sds(&ccr5, 5).unwrap(), fsr_cycles(&RegisterSpec::ccr(2, 10).unwrap()).unwrap());
    }

    #[test]
    fn recursion_rejects_non_sds() {
        let mut set = BTreeSet::new();
        set.insert(seq(2, "001"));
        assert!(recurse_ccr_sds(&set, 3).is_err());
    }

    #[test]
    fn pascal() {
        assert_eq!(pascal_rows(3).unwrap().rows, vec![vec![1], vec![1, 1], vec![1, 2, 1]]);
        assert_eq!(pascal_rows(5).unwrap().rows[4], vec![1, 4, 1, 4, 1]);
        assert_eq!(pascal_rows(2).unwrap().rows, vec![vec![1], vec![1, 1]]);
        assert_eq!(pascal_rows(4), Err(Error::NotPrime(4)));
        assert!(pascal_rows(29).is_err());
        let r = pascal_rows(23).unwrap();
        assert!(r.rows.iter().enumerate().all(|(i, row)| row.len() == i + 1));
    }

    #[test]
    fn recursion_small_examples() {
        let z = |d| word(3, d);
        assert_eq!(z3_recursion(&z("0"), &z("0"), &z("0")).unwrap(), seq(3, "000111222"));
        // V = (Z, Z+Y, Z+2Y+X) spelled out
        let out = z3_recursion(&z("1"), &z("0"), &z("2")).unwrap();
        assert_eq!(out, seq(3, "022100211"));
        assert!(z3_recursion(&z("0"), &z("1"), &z("0")).is_err());
        let f = |d| word(5, d);
        let zero = f("0");
        assert_eq!(z5_recursion(&zero, &zero, &zero, &zero, &zero).unwrap(), seq(5, "0000011111222223333344444"));
        let seven = Word::zeros(7, 1).unwrap();
        let out = general_p_recursion(7, &seven, &seven, &vec![seven.clone(); 5]).unwrap();
        let expected: Vec<u8> = (0..7).flat_map(|c| [c; 7]).collect();
        assert_eq!(out.elems(), &expected[..]);
        assert!(general_p_recursion(9, &seven, &seven, &[]).is_err());
    }

    #[test]
    fn z5_matches_written_coefficients() {
        // Z=0, X=a, Y1=b, Y2=c, Y3=d in a single position
        for_each_word(5, 4, |w| {
            let (a, b, c, d) = (w[0], w[1], w[2], w[3]);
            let one = |v: u8| Word::new(5, vec![v]).unwrap();
            let out = z5_recursion(&one(a), &one(0), &one(b), &one(c), &one(d)).unwrap();
            let v = &out.elems()[..5];
            let e = |x: u32| (x % 5) as u8;
            let (a, b, c, d) = (a as u32, b as u32, c as u32, d as u32);
            assert_eq!(v, &[0, e(d), e(2 * d + c), e(3 * d + 3 * c + b), e(4 * d + c + 4 * b + a)]);
        });
    }

    /// All source blocks X of length p^(n−1) with [X, ..., X+(p−1)] of period p^n,
    /// one per rotation class.
    fn source_blocks(p: u8, n: u32) -> Vec<Word> {
        enumerate_sds(p, (p as usize).pow(n))
            .unwrap()
            .into_iter()
            .map(|s| Word::new(p, s.elems()[..s.len() / p as usize].to_vec()).unwrap())
            .collect()
    }

    fn z_words(p: u8, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for_each_word(p, len - 1, |w| {
            let mut v = vec![0];
            v.extend_from_slice(w);
            out.push(Word::new(p, v).unwrap());
        });
        out
    }

    fn all_words(p: u8, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for_each_word(p, len, |w| out.push(Word::new(p, w.to_vec()).unwrap()));
        out
    }

    #[test]
    fn z3_completeness_n1_n2() {
        for (n, expected) in [(1u32, 3usize), (2, 729)] {
            let len = 3usize.pow(n - 1);
            let mut raw = 0;
            let mut classes = BTreeSet::new();
            for x in source_blocks(3, n) {
                for z in z_words(3, len) {
                    for y in all_words(3, len) {
                        let s = z3_recursion(&x, &z, &y).unwrap();
                        assert_eq!(period(&s), 3 * 3usize.pow(n));
                        classes.insert(canonical(&s));
                        raw += 1;
                    }
                }
            }
            assert_eq!(raw, expected, "n={n}: one output per (source, Z, Y)");
            assert_eq!(classes.len(), expected, "n={n}: outputs are distinct classes");
            assert_eq!(classes, enumerate_sds(3, 3 * 3usize.pow(n)).unwrap());
        }
        assert_eq!(count_mccr_formula(3, 9), 729u32.into());
    }

    #[test]
    fn z5_completeness_n1() {
        let x = source_blocks(5, 1);
        assert_eq!(x.len(), 1);
        let mut classes = BTreeSet::new();
        for y1 in all_words(5, 1) {
            for y2 in all_words(5, 1) {
                for y3 in all_words(5, 1) {
                    let zero = Word::zeros(5, 1).unwrap();
                    classes.insert(canonical(&z5_recursion(&x[0], &zero, &y1, &y2, &y3).unwrap()));
                }
            }
        }
        assert_eq!(classes.len(), 125);
        assert_eq!(classes, enumerate_sds(5, 25).unwrap());
    }

    #[test]
    fn recursion_inverts_under_d_powers() {
        // D^{(p−1)·p^(n−1)} of the output is the source repeated p times
        for (p, n) in [(3u8, 1u32), (3, 2), (5, 1), (7, 1)] {
            let len = (p as usize).pow(n - 1);
            for x in source_blocks(p, n).into_iter().take(3) {
                let zs = z_words(p, len);
                let z = zs.last().unwrap();
                let ys: Vec<Word> = (0..p - 2).map(|i| Word::new(p, vec![(i + 1) % p; len]).unwrap()).collect();
                let out = general_p_recursion(p, &x, z, &ys).unwrap();
                let back = apply_d_pow(&out, (p as usize - 1) * len);
                let src = sds_from_block(&x).repeat_to(out.len()).unwrap();
                assert_eq!(back, src, "p={p} n={n}");
            }
        }
    }

    fn arb_seq() -> impl Strategy<Value = CyclicSeq> {
        (2u8..=6).prop_flat_map(|m| prop::collection::vec(0..m, 1..30).prop_map(move |v| CyclicSeq::new(m, v).unwrap()))
    }

    fn arb_blocked() -> impl Strategy<Value = (CyclicSeq, usize, Word)> {
        (2u8..=5, 1usize..6, 1usize..6).prop_flat_map(|(m, b, r)| {
            (prop::collection::vec(0..m, b * r), prop::collection::vec(0..m, b))
                .prop_map(move |(s, y)| (CyclicSeq::new(m, s).unwrap(), b, Word::new(m, y).unwrap()))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn delta_roundtrip((s, b, y) in arb_blocked()) {
            let t = delta_inv(&s, b, &y).unwrap();
            prop_assert_eq!(&t.elems()[..b], y.elems());
            prop_assert_eq!(delta(&t, b).unwrap(), s.repeat_to(t.len()).unwrap());
        }

        #[test]
        fn d_inv_roundtrip(s in arb_seq()) {
            let r = apply_d_inv(&s);
            prop_assert!(!r.sequences.is_empty());
            for t in &r.sequences {
                prop_assert_eq!(apply_d(t), s.repeat_to(t.len()).unwrap());
            }
            let classes: BTreeSet<_> = r.sequences.iter().map(|t| t.elems().to_vec()).collect();
            prop_assert_eq!(classes.len(), r.sequences.len());
        }

        #[test]
        fn d_is_linear(
            (a, b) in (2u8..=6, 1usize..30).prop_flat_map(|(m, n)| {
                let v = move || prop::collection::vec(0..m, n).prop_map(move |v| CyclicSeq::new(m, v).unwrap());
                (v(), v())
            })
        ) {
            let m = a.modulus();
            let sum = |x: &CyclicSeq, y: &CyclicSeq| {
                CyclicSeq::new(m, x.elems().iter().zip(y.elems()).map(|(p, q)| (p + q) % m).collect()).unwrap()
            };
            prop_assert_eq!(apply_d(&sum(&a, &b)), sum(&apply_d(&a), &apply_d(&b)));
            prop_assert_eq!(apply_d(&shift(&a, 1)), shift(&apply_d(&a), 1));
        }

        #[test]
        fn d_inv_pow_roundtrip(s in arb_seq(), leads in prop::collection::vec(0u8..6, 1..4)) {
            let m = s.modulus();
            let leads: Vec<u8> = leads.into_iter().map(|v| v % m).collect();
            let t = apply_d_inv_pow_with(&s, &leads);
            prop_assert_eq!(apply_d_pow(&t, leads.len()), s.repeat_to(t.len()).unwrap());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn general_recursion_specializes(
            n in 1u32..3,
            seed in prop::collection::vec(0u8..15, 4 * 9),
        ) {
            let len = 3usize.pow(n - 1);
            let take = |k: usize, p: u8| Word::new(p, seed[k * 9..k * 9 + len].iter().map(|v| v % p).collect()).unwrap();
            let mut z = take(0, 3).elems().to_vec();
            z[0] = 0;
            let z = Word::new(3, z).unwrap();
            let (x, y) = (take(1, 3), take(2, 3));
            prop_assert_eq!(general_p_recursion(3, &x, &z, std::slice::from_ref(&y)).unwrap(), z3_recursion(&x, &z, &y).unwrap());

            let len5 = 5usize.pow(n - 1).min(9);
            let take5 = |k: usize| Word::new(5, seed[k * 9..k * 9 + len5].iter().map(|v| v % 5).collect()).unwrap();
            let mut z5 = take5(0).elems().to_vec();
            z5[0] = 0;
            let z5 = Word::new(5, z5).unwrap();
            let (x5, y1, y2, y3) = (take5(1), take5(2), take5(3), take5(1));
            prop_assert_eq!(
                general_p_recursion(5, &x5, &z5, &[y1.clone(), y2.clone(), y3.clone()]).unwrap(),
                z5_recursion(&x5, &z5, &y1, &y2, &y3).unwrap()
            );
        }
    }
}
