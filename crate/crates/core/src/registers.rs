//! Feedback shift registers over Z_m, their cycle structure, and the closed-form
//! cycle counts checked against simulation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{checked_pow, divisors, extended_gcd, gcd, is_prime, mobius, phi};
use crate::error::{Error, Result};
use crate::operators::apply_d_pow;
use crate::zmseq::{canonical, enumerate_sds, for_each_word, CyclicSeq};

/// Upper bound on the number of register states simulated.
pub const STATE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feedback {
    /// x_1 + r with gcd(r, m) = 1.
    Ccr { r: u8 },
    /// Feedback value for every state, indexed with x_1 as the most significant digit.
    Table(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterSpec {
    order: usize,
    modulus: u8,
    feedback: Feedback,
}

impl RegisterSpec {
    /// The m-CCR of order n with feedback x_1 + 1.
    pub fn ccr(modulus: u8, order: usize) -> Result<Self> {
        Self::ccr_with(modulus, order, 1)
    }

    pub fn ccr_with(modulus: u8, order: usize, r: u8) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus as u32));
        }
        if order == 0 {
            return Err(Error::InvalidParameter("register order must be at least 1".into()));
        }
        if gcd(r as u64, modulus as u64) != 1 {
            return Err(Error::InvalidParameter(format!("feedback constant {r} is not coprime to {modulus}")));
        }
        Ok(RegisterSpec { order, modulus, feedback: Feedback::Ccr { r: r % modulus } })
    }

    /// A register with an explicit feedback table. The state map must be a permutation,
    /// which holds iff the feedback is a bijection in x_1 for every fixed x_2..x_n.
    pub fn with_table(modulus: u8, order: usize, table: Vec<u8>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus as u32));
        }
        if order == 0 {
            return Err(Error::InvalidParameter("register order must be at least 1".into()));
        }
        let states = state_count(modulus, order)?;
        if table.len() != states {
            return Err(Error::LengthMismatch { left: table.len(), right: states });
        }
        if let Some((index, &v)) = table.iter().enumerate().find(|(_, &v)| v >= modulus) {
            return Err(Error::ElementOutOfRange { index, value: v as u32, modulus });
        }
        let tail = states / modulus as usize;
        for rest in 0..tail {
            let mut seen = vec![false; modulus as usize];
            for x1 in 0..modulus as usize {
                let v = table[x1 * tail + rest] as usize;
                if seen[v] {
                    return Err(Error::NotPermutation);
                }
                seen[v] = true;
            }
        }
        Ok(RegisterSpec { order, modulus, feedback: Feedback::Table(table) })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn feedback(&self) -> &Feedback {
        &self.feedback
    }
}

fn state_count(m: u8, n: usize) -> Result<usize> {
    let size = checked_pow(m as u64, n as u64).unwrap_or(u128::MAX);
    if size > STATE_LIMIT {
        return Err(Error::GuardExceeded { size, limit: STATE_LIMIT });
    }
    Ok(size as usize)
}

/// Walks every cycle of the state map, passing the x_1 stream of each cycle to `f`.
fn walk_cycles(spec: &RegisterSpec, mut f: impl FnMut(&[u8])) -> Result<()> {
    let m = spec.modulus as usize;
    let states = state_count(spec.modulus, spec.order)?;
    let tail = states / m;
    let feedback = |s: usize| -> usize {
        match &spec.feedback {
            Feedback::Ccr { r } => (s / tail + *r as usize) % m,
            Feedback::Table(t) => t[s] as usize,
        }
    };
    let mut visited = vec![false; states];
    let mut stream = Vec::new();
    for start in 0..states {
        if visited[start] {
            continue;
        }
        stream.clear();
        let mut s = start;
        while !visited[s] {
            visited[s] = true;
            stream.push((s / tail) as u8);
            s = (s % tail) * m + feedback(s);
        }
        if s != start {
            // only possible for a non-injective map, which the constructors reject
            return Err(Error::NotPermutation);
        }
        f(&stream);
    }
    Ok(())
}

/// All cycles of the register as canonical sequences, one per cycle.
pub fn fsr_cycles(spec: &RegisterSpec) -> Result<BTreeSet<CyclicSeq>> {
    let mut out = BTreeSet::new();
    walk_cycles(spec, |c| {
        out.insert(canonical(&CyclicSeq::new_unchecked(spec.modulus, c.to_vec())));
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountSource {
    Formula,
    Brute,
}

impl fmt::Display for CountSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountSource::Formula => "formula",
            CountSource::Brute => "brute",
        })
    }
}

/// Cycle counts bucketed by period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub modulus: u8,
    pub order: usize,
    pub total: BigUint,
    pub by_period: BTreeMap<u64, BigUint>,
    pub source: CountSource,
}

impl CountReport {
    fn from_buckets(modulus: u8, order: usize, by_period: BTreeMap<u64, BigUint>, source: CountSource) -> Self {
        let total = by_period.values().sum();
        CountReport { modulus, order, total, by_period, source }
    }

    /// Same counts, ignoring where they came from.
    pub fn same_counts(&self, other: &CountReport) -> bool {
        self.modulus == other.modulus
            && self.order == other.order
            && self.total == other.total
            && self.by_period == other.by_period
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} n={} total={} periods={{", self.modulus, self.order, self.total)?;
        for (i, (d, c)) in self.by_period.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}} source={}", self.source)
    }
}

impl FromStr for CountReport {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 1, msg: msg.to_string() };
        let mut fields = BTreeMap::new();
        for part in s.split_whitespace() {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(&format!("missing {k}")));
        let modulus: u8 = get("m")?.parse().map_err(|_| bad("bad m"))?;
        let order: usize = get("n")?.parse().map_err(|_| bad("bad n"))?;
        let total: BigUint = get("total")?.parse().map_err(|_| bad("bad total"))?;
        let periods = get("periods")?
            .strip_prefix('{')
            .and_then(|p| p.strip_suffix('}'))
            .ok_or_else(|| bad("periods must be braced"))?;
        let mut by_period = BTreeMap::new();
        for item in periods.split(',').filter(|i| !i.is_empty()) {
            let (d, c) = item.split_once(':').ok_or_else(|| bad("bad period entry"))?;
            let d: u64 = d.parse().map_err(|_| bad("bad period"))?;
            let c: BigUint = c.parse().map_err(|_| bad("bad count"))?;
            by_period.insert(d, c);
        }
        let source = match get("source")? {
            "formula" => CountSource::Formula,
            "brute" => CountSource::Brute,
            _ => return Err(bad("source must be formula or brute")),
        };
        let report = CountReport { modulus, order, total, by_period, source };
        if report.by_period.values().sum::<BigUint>() != report.total {
            return Err(bad("period counts do not sum to total"));
        }
        Ok(report)
    }
}

/// Cycle counts by period from simulation.
pub fn cycle_structure(spec: &RegisterSpec) -> Result<CountReport> {
    let mut by_period: BTreeMap<u64, BigUint> = BTreeMap::new();
    walk_cycles(spec, |c| {
        *by_period.entry(c.len() as u64).or_default() += 1u32;
    })?;
    Ok(CountReport::from_buckets(spec.modulus, spec.order, by_period, CountSource::Brute))
}

fn big_pow(m: u64, e: u64) -> BigUint {
    BigUint::from(m).pow(e as u32)
}

/// Number of cycles of the binary CCR of order n.
pub fn count_ccr_formula(n: usize) -> BigUint {
    count_mccr_formula(2, n)
}

/// Number of cycles of the m-CCR of order n, (1/mn) Σ φ(d) m^(n/d) over
/// divisors d of n coprime to m.
pub fn count_mccr_formula(m: u8, n: usize) -> BigUint {
    let (m64, n64) = (m as u64, n as u64);
    let mut acc = BigUint::zero();
    for d in divisors(n64) {
        if gcd(d, m64) == 1 {
            acc += big_pow(m64, n64 / d) * phi(d);
        }
    }
    let denom = BigUint::from(m64 * n64);
    debug_assert!((&acc % &denom).is_zero());
    acc / denom
}

/// The same sum restricted to divisors d ≡ 1 (mod m). Returns `None` when the
/// result is not an integer. Agrees with [`count_mccr_formula`] for m = 2.
pub fn count_mccr_unit_residue(m: u8, n: usize) -> Option<BigUint> {
    let (m64, n64) = (m as u64, n as u64);
    let mut acc = BigUint::zero();
    for d in divisors(n64) {
        if d % m64 == 1 % m64 {
            acc += big_pow(m64, n64 / d) * phi(d);
        }
    }
    let denom = BigUint::from(m64 * n64);
    (&acc % &denom).is_zero().then(|| acc / denom)
}

/// Number of m-CCR_n states lying on cycles whose length divides q.
///
/// Such a state starts a sequence with s_{i+n} = s_i + 1 and s_{i+q} = s_i. With
/// g = gcd(n, q) = a·n + b·q, shifting by g adds a, so the sequence is fixed by its
/// first g entries and consistent iff (n/g)·a ≡ 1 and (q/g)·a ≡ 0 (mod m).
fn mccr_fixed_states(m: u64, n: u64, q: u64) -> BigUint {
    let (g, a, _) = extended_gcd(n as i64, q as i64);
    let g = g as u64;
    let m_i = m as i64;
    let a = a.rem_euclid(m_i);
    let ok = ((n / g) as i64 * a - 1).rem_euclid(m_i) == 0 && ((q / g) as i64 * a).rem_euclid(m_i) == 0;
    if ok {
        big_pow(m, g)
    } else {
        BigUint::zero()
    }
}

/// Closed-form m-CCR_n cycle counts by period, by Möbius inversion over cycle lengths.
pub fn count_mccr_by_period(m: u8, n: usize) -> CountReport {
    let (m64, n64) = (m as u64, n as u64);
    let mut by_period = BTreeMap::new();
    for q in divisors(m64 * n64) {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for d in divisors(q) {
            match mobius(q / d) {
                1 => plus += mccr_fixed_states(m64, n64, d),
                -1 => minus += mccr_fixed_states(m64, n64, d),
                _ => {}
            }
        }
        let exact = plus - minus;
        if !exact.is_zero() {
            debug_assert!((&exact % q).is_zero());
            by_period.insert(q, exact / q);
        }
    }
    CountReport::from_buckets(m, n, by_period, CountSource::Formula)
}

/// Number of SDS classes of period exactly n over Z_m.
pub fn sd_count(m: u8, n: usize) -> Result<u64> {
    Ok(enumerate_sds(m, n)?.len() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: usize,
    pub cycles: u64,
    pub formula: BigUint,
    pub terms: Vec<(u64, u64)>,
    pub sum: u64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.cycles == self.sum && BigUint::from(self.cycles) == self.formula
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} cycles={} formula={}", self.n, self.cycles, self.formula)?;
        let terms: Vec<String> = self.terms.iter().map(|(d, c)| format!("SD({d})={c}")).collect();
        writeln!(f, "sum={} terms=[{}]", self.sum, terms.join(", "))?;
        write!(f, "identity: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn count_cycles(spec: &RegisterSpec) -> Result<u64> {
    let mut c = 0u64;
    walk_cycles(spec, |_| c += 1)?;
    Ok(c)
}

/// Compares the CCR_n cycle count with Σ SD(d) over d | 2n, d ∤ n.
pub fn verify_count_identity(n: usize) -> Result<IdentityReport> {
    let cycles = count_cycles(&RegisterSpec::ccr(2, n)?)?;
    let n64 = n as u64;
    let mut terms = Vec::new();
    for d in divisors(2 * n64) {
        if !n64.is_multiple_of(d) {
            terms.push((d, sd_count(2, d as usize)?));
        }
    }
    let sum = terms.iter().map(|t| t.1).sum();
    Ok(IdentityReport { n, cycles, formula: count_ccr_formula(n), terms, sum })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccrIdentityReport {
    pub modulus: u8,
    pub n: usize,
    pub cycles: u64,
    /// Divisors d | mn, d ∤ n, m | d and d | n − d/m.
    pub stated_terms: Vec<(u64, u64)>,
    /// Divisors d | mn, d ∤ n.
    pub plain_terms: Vec<(u64, u64)>,
}

impl MccrIdentityReport {
    pub fn stated_sum(&self) -> u64 {
        self.stated_terms.iter().map(|t| t.1).sum()
    }

    pub fn plain_sum(&self) -> u64 {
        self.plain_terms.iter().map(|t| t.1).sum()
    }

    pub fn stated_matches(&self) -> bool {
        self.stated_sum() == self.cycles
    }

    pub fn plain_matches(&self) -> bool {
        self.plain_sum() == self.cycles
    }
}

impl fmt::Display for MccrIdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |t: &[(u64, u64)]| {
            t.iter().map(|(d, c)| format!("SD_{}({d})={c}", self.modulus)).collect::<Vec<_>>().join(", ")
        };
        writeln!(f, "m={} n={} cycles={}", self.modulus, self.n, self.cycles)?;
        writeln!(
            f,
            "stated set: sum={} terms=[{}] {}",
            self.stated_sum(),
            show(&self.stated_terms),
            if self.stated_matches() { "MATCH" } else { "MISMATCH" }
        )?;
        write!(
            f,
            "plain set: sum={} terms=[{}] {}",
            self.plain_sum(),
            show(&self.plain_terms),
            if self.plain_matches() { "MATCH" } else { "MISMATCH" }
        )
    }
}

/// Evaluates both readings of the m-CCR divisor-sum identity against simulation.
pub fn verify_mccr_identity(m: u8, n: usize) -> Result<MccrIdentityReport> {
    let cycles = count_cycles(&RegisterSpec::ccr(m, n)?)?;
    let (m64, n64) = (m as u64, n as u64);
    let mut stated_terms = Vec::new();
    let mut plain_terms = Vec::new();
    for d in divisors(m64 * n64) {
        if n64 % d == 0 {
            continue;
        }
        let c = sd_count(m, d as usize)?;
        plain_terms.push((d, c));
        if d % m64 == 0 && (n64 - d / m64) % d == 0 {
            stated_terms.push((d, c));
        }
    }
    Ok(MccrIdentityReport { modulus: m, n, cycles, stated_terms, plain_terms })
}

/// Closed-form cycle counts of CCR_n for n = 2^i·p by period: periods 2^(i+1) and 2^(i+1)·p.
pub fn count_ccr_by_period(i: u32, p: u64) -> Result<CountReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if i > 20 {
        return Err(Error::InvalidParameter("i must be at most 20".into()));
    }
    let two_i = 1u64 << i;
    let n = two_i * p;
    let short = BigUint::one() << (two_i - i as u64 - 1) as usize;
    let long = ((BigUint::one() << (two_i * p) as usize) - (BigUint::one() << two_i as usize)) / (2 * n);
    let mut by_period = BTreeMap::new();
    by_period.insert(2 * two_i, short);
    by_period.insert(2 * n, long);
    let n_usize = usize::try_from(n).map_err(|_| Error::InvalidParameter("order too large".into()))?;
    Ok(CountReport::from_buckets(2, n_usize, by_period, CountSource::Formula))
}

/// Binary sequences of length 2^(k+1) annihilated by D^(2^k + 1) but not by D^(2^k),
/// as canonical classes.
pub fn kernel_poly_cycles(n_exp: u32) -> Result<BTreeSet<CyclicSeq>> {
    let len = 1usize << (n_exp + 1).min(31);
    if n_exp > 3 {
        return Err(Error::GuardExceeded { size: len as u128, limit: 24 });
    }
    let lo = 1usize << n_exp;
    let mut out = BTreeSet::new();
    for_each_word(2, len, |w| {
        let s = CyclicSeq::new_unchecked(2, w.to_vec());
        let below = apply_d_pow(&s, lo);
        let is_zero = |t: &CyclicSeq| t.elems().iter().all(|&v| v == 0);
        if !is_zero(&below) && is_zero(&apply_d_pow(&below, 1)) {
            out.insert(canonical(&s));
        }
    });
    Ok(out)
}

/// Converts a count known to be small into a `u64`.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmseq::{is_self_dual, period};

    fn seq(m: u8, d: &str) -> CyclicSeq {
        CyclicSeq::from_digits(m, d).unwrap()
    }

    #[test]
    fn ccr3_cycles() {
        let cycles: Vec<_> = fsr_cycles(&RegisterSpec::ccr(2, 3).unwrap()).unwrap().into_iter().collect();
        assert_eq!(cycles, vec![seq(2, "01"), seq(2, "000111")]);
        let one: Vec<_> = fsr_cycles(&RegisterSpec::ccr(2, 1).unwrap()).unwrap().into_iter().collect();
        assert_eq!(one, vec![seq(2, "01")]);
    }

    #[test]
    fn mccr_3_3() {
        let cycles = fsr_cycles(&RegisterSpec::ccr(3, 3).unwrap()).unwrap();
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.len() == 9));
    }

    #[test]
    fn mccr_3_2_has_a_reversed_cycle() {
        let cycles: Vec<_> = fsr_cycles(&RegisterSpec::ccr(3, 2).unwrap()).unwrap().into_iter().collect();
        assert_eq!(cycles, vec![seq(3, "021"), seq(3, "001122")]);
    }

    #[test]
    fn formulas() {
        assert_eq!(count_ccr_formula(3), 2u32.into());
        assert_eq!(count_ccr_formula(6), 6u32.into());
        assert_eq!(count_ccr_formula(5), 4u32.into());
        assert_eq!(count_mccr_formula(3, 3), 3u32.into());
        assert_eq!(count_mccr_formula(3, 9), 729u32.into());
        assert_eq!(count_mccr_formula(3, 2), 2u32.into());
        for n in 1..30 {
            assert_eq!(count_mccr_formula(2, n), count_ccr_formula(n));
            assert_eq!(count_mccr_unit_residue(2, n), Some(count_ccr_formula(n)));
        }
        assert_eq!(count_mccr_unit_residue(3, 2), None);
        assert_eq!(count_mccr_unit_residue(3, 4), None);
        assert_eq!(count_mccr_unit_residue(3, 9), Some(729u32.into()));
    }

    /// Oracle: count orbits of the state map by direct iteration of tuples, without
    /// the index arithmetic used by `walk_cycles`.
    fn oracle_cycle_count(m: u8, n: usize) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for_each_word(m, n, |w| {
            if seen.contains(w) {
                return;
            }
            count += 1;
            let mut s = w.to_vec();
            while seen.insert(s.clone()) {
                let f = (s[0] + 1) % m;
                s.remove(0);
                s.push(f);
            }
        });
        count
    }

    #[test]
    fn formula_against_oracle() {
        for (m, n) in [(2, 1), (2, 4), (2, 7), (2, 9), (3, 2), (3, 4), (3, 6), (4, 4), (5, 3), (6, 4)] {
            let brute = oracle_cycle_count(m, n);
            assert_eq!(count_mccr_formula(m, n), BigUint::from(brute), "m={m} n={n}");
            assert_eq!(fsr_cycles(&RegisterSpec::ccr(m, n).unwrap()).unwrap().len(), brute);
        }
    }

    #[test]
    fn cycles_are_self_dual_with_expected_periods() {
        for (m, n) in [(2, 6), (2, 8), (3, 3), (3, 4), (4, 3), (5, 2)] {
            let cycles = fsr_cycles(&RegisterSpec::ccr(m, n).unwrap()).unwrap();
            let states: usize = cycles.iter().map(|c| c.len()).sum();
            assert_eq!(states, (m as usize).pow(n as u32));
            for c in cycles {
                assert!(is_self_dual(&c));
                assert_eq!(period(&c), c.len());
                assert_eq!((m as usize * n) % c.len(), 0);
                assert_ne!(n % c.len(), 0);
            }
        }
    }

    #[test]
    fn feedback_constant_and_table() {
        assert!(RegisterSpec::ccr_with(4, 3, 2).is_err());
        let a = cycle_structure(&RegisterSpec::ccr_with(5, 3, 2).unwrap()).unwrap();
        assert_eq!(a.total, count_mccr_formula(5, 3));
        // the CCR written out as a table
        let table: Vec<u8> = (0..27).map(|s| ((s / 9 + 1) % 3) as u8).collect();
        let spec = RegisterSpec::with_table(3, 3, table).unwrap();
        assert_eq!(fsr_cycles(&spec).unwrap(), fsr_cycles(&RegisterSpec::ccr(3, 3).unwrap()).unwrap());
        // x_1 ignored: not a permutation
        let flat: Vec<u8> = vec![0; 8];
        assert_eq!(RegisterSpec::with_table(2, 3, flat), Err(Error::NotPermutation));
        // pure cycling register
        let pcr: Vec<u8> = (0..8).map(|s| (s / 4) as u8).collect();
        let spec = RegisterSpec::with_table(2, 3, pcr).unwrap();
        assert_eq!(fsr_cycles(&spec).unwrap().len(), 4);
    }

    #[test]
    fn period_formula_matches_simulation() {
        for (m, n) in [(2, 1), (2, 3), (2, 6), (2, 12), (2, 15), (3, 2), (3, 4), (3, 6), (4, 4), (4, 6), (5, 4), (6, 5)]
        {
            let f = count_mccr_by_period(m, n);
            let b = cycle_structure(&RegisterSpec::ccr(m, n).unwrap()).unwrap();
            assert!(f.same_counts(&b), "m={m} n={n}: {f} vs {b}");
            assert_eq!(f.total, count_mccr_formula(m, n));
        }
    }

    #[test]
    fn state_guard() {
        let spec = RegisterSpec::ccr(2, 30).unwrap();
        assert!(matches!(fsr_cycles(&spec), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn sd_counts() {
        assert_eq!(sd_count(2, 4).unwrap(), 1);
        assert_eq!(sd_count(2, 6).unwrap(), 1);
        assert_eq!(sd_count(2, 3).unwrap(), 0);
        assert_eq!(sd_count(2, 12).unwrap(), 5);
    }

    #[test]
    fn lemma_identity_small() {
        for n in [1, 3, 6] {
            let r = verify_count_identity(n).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert_eq!(verify_count_identity(6).unwrap().terms, vec![(4, 1), (12, 5)]);
    }

    #[test]
    fn mccr_identity_readings() {
        let r = verify_mccr_identity(3, 3).unwrap();
        assert_eq!(r.cycles, 3);
        assert_eq!(r.stated_terms, vec![(9, 3)]);
        assert!(r.stated_matches());
        let r = verify_mccr_identity(3, 2).unwrap();
        assert_eq!(r.cycles, 2);
        let r2 = verify_mccr_identity(2, 3).unwrap();
        assert!(r2.plain_matches());
    }

    #[test]
    fn by_period_formula() {
        let r = count_ccr_by_period(1, 3).unwrap();
        assert_eq!(r.to_string(), "m=2 n=6 total=6 periods={4:1,12:5} source=formula");
        let r = count_ccr_by_period(2, 3).unwrap();
        assert_eq!(r.to_string(), "m=2 n=12 total=172 periods={8:2,24:170} source=formula");
        let r = count_ccr_by_period(1, 5).unwrap();
        assert_eq!(r.to_string(), "m=2 n=10 total=52 periods={4:1,20:51} source=formula");
        assert!(count_ccr_by_period(1, 4).is_err());
        let big = count_ccr_by_period(4, 3).unwrap();
        assert_eq!(big.total, count_ccr_formula(48));
    }

    #[test]
    fn report_text_roundtrip() {
        let r = cycle_structure(&RegisterSpec::ccr(2, 6).unwrap()).unwrap();
        let text = r.to_string();
        assert_eq!(text, "m=2 n=6 total=6 periods={4:1,12:5} source=brute");
        assert_eq!(text.parse::<CountReport>().unwrap(), r);
        assert!("m=2 n=6 total=7 periods={4:1,12:5} source=brute".parse::<CountReport>().is_err());
        assert!("m=2 n=6 total=6 periods=4:1 source=brute".parse::<CountReport>().is_err());
    }

    #[test]
    fn kernels() {
        let k0: Vec<_> = kernel_poly_cycles(0).unwrap().into_iter().collect();
        assert_eq!(k0, vec![seq(2, "01")]);
        let k1: Vec<_> = kernel_poly_cycles(1).unwrap().into_iter().collect();
        assert_eq!(k1, vec![seq(2, "0011")]);
        let k2: Vec<_> = kernel_poly_cycles(2).unwrap().into_iter().collect();
        assert_eq!(k2, vec![seq(2, "00001111"), seq(2, "00101101")]);
        assert!(kernel_poly_cycles(4).is_err());
    }
}
