//! Exact uniform random generation for the two classes whose growth grammars
//! reduce to a single slot-counting recurrence: the fan class
//! `Av(4123,1324,3124,1423)` and the flag class `Av(4123,1243,1423)`.
//!
//! Members grow by repeatedly adding a new left-to-right minimum together
//! with a block of elements on the far right. The number of *slots* (gaps to
//! the right of the current minimum where the next minimum may land) is the
//! catalytic statistic: a table `c[n][k]` counts weighted construction traces
//! of total size `n` ending with `k` slots. A step that keeps `j` of the old
//! slots and adds a block of size `s` moves `(n, k) -> (n + s, j + s)`.
//!
//! Sampling is unranking: one exact uniform integer below the class count
//! selects a trace, which is then realized geometrically. No floating point
//! is involved anywhere, so the distribution is exactly uniform.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::catalog::EntryId;
use crate::perm::{PatternBasis, Permutation};

/// Which construction grammar to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassId {
    /// `Av(4123,1324,3124,1423)`: an initial block (minimum plus an
    /// `Av(213,312)` part above it), then fans whose non-minimum elements
    /// descend on the far right.
    Fan,
    /// `Av(4123,1243,1423)`: source flags, each a new minimum plus far-right
    /// elements each continuing either a descent just above the minimum or
    /// an ascent above everything, the first one forced low.
    Flag,
}

impl ClassId {
    pub fn basis(self) -> PatternBasis {
        let list = match self {
            ClassId::Fan => "4123,1324,3124,1423",
            ClassId::Flag => "4123,1243,1423",
        };
        PatternBasis::parse(list).expect("class basis parses")
    }

    /// The catalog entry whose coefficients the DP marginals must reproduce.
    pub fn catalog_id(self) -> EntryId {
        match self {
            ClassId::Fan => EntryId::A,
            ClassId::Flag => EntryId::J,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassId::Fan => "fan",
            ClassId::Flag => "flag",
        }
    }

    pub fn parse(s: &str) -> Option<ClassId> {
        match s.to_ascii_lowercase().as_str() {
            "fan" => Some(ClassId::Fan),
            "flag" => Some(ClassId::Flag),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SamplerError {
    /// No class member of the requested length exists.
    ZeroCount { n: usize },
    /// The DP table was built for a smaller maximum length.
    LengthAboveTable { n: usize, n_max: usize },
    /// A construction trace violates the slot algebra or weight shape.
    InvalidTrace(&'static str),
    /// A realized permutation failed its class membership check.
    Membership,
}

impl fmt::Display for SamplerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplerError::ZeroCount { n } => write!(f, "no class member of length {n}"),
            SamplerError::LengthAboveTable { n, n_max } => {
                write!(f, "length {n} above table bound {n_max}")
            }
            SamplerError::InvalidTrace(why) => write!(f, "invalid construction trace: {why}"),
            SamplerError::Membership => write!(f, "realized permutation left the class"),
        }
    }
}

/// One growth step: keep `slots_kept` of the previous slots to the right of
/// the new minimum, add a block of `size` elements (the minimum included).
/// For flag steps, `high_choices[i]` says whether the `(i+2)`-nd block
/// element ascends above everything (`true`) or continues the descent just
/// above the minimum (`false`); the first non-minimum element is always low
/// and fan blocks are all-low, so neither carries bits here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthStep {
    pub slots_kept: usize,
    pub size: usize,
    pub high_choices: Vec<bool>,
}

/// A complete construction history for one permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub class: ClassId,
    /// Size of the fan-class initial block (0 for the flag class, which
    /// starts from the empty permutation).
    pub initial_size: usize,
    /// Shape of the `Av(213,312)` part of the fan initial block. Members of
    /// `Av(213,312)` are exactly the unimodal permutations (values rise to a
    /// peak, then fall), so the part is fixed by sending each non-peak value
    /// to one side: bit `v-1` is `true` when relative value `v` sits on the
    /// rising side. The peak has no choice, so this holds
    /// `max(initial_size - 2, 0)` bits.
    pub initial_raises: Vec<bool>,
    pub steps: Vec<GrowthStep>,
}

impl ConstructionTrace {
    pub fn total_size(&self) -> usize {
        self.initial_size + self.steps.iter().map(|s| s.size).sum::<usize>()
    }

    /// Slot count after the initial block, before any steps.
    fn initial_slots(&self) -> usize {
        match self.class {
            ClassId::Fan => self.initial_size,
            ClassId::Flag => 1,
        }
    }

    /// Checks the weight-consistency invariants: bit-vector lengths and the
    /// slot algebra `0 <= slots_kept < k`, `k' = slots_kept + size`.
    pub fn validate(&self) -> Result<(), SamplerError> {
        match self.class {
            ClassId::Fan => {
                if self.initial_raises.len() != self.initial_size.saturating_sub(2) {
                    return Err(SamplerError::InvalidTrace("initial block bit length"));
                }
                if self.initial_size == 0 && !self.steps.is_empty() {
                    return Err(SamplerError::InvalidTrace(
                        "the empty fan start admits no steps",
                    ));
                }
            }
            ClassId::Flag => {
                if self.initial_size != 0 || !self.initial_raises.is_empty() {
                    return Err(SamplerError::InvalidTrace("flag traces start empty"));
                }
            }
        }
        let mut slots = self.initial_slots();
        for step in &self.steps {
            if step.size == 0 {
                return Err(SamplerError::InvalidTrace("empty growth step"));
            }
            if step.slots_kept >= slots {
                return Err(SamplerError::InvalidTrace("slots_kept out of range"));
            }
            let expected_bits = match self.class {
                ClassId::Fan => 0,
                ClassId::Flag => step.size.saturating_sub(2),
            };
            if step.high_choices.len() != expected_bits {
                return Err(SamplerError::InvalidTrace("step bit length"));
            }
            slots = step.slots_kept + step.size;
        }
        Ok(())
    }

    /// All weight-consistent traces of the given total size. Exponential in
    /// `n`; meant for small-scale bijectivity checks.
    pub fn enumerate_all(class: ClassId, n: usize) -> Vec<ConstructionTrace> {
        assert!(n <= 16, "trace enumeration is exponential in n");
        let mut out = Vec::new();
        match class {
            ClassId::Fan => {
                if n == 0 {
                    out.push(ConstructionTrace {
                        class,
                        initial_size: 0,
                        initial_raises: vec![],
                        steps: vec![],
                    });
                    return out;
                }
                for m in 1..=n {
                    let bits = m.saturating_sub(2);
                    for raw in 0..(1u32 << bits) {
                        let trace = ConstructionTrace {
                            class,
                            initial_size: m,
                            initial_raises: bit_vec(raw as u64, bits),
                            steps: vec![],
                        };
                        grow_all(trace, m, m, n, &mut out);
                    }
                }
            }
            ClassId::Flag => {
                let trace = ConstructionTrace {
                    class,
                    initial_size: 0,
                    initial_raises: vec![],
                    steps: vec![],
                };
                grow_all(trace, 0, 1, n, &mut out);
            }
        }
        out
    }
}

fn bit_vec(raw: u64, len: usize) -> Vec<bool> {
    (0..len).map(|i| raw >> i & 1 == 1).collect()
}

fn grow_all(
    trace: ConstructionTrace,
    size: usize,
    slots: usize,
    n: usize,
    out: &mut Vec<ConstructionTrace>,
) {
    if size == n {
        out.push(trace);
        return;
    }
    for s in 1..=n - size {
        let bits = match trace.class {
            ClassId::Fan => 0,
            ClassId::Flag => s.saturating_sub(2),
        };
        for j in 0..slots {
            for raw in 0..(1u64 << bits) {
                let mut next = trace.clone();
                next.steps.push(GrowthStep {
                    slots_kept: j,
                    size: s,
                    high_choices: bit_vec(raw, bits),
                });
                grow_all(next, size + s, j + s, n, out);
            }
        }
    }
}

/// Turns a validated trace into its permutation.
///
/// Values are maintained as ranks `1..=len` and renumbered on every
/// insertion: a new minimum takes value 1, a "low" block element takes value
/// 2 (just above the current minimum, below everything else, descending as
/// the block grows), a "high" element takes the new maximum.
pub fn realize(trace: &ConstructionTrace) -> Result<Permutation, SamplerError> {
    trace.validate()?;
    let mut vals: Vec<u32> = Vec::new();

    if trace.class == ClassId::Fan && trace.initial_size > 0 {
        let m = trace.initial_size as u32;
        // Above the minimum sits a unimodal arrangement of the values
        // 2..=m: rising side, peak (= m), falling side.
        vals.push(1);
        for v in 2..m {
            if trace.initial_raises[v as usize - 2] {
                vals.push(v);
            }
        }
        if m >= 2 {
            vals.push(m);
        }
        for v in (2..m).rev() {
            if !trace.initial_raises[v as usize - 2] {
                vals.push(v);
            }
        }
    }

    for step in &trace.steps {
        let len = vals.len();
        let at = len - step.slots_kept;
        for v in &mut vals {
            *v += 1;
        }
        vals.insert(at, 1);
        for e in 0..step.size - 1 {
            let high = e > 0 && trace.class == ClassId::Flag && step.high_choices[e - 1];
            if high {
                vals.push(vals.len() as u32 + 1);
            } else {
                for v in &mut vals {
                    if *v >= 2 {
                        *v += 1;
                    }
                }
                vals.push(2);
            }
        }
    }

    Ok(Permutation::from_trusted(vals))
}

/// The slot-count dynamic program for one class, up to a fixed length.
pub struct SlotDp {
    class: ClassId,
    n_max: usize,
    counts: Vec<Vec<BigUint>>,
    /// `suffix[n][j] = sum_{k > j} counts[n][k]`
    suffix: Vec<Vec<BigUint>>,
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn seed_weight(class: ClassId, n: usize, k: usize) -> BigUint {
    match class {
        ClassId::Fan => {
            if n == 0 && k == 0 {
                BigUint::one()
            } else if n >= 1 && k == n {
                if n == 1 {
                    BigUint::one()
                } else {
                    pow2(n - 2)
                }
            } else {
                BigUint::zero()
            }
        }
        ClassId::Flag => {
            if n == 0 && k == 1 {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        }
    }
}

fn step_weight(class: ClassId, s: usize) -> BigUint {
    match class {
        ClassId::Fan => BigUint::one(),
        ClassId::Flag => {
            if s == 1 {
                BigUint::one()
            } else {
                pow2(s - 2)
            }
        }
    }
}

impl SlotDp {
    /// Fills the table for all lengths `0..=n_max`.
    pub fn build(class: ClassId, n_max: usize) -> SlotDp {
        let k_max = n_max + 1;
        let mut counts: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        let mut suffix: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = vec![BigUint::zero(); k_max + 1];
            for (k, slot) in row.iter_mut().enumerate() {
                let mut c = seed_weight(class, n, k);
                for s in 1..=n.min(k) {
                    let w = step_weight(class, s);
                    let tail = &suffix[n - s][k - s];
                    if !tail.is_zero() {
                        c += w * tail;
                    }
                }
                *slot = c;
            }
            let mut suf = vec![BigUint::zero(); k_max + 2];
            for j in (0..=k_max).rev() {
                suf[j] = &suf[j + 1] + &row[j];
            }
            // suffix[n][j] excludes k = j itself
            let suf = (0..=k_max + 1)
                .map(|j| {
                    if j <= k_max {
                        suf[j + 1].clone()
                    } else {
                        BigUint::zero()
                    }
                })
                .collect();
            counts.push(row);
            suffix.push(suf);
        }
        SlotDp {
            class,
            n_max,
            counts,
            suffix,
        }
    }

    pub fn class(&self) -> ClassId {
        self.class
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// The number of weighted traces of total size `n` with `k` slots.
    pub fn count(&self, n: usize, k: usize) -> BigUint {
        if n > self.n_max || k >= self.counts[n].len() {
            return BigUint::zero();
        }
        self.counts[n][k].clone()
    }

    /// Total number of class members of length `n`.
    pub fn marginal(&self, n: usize) -> BigUint {
        assert!(n <= self.n_max);
        self.counts[n].iter().sum()
    }

    /// Draws a uniformly random construction trace of total size `n`.
    pub fn sample_trace<R: RngCore>(
        &self,
        n: usize,
        rng: &mut R,
    ) -> Result<ConstructionTrace, SamplerError> {
        if n > self.n_max {
            return Err(SamplerError::LengthAboveTable {
                n,
                n_max: self.n_max,
            });
        }
        let total = self.marginal(n);
        if total.is_zero() {
            return Err(SamplerError::ZeroCount { n });
        }
        let mut rem = uniform_below(&total, rng);
        let mut k = 0usize;
        while rem >= self.counts[n][k] {
            rem -= &self.counts[n][k];
            k += 1;
        }
        self.unrank(n, k, rem)
    }

    /// Deterministic unranking of the `rank`-th trace at state `(n, k)`.
    /// Ordering: the seed first, then steps by size, config index, and
    /// predecessor slot count.
    fn unrank(
        &self,
        mut n: usize,
        mut k: usize,
        mut rank: BigUint,
    ) -> Result<ConstructionTrace, SamplerError> {
        debug_assert!(rank < self.counts[n][k]);
        let mut steps_rev: Vec<GrowthStep> = Vec::new();
        'walk: loop {
            let seed = seed_weight(self.class, n, k);
            if rank < seed {
                let (initial_size, initial_raises) = match self.class {
                    ClassId::Fan => {
                        let bits = n.saturating_sub(2);
                        (n, biguint_bits(&rank, bits))
                    }
                    ClassId::Flag => (0, vec![]),
                };
                let mut steps = steps_rev;
                steps.reverse();
                let trace = ConstructionTrace {
                    class: self.class,
                    initial_size,
                    initial_raises,
                    steps,
                };
                trace.validate()?;
                return Ok(trace);
            }
            rank -= seed;
            for s in 1..=n.min(k) {
                let w = step_weight(self.class, s);
                let tail = &self.suffix[n - s][k - s];
                let block = &w * tail;
                if rank < block {
                    let config_index = &rank / tail;
                    rank %= tail;
                    let bits = match self.class {
                        ClassId::Fan => 0,
                        ClassId::Flag => s.saturating_sub(2),
                    };
                    let mut kp = k - s + 1;
                    while rank >= self.counts[n - s][kp] {
                        rank -= &self.counts[n - s][kp];
                        kp += 1;
                    }
                    steps_rev.push(GrowthStep {
                        slots_kept: k - s,
                        size: s,
                        high_choices: biguint_bits(&config_index, bits),
                    });
                    n -= s;
                    k = kp;
                    continue 'walk;
                }
                rank -= block;
            }
            unreachable!("rank below c[n][k] must select a seed or a step");
        }
    }

    /// Draws a uniformly random class member of length `n` and asserts its
    /// membership before returning it.
    pub fn sample<R: RngCore>(&self, n: usize, rng: &mut R) -> Result<Permutation, SamplerError> {
        let trace = self.sample_trace(n, rng)?;
        let perm = realize(&trace)?;
        debug_assert_eq!(perm.len(), n);
        if !perm.avoids_all(&self.class.basis()) {
            return Err(SamplerError::Membership);
        }
        Ok(perm)
    }
}

fn biguint_bits(x: &BigUint, len: usize) -> Vec<bool> {
    (0..len).map(|i| x.bit(i as u64)).collect()
}

/// The deterministic generator used for reproducible sampling: a ChaCha
/// stream cipher with 8 rounds, keyed from the seed. Identical seeds yield
/// identical samples on every platform.
pub fn seeded_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand_core::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Exact uniform index below `bound`, by rejection above the largest
/// multiple of `bound` so there is no modulo bias. For picking uniformly
/// from materialized lists (enumeration-backed sampling).
pub fn uniform_index<R: RngCore>(bound: usize, rng: &mut R) -> usize {
    assert!(bound > 0);
    let bound = bound as u64;
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % bound) as usize;
        }
    }
}

/// Exact uniform draw from `[0, bound)` by rejection on `bound.bits()`-bit
/// strings.
fn uniform_below<R: RngCore>(bound: &BigUint, rng: &mut R) -> BigUint {
    debug_assert!(!bound.is_zero());
    if bound == &BigUint::one() {
        return BigUint::zero();
    }
    let bits = bound.bits();
    let nbytes = bits.div_ceil(8) as usize;
    let top_mask = if bits.is_multiple_of(8) {
        0xffu8
    } else {
        (1u8 << (bits % 8)) - 1
    };
    let mut buf = vec![0u8; nbytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[nbytes - 1] &= top_mask;
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, CountQuery};
    use std::collections::BTreeSet;

    #[test]
    fn fan_marginals_start_like_central_binomials() {
        let dp = SlotDp::build(ClassId::Fan, 8);
        let m: Vec<u64> = (0..=8)
            .map(|n| u64::try_from(dp.marginal(n)).unwrap())
            .collect();
        assert_eq!(m, vec![1, 1, 2, 6, 20, 70, 252, 924, 3432]);
    }

    #[test]
    fn flag_marginals_start_like_the_grid_class() {
        let dp = SlotDp::build(ClassId::Flag, 8);
        let m: Vec<u64> = (0..=8)
            .map(|n| u64::try_from(dp.marginal(n)).unwrap())
            .collect();
        assert_eq!(m, vec![1, 1, 2, 6, 21, 79, 311, 1265, 5275]);
    }

    #[test]
    fn structural_zeros() {
        let dp = SlotDp::build(ClassId::Flag, 6);
        for n in 0..=6 {
            for k in n + 2..=7 {
                assert!(dp.count(n, k).is_zero(), "c[{n}][{k}] nonzero");
            }
        }
    }

    #[test]
    fn realize_minimal_traces() {
        let one = ConstructionTrace {
            class: ClassId::Fan,
            initial_size: 1,
            initial_raises: vec![],
            steps: vec![],
        };
        assert_eq!(realize(&one).unwrap(), "1".parse().unwrap());

        let empty = ConstructionTrace {
            class: ClassId::Flag,
            initial_size: 0,
            initial_raises: vec![],
            steps: vec![],
        };
        assert_eq!(realize(&empty).unwrap(), Permutation::empty());
    }

    #[test]
    fn invalid_traces_are_rejected() {
        let bad = ConstructionTrace {
            class: ClassId::Flag,
            initial_size: 0,
            initial_raises: vec![],
            steps: vec![GrowthStep {
                slots_kept: 1, // only one slot exists, so keeping 1 is out of range
                size: 1,
                high_choices: vec![],
            }],
        };
        assert!(matches!(realize(&bad), Err(SamplerError::InvalidTrace(_))));
    }

    #[test]
    fn traces_realize_bijectively_small() {
        for class in [ClassId::Fan, ClassId::Flag] {
            let basis = class.basis();
            for n in 0..=6 {
                let traces = ConstructionTrace::enumerate_all(class, n);
                let expected =
                    oracle::enumerate(&CountQuery::new(basis.clone(), n), 1 << 20).unwrap();
                assert_eq!(
                    traces.len(),
                    expected.len(),
                    "{} trace count at n={n}",
                    class.name()
                );
                let realized: BTreeSet<Permutation> =
                    traces.iter().map(|t| realize(t).unwrap()).collect();
                assert_eq!(realized.len(), traces.len(), "collision at n={n}");
                let class_set: BTreeSet<Permutation> = expected.into_iter().collect();
                assert_eq!(realized, class_set, "{} set at n={n}", class.name());
            }
        }
    }

    #[test]
    fn dp_and_trace_enumeration_agree() {
        for class in [ClassId::Fan, ClassId::Flag] {
            let dp = SlotDp::build(class, 7);
            for n in 0..=7 {
                let by_enum = ConstructionTrace::enumerate_all(class, n).len();
                assert_eq!(BigUint::from(by_enum), dp.marginal(n));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_members() {
        for class in [ClassId::Fan, ClassId::Flag] {
            let dp = SlotDp::build(class, 30);
            let mut r1 = seeded_rng(42);
            let mut r2 = seeded_rng(42);
            for n in [1, 2, 7, 30] {
                let a = dp.sample(n, &mut r1).unwrap();
                let b = dp.sample(n, &mut r2).unwrap();
                assert_eq!(a, b);
                assert_eq!(a.len(), n);
            }
        }
    }

    #[test]
    fn fan_length_one_is_forced() {
        let dp = SlotDp::build(ClassId::Fan, 1);
        let mut rng = seeded_rng(0);
        assert_eq!(dp.sample(1, &mut rng).unwrap(), "1".parse().unwrap());
    }

    #[test]
    fn flag_length_two_is_a_coin_flip() {
        let dp = SlotDp::build(ClassId::Flag, 2);
        let mut rng = seeded_rng(7);
        let mut seen = BTreeSet::new();
        for _ in 0..64 {
            seen.insert(dp.sample(2, &mut rng).unwrap());
        }
        let twelve: Permutation = "12".parse().unwrap();
        let twenty_one: Permutation = "21".parse().unwrap();
        assert_eq!(seen, BTreeSet::from([twelve, twenty_one]));
    }

    #[test]
    fn unranking_covers_every_trace() {
        // Walking ranks 0..marginal must reproduce the full trace set.
        let dp = SlotDp::build(ClassId::Flag, 5);
        let n = 5;
        let total = u64::try_from(dp.marginal(n)).unwrap();
        let mut perms = BTreeSet::new();
        for rank in 0..total {
            let mut rem = BigUint::from(rank);
            let mut k = 0usize;
            while rem >= dp.counts[n][k] {
                rem -= &dp.counts[n][k];
                k += 1;
            }
            let trace = dp.unrank(n, k, rem).unwrap();
            assert_eq!(trace.total_size(), n);
            perms.insert(realize(&trace).unwrap());
        }
        assert_eq!(perms.len(), total as usize);
    }
}
