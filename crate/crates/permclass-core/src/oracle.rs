//! Brute-force ground truth: enumerate or count the permutations of a given
//! length avoiding every basis pattern (optionally refined by mandatory
//! containment), independently of every closed form in the catalog.
//!
//! Permutations are built by appending one relative rank at a time, so a
//! search node is the pattern of a prefix and each permutation is reached
//! exactly once. A prefix that already contains a basis pattern can never
//! lose it, so the subtree is pruned; the incremental check only looks at
//! embeddings that use the newest position.

use alloc::vec::Vec;
use core::fmt;

use crate::perm::{contains_slice, contains_slice_ending_at_last, PatternBasis, Permutation};

/// What to enumerate: length-`n` members of `Av(basis)` containing every
/// pattern of `must_contain`.
#[derive(Clone, Debug)]
pub struct CountQuery {
    pub basis: PatternBasis,
    pub must_contain: Vec<Permutation>,
    pub n: usize,
}

impl CountQuery {
    pub fn new(basis: PatternBasis, n: usize) -> Self {
        CountQuery {
            basis,
            must_contain: Vec::new(),
            n,
        }
    }

    pub fn with_contains(mut self, patterns: Vec<Permutation>) -> Self {
        self.must_contain = patterns;
        self
    }

    fn accepts_leaf(&self, word: &[u32]) -> bool {
        self.must_contain
            .iter()
            .all(|p| contains_slice(word, p.values()))
    }
}

/// Materializing a class so large it would exhaust memory is refused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    CapExceeded { count: u64, cap: u64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::CapExceeded { count, cap } => write!(
                f,
                "class has {count} members, above the enumeration cap {cap}; use count mode"
            ),
        }
    }
}

/// Default cap on materialized enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

fn extend_word(word: &[u32], rank: u32, out: &mut Vec<u32>) {
    out.clear();
    out.extend(word.iter().map(|&v| if v >= rank { v + 1 } else { v }));
    out.push(rank);
}

fn basis_hit(word: &[u32], basis: &PatternBasis) -> bool {
    basis
        .patterns()
        .iter()
        .any(|p| contains_slice_ending_at_last(word, p.values()))
}

fn count_rec(query: &CountQuery, word: &mut Vec<u32>, acc: &mut u64) {
    if word.len() == query.n {
        if query.accepts_leaf(word) {
            *acc += 1;
        }
        return;
    }
    let len = word.len() as u32;
    let mut child = Vec::with_capacity(word.len() + 1);
    for rank in 1..=len + 1 {
        extend_word(word, rank, &mut child);
        if !basis_hit(&child, &query.basis) {
            core::mem::swap(word, &mut child);
            count_rec(query, word, acc);
            core::mem::swap(word, &mut child);
        }
    }
}

/// Exact number of permutations matching the query. Streams the search tree;
/// no cap applies.
pub fn count(query: &CountQuery) -> u64 {
    let mut acc = 0;
    count_rec(query, &mut Vec::new(), &mut acc);
    acc
}

/// Counts for every length `0..=n_max` under the same basis and containment
/// constraints.
pub fn count_table(basis: &PatternBasis, must_contain: &[Permutation], n_max: usize) -> Vec<u64> {
    (0..=n_max)
        .map(|n| {
            count(&CountQuery {
                basis: basis.clone(),
                must_contain: must_contain.to_vec(),
                n,
            })
        })
        .collect()
}

fn enumerate_rec(query: &CountQuery, word: &mut Vec<u32>, out: &mut Vec<Permutation>) {
    if word.len() == query.n {
        if query.accepts_leaf(word) {
            out.push(Permutation::from_trusted(word.clone()));
        }
        return;
    }
    let len = word.len() as u32;
    let mut child = Vec::with_capacity(word.len() + 1);
    for rank in 1..=len + 1 {
        extend_word(word, rank, &mut child);
        if !basis_hit(&child, &query.basis) {
            core::mem::swap(word, &mut child);
            enumerate_rec(query, word, out);
            core::mem::swap(word, &mut child);
        }
    }
}

/// Lists the matching permutations in lexicographic order. Refuses with
/// [`OracleError::CapExceeded`] when the class is larger than `cap`.
pub fn enumerate(query: &CountQuery, cap: u64) -> Result<Vec<Permutation>, OracleError> {
    let total = count(query);
    if total > cap {
        return Err(OracleError::CapExceeded { count: total, cap });
    }
    let mut out = Vec::with_capacity(total as usize);
    enumerate_rec(query, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// All avoiding prefixes of the given depth, for splitting a count across
/// workers. Completions of distinct prefixes are disjoint, so worker results
/// add up independently of the split.
pub fn prefix_frontier(query: &CountQuery, depth: usize) -> Vec<Vec<u32>> {
    let depth = depth.min(query.n);
    let mut frontier = Vec::new();
    fn rec(basis: &PatternBasis, word: &mut Vec<u32>, depth: usize, out: &mut Vec<Vec<u32>>) {
        if word.len() == depth {
            out.push(word.clone());
            return;
        }
        let len = word.len() as u32;
        let mut child = Vec::with_capacity(word.len() + 1);
        for rank in 1..=len + 1 {
            extend_word(word, rank, &mut child);
            if !basis_hit(&child, basis) {
                core::mem::swap(word, &mut child);
                rec(basis, word, depth, out);
                core::mem::swap(word, &mut child);
            }
        }
    }
    rec(&query.basis, &mut Vec::new(), depth, &mut frontier);
    frontier
}

/// Number of query matches whose prefix pattern is exactly `prefix` (which
/// must itself avoid the basis).
pub fn count_completions(query: &CountQuery, prefix: &[u32]) -> u64 {
    let mut word = prefix.to_vec();
    let mut acc = 0;
    count_rec(query, &mut word, &mut acc);
    acc
}
