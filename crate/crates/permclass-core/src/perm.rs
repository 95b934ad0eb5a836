//! Permutations in one-line notation, classical pattern containment, and the
//! structural decompositions (source graphs, fans, the two-cell grid split)
//! used by the class constructions.
//!
//! Values are 1-based: a permutation of length `n` is a sequence containing
//! each of `1..=n` exactly once. The empty permutation is legal everywhere.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// A permutation in one-line notation; `values[i]` is the image of position
/// `i` (0-based positions, 1-based values).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

/// Errors from constructing or parsing permutations and bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermError {
    /// The value sequence is not a bijection onto `1..=n`.
    NotAPermutation,
    /// Unparseable text.
    Parse(String),
    /// A pattern basis must contain at least one nonempty pattern.
    EmptyBasis,
    /// Bases may not contain the empty permutation.
    EmptyPattern,
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotAPermutation => write!(f, "values are not a permutation of 1..=n"),
            PermError::Parse(s) => write!(f, "cannot parse permutation: {s}"),
            PermError::EmptyBasis => write!(f, "pattern basis must be nonempty"),
            PermError::EmptyPattern => write!(f, "patterns in a basis must have length >= 1"),
        }
    }
}

impl Permutation {
    /// Builds a permutation, checking that `values` is a bijection onto `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = alloc::vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(PermError::NotAPermutation);
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    /// Internal constructor for values known to be a permutation.
    pub(crate) fn from_trusted(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The pattern (order-isomorphic relabelling onto `1..=k`) of the
    /// subsequence at the given positions. Positions must be strictly
    /// increasing.
    pub fn pattern_at(&self, positions: &[usize]) -> Permutation {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let vals: Vec<u32> = positions.iter().map(|&p| self.values[p]).collect();
        Permutation::from_trusted(flatten(&vals))
    }

    /// True iff some subsequence of `self` is order-isomorphic to `pattern`.
    ///
    /// Depth-first embedding search over positions with a value-window prune:
    /// a candidate for the next pattern slot only has to be compared against
    /// the tightest already-matched values below and above it.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains_slice(&self.values, &pattern.values)
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// True iff `self` contains none of the basis patterns.
    pub fn avoids_all(&self, basis: &PatternBasis) -> bool {
        basis.patterns.iter().all(|p| !self.contains(p))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    // One-line notation reads better in test failures than a struct dump.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts comma-separated values (`"3,1,5,2,4"`) and, for lengths up to
    /// nine, single-token digit strings (`"31524"`).
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|_| PermError::Parse(String::from(s)))
                })
                .collect::<Result<_, _>>()?
        } else {
            if !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(PermError::Parse(String::from(s)));
            }
            if s.len() > 9 {
                // Single-token form is ambiguous past nine symbols.
                return Err(PermError::Parse(String::from(s)));
            }
            s.bytes().map(|b| (b - b'0') as u32).collect()
        };
        Permutation::new(values).map_err(|_| PermError::NotAPermutation)
    }
}

/// Relabel arbitrary distinct values onto `1..=k`, preserving relative order.
pub(crate) fn flatten(vals: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = vals.to_vec();
    sorted.sort_unstable();
    vals.iter()
        .map(|v| (sorted.binary_search(v).unwrap() + 1) as u32)
        .collect()
}

/// Containment check on raw value slices (not necessarily 1..=n; only the
/// relative order matters). Shared by the oracle, which works on prefixes.
pub(crate) fn contains_slice(text: &[u32], pattern: &[u32]) -> bool {
    let m = pattern.len();
    assert!(m <= 16, "patterns longer than 16 are unsupported");
    if m == 0 {
        return true;
    }
    if m > text.len() {
        return false;
    }
    let mut chosen = [0u32; 16];
    dfs_embed(text, pattern, 0, 0, &mut chosen, None)
}

/// Containment with the pattern's last element pinned to the last position of
/// `text`. Extending a prefix one element at a time and checking only
/// embeddings that use the new position is what makes prefix pruning cheap.
pub(crate) fn contains_slice_ending_at_last(text: &[u32], pattern: &[u32]) -> bool {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return false;
    }
    let last = *text.last().unwrap();
    if m == 1 {
        return true;
    }
    let mut chosen = [0u32; 16];
    dfs_embed(
        &text[..text.len() - 1],
        &pattern[..m - 1],
        0,
        0,
        &mut chosen,
        Some((last, pattern[m - 1])),
    )
}

/// Match `pattern[slot..]` into `text[from..]`. `pinned` optionally carries a
/// value already matched to the final pattern entry, which every earlier slot
/// must stay consistent with.
fn dfs_embed(
    text: &[u32],
    pattern: &[u32],
    slot: usize,
    from: usize,
    chosen: &mut [u32; 16],
    pinned: Option<(u32, u32)>,
) -> bool {
    if slot == pattern.len() {
        return true;
    }
    // Tightest bounds the candidate value must fall strictly between.
    let mut lo = 0u32;
    let mut hi = u32::MAX;
    for j in 0..slot {
        if pattern[j] < pattern[slot] {
            lo = lo.max(chosen[j]);
        } else {
            hi = hi.min(chosen[j]);
        }
    }
    if let Some((pin_val, pin_pat)) = pinned {
        if pin_pat > pattern[slot] {
            hi = hi.min(pin_val);
        } else {
            lo = lo.max(pin_val);
        }
    }
    let remaining = pattern.len() - slot;
    for i in from..=(text.len() - remaining) {
        let v = text[i];
        if v > lo && v < hi {
            chosen[slot] = v;
            if dfs_embed(text, pattern, slot + 1, i + 1, chosen, pinned) {
                return true;
            }
        }
    }
    false
}

/// A finite antichain of patterns defining the class `Av(B)`.
///
/// Construction deduplicates and normalizes to minimal elements: any pattern
/// containing another pattern of the basis is redundant and dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternBasis {
    patterns: Vec<Permutation>,
}

impl PatternBasis {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self, PermError> {
        let mut pats: Vec<Permutation> = patterns.into_iter().collect();
        if pats.iter().any(|p| p.is_empty()) {
            return Err(PermError::EmptyPattern);
        }
        pats.sort();
        pats.dedup();
        let minimal: Vec<Permutation> = pats
            .iter()
            .filter(|p| {
                !pats
                    .iter()
                    .any(|q| q != *p && q.len() < p.len() && p.contains(q))
            })
            .cloned()
            .collect();
        if minimal.is_empty() {
            return Err(PermError::EmptyBasis);
        }
        Ok(PatternBasis { patterns: minimal })
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    /// Parses a comma-separated list of single-token patterns, e.g.
    /// `"4123,1324"`. In list position each token is a whole pattern, so the
    /// per-value comma form is not available here.
    pub fn parse(list: &str) -> Result<Self, PermError> {
        let pats: Vec<Permutation> = list
            .split(',')
            .map(|tok| tok.parse())
            .collect::<Result<_, _>>()?;
        PatternBasis::new(pats)
    }
}

impl fmt::Display for PatternBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// One source graph: the block owned by a single left-to-right minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceGraph {
    /// Position (0-based) of the left-to-right minimum.
    pub min_pos: usize,
    /// All member positions in increasing order, including `min_pos`.
    pub members: Vec<usize>,
}

/// The partition of positions into source graphs, ordered by decreasing
/// minimum value (equivalently by position of the minima, left to right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceGraphDecomposition {
    pub graphs: Vec<SourceGraph>,
}

impl SourceGraphDecomposition {
    /// The value-pattern of graph `i`, suitable for [`is_fan`].
    pub fn graph_pattern(&self, perm: &Permutation, i: usize) -> Permutation {
        perm.pattern_at(&self.graphs[i].members)
    }
}

/// Decomposes by left-to-right minima: the graph of minimum `m_i` holds `m_i`
/// together with every later element whose value lies strictly between `m_i`
/// and the previous minimum. Elements between consecutive minima in value are
/// always positioned after the lower minimum, so this partitions positions.
pub fn source_graph_decomposition(perm: &Permutation) -> SourceGraphDecomposition {
    let vals = perm.values();
    let mut graphs: Vec<SourceGraph> = Vec::new();
    let mut minima: Vec<u32> = Vec::new(); // decreasing
    let mut run_min = u32::MAX;
    for (pos, &v) in vals.iter().enumerate() {
        if v < run_min {
            run_min = v;
            minima.push(v);
            graphs.push(SourceGraph {
                min_pos: pos,
                members: alloc::vec![pos],
            });
        } else {
            // Band search: the unique i with minima[i] < v < minima[i-1].
            let i = minima.partition_point(|&m| m > v);
            debug_assert!(minima[i] < v);
            debug_assert!(pos > graphs[i].min_pos);
            graphs[i].members.push(pos);
        }
    }
    SourceGraphDecomposition { graphs }
}

/// A fan is a source graph whose value-pattern avoids `123`.
pub fn is_fan(graph_pattern: &Permutation) -> bool {
    graph_pattern.avoids(&Permutation::from_trusted(alloc::vec![1, 2, 3]))
}

/// The two-cell vertical split: values above `split_value` on top (must avoid
/// `21`), the rest on the bottom (must avoid `123`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDecomposition {
    pub split_value: u32,
    pub top_positions: Vec<usize>,
    pub bottom_positions: Vec<usize>,
}

/// Splits at `r` = the largest value that has some larger value before it
/// (`r = 0` when the permutation is increasing), then accepts iff the bottom
/// cell avoids `123`. Succeeds exactly on the members of the class
/// `Av(4123,1243,1423)`; the top cell avoids `21` by choice of `r`.
pub fn grid_decompose(perm: &Permutation) -> Option<GridDecomposition> {
    let vals = perm.values();
    let mut r = 0u32;
    let mut run_max = 0u32;
    for &v in vals {
        if v < run_max {
            r = r.max(v);
        }
        run_max = run_max.max(v);
    }
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    let mut bottom_vals = Vec::new();
    for (pos, &v) in vals.iter().enumerate() {
        if v > r {
            top.push(pos);
        } else {
            bottom.push(pos);
            bottom_vals.push(v);
        }
    }
    debug_assert!(!contains_slice(
        &vals.iter().copied().filter(|&v| v > r).collect::<Vec<_>>(),
        &[2, 1]
    ));
    if contains_slice(&bottom_vals, &[1, 2, 3]) {
        return None;
    }
    Some(GridDecomposition {
        split_value: r,
        top_positions: top,
        bottom_positions: bottom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_both_formats() {
        assert_eq!(p("31524"), p("3,1,5,2,4"));
        assert_eq!(p("").len(), 0);
        assert!("313".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
        assert!("1234567891".parse::<Permutation>().is_err());
    }

    #[test]
    fn contains_witnesses() {
        // 31524 contains both 1423 and 3124.
        assert!(p("31524").contains(&p("1423")));
        assert!(p("31524").contains(&p("3124")));
        assert!(p("31524").avoids(&p("4123")));
        assert!(p("31524").avoids(&p("1324")));
        // via the subsequence (2,5,3,4)
        assert!(p("25314").contains(&p("1423")));
        // identity embedding
        for s in ["1", "21", "31524", "123456789"] {
            assert!(p(s).contains(&p(s)));
        }
        // longer pattern than text
        assert!(!p("12").contains(&p("123")));
    }

    #[test]
    fn avoids_all_small_cases() {
        let b = PatternBasis::parse("4123,1324").unwrap();
        assert!(Permutation::empty().avoids_all(&b));
        assert!(!p("4123").avoids_all(&b));
        assert!(p("31524").avoids_all(&b));
    }

    #[test]
    fn basis_normalization() {
        // 31524 contains 1423, so it is dropped as non-minimal.
        let b = PatternBasis::parse("1423,31524").unwrap();
        assert_eq!(b.patterns(), &[p("1423")]);
        // duplicates collapse
        let b = PatternBasis::parse("123,123").unwrap();
        assert_eq!(b.patterns().len(), 1);
        assert!(PatternBasis::new([Permutation::empty()]).is_err());
    }

    #[test]
    fn source_graphs_of_35142() {
        let d = source_graph_decomposition(&p("35142"));
        assert_eq!(d.graphs.len(), 2);
        // minima 3 and 1; the graph of 3 takes values {3,5,4} = positions 0,1,3
        assert_eq!(d.graphs[0].members, vec![0, 1, 3]);
        assert_eq!(d.graphs[1].members, vec![2, 4]);
    }

    #[test]
    fn source_graphs_extremes() {
        let d = source_graph_decomposition(&Permutation::identity(6));
        assert_eq!(d.graphs.len(), 1);
        assert_eq!(d.graphs[0].members, (0..6).collect::<Vec<_>>());

        let rev = Permutation::new((1..=6).rev().collect()).unwrap();
        let d = source_graph_decomposition(&rev);
        assert_eq!(d.graphs.len(), 6);
        assert!(d.graphs.iter().all(|g| g.members.len() == 1));

        assert!(source_graph_decomposition(&Permutation::empty())
            .graphs
            .is_empty());
    }

    #[test]
    fn fan_recognition() {
        assert!(is_fan(&p("132"))); // shape of 354
        assert!(!is_fan(&p("123")));
        assert!(is_fan(&p("1")));
    }

    #[test]
    fn grid_split_examples() {
        // 1243: r = 3, bottom pattern 123 -> failure
        assert!(grid_decompose(&p("1243")).is_none());
        // empty: r = 0, both cells empty
        let g = grid_decompose(&Permutation::empty()).unwrap();
        assert_eq!(g.split_value, 0);
        // 21: r = 1, top {2}, bottom {1}
        let g = grid_decompose(&p("21")).unwrap();
        assert_eq!(g.split_value, 1);
        assert_eq!(g.top_positions, vec![0]);
        assert_eq!(g.bottom_positions, vec![1]);
    }

    #[test]
    fn pattern_at_flattens() {
        // the subsequence (2,5,3,4) of 25314 has shape 1423
        assert_eq!(p("25314").pattern_at(&[0, 1, 2, 4]), p("1423"));
    }
}
