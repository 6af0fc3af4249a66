//! Exhaustive enumeration of partial matchings on labelled doubletons.
//!
//! `n` doubletons carry `2n` atoms (`1L, 1R, …, nL, nR`). A matching pairs
//! some of the atoms; matched atoms weigh `y`, unmatched ones `x`. Seen as a
//! graph on doubletons, every component is a chain: *closed* when all of
//! its atoms are matched (a self-paired doubleton is a closed chain of size
//! 1), *open* when exactly its two end atoms are free (an untouched doubleton
//! is an open chain of size 1).
//!
//! Nothing here uses series algebra beyond collecting the final counts into
//! a [`TruncatedSeries`].

use std::collections::BTreeMap;
use std::env;
use std::fmt;

use num::bigint::BigInt;
use thiserror::Error;

use crate::rational::{factorial, Rational};
use crate::series::{MultiIndex, TruncatedSeries, TruncationSpec, Var};

/// Largest `n` enumerated unless raised.
pub const DEFAULT_MAX_N: usize = 7;
/// Largest point count accepted by [`Oracle::involution_counts`].
pub const MAX_INVOLUTION_POINTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("requested size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomRef {
    /// 1-based doubleton label.
    pub doubleton: usize,
    pub side: Side,
}

impl AtomRef {
    fn from_index(i: usize) -> Self {
        AtomRef {
            doubleton: i / 2 + 1,
            side: if i % 2 == 0 { Side::Left } else { Side::Right },
        }
    }
}

impl fmt::Display for AtomRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Left => 'L',
            Side::Right => 'R',
        };
        write!(f, "{}{}", self.doubleton, side)
    }
}

/// Disjoint unordered atom pairs on `n` doubletons; each pair is stored
/// with its smaller atom first, pairs sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    n: usize,
    pairs: Vec<(AtomRef, AtomRef)>,
}

impl Matching {
    /// Validates and normalises a matching.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (AtomRef, AtomRef)>) -> Option<Self> {
        let mut used = vec![false; 2 * n];
        let mut out = Vec::new();
        for (a, b) in pairs {
            let (ia, ib) = (atom_index(a, n)?, atom_index(b, n)?);
            if ia == ib || used[ia] || used[ib] {
                return None;
            }
            used[ia] = true;
            used[ib] = true;
            out.push(if ia < ib { (a, b) } else { (b, a) });
        }
        out.sort();
        Some(Matching { n, pairs: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(AtomRef, AtomRef)] {
        &self.pairs
    }

    pub fn matched_atoms(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn unmatched_atoms(&self) -> usize {
        2 * self.n - self.matched_atoms()
    }
}

fn atom_index(a: AtomRef, n: usize) -> Option<usize> {
    if a.doubleton == 0 || a.doubleton > n {
        return None;
    }
    Some(2 * (a.doubleton - 1) + usize::from(a.side == Side::Right))
}

/// `1L-2R,1R-2L`, or `empty` with no pairs.
impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("empty");
        }
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        Ok(())
    }
}

/// Sizes (in doubletons) of the closed and open chains of a matching,
/// each list sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentProfile {
    pub closed_chains: Vec<usize>,
    pub open_chains: Vec<usize>,
}

/// `C:[2] O:[1,1]`
impl fmt::Display for ComponentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "C:[{}] O:[{}]", join(&self.closed_chains), join(&self.open_chains))
    }
}

/// Splits the doubleton graph of `m` into closed and open chains.
pub fn classify(m: &Matching) -> ComponentProfile {
    let n = m.n;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (a, b) in &m.pairs {
        let (ra, rb) = (find(&mut parent, a.doubleton - 1), find(&mut parent, b.doubleton - 1));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    // per component: (doubletons, matched atoms)
    let mut sizes: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for d in 0..n {
        let r = find(&mut parent, d);
        sizes.entry(r).or_default().0 += 1;
    }
    for (a, _) in &m.pairs {
        let r = find(&mut parent, a.doubleton - 1);
        sizes.get_mut(&r).expect("component exists").1 += 2;
    }
    let mut profile = ComponentProfile::default();
    for (doubletons, matched) in sizes.into_values() {
        if matched == 2 * doubletons {
            profile.closed_chains.push(doubletons);
        } else {
            debug_assert_eq!(matched + 2, 2 * doubletons);
            profile.open_chains.push(doubletons);
        }
    }
    profile.closed_chains.sort_unstable();
    profile.open_chains.sort_unstable();
    profile
}

/// Streams every partial matching on `2n` atoms exactly once.
///
/// The smallest undecided atom is either left unmatched or paired with a
/// larger free atom; backtracking over that choice visits each matching once
/// without any deduplication.
pub struct MatchingIter {
    n: usize,
    /// 0 = undecided, 1 = unmatched, 2 = matched
    state: Vec<u8>,
    /// decisions in order: (atom, partner)
    stack: Vec<(usize, Option<usize>)>,
    started: bool,
    done: bool,
}

impl MatchingIter {
    fn new(n: usize) -> Self {
        MatchingIter {
            n,
            state: vec![0; 2 * n],
            stack: Vec::with_capacity(2 * n),
            started: false,
            done: false,
        }
    }

    /// Decides every remaining atom as unmatched (the first alternative).
    fn fill(&mut self) {
        for a in 0..self.state.len() {
            if self.state[a] == 0 {
                self.state[a] = 1;
                self.stack.push((a, None));
            }
        }
    }

    fn current(&self) -> Matching {
        let pairs = self
            .stack
            .iter()
            .filter_map(|&(a, p)| p.map(|b| (AtomRef::from_index(a), AtomRef::from_index(b))))
            .collect();
        Matching { n: self.n, pairs }
    }

    /// Moves to the next leaf; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some((a, partner)) = self.stack.pop() {
            self.state[a] = 0;
            let start = match partner {
                Some(b) => {
                    self.state[b] = 0;
                    b + 1
                }
                None => a + 1,
            };
            if let Some(b) = (start..self.state.len()).find(|&b| self.state[b] == 0) {
                self.state[a] = 2;
                self.state[b] = 2;
                self.stack.push((a, Some(b)));
                self.fill();
                return true;
            }
        }
        false
    }
}

impl Iterator for MatchingIter {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        // decisions are made in increasing atom order, so pairs come out sorted
        Some(self.current())
    }
}

/// Number of partial matchings with `m` pairs on `2n` atoms:
/// `(2n)! / ((2n−2m)! · m! · 2^m)`.
pub fn partial_matching_count(n: usize, m: usize) -> BigInt {
    if 2 * m > 2 * n {
        return BigInt::from(0);
    }
    let points = 2 * n as u32;
    factorial(points)
        / (factorial(points - 2 * m as u32) * factorial(m as u32) * (BigInt::from(1) << m))
}

/// Enumeration entry point with a configurable size cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { max_n: DEFAULT_MAX_N }
    }
}

impl Oracle {
    pub fn with_max_n(max_n: usize) -> Self {
        Oracle { max_n }
    }

    /// Default cap, raised (never lowered) by `SPECKIT_MAX_N` when set.
    pub fn from_env() -> Self {
        let max_n = env::var("SPECKIT_MAX_N")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map_or(DEFAULT_MAX_N, |n| n.max(DEFAULT_MAX_N));
        Oracle { max_n }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) -> Result<(), OracleError> {
        if n > self.max_n {
            return Err(OracleError::CapExceeded {
                requested: n,
                cap: self.max_n,
            });
        }
        Ok(())
    }

    pub fn matchings(&self, n: usize) -> Result<MatchingIter, OracleError> {
        self.check(n)?;
        Ok(MatchingIter::new(n))
    }

    /// Number of matchings on `n` doubletons with `m` pairs, indexed by `m`.
    pub fn pair_counts(&self, n: usize) -> Result<Vec<u64>, OracleError> {
        let mut counts = vec![0u64; n + 1];
        for m in self.matchings(n)? {
            counts[m.pairs.len()] += 1;
        }
        Ok(counts)
    }

    /// `Σ_{n ≤ n_max} Σ_matchings x^{#free} y^{#matched} t^n / n!`, optionally
    /// times `u^{#closed chains} v^{#open chains}`.
    ///
    /// The result is capped in `t` at `n_max` only; `x`, `y` and the marker
    /// variables are exact.
    pub fn oracle_egf(
        &self,
        n_max: usize,
        markers: Option<(&Var, &Var)>,
    ) -> Result<TruncatedSeries, OracleError> {
        self.check(n_max)?;
        let (x, y, t) = (Var::new("x"), Var::new("y"), Var::new("t"));
        let caps = TruncationSpec::new().with(t.clone(), n_max as u32);
        let mut terms = Vec::new();
        for n in 0..=n_max {
            let mut counts: BTreeMap<(usize, usize, usize, usize), u64> = BTreeMap::new();
            for m in self.matchings(n)? {
                let (closed, open) = match markers {
                    Some(_) => {
                        let p = classify(&m);
                        (p.closed_chains.len(), p.open_chains.len())
                    }
                    None => (0, 0),
                };
                *counts
                    .entry((m.unmatched_atoms(), m.matched_atoms(), closed, open))
                    .or_default() += 1;
            }
            let n_fact = factorial(n as u32);
            for ((free, matched, closed, open), count) in counts {
                let mut pairs = vec![
                    (x.clone(), free as u32),
                    (y.clone(), matched as u32),
                    (t.clone(), n as u32),
                ];
                if let Some((u, v)) = markers {
                    pairs.push((u.clone(), closed as u32));
                    pairs.push((v.clone(), open as u32));
                }
                let coeff = Rational::new(BigInt::from(count), n_fact.clone());
                terms.push((MultiIndex::from_pairs(pairs), coeff));
            }
        }
        Ok(TruncatedSeries::from_terms(terms, caps))
    }

    /// Partial matchings of `points` labelled points, counted by number of
    /// pairs: entry `k` counts matchings with `k` pairs.
    pub fn involution_counts(&self, points: usize) -> Result<Vec<u64>, OracleError> {
        if points > MAX_INVOLUTION_POINTS {
            return Err(OracleError::CapExceeded {
                requested: points,
                cap: MAX_INVOLUTION_POINTS,
            });
        }
        fn walk(free: u32, pairs: usize, counts: &mut [u64]) {
            if free == 0 {
                counts[pairs] += 1;
                return;
            }
            let lowest = free.trailing_zeros();
            let rest = free & !(1 << lowest);
            walk(rest, pairs, counts);
            let mut others = rest;
            while others != 0 {
                let b = others.trailing_zeros();
                others &= !(1 << b);
                walk(rest & !(1 << b), pairs + 1, counts);
            }
        }
        let mut counts = vec![0u64; points / 2 + 1];
        let all = if points == 0 { 0 } else { u32::MAX >> (32 - points) };
        walk(all, 0, &mut counts);
        Ok(counts)
    }

    /// Matchings on `j` doubletons forming a single closed chain, and a
    /// single open chain, through all `j` doubletons.
    pub fn chain_counts(&self, j: usize) -> Result<(u64, u64), OracleError> {
        let mut closed = 0;
        let mut open = 0;
        for m in self.matchings(j)? {
            let p = classify(&m);
            if p.closed_chains == [j] && p.open_chains.is_empty() {
                closed += 1;
            }
            if p.open_chains == [j] && p.closed_chains.is_empty() {
                open += 1;
            }
        }
        Ok((closed, open))
    }
}
