//! Alternating permutations: validation, classification and enumeration.
//!
//! Positions are 1-based throughout, matching one-line notation.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seq::CountTable;

/// Degrees above this cannot be held in the enumeration bitmask.
pub const MAX_DEGREE: usize = 63;

/// One-line notation of a permutation of `{1..n}`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AltKind {
    UpDown,
    DownUp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MinMax {
    /// 1 appears before n.
    MinMax,
    /// n appears before 1.
    MaxMin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecondMax {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub kind: AltKind,
    pub minmax: MinMax,
    pub secondmax: SecondMax,
}

impl AltKind {
    pub fn opposite(self) -> Self {
        match self {
            AltKind::UpDown => AltKind::DownUp,
            AltKind::DownUp => AltKind::UpDown,
        }
    }

    /// Whether 1-based position `pos` is a peak slot for this kind:
    /// even positions for up-down, odd positions for down-up.
    pub fn is_upper(self, pos: usize) -> bool {
        match self {
            AltKind::UpDown => pos.is_multiple_of(2),
            AltKind::DownUp => pos % 2 == 1,
        }
    }

    /// The upper row of a degree-`n` permutation of this kind.
    pub fn upper_row(self, n: usize) -> Vec<usize> {
        (1..=n).filter(|&p| self.is_upper(p)).collect()
    }

    // Relation required between the values at positions `pos` and `pos + 1`.
    fn rises_after(self, pos: usize) -> bool {
        !self.is_upper(pos)
    }
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    pub fn identity(n: usize) -> Self {
        Self { values: (1..=n as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    /// `sigma(pos)` for a 1-based position.
    pub fn at(&self, pos: usize) -> u32 {
        self.values[pos - 1]
    }

    /// 1-based position of `value`, i.e. `sigma^{-1}(value)`.
    pub fn position_of(&self, value: u32) -> usize {
        self.values.iter().position(|&v| v == value).expect("value in range") + 1
    }

    pub fn is_up_down(&self) -> bool {
        is_alternating_slice(&self.values, AltKind::UpDown)
    }

    pub fn is_down_up(&self) -> bool {
        is_alternating_slice(&self.values, AltKind::DownUp)
    }

    pub fn is_alternating(&self) -> bool {
        self.is_up_down() || self.is_down_up()
    }

    /// The kind of an alternating permutation of degree at least 2.
    pub fn alt_kind(&self) -> Option<AltKind> {
        if self.degree() < 2 {
            return None;
        }
        if self.is_up_down() {
            Some(AltKind::UpDown)
        } else if self.is_down_up() {
            Some(AltKind::DownUp)
        } else {
            None
        }
    }

    /// `sigma*(i) = n - sigma(i) + 1`.
    pub fn complement(&self) -> Self {
        let n = self.degree() as u32 + 1;
        Self { values: self.values.iter().map(|&v| n - v).collect() }
    }

    /// Exchanges the values `a` and `b`.
    pub fn swap_values(&self, a: u32, b: u32) -> Self {
        let values = self
            .values
            .iter()
            .map(|&v| if v == a { b } else if v == b { a } else { v })
            .collect();
        Self { values }
    }
}

pub(crate) fn is_alternating_slice(values: &[u32], kind: AltKind) -> bool {
    values.windows(2).enumerate().all(|(i, w)| {
        if kind.rises_after(i + 1) {
            w[0] < w[1]
        } else {
            w[0] > w[1]
        }
    })
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.values.iter().join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts bare digits (`"3572461"`) or comma-separated values.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse '{s}'"));
        let values = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<Vec<_>>>()?
        };
        Self::new(values)
    }
}

/// Positions of the upper row for `kind` at degree `n >= 2`.
pub fn upper_row(n: usize, kind: AltKind) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, reason: "the upper row is defined for n >= 2" });
    }
    Ok(kind.upper_row(n))
}

/// Kind, min-max/max-min and 2nd-max row of an alternating permutation.
pub fn classify(sigma: &Permutation) -> Result<Classification> {
    let n = sigma.degree();
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, reason: "classification requires n >= 2" });
    }
    let kind = sigma.alt_kind().ok_or_else(|| Error::NotAlternating(sigma.to_string()))?;
    Ok(classify_slice(sigma.values(), kind))
}

fn classify_slice(values: &[u32], kind: AltKind) -> Classification {
    let n = values.len() as u32;
    let (mut pos_one, mut pos_max, mut pos_second) = (0, 0, 0);
    for (i, &v) in values.iter().enumerate() {
        if v == 1 {
            pos_one = i + 1;
        }
        if v == n {
            pos_max = i + 1;
        }
        if v == n - 1 {
            pos_second = i + 1;
        }
    }
    Classification {
        kind,
        minmax: if pos_one < pos_max { MinMax::MinMax } else { MinMax::MaxMin },
        secondmax: if kind.is_upper(pos_second) { SecondMax::Upper } else { SecondMax::Lower },
    }
}

/// Lexicographic stream of alternating permutations, built by extending
/// prefixes and abandoning any prefix that breaks the zigzag.
#[derive(Debug, Clone)]
pub struct AlternatingPermutations {
    n: usize,
    kind: AltKind,
    fixed: usize,
    values: Vec<u32>,
    next_candidate: Vec<u32>,
    used: u64,
    depth: usize,
    done: bool,
}

impl AlternatingPermutations {
    pub fn new(n: usize, kind: AltKind) -> Self {
        Self::with_prefix(n, kind, &[]).expect("empty prefix is always valid")
    }

    /// Only permutations starting with `prefix` are produced.
    pub fn with_prefix(n: usize, kind: AltKind, prefix: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { n, reason: "enumeration supports 1..=63" });
        }
        if prefix.len() > n {
            return Err(Error::InvalidPermutation(format!("prefix {prefix:?} longer than {n}")));
        }
        let mut used = 0u64;
        for &v in prefix {
            if v == 0 || v as usize > n || used & (1 << v) != 0 {
                return Err(Error::InvalidPermutation(format!("invalid prefix {prefix:?}")));
            }
            used |= 1 << v;
        }
        let mut values = vec![0; n];
        values[..prefix.len()].copy_from_slice(prefix);
        let done = !is_alternating_slice(prefix, kind);
        Ok(Self {
            n,
            kind,
            fixed: prefix.len(),
            values,
            next_candidate: vec![1; n + 1],
            used,
            depth: prefix.len(),
            done,
        })
    }

    fn admissible(&self, v: u32) -> bool {
        if self.used & (1 << v) != 0 {
            return false;
        }
        if self.depth == 0 {
            return true;
        }
        let prev = self.values[self.depth - 1];
        if self.kind.rises_after(self.depth) {
            prev < v
        } else {
            prev > v
        }
    }

    /// Advances to the next complete permutation, leaving it in `values`.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        loop {
            if self.depth == self.n {
                return true;
            }
            let start = self.next_candidate[self.depth];
            let found = (start..=self.n as u32).find(|&v| self.admissible(v));
            match found {
                Some(v) => {
                    self.values[self.depth] = v;
                    self.used |= 1 << v;
                    self.next_candidate[self.depth] = v + 1;
                    self.depth += 1;
                    self.next_candidate[self.depth] = 1;
                }
                None => {
                    if !self.backtrack() {
                        return false;
                    }
                }
            }
        }
    }

    fn backtrack(&mut self) -> bool {
        if self.depth == self.fixed {
            self.done = true;
            return false;
        }
        self.depth -= 1;
        self.used &= !(1 << self.values[self.depth]);
        true
    }

    /// Calls `f` on each permutation without allocating.
    pub fn for_each_slice(mut self, mut f: impl FnMut(&[u32])) {
        while self.advance() {
            f(&self.values);
            if !self.backtrack() {
                break;
            }
        }
    }
}

impl Iterator for AlternatingPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if !self.advance() {
            return None;
        }
        let out = Permutation { values: self.values.clone() };
        self.backtrack();
        Some(out)
    }
}

/// All alternating permutations of the given kind, lexicographically.
pub fn enumerate_alternating(n: usize, kind: AltKind) -> AlternatingPermutations {
    AlternatingPermutations::new(n, kind)
}

/// Reference generator: filters all `n!` permutations. Intended for `n <= 9`.
pub fn enumerate_alternating_reference(n: usize, kind: AltKind) -> Vec<Permutation> {
    (1..=n as u32)
        .permutations(n)
        .filter(|p| is_alternating_slice(p, kind))
        .map(|values| Permutation { values })
        .collect()
}

/// Admissible two-value prefixes; each one seeds an independent worker.
pub fn two_value_prefixes(n: usize, kind: AltKind) -> Vec<Vec<u32>> {
    if n < 2 {
        return vec![vec![]];
    }
    (1..=n as u32)
        .cartesian_product(1..=n as u32)
        .filter(|&(a, b)| a != b && is_alternating_slice(&[a, b], kind))
        .map(|(a, b)| vec![a, b])
        .collect()
}

/// Tallies over one kind of alternating permutation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KindCounts {
    pub total: u64,
    pub min_max: u64,
    pub max_min: u64,
    pub second_max_upper: u64,
    pub second_max_lower: u64,
}

impl KindCounts {
    fn record(&mut self, c: Classification) {
        self.total += 1;
        match c.minmax {
            MinMax::MinMax => self.min_max += 1,
            MinMax::MaxMin => self.max_min += 1,
        }
        match c.secondmax {
            SecondMax::Upper => self.second_max_upper += 1,
            SecondMax::Lower => self.second_max_lower += 1,
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.total += o.total;
        self.min_max += o.min_max;
        self.max_min += o.max_min;
        self.second_max_upper += o.second_max_upper;
        self.second_max_lower += o.second_max_lower;
        self
    }
}

/// Brute-force classification of every alternating permutation of `kind`
/// and degree `n >= 2`, split across workers by two-value prefix.
pub fn count_kind(n: usize, kind: AltKind) -> Result<KindCounts> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, reason: "refinements start at n = 2" });
    }
    let prefixes = two_value_prefixes(n, kind);
    let counts = prefixes
        .par_iter()
        .map(|prefix| {
            let mut k = KindCounts::default();
            AlternatingPermutations::with_prefix(n, kind, prefix)
                .expect("generated prefix is valid")
                .for_each_slice(|p| k.record(classify_slice(p, kind)));
            k
        })
        .reduce(KindCounts::default, KindCounts::merge);
    Ok(counts)
}

/// Brute-force [`CountTable`] for degree `n >= 2`.
///
/// `E↗`/`E↖` are counted over up-down permutations; that population
/// reproduces the published min-max table (the down-up population swaps
/// the two counts, see [`count_kind`]). `E↑`/`E↓` count up-down
/// permutations and `D↑`/`D↓` count down-up permutations.
pub fn count_refinements(n: usize) -> Result<CountTable> {
    let up = count_kind(n, AltKind::UpDown)?;
    let down = count_kind(n, AltKind::DownUp)?;
    debug_assert_eq!(up.total, down.total);
    Ok(CountTable {
        n,
        e: BigUint::from(up.total),
        ene: BigUint::from(up.min_max),
        enw: BigUint::from(up.max_min),
        eup: BigUint::from(up.second_max_upper),
        edown: BigUint::from(up.second_max_lower),
        dup: Some(BigUint::from(down.second_max_upper)),
        ddown: Some(BigUint::from(down.second_max_lower)),
    })
}
