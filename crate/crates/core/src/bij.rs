//! Explicit bijections behind the refinement identities.
//!
//! A 2nd-max-upper up-down permutation with `n-1` left of `n` splits as
//!
//! ```text
//! [block of 2i+1] (n-1) [block of 2j+1] n [block of k]
//! ```
//!
//! with all three blocks up-down. A max-min up-down permutation of even
//! degree `2m` splits as
//!
//! ```text
//! [block of 2i+1] 2m [block of 2j] 1 [block of 2k+1]
//! ```
//!
//! with the first two blocks up-down and the last one down-up. Matching
//! the two shapes summand by summand gives an explicit 2-to-1 map from
//! 2nd-max-upper permutations onto max-min ones.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{
    classify, enumerate_alternating, is_alternating_slice, AltKind, MinMax, Permutation, SecondMax,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Landmarks `n-1` then `n`; blocks up-down, up-down, up-down.
    SecondMaxUpper,
    /// Landmarks `n` then `1`; blocks up-down, up-down, down-up.
    MaxMin,
}

impl Shape {
    fn block_kinds(self) -> [AltKind; 3] {
        match self {
            Shape::SecondMaxUpper => [AltKind::UpDown; 3],
            Shape::MaxMin => [AltKind::UpDown, AltKind::UpDown, AltKind::DownUp],
        }
    }

    fn landmark_values(self, n: u32) -> [u32; 2] {
        match self {
            Shape::SecondMaxUpper => [n - 1, n],
            Shape::MaxMin => [n, 1],
        }
    }
}

/// A block's value set (ascending) and its standardized pattern: the
/// block reads `values[pattern[0] - 1], values[pattern[1] - 1], ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub values: Vec<u32>,
    pub pattern: Vec<u32>,
}

impl Block {
    pub fn from_word(word: &[u32]) -> Self {
        let mut values = word.to_vec();
        values.sort_unstable();
        let pattern = word
            .iter()
            .map(|v| values.binary_search(v).expect("value present") as u32 + 1)
            .collect();
        Self { values, pattern }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn word(&self) -> Vec<u32> {
        self.pattern.iter().map(|&r| self.values[r as usize - 1]).collect()
    }

    fn shifted(&self, delta: i64) -> Self {
        Self {
            values: self.values.iter().map(|&v| (v as i64 + delta) as u32).collect(),
            pattern: self.pattern.clone(),
        }
    }

    fn complemented_pattern(&self) -> Self {
        let k = self.pattern.len() as u32 + 1;
        Self { values: self.values.clone(), pattern: self.pattern.iter().map(|&r| k - r).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub shape: Shape,
    pub sizes: [usize; 3],
    pub blocks: [Block; 3],
    /// 1-based positions of the two landmark values.
    pub landmarks: [usize; 2],
}

impl Decomposition {
    pub fn degree(&self) -> usize {
        self.sizes.iter().sum::<usize>() + 2
    }
}

fn split(sigma: &Permutation, shape: Shape) -> Decomposition {
    let n = sigma.degree() as u32;
    let [first, second] = shape.landmark_values(n);
    let (p1, p2) = (sigma.position_of(first), sigma.position_of(second));
    let v = sigma.values();
    let blocks = [
        Block::from_word(&v[..p1 - 1]),
        Block::from_word(&v[p1..p2 - 1]),
        Block::from_word(&v[p2..]),
    ];
    Decomposition {
        shape,
        sizes: [blocks[0].len(), blocks[1].len(), blocks[2].len()],
        blocks,
        landmarks: [p1, p2],
    }
}

fn outside(sigma: &Permutation, reason: &str) -> Error {
    Error::OutsideDomain { perm: sigma.to_string(), reason: reason.to_string() }
}

fn require_up_down(sigma: &Permutation) -> Result<crate::perm::Classification> {
    let c = classify(sigma)?;
    if c.kind != AltKind::UpDown {
        return Err(outside(sigma, "expected an up-down permutation"));
    }
    Ok(c)
}

/// Exchanges `n-1` and `n` in a 2nd-max-upper up-down permutation.
/// Both values sit on peaks, so the result stays up-down and 2nd-max-upper
/// with the two values in the opposite order.
pub fn swap_top_two(sigma: &Permutation) -> Result<Permutation> {
    let c = require_up_down(sigma)?;
    if c.secondmax != SecondMax::Upper {
        return Err(outside(sigma, "swap_top_two needs a 2nd-max-upper permutation"));
    }
    let n = sigma.degree() as u32;
    Ok(sigma.swap_values(n - 1, n))
}

/// Splits a 2nd-max-upper up-down permutation with `n-1` left of `n`.
pub fn decompose_smu(sigma: &Permutation) -> Result<Decomposition> {
    let c = require_up_down(sigma)?;
    if c.secondmax != SecondMax::Upper {
        return Err(outside(sigma, "expected a 2nd-max-upper permutation"));
    }
    let n = sigma.degree() as u32;
    if sigma.position_of(n) < sigma.position_of(n - 1) {
        return Err(outside(sigma, "n is left of n-1; apply swap_top_two first"));
    }
    Ok(split(sigma, Shape::SecondMaxUpper))
}

/// Splits a max-min up-down permutation of even degree.
pub fn decompose_maxmin(sigma: &Permutation) -> Result<Decomposition> {
    let c = require_up_down(sigma)?;
    if sigma.degree() % 2 == 1 {
        return Err(outside(sigma, "expected even degree"));
    }
    if c.minmax != MinMax::MaxMin {
        return Err(outside(sigma, "expected a max-min permutation"));
    }
    Ok(split(sigma, Shape::MaxMin))
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDecomposition(msg.into())
}

/// Reassembles a decomposition of either shape.
pub fn compose(d: &Decomposition) -> Result<Permutation> {
    let n = d.degree();
    if n < 2 {
        return Err(malformed("degree below 2"));
    }
    let n32 = n as u32;
    let [first, second] = d.shape.landmark_values(n32);
    for (i, (block, kind)) in d.blocks.iter().zip(d.shape.block_kinds()).enumerate() {
        if block.len() != d.sizes[i] || block.pattern.len() != block.values.len() {
            return Err(malformed(format!("block {} does not have size {}", i + 1, d.sizes[i])));
        }
        if block.values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(malformed(format!("block {} values are not strictly ascending", i + 1)));
        }
        let mut seen = vec![false; block.len() + 1];
        for &r in &block.pattern {
            let r = r as usize;
            if r == 0 || r > block.len() || seen[r] {
                return Err(malformed(format!("block {} pattern is not a permutation", i + 1)));
            }
            seen[r] = true;
        }
        if !is_alternating_slice(&block.pattern, kind) {
            return Err(malformed(format!("block {} pattern is not {kind:?}", i + 1)));
        }
    }
    let parity_ok = match d.shape {
        Shape::SecondMaxUpper => d.sizes[0] % 2 == 1 && d.sizes[1] % 2 == 1,
        Shape::MaxMin => d.sizes[0] % 2 == 1 && d.sizes[1].is_multiple_of(2) && d.sizes[2] % 2 == 1,
    };
    if !parity_ok {
        return Err(malformed(format!("block sizes {:?} have the wrong parity", d.sizes)));
    }
    let expected = [d.sizes[0] + 1, d.sizes[0] + d.sizes[1] + 2];
    if d.landmarks != expected {
        return Err(malformed(format!("landmarks {:?} should be {expected:?}", d.landmarks)));
    }
    let mut all: Vec<u32> = d.blocks.iter().flat_map(|b| b.values.iter().copied()).collect();
    all.sort_unstable();
    let want: Vec<u32> = (1..=n32).filter(|&v| v != first && v != second).collect();
    if all != want {
        return Err(malformed("blocks do not partition the non-landmark values"));
    }
    let mut out = Vec::with_capacity(n);
    out.extend(d.blocks[0].word());
    out.push(first);
    out.extend(d.blocks[1].word());
    out.push(second);
    out.extend(d.blocks[2].word());
    Permutation::new(out)
}

/// Inverse of [`decompose_smu`].
pub fn compose_smu(d: &Decomposition) -> Result<Permutation> {
    if d.shape != Shape::SecondMaxUpper {
        return Err(malformed("expected a 2nd-max-upper decomposition"));
    }
    compose(d)
}

/// Inverse of [`decompose_maxmin`].
pub fn compose_maxmin(d: &Decomposition) -> Result<Permutation> {
    if d.shape != Shape::MaxMin || d.degree() % 2 == 1 {
        return Err(malformed("expected a max-min decomposition of even degree"));
    }
    compose(d)
}

/// Sends a max-min up-down permutation of even degree, together with a
/// side bit, to a 2nd-max-upper up-down permutation of the same degree.
///
/// Blocks `(A, B, C)` of sizes `(2i+1, 2j, 2k+1)` become blocks
/// `(A, C*, B)` of sizes `(2i+1, 2k+1, 2j)`, every value lowered by one,
/// where `C*` complements the down-up pattern of `C` into an up-down one.
/// `side = true` then exchanges `n-1` and `n`.
pub fn maxmin_to_smu(sigma: &Permutation, side: bool) -> Result<Permutation> {
    let d = decompose_maxmin(sigma)?;
    let [a, b, c] = &d.blocks;
    let blocks = [a.shifted(-1), c.shifted(-1).complemented_pattern(), b.shifted(-1)];
    let sizes = [blocks[0].len(), blocks[1].len(), blocks[2].len()];
    let smu = Decomposition {
        shape: Shape::SecondMaxUpper,
        sizes,
        landmarks: [sizes[0] + 1, sizes[0] + sizes[1] + 2],
        blocks,
    };
    let tau = compose_smu(&smu)?;
    if side {
        swap_top_two(&tau)
    } else {
        Ok(tau)
    }
}

/// Inverse of [`maxmin_to_smu`].
pub fn smu_to_maxmin(tau: &Permutation) -> Result<(Permutation, bool)> {
    let n = tau.degree();
    if n % 2 == 1 {
        return Err(outside(tau, "expected even degree"));
    }
    let c = require_up_down(tau)?;
    if c.secondmax != SecondMax::Upper {
        return Err(outside(tau, "expected a 2nd-max-upper permutation"));
    }
    let n32 = n as u32;
    let side = tau.position_of(n32) < tau.position_of(n32 - 1);
    let left = if side { swap_top_two(tau)? } else { tau.clone() };
    let d = decompose_smu(&left)?;
    let [x, y, z] = &d.blocks;
    let blocks = [x.shifted(1), z.shifted(1), y.complemented_pattern().shifted(1)];
    let sizes = [blocks[0].len(), blocks[1].len(), blocks[2].len()];
    let mm = Decomposition {
        shape: Shape::MaxMin,
        sizes,
        landmarks: [sizes[0] + 1, sizes[0] + sizes[1] + 2],
        blocks,
    };
    Ok((compose_maxmin(&mm)?, side))
}

/// Outcome of an exhaustive bijection check at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionCheck {
    pub name: &'static str,
    pub n: usize,
    pub domain: usize,
    pub image: usize,
    pub codomain: usize,
    pub pass: bool,
}

fn smu_set(n: usize) -> Vec<Permutation> {
    enumerate_alternating(n, AltKind::UpDown)
        .filter(|s| n >= 2 && classify(s).map(|c| c.secondmax == SecondMax::Upper).unwrap_or(false))
        .collect()
}

/// `swap_top_two` is a fixed-point-free involution on the 2nd-max-upper
/// up-down permutations of degree `n`, reversing the order of `n-1`, `n`.
pub fn check_swap_involution(n: usize) -> BijectionCheck {
    let domain = smu_set(n);
    let n32 = n as u32;
    let left_of = |s: &Permutation| s.position_of(n32 - 1) < s.position_of(n32);
    let mut image = HashSet::new();
    let mut pass = true;
    let mut left_count = 0usize;
    for s in &domain {
        let Ok(t) = swap_top_two(s) else {
            pass = false;
            continue;
        };
        let ok = t != *s
            && swap_top_two(&t).as_ref() == Ok(s)
            && left_of(s) != left_of(&t)
            && classify(&t).map(|c| c.kind == AltKind::UpDown && c.secondmax == SecondMax::Upper) == Ok(true);
        pass &= ok;
        left_count += left_of(s) as usize;
        image.insert(t);
    }
    pass &= image.len() == domain.len() && 2 * left_count == domain.len();
    BijectionCheck { name: "swap_top_two involution", n, domain: domain.len(), image: image.len(), codomain: domain.len(), pass }
}

/// `compose_smu(decompose_smu(s)) == s` on every left-oriented
/// 2nd-max-upper up-down permutation of degree `n`.
pub fn check_smu_round_trip(n: usize) -> BijectionCheck {
    let n32 = n as u32;
    let domain: Vec<_> =
        smu_set(n).into_iter().filter(|s| s.position_of(n32 - 1) < s.position_of(n32)).collect();
    let mut pass = true;
    let mut image = HashSet::new();
    for s in &domain {
        match decompose_smu(s) {
            Ok(d) => {
                let sizes_ok = d.sizes[0] % 2 == 1 && d.sizes[1] % 2 == 1 && d.degree() == n;
                pass &= sizes_ok && compose_smu(&d).as_ref() == Ok(s);
                image.insert(d);
            }
            Err(_) => pass = false,
        }
    }
    pass &= image.len() == domain.len();
    BijectionCheck { name: "decompose_smu/compose_smu round trip", n, domain: domain.len(), image: image.len(), codomain: domain.len(), pass }
}

fn maxmin_set(n: usize) -> Vec<Permutation> {
    enumerate_alternating(n, AltKind::UpDown)
        .filter(|s| n >= 2 && classify(s).map(|c| c.minmax == MinMax::MaxMin).unwrap_or(false))
        .collect()
}

/// `compose_maxmin(decompose_maxmin(s)) == s` on every max-min up-down
/// permutation of even degree `n`.
pub fn check_maxmin_round_trip(n: usize) -> BijectionCheck {
    let domain = maxmin_set(n);
    let mut pass = n.is_multiple_of(2);
    let mut image = HashSet::new();
    for s in &domain {
        match decompose_maxmin(s) {
            Ok(d) => {
                pass &= compose_maxmin(&d).as_ref() == Ok(s);
                image.insert(d);
            }
            Err(_) => pass = false,
        }
    }
    pass &= image.len() == domain.len();
    BijectionCheck { name: "decompose_maxmin/compose_maxmin round trip", n, domain: domain.len(), image: image.len(), codomain: domain.len(), pass }
}

/// `maxmin_to_smu` maps {max-min} x {0, 1} injectively onto the full
/// 2nd-max-upper set at even degree `n`, and `smu_to_maxmin` inverts it.
pub fn check_maxmin_bijection(n: usize) -> BijectionCheck {
    let domain = maxmin_set(n);
    let codomain: HashSet<Permutation> = smu_set(n).into_iter().collect();
    let mut image = HashSet::new();
    let mut pass = n.is_multiple_of(2);
    for s in &domain {
        for side in [false, true] {
            match maxmin_to_smu(s, side) {
                Ok(t) => {
                    pass &= smu_to_maxmin(&t) == Ok((s.clone(), side));
                    image.insert(t);
                }
                Err(_) => pass = false,
            }
        }
    }
    pass &= image.len() == 2 * domain.len() && image == codomain;
    BijectionCheck {
        name: "maxmin_to_smu bijection",
        n,
        domain: 2 * domain.len(),
        image: image.len(),
        codomain: codomain.len(),
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn block(values: &[u32]) -> Vec<u32> {
        values.to_vec()
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap_top_two(&p("1324")).unwrap(), p("1423"));
        assert!(swap_top_two(&p("3412")).is_err());
        let set: Vec<_> = smu_set(4);
        assert_eq!(set, vec![p("1324"), p("1423"), p("2314"), p("2413")]);
        let mut orbits = HashSet::new();
        for s in &set {
            let t = swap_top_two(s).unwrap();
            assert_ne!(&t, s);
            let mut pair = [s.clone(), t];
            pair.sort();
            orbits.insert(pair);
        }
        assert_eq!(orbits.len(), 2);
    }

    #[test]
    fn decompose_smu_examples() {
        let d = decompose_smu(&p("14253")).unwrap();
        assert_eq!(d.sizes, [1, 1, 1]);
        assert_eq!(d.landmarks, [2, 4]);
        assert_eq!(d.blocks.iter().map(|b| b.values.clone()).collect::<Vec<_>>(), [block(&[1]), block(&[2]), block(&[3])]);

        let d = decompose_smu(&p("2314")).unwrap();
        assert_eq!(d.sizes, [1, 1, 0]);
        assert_eq!(d.blocks[0].values, [2]);
        assert_eq!(d.blocks[1].values, [1]);
        assert!(d.blocks[2].is_empty());
        assert_eq!(compose_smu(&d).unwrap(), p("2314"));

        assert!(matches!(decompose_smu(&p("1423")), Err(Error::OutsideDomain { .. })));
        assert!(decompose_smu(&p("3412")).is_err());
    }

    #[test]
    fn decompose_maxmin_examples() {
        let d = decompose_maxmin(&p("3412")).unwrap();
        assert_eq!(d.sizes, [1, 0, 1]);
        assert_eq!(d.blocks[0].values, [3]);
        assert!(d.blocks[1].is_empty());
        assert_eq!(d.blocks[2].values, [2]);
        assert!(decompose_maxmin(&p("1324")).is_err());
        assert!(maxmin_set(2).is_empty());
    }

    #[test]
    fn maxmin_to_smu_at_four() {
        assert_eq!(maxmin_to_smu(&p("3412"), false).unwrap(), p("2314"));
        assert_eq!(maxmin_to_smu(&p("3412"), true).unwrap(), p("2413"));
        assert_eq!(maxmin_to_smu(&p("2413"), false).unwrap(), p("1324"));
        assert!(maxmin_to_smu(&p("1324"), false).is_err());
        assert!(maxmin_to_smu(&p("24153"), false).is_err());
    }

    #[test]
    fn compose_rejects_malformed() {
        let mut d = decompose_smu(&p("14253")).unwrap();
        d.blocks[0].pattern = vec![2];
        assert!(matches!(compose_smu(&d), Err(Error::MalformedDecomposition(_))));

        let mut d = decompose_smu(&p("14253")).unwrap();
        d.landmarks = [1, 4];
        assert!(compose_smu(&d).is_err());

        let mut d = decompose_smu(&p("14253")).unwrap();
        d.blocks[2].values = vec![4];
        assert!(compose_smu(&d).is_err());

        let d = decompose_maxmin(&p("3412")).unwrap();
        assert!(compose_smu(&d).is_err());
    }

    #[test]
    fn exhaustive_small_degrees() {
        for n in 4..=7 {
            assert!(check_swap_involution(n).pass, "n={n}");
            assert!(check_smu_round_trip(n).pass, "n={n}");
        }
        let c = check_smu_round_trip(6);
        assert_eq!(c.domain, 28);
        for n in [4, 6] {
            assert!(check_maxmin_round_trip(n).pass);
            let b = check_maxmin_bijection(n);
            assert!(b.pass, "{b:?}");
        }
        assert_eq!(check_maxmin_bijection(6).domain, 56);
    }
}
