//! Non-crossing link patterns on `2n` points of a circle.
//!
//! Positions are 0-based in code: position `p` here is point `p + 1` when
//! counting points from 1. Points run counterclockwise, point 0 carries
//! the spectral parameter `z_1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    mate: Vec<usize>,
}

impl LinkPattern {
    /// Validates that `mate` is a fixed-point-free involution without crossings.
    pub fn from_mates(mate: Vec<usize>) -> Result<Self> {
        let m = mate.len();
        if !m.is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!("odd number of points {m}")));
        }
        for (i, &j) in mate.iter().enumerate() {
            if j >= m || j == i || mate[j] != i {
                return Err(Error::InvalidSpec(format!("mate table is not a pairing at {i}")));
            }
        }
        // non-crossing iff the arches nest like parentheses
        let mut stack = Vec::new();
        for (i, &j) in mate.iter().enumerate() {
            if j > i {
                stack.push(i);
            } else if stack.pop() != Some(j) {
                return Err(Error::InvalidSpec("crossing arches".into()));
            }
        }
        Ok(LinkPattern { mate })
    }

    pub fn empty() -> Self {
        LinkPattern { mate: Vec::new() }
    }

    /// Number of points `2n`.
    pub fn size(&self) -> usize {
        self.mate.len()
    }

    /// Number of arches `n`.
    pub fn half_size(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn mate(&self, i: usize) -> usize {
        self.mate[i]
    }

    pub fn mates(&self) -> &[usize] {
        &self.mate
    }

    /// Parenthesis word, `(` at the smaller end of each arch.
    pub fn to_word(&self) -> String {
        self.mate
            .iter()
            .enumerate()
            .map(|(i, &j)| if j > i { '(' } else { ')' })
            .collect()
    }

    pub fn from_word(word: &str) -> Result<Self> {
        let mut mate = vec![usize::MAX; word.len()];
        let mut stack = Vec::new();
        for (i, ch) in word.chars().enumerate() {
            match ch {
                '(' => stack.push(i),
                ')' => {
                    let j = stack
                        .pop()
                        .ok_or_else(|| Error::Parse(format!("unbalanced word `{word}`")))?;
                    mate[i] = j;
                    mate[j] = i;
                }
                _ => return Err(Error::Parse(format!("bad character `{ch}` in `{word}`"))),
            }
        }
        if !stack.is_empty() {
            return Err(Error::Parse(format!("unbalanced word `{word}`")));
        }
        Ok(LinkPattern { mate })
    }

    /// Positions `i` with an arch joining `i` and `i + 1` (cyclically).
    pub fn little_arches(&self) -> Vec<usize> {
        let m = self.size();
        (0..m).filter(|&i| self.mate[i] == (i + 1) % m).collect()
    }

    pub fn has_little_arch(&self, i: usize) -> bool {
        let m = self.size();
        m > 0 && self.mate[i % m] == (i + 1) % m
    }

    /// Removes the little arch `(i, i+1)`; the remaining points keep their
    /// cyclic order and are renumbered starting after the removed pair when
    /// the arch wraps around, otherwise in place.
    pub fn remove_little_arch(&self, i: usize) -> Result<LinkPattern> {
        let m = self.size();
        if i >= m || !self.has_little_arch(i) {
            return Err(Error::NoLittleArch(i));
        }
        let j = (i + 1) % m;
        let kept: Vec<usize> = (0..m).filter(|&p| p != i && p != j).collect();
        let mut index = vec![usize::MAX; m];
        for (new, &old) in kept.iter().enumerate() {
            index[old] = new;
        }
        let mate = kept.iter().map(|&p| index[self.mate[p]]).collect();
        Ok(LinkPattern { mate })
    }

    /// Inverse of [`remove_little_arch`](Self::remove_little_arch) for a
    /// non-wrapping arch: inserts an arch on new positions `(i, i+1)`.
    pub fn insert_little_arch(&self, i: usize) -> LinkPattern {
        assert!(i <= self.size());
        let shift = |p: usize| if p >= i { p + 2 } else { p };
        let mut mate = vec![0; self.size() + 2];
        for (p, &q) in self.mate.iter().enumerate() {
            mate[shift(p)] = shift(q);
        }
        mate[i] = i + 1;
        mate[i + 1] = i;
        LinkPattern { mate }
    }

    /// Rotation by `k` positions: point `p` becomes point `p + k`.
    pub fn rotate(&self, k: usize) -> LinkPattern {
        let m = self.size();
        if m == 0 {
            return self.clone();
        }
        let mut mate = vec![0; m];
        for p in 0..m {
            mate[(p + k) % m] = (self.mate[p] + k) % m;
        }
        LinkPattern { mate }
    }

    /// Mirror image `p ↦ 2n − 1 − p`.
    pub fn reflect(&self) -> LinkPattern {
        let m = self.size();
        let mate = (0..m).map(|p| m - 1 - self.mate[m - 1 - p]).collect();
        LinkPattern { mate }
    }

    /// Maximal cyclic runs of consecutive points with no little arch between
    /// neighbours, each listed in cyclic order from its first point.
    pub fn unlinked_runs(&self) -> Vec<Vec<usize>> {
        let m = self.size();
        let cuts = self.little_arches();
        let Some(&first) = cuts.first() else {
            return if m == 0 { vec![] } else { vec![(0..m).collect()] };
        };
        let mut runs = Vec::new();
        let mut current = Vec::new();
        let start = (first + 1) % m;
        for step in 0..m {
            let p = (start + step) % m;
            current.push(p);
            if self.has_little_arch(p) {
                runs.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            runs.push(current);
        }
        runs
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl FromStr for LinkPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LinkPattern::from_word(s.trim())
    }
}

impl Serialize for LinkPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_word())
    }
}

impl<'de> Deserialize<'de> for LinkPattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LinkPattern::from_word(&s).map_err(serde::de::Error::custom)
    }
}

/// All non-crossing perfect matchings of `2n` points, sorted
/// lexicographically by mate table.
pub fn enumerate_patterns(n: usize) -> Vec<LinkPattern> {
    // matchings of the contiguous range lo..hi
    fn matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in (lo + 1..hi).step_by(2) {
            let inner = matchings(lo + 1, k);
            let outer = matchings(k + 1, hi);
            for i in &inner {
                for o in &outer {
                    let mut m = Vec::with_capacity(i.len() + o.len() + 1);
                    m.push((lo, k));
                    m.extend_from_slice(i);
                    m.extend_from_slice(o);
                    out.push(m);
                }
            }
        }
        out
    }
    let mut pats: Vec<LinkPattern> = matchings(0, 2 * n)
        .into_iter()
        .map(|arches| {
            let mut mate = vec![0; 2 * n];
            for (i, j) in arches {
                mate[i] = j;
                mate[j] = i;
            }
            LinkPattern { mate }
        })
        .collect();
    pats.sort();
    pats
}

pub fn catalan(n: usize) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k as u64 + 1) / (k as u64 + 2))
}

/// Three fans of `a`, `b`, `c` nested arches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NestedArchSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl NestedArchSpec {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        NestedArchSpec { a, b, c }
    }

    pub fn n(&self) -> usize {
        self.a + self.b + self.c
    }

    /// Sizes of the alpha, beta and gamma blocks.
    pub fn block_sizes(&self) -> [usize; 3] {
        [self.b + self.c, self.a + self.c, self.a + self.b]
    }

    /// First position of the alpha, beta and gamma blocks.
    pub fn block_starts(&self) -> [usize; 3] {
        [0, self.b + self.c, self.a + self.b + 2 * self.c]
    }
}

/// Pairs the last `k` points of `earlier` with the first `k` of `later`, nested.
fn pair_nested(mate: &mut [usize], earlier: &[usize], later: &[usize]) {
    debug_assert_eq!(earlier.len(), later.len());
    let k = earlier.len();
    for j in 0..k {
        mate[earlier[j]] = later[k - 1 - j];
        mate[later[k - 1 - j]] = earlier[j];
    }
}

/// The pattern with `c` arches alpha–beta, `a` arches beta–gamma and `b`
/// arches gamma–alpha; alpha occupies positions `0..b+c`, beta the next
/// `a+c`, gamma the last `a+b`.
pub fn nested_pattern(spec: NestedArchSpec) -> Result<LinkPattern> {
    let NestedArchSpec { a, b, c } = spec;
    let n = spec.n();
    if n == 0 {
        return Err(Error::InvalidSpec("a + b + c must be positive".into()));
    }
    let [sa, sb, _] = spec.block_starts();
    let alpha: Vec<usize> = (sa..sa + b + c).collect();
    let beta: Vec<usize> = (sb..sb + a + c).collect();
    let gamma: Vec<usize> = (sb + a + c..2 * n).collect();
    let mut mate = vec![usize::MAX; 2 * n];
    pair_nested(&mut mate, &alpha[b..], &beta[..c]);
    pair_nested(&mut mate, &beta[c..], &gamma[..a]);
    pair_nested(&mut mate, &alpha[..b], &gamma[a..]);
    LinkPattern::from_mates(mate)
}

/// Pattern with four little arches `(a,b|e|c,d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourArchSpec {
    pub a: usize,
    pub b: usize,
    pub e: usize,
    pub c: usize,
    pub d: usize,
}

impl FourArchSpec {
    pub fn new(a: usize, b: usize, e: usize, c: usize, d: usize) -> Self {
        FourArchSpec { a, b, e, c, d }
    }

    pub fn n(&self) -> usize {
        self.a + self.b + self.c + self.d + self.e
    }

    /// Sizes of the x, y, z, t blocks.
    pub fn block_sizes(&self) -> [usize; 4] {
        let FourArchSpec { a, b, e, c, d } = *self;
        [a + b, b + e + c, c + d, d + e + a]
    }
}

/// Four blocks x, y, z, t in counterclockwise order with `b` arches x–y,
/// `c` arches y–z, `d` arches z–t, `a` arches t–x and `e` arches joining
/// the middles of y and t.
///
/// Provisional layout: it has the block sizes forced by the degree bounds of
/// the matching tiling partition function; see the FPL cross-checks.
pub fn four_arch_pattern(spec: FourArchSpec) -> Result<LinkPattern> {
    let FourArchSpec { a, b, e, c, d } = spec;
    let n = spec.n();
    if n == 0 {
        return Err(Error::InvalidSpec("four-arch pattern needs n > 0".into()));
    }
    let [sx, sy, sz, _] = spec.block_sizes();
    let x: Vec<usize> = (0..sx).collect();
    let y: Vec<usize> = (sx..sx + sy).collect();
    let z: Vec<usize> = (sx + sy..sx + sy + sz).collect();
    let t: Vec<usize> = (sx + sy + sz..2 * n).collect();
    let mut mate = vec![usize::MAX; 2 * n];
    pair_nested(&mut mate, &x[a..], &y[..b]);
    pair_nested(&mut mate, &y[b..b + e], &t[d..d + e]);
    pair_nested(&mut mate, &y[b + e..], &z[..c]);
    pair_nested(&mut mate, &z[c..], &t[..d]);
    pair_nested(&mut mate, &x[..a], &t[d + e..]);
    LinkPattern::from_mates(mate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial_catalan(n: u64) -> u64 {
        // (2n)! / (n! (n+1)!) computed in u128
        let f = |k: u64| (1..=k).map(u128::from).product::<u128>();
        (f(2 * n) / (f(n) * f(n + 1))) as u64
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_patterns(1).len(), 1);
        for n in 1..=8 {
            let pats = enumerate_patterns(n);
            assert_eq!(pats.len() as u64, factorial_catalan(n as u64));
            assert_eq!(catalan(n), factorial_catalan(n as u64));
            let mut words: Vec<String> = pats.iter().map(|p| p.to_word()).collect();
            words.dedup();
            assert_eq!(words.len(), pats.len());
            for p in &pats {
                assert!(LinkPattern::from_mates(p.mates().to_vec()).is_ok());
            }
        }
        assert_eq!(enumerate_patterns(3).len(), 5);
        assert_eq!(enumerate_patterns(6).len(), 132);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let pats = enumerate_patterns(4);
        assert!(pats.windows(2).all(|w| w[0].mates() < w[1].mates()));
    }

    #[test]
    fn three_little_arches() {
        let p = nested_pattern(NestedArchSpec::new(1, 1, 1)).unwrap();
        // 1-based (2,3),(4,5),(6,1)
        assert_eq!(p.mates(), &[5, 2, 1, 4, 3, 0]);
        assert_eq!(p.little_arches(), vec![1, 3, 5]);
    }

    #[test]
    fn degenerate_fans() {
        let p = nested_pattern(NestedArchSpec::new(3, 0, 0)).unwrap();
        // the outermost arch joins the cyclic neighbours 2n and 1
        assert_eq!(p.little_arches(), vec![2, 5]);
        assert_eq!(p.to_word(), "((()))");
        assert!(nested_pattern(NestedArchSpec::new(0, 0, 0)).is_err());
        // base pattern with two fans
        let base = nested_pattern(NestedArchSpec::new(1, 1, 0)).unwrap();
        assert_eq!(base.mates(), &[3, 2, 1, 0]);
    }

    #[test]
    fn removing_inner_arch_lowers_c() {
        for (a, b, c) in [(1, 1, 1), (2, 1, 3), (0, 2, 2), (3, 0, 1)] {
            let p = nested_pattern(NestedArchSpec::new(a, b, c)).unwrap();
            let r = p.remove_little_arch(b + c - 1).unwrap();
            assert_eq!(r, nested_pattern(NestedArchSpec::new(a, b, c - 1)).unwrap());
        }
        let single = nested_pattern(NestedArchSpec::new(1, 0, 0)).unwrap();
        assert_eq!(single.remove_little_arch(0).unwrap(), LinkPattern::empty());
        assert_eq!(single.remove_little_arch(1).unwrap(), LinkPattern::empty());
        assert!(matches!(
            nested_pattern(NestedArchSpec::new(2, 0, 0)).unwrap().remove_little_arch(0),
            Err(Error::NoLittleArch(0))
        ));
    }

    #[test]
    fn insert_then_remove() {
        for p in enumerate_patterns(4) {
            for i in 0..=p.size() {
                let q = p.insert_little_arch(i);
                assert!(LinkPattern::from_mates(q.mates().to_vec()).is_ok());
                assert_eq!(q.remove_little_arch(i).unwrap(), p);
            }
        }
    }

    #[test]
    fn words_round_trip() {
        for p in enumerate_patterns(5) {
            assert_eq!(LinkPattern::from_word(&p.to_word()).unwrap(), p);
        }
        assert!(LinkPattern::from_word("(()").is_err());
        assert!(LinkPattern::from_word("())(").is_err());
    }

    #[test]
    fn runs_of_nested_pattern() {
        let p = nested_pattern(NestedArchSpec::new(2, 1, 1)).unwrap();
        let runs = p.unlinked_runs();
        let mut sizes: Vec<usize> = runs.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3, 3]);
        // with b = 0 the gamma and alpha blocks merge across the wrap
        let p = nested_pattern(NestedArchSpec::new(1, 0, 1)).unwrap();
        assert_eq!(p.unlinked_runs(), vec![vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn four_arch_has_four_little_arches() {
        for spec in [
            FourArchSpec::new(1, 1, 0, 1, 1),
            FourArchSpec::new(1, 1, 1, 1, 1),
            FourArchSpec::new(3, 4, 2, 2, 1),
            FourArchSpec::new(2, 1, 3, 1, 2),
        ] {
            let p = four_arch_pattern(spec).unwrap();
            assert_eq!(p.half_size(), spec.n());
            assert_eq!(p.little_arches().len(), 4, "{spec:?}");
        }
    }

    #[test]
    fn rotation_and_reflection_preserve_validity() {
        for p in enumerate_patterns(4) {
            assert!(LinkPattern::from_mates(p.rotate(3).mates().to_vec()).is_ok());
            assert_eq!(p.reflect().reflect(), p);
            assert_eq!(p.rotate(p.size()), p);
        }
    }
}
