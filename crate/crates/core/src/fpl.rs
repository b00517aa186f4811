//! Fully Packed Loop configurations on the `n × n` grid.
//!
//! External half-edges are numbered clockwise from the top of vertex
//! `(0, 0)`: top side left to right, right side top to bottom, bottom side
//! right to left, left side bottom to top. The even-numbered ones are
//! occupied, and occupied terminal `k` is link-pattern position `k / 2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linkpat::{enumerate_patterns, LinkPattern};

pub const MAX_FPL_SIZE: usize = 7;

/// Occupied internal edges; external terminals are fixed by `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FplGrid {
    pub n: usize,
    /// `right[i][j]`: edge `(i, j)`–`(i, j+1)`, for `j < n − 1`.
    pub right: Vec<Vec<bool>>,
    /// `down[i][j]`: edge `(i, j)`–`(i+1, j)`, for `i < n − 1`.
    pub down: Vec<Vec<bool>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

/// Vertex and side of external half-edge `k`.
fn terminal(n: usize, k: usize) -> ((usize, usize), Side) {
    let (s, r) = (k / n, k % n);
    match s {
        0 => ((0, r), Side::Top),
        1 => ((r, n - 1), Side::Right),
        2 => ((n - 1, n - 1 - r), Side::Bottom),
        _ => ((n - 1 - r, 0), Side::Left),
    }
}

fn terminal_index(n: usize, v: (usize, usize), side: Side) -> usize {
    let (i, j) = v;
    match side {
        Side::Top => j,
        Side::Right => n + i,
        Side::Bottom => 2 * n + (n - 1 - j),
        Side::Left => 3 * n + (n - 1 - i),
    }
}

fn external_occupied(n: usize, v: (usize, usize), side: Side) -> bool {
    terminal_index(n, v, side).is_multiple_of(2)
}

impl FplGrid {
    fn degree_ok(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let mut d = 0;
                d += usize::from(if i == 0 { external_occupied(n, (i, j), Side::Top) } else { self.down[i - 1][j] });
                d += usize::from(if i == n - 1 { external_occupied(n, (i, j), Side::Bottom) } else { self.down[i][j] });
                d += usize::from(if j == 0 { external_occupied(n, (i, j), Side::Left) } else { self.right[i][j - 1] });
                d += usize::from(if j == n - 1 { external_occupied(n, (i, j), Side::Right) } else { self.right[i][j] });
                d == 2
            })
        })
    }

    /// Occupied neighbours of a vertex: internal vertices or terminal ids.
    fn exits(&self, (i, j): (usize, usize)) -> Vec<Exit> {
        let n = self.n;
        let mut out = Vec::with_capacity(2);
        let ext = |side: Side, out: &mut Vec<Exit>| {
            if external_occupied(n, (i, j), side) {
                out.push(Exit::Terminal(terminal_index(n, (i, j), side)));
            }
        };
        if i == 0 {
            ext(Side::Top, &mut out);
        } else if self.down[i - 1][j] {
            out.push(Exit::Vertex((i - 1, j)));
        }
        if j == n - 1 {
            ext(Side::Right, &mut out);
        } else if self.right[i][j] {
            out.push(Exit::Vertex((i, j + 1)));
        }
        if i == n - 1 {
            ext(Side::Bottom, &mut out);
        } else if self.down[i][j] {
            out.push(Exit::Vertex((i + 1, j)));
        }
        if j == 0 {
            ext(Side::Left, &mut out);
        } else if self.right[i][j - 1] {
            out.push(Exit::Vertex((i, j - 1)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exit {
    Vertex((usize, usize)),
    Terminal(usize),
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_FPL_SIZE {
        return Err(Error::SizeLimit(format!("FPL enumeration needs 1 ≤ n ≤ {MAX_FPL_SIZE}, got {n}")));
    }
    Ok(())
}

struct Search {
    n: usize,
    grid: FplGrid,
}

fn empty_grid(n: usize) -> FplGrid {
    FplGrid {
        n,
        right: vec![vec![false; n.saturating_sub(1)]; n],
        down: vec![vec![false; n]; n.saturating_sub(1)],
    }
}

/// Calls `visit` on every FPL of size `n`, in a fixed order.
pub fn for_each_fpl(n: usize, mut visit: impl FnMut(&FplGrid)) -> Result<()> {
    check_size(n)?;
    let mut s = Search { n, grid: empty_grid(n) };
    s.run_bounded(0, n * n, &mut visit);
    Ok(())
}

pub fn enumerate_fpl(n: usize) -> Result<Vec<FplGrid>> {
    let mut out = Vec::new();
    for_each_fpl(n, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Pairing of the occupied terminals by the open paths of `g`.
pub fn link_pattern_of(g: &FplGrid) -> Result<LinkPattern> {
    let n = g.n;
    if g.right.len() != n || g.down.len() != n.saturating_sub(1) || !g.degree_ok() {
        return Err(Error::MalformedGrid("vertex degrees are not all 2".into()));
    }
    let mut mate = vec![usize::MAX; 2 * n];
    for k in (0..4 * n).step_by(2) {
        if mate[k / 2] != usize::MAX {
            continue;
        }
        let (mut v, _) = terminal(n, k);
        let mut came = Exit::Terminal(k);
        let end = loop {
            let exits = g.exits(v);
            let next = *exits
                .iter()
                .find(|&&e| e != came)
                .ok_or_else(|| Error::MalformedGrid("dead end".into()))?;
            match next {
                Exit::Terminal(t) => break t,
                Exit::Vertex(w) => {
                    came = Exit::Vertex(v);
                    v = w;
                }
            }
        };
        mate[k / 2] = end / 2;
        mate[end / 2] = k / 2;
    }
    LinkPattern::from_mates(mate)
}

/// Number of FPL per link pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FplCensus {
    pub n: usize,
    pub counts: BTreeMap<String, u64>,
}

impl FplCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, p: &LinkPattern) -> u64 {
        self.counts.get(&p.to_word()).copied().unwrap_or(0)
    }

    /// One `pattern<TAB>count` row per pattern, in pattern order.
    pub fn to_tsv(&self) -> String {
        enumerate_patterns(self.n)
            .iter()
            .map(|p| format!("{}\t{}\n", p.to_word(), self.count(p)))
            .collect()
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        let mut n = 0;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (w, c) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("bad census row `{line}`")))?;
            let p = LinkPattern::from_word(w)?;
            n = p.half_size();
            let c: u64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad count `{c}`")))?;
            if c > 0 {
                counts.insert(p.to_word(), c);
            }
        }
        Ok(FplCensus { n, counts })
    }

    /// Invariance under rotating every pattern by one position.
    pub fn rotation_invariant(&self) -> bool {
        enumerate_patterns(self.n)
            .iter()
            .all(|p| self.count(p) == self.count(&p.rotate(1)))
    }
}

/// Census of all FPL of size `n`, split over the first-row edge choices.
pub fn fpl_counts(n: usize) -> Result<FplCensus> {
    check_size(n)?;
    // enumerate first-row prefixes, then finish each one independently
    let mut prefixes = Vec::new();
    let mut s = Search { n, grid: empty_grid(n) };
    s.run_bounded(0, n, &mut |g: &FplGrid| prefixes.push(g.clone()));
    let parts: Vec<BTreeMap<String, u64>> = prefixes
        .into_par_iter()
        .map(|g| {
            let mut s = Search { n, grid: g };
            let mut local = BTreeMap::new();
            s.run_bounded(n, n * n, &mut |g: &FplGrid| {
                let p = link_pattern_of(g).expect("enumerated grids are valid");
                *local.entry(p.to_word()).or_insert(0) += 1;
            });
            local
        })
        .collect();
    let mut counts = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *counts.entry(k).or_insert(0) += v;
        }
    }
    Ok(FplCensus { n, counts })
}

impl Search {
    /// Row-major placement of the right and down edges of vertices
    /// `v..stop`; `visit` sees the grid once `stop` is reached.
    fn run_bounded(&mut self, v: usize, stop: usize, visit: &mut dyn FnMut(&FplGrid)) {
        if v == stop {
            visit(&self.grid);
            return;
        }
        let n = self.n;
        let (i, j) = (v / n, v % n);
        let up = if i == 0 { external_occupied(n, (i, j), Side::Top) } else { self.grid.down[i - 1][j] };
        let left = if j == 0 { external_occupied(n, (i, j), Side::Left) } else { self.grid.right[i][j - 1] };
        let have = usize::from(up) + usize::from(left);
        for r in [false, true] {
            if j == n - 1 && r != external_occupied(n, (i, j), Side::Right) {
                continue;
            }
            for d in [false, true] {
                if i == n - 1 && d != external_occupied(n, (i, j), Side::Bottom) {
                    continue;
                }
                if have + usize::from(r) + usize::from(d) != 2 {
                    continue;
                }
                if j < n - 1 {
                    self.grid.right[i][j] = r;
                }
                if i < n - 1 {
                    self.grid.down[i][j] = d;
                }
                self.run_bounded(v + 1, stop, visit);
            }
        }
        if j < n - 1 {
            self.grid.right[i][j] = false;
        }
        if i < n - 1 {
            self.grid.down[i][j] = false;
        }
    }
}

/// `A_n = ∏_{k<n} (3k+1)! / (n+k)!`.
pub fn asm_count(n: usize) -> BigInt {
    let fact = |m: usize| (1..=m).fold(BigInt::one(), |acc, k| acc * k);
    let (num, den) = (0..n).fold((BigInt::one(), BigInt::one()), |(p, q), k| {
        (p * fact(3 * k + 1), q * fact(n + k))
    });
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkpat::{nested_pattern, NestedArchSpec};
    use crate::nested::macmahon;

    #[test]
    fn small_totals() {
        assert_eq!(enumerate_fpl(1).unwrap().len(), 1);
        assert_eq!(enumerate_fpl(3).unwrap().len(), 7);
        for n in 1..=5 {
            assert_eq!(BigInt::from(fpl_counts(n).unwrap().total()), asm_count(n));
        }
        assert_eq!(asm_count(6), BigInt::from(7436));
    }

    #[test]
    fn one_arch() {
        let g = &enumerate_fpl(1).unwrap()[0];
        assert_eq!(link_pattern_of(g).unwrap().to_word(), "()");
    }

    #[test]
    fn census_three() {
        let c = fpl_counts(3).unwrap();
        let mut v: Vec<u64> = enumerate_patterns(3).iter().map(|p| c.count(p)).collect();
        v.sort();
        assert_eq!(v, vec![1, 1, 1, 2, 2]);
        let three = nested_pattern(NestedArchSpec::new(1, 1, 1)).unwrap();
        assert_eq!(c.count(&three), 2);
        assert!(c.rotation_invariant());
    }

    #[test]
    fn nested_counts_are_macmahon() {
        for n in 2..=5usize {
            let c = fpl_counts(n).unwrap();
            for a in 0..=n {
                for b in 0..=n - a {
                    let spec = NestedArchSpec::new(a, b, n - a - b);
                    let p = nested_pattern(spec).unwrap();
                    assert_eq!(BigInt::from(c.count(&p)), macmahon(a, b, n - a - b), "{spec:?}");
                }
            }
        }
    }

    #[test]
    fn tsv_round_trip() {
        let c = fpl_counts(4).unwrap();
        assert_eq!(FplCensus::from_tsv(&c.to_tsv()).unwrap(), c);
    }

    #[test]
    fn malformed_and_limits() {
        let mut g = enumerate_fpl(2).unwrap()[0].clone();
        g.right[0][0] = !g.right[0][0];
        assert!(matches!(link_pattern_of(&g), Err(Error::MalformedGrid(_))));
        assert!(matches!(enumerate_fpl(8), Err(Error::SizeLimit(_))));
        assert!(matches!(enumerate_fpl(0), Err(Error::SizeLimit(_))));
    }
}
