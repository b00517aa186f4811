//! Weighted lozenge tilings of triangular-lattice regions.
//!
//! Up triangle `U(x, y)` has vertices `(x, y), (x+1, y), (x, y+1)` and down
//! triangle `D(x, y)` has `(x+1, y), (x, y+1), (x+1, y+1)`. Every triangle
//! carries one line per direction: direction 0 is constant `y`, direction 1
//! constant `x`, direction 2 constant `x + y`. Two geometric neighbours
//! share the lines of the two directions not crossed by their common edge,
//! and the lozenge they form has weight `f(u, v)` for the ordered pair
//!
//! | common edge           | `(u, v)`             |
//! |-----------------------|----------------------|
//! | `U(x,y)`–`D(x,y)`     | (dir 0, dir 1)       |
//! | `U(x,y)`–`D(x,y−1)`   | (dir 2, dir 1)       |
//! | `U(x,y)`–`D(x−1,y)`   | (dir 0, dir 2)       |
//!
//! with `f(u, v) = u − v` or `q u − q⁻¹ v`. Identified edges are extra
//! adjacencies with explicitly given lines.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linkpat::NestedArchSpec;
use crate::nested::ParamSet;
use crate::scalar::{CubeRootField, Field};
use crate::CycloNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triangle {
    pub kind: Kind,
    pub x: i32,
    pub y: i32,
}

impl Triangle {
    pub fn up(x: i32, y: i32) -> Self {
        Triangle { kind: Kind::Up, x, y }
    }

    pub fn down(x: i32, y: i32) -> Self {
        Triangle { kind: Kind::Down, x, y }
    }

    /// Scan order: by row, then column, up before down.
    fn scan_key(&self) -> (i32, i32, Kind) {
        (self.y, self.x, self.kind)
    }
}

/// A line of the parameter family `family`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LineRef {
    pub family: usize,
    pub index: usize,
}

/// Which of the two triangles' common lines goes first in the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Adjacency {
    pub up: usize,
    pub down: usize,
    pub u: LineRef,
    pub v: LineRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Difference,
    QDifference,
}

/// Triangles with their lines, parameter families, and adjacencies.
#[derive(Clone, Debug)]
pub struct TilingRegion<F> {
    triangles: Vec<Triangle>,
    lines: Vec<[LineRef; 3]>,
    pub families: Vec<(String, Vec<F>)>,
    adjacencies: Vec<Adjacency>,
    /// Per triangle: adjacency ids touching it.
    incident: Vec<Vec<usize>>,
}

/// A tiling, as the sorted list of adjacency ids used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tiling {
    pub lozenges: Vec<usize>,
}

impl<F: Field> TilingRegion<F> {
    /// Builds a region from triangles (with their three lines), parameter
    /// families and glued pairs `(up, down, u, v)`. Dented triangles are
    /// simply left out.
    pub fn new(
        cells: Vec<(Triangle, [LineRef; 3])>,
        families: Vec<(String, Vec<F>)>,
        glued: &[(Triangle, Triangle, LineRef, LineRef)],
    ) -> Result<Self> {
        let mut cells = cells;
        cells.sort_by_key(|(t, _)| t.scan_key());
        let index: HashMap<Triangle, usize> = cells.iter().enumerate().map(|(k, (t, _))| (*t, k)).collect();
        if index.len() != cells.len() {
            return Err(Error::InconsistentSize("repeated triangle".into()));
        }
        let (triangles, lines): (Vec<_>, Vec<_>) = cells.into_iter().unzip();
        for ls in &lines {
            for l in ls {
                if l.family >= families.len() || l.index >= families[l.family].1.len() {
                    return Err(Error::InconsistentSize(format!("line {l:?} has no parameter")));
                }
            }
        }
        let mut adjacencies = Vec::new();
        for (k, t) in triangles.iter().enumerate() {
            if t.kind != Kind::Up {
                continue;
            }
            let (x, y) = (t.x, t.y);
            let l = &lines[k];
            for (nb, (du, dv)) in [
                (Triangle::down(x, y), (0, 1)),
                (Triangle::down(x, y - 1), (2, 1)),
                (Triangle::down(x - 1, y), (0, 2)),
            ] {
                if let Some(&j) = index.get(&nb) {
                    adjacencies.push(Adjacency { up: k, down: j, u: l[du], v: l[dv] });
                }
            }
        }
        for &(up, down, u, v) in glued {
            let (Some(&i), Some(&j)) = (index.get(&up), index.get(&down)) else {
                return Err(Error::InconsistentSize(format!("glued pair {up:?} {down:?} outside region")));
            };
            if up.kind != Kind::Up || down.kind != Kind::Down {
                return Err(Error::InconsistentSize("glued pairs join an up to a down triangle".into()));
            }
            adjacencies.push(Adjacency { up: i, down: j, u, v });
        }
        let mut incident = vec![Vec::new(); triangles.len()];
        for (e, a) in adjacencies.iter().enumerate() {
            incident[a.up].push(e);
            incident[a.down].push(e);
        }
        Ok(TilingRegion {
            triangles,
            lines,
            families,
            adjacencies,
            incident,
        })
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn lines_of(&self, k: usize) -> [LineRef; 3] {
        self.lines[k]
    }

    pub fn adjacencies(&self) -> &[Adjacency] {
        &self.adjacencies
    }

    pub fn position(&self, t: Triangle) -> Option<usize> {
        self.triangles.iter().position(|s| *s == t)
    }

    pub fn param(&self, l: LineRef) -> &F {
        &self.families[l.family].1[l.index]
    }

    pub fn family(&self, name: &str) -> Option<usize> {
        self.families.iter().position(|(n, _)| n == name)
    }

    fn balanced(&self) -> bool {
        let ups = self.triangles.iter().filter(|t| t.kind == Kind::Up).count();
        2 * ups == self.triangles.len()
    }

    /// Calls `visit` with the adjacency ids of every tiling, in a fixed order.
    pub fn for_each_tiling(&self, mut visit: impl FnMut(&[usize])) {
        if !self.balanced() {
            return;
        }
        let mut covered = vec![false; self.triangles.len()];
        let mut stack = Vec::with_capacity(self.triangles.len() / 2);
        self.search(0, &mut covered, &mut stack, &mut visit);
    }

    fn search(&self, from: usize, covered: &mut [bool], stack: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        let Some(first) = (from..covered.len()).find(|&k| !covered[k]) else {
            visit(stack);
            return;
        };
        covered[first] = true;
        for &e in &self.incident[first] {
            let a = &self.adjacencies[e];
            let other = if a.up == first { a.down } else { a.up };
            if covered[other] {
                continue;
            }
            covered[other] = true;
            stack.push(e);
            self.search(first + 1, covered, stack, visit);
            stack.pop();
            covered[other] = false;
        }
        covered[first] = false;
    }

    pub fn enumerate_tilings(&self) -> Vec<Tiling> {
        let mut out = Vec::new();
        self.for_each_tiling(|s| {
            let mut lozenges = s.to_vec();
            lozenges.sort_unstable();
            out.push(Tiling { lozenges });
        });
        out
    }

    pub fn count_tilings(&self) -> u64 {
        let mut n = 0;
        self.for_each_tiling(|_| n += 1);
        n
    }

    /// `Σ_tilings ∏_lozenges f(u, v)`.
    pub fn partition_function_with(&self, f: impl Fn(&F, &F) -> F) -> F {
        let weights: Vec<F> = self
            .adjacencies
            .iter()
            .map(|a| f(self.param(a.u), self.param(a.v)))
            .collect();
        let mut total = F::zero();
        self.for_each_tiling(|s| {
            total += s.iter().fold(F::one(), |acc, &e| acc * &weights[e]);
        });
        total
    }

    pub fn difference_partition_function(&self) -> F {
        self.partition_function_with(|u, v| u.clone() - v)
    }

    /// The same region with two lines of one family exchanged.
    pub fn with_swapped(&self, family: usize, i: usize, j: usize) -> Self {
        let mut r = self.clone();
        r.families[family].1.swap(i, j);
        r
    }

    /// Reorders the geometric adjacencies so that `v` is always the line at
    /// `+π/3` from `u`: pairs (dir 0, dir 1), (dir 1, dir 2), (dir 2, dir 0).
    /// Glued adjacencies keep their given order.
    pub fn with_cyclic_orientation(mut self) -> Self {
        for a in &mut self.adjacencies {
            let (u, d) = (self.triangles[a.up], self.triangles[a.down]);
            if (d.x, d.y) == (u.x, u.y - 1) || (d.x, d.y) == (u.x - 1, u.y) {
                std::mem::swap(&mut a.u, &mut a.v);
            }
        }
        self
    }

    /// Every tiling uses each triangle exactly once.
    pub fn is_tiling(&self, t: &Tiling) -> bool {
        let mut seen = vec![false; self.triangles.len()];
        for &e in &t.lozenges {
            let Some(a) = self.adjacencies.get(e) else {
                return false;
            };
            for k in [a.up, a.down] {
                if std::mem::replace(&mut seen[k], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl<F: CubeRootField> TilingRegion<F> {
    pub fn partition_function(&self, mode: WeightMode) -> F {
        match mode {
            WeightMode::Difference => self.difference_partition_function(),
            WeightMode::QDifference => {
                let q = F::omega();
                let qi = F::omega_pow(-1);
                self.partition_function_with(|u, v| q.clone() * u - qi.clone() * v)
            }
        }
    }
}

pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;

fn line(family: usize, index: i32) -> LineRef {
    LineRef {
        family,
        index: index as usize,
    }
}

/// Triangles of the `a × b × c` hexagon
/// `{0 ≤ y ≤ b+c, −c ≤ x ≤ a, 0 ≤ x+y ≤ a+b}` with their lines:
/// `α_y`, `β_{x+c}`, and `γ_{x+y}` (up) or `γ_{x+y+1}` (down).
pub fn hexagon_cells(a: usize, b: usize, c: usize) -> Vec<(Triangle, [LineRef; 3])> {
    let (a, b, c) = (a as i32, b as i32, c as i32);
    let mut cells = Vec::new();
    for y in 0..b + c {
        for x in -c..a {
            if x + y >= 0 && x + y < a + b {
                cells.push((Triangle::up(x, y), [line(ALPHA, y), line(BETA, x + c), line(GAMMA, x + y)]));
            }
            if x + y + 1 >= 0 && x + y + 2 <= a + b {
                cells.push((Triangle::down(x, y), [line(ALPHA, y), line(BETA, x + c), line(GAMMA, x + y + 1)]));
            }
        }
    }
    cells
}

/// Hexagon with `α` on its `b+c` horizontal lines, `β` on its `a+c`
/// vertical lines and `γ` on its `a+b` diagonal lines.
pub fn build_hexagon<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<TilingRegion<F>> {
    let NestedArchSpec { a, b, c } = spec;
    if spec.n() == 0 {
        return Err(Error::InvalidSpec("a + b + c must be positive".into()));
    }
    if p.alphas.len() != b + c || p.betas.len() != a + c || p.gammas.len() != a + b {
        return Err(Error::InconsistentSize(format!("parameters do not fit the {a}×{b}×{c} hexagon")));
    }
    TilingRegion::new(
        hexagon_cells(a, b, c),
        vec![
            ("alpha".into(), p.alphas.clone()),
            ("beta".into(), p.betas.clone()),
            ("gamma".into(), p.gammas.clone()),
        ],
        &[],
    )
}

/// Unweighted hexagon, for counting.
pub fn hexagon_count(a: usize, b: usize, c: usize) -> u64 {
    if a + b + c == 0 {
        return 1;
    }
    let ones = |k: usize| vec![0i64; k];
    let p = ParamSet {
        alphas: ones(b + c),
        betas: ones(a + c),
        gammas: ones(a + b),
    };
    let r = TilingRegion::new(
        hexagon_cells(a, b, c),
        vec![
            ("alpha".into(), p.alphas.iter().map(|_| num_rational::BigRational::zero()).collect()),
            ("beta".into(), p.betas.iter().map(|_| num_rational::BigRational::zero()).collect()),
            ("gamma".into(), p.gammas.iter().map(|_| num_rational::BigRational::zero()).collect()),
        ],
        &[],
    )
    .expect("hexagon is well formed");
    r.count_tilings()
}

/// Lozenge type seen from the up triangle of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    /// `α–γ` lozenge, next up triangle at `x − 1`.
    AlphaGamma,
    /// `γ–β` lozenge, next up triangle at `y − 1`.
    GammaBeta,
}

/// `c` non-intersecting paths; path `k` starts at `U(a−1−k, b+k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NipFamily {
    pub starts: Vec<(i32, i32)>,
    pub paths: Vec<Vec<Step>>,
}

fn hexagon_dims<F: Field>(r: &TilingRegion<F>) -> Result<(usize, usize, usize)> {
    let sizes = |k: usize| r.families.get(k).map(|f| f.1.len());
    match (sizes(ALPHA), sizes(BETA), sizes(GAMMA), r.families.len()) {
        (Some(na), Some(nb), Some(ng), 3) if (na + nb + ng) % 2 == 0 && na + nb >= ng => {
            let c = (na + nb - ng) / 2;
            if na < c || nb < c {
                return Err(Error::InconsistentSize("not a hexagon".into()));
            }
            Ok((nb - c, na - c, c))
        }
        _ => Err(Error::InconsistentSize("not a hexagon".into())),
    }
}

/// The paths through the `α–γ` and `γ–β` lozenges of a hexagon tiling.
pub fn nip_extract<F: Field>(t: &Tiling, r: &TilingRegion<F>) -> Result<NipFamily> {
    let (a, b, c) = hexagon_dims(r)?;
    let mut partner: HashMap<Triangle, Triangle> = HashMap::new();
    for &e in &t.lozenges {
        let adj = &r.adjacencies[e];
        partner.insert(r.triangles[adj.up], r.triangles[adj.down]);
    }
    let mut starts = Vec::new();
    let mut paths = Vec::new();
    for k in 0..c as i32 {
        let (mut x, mut y) = (a as i32 - 1 - k, b as i32 + k);
        starts.push((x, y));
        let mut steps = Vec::new();
        while x + y >= 0 {
            let d = partner
                .get(&Triangle::up(x, y))
                .ok_or_else(|| Error::InconsistentSize("path leaves the hexagon".into()))?;
            if *d == Triangle::down(x - 1, y) {
                steps.push(Step::AlphaGamma);
                x -= 1;
            } else if *d == Triangle::down(x, y - 1) {
                steps.push(Step::GammaBeta);
                y -= 1;
            } else {
                return Err(Error::InconsistentSize("path meets an α–β lozenge".into()));
            }
        }
        paths.push(steps);
    }
    Ok(NipFamily { starts, paths })
}

/// Inverse of [`nip_extract`]: path lozenges as recorded, every other up
/// triangle paired with the down triangle to its right.
pub fn tiling_from_paths<F: Field>(nip: &NipFamily, r: &TilingRegion<F>) -> Result<Tiling> {
    let mut chosen: BTreeMap<usize, usize> = BTreeMap::new();
    let find = |up: Triangle, down: Triangle| -> Result<(usize, usize)> {
        let i = r.position(up).ok_or_else(|| Error::InconsistentSize(format!("{up:?} outside region")))?;
        let j = r.position(down).ok_or_else(|| Error::InconsistentSize(format!("{down:?} outside region")))?;
        let e = r
            .adjacencies
            .iter()
            .position(|a| a.up == i && a.down == j)
            .ok_or_else(|| Error::InconsistentSize("no such lozenge".into()))?;
        Ok((i, e))
    };
    for (&(mut x, mut y), steps) in nip.starts.iter().zip(&nip.paths) {
        for s in steps {
            let down = match s {
                Step::AlphaGamma => Triangle::down(x - 1, y),
                Step::GammaBeta => Triangle::down(x, y - 1),
            };
            let (i, e) = find(Triangle::up(x, y), down)?;
            chosen.insert(i, e);
            match s {
                Step::AlphaGamma => x -= 1,
                Step::GammaBeta => y -= 1,
            }
        }
    }
    for (k, t) in r.triangles.iter().enumerate() {
        if t.kind == Kind::Up && !chosen.contains_key(&k) {
            let (_, e) = find(*t, Triangle::down(t.x, t.y))?;
            chosen.insert(k, e);
        }
    }
    let mut lozenges: Vec<usize> = chosen.into_values().collect();
    lozenges.sort_unstable();
    let tiling = Tiling { lozenges };
    if !r.is_tiling(&tiling) {
        return Err(Error::InconsistentSize("paths do not determine a tiling".into()));
    }
    Ok(tiling)
}

/// `∏ (α_i − β_j)` over 1-based `c < i + j ≤ a + b + c`, where `i`, `j`
/// count lines from the far corner (the hexagon labels run the other way).
pub fn partfun_prefactor<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> F {
    let NestedArchSpec { a, b, c } = spec;
    let mut out = F::one();
    for (i, al) in p.alphas.iter().rev().enumerate() {
        for (j, be) in p.betas.iter().rev().enumerate() {
            let s = i + j + 2;
            if s > c && s <= a + b + c {
                out *= al.clone() - be;
            }
        }
    }
    out
}

/// Sum over path families of the products of step probabilities
/// `(α_i − γ_k)/(α_i − β_j)` and `(γ_k − β_j)/(α_i − β_j)`, with `i + j = k + c`.
pub fn path_weight_sum<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<F> {
    let r = build_hexagon(spec, p)?;
    let c = spec.c as i32;
    let mut total = F::zero();
    for t in r.enumerate_tilings() {
        let nip = nip_extract(&t, &r)?;
        let mut w = F::one();
        for (&(mut x, mut y), steps) in nip.starts.iter().zip(&nip.paths) {
            for s in steps {
                let al = &p.alphas[y as usize];
                let be = &p.betas[(x + c) as usize];
                let ga = &p.gammas[(x + y) as usize];
                let den = (al.clone() - be).inv().ok_or(Error::PoleCollision)?;
                match s {
                    Step::AlphaGamma => {
                        w *= (al.clone() - ga) * den;
                        x -= 1;
                    }
                    Step::GammaBeta => {
                        w *= (ga.clone() - be) * den;
                        y -= 1;
                    }
                }
            }
        }
        total += w;
    }
    Ok(total)
}

/// Whether `Z = prefactor · Σ_paths` on this hexagon.
pub fn check_partfun_factorization<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<bool> {
    let z = build_hexagon(spec, p)?.difference_partition_function();
    Ok(z == partfun_prefactor(spec, p) * path_weight_sum(spec, p)?)
}

/// With `γ_1 = α_1` the first rows freeze:
/// `Z_{a,b,c} = ∏_j (α_1 − β_j) · Z_{a,b−1,c}(α_2.., β, γ_2..)`.
pub fn check_frozen_rows<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<bool> {
    let NestedArchSpec { a, b, c } = spec;
    if b == 0 {
        return Err(Error::Precondition("frozen rows need b ≥ 1".into()));
    }
    let mut full = p.clone();
    full.gammas[0] = full.alphas[0].clone();
    let z = build_hexagon(spec, &full)?.difference_partition_function();
    let pref = p
        .betas
        .iter()
        .fold(F::one(), |acc, be| acc * (p.alphas[0].clone() - be));
    if a + b + c == 1 {
        return Ok(z == pref);
    }
    let reduced = ParamSet {
        alphas: p.alphas[1..].to_vec(),
        betas: p.betas.clone(),
        gammas: p.gammas[1..].to_vec(),
    };
    let small = build_hexagon(NestedArchSpec::new(a, b - 1, c), &reduced)?.difference_partition_function();
    Ok(z == pref * small)
}

/// Whether exchanging lines `i` and `j` of `family` leaves `Z` unchanged.
pub fn check_swap_symmetry<F: Field>(r: &TilingRegion<F>, family: usize, i: usize, j: usize) -> bool {
    r.difference_partition_function() == r.with_swapped(family, i, j).difference_partition_function()
}

/// Closed form for the `k × 1 × 1` hexagon:
/// `[∏(α_i−γ_1)(β_i−γ_2) − ∏(α_i−γ_2)(β_i−γ_1)] / (γ_1 − γ_2)`.
/// It weighs the `k` lozenges of type `γ–β` as `β − γ`, so it equals
/// `(−1)^k Z` for the hexagon built by [`appendix_a_hexagon`].
pub fn appendix_a_hexagon_weight<F: Field>(k: usize, alphas: &[F], betas: &[F], g1: &F, g2: &F) -> Result<F> {
    if alphas.len() != k + 1 || betas.len() != k + 1 {
        return Err(Error::InconsistentSize(format!("need {} alphas and betas", k + 1)));
    }
    let inv = (g1.clone() - g2).inv().ok_or(Error::CoincidentGamma)?;
    let prod = |x: &F, y: &F| {
        alphas
            .iter()
            .zip(betas)
            .fold(F::one(), |acc, (a, b)| acc * (a.clone() - x) * (b.clone() - y))
    };
    Ok((prod(g1, g2) - prod(g2, g1)) * inv)
}

/// The `k × 1 × 1` hexagon, i.e. `(a, b, c) = (1, 1, k)`.
pub fn appendix_a_hexagon<F: Field>(k: usize, alphas: &[F], betas: &[F], g1: &F, g2: &F) -> Result<TilingRegion<F>> {
    let p = ParamSet {
        alphas: alphas.to_vec(),
        betas: betas.to_vec(),
        gammas: vec![g1.clone(), g2.clone()],
    };
    build_hexagon(NestedArchSpec::new(1, 1, k), &p)
}

/// `∏_i (α_i − γ_1)(α_i − γ_2)`.
pub fn appendix_a_parallelogram_weight<F: Field>(alphas: &[F], g1: &F, g2: &F) -> Result<F> {
    if alphas.is_empty() {
        return Err(Error::Precondition("parallelogram needs k ≥ 1".into()));
    }
    Ok(alphas
        .iter()
        .fold(F::one(), |acc, a| acc * (a.clone() - g1) * (a.clone() - g2)))
}

/// The `2 × k` parallelogram of `α–γ` lozenges: up triangles `U(u−v, v)`
/// and down triangles `D(u−v−1, v)` for `u ∈ {0, 1}`, `v < k`.
pub fn appendix_a_parallelogram<F: Field>(alphas: &[F], g1: &F, g2: &F) -> Result<TilingRegion<F>> {
    let k = alphas.len() as i32;
    let mut cells = Vec::new();
    for v in 0..k {
        for u in 0..2 {
            // the beta lines are never weighted here; any index works
            cells.push((Triangle::up(u - v, v), [line(0, v), line(1, 0), line(2, u)]));
            cells.push((Triangle::down(u - v - 1, v), [line(0, v), line(1, 0), line(2, u)]));
        }
    }
    TilingRegion::new(
        cells,
        vec![
            ("alpha".into(), alphas.to_vec()),
            ("beta".into(), vec![F::zero()]),
            ("gamma".into(), vec![g1.clone(), g2.clone()]),
        ],
        &[],
    )
}

/// Text form of a region over `Q(ω)`:
///
/// ```text
/// family alpha 1 2 3
/// up 0 0 alpha:0 beta:1 gamma:0
/// down 0 0 alpha:0 beta:1 gamma:1
/// glue 0 0 -1 2 alpha:1 gamma:0
/// ```
///
/// `glue` lines join the up triangle at the first coordinates to the down
/// triangle at the second with the weight lines `u`, `v`. Dents are
/// triangles that are not listed, or listed and then removed by a
/// `dent up|down x y` line.
pub fn region_to_text(r: &TilingRegion<CycloNum>) -> String {
    let mut s = String::new();
    let name = |l: LineRef| format!("{}:{}", r.families[l.family].0, l.index);
    for (n, vals) in &r.families {
        let vals: Vec<String> = vals.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "family {n} {}", vals.join(" "));
    }
    for (t, ls) in r.triangles.iter().zip(&r.lines) {
        let kind = if t.kind == Kind::Up { "up" } else { "down" };
        let _ = writeln!(s, "{kind} {} {} {} {} {}", t.x, t.y, name(ls[0]), name(ls[1]), name(ls[2]));
    }
    for a in &r.adjacencies {
        let (u, d) = (r.triangles[a.up], r.triangles[a.down]);
        let geometric = [(d.x, d.y) == (u.x, u.y), (d.x, d.y) == (u.x, u.y - 1), (d.x, d.y) == (u.x - 1, u.y)];
        if !geometric.iter().any(|g| *g) {
            let _ = writeln!(s, "glue {} {} {} {} {} {}", u.x, u.y, d.x, d.y, name(a.u), name(a.v));
        }
    }
    s
}

pub fn region_from_text(text: &str) -> Result<TilingRegion<CycloNum>> {
    let mut families: Vec<(String, Vec<CycloNum>)> = Vec::new();
    let mut cells = Vec::new();
    let mut glued = Vec::new();
    let mut dents = Vec::new();
    let bad = |line: &str| Error::Parse(format!("bad region line `{line}`"));
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let lref = |families: &[(String, Vec<CycloNum>)], s: &str| -> Result<LineRef> {
            let (f, i) = s.split_once(':').ok_or_else(|| bad(line))?;
            let family = families.iter().position(|(n, _)| n == f).ok_or_else(|| bad(line))?;
            Ok(LineRef {
                family,
                index: i.parse().map_err(|_| bad(line))?,
            })
        };
        let int = |s: &str| -> Result<i32> { s.parse().map_err(|_| bad(line)) };
        match tok[0] {
            "family" if tok.len() >= 2 => {
                let vals = tok[2..].iter().map(|v| v.parse()).collect::<Result<Vec<CycloNum>>>()?;
                families.push((tok[1].to_string(), vals));
            }
            "up" | "down" if tok.len() == 6 => {
                let (x, y) = (int(tok[1])?, int(tok[2])?);
                let t = if tok[0] == "up" { Triangle::up(x, y) } else { Triangle::down(x, y) };
                let ls = [lref(&families, tok[3])?, lref(&families, tok[4])?, lref(&families, tok[5])?];
                cells.push((t, ls));
            }
            "glue" if tok.len() == 7 => {
                glued.push((
                    Triangle::up(int(tok[1])?, int(tok[2])?),
                    Triangle::down(int(tok[3])?, int(tok[4])?),
                    lref(&families, tok[5])?,
                    lref(&families, tok[6])?,
                ));
            }
            "dent" if tok.len() == 4 && (tok[1] == "up" || tok[1] == "down") => {
                let (x, y) = (int(tok[2])?, int(tok[3])?);
                dents.push(if tok[1] == "up" { Triangle::up(x, y) } else { Triangle::down(x, y) });
            }
            _ => return Err(bad(line)),
        }
    }
    cells.retain(|(t, _)| !dents.contains(t));
    glued.retain(|(u, d, _, _)| !dents.contains(u) && !dents.contains(d));
    TilingRegion::new(cells, families, &glued)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::nested::{macmahon, phi_subset};
    use crate::scalar::rational;
    use num_rational::BigRational;

    fn r(x: i64) -> BigRational {
        rational(x, 1)
    }

    fn params(spec: NestedArchSpec, seed: i64) -> ParamSet<BigRational> {
        let [na, nb, ng] = spec.block_sizes();
        let mk = |k: usize, off: i64| (0..k as i64).map(|i| rational((i + off) * (i + off) * 7 + seed, 3 + i)).collect();
        ParamSet {
            alphas: mk(na, 1),
            betas: mk(nb, 5),
            gammas: mk(ng, 11),
        }
    }

    #[test]
    fn hand_value() {
        let p = ParamSet {
            alphas: vec![r(0), r(1)],
            betas: vec![r(2), r(3)],
            gammas: vec![r(4), r(5)],
        };
        let h = build_hexagon(NestedArchSpec::new(1, 1, 1), &p).unwrap();
        assert_eq!(h.count_tilings(), 2);
        assert_eq!(h.difference_partition_function(), r(32));
    }

    #[test]
    fn calibration_guard() {
        for (a, b, c) in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)] {
            let spec = NestedArchSpec::new(a, b, c);
            let p = params(spec, 3);
            let z = build_hexagon(spec, &p).unwrap().difference_partition_function();
            assert_eq!(z, phi_subset(spec, &p).unwrap(), "{spec:?}");
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(hexagon_count(1, 1, 0), 1);
        assert_eq!(hexagon_count(2, 2, 2), 20);
        assert_eq!(hexagon_count(1, 2, 3), 10);
        for (a, b, c) in [(3, 1, 2), (2, 3, 2)] {
            assert_eq!(BigRational::from_integer(hexagon_count(a, b, c).into()), BigRational::from_integer(macmahon(a, b, c)));
        }
    }

    #[test]
    fn orientation_counts() {
        let spec = NestedArchSpec::new(2, 1, 3);
        let p = params(spec, 1);
        let h = build_hexagon(spec, &p).unwrap();
        for t in h.enumerate_tilings() {
            let mut per = HashMap::new();
            for &e in &t.lozenges {
                let adj = h.adjacencies()[e];
                *per.entry((adj.u.family, adj.v.family)).or_insert(0) += 1;
            }
            assert_eq!(per.get(&(ALPHA, BETA)).copied().unwrap_or(0), 2);
            assert_eq!(per.get(&(GAMMA, BETA)).copied().unwrap_or(0), 3);
            assert_eq!(per.get(&(ALPHA, GAMMA)).copied().unwrap_or(0), 6);
        }
    }

    #[test]
    fn nip_round_trip() {
        let spec = NestedArchSpec::new(2, 2, 2);
        let h = build_hexagon(spec, &params(spec, 2)).unwrap();
        let tilings = h.enumerate_tilings();
        let mut seen = std::collections::HashSet::new();
        for t in &tilings {
            let nip = nip_extract(t, &h).unwrap();
            assert_eq!(nip.paths.len(), 2);
            for path in &nip.paths {
                assert_eq!(path.len(), 4);
                assert_eq!(path.iter().filter(|s| **s == Step::AlphaGamma).count(), 2);
            }
            assert_eq!(&tiling_from_paths(&nip, &h).unwrap(), t);
            seen.insert(nip);
        }
        assert_eq!(seen.len(), tilings.len());
        let flat = build_hexagon(NestedArchSpec::new(2, 1, 0), &params(NestedArchSpec::new(2, 1, 0), 0)).unwrap();
        let t = flat.enumerate_tilings();
        assert_eq!(t.len(), 1);
        assert!(nip_extract(&t[0], &flat).unwrap().paths.is_empty());
    }

    #[test]
    fn partfun_and_frozen() {
        for (a, b, c) in [(1, 1, 1), (2, 1, 2), (1, 2, 2)] {
            let spec = NestedArchSpec::new(a, b, c);
            let p = params(spec, 4);
            assert!(check_partfun_factorization(spec, &p).unwrap());
            assert!(check_frozen_rows(spec, &p).unwrap());
        }
    }

    #[test]
    fn appendix_forms() {
        let g1 = r(17);
        let g2 = r(-4);
        for k in 0..=3usize {
            let al: Vec<_> = (0..=k as i64).map(|i| rational(3 * i + 1, 2)).collect();
            let be: Vec<_> = (0..=k as i64).map(|i| rational(-5 * i + 2, 3)).collect();
            let closed = appendix_a_hexagon_weight(k, &al, &be, &g1, &g2).unwrap();
            let region = appendix_a_hexagon(k, &al, &be, &g1, &g2).unwrap();
            let sign = if k % 2 == 0 { r(1) } else { r(-1) };
            assert_eq!(closed, sign * region.difference_partition_function());
            assert_eq!(closed, appendix_a_hexagon_weight(k, &al, &be, &g2, &g1).unwrap());
            if k >= 1 {
                let par = appendix_a_parallelogram(&al[..k], &g1, &g2).unwrap();
                assert_eq!(par.count_tilings(), 1);
                assert_eq!(
                    par.difference_partition_function(),
                    appendix_a_parallelogram_weight(&al[..k], &g1, &g2).unwrap()
                );
            }
        }
        assert_eq!(appendix_a_hexagon_weight(0, &[r(5)], &[r(2)], &r(1), &r(9)).unwrap(), r(3));
        assert!(matches!(
            appendix_a_hexagon_weight(0, &[r(5)], &[r(2)], &r(1), &r(1)),
            Err(Error::CoincidentGamma)
        ));
    }

    #[test]
    fn swaps() {
        let spec = NestedArchSpec::new(1, 2, 2);
        let h = build_hexagon(spec, &params(spec, 9)).unwrap();
        for f in 0..3 {
            for i in 0..h.families[f].1.len().saturating_sub(1) {
                assert!(check_swap_symmetry(&h, f, i, i + 1));
            }
        }
    }

    #[test]
    fn unbalanced_region_has_no_tiling() {
        let cells = vec![(Triangle::up(0, 0), [line(0, 0), line(0, 0), line(0, 0)])];
        let reg = TilingRegion::new(cells, vec![("a".into(), vec![r(1)])], &[]).unwrap();
        assert_eq!(reg.count_tilings(), 0);
        assert!(reg.difference_partition_function().is_zero());
    }

    #[test]
    fn text_round_trip() {
        let c = |x: i64| Cyclo::from_base(r(x));
        let p = ParamSet {
            alphas: vec![c(0), c(1)],
            betas: vec![c(2), c(3)],
            gammas: vec![c(4), c(5)],
        };
        let h = build_hexagon(NestedArchSpec::new(1, 1, 1), &p).unwrap();
        let text = region_to_text(&h);
        let back = region_from_text(&text).unwrap();
        assert_eq!(region_to_text(&back), text);
        assert_eq!(back.partition_function(WeightMode::Difference), c(32));
        assert!(!back.partition_function(WeightMode::QDifference).is_zero());
        let dented = region_from_text(&format!("{text}dent up 0 0\ndent down 0 0\n")).unwrap();
        assert_eq!(dented.triangles().len(), h.triangles().len() - 2);
    }
}
