//! Tiling regions for link patterns with four little arches `(a,b|e|c,d)`.
//!
//! A region is given by a [`FourArchLayout`]: triangles with their lines in
//! the four families `x, y, z, t`, glued edge pairs, and dent slots of which
//! exactly `d` are removed. The partition function sums over the dent
//! choices. Lozenge weights are `q u − q⁻¹ v` with `v` at `+π/3` from `u`.
//!
//! [`provisional_layout`] is a guess. It is exact for `d = 0`, where the
//! region is a hexagon plus a frozen parallelogram, and is expected to be
//! wrong otherwise; [`verify_cases`] reports how it fares.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::fpl::fpl_counts;
use crate::linkpat::{four_arch_pattern, FourArchSpec, NestedArchSpec};
use crate::nested::{phi_subset, ParamSet};
use crate::scalar::{CubeRootField, Field};
use crate::tilings::{LineRef, TilingRegion, Triangle, WeightMode};
use crate::verify::{Bounds, Ctx};
use crate::CycloNum;

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const T: usize = 3;

/// Spectral parameters of the four blocks, sized by
/// [`FourArchSpec::block_sizes`].
#[derive(Clone, Debug, PartialEq)]
pub struct FourArchParams<F> {
    pub x: Vec<F>,
    pub y: Vec<F>,
    pub z: Vec<F>,
    pub t: Vec<F>,
}

impl<F: Field> FourArchParams<F> {
    pub fn new(spec: FourArchSpec, x: Vec<F>, y: Vec<F>, z: Vec<F>, t: Vec<F>) -> Result<Self> {
        let p = FourArchParams { x, y, z, t };
        let got = [p.x.len(), p.y.len(), p.z.len(), p.t.len()];
        if got != spec.block_sizes() {
            return Err(Error::InconsistentSize(format!(
                "block sizes {got:?}, expected {:?}",
                spec.block_sizes()
            )));
        }
        Ok(p)
    }

    fn families(&self) -> Vec<(String, Vec<F>)> {
        vec![
            ("x".into(), self.x.clone()),
            ("y".into(), self.y.clone()),
            ("z".into(), self.z.clone()),
            ("t".into(), self.t.clone()),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourArchLayout {
    pub cells: Vec<(Triangle, [LineRef; 3])>,
    pub glued: Vec<(Triangle, Triangle, LineRef, LineRef)>,
    pub dent_slots: Vec<Triangle>,
    pub dents: usize,
}

fn lr(family: usize, index: usize) -> LineRef {
    LineRef { family, index }
}

/// Hexagon `(a+d) × b × (c+e)` with `y` on the rows, `z` then `t[d..]` on
/// the verticals, `x` then `t[..d]` on the diagonals, and next to it the
/// frozen parallelogram of `z × t[d..]` lozenges. No glued edges, no dents.
pub fn provisional_layout(spec: FourArchSpec) -> FourArchLayout {
    let FourArchSpec { a, b, e, c, d } = spec;
    let (ha, hc) = (a + d, c + e);
    let mut cells = Vec::new();
    for (t, ls) in crate::tilings::hexagon_cells(ha, b, hc) {
        let row = lr(Y, ls[0].index);
        let j = ls[1].index;
        let vert = if j < c + d { lr(Z, j) } else { lr(T, j - c) };
        let k = ls[2].index;
        let diag = if k < a + b { lr(X, k) } else { lr(T, k - a - b) };
        cells.push((t, [row, vert, diag]));
    }
    let off = 2 * (spec.n() as i32 + 2);
    for i in 0..c + d {
        for j in 0..a + e {
            let ls = [lr(Z, i), lr(T, d + j), lr(Z, i)];
            cells.push((Triangle::up(off + j as i32, i as i32), ls));
            cells.push((Triangle::down(off + j as i32, i as i32), ls));
        }
    }
    FourArchLayout {
        cells,
        glued: Vec::new(),
        dent_slots: Vec::new(),
        dents: 0,
    }
}

/// One tiling region per choice of dents.
#[derive(Clone, Debug)]
pub struct FourArchRegion<F> {
    pub spec: FourArchSpec,
    pub pieces: Vec<TilingRegion<F>>,
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn build_four_arch_with<F: Field>(
    spec: FourArchSpec,
    p: &FourArchParams<F>,
    layout: &FourArchLayout,
) -> Result<FourArchRegion<F>> {
    FourArchParams::new(spec, p.x.clone(), p.y.clone(), p.z.clone(), p.t.clone())?;
    if layout.dents > layout.dent_slots.len() {
        return Err(Error::InconsistentSize("more dents than dent slots".into()));
    }
    let mut pieces = Vec::new();
    for pick in choose(layout.dent_slots.len(), layout.dents) {
        let removed: Vec<Triangle> = pick.iter().map(|&i| layout.dent_slots[i]).collect();
        let cells = layout
            .cells
            .iter()
            .filter(|(t, _)| !removed.contains(t))
            .cloned()
            .collect();
        let glued: Vec<_> = layout
            .glued
            .iter()
            .filter(|(u, d, _, _)| !removed.contains(u) && !removed.contains(d))
            .cloned()
            .collect();
        pieces.push(TilingRegion::new(cells, p.families(), &glued)?.with_cyclic_orientation());
    }
    Ok(FourArchRegion { spec, pieces })
}

/// The region on [`provisional_layout`].
pub fn build_four_arch<F: Field>(spec: FourArchSpec, p: &FourArchParams<F>) -> Result<FourArchRegion<F>> {
    build_four_arch_with(spec, p, &provisional_layout(spec))
}

impl<F: Field> FourArchRegion<F> {
    pub fn count_tilings(&self) -> u64 {
        self.pieces.iter().map(TilingRegion::count_tilings).sum()
    }

    /// Largest number of lozenges crossed by one line of each family, over
    /// all tilings.
    pub fn max_degrees(&self) -> [usize; 4] {
        let mut best = [0; 4];
        for r in &self.pieces {
            r.for_each_tiling(|s| {
                let mut per: BTreeMap<LineRef, usize> = BTreeMap::new();
                for &e in s {
                    let a = r.adjacencies()[e];
                    *per.entry(a.u).or_default() += 1;
                    *per.entry(a.v).or_default() += 1;
                }
                for (l, k) in per {
                    best[l.family] = best[l.family].max(k);
                }
            });
        }
        best
    }
}

impl<F: CubeRootField> FourArchRegion<F> {
    pub fn partition_function(&self) -> F {
        self.pieces
            .iter()
            .fold(F::zero(), |acc, r| acc + r.partition_function(WeightMode::QDifference))
    }

    /// Product of the weights of the lozenges (as line pairs) present in
    /// every tiling of nonzero weight; `None` if there is no such tiling.
    pub fn forced_weight(&self) -> Option<F> {
        let q = F::omega();
        let qi = F::omega_pow(-1);
        let w = |r: &TilingRegion<F>, e: usize| {
            let a = r.adjacencies()[e];
            q.clone() * r.param(a.u) - qi.clone() * r.param(a.v)
        };
        let mut common: Option<BTreeMap<(LineRef, LineRef), usize>> = None;
        for r in &self.pieces {
            r.for_each_tiling(|s| {
                if s.iter().any(|&e| w(r, e).is_zero()) {
                    return;
                }
                let mut here: BTreeMap<(LineRef, LineRef), usize> = BTreeMap::new();
                for &e in s {
                    let a = r.adjacencies()[e];
                    *here.entry((a.u, a.v)).or_default() += 1;
                }
                common = Some(match common.take() {
                    None => here,
                    Some(c) => c
                        .into_iter()
                        .filter_map(|(k, m)| here.get(&k).map(|&h| (k, m.min(h))))
                        .collect(),
                });
            });
        }
        let families = &self.pieces.first()?.families;
        let par = |l: LineRef| families[l.family].1[l.index].clone();
        common.map(|c| {
            c.into_iter().fold(F::one(), |acc, ((u, v), m)| {
                let wt = q.clone() * &par(u) - qi.clone() * &par(v);
                (0..m).fold(acc, |acc, _| acc * &wt)
            })
        })
    }
}

/// `(expected, actual)` for `d = 0`: the region against
/// `κ · Φ_{a,b,c+e}(y; q(z ∪ t); q² x) · ∏ (q z_i − q⁻¹ t_j)` where `κ`
/// collects the factors `q`, `−1`, `−q⁻¹` of the three lozenge types.
pub fn d0_reduction<F: CubeRootField>(spec: FourArchSpec, p: &FourArchParams<F>) -> Result<(F, F)> {
    let FourArchSpec { a, b, e, c, d } = spec;
    if d != 0 {
        return Err(Error::Precondition("d0 reduction needs d = 0".into()));
    }
    let actual = build_four_arch(spec, p)?.partition_function();
    let q = F::omega();
    let q2 = F::omega_pow(2);
    let hex = NestedArchSpec::new(a, b, c + e);
    let ps = ParamSet {
        alphas: p.y.clone(),
        betas: p.z.iter().chain(&p.t).map(|v| q.clone() * v).collect(),
        gammas: p.x.iter().map(|v| q2.clone() * v).collect(),
    };
    let phi = if hex.n() == 0 { F::one() } else { phi_subset(hex, &ps)? };
    let qi = F::omega_pow(-1);
    let frozen = p.z.iter().fold(F::one(), |acc, zi| {
        p.t.iter().fold(acc, |acc, tj| acc * (q.clone() * zi - qi.clone() * tj))
    });
    let (ha, hb, hc) = (a as i64, b as i64, (c + e) as i64);
    let sign = if (hb * hc + hc * ha) % 2 == 0 { F::one() } else { -F::one() };
    let kappa = sign * F::omega_pow(ha * hb - hc * ha);
    Ok((kappa * phi * frozen, actual))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Freeze {
    /// `t_1 = q² x_1`, reducing `a`.
    TX,
    /// `t_1 = q⁻² z_1`, reducing `d`.
    TZ,
}

/// `(expected, actual)` for a frozen-row specialization: the specialized
/// region against the forced lozenge weight times the reduced region.
pub fn frozen_reduction<F: CubeRootField>(spec: FourArchSpec, p: &FourArchParams<F>, which: Freeze) -> Result<(F, F)> {
    let FourArchSpec { a, b, e, c, d } = spec;
    let mut full = p.clone();
    let reduced_spec = match which {
        Freeze::TX if a >= 1 => {
            full.t[0] = F::omega_pow(2) * &p.x[0];
            FourArchSpec::new(a - 1, b, e, c, d)
        }
        Freeze::TZ if d >= 1 => {
            full.t[0] = F::omega_pow(-2) * &p.z[0];
            FourArchSpec::new(a, b, e, c, d - 1)
        }
        _ => return Err(Error::Precondition(format!("{which:?} needs the reduced part ≥ 1"))),
    };
    let region = build_four_arch(spec, &full)?;
    let actual = region.partition_function();
    let forced = region
        .forced_weight()
        .ok_or_else(|| Error::Precondition("no tiling of nonzero weight".into()))?;
    let mut small = full.clone();
    small.t.remove(0);
    match which {
        Freeze::TX => small.x.remove(0),
        Freeze::TZ => small.z.remove(0),
    };
    let rest = build_four_arch(reduced_spec, &small)?.partition_function();
    Ok((forced * rest, actual))
}

fn label(s: FourArchSpec) -> String {
    format!("({},{}|{}|{},{})", s.a, s.b, s.e, s.c, s.d)
}

fn draw(ctx: &mut Ctx, spec: FourArchSpec) -> FourArchParams<CycloNum> {
    let [sx, sy, sz, st] = spec.block_sizes();
    FourArchParams {
        x: ctx.cyclo_vec(sx),
        y: ctx.cyclo_vec(sy),
        z: ctx.cyclo_vec(sz),
        t: ctx.cyclo_vec(st),
    }
}

/// Specs with `a, b, c, d ≥ 1`, `e ≥ 0` and `n ≤ max_n`.
pub fn four_arch_specs(max_n: usize) -> Vec<FourArchSpec> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for a in 1..=n {
            for b in 1..=n - a {
                for c in 1..=n - a - b {
                    for d in 1..=n - a - b - c {
                        let e = n - a - b - c - d;
                        out.push(FourArchSpec::new(a, b, e, c, d));
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn verify_cases(ctx: &mut Ctx, bounds: Bounds) -> Result<()> {
    let m = bounds.abc.max(1);
    for a in 1..=m {
        for b in 1..=m {
            for c in 1..=m {
                for e in 0..=1 {
                    let spec = FourArchSpec::new(a, b, e, c, 0);
                    if spec.n() > bounds.n {
                        continue;
                    }
                    for k in 0..bounds.draws {
                        ctx.tick()?;
                        let (want, got) = ctx.generic(|cx| {
                            let p = draw(cx, spec);
                            d0_reduction(spec, &p)
                        })?;
                        ctx.push(format!("d0/{}/{k}", label(spec)), label(spec), want, got)?;
                    }
                }
            }
        }
    }
    let small = [FourArchSpec::new(1, 1, 0, 1, 1), FourArchSpec::new(1, 1, 1, 1, 1), FourArchSpec::new(2, 1, 0, 1, 1)];
    for spec in small.into_iter().filter(|s| s.n() <= bounds.n.max(4)) {
        for (which, tag) in [(Freeze::TX, "t1=q2x1"), (Freeze::TZ, "t1=q-2z1")] {
            for k in 0..bounds.draws {
                ctx.tick()?;
                let (want, got) = ctx.generic(|cx| {
                    let p = draw(cx, spec);
                    frozen_reduction(spec, &p, which)
                })?;
                ctx.push(format!("frozen/{tag}/{}/{k}", label(spec)), label(spec), want, got)?;
            }
        }
        let ones = FourArchParams::new(
            spec,
            vec![CycloNum::one(); spec.block_sizes()[0]],
            vec![CycloNum::one(); spec.block_sizes()[1]],
            vec![CycloNum::one(); spec.block_sizes()[2]],
            vec![CycloNum::one(); spec.block_sizes()[3]],
        )?;
        let deg = build_four_arch(spec, &ones)?.max_degrees();
        let FourArchSpec { a, b, e, c, d } = spec;
        let bound = [c + d + e, a + d, a + b + e, b + c];
        ctx.check(
            format!("degrees/{}", label(spec)),
            format!("{} max {deg:?} bound {bound:?}", label(spec)),
            deg.iter().zip(bound).all(|(g, b)| *g <= b),
        )?;
    }
    for n in 4..=bounds.n.min(5) {
        let census = fpl_counts(n)?;
        for spec in four_arch_specs(n).into_iter().filter(|s| s.n() == n) {
            ctx.tick()?;
            let ones = |k: usize| vec![CycloNum::one(); k];
            let [sx, sy, sz, st] = spec.block_sizes();
            let p = FourArchParams::new(spec, ones(sx), ones(sy), ones(sz), ones(st))?;
            let tilings = build_four_arch(spec, &p)?.count_tilings();
            let fpl = census.count(&four_arch_pattern(spec)?);
            ctx.push(format!("homogeneous/{}", label(spec)), label(spec), fpl, tilings)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::scalar::rational;

    fn c(x: i64) -> CycloNum {
        Cyclo::from_base(rational(x, 1))
    }

    fn params(spec: FourArchSpec, seed: i64) -> FourArchParams<CycloNum> {
        let [sx, sy, sz, st] = spec.block_sizes();
        let mk = |k: usize, off: i64| (0..k as i64).map(|i| c((i + off) * (i + off) * 13 + seed)).collect();
        FourArchParams::new(spec, mk(sx, 1), mk(sy, 7), mk(sz, 17), mk(st, 31)).unwrap()
    }

    #[test]
    fn sizes_are_checked() {
        let spec = FourArchSpec::new(1, 1, 0, 1, 1);
        assert!(FourArchParams::new(spec, vec![c(1)], vec![c(1); 2], vec![c(1); 2], vec![c(1); 2]).is_err());
    }

    #[test]
    fn d0_matches_hexagon() {
        for spec in [FourArchSpec::new(1, 1, 0, 1, 0), FourArchSpec::new(2, 1, 1, 1, 0), FourArchSpec::new(1, 2, 0, 2, 0)] {
            let (want, got) = d0_reduction(spec, &params(spec, 5)).unwrap();
            assert_eq!(want, got, "{spec:?}");
        }
    }

    #[test]
    fn d0_counts_are_macmahon() {
        let spec = FourArchSpec::new(2, 2, 1, 1, 0);
        let r = build_four_arch(spec, &params(spec, 1)).unwrap();
        assert_eq!(r.count_tilings(), crate::tilings::hexagon_count(2, 2, 2));
    }

    #[test]
    fn dents_sum_over_choices() {
        // a 1×1 rhombus plus one spare up triangle: exactly one dent
        let l = |i| lr(Y, i);
        let layout = FourArchLayout {
            cells: vec![
                (Triangle::up(0, 0), [l(0), lr(Z, 0), lr(X, 0)]),
                (Triangle::down(0, 0), [l(0), lr(Z, 0), lr(X, 0)]),
                (Triangle::up(1, 0), [l(0), lr(Z, 0), lr(X, 0)]),
            ],
            glued: vec![],
            dent_slots: vec![Triangle::up(0, 0), Triangle::up(1, 0)],
            dents: 1,
        };
        let spec = FourArchSpec::new(0, 1, 0, 0, 1);
        let r = build_four_arch_with(spec, &params(spec, 2), &layout).unwrap();
        assert_eq!(r.pieces.len(), 2);
        assert_eq!(r.count_tilings(), 2);
    }

    #[test]
    fn homogeneous_specs() {
        assert_eq!(four_arch_specs(4), vec![FourArchSpec::new(1, 1, 0, 1, 1)]);
        assert_eq!(four_arch_specs(5).len(), 1 + 4 + 1);
    }
}
