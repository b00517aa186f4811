//! Transfer matrix of the inhomogeneous O(1) loop model and its ground state.
//!
//! Exact kernels are computed modulo many primes `p ≡ 2 (mod 3)`, lifted to
//! `Q(ω)` by Chinese remaindering and rational reconstruction, and then
//! certified by checking `T·Ψ = Ψ` in exact arithmetic. A one-dimensional
//! kernel modulo `p` together with an exact eigenvector proves the kernel
//! over `Q(ω)` is one-dimensional.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclo::{q_power, Cyclo};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::linkpat::{enumerate_patterns, nested_pattern, LinkPattern, NestedArchSpec};
use crate::modp::{prime_iter, CrtAccumulator, Fp2, ModP};
use crate::mvpoly::{apply_along_axes, unflatten, MultiPoly, VarTable};
use crate::nested::{base_normalization, base_spec, component_closed_form, phase_unit};
use crate::scalar::{rational, CubeRootField, Field};
use crate::CycloNum;

/// The two plaquettes of a strip site. Edge midpoints are N (new outer
/// point), S (old inner point), W and E (neighbouring sites).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plaquette {
    /// Pairs (W,S) and (N,E).
    TurnA,
    /// Pairs (W,N) and (S,E).
    TurnB,
}

/// Which side of site `i` is glued to site `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Seam {
    /// E of site `i` meets W of site `i + 1`.
    EastToNextWest,
    /// W of site `i` meets E of site `i + 1`.
    WestToNextEast,
}

/// Assignment of the two site weights to plaquettes and gluing orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StripConvention {
    /// Plaquette carrying `(q z − q⁻¹ t)/(q t − q⁻¹ z)`; the other one
    /// carries `(z − t)/(q t − q⁻¹ z)`.
    pub turning: Plaquette,
    pub seam: Seam,
}

impl StripConvention {
    pub const ALL: [StripConvention; 4] = [
        StripConvention { turning: Plaquette::TurnA, seam: Seam::EastToNextWest },
        StripConvention { turning: Plaquette::TurnA, seam: Seam::WestToNextEast },
        StripConvention { turning: Plaquette::TurnB, seam: Seam::EastToNextWest },
        StripConvention { turning: Plaquette::TurnB, seam: Seam::WestToNextEast },
    ];
}

/// Precomputed action of every plaquette strip on every link pattern.
#[derive(Clone, Debug)]
pub struct StripTable {
    n: usize,
    convention: StripConvention,
    patterns: Vec<LinkPattern>,
    index: HashMap<LinkPattern, usize>,
    /// `target[config * C_n + j]` = index of the image of pattern `j`.
    target: Vec<u32>,
}

impl StripTable {
    pub fn new(n: usize, convention: StripConvention) -> Self {
        let patterns = enumerate_patterns(n);
        let index: HashMap<LinkPattern, usize> =
            patterns.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let sites = 2 * n;
        let configs = 1usize << sites;
        let mut target = Vec::with_capacity(configs * patterns.len());
        for config in 0..configs {
            for p in &patterns {
                let image = apply_strip(p, config, convention);
                target.push(index[&image] as u32);
            }
        }
        StripTable {
            n,
            convention,
            patterns,
            index,
            target,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> StripConvention {
        self.convention
    }

    pub fn patterns(&self) -> &[LinkPattern] {
        &self.patterns
    }

    pub fn index_of(&self, p: &LinkPattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn targets(&self) -> &[u32] {
        &self.target
    }

    /// Sums strip weights into a `C_n × C_n` matrix; `site_weights[i]` holds
    /// the weights of (TurnA, TurnB) at site `i`, entry `(π', π)` collects
    /// strips mapping `π` to `π'`.
    pub fn assemble<F: Field>(&self, site_weights: &[(F, F)]) -> Matrix<F> {
        assert_eq!(site_weights.len(), 2 * self.n);
        let weights = config_weights(site_weights, F::one(), |a, b| a.clone() * b);
        let c = self.patterns.len();
        let mut m = Matrix::zeros(c, c);
        for (config, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let row = &self.target[config * c..(config + 1) * c];
            for (j, &i) in row.iter().enumerate() {
                m[(i as usize, j)] += w;
            }
        }
        m
    }
}

/// Products of per-site choices for all `2^sites` strips; bit `i` of the
/// configuration index selects TurnB at site `i`.
pub fn config_weights<T: Clone>(
    site_weights: &[(T, T)],
    one: T,
    mul: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let mut out = vec![one];
    for (wa, wb) in site_weights {
        let mut next = Vec::with_capacity(out.len() * 2);
        next.extend(out.iter().map(|w| mul(w, wa)));
        next.extend(out.iter().map(|w| mul(w, wb)));
        // `next` is indexed with the new site as the highest bit
        out = next;
    }
    out
}

/// Image of `pattern` under the strip `config` (closed loops dropped).
pub fn apply_strip(pattern: &LinkPattern, config: usize, convention: StripConvention) -> LinkPattern {
    let m = pattern.size();
    if m == 0 {
        return pattern.clone();
    }
    const N: usize = 0;
    const S: usize = 1;
    const W: usize = 2;
    const E: usize = 3;
    let node = |site: usize, side: usize| 4 * site + side;
    let mut tile = vec![usize::MAX; 4 * m];
    let mut ext = vec![usize::MAX; 4 * m];
    let link = |v: &mut Vec<usize>, a: usize, b: usize| {
        v[a] = b;
        v[b] = a;
    };
    for site in 0..m {
        let turn_b = (config >> site) & 1 == 1;
        if turn_b {
            link(&mut tile, node(site, W), node(site, N));
            link(&mut tile, node(site, S), node(site, E));
        } else {
            link(&mut tile, node(site, W), node(site, S));
            link(&mut tile, node(site, N), node(site, E));
        }
        let next = (site + 1) % m;
        match convention.seam {
            Seam::EastToNextWest => link(&mut ext, node(site, E), node(next, W)),
            Seam::WestToNextEast => link(&mut ext, node(site, W), node(next, E)),
        }
        let mate = pattern.mate(site);
        if mate > site {
            link(&mut ext, node(site, S), node(mate, S));
        }
    }
    let mut mate = vec![usize::MAX; m];
    for start in 0..m {
        if mate[start] != usize::MAX {
            continue;
        }
        let mut v = tile[node(start, N)];
        while v % 4 != N {
            v = tile[ext[v]];
        }
        let end = v / 4;
        mate[start] = end;
        mate[end] = start;
    }
    LinkPattern::from_mates(mate).expect("strip images are planar")
}

/// The frozen plaquette convention: TurnA carries the turning weight and
/// the west side of site `i` is glued to the east side of site `i + 1`.
pub const CONVENTION: StripConvention = StripConvention {
    turning: Plaquette::TurnA,
    seam: Seam::WestToNextEast,
};

/// Shared strip table for the frozen convention.
pub fn strip_table(n: usize) -> Arc<StripTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<StripTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&n) {
        return Arc::clone(t);
    }
    let table = Arc::new(StripTable::new(n, CONVENTION));
    cache.lock().expect("cache lock").insert(n, Arc::clone(&table));
    table
}

/// Per-site weights `(TurnA, TurnB)` for spectral parameter `t`.
pub fn site_weights<F: CubeRootField>(t: &F, z: &[F], convention: StripConvention) -> Result<Vec<(F, F)>> {
    let (nums, dens) = site_numerators(t, z, convention);
    nums.into_iter()
        .zip(dens)
        .enumerate()
        .map(|(i, ((a, b), d))| {
            let inv = d.inv().ok_or(Error::SingularWeight(i))?;
            Ok((a * &inv, b * &inv))
        })
        .collect()
}

/// Numerators `(TurnA, TurnB)` of the site weights and their common
/// denominators `q t − q⁻¹ z_i`.
fn site_numerators<F: CubeRootField>(t: &F, z: &[F], convention: StripConvention) -> (Vec<(F, F)>, Vec<F>) {
    let q = F::omega();
    let qi = F::omega_pow(-1);
    let nums = z
        .iter()
        .map(|zi| {
            let turning = q.clone() * zi - qi.clone() * t;
            let straight = zi.clone() - t;
            match convention.turning {
                Plaquette::TurnA => (turning, straight),
                Plaquette::TurnB => (straight, turning),
            }
        })
        .collect();
    let dens = z.iter().map(|zi| q.clone() * t - qi.clone() * zi).collect();
    (nums, dens)
}

/// `T_n(t | z)` with rows and columns indexed by [`enumerate_patterns`].
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub n: usize,
    pub t: CycloNum,
    pub z: Vec<CycloNum>,
    pub patterns: Vec<LinkPattern>,
    /// `T = numerators / denominator`, the denominator being `∏_i (q t − q⁻¹ z_i)`.
    pub numerators: Matrix<CycloNum>,
    pub denominator: CycloNum,
}

impl TransferMatrix {
    pub fn entries(&self) -> Matrix<CycloNum> {
        let inv = self.denominator.inv().expect("nonzero denominator");
        let c = self.patterns.len();
        Matrix::from_fn(c, c, |i, j| self.numerators[(i, j)].clone() * &inv)
    }

    pub fn column_sums_are_one(&self) -> bool {
        self.numerators.column_sums().iter().all(|s| *s == self.denominator)
    }

    pub fn is_eigenvector(&self, v: &[CycloNum]) -> bool {
        let w = self.numerators.mul_vec(v);
        w.iter().zip(v).all(|(a, b)| *a == b.clone() * &self.denominator)
    }
}

pub fn build_transfer_matrix(n: usize, t: &CycloNum, z: &[CycloNum]) -> Result<TransferMatrix> {
    check_size(n, z)?;
    let table = strip_table(n);
    let (nums, dens) = site_numerators(t, z, CONVENTION);
    let mut den = CycloNum::one();
    for (i, d) in dens.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::SingularWeight(i));
        }
        den *= d;
    }
    Ok(TransferMatrix {
        n,
        t: t.clone(),
        z: z.to_vec(),
        patterns: table.patterns().to_vec(),
        numerators: table.assemble(&nums),
        denominator: den,
    })
}

fn check_size<T>(n: usize, z: &[T]) -> Result<()> {
    if n == 0 || z.len() != 2 * n {
        return Err(Error::InconsistentSize(format!("{} parameters for n = {n}", z.len())));
    }
    Ok(())
}

/// Rational spectral parameter used when the caller does not care about `t`.
fn default_t(z: &[CycloNum]) -> CycloNum {
    let q2 = q_power::<BigRational>(2);
    [(-3, 11), (5, 13), (-7, 17), (11, 19)]
        .into_iter()
        .map(|(p, d)| Cyclo::from_base(rational(p, d)))
        .find(|t| z.iter().all(|zi| *zi != q2.clone() * t))
        .expect("some candidate avoids every pole")
}

fn site_weights_modp(ctx: &ModP, t: Fp2, z: &[Fp2]) -> Option<Vec<(Fp2, Fp2)>> {
    let q = ctx.omega();
    let qi = ctx.c_mul(q, q);
    z.iter()
        .map(|&zi| {
            let den = ctx.c_inv(ctx.c_sub(ctx.c_mul(q, t), ctx.c_mul(qi, zi)))?;
            let turning = ctx.c_mul(ctx.c_sub(ctx.c_mul(q, zi), ctx.c_mul(qi, t)), den);
            let straight = ctx.c_mul(ctx.c_sub(zi, t), den);
            Some((turning, straight))
        })
        .collect()
}

/// `T − I` modulo `p`, row-major.
fn shifted_matrix_modp(ctx: &ModP, table: &StripTable, weights: &[(Fp2, Fp2)]) -> Vec<Fp2> {
    let c = table.patterns().len();
    let configs = config_weights(weights, Fp2::ONE, |a, b| ctx.c_mul(*a, *b));
    let mut m = vec![Fp2::ZERO; c * c];
    let targets = table.targets();
    for (config, w) in configs.iter().enumerate() {
        for (j, &i) in targets[config * c..(config + 1) * c].iter().enumerate() {
            let slot = &mut m[i as usize * c + j];
            *slot = ctx.c_add(*slot, *w);
        }
    }
    for i in 0..c {
        m[i * c + i] = ctx.c_sub(m[i * c + i], Fp2::ONE);
    }
    m
}

/// Outcome of one modular kernel computation.
enum ModKernel {
    Vector(Vec<Fp2>),
    Dimension(usize),
    /// Reduction or normalization failed for this prime.
    Unlucky,
}

fn kernel_modp(ctx: &ModP, mut m: Vec<Fp2>, c: usize, norm_index: usize, norm_value: Fp2) -> ModKernel {
    let mut basis = ctx.nullspace(&mut m, c, c);
    if basis.len() != 1 {
        return ModKernel::Dimension(basis.len());
    }
    let v = basis.pop().expect("one vector");
    let Some(s) = ctx.c_inv(v[norm_index]) else {
        return ModKernel::Unlucky;
    };
    let s = ctx.c_mul(s, norm_value);
    ModKernel::Vector(v.into_iter().map(|x| ctx.c_mul(x, s)).collect())
}

const MAX_PRIMES: usize = 400;

/// Exact kernel vector of `T − I` with `v[norm_index] = norm_value`,
/// certified against the exact matrix.
pub fn certified_kernel(tm: &TransferMatrix, norm_index: usize, norm_value: &CycloNum) -> Result<Vec<CycloNum>> {
    if norm_value.is_zero() {
        return Err(Error::Normalization);
    }
    let table = strip_table(tm.n);
    let c = table.patterns().len();
    let mut acc = CrtAccumulator::new(c);
    let mut previous: Option<Vec<CycloNum>> = None;
    let (mut used, mut degenerate) = (0usize, 0usize);
    for p in prime_iter() {
        let ctx = ModP::new(p);
        let reduced = (|| {
            let t = ctx.c_from(&tm.t)?;
            let z = tm.z.iter().map(|x| ctx.c_from(x)).collect::<Option<Vec<_>>>()?;
            let w = site_weights_modp(&ctx, t, &z)?;
            Some((w, ctx.c_from(norm_value)?))
        })();
        let Some((weights, nv)) = reduced else {
            continue;
        };
        if nv.is_zero() {
            continue;
        }
        match kernel_modp(&ctx, shifted_matrix_modp(&ctx, &table, &weights), c, norm_index, nv) {
            ModKernel::Vector(v) => {
                acc.add_residues(p, &v);
                used += 1;
            }
            ModKernel::Dimension(d) => {
                degenerate += 1;
                if degenerate >= 3 && used == 0 {
                    return Err(Error::DegenerateKernel(d));
                }
                continue;
            }
            ModKernel::Unlucky => continue,
        }
        if used % 2 == 0 {
            let current = acc.reconstruct();
            if let Some(v) = current.as_ref().filter(|_| current == previous) {
                if v[norm_index] == *norm_value && tm.is_eigenvector(v) {
                    return Ok(v.clone());
                }
            }
            previous = current;
        }
        if used > MAX_PRIMES {
            break;
        }
    }
    Err(Error::Precondition("modular kernel reconstruction did not converge".into()))
}

/// Kernel of `T − I` by exact Gaussian elimination, normalized like
/// [`certified_kernel`]. Slow; used as an oracle for small `n`.
pub fn exact_kernel(tm: &TransferMatrix, norm_index: usize, norm_value: &CycloNum) -> Result<Vec<CycloNum>> {
    let ns = tm.entries().sub_identity().nullspace();
    if ns.len() != 1 {
        return Err(Error::DegenerateKernel(ns.len()));
    }
    let v = &ns[0];
    let s = norm_value.checked_div(&v[norm_index]).ok_or(Error::Normalization)?;
    Ok(v.iter().map(|x| x.clone() * &s).collect())
}

/// Ground state at numeric `z`.
#[derive(Clone, Debug)]
pub struct GroundStateNumeric {
    pub n: usize,
    pub z: Vec<CycloNum>,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<CycloNum>,
}

impl GroundStateNumeric {
    pub fn component(&self, p: &LinkPattern) -> Option<&CycloNum> {
        let k = self.patterns.iter().position(|x| x == p)?;
        Some(&self.components[k])
    }

    /// Index of a component of minimal squared modulus.
    pub fn min_index(&self) -> usize {
        (0..self.components.len())
            .min_by(|&a, &b| self.components[a].norm_sq().cmp(&self.components[b].norm_sq()))
            .expect("nonempty")
    }

    pub fn report(&self) -> GroundStateReport {
        GroundStateReport {
            n: self.n,
            z: self.z.iter().map(ToString::to_string).collect(),
            components: self
                .patterns
                .iter()
                .zip(&self.components)
                .map(|(p, v)| ComponentEntry {
                    pattern: p.to_word(),
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentEntry {
    pub pattern: String,
    pub value: String,
}

/// JSON form `{n, z, components: [{pattern, value}]}`.
#[derive(Clone, Debug, Serialize)]
pub struct GroundStateReport {
    pub n: usize,
    pub z: Vec<String>,
    pub components: Vec<ComponentEntry>,
}

/// Index of the base pattern `(1, n−1, 0)` in the pattern order.
pub fn base_index(n: usize) -> usize {
    let base = nested_pattern(base_spec(n)).expect("valid spec");
    strip_table(n).index_of(&base).expect("enumerated")
}

/// Ground state with the base component equal to `facto · Φ_{1,n−1,0}`.
pub fn ground_state_numeric(n: usize, z: &[CycloNum]) -> Result<GroundStateNumeric> {
    check_size(n, z)?;
    let norm = base_normalization(n, z)?;
    ground_state_normalized(n, z, base_index(n), &norm)
}

/// Ground state with component `index` pinned to `value`.
pub fn ground_state_normalized(n: usize, z: &[CycloNum], index: usize, value: &CycloNum) -> Result<GroundStateNumeric> {
    let tm = build_transfer_matrix(n, &default_t(z), z)?;
    let components = certified_kernel(&tm, index, value)?;
    Ok(GroundStateNumeric {
        n,
        z: z.to_vec(),
        patterns: tm.patterns,
        components,
    })
}

/// Predicted nested-arch component under the base normalization.
pub fn nested_component(spec: NestedArchSpec, z: &[CycloNum]) -> Result<CycloNum> {
    let base = phase_unit::<CycloNum>(base_spec(spec.n()));
    let inv = base.inv().ok_or(Error::Normalization)?;
    Ok(component_closed_form(spec, z)? * inv)
}

/// Components as polynomials in `z1..z{2n}`.
#[derive(Clone, Debug)]
pub struct GroundStateSymbolic {
    pub n: usize,
    pub table: Arc<VarTable>,
    pub patterns: Vec<LinkPattern>,
    pub components: Vec<MultiPoly<CycloNum>>,
}

impl GroundStateSymbolic {
    pub fn component(&self, p: &LinkPattern) -> Option<&MultiPoly<CycloNum>> {
        let k = self.patterns.iter().position(|x| x == p)?;
        Some(&self.components[k])
    }

    /// Homogeneous of degree `n(n−1)` with partial degrees at most `n−1`.
    pub fn degrees_ok(&self) -> bool {
        let total = (self.n * (self.n - 1)) as u32;
        self.components.iter().all(|p| match p.degrees() {
            Some((d, partial)) => {
                d == total && p.is_homogeneous_of(total) && partial.iter().all(|&x| x < self.n as u32)
            }
            None => false,
        })
    }

    pub fn eval(&self, z: &[CycloNum]) -> Vec<CycloNum> {
        self.components.iter().map(|p| p.eval_slice(z)).collect()
    }
}

/// Reconstructs every component by tensor interpolation on the nodes
/// `1..=n` in each variable, modulo primes, then certifies the lift at
/// `check_points` exact points.
pub fn ground_state_symbolic(n: usize) -> Result<GroundStateSymbolic> {
    ground_state_symbolic_checked(n, &default_check_points(n))
}

fn default_check_points(n: usize) -> Vec<Vec<CycloNum>> {
    let pt = |k: i64| -> Vec<CycloNum> {
        (0..2 * n as i64)
            .map(|i| Cyclo::from_base(rational(3 + (i + k) * (i + 2 * k) % 101, 1 + (i * k) % 7)))
            .collect()
    };
    vec![pt(1), pt(5)]
}

pub fn ground_state_symbolic_checked(n: usize, check_points: &[Vec<CycloNum>]) -> Result<GroundStateSymbolic> {
    if n == 0 || n > 4 {
        return Err(Error::SizeLimit(format!("symbolic ground state needs 1 ≤ n ≤ 4, got {n}")));
    }
    let vars = 2 * n;
    let table = VarTable::numbered("z", vars);
    let strip = strip_table(n);
    let c = strip.patterns().len();
    let dims = vec![n; vars];
    let grid: usize = dims.iter().product();
    let t = Cyclo::from_base(rational(-3, 11));
    // inverse Vandermonde on the nodes 1..=n, exact
    let vdm = Matrix::from_fn(n, n, |i, j| Field::pow(&rational(i as i64 + 1, 1), j as u32));
    let vinv = vdm.inverse().expect("distinct nodes");
    let base = base_index(n);

    let mut support: Option<Vec<(usize, usize)>> = None;
    let mut acc: Option<CrtAccumulator> = None;
    let mut previous: Option<Vec<CycloNum>> = None;
    let mut used = 0;
    for p in prime_iter() {
        let ctx = ModP::new(p);
        let Some(tp) = ctx.c_from(&t) else { continue };
        let vinv_p: Option<Vec<u64>> = (0..n * n).map(|k| ctx.from_rational(&vinv[(k / n, k % n)])).collect();
        let Some(vinv_p) = vinv_p else { continue };
        let node_vals: Vec<Fp2> = (1..=n as i64).map(|x| ctx.c_from_i64(x)).collect();
        let Some(node_weights) = site_weights_modp(&ctx, tp, &node_vals) else { continue };
        let mut values = vec![vec![Fp2::ZERO; grid]; c];
        let mut ok = true;
        for flat in 0..grid {
            let idx = unflatten(flat, &dims);
            let weights: Vec<(Fp2, Fp2)> = idx.iter().map(|&k| node_weights[k as usize]).collect();
            let zs: Vec<Fp2> = idx.iter().map(|&k| node_vals[k as usize]).collect();
            let norm = base_normalization_modp(&ctx, n, &zs);
            if norm.is_zero() {
                ok = false;
                break;
            }
            match kernel_modp(&ctx, shifted_matrix_modp(&ctx, &strip, &weights), c, base, norm) {
                ModKernel::Vector(v) => {
                    for (k, x) in v.into_iter().enumerate() {
                        values[k][flat] = x;
                    }
                }
                ModKernel::Dimension(d) if used == 0 && p < (1 << 30) => return Err(Error::DegenerateKernel(d)),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        for comp in values.iter_mut() {
            apply_along_axes(comp, &dims, |_, fiber| {
                (0..n)
                    .map(|i| {
                        (0..n).fold(Fp2::ZERO, |s, j| {
                            let coef = Fp2 { re: vinv_p[i * n + j], om: 0 };
                            ctx.c_add(s, ctx.c_mul(coef, fiber[j]))
                        })
                    })
                    .collect()
            });
        }
        let supp = support.get_or_insert_with(|| {
            let mut s = Vec::new();
            for (k, comp) in values.iter().enumerate() {
                for (flat, x) in comp.iter().enumerate() {
                    if !x.is_zero() {
                        s.push((k, flat));
                    }
                }
            }
            s
        });
        let residues: Vec<Fp2> = supp.iter().map(|&(k, flat)| values[k][flat]).collect();
        let a = acc.get_or_insert_with(|| CrtAccumulator::new(residues.len()));
        a.add_residues(p, &residues);
        used += 1;
        let current = a.reconstruct();
        if let Some(coeffs) = current.clone().filter(|_| current == previous) {
            let mut components: Vec<MultiPoly<CycloNum>> = (0..c).map(|_| MultiPoly::zero(&table)).collect();
            let mut terms: Vec<Vec<(Vec<u32>, CycloNum)>> = vec![Vec::new(); c];
            for (&(k, flat), v) in supp.iter().zip(coeffs) {
                terms[k].push((unflatten(flat, &dims), v));
            }
            for (k, ts) in terms.into_iter().enumerate() {
                components[k] = MultiPoly::from_terms(&table, ts)?;
            }
            let gs = GroundStateSymbolic {
                n,
                table: Arc::clone(&table),
                patterns: strip.patterns().to_vec(),
                components,
            };
            if certify_symbolic(&gs, check_points)? {
                return Ok(gs);
            }
        }
        previous = current;
        if used > 40 {
            break;
        }
    }
    Err(Error::Precondition("symbolic reconstruction did not converge".into()))
}

fn certify_symbolic(gs: &GroundStateSymbolic, points: &[Vec<CycloNum>]) -> Result<bool> {
    for z in points {
        let v = gs.eval(z);
        if v[base_index(gs.n)] != base_normalization(gs.n, z)? {
            return Ok(false);
        }
        let tm = build_transfer_matrix(gs.n, &default_t(z), z)?;
        if !tm.is_eigenvector(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `facto · Φ_{1,n−1,0}` modulo `p`: alpha block `z_1..z_{n−1}`, beta block
/// `q z_n`, gamma block `q² z_{n+1}..q² z_{2n}`.
fn base_normalization_modp(ctx: &ModP, n: usize, z: &[Fp2]) -> Fp2 {
    let q = ctx.omega();
    let q2 = ctx.c_mul(q, q);
    let alphas = &z[..n - 1];
    let beta = ctx.c_mul(q, z[n - 1]);
    let gammas: Vec<Fp2> = z[n..].iter().map(|&x| ctx.c_mul(q2, x)).collect();
    let mut out = Fp2::ONE;
    for block in [alphas, &gammas[..]] {
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                out = ctx.c_mul(out, ctx.c_sub(ctx.c_mul(q, block[i]), ctx.c_mul(q2, block[j])));
            }
        }
    }
    for &a in alphas {
        out = ctx.c_mul(out, ctx.c_sub(a, beta));
    }
    out
}

/// `∏_{runs s} ∏_{i before j in s} (q z_i − q⁻¹ z_j)`, runs taken in cyclic order.
pub fn run_prefactor(table: &Arc<VarTable>, pattern: &LinkPattern) -> Result<MultiPoly<CycloNum>> {
    let names = table.names();
    let mut out = MultiPoly::constant(table, CycloNum::one());
    for run in pattern.unlinked_runs() {
        for x in 0..run.len() {
            for y in x + 1..run.len() {
                let f = MultiPoly::linear(
                    table,
                    &[(&names[run[x]], q_power(1)), (&names[run[y]], -q_power::<BigRational>(-1))],
                    CycloNum::zero(),
                )?;
                out = &out * &f;
            }
        }
    }
    Ok(out)
}

/// Divisibility by the run prefactor with a quotient symmetric in each run.
pub fn check_factorization(gs: &GroundStateSymbolic, pattern: &LinkPattern) -> Result<bool> {
    let psi = gs
        .component(pattern)
        .ok_or_else(|| Error::InvalidSpec(format!("pattern {pattern} not of size {}", 2 * gs.n)))?;
    let Some(quot) = psi.div_exact(&run_prefactor(&gs.table, pattern)?) else {
        return Ok(false);
    };
    let names = gs.table.names();
    for run in pattern.unlinked_runs() {
        let vars: Vec<&str> = run.iter().map(|&k| names[k].as_str()).collect();
        if !quot.is_symmetric(&vars)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No factor `q z_i − q⁻¹ z_j` divides every component.
pub fn coprime_family(gs: &GroundStateSymbolic) -> Result<bool> {
    let names = gs.table.names();
    for i in 0..names.len() {
        for j in 0..names.len() {
            if i == j {
                continue;
            }
            let f = MultiPoly::linear(
                &gs.table,
                &[(&names[i], q_power(1)), (&names[j], -q_power::<BigRational>(-1))],
                CycloNum::zero(),
            )?;
            if gs.components.iter().all(|p| p.div_exact(&f).is_some()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Root of unity `(−ω)^{3−n}` by which the base normalization of size `n`
/// differs from `∏ (q z_i − z_k)` times the size `n − 1` state at a wheel point.
pub fn wheel_constant(n: usize) -> CycloNum {
    let k = (3 - n as i64).rem_euclid(6);
    let minus_q = -q_power::<BigRational>(1);
    (0..k).fold(CycloNum::one(), |acc, _| acc * &minus_q)
}

/// `∏_{k ≠ i, i+1} (q z_i − z_k)`.
fn recurrence_prefactor(z: &[CycloNum], i: usize) -> CycloNum {
    let m = z.len();
    let j = (i + 1) % m;
    let q = q_power::<BigRational>(1);
    (0..m)
        .filter(|&k| k != i && k != j)
        .fold(CycloNum::one(), |acc, k| acc * (q.clone() * &z[i] - &z[k]))
}

/// Parameters with `z_{i+1}` replaced by `q² z_i` (cyclically).
pub fn wheel_point(z: &[CycloNum], i: usize) -> Vec<CycloNum> {
    let mut w = z.to_vec();
    let j = (i + 1) % z.len();
    w[j] = q_power::<BigRational>(2) * &z[i];
    w
}

fn drop_pair(z: &[CycloNum], i: usize) -> Vec<CycloNum> {
    let j = (i + 1) % z.len();
    z.iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, x)| x.clone())
        .collect()
}

/// Outcome of one wheel check, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct WheelCase {
    pub pattern: String,
    pub position: usize,
    pub little_arch: bool,
    pub pass: bool,
}

/// Wheel checks at position `i` (0-based, pairs `i` and `i+1` cyclically)
/// for every pattern, from symbolic components of sizes `n` and `n − 1`.
pub fn check_wheel_symbolic(
    gs: &GroundStateSymbolic,
    smaller: &GroundStateSymbolic,
    i: usize,
    z: &[CycloNum],
) -> Result<Vec<WheelCase>> {
    let w = wheel_point(z, i);
    let values = gs.eval(&w);
    let reduced = drop_pair(z, i);
    let small_values = smaller.eval(&reduced);
    wheel_cases(&gs.patterns, &values, &smaller.patterns, &small_values, z, i)
}

fn wheel_cases(
    patterns: &[LinkPattern],
    values: &[CycloNum],
    small_patterns: &[LinkPattern],
    small_values: &[CycloNum],
    z: &[CycloNum],
    i: usize,
) -> Result<Vec<WheelCase>> {
    let pref = recurrence_prefactor(z, i) * wheel_constant(patterns[0].half_size());
    let mut out = Vec::new();
    for (p, v) in patterns.iter().zip(values) {
        let little = p.has_little_arch(i);
        let pass = if little {
            let reduced = p.remove_little_arch(i)?;
            let k = small_patterns.iter().position(|x| *x == reduced).expect("enumerated");
            *v == pref.clone() * &small_values[k]
        } else {
            v.is_zero()
        };
        out.push(WheelCase {
            pattern: p.to_word(),
            position: i,
            little_arch: little,
            pass,
        });
    }
    Ok(out)
}

/// A nested pattern with a little arch at `i`, used to normalize at a
/// wheel point where the base component may vanish.
fn nested_with_arch_at(n: usize, i: usize) -> NestedArchSpec {
    if i == 2 * n - 1 {
        base_spec(n)
    } else if i < n {
        NestedArchSpec::new(n - 1 - i, i, 1)
    } else {
        NestedArchSpec::new(2 * n - 1 - i, 0, i + 1 - n)
    }
}

/// Numeric wheel checks at `z` with `z_{i+1}` forced to `q² z_i`. The
/// size-`n` state is normalized through a nested-arch component with a
/// little arch at `i`; the size-`n−1` state uses the base normalization.
pub fn check_wheel(n: usize, i: usize, z: &[CycloNum]) -> Result<Vec<WheelCase>> {
    check_size(n, z)?;
    if n < 2 {
        return Err(Error::Precondition("wheel checks need n ≥ 2".into()));
    }
    let w = wheel_point(z, i);
    let spec = nested_with_arch_at(n, i);
    let pat = nested_pattern(spec)?;
    debug_assert!(pat.has_little_arch(i));
    let idx = strip_table(n).index_of(&pat).expect("enumerated");
    let big = ground_state_normalized(n, &w, idx, &nested_component(spec, &w)?)?;
    let reduced = drop_pair(z, i);
    let small = ground_state_numeric(n - 1, &reduced)?;
    wheel_cases(&big.patterns, &big.components, &small.patterns, &small.components, z, i)
}

/// `Ψ_π / Ψ_min` at the homogeneous point, `None` if some ratio is not a
/// positive integer.
pub fn homogeneous_census(n: usize) -> Result<(GroundStateNumeric, Option<Vec<BigInt>>)> {
    let z = vec![CycloNum::one(); 2 * n];
    let gs = ground_state_numeric(n, &z)?;
    let min = gs.components[gs.min_index()].clone();
    let inv = min.inv().ok_or(Error::Normalization)?;
    let ratios: Option<Vec<BigInt>> = gs
        .components
        .iter()
        .map(|v| {
            let r = v.clone() * &inv;
            (r.om.is_zero() && r.re.is_integer() && r.re > BigRational::zero()).then(|| r.re.to_integer())
        })
        .collect();
    Ok((gs, ratios))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: i64, q: i64) -> CycloNum {
        Cyclo::from_base(rational(p, q))
    }

    fn sample_z(n: usize, seed: i64) -> Vec<CycloNum> {
        (0..2 * n as i64).map(|k| c(3 * k + 2 + seed, k + 1)).collect()
    }

    #[test]
    fn frozen_convention_passes_the_wheel_test() {
        // only the frozen convention (and its mirror) makes components
        // without an arch (i, i+1) vanish at z_{i+1} = q² z_i
        let n = 3;
        let z = wheel_point(&sample_z(n, 1), 0);
        let t = c(-3, 11);
        let mut passing = Vec::new();
        for conv in StripConvention::ALL {
            let table = StripTable::new(n, conv);
            let m = table.assemble(&site_weights(&t, &z, conv).unwrap());
            let ns = m.sub_identity().nullspace();
            assert_eq!(ns.len(), 1);
            let ok = table
                .patterns()
                .iter()
                .zip(&ns[0])
                .all(|(p, v)| p.has_little_arch(0) || v.is_zero());
            if ok {
                passing.push(conv);
            }
        }
        assert!(passing.contains(&CONVENTION));
        assert_eq!(passing.len(), 2);
    }

    #[test]
    fn one_by_one() {
        let tm = build_transfer_matrix(1, &c(2, 1), &[c(1, 1), c(5, 1)]).unwrap();
        assert_eq!(tm.entries(), Matrix::identity(1));
        let gs = ground_state_numeric(1, &[c(3, 1), c(4, 1)]).unwrap();
        assert_eq!(gs.components, vec![c(1, 1)]);
    }

    #[test]
    fn stochastic_columns() {
        for n in 2..=3 {
            let tm = build_transfer_matrix(n, &c(7, 3), &sample_z(n, 2)).unwrap();
            assert!(tm.column_sums_are_one());
        }
    }

    #[test]
    fn modular_kernel_matches_exact_elimination() {
        for n in 2..=3 {
            let z = sample_z(n, 3);
            let tm = build_transfer_matrix(n, &c(-1, 5), &z).unwrap();
            let norm = base_normalization(n, &z).unwrap();
            let exact = exact_kernel(&tm, base_index(n), &norm).unwrap();
            let modular = certified_kernel(&tm, base_index(n), &norm).unwrap();
            assert_eq!(exact, modular);
        }
    }

    #[test]
    fn homogeneous_small_census() {
        let (_, r) = homogeneous_census(2).unwrap();
        assert_eq!(r.unwrap(), vec![BigInt::from(1), BigInt::from(1)]);
        let (_, r) = homogeneous_census(3).unwrap();
        let mut r = r.unwrap();
        r.sort();
        assert_eq!(r, [1, 1, 1, 2, 2].map(BigInt::from).to_vec());
    }

    #[test]
    fn symbolic_two() {
        let gs = ground_state_symbolic(2).unwrap();
        assert_eq!(gs.components.len(), 2);
        assert!(gs.degrees_ok());
        for p in &gs.patterns {
            assert!(check_factorization(&gs, p).unwrap());
        }
    }

    #[test]
    fn wheel_two() {
        let z = sample_z(2, 4);
        for i in 0..4 {
            for case in check_wheel(2, i, &z).unwrap() {
                assert!(case.pass, "{case:?}");
            }
        }
    }
}
