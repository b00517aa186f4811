//! Verification suites with seeded random inputs and exact comparisons.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::fourarch;
use crate::fpl::fpl_counts;
use crate::linalg::proportional;
use crate::linkpat::{nested_pattern, NestedArchSpec};
use crate::loopmodel::{
    base_index, build_transfer_matrix, certified_kernel, check_factorization, check_wheel, check_wheel_symbolic,
    coprime_family, ground_state_numeric, ground_state_symbolic, homogeneous_census, nested_component,
    GroundStateSymbolic,
};
use crate::mvpoly::MultiPoly;
use crate::nested::{
    base_normalization, homogeneous_check, macmahon, phi_coincident_limit, phi_det, phi_lgv, phi_schur_specialized,
    phi_subset, recurrence_sign, schur, schur_rect, ParamSet, YoungDiagram,
};
use crate::scalar::rational;
use crate::tilings::{
    appendix_a_hexagon, appendix_a_hexagon_weight, appendix_a_parallelogram, appendix_a_parallelogram_weight,
    build_hexagon, check_frozen_rows, check_partfun_factorization, check_swap_symmetry, hexagon_count, nip_extract,
};
use crate::CycloNum;

pub const SUITES: [&str; 11] = [
    "stochastic",
    "eigen",
    "theorems",
    "phi-cross",
    "recurrence",
    "tiling",
    "schur",
    "homogeneous",
    "appendixA",
    "rs",
    "four-arch",
];

/// Size bounds for a suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest loop-model size `n`.
    pub n: usize,
    /// Largest `a`, `b`, `c` for nested-arch families and hexagons.
    pub abc: usize,
    /// Random draws per configuration.
    pub draws: usize,
}

impl Bounds {
    pub fn default_for(suite: &str) -> Bounds {
        match suite {
            "stochastic" | "eigen" => Bounds { n: 5, abc: 0, draws: 10 },
            "theorems" | "theorems-symbolic" | "theorems-wheel" | "ratio" => Bounds { n: 5, abc: 0, draws: 5 },
            "phi-cross" | "recurrence" => Bounds { n: 0, abc: 3, draws: 10 },
            "tiling" => Bounds { n: 0, abc: 4, draws: 3 },
            "schur" => Bounds { n: 0, abc: 3, draws: 3 },
            "homogeneous" => Bounds { n: 4, abc: 4, draws: 1 },
            "appendixA" => Bounds { n: 0, abc: 3, draws: 2 },
            "rs" => Bounds { n: 5, abc: 0, draws: 1 },
            "four-arch" => Bounds { n: 5, abc: 2, draws: 2 },
            _ => Bounds { n: 5, abc: 2, draws: 2 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub bounds: Bounds,
    pub cases: Vec<Case>,
    /// Excluded from serialized reports, which must be reproducible.
    #[serde(skip)]
    pub wall: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// Output formats for reports and values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

pub fn emit(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Tsv => {
            let mut s = String::from("id\tinputs\texpected\tactual\tpass\n");
            for c in &report.cases {
                let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}", c.id, c.inputs, c.expected, c.actual, c.pass);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                let tag = if c.pass { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "{tag} {} [{}] expected {} got {}", c.id, c.inputs, c.expected, c.actual);
            }
            let failed = report.failures().count();
            let _ = writeln!(
                s,
                "{}: {} cases, {} failed (seed {})",
                report.suite,
                report.cases.len(),
                failed,
                report.seed
            );
            s
        }
    }
}

/// Seeded randomness and the time budget shared by one suite run.
pub struct Ctx {
    rng: ChaCha8Rng,
    start: Instant,
    budget: Option<Duration>,
    cases: Vec<Case>,
}

const RETRIES: usize = 5;

impl Ctx {
    pub fn new(seed: u64, budget: Option<Duration>) -> Self {
        Ctx {
            rng: ChaCha8Rng::seed_from_u64(seed),
            start: Instant::now(),
            budget,
            cases: Vec::new(),
        }
    }

    pub(crate) fn tick(&self) -> Result<()> {
        match self.budget {
            Some(b) if self.start.elapsed() > b => Err(Error::Budget(b.as_secs())),
            _ => Ok(()),
        }
    }

    pub(crate) fn push(&mut self, id: impl Into<String>, inputs: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Result<()> {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.cases.push(Case {
            id: id.into(),
            inputs: inputs.into(),
            pass: expected == actual,
            expected,
            actual,
        });
        self.tick()
    }

    pub(crate) fn check(&mut self, id: impl Into<String>, inputs: impl Into<String>, ok: bool) -> Result<()> {
        self.push(id, inputs, true, ok)
    }

    /// Uniform integer in `[1, 10⁶]`.
    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(1..=1_000_000)
    }

    pub fn rat(&mut self) -> BigRational {
        rational(self.int(), 1)
    }

    pub fn cyclo(&mut self) -> CycloNum {
        Cyclo::from_base(self.rat())
    }

    pub fn cyclo_vec(&mut self, k: usize) -> Vec<CycloNum> {
        (0..k).map(|_| self.cyclo()).collect()
    }

    pub fn params(&mut self, spec: NestedArchSpec) -> ParamSet<BigRational> {
        let [na, nb, ng] = spec.block_sizes();
        let mut v = |k: usize| (0..k).map(|_| self.rat()).collect::<Vec<_>>();
        ParamSet {
            alphas: v(na),
            betas: v(nb),
            gammas: v(ng),
        }
    }

    /// Retries `f` on fresh draws when it hits a non-generic point.
    pub(crate) fn generic<T>(&mut self, mut f: impl FnMut(&mut Self) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..=RETRIES {
            match f(self) {
                Err(
                    e @ (Error::SingularWeight(_)
                    | Error::DegenerateKernel(_)
                    | Error::Normalization
                    | Error::CoincidentAlpha
                    | Error::PoleCollision
                    | Error::CoincidentGamma
                    | Error::DivisionByZero),
                ) => last = Some(e),
                other => return other,
            }
        }
        Err(last.expect("at least one attempt"))
    }
}

/// Pieces of `theorems` that can be run alone.
pub const PARTS: [&str; 3] = ["theorems-symbolic", "theorems-wheel", "ratio"];

const MAX_N: usize = 6;
const MAX_ABC: usize = 5;

/// Runs one suite; `bounds` defaults per suite.
pub fn run_verify(suite: &str, bounds: Option<Bounds>, seed: u64, budget: Option<Duration>) -> Result<VerificationReport> {
    if !SUITES.contains(&suite) && !PARTS.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    let bounds = bounds.unwrap_or_else(|| Bounds::default_for(suite));
    if bounds.n > MAX_N || bounds.abc > MAX_ABC {
        return Err(Error::SizeLimit(format!(
            "bounds n ≤ {MAX_N} and a, b, c ≤ {MAX_ABC}, got n = {} and {}",
            bounds.n, bounds.abc
        )));
    }
    let mut ctx = Ctx::new(seed, budget);
    match suite {
        "stochastic" => stochastic(&mut ctx, bounds)?,
        "eigen" => eigen(&mut ctx, bounds)?,
        "theorems" => {
            theorems_symbolic(&mut ctx, bounds)?;
            wheel_numeric(&mut ctx, bounds)?;
            ratio(&mut ctx, bounds)?;
        }
        "phi-cross" => phi_cross(&mut ctx, bounds)?,
        "recurrence" => recurrence(&mut ctx, bounds)?,
        "tiling" => tiling(&mut ctx, bounds)?,
        "schur" => schur_suite(&mut ctx, bounds)?,
        "homogeneous" => homogeneous(&mut ctx, bounds)?,
        "appendixA" => appendix(&mut ctx, bounds)?,
        "rs" => rs(&mut ctx, bounds)?,
        "four-arch" => fourarch::verify_cases(&mut ctx, bounds)?,
        "theorems-symbolic" => theorems_symbolic(&mut ctx, bounds)?,
        "theorems-wheel" => wheel_numeric(&mut ctx, bounds)?,
        "ratio" => ratio(&mut ctx, bounds)?,
        _ => unreachable!("suite list checked above"),
    }
    Ok(VerificationReport {
        suite: suite.to_string(),
        seed,
        bounds,
        wall: ctx.start.elapsed(),
        cases: ctx.cases,
    })
}

fn show(z: &[CycloNum]) -> String {
    z.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn triples(max: usize) -> Vec<NestedArchSpec> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                if a + b + c > 0 {
                    out.push(NestedArchSpec::new(a, b, c));
                }
            }
        }
    }
    out
}

fn stochastic(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for n in 1..=b.n {
        for k in 0..b.draws {
            let (t, z) = ctx.generic(|c| {
                let t = c.cyclo();
                let z = c.cyclo_vec(2 * n);
                build_transfer_matrix(n, &t, &z)?;
                Ok((t, z))
            })?;
            let tm = build_transfer_matrix(n, &t, &z)?;
            ctx.check(format!("column sums n={n} #{k}"), format!("t={t} z={}", show(&z)), tm.column_sums_are_one())?;
        }
    }
    Ok(())
}

/// One-dimensional kernel (modular rank plus exact eigenvector) and
/// independence of the spectral parameter.
fn eigen(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for n in 1..=b.n {
        for k in 0..b.draws {
            let (z, v1, v2, t1, t2) = ctx.generic(|c| {
                let z = c.cyclo_vec(2 * n);
                let (t1, t2) = (c.cyclo(), c.cyclo());
                let norm = base_normalization(n, &z)?;
                let v1 = certified_kernel(&build_transfer_matrix(n, &t1, &z)?, base_index(n), &norm)?;
                let v2 = certified_kernel(&build_transfer_matrix(n, &t2, &z)?, base_index(n), &norm)?;
                Ok((z, v1, v2, t1, t2))
            })?;
            let inputs = format!("t1={t1} t2={t2} z={}", show(&z));
            ctx.check(format!("kernel n={n} #{k}"), inputs.clone(), true)?;
            ctx.check(format!("t-independence n={n} #{k}"), inputs, proportional(&v1, &v2))?;
        }
    }
    Ok(())
}

fn symbolic_states(ctx: &Ctx, max: usize) -> Result<Vec<GroundStateSymbolic>> {
    (1..=max.min(4))
        .map(|n| {
            ctx.tick()?;
            ground_state_symbolic(n)
        })
        .collect()
}

fn theorems_symbolic(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    let states = symbolic_states(ctx, b.n)?;
    for gs in &states {
        let n = gs.n;
        ctx.check(format!("degrees n={n}"), "", gs.degrees_ok())?;
        ctx.check(format!("coprime n={n}"), "", coprime_family(gs)?)?;
        for p in &gs.patterns {
            ctx.check(format!("factorization {p}"), "", check_factorization(gs, p)?)?;
        }
        if n == 3 {
            let sum = gs
                .components
                .iter()
                .fold(MultiPoly::zero(&gs.table), |acc, p| &acc + p);
            let names: Vec<&str> = gs.table.names().iter().map(String::as_str).collect();
            ctx.check("symmetric sum n=3", "", sum.is_symmetric(&names)?)?;
        }
        if n >= 2 {
            let smaller = &states[n - 2];
            for i in 0..2 * n {
                let z = ctx.cyclo_vec(2 * n);
                for case in check_wheel_symbolic(gs, smaller, i, &z)? {
                    let kind = if case.little_arch { "recursion" } else { "vanishing" };
                    ctx.check(format!("wheel {kind} {} i={i}", case.pattern), show(&z), case.pass)?;
                }
            }
        }
    }
    Ok(())
}

fn wheel_numeric(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    if b.n < 5 {
        return Ok(());
    }
    let n = 5;
    for i in 0..2 * n {
        let (z, cases) = ctx.generic(|c| {
            let z = c.cyclo_vec(2 * n);
            let cases = check_wheel(n, i, &z)?;
            Ok((z, cases))
        })?;
        for case in cases {
            let kind = if case.little_arch { "recursion" } else { "vanishing" };
            ctx.check(format!("wheel {kind} {} i={i}", case.pattern), show(&z), case.pass)?;
        }
    }
    Ok(())
}

/// Nested-arch components of the exact kernel against `E · facto · Φ`.
pub(crate) fn ratio(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for n in 3..=b.n {
        for k in 0..b.draws {
            let (z, gs) = ctx.generic(|c| {
                let z = c.cyclo_vec(2 * n);
                let gs = ground_state_numeric(n, &z)?;
                Ok((z, gs))
            })?;
            for a in 0..=n {
                for bb in 0..=n - a {
                    let spec = NestedArchSpec::new(a, bb, n - a - bb);
                    let p = nested_pattern(spec)?;
                    let got = gs.component(&p).expect("enumerated").clone();
                    let want = nested_component(spec, &z)?;
                    ctx.push(format!("ratio ({a},{bb},{}) #{k}", n - a - bb), show(&z), want, got)?;
                }
            }
        }
    }
    Ok(())
}

fn phi_cross(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for spec in triples(b.abc) {
        for k in 0..b.draws {
            let (p, s) = ctx.generic(|c| {
                let p = c.params(spec);
                let s = phi_subset(spec, &p)?;
                phi_det(spec, &p)?;
                phi_lgv(spec, &p)?;
                Ok((p, s))
            })?;
            let id = format!("({},{},{}) #{k}", spec.a, spec.b, spec.c);
            let inputs = format!("{p:?}");
            ctx.push(format!("det {id}"), inputs.clone(), &s, phi_det(spec, &p)?)?;
            ctx.push(format!("lgv {id}"), inputs.clone(), &s, phi_lgv(spec, &p)?)?;
            let z = build_hexagon(spec, &p)?.difference_partition_function();
            ctx.push(format!("tiling {id}"), inputs, &s, z)?;
        }
    }
    Ok(())
}

fn recurrence(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for spec in triples(b.abc).into_iter().filter(|s| s.c >= 1) {
        let mut signs = Vec::new();
        for _ in 0..b.draws {
            let sign = ctx.generic(|c| {
                let p = c.params(spec);
                recurrence_sign(spec, &p)
            })?;
            signs.push(sign);
        }
        let first = signs[0];
        let consistent = first.is_some() && signs.iter().all(|s| *s == first);
        let shown = match first {
            Some(s) if consistent => format!("{s:+}"),
            _ => format!("{signs:?}"),
        };
        let expected = if spec.b % 2 == 0 { "+1" } else { "-1" };
        ctx.push(format!("sign ({},{},{})", spec.a, spec.b, spec.c), format!("{} draws", b.draws), expected, shown)?;
    }
    Ok(())
}

fn tiling(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for spec in triples(b.abc) {
        let (a, bb, c) = (spec.a, spec.b, spec.c);
        let id = format!("({a},{bb},{c})");
        ctx.push(format!("count {id}"), "", macmahon(a, bb, c), hexagon_count(a, bb, c))?;
        if a.max(bb).max(c) <= 3 && spec.n() <= 7 {
            let p = ctx.generic(|cx| {
                let p = cx.params(spec);
                check_partfun_factorization(spec, &p)?;
                Ok(p)
            })?;
            let h = build_hexagon(spec, &p)?;
            let tilings = h.enumerate_tilings();
            let mut nips = std::collections::HashSet::new();
            for t in &tilings {
                nips.insert(nip_extract(t, &h)?);
            }
            ctx.push(format!("nip bijection {id}"), "", tilings.len(), nips.len())?;
            ctx.check(format!("partfun {id}"), format!("{p:?}"), check_partfun_factorization(spec, &p)?)?;
            if bb >= 1 {
                ctx.check(format!("frozen rows {id}"), format!("{p:?}"), check_frozen_rows(spec, &p)?)?;
            }
        }
    }
    Ok(())
}

fn schur_suite(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    // Jacobi–Trudi against a direct tableau count on small shapes
    let xs: Vec<BigRational> = (0..3).map(|_| ctx.rat()).collect();
    for shape in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 1]] {
        let y = YoungDiagram::new(shape.clone())?;
        ctx.push(format!("schur {shape:?}"), "", tableau_schur(&shape, &xs), schur(&y, &xs))?;
    }
    ctx.push("schur empty", "", BigRational::one(), schur_rect::<BigRational>(0, 0, &[]))?;
    ctx.push("schur too many rows", "", BigRational::zero(), schur_rect(2, 1, &xs[..1]))?;
    for spec in triples(b.abc) {
        for k in 0..b.draws {
            let (al, be, gs) = (ctx.rat(), ctx.rat(), (0..spec.a + spec.b).map(|_| ctx.rat()).collect::<Vec<_>>());
            let lhs = ctx.generic(|_| phi_schur_specialized(spec, &al, &be, &gs))?;
            let rhs = phi_coincident_limit(spec, &al, &be, &gs)?;
            ctx.push(format!("schur ({},{},{}) #{k}", spec.a, spec.b, spec.c), "", rhs, lhs)?;
        }
    }
    Ok(())
}

/// `s_λ(x)` as a sum over semistandard tableaux.
fn tableau_schur(shape: &[usize], xs: &[BigRational]) -> BigRational {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        t: &mut BTreeMap<(usize, usize), usize>,
        xs: &[BigRational],
        acc: &mut BigRational,
    ) {
        if k == cells.len() {
            *acc += t.values().fold(BigRational::one(), |p, &v| p * &xs[v]);
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { t[&(r, c - 1)] } else { 0 };
        let lo_col = if r > 0 { t[&(r - 1, c)] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..xs.len() {
            t.insert((r, c), v);
            fill(k + 1, cells, t, xs, acc);
        }
        t.remove(&(r, c));
    }
    let mut acc = BigRational::zero();
    fill(0, &cells, &mut BTreeMap::new(), xs, &mut acc);
    acc
}

fn homogeneous(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for spec in triples(b.abc) {
        let h = homogeneous_check(spec.a, spec.b, spec.c)?;
        ctx.push(
            format!("norm ({},{},{})", spec.a, spec.b, spec.c),
            format!("value {}", h.value),
            &h.expected_norm_sq,
            &h.norm_sq,
        )?;
    }
    for n in 1..=b.n.min(4) {
        let (gs, _) = homogeneous_census(n)?;
        let m = gs.components[gs.min_index()].norm_sq();
        let want = BigRational::from_integer(BigInt::from(3).pow((n * (n - 1)) as u32));
        ctx.push(format!("minimal component n={n}"), "z = 1", want, m)?;
    }
    Ok(())
}

fn appendix(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for k in 0..=b.abc {
        for d in 0..b.draws {
            let al: Vec<BigRational> = (0..=k).map(|_| ctx.rat()).collect();
            let be: Vec<BigRational> = (0..=k).map(|_| ctx.rat()).collect();
            let (g1, g2) = ctx.generic(|c| {
                let (g1, g2) = (c.rat(), c.rat());
                if g1 == g2 {
                    return Err(Error::CoincidentGamma);
                }
                Ok((g1, g2))
            })?;
            let closed = appendix_a_hexagon_weight(k, &al, &be, &g1, &g2)?;
            let z = appendix_a_hexagon(k, &al, &be, &g1, &g2)?.difference_partition_function();
            let signed = if k % 2 == 0 { z } else { -z };
            ctx.push(format!("hexagon k={k} #{d}"), "", &closed, signed)?;
            ctx.push(
                format!("hexagon swap k={k} #{d}"),
                "",
                &closed,
                appendix_a_hexagon_weight(k, &al, &be, &g2, &g1)?,
            )?;
            if k >= 1 {
                let par = appendix_a_parallelogram(&al[..k], &g1, &g2)?;
                ctx.push(format!("parallelogram tilings k={k} #{d}"), "", 1, par.count_tilings())?;
                ctx.push(
                    format!("parallelogram k={k} #{d}"),
                    "",
                    appendix_a_parallelogram_weight(&al[..k], &g1, &g2)?,
                    par.difference_partition_function(),
                )?;
            }
        }
    }
    for spec in triples(b.abc) {
        let p = ctx.params(spec);
        let h = build_hexagon(spec, &p)?;
        for f in 0..3 {
            for i in 0..h.families[f].1.len().saturating_sub(1) {
                ctx.check(
                    format!("swap ({},{},{}) {}{}↔{}", spec.a, spec.b, spec.c, h.families[f].0, i + 1, i + 2),
                    "",
                    check_swap_symmetry(&h, f, i, i + 1),
                )?;
            }
        }
    }
    Ok(())
}

fn rs(ctx: &mut Ctx, b: Bounds) -> Result<()> {
    for n in 1..=b.n {
        let (gs, ratios) = homogeneous_census(n)?;
        let census = fpl_counts(n)?;
        ctx.push(format!("total n={n}"), "", crate::fpl::asm_count(n), census.total())?;
        let Some(ratios) = ratios else {
            ctx.check(format!("integral ratios n={n}"), "", false)?;
            continue;
        };
        for (p, r) in gs.patterns.iter().zip(&ratios) {
            ctx.push(format!("RS {p}"), "", census.count(p), r)?;
        }
    }
    Ok(())
}

/// Runs every suite at its default bounds.
pub fn run_all(seed: u64, budget: Option<Duration>) -> Result<Vec<VerificationReport>> {
    SUITES.iter().map(|s| run_verify(s, None, seed, budget)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_verify("nope", None, 1, None), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn rs_small_is_reproducible() {
        let b = Bounds { n: 3, abc: 0, draws: 1 };
        let r1 = run_verify("rs", Some(b), 1, None).unwrap();
        let r2 = run_verify("rs", Some(b), 1, None).unwrap();
        assert!(r1.passed());
        assert_eq!(r1.cases.iter().filter(|c| c.id.starts_with("RS")).count(), 5 + 2 + 1);
        assert_eq!(emit(&r1, Format::Json), emit(&r2, Format::Json));
    }

    #[test]
    fn phi_cross_small() {
        let b = Bounds { n: 0, abc: 2, draws: 1 };
        let r = run_verify("phi-cross", Some(b), 1, None).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn empty_report_is_valid_json() {
        let r = VerificationReport {
            suite: "rs".into(),
            seed: 0,
            bounds: Bounds { n: 0, abc: 0, draws: 0 },
            cases: vec![],
            wall: Duration::ZERO,
        };
        let v: serde_json::Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(v["cases"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn tableau_oracle() {
        let xs = vec![rational(2, 1), rational(3, 1)];
        // s_(1,1)(x1, x2) = x1 x2
        assert_eq!(tableau_schur(&[1, 1], &xs), rational(6, 1));
        assert_eq!(tableau_schur(&[1], &xs), rational(5, 1));
    }
}
