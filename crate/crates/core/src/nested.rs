//! Closed forms for the reduced component `Φ_{a,b,c}` of a pattern with
//! three fans of nested arches.
//!
//! [`phi_subset`] is the reference definition. The determinant, LGV and
//! Schur routes are independent evaluations of the same polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::linkpat::NestedArchSpec;
use crate::scalar::{CubeRootField, Field};
use crate::CycloNum;

/// Spectral parameters of the three blocks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSet<F> {
    pub alphas: Vec<F>,
    pub betas: Vec<F>,
    pub gammas: Vec<F>,
}

impl<F: Field> ParamSet<F> {
    pub fn new(spec: NestedArchSpec, alphas: Vec<F>, betas: Vec<F>, gammas: Vec<F>) -> Result<Self> {
        let p = ParamSet { alphas, betas, gammas };
        p.check(spec)?;
        Ok(p)
    }

    fn check(&self, spec: NestedArchSpec) -> Result<()> {
        let want = spec.block_sizes();
        let got = [self.alphas.len(), self.betas.len(), self.gammas.len()];
        if want != got {
            return Err(Error::InconsistentSize(format!(
                "({},{},{}) needs block sizes {want:?}, got {got:?}",
                spec.a, spec.b, spec.c
            )));
        }
        Ok(())
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> ParamSet<G> {
        ParamSet {
            alphas: self.alphas.iter().map(&f).collect(),
            betas: self.betas.iter().map(&f).collect(),
            gammas: self.gammas.iter().map(&f).collect(),
        }
    }
}

/// Young diagram given by weakly decreasing row lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec("row lengths must weakly decrease".into()));
        }
        Ok(YoungDiagram { rows })
    }

    /// `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        YoungDiagram { rows: vec![cols; rows] }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn prod<F: Field>(it: impl IntoIterator<Item = F>) -> F {
    it.into_iter().fold(F::one(), |acc, x| acc * x)
}

fn check_alphas<F: Field>(alphas: &[F]) -> Result<()> {
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            if alphas[i] == alphas[j] {
                return Err(Error::CoincidentAlpha);
            }
        }
    }
    Ok(())
}

fn check_poles<F: Field>(alphas: &[F], betas: &[F]) -> Result<()> {
    check_alphas(alphas)?;
    if alphas.iter().any(|a| betas.contains(a)) {
        return Err(Error::PoleCollision);
    }
    Ok(())
}

/// Sum over `c`-subsets `I` of the alpha indices.
pub fn phi_subset<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<F> {
    p.check(spec)?;
    check_alphas(&p.alphas)?;
    let nb = spec.b + spec.c;
    let mut total = F::zero();
    for subset in combinations(nb, spec.c) {
        let mut inside = vec![false; nb];
        for &i in &subset {
            inside[i] = true;
        }
        let mut num = F::one();
        let mut den = F::one();
        for i in 0..nb {
            let a = &p.alphas[i];
            if inside[i] {
                for g in &p.gammas {
                    num *= a.clone() - g;
                }
                for j in (0..nb).filter(|&j| !inside[j]) {
                    den *= a.clone() - &p.alphas[j];
                }
            } else {
                for b in &p.betas {
                    num *= a.clone() - b;
                }
            }
        }
        if num.is_zero() {
            continue;
        }
        total += num * den.inv().ok_or(Error::CoincidentAlpha)?;
    }
    Ok(total)
}

/// Residue at `z = alphas[i]` of `f(z) / (∏(z − alphas) ∏(z − betas))`
/// with `f(alphas[i])` already evaluated as `numer`.
fn residue<F: Field>(numer: F, i: usize, alphas: &[F], betas: &[F]) -> Result<F> {
    let a = &alphas[i];
    let den = prod(
        alphas.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| a.clone() - x),
    ) * prod(betas.iter().map(|b| a.clone() - b));
    Ok(numer * den.inv().ok_or(Error::PoleCollision)?)
}

/// `P_ℓ` as the list of its roots (1-based `ℓ`).
fn p_roots<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>, l: usize) -> Vec<F> {
    let mut r: Vec<F> = p.alphas[..l - 1].to_vec();
    r.extend_from_slice(&p.betas[..spec.c - l]);
    r
}

/// `Q_m` as the list of its roots (1-based `m`).
fn q_roots<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>, m: usize) -> Vec<F> {
    let NestedArchSpec { a, b, c } = spec;
    let mut r: Vec<F> = p.alphas[b + m..b + c].to_vec();
    r.extend_from_slice(&p.betas[a + c + 1 - m..a + c]);
    r
}

fn eval_roots<F: Field>(roots: &[F], z: &F) -> F {
    prod(roots.iter().map(|r| z.clone() - r))
}

/// `∏(α_i − β_j)` over 1-based pairs with `keep(i + j)`.
fn ab_product<F: Field>(p: &ParamSet<F>, keep: impl Fn(usize) -> bool) -> F {
    let mut out = F::one();
    for (i, a) in p.alphas.iter().enumerate() {
        for (j, b) in p.betas.iter().enumerate() {
            if keep(i + j + 2) {
                out *= a.clone() - b;
            }
        }
    }
    out
}

/// Closed form of `det P`: product over `i + j ≤ c`.
pub fn det_p_closed<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> F {
    ab_product(p, |s| s <= spec.c)
}

/// Closed form of `det Q`: product over `i + j ≥ a + b + c + 2`.
pub fn det_q_closed<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> F {
    ab_product(p, |s| s >= spec.n() + 2)
}

/// Coefficient matrices of `P_1..P_c` and `Q_1..Q_c` (row `ℓ` holds the
/// coefficients of `z^0..z^{c−1}`).
pub fn coefficient_matrices<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> (Matrix<F>, Matrix<F>) {
    let c = spec.c;
    let coeffs = |roots: Vec<F>| {
        let mut poly = vec![F::one()];
        for r in roots {
            let mut next = vec![F::zero(); poly.len() + 1];
            for (k, x) in poly.iter().enumerate() {
                next[k + 1] += x;
                next[k] -= x.clone() * &r;
            }
            poly = next;
        }
        poly.resize(c, F::zero());
        poly
    };
    let pm = Matrix::from_rows((1..=c).map(|l| coeffs(p_roots(spec, p, l))).collect());
    let qm = Matrix::from_rows((1..=c).map(|m| coeffs(q_roots(spec, p, m))).collect());
    (pm, qm)
}

/// Determinant route: `∏(α − β) / (det P det Q) · det[∮ P_ℓ Q_m …]`.
pub fn phi_det<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<F> {
    p.check(spec)?;
    check_poles(&p.alphas, &p.betas)?;
    let pref = ab_product(p, |_| true);
    let c = spec.c;
    if c == 0 {
        return Ok(pref);
    }
    let gam: Vec<F> = p.alphas.iter().map(|a| eval_roots(&p.gammas, a)).collect();
    let ps: Vec<Vec<F>> = (1..=c)
        .map(|l| {
            let roots = p_roots(spec, p, l);
            p.alphas.iter().map(|a| eval_roots(&roots, a)).collect()
        })
        .collect();
    let qs: Vec<Vec<F>> = (1..=c)
        .map(|m| {
            let roots = q_roots(spec, p, m);
            p.alphas.iter().map(|a| eval_roots(&roots, a)).collect()
        })
        .collect();
    let mut weights = Vec::with_capacity(p.alphas.len());
    for i in 0..p.alphas.len() {
        weights.push(residue(gam[i].clone(), i, &p.alphas, &p.betas)?);
    }
    let m = Matrix::from_fn(c, c, |l, mm| {
        (0..p.alphas.len()).fold(F::zero(), |acc, i| {
            acc + ps[l][i].clone() * &qs[mm][i] * &weights[i]
        })
    });
    let norm = det_p_closed(spec, p) * det_q_closed(spec, p);
    let inv = norm.inv().ok_or(Error::PoleCollision)?;
    Ok(pref * inv * m.det())
}

/// Single-path propagator `F_{a,b;1}` as a residue sum; takes `b+1`
/// alphas, `a+1` betas and `a+b` gammas.
pub fn propagator_single<F: Field>(alphas: &[F], betas: &[F], gammas: &[F]) -> Result<F> {
    if alphas.is_empty() || betas.is_empty() || gammas.len() + 2 != alphas.len() + betas.len() {
        return Err(Error::InconsistentSize(format!(
            "propagator with {} alphas, {} betas, {} gammas",
            alphas.len(),
            betas.len(),
            gammas.len()
        )));
    }
    check_poles(alphas, betas)?;
    let mut sum = F::zero();
    for (i, a) in alphas.iter().enumerate() {
        sum += residue(eval_roots(gammas, a), i, alphas, betas)?;
    }
    let last = alphas[alphas.len() - 1].clone() - &betas[betas.len() - 1];
    Ok(last * sum)
}

/// Same propagator by the two-term step recursion over path prefixes.
pub fn propagator_paths<F: Field>(alphas: &[F], betas: &[F], gammas: &[F]) -> Result<F> {
    let (b, a) = (alphas.len() - 1, betas.len() - 1);
    if gammas.len() != a + b {
        return Err(Error::InconsistentSize("propagator gammas".into()));
    }
    // g[p][r] = F_{p,r;1} on the prefixes of the parameter lists
    let mut g = vec![vec![F::zero(); b + 1]; a + 1];
    g[0][0] = F::one();
    for p in 0..=a {
        for r in 0..=b {
            if p + r == 0 {
                continue;
            }
            let gam = &gammas[p + r - 1];
            let mut v = F::zero();
            if p > 0 {
                let w = (alphas[r].clone() - gam)
                    .checked_div(&(alphas[r].clone() - &betas[p - 1]))
                    .ok_or(Error::PoleCollision)?;
                v += w * &g[p - 1][r];
            }
            if r > 0 {
                let w = (gam.clone() - &betas[p])
                    .checked_div(&(alphas[r - 1].clone() - &betas[p]))
                    .ok_or(Error::PoleCollision)?;
                v += w * &g[p][r - 1];
            }
            g[p][r] = v;
        }
    }
    Ok(g[a][b].clone())
}

/// Prefactor times the determinant of shifted one-path propagators.
pub fn phi_lgv<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<F> {
    p.check(spec)?;
    check_poles(&p.alphas, &p.betas)?;
    let NestedArchSpec { a, b, c } = spec;
    let pref = ab_product(p, |s| s > c && s <= a + b + c);
    if c == 0 {
        return Ok(pref);
    }
    let mut rows = Vec::with_capacity(c);
    for l in 1..=c {
        let mut row = Vec::with_capacity(c);
        for m in 1..=c {
            if a + l < m || b + m < l {
                row.push(F::zero());
                continue;
            }
            let al = &p.alphas[l - 1..b + m];
            let be = &p.betas[c - l..a + c + 1 - m];
            row.push(propagator_single(al, be, &p.gammas)?);
        }
        rows.push(row);
    }
    Ok(pref * Matrix::from_rows(rows).det())
}

/// Parameters with `β_{a+c}` replaced by `α_{b+c}`, and the reduced set
/// with both removed.
fn recurrence_sides<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<(F, F)> {
    if spec.c == 0 {
        return Err(Error::Precondition("recurrence needs c ≥ 1".into()));
    }
    p.check(spec)?;
    let last_alpha = p.alphas[p.alphas.len() - 1].clone();
    let mut special = p.clone();
    let nb = special.betas.len();
    special.betas[nb - 1] = last_alpha.clone();
    let lhs = phi_subset(spec, &special)?;
    let reduced = ParamSet {
        alphas: p.alphas[..p.alphas.len() - 1].to_vec(),
        betas: p.betas[..nb - 1].to_vec(),
        gammas: p.gammas.clone(),
    };
    let smaller = NestedArchSpec::new(spec.a, spec.b, spec.c - 1);
    let rhs = prod(p.gammas.iter().map(|g| last_alpha.clone() - g)) * phi_subset(smaller, &reduced)?;
    Ok((lhs, rhs))
}

/// Whether `Φ|_{β_{a+c}=α_{b+c}} = sign · ∏(α_{b+c} − γ_k) · Φ_{a,b,c−1}`.
pub fn check_recurrence<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>, sign: i8) -> Result<bool> {
    let (lhs, rhs) = recurrence_sides(spec, p)?;
    Ok(lhs == rhs * F::from_i64(sign.into()))
}

/// The sign `±1` making [`check_recurrence`] hold, if either does.
pub fn recurrence_sign<F: Field>(spec: NestedArchSpec, p: &ParamSet<F>) -> Result<Option<i8>> {
    let (lhs, rhs) = recurrence_sides(spec, p)?;
    if lhs == rhs {
        Ok(Some(1))
    } else if lhs == -rhs {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

/// Complete homogeneous symmetric polynomials `h_0..=h_k`.
fn complete_homogeneous<F: Field>(xs: &[F], k: usize) -> Vec<F> {
    let mut h = vec![F::zero(); k + 1];
    h[0] = F::one();
    for x in xs {
        // multiply the generating series by 1/(1 − x t)
        for d in 1..=k {
            let t = h[d - 1].clone() * x;
            h[d] += t;
        }
    }
    h
}

/// Schur polynomial by the Jacobi–Trudi determinant `det[h_{λ_i − i + j}]`.
pub fn schur<F: Field>(shape: &YoungDiagram, xs: &[F]) -> F {
    let rows: Vec<usize> = shape.rows().iter().copied().filter(|&r| r > 0).collect();
    let l = rows.len();
    if l > xs.len() {
        return F::zero();
    }
    if l == 0 {
        return F::one();
    }
    let h = complete_homogeneous(xs, rows[0] + l);
    Matrix::from_fn(l, l, |i, j| {
        let k = rows[i] as isize - i as isize + j as isize;
        if k < 0 {
            F::zero()
        } else {
            h[k as usize].clone()
        }
    })
    .det()
}

/// `s_{Y_{b,c}}` for the `b × c` rectangle.
pub fn schur_rect<F: Field>(b: usize, c: usize, xs: &[F]) -> F {
    if c == 0 {
        return F::one();
    }
    schur(&YoungDiagram::rectangle(b, c), xs)
}

/// `C′ s_{Y_{b,c}}(Γ)` with all alphas equal to `alpha` and all betas to `beta`,
/// `C′ = (α−β)^{ab} ∏_k (α−γ_k)^c`.
pub fn phi_schur_specialized<F: Field>(spec: NestedArchSpec, alpha: &F, beta: &F, gammas: &[F]) -> Result<F> {
    let NestedArchSpec { a, b, c } = spec;
    if gammas.len() != a + b {
        return Err(Error::InconsistentSize(format!("expected {} gammas", a + b)));
    }
    if alpha == beta || gammas.contains(alpha) {
        return Err(Error::PoleCollision);
    }
    let mut cp = (alpha.clone() - beta).pow((a * b) as u32);
    let mut eig = Vec::with_capacity(gammas.len());
    for g in gammas {
        cp *= (alpha.clone() - g).pow(c as u32);
        eig.push((g.clone() - beta).checked_div(&(alpha.clone() - g)).ok_or(Error::PoleCollision)?);
    }
    Ok(cp * schur_rect(b, c, &eig))
}

/// `Φ` at coincident alphas `α_i = alpha` and betas `β_j = beta`, obtained
/// by interpolating `ε ↦ Φ(α_i = alpha + iε)` and evaluating at `ε = 0`.
pub fn phi_coincident_limit<F: Field>(spec: NestedArchSpec, alpha: &F, beta: &F, gammas: &[F]) -> Result<F> {
    let NestedArchSpec { a, b, c } = spec;
    let nb = b + c;
    let deg = a * nb;
    let nodes: Vec<F> = (1..=deg as i64 + 1).map(F::from_i64).collect();
    let mut values = Vec::with_capacity(nodes.len());
    for e in &nodes {
        let p = ParamSet {
            alphas: (1..=nb as i64).map(|i| alpha.clone() + F::from_i64(i) * e).collect(),
            betas: vec![beta.clone(); a + c],
            gammas: gammas.to_vec(),
        };
        values.push(phi_subset(spec, &p)?);
    }
    Ok(lagrange_at(&nodes, &values, &F::zero()))
}

/// Value at `x` of the interpolating polynomial through `(nodes, values)`.
pub fn lagrange_at<F: Field>(nodes: &[F], values: &[F], x: &F) -> F {
    let mut out = F::zero();
    for (i, xi) in nodes.iter().enumerate() {
        let mut num = values[i].clone();
        let mut den = F::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                num *= x.clone() - xj;
                den *= xi.clone() - xj;
            }
        }
        out += num * den.inv().expect("distinct nodes");
    }
    out
}

/// Number of plane partitions in an `a × b × c` box.
pub fn macmahon(a: usize, b: usize, c: usize) -> BigInt {
    let mut r = BigRational::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                let s = (i + j + k) as i64;
                r *= BigRational::new(BigInt::from(s - 1), BigInt::from(s - 2));
            }
        }
    }
    assert!(r.is_integer(), "MacMahon product is integral");
    r.to_integer()
}

/// The homogeneous point `α = 1, β = q², γ = q`.
pub fn homogeneous_params<F: CubeRootField>(spec: NestedArchSpec) -> (F, F, Vec<F>) {
    (F::one(), F::omega_pow(2), vec![F::omega(); spec.a + spec.b])
}

/// Homogeneous value of `Φ` with its squared modulus and the expected one.
#[derive(Clone, Debug, Serialize)]
pub struct HomogeneousValue {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: String,
    pub norm_sq: String,
    pub expected_norm_sq: String,
    pub pass: bool,
}

/// `|Φ_{a,b,c}(1, q², q)|² = 3^{ab+bc+ca} · macmahon(a,b,c)²`.
pub fn homogeneous_check(a: usize, b: usize, c: usize) -> Result<HomogeneousValue> {
    let spec = NestedArchSpec::new(a, b, c);
    if spec.n() == 0 {
        return Err(Error::InvalidSpec("a + b + c must be positive".into()));
    }
    let (al, be, ga) = homogeneous_params::<CycloNum>(spec);
    let v = phi_schur_specialized(spec, &al, &be, &ga)?;
    let norm = v.norm_sq();
    let m = macmahon(a, b, c);
    let expected = BigRational::from_integer(BigInt::from(3).pow((a * b + b * c + c * a) as u32) * &m * &m);
    Ok(HomogeneousValue {
        a,
        b,
        c,
        value: v.to_string(),
        norm_sq: norm.to_string(),
        expected_norm_sq: expected.to_string(),
        pass: norm == expected,
    })
}

/// Splits `z` into blocks: `α = z`, `β = q z`, `γ = q² z`.
pub fn decode<F: CubeRootField>(spec: NestedArchSpec, z: &[F]) -> Result<ParamSet<F>> {
    if z.len() != 2 * spec.n() {
        return Err(Error::InconsistentSize(format!("expected {} parameters", 2 * spec.n())));
    }
    let [na, nb, _] = spec.block_sizes();
    let q = F::omega();
    let q2 = F::omega_pow(2);
    Ok(ParamSet {
        alphas: z[..na].to_vec(),
        betas: z[na..na + nb].iter().map(|x| q.clone() * x).collect(),
        gammas: z[na + nb..].iter().map(|x| q2.clone() * x).collect(),
    })
}

/// `∏_{i<j}(q x_i − q⁻¹ x_j)` within each block.
pub fn facto<F: CubeRootField>(p: &ParamSet<F>) -> F {
    let q = F::omega();
    let qi = F::omega_pow(2);
    let mut out = F::one();
    for block in [&p.alphas, &p.betas, &p.gammas] {
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                out *= q.clone() * &block[i] - qi.clone() * &block[j];
            }
        }
    }
    out
}

/// Unit relating `facto · Φ` to the ground-state component,
/// `(−1)^{C(a+b,2)+C(c,2)} q^{−ab+ac−b²+c²+b−c}`.
pub fn phase_unit<F: CubeRootField>(spec: NestedArchSpec) -> F {
    let (a, b, c) = (spec.a as i64, spec.b as i64, spec.c as i64);
    let parity = (a + b) * (a + b - 1) / 2 + c * (c - 1) / 2;
    let u = F::omega_pow(-a * b + a * c - b * b + c * c + b - c);
    if parity % 2 == 0 {
        u
    } else {
        -u
    }
}

/// The pattern used to normalize ground states, `(1, n−1, 0)`.
pub fn base_spec(n: usize) -> NestedArchSpec {
    NestedArchSpec::new(1, n - 1, 0)
}

/// Predicted component `E · facto · Φ` (before dividing by the base unit).
pub fn component_closed_form<F: CubeRootField>(spec: NestedArchSpec, z: &[F]) -> Result<F> {
    let p = decode(spec, z)?;
    Ok(phase_unit::<F>(spec) * facto(&p) * phi_subset(spec, &p)?)
}

/// Normalizing value of the base component, `facto · Φ_{1,n−1,0}`.
pub fn base_normalization<F: CubeRootField>(n: usize, z: &[F]) -> Result<F> {
    let p = decode(base_spec(n), z)?;
    // with c = 0 the subset sum has a single term, a plain product
    let phi = p
        .alphas
        .iter()
        .flat_map(|a| p.betas.iter().map(move |b| a.clone() - b))
        .fold(F::one(), |acc, x| acc * x);
    Ok(facto(&p) * phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclo;
    use crate::scalar::rational;

    fn c(x: i64) -> CycloNum {
        Cyclo::from_base(rational(x, 1))
    }

    fn ints(xs: &[i64]) -> Vec<CycloNum> {
        xs.iter().map(|&x| c(x)).collect()
    }

    fn example() -> (NestedArchSpec, ParamSet<CycloNum>) {
        let spec = NestedArchSpec::new(1, 1, 1);
        let p = ParamSet::new(spec, ints(&[0, 1]), ints(&[2, 3]), ints(&[4, 5])).unwrap();
        (spec, p)
    }

    #[test]
    fn hand_value() {
        let (spec, p) = example();
        assert_eq!(phi_subset(spec, &p).unwrap(), c(32));
        assert_eq!(phi_det(spec, &p).unwrap(), c(32));
        assert_eq!(phi_lgv(spec, &p).unwrap(), c(32));
    }

    #[test]
    fn base_pattern_is_a_product() {
        let spec = NestedArchSpec::new(2, 2, 0);
        let p = ParamSet::new(spec, ints(&[1, 2]), ints(&[5, 7]), ints(&[3, 4, 6, 8])).unwrap();
        assert_eq!(phi_subset(spec, &p).unwrap(), c((1 - 5) * (1 - 7) * (2 - 5) * (2 - 7)));
        let empty = NestedArchSpec::new(3, 0, 0);
        let p = ParamSet::new(empty, vec![], ints(&[1, 2, 3]), ints(&[4, 5, 6])).unwrap();
        assert_eq!(phi_subset(empty, &p).unwrap(), c(1));
    }

    #[test]
    fn coincident_alpha_is_an_error() {
        let spec = NestedArchSpec::new(1, 1, 1);
        let p = ParamSet::new(spec, ints(&[1, 1]), ints(&[2, 3]), ints(&[4, 5])).unwrap();
        assert_eq!(phi_subset(spec, &p), Err(Error::CoincidentAlpha));
    }

    #[test]
    fn recurrence_hand_case() {
        let spec = NestedArchSpec::new(1, 1, 1);
        let p = ParamSet::new(spec, ints(&[0, 1]), ints(&[2, 3]), ints(&[4, 5])).unwrap();
        let (lhs, rhs) = recurrence_sides(spec, &p).unwrap();
        assert_eq!(lhs, c(24));
        assert_eq!(rhs, c(-24));
        assert_eq!(recurrence_sign(spec, &p).unwrap(), Some(-1));
        let flat = NestedArchSpec::new(1, 1, 0);
        let p = ParamSet::new(flat, ints(&[0]), ints(&[1]), ints(&[2, 3])).unwrap();
        assert!(matches!(check_recurrence(flat, &p, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn propagators() {
        let al = ints(&[3]);
        let be = ints(&[7, 11]);
        let ga = ints(&[2]);
        let want = (c(3) - c(2)) * (c(3) - c(7)).inv().unwrap();
        assert_eq!(propagator_single(&al, &be, &ga).unwrap(), want);
        assert_eq!(propagator_paths(&al, &be, &ga).unwrap(), want);
        assert_eq!(propagator_single(&ints(&[1]), &ints(&[4]), &[]).unwrap(), c(1));
        let al = ints(&[1, 3, 8]);
        let be = ints(&[-2, 5]);
        let ga = ints(&[4, 6, 9]);
        assert_eq!(
            propagator_single(&al, &be, &ga).unwrap(),
            propagator_paths(&al, &be, &ga).unwrap()
        );
    }

    #[test]
    fn schur_small() {
        let g = ints(&[3, 5]);
        assert_eq!(schur_rect(0, 0, &g), c(1));
        assert_eq!(schur_rect(1, 1, &g), c(8));
        assert_eq!(schur_rect(2, 1, &ints(&[4])), c(0));
        // s_(2,2)(x,y) = x²y²
        assert_eq!(schur_rect(2, 2, &g), c(225));
    }

    #[test]
    fn macmahon_values() {
        assert_eq!(macmahon(3, 2, 0), BigInt::from(1));
        assert_eq!(macmahon(1, 1, 1), BigInt::from(2));
        assert_eq!(macmahon(1, 2, 3), BigInt::from(10));
        assert_eq!(macmahon(2, 2, 2), BigInt::from(20));
    }

    #[test]
    fn homogeneous_small() {
        assert!(homogeneous_check(1, 1, 0).unwrap().pass);
        let h = homogeneous_check(1, 1, 1).unwrap();
        assert_eq!(h.norm_sq, "108");
        assert!(h.pass);
    }

    #[test]
    fn phase_unit_is_a_sixth_root() {
        for a in 0..4 {
            for b in 0..4 {
                let u: CycloNum = phase_unit(NestedArchSpec::new(a, b, 1));
                assert_eq!(u.pow(6), c(1));
            }
        }
    }
}
