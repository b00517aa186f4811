//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::CycloNum;

/// Ordered list of distinct variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidSpec(format!("variable `{n}` listed twice")));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    /// `prefix1 .. prefix{count}`.
    pub fn numbered(prefix: &str, count: usize) -> Arc<Self> {
        VarTable::new((1..=count).map(|i| format!("{prefix}{i}"))).expect("distinct names")
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Exponent vector, one entry per variable of the table.
pub type Monomial = Vec<u32>;

/// `Σ coeff · x^e`; no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F> {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, F>,
}

/// Replacement for a variable in [`MultiPoly::specialize`].
#[derive(Clone, Debug)]
pub enum Subst<F> {
    Value(F),
    /// `coeff · other`.
    Scaled(String, F),
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MultiPoly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: F) -> Self {
        let mut p = Self::zero(table);
        p.add_term(vec![0; table.arity()], c);
        p
    }

    pub fn var(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        let k = table.position(name)?;
        let mut e = vec![0; table.arity()];
        e[k] = 1;
        let mut p = Self::zero(table);
        p.add_term(e, F::one());
        Ok(p)
    }

    /// `Σ coeffs[k] · vars[k]` plus `constant`.
    pub fn linear(table: &Arc<VarTable>, coeffs: &[(&str, F)], constant: F) -> Result<Self> {
        let mut p = Self::constant(table, constant);
        for (name, c) in coeffs {
            let k = table.position(name)?;
            let mut e = vec![0; table.arity()];
            e[k] = 1;
            p.add_term(e, c.clone());
        }
        Ok(p)
    }

    pub fn from_terms(table: &Arc<VarTable>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Result<Self> {
        let mut p = Self::zero(table);
        for (e, c) in terms {
            if e.len() != table.arity() {
                return Err(Error::InconsistentSize(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    table.arity()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, e: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut p = Self::zero(&self.table);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.clone() * s);
        }
        p
    }

    /// Evaluation at a point given by name.
    pub fn eval(&self, point: &HashMap<String, F>) -> Result<F> {
        let values = self
            .table
            .names
            .iter()
            .map(|n| point.get(n).cloned().ok_or_else(|| Error::MissingVariable(n.clone())))
            .collect::<Result<Vec<F>>>()?;
        Ok(self.eval_slice(&values))
    }

    /// Evaluation with values listed in table order.
    pub fn eval_slice(&self, values: &[F]) -> F {
        assert_eq!(values.len(), self.table.arity());
        let maxdeg = self.partial_degrees();
        let powers: Vec<Vec<F>> = values
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut pw = vec![F::one()];
                for k in 0..d as usize {
                    pw.push(pw[k].clone() * x);
                }
                pw
            })
            .collect();
        let mut out = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t *= &powers[k][ek as usize];
                }
            }
            out += t;
        }
        out
    }

    /// Substitutes `var`, dropping it from the table.
    pub fn specialize(&self, var: &str, value: &Subst<F>) -> Result<Self> {
        let k = self.table.position(var)?;
        let names: Vec<String> = self
            .table
            .names
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, n)| n.clone())
            .collect();
        let table = VarTable::new(names)?;
        let target = match value {
            Subst::Value(_) => None,
            Subst::Scaled(other, _) => {
                if other == var {
                    return Err(Error::InvalidSpec(format!("`{var}` substituted by itself")));
                }
                Some(table.position(other)?)
            }
        };
        let factor = match value {
            Subst::Value(v) | Subst::Scaled(_, v) => v,
        };
        let mut out = Self::zero(&table);
        let mut pw = vec![F::one()];
        for (e, c) in &self.terms {
            let d = e[k] as usize;
            while pw.len() <= d {
                let next = pw[pw.len() - 1].clone() * factor;
                pw.push(next);
            }
            let mut ne: Monomial = e.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            if let Some(t) = target {
                ne[t] += e[k];
            }
            out.add_term(ne, c.clone() * &pw[d]);
        }
        Ok(out)
    }

    /// `(total degree, partial degrees)`, `None` for the zero polynomial.
    pub fn degrees(&self) -> Option<(u32, Vec<u32>)> {
        let total = self.terms.keys().map(|e| e.iter().sum::<u32>()).max()?;
        Some((total, self.partial_degrees()))
    }

    fn partial_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.table.arity()];
        for e in self.terms.keys() {
            for (k, &x) in e.iter().enumerate() {
                d[k] = d[k].max(x);
            }
        }
        d
    }

    /// Every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Invariance under every transposition of adjacent listed variables.
    pub fn is_symmetric(&self, vars: &[&str]) -> Result<bool> {
        let idx = vars.iter().map(|v| self.table.position(v)).collect::<Result<Vec<_>>>()?;
        for w in idx.windows(2) {
            for (e, c) in &self.terms {
                let mut s = e.clone();
                s.swap(w[0], w[1]);
                if self.terms.get(&s) != Some(c) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exact quotient `self / d`, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.table, d.table, "variable tables differ");
        let (lt_e, lt_c) = d.terms.iter().next_back()?;
        let lt_inv = lt_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.table);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lt_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Monomial = e.iter().zip(lt_e).map(|(a, b)| a - b).collect();
            let qc = c.clone() * &lt_inv;
            for (de, dc) in &d.terms {
                let te: Monomial = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(dc.clone() * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    fn same_table(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.table, &other.table) || self.table == other.table,
            "variable tables differ"
        );
    }
}

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: Self) -> MultiPoly<F> {
        self.same_table(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: Self) -> MultiPoly<F> {
        self.same_table(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: Self) -> MultiPoly<F> {
        self.same_table(rhs);
        let mut out = MultiPoly::zero(&self.table);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2);
            }
        }
        out
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&-F::one())
    }
}

/// Tensor-grid interpolation. `nodes[v]` lists the distinct nodes of
/// variable `v`; `values` is row-major over the grid with the last
/// variable varying fastest. Degree in `v` is at most `nodes[v].len() − 1`.
pub fn interpolate_grid<F: Field>(table: &Arc<VarTable>, nodes: &[Vec<F>], values: &[F]) -> Result<MultiPoly<F>> {
    if nodes.len() != table.arity() {
        return Err(Error::InconsistentGrid(format!(
            "{} node lists for {} variables",
            nodes.len(),
            table.arity()
        )));
    }
    let dims: Vec<usize> = nodes.iter().map(Vec::len).collect();
    if dims.contains(&0) || values.len() != dims.iter().product::<usize>() {
        return Err(Error::InconsistentGrid(format!("{} values for grid {dims:?}", values.len())));
    }
    let mut inverses = Vec::with_capacity(nodes.len());
    for (v, ns) in nodes.iter().enumerate() {
        let vdm = Matrix::from_fn(ns.len(), ns.len(), |i, j| ns[i].pow(j as u32));
        let inv = vdm
            .inverse()
            .ok_or_else(|| Error::DuplicateNode(table.names()[v].clone()))?;
        inverses.push(inv);
    }
    let mut data = values.to_vec();
    apply_along_axes(&mut data, &dims, |axis, fiber| inverses[axis].mul_vec(fiber));
    let mut out = MultiPoly::zero(table);
    for (flat, c) in data.into_iter().enumerate() {
        out.add_term(unflatten(flat, &dims), c);
    }
    Ok(out)
}

/// Exponent (or grid) index of a row-major flat position.
pub fn unflatten(mut flat: usize, dims: &[usize]) -> Monomial {
    let mut e = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        e[k] = (flat % dims[k]) as u32;
        flat /= dims[k];
    }
    e
}

/// Replaces every 1-D fiber of a row-major tensor along each axis by
/// `f(axis, fiber)`.
pub fn apply_along_axes<T: Clone>(data: &mut [T], dims: &[usize], mut f: impl FnMut(usize, &[T]) -> Vec<T>) {
    let total: usize = dims.iter().product();
    let mut stride = total;
    for (axis, &len) in dims.iter().enumerate() {
        stride /= len;
        let block = stride * len;
        let mut fiber = Vec::with_capacity(len);
        for start in (0..total).step_by(block) {
            for off in 0..stride {
                fiber.clear();
                fiber.extend((0..len).map(|k| data[start + off + k * stride].clone()));
                let out = f(axis, &fiber);
                for (k, v) in out.into_iter().enumerate() {
                    data[start + off + k * stride] = v;
                }
            }
        }
    }
}

/// Interpolation from scattered samples that must form a full tensor grid
/// with `bounds[v] + 1` nodes in variable `v`.
pub fn interpolate<F: Field>(table: &Arc<VarTable>, samples: &[(Vec<F>, F)], bounds: &[u32]) -> Result<MultiPoly<F>> {
    let k = table.arity();
    if bounds.len() != k || samples.iter().any(|(pt, _)| pt.len() != k) {
        return Err(Error::InconsistentGrid("sample arity mismatch".into()));
    }
    let mut nodes: Vec<Vec<F>> = vec![Vec::new(); k];
    for (pt, _) in samples {
        for (v, x) in pt.iter().enumerate() {
            if !nodes[v].contains(x) {
                nodes[v].push(x.clone());
            }
        }
    }
    for v in 0..k {
        if nodes[v].len() != bounds[v] as usize + 1 {
            return Err(Error::InconsistentGrid(format!(
                "variable `{}` has {} nodes, bound {} needs {}",
                table.names()[v],
                nodes[v].len(),
                bounds[v],
                bounds[v] + 1
            )));
        }
    }
    let dims: Vec<usize> = nodes.iter().map(Vec::len).collect();
    let mut values: Vec<Option<F>> = vec![None; dims.iter().product()];
    for (pt, val) in samples {
        let mut flat = 0;
        for v in 0..k {
            let pos = nodes[v].iter().position(|x| x == &pt[v]).expect("collected node");
            flat = flat * dims[v] + pos;
        }
        if values[flat].replace(val.clone()).is_some() {
            let name = table.names().first().cloned().unwrap_or_default();
            return Err(Error::DuplicateNode(name));
        }
    }
    let values = values
        .into_iter()
        .collect::<Option<Vec<F>>>()
        .ok_or_else(|| Error::InconsistentGrid("missing grid points".into()))?;
    interpolate_grid(table, &nodes, &values)
}

/// One term per line, `e1 e2 … ek : coeff`, lexicographic order.
impl fmt::Display for MultiPoly<CycloNum> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.terms {
            let exps: Vec<String> = e.iter().map(u32::to_string).collect();
            writeln!(f, "{} : {}", exps.join(" "), c)?;
        }
        Ok(())
    }
}

impl MultiPoly<CycloNum> {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(table: &Arc<VarTable>, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing `:` in `{line}`")))?;
            let e = lhs
                .split_whitespace()
                .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent `{x}`"))))
                .collect::<Result<Monomial>>()?;
            terms.push((e, rhs.trim().parse::<CycloNum>()?));
        }
        MultiPoly::from_terms(table, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{q_power, Cyclo};
    use crate::scalar::rational;

    fn c(x: i64) -> CycloNum {
        Cyclo::from_base(rational(x, 1))
    }

    fn z2() -> Arc<VarTable> {
        VarTable::numbered("z", 2)
    }

    #[test]
    fn evaluation() {
        let t = z2();
        let p: MultiPoly<CycloNum> = &MultiPoly::var(&t, "z1").unwrap() * &MultiPoly::var(&t, "z2").unwrap();
        let pt: HashMap<String, CycloNum> = [("z1".to_string(), c(2)), ("z2".to_string(), c(3))].into();
        assert_eq!(p.eval(&pt).unwrap(), c(6));
        assert_eq!(MultiPoly::<CycloNum>::zero(&t).eval(&pt).unwrap(), c(0));
        let l = MultiPoly::linear(&t, &[("z1", q_power(1)), ("z2", -q_power(-1))], c(0)).unwrap();
        assert_eq!(l.eval_slice(&[c(1), c(1)]), Cyclo::new(rational(1, 1), rational(2, 1)));
        let missing: HashMap<String, CycloNum> = [("z1".to_string(), c(2))].into();
        assert_eq!(p.eval(&missing), Err(Error::MissingVariable("z2".into())));
    }

    #[test]
    fn specialization() {
        let t = z2();
        let diff = MultiPoly::linear(&t, &[("z1", c(1)), ("z2", c(-1))], c(0)).unwrap();
        assert!(diff.specialize("z2", &Subst::Scaled("z1".into(), c(1))).unwrap().is_zero());
        let p: MultiPoly<CycloNum> = &MultiPoly::var(&t, "z1").unwrap() * &MultiPoly::var(&t, "z2").unwrap();
        let s = p.specialize("z2", &Subst::Value(c(5))).unwrap();
        assert_eq!(s.terms().get(&vec![1]), Some(&c(5)));
        let l = MultiPoly::linear(&t, &[("z1", q_power(1)), ("z2", -q_power(-1))], c(0)).unwrap();
        assert!(l.specialize("z2", &Subst::Scaled("z1".into(), q_power(2))).unwrap().is_zero());
        assert!(matches!(p.specialize("w", &Subst::Value(c(1))), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn interpolation_examples() {
        let t = VarTable::numbered("z", 1);
        let samples: Vec<(Vec<CycloNum>, CycloNum)> = (0..3).map(|x| (vec![c(x)], c(x * x))).collect();
        let p = interpolate(&t, &samples, &[2]).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&[2]), c(1));
        let k = interpolate(&t, &[(vec![c(4)], c(7))], &[0]).unwrap();
        assert_eq!(k.coeff(&[0]), c(7));
        let t2 = z2();
        let mut samples = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                samples.push((vec![c(x), c(y)], c(x * y)));
            }
        }
        let p = interpolate(&t2, &samples, &[1, 1]).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&[1, 1]), c(1));
        samples.push((vec![c(0), c(0)], c(0)));
        assert!(matches!(interpolate(&t2, &samples, &[1, 1]), Err(Error::DuplicateNode(_))));
        samples.pop();
        samples.pop();
        assert!(matches!(interpolate(&t2, &samples, &[1, 1]), Err(Error::InconsistentGrid(_))));
        let dup = vec![vec![c(1), c(1)], vec![c(0)]];
        assert!(matches!(interpolate_grid(&t2, &dup, &[c(0), c(0)]), Err(Error::DuplicateNode(_))));
    }

    #[test]
    fn degrees_and_symmetry() {
        let t = z2();
        let x: MultiPoly<CycloNum> = MultiPoly::var(&t, "z1").unwrap();
        let y: MultiPoly<CycloNum> = MultiPoly::var(&t, "z2").unwrap();
        let p = &(&x * &x) * &y;
        assert_eq!(p.degrees(), Some((3, vec![2, 1])));
        assert_eq!(MultiPoly::constant(&t, c(5)).degrees(), Some((0, vec![0, 0])));
        assert_eq!(MultiPoly::<CycloNum>::zero(&t).degrees(), None);
        assert!((&x + &y).is_symmetric(&["z1", "z2"]).unwrap());
        assert!(!(&x - &y).is_symmetric(&["z1", "z2"]).unwrap());
    }

    #[test]
    fn exact_division() {
        let t = z2();
        let x: MultiPoly<CycloNum> = MultiPoly::var(&t, "z1").unwrap();
        let y: MultiPoly<CycloNum> = MultiPoly::var(&t, "z2").unwrap();
        let d = &x.scale(&q_power(1)) - &y.scale(&q_power(-1));
        let f = &(&x + &y) * &(&x - &y.scale(&c(3)));
        let p = &f * &d;
        assert_eq!(p.div_exact(&d).unwrap(), f);
        assert!(f.div_exact(&d).is_none());
    }

    #[test]
    fn text_round_trip() {
        let t = z2();
        let p = MultiPoly::from_terms(
            &t,
            vec![(vec![1, 0], Cyclo::new(rational(1, 2), rational(-3, 1))), (vec![0, 2], c(7))],
        )
        .unwrap();
        let s = p.to_text();
        assert_eq!(s, "0 2 : 7\n1 0 : 1/2-3*w\n");
        assert_eq!(MultiPoly::from_text(&t, &s).unwrap(), p);
    }
}
