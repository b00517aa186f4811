//! Arithmetic in `F_p[ω] = F_{p²}` for primes `p ≡ 2 (mod 3)`, Chinese
//! remaindering and rational reconstruction.
//!
//! Used as a fast backend for kernels and interpolation whose results are
//! lifted back to `Q(ω)` and then checked exactly.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::Cyclo;
use crate::CycloNum;

/// Element `re + om·ω` of `F_p[ω]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Fp2 {
    pub re: u64,
    pub om: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { re: 0, om: 0 };
    pub const ONE: Fp2 = Fp2 { re: 1, om: 0 };

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.om == 0
    }
}

/// Prime field context; `p < 2^31` and `p ≡ 2 (mod 3)` so that `x² + x + 1`
/// stays irreducible.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    p: u64,
    // floor(2^64 / p) for Barrett reduction
    barrett: u64,
}

impl ModP {
    pub fn new(p: u64) -> Self {
        assert!(p % 3 == 2 && p < (1 << 31), "unsupported modulus {p}");
        ModP::raw(p)
    }

    fn raw(p: u64) -> Self {
        ModP {
            p,
            barrett: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let t = a * b;
        let q = ((u128::from(t) * u128::from(self.barrett)) >> 64) as u64;
        let mut r = t - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced residue")
    }

    /// `None` when the denominator is divisible by `p`.
    pub fn from_rational(&self, r: &BigRational) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        Some(self.mul(self.from_bigint(r.numer()), self.inv(d)?))
    }

    #[inline]
    pub fn c_add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            re: self.add(x.re, y.re),
            om: self.add(x.om, y.om),
        }
    }

    #[inline]
    pub fn c_sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 {
            re: self.sub(x.re, y.re),
            om: self.sub(x.om, y.om),
        }
    }

    #[inline]
    pub fn c_mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let bd = self.mul(x.om, y.om);
        Fp2 {
            re: self.sub(self.mul(x.re, y.re), bd),
            om: self.sub(self.add(self.mul(x.re, y.om), self.mul(x.om, y.re)), bd),
        }
    }

    pub fn c_inv(&self, x: Fp2) -> Option<Fp2> {
        let norm = self.add(
            self.sub(self.mul(x.re, x.re), self.mul(x.re, x.om)),
            self.mul(x.om, x.om),
        );
        let ni = self.inv(norm)?;
        Some(Fp2 {
            re: self.mul(self.sub(x.re, x.om), ni),
            om: self.mul(self.sub(0, x.om), ni),
        })
    }

    pub fn c_from_i64(&self, x: i64) -> Fp2 {
        Fp2 {
            re: self.from_i64(x),
            om: 0,
        }
    }

    pub fn omega(&self) -> Fp2 {
        Fp2 { re: 0, om: 1 }
    }

    pub fn c_from(&self, x: &CycloNum) -> Option<Fp2> {
        Some(Fp2 {
            re: self.from_rational(&x.re)?,
            om: self.from_rational(&x.om)?,
        })
    }

    /// Null space basis of the `rows × cols` matrix (row-major), destroying it.
    pub fn nullspace(&self, m: &mut [Fp2], rows: usize, cols: usize) -> Vec<Vec<Fp2>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.swap(r * cols + j, p * cols + j);
                }
            }
            let inv = self.c_inv(m[r * cols + c]).expect("field element");
            for j in c..cols {
                m[r * cols + j] = self.c_mul(m[r * cols + j], inv);
            }
            for i in 0..rows {
                let f = m[i * cols + c];
                if i == r || f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let t = self.c_mul(f, m[r * cols + j]);
                    m[i * cols + j] = self.c_sub(m[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|fc| {
                let mut v = vec![Fp2::ZERO; cols];
                v[fc] = Fp2::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.c_sub(Fp2::ZERO, m[row * cols + fc]);
                }
                v
            })
            .collect()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let ctx = ModP::raw(n);
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = ctx.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ctx.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^31` that are `≡ 2 (mod 3)`.
pub fn primes_2_mod_3(count: usize) -> Vec<u64> {
    prime_iter().take(count).collect()
}

/// Primes `≡ 2 (mod 3)` below `2^31`, largest first.
pub fn prime_iter() -> impl Iterator<Item = u64> {
    let start = (1u64 << 31) - 1;
    let start = start - (start + 1) % 3;
    (0..)
        .map(move |k| start - 3 * k)
        .take_while(|&c| c > 3)
        .filter(|&c| is_prime(c))
}

/// Smallest-magnitude rational `r/s ≡ a (mod m)` with `|r|, s ≤ sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    if s1.sign() == Sign::Minus {
        r1 = -r1;
        s1 = -s1;
    }
    Some(BigRational::new(r1, s1))
}

/// Incremental Chinese remaindering of a vector of `F_p[ω]` residues.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: BigInt,
    values: Vec<(BigInt, BigInt)>,
}

impl CrtAccumulator {
    pub fn new(len: usize) -> Self {
        CrtAccumulator {
            modulus: BigInt::one(),
            values: vec![(BigInt::zero(), BigInt::zero()); len],
        }
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn add_residues(&mut self, p: u64, residues: &[Fp2]) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let ctx = ModP::new(p);
        let m_inv = ctx
            .inv(ctx.from_bigint(&self.modulus))
            .expect("primes are distinct");
        let lift = |x: &BigInt, r: u64| -> BigInt {
            // x + M·((r − x)·M⁻¹ mod p)
            let t = ctx.mul(ctx.sub(r, ctx.from_bigint(x)), m_inv);
            x + &self.modulus * BigInt::from(t)
        };
        let lifted: Vec<(BigInt, BigInt)> = self
            .values
            .iter()
            .zip(residues)
            .map(|((re, om), r)| (lift(re, r.re), lift(om, r.om)))
            .collect();
        self.values = lifted;
        self.modulus *= pb;
    }

    /// Lifts every entry to `Q(ω)`, `None` if any coordinate fails.
    pub fn reconstruct(&self) -> Option<Vec<CycloNum>> {
        self.values
            .iter()
            .map(|(re, om)| {
                Some(Cyclo::new(
                    rational_reconstruct(re, &self.modulus)?,
                    rational_reconstruct(om, &self.modulus)?,
                ))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Field};

    #[test]
    fn primes_have_the_right_residue() {
        let ps = primes_2_mod_3(5);
        assert_eq!(ps.len(), 5);
        for w in ps.windows(2) {
            assert!(w[0] > w[1]);
        }
        for &p in &ps {
            assert_eq!(p % 3, 2);
            assert!(is_prime(p));
        }
        assert!(!is_prime(1 << 30));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn cube_root_of_unity_mod_p() {
        let ctx = ModP::new(primes_2_mod_3(1)[0]);
        let w = ctx.omega();
        let w3 = ctx.c_mul(w, ctx.c_mul(w, w));
        assert_eq!(w3, Fp2::ONE);
        let x = Fp2 { re: 5, om: 7 };
        assert_eq!(ctx.c_mul(x, ctx.c_inv(x).unwrap()), Fp2::ONE);
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let values: Vec<CycloNum> = vec![
            Cyclo::new(rational(-3, 7), rational(22, 1)),
            Cyclo::new(rational(0, 1), rational(-1, 12345)),
            Cyclo::new(rational(123456789, 2), rational(5, 3)).pow(2),
        ];
        let mut acc = CrtAccumulator::new(values.len());
        for p in primes_2_mod_3(6) {
            let ctx = ModP::new(p);
            let res: Vec<Fp2> = values.iter().map(|v| ctx.c_from(v).unwrap()).collect();
            acc.add_residues(p, &res);
        }
        assert_eq!(acc.reconstruct().unwrap(), values);
    }
}
