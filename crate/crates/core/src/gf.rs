//! Arithmetic in `GF(p^k)`.
//!
//! Elements are identified with their integer codes `0..q`: the code of
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is `sum c_i p^i`. Code 0 is zero and
//! code 1 is one. For `q <= 1024` the context precomputes full addition and
//! multiplication tables; larger fields fall back to digit arithmetic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest field for which lookup tables are built.
const TABLE_LIMIT: u64 = 1024;
/// Codes are `u32`; keep `q` comfortably inside that range.
const MAX_Q: u64 = 1 << 31;

/// An element of a finite field, stored as its canonical code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// For codes produced by a context's own arithmetic.
    #[inline]
    pub(crate) fn from_code_unchecked(code: u32) -> FieldElem {
        FieldElem(code)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A prime power `q = p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u32,
    pub k: u32,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = checked_pow(p, k).filter(|&q| q <= MAX_Q);
        if q.is_none() {
            return Err(Error::FieldTooLarge { p, k });
        }
        Ok(PrimePower { p: p as u32, k })
    }

    /// Factors `q` as a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        PrimePower::new(p, k)
    }

    pub fn q(self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q())
    }
}

/// Accepts either a bare integer (`"9"`) or explicit `"p^k"` (`"3^2"`).
impl FromStr for PrimePower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(alloc::format!("bad prime power {s:?}"));
        match s.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                PrimePower::new(p, k)
            }
            None => PrimePower::from_q(s.parse().map_err(|_| bad())?),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

#[derive(Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// Arithmetic context for `GF(p^k)`. Immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, little-endian, length `k + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds `GF(p^k)`. For `k > 1` the modulus is the smallest monic
    /// irreducible of degree `k`, comparing coefficients from the constant
    /// term upward.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let pp = PrimePower::new(p, k)?;
        let p = pp.p;
        let q = pp.q() as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, k as usize)
        };
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            tables: None,
        };
        if (q as u64) <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    pub fn from_prime_power(pp: PrimePower) -> Result<Self> {
        FieldCtx::new(pp.p as u64, pp.k)
    }

    /// Parses `"9"` or `"3^2"`.
    pub fn parse(s: &str) -> Result<Self> {
        FieldCtx::from_prime_power(s.parse()?)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn prime_power(&self) -> PrimePower {
        PrimePower {
            p: self.p,
            k: self.k,
        }
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn elem(&self, code: u64) -> Result<FieldElem> {
        if code >= self.q as u64 {
            return Err(Error::ElementOutOfRange {
                code,
                q: self.q as u64,
            });
        }
        Ok(FieldElem(code as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// All elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add_code(a.0, b.0))
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add_code(a.0, self.neg_code(b.0)))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg_code(a.0))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul_code(a.0, b.0))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem(self.inv_code(a.0)))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut exp: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == FieldElem::ONE
    }

    /// Smallest code that is not a square. Only exists for odd `q`.
    pub fn find_nonsquare(&self) -> Result<FieldElem> {
        if self.p == 2 {
            return Err(Error::EvenField(self.q as u64));
        }
        self.elements()
            .find(|&a| !self.is_square(a))
            .ok_or(Error::EvenField(self.q as u64))
    }

    // Code-level arithmetic used by the counting kernels.

    #[inline]
    pub fn add_code(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as u32,
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg_code(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize] as u32,
            None => self.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub_code(&self, a: u32, b: u32) -> u32 {
        self.add_code(a, self.neg_code(b))
    }

    #[inline]
    pub fn mul_code(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as u32,
            None => self.slow_mul(a, b),
        }
    }

    /// Inverse of a nonzero code. Zero maps to zero.
    #[inline]
    pub fn inv_code(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.inv[a as usize] as u32,
            None => {
                if a == 0 {
                    0
                } else {
                    self.slow_pow(a, self.q as u64 - 2)
                }
            }
        }
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in a..q {
                let s = self.slow_add(a as u32, b as u32) as u16;
                let m = self.slow_mul(a as u32, b as u32) as u16;
                add[a * q + b] = s;
                add[b * q + a] = s;
                mul[a * q + b] = m;
                mul[b * q + a] = m;
            }
        }
        let neg = (0..q as u32).map(|a| self.slow_neg(a) as u16).collect();
        let mut inv = vec![0u16; q];
        for a in 1..q {
            if inv[a] != 0 {
                continue;
            }
            if let Some(b) = (1..q).find(|&b| mul[a * q + b] == 1) {
                inv[a] = b as u16;
                inv[b] = a as u16;
            }
        }
        Tables { add, mul, neg, inv }
    }

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let mut out = vec![0; self.k as usize];
        for d in out.iter_mut() {
            *d = code % self.p;
            code /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x
            .iter()
            .zip(&y)
            .map(|(&u, &v)| ((u as u64 + v as u64) % self.p as u64) as u32)
            .collect();
        self.undigits(&s)
    }

    fn slow_neg(&self, a: u32) -> u32 {
        let p = self.p;
        if self.k == 1 {
            return (p - a % p) % p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&u| (p - u) % p).collect();
        self.undigits(&d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let k = self.k as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u64;
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.undigits(&low)
    }

    fn slow_pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Remainder of `f` modulo monic `d` over `GF(p)`; both little-endian.
fn poly_rem(f: &[u32], d: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dd = d.len() - 1;
    while r.len() > dd {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            for (i, &m) in d.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + (p - c) * m as u64) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                div.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            div.push(1);
            if poly_rem(f, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let count = (p as u64).pow(k as u32);
    for idx in 0..count {
        // c_0 is the most significant digit of idx
        let mut f = vec![0u32; k + 1];
        let mut rest = idx;
        for j in (0..k).rev() {
            f[j] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[k] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
