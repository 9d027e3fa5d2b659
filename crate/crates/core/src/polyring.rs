//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept in a map keyed by graded-lexicographic monomial order, no
//! zero coefficient is ever stored, and the zero polynomial is the empty map.
//! Variables are addressed 1-based in the public API (`x_1, ..., x_n`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial. Ordered by total degree, then
/// lexicographically with `x_1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()?;
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

/// One serialized term: `{"coeff": "<decimal>", "exps": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c.into())])
    }

    /// The variable `x_v` (1-based).
    pub fn variable(nvars: usize, v: usize) -> Result<Self> {
        if v == 0 || v > nvars {
            return Err(Error::IndexOutOfRange { index: v, max: nvars });
        }
        let mut e = vec![0; nvars];
        e[v - 1] = 1;
        Ok(Self::from_terms(nvars, [(e, BigInt::one())]))
    }

    /// Collects `(exponents, coefficient)` pairs, summing like monomials.
    ///
    /// Panics if an exponent vector does not have length `nvars`.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = SparsePolynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::total_degree)
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Ok(SparsePolynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return SparsePolynomial::zero(self.nvars);
        }
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Formal partial derivative with respect to `x_v` (1-based).
    pub fn partial_derivative(&self, v: usize) -> Result<Self> {
        if v == 0 || v > self.nvars {
            return Err(Error::IndexOutOfRange {
                index: v,
                max: self.nvars,
            });
        }
        let mut out = SparsePolynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[v - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[v - 1] -= 1;
            out.terms.insert(Monomial::new(exps), c * BigInt::from(e));
        }
        Ok(out)
    }

    /// Renames variables: `x_i ↦ x_{σ(i)}`, with `sigma` given 1-based.
    pub fn substitute_permutation(&self, sigma: &[usize]) -> Result<Self> {
        if sigma.len() != self.nvars {
            return Err(Error::PointLengthMismatch {
                expected: self.nvars,
                found: sigma.len(),
            });
        }
        let mut out = SparsePolynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; self.nvars];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[sigma[i] - 1] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    fn check_point<T>(&self, point: &[T]) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::PointLengthMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(())
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        self.check_point(point)?;
        let mut powers = PowerCache::new(point);
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t *= powers.get(i, e);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Value modulo the prime `p`, in `[0, p)`.
    pub fn evaluate_mod(&self, point: &[BigInt], p: u64) -> Result<u64> {
        self.check_point(point)?;
        if !is_prime_u64(p) {
            return Err(Error::CompositeModulus(p));
        }
        let bp = BigInt::from(p);
        let reduced: Vec<u64> = point.iter().map(|x| reduce_mod(x, &bp)).collect();
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut t = reduce_mod(c, &bp);
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, pow_mod(reduced[i], e as u64, p), p);
                }
            }
            total = add_mod(total, t, p);
        }
        Ok(total)
    }

    /// Evaluation with an optional prime modulus; the result is reduced to
    /// `[0, p)` when a modulus is given.
    pub fn eval(&self, point: &[BigInt], modulus: Option<u64>) -> Result<BigInt> {
        match modulus {
            None => self.evaluate(point),
            Some(p) => self.evaluate_mod(point, p).map(BigInt::from),
        }
    }

    /// Dense coefficients (constant first) of `t ↦ p(base + t·e_v)`.
    ///
    /// The coefficient of `t` equals `∂p/∂x_v (base)`.
    pub fn univariate_restriction(&self, base: &[BigInt], v: usize) -> Result<Vec<BigInt>> {
        self.check_point(base)?;
        if v == 0 || v > self.nvars {
            return Err(Error::IndexOutOfRange {
                index: v,
                max: self.nvars,
            });
        }
        let mut powers = PowerCache::new(base);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let mut rest = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if i != v - 1 && e > 0 {
                    rest *= powers.get(i, e);
                }
            }
            let ev = m.exps[v - 1] as usize;
            if coeffs.len() <= ev {
                coeffs.resize(ev + 1, BigInt::zero());
            }
            // (b + t)^ev = Σ binom(ev, k) b^(ev-k) t^k
            let mut binom = BigInt::one();
            for k in 0..=ev {
                let bpow = powers.get(v - 1, (ev - k) as u32);
                coeffs[k] += &rest * &binom * bpow;
                binom = binom * BigInt::from(ev - k) / BigInt::from(k + 1);
            }
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Ok(coeffs)
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_same_ring(divisor)?;
        let (lead_m, lead_c) = divisor.terms.iter().next_back().ok_or(Error::InexactDivision)?;
        let mut rem = self.clone();
        let mut quot = SparsePolynomial::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let qm = m.checked_div(lead_m).ok_or(Error::InexactDivision)?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(qm.mul(dm), -(&qc * dc));
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    /// Terms in decreasing monomial order, in the serialized shape.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                coeff: c.to_string(),
                exps: m.exps.clone(),
            })
            .collect()
    }

    pub fn from_records(nvars: usize, records: &[TermRecord]) -> Result<Self> {
        let mut p = SparsePolynomial::zero(nvars);
        for rec in records {
            if rec.exps.len() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: rec.exps.len(),
                });
            }
            let c: BigInt = rec
                .coeff
                .parse()
                .map_err(|_| Error::Certificate(format!("bad coefficient {:?}", rec.coeff)))?;
            p.add_term(Monomial::new(rec.exps.clone()), c);
        }
        Ok(p)
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr for &SparsePolynomial {
            type Output = SparsePolynomial;
            fn $m(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                self.$inner(rhs).expect("variable count mismatch")
            }
        }
    };
}
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Memoised `x_i^e` for one evaluation point.
struct PowerCache<'a> {
    point: &'a [BigInt],
    cache: HashMap<(usize, u32), BigInt>,
}

impl<'a> PowerCache<'a> {
    fn new(point: &'a [BigInt]) -> Self {
        PowerCache {
            point,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, i: usize, e: u32) -> BigInt {
        if e == 0 {
            return BigInt::one();
        }
        if e == 1 {
            return self.point[i].clone();
        }
        let point = self.point;
        self.cache
            .entry((i, e))
            .or_insert_with(|| point[i].pow(e))
            .clone()
    }
}

pub(crate) fn reduce_mod(x: &BigInt, p: &BigInt) -> u64 {
    x.mod_floor(p).to_u64().expect("residue fits in u64")
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
