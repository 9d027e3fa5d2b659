//! Trace polynomials `Tr_a = Σ_i Π_j x_{π_j(i)}^{a_j}` and the exponent
//! vector families `a(B)` indexed by the `k`-subsets of `[r]` containing 1.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{rank_with_kernel, RankWitness};
use crate::permgroup::CosetSystem;
use crate::polyring::{Monomial, SparsePolynomial};

/// A tuple `a ∈ Z_{≥0}^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `H(a) = Σ a_i`.
    pub fn height(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }
}

/// The vectors `a(B_1), ..., a(B_l)` for fixed `(r, k, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily {
    pub r: usize,
    pub k: usize,
    pub t: u32,
    pub subsets: Vec<Vec<usize>>,
    pub vectors: Vec<ExponentVector>,
}

impl VectorFamily {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// `f_i = Tr_{a_i}` for a list of vectors, all in `n` variables.
#[derive(Clone, Debug)]
pub struct TraceFamily {
    pub n: usize,
    pub vectors: Vec<ExponentVector>,
    pub polys: Vec<SparsePolynomial>,
}

/// Monomials of the `n` rows of `Tr_a`, before collecting like terms.
pub fn trace_rows(cs: &CosetSystem, a: &ExponentVector) -> Result<Vec<Vec<u32>>> {
    let (n, r) = (cs.n(), cs.r());
    if a.len() != r {
        return Err(Error::VectorLengthMismatch {
            expected: r,
            found: a.len(),
        });
    }
    let pis = cs.pis();
    Ok((1..=n)
        .map(|i| {
            let mut exps = vec![0u32; n];
            for (pi, &aj) in pis.iter().zip(a.entries()) {
                exps[pi.image(i) - 1] += aj;
            }
            exps
        })
        .collect())
}

/// `Tr_a` with like monomials collected.
pub fn trace_polynomial(cs: &CosetSystem, a: &ExponentVector) -> Result<SparsePolynomial> {
    let rows = trace_rows(cs, a)?;
    Ok(SparsePolynomial::from_terms(
        cs.n(),
        rows.into_iter().map(|e| (e, BigInt::one())),
    ))
}

/// The `k`-element subsets of `[r]` containing 1, in lexicographic order.
pub fn subsets_containing_one(r: usize, k: usize) -> Result<Vec<Vec<usize>>> {
    if k < 2 || k + 1 > r {
        return Err(Error::Parameter(format!("k = {k} outside [2, r - 1] with r = {r}")));
    }
    let mut out = Vec::new();
    let mut current = vec![1usize];
    fn extend(next: usize, r: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for x in next..=r + 1 - remaining {
            current.push(x);
            extend(x + 1, r, k, current, out);
            current.pop();
        }
    }
    extend(2, r, k, &mut current, &mut out);
    Ok(out)
}

/// `a(B)`: `t` at position 1, 1 on the rest of `B`, 0 elsewhere.
pub fn vector_from_subset(subset: &[usize], t: u32, r: usize) -> Result<ExponentVector> {
    if !subset.contains(&1) {
        return Err(Error::Parameter("subset must contain 1".into()));
    }
    if t < 2 {
        return Err(Error::Parameter(format!("t = {t} must be at least 2")));
    }
    let mut a = vec![0u32; r];
    for &b in subset {
        if b == 0 || b > r {
            return Err(Error::IndexOutOfRange { index: b, max: r });
        }
        a[b - 1] = if b == 1 { t } else { 1 };
    }
    Ok(ExponentVector(a))
}

/// `binom(r − 1, k − 1)`, saturating.
pub fn family_size(r: usize, k: usize) -> u128 {
    if k == 0 || k > r {
        return 0;
    }
    binomial((r - 1) as u64, (k - 1) as u64)
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Trace polynomials for an explicit list of vectors.
pub fn trace_family(cs: &CosetSystem, vectors: Vec<ExponentVector>) -> Result<TraceFamily> {
    let polys = vectors
        .iter()
        .map(|a| trace_polynomial(cs, a))
        .collect::<Result<_>>()?;
    Ok(TraceFamily {
        n: cs.n(),
        vectors,
        polys,
    })
}

/// The full family `a(B_1), ..., a(B_l)` and its trace polynomials.
pub fn build_family(cs: &CosetSystem, k: usize, t: u32) -> Result<(VectorFamily, TraceFamily)> {
    let r = cs.r();
    if r < 3 {
        return Err(Error::Parameter(format!("r = {r} < 3: no admissible k")));
    }
    let subsets = subsets_containing_one(r, k)?;
    let vectors: Vec<ExponentVector> = subsets
        .iter()
        .map(|b| vector_from_subset(b, t, r))
        .collect::<Result<_>>()?;
    let traces = trace_family(cs, vectors.clone())?;
    Ok((
        VectorFamily {
            r,
            k,
            t,
            subsets,
            vectors,
        },
        traces,
    ))
}

/// Exact rank of the coefficient matrix (one row per polynomial, one column
/// per monomial in the union of supports).
pub fn check_linear_independence(family: &TraceFamily) -> Result<RankWitness> {
    if family.polys.is_empty() {
        return Err(Error::Parameter("empty family".into()));
    }
    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in &family.polys {
        for (m, _) in p.terms() {
            let next = columns.len();
            columns.entry(m).or_insert(next);
        }
    }
    let rows: Vec<Vec<BigInt>> = family
        .polys
        .iter()
        .map(|p| {
            let mut row = vec![BigInt::default(); columns.len()];
            for (m, c) in p.terms() {
                row[columns[m]] = c.clone();
            }
            row
        })
        .collect();
    Ok(rank_with_kernel(&rows))
}
