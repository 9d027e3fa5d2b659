//! Exact integer linear algebra: fraction-free determinants, rank with a
//! kernel witness, and incremental rank over a prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{add_mod, mul_mod, pow_mod};

/// Determinant by Bareiss fraction-free elimination. The empty matrix has
/// determinant 1.
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = matrix.len();
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(Error::Shape(format!("{}x{} matrix is not square", n, row.len())));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                // Exact by Sylvester's identity.
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Rank of an integer matrix, with a nonzero kernel combination of the rows
/// when the rows are dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWitness {
    pub rank: usize,
    /// `c` with `Σ c_i row_i = 0`, present iff `rank < rows`.
    pub kernel: Option<Vec<BigInt>>,
}

/// Exact row rank. Rows are reduced together with an identity block so that
/// a row that vanishes carries its own dependency.
pub fn rank_with_kernel(rows: &[Vec<BigInt>]) -> RankWitness {
    let m = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();

    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(rank, p);
        let (top, bottom) = work.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in bottom.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot.iter()) {
                *x = &*x * &pivot[c] - &f * y;
            }
            normalize_content(row);
        }
        rank += 1;
    }
    let kernel = (rank < m).then(|| work[rank][cols..].to_vec());
    RankWitness { rank, kernel }
}

fn normalize_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = row.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Incremental row basis over `F_p`.
pub struct ModularBasis {
    p: u64,
    /// Echelon rows with their pivot column; each pivot entry is 1.
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModularBasis {
    pub fn new(p: u64) -> Self {
        ModularBasis { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `row` if it is independent of the current basis; returns whether
    /// it was added.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        let p = self.p;
        let mut v: Vec<u64> = row.iter().map(|x| x % p).collect();
        for (pc, b) in &self.rows {
            let f = v[*pc];
            if f != 0 {
                let neg = p - f;
                for (x, y) in v.iter_mut().zip(b) {
                    *x = add_mod(*x, mul_mod(neg, *y, p), p);
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(pc) => {
                let inv = pow_mod(v[pc], p - 2, p);
                for x in v.iter_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                self.rows.push((pc, v));
                true
            }
            None => false,
        }
    }
}

/// Indices of the first rows (in order) that form a maximal independent set
/// over `F_p`, stopping once `target` rows are found.
pub fn greedy_independent_rows(rows: &[Vec<u64>], p: u64, target: usize) -> Vec<usize> {
    let mut basis = ModularBasis::new(p);
    let mut picked = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if picked.len() == target {
            break;
        }
        if basis.insert(r) {
            picked.push(i);
        }
    }
    picked
}
