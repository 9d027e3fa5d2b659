//! Feasibility of `binom(r − 1, k − 1) ≥ n`, choice of `n` family members
//! with a non-vanishing Jacobian, and the exponent arithmetic of the bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::jaccert::{
    certify_nonvanishing, jacobian_with_indices, witness_point, CertStatus, CertifyOptions,
    JacobianMatrix, NonvanishingCertificate,
};
use crate::linalg::ModularBasis;
use crate::polyring::SparsePolynomial;
use crate::tracefam::{family_size, ExponentVector, TraceFamily};

/// Prime used for the gradient-rank filter.
pub const FILTER_PRIME: u64 = (1 << 61) - 1;

/// Default number of attempts for the randomized strategies.
pub const DEFAULT_ATTEMPTS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub n: usize,
    pub r: usize,
    /// `(k, binom(r − 1, k − 1))` for each `k ∈ [2, r − 1]` with `l ≥ n`.
    pub feasible_pairs: Vec<(usize, u128)>,
    /// Smallest feasible `k` with `t = 2`.
    pub chosen: Option<(usize, u32)>,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        !self.feasible_pairs.is_empty()
    }
}

pub fn feasibility(n: usize, r: usize) -> FeasibilityResult {
    let feasible_pairs: Vec<(usize, u128)> = (2..r)
        .map(|k| (k, family_size(r, k)))
        .filter(|&(_, l)| l >= n as u128)
        .collect();
    let chosen = feasible_pairs.first().map(|&(k, _)| (k, 2));
    FeasibilityResult {
        n,
        r,
        feasible_pairs,
        chosen,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The first `n` family members.
    FirstN,
    /// Rows chosen by incremental rank of gradients at a random point.
    GreedyRank,
    /// Uniformly random `n`-subsets.
    RandomRestart,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::FirstN => "first-n",
            Strategy::GreedyRank => "greedy-rank",
            Strategy::RandomRestart => "random-restart",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first-n" => Ok(Strategy::FirstN),
            "greedy-rank" => Ok(Strategy::GreedyRank),
            "random-restart" => Ok(Strategy::RandomRestart),
            other => Err(Error::Parameter(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Result of [`select_subset`]. When no attempt certified, `certificate`
/// holds the last honest negative and `matrix` the last matrix tried.
#[derive(Clone, Debug)]
pub struct Selection {
    pub chosen_indices: Vec<usize>,
    pub matrix: JacobianMatrix,
    pub certificate: NonvanishingCertificate,
    pub attempts: u32,
}

impl Selection {
    pub fn is_certified(&self) -> bool {
        self.certificate.status == CertStatus::CertifiedNonzero
    }
}

fn matrix_for(family: &TraceFamily, indices: &[usize]) -> Result<JacobianMatrix> {
    let fs: Vec<SparsePolynomial> = indices.iter().map(|&i| family.polys[i - 1].clone()).collect();
    jacobian_with_indices(&fs, indices.to_vec())
}

/// Gradient of every family member at `point`, reduced mod `p`.
fn gradient_rows_mod(family: &TraceFamily, point: &[BigInt], p: u64) -> Result<Vec<Vec<u64>>> {
    let n = family.n;
    family
        .polys
        .iter()
        .map(|f| {
            (1..=n)
                .map(|v| f.partial_derivative(v)?.evaluate_mod(point, p))
                .collect()
        })
        .collect()
}

/// Picks `n` of the `l` family members and certifies their Jacobian.
///
/// `attempts` bounds the randomized strategies; `first-n` always makes a
/// single attempt. Attempt `a` uses randomness derived from `(seed, a)`, and
/// the first certifying attempt wins.
pub fn select_subset(
    family: &TraceFamily,
    strategy: Strategy,
    opts: &CertifyOptions,
    attempts: u32,
) -> Result<Selection> {
    let n = family.n;
    let l = family.polys.len();
    if l < n {
        return Err(Error::Parameter(format!("family has {l} members, need n = {n}")));
    }
    let attempts = match strategy {
        Strategy::FirstN => 1,
        _ => attempts.max(1),
    };
    let mut last: Option<Selection> = None;
    for attempt in 0..attempts {
        let indices: Vec<usize> = match strategy {
            Strategy::FirstN => (1..=n).collect(),
            Strategy::GreedyRank => {
                // Streams below 2^32 are reserved for certification witnesses.
                let point = witness_point(opts.seed, (1 << 32) + attempt as u64, n, &opts.bound);
                let rows = gradient_rows_mod(family, &point, FILTER_PRIME)?;
                let mut basis = ModularBasis::new(FILTER_PRIME);
                let mut picked = Vec::with_capacity(n);
                for (i, row) in rows.iter().enumerate() {
                    if picked.len() == n {
                        break;
                    }
                    if basis.insert(row) {
                        picked.push(i + 1);
                    }
                }
                if picked.len() < n {
                    // Gradients span less than n dimensions here; fall back to
                    // the prefix so an honest negative is still produced.
                    (1..=n).collect()
                } else {
                    picked
                }
            }
            Strategy::RandomRestart => {
                let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
                rng.set_stream((2 << 32) + attempt as u64);
                let mut idx: Vec<usize> = sample(&mut rng, l, n).into_iter().map(|i| i + 1).collect();
                idx.sort_unstable();
                idx
            }
        };
        let matrix = matrix_for(family, &indices)?;
        let certificate = certify_nonvanishing(&matrix, opts)?;
        let sel = Selection {
            chosen_indices: indices,
            matrix,
            certificate,
            attempts: attempt + 1,
        };
        if sel.is_certified() {
            return Ok(sel);
        }
        last = Some(sel);
    }
    Ok(last.expect("at least one attempt"))
}

/// `(1/n) Σ H(a_i)` as a reduced fraction.
pub fn exponent_general(vectors: &[ExponentVector], n: usize) -> Result<BigRational> {
    if vectors.len() != n || n == 0 {
        return Err(Error::Parameter(format!(
            "expected exactly n = {n} vectors, got {}",
            vectors.len()
        )));
    }
    let total: u64 = vectors.iter().map(ExponentVector::height).sum();
    Ok(BigRational::new(BigInt::from(total), BigInt::from(n)))
}

/// `z = Π H(a_i)`, the degree product bounding fibre sizes.
pub fn fiber_bound(vectors: &[ExponentVector]) -> BigUint {
    vectors
        .iter()
        .map(|a| BigUint::from(a.height()))
        .product()
}

/// `(n + 2) / 4`.
pub fn schmidt_exponent(n: usize) -> BigRational {
    BigRational::new(BigInt::from(n + 2), BigInt::from(4))
}

/// `p/q` with `q ≥ 1` in lowest terms.
pub fn ratio_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
