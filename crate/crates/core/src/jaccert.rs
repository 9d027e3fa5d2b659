//! Jacobian matrices of polynomial families and certificates that their
//! determinant is not the zero polynomial.
//!
//! The primary route evaluates every entry at an integer witness point and
//! takes an exact integer determinant: one nonzero value proves
//! `det ≢ 0`. Symbolic expansion is available as an oracle for small sizes.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::integer_determinant;
use crate::polyring::SparsePolynomial;

/// Default size gate for symbolic determinant expansion.
pub const DEFAULT_SYMBOLIC_GATE: usize = 8;

/// `(∂f_i/∂x_j)` together with the family indices the rows came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    entries: Vec<Vec<SparsePolynomial>>,
    chosen_indices: Vec<usize>,
}

impl JacobianMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &SparsePolynomial {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<SparsePolynomial>] {
        &self.entries
    }

    /// 1-based indices of the chosen family members, one per row.
    pub fn chosen_indices(&self) -> &[usize] {
        &self.chosen_indices
    }

    /// Builds a matrix directly from polynomial entries (rows need not be
    /// gradients).
    pub fn from_entries(entries: Vec<Vec<SparsePolynomial>>, chosen_indices: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if chosen_indices.len() != n {
            return Err(Error::Shape(format!(
                "{} indices for {n} rows",
                chosen_indices.len()
            )));
        }
        for row in &entries {
            if row.len() != n || row.iter().any(|p| p.nvars() != n) {
                return Err(Error::Shape("matrix must be n x n over n variables".into()));
            }
        }
        Ok(JacobianMatrix {
            entries,
            chosen_indices,
        })
    }

    /// Swaps two rows (and their provenance indices).
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
        self.chosen_indices.swap(a, b);
    }

    /// `Σ_i max_j deg(entry(i, j))`, an upper bound on `deg det`.
    pub fn degree_bound(&self) -> usize {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(SparsePolynomial::total_degree)
                    .max()
                    .unwrap_or(0) as usize
            })
            .sum()
    }

    /// Entry-wise evaluation at `point`.
    pub fn evaluate_at(&self, point: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    /// `det` of the entry-wise evaluation at `point`.
    pub fn determinant_at(&self, point: &[BigInt]) -> Result<BigInt> {
        integer_determinant(&self.evaluate_at(point)?)
    }
}

/// Jacobian of `n` polynomials in `n` variables, rows labelled `1..=n`.
pub fn jacobian(fs: &[SparsePolynomial]) -> Result<JacobianMatrix> {
    jacobian_with_indices(fs, (1..=fs.len()).collect())
}

/// Jacobian with explicit provenance indices for the rows.
pub fn jacobian_with_indices(fs: &[SparsePolynomial], chosen_indices: Vec<usize>) -> Result<JacobianMatrix> {
    let n = fs.len();
    if let Some(f) = fs.iter().find(|f| f.nvars() != n) {
        return Err(Error::Shape(format!(
            "{n} polynomials in {} variables",
            f.nvars()
        )));
    }
    let entries = fs
        .iter()
        .map(|f| (1..=n).map(|v| f.partial_derivative(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    JacobianMatrix::from_entries(entries, chosen_indices)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertStatus {
    CertifiedNonzero,
    ProbablyZero,
    ExactZero,
}

impl CertStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CertStatus::CertifiedNonzero => "CERTIFIED_NONZERO",
            CertStatus::ProbablyZero => "PROBABLY_ZERO",
            CertStatus::ExactZero => "EXACT_ZERO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub seed: u64,
    pub trials: u32,
    /// Witness coordinates are drawn uniformly from `[1, bound]`.
    pub bound: BigUint,
    /// Expand the determinant symbolically first (subject to `gate`).
    pub exact: bool,
    pub gate: usize,
}

impl CertifyOptions {
    pub fn new(seed: u64) -> Self {
        CertifyOptions {
            seed,
            trials: 20,
            bound: BigUint::one() << 31u32,
            exact: false,
            gate: DEFAULT_SYMBOLIC_GATE,
        }
    }
}

/// Outcome of a non-vanishing test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonvanishingCertificate {
    pub status: CertStatus,
    /// Empty unless certified.
    pub witness: Vec<BigInt>,
    /// Zero unless certified.
    pub det_value: BigInt,
    pub chosen_indices: Vec<usize>,
    pub seed: u64,
    pub trials_used: u32,
    pub coordinate_bound: BigUint,
    /// Upper bound on `deg det` used for the probability estimate.
    pub degree_bound: usize,
    /// `(degree_bound / coordinate_bound)^trials_used`, for `PROBABLY_ZERO`.
    pub failure_probability_bound: Option<String>,
}

/// Witness point number `index` for `seed`: a pure function of both.
pub fn witness_point(seed: u64, index: u64, n: usize, bound: &BigUint) -> Vec<BigInt> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let hi = bound + 1u32;
    (0..n)
        .map(|_| BigInt::from(rng.gen_biguint_range(&BigUint::one(), &hi)))
        .collect()
}

/// Tests `det M ≢ 0` by exact evaluation at seeded random points.
pub fn certify_nonvanishing(m: &JacobianMatrix, opts: &CertifyOptions) -> Result<NonvanishingCertificate> {
    if opts.trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    let degree = m.degree_bound();
    if opts.bound.is_zero() || opts.bound < BigUint::from(2 * degree) {
        return Err(Error::BoundTooSmall {
            bound: opts.bound.to_string(),
            degree,
        });
    }
    let base = NonvanishingCertificate {
        status: CertStatus::ProbablyZero,
        witness: Vec::new(),
        det_value: BigInt::zero(),
        chosen_indices: m.chosen_indices.clone(),
        seed: opts.seed,
        trials_used: 0,
        coordinate_bound: opts.bound.clone(),
        degree_bound: degree,
        failure_probability_bound: None,
    };
    if opts.exact && symbolic_determinant(m, opts.gate)?.is_zero() {
        return Ok(NonvanishingCertificate {
            status: CertStatus::ExactZero,
            ..base
        });
    }
    let n = m.size();
    for trial in 0..opts.trials {
        let w = witness_point(opts.seed, trial as u64, n, &opts.bound);
        let det = m.determinant_at(&w)?;
        if !det.is_zero() {
            return Ok(NonvanishingCertificate {
                status: CertStatus::CertifiedNonzero,
                witness: w,
                det_value: det,
                trials_used: trial + 1,
                ..base
            });
        }
    }
    let prob = format_probability(
        &BigUint::from(degree).pow(opts.trials),
        &opts.bound.pow(opts.trials),
    );
    Ok(NonvanishingCertificate {
        trials_used: opts.trials,
        failure_probability_bound: Some(prob),
        ..base
    })
}

/// Recomputes the witness determinant with integer arithmetic only.
///
/// Returns `false` for any certificate that is not `CERTIFIED_NONZERO`.
pub fn reverify(cert: &NonvanishingCertificate, m: &JacobianMatrix) -> Result<bool> {
    if cert.status != CertStatus::CertifiedNonzero {
        return Ok(false);
    }
    if cert.witness.len() != m.size() {
        return Err(Error::Shape(format!(
            "witness has {} coordinates, matrix is {}x{}",
            cert.witness.len(),
            m.size(),
            m.size()
        )));
    }
    if cert.chosen_indices != m.chosen_indices {
        return Err(Error::Shape("chosen indices differ from the matrix rows".into()));
    }
    let det = m.determinant_at(&cert.witness)?;
    Ok(!det.is_zero() && det == cert.det_value)
}

/// Exact determinant polynomial.
///
/// Expands along rows with every minor over a column subset computed once,
/// which stays cheap when entries are sparse. Refuses `n > gate`.
pub fn symbolic_determinant(m: &JacobianMatrix, gate: usize) -> Result<SparsePolynomial> {
    let n = m.size();
    if n > gate {
        return Err(Error::GateExceeded { n, gate });
    }
    if n == 0 {
        return Ok(SparsePolynomial::constant(0, 1));
    }
    if n >= usize::BITS as usize {
        return Err(Error::GateExceeded { n, gate: usize::BITS as usize - 1 });
    }
    // minors[S] = det(rows 0..|S|, columns S)
    let mut minors: HashMap<usize, SparsePolynomial> = HashMap::new();
    minors.insert(0, SparsePolynomial::constant(n, 1));
    for k in 1..=n {
        let row = &m.entries[k - 1];
        let mut next = HashMap::new();
        for mask in subsets_of_size(n, k) {
            let mut acc = SparsePolynomial::zero(n);
            let cols: Vec<usize> = (0..n).filter(|c| mask >> c & 1 == 1).collect();
            for (idx, &c) in cols.iter().enumerate() {
                if row[c].is_zero() {
                    continue;
                }
                let Some(minor) = minors.get(&(mask & !(1 << c))) else { continue };
                if minor.is_zero() {
                    continue;
                }
                let term = &row[c] * minor;
                // cofactor sign for (row k-1, position idx) in a k x k block
                acc = if (k - 1 + idx) % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            next.insert(mask, acc);
        }
        minors = next;
    }
    Ok(minors.remove(&((1usize << n) - 1)).unwrap())
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = usize> {
    (0usize..1 << n).filter(move |m| m.count_ones() as usize == k)
}

/// Exact determinant polynomial by Bareiss elimination over `Z[x]`, with
/// exact polynomial division at each step. Much slower than
/// [`symbolic_determinant`] on sparse inputs; kept as an independent route.
pub fn symbolic_determinant_bareiss(m: &JacobianMatrix, gate: usize) -> Result<SparsePolynomial> {
    let n = m.size();
    if n > gate {
        return Err(Error::GateExceeded { n, gate });
    }
    if n == 0 {
        return Ok(SparsePolynomial::constant(0, 1));
    }
    let mut a = m.entries.clone();
    let mut negate = false;
    let mut prev = SparsePolynomial::constant(n, 1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(SparsePolynomial::zero(n)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Scientific notation with 12 significant digits, rounded up, of the
/// positive rational `num / den`; `"0"` when `num` is zero.
pub fn format_probability(num: &BigUint, den: &BigUint) -> String {
    const DIGITS: usize = 12;
    if num.is_zero() {
        return "0".to_string();
    }
    // exponent e with 10^e <= num/den < 10^(e+1)
    let ten = BigUint::from(10u32);
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge = |e: i64| -> bool {
        if e >= 0 {
            *num >= den * ten.pow(e as u32)
        } else {
            num * ten.pow((-e) as u32) >= *den
        }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }
    // mantissa = ceil(num/den * 10^(DIGITS-1-e))
    let shift = DIGITS as i64 - 1 - e;
    let (n2, d2) = if shift >= 0 {
        (num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), den * ten.pow((-shift) as u32))
    };
    let (q, r) = n2.div_rem(&d2);
    let mut mant = if r.is_zero() { q } else { q + 1u32 };
    if mant.to_string().len() > DIGITS {
        // rounding carried into a new digit
        mant /= 10u32;
        e += 1;
    }
    let s = mant.to_string();
    let frac = s[1..].trim_end_matches('0');
    if frac.is_empty() {
        format!("{}e{}", &s[..1], e)
    } else {
        format!("{}.{}e{}", &s[..1], frac, e)
    }
}
