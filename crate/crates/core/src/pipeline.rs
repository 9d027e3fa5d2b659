//! End-to-end runs: group spec → coset system → family → certificate →
//! report, plus structural inspection and certificate re-verification.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::boundsearch::{
    exponent_general, feasibility, fiber_bound, ratio_string, schmidt_exponent, select_subset,
    Strategy, DEFAULT_ATTEMPTS,
};
use crate::error::{Error, Result};
use crate::jaccert::{reverify, CertStatus, CertifyOptions, DEFAULT_SYMBOLIC_GATE};
use crate::permgroup::{BuildLimits, CosetSystem, GroupSpec, Permutation};
use crate::report::{canonical_json, BoundReport, CertificateRecord, Comparison, ReportStatus};
use crate::tracefam::{build_family, family_size};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunParams {
    pub k: Option<usize>,
    pub t: Option<u32>,
    pub seed: u64,
    pub trials: u32,
    pub bound: BigUint,
    pub strategy: Strategy,
    pub attempts: u32,
    pub exact: bool,
    pub gate: usize,
    pub limits: BuildLimits,
}

impl RunParams {
    pub fn new(seed: u64) -> Self {
        RunParams {
            k: None,
            t: None,
            seed,
            trials: 20,
            bound: BigUint::one() << 31u32,
            strategy: Strategy::GreedyRank,
            attempts: DEFAULT_ATTEMPTS,
            exact: false,
            gate: DEFAULT_SYMBOLIC_GATE,
            limits: BuildLimits::default(),
        }
    }

    fn certify_options(&self) -> CertifyOptions {
        CertifyOptions {
            seed: self.seed,
            trials: self.trials,
            bound: self.bound.clone(),
            exact: self.exact,
            gate: self.gate,
        }
    }
}

/// Builds the group and its coset system, honouring any ordering the spec fixes.
pub fn coset_system_for(spec: &GroupSpec, limits: &BuildLimits) -> Result<CosetSystem> {
    let built = spec.build(limits)?;
    CosetSystem::with_ordering(built.group, built.ordering.as_deref())
}

fn malle_string(cs: &CosetSystem) -> Option<String> {
    cs.group().malle_constant().ok().map(|a| ratio_string(&a))
}

/// Runs the whole pipeline and assembles the bound report.
pub fn certify(spec: &GroupSpec, params: &RunParams) -> Result<BoundReport> {
    let cs = coset_system_for(spec, &params.limits)?;
    let (n, r) = (cs.n(), cs.r());
    let feas = feasibility(n, r);
    let schmidt = schmidt_exponent(n);
    let malle = cs.group().malle_constant().ok();
    let mut report = BoundReport {
        group: spec.name.clone(),
        n,
        r,
        group_order: cs.group().order(),
        feasible_pairs: feas
            .feasible_pairs
            .iter()
            .map(|&(k, l)| (k, l.to_string()))
            .collect(),
        k: None,
        t: None,
        l: None,
        strategy: None,
        attempts: None,
        status: ReportStatus::Infeasible,
        certificate: None,
        exponent_theorem: None,
        exponent_general: None,
        fiber_bound_z: None,
        schmidt_exponent: ratio_string(&schmidt),
        malle_a: malle.as_ref().map(ratio_string),
        comparison: Comparison {
            smallest_upper_bound: "schmidt".into(),
            theorem_below_schmidt: None,
            theorem_minus_malle: None,
        },
        note: None,
    };

    if !feas.is_feasible() {
        report.note = Some(format!(
            "no k in [2, r - 1] has binom(r - 1, k - 1) >= n (n = {n}, r = {r})"
        ));
        return Ok(report);
    }
    let t = params.t.unwrap_or(2);
    let k = match params.k {
        None => feas.chosen.expect("feasible").0,
        Some(k) => {
            if !feas.feasible_pairs.iter().any(|&(fk, _)| fk == k) {
                return Err(Error::Parameter(format!(
                    "k = {k} is not feasible for n = {n}, r = {r}"
                )));
            }
            k
        }
    };
    let (_, family) = build_family(&cs, k, t)?;
    let selection = select_subset(&family, params.strategy, &params.certify_options(), params.attempts)?;

    let chosen: Vec<_> = selection
        .chosen_indices
        .iter()
        .map(|&i| family.vectors[i - 1].clone())
        .collect();
    let theorem = BigRational::from_integer((k as u64 + t as u64 - 1).into());
    let general = exponent_general(&chosen, n)?;
    let certified = selection.is_certified();

    report.k = Some(k);
    report.t = Some(t);
    report.l = Some(family_size(r, k).to_string());
    report.strategy = Some(params.strategy.as_str().to_string());
    report.attempts = Some(selection.attempts);
    report.status = if certified {
        ReportStatus::Certified
    } else {
        ReportStatus::NotCertified
    };
    report.exponent_theorem = Some(theorem.numer().to_string());
    report.exponent_general = Some(ratio_string(&general));
    report.fiber_bound_z = Some(fiber_bound(&chosen).to_string());
    report.certificate = Some(CertificateRecord::new(
        spec.clone(),
        (n, r, k, t),
        cs.reps().iter().map(Permutation::to_cycle_string).collect(),
        &selection.certificate,
    ));
    report.comparison = Comparison {
        smallest_upper_bound: if certified && theorem < schmidt {
            "theorem".into()
        } else {
            "schmidt".into()
        },
        theorem_below_schmidt: Some(theorem < schmidt),
        theorem_minus_malle: malle.as_ref().map(|a| ratio_string(&(&theorem - a))),
    };
    if !certified {
        report.note = Some(match selection.certificate.status {
            CertStatus::ExactZero => "the Jacobian determinant of the chosen subset is identically zero".into(),
            _ => format!(
                "no non-vanishing witness found in {} attempt(s) of {} trial(s); \
                 this is not a proof that the determinant vanishes",
                selection.attempts, params.trials
            ),
        });
    }
    Ok(report)
}

/// Rebuilds everything a certificate refers to and rechecks the witness.
///
/// `Ok(false)` means the reconstruction succeeded but the determinant does
/// not match (or the certificate is not a `CERTIFIED_NONZERO` one).
pub fn verify(record: &CertificateRecord, limits: &BuildLimits) -> Result<bool> {
    if record.ordering.is_empty() {
        return Err(Error::Certificate("ordering absent".into()));
    }
    let built = record.group.build(limits)?;
    let n = built.group.degree();
    let ordering = record
        .ordering
        .iter()
        .map(|s| Permutation::parse(s, n))
        .collect::<Result<Vec<_>>>()?;
    let cs = CosetSystem::with_ordering(built.group, Some(&ordering))?;
    if cs.n() != record.n || cs.r() != record.r {
        return Err(Error::Certificate(format!(
            "rebuilt n = {}, r = {}; certificate says n = {}, r = {}",
            cs.n(),
            cs.r(),
            record.n,
            record.r
        )));
    }
    let (_, family) = build_family(&cs, record.k, record.t)?;
    let l = family.polys.len();
    if record.chosen_indices.len() != record.n
        || record.chosen_indices.iter().any(|&i| i == 0 || i > l)
    {
        return Err(Error::Certificate("chosen_indices do not select n family members".into()));
    }
    let fs: Vec<_> = record
        .chosen_indices
        .iter()
        .map(|&i| family.polys[i - 1].clone())
        .collect();
    let m = crate::jaccert::jacobian_with_indices(&fs, record.chosen_indices.clone())?;
    let cert = record.to_certificate()?;
    if cert.status != CertStatus::CertifiedNonzero {
        return Ok(false);
    }
    reverify(&cert, &m)
}

/// Structural summary of a group spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InspectSummary {
    pub group: String,
    pub n: usize,
    pub r: usize,
    pub group_order: usize,
    pub stabilizer_order: usize,
    pub normalizer_order: usize,
    pub reps: Vec<String>,
    /// `relabel[i - 1] = g_i(1)`.
    pub relabel: Vec<usize>,
    /// `pi[j - 1]` is the image list of `π_j`.
    pub pi: Vec<Vec<usize>>,
    pub block_reps_normalize_h: bool,
    pub feasible_pairs: Vec<(usize, String)>,
    pub malle_a: Option<String>,
    pub schmidt_exponent: String,
}

impl InspectSummary {
    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    /// Human-readable form with each `π_j` in two-row notation.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("group: {}\n", self.group));
        s.push_str(&format!(
            "n = {}, r = {}, |G| = {}, |H| = {}, |N| = {}\n",
            self.n, self.r, self.group_order, self.stabilizer_order, self.normalizer_order
        ));
        s.push_str(&format!("coset representatives: {}\n", self.reps.join(", ")));
        s.push_str(&format!(
            "block representatives normalize H: {}\n",
            self.block_reps_normalize_h
        ));
        for (j, images) in self.pi.iter().enumerate() {
            s.push_str(&format!("pi_{} =\n", j + 1));
            s.push_str(&two_row(images));
        }
        if self.feasible_pairs.is_empty() {
            s.push_str("feasible k: none\n");
        } else {
            let pairs: Vec<String> = self
                .feasible_pairs
                .iter()
                .map(|(k, l)| format!("k={k} (l={l})"))
                .collect();
            s.push_str(&format!("feasible k: {}\n", pairs.join(", ")));
        }
        s.push_str(&format!(
            "malle a(G): {}\n",
            self.malle_a.as_deref().unwrap_or("undefined")
        ));
        s.push_str(&format!("schmidt exponent: {}\n", self.schmidt_exponent));
        s
    }
}

/// Two-row notation: points on the first line, images below, columns
/// right-aligned to a common width.
pub fn two_row(images: &[usize]) -> String {
    let width = images.len().to_string().len();
    let top: Vec<String> = (1..=images.len()).map(|i| format!("{i:>width$}")).collect();
    let bottom: Vec<String> = images.iter().map(|i| format!("{i:>width$}")).collect();
    format!("  {}\n  {}\n", top.join(" "), bottom.join(" "))
}

pub fn inspect(spec: &GroupSpec, limits: &BuildLimits) -> Result<InspectSummary> {
    let cs = coset_system_for(spec, limits)?;
    let feas = feasibility(cs.n(), cs.r());
    Ok(InspectSummary {
        group: spec.name.clone(),
        n: cs.n(),
        r: cs.r(),
        group_order: cs.group().order(),
        stabilizer_order: cs.stabilizer().order(),
        normalizer_order: cs.normalizer().order(),
        reps: cs.reps().iter().map(Permutation::to_cycle_string).collect(),
        relabel: cs.relabel().images(),
        pi: cs.pis().iter().map(Permutation::images).collect(),
        block_reps_normalize_h: cs.block_reps_normalize_h(),
        feasible_pairs: feas
            .feasible_pairs
            .iter()
            .map(|&(k, l)| (k, l.to_string()))
            .collect(),
        malle_a: malle_string(&cs),
        schmidt_exponent: ratio_string(&schmidt_exponent(cs.n())),
    })
}
