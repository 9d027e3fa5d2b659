//! JSON group descriptions and the constructions built from them.
//!
//! Kinds:
//! - `generators`: `cycles` generate a subgroup of `S_degree`.
//! - `elements`: `cycles` list every element of the group; the order of
//!   first appearance of each coset fixes the coset ordering.
//! - `regular`: `cycles` generate a group in `S_degree`, which then acts on
//!   itself by left multiplication. `element_order` (optional) labels the
//!   points `1..|group|`.
//! - `product`: direct product of `factors`, acting on tuples of points
//!   indexed in lexicographic order.
//!
//! Any spec may carry `"regular": true`, which replaces the group it
//! describes by its regular representation. Outside the regular case,
//! `element_order` lists coset representatives of the final group.

use serde::{Deserialize, Serialize};

use super::group::{PermutationGroup, DEFAULT_ORDER_CAP};
use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Generators,
    Elements,
    Regular,
    Product,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    /// Degree of the permutations in `cycles`; for products, the expected
    /// degree of the result (0 skips the check).
    #[serde(default)]
    pub degree: usize,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element_order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub regular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    pub max_order: usize,
    pub max_degree: usize,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_order: DEFAULT_ORDER_CAP,
            max_degree: 100_000,
        }
    }
}

/// A constructed group together with the coset ordering its spec fixes, if any.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub group: PermutationGroup,
    pub ordering: Option<Vec<Permutation>>,
}

impl GroupSpec {
    pub fn generators(name: &str, degree: usize, cycles: &[&str]) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree,
            kind: GroupKind::Generators,
            cycles: cycles.iter().map(|s| s.to_string()).collect(),
            element_order: None,
            factors: Vec::new(),
            regular: false,
        }
    }

    /// Regular representation of the group generated by `cycles` in
    /// `S_degree`, with optional point labelling.
    pub fn regular(name: &str, degree: usize, cycles: &[&str], element_order: Option<&[&str]>) -> Self {
        GroupSpec {
            kind: GroupKind::Regular,
            element_order: element_order.map(|o| o.iter().map(|s| s.to_string()).collect()),
            ..GroupSpec::generators(name, degree, cycles)
        }
    }

    /// Natural action of `S_m` on `[1, m]`.
    pub fn symmetric(m: usize) -> Self {
        let mut cycles = Vec::new();
        if m >= 2 {
            cycles.push("(1 2)".to_string());
            let long: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
            cycles.push(format!("({})", long.join(" ")));
        }
        GroupSpec {
            name: format!("S{m}"),
            degree: m,
            kind: GroupKind::Generators,
            cycles,
            element_order: None,
            factors: Vec::new(),
            regular: false,
        }
    }

    /// `A × B` with `B` acting regularly, on the points `(a, b)` in
    /// lexicographic order.
    pub fn direct_product_regular(name: &str, a: GroupSpec, b: GroupSpec) -> Self {
        let b = if b.kind == GroupKind::Regular {
            b
        } else {
            GroupSpec { regular: true, ..b }
        };
        GroupSpec {
            name: name.to_string(),
            degree: 0,
            kind: GroupKind::Product,
            cycles: Vec::new(),
            element_order: None,
            factors: vec![a, b],
            regular: false,
        }
    }

    /// `S_{n_1} × ... × S_{n_r}`, natural on every factor but the last,
    /// which acts regularly.
    pub fn symmetric_product(ns: &[usize]) -> Result<Self> {
        if ns.len() < 2 || ns.iter().any(|&m| m < 2) {
            return Err(Error::InvalidSpec(
                "symmetric product needs at least two factors, each of size >= 2".into(),
            ));
        }
        let mut factors: Vec<GroupSpec> = ns.iter().map(|&m| GroupSpec::symmetric(m)).collect();
        factors.last_mut().unwrap().regular = true;
        let name = ns
            .iter()
            .map(|m| format!("S{m}"))
            .collect::<Vec<_>>()
            .join("x");
        Ok(GroupSpec {
            name,
            degree: 0,
            kind: GroupKind::Product,
            cycles: Vec::new(),
            element_order: None,
            factors,
            regular: false,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    fn is_regular(&self) -> bool {
        self.regular || self.kind == GroupKind::Regular
    }

    fn parse_list(list: &[String], degree: usize) -> Result<Vec<Permutation>> {
        list.iter().map(|s| Permutation::parse(s, degree)).collect()
    }

    /// Builds the group without the transitivity requirement (used for factors).
    fn build_raw(&self, limits: &BuildLimits) -> Result<PermutationGroup> {
        let base = match self.kind {
            GroupKind::Generators | GroupKind::Regular => {
                check_degree(self.degree, limits)?;
                let gens = Self::parse_list(&self.cycles, self.degree)?;
                PermutationGroup::close(self.degree, &gens, limits.max_order)?
            }
            GroupKind::Elements => {
                check_degree(self.degree, limits)?;
                let els = Self::parse_list(&self.cycles, self.degree)?;
                if els.len() > limits.max_order {
                    return Err(Error::OrderCapExceeded { cap: limits.max_order });
                }
                PermutationGroup::from_elements(self.degree, els)?
            }
            GroupKind::Product => {
                if self.factors.is_empty() {
                    return Err(Error::InvalidSpec("product without factors".into()));
                }
                let built: Vec<PermutationGroup> = self
                    .factors
                    .iter()
                    .map(|f| f.build_raw(limits))
                    .collect::<Result<_>>()?;
                let g = direct_product(&built, limits)?;
                if self.degree != 0 && !self.is_regular() && g.degree() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        found: g.degree(),
                    });
                }
                g
            }
        };
        if self.is_regular() {
            let labels = match &self.element_order {
                Some(order) => Some(Self::parse_list(order, base.degree())?),
                None => None,
            };
            regular_representation(&base, labels.as_deref(), limits)
        } else {
            Ok(base)
        }
    }

    /// Builds the group, rejecting intransitive results.
    pub fn build(&self, limits: &BuildLimits) -> Result<BuiltGroup> {
        let group = self.build_raw(limits)?;
        if !group.is_transitive() {
            return Err(Error::NotTransitive(group.degree()));
        }
        let ordering = if self.is_regular() {
            None
        } else if let Some(order) = &self.element_order {
            Some(Self::parse_list(order, group.degree())?)
        } else if self.kind == GroupKind::Elements {
            Some(ordering_from_element_list(&group)?)
        } else {
            None
        };
        Ok(BuiltGroup { group, ordering })
    }
}

/// Builds the group described by `spec` with default limits.
pub fn build_group(spec: &GroupSpec) -> Result<BuiltGroup> {
    spec.build(&BuildLimits::default())
}

fn check_degree(degree: usize, limits: &BuildLimits) -> Result<()> {
    if degree == 0 {
        return Err(Error::InvalidSpec("degree must be positive".into()));
    }
    if degree > limits.max_degree {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: limits.max_degree,
        });
    }
    Ok(())
}

/// Left-multiplication action of `group` on its own elements.
///
/// Point `k` stands for `labels[k - 1]` (or the `k`-th element of the group
/// when no labels are given), and `g` sends `k` to the index of `g · h_k`.
pub fn regular_representation(
    group: &PermutationGroup,
    labels: Option<&[Permutation]>,
    limits: &BuildLimits,
) -> Result<PermutationGroup> {
    let labels: Vec<Permutation> = match labels {
        Some(l) => {
            if l.len() != group.order() {
                return Err(Error::InvalidSpec(format!(
                    "element_order lists {} elements, group has {}",
                    l.len(),
                    group.order()
                )));
            }
            let mut seen = std::collections::HashSet::new();
            for h in l {
                if !group.contains(h) || !seen.insert(h) {
                    return Err(Error::InvalidSpec(format!(
                        "element_order entry {h} is not a distinct group element"
                    )));
                }
            }
            l.to_vec()
        }
        None => group.elements().to_vec(),
    };
    let q = labels.len();
    check_degree(q, limits)?;
    let position: std::collections::HashMap<&Permutation, u32> =
        labels.iter().enumerate().map(|(i, h)| (h, i as u32)).collect();
    let left_mult = |g: &Permutation| {
        Permutation::from_zero_based(labels.iter().map(|h| position[&g.compose(h)]).collect())
    };
    let gens: Vec<Permutation> = group.generators().iter().map(left_mult).collect();
    PermutationGroup::close(q, &gens, limits.max_order)
}

/// Direct product acting on tuples of points, indexed lexicographically
/// (the first factor varies slowest).
pub fn direct_product(factors: &[PermutationGroup], limits: &BuildLimits) -> Result<PermutationGroup> {
    let degrees: Vec<usize> = factors.iter().map(PermutationGroup::degree).collect();
    let total = degrees
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&t| t <= limits.max_degree)
        .ok_or(Error::DegreeCapExceeded {
            degree: usize::MAX,
            cap: limits.max_degree,
        })?;
    // stride[f] = product of degrees of the factors after f
    let mut stride = vec![1usize; factors.len()];
    for f in (0..factors.len().saturating_sub(1)).rev() {
        stride[f] = stride[f + 1] * degrees[f + 1];
    }
    let mut gens = Vec::new();
    for (f, factor) in factors.iter().enumerate() {
        for s in factor.generators() {
            let images = (0..total)
                .map(|x| {
                    let coord = (x / stride[f]) % degrees[f];
                    let moved = s.image0(coord);
                    (x + moved * stride[f] - coord * stride[f]) as u32
                })
                .collect();
            gens.push(Permutation::from_zero_based(images));
        }
    }
    PermutationGroup::close(total, &gens, limits.max_order)
}

/// Coset ordering read off an explicit element list: cosets in order of
/// first appearance, normalizer block first, identity for the first coset.
fn ordering_from_element_list(group: &PermutationGroup) -> Result<Vec<Permutation>> {
    let n = group.degree();
    let stab = group.point_stabilizer();
    let norm = group.normalizer(&stab)?;
    let mut first: Vec<Option<&Permutation>> = vec![None; n];
    let mut order = Vec::new();
    for g in group.elements() {
        let p = g.image(1) - 1;
        if first[p].is_none() {
            first[p] = Some(g);
            order.push(p);
        }
    }
    let mut reps = Vec::with_capacity(n);
    for in_block in [true, false] {
        for &p in &order {
            let g = first[p].unwrap();
            if norm.contains(g) == in_block {
                reps.push(if p == 0 { Permutation::identity(n) } else { g.clone() });
            }
        }
    }
    Ok(reps)
}
