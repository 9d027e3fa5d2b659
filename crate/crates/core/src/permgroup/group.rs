use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Default cap on the number of elements enumerated by closure.
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

/// A finite permutation group held as an explicit element list.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermutationGroup {
    /// Breadth-first closure of `generators` in `S_degree`.
    ///
    /// Each BFS layer is sorted by image list before being appended, and the
    /// generators are deduplicated and sorted first, so the element order
    /// depends only on the generator set.
    pub fn close(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        let cap = cap.max(1);
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut layer_start = 0;
        while layer_start < elements.len() {
            let layer_end = elements.len();
            let mut next = BTreeSet::new();
            for g in &elements[layer_start..layer_end] {
                for s in &gens {
                    let h = s.compose(g);
                    if !index.contains_key(&h) {
                        next.insert(h);
                    }
                }
            }
            if elements.len() + next.len() > cap {
                return Err(Error::OrderCapExceeded { cap });
            }
            for h in next {
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
            layer_start = layer_end;
        }
        Ok(PermutationGroup {
            degree,
            elements,
            generators: gens,
            index,
        })
    }

    /// Wraps an explicit element list, checking the group axioms.
    ///
    /// The listed order is kept.
    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, g) in elements.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::NotASubgroup(format!("element {g} listed twice")));
            }
        }
        if !index.contains_key(&Permutation::identity(degree)) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for a in &elements {
            for b in &elements {
                if !index.contains_key(&a.compose(b)) {
                    return Err(Error::NotASubgroup(format!(
                        "product {a} * {b} is not in the list"
                    )));
                }
            }
        }
        let generators = generating_subsequence(degree, &elements);
        Ok(PermutationGroup {
            degree,
            elements,
            generators,
            index,
        })
    }

    /// Subgroup made of the elements of `self` satisfying `keep`, in order.
    /// The caller guarantees the kept set is a subgroup.
    pub(crate) fn filtered(&self, keep: impl Fn(&Permutation) -> bool) -> PermutationGroup {
        let elements: Vec<Permutation> = self.elements.iter().filter(|g| keep(g)).cloned().collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        let generators = generating_subsequence(self.degree, &elements);
        PermutationGroup {
            degree: self.degree,
            elements,
            generators,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Position of `g` in the element list.
    pub fn position(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Orbit of the 1-based point `p`, as a sorted list of 1-based points.
    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let pts: BTreeSet<usize> = self.elements.iter().map(|g| g.image(p)).collect();
        pts.into_iter().collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(1).len() == self.degree
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    /// The stabilizer of point 1.
    pub fn point_stabilizer(&self) -> PermutationGroup {
        self.filtered(|g| g.image(1) == 1)
    }

    /// `N_G(H) = {g ∈ G : gHg⁻¹ = H}`, by testing every element of `self`.
    ///
    /// Conjugation is injective, so `g s g⁻¹ ∈ H` for each generator `s` of
    /// `H` already forces `gHg⁻¹ = H`.
    pub fn normalizer(&self, sub: &PermutationGroup) -> Result<PermutationGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotASubgroup(
                "H is not contained in G".to_string(),
            ));
        }
        Ok(self.filtered(|g| {
            let inv = g.inverse();
            sub.generators
                .iter()
                .all(|s| sub.contains(&g.compose(s).compose(&inv)))
        }))
    }

    /// Malle's constant `a(G) = 1 / min ind(g)` with
    /// `ind(g) = n − #orbits(⟨g⟩)`.
    pub fn malle_constant(&self) -> Result<BigRational> {
        let min_ind = self
            .elements
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| self.degree - g.orbit_count())
            .min()
            .ok_or(Error::TrivialGroup)?;
        Ok(BigRational::new(BigInt::from(1), BigInt::from(min_ind)))
    }
}

/// Greedy generating set: walk the list and keep each element not already
/// generated by the ones kept so far.
fn generating_subsequence(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: std::collections::HashSet<Permutation> =
        std::iter::once(Permutation::identity(degree)).collect();
    for g in elements {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        // The span is a subgroup and the list is finite, so the closure is
        // bounded by the list length.
        let closed = PermutationGroup::close(degree, &gens, usize::MAX)
            .expect("closure of group elements is finite");
        span = closed.elements.into_iter().collect();
    }
    gens
}
