//! Left cosets of the point stabilizer and the two commuting actions on them.
//!
//! With `H` the stabilizer of point 1, the coset `gH` is determined by the
//! point `g(1)`, which is how cosets are identified here.

use super::group::PermutationGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Coset representatives `g_1, ..., g_n` of `G/H`, with the `N/H` block first.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    group: PermutationGroup,
    stabilizer: PermutationGroup,
    normalizer: PermutationGroup,
    reps: Vec<Permutation>,
    r: usize,
    /// `relabel(i) = g_i(1)`: the point standing for coset index `i`.
    relabel: Permutation,
    /// Inverse of `relabel`, 0-based: point -> coset index.
    coset_of_point: Vec<usize>,
    pis: Vec<Permutation>,
}

impl CosetSystem {
    /// Builds the stabilizer, normalizer and canonical coset system of `group`.
    pub fn new(group: PermutationGroup) -> Result<Self> {
        Self::with_ordering(group, None)
    }

    /// As [`CosetSystem::new`], with an optional explicit representative list.
    pub fn with_ordering(group: PermutationGroup, ordering: Option<&[Permutation]>) -> Result<Self> {
        let stabilizer = group.point_stabilizer();
        let normalizer = group.normalizer(&stabilizer)?;
        Self::from_parts(group, stabilizer, normalizer, ordering)
    }

    /// Assembles a coset system from `H ≤ N ≤ G` with `H` the stabilizer of 1.
    ///
    /// Default order: the `N/H` block by increasing `g(1)`, then the remaining
    /// cosets by increasing `g(1)`; each representative is the smallest
    /// element of its coset by image list.
    pub fn from_parts(
        group: PermutationGroup,
        stabilizer: PermutationGroup,
        normalizer: PermutationGroup,
        ordering: Option<&[Permutation]>,
    ) -> Result<Self> {
        let n = group.degree();
        if !group.is_transitive() {
            return Err(Error::NotTransitive(n));
        }
        if !stabilizer.is_subgroup_of(&normalizer) || !normalizer.is_subgroup_of(&group) {
            return Err(Error::NotASubgroup("expected H <= N <= G".into()));
        }
        if stabilizer.order() * n != group.order()
            || stabilizer.elements().iter().any(|h| h.image(1) != 1)
        {
            return Err(Error::NotASubgroup(
                "H must be the stabilizer of point 1".into(),
            ));
        }
        if n < 2 || stabilizer.order() == group.order() {
            return Err(Error::Degenerate("H = G (need degree n >= 2)".into()));
        }

        let r = normalizer.order() / stabilizer.order();
        let in_n_block: Vec<bool> = {
            let mut v = vec![false; n];
            for g in normalizer.elements() {
                v[g.image0(0)] = true;
            }
            v
        };

        let reps: Vec<Permutation> = match ordering {
            Some(list) => {
                validate_ordering(&group, &normalizer, list, r)?;
                list.to_vec()
            }
            None => {
                let mut smallest: Vec<Option<&Permutation>> = vec![None; n];
                for g in group.elements() {
                    let slot = &mut smallest[g.image0(0)];
                    if slot.is_none_or(|cur| g < cur) {
                        *slot = Some(g);
                    }
                }
                let mut points: Vec<usize> = (0..n).filter(|&p| in_n_block[p]).collect();
                points.extend((0..n).filter(|&p| !in_n_block[p]));
                points
                    .into_iter()
                    .map(|p| smallest[p].expect("transitive group covers every point").clone())
                    .collect()
            }
        };

        let relabel_images: Vec<u32> = reps.iter().map(|g| g.image0(0) as u32).collect();
        let relabel = Permutation::from_zero_based(relabel_images);
        let mut coset_of_point = vec![0usize; n];
        for (i, g) in reps.iter().enumerate() {
            coset_of_point[g.image0(0)] = i;
        }

        let mut cs = CosetSystem {
            group,
            stabilizer,
            normalizer,
            reps,
            r,
            relabel,
            coset_of_point,
            pis: Vec::new(),
        };
        cs.pis = (0..r)
            .map(|j| {
                let images = (0..n)
                    .map(|i| cs.coset_index0(&cs.reps[i].compose(&cs.reps[j])) as u32)
                    .collect();
                Permutation::from_zero_based(images)
            })
            .collect();
        Ok(cs)
    }

    /// 0-based index of the coset `gH`.
    #[inline]
    fn coset_index0(&self, g: &Permutation) -> usize {
        self.coset_of_point[g.image0(0)]
    }

    /// 1-based index `k` with `gH = g_k H`.
    pub fn coset_index(&self, g: &Permutation) -> usize {
        self.coset_index0(g) + 1
    }

    pub fn n(&self) -> usize {
        self.group.degree()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn stabilizer(&self) -> &PermutationGroup {
        &self.stabilizer
    }

    pub fn normalizer(&self) -> &PermutationGroup {
        &self.normalizer
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn relabel(&self) -> &Permutation {
        &self.relabel
    }

    /// `π_j` for `j ∈ [1, r]`: `π_j(i) = k` where `g_i g_j H = g_k H`.
    pub fn pi(&self, j: usize) -> Result<&Permutation> {
        if j == 0 || j > self.r {
            return Err(Error::IndexOutOfRange { index: j, max: self.r });
        }
        Ok(&self.pis[j - 1])
    }

    /// All of `π_1, ..., π_r`.
    pub fn pis(&self) -> &[Permutation] {
        &self.pis
    }

    /// `λ_g(i) = k` where `g g_i H = g_k H`.
    pub fn lambda(&self, g: &Permutation) -> Result<Permutation> {
        if !self.group.contains(g) {
            return Err(Error::NotInGroup);
        }
        let images = self
            .reps
            .iter()
            .map(|rep| self.coset_index0(&g.compose(rep)) as u32)
            .collect();
        Ok(Permutation::from_zero_based(images))
    }

    /// Checks `g_j H = H g_j` for every representative of the `N/H` block.
    pub fn block_reps_normalize_h(&self) -> bool {
        self.reps[..self.r].iter().all(|g| {
            let inv = g.inverse();
            self.stabilizer
                .elements()
                .iter()
                .all(|h| self.stabilizer.contains(&g.compose(h).compose(&inv)))
        })
    }
}

fn validate_ordering(
    group: &PermutationGroup,
    normalizer: &PermutationGroup,
    list: &[Permutation],
    r: usize,
) -> Result<()> {
    let n = group.degree();
    let bad = |m: String| Err(Error::InvalidOrdering(m));
    if list.len() != n {
        return bad(format!("{} representatives given, {n} cosets", list.len()));
    }
    if !list[0].is_identity() {
        return bad("g_1 must be the identity".into());
    }
    let mut seen = vec![false; n];
    for (i, g) in list.iter().enumerate() {
        if g.degree() != n || !group.contains(g) {
            return bad(format!("representative {} ({g}) is not in G", i + 1));
        }
        if std::mem::replace(&mut seen[g.image0(0)], true) {
            return bad(format!(
                "representative {} ({g}) repeats a coset",
                i + 1
            ));
        }
        // gH ⊆ N iff g ∈ N, since H ≤ N.
        if (i < r) != normalizer.contains(g) {
            return bad(format!(
                "representative {} ({g}) {} the normalizer block",
                i + 1,
                if i < r { "lies outside" } else { "belongs to" }
            ));
        }
    }
    Ok(())
}
