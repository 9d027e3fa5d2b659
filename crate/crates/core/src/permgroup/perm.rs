//! Permutations of `[1, n]`.
//!
//! Composition follows the functional convention `(g ∘ h)(x) = g(h(x))`.
//! In cycle notation a product of cycles is read the same way: the rightmost
//! cycle acts first, so `"(1 2)(2 3)"` sends 3 to 2, then 2 to 1.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A bijection of `[1, n]`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images, `images[i - 1] = p(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n {
                return Err(Error::PointOutOfRange { point: p, degree: n });
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::NotABijection(n));
            }
            out.push((p - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Permutation { images }
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"` or `"(1,2,3)"`.
    ///
    /// Cycles need not be disjoint; the rightmost one is applied first.
    /// `"()"` and the empty string denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedCycle {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(malformed("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| malformed("unclosed cycle"))?;
            let body = &rest[1..close];
            if body.contains('(') {
                return Err(malformed("nested '('"));
            }
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| malformed(&format!("bad point {tok:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if cycle.contains(&p) {
                    return Err(malformed(&format!("point {p} repeated in a cycle")));
                }
                cycle.push(p);
            }
            cycles.push(cycle);
            rest = rest[close + 1..].trim_start();
        }

        let mut result = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut c = Permutation::identity(degree);
            for (idx, &p) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                c.images[p - 1] = (next - 1) as u32;
            }
            result = c.compose(&result);
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn image0(&self, p: usize) -> usize {
        self.images[p] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, ordered by that point (1-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut x = self.image0(start);
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.image0(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Number of orbits of `⟨self⟩` on `[1, n]`, fixed points included.
    pub fn orbit_count(&self) -> usize {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        self.cycles().len() + (self.degree() - moved)
    }

    /// Canonical cycle string; the identity prints as `"()"`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            s.push_str(&parts.join(" "));
            s.push(')');
        }
        s
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}
