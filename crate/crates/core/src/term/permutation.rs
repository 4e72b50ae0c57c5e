use super::TermError;

/// A bijection of `{1..n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// From 1-based images: `images[i-1] = σ(i)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, TermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(TermError::NotAPermutation(images.clone()));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| (x - 1) as u32).collect(),
        })
    }

    /// Swaps `i` and `j` (1-based) in degree `n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Permutation {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// The block permutation `τ` making composition equivariant:
    /// `(μ·σ) ∘ (ν_1 ⊗ … ⊗ ν_n) = (μ ∘ (ν_{σ⁻¹(1)} ⊗ … ⊗ ν_{σ⁻¹(n)}))·τ`,
    /// where `sizes[j-1]` is the arity of `ν_j`.
    pub fn block(&self, sizes: &[usize]) -> Self {
        assert_eq!(sizes.len(), self.degree());
        let inv = self.inverse();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0usize;
        for &s in sizes {
            offsets.push(acc);
            acc += s;
        }
        let mut tau_inv = vec![0u32; acc];
        let mut slot_offset = 0usize;
        for slot in 0..sizes.len() {
            let j = inv.images[slot] as usize;
            for r in 0..sizes[j] {
                tau_inv[slot_offset + r] = (offsets[j] + r) as u32;
            }
            slot_offset += sizes[j];
        }
        Permutation { images: tau_inv }.inverse()
    }

    /// All permutations of degree `n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (0..n as u32).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next_permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_compose() {
        let s = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(s.apply(1), 2);
        assert!(s.compose(&s.inverse()).is_identity());
        assert_eq!(s.compose(&s).images(), vec![3, 1, 2]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![1, 3]).is_err());
    }

    #[test]
    fn enumerates_symmetric_group() {
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
