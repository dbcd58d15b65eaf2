use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

use super::{present_abelian, AbelianPGroup};

/// `A/H` presented canonically, with the coset map and minimal-rank representatives.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: AbelianPGroup,
    kernel: Subgroup,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl Quotient {
    pub fn new(parent: &AbelianPGroup, kernel: &Subgroup) -> Result<Self> {
        if kernel.ambient() != parent.order() || !kernel.contains(0) {
            return Err(Error::structural("kernel is not a subset of the parent group"));
        }
        let n = parent.order();
        let mut cid = vec![u32::MAX; n];
        let mut reps: Vec<u32> = Vec::new();
        for a in parent.elements() {
            if cid[a as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(a);
            for &h in kernel.members() {
                let x = parent.add(a, h);
                if cid[x as usize] != u32::MAX && cid[x as usize] != c {
                    return Err(Error::structural("kernel is not a subgroup"));
                }
                cid[x as usize] = c;
            }
        }
        if reps.len() * kernel.len() != n {
            return Err(Error::structural("kernel is not a subgroup"));
        }
        let pres = present_abelian(parent.prime(), reps.len(), 0, |i, j| {
            cid[parent.add(reps[i as usize], reps[j as usize]) as usize]
        })?;
        let coset_of = cid.iter().map(|&c| pres.to_rank[c as usize]).collect();
        let reps = pres.from_rank.iter().map(|&c| reps[c as usize]).collect();
        Ok(Self {
            group: pres.group,
            kernel: kernel.clone(),
            coset_of,
            reps,
        })
    }

    /// `[a]` as a rank of the quotient group.
    #[inline]
    pub fn coset(&self, a: u32) -> u32 {
        self.coset_of[a as usize]
    }

    /// Minimal-rank representative of a coset.
    #[inline]
    pub fn rep(&self, q: u32) -> u32 {
        self.reps[q as usize]
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// All elements of the parent in coset `q`.
    pub fn coset_members<'a>(&'a self, parent: &'a AbelianPGroup, q: u32) -> impl Iterator<Item = u32> + 'a {
        let r = self.rep(q);
        self.kernel.members().iter().map(move |&h| parent.add(r, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_mod_ann() {
        let g = AbelianPGroup::cyclic(5, 3).unwrap();
        let q = Quotient::new(&g, &g.annihilator(2)).unwrap();
        assert_eq!(q.group.exponents(), &[1]);
        for a in g.elements() {
            assert_eq!(q.coset(a), a % 5);
        }
        assert_eq!(q.rep(3), 3);
    }

    #[test]
    fn quotient_is_homomorphism_with_kernel() {
        let g = AbelianPGroup::new(5, vec![2, 1]).unwrap();
        let k = g.subgroup_closure([g.rank_of(&[5, 1])]);
        let q = Quotient::new(&g, &k).unwrap();
        assert_eq!(q.group.order() * k.len(), g.order());
        for a in g.elements() {
            assert_eq!(q.coset(a) == 0, k.contains(a));
            for b in g.elements() {
                assert_eq!(q.coset(g.add(a, b)), q.group.add(q.coset(a), q.coset(b)));
            }
        }
        for r in q.group.elements() {
            let rep = q.rep(r);
            assert_eq!(q.coset(rep), r);
            assert!(q.coset_members(&g, r).all(|x| x >= rep));
        }
    }

    #[test]
    fn trivial_and_full_kernels() {
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        let q = Quotient::new(&g, &Subgroup::trivial(25, 0)).unwrap();
        assert_eq!(q.group.order(), 25);
        let q = Quotient::new(&g, &Subgroup::whole(25)).unwrap();
        assert_eq!(q.group.order(), 1);
    }

    #[test]
    fn rejects_non_subgroup() {
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        let bad = Subgroup::from_members(25, [0, 1]);
        assert!(Quotient::new(&g, &bad).is_err());
    }
}
