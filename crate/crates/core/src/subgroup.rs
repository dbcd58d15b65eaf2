//! Subsets of a finite table-indexed group, with closure under a binary operation.

use std::collections::VecDeque;

/// A subset of `{0, ..., order-1}` held as a sorted index list plus a membership bitmap.
///
/// Every handle produced by [`closure`] is closed under the operation it was built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn from_members(order: usize, members: impl IntoIterator<Item = u32>) -> Self {
        let mut mask = vec![false; order];
        for m in members {
            mask[m as usize] = true;
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u32))
            .collect();
        Self { members, mask }
    }

    pub fn whole(order: usize) -> Self {
        Self::from_mask(vec![true; order])
    }

    /// `{identity}`.
    pub fn trivial(order: usize, identity: u32) -> Self {
        Self::from_members(order, [identity])
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask[x as usize]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Size of the ambient set.
    pub fn ambient(&self) -> usize {
        self.mask.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(&a, &b)| a && b)
            .collect();
        Self::from_mask(mask)
    }
}

/// The smallest subset containing `identity` and `gens` that is closed under `op`.
///
/// In a finite group this is the subgroup generated by `gens`. Generators already
/// inside the running closure are skipped, so long candidate streams are cheap.
pub fn closure<I, F>(order: usize, identity: u32, gens: I, op: F) -> Subgroup
where
    I: IntoIterator<Item = u32>,
    F: Fn(u32, u32) -> u32,
{
    let mut mask = vec![false; order];
    mask[identity as usize] = true;
    let mut members = vec![identity];
    let mut useful: Vec<u32> = Vec::new();
    for g in gens {
        if mask[g as usize] {
            continue;
        }
        useful.push(g);
        let mut queue: VecDeque<u32> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &h in &useful {
                let y = op(x, h);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    Subgroup::from_mask(mask)
}
