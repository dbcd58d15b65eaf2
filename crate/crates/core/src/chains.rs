//! Left, right and strong product chains for any product that is additive in
//! its second argument (brace `*`, pre-Lie `·`, Lie brackets).

use serde::Serialize;

use crate::abelian::AbelianPGroup;
use crate::subgroup::Subgroup;

/// A nonincreasing chain `T1 ⊇ T2 ⊇ ...` of additive subgroups.
#[derive(Debug, Clone)]
pub struct Chain {
    pub terms: Vec<Subgroup>,
    /// Least `k` with `T_k = 0`, or `None` if the chain stabilized above zero.
    pub index: Option<usize>,
}

impl Chain {
    pub fn sizes(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::len).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.index.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct NilpotencyReport {
    pub left: Chain,
    pub right: Chain,
    pub strong: Chain,
}

/// Serializable summary of a [`NilpotencyReport`].
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NilpotencySummary {
    pub left_sizes: Vec<usize>,
    pub right_sizes: Vec<usize>,
    pub strong_sizes: Vec<usize>,
    pub left_index: Option<usize>,
    pub right_index: Option<usize>,
    pub strong_index: Option<usize>,
}

impl NilpotencyReport {
    pub fn left_index(&self) -> Option<usize> {
        self.left.index
    }

    pub fn right_index(&self) -> Option<usize> {
        self.right.index
    }

    pub fn strong_index(&self) -> Option<usize> {
        self.strong.index
    }

    pub fn summary(&self) -> NilpotencySummary {
        NilpotencySummary {
            left_sizes: self.left.sizes(),
            right_sizes: self.right.sizes(),
            strong_sizes: self.strong.sizes(),
            left_index: self.left.index,
            right_index: self.right.index,
            strong_index: self.strong.index,
        }
    }
}

/// A small additive generating set of `h`, chosen greedily by rank.
pub fn generating_set(group: &AbelianPGroup, h: &Subgroup) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(group.order(), 0);
    for &x in h.members() {
        if !span.contains(x) {
            gens.push(x);
            span = group.subgroup_closure(gens.iter().copied());
            if span.len() == h.len() {
                break;
            }
        }
    }
    gens
}

/// `span{ x ⋆ y : x ∈ xs, y ∈ ys }`, with `ys` allowed to be a generating set of
/// the intended right-hand subgroup.
fn product_span<F>(group: &AbelianPGroup, xs: &[u32], ys: &[u32], prod: &F) -> Subgroup
where
    F: Fn(u32, u32) -> u32,
{
    group.subgroup_closure(xs.iter().flat_map(|&x| ys.iter().map(move |&y| prod(x, y))))
}

fn finish(mut terms: Vec<Subgroup>) -> Chain {
    let index = terms
        .iter()
        .position(|t| t.len() == 1)
        .map(|i| i + 1);
    if index.is_none() {
        // drop the repeated stabilized term
        if terms.len() >= 2 && terms[terms.len() - 1].len() == terms[terms.len() - 2].len() {
            terms.pop();
        }
    }
    Chain { terms, index }
}

/// Computes the three chains
///
/// * left: `T1 = A`, `T_i = span{a ⋆ t : a ∈ A, t ∈ T_{i-1}}`
/// * right: `T1 = A`, `T_i = span{t ⋆ a : t ∈ T_{i-1}, a ∈ A}`
/// * strong: `T1 = A`, `T_i = span{x ⋆ y : x ∈ T_j, y ∈ T_{i-j}, 0 < j < i}`
///
/// each until it reaches zero or stops shrinking.
pub fn nilpotency_chains<F>(group: &AbelianPGroup, prod: F) -> NilpotencyReport
where
    F: Fn(u32, u32) -> u32,
{
    let whole = Subgroup::whole(group.order());
    let all: Vec<u32> = group.elements().collect();

    let one_sided = |left: bool| {
        let mut terms = vec![whole.clone()];
        loop {
            let last = terms.last().unwrap();
            if last.len() == 1 {
                break;
            }
            let next = if left {
                let gens = generating_set(group, last);
                product_span(group, &all, &gens, &prod)
            } else {
                let gens = generating_set(group, &whole);
                product_span(group, last.members(), &gens, &prod)
            };
            let stalled = next.len() == last.len();
            terms.push(next);
            if stalled {
                break;
            }
        }
        finish(terms)
    };
    let left = one_sided(true);
    let right = one_sided(false);

    let mut terms = vec![whole.clone()];
    let mut gens_of = vec![generating_set(group, &whole)];
    loop {
        let last = terms.last().unwrap();
        if last.len() == 1 {
            break;
        }
        let i = terms.len() + 1;
        let mut cands = Vec::new();
        for j in 1..i {
            let xs = terms[j - 1].members();
            let ys = &gens_of[i - j - 1];
            cands.extend(xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))));
        }
        let next = group.subgroup_closure(cands.into_iter().map(|(x, y)| prod(x, y)));
        let stalled = next.len() == last.len();
        gens_of.push(generating_set(group, &next));
        terms.push(next);
        if stalled {
            break;
        }
    }
    let strong = finish(terms);

    NilpotencyReport {
        left,
        right,
        strong,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_cyclic_chain() {
        let g = AbelianPGroup::cyclic(5, 3).unwrap();
        let r = nilpotency_chains(&g, |a, b| ((5 * a as u64 * b as u64) % 125) as u32);
        assert_eq!(r.strong.sizes(), vec![125, 25, 5, 1]);
        assert_eq!(r.strong_index(), Some(4));
        assert_eq!(r.left_index(), Some(4));
        assert_eq!(r.right_index(), Some(4));
    }

    #[test]
    fn zero_product_index_two() {
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        let r = nilpotency_chains(&g, |_, _| 0);
        assert_eq!(r.strong_index(), Some(2));
        assert_eq!(r.left_index(), Some(2));
    }

    #[test]
    fn field_product_not_nilpotent() {
        let g = AbelianPGroup::cyclic(5, 1).unwrap();
        let r = nilpotency_chains(&g, |a, b| (a * b) % 5);
        assert_eq!(r.left_index(), None);
        assert_eq!(r.strong_index(), None);
        assert_eq!(r.left.sizes(), vec![5]);
    }

    #[test]
    fn one_element_group() {
        let g = AbelianPGroup::new(5, vec![]).unwrap();
        let r = nilpotency_chains(&g, |_, _| 0);
        assert_eq!(r.strong_index(), Some(1));
    }
}
