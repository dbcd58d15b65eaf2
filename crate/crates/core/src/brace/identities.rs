use serde::Serialize;

use crate::abelian::ScaledView;
use crate::chains::NilpotencyReport;
use crate::error::{Error, Result};
use crate::numtheory::binomial_mod;
use crate::subgroup::{closure, Subgroup};
use crate::sweep::{build_table, first_pair, Violation};

use super::Brace;

/// `a^{∘k}` by square-and-multiply in `(A, ∘)`.
pub fn circ_power(b: &Brace, a: u32, k: u64) -> u32 {
    let mut acc = 0u32;
    let mut base = a;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = b.circ(acc, base);
        }
        base = b.circ(base, base);
        k >>= 1;
    }
    acc
}

/// `Σ_{i=1}^{k} C(k,i) a_i` with `a_1 = a`, `a_{i+1} = a * a_i`.
pub fn circ_power_binomial(b: &Brace, a: u32, k: u64) -> u32 {
    binomial_series(b, a, a, k)
}

/// `Σ_{i=1}^{k} C(k,i) e_i` with `e_1 = a*x`, `e_{i+1} = a*e_i`; equals `a^{∘k} * x`.
pub fn star_after_circ_power_binomial(b: &Brace, a: u32, x: u32, k: u64) -> u32 {
    binomial_series(b, a, b.star(a, x), k)
}

fn binomial_series(b: &Brace, a: u32, first: u32, k: u64) -> u32 {
    let g = b.group();
    let m = g.exponent_modulus();
    let mut term = first;
    let mut acc = 0u32;
    for i in 1..=k {
        if term == 0 {
            break;
        }
        acc = g.add(acc, g.mul_u(binomial_mod(k, i, m), term));
        term = b.star(a, term);
    }
    acc
}

/// The three candidate descriptions of the `p^i`-th power subgroup of `(A, ∘)`.
#[derive(Debug, Clone)]
pub struct PowerSubgroupReport {
    /// ∘-subgroup generated by all `a^{∘p^i}`.
    pub generated: Subgroup,
    /// `{a^{∘p^i} : a ∈ A}`.
    pub power_image: Subgroup,
    /// `p^i A`.
    pub multiples: Subgroup,
}

impl PowerSubgroupReport {
    pub fn all_equal(&self) -> bool {
        self.generated == self.multiples && self.power_image == self.multiples
    }
}

pub fn circ_power_subgroup(b: &Brace, i: u32) -> Result<PowerSubgroupReport> {
    b.require_p_gt_n_plus_1()?;
    let g = b.group();
    let k = (b.prime()).pow(i);
    let image: Vec<u32> = g.elements().map(|a| circ_power(b, a, k)).collect();
    let power_image = Subgroup::from_members(b.order(), image.iter().copied());
    let generated = closure(b.order(), 0, image, |x, y| b.circ(x, y));
    Ok(PowerSubgroupReport {
        generated,
        power_image,
        multiples: g.p_power_multiples(i),
    })
}

/// Right-hand side of the expansion of `(a+b)*c` through the sequences
/// `d_0 = a, d_0' = b, d_{i+1} = d_i + d_i', d_{i+1}' = d_i * d_i'`:
///
/// `a*c + b*c + Σ_{i=0}^{2s} (-1)^{i+1} ((d_i*d_i')*c - d_i*(d_i'*c))`.
pub fn engel_rhs(br: &Brace, s: usize, a: u32, b: u32, c: u32) -> u32 {
    let g = br.group();
    let mut acc = g.add(br.star(a, c), br.star(b, c));
    let (mut d, mut dp) = (a, b);
    for i in 0..=2 * s {
        let term = g.sub(br.star(br.star(d, dp), c), br.star(d, br.star(dp, c)));
        acc = if i % 2 == 0 { g.sub(acc, term) } else { g.add(acc, term) };
        (d, dp) = (g.add(d, dp), br.star(d, dp));
    }
    acc
}

/// Compares `(a+b)*c` with [`engel_rhs`], using the left nilpotency index as `s`.
pub fn verify_engel_expansion(
    br: &Brace,
    chains: &NilpotencyReport,
    a: u32,
    b: u32,
    c: u32,
) -> Result<bool> {
    let s = chains.left_index().ok_or_else(|| {
        Error::hypothesis("left nilpotent", "the left chain stabilizes above zero")
    })?;
    let g = br.group();
    Ok(br.star(g.add(a, b), c) == engel_rhs(br, s, a, b, c))
}

/// `pA` as a brace in its own right.
#[derive(Debug, Clone)]
pub struct SubBrace {
    pub brace: Brace,
    pub view: ScaledView,
    pub strong_index: Option<usize>,
    /// Strong nilpotency index of `pA` is at most `p - 1`.
    pub index_bound_holds: bool,
    /// `p^(p-1) A = 0`.
    pub top_power_vanishes: bool,
}

pub fn sub_brace_pa(b: &Brace) -> Result<SubBrace> {
    b.require_p_gt_n_plus_1()?;
    let g = b.group();
    let view = g.scaled_view(1)?;
    let table = build_table(view.group.order(), |x, y| {
        view.restrict(b.star(view.embed(x), view.embed(y)))
            .unwrap_or(u32::MAX)
    });
    if table.contains(&u32::MAX) {
        return Err(Error::Internal("pA is not closed under *".into()));
    }
    let brace = Brace::from_table_unchecked(view.group.clone(), table)?;
    super::verify_brace_axioms(&brace).into_result()?;
    let strong_index = brace.nilpotency_chains().strong_index();
    let p = b.prime() as usize;
    let top = g.p_power_multiples(p as u32 - 1);
    Ok(SubBrace {
        index_bound_holds: strong_index.is_some_and(|k| k < p),
        top_power_vanishes: top.len() == 1,
        brace,
        view,
        strong_index,
    })
}

/// First pair violating `(p^i A) * (p^j A) ⊆ p^{i+j} A` over all `i + j ≤ n`,
/// reported as `(x, y)` ranks.
pub fn filtration_violation(b: &Brace) -> Option<Violation> {
    let g = b.group();
    let n = b.log_order();
    let layers: Vec<Subgroup> = (0..=n).map(|i| g.p_power_multiples(i)).collect();
    for i in 0..=n {
        for j in 0..=(n - i) {
            let target = &layers[(i + j) as usize];
            if let Some(v) = first_pair(layers[i as usize].members(), layers[j as usize].members(), |x, y| {
                (!target.contains(b.star(x, y))).then_some("(p^i A)*(p^j A) ⊆ p^(i+j) A")
            }) {
                return Some(v);
            }
        }
    }
    None
}

/// Serializable view of a [`PowerSubgroupReport`].
#[derive(Debug, Clone, Serialize)]
pub struct PowerSubgroupSizes {
    pub generated: usize,
    pub power_image: usize,
    pub multiples: usize,
    pub equal: bool,
}

impl From<&PowerSubgroupReport> for PowerSubgroupSizes {
    fn from(r: &PowerSubgroupReport) -> Self {
        Self {
            generated: r.generated.len(),
            power_image: r.power_image.len(),
            multiples: r.multiples.len(),
            equal: r.all_equal(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPGroup;
    use crate::brace::{construct, BraceKind};

    fn radical(p: u64, n: u32) -> Brace {
        construct(&BraceKind::RadicalCyclic { p, n }).unwrap()
    }

    #[test]
    fn circ_powers() {
        let t = Brace::trivial(AbelianPGroup::cyclic(5, 3).unwrap());
        assert_eq!(circ_power(&t, 7, 4), 28);
        let b = radical(5, 3);
        // x -> 6x + 1 starting at 1: 1, 7, 43, 9, 55
        let mut x = 1u64;
        for _ in 1..5 {
            x = (6 * x + 1) % 125;
        }
        assert_eq!(x, 55);
        assert_eq!(circ_power(&b, 1, 5), 55);
        assert_eq!(circ_power_binomial(&b, 1, 5), 55);
        assert_eq!(circ_power(&b, 17, 1), 17);
    }

    #[test]
    fn power_subgroups() {
        let t = Brace::trivial(AbelianPGroup::cyclic(5, 3).unwrap());
        assert!(circ_power_subgroup(&t, 1).unwrap().all_equal());
        let b = radical(5, 3);
        let r = circ_power_subgroup(&b, 1).unwrap();
        assert!(r.all_equal());
        assert_eq!(r.multiples.len(), 25);
        let r = circ_power_subgroup(&b, 3).unwrap();
        assert!(r.all_equal());
        assert_eq!(r.generated.len(), 1);
    }

    #[test]
    fn engel_examples() {
        let b = radical(5, 3);
        let chains = b.nilpotency_chains();
        let s = chains.left_index().unwrap();
        assert_eq!(b.star(2, 1), 10);
        assert_eq!(engel_rhs(&b, s, 1, 1, 1), 10);
        assert!(verify_engel_expansion(&b, &chains, 1, 1, 1).unwrap());
        assert!(verify_engel_expansion(&b, &chains, 3, 7, 0).unwrap());
        let t = Brace::trivial(AbelianPGroup::cyclic(5, 2).unwrap());
        let tc = t.nilpotency_chains();
        assert!(verify_engel_expansion(&t, &tc, 3, 4, 5).unwrap());
    }

    #[test]
    fn sub_brace_of_radical() {
        let b = radical(5, 3);
        let s = sub_brace_pa(&b).unwrap();
        assert_eq!(s.brace.order(), 25);
        assert!(s.index_bound_holds && s.top_power_vanishes);
        assert!(s.strong_index.unwrap() <= 4);

        let t = Brace::trivial(AbelianPGroup::cyclic(5, 2).unwrap());
        let s = sub_brace_pa(&t).unwrap();
        assert_eq!(s.brace.order(), 5);
        assert!(s.brace.star_table().iter().all(|&x| x == 0));
    }

    #[test]
    fn filtration_holds_on_radical() {
        assert!(filtration_violation(&radical(5, 3)).is_none());
    }
}
