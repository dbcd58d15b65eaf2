//! Finite left braces stored by their `*` table.
//!
//! `a ∘ b = a + b + a*b` and `λ_a(b) = a*b + b` are derived on demand.

mod construct;
mod ideal;
mod identities;
mod verify;

pub use construct::{construct, direct_sum, BraceKind};
pub use ideal::{ann, pa_ideal, quotient_brace, BraceIdeal, FlaggedIdeal, QuotientBrace};
pub use identities::{
    circ_power, circ_power_binomial, circ_power_subgroup, engel_rhs, filtration_violation,
    star_after_circ_power_binomial, sub_brace_pa, verify_engel_expansion, PowerSubgroupReport,
    PowerSubgroupSizes, SubBrace,
};
pub use crate::sweep::AxiomReport;
pub use verify::verify_brace_axioms;

use crate::abelian::AbelianPGroup;
use crate::chains::{nilpotency_chains, NilpotencyReport};
use crate::error::{Error, Result};
use crate::sweep::build_table;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Brace {
    group: AbelianPGroup,
    star: Vec<u32>,
    /// `u32::MAX` where no right ∘-inverse exists (only for tables that fail verification).
    circ_inv: Vec<u32>,
}

impl Brace {
    /// Wraps a `*` table after shape and range checks only. Use
    /// [`verify_brace_axioms`] or [`Brace::new`] to check the axioms.
    pub fn from_table_unchecked(group: AbelianPGroup, star: Vec<u32>) -> Result<Self> {
        let n = group.order();
        if star.len() != n * n {
            return Err(Error::structural(format!(
                "star table has {} entries, expected {}",
                star.len(),
                n * n
            )));
        }
        if let Some(pos) = star.iter().position(|&x| x as usize >= n) {
            return Err(Error::structural(format!(
                "star entry at row {}, column {} is {} (order {n})",
                pos / n,
                pos % n,
                star[pos]
            )));
        }
        let mut b = Self {
            group,
            star,
            circ_inv: Vec::new(),
        };
        b.circ_inv = (0..n as u32)
            .map(|a| (0..n as u32).find(|&x| b.circ(a, x) == 0).unwrap_or(u32::MAX))
            .collect();
        Ok(b)
    }

    /// Builds the table from a closure and checks every brace axiom.
    pub fn from_fn<F>(group: AbelianPGroup, f: F) -> Result<Self>
    where
        F: Fn(u32, u32) -> u32 + Sync,
    {
        let table = build_table(group.order(), f);
        Self::new(group, table)
    }

    /// Shape checks plus full axiom verification.
    pub fn new(group: AbelianPGroup, star: Vec<u32>) -> Result<Self> {
        let b = Self::from_table_unchecked(group, star)?;
        verify_brace_axioms(&b).into_result()?;
        Ok(b)
    }

    /// `a*b = 0` on `⊕ Z/p^ei`.
    pub fn trivial(group: AbelianPGroup) -> Self {
        let n = group.order();
        Self::from_table_unchecked(group, vec![0; n * n]).expect("zero table is well formed")
    }

    pub fn group(&self) -> &AbelianPGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn prime(&self) -> u64 {
        self.group.prime()
    }

    /// `n` with `|A| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.group.log_order()
    }

    pub fn star_table(&self) -> &[u32] {
        &self.star
    }

    #[inline]
    pub fn star(&self, a: u32, b: u32) -> u32 {
        self.star[a as usize * self.group.order() + b as usize]
    }

    #[inline]
    pub fn circ(&self, a: u32, b: u32) -> u32 {
        let g = &self.group;
        g.add(g.add(a, b), self.star(a, b))
    }

    #[inline]
    pub fn lambda(&self, a: u32, b: u32) -> u32 {
        self.group.add(self.star(a, b), b)
    }

    /// Right ∘-inverse of `a`, if the table has one.
    pub fn circ_inverse(&self, a: u32) -> Option<u32> {
        let x = self.circ_inv[a as usize];
        (x != u32::MAX).then_some(x)
    }

    /// Whether `p > n + 1`, the standing hypothesis of the pA and ann(p^i) results.
    pub fn p_exceeds_n_plus_1(&self) -> bool {
        self.prime() > self.log_order() as u64 + 1
    }

    pub fn require_p_gt_n_plus_1(&self) -> Result<()> {
        if self.p_exceeds_n_plus_1() {
            Ok(())
        } else {
            Err(Error::hypothesis(
                "p > n+1",
                format!("p = {}, n = {}", self.prime(), self.log_order()),
            ))
        }
    }

    pub fn nilpotency_chains(&self) -> NilpotencyReport {
        nilpotency_chains(&self.group, |a, b| self.star(a, b))
    }

    /// `a∘b - b∘a ∈ pA` for all `a, b`.
    pub fn is_powerful_brace(&self) -> bool {
        let g = &self.group;
        let pa = g.p_power_multiples(1);
        g.elements()
            .all(|a| g.elements().all(|b| pa.contains(g.sub(self.circ(a, b), self.circ(b, a)))))
    }

    /// Whether `(A, ∘)` is commutative.
    pub fn is_circ_commutative(&self) -> bool {
        let g = &self.group;
        g.elements()
            .all(|a| g.elements().all(|b| self.circ(a, b) == self.circ(b, a)))
    }
}
