//! Finite pre-Lie rings and Lie rings stored as product tables.

use crate::abelian::AbelianPGroup;
use crate::brace::Brace;
use crate::chains::{nilpotency_chains, NilpotencyReport};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::sweep::{all, build_table, first_pair, first_single, first_triple, AxiomReport, Violation};

pub const LEFT_ADDITIVE: &str = "(a+b)·c = a·c + b·c";
pub const RIGHT_ADDITIVE: &str = "a·(b+c) = a·b + a·c";
pub const PRE_LIE: &str = "(x·y)·z - x·(y·z) = (y·x)·z - y·(x·z)";
pub const ANTISYMMETRY: &str = "[a,a] = 0";
pub const JACOBI: &str = "[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0";

fn check_table(group: &AbelianPGroup, table: &[u32], what: &str) -> Result<()> {
    let n = group.order();
    if table.len() != n * n {
        return Err(Error::structural(format!(
            "{what} table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    if let Some(pos) = table.iter().position(|&x| x as usize >= n) {
        return Err(Error::structural(format!(
            "{what} entry at row {}, column {} is {} (order {n})",
            pos / n,
            pos % n,
            table[pos]
        )));
    }
    Ok(())
}

/// A named identity check, run lazily.
type Step<'a> = (&'static str, Box<dyn Fn() -> Option<Violation> + 'a>);

fn run_checks(steps: Vec<Step<'_>>) -> AxiomReport {
    let mut checked = Vec::new();
    for (name, run) in steps {
        checked.push(name);
        if let Some(v) = run() {
            return AxiomReport {
                checked,
                failure: Some(v),
            };
        }
    }
    AxiomReport {
        checked,
        failure: None,
    }
}

fn bi_additivity<'a>(
    g: &'a AbelianPGroup,
    prod: impl Fn(u32, u32) -> u32 + Sync + Copy + 'a,
    xs: &'a [u32],
) -> Vec<Step<'a>> {
    vec![
        (
            LEFT_ADDITIVE,
            Box::new(move || {
                first_triple(xs, xs, xs, |a, b, c| {
                    (prod(g.add(a, b), c) != g.add(prod(a, c), prod(b, c))).then_some(LEFT_ADDITIVE)
                })
            }),
        ),
        (
            RIGHT_ADDITIVE,
            Box::new(move || {
                first_triple(xs, xs, xs, |a, b, c| {
                    (prod(a, g.add(b, c)) != g.add(prod(a, b), prod(a, c))).then_some(RIGHT_ADDITIVE)
                })
            }),
        ),
    ]
}

/// A finite pre-Lie ring `(A, +, ·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLieRing {
    group: AbelianPGroup,
    dot: Vec<u32>,
}

impl PreLieRing {
    /// Shape and range checks only.
    pub fn from_table_unchecked(group: AbelianPGroup, dot: Vec<u32>) -> Result<Self> {
        check_table(&group, &dot, "dot")?;
        Ok(Self { group, dot })
    }

    /// Shape checks plus bi-additivity and the pre-Lie identity.
    pub fn new(group: AbelianPGroup, dot: Vec<u32>) -> Result<Self> {
        let p = Self::from_table_unchecked(group, dot)?;
        verify_prelie_axioms(&p).into_result()?;
        Ok(p)
    }

    pub fn from_fn<F>(group: AbelianPGroup, f: F) -> Result<Self>
    where
        F: Fn(u32, u32) -> u32 + Sync,
    {
        let t = build_table(group.order(), f);
        Self::new(group, t)
    }

    pub fn zero(group: AbelianPGroup) -> Self {
        let n = group.order();
        Self {
            group,
            dot: vec![0; n * n],
        }
    }

    /// Bilinear extension of `e_i·e_j = consts[i][j]` (coordinates) over the
    /// cyclic generators of `group`.
    pub fn from_structure_constants(group: AbelianPGroup, consts: &[Vec<Vec<u64>>]) -> Result<Self> {
        let d = group.rank_count();
        if consts.len() != d || consts.iter().any(|row| row.len() != d) {
            return Err(Error::structural(format!("structure constants must be {d} x {d}")));
        }
        let basis: Vec<Vec<u32>> = consts
            .iter()
            .map(|row| row.iter().map(|c| group.rank_of(c)).collect())
            .collect();
        let g = group.clone();
        Self::from_fn(group, move |a, b| {
            let (ca, cb) = (g.coords(a), g.coords(b));
            let mut acc = 0;
            for i in 0..d {
                for j in 0..d {
                    acc = g.add(acc, g.mul_u(ca[i] * cb[j], basis[i][j]));
                }
            }
            acc
        })
    }

    /// `pZ/p^(n+1)` under ordinary multiplication, presented on `Z/p^n` as
    /// `a·b = p·a·b`. Associative, hence pre-Lie.
    pub fn radical_cyclic(p: u64, n: u32) -> Result<Self> {
        Self::from_structure_constants(AbelianPGroup::cyclic(p, n)?, &[vec![vec![p]]])
    }

    /// The `*` of a brace coming from a radical ring, taken as a ring product.
    pub fn from_radical_brace(b: &Brace) -> Result<Self> {
        Self::new(b.group().clone(), b.star_table().to_vec())
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

    pub fn dot_table(&self) -> &[u32] {
        &self.dot
    }

    #[inline]
    pub fn dot(&self, a: u32, b: u32) -> u32 {
        self.dot[a as usize * self.group.order() + b as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.dot.iter().all(|&x| x == 0)
    }

    pub fn is_associative(&self) -> bool {
        let xs = all(self.order());
        first_triple(&xs, &xs, &xs, |a, b, c| {
            (self.dot(self.dot(a, b), c) != self.dot(a, self.dot(b, c))).then_some("associativity")
        })
        .is_none()
    }
}

/// Checks bi-additivity, then the pre-Lie identity; stops at the first failure.
pub fn verify_prelie_axioms(p: &PreLieRing) -> AxiomReport {
    let g = p.group();
    let xs = all(p.order());
    let prod = |a, b| p.dot(a, b);
    let mut steps = bi_additivity(g, prod, &xs);
    steps.push((
        PRE_LIE,
        Box::new(|| {
            first_triple(&xs, &xs, &xs, |x, y, z| {
                (associator(p, x, y, z) != associator(p, y, x, z)).then_some(PRE_LIE)
            })
        }),
    ));
    run_checks(steps)
}

/// `(x·y)·z - x·(y·z)`.
pub fn associator(p: &PreLieRing, x: u32, y: u32, z: u32) -> u32 {
    p.group()
        .sub(p.dot(p.dot(x, y), z), p.dot(x, p.dot(y, z)))
}

/// A finite Lie ring `(L, +, [·,·])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRing {
    group: AbelianPGroup,
    bracket: Vec<u32>,
}

impl LieRing {
    pub fn from_table_unchecked(group: AbelianPGroup, bracket: Vec<u32>) -> Result<Self> {
        check_table(&group, &bracket, "bracket")?;
        Ok(Self { group, bracket })
    }

    /// Shape checks plus bi-additivity, antisymmetry and Jacobi.
    pub fn new(group: AbelianPGroup, bracket: Vec<u32>) -> Result<Self> {
        let l = Self::from_table_unchecked(group, bracket)?;
        verify_lie_axioms(&l).into_result()?;
        Ok(l)
    }

    pub fn group(&self) -> &AbelianPGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn bracket_table(&self) -> &[u32] {
        &self.bracket
    }

    #[inline]
    pub fn bracket(&self, a: u32, b: u32) -> u32 {
        self.bracket[a as usize * self.group.order() + b as usize]
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(|&x| x == 0)
    }

    /// `L^2 ⊆ pL`, or `L^2 ⊆ 4L` when `p = 2`.
    pub fn is_powerful(&self) -> bool {
        let target = powerful_target(&self.group);
        self.bracket.iter().all(|&x| target.contains(x))
    }

    /// `L^1 = L`, `L^(i+1) = [L^i, L]` until zero or stable.
    pub fn power_chain(&self) -> Vec<Subgroup> {
        nilpotency_chains(&self.group, |a, b| self.bracket(a, b)).right.terms
    }

    /// When powerful, checks `L^(i+1) ⊆ p^i L` along the whole chain and
    /// returns the first `i` where it fails. `Ok(None)` means certified.
    pub fn power_chain_violation(&self) -> Result<Option<usize>> {
        if !self.is_powerful() {
            return Err(Error::hypothesis("L powerful", "L^2 is not contained in pL"));
        }
        let chain = self.power_chain();
        Ok((1..chain.len()).find(|&i| {
            !chain[i].is_subset_of(&self.group.p_power_multiples(i as u32))
        }))
    }
}

fn powerful_target(g: &AbelianPGroup) -> Subgroup {
    if g.prime() == 2 {
        g.p_power_multiples(2)
    } else {
        g.p_power_multiples(1)
    }
}

/// Bi-additivity, antisymmetry and Jacobi, stopping at the first failure.
pub fn verify_lie_axioms(l: &LieRing) -> AxiomReport {
    let g = l.group();
    let xs = all(l.order());
    let br = |a, b| l.bracket(a, b);
    let mut steps = bi_additivity(g, br, &xs);
    steps.push((
        ANTISYMMETRY,
        Box::new(|| first_single(&xs, |a| (l.bracket(a, a) != 0).then_some(ANTISYMMETRY))),
    ));
    steps.push((
        JACOBI,
        Box::new(|| {
            first_triple(&xs, &xs, &xs, |a, b, c| {
                let s = g.sum([
                    l.bracket(a, l.bracket(b, c)),
                    l.bracket(b, l.bracket(c, a)),
                    l.bracket(c, l.bracket(a, b)),
                ]);
                (s != 0).then_some(JACOBI)
            })
        }),
    ));
    run_checks(steps)
}

/// `[a,b] = a·b - b·a`, with Jacobi verified.
pub fn associated_lie(p: &PreLieRing) -> Result<LieRing> {
    let g = p.group();
    let table = build_table(p.order(), |a, b| g.sub(p.dot(a, b), p.dot(b, a)));
    let l = LieRing::from_table_unchecked(g.clone(), table)?;
    let report = verify_lie_axioms(&l);
    if let Some(v) = report.failure {
        return Err(Error::Internal(format!(
            "associated bracket fails {} at {:?}; the product is not pre-Lie",
            v.identity, v.witness
        )));
    }
    Ok(l)
}

/// Whether every `a·b - b·a` lies in `pA` (`4A` when `p = 2`).
pub fn is_powerful_prelie(p: &PreLieRing) -> bool {
    let g = p.group();
    let target = powerful_target(g);
    let xs = all(p.order());
    first_pair(&xs, &xs, |a, b| {
        (!target.contains(g.sub(p.dot(a, b), p.dot(b, a)))).then_some("a·b - b·a ∈ pA")
    })
    .is_none()
}

pub fn prelie_nilpotency(p: &PreLieRing) -> NilpotencyReport {
    nilpotency_chains(p.group(), |a, b| p.dot(a, b))
}

/// `a ·₁ b = c·(a·b)`.
pub fn scale_product(p: &PreLieRing, c: i128) -> Result<PreLieRing> {
    let g = p.group();
    let table = p.dot.iter().map(|&x| g.scalar_mul(c, x)).collect();
    // every axiom is homogeneous, so scaling preserves them
    PreLieRing::from_table_unchecked(g.clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{construct, BraceKind};

    fn z25_radical() -> PreLieRing {
        PreLieRing::radical_cyclic(5, 2).unwrap()
    }

    /// `e1·e1 = e2, e1·e2 = 2e3, e2·e1 = e3` on `(Z/5)^3`; pre-Lie, not associative.
    fn twisted() -> PreLieRing {
        let g = AbelianPGroup::elementary(5, 3).unwrap();
        let z = vec![0, 0, 0];
        let consts = vec![
            vec![vec![0, 1, 0], vec![0, 0, 2], z.clone()],
            vec![vec![0, 0, 1], z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone()],
        ];
        PreLieRing::from_structure_constants(g, &consts).unwrap()
    }

    #[test]
    fn radical_cyclic_is_pz() {
        let p = z25_radical();
        // 5·5 = 25 in 5Z/125 corresponds to 1·1 = 5 here
        assert_eq!(p.dot(1, 1), 5);
        assert_eq!(p.dot(1, 5), 0);
        assert!(p.is_associative());
    }

    #[test]
    fn zero_and_broken() {
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        assert!(verify_prelie_axioms(&PreLieRing::zero(g.clone())).passed());
        let gg = g.clone();
        let broken = PreLieRing::from_table_unchecked(g.clone(), build_table(25, |a, b| gg.add(a, b))).unwrap();
        let v = verify_prelie_axioms(&broken).failure.unwrap();
        assert_eq!(v.identity, LEFT_ADDITIVE);
        let (a, b, c) = (v.witness[0], v.witness[1], v.witness[2]);
        assert_ne!(broken.dot(g.add(a, b), c), g.add(broken.dot(a, c), broken.dot(b, c)));
    }

    #[test]
    fn nonassociative_example() {
        let p = twisted();
        assert!(!p.is_associative());
        let n = prelie_nilpotency(&p);
        assert_eq!(n.strong_index(), Some(4));
        assert_eq!(n.strong.sizes(), vec![125, 25, 5, 1]);
        let l = associated_lie(&p).unwrap();
        assert!(!l.is_abelian());
        assert!(!l.is_powerful());
        assert!(!is_powerful_prelie(&p));
    }

    #[test]
    fn associated_lie_examples() {
        assert!(associated_lie(&z25_radical()).unwrap().is_abelian());
        let b = construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap();
        let p = PreLieRing::from_radical_brace(&b).unwrap();
        let l = associated_lie(&p).unwrap();
        // Heisenberg Lie ring: the bracket image spans a group of order p
        let image = l.group().subgroup_closure(l.bracket_table().iter().copied());
        assert_eq!(image.len(), 5);
        assert!(l.power_chain_violation().is_err());
    }

    #[test]
    fn nilpotency_examples() {
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        let z = prelie_nilpotency(&PreLieRing::zero(g.clone()));
        assert_eq!(
            (z.left_index(), z.right_index(), z.strong_index()),
            (Some(2), Some(2), Some(2))
        );
        assert_eq!(prelie_nilpotency(&z25_radical()).strong_index(), Some(3));

        // a·b = ab on the field Z/5 is idempotent-like
        let f = PreLieRing::from_fn(AbelianPGroup::cyclic(5, 1).unwrap(), |a, b| a * b % 5).unwrap();
        let n = prelie_nilpotency(&f);
        assert!(n.left_index().is_none() && n.strong_index().is_none());
    }

    #[test]
    fn scaling() {
        let p = z25_radical();
        assert_eq!(scale_product(&p, 1).unwrap(), p);
        assert!(scale_product(&p, 0).unwrap().is_zero());
        let s = scale_product(&p, -156).unwrap();
        for a in 0..25 {
            for b in 0..25 {
                assert_eq!(s.dot(a, b) as i64, (-156 * p.dot(a, b) as i64).rem_euclid(25));
            }
        }
    }

    #[test]
    fn powerful_lie_chain() {
        // radical cyclic on Z/p^3 from a noncommutative source is needed for a
        // nonzero powerful bracket; the twisted brace gives one
        let b = construct(&BraceKind::RadicalTwisted { p: 5 }).unwrap();
        let p = PreLieRing::from_radical_brace(&b).unwrap();
        assert!(is_powerful_prelie(&p));
        let l = associated_lie(&p).unwrap();
        assert!(l.is_powerful() && !l.is_abelian());
        assert_eq!(l.power_chain_violation().unwrap(), None);
    }
}
