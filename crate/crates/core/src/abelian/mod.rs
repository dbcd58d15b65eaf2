//! Finite abelian p-groups `Z/p^e1 ⊕ ... ⊕ Z/p^ed` with canonical mixed-radix ranks.
//!
//! Elements are passed around as ranks (`u32`). The rank of `(c1, ..., cd)` is
//! `c1 * m2*...*md + c2 * m3*...*md + ... + cd`, where `mi = p^ei`, so the
//! first (largest) coordinate is the most significant digit.

mod present;
mod quotient;

pub use present::{present_abelian, Presentation};
pub use quotient::Quotient;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{ipow, is_prime, reduce_signed};
use crate::subgroup::{closure, Subgroup};

/// Default upper bound on the number of elements of any table-backed structure.
pub const DEFAULT_TABLE_CAP: u64 = 5000;

/// Reads `BRACEFORGE_TABLE_CAP`, falling back to [`DEFAULT_TABLE_CAP`].
pub fn table_cap() -> u64 {
    std::env::var("BRACEFORGE_TABLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TABLE_CAP)
}

/// Element with explicit coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub coords: Vec<u64>,
    pub rank: u32,
}

/// JSON fragment `{"prime": p, "exponents": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub prime: u64,
    pub exponents: Vec<u32>,
}

/// Groups with more than one coordinate and at most this many elements keep
/// an addition table.
const ADD_TABLE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct AbelianPGroup {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u64>,
    places: Vec<u64>,
    order: usize,
    tables: Option<Arc<AddTables>>,
}

struct AddTables {
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl PartialEq for AbelianPGroup {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.exponents == other.exponents
    }
}

impl Eq for AbelianPGroup {}

impl std::fmt::Debug for AbelianPGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AbelianPGroup")
            .field("p", &self.p)
            .field("exponents", &self.exponents)
            .finish()
    }
}

impl AbelianPGroup {
    /// Builds `⊕ Z/p^ei`. Exponents must be positive and nonincreasing; an empty
    /// list gives the one-element group.
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        Self::with_cap(p, exponents, table_cap())
    }

    pub fn with_cap(p: u64, exponents: Vec<u32>, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::hypothesis("p prime", format!("{p} is not prime")));
        }
        if exponents.contains(&0) {
            return Err(Error::structural("exponents must be positive"));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::structural(format!(
                "exponents {exponents:?} are not nonincreasing"
            )));
        }
        let mut order: u64 = 1;
        for &e in &exponents {
            let m = p
                .checked_pow(e)
                .ok_or(Error::TableCap { order: u64::MAX, cap })?;
            order = order
                .checked_mul(m)
                .ok_or(Error::TableCap { order: u64::MAX, cap })?;
            if order > cap {
                return Err(Error::TableCap { order, cap });
            }
        }
        let moduli: Vec<u64> = exponents.iter().map(|&e| ipow(p, e)).collect();
        let mut places = vec![1u64; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            places[i] = places[i + 1] * moduli[i + 1];
        }
        let mut g = Self {
            p,
            exponents,
            moduli,
            places,
            order: order as usize,
            tables: None,
        };
        if g.moduli.len() > 1 && g.order <= ADD_TABLE_LIMIT {
            let n = g.order as u32;
            let add = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.add_digits(a, b)).collect();
            let neg = (0..n).map(|a| g.neg_digits(a)).collect();
            g.tables = Some(Arc::new(AddTables { add, neg }));
        }
        Ok(g)
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self> {
        Self::new(spec.prime, spec.exponents.clone())
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec {
            prime: self.p,
            exponents: self.exponents.clone(),
        }
    }

    pub fn cyclic(p: u64, e: u32) -> Result<Self> {
        Self::new(p, vec![e])
    }

    /// `(Z/p)^d`.
    pub fn elementary(p: u64, d: usize) -> Result<Self> {
        Self::new(p, vec![1; d])
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `n` with `|A| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank_count(&self) -> usize {
        self.exponents.len()
    }

    /// `p^e1`, the exponent of the group (1 for the trivial group).
    pub fn exponent_modulus(&self) -> u64 {
        self.moduli.first().copied().unwrap_or(1)
    }

    pub fn is_elementary(&self) -> bool {
        self.exponents.iter().all(|&e| e == 1)
    }

    pub fn coords(&self, a: u32) -> Vec<u64> {
        let a = a as u64;
        self.places
            .iter()
            .zip(&self.moduli)
            .map(|(&pl, &m)| a / pl % m)
            .collect()
    }

    /// Rank of a coordinate vector, reducing each coordinate modulo its cyclic factor.
    pub fn rank_of(&self, coords: &[u64]) -> u32 {
        debug_assert_eq!(coords.len(), self.moduli.len());
        coords
            .iter()
            .zip(&self.moduli)
            .zip(&self.places)
            .map(|((&c, &m), &pl)| (c % m) * pl)
            .sum::<u64>() as u32
    }

    pub fn element(&self, a: u32) -> Element {
        Element {
            coords: self.coords(a),
            rank: a,
        }
    }

    /// Validates explicit coordinates.
    pub fn element_from_coords(&self, coords: &[u64]) -> Result<Element> {
        if coords.len() != self.moduli.len() {
            return Err(Error::structural(format!(
                "expected {} coordinates, got {}",
                self.moduli.len(),
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().zip(&self.moduli).position(|(&c, &m)| c >= m) {
            return Err(Error::structural(format!(
                "coordinate {i} = {} out of range",
                coords[i]
            )));
        }
        Ok(Element {
            coords: coords.to_vec(),
            rank: self.rank_of(coords),
        })
    }

    /// Adds two explicit elements, checking that they belong to this group.
    pub fn add_elements(&self, a: &Element, b: &Element) -> Result<Element> {
        let a = self.element_from_coords(&a.coords)?;
        let b = self.element_from_coords(&b.coords)?;
        Ok(self.element(self.add(a.rank, b.rank)))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.moduli.len() == 1 {
            let s = a as u64 + b as u64;
            let m = self.moduli[0];
            return if s >= m { (s - m) as u32 } else { s as u32 };
        }
        if let Some(t) = &self.tables {
            return t.add[a as usize * self.order + b as usize];
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut x, mut y) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&m, &pl) in self.moduli.iter().zip(&self.places).rev() {
            out += ((x % m + y % m) % m) * pl;
            x /= m;
            y /= m;
        }
        out as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.moduli.len() == 1 {
            return if a == 0 { 0 } else { (self.moduli[0] - a as u64) as u32 };
        }
        if let Some(t) = &self.tables {
            return t.neg[a as usize];
        }
        self.neg_digits(a)
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let mut x = a as u64;
        let mut out = 0u64;
        for (&m, &pl) in self.moduli.iter().zip(&self.places).rev() {
            out += ((m - x % m) % m) * pl;
            x /= m;
        }
        out as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `k·a` for a nonnegative residue `k`.
    #[inline]
    pub fn mul_u(&self, k: u64, a: u32) -> u32 {
        if self.moduli.len() == 1 {
            let m = self.moduli[0];
            return ((k % m) as u128 * a as u128 % m as u128) as u32;
        }
        let mut x = a as u64;
        let mut out = 0u64;
        for (&m, &pl) in self.moduli.iter().zip(&self.places).rev() {
            out += (((k % m) as u128 * (x % m) as u128) % m as u128) as u64 * pl;
            x /= m;
        }
        out as u32
    }

    /// `k·a` for any integer `k`.
    pub fn scalar_mul(&self, k: i128, a: u32) -> u32 {
        self.mul_u(reduce_signed(k, self.exponent_modulus()), a)
    }

    pub fn sum(&self, items: impl IntoIterator<Item = u32>) -> u32 {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// Least `p^j` with `p^j·a = 0`.
    pub fn additive_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut ord = 1u64;
        while x != 0 {
            x = self.mul_u(self.p, x);
            ord *= self.p;
        }
        ord
    }

    pub fn subgroup_closure(&self, gens: impl IntoIterator<Item = u32>) -> Subgroup {
        closure(self.order, 0, gens, |a, b| self.add(a, b))
    }

    /// `k·A`.
    pub fn multiples(&self, k: u64) -> Subgroup {
        Subgroup::from_members(self.order, self.elements().map(|a| self.mul_u(k, a)))
    }

    /// `p^i·A`.
    pub fn p_power_multiples(&self, i: u32) -> Subgroup {
        self.multiples(self.p_pow_residue(i))
    }

    /// `{a : p^i·a = 0}`.
    pub fn annihilator(&self, i: u32) -> Subgroup {
        let k = self.p_pow_residue(i);
        Subgroup::from_mask(self.elements().map(|a| self.mul_u(k, a) == 0).collect())
    }

    /// `p^i` reduced modulo the group exponent.
    pub fn p_pow_residue(&self, i: u32) -> u64 {
        let m = self.exponent_modulus();
        let mut k = 1u64 % m;
        for _ in 0..i {
            k = k * self.p % m;
        }
        k
    }

    /// Canonical division by `p`: each coordinate `ci ∈ p·Z/p^ei` maps to `ci/p`
    /// in `[0, p^(ei-1))`. Returns `None` when `a ∉ pA`.
    pub fn divide_by_p(&self, a: u32) -> Option<u32> {
        let c = self.coords(a);
        if c.iter().any(|&x| x % self.p != 0) {
            return None;
        }
        Some(self.rank_of(&c.iter().map(|&x| x / self.p).collect::<Vec<_>>()))
    }

    /// The group `p^i·A ≅ ⊕ Z/p^(ej - i)` together with its embedding into `A`.
    pub fn scaled_view(&self, i: u32) -> Result<ScaledView> {
        let small_exps: Vec<u32> = self
            .exponents
            .iter()
            .filter(|&&e| e > i)
            .map(|&e| e - i)
            .collect();
        let small = AbelianPGroup::new(self.p, small_exps)?;
        let pi = self.p_pow_residue(i);
        let keep: Vec<usize> = (0..self.exponents.len())
            .filter(|&j| self.exponents[j] > i)
            .collect();
        let embed: Vec<u32> = small
            .elements()
            .map(|x| {
                let sc = small.coords(x);
                let mut big = vec![0u64; self.exponents.len()];
                for (k, &j) in keep.iter().enumerate() {
                    big[j] = sc[k] * pi % self.moduli[j];
                }
                self.rank_of(&big)
            })
            .collect();
        let mut restrict = vec![u32::MAX; self.order];
        for (x, &a) in embed.iter().enumerate() {
            restrict[a as usize] = x as u32;
        }
        Ok(ScaledView {
            group: small,
            embed,
            restrict,
        })
    }

    /// `self ⊕ other` with exponents re-sorted; returns the sum and the
    /// coordinate placement of each summand.
    pub fn direct_sum(&self, other: &AbelianPGroup) -> Result<DirectSum> {
        if self.p != other.p {
            return Err(Error::structural("direct sum of groups with different primes"));
        }
        let all: Vec<u32> = self
            .exponents
            .iter()
            .chain(&other.exponents)
            .copied()
            .collect();
        let mut idx: Vec<usize> = (0..all.len()).collect();
        idx.sort_by(|&a, &b| all[b].cmp(&all[a]));
        let mut position = vec![0usize; all.len()];
        for (slot, &src) in idx.iter().enumerate() {
            position[src] = slot;
        }
        let group = AbelianPGroup::new(self.p, idx.iter().map(|&i| all[i]).collect())?;
        Ok(DirectSum {
            group,
            left: self.clone(),
            right: other.clone(),
            position,
        })
    }
}

/// `p^i·A` presented as an abstract group.
#[derive(Debug, Clone)]
pub struct ScaledView {
    pub group: AbelianPGroup,
    /// Small rank → rank in `A`.
    pub embed: Vec<u32>,
    /// Rank in `A` → small rank, `u32::MAX` outside the image.
    pub restrict: Vec<u32>,
}

impl ScaledView {
    pub fn embed(&self, x: u32) -> u32 {
        self.embed[x as usize]
    }

    pub fn restrict(&self, a: u32) -> Option<u32> {
        let r = self.restrict[a as usize];
        (r != u32::MAX).then_some(r)
    }
}

#[derive(Debug, Clone)]
pub struct DirectSum {
    pub group: AbelianPGroup,
    left: AbelianPGroup,
    right: AbelianPGroup,
    position: Vec<usize>,
}

impl DirectSum {
    /// Rank of `(a, b)` in the sum.
    pub fn pair(&self, a: u32, b: u32) -> u32 {
        let mut c = vec![0u64; self.position.len()];
        for (i, x) in self
            .left
            .coords(a)
            .into_iter()
            .chain(self.right.coords(b))
            .enumerate()
        {
            c[self.position[i]] = x;
        }
        self.group.rank_of(&c)
    }

    /// Inverse of [`DirectSum::pair`].
    pub fn split(&self, s: u32) -> (u32, u32) {
        let c = self.group.coords(s);
        let k = self.left.rank_count();
        let left: Vec<u64> = (0..k).map(|i| c[self.position[i]]).collect();
        let right: Vec<u64> = (k..self.position.len()).map(|i| c[self.position[i]]).collect();
        (self.left.rank_of(&left), self.right.rank_of(&right))
    }
}
