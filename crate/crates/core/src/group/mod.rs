//! Finite p-groups as Cayley tables.

mod bounds;
mod lie;

pub use bounds::{
    bound_formulas, centralizer, fixed_points, is_closed, lambda_fixed_points,
    verify_bounds_on_instance, BoundCheck, BoundFormulas, BoundsContext, BoundsReport, FValue,
    HUpper,
};
pub use lie::{
    graded_lie_ring, lazard_lie, lie_subring_of_subgroup, GradedLieRing, LayerQuotient, LazardLie,
};

use serde::Serialize;

use crate::abelian::{table_cap, AbelianPGroup};
use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::numtheory::prime_power;
use crate::subgroup::{closure, Subgroup};
use crate::sweep::{all, first_pair, first_single, first_triple, Violation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    p: u64,
    log_order: u32,
    table: Vec<u32>,
    identity: u32,
    inv: Vec<u32>,
}

impl FiniteGroupTable {
    /// Validates shape, identity, inverses and associativity.
    pub fn new(table: Vec<u32>, identity: u32) -> Result<Self> {
        let g = Self::from_parts_checked_shape(None, table, identity)?;
        let xs = all(g.order());
        if let Some(v) = first_triple(&xs, &xs, &xs, |x, y, z| {
            (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))).then_some("(xy)z = x(yz)")
        }) {
            return Err(Error::Axiom {
                identity: v.identity,
                witness: v.witness,
            });
        }
        Ok(g)
    }

    /// Shape, identity and Latin-square checks only; for tables that come from
    /// an already verified structure.
    fn from_parts_checked_shape(p: Option<u64>, table: Vec<u32>, identity: u32) -> Result<Self> {
        let m2 = table.len();
        let m = (m2 as f64).sqrt().round() as usize;
        if m * m != m2 || m == 0 {
            return Err(Error::structural(format!("table of {m2} entries is not square")));
        }
        if m as u64 > table_cap() {
            return Err(Error::TableCap {
                order: m as u64,
                cap: table_cap(),
            });
        }
        let (p, log_order) = match (p, prime_power(m as u64)) {
            (_, Some((p, j))) => (p, j),
            (Some(p), None) if m == 1 => (p, 0),
            _ => return Err(Error::structural(format!("order {m} is not a prime power"))),
        };
        if identity as usize >= m {
            return Err(Error::structural("identity out of range"));
        }
        if let Some(pos) = table.iter().position(|&x| x as usize >= m) {
            return Err(Error::structural(format!("entry {} out of range at {pos}", table[pos])));
        }
        let mut g = Self {
            p,
            log_order,
            table,
            identity,
            inv: vec![u32::MAX; m],
        };
        let xs = all(m);
        if let Some(v) = first_single(&xs, |x| {
            (g.mul(identity, x) != x || g.mul(x, identity) != x).then_some("ex = x = xe")
        }) {
            return Err(Error::Axiom {
                identity: v.identity,
                witness: v.witness,
            });
        }
        let mut inv = vec![u32::MAX; m];
        for x in 0..m as u32 {
            let mut seen = vec![false; m];
            for y in 0..m as u32 {
                let z = g.mul(x, y);
                if seen[z as usize] {
                    return Err(Error::Axiom {
                        identity: "rows are permutations",
                        witness: vec![x],
                    });
                }
                seen[z as usize] = true;
                if z == identity {
                    inv[x as usize] = y;
                }
            }
        }
        g.inv = inv;
        Ok(g)
    }

    pub fn from_fn<F>(p: u64, order: usize, identity: u32, f: F) -> Result<Self>
    where
        F: Fn(u32, u32) -> u32 + Sync,
    {
        if order as u64 > table_cap() {
            return Err(Error::TableCap {
                order: order as u64,
                cap: table_cap(),
            });
        }
        let t = crate::sweep::build_table(order, f);
        let g = Self::from_parts_checked_shape(Some(p), t, identity)?;
        if g.p != p {
            return Err(Error::structural(format!("order {} is not a power of {p}", order)));
        }
        Ok(g)
    }

    /// `(A, +)` as a table group.
    pub fn from_abelian(a: &AbelianPGroup) -> Result<Self> {
        Self::from_fn(a.prime(), a.order(), 0, |x, y| a.add(x, y))
    }

    pub fn cyclic(p: u64, n: u32) -> Result<Self> {
        Self::from_abelian(&AbelianPGroup::cyclic(p, n)?)
    }

    pub fn elementary(p: u64, d: usize) -> Result<Self> {
        Self::from_abelian(&AbelianPGroup::elementary(p, d)?)
    }

    /// Upper unitriangular 3x3 matrices over `Z/p`; `(a,b,c)` is rank `a + pb + p²c`
    /// and `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn heisenberg(p: u64) -> Result<Self> {
        let dec = move |x: u32| {
            let x = x as u64;
            (x % p, x / p % p, x / (p * p))
        };
        Self::from_fn(p, (p * p * p) as usize, 0, move |x, y| {
            let (a, b, c) = dec(x);
            let (a2, b2, c2) = dec(y);
            let (a3, b3, c3) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
            (a3 + p * b3 + p * p * c3) as u32
        })
    }

    /// `⟨x, y | x^(p^m), y^(p^k), y x y⁻¹ = x^r⟩`; `x^a y^b` is rank `a + p^m b`.
    pub fn metacyclic(p: u64, m: u32, k: u32, r: u64) -> Result<Self> {
        let pm = p.pow(m);
        let pk = p.pow(k);
        if crate::numtheory::pow_mod(r, pk, pm) != 1 % pm || r.is_multiple_of(p) {
            return Err(Error::structural(format!(
                "x ↦ x^{r} is not an automorphism of order dividing {pk}"
            )));
        }
        let mut rpow = vec![1 % pm; pk as usize];
        for b in 1..pk as usize {
            rpow[b] = rpow[b - 1] * r % pm;
        }
        Self::from_fn(p, (pm * pk) as usize, 0, move |u, v| {
            let (a, b) = (u as u64 % pm, u as u64 / pm);
            let (c, d) = (v as u64 % pm, v as u64 / pm);
            let e = (a + c * rpow[b as usize]) % pm;
            let f = (b + d) % pk;
            (e + pm * f) as u32
        })
    }

    /// `(A, ∘)`, with identity 0.
    pub fn adjoint_group(b: &Brace) -> Result<Self> {
        Self::from_fn(b.prime(), b.order(), 0, |x, y| b.circ(x, y))
    }

    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `n` with `|G| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.inv.len() + y as usize]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        let (mut acc, mut base, mut k) = (self.identity, x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `(x, y) = x⁻¹y⁻¹xy`.
    #[inline]
    pub fn comm(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `e` with `p^e` the exponent of `G`.
    pub fn log_exponent(&self) -> u32 {
        let m = (0..self.order() as u32)
            .map(|x| self.element_order(x))
            .max()
            .unwrap_or(1);
        log_p(self.p, m as usize)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self.order())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::trivial(self.order(), self.identity)
    }

    pub fn closure(&self, gens: impl IntoIterator<Item = u32>) -> Subgroup {
        closure(self.order(), self.identity, gens, |x, y| self.mul(x, y))
    }

    /// Whether `h` is closed under products and inverses and contains the identity.
    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        h.ambient() == self.order()
            && h.contains(self.identity)
            && first_pair(h.members(), h.members(), |x, y| {
                (!h.contains(self.mul(x, self.inv(y)))).then_some("xy⁻¹ ∈ H")
            })
            .is_none()
    }

    /// `(H, K) = ⟨(h, k)⟩`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        self.closure(
            h.members()
                .iter()
                .flat_map(|&x| k.members().iter().map(move |&y| self.comm(x, y))),
        )
    }

    /// `H^k = ⟨h^k : h ∈ H⟩`.
    pub fn power_subgroup_of(&self, h: &Subgroup, k: u64) -> Subgroup {
        self.closure(h.members().iter().map(|&x| self.pow(x, k)))
    }

    /// `G^k = ⟨g^k⟩`.
    pub fn power_subgroup(&self, k: u64) -> Subgroup {
        self.power_subgroup_of(&self.whole(), k)
    }

    /// `G = G_1 ⊇ G_2 ⊇ ... ⊇ G_(c+1) = 1`.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut terms = vec![whole.clone()];
        while terms.last().unwrap().len() > 1 {
            let next = self.commutator_subgroup(terms.last().unwrap(), &whole);
            if next.len() == terms.last().unwrap().len() {
                break;
            }
            terms.push(next);
        }
        terms
    }

    /// `G ⊇ G' ⊇ G'' ⊇ ... ⊇ 1`.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut terms = vec![self.whole()];
        while terms.last().unwrap().len() > 1 {
            let last = terms.last().unwrap();
            let next = self.commutator_subgroup(last, last);
            if next.len() == last.len() {
                break;
            }
            terms.push(next);
        }
        terms
    }

    /// Nilpotency class `c` (0 for the trivial group).
    pub fn class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    pub fn derived_length(&self) -> usize {
        self.derived_series().len() - 1
    }

    pub fn is_abelian(&self) -> bool {
        let xs = all(self.order());
        first_pair(&xs, &xs, |x, y| (self.mul(x, y) != self.mul(y, x)).then_some("xy = yx")).is_none()
    }

    /// `G' ⊆ G^p` for odd `p`, `G' ⊆ G^4` for `p = 2`.
    pub fn is_powerful(&self) -> bool {
        let derived = self.commutator_subgroup(&self.whole(), &self.whole());
        let k = if self.p == 2 { 4 } else { self.p };
        derived.is_subset_of(&self.power_subgroup(k))
    }

    /// `d(G) = log_p |G : G^p G'|`.
    pub fn generator_rank(&self) -> u32 {
        let derived = self.commutator_subgroup(&self.whole(), &self.whole());
        let gp = self.power_subgroup(self.p);
        let frattini = self.closure(derived.members().iter().chain(gp.members()).copied());
        log_p(self.p, self.order() / frattini.len())
    }

    /// Powerful with `|G^(p^i) : G^(p^(i+1))| = p^d(G)` for `0 ≤ i < e`.
    pub fn is_uniform(&self) -> bool {
        if !self.is_powerful() {
            return false;
        }
        let d = self.generator_rank();
        let e = self.log_exponent();
        let sizes: Vec<usize> = (0..=e).map(|i| self.power_subgroup(self.p.pow(i)).len()).collect();
        (0..e as usize).all(|i| log_p(self.p, sizes[i] / sizes[i + 1]) == d)
    }

    /// `n`, `c`, `b = n - c`, and `n ≤ 2b+1` when `G` is powerful.
    pub fn coclass(&self) -> CoclassReport {
        let n = self.log_order as usize;
        let c = self.class();
        let b = n - c;
        let powerful = self.is_powerful();
        CoclassReport {
            n,
            c,
            b,
            powerful,
            bound_holds: powerful.then_some(n <= 2 * b + 1),
        }
    }

    /// First `x ∈ G^p, y ∈ G` with `(x,y) ∉ G^(p²)`, and the subgroup comparisons
    /// `(γ_k^(p^i), γ_l^(p^j))` against `γ_(k+l)^(p^(i+j))` for `1 ≤ k, l ≤ c`
    /// and `0 ≤ i, j ≤ e`. Refused unless `G` is powerful.
    pub fn powerful_commutator_checks(&self) -> Result<CommutatorReport> {
        if !self.is_powerful() {
            return Err(Error::hypothesis("G powerful", "G' is not contained in G^p"));
        }
        let p = self.p;
        let gp = self.power_subgroup(p);
        let gp2 = self.power_subgroup(p * p);
        let xs = all(self.order());
        let membership = first_pair(gp.members(), &xs, |x, y| {
            (!gp2.contains(self.comm(x, y))).then_some("(x,y) ∈ G^(p²) for x ∈ G^p")
        });

        let gamma = self.lower_central_series();
        let c = gamma.len() - 1;
        let e = self.log_exponent();
        let gamma_at = |k: usize| gamma.get(k - 1).cloned().unwrap_or_else(|| self.trivial());
        let mut power_cache = std::collections::HashMap::new();
        let mut powered = |k: usize, i: u32| -> Subgroup {
            power_cache
                .entry((k, i))
                .or_insert_with(|| self.power_subgroup_of(&gamma_at(k), p.pow(i)))
                .clone()
        };
        let mut identities = Vec::new();
        for k in 1..=c.max(1) {
            for l in 1..=c.max(1) {
                for i in 0..=e {
                    for j in 0..=e {
                        let lhs = self.commutator_subgroup(&powered(k, i), &powered(l, j));
                        let rhs = powered(k + l, i + j);
                        identities.push(GammaIdentity {
                            k,
                            l,
                            i,
                            j,
                            lhs: lhs.len(),
                            rhs: rhs.len(),
                            included: lhs.is_subset_of(&rhs),
                            equal: lhs == rhs,
                        });
                    }
                }
            }
        }
        Ok(CommutatorReport {
            membership,
            identities,
        })
    }
}

pub(crate) fn log_p(p: u64, mut m: usize) -> u32 {
    let mut k = 0;
    while m > 1 {
        m /= p as usize;
        k += 1;
    }
    k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoclassReport {
    pub n: usize,
    pub c: usize,
    pub b: usize,
    pub powerful: bool,
    /// `n ≤ 2b+1`, asserted only for powerful groups.
    pub bound_holds: Option<bool>,
}

/// `(γ_k^(p^i), γ_l^(p^j))` against `γ_(k+l)^(p^(i+j))`, by order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaIdentity {
    pub k: usize,
    pub l: usize,
    pub i: u32,
    pub j: u32,
    pub lhs: usize,
    pub rhs: usize,
    pub included: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub membership: Option<Violation>,
    pub identities: Vec<GammaIdentity>,
}

impl CommutatorReport {
    pub fn all_included(&self) -> bool {
        self.identities.iter().all(|g| g.included)
    }

    pub fn all_equal(&self) -> bool {
        self.identities.iter().all(|g| g.equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::{construct, BraceKind};

    #[test]
    fn classic_groups() {
        let h = FiniteGroupTable::heisenberg(5).unwrap();
        assert_eq!(h.order(), 125);
        assert_eq!(h.class(), 2);
        assert_eq!(h.derived_length(), 2);
        assert!(!h.is_powerful());
        assert_eq!(h.power_subgroup(5).len(), 1);
        assert_eq!(h.generator_rank(), 2);
        assert!(h.powerful_commutator_checks().is_err());
        assert_eq!(h.coclass().bound_holds, None);

        let z = FiniteGroupTable::cyclic(5, 3).unwrap();
        assert_eq!(z.class(), 1);
        assert_eq!(z.derived_length(), 1);
        assert_eq!(z.power_subgroup(5).len(), 25);
        assert_eq!(z.power_subgroup(1).len(), 125);
        assert!(z.is_powerful() && z.is_uniform());
        let cc = z.coclass();
        assert_eq!((cc.n, cc.c, cc.b, cc.bound_holds), (3, 1, 2, Some(true)));

        let e = FiniteGroupTable::elementary(5, 2).unwrap();
        let cc = e.coclass();
        assert_eq!((cc.n, cc.b, cc.bound_holds), (2, 1, Some(true)));
        assert!(e.powerful_commutator_checks().unwrap().membership.is_none());
    }

    #[test]
    fn metacyclic_powerful() {
        let g = FiniteGroupTable::metacyclic(5, 2, 1, 6).unwrap();
        assert_eq!(g.order(), 125);
        assert!(!g.is_abelian());
        assert!(g.is_powerful());
        assert_eq!(g.class(), 2);
        assert!(!g.is_uniform());
        let r = g.powerful_commutator_checks().unwrap();
        assert!(r.membership.is_none());
        assert!(r.all_included());
        assert!(FiniteGroupTable::metacyclic(5, 2, 1, 2).is_err());
    }

    #[test]
    fn adjoint_groups() {
        let b = construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap();
        let g = FiniteGroupTable::adjoint_group(&b).unwrap();
        assert_eq!(g.class(), 2);
        assert!(!g.is_powerful());
        let t = construct(&BraceKind::RadicalTwisted { p: 5 }).unwrap();
        let g = FiniteGroupTable::adjoint_group(&t).unwrap();
        assert!(g.is_powerful() && !g.is_abelian());
    }

    #[test]
    fn validation() {
        assert!(FiniteGroupTable::new(vec![0, 1, 1, 0], 0).is_ok());
        assert!(FiniteGroupTable::new(vec![0, 1, 1, 1], 0).is_err());
        assert!(FiniteGroupTable::new(vec![0, 1, 2], 0).is_err());
        // Z/6 is not a p-group
        let t: Vec<u32> = (0..36).map(|k| ((k / 6 + k % 6) % 6) as u32).collect();
        assert!(FiniteGroupTable::new(t, 0).is_err());
    }
}
