use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::brace::{circ_power, Brace};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::sweep::{all, first_pair, first_single};

use super::{log_p, FiniteGroupTable};

/// Largest exponent bit-size for which `h_upper` is expanded into a rational.
const MAX_EXPANDED_BITS: u64 = 1 << 20;

/// `f(p^k, p^m) = 2mp^k·max{2^(p^k-1) + log2(k+1), log2(m+1)} + mp^k + log2(mp^k)`,
/// stored exactly as `integer + log2(log_argument)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FValue {
    #[serde(serialize_with = "crate::json::big_as_string")]
    pub integer: BigUint,
    #[serde(serialize_with = "crate::json::big_as_string")]
    pub log_argument: BigUint,
    /// Floating value; infinite once the integer part leaves `f64` range.
    pub value: f64,
    #[serde(serialize_with = "crate::json::big_as_string")]
    pub ceiling: BigUint,
}

/// `(p-1)^(2^(p-1)-1) / (p-2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HUpper {
    pub base: u64,
    pub exponent: u64,
    pub denominator: u64,
}

impl HUpper {
    /// The exact rational, when its numerator has at most about a million bits.
    pub fn value(&self) -> Option<BigRational> {
        let bits = self.exponent.checked_mul(64 - self.base.leading_zeros() as u64)?;
        if bits > MAX_EXPANDED_BITS {
            return None;
        }
        let num = BigUint::from(self.base).pow(self.exponent as u32);
        Some(BigRational::new(num.into(), BigUint::from(self.denominator).into()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundFormulas {
    pub p: u64,
    pub k: u32,
    pub m: u32,
    pub f: FValue,
    pub h_upper: Option<HUpper>,
    #[serde(serialize_with = "crate::json::big_as_string")]
    pub d_bound: BigUint,
}

fn log2_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap().log2() + shift as f64
}

/// `⌈log2 n⌉` for `n ≥ 1`.
fn ceil_log2(n: &BigUint) -> u64 {
    (n - BigUint::one()).bits()
}

fn f_value(p: u64, k: u32, m: u32) -> Result<FValue> {
    if m == 0 {
        return Err(Error::hypothesis("m >= 1", "log2(m p^k) is undefined for m = 0"));
    }
    let pk = BigUint::from(p).pow(k);
    let big_m = &pk * m;
    let pk_minus_1 = (&pk - 1u32)
        .to_u64()
        .ok_or_else(|| Error::Contract("p^k too large".into()))?;
    // first branch wins iff (k+1)·2^(2^(p^k-1)) ≥ m+1
    let first_wins = pk_minus_1 >= 7 || {
        let lhs = BigUint::from(k + 1) << (1u64 << pk_minus_1);
        lhs >= BigUint::from(m + 1)
    };
    let two_m = (&big_m * 2u32)
        .to_u32()
        .ok_or_else(|| Error::Contract("m p^k too large".into()))?;
    let (integer, log_argument) = if first_wins {
        let i = (&big_m << (pk_minus_1 + 1)) + &big_m;
        (i, BigUint::from(k + 1).pow(two_m) * &big_m)
    } else {
        (big_m.clone(), BigUint::from(m + 1).pow(two_m) * &big_m)
    };
    let value = integer.to_f64().unwrap_or(f64::INFINITY) + log2_big(&log_argument);
    let ceiling = &integer + ceil_log2(&log_argument);
    Ok(FValue {
        integer,
        log_argument,
        value,
        ceiling,
    })
}

/// `f(p^k, p^m)`, the bound `(p-1)^(2^(p-1)-1)/(p-2)` (for `p ≥ 3`), and `m p^k`.
pub fn bound_formulas(p: u64, k: u32, m: u32) -> Result<BoundFormulas> {
    if !crate::numtheory::is_prime(p) {
        return Err(Error::Contract(format!("{p} is not prime")));
    }
    let h_upper = (3..=64).contains(&p).then(|| HUpper {
        base: p - 1,
        exponent: (1u64 << (p - 1)) - 1,
        denominator: p - 2,
    });
    Ok(BoundFormulas {
        p,
        k,
        m,
        f: f_value(p, k, m)?,
        h_upper,
        d_bound: BigUint::from(p).pow(k) * m,
    })
}

/// `{x : φ(x) = x}` for an automorphism `φ` of `G`, given as a table.
pub fn fixed_points(g: &FiniteGroupTable, phi: &[u32]) -> Result<Subgroup> {
    let n = g.order();
    if phi.len() != n || phi.iter().any(|&y| y as usize >= n) {
        return Err(Error::structural("map has the wrong shape"));
    }
    let mut seen = vec![false; n];
    for &y in phi {
        if std::mem::replace(&mut seen[y as usize], true) {
            return Err(Error::Contract("map is not a bijection".into()));
        }
    }
    let xs = all(n);
    if first_pair(&xs, &xs, |x, y| {
        (phi[g.mul(x, y) as usize] != g.mul(phi[x as usize], phi[y as usize])).then_some("hom")
    })
    .is_some()
    {
        return Err(Error::Contract("map is not a homomorphism".into()));
    }
    Ok(Subgroup::from_members(n, xs.into_iter().filter(|&x| phi[x as usize] == x)))
}

/// `Fix(a) = {b : λ_a(b) = b} = {b : a*b = 0}`.
pub fn lambda_fixed_points(b: &Brace, a: u32) -> Subgroup {
    Subgroup::from_members(b.order(), b.group().elements().filter(|&x| b.star(a, x) == 0))
}

/// `C(x) = {y : xy = yx}`.
pub fn centralizer(g: &FiniteGroupTable, x: u32) -> Subgroup {
    Subgroup::from_members(g.order(), (0..g.order() as u32).filter(|&y| g.mul(x, y) == g.mul(y, x)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    /// Left and right side of the asserted inequality, as decimal strings.
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub skipped: Option<&'static str>,
}

impl BoundCheck {
    fn skipped(name: &'static str, hypothesis: &'static str) -> Self {
        Self {
            name,
            lhs: String::new(),
            rhs: String::new(),
            holds: true,
            skipped: Some(hypothesis),
        }
    }

    fn compare(name: &'static str, lhs: BigUint, rhs: BigUint) -> Self {
        Self {
            name,
            holds: lhs <= rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            skipped: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub a: u32,
    /// `log_p` of the order of `a` in `(A, ∘)`.
    pub circ_order_log: u32,
    /// `log_p |C(a)|` in `(A, ∘)`.
    pub centralizer_log: u32,
    /// `log_p` of the order of conjugation by `a`.
    pub conjugation_order_log: u32,
    /// `log_p` of the order of `λ_a`.
    pub lambda_order_log: u32,
    /// `log_p |Fix(a)|`.
    pub fix_log: u32,
    pub derived_length: usize,
    pub additive_rank: u32,
    pub adjoint_rank: u32,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Data shared by all instances of one brace.
#[derive(Debug, Clone)]
pub struct BoundsContext<'a> {
    brace: &'a Brace,
    adjoint: FiniteGroupTable,
    derived_length: usize,
    additive_rank: u32,
    adjoint_rank: u32,
}

impl<'a> BoundsContext<'a> {
    pub fn new(brace: &'a Brace) -> Result<Self> {
        let adjoint = FiniteGroupTable::adjoint_group(brace)?;
        let additive = FiniteGroupTable::from_abelian(brace.group())?;
        Ok(Self {
            brace,
            derived_length: adjoint.derived_length(),
            additive_rank: additive.generator_rank(),
            adjoint_rank: adjoint.generator_rank(),
            adjoint,
        })
    }

    pub fn adjoint(&self) -> &FiniteGroupTable {
        &self.adjoint
    }

    /// Checks the derived-length bound through `C(a)` and through `Fix(a)`,
    /// the generator bounds for `(A,+)` and `(A,∘)`, and the lower bound on
    /// `|Fix(a)|` for elementary abelian `A` and `a` of ∘-order `p`.
    pub fn check(&self, a: u32) -> Result<BoundsReport> {
        let b = self.brace;
        let g = &self.adjoint;
        let p = b.prime();
        let n = b.log_order();
        let circ_order = g.element_order(a);
        let k_circ = log_p(p, circ_order as usize);
        let cent = centralizer(g, a);
        let m_cent = log_p(p, cent.len());
        // conjugation by a has order the least j with a^j central
        let center_of = |x: u32| (0..g.order() as u32).all(|y| g.mul(x, y) == g.mul(y, x));
        let conj_order = (1..=circ_order).find(|&j| center_of(g.pow(a, j))).unwrap_or(1);
        let k_conj = log_p(p, conj_order as usize);
        // λ_a^j = λ_(a^∘j)
        let lambda_order = (1..=circ_order)
            .find(|&j| {
                let aj = circ_power(b, a, j);
                b.group().elements().all(|x| b.star(aj, x) == 0)
            })
            .unwrap_or(1);
        let k_lambda = log_p(p, lambda_order as usize);
        let fix = lambda_fixed_points(b, a);
        let m_fix = log_p(p, fix.len());
        let dl = BigUint::from(self.derived_length);

        let mut checks = Vec::new();
        const F_CENT: &str = "derived length <= ceil f(p^k, p^m), k from the order of a, m from |C(a)|";
        const F_LAMBDA: &str = "derived length <= ceil f(p^k, p^m), k from the order of λ_a, m from |Fix(a)|";
        const D_ADD: &str = "d(A,+) <= m p^k for λ_a";
        const D_ADJ: &str = "d(A,∘) <= m p^k for conjugation by a";
        const FIX: &str = "|Fix(a)| >= p^ceil(n/p)";

        checks.push(if k_circ == 0 {
            BoundCheck::skipped(F_CENT, "k >= 1")
        } else {
            BoundCheck::compare(F_CENT, dl.clone(), bound_formulas(p, k_circ, m_cent)?.f.ceiling)
        });
        checks.push(if k_lambda == 0 {
            BoundCheck::skipped(F_LAMBDA, "k >= 1")
        } else {
            BoundCheck::compare(F_LAMBDA, dl, bound_formulas(p, k_lambda, m_fix)?.f.ceiling)
        });
        checks.push(BoundCheck::compare(
            D_ADD,
            self.additive_rank.into(),
            BigUint::from(p).pow(k_lambda) * m_fix,
        ));
        checks.push(BoundCheck::compare(
            D_ADJ,
            self.adjoint_rank.into(),
            BigUint::from(p).pow(k_conj) * m_cent,
        ));
        checks.push(if !b.group().is_elementary() {
            BoundCheck::skipped(FIX, "A elementary abelian")
        } else if a == 0 {
            BoundCheck::skipped(FIX, "a != 0")
        } else if circ_order != p {
            BoundCheck::skipped(FIX, "a has ∘-order p")
        } else {
            let want = BigUint::from(p).pow(n.div_ceil(p as u32));
            BoundCheck {
                name: FIX,
                holds: BigUint::from(fix.len()) >= want,
                lhs: want.to_string(),
                rhs: fix.len().to_string(),
                skipped: None,
            }
        });

        Ok(BoundsReport {
            a,
            circ_order_log: k_circ,
            centralizer_log: m_cent,
            conjugation_order_log: k_conj,
            lambda_order_log: k_lambda,
            fix_log: m_fix,
            derived_length: self.derived_length,
            additive_rank: self.additive_rank,
            adjoint_rank: self.adjoint_rank,
            checks,
        })
    }
}

/// [`BoundsContext::check`] for a single element.
pub fn verify_bounds_on_instance(b: &Brace, a: u32) -> Result<BoundsReport> {
    BoundsContext::new(b)?.check(a)
}

/// Whether `h` is closed under the group operation (fixed-point sets and
/// centralizers are expected to be).
pub fn is_closed(g: &FiniteGroupTable, h: &Subgroup) -> bool {
    first_single(h.members(), |x| {
        h.members()
            .iter()
            .any(|&y| !h.contains(g.mul(x, y)))
            .then_some("closed")
    })
    .is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPGroup;
    use crate::brace::{construct, BraceKind};

    fn f_oracle(p: f64, k: f64, m: f64) -> f64 {
        let pk = p.powf(k);
        2.0 * m * pk * (2f64.powf(pk - 1.0) + (k + 1.0).log2()).max((m + 1.0).log2()) + m * pk + (m * pk).log2()
    }

    #[test]
    fn f_examples() {
        let b = bound_formulas(5, 1, 1).unwrap();
        assert!((b.f.value - 177.321_928_094_887_36).abs() < 1e-9);
        assert!((b.f.value - f_oracle(5.0, 1.0, 1.0)).abs() < 1e-9);
        assert_eq!(b.f.ceiling, BigUint::from(178u32));
        for (p, k, m) in [(3, 1, 1), (3, 1, 5), (5, 1, 3), (7, 1, 2), (3, 2, 4), (2, 1, 1), (2, 1, 1000)] {
            let got = bound_formulas(p, k, m).unwrap().f;
            let want = f_oracle(p as f64, k as f64, m as f64);
            assert!((got.value - want).abs() < 1e-6 * want.max(1.0), "{p} {k} {m}");
            assert_eq!(got.ceiling, BigUint::from(want.ceil() as u64));
        }
        assert!(bound_formulas(5, 1, 0).is_err());
    }

    #[test]
    fn exact_ceiling_at_integers() {
        // p = 2, k = 1, m = 1: 2·2·(2 + 1) + 2 + 1 = 15 exactly
        let f = bound_formulas(2, 1, 1).unwrap().f;
        assert_eq!(f.ceiling, BigUint::from(15u32));
        assert_eq!(f.value, 15.0);
    }

    #[test]
    fn h_and_d() {
        let b = bound_formulas(5, 1, 2).unwrap();
        assert_eq!(b.d_bound, BigUint::from(10u32));
        let h = b.h_upper.unwrap().value().unwrap();
        assert_eq!(h, BigRational::new(BigUint::from(1_073_741_824u64).into(), BigUint::from(3u32).into()));
        assert!(bound_formulas(29, 1, 1).unwrap().h_upper.unwrap().value().is_none());
    }

    #[test]
    fn fixed_point_examples() {
        let g = FiniteGroupTable::cyclic(5, 2).unwrap();
        let id: Vec<u32> = (0..25).collect();
        assert_eq!(fixed_points(&g, &id).unwrap().len(), 25);
        let double: Vec<u32> = (0..25).map(|x| (2 * x) % 25).collect();
        assert_eq!(fixed_points(&g, &double).unwrap().len(), 1);
        let square: Vec<u32> = (0..25).map(|x| (x * x) % 25).collect();
        assert!(fixed_points(&g, &square).is_err());

        let t = Brace::trivial(AbelianPGroup::cyclic(5, 3).unwrap());
        assert_eq!(lambda_fixed_points(&t, 7).len(), 125);
        let r = construct(&BraceKind::RadicalCyclic { p: 5, n: 3 }).unwrap();
        let fix = lambda_fixed_points(&r, 1);
        assert_eq!(fix.len(), 5);
        assert!(fix.members().iter().all(|&b| b % 25 == 0));
        let adj = FiniteGroupTable::adjoint_group(&r).unwrap();
        assert!(is_closed(&adj, &centralizer(&adj, 1)));
    }

    #[test]
    fn instance_bounds() {
        let b = construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap();
        let ctx = BoundsContext::new(&b).unwrap();
        let mut prop_checked = 0;
        for a in 0..125 {
            let r = ctx.check(a).unwrap();
            assert!(r.all_hold(), "{r:?}");
            if r.checks[4].skipped.is_none() {
                prop_checked += 1;
            }
        }
        assert_eq!(prop_checked, 124);

        let t = Brace::trivial(AbelianPGroup::elementary(5, 3).unwrap());
        let r = verify_bounds_on_instance(&t, 3).unwrap();
        assert_eq!(r.fix_log, 3);
        assert!(r.checks[4].skipped.is_none() && r.all_hold());
        let r = verify_bounds_on_instance(&t, 0).unwrap();
        assert_eq!(r.checks[4].skipped, Some("a != 0"));
    }
}
