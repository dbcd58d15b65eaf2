//! The group of flows of a strongly nilpotent pre-Lie ring, and the round trip
//! brace → pre-Lie ring → brace.
//!
//! With `L_a(b) = a·b`:
//!
//! * `W(a) = Σ_{i≥0} L_a^i(a) / (i+1)!`
//! * `Ω = W⁻¹`
//! * `a ∘ b = a + Σ_{i≥0} L_{Ω(a)}^i(b) / i!`
//!
//! The sums stop once the strong chain vanishes, so every denominator is prime
//! to `p` when the strong nilpotency index is at most `p - 1`.

use serde::Serialize;

use crate::brace::{ann, quotient_brace, Brace};
use crate::error::{Error, Result};
use crate::numtheory::{inv_mod, neg_geometric_sum};
use crate::prelie::{prelie_nilpotency, scale_product, PreLieRing};
use crate::transform::{require_strong_index_below_p, strong_dot_table, BraceTransforms, StrongDotVariant};

#[derive(Debug, Clone)]
pub struct FlowsContext {
    ring: PreLieRing,
    /// Strong nilpotency index: all products of `index` factors vanish.
    index: usize,
    /// `1/i! mod p^(e1)` for `0 ≤ i < index`.
    inv_factorials: Vec<u64>,
}

impl FlowsContext {
    pub fn new(ring: PreLieRing) -> Result<Self> {
        let p = ring.prime();
        let index = match prelie_nilpotency(&ring).strong_index() {
            Some(k) if (k as u64) < p || ring.order() == 1 => k,
            other => {
                return Err(Error::hypothesis(
                    "strong nilpotency index <= p-1",
                    match other {
                        Some(k) => format!("index {k}, p = {p}"),
                        None => "the pre-Lie ring is not strongly nilpotent".into(),
                    },
                ))
            }
        };
        let m = ring.group().exponent_modulus();
        let mut inv_factorials = Vec::with_capacity(index.max(1));
        let mut f = 1u64 % m.max(1);
        for i in 0..index.max(1) as u64 {
            if i > 0 {
                f = f * i % m;
            }
            inv_factorials.push(if m == 1 { 0 } else { inv_mod(f, m)? });
        }
        Ok(Self {
            ring,
            index,
            inv_factorials,
        })
    }

    pub fn ring(&self) -> &PreLieRing {
        &self.ring
    }

    pub fn strong_index(&self) -> usize {
        self.index
    }

    /// `Σ_{i≥0} coeff(i) L_x^i(start)` until the terms vanish.
    fn series(&self, x: u32, start: u32, shift: usize) -> u32 {
        let g = self.ring.group();
        let mut acc = 0;
        let mut term = start;
        let mut i = 0;
        while term != 0 {
            let k = i + shift;
            if k >= self.inv_factorials.len() {
                // L_x^i(start) is a product of more than `index - 1` factors
                debug_assert!(false, "series ran past the strong index");
                break;
            }
            acc = g.add(acc, g.mul_u(self.inv_factorials[k], term));
            term = self.ring.dot(x, term);
            i += 1;
        }
        acc
    }

    /// `W(a) = Σ L_a^i(a)/(i+1)!`.
    pub fn w_map(&self, a: u32) -> u32 {
        self.series(a, a, 1)
    }

    /// `Ω(a)`, the solution of `W(x) = a`, by `x ← a - (W(x) - x)`.
    pub fn omega(&self, a: u32) -> Result<u32> {
        let g = self.ring.group();
        let mut x = a;
        for _ in 0..=self.index {
            let w = self.w_map(x);
            if w == a {
                return Ok(x);
            }
            x = g.sub(a, g.sub(w, x));
        }
        Err(Error::Internal(format!(
            "Ω({a}) did not converge within {} steps",
            self.index + 1
        )))
    }

    /// `a ∘ b = a + Σ L_{Ω(a)}^i(b)/i!`.
    pub fn flows_circ(&self, a: u32, b: u32) -> Result<u32> {
        let x = self.omega(a)?;
        Ok(self.circ_with_omega(a, x, b))
    }

    fn circ_with_omega(&self, a: u32, omega_a: u32, b: u32) -> u32 {
        self.ring.group().add(a, self.series(omega_a, b, 0))
    }
}

/// The brace `(A, +, ∘)` with `∘` from [`FlowsContext::flows_circ`], verified.
pub fn group_of_flows(ring: &PreLieRing) -> Result<Brace> {
    let b = group_of_flows_table(ring)?;
    crate::brace::verify_brace_axioms(&b).into_result()?;
    Ok(b)
}

/// [`group_of_flows`] without the axiom sweep.
pub fn group_of_flows_table(ring: &PreLieRing) -> Result<Brace> {
    let ctx = FlowsContext::new(ring.clone())?;
    let g = ring.group();
    let omegas = g.elements().map(|a| ctx.omega(a)).collect::<Result<Vec<u32>>>()?;
    let table = crate::sweep::build_table(g.order(), |a, b| {
        let c = ctx.circ_with_omega(a, omegas[a as usize], b);
        g.sub(g.sub(c, a), b)
    });
    Brace::from_table_unchecked(g.clone(), table)
}

/// `-(1 + p + ... + p^n)`, the scalar turning the averaged product back into
/// the product whose group of flows is the brace.
pub fn roundtrip_scalar(b: &Brace, top: u32) -> i128 {
    let m = b.group().exponent_modulus();
    neg_geometric_sum(b.prime(), top, m) as i128
}

/// One comparison of the round trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripOutcome {
    pub variant: &'static str,
    /// Whether this variant counts toward the overall verdict.
    pub primary: bool,
    pub pass: bool,
    /// First `(a, b)` where the star tables differ.
    pub first_mismatch: Option<Vec<u32>>,
    /// Named hypothesis when the comparison could not be run.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub pass: bool,
    pub outcomes: Vec<RoundtripOutcome>,
}

fn first_mismatch(x: &Brace, y: &Brace) -> Option<Vec<u32>> {
    if x.group() != y.group() {
        return Some(Vec::new());
    }
    let n = x.order();
    x.star_table()
        .iter()
        .zip(y.star_table())
        .position(|(a, b)| a != b)
        .map(|k| vec![(k / n) as u32, (k % n) as u32])
}

fn outcome(variant: &'static str, primary: bool, run: impl FnOnce() -> Result<(Brace, Brace)>) -> RoundtripOutcome {
    match run() {
        Ok((got, want)) => {
            let mm = first_mismatch(&got, &want);
            RoundtripOutcome {
                variant,
                primary,
                pass: mm.is_none(),
                first_mismatch: mm,
                skipped: None,
            }
        }
        Err(e) => match e.hypothesis_name() {
            Some(h) => RoundtripOutcome {
                variant,
                primary,
                pass: true,
                first_mismatch: None,
                skipped: Some(h.to_string()),
            },
            None => RoundtripOutcome {
                variant,
                primary,
                pass: false,
                first_mismatch: None,
                skipped: Some(format!("error: {e}")),
            },
        },
    }
}

/// Rebuilds `B` from the scaled strong product (three formula variants) and
/// `B/ann(p²)` from the scaled bullet product, comparing tables exactly.
/// The standard strong variant and the bullet variant decide `pass`.
///
/// Intermediate tables are not swept for axioms: exact equality with a
/// verified brace already certifies the rebuilt one.
pub fn roundtrip_check(b: &Brace) -> Result<RoundtripReport> {
    let t = BraceTransforms::new(b)?;
    let n = b.log_order();
    let p = b.prime() as u32;
    let strong_ok = require_strong_index_below_p(b);
    let strong_variant = |v: StrongDotVariant, top: u32| {
        let strong_ok = strong_ok.clone();
        let t = &t;
        move || {
            strong_ok?;
            let dot = strong_dot_table(t, v)?;
            let scaled = scale_product(&dot, roundtrip_scalar(b, top))?;
            Ok((group_of_flows_table(&scaled)?, b.clone()))
        }
    };
    let outcomes = vec![
        outcome("strong", true, strong_variant(StrongDotVariant::STANDARD, n)),
        outcome("strong-full-range", false, strong_variant(StrongDotVariant::FULL_RANGE, p)),
        outcome("strong-times-p", false, strong_variant(StrongDotVariant::TIMES_P, n)),
        outcome("bullet", true, || {
            let bullet = t.bullet_table();
            let scaled = scale_product(&bullet, roundtrip_scalar(b, n))?;
            let quotient = quotient_brace(b, &ann(b, 2).into_ideal()?)?;
            Ok((group_of_flows_table(&scaled)?, quotient.brace))
        }),
    ];
    Ok(RoundtripReport {
        pass: outcomes.iter().filter(|o| o.primary).all(|o| o.pass),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::AbelianPGroup;
    use crate::brace::{construct, BraceKind};

    fn z25() -> FlowsContext {
        FlowsContext::new(PreLieRing::radical_cyclic(5, 2).unwrap()).unwrap()
    }

    #[test]
    fn zero_product() {
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        let ctx = FlowsContext::new(PreLieRing::zero(g.clone())).unwrap();
        for a in 0..25 {
            assert_eq!(ctx.w_map(a), a);
            assert_eq!(ctx.omega(a).unwrap(), a);
            assert_eq!(ctx.flows_circ(a, 7).unwrap(), g.add(a, 7));
        }
        let b = group_of_flows(&PreLieRing::zero(g)).unwrap();
        assert!(b.star_table().iter().all(|&x| x == 0));
    }

    // Z/25 with a·b = 5ab stands for 5Z/125 with a·b = ab via x ↦ 5x.
    #[test]
    fn radical_examples() {
        let ctx = z25();
        assert_eq!(ctx.w_map(0), 0);
        assert_eq!(5 * ctx.w_map(1), 80);
        assert_eq!(5 * ctx.omega(1).unwrap(), 55);
        assert_eq!(ctx.w_map(ctx.omega(1).unwrap()), 1);
        assert_eq!(5 * ctx.flows_circ(1, 1).unwrap(), 35);
        assert_eq!(ctx.flows_circ(3, 0).unwrap(), 3);
    }

    #[test]
    fn w_and_omega_are_inverse() {
        let ctx = z25();
        let mut seen = [false; 25];
        for a in 0..25 {
            let w = ctx.w_map(a);
            assert!(!seen[w as usize]);
            seen[w as usize] = true;
            assert_eq!(ctx.omega(w).unwrap(), a);
        }
    }

    #[test]
    fn associative_gives_radical_brace() {
        let p = PreLieRing::radical_cyclic(5, 2).unwrap();
        let b = group_of_flows(&p).unwrap();
        let direct = construct(&BraceKind::RadicalCyclic { p: 5, n: 2 }).unwrap();
        assert_eq!(b, direct);
    }

    #[test]
    fn refuses_non_nilpotent() {
        let f = PreLieRing::from_fn(AbelianPGroup::cyclic(5, 1).unwrap(), |a, b| a * b % 5).unwrap();
        assert!(FlowsContext::new(f).is_err());
    }

    #[test]
    fn roundtrips() {
        for kind in [
            BraceKind::Trivial { p: 5, exponents: vec![3] },
            BraceKind::RadicalCyclic { p: 5, n: 3 },
            BraceKind::RadicalTriangular { p: 5, d: 3 },
        ] {
            let b = construct(&kind).unwrap();
            let r = roundtrip_check(&b).unwrap();
            assert!(r.pass, "{kind:?}: {r:?}");
        }
    }
}
