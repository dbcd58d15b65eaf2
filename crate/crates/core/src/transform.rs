//! From a brace to pre-Lie rings: the ξ-averaged product on `pA`, the pullback
//! `℘⁻¹`, the operation `⊙` and the pre-Lie ring `(A/ann(p²), +, •)`, and the
//! direct product on all of `A` for strongly nilpotent braces.

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianPGroup, Quotient, ScaledView};
use crate::brace::Brace;
use crate::error::{Error, Result};
use crate::numtheory::{xi, Xi};
use crate::prelie::{PreLieRing, LEFT_ADDITIVE, PRE_LIE, RIGHT_ADDITIVE};
use crate::sweep::{all, build_table, first_pair, first_triple, AxiomReport, Violation};

/// Upper limit of the averaging sum `Σ_i ξ^(p-1-i) (ξ^i x) * y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumRange {
    /// `i = 0, ..., p-2`.
    ToPMinus2,
    /// `i = 0, ..., p-1`.
    ToPMinus1,
}

impl SumRange {
    fn last(self, p: u64) -> u64 {
        match self {
            SumRange::ToPMinus2 => p - 2,
            SumRange::ToPMinus1 => p - 1,
        }
    }
}

/// Fixed section `pA → A` with `p·℘⁻¹(a) = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackSection {
    /// Indexed by rank in `A`; `u32::MAX` outside `pA`.
    map: Vec<u32>,
}

impl PullbackSection {
    /// Coordinate-wise division by `p`.
    pub fn canonical(g: &AbelianPGroup) -> Self {
        Self {
            map: g
                .elements()
                .map(|a| g.divide_by_p(a).unwrap_or(u32::MAX))
                .collect(),
        }
    }

    /// The canonical section shifted by `offset(a) ∈ ann(p)`.
    pub fn shifted<F>(g: &AbelianPGroup, offset: F) -> Result<Self>
    where
        F: Fn(u32) -> u32,
    {
        let ann = g.annihilator(1);
        let base = Self::canonical(g);
        let mut map = base.map.clone();
        for (a, slot) in map.iter_mut().enumerate() {
            if *slot == u32::MAX {
                continue;
            }
            let h = offset(a as u32);
            if !ann.contains(h) {
                return Err(Error::Contract(format!("offset {h} is not in ann(p)")));
            }
            *slot = g.add(*slot, h);
        }
        Ok(Self { map })
    }

    pub fn apply(&self, a: u32) -> Result<u32> {
        match self.map.get(a as usize) {
            Some(&x) if x != u32::MAX => Ok(x),
            _ => Err(Error::Contract(format!("{a} is not in pA"))),
        }
    }

    /// Checks `p·℘⁻¹(a) = a`, `[℘⁻¹(a)] + [℘⁻¹(b)] = [℘⁻¹(a+b)]` and
    /// `[m ℘⁻¹(a)] = [℘⁻¹(ma)]` for `0 ≤ m < p²`, over all of `pA`.
    pub fn verify(&self, g: &AbelianPGroup, q: &Quotient) -> AxiomReport {
        const SECTION: &str = "p·℘⁻¹(a) = a";
        const ADDITIVE: &str = "[℘⁻¹(a)] + [℘⁻¹(b)] = [℘⁻¹(a+b)]";
        const MULTIPLE: &str = "[m℘⁻¹(a)] = [℘⁻¹(ma)]";
        let pa: Vec<u32> = g.p_power_multiples(1).members().to_vec();
        let p = g.prime();
        let ms: Vec<u32> = (0..(p * p) as u32).collect();
        let pre = |a: u32| self.map[a as usize];
        let qg = &q.group;
        let mut report = AxiomReport {
            checked: vec![SECTION],
            failure: crate::sweep::first_single(&pa, |a| (g.mul_u(p, pre(a)) != a).then_some(SECTION)),
        };
        if report.failure.is_some() {
            return report;
        }
        report.checked.push(ADDITIVE);
        report.failure = first_pair(&pa, &pa, |a, b| {
            (qg.add(q.coset(pre(a)), q.coset(pre(b))) != q.coset(pre(g.add(a, b)))).then_some(ADDITIVE)
        });
        if report.failure.is_some() {
            return report;
        }
        report.checked.push(MULTIPLE);
        report.failure = first_pair(&pa, &ms, |a, m| {
            (q.coset(g.mul_u(m as u64, pre(a))) != q.coset(pre(g.mul_u(m as u64, a)))).then_some(MULTIPLE)
        });
        report
    }
}

/// Everything derived from a brace with `p > n+1`: powers of `ξ`, the
/// canonical pullback and the quotient by `ann(p²)`.
#[derive(Debug, Clone)]
pub struct BraceTransforms<'a> {
    brace: &'a Brace,
    xi: Xi,
    /// `ξ^i mod p^(e1)` for `0 ≤ i ≤ p-1`.
    powers: Vec<u64>,
    pullback: PullbackSection,
    quotient: Quotient,
    pa: ScaledView,
}

impl<'a> BraceTransforms<'a> {
    pub fn new(brace: &'a Brace) -> Result<Self> {
        brace.require_p_gt_n_plus_1()?;
        let g = brace.group();
        let xi = xi(brace.prime())?;
        let powers = xi.powers_mod(g.exponent_modulus());
        Ok(Self {
            brace,
            powers,
            xi,
            pullback: PullbackSection::canonical(g),
            quotient: Quotient::new(g, &g.annihilator(2))?,
            pa: g.scaled_view(1)?,
        })
    }

    pub fn brace(&self) -> &Brace {
        self.brace
    }

    pub fn xi(&self) -> &Xi {
        &self.xi
    }

    pub fn xi_powers(&self) -> &[u64] {
        &self.powers
    }

    pub fn pullback(&self) -> &PullbackSection {
        &self.pullback
    }

    /// `A/ann(p²)`; `[a] = [b]` iff `p²(a-b) = 0`.
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// `pA` as its own group.
    pub fn pa_view(&self) -> &ScaledView {
        &self.pa
    }

    fn average(&self, range: SumRange, x: u32, y: u32, pre: impl Fn(u32) -> u32) -> u32 {
        let g = self.brace.group();
        let p = self.brace.prime() as usize;
        let mut acc = 0;
        for i in 0..=range.last(p as u64) as usize {
            let inner = self.brace.star(pre(g.mul_u(self.powers[i], x)), y);
            acc = g.add(acc, g.mul_u(self.powers[p - 1 - i], inner));
        }
        acc
    }

    /// `a·b = Σ_{i=0}^{p-2} ξ^(p-1-i) ((ξ^i a) * b)`, evaluated for any `a, b`.
    pub fn dot_pa(&self, a: u32, b: u32) -> u32 {
        self.average(SumRange::ToPMinus2, a, b, |x| x)
    }

    /// [`Self::dot_pa`] with the left argument required to lie in `pA`.
    pub fn dot_pa_checked(&self, a: u32, b: u32) -> Result<u32> {
        if self.pa.restrict(a).is_none() {
            return Err(Error::Contract(format!("{a} is not in pA")));
        }
        Ok(self.dot_pa(a, b))
    }

    /// The restriction of `·` to `pA × pA`, unverified.
    pub fn dot_pa_table(&self) -> Result<PreLieRing> {
        let v = &self.pa;
        let table = build_table(v.group.order(), |x, y| {
            v.restrict(self.dot_pa(v.embed(x), v.embed(y))).unwrap_or(u32::MAX)
        });
        if table.contains(&u32::MAX) {
            return Err(Error::Internal("pA is not closed under ·".into()));
        }
        PreLieRing::from_table_unchecked(v.group.clone(), table)
    }

    /// `(pA, +, ·)`, verified to be a pre-Lie ring.
    pub fn dot_pa_ring(&self) -> Result<PreLieRing> {
        let r = self.dot_pa_table()?;
        crate::prelie::verify_prelie_axioms(&r).into_result()?;
        Ok(r)
    }

    /// The identities for `·` on the domains where they are claimed:
    /// `(a+b)·c = a·c + b·c` for `a, b ∈ pA, c ∈ A`; `a·(b+c) = a·b + a·c`
    /// for `a ∈ pA, b, c ∈ A`; the pre-Lie identity for `a, b ∈ pA, c ∈ A`.
    pub fn dot_pa_scope_report(&self) -> AxiomReport {
        let g = self.brace.group();
        let pa = g.p_power_multiples(1).members().to_vec();
        let xs = all(g.order());
        let n = g.order();
        // every identity below only multiplies from the left by elements of pA
        let mut rows = vec![u32::MAX; n * n];
        for &a in &pa {
            for &b in &xs {
                rows[a as usize * n + b as usize] = self.dot_pa(a, b);
            }
        }
        let d = |a: u32, b: u32| rows[a as usize * n + b as usize];
        let steps: [(&'static str, &dyn Fn() -> Option<Violation>); 3] = [
            (LEFT_ADDITIVE, &|| {
                first_triple(&pa, &pa, &xs, |a, b, c| {
                    (d(g.add(a, b), c) != g.add(d(a, c), d(b, c))).then_some(LEFT_ADDITIVE)
                })
            }),
            (RIGHT_ADDITIVE, &|| {
                first_triple(&pa, &xs, &xs, |a, b, c| {
                    (d(a, g.add(b, c)) != g.add(d(a, b), d(a, c))).then_some(RIGHT_ADDITIVE)
                })
            }),
            (PRE_LIE, &|| {
                first_triple(&pa, &pa, &xs, |a, b, c| {
                    let lhs = g.sub(d(d(a, b), c), d(a, d(b, c)));
                    let rhs = g.sub(d(d(b, a), c), d(b, d(a, c)));
                    (lhs != rhs).then_some(PRE_LIE)
                })
            }),
        ];
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

    /// `℘⁻¹((pa) * b)` for representatives `a, b`, under a given section.
    pub fn odot_rep_with(&self, section: &PullbackSection, a: u32, b: u32) -> u32 {
        let g = self.brace.group();
        let p = self.brace.prime();
        section
            .apply(self.brace.star(g.mul_u(p, a), b))
            .expect("(pa)*b lies in pA")
    }

    /// `[a] ⊙ [b] = [℘⁻¹((pa) * b)]` on quotient ranks.
    pub fn odot(&self, qa: u32, qb: u32) -> u32 {
        let q = &self.quotient;
        q.coset(self.odot_rep_with(&self.pullback, q.rep(qa), q.rep(qb)))
    }

    /// First `(a', b')` whose `⊙` differs from the one computed on canonical
    /// representatives, over every representative of every coset pair, under
    /// the canonical section and under `alt`.
    pub fn odot_dependence(&self, alt: &PullbackSection) -> Option<Violation> {
        const ID: &str = "[a]⊙[b] independent of representatives and section";
        let g = self.brace.group();
        let q = &self.quotient;
        let xs = all(g.order());
        first_pair(&xs, &xs, |a, b| {
            let want = self.odot(q.coset(a), q.coset(b));
            (q.coset(self.odot_rep_with(&self.pullback, a, b)) != want
                || q.coset(self.odot_rep_with(alt, a, b)) != want)
                .then_some(ID)
        })
    }

    /// `[x] • [y] = Σ_{i=0}^{p-2} ξ^(p-1-i) [ξ^i x] ⊙ [y]`.
    pub fn bullet(&self, qx: u32, qy: u32) -> u32 {
        let q = &self.quotient;
        let g = self.brace.group();
        let p = self.brace.prime() as usize;
        let x = q.rep(qx);
        let mut acc = 0;
        for i in 0..=p - 2 {
            let term = self.odot(q.coset(g.mul_u(self.powers[i], x)), qy);
            acc = q.group.add(acc, q.group.mul_u(self.powers[p - 1 - i], term));
        }
        acc
    }

    /// `[℘⁻¹((px) · y)]` with `·` the product on `pA`.
    pub fn bullet_via_dot(&self, qx: u32, qy: u32) -> u32 {
        let q = &self.quotient;
        let g = self.brace.group();
        let px = g.mul_u(self.brace.prime(), q.rep(qx));
        q.coset(self.pullback.apply(self.dot_pa(px, q.rep(qy))).expect("(px)·y lies in pA"))
    }

    /// The bullet product on `A/ann(p²)`, unverified.
    pub fn bullet_table(&self) -> PreLieRing {
        let t = build_table(self.quotient.group.order(), |x, y| self.bullet(x, y));
        PreLieRing::from_table_unchecked(self.quotient.group.clone(), t).expect("quotient ranks in range")
    }

    /// `(A/ann(p²), +, •)`, verified to be a pre-Lie ring.
    pub fn bullet_ring(&self) -> Result<PreLieRing> {
        let r = self.bullet_table();
        crate::prelie::verify_prelie_axioms(&r).into_result()?;
        Ok(r)
    }

    /// First coset pair where the two descriptions of `•` disagree.
    pub fn bullet_cross_check(&self) -> Option<Violation> {
        const ID: &str = "[x]•[y] = [℘⁻¹((px)·y)]";
        let qs = all(self.quotient.group.order());
        first_pair(&qs, &qs, |x, y| (self.bullet(x, y) != self.bullet_via_dot(x, y)).then_some(ID))
    }
}

/// Which formula [`strong_dot`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrongDotVariant {
    pub range: SumRange,
    /// Use `(ξ^i p x) * y` in place of `(ξ^i x) * y`.
    pub times_p: bool,
}

impl StrongDotVariant {
    pub const STANDARD: Self = Self {
        range: SumRange::ToPMinus2,
        times_p: false,
    };
    pub const FULL_RANGE: Self = Self {
        range: SumRange::ToPMinus1,
        times_p: false,
    };
    pub const TIMES_P: Self = Self {
        range: SumRange::ToPMinus2,
        times_p: true,
    };

    pub fn name(&self) -> &'static str {
        match (self.range, self.times_p) {
            (SumRange::ToPMinus2, false) => "standard",
            (SumRange::ToPMinus1, false) => "full-range",
            (SumRange::ToPMinus2, true) => "times-p",
            (SumRange::ToPMinus1, true) => "full-range-times-p",
        }
    }
}

/// Requires a strong nilpotency index below `p`.
pub fn require_strong_index_below_p(b: &Brace) -> Result<usize> {
    let p = b.prime() as usize;
    match b.nilpotency_chains().strong_index() {
        Some(k) if k < p => Ok(k),
        Some(k) => Err(Error::hypothesis(
            "strong nilpotency index < p",
            format!("index {k}, p = {p}"),
        )),
        None => Err(Error::hypothesis(
            "strong nilpotency index < p",
            "the brace is not strongly nilpotent",
        )),
    }
}

/// `x·y = Σ ξ^(p-1-i) (ξ^i x) * y` on all of `A`, unverified.
pub fn strong_dot_table(t: &BraceTransforms<'_>, variant: StrongDotVariant) -> Result<PreLieRing> {
    require_strong_index_below_p(t.brace)?;
    let b = t.brace;
    let g = b.group();
    let p = b.prime();
    let table = build_table(g.order(), |x, y| {
        t.average(variant.range, x, y, |z| if variant.times_p { g.mul_u(p, z) } else { z })
    });
    PreLieRing::from_table_unchecked(g.clone(), table)
}

/// [`strong_dot_table`] with the pre-Lie axioms verified.
pub fn strong_dot(t: &BraceTransforms<'_>, variant: StrongDotVariant) -> Result<PreLieRing> {
    let r = strong_dot_table(t, variant)?;
    crate::prelie::verify_prelie_axioms(&r).into_result()?;
    Ok(r)
}

/// First pair with `[a] • [b] ≠ [a·b]`.
pub fn strong_dot_bullet_consistency(t: &BraceTransforms<'_>, dot: &PreLieRing) -> Option<Violation> {
    const ID: &str = "[a]•[b] = [a·b]";
    let q = t.quotient();
    let xs = all(dot.order());
    first_pair(&xs, &xs, |a, b| {
        (t.bullet(q.coset(a), q.coset(b)) != q.coset(dot.dot(a, b))).then_some(ID)
    })
}
