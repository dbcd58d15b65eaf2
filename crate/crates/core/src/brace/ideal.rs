use crate::abelian::Quotient;
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::sweep::{build_table, first_pair};

use super::{verify_brace_axioms, Brace};

/// An additive subgroup `I` with `I*A ⊆ I` and `A*I ⊆ I`, checked against its brace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceIdeal {
    carrier: Subgroup,
}

impl BraceIdeal {
    /// Verifies the ideal conditions exhaustively.
    pub fn new(b: &Brace, carrier: Subgroup) -> Result<Self> {
        if !is_ideal(b, &carrier) {
            return Err(Error::Contract("subset is not an ideal of the brace".into()));
        }
        Ok(Self { carrier })
    }

    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

pub(crate) fn is_ideal(b: &Brace, s: &Subgroup) -> bool {
    let g = b.group();
    if s.ambient() != b.order() || !s.contains(0) {
        return false;
    }
    let closed_add = first_pair(s.members(), s.members(), |x, y| {
        (!s.contains(g.sub(x, y))).then_some("i - j ∈ I")
    })
    .is_none();
    let all: Vec<u32> = g.elements().collect();
    closed_add
        && first_pair(s.members(), &all, |i, a| {
            (!s.contains(b.star(i, a)) || !s.contains(b.star(a, i))).then_some("i*a, a*i ∈ I")
        })
        .is_none()
}

/// A subset together with whether it is an ideal and whether `p > n+1` holds.
#[derive(Debug, Clone)]
pub struct FlaggedIdeal {
    pub carrier: Subgroup,
    pub is_ideal: bool,
    pub hypothesis_holds: bool,
}

impl FlaggedIdeal {
    pub fn into_ideal(self) -> Result<BraceIdeal> {
        if self.is_ideal {
            Ok(BraceIdeal {
                carrier: self.carrier,
            })
        } else {
            Err(Error::Contract("subset is not an ideal of the brace".into()))
        }
    }
}

/// `ann(p^i) = {a : p^i a = 0}`. Always returned; the flags say whether it was
/// verified to be an ideal and whether `p > n+1`.
pub fn ann(b: &Brace, i: u32) -> FlaggedIdeal {
    let carrier = b.group().annihilator(i);
    FlaggedIdeal {
        is_ideal: is_ideal(b, &carrier),
        hypothesis_holds: b.p_exceeds_n_plus_1(),
        carrier,
    }
}

/// `p^i A`, which is an ideal when `p > n+1`.
pub fn pa_ideal(b: &Brace, i: u32) -> Result<BraceIdeal> {
    b.require_p_gt_n_plus_1()?;
    let carrier = b.group().p_power_multiples(i);
    if !is_ideal(b, &carrier) {
        return Err(Error::Internal(format!(
            "p^{i}A is not an ideal although p > n+1"
        )));
    }
    Ok(BraceIdeal { carrier })
}

/// `B/I` on minimal-rank coset representatives.
#[derive(Debug, Clone)]
pub struct QuotientBrace {
    pub brace: Brace,
    pub quotient: Quotient,
}

pub fn quotient_brace(b: &Brace, ideal: &BraceIdeal) -> Result<QuotientBrace> {
    if !is_ideal(b, ideal.carrier()) {
        return Err(Error::Contract("subset is not an ideal of the brace".into()));
    }
    let quotient = Quotient::new(b.group(), ideal.carrier())?;
    let table = build_table(quotient.group.order(), |x, y| {
        quotient.coset(b.star(quotient.rep(x), quotient.rep(y)))
    });
    let brace = Brace::from_table_unchecked(quotient.group.clone(), table)?;
    verify_brace_axioms(&brace).into_result()?;
    Ok(QuotientBrace { brace, quotient })
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
    fn annihilators() {
        let b = radical(5, 3);
        let a0 = ann(&b, 0);
        assert_eq!(a0.carrier.members(), &[0]);
        let a2 = ann(&b, 2);
        assert!(a2.is_ideal && a2.hypothesis_holds);
        assert_eq!(a2.carrier.members(), (0..25).map(|k| 5 * k).collect::<Vec<u32>>());
        assert_eq!(ann(&b, 5).carrier.len(), 125);
    }

    #[test]
    fn pa_ideals() {
        let b = radical(5, 3);
        let i1 = pa_ideal(&b, 1).unwrap();
        assert_eq!(i1.carrier().members(), (0..25).map(|k| 5 * k).collect::<Vec<u32>>());
        assert_eq!(pa_ideal(&b, 3).unwrap().len(), 1);

        let g = AbelianPGroup::new(5, vec![2, 1]).unwrap();
        let t = Brace::trivial(g.clone());
        let i = pa_ideal(&t, 1).unwrap();
        assert_eq!(i.len(), 5);
        assert!(i.carrier().members().iter().all(|&x| g.coords(x)[1] == 0 && g.coords(x)[0].is_multiple_of(5)));

        let small = radical(3, 3);
        assert_eq!(
            pa_ideal(&small, 1).unwrap_err().hypothesis_name(),
            Some("p > n+1")
        );
    }

    #[test]
    fn quotients() {
        let b = radical(5, 3);
        let zero = BraceIdeal::new(&b, Subgroup::trivial(125, 0)).unwrap();
        let q = quotient_brace(&b, &zero).unwrap();
        assert_eq!(q.brace, b);

        let whole = BraceIdeal::new(&b, Subgroup::whole(125)).unwrap();
        assert_eq!(quotient_brace(&b, &whole).unwrap().brace.order(), 1);

        // B / ann(p) = B / 25A is Z/25 with a*b = 5ab
        let i = ann(&b, 1).into_ideal().unwrap();
        assert_eq!(i.carrier().members(), &[0, 25, 50, 75, 100]);
        let q = quotient_brace(&b, &i).unwrap();
        assert_eq!(q.brace.order(), 25);
        for x in 0..25u32 {
            for y in 0..25u32 {
                assert_eq!(q.brace.star(x, y), (5 * x * y) % 25);
            }
        }
    }

    #[test]
    fn rejects_non_ideal() {
        // in the triangular brace the span of e12 is not closed under *
        let b = construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap();
        let g = b.group();
        let e12 = g.rank_of(&[1, 0, 0]);
        let s = g.subgroup_closure([e12]);
        assert!(BraceIdeal::new(&b, s.clone()).is_err());
        assert!(!is_ideal(&b, &s));
    }
}
