use serde::{Deserialize, Serialize};

use crate::abelian::AbelianPGroup;
use crate::error::{Error, Result};

use super::Brace;

/// Corpus constructors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BraceKind {
    /// `a*b = 0` on `⊕ Z/p^ei`.
    Trivial { p: u64, exponents: Vec<u32> },
    /// `Z/p^n` with `a*b = p·a·b`.
    RadicalCyclic { p: u64, n: u32 },
    /// Strictly upper-triangular `d x d` matrices over `Z/p` under matrix product.
    RadicalTriangular { p: u64, d: usize },
    /// `Z/p^2 ⊕ Z/p` with `(x,y)*(x',y') = (p·y·x', 0)`; a noncommutative
    /// radical ring whose adjoint group is powerful.
    RadicalTwisted { p: u64 },
    DirectSum { left: Box<BraceKind>, right: Box<BraceKind> },
}

fn require_odd(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::hypothesis("p > 2", "braces are built for odd primes"));
    }
    Ok(())
}

/// Builds a corpus brace and verifies all brace axioms on it.
pub fn construct(kind: &BraceKind) -> Result<Brace> {
    match kind {
        BraceKind::Trivial { p, exponents } => {
            require_odd(*p)?;
            let mut e = exponents.clone();
            e.sort_unstable_by(|a, b| b.cmp(a));
            Ok(Brace::trivial(AbelianPGroup::new(*p, e)?))
        }
        BraceKind::RadicalCyclic { p, n } => {
            require_odd(*p)?;
            let g = AbelianPGroup::cyclic(*p, *n)?;
            let m = g.exponent_modulus() as u128;
            let p = *p as u128;
            Brace::from_fn(g, move |a, b| (p * a as u128 * b as u128 % m) as u32)
        }
        BraceKind::RadicalTriangular { p, d } => {
            require_odd(*p)?;
            radical_triangular(*p, *d)
        }
        BraceKind::RadicalTwisted { p } => {
            require_odd(*p)?;
            let g = AbelianPGroup::new(*p, vec![2, 1])?;
            let p2 = p * p;
            let gg = g.clone();
            let p = *p;
            Brace::from_fn(g, move |a, b| {
                let y = gg.coords(a)[1];
                let x2 = gg.coords(b)[0];
                gg.rank_of(&[p * y * x2 % p2, 0])
            })
        }
        BraceKind::DirectSum { left, right } => {
            let l = construct(left)?;
            let r = construct(right)?;
            direct_sum(&l, &r)
        }
    }
}

fn radical_triangular(p: u64, d: usize) -> Result<Brace> {
    if d < 2 {
        return Err(Error::structural("triangular matrices need d >= 2"));
    }
    let slots: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    let g = AbelianPGroup::elementary(p, slots.len())?;
    let gg = g.clone();
    Brace::from_fn(g, move |a, b| {
        let (ca, cb) = (gg.coords(a), gg.coords(b));
        let entry = |c: &[u64], i: usize, j: usize| {
            slots
                .iter()
                .position(|&s| s == (i, j))
                .map_or(0, |k| c[k])
        };
        let prod: Vec<u64> = slots
            .iter()
            .map(|&(i, j)| {
                (i + 1..j)
                    .map(|k| entry(&ca, i, k) * entry(&cb, k, j))
                    .sum::<u64>()
                    % p
            })
            .collect();
        gg.rank_of(&prod)
    })
}

/// `B1 ⊕ B2` with componentwise `*`.
pub fn direct_sum(l: &Brace, r: &Brace) -> Result<Brace> {
    let ds = l.group().direct_sum(r.group())?;
    let g = ds.group.clone();
    Brace::from_fn(g, |a, b| {
        let (a1, a2) = ds.split(a);
        let (b1, b2) = ds.split(b);
        ds.pair(l.star(a1, b1), r.star(a2, b2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::verify_brace_axioms;

    #[test]
    fn trivial_kind() {
        let b = construct(&BraceKind::Trivial {
            p: 5,
            exponents: vec![3],
        })
        .unwrap();
        assert_eq!(b.order(), 125);
        assert!(b.star_table().iter().all(|&x| x == 0));
    }

    #[test]
    fn radical_cyclic_kind() {
        let b = construct(&BraceKind::RadicalCyclic { p: 5, n: 3 }).unwrap();
        assert_eq!(b.star(3, 4), 60);
        assert!(verify_brace_axioms(&b).passed());
    }

    #[test]
    fn triangular_kind() {
        let b = construct(&BraceKind::RadicalTriangular { p: 5, d: 3 }).unwrap();
        assert_eq!(b.order(), 125);
        assert!(!b.is_circ_commutative());
        let g = b.group();
        let e12 = g.rank_of(&[1, 0, 0]);
        let e23 = g.rank_of(&[0, 0, 1]);
        assert_eq!(b.star(e12, e23), g.rank_of(&[0, 1, 0]));
        assert_eq!(b.star(e23, e12), 0);
    }

    #[test]
    fn twisted_kind() {
        let b = construct(&BraceKind::RadicalTwisted { p: 5 }).unwrap();
        assert_eq!(b.order(), 125);
        assert!(!b.is_circ_commutative());
        assert!(b.is_powerful_brace());
    }

    #[test]
    fn direct_sums() {
        let kind = BraceKind::DirectSum {
            left: Box::new(BraceKind::Trivial {
                p: 5,
                exponents: vec![1],
            }),
            right: Box::new(BraceKind::Trivial {
                p: 5,
                exponents: vec![2],
            }),
        };
        let b = construct(&kind).unwrap();
        assert_eq!(b.group().exponents(), &[2, 1]);
        assert_eq!(b.nilpotency_chains().strong_index(), Some(2));
    }

    #[test]
    fn rejects_even_prime() {
        assert!(construct(&BraceKind::RadicalCyclic { p: 2, n: 3 }).is_err());
    }
}
