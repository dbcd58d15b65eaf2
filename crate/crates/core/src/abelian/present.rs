use crate::error::{Error, Result};

use super::AbelianPGroup;

/// An isomorphism between an abstract finite abelian p-group (given by an
/// operation on indices `0..size`) and a canonical [`AbelianPGroup`].
#[derive(Debug, Clone)]
pub struct Presentation {
    pub group: AbelianPGroup,
    /// Index → canonical rank.
    pub to_rank: Vec<u32>,
    /// Canonical rank → index.
    pub from_rank: Vec<u32>,
}

fn power(x: u32, mut k: u64, identity: u32, op: &impl Fn(u32, u32) -> u32) -> u32 {
    let mut acc = identity;
    let mut base = x;
    while k > 0 {
        if k & 1 == 1 {
            acc = op(acc, base);
        }
        base = op(base, base);
        k >>= 1;
    }
    acc
}

/// Finds a basis of an abelian p-group by greedy choice of elements of maximal
/// order modulo the span built so far, then reads off coordinates.
///
/// The basis is deterministic: ties go to the smallest index, and each lift is
/// the smallest-index element of its coset with the right order.
pub fn present_abelian<F>(p: u64, size: usize, identity: u32, op: F) -> Result<Presentation>
where
    F: Fn(u32, u32) -> u32,
{
    let mut s = size as u64;
    while s > 1 && s.is_multiple_of(p) {
        s /= p;
    }
    if s != 1 {
        return Err(Error::structural(format!("order {size} is not a power of {p}")));
    }

    let mut in_span = vec![false; size];
    in_span[identity as usize] = true;
    let mut span: Vec<u32> = vec![identity];
    let mut coords: Vec<Vec<u64>> = vec![Vec::new(); size];
    let mut exps: Vec<u32> = Vec::new();

    while span.len() < size {
        // element of largest order modulo the current span
        let mut best: Option<(u32, u32)> = None;
        for x in 0..size as u32 {
            if in_span[x as usize] {
                continue;
            }
            let mut y = x;
            let mut k = 0u32;
            while !in_span[y as usize] {
                y = power(y, p, identity, &op);
                k += 1;
            }
            if best.is_none_or(|(_, bk)| k > bk) {
                best = Some((x, k));
            }
        }
        let (x, k) = best.expect("span is proper");
        let pk = p.pow(k);
        let lift = span
            .iter()
            .map(|&h| op(x, h))
            .filter(|&z| power(z, pk, identity, &op) == identity)
            .min()
            .ok_or_else(|| Error::Internal("no lift of full order; operation is not abelian".into()))?;

        let old: Vec<u32> = span.clone();
        let mut step = identity;
        for j in 1..pk {
            step = op(step, lift);
            for &h in &old {
                let z = op(h, step);
                if in_span[z as usize] {
                    return Err(Error::Internal("span extension is not direct".into()));
                }
                in_span[z as usize] = true;
                let mut c = coords[h as usize].clone();
                c.push(j);
                coords[z as usize] = c;
                span.push(z);
            }
        }
        for &h in &old {
            coords[h as usize].push(0);
        }
        exps.push(k);
    }

    let group = AbelianPGroup::new(p, exps)?;
    let mut to_rank = vec![0u32; size];
    let mut from_rank = vec![0u32; size];
    for x in 0..size {
        let r = group.rank_of(&coords[x]);
        to_rank[x] = r;
        from_rank[r as usize] = x as u32;
    }
    Ok(Presentation {
        group,
        to_rank,
        from_rank,
    })
}
