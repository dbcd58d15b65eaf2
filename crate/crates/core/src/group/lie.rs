use crate::abelian::{present_abelian, AbelianPGroup};
use crate::error::{Error, Result};
use crate::prelie::LieRing;
use crate::subgroup::Subgroup;
use crate::sweep::{build_table, first_pair};

use super::FiniteGroupTable;

/// An abelian section `H/K` of a table group, presented canonically.
#[derive(Debug, Clone)]
pub struct LayerQuotient {
    pub group: AbelianPGroup,
    /// Group element → rank of its coset; `u32::MAX` outside `H`.
    coset_of: Vec<u32>,
    reps: Vec<u32>,
}

impl LayerQuotient {
    /// `H/K` for `K ⊴ H` with abelian quotient.
    pub fn new(g: &FiniteGroupTable, h: &Subgroup, k: &Subgroup) -> Result<Self> {
        if !k.is_subset_of(h) {
            return Err(Error::structural("K is not contained in H"));
        }
        let mut cid = vec![u32::MAX; g.order()];
        let mut reps: Vec<u32> = Vec::new();
        for &x in h.members() {
            if cid[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &y in k.members() {
                cid[g.mul(x, y) as usize] = c;
            }
        }
        if reps.len() * k.len() != h.len() {
            return Err(Error::structural("K is not a subgroup of H"));
        }
        let op = |i: u32, j: u32| cid[g.mul(reps[i as usize], reps[j as usize]) as usize];
        // H/K must be abelian for the layer to be a Lie ring component
        let idx: Vec<u32> = (0..reps.len() as u32).collect();
        if first_pair(&idx, &idx, |i, j| (op(i, j) != op(j, i)).then_some("abelian")).is_some() {
            return Err(Error::structural("H/K is not abelian"));
        }
        let identity = cid[g.identity() as usize];
        let pres = present_abelian(g.prime(), reps.len(), identity, op)?;
        let coset_of = cid
            .iter()
            .map(|&c| if c == u32::MAX { u32::MAX } else { pres.to_rank[c as usize] })
            .collect();
        let reps = pres.from_rank.iter().map(|&c| reps[c as usize]).collect();
        Ok(Self {
            group: pres.group,
            coset_of,
            reps,
        })
    }

    /// Rank of `xK`; `x` must lie in `H`.
    #[inline]
    pub fn coset(&self, x: u32) -> u32 {
        self.coset_of[x as usize]
    }

    pub fn contains(&self, x: u32) -> bool {
        self.coset_of[x as usize] != u32::MAX
    }

    #[inline]
    pub fn rep(&self, r: u32) -> u32 {
        self.reps[r as usize]
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }
}

/// `L(G) = ⊕_{i=1..c} G_i/G_{i+1}` with `[xG_{i+1}, yG_{j+1}] = (x,y)G_{i+j+1}`.
#[derive(Debug, Clone)]
pub struct GradedLieRing {
    pub components: Vec<LayerQuotient>,
    pub lie: LieRing,
    strides: Vec<usize>,
    to_rank: Vec<u32>,
    from_rank: Vec<u32>,
}

impl GradedLieRing {
    /// Rank in `L` of the element of degree `i` (1-based) with component rank `r`.
    pub fn embed(&self, i: usize, r: u32) -> u32 {
        self.to_rank[r as usize * self.strides[i - 1]]
    }

    /// Component ranks of an element of `L`, degree 1 first.
    pub fn decompose(&self, x: u32) -> Vec<u32> {
        let t = self.from_rank[x as usize] as usize;
        self.components
            .iter()
            .zip(&self.strides)
            .map(|(c, &s)| ((t / s) % c.order()) as u32)
            .collect()
    }

    pub fn class(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.lie.order()
    }

    /// Additive closure of the degree-`i` components.
    pub fn degree_span(&self, members: impl IntoIterator<Item = (usize, u32)>) -> Subgroup {
        self.lie
            .group()
            .subgroup_closure(members.into_iter().map(|(i, r)| self.embed(i, r)))
    }
}

/// Builds `L(G)`, checking that the bracket does not depend on coset
/// representatives and verifying the Lie axioms.
pub fn graded_lie_ring(g: &FiniteGroupTable) -> Result<GradedLieRing> {
    let series = g.lower_central_series();
    let c = series.len() - 1;
    let components = (0..c)
        .map(|i| LayerQuotient::new(g, &series[i], &series[i + 1]))
        .collect::<Result<Vec<_>>>()?;

    // bracket of degree i x degree j, on component ranks
    let mut blocks: Vec<Vec<Option<Vec<u32>>>> = vec![vec![None; c]; c];
    for i in 0..c {
        for j in 0..c {
            let (li, lj) = (&components[i], &components[j]);
            if i + j + 1 < c {
                let target = &components[i + j + 1];
                let table: Vec<u32> = (0..li.order() as u32)
                    .flat_map(|r| (0..lj.order() as u32).map(move |s| (r, s)))
                    .map(|(r, s)| target.coset(g.comm(li.rep(r), lj.rep(s))))
                    .collect();
                // every representative must give the same coset
                if let Some(v) = first_pair(series[i].members(), series[j].members(), |x, y| {
                    let want = table[li.coset(x) as usize * lj.order() + lj.coset(y) as usize];
                    (target.coset(g.comm(x, y)) != want).then_some("bracket independent of representatives")
                }) {
                    return Err(Error::Internal(format!(
                        "graded bracket depends on representatives at {:?}",
                        v.witness
                    )));
                }
                blocks[i][j] = Some(table);
            } else if let Some(v) = first_pair(series[i].members(), series[j].members(), |x, y| {
                (g.comm(x, y) != g.identity()).then_some("(G_i, G_j) ⊆ G_(c+1)")
            }) {
                return Err(Error::Internal(format!(
                    "commutator of degree > c is nontrivial at {:?}",
                    v.witness
                )));
            }
        }
    }

    let mut strides = Vec::with_capacity(c);
    let mut total = 1usize;
    for comp in &components {
        strides.push(total);
        total *= comp.order();
    }
    let decode = |t: usize| -> Vec<u32> {
        components
            .iter()
            .zip(&strides)
            .map(|(comp, &s)| ((t / s) % comp.order()) as u32)
            .collect()
    };
    let encode = |v: &[u32]| -> u32 { v.iter().zip(&strides).map(|(&r, &s)| r as usize * s).sum::<usize>() as u32 };
    let add = |a: u32, b: u32| {
        let (x, y) = (decode(a as usize), decode(b as usize));
        let z: Vec<u32> = components
            .iter()
            .enumerate()
            .map(|(i, comp)| comp.group.add(x[i], y[i]))
            .collect();
        encode(&z)
    };
    let pres = present_abelian(g.prime(), total, 0, add)?;
    let (to_rank, from_rank) = (pres.to_rank, pres.from_rank);
    let bracket = build_table(total, |u, v| {
        let x = decode(from_rank[u as usize] as usize);
        let y = decode(from_rank[v as usize] as usize);
        let mut z = vec![0u32; c];
        for i in 0..c {
            for j in 0..c {
                if let Some(t) = &blocks[i][j] {
                    let k = i + j + 1;
                    let term = t[x[i] as usize * components[j].order() + y[j] as usize];
                    z[k] = components[k].group.add(z[k], term);
                }
            }
        }
        to_rank[encode(&z) as usize]
    });
    let lie = LieRing::new(pres.group, bracket)?;
    Ok(GradedLieRing {
        components,
        lie,
        strides,
        to_rank,
        from_rank,
    })
}

/// `L(G, H) = ⊕ (H ∩ G_i)G_{i+1}/G_{i+1}` as an additive subgroup of `L(G)`,
/// with closure under the bracket verified.
pub fn lie_subring_of_subgroup(g: &FiniteGroupTable, l: &GradedLieRing, h: &Subgroup) -> Result<Subgroup> {
    if !g.is_subgroup(h) {
        return Err(Error::Contract("H is not a subgroup of G".into()));
    }
    let members = l.components.iter().enumerate().flat_map(|(i, comp)| {
        h.members()
            .iter()
            .filter(|&&x| comp.contains(x))
            .map(move |&x| (i + 1, comp.coset(x)))
    });
    let sub = l.degree_span(members.collect::<Vec<_>>());
    if let Some(v) = first_pair(sub.members(), sub.members(), |x, y| {
        (!sub.contains(l.lie.bracket(x, y))).then_some("[L(G,H), L(G,H)] ⊆ L(G,H)")
    }) {
        return Err(Error::Internal(format!("L(G,H) is not a subring at {:?}", v.witness)));
    }
    Ok(sub)
}

/// `M_i(G) = G^(p^i)/G^(p^(2i))` with `[x, y] = q⁻¹((x,y)G^(p^(3i)))`, where
/// `q(xG^(p^(2i))) = x^(p^i) G^(p^(3i))`.
#[derive(Debug, Clone)]
pub struct LazardLie {
    pub lie: LieRing,
    pub layer: LayerQuotient,
    pub image: LayerQuotient,
}

pub fn lazard_lie(g: &FiniteGroupTable, i: u32) -> Result<LazardLie> {
    if !g.is_uniform() {
        return Err(Error::hypothesis("G uniform", "G is not uniform"));
    }
    let e = g.log_exponent();
    if 3 * i > e {
        return Err(Error::hypothesis("0 <= i <= e/3", format!("i = {i}, e = {e}")));
    }
    let p = g.prime();
    let pi = p.pow(i);
    let g1 = g.power_subgroup(pi);
    let g2 = g.power_subgroup(pi * pi);
    let g3 = g.power_subgroup(pi * pi * pi);
    let layer = LayerQuotient::new(g, &g1, &g2)?;
    let image = LayerQuotient::new(g, &g2, &g3)?;
    if layer.order() != image.order() {
        return Err(Error::Internal("q is not a bijection".into()));
    }

    let q: Vec<u32> = (0..layer.order() as u32)
        .map(|r| image.coset(g.pow(layer.rep(r), pi)))
        .collect();
    if let Some(v) = crate::sweep::first_single(g1.members(), |x| {
        (image.coset(g.pow(x, pi)) != q[layer.coset(x) as usize]).then_some("q well defined")
    }) {
        return Err(Error::Internal(format!("q is not well defined at {:?}", v.witness)));
    }
    let mut q_inv = vec![u32::MAX; image.order()];
    for (r, &s) in q.iter().enumerate() {
        if q_inv[s as usize] != u32::MAX {
            return Err(Error::Internal("q is not injective".into()));
        }
        q_inv[s as usize] = r as u32;
    }
    let ranks: Vec<u32> = (0..layer.order() as u32).collect();
    if let Some(v) = first_pair(&ranks, &ranks, |a, b| {
        (q[layer.group.add(a, b) as usize] != image.group.add(q[a as usize], q[b as usize]))
            .then_some("q additive")
    }) {
        return Err(Error::Internal(format!("q is not a homomorphism at {:?}", v.witness)));
    }

    for &x in g1.members() {
        for &y in g1.members() {
            let c = g.comm(x, y);
            if !image.contains(c) {
                return Err(Error::Internal("(x,y) is not in G^(p^(2i))".into()));
            }
        }
    }
    let bracket = build_table(layer.order(), |a, b| {
        q_inv[image.coset(g.comm(layer.rep(a), layer.rep(b))) as usize]
    });
    if let Some(v) = first_pair(g1.members(), g1.members(), |x, y| {
        let want = q_inv[image.coset(g.comm(layer.rep(layer.coset(x)), layer.rep(layer.coset(y)))) as usize];
        (q_inv[image.coset(g.comm(x, y)) as usize] != want).then_some("bracket independent of representatives")
    }) {
        return Err(Error::Internal(format!(
            "M_i bracket depends on representatives at {:?}",
            v.witness
        )));
    }
    let lie = LieRing::new(layer.group.clone(), bracket)?;
    Ok(LazardLie { lie, layer, image })
}
