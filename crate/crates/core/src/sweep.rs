//! Exhaustive identity sweeps over index cubes, parallel over the first axis.
//!
//! Results are deterministic regardless of thread count: the reported witness
//! is always the lexicographically first failing tuple.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// A failed identity and the first tuple (as element ranks) where it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: &'static str,
    pub witness: Vec<u32>,
}

impl Violation {
    pub fn new(identity: &'static str, witness: Vec<u32>) -> Self {
        Self { identity, witness }
    }
}

/// Outcome of an axiom sweep; `failure` holds the first violation found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checked: Vec<&'static str>,
    pub failure: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.failure {
            None => Ok(()),
            Some(v) => Err(Error::Axiom {
                identity: v.identity,
                witness: v.witness,
            }),
        }
    }
}

pub fn first_single<F>(xs: &[u32], f: F) -> Option<Violation>
where
    F: Fn(u32) -> Option<&'static str> + Sync,
{
    xs.par_iter()
        .find_map_first(|&x| f(x).map(|id| Violation::new(id, vec![x])))
}

pub fn first_pair<F>(xs: &[u32], ys: &[u32], f: F) -> Option<Violation>
where
    F: Fn(u32, u32) -> Option<&'static str> + Sync,
{
    xs.par_iter().find_map_first(|&x| {
        ys.iter()
            .find_map(|&y| f(x, y).map(|id| Violation::new(id, vec![x, y])))
    })
}

pub fn first_triple<F>(xs: &[u32], ys: &[u32], zs: &[u32], f: F) -> Option<Violation>
where
    F: Fn(u32, u32, u32) -> Option<&'static str> + Sync,
{
    xs.par_iter().find_map_first(|&x| {
        for &y in ys {
            for &z in zs {
                if let Some(id) = f(x, y, z) {
                    return Some(Violation::new(id, vec![x, y, z]));
                }
            }
        }
        None
    })
}

/// `0..n` as a rank list.
pub fn all(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

/// Builds an `n x n` table row by row in parallel.
pub fn build_table<F>(n: usize, f: F) -> Vec<u32>
where
    F: Fn(u32, u32) -> u32 + Sync,
{
    let mut table = vec![0u32; n * n];
    if n == 0 {
        return table;
    }
    table.par_chunks_mut(n).enumerate().for_each(|(a, row)| {
        for (b, slot) in row.iter_mut().enumerate() {
            *slot = f(a as u32, b as u32);
        }
    });
    table
}
