//! Double description conversion between the two representations of a
//! rational polyhedral cone.
//!
//! `dual_description` takes inequality normals and returns the lineality
//! space together with the extreme rays modulo lineality. The lineality
//! space is split off first (it is the exact kernel of the normal matrix),
//! the pointed part is handled by incremental insertion starting from an
//! invertible subsystem, and pairs of rays are combined only when the
//! Fukuda-Prodon combinatorial adjacency test passes. All pivots are exact
//! big rationals, so the output is bit-for-bit reproducible.

use super::LatVec;
use crate::linalg::{self, Int, Rat};
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }
}

struct Ray {
    coords: Vec<Rat>,          // in the complement coordinates
    tight: BitSet,             // inserted inequalities satisfied with equality
}

/// Generators of `{x : <n, x> >= 0 for all n in normals}`.
///
/// Returns `(lineality, rays)`: `lineality` is the canonical (RREF, primitive)
/// basis of the largest linear subspace inside the cone, `rays` are the
/// extreme rays reduced modulo lineality, primitive, lexicographically sorted.
pub fn dual_description(rank: usize, normals: &[LatVec]) -> (Vec<LatVec>, Vec<LatVec>) {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for n in normals {
        assert_eq!(n.len(), rank, "normal has wrong length");
        if !n.is_zero() && !rows.iter().any(|r| r == &n.to_rat()) {
            rows.push(n.to_rat());
        }
    }
    let lineality = linalg::kernel_basis(&rows, rank);
    let lin_dim = lineality.len();
    let lineality: Vec<LatVec> = lineality.iter().map(|v| LatVec::from_rats(v)).collect();
    if rows.is_empty() {
        return (lineality, Vec::new());
    }

    // Pivot columns of the lineality RREF; the complement coordinates carry
    // the pointed part of the cone.
    let pivot_cols: Vec<usize> = {
        let mut m: Vec<Vec<Rat>> = lineality.iter().map(|v| v.to_rat()).collect();
        linalg::rref(&mut m)
    };
    let free_cols: Vec<usize> = (0..rank).filter(|c| !pivot_cols.contains(c)).collect();
    let p = free_cols.len();
    debug_assert_eq!(p, rank - lin_dim);
    if p == 0 {
        return (lineality, Vec::new());
    }

    // Restrict the inequalities to the complement coordinates.
    let m_rows: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| free_cols.iter().map(|&c| r[c].clone()).collect())
        .collect();

    // An invertible p x p subsystem to start from.
    let start = independent_rows(&m_rows, p);
    let inv = invert(&start.iter().map(|&i| m_rows[i].clone()).collect::<Vec<_>>());

    let nrows = m_rows.len();
    let mut rays: Vec<Ray> = Vec::new();
    for j in 0..p {
        let coords: Vec<Rat> = (0..p).map(|i| inv[i][j].clone()).collect();
        let mut tight = BitSet::new(nrows);
        for (idx, &row) in start.iter().enumerate() {
            if idx != j {
                tight.set(row);
            }
        }
        rays.push(Ray { coords, tight });
    }

    let mut processed: Vec<usize> = start.clone();
    for row in 0..nrows {
        if start.contains(&row) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|r| linalg::dot_rat(&m_rows[row], &r.coords)).collect();
        let has_neg = vals.iter().any(|v| v.is_negative());
        if !has_neg {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(row);
                }
            }
            processed.push(row);
            continue;
        }
        let mut fresh: Vec<Ray> = Vec::new();
        for ip in 0..rays.len() {
            if !vals[ip].is_positive() {
                continue;
            }
            for iq in 0..rays.len() {
                if !vals[iq].is_negative() {
                    continue;
                }
                let meet = rays[ip].tight.intersect(&rays[iq].tight);
                let adjacent = !rays.iter().enumerate().any(|(ir, r)| {
                    ir != ip && ir != iq && meet.is_subset(&r.tight)
                });
                if !adjacent {
                    continue;
                }
                let coords: Vec<Rat> = rays[ip]
                    .coords
                    .iter()
                    .zip(&rays[iq].coords)
                    .map(|(pc, qc)| &vals[ip] * qc - &vals[iq] * pc)
                    .collect();
                let coords = normalize(coords);
                let mut tight = BitSet::new(nrows);
                for &pr in processed.iter() {
                    if linalg::dot_rat(&m_rows[pr], &coords).is_zero() {
                        tight.set(pr);
                    }
                }
                tight.set(row);
                fresh.push(Ray { coords, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (ray, v) in rays.into_iter().zip(vals) {
            if !v.is_negative() {
                let mut ray = ray;
                if v.is_zero() {
                    ray.tight.set(row);
                }
                kept.push(ray);
            }
        }
        kept.extend(fresh);
        rays = kept;
        processed.push(row);
    }

    // Back to ambient coordinates: zeros on the lineality pivot columns.
    let mut out: Vec<LatVec> = rays
        .iter()
        .map(|r| {
            let mut full = vec![Rat::zero(); rank];
            for (i, &c) in free_cols.iter().enumerate() {
                full[c] = r.coords[i].clone();
            }
            LatVec::from_rats(&full)
        })
        .collect();
    out.sort();
    out.dedup();
    (lineality, out)
}

fn normalize(v: Vec<Rat>) -> Vec<Rat> {
    linalg::primitive(&v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

/// Indices of `p` linearly independent rows, chosen greedily in input order.
fn independent_rows(rows: &[Vec<Rat>], p: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut staged: Vec<Vec<Rat>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        staged.push(r.clone());
        if linalg::rank(&staged) == staged.len() {
            chosen.push(i);
            if chosen.len() == p {
                return chosen;
            }
        } else {
            staged.pop();
        }
    }
    unreachable!("inequality matrix does not have full rank on the pointed part");
}

fn invert(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let p = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..p).map(|j| if i == j { Rat::from_integer(Int::from(1)) } else { Rat::zero() }));
            r
        })
        .collect();
    let piv = linalg::rref(&mut aug);
    debug_assert_eq!(piv, (0..p).collect::<Vec<_>>());
    aug.iter().map(|r| r[p..].to_vec()).collect()
}
