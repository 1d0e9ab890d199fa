//! Root and Weyl data for products of general linear groups with a split
//! torus, expansion of structured module descriptions into torus weight
//! systems, and stabilizer dimension bookkeeping for coordinate subspaces.
//!
//! Coordinates on the character lattice of the maximal torus: first the
//! diagonal entries of every GL block in order, then the torus factors.

use crate::linalg::Int;
use crate::poly::PolyElement;
use crate::polycone::LatVec;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::ops::Range;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group must have rank at least one")]
    EmptyGroup,
    #[error("GL block index {0} out of range")]
    BlockIndex(usize),
    #[error("torus twist has length {got}, expected the torus rank {expected}")]
    TwistLength { expected: usize, got: usize },
    #[error("weight column has length {got}, expected rank {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("representation kernel is not finite: weights span rank {rank} of {expected}")]
    KernelNotFinite { rank: usize, expected: usize },
    #[error("raw weight columns are only supported for torus groups")]
    RawWeightsNeedTorus,
    #[error("stabilizer computation needs a structured module description")]
    UnstructuredModule,
}

/// `G = GL(n_1) x ... x GL(n_s) x (split torus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub gl_blocks: Vec<usize>,
    pub torus_rank: usize,
}

impl GroupSpec {
    pub fn new(gl_blocks: Vec<usize>, torus_rank: usize) -> Result<Self, GroupError> {
        if gl_blocks.iter().any(|&n| n == 0) {
            return Err(GroupError::EmptyGroup);
        }
        let spec = GroupSpec { gl_blocks, torus_rank };
        if spec.rank() == 0 {
            return Err(GroupError::EmptyGroup);
        }
        Ok(spec)
    }

    pub fn torus(rank: usize) -> Result<Self, GroupError> {
        Self::new(Vec::new(), rank)
    }

    /// Rank of the maximal torus.
    pub fn rank(&self) -> usize {
        self.gl_blocks.iter().sum::<usize>() + self.torus_rank
    }

    pub fn dim_group(&self) -> usize {
        self.gl_blocks.iter().map(|n| n * n).sum::<usize>() + self.torus_rank
    }

    pub fn is_torus(&self) -> bool {
        self.gl_blocks.is_empty()
    }

    /// Coordinate range of a GL block inside the rank-`l` lattice.
    pub fn block_range(&self, j: usize) -> Range<usize> {
        let start: usize = self.gl_blocks[..j].iter().sum();
        start..start + self.gl_blocks[j]
    }

    pub fn torus_range(&self) -> Range<usize> {
        let start: usize = self.gl_blocks.iter().sum();
        start..start + self.torus_rank
    }

    /// Rank of the character group of `G` itself (one det per block plus the
    /// torus factors).
    pub fn char_rank(&self) -> usize {
        self.gl_blocks.len() + self.torus_rank
    }
}

/// One summand of the module description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    /// One-dimensional module on which the torus factor acts by `weight`.
    TorusChar { weight: Vec<Int> },
    /// Standard representation of a GL block, twisted by a torus character.
    Std { block: usize, twist: Vec<Int> },
    /// Dual of the standard representation, twisted by a torus character.
    DualStd { block: usize, twist: Vec<Int> },
    /// `Hom(std_src, std_dst)` between two GL blocks.
    Hom { src: usize, dst: usize },
    /// Raw torus weights with per-column multiplicities (torus groups only).
    Weights { columns: Vec<Vec<Int>>, multiplicities: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub summands: Vec<(Summand, usize)>,
}

impl ModuleSpec {
    pub fn new(summands: Vec<(Summand, usize)>) -> Self {
        ModuleSpec { summands }
    }
}

/// One weight column of the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightColumn {
    pub weight: LatVec,
    pub multiplicity: usize,
    pub label: String,
}

/// A weight system: the torus weights of the module with multiplicities,
/// plus enough structure to act on columns by roots and Weyl elements.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    rank: usize,
    columns: Vec<WeightColumn>,
    summand_cols: Vec<(Summand, Range<usize>)>,
}

impl WeightSystem {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> &[WeightColumn] {
        &self.columns
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    /// Dimension of the module.
    pub fn total_dim(&self) -> usize {
        self.columns.iter().map(|c| c.multiplicity).sum()
    }

    pub fn weight(&self, a: usize) -> &LatVec {
        &self.columns[a].weight
    }

    pub fn is_structured(&self) -> bool {
        !self
            .summand_cols
            .iter()
            .any(|(s, _)| matches!(s, Summand::Weights { .. }))
    }

    /// Column permutation induced by a Weyl element.
    pub fn column_permutation(&self, spec: &GroupSpec, w: &WeylElement) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.columns.len()).collect();
        for (s, range) in &self.summand_cols {
            match s {
                Summand::TorusChar { .. } | Summand::Weights { .. } => {}
                Summand::Std { block, .. } | Summand::DualStd { block, .. } => {
                    let br = spec.block_range(*block);
                    for i in 0..br.len() {
                        let target = w.perm[br.start + i] - br.start;
                        perm[range.start + i] = range.start + target;
                    }
                }
                Summand::Hom { src, dst } => {
                    let sr = spec.block_range(*src);
                    let dr = spec.block_range(*dst);
                    let nd = dr.len();
                    for p in 0..sr.len() {
                        for q in 0..nd {
                            let tp = w.perm[sr.start + p] - sr.start;
                            let tq = w.perm[dr.start + q] - dr.start;
                            perm[range.start + p * nd + q] = range.start + tp * nd + tq;
                        }
                    }
                }
            }
        }
        perm
    }

    /// Arrows `from -> to` between columns induced by the root vector
    /// `E_{ab}` (global coordinate indices `a != b` in one GL block).
    fn root_arrows(&self, spec: &GroupSpec, block: usize, a: usize, b: usize) -> Vec<(usize, usize)> {
        let br = spec.block_range(block);
        let la = a - br.start;
        let lb = b - br.start;
        let mut arrows = Vec::new();
        for (s, range) in &self.summand_cols {
            match s {
                Summand::TorusChar { .. } | Summand::Weights { .. } => {}
                Summand::Std { block: j, .. } => {
                    if *j == block {
                        // e_b -> e_a
                        arrows.push((range.start + lb, range.start + la));
                    }
                }
                Summand::DualStd { block: j, .. } => {
                    if *j == block {
                        // e*_a -> -e*_b
                        arrows.push((range.start + la, range.start + lb));
                    }
                }
                Summand::Hom { src, dst } => {
                    let nd = spec.block_range(*dst).len();
                    let ns = spec.block_range(*src).len();
                    if *dst == block {
                        for p in 0..ns {
                            arrows.push((range.start + p * nd + lb, range.start + p * nd + la));
                        }
                    }
                    if *src == block {
                        for q in 0..nd {
                            arrows.push((range.start + la * nd + q, range.start + lb * nd + q));
                        }
                    }
                }
            }
        }
        arrows
    }

    /// True when some cocharacter pairs strictly positively with every
    /// weight; then the only invariant functions are the constants.
    pub fn weights_in_open_halfspace(&self) -> bool {
        use crate::linalg::{cone_member, ConeSolve, Rat};
        // 0 is not in the convex hull of the weights iff they fit in an
        // open halfspace: test via the homogenizing row.
        let mut cols: Vec<Vec<Rat>> = Vec::new();
        for c in &self.columns {
            let mut v = c.weight.to_rat();
            v.push(Rat::one());
            cols.push(v);
        }
        let mut target = vec![Rat::zero(); self.rank];
        target.push(Rat::one());
        matches!(cone_member(&cols, &target), ConeSolve::Separator(_))
    }
}

/// An element of the Weyl group: a block permutation of the torus
/// coordinates together with its determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub sign: i8,
}

impl WeylElement {
    pub fn apply_vec(&self, v: &LatVec) -> LatVec {
        let mut out = vec![Int::zero(); v.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = v.0[i].clone();
        }
        LatVec(out)
    }

    pub fn apply_poly(&self, f: &PolyElement) -> PolyElement {
        f.permute_variables(&self.perm)
    }
}

/// Root and Weyl data of the group.
#[derive(Clone, Debug)]
pub struct GroupData {
    spec: GroupSpec,
    positive_roots: Vec<LatVec>,
    char_basis: Vec<LatVec>,
}

impl GroupData {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn dim_group(&self) -> usize {
        self.spec.dim_group()
    }

    /// Positive roots `t_i - t_{i'}`, `i < i'` inside each block.
    pub fn positive_roots(&self) -> &[LatVec] {
        &self.positive_roots
    }

    /// Basis of the character group of `G` inside the torus characters: the
    /// det vector of each block followed by the torus unit vectors.
    pub fn char_basis(&self) -> &[LatVec] {
        &self.char_basis
    }

    pub fn char_rank(&self) -> usize {
        self.char_basis.len()
    }

    pub fn weyl_order(&self) -> u128 {
        self.spec.gl_blocks.iter().map(|&n| factorial(n)).product()
    }

    /// Iterate over the Weyl group as block permutations with signs.
    /// Per-block permutations are materialized, the product is streamed.
    pub fn weyl_elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        let rank = self.rank();
        let blocks: Vec<(Range<usize>, Vec<(Vec<usize>, i8)>)> = self
            .spec
            .gl_blocks
            .iter()
            .enumerate()
            .map(|(j, &n)| (self.spec.block_range(j), permutations_with_sign(n)))
            .collect();
        let total: u128 = blocks.iter().map(|(_, p)| p.len() as u128).product();
        (0..total).map(move |mut idx| {
            let mut perm: Vec<usize> = (0..rank).collect();
            let mut sign = 1i8;
            for (range, perms) in &blocks {
                let k = (idx % perms.len() as u128) as usize;
                idx /= perms.len() as u128;
                let (p, s) = &perms[k];
                for (i, &pi) in p.iter().enumerate() {
                    perm[range.start + i] = range.start + pi;
                }
                sign *= s;
            }
            WeylElement { perm, sign }
        })
    }

    /// Product of the positive roots; the trivial group gives 1.
    pub fn discriminant(&self) -> PolyElement {
        let mut d = PolyElement::one(self.rank());
        for r in &self.positive_roots {
            d = d.mul(&PolyElement::linear_form(r));
        }
        d
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i8)>) {
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// A character of `G` in the det/torus basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    pub coords: Vec<Int>,
}

impl Character {
    pub fn from_i64(coords: &[i64]) -> Self {
        Character { coords: coords.iter().map(|&c| Int::from(c)).collect() }
    }

    pub fn zero(char_rank: usize) -> Self {
        Character { coords: vec![Int::zero(); char_rank] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Int::is_zero)
    }

    /// Embed into the torus character lattice: det of block `j` goes to the
    /// all-ones vector on that block.
    pub fn embed(&self, spec: &GroupSpec) -> LatVec {
        assert_eq!(self.coords.len(), spec.char_rank());
        let mut v = vec![Int::zero(); spec.rank()];
        for (j, c) in self.coords[..spec.gl_blocks.len()].iter().enumerate() {
            for i in spec.block_range(j) {
                v[i] = c.clone();
            }
        }
        for (k, c) in self.coords[spec.gl_blocks.len()..].iter().enumerate() {
            v[spec.torus_range().start + k] = c.clone();
        }
        LatVec(v)
    }
}

/// A one-parameter subgroup of the maximal torus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cocharacter(pub LatVec);

/// Expand a module description over a group into its weight system.
pub fn build_group(spec: &GroupSpec, module: &ModuleSpec) -> Result<(GroupData, WeightSystem), GroupError> {
    let rank = spec.rank();
    if rank == 0 {
        return Err(GroupError::EmptyGroup);
    }
    let embed_twist = |twist: &[Int]| -> Result<Vec<Int>, GroupError> {
        if twist.len() != spec.torus_rank {
            return Err(GroupError::TwistLength { expected: spec.torus_rank, got: twist.len() });
        }
        let mut v = vec![Int::zero(); rank];
        for (k, c) in twist.iter().enumerate() {
            v[spec.torus_range().start + k] = c.clone();
        }
        Ok(v)
    };
    let check_block = |j: usize| -> Result<(), GroupError> {
        if j >= spec.gl_blocks.len() {
            return Err(GroupError::BlockIndex(j));
        }
        Ok(())
    };

    let mut columns: Vec<WeightColumn> = Vec::new();
    let mut summand_cols: Vec<(Summand, Range<usize>)> = Vec::new();
    for (si, (s, mult)) in module.summands.iter().enumerate() {
        let start = columns.len();
        match s {
            Summand::TorusChar { weight } => {
                let v = embed_twist(weight)?;
                columns.push(WeightColumn {
                    weight: LatVec(v),
                    multiplicity: *mult,
                    label: format!("s{si}:torus_char"),
                });
            }
            Summand::Std { block, twist } => {
                check_block(*block)?;
                let tw = embed_twist(twist)?;
                for (i, coord) in spec.block_range(*block).enumerate() {
                    let mut v = tw.clone();
                    v[coord] += Int::one();
                    columns.push(WeightColumn {
                        weight: LatVec(v),
                        multiplicity: *mult,
                        label: format!("s{si}:std(b{block})[{i}]"),
                    });
                }
            }
            Summand::DualStd { block, twist } => {
                check_block(*block)?;
                let tw = embed_twist(twist)?;
                for (i, coord) in spec.block_range(*block).enumerate() {
                    let mut v = tw.clone();
                    v[coord] -= Int::one();
                    columns.push(WeightColumn {
                        weight: LatVec(v),
                        multiplicity: *mult,
                        label: format!("s{si}:dual_std(b{block})[{i}]"),
                    });
                }
            }
            Summand::Hom { src, dst } => {
                check_block(*src)?;
                check_block(*dst)?;
                let sr = spec.block_range(*src);
                let dr = spec.block_range(*dst);
                for (p, ps) in sr.clone().enumerate() {
                    for (q, qs) in dr.clone().enumerate() {
                        let mut v = vec![Int::zero(); rank];
                        v[qs] += Int::one();
                        v[ps] -= Int::one();
                        columns.push(WeightColumn {
                            weight: LatVec(v),
                            multiplicity: *mult,
                            label: format!("s{si}:hom(b{src},b{dst})[{p},{q}]"),
                        });
                    }
                }
            }
            Summand::Weights { columns: cols, multiplicities } => {
                if !spec.is_torus() {
                    return Err(GroupError::RawWeightsNeedTorus);
                }
                for (i, w) in cols.iter().enumerate() {
                    if w.len() != rank {
                        return Err(GroupError::WeightLength { expected: rank, got: w.len() });
                    }
                    let m = multiplicities.get(i).copied().unwrap_or(1);
                    columns.push(WeightColumn {
                        weight: LatVec(w.clone()),
                        multiplicity: m * mult,
                        label: format!("s{si}:weights[{i}]"),
                    });
                }
            }
        }
        summand_cols.push((s.clone(), start..columns.len()));
    }

    let rows: Vec<Vec<crate::linalg::Rat>> = columns.iter().map(|c| c.weight.to_rat()).collect();
    let wrank = crate::linalg::rank(&rows);
    if wrank != rank {
        return Err(GroupError::KernelNotFinite { rank: wrank, expected: rank });
    }

    let mut positive_roots = Vec::new();
    for j in 0..spec.gl_blocks.len() {
        let br = spec.block_range(j);
        for i in br.clone() {
            for i2 in i + 1..br.end {
                let mut v = vec![Int::zero(); rank];
                v[i] = Int::one();
                v[i2] = -Int::one();
                positive_roots.push(LatVec(v));
            }
        }
    }
    let mut char_basis = Vec::new();
    for j in 0..spec.gl_blocks.len() {
        let mut v = vec![Int::zero(); rank];
        for i in spec.block_range(j) {
            v[i] = Int::one();
        }
        char_basis.push(LatVec(v));
    }
    for k in spec.torus_range() {
        let mut v = vec![Int::zero(); rank];
        v[k] = Int::one();
        char_basis.push(LatVec(v));
    }

    let gd = GroupData { spec: spec.clone(), positive_roots, char_basis };
    let ws = WeightSystem { rank, columns, summand_cols };
    Ok((gd, ws))
}

/// Parabolic, stabilizer and orbit dimensions for the coordinate subspace
/// spanned by the supported columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerDims {
    /// Dimension of the parabolic subgroup attached to the cocharacter.
    pub dim_parabolic: usize,
    /// Dimension of the Lie-algebra stabilizer of the subspace in `G`.
    pub dim_stabilizer: usize,
    /// Codimension of the subspace itself.
    pub codim_subspace: usize,
    /// Codimension of the orbit sweep `G . E`: the subspace codimension
    /// plus the stabilizer dimension minus the group dimension, truncated
    /// at zero. The count assumes the sweep map is generically finite;
    /// zero therefore means the bound is not conclusive and the sweep may
    /// be dense.
    pub codim_orbit: usize,
}

pub fn stabilizer_dims(
    gd: &GroupData,
    ws: &WeightSystem,
    lambda: &Cocharacter,
    support: &BTreeSet<usize>,
) -> Result<StabilizerDims, GroupError> {
    if !ws.is_structured() && !gd.spec().is_torus() {
        return Err(GroupError::UnstructuredModule);
    }
    let rank = gd.rank();
    let mut dim_parabolic = rank;
    for r in gd.positive_roots() {
        for root in [r.clone(), r.neg()] {
            if !root.dot(&lambda.0).is_negative() {
                dim_parabolic += 1;
            }
        }
    }
    let mut dim_stabilizer = rank;
    for j in 0..gd.spec().gl_blocks.len() {
        let br = gd.spec().block_range(j);
        for a in br.clone() {
            for b in br.clone() {
                if a == b {
                    continue;
                }
                let arrows = ws.root_arrows(gd.spec(), j, a, b);
                let stable = arrows
                    .iter()
                    .all(|(from, to)| !(support.contains(from) && !support.contains(to)));
                if stable {
                    dim_stabilizer += 1;
                }
            }
        }
    }
    let codim_subspace: usize = ws
        .columns()
        .iter()
        .enumerate()
        .filter(|(a, _)| !support.contains(a))
        .map(|(_, c)| c.multiplicity)
        .sum();
    let codim_orbit = (codim_subspace + dim_stabilizer).saturating_sub(gd.dim_group());
    Ok(StabilizerDims { dim_parabolic, dim_stabilizer, codim_subspace, codim_orbit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl2_hom_k2_k4() -> (GroupData, WeightSystem) {
        let spec = GroupSpec::new(vec![2], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 4)]);
        build_group(&spec, &module).unwrap()
    }

    #[test]
    fn gl2_root_data() {
        let (gd, _) = gl2_hom_k2_k4();
        assert_eq!(gd.positive_roots(), &[LatVec::from_i64(&[1, -1])]);
        assert_eq!(gd.weyl_order(), 2);
        assert_eq!(gd.discriminant().to_string(), "t1 - t2");
        assert_eq!(gd.dim_group(), 4);
    }

    #[test]
    fn std_mult4_weights() {
        let (_, ws) = gl2_hom_k2_k4();
        assert_eq!(ws.num_columns(), 2);
        assert_eq!(ws.weight(0), &LatVec::from_i64(&[1, 0]));
        assert_eq!(ws.weight(1), &LatVec::from_i64(&[0, 1]));
        assert_eq!(ws.columns()[0].multiplicity, 4);
        assert_eq!(ws.total_dim(), 8);
    }

    #[test]
    fn pure_torus_data() {
        let spec = GroupSpec::torus(2).unwrap();
        let module = ModuleSpec::new(vec![(
            Summand::Weights {
                columns: vec![vec![Int::from(1), Int::from(0)], vec![Int::from(0), Int::from(1)]],
                multiplicities: vec![1, 1],
            },
            1,
        )]);
        let (gd, _) = build_group(&spec, &module).unwrap();
        assert!(gd.positive_roots().is_empty());
        assert_eq!(gd.weyl_order(), 1);
        assert_eq!(gd.discriminant(), PolyElement::one(2));
    }

    #[test]
    fn kernel_finiteness_rejected() {
        let spec = GroupSpec::torus(2).unwrap();
        let module = ModuleSpec::new(vec![(
            Summand::Weights {
                columns: vec![vec![Int::from(1), Int::from(0)], vec![Int::from(2), Int::from(0)]],
                multiplicities: vec![1, 1],
            },
            1,
        )]);
        assert_eq!(
            build_group(&spec, &module).unwrap_err(),
            GroupError::KernelNotFinite { rank: 1, expected: 2 }
        );
    }

    #[test]
    fn character_embedding() {
        let spec = GroupSpec::new(vec![2], 0).unwrap();
        assert_eq!(Character::from_i64(&[1]).embed(&spec), LatVec::from_i64(&[1, 1]));
        assert_eq!(Character::from_i64(&[3]).embed(&spec), LatVec::from_i64(&[3, 3]));
        let tspec = GroupSpec::torus(2).unwrap();
        assert_eq!(Character::from_i64(&[2, -1]).embed(&tspec), LatVec::from_i64(&[2, -1]));
    }

    #[test]
    fn discriminant_antisymmetry() {
        let spec = GroupSpec::new(vec![3], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 1)]);
        let (gd, _) = build_group(&spec, &module).unwrap();
        let delta = gd.discriminant();
        assert_eq!(gd.positive_roots().len() as u32, delta.degree());
        for w in gd.weyl_elements() {
            let img = w.apply_poly(&delta);
            let expect = delta.scale(&crate::linalg::rat(w.sign as i64));
            assert_eq!(img, expect);
        }
    }

    #[test]
    fn parabolic_dimensions() {
        let (gd, ws) = gl2_hom_k2_k4();
        let full: BTreeSet<usize> = [0, 1].into();
        let lam = Cocharacter(LatVec::from_i64(&[0, -1]));
        let dims = stabilizer_dims(&gd, &ws, &lam, &full).unwrap();
        assert_eq!(dims.dim_parabolic, 3);
        let central = Cocharacter(LatVec::from_i64(&[1, 1]));
        let dims = stabilizer_dims(&gd, &ws, &central, &full).unwrap();
        assert_eq!(dims.dim_parabolic, 4);
    }

    #[test]
    fn rank_one_locus_dimensions() {
        // Second weight row forced to vanish: the subspace of matrices of
        // rank at most one with fixed image line.
        let (gd, ws) = gl2_hom_k2_k4();
        let support: BTreeSet<usize> = [0].into();
        let lam = Cocharacter(LatVec::from_i64(&[0, -1]));
        let dims = stabilizer_dims(&gd, &ws, &lam, &support).unwrap();
        assert_eq!(dims.dim_stabilizer, 3); // a Borel
        assert_eq!(dims.codim_subspace, 4);
        assert_eq!(dims.codim_orbit, 3); // rank <= 1 matrices in a 2x4 space
        assert!(dims.dim_parabolic <= dims.dim_stabilizer);
    }

    #[test]
    fn weyl_column_action() {
        let (gd, ws) = gl2_hom_k2_k4();
        let swap = gd.weyl_elements().find(|w| w.sign == -1).unwrap();
        assert_eq!(ws.column_permutation(gd.spec(), &swap), vec![1, 0]);
    }

    #[test]
    fn hom_summand_weights() {
        // A hom summand alone has infinite kernel (the diagonal centre acts
        // trivially); the std summand restores finiteness.
        let spec = GroupSpec::new(vec![2, 2], 0).unwrap();
        let module = ModuleSpec::new(vec![
            (Summand::Hom { src: 0, dst: 1 }, 1),
            (Summand::Std { block: 0, twist: vec![] }, 1),
        ]);
        let (_, ws) = build_group(&spec, &module).unwrap();
        assert_eq!(ws.num_columns(), 6);
        assert_eq!(ws.weight(0), &LatVec::from_i64(&[-1, 0, 1, 0]));
        assert_eq!(ws.weight(3), &LatVec::from_i64(&[0, -1, 0, 1]));
        assert_eq!(ws.weight(4), &LatVec::from_i64(&[1, 0, 0, 0]));
    }

    #[test]
    fn open_halfspace_detector() {
        let (_, ws) = gl2_hom_k2_k4();
        assert!(ws.weights_in_open_halfspace());
        let spec = GroupSpec::torus(1).unwrap();
        let module = ModuleSpec::new(vec![(
            Summand::Weights {
                columns: vec![vec![Int::from(1)], vec![Int::from(-1)]],
                multiplicities: vec![1, 1],
            },
            1,
        )]);
        let (_, ws2) = build_group(&spec, &module).unwrap();
        assert!(!ws2.weights_in_open_halfspace());
    }
}
