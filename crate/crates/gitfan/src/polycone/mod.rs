//! Exact rational convex-polyhedral kernel.
//!
//! Cones carry both of their descriptions at all times: extreme rays plus a
//! lineality basis on the generator side, facet normals plus a basis of the
//! span's orthogonal complement on the inequality side. Both sides are kept
//! canonical (primitive vectors, RREF bases, lexicographic order), so cone
//! equality is plain structural equality and duality is a swap of the two
//! sides.

mod arrangement;
mod dd;

pub use arrangement::arrangement_chambers;
pub use dd::dual_description;

use crate::linalg::{self, Int, Rat};
use num_traits::{Signed, Zero};
use std::fmt;

/// Integer lattice vector. Rays, facet normals, weights and characters are
/// all carried as primitive `LatVec`s.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LatVec(pub Vec<Int>);

impl LatVec {
    pub fn new(coords: Vec<Int>) -> Self {
        LatVec(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatVec(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        LatVec(vec![Int::zero(); len])
    }

    /// Primitive integer vector in the direction of a rational vector.
    pub fn from_rats(v: &[Rat]) -> Self {
        LatVec(linalg::primitive(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Int::is_zero)
    }

    pub fn dot(&self, other: &LatVec) -> Int {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        linalg::to_rat_vec(&self.0)
    }

    pub fn neg(&self) -> LatVec {
        LatVec(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &LatVec) -> LatVec {
        LatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divide by the gcd of the entries (direction preserved).
    pub fn primitive(&self) -> LatVec {
        LatVec::from_rats(&self.to_rat())
    }
}

impl fmt::Display for LatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("vector of length {got} in ambient rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cones of different ambient rank: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// Membership mode: the closed cone or its relative interior.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    Boundary,
    RelativeInterior,
}

/// A rational convex polyhedral cone with both descriptions canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatCone {
    rank: usize,
    extreme_rays: Vec<LatVec>,
    lineality: Vec<LatVec>,
    facet_normals: Vec<LatVec>,
    span_perp: Vec<LatVec>,
}

impl RatCone {
    /// Canonical cone generated by `rays` (zero vectors ignored).
    pub fn from_rays(rank: usize, rays: &[LatVec]) -> Result<RatCone, ConeError> {
        for r in rays {
            if r.len() != rank {
                return Err(ConeError::DimensionMismatch { expected: rank, got: r.len() });
            }
        }
        let (span_perp, facet_normals) = dual_description(rank, rays);
        let (lineality, extreme_rays) = dual_description(rank, &with_pairs(&facet_normals, &span_perp));
        Ok(RatCone { rank, extreme_rays, lineality, facet_normals, span_perp })
    }

    /// Canonical cone `{x : <n, x> >= 0 for all n}` (zero normals ignored).
    pub fn from_inequalities(rank: usize, normals: &[LatVec]) -> Result<RatCone, ConeError> {
        for n in normals {
            if n.len() != rank {
                return Err(ConeError::DimensionMismatch { expected: rank, got: n.len() });
            }
        }
        let (lineality, extreme_rays) = dual_description(rank, normals);
        let (span_perp, facet_normals) = dual_description(rank, &with_pairs(&extreme_rays, &lineality));
        Ok(RatCone { rank, extreme_rays, lineality, facet_normals, span_perp })
    }

    pub fn zero(rank: usize) -> RatCone {
        RatCone::from_rays(rank, &[]).unwrap()
    }

    pub fn full(rank: usize) -> RatCone {
        RatCone::from_inequalities(rank, &[]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.rank - self.span_perp.len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_zero_cone(&self) -> bool {
        self.dim() == 0
    }

    pub fn extreme_rays(&self) -> &[LatVec] {
        &self.extreme_rays
    }

    pub fn lineality_basis(&self) -> &[LatVec] {
        &self.lineality
    }

    pub fn facet_normals(&self) -> &[LatVec] {
        &self.facet_normals
    }

    pub fn span_perp_basis(&self) -> &[LatVec] {
        &self.span_perp
    }

    /// V-description per the interface contract: extreme rays plus a `+-v`
    /// pair for each lineality basis vector, lexicographically sorted.
    pub fn rays(&self) -> Vec<LatVec> {
        let mut out = self.extreme_rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.neg());
        }
        out.sort();
        out
    }

    /// H-description: facet normals plus a `+-n` pair for each equality
    /// cutting out the span, lexicographically sorted.
    pub fn facets(&self) -> Vec<LatVec> {
        let mut out = self.facet_normals.clone();
        for s in &self.span_perp {
            out.push(s.clone());
            out.push(s.neg());
        }
        out.sort();
        out
    }

    /// Dual cone `{y : <y, x> >= 0 for all x in self}`.
    pub fn dual(&self) -> RatCone {
        RatCone {
            rank: self.rank,
            extreme_rays: self.facet_normals.clone(),
            lineality: self.span_perp.clone(),
            facet_normals: self.extreme_rays.clone(),
            span_perp: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &RatCone) -> Result<RatCone, ConeError> {
        if self.rank != other.rank {
            return Err(ConeError::RankMismatch(self.rank, other.rank));
        }
        let mut normals = self.facets();
        normals.extend(other.facets());
        RatCone::from_inequalities(self.rank, &normals)
    }

    pub fn membership(&self, v: &LatVec, mode: Membership) -> bool {
        match mode {
            Membership::Boundary => self.contains(v),
            Membership::RelativeInterior => self.contains_relative_interior(v),
        }
    }

    pub fn contains(&self, v: &LatVec) -> bool {
        self.farkas_witness(v).is_none()
    }

    /// A facet (or span equality) normal `n` with `<n, v> < 0`, if any.
    /// `None` exactly when `v` lies in the cone.
    pub fn farkas_witness(&self, v: &LatVec) -> Option<LatVec> {
        debug_assert_eq!(v.len(), self.rank);
        for s in &self.span_perp {
            let d = s.dot(v);
            if d.is_positive() {
                return Some(s.neg());
            }
            if d.is_negative() {
                return Some(s.clone());
            }
        }
        self.facet_normals.iter().find(|n| n.dot(v).is_negative()).cloned()
    }

    /// Strictly inside every proper facet, and inside the linear span.
    pub fn contains_relative_interior(&self, v: &LatVec) -> bool {
        self.span_perp.iter().all(|s| s.dot(v).is_zero())
            && self.facet_normals.iter().all(|n| n.dot(v).is_positive())
    }

    pub fn contains_cone(&self, other: &RatCone) -> bool {
        other.extreme_rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&l.neg()))
    }

    /// A canonical lattice point in the relative interior: the sum of the
    /// extreme rays (the origin for a linear subspace).
    pub fn interior_point(&self) -> LatVec {
        let mut v = LatVec::zero(self.rank);
        for r in &self.extreme_rays {
            v = v.add(r);
        }
        v
    }

    /// `self` intersected with the hyperplane `<n, .> = 0`.
    pub fn intersect_hyperplane(&self, n: &LatVec) -> RatCone {
        let mut normals = self.facets();
        normals.push(n.clone());
        normals.push(n.neg());
        RatCone::from_inequalities(self.rank, &normals).unwrap()
    }

    /// `self` intersected with the halfspace `<n, .> >= 0`.
    pub fn intersect_halfspace(&self, n: &LatVec) -> RatCone {
        let mut normals = self.facets();
        normals.push(n.clone());
        RatCone::from_inequalities(self.rank, &normals).unwrap()
    }

    /// All faces, the cone itself included, canonically sorted.
    pub fn all_faces(&self) -> Vec<RatCone> {
        let mut seen: Vec<RatCone> = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains(&c) {
                continue;
            }
            for f in c.facet_normals.clone() {
                stack.push(c.intersect_hyperplane(&f));
            }
            seen.push(c);
        }
        sort_cones(&mut seen);
        seen
    }

    /// Exact face test: `self` is a face of `other` (improper allowed).
    pub fn is_face_of(&self, other: &RatCone) -> bool {
        if self.rank != other.rank || !other.contains_cone(self) {
            return false;
        }
        let tight: Vec<&LatVec> = other
            .facet_normals
            .iter()
            .filter(|n| {
                self.extreme_rays.iter().all(|r| n.dot(r).is_zero())
                    && self.lineality.iter().all(|l| n.dot(l).is_zero())
            })
            .collect();
        let mut normals = other.facets();
        for n in tight {
            normals.push(n.neg());
        }
        let cut = RatCone::from_inequalities(self.rank, &normals).unwrap();
        cut == *self
    }

    /// Deterministic sort key: dimension first, then the ray list.
    pub fn sort_key(&self) -> (usize, Vec<LatVec>) {
        (self.dim(), self.rays())
    }
}

fn with_pairs(single: &[LatVec], pairs: &[LatVec]) -> Vec<LatVec> {
    let mut out = single.to_vec();
    for p in pairs {
        out.push(p.clone());
        out.push(p.neg());
    }
    out
}

pub fn sort_cones(cones: &mut [RatCone]) {
    cones.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// A finite collection of cones closed under taking faces, with the pairwise
/// face relation made explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    cones: Vec<RatCone>,
    face_relation: Vec<(usize, usize)>,
}

impl Fan {
    /// Close the given cones under faces and record the face relation.
    pub fn from_maximal_cones(rank: usize, maximal: &[RatCone]) -> Fan {
        let mut cones: Vec<RatCone> = Vec::new();
        for c in maximal {
            assert_eq!(c.rank(), rank);
            for f in c.all_faces() {
                if !cones.contains(&f) {
                    cones.push(f);
                }
            }
        }
        sort_cones(&mut cones);
        let mut face_relation = Vec::new();
        for i in 0..cones.len() {
            for j in 0..cones.len() {
                if i != j && cones[i].is_face_of(&cones[j]) {
                    face_relation.push((i, j));
                }
            }
        }
        Fan { rank, cones, face_relation }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[RatCone] {
        &self.cones
    }

    pub fn face_relation(&self) -> &[(usize, usize)] {
        &self.face_relation
    }

    pub fn maximal_cones(&self) -> Vec<&RatCone> {
        self.cones
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.face_relation.iter().any(|(a, _)| a == i))
            .map(|(_, c)| c)
            .collect()
    }

    /// Pairwise fan axiom check; intended for small instances in tests.
    pub fn is_valid_fan(&self) -> bool {
        for c in &self.cones {
            for f in c.all_faces() {
                if !self.cones.contains(&f) {
                    return false;
                }
            }
        }
        for i in 0..self.cones.len() {
            for j in i..self.cones.len() {
                let meet = self.cones[i].intersect(&self.cones[j]).unwrap();
                if !meet.is_face_of(&self.cones[i]) || !meet.is_face_of(&self.cones[j]) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatVec {
        LatVec::from_i64(v)
    }

    #[test]
    fn cone_from_rays_basic() {
        let c = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])]).unwrap();
        assert_eq!(c.facets(), vec![lv(&[0, 1]), lv(&[2, -1])]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.lineality_dim(), 0);
    }

    #[test]
    fn cone_from_no_rays_is_origin() {
        let c = RatCone::from_rays(2, &[]).unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(
            c.facets(),
            vec![lv(&[-1, 0]), lv(&[0, -1]), lv(&[0, 1]), lv(&[1, 0])]
        );
        assert!(c.rays().is_empty());
    }

    #[test]
    fn opposite_rays_make_a_line() {
        let c = RatCone::from_rays(1, &[lv(&[1]), lv(&[-1])]).unwrap();
        assert_eq!(c.lineality_dim(), 1);
        assert!(c.facets().is_empty());
        assert_eq!(c.rays(), vec![lv(&[-1]), lv(&[1])]);
    }

    #[test]
    fn zero_rays_are_ignored() {
        let c = RatCone::from_rays(2, &[lv(&[0, 0]), lv(&[1, 0])]).unwrap();
        assert_eq!(c.extreme_rays(), &[lv(&[1, 0])]);
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = RatCone::from_rays(2, &[lv(&[1, 0, 0])]).unwrap_err();
        assert_eq!(err, ConeError::DimensionMismatch { expected: 2, got: 3 });
    }

    #[test]
    fn dual_of_quadrant_is_quadrant() {
        let q = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        assert_eq!(q.dual(), q);
    }

    #[test]
    fn dual_of_narrow_cone() {
        let c = RatCone::from_rays(2, &[lv(&[2, 1]), lv(&[1, 2])]).unwrap();
        let d = c.dual();
        // <(2,-1),(1,2)> = 0 and <(2,-1),(2,1)> = 3: checked by hand.
        assert_eq!(d.extreme_rays(), &[lv(&[-1, 2]), lv(&[2, -1])]);
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn dual_of_origin_is_everything() {
        let d = RatCone::zero(2).dual();
        assert_eq!(d.lineality_dim(), 2);
        assert_eq!(d.dim(), 2);
        assert!(d.facets().is_empty());
    }

    #[test]
    fn intersect_idempotent_and_examples() {
        let q = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        assert_eq!(q.intersect(&q).unwrap(), q);
        let wedge = RatCone::from_rays(2, &[lv(&[1, 1]), lv(&[-1, 1])]).unwrap();
        let meet = q.intersect(&wedge).unwrap();
        assert_eq!(meet, RatCone::from_rays(2, &[lv(&[1, 1]), lv(&[0, 1])]).unwrap());
        let opposite = RatCone::from_rays(2, &[lv(&[-1, 0]), lv(&[0, -1])]).unwrap();
        assert_eq!(q.intersect(&opposite).unwrap(), RatCone::zero(2));
    }

    #[test]
    fn intersect_rank_mismatch() {
        let a = RatCone::full(2);
        let b = RatCone::full(3);
        assert_eq!(a.intersect(&b).unwrap_err(), ConeError::RankMismatch(2, 3));
    }

    #[test]
    fn membership_modes() {
        let q = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        assert!(q.membership(&lv(&[1, 1]), Membership::RelativeInterior));
        assert!(q.membership(&lv(&[1, 0]), Membership::Boundary));
        assert!(!q.membership(&lv(&[1, 0]), Membership::RelativeInterior));
        assert!(!q.membership(&lv(&[-1, 3]), Membership::Boundary));
        let w = q.farkas_witness(&lv(&[-1, 3])).unwrap();
        assert!(w.dot(&lv(&[-1, 3])).is_negative());
    }

    #[test]
    fn relative_interior_of_subspace() {
        let line = RatCone::from_rays(2, &[lv(&[1, 1]), lv(&[-1, -1])]).unwrap();
        assert!(line.contains_relative_interior(&lv(&[2, 2])));
        assert!(line.contains_relative_interior(&lv(&[0, 0])));
        assert!(!line.contains_relative_interior(&lv(&[1, 0])));
    }

    #[test]
    fn interior_point_is_interior() {
        let c = RatCone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[1, 1, 5])]).unwrap();
        assert!(c.contains_relative_interior(&c.interior_point()));
        assert!(RatCone::zero(2).contains_relative_interior(&RatCone::zero(2).interior_point()));
    }

    #[test]
    fn faces_of_quadrant() {
        let q = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        let faces = q.all_faces();
        assert_eq!(faces.len(), 4); // origin, two rays, the quadrant
        let fan = Fan::from_maximal_cones(2, &[q]);
        assert!(fan.is_valid_fan());
        assert_eq!(fan.maximal_cones().len(), 1);
    }

    #[test]
    fn face_test_rejects_non_faces() {
        let q = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap();
        let diag = RatCone::from_rays(2, &[lv(&[1, 1])]).unwrap();
        assert!(!diag.is_face_of(&q));
        let ray = RatCone::from_rays(2, &[lv(&[1, 0])]).unwrap();
        assert!(ray.is_face_of(&q));
        assert!(RatCone::zero(2).is_face_of(&q));
        assert!(q.is_face_of(&q));
    }
}
