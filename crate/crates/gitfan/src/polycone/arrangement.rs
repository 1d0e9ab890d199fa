//! Chamber enumeration for a central hyperplane arrangement restricted to a
//! cone: the closed cells of maximal dimension, obtained by successive
//! halfspace splitting.

use super::{LatVec, RatCone};
use num_traits::{Signed, Zero};

/// The closed cells of the arrangement of `{<n, .> = 0 : n in normals}`
/// inside `restrict_to`, each of full dimension relative to `restrict_to`.
/// Cells have pairwise disjoint relative interiors and cover `restrict_to`;
/// an empty normal list yields `restrict_to` itself.
pub fn arrangement_chambers(
    rank: usize,
    normals: &[LatVec],
    restrict_to: &RatCone,
) -> Vec<RatCone> {
    assert_eq!(restrict_to.rank(), rank);
    let mut hyperplanes: Vec<LatVec> = Vec::new();
    for n in normals {
        assert_eq!(n.len(), rank);
        if n.is_zero() {
            continue;
        }
        let mut n = n.primitive();
        if let Some(first) = n.0.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                n = n.neg();
            }
        }
        if !hyperplanes.contains(&n) {
            hyperplanes.push(n);
        }
    }

    let mut cells = vec![restrict_to.clone()];
    for n in &hyperplanes {
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells {
            let mut pos = false;
            let mut neg = false;
            for l in cell.lineality_basis() {
                if !n.dot(l).is_zero() {
                    pos = true;
                    neg = true;
                }
            }
            for r in cell.extreme_rays() {
                let d = n.dot(r);
                if d.is_positive() {
                    pos = true;
                } else if d.is_negative() {
                    neg = true;
                }
            }
            if pos && neg {
                let plus = cell.intersect_halfspace(n);
                let minus = cell.intersect_halfspace(&n.neg());
                debug_assert_eq!(plus.dim(), cell.dim());
                debug_assert_eq!(minus.dim(), cell.dim());
                next.push(plus);
                next.push(minus);
            } else {
                next.push(cell);
            }
        }
        cells = next;
    }
    super::sort_cones(&mut cells);
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatVec {
        LatVec::from_i64(v)
    }

    #[test]
    fn axes_cut_plane_into_quadrants() {
        let cells = arrangement_chambers(2, &[lv(&[1, 0]), lv(&[0, 1])], &RatCone::full(2));
        assert_eq!(cells.len(), 4);
        for c in &cells {
            assert_eq!(c.dim(), 2);
        }
    }

    #[test]
    fn single_hyperplane_cuts_two_halfplanes() {
        let cells = arrangement_chambers(2, &[lv(&[1, -1])], &RatCone::full(2));
        assert_eq!(cells.len(), 2);
    }

    #[test]
    fn restricted_wedge_splits_into_two() {
        // The rank-2 wall arrangement of the first Hirzebruch surface.
        let wedge = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 1])]).unwrap();
        let cells = arrangement_chambers(2, &[lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])], &wedge);
        assert_eq!(
            cells,
            vec![
                RatCone::from_rays(2, &[lv(&[0, 1]), lv(&[-1, 1])]).unwrap(),
                RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap(),
            ]
        );
    }

    #[test]
    fn empty_normal_list_returns_restriction() {
        let wedge = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 1])]).unwrap();
        assert_eq!(arrangement_chambers(2, &[], &wedge), vec![wedge]);
    }
}
