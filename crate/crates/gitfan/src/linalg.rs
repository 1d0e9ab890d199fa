//! Exact linear algebra over the rationals.
//!
//! Everything in this crate that looks like numerics goes through here:
//! reduced row echelon forms, kernels, ranks, and a small phase-1 simplex
//! that decides membership in a finitely generated cone and always returns
//! a certificate (a nonnegative combination or a separating functional).
//! All arithmetic is `BigRational`; there are no tolerances anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Reduce `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row, in increasing order.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(src) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..ncols {
                    let sub = &f * &rows[r][c];
                    rows[i][c] = &rows[i][c] - sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Canonical basis of `{x : rows * x = 0}`, one vector per free column of
/// the RREF, ordered by free column index. Canonical in the sense that any
/// spanning set of the same row space produces the same basis.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.iter().filter(|r| !r.iter().all(Rat::is_zero)).cloned().collect();
    let pivots = rref(&mut m);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scale a rational vector to a primitive integer vector pointing the same way.
/// The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        s += x * y;
    }
    s
}

/// Outcome of the exact cone-membership LP.
#[derive(Debug, Clone)]
pub enum ConeSolve {
    /// `target = sum c_a * columns[a]` with all `c_a >= 0`.
    Combination(Vec<Rat>),
    /// `lambda` with `<columns[a], lambda> >= 0` for all `a` and
    /// `<target, lambda> < 0`; a Farkas certificate of non-membership.
    Separator(Vec<Rat>),
}

/// Decide `target in cone(columns)` by a phase-1 simplex with Bland's rule.
///
/// Either way the answer comes with its certificate: the nonnegative
/// combination on success, the separating functional (read off the dual of
/// the artificial objective) on failure.
pub fn cone_member(columns: &[Vec<Rat>], target: &[Rat]) -> ConeSolve {
    let m = target.len();
    let k = columns.len();
    for c in columns {
        assert_eq!(c.len(), m, "column length mismatch");
    }
    // Rows with negative right-hand side get flipped so b >= 0.
    let mut sign = vec![false; m];
    // tableau[i] = [ real columns | artificial identity | rhs ]
    let width = k + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = target[i].is_negative();
        sign[i] = flip;
        let mut row = Vec::with_capacity(width);
        for col in columns {
            row.push(if flip { -col[i].clone() } else { col[i].clone() });
        }
        for j in 0..m {
            row.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -target[i].clone() } else { target[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    loop {
        // Reduced cost of column j under phase-1 costs (1 on artificials).
        let reduced = |t: &[Vec<Rat>], basis: &[usize], j: usize| -> Rat {
            let mut r = if j >= k { Rat::one() } else { Rat::zero() };
            for (i, &b) in basis.iter().enumerate() {
                if b >= k {
                    r -= &t[i][j];
                }
            }
            r
        };
        let mut entering = None;
        for j in 0..k + m {
            if basis.contains(&j) {
                continue;
            }
            if reduced(&t, &basis, j).is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(e) = entering else { break };
        // Ratio test, ties broken by smallest basis variable (Bland).
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (li, _) = leave.expect("phase-1 objective is bounded below");
        // Pivot on (li, e).
        let inv = t[li][e].clone();
        for x in t[li].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..m {
            if i != li && !t[i][e].is_zero() {
                let f = t[i][e].clone();
                for j in 0..width {
                    let sub = &f * &t[li][j];
                    t[i][j] = &t[i][j] - sub;
                }
            }
        }
        basis[li] = e;
    }

    let objective: Rat = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= k)
        .map(|(i, _)| t[i][width - 1].clone())
        .sum();
    if objective.is_zero() {
        let mut combo = vec![Rat::zero(); k];
        for (i, &b) in basis.iter().enumerate() {
            if b < k {
                combo[b] = t[i][width - 1].clone();
            }
        }
        ConeSolve::Combination(combo)
    } else {
        // Dual on the artificial columns: y_j = sum of artificial-basic rows.
        let mut lambda = vec![Rat::zero(); m];
        for j in 0..m {
            let mut y = Rat::zero();
            for (i, &b) in basis.iter().enumerate() {
                if b >= k {
                    y += &t[i][k + j];
                }
            }
            lambda[j] = if sign[j] { y } else { -y };
        }
        debug_assert!(dot_rat(&lambda, target).is_negative());
        ConeSolve::Separator(lambda)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_and_kernel() {
        let rows = vec![rv(&[1, 2, 3]), rv(&[2, 4, 6]), rv(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ker = kernel_basis(&rows, 3);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            assert!(dot_rat(r, &ker[0]).is_zero());
        }
    }

    #[test]
    fn kernel_canonical_under_respanning() {
        let a = vec![rv(&[1, 1, 0, -1]), rv(&[0, 2, 2, 0])];
        let b = vec![rv(&[2, 4, 2, -2]), rv(&[0, 1, 1, 0]), rv(&[1, 1, 0, -1])];
        assert_eq!(kernel_basis(&a, 4), kernel_basis(&b, 4));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![Rat::new(Int::from(2), Int::from(4)), rat(-1), rat(3)];
        assert_eq!(primitive(&v), vec![Int::from(1), Int::from(-2), Int::from(6)]);
        assert_eq!(primitive(&rv(&[0, 0])), vec![Int::zero(), Int::zero()]);
    }

    #[test]
    fn cone_member_inside() {
        let cols = vec![rv(&[1, 0]), rv(&[1, 2])];
        match cone_member(&cols, &rv(&[3, 2])) {
            ConeSolve::Combination(c) => {
                // 3,2 = 2*(1,0) + 1*(1,2)
                assert_eq!(c, rv(&[2, 1]));
            }
            ConeSolve::Separator(_) => panic!("expected membership"),
        }
    }

    #[test]
    fn cone_member_outside_gives_separator() {
        let cols = vec![rv(&[1, 0]), rv(&[1, 2])];
        match cone_member(&cols, &rv(&[-1, 1])) {
            ConeSolve::Combination(_) => panic!("expected separation"),
            ConeSolve::Separator(l) => {
                for c in &cols {
                    assert!(!dot_rat(c, &l).is_negative());
                }
                assert!(dot_rat(&rv(&[-1, 1]), &l).is_negative());
            }
        }
    }

    #[test]
    fn cone_member_zero_cone() {
        match cone_member(&[], &rv(&[1, 1])) {
            ConeSolve::Separator(l) => assert!(dot_rat(&rv(&[1, 1]), &l).is_negative()),
            _ => panic!(),
        }
        match cone_member(&[], &rv(&[0, 0])) {
            ConeSolve::Combination(c) => assert!(c.is_empty()),
            _ => panic!(),
        }
    }
}
