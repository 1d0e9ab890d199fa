//! Randomized self-check suites over exact arithmetic.
//!
//! Each suite draws its cases from a fixed-seed xorshift generator, so a
//! run is reproducible, and returns the number of checks performed or a
//! description of the first failure. The test targets and the acceptance
//! suite both drive these.

use crate::chowring::{is_weyl_invariant, reynolds_divided, symmetrize};
use crate::groupdata::{build_group, Character, GroupData, GroupSpec, ModuleSpec, Summand, WeightSystem};
use crate::linalg::{cone_member, rat, ConeSolve, Int, Rat};
use crate::poly::PolyElement;
use crate::polycone::{LatVec, RatCone};
use crate::stability::{git_fan, support_semistable, unstable_components, Verdict};
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

/// Small deterministic generator (xorshift64*), fixed seed per suite.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn fail(msg: String) -> Result<usize, String> {
    Err(msg)
}

fn random_latvec(rng: &mut Rng, len: usize, lo: i64, hi: i64) -> LatVec {
    LatVec((0..len).map(|_| Int::from(rng.int(lo, hi))).collect())
}

/// Cone duality involution, representation round trips and Farkas
/// completeness on random cones of rank up to 4.
pub fn polycone_suite(cases: usize) -> Result<usize, String> {
    let mut rng = Rng::new(0x9e3779b97f4a7c15);
    let mut checks = 0usize;
    for case in 0..cases {
        let rank = 1 + case % 4;
        let nrays = rng.index(9);
        let rays: Vec<LatVec> = (0..nrays).map(|_| random_latvec(&mut rng, rank, -5, 5)).collect();
        let cone = RatCone::from_rays(rank, &rays).map_err(|e| format!("case {case}: {e}"))?;

        if cone.dual().dual() != cone {
            return fail(format!("case {case}: dual involution failed on {rays:?}"));
        }
        for r in cone.rays() {
            for f in cone.facets() {
                if f.dot(&r).is_negative() {
                    return fail(format!("case {case}: ray {r} violates facet {f}"));
                }
            }
        }
        let rebuilt_v = RatCone::from_rays(rank, &cone.rays()).map_err(|e| e.to_string())?;
        if rebuilt_v != cone {
            return fail(format!("case {case}: V->H->V round trip changed the cone"));
        }
        let rebuilt_h = RatCone::from_inequalities(rank, &cone.facets()).map_err(|e| e.to_string())?;
        if rebuilt_h != cone {
            return fail(format!("case {case}: H->V->H round trip changed the cone"));
        }
        // Input rays must land inside their own cone.
        for r in &rays {
            if !cone.contains(r) {
                return fail(format!("case {case}: generator {r} outside its cone"));
            }
        }
        // Farkas completeness on a random probe, cross-checked against the
        // independent simplex route.
        let probe = random_latvec(&mut rng, rank, -6, 6);
        let witness = cone.farkas_witness(&probe);
        match &witness {
            None => {
                if cone.facets().iter().any(|f| f.dot(&probe).is_negative()) {
                    return fail(format!("case {case}: membership with a violated facet"));
                }
            }
            Some(n) => {
                if !n.dot(&probe).is_negative() {
                    return fail(format!("case {case}: witness does not separate"));
                }
                if !cone.facets().contains(n) {
                    return fail(format!("case {case}: witness is not a listed facet"));
                }
            }
        }
        let lp_member = matches!(
            cone_member(
                &cone.rays().iter().map(|r| r.to_rat()).collect::<Vec<_>>(),
                &probe.to_rat()
            ),
            ConeSolve::Combination(_)
        );
        if lp_member != witness.is_none() {
            return fail(format!("case {case}: H-representation and simplex disagree on {probe}"));
        }
        if cone.intersect(&cone).map_err(|e| e.to_string())? != cone {
            return fail(format!("case {case}: self-intersection changed the cone"));
        }
        checks += 1;
    }
    Ok(checks)
}

/// Arrangement cells cover the restriction and have pairwise disjoint
/// relative interiors, probed at random rational points.
pub fn arrangement_suite(cases: usize) -> Result<usize, String> {
    use crate::polycone::arrangement_chambers;
    let mut rng = Rng::new(0xa5a5a5a5a5a5a5a5);
    let mut checks = 0usize;
    while checks < cases {
        let rank = 2 + rng.index(2);
        let restrict = RatCone::from_rays(
            rank,
            &(0..rank + 1).map(|_| random_latvec(&mut rng, rank, -3, 3)).collect::<Vec<_>>(),
        )
        .map_err(|e| e.to_string())?;
        let normals: Vec<LatVec> = (0..1 + rng.index(3))
            .map(|_| random_latvec(&mut rng, rank, -2, 2))
            .collect();
        let cells = arrangement_chambers(rank, &normals, &restrict);
        for _ in 0..5 {
            // Random point of the restriction: nonnegative combination of
            // its rays (with arbitrary lineality shifts).
            let mut pt = LatVec::zero(rank);
            for r in restrict.extreme_rays() {
                let c = rng.int(0, 4);
                for i in 0..rank {
                    pt.0[i] += &r.0[i] * Int::from(c);
                }
            }
            for l in restrict.lineality_basis() {
                let c = rng.int(-3, 3);
                for i in 0..rank {
                    pt.0[i] += &l.0[i] * Int::from(c);
                }
            }
            let holding = cells.iter().filter(|c| c.contains(&pt)).count();
            if holding == 0 {
                return fail(format!("point {pt} of the restriction lies in no cell"));
            }
            let interior = cells.iter().filter(|c| c.contains_relative_interior(&pt)).count();
            if interior > 1 {
                return fail(format!("point {pt} is interior to {interior} cells"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn random_full_rank_weights(rng: &mut Rng, rank: usize, ncols: usize, bound: i64) -> Vec<LatVec> {
    loop {
        let cols: Vec<LatVec> = (0..ncols)
            .map(|_| random_latvec(rng, rank, -bound, bound))
            .collect();
        let rows: Vec<Vec<Rat>> = cols.iter().map(|c| c.to_rat()).collect();
        if crate::linalg::rank(&rows) == rank {
            return cols;
        }
    }
}

pub(crate) fn torus_system_from(weights: &[LatVec]) -> (GroupData, WeightSystem) {
    let rank = weights[0].len();
    let spec = GroupSpec::torus(rank).unwrap();
    let module = ModuleSpec::new(vec![(
        Summand::Weights {
            columns: weights.iter().map(|w| w.0.clone()).collect(),
            multiplicities: vec![1; weights.len()],
        },
        1,
    )]);
    build_group(&spec, &module).unwrap()
}

/// Upward closure of semistable supports, certificate soundness, chamber
/// interior consistency and face monotonicity on random rank-2 systems.
pub fn stability_suite(cases: usize) -> Result<usize, String> {
    let mut rng = Rng::new(0xc0ffee123456789);
    let mut checks = 0usize;
    let mut round = 0usize;
    while checks < cases {
        round += 1;
        let ncols = 3 + rng.index(3);
        let weights = random_full_rank_weights(&mut rng, 2, ncols, 3);
        let (gd, ws) = torus_system_from(&weights);

        // A random effective character: a nonnegative integer combination.
        let mut chi = LatVec::zero(2);
        for w in &weights {
            let c = rng.int(0, 3);
            for i in 0..2 {
                chi.0[i] += &w.0[i] * Int::from(c);
            }
        }
        // Random support: certificate soundness plus upward closure.
        let mut support: BTreeSet<usize> = BTreeSet::new();
        for a in 0..ncols {
            if rng.index(2) == 0 {
                support.insert(a);
            }
        }
        let cert = support_semistable(&ws, &chi, &support);
        match cert.verdict {
            Verdict::Semistable => {
                let combo = cert.combination.as_ref().ok_or("missing combination")?;
                let mut acc = vec![Rat::zero(); 2];
                for (a, c) in combo {
                    if c.is_negative() {
                        return fail(format!("round {round}: negative combination entry"));
                    }
                    for i in 0..2 {
                        acc[i] += c * Rat::from_integer(ws.weight(*a).0[i].clone());
                    }
                }
                if acc != chi.to_rat() {
                    return fail(format!("round {round}: combination does not reproduce chi"));
                }
                // Upward closure: any enlargement stays semistable.
                let mut bigger = support.clone();
                bigger.insert(rng.index(ncols));
                if support_semistable(&ws, &chi, &bigger).verdict == Verdict::Unstable {
                    return fail(format!("round {round}: upward closure violated"));
                }
            }
            Verdict::Unstable => {
                let lam = &cert.lambda.as_ref().ok_or("missing certificate")?.0;
                for &a in &support {
                    if ws.weight(a).dot(lam).is_negative() {
                        return fail(format!("round {round}: certificate negative on support"));
                    }
                }
                if !chi.dot(lam).is_negative() {
                    return fail(format!("round {round}: certificate does not destabilize"));
                }
            }
            Verdict::ProperlyStable => unreachable!(),
        }
        checks += 1;

        // Every few rounds, check chamber interiors and face monotonicity.
        if round % 8 != 0 {
            continue;
        }
        let fan = git_fan(&gd, &ws).map_err(|e| e.to_string())?;
        for ch in &fan.chambers {
            let reference: BTreeSet<Vec<usize>> = ch
                .semistable_supports
                .iter()
                .map(|s| s.iter().copied().collect())
                .collect();
            for _ in 0..5 {
                // Random interior point: positive combination of the
                // extreme rays plus arbitrary lineality shifts.
                let mut pt = LatVec::zero(2);
                for r in ch.cone.extreme_rays() {
                    let c = rng.int(1, 7);
                    for i in 0..2 {
                        pt.0[i] += &r.0[i] * Int::from(c);
                    }
                }
                for l in ch.cone.lineality_basis() {
                    let c = rng.int(-5, 5);
                    for i in 0..2 {
                        pt.0[i] += &l.0[i] * Int::from(c);
                    }
                }
                if !ch.cone.contains_relative_interior(&pt) {
                    return fail(format!("round {round}: sampled point not interior"));
                }
                let comps = unstable_components(&gd, &ws, &Character { coords: pt.0.clone() })
                    .map_err(|e| e.to_string())?;
                let got_us: BTreeSet<Vec<usize>> = comps
                    .iter()
                    .map(|c| c.support.iter().copied().collect())
                    .collect();
                let want_us: BTreeSet<Vec<usize>> = ch
                    .components
                    .iter()
                    .map(|c| c.support.iter().copied().collect())
                    .collect();
                if got_us != want_us {
                    return fail(format!("round {round}: chamber interior not constant"));
                }
                let got_ss: BTreeSet<Vec<usize>> =
                    crate::stability::minimal_semistable_supports(&ws, &pt)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|s| s.into_iter().collect())
                        .collect();
                if got_ss != reference {
                    return fail(format!("round {round}: semistable supports vary in the interior"));
                }
                checks += 1;
            }
        }
        // Face monotonicity: supports semistable somewhere in a chamber
        // stay semistable on its faces.
        for ch in &fan.chambers {
            for face in ch.cone.all_faces() {
                if face == ch.cone {
                    continue;
                }
                let rep = face.interior_point();
                if rep.is_zero() && face.dim() > 0 {
                    continue;
                }
                for s in &ch.semistable_supports {
                    let cert = support_semistable(&ws, &rep, s);
                    if cert.verdict == Verdict::Unstable {
                        return fail(format!("round {round}: face lost a semistable support"));
                    }
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

fn random_poly(rng: &mut Rng, nvars: usize, max_deg: u32, terms: usize) -> PolyElement {
    let mut p = PolyElement::zero(nvars);
    for _ in 0..terms {
        let mut exp = vec![0u32; nvars];
        let mut left = max_deg;
        for e in exp.iter_mut() {
            let k = rng.index(left as usize + 1) as u32;
            *e = k;
            left -= k;
        }
        let c = rng.int(-4, 4);
        if c != 0 {
            p = p.add(&PolyElement::constant(nvars, rat(c)).mul_monomial(&exp));
        }
    }
    p
}

/// Projection identities on random polynomials for GL(2), GL(3) and
/// GL(2) x GL(2): invariance of the image, linearity over the invariants,
/// antisymmetry under the Weyl action, and the normalization on the
/// discriminant. Exact divisibility is asserted inside the projection.
pub fn chowring_suite(cases: usize) -> Result<usize, String> {
    let groups: Vec<GroupData> = vec![
        {
            let spec = GroupSpec::new(vec![2], 0).unwrap();
            build_group(&spec, &ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 1)]))
                .unwrap()
                .0
        },
        {
            let spec = GroupSpec::new(vec![3], 0).unwrap();
            build_group(&spec, &ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 1)]))
                .unwrap()
                .0
        },
        {
            let spec = GroupSpec::new(vec![2, 2], 0).unwrap();
            build_group(
                &spec,
                &ModuleSpec::new(vec![
                    (Summand::Std { block: 0, twist: vec![] }, 1),
                    (Summand::Std { block: 1, twist: vec![] }, 1),
                ]),
            )
            .unwrap()
            .0
        },
    ];
    for gd in &groups {
        let order = reynolds_divided(gd, &gd.discriminant());
        let expect = PolyElement::constant(gd.rank(), rat(gd.weyl_order() as i64));
        if order != expect {
            return fail(format!("discriminant does not project to the group order, got {order}"));
        }
    }
    let mut rng = Rng::new(0xfeedface0badf00d);
    let mut checks = 0usize;
    let mut case = 0usize;
    while checks < cases {
        let gd = &groups[case % groups.len()];
        case += 1;
        let nvars = gd.rank();
        let f = random_poly(&mut rng, nvars, 6, 3);
        let g = random_poly(&mut rng, nvars, 3, 2);

        let pf = reynolds_divided(gd, &f);
        if !is_weyl_invariant(gd, &pf) {
            return fail(format!("case {case}: projection not invariant"));
        }
        checks += 1;

        // Linearity over the invariants: p(u g) = u p(g) for symmetrized u.
        let u = symmetrize(gd, &random_poly(&mut rng, nvars, 2, 2));
        if reynolds_divided(gd, &u.mul(&g)) != u.mul(&reynolds_divided(gd, &g)) {
            return fail(format!("case {case}: linearity over invariants failed"));
        }
        checks += 1;

        // Antisymmetry: p(w f) = det(w) p(f).
        let elements: Vec<_> = gd.weyl_elements().collect();
        let w = &elements[rng.index(elements.len())];
        let lhs = reynolds_divided(gd, &w.apply_poly(&f));
        let rhs = reynolds_divided(gd, &f).scale(&rat(w.sign as i64));
        if lhs != rhs {
            return fail(format!("case {case}: Weyl antisymmetry failed"));
        }
        checks += 1;
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    #[test]
    fn suites_run_small() {
        assert!(super::polycone_suite(40).unwrap() >= 40);
        assert!(super::stability_suite(40).unwrap() >= 40);
        assert!(super::chowring_suite(30).unwrap() >= 30);
    }
}
