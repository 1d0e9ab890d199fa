//! Symbolic side of the pipeline: the antisymmetrize-and-divide projection
//! onto Weyl invariants, equivariant classes of coordinate subspaces, ring
//! presentations of the quotients, graded dimensions, the Picard group and
//! the ample cone.
//!
//! The torus-equivariant ring of a point is the polynomial ring on the
//! torus characters. Antisymmetrizing and dividing by the product of the
//! positive roots lands in the Weyl invariants and drops the degree by the
//! number of positive roots; the division is always exact and is asserted
//! term by term.

use crate::groupdata::{Character, GroupData, WeightSystem};
use crate::linalg::{self, Rat};
use crate::poly::{elementary_symmetric, monomials_of_degree, PolyElement};
use crate::polycone::{LatVec, RatCone};
use crate::stability::{maximal_non_properly_stable_supports, Chamber, StabilityError, UnstableComponent};
use num_traits::{One, Zero};

/// Alternating sum over the Weyl group.
pub fn antisymmetrize(gd: &GroupData, f: &PolyElement) -> PolyElement {
    let mut out = PolyElement::zero(f.nvars());
    for w in gd.weyl_elements() {
        let term = w.apply_poly(f);
        out = if w.sign > 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// Plain sum over the Weyl group (used to manufacture invariants).
pub fn symmetrize(gd: &GroupData, f: &PolyElement) -> PolyElement {
    let mut out = PolyElement::zero(f.nvars());
    for w in gd.weyl_elements() {
        out = out.add(&w.apply_poly(f));
    }
    out
}

/// Antisymmetrize and divide by the discriminant. The result is Weyl
/// invariant of degree `deg f - #positive roots`; inputs of lower degree
/// map to zero. Handles non-homogeneous input degree by degree.
pub fn reynolds_divided(gd: &GroupData, f: &PolyElement) -> PolyElement {
    let npos = gd.positive_roots().len() as u32;
    let mut out = PolyElement::zero(f.nvars());
    for d in 0..=f.degree() {
        let comp = f.homogeneous_component(d);
        if comp.is_zero() || d < npos {
            continue;
        }
        let mut j = antisymmetrize(gd, &comp);
        for root in gd.positive_roots() {
            if j.is_zero() {
                break;
            }
            j = j
                .div_exact(&PolyElement::linear_form(root))
                .expect("alternating sums are divisible by every positive root");
        }
        out = out.add(&j);
    }
    out
}

/// Equivariant class of the stratum: the product of the vanishing weights
/// with their multiplicities.
pub fn component_class(ws: &WeightSystem, component: &UnstableComponent) -> PolyElement {
    let mut class = PolyElement::one(ws.rank());
    for &(a, m) in &component.vanishing {
        class = class.mul(&PolyElement::linear_form(&ws.columns()[a].weight).pow(m as u32));
    }
    class
}

/// Exact invariance certificate: invariance under the adjacent
/// transpositions of every block generates the whole Weyl group.
pub fn is_weyl_invariant(gd: &GroupData, f: &PolyElement) -> bool {
    let spec = gd.spec();
    for j in 0..spec.gl_blocks.len() {
        let br = spec.block_range(j);
        for i in br.start..br.end - 1 {
            let mut perm: Vec<usize> = (0..gd.rank()).collect();
            perm.swap(i, i + 1);
            if f.permute_variables(&perm) != *f {
                return false;
            }
        }
    }
    true
}

/// The free module basis of the torus-equivariant ring over the invariants:
/// monomials with the exponent of the `i`-th variable of a block strictly
/// below `i` (1-based), torus variables not appearing. There are exactly
/// `|W|` of them.
pub fn descending_module_basis(gd: &GroupData) -> Vec<Vec<u32>> {
    let spec = gd.spec();
    let rank = gd.rank();
    let mut bounds = vec![1u32; rank];
    for j in 0..spec.gl_blocks.len() {
        for (i, pos) in spec.block_range(j).enumerate() {
            bounds[pos] = (i + 1) as u32;
        }
    }
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for &b in &bounds {
        let mut next = Vec::new();
        for prefix in &out {
            for e in 0..b {
                let mut v = prefix.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationVariant {
    /// Divide by the classes of the unstable strata.
    Semistable,
    /// Divide by the larger ideal from all strata failing proper stability.
    ProperlyStable,
}

#[derive(Clone, Debug)]
pub struct GeneratorSymbol {
    pub name: String,
    pub degree: u32,
    /// Expression in the torus variables.
    pub poly: PolyElement,
}

/// Presentation of the invariant ring modulo the projected ideal.
#[derive(Clone, Debug)]
pub struct InvariantPresentation {
    /// Polynomial generators of the invariant ring: the elementary
    /// symmetric functions of each block and the torus variables.
    pub generators: Vec<GeneratorSymbol>,
    /// Projected ideal generators, Weyl invariant, in the torus variables.
    pub ideal: Vec<PolyElement>,
    pub variant: PresentationVariant,
    /// Whether the chamber satisfies the geometric-quotient hypothesis, so
    /// the presentation is the ring of the quotient rather than of the
    /// equivariant (semi)stable locus.
    pub quotient_interpretation: Option<bool>,
}

fn generator_symbols(gd: &GroupData) -> Vec<GeneratorSymbol> {
    let spec = gd.spec();
    let rank = gd.rank();
    let mut out = Vec::new();
    for j in 0..spec.gl_blocks.len() {
        let vars: Vec<usize> = spec.block_range(j).collect();
        for k in 1..=vars.len() {
            out.push(GeneratorSymbol {
                name: format!("e{k}(b{j})"),
                degree: k as u32,
                poly: elementary_symmetric(rank, &vars, k),
            });
        }
    }
    for (k, pos) in spec.torus_range().enumerate() {
        out.push(GeneratorSymbol {
            name: format!("u{}", k + 1),
            degree: 1,
            poly: PolyElement::variable(rank, pos),
        });
    }
    out
}

fn poly_sort_key(p: &PolyElement) -> (u32, Vec<(Vec<u32>, Rat)>) {
    (p.degree(), p.terms().map(|(e, c)| (e.clone(), c.clone())).collect())
}

/// Projected ideal generators for a list of strata: the projections of
/// `class * b` over the descending module basis, zeros dropped, normalized
/// and deduplicated.
pub fn projected_ideal(gd: &GroupData, components: &[UnstableComponent]) -> Vec<PolyElement> {
    let basis = descending_module_basis(gd);
    let mut gens: Vec<PolyElement> = Vec::new();
    for comp in components {
        for b in &basis {
            let g = reynolds_divided(gd, &comp.class_t.mul_monomial(b));
            if g.is_zero() {
                continue;
            }
            let g = g.normalized();
            debug_assert!(is_weyl_invariant(gd, &g));
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    gens.sort_by(|a, b| poly_sort_key(a).cmp(&poly_sort_key(b)));
    gens
}

/// Presentation of the rational ring of the quotient attached to a chamber.
/// Over the complex numbers the same presentation computes the cohomology
/// ring whenever the quotient is projective.
pub fn chow_presentation(
    gd: &GroupData,
    ws: &WeightSystem,
    chamber: &Chamber,
    variant: PresentationVariant,
) -> Result<InvariantPresentation, StabilityError> {
    let components: Vec<UnstableComponent> = match variant {
        PresentationVariant::Semistable => chamber.components.clone(),
        PresentationVariant::ProperlyStable => {
            maximal_non_properly_stable_supports(gd, ws, &chamber.representative)?
        }
    };
    Ok(InvariantPresentation {
        generators: generator_symbols(gd),
        ideal: projected_ideal(gd, &components),
        variant,
        quotient_interpretation: chamber.properly_stable,
    })
}

/// Exponent tuples over the generator symbols with prescribed total degree.
fn invariant_monomial_tuples(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; degrees.len()];
    fn rec(degrees: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let step = degrees[pos];
        let max = left / step;
        for k in 0..=max {
            cur[pos] = k;
            rec(degrees, pos + 1, left - k * step, cur, out);
        }
        cur[pos] = 0;
    }
    rec(degrees, 0, d, &mut cur, &mut out);
    out
}

fn expand_invariant_monomial(pres: &InvariantPresentation, tuple: &[u32], nvars: usize) -> PolyElement {
    let mut p = PolyElement::one(nvars);
    for (gen, &k) in pres.generators.iter().zip(tuple) {
        if k > 0 {
            p = p.mul(&gen.poly.pow(k));
        }
    }
    p
}

/// Dimension of the degree-`d` slice of the invariant ring.
fn invariant_dimension(pres: &InvariantPresentation, d: u32) -> usize {
    let degrees: Vec<u32> = pres.generators.iter().map(|g| g.degree).collect();
    invariant_monomial_tuples(&degrees, d).len()
}

fn poly_to_row(p: &PolyElement, index: &std::collections::BTreeMap<Vec<u32>, usize>) -> Vec<Rat> {
    let mut row = vec![Rat::zero(); index.len()];
    for (e, c) in p.terms() {
        row[index[e]] = c.clone();
    }
    row
}

/// Span of the ideal inside the degree-`d` slice, as rows over the
/// monomial basis of that degree.
fn ideal_slice_rows(gd: &GroupData, pres: &InvariantPresentation, d: u32) -> Vec<Vec<Rat>> {
    let nvars = gd.rank();
    let monoms = monomials_of_degree(nvars, d);
    let index: std::collections::BTreeMap<Vec<u32>, usize> =
        monoms.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let degrees: Vec<u32> = pres.generators.iter().map(|g| g.degree).collect();
    let mut rows = Vec::new();
    for g in &pres.ideal {
        let e = g.degree();
        if e > d || g.is_zero() {
            continue;
        }
        for tuple in invariant_monomial_tuples(&degrees, d - e) {
            let h = expand_invariant_monomial(pres, &tuple, nvars);
            rows.push(poly_to_row(&g.mul(&h), &index));
        }
    }
    rows
}

/// Rank of the ideal slice in degree `d`.
pub fn ideal_slice_rank(gd: &GroupData, pres: &InvariantPresentation, d: u32) -> usize {
    linalg::rank(&ideal_slice_rows(gd, pres, d))
}

/// Degreewise equality of two ideals presented over the same group, checked
/// by exact linear algebra up to the given degree.
pub fn ideals_equal_up_to(
    gd: &GroupData,
    a: &InvariantPresentation,
    b: &InvariantPresentation,
    up_to: u32,
) -> bool {
    for d in 0..=up_to {
        let ra = ideal_slice_rows(gd, a, d);
        let rb = ideal_slice_rows(gd, b, d);
        let rank_a = linalg::rank(&ra);
        let rank_b = linalg::rank(&rb);
        let mut both = ra;
        both.extend(rb);
        let rank_union = linalg::rank(&both);
        if rank_a != rank_b || rank_union != rank_a {
            return false;
        }
    }
    true
}

/// Graded dimensions of (invariants)/(ideal) in degrees `0..=dim_quotient`.
pub fn betti_numbers(gd: &GroupData, pres: &InvariantPresentation, dim_quotient: usize) -> Vec<usize> {
    (0..=dim_quotient as u32)
        .map(|d| invariant_dimension(pres, d) - ideal_slice_rank(gd, pres, d))
        .collect()
}

/// Dimension of the quotient for a properly stable chamber.
pub fn quotient_dimension(gd: &GroupData, ws: &WeightSystem) -> usize {
    ws.total_dim() - gd.dim_group()
}

/// Rational Picard data of the quotient attached to a chamber.
#[derive(Clone, Debug)]
pub struct PicardPresentation {
    pub rank: usize,
    /// Degree-one relations, one per unstable stratum of orbit codimension
    /// one, as characters of the group.
    pub relations: Vec<Character>,
    /// Closure of the ample cone in the chosen quotient coordinates.
    pub ample_cone: RatCone,
    /// Indices of the character coordinates used as the quotient basis.
    pub quotient_coords: Vec<usize>,
    /// True when every unstable stratum has orbit codimension at least two
    /// (the hypothesis under which the Picard description is exact).
    pub codim_ok: bool,
}

fn degree_one_relation(gd: &GroupData, comp: &UnstableComponent) -> Option<PolyElement> {
    let npos = gd.positive_roots().len() as u32;
    let target = npos + 1;
    let class_deg = comp.class_t.degree();
    if class_deg > target {
        return None;
    }
    let want = target - class_deg;
    let mut found: Option<PolyElement> = None;
    for b in descending_module_basis(gd) {
        if b.iter().sum::<u32>() != want {
            continue;
        }
        let g = reynolds_divided(gd, &comp.class_t.mul_monomial(&b));
        if g.is_zero() {
            continue;
        }
        let g = g.normalized();
        match &found {
            None => found = Some(g),
            Some(prev) => debug_assert_eq!(prev, &g, "degree-one slice must be a line"),
        }
    }
    found
}

fn invariant_linear_to_character(gd: &GroupData, f: &PolyElement) -> Character {
    let spec = gd.spec();
    let mut coords = Vec::with_capacity(spec.char_rank());
    for j in 0..spec.gl_blocks.len() {
        let br = spec.block_range(j);
        let mut exp = vec![0u32; gd.rank()];
        exp[br.start] = 1;
        let c = f.coefficient(&exp);
        debug_assert!(c.denom().is_one());
        coords.push(c.numer().clone());
    }
    for pos in spec.torus_range() {
        let mut exp = vec![0u32; gd.rank()];
        exp[pos] = 1;
        let c = f.coefficient(&exp);
        debug_assert!(c.denom().is_one());
        coords.push(c.numer().clone());
    }
    Character { coords }
}

/// Picard rank, relations and ample cone for a properly stable chamber.
pub fn picard_and_ample(gd: &GroupData, chamber: &Chamber) -> PicardPresentation {
    let s = gd.char_rank();
    let codim_ok = chamber.components.iter().all(|c| c.codim_orbit >= 2);
    let mut relations: Vec<Character> = Vec::new();
    for comp in &chamber.components {
        if comp.codim_orbit != 1 {
            continue;
        }
        let f = degree_one_relation(gd, comp)
            .expect("a codimension-one sweep contributes a degree-one relation");
        relations.push(invariant_linear_to_character(gd, &f));
    }
    let mut rel_rows: Vec<Vec<Rat>> = relations
        .iter()
        .map(|c| c.coords.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let pivots = linalg::rref(&mut rel_rows);
    let rank = s - pivots.len();
    let quotient_coords: Vec<usize> = (0..s).filter(|c| !pivots.contains(c)).collect();
    // Project the chamber cone to the quotient coordinates: eliminate the
    // pivot coordinates with the reduced relation rows, then restrict.
    let project = |v: &LatVec| -> LatVec {
        let mut x: Vec<Rat> = v.to_rat();
        for (row, &p) in rel_rows.iter().zip(&pivots) {
            let f = x[p].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..s {
                let sub = &f * &row[c];
                x[c] = &x[c] - sub;
            }
        }
        LatVec::from_rats(&quotient_coords.iter().map(|&c| x[c].clone()).collect::<Vec<_>>())
    };
    let rays: Vec<LatVec> = chamber.cone.rays().iter().map(project).collect();
    let ample_cone = RatCone::from_rays(quotient_coords.len(), &rays).unwrap();
    PicardPresentation { rank, relations, ample_cone, quotient_coords, codim_ok }
}

/// Whether the quotients are projective, i.e. the only invariant functions
/// are the constants: all weights in an open halfspace.
pub fn projective_case(ws: &WeightSystem) -> bool {
    ws.weights_in_open_halfspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupdata::{build_group, GroupSpec, ModuleSpec, Summand};
    use crate::linalg::rat;
    use crate::poly::complete_homogeneous;
    use crate::stability::{git_fan, unstable_components};

    fn gl2() -> GroupData {
        let spec = GroupSpec::new(vec![2], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 4)]);
        build_group(&spec, &module).unwrap().0
    }

    fn torus_system(weights: &[&[i64]]) -> (GroupData, WeightSystem) {
        crate::stability::testkit::torus_system(weights)
    }

    #[test]
    fn reynolds_basics() {
        let gd = gl2();
        assert!(reynolds_divided(&gd, &PolyElement::one(2)).is_zero());
        let delta = gd.discriminant();
        assert_eq!(reynolds_divided(&gd, &delta), PolyElement::constant(2, rat(2)));
        let t1_4 = PolyElement::variable(2, 0).pow(4);
        assert_eq!(reynolds_divided(&gd, &t1_4), complete_homogeneous(2, &[0, 1], 3));
    }

    #[test]
    fn module_basis_sizes() {
        let gd = gl2();
        let basis = descending_module_basis(&gd);
        assert_eq!(basis, vec![vec![0, 0], vec![0, 1]]); // 1 and t2
        let spec = GroupSpec::new(vec![3], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 2)]);
        let gd3 = build_group(&spec, &module).unwrap().0;
        assert_eq!(descending_module_basis(&gd3).len() as u128, gd3.weyl_order());
    }

    #[test]
    fn component_class_examples() {
        let (gd, ws) = torus_system(&[&[1], &[1], &[1]]);
        let comps = unstable_components(&gd, &ws, &Character::from_i64(&[1])).unwrap();
        assert_eq!(component_class(&ws, &comps[0]), comps[0].class_t);
        assert_eq!(comps[0].class_t.to_string(), "t1^3");
        // An ineffective character leaves the whole space unstable: empty
        // vanishing set, class one.
        let comps = unstable_components(&gd, &ws, &Character::from_i64(&[-1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].vanishing.is_empty());
        assert_eq!(comps[0].class_t, PolyElement::one(1));
        assert_eq!(comps[0].codim, 0);
    }

    #[test]
    fn generator_symbol_count_is_the_rank() {
        // Enough copies of each standard representation that determinant
        // characters are honestly effective.
        let spec = GroupSpec::new(vec![2, 3], 1).unwrap();
        let module = ModuleSpec::new(vec![
            (Summand::Std { block: 0, twist: vec![crate::linalg::Int::from(0)] }, 3),
            (Summand::Std { block: 1, twist: vec![crate::linalg::Int::from(0)] }, 4),
            (Summand::TorusChar { weight: vec![crate::linalg::Int::from(1)] }, 1),
        ]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        let pres = chow_presentation(&gd, &ws, &fan.chambers[0], PresentationVariant::Semistable).unwrap();
        assert_eq!(pres.generators.len(), gd.rank());
    }

    #[test]
    fn betti_is_insensitive_to_generator_signs() {
        // Flipping the discriminant sign convention flips the projected
        // generators; the graded dimensions cannot see it.
        let spec = GroupSpec::new(vec![2], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 4)]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        let pres = chow_presentation(&gd, &ws, &fan.chambers[0], PresentationVariant::Semistable).unwrap();
        let mut flipped = pres.clone();
        for g in flipped.ideal.iter_mut() {
            *g = g.scale(&rat(-1));
        }
        let d = quotient_dimension(&gd, &ws);
        assert_eq!(betti_numbers(&gd, &pres, d), betti_numbers(&gd, &flipped, d));
    }

    #[test]
    fn presentation_projective_plane() {
        let (gd, ws) = torus_system(&[&[1], &[1], &[1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        let ch = &fan.chambers[0];
        let pres = chow_presentation(&gd, &ws, ch, PresentationVariant::Semistable).unwrap();
        assert_eq!(pres.ideal.len(), 1);
        assert_eq!(pres.ideal[0].to_string(), "t1^3");
        assert_eq!(betti_numbers(&gd, &pres, quotient_dimension(&gd, &ws)), vec![1, 1, 1]);
    }

    #[test]
    fn presentation_hirzebruch() {
        let (gd, ws) = torus_system(&[&[1, 0], &[1, 0], &[-1, 1], &[0, 1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        let ch = fan
            .chambers
            .iter()
            .find(|c| c.cone.contains(&LatVec::from_i64(&[1, 1])))
            .unwrap();
        let pres = chow_presentation(&gd, &ws, ch, PresentationVariant::Semistable).unwrap();
        let strs: Vec<String> = pres.ideal.iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["t1*t2 - t2^2", "t1^2"]);
        assert_eq!(betti_numbers(&gd, &pres, 2), vec![1, 2, 1]);
    }

    #[test]
    fn presentation_grassmannian_matches_symmetric_functions() {
        let spec = GroupSpec::new(vec![2], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 4)]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        let ch = &fan.chambers[0];
        let pres = chow_presentation(&gd, &ws, ch, PresentationVariant::Semistable).unwrap();
        let strs: Vec<String> = pres.ideal.iter().map(|g| g.to_string()).collect();
        let h3 = complete_homogeneous(2, &[0, 1], 3);
        let h4 = complete_homogeneous(2, &[0, 1], 4);
        assert_eq!(strs, vec![h3.to_string(), h4.to_string()]);
        for g in &pres.ideal {
            assert!(is_weyl_invariant(&gd, g));
        }
        // Betti numbers of the Grassmannian of planes in four-space.
        assert_eq!(betti_numbers(&gd, &pres, quotient_dimension(&gd, &ws)), vec![1, 1, 2, 1, 1]);
        // Same ideal as the pair of complete homogeneous relations, slice
        // by slice.
        let reference = InvariantPresentation {
            generators: pres.generators.clone(),
            ideal: vec![h3, h4],
            variant: PresentationVariant::Semistable,
            quotient_interpretation: Some(true),
        };
        assert!(ideals_equal_up_to(&gd, &pres, &reference, 4));
    }

    #[test]
    fn betti_weighted_projective_space() {
        let (gd, ws) = torus_system(&[&[1], &[1], &[2]]);
        let fan = git_fan(&gd, &ws).unwrap();
        let pres = chow_presentation(&gd, &ws, &fan.chambers[0], PresentationVariant::Semistable).unwrap();
        assert_eq!(pres.ideal.len(), 1);
        assert_eq!(pres.ideal[0].to_string(), "t1^3"); // normalized from 2 t^3
        assert_eq!(betti_numbers(&gd, &pres, 2), vec![1, 1, 1]);
    }

    #[test]
    fn properly_stable_variant() {
        use crate::stability::{chamber_lookup, LookupResult};
        let (gd, ws) = torus_system(&[&[1, 0], &[1, 0], &[-1, 1], &[0, 1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        // Inside a chamber both loci agree and so do the ideals.
        let ch = fan
            .chambers
            .iter()
            .find(|c| c.cone.contains(&LatVec::from_i64(&[1, 1])))
            .unwrap();
        let ss = chow_presentation(&gd, &ws, ch, PresentationVariant::Semistable).unwrap();
        let ps = chow_presentation(&gd, &ws, ch, PresentationVariant::ProperlyStable).unwrap();
        assert_eq!(ss.ideal, ps.ideal);
        // On a wall the properly stable locus is smaller and the ideal
        // grows: here the stable quotient is a line.
        let LookupResult::Found { chamber: wall, .. } =
            chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[0, 1])).unwrap()
        else {
            panic!("wall is effective")
        };
        assert_eq!(wall.properly_stable, Some(false));
        let ps_wall = chow_presentation(&gd, &ws, &wall, PresentationVariant::ProperlyStable).unwrap();
        assert_eq!(betti_numbers(&gd, &ps_wall, 2), vec![1, 1, 0]);
        let ss_wall = chow_presentation(&gd, &ws, &wall, PresentationVariant::Semistable).unwrap();
        assert_ne!(ss_wall.ideal, ps_wall.ideal);
    }

    #[test]
    fn picard_hirzebruch() {
        let (gd, ws) = torus_system(&[&[1, 0], &[1, 0], &[-1, 1], &[0, 1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        let ch = fan
            .chambers
            .iter()
            .find(|c| c.cone.contains(&LatVec::from_i64(&[1, 1])))
            .unwrap();
        let pic = picard_and_ample(&gd, ch);
        assert!(pic.codim_ok);
        assert!(pic.relations.is_empty());
        assert_eq!(pic.rank, 2);
        assert_eq!(pic.ample_cone, ch.cone);
    }

    #[test]
    fn picard_grassmannian_and_plane() {
        let spec = GroupSpec::new(vec![2], 0).unwrap();
        let module = ModuleSpec::new(vec![(Summand::Std { block: 0, twist: vec![] }, 4)]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        let pic = picard_and_ample(&gd, &fan.chambers[0]);
        assert_eq!(pic.rank, 1);
        assert!(pic.codim_ok);
        assert_eq!(pic.ample_cone, RatCone::from_rays(1, &[LatVec::from_i64(&[1])]).unwrap());

        let (gd2, ws2) = torus_system(&[&[1], &[1], &[1]]);
        let fan2 = git_fan(&gd2, &ws2).unwrap();
        let pic2 = picard_and_ample(&gd2, &fan2.chambers[0]);
        assert_eq!(pic2.rank, 1);
    }

    #[test]
    fn empty_quotient_presents_the_unit_ideal() {
        // In the region swept out entirely by the twisted vector the
        // semistable locus is empty; the projected class of the dense
        // stratum is a unit and every graded dimension vanishes.
        use crate::groupdata::Summand;
        use crate::linalg::Int;
        let spec = GroupSpec::new(vec![2], 1).unwrap();
        let module = ModuleSpec::new(vec![
            (Summand::Std { block: 0, twist: vec![Int::from(0)] }, 2),
            (Summand::Std { block: 0, twist: vec![Int::from(1)] }, 1),
            (Summand::TorusChar { weight: vec![Int::from(-1)] }, 1),
        ]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        let phantom = crate::polycone::RatCone::from_rays(
            2,
            &[LatVec::from_i64(&[1, 1]), LatVec::from_i64(&[1, 2])],
        )
        .unwrap();
        let a = fan.chambers.iter().find(|ch| ch.cone == phantom).unwrap();
        let pres = chow_presentation(&gd, &ws, a, PresentationVariant::Semistable).unwrap();
        assert!(pres.ideal.contains(&PolyElement::one(3)));
        assert_eq!(betti_numbers(&gd, &pres, 2), vec![0, 0, 0]);
    }

    #[test]
    fn picard_with_reductive_codimension_one_stratum() {
        // The torus-negative chamber of the twisted GL(2) x T module has an
        // invariant divisor; its class cuts the Picard rank down by one.
        use crate::groupdata::Summand;
        use crate::linalg::Int;
        let spec = GroupSpec::new(vec![2], 1).unwrap();
        let module = ModuleSpec::new(vec![
            (Summand::Std { block: 0, twist: vec![Int::from(0)] }, 2),
            (Summand::Std { block: 0, twist: vec![Int::from(1)] }, 1),
            (Summand::TorusChar { weight: vec![Int::from(-1)] }, 1),
        ]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        let cone_c = crate::polycone::RatCone::from_rays(
            2,
            &[LatVec::from_i64(&[1, 0]), LatVec::from_i64(&[0, -1])],
        )
        .unwrap();
        let c = fan.chambers.iter().find(|ch| ch.cone == cone_c).unwrap();
        let pic = picard_and_ample(&gd, c);
        assert!(!pic.codim_ok);
        assert_eq!(pic.relations, vec![Character::from_i64(&[0, 1])]);
        assert_eq!(pic.rank, 1);
        // Quotient coordinate is the determinant direction.
        assert_eq!(pic.quotient_coords, vec![0]);

        let b = fan
            .chambers
            .iter()
            .find(|ch| ch.cone.contains_relative_interior(&LatVec::from_i64(&[2, 1])))
            .unwrap();
        let pic_b = picard_and_ample(&gd, b);
        assert!(pic_b.codim_ok);
        assert_eq!(pic_b.rank, 2);
    }

    #[test]
    fn picard_with_codimension_one_stratum() {
        // Two independent weights: both strata are coordinate hyperplanes,
        // the Picard group of the (point) quotient is trivial.
        let (gd, ws) = torus_system(&[&[1, 0], &[0, 1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        let ch = &fan.chambers[0];
        let pic = picard_and_ample(&gd, ch);
        assert!(!pic.codim_ok);
        assert_eq!(pic.relations.len(), 2);
        assert_eq!(pic.rank, 0);
    }

    #[test]
    fn projective_detector() {
        let (_, ws) = torus_system(&[&[1], &[1], &[1]]);
        assert!(projective_case(&ws));
        let (_, ws2) = torus_system(&[&[1], &[-1]]);
        assert!(!projective_case(&ws2));
    }

    #[test]
    fn ideal_stability_under_non_maximal_classes() {
        // Adding the class of a smaller unstable subspace (a multiple of a
        // maximal one) does not change the graded dimensions.
        let (gd, ws) = torus_system(&[&[1, 0], &[1, 0], &[-1, 1], &[0, 1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        let ch = fan
            .chambers
            .iter()
            .find(|c| c.cone.contains(&LatVec::from_i64(&[1, 1])))
            .unwrap();
        let pres = chow_presentation(&gd, &ws, ch, PresentationVariant::Semistable).unwrap();
        let mut bigger = pres.clone();
        // the origin: all four weights vanish; its class is a multiple of
        // every maximal stratum class
        let extra = ws
            .columns()
            .iter()
            .fold(PolyElement::one(2), |acc, c| acc.mul(&PolyElement::linear_form(&c.weight)));
        bigger.ideal.push(extra.normalized());
        assert_eq!(
            betti_numbers(&gd, &pres, 2),
            betti_numbers(&gd, &bigger, 2)
        );
    }
}
