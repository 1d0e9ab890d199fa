//! Stability engine: semistability certificates for supports and points,
//! enumeration of the maximal unstable strata with one-parameter-subgroup
//! certificates, the effective cone and its walls, and the chamber fan on
//! the character space.
//!
//! Everything reduces to exact cone membership. A support (set of weight
//! columns allowed to be nonzero) is semistable for a character exactly
//! when the character lies in the cone spanned by the supported weights;
//! the phase-1 simplex in `linalg` decides this and hands back either the
//! nonnegative combination or the destabilizing functional. The family of
//! unstable supports is downward closed, so its maximal members are found
//! by a descending search from the full support with memoized membership.

use crate::groupdata::{
    stabilizer_dims, Character, Cocharacter, GroupData, GroupError, WeightSystem,
};
use crate::linalg::{cone_member, ConeSolve, Rat};
use crate::poly::PolyElement;
use crate::polycone::{arrangement_chambers, ConeError, Fan, LatVec, RatCone};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashMap};

#[derive(Debug, thiserror::Error)]
pub enum StabilityError {
    #[error("point-level stability tests are only supported for torus groups")]
    ReductiveUnsupported,
    #[error("support search limited to 128 weight columns, got {0}")]
    TooManyColumns(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Semistable,
    Unstable,
    ProperlyStable,
}

/// Outcome of a numerical-criterion test, with its exact certificate.
#[derive(Clone, Debug)]
pub struct HmCertificate {
    pub verdict: Verdict,
    /// Destabilizing cocharacter for `Unstable`; for `Semistable` (but not
    /// properly stable) a nonzero cocharacter with pairing zero witnessing
    /// the failure of proper stability.
    pub lambda: Option<Cocharacter>,
    /// `<chi, lambda>` when a cocharacter is present.
    pub pairing: Option<Rat>,
    /// For semistable verdicts, `chi = sum c_a eta_a` over the support.
    pub combination: Option<Vec<(usize, Rat)>>,
}

/// Support of a point: the weight columns with a nonzero coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSupport {
    pub support: BTreeSet<usize>,
    /// Concrete coordinates, one entry per slot of the module (columns in
    /// order, multiplicities expanded), if the caller has them; stability
    /// only depends on the support.
    pub coords: Option<Vec<Rat>>,
}

impl PointSupport {
    pub fn from_support(support: BTreeSet<usize>) -> Self {
        PointSupport { support, coords: None }
    }

    pub fn from_coordinates(ws: &WeightSystem, coords: Vec<Rat>) -> Self {
        let mut support = BTreeSet::new();
        let mut pos = 0;
        for (a, col) in ws.columns().iter().enumerate() {
            for _ in 0..col.multiplicity {
                if pos < coords.len() && !coords[pos].is_zero() {
                    support.insert(a);
                }
                pos += 1;
            }
        }
        PointSupport { support, coords: Some(coords) }
    }
}

/// How the maximality of an unstable component was decided: exact for torus
/// strata and for strata of maximal orbit dimension, heuristic when a
/// bigger orbit exists that the Weyl-inclusion test cannot rule out as a
/// superset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalFlag {
    Certified,
    Heuristic,
}

/// A maximal unstable stratum with its certificates.
#[derive(Clone, Debug)]
pub struct UnstableComponent {
    /// Columns not forced to vanish on the stratum.
    pub support: BTreeSet<usize>,
    /// Complementary columns with multiplicities: the vanishing equations.
    pub vanishing: Vec<(usize, usize)>,
    pub lambda: Cocharacter,
    /// Product of the vanishing weights, one factor per equation.
    pub class_t: PolyElement,
    /// Codimension of the linear stratum itself.
    pub codim: usize,
    pub dim_stab: usize,
    /// Codimension of the group sweep of the stratum.
    pub codim_orbit: usize,
    pub maximal: MaximalFlag,
}

fn mask_to_set(mask: u128) -> BTreeSet<usize> {
    (0..128).filter(|i| mask >> i & 1 == 1).collect()
}

fn support_columns(ws: &WeightSystem, mask: u128) -> Vec<Vec<Rat>> {
    (0..ws.num_columns())
        .filter(|a| mask >> a & 1 == 1)
        .map(|a| ws.weight(a).to_rat())
        .collect()
}

struct SupportOracle<'a> {
    ws: &'a WeightSystem,
    chi: Vec<Rat>,
    memo: HashMap<u128, bool>,
}

impl<'a> SupportOracle<'a> {
    fn new(ws: &'a WeightSystem, chi: &LatVec) -> Self {
        SupportOracle { ws, chi: chi.to_rat(), memo: HashMap::new() }
    }

    /// True when `chi` lies in the cone of the supported weights.
    fn semistable(&mut self, mask: u128) -> bool {
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        let cols = support_columns(self.ws, mask);
        let v = matches!(cone_member(&cols, &self.chi), ConeSolve::Combination(_));
        self.memo.insert(mask, v);
        v
    }
}

fn full_mask(ncols: usize) -> u128 {
    if ncols == 128 {
        u128::MAX
    } else {
        (1u128 << ncols) - 1
    }
}

/// Maximal members of a downward-closed "bad" family of supports, found
/// top-down from the full support. Every proper superset of a maximal bad
/// member is good, so the descent through good supports reaches them all.
fn maximal_bad_masks(ncols: usize, mut bad: impl FnMut(u128) -> bool) -> Vec<u128> {
    let mut out: BTreeSet<u128> = BTreeSet::new();
    let mut visited: BTreeSet<u128> = BTreeSet::new();
    let mut stack = vec![full_mask(ncols)];
    while let Some(mask) = stack.pop() {
        if !visited.insert(mask) {
            continue;
        }
        if bad(mask) {
            let maximal = (0..ncols).all(|b| mask >> b & 1 == 1 || !bad(mask | 1 << b));
            if maximal {
                out.insert(mask);
            }
        } else {
            for a in 0..ncols {
                if mask >> a & 1 == 1 {
                    stack.push(mask & !(1 << a));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Minimal members of the upward-closed family of semistable supports,
/// found bottom-up from the empty support.
fn minimal_semistable_masks(ncols: usize, oracle: &mut SupportOracle) -> Vec<u128> {
    let mut out: BTreeSet<u128> = BTreeSet::new();
    let mut visited: BTreeSet<u128> = BTreeSet::new();
    let mut stack = vec![0u128];
    while let Some(mask) = stack.pop() {
        if !visited.insert(mask) {
            continue;
        }
        if oracle.semistable(mask) {
            let minimal = (0..ncols).all(|a| mask >> a & 1 == 0 || !oracle.semistable(mask & !(1 << a)));
            if minimal {
                out.insert(mask);
            }
        } else {
            for b in 0..ncols {
                if mask >> b & 1 == 0 {
                    stack.push(mask | 1 << b);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn check_columns(ws: &WeightSystem) -> Result<(), StabilityError> {
    if ws.num_columns() > 128 {
        return Err(StabilityError::TooManyColumns(ws.num_columns()));
    }
    Ok(())
}

/// Minimal semistable supports for a torus character: the minimal sets of
/// weight columns whose cone contains it.
pub fn minimal_semistable_supports(
    ws: &WeightSystem,
    chi: &LatVec,
) -> Result<Vec<BTreeSet<usize>>, StabilityError> {
    check_columns(ws)?;
    let mut oracle = SupportOracle::new(ws, chi);
    Ok(minimal_semistable_masks(ws.num_columns(), &mut oracle)
        .into_iter()
        .map(mask_to_set)
        .collect())
}

/// Semistability of a support for a character of the maximal torus.
pub fn support_semistable(ws: &WeightSystem, chi: &LatVec, support: &BTreeSet<usize>) -> HmCertificate {
    let cols: Vec<Vec<Rat>> = support.iter().map(|&a| ws.weight(a).to_rat()).collect();
    match cone_member(&cols, &chi.to_rat()) {
        ConeSolve::Combination(c) => HmCertificate {
            verdict: Verdict::Semistable,
            lambda: None,
            pairing: None,
            combination: Some(support.iter().copied().zip(c).collect()),
        },
        ConeSolve::Separator(l) => {
            let lam = LatVec::from_rats(&l);
            let pairing = Rat::from_integer(chi.dot(&lam));
            HmCertificate {
                verdict: Verdict::Unstable,
                lambda: Some(Cocharacter(lam)),
                pairing: Some(pairing),
                combination: None,
            }
        }
    }
}

/// Full numerical criterion for a point of a torus module: semistable when
/// the character lies in the cone of the supported weights, properly stable
/// when it lies in the interior of that cone and the cone is
/// full-dimensional.
pub fn point_test(
    gd: &GroupData,
    ws: &WeightSystem,
    chi: &LatVec,
    point: &PointSupport,
) -> Result<HmCertificate, StabilityError> {
    if !gd.spec().is_torus() {
        return Err(StabilityError::ReductiveUnsupported);
    }
    let base = support_semistable(ws, chi, &point.support);
    if base.verdict == Verdict::Unstable {
        return Ok(base);
    }
    let rays: Vec<LatVec> = point.support.iter().map(|&a| ws.weight(a).clone()).collect();
    let cone = RatCone::from_rays(ws.rank(), &rays)?;
    if cone.dim() == ws.rank() && cone.contains_relative_interior(chi) {
        return Ok(HmCertificate { verdict: Verdict::ProperlyStable, ..base });
    }
    // Semistable on the boundary: witness a nonzero cocharacter with
    // pairing zero that is nonnegative on the whole support.
    let witness = if cone.dim() < ws.rank() {
        cone.span_perp_basis().first().cloned()
    } else {
        cone.facet_normals().iter().find(|n| n.dot(chi).is_zero()).cloned()
    };
    let lambda = witness.expect("boundary membership must expose a tight constraint");
    let pairing = Rat::from_integer(chi.dot(&lambda));
    debug_assert!(pairing.is_zero());
    Ok(HmCertificate {
        verdict: Verdict::Semistable,
        lambda: Some(Cocharacter(lambda)),
        pairing: Some(pairing),
        combination: base.combination,
    })
}

fn component_from_parts(
    gd: &GroupData,
    ws: &WeightSystem,
    mask: u128,
    lambda: Cocharacter,
) -> Result<UnstableComponent, StabilityError> {
    let support = mask_to_set(mask);
    let mut vanishing = Vec::new();
    let mut class_t = PolyElement::one(ws.rank());
    let mut codim = 0;
    for (a, col) in ws.columns().iter().enumerate() {
        if support.contains(&a) {
            continue;
        }
        vanishing.push((a, col.multiplicity));
        codim += col.multiplicity;
        class_t = class_t.mul(&PolyElement::linear_form(&col.weight).pow(col.multiplicity as u32));
    }
    let dims = stabilizer_dims(gd, ws, &lambda, &support)?;
    Ok(UnstableComponent {
        support,
        vanishing,
        lambda,
        class_t,
        codim,
        dim_stab: dims.dim_stabilizer,
        codim_orbit: dims.codim_orbit,
        maximal: MaximalFlag::Certified,
    })
}

fn destabilizer(ws: &WeightSystem, chi_t: &LatVec, mask: u128) -> Cocharacter {
    match cone_member(&support_columns(ws, mask), &chi_t.to_rat()) {
        ConeSolve::Separator(l) => Cocharacter(LatVec::from_rats(&l)),
        ConeSolve::Combination(_) => unreachable!("support must be unstable"),
    }
}

fn column_permutations(gd: &GroupData, ws: &WeightSystem) -> Vec<Vec<usize>> {
    gd.weyl_elements()
        .map(|w| ws.column_permutation(gd.spec(), &w))
        .collect()
}

fn apply_mask_perm(mask: u128, perm: &[usize]) -> u128 {
    let mut out = 0u128;
    for (a, &pa) in perm.iter().enumerate() {
        if mask >> a & 1 == 1 {
            out |= 1 << pa;
        }
    }
    out
}

fn saturate_masks(masks: &[u128], perms: &[Vec<usize>]) -> BTreeSet<u128> {
    let mut out = BTreeSet::new();
    for &m in masks {
        for p in perms {
            out.insert(apply_mask_perm(m, p));
        }
    }
    out
}

fn orbit_representatives(masks: &[u128], perms: &[Vec<usize>]) -> Vec<u128> {
    let mut seen: BTreeSet<u128> = BTreeSet::new();
    let mut reps = Vec::new();
    for &m in masks {
        let rep = perms.iter().map(|p| apply_mask_perm(m, p)).min().unwrap_or(m);
        if seen.insert(rep) {
            reps.push(rep);
        }
    }
    reps.sort();
    reps
}

fn components_from_masks(
    gd: &GroupData,
    ws: &WeightSystem,
    chi_t: &LatVec,
    masks: &[u128],
) -> Result<Vec<UnstableComponent>, StabilityError> {
    let reps: Vec<u128> = if gd.spec().is_torus() {
        masks.to_vec()
    } else {
        let perms = column_permutations(gd, ws);
        orbit_representatives(masks, &perms)
    };
    let mut comps: Vec<UnstableComponent> = reps
        .into_iter()
        .map(|m| component_from_parts(gd, ws, m, destabilizer(ws, chi_t, m)))
        .collect::<Result<_, _>>()?;
    if !gd.spec().is_torus() && comps.len() > 1 {
        // An orbit sweep can only sit properly inside a strictly bigger
        // one, so sweeps of maximal dimension are certainly components; for
        // the rest the Weyl-inclusion test is not conclusive.
        let min_codim = comps.iter().map(|c| c.codim_orbit).min().unwrap();
        for c in comps.iter_mut() {
            if c.codim_orbit > min_codim {
                c.maximal = MaximalFlag::Heuristic;
            }
        }
    }
    Ok(comps)
}

/// The maximal unstable strata for a character: supports maximal with the
/// character outside the cone of the supported weights. For a torus these
/// are exactly the irreducible components of the unstable locus; for a
/// product of GL blocks one representative per Weyl orbit is returned.
pub fn unstable_components(
    gd: &GroupData,
    ws: &WeightSystem,
    chi: &Character,
) -> Result<Vec<UnstableComponent>, StabilityError> {
    check_columns(ws)?;
    let chi_t = chi.embed(gd.spec());
    if chi_t.is_zero() {
        return Ok(Vec::new());
    }
    let mut oracle = SupportOracle::new(ws, &chi_t);
    let masks = maximal_bad_masks(ws.num_columns(), |m| !oracle.semistable(m));
    components_from_masks(gd, ws, &chi_t, &masks)
}

/// Supports failing proper stability for `chi`: maximal supports whose cone
/// is degenerate or has the character only on its boundary. These cut out
/// the complement of the properly stable locus and feed the larger
/// presentation ideal.
pub fn maximal_non_properly_stable_supports(
    gd: &GroupData,
    ws: &WeightSystem,
    chi: &Character,
) -> Result<Vec<UnstableComponent>, StabilityError> {
    check_columns(ws)?;
    let chi_t = chi.embed(gd.spec());
    let rank = ws.rank();
    let ncols = ws.num_columns();
    let mut cone_memo: HashMap<u128, RatCone> = HashMap::new();
    let cone_of = |mask: u128, memo: &mut HashMap<u128, RatCone>| -> RatCone {
        memo.entry(mask)
            .or_insert_with(|| {
                let rays: Vec<LatVec> = (0..ncols)
                    .filter(|a| mask >> a & 1 == 1)
                    .map(|a| ws.weight(a).clone())
                    .collect();
                RatCone::from_rays(rank, &rays).unwrap()
            })
            .clone()
    };
    let masks = maximal_bad_masks(ncols, |m| {
        let cone = cone_of(m, &mut cone_memo);
        !(cone.dim() == rank && cone.contains_relative_interior(&chi_t))
    });
    let reps: Vec<u128> = if gd.spec().is_torus() {
        masks
    } else {
        let perms = column_permutations(gd, ws);
        orbit_representatives(&masks, &perms)
    };
    let mut comps = Vec::new();
    for mask in reps {
        let cone = cone_of(mask, &mut cone_memo);
        // A witness with nonpositive pairing, nonnegative on the support.
        let lambda = if !cone.contains(&chi_t) {
            destabilizer(ws, &chi_t, mask)
        } else if cone.dim() < rank {
            Cocharacter(cone.span_perp_basis()[0].clone())
        } else {
            Cocharacter(
                cone.facet_normals()
                    .iter()
                    .find(|n| n.dot(&chi_t).is_zero())
                    .cloned()
                    .expect("non-interior membership exposes a tight facet"),
            )
        };
        comps.push(component_from_parts(gd, ws, mask, lambda)?);
    }
    Ok(comps)
}

/// Effective cone, wall cones and wall hyperplane normals, all expressed in
/// the det/torus coordinates of the character group of `G`.
#[derive(Clone, Debug)]
pub struct EffectiveData {
    pub effective: RatCone,
    pub walls: Vec<RatCone>,
    /// Normals of the wall hyperplanes in character coordinates.
    pub wall_normals: Vec<LatVec>,
    /// False when the character space of `G` lies inside the span of some
    /// torus wall; the wall list is then incomplete.
    pub complete: bool,
}

fn canonical_sign(v: LatVec) -> LatVec {
    match v.0.iter().find(|c| !c.is_zero()) {
        Some(first) if first.is_negative() => v.neg(),
        _ => v,
    }
}

/// Pull a cone in torus-character coordinates back along the embedding of
/// the character group of `G`.
fn pull_back(cone: &RatCone, basis: &[LatVec]) -> RatCone {
    let s = basis.len();
    let normals: Vec<LatVec> = cone
        .facets()
        .iter()
        .map(|f| LatVec(basis.iter().map(|b| b.dot(f)).collect()))
        .collect();
    RatCone::from_inequalities(s, &normals).unwrap()
}

/// Hyperplanes spanned by weights, as primitive normals in torus
/// coordinates. In rank one the only such hyperplane is the origin,
/// spanned by the empty subset.
fn torus_wall_normals(ws: &WeightSystem) -> Vec<LatVec> {
    let rank = ws.rank();
    if rank == 1 {
        return vec![LatVec::from_i64(&[1])];
    }
    let mut directions: Vec<LatVec> = Vec::new();
    for c in ws.columns() {
        if c.weight.is_zero() {
            continue;
        }
        let d = canonical_sign(c.weight.primitive());
        if !directions.contains(&d) {
            directions.push(d);
        }
    }
    let mut normals: Vec<LatVec> = Vec::new();
    let mut subset = vec![0usize; rank - 1];
    enumerate_subsets(directions.len(), rank - 1, &mut subset, 0, 0, &mut |idx| {
        let rows: Vec<Vec<Rat>> = idx.iter().map(|&i| directions[i].to_rat()).collect();
        let ker = crate::linalg::kernel_basis(&rows, rank);
        if ker.len() != 1 {
            return; // the subset does not span a hyperplane
        }
        let n = canonical_sign(LatVec::from_rats(&ker[0]));
        if !normals.contains(&n) {
            normals.push(n);
        }
    });
    normals.sort();
    normals
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut Vec<usize>,
    pos: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if pos == k {
        f(buf);
        return;
    }
    for i in start..n {
        buf[pos] = i;
        enumerate_subsets(n, k, buf, pos + 1, i + 1, f);
    }
}

pub fn effective_cone_and_walls(gd: &GroupData, ws: &WeightSystem) -> EffectiveData {
    let rank = ws.rank();
    let basis = gd.char_basis();
    let weights: Vec<LatVec> = ws.columns().iter().map(|c| c.weight.clone()).collect();
    let effective_t = RatCone::from_rays(rank, &weights).unwrap();
    let effective = pull_back(&effective_t, basis);

    let mut complete = true;
    let mut wall_normals: Vec<LatVec> = Vec::new();
    let mut walls: Vec<RatCone> = Vec::new();
    for n in torus_wall_normals(ws) {
        let tau_weights: Vec<LatVec> = weights.iter().filter(|w| n.dot(w).is_zero()).cloned().collect();
        let tau = RatCone::from_rays(rank, &tau_weights).unwrap();
        let wall = pull_back(&tau, basis);
        if !walls.contains(&wall) {
            walls.push(wall);
        }
        let pulled = canonical_sign(LatVec(basis.iter().map(|b| b.dot(&n)).collect()));
        if pulled.is_zero() {
            complete = false;
            continue;
        }
        if !wall_normals.contains(&pulled) {
            wall_normals.push(pulled);
        }
    }
    crate::polycone::sort_cones(&mut walls);
    wall_normals.sort();
    EffectiveData { effective, walls, wall_normals, complete }
}

/// A GIT-equivalence class of maximal dimension, with the stability data of
/// its interior characters.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub cone: RatCone,
    pub representative: Character,
    /// Minimal semistable supports at the representative.
    pub semistable_supports: Vec<BTreeSet<usize>>,
    pub components: Vec<UnstableComponent>,
    /// Whether every semistable point is properly stable on this class;
    /// `None` when the wall analysis was flagged incomplete.
    pub properly_stable: Option<bool>,
}

/// The chamber fan on the character space.
#[derive(Clone, Debug)]
pub struct GITFan {
    pub char_rank: usize,
    pub fan: Fan,
    pub chambers: Vec<Chamber>,
    pub effective_cone: RatCone,
    pub walls: Vec<RatCone>,
    pub complete: bool,
}

struct CellAnalysis {
    minimal_ss: Vec<u128>,
    maximal_us: Vec<u128>,
}

fn analyze_character(ws: &WeightSystem, chi_t: &LatVec) -> CellAnalysis {
    let mut oracle = SupportOracle::new(ws, chi_t);
    let maximal_us = maximal_bad_masks(ws.num_columns(), |m| !oracle.semistable(m));
    let minimal_ss = minimal_semistable_masks(ws.num_columns(), &mut oracle);
    CellAnalysis { minimal_ss, maximal_us }
}

/// Whether every semistable point of the class of `rep` is properly
/// stable. For a torus the criterion is local and exact: every minimal
/// semistable support spans a full-dimensional cone with the character in
/// its interior (upward closure extends this to all semistable supports).
/// For a nonabelian group the local test is sufficient; when it fails, the
/// wall cones decide, provided the wall analysis was complete.
fn ps_flag(
    gd: &GroupData,
    ws: &WeightSystem,
    rep: &LatVec,
    minimal_ss: &[u128],
    walls: &[RatCone],
    complete: bool,
) -> Option<bool> {
    let chi_t = Character { coords: rep.0.clone() }.embed(gd.spec());
    let rank = ws.rank();
    let local = minimal_ss.iter().all(|&m| {
        let rays: Vec<LatVec> = (0..ws.num_columns())
            .filter(|a| m >> a & 1 == 1)
            .map(|a| ws.weight(a).clone())
            .collect();
        let cone = RatCone::from_rays(rank, &rays).unwrap();
        cone.dim() == rank && cone.contains_relative_interior(&chi_t)
    });
    if gd.spec().is_torus() {
        return Some(local);
    }
    if local {
        return Some(true);
    }
    if complete {
        return Some(!walls.iter().any(|w| w.contains(rep)));
    }
    None
}

/// Thread pool honoring the GITFAN_THREADS cap.
fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GITFAN_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            builder = builder.num_threads(n.max(1));
        }
    }
    builder.build().expect("failed to build thread pool")
}

/// Compute the chamber fan: slice the effective cone along the wall
/// hyperplanes, analyze one interior representative per cell, and merge
/// adjacent cells whose (Weyl-saturated) unstable families agree. Cell
/// analyses run in parallel; the output order is canonical and independent
/// of the thread count.
pub fn git_fan(gd: &GroupData, ws: &WeightSystem) -> Result<GITFan, StabilityError> {
    check_columns(ws)?;
    let eff = effective_cone_and_walls(gd, ws);
    let s = gd.char_rank();
    let cells = arrangement_chambers(s, &eff.wall_normals, &eff.effective);

    let spec = gd.spec();
    let embed = |v: &LatVec| Character { coords: v.0.clone() }.embed(spec);
    let pool = thread_pool();
    let analyses: Vec<CellAnalysis> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| analyze_character(ws, &embed(&cell.interior_point())))
            .collect()
    });

    // Merge adjacent cells with identical unstable-support families (Weyl
    // saturated in the nonabelian case). The classes are exactly the
    // equality classes of these families, and slicing along the full wall
    // spans can oversplit them: a wall is the cone of the weights on the
    // hyperplane, not the hyperplane itself, so a class may well cross the
    // far side of a wall span.
    let families: Vec<BTreeSet<u128>> = if spec.is_torus() {
        analyses.iter().map(|a| a.maximal_us.iter().copied().collect()).collect()
    } else {
        let perms = column_permutations(gd, ws);
        analyses.iter().map(|a| saturate_masks(&a.maximal_us, &perms)).collect()
    };
    let mut group: Vec<usize> = (0..cells.len()).collect();
    fn find(group: &mut Vec<usize>, i: usize) -> usize {
        if group[i] != i {
            let root = find(group, group[i]);
            group[i] = root;
        }
        group[i]
    }
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if families[i] != families[j] {
                continue;
            }
            let meet = cells[i].intersect(&cells[j])?;
            if meet.dim() + 1 == cells[i].dim() {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a] = b;
            }
        }
    }
    let mut merged: Vec<Vec<usize>> = Vec::new();
    {
        let mut root_index: HashMap<usize, usize> = HashMap::new();
        for i in 0..cells.len() {
            let root = find(&mut group, i);
            let idx = *root_index.entry(root).or_insert_with(|| {
                merged.push(Vec::new());
                merged.len() - 1
            });
            merged[idx].push(i);
        }
    }
    let mut chamber_cones: Vec<RatCone> = merged
        .iter()
        .map(|members| {
            let mut rays = Vec::new();
            for &i in members {
                rays.extend(cells[i].rays());
            }
            RatCone::from_rays(s, &rays)
        })
        .collect::<Result<_, _>>()?;
    crate::polycone::sort_cones(&mut chamber_cones);

    let chambers: Vec<Chamber> = pool.install(|| {
        chamber_cones
            .par_iter()
            .map(|cone| -> Result<Chamber, StabilityError> {
                let rep_vec = cone.interior_point();
                let rep = Character { coords: rep_vec.0.clone() };
                let chi_t = rep.embed(spec);
                let analysis = analyze_character(ws, &chi_t);
                let components = components_from_masks(gd, ws, &chi_t, &analysis.maximal_us)?;
                let properly_stable =
                    ps_flag(gd, ws, &rep_vec, &analysis.minimal_ss, &eff.walls, eff.complete);
                Ok(Chamber {
                    cone: cone.clone(),
                    representative: rep,
                    semistable_supports: analysis.minimal_ss.iter().map(|&m| mask_to_set(m)).collect(),
                    components,
                    properly_stable,
                })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;

    let fan = Fan::from_maximal_cones(s, &chamber_cones);
    Ok(GITFan {
        char_rank: s,
        fan,
        chambers,
        effective_cone: eff.effective,
        walls: eff.walls,
        complete: eff.complete,
    })
}

/// Result of locating a character inside the fan.
#[derive(Clone, Debug)]
pub enum LookupResult {
    /// The character has an empty semistable locus.
    NotEffective,
    Found {
        /// Index into the fan's cone list of the unique cone containing the
        /// character in its relative interior.
        cone_index: usize,
        chamber: Chamber,
    },
}

/// Locate the GIT class of a character: the unique fan cone containing it
/// in its relative interior, with the stability data of that class.
/// Invariant under positive scaling of the character.
pub fn chamber_lookup(
    gd: &GroupData,
    ws: &WeightSystem,
    fan: &GITFan,
    chi: &Character,
) -> Result<LookupResult, StabilityError> {
    let y = LatVec(chi.coords.clone());
    if !fan.effective_cone.contains(&y) {
        return Ok(LookupResult::NotEffective);
    }
    let cone_index = fan
        .fan
        .cones()
        .iter()
        .position(|c| c.contains_relative_interior(&y))
        .expect("fan cones cover the effective cone");
    let cone = &fan.fan.cones()[cone_index];
    if let Some(ch) = fan.chambers.iter().find(|ch| &ch.cone == cone) {
        return Ok(LookupResult::Found { cone_index, chamber: ch.clone() });
    }
    let rep_vec = cone.interior_point();
    let rep = Character { coords: rep_vec.0.clone() };
    let chi_t = rep.embed(gd.spec());
    let analysis = analyze_character(ws, &chi_t);
    let components = components_from_masks(gd, ws, &chi_t, &analysis.maximal_us)?;
    let properly_stable = ps_flag(gd, ws, &rep_vec, &analysis.minimal_ss, &fan.walls, fan.complete);
    let chamber = Chamber {
        cone: cone.clone(),
        representative: rep,
        semistable_supports: analysis.minimal_ss.iter().map(|&m| mask_to_set(m)).collect(),
        components,
        properly_stable,
    };
    Ok(LookupResult::Found { cone_index, chamber })
}


#[cfg(test)]
mod tests {
    use super::testkit::{grassmannian_2_4, torus_system};
    use super::*;

    fn f1() -> (GroupData, WeightSystem) {
        torus_system(&[&[1, 0], &[1, 0], &[-1, 1], &[0, 1]])
    }

    fn lv(v: &[i64]) -> LatVec {
        LatVec::from_i64(v)
    }

    fn check_unstable_cert(ws: &WeightSystem, chi: &LatVec, support: &BTreeSet<usize>, cert: &HmCertificate) {
        assert_eq!(cert.verdict, Verdict::Unstable);
        let lam = &cert.lambda.as_ref().unwrap().0;
        for &a in support {
            assert!(!ws.weight(a).dot(lam).is_negative());
        }
        assert!(chi.dot(lam).is_negative());
        assert_eq!(cert.pairing.clone().unwrap(), Rat::from_integer(chi.dot(lam)));
    }

    #[test]
    fn support_semistability_examples() {
        let (_, ws) = f1();
        let chi = lv(&[1, 1]);
        let ss = support_semistable(&ws, &chi, &[0, 2].into());
        assert_eq!(ss.verdict, Verdict::Semistable);
        let combo = ss.combination.unwrap();
        let mut acc = vec![Rat::zero(); 2];
        for (a, c) in &combo {
            for i in 0..2 {
                acc[i] += c * Rat::from_integer(ws.weight(*a).0[i].clone());
            }
        }
        assert_eq!(acc, chi.to_rat());

        let us = support_semistable(&ws, &chi, &[0, 1].into());
        check_unstable_cert(&ws, &chi, &[0, 1].into(), &us);

        let origin = support_semistable(&ws, &chi, &BTreeSet::new());
        check_unstable_cert(&ws, &chi, &BTreeSet::new(), &origin);
    }

    #[test]
    fn point_tests_projective_plane() {
        let (gd, ws) = torus_system(&[&[1], &[1], &[1]]);
        let chi = lv(&[1]);
        let x = PointSupport::from_support([2].into());
        let cert = point_test(&gd, &ws, &chi, &x).unwrap();
        assert_eq!(cert.verdict, Verdict::ProperlyStable);

        let zero = PointSupport::from_support(BTreeSet::new());
        let cert = point_test(&gd, &ws, &chi, &zero).unwrap();
        assert_eq!(cert.verdict, Verdict::Unstable);
    }

    #[test]
    fn point_test_on_wall_is_not_properly_stable() {
        let (gd, ws) = f1();
        let chi = lv(&[1, 0]);
        let x = PointSupport::from_support([0, 1].into());
        let cert = point_test(&gd, &ws, &chi, &x).unwrap();
        assert_eq!(cert.verdict, Verdict::Semistable);
        let lam = cert.lambda.unwrap().0;
        assert!(!lam.is_zero());
        assert!(cert.pairing.unwrap().is_zero());
        for &a in &[0usize, 1] {
            assert!(!ws.weight(a).dot(&lam).is_negative());
        }
    }

    #[test]
    fn point_test_rejects_reductive() {
        let (gd, ws) = grassmannian_2_4();
        let err = point_test(&gd, &ws, &lv(&[1, 1]), &PointSupport::from_support([0].into()));
        assert!(matches!(err, Err(StabilityError::ReductiveUnsupported)));
    }

    #[test]
    fn components_projective_plane() {
        let (gd, ws) = torus_system(&[&[1], &[1], &[1]]);
        let comps = unstable_components(&gd, &ws, &Character::from_i64(&[1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].support.is_empty());
        assert_eq!(comps[0].codim, 3);
        assert_eq!(comps[0].class_t.to_string(), "t1^3");
        assert_eq!(comps[0].codim_orbit, 3);
    }

    #[test]
    fn components_hirzebruch() {
        let (gd, ws) = f1();
        let comps = unstable_components(&gd, &ws, &Character::from_i64(&[1, 1])).unwrap();
        assert_eq!(comps.len(), 2);
        let supports: Vec<BTreeSet<usize>> = comps.iter().map(|c| c.support.clone()).collect();
        assert!(supports.contains(&[0, 1].into()));
        assert!(supports.contains(&[2, 3].into()));
        for c in &comps {
            assert_eq!(c.codim, 2);
            assert_eq!(c.codim_orbit, 2);
            assert_eq!(c.maximal, MaximalFlag::Certified);
            let rays: Vec<LatVec> = c.support.iter().map(|&a| ws.weight(a).clone()).collect();
            let cone = RatCone::from_rays(2, &rays).unwrap();
            assert!(!cone.contains(&lv(&[1, 1])));
            assert!(c.class_t.is_homogeneous());
            assert_eq!(c.class_t.degree() as usize, c.codim);
        }
        let classes: BTreeSet<String> = comps.iter().map(|c| c.class_t.to_string()).collect();
        assert!(classes.contains("t1^2"));
        assert!(classes.contains("-t1*t2 + t2^2"));
    }

    #[test]
    fn components_grassmannian() {
        let (gd, ws) = grassmannian_2_4();
        let comps = unstable_components(&gd, &ws, &Character::from_i64(&[1])).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].codim, 4);
        assert_eq!(comps[0].codim_orbit, 3);
        assert_eq!(comps[0].dim_stab, 3);
        assert_eq!(comps[0].maximal, MaximalFlag::Certified);
        let s = comps[0].class_t.to_string();
        assert!(s == "t2^4" || s == "t1^4", "class was {s}");
    }

    #[test]
    fn zero_character_has_no_components() {
        let (gd, ws) = f1();
        assert!(unstable_components(&gd, &ws, &Character::from_i64(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn effective_and_walls_p1xp1() {
        let (gd, ws) = torus_system(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
        let eff = effective_cone_and_walls(&gd, &ws);
        assert!(eff.complete);
        assert_eq!(eff.effective, RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap());
        assert_eq!(
            eff.walls,
            vec![
                RatCone::from_rays(2, &[lv(&[0, 1])]).unwrap(),
                RatCone::from_rays(2, &[lv(&[1, 0])]).unwrap(),
            ]
        );
    }

    #[test]
    fn effective_whole_plane_with_axis_walls() {
        let (gd, ws) = torus_system(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let eff = effective_cone_and_walls(&gd, &ws);
        assert_eq!(eff.effective, RatCone::full(2));
        assert_eq!(eff.walls.len(), 2);
        for w in &eff.walls {
            assert_eq!(w.dim(), 1);
            assert_eq!(w.lineality_dim(), 1); // both axes are lines
        }
    }

    #[test]
    fn rank_one_wall_is_origin() {
        let (gd, ws) = torus_system(&[&[1], &[1], &[1]]);
        let eff = effective_cone_and_walls(&gd, &ws);
        assert_eq!(eff.effective, RatCone::from_rays(1, &[lv(&[1])]).unwrap());
        assert_eq!(eff.walls, vec![RatCone::zero(1)]);
    }

    #[test]
    fn fan_rank_one() {
        let (gd, ws) = torus_system(&[&[1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        assert_eq!(fan.chambers.len(), 1);
        assert_eq!(fan.fan.cones().len(), 2); // origin and the ray
        assert_eq!(fan.chambers[0].properly_stable, Some(true));
    }

    #[test]
    fn fan_p1xp1() {
        let (gd, ws) = torus_system(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        assert_eq!(fan.chambers.len(), 1);
        assert_eq!(fan.fan.cones().len(), 4); // origin, two rays, the quadrant
        assert!(fan.fan.is_valid_fan());
    }

    #[test]
    fn fan_hirzebruch_two_chambers() {
        let (gd, ws) = f1();
        let fan = git_fan(&gd, &ws).unwrap();
        assert_eq!(fan.chambers.len(), 2);
        let cones: Vec<&RatCone> = fan.chambers.iter().map(|c| &c.cone).collect();
        assert!(cones.contains(&&RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap()));
        assert!(cones.contains(&&RatCone::from_rays(2, &[lv(&[0, 1]), lv(&[-1, 1])]).unwrap()));
        for ch in &fan.chambers {
            assert_eq!(ch.properly_stable, Some(true));
        }
        assert!(fan.fan.is_valid_fan());
    }

    #[test]
    fn class_crossing_a_wall_span_is_one_chamber() {
        // The wall attached to span{(1,0)} is only the ray through (1,0);
        // the class opposite it crosses the span and must not be split.
        let (gd, ws) = torus_system(&[&[1, 0], &[-1, 2], &[0, -1]]);
        let fan = git_fan(&gd, &ws).unwrap();
        assert_eq!(fan.chambers.len(), 3);
        let sector = RatCone::from_rays(2, &[lv(&[-1, 2]), lv(&[0, -1])]).unwrap();
        assert!(fan.chambers.iter().any(|c| c.cone == sector));
        // Same class on both sides of the span.
        let a = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[-1, 1])).unwrap();
        let b = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[-1, -1])).unwrap();
        match (a, b) {
            (LookupResult::Found { cone_index: ia, .. }, LookupResult::Found { cone_index: ib, .. }) => {
                assert_eq!(ia, ib)
            }
            _ => panic!("both effective"),
        }
    }

    #[test]
    fn lookup_hirzebruch() {
        let (gd, ws) = f1();
        let fan = git_fan(&gd, &ws).unwrap();
        let found = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[2, 3])).unwrap();
        let LookupResult::Found { chamber, .. } = found else { panic!("effective") };
        assert_eq!(chamber.cone, RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, 1])]).unwrap());
        assert_eq!(chamber.properly_stable, Some(true));

        let on_wall = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[0, 1])).unwrap();
        let LookupResult::Found { chamber, .. } = on_wall else { panic!("effective") };
        assert_eq!(chamber.cone, RatCone::from_rays(2, &[lv(&[0, 1])]).unwrap());
        assert_eq!(chamber.properly_stable, Some(false));

        let off = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[-5, -1])).unwrap();
        assert!(matches!(off, LookupResult::NotEffective));
    }

    #[test]
    fn lookup_scaling_invariance() {
        let (gd, ws) = grassmannian_2_4();
        let fan = git_fan(&gd, &ws).unwrap();
        let a = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[1])).unwrap();
        let b = chamber_lookup(&gd, &ws, &fan, &Character::from_i64(&[5])).unwrap();
        match (a, b) {
            (LookupResult::Found { cone_index: ia, .. }, LookupResult::Found { cone_index: ib, .. }) => {
                assert_eq!(ia, ib)
            }
            _ => panic!("both effective"),
        }
    }

    #[test]
    fn grassmannian_fan_single_chamber() {
        let (gd, ws) = grassmannian_2_4();
        let fan = git_fan(&gd, &ws).unwrap();
        assert_eq!(fan.char_rank, 1);
        assert_eq!(fan.chambers.len(), 1);
        assert_eq!(fan.chambers[0].properly_stable, Some(true));
        assert!(fan.complete);
    }

    #[test]
    fn reductive_fan_with_twisted_summands() {
        // GL(2) x T on std + twisted std + a negative torus character:
        // three chambers in the (det, torus) plane, all data hand-checked.
        // Columns: 0 = e1 (m2), 1 = e2 (m2), 2 = e1+e3, 3 = e2+e3, 4 = -e3.
        use crate::groupdata::{build_group, GroupSpec, ModuleSpec, Summand};
        use crate::linalg::Int;
        let spec = GroupSpec::new(vec![2], 1).unwrap();
        let module = ModuleSpec::new(vec![
            (Summand::Std { block: 0, twist: vec![Int::from(0)] }, 2),
            (Summand::Std { block: 0, twist: vec![Int::from(1)] }, 1),
            (Summand::TorusChar { weight: vec![Int::from(-1)] }, 1),
        ]);
        let (gd, ws) = build_group(&spec, &module).unwrap();
        let fan = git_fan(&gd, &ws).unwrap();
        assert!(fan.complete);
        assert_eq!(fan.chambers.len(), 3);

        let cone_a = RatCone::from_rays(2, &[lv(&[1, 1]), lv(&[1, 2])]).unwrap();
        let cone_b = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 1])]).unwrap();
        let cone_c = RatCone::from_rays(2, &[lv(&[1, 0]), lv(&[0, -1])]).unwrap();
        let chamber = |cone: &RatCone| fan.chambers.iter().find(|c| &c.cone == cone).unwrap();

        // Between the torus ray and twice the determinant: the twisted
        // vector sweeps out everything, the class has empty semistable
        // locus, and the formula bound degenerates to zero. The stratum
        // keeping only the twisted coordinates sits inside that dense
        // sweep, which is exactly what the flag cannot exclude.
        let a = chamber(&cone_a);
        let a_data: Vec<(Vec<usize>, usize, MaximalFlag)> = a
            .components
            .iter()
            .map(|c| (c.support.iter().copied().collect(), c.codim_orbit, c.maximal))
            .collect();
        assert_eq!(
            a_data,
            vec![
                (vec![2, 3], 5, MaximalFlag::Heuristic),
                (vec![0, 1, 2, 4], 0, MaximalFlag::Certified),
            ]
        );

        let b = chamber(&cone_b);
        let b_data: Vec<(Vec<usize>, usize)> = b
            .components
            .iter()
            .map(|c| (c.support.iter().copied().collect(), c.codim_orbit))
            .collect();
        assert_eq!(
            b_data,
            vec![(vec![0, 2, 3], 2), (vec![0, 1, 4], 2), (vec![0, 2, 4], 2)]
        );
        assert_eq!(b.properly_stable, Some(true));

        let c = chamber(&cone_c);
        let c_data: Vec<(Vec<usize>, usize)> = c
            .components
            .iter()
            .map(|cc| (cc.support.iter().copied().collect(), cc.codim_orbit))
            .collect();
        assert_eq!(c_data, vec![(vec![0, 1, 2, 3], 1), (vec![0, 2, 4], 2)]);
        assert_eq!(c.properly_stable, Some(true));
        // The codimension-one sweep cannot sit inside anything bigger; the
        // smaller sweep cannot be ruled out as a subset and is flagged.
        assert_eq!(c.components[0].maximal, MaximalFlag::Certified);
        assert_eq!(c.components[1].maximal, MaximalFlag::Heuristic);
    }

    #[test]
    fn non_properly_stable_supports_on_wall() {
        let (gd, ws) = f1();
        let chi = Character::from_i64(&[1, 0]);
        let comps = maximal_non_properly_stable_supports(&gd, &ws, &chi).unwrap();
        assert!(!comps.is_empty());
        let chi_t = chi.embed(gd.spec());
        for c in &comps {
            let lam = &c.lambda.0;
            assert!(!lam.is_zero());
            assert!(!chi_t.dot(lam).is_positive());
            for &a in &c.support {
                assert!(!ws.weight(a).dot(lam).is_negative());
            }
        }
    }
}
