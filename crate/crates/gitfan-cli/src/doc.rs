//! Canonical JSON views of the library types. Integers are emitted as
//! decimal strings, vectors are primitive and lexicographically sorted by
//! construction, polynomials as sorted (exponent, numerator, denominator)
//! triples. Field order is fixed by the struct declarations, so identical
//! inputs serialize byte for byte.

use gitfan::chowring::{InvariantPresentation, PicardPresentation, PresentationVariant};
use gitfan::groupdata::Character;
use gitfan::poly::PolyElement;
use gitfan::polycone::{Fan, LatVec, RatCone};
use gitfan::stability::{Chamber, GITFan, HmCertificate, UnstableComponent, Verdict};
use gitfan::Rat;
use serde::Serialize;

pub fn vec_json(v: &LatVec) -> Vec<String> {
    v.0.iter().map(|x| x.to_string()).collect()
}

pub fn character_json(c: &Character) -> Vec<String> {
    c.coords.iter().map(|x| x.to_string()).collect()
}

pub fn rat_json(r: &Rat) -> (String, String) {
    (r.numer().to_string(), r.denom().to_string())
}

/// Sorted (exponent, numerator, denominator) triples.
pub type PolyJson = Vec<(Vec<u32>, String, String)>;

pub fn poly_json(p: &PolyElement) -> PolyJson {
    p.terms()
        .map(|(e, c)| (e.clone(), c.numer().to_string(), c.denom().to_string()))
        .collect()
}

#[derive(Serialize)]
pub struct ConeJson {
    pub rank: usize,
    pub dim: usize,
    pub lineality_dim: usize,
    pub rays: Vec<Vec<String>>,
    pub facets: Vec<Vec<String>>,
}

pub fn cone_json(c: &RatCone) -> ConeJson {
    ConeJson {
        rank: c.rank(),
        dim: c.dim(),
        lineality_dim: c.lineality_dim(),
        rays: c.rays().iter().map(vec_json).collect(),
        facets: c.facets().iter().map(vec_json).collect(),
    }
}

#[derive(Serialize)]
pub struct FanJson {
    pub rank: usize,
    pub cones: Vec<ConeJson>,
    pub face_relation: Vec<(usize, usize)>,
}

pub fn fan_json(f: &Fan) -> FanJson {
    FanJson {
        rank: f.rank(),
        cones: f.cones().iter().map(cone_json).collect(),
        face_relation: f.face_relation().to_vec(),
    }
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub support: Vec<usize>,
    pub vanishing: Vec<(usize, usize)>,
    pub lambda: Vec<String>,
    pub class: PolyJson,
    pub codim: usize,
    pub dim_stab: usize,
    pub codim_orbit: usize,
    pub maximal: String,
}

pub fn component_json(c: &UnstableComponent) -> ComponentJson {
    ComponentJson {
        support: c.support.iter().copied().collect(),
        vanishing: c.vanishing.clone(),
        lambda: vec_json(&c.lambda.0),
        class: poly_json(&c.class_t),
        codim: c.codim,
        dim_stab: c.dim_stab,
        codim_orbit: c.codim_orbit,
        maximal: match c.maximal {
            gitfan::stability::MaximalFlag::Certified => "certified".into(),
            gitfan::stability::MaximalFlag::Heuristic => "heuristic".into(),
        },
    }
}

#[derive(Serialize)]
pub struct ChamberJson {
    pub cone: ConeJson,
    pub representative: Vec<String>,
    pub properly_stable: Option<bool>,
    pub semistable_supports: Vec<Vec<usize>>,
    pub components: Vec<ComponentJson>,
}

pub fn chamber_json(c: &Chamber) -> ChamberJson {
    ChamberJson {
        cone: cone_json(&c.cone),
        representative: character_json(&c.representative),
        properly_stable: c.properly_stable,
        semistable_supports: c
            .semistable_supports
            .iter()
            .map(|s| s.iter().copied().collect())
            .collect(),
        components: c.components.iter().map(component_json).collect(),
    }
}

#[derive(Serialize)]
pub struct GitFanJson {
    pub char_rank: usize,
    pub complete: bool,
    pub effective_cone: ConeJson,
    pub walls: Vec<ConeJson>,
    pub fan: FanJson,
    pub chambers: Vec<ChamberJson>,
}

pub fn git_fan_json(f: &GITFan) -> GitFanJson {
    GitFanJson {
        char_rank: f.char_rank,
        complete: f.complete,
        effective_cone: cone_json(&f.effective_cone),
        walls: f.walls.iter().map(cone_json).collect(),
        fan: fan_json(&f.fan),
        chambers: f.chambers.iter().map(chamber_json).collect(),
    }
}

#[derive(Serialize)]
pub struct GeneratorJson {
    pub name: String,
    pub degree: u32,
    pub poly: PolyJson,
}

#[derive(Serialize)]
pub struct PresentationJson {
    pub variant: String,
    pub generators: Vec<GeneratorJson>,
    pub ideal: Vec<PolyJson>,
    pub quotient_interpretation: Option<bool>,
    /// True when the presentation also computes the cohomology ring over
    /// the complex numbers (projective case, characteristic zero).
    pub cohomology_iso: bool,
}

pub fn presentation_json(p: &InvariantPresentation, cohomology_iso: bool) -> PresentationJson {
    PresentationJson {
        variant: match p.variant {
            PresentationVariant::Semistable => "semistable".into(),
            PresentationVariant::ProperlyStable => "stable".into(),
        },
        generators: p
            .generators
            .iter()
            .map(|g| GeneratorJson { name: g.name.clone(), degree: g.degree, poly: poly_json(&g.poly) })
            .collect(),
        ideal: p.ideal.iter().map(poly_json).collect(),
        quotient_interpretation: p.quotient_interpretation,
        cohomology_iso,
    }
}

#[derive(Serialize)]
pub struct PicardJson {
    pub rank: usize,
    pub relations: Vec<Vec<String>>,
    pub codim_ok: bool,
    pub quotient_coords: Vec<usize>,
    /// Closure of the ample cone; the ample classes are its interior.
    pub ample_cone: ConeJson,
}

pub fn picard_json(p: &PicardPresentation) -> PicardJson {
    PicardJson {
        rank: p.rank,
        relations: p.relations.iter().map(character_json).collect(),
        codim_ok: p.codim_ok,
        quotient_coords: p.quotient_coords.clone(),
        ample_cone: cone_json(&p.ample_cone),
    }
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub verdict: String,
    pub lambda: Option<Vec<String>>,
    pub pairing: Option<(String, String)>,
    pub combination: Option<Vec<(usize, String, String)>>,
}

pub fn certificate_json(c: &HmCertificate) -> CertificateJson {
    CertificateJson {
        verdict: match c.verdict {
            Verdict::Semistable => "semistable".into(),
            Verdict::Unstable => "unstable".into(),
            Verdict::ProperlyStable => "properly_stable".into(),
        },
        lambda: c.lambda.as_ref().map(|l| vec_json(&l.0)),
        pairing: c.pairing.as_ref().map(rat_json),
        combination: c.combination.as_ref().map(|combo| {
            combo
                .iter()
                .map(|(a, r)| (*a, r.numer().to_string(), r.denom().to_string()))
                .collect()
        }),
    }
}

/// Envelope around every payload: command echo, input hash, crate version.
#[derive(Serialize)]
pub struct ResultDoc<T: Serialize> {
    pub command: String,
    pub input_hash: String,
    pub version: String,
    pub payload: T,
}

pub fn render<T: Serialize>(command: &str, input_hash: &str, payload: T) -> String {
    let doc = ResultDoc {
        command: command.to_string(),
        input_hash: input_hash.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        payload,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
    s.push('\n');
    s
}
