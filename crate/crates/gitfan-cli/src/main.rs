//! Command-line interface: parse a problem description, run the requested
//! computation, and emit canonical JSON (or SVG). Exit codes: 0 success,
//! 1 mathematically empty result or unsupported request, 2 schema/usage
//! errors. Errors are reported as a machine-readable JSON object on
//! stdout.

mod doc;
mod problem;
mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gitfan::chowring::{
    betti_numbers, chow_presentation, picard_and_ample, projective_case, quotient_dimension,
    PresentationVariant,
};
use gitfan::groupdata::{Character, GroupData, WeightSystem};
use gitfan::stability::{
    chamber_lookup, git_fan, point_test, unstable_components, Chamber, GITFan, LookupResult,
    PointSupport, StabilityError,
};
use gitfan::Int;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gitfan",
    version,
    about = "GIT chamber fans, stability certificates and quotient rings for linear torus/GL actions",
    long_about = "Characters (--chi and the problem file's named characters) are given in the \
character basis of the group: one determinant coordinate per GL block, in order, followed by \
the torus coordinates."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chamber fan on the character space
    Fan(Common),
    /// Maximal unstable strata for a character
    Unstable(Common),
    /// Ring presentation of the quotient at a character
    Chow(Common),
    /// Graded dimensions of the rational ring at a character
    Betti(Common),
    /// Picard rank, relations and ample cone at a character
    Picard(Common),
    /// Ample cone of the quotient at a character
    Ample(Common),
    /// Numerical-criterion test for a point support (torus groups only)
    TestPoint(Common),
    /// Cone of effective characters
    Effective(Common),
    /// Wall cones
    Walls(Common),
    /// Render a rank-2 fan as SVG
    Svg(Common),
}

#[derive(Args)]
struct Common {
    /// Problem description (JSON)
    problem: PathBuf,
    /// Character: comma-separated integers, or a name from the problem file
    #[arg(long)]
    chi: Option<String>,
    /// Weight-column indices allowed nonzero (comma-separated, 0-based)
    #[arg(long)]
    support: Option<String>,
    /// Which ideal to divide by
    #[arg(long, value_enum, default_value_t = VariantArg::Semistable)]
    variant: VariantArg,
    /// Write the result to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Semistable,
    Stable,
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn fail(code: u8, kind: &'static str, message: impl Into<String>) -> Failure {
    Failure { code, kind, message: message.into() }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct ErrorDoc {
    error: ErrorBody,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, run): (&Common, fn(&Context) -> Result<String, Failure>) = match &cli.command {
        Command::Fan(c) => (c, cmd_fan),
        Command::Unstable(c) => (c, cmd_unstable),
        Command::Chow(c) => (c, cmd_chow),
        Command::Betti(c) => (c, cmd_betti),
        Command::Picard(c) => (c, cmd_picard),
        Command::Ample(c) => (c, cmd_ample),
        Command::TestPoint(c) => (c, cmd_test_point),
        Command::Effective(c) => (c, cmd_effective),
        Command::Walls(c) => (c, cmd_walls),
        Command::Svg(c) => (c, cmd_svg),
    };
    match Context::load(common).and_then(|ctx| run(&ctx)) {
        Ok(output) => {
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, &output) {
                    let doc = ErrorDoc {
                        error: ErrorBody { kind: "io".into(), message: e.to_string() },
                    };
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                    return ExitCode::from(2);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let doc = ErrorDoc {
                error: ErrorBody { kind: f.kind.into(), message: f.message },
            };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            ExitCode::from(f.code)
        }
    }
}

struct Context {
    input_hash: String,
    gd: GroupData,
    ws: WeightSystem,
    chi: Option<Character>,
    support: Option<BTreeSet<usize>>,
    variant: PresentationVariant,
    out: Option<PathBuf>,
}

impl Context {
    fn load(common: &Common) -> Result<Context, Failure> {
        let bytes = std::fs::read(&common.problem)
            .map_err(|e| fail(2, "schema", format!("cannot read problem file: {e}")))?;
        let input_hash = format!("sha256:{:x}", Sha256::digest(&bytes));
        let problem = problem::ProblemFile::parse(&bytes).map_err(|e| fail(2, "schema", e))?;
        let (gd, ws) = problem.build().map_err(|e| fail(2, "module", e))?;
        let chi = match &common.chi {
            None => None,
            Some(raw) => Some(parse_chi(raw, &problem, &gd)?),
        };
        let support = match &common.support {
            None => None,
            Some(raw) => Some(parse_support(raw, &ws)?),
        };
        Ok(Context {
            input_hash,
            gd,
            ws,
            chi,
            support,
            variant: match common.variant {
                VariantArg::Semistable => PresentationVariant::Semistable,
                VariantArg::Stable => PresentationVariant::ProperlyStable,
            },
            out: common.out.clone(),
        })
    }

    fn chi(&self) -> Result<&Character, Failure> {
        self.chi.as_ref().ok_or_else(|| fail(2, "usage", "--chi is required for this command"))
    }

    fn fan(&self) -> Result<GITFan, Failure> {
        git_fan(&self.gd, &self.ws).map_err(stability_failure)
    }

    fn chamber_at(&self, fan: &GITFan, chi: &Character) -> Result<Chamber, Failure> {
        match chamber_lookup(&self.gd, &self.ws, fan, chi).map_err(stability_failure)? {
            LookupResult::NotEffective => Err(fail(
                1,
                "not_effective",
                "character lies outside the effective cone; the semistable locus is empty",
            )),
            LookupResult::Found { chamber, .. } => Ok(chamber),
        }
    }

    fn render<T: Serialize>(&self, command: &str, payload: T) -> String {
        doc::render(command, &self.input_hash, payload)
    }
}

fn stability_failure(e: StabilityError) -> Failure {
    match e {
        StabilityError::ReductiveUnsupported => fail(1, "unsupported_reductive", e.to_string()),
        _ => fail(2, "module", e.to_string()),
    }
}

fn parse_chi(raw: &str, problem: &problem::ProblemFile, gd: &GroupData) -> Result<Character, Failure> {
    let coords: Option<Vec<i64>> = raw
        .split(',')
        .map(|s| s.trim().parse::<i64>().ok())
        .collect();
    let coords = match coords {
        Some(v) => v,
        None => problem
            .characters
            .get(raw)
            .cloned()
            .ok_or_else(|| fail(2, "usage", format!("--chi '{raw}' is neither coordinates nor a named character")))?,
    };
    if coords.len() != gd.char_rank() {
        return Err(fail(
            2,
            "usage",
            format!("--chi has {} coordinates, expected {}", coords.len(), gd.char_rank()),
        ));
    }
    Ok(Character { coords: coords.into_iter().map(Int::from).collect() })
}

fn parse_support(raw: &str, ws: &WeightSystem) -> Result<BTreeSet<usize>, Failure> {
    if raw.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    let mut out = BTreeSet::new();
    for part in raw.split(',') {
        let idx: usize = part
            .trim()
            .parse()
            .map_err(|_| fail(2, "usage", format!("bad support index '{part}'")))?;
        if idx >= ws.num_columns() {
            return Err(fail(
                2,
                "usage",
                format!("support index {idx} out of range ({} columns)", ws.num_columns()),
            ));
        }
        out.insert(idx);
    }
    Ok(out)
}

fn cmd_fan(ctx: &Context) -> Result<String, Failure> {
    let fan = ctx.fan()?;
    Ok(ctx.render("fan", doc::git_fan_json(&fan)))
}

#[derive(Serialize)]
struct UnstablePayload {
    chi: Vec<String>,
    components: Vec<doc::ComponentJson>,
}

fn cmd_unstable(ctx: &Context) -> Result<String, Failure> {
    let chi = ctx.chi()?;
    let comps = unstable_components(&ctx.gd, &ctx.ws, chi).map_err(stability_failure)?;
    Ok(ctx.render(
        "unstable",
        UnstablePayload {
            chi: doc::character_json(chi),
            components: comps.iter().map(doc::component_json).collect(),
        },
    ))
}

#[derive(Serialize)]
struct ChowPayload {
    chi: Vec<String>,
    presentation: doc::PresentationJson,
}

fn cmd_chow(ctx: &Context) -> Result<String, Failure> {
    let chi = ctx.chi()?;
    let fan = ctx.fan()?;
    let chamber = ctx.chamber_at(&fan, chi)?;
    let pres = chow_presentation(&ctx.gd, &ctx.ws, &chamber, ctx.variant).map_err(stability_failure)?;
    Ok(ctx.render(
        "chow",
        ChowPayload {
            chi: doc::character_json(chi),
            presentation: doc::presentation_json(&pres, projective_case(&ctx.ws)),
        },
    ))
}

#[derive(Serialize)]
struct BettiPayload {
    chi: Vec<String>,
    properly_stable: Option<bool>,
    dim_quotient: usize,
    betti: Vec<usize>,
}

fn cmd_betti(ctx: &Context) -> Result<String, Failure> {
    let chi = ctx.chi()?;
    let fan = ctx.fan()?;
    let chamber = ctx.chamber_at(&fan, chi)?;
    let pres = chow_presentation(&ctx.gd, &ctx.ws, &chamber, ctx.variant).map_err(stability_failure)?;
    let dimq = quotient_dimension(&ctx.gd, &ctx.ws);
    Ok(ctx.render(
        "betti",
        BettiPayload {
            chi: doc::character_json(chi),
            properly_stable: chamber.properly_stable,
            dim_quotient: dimq,
            betti: betti_numbers(&ctx.gd, &pres, dimq),
        },
    ))
}

#[derive(Serialize)]
struct PicardPayload {
    chi: Vec<String>,
    properly_stable: Option<bool>,
    picard: doc::PicardJson,
}

fn cmd_picard(ctx: &Context) -> Result<String, Failure> {
    let chi = ctx.chi()?;
    let fan = ctx.fan()?;
    let chamber = ctx.chamber_at(&fan, chi)?;
    let pic = picard_and_ample(&ctx.gd, &chamber);
    Ok(ctx.render(
        "picard",
        PicardPayload {
            chi: doc::character_json(chi),
            properly_stable: chamber.properly_stable,
            picard: doc::picard_json(&pic),
        },
    ))
}

#[derive(Serialize)]
struct AmplePayload {
    chi: Vec<String>,
    properly_stable: Option<bool>,
    quotient_coords: Vec<usize>,
    /// Closure of the ample cone; the ample classes are its interior.
    ample_cone: doc::ConeJson,
}

fn cmd_ample(ctx: &Context) -> Result<String, Failure> {
    let chi = ctx.chi()?;
    let fan = ctx.fan()?;
    let chamber = ctx.chamber_at(&fan, chi)?;
    let pic = picard_and_ample(&ctx.gd, &chamber);
    Ok(ctx.render(
        "ample",
        AmplePayload {
            chi: doc::character_json(chi),
            properly_stable: chamber.properly_stable,
            quotient_coords: pic.quotient_coords.clone(),
            ample_cone: doc::cone_json(&pic.ample_cone),
        },
    ))
}

#[derive(Serialize)]
struct TestPointPayload {
    chi: Vec<String>,
    support: Vec<usize>,
    certificate: doc::CertificateJson,
}

fn cmd_test_point(ctx: &Context) -> Result<String, Failure> {
    let chi = ctx.chi()?;
    let support = ctx
        .support
        .clone()
        .ok_or_else(|| fail(2, "usage", "--support is required for test-point"))?;
    let chi_t = chi.embed(ctx.gd.spec());
    let cert = point_test(&ctx.gd, &ctx.ws, &chi_t, &PointSupport::from_support(support.clone()))
        .map_err(stability_failure)?;
    Ok(ctx.render(
        "test-point",
        TestPointPayload {
            chi: doc::character_json(chi),
            support: support.into_iter().collect(),
            certificate: doc::certificate_json(&cert),
        },
    ))
}

#[derive(Serialize)]
struct EffectivePayload {
    effective_cone: doc::ConeJson,
}

fn cmd_effective(ctx: &Context) -> Result<String, Failure> {
    let eff = gitfan::stability::effective_cone_and_walls(&ctx.gd, &ctx.ws);
    Ok(ctx.render("effective", EffectivePayload { effective_cone: doc::cone_json(&eff.effective) }))
}

#[derive(Serialize)]
struct WallsPayload {
    complete: bool,
    walls: Vec<doc::ConeJson>,
}

fn cmd_walls(ctx: &Context) -> Result<String, Failure> {
    let eff = gitfan::stability::effective_cone_and_walls(&ctx.gd, &ctx.ws);
    Ok(ctx.render(
        "walls",
        WallsPayload { complete: eff.complete, walls: eff.walls.iter().map(doc::cone_json).collect() },
    ))
}

fn cmd_svg(ctx: &Context) -> Result<String, Failure> {
    let fan = ctx.fan()?;
    let rendered = svg::render_fan_svg(&fan).map_err(|m| fail(1, "unsupported_rank", m))?;
    let _ = &ctx.out;
    Ok(rendered)
}
