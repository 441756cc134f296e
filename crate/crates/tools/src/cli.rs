//! The `segal` command line: argument parsing and the four commands.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use segal_core::algebra::FinAbGroup;
use segal_core::bar::{
    degree_reports, iterate_bar_at, structure_map, DeloopingReport, DEFAULT_BUDGET,
};
use segal_core::diagram::GammaOpMap;
use segal_core::gamma::{
    check_condition, check_functoriality_g, extract_g_group_bousfield, extract_g_monoid,
    extract_group_bousfield, extract_monoid, pi0_group_like, Condition, ConditionFailure,
    GGammaSet, Restricted,
};
use segal_core::ggamma::GGammaMap;
use segal_core::homology::{normalized_chain_complex, HomologyGroup, InducedMap};
use segal_core::simplicial::TruncatedSimplicialSet;
use segal_core::Error;

use crate::error::{CliError, CliResult};
use crate::format::{
    table_digest, Algebra, AlgebraFile, ChainExport, Kind, MonoidFile, Presheaf, PresheafFile,
};
use crate::report::{
    read_input, to_json, write_atomic, InputDigest, OutputFormat, Report, RunConfig, Status,
};

/// Functoriality samples only use levels whose size stays below this bound.
pub const SAMPLE_LEVEL_LIMIT: usize = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "segal",
    version,
    about = "Strict Γ-sets, GΓ-sets and their classifying spaces"
)]
pub struct Cli {
    /// Report format; JSON is the stable contract.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Seed for randomized checks, recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest number of simplices or table entries a command may allocate.
    #[arg(long, global = true, env = "SEGAL_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the presheaf of a monoid or G-monoid file.
    Build(BuildArgs),
    /// Check the strict Segal or Bousfield condition and functoriality.
    Check(CheckArgs),
    /// Build and extract again, comparing the algebra tables.
    Roundtrip(RoundtripArgs),
    /// Homology and G-action of an iterated classifying space.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Level bound `N`.
    #[arg(long)]
    pub levels: usize,
    /// Where to write the presheaf file.
    #[arg(long)]
    pub out: PathBuf,
    /// Write every morphism table instead of the algebraic presentation.
    #[arg(long)]
    pub tabulate: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("condition").required(true).args(["segal", "bousfield"])))]
pub struct CheckArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub segal: bool,
    #[arg(long)]
    pub bousfield: bool,
    #[arg(long)]
    pub upto: usize,
    /// Random composable pairs for the functoriality check.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    /// An algebra file or a presheaf file.
    #[arg(long)]
    pub input: PathBuf,
    /// Level bound used when building from an algebra file.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Number of deloopings `k`.
    #[arg(long, default_value_t = 1)]
    pub iterate: usize,
    /// Simplicial truncation `d`.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Highest homology degree; needs `homology + 1 <= dim`.
    #[arg(long, default_value_t = 2)]
    pub homology: usize,
    /// The object `n` at which `BᵏX` is evaluated.
    #[arg(long, default_value_t = 1)]
    pub object: usize,
    /// Also write the normalized chain complex as JSON.
    #[arg(long)]
    pub chains: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs one command and returns its exit code.
pub fn run(cli: &Cli) -> u8 {
    let mut config = RunConfig {
        budget: cli.budget,
        seed: cli.seed,
        ..RunConfig::default()
    };
    let mut inputs = Vec::new();
    let (out, outcome) = match &cli.command {
        Command::Build(a) => {
            config.command = "build".into();
            config.levels = Some(a.levels);
            config.tabulate = Some(a.tabulate);
            (None, build(cli, a, &mut inputs))
        }
        Command::Check(a) => {
            config.command = "check".into();
            config.condition = Some(condition_of(a).name().into());
            config.upto = Some(a.upto);
            config.samples = Some(a.samples);
            (a.out.as_deref(), check(cli, a, &mut inputs))
        }
        Command::Roundtrip(a) => {
            config.command = "roundtrip".into();
            config.levels = Some(a.levels);
            (a.out.as_deref(), roundtrip(a, &mut inputs))
        }
        Command::Classify(a) => {
            config.command = "classify".into();
            config.iterate = Some(a.iterate);
            config.object = Some(a.object);
            config.dim = Some(a.dim);
            config.homology = Some(a.homology);
            (a.out.as_deref(), classify(cli, a, &mut inputs))
        }
    };
    let mut report = Report::new(config, inputs);
    match outcome {
        Ok(o) => {
            report.status = o.status;
            report.result = o.result;
            report.summary = o.summary;
        }
        Err(e) => {
            eprintln!("segal: {e}");
            report.failed(&e);
        }
    }
    let rendered = report.render(cli.format);
    let written = match out {
        Some(path) => write_atomic(path, rendered.as_bytes()),
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::io("<stdout>", e)),
    };
    match written {
        Ok(()) => report.exit_code(),
        Err(e) => {
            eprintln!("segal: {e}");
            e.exit_code()
        }
    }
}

struct Outcome {
    status: Status,
    result: Value,
    summary: Vec<String>,
}

fn status(pass: bool) -> Status {
    if pass {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn condition_of(a: &CheckArgs) -> Condition {
    if a.segal {
        Condition::Segal
    } else {
        Condition::Bousfield
    }
}

fn read_json(path: &Path, inputs: &mut Vec<InputDigest>) -> CliResult<Value> {
    let (bytes, digest) = read_input(path)?;
    inputs.push(digest);
    serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: invalid JSON: {e}", path.display())))
}

fn is_presheaf(value: &Value) -> bool {
    value.get("format").is_some()
}

fn read_presheaf(
    path: &Path,
    inputs: &mut Vec<InputDigest>,
) -> CliResult<(PresheafFile, Presheaf)> {
    let value = read_json(path, inputs)?;
    if !is_presheaf(&value) {
        return Err(CliError::Input(format!(
            "{}: not a presheaf file",
            path.display()
        )));
    }
    let file: PresheafFile = serde_json::from_value(value)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let x = file.load()?;
    Ok((file, x))
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Gamma => "gamma",
        Kind::GGamma => "g-gamma",
    }
}

fn build(cli: &Cli, a: &BuildArgs, inputs: &mut Vec<InputDigest>) -> CliResult<Outcome> {
    let source = AlgebraFile::from_value(read_json(&a.input, inputs)?)?;
    let file = PresheafFile::build(&source, a.levels, a.tabulate, cli.budget)?;
    write_atomic(&a.out, to_json(&file).as_bytes())?;
    Ok(Outcome {
        status: Status::Pass,
        result: json!({
            "kind": kind_name(file.kind),
            "truncation": file.truncation,
            "levels": file.levels,
            "digests": file.digests,
        }),
        summary: vec![
            format!(
                "{} presheaf, levels {:?}",
                kind_name(file.kind),
                file.levels
            ),
            format!("tables digest {}", file.digests.tables),
        ],
    })
}

fn failure_json(f: &ConditionFailure) -> Value {
    match f {
        ConditionFailure::BasepointLevel { cardinality } => {
            json!({ "kind": "basepoint-level", "level": 0, "cardinality": cardinality })
        }
        ConditionFailure::NotInjective {
            level,
            first,
            second,
            image,
        } => json!({
            "kind": "not-injective",
            "level": level,
            "first": first,
            "second": second,
            "image": image,
        }),
        ConditionFailure::NotSurjective { level, missing } => {
            json!({ "kind": "not-surjective", "level": level, "missing": missing })
        }
    }
}

fn random_map<R: Rng>(rng: &mut R, m: usize, n: usize) -> GammaOpMap {
    let mut values = vec![0];
    values.extend((0..m).map(|_| rng.gen_range(0..=n)));
    GammaOpMap::new(n, values).expect("values are in range")
}

/// The largest level `t <= N` such that every level up to `t` has at most
/// [`SAMPLE_LEVEL_LIMIT`] elements.
fn sample_top<X: GGammaSet + ?Sized>(x: &X) -> usize {
    (0..=x.truncation())
        .take_while(|&n| x.cardinality(n) <= SAMPLE_LEVEL_LIMIT)
        .last()
        .unwrap_or(0)
}

/// Composable pairs `(g, f)` with `f: m -> n`, `g: n -> p` and random group
/// elements, drawn from a ChaCha stream seeded by `seed`.
pub fn sample_pairs<X: GGammaSet + ?Sized>(
    x: &X,
    samples: usize,
    seed: u64,
) -> Vec<(GGammaMap, GGammaMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = sample_top(x);
    let group = x.group();
    (0..samples)
        .map(|_| {
            let (m, n, p) = (
                rng.gen_range(0..=top),
                rng.gen_range(0..=top),
                rng.gen_range(0..=top),
            );
            let f = random_map(&mut rng, m, n);
            let g = random_map(&mut rng, n, p);
            let (a, b) = (
                rng.gen_range(0..group.order()),
                rng.gen_range(0..group.order()),
            );
            let f = GGammaMap::new(f, a, group).expect("element in range");
            let g = GGammaMap::new(g, b, group).expect("element in range");
            (g, f)
        })
        .collect()
}

fn check(cli: &Cli, a: &CheckArgs, inputs: &mut Vec<InputDigest>) -> CliResult<Outcome> {
    let (file, x) = read_presheaf(&a.input, inputs)?;
    let condition = condition_of(a);
    let report = check_condition(&Restricted(&x), condition, a.upto)?;
    let pairs = sample_pairs(&x, a.samples, cli.seed);
    let functorial = match check_functoriality_g(&x, pairs) {
        Ok(count) => {
            json!({ "samples": count, "max_level": sample_top(&x), "passed": true, "witness": null })
        }
        Err(Error::NotFunctorial { level, element }) => json!({
            "samples": a.samples,
            "max_level": sample_top(&x),
            "passed": false,
            "witness": { "level": level, "element": element },
        }),
        Err(e) => return Err(e.into()),
    };
    let functorial_ok = functorial["passed"] == json!(true);
    let (table_levels, tables) = table_digest(&x);
    let mut summary = vec![report.to_string()];
    summary.push(format!(
        "functoriality on {} random pairs: {}",
        a.samples,
        if functorial_ok { "holds" } else { "fails" }
    ));
    Ok(Outcome {
        status: status(report.passed() && functorial_ok),
        result: json!({
            "kind": kind_name(x.kind()),
            "levels": x.levels(),
            "condition": condition.name(),
            "upto": a.upto,
            "passed": report.passed(),
            "failure": report.failure.as_ref().map(failure_json),
            "functoriality": functorial,
            "digests": {
                "table_levels": table_levels,
                "computed": tables,
                "recorded": file.digests.tables,
                "match": file.digests.table_levels == table_levels && file.digests.tables == tables,
            },
        }),
        summary,
    })
}

fn roundtrip(a: &RoundtripArgs, inputs: &mut Vec<InputDigest>) -> CliResult<Outcome> {
    let value = read_json(&a.input, inputs)?;
    if is_presheaf(&value) {
        let file: PresheafFile = serde_json::from_value(value)
            .map_err(|e| CliError::Input(format!("{}: {e}", a.input.display())))?;
        let x = file.load()?;
        return roundtrip_presheaf(&file, &x);
    }
    let source = AlgebraFile::from_value(value)?;
    let algebra = source.load()?;
    let x = Presheaf::from_algebra(&algebra, a.levels)?;
    let mut summary = Vec::new();
    let (identical, bousfield, extracted) = match &algebra {
        Algebra::Monoid(m) => {
            let e = extract_monoid(&Restricted(&x))?;
            let bousfield = if m.is_group() {
                let g = extract_group_bousfield(&Restricted(&x))?;
                Some(g.monoid() == m)
            } else {
                None
            };
            (
                &e == m,
                bousfield,
                json!({ "monoid": MonoidFile::from_monoid(&e) }),
            )
        }
        Algebra::Action(am) => {
            let e = extract_g_monoid(&x)?;
            let bousfield = if am.monoid().is_group() {
                let (_, gm) = extract_g_group_bousfield(&x)?;
                Some(&gm == am)
            } else {
                None
            };
            let extracted = json!({
                "monoid": MonoidFile::from_monoid(e.monoid()),
                "action": e.action_rows(),
            });
            (&e == am, bousfield, extracted)
        }
    };
    let group_like = pi0_group_like(&Restricted(&x))?;
    summary.push(format!(
        "build then extract: {}",
        if identical { "identical" } else { "differs" }
    ));
    if let Some(b) = bousfield {
        summary.push(format!(
            "bousfield roundtrip: {}",
            if b { "identical" } else { "differs" }
        ));
    }
    summary.push(format!("group-like: {group_like}"));
    Ok(Outcome {
        status: status(identical && bousfield != Some(false)),
        result: json!({
            "source": "algebra",
            "kind": kind_name(x.kind()),
            "levels": x.levels(),
            "identical": identical,
            "bousfield_identical": bousfield,
            "group_like": group_like,
            "extracted": extracted,
        }),
        summary,
    })
}

/// Extracts the algebra of a presheaf file, rebuilds the presheaf from it
/// and compares the action tables on the digest range.
fn roundtrip_presheaf(file: &PresheafFile, x: &Presheaf) -> CliResult<Outcome> {
    let e = extract_g_monoid(x)?;
    let rebuilt = match x.kind() {
        Kind::Gamma => Algebra::Monoid(e.monoid().clone()),
        Kind::GGamma => Algebra::Action(e.clone()),
    };
    let y = Presheaf::from_algebra(&rebuilt, x.truncation())?;
    let tables_identical = table_digest(x) == table_digest(&y);
    let recorded = match &file.algebra {
        Some(source) => Some(source.load()? == rebuilt),
        None => None,
    };
    let pass = tables_identical && recorded != Some(false);
    Ok(Outcome {
        status: status(pass),
        result: json!({
            "source": "presheaf",
            "kind": kind_name(x.kind()),
            "levels": x.levels(),
            "tables_identical": tables_identical,
            "matches_recorded_algebra": recorded,
            "extracted": {
                "monoid": MonoidFile::from_monoid(e.monoid()),
                "action": e.action_rows(),
            },
        }),
        summary: vec![format!(
            "extract then rebuild: tables {}",
            if tables_identical {
                "identical"
            } else {
                "differ"
            }
        )],
    })
}

fn group_json(g: &HomologyGroup) -> Value {
    json!({ "rank": g.rank, "torsion": g.torsion, "group": g.to_string() })
}

fn scalar_of(m: &InducedMap) -> Option<i64> {
    [1, -1, 0].into_iter().find(|&k| m.is_scalar(k))
}

fn classify(cli: &Cli, a: &ClassifyArgs, inputs: &mut Vec<InputDigest>) -> CliResult<Outcome> {
    let (_, x) = read_presheaf(&a.input, inputs)?;
    if a.homology + 1 > a.dim {
        return Err(Error::InsufficientTruncation {
            required: a.homology + 1,
            available: a.dim,
        }
        .into());
    }
    let b = iterate_bar_at(&x, a.iterate, a.object, a.dim, cli.budget)?;
    let valid = b.space().validate().map_err(|v| v.to_string());
    let action = b.check_action().map_err(|e| e.to_string());
    let point = iterate_bar_at(&x, a.iterate, 0, a.dim, cli.budget)?.space()
        == &TruncatedSimplicialSet::point(a.dim);

    let coefficients = if a.object == 1 {
        match extract_monoid(&Restricted(&x)) {
            Ok(m) if m.is_group() => Some(FinAbGroup::new(m)?.invariant_factors()?),
            _ => None,
        }
    } else {
        None
    };
    let report: DeloopingReport = degree_reports(&b, a.homology, coefficients)?;
    if let Some(path) = &a.chains {
        let complex = normalized_chain_complex(b.space(), a.homology + 1)?;
        write_atomic(
            path,
            to_json(&ChainExport::new(&complex.complex)).as_bytes(),
        )?;
    }

    let mut summary = vec![format!("levels {:?}", b.space().sizes())];
    let mut homology = Vec::new();
    let mut actions = Vec::new();
    let mut comparisons = Vec::new();
    let mut all_match = true;
    for d in &report.degrees {
        homology.push(json!({
            "degree": d.degree,
            "rank": d.group.rank,
            "torsion": d.group.torsion,
            "group": d.group.to_string(),
        }));
        summary.push(format!("H_{} = {}", d.degree, d.group));
        for (g, m) in d.actions.iter().enumerate() {
            let scalar = scalar_of(m);
            actions.push(json!({
                "degree": d.degree,
                "element": g,
                "matrix": m.matrix,
                "identity": m.is_identity(),
                "scalar": scalar,
            }));
            if g != 0 && !d.group.is_zero() {
                match scalar {
                    Some(k) => summary.push(format!("  element {g} acts by {k}")),
                    None => summary.push(format!("  element {g} acts by {:?}", m.matrix)),
                }
            }
        }
        let matches = d.matches_expected();
        all_match &= matches != Some(false);
        comparisons.push(json!({
            "degree": d.degree,
            "expected": d.expected.as_ref().map(group_json),
            "matches": matches,
        }));
    }

    let structure = if a.iterate == 1 && a.object == 1 && a.dim >= 2 {
        let verdict = match structure_map(&x, a.dim, cli.budget) {
            Ok(s) => Ok(s),
            Err(e @ (Error::NotIsomorphism { .. } | Error::NotEquivariant { .. })) => Err(e),
            Err(e) => return Err(e.into()),
        };
        let value = match &verdict {
            Ok(s) => json!({
                "checked": true,
                "isomorphism": true,
                "equivariant": true,
                "basepoint": s.basepoint,
                "skeleton_sizes": s.skeleton.sizes(),
                "witness": null,
            }),
            Err(e) => json!({
                "checked": true,
                "isomorphism": !matches!(e, Error::NotIsomorphism { .. }),
                "equivariant": false,
                "witness": e.to_string(),
            }),
        };
        summary.push(match &verdict {
            Ok(_) => "structure map: isomorphism onto the 1-skeleton, equivariant".into(),
            Err(e) => format!("structure map: {e}"),
        });
        Some((verdict.is_ok(), value))
    } else {
        None
    };
    summary.push(format!("B(0) is the point: {point}"));

    let structure_ok = structure.as_ref().is_none_or(|(ok, _)| *ok);
    let pass = valid.is_ok() && action.is_ok() && point && all_match && structure_ok;
    Ok(Outcome {
        status: status(pass),
        result: json!({
            "kind": kind_name(x.kind()),
            "iterations": a.iterate,
            "object": a.object,
            "dim": a.dim,
            "levels": b.space().sizes(),
            "simplicial_violation": valid.err(),
            "action_violation": action.err(),
            "basepoint_object_is_point": point,
            "coefficients": report.coefficients,
            "homology": homology,
            "g_action_on_H": actions,
            "oracle_comparisons": comparisons,
            "structure_map": structure.map(|(_, v)| v),
        }),
        summary,
    })
}
