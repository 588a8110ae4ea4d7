//! `gjacobi`: command-line access to the band-algebra and homology engines.
//!
//! Every command prints a JSON report (command echo, input digests, result,
//! status). Betti tables can be printed as CSV instead. Exit codes: 0 ok,
//! 2 malformed input, 3 domain precondition, 4 resource ceiling, 1 internal.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use gjacobi::assoc::{FinAssocAlg, FiniteGroup, GroupAction};
use gjacobi::band::{BandMatrix, Builtin};
use gjacobi::central::{
    block_iso_forward, block_iso_inverse, embed_affine, embed_w, ext_bracket, japanese_cocycle, WSymbol,
};
use gjacobi::hochschild::{homology, periodicity_check, HomologyKind};
use gjacobi::json::{
    self, ActionJson, AssocJson, BandJson, BlocksJson, ConstructionJson, ExtJson, LieJson,
    RankJson, ScalarJson,
};
use gjacobi::lie::{lie_homology, predicted_stable_dims, FinLieAlg, LieFamily, Parity};
use gjacobi::poly::Poly;
use gjacobi::rank::{construct_diagonal, rank_density, trace_density, DensityMode, QuadraticReal};
use gjacobi::report::Limits;
use gjacobi::{Error, Field, Scalar};

#[derive(Parser)]
#[command(name = "gjacobi", version, about = "Exact computations with generalized Jacobi matrices")]
struct Cli {
    /// Output format; CSV is available for Betti tables and periodicity reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Refuse chain spaces larger than this.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_chain_dim: u128,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Japanese cocycle of two band matrices.
    Cocycle {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Bracket in the central extension.
    Extbracket {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Classical embeddings into the band algebra.
    Embed {
        #[command(subcommand)]
        kind: EmbedCmd,
    },
    /// Block decomposition by residues mod n, or its inverse.
    #[command(allow_negative_numbers = true)]
    Blockiso {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Betti numbers of Lie or associative algebras.
    Homology {
        #[command(subcommand)]
        kind: HomologyCmd,
    },
    /// Check the periodicity sequence between Hochschild and cyclic homology.
    Periodicity {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Graded dimensions of a free graded-commutative algebra.
    Predict {
        /// Comma-separated `degree:parity` pairs, parity `even` or `odd`.
        #[arg(long, default_value = "")]
        generators: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Rank density, or the 0/1 diagonal construction.
    #[command(args_conflicts_with_subcommands = true)]
    Rank {
        #[command(subcommand)]
        sub: Option<RankCmd>,
        #[command(flatten)]
        args: DensityArgs,
    },
    /// Trace density.
    Trace {
        #[command(flatten)]
        args: DensityArgs,
    },
    /// Twisted group algebra of an algebra under a group action.
    Twisted {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        action: PathBuf,
    },
    /// Emit built-in inputs as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildCmd,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// `e_{i,j} (x) t^a` into the n-periodic band matrices.
    #[command(allow_negative_numbers = true)]
    Affine {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        a: i64,
    },
    /// `t^a f(D)` with `f` given by comma-separated coefficients `c0,c1,...`.
    #[command(allow_negative_numbers = true)]
    W {
        #[arg(long)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Subcommand)]
enum HomologyCmd {
    /// Chevalley-Eilenberg homology of a family member or a JSON algebra.
    Lie {
        #[arg(long, conflicts_with = "algebra", requires = "rank")]
        family: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// Associative algebra `A` for `--family gl`, giving `gl_n(A)`.
        #[arg(long, requires = "family")]
        over: Option<PathBuf>,
        /// Lie algebra JSON.
        #[arg(long, required_unless_present = "family")]
        algebra: Option<PathBuf>,
        #[arg(long)]
        max_degree: usize,
    },
    Hochschild {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    Cyclic {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    #[command(allow_negative_numbers = true)]
    Dihedral {
        #[arg(long)]
        algebra: PathBuf,
        /// `+1` for dihedral, `-1` for skew-dihedral.
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        #[arg(long)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum RankCmd {
    /// Build a 0/1 diagonal whose window counts track an irrational target.
    Construct {
        /// `a,b,d` for the target `a + b sqrt(d)`.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        steps: usize,
    },
}

/// `--matrix` with exactly one of `--trunc` and `--exact`; checked at run time
/// so that `rank construct` can share the command.
#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Truncate to indices `-N..=N`.
    #[arg(long, conflicts_with = "exact")]
    trunc: Option<usize>,
    /// Exact value for periodic input.
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum BuildCmd {
    /// `P`, `Q`, `I`, `J`, or `E` with `--params i,j` and optional `--value`.
    #[command(allow_negative_numbers = true)]
    Band {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// `field`, `matrix`, `dual-numbers`, `product-field`, `cyclic-group`.
    Algebra {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// The cyclic shift action of `Z/n` on `k^n`.
    Action {
        #[arg(long)]
        cyclic_shift: usize,
    },
    /// A Lie algebra family member.
    Lie {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct CommandReport {
    command: Vec<String>,
    inputs: Vec<InputDigest>,
    status: &'static str,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
}

enum Output {
    Json(Value),
    /// JSON result with a CSV rendering.
    Table(Value, String),
}

struct Ctx {
    inputs: Vec<InputDigest>,
    limits: Limits,
}

impl Ctx {
    /// Reads an artifact, accepting either a bare value or a command report
    /// whose `result` holds it.
    fn load<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, Error> {
        let bytes = std::fs::read(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        let text = String::from_utf8(bytes).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
        let mut v: Value = json::from_str(&text)?;
        if let Some(obj) = v.as_object_mut() {
            if obj.contains_key("command") && obj.contains_key("result") {
                v = obj.remove("result").unwrap_or(Value::Null);
            }
        }
        serde_json::from_value(v).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
    }

    fn band(&mut self, path: &Path) -> Result<BandMatrix<Scalar>, Error> {
        self.load::<BandJson>(path)?.decode()
    }

    fn assoc(&mut self, path: &Path) -> Result<FinAssocAlg<Scalar>, Error> {
        self.load::<AssocJson>(path)?.decode()
    }
}

fn value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable value")
}

fn scalar(s: &str) -> Result<Scalar, Error> {
    Scalar::parse_text(s).ok_or_else(|| Error::Schema(format!("bad rational '{s}'")))
}

fn scalar_list(s: &str) -> Result<Vec<Scalar>, Error> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(scalar).collect()
}

fn density_mode(args: &DensityArgs) -> Result<DensityMode, Error> {
    match (args.trunc, args.exact) {
        (Some(n), false) => Ok(DensityMode::Truncated(n)),
        (None, true) => Ok(DensityMode::Exact),
        _ => Err(Error::Schema("exactly one of --trunc and --exact is required".into())),
    }
}

fn matrix_path(args: &DensityArgs) -> Result<&Path, Error> {
    args.matrix
        .as_deref()
        .ok_or_else(|| Error::Schema("--matrix is required".into()))
}

fn parse_generators(s: &str) -> Result<Vec<(usize, Parity)>, Error> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (d, p) = t
                .split_once(':')
                .ok_or_else(|| Error::Schema(format!("generator '{t}' is not degree:parity")))?;
            let d = d
                .trim()
                .parse()
                .map_err(|_| Error::Schema(format!("bad degree in '{t}'")))?;
            let p = p.parse::<Parity>().map_err(|e| Error::Schema(e.to_string()))?;
            Ok((d, p))
        })
        .collect()
}

fn betti(r: gjacobi::report::BettiReport) -> Output {
    let csv = r.to_csv();
    Output::Table(value(&r), csv)
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Output, Error> {
    Ok(match &cli.cmd {
        Cmd::Cocycle { x, y } => {
            let (x, y) = (ctx.band(x)?, ctx.band(y)?);
            Output::Json(serde_json::json!({ "value": json::scalar_json(&japanese_cocycle(&x, &y)?) }))
        }
        Cmd::Extbracket { u, v } => {
            let u = ctx.load::<ExtJson>(u)?.decode()?;
            let v = ctx.load::<ExtJson>(v)?.decode()?;
            Output::Json(value(&ExtJson::encode(&ext_bracket::<Scalar>(&u, &v)?)))
        }
        Cmd::Embed { kind } => match kind {
            EmbedCmd::Affine { n, i, j, a } => {
                Output::Json(value(&BandJson::encode(&embed_affine::<Scalar>(*n, *i, *j, *a)?)))
            }
            EmbedCmd::W { a, poly } => {
                let w = WSymbol::new(*a, Poly::new(scalar_list(poly)?));
                Output::Json(value(&BandJson::encode(&embed_w(&w))))
            }
        },
        Cmd::Blockiso { n, matrix, inverse } => {
            if *inverse {
                let blocks = ctx.load::<BlocksJson>(matrix)?.decode::<Scalar>()?;
                if blocks.len() as i64 != *n {
                    return Err(Error::Schema(format!("expected {n} x {n} blocks, got {}", blocks.len())));
                }
                Output::Json(value(&BandJson::encode(&block_iso_inverse(&blocks)?)))
            } else {
                let x = ctx.band(matrix)?;
                Output::Json(value(&BlocksJson::encode(&block_iso_forward(*n, &x)?)))
            }
        }
        Cmd::Homology { kind } => match kind {
            HomologyCmd::Lie {
                family,
                rank,
                over,
                algebra,
                max_degree,
            } => {
                let g: FinLieAlg<Scalar> = match (family, algebra) {
                    (Some(f), _) => {
                        let rank = rank.ok_or_else(|| Error::Schema("--rank is required".into()))?;
                        match over {
                            Some(path) => {
                                if f != "gl" {
                                    return Err(Error::Schema("--over applies to --family gl only".into()));
                                }
                                let a = ctx.assoc(path)?;
                                FinLieAlg::gl_over(rank, &a)?
                            }
                            None => FinLieAlg::family(LieFamily::parse(f, rank)?)?,
                        }
                    }
                    (None, Some(path)) => ctx.load::<LieJson>(path)?.decode()?,
                    (None, None) => return Err(Error::Schema("--family or --algebra is required".into())),
                };
                betti(lie_homology(&g, *max_degree, &ctx.limits)?)
            }
            HomologyCmd::Hochschild { algebra, max_degree } => {
                let a = ctx.assoc(algebra)?;
                betti(homology(&a, HomologyKind::Hochschild, *max_degree, &ctx.limits)?)
            }
            HomologyCmd::Cyclic { algebra, max_degree } => {
                let a = ctx.assoc(algebra)?;
                betti(homology(&a, HomologyKind::Cyclic, *max_degree, &ctx.limits)?)
            }
            HomologyCmd::Dihedral {
                algebra,
                sign,
                max_degree,
            } => {
                let sign: i64 = sign
                    .trim_start_matches('+')
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad sign '{sign}'")))?;
                let kind = HomologyKind::dihedral(sign).map_err(|e| Error::Schema(e.to_string()))?;
                let a = ctx.assoc(algebra)?;
                betti(homology(&a, kind, *max_degree, &ctx.limits)?)
            }
        },
        Cmd::Periodicity { algebra, max_degree } => {
            let a = ctx.assoc(algebra)?;
            let r = periodicity_check(&a, *max_degree, &ctx.limits)?;
            Output::Table(value(&r), r.to_csv())
        }
        Cmd::Predict {
            generators,
            max_degree,
        } => {
            let gens = parse_generators(generators)?;
            let dims = predicted_stable_dims(&gens, *max_degree)?;
            let gens: Vec<Value> = gens
                .iter()
                .map(|(d, p)| {
                    serde_json::json!({
                        "degree": d,
                        "parity": if *p == Parity::Even { "even" } else { "odd" },
                    })
                })
                .collect();
            let mut csv = String::from("degree,dim\n");
            for (p, d) in dims.iter().enumerate() {
                csv.push_str(&format!("{p},{d}\n"));
            }
            Output::Table(serde_json::json!({ "generators": gens, "max_degree": max_degree, "dims": dims }), csv)
        }
        Cmd::Rank { sub, args } => match (sub, args) {
            (Some(RankCmd::Construct { target, steps }), _) => {
                let parts: Vec<&str> = target.split(',').map(str::trim).collect();
                let [a, b, d] = parts[..] else {
                    return Err(Error::Schema(format!("target '{target}' is not a,b,d")));
                };
                let d: u64 = d.parse().map_err(|_| Error::Schema(format!("bad radicand '{d}'")))?;
                let x = QuadraticReal::new(scalar(a)?, scalar(b)?, d)?;
                let c = construct_diagonal(&x, *steps)?;
                Output::Json(value(&ConstructionJson::encode(&x, &c)))
            }
            (None, args) => {
                let mode = density_mode(args)?;
                let x = ctx.band(matrix_path(args)?)?;
                Output::Json(value(&RankJson::encode(&rank_density(&x, mode)?)))
            }
        },
        Cmd::Trace { args } => {
            let mode = density_mode(args)?;
            let x = ctx.band(matrix_path(args)?)?;
            let v: ScalarJson = json::scalar_json(&trace_density(&x, mode)?);
            let mode = match mode {
                DensityMode::Exact => "exact".to_string(),
                DensityMode::Truncated(_) => "truncated".to_string(),
            };
            let n = args.trunc;
            Output::Json(serde_json::json!({ "mode": mode, "n": n, "value": v }))
        }
        Cmd::Twisted { algebra, action } => {
            let a = ctx.assoc(algebra)?;
            let g = ctx.load::<ActionJson>(action)?.decode::<Scalar>()?;
            Output::Json(value(&AssocJson::encode(&FinAssocAlg::twisted(&a, &g)?)))
        }
        Cmd::Build { kind } => match kind {
            BuildCmd::Band { name, params, value: v } => {
                let name: Builtin = name.parse().map_err(|e: Error| Error::Schema(e.to_string()))?;
                let params: Vec<i64> = match params {
                    None => Vec::new(),
                    Some(p) => p
                        .split(',')
                        .map(|t| t.trim().parse().map_err(|_| Error::Schema(format!("bad index '{t}'"))))
                        .collect::<Result<_, _>>()?,
                };
                let v = v.as_deref().map(scalar).transpose()?;
                Output::Json(value(&BandJson::encode(&BandMatrix::<Scalar>::builtin(name, &params, v)?)))
            }
            BuildCmd::Algebra { family, n } => {
                let a: FinAssocAlg<Scalar> = match family.as_str() {
                    "field" => FinAssocAlg::field(),
                    "matrix" => FinAssocAlg::matrix(*n),
                    "dual-numbers" => FinAssocAlg::dual_numbers(),
                    "product-field" => FinAssocAlg::product_field(*n),
                    "cyclic-group" => FinAssocAlg::group_algebra(FiniteGroup::cyclic(*n).cayley())?,
                    other => return Err(Error::Schema(format!("unknown algebra family '{other}'"))),
                };
                Output::Json(value(&AssocJson::encode(&a)))
            }
            BuildCmd::Action { cyclic_shift } => {
                if *cyclic_shift == 0 {
                    return Err(Error::Domain("group order must be positive".into()));
                }
                Output::Json(value(&ActionJson::encode(&GroupAction::<Scalar>::cyclic_shift(*cyclic_shift))))
            }
            BuildCmd::Lie { family, rank } => {
                let g = FinLieAlg::<Scalar>::family(LieFamily::parse(family, *rank)?)?;
                Output::Json(value(&LieJson::encode(&g)))
            }
        },
    })
}

fn classify(e: &Error) -> (&'static str, u8) {
    match e {
        Error::Schema(_) => ("schema", 2),
        Error::Domain(_) => ("domain", 3),
        Error::Resource { .. } => ("resource", 4),
        Error::Internal(_) => ("internal", 1),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut ctx = Ctx {
        inputs: Vec::new(),
        limits: Limits {
            max_chain_dim: cli.max_chain_dim,
        },
    };
    let outcome = run(&cli, &mut ctx);
    let (result, error, code) = match outcome {
        Ok(Output::Table(_, csv)) if cli.format == Format::Csv => {
            let _ = write!(std::io::stdout(), "{csv}");
            return ExitCode::SUCCESS;
        }
        Ok(Output::Json(_)) if cli.format == Format::Csv => {
            let e = Error::Schema("CSV output is only available for tables".into());
            let (kind, code) = classify(&e);
            (None, Some(ErrorReport { kind, message: e.to_string() }), code)
        }
        Ok(Output::Json(v) | Output::Table(v, _)) => (Some(v), None, 0),
        Err(e) => {
            let (kind, code) = classify(&e);
            eprintln!("gjacobi: {e}");
            (None, Some(ErrorReport { kind, message: e.to_string() }), code)
        }
    };
    let report = CommandReport {
        command,
        inputs: ctx.inputs,
        status: if code == 0 { "ok" } else { "error" },
        exit_code: code,
        result,
        error,
    };
    // a closed stdout is not an error worth a panic
    let _ = writeln!(std::io::stdout(), "{}", json::to_string(&report));
    ExitCode::from(code)
}
