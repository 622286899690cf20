use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use unisingular::arith::MalleParams;
use unisingular::audit::SpechtGroup;
use unisingular::commands::{self, EmbedModule, PolySpec};
use unisingular::perm::{BuiltinGroup, Partition};
use unisingular::report::{to_csv, Outcome, RunReport};
use unisingular::specht::SpechtFamily;
use unisingular::Error;

/// Verifier for eigenvalue-1 (unisingularity) claims about Specht modules,
/// mod-2 symplectic embeddings and a family of genus-4 curves.
#[derive(Parser, Debug)]
#[command(name = "unisingular", version)]
struct Cli {
    /// Seed for every randomized step (MeatAxe, factoring, sampling).
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    area: Area,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Area {
    /// Specht modules of S_n and A_n.
    #[command(subcommand)]
    Specht(SpechtCmd),
    /// Permutation groups inside Sp_2g(F_2).
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Discriminants, Frobenius statistics and L-polynomials.
    #[command(subcommand)]
    Nt(NtCmd),
}

#[derive(Subcommand, Debug)]
enum SpechtCmd {
    /// Audit det(I - M) over every class.
    Audit(SpechtAuditArgs),
    /// det(I - M) on S^(n-2,2)' at C_(n-2,2) against 2^(k-1)(2k-1).
    ConjectureTable(ConjectureArgs),
    /// Composition factors mod 2.
    Mod2Factors(Mod2Args),
    /// Verified fixed vectors for every class representative.
    FixedVector(FixedVectorArgs),
}

#[derive(Subcommand, Debug)]
enum EmbedCmd {
    /// Audit a named group through its mod-2 module.
    Audit(EmbedArgs),
    /// Census of two-generated subgroups of the symplectic image.
    Census(GroupArgs),
}

#[derive(Subcommand, Debug)]
enum NtCmd {
    /// Resultant discriminants of g_{a,t} against the closed form.
    DiscVerify(DiscArgs),
    /// Frobenius cycle types up to pmax through the symplectic embedding.
    FrobeniusScan(ScanArgs),
    /// L-polynomials from point counts and the parity cross-check.
    LpolyCheck(LpolyArgs),
}

#[derive(Args, Debug, Serialize)]
struct SpechtAuditArgs {
    #[arg(long)]
    n: usize,
    /// n-2,1,1 | n-2,2 | n-2,2' (or hook, two-row, conjugate)
    #[arg(long, value_parser = parse_family)]
    family: SpechtFamily,
    /// s_n or a_n
    #[arg(long, default_value = "s_n", value_parser = parse_specht_group)]
    group: SpechtGroup,
    /// Allow n up to 17.
    #[arg(long)]
    extended: bool,
}

#[derive(Args, Debug, Serialize)]
struct ConjectureArgs {
    #[arg(long, value_delimiter = ',', default_value = "5,7,9,11,13")]
    n: Vec<usize>,
    #[arg(long)]
    extended: bool,
    /// Also audit every class and record the offender set.
    #[arg(long)]
    full_audit: bool,
}

#[derive(Args, Debug, Serialize)]
struct Mod2Args {
    /// Partition such as 3,1,1; repeatable.
    #[arg(long)]
    shape: Vec<String>,
    /// With --n, reduce the family's shape at each n.
    #[arg(long, value_parser = parse_family)]
    family: Option<SpechtFamily>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
}

#[derive(Args, Debug, Serialize)]
struct FixedVectorArgs {
    #[arg(long)]
    n: usize,
    /// Defaults to both n-2,1,1 and n-2,2.
    #[arg(long, value_parser = parse_family)]
    family: Vec<SpechtFamily>,
    /// Restrict to one cycle type, e.g. 5,2.
    #[arg(long)]
    class: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct GroupArgs {
    /// agl2_3, agammal1_9, agl1_9, asl2_3, pgl2, l3_2_flags, s_n, a_n
    #[arg(long)]
    group: String,
    /// Field size for pgl2.
    #[arg(long)]
    q: Option<u32>,
    /// Degree for s_n and a_n.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ModuleKind {
    Symplectic,
    Permutation,
}

#[derive(Args, Debug, Serialize)]
struct EmbedArgs {
    #[command(flatten)]
    #[serde(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value_t = ModuleKind::Symplectic)]
    module: ModuleKind,
}

#[derive(Args, Debug, Serialize)]
struct PolyArgs {
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = -32, allow_negative_numbers = true)]
    t: i64,
    /// Integer coefficients, ascending degree; overrides --a/--t.
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct DiscArgs {
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = -32, allow_negative_numbers = true)]
    t: i64,
    /// Extra random (a, t) pairs with |a|, |t| <= 50.
    #[arg(long, default_value_t = 20)]
    samples: usize,
}

#[derive(Args, Debug, Serialize)]
struct ScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    poly: PolyArgs,
    #[arg(long, default_value_t = 10_000)]
    pmax: u64,
    #[arg(long, default_value = "agl2_3")]
    group: String,
}

#[derive(Args, Debug, Serialize)]
struct LpolyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    poly: PolyArgs,
    #[arg(long, value_delimiter = ',', default_value = "5,7,11,13")]
    primes: Vec<u64>,
}

fn parse_family(s: &str) -> Result<SpechtFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_specht_group(s: &str) -> Result<SpechtGroup, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(g: &GroupArgs) -> unisingular::Result<BuiltinGroup> {
    BuiltinGroup::from_tag(&g.group, g.q, g.degree)
}

fn parse_poly(p: &PolyArgs) -> unisingular::Result<PolySpec> {
    match &p.poly {
        None => Ok(PolySpec::Malle(MalleParams { a: p.a, t: p.t })),
        Some(s) => {
            let coeffs = s
                .split(',')
                .map(|c| c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient '{c}'"))))
                .collect::<unisingular::Result<Vec<_>>>()?;
            Ok(PolySpec::Coeffs(coeffs))
        }
    }
}

fn params<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("arguments serialize")
}

fn run(area: &Area, seed: u64) -> unisingular::Result<(String, serde_json::Value, Outcome)> {
    Ok(match area {
        Area::Specht(SpechtCmd::Audit(a)) => {
            ("specht audit".into(), params(a), commands::specht_audit(a.n, a.family, a.group, a.extended)?)
        }
        Area::Specht(SpechtCmd::ConjectureTable(a)) => (
            "specht conjecture-table".into(),
            params(a),
            commands::conjecture_table(&a.n, a.extended, a.full_audit)?,
        ),
        Area::Specht(SpechtCmd::Mod2Factors(a)) => {
            let mut shapes = a.shape.iter().map(|s| s.parse::<Partition>()).collect::<unisingular::Result<Vec<_>>>()?;
            match (a.family, a.n.is_empty()) {
                (Some(f), false) => {
                    for &n in &a.n {
                        shapes.push(f.shape(n)?);
                    }
                }
                (None, true) => {}
                _ => return Err(Error::InvalidParameter("--family and --n go together".into())),
            }
            ("specht mod2-factors".into(), params(a), commands::mod2_factors(&shapes, seed)?)
        }
        Area::Specht(SpechtCmd::FixedVector(a)) => {
            let families = if a.family.is_empty() { vec![SpechtFamily::Hook, SpechtFamily::TwoRow] } else { a.family.clone() };
            let class = a.class.as_deref().map(str::parse::<Partition>).transpose()?;
            ("specht fixed-vector".into(), params(a), commands::fixed_vectors(a.n, &families, class.as_ref())?)
        }
        Area::Embed(EmbedCmd::Audit(a)) => {
            let module = match a.module {
                ModuleKind::Symplectic => EmbedModule::Symplectic,
                ModuleKind::Permutation => EmbedModule::Permutation,
            };
            ("embed audit".into(), params(a), commands::embed_audit(parse_group(&a.group)?, module, seed)?)
        }
        Area::Embed(EmbedCmd::Census(a)) => ("embed census".into(), params(a), commands::embed_census(parse_group(a)?, seed)?),
        Area::Nt(NtCmd::DiscVerify(a)) => (
            "nt disc-verify".into(),
            params(a),
            commands::disc_verify(&MalleParams { a: a.a, t: a.t }, a.samples, seed)?,
        ),
        Area::Nt(NtCmd::FrobeniusScan(a)) => {
            let group = BuiltinGroup::from_tag(&a.group, None, None)?;
            ("nt frobenius-scan".into(), params(a), commands::frobenius_scan(&parse_poly(&a.poly)?, a.pmax, group, seed)?)
        }
        Area::Nt(NtCmd::LpolyCheck(a)) => {
            ("nt lpoly-check".into(), params(a), commands::lpoly_check(&parse_poly(&a.poly)?, &a.primes, seed)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let start = Instant::now();
    let (command, parameters, outcome) = match run(&cli.area, cli.seed) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = RunReport::new(&command, parameters, cli.seed, &outcome, start.elapsed().as_millis());
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => match to_csv(&outcome) {
            Ok(s) => print!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
    }
    ExitCode::from(report.exit_code() as u8)
}
