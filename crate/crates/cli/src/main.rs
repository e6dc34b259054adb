use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use csrig::constructions::{cross_polytope_boundary, simplex_boundary, swartz_demo, StackingScript};
use csrig::enumerative::{f_vector, g_number, h_polynomial};
use csrig::geometry::{realize_script, RealizedPolytope};
use csrig::io::{self, format_rational, ComplexFile};
use csrig::rigidity::{self, motions_basis, rigidity_matrix, stress_basis};
use csrig::verify::{self, run_all, stacked_script, symmetric_script, VerifyConfig};
use csrig::{validate_cs, Error, Face, SubdivisionMap};

#[derive(Parser, Debug)]
#[command(
    name = "csrig",
    version,
    about = "Centrally symmetric complexes and exact framework rigidity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a complex (with coordinates for realizable kinds) as JSON.
    Generate(GenerateArgs),
    /// Face numbers, h-polynomial, g-numbers, primality and symmetry of a complex.
    Info(InfoArgs),
    /// Rank, rigidity and stress spaces of an embedded complex.
    Rigidity(RigidityArgs),
    /// Local h-polynomials of a subdivision.
    Localh(LocalhArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Simplex,
    Cross,
    Stacked,
    SymmetricStacked,
    SwartzDemo,
    /// Runs a stacking script read from --script.
    Script,
    /// Stellar subdivision of a cross-polytope or simplex boundary at --face.
    Subdivision,
}

#[derive(clap::Args, Debug)]
struct GenerateArgs {
    kind: Kind,
    /// Polytope dimension.
    #[arg(long, short = 'd', default_value_t = 4)]
    d: usize,
    /// Number of (symmetric) stackings.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Omit coordinates.
    #[arg(long)]
    combinatorial: bool,
    /// Stacking script for `script`.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Base of `subdivision`: `cross` or `simplex`.
    #[arg(long, default_value = "cross")]
    base: String,
    /// Face for `subdivision`, e.g. `0,2,4`.
    #[arg(long)]
    face: Option<String>,
    #[arg(long)]
    name: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct InfoArgs {
    path: PathBuf,
    #[arg(long)]
    json: bool,
    /// Print the canonical serialization of the input instead.
    #[arg(long, conflicts_with = "json")]
    canonical: bool,
}

#[derive(clap::Args, Debug)]
struct RigidityArgs {
    path: PathBuf,
    /// Dump the stress basis.
    #[arg(long)]
    stresses: bool,
    /// Dump the motion basis.
    #[arg(long)]
    motions: bool,
    /// Check the symmetric-stress lower bound.
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args, Debug)]
struct LocalhArgs {
    /// Subdivision JSON file.
    path: PathBuf,
    /// Faces of the base to report, e.g. `0,2,4`; all faces with non-zero
    /// local h when absent.
    #[arg(long)]
    face: Vec<String>,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// JSON configuration; defaults apply when absent.
    config: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

enum Outcome {
    Ok,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Info(a) => info(a),
        Command::Rigidity(a) => rigidity_cmd(a),
        Command::Localh(a) => localh(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_face(s: &str) -> Result<Face, Error> {
    let vs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad face {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Face::new(vs)
}

fn polytope_file(p: RealizedPolytope, combinatorial: bool) -> ComplexFile {
    let mut f = ComplexFile::new(p.complex);
    if let Some(a) = p.involution {
        f = f.with_involution(a);
    }
    if !combinatorial {
        f = f.with_embedding(p.embedding);
    }
    f
}

fn generate(a: GenerateArgs) -> Result<Outcome, Error> {
    let (default_name, file) = match a.kind {
        Kind::Simplex => {
            let f = if a.combinatorial {
                ComplexFile::new(simplex_boundary(a.d)?)
            } else {
                polytope_file(RealizedPolytope::simplex(a.d, a.seed)?, false)
            };
            (format!("simplex-{}", a.d), f)
        }
        Kind::Cross => {
            let f = if a.combinatorial || a.d < 2 {
                let (c, alpha) = cross_polytope_boundary(a.d)?.into_parts();
                ComplexFile::new(c).with_involution(alpha)
            } else {
                polytope_file(RealizedPolytope::cross_polytope(a.d, a.seed)?, false)
            };
            (format!("cross-{}", a.d), f)
        }
        Kind::Stacked => {
            let script = stacked_script(a.d, a.steps, a.seed)?;
            (
                format!("stacked-{}-{}-seed{}", a.d, a.steps, a.seed),
                polytope_file(realize_script(&script, a.seed)?, a.combinatorial),
            )
        }
        Kind::SymmetricStacked => {
            let script = symmetric_script(a.d, a.steps, a.seed)?;
            (
                format!("symmetric-stacked-{}-{}-seed{}", a.d, a.steps, a.seed),
                polytope_file(realize_script(&script, a.seed)?, a.combinatorial),
            )
        }
        Kind::SwartzDemo => {
            let demo = swartz_demo(a.d)?;
            (format!("swartz-demo-{}", a.d), ComplexFile::new(demo.after))
        }
        Kind::Script => {
            let path = a
                .script
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--script is required".into()))?;
            let script: StackingScript = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let f = if a.combinatorial {
                let r = script.run()?;
                let mut f = ComplexFile::new(r.complex);
                if let Some(alpha) = r.involution.filter(|_| script.is_symmetric()) {
                    f = f.with_involution(alpha);
                }
                f
            } else {
                let mut p = realize_script(&script, a.seed)?;
                if !script.is_symmetric() {
                    p.involution = None;
                }
                polytope_file(p, false)
            };
            (format!("script-seed{}", a.seed), f)
        }
        Kind::Subdivision => {
            let base = match a.base.as_str() {
                "cross" => cross_polytope_boundary(a.d)?.complex().clone(),
                "simplex" => simplex_boundary(a.d)?,
                other => return Err(Error::InvalidParameter(format!("unknown base {other:?}"))),
            };
            let face = match &a.face {
                Some(s) => parse_face(s)?,
                None => base.facets()[0].clone(),
            };
            let s = SubdivisionMap::stellar(&base, &face, base.fresh_vertex())?;
            emit(&io::subdivision_to_json(&s), a.out.as_deref())?;
            return Ok(Outcome::Ok);
        }
    };
    let file = file.with_name(a.name.unwrap_or(default_name));
    emit(&file.to_canonical_string(), a.out.as_deref())?;
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct InfoReport {
    name: Option<String>,
    vertices: usize,
    dimension: isize,
    f_vector: Vec<i64>,
    pure: bool,
    h_polynomial: Option<Vec<i64>>,
    g_numbers: Vec<i64>,
    prime: Option<bool>,
    missing_faces: Vec<Vec<u32>>,
    centrally_symmetric: Option<bool>,
    cs_error: Option<String>,
    has_coordinates: bool,
}

fn info(a: InfoArgs) -> Result<Outcome, Error> {
    let file = ComplexFile::read(&a.path)?;
    if a.canonical {
        print!("{}", file.to_canonical_string());
        return Ok(Outcome::Ok);
    }
    let c = &file.complex;
    let pure = c.is_pure();
    let h = if pure { Some(h_polynomial(c)?) } else { None };
    let rank = c.rank();
    let g_numbers = if pure {
        (1..=rank / 2).map(|r| g_number(c, r)).collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let cs = file.involution.as_ref().map(|alpha| validate_cs(c, alpha));
    let report = InfoReport {
        name: file.name.clone(),
        vertices: c.num_vertices(),
        dimension: c.dim(),
        f_vector: f_vector(c).counts()[1..].to_vec(),
        pure,
        h_polynomial: h.as_ref().map(|h| h.padded(rank + 1)),
        g_numbers,
        prime: if pure { Some(c.is_prime_polytope()?) } else { None },
        missing_faces: c.missing_faces(rank).iter().map(|f| f.vertices().to_vec()).collect(),
        centrally_symmetric: cs.as_ref().map(Result::is_ok),
        cs_error: cs.and_then(|r| r.err()).map(|e| e.to_string()),
        has_coordinates: file.embedding.is_some(),
    };
    if a.json {
        print!("{}", io::to_canonical_json(&report));
        return Ok(Outcome::Ok);
    }
    if let Some(n) = &report.name {
        println!("name: {n}");
    }
    println!("vertices: {}", report.vertices);
    println!("dimension: {}", report.dimension);
    println!("f-vector: {:?}", report.f_vector);
    println!("pure: {pure}");
    if let Some(h) = &h {
        println!("h-polynomial: {h}");
    }
    for (i, g) in report.g_numbers.iter().enumerate() {
        println!("g_{} = {g}", i + 1);
    }
    if let Some(p) = report.prime {
        println!("prime: {p}");
    }
    let shown: Vec<String> = c.missing_faces(rank).iter().take(20).map(ToString::to_string).collect();
    let more = report.missing_faces.len().saturating_sub(shown.len());
    println!(
        "missing faces (size <= {rank}): {}{}{}",
        report.missing_faces.len(),
        if shown.is_empty() {
            String::new()
        } else {
            format!("  {}", shown.join(" "))
        },
        if more > 0 {
            format!(" ... ({more} more)")
        } else {
            String::new()
        }
    );
    match (&report.centrally_symmetric, &report.cs_error) {
        (Some(true), _) => println!("centrally symmetric: true"),
        (Some(false), Some(e)) => println!("centrally symmetric: false ({e})"),
        _ => {}
    }
    if report.has_coordinates {
        println!("coordinates: {}", file.embedding.as_ref().map_or(0, |e| e.d()));
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct RigidityReport {
    d: usize,
    vertices: usize,
    edges: usize,
    rank: usize,
    rigid: Option<bool>,
    g2: i64,
    stress_dim: usize,
    symmetric_stress_dim: Option<usize>,
    all_symmetric: Option<bool>,
    symmetric_bound: Option<i64>,
    symmetric_bound_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stresses: Option<Vec<Vec<io::StressEntry>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    motions: Option<Vec<std::collections::BTreeMap<u32, Vec<String>>>>,
}

fn rigidity_cmd(a: RigidityArgs) -> Result<Outcome, Error> {
    let file = ComplexFile::read(&a.path)?;
    let e = file
        .embedding
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("no embedding: the file has no coordinates".into()))?;
    let g = file.complex.graph();
    let m = rigidity_matrix(&g, e)?;
    let rank = m.rank();
    let rigid = match rigidity::is_infinitesimally_rigid(&g, e) {
        Ok(r) => Some(r),
        Err(Error::DegenerateSpan(_)) => None,
        Err(err) => return Err(err),
    };
    let basis = stress_basis(&m);
    let sym = match &file.involution {
        Some(alpha) => Some(rigidity::symmetric_stress_subspace(&basis, alpha)?),
        None => None,
    };
    let bound = match (&file.involution, a.symmetric) {
        (Some(alpha), true) => Some(rigidity::symm_stress_bound(&g, e, alpha)?),
        (None, true) => return Err(Error::InvalidParameter("--symmetric needs an involution".into())),
        _ => None,
    };
    let report = RigidityReport {
        d: e.d(),
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        rank,
        rigid,
        g2: rigidity::g2_framework(&g, e.d()),
        stress_dim: basis.dim(),
        symmetric_stress_dim: sym.map(|s| s.dim_sym),
        all_symmetric: sym.map(|s| s.all_symmetric),
        symmetric_bound: bound.map(|b| b.1),
        symmetric_bound_holds: bound.map(|(dim, b)| 2 * dim as i64 >= b),
        stresses: a
            .stresses
            .then(|| basis.vectors.iter().map(io::stress_entries).collect()),
        motions: a.motions.then(|| {
            motions_basis(&m)
                .into_iter()
                .map(|mv| {
                    mv.velocities
                        .into_iter()
                        .map(|(v, x)| (v, x.entries().iter().map(format_rational).collect()))
                        .collect()
                })
                .collect()
        }),
    };
    if a.json {
        print!("{}", io::to_canonical_json(&report));
        return Ok(Outcome::Ok);
    }
    println!(
        "framework: {} vertices, {} edges in R^{}",
        report.vertices, report.edges, report.d
    );
    println!("rank: {rank}");
    match rigid {
        Some(r) => println!("rigid: {r}"),
        None => println!("rigid: n/a (vertices do not affinely span R^{})", report.d),
    }
    println!("g2: {}", report.g2);
    println!("dim S = {}", report.stress_dim);
    if let Some(s) = sym {
        println!("dim S_sym = {}", s.dim_sym);
        println!("all stresses symmetric: {}", s.all_symmetric);
    }
    if let Some((dim, b)) = bound {
        println!(
            "2 dim S_sym = {} >= f1 - d f0 + 2 C(d,2) = {b}: {}",
            2 * dim,
            2 * dim as i64 >= b
        );
    }
    if let Some(s) = &report.stresses {
        println!("stresses: {}", serde_json::to_string(s)?);
    }
    if let Some(mv) = &report.motions {
        println!("motions: {}", serde_json::to_string(mv)?);
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct LocalhEntry {
    face: Vec<u32>,
    local_h: Vec<i64>,
}

#[derive(Serialize)]
struct LocalhReport {
    faces: Vec<LocalhEntry>,
    h_refinement: Vec<i64>,
    decomposition: Vec<i64>,
    identity_holds: bool,
}

fn localh(a: LocalhArgs) -> Result<Outcome, Error> {
    let s = io::subdivision_from_json(&std::fs::read_to_string(&a.path)?)?;
    let faces: Vec<Face> = if a.face.is_empty() {
        s.base.all_faces().cloned().collect()
    } else {
        a.face.iter().map(|f| parse_face(f)).collect::<Result<_, _>>()?
    };
    let mut entries = Vec::new();
    for f in faces {
        let ell = s.local_h(&f)?;
        if a.face.is_empty() && ell.is_zero() {
            continue;
        }
        entries.push((f, ell));
    }
    let (lhs, rhs) = s.ellh_sides()?;
    let d = s.base.rank();
    if a.json {
        let report = LocalhReport {
            faces: entries
                .iter()
                .map(|(f, l)| LocalhEntry {
                    face: f.vertices().to_vec(),
                    local_h: l.padded(f.len() + 1),
                })
                .collect(),
            h_refinement: lhs.padded(d + 1),
            decomposition: rhs.padded(d + 1),
            identity_holds: lhs == rhs,
        };
        print!("{}", io::to_canonical_json(&report));
        return Ok(Outcome::Ok);
    }
    for (f, l) in &entries {
        println!("l_{f} = {l}");
    }
    println!("h(refinement) = {lhs}");
    println!("sum of l_tau h(lk tau) = {rhs}");
    println!("identity holds: {}", lhs == rhs);
    Ok(Outcome::Ok)
}

fn verify_cmd(a: VerifyArgs) -> Result<Outcome, Error> {
    let mut cfg = match &a.config {
        Some(p) => VerifyConfig::read(p)?,
        None => VerifyConfig::default(),
    };
    if let Some(j) = a.jobs {
        cfg.jobs = j;
    }
    let reports = run_all(&cfg)?;
    let json = io::to_canonical_json(&reports);
    if let Some(p) = &a.report {
        std::fs::write(p, &json)?;
    }
    if a.json {
        print!("{json}");
    } else {
        print!("{}", verify::summary(&reports));
    }
    Ok(if verify::all_passed(&reports) {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}
