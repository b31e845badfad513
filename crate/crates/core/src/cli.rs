//! Command-line front end: JSON in, CSV/SVG/JSON out.
//!
//! Every subcommand writes into `--out` (default `.`). CSV floats use 17
//! significant digits and LF line endings so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::classical::{self, GeneratorSchedule};
use crate::lie::{self, LieElement, Relation};
use crate::matrix::{self, PSMatrix};
use crate::qubit::{self, RateSchedule3};
use crate::simplex::{ConvexRegion, ProbVector};
use crate::{Error, Result, DEFAULT_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "pseudostochastic",
    version,
    about = "Pseudo-stochastic matrices, divisibility and witnesses"
)]
pub struct Cli {
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for all randomness.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Numerical tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// JSON run configuration; explicit flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify, compose, invert or decompose matrices; search for witnesses.
    Matrix {
        #[command(subcommand)]
        action: MatrixAction,
    },
    /// Vertices and region drawing for the two-level diamond sets.
    Diamond {
        #[arg(long)]
        eps: f64,
    },
    /// Classical dynamics: trajectory, propagators, divisibility.
    Classical(ClassicalArgs),
    /// Pauli-channel qubit dynamics and divisibility class.
    Qubit(QubitArgs),
    /// Commutator tables, structure constants, solvability.
    Lie(LieArgs),
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// JSON file: rows, or {"matrix": rows}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Two-level matrix [[a, 1-b], [1-a, b]].
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        num_args = 1
    )]
    pub ab: Option<Vec<f64>>,
}

#[derive(Debug, Subcommand)]
pub enum MatrixAction {
    Classify(MatrixInput),
    Inverse(MatrixInput),
    Birkhoff(MatrixInput),
    /// Product `left * right`.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Search for T in PS(K) with T p outside the simplex.
    Witness {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        p: Vec<f64>,
        /// Two-level region K_eps.
        #[arg(long, conflicts_with = "region")]
        eps: Option<f64>,
        /// JSON list of extreme points of K.
        #[arg(long)]
        region: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub n_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    /// Generator schedule JSON.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Initial distribution (default: first basis vector).
    #[arg(long, value_delimiter = ',')]
    pub p0: Option<Vec<f64>>,
    /// Two-level region K_eps for K-divisibility.
    #[arg(long, conflicts_with = "region")]
    pub eps: Option<f64>,
    /// JSON list of extreme points of K.
    #[arg(long)]
    pub region: Option<PathBuf>,
    /// Largest RK4 step for propagators.
    #[arg(long, default_value_t = 1e-3)]
    pub max_step: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct QubitArgs {
    /// Rates JSON: {"gamma": [rate, rate, rate]}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct LieArgs {
    /// Dimension of the built-in generators and table.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Custom generators and relation table JSON.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_max: f64,
    pub n_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            t_max: 5.0,
            n_points: 51,
        }
    }
}

impl GridSpec {
    pub fn points(&self) -> Result<Vec<f64>> {
        if self.n_points < 2 || !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(Error::InvalidInput(
                "grid needs t_max > 0 and n_points >= 2".into(),
            ));
        }
        let h = self.t_max / (self.n_points - 1) as f64;
        Ok((0..self.n_points).map(|i| i as f64 * h).collect())
    }
}

/// Settings shared by all subcommands, from `--config` and flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub grid: Option<GridSpec>,
}

struct Ctx {
    out: PathBuf,
    seed: u64,
    tol: f64,
    input: Option<PathBuf>,
    grid: GridSpec,
}

impl Ctx {
    fn input(&self, flag: &Option<PathBuf>) -> Result<PathBuf> {
        flag.clone()
            .or_else(|| self.input.clone())
            .ok_or_else(|| Error::InvalidInput("missing --input".into()))
    }

    fn grid(&self, g: &GridArgs) -> Result<Vec<f64>> {
        GridSpec {
            t_max: g.t_max.unwrap_or(self.grid.t_max),
            n_points: g.n_points.unwrap_or(self.grid.n_points),
        }
        .points()
    }

    fn write(&self, name: &str, contents: &str) -> Result<()> {
        let path = self.out.join(name);
        fs::write(&path, contents)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
    }

    fn write_json(&self, name: &str, value: &impl Serialize) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        self.write(name, &s)
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Matrix { .. } => "matrix",
        Command::Diamond { .. } => "diamond",
        Command::Classical(_) => "classical",
        Command::Qubit(_) => "qubit",
        Command::Lie(_) => "lie",
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn context(cli: &Cli) -> Result<Ctx> {
    let cfg: RunConfig = match &cli.config {
        Some(p) => read_json(p)?,
        None => RunConfig::default(),
    };
    if let Some(name) = &cfg.command {
        if name != command_name(&cli.command) {
            return Err(Error::InvalidInput(format!(
                "config is for '{name}', not '{}'",
                command_name(&cli.command)
            )));
        }
    }
    let tol = cli.tol.or(cfg.tol).unwrap_or(DEFAULT_TOL);
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "tolerance {tol} must be finite and >= 0"
        )));
    }
    let out = cli
        .out
        .clone()
        .or(cfg.out)
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out).map_err(|e| Error::InvalidInput(format!("{}: {e}", out.display())))?;
    Ok(Ctx {
        out,
        seed: cli.seed.or(cfg.seed).unwrap_or(0),
        tol,
        input: cfg.input,
        grid: cfg.grid.unwrap_or_default(),
    })
}

/// Formats a float with 17 significant digits.
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn matrix_csv(m: &DMatrix<f64>) -> String {
    let header: Vec<String> = (1..=m.ncols()).map(|j| format!("c{j}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    csv(
        &header,
        m.row_iter().map(|r| r.iter().copied().map(fmt_f).collect()),
    )
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Rows(Vec<Vec<f64>>),
    Wrapped { matrix: Vec<Vec<f64>> },
}

fn load_matrix(path: &Path, tol: f64) -> Result<PSMatrix> {
    let rows = match read_json::<MatrixFile>(path)? {
        MatrixFile::Rows(r) | MatrixFile::Wrapped { matrix: r } => r,
    };
    PSMatrix::from_rows(&rows, tol)
}

fn matrix_input(ctx: &Ctx, m: &MatrixInput) -> Result<PSMatrix> {
    match (&m.ab, &m.input) {
        (Some(ab), None) => match ab.as_slice() {
            &[a, b] if a.is_finite() && b.is_finite() => Ok(PSMatrix::from_ab(a, b)),
            _ => Err(Error::InvalidInput(
                "--ab takes two finite numbers a,b".into(),
            )),
        },
        (None, _) => load_matrix(&ctx.input(&m.input)?, ctx.tol),
        (Some(_), Some(_)) => Err(Error::InvalidInput("give either --ab or --input".into())),
    }
}

#[derive(Serialize)]
struct MatrixReport<'a> {
    matrix: Vec<Vec<f64>>,
    classification: &'a matrix::ClassReport,
}

fn region_input(
    eps: Option<f64>,
    region: &Option<PathBuf>,
    dim: usize,
    tol: f64,
) -> Result<ConvexRegion> {
    match (eps, region) {
        (Some(e), _) => ConvexRegion::diamond(e),
        (None, Some(path)) => {
            let pts: Vec<Vec<f64>> = read_json(path)?;
            let pts = pts
                .into_iter()
                .map(|p| ProbVector::new(p, tol))
                .collect::<Result<Vec<_>>>()?;
            ConvexRegion::hull(pts)
        }
        (None, None) => Ok(ConvexRegion::FullSimplex(dim)),
    }
}

fn cmd_matrix(ctx: &Ctx, action: &MatrixAction) -> Result<()> {
    let report = |name: &str, t: &PSMatrix| {
        let c = t.classify(ctx.tol);
        ctx.write_json(
            name,
            &MatrixReport {
                matrix: t.rows(),
                classification: &c,
            },
        )
    };
    match action {
        MatrixAction::Classify(m) => report("classification.json", &matrix_input(ctx, m)?),
        MatrixAction::Inverse(m) => {
            let inv = matrix::inverse(&matrix_input(ctx, m)?, ctx.tol)?;
            ctx.write("inverse.csv", &matrix_csv(inv.matrix()))?;
            report("inverse.json", &inv)
        }
        MatrixAction::Birkhoff(m) => {
            let terms = matrix::birkhoff_decompose(&matrix_input(ctx, m)?, ctx.tol)?;
            let rows = terms.iter().map(|t| {
                let mut row = vec![fmt_f(t.weight)];
                row.extend(t.perm.iter().map(|p| p.to_string()));
                row
            });
            let n = terms.first().map_or(0, |t| t.perm.len());
            let mut header = vec!["weight".to_string()];
            header.extend((1..=n).map(|j| format!("row_of_col{j}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            ctx.write("birkhoff.csv", &csv(&header, rows))
        }
        MatrixAction::Compose { left, right } => {
            let l = load_matrix(left, ctx.tol)?;
            let r = load_matrix(right, ctx.tol)?;
            let prod = matrix::compose(&l, &r)?;
            ctx.write("compose.csv", &matrix_csv(prod.matrix()))?;
            report("compose.json", &prod)
        }
        MatrixAction::Witness {
            p,
            eps,
            region,
            budget,
        } => {
            let p = ProbVector::new(p.clone(), ctx.tol)?;
            let k = region_input(*eps, region, p.dim(), ctx.tol)?;
            let found = matrix::witness_search(&p, &k, *budget, ctx.seed, ctx.tol)?;
            #[derive(Serialize)]
            struct WitnessReport {
                p: Vec<f64>,
                in_region: bool,
                found: bool,
                witness: Option<Vec<Vec<f64>>>,
                image: Option<Vec<f64>>,
            }
            let image = match &found {
                Some(t) => Some(t.apply(p.as_slice())?.iter().copied().collect()),
                None => None,
            };
            if let Some(t) = &found {
                ctx.write("witness.csv", &matrix_csv(t.matrix()))?;
            }
            ctx.write_json(
                "witness.json",
                &WitnessReport {
                    p: p.as_slice().to_vec(),
                    in_region: k.contains(p.as_slice(), ctx.tol)?,
                    found: found.is_some(),
                    witness: found.as_ref().map(PSMatrix::rows),
                    image,
                },
            )
        }
    }
}

/// Polygons in the `(a, b)` plane of `T = [[a, 1-b], [1-a, b]]`.
pub struct DiamondRegions {
    pub ps_k: [(f64, f64); 4],
    pub s_k: [(f64, f64); 4],
    pub s0_k: [(f64, f64); 4],
}

pub fn diamond_regions(eps: f64) -> Result<DiamondRegions> {
    let v = matrix::diamond_vertices(eps)?;
    let e = eps;
    Ok(DiamondRegions {
        ps_k: [v.a, (1.0, 0.0), v.b, (0.0, 1.0)],
        s_k: [(1.0, 1.0), v.d, (0.0, 0.0), v.c],
        s0_k: [(e, e), (1.0 - e, e), (1.0 - e, 1.0 - e), (e, 1.0 - e)],
    })
}

fn svg_polygon(pts: &[(f64, f64)], class: &str) -> String {
    let coords: Vec<String> = pts.iter().map(|(a, b)| format!("{a:.6},{b:.6}")).collect();
    format!(
        "  <polygon class=\"{class}\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

fn diamond_svg(eps: f64, r: &DiamondRegions) -> String {
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -3 5 5\" width=\"500\" height=\"500\">\n");
    let _ = writeln!(s, "<title>Diamond sets for eps = {eps}</title>");
    s.push_str(
        "<style>\n\
         .ps{fill:#f5d442;fill-opacity:0.6;stroke:#a08000;stroke-width:0.01}\n\
         .unit{fill:none;stroke:#000;stroke-width:0.015}\n\
         .s{fill:#4a90d9;fill-opacity:0.6;stroke:#1d4f8c;stroke-width:0.01}\n\
         .s0{fill:#d94a4a;fill-opacity:0.7;stroke:#8c1d1d;stroke-width:0.01}\n\
         .line{stroke:#555;stroke-width:0.01;stroke-dasharray:0.05,0.03}\n\
         </style>\n",
    );
    // Flip so that b increases upwards.
    s.push_str("<g transform=\"scale(1,-1)\">\n");
    s.push_str(&svg_polygon(&r.ps_k, "ps"));
    s.push_str(&svg_polygon(
        &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        "unit",
    ));
    s.push_str(&svg_polygon(&r.s_k, "s"));
    s.push_str(&svg_polygon(&r.s0_k, "s0"));
    s.push_str("  <line class=\"line\" x1=\"-2\" y1=\"-2\" x2=\"3\" y2=\"3\"/>\n");
    s.push_str("  <line class=\"line\" x1=\"-2\" y1=\"3\" x2=\"3\" y2=\"-2\"/>\n");
    s.push_str("  <circle cx=\"0.5\" cy=\"0.5\" r=\"0.03\"/>\n");
    s.push_str("</g>\n</svg>\n");
    s
}

fn cmd_diamond(ctx: &Ctx, eps: f64) -> Result<()> {
    let v = matrix::diamond_vertices(eps)?;
    let regions = diamond_regions(eps)?;
    let stochastic = |(a, b): (f64, f64)| PSMatrix::from_ab(a, b).classify(ctx.tol).is_stochastic;
    let rows = [
        ("A", v.a),
        ("B", v.b),
        ("C", v.c),
        ("D", v.d),
        ("T_star", (0.5, 0.5)),
    ]
    .into_iter()
    .map(|(name, pt)| {
        vec![
            name.to_string(),
            fmt_f(pt.0),
            fmt_f(pt.1),
            stochastic(pt).to_string(),
        ]
    });
    ctx.write(
        "vertices.csv",
        &csv(&["vertex", "a", "b", "stochastic"], rows),
    )?;
    ctx.write("regions.svg", &diamond_svg(eps, &regions))
}

fn cmd_classical(ctx: &Ctx, args: &ClassicalArgs) -> Result<()> {
    let schedule: GeneratorSchedule = read_json(&ctx.input(&args.input)?)?;
    schedule.validate(ctx.tol)?;
    let n = schedule.dim();
    let grid = ctx.grid(&args.grid)?;
    let p0 = match &args.p0 {
        Some(p) => ProbVector::new(p.clone(), ctx.tol)?,
        None => ProbVector::vertex(n, 0),
    };
    if p0.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p0.dim(),
        });
    }
    let k = region_input(args.eps, &args.region, n, ctx.tol)?;
    let props = classical::grid_propagators(&schedule, &grid, args.max_step)?;

    let mut traj_header = vec!["t".to_string()];
    traj_header.extend((1..=n).map(|i| format!("p{i}")));
    let traj_header: Vec<&str> = traj_header.iter().map(String::as_str).collect();
    let mut traj = vec![std::iter::once(fmt_f(0.0))
        .chain(p0.as_slice().iter().copied().map(fmt_f))
        .collect()];
    for v in &props[0] {
        let p = v.matrix.apply(p0.as_slice())?;
        traj.push(
            std::iter::once(fmt_f(v.t))
                .chain(p.iter().copied().map(fmt_f))
                .collect(),
        );
    }
    ctx.write("trajectory.csv", &csv(&traj_header, traj))?;

    let mut rows = Vec::new();
    for v in props.iter().flatten() {
        let c = v.matrix.classify(ctx.tol);
        let in_k = matrix::in_ps_k(&v.matrix, &k, ctx.tol)?;
        rows.push(vec![
            fmt_f(v.s),
            fmt_f(v.t),
            c.is_stochastic.to_string(),
            in_k.to_string(),
            fmt_f(c.negativity),
        ]);
    }
    ctx.write(
        "propagators.csv",
        &csv(&["s", "t", "stochastic", "in_ps_k", "negativity"], rows),
    )?;

    #[derive(Serialize)]
    struct Report {
        dim: usize,
        divisibility: classical::DivisibilityReport,
        k_divisibility: classical::KDivisibilityReport,
    }
    let report = Report {
        dim: n,
        divisibility: classical::is_divisible(&schedule, &grid, ctx.tol)?,
        k_divisibility: classical::is_k_divisible(&schedule, &k, &grid, ctx.tol, args.max_step)?,
    };
    ctx.write_json("classical_report.json", &report)
}

fn cmd_qubit(ctx: &Ctx, args: &QubitArgs) -> Result<()> {
    let schedule: RateSchedule3 = read_json(&ctx.input(&args.input)?)?;
    let grid = ctx.grid(&args.grid)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &t in &grid {
        let l = qubit::lambdas(&schedule, t)?;
        let p = qubit::lambdas_to_p(&l);
        rows.push(std::iter::once(t).chain(l).chain(p).map(fmt_f).collect());
    }
    let header = [
        "t", "lambda0", "lambda1", "lambda2", "lambda3", "p0", "p1", "p2", "p3",
    ];
    ctx.write("lambdas.csv", &csv(&header, rows))?;
    let report = qubit::classify_divisibility(&schedule, args.eps, &grid, ctx.tol)?;
    ctx.write_json("qubit_report.json", &report)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    generators: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    relations: Vec<Relation>,
    #[serde(default)]
    subalgebras: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct SubalgebraReport {
    name: String,
    indices: Vec<usize>,
    closed: bool,
    derived_series: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct LieReport {
    dim: usize,
    relations: lie::RelationReport,
    structure_constants: lie::StructureConstants,
    derived_series: Option<Vec<usize>>,
    solvable: Option<bool>,
    subalgebras: Vec<SubalgebraReport>,
}

const DERIVED_DEPTH: usize = 10;

fn subalgebra_report(
    name: String,
    gens: &[LieElement],
    indices: &[usize],
    tol: f64,
) -> Result<SubalgebraReport> {
    let closed = lie::subalgebra_closed(gens, indices, tol)?;
    let sub: Vec<LieElement> = indices.iter().map(|&i| gens[i].clone()).collect();
    let derived_series = match closed {
        true => Some(lie::derived_series_dims(&sub, DERIVED_DEPTH, tol)?),
        false => None,
    };
    Ok(SubalgebraReport {
        name,
        indices: indices.to_vec(),
        closed,
        derived_series,
    })
}

fn cmd_lie(ctx: &Ctx, args: &LieArgs) -> Result<()> {
    let custom = args.input.clone().or_else(|| ctx.input.clone());
    let (gens, table, subsets) = match custom {
        Some(path) => {
            let f: LieFile = read_json(&path)?;
            let gens = f
                .generators
                .iter()
                .map(|rows| LieElement::from_rows(rows, ctx.tol))
                .collect::<Result<Vec<_>>>()?;
            let subsets: Vec<(String, Vec<usize>)> = f
                .subalgebras
                .into_iter()
                .enumerate()
                .map(|(k, idx)| (format!("custom{}", k + 1), idx))
                .collect();
            (gens, f.relations, subsets)
        }
        None => {
            let gens = lie::standard_generators(args.n)?;
            let (table, subsets) = match args.n {
                2 => (lie::relation_table_n2(), vec![]),
                _ => (
                    lie::relation_table_n3(),
                    vec![
                        (
                            "upper_triangular".to_string(),
                            lie::UPPER_TRIANGULAR_N3.to_vec(),
                        ),
                        ("last_column".to_string(), lie::LAST_COLUMN_N3.to_vec()),
                    ],
                ),
            };
            (gens, table, subsets)
        }
    };
    // Span tolerance for closure; relation checks use the user tolerance.
    let span_tol = ctx.tol.max(lie::RANK_TOL);
    let relations = lie::verify_relation_table(&gens, &table, ctx.tol)?;
    let sc = lie::structure_constants(&gens, span_tol)?;
    let derived_series = match sc.closed {
        true => Some(lie::derived_series_dims(&gens, DERIVED_DEPTH, span_tol)?),
        false => None,
    };
    let solvable = derived_series.as_ref().map(|d| d.last() == Some(&0));
    let mut subalgebras = subsets
        .into_iter()
        .map(|(name, idx)| subalgebra_report(name, &gens, &idx, span_tol))
        .collect::<Result<Vec<_>>>()?;
    if args.input.is_none() && ctx.input.is_none() && args.n == 3 {
        let b = lie::circulant_generators();
        subalgebras.push(subalgebra_report(
            "circulant_bistochastic".into(),
            &b,
            &[0, 1],
            span_tol,
        )?);
    }
    ctx.write_json(
        "lie_report.json",
        &LieReport {
            dim: gens[0].dim(),
            relations,
            structure_constants: sc,
            derived_series,
            solvable,
            subalgebras,
        },
    )
}

pub fn run(cli: &Cli) -> Result<()> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::Matrix { action } => cmd_matrix(&ctx, action),
        Command::Diamond { eps } => cmd_diamond(&ctx, *eps),
        Command::Classical(a) => cmd_classical(&ctx, a),
        Command::Qubit(a) => cmd_qubit(&ctx, a),
        Command::Lie(a) => cmd_lie(&ctx, a),
    }
}

/// Exit code for a finished run: 0 success, 2 input error, 3 numerical failure.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_input_error() => 2,
        Err(_) => 3,
    }
}
