//! Command-line front end for `minkowski-core`.
//!
//! Every command produces a list of records that render as JSON
//! (`{"meta": .., "data": [..]}`), CSV or aligned text.

pub mod output;
pub mod records;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use minkowski_core::ball::{self, critical_data, davis_constant, volume};
use minkowski_core::covering::{self, HexagonKind};
use minkowski_core::lattice::{self, critical_lattice, shell, LatticeKind};
use minkowski_core::matroid::{self, FiniteMatroid, MetrizedMatroid, ShellReading};
use minkowski_core::packing;
use minkowski_core::{curves, CriticalData, Exponent, Regime, Tolerance};

use output::{Meta, Output};
use records::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] minkowski_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// `start:stop:count`, inclusive, evenly spaced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("grid {s:?} is not start:stop:count"));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("grid bound {x:?} is not a finite number"))
        };
        let count: usize = n
            .trim()
            .parse()
            .map_err(|_| format!("grid count {n:?} is not a positive integer"))?;
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        Ok(Grid {
            start: num(a)?,
            stop: num(b)?,
            count,
        })
    }
}

impl std::fmt::Display for Grid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "minkowski",
    version,
    about = "Invariants of the Minkowski balls |x|^p + |y|^p < 1"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = output::Format::Json, global = true)]
    pub format: output::Format,
    /// Boundary membership tolerance for shell detection.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sample grid `start:stop:count`; over p unless the command says otherwise.
    #[arg(long, global = true)]
    pub grid: Option<Grid>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// sigma_p, tau_p, both candidate determinants, the critical one, area and regime.
    Constants(ExponentArgs),
    /// Critical lattices with their shells and hexagon areas.
    Lattice(LatticeArgs),
    /// Optimal lattice packing of 2^m D_p.
    Packing(ScaledArgs),
    /// Covering bounds, largest inscribed hexagon and minimal hexagon areas.
    Covering(ScaledArgs),
    /// Matroids of shells, uniform matroids and vector configurations.
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Genus, Riemann-Roch and the right-continuous ceiling.
    #[command(subcommand)]
    Curves(CurvesCommand),
    /// Stated values of the covering-density example against recomputation.
    Report,
    /// Tables over the moduli surface and its section curves.
    #[command(subcommand)]
    Sweep(SweepCommand),
    /// Shell points and hexagon vertices as flat rows.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Debug, Args, Serialize)]
pub struct ExponentArgs {
    /// Exponents; `1` and `inf` give the limit records.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<Exponent>,
}

#[derive(Debug, Args, Serialize)]
pub struct PArgs {
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Lambda0,
    Lambda1,
}

impl From<KindArg> for LatticeKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Lambda0 => LatticeKind::Zero,
            KindArg::Lambda1 => LatticeKind::One,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct LatticeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub p: PArgs,
    /// Defaults to both kinds.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub kind: Vec<KindArg>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScaledArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub p: PArgs,
    #[arg(long, default_value_t = 0)]
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReadingArg {
    LatticeBasis,
    PairRepresentatives,
    FullShell,
}

impl From<ReadingArg> for ShellReading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::LatticeBasis => ShellReading::LatticeBasis,
            ReadingArg::PairRepresentatives => ShellReading::PairRepresentatives,
            ReadingArg::FullShell => ShellReading::FullShell,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "matroid")]
pub enum MatroidCommand {
    /// Metrized matroid on the shell of the lattice through (1, 0).
    Shell {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Defaults to every reading.
        #[arg(long, value_enum, value_delimiter = ',')]
        reading: Vec<ReadingArg>,
    },
    /// U_{k,n}.
    Uniform {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Linear matroid of labelled vectors, e.g. `--vector a=1,0 --vector b=0,1`.
    Vectors {
        #[arg(long = "vector", allow_hyphen_values = true)]
        vectors: Vec<String>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "quantity")]
pub enum CurvesCommand {
    /// Genus of x^(2n) + y^(2n) = 1.
    Genus {
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
    },
    /// deg + 1 - g.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
        #[arg(long)]
        g: i64,
    },
    /// Right-continuous ceiling.
    Ceil {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<f64>,
    },
    /// ceil'(deg / log 2).
    Arakelov {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        deg: Vec<f64>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "sweep")]
pub enum SweepCommand {
    /// Moduli surface along sigma at fixed p; `--grid` is over sigma
    /// (default 11 points on [1, sigma_p]).
    Sigma {
        #[arg(long)]
        p: f64,
    },
    /// Section curve sigma = (2^p - 1)^(1/(alpha p)) over a p grid.
    Section {
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        #[serde(flatten)]
        p: PArgs,
    },
    /// Largest lattice hexagon and largest inscribed hexagon over a p grid.
    Maxima {
        #[command(flatten)]
        #[serde(flatten)]
        p: PArgs,
        /// sigma samples per p for the lattice hexagons
        #[arg(long, default_value_t = 61)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HexagonArg {
    /// largest centrally symmetric inscribed hexagon
    InscribedMax,
    /// hexagon through the shell of the critical lattice
    InscribedAl,
    /// tangent hexagon at the shell of the critical lattice
    Circumscribed,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "export")]
pub enum ExportCommand {
    /// Columns p, lattice_kind, idx, x, y.
    Shells {
        #[command(flatten)]
        #[serde(flatten)]
        p: PArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        kind: Vec<KindArg>,
    },
    /// Columns p, kind, v1x..v6y, area.
    Hexagons {
        #[command(flatten)]
        #[serde(flatten)]
        p: PArgs,
        #[arg(long, value_enum, value_delimiter = ',')]
        kind: Vec<HexagonArg>,
    },
}

/// Options shared by all commands.
struct Ctx {
    grid: Option<Grid>,
    tol: Tolerance,
}

impl Ctx {
    fn p_values(&self, given: &[f64], required: bool) -> Result<Vec<f64>, CliError> {
        let mut ps = given.to_vec();
        ps.extend(self.grid.map(|g| g.points()).unwrap_or_default());
        if ps.is_empty() && required {
            return Err(CliError::Usage(
                "no exponents given: use --p or --grid".into(),
            ));
        }
        Ok(ps)
    }
}

fn params<T: Serialize>(args: &T, cli: &Cli) -> Result<BTreeMap<String, Value>, CliError> {
    let mut out = BTreeMap::new();
    if let Value::Object(map) = serde_json::to_value(args)? {
        out.extend(map);
    }
    if let Some(g) = cli.grid {
        out.insert("grid".into(), Value::String(g.to_string()));
    }
    if let Some(t) = cli.tol {
        out.insert("tol".into(), serde_json::to_value(t)?);
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let tol = match cli.tol {
        Some(t) => Tolerance::default().with_boundary_tol(t)?,
        None => Tolerance::default(),
    };
    let ctx = Ctx {
        grid: cli.grid,
        tol,
    };
    match &cli.command {
        Command::Constants(a) => {
            let meta = Meta::new("constants", params(a, cli)?);
            Output::from_records(meta, &constants(&ctx, a)?)
        }
        Command::Lattice(a) => {
            let meta = Meta::new("lattice", params(a, cli)?);
            Output::from_records(meta, &lattices(&ctx, a)?)
        }
        Command::Packing(a) => {
            let meta = Meta::new("packing", params(a, cli)?);
            Output::from_records(meta, &packings(&ctx, a)?)
        }
        Command::Covering(a) => {
            let meta = Meta::new("covering", params(a, cli)?);
            Output::from_records(meta, &coverings(&ctx, a)?)
        }
        Command::Matroid(c) => {
            let meta = Meta::new("matroid", params(c, cli)?);
            Output::from_records(meta, &matroids(c)?)
        }
        Command::Curves(c) => {
            let meta = Meta::new("curves", params(c, cli)?);
            Output::from_records(meta, &curve_records(c)?)
        }
        Command::Report => Output::from_records(Meta::new("report", params(&(), cli)?), &report()?),
        Command::Sweep(c) => {
            let meta = Meta::new("sweep", params(c, cli)?);
            match c {
                SweepCommand::Sigma { p } => Output::from_records(meta, &sweep_sigma(&ctx, *p)?),
                SweepCommand::Section { alpha, p } => {
                    Output::from_records(meta, &sweep_section(&ctx, *alpha, &p.p)?)
                }
                SweepCommand::Maxima { p, samples } => {
                    Output::from_records(meta, &sweep_maxima(&ctx, &p.p, *samples)?)
                }
            }
        }
        Command::Export(c) => {
            let meta = Meta::new("export", params(c, cli)?);
            match c {
                ExportCommand::Shells { p, kind } => {
                    Output::from_records(meta, &export_shells(&ctx, &p.p, kind)?)
                }
                ExportCommand::Hexagons { p, kind } => {
                    Output::from_records(meta, &export_hexagons(&ctx, &p.p, kind)?)
                }
            }
        }
    }
}

pub fn constants_record(p: Exponent) -> Result<ConstantsRecord, CliError> {
    let p = p.validate()?;
    let d = match p {
        Exponent::Infinity => CriticalData::at_infinity(),
        Exponent::Finite(x) => critical_data(x)?,
    };
    Ok(ConstantsRecord {
        p,
        regime: d.regime.name().into(),
        limit: matches!(d.regime, Regime::LimitP1 | Regime::LimitPInf),
        sigma_p: d.sigma_p,
        tau_p: d.tau_p,
        delta0: d.delta0,
        delta1: d.delta1,
        delta_crit: d.delta_crit,
        volume: volume(p)?,
        davis_p0: davis_constant()?,
    })
}

fn constants(ctx: &Ctx, a: &ExponentArgs) -> Result<Vec<ConstantsRecord>, CliError> {
    let mut ps = a.p.clone();
    ps.extend(
        ctx.grid
            .map(|g| g.points())
            .unwrap_or_default()
            .into_iter()
            .map(Exponent::from),
    );
    if ps.is_empty() {
        return Err(CliError::Usage(
            "no exponents given: use --p or --grid".into(),
        ));
    }
    ps.into_iter().map(constants_record).collect()
}

fn kinds(given: &[KindArg]) -> Vec<LatticeKind> {
    if given.is_empty() {
        vec![LatticeKind::Zero, LatticeKind::One]
    } else {
        given.iter().map(|&k| k.into()).collect()
    }
}

pub fn lattice_record(
    p: f64,
    kind: LatticeKind,
    tol: &Tolerance,
) -> Result<LatticeRecord, CliError> {
    let b = critical_lattice(p, kind)?;
    let s = shell(p, &b, tol)?;
    let crit = ball::critical_determinant(p)?;
    Ok(LatticeRecord {
        p,
        kind,
        u: b.u(),
        v: b.v(),
        det: b.abs_det(),
        admissible: lattice::is_admissible(p, 1.0, &b),
        critical: (b.abs_det() - crit).abs() <= 1e-9 * crit,
        shell: s.points.to_vec(),
        inscribed_area: s.hexagon_area(),
        circumscribed_area: covering::circumscribed_hexagon(p, &s)?.area,
    })
}

fn lattices(ctx: &Ctx, a: &LatticeArgs) -> Result<Vec<LatticeRecord>, CliError> {
    let mut out = Vec::new();
    for p in ctx.p_values(&a.p.p, true)? {
        for kind in kinds(&a.kind) {
            out.push(lattice_record(p, kind, &ctx.tol)?);
        }
    }
    Ok(out)
}

pub fn packing_record(p: f64, m: u32) -> Result<PackingRecord, CliError> {
    let r = packing::packing_report(p, m)?;
    Ok(PackingRecord {
        p,
        m,
        kind: packing::optimal_lattice_kind(p)?,
        u: r.lattice.u(),
        v: r.lattice.v(),
        det: r.lattice.abs_det(),
        density: r.density,
        kissing: r.kissing,
        perturbation: packing::perturbation_search(p, m)?,
    })
}

fn packings(ctx: &Ctx, a: &ScaledArgs) -> Result<Vec<PackingRecord>, CliError> {
    ctx.p_values(&a.p.p, true)?
        .into_iter()
        .map(|p| packing_record(p, a.m))
        .collect()
}

pub fn covering_record(p: f64, m: u32) -> Result<CoveringRecord, CliError> {
    let hex = covering::max_inscribed_hexagon(p)?;
    Ok(CoveringRecord {
        p,
        m,
        min_a: covering::min_a(p)?,
        i_min_a: covering::i_min_a(p)?,
        bounds: covering::covering_bounds(p)?,
        max_hexagon_area: hex.area,
        density_max_hexagon: covering::covering_density(p, hex.area)?,
        inscribed_min_area: covering::inscribed_min_area(p, m)?,
        circumscribed_min_area: covering::circumscribed_min_area(p, m)?,
    })
}

fn coverings(ctx: &Ctx, a: &ScaledArgs) -> Result<Vec<CoveringRecord>, CliError> {
    ctx.p_values(&a.p.p, true)?
        .into_iter()
        .map(|p| covering_record(p, a.m))
        .collect()
}

pub fn matroid_record(
    source: String,
    m: &FiniteMatroid,
    metric: Vec<matroid::BasisMetric>,
    note: Option<String>,
) -> MatroidRecord {
    let labels = |sets: Vec<matroid::Mask>| sets.into_iter().map(|s| m.labels(s)).collect();
    let circuits = m.circuits();
    let flats = m.flats();
    let axioms_hold = matroid::check_circuit_axioms(m.len(), &circuits).is_ok()
        && matroid::check_flat_axioms(m.len(), &flats).is_ok();
    MatroidRecord {
        source,
        ground: m.ground().to_vec(),
        rank: m.rank(),
        independent_count: m.independent_sets().len(),
        bases: labels(m.bases()),
        circuits: labels(circuits),
        flats: labels(flats),
        axioms_hold,
        metric,
        note,
    }
}

fn parse_vector(s: &str) -> Result<(String, Vec<f64>), CliError> {
    let (label, coords) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("vector {s:?} is not label=x,y,..")))?;
    let coords = coords
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad coordinate {c:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((label.trim().to_string(), coords))
}

fn matroids(c: &MatroidCommand) -> Result<Vec<MatroidRecord>, CliError> {
    match c {
        MatroidCommand::Shell { p, dim, reading } => {
            let readings: Vec<ShellReading> = if reading.is_empty() {
                vec![
                    ShellReading::LatticeBasis,
                    ShellReading::PairRepresentatives,
                    ShellReading::FullShell,
                ]
            } else {
                reading.iter().map(|&r| r.into()).collect()
            };
            readings
                .into_iter()
                .map(|r| {
                    let mm = matroid::shell_matroid(*p, *dim, r)?;
                    let note = (r == ShellReading::FullShell)
                        .then(|| "antipodal shell points are parallel elements".to_string());
                    Ok(metrized_record(
                        format!("shell p={p} dim={dim} {}", r.name()),
                        mm,
                        note,
                    ))
                })
                .collect()
        }
        MatroidCommand::Uniform { k, n } => {
            let m = matroid::uniform(*k, *n)?;
            Ok(vec![matroid_record(
                format!("U_{{{k},{n}}}"),
                &m,
                Vec::new(),
                None,
            )])
        }
        MatroidCommand::Vectors { vectors } => {
            let vs = vectors
                .iter()
                .map(|s| parse_vector(s))
                .collect::<Result<Vec<_>, _>>()?;
            let mm = MetrizedMatroid::from_vectors(vs)?;
            Ok(vec![metrized_record("vectors".into(), mm, None)])
        }
    }
}

fn metrized_record(source: String, mm: MetrizedMatroid, note: Option<String>) -> MatroidRecord {
    matroid_record(source, &mm.matroid, mm.metric, note)
}

fn curve_records(c: &CurvesCommand) -> Result<Vec<CurvesRecord>, CliError> {
    Ok(match c {
        CurvesCommand::Genus { n } => n
            .iter()
            .map(|&n| {
                Ok(CurvesRecord::Genus {
                    n,
                    genus: curves::genus(n)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
        CurvesCommand::Euler { deg, g } => vec![CurvesRecord::Euler {
            deg: *deg,
            g: *g,
            chi: curves::rr_euler(*deg, *g)?,
        }],
        CurvesCommand::Ceil { x } => x
            .iter()
            .map(|&x| {
                Ok(CurvesRecord::CeilPrime {
                    x,
                    value: curves::ceil_prime(x)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
        CurvesCommand::Arakelov { deg } => deg
            .iter()
            .map(|&d| {
                let a = curves::ArakelovDegree::new(d)?;
                Ok(CurvesRecord::Arakelov {
                    deg: a.deg,
                    deg2: a.deg2,
                    rhs: curves::rr_arakelov_rhs(d)?,
                })
            })
            .collect::<Result<_, CliError>>()?,
    })
}

fn sweep_sigma(ctx: &Ctx, p: f64) -> Result<Vec<ModuliRecord>, CliError> {
    let sp = ball::sigma(p)?;
    let grid = ctx.grid.unwrap_or(Grid {
        start: 1.0,
        stop: sp,
        count: 11,
    });
    for s in [grid.start, grid.stop] {
        if !(1.0..=sp).contains(&s) {
            return Err(CliError::Usage(format!(
                "sigma grid must lie in [1, sigma_p] = [1, {sp}] for p = {p}"
            )));
        }
    }
    grid.points()
        .into_iter()
        .map(|s| {
            let q = covering::moduli_point(p, s)?;
            Ok(ModuliRecord {
                p,
                sigma: s,
                tau: q.tau,
                delta: q.delta,
                area: q.area(),
                residual: q.third_point_residual,
            })
        })
        .collect()
}

fn sweep_section(ctx: &Ctx, alpha: f64, ps: &[f64]) -> Result<Vec<SectionRecord>, CliError> {
    ctx.p_values(ps, true)?
        .into_iter()
        .map(|p| {
            let sigma = covering::sigma_alpha(p, alpha)?.min(ball::sigma(p)?);
            let q = covering::moduli_point(p, sigma)?;
            Ok(SectionRecord {
                p,
                alpha,
                sigma,
                tau: q.tau,
                area: q.area(),
            })
        })
        .collect()
}

fn sweep_maxima(ctx: &Ctx, ps: &[f64], samples: usize) -> Result<Vec<MaximaRecord>, CliError> {
    ctx.p_values(ps, true)?
        .into_iter()
        .map(|p| {
            let best = covering::moduli_maximum(p, samples)?;
            Ok(MaximaRecord {
                p,
                al_sigma: best.sigma,
                al_max_area: best.area(),
                hexagon_max_area: covering::max_inscribed_hexagon(p)?.area,
                volume: volume(p)?,
            })
        })
        .collect()
}

fn export_shells(ctx: &Ctx, ps: &[f64], kind: &[KindArg]) -> Result<Vec<ShellRow>, CliError> {
    let mut rows = Vec::new();
    for p in ctx.p_values(ps, false)? {
        for k in kinds(kind) {
            let s = shell(p, &critical_lattice(p, k)?, &ctx.tol)?;
            rows.extend(s.points.iter().enumerate().map(|(idx, q)| ShellRow {
                p,
                lattice_kind: k,
                idx,
                x: q.x,
                y: q.y,
            }));
        }
    }
    Ok(rows)
}

fn export_hexagons(
    ctx: &Ctx,
    ps: &[f64],
    kind: &[HexagonArg],
) -> Result<Vec<HexagonRow>, CliError> {
    let kinds: Vec<HexagonArg> = if kind.is_empty() {
        vec![
            HexagonArg::InscribedMax,
            HexagonArg::InscribedAl,
            HexagonArg::Circumscribed,
        ]
    } else {
        kind.to_vec()
    };
    let mut rows = Vec::new();
    for p in ctx.p_values(ps, false)? {
        for &k in &kinds {
            let (vertices, area, kind) = match k {
                HexagonArg::InscribedMax => {
                    let h = covering::max_inscribed_hexagon(p)?;
                    (h.vertices, h.area, h.kind)
                }
                HexagonArg::InscribedAl | HexagonArg::Circumscribed => {
                    let b = critical_lattice(p, packing::optimal_lattice_kind(p)?)?;
                    let s = shell(p, &b, &ctx.tol)?;
                    if k == HexagonArg::InscribedAl {
                        (s.points, s.hexagon_area(), HexagonKind::InscribedAl)
                    } else {
                        let h = covering::circumscribed_hexagon(p, &s)?;
                        (h.vertices, h.area, h.kind)
                    }
                }
            };
            rows.push(HexagonRow {
                p,
                kind,
                vertices,
                area,
            });
        }
    }
    Ok(rows)
}

/// Stated inputs of the covering-density example for `D_3`.
pub const STATED_VOLUME_D3: f64 = 3.5200;
pub const STATED_GAMMA_D3: f64 = 3.3310;
pub const STATED_DENSITY_D3: f64 = 1.0567;
pub const STATED_TAU: f64 = 0.1200;

pub fn report() -> Result<Vec<DiscrepancyItem>, CliError> {
    let p = 3.0;
    let item = |item: &str, stated: Option<f64>, computed: f64, note: String| DiscrepancyItem {
        item: item.into(),
        stated,
        computed,
        note,
    };
    let v = volume(p)?;
    let s23 = covering::sigma_alpha(p, 2.0)?;
    let free = covering::moduli_area_free(p, s23, STATED_TAU)?;
    let constrained = covering::moduli_point(p, s23)?;
    let hex = covering::max_inscribed_hexagon(p)?;

    let crit = critical_lattice(p, packing::optimal_lattice_kind(p)?)?;
    let index2 = lattice::sublattice(&crit, [[2, 0], [0, 1]])?;
    let witness = lattice::admissibility_witness(p, 2.0, &index2);
    let dilated = packing::optimal_packing_lattice(p, 0)?;

    Ok(vec![
        item(
            "tau_3",
            Some(0.20406),
            ball::tau(p)?,
            "root of 2(1-t)^3 = 1 + t^3".into(),
        ),
        item("sigma_{2,3}", Some(1.3830), s23, "7^(1/6)".into()),
        item(
            "V(D_3)",
            Some(STATED_VOLUME_D3),
            v,
            "4 Gamma(4/3)^2 / Gamma(5/3)".into(),
        ),
        item(
            "gamma_h(D_3) at stated inputs",
            Some(STATED_GAMMA_D3),
            free.area,
            format!(
                "A(sigma_{{2,3}}, tau = {STATED_TAU}); u + v misses the boundary by {}",
                output::fmt_float(free.third_point_residual)
            ),
        ),
        item(
            "gamma_h(D_3) constrained",
            Some(STATED_GAMMA_D3),
            constrained.area(),
            format!(
                "tau = {} solved so that u + v lies on the boundary",
                output::fmt_float(constrained.tau)
            ),
        ),
        item(
            "largest inscribed hexagon of D_3",
            Some(STATED_GAMMA_D3),
            hex.area,
            "numeric maximum over centrally symmetric inscribed hexagons".into(),
        ),
        item(
            "theta(D_3) stated division",
            Some(STATED_DENSITY_D3),
            covering::density_ratio(STATED_VOLUME_D3, STATED_GAMMA_D3)?,
            "3.5200 / 3.3310".into(),
        ),
        item(
            "theta(D_3) from largest hexagon",
            Some(STATED_DENSITY_D3),
            covering::covering_density(p, hex.area)?,
            "V(D_3) / largest inscribed hexagon".into(),
        ),
        item(
            "index-2 sublattice determinant",
            None,
            index2.abs_det(),
            match witness {
                Some(w) => format!(
                    "does not pack D_3: lattice point ({}, {}) has norm {} < 2",
                    output::fmt_float(w.x),
                    output::fmt_float(w.y),
                    output::fmt_float(minkowski_core::numerics::pnorm(p, w)?)
                ),
                None => "packs D_3".into(),
            },
        ),
        item(
            "dilated lattice 2 Lambda determinant",
            None,
            dilated.abs_det(),
            if packing::is_packing_lattice(p, 0, &dilated) {
                "packs D_3 with determinant 4 Delta(D_3)".into()
            } else {
                "does not pack D_3".into()
            },
        ),
    ])
}
