//! Record types emitted by the commands. Every record serializes to JSON
//! and back unchanged, and has a flat CSV layout.

use serde::{Deserialize, Serialize};

use minkowski_core::matroid::BasisMetric;
use minkowski_core::packing::PerturbationSummary;
use minkowski_core::{CoveringBounds, Exponent, HexagonKind, LatticeKind, Vec2};

use crate::output::{Cell, Tabular};

fn exponent_cell(p: Exponent) -> Cell {
    match p {
        Exponent::Finite(x) => Cell::Float(x),
        Exponent::Infinity => Cell::Text("inf".into()),
    }
}

fn sets_cell(sets: &[Vec<String>]) -> Cell {
    Cell::Text(
        sets.iter()
            .map(|s| format!("{{{}}}", s.join(",")))
            .collect::<Vec<_>>()
            .join(";"),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRecord {
    pub p: Exponent,
    pub regime: String,
    /// `p = 1` or `p = inf`: values are limits, not root solves
    pub limit: bool,
    pub sigma_p: f64,
    pub tau_p: f64,
    pub delta0: f64,
    pub delta1: f64,
    pub delta_crit: f64,
    pub volume: f64,
    pub davis_p0: f64,
}

impl Tabular for ConstantsRecord {
    fn header() -> Vec<&'static str> {
        vec![
            "p",
            "regime",
            "limit",
            "sigma_p",
            "tau_p",
            "delta0",
            "delta1",
            "delta_crit",
            "volume",
            "davis_p0",
        ]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            exponent_cell(self.p),
            self.regime.as_str().into(),
            self.limit.into(),
            self.sigma_p.into(),
            self.tau_p.into(),
            self.delta0.into(),
            self.delta1.into(),
            self.delta_crit.into(),
            self.volume.into(),
            self.davis_p0.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub p: f64,
    pub kind: LatticeKind,
    pub u: Vec2,
    pub v: Vec2,
    pub det: f64,
    pub admissible: bool,
    /// true when this lattice attains the critical determinant
    pub critical: bool,
    pub shell: Vec<Vec2>,
    pub inscribed_area: f64,
    pub circumscribed_area: f64,
}

impl Tabular for LatticeRecord {
    fn header() -> Vec<&'static str> {
        vec![
            "p",
            "kind",
            "ux",
            "uy",
            "vx",
            "vy",
            "det",
            "admissible",
            "critical",
            "shell_size",
            "inscribed_area",
            "circumscribed_area",
        ]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.kind.name().into(),
            self.u.x.into(),
            self.u.y.into(),
            self.v.x.into(),
            self.v.y.into(),
            self.det.into(),
            self.admissible.into(),
            self.critical.into(),
            self.shell.len().into(),
            self.inscribed_area.into(),
            self.circumscribed_area.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingRecord {
    pub p: f64,
    pub m: u32,
    pub kind: LatticeKind,
    pub u: Vec2,
    pub v: Vec2,
    pub det: f64,
    pub density: f64,
    pub kissing: u32,
    pub perturbation: PerturbationSummary,
}

impl Tabular for PackingRecord {
    fn header() -> Vec<&'static str> {
        vec![
            "p",
            "m",
            "kind",
            "ux",
            "uy",
            "vx",
            "vy",
            "det",
            "density",
            "kissing",
            "perturbed_smaller",
            "perturbed_packing",
        ]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.m.into(),
            self.kind.name().into(),
            self.u.x.into(),
            self.u.y.into(),
            self.v.x.into(),
            self.v.y.into(),
            self.det.into(),
            self.density.into(),
            self.kissing.into(),
            self.perturbation.smaller_det.into(),
            self.perturbation.violations.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringRecord {
    pub p: f64,
    pub m: u32,
    pub min_a: f64,
    pub i_min_a: f64,
    pub bounds: CoveringBounds,
    pub max_hexagon_area: f64,
    /// `V(D_p)` over the largest inscribed hexagon
    pub density_max_hexagon: f64,
    pub inscribed_min_area: f64,
    pub circumscribed_min_area: f64,
}

impl Tabular for CoveringRecord {
    fn header() -> Vec<&'static str> {
        vec![
            "p",
            "m",
            "min_a",
            "i_min_a",
            "sas_lower",
            "i_min_lower",
            "trivial_upper",
            "max_hexagon_area",
            "density_max_hexagon",
            "inscribed_min_area",
            "circumscribed_min_area",
        ]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.m.into(),
            self.min_a.into(),
            self.i_min_a.into(),
            self.bounds.sas_lower.into(),
            self.bounds.i_min_lower.into(),
            self.bounds.trivial_upper.into(),
            self.max_hexagon_area.into(),
            self.density_max_hexagon.into(),
            self.inscribed_min_area.into(),
            self.circumscribed_min_area.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliRecord {
    pub p: f64,
    pub sigma: f64,
    pub tau: f64,
    pub delta: f64,
    pub area: f64,
    pub residual: f64,
}

impl Tabular for ModuliRecord {
    fn header() -> Vec<&'static str> {
        vec!["p", "sigma", "tau", "delta", "A", "residual"]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.sigma.into(),
            self.tau.into(),
            self.delta.into(),
            self.area.into(),
            self.residual.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionRecord {
    pub p: f64,
    pub alpha: f64,
    pub sigma: f64,
    pub tau: f64,
    pub area: f64,
}

impl Tabular for SectionRecord {
    fn header() -> Vec<&'static str> {
        vec!["p", "alpha", "sigma", "tau", "A"]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.alpha.into(),
            self.sigma.into(),
            self.tau.into(),
            self.area.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximaRecord {
    pub p: f64,
    /// best lattice hexagon on the sampled sigma grid
    pub al_sigma: f64,
    pub al_max_area: f64,
    pub hexagon_max_area: f64,
    pub volume: f64,
}

impl Tabular for MaximaRecord {
    fn header() -> Vec<&'static str> {
        vec!["p", "al_sigma", "al_max_area", "hexagon_max_area", "volume"]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.al_sigma.into(),
            self.al_max_area.into(),
            self.hexagon_max_area.into(),
            self.volume.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatroidRecord {
    pub source: String,
    pub ground: Vec<String>,
    pub rank: usize,
    pub independent_count: usize,
    pub bases: Vec<Vec<String>>,
    pub circuits: Vec<Vec<String>>,
    pub flats: Vec<Vec<String>>,
    pub axioms_hold: bool,
    pub metric: Vec<BasisMetric>,
    pub note: Option<String>,
}

impl Tabular for MatroidRecord {
    fn header() -> Vec<&'static str> {
        vec![
            "source",
            "ground",
            "rank",
            "independent_count",
            "bases",
            "circuits",
            "flats",
            "axioms_hold",
            "metric",
        ]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.source.as_str().into(),
            self.ground.join(",").into(),
            self.rank.into(),
            self.independent_count.into(),
            sets_cell(&self.bases),
            sets_cell(&self.circuits),
            sets_cell(&self.flats),
            self.axioms_hold.into(),
            Cell::Text(
                self.metric
                    .iter()
                    .map(|b| {
                        format!(
                            "{{{}}}={}",
                            b.basis.join(","),
                            crate::output::fmt_float(b.volume)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "kebab-case")]
pub enum CurvesRecord {
    Genus { n: u64, genus: u64 },
    Euler { deg: i64, g: i64, chi: i64 },
    CeilPrime { x: f64, value: i64 },
    Arakelov { deg: f64, deg2: f64, rhs: i64 },
}

impl Tabular for CurvesRecord {
    fn header() -> Vec<&'static str> {
        vec!["quantity", "input", "value"]
    }
    fn row(&self) -> Vec<Cell> {
        let f = crate::output::fmt_float;
        match self {
            CurvesRecord::Genus { n, genus } => {
                vec!["genus".into(), format!("n={n}").into(), (*genus).into()]
            }
            CurvesRecord::Euler { deg, g, chi } => {
                vec![
                    "euler".into(),
                    format!("deg={deg};g={g}").into(),
                    (*chi).into(),
                ]
            }
            CurvesRecord::CeilPrime { x, value } => {
                vec![
                    "ceil-prime".into(),
                    format!("x={}", f(*x)).into(),
                    (*value).into(),
                ]
            }
            CurvesRecord::Arakelov { deg, deg2, rhs } => vec![
                "arakelov".into(),
                format!("deg={};deg2={}", f(*deg), f(*deg2)).into(),
                (*rhs).into(),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShellRow {
    pub p: f64,
    pub lattice_kind: LatticeKind,
    pub idx: usize,
    pub x: f64,
    pub y: f64,
}

impl Tabular for ShellRow {
    fn header() -> Vec<&'static str> {
        vec!["p", "lattice_kind", "idx", "x", "y"]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.lattice_kind.name().into(),
            self.idx.into(),
            self.x.into(),
            self.y.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexagonRow {
    pub p: f64,
    pub kind: HexagonKind,
    pub vertices: [Vec2; 6],
    pub area: f64,
}

impl Tabular for HexagonRow {
    fn header() -> Vec<&'static str> {
        vec![
            "p", "kind", "v1x", "v1y", "v2x", "v2y", "v3x", "v3y", "v4x", "v4y", "v5x", "v5y",
            "v6x", "v6y", "area",
        ]
    }
    fn row(&self) -> Vec<Cell> {
        let mut out = vec![self.p.into(), self.kind.name().into()];
        for v in &self.vertices {
            out.push(v.x.into());
            out.push(v.y.into());
        }
        out.push(self.area.into());
        out
    }
}

/// One line of the comparison between stated values and recomputation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyItem {
    pub item: String,
    pub stated: Option<f64>,
    pub computed: f64,
    pub note: String,
}

impl Tabular for DiscrepancyItem {
    fn header() -> Vec<&'static str> {
        vec!["item", "stated", "computed", "note"]
    }
    fn row(&self) -> Vec<Cell> {
        vec![
            self.item.as_str().into(),
            self.stated.map_or(Cell::Text(String::new()), Cell::Float),
            self.computed.into(),
            self.note.as_str().into(),
        ]
    }
}
