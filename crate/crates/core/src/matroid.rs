//! Finite matroids in the independent-set, circuit and flat presentations,
//! linear and uniform matroids, and metrized matroids read off lattice shells.
//!
//! Subsets of the ground set are bitmasks, so ground sets hold at most
//! [`MAX_GROUND`] elements and every axiom check is exhaustive.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{critical_lattice_0, shell};
use crate::numerics::Tolerance;

pub const MAX_GROUND: usize = 10;
pub const MAX_ISOMORPHISM_GROUND: usize = 8;
pub const LINEAR_TOL: f64 = 1e-10;

pub type Mask = u32;

fn members(mask: Mask, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| mask >> i & 1 == 1)
}

fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatroid", into = "RawMatroid")]
pub struct FiniteMatroid {
    ground: Vec<String>,
    independent: Vec<bool>,
    rank: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RawMatroid {
    ground: Vec<String>,
    independents: Vec<Vec<String>>,
}

impl TryFrom<RawMatroid> for FiniteMatroid {
    type Error = Error;
    fn try_from(raw: RawMatroid) -> Result<Self> {
        FiniteMatroid::new(raw.ground, &raw.independents)
    }
}

impl From<FiniteMatroid> for RawMatroid {
    fn from(m: FiniteMatroid) -> Self {
        RawMatroid {
            independents: m
                .independent_sets()
                .into_iter()
                .map(|s| m.labels(s))
                .collect(),
            ground: m.ground,
        }
    }
}

impl FiniteMatroid {
    /// Builds a matroid from labelled independent sets, checking IM-1..3.
    pub fn new(ground: Vec<String>, independents: &[Vec<String>]) -> Result<Self> {
        check_ground(&ground)?;
        let mut table = vec![false; 1 << ground.len()];
        for set in independents {
            let mut mask = 0;
            for label in set {
                let i = ground.iter().position(|g| g == label).ok_or_else(|| {
                    Error::Degenerate(format!("label {label:?} is not in the ground set"))
                })?;
                mask |= 1 << i;
            }
            table[mask as usize] = true;
        }
        Self::from_table(ground, table)
    }

    /// `table[mask]` says whether the subset `mask` is independent.
    pub fn from_table(ground: Vec<String>, table: Vec<bool>) -> Result<Self> {
        check_ground(&ground)?;
        if table.len() != 1 << ground.len() {
            return Err(Error::Degenerate(
                "independence table has the wrong size".into(),
            ));
        }
        check_independence_axioms(ground.len(), &table)?;
        let rank = rank_table(ground.len(), &table);
        Ok(FiniteMatroid {
            ground,
            independent: table,
            rank,
        })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full(&self) -> Mask {
        ((1u64 << self.len()) - 1) as Mask
    }

    pub fn labels(&self, mask: Mask) -> Vec<String> {
        members(mask, self.len())
            .map(|i| self.ground[i].clone())
            .collect()
    }

    pub fn is_independent(&self, mask: Mask) -> bool {
        self.independent[mask as usize]
    }

    pub fn independent_sets(&self) -> Vec<Mask> {
        (0..=self.full())
            .filter(|&m| self.is_independent(m))
            .collect()
    }

    pub fn rank_of(&self, mask: Mask) -> usize {
        self.rank[mask as usize] as usize
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.full())
    }

    pub fn bases(&self) -> Vec<Mask> {
        let r = self.rank();
        self.independent_sets()
            .into_iter()
            .filter(|m| m.count_ones() as usize == r)
            .collect()
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<Mask> {
        (0..=self.full())
            .filter(|&m| {
                !self.is_independent(m)
                    && members(m, self.len()).all(|i| self.is_independent(m & !(1 << i)))
            })
            .collect()
    }

    pub fn closure(&self, mask: Mask) -> Mask {
        let r = self.rank_of(mask);
        (0..self.len())
            .filter(|&i| self.rank_of(mask | 1 << i) == r)
            .fold(mask, |acc, i| acc | 1 << i)
    }

    /// Sets that equal their closure.
    pub fn flats(&self) -> Vec<Mask> {
        (0..=self.full())
            .filter(|&m| self.closure(m) == m)
            .collect()
    }

    /// Exhaustive search for a relabelling that maps independents onto
    /// independents. Ground sets of different size are not isomorphic.
    pub fn is_isomorphic(&self, other: &FiniteMatroid) -> Result<bool> {
        let n = self.len();
        for size in [n, other.len()] {
            if size > MAX_ISOMORPHISM_GROUND {
                return Err(Error::domain(
                    "ground set size",
                    size as f64,
                    "at most 8 elements",
                ));
            }
        }
        if n != other.len()
            || self.rank() != other.rank()
            || self.independent_sets().len() != other.independent_sets().len()
        {
            return Ok(false);
        }
        let ours = self.independent_sets();
        Ok((0..n).permutations(n).any(|perm| {
            ours.iter().all(|&m| {
                let image = members(m, n).fold(0, |acc, i| acc | 1 << perm[i]);
                other.is_independent(image)
            })
        }))
    }
}

fn check_ground(ground: &[String]) -> Result<()> {
    if ground.len() > MAX_GROUND {
        return Err(Error::domain(
            "ground set size",
            ground.len() as f64,
            "at most 10 elements",
        ));
    }
    if !ground.iter().all_unique() {
        return Err(Error::Degenerate(
            "ground set labels are not distinct".into(),
        ));
    }
    Ok(())
}

fn rank_table(n: usize, independent: &[bool]) -> Vec<u8> {
    let mut rank = vec![0u8; independent.len()];
    for m in 1..independent.len() {
        rank[m] = if independent[m] {
            m.count_ones() as u8
        } else {
            members(m as Mask, n)
                .map(|i| rank[m & !(1 << i)])
                .max()
                .unwrap_or(0)
        };
    }
    rank
}

fn axiom(axiom: &'static str, detail: String) -> Error {
    Error::Axiom { axiom, detail }
}

/// IM-1 (the empty set is independent), IM-2 (subsets of independent sets
/// are independent), IM-3 (augmentation).
pub fn check_independence_axioms(n: usize, independent: &[bool]) -> Result<()> {
    if independent.len() != 1 << n {
        return Err(Error::Degenerate(
            "independence table has the wrong size".into(),
        ));
    }
    if !independent[0] {
        return Err(axiom("IM-1", "the empty set is not independent".into()));
    }
    let sets: Vec<Mask> = (0..independent.len() as Mask)
        .filter(|&m| independent[m as usize])
        .collect();
    for &m in &sets {
        if let Some(i) = members(m, n).find(|&i| !independent[(m & !(1 << i)) as usize]) {
            return Err(axiom(
                "IM-2",
                format!("{m:#b} is independent but dropping element {i} is not"),
            ));
        }
    }
    for &big in &sets {
        for &small in &sets {
            if big.count_ones() > small.count_ones()
                && !members(big & !small, n).any(|i| independent[(small | 1 << i) as usize])
            {
                return Err(axiom(
                    "IM-3",
                    format!("{small:#b} cannot be augmented from {big:#b}"),
                ));
            }
        }
    }
    Ok(())
}

/// The empty set is not a circuit, circuits are pairwise incomparable, and
/// circuit elimination holds.
pub fn check_circuit_axioms(n: usize, circuits: &[Mask]) -> Result<()> {
    if circuits.contains(&0) {
        return Err(axiom("CM-1", "the empty set is a circuit".into()));
    }
    for (i, &a) in circuits.iter().enumerate() {
        for &b in &circuits[i + 1..] {
            if is_subset(a, b) || is_subset(b, a) {
                return Err(axiom("CM-2", format!("{a:#b} and {b:#b} are comparable")));
            }
            for e in members(a & b, n) {
                let rest = (a | b) & !(1 << e);
                if !circuits.iter().any(|&c| is_subset(c, rest)) {
                    return Err(axiom(
                        "CM-3",
                        format!("no circuit inside ({a:#b} | {b:#b}) - {e}"),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// FM-1 (intersections of flats are flats), FM-2 (the covers of each flat
/// partition its complement), FM-3 (the ground set is a flat).
pub fn check_flat_axioms(n: usize, flats: &[Mask]) -> Result<()> {
    let full = ((1u64 << n) - 1) as Mask;
    if !flats.contains(&full) {
        return Err(axiom("FM-3", "the ground set is not a flat".into()));
    }
    for (i, &a) in flats.iter().enumerate() {
        for &b in &flats[i + 1..] {
            if !flats.contains(&(a & b)) {
                return Err(axiom("FM-1", format!("{a:#b} & {b:#b} is not a flat")));
            }
        }
    }
    for &f in flats {
        let above: Vec<Mask> = flats
            .iter()
            .copied()
            .filter(|&g| g != f && is_subset(f, g))
            .collect();
        let covers: Vec<Mask> = above
            .iter()
            .copied()
            .filter(|&g| !above.iter().any(|&h| h != g && is_subset(h, g)))
            .collect();
        let mut seen = 0;
        for c in covers {
            let part = c & !f;
            if part & seen != 0 {
                return Err(axiom("FM-2", format!("covers of {f:#b} overlap")));
            }
            seen |= part;
        }
        if seen != full & !f {
            return Err(axiom("FM-2", format!("covers of {f:#b} miss elements")));
        }
    }
    Ok(())
}

/// `U_{k,n}`: every subset of size at most `k` is independent.
pub fn uniform(k: usize, n: usize) -> Result<FiniteMatroid> {
    if n > MAX_GROUND {
        return Err(Error::domain("n", n as f64, "n <= 10"));
    }
    if k > n {
        return Err(Error::domain("k", k as f64, "0 <= k <= n"));
    }
    let ground = (1..=n).map(|i| format!("e{i}")).collect();
    let table = (0..1usize << n)
        .map(|m| m.count_ones() as usize <= k)
        .collect();
    FiniteMatroid::from_table(ground, table)
}

/// Rank of a list of real vectors by Gaussian elimination with partial
/// pivoting; pivots below `LINEAR_TOL` times the largest entry count as zero.
#[allow(clippy::needless_range_loop)]
pub fn matrix_rank(rows: &[Vec<f64>]) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let scale = a.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let eps = LINEAR_TOL * scale;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len())
            .filter(|&r| a[r][c].abs() > eps)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
        else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..a.len() {
            let f = a[r][c] / a[rank][c];
            for k in c..cols {
                a[r][k] -= f * a[rank][k];
            }
        }
        rank += 1;
    }
    rank
}

/// `sqrt(det(G))` for the Gram matrix of `rows`: the volume of the cell they span.
#[allow(clippy::needless_range_loop)]
pub fn cell_volume(rows: &[Vec<f64>]) -> f64 {
    let k = rows.len();
    let mut g: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| rows[i].iter().zip(&rows[j]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let mut det = 1.0;
    for c in 0..k {
        let Some(piv) = (c..k).max_by(|&i, &j| g[i][c].abs().total_cmp(&g[j][c].abs())) else {
            return 0.0;
        };
        if g[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            g.swap(piv, c);
            det = -det;
        }
        det *= g[c][c];
        for r in c + 1..k {
            let f = g[r][c] / g[c][c];
            for j in c..k {
                g[r][j] -= f * g[c][j];
            }
        }
    }
    det.max(0.0).sqrt()
}

fn check_vectors(vectors: &[(String, Vec<f64>)]) -> Result<()> {
    let dim = vectors.first().map_or(0, |(_, v)| v.len());
    if dim > 4 {
        return Err(Error::domain("dimension", dim as f64, "at most 4"));
    }
    if vectors.iter().any(|(_, v)| v.len() != dim) {
        return Err(Error::Degenerate(
            "vectors have different dimensions".into(),
        ));
    }
    if vectors.iter().flat_map(|(_, v)| v).any(|x| !x.is_finite()) {
        return Err(Error::Degenerate(
            "vector coordinates must be finite".into(),
        ));
    }
    Ok(())
}

/// The linear matroid of a labelled vector configuration.
pub fn from_vectors(vectors: &[(String, Vec<f64>)]) -> Result<FiniteMatroid> {
    check_vectors(vectors)?;
    let ground: Vec<String> = vectors.iter().map(|(l, _)| l.clone()).collect();
    check_ground(&ground)?;
    let n = ground.len();
    let table = (0..1 << n)
        .map(|m: Mask| {
            let rows: Vec<Vec<f64>> = members(m, n).map(|i| vectors[i].1.clone()).collect();
            matrix_rank(&rows) == rows.len()
        })
        .collect();
    FiniteMatroid::from_table(ground, table)
}

/// How the points of a shell become matroid elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellReading {
    /// `a = (1, 0)` and `b = (1/2, sigma_p/2)`, the basis of the lattice
    LatticeBasis,
    /// one representative per antipodal pair of shell points
    PairRepresentatives,
    /// all six shell points; antipodes are parallel elements
    FullShell,
}

impl ShellReading {
    pub fn name(self) -> &'static str {
        match self {
            ShellReading::LatticeBasis => "lattice-basis",
            ShellReading::PairRepresentatives => "pair-representatives",
            ShellReading::FullShell => "full-shell",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisMetric {
    pub basis: Vec<String>,
    pub volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetrizedMatroid {
    pub matroid: FiniteMatroid,
    pub vectors: Vec<(String, Vec<f64>)>,
    /// volume of the cell spanned by each basis
    pub metric: Vec<BasisMetric>,
}

impl MetrizedMatroid {
    pub fn from_vectors(vectors: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let matroid = from_vectors(&vectors)?;
        let n = matroid.len();
        let metric = matroid
            .bases()
            .into_iter()
            .map(|b| {
                let rows: Vec<Vec<f64>> = members(b, n).map(|i| vectors[i].1.clone()).collect();
                BasisMetric {
                    basis: matroid.labels(b),
                    volume: cell_volume(&rows),
                }
            })
            .collect();
        Ok(MetrizedMatroid {
            matroid,
            vectors,
            metric,
        })
    }
}

/// Metrized matroid on the shell of the critical lattice through `(1, 0)`.
/// In dimension 3 the unit vector `c = (0, 0, 1)` is appended.
pub fn shell_matroid(p: f64, dimension: usize, reading: ShellReading) -> Result<MetrizedMatroid> {
    if !(2..=3).contains(&dimension) {
        return Err(Error::domain("dimension", dimension as f64, "2 or 3"));
    }
    let basis = critical_lattice_0(p)?;
    let pad = |x: f64, y: f64| {
        let mut v = vec![x, y];
        v.resize(dimension, 0.0);
        v
    };
    let mut vectors: Vec<(String, Vec<f64>)> = match reading {
        ShellReading::LatticeBasis => vec![
            ("a".into(), pad(basis.u().x, basis.u().y)),
            ("b".into(), pad(basis.v().x, basis.v().y)),
        ],
        ShellReading::PairRepresentatives | ShellReading::FullShell => {
            let s = shell(p, &basis, &Tolerance::default())?;
            let take = if reading == ShellReading::FullShell {
                6
            } else {
                3
            };
            s.points[..take]
                .iter()
                .enumerate()
                .map(|(i, q)| (format!("s{}", i + 1), pad(q.x, q.y)))
                .collect()
        }
    };
    if dimension == 3 {
        vectors.push(("c".into(), vec![0.0, 0.0, 1.0]));
    }
    MetrizedMatroid::from_vectors(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::delta0;
    use proptest::prelude::*;

    fn labelled(vs: &[&[f64]]) -> Vec<(String, Vec<f64>)> {
        vs.iter()
            .enumerate()
            .map(|(i, v)| (format!("x{i}"), v.to_vec()))
            .collect()
    }

    fn check_all(m: &FiniteMatroid) {
        check_independence_axioms(m.len(), &m.independent).unwrap();
        check_circuit_axioms(m.len(), &m.circuits()).unwrap();
        check_flat_axioms(m.len(), &m.flats()).unwrap();
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
    fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            for r in rank + 1..a.len() {
                for k in c + 1..cols {
                    a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
                }
                a[r][c] = 0;
            }
            prev = a[rank][c];
            rank += 1;
        }
        rank
    }

    #[test]
    fn uniform_examples() {
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(u23.bases(), vec![0b011, 0b101, 0b110]);
        assert_eq!(uniform(0, 4).unwrap().independent_sets(), vec![0]);
        check_all(&u23);
        assert!(uniform(3, 2).is_err());
        assert!(uniform(2, 11).is_err());
    }

    #[test]
    fn uniform_counts_and_axioms() {
        for n in 0..=6 {
            for k in 0..=n {
                let m = uniform(k, n).unwrap();
                check_all(&m);
                let want: usize = (0..=k).map(|i| binom(n, i)).sum();
                assert_eq!(m.independent_sets().len(), want);
                assert_eq!(m.bases().len(), binom(n, k));
                assert_eq!(m.rank(), k);
            }
        }
    }

    #[test]
    fn from_vectors_examples() {
        let m = from_vectors(&labelled(&[&[1.0, 0.0], &[0.3, 2.0], &[1.3, 2.0]])).unwrap();
        assert!(m.is_isomorphic(&uniform(2, 3).unwrap()).unwrap());
        assert_eq!(m.circuits(), vec![0b111]);

        let m = from_vectors(&labelled(&[&[1.0, 0.0]])).unwrap();
        assert!(m.is_isomorphic(&uniform(1, 1).unwrap()).unwrap());

        let m = from_vectors(&labelled(&[&[1.0, 0.0], &[2.0, 0.0]])).unwrap();
        assert_eq!(m.bases(), vec![0b01, 0b10]);
        assert_eq!(m.flats(), vec![0b00, 0b11]);
        check_all(&m);
    }

    #[test]
    fn from_vectors_rejects_bad_input() {
        assert!(from_vectors(&labelled(&[&[1.0, 0.0], &[1.0]])).is_err());
        assert!(from_vectors(&labelled(&[&[1.0, 0.0, 0.0, 0.0, 0.0]])).is_err());
        let eleven: Vec<(String, Vec<f64>)> =
            (0..11).map(|i| (format!("v{i}"), vec![i as f64])).collect();
        assert!(from_vectors(&eleven).is_err());
        let dup = vec![("a".to_string(), vec![1.0]), ("a".to_string(), vec![2.0])];
        assert!(from_vectors(&dup).is_err());
    }

    #[test]
    fn circuit_and_flat_examples() {
        assert_eq!(uniform(2, 3).unwrap().circuits(), vec![0b111]);
        assert!(uniform(4, 4).unwrap().circuits().is_empty());
        assert_eq!(
            uniform(2, 3).unwrap().flats(),
            vec![0b000, 0b001, 0b010, 0b100, 0b111]
        );
        assert_eq!(uniform(3, 3).unwrap().flats(), (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn isomorphism_examples() {
        let u12 = uniform(1, 2).unwrap();
        assert!(!u12.is_isomorphic(&uniform(2, 2).unwrap()).unwrap());
        assert!(u12.is_isomorphic(&u12).unwrap());
        assert!(!u12.is_isomorphic(&uniform(1, 3).unwrap()).unwrap());
        assert!(uniform(2, 9).unwrap().is_isomorphic(&u12).is_err());
    }

    #[test]
    fn axiom_checkers_reject_non_matroids() {
        // {a, b} independent but {b} not
        let bad = vec![true, true, false, true];
        assert!(matches!(
            check_independence_axioms(2, &bad),
            Err(Error::Axiom { axiom: "IM-2", .. })
        ));
        assert!(matches!(
            check_independence_axioms(1, &[false, true]),
            Err(Error::Axiom { axiom: "IM-1", .. })
        ));
        // {ab} and {c}: {c} cannot be augmented from {a, b}
        let mut t = vec![false; 8];
        for m in [0b000, 0b001, 0b010, 0b100, 0b011] {
            t[m] = true;
        }
        assert!(matches!(
            check_independence_axioms(3, &t),
            Err(Error::Axiom { axiom: "IM-3", .. })
        ));
        assert!(check_circuit_axioms(3, &[0b011, 0b111]).is_err());
        assert!(check_circuit_axioms(3, &[0b011, 0b110]).is_err());
        assert!(check_flat_axioms(2, &[0b00, 0b01]).is_err());
        assert!(check_flat_axioms(2, &[0b00, 0b01, 0b11]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let m = uniform(2, 4).unwrap();
        let json = serde_json_like(&m);
        assert_eq!(json.0, m.ground().to_vec());
        let back = FiniteMatroid::new(json.0, &json.1).unwrap();
        assert_eq!(back, m);
    }

    fn serde_json_like(m: &FiniteMatroid) -> (Vec<String>, Vec<Vec<String>>) {
        let raw = RawMatroid::from(m.clone());
        (raw.ground, raw.independents)
    }

    #[test]
    fn shell_matroid_examples() {
        let s3 = 7f64.cbrt();
        let m = shell_matroid(3.0, 2, ShellReading::LatticeBasis).unwrap();
        assert_eq!(m.matroid.ground(), ["a", "b"]);
        assert_eq!(m.metric.len(), 1);
        assert!((m.metric[0].volume - 0.5 * s3).abs() < 1e-10);
        assert!((m.vectors[1].1[1] - s3 / 2.0).abs() < 1e-12);

        let m = shell_matroid(3.0, 3, ShellReading::LatticeBasis).unwrap();
        assert_eq!(m.matroid.ground(), ["a", "b", "c"]);
        assert_eq!(m.matroid.bases(), vec![0b111]);
        assert!((m.metric[0].volume - 0.5 * s3).abs() < 1e-10);

        let m = shell_matroid(3.0, 2, ShellReading::PairRepresentatives).unwrap();
        assert!(m.matroid.is_isomorphic(&uniform(2, 3).unwrap()).unwrap());
        assert_eq!(m.matroid.circuits(), vec![0b111]);

        assert!(shell_matroid(3.0, 4, ShellReading::LatticeBasis).is_err());
        assert!(shell_matroid(1.0, 2, ShellReading::LatticeBasis).is_err());
    }

    #[test]
    fn shell_metric_is_constant() {
        for p in [1.3, 2.0, 2.5, 3.0, 6.0] {
            let d = delta0(p).unwrap();
            for reading in [
                ShellReading::LatticeBasis,
                ShellReading::PairRepresentatives,
                ShellReading::FullShell,
            ] {
                for dim in [2, 3] {
                    let m = shell_matroid(p, dim, reading).unwrap();
                    check_all(&m.matroid);
                    assert!(!m.metric.is_empty());
                    for b in &m.metric {
                        assert!((b.volume - d).abs() < 1e-10, "p={p} {reading:?} {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_shell_has_parallel_antipodes() {
        let m = shell_matroid(3.0, 2, ShellReading::FullShell).unwrap();
        let pairs: Vec<Mask> = m
            .matroid
            .circuits()
            .into_iter()
            .filter(|c| c.count_ones() == 2)
            .collect();
        assert_eq!(pairs, vec![0b001001, 0b010010, 0b100100]);
        assert_eq!(m.matroid.rank(), 2);
    }

    #[test]
    fn cell_volume_examples() {
        assert!((cell_volume(&[vec![2.0, 0.0], vec![1.0, 3.0]]) - 6.0).abs() < 1e-12);
        assert!((cell_volume(&[vec![3.0, 4.0, 0.0]]) - 5.0).abs() < 1e-12);
        assert_eq!(cell_volume(&[vec![1.0, 1.0], vec![2.0, 2.0]]), 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn random_linear_matroids(
            dim in 1usize..=3,
            raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=6),
        ) {
            let ints: Vec<Vec<i64>> = raw.iter().map(|r| r[..dim].to_vec()).collect();
            let vectors: Vec<(String, Vec<f64>)> = ints
                .iter()
                .enumerate()
                .map(|(i, r)| (format!("v{i}"), r.iter().map(|&x| x as f64).collect()))
                .collect();
            let m = from_vectors(&vectors).unwrap();
            check_all(&m);
            prop_assert_eq!(m.rank(), bareiss_rank(&ints));
            for mask in 0..=m.full() {
                let sub: Vec<Vec<i64>> = members(mask, m.len()).map(|i| ints[i].clone()).collect();
                prop_assert_eq!(m.rank_of(mask), bareiss_rank(&sub));
            }
            prop_assert!(m.is_isomorphic(&m).unwrap());
        }
    }
}
