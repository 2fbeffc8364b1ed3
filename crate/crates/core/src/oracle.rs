//! Brute-force ground truth.
//!
//! Nothing here touches the parametrization: the scans share only
//! [`verify_regular`] and [`verify_equilateral`] with the generating pipeline,
//! so agreement between the two is meaningful.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{exact_sqrt, isqrt, Point};
use crate::tetra::{verify_regular, LatticeTetrahedron};
use crate::triangle::verify_equilateral;

/// Largest grid side scanned without `allow_large`.
pub const DEFAULT_GRID_BOUND: u64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridOptions {
    /// Scan past [`DEFAULT_GRID_BOUND`].
    pub allow_large: bool,
    /// Only try tetrahedron sides with `side^2 = 2 k^2`.
    pub prune: bool,
    /// Keep the vertex sets, not just the count.
    pub collect: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            allow_large: false,
            prune: true,
            collect: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridScan<T> {
    pub n: u64,
    pub count: u64,
    pub items: Option<Vec<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCountRecord {
    pub n: u64,
    pub triangles: u64,
    pub tetrahedra: u64,
}

fn grid_points(n: u64, opts: &GridOptions) -> Result<Vec<Point>> {
    if n > DEFAULT_GRID_BOUND && !opts.allow_large {
        return Err(Error::Refused(format!(
            "grid side n = {n} exceeds the default bound {DEFAULT_GRID_BOUND}; pass the override to scan anyway"
        )));
    }
    let n = i64::try_from(n).map_err(|_| Error::Overflow("grid side"))?;
    let mut pts = Vec::new();
    for x in 0..=n {
        for y in 0..=n {
            for z in 0..=n {
                pts.push(Point::new(x, y, z));
            }
        }
    }
    Ok(pts)
}

// Coordinates are bounded by the grid side, so plain arithmetic cannot wrap here.
fn d2(a: Point, b: Point) -> i64 {
    let (dx, dy, dz) = (a.x - b.x, a.y - b.y, a.z - b.z);
    dx * dx + dy * dy + dz * dz
}

/// Later points (by index) grouped by squared distance to `pts[i]`.
fn buckets(pts: &[Point], i: usize) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for j in i + 1..pts.len() {
        out.entry(d2(pts[i], pts[j])).or_default().push(j);
    }
    out
}

fn is_twice_square(s: i64) -> bool {
    s % 2 == 0 && exact_sqrt((s / 2) as u64).is_some()
}

/// Regular tetrahedra with all vertices in `{0..n}^3`.
pub fn brute_tetrahedra_grid(n: u64, opts: &GridOptions) -> Result<GridScan<[Point; 4]>> {
    let pts = grid_points(n, opts)?;
    let per_anchor: Vec<Vec<[Point; 4]>> = (0..pts.len())
        .into_par_iter()
        .map(|a| {
            let mut found = Vec::new();
            for (dist, bucket) in buckets(&pts, a) {
                if opts.prune && !is_twice_square(dist) {
                    continue;
                }
                for (ib, &b) in bucket.iter().enumerate() {
                    for (ic, &c) in bucket.iter().enumerate().skip(ib + 1) {
                        if d2(pts[b], pts[c]) != dist {
                            continue;
                        }
                        for &e in &bucket[ic + 1..] {
                            if d2(pts[b], pts[e]) != dist || d2(pts[c], pts[e]) != dist {
                                continue;
                            }
                            let cand = [pts[a], pts[b], pts[c], pts[e]];
                            verify_regular(&cand)?;
                            found.push(cand);
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(finish(n, per_anchor, opts.collect))
}

/// Equilateral triangles with all vertices in `{0..n}^3`.
pub fn brute_triangles_grid(n: u64, opts: &GridOptions) -> Result<GridScan<[Point; 3]>> {
    let pts = grid_points(n, opts)?;
    let per_anchor: Vec<Vec<[Point; 3]>> = (0..pts.len())
        .into_par_iter()
        .map(|a| {
            let mut found = Vec::new();
            for (dist, bucket) in buckets(&pts, a) {
                for (ib, &b) in bucket.iter().enumerate() {
                    for &c in &bucket[ib + 1..] {
                        if d2(pts[b], pts[c]) != dist {
                            continue;
                        }
                        verify_equilateral(
                            pts[b].checked_sub(pts[a])?,
                            pts[c].checked_sub(pts[a])?,
                        )?;
                        found.push([pts[a], pts[b], pts[c]]);
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    Ok(finish(n, per_anchor, opts.collect))
}

fn finish<T: Ord>(n: u64, parts: Vec<Vec<T>>, collect: bool) -> GridScan<T> {
    let count = parts.iter().map(|p| p.len() as u64).sum();
    let items = collect.then(|| {
        let mut all: Vec<T> = parts.into_iter().flatten().collect();
        all.sort();
        all
    });
    GridScan { n, count, items }
}

pub fn grid_counts(n: u64, opts: &GridOptions) -> Result<GridCountRecord> {
    let counting = GridOptions {
        collect: false,
        ..*opts
    };
    Ok(GridCountRecord {
        n,
        triangles: brute_triangles_grid(n, &counting)?.count,
        tetrahedra: brute_tetrahedra_grid(n, &counting)?.count,
    })
}

/// The 48 symmetries of the cube `[0, n]^3`: an axis permutation followed by
/// reflections `x -> n - x`. `index` ranges over `0..48`.
pub fn cube_symmetry(index: usize, n: i64, p: Point) -> Point {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let perm = PERMS[index / 8];
    let flips = index % 8;
    let mut c = [p[perm[0]], p[perm[1]], p[perm[2]]];
    for (axis, v) in c.iter_mut().enumerate() {
        if flips >> axis & 1 == 1 {
            *v = n - *v;
        }
    }
    Point::from(c)
}

/// Every regular tetrahedron with the origin as a vertex and `side^2 = 2 ell^2`,
/// found by pairing up lattice points on the sphere `|p|^2 = 2 ell^2` inside
/// `[-bound, bound]^3`.
pub fn brute_t0(ell: u64, bound: u64) -> Result<BTreeSet<LatticeTetrahedron>> {
    if ell == 0 {
        return Err(Error::Domain("ell must be positive".into()));
    }
    if bound < 2 * ell {
        return Err(Error::Precondition(format!(
            "bound {bound} must be at least 2 ell = {}",
            2 * ell
        )));
    }
    let ell = i64::try_from(ell).map_err(|_| Error::Overflow("ell"))?;
    let bound = i64::try_from(bound).map_err(|_| Error::Overflow("bound"))?;
    let target = ell
        .checked_mul(ell)
        .and_then(|v| v.checked_mul(2))
        .ok_or(Error::Overflow("2 ell^2"))?;

    let mut sphere = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let rest = target - x * x - y * y;
            if rest < 0 {
                continue;
            }
            let z = isqrt(rest as u64) as i64;
            if z * z != rest || z > bound {
                continue;
            }
            sphere.push(Point::new(x, y, z));
            if z != 0 {
                sphere.push(Point::new(x, y, -z));
            }
        }
    }
    sphere.sort();

    let found: Vec<Vec<LatticeTetrahedron>> = (0..sphere.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in i + 1..sphere.len() {
                if d2(sphere[i], sphere[j]) != target {
                    continue;
                }
                for k in j + 1..sphere.len() {
                    if d2(sphere[i], sphere[k]) == target && d2(sphere[j], sphere[k]) == target {
                        out.push(LatticeTetrahedron::new([
                            Point::ORIGIN,
                            sphere[i],
                            sphere[j],
                            sphere[k],
                        ])?);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Default bound for [`brute_t0`].
pub fn brute_t0_default(ell: u64) -> Result<BTreeSet<LatticeTetrahedron>> {
    brute_t0(ell, 2 * ell)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff<T> {
    pub missing_from_parametrized: Vec<T>,
    pub extra_in_parametrized: Vec<T>,
}

impl<T> Diff<T> {
    pub fn is_empty(&self) -> bool {
        self.missing_from_parametrized.is_empty() && self.extra_in_parametrized.is_empty()
    }
}

pub fn compare<T: Ord + Clone>(parametrized: &BTreeSet<T>, brute: &BTreeSet<T>) -> Diff<T> {
    Diff {
        missing_from_parametrized: brute.difference(parametrized).cloned().collect(),
        extra_in_parametrized: parametrized.difference(brute).cloned().collect(),
    }
}

/// Parses an OEIS b-file: `index value` per line, `#` comments and blank
/// lines skipped.
pub fn parse_bfile(text: &str) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!(
                "b-file line {}: expected \"n a(n)\", got {line:?}",
                lineno + 1
            )));
        };
        let parse = |s: &str| {
            s.parse::<u64>()
                .map_err(|e| Error::Parse(format!("b-file line {}: {s:?}: {e}", lineno + 1)))
        };
        out.insert(parse(idx)?, parse(val)?);
    }
    Ok(out)
}

/// How a b-file index maps onto a grid side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Offset {
    /// `a(i)` counts `{0..i}^3`.
    GridSide,
    /// `a(i)` counts a grid with `i` points per side, i.e. `{0..i-1}^3`.
    PointsPerSide,
}

impl Offset {
    pub fn grid_for_index(self, i: u64) -> Option<u64> {
        match self {
            Offset::GridSide => Some(i),
            Offset::PointsPerSide => i.checked_sub(1),
        }
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Offset::GridSide => write!(f, "a(i) = count on {{0..i}}^3"),
            Offset::PointsPerSide => write!(f, "a(i) = count on {{0..i-1}}^3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffsetReport {
    pub offset: Offset,
    pub compared: usize,
    /// `(grid side, b-file value, computed value)`
    pub mismatches: Vec<(u64, u64, u64)>,
}

impl OffsetReport {
    pub fn matches(&self) -> bool {
        self.compared > 0 && self.mismatches.is_empty()
    }
}

/// Compares computed grid counts (indexed by grid side) with b-file terms
/// under both offset conventions.
pub fn compare_bfile(
    computed: &BTreeMap<u64, u64>,
    bfile: &BTreeMap<u64, u64>,
) -> [OffsetReport; 2] {
    [Offset::GridSide, Offset::PointsPerSide].map(|offset| {
        let mut compared = 0;
        let mut mismatches = Vec::new();
        for (&i, &expected) in bfile {
            let Some(n) = offset.grid_for_index(i) else {
                continue;
            };
            if let Some(&got) = computed.get(&n) {
                compared += 1;
                if got != expected {
                    mismatches.push((n, expected, got));
                }
            }
        }
        OffsetReport {
            offset,
            compared,
            mismatches,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect() -> GridOptions {
        GridOptions {
            collect: true,
            ..GridOptions::default()
        }
    }

    #[test]
    fn tiny_grids() {
        let o = GridOptions::default();
        assert_eq!(brute_tetrahedra_grid(0, &o).unwrap().count, 0);
        assert_eq!(brute_triangles_grid(0, &o).unwrap().count, 0);
        assert_eq!(brute_tetrahedra_grid(1, &o).unwrap().count, 2);
        assert_eq!(brute_triangles_grid(1, &o).unwrap().count, 8);
    }

    #[test]
    fn unit_cube_by_subsets() {
        // all C(8,4) and C(8,3) subsets of the unit cube
        let pts: Vec<Point> = (0..8)
            .map(|i| Point::new(i & 1, i >> 1 & 1, i >> 2 & 1))
            .collect();
        let mut tets = 0;
        let mut tris = 0;
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    if verify_equilateral(
                        pts[b].checked_sub(pts[a]).unwrap(),
                        pts[c].checked_sub(pts[a]).unwrap(),
                    )
                    .is_ok()
                    {
                        tris += 1;
                    }
                    for d in c + 1..8 {
                        if verify_regular(&[pts[a], pts[b], pts[c], pts[d]]).is_ok() {
                            tets += 1;
                        }
                    }
                }
            }
        }
        assert_eq!((tets, tris), (2, 8));
    }

    #[test]
    fn refuses_large_grid() {
        assert!(matches!(
            brute_triangles_grid(7, &GridOptions::default()),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn pruning_does_not_change_counts() {
        for n in 0..=3 {
            let pruned = brute_tetrahedra_grid(n, &collect()).unwrap();
            let full = brute_tetrahedra_grid(
                n,
                &GridOptions {
                    prune: false,
                    ..collect()
                },
            )
            .unwrap();
            assert_eq!(pruned, full, "n = {n}");
            for t in full.items.unwrap() {
                let base = t[0];
                let moved = t.map(|p| p.checked_sub(base).unwrap());
                assert!(is_twice_square(verify_regular(&moved).unwrap()));
            }
        }
    }

    #[test]
    fn grid_sets_are_cube_symmetric() {
        for n in 1..=3u64 {
            let tets: BTreeSet<[Point; 4]> = brute_tetrahedra_grid(n, &collect())
                .unwrap()
                .items
                .unwrap()
                .into_iter()
                .collect();
            let tris: BTreeSet<[Point; 3]> = brute_triangles_grid(n, &collect())
                .unwrap()
                .items
                .unwrap()
                .into_iter()
                .collect();
            for s in 0..48 {
                let img: BTreeSet<[Point; 4]> = tets
                    .iter()
                    .map(|t| {
                        let mut v = t.map(|p| cube_symmetry(s, n as i64, p));
                        v.sort();
                        v
                    })
                    .collect();
                assert_eq!(img, tets, "n = {n}, symmetry {s}");
                let img: BTreeSet<[Point; 3]> = tris
                    .iter()
                    .map(|t| {
                        let mut v = t.map(|p| cube_symmetry(s, n as i64, p));
                        v.sort();
                        v
                    })
                    .collect();
                assert_eq!(img, tris, "n = {n}, symmetry {s}");
            }
        }
    }

    #[test]
    fn cube_symmetries_are_distinct() {
        let p = Point::new(0, 1, 3);
        let imgs: BTreeSet<Point> = (0..48).map(|s| cube_symmetry(s, 7, p)).collect();
        assert_eq!(imgs.len(), 48);
    }

    #[test]
    fn counts_monotone() {
        let mut last = GridCountRecord {
            n: 0,
            triangles: 0,
            tetrahedra: 0,
        };
        for n in 0..=4 {
            let r = grid_counts(n, &GridOptions::default()).unwrap();
            assert!(r.triangles >= last.triangles && r.tetrahedra >= last.tetrahedra);
            last = r;
        }
    }

    #[test]
    fn brute_t0_small() {
        assert_eq!(brute_t0_default(1).unwrap().len(), 8);
        assert_eq!(brute_t0_default(2).unwrap().len(), 8);
        assert!(brute_t0(2, 3).is_err());
    }

    #[test]
    fn compare_reports_both_directions() {
        let a: BTreeSet<i32> = [1, 2, 3].into();
        assert!(compare(&a, &a).is_empty());
        let mut b = a.clone();
        b.insert(4);
        let diff = compare(&a, &b);
        assert_eq!(diff.missing_from_parametrized, vec![4]);
        assert!(diff.extra_in_parametrized.is_empty());
        let diff = compare(&b, &a);
        assert_eq!(diff.extra_in_parametrized, vec![4]);
    }

    #[test]
    fn bfile_parsing() {
        let text = "# A sample\n\n0 0\n1 2\n2  7\n";
        let parsed = parse_bfile(text).unwrap();
        assert_eq!(parsed, BTreeMap::from([(0, 0), (1, 2), (2, 7)]));
        assert!(parse_bfile("1 2 3").is_err());
        assert!(parse_bfile("x 2").is_err());
    }

    #[test]
    fn bfile_offsets() {
        let computed = BTreeMap::from([(0, 0), (1, 8), (2, 11)]);
        // shifted by one: index i holds the count for grid side i - 1
        let shifted = BTreeMap::from([(1, 0), (2, 8), (3, 11)]);
        let [side, points] = compare_bfile(&computed, &shifted);
        assert!(!side.matches());
        assert!(points.matches());
        assert_eq!(points.compared, 3);
        let [side, _] = compare_bfile(&computed, &computed);
        assert!(side.matches());
    }
}
