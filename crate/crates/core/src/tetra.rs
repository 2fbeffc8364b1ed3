//! Regular tetrahedra with integer vertices.
//!
//! A lattice equilateral triangle `O, P, Q` in the plane normal to `(a, b, c)`
//! with `zeta(m, n) = k^2` has two candidate apexes
//!
//! ```text
//! R = (P + Q +- 2k (a, b, c)) / 3
//! ```
//!
//! Both are integral when `3 | k`; otherwise exactly one is. Every tetrahedron
//! with the origin as a vertex and side `l sqrt(2)` arises this way from some
//! odd divisor `d` of `l`, some plane with that `d`, and some `(m, n)` in
//! `Omega(l / d)`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{omega, zeta, EisensteinPair};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, solve_three_d2, NormalQuadruple};
use crate::point::{exact_sqrt, gcd, mul, Point};
use crate::triangle::{coeff_matrix, generator_points, CoeffMatrix};

/// Four lattice points in lexicographic order with all six squared
/// distances equal to `side_sq = 2 ell^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeTetrahedron {
    pub vertices: [Point; 4],
    pub side_sq: i64,
    pub ell: i64,
}

impl LatticeTetrahedron {
    /// Verifies the four points and stores them in canonical order.
    pub fn new(mut vertices: [Point; 4]) -> Result<Self> {
        let side_sq = verify_regular(&vertices)?;
        let ell = exact_sqrt((side_sq / 2) as u64)
            .filter(|_| side_sq % 2 == 0)
            .ok_or_else(|| {
                Error::Verification(format!("side^2 = {side_sq} is not of the form 2 l^2"))
            })?;
        vertices.sort();
        Ok(LatticeTetrahedron {
            vertices,
            side_sq,
            ell: ell as i64,
        })
    }

    pub fn contains(&self, p: Point) -> bool {
        self.vertices.contains(&p)
    }

    /// The same tetrahedron translated so that `vertices[i]` is the origin.
    pub fn translated_to(&self, i: usize) -> Result<Self> {
        let base = self.vertices[i];
        let mut v = self.vertices;
        for p in v.iter_mut() {
            *p = p.checked_sub(base)?;
        }
        LatticeTetrahedron::new(v)
    }
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Returns the common squared side if the points form a regular tetrahedron.
pub fn verify_regular(p: &[Point; 4]) -> Result<i64> {
    let side = p[0].dist_sq(p[1])?;
    for (i, j) in PAIRS {
        let dij = p[i].dist_sq(p[j])?;
        if dij == 0 {
            return Err(Error::Degenerate(format!(
                "vertices {i} and {j} coincide at {}",
                p[i]
            )));
        }
        if dij != side {
            return Err(Error::Verification(format!(
                "|p{i} - p{j}|^2 = {dij} differs from |p0 - p1|^2 = {side}"
            )));
        }
    }
    Ok(side)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn factor(self) -> i64 {
        match self {
            Side::Plus => 1,
            Side::Minus => -1,
        }
    }
}

/// Generation data for one tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub d: i64,
    pub quad: NormalQuadruple,
    pub r: i64,
    pub s: i64,
    pub m: i64,
    pub n: i64,
    pub k: i64,
    pub sign: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub apex: Point,
    pub tetra: LatticeTetrahedron,
    pub provenance: Provenance,
}

/// Completes the face `O, P(m, n), Q(m, n)` of `cm` to every regular
/// tetrahedron with an integral fourth vertex. Requires `zeta(m, n)` to be a
/// nonzero perfect square.
pub fn complete_tetrahedron(cm: &CoeffMatrix, m: i64, n: i64) -> Result<Vec<Completion>> {
    let z = zeta(EisensteinPair::new(m, n))?;
    let k = exact_sqrt(z as u64).filter(|&k| k > 0).ok_or_else(|| {
        Error::Precondition(format!(
            "zeta({m}, {n}) = {z} is not a nonzero perfect square"
        ))
    })? as i64;
    let quad = cm.quad;
    let (p, q) = generator_points(cm, m, n)?;
    let sum = p.checked_add(q)?;
    let shift = quad.normal().checked_scale(mul(2, k)?)?;
    let expected_side = mul(2, mul(mul(quad.d, quad.d)?, mul(k, k)?)?)?;

    let mut out = Vec::with_capacity(2);
    for sign in [Side::Plus, Side::Minus] {
        let num = sum.checked_add(shift.checked_scale(sign.factor())?)?;
        if num.x % 3 != 0 || num.y % 3 != 0 || num.z % 3 != 0 {
            continue;
        }
        let apex = Point::new(num.x / 3, num.y / 3, num.z / 3);
        let tetra = LatticeTetrahedron::new([Point::ORIGIN, p, q, apex]).map_err(|e| {
            Error::Internal(format!(
                "completion of ({m}, {n}) over {quad:?} failed: {e}"
            ))
        })?;
        if tetra.side_sq != expected_side {
            return Err(Error::Internal(format!(
                "completion side^2 {} != 2 d^2 k^2 = {expected_side}",
                tetra.side_sq
            )));
        }
        let provenance = Provenance {
            d: quad.d,
            quad,
            r: cm.rs.r,
            s: cm.rs.s,
            m,
            n,
            k,
            sign,
        };
        out.push(Completion {
            apex,
            tetra,
            provenance,
        });
    }
    Ok(out)
}

/// `T_ell^0` with, for each tetrahedron, the smallest generating provenance.
pub fn enumerate_t0_detailed(ell: u64) -> Result<BTreeMap<LatticeTetrahedron, Provenance>> {
    if ell == 0 {
        return Err(Error::Domain("ell must be positive".into()));
    }
    let jobs: Vec<(u64, NormalQuadruple)> = divisors(ell)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| Ok(solve_three_d2(d)?.into_iter().map(move |q| (d, q))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let partial: Vec<BTreeMap<LatticeTetrahedron, Provenance>> = jobs
        .par_iter()
        .map(|&(d, quad)| {
            let cm = coeff_matrix(quad)?;
            let mut found = BTreeMap::new();
            for pair in omega(ell / d)? {
                for c in complete_tetrahedron(&cm, pair.m, pair.n)? {
                    found
                        .entry(c.tetra)
                        .and_modify(|p: &mut Provenance| *p = (*p).min(c.provenance))
                        .or_insert(c.provenance);
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;

    let mut merged = BTreeMap::new();
    for part in partial {
        for (t, p) in part {
            merged
                .entry(t)
                .and_modify(|old: &mut Provenance| *old = (*old).min(p))
                .or_insert(p);
        }
    }
    Ok(merged)
}

/// All regular tetrahedra with side `ell sqrt(2)` having the origin as a vertex.
pub fn enumerate_t0(ell: u64) -> Result<BTreeSet<LatticeTetrahedron>> {
    Ok(enumerate_t0_detailed(ell)?.into_keys().collect())
}

/// Outward face normals; `faces[i]` is the face opposite `vertices[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceNormalSet {
    pub faces: [NormalQuadruple; 4],
}

pub fn face_normals(t: &LatticeTetrahedron) -> Result<FaceNormalSet> {
    let v = t.vertices;
    let mut faces = [NormalQuadruple {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
    }; 4];
    for (i, face) in faces.iter_mut().enumerate() {
        let others: Vec<Point> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
        let e1 = others[1].checked_sub(others[0])?;
        let e2 = others[2].checked_sub(others[0])?;
        let mut nrm = e1.cross(e2)?;
        let content = nrm.content();
        if content == 0 {
            return Err(Error::Internal(format!("face {i} of {t:?} is degenerate")));
        }
        let content = content as i64;
        nrm = Point::new(nrm.x / content, nrm.y / content, nrm.z / content);
        if nrm.dot(v[i].checked_sub(others[0])?)? > 0 {
            nrm = nrm.checked_neg()?;
        }
        let norm_sq = nrm.norm_sq()?;
        let d = exact_sqrt((norm_sq / 3) as u64)
            .filter(|_| norm_sq % 3 == 0)
            .ok_or_else(|| {
                Error::Internal(format!(
                    "face normal {nrm} has |n|^2 = {norm_sq}, not 3 d^2"
                ))
            })?;
        *face = NormalQuadruple::new(nrm.x, nrm.y, nrm.z, d as i64)?;
    }
    Ok(FaceNormalSet { faces })
}

/// Whether the matrix with rows `(a_i/d_i, b_i/d_i, c_i/d_i, 1) / 2` is
/// orthogonal, checked exactly on both `M M^T` and `M^T M`.
pub fn verify_orthogonality(f: &FaceNormalSet) -> bool {
    orthogonality(f).unwrap_or(false)
}

fn orthogonality(f: &FaceNormalSet) -> Option<bool> {
    let rows: Vec<[i128; 4]> = f
        .faces
        .iter()
        .map(|q| [q.a, q.b, q.c, q.d].map(i128::from))
        .collect();
    if rows.iter().any(|r| r[3] <= 0) {
        return Some(false);
    }

    // (M M^T)_ij = sum_p x_ip x_jp / (4 d_i d_j)
    for i in 0..4 {
        for j in i..4 {
            let mut dot = 0i128;
            for (x, y) in rows[i].iter().zip(&rows[j]) {
                dot = dot.checked_add(x.checked_mul(*y)?)?;
            }
            let want = if i == j {
                4 * rows[i][3] * rows[j][3]
            } else {
                0
            };
            if dot != want {
                return Some(false);
            }
        }
    }

    // (M^T M)_pq = sum_i x_ip x_iq / (4 d_i^2), scaled by L = lcm(d_i^2)
    let mut lcm = 1i128;
    for r in &rows {
        let d2 = r[3] * r[3];
        let g = gcd(lcm as u64, d2 as u64) as i128;
        lcm = lcm.checked_mul(d2 / g)?;
    }
    for p in 0..4 {
        for q in p..4 {
            let mut sum = 0i128;
            for r in &rows {
                let w = lcm / (r[3] * r[3]);
                sum = sum.checked_add(r[p].checked_mul(r[q])?.checked_mul(w)?)?;
            }
            let want = if p == q { lcm.checked_mul(4)? } else { 0 };
            if sum != want {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// A pair of vectors with `|u|^2 = |v|^2 = 3d^2` and `u . v = -d^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollarySolution {
    pub d: i64,
    pub first: Point,
    pub second: Point,
    /// The tetrahedron the pair was read from.
    pub tetra: LatticeTetrahedron,
}

impl CorollarySolution {
    pub fn check(&self) -> Result<bool> {
        let three_d2 = mul(3, mul(self.d, self.d)?)?;
        Ok(self.first.norm_sq()? == three_d2
            && self.second.norm_sq()? == three_d2
            && self.first.dot(self.second)? == -mul(self.d, self.d)?)
    }
}

/// Builds a nontrivial solution of `a^2+b^2+c^2 = a'^2+b'^2+c'^2 = 3d^2`,
/// `aa' + bb' + cc' = -d^2` for odd `d > 1`: complete the `(m, n) = (1, 1)`
/// triangle over a primitive plane for `d`, then take the outward normal of
/// the base face and an adjacent outward normal rescaled to the same `d`.
pub fn corollary_solution(d: u64) -> Result<CorollarySolution> {
    if d <= 1 || d.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "d = {d} must be odd and greater than 1"
        )));
    }
    let quad = *solve_three_d2(d)?
        .first()
        .ok_or_else(|| Error::Internal(format!("no primitive quadruple for d = {d}")))?;
    let cm = coeff_matrix(quad)?;
    let completion = complete_tetrahedron(&cm, 1, 1)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("no integral completion over {quad:?}")))?;
    let tetra = completion.tetra;
    let normals = face_normals(&tetra)?;
    let base_idx = tetra
        .vertices
        .iter()
        .position(|&v| v == completion.apex)
        .ok_or_else(|| Error::Internal("apex missing from its tetrahedron".into()))?;
    let base = normals.faces[base_idx];
    if base.d != quad.d {
        return Err(Error::Internal(format!(
            "base face has d = {}, expected {}",
            base.d, quad.d
        )));
    }
    let adj_idx = (base_idx + 1) % 4;
    let adj = normals.faces[adj_idx];
    if quad.d % adj.d != 0 {
        return Err(Error::Internal(format!(
            "adjacent d = {} does not divide {}",
            adj.d, quad.d
        )));
    }
    let sol = CorollarySolution {
        d: quad.d,
        first: base.normal(),
        second: adj.normal().checked_scale(quad.d / adj.d)?,
        tetra,
    };
    if !sol.check()? {
        return Err(Error::Internal(format!(
            "constructed pair {sol:?} fails the system"
        )));
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::RsPair;
    use crate::triangle::coeff_matrix_with;

    fn p(x: i64, y: i64, z: i64) -> Point {
        Point::new(x, y, z)
    }

    fn unit_quad() -> NormalQuadruple {
        NormalQuadruple::new(1, 1, 1, 1).unwrap()
    }

    fn unit_11() -> CoeffMatrix {
        coeff_matrix_with(unit_quad(), RsPair::new(1, 1, 2).unwrap()).unwrap()
    }

    fn worked_tetra() -> [Point; 4] {
        [
            Point::ORIGIN,
            p(376, -841, 2265),
            p(-1005, -2116, 701),
            p(1411, -1965, 356),
        ]
    }

    #[test]
    fn completion_unit_face() {
        let c = complete_tetrahedron(&unit_11(), 1, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].apex, p(0, 1, 1));
        assert_eq!(c[0].provenance.sign, Side::Plus);
        let mut want = [Point::ORIGIN, p(-1, 0, 1), p(-1, 1, 0), p(0, 1, 1)];
        want.sort();
        assert_eq!(c[0].tetra.vertices, want);
        assert_eq!(c[0].tetra.side_sq, 2);
    }

    #[test]
    fn completion_k_multiple_of_three() {
        let c = complete_tetrahedron(&unit_11(), 3, 0).unwrap();
        let apexes: Vec<Point> = c.iter().map(|x| x.apex).collect();
        assert_eq!(apexes, vec![p(0, 3, 3), p(-4, -1, -1)]);
        assert!(c.iter().all(|x| x.tetra.side_sq == 18));
    }

    #[test]
    fn completion_requires_square_zeta() {
        assert!(matches!(
            complete_tetrahedron(&unit_11(), 2, 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            complete_tetrahedron(&unit_11(), 0, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verify_regular_examples() {
        assert_eq!(
            verify_regular(&[Point::ORIGIN, p(-1, 0, 1), p(-1, 1, 0), p(0, 1, 1)]),
            Ok(2)
        );
        assert_eq!(verify_regular(&worked_tetra()), Ok(5_978_882));
        assert_eq!(5_978_882, 2 * 1729 * 1729);
        let err = verify_regular(&[Point::ORIGIN, p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]).unwrap_err();
        assert!(matches!(err, Error::Verification(ref m) if m.contains("p1 - p2")));
        let err =
            verify_regular(&[Point::ORIGIN, Point::ORIGIN, p(0, 1, 0), p(0, 0, 1)]).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_t0(1).unwrap().len(), 8);
        let two = enumerate_t0(2).unwrap();
        assert_eq!(two.len(), 8);
        let scaled: BTreeSet<LatticeTetrahedron> = enumerate_t0(1)
            .unwrap()
            .iter()
            .map(|t| {
                LatticeTetrahedron::new(t.vertices.map(|v| v.checked_scale(2).unwrap())).unwrap()
            })
            .collect();
        assert_eq!(two, scaled);
        assert!(enumerate_t0(0).is_err());
    }

    #[test]
    fn unit_face_normals() {
        let t =
            LatticeTetrahedron::new([Point::ORIGIN, p(-1, 0, 1), p(-1, 1, 0), p(0, 1, 1)]).unwrap();
        let f = face_normals(&t).unwrap();
        let mut got: Vec<Point> = f.faces.iter().map(|q| q.canonical().normal()).collect();
        got.sort();
        let mut want: Vec<Point> = [p(1, 1, 1), p(-1, 1, -1), p(1, 1, -1), p(-1, 1, 1)]
            .iter()
            .map(|&v| {
                NormalQuadruple::new(v.x, v.y, v.z, 1)
                    .unwrap()
                    .canonical()
                    .normal()
            })
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert!(f.faces.iter().all(|q| q.d == 1));
        assert!(verify_orthogonality(&f));
    }

    #[test]
    fn outward_normals_sum_to_zero() {
        for ell in 1..=3 {
            for t in enumerate_t0(ell).unwrap() {
                let f = face_normals(&t).unwrap();
                // sum of n_i / d_i; scale by lcm of d_i to stay integral
                let l = f.faces.iter().fold(1i64, |acc, q| {
                    acc / gcd(acc as u64, q.d as u64) as i64 * q.d
                });
                let mut s = Point::ORIGIN;
                for q in &f.faces {
                    s = s
                        .checked_add(q.normal().checked_scale(l / q.d).unwrap())
                        .unwrap();
                }
                assert!(s.is_origin());
            }
        }
    }

    #[test]
    fn worked_face_normals() {
        let t = LatticeTetrahedron::new(worked_tetra()).unwrap();
        let f = face_normals(&t).unwrap();
        let mut ds: Vec<i64> = f.faces.iter().map(|q| q.d).collect();
        ds.sort();
        assert_eq!(ds, vec![91, 133, 247, 1729]);
        for (v, d) in [
            (p(-187, 113, 73), 133),
            (p(-343, -253, -37), 247),
            (p(19, 41, 151), 91),
            (p(391, -2461, 1661), 1729),
        ] {
            let q = f.faces.iter().find(|q| q.d == d).unwrap();
            assert!(q.normal().cross(v).unwrap().is_origin(), "d = {d}");
        }
        assert!(verify_orthogonality(&f));
        // outward orientation: (-187, 113, 73) and (343, 253, 37)
        let faces: BTreeMap<i64, NormalQuadruple> = f.faces.iter().map(|q| (q.d, *q)).collect();
        assert_eq!(faces[&133].normal(), p(-187, 113, 73));
        assert_eq!(faces[&247].normal(), p(343, 253, 37));
        assert_eq!((-187) * 343 + 113 * 253 + 73 * 37 + 133 * 247, 0);
    }

    #[test]
    fn perturbed_normals_fail() {
        let t = LatticeTetrahedron::new(worked_tetra()).unwrap();
        let f = face_normals(&t).unwrap();
        for i in 0..4 {
            for field in 0..4 {
                let mut g = f;
                let q = &mut g.faces[i];
                match field {
                    0 => q.a += 1,
                    1 => q.b += 1,
                    2 => q.c += 1,
                    _ => q.d += 1,
                }
                assert!(!verify_orthogonality(&g));
            }
        }
    }

    #[test]
    fn corollary_trivial_pattern_satisfies_system() {
        let sol = CorollarySolution {
            d: 3,
            first: p(3, 3, 3),
            second: p(-3, -3, 3),
            tetra: LatticeTetrahedron::new([Point::ORIGIN, p(-1, 0, 1), p(-1, 1, 0), p(0, 1, 1)])
                .unwrap(),
        };
        assert!(sol.check().unwrap());
        // the printed variant with c' = -d does not
        assert!(!CorollarySolution {
            second: p(-3, -3, -3),
            ..sol
        }
        .check()
        .unwrap());
    }

    #[test]
    fn corollary_construction() {
        for d in [3u64, 5, 7, 9, 133] {
            let sol = corollary_solution(d).unwrap();
            assert!(sol.check().unwrap());
            assert_eq!(sol.d, d as i64);
            let dd = d as i64;
            let f = sol.first;
            assert!(!(f.x.abs() == dd && f.y.abs() == dd && f.z.abs() == dd));
        }
        assert!(corollary_solution(1).is_err());
        assert!(corollary_solution(4).is_err());
    }

    #[test]
    fn tessellation_alternates_sides() {
        let cm = coeff_matrix(unit_quad()).unwrap();
        let nrm = cm.quad.normal();
        let g1 = generator_points(&cm, 1, 0).unwrap().0;
        let g2 = generator_points(&cm, 0, 1).unwrap().0;
        assert_eq!(g1.dist_sq(g2).unwrap(), 6, "generators at 120 degrees");
        let at = |i: i64, j: i64| {
            g1.checked_scale(i)
                .unwrap()
                .checked_add(g2.checked_scale(j).unwrap())
                .unwrap()
        };
        // which side of the tile's plane holds its integral apex
        let side = |tri: [Point; 3]| -> i64 {
            let sum = tri[0]
                .checked_add(tri[1])
                .unwrap()
                .checked_add(tri[2])
                .unwrap();
            let mut sides = vec![];
            for sgn in [1i64, -1] {
                let num = sum
                    .checked_add(nrm.checked_scale(2 * sgn).unwrap())
                    .unwrap();
                if num.x % 3 == 0 && num.y % 3 == 0 && num.z % 3 == 0 {
                    let apex = Point::new(num.x / 3, num.y / 3, num.z / 3);
                    verify_regular(&[tri[0], tri[1], tri[2], apex]).unwrap();
                    sides.push(sgn);
                }
            }
            assert_eq!(sides.len(), 1);
            sides[0]
        };
        for i in -3..=3 {
            for j in -3..=3 {
                let up = side([at(i, j), at(i + 1, j), at(i + 1, j + 1)]);
                let down = side([at(i, j), at(i + 1, j + 1), at(i, j + 1)]);
                let next_up = side([at(i + 1, j), at(i + 2, j), at(i + 2, j + 1)]);
                assert_eq!(up, -down);
                assert_eq!(up, next_up);
            }
        }
    }
}
