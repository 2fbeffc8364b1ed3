//! Lattice equilateral triangles with a vertex at the origin.
//!
//! For a primitive normal `(a, b, c, d)` and a solution `(r, s)` of
//! `s^2 + 3r^2 = 2q`, `q = a^2 + b^2`, twelve integer coefficients turn any
//! `(m, n)` into two points `P`, `Q` such that `O, P, Q` is equilateral with
//! squared side `2 d^2 (m^2 - mn + n^2)` and lies in the plane `a x + b y + c z = 0`:
//!
//! ```text
//! P = (mu m - nu n, mv m - nv n, mw m - nw n)
//! Q = (mx m - nx n, my m - ny n, mz m - nz n)
//! ```

use serde::{Deserialize, Serialize};

use crate::eisenstein::{zeta, EisensteinPair};
use crate::error::{Error, Result};
use crate::numtheory::{solve_two_q, NormalQuadruple, RsPair};
use crate::point::{mul, narrow, sub, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoeffMatrix {
    pub quad: NormalQuadruple,
    pub rs: RsPair,
    pub mx: i64,
    pub nx: i64,
    pub my: i64,
    pub ny: i64,
    pub mz: i64,
    pub nz: i64,
    pub mu: i64,
    pub nu: i64,
    pub mv: i64,
    pub nv: i64,
    pub mw: i64,
    pub nw: i64,
}

impl CoeffMatrix {
    /// `(mu, mv, mw)`: the point `P` at `(m, n) = (1, 0)`.
    pub fn p_m(&self) -> Point {
        Point::new(self.mu, self.mv, self.mw)
    }

    /// `(nu, nv, nw)`: minus the point `P` at `(m, n) = (0, 1)`.
    pub fn p_n(&self) -> Point {
        Point::new(self.nu, self.nv, self.nw)
    }

    /// `(mx, my, mz)`: the point `Q` at `(m, n) = (1, 0)`.
    pub fn q_m(&self) -> Point {
        Point::new(self.mx, self.my, self.mz)
    }

    pub fn q_n(&self) -> Point {
        Point::new(self.nx, self.ny, self.nz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeTriangle {
    pub vertex_o: Point,
    pub vertex_p: Point,
    pub vertex_q: Point,
    pub side_sq: i64,
}

fn exact_div(num: i128, den: i128) -> Option<i128> {
    (num % den == 0).then(|| num / den)
}

/// Builds the coefficients for one specific `(r, s)`. Fails with
/// [`Error::Construction`] if any division leaves a remainder.
pub fn coeff_matrix_with(quad: NormalQuadruple, rs: RsPair) -> Result<CoeffMatrix> {
    quad.validate()?;
    if i128::from(rs.q) != i128::from(quad.q()) {
        return Err(Error::Domain(format!(
            "RsPair solves q = {} but the quadruple has q = {}",
            rs.q,
            quad.q()
        )));
    }
    let w = |v: i64| i128::from(v);
    let (a, b, c, d) = (w(quad.a), w(quad.b), w(quad.c), w(quad.d));
    let (r, s, q) = (w(rs.r), w(rs.s), w(rs.q));
    let reject = || Error::Construction {
        a: quad.a,
        b: quad.b,
        c: quad.c,
        d: quad.d,
    };

    let entries = (|| {
        let mx = exact_div(-(d * b * (3 * r + s) + a * c * (r - s)), 2 * q)?;
        let nx = exact_div(-(r * a * c + d * b * s), q)?;
        let my = exact_div(d * a * (3 * r + s) - b * c * (r - s), 2 * q)?;
        let ny = exact_div(d * a * s - b * c * r, q)?;
        let mz = exact_div(r - s, 2)?;
        let nz = r;
        let mu = nx;
        let nu = exact_div(-(d * b * (s - 3 * r) + a * c * (r + s)), 2 * q)?;
        let mv = ny;
        let nv = exact_div(d * a * (s - 3 * r) - b * c * (r + s), 2 * q)?;
        let mw = r;
        let nw = exact_div(r + s, 2)?;
        Some([mx, nx, my, ny, mz, nz, mu, nu, mv, nv, mw, nw])
    })()
    .ok_or_else(reject)?;

    let mut n = [0i64; 12];
    for (slot, v) in n.iter_mut().zip(entries) {
        *slot = narrow(v, "coefficient matrix")?;
    }
    let [mx, nx, my, ny, mz, nz, mu, nu, mv, nv, mw, nw] = n;
    Ok(CoeffMatrix {
        quad,
        rs,
        mx,
        nx,
        my,
        ny,
        mz,
        nz,
        mu,
        nu,
        mv,
        nv,
        mw,
        nw,
    })
}

/// The coefficient matrix for the first `(r, s)` (in `solve_two_q` order)
/// that makes every coefficient an integer.
pub fn coeff_matrix(quad: NormalQuadruple) -> Result<CoeffMatrix> {
    quad.validate()?;
    let q = u64::try_from(quad.q()).map_err(|_| Error::Overflow("q"))?;
    for rs in solve_two_q(q)? {
        match coeff_matrix_with(quad, rs) {
            Ok(cm) => return Ok(cm),
            Err(Error::Construction { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Construction {
        a: quad.a,
        b: quad.b,
        c: quad.c,
        d: quad.d,
    })
}

fn combine(gm: Point, gn: Point, m: i64, n: i64) -> Result<Point> {
    gm.checked_scale(m)?.checked_sub(gn.checked_scale(n)?)
}

/// The raw points `(P, Q)` for `(m, n)`, without verification.
pub fn generator_points(cm: &CoeffMatrix, m: i64, n: i64) -> Result<(Point, Point)> {
    Ok((
        combine(cm.p_m(), cm.p_n(), m, n)?,
        combine(cm.q_m(), cm.q_n(), m, n)?,
    ))
}

pub fn triangle_points(cm: &CoeffMatrix, m: i64, n: i64) -> Result<LatticeTriangle> {
    if m == 0 && n == 0 {
        return Err(Error::Degenerate(
            "(m, n) = (0, 0) collapses the triangle to the origin".into(),
        ));
    }
    let (p, q) = generator_points(cm, m, n)?;
    let side_sq = verify_equilateral(p, q)?;
    let d = cm.quad.d;
    let expected = mul(mul(2, mul(d, d)?)?, zeta(EisensteinPair::new(m, n))?)?;
    if side_sq != expected {
        return Err(Error::Internal(format!(
            "triangle for (m, n) = ({m}, {n}) has side^2 {side_sq}, expected 2 d^2 zeta = {expected}"
        )));
    }
    Ok(LatticeTriangle {
        vertex_o: Point::ORIGIN,
        vertex_p: p,
        vertex_q: q,
        side_sq,
    })
}

/// Checks that `O, P, Q` is a nondegenerate equilateral triangle and returns
/// its squared side.
pub fn verify_equilateral(p: Point, q: Point) -> Result<i64> {
    let op = p.norm_sq()?;
    let oq = q.norm_sq()?;
    let pq = p.dist_sq(q)?;
    if op == 0 || oq == 0 || pq == 0 {
        return Err(Error::Degenerate(format!(
            "triangle O, {p}, {q} has a repeated vertex"
        )));
    }
    if op != oq {
        return Err(Error::Verification(format!(
            "|P|^2 = {op} but |Q|^2 = {oq}"
        )));
    }
    if op != pq {
        return Err(Error::Verification(format!(
            "|P-Q|^2 = {pq} but |P|^2 = {op}"
        )));
    }
    Ok(op)
}

/// Whether the point lies in the plane through the origin normal to `quad`.
pub fn in_plane(quad: &NormalQuadruple, p: Point) -> Result<bool> {
    Ok(quad.normal().dot(p)? == 0)
}

/// Exact `(m, n)` with `generator_points(cm, m, n).0 == p`, if any.
pub fn lattice_coords(cm: &CoeffMatrix, p: Point) -> Result<Option<(i64, i64)>> {
    // p = m g1 - n g2; cross with g2 and g1 to isolate each coordinate
    let g1 = cm.p_m();
    let g2 = cm.p_n();
    let area = g1.cross(g2)?;
    let area_sq = area.norm_sq()?;
    if area_sq == 0 {
        return Err(Error::Internal(
            "coefficient generators are parallel".into(),
        ));
    }
    let m_num = p.cross(g2)?.dot(area)?;
    let n_num = sub(0, g1.cross(p)?.dot(area)?)?;
    if m_num % area_sq != 0 || n_num % area_sq != 0 {
        return Ok(None);
    }
    let (m, n) = (m_num / area_sq, n_num / area_sq);
    Ok((combine(g1, g2, m, n)? == p).then_some((m, n)))
}
