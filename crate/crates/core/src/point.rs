//! Integer lattice points and the checked arithmetic everything else is built on.
//!
//! Every operation that can grow a value goes through `checked_*`; a wrap is
//! reported as [`Error::Overflow`] instead of silently corrupting a count.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

pub(crate) fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// `Some(r)` when `n == r * r`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// A point of Z^3. Ordering is lexicographic on (x, y, z), which is the
/// canonical vertex order used for deduplication and output.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Point { x, y, z }
    }

    pub fn checked_add(self, o: Point) -> Result<Point> {
        Ok(Point::new(
            add(self.x, o.x)?,
            add(self.y, o.y)?,
            add(self.z, o.z)?,
        ))
    }

    pub fn checked_sub(self, o: Point) -> Result<Point> {
        Ok(Point::new(
            sub(self.x, o.x)?,
            sub(self.y, o.y)?,
            sub(self.z, o.z)?,
        ))
    }

    pub fn checked_scale(self, k: i64) -> Result<Point> {
        Ok(Point::new(
            mul(self.x, k)?,
            mul(self.y, k)?,
            mul(self.z, k)?,
        ))
    }

    pub fn checked_neg(self) -> Result<Point> {
        self.checked_scale(-1)
    }

    pub fn dot(self, o: Point) -> Result<i64> {
        add(
            add(mul(self.x, o.x)?, mul(self.y, o.y)?)?,
            mul(self.z, o.z)?,
        )
    }

    pub fn cross(self, o: Point) -> Result<Point> {
        Ok(Point::new(
            sub(mul(self.y, o.z)?, mul(self.z, o.y)?)?,
            sub(mul(self.z, o.x)?, mul(self.x, o.z)?)?,
            sub(mul(self.x, o.y)?, mul(self.y, o.x)?)?,
        ))
    }

    pub fn norm_sq(self) -> Result<i64> {
        self.dot(self)
    }

    pub fn dist_sq(self, o: Point) -> Result<i64> {
        self.checked_sub(o)?.norm_sq()
    }

    pub fn is_origin(self) -> bool {
        self == Point::ORIGIN
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    /// Content of the point: gcd of the absolute coordinates.
    pub fn content(self) -> u64 {
        gcd(
            gcd(self.x.unsigned_abs(), self.y.unsigned_abs()),
            self.z.unsigned_abs(),
        )
    }
}

impl From<[i64; 3]> for Point {
    fn from(v: [i64; 3]) -> Self {
        Point::new(v[0], v[1], v[2])
    }
}

impl From<Point> for [i64; 3] {
    fn from(p: Point) -> Self {
        p.to_array()
    }
}

impl Index<usize> for Point {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Point index {i} out of range"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
    }

    #[test]
    fn overflow_is_reported() {
        let p = Point::new(i64::MAX, 0, 0);
        assert_eq!(p.norm_sq(), Err(Error::Overflow("multiplication")));
        assert!(p.checked_add(Point::new(1, 0, 0)).is_err());
    }

    #[test]
    fn cross_is_orthogonal() {
        let a = Point::new(376, -841, 2265);
        let b = Point::new(-1005, -2116, 701);
        let n = a.cross(b).unwrap();
        assert_eq!(n.dot(a).unwrap(), 0);
        assert_eq!(n.dot(b).unwrap(), 0);
    }

    #[test]
    fn serde_as_triple() {
        let p = Point::new(-1, 0, 1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[-1,0,1]");
        assert_eq!(serde_json::from_str::<Point>(&s).unwrap(), p);
    }
}
