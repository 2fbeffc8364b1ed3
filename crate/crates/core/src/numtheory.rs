//! Integer kernels: trial-division factorization, the Loeschian predicate,
//! the representation count for `m^2 - mn + n^2`, and the two quadratic-form
//! solvers the triangle parametrization needs (`s^2 + 3r^2 = 2q` and
//! `a^2 + b^2 + c^2 = 3d^2`).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{gcd, isqrt, Point};

/// Largest input accepted by [`factorize`]. Trial division up to the square
/// root stays around a million steps at this size.
pub const MAX_FACTOR_INPUT: u64 = 1_000_000_000_000;

/// Largest `d` accepted by [`solve_three_d2`]; keeps `3d^2` and every
/// downstream product comfortably inside `i64`.
pub const MAX_QUAD_D: u64 = 1_000_000;

/// Prime factorization with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

fn check_range(what: &'static str, value: u64, min: u64, max: u64) -> Result<()> {
    if value < min || value > max {
        return Err(Error::Range {
            what,
            value: value.into(),
            min: min.into(),
            max: max.into(),
        });
    }
    Ok(())
}

pub fn factorize(t: u64) -> Result<Factorization> {
    check_range("t", t, 1, MAX_FACTOR_INPUT)?;
    let mut rest = t;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { value: t, factors })
}

/// Whether `t = m^2 - mn + n^2` for some integers `m, n`.
///
/// Holds exactly when 2 and every prime `p = 5 (mod 6)` divide `t` to an even
/// power. `0` is representable as `(0, 0)`.
pub fn is_loeschian(t: u64) -> Result<bool> {
    if t == 0 {
        return Ok(true);
    }
    let f = factorize(t)?;
    Ok(f.factors
        .iter()
        .all(|&(p, e)| !(p == 2 || p % 6 == 5) || e % 2 == 0))
}

/// Number of ordered pairs `(m, n)` in Z^2 with `m^2 - mn + n^2 = k`.
///
/// Writing `k = 3^alpha * a^2 * b` with `b` the part built from primes
/// `1 (mod 6)`, this is `6 * prod(r_i + 1)` over the exponents of `b`, or zero
/// when 2 or some `5 (mod 6)` prime has an odd exponent.
pub fn count_representations(k: u64) -> Result<u64> {
    let f = factorize(k)?;
    let mut count = 6u64;
    for &(p, e) in &f.factors {
        match p % 3 {
            0 => {}
            1 => count *= u64::from(e) + 1,
            _ => {
                if e % 2 == 1 {
                    return Ok(0);
                }
            }
        }
    }
    Ok(count)
}

/// A solution of `s^2 + 3r^2 = 2q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RsPair {
    pub r: i64,
    pub s: i64,
    pub q: i64,
}

impl RsPair {
    pub fn new(r: i64, s: i64, q: i64) -> Result<Self> {
        let lhs = i128::from(s) * i128::from(s) + 3 * i128::from(r) * i128::from(r);
        if q < 1 || lhs != 2 * i128::from(q) {
            return Err(Error::Domain(format!(
                "(r, s) = ({r}, {s}) does not satisfy s^2 + 3r^2 = 2q for q = {q}"
            )));
        }
        Ok(RsPair { r, s, q })
    }

    fn sort_key(&self) -> (u64, i64, i64) {
        (self.r.unsigned_abs(), self.r, self.s)
    }
}

/// Every integer pair `(r, s)` with `s^2 + 3r^2 = 2q`, sorted by `(|r|, r, s)`.
pub fn solve_two_q(q: u64) -> Result<Vec<RsPair>> {
    check_range("q", q, 1, (i64::MAX / 4) as u64)?;
    let two_q = 2 * q;
    let qi = q as i64;
    let mut out = Vec::new();
    let rmax = isqrt(two_q / 3);
    for r in 0..=rmax {
        let rest = two_q - 3 * r * r;
        let s = isqrt(rest);
        if s * s != rest {
            continue;
        }
        let (r, s) = (r as i64, s as i64);
        for (rr, ss) in [(r, s), (r, -s), (-r, s), (-r, -s)] {
            let pair = RsPair {
                r: rr,
                s: ss,
                q: qi,
            };
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out.sort_by_key(RsPair::sort_key);
    Ok(out)
}

/// A primitive solution `(a, b, c, d)` of `a^2 + b^2 + c^2 = 3d^2`, `d > 0`.
///
/// `(a, b, c)` is the normal of a lattice plane carrying equilateral
/// triangles. Values returned by [`solve_three_d2`] have canonical sign (first
/// nonzero coordinate positive); face normals of a tetrahedron keep their
/// outward orientation instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NormalQuadruple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl NormalQuadruple {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let quad = NormalQuadruple { a, b, c, d };
        quad.validate()?;
        Ok(quad)
    }

    pub fn validate(&self) -> Result<()> {
        let NormalQuadruple { a, b, c, d } = *self;
        if d < 1 {
            return Err(Error::Domain(format!("d = {d} must be positive")));
        }
        let sq = |v: i64| i128::from(v) * i128::from(v);
        if sq(a) + sq(b) + sq(c) != 3 * sq(d) {
            return Err(Error::Domain(format!(
                "({a}, {b}, {c}, {d}) does not satisfy a^2 + b^2 + c^2 = 3d^2"
            )));
        }
        if self.normal().content() != 1 {
            return Err(Error::Domain(format!("({a}, {b}, {c}) is not primitive")));
        }
        Ok(())
    }

    /// `a^2 + b^2`.
    pub fn q(&self) -> i64 {
        self.a * self.a + self.b * self.b
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b, self.c)
    }

    pub fn negated(&self) -> Self {
        NormalQuadruple {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: self.d,
        }
    }

    pub fn is_canonical(&self) -> bool {
        [self.a, self.b, self.c]
            .into_iter()
            .find(|&v| v != 0)
            .is_some_and(|v| v > 0)
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            *self
        } else {
            self.negated()
        }
    }

    /// All numbers odd, each of `a, b, c` is `+-1 (mod 6)` and `q = 2 (mod 6)`.
    pub fn congruences_hold(&self) -> bool {
        let pm1 = |v: i64| matches!(v.rem_euclid(6), 1 | 5);
        self.d % 2 != 0 && pm1(self.a) && pm1(self.b) && pm1(self.c) && self.q().rem_euclid(6) == 2
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// All primitive quadruples with the given odd `d`, one per canonical
/// `(a, b, c)`, sorted lexicographically.
pub fn solve_three_d2(d: u64) -> Result<Vec<NormalQuadruple>> {
    check_range("d", d, 1, MAX_QUAD_D)?;
    if d.is_multiple_of(2) {
        return Err(Error::Domain(format!("d = {d} must be odd")));
    }
    let target = 3 * d * d;
    let mut found = BTreeSet::new();
    let mut a = 1u64;
    while 3 * a * a <= target {
        let mut b = a;
        while a * a + 2 * b * b <= target {
            let rest = target - a * a - b * b;
            let c = isqrt(rest);
            if c * c == rest && gcd(gcd(a, b), c) == 1 {
                let base = [a as i64, b as i64, c as i64];
                for perm in PERMUTATIONS {
                    for signs in 0..8u8 {
                        let v: Vec<i64> = (0..3)
                            .map(|i| {
                                if signs >> i & 1 == 1 {
                                    -base[perm[i]]
                                } else {
                                    base[perm[i]]
                                }
                            })
                            .collect();
                        let quad = NormalQuadruple {
                            a: v[0],
                            b: v[1],
                            c: v[2],
                            d: d as i64,
                        };
                        found.insert(quad.canonical());
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    Ok(found.into_iter().collect())
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
