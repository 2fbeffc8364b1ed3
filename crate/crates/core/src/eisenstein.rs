//! The form `zeta(m, n) = m^2 - mn + n^2`, its solution sets `Omega(k)`, the
//! order-12 symmetry group of the form, and primitive Eisenstein triples.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{add, gcd, isqrt, mul, sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EisensteinPair {
    pub m: i64,
    pub n: i64,
}

impl EisensteinPair {
    pub const fn new(m: i64, n: i64) -> Self {
        EisensteinPair { m, n }
    }

    /// `(m, n) -> (m - n, m)`: rotation by 60 degrees in the hexagonal lattice.
    pub fn rotate(self) -> Result<Self> {
        Ok(EisensteinPair::new(sub(self.m, self.n)?, self.m))
    }

    /// `(m, n) -> (n, m)`.
    pub fn swap(self) -> Self {
        EisensteinPair::new(self.n, self.m)
    }
}

/// `(m, n, k)` with `m^2 - mn + n^2 = k^2`. `generator` records the `(u, v)`
/// and form index that produced the triple, when it came from the
/// parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EisensteinTriple {
    pub m: i64,
    pub n: i64,
    pub k: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<Generator>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub form: u8,
    pub u: i64,
    pub v: i64,
}

impl EisensteinTriple {
    pub fn is_primitive(&self) -> bool {
        gcd(self.m.unsigned_abs(), self.n.unsigned_abs()) == 1
    }

    fn key(&self) -> (i64, i64, i64) {
        (self.k, self.m, self.n)
    }
}

pub fn zeta(p: EisensteinPair) -> Result<i64> {
    let EisensteinPair { m, n } = p;
    add(sub(mul(m, m)?, mul(m, n)?)?, mul(n, n)?)
}

/// All `(m, n)` in Z^2 with `zeta(m, n) = k^2`.
///
/// For each `m` with `|m| <= 2k/sqrt(3)` the quadratic in `n` is solved
/// exactly, so no candidate in the bounding box is skipped.
pub fn omega(k: u64) -> Result<BTreeSet<EisensteinPair>> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let k = i64::try_from(k).map_err(|_| Error::Overflow("omega"))?;
    // zeta(m, n) = k^2  <=>  (2n - m)^2 = 4k^2 - 3m^2
    let four_k2 = mul(4, mul(k, k)?)?;
    let bound = isqrt((four_k2 / 3) as u64) as i64 + 1;
    let mut out = BTreeSet::new();
    for m in -bound..=bound {
        let disc = four_k2 - 3 * m * m;
        if disc < 0 {
            continue;
        }
        let root = isqrt(disc as u64) as i64;
        if root * root != disc {
            continue;
        }
        for t in [m + root, m - root] {
            if t % 2 == 0 {
                out.insert(EisensteinPair::new(m, t / 2));
            }
        }
    }
    Ok(out)
}

/// Orbit of `p` under the group generated by `(m, n) -> (m - n, m)` and
/// `(m, n) -> (n, m)`. The group has order 12 and preserves `zeta`.
pub fn tau_orbit(p: EisensteinPair) -> Result<BTreeSet<EisensteinPair>> {
    let mut orbit = BTreeSet::new();
    let mut cur = p;
    for _ in 0..6 {
        orbit.insert(cur);
        orbit.insert(cur.swap());
        cur = cur.rotate()?;
    }
    Ok(orbit)
}

/// Primitive triples with `1 <= k <= kmax` and `m, n > 0`, from the two
/// `(u, v)` forms, restricted to `gcd(u, v) = 1` and `u + v != 0 (mod 3)`.
/// Sorted by `(k, m, n)`; where both forms give the same triple the first
/// generator found is kept.
pub fn primitive_triples(kmax: u64) -> Result<Vec<EisensteinTriple>> {
    if kmax == 0 {
        return Err(Error::Domain("kmax must be positive".into()));
    }
    let kmax = i64::try_from(kmax).map_err(|_| Error::Overflow("primitive_triples"))?;
    // u^2 - uv + v^2 >= 3/4 max(u, v)^2
    let limit = isqrt((mul(4, kmax)? / 3) as u64) as i64 + 1;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for u in 1..=limit {
        for v in 1..=limit {
            if gcd(u as u64, v as u64) != 1 || (u + v) % 3 == 0 {
                continue;
            }
            let k = u * u - u * v + v * v;
            if k > kmax {
                continue;
            }
            let mut push = |form: u8, m: i64, n: i64| {
                if seen.insert((k, m, n)) {
                    out.push(EisensteinTriple {
                        m,
                        n,
                        k,
                        generator: Some(Generator { form, u, v }),
                    });
                }
            };
            if v > u {
                push(1, v * v - u * u, 2 * u * v - u * u);
            }
            if 2 * v > u && 2 * u > v {
                push(2, 2 * u * v - u * u, 2 * u * v - v * v);
            }
        }
    }
    out.sort_by_key(EisensteinTriple::key);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::count_representations;
    use proptest::prelude::*;

    fn pairs(v: &[(i64, i64)]) -> BTreeSet<EisensteinPair> {
        v.iter().map(|&(m, n)| EisensteinPair::new(m, n)).collect()
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta(EisensteinPair::new(8, 3)).unwrap(), 49);
        assert_eq!(zeta(EisensteinPair::new(1, 0)).unwrap(), 1);
        assert_eq!(zeta(EisensteinPair::new(2, 1)).unwrap(), 3);
        assert!(zeta(EisensteinPair::new(i64::MAX, 1)).is_err());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega(1).unwrap(),
            pairs(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
        );
        assert_eq!(
            omega(2).unwrap(),
            pairs(&[(2, 0), (2, 2), (0, 2), (-2, 0), (-2, -2), (0, -2)])
        );
        let seven = omega(7).unwrap();
        assert_eq!(seven.len(), 18);
        assert!(seven.contains(&EisensteinPair::new(8, 3)));
        assert!(seven.is_superset(&pairs(&[
            (7, 0),
            (7, 7),
            (0, 7),
            (-7, 0),
            (-7, -7),
            (0, -7)
        ])));
        assert!(omega(0).is_err());
    }

    #[test]
    fn omega_matches_box_scan() {
        for k in 1..=40i64 {
            let b = (2.0 * k as f64 / 3f64.sqrt()).ceil() as i64 + 1;
            let mut brute = BTreeSet::new();
            for m in -b..=b {
                for n in -b..=b {
                    if m * m - m * n + n * n == k * k {
                        brute.insert(EisensteinPair::new(m, n));
                    }
                }
            }
            assert_eq!(omega(k as u64).unwrap(), brute, "k = {k}");
        }
    }

    #[test]
    fn orbit_examples() {
        let o = tau_orbit(EisensteinPair::new(8, 3)).unwrap();
        assert_eq!(
            o,
            pairs(&[
                (8, 3),
                (5, 8),
                (-3, 5),
                (-8, -3),
                (-5, -8),
                (3, -5),
                (3, 8),
                (-5, 3),
                (-8, -5),
                (-3, -8),
                (5, -3),
                (8, 5),
            ])
        );
        assert_eq!(
            tau_orbit(EisensteinPair::new(1, 0)).unwrap(),
            pairs(&[(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
        );
        assert_eq!(
            tau_orbit(EisensteinPair::new(0, 0)).unwrap(),
            pairs(&[(0, 0)])
        );
    }

    #[test]
    fn printed_second_map_does_not_preserve_zeta() {
        // (m, n) -> (m, n - m) applied to (8, 3)
        assert_eq!(zeta(EisensteinPair::new(8, -5)).unwrap(), 129);
    }

    #[test]
    fn triples_examples() {
        let t = primitive_triples(7).unwrap();
        let has = |m, n, k| t.iter().any(|x| (x.m, x.n, x.k) == (m, n, k));
        assert!(has(8, 5, 7));
        assert!(has(3, 8, 7));
        assert!(has(8, 3, 7));
        assert!(has(5, 8, 7));
        assert!(has(1, 1, 1));
        let five_eight = t.iter().find(|x| (x.m, x.n) == (8, 5)).unwrap();
        assert_eq!(
            five_eight.generator,
            Some(Generator {
                form: 1,
                u: 1,
                v: 3
            })
        );
        for x in &t {
            assert!(x.is_primitive());
            assert_eq!(x.m * x.m - x.m * x.n + x.n * x.n, x.k * x.k);
        }
        assert!(t.windows(2).all(|w| w[0].key() < w[1].key()));
    }

    #[test]
    fn omega_closed_and_counted() {
        for k in 1..=60u64 {
            let om = omega(k).unwrap();
            assert_eq!(om.len() as u64, count_representations(k * k).unwrap());
            for p in &om {
                assert!(tau_orbit(*p).unwrap().is_subset(&om));
            }
        }
    }

    proptest! {
        #[test]
        fn orbit_preserves_zeta(m in -10_000i64..10_000, n in -10_000i64..10_000) {
            let p = EisensteinPair::new(m, n);
            let z = zeta(p).unwrap();
            let orbit = tau_orbit(p).unwrap();
            prop_assert_eq!(12 % orbit.len(), 0);
            for q in orbit {
                prop_assert_eq!(zeta(q).unwrap(), z);
            }
        }
    }
}
