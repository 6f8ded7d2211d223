//! Closed-form cohomology of line bundles on P^2 and F_e.
//!
//! On F_e a bundle `O(a C0 + b f)` with `a >= 0` pushes forward along the
//! ruling to `O(b) + O(b - e) + ... + O(b - a e)` on P^1 with vanishing R^1,
//! so its cohomology is a sum of P^1 terms. Classes with `a <= -2` are
//! handled by Serre duality and `a = -1` has no cohomology at all.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::fault::{self, Fault};
use crate::surfaces::{canonical_class, DivisorClass, SurfaceModel};

/// Dimensions `(h0, h1, h2)` of a coherent sheaf on a surface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CohVector {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
}

impl CohVector {
    pub const ZERO: CohVector = CohVector { h0: 0, h1: 0, h2: 0 };

    pub const fn new(h0: u64, h1: u64, h2: u64) -> Self {
        Self { h0, h1, h2 }
    }

    pub fn chi(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }

    pub fn get(&self, degree: usize) -> u64 {
        match degree {
            0 => self.h0,
            1 => self.h1,
            2 => self.h2,
            _ => panic!("cohomological degree {degree} out of range"),
        }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.h0, self.h1, self.h2]
    }

    /// `(h2, h1, h0)`: what Serre duality sends this vector to.
    pub fn reversed(&self) -> Self {
        Self::new(self.h2, self.h1, self.h0)
    }

    /// Cohomology of a direct sum of `n` copies.
    pub fn times(&self, n: u64) -> Self {
        Self::new(self.h0 * n, self.h1 * n, self.h2 * n)
    }
}

impl Add for CohVector {
    type Output = CohVector;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.h0 + rhs.h0, self.h1 + rhs.h1, self.h2 + rhs.h2)
    }
}

impl From<[u64; 3]> for CohVector {
    fn from(h: [u64; 3]) -> Self {
        Self::new(h[0], h[1], h[2])
    }
}

impl fmt::Display for CohVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.h0, self.h1, self.h2)
    }
}

/// P^1 degrees of the summands of the pushforward of `O(a C0 + b f)` on F_e:
/// `b - k e` for `k = 0..=a`.
pub fn pushforward_degrees(e: i64, a: i64, b: i64) -> Result<Vec<i64>> {
    if a < 0 {
        return Err(Error::NegativeSectionCoefficient { a });
    }
    let start = b + fault::shift(|f| match f {
        Fault::PushforwardStart(d) => Some(d),
        _ => None,
    });
    let step = e + fault::shift(|f| match f {
        Fault::PushforwardStep(d) => Some(d),
        _ => None,
    });
    let len = a + 1 + fault::shift(|f| match f {
        Fault::PushforwardLength(d) => Some(d),
        _ => None,
    });
    Ok((0..len.max(0)).map(|k| start - k * step).collect())
}

/// P^1 degrees of the summands of R^1 of the ruling applied to
/// `O(a C0 + b f)`, by relative duality: `b + e + k e` for
/// `k = 0..=(-2 - a)`; empty when `a >= -1`.
pub fn higher_direct_image_degrees(e: i64, a: i64, b: i64) -> Vec<i64> {
    if a >= -1 {
        return Vec::new();
    }
    (0..=(-2 - a)).map(|k| b + e + k * e).collect()
}

/// `(h0, h1)` of `O(d)` on P^1.
pub fn coh_p1(d: i64) -> (u64, u64) {
    ((d + 1).max(0) as u64, (-d - 1).max(0) as u64)
}

/// Sums P^1 cohomology over a list of degrees.
pub fn coh_p1_sum(degrees: &[i64]) -> (u64, u64) {
    degrees.iter().fold((0, 0), |(h0, h1), &d| {
        let (x, y) = coh_p1(d);
        (h0 + x, h1 + y)
    })
}

/// Cohomology `(h0, h1, h2)` of a line bundle.
pub fn coh(s: SurfaceModel, d: &DivisorClass) -> CohVector {
    assert_eq!(d.surface(), s, "divisor on the wrong surface");
    match s {
        SurfaceModel::ProjectivePlane => {
            let k = canonical_class(s);
            CohVector::new(h0_plane(d.degree()), 0, h0_plane((k - *d).degree()))
        }
        SurfaceModel::Hirzebruch(e) => {
            let e = i64::from(e);
            match d.a() {
                a if a >= 0 => {
                    let degrees = pushforward_degrees(e, a, d.b()).expect("a >= 0");
                    let (h0, h1) = coh_p1_sum(&degrees);
                    let dual = canonical_class(s) - *d;
                    CohVector::new(h0, h1, h0_hirzebruch(e, &dual))
                }
                -1 => CohVector::ZERO,
                _ => {
                    let dual = canonical_class(s) - *d;
                    if dual.a() >= 0 {
                        coh(s, &dual).reversed()
                    } else {
                        CohVector::ZERO
                    }
                }
            }
        }
    }
}

pub fn h0(s: SurfaceModel, d: &DivisorClass) -> u64 {
    coh(s, d).h0
}

/// h1 recovered from the other two degrees and Riemann-Roch; an independent
/// route for cross-checking the Leray sum.
pub fn h1_by_euler(s: SurfaceModel, d: &DivisorClass) -> Result<u64> {
    let c = coh(s, d);
    let chi = crate::surfaces::riemann_roch_chi(s, d)?;
    let h1 = c.h0 as i64 + c.h2 as i64 - chi;
    u64::try_from(h1).map_err(|_| Error::Internal(format!("negative h1 from Euler characteristic for {d}")))
}

/// Cohomology via the full Leray decomposition, using both the pushforward
/// and R^1 of the ruling (no Serre duality on the surface). F_e only.
pub fn coh_by_leray(e: u32, a: i64, b: i64) -> CohVector {
    let e = i64::from(e);
    let (p0, p1) = if a >= 0 {
        coh_p1_sum(&pushforward_degrees(e, a, b).expect("a >= 0"))
    } else {
        (0, 0)
    };
    let (r0, r1) = coh_p1_sum(&higher_direct_image_degrees(e, a, b));
    CohVector::new(p0, p1 + r0, r1)
}

fn h0_plane(d: i64) -> u64 {
    if d < 0 {
        0
    } else {
        ((d + 1) * (d + 2) / 2) as u64
    }
}

fn h0_hirzebruch(e: i64, d: &DivisorClass) -> u64 {
    if d.a() < 0 {
        return 0;
    }
    let degrees = pushforward_degrees(e, d.a(), d.b()).expect("a >= 0");
    coh_p1_sum(&degrees).0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pushforward_examples() {
        assert_eq!(pushforward_degrees(1, 2, 3).unwrap(), vec![3, 2, 1]);
        assert_eq!(pushforward_degrees(5, 0, 7).unwrap(), vec![7]);
        assert_eq!(pushforward_degrees(2, 4, 8).unwrap(), vec![8, 6, 4, 2, 0]);
        assert!(matches!(
            pushforward_degrees(1, -1, 0),
            Err(Error::NegativeSectionCoefficient { a: -1 })
        ));
    }

    #[test]
    fn relative_tangent_pushforwards() {
        // T_{S/P1} (x) K = O(-2f): pushes forward to O(-2) with no R^1.
        for e in 0..6 {
            assert_eq!(pushforward_degrees(e, 0, -2).unwrap(), vec![-2]);
            assert!(higher_direct_image_degrees(e, 0, -2).is_empty());
            // pullback of T_P1 twisted by K = O(-2 C0 - e f): no pushforward, R^1 = O.
            assert_eq!(higher_direct_image_degrees(e, -2, -e), vec![0]);
            // R^1 of K_S is O(-2).
            assert_eq!(higher_direct_image_degrees(e, -2, -e - 2), vec![-2]);
        }
    }

    #[test]
    fn p1_cohomology() {
        assert_eq!(coh_p1(-2), (0, 1));
        assert_eq!(coh_p1(0), (1, 0));
        assert_eq!(coh_p1(-1), (0, 0));
        assert_eq!(coh_p1(4), (5, 0));
    }

    #[test]
    fn tangent_twist_values() {
        for e in 0..7 {
            let s = SurfaceModel::Hirzebruch(e);
            let ei = i64::from(e);
            assert_eq!(coh(s, &s.class(0, -2)), CohVector::new(0, 1, 0));
            assert_eq!(coh(s, &s.class(-2, -ei)), CohVector::new(0, 1, 0));
            assert_eq!(coh(s, &canonical_class(s)), CohVector::new(0, 0, 1));
        }
        let p2 = SurfaceModel::ProjectivePlane;
        assert_eq!(coh(p2, &p2.degree(-3)), CohVector::new(0, 0, 1));
        assert_eq!(coh(p2, &p2.degree(2)), CohVector::new(6, 0, 0));
    }

    #[test]
    fn very_ample_closed_forms() {
        for e in 0..5i64 {
            let s = SurfaceModel::Hirzebruch(e as u32);
            let k = canonical_class(s);
            for a in 1..5 {
                for b in a * e + 1..a * e + 5 {
                    let d = s.class(a, b);
                    let c = coh(s, &d);
                    assert_eq!(c.h0 as i64, (a + 1) * (2 * b + 2 - a * e) / 2);
                    assert_eq!((c.h1, c.h2), (0, 0));
                    let ck = coh(s, &(d + k));
                    assert_eq!(ck.h0 as i64, (a - 1) * (2 * b - 2 - a * e) / 2);
                }
            }
        }
    }

    #[test]
    fn anticanonical_powers() {
        let f3 = SurfaceModel::Hirzebruch(3);
        assert_eq!(coh(f3, &f3.class(4, 10)).h1, 1);
        assert_eq!(coh(f3, &f3.class(2, 5)).h1, 0);
        let f4 = SurfaceModel::Hirzebruch(4);
        assert_eq!(coh(f4, &f4.class(4, 12)).h1, 3);
        assert_eq!(coh(f4, &f4.class(2, 6)).h1, 1);
    }

    #[test]
    fn leray_route_matches_duality_route() {
        for e in 0..6u32 {
            let s = SurfaceModel::Hirzebruch(e);
            for a in -7..=7 {
                for b in -9..=9 {
                    assert_eq!(coh_by_leray(e, a, b), coh(s, &s.class(a, b)), "F{e} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn h1_two_routes_agree() {
        for e in 0..5u32 {
            let s = SurfaceModel::Hirzebruch(e);
            for a in -6..=6 {
                for b in -8..=8 {
                    let d = s.class(a, b);
                    assert_eq!(h1_by_euler(s, &d).unwrap(), coh(s, &d).h1);
                }
            }
        }
    }
}
