//! Picard lattices, intersection forms and positivity on P^2 and the
//! Hirzebruch surfaces F_e.
//!
//! On F_e a class is written `a C0 + b f`, where C0 is the negative section
//! (C0^2 = -e) and f a fiber of the ruling. On P^2 a class is a degree d.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fault::{self, Fault};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceModel {
    ProjectivePlane,
    Hirzebruch(u32),
}

impl SurfaceModel {
    pub fn hirzebruch(e: u32) -> Self {
        SurfaceModel::Hirzebruch(e)
    }

    pub fn picard_rank(self) -> usize {
        match self {
            SurfaceModel::ProjectivePlane => 1,
            SurfaceModel::Hirzebruch(_) => 2,
        }
    }

    /// The twist parameter e, or `None` on P^2.
    pub fn e(self) -> Option<i64> {
        match self {
            SurfaceModel::ProjectivePlane => None,
            SurfaceModel::Hirzebruch(e) => Some(i64::from(e)),
        }
    }

    /// chi(O_S); both kinds are regular rational surfaces.
    pub fn chi_structure_sheaf(self) -> i64 {
        1
    }

    /// Topological Euler number, i.e. c2(T_S).
    pub fn euler_number(self) -> i64 {
        match self {
            SurfaceModel::ProjectivePlane => 3,
            SurfaceModel::Hirzebruch(_) => 4,
        }
    }

    pub fn divisor(self, coeffs: &[i64]) -> Result<DivisorClass> {
        DivisorClass::new(self, coeffs)
    }

    /// `a C0 + b f` on F_e. Panics on P^2.
    pub fn class(self, a: i64, b: i64) -> DivisorClass {
        assert!(matches!(self, SurfaceModel::Hirzebruch(_)), "class(a, b) on {self}");
        DivisorClass { surface: self, coeffs: [a, b] }
    }

    /// O(d) on P^2. Panics on F_e.
    pub fn degree(self, d: i64) -> DivisorClass {
        assert!(matches!(self, SurfaceModel::ProjectivePlane), "degree(d) on {self}");
        DivisorClass { surface: self, coeffs: [d, 0] }
    }

    pub fn zero(self) -> DivisorClass {
        DivisorClass { surface: self, coeffs: [0, 0] }
    }

    pub fn canonical_class(self) -> DivisorClass {
        canonical_class(self)
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceModel::ProjectivePlane => write!(f, "P2"),
            SurfaceModel::Hirzebruch(e) => write!(f, "F{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected `P2` or `F<e>` with e >= 0, got `{0}`")]
pub struct ParseSurfaceError(pub String);

impl FromStr for SurfaceModel {
    type Err = ParseSurfaceError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("p2") {
            return Ok(SurfaceModel::ProjectivePlane);
        }
        match t.strip_prefix(['F', 'f']).map(str::parse::<u32>) {
            Some(Ok(e)) => Ok(SurfaceModel::Hirzebruch(e)),
            _ => Err(ParseSurfaceError(s.to_string())),
        }
    }
}

/// A class in Pic(S), carried together with its surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    surface: SurfaceModel,
    coeffs: [i64; 2],
}

impl DivisorClass {
    pub fn new(surface: SurfaceModel, coeffs: &[i64]) -> Result<Self> {
        let expected = surface.picard_rank();
        if coeffs.len() != expected {
            return Err(Error::Dimension { surface, expected, got: coeffs.len() });
        }
        let mut c = [0; 2];
        c[..expected].copy_from_slice(coeffs);
        Ok(Self { surface, coeffs: c })
    }

    pub fn surface(&self) -> SurfaceModel {
        self.surface
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..self.surface.picard_rank()]
    }

    /// Coefficient of C0 on F_e, or the degree on P^2.
    pub fn a(&self) -> i64 {
        self.coeffs[0]
    }

    /// Fiber coefficient on F_e (0 on P^2).
    pub fn b(&self) -> i64 {
        self.coeffs[1]
    }

    pub fn degree(&self) -> i64 {
        self.coeffs[0]
    }

    fn same_surface(&self, other: &Self) {
        assert_eq!(self.surface, other.surface, "divisor classes on different surfaces");
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.surface {
            SurfaceModel::ProjectivePlane => write!(f, "O({})", self.coeffs[0]),
            SurfaceModel::Hirzebruch(_) => write!(f, "({},{})", self.coeffs[0], self.coeffs[1]),
        }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        self.same_surface(&rhs);
        Self {
            surface: self.surface,
            coeffs: [self.coeffs[0] + rhs.coeffs[0], self.coeffs[1] + rhs.coeffs[1]],
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        Self { surface: self.surface, coeffs: [-self.coeffs[0], -self.coeffs[1]] }
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass { surface: rhs.surface, coeffs: [self * rhs.coeffs[0], self * rhs.coeffs[1]] }
    }
}

fn check_on(s: SurfaceModel, d: &DivisorClass) -> Result<()> {
    if d.surface != s {
        return Err(Error::SurfaceMismatch { expected: s, found: d.surface });
    }
    Ok(())
}

/// The intersection pairing: `a1 b2 + a2 b1 - e a1 a2` on F_e, `d1 d2` on P^2.
pub fn intersect(s: SurfaceModel, d1: &DivisorClass, d2: &DivisorClass) -> Result<i64> {
    check_on(s, d1)?;
    check_on(s, d2)?;
    Ok(match s {
        SurfaceModel::ProjectivePlane => {
            let hh = 1 + fault::shift(|f| match f {
                Fault::PlaneSelfIntersection(d) => Some(d),
                _ => None,
            });
            d1.degree() * d2.degree() * hh
        }
        SurfaceModel::Hirzebruch(e) => {
            let (c0c0, c0f, ff) = hirzebruch_form(i64::from(e));
            let (a1, b1, a2, b2) = (d1.a(), d1.b(), d2.a(), d2.b());
            a1 * a2 * c0c0 + (a1 * b2 + a2 * b1) * c0f + b1 * b2 * ff
        }
    })
}

fn hirzebruch_form(e: i64) -> (i64, i64, i64) {
    let c0c0 = -e + fault::shift(|f| match f {
        Fault::SectionSelfIntersection(d) => Some(d),
        _ => None,
    });
    let c0f = 1 + fault::shift(|f| match f {
        Fault::SectionFiberIntersection(d) => Some(d),
        _ => None,
    });
    let ff = fault::shift(|f| match f {
        Fault::FiberSelfIntersection(d) => Some(d),
        _ => None,
    });
    (c0c0, c0f, ff)
}

/// K_S: `-2 C0 - (e + 2) f` on F_e and `O(-3)` on P^2.
pub fn canonical_class(s: SurfaceModel) -> DivisorClass {
    match s {
        SurfaceModel::ProjectivePlane => {
            let shift = fault::shift(|f| match f {
                Fault::CanonicalPlane(d) => Some(d),
                _ => None,
            });
            s.degree(-3 + shift)
        }
        SurfaceModel::Hirzebruch(e) => {
            let da = fault::shift(|f| match f {
                Fault::CanonicalSection(d) => Some(d),
                _ => None,
            });
            let db = fault::shift(|f| match f {
                Fault::CanonicalFiber(d) => Some(d),
                _ => None,
            });
            s.class(-2 + da, -(i64::from(e) + 2) + db)
        }
    }
}

/// Very ample iff `a >= 1` and `b >= a e + 1` on F_e; `d >= 1` on P^2.
///
/// Classes with `a <= 0` restrict to degree `a` on a fiber and are never
/// very ample.
pub fn is_very_ample(s: SurfaceModel, d: &DivisorClass) -> bool {
    if d.surface != s {
        return false;
    }
    match s {
        SurfaceModel::ProjectivePlane => d.degree() >= 1,
        SurfaceModel::Hirzebruch(e) => d.a() >= 1 && d.b() > d.a() * i64::from(e),
    }
}

/// Globally generated iff `a >= 0` and `b >= a e` on F_e; `d >= 0` on P^2.
pub fn is_base_point_free(s: SurfaceModel, d: &DivisorClass) -> bool {
    if d.surface != s {
        return false;
    }
    match s {
        SurfaceModel::ProjectivePlane => d.degree() >= 0,
        SurfaceModel::Hirzebruch(e) => d.a() >= 0 && d.b() >= d.a() * i64::from(e),
    }
}

/// Riemann-Roch on a surface with chi(O_S) = 1: `1 + D.(D - K) / 2`.
pub fn riemann_roch_chi(s: SurfaceModel, d: &DivisorClass) -> Result<i64> {
    check_on(s, d)?;
    let k = canonical_class(s);
    let pairing = intersect(s, d, &(*d - k))?;
    Ok(s.chi_structure_sheaf() + pairing.div_euclid(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_examples() {
        let f2 = SurfaceModel::Hirzebruch(2);
        let c0 = f2.class(1, 0);
        assert_eq!(intersect(f2, &c0, &c0).unwrap(), -2);
        for e in 0..10 {
            let s = SurfaceModel::Hirzebruch(e);
            let k = canonical_class(s);
            assert_eq!(intersect(s, &k, &k).unwrap(), 8, "K^2 on F{e}");
        }
        let p2 = SurfaceModel::ProjectivePlane;
        assert_eq!(intersect(p2, &p2.degree(3), &p2.degree(5)).unwrap(), 15);
        let k = canonical_class(p2);
        assert_eq!(intersect(p2, &k, &k).unwrap(), 9);
    }

    #[test]
    fn mismatched_surfaces_are_rejected() {
        let f1 = SurfaceModel::Hirzebruch(1);
        let f2 = SurfaceModel::Hirzebruch(2);
        let err = intersect(f1, &f1.class(1, 0), &f2.class(1, 0)).unwrap_err();
        assert!(matches!(err, Error::SurfaceMismatch { .. }));
        let err = DivisorClass::new(SurfaceModel::ProjectivePlane, &[1, 2]).unwrap_err();
        assert!(matches!(err, Error::Dimension { expected: 1, got: 2, .. }));
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(canonical_class(SurfaceModel::Hirzebruch(0)).coeffs(), &[-2, -2]);
        assert_eq!(canonical_class(SurfaceModel::Hirzebruch(3)).coeffs(), &[-2, -5]);
        assert_eq!(canonical_class(SurfaceModel::ProjectivePlane).coeffs(), &[-3]);
    }

    #[test]
    fn positivity() {
        let f2 = SurfaceModel::Hirzebruch(2);
        assert!(is_very_ample(f2, &f2.class(1, 3)));
        assert!(!is_very_ample(f2, &f2.class(1, 2)));
        assert!(!is_very_ample(f2, &f2.class(0, 5)));
        assert!(!is_very_ample(f2, &f2.class(-1, 5)));
        let p2 = SurfaceModel::ProjectivePlane;
        assert!(is_very_ample(p2, &p2.degree(1)));
        assert!(!is_very_ample(p2, &p2.degree(0)));

        for e in 0..8 {
            let s = SurfaceModel::Hirzebruch(e);
            let anti2 = -2 * canonical_class(s);
            assert_eq!(is_base_point_free(s, &anti2), e <= 2, "bpf(-2K) on F{e}");
        }
        assert!(is_base_point_free(p2, &p2.degree(6)));
    }

    #[test]
    fn riemann_roch_examples() {
        let f1 = SurfaceModel::Hirzebruch(1);
        assert_eq!(riemann_roch_chi(f1, &f1.zero()).unwrap(), 1);
        assert_eq!(riemann_roch_chi(f1, &f1.class(1, 2)).unwrap(), 5);
        let p2 = SurfaceModel::ProjectivePlane;
        assert_eq!(riemann_roch_chi(p2, &p2.degree(3)).unwrap(), 10);
    }

    #[test]
    fn surface_parsing() {
        assert_eq!("P2".parse::<SurfaceModel>().unwrap(), SurfaceModel::ProjectivePlane);
        assert_eq!("F12".parse::<SurfaceModel>().unwrap(), SurfaceModel::Hirzebruch(12));
        assert!("F-1".parse::<SurfaceModel>().is_err());
        assert!("P3".parse::<SurfaceModel>().is_err());
        assert_eq!(SurfaceModel::Hirzebruch(4).to_string(), "F4");
    }

    #[test]
    fn faults_perturb_constants_on_this_thread_only() {
        let s = SurfaceModel::Hirzebruch(1);
        let k = fault::with_fault(Fault::CanonicalFiber(1), || canonical_class(s));
        assert_eq!(k.coeffs(), &[-2, -2]);
        assert_eq!(canonical_class(s).coeffs(), &[-2, -3]);
    }
}
