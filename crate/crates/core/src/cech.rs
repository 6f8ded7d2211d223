//! Brute-force line bundle cohomology from the Čech complex of the toric
//! affine cover.
//!
//! For a torus-invariant divisor `T = sum a_rho D_rho` the Čech complex of
//! `O(T)` on the cover by max-cone charts splits by character degree `m`.
//! In degree `m` the chart intersection `U_I` contributes one dimension iff
//! `<m, u_rho> >= -a_rho` for every ray lying in all cones of `I`. The
//! cohomology of each graded piece is computed by exact elimination over
//! the rationals and summed over a box of characters.
//!
//! This module shares nothing with [`crate::line_cohomology`] beyond the
//! `CohVector` type; it serves as the independent check on that module.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::line_cohomology::CohVector;
use crate::linalg::rank;
use crate::scalar::ExactField;
use crate::surfaces::{DivisorClass, SurfaceModel};
use crate::Rational;

/// A complete smooth two-dimensional fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricFan {
    rays: Vec<[i64; 2]>,
    max_cones: Vec<[usize; 2]>,
    e: i64,
}

impl ToricFan {
    /// Rays `(1,0), (0,1), (-1,-1)`.
    pub fn plane() -> Self {
        Self {
            rays: vec![[1, 0], [0, 1], [-1, -1]],
            max_cones: vec![[0, 1], [1, 2], [2, 0]],
            e: 0,
        }
    }

    /// Rays `u1 = (1,0), u2 = (0,1), u3 = (-1,e), u4 = (0,-1)`.
    pub fn hirzebruch(e: u32) -> Self {
        let e = i64::from(e);
        Self {
            rays: vec![[1, 0], [0, 1], [-1, e], [0, -1]],
            max_cones: vec![[0, 1], [1, 2], [2, 3], [3, 0]],
            e,
        }
    }

    pub fn of(s: SurfaceModel) -> Self {
        match s {
            SurfaceModel::ProjectivePlane => Self::plane(),
            SurfaceModel::Hirzebruch(e) => Self::hirzebruch(e),
        }
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[[usize; 2]] {
        &self.max_cones
    }

    /// Every max cone is spanned by a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|&[i, j]| {
            let (u, v) = (self.rays[i], self.rays[j]);
            (u[0] * v[1] - u[1] * v[0]).abs() == 1
        })
    }

    /// Ray bitmask of the cone `∩_{σ ∈ I}` for a chart subset `I`.
    fn common_rays(&self, charts: u32) -> u32 {
        self.max_cones
            .iter()
            .enumerate()
            .filter(|(i, _)| charts & (1 << i) != 0)
            .fold(u32::MAX, |acc, (_, &[r, s])| acc & ((1 << r) | (1 << s)))
    }
}

/// Coefficients `a_rho`, one per ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    pub coeffs: Vec<i64>,
}

impl ToricDivisor {
    /// Adds the principal divisor of the character `m0`.
    pub fn translate(&self, fan: &ToricFan, m0: [i64; 2]) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(fan.rays())
            .map(|(a, u)| a + m0[0] * u[0] + m0[1] * u[1])
            .collect();
        Self { coeffs }
    }

    fn ray_mask(&self, fan: &ToricFan, m: [i64; 2]) -> u32 {
        fan.rays()
            .iter()
            .zip(&self.coeffs)
            .enumerate()
            .filter(|(_, (u, a))| m[0] * u[0] + m[1] * u[1] >= -**a)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

/// Which torus-invariant curve represents C0 on F_e.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SectionConvention {
    /// C0 = D_{u2}, f = D_{u1}.
    #[default]
    NegativeSection,
    /// C0 ~ D_{u4} - e D_{u1}, f = D_{u1}.
    PositiveSection,
}

/// The fixed torus-invariant representative of a class.
pub fn divisor_to_toric(s: SurfaceModel, d: &DivisorClass) -> ToricDivisor {
    divisor_to_toric_with(s, d, SectionConvention::default())
}

pub fn divisor_to_toric_with(s: SurfaceModel, d: &DivisorClass, conv: SectionConvention) -> ToricDivisor {
    assert_eq!(d.surface(), s, "divisor on the wrong surface");
    match s {
        SurfaceModel::ProjectivePlane => ToricDivisor { coeffs: vec![d.degree(), 0, 0] },
        SurfaceModel::Hirzebruch(e) => {
            let (a, b) = (d.a(), d.b());
            match conv {
                SectionConvention::NegativeSection => ToricDivisor { coeffs: vec![b, a, 0, 0] },
                SectionConvention::PositiveSection => {
                    ToricDivisor { coeffs: vec![b - a * i64::from(e), 0, 0, a] }
                }
            }
        }
    }
}

/// Cohomology of the degree-`m` piece of the Čech complex of `O(T)`.
pub fn graded_piece(fan: &ToricFan, t: &ToricDivisor, m: [i64; 2]) -> Result<CohVector> {
    let h = pattern_cohomology(fan, t.ray_mask(fan, m));
    if h[3] != 0 {
        return Err(Error::TopDegree { rank: h[3], m0: m[0], m1: m[1] });
    }
    Ok(CohVector::new(h[0], h[1], h[2]))
}

/// `h^0..h^3` of the Čech complex whose chart-intersection components are
/// present iff all of their rays lie in `ok`.
fn pattern_cohomology(fan: &ToricFan, ok: u32) -> [u64; 4] {
    let n = fan.max_cones().len();
    let present = |charts: u32| {
        let common = fan.common_rays(charts);
        // The intersection of all cones may be {0}; common is then 0.
        common & !ok == 0
    };

    // basis[p] = present chart subsets of size p + 1, in increasing mask order.
    let mut basis: Vec<Vec<u32>> = vec![Vec::new(); n];
    for mask in 1u32..(1 << n) {
        if present(mask) {
            basis[mask.count_ones() as usize - 1].push(mask);
        }
    }

    let mut ranks = vec![0usize; n + 1];
    for p in 0..n.saturating_sub(1) {
        let (src, dst) = (&basis[p], &basis[p + 1]);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let rows: Vec<Vec<Rational>> = dst
            .iter()
            .map(|&j| {
                let mut row = vec![Rational::from_int(0); src.len()];
                let members: Vec<usize> = (0..n).filter(|&i| j & (1 << i) != 0).collect();
                for (pos, &drop) in members.iter().enumerate() {
                    let face = j & !(1 << drop);
                    if let Ok(col) = src.binary_search(&face) {
                        row[col] = Rational::from_int(if pos % 2 == 0 { 1 } else { -1 });
                    }
                }
                row
            })
            .collect();
        ranks[p + 1] = rank(&rows);
    }

    let mut h = [0u64; 4];
    for p in 0..n.min(4) {
        // ranks[p] is the rank of d^{p-1}, ranks[p + 1] of d^p.
        h[p] = (basis[p].len() - ranks[p] - ranks[p + 1]) as u64;
    }
    h
}

#[derive(Clone, Copy, Debug, Default)]
pub struct OracleOptions {
    /// Overrides [`default_box_bound`].
    pub box_bound: Option<i64>,
    /// Splits the degree loop over threads; the result does not depend on it.
    pub parallel: bool,
}

/// Default truncation bound for the character box: `(e + 1) S + e + 2`
/// with `S = sum |a_rho|`.
///
/// A degree contributes only if the set of rays whose inequality holds is
/// empty, everything, or disconnected in the ray cycle. In each case two
/// opposite rays pin `|m2| <= S`, and then the rays `u1` and `(-1, e)` pin
/// `|m1| <= S + e |m2|`. On P^2 (`e = 0`) the same argument gives `S`.
pub fn default_box_bound(fan: &ToricFan, t: &ToricDivisor) -> i64 {
    let s = t.coeffs.iter().map(|a| a.abs()).sum::<i64>();
    (fan.e + 1) * s + fan.e + 2
}

/// Total cohomology over the box `|m1|, |m2| <= bound`.
pub fn box_totals(fan: &ToricFan, t: &ToricDivisor, bound: i64, parallel: bool) -> Result<CohVector> {
    let n_rays = fan.rays().len();
    let table: Vec<[u64; 4]> = (0..1u32 << n_rays).map(|ok| pattern_cohomology(fan, ok)).collect();

    let row = |m0: i64| -> Result<CohVector> {
        let mut acc = CohVector::ZERO;
        for m1 in -bound..=bound {
            let h = table[t.ray_mask(fan, [m0, m1]) as usize];
            if h[3] != 0 {
                return Err(Error::TopDegree { rank: h[3], m0, m1 });
            }
            acc = acc + CohVector::new(h[0], h[1], h[2]);
        }
        Ok(acc)
    };

    if parallel {
        (-bound..=bound)
            .into_par_iter()
            .map(row)
            .try_reduce(|| CohVector::ZERO, |x, y| Ok(x + y))
    } else {
        (-bound..=bound).try_fold(CohVector::ZERO, |acc, m0| Ok(acc + row(m0)?))
    }
}

/// Line bundle cohomology from the Čech complex, certified by re-running
/// on a box three units larger.
pub fn coh_oracle(s: SurfaceModel, d: &DivisorClass) -> Result<CohVector> {
    coh_oracle_with(s, d, OracleOptions::default())
}

pub fn coh_oracle_with(s: SurfaceModel, d: &DivisorClass, opts: OracleOptions) -> Result<CohVector> {
    let fan = ToricFan::of(s);
    let t = divisor_to_toric(s, d);
    toric_coh(&fan, &t, opts)
}

/// Certified totals for an arbitrary torus-invariant divisor.
pub fn toric_coh(fan: &ToricFan, t: &ToricDivisor, opts: OracleOptions) -> Result<CohVector> {
    let bound = opts.box_bound.unwrap_or_else(|| default_box_bound(fan, t));
    let small = box_totals(fan, t, bound, opts.parallel)?;
    let large = box_totals(fan, t, bound + 3, opts.parallel)?;
    if small != large {
        return Err(Error::Truncation {
            small_bound: bound,
            small_box: small.to_string(),
            large_bound: bound + 3,
            large_box: large.to_string(),
        });
    }
    Ok(small)
}

/// Number of characters in the box satisfying every ray inequality.
pub fn section_polytope_points(fan: &ToricFan, t: &ToricDivisor, bound: i64) -> u64 {
    let all = (1u32 << fan.rays().len()) - 1;
    let mut count = 0;
    for m0 in -bound..=bound {
        for m1 in -bound..=bound {
            if t.ray_mask(fan, [m0, m1]) == all {
                count += 1;
            }
        }
    }
    count
}
