//! The full list of checked claims.
//!
//! Each criterion evaluates a family of identities over a parameter grid and
//! reports one [`Claim`] row per identity. Expected values are computed here
//! from closed forms or from the Čech oracle, never from the function under
//! test. Everything under test runs on the calling thread so that a fault
//! injected with [`crate::fault::with_fault`] reaches it; only the oracle may
//! fan out to other threads.

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::carpets::{self, EmbeddingData};
use crate::cech::{coh_oracle_with, OracleOptions};
use crate::exact_seq::{propagate, CohInterval, LesInstance};
use crate::line_cohomology::{coh, CohVector};
use crate::surfaces::{canonical_class, riemann_roch_chi, DivisorClass, SurfaceModel};
use crate::Result;

/// One checked identity over a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub criterion: u8,
    pub id: &'static str,
    pub location: &'static str,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct BatteryConfig {
    /// Largest `e` in the carpet grids.
    pub carpet_e_max: u32,
    pub carpet_a_max: i64,
    /// `b` ranges over `ae + 1 ..= ae + carpet_db_max`.
    pub carpet_db_max: i64,
    pub plane_d_max: i64,
    /// Extra sections beyond the complete series in the non-complete cases.
    pub extra_sections: u64,
    pub oracle_e_max: u32,
    /// `(a, b)` ranges over `[-r, r]^2` on F_e.
    pub oracle_range: i64,
    /// `d` ranges over `[-r, r]` on P^2.
    pub oracle_plane_range: i64,
    pub random_pairs: usize,
    pub seed: u64,
    /// Run oracle evaluations on the rayon pool.
    pub parallel: bool,
}

impl BatteryConfig {
    pub fn full() -> Self {
        Self {
            carpet_e_max: 6,
            carpet_a_max: 6,
            carpet_db_max: 6,
            plane_d_max: 10,
            extra_sections: 5,
            oracle_e_max: 5,
            oracle_range: 8,
            oracle_plane_range: 12,
            random_pairs: 200,
            seed: 0x6361_7270_6574,
            parallel: true,
        }
    }

    /// A smaller grid with the same shape, for mutation runs.
    pub fn reduced() -> Self {
        Self {
            carpet_e_max: 4,
            carpet_a_max: 3,
            carpet_db_max: 2,
            plane_d_max: 5,
            oracle_e_max: 3,
            oracle_range: 3,
            oracle_plane_range: 5,
            random_pairs: 20,
            ..Self::full()
        }
    }

    fn hirzebruch_grid(&self) -> Vec<(SurfaceModel, DivisorClass)> {
        let mut out = Vec::new();
        for e in 0..=self.carpet_e_max {
            let s = SurfaceModel::Hirzebruch(e);
            let ei = i64::from(e);
            for a in 1..=self.carpet_a_max {
                for b in a * ei + 1..=a * ei + self.carpet_db_max {
                    out.push((s, s.class(a, b)));
                }
            }
        }
        out
    }

    fn plane_grid(&self) -> Vec<(SurfaceModel, DivisorClass)> {
        let p2 = SurfaceModel::ProjectivePlane;
        (1..=self.plane_d_max).map(|d| (p2, p2.degree(d))).collect()
    }

    fn oracle_grid(&self) -> Vec<(SurfaceModel, DivisorClass)> {
        let mut out = Vec::new();
        let r = self.oracle_range;
        for e in 0..=self.oracle_e_max {
            let s = SurfaceModel::Hirzebruch(e);
            for a in -r..=r {
                for b in -r..=r {
                    out.push((s, s.class(a, b)));
                }
            }
        }
        let p2 = SurfaceModel::ProjectivePlane;
        let r = self.oracle_plane_range;
        out.extend((-r..=r).map(|d| (p2, p2.degree(d))));
        out
    }

    fn surfaces(&self) -> Vec<SurfaceModel> {
        let mut out = vec![SurfaceModel::ProjectivePlane];
        out.extend((0..=self.carpet_e_max).map(SurfaceModel::Hirzebruch));
        out
    }
}

/// Running tally of one claim: cases checked and the first disagreement.
struct Tally {
    checked: usize,
    failures: usize,
    first: Option<(String, String)>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, failures: 0, first: None }
    }

    fn check<T: PartialEq + Display>(&mut self, case: impl Display, got: T, want: T) {
        self.checked += 1;
        if got != want {
            self.fail(format!("{case}: {got}"), format!("{want}"));
        }
    }

    fn check_result<T: PartialEq + Display>(&mut self, case: impl Display, got: Result<T>, want: T) {
        match got {
            Ok(v) => self.check(case, v, want),
            Err(err) => {
                self.checked += 1;
                self.fail(format!("{case}: error: {err}"), format!("{want}"));
            }
        }
    }

    fn holds(&mut self, case: impl Display, ok: bool, what: &str) {
        self.checked += 1;
        if !ok {
            self.fail(format!("{case}: violated"), what.to_string());
        }
    }

    fn fail(&mut self, computed: String, expected: String) {
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some((computed, expected));
        }
    }

    fn into_claim(self, criterion: u8, id: &'static str, location: &'static str) -> Claim {
        let (computed, expected, pass) = match self.first {
            None => (
                format!("{} of {} cases agree", self.checked, self.checked),
                format!("{} of {}", self.checked, self.checked),
                self.checked > 0,
            ),
            Some((c, e)) => (
                format!("{} of {} cases fail; first {c}", self.failures, self.checked),
                e,
                false,
            ),
        };
        Claim { criterion, id, location, computed, expected, pass }
    }
}

/// Runs `body`, turning a panic into a failing claim.
fn guarded(criterion: u8, id: &'static str, location: &'static str, body: impl FnOnce() -> Claim) -> Claim {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(claim) => claim,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Claim {
                criterion,
                id,
                location,
                computed: format!("panicked: {msg}"),
                expected: "no panic".to_string(),
                pass: false,
            }
        }
    }
}

macro_rules! claim {
    ($out:expr, $crit:expr, $id:expr, $loc:expr, $body:expr) => {
        $out.push(guarded($crit, $id, $loc, || {
            let mut t = Tally::new();
            #[allow(clippy::redundant_closure_call)]
            ($body)(&mut t);
            t.into_claim($crit, $id, $loc)
        }))
    };
}

pub fn run(cfg: &BatteryConfig) -> Vec<Claim> {
    (1..=8).flat_map(|c| run_criterion(cfg, c)).collect()
}

pub fn run_criterion(cfg: &BatteryConfig, criterion: u8) -> Vec<Claim> {
    match criterion {
        1 => embedded_hirzebruch(cfg),
        2 => embedded_plane(cfg),
        3 => oracle_agreement(cfg),
        4 => duality_and_rr(cfg),
        5 => abstract_dimensions(cfg),
        6 => hilbert(cfg),
        7 => double_covers(cfg),
        8 => sequence_calculus(cfg),
        _ => Vec::new(),
    }
}

fn h0_closed(s: SurfaceModel, d: &DivisorClass) -> i64 {
    match s {
        SurfaceModel::ProjectivePlane => {
            let d = d.degree();
            if d < 0 { 0 } else { (d + 1) * (d + 2) / 2 }
        }
        SurfaceModel::Hirzebruch(e) => {
            let (a, b, e) = (d.a(), d.b(), i64::from(e));
            (a + 1) * (2 * b + 2 - a * e) / 2
        }
    }
}

/// `h0(L + K)` for very ample `L`, in closed form.
fn h0_twist_closed(s: SurfaceModel, d: &DivisorClass) -> i64 {
    match s {
        SurfaceModel::ProjectivePlane => {
            let d = d.degree() - 3;
            if d < 0 { 0 } else { (d + 1) * (d + 2) / 2 }
        }
        SurfaceModel::Hirzebruch(e) => {
            let (a, b, e) = (d.a(), d.b(), i64::from(e));
            (a - 1) * (2 * b - 2 - a * e) / 2
        }
    }
}

fn sections_cases(cfg: &BatteryConfig, s: SurfaceModel, d: &DivisorClass) -> [u64; 2] {
    let h = h0_closed(s, d) as u64;
    [h, h + cfg.extra_sections]
}

fn embedded_hirzebruch(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let grid = cfg.hirzebruch_grid();
    claim!(out, 1, "embedded-count-hirzebruch", "embedded carpets on F_e: h0(N (x) K) for N + 1 >= h0(L)", |t: &mut Tally| {
        for (s, d) in &grid {
            for m in sections_cases(cfg, *s, d) {
                let (a, b, e) = (d.a(), d.b(), s.e().unwrap());
                let want = m as i64 * (a - 1) * (2 * b - 2 - a * e) / 2 + 1;
                let got = EmbeddingData::new(*s, *d, m - 1).and_then(|emb| carpets::embedded_carpet_h0(&emb));
                t.check_result(format_args!("{s} {d} N={}", m - 1), got.map(|v| v as i64), want);
            }
        }
    });
    claim!(out, 1, "embedded-count-complete-series", "embedded carpets on F_e, complete series: quartic formula", |t: &mut Tally| {
        for (s, d) in &grid {
            let (a, b, e) = (d.a(), d.b(), s.e().unwrap());
            let want = (a * a - 1) * ((2 * b - a * e).pow(2) - 4) / 4 + 1;
            let got = EmbeddingData::complete(*s, *d).and_then(|emb| carpets::embedded_carpet_h0(&emb));
            t.check_result(format_args!("{s} {d}"), got.map(|v| v as i64), want);
        }
    });
    out
}

fn embedded_plane(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let grid = cfg.plane_grid();
    claim!(out, 2, "embedded-count-plane", "embedded carpets on P2: h0(N (x) K) = (N+1)(d-1)(d-2)/2", |t: &mut Tally| {
        for (s, d) in &grid {
            for m in sections_cases(cfg, *s, d) {
                let n = d.degree();
                let want = m as i64 * (n - 1) * (n - 2) / 2;
                let got = EmbeddingData::new(*s, *d, m - 1).and_then(|emb| carpets::embedded_carpet_h0(&emb));
                t.check_result(format_args!("{s} d={n} N={}", m - 1), got.map(|v| v as i64), want);
            }
        }
    });
    claim!(out, 2, "no-carpet-low-degree", "embedded carpets on P2 exist exactly for d >= 3", |t: &mut Tally| {
        for (s, d) in &grid {
            let got = EmbeddingData::complete(*s, *d).and_then(|emb| carpets::carpet_report(&emb));
            t.check_result(format_args!("{s} d={}", d.degree()), got.map(|r| r.exists_embedded), d.degree() >= 3);
        }
    });
    out
}

fn oracle_values(cfg: &BatteryConfig, grid: &[(SurfaceModel, DivisorClass)]) -> Vec<Result<CohVector>> {
    let one = |(s, d): &(SurfaceModel, DivisorClass)| {
        coh_oracle_with(*s, d, OracleOptions { box_bound: None, parallel: false })
    };
    if cfg.parallel {
        grid.par_iter().map(one).collect()
    } else {
        grid.iter().map(one).collect()
    }
}

fn oracle_agreement(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let grid = cfg.oracle_grid();
    let oracle = oracle_values(cfg, &grid);
    let split = |plane: bool| {
        grid.iter()
            .zip(&oracle)
            .filter(move |((s, _), _)| (*s == SurfaceModel::ProjectivePlane) == plane)
    };
    claim!(out, 3, "oracle-agreement-hirzebruch", "line bundle cohomology on F_e versus the Čech complex", |t: &mut Tally| {
        for ((s, d), o) in split(false) {
            match o {
                Ok(o) => t.check(format_args!("{s} {d}"), coh(*s, d), *o),
                Err(err) => t.fail(format!("{s} {d}: oracle error: {err}"), "stable oracle".into()),
            }
        }
    });
    claim!(out, 3, "oracle-agreement-plane", "line bundle cohomology on P2 versus the Čech complex", |t: &mut Tally| {
        for ((s, d), o) in split(true) {
            match o {
                Ok(o) => t.check(format_args!("{s} {d}"), coh(*s, d), *o),
                Err(err) => t.fail(format!("{s} {d}: oracle error: {err}"), "stable oracle".into()),
            }
        }
    });
    out
}

fn duality_and_rr(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let grid = cfg.oracle_grid();
    claim!(out, 4, "serre-duality", "h^i(D) = h^(2-i)(K - D)", |t: &mut Tally| {
        for (s, d) in &grid {
            let dual = canonical_class(*s) - *d;
            t.check(format_args!("{s} {d}"), coh(*s, d).reversed(), coh(*s, &dual));
        }
    });
    claim!(out, 4, "riemann-roch", "chi(D) = 1 + D.(D - K)/2", |t: &mut Tally| {
        for (s, d) in &grid {
            t.check_result(format_args!("{s} {d}"), riemann_roch_chi(*s, d), coh(*s, d).chi());
        }
    });
    claim!(out, 4, "canonical-self-intersection", "K^2 = 8 on F_e and 9 on P2", |t: &mut Tally| {
        for s in cfg.surfaces() {
            let k = canonical_class(s);
            let want = if s == SurfaceModel::ProjectivePlane { 9 } else { 8 };
            t.check_result(format_args!("{s}"), crate::surfaces::intersect(s, &k, &k), want);
        }
    });
    out
}

fn abstract_dimensions(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let hirz: Vec<SurfaceModel> = (0..=cfg.carpet_e_max).map(SurfaceModel::Hirzebruch).collect();
    claim!(out, 5, "tangent-twist-pieces", "tangent bundle twists on F_e: h(-2f) = h(-2C0 - ef) = (0,1,0), h(K) = (0,0,1)", |t: &mut Tally| {
        for &s in &hirz {
            let e = s.e().unwrap();
            let k = canonical_class(s);
            t.check(format_args!("{s} relative tangent (x) K"), coh(s, &(s.class(2, e) + k)), CohVector::new(0, 1, 0));
            t.check(format_args!("{s} pulled back tangent (x) K"), coh(s, &(s.class(0, 2) + k)), CohVector::new(0, 1, 0));
            t.check(format_args!("{s} K"), coh(s, &k), CohVector::new(0, 0, 1));
        }
    });
    claim!(out, 5, "abstract-dim-hirzebruch", "abstract carpets on F_e: h1(T (x) K) forced to 2", |t: &mut Tally| {
        for &s in &hirz {
            t.check_result(format_args!("{s}"), carpets::abstract_carpet_dim(s), 2);
        }
    });
    claim!(out, 5, "abstract-dim-plane", "abstract carpets on P2: h1(T (x) K) forced to 1", |t: &mut Tally| {
        t.check_result("P2", carpets::abstract_carpet_dim(SurfaceModel::ProjectivePlane), 1);
    });
    out
}

fn hilbert(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    // Only polarizations that carry an embedded carpet; on P2 that is d >= 3.
    let mut grid = cfg.hirzebruch_grid();
    grid.extend(cfg.plane_grid().into_iter().filter(|(_, d)| d.degree() >= 3));
    let reports: Vec<_> = grid
        .iter()
        .map(|(s, d)| EmbeddingData::carpet_complete(*s, *d).and_then(|emb| carpets::hilbert_report(&emb)))
        .collect();
    claim!(out, 6, "hilbert-chi", "chi of the carpet normal sheaf = (N+1)^2 + 18, N + 1 = h0(L) + h0(L+K)", |t: &mut Tally| {
        for ((s, d), r) in grid.iter().zip(&reports) {
            let m = h0_closed(*s, d) + h0_twist_closed(*s, d);
            t.check_result(
                format_args!("{s} {d} N={}", m - 1),
                r.clone().map(|r| r.chi_normal_carpet),
                m * m + 18,
            );
        }
    });
    claim!(out, 6, "hilbert-chi-any-ambient", "chi of the carpet normal sheaf = (N+1)(h0(L) + h0(L+K)) + 18", |t: &mut Tally| {
        for (s, d) in &grid {
            let k = h0_closed(*s, d) + h0_twist_closed(*s, d);
            for m in sections_cases(cfg, *s, d).into_iter().chain([k as u64]) {
                let got = EmbeddingData::new(*s, *d, m - 1).and_then(|emb| carpets::normal_carpet_chi(&emb));
                t.check_result(format_args!("{s} {d} N={}", m - 1), got, m as i64 * k + 18);
            }
        }
    });
    claim!(out, 6, "hilbert-smooth-verdict", "carpet is a smooth Hilbert point iff e <= 2 (always on P2)", |t: &mut Tally| {
        for ((s, d), r) in grid.iter().zip(&reports) {
            let want = s.e().is_none_or(|e| e <= 2);
            t.check_result(format_args!("{s} {d}"), r.clone().map(|r| r.smooth), want);
        }
    });
    claim!(out, 6, "hilbert-smooth-h0", "smooth carpets: h1 of the normal sheaf forced 0, h0 = (N+1)^2 + 18", |t: &mut Tally| {
        for ((s, d), r) in grid.iter().zip(&reports) {
            if s.e().is_some_and(|e| e > 2) {
                continue;
            }
            let m = h0_closed(*s, d) + h0_twist_closed(*s, d);
            let want = CohInterval::exact(CohVector::new((m * m + 18) as u64, 0, 0));
            let got = r.clone().map(|r| r.normal_carpet);
            match got {
                Ok(iv) => t.check(format_args!("{s} {d}"), describe(&iv), describe(&want)),
                Err(err) => t.fail(format!("{s} {d}: error: {err}"), describe(&want)),
            }
        }
    });
    claim!(out, 6, "hilbert-e3-forced", "F_3: h1 of the carpet normal sheaf forced to 1", |t: &mut Tally| {
        for ((s, d), r) in grid.iter().zip(&reports) {
            if s.e() != Some(3) {
                continue;
            }
            let got = r.clone().map(|r| r.h1_normal_carpet().map_or("unforced".to_string(), |v| v.to_string()));
            t.check_result(format_args!("{s} {d}"), got, "1".to_string());
        }
    });
    out
}

fn opt<T: Display>(v: Option<T>) -> String {
    v.map_or_else(|| "unforced".to_string(), |v| v.to_string())
}

fn describe(iv: &CohInterval) -> String {
    (0..3).map(|i| iv.describe_degree(i)).collect::<Vec<_>>().join(",")
}

fn double_covers(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let surfaces = cfg.surfaces();
    let reports: Vec<_> = surfaces.iter().map(|&s| carpets::double_cover_k3_check(s)).collect();
    claim!(out, 7, "double-cover-k3", "double cover branched in |-2K| is K3 iff e <= 2 (always on P2)", |t: &mut Tally| {
        for (s, r) in surfaces.iter().zip(&reports) {
            let want = s.e().is_none_or(|e| e <= 2);
            t.check_result(format_args!("{s}"), r.clone().map(|r| r.is_k3_cover), want);
        }
    });
    claim!(out, 7, "double-cover-invariants", "cover invariants chi = 2, h1 = 0, branch base point free iff e <= 2", |t: &mut Tally| {
        for (s, r) in surfaces.iter().zip(&reports) {
            let bpf = s.e().is_none_or(|e| e <= 2);
            let got = r.clone().map(|r| format!("chi={} h1={} bpf={}", r.cover_chi, r.cover_h1, r.branch_bpf));
            t.check_result(format_args!("{s}"), got, format!("chi=2 h1=0 bpf={bpf}"));
        }
    });
    claim!(out, 7, "double-cover-normal-h1", "h1(N_pi) = h1(-2K|C) forced 0 when the cover exists", |t: &mut Tally| {
        for (s, r) in surfaces.iter().zip(&reports) {
            match r {
                Ok(r) if r.is_k3_cover => {
                    t.check(format_args!("{s}"), r.h1_n_pi.describe_degree(1), "0".to_string())
                }
                Ok(_) => {}
                Err(err) => t.fail(format!("{s}: error: {err}"), "report".into()),
            }
        }
    });
    out
}

/// Random line bundle pairs per surface, with coefficients in a small box.
fn random_pairs(cfg: &BatteryConfig, s: SurfaceModel, rng: &mut ChaCha8Rng) -> Vec<(DivisorClass, DivisorClass)> {
    let pick = |rng: &mut ChaCha8Rng| match s {
        SurfaceModel::ProjectivePlane => s.degree(rng.gen_range(-8..=8)),
        SurfaceModel::Hirzebruch(_) => s.class(rng.gen_range(-5..=5), rng.gen_range(-8..=8)),
    };
    (0..cfg.random_pairs).map(|_| (pick(rng), pick(rng))).collect()
}

/// Forgets each degree of each term with probability one half.
fn obscure(v: CohVector, rng: &mut ChaCha8Rng) -> CohInterval {
    let mut iv = CohInterval::exact(v);
    for i in 0..3 {
        if rng.gen_bool(0.5) {
            iv.lo[i] = 0;
            iv.hi[i] = None;
        }
    }
    iv.chi = if rng.gen_bool(0.5) { Some(v.chi()) } else { None };
    iv
}

fn sequence_calculus(cfg: &BatteryConfig) -> Vec<Claim> {
    let mut out = Vec::new();
    let surfaces = cfg.surfaces();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pairs: Vec<_> = surfaces.iter().map(|&s| (s, random_pairs(cfg, s, &mut rng))).collect();

    claim!(out, 8, "les-split-additivity", "split sequences: chi additive, sum admitted, vanishing-flanked degrees pinned", |t: &mut Tally| {
        for (s, ps) in &pairs {
            for (l, m) in ps {
                let (a, c) = (coh(*s, l), coh(*s, m));
                let case = format_args!("{s} {l} + {m}").to_string();
                match propagate(&LesInstance::new(a, CohInterval::unknown(), c)) {
                    Ok(p) => {
                        t.holds(&case, p.b.contains(&(a + c)), "sum lies in the propagated interval");
                        t.check(&case, opt(p.b.chi), opt(Some(a.chi() + c.chi())));
                        for i in 0..3 {
                            // 0 -> H^i A -> H^i B -> H^i C -> 0 is exact when both
                            // connecting maps have zero source or target.
                            let left = i == 0 || c.get(i - 1) == 0 || a.get(i) == 0;
                            let right = i == 2 || c.get(i) == 0 || a.get(i + 1) == 0;
                            if left && right {
                                t.check(format_args!("{case} degree {i}"), opt(p.b.forced_value(i)), opt(Some(a.get(i) + c.get(i))));
                            }
                        }
                    }
                    Err(err) => t.fail(format!("{case}: error: {err}"), "consistent".into()),
                }
                match propagate(&LesInstance::new(a, a + c, c)) {
                    Ok(p) => t.holds(&case, p.b.forced() == Some(a + c), "given sum stays pinned"),
                    Err(err) => t.fail(format!("{case}: error: {err}"), "consistent".into()),
                }
            }
        }
    });

    // Independent values for the soundness check come from the oracle.
    let mut triples = Vec::new();
    for (s, ps) in &pairs {
        for (l, m) in ps.iter().take(cfg.random_pairs / 4) {
            triples.push((*s, *l, *m));
        }
    }
    let flat: Vec<_> = triples.iter().flat_map(|&(s, l, m)| [(s, l), (s, m)]).collect();
    let oracle = oracle_values(cfg, &flat);
    claim!(out, 8, "les-soundness", "true cohomology lies inside the propagated intervals", |t: &mut Tally| {
        for (k, (s, l, m)) in triples.iter().enumerate() {
            let case = format!("{s} {l} + {m}");
            let (Ok(a), Ok(c)) = (&oracle[2 * k], &oracle[2 * k + 1]) else {
                t.fail(format!("{case}: oracle error"), "stable oracle".into());
                continue;
            };
            let (a, c) = (*a, *c);
            let seq = LesInstance::new(obscure(a, &mut rng), obscure(a + c, &mut rng), obscure(c, &mut rng));
            match propagate(&seq) {
                Ok(p) => t.holds(
                    &case,
                    p.a.contains(&a) && p.b.contains(&(a + c)) && p.c.contains(&c),
                    "all true values admitted",
                ),
                Err(err) => t.fail(format!("{case}: error: {err}"), "consistent".into()),
            }
        }
    });

    claim!(out, 8, "les-idempotence", "propagating twice changes nothing", |t: &mut Tally| {
        for (s, ps) in &pairs {
            for (l, m) in ps {
                let (a, c) = (coh(*s, l), coh(*s, m));
                let seq = LesInstance::new(obscure(a, &mut rng), obscure(a + c, &mut rng), obscure(c, &mut rng));
                let case = format!("{s} {l} + {m}");
                match propagate(&seq).and_then(|p| Ok((p, propagate(&p)?))) {
                    Ok((p, q)) => t.holds(&case, p == q, "fixed point"),
                    Err(err) => t.fail(format!("{case}: error: {err}"), "consistent".into()),
                }
            }
        }
    });

    let mut grid = cfg.hirzebruch_grid();
    grid.extend(cfg.plane_grid());
    claim!(out, 8, "euler-twist-forced", "restricted ambient tangent (x) K: h = ((N+1)h0(L+K), 1, 0), forced", |t: &mut Tally| {
        for (s, d) in &grid {
            for m in sections_cases(cfg, *s, d) {
                let k = canonical_class(*s);
                let seq = LesInstance::new(coh(*s, &k), coh(*s, &(*d + k)).times(m), CohInterval::unknown());
                let want = CohVector::new(m * h0_twist_closed(*s, d) as u64, 1, 0);
                let got = propagate(&seq).map(|p| p.c.forced().map_or_else(|| p.c.to_string(), |v| v.to_string()));
                t.check_result(format_args!("{s} {d} N={}", m - 1), got, want.to_string());
            }
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::{with_fault, Fault};

    #[test]
    fn reduced_battery_passes() {
        let claims = run(&BatteryConfig::reduced());
        for c in &claims {
            assert!(c.pass, "{c:?}");
        }
        assert!(claims.iter().any(|c| c.criterion == 8));
    }

    #[test]
    fn a_canonical_class_fault_is_caught() {
        let claims = with_fault(Fault::CanonicalSection(1), || run_criterion(&BatteryConfig::reduced(), 5));
        assert!(claims.iter().any(|c| !c.pass));
    }
}
