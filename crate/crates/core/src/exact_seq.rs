//! Dimension bookkeeping for long exact cohomology sequences.
//!
//! A short exact sequence `0 -> A -> B -> C -> 0` on a surface gives the
//! nine-term sequence
//!
//! ```text
//! 0 -> H0A -> H0B -> H0C -> H1A -> H1B -> H1C -> H2A -> H2B -> H2C -> 0
//! ```
//!
//! Exactness is modelled by the ranks `r_0..r_9` of the ten maps (with
//! `r_0 = r_9 = 0`): the k-th term has dimension `t_k = r_k + r_{k+1}`.
//! Given bounds on some dimensions and optional Euler characteristics,
//! [`propagate`] returns, for every dimension, its exact minimum and maximum
//! over all nonnegative integer rank assignments.
//!
//! The constraint matrix of this model (consecutive-pair rows plus the three
//! Euler characteristic rows) is totally unimodular, so the rational linear
//! programming bounds are attained at integer points and are exact. The
//! `lp_bounds_are_integral` test in this module checks the unimodularity by
//! enumerating minors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::line_cohomology::CohVector;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::scalar::ExactField;
use crate::Rational;

/// Per-degree bounds plus an optional exact Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CohInterval {
    pub lo: [u64; 3],
    /// `None` means no upper bound is known.
    pub hi: [Option<u64>; 3],
    pub chi: Option<i64>,
}

impl CohInterval {
    pub fn unknown() -> Self {
        Self { lo: [0; 3], hi: [None; 3], chi: None }
    }

    pub fn exact(v: CohVector) -> Self {
        let h = v.as_array();
        Self { lo: h, hi: h.map(Some), chi: Some(v.chi()) }
    }

    /// Only the Euler characteristic is known.
    pub fn with_chi_only(chi: i64) -> Self {
        Self { chi: Some(chi), ..Self::unknown() }
    }

    pub fn with_chi(mut self, chi: i64) -> Self {
        self.chi = Some(chi);
        self
    }

    pub fn bounded(lo: [u64; 3], hi: [u64; 3]) -> Self {
        Self { lo, hi: hi.map(Some), chi: None }
    }

    pub fn pin(mut self, degree: usize, value: u64) -> Self {
        self.lo[degree] = value;
        self.hi[degree] = Some(value);
        self
    }

    pub fn is_forced(&self, degree: usize) -> bool {
        self.hi[degree] == Some(self.lo[degree])
    }

    pub fn forced_value(&self, degree: usize) -> Option<u64> {
        self.is_forced(degree).then_some(self.lo[degree])
    }

    pub fn forced(&self) -> Option<CohVector> {
        Some(CohVector::new(
            self.forced_value(0)?,
            self.forced_value(1)?,
            self.forced_value(2)?,
        ))
    }

    pub fn contains(&self, v: &CohVector) -> bool {
        (0..3).all(|i| {
            let x = v.get(i);
            x >= self.lo[i] && self.hi[i].is_none_or(|h| x <= h)
        }) && self.chi.is_none_or(|c| c == v.chi())
    }

    /// Intersection of two sets of constraints on the same sheaf.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let mut out = *self;
        for i in 0..3 {
            out.lo[i] = self.lo[i].max(other.lo[i]);
            out.hi[i] = match (self.hi[i], other.hi[i]) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            };
            if let Some(h) = out.hi[i] {
                if out.lo[i] > h {
                    return Err(Error::Inconsistent {
                        relation: format!("h^{i} bounds {} and {} are disjoint", self.show(i), other.show(i)),
                    });
                }
            }
        }
        out.chi = match (self.chi, other.chi) {
            (Some(x), Some(y)) if x != y => {
                return Err(Error::Inconsistent { relation: format!("chi = {x} versus chi = {y}") })
            }
            (x, y) => x.or(y),
        };
        Ok(out)
    }

    fn show(&self, i: usize) -> String {
        match self.hi[i] {
            Some(h) if h == self.lo[i] => h.to_string(),
            Some(h) => format!("[{}, {h}]", self.lo[i]),
            None => format!("[{}, inf)", self.lo[i]),
        }
    }

    /// Bounds for one degree as printed in reports, e.g. `3` or `[0, 2]`.
    pub fn describe_degree(&self, i: usize) -> String {
        self.show(i)
    }
}

impl fmt::Display for CohInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.show(0), self.show(1), self.show(2))?;
        if let Some(c) = self.chi {
            write!(f, " chi={c}")?;
        }
        Ok(())
    }
}

impl From<CohVector> for CohInterval {
    fn from(v: CohVector) -> Self {
        Self::exact(v)
    }
}

/// `0 -> a -> b -> c -> 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LesInstance {
    pub a: CohInterval,
    pub b: CohInterval,
    pub c: CohInterval,
}

impl LesInstance {
    pub fn new(a: impl Into<CohInterval>, b: impl Into<CohInterval>, c: impl Into<CohInterval>) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn terms(&self) -> [&CohInterval; 3] {
        [&self.a, &self.b, &self.c]
    }

    fn terms_mut(&mut self) -> [&mut CohInterval; 3] {
        [&mut self.a, &mut self.b, &mut self.c]
    }
}

const TERM_NAMES: [&str; 3] = ["A", "B", "C"];

fn position_name(k: usize) -> String {
    format!("H^{}({})", k / 3, TERM_NAMES[k % 3])
}

/// Integer bounds, upper bound optional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Bound {
    lo: i64,
    hi: Option<i64>,
}

impl Bound {
    const FREE: Bound = Bound { lo: 0, hi: None };

    fn fixed(v: i64) -> Self {
        Bound { lo: v, hi: Some(v) }
    }

    fn value(&self) -> Option<i64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }

    fn raise(&mut self, lo: i64) -> bool {
        if lo > self.lo {
            self.lo = lo;
            true
        } else {
            false
        }
    }

    fn lower(&mut self, hi: Option<i64>) -> bool {
        match (hi, self.hi) {
            (Some(h), Some(cur)) if h < cur => {
                self.hi = Some(h);
                true
            }
            (Some(h), None) => {
                self.hi = Some(h);
                true
            }
            _ => false,
        }
    }

    fn empty(&self) -> bool {
        self.hi.is_some_and(|h| self.lo > h)
    }
}

fn add_hi(x: Option<i64>, y: Option<i64>) -> Option<i64> {
    Some(x? + y?)
}

fn sub_hi(x: Option<i64>, lo: i64) -> Option<i64> {
    x.map(|h| h - lo)
}

/// Internal state: dimensions t[0..9], ranks r[0..10], Euler characteristics.
struct RankModel {
    t: [Bound; 9],
    r: [Bound; 10],
    chi: [Bound; 3],
}

/// Signs of `t_k` in `chi(term j)`.
fn chi_terms(j: usize) -> [(usize, i64); 3] {
    [(j, 1), (3 + j, -1), (6 + j, 1)]
}

impl RankModel {
    fn from_instance(seq: &LesInstance) -> Self {
        let mut t = [Bound::FREE; 9];
        let mut chi = [Bound { lo: CHI_FLOOR, hi: None }; 3];
        for (j, term) in seq.terms().iter().enumerate() {
            for i in 0..3 {
                t[3 * i + j] = Bound { lo: term.lo[i] as i64, hi: term.hi[i].map(|h| h as i64) };
            }
            if let Some(c) = term.chi {
                chi[j] = Bound::fixed(c);
            }
        }
        let mut r = [Bound::FREE; 10];
        r[0] = Bound::fixed(0);
        r[9] = Bound::fixed(0);
        Self { t, r, chi }
    }

    /// Range of `sum s_k t_k` over `terms`, skipping `skip`; `None` is infinite.
    fn signed_sum(&self, terms: &[(usize, i64)], skip: Option<usize>) -> (Option<i64>, Option<i64>) {
        let (mut lo, mut hi) = (Some(0i64), Some(0i64));
        for &(k, s) in terms {
            if Some(k) == skip {
                continue;
            }
            let b = self.t[k];
            if s > 0 {
                lo = lo.map(|l| l + b.lo);
                hi = add_hi(hi, b.hi);
            } else {
                lo = add_hi(lo, b.hi.map(|h| -h));
                hi = hi.map(|h| h - b.lo);
            }
        }
        (lo, hi)
    }

    /// One pass of sound local tightening. Returns whether anything changed,
    /// or the name of a relation whose feasible set became empty.
    fn tighten(&mut self) -> std::result::Result<bool, String> {
        let mut changed = false;

        for k in 0..9 {
            let (rk, rk1) = (self.r[k], self.r[k + 1]);
            let t = &mut self.t[k];
            changed |= t.raise(rk.lo + rk1.lo);
            changed |= t.lower(add_hi(rk.hi, rk1.hi));
            let t = *t;
            changed |= self.r[k].raise(t.lo - rk1.hi.unwrap_or(i64::MAX / 4));
            changed |= self.r[k].lower(sub_hi(t.hi, rk1.lo));
            changed |= self.r[k + 1].raise(t.lo - rk.hi.unwrap_or(i64::MAX / 4));
            changed |= self.r[k + 1].lower(sub_hi(t.hi, rk.lo));
            if self.t[k].empty() || self.r[k].empty() || self.r[k + 1].empty() {
                return Err(format!("exactness at {}", position_name(k)));
            }
        }

        // chi(B) = chi(A) + chi(C)
        let [ca, cb, cc] = self.chi;
        if let (Some(a), Some(c)) = (ca.value(), cc.value()) {
            changed |= self.chi[1].raise(a + c) | self.chi[1].lower(Some(a + c));
        }
        if let (Some(a), Some(b)) = (ca.value(), cb.value()) {
            changed |= self.chi[2].raise(b - a) | self.chi[2].lower(Some(b - a));
        }
        if let (Some(b), Some(c)) = (cb.value(), cc.value()) {
            changed |= self.chi[0].raise(b - c) | self.chi[0].lower(Some(b - c));
        }
        if self.chi.iter().any(Bound::empty) {
            return Err("additivity of Euler characteristics".into());
        }

        for j in 0..3 {
            let terms = chi_terms(j);
            let (lo, hi) = self.signed_sum(&terms, None);
            if let Some(l) = lo {
                changed |= self.chi[j].raise(l);
            }
            changed |= self.chi[j].lower(hi);
            if self.chi[j].empty() {
                return Err(format!("Euler characteristic of {}", TERM_NAMES[j]));
            }
            // s_x t_x = chi - sum_{y != x} s_y t_y
            let Some(c) = self.chi[j].value() else { continue };
            for &(x, sx) in &terms {
                let (rest_lo, rest_hi) = self.signed_sum(&terms, Some(x));
                let (lo, hi) = if sx > 0 {
                    (rest_hi.map(|h| c - h), rest_lo.map(|l| c - l))
                } else {
                    (rest_lo.map(|l| l - c), rest_hi.map(|h| h - c))
                };
                if let Some(l) = lo {
                    changed |= self.t[x].raise(l);
                }
                changed |= self.t[x].lower(hi);
                if self.t[x].empty() {
                    return Err(format!("Euler characteristic of {}", TERM_NAMES[j]));
                }
            }
        }
        Ok(changed)
    }

    /// When every dimension is pinned, checks that some rank assignment
    /// realizes them.
    fn pinned_solution(&self) -> Option<std::result::Result<(), String>> {
        let t: Vec<i64> = self.t.iter().map(Bound::value).collect::<Option<_>>()?;
        let mut r = 0i64;
        for (k, tk) in t.iter().enumerate() {
            r = tk - r;
            if r < 0 {
                return Some(Err(format!("exactness at {}", position_name(k))));
            }
        }
        if r != 0 {
            return Some(Err("exactness at H^2(C)".into()));
        }
        for j in 0..3 {
            let chi: i64 = chi_terms(j).iter().map(|&(k, s)| s * t[k]).sum();
            if self.chi[j].lo > chi || self.chi[j].hi.is_some_and(|h| h < chi) {
                return Some(Err(format!("Euler characteristic of {}", TERM_NAMES[j])));
            }
        }
        Some(Ok(()))
    }

    fn into_instance(self, template: &LesInstance) -> LesInstance {
        let mut out = *template;
        for (j, term) in out.terms_mut().into_iter().enumerate() {
            for i in 0..3 {
                let b = self.t[3 * i + j];
                term.lo[i] = b.lo as u64;
                term.hi[i] = b.hi.map(|h| h as u64);
            }
            term.chi = self.chi[j].value();
        }
        out
    }
}

/// Coefficients of `t_k` in the rank variables `r_1..r_8`.
fn t_row(k: usize) -> [i64; 8] {
    let mut row = [0; 8];
    if k >= 1 {
        row[k - 1] = 1;
    }
    if k < 8 {
        row[k] = 1;
    }
    row
}

fn chi_row(j: usize) -> [i64; 8] {
    let mut row = [0; 8];
    for (k, s) in chi_terms(j) {
        for (x, y) in row.iter_mut().zip(t_row(k)) {
            *x += s * y;
        }
    }
    row
}

fn q_row(row: [i64; 8]) -> Vec<Rational> {
    row.iter().map(|&x| Rational::from_int(x)).collect()
}

fn build_lp(model: &RankModel, with_chi: bool) -> LinearProgram<Rational> {
    let mut lp = LinearProgram::new(8);
    for k in 0..9 {
        let b = model.t[k];
        if b.lo > 0 {
            lp.add(q_row(t_row(k)), Relation::Ge, Rational::from_int(b.lo));
        }
        if let Some(h) = b.hi {
            lp.add(q_row(t_row(k)), Relation::Le, Rational::from_int(h));
        }
    }
    if with_chi {
        for j in 0..3 {
            if let Some(c) = model.chi[j].value() {
                lp.add(q_row(chi_row(j)), Relation::Eq, Rational::from_int(c));
            }
        }
    }
    lp
}

fn as_integer(v: Rational) -> Result<i64> {
    if !v.is_integer() {
        return Err(Error::Internal(format!("non-integral bound {v} in rank model")));
    }
    i64::try_from(v.to_integer()).map_err(|_| Error::Internal("rank bound overflow".into()))
}

/// Exact range of a row over the rank polytope; `floor` stands in for an
/// unbounded minimum.
fn lp_range(lp: &LinearProgram<Rational>, row: [i64; 8], floor: i64) -> Result<(i64, Option<i64>)> {
    let obj = q_row(row);
    let lo = match lp.minimize(&obj) {
        LpOutcome::Optimal(v) => as_integer(v)?,
        LpOutcome::Unbounded => floor,
        LpOutcome::Infeasible => return Err(Error::Internal("rank model became infeasible".into())),
    };
    let hi = match lp.maximize(&obj) {
        LpOutcome::Optimal(v) => Some(as_integer(v)?),
        LpOutcome::Unbounded => None,
        LpOutcome::Infeasible => return Err(Error::Internal("rank model became infeasible".into())),
    };
    Ok((lo, hi))
}

const LOCAL_ROUNDS: usize = 64;

/// Lower bound standing in for an Euler characteristic unbounded below.
const CHI_FLOOR: i64 = i64::MIN / 4;

/// Tightens every dimension of the sequence to its exact feasible range.
pub fn propagate(seq: &LesInstance) -> Result<LesInstance> {
    let mut model = RankModel::from_instance(seq);
    for (j, term) in seq.terms().iter().enumerate() {
        for i in 0..3 {
            if term.hi[i].is_some_and(|h| h < term.lo[i]) {
                return Err(Error::Inconsistent {
                    relation: format!("empty bounds for h^{i}({})", TERM_NAMES[j]),
                });
            }
        }
    }

    for _ in 0..LOCAL_ROUNDS {
        match model.tighten() {
            Ok(true) => continue,
            Ok(false) => break,
            Err(relation) => return Err(Error::Inconsistent { relation }),
        }
    }

    if let Some(check) = model.pinned_solution() {
        return match check {
            Ok(()) => Ok(model.into_instance(seq)),
            Err(relation) => Err(Error::Inconsistent { relation }),
        };
    }

    let lp = build_lp(&model, true);
    if !lp.is_feasible() {
        let relation = if build_lp(&model, false).is_feasible() {
            "Euler characteristic constraints versus exactness".to_string()
        } else {
            "dimension bounds versus exactness".to_string()
        };
        return Err(Error::Inconsistent { relation });
    }
    for k in 0..9 {
        if model.t[k].value().is_some() {
            continue;
        }
        let (lo, hi) = lp_range(&lp, t_row(k), 0)?;
        model.t[k] = Bound { lo, hi };
    }
    for j in 0..3 {
        if model.chi[j].value().is_some() {
            continue;
        }
        let (lo, hi) = lp_range(&lp, chi_row(j), CHI_FLOOR)?;
        model.chi[j] = Bound { lo, hi };
    }
    Ok(model.into_instance(seq))
}

/// Where a sequence comes from, for provenance in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// A standard exact sequence of sheaves.
    Standard,
    /// A sequence whose exactness (or splitting) is taken as an input the
    /// calculus cannot derive.
    Axiom,
}

#[derive(Clone, Debug)]
struct SequenceEntry {
    label: String,
    terms: [usize; 3],
    kind: SequenceKind,
}

/// A set of named sheaves linked by short exact sequences.
#[derive(Clone, Debug, Default)]
pub struct SequenceSystem {
    names: Vec<String>,
    terms: Vec<CohInterval>,
    sequences: Vec<SequenceEntry>,
}

impl SequenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    fn id(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.terms.push(CohInterval::unknown());
                self.names.len() - 1
            }
        }
    }

    /// Adds constraints on a term, intersecting with what is already known.
    pub fn constrain(&mut self, name: &str, interval: CohInterval) -> Result<()> {
        let i = self.id(name);
        self.terms[i] = self.terms[i].intersect(&interval).map_err(|e| Error::Inconsistent {
            relation: format!("{name}: {e}"),
        })?;
        Ok(())
    }

    pub fn known(&mut self, name: &str, v: CohVector) -> Result<()> {
        self.constrain(name, CohInterval::exact(v))
    }

    pub fn sequence(&mut self, label: &str, sub: &str, mid: &str, quot: &str) {
        self.push(label, [sub, mid, quot], SequenceKind::Standard);
    }

    pub fn axiom_sequence(&mut self, label: &str, sub: &str, mid: &str, quot: &str) {
        self.push(label, [sub, mid, quot], SequenceKind::Axiom);
    }

    fn push(&mut self, label: &str, names: [&str; 3], kind: SequenceKind) {
        let terms = names.map(|n| self.id(n));
        self.sequences.push(SequenceEntry { label: label.to_string(), terms, kind });
    }

    pub fn uses_axioms(&self) -> bool {
        self.sequences.iter().any(|s| s.kind == SequenceKind::Axiom)
    }

    pub fn axiom_labels(&self) -> Vec<&str> {
        self.sequences
            .iter()
            .filter(|s| s.kind == SequenceKind::Axiom)
            .map(|s| s.label.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<&CohInterval> {
        self.names.iter().position(|n| n == name).map(|i| &self.terms[i])
    }

    pub fn forced(&self, name: &str) -> Option<CohVector> {
        self.get(name)?.forced()
    }

    /// Propagates over all sequences until nothing tightens.
    pub fn solve(&mut self) -> Result<()> {
        loop {
            let mut changed = false;
            for seq in &self.sequences {
                let [a, b, c] = seq.terms;
                let les = LesInstance { a: self.terms[a], b: self.terms[b], c: self.terms[c] };
                let out = propagate(&les).map_err(|e| Error::SequenceInconsistent {
                    sequence: seq.label.clone(),
                    relation: match e {
                        Error::Inconsistent { relation } => relation,
                        other => other.to_string(),
                    },
                })?;
                for (id, new) in [(a, out.a), (b, out.b), (c, out.c)] {
                    if self.terms[id] != new {
                        self.terms[id] = new;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Snapshot of every term, by name.
    pub fn intervals(&self) -> BTreeMap<String, CohInterval> {
        self.names.iter().cloned().zip(self.terms.iter().copied()).collect()
    }
}

/// Runs a system to its fixed point and returns every term's bounds.
pub fn chain(mut system: SequenceSystem) -> Result<BTreeMap<String, CohInterval>> {
    system.solve()?;
    Ok(system.intervals())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{determinant, lift};
    use num_traits::Signed;

    fn v(h0: u64, h1: u64, h2: u64) -> CohVector {
        CohVector::new(h0, h1, h2)
    }

    /// Exact min/max by enumerating every rank vector with entries <= cap.
    fn brute_force(seq: &LesInstance, cap: i64) -> Option<([i64; 9], [i64; 9])> {
        let mut lo = [i64::MAX; 9];
        let mut hi = [i64::MIN; 9];
        let mut found = false;
        let mut r = [0i64; 10];
        let total = (cap + 1).pow(8);
        for code in 0..total {
            let mut c = code;
            for x in r.iter_mut().skip(1).take(8) {
                *x = c % (cap + 1);
                c /= cap + 1;
            }
            let t: Vec<i64> = (0..9).map(|k| r[k] + r[k + 1]).collect();
            let ok = seq.terms().iter().enumerate().all(|(j, term)| {
                (0..3).all(|i| {
                    let x = t[3 * i + j];
                    x >= term.lo[i] as i64 && term.hi[i].is_none_or(|h| x <= h as i64)
                }) && term.chi.is_none_or(|ch| t[j] - t[3 + j] + t[6 + j] == ch)
            });
            if ok {
                found = true;
                for k in 0..9 {
                    lo[k] = lo[k].min(t[k]);
                    hi[k] = hi[k].max(t[k]);
                }
            }
        }
        found.then_some((lo, hi))
    }

    #[test]
    fn lp_bounds_are_integral() {
        // Every square minor of the rank-model matrix is 0 or +-1.
        let mut rows: Vec<Vec<i64>> = (0..9).map(|k| t_row(k).to_vec()).collect();
        rows.extend((0..3).map(|j| chi_row(j).to_vec()));
        let n_rows = rows.len();
        for size in 1..=8usize {
            for rmask in 0u32..(1 << n_rows) {
                if rmask.count_ones() as usize != size {
                    continue;
                }
                let rsel: Vec<usize> = (0..n_rows).filter(|i| rmask & (1 << i) != 0).collect();
                for cmask in 0u32..(1 << 8) {
                    if cmask.count_ones() as usize != size {
                        continue;
                    }
                    let csel: Vec<usize> = (0..8).filter(|i| cmask & (1 << i) != 0).collect();
                    let sub: Vec<Vec<i64>> =
                        rsel.iter().map(|&r| csel.iter().map(|&c| rows[r][c]).collect()).collect();
                    let d = determinant(&lift::<Rational>(&sub));
                    assert!(d.abs() <= Rational::from_int(1), "minor {rsel:?} x {csel:?} = {d}");
                }
            }
        }
    }

    #[test]
    fn relative_tangent_twist_is_forced() {
        let seq = LesInstance::new(v(0, 1, 0), CohInterval::unknown(), v(0, 1, 0));
        let out = propagate(&seq).unwrap();
        assert_eq!(out.b.forced(), Some(v(0, 2, 0)));
    }

    #[test]
    fn euler_sequence_twist_is_forced() {
        for (m, k) in [(10u64, 1u64), (7, 3), (3, 0)] {
            let seq = LesInstance::new(v(0, 0, 1), v(m * k, 0, 0), CohInterval::unknown());
            let out = propagate(&seq).unwrap();
            assert_eq!(out.c.forced(), Some(v(m * k, 1, 0)));
        }
    }

    #[test]
    fn untwisted_tangent_sequence_on_f3_stays_partial() {
        let seq = LesInstance::new(v(5, 2, 0), CohInterval::unknown(), v(3, 0, 0));
        let out = propagate(&seq).unwrap();
        assert_eq!((out.b.lo[0], out.b.hi[0]), (6, Some(8)));
        assert_eq!((out.b.lo[1], out.b.hi[1]), (0, Some(2)));
        assert!(out.b.is_forced(2) && out.b.lo[2] == 0);
        assert_eq!(out.b.chi, Some(6));
        assert!(!out.b.is_forced(0));
    }

    #[test]
    fn infeasible_data_is_named() {
        // H0 of the middle cannot exceed h0(A) + h0(C).
        let seq = LesInstance::new(v(1, 0, 0), v(5, 0, 0), v(1, 0, 0));
        let err = propagate(&seq).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { .. }), "{err}");
        let seq = LesInstance::new(v(1, 0, 0), CohInterval::with_chi_only(7), v(1, 0, 0));
        assert!(propagate(&seq).is_err());
    }

    #[test]
    fn unbounded_terms_stay_unbounded() {
        let seq = LesInstance::new(v(1, 0, 0), CohInterval::unknown(), CohInterval::unknown());
        let out = propagate(&seq).unwrap();
        assert_eq!(out.b.lo[0], 1);
        assert_eq!(out.b.hi[0], None);
        assert_eq!(out.c.hi[1], None);
    }

    #[test]
    fn matches_brute_force_on_small_instances() {
        // Deterministic pseudo-random instances with small upper bounds.
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut next = |m: u64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % m
        };
        let mut checked = 0;
        for _ in 0..120 {
            let mut seq = LesInstance::new(CohInterval::unknown(), CohInterval::unknown(), CohInterval::unknown());
            for term in seq.terms_mut() {
                for i in 0..3 {
                    match next(4) {
                        0 => {}
                        1 => {
                            let x = next(3);
                            term.lo[i] = x;
                            term.hi[i] = Some(x);
                        }
                        _ => {
                            let lo = next(2);
                            term.lo[i] = lo;
                            term.hi[i] = Some(lo + next(3));
                        }
                    }
                }
                if next(3) == 0 {
                    term.chi = Some(next(5) as i64 - 2);
                }
            }
            // Cap ranks so that brute force is exhaustive: every term <= 4
            // wherever bounded; unknown terms get an explicit cap of 4.
            for term in seq.terms_mut() {
                for i in 0..3 {
                    if term.hi[i].is_none() {
                        term.hi[i] = Some(4);
                    }
                }
            }
            let brute = brute_force(&seq, 4);
            match (propagate(&seq), brute) {
                (Ok(out), Some((lo, hi))) => {
                    for k in 0..9 {
                        let term = out.terms()[k % 3];
                        assert_eq!(term.lo[k / 3] as i64, lo[k], "lo at {k} for {seq:?}");
                        assert_eq!(term.hi[k / 3].map(|h| h as i64), Some(hi[k]), "hi at {k}");
                    }
                    checked += 1;
                }
                (Err(_), None) => {}
                (got, want) => panic!("disagreement on {seq:?}: {got:?} vs {want:?}"),
            }
        }
        assert!(checked > 20, "too few feasible instances ({checked})");
    }

    #[test]
    fn chain_threads_shared_terms() {
        let mut sys = SequenceSystem::new();
        sys.known("L", v(2, 0, 0)).unwrap();
        sys.known("M", v(0, 1, 0)).unwrap();
        sys.sequence("first", "L", "E", "M");
        sys.known("O", v(1, 0, 0)).unwrap();
        sys.sequence("second", "O", "F", "E");
        let map = chain(sys).unwrap();
        assert_eq!(map["E"].chi, Some(1));
        assert_eq!(map["F"].chi, Some(2));
        assert_eq!((map["E"].lo[0], map["E"].hi[0]), (2, Some(2)));
        assert_eq!((map["E"].lo[1], map["E"].hi[1]), (1, Some(1)));
    }

    #[test]
    fn chain_reports_the_failing_sequence() {
        let mut sys = SequenceSystem::new();
        sys.known("A", v(1, 0, 0)).unwrap();
        sys.known("B", v(5, 0, 0)).unwrap();
        sys.known("C", v(1, 0, 0)).unwrap();
        sys.sequence("broken", "A", "B", "C");
        match sys.solve() {
            Err(Error::SequenceInconsistent { sequence, .. }) => assert_eq!(sequence, "broken"),
            other => panic!("{other:?}"),
        }
    }
}
