//! Fault injection for mutation testing of the verification battery.
//!
//! A fault perturbs one structural constant (the canonical class, the
//! intersection form, or the pushforward degree list) on the current thread
//! only. Production code never sets one; the battery tests do, and expect at
//! least one failing claim per fault.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Shifts the C0 coefficient of the Hirzebruch canonical class.
    CanonicalSection(i64),
    /// Shifts the fiber coefficient of the Hirzebruch canonical class.
    CanonicalFiber(i64),
    /// Shifts the degree of the canonical class of the plane.
    CanonicalPlane(i64),
    /// Shifts C0.C0 away from -e.
    SectionSelfIntersection(i64),
    /// Shifts C0.f away from 1.
    SectionFiberIntersection(i64),
    /// Shifts f.f away from 0.
    FiberSelfIntersection(i64),
    /// Shifts the plane intersection form H.H away from 1.
    PlaneSelfIntersection(i64),
    /// Shifts the leading degree b of the pushforward list.
    PushforwardStart(i64),
    /// Shifts the step e between consecutive pushforward degrees.
    PushforwardStep(i64),
    /// Shifts the number of summands a + 1.
    PushforwardLength(i64),
}

impl Fault {
    /// Every single-constant off-by-one mutation, in both directions.
    pub fn all_off_by_one() -> Vec<Fault> {
        let mut out = Vec::new();
        for d in [-1, 1] {
            out.extend([
                Fault::CanonicalSection(d),
                Fault::CanonicalFiber(d),
                Fault::CanonicalPlane(d),
                Fault::SectionSelfIntersection(d),
                Fault::SectionFiberIntersection(d),
                Fault::FiberSelfIntersection(d),
                Fault::PlaneSelfIntersection(d),
                Fault::PushforwardStart(d),
                Fault::PushforwardStep(d),
                Fault::PushforwardLength(d),
            ]);
        }
        out
    }
}

thread_local! {
    static ACTIVE: Cell<Option<Fault>> = const { Cell::new(None) };
}

/// Runs `body` with `fault` active on this thread.
pub fn with_fault<R>(fault: Fault, body: impl FnOnce() -> R) -> R {
    struct Reset(Option<Fault>);
    impl Drop for Reset {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }
    let _reset = Reset(ACTIVE.with(|a| a.replace(Some(fault))));
    body()
}

pub fn active() -> Option<Fault> {
    ACTIVE.with(Cell::get)
}

/// The shift for the fault selected by `pick`, or 0.
pub(crate) fn shift(pick: impl Fn(Fault) -> Option<i64>) -> i64 {
    active().and_then(pick).unwrap_or(0)
}
