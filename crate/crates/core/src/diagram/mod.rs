//! Morse-sliced tangle diagrams in a rectangle with punctures.
//!
//! A diagram is read bottom to top as a list of events acting on a row of strands. Between
//! consecutive events sits a *level*; level `l` lies just below event `l`, so a diagram with
//! `n` events has levels `0..=n`, level 0 carrying the bottom endpoints and level `n` the top
//! ones. A *segment* is a strand at a given (level, slot). Punctures sit in gaps between
//! slots: gap `p` lies between slots `p - 1` and `p`.
//!
//! Framing is the blackboard framing throughout.

mod build;
mod edit;
mod json;
mod random;
mod trace;
mod winding;

pub use build::{multicurve_diagram, reference_diagram};
pub use edit::{glue_diagrams, GlueMode, RMove, Smoothing};
pub use json::{DiagramJson, EndpointDir, EndpointsJson, EventJson};
pub use random::{random_diagram, RandomParams};
pub use trace::{Component, ComponentKind, Endpoint, Incidence, Role, Side};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SkeinError};
pub(crate) use trace::Trace;

/// Which strand of a crossing passes over: the one entering from the left slot or the
/// right slot at the bottom of the crossing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Over {
    L,
    R,
}

impl Over {
    pub fn flip(self) -> Over {
        match self {
            Over::L => Over::R,
            Over::R => Over::L,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Event {
    /// New adjacent strands at slots `i, i + 1`.
    Cup(usize),
    /// Joins the strands at slots `i, i + 1`.
    Cap(usize),
    /// The strands at slots `i, i + 1` exchange places.
    Cross(usize, Over),
    /// Punctures at the given gaps, numbered in event order.
    Punctures(Vec<usize>),
}

impl Event {
    pub fn is_cross(&self) -> bool {
        matches!(self, Event::Cross(..))
    }
}

/// A validated diagram, optionally oriented.
///
/// Orientation is stored as one sign per component, relative to the component's canonical
/// direction: its first segment (lowest level, then leftmost slot) traversed upward.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SlicedDiagram {
    bottom: usize,
    top: usize,
    events: Vec<Event>,
    orientation: Option<Vec<i8>>,
}

/// Checks slot arithmetic and returns the strand count at every level.
pub fn validate_events(bottom: usize, top: usize, events: &[Event]) -> Result<Vec<usize>> {
    let mut counts = Vec::with_capacity(events.len() + 1);
    let mut count = bottom;
    let mut genus = 0;
    counts.push(count);
    for (event, ev) in events.iter().enumerate() {
        match ev {
            Event::Cup(pos) => {
                if *pos > count {
                    return Err(SkeinError::SlotOverflow { event, pos: *pos, count });
                }
                count += 2;
            }
            Event::Cap(pos) | Event::Cross(pos, _) => {
                if count < 2 {
                    return Err(SkeinError::SlotUnderflow { event, pos: *pos, count });
                }
                if pos + 1 >= count {
                    return Err(SkeinError::SlotOverflow { event, pos: *pos, count });
                }
                if matches!(ev, Event::Cap(_)) {
                    count -= 2;
                }
            }
            Event::Punctures(gaps) => {
                if gaps.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(SkeinError::UnsortedGaps { event });
                }
                if let Some(&gap) = gaps.iter().find(|&&g| g > count) {
                    return Err(SkeinError::GapOutOfRange { event, gap, count });
                }
                genus += gaps.len();
            }
        }
        counts.push(count);
    }
    if count != top {
        return Err(SkeinError::ArityMismatch { expected: top, found: count });
    }
    if genus > 0 && (bottom > 0 || top > 0) {
        return Err(SkeinError::TangleWithPunctures { genus });
    }
    Ok(counts)
}

impl SlicedDiagram {
    pub fn new(bottom: usize, top: usize, events: Vec<Event>) -> Result<Self> {
        validate_events(bottom, top, &events)?;
        Ok(Self { bottom, top, events, orientation: None })
    }

    /// A closed diagram.
    pub fn closed(events: Vec<Event>) -> Result<Self> {
        Self::new(0, 0, events)
    }

    /// The crossingless unknot `[Cup(0), Cap(0)]`.
    pub fn unknot() -> Self {
        Self::closed(vec![Event::Cup(0), Event::Cap(0)]).expect("valid")
    }

    /// `n` vertical strands.
    pub fn identity(n: usize) -> Self {
        Self::new(n, n, Vec::new()).expect("valid")
    }

    pub fn empty() -> Self {
        Self::identity(0)
    }

    /// Attach per-component orientation signs (each `+1` or `-1`).
    pub fn with_orientation(mut self, signs: Vec<i8>) -> Result<Self> {
        let n = self.trace().comps.len();
        if signs.len() != n {
            return Err(SkeinError::OrientationInconsistent(format!(
                "{} orientation signs given for {n} components",
                signs.len()
            )));
        }
        if let Some(bad) = signs.iter().find(|s| s.abs() != 1) {
            return Err(SkeinError::OrientationInconsistent(format!("orientation sign {bad} is not +1 or -1")));
        }
        self.orientation = Some(signs);
        Ok(self)
    }

    /// Orient every component along its canonical direction.
    pub fn oriented_canonically(self) -> Self {
        let n = self.trace().comps.len();
        self.with_orientation(vec![1; n]).expect("valid")
    }

    /// Orient from endpoint directions (`+1` = pointing up, i.e. into the rectangle at the
    /// bottom and out of it at the top) and signs for the closed components in order.
    pub fn with_endpoint_orientation(self, bottom: &[i8], top: &[i8], loops: &[i8]) -> Result<Self> {
        if bottom.len() != self.bottom || top.len() != self.top {
            return Err(SkeinError::DimensionMismatch {
                expected: self.bottom + self.top,
                found: bottom.len() + top.len(),
            });
        }
        let incoming = bottom.iter().filter(|&&d| d > 0).count() + top.iter().filter(|&&d| d < 0).count();
        let outgoing = bottom.len() + top.len() - incoming;
        if incoming != outgoing {
            return Err(SkeinError::UnbalancedMarking { incoming, outgoing });
        }
        let trace = self.trace();
        let top_level = self.events.len();
        let mut constraints: Vec<(usize, usize, i8)> = Vec::new();
        constraints.extend(bottom.iter().enumerate().map(|(j, &d)| (0, j, d)));
        constraints.extend(top.iter().enumerate().map(|(j, &d)| (top_level, j, d)));
        let loop_comps: Vec<usize> = (0..trace.comps.len()).filter(|&c| trace.comps[c].closed).collect();
        if loops.len() > loop_comps.len() {
            return Err(SkeinError::OrientationInconsistent(format!(
                "{} loop signs given for {} closed components",
                loops.len(),
                loop_comps.len()
            )));
        }
        for (&c, &sign) in loop_comps.iter().zip(loops) {
            let (l, j) = trace.position(trace.comps[c].first);
            constraints.push((l, j, sign));
        }
        let signs = trace.orientation_from(&constraints)?;
        Ok(Self { orientation: Some(signs), ..self })
    }

    pub fn unoriented(&self) -> Self {
        Self { orientation: None, ..self.clone() }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn orientation(&self) -> Option<&[i8]> {
        self.orientation.as_deref()
    }

    pub fn is_oriented(&self) -> bool {
        self.orientation.is_some()
    }

    pub fn is_closed(&self) -> bool {
        self.bottom == 0 && self.top == 0
    }

    /// Number of punctures.
    pub fn genus(&self) -> usize {
        self.events
            .iter()
            .map(|e| match e {
                Event::Punctures(g) => g.len(),
                _ => 0,
            })
            .sum()
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_cross()).count()
    }

    pub fn crossing_events(&self) -> Vec<usize> {
        (0..self.events.len()).filter(|&e| self.events[e].is_cross()).collect()
    }

    /// Strand count at each level.
    pub fn counts(&self) -> Vec<usize> {
        validate_events(self.bottom, self.top, &self.events).expect("diagram invariants hold")
    }

    /// Re-checks every invariant, including orientation consistency.
    pub fn validate(&self) -> Result<()> {
        validate_events(self.bottom, self.top, &self.events)?;
        if let Some(signs) = &self.orientation {
            let trace = self.trace();
            if signs.len() != trace.comps.len() || signs.iter().any(|s| s.abs() != 1) {
                return Err(SkeinError::OrientationInconsistent("bad orientation signs".into()));
            }
        }
        Ok(())
    }

    pub(crate) fn trace(&self) -> Trace {
        Trace::new(self)
    }

    /// Direction (`+1` up, `-1` down) of every segment, indexed like [`Trace::seg`].
    pub(crate) fn directions(&self, trace: &Trace) -> Result<Vec<i8>> {
        let signs = self.orientation.as_ref().ok_or(SkeinError::Unoriented)?;
        Ok(trace.directions(signs))
    }

    pub fn component_count(&self) -> usize {
        self.trace().comps.len()
    }

    /// Components in canonical order, with oriented traversals when an orientation is set.
    pub fn components(&self) -> Vec<Component> {
        trace::components(self)
    }

    /// Signs of the crossings, keyed by event index.
    pub fn crossing_signs(&self) -> Result<Vec<(usize, i8)>> {
        let trace = self.trace();
        let dirs = self.directions(&trace)?;
        Ok(self
            .events
            .iter()
            .enumerate()
            .filter_map(|(e, ev)| match ev {
                Event::Cross(i, over) => {
                    let dl = dirs[trace.seg(e, *i)];
                    let dr = dirs[trace.seg(e, i + 1)];
                    Some((e, crossing_sign(dl, dr, *over)))
                }
                _ => None,
            })
            .collect())
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.crossing_signs()?.iter().map(|(_, s)| *s as i64).sum())
    }

    /// Sum of the component windings around each puncture.
    pub fn winding_vector(&self) -> Result<Vec<i64>> {
        let per = self.component_windings()?;
        let g = self.genus();
        Ok((0..g).map(|j| per.iter().map(|w| w[j]).sum()).collect())
    }

    /// `[component][puncture]` winding numbers under the current orientation.
    pub fn component_windings(&self) -> Result<Vec<Vec<i64>>> {
        let trace = self.trace();
        let dirs = self.directions(&trace)?;
        Ok(winding::component_windings(self, &trace, &dirs))
    }

    /// Winding number of one component around puncture `j` (0-based).
    pub fn winding(&self, component: usize, puncture: usize) -> Result<i64> {
        let per = self.component_windings()?;
        let row = per
            .get(component)
            .ok_or_else(|| SkeinError::InvalidLocation(format!("no component {component}")))?;
        row.get(puncture)
            .copied()
            .ok_or_else(|| SkeinError::InvalidLocation(format!("no puncture {puncture}")))
    }
}

/// Sign of `Cross(i, over)` given the vertical directions of the strands entering from the
/// left and right slots.
pub fn crossing_sign(dl: i8, dr: i8, over: Over) -> i8 {
    match over {
        Over::L => dl * dr,
        Over::R => -dl * dr,
    }
}
