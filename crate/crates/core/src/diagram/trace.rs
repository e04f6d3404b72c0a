use serde::Serialize;

use super::{Event, Over, SlicedDiagram};
use crate::error::{Result, SkeinError};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bottom,
    Top,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Endpoint {
    pub side: Side,
    pub index: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentKind {
    Loop,
    Strand { start: Endpoint, end: Endpoint },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Passes through a cup or cap turn.
    Turn,
    /// Passes vertically past an event acting on other slots.
    Through,
    Over,
    Under,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Incidence {
    pub event: usize,
    pub role: Role,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Component {
    pub kind: ComponentKind,
    /// Events met along the traversal, in order.
    pub incidences: Vec<Incidence>,
    /// Orientation sign relative to the canonical direction (`+1` when unoriented).
    pub orientation: i8,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct CompInfo {
    pub closed: bool,
    /// Flat index of the first segment.
    pub first: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Step {
    pub level: usize,
    pub slot: usize,
    pub travel: i8,
    pub event: usize,
    pub role: Role,
}

/// Segment connectivity of a diagram: which component each segment belongs to and its
/// direction relative to the component's canonical direction.
#[derive(Clone, Debug)]
pub(crate) struct Trace {
    pub counts: Vec<usize>,
    offsets: Vec<usize>,
    pub comp: Vec<usize>,
    pub rel: Vec<i8>,
    pub comps: Vec<CompInfo>,
}

/// Move one step from segment `(level, slot)` travelling up (`travel = 1`) or down.
/// Returns `None` at a boundary endpoint.
pub(crate) fn step(events: &[Event], level: usize, slot: usize, travel: i8) -> Option<Step> {
    let straight = |level, slot, event| Step { level, slot, travel, event, role: Role::Through };
    let turn = |level, slot, event| Step { level, slot, travel: -travel, event, role: Role::Turn };
    if travel > 0 {
        let e = level;
        let ev = events.get(e)?;
        let up = level + 1;
        Some(match ev {
            Event::Cup(i) => straight(up, if slot < *i { slot } else { slot + 2 }, e),
            Event::Cap(i) if slot == *i => turn(level, i + 1, e),
            Event::Cap(i) if slot == i + 1 => turn(level, *i, e),
            Event::Cap(i) => straight(up, if slot < *i { slot } else { slot - 2 }, e),
            Event::Cross(i, over) if slot == *i || slot == i + 1 => {
                let from_left = slot == *i;
                let role = if from_left == (*over == Over::L) { Role::Over } else { Role::Under };
                Step { level: up, slot: if from_left { i + 1 } else { *i }, travel, event: e, role }
            }
            Event::Cross(..) | Event::Punctures(_) => straight(up, slot, e),
        })
    } else {
        if level == 0 {
            return None;
        }
        let e = level - 1;
        let down = level - 1;
        Some(match &events[e] {
            Event::Cup(i) if slot == *i => turn(level, i + 1, e),
            Event::Cup(i) if slot == i + 1 => turn(level, *i, e),
            Event::Cup(i) => straight(down, if slot < *i { slot } else { slot - 2 }, e),
            Event::Cap(i) => straight(down, if slot < *i { slot } else { slot + 2 }, e),
            Event::Cross(i, over) if slot == *i || slot == i + 1 => {
                // the strand arriving at slot i + 1 from below entered from the left slot
                let from_left = slot == i + 1;
                let role = if from_left == (*over == Over::L) { Role::Over } else { Role::Under };
                Step { level: down, slot: if from_left { *i } else { i + 1 }, travel, event: e, role }
            }
            Event::Cross(..) | Event::Punctures(_) => straight(down, slot, e),
        })
    }
}

impl Trace {
    pub fn new(d: &SlicedDiagram) -> Self {
        let counts = d.counts();
        let mut offsets = Vec::with_capacity(counts.len() + 1);
        let mut total = 0;
        for c in &counts {
            offsets.push(total);
            total += c;
        }
        offsets.push(total);
        let mut trace = Trace {
            counts,
            offsets,
            comp: vec![usize::MAX; total],
            rel: vec![0; total],
            comps: Vec::new(),
        };
        let events = d.events();
        for first in 0..total {
            if trace.comp[first] != usize::MAX {
                continue;
            }
            let c = trace.comps.len();
            trace.comp[first] = c;
            trace.rel[first] = 1;
            let (l0, j0) = trace.position(first);
            let mut closed = false;
            let (mut l, mut j, mut t) = (l0, j0, 1i8);
            while let Some(s) = step(events, l, j, t) {
                if (s.level, s.slot) == (l0, j0) {
                    debug_assert_eq!(s.travel, 1, "closed component must return with the same direction");
                    closed = true;
                    break;
                }
                let seg = trace.seg(s.level, s.slot);
                trace.comp[seg] = c;
                trace.rel[seg] = s.travel;
                (l, j, t) = (s.level, s.slot, s.travel);
            }
            if !closed {
                let (mut l, mut j, mut t) = (l0, j0, -1i8);
                while let Some(s) = step(events, l, j, t) {
                    let seg = trace.seg(s.level, s.slot);
                    trace.comp[seg] = c;
                    trace.rel[seg] = -s.travel;
                    (l, j, t) = (s.level, s.slot, s.travel);
                }
            }
            trace.comps.push(CompInfo { closed, first });
        }
        trace
    }

    pub fn seg(&self, level: usize, slot: usize) -> usize {
        debug_assert!(slot < self.counts[level]);
        self.offsets[level] + slot
    }

    pub fn position(&self, seg: usize) -> (usize, usize) {
        let level = self.offsets.partition_point(|&o| o <= seg) - 1;
        (level, seg - self.offsets[level])
    }

    pub fn directions(&self, signs: &[i8]) -> Vec<i8> {
        self.comp.iter().zip(&self.rel).map(|(&c, &r)| signs[c] * r).collect()
    }

    /// Component signs that realize the given `(level, slot, direction)` constraints;
    /// unconstrained components get `+1`.
    pub fn orientation_from(&self, constraints: &[(usize, usize, i8)]) -> Result<Vec<i8>> {
        let mut signs: Vec<Option<i8>> = vec![None; self.comps.len()];
        for &(l, j, d) in constraints {
            let seg = self.seg(l, j);
            let c = self.comp[seg];
            let want = d * self.rel[seg];
            match signs[c] {
                None => signs[c] = Some(want),
                Some(s) if s == want => {}
                Some(_) => {
                    return Err(SkeinError::OrientationInconsistent(format!(
                        "component {c} is forced in both directions (segment at level {l}, slot {j})"
                    )))
                }
            }
        }
        Ok(signs.into_iter().map(|s| s.unwrap_or(1)).collect())
    }
}

pub(super) fn components(d: &SlicedDiagram) -> Vec<Component> {
    let trace = d.trace();
    let events = d.events();
    let top_level = events.len();
    let signs: Vec<i8> = d.orientation().map(<[i8]>::to_vec).unwrap_or_else(|| vec![1; trace.comps.len()]);
    let dirs = trace.directions(&signs);
    // upward travel enters at the bottom and leaves at the top
    let endpoint = |entering: bool, travel: i8, j: usize| Endpoint {
        side: if (travel > 0) == entering { Side::Bottom } else { Side::Top },
        index: j,
    };
    (0..trace.comps.len())
        .map(|c| {
            let info = trace.comps[c];
            let start = if info.closed {
                info.first
            } else {
                // the endpoint where the traversal enters the rectangle
                (0..trace.counts[0])
                    .map(|j| trace.seg(0, j))
                    .chain((0..trace.counts[top_level]).map(|j| trace.seg(top_level, j)))
                    .find(|&s| {
                        let (l, _) = trace.position(s);
                        trace.comp[s] == c && ((l == 0 && dirs[s] > 0) || (l == top_level && dirs[s] < 0))
                    })
                    .expect("open component has an entering endpoint")
            };
            let (l0, j0) = trace.position(start);
            let (mut l, mut j, mut t) = (l0, j0, dirs[start]);
            let mut incidences = Vec::new();
            while let Some(s) = step(events, l, j, t) {
                incidences.push(Incidence { event: s.event, role: s.role });
                if info.closed && (s.level, s.slot) == (l0, j0) {
                    break;
                }
                (l, j, t) = (s.level, s.slot, s.travel);
            }
            let kind = if info.closed {
                ComponentKind::Loop
            } else {
                ComponentKind::Strand { start: endpoint(true, dirs[start], j0), end: endpoint(false, t, j) }
            };
            Component { kind, incidences, orientation: signs[c] }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{Event::*, Over, SlicedDiagram};
    use super::*;

    #[test]
    fn unknot_is_one_loop() {
        let comps = SlicedDiagram::unknot().components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, ComponentKind::Loop);
        assert_eq!(comps[0].incidences.len(), 2);
    }

    #[test]
    fn nested_unknots() {
        let d = SlicedDiagram::closed(vec![Cup(0), Cup(1), Cap(1), Cap(0)]).unwrap();
        assert_eq!(d.component_count(), 2);
        let d = SlicedDiagram::closed(vec![Cup(0), Cap(0), Cup(0), Cap(0)]).unwrap();
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn trefoil_is_a_knot() {
        // plat closure of three half twists
        let d = SlicedDiagram::closed(vec![
            Cup(0),
            Cup(2),
            Cross(1, Over::L),
            Cross(1, Over::L),
            Cross(1, Over::L),
            Cap(2),
            Cap(0),
        ])
        .unwrap();
        let comps = d.components();
        assert_eq!(comps.len(), 1);
        let crosses = comps[0].incidences.iter().filter(|i| matches!(i.role, Role::Over | Role::Under)).count();
        assert_eq!(crosses, 6);
    }

    #[test]
    fn strands_run_between_endpoints() {
        let d = SlicedDiagram::new(2, 2, vec![Cross(0, Over::L)]).unwrap();
        let d = d.with_endpoint_orientation(&[1, -1], &[-1, 1], &[]).unwrap();
        let comps = d.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(
            comps[0].kind,
            ComponentKind::Strand {
                start: Endpoint { side: Side::Bottom, index: 0 },
                end: Endpoint { side: Side::Top, index: 1 }
            }
        );
        assert_eq!(
            comps[1].kind,
            ComponentKind::Strand {
                start: Endpoint { side: Side::Top, index: 0 },
                end: Endpoint { side: Side::Bottom, index: 1 }
            }
        );
        assert_eq!(comps[0].incidences, vec![Incidence { event: 0, role: Role::Over }]);
        assert_eq!(comps[1].incidences, vec![Incidence { event: 0, role: Role::Under }]);
    }
}
