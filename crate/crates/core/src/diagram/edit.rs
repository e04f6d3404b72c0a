//! Local rewrites: smoothings, skein triples, kinks, Reidemeister moves and gluing.
//!
//! Every rewrite replaces a window of events. The levels outside the window keep their
//! strands, so an orientation is carried across by pinning the directions of those
//! segments and re-deriving the component signs.

use serde::{Deserialize, Serialize};

use super::{crossing_sign, Event, Over, SlicedDiagram, Trace};
use crate::error::{Result, SkeinError};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothing {
    /// The `A` smoothing.
    Cc,
    /// The `A^-1` smoothing.
    C,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlueMode {
    Stack,
    SideBySide,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RMove {
    /// Insert a curl of the given crossing sign on the strand at `(level, slot)`.
    R1Add { level: usize, slot: usize, sign: i8 },
    /// Remove the curl whose three events start at `event`.
    R1Remove { event: usize },
    /// Push the strand at `slot` over (`Over::L`) or under (`Over::R`) its right neighbour.
    R2Add { level: usize, slot: usize, over: Over },
    R2Remove { event: usize },
    /// Slide a strand across the crossing of the other two; the window starts at `event`.
    R3 { event: usize },
}

impl SlicedDiagram {
    /// Replace `events[range]` by `block`, carrying the orientation along if present.
    pub(crate) fn splice(&self, range: std::ops::Range<usize>, block: Vec<Event>) -> Result<SlicedDiagram> {
        let (a, b) = (range.start, range.end);
        let mut events = self.events[..a].to_vec();
        let inserted = block.len();
        events.extend(block);
        events.extend_from_slice(&self.events[b..]);
        let out = SlicedDiagram::new(self.bottom, self.top, events)?;
        let Some(signs) = &self.orientation else {
            return Ok(out);
        };
        let old = self.trace();
        let dirs = old.directions(signs);
        let mut constraints = Vec::new();
        for l in 0..=a {
            constraints.extend((0..old.counts[l]).map(|j| (l, j, dirs[old.seg(l, j)])));
        }
        for l in b..=self.events.len() {
            let nl = l - b + a + inserted;
            constraints.extend((0..old.counts[l]).map(|j| (nl, j, dirs[old.seg(l, j)])));
        }
        let signs = out.trace().orientation_from(&constraints)?;
        Ok(SlicedDiagram { orientation: Some(signs), ..out })
    }

    fn cross_at(&self, event: usize) -> Result<(usize, Over)> {
        match self.events.get(event) {
            Some(Event::Cross(i, over)) => Ok((*i, *over)),
            _ => Err(SkeinError::NotACrossing { event }),
        }
    }

    /// Resolve one crossing. For `Over::L` the `cc` smoothing keeps two vertical strands and
    /// `c` turns them into a cap followed by a cup; `Over::R` swaps the two. The result is
    /// unoriented.
    pub fn smooth(&self, event: usize, which: Smoothing) -> Result<SlicedDiagram> {
        let (i, over) = self.cross_at(event)?;
        let vertical = matches!((over, which), (Over::L, Smoothing::Cc) | (Over::R, Smoothing::C));
        let block = if vertical { vec![] } else { vec![Event::Cap(i), Event::Cup(i)] };
        self.unoriented().splice(event..event + 1, block)
    }

    /// `(K+, K-, K0)` at a crossing of an oriented diagram.
    pub fn skein_triple(&self, event: usize) -> Result<(SlicedDiagram, SlicedDiagram, SlicedDiagram)> {
        let (i, _) = self.cross_at(event)?;
        let trace = self.trace();
        let dirs = self.directions(&trace)?;
        let dl = dirs[trace.seg(event, i)];
        let dr = dirs[trace.seg(event, i + 1)];
        let positive = if crossing_sign(dl, dr, Over::L) > 0 { Over::L } else { Over::R };
        let plus = self.splice(event..event + 1, vec![Event::Cross(i, positive)])?;
        let minus = self.splice(event..event + 1, vec![Event::Cross(i, positive.flip())])?;
        let zero_block = if dl == dr { vec![] } else { vec![Event::Cap(i), Event::Cup(i)] };
        let zero = self.splice(event..event + 1, zero_block)?;
        Ok((plus, minus, zero))
    }

    /// Switch the over/under information of one crossing.
    pub fn switch_crossing(&self, event: usize) -> Result<SlicedDiagram> {
        let (i, over) = self.cross_at(event)?;
        self.splice(event..event + 1, vec![Event::Cross(i, over.flip())])
    }

    fn check_segment(&self, level: usize, slot: usize, need: usize) -> Result<()> {
        let counts = self.counts();
        let count = *counts
            .get(level)
            .ok_or_else(|| SkeinError::InvalidLocation(format!("level {level} beyond {}", self.events.len())))?;
        if slot + need >= count {
            return Err(SkeinError::InvalidLocation(format!(
                "slot {slot} at level {level} has {count} strands"
            )));
        }
        Ok(())
    }

    /// Insert a curl of crossing sign `sign` on the strand at `(level, slot)`. This changes
    /// the blackboard framing of that component by `sign`.
    pub fn add_kink(&self, level: usize, slot: usize, sign: i8) -> Result<SlicedDiagram> {
        self.check_segment(level, slot, 0)?;
        if sign.abs() != 1 {
            return Err(SkeinError::InvalidLocation(format!("kink sign {sign}")));
        }
        let over = if sign > 0 { Over::L } else { Over::R };
        self.splice(
            level..level,
            vec![Event::Cup(slot + 1), Event::Cross(slot, over), Event::Cap(slot + 1)],
        )
    }

    /// Add a trivial circle to the left of everything, below all punctures.
    pub fn disjoint_unknot(&self) -> Result<SlicedDiagram> {
        self.splice(0..0, vec![Event::Cup(0), Event::Cap(0)])
    }

    pub fn rmove(&self, mv: RMove) -> Result<SlicedDiagram> {
        match mv {
            RMove::R1Add { level, slot, sign } => self.add_kink(level, slot, sign),
            RMove::R1Remove { event } => {
                let window = self.events.get(event..event + 3);
                let ok = match window {
                    Some([Event::Cup(a), Event::Cross(b, _), Event::Cap(c)]) => {
                        (*a == b + 1 && *c == b + 1) || (a == c && *b == a + 1)
                    }
                    _ => false,
                };
                if !ok {
                    return Err(SkeinError::PatternMismatch { event, expected: "cup, cross, cap forming a curl" });
                }
                self.splice(event..event + 3, vec![])
            }
            RMove::R2Add { level, slot, over } => {
                self.check_segment(level, slot, 1)?;
                self.splice(level..level, vec![Event::Cross(slot, over), Event::Cross(slot, over.flip())])
            }
            RMove::R2Remove { event } => match self.events.get(event..event + 2) {
                Some([Event::Cross(i, x), Event::Cross(j, y)]) if i == j && x != y => {
                    self.splice(event..event + 2, vec![])
                }
                _ => Err(SkeinError::PatternMismatch { event, expected: "two cancelling crossings" }),
            },
            RMove::R3 { event } => {
                let window = self.events.get(event..event + 3);
                let (i, j, x, y, z) = match window {
                    Some([Event::Cross(i, x), Event::Cross(j, y), Event::Cross(k, z)])
                        if i == k && (*j == i + 1 || j + 1 == *i) =>
                    {
                        (*i, *j, *x, *y, *z)
                    }
                    _ => {
                        return Err(SkeinError::PatternMismatch { event, expected: "three crossings of a braid triangle" })
                    }
                };
                // cyclic over/under patterns are not a triangle move
                if x == z && y != x {
                    return Err(SkeinError::PatternMismatch { event, expected: "one strand over or under both others" });
                }
                self.splice(
                    event..event + 3,
                    vec![Event::Cross(j, z), Event::Cross(i, y), Event::Cross(j, x)],
                )
            }
        }
    }
}

/// Glue `d1` below `d2` (`Stack`), or place two closed diagrams next to each other
/// (`SideBySide`). Punctures of `d2` are numbered after those of `d1`.
pub fn glue_diagrams(d1: &SlicedDiagram, d2: &SlicedDiagram, mode: GlueMode) -> Result<SlicedDiagram> {
    match mode {
        GlueMode::Stack => {
            if d1.top != d2.bottom {
                return Err(SkeinError::GlueMismatch(format!(
                    "top arity {} does not match bottom arity {}",
                    d1.top, d2.bottom
                )));
            }
        }
        GlueMode::SideBySide => {
            if !d1.is_closed() || !d2.is_closed() {
                return Err(SkeinError::GlueMismatch("side by side gluing needs closed diagrams".into()));
            }
        }
    }
    if d1.is_oriented() != d2.is_oriented() {
        return Err(SkeinError::GlueMismatch("cannot glue an oriented diagram to an unoriented one".into()));
    }
    let mut events = d1.events.clone();
    events.extend_from_slice(&d2.events);
    let out = SlicedDiagram::new(d1.bottom, d2.top, events)?;
    let (Some(s1), Some(s2)) = (&d1.orientation, &d2.orientation) else {
        return Ok(out);
    };
    let (t1, t2) = (d1.trace(), d2.trace());
    let (dir1, dir2) = (t1.directions(s1), t2.directions(s2));
    let n1 = d1.events.len();
    for j in 0..d1.top {
        if dir1[t1.seg(n1, j)] != dir2[t2.seg(0, j)] {
            return Err(SkeinError::GlueMismatch(format!("endpoint {j} has opposite orientations")));
        }
    }
    let pins = |t: &Trace, dirs: &[i8], shift: usize| {
        (0..t.counts.len())
            .flat_map(|l| (0..t.counts[l]).map(move |j| (l, j)))
            .map(|(l, j)| (l + shift, j, dirs[t.seg(l, j)]))
            .collect::<Vec<_>>()
    };
    let mut constraints = pins(&t1, &dir1, 0);
    constraints.extend(pins(&t2, &dir2, n1));
    let signs = out.trace().orientation_from(&constraints)?;
    Ok(SlicedDiagram { orientation: Some(signs), ..out })
}

impl SlicedDiagram {
    /// Every Reidemeister move that applies somewhere in the diagram, in a fixed order.
    pub fn move_sites(&self) -> Vec<RMove> {
        let counts = self.counts();
        let mut out = Vec::new();
        for (level, &count) in counts.iter().enumerate() {
            for slot in 0..count {
                out.push(RMove::R1Add { level, slot, sign: 1 });
                out.push(RMove::R1Add { level, slot, sign: -1 });
                if slot + 1 < count {
                    out.push(RMove::R2Add { level, slot, over: Over::L });
                    out.push(RMove::R2Add { level, slot, over: Over::R });
                }
            }
        }
        for event in 0..self.events.len() {
            for mv in [RMove::R1Remove { event }, RMove::R2Remove { event }, RMove::R3 { event }] {
                if self.rmove(mv).is_ok() {
                    out.push(mv);
                }
            }
        }
        out
    }

    /// Cut at `level` into the part below and the part above, keeping orientations.
    pub fn split_at(&self, level: usize) -> Result<(SlicedDiagram, SlicedDiagram)> {
        if level > self.events.len() {
            return Err(SkeinError::InvalidLocation(format!("level {level} beyond {}", self.events.len())));
        }
        let counts = self.counts();
        let lower = SlicedDiagram::new(self.bottom, counts[level], self.events[..level].to_vec())?;
        let upper = SlicedDiagram::new(counts[level], self.top, self.events[level..].to_vec())?;
        let Some(signs) = &self.orientation else {
            return Ok((lower, upper));
        };
        let trace = self.trace();
        let dirs = trace.directions(signs);
        let pins = |range: std::ops::RangeInclusive<usize>, shift: usize| {
            range
                .flat_map(|l| (0..counts[l]).map(move |j| (l, j)))
                .map(|(l, j)| (l - shift, j, dirs[trace.seg(l, j)]))
                .collect::<Vec<_>>()
        };
        let s1 = lower.trace().orientation_from(&pins(0..=level, 0))?;
        let s2 = upper.trace().orientation_from(&pins(level..=self.events.len(), level))?;
        Ok((
            SlicedDiagram { orientation: Some(s1), ..lower },
            SlicedDiagram { orientation: Some(s2), ..upper },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Event::*;

    fn kinked_unknot(sign: i8) -> SlicedDiagram {
        SlicedDiagram::unknot().oriented_canonically().add_kink(1, 0, sign).unwrap()
    }

    #[test]
    fn kink_signs() {
        assert_eq!(kinked_unknot(1).writhe().unwrap(), 1);
        assert_eq!(kinked_unknot(-1).writhe().unwrap(), -1);
        let reversed = SlicedDiagram::unknot().with_orientation(vec![-1]).unwrap().add_kink(1, 1, 1).unwrap();
        assert_eq!(reversed.writhe().unwrap(), 1);
        assert!(SlicedDiagram::unknot().add_kink(1, 2, 1).is_err());
        assert!(SlicedDiagram::unknot().add_kink(7, 0, 1).is_err());
    }

    #[test]
    fn smoothing_a_positive_kink() {
        let k = kinked_unknot(1);
        let e = k.crossing_events()[0];
        assert_eq!(k.smooth(e, Smoothing::Cc).unwrap().component_count(), 2);
        assert_eq!(k.smooth(e, Smoothing::C).unwrap().component_count(), 1);
        assert!(matches!(k.smooth(0, Smoothing::C), Err(SkeinError::NotACrossing { event: 0 })));
    }

    #[test]
    fn triple_of_a_kink() {
        let k = kinked_unknot(1);
        let e = k.crossing_events()[0];
        let (p, m, z) = k.skein_triple(e).unwrap();
        assert_eq!(p, k);
        assert_eq!(m.writhe().unwrap(), -1);
        assert_eq!(z.writhe().unwrap(), 0);
        assert_eq!(z.crossing_count(), 0);
        assert_eq!(z.component_count(), 2);
    }

    #[test]
    fn r2_roundtrip() {
        let d = SlicedDiagram::closed(vec![Cup(0), Cup(2), Cap(2), Cap(0)]).unwrap().oriented_canonically();
        let moved = d.rmove(RMove::R2Add { level: 2, slot: 1, over: Over::L }).unwrap();
        assert_eq!(moved.crossing_count(), 2);
        assert_eq!(moved.writhe().unwrap(), 0);
        assert_eq!(moved.rmove(RMove::R2Remove { event: 2 }).unwrap(), d);
        assert!(d.rmove(RMove::R2Remove { event: 0 }).is_err());
    }

    #[test]
    fn r1_roundtrip() {
        let d = SlicedDiagram::unknot().oriented_canonically();
        let k = d.rmove(RMove::R1Add { level: 1, slot: 1, sign: -1 }).unwrap();
        assert_eq!(k.rmove(RMove::R1Remove { event: 1 }).unwrap(), d);
    }

    #[test]
    fn r3_reverses_flags() {
        let d = SlicedDiagram::new(3, 3, vec![Cross(0, Over::L), Cross(1, Over::L), Cross(0, Over::R)]).unwrap();
        let m = d.rmove(RMove::R3 { event: 0 }).unwrap();
        assert_eq!(m.events(), &[Cross(1, Over::R), Cross(0, Over::L), Cross(1, Over::L)]);
        assert_eq!(m.rmove(RMove::R3 { event: 0 }).unwrap(), d);
        let cyclic = SlicedDiagram::new(3, 3, vec![Cross(0, Over::L), Cross(1, Over::R), Cross(0, Over::L)]).unwrap();
        assert!(cyclic.rmove(RMove::R3 { event: 0 }).is_err());
    }

    #[test]
    fn stacking_identities() {
        let id = SlicedDiagram::identity(2);
        assert_eq!(glue_diagrams(&id, &id, GlueMode::Stack).unwrap(), id);
        let cap = SlicedDiagram::new(2, 0, vec![Cap(0)]).unwrap();
        assert!(glue_diagrams(&cap, &id, GlueMode::Stack).is_err());
        assert!(glue_diagrams(&id, &id, GlueMode::SideBySide).is_err());
    }

    #[test]
    fn stacking_checks_orientation() {
        let up = SlicedDiagram::identity(1).with_endpoint_orientation(&[1], &[1], &[]).unwrap();
        let down = SlicedDiagram::identity(1).with_endpoint_orientation(&[-1], &[-1], &[]).unwrap();
        assert!(glue_diagrams(&up, &up, GlueMode::Stack).is_ok());
        assert!(matches!(glue_diagrams(&up, &down, GlueMode::Stack), Err(SkeinError::GlueMismatch(_))));
    }

    #[test]
    fn side_by_side_core_circles() {
        let core = SlicedDiagram::closed(vec![Cup(0), Punctures(vec![1]), Cap(0)]).unwrap().with_orientation(vec![-1]).unwrap();
        let both = glue_diagrams(&core, &core, GlueMode::SideBySide).unwrap();
        assert_eq!(both.genus(), 2);
        assert_eq!(both.winding_vector().unwrap(), vec![1, 1]);
    }

    #[test]
    fn split_and_restack() {
        let d = SlicedDiagram::closed(vec![Cup(0), Cup(2), Cross(1, Over::R), Cross(1, Over::R), Cap(2), Cap(0)])
            .unwrap()
            .oriented_canonically();
        for level in 0..=d.events().len() {
            let (a, b) = d.split_at(level).unwrap();
            assert_eq!(glue_diagrams(&a, &b, GlueMode::Stack).unwrap(), d);
        }
    }

    #[test]
    fn move_sites_apply() {
        let d = SlicedDiagram::closed(vec![Cup(0), Cup(2), Cross(1, Over::R), Cross(1, Over::L), Cap(2), Cap(0)])
            .unwrap()
            .oriented_canonically();
        let sites = d.move_sites();
        assert!(sites.contains(&RMove::R2Remove { event: 2 }));
        for mv in sites {
            d.rmove(mv).unwrap();
        }
    }
}
