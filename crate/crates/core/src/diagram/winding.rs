//! Winding numbers around punctures, counted as signed transits of the upward ray from each
//! puncture. A transit from right to left counts `+1`, so a counterclockwise loop has
//! winding `+1`.
//!
//! The ray starts at the puncture's gap and is carried up through the events:
//! a cup at or right of the ray leaves it alone (the ray keeps to the left of the cup),
//! a cup to its left shifts it by 2; a cap whose legs straddle the ray is crossed once; a
//! crossing whose strands straddle the ray is passed through its left region, crossing the
//! strand that enters from the left. Since all components with punctures are closed, the
//! count does not depend on how the ray is routed.

use super::{Event, SlicedDiagram, Trace};

pub(super) fn component_windings(d: &SlicedDiagram, trace: &Trace, dirs: &[i8]) -> Vec<Vec<i64>> {
    let g = d.genus();
    let events = d.events();
    let mut out = vec![vec![0i64; g]; trace.comps.len()];
    let mut label = 0;
    for (e, ev) in events.iter().enumerate() {
        let Event::Punctures(gaps) = ev else { continue };
        for &gap in gaps {
            let mut p = gap;
            for (l, ev) in events.iter().enumerate().skip(e + 1) {
                match ev {
                    Event::Cup(i) => {
                        if *i < p {
                            p += 2;
                        }
                    }
                    Event::Cap(i) => {
                        if i + 1 < p {
                            p -= 2;
                        } else if i + 1 == p {
                            let seg = trace.seg(l, *i);
                            out[trace.comp[seg]][label] -= dirs[seg] as i64;
                            p = *i;
                        }
                    }
                    Event::Cross(i, _) => {
                        if i + 1 == p {
                            let seg = trace.seg(l, *i);
                            out[trace.comp[seg]][label] -= dirs[seg] as i64;
                            p = *i;
                        }
                    }
                    Event::Punctures(_) => {}
                }
            }
            label += 1;
        }
    }
    out
}
