//! Crossingless diagrams realizing a laminar family of puncture sets.

use super::{Event, SlicedDiagram};
use crate::error::{Result, SkeinError};

/// Build a closed crossingless diagram with `genus` punctures whose closed components
/// enclose exactly the given puncture sets (1-based labels). The family must be laminar:
/// any two sets nested or disjoint. Components are oriented counterclockwise.
pub fn multicurve_diagram(genus: usize, curves: &[Vec<usize>]) -> Result<SlicedDiagram> {
    let n = curves.len();
    let mut sets: Vec<Vec<usize>> = curves.to_vec();
    for s in &mut sets {
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.iter().any(|&j| j == 0 || j > genus) {
            return Err(SkeinError::InvalidParams(format!("curve {s:?} is not a nonempty subset of 1..={genus}")));
        }
    }
    let contains = |a: &[usize], b: &[usize]| b.iter().all(|x| a.binary_search(x).is_ok());
    for a in 0..n {
        for b in a + 1..n {
            let disjoint = !sets[a].iter().any(|x| sets[b].binary_search(x).is_ok());
            if !(disjoint || contains(&sets[a], &sets[b]) || contains(&sets[b], &sets[a])) {
                return Err(SkeinError::InvalidParams(format!(
                    "curves {:?} and {:?} are neither nested nor disjoint",
                    sets[a], sets[b]
                )));
            }
        }
    }
    // order outermost first; equal sets become a chain of nested copies
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sets[b].len().cmp(&sets[a].len()).then(sets[a].cmp(&sets[b])).then(a.cmp(&b)));
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (k, &c) in order.iter().enumerate() {
        parent[c] = order[..k].iter().rev().copied().find(|&p| contains(&sets[p], &sets[c]));
    }
    let last: Vec<usize> = sets.iter().map(|s| *s.last().unwrap()).collect();

    // legs currently open, left to right: (curve, is_left_leg)
    let mut legs: Vec<(usize, bool)> = Vec::new();
    let mut open = vec![false; n];
    let mut events = Vec::new();
    let leg_pos = |legs: &[(usize, bool)], c: usize, left: bool| legs.iter().position(|&l| l == (c, left)).unwrap();

    fn open_curve(
        c: usize,
        parent: &[Option<usize>],
        open: &mut [bool],
        legs: &mut Vec<(usize, bool)>,
        events: &mut Vec<Event>,
    ) {
        if open[c] {
            return;
        }
        if let Some(p) = parent[c] {
            open_curve(p, parent, open, legs, events);
        }
        let at = match parent[c] {
            Some(p) => legs.iter().position(|&l| l == (p, false)).unwrap(),
            None => legs.len(),
        };
        legs.insert(at, (c, false));
        legs.insert(at, (c, true));
        events.push(Event::Cup(at));
        open[c] = true;
    }

    for j in 1..=genus {
        let innermost = order.iter().rev().copied().find(|&c| sets[c].binary_search(&j).is_ok());
        let gap = match innermost {
            Some(c) => {
                open_curve(c, &parent, &mut open, &mut legs, &mut events);
                leg_pos(&legs, c, true) + 1
            }
            None => 0,
        };
        events.push(Event::Punctures(vec![gap]));
        for &c in order.iter().rev() {
            if open[c] && last[c] == j {
                let at = leg_pos(&legs, c, true);
                debug_assert_eq!(legs[at + 1], (c, false));
                legs.drain(at..at + 2);
                events.push(Event::Cap(at));
                open[c] = false;
            }
        }
    }
    let d = SlicedDiagram::closed(events)?.oriented_canonically();
    // flip each component to counterclockwise
    let windings = d.component_windings()?;
    let signs: Vec<i8> = windings
        .iter()
        .map(|w| if w.iter().any(|&x| x < 0) { -1 } else { 1 })
        .collect();
    d.with_orientation(signs)
}

/// The zero-writhe crossingless diagram with `|alpha_j|` parallel circles around puncture
/// `j`, oriented so that the winding vector equals `alpha`.
pub fn reference_diagram(alpha: &[i64]) -> Result<SlicedDiagram> {
    let curves: Vec<Vec<usize>> = alpha
        .iter()
        .enumerate()
        .flat_map(|(j, a)| std::iter::repeat_n(vec![j + 1], a.unsigned_abs() as usize))
        .collect();
    let d = multicurve_diagram(alpha.len(), &curves)?;
    let windings = d.component_windings()?;
    let signs: Vec<i8> = windings
        .iter()
        .map(|w| {
            let j = w.iter().position(|&x| x != 0).expect("each reference circle encloses a puncture");
            if alpha[j] < 0 {
                -1
            } else {
                1
            }
        })
        .collect();
    let signs: Vec<i8> = signs.iter().zip(d.orientation().unwrap()).map(|(a, b)| a * b).collect();
    d.with_orientation(signs)
}
