//! Kauffman bracket resolution into the free basis of the bracket module of a handlebody
//! (closed diagrams) or into noncrossing matchings (tangles in the disk).
//!
//! A crossingless closed multicurve in the `g`-punctured disk is recorded by the multiset of
//! puncture sets its curves enclose. Two disjoint simple closed curves whose sets meet must
//! be nested (one lies inside the disk bounded by the other), so the sets of any multicurve
//! are pairwise nested or disjoint, and the multiset determines the multicurve.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::diagram::{ComponentKind, Endpoint, Event, GlueMode, Over, Side, SlicedDiagram};
use crate::error::{Result, SkeinError};
use crate::laurent::{reduce_mod, LaurentPoly, ReducedScalar};

/// Crossing bound of [`state_sum_oracle`].
pub const ORACLE_MAX_CROSSINGS: usize = 24;
/// Default number of memoized sub-diagrams; overridden by `SKEIN_CACHE_SIZE` (0 disables).
pub const DEFAULT_CACHE_SIZE: usize = 1 << 16;
pub const CACHE_SIZE_VAR: &str = "SKEIN_CACHE_SIZE";

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LaminarMulticurve {
    /// Sorted list of sorted, 1-based puncture sets.
    Curves(Vec<Vec<usize>>),
    /// Boundary points are numbered with the bottom row first (`0..bottom`), then the top
    /// row (`bottom..bottom + top`). Pairs are `(lo, hi)`, sorted.
    Matching { bottom: usize, top: usize, pairs: Vec<(usize, usize)> },
}

impl LaminarMulticurve {
    pub fn empty() -> Self {
        LaminarMulticurve::Curves(Vec::new())
    }

    pub fn curves(mut sets: Vec<Vec<usize>>) -> Result<Self> {
        for s in &mut sets {
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) || s[0] == 0 {
                return Err(SkeinError::InvalidParams(format!("bad puncture set {s:?}")));
            }
        }
        sets.sort();
        let c = LaminarMulticurve::Curves(sets);
        c.check_laminar()?;
        Ok(c)
    }

    /// Curve count, or pair count for matchings.
    pub fn len(&self) -> usize {
        match self {
            LaminarMulticurve::Curves(c) => c.len(),
            LaminarMulticurve::Matching { pairs, .. } => pairs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check_laminar(&self) -> Result<()> {
        match self {
            LaminarMulticurve::Curves(sets) => {
                for (a, x) in sets.iter().enumerate() {
                    for y in &sets[a + 1..] {
                        let meet = x.iter().filter(|j| y.binary_search(j).is_ok()).count();
                        if meet != 0 && meet != x.len() && meet != y.len() {
                            return Err(SkeinError::NotPlanar);
                        }
                    }
                }
                Ok(())
            }
            LaminarMulticurve::Matching { bottom, top, pairs } => {
                // position on the boundary circle: bottom row left to right, then top row
                // right to left
                let circ = |x: usize| if x < *bottom { x } else { bottom + top - 1 - (x - bottom) };
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    let (a, b) = (circ(a).min(circ(b)), circ(a).max(circ(b)));
                    for &(c, d) in &pairs[k + 1..] {
                        let (c, d) = (circ(c), circ(d));
                        let inside = |x: usize| a < x && x < b;
                        if inside(c) != inside(d) {
                            return Err(SkeinError::NotPlanar);
                        }
                    }
                }
                Ok(())
            }
        }
    }

    fn as_matching(&self) -> Option<(usize, usize, &[(usize, usize)])> {
        match self {
            LaminarMulticurve::Matching { bottom, top, pairs } => Some((*bottom, *top, pairs)),
            LaminarMulticurve::Curves(c) if c.is_empty() => Some((0, 0, &[])),
            LaminarMulticurve::Curves(_) => None,
        }
    }
}

impl fmt::Display for LaminarMulticurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaminarMulticurve::Curves(sets) => {
                write!(f, "{{")?;
                for (k, s) in sets.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    let inner: Vec<String> = s.iter().map(usize::to_string).collect();
                    write!(f, "{{{}}}", inner.join(","))?;
                }
                write!(f, "}}")
            }
            LaminarMulticurve::Matching { pairs, .. } => {
                let inner: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "[{}]", inner.join(" "))
            }
        }
    }
}

/// A linear combination of basis elements. Coefficients live in `R_n` for the attached
/// reduction index `n` and are stored as canonical representatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BracketElement {
    reduction: u64,
    genus: usize,
    bottom: usize,
    top: usize,
    terms: BTreeMap<LaminarMulticurve, LaurentPoly>,
}

impl BracketElement {
    pub fn zero(genus: usize, bottom: usize, top: usize, reduction: u64) -> Self {
        Self { reduction, genus, bottom, top, terms: BTreeMap::new() }
    }

    pub fn basis(genus: usize, class: LaminarMulticurve) -> Self {
        let (bottom, top) = match &class {
            LaminarMulticurve::Matching { bottom, top, .. } => (*bottom, *top),
            LaminarMulticurve::Curves(_) => (0, 0),
        };
        let mut e = Self::zero(genus, bottom, top, 0);
        e.terms.insert(class, LaurentPoly::one());
        e
    }

    pub fn reduction(&self) -> u64 {
        self.reduction
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaminarMulticurve, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, class: &LaminarMulticurve) -> ReducedScalar {
        reduce_mod(self.terms.get(class).unwrap_or(&LaurentPoly::zero()), self.reduction)
    }

    /// The coefficient of the empty multicurve, for elements that have no other terms.
    pub fn scalar(&self) -> Option<&LaurentPoly> {
        let empty = LaminarMulticurve::empty();
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&empty),
            _ => None,
        }
    }

    pub fn add_term(&mut self, class: LaminarMulticurve, coeff: &LaurentPoly) {
        let slot = self.terms.entry(class.clone()).or_insert_with(LaurentPoly::zero);
        *slot = reduce_mod(&(&*slot + coeff), self.reduction).into_poly();
        if slot.is_zero() {
            self.terms.remove(&class);
        }
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.genus, self.bottom, self.top, self.reduction)
            != (other.genus, other.bottom, other.top, other.reduction)
        {
            return Err(SkeinError::DimensionMismatch {
                expected: self.genus,
                found: other.genus,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&LaurentPoly::from(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Image in `R_n`; needs `n | reduction`.
    pub fn project(&self, n: u64) -> Result<Self> {
        ReducedScalar::one(self.reduction).project(n)?;
        let mut out = Self { reduction: n, terms: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    /// Divide every coefficient by `δ`. Only meaningful on unreduced elements.
    pub fn classical(&self) -> Result<Self> {
        if self.reduction != 0 {
            return Err(SkeinError::InvalidParams("classical normalization needs an unreduced element".into()));
        }
        if self.terms.is_empty() {
            return Err(SkeinError::EmptyNormalization);
        }
        let delta = LaurentPoly::delta();
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.terms {
            let q = v.div_exact(&delta).ok_or_else(|| {
                SkeinError::InvalidParams(format!("coefficient of {k} is not divisible by the loop value"))
            })?;
            out.add_term(k.clone(), &q);
        }
        Ok(out)
    }
}

impl fmt::Display for BracketElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (class, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {class}")?;
        }
        if self.reduction > 0 {
            write!(f, " (mod A^{} - 1)", 2 * self.reduction)?;
        }
        Ok(())
    }
}

struct Record<'a>(&'a LaminarMulticurve, &'a LaurentPoly);

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        match self.0 {
            LaminarMulticurve::Curves(c) => m.serialize_entry("curve", c)?,
            LaminarMulticurve::Matching { pairs, .. } => {
                let p: Vec<[usize; 2]> = pairs.iter().map(|&(a, b)| [a, b]).collect();
                m.serialize_entry("matching", &p)?
            }
        }
        m.serialize_entry("coeff", self.1)?;
        m.end()
    }
}

impl Serialize for BracketElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BracketElement", 5)?;
        st.serialize_field("reduction", &self.reduction)?;
        st.serialize_field("genus", &self.genus)?;
        st.serialize_field("bottom", &self.bottom)?;
        st.serialize_field("top", &self.top)?;
        let records: Vec<Record<'_>> = self.terms.iter().map(|(k, v)| Record(k, v)).collect();
        st.serialize_field("terms", &records)?;
        st.end()
    }
}

/// Basis class of a crossingless diagram and the number of trivial loops it contains.
pub fn laminar_class(d: &SlicedDiagram) -> Result<(LaminarMulticurve, usize)> {
    if d.crossing_count() > 0 {
        return Err(SkeinError::NotCrossingless);
    }
    let d = d.unoriented().oriented_canonically();
    let comps = d.components();
    let windings = d.component_windings()?;
    let mut loops = 0;
    let mut sets = Vec::new();
    let mut pairs = Vec::new();
    let label = |e: &Endpoint| match e.side {
        Side::Bottom => e.index,
        Side::Top => d.bottom() + e.index,
    };
    for (c, comp) in comps.iter().enumerate() {
        match &comp.kind {
            ComponentKind::Loop => {
                let mut s = Vec::new();
                for (j, &w) in windings[c].iter().enumerate() {
                    match w.abs() {
                        0 => {}
                        1 => s.push(j + 1),
                        _ => return Err(SkeinError::WindingOutOfRange { component: c, puncture: j + 1, winding: w }),
                    }
                }
                if s.is_empty() {
                    loops += 1;
                } else {
                    sets.push(s);
                }
            }
            ComponentKind::Strand { start, end } => {
                let (a, b) = (label(start), label(end));
                pairs.push((a.min(b), a.max(b)));
            }
        }
    }
    let class = if d.is_closed() {
        LaminarMulticurve::curves(sets)?
    } else {
        pairs.sort_unstable();
        let m = LaminarMulticurve::Matching { bottom: d.bottom(), top: d.top(), pairs };
        m.check_laminar()?;
        m
    };
    Ok((class, loops))
}

type Terms = BTreeMap<LaminarMulticurve, LaurentPoly>;

fn add_scaled(into: &mut Terms, from: &Terms, c: &LaurentPoly) {
    for (k, v) in from {
        let slot = into.entry(k.clone()).or_insert_with(LaurentPoly::zero);
        *slot += &(v * c);
        if slot.is_zero() {
            into.remove(k);
        }
    }
}

/// Cancel adjacent pairs that are regular isotopies or trivial loops: a cup directly
/// capped (a loop), a cup followed by a cap one slot over (a zigzag), and two crossings at
/// the same slot with opposite over-strand (a second Reidemeister move). Returns the
/// number of loops removed.
fn simplify(events: &[Event]) -> (Vec<Event>, usize) {
    let mut out: Vec<Event> = Vec::with_capacity(events.len());
    let mut loops = 0;
    for e in events {
        let cancel = match (out.last(), e) {
            (Some(Event::Cup(i)), Event::Cap(j)) if i == j => {
                loops += 1;
                true
            }
            (Some(Event::Cup(i)), Event::Cap(j)) => *j == i + 1 || j + 1 == *i,
            (Some(Event::Cross(i, x)), Event::Cross(j, y)) => i == j && x != y,
            _ => false,
        };
        if cancel {
            out.pop();
        } else {
            out.push(e.clone());
        }
    }
    (out, loops)
}

fn smoothed(events: &[Event], at: usize, a_side: bool) -> Vec<Event> {
    let Event::Cross(i, over) = events[at] else { unreachable!("smoothing a non-crossing") };
    let vertical = (over == Over::L) == a_side;
    let mut out = events[..at].to_vec();
    if !vertical {
        out.push(Event::Cap(i));
        out.push(Event::Cup(i));
    }
    out.extend_from_slice(&events[at + 1..]);
    out
}

pub fn cache_size_from_env() -> usize {
    std::env::var(CACHE_SIZE_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CACHE_SIZE)
}

/// Recursive resolver with a bounded memo table of simplified sub-diagrams. Entries are
/// only added while the table has room, so the result never depends on eviction order.
pub struct Resolver {
    limit: usize,
    cache: HashMap<(usize, usize, Vec<Event>), Terms>,
    hits: u64,
    delta_pows: Vec<LaurentPoly>,
}

impl Resolver {
    pub fn new(cache_limit: usize) -> Self {
        Self { limit: cache_limit, cache: HashMap::new(), hits: 0, delta_pows: vec![LaurentPoly::one()] }
    }

    pub fn from_env() -> Self {
        Self::new(cache_size_from_env())
    }

    pub fn cache_hits(&self) -> u64 {
        self.hits
    }

    fn delta_pow(&mut self, k: usize) -> LaurentPoly {
        while self.delta_pows.len() <= k {
            let next = self.delta_pows.last().unwrap() * &LaurentPoly::delta();
            self.delta_pows.push(next);
        }
        self.delta_pows[k].clone()
    }

    pub fn resolve(&mut self, d: &SlicedDiagram, reduction: u64) -> Result<BracketElement> {
        d.validate()?;
        let terms = self.terms(d.bottom(), d.top(), d.events())?;
        let mut out = BracketElement::zero(d.genus(), d.bottom(), d.top(), reduction);
        for (k, v) in terms {
            out.add_term(k, &v);
        }
        Ok(out)
    }

    fn terms(&mut self, bottom: usize, top: usize, events: &[Event]) -> Result<Terms> {
        let (events, loops) = simplify(events);
        let factor = self.delta_pow(loops);
        let key = (bottom, top, events);
        if let Some(t) = self.cache.get(&key) {
            self.hits += 1;
            let mut out = Terms::new();
            add_scaled(&mut out, t, &factor);
            return Ok(out);
        }
        let events = &key.2;
        let base = match events.iter().position(Event::is_cross) {
            None => {
                let (class, trivial) = laminar_class(&SlicedDiagram::new(bottom, top, events.clone())?)?;
                let mut t = Terms::new();
                t.insert(class, self.delta_pow(trivial));
                t
            }
            Some(at) => {
                let cc = self.terms(bottom, top, &smoothed(events, at, true))?;
                let c = self.terms(bottom, top, &smoothed(events, at, false))?;
                let mut t = Terms::new();
                add_scaled(&mut t, &cc, &LaurentPoly::a());
                add_scaled(&mut t, &c, &LaurentPoly::a_pow(-1));
                t
            }
        };
        let mut out = Terms::new();
        add_scaled(&mut out, &base, &factor);
        if self.cache.len() < self.limit {
            self.cache.insert(key, base);
        }
        Ok(out)
    }
}

/// Bracket of the unoriented diagram with coefficients in `R_reduction`; the empty diagram
/// evaluates to 1, so the unknot gives `δ`.
pub fn bracket_resolve(d: &SlicedDiagram, reduction: u64) -> Result<BracketElement> {
    Resolver::from_env().resolve(d, reduction)
}

/// Bracket with one factor `δ` divided out, so that the unknot gives 1.
pub fn bracket_classical(d: &SlicedDiagram, reduction: u64) -> Result<BracketElement> {
    if !d.is_closed() {
        return Err(SkeinError::NotClosed);
    }
    if d.events().is_empty() {
        return Err(SkeinError::EmptyNormalization);
    }
    bracket_resolve(d, 0)?.classical()?.project(reduction)
}

/// Direct sum over all `2^c` states.
pub fn state_sum_oracle(d: &SlicedDiagram) -> Result<BracketElement> {
    d.validate()?;
    let crossings = d.crossing_events();
    let c = crossings.len();
    if c > ORACLE_MAX_CROSSINGS {
        return Err(SkeinError::CrossingBound { count: c, bound: ORACLE_MAX_CROSSINGS });
    }
    let delta = LaurentPoly::delta();
    let mut out = BracketElement::zero(d.genus(), d.bottom(), d.top(), 0);
    for state in 0u32..(1u32 << c) {
        let mut events = Vec::with_capacity(d.events().len() + c);
        let mut k = 0;
        for e in d.events() {
            match e {
                Event::Cross(i, over) => {
                    let a_side = state >> k & 1 == 0;
                    k += 1;
                    if (*over == Over::L) != a_side {
                        events.push(Event::Cap(*i));
                        events.push(Event::Cup(*i));
                    }
                }
                other => events.push(other.clone()),
            }
        }
        let (class, loops) = laminar_class(&SlicedDiagram::new(d.bottom(), d.top(), events)?)?;
        let a_count = c as i64 - state.count_ones() as i64;
        let b_count = state.count_ones() as i64;
        let coeff = LaurentPoly::a_pow(a_count - b_count) * delta.pow(loops as u32);
        out.add_term(class, &coeff);
    }
    Ok(out)
}

/// Compose matchings `m1` (below) and `m2` (above); returns the matching and the number of
/// closed loops formed in the middle.
fn compose_matchings(
    (b1, t1, p1): (usize, usize, &[(usize, usize)]),
    (b2, t2, p2): (usize, usize, &[(usize, usize)]),
) -> Result<(LaminarMulticurve, usize)> {
    if t1 != b2 {
        return Err(SkeinError::GlueMismatch(format!("top arity {t1} does not match bottom arity {b2}")));
    }
    // nodes: 0..b1 outer bottom, b1..b1+t1 middle, b1+t1..b1+t1+t2 outer top
    let n = b1 + t1 + t2;
    let mut lower = vec![usize::MAX; n];
    let mut upper = vec![usize::MAX; n];
    for &(a, b) in p1 {
        lower[a] = b;
        lower[b] = a;
    }
    let shift = |x: usize| b1 + x;
    for &(a, b) in p2 {
        upper[shift(a)] = shift(b);
        upper[shift(b)] = shift(a);
    }
    let is_outer = |x: usize| x < b1 || x >= b1 + t1;
    let mut seen = vec![false; n];
    let mut pairs = Vec::new();
    for start in (0..n).filter(|&x| is_outer(x)) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut cur = start;
        let mut use_lower = start < b1;
        loop {
            let next = if use_lower { lower[cur] } else { upper[cur] };
            seen[next] = true;
            if is_outer(next) {
                let relabel = |x: usize| if x < b1 { x } else { x - t1 };
                let (a, b) = (relabel(start), relabel(next));
                pairs.push((a.min(b), a.max(b)));
                break;
            }
            cur = next;
            use_lower = !use_lower;
        }
    }
    let mut loops = 0;
    for m in b1..b1 + t1 {
        if seen[m] {
            continue;
        }
        loops += 1;
        let mut cur = m;
        let mut use_lower = true;
        loop {
            seen[cur] = true;
            cur = if use_lower { lower[cur] } else { upper[cur] };
            use_lower = !use_lower;
            if cur == m {
                break;
            }
        }
    }
    pairs.sort_unstable();
    let class = if b1 + t2 == 0 {
        LaminarMulticurve::empty()
    } else {
        LaminarMulticurve::Matching { bottom: b1, top: t2, pairs }
    };
    Ok((class, loops))
}

fn glue_classes(
    x: &LaminarMulticurve,
    y: &LaminarMulticurve,
    genus1: usize,
    mode: GlueMode,
) -> Result<(LaminarMulticurve, usize)> {
    if let (LaminarMulticurve::Curves(a), LaminarMulticurve::Curves(b)) = (x, y) {
        let mut sets = a.clone();
        sets.extend(b.iter().map(|s| s.iter().map(|j| j + genus1).collect::<Vec<_>>()));
        return Ok((LaminarMulticurve::curves(sets)?, 0));
    }
    if mode == GlueMode::SideBySide {
        return Err(SkeinError::UnsupportedGluing("side by side gluing needs closed diagrams".into()));
    }
    match (x.as_matching(), y.as_matching()) {
        (Some(m1), Some(m2)) => compose_matchings(m1, m2),
        _ => Err(SkeinError::UnsupportedGluing("cannot stack a punctured multicurve onto a tangle".into())),
    }
}

/// Image of `x ⊗ y` under gluing: closed multicurves are concatenated with the punctures of
/// `y` numbered after those of `x`; matchings are composed, each closed loop giving `δ`.
pub fn glue_elements(x: &BracketElement, y: &BracketElement, mode: GlueMode) -> Result<BracketElement> {
    if x.reduction != y.reduction {
        return Err(SkeinError::GlueMismatch(format!(
            "reduction indices {} and {} differ",
            x.reduction, y.reduction
        )));
    }
    if mode == GlueMode::Stack && x.top != y.bottom {
        return Err(SkeinError::GlueMismatch(format!(
            "top arity {} does not match bottom arity {}",
            x.top, y.bottom
        )));
    }
    let (bottom, top) = match mode {
        GlueMode::Stack => (x.bottom, y.top),
        GlueMode::SideBySide => (0, 0),
    };
    let mut out = BracketElement::zero(x.genus + y.genus, bottom, top, x.reduction);
    let delta = LaurentPoly::delta();
    for (k1, c1) in &x.terms {
        for (k2, c2) in &y.terms {
            let (class, loops) = glue_classes(k1, k2, x.genus, mode)?;
            out.add_term(class, &(c1 * c2 * delta.pow(loops as u32)));
        }
    }
    Ok(out)
}
