//! Jones polynomial of oriented links in the disk by the oriented skein relation
//! `t^-1 V(K+) - t V(K-) = (t^(1/2) - t^(-1/2)) V(K0)`, switching crossings until the
//! diagram is descending.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::diagram::{Role, SlicedDiagram};
use crate::error::{Result, SkeinError};
use crate::laurent::{substitute_jones_var, JonesPoly, LaurentPoly};

/// Which non-descending crossing is switched next.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SwitchPolicy {
    #[default]
    FirstOffending,
    LastOffending,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct JonesStats {
    /// Diagrams evaluated, memo hits excluded.
    pub nodes: u64,
    pub memo_hits: u64,
    /// Recursive calls whose `(crossings, non-descending)` measure failed to drop.
    pub measure_violations: u64,
}

/// Crossing events met first on the under strand, in traversal order. Components are taken
/// in order, each from its base point along its orientation.
pub fn non_descending_crossings(d: &SlicedDiagram) -> Vec<usize> {
    let mut seen = vec![false; d.events().len()];
    let mut out = Vec::new();
    for comp in d.components() {
        for inc in comp.incidences {
            match inc.role {
                Role::Over | Role::Under if !seen[inc.event] => {
                    seen[inc.event] = true;
                    if inc.role == Role::Under {
                        out.push(inc.event);
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn s_poly(pairs: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().copied())
}

pub struct JonesEvaluator {
    policy: SwitchPolicy,
    memo: HashMap<SlicedDiagram, LaurentPoly>,
    stats: JonesStats,
}

impl JonesEvaluator {
    pub fn new(policy: SwitchPolicy) -> Self {
        Self { policy, memo: HashMap::new(), stats: JonesStats::default() }
    }

    pub fn stats(&self) -> JonesStats {
        self.stats
    }

    pub fn evaluate(&mut self, d: &SlicedDiagram) -> Result<JonesPoly> {
        if d.genus() != 0 {
            return Err(SkeinError::InvalidParams(format!(
                "the Jones polynomial is only evaluated in the disk, got {} punctures",
                d.genus()
            )));
        }
        if !d.is_closed() {
            return Err(SkeinError::NotClosed);
        }
        if !d.is_oriented() {
            return Err(SkeinError::Unoriented);
        }
        if d.component_count() == 0 {
            return Err(SkeinError::EmptyNormalization);
        }
        Ok(JonesPoly::from_s(self.eval(d)?))
    }

    fn eval(&mut self, d: &SlicedDiagram) -> Result<LaurentPoly> {
        if let Some(v) = self.memo.get(d) {
            self.stats.memo_hits += 1;
            return Ok(v.clone());
        }
        self.stats.nodes += 1;
        let offending = non_descending_crossings(d);
        let pick = match self.policy {
            SwitchPolicy::FirstOffending => offending.first(),
            SwitchPolicy::LastOffending => offending.last(),
        };
        let v = match pick {
            None => {
                // descending: an unlink
                let k = d.component_count() as u32;
                s_poly(&[(1, -1), (-1, -1)]).pow(k - 1)
            }
            Some(&e) => {
                let measure = (d.crossing_count(), offending.len());
                let sign = d.crossing_signs()?.into_iter().find(|&(ev, _)| ev == e).map(|(_, s)| s).unwrap();
                let (_, _, zero) = d.skein_triple(e)?;
                let switched = d.switch_crossing(e)?;
                for child in [&switched, &zero] {
                    let m = (child.crossing_count(), non_descending_crossings(child).len());
                    if m >= measure {
                        self.stats.measure_violations += 1;
                    }
                }
                let vs = self.eval(&switched)?;
                let v0 = self.eval(&zero)?;
                if sign > 0 {
                    // V+ = s^4 V- + (s^3 - s) V0
                    vs.shift(4) + v0 * s_poly(&[(3, 1), (1, -1)])
                } else {
                    // V- = s^-4 V+ + (s^-3 - s^-1) V0
                    vs.shift(-4) + v0 * s_poly(&[(-3, 1), (-1, -1)])
                }
            }
        };
        self.memo.insert(d.clone(), v.clone());
        Ok(v)
    }
}

pub fn jones_polynomial(d: &SlicedDiagram) -> Result<JonesPoly> {
    JonesEvaluator::new(SwitchPolicy::FirstOffending).evaluate(d)
}

pub fn jones_polynomial_with(d: &SlicedDiagram, policy: SwitchPolicy) -> Result<(JonesPoly, JonesStats)> {
    let mut ev = JonesEvaluator::new(policy);
    let v = ev.evaluate(d)?;
    Ok((v, ev.stats()))
}

/// A finite formal combination of oriented diagrams with coefficients in `Z[A, A^-1]`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalTangleSum {
    terms: BTreeMap<SlicedDiagram, LaurentPoly>,
}

impl FormalTangleSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(d: SlicedDiagram) -> Result<Self> {
        let mut s = Self::new();
        s.add_term(d, &LaurentPoly::one())?;
        Ok(s)
    }

    pub fn add_term(&mut self, d: SlicedDiagram, coeff: &LaurentPoly) -> Result<()> {
        if !d.is_oriented() {
            return Err(SkeinError::Unoriented);
        }
        if let Some(first) = self.terms.keys().next() {
            if (first.genus(), first.bottom(), first.top()) != (d.genus(), d.bottom(), d.top()) {
                return Err(SkeinError::DimensionMismatch {
                    expected: first.genus() + first.bottom() + first.top(),
                    found: d.genus() + d.bottom() + d.top(),
                });
            }
        }
        let slot = self.terms.entry(d.clone()).or_insert_with(LaurentPoly::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SlicedDiagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `A^4 K+ - A^-4 K- - (A^-2 - A^2) K0`, which vanishes in the Jones module.
    pub fn skein_relation(plus: &SlicedDiagram, minus: &SlicedDiagram, zero: &SlicedDiagram) -> Result<Self> {
        let mut s = Self::new();
        s.add_term(plus.clone(), &LaurentPoly::a_pow(4))?;
        s.add_term(minus.clone(), &-LaurentPoly::a_pow(-4))?;
        s.add_term(zero.clone(), &LaurentPoly::from_pairs([(2, 1), (-2, -1)]))?;
        Ok(s)
    }
}

impl fmt::Display for FormalTangleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) {}", d.to_json_string())?;
        }
        Ok(())
    }
}

impl Serialize for FormalTangleSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in &self.terms {
            seq.serialize_element(&serde_json::json!({ "diagram": d.to_json(), "coeff": c }))?;
        }
        seq.end()
    }
}

/// A map out of the Jones module, used to test relations.
pub trait SkeinEvaluator {
    fn vanishes_on(&self, sum: &FormalTangleSum) -> Result<bool>;
}

/// Evaluates a formal sum through the Jones polynomial, with `A` sent to `t^(-1/4)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct JonesSkeinEvaluator;

impl SkeinEvaluator for JonesSkeinEvaluator {
    fn vanishes_on(&self, sum: &FormalTangleSum) -> Result<bool> {
        let mut total = LaurentPoly::zero();
        let mut ev = JonesEvaluator::new(SwitchPolicy::FirstOffending);
        for (d, c) in sum.terms() {
            let c = substitute_jones_var(c)?;
            total += &(c.as_s() * ev.evaluate(d)?.as_s());
        }
        Ok(total.is_zero())
    }
}

/// Whether the skein relation holds on `(K+, K-, K0)` under `evaluator`.
pub fn jones_relation_check(
    triple: &(SlicedDiagram, SlicedDiagram, SlicedDiagram),
    evaluator: &impl SkeinEvaluator,
) -> Result<bool> {
    let (plus, minus, zero) = triple;
    evaluator.vanishes_on(&FormalTangleSum::skein_relation(plus, minus, zero)?)
}

/// The first strand position on a closed diagram where a kink can go.
pub fn kink_site(d: &SlicedDiagram) -> Option<(usize, usize)> {
    d.counts().iter().position(|&c| c > 0).map(|l| (l, 0))
}

/// Whether adding a kink of either sign leaves the Jones polynomial unchanged.
pub fn framing_insensitivity_check(d: &SlicedDiagram) -> Result<bool> {
    let v = jones_polynomial(d)?;
    let (level, slot) = kink_site(d).ok_or(SkeinError::EmptyNormalization)?;
    for sign in [1, -1] {
        if jones_polynomial(&d.add_kink(level, slot, sign)?)? != v {
            return Ok(false);
        }
    }
    Ok(true)
}
