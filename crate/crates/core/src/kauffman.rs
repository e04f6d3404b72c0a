//! The map `K -> (-A)^(-3 w(K)) K'` from the Jones module onto reduced bracket modules,
//! graded by homology class, and the framing invariant of the Przytycki module.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::bracket::{bracket_resolve, glue_elements, BracketElement, LaminarMulticurve};
use crate::diagram::{glue_diagrams, multicurve_diagram, reference_diagram, GlueMode, SlicedDiagram};
use crate::error::{Result, SkeinError};
use crate::homology::{gcd_bound_check, glue_classes, glue_data, omega, HomClass, ManifoldHomologyData};
use crate::jones::{jones_polynomial, FormalTangleSum, SkeinEvaluator};
use crate::laurent::{substitute_jones_var, JonesPoly, LaurentPoly};

/// The image of an oriented diagram. Two images are equal when their mod 2 tags, reduction
/// indices and bracket elements agree; the integral class and reference are carried along
/// for reporting only.
#[derive(Clone, Debug, Serialize)]
pub struct KappaImage {
    pub mod2: Vec<u8>,
    pub reduction: u64,
    pub element: BracketElement,
    pub class: HomClass,
    #[serde(serialize_with = "as_diagram_json")]
    pub reference: SlicedDiagram,
}

fn as_diagram_json<S: serde::Serializer>(d: &SlicedDiagram, s: S) -> std::result::Result<S::Ok, S::Error> {
    d.to_json().serialize(s)
}

impl PartialEq for KappaImage {
    fn eq(&self, other: &Self) -> bool {
        (&self.mod2, self.reduction, &self.element) == (&other.mod2, other.reduction, &other.element)
    }
}

impl Eq for KappaImage {}

fn class_of(d: &SlicedDiagram, data: &ManifoldHomologyData) -> Result<HomClass> {
    if data.r != d.genus() {
        return Err(SkeinError::DimensionMismatch { expected: data.r, found: d.genus() });
    }
    Ok(HomClass::free(d.winding_vector()?))
}

pub fn kappa(d: &SlicedDiagram, data: &ManifoldHomologyData) -> Result<KappaImage> {
    d.validate()?;
    let class = class_of(d, data)?;
    let n = 3 * omega(data, &class)?;
    let w = d.writhe()?;
    let element = bracket_resolve(&d.unoriented(), 0)?
        .scale(&LaurentPoly::unit_power(-3 * w))
        .project(n)?;
    Ok(KappaImage {
        mod2: class.mod2(),
        reduction: n,
        element,
        reference: reference_diagram(&class.free)?,
        class,
    })
}

/// Images of a formal sum, one per homology class that occurs, in class order. Zero images
/// are kept so that callers can see every grade.
pub fn kappa_formal(sum: &FormalTangleSum, data: &ManifoldHomologyData) -> Result<Vec<KappaImage>> {
    let mut grades: BTreeMap<Vec<i64>, KappaImage> = BTreeMap::new();
    for (d, c) in sum.terms() {
        let mut img = kappa(d, data)?;
        img.element = img.element.scale(c);
        match grades.get_mut(&img.class.free) {
            Some(acc) => acc.element = acc.element.try_add(&img.element)?,
            None => {
                grades.insert(img.class.free.clone(), img);
            }
        }
    }
    Ok(grades.into_values().collect())
}

/// Evaluates formal sums through `kappa` for fixed manifold data.
pub struct KappaEvaluator {
    pub data: ManifoldHomologyData,
}

impl SkeinEvaluator for KappaEvaluator {
    fn vanishes_on(&self, sum: &FormalTangleSum) -> Result<bool> {
        Ok(kappa_formal(sum, &self.data)?.iter().all(|img| img.element.is_zero()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PrzytyckiClass {
    pub class: HomClass,
    pub omega: u64,
    /// Framing exponent relative to the reference diagram; a residue mod `2 omega` when
    /// `omega > 0`.
    pub exponent: i64,
    #[serde(serialize_with = "as_diagram_json")]
    pub reference: SlicedDiagram,
}

pub fn przytycki_class(d: &SlicedDiagram, data: &ManifoldHomologyData) -> Result<PrzytyckiClass> {
    d.validate()?;
    let class = class_of(d, data)?;
    let w = omega(data, &class)?;
    let reference = reference_diagram(&class.free)?;
    let raw = d.writhe()? - reference.writhe()?;
    let exponent = if w > 0 { raw.rem_euclid(2 * w as i64) } else { raw };
    Ok(PrzytyckiClass { class, omega: w, exponent, reference })
}

/// Both sides of Kauffman's formula for a closed oriented diagram in the disk: the
/// normalized bracket with `A = t^(-1/4)`, and the skein-relation Jones polynomial.
pub fn kauffman_formula_values(d: &SlicedDiagram) -> Result<(JonesPoly, JonesPoly)> {
    if d.genus() != 0 {
        return Err(SkeinError::InvalidParams("Kauffman's formula is checked in the disk only".into()));
    }
    if !d.is_closed() {
        return Err(SkeinError::NotClosed);
    }
    let img = kappa(d, &ManifoldHomologyData::ball())?;
    let scalar = img
        .element
        .classical()?
        .scalar()
        .cloned()
        .ok_or_else(|| SkeinError::InvalidParams("closed diagram in the disk gave a non-scalar bracket".into()))?;
    Ok((substitute_jones_var(&scalar)?, jones_polynomial(d)?))
}

pub fn kauffman_formula_check(d: &SlicedDiagram) -> Result<bool> {
    let (lhs, rhs) = kauffman_formula_values(d)?;
    Ok(lhs == rhs)
}

/// Outcome of comparing `kappa` of a glued diagram with the glued images.
#[derive(Clone, Debug, Serialize)]
pub struct GlueReport {
    pub writhe_additive: bool,
    pub gcd_bound: bool,
    pub mod2_compatible: bool,
    pub commutes: bool,
    /// Reduction index of the ring where the two routes are compared.
    pub compared_in: u64,
}

impl GlueReport {
    pub fn ok(&self) -> bool {
        self.writhe_additive && self.gcd_bound && self.mod2_compatible && self.commutes
    }
}

pub fn glue_compat_report(
    d1: &SlicedDiagram,
    d2: &SlicedDiagram,
    mode: GlueMode,
    data1: &ManifoldHomologyData,
    data2: &ManifoldHomologyData,
) -> Result<GlueReport> {
    let glued = glue_diagrams(d1, d2, mode)?;
    let data = glue_data(data1, data2)?;
    let writhe_additive = glued.writhe()? == d1.writhe()? + d2.writhe()?;
    let (k1, k2, k) = (kappa(d1, data1)?, kappa(d2, data2)?, kappa(&glued, &data)?);
    let (w1, w2, wg) = (k1.reduction / 3, k2.reduction / 3, k.reduction / 3);
    let gcd_bound = gcd_bound_check(w1, w2, wg);
    let class = glue_classes(&k1.class, &k2.class);
    let mod2_compatible = class == k.class && class.mod2() == k.mod2;
    // route through R_{3 gcd(w1, w2)}, then down to the glued ring
    let middle = 3 * w1.gcd(&w2);
    let commutes = if gcd_bound {
        let routed = glue_elements(&k1.element.project(middle)?, &k2.element.project(middle)?, mode)?;
        routed.project(k.reduction)? == k.element
    } else {
        false
    };
    Ok(GlueReport { writhe_additive, gcd_bound, mod2_compatible, commutes, compared_in: k.reduction })
}

pub fn glue_compat_check(
    d1: &SlicedDiagram,
    d2: &SlicedDiagram,
    mode: GlueMode,
    data1: &ManifoldHomologyData,
    data2: &ManifoldHomologyData,
) -> Result<bool> {
    Ok(glue_compat_report(d1, d2, mode, data1, data2)?.ok())
}

/// All laminar multicurves over `genus` punctures with at most `max_curves` curves.
pub fn laminar_basis(genus: usize, max_curves: usize) -> Vec<LaminarMulticurve> {
    let subsets: Vec<Vec<usize>> = (1u32..1 << genus)
        .map(|mask| (0..genus).filter(|j| mask >> j & 1 == 1).map(|j| j + 1).collect())
        .collect();
    let mut out = Vec::new();
    // multisets as nondecreasing index sequences into `subsets`
    fn extend(
        subsets: &[Vec<usize>],
        start: usize,
        left: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<LaminarMulticurve>,
    ) {
        if let Ok(c) = LaminarMulticurve::curves(cur.clone()) {
            out.push(c);
        } else {
            return;
        }
        if left == 0 {
            return;
        }
        for k in start..subsets.len() {
            cur.push(subsets[k].clone());
            extend(subsets, k, left - 1, cur, out);
            cur.pop();
        }
    }
    extend(&subsets, 0, max_curves, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// The canonical counterclockwise diagram of a basis element, and whether `kappa` sends it
/// to that element with coefficient 1.
pub fn surjectivity_witness(genus: usize, class: &LaminarMulticurve) -> Result<(SlicedDiagram, bool)> {
    let LaminarMulticurve::Curves(sets) = class else {
        return Err(SkeinError::InvalidParams("witnesses are built for closed multicurves".into()));
    };
    let d = multicurve_diagram(genus, sets)?;
    let img = kappa(&d, &ManifoldHomologyData::handlebody(genus))?;
    let hit = img.element == BracketElement::basis(genus, class.clone()).project(img.reduction)?;
    Ok((d, hit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Event::*, Over};
    use crate::homology::SurfaceMarking;

    fn annulus(signs: [i8; 2]) -> SlicedDiagram {
        let d = SlicedDiagram::closed(vec![Cup(0), Cup(1), Punctures(vec![2]), Cap(1), Cap(0)]).unwrap();
        // canonical direction is clockwise around the puncture
        d.with_orientation(vec![-signs[0], -signs[1]]).unwrap()
    }

    #[test]
    fn annulus_witness_pair() {
        let data = ManifoldHomologyData::handlebody(1);
        let a = kappa(&annulus([1, -1]), &data).unwrap();
        let b = kappa(&annulus([1, 1]), &data).unwrap();
        assert_eq!(a.class.free, vec![0]);
        assert_eq!(b.class.free, vec![2]);
        let z2 = LaminarMulticurve::Curves(vec![vec![1], vec![1]]);
        assert_eq!(a.element, BracketElement::basis(1, z2));
        assert_eq!(a, b);
        assert_eq!(a.mod2, vec![0]);
    }

    #[test]
    fn kink_invariance_and_loop_value() {
        let d = SlicedDiagram::closed(vec![Cup(0), Cup(2), Cross(1, Over::L), Punctures(vec![1]), Cap(2), Cap(0)])
            .unwrap()
            .oriented_canonically();
        let data = ManifoldHomologyData::handlebody(1);
        let k = kappa(&d, &data).unwrap();
        for sign in [1, -1] {
            assert_eq!(kappa(&d.add_kink(1, 0, sign).unwrap(), &data).unwrap(), k);
        }
        let u = kappa(&d.disjoint_unknot().unwrap(), &data).unwrap();
        assert_eq!(u.element, k.element.scale(&LaurentPoly::delta()));
    }

    #[test]
    fn przytycki_exponents() {
        let d = annulus([1, 1]);
        let data = ManifoldHomologyData::handlebody(1);
        assert_eq!(przytycki_class(&d, &data).unwrap().exponent, 0);
        let k = d.add_kink(1, 0, 1).unwrap();
        assert_eq!(przytycki_class(&k, &data).unwrap().exponent, 1);
        // artificial data with omega = 1 on the class of a single core circle
        let mut art = ManifoldHomologyData::handlebody(1);
        art.kind = crate::homology::ManifoldKind::Custom;
        art.s = 1;
        art.iota = vec![vec![1]];
        art.v0 = vec![0];
        let single = SlicedDiagram::closed(vec![Cup(0), Punctures(vec![1]), Cap(0)]).unwrap().with_orientation(vec![-1]).unwrap();
        let p = przytycki_class(&single, &art).unwrap();
        assert_eq!((p.omega, p.exponent), (1, 0));
        let twice = single.add_kink(1, 0, 1).unwrap().add_kink(1, 0, 1).unwrap();
        assert_eq!(przytycki_class(&twice, &art).unwrap(), p);
        assert_eq!(kappa(&single, &art).unwrap().reduction, 3);
    }

    #[test]
    fn sigma_data_needs_matching_rank() {
        let data = ManifoldHomologyData::closed_surface_times_i(1, SurfaceMarking::VerticalPair);
        assert!(matches!(kappa(&annulus([1, 1]), &data), Err(SkeinError::DimensionMismatch { .. })));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(laminar_basis(1, 3).len(), 4);
        assert!(laminar_basis(2, 3).iter().all(|c| c.check_laminar().is_ok()));
        for g in 0..=2 {
            for c in laminar_basis(g, 3) {
                assert!(surjectivity_witness(g, &c).unwrap().1, "{c}");
            }
        }
    }

    #[test]
    fn side_by_side_core_circles() {
        let c = SlicedDiagram::closed(vec![Cup(0), Punctures(vec![1]), Cap(0)]).unwrap().with_orientation(vec![-1]).unwrap();
        let h1 = ManifoldHomologyData::handlebody(1);
        assert!(glue_compat_check(&c, &c, GlueMode::SideBySide, &h1, &h1).unwrap());
        let glued = glue_diagrams(&c, &c, GlueMode::SideBySide).unwrap();
        let k = kappa(&glued, &ManifoldHomologyData::handlebody(2)).unwrap();
        assert_eq!(k.element, BracketElement::basis(2, LaminarMulticurve::Curves(vec![vec![1], vec![2]])));
    }

    #[test]
    fn stacked_crossings() {
        let x = SlicedDiagram::new(2, 2, vec![Cross(0, Over::L)]).unwrap().with_endpoint_orientation(&[1, 1], &[1, 1], &[]).unwrap();
        let ball = ManifoldHomologyData::ball();
        assert!(glue_compat_check(&x, &x, GlueMode::Stack, &ball, &ball).unwrap());
    }
}
