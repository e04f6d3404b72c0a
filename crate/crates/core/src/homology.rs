//! Homology presentations of the supported manifolds, the affine set of relative classes,
//! and the writhe indeterminacy `omega`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SkeinError};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceMarking {
    /// `{(x,0), (x,1)}`: the two points sit over the same point of the surface.
    VerticalPair,
    /// `{(x,0), (y,0)}` on one side.
    SameSidePair,
    Empty,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManifoldKind {
    Handlebody { genus: usize },
    ClosedSurfaceTimesI { genus: usize, marking: SurfaceMarking },
    Ball,
    Custom,
}

/// `H_1` (free rank plus torsion), the rank of the free group `H_2`, and the pairing of
/// `h_1(M,P)` with `H_2`, represented through a base class `alpha_0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ManifoldHomologyData {
    #[serde(default = "custom_kind")]
    pub kind: ManifoldKind,
    #[serde(default)]
    pub label: String,
    /// Free rank of `H_1`.
    pub r: usize,
    /// Invariant factors of the torsion of `H_1`, each at least 2.
    #[serde(default)]
    pub torsion: Vec<u64>,
    /// Rank of `H_2`.
    pub s: usize,
    /// `r x s` pairing of the free part of `H_1` with the `H_2` basis.
    #[serde(default)]
    pub iota: Vec<Vec<i64>>,
    /// Pairing of the base class with the `H_2` basis.
    #[serde(default)]
    pub v0: Vec<i64>,
}

fn custom_kind() -> ManifoldKind {
    ManifoldKind::Custom
}

/// A class of `h_1(M,P)`, written as the base class plus an element of `H_1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HomClass {
    pub free: Vec<i64>,
    #[serde(default)]
    pub torsion: Vec<u64>,
    #[serde(default = "yes")]
    pub relative_to_base: bool,
}

fn yes() -> bool {
    true
}

impl HomClass {
    pub fn free(free: Vec<i64>) -> Self {
        Self { free, torsion: Vec::new(), relative_to_base: true }
    }

    pub fn with_torsion(free: Vec<i64>, torsion: Vec<u64>) -> Self {
        Self { free, torsion, relative_to_base: true }
    }

    /// Mod 2 reduction of the free and torsion parts.
    pub fn mod2(&self) -> Vec<u8> {
        self.free
            .iter()
            .map(|x| x.rem_euclid(2) as u8)
            .chain(self.torsion.iter().map(|x| (x % 2) as u8))
            .collect()
    }
}

impl ManifoldHomologyData {
    pub fn handlebody(g: usize) -> Self {
        Self {
            kind: ManifoldKind::Handlebody { genus: g },
            label: format!("handlebody:{g}"),
            r: g,
            torsion: Vec::new(),
            s: 0,
            iota: vec![Vec::new(); g],
            v0: Vec::new(),
        }
    }

    pub fn ball() -> Self {
        Self {
            kind: ManifoldKind::Ball,
            label: "ball".into(),
            ..Self::handlebody(0)
        }
    }

    /// `Sigma_h x I` for a closed surface; `H_2` is generated by the middle level surface,
    /// which pairs trivially with horizontal classes.
    pub fn closed_surface_times_i(h: usize, marking: SurfaceMarking) -> Self {
        let v0 = match marking {
            SurfaceMarking::VerticalPair => 1,
            SurfaceMarking::SameSidePair | SurfaceMarking::Empty => 0,
        };
        let tag = match marking {
            SurfaceMarking::VerticalPair => "vertical_pair",
            SurfaceMarking::SameSidePair => "same_side_pair",
            SurfaceMarking::Empty => "empty",
        };
        Self {
            kind: ManifoldKind::ClosedSurfaceTimesI { genus: h, marking },
            label: format!("sigma-times-i:{h}:{tag}"),
            r: 2 * h,
            torsion: Vec::new(),
            s: 1,
            iota: vec![vec![0]; 2 * h],
            v0: vec![v0],
        }
    }

    /// Parse `handlebody:G`, `sigma-times-i:H:MARKING`, or `ball`.
    pub fn preset(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split(':').collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| SkeinError::Parse(format!("bad genus {s:?} in {name:?}")));
        match parts.as_slice() {
            ["ball"] => Ok(Self::ball()),
            ["handlebody", g] => Ok(Self::handlebody(num(g)?)),
            ["sigma-times-i", h, m] => {
                let marking = match *m {
                    "vertical_pair" => SurfaceMarking::VerticalPair,
                    "same_side_pair" => SurfaceMarking::SameSidePair,
                    "empty" => SurfaceMarking::Empty,
                    other => return Err(SkeinError::Parse(format!("unknown marking {other:?}"))),
                };
                Ok(Self::closed_surface_times_i(num(h)?, marking))
            }
            _ => Err(SkeinError::Parse(format!("unknown manifold preset {name:?}"))),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.iota.len() != self.r {
            return Err(SkeinError::DimensionMismatch { expected: self.r, found: self.iota.len() });
        }
        if let Some(row) = self.iota.iter().find(|row| row.len() != self.s) {
            return Err(SkeinError::DimensionMismatch { expected: self.s, found: row.len() });
        }
        if self.v0.len() != self.s {
            return Err(SkeinError::DimensionMismatch { expected: self.s, found: self.v0.len() });
        }
        if self.torsion.iter().any(|&t| t < 2) {
            return Err(SkeinError::Parse("torsion invariant factors must be at least 2".into()));
        }
        Ok(())
    }

    fn handlebody_genus(&self) -> Option<usize> {
        match self.kind {
            ManifoldKind::Handlebody { genus } => Some(genus),
            ManifoldKind::Ball => Some(0),
            _ => None,
        }
    }

    /// Number of elements of `h_1(M,P)`, or `None` when infinite.
    pub fn h1_cardinality(&self) -> Option<u64> {
        (self.r == 0).then(|| self.torsion.iter().product())
    }

    fn check_class(&self, alpha: &HomClass) -> Result<()> {
        if alpha.free.len() != self.r {
            return Err(SkeinError::DimensionMismatch { expected: self.r, found: alpha.free.len() });
        }
        if !alpha.torsion.is_empty() {
            if alpha.torsion.len() != self.torsion.len() {
                return Err(SkeinError::DimensionMismatch {
                    expected: self.torsion.len(),
                    found: alpha.torsion.len(),
                });
            }
            if alpha.torsion.iter().zip(&self.torsion).any(|(x, m)| x >= m) {
                return Err(SkeinError::Parse("torsion residue out of range".into()));
            }
        }
        Ok(())
    }

    /// Pairing of `alpha` with each `H_2` basis element: `v0 + iota^T * free`.
    pub fn pairing(&self, alpha: &HomClass) -> Result<Vec<i64>> {
        self.check()?;
        self.check_class(alpha)?;
        Ok((0..self.s)
            .map(|k| self.v0[k] + alpha.free.iter().zip(&self.iota).map(|(g, row)| g * row[k]).sum::<i64>())
            .collect())
    }
}

/// Nonnegative generator of `iota(alpha (x) H_2) <= Z`.
pub fn omega(data: &ManifoldHomologyData, alpha: &HomClass) -> Result<u64> {
    Ok(data
        .pairing(alpha)?
        .into_iter()
        .fold(0i64, |acc, x| acc.gcd(&x))
        .unsigned_abs())
}

/// Boundary connected sum of handlebody data.
pub fn glue_data(d1: &ManifoldHomologyData, d2: &ManifoldHomologyData) -> Result<ManifoldHomologyData> {
    match (d1.handlebody_genus(), d2.handlebody_genus()) {
        (Some(g1), Some(g2)) => Ok(ManifoldHomologyData::handlebody(g1 + g2)),
        _ => Err(SkeinError::UnsupportedGluing(format!(
            "boundary connected sum is only realized for handlebodies, got {} and {}",
            d1.label, d2.label
        ))),
    }
}

/// Classes concatenate under the boundary connected sum.
pub fn glue_classes(a1: &HomClass, a2: &HomClass) -> HomClass {
    let mut free = a1.free.clone();
    free.extend_from_slice(&a2.free);
    let mut torsion = a1.torsion.clone();
    torsion.extend_from_slice(&a2.torsion);
    HomClass { free, torsion, relative_to_base: true }
}

/// Whether `glued` divides `gcd(w1, w2)`; 0 is divisible by everything.
pub fn gcd_bound_check(w1: u64, w2: u64, glued: u64) -> bool {
    crate::laurent::divides(glued, w1.gcd(&w2))
}
