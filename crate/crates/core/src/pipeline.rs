//! End-to-end runs: from a simplicial map to representations, decompositions
//! and configurations in every degree.

use std::f64::consts::TAU;

use crate::complex::{
    build_rep_leveled, build_rep_real_leveled, homology, subdivide_circle, subdivide_real, CircleMap, IntervalMap,
    LevelComplex, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::invariants::{betti_numbers, config_c, config_cm, novikov_betti, Configuration, Values};
use crate::measures::{JumpFunction, MapLevels};
use crate::quiver::{decompose_g2m, decompose_real, Decomposition, GRep, ZWindowRep};

#[derive(Clone, Debug, PartialEq)]
pub enum MapKind {
    Circle(CircleMap),
    Real(IntervalMap),
}

impl MapKind {
    pub fn values(&self) -> Values {
        match self {
            MapKind::Circle(f) => Values::Angles(f.angles.clone()),
            MapKind::Real(g) => Values::Reals(g.values.clone()),
        }
    }

    /// The map composed with the reflection `θ ↦ −θ` (or `t ↦ −t`).
    pub fn reversed(&self) -> MapKind {
        match self {
            MapKind::Circle(f) => {
                let neg: Vec<f64> = f.angles.iter().map(|&t| if t >= TAU { TAU } else { TAU - t }).collect();
                let mut order: Vec<usize> = (0..f.m).collect();
                order.sort_by(|&a, &b| neg[a].total_cmp(&neg[b]));
                let mut new_index = vec![0; f.m];
                for (pos, &j) in order.iter().enumerate() {
                    new_index[j] = pos;
                }
                let angles = order.iter().map(|&j| neg[j]).collect();
                let image = f.vertex_image.iter().map(|&j| new_index[j]).collect();
                MapKind::Circle(CircleMap { m: f.m, angles, vertex_image: image })
            }
            MapKind::Real(g) => {
                let values = g.values.iter().rev().map(|v| -v).collect();
                let image = g.vertex_image.iter().map(|&j| g.k - j).collect();
                MapKind::Real(IntervalMap { k: g.k, values, vertex_image: image })
            }
        }
    }
}

/// Representations of one degree.
#[derive(Clone, Debug)]
pub enum Rep {
    Circle(GRep),
    Real(ZWindowRep),
}

impl Rep {
    pub fn as_circle(&self) -> Option<&GRep> {
        match self {
            Rep::Circle(r) => Some(r),
            Rep::Real(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub field: Field,
    pub complex: SimplicialComplex,
    pub map: MapKind,
    pub levels: LevelComplex,
    pub values: Values,
    pub reps: Vec<Rep>,
    pub decomps: Vec<Decomposition>,
}

impl Analysis {
    /// Runs degrees `0..=dim X`.
    pub fn new(complex: SimplicialComplex, map: MapKind, field: Field) -> Result<Analysis> {
        let top = complex.dim().unwrap_or(0);
        let levels = match &map {
            MapKind::Circle(f) => subdivide_circle(&complex, f)?,
            MapKind::Real(g) => subdivide_real(&complex, g)?,
        };
        let mut reps = Vec::new();
        let mut decomps = Vec::new();
        for r in 0..=top {
            match &map {
                MapKind::Circle(f) => {
                    let rho = build_rep_leveled(&levels, f.m, &f.angles, field, r)?;
                    decomps.push(decompose_g2m(&rho)?);
                    reps.push(Rep::Circle(rho));
                }
                MapKind::Real(g) => {
                    let w = build_rep_real_leveled(&levels, g.k, &g.values, field, r)?;
                    decomps.push(decompose_real(&w)?);
                    reps.push(Rep::Real(w));
                }
            }
        }
        let values = map.values();
        Ok(Analysis { field, complex, map, levels, values, reps, decomps })
    }

    pub fn top_degree(&self) -> usize {
        self.decomps.len() - 1
    }

    pub fn config_c(&self, r: usize) -> Configuration {
        let below = r.checked_sub(1).map(|k| &self.decomps[k]);
        match self.decomps.get(r) {
            Some(d) => config_c(d, below, &self.values),
            None => {
                let empty = Decomposition { degree: r, bars: Vec::new(), jordans: Vec::new() };
                config_c(&empty, below, &self.values)
            }
        }
    }

    pub fn config_cm(&self, r: usize) -> Result<Configuration> {
        match self.decomps.get(r) {
            Some(d) => config_cm(d, &self.values),
            None => Ok(Configuration::empty(r, self.values.space())),
        }
    }

    /// Betti numbers from bars and Jordan blocks.
    pub fn betti(&self) -> Vec<usize> {
        betti_numbers(&self.decomps)
    }

    pub fn novikov_betti(&self, r: usize) -> usize {
        novikov_betti(&self.decomps, r)
    }

    /// `dim H_r(X)` by simplicial homology of the input complex.
    pub fn simplicial_betti(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|r| homology(&self.complex, self.field, r).dim()).collect()
    }

    pub fn measures(&self) -> MapLevels<'_> {
        MapLevels::new(&self.levels, &self.values, self.field)
    }

    pub fn delta(&self, r: usize) -> Result<JumpFunction> {
        self.measures().delta(r)
    }

    pub fn cm_jump(&self, r: usize) -> Result<JumpFunction> {
        self.measures().cm_jump(r)
    }

    pub fn circle_rep(&self, r: usize) -> Option<&GRep> {
        self.reps.get(r).and_then(Rep::as_circle)
    }

    /// Substitutes the representation in degree `rho.degree`, keeping the
    /// complex; used to check that the identities notice a wrong `ρ_r`.
    pub fn with_rep(mut self, rho: GRep) -> Result<Analysis> {
        let r = rho.degree;
        let MapKind::Circle(f) = &self.map else {
            return Err(Error::Argument("representation override needs a circle-valued map".into()));
        };
        if rho.m != f.m || r > self.top_degree() || rho.field != self.field {
            return Err(Error::Argument(format!("override for degree {r} does not fit the map (m = {}, dim X = {})", f.m, self.top_degree())));
        }
        self.decomps[r] = decompose_g2m(&rho)?;
        self.reps[r] = Rep::Circle(rho);
        Ok(self)
    }
}
