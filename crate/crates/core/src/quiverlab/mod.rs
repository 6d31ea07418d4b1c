//! Quivers, path algebras, preprojective algebras, Drinfeld quotients and
//! Kleinian block decompositions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod drinfeld;
mod dynkin;
mod paths;
mod preproj;

#[cfg(test)]
mod tests;

pub use drinfeld::{
    drinfeld_cohomology, drinfeld_quotient, end_of_sum_with_residue, DrinfeldCohomology, DrinfeldComplex,
    TensorBase,
};
pub use dynkin::{
    classify_graph, dsg_blocks, dsg_blocks_for, extended_dynkin, Block, BlockReport, DynkinType, ExtendedType,
};
pub use paths::{path_basis, path_multiply, quotient_algebra, truncated_algebra_dim, LengthDims, Path, PathElement};
pub use preproj::{
    derived_preprojective, first_non_quasi_dominant, parse_weights, preprojective_relations, quasi_dominant,
    DGQuiverAlgebra,
};

fn is_zero(d: &i64) -> bool {
    *d == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub from: usize,
    pub to: usize,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub degree: i64,
}

/// A finite quiver. Paths compose left to right: `a b` is `a` followed by `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extending: Option<usize>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> Result<Self> {
        let q = Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(n, f, t)| Arrow { name: n.to_string(), from: f, to: t, degree: 0 })
                .collect(),
            extending: None,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let q: Quiver = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::Invalid("quiver has no vertices".into()));
        }
        for a in &self.arrows {
            if a.from >= n || a.to >= n {
                return Err(Error::Invalid(format!("arrow {} has an endpoint out of range", a.name)));
            }
        }
        let mut names: Vec<&str> = self.arrows.iter().map(|a| a.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("arrow names are not distinct".into()));
        }
        if matches!(self.extending, Some(v) if v >= n) {
            return Err(Error::Invalid("extending vertex out of range".into()));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// The double quiver: every arrow `a: i -> j` gains a partner `a*: j -> i`.
    pub fn double(&self) -> Quiver {
        let mut arrows = self.arrows.clone();
        arrows.extend(self.arrows.iter().map(|a| Arrow {
            name: format!("{}*", a.name),
            from: a.to,
            to: a.from,
            degree: a.degree,
        }));
        Quiver { vertices: self.vertices.clone(), arrows, extending: self.extending }
    }

    /// Underlying undirected edges, one per arrow, loops dropped.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.from != a.to).map(|a| (a.from.min(a.to), a.from.max(a.to))).collect()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}
