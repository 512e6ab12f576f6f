use crate::error::{Error, Result};
use crate::manifold::{library, SkeletonKind, TriangulatedManifold};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;

/// JSON description of an oriented triangulated manifold.
///
/// `simplices[i]` is a top simplex with the vertex order it is listed in and
/// `orientation[i]` is its sign relative to that order. Named boundary
/// components, when present, must be exactly the boundary components of the
/// manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldFile {
    pub dimension: usize,
    pub vertices: usize,
    pub simplices: Vec<Vec<u32>>,
    pub orientation: Vec<i8>,
    #[serde(default)]
    pub boundary: Vec<BoundaryComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skeleton: Option<SkeletonSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub name: String,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonSpec {
    pub q: usize,
    pub source: SkeletonSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkeletonSource {
    Triangulation,
    Dual,
}

impl From<SkeletonSource> for SkeletonKind {
    fn from(s: SkeletonSource) -> SkeletonKind {
        match s {
            SkeletonSource::Triangulation => SkeletonKind::Triangulation,
            SkeletonSource::Dual => SkeletonKind::Dual,
        }
    }
}

impl ManifoldFile {
    /// Boundary components are named `boundary0`, `boundary1`, … in the
    /// order returned by [`TriangulatedManifold::boundary_components`].
    pub fn from_manifold(m: &TriangulatedManifold) -> ManifoldFile {
        let (simplices, orientation) = m.oriented_facets().into_iter().unzip();
        let boundary = m
            .boundary_components()
            .into_iter()
            .enumerate()
            .map(|(i, mut vertices)| {
                vertices.sort_unstable();
                BoundaryComponent { name: format!("boundary{i}"), vertices }
            })
            .collect();
        ManifoldFile { dimension: m.dim, vertices: m.complex.n_vertices(), simplices, orientation, boundary, skeleton: None }
    }

    /// Builds and validates the manifold.
    pub fn to_manifold(&self) -> Result<TriangulatedManifold> {
        if self.simplices.len() != self.orientation.len() {
            return Err(Error::Validation(vec![format!(
                "{} simplices but {} orientation signs",
                self.simplices.len(),
                self.orientation.len()
            )]));
        }
        let mut problems = Vec::new();
        for (i, s) in self.simplices.iter().enumerate() {
            if s.len() != self.dimension + 1 {
                problems.push(format!("simplex {i} has {} vertices, expected {}", s.len(), self.dimension + 1));
            }
            if let Some(v) = s.iter().find(|&&v| v as usize >= self.vertices) {
                problems.push(format!("simplex {i} uses vertex {v} of {}", self.vertices));
            }
        }
        if let Some(i) = self.orientation.iter().position(|o| o.abs() != 1) {
            problems.push(format!("orientation sign {i} is not ±1"));
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let facets: Vec<(Vec<u32>, i8)> = self.simplices.iter().cloned().zip(self.orientation.iter().copied()).collect();
        let m = TriangulatedManifold::from_oriented_facets(self.vertices, self.dimension, &facets)?;
        if !self.boundary.is_empty() {
            let actual: BTreeSet<BTreeSet<u32>> = m.boundary_components().into_iter().map(|c| c.into_iter().collect()).collect();
            let named: BTreeSet<BTreeSet<u32>> = self.boundary.iter().map(|c| c.vertices.iter().copied().collect()).collect();
            if actual != named || named.len() != self.boundary.len() {
                return Err(Error::Validation(vec!["named boundary components differ from the boundary of the manifold".into()]));
            }
        }
        Ok(m)
    }

    pub fn component(&self, name: &str) -> Option<&BoundaryComponent> {
        self.boundary.iter().find(|c| c.name == name)
    }

    pub fn from_json(s: &str) -> Result<ManifoldFile> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn load(path: &Path) -> Result<ManifoldFile> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        ManifoldFile::from_json(&s)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
    }
}

/// A manifold named on the command line: a library name, or the path of a
/// [`ManifoldFile`].
pub struct Input {
    pub label: String,
    pub manifold: TriangulatedManifold,
    pub skeleton: Option<SkeletonSpec>,
}

impl Input {
    pub fn resolve(spec: &str) -> Result<Input> {
        if crate::manifold::library_names().contains(&spec) {
            return Ok(Input { label: spec.to_string(), manifold: library(spec)?, skeleton: None });
        }
        let path = Path::new(spec);
        if !path.exists() {
            return Err(Error::UnknownManifold(spec.to_string()));
        }
        let file = ManifoldFile::load(path)?;
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| spec.to_string());
        Ok(Input { label, manifold: file.to_manifold()?, skeleton: file.skeleton })
    }
}
