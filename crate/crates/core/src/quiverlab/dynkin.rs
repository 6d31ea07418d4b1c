use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::preproj::first_non_quasi_dominant;
use super::{Arrow, Quiver};
use crate::error::{Error, Result};
use crate::exactcore::{FieldKind, Scalar};
use crate::polyring::{format_poly, parse_poly, Ring};

/// A simply laced Dynkin diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    fn valid(&self) -> bool {
        match *self {
            DynkinType::A(n) => n >= 1,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
        }
    }

    /// The Kleinian singularity in `k[x,y,z]`.
    pub fn polynomial(&self) -> String {
        let text = match *self {
            DynkinType::A(n) => format!("x^2+y^2+z^{}", n + 1),
            DynkinType::D(n) => format!("x^2+y^2*z+z^{}", n - 1),
            DynkinType::E(6) => "x^2+y^3+z^4".into(),
            DynkinType::E(7) => "x^2+y^3+y*z^3".into(),
            DynkinType::E(_) => "x^2+y^3+z^5".into(),
        };
        let r = Ring::new(&["x", "y", "z"], FieldKind::Rat).expect("ring");
        format_poly(&parse_poly(&r, &text).expect("table polynomial"))
    }

    /// Edges of the standard diagram on vertices `0..rank`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        match *self {
            DynkinType::A(_) => (1..n).map(|i| (i - 1, i)).collect(),
            DynkinType::D(_) => {
                let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinType::E(_) => {
                let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    fn candidates(n: usize) -> Vec<DynkinType> {
        [DynkinType::A(n), DynkinType::D(n), DynkinType::E(n)].into_iter().filter(DynkinType::valid).collect()
    }
}

/// An extended Dynkin diagram, written `Atilde3`, `Dtilde5`, `Etilde6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendedType(pub DynkinType);

impl fmt::Display for ExtendedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string();
        write!(f, "{}tilde{}", &s[..1], &s[1..])
    }
}

impl std::str::FromStr for ExtendedType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown extended Dynkin type {s}"));
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        let digits = rest.trim_start_matches("tilde").trim_start_matches('~').trim_start_matches('\u{303}');
        let n: usize = digits.parse().map_err(|_| bad())?;
        let t = match family {
            'A' => DynkinType::A(n),
            'D' => DynkinType::D(n),
            'E' => DynkinType::E(n),
            _ => return Err(bad()),
        };
        if !t.valid() {
            return Err(bad());
        }
        Ok(ExtendedType(t))
    }
}

/// The extended Dynkin quiver with extending vertex 0, arrows oriented from
/// the smaller to the larger endpoint.
pub fn extended_dynkin(t: ExtendedType) -> Quiver {
    let edges: Vec<(usize, usize)> = match t.0 {
        DynkinType::A(1) => vec![(0, 1), (0, 1)],
        DynkinType::A(n) => {
            let mut e: Vec<(usize, usize)> = (1..=n).map(|i| (i - 1, i)).collect();
            e.push((0, n));
            e
        }
        DynkinType::D(n) => {
            let mut e = vec![(0, 2), (1, 2)];
            e.extend((3..=n - 1).map(|i| (i - 1, i)));
            e.push((n - 2, n));
            e
        }
        DynkinType::E(6) => vec![(0, 1), (1, 4), (2, 3), (3, 4), (4, 5), (5, 6)],
        DynkinType::E(7) => {
            let mut e: Vec<(usize, usize)> = (1..=6).map(|i| (i - 1, i)).collect();
            e.push((3, 7));
            e
        }
        DynkinType::E(_) => {
            let mut e: Vec<(usize, usize)> = (1..=7).map(|i| (i - 1, i)).collect();
            e.push((5, 8));
            e
        }
    };
    let n = t.0.rank() + 1;
    Quiver {
        vertices: (0..n).map(|i| i.to_string()).collect(),
        arrows: edges
            .iter()
            .enumerate()
            .map(|(k, &(u, v))| Arrow { name: format!("a{k}"), from: u, to: v, degree: 0 })
            .collect(),
        extending: Some(0),
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

fn degree_sequence(adj: &[Vec<bool>]) -> Vec<usize> {
    let mut d: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    d.sort_unstable();
    d
}

fn isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == a.len() {
            return true;
        }
        for c in 0..b.len() {
            if used[c] || (0..k).any(|i| a[k][i] != b[c][map[i]]) {
                continue;
            }
            map.push(c);
            used[c] = true;
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[c] = false;
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// Recognises a connected simple graph on `0..n` as a Dynkin diagram.
pub fn classify_graph(n: usize, edges: &[(usize, usize)]) -> Option<DynkinType> {
    let simple: BTreeSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    if n == 0 || simple.len() != edges.len() || edges.len() + 1 != n || edges.iter().any(|&(u, v)| u == v) {
        return None;
    }
    let adj = adjacency(n, edges);
    let seq = degree_sequence(&adj);
    DynkinType::candidates(n).into_iter().find(|t| {
        let cadj = adjacency(n, &t.edges());
        degree_sequence(&cadj) == seq && isomorphic(&adj, &cadj)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(rename = "type")]
    pub dynkin: String,
    pub polynomial: String,
    pub vertices: Vec<String>,
}

/// Blocks of the singularity category of a deformed Kleinian singularity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub quiver: String,
    pub lambda: Vec<String>,
    pub blocks: Vec<Block>,
}

/// Blocks for an extended Dynkin type, with weights on the non-extending vertices
/// (or on all vertices, the extending entry being ignored).
pub fn dsg_blocks(t: ExtendedType, lambda: &[Scalar]) -> Result<BlockReport> {
    let mut r = dsg_blocks_for(&extended_dynkin(t), lambda)?;
    r.quiver = t.to_string();
    Ok(r)
}

/// Blocks for a quiver with a marked extending vertex.
///
/// The zero-weight vertices of the non-extending part span a full subquiver
/// whose connected components are classified as Dynkin diagrams.
pub fn dsg_blocks_for(q: &Quiver, lambda: &[Scalar]) -> Result<BlockReport> {
    let ext = q.extending.ok_or_else(|| Error::Invalid("quiver has no extending vertex".into()))?;
    let inner: Vec<usize> = (0..q.num_vertices()).filter(|&v| v != ext).collect();
    let weights: Vec<Scalar> = if lambda.len() == inner.len() {
        lambda.to_vec()
    } else if lambda.len() == q.num_vertices() {
        inner.iter().map(|&v| lambda[v].clone()).collect()
    } else {
        return Err(Error::Invalid(format!("expected {} weights, got {}", inner.len(), lambda.len())));
    };
    if let Some(i) = first_non_quasi_dominant(&weights) {
        return Err(Error::NotQuasiDominant(inner[i]));
    }
    let zero: Vec<usize> = inner.iter().zip(&weights).filter(|(_, w)| w.is_zero()).map(|(&v, _)| v).collect();
    let edges = q.edges();
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for &v in &zero {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = vec![v];
        seen.insert(v);
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            for &(a, b) in &edges {
                let w = if a == u { b } else if b == u { a } else { continue };
                if zero.contains(&w) && seen.insert(w) {
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        let local: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| comp.contains(a) && comp.contains(b))
            .map(|(a, b)| (comp.iter().position(|x| x == a).unwrap(), comp.iter().position(|x| x == b).unwrap()))
            .collect();
        let t = classify_graph(comp.len(), &local)
            .ok_or_else(|| Error::Invalid(format!("component at vertex {} is not a Dynkin diagram", q.vertices[v])))?;
        blocks.push((t, comp));
    }
    blocks.sort();
    Ok(BlockReport {
        quiver: "custom".into(),
        lambda: weights.iter().map(|w| w.to_string()).collect(),
        blocks: blocks
            .into_iter()
            .map(|(t, comp)| Block {
                dynkin: t.to_string(),
                polynomial: t.polynomial(),
                vertices: comp.iter().map(|&v| q.vertices[v].clone()).collect(),
            })
            .collect(),
    })
}
