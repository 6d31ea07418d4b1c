use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::Quiver;
use crate::complexes::Grading;
use crate::error::{Error, Result};
use crate::exactcore::{common_field, Echelon, FieldKind, Scalar};
use crate::algebra::FdAlgebra;

/// A path: the trivial path `e_v` when `arrows` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), self.start, &self.arrows, self.end).cmp(&(other.arrows.len(), other.start, &other.arrows, other.end))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        Path { start: q.arrows[a].from, end: q.arrows[a].to, arrows: vec![a] }
    }

    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Self> {
        let mut p: Option<Path> = None;
        for n in names {
            let a = q.arrow_index(n).ok_or_else(|| Error::Parse(format!("unknown arrow {n}")))?;
            let next = Path::arrow(q, a);
            p = Some(match p {
                None => next,
                Some(p) => path_multiply(&p, &next).ok_or_else(|| Error::Invalid(format!("arrows do not compose at {n}")))?,
            });
        }
        p.ok_or_else(|| Error::Parse("empty path".into()))
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn degree(&self, q: &Quiver) -> i64 {
        self.arrows.iter().map(|&a| q.arrows[a].degree).sum()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.start])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

/// Left-to-right composition, `None` when the endpoints do not match.
pub fn path_multiply(p: &Path, q: &Path) -> Option<Path> {
    if p.end != q.start {
        return None;
    }
    let mut arrows = p.arrows.clone();
    arrows.extend_from_slice(&q.arrows);
    Some(Path { start: p.start, end: q.end, arrows })
}

/// All paths of length at most `max_len`, ordered by length, start and arrow word.
pub fn path_basis(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for (a, arr) in q.arrows.iter().enumerate() {
                if arr.from == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    next.push(Path { start: p.start, end: arr.to, arrows });
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A linear combination of paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathElement {
    pub terms: BTreeMap<Path, Scalar>,
}

impl PathElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&p) {
            Some(x) => x + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(p, v);
        }
    }

    pub fn add(&self, other: &PathElement) -> PathElement {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PathElement {
        let mut out = PathElement::zero();
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &PathElement) -> PathElement {
        let mut out = PathElement::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(r) = path_multiply(p, q) {
                    out.add_term(r, a * b);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest path length among the terms.
    pub fn length(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    pub fn is_length_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Path::len);
        match lens.next() {
            None => true,
            Some(l) => lens.all(|m| m == l),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (p, c) in self.terms.iter().rev() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(b) if !b.contains(['+', '-']) => (true, b.to_string()),
                _ => (false, cs.clone()),
            };
            if neg {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let name = p.display(q);
            if body == "1" {
                s.push_str(&name);
            } else if body.contains(['+', '-']) {
                s.push_str(&format!("({body})*{name}"));
            } else {
                s.push_str(&format!("{body}*{name}"));
            }
        }
        s
    }
}

/// Dimensions of the length-filtered truncations of `kQ / (relations)`.
///
/// `cumulative[n]` is the dimension of the span of paths of length at most
/// `n` modulo the span of all `p r q` of total length at most `n`;
/// `by_length[n]` is its increment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LengthDims {
    pub cumulative: Vec<usize>,
    pub by_length: Vec<i64>,
}

pub(crate) fn field_of_relations(relations: &[PathElement]) -> FieldKind {
    common_field(relations.iter().flat_map(|r| r.terms.values()), FieldKind::Rat).unwrap_or(FieldKind::Gauss)
}

/// Incremental echelon over the paths of bounded length, filled in order of total length.
pub(crate) struct Truncation {
    pub paths: Vec<Path>,
    pub index: HashMap<Path, usize>,
    pub ech: Echelon,
    pub field: FieldKind,
}

impl Truncation {
    /// `reverse` indexes long paths first so that pivots fall on the largest paths.
    pub fn new(q: &Quiver, max_len: usize, field: FieldKind, reverse: bool) -> Self {
        let paths = path_basis(q, max_len);
        let n = paths.len();
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), if reverse { n - 1 - i } else { i })).collect();
        Truncation { paths, index, ech: Echelon::new(n, field), field }
    }

    pub fn vector(&self, e: &PathElement) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.paths.len()];
        for (p, c) in &e.terms {
            v[self.index[p]] = c.clone();
        }
        v
    }

    pub fn count_up_to(&self, n: usize) -> usize {
        self.paths.iter().filter(|p| p.len() <= n).count()
    }
}

/// Every `p r q` of total length exactly `n`, where the length of `r` is its largest term.
pub(crate) fn ideal_generators(relations: &[PathElement], paths: &[Path], n: usize) -> Vec<PathElement> {
    let mut out = Vec::new();
    let mut by_len: BTreeMap<usize, Vec<&Path>> = BTreeMap::new();
    for p in paths {
        by_len.entry(p.len()).or_default().push(p);
    }
    for r in relations.iter().filter(|r| !r.is_zero()) {
        let d = r.length();
        if d > n {
            continue;
        }
        let starts: Vec<usize> = r.terms.keys().map(|p| p.start).collect();
        let ends: Vec<usize> = r.terms.keys().map(|p| p.end).collect();
        for lp in 0..=(n - d) {
            let lq = n - d - lp;
            for p in by_len.get(&lp).into_iter().flatten().filter(|p| starts.contains(&p.end)) {
                let left = PathElement::from_path((*p).clone(), Scalar::one()).mul(r);
                if left.is_zero() {
                    continue;
                }
                for s in by_len.get(&lq).into_iter().flatten().filter(|s| ends.contains(&s.start)) {
                    let full = left.mul(&PathElement::from_path((*s).clone(), Scalar::one()));
                    if !full.is_zero() {
                        out.push(full);
                    }
                }
            }
        }
    }
    out
}

/// Exact dimensions of the truncations of `kQ / (relations)` up to `max_len`.
pub fn truncated_algebra_dim(q: &Quiver, relations: &[PathElement], max_len: usize) -> LengthDims {
    let field = field_of_relations(relations);
    let mut t = Truncation::new(q, max_len, field, false);
    let paths = t.paths.clone();
    let mut cumulative = Vec::new();
    for n in 0..=max_len {
        for g in ideal_generators(relations, &paths, n) {
            let v = t.vector(&g);
            t.ech.insert(&v);
        }
        cumulative.push(t.count_up_to(n) - t.ech.rank());
    }
    let by_length = cumulative.iter().enumerate().map(|(n, &c)| c as i64 - if n == 0 { 0 } else { cumulative[n - 1] as i64 }).collect();
    LengthDims { cumulative, by_length }
}

/// The finite-dimensional algebra `kQ / (relations)` for length-homogeneous relations.
///
/// Fails with `BoundExceeded` unless every path of length `max_len + 1` lies in
/// the ideal. The basis consists of normal-form paths, graded by length.
pub fn quotient_algebra(q: &Quiver, relations: &[PathElement], max_len: usize) -> Result<FdAlgebra> {
    if let Some(r) = relations.iter().find(|r| !r.is_length_homogeneous()) {
        return Err(Error::NotHomogeneous(r.display(q)));
    }
    let field = field_of_relations(relations);
    let mut t = Truncation::new(q, max_len + 1, field, true);
    let paths = t.paths.clone();
    for n in 0..=max_len + 1 {
        for g in ideal_generators(relations, &paths, n) {
            let v = t.vector(&g);
            t.ech.insert(&v);
        }
    }
    for p in paths.iter().filter(|p| p.len() == max_len + 1) {
        let v = t.vector(&PathElement::from_path(p.clone(), Scalar::one()));
        if !t.ech.contains(&v) {
            return Err(Error::BoundExceeded(format!("path {} survives at length {}", p.display(q), max_len + 1)));
        }
    }
    let normal: Vec<&Path> = paths
        .iter()
        .filter(|p| p.len() <= max_len)
        .filter(|p| !t.ech.contains(&t.vector(&PathElement::from_path((*p).clone(), Scalar::one()))))
        .collect();
    let pos: HashMap<&Path, usize> = normal.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let coords = |e: &PathElement| -> Vec<Scalar> {
        let red = t.ech.reduce(&t.vector(e));
        let mut out = vec![field.zero(); normal.len()];
        for (i, c) in red.iter().enumerate() {
            if !c.is_zero() {
                let p = &t.paths[t.paths.len() - 1 - i];
                out[pos[p]] = c.clone();
            }
        }
        out
    };
    let table: Vec<Vec<Vec<Scalar>>> = normal
        .iter()
        .map(|a| {
            normal
                .iter()
                .map(|b| match path_multiply(a, b) {
                    Some(c) if c.len() <= max_len => coords(&PathElement::from_path(c, Scalar::one())),
                    _ => vec![field.zero(); normal.len()],
                })
                .collect()
        })
        .collect();
    let mut unit = vec![field.zero(); normal.len()];
    for v in 0..q.num_vertices() {
        if let Some(&i) = pos.get(&Path::trivial(v)) {
            unit[i] = field.one();
        }
    }
    FdAlgebra::new(
        field,
        normal.iter().map(|p| p.display(q)).collect(),
        normal.iter().map(|p| p.len() as i64).collect(),
        Grading::Z,
        table,
        unit,
    )
}
