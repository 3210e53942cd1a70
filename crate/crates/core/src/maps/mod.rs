//! Vertex-level d-maps between complexes, their admissibility, enumeration
//! and the path-space-preserving (psp) test at the level of path components.

pub mod dhe;
pub mod homotopy;
pub mod monoid;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Edge, PrecubicalSet, Vertex};
use crate::error::{Error, Result};
use crate::paths::{ClassId, ClassTable, Space};

pub use dhe::{check_dhe, search_dhe, DheCertificate, DheFile, DheSearch, DheVerdict, RatherFile};
pub use homotopy::{
    check_inessential, check_rather_inessential, check_witness, find_witness, find_witness_chain, witness, Alpha,
    ChainFile, Direction, HomotopyWitness, InessentialSet, RatherCertificate, Verdict, WitnessChain, WitnessFile,
};
pub use monoid::{verify_insertion, MonoidTable};

/// A vertex map `X -> Y`. Each source edge `a -> b` goes to the smallest-id
/// edge `f(a) -> f(b)` when one exists, and collapses when `f(a) = f(b)`
/// otherwise. Admissibility is checked separately.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleMap {
    pub vertices: Vec<Vertex>,
}

impl AdmissibleMap {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        AdmissibleMap { vertices }
    }

    pub fn identity(n: usize) -> Self {
        AdmissibleMap { vertices: (0..n as u32).map(Vertex).collect() }
    }

    pub fn constant(n: usize, v: Vertex) -> Self {
        AdmissibleMap { vertices: vec![v; n] }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertices[v.0 as usize]
    }

    /// `self ∘ g` (apply `g` first).
    pub fn after(&self, g: &AdmissibleMap) -> AdmissibleMap {
        AdmissibleMap { vertices: g.vertices.iter().map(|&v| self.apply(v)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(k, v)| v.0 as usize == k)
    }

    /// Image of a single edge: `Some(None)` for a collapse, `None` if the
    /// edge has no image.
    pub fn edge_image(&self, x: &PrecubicalSet, y: &PrecubicalSet, e: Edge) -> Option<Option<Edge>> {
        let (a, b) = (self.apply(x.src(e)), self.apply(x.tgt(e)));
        match y.edge_between(a, b) {
            Some(img) => Some(Some(img)),
            None if a == b => Some(None),
            None => None,
        }
    }

    /// Image path of a sequence of edges, dropping collapsed edges.
    pub fn image_edges(&self, x: &PrecubicalSet, y: &PrecubicalSet, edges: &[Edge]) -> Option<Vec<Edge>> {
        let mut out = Vec::with_capacity(edges.len());
        for &e in edges {
            if let Some(img) = self.edge_image(x, y, e)? {
                out.push(img);
            }
        }
        Some(out)
    }

    /// Image class of every source class (by global class id).
    pub fn class_images(&self, x: &Space, y: &Space) -> Vec<Option<ClassId>> {
        (0..x.table.num_classes() as u32)
            .map(|c| {
                let rep = x.table.representative(ClassId(c));
                let img = self.image_edges(&x.complex, &y.complex, &rep.edges)?;
                y.table.class_of_edges(self.apply(rep.src), &img)
            })
            .collect()
    }

    pub fn display<'a>(&'a self, x: &'a PrecubicalSet, y: &'a PrecubicalSet) -> impl fmt::Display + 'a {
        MapDisplay(self, x, y)
    }

    pub fn to_file(&self, x: &PrecubicalSet, y: &PrecubicalSet) -> MapFile {
        MapFile {
            source: x.name().to_string(),
            target: y.name().to_string(),
            vertices: x
                .vertices()
                .map(|v| (x.vertex_id(v).to_string(), y.vertex_id(self.apply(v)).to_string()))
                .collect(),
        }
    }

    pub fn from_file(x: &PrecubicalSet, y: &PrecubicalSet, file: &MapFile) -> Result<Self> {
        for k in file.vertices.keys() {
            x.vertex(k)?;
        }
        let vertices = x
            .vertices()
            .map(|v| {
                let id = x.vertex_id(v);
                let t = file
                    .vertices
                    .get(id)
                    .ok_or_else(|| Error::Parameter(format!("map file has no image for vertex {id}")))?;
                y.vertex(t)
            })
            .collect::<Result<_>>()?;
        Ok(AdmissibleMap { vertices })
    }
}

struct MapDisplay<'a>(&'a AdmissibleMap, &'a PrecubicalSet, &'a PrecubicalSet);

impl fmt::Display for MapDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for v in self.1.vertices() {
            if v.0 > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}->{}", self.1.vertex_id(v), self.2.vertex_id(self.0.apply(v)))?;
        }
        f.write_str("}")
    }
}

/// On-disk map: `{"source", "target", "vertices": {src: tgt}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub vertices: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    Arity { expected: usize, found: usize },
    Edge { edge: String, from: String, to: String },
    Square { square: String },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::Arity { expected, found } => {
                write!(f, "map has {found} vertex images, source has {expected} vertices")
            }
            MapViolation::Edge { edge, from, to } => write!(f, "edge {edge}: no edge {from} -> {to}"),
            MapViolation::Square { square } => write!(f, "square {square}: corner paths not dihomotopic"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub violations: Vec<MapViolation>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.admissible() {
            return f.write_str("admissible");
        }
        f.write_str("not admissible")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn square_ok(f: &AdmissibleMap, x: &PrecubicalSet, y: &Space, s: u32) -> bool {
    let [c0, c1] = x.square_corners(s);
    let start = f.apply(x.src(c0.0));
    let img = |c: (Edge, Edge)| f.image_edges(x, &y.complex, &[c.0, c.1]);
    match (img(c0), img(c1)) {
        (Some(p), Some(q)) if p == q => true,
        (Some(p), Some(q)) => {
            let (cp, cq) = (y.table.class_of_edges(start, &p), y.table.class_of_edges(start, &q));
            cp.is_some() && cp == cq
        }
        _ => false,
    }
}

/// Edge and square conditions.
pub fn check_admissible(x: &Space, y: &Space, f: &AdmissibleMap) -> AdmissibilityReport {
    let (xc, yc) = (&x.complex, &y.complex);
    let mut violations = Vec::new();
    if f.vertices.len() != xc.num_vertices() || f.vertices.iter().any(|v| v.0 as usize >= yc.num_vertices()) {
        violations.push(MapViolation::Arity { expected: xc.num_vertices(), found: f.vertices.len() });
        return AdmissibilityReport { violations };
    }
    let mut edges_ok = true;
    for e in xc.edges() {
        if f.edge_image(xc, yc, e).is_none() {
            edges_ok = false;
            violations.push(MapViolation::Edge {
                edge: xc.edge_id(e).to_string(),
                from: yc.vertex_id(f.apply(xc.src(e))).to_string(),
                to: yc.vertex_id(f.apply(xc.tgt(e))).to_string(),
            });
        }
    }
    if edges_ok {
        for s in 0..xc.num_squares() as u32 {
            if !square_ok(f, xc, y, s) {
                violations.push(MapViolation::Square { square: xc.cell_id(2, s).to_string() });
            }
        }
    }
    AdmissibilityReport { violations }
}

pub(crate) fn require_admissible(x: &Space, y: &Space, f: &AdmissibleMap) -> Result<()> {
    let report = check_admissible(x, y, f);
    if report.admissible() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(report.violations[0].to_string()))
    }
}

/// Induced map on the classes of the pair `(a, b)`: the i-th entry is the
/// image of the i-th class of `(a, b)` among the classes of `(fa, fb)`.
pub fn induced_class_map(x: &Space, y: &Space, f: &AdmissibleMap, a: Vertex, b: Vertex) -> Result<Vec<u32>> {
    require_admissible(x, y, f)?;
    x.table
        .pair(a, b)
        .map(|c| {
            let rep = x.table.representative(c);
            let img = f.image_edges(&x.complex, &y.complex, &rep.edges).expect("admissible");
            y.table.class_of_edges(f.apply(a), &img).map(|c| y.table.local(c)).ok_or(Error::BeyondBound(
                match y.table.mode() {
                    crate::paths::Mode::Bounded(l) => l,
                    crate::paths::Mode::Exhaustive => usize::MAX,
                },
            ))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PspReport {
    pub psp: bool,
    /// Counts come from a bounded table, so the verdict is relative to it.
    pub relative_to_bound: bool,
    /// First reachable pair (source ids) where the class map is not bijective.
    pub failure: Option<(String, String)>,
}

fn first_psp_failure(x: &Space, y: &Space, f: &AdmissibleMap, images: &[Option<ClassId>]) -> Option<(Vertex, Vertex)> {
    let mut seen = Vec::new();
    for (a, b) in x.pairs() {
        if x.table.count(a, b) != y.table.count(f.apply(a), f.apply(b)) {
            return Some((a, b));
        }
        seen.clear();
        for c in x.table.pair(a, b) {
            match images[c.0 as usize] {
                Some(img) if !seen.contains(&img) => seen.push(img),
                _ => return Some((a, b)),
            }
        }
    }
    None
}

pub(crate) fn is_psp_unchecked(x: &Space, y: &Space, f: &AdmissibleMap) -> bool {
    first_psp_failure(x, y, f, &f.class_images(x, y)).is_none()
}

/// True iff the induced class map is a bijection on every reachable pair.
pub fn check_psp(x: &Space, y: &Space, f: &AdmissibleMap) -> Result<PspReport> {
    require_admissible(x, y, f)?;
    let failure = first_psp_failure(x, y, f, &f.class_images(x, y));
    Ok(PspReport {
        psp: failure.is_none(),
        relative_to_bound: !(x.table.is_exhaustive() && y.table.is_exhaustive()),
        failure: failure.map(|(a, b)| (x.complex.vertex_id(a).to_string(), x.complex.vertex_id(b).to_string())),
    })
}

/// True iff every induced class map is injective (psp without surjectivity).
pub(crate) fn is_class_injective(x: &Space, y: &Space, f: &AdmissibleMap) -> bool {
    let images = f.class_images(x, y);
    let mut seen = Vec::new();
    x.pairs().all(|(a, b)| {
        seen.clear();
        x.table.pair(a, b).all(|c| match images[c.0 as usize] {
            Some(img) if !seen.contains(&img) => {
                seen.push(img);
                true
            }
            _ => false,
        })
    })
}

/// Options for [`enumerate_maps`].
#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Maximum number of search nodes (candidate assignments).
    pub budget: Option<u64>,
    /// Keep only psp maps (and prune with class-count equality).
    pub psp_only: bool,
    /// `allowed[v][w]`: may source vertex v go to target vertex w.
    pub allowed: Option<Vec<Vec<bool>>>,
}

/// Result of a completed enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub maps: Vec<AdmissibleMap>,
    pub explored: u64,
}

struct Plan {
    order: Vec<Vertex>,
    // for step k: (neighbour assigned earlier, edge goes from the current vertex)
    links: Vec<Vec<(Vertex, bool)>>,
    squares: Vec<Vec<u32>>,
    pairs: Vec<Vec<(Vertex, Vertex)>>,
}

fn plan(x: &Space) -> Plan {
    let xc = &x.complex;
    let n = xc.num_vertices();
    let degree = |v: Vertex| xc.out_edges(v).len() + xc.in_edges(v).len();
    let neighbours = |v: Vertex| {
        xc.out_edges(v).iter().map(|&e| xc.tgt(e)).chain(xc.in_edges(v).iter().map(|&e| xc.src(e))).collect::<Vec<_>>()
    };
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = xc
            .vertices()
            .filter(|v| !placed[v.0 as usize])
            .max_by_key(|&v| {
                let linked = neighbours(v).iter().filter(|u| placed[u.0 as usize]).count();
                (linked, degree(v), std::cmp::Reverse(v.0))
            })
            .unwrap();
        placed[next.0 as usize] = true;
        order.push(next);
    }
    let mut pos = vec![0usize; n];
    for (k, v) in order.iter().enumerate() {
        pos[v.0 as usize] = k;
    }
    let mut links = vec![Vec::new(); n];
    for e in xc.edges() {
        let (a, b) = (xc.src(e), xc.tgt(e));
        let (pa, pb) = (pos[a.0 as usize], pos[b.0 as usize]);
        if pa > pb {
            links[pa].push((b, true));
        } else if pb > pa {
            links[pb].push((a, false));
        }
    }
    let mut squares = vec![Vec::new(); n];
    for s in 0..xc.num_squares() as u32 {
        let [c0, c1] = xc.square_corners(s);
        let last =
            [xc.src(c0.0), xc.tgt(c0.0), xc.tgt(c1.0), xc.tgt(c0.1)].iter().map(|v| pos[v.0 as usize]).max().unwrap();
        squares[last].push(s);
    }
    let mut pairs = vec![Vec::new(); n];
    for (a, b) in x.pairs() {
        pairs[pos[a.0 as usize].max(pos[b.0 as usize])].push((a, b));
    }
    Plan { order, links, squares, pairs }
}

struct Search<'a> {
    x: &'a Space,
    y: &'a Space,
    plan: Plan,
    opts: &'a EnumOptions,
    explored: u64,
    assign: Vec<Option<Vertex>>,
    out: Vec<AdmissibleMap>,
}

impl Search<'_> {
    fn candidates(&self, k: usize) -> Vec<Vertex> {
        let yc = &self.y.complex;
        let v = self.plan.order[k];
        let mut cands: Option<Vec<Vertex>> = None;
        for &(u, outgoing) in &self.plan.links[k] {
            let fu = self.assign[u.0 as usize].unwrap();
            let mut set: Vec<Vertex> = if outgoing {
                yc.in_edges(fu).iter().map(|&e| yc.src(e)).collect()
            } else {
                yc.out_edges(fu).iter().map(|&e| yc.tgt(e)).collect()
            };
            set.push(fu);
            set.sort();
            set.dedup();
            cands = Some(match cands {
                None => set,
                Some(prev) => prev.into_iter().filter(|w| set.binary_search(w).is_ok()).collect(),
            });
        }
        let mut cands = cands.unwrap_or_else(|| yc.vertices().collect());
        if let Some(allowed) = &self.opts.allowed {
            cands.retain(|w| allowed[v.0 as usize][w.0 as usize]);
        }
        cands
    }

    fn partial_map(&self) -> AdmissibleMap {
        AdmissibleMap { vertices: self.assign.iter().map(|v| v.unwrap_or(Vertex(0))).collect() }
    }

    fn step_ok(&self, k: usize) -> bool {
        let f = self.partial_map();
        if !self.plan.squares[k].iter().all(|&s| square_ok(&f, &self.x.complex, self.y, s)) {
            return false;
        }
        !self.opts.psp_only
            || self.plan.pairs[k]
                .iter()
                .all(|&(a, b)| self.x.table.count(a, b) == self.y.table.count(f.apply(a), f.apply(b)))
    }

    fn run(&mut self, k: usize) -> Result<()> {
        if k == self.plan.order.len() {
            let f = self.partial_map();
            if !self.opts.psp_only || is_psp_unchecked(self.x, self.y, &f) {
                self.out.push(f);
            }
            return Ok(());
        }
        let v = self.plan.order[k];
        for w in self.candidates(k) {
            self.explored += 1;
            if self.opts.budget.is_some_and(|b| self.explored > b) {
                return Err(Error::Budget { explored: self.explored - 1, found: self.out.len() });
            }
            self.assign[v.0 as usize] = Some(w);
            if self.step_ok(k) {
                self.run(k + 1)?;
            }
        }
        self.assign[v.0 as usize] = None;
        Ok(())
    }
}

/// All admissible maps `X -> Y` in lexicographic order of their vertex
/// images, by backtracking over vertices ordered by constraint degree.
pub fn enumerate_maps(x: &Space, y: &Space, opts: &EnumOptions) -> Result<Enumeration> {
    let mut search = Search {
        x,
        y,
        plan: plan(x),
        opts,
        explored: 0,
        assign: vec![None; x.complex.num_vertices()],
        out: Vec::new(),
    };
    search.run(0)?;
    let mut maps = search.out;
    maps.sort();
    Ok(Enumeration { maps, explored: search.explored })
}

/// Shorthand: all admissible maps without a budget.
pub fn all_maps(x: &Space, y: &Space) -> Vec<AdmissibleMap> {
    enumerate_maps(x, y, &EnumOptions::default()).expect("no budget").maps
}

/// Shorthand: all psp maps without a budget.
pub fn psp_maps(x: &Space, y: &Space) -> Vec<AdmissibleMap> {
    enumerate_maps(x, y, &EnumOptions { psp_only: true, ..Default::default() }).expect("no budget").maps
}

/// `f(v) ⪯ g(v)` for every v.
pub fn pointwise_le(t: &ClassTable, f: &AdmissibleMap, g: &AdmissibleMap) -> bool {
    f.vertices.iter().zip(&g.vertices).all(|(&a, &b)| t.reaches(a, b))
}
