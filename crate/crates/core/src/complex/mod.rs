//! Finite pre-cubical sets: the file format, validation, and the vertex-level
//! reachability order.

mod builders;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builders::{build_named, NamedComplex};

/// Index of a vertex in its complex (vertices sorted by id).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(pub u32);

/// Index of an edge in its complex (edges sorted by id).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];

    fn slot(self) -> usize {
        match self {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "-",
            Sign::Plus => "+",
        })
    }
}

/// The two faces of a cell in one direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePair {
    #[serde(rename = "-")]
    pub minus: String,
    #[serde(rename = "+")]
    pub plus: String,
}

impl FacePair {
    pub fn new(minus: impl Into<String>, plus: impl Into<String>) -> Self {
        FacePair { minus: minus.into(), plus: plus.into() }
    }

    fn get(&self, sign: Sign) -> &str {
        match sign {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub id: String,
    pub dim: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub faces: BTreeMap<u32, FacePair>,
}

/// On-disk form of a complex. Integer face keys keep the numeric order when
/// serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub cells: Vec<CellRecord>,
}

impl ComplexFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical serialization: cells sorted by (dim, id).
    pub fn to_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.cells.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let mut out = serde_json::to_string_pretty(&sorted).expect("complex serializes");
        out.push('\n');
        out
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateId { id: String },
    NegativeDim { id: String, dim: i64 },
    FaceIndex { cell: String, i: u32 },
    MissingFace { cell: String, i: u32 },
    Dangling { cell: String, i: u32, sign: Sign, target: String },
    FaceDim { cell: String, i: u32, sign: Sign, target: String, found: i64 },
    Relation { cell: String, i: u32, j: u32, alpha: Sign, beta: Sign, left: String, right: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate id {id}"),
            Violation::NegativeDim { id, dim } => write!(f, "cell {id}: negative dim {dim}"),
            Violation::FaceIndex { cell, i } => write!(f, "cell {cell}: face index {i} out of range"),
            Violation::MissingFace { cell, i } => write!(f, "cell {cell}: missing face {i}"),
            Violation::Dangling { cell, i, sign, target } => {
                write!(f, "cell {cell}: d{i}{sign} -> unknown cell {target}")
            }
            Violation::FaceDim { cell, i, sign, target, found } => {
                write!(f, "cell {cell}: d{i}{sign} -> {target} has dim {found}")
            }
            Violation::Relation { cell, i, j, alpha, beta, left, right } => {
                write!(f, "cell {cell}: d{i}{alpha} d{j}{beta} = {left} but d{}{beta} d{i}{alpha} = {right}", j - 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Checks ids, dimensions, face references and every pre-cubical relation
/// instance `d_i^a d_j^b = d_{j-1}^b d_i^a` (i < j).
pub fn validate(file: &ComplexFile) -> ValidationReport {
    let mut violations = Vec::new();
    let mut dims: HashMap<&str, i64> = HashMap::new();
    for cell in &file.cells {
        if dims.insert(&cell.id, cell.dim).is_some() {
            violations.push(Violation::DuplicateId { id: cell.id.clone() });
        }
        if cell.dim < 0 {
            violations.push(Violation::NegativeDim { id: cell.id.clone(), dim: cell.dim });
        }
    }
    let by_id: HashMap<&str, &CellRecord> = file.cells.iter().map(|c| (c.id.as_str(), c)).collect();

    // Cells whose own face table is well formed.
    let mut sound: HashSet<&str> = HashSet::new();
    for cell in &file.cells {
        let mut ok = cell.dim >= 0;
        for &i in cell.faces.keys() {
            if i == 0 || i64::from(i) > cell.dim {
                violations.push(Violation::FaceIndex { cell: cell.id.clone(), i });
                ok = false;
            }
        }
        for i in 1..=cell.dim.max(0) as u32 {
            let Some(pair) = cell.faces.get(&i) else {
                violations.push(Violation::MissingFace { cell: cell.id.clone(), i });
                ok = false;
                continue;
            };
            for sign in Sign::BOTH {
                let target = pair.get(sign);
                match dims.get(target) {
                    None => {
                        violations.push(Violation::Dangling {
                            cell: cell.id.clone(),
                            i,
                            sign,
                            target: target.to_string(),
                        });
                        ok = false;
                    }
                    Some(&d) if d != cell.dim - 1 => {
                        violations.push(Violation::FaceDim {
                            cell: cell.id.clone(),
                            i,
                            sign,
                            target: target.to_string(),
                            found: d,
                        });
                        ok = false;
                    }
                    Some(_) => {}
                }
            }
        }
        if ok {
            sound.insert(&cell.id);
        }
    }

    let face = |id: &str, i: u32, sign: Sign| -> Option<&str> { by_id.get(id)?.faces.get(&i).map(|p| p.get(sign)) };
    for cell in &file.cells {
        if cell.dim < 2 || !sound.contains(cell.id.as_str()) {
            continue;
        }
        let n = cell.dim as u32;
        for j in 2..=n {
            for i in 1..j {
                for alpha in Sign::BOTH {
                    for beta in Sign::BOTH {
                        let dj = face(&cell.id, j, beta).unwrap();
                        let di = face(&cell.id, i, alpha).unwrap();
                        if !sound.contains(dj) || !sound.contains(di) {
                            continue;
                        }
                        let left = face(dj, i, alpha).unwrap();
                        let right = face(di, j - 1, beta).unwrap();
                        if left != right {
                            violations.push(Violation::Relation {
                                cell: cell.id.clone(),
                                i,
                                j,
                                alpha,
                                beta,
                                left: left.to_string(),
                                right: right.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

/// A validated finite pre-cubical set. Cells of each dimension are indexed in
/// id order; `Vertex` and `Edge` are indices into dimensions 0 and 1.
#[derive(Clone, Debug)]
pub struct PrecubicalSet {
    name: String,
    ids: Vec<Vec<String>>,
    index: HashMap<String, (usize, u32)>,
    // faces[n][k][i - 1] = [d_i^- , d_i^+] as indices into dimension n - 1
    faces: Vec<Vec<Vec<[u32; 2]>>>,
    out_edges: Vec<Vec<Edge>>,
    in_edges: Vec<Vec<Edge>>,
}

impl PrecubicalSet {
    pub fn from_file(file: &ComplexFile) -> Result<Self> {
        let report = validate(file);
        if !report.passed() {
            return Err(Error::InvalidComplex(report));
        }
        let top = file.cells.iter().map(|c| c.dim as usize).max().map_or(0, |d| d + 1);
        let mut ids: Vec<Vec<String>> = vec![Vec::new(); top];
        for c in &file.cells {
            ids[c.dim as usize].push(c.id.clone());
        }
        for level in &mut ids {
            level.sort();
        }
        let mut index = HashMap::new();
        for (d, level) in ids.iter().enumerate() {
            for (k, id) in level.iter().enumerate() {
                index.insert(id.clone(), (d, k as u32));
            }
        }
        let by_id: HashMap<&str, &CellRecord> = file.cells.iter().map(|c| (c.id.as_str(), c)).collect();
        let faces: Vec<Vec<Vec<[u32; 2]>>> = ids
            .iter()
            .enumerate()
            .map(|(d, level)| {
                level
                    .iter()
                    .map(|id| {
                        let rec = by_id[id.as_str()];
                        (1..=d as u32)
                            .map(|i| {
                                let p = &rec.faces[&i];
                                [index[&p.minus].1, index[&p.plus].1]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let nv = ids.first().map_or(0, Vec::len);
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        if let Some(edges) = faces.get(1) {
            for (k, f) in edges.iter().enumerate() {
                out_edges[f[0][0] as usize].push(Edge(k as u32));
                in_edges[f[0][1] as usize].push(Edge(k as u32));
            }
        }
        Ok(PrecubicalSet { name: file.name.clone(), ids, index, faces, out_edges, in_edges })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&ComplexFile::from_json(text)?)
    }

    pub fn to_file(&self) -> ComplexFile {
        let mut cells = Vec::new();
        for (d, level) in self.ids.iter().enumerate() {
            for (k, id) in level.iter().enumerate() {
                let faces = self.faces[d][k]
                    .iter()
                    .enumerate()
                    .map(|(i, [m, p])| {
                        let below = &self.ids[d - 1];
                        (i as u32 + 1, FacePair::new(below[*m as usize].clone(), below[*p as usize].clone()))
                    })
                    .collect();
                cells.push(CellRecord { id: id.clone(), dim: d as i64, faces });
            }
        }
        ComplexFile { name: self.name.clone(), cells }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Highest dimension present, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.ids.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.ids.get(dim).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.ids.iter().map(Vec::len).sum()
    }

    pub fn num_vertices(&self) -> usize {
        self.count(0)
    }

    pub fn num_edges(&self) -> usize {
        self.count(1)
    }

    pub fn num_squares(&self) -> usize {
        self.count(2)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.num_vertices() as u32).map(Vertex)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.num_edges() as u32).map(Edge)
    }

    pub fn cell_id(&self, dim: usize, k: u32) -> &str {
        &self.ids[dim][k as usize]
    }

    pub fn vertex_id(&self, v: Vertex) -> &str {
        self.cell_id(0, v.0)
    }

    pub fn edge_id(&self, e: Edge) -> &str {
        self.cell_id(1, e.0)
    }

    /// Looks up a cell id, returning its dimension and index.
    pub fn lookup(&self, id: &str) -> Option<(usize, u32)> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        match self.lookup(id) {
            Some((0, k)) => Ok(Vertex(k)),
            _ => Err(Error::UnknownCell(id.to_string())),
        }
    }

    pub fn edge(&self, id: &str) -> Result<Edge> {
        match self.lookup(id) {
            Some((1, k)) => Ok(Edge(k)),
            _ => Err(Error::UnknownCell(id.to_string())),
        }
    }

    /// `d_i^sign` of cell `k` in dimension `dim` (1-based `i`).
    pub fn face(&self, dim: usize, k: u32, i: usize, sign: Sign) -> u32 {
        self.faces[dim][k as usize][i - 1][sign.slot()]
    }

    pub fn src(&self, e: Edge) -> Vertex {
        Vertex(self.face(1, e.0, 1, Sign::Minus))
    }

    pub fn tgt(&self, e: Edge) -> Vertex {
        Vertex(self.face(1, e.0, 1, Sign::Plus))
    }

    pub fn out_edges(&self, v: Vertex) -> &[Edge] {
        &self.out_edges[v.0 as usize]
    }

    pub fn in_edges(&self, v: Vertex) -> &[Edge] {
        &self.in_edges[v.0 as usize]
    }

    /// The smallest-id edge from `a` to `b`, if any.
    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<Edge> {
        self.out_edges(a).iter().copied().find(|&e| self.tgt(e) == b)
    }

    /// The two corner paths of square `s`: `(d2-, d1+)` and `(d1-, d2+)`.
    pub fn square_corners(&self, s: u32) -> [(Edge, Edge); 2] {
        let f = |i, sign| Edge(self.face(2, s, i, sign));
        [(f(2, Sign::Minus), f(1, Sign::Plus)), (f(1, Sign::Minus), f(2, Sign::Plus))]
    }

    /// True iff every n-cube has `2^i * C(n, i)` pairwise distinct iterated
    /// faces of codimension i, for 0 < i <= n.
    pub fn is_non_self_linked(&self) -> bool {
        for (n, level) in self.faces.iter().enumerate() {
            for k in 0..level.len() as u32 {
                let mut frontier: HashSet<u32> = HashSet::from([k]);
                for i in 1..=n {
                    let d = n - i + 1;
                    let next: HashSet<u32> =
                        frontier.iter().flat_map(|&c| self.faces[d][c as usize].iter().flatten().copied()).collect();
                    if next.len() != (1usize << i) * binomial(n, i) {
                        return false;
                    }
                    frontier = next;
                }
            }
        }
        true
    }

    pub fn reachability(&self) -> Reachability {
        Reachability::new(self)
    }

    /// True iff no vertex reaches itself through a nonempty edge path.
    pub fn is_loop_free(&self) -> bool {
        let r = self.reachability();
        self.edges().all(|e| !r.reaches(self.tgt(e), self.src(e)))
    }

    /// Cartesian product. Cell `(c, d)` has dimension `dim c + dim d`; face
    /// index i acts on the first factor for `i <= dim c`, on the second
    /// otherwise.
    pub fn product(&self, other: &PrecubicalSet) -> PrecubicalSet {
        let pid = |a: &str, b: &str| format!("({a},{b})");
        let mut cells = Vec::new();
        for (da, la) in self.ids.iter().enumerate() {
            for (ka, a) in la.iter().enumerate() {
                for (db, lb) in other.ids.iter().enumerate() {
                    for (kb, b) in lb.iter().enumerate() {
                        let mut faces = BTreeMap::new();
                        for i in 1..=da {
                            let [m, p] = self.faces[da][ka][i - 1];
                            let below = &self.ids[da - 1];
                            faces.insert(
                                i as u32,
                                FacePair::new(pid(&below[m as usize], b), pid(&below[p as usize], b)),
                            );
                        }
                        for i in 1..=db {
                            let [m, p] = other.faces[db][kb][i - 1];
                            let below = &other.ids[db - 1];
                            faces.insert(
                                (da + i) as u32,
                                FacePair::new(pid(a, &below[m as usize]), pid(a, &below[p as usize])),
                            );
                        }
                        cells.push(CellRecord { id: pid(a, b), dim: (da + db) as i64, faces });
                    }
                }
            }
        }
        let file = ComplexFile { name: format!("{}x{}", self.name, other.name), cells };
        PrecubicalSet::from_file(&file).expect("product of valid complexes is valid")
    }

    /// Resolves a vertex argument. Besides exact ids, a single character `c`
    /// names the unique vertex whose id consists only of `c` (so `0` and `1`
    /// address the corners of cube-like complexes).
    pub fn resolve_vertex(&self, arg: &str) -> Result<Vertex> {
        if let Ok(v) = self.vertex(arg) {
            return Ok(v);
        }
        let mut chars = arg.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            let hits: Vec<Vertex> = self
                .vertices()
                .filter(|&v| {
                    let id = self.vertex_id(v);
                    !id.is_empty() && id.chars().all(|x| x == c)
                })
                .collect();
            if let [v] = hits[..] {
                return Ok(v);
            }
        }
        Err(Error::UnknownCell(arg.to_string()))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Reflexive-transitive closure of the edge relation on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachability {
    n: usize,
    bits: Vec<bool>,
}

impl Reachability {
    fn new(x: &PrecubicalSet) -> Self {
        let n = x.num_vertices();
        let mut bits = vec![false; n * n];
        for s in 0..n {
            let mut stack = vec![s];
            bits[s * n + s] = true;
            while let Some(v) = stack.pop() {
                for &e in x.out_edges(Vertex(v as u32)) {
                    let t = x.tgt(e).0 as usize;
                    if !bits[s * n + t] {
                        bits[s * n + t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        Reachability { n, bits }
    }

    pub fn reaches(&self, x: Vertex, y: Vertex) -> bool {
        self.bits[x.0 as usize * self.n + y.0 as usize]
    }

    pub fn num_pairs(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Reachable pairs in (x, y) index order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.n;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (Vertex((k / n) as u32), Vertex((k % n) as u32)))
    }

    pub fn successors(&self, x: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n as u32).map(Vertex).filter(move |&y| self.reaches(x, y))
    }

    pub fn predecessors(&self, y: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n as u32).map(Vertex).filter(move |&x| self.reaches(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_file(bad: bool) -> ComplexFile {
        let v = |id: &str| CellRecord { id: id.into(), dim: 0, faces: BTreeMap::new() };
        let e = |id: &str, a: &str, b: &str| CellRecord {
            id: id.into(),
            dim: 1,
            faces: BTreeMap::from([(1, FacePair::new(a, b))]),
        };
        let mut faces = BTreeMap::from([(1, FacePair::new("0*", "1*")), (2, FacePair::new("*0", "*1"))]);
        if bad {
            faces.insert(1, FacePair::new("1*", "0*"));
        }
        ComplexFile {
            name: "sq".into(),
            cells: vec![
                v("00"),
                v("01"),
                v("10"),
                v("11"),
                e("*0", "00", "10"),
                e("*1", "01", "11"),
                e("0*", "00", "01"),
                e("1*", "10", "11"),
                CellRecord { id: "**".into(), dim: 2, faces },
            ],
        }
    }

    #[test]
    fn hand_built_square_validates() {
        assert!(validate(&square_file(false)).passed());
    }

    #[test]
    fn broken_relation_is_reported() {
        let report = validate(&square_file(true));
        assert!(!report.passed());
        assert!(report.violations.iter().all(|v| matches!(v, Violation::Relation { cell, .. } if cell == "**")));
    }

    #[test]
    fn dangling_and_dimension_errors() {
        let mut file = square_file(false);
        file.cells[4].faces.insert(1, FacePair::new("00", "zz"));
        file.cells.push(CellRecord { id: "00".into(), dim: -1, faces: BTreeMap::new() });
        let report = validate(&file);
        assert!(report.violations.contains(&Violation::DuplicateId { id: "00".into() }));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Dangling { target, .. } if target == "zz")));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NegativeDim { .. })));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let x = PrecubicalSet::from_file(&square_file(false)).unwrap();
        let text = x.to_json();
        let y = PrecubicalSet::from_json(&text).unwrap();
        assert_eq!(text, y.to_json());
        assert!(text.find("\"**\"").unwrap() > text.find("\"1*\"").unwrap());
    }

    #[test]
    fn numeric_face_key_order() {
        let x = build_named("cube 3").unwrap();
        let rec = x.to_file();
        let top = rec.cells.iter().find(|c| c.dim == 3).unwrap();
        assert_eq!(top.faces.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn reachability_counts() {
        let r = build_named("boundary-cube 2").unwrap().reachability();
        assert_eq!(r.num_pairs(), 9);
        assert_eq!(build_named("point").unwrap().reachability().num_pairs(), 1);
        assert_eq!(build_named("letter-w").unwrap().reachability().num_pairs(), 9);
    }

    #[test]
    fn loops_and_linking() {
        let circle = build_named("circle").unwrap();
        assert!(!circle.is_loop_free());
        assert!(!circle.is_non_self_linked());
        assert!(build_named("boundary-cube 3").unwrap().is_loop_free());
        assert!(build_named("dubut-d").unwrap().is_loop_free());
        assert!(build_named("cube 3").unwrap().is_non_self_linked());
        assert!(build_named("boundary-cube 2").unwrap().is_non_self_linked());
    }

    #[test]
    fn products() {
        let c = build_named("circle").unwrap();
        let t = c.product(&c);
        assert_eq!((t.num_vertices(), t.num_edges(), t.num_squares()), (1, 2, 1));
        let i = build_named("cube 1").unwrap();
        assert_eq!(i.product(&i).total_cells(), 9);
        let p = build_named("point").unwrap();
        let w = build_named("letter-w").unwrap();
        let pw = p.product(&w);
        assert_eq!(pw.total_cells(), w.total_cells());
    }

    #[test]
    fn vertex_shorthand() {
        let x = build_named("boundary-cube 3").unwrap();
        assert_eq!(x.vertex_id(x.resolve_vertex("1").unwrap()), "111");
        assert_eq!(x.vertex_id(x.resolve_vertex("0").unwrap()), "000");
        assert!(x.resolve_vertex("2").is_err());
    }
}
