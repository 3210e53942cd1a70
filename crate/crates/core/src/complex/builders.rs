//! Named example complexes.
//!
//! Id conventions:
//! - `cube n` / `boundary-cube n`: words over `{0,1,*}`; `d_i^a` replaces the
//!   i-th `*` by `a`. The corners are `0..0` and `1..1`.
//! - `torus n`: words over `{v,e}`; both faces replace the i-th `e` by `v`.
//!   `circle` is `torus 1`.
//! - `swiss-grid`: vertices `ij` (x = i, y = j) for a 4x4 lattice, edges
//!   `h{i}{j}` (x step) and `v{i}{j}` (y step), squares `s{i}{j}` without `s11`.
//! - `dubut-d`: squares A, B1, B2, C. B1 sits right of A, B2 above A, and C is
//!   glued onto the right edge of B1 and the top edge of B2, so the corners
//!   (2,0) and (0,2) are the single vertex `p`; `q` is the top of C.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{CellRecord, ComplexFile, FacePair, PrecubicalSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedComplex {
    Cube(usize),
    BoundaryCube(usize),
    Circle,
    Torus(usize),
    Branch,
    LetterW,
    DubutD,
    SwissGrid,
    Point,
    /// Directed graph from `a->b` tokens; a bare token adds an isolated vertex.
    Graph(Vec<(String, Option<String>)>),
}

impl FromStr for NamedComplex {
    type Err = Error;

    /// Accepts `name`, `name n`, or `name:n`; graphs as
    /// `graph a->b,b->c` (commas or spaces).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.find([' ', ':']) {
            Some(k) => (&s[..k], s[k + 1..].trim()),
            None => (s, ""),
        };
        let size = |rest: &str| -> Result<usize> {
            let n: usize =
                rest.parse().map_err(|_| Error::Parameter(format!("`{head}` needs a dimension, got `{rest}`")))?;
            if n < 1 {
                return Err(Error::Parameter(format!("`{head}` needs n >= 1")));
            }
            Ok(n)
        };
        let plain = |c: NamedComplex| -> Result<NamedComplex> {
            if rest.is_empty() {
                Ok(c)
            } else {
                Err(Error::Parameter(format!("`{head}` takes no parameter")))
            }
        };
        match head {
            "cube" => Ok(NamedComplex::Cube(size(rest)?)),
            "boundary-cube" => Ok(NamedComplex::BoundaryCube(size(rest)?)),
            "torus" => Ok(NamedComplex::Torus(size(rest)?)),
            "circle" => plain(NamedComplex::Circle),
            "branch" => plain(NamedComplex::Branch),
            "letter-w" => plain(NamedComplex::LetterW),
            "dubut-d" => plain(NamedComplex::DubutD),
            "swiss-grid" => plain(NamedComplex::SwissGrid),
            "point" => plain(NamedComplex::Point),
            "graph" => {
                let mut items = Vec::new();
                for tok in rest.split([',', ' ']).filter(|t| !t.is_empty()) {
                    match tok.split_once("->") {
                        Some((a, b)) if !a.is_empty() && !b.is_empty() => {
                            items.push((a.to_string(), Some(b.to_string())))
                        }
                        Some(_) => return Err(Error::Parameter(format!("bad graph edge `{tok}`"))),
                        None => items.push((tok.to_string(), None)),
                    }
                }
                if items.is_empty() {
                    return Err(Error::Parameter("graph needs at least one vertex".into()));
                }
                Ok(NamedComplex::Graph(items))
            }
            _ => Err(Error::UnknownComplex(s.to_string())),
        }
    }
}

impl fmt::Display for NamedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedComplex::Cube(n) => write!(f, "cube {n}"),
            NamedComplex::BoundaryCube(n) => write!(f, "boundary-cube {n}"),
            NamedComplex::Circle => f.write_str("circle"),
            NamedComplex::Torus(n) => write!(f, "torus {n}"),
            NamedComplex::Branch => f.write_str("branch"),
            NamedComplex::LetterW => f.write_str("letter-w"),
            NamedComplex::DubutD => f.write_str("dubut-d"),
            NamedComplex::SwissGrid => f.write_str("swiss-grid"),
            NamedComplex::Point => f.write_str("point"),
            NamedComplex::Graph(items) => {
                f.write_str("graph")?;
                for (k, (a, b)) in items.iter().enumerate() {
                    f.write_str(if k == 0 { " " } else { "," })?;
                    match b {
                        Some(b) => write!(f, "{a}->{b}")?,
                        None => f.write_str(a)?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl NamedComplex {
    pub fn file(&self) -> ComplexFile {
        let name = self.to_string();
        let cells = match self {
            NamedComplex::Cube(n) => cube_cells(*n, true),
            NamedComplex::BoundaryCube(n) => cube_cells(*n, false),
            NamedComplex::Circle => torus_cells(1),
            NamedComplex::Torus(n) => torus_cells(*n),
            NamedComplex::Branch => graph_cells(&[("O", "X"), ("O", "Y")], |a, b| format!("{a}{b}")),
            NamedComplex::LetterW => {
                graph_cells(&[("B", "A"), ("B", "C"), ("D", "C"), ("D", "E")], |a, b| format!("{a}{b}"))
            }
            NamedComplex::DubutD => dubut_cells(),
            NamedComplex::SwissGrid => grid_cells(),
            NamedComplex::Point => vec![vertex("p")],
            NamedComplex::Graph(items) => user_graph_cells(items),
        };
        ComplexFile { name, cells }
    }

    pub fn build(&self) -> Result<PrecubicalSet> {
        PrecubicalSet::from_file(&self.file())
    }
}

/// Parses and builds a named complex, e.g. `"boundary-cube 2"`.
pub fn build_named(spec: &str) -> Result<PrecubicalSet> {
    spec.parse::<NamedComplex>()?.build()
}

fn vertex(id: &str) -> CellRecord {
    CellRecord { id: id.into(), dim: 0, faces: BTreeMap::new() }
}

fn cell(id: impl Into<String>, faces: Vec<(String, String)>) -> CellRecord {
    let dim = faces.len() as i64;
    let faces = faces.into_iter().enumerate().map(|(i, (m, p))| (i as u32 + 1, FacePair::new(m, p))).collect();
    CellRecord { id: id.into(), dim, faces }
}

fn replace_nth(word: &[u8], marker: u8, i: usize, by: u8) -> String {
    let mut out = word.to_vec();
    let pos = word.iter().enumerate().filter(|(_, &c)| c == marker).nth(i).unwrap().0;
    out[pos] = by;
    String::from_utf8(out).unwrap()
}

fn words(alphabet: &[u8], n: usize) -> Vec<Vec<u8>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect()
    })
}

fn cube_cells(n: usize, with_top: bool) -> Vec<CellRecord> {
    words(b"01*", n)
        .into_iter()
        .filter(|w| with_top || w.iter().any(|&c| c != b'*'))
        .map(|w| {
            let d = w.iter().filter(|&&c| c == b'*').count();
            let faces = (0..d).map(|i| (replace_nth(&w, b'*', i, b'0'), replace_nth(&w, b'*', i, b'1'))).collect();
            cell(String::from_utf8(w).unwrap(), faces)
        })
        .collect()
}

fn torus_cells(n: usize) -> Vec<CellRecord> {
    words(b"ve", n)
        .into_iter()
        .map(|w| {
            let d = w.iter().filter(|&&c| c == b'e').count();
            let faces = (0..d)
                .map(|i| {
                    let f = replace_nth(&w, b'e', i, b'v');
                    (f.clone(), f)
                })
                .collect();
            cell(String::from_utf8(w).unwrap(), faces)
        })
        .collect()
}

fn graph_cells(edges: &[(&str, &str)], name: impl Fn(&str, &str) -> String) -> Vec<CellRecord> {
    let mut cells: Vec<CellRecord> = Vec::new();
    for &(a, b) in edges {
        for v in [a, b] {
            if !cells.iter().any(|c| c.id == v) {
                cells.push(vertex(v));
            }
        }
    }
    for &(a, b) in edges {
        cells.push(cell(name(a, b), vec![(a.into(), b.into())]));
    }
    cells
}

fn user_graph_cells(items: &[(String, Option<String>)]) -> Vec<CellRecord> {
    let mut cells: Vec<CellRecord> = Vec::new();
    let add_vertex = |cells: &mut Vec<CellRecord>, v: &str| {
        if !cells.iter().any(|c| c.dim == 0 && c.id == v) {
            cells.push(vertex(v));
        }
    };
    let mut edges: Vec<CellRecord> = Vec::new();
    for (a, b) in items {
        add_vertex(&mut cells, a);
        if let Some(b) = b {
            add_vertex(&mut cells, b);
            let base = format!("{a}->{b}");
            let dup = edges.iter().filter(|e| e.id == base || e.id.starts_with(&format!("{base}#"))).count();
            let id = if dup == 0 { base } else { format!("{base}#{dup}") };
            edges.push(cell(id, vec![(a.clone(), b.clone())]));
        }
    }
    cells.extend(edges);
    cells
}

fn grid_cells() -> Vec<CellRecord> {
    let v = |i: usize, j: usize| format!("{i}{j}");
    let mut cells = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            cells.push(vertex(&v(i, j)));
            if i < 3 {
                cells.push(cell(format!("h{i}{j}"), vec![(v(i, j), v(i + 1, j))]));
            }
            if j < 3 {
                cells.push(cell(format!("v{i}{j}"), vec![(v(i, j), v(i, j + 1))]));
            }
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if (i, j) == (1, 1) {
                continue;
            }
            cells.push(cell(
                format!("s{i}{j}"),
                vec![(format!("v{i}{j}"), format!("v{}{j}", i + 1)), (format!("h{i}{j}"), format!("h{i}{}", j + 1))],
            ));
        }
    }
    cells
}

fn dubut_cells() -> Vec<CellRecord> {
    let mut cells: Vec<CellRecord> = ["00", "10", "01", "11", "21", "12", "p", "q"].into_iter().map(vertex).collect();
    let edge = |a: &str, b: &str| cell(format!("{a}-{b}"), vec![(a.into(), b.into())]);
    for (a, b) in [
        ("00", "01"),
        ("10", "11"),
        ("00", "10"),
        ("01", "11"),
        ("p", "21"),
        ("10", "p"),
        ("11", "21"),
        ("01", "p"),
        ("11", "12"),
        ("p", "12"),
        ("12", "q"),
        ("21", "q"),
    ] {
        cells.push(edge(a, b));
    }
    let square = |id: &str, sides: [(&str, &str); 4]| {
        let e = |(a, b): (&str, &str)| format!("{a}-{b}");
        cell(id, vec![(e(sides[0]), e(sides[1])), (e(sides[2]), e(sides[3]))])
    };
    cells.push(square("A", [("00", "01"), ("10", "11"), ("00", "10"), ("01", "11")]));
    cells.push(square("B1", [("10", "11"), ("p", "21"), ("10", "p"), ("11", "21")]));
    cells.push(square("B2", [("01", "p"), ("11", "12"), ("01", "11"), ("p", "12")]));
    cells.push(square("C", [("p", "21"), ("12", "q"), ("p", "12"), ("21", "q")]));
    cells
}
