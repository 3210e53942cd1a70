//! Directed edge paths and their dihomotopy classes (edge paths modulo
//! elementary swaps across 2-cubes).

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::complex::{Edge, PrecubicalSet, Reachability, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgePath {
    pub src: Vertex,
    pub tgt: Vertex,
    pub edges: Vec<Edge>,
}

impl EdgePath {
    pub fn constant(v: Vertex) -> Self {
        EdgePath { src: v, tgt: v, edges: Vec::new() }
    }

    /// Builds a path from consecutive edges; `None` if they do not compose.
    pub fn from_edges(x: &PrecubicalSet, src: Vertex, edges: Vec<Edge>) -> Option<Self> {
        let mut at = src;
        for &e in &edges {
            if x.src(e) != at {
                return None;
            }
            at = x.tgt(e);
        }
        Some(EdgePath { src, tgt: at, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn concat(&self, other: &EdgePath) -> Result<EdgePath> {
        if self.tgt != other.src {
            return Err(Error::EndpointMismatch(format!(
                "path ends at vertex #{} but the next starts at #{}",
                self.tgt.0, other.src.0
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(EdgePath { src: self.src, tgt: other.tgt, edges })
    }

    pub fn display<'a>(&'a self, x: &'a PrecubicalSet) -> impl fmt::Display + 'a {
        PathDisplay(x, &self.edges)
    }
}

struct PathDisplay<'a>(&'a PrecubicalSet, &'a [Edge]);

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_empty() {
            return f.write_str("()");
        }
        for (k, &e) in self.1.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.0.edge_id(e))?;
        }
        Ok(())
    }
}

/// Either every path is enumerated (loop-free complexes), or only paths of
/// length at most the bound, in which case class counts are lower bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Bounded(usize),
}

impl Mode {
    /// Exhaustive when the complex is loop-free and the bound (if any) cannot
    /// cut a path; bounded otherwise. Loops without a bound are refused.
    pub fn choose(x: &PrecubicalSet, max_len: Option<usize>) -> Result<Mode> {
        let longest = x.num_vertices().saturating_sub(1);
        match (x.is_loop_free(), max_len) {
            (true, None) => Ok(Mode::Exhaustive),
            (true, Some(l)) if l >= longest => Ok(Mode::Exhaustive),
            (_, Some(l)) => Ok(Mode::Bounded(l)),
            (false, None) => Err(Error::LoopsWithoutBound(x.name().to_string())),
        }
    }

    pub fn is_exhaustive(self) -> bool {
        self == Mode::Exhaustive
    }

    fn limit(self) -> usize {
        match self {
            Mode::Exhaustive => usize::MAX,
            Mode::Bounded(l) => l,
        }
    }
}

/// All directed edge paths from `a` to `b`, lexicographic in edge order.
pub fn enumerate_paths(x: &PrecubicalSet, a: Vertex, b: Vertex, max_len: Option<usize>) -> Result<Vec<EdgePath>> {
    let mode = Mode::choose(x, max_len)?;
    let reach = x.reachability();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    walk(x, &reach, a, Some(b), mode.limit(), &mut stack, &mut |t, p| {
        if t == b {
            out.push(p.to_vec());
        }
    });
    Ok(out.into_iter().map(|edges| EdgePath { src: a, tgt: b, edges }).collect())
}

// Depth-first walk in edge order; visits every path from `at` (only those that
// can still reach `goal`, if given) in lexicographic preorder.
fn walk(
    x: &PrecubicalSet,
    reach: &Reachability,
    at: Vertex,
    goal: Option<Vertex>,
    budget: usize,
    stack: &mut Vec<Edge>,
    visit: &mut dyn FnMut(Vertex, &[Edge]),
) {
    visit(at, stack);
    if stack.len() >= budget {
        return;
    }
    for &e in x.out_edges(at) {
        let t = x.tgt(e);
        if goal.is_some_and(|g| !reach.reaches(t, g)) {
            continue;
        }
        stack.push(e);
        walk(x, reach, t, goal, budget, stack, visit);
        stack.pop();
    }
}

type SwapIndex = HashMap<(Edge, Edge), Vec<(u32, (Edge, Edge))>>;

fn swap_index(x: &PrecubicalSet) -> SwapIndex {
    let mut idx: SwapIndex = HashMap::new();
    for s in 0..x.num_squares() as u32 {
        let [c0, c1] = x.square_corners(s);
        idx.entry(c0).or_default().push((s, c1));
        idx.entry(c1).or_default().push((s, c0));
    }
    idx
}

/// Replaces the two edges at `position`, `position + 1` by the other corner
/// path of square `square`.
pub fn swap_step(x: &PrecubicalSet, p: &EdgePath, position: usize, square: u32) -> Result<EdgePath> {
    if square as usize >= x.num_squares() {
        return Err(Error::NotASwap(format!("complex has no square #{square}")));
    }
    let (Some(&e1), Some(&e2)) = (p.edges.get(position), p.edges.get(position + 1)) else {
        return Err(Error::NotASwap(format!("no edge pair at position {position}")));
    };
    let [c0, c1] = x.square_corners(square);
    let other = if (e1, e2) == c0 {
        c1
    } else if (e1, e2) == c1 {
        c0
    } else {
        return Err(Error::NotASwap(format!(
            "edges {} {} do not bound square {}",
            x.edge_id(e1),
            x.edge_id(e2),
            x.cell_id(2, square)
        )));
    };
    let mut edges = p.edges.clone();
    edges[position] = other.0;
    edges[position + 1] = other.1;
    Ok(EdgePath { src: p.src, tgt: p.tgt, edges })
}

// Partitions same-endpoint paths (sorted) into swap classes; classes are
// returned in order of their smallest member, members sorted.
fn partition(paths: &[Vec<Edge>], swaps: &SwapIndex) -> Vec<Vec<usize>> {
    let pos: HashMap<&[Edge], usize> = paths.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let mut uf = UnionFind::<usize>::new(paths.len());
    for (k, p) in paths.iter().enumerate() {
        for i in 0..p.len().saturating_sub(1) {
            if let Some(alts) = swaps.get(&(p[i], p[i + 1])) {
                for &(_, (a, b)) in alts {
                    let mut q = p.clone();
                    q[i] = a;
                    q[i + 1] = b;
                    if let Some(&j) = pos.get(q.as_slice()) {
                        uf.union(k, j);
                    }
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for k in 0..paths.len() {
        let r = uf.find(k);
        let g = *slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(k);
    }
    groups
}

/// Global index of a class in a [`ClassTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub u32);

/// A dihomotopy class: its endpoints, canonical id within the pair, and the
/// lexicographically smallest member path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihoClass {
    pub src: Vertex,
    pub tgt: Vertex,
    pub local: u32,
    pub size: usize,
    pub representative: EdgePath,
}

/// Classes of one pair, computed without a full table.
#[derive(Clone, Debug)]
pub struct PairClasses {
    pub classes: Vec<DihoClass>,
    pub lower_bound: bool,
}

/// Dihomotopy classes of the paths from `a` to `b`.
pub fn classes(x: &PrecubicalSet, a: Vertex, b: Vertex, max_len: Option<usize>) -> Result<PairClasses> {
    let mode = Mode::choose(x, max_len)?;
    let paths: Vec<Vec<Edge>> = enumerate_paths(x, a, b, max_len)?.into_iter().map(|p| p.edges).collect();
    let groups = partition(&paths, &swap_index(x));
    let classes = groups
        .iter()
        .enumerate()
        .map(|(local, g)| DihoClass {
            src: a,
            tgt: b,
            local: local as u32,
            size: g.len(),
            representative: EdgePath { src: a, tgt: b, edges: paths[g[0]].clone() },
        })
        .collect();
    Ok(PairClasses { classes, lower_bound: !mode.is_exhaustive() })
}

#[derive(Clone, Debug)]
struct ClassInfo {
    src: Vertex,
    tgt: Vertex,
    local: u32,
    size: usize,
    rep: Vec<Edge>,
}

/// Classes for every reachable pair, with path lookup and concatenation.
#[derive(Clone, Debug)]
pub struct ClassTable {
    mode: Mode,
    nv: usize,
    reach: Reachability,
    // per pair x * nv + y: range of global class ids
    ranges: Vec<(u32, u32)>,
    info: Vec<ClassInfo>,
    path_class: HashMap<Vec<Edge>, ClassId>,
    compose: HashMap<(ClassId, ClassId), ClassId>,
}

impl ClassTable {
    pub fn build(x: &PrecubicalSet, mode: Mode) -> Self {
        let nv = x.num_vertices();
        let reach = x.reachability();
        let swaps = swap_index(x);
        let limit = mode.limit();

        // Per source: paths grouped by target, in lexicographic order.
        let per_source: Vec<Vec<Vec<Vec<Edge>>>> = (0..nv as u32)
            .into_par_iter()
            .map(|s| {
                let mut by_target = vec![Vec::new(); nv];
                let mut stack = Vec::new();
                walk(x, &reach, Vertex(s), None, limit, &mut stack, &mut |t, p| {
                    by_target[t.0 as usize].push(p.to_vec());
                });
                by_target
            })
            .collect();
        let grouped: Vec<Vec<Vec<Vec<usize>>>> = per_source
            .par_iter()
            .map(|by_target| by_target.iter().map(|paths| partition(paths, &swaps)).collect())
            .collect();

        let mut ranges = vec![(0u32, 0u32); nv * nv];
        let mut info = Vec::new();
        let mut path_class = HashMap::new();
        for (s, by_target) in per_source.into_iter().enumerate() {
            for (t, paths) in by_target.into_iter().enumerate() {
                let groups = &grouped[s][t];
                let start = info.len() as u32;
                for (local, g) in groups.iter().enumerate() {
                    let id = ClassId(info.len() as u32);
                    info.push(ClassInfo {
                        src: Vertex(s as u32),
                        tgt: Vertex(t as u32),
                        local: local as u32,
                        size: g.len(),
                        rep: paths[g[0]].clone(),
                    });
                    for &k in g {
                        if !paths[k].is_empty() {
                            path_class.insert(paths[k].clone(), id);
                        }
                    }
                }
                ranges[s * nv + t] = (start, groups.len() as u32);
            }
        }

        let mut table = ClassTable { mode, nv, reach, ranges, info, path_class, compose: HashMap::new() };
        let mut compose = HashMap::new();
        for c1 in 0..table.info.len() as u32 {
            let y = table.info[c1 as usize].tgt;
            for x2 in 0..nv as u32 {
                for c2 in table.pair(y, Vertex(x2)) {
                    let mut p = table.info[c1 as usize].rep.clone();
                    p.extend_from_slice(&table.info[c2.0 as usize].rep);
                    let src = table.info[c1 as usize].src;
                    if let Some(c) = table.class_of_edges(src, &p) {
                        compose.insert((ClassId(c1), c2), c);
                    }
                }
            }
        }
        table.compose = compose;
        table
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode.is_exhaustive()
    }

    pub fn reachability(&self) -> &Reachability {
        &self.reach
    }

    pub fn reaches(&self, x: Vertex, y: Vertex) -> bool {
        self.reach.reaches(x, y)
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn num_classes(&self) -> usize {
        self.info.len()
    }

    /// Class ids of the pair, in canonical order.
    pub fn pair(&self, x: Vertex, y: Vertex) -> impl Iterator<Item = ClassId> + Clone {
        let (start, len) = self.ranges[x.0 as usize * self.nv + y.0 as usize];
        (start..start + len).map(ClassId)
    }

    pub fn count(&self, x: Vertex, y: Vertex) -> usize {
        self.ranges[x.0 as usize * self.nv + y.0 as usize].1 as usize
    }

    /// The `local`-th class of the pair.
    pub fn class_at(&self, x: Vertex, y: Vertex, local: u32) -> Option<ClassId> {
        let (start, len) = self.ranges[x.0 as usize * self.nv + y.0 as usize];
        (local < len).then_some(ClassId(start + local))
    }

    pub fn endpoints(&self, c: ClassId) -> (Vertex, Vertex) {
        let i = &self.info[c.0 as usize];
        (i.src, i.tgt)
    }

    pub fn local(&self, c: ClassId) -> u32 {
        self.info[c.0 as usize].local
    }

    pub fn representative(&self, c: ClassId) -> EdgePath {
        let i = &self.info[c.0 as usize];
        EdgePath { src: i.src, tgt: i.tgt, edges: i.rep.clone() }
    }

    pub fn diho(&self, c: ClassId) -> DihoClass {
        let i = &self.info[c.0 as usize];
        DihoClass { src: i.src, tgt: i.tgt, local: i.local, size: i.size, representative: self.representative(c) }
    }

    /// Class of the constant path at `v`.
    pub fn identity(&self, v: Vertex) -> ClassId {
        self.class_at(v, v, 0).expect("constant path is always enumerated")
    }

    pub fn edge_class(&self, x: &PrecubicalSet, e: Edge) -> Option<ClassId> {
        self.class_of_edges(x.src(e), &[e])
    }

    /// Class of the path starting at `src` with these edges, or `None` when
    /// the path lies beyond the bound.
    pub fn class_of_edges(&self, src: Vertex, edges: &[Edge]) -> Option<ClassId> {
        if edges.is_empty() {
            Some(self.identity(src))
        } else {
            self.path_class.get(edges).copied()
        }
    }

    pub fn class_of(&self, p: &EdgePath) -> Option<ClassId> {
        self.class_of_edges(p.src, &p.edges)
    }

    /// Concatenation of composable classes (`None` beyond the bound or on
    /// endpoint mismatch).
    pub fn compose(&self, c1: ClassId, c2: ClassId) -> Option<ClassId> {
        self.compose.get(&(c1, c2)).copied()
    }

    pub fn concat_class(&self, c1: ClassId, c2: ClassId) -> Result<ClassId> {
        let (_, y1) = self.endpoints(c1);
        let (y2, _) = self.endpoints(c2);
        if y1 != y2 {
            return Err(Error::EndpointMismatch(format!(
                "first class ends at vertex #{} but the second starts at #{}",
                y1.0, y2.0
            )));
        }
        self.compose(c1, c2).ok_or(Error::BeyondBound(self.mode.limit()))
    }

    /// Canonical report line `x y count [repr_1 | ...]`.
    pub fn report_line(&self, x: &PrecubicalSet, a: Vertex, b: Vertex) -> String {
        let reps: Vec<String> = self.pair(a, b).map(|c| self.representative(c).display(x).to_string()).collect();
        format!("{} {} {} [{}]", x.vertex_id(a), x.vertex_id(b), reps.len(), reps.join(" | "))
    }
}

/// A complex together with its reachability order and class table.
#[derive(Clone, Debug)]
pub struct Space {
    pub complex: PrecubicalSet,
    pub table: ClassTable,
}

impl Space {
    /// Exhaustive analysis; refuses complexes with directed loops.
    pub fn new(complex: PrecubicalSet) -> Result<Self> {
        Self::with_bound(complex, None)
    }

    pub fn with_bound(complex: PrecubicalSet, max_len: Option<usize>) -> Result<Self> {
        let mode = Mode::choose(&complex, max_len)?;
        let table = ClassTable::build(&complex, mode);
        Ok(Space { complex, table })
    }

    pub fn named(spec: &str) -> Result<Self> {
        Self::new(crate::complex::build_named(spec)?)
    }

    pub fn name(&self) -> &str {
        self.complex.name()
    }

    pub fn require_exhaustive(&self) -> Result<()> {
        if self.table.is_exhaustive() {
            Ok(())
        } else {
            Err(Error::BoundedTable(self.name().to_string()))
        }
    }

    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.complex.resolve_vertex(id)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.table.reachability().pairs()
    }

    /// Full class report, one line per reachable pair.
    pub fn report(&self) -> Vec<String> {
        self.pairs().map(|(a, b)| self.table.report_line(&self.complex, a, b)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_named;

    fn corners(x: &PrecubicalSet) -> (Vertex, Vertex) {
        (x.resolve_vertex("0").unwrap(), x.resolve_vertex("1").unwrap())
    }

    #[test]
    fn path_counts() {
        for (spec, want) in [("cube 2", 2), ("cube 3", 6), ("cube 4", 24)] {
            let x = build_named(spec).unwrap();
            let (a, b) = corners(&x);
            assert_eq!(enumerate_paths(&x, a, b, None).unwrap().len(), want, "{spec}");
            assert_eq!(classes(&x, a, b, None).unwrap().classes.len(), 1, "{spec}");
        }
    }

    #[test]
    fn loops_need_a_bound() {
        let c = build_named("circle").unwrap();
        let v = c.vertex("v").unwrap();
        assert!(matches!(enumerate_paths(&c, v, v, None), Err(Error::LoopsWithoutBound(_))));
        let pc = classes(&c, v, v, Some(3)).unwrap();
        assert!(pc.lower_bound);
        assert_eq!(pc.classes.len(), 4);
    }

    #[test]
    fn boundary_square_classes() {
        let s = Space::named("boundary-cube 2").unwrap();
        let (a, b) = corners(&s.complex);
        assert_eq!(s.table.count(a, b), 2);
        for (x, y) in s.pairs() {
            if (x, y) != (a, b) {
                assert_eq!(s.table.count(x, y), 1);
            }
        }
        let lower = s.table.class_at(a, b, 0).unwrap();
        let rep = s.table.representative(lower);
        assert_eq!(rep.display(&s.complex).to_string(), "*0 1*");
    }

    #[test]
    fn swap_on_cube_and_refusals() {
        let x = build_named("cube 2").unwrap();
        let p = EdgePath::from_edges(&x, x.vertex("00").unwrap(), vec![x.edge("*0").unwrap(), x.edge("1*").unwrap()])
            .unwrap();
        let q = swap_step(&x, &p, 0, 0).unwrap();
        assert_eq!(q.display(&x).to_string(), "0* *1");
        assert!(swap_step(&x, &q, 1, 0).is_err());
        let b = build_named("boundary-cube 2").unwrap();
        let p = EdgePath::from_edges(&b, b.vertex("00").unwrap(), vec![b.edge("*0").unwrap(), b.edge("1*").unwrap()])
            .unwrap();
        assert!(swap_step(&b, &p, 0, 0).is_err());
    }

    #[test]
    fn grid_corner_swap() {
        let g = build_named("swiss-grid").unwrap();
        let e = |id| g.edge(id).unwrap();
        let p = EdgePath::from_edges(&g, g.vertex("00").unwrap(), vec![e("h00"), e("v10"), e("v11")]).unwrap();
        let s00 = g.lookup("s00").unwrap().1;
        let q = swap_step(&g, &p, 0, s00).unwrap();
        assert_eq!(q.display(&g).to_string(), "v00 h01 v11");
        assert_eq!((q.src, q.tgt), (p.src, p.tgt));
    }

    #[test]
    fn concat_through_corner() {
        let s = Space::named("boundary-cube 2").unwrap();
        let x = &s.complex;
        let t = &s.table;
        let c1 = t.edge_class(x, x.edge("*0").unwrap()).unwrap();
        let c2 = t.edge_class(x, x.edge("1*").unwrap()).unwrap();
        let c = t.concat_class(c1, c2).unwrap();
        assert_eq!(t.local(c), 0);
        let (a, _) = corners(x);
        assert_eq!(t.concat_class(t.identity(a), c).unwrap(), c);
        assert!(t.concat_class(c2, c1).is_err());
    }

    #[test]
    fn letter_w_report() {
        let s = Space::named("letter-w").unwrap();
        let report = s.report();
        assert_eq!(report.len(), 9);
        assert!(report.iter().all(|l| l.split(' ').nth(2) == Some("1")));
        assert_eq!(report[1], "B A 1 [BA]");
    }

    #[test]
    fn dubut_has_two_class_pair() {
        let s = Space::named("dubut-d").unwrap();
        let max = s.pairs().map(|(a, b)| s.table.count(a, b)).max().unwrap();
        assert_eq!(max, 2);
        let (o, p) = (s.vertex("00").unwrap(), s.vertex("p").unwrap());
        assert_eq!(s.table.count(o, p), 2);
    }
}
