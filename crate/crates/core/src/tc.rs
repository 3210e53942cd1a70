//! Discrete directed topological complexity: the least number of disjoint
//! patches covering all reachable pairs, each carrying a choice of class per
//! pair that is natural under single-edge extensions inside the patch.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::Vertex;
use crate::error::{Error, Result};
use crate::maps::DheCertificate;
use crate::paths::{ClassId, Space};

/// A set of reachable pairs with one chosen class each.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Patch {
    pub assignment: BTreeMap<(Vertex, Vertex), ClassId>,
}

impl Patch {
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Are the chosen classes natural: for `τ: a -> b` with `(x, a)`, `(x, b)`
/// in the patch, `s(x, a) · τ = s(x, b)`, and for `σ: a -> b` with `(a, y)`,
/// `(b, y)` in the patch, `σ · s(b, y) = s(a, y)`? Refuses classes that do
/// not belong to their pair.
pub fn patch_consistent(space: &Space, patch: &Patch) -> Result<bool> {
    space.require_exhaustive()?;
    let (x, t) = (&space.complex, &space.table);
    for (&(a, b), &c) in &patch.assignment {
        if c.0 as usize >= t.num_classes() || t.endpoints(c) != (a, b) {
            return Err(Error::Parameter(format!(
                "class {} does not belong to the pair ({}, {})",
                c.0,
                x.vertex_id(a),
                x.vertex_id(b)
            )));
        }
    }
    for (&(a, b), &c) in &patch.assignment {
        for &e in x.out_edges(b) {
            if let Some(&d) = patch.assignment.get(&(a, x.tgt(e))) {
                if t.compose(c, t.edge_class(x, e).unwrap()) != Some(d) {
                    return Ok(false);
                }
            }
        }
        for &e in x.in_edges(a) {
            if let Some(&d) = patch.assignment.get(&(x.src(e), b)) {
                if t.compose(t.edge_class(x, e).unwrap(), c) != Some(d) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCover {
    pub patches: Vec<Patch>,
}

impl SectionCover {
    pub fn k(&self) -> usize {
        self.patches.len()
    }

    /// Disjoint, covers every reachable pair, and every patch is consistent.
    pub fn validate(&self, space: &Space) -> Result<bool> {
        let mut seen = HashMap::new();
        for p in &self.patches {
            if !patch_consistent(space, p)? {
                return Ok(false);
            }
            for &pair in p.assignment.keys() {
                if seen.insert(pair, ()).is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(space.pairs().all(|p| seen.contains_key(&p)) && seen.len() == space.table.reachability().num_pairs())
    }

    /// One line per patch (`patch i: x y local ...`), then `dtc=<k>`.
    pub fn report(&self, space: &Space) -> Vec<String> {
        let (x, t) = (&space.complex, &space.table);
        let mut lines: Vec<String> = self
            .patches
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let items: Vec<String> = p
                    .assignment
                    .iter()
                    .map(|(&(a, b), &c)| format!("({},{})={}", x.vertex_id(a), x.vertex_id(b), t.local(c)))
                    .collect();
                format!("patch {i}: {}", items.join(" "))
            })
            .collect();
        lines.push(format!("dtc={}", self.k()));
        lines
    }

    pub fn to_file(&self, space: &Space) -> CoverFile {
        let (x, t) = (&space.complex, &space.table);
        CoverFile {
            kind: "cover".into(),
            complex: x.name().to_string(),
            dtc: self.k(),
            patches: self
                .patches
                .iter()
                .map(|p| {
                    p.assignment
                        .iter()
                        .map(|(&(a, b), &c)| CoverEntry {
                            from: x.vertex_id(a).to_string(),
                            to: x.vertex_id(b).to_string(),
                            class: t.local(c),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_file(space: &Space, file: &CoverFile) -> Result<Self> {
        let (x, t) = (&space.complex, &space.table);
        let patches = file
            .patches
            .iter()
            .map(|entries| {
                let assignment = entries
                    .iter()
                    .map(|e| {
                        let (a, b) = (x.vertex(&e.from)?, x.vertex(&e.to)?);
                        let c = t.class_at(a, b, e.class).ok_or_else(|| {
                            Error::Parameter(format!("pair ({}, {}) has no class {}", e.from, e.to, e.class))
                        })?;
                        Ok(((a, b), c))
                    })
                    .collect::<Result<_>>()?;
                Ok(Patch { assignment })
            })
            .collect::<Result<_>>()?;
        Ok(SectionCover { patches })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub from: String,
    pub to: String,
    pub class: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    /// Always `cover`.
    pub kind: String,
    pub complex: String,
    pub dtc: usize,
    pub patches: Vec<Vec<CoverEntry>>,
}

// Naturality constraint between two pairs, active when both sit in the
// same patch.
#[derive(Clone, Copy)]
struct Link {
    other: usize,
    /// `class(other) = compose(class(self), e)` when `post`, otherwise
    /// `class(other) = compose(e, class(self))`; `rev` flips the roles.
    edge: ClassId,
    post: bool,
    rev: bool,
}

struct Solver<'a> {
    space: &'a Space,
    pairs: Vec<(Vertex, Vertex)>,
    links: Vec<Vec<Link>>,
    order: Vec<usize>,
    k: usize,
    label: Vec<Option<usize>>,
    class: Vec<Option<ClassId>>,
}

impl<'a> Solver<'a> {
    fn new(space: &'a Space) -> Self {
        let (x, t) = (&space.complex, &space.table);
        let pairs: Vec<(Vertex, Vertex)> = space.pairs().collect();
        let index: HashMap<(Vertex, Vertex), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut links: Vec<Vec<Link>> = vec![Vec::new(); pairs.len()];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &e in x.out_edges(b) {
                let j = index[&(a, x.tgt(e))];
                let edge = t.edge_class(x, e).unwrap();
                links[i].push(Link { other: j, edge, post: true, rev: false });
                links[j].push(Link { other: i, edge, post: true, rev: true });
            }
            for &e in x.in_edges(a) {
                let j = index[&(x.src(e), b)];
                let edge = t.edge_class(x, e).unwrap();
                links[i].push(Link { other: j, edge, post: false, rev: false });
                links[j].push(Link { other: i, edge, post: false, rev: true });
            }
        }
        let order = Self::order(&pairs, &links, |i| t.count(pairs[i].0, pairs[i].1));
        let n = pairs.len();
        Solver { space, pairs, links, order, k: 0, label: vec![None; n], class: vec![None; n] }
    }

    // Most constrained first: start from the pair with the most classes and
    // links, then repeatedly take the pair with the most links into the
    // already ordered set.
    fn order(pairs: &[(Vertex, Vertex)], links: &[Vec<Link>], count: impl Fn(usize) -> usize) -> Vec<usize> {
        let n = pairs.len();
        let mut placed = vec![false; n];
        let mut into = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .filter(|&i| !placed[i])
                .max_by_key(|&i| (into[i], count(i), links[i].len(), std::cmp::Reverse(i)))
                .unwrap();
            placed[next] = true;
            order.push(next);
            for l in &links[next] {
                into[l.other] += 1;
            }
        }
        order
    }

    fn fits(&self, i: usize, patch: usize, c: ClassId) -> bool {
        let t = &self.space.table;
        self.links[i].iter().all(|l| {
            if self.label[l.other] != Some(patch) {
                return true;
            }
            let d = self.class[l.other].unwrap();
            let (from, to) = if l.rev { (d, c) } else { (c, d) };
            let composed = if l.post { t.compose(from, l.edge) } else { t.compose(l.edge, from) };
            composed == Some(to)
        })
    }

    fn search(&mut self, depth: usize, used: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        let (a, b) = self.pairs[i];
        let classes: Vec<ClassId> = self.space.table.pair(a, b).collect();
        // A fresh label is only ever the next unused one.
        for patch in 0..(used + 1).min(self.k) {
            for &c in &classes {
                if self.fits(i, patch, c) {
                    self.label[i] = Some(patch);
                    self.class[i] = Some(c);
                    if self.search(depth + 1, used.max(patch + 1)) {
                        return true;
                    }
                }
            }
        }
        self.label[i] = None;
        self.class[i] = None;
        false
    }

    fn solve(&mut self, k: usize) -> Option<SectionCover> {
        self.k = k;
        self.label.iter_mut().for_each(|l| *l = None);
        self.class.iter_mut().for_each(|c| *c = None);
        if !self.search(0, 0) {
            return None;
        }
        let mut patches = vec![Patch::default(); k];
        for (i, &p) in self.pairs.iter().enumerate() {
            patches[self.label[i].unwrap()].assignment.insert(p, self.class[i].unwrap());
        }
        patches.retain(|p| !p.is_empty());
        Some(SectionCover { patches })
    }
}

/// The least `k <= max_k` admitting a cover by `k` consistent patches, with
/// the first cover found in the solver's canonical order.
pub fn directed_tc(space: &Space, max_k: usize) -> Result<SectionCover> {
    if max_k == 0 {
        return Err(Error::Parameter("max_k must be at least 1".into()));
    }
    space.require_exhaustive()?;
    let mut solver = Solver::new(space);
    (1..=max_k).find_map(|k| solver.solve(k)).ok_or(Error::NoCover { max_k })
}

/// Checks a dhe certificate between X and Y, then compares their values.
pub fn invariance_check(x: &Space, y: &Space, cert: &DheCertificate, max_k: usize) -> Result<bool> {
    if !cert.verify(x, y)? {
        return Err(Error::Certificate("dhe certificate does not verify".into()));
    }
    Ok(directed_tc(x, max_k)?.k() == directed_tc(y, max_k)?.k())
}
