//! Pair component categories: reachable pairs modulo extensions along
//! inessential edges and certified inessential endomaps.
//!
//! An edge `τ: a -> b` is target-inessential if post-composing with `τ` is a
//! bijection `classes(x, a) -> classes(x, b)` for every `x ⪯ a`, and
//! source-inessential if pre-composing is a bijection
//! `classes(b, y) -> classes(a, y)` for every `y ⪰ b`. Only edges that are
//! both are inverted.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Edge, Vertex};
use crate::error::{Error, Result};
use crate::maps::{AdmissibleMap, Alpha, DheCertificate, WitnessChain};
use crate::paths::Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Usage {
    /// `(x, a) -> (x, b)`.
    Covariant,
    /// `(b, y) -> (a, y)`.
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeVerdict {
    pub edge: Edge,
    pub target_inessential: bool,
    pub source_inessential: bool,
}

impl EdgeVerdict {
    pub fn inessential(&self) -> bool {
        self.target_inessential && self.source_inessential
    }
}

fn is_bijection(images: impl Iterator<Item = Option<u32>>, target_count: usize) -> bool {
    let mut seen = vec![false; target_count];
    let mut n = 0;
    for img in images {
        match img {
            Some(c) if !seen[c as usize] => seen[c as usize] = true,
            _ => return false,
        }
        n += 1;
    }
    n == target_count
}

/// Verdict per edge, in edge order. Refuses bounded class tables.
pub fn classify_edges(space: &Space) -> Result<Vec<EdgeVerdict>> {
    space.require_exhaustive()?;
    let (x, t) = (&space.complex, &space.table);
    let edges: Vec<Edge> = x.edges().collect();
    Ok(edges
        .par_iter()
        .map(|&e| {
            let (a, b) = (x.src(e), x.tgt(e));
            let tau = t.edge_class(x, e).expect("edges have classes in exhaustive mode");
            let target_inessential = t.reachability().predecessors(a).all(|v| {
                let images = t.pair(v, a).map(|c| t.compose(c, tau).map(|d| t.local(d)));
                is_bijection(images, t.count(v, b))
            });
            let source_inessential = t.reachability().successors(b).all(|w| {
                let images = t.pair(b, w).map(|c| t.compose(tau, c).map(|d| t.local(d)));
                is_bijection(images, t.count(a, w))
            });
            EdgeVerdict { edge: e, target_inessential, source_inessential }
        })
        .collect())
}

/// An endomap together with a chain from the identity proving it inessential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedEndomap {
    pub map: AdmissibleMap,
    pub chain: WitnessChain,
}

impl CertifiedEndomap {
    pub fn verify(&self, space: &Space) -> Result<bool> {
        let id = AdmissibleMap::identity(space.complex.num_vertices());
        Ok(self.chain.start() == &id
            && self.chain.end() == &self.map
            && self.chain.all_psp()
            && Alpha::ALL.iter().any(|&a| self.chain.has_flavour(a))
            && self.chain.verify(space, space)?)
    }
}

/// Component labels for `n` items after applying `merges` in any order.
/// Components are numbered by their smallest member.
pub fn partition(n: usize, merges: &[(usize, usize)]) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in merges {
        uf.union(a, b);
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    (0..n)
        .map(|k| {
            let next = label.len();
            *label.entry(uf.find(k)).or_insert(next)
        })
        .collect()
}

/// The class counts occurring among the member pairs. Multiplicities are
/// left out: an equivalence may change how many pairs a component holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature(pub BTreeSet<usize>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComponent {
    /// Indices into [`PairComponentCategory::pairs`], ascending.
    pub members: Vec<usize>,
    pub signature: Signature,
}

#[derive(Clone, Debug)]
pub struct PairComponentCategory {
    pub pairs: Vec<(Vertex, Vertex)>,
    pub component: Vec<usize>,
    pub components: Vec<PairComponent>,
    pub verdicts: Vec<EdgeVerdict>,
    pub merges: Vec<(usize, usize)>,
    pub endomaps: Vec<AdmissibleMap>,
    index: HashMap<(Vertex, Vertex), usize>,
}

/// The pair component category of a space. Every extra endomap must carry a
/// valid certificate.
pub fn pair_components(space: &Space, extra: &[CertifiedEndomap]) -> Result<PairComponentCategory> {
    let verdicts = classify_edges(space)?;
    for e in extra {
        if !e.verify(space)? {
            return Err(Error::Certificate(format!(
                "endomap {} is not certified inessential",
                e.map.display(&space.complex, &space.complex)
            )));
        }
    }
    let (x, t) = (&space.complex, &space.table);
    let pairs: Vec<(Vertex, Vertex)> = t.reachability().pairs().collect();
    let index: HashMap<(Vertex, Vertex), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut merges = BTreeSet::new();
    for v in verdicts.iter().filter(|v| v.inessential()) {
        let (a, b) = (x.src(v.edge), x.tgt(v.edge));
        for w in t.reachability().predecessors(a) {
            merges.insert((index[&(w, a)], index[&(w, b)]));
        }
        for w in t.reachability().successors(b) {
            merges.insert((index[&(a, w)], index[&(b, w)]));
        }
    }
    for e in extra {
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let image = index[&(e.map.apply(a), e.map.apply(b))];
            if image != k {
                merges.insert((k.min(image), k.max(image)));
            }
        }
    }
    let merges: Vec<(usize, usize)> = merges.into_iter().collect();
    let component = partition(pairs.len(), &merges);
    let n = component.iter().max().map_or(0, |m| m + 1);
    let mut components = vec![PairComponent { members: Vec::new(), signature: Signature::default() }; n];
    for (k, &c) in component.iter().enumerate() {
        let (a, b) = pairs[k];
        components[c].members.push(k);
        components[c].signature.0.insert(t.count(a, b));
    }
    Ok(PairComponentCategory {
        pairs,
        component,
        components,
        verdicts,
        merges,
        endomaps: extra.iter().map(|e| e.map.clone()).collect(),
        index,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Compatible,
    Distinguished,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Compatible => "compatible",
            Comparison::Distinguished => "distinguished",
        })
    }
}

/// Distinguishes two categories when object counts or the multisets of
/// component signatures differ. "Compatible" proves nothing.
pub fn compare_categories(c1: &PairComponentCategory, c2: &PairComponentCategory) -> Comparison {
    if c1.num_objects() == c2.num_objects() && c1.signatures() == c2.signatures() {
        Comparison::Compatible
    } else {
        Comparison::Distinguished
    }
}

impl PairComponent {
    /// `size×signature`, as used for DOT labels and reports.
    pub fn label(&self) -> String {
        format!("{}×{}", self.members.len(), self.signature)
    }
}

impl PairComponentCategory {
    pub fn num_objects(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, a: Vertex, b: Vertex) -> Option<usize> {
        self.index.get(&(a, b)).map(|&k| self.component[k])
    }

    /// Sorted multiset of component signatures.
    pub fn signatures(&self) -> Vec<Signature> {
        let mut s: Vec<Signature> = self.components.iter().map(|c| c.signature.clone()).collect();
        s.sort();
        s
    }

    /// Generators of essential edges between distinct components, sorted and
    /// deduplicated.
    pub fn essential_generators(&self, space: &Space) -> Vec<(usize, usize, Edge, Usage)> {
        let (x, t) = (&space.complex, &space.table);
        let mut out = BTreeSet::new();
        for v in self.verdicts.iter().filter(|v| !v.inessential()) {
            let (a, b) = (x.src(v.edge), x.tgt(v.edge));
            for w in t.reachability().predecessors(a) {
                let (c1, c2) = (self.component[self.index[&(w, a)]], self.component[self.index[&(w, b)]]);
                if c1 != c2 {
                    out.insert((c1, c2, v.edge, Usage::Covariant));
                }
            }
            for w in t.reachability().successors(b) {
                let (c1, c2) = (self.component[self.index[&(b, w)]], self.component[self.index[&(a, w)]]);
                if c1 != c2 {
                    out.insert((c1, c2, v.edge, Usage::Contravariant));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Text report: object count, then one line per component.
    pub fn report(&self, space: &Space) -> Vec<String> {
        let x = &space.complex;
        let mut lines = vec![format!("objects: {}", self.num_objects())];
        for (c, comp) in self.components.iter().enumerate() {
            let members: Vec<String> = comp
                .members
                .iter()
                .map(|&k| {
                    let (a, b) = self.pairs[k];
                    format!("({},{})", x.vertex_id(a), x.vertex_id(b))
                })
                .collect();
            lines.push(format!("c{c} {}: {}", comp.label(), members.join(" ")));
        }
        lines
    }

    /// Graphviz rendering: one node per component labelled `size×signature`,
    /// one edge per essential generator between components.
    pub fn to_dot(&self, space: &Space) -> String {
        let x = &space.complex;
        let mut out = format!("digraph \"{}\" {{\n", x.name().replace('"', "\\\""));
        for (c, comp) in self.components.iter().enumerate() {
            out.push_str(&format!("  c{c} [label=\"{}\"];\n", comp.label()));
        }
        let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for (c1, c2, e, usage) in self.essential_generators(space) {
            let mark = match usage {
                Usage::Covariant => "",
                Usage::Contravariant => "*",
            };
            edges.entry((c1, c2)).or_default().push(format!("{}{mark}", x.edge_id(e)));
        }
        for ((c1, c2), labels) in edges {
            out.push_str(&format!("  c{c1} -> c{c2} [label=\"{}\"];\n", labels.join(",")));
        }
        out.push_str("}\n");
        out
    }
}

/// The map `component(x, y) -> component(f x, f y)` induced by a dhe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedComponentMap {
    /// Image component of each source component, or `None` if its members
    /// land in different components.
    pub mapping: Vec<Option<usize>>,
    pub bijective: bool,
}

/// Refuses an invalid certificate.
pub fn induced_component_map(
    x: &Space,
    y: &Space,
    cert: &DheCertificate,
    cx: &PairComponentCategory,
    cy: &PairComponentCategory,
) -> Result<InducedComponentMap> {
    if !cert.verify(x, y)? {
        return Err(Error::Certificate("dhe certificate does not verify".into()));
    }
    let f = &cert.f;
    let mapping: Vec<Option<usize>> = cx
        .components
        .iter()
        .map(|comp| {
            let mut images = comp.members.iter().map(|&k| {
                let (a, b) = cx.pairs[k];
                cy.component_of(f.apply(a), f.apply(b)).expect("admissible maps preserve reachability")
            });
            let first = images.next()?;
            images.all(|c| c == first).then_some(first)
        })
        .collect();
    let mut hit = vec![false; cy.num_objects()];
    let mut injective = true;
    for m in &mapping {
        match m {
            Some(c) if !hit[*c] => hit[*c] = true,
            _ => injective = false,
        }
    }
    Ok(InducedComponentMap { bijective: injective && hit.iter().all(|&h| h), mapping })
}
