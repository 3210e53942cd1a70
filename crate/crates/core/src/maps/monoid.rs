//! Finite monoids with a distinguished subset S, the closure
//! `S̄ = {h | h ∘ g ∈ S for some g ∈ S}`, and the insertion check for pairs
//! of maps between two spaces.

use std::collections::HashMap;

use super::{AdmissibleMap, InessentialSet};
use crate::error::{Error, Result};

/// A finite monoid given by its composition table (`table[h][g] = h ∘ g`)
/// together with a subset `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub s: Vec<bool>,
}

impl MonoidTable {
    /// Checks that the table is total, associative and has an identity.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>, s: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) || s.len() != n {
            return Err(Error::Monoid("table is not a total n x n table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Monoid("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Monoid(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(MonoidTable { names, table, identity, s })
    }

    /// The monoid of the given endomaps (which must be closed under
    /// composition), with `S` given by a predicate.
    pub fn from_maps(maps: &[AdmissibleMap], names: Vec<String>, s: impl Fn(&AdmissibleMap) -> bool) -> Result<Self> {
        let index: HashMap<&AdmissibleMap, usize> = maps.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let table = maps
            .iter()
            .map(|h| {
                maps.iter()
                    .map(|g| {
                        index
                            .get(&h.after(g))
                            .copied()
                            .ok_or_else(|| Error::Monoid("maps are not closed under composition".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MonoidTable::new(names, table, maps.iter().map(s).collect())
    }

    /// Monotone self-maps of the chain `0 < 1 < ... < n-1`, with `S` the maps
    /// fixing both endpoints.
    pub fn chain(n: usize) -> Self {
        let mut maps: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..n {
            maps = maps
                .into_iter()
                .flat_map(|m| {
                    let lo = m.last().copied().unwrap_or(0);
                    (lo..n).map(move |v| {
                        let mut m = m.clone();
                        m.push(v);
                        m
                    })
                })
                .collect();
        }
        let index: HashMap<Vec<usize>, usize> = maps.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let table = maps
            .iter()
            .map(|h| maps.iter().map(|g| index[&g.iter().map(|&v| h[v]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = maps
            .iter()
            .map(|m| format!("({})", m.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let s = maps.iter().map(|m| m[0] == 0 && m[n - 1] == n - 1).collect();
        MonoidTable::new(names, table, s).expect("function composition is a monoid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn with_subset(mut self, s: Vec<bool>) -> Self {
        self.s = s;
        self
    }

    /// `S̄` by exhaustive scan.
    pub fn closure(&self) -> Vec<bool> {
        let n = self.len();
        (0..n).map(|h| (0..n).any(|g| self.s[g] && self.s[self.table[h][g]])).collect()
    }

    pub fn is_submonoid(&self, set: &[bool]) -> bool {
        let n = self.len();
        set[self.identity] && (0..n).all(|a| (0..n).all(|b| !(set[a] && set[b]) || set[self.table[a][b]]))
    }

    /// A pair `(h, g)` with `h ∈ S`, `h ∘ g ∈ S` and `g ∉ S`, if any.
    pub fn inessentiality_counterexample(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|h| (0..n).map(move |g| (h, g)))
            .find(|&(h, g)| self.s[h] && self.s[self.table[h][g]] && !self.s[g])
    }

    /// For all `g ∈ M`, `h ∈ S`: `h ∘ g ∈ S` implies `g ∈ S`.
    pub fn verify_inessentiality_property(&self) -> bool {
        self.inessentiality_counterexample().is_none()
    }

    /// `S̄` is a submonoid containing `S` and any two of `g, h, g ∘ h` in
    /// `S̄` force the third. Refuses when the inessentiality property fails.
    pub fn verify_closure_2of3(&self) -> Result<bool> {
        if let Some((h, g)) = self.inessentiality_counterexample() {
            return Err(Error::Precondition(format!(
                "inessentiality property fails: h = {}, g = {}, h∘g = {} in S but g is not",
                self.names[h], self.names[g], self.names[self.table[h][g]]
            )));
        }
        let n = self.len();
        let bar = self.closure();
        if !self.is_submonoid(&bar) || (0..n).any(|a| self.s[a] && !bar[a]) {
            return Ok(false);
        }
        for g in 0..n {
            for h in 0..n {
                let gh = self.table[g][h];
                let count = [bar[g], bar[h], bar[gh]].iter().filter(|&&b| b).count();
                if count == 2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// For `F: X -> Y`, `G: Y -> X` with `G ∘ F ∈ S̄_X` and `F ∘ G ∈ S̄_Y`, checks
/// `F ∘ h ∘ G ∈ S̄_Y` for every `h` in the enumerated `S̄_X`. Here `S` is the
/// alpha-inessential set of each side, so `S̄` is the rather-inessential set.
pub fn verify_insertion(
    set_x: &InessentialSet<'_>,
    set_y: &InessentialSet<'_>,
    f: &AdmissibleMap,
    g: &AdmissibleMap,
    closure_x: &[AdmissibleMap],
) -> Result<bool> {
    let in_bar = |set: &InessentialSet<'_>, h: &AdmissibleMap| set.members().iter().any(|k| set.contains(&h.after(k)));
    let gf = g.after(f);
    if !in_bar(set_x, &gf) {
        return Err(Error::Precondition(format!("G∘F = {:?} is not in the closure on X", gf.vertices)));
    }
    let fg = f.after(g);
    if !in_bar(set_y, &fg) {
        return Err(Error::Precondition(format!("F∘G = {:?} is not in the closure on Y", fg.vertices)));
    }
    Ok(closure_x.iter().all(|h| in_bar(set_y, &f.after(&h.after(g)))))
}

/// Members of `S̄` among the given maps, for the alpha-inessential `S`.
pub fn closure_members(set: &InessentialSet<'_>, maps: &[AdmissibleMap]) -> Vec<AdmissibleMap> {
    maps.iter().filter(|h| set.members().iter().any(|k| set.contains(&h.after(k)))).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_monoid_shape() {
        let m = MonoidTable::chain(3);
        assert_eq!(m.len(), 10);
        assert_eq!(m.names[m.identity], "(0,1,2)");
        assert_eq!(m.s.iter().filter(|&&b| b).count(), 3);
    }

    #[test]
    fn trivial_subsets() {
        let m = MonoidTable::chain(3);
        let all = m.clone().with_subset(vec![true; 10]);
        assert_eq!(all.closure(), vec![true; 10]);
        assert!(all.verify_inessentiality_property());
        assert!(all.verify_closure_2of3().unwrap());
        let mut only_id = vec![false; 10];
        only_id[m.identity] = true;
        let id = m.with_subset(only_id.clone());
        assert_eq!(id.closure(), only_id);
        assert!(id.verify_inessentiality_property());
    }

    #[test]
    fn group_with_identity_subset() {
        // Z/3 under addition.
        let table = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let m = MonoidTable::new(vec!["0".into(), "1".into(), "2".into()], table, vec![true, false, false]).unwrap();
        assert!(m.verify_inessentiality_property());
        assert!(m.verify_closure_2of3().unwrap());
    }

    #[test]
    fn endpoint_fixers_break_the_property() {
        let m = MonoidTable::chain(3);
        let (h, g) = m.inessentiality_counterexample().unwrap();
        assert!(m.s[h] && !m.s[g]);
        assert!(matches!(m.verify_closure_2of3(), Err(Error::Precondition(_))));
    }

    #[test]
    fn rejects_bad_tables() {
        let t = vec![vec![0, 0], vec![0, 0]];
        assert!(MonoidTable::new(vec!["a".into(), "b".into()], t, vec![true, true]).is_err());
    }
}
