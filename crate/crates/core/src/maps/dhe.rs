//! Directed homotopy equivalences: maps `f: X -> Y` with a reverse map `g`
//! such that `g ∘ f` and `f ∘ g` are rather alpha-inessential.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::homotopy::{check_rather_inessential, ChainFile, RatherCertificate, Verdict, WitnessChain};
use super::{
    enumerate_maps, is_class_injective, require_admissible, AdmissibleMap, Alpha, EnumOptions, InessentialSet, MapFile,
};
use crate::error::{Error, Result};
use crate::paths::Space;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DheCertificate {
    pub alpha: Alpha,
    pub f: AdmissibleMap,
    pub g: AdmissibleMap,
    /// `g ∘ f` rather inessential on X.
    pub gf: RatherCertificate,
    /// `f ∘ g` rather inessential on Y.
    pub fg: RatherCertificate,
}

impl DheCertificate {
    /// The identity certificate on X.
    pub fn identity(x: &Space, alpha: Alpha) -> Self {
        let id = AdmissibleMap::identity(x.complex.num_vertices());
        let trivial = WitnessChain::trivial(x, x, &id);
        let rc = RatherCertificate { h: id.clone(), k: id.clone(), chain_k: trivial.clone(), chain_hk: trivial };
        DheCertificate { alpha, f: id.clone(), g: id, gf: rc.clone(), fg: rc }
    }

    pub fn verify(&self, x: &Space, y: &Space) -> Result<bool> {
        require_admissible(x, y, &self.f)?;
        require_admissible(y, x, &self.g)?;
        Ok(self.gf.h == self.g.after(&self.f)
            && self.fg.h == self.f.after(&self.g)
            && self.gf.verify(x, self.alpha)?
            && self.fg.verify(y, self.alpha)?)
    }

    pub fn to_file(&self, x: &Space, y: &Space) -> DheFile {
        DheFile {
            kind: "dhe".into(),
            alpha: self.alpha.to_string(),
            f: self.f.to_file(&x.complex, &y.complex),
            g: self.g.to_file(&y.complex, &x.complex),
            gf: self.gf.to_file(x),
            fg: self.fg.to_file(y),
        }
    }

    pub fn from_file(x: &Space, y: &Space, file: &DheFile) -> Result<Self> {
        if file.kind != "dhe" {
            return Err(Error::Certificate(format!("expected a dhe certificate, got `{}`", file.kind)));
        }
        Ok(DheCertificate {
            alpha: file.alpha.parse()?,
            f: AdmissibleMap::from_file(&x.complex, &y.complex, &file.f)?,
            g: AdmissibleMap::from_file(&y.complex, &x.complex, &file.g)?,
            gf: RatherCertificate::from_file(x, &file.gf)?,
            fg: RatherCertificate::from_file(y, &file.fg)?,
        })
    }
}

impl RatherCertificate {
    pub fn to_file(&self, s: &Space) -> RatherFile {
        RatherFile {
            h: self.h.to_file(&s.complex, &s.complex),
            k: self.k.to_file(&s.complex, &s.complex),
            chain_k: self.chain_k.to_file(s, s),
            chain_hk: self.chain_hk.to_file(s, s),
        }
    }

    pub fn from_file(s: &Space, r: &RatherFile) -> Result<Self> {
        Ok(RatherCertificate {
            h: AdmissibleMap::from_file(&s.complex, &s.complex, &r.h)?,
            k: AdmissibleMap::from_file(&s.complex, &s.complex, &r.k)?,
            chain_k: WitnessChain::from_file(s, s, &r.chain_k)?,
            chain_hk: WitnessChain::from_file(s, s, &r.chain_hk)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatherFile {
    pub h: MapFile,
    pub k: MapFile,
    pub chain_k: ChainFile,
    pub chain_hk: ChainFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DheFile {
    pub kind: String,
    pub alpha: String,
    pub f: MapFile,
    pub g: MapFile,
    pub gf: RatherFile,
    pub fg: RatherFile,
}

pub type DheVerdict = Verdict<DheCertificate>;

// Necessary condition for rather +-inessential h (and its mirror for -):
// every v has some u ⪰ v with h(u) ⪰ v.
fn directional_prune(s: &Space, h: &AdmissibleMap, alpha: Alpha) -> bool {
    let t = &s.table;
    let vs: Vec<_> = s.complex.vertices().collect();
    match alpha {
        Alpha::Neutral => true,
        Alpha::Future => vs.iter().all(|&v| vs.iter().any(|&u| t.reaches(v, u) && t.reaches(v, h.apply(u)))),
        Alpha::Past => vs.iter().all(|&v| vs.iter().any(|&u| t.reaches(u, v) && t.reaches(h.apply(u), v))),
    }
}

fn rather(set: &InessentialSet<'_>, h: &AdmissibleMap) -> Option<RatherCertificate> {
    if !directional_prune(set.space(), h, set.alpha()) {
        return None;
    }
    match check_rather_inessential(set, h, None) {
        Ok(Verdict::Proved(c)) => Some(c),
        _ => None,
    }
}

/// Shared state for dhe searches between two spaces.
pub struct DheSearch<'a> {
    x: &'a Space,
    y: &'a Space,
    alpha: Alpha,
    budget: Option<u64>,
    set_x: InessentialSet<'a>,
    set_y: InessentialSet<'a>,
    reverse: Option<Vec<AdmissibleMap>>,
    reverse_error: Option<String>,
}

impl<'a> DheSearch<'a> {
    pub fn new(x: &'a Space, y: &'a Space, alpha: Alpha, budget: Option<u64>) -> Self {
        let set_x = InessentialSet::compute(x, alpha, budget);
        let set_y = InessentialSet::compute(y, alpha, budget);
        let (reverse, reverse_error) = match enumerate_maps(y, x, &EnumOptions { budget, ..Default::default() }) {
            Ok(e) => (Some(e.maps), None),
            Err(e) => (None, Some(e.to_string())),
        };
        DheSearch { x, y, alpha, budget, set_x, set_y, reverse, reverse_error }
    }

    fn incomplete(&self) -> Option<String> {
        self.set_x
            .incomplete_reason()
            .or(self.set_y.incomplete_reason())
            .map(str::to_string)
            .or_else(|| self.reverse_error.clone())
    }

    pub fn check(&self, f: &AdmissibleMap) -> Result<DheVerdict> {
        require_admissible(self.x, self.y, f)?;
        let (x, y) = (self.x, self.y);
        // g ∘ f ∘ k psp for some inessential k forces f ∘ k class-injective.
        let viable = self.set_x.members().iter().any(|k| is_class_injective(x, y, &f.after(k)));
        let found = match (&self.reverse, viable) {
            (_, false) => None,
            (None, true) => return Ok(Verdict::Undecided(self.reverse_error.clone().unwrap())),
            (Some(reverse), true) => {
                // Two-sided inverses first, so the identity certifies itself.
                let mut order: Vec<&AdmissibleMap> = reverse.iter().collect();
                order.sort_by_key(|g| (!g.after(f).is_identity(), !f.after(g).is_identity()));
                order.into_par_iter().find_map_first(|g| {
                    let gf = rather(&self.set_x, &g.after(f))?;
                    let fg = rather(&self.set_y, &f.after(g))?;
                    Some(DheCertificate { alpha: self.alpha, f: f.clone(), g: g.clone(), gf, fg })
                })
            }
        };
        Ok(match (found, self.incomplete()) {
            (Some(cert), _) => Verdict::Proved(cert),
            (None, Some(why)) if viable || self.set_x.incomplete_reason().is_some() => Verdict::Undecided(why),
            (None, _) => Verdict::Refuted,
        })
    }

    /// Searches every admissible `f: X -> Y` in canonical order.
    pub fn search(&self) -> Result<DheVerdict> {
        let forward = match enumerate_maps(self.x, self.y, &EnumOptions { budget: self.budget, ..Default::default() }) {
            Ok(e) => e.maps,
            Err(e @ Error::Budget { .. }) => return Ok(Verdict::Undecided(e.to_string())),
            Err(e) => return Err(e),
        };
        let mut undecided = None;
        for f in &forward {
            match self.check(f)? {
                Verdict::Proved(c) => return Ok(Verdict::Proved(c)),
                Verdict::Undecided(why) => undecided = undecided.or(Some(why)),
                Verdict::Refuted => {}
            }
        }
        Ok(undecided.map_or(Verdict::Refuted, Verdict::Undecided))
    }

    pub fn inessential_x(&self) -> &InessentialSet<'a> {
        &self.set_x
    }

    pub fn inessential_y(&self) -> &InessentialSet<'a> {
        &self.set_y
    }
}

/// Is `f` an alpha directed homotopy equivalence? The reverse map ranges over
/// all admissible `g: Y -> X`; `budget` bounds every enumeration.
pub fn check_dhe(x: &Space, y: &Space, f: &AdmissibleMap, alpha: Alpha, budget: Option<u64>) -> Result<DheVerdict> {
    DheSearch::new(x, y, alpha, budget).check(f)
}

/// Is there any alpha directed homotopy equivalence `X -> Y`?
pub fn search_dhe(x: &Space, y: &Space, alpha: Alpha, budget: Option<u64>) -> Result<DheVerdict> {
    DheSearch::new(x, y, alpha, budget).search()
}
