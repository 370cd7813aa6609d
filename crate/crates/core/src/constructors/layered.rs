use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::SubsetMask;

/// Layers `F₁ … F_p` and `G₁ … G_p` for `⋃ⱼ (Fⱼ ⊕ Gⱼ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LayeredSpec {
    pub fs: Vec<Family>,
    pub gs: Vec<Family>,
}

fn every_pair_strictly_below(lower: &Family, upper: &Family) -> Option<(SubsetMask, SubsetMask)> {
    lower.members().iter().find_map(|&a| {
        upper
            .members()
            .iter()
            .find(|&&b| !a.is_proper_subset_of(b))
            .map(|&b| (a, b))
    })
}

impl LayeredSpec {
    pub fn new(fs: Vec<Family>, gs: Vec<Family>) -> Result<Self> {
        let spec = LayeredSpec { fs, gs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn n(&self) -> u32 {
        self.fs.first().map_or(0, Family::n)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.fs.len();
        if p == 0 {
            return Err(Error::InvalidSpec("layered spec needs at least one layer".into()));
        }
        if self.gs.len() != p {
            return Err(Error::InvalidSpec(format!(
                "{p} F-layers but {} G-layers",
                self.gs.len()
            )));
        }
        let n = self.n();
        for (name, layers) in [("F", &self.fs), ("G", &self.gs)] {
            for (j, fam) in layers.iter().enumerate() {
                if fam.n() != n {
                    return Err(Error::GroundMismatch(n, fam.n()));
                }
                if let Some(w) = fam.union_free_witness() {
                    return Err(Error::InvalidSpec(format!(
                        "{name}{} is not union-free ({w})",
                        j + 1
                    )));
                }
            }
        }
        let f_support = self.fs.iter().fold(SubsetMask::EMPTY, |acc, f| acc.union(f.support()));
        let g_support = self.gs.iter().fold(SubsetMask::EMPTY, |acc, g| acc.union(g.support()));
        let shared = f_support.intersection(g_support);
        if !shared.is_empty() {
            return Err(Error::InvalidSpec(format!(
                "F and G supports overlap in {shared}"
            )));
        }
        for i in 0..p {
            for j in i + 1..p {
                if let Some((a, b)) = every_pair_strictly_below(&self.fs[i], &self.fs[j]) {
                    return Err(Error::InvalidSpec(format!(
                        "pair ({}, {}): {a} in F{} is not a proper subset of {b} in F{}",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
                if let Some((b2, b1)) = every_pair_strictly_below(&self.gs[j], &self.gs[i]) {
                    return Err(Error::InvalidSpec(format!(
                        "pair ({}, {}): {b2} in G{} is not a proper subset of {b1} in G{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `⋃ⱼ (Fⱼ ⊕ Gⱼ)`. The result may contain `∅`.
pub fn layered_compose(spec: &LayeredSpec) -> Result<Family> {
    spec.validate()?;
    let mut members = Vec::new();
    for (f, g) in spec.fs.iter().zip(&spec.gs) {
        members.extend_from_slice(f.oplus(g)?.members());
    }
    Family::new(spec.n(), members)
}
