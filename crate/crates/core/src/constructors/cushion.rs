use std::fmt;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{check_ground, k_subsets, SubsetMask};

/// One `(m, h, F)` level of a cushioned family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CushionLevel {
    pub m: u32,
    pub h: u32,
    pub cushion: Family,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CushionSpec {
    pub n: u32,
    pub levels: Vec<CushionLevel>,
}

/// Where a level's block and cushion live: the block is `C([ground], m)` and
/// the cushion must sit inside `window`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelPlacement {
    pub ground: u32,
    pub window: SubsetMask,
}

impl CushionSpec {
    pub fn new(n: u32, levels: Vec<CushionLevel>) -> Result<Self> {
        let spec = CushionSpec { n, levels };
        spec.placements()?;
        Ok(spec)
    }

    /// Validates the level chain
    /// `n ≥ m₁+h₁ ≥ m₁ > m₂+h₂ ≥ m₂ > …` together with every cushion, and
    /// returns each level's placement.
    pub fn placements(&self) -> Result<Vec<LevelPlacement>> {
        check_ground(self.n)?;
        if self.levels.is_empty() {
            return Err(Error::InvalidSpec("cushioned family needs at least one level".into()));
        }
        let mut out = Vec::with_capacity(self.levels.len());
        // `top` is n for the first level, m_{j-1} - 1 afterwards
        let mut top = self.n;
        for (j, level) in self.levels.iter().enumerate() {
            let idx = j + 1;
            let fail = |msg: String| Error::InvalidSpec(format!("level {idx}: {msg}"));
            if level.m == 0 {
                return Err(fail("m must be at least 1".into()));
            }
            if level.m + level.h > top {
                return Err(fail(format!(
                    "m+h = {} exceeds the available ground {top}",
                    level.m + level.h
                )));
            }
            if level.cushion.n() > self.n {
                return Err(fail(format!("cushion ground n={} exceeds n={}", level.cushion.n(), self.n)));
            }
            let ground = top - level.h;
            let window = SubsetMask::interval(ground + 1, top);
            if level.cushion.is_empty() {
                return Err(fail("cushion has no members".into()));
            }
            if level.h == 0 && level.cushion.members() != [SubsetMask::EMPTY] {
                return Err(fail("thickness 0 requires the cushion {∅}".into()));
            }
            if let Some(bad) = level.cushion.members().iter().find(|s| !s.is_subset_of(window)) {
                return Err(fail(format!("cushion member {bad} lies outside window {window}")));
            }
            if let Some(w) = level.cushion.union_free_witness() {
                return Err(fail(format!("cushion is not union-free ({w})")));
            }
            out.push(LevelPlacement { ground, window });
            top = level.m - 1;
        }
        Ok(out)
    }
}

impl fmt::Display for CushionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q({}", self.n)?;
        for level in &self.levels {
            write!(f, "; {},{},{{", level.m, level.h)?;
            for (i, s) in level.cushion.members().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                if s.is_empty() {
                    f.write_str("∅")?;
                } else {
                    write!(f, "{s}")?;
                }
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

/// `(C([n−h₁],m₁) ⊕ F₁) ∪ (C([m₁−h₂−1],m₂) ⊕ F₂) ∪ …`.
pub fn cushion_family(spec: &CushionSpec) -> Result<Family> {
    let placements = spec.placements()?;
    let mut members = Vec::new();
    for (level, place) in spec.levels.iter().zip(&placements) {
        for a in k_subsets(place.ground, level.m) {
            members.extend(level.cushion.members().iter().map(|&b| a.union(b)));
        }
    }
    Family::new(spec.n, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{chain_family, ChainSpec};

    fn fam(n: u32, sets: &[&[u32]]) -> Family {
        Family::from_sets(n, sets).unwrap()
    }

    fn level(m: u32, h: u32, cushion: Family) -> CushionLevel {
        CushionLevel { m, h, cushion }
    }

    fn unit(n: u32) -> Family {
        Family::unit(n).unwrap()
    }

    #[test]
    fn doubling_example() {
        let spec = CushionSpec::new(
            5,
            vec![level(2, 1, fam(5, &[&[], &[5]])), level(1, 0, unit(5))],
        )
        .unwrap();
        let f = cushion_family(&spec).unwrap();
        assert_eq!(f.len(), 13);
        assert!(f.is_union_free());
        assert!(f.contains(SubsetMask::from_elements([1]).unwrap()));
        assert_eq!(spec.to_string(), "q(5; 2,1,{∅,{5}}; 1,0,{∅})");
    }

    #[test]
    fn tripling_example() {
        let spec = CushionSpec::new(
            5,
            vec![level(2, 2, fam(5, &[&[], &[4], &[4, 5]])), level(1, 0, unit(5))],
        )
        .unwrap();
        let f = cushion_family(&spec).unwrap();
        assert_eq!(f.len(), 10);
        assert!(f.is_union_free());
    }

    #[test]
    fn second_level_cushion() {
        // C([5],4) ∪ {{1},{1,2},{1,3}}
        let spec = CushionSpec::new(
            5,
            vec![level(4, 0, unit(5)), level(1, 2, fam(5, &[&[], &[2], &[3]]))],
        )
        .unwrap();
        let f = cushion_family(&spec).unwrap();
        let want = chain_family(&ChainSpec::new(5, vec![4]).unwrap())
            .members()
            .iter()
            .copied()
            .chain(fam(5, &[&[1], &[1, 2], &[1, 3]]).members().iter().copied())
            .collect::<Vec<_>>();
        assert_eq!(f, Family::new(5, want).unwrap());
    }

    #[test]
    fn zero_thickness_reduces_to_chain() {
        for (n, ms) in [(5u32, vec![3u32, 1]), (8, vec![6, 3, 2, 1]), (4, vec![4])] {
            let levels = ms.iter().map(|&m| level(m, 0, unit(n))).collect();
            let spec = CushionSpec::new(n, levels).unwrap();
            let chain = chain_family(&ChainSpec::new(n, ms).unwrap());
            assert_eq!(cushion_family(&spec).unwrap(), chain);
        }
    }

    #[test]
    fn rejects_bad_levels() {
        // window for level 1 at n=5, h=1 is {5}
        let outside = CushionSpec::new(5, vec![level(2, 1, fam(5, &[&[], &[4]]))]);
        assert!(matches!(outside, Err(Error::InvalidSpec(ref m)) if m.starts_with("level 1")));
        let thick0 = CushionSpec::new(5, vec![level(2, 0, fam(5, &[&[], &[5]]))]);
        assert!(thick0.is_err());
        let chain = CushionSpec::new(5, vec![level(2, 1, fam(5, &[&[], &[5]])), level(1, 1, unit(5))]);
        assert!(matches!(chain, Err(Error::InvalidSpec(ref m)) if m.starts_with("level 2")));
        let too_big = CushionSpec::new(5, vec![level(5, 1, fam(5, &[&[], &[5]]))]);
        assert!(too_big.is_err());
        let not_uf = CushionSpec::new(
            6,
            vec![level(2, 3, fam(6, &[&[4], &[5], &[4, 5]]))],
        );
        assert!(matches!(not_uf, Err(Error::InvalidSpec(ref m)) if m.contains("not union-free")));
        assert!(CushionSpec::new(5, vec![]).is_err());
    }
}
