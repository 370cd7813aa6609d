use std::fmt;

use num_bigint::BigUint;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{check_ground, k_subsets};

/// Largest ground size [`enumerate_chain_specs`] accepts.
pub const ENUMERATE_MAX_N: u32 = 20;

/// Parameters `(n; m₁ > m₂ > … > m_l)` of a chain family.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    n: u32,
    ms: Vec<u32>,
}

impl ChainSpec {
    pub fn new(n: u32, ms: Vec<u32>) -> Result<Self> {
        check_ground(n)?;
        let first = *ms
            .first()
            .ok_or_else(|| Error::InvalidSpec("chain needs at least one level".into()))?;
        if first > n {
            return Err(Error::InvalidSpec(format!("m1={first} exceeds n={n}")));
        }
        if let Some(w) = ms.windows(2).find(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSpec(format!(
                "levels must strictly decrease, found {} then {}",
                w[0], w[1]
            )));
        }
        if ms.last() == Some(&0) {
            return Err(Error::InvalidSpec("levels must be at least 1".into()));
        }
        Ok(ChainSpec { n, ms })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn levels(&self) -> &[u32] {
        &self.ms
    }

    /// Member of `Q(n)`: the chain bottoms out at 1.
    pub fn is_full_chain(&self) -> bool {
        self.ms.last() == Some(&1)
    }

    /// `(ground, m)` per level: `[n]` first, then `[m_{j-1} - 1]`.
    pub fn layers(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        std::iter::once(self.n)
            .chain(self.ms.iter().map(|m| m - 1))
            .zip(self.ms.iter().copied())
    }

    /// `Σ C(ground_j, m_j)`.
    pub fn size(&self) -> BigUint {
        self.layers()
            .map(|(g, m)| binomial(g as u64, m as u64))
            .sum()
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q({}; ", self.n)?;
        for (i, m) in self.ms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Layer-by-layer description, e.g. `C([9],5) ∪ C([4],2) ∪ C([1],1)`.
pub fn describe_layers(spec: &ChainSpec) -> String {
    spec.layers()
        .map(|(g, m)| format!("C([{g}],{m})"))
        .collect::<Vec<_>>()
        .join(" ∪ ")
}

/// `C([n],m₁) ∪ C([m₁−1],m₂) ∪ … ∪ C([m_{l−1}−1],m_l)`.
pub fn chain_family(spec: &ChainSpec) -> Family {
    let mut members: Vec<_> = spec.layers().flat_map(|(g, m)| k_subsets(g, m)).collect();
    // layers have distinct cardinalities, so sorting is only needed across them
    members.sort_unstable();
    Family::from_sorted_unchecked(spec.n, members)
}

/// The canonical `q(n)`: `m₁ = ⌈n/2⌉`, then recursively `q(m₁ − 1)`.
pub fn canonical_chain(n: u32) -> Result<ChainSpec> {
    check_ground(n)?;
    let mut ms = Vec::new();
    let mut ground = n;
    while ground >= 1 {
        let m = ground.div_ceil(2);
        ms.push(m);
        ground = m - 1;
    }
    ChainSpec::new(n, ms)
}

/// `|q(n)|` via `q_size(n) = C(n, ⌈n/2⌉) + q_size(⌈n/2⌉ − 1)`, `q_size(0) = 0`.
pub fn q_size(n: u32) -> BigUint {
    let mut total = BigUint::default();
    let mut ground = n as u64;
    while ground >= 1 {
        let m = ground.div_ceil(2);
        total += binomial(ground, m);
        ground = m - 1;
    }
    total
}

/// Every spec in `Q(n)`, lexicographic in the level sequence.
///
/// Index `i` in `0..2^(n-1)` encodes the chain whose levels above 1 are
/// `{j + 2 : bit j of i}`, which enumerates the chains in lexicographic order.
pub fn enumerate_chain_specs(n: u32) -> Result<impl Iterator<Item = ChainSpec>> {
    check_ground(n)?;
    if n > ENUMERATE_MAX_N {
        return Err(Error::Refused(format!(
            "Q({n}) has 2^{} chains; use best_chain",
            n - 1
        )));
    }
    Ok((0u32..1 << (n - 1)).map(move |i| {
        let mut ms: Vec<u32> = (0..n - 1).rev().filter(|j| i >> j & 1 == 1).map(|j| j + 2).collect();
        ms.push(1);
        ChainSpec { n, ms }
    }))
}

/// Largest `|q(n; …)|` over `Q(n)` with an optimal spec.
///
/// Ties at the top level go to the larger `m₁`; below it the lexicographically
/// smallest optimal continuation is kept.
pub fn best_chain(n: u32) -> Result<(ChainSpec, BigUint)> {
    check_ground(n)?;
    // best[s] = (size, levels) over chains on ground s, lexicographically smallest on ties
    let mut best: Vec<(BigUint, Vec<u32>)> = vec![(BigUint::default(), Vec::new())];
    for s in 1..n {
        let mut top: Option<(BigUint, u32)> = None;
        for m in 1..=s {
            let v = binomial(s as u64, m as u64) + &best[m as usize - 1].0;
            if top.as_ref().is_none_or(|(b, _)| v > *b) {
                top = Some((v, m));
            }
        }
        let (v, m) = top.expect("s >= 1");
        let mut levels = vec![m];
        levels.extend_from_slice(&best[m as usize - 1].1);
        best.push((v, levels));
    }
    let mut top: Option<(BigUint, u32)> = None;
    for m in 1..=n {
        let v = binomial(n as u64, m as u64) + &best[m as usize - 1].0;
        if top.as_ref().is_none_or(|(b, _)| v >= *b) {
            top = Some((v, m));
        }
    }
    let (v, m) = top.expect("n >= 1");
    let mut ms = vec![m];
    ms.extend_from_slice(&best[m as usize - 1].1);
    Ok((ChainSpec::new(n, ms)?, v))
}
