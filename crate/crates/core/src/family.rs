//! Families of subsets of `[n]` and the predicates and algebra over them.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::mask::{check_ground, ground_bits, SubsetMask};

/// State cap for [`Family::can_augment`]'s breadth-first search.
pub const AUGMENT_STATE_CAP: usize = 1 << 20;

/// Largest ground set for which maximality is checked by scanning `2^n`
/// candidates.
pub const MAXIMALITY_MAX_N: u32 = 26;

/// A duplicate-free family over `[n]`, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    members: Vec<SubsetMask>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    NotUnionFree,
    NotAntichain,
    NotMaximal,
    Superfluous,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::NotUnionFree => "not-union-free",
            WitnessKind::NotAntichain => "not-antichain",
            WitnessKind::NotMaximal => "not-maximal",
            WitnessKind::Superfluous => "superfluous",
        })
    }
}

/// Certificate for a failed predicate.
///
/// For [`WitnessKind::NotUnionFree`] and [`WitnessKind::Superfluous`] the
/// evidence members are proper subsets of `offending` whose union is
/// `offending`. For [`WitnessKind::NotAntichain`] the evidence is the single
/// member contained in `offending`. For [`WitnessKind::NotMaximal`],
/// `offending` is the addable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub offending: SubsetMask,
    pub evidence: Vec<SubsetMask>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.offending)?;
        if !self.evidence.is_empty() {
            f.write_str(" <=")?;
            for e in &self.evidence {
                write!(f, " {e}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of the maximality check on a union-free family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// The family stays union-free after adding this set.
    Extendable(SubsetMask),
}

/// A bijection on `[n]`; `images[i - 1]` is where element `i` goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p == 0 || p as usize > n {
                return Err(Error::InvalidPermutation(format!("image {p} outside [1,{n}]")));
            }
            if std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {p} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize - 1] = i as u32 + 1;
        }
        Permutation { images: inv }
    }

    pub fn apply(&self, s: SubsetMask) -> SubsetMask {
        let mut bits = 0u64;
        for e in s.elements() {
            bits |= 1 << (self.images[e as usize - 1] - 1);
        }
        SubsetMask::from_bits(bits)
    }
}

/// Union of the members of `members` that are proper subsets of `a`.
fn proper_cover(members: &[SubsetMask], a: SubsetMask) -> SubsetMask {
    members
        .iter()
        .filter(|b| b.is_proper_subset_of(a))
        .fold(SubsetMask::EMPTY, |acc, &b| acc.union(b))
}

impl Family {
    /// Builds a family; members are sorted canonically and duplicates merged.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(n: u32, members: I) -> Result<Self> {
        check_ground(n)?;
        let bound = ground_bits(n);
        let mut v: Vec<SubsetMask> = members.into_iter().collect();
        if let Some(bad) = v.iter().find(|m| m.bits() & !bound != 0) {
            return Err(Error::ElementOutOfRange { elem: bad.max_element(), n });
        }
        v.sort_unstable();
        v.dedup();
        Ok(Family { n, members: v })
    }

    /// Convenience constructor from nested element lists, e.g. `&[&[1], &[2, 3]]`.
    pub fn from_sets<S: AsRef<[u32]>>(n: u32, sets: &[S]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| SubsetMask::from_elements(s.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, masks)
    }

    /// The empty family over `[n]`.
    pub fn empty(n: u32) -> Result<Self> {
        Family::new(n, std::iter::empty())
    }

    /// `{∅}` over `[n]`, the identity for [`Family::oplus`].
    pub fn unit(n: u32) -> Result<Self> {
        Family::new(n, [SubsetMask::EMPTY])
    }

    pub(crate) fn from_sorted_unchecked(n: u32, members: Vec<SubsetMask>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Family { n, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: SubsetMask) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> SubsetMask {
        self.members
            .iter()
            .fold(SubsetMask::EMPTY, |acc, &m| acc.union(m))
    }

    pub fn with_member(&self, s: SubsetMask) -> Result<Family> {
        Family::new(self.n, self.members.iter().copied().chain([s]))
    }

    pub fn without_member(&self, s: SubsetMask) -> Family {
        let members = self.members.iter().copied().filter(|&m| m != s).collect();
        Family::from_sorted_unchecked(self.n, members)
    }

    /// Same members over a larger ground set.
    pub fn widen(&self, n: u32) -> Result<Family> {
        Family::new(n, self.members.iter().copied())
    }

    /// Relabels every member by `i -> i + by` and widens the ground to `n`.
    pub fn shift_up(&self, by: u32, n: u32) -> Result<Family> {
        let shifted = self
            .members
            .iter()
            .map(|m| m.shift_up(by))
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, shifted)
    }

    /// `U(F)`: every union of a sub-collection, the empty union included.
    pub fn union_closure(&self, cap: usize) -> Result<BTreeSet<SubsetMask>> {
        let mut closure: HashSet<SubsetMask> = HashSet::from([SubsetMask::EMPTY]);
        for &a in &self.members {
            let fresh: Vec<SubsetMask> = closure
                .iter()
                .map(|u| u.union(a))
                .filter(|u| !closure.contains(u))
                .collect();
            closure.extend(fresh);
            if closure.len() > cap {
                return Err(Error::Overflow(cap));
            }
        }
        if closure.len() > cap {
            return Err(Error::Overflow(cap));
        }
        Ok(closure.into_iter().collect())
    }

    /// `F ⊕ G = {A ∪ B : A ∈ F, B ∈ G}`.
    pub fn oplus(&self, other: &Family) -> Result<Family> {
        if self.n != other.n {
            return Err(Error::GroundMismatch(self.n, other.n));
        }
        let product = self
            .members
            .iter()
            .flat_map(|&a| other.members.iter().map(move |&b| a.union(b)));
        Family::new(self.n, product)
    }

    /// A member equals a union of other members iff it equals the union of
    /// the members that are proper subsets of it.
    pub fn union_free_witness(&self) -> Option<Witness> {
        for &a in &self.members {
            if a.is_empty() {
                continue;
            }
            let evidence: Vec<SubsetMask> = self
                .members
                .iter()
                .copied()
                .filter(|b| b.is_proper_subset_of(a))
                .collect();
            let cover = evidence.iter().fold(SubsetMask::EMPTY, |acc, &b| acc.union(b));
            if cover == a {
                return Some(Witness {
                    kind: WitnessKind::NotUnionFree,
                    offending: a,
                    evidence: minimal_evidence(a, evidence),
                });
            }
        }
        None
    }

    pub fn is_union_free(&self) -> bool {
        self.union_free_witness().is_none()
    }

    pub fn antichain_witness(&self) -> Option<Witness> {
        for (i, &b) in self.members.iter().enumerate() {
            // canonical order puts any strict superset later
            if let Some(&a) = self.members[i + 1..].iter().find(|&&a| b.is_proper_subset_of(a)) {
                return Some(Witness {
                    kind: WitnessKind::NotAntichain,
                    offending: a,
                    evidence: vec![b],
                });
            }
        }
        None
    }

    pub fn is_antichain(&self) -> bool {
        self.antichain_witness().is_none()
    }

    /// `Σ 1 / C(n, |A|)` over members, exactly.
    pub fn lym_sum(&self) -> BigRational {
        let mut counts = vec![0u64; self.n as usize + 1];
        for m in &self.members {
            counts[m.len() as usize] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| {
                BigRational::new(BigUint::from(c).into(), binomial(self.n as u64, k as u64).into())
            })
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// Whether removing `a` leaves `U(F)` unchanged. `∅` always is, being the
    /// empty union.
    pub fn is_superfluous(&self, a: SubsetMask) -> Result<bool> {
        if !self.contains(a) {
            return Err(Error::NotMember(a.to_string()));
        }
        Ok(a.is_empty() || proper_cover(&self.members, a) == a)
    }

    pub fn superfluous_witness(&self, a: SubsetMask) -> Result<Option<Witness>> {
        if !self.is_superfluous(a)? {
            return Ok(None);
        }
        let evidence = self
            .members
            .iter()
            .copied()
            .filter(|b| b.is_proper_subset_of(a))
            .collect();
        Ok(Some(Witness {
            kind: WitnessKind::Superfluous,
            offending: a,
            evidence: minimal_evidence(a, evidence),
        }))
    }

    /// Cardinalities reachable as `|S ∪ A₁ ∪ … ∪ A_k|`, `k >= 0`, as a bitmask
    /// over `0..=64` (bit `t` set iff size `t` is reachable).
    pub fn augment_sizes(&self, s: SubsetMask) -> Result<u128> {
        let mut visited: HashSet<SubsetMask> = HashSet::from([s]);
        let mut queue = VecDeque::from([s]);
        let mut sizes = 0u128;
        while let Some(cur) = queue.pop_front() {
            sizes |= 1 << cur.len();
            for &a in &self.members {
                let next = cur.union(a);
                if visited.insert(next) {
                    if visited.len() > AUGMENT_STATE_CAP {
                        return Err(Error::Overflow(AUGMENT_STATE_CAP));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(sizes)
    }

    /// Whether some members `A₁ … A_k` give `|S ∪ A₁ ∪ … ∪ A_k| = t`.
    pub fn can_augment(&self, s: SubsetMask, t: u32) -> Result<bool> {
        if s.bits() & !ground_bits(self.n) != 0 {
            return Err(Error::ElementOutOfRange { elem: s.max_element(), n: self.n });
        }
        if t > self.n || t < s.len() {
            return Ok(false);
        }
        if t == s.len() {
            return Ok(true);
        }
        Ok(self.augment_sizes(s)? >> t & 1 == 1)
    }

    /// Non-member, non-empty sets `S` for which `F ∪ {S}` stays union-free,
    /// scanned from the largest set down in canonical order.
    fn addable_scan(&self) -> Result<impl Iterator<Item = SubsetMask> + '_> {
        if let Some(w) = self.union_free_witness() {
            return Err(Error::NotUnionFree(w.to_string()));
        }
        if self.n > MAXIMALITY_MAX_N {
            return Err(Error::Refused(format!(
                "maximality scan needs n <= {MAXIMALITY_MAX_N}, got {}",
                self.n
            )));
        }
        let covers: Vec<SubsetMask> = self
            .members
            .iter()
            .map(|&a| proper_cover(&self.members, a))
            .collect();
        let mut candidates: Vec<SubsetMask> = (1..=ground_bits(self.n))
            .map(SubsetMask::from_bits)
            .filter(|s| !self.contains(*s))
            .collect();
        candidates.sort_unstable_by(|a, b| b.cmp(a));
        Ok(candidates.into_iter().filter(move |&s| {
            if proper_cover(&self.members, s) == s {
                return false;
            }
            self.members
                .iter()
                .zip(&covers)
                .all(|(&a, &cover)| !s.is_proper_subset_of(a) || s.union(cover) != a)
        }))
    }

    /// Every set that can be added while keeping the family union-free.
    pub fn addable_sets(&self) -> Result<Vec<SubsetMask>> {
        let mut v: Vec<SubsetMask> = self.addable_scan()?.collect();
        v.sort_unstable();
        Ok(v)
    }

    /// The first addable set found scanning from the top of the canonical
    /// order, if any.
    pub fn maximality(&self) -> Result<Maximality> {
        Ok(match self.addable_scan()?.next() {
            Some(s) => Maximality::Extendable(s),
            None => Maximality::Maximal,
        })
    }

    pub fn is_maximal_union_free(&self) -> Result<bool> {
        Ok(self.maximality()? == Maximality::Maximal)
    }

    pub fn relabel(&self, perm: &Permutation) -> Result<Family> {
        if perm.len() != self.n as usize {
            return Err(Error::InvalidPermutation(format!(
                "permutation has {} entries, family has n={}",
                perm.len(),
                self.n
            )));
        }
        Family::new(self.n, self.members.iter().map(|&m| perm.apply(m)))
    }
}

/// Drops covering members whose elements are already supplied by others.
fn minimal_evidence(target: SubsetMask, mut evidence: Vec<SubsetMask>) -> Vec<SubsetMask> {
    // largest first so that small redundant pieces are the ones removed
    evidence.sort_unstable_by(|a, b| b.cmp(a));
    let mut i = 0;
    while i < evidence.len() {
        let rest = evidence
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(SubsetMask::EMPTY, |acc, (_, &b)| acc.union(b));
        if rest == target {
            evidence.remove(i);
        } else {
            i += 1;
        }
    }
    evidence.sort_unstable();
    evidence
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, {:?})", self.n, self.members)
    }
}

/// `C(n, ⌊n/2⌋)`, the largest antichain size over `[n]`.
pub fn sperner_bound(n: u32) -> BigUint {
    binomial(n as u64, n as u64 / 2)
}
