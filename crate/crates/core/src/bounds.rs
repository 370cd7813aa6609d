//! Lower and upper bounds on `M(n)`, the bounds table, and the filibuster
//! duration estimate.
//!
//! Lower bounds take the best of three constructions, evaluated bottom-up
//! with exact integers:
//!
//! * the best chain family in `Q(n)`;
//! * a split `lb(h) + lb(n − h)`: two union-free families on disjoint
//!   supports `[1, h]` and `[h + 1, n]`;
//! * a cushioned chain `g(n)`, where
//!   `g(s) = max over m ∈ [1, s], h ∈ [0, s − m] of C(s − h, m)·(lb(h) + 1) + g(m − 1)`
//!   and `g(0) = 0`. The factor `lb(h) + 1` is a best-known family on the
//!   `h`-element window plus `∅`.
//!
//! Upper bounds come from `M(n) ≤ M(n₁) + 2^{n₁}·M(n₂)` with the exhaustive
//! values `M(1..=4) = 1, 2, 4, 7` at the base.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::binom::binomial;
use crate::constructors::{
    best_chain, canonical_chain, chain_family, cushion_family, describe_layers, q_size, ChainSpec,
    CushionLevel, CushionSpec,
};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{check_ground, SubsetMask};

/// `M(1..=4)`, established by exhaustion.
pub const EXHAUSTIVE_VALUES: [u64; 4] = [1, 2, 4, 7];

/// 365.25 days.
pub const MINUTES_PER_YEAR: f64 = 525_960.0;

/// Largest `n` for which [`materialize_lower_witness`] builds the family.
pub const MATERIALIZE_MAX_N: u32 = 24;

/// How a lower bound was achieved.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LowerWitness {
    Chain(ChainSpec),
    /// Disjoint union of the witnesses for `[1, h]` and `[h + 1, n]`.
    Split { h: u32 },
    /// Cushioned chain; `(m, h)` per level, each cushion being the best-known
    /// family on its window plus `∅`.
    Cushion(Vec<(u32, u32)>),
}

impl fmt::Display for LowerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerWitness::Chain(spec) => write!(f, "chain {spec}"),
            LowerWitness::Split { h } => write!(f, "split h={h}"),
            LowerWitness::Cushion(levels) => {
                f.write_str("cushion")?;
                for (i, (m, h)) in levels.iter().enumerate() {
                    write!(f, "{}(m={m},h={h})", if i == 0 { " " } else { "; " })?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UpperProof {
    Exhaustion,
    Split { n1: u32, n2: u32 },
}

impl fmt::Display for UpperProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperProof::Exhaustion => f.write_str("exhaustion"),
            UpperProof::Split { n1, n2 } => write!(f, "({n1},{n2})"),
        }
    }
}

/// Memoized bounds for ground sizes `0..=n`. Extending never revisits a
/// computed entry.
#[derive(Clone, Debug)]
pub struct BoundState {
    lb: Vec<BigUint>,
    lb_witness: Vec<Option<LowerWitness>>,
    cushioned: Vec<BigUint>,
    cushion_choice: Vec<Option<(u32, u32)>>,
    ub: Vec<BigUint>,
    ub_proof: Vec<Option<UpperProof>>,
}

impl Default for BoundState {
    fn default() -> Self {
        Self::new()
    }
}

impl BoundState {
    pub fn new() -> Self {
        BoundState {
            lb: vec![BigUint::zero()],
            lb_witness: vec![None],
            cushioned: vec![BigUint::zero()],
            cushion_choice: vec![None],
            ub: vec![BigUint::zero()],
            ub_proof: vec![None],
        }
    }

    pub fn computed_up_to(&self) -> u32 {
        self.lb.len() as u32 - 1
    }

    pub fn extend_to(&mut self, n: u32) -> Result<()> {
        check_ground(n)?;
        while self.computed_up_to() < n {
            let s = self.computed_up_to() + 1;
            self.push_lower(s)?;
            self.push_upper(s);
        }
        Ok(())
    }

    fn push_lower(&mut self, s: u32) -> Result<()> {
        let mut cushion_best: Option<(BigUint, (u32, u32))> = None;
        for m in 1..=s {
            for h in 0..=s - m {
                let v = binomial((s - h) as u64, m as u64) * (&self.lb[h as usize] + 1u32)
                    + &self.cushioned[m as usize - 1];
                if cushion_best.as_ref().is_none_or(|(b, _)| v > *b) {
                    cushion_best = Some((v, (m, h)));
                }
            }
        }
        let (g, choice) = cushion_best.expect("s >= 1");
        self.cushioned.push(g.clone());
        self.cushion_choice.push(Some(choice));

        let (chain_spec, chain_size) = best_chain(s)?;
        let mut best = chain_size;
        let mut witness = LowerWitness::Chain(chain_spec);
        if g > best {
            best = g;
            witness = LowerWitness::Cushion(self.cushion_levels(s));
        }
        for h in 1..s {
            let v = &self.lb[h as usize] + &self.lb[(s - h) as usize];
            if v > best {
                best = v;
                witness = LowerWitness::Split { h };
            }
        }
        self.lb.push(best);
        self.lb_witness.push(Some(witness));
        Ok(())
    }

    fn cushion_levels(&self, s: u32) -> Vec<(u32, u32)> {
        let mut levels = Vec::new();
        let mut top = s;
        while top >= 1 {
            let (m, h) = self.cushion_choice[top as usize].expect("computed");
            levels.push((m, h));
            top = m - 1;
        }
        levels
    }

    fn push_upper(&mut self, s: u32) {
        if s as usize <= EXHAUSTIVE_VALUES.len() {
            self.ub.push(BigUint::from(EXHAUSTIVE_VALUES[s as usize - 1]));
            self.ub_proof.push(Some(UpperProof::Exhaustion));
            return;
        }
        let mut best: Option<(BigUint, u32)> = None;
        for n1 in 1..s {
            let n2 = s - n1;
            let v = upper_bound_split(n1, n2, &self.ub[n1 as usize], &self.ub[n2 as usize]);
            let better = match &best {
                None => true,
                Some((b, prev)) => v < *b || (v == *b && n2.is_multiple_of(4) && !(s - prev).is_multiple_of(4)),
            };
            if better {
                best = Some((v, n1));
            }
        }
        let (v, n1) = best.expect("s >= 5");
        self.ub.push(v);
        self.ub_proof.push(Some(UpperProof::Split { n1, n2: s - n1 }));
    }

    pub fn lower(&mut self, n: u32) -> Result<(BigUint, LowerWitness)> {
        self.extend_to(n)?;
        let w = self.lb_witness[n as usize].clone().expect("computed");
        Ok((self.lb[n as usize].clone(), w))
    }

    pub fn upper(&mut self, n: u32) -> Result<(BigUint, UpperProof)> {
        self.extend_to(n)?;
        Ok((self.ub[n as usize].clone(), self.ub_proof[n as usize].expect("computed")))
    }
}

/// Best known lower bound on `M(n)` and the construction achieving it.
pub fn lower_bound(n: u32) -> Result<(BigUint, LowerWitness)> {
    BoundState::new().lower(n)
}

/// Best upper bound from recursive splitting.
pub fn upper_bound(n: u32) -> Result<(BigUint, UpperProof)> {
    BoundState::new().upper(n)
}

/// `M(n₁) + 2^{n₁}·M(n₂)` given bounds for the two parts.
pub fn upper_bound_split(n1: u32, _n2: u32, ub1: &BigUint, ub2: &BigUint) -> BigUint {
    ub1 + (BigUint::one() << n1) * ub2
}

/// `(2^{ck} − 1)·M(k)/(2^k − 1)`.
pub fn upper_bound_ck(c: u32, k: u32, mk: &BigUint) -> BigUint {
    assert!(c >= 1 && k >= 1, "c and k must be positive");
    let num = ((BigUint::one() << (c * k)) - 1u32) * mk;
    let den = (BigUint::one() << k) - 1u32;
    assert!((&num % &den).is_zero(), "2^k - 1 divides 2^ck - 1");
    num / den
}

/// Builds the family behind [`lower_bound`]`(n)`.
pub fn materialize_lower_witness(n: u32) -> Result<Family> {
    if n > MATERIALIZE_MAX_N {
        return Err(Error::Refused(format!(
            "witness materialization needs n <= {MATERIALIZE_MAX_N}"
        )));
    }
    let mut state = BoundState::new();
    state.extend_to(n)?;
    let mut built: Vec<Option<Family>> = vec![None; n as usize + 1];
    materialize(&state, n, &mut built)
}

fn materialize(state: &BoundState, n: u32, built: &mut Vec<Option<Family>>) -> Result<Family> {
    if let Some(f) = &built[n as usize] {
        return Ok(f.clone());
    }
    let witness = state.lb_witness[n as usize].clone().expect("computed");
    let family = match witness {
        LowerWitness::Chain(spec) => chain_family(&spec),
        LowerWitness::Split { h } => {
            let low = materialize(state, h, built)?.widen(n)?;
            let high = materialize(state, n - h, built)?.shift_up(h, n)?;
            Family::new(n, low.members().iter().chain(high.members()).copied())?
        }
        LowerWitness::Cushion(levels) => {
            let mut top = n;
            let mut spec_levels = Vec::with_capacity(levels.len());
            for (m, h) in levels {
                let cushion = if h == 0 {
                    Family::unit(n)?
                } else {
                    materialize(state, h, built)?
                        .shift_up(top - h, n)?
                        .with_member(SubsetMask::EMPTY)?
                };
                spec_levels.push(CushionLevel { m, h, cushion });
                top = m - 1;
            }
            cushion_family(&CushionSpec::new(n, spec_levels)?)?
        }
    };
    built[n as usize] = Some(family.clone());
    Ok(family)
}

/// Ratio rounded half-up to two decimals, stored as hundredths.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Hundredths(pub u64);

impl Hundredths {
    pub fn of_ratio(num: &BigUint, den: &BigUint) -> Hundredths {
        let scaled = (num * 200u32 + den) / (den * 2u32);
        Hundredths(scaled.to_u64().expect("ratio fits"))
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Hundredths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableMode {
    /// The historical table: `q(n)` sizes (13 at `n = 5`) and the fixed
    /// splits `n₂ = 4⌊(n − 1)/4⌋`.
    PaperReplica,
    /// The dynamic-programming bounds.
    BestKnown,
}

impl FromStr for TableMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-replica" => Ok(TableMode::PaperReplica),
            "best-known" => Ok(TableMode::BestKnown),
            other => Err(Error::Domain(format!(
                "unknown table mode `{other}` (expected paper-replica or best-known)"
            ))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundsRow {
    pub n: u32,
    pub lower: BigUint,
    pub lower_witness: String,
    pub upper: BigUint,
    pub upper_split: UpperProof,
    pub ratio: Hundredths,
}

/// `q(n) = C([n],m₁) ∪ …`
fn describe_q(n: u32) -> Result<String> {
    Ok(format!("q({n}) = {}", describe_layers(&canonical_chain(n)?)))
}

/// The doubling family at `n = 5`.
pub fn replica_cushion_five() -> CushionSpec {
    let fam = |sets: &[&[u32]]| Family::from_sets(5, sets).expect("static family");
    CushionSpec::new(
        5,
        vec![
            CushionLevel { m: 2, h: 1, cushion: fam(&[&[], &[5]]) },
            CushionLevel { m: 1, h: 0, cushion: fam(&[&[]]) },
        ],
    )
    .expect("static spec")
}

fn replica_lower(n: u32) -> Result<(BigUint, String)> {
    if n == 5 {
        let spec = replica_cushion_five();
        let size = cushion_family(&spec)?.len();
        return Ok((BigUint::from(size), spec.to_string()));
    }
    Ok((q_size(n), describe_q(n)?))
}

fn replica_upper(n: u32, memo: &mut Vec<BigUint>) -> (BigUint, UpperProof) {
    while memo.len() <= n as usize {
        let s = memo.len() as u32;
        let v = match s {
            0 => BigUint::zero(),
            1..=4 => BigUint::from(EXHAUSTIVE_VALUES[s as usize - 1]),
            _ => {
                let (n1, n2) = replica_split(s);
                upper_bound_split(n1, n2, &memo[n1 as usize], &memo[n2 as usize])
            }
        };
        memo.push(v);
    }
    let proof = if n <= 4 {
        UpperProof::Exhaustion
    } else {
        let (n1, n2) = replica_split(n);
        UpperProof::Split { n1, n2 }
    };
    (memo[n as usize].clone(), proof)
}

fn replica_split(n: u32) -> (u32, u32) {
    let n1 = (n - 1) % 4 + 1;
    (n1, n - n1)
}

pub fn bounds_table(n_max: u32, mode: TableMode) -> Result<Vec<BoundsRow>> {
    check_ground(n_max)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    match mode {
        TableMode::PaperReplica => {
            let mut memo = Vec::new();
            for n in 1..=n_max {
                let (lower, lower_witness) = replica_lower(n)?;
                let (upper, upper_split) = replica_upper(n, &mut memo);
                let ratio = Hundredths::of_ratio(&upper, &lower);
                rows.push(BoundsRow { n, lower, lower_witness, upper, upper_split, ratio });
            }
        }
        TableMode::BestKnown => {
            let mut state = BoundState::new();
            state.extend_to(n_max)?;
            for n in 1..=n_max {
                let (lower, witness) = state.lower(n)?;
                let (upper, upper_split) = state.upper(n)?;
                let ratio = Hundredths::of_ratio(&upper, &lower);
                rows.push(BoundsRow {
                    n,
                    lower,
                    lower_witness: witness.to_string(),
                    upper,
                    upper_split,
                    ratio,
                });
            }
        }
    }
    Ok(rows)
}

pub fn table_to_csv(rows: &[BoundsRow]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["n", "lb", "lb_witness", "ub", "ub_split", "ratio"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.lower.to_string(),
            r.lower_witness.clone(),
            r.upper.to_string(),
            r.upper_split.to_string(),
            r.ratio.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn table_to_markdown(rows: &[BoundsRow]) -> String {
    let mut out = String::from("| n | L.B. | Example | U.B. | Proof | U.B./L.B. |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in rows {
        let proof = match r.upper_split {
            UpperProof::Exhaustion => "By exhaustion".to_string(),
            UpperProof::Split { n1, n2 } => format!("n1 = {n1}, n2 = {n2}"),
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.n, r.lower, r.lower_witness, r.upper, proof, r.ratio
        ));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilibusterEstimate {
    pub amendments: BigUint,
    pub minutes: f64,
    pub years: f64,
}

/// Time to handle the replica lower-bound number of amendments on an
/// `n`-article bill.
pub fn filibuster_duration(n: u32, minutes_per_amendment: f64) -> Result<FilibusterEstimate> {
    if !(minutes_per_amendment.is_finite() && minutes_per_amendment >= 0.0) {
        return Err(Error::Domain(format!(
            "minutes per amendment must be a non-negative number, got {minutes_per_amendment}"
        )));
    }
    check_ground(n)?;
    let (amendments, _) = replica_lower(n)?;
    let minutes = amendments.to_f64().expect("finite") * minutes_per_amendment;
    Ok(FilibusterEstimate { amendments, minutes, years: minutes / MINUTES_PER_YEAR })
}
