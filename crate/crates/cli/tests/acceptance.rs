//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use union_free::approx::{central_report, dominance_ratio, stirling_report};
use union_free::bounds::{
    bounds_table, filibuster_duration, materialize_lower_witness, replica_cushion_five, upper_bound_ck,
};
use union_free::constructors::{
    canonical_chain, chain_family, cushion_family, enumerate_chain_specs, layered_compose, q_size,
    CushionLevel, CushionSpec, LayeredSpec,
};
use union_free::exact::exhaustive_bound_check;
use union_free::mask::{ground_bits, k_subsets};
use union_free::{lower_bound, upper_bound, Family, Maximality, SubsetMask, TableMode};

/// Reference rows: (n, L.B., U.B., U.B./L.B. in hundredths).
const REFERENCE_TABLE: [(u32, u64, u64, u64); 30] = [
    (1, 1, 1, 100),
    (2, 2, 2, 100),
    (3, 4, 4, 100),
    (4, 7, 7, 100),
    (5, 13, 15, 115),
    (6, 22, 30, 136),
    (7, 39, 60, 154),
    (8, 74, 119, 161),
    (9, 133, 239, 180),
    (10, 259, 478, 185),
    (11, 474, 956, 202),
    (12, 936, 1911, 204),
    (13, 1738, 3823, 220),
    (14, 3454, 7646, 221),
    (15, 6474, 15292, 236),
    (16, 12909, 30583, 237),
    (17, 24384, 61167, 251),
    (18, 48694, 122334, 251),
    (19, 92511, 244668, 264),
    (20, 184889, 489335, 265),
    (21, 352975, 978671, 277),
    (22, 705691, 1957342, 277),
    (23, 1352552, 3914684, 289),
    (24, 2704630, 7829367, 289),
    (25, 5201236, 15658735, 301),
    (26, 10401536, 31317470, 301),
    (27, 20060038, 62634940, 312),
    (28, 40118338, 125269879, 312),
    (29, 77562214, 250539759, 323),
    (30, 155120974, 501079518, 323),
];

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fam(n: u32, sets: &[&[u32]]) -> Family {
    Family::from_sets(n, sets).unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = union_free_cli::run(std::iter::once("unionfree").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn exact_small_values() -> Verdict {
    let started = Instant::now();
    for (k, want) in [(1, 1), (2, 2), (3, 4), (4, 7)] {
        let (code, text) = cli(&["exact", "--n", &k.to_string()]);
        ensure(code == 0, || format!("exact --n {k} exited {code}"))?;
        ensure(text.contains(&format!("exact: M({k}) = {want}")), || format!("exact --n {k}: {text}"))?;
        let witness = union_free::parse_family(text.split("exact:").next().unwrap()).map_err(|e| e.to_string())?;
        ensure(witness.len() == want && witness.is_union_free(), || format!("bad witness at n={k}"))?;
    }
    let search = started.elapsed();
    ensure(search < Duration::from_secs(60), || format!("search took {search:?}"))?;
    let started = Instant::now();
    let holds = exhaustive_bound_check(4, 7).map_err(|e| e.to_string())?;
    let beaten = !exhaustive_bound_check(4, 6).map_err(|e| e.to_string())?;
    let enumeration = started.elapsed();
    ensure(holds && beaten, || format!("exhaustive check (4,7)={holds}, (4,6)={}", !beaten))?;
    ensure(enumeration < Duration::from_secs(10), || format!("enumeration took {enumeration:?}"))?;
    Ok(format!("1,2,4,7 exact in {search:.2?}; 2^15 families enumerated twice in {enumeration:.2?}"))
}

fn table_replication() -> Verdict {
    let started = Instant::now();
    let rows = bounds_table(30, TableMode::PaperReplica).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    ensure(rows.len() == 30, || format!("{} rows", rows.len()))?;
    let mut cells = 0;
    for (row, &(n, lb, ub, ratio)) in rows.iter().zip(&REFERENCE_TABLE) {
        ensure(row.n == n, || format!("row order broken at {n}"))?;
        ensure(row.lower == BigUint::from(lb), || format!("n={n}: L.B. {} != {lb}", row.lower))?;
        ensure(row.upper == BigUint::from(ub), || format!("n={n}: U.B. {} != {ub}", row.upper))?;
        ensure(row.ratio.0 == ratio, || format!("n={n}: ratio {} != {}", row.ratio, ratio as f64 / 100.0))?;
        cells += 3;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("table took {elapsed:?}"))?;
    Ok(format!("{cells} cells match in {elapsed:.2?}"))
}

fn construction_sizes() -> Verdict {
    for &(n, lb, _, _) in &REFERENCE_TABLE {
        if n != 5 {
            ensure(q_size(n) == BigUint::from(lb), || format!("q_size({n}) = {} != {lb}", q_size(n)))?;
        }
    }
    let doubling = cushion_family(&replica_cushion_five()).map_err(|e| e.to_string())?;
    let tripling_spec = CushionSpec::new(
        5,
        vec![
            CushionLevel { m: 2, h: 2, cushion: fam(5, &[&[], &[4], &[4, 5]]) },
            CushionLevel { m: 1, h: 0, cushion: Family::unit(5).unwrap() },
        ],
    )
    .map_err(|e| e.to_string())?;
    let tripling = cushion_family(&tripling_spec).map_err(|e| e.to_string())?;
    ensure(doubling.len() == 13 && doubling.is_union_free(), || format!("doubling: {}", doubling.len()))?;
    ensure(tripling.len() == 10 && tripling.is_union_free(), || format!("tripling: {}", tripling.len()))?;
    Ok("q_size matches 29 rows; doubling 13, tripling 10, both union-free".into())
}

fn random_union_free(rng: &mut StdRng, n: u32, window: SubsetMask) -> Family {
    let mut subsets: Vec<SubsetMask> =
        (1..=window.bits()).filter(|b| b & !window.bits() == 0).map(SubsetMask::from_bits).collect();
    subsets.shuffle(rng);
    let mut f = Family::new(n, rng.gen_bool(0.7).then_some(SubsetMask::EMPTY)).unwrap();
    for s in subsets.into_iter().take(rng.gen_range(1..=8)) {
        let g = f.with_member(s).unwrap();
        if g.is_union_free() {
            f = g;
        }
    }
    if f.is_empty() {
        Family::unit(n).unwrap()
    } else {
        f
    }
}

fn random_cushion(rng: &mut StdRng) -> CushionSpec {
    let n = rng.gen_range(1..=10);
    let mut levels = Vec::new();
    let mut top = n;
    loop {
        let m = rng.gen_range(1..=top);
        let h = rng.gen_range(0..=(top - m).min(4));
        let cushion = if h == 0 {
            Family::unit(n).unwrap()
        } else {
            random_union_free(rng, n, SubsetMask::interval(top - h + 1, top))
        };
        levels.push(CushionLevel { m, h, cushion });
        top = m - 1;
        if top == 0 || rng.gen_bool(0.4) {
            break;
        }
    }
    CushionSpec::new(n, levels).unwrap()
}

fn random_layers(rng: &mut StdRng, n: u32, ground: &[u32], p: usize) -> Vec<Family> {
    let mut elems = ground.to_vec();
    elems.shuffle(rng);
    let mut cuts: Vec<usize> = (1..elems.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(p - 1);
    cuts.sort_unstable();
    cuts.push(elems.len());
    let (mut prefix, mut start, mut layers) = (SubsetMask::EMPTY, 0, Vec::new());
    for (j, &end) in cuts.iter().enumerate() {
        let band = &elems[start..end];
        let layer = if j == 0 && rng.gen_bool(0.3) {
            Family::new(n, [prefix]).unwrap()
        } else {
            let k = rng.gen_range(1..=band.len() as u32);
            let mut picks: Vec<SubsetMask> = k_subsets(band.len() as u32, k)
                .map(|local| {
                    let chosen = local.elements().map(|i| band[i as usize - 1]);
                    prefix.union(SubsetMask::from_elements(chosen).unwrap())
                })
                .collect();
            picks.shuffle(rng);
            picks.truncate(rng.gen_range(1..=picks.len()));
            Family::new(n, picks).unwrap()
        };
        layers.push(layer);
        prefix = prefix.union(SubsetMask::from_elements(band.iter().copied()).unwrap());
        start = end;
    }
    layers
}

fn random_layered(rng: &mut StdRng) -> LayeredSpec {
    let n = rng.gen_range(2..=10);
    let a = rng.gen_range(1..n);
    let (left, right): (Vec<u32>, Vec<u32>) = ((1..=a).collect(), (a + 1..=n).collect());
    let p = rng.gen_range(1..=3).min(left.len()).min(right.len());
    let fs = random_layers(rng, n, &left, p);
    let mut gs = random_layers(rng, n, &right, p);
    gs.reverse();
    LayeredSpec::new(fs, gs).unwrap()
}

fn family_checks() -> Verdict {
    let mut specs = 0;
    for n in 1..=10 {
        for spec in enumerate_chain_specs(n).map_err(|e| e.to_string())? {
            let f = chain_family(&spec);
            ensure(f.is_union_free(), || format!("{spec} not union-free"))?;
            if n <= 8 {
                ensure(f.is_maximal_union_free().unwrap(), || format!("{spec} not maximal"))?;
            }
            specs += 1;
        }
    }
    let started = Instant::now();
    for n in 1..=14 {
        let f = chain_family(&canonical_chain(n).unwrap());
        ensure(f.is_union_free(), || format!("q({n}) not union-free"))?;
    }
    let q14 = chain_family(&canonical_chain(14).unwrap());
    let elapsed = started.elapsed();
    ensure(q14.len() == 3454, || format!("|q(14)| = {}", q14.len()))?;
    ensure(elapsed < Duration::from_secs(30), || format!("q(n) checks took {elapsed:?}"))?;
    let mut rng = StdRng::seed_from_u64(2024);
    for _ in 0..200 {
        let spec = random_cushion(&mut rng);
        ensure(cushion_family(&spec).unwrap().is_union_free(), || format!("cushion {spec} fails"))?;
    }
    for _ in 0..200 {
        let spec = random_layered(&mut rng);
        ensure(layered_compose(&spec).unwrap().is_union_free(), || format!("layered {spec:?} fails"))?;
    }
    let cushion = fam(5, &[&[], &[3], &[3, 4], &[3, 5], &[4, 5]]);
    let thick = cushion_family(&CushionSpec::new(5, vec![CushionLevel { m: 1, h: 3, cushion: cushion.clone() }]).unwrap())
        .unwrap();
    let target = SubsetMask::from_elements([3, 4, 5]).unwrap();
    ensure(thick.maximality().unwrap() == Maximality::Extendable(target), || {
        format!("thick cushion maximality: {:?}", thick.maximality())
    })?;
    let layered = LayeredSpec::new(
        vec![Family::unit(5).unwrap(), fam(5, &[&[1], &[2]])],
        vec![fam(5, &[&[3, 4, 5]]), cushion],
    )
    .unwrap();
    ensure(layered_compose(&layered).unwrap() == thick.with_member(target).unwrap(), || {
        "decomposition does not reproduce the extended family".into()
    })?;
    Ok(format!(
        "{specs} chain specs; q(1..14) union-free in {elapsed:.2?}; 200+200 fuzzed; thick cushion adds {{3,4,5}}"
    ))
}

fn property_suites() -> Verdict {
    let mut rng = StdRng::seed_from_u64(99);
    let mut checked = 0;
    let mut closure_checked = 0;
    while checked < 1500 {
        let n = rng.gen_range(1..=6);
        let len = rng.gen_range(0..=14);
        let f = Family::new(n, (0..len).map(|_| SubsetMask::from_bits(rng.gen_range(1..=ground_bits(n))))).unwrap();
        let none_superfluous = f.members().iter().all(|&a| !f.is_superfluous(a).unwrap());
        ensure(f.is_union_free() == none_superfluous, || format!("equivalence fails on {f:?}"))?;
        if f.len() <= 10 {
            let full = f.union_closure(1 << 12).unwrap();
            for &a in f.members() {
                let rest = f.without_member(a).union_closure(1 << 12).unwrap();
                ensure(f.is_superfluous(a).unwrap() == (full == rest), || format!("{a} in {f:?}"))?;
            }
            closure_checked += 1;
        }
        checked += 1;
    }
    let mut antichains = 0;
    while antichains < 1500 {
        let n = rng.gen_range(1..=12);
        let mut kept: Vec<SubsetMask> = Vec::new();
        for _ in 0..rng.gen_range(1..60) {
            let s = SubsetMask::from_bits(rng.gen_range(0..=ground_bits(n)));
            if kept.iter().all(|k| !k.is_subset_of(s) && !s.is_subset_of(*k)) {
                kept.push(s);
            }
        }
        let f = Family::new(n, kept).unwrap();
        ensure(f.is_antichain() && f.lym_sum() <= BigRational::one(), || format!("LYM fails on {f:?}"))?;
        antichains += 1;
    }
    for n in 1..=8 {
        let f = chain_family(&canonical_chain(n).unwrap());
        for bits in 0..=ground_bits(n) {
            let s = SubsetMask::from_bits(bits);
            let sizes = f.augment_sizes(s).unwrap();
            ensure((s.len() + 1..=n).all(|t| sizes >> t & 1 == 1), || format!("q({n}) cannot augment {s}"))?;
        }
    }
    Ok(format!(
        "{checked} families ({closure_checked} closure-checked); {antichains} antichains; augmentation exhaustive to n=8"
    ))
}

fn bound_consistency() -> Verdict {
    let replica = bounds_table(30, TableMode::PaperReplica).map_err(|e| e.to_string())?;
    for row in &replica {
        let lb = lower_bound(row.n).unwrap().0;
        let ub = upper_bound(row.n).unwrap().0;
        ensure(lb <= ub, || format!("n={}: lb {lb} > ub {ub}", row.n))?;
        ensure(ub <= row.upper, || format!("n={}: DP ub {ub} > replica {}", row.n, row.upper))?;
    }
    let ck = upper_bound_ck(2, 4, &BigUint::from(7u32));
    ensure(ck == BigUint::from(119u32) && replica[7].upper == ck, || format!("ck(2,4,7) = {ck}"))?;
    for n in 1..=12 {
        let f = materialize_lower_witness(n).map_err(|e| e.to_string())?;
        let claimed = lower_bound(n).unwrap().0;
        ensure(f.is_union_free() && BigUint::from(f.len()) == claimed, || {
            format!("n={n}: witness size {} vs claimed {claimed}", f.len())
        })?;
    }
    let (l7, l9) = (materialize_lower_witness(7).unwrap(), materialize_lower_witness(9).unwrap());
    ensure(l7.len() == 42 && l9.len() == 144, || format!("odd witnesses {} and {}", l7.len(), l9.len()))?;
    Ok("lb<=ub and DP<=replica for n<=30; ck(2,4,7)=119; witnesses to n=12 verified (42 at 7, 144 at 9)".into())
}

fn approximation_accuracy() -> Verdict {
    let mut worst_stirling = 0f64;
    for k in 20..=60 {
        for j in 5..=k - 5 {
            worst_stirling = worst_stirling.max(stirling_report(k, j).unwrap().rel_error);
        }
    }
    let mut central_misses = Vec::new();
    let mut worst_central = 0f64;
    for n in 20..=60 {
        let e = central_report(n).unwrap().rel_error;
        worst_central = worst_central.max(e);
        if e >= 0.02 {
            central_misses.push(format!("{n}:{:.2}%", e * 100.0));
        }
    }
    let mut dominance_range = (f64::INFINITY, 0f64);
    for n in 10..=40 {
        let (exact, est) = dominance_ratio(n).unwrap();
        let q = exact / est;
        dominance_range = (dominance_range.0.min(q), dominance_range.1.max(q));
    }
    let summary = format!(
        "stirling worst {:.2}%; central worst {:.2}%; dominance quotient in [{:.2}, {:.2}]",
        worst_stirling * 100.0,
        worst_central * 100.0,
        dominance_range.0,
        dominance_range.1
    );
    ensure(worst_stirling < 0.02, || format!("{summary}; stirling exceeds 2%"))?;
    ensure(dominance_range.0 >= 0.25 && dominance_range.1 <= 4.0, || format!("{summary}; dominance off"))?;
    ensure(central_misses.is_empty(), || {
        format!("{summary}; central exceeds 2% at n = {}", central_misses.join(" "))
    })?;
    Ok(summary)
}

fn filibuster_figure() -> Verdict {
    let e = filibuster_duration(30, 1.0).map_err(|e| e.to_string())?;
    ensure(e.amendments == BigUint::from(155120974u64), || format!("amendments {}", e.amendments))?;
    ensure((290.0..=300.0).contains(&e.years), || format!("{:.2} years", e.years))?;
    Ok(format!("{} minutes = {:.1} years", e.amendments, e.years))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("exact small-n values", exact_small_values),
        ("bounds table replication", table_replication),
        ("construction sizes", construction_sizes),
        ("union-free and maximality checks", family_checks),
        ("property suites", property_suites),
        ("bound consistency", bound_consistency),
        ("approximation accuracy", approximation_accuracy),
        ("filibuster figure", filibuster_figure),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
