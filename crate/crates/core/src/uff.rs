//! The `.uff` text format.
//!
//! ```text
//! # optional comments
//! n=3
//! {1}
//! {2,3}
//! ```
//!
//! One subset per line with strictly ascending elements, `{}` for the empty
//! set. Blank lines are ignored. Serialization always emits canonical order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::{check_ground, SubsetMask};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_subset(body: &str, n: u32, line: usize) -> Result<SubsetMask> {
    let inner = body
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| parse_err(line, format!("expected `{{...}}`, found `{body}`")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(SubsetMask::EMPTY);
    }
    let mut bits = 0u64;
    let mut prev = 0u32;
    for tok in inner.split(',') {
        let tok = tok.trim();
        let e: u32 = tok
            .parse()
            .map_err(|_| parse_err(line, format!("bad element `{tok}`")))?;
        if e == 0 {
            return Err(parse_err(line, "elements start at 1"));
        }
        if e > n {
            return Err(parse_err(line, format!("element {e} exceeds n={n}")));
        }
        if e <= prev {
            return Err(parse_err(line, "elements must be strictly ascending"));
        }
        prev = e;
        bits |= 1 << (e - 1);
    }
    Ok(SubsetMask::from_bits(bits))
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut n: Option<u32> = None;
    let mut members = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        match n {
            None => {
                let v = body
                    .strip_prefix("n=")
                    .ok_or_else(|| parse_err(line, format!("expected `n=<int>`, found `{body}`")))?;
                let v: u32 = v
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad ground size `{v}`")))?;
                check_ground(v).map_err(|e| parse_err(line, e.to_string()))?;
                n = Some(v);
            }
            Some(n) => {
                let s = parse_subset(body, n, line)?;
                members.push((s, line));
            }
        }
    }
    let n = n.ok_or_else(|| parse_err(text.lines().count().max(1), "missing `n=<int>` header"))?;
    let mut sorted: Vec<(SubsetMask, usize)> = members;
    sorted.sort_by_key(|&(s, line)| (s, line));
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(parse_err(w[1].1, format!("duplicate subset {}", w[1].0)));
    }
    Family::new(n, sorted.into_iter().map(|(s, _)| s))
}

pub fn serialize_family(family: &Family) -> String {
    let mut out = String::with_capacity(8 + family.len() * 8);
    let _ = writeln!(out, "n={}", family.n());
    for m in family.members() {
        let _ = writeln!(out, "{m}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_members() {
        let f = parse_family("n=3\n{1}\n{2,3}").unwrap();
        assert_eq!(f, Family::from_sets(3, &[&[1u32][..], &[2, 3]]).unwrap());
        let e = parse_family("n=3\n{}").unwrap();
        assert_eq!(e.members(), &[SubsetMask::EMPTY]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let f = parse_family("# q(2)\n\nn=2\n# layer\n{ 2 }\n{1}\n").unwrap();
        assert_eq!(serialize_family(&f), "n=2\n{1}\n{2}\n");
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_family("n=2\n{3}").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, msg: "element 3 exceeds n=2".into() });
        assert_eq!(e.to_string(), "line 2: element 3 exceeds n=2");
        assert!(matches!(parse_family("n=3\n{1}\n{2}\n{1}"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_family("{1}"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_family("n=3\n{2,1}"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_family("n=3\n1,2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_family("n=3\n{a}"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_family("n=0"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_family(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn serialization_is_canonical() {
        let f = parse_family("n=4\n{1,2}\n{3}\n{}\n{4}").unwrap();
        assert_eq!(serialize_family(&f), "n=4\n{}\n{3}\n{4}\n{1,2}\n");
    }
}
