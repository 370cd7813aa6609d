//! Floating-point evaluation of the Stirling-type estimates, computed in log
//! space exactly as displayed and compared against exact binomials.

use std::f64::consts::{LN_2, PI};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::binom::binomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxReport {
    pub n: u32,
    pub exact: BigUint,
    pub approx: f64,
    pub rel_error: f64,
}

impl ApproxReport {
    fn new(n: u32, exact: BigUint, approx: f64) -> Self {
        let e = exact.to_f64().expect("finite");
        ApproxReport { n, exact, approx, rel_error: (approx - e).abs() / e }
    }
}

fn xlnx_half(x: f64) -> f64 {
    (x + 0.5) * x.ln()
}

/// `(1/√(2π)) · k^{k+1/2} / (j^{j+1/2} (k−j)^{k−j+1/2})`, for `0 < j < k`.
pub fn stirling_binom(k: u32, j: u32) -> Result<f64> {
    if j == 0 || j >= k {
        return Err(Error::Domain(format!("stirling_binom needs 0 < j < k, got k={k}, j={j}")));
    }
    let (k, j) = (k as f64, j as f64);
    let ln = -0.5 * (2.0 * PI).ln() + xlnx_half(k) - xlnx_half(j) - xlnx_half(k - j);
    Ok(ln.exp())
}

/// `√(2/π) · 2ⁿ / √n`.
pub fn central_binom_approx(n: u32) -> f64 {
    let n = n as f64;
    (0.5 * (2.0 / PI).ln() + n * LN_2 - 0.5 * n.ln()).exp()
}

pub fn stirling_report(k: u32, j: u32) -> Result<ApproxReport> {
    Ok(ApproxReport::new(k, binomial(k as u64, j as u64), stirling_binom(k, j)?))
}

/// Compares against `C(n, ⌈n/2⌉)`.
pub fn central_report(n: u32) -> Result<ApproxReport> {
    if n == 0 {
        return Err(Error::Domain("central_binom_approx needs n >= 1".into()));
    }
    Ok(ApproxReport::new(n, binomial(n as u64, n.div_ceil(2) as u64), central_binom_approx(n)))
}

/// First chain term over the second, `C(n,⌈n/2⌉) / C(m−1,⌈(m−1)/2⌉)` with
/// `m = ⌈n/2⌉`, alongside the closed-form estimate `2^{(n−1)/2}`.
pub fn dominance_ratio(n: u32) -> Result<(f64, f64)> {
    if n < 4 {
        return Err(Error::Domain(format!("dominance_ratio needs n >= 4, got {n}")));
    }
    let m = n.div_ceil(2) as u64;
    let first = binomial(n as u64, m).to_f64().expect("finite");
    let second = binomial(m - 1, (m - 1).div_ceil(2)).to_f64().expect("finite");
    Ok((first / second, ((n as f64 - 1.0) / 2.0 * LN_2).exp()))
}

/// `(1/2π) · 2^{n+2} / √(t(n−t))`, the size heuristic for a thickness-`t`
/// cushion.
pub fn cushion_split_estimate(n: u32, t: u32) -> Result<f64> {
    if t == 0 || t >= n {
        return Err(Error::Domain(format!("cushion_split_estimate needs 1 <= t <= n-1, got n={n}, t={t}")));
    }
    let (nf, tf) = (n as f64, t as f64);
    let ln = -(2.0 * PI).ln() + (nf + 2.0) * LN_2 - 0.5 * (tf * (nf - tf)).ln();
    Ok(ln.exp())
}
