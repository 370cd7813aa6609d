use std::time::Duration;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use union_free::approx;
use union_free::bounds::{self, TableMode};
use union_free::constructors::{self, spec_json, ChainSpec};
use union_free::exact::{self, SearchConfig};
use union_free::{Maximality, Permutation, SubsetMask};

fn value_err(e: union_free::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_mask(set: Vec<u32>) -> PyResult<SubsetMask> {
    SubsetMask::from_elements(set).map_err(value_err)
}

fn to_list(s: SubsetMask) -> Vec<u32> {
    s.elements().collect()
}

/// A family of subsets of `[n]`, kept in canonical order.
#[pyclass(name = "Family", module = "unionfree", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFamily {
    inner: union_free::Family,
}

impl From<union_free::Family> for PyFamily {
    fn from(inner: union_free::Family) -> Self {
        PyFamily { inner }
    }
}

#[pymethods]
impl PyFamily {
    #[new]
    fn new(n: u32, sets: Vec<Vec<u32>>) -> PyResult<Self> {
        let masks = sets.into_iter().map(to_mask).collect::<PyResult<Vec<_>>>()?;
        Ok(union_free::Family::new(n, masks).map_err(value_err)?.into())
    }

    #[staticmethod]
    fn from_uff(text: &str) -> PyResult<Self> {
        Ok(union_free::parse_family(text).map_err(value_err)?.into())
    }

    fn to_uff(&self) -> String {
        union_free::serialize_family(&self.inner)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn members(&self) -> Vec<Vec<u32>> {
        self.inner.members().iter().map(|&m| to_list(m)).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Family(n={}, {:?})", self.inner.n(), self.inner)
    }

    fn is_union_free(&self) -> bool {
        self.inner.is_union_free()
    }

    /// `(offending, evidence)` when some member is a union of others.
    fn union_free_witness(&self) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
        self.inner
            .union_free_witness()
            .map(|w| (to_list(w.offending), w.evidence.into_iter().map(to_list).collect()))
    }

    fn is_antichain(&self) -> bool {
        self.inner.is_antichain()
    }

    /// Exact LYM sum as `(numerator, denominator)`.
    fn lym_sum(&self) -> (BigInt, BigInt) {
        let r = self.inner.lym_sum();
        (r.numer().clone(), r.denom().clone())
    }

    fn is_superfluous(&self, set: Vec<u32>) -> PyResult<bool> {
        self.inner.is_superfluous(to_mask(set)?).map_err(value_err)
    }

    fn can_augment(&self, set: Vec<u32>, t: u32) -> PyResult<bool> {
        self.inner.can_augment(to_mask(set)?, t).map_err(value_err)
    }

    /// `None` if maximal, otherwise an addable set.
    fn addable_set(&self) -> PyResult<Option<Vec<u32>>> {
        Ok(match self.inner.maximality().map_err(value_err)? {
            Maximality::Maximal => None,
            Maximality::Extendable(s) => Some(to_list(s)),
        })
    }

    fn is_maximal_union_free(&self) -> PyResult<bool> {
        self.inner.is_maximal_union_free().map_err(value_err)
    }

    fn relabel(&self, perm: Vec<u32>) -> PyResult<Self> {
        let p = Permutation::new(perm).map_err(value_err)?;
        Ok(self.inner.relabel(&p).map_err(value_err)?.into())
    }

    fn oplus(&self, other: &PyFamily) -> PyResult<Self> {
        Ok(self.inner.oplus(&other.inner).map_err(value_err)?.into())
    }
}

#[pyfunction]
fn chain_family(n: u32, levels: Vec<u32>) -> PyResult<PyFamily> {
    let spec = ChainSpec::new(n, levels).map_err(value_err)?;
    Ok(constructors::chain_family(&spec).into())
}

#[pyfunction]
fn canonical_chain(n: u32) -> PyResult<PyFamily> {
    let spec = constructors::canonical_chain(n).map_err(value_err)?;
    Ok(constructors::chain_family(&spec).into())
}

#[pyfunction]
fn q_size(n: u32) -> BigUint {
    constructors::q_size(n)
}

#[pyfunction]
fn best_chain(n: u32) -> PyResult<(Vec<u32>, BigUint)> {
    let (spec, size) = constructors::best_chain(n).map_err(value_err)?;
    Ok((spec.levels().to_vec(), size))
}

#[pyfunction]
fn cushion_family(spec_json: &str) -> PyResult<PyFamily> {
    let spec = spec_json::parse_cushion_spec(spec_json).map_err(value_err)?;
    Ok(constructors::cushion_family(&spec).map_err(value_err)?.into())
}

#[pyfunction]
fn layered_compose(spec_json: &str) -> PyResult<PyFamily> {
    let spec = spec_json::parse_layered_spec(spec_json).map_err(value_err)?;
    Ok(constructors::layered_compose(&spec).map_err(value_err)?.into())
}

#[pyfunction]
fn lower_bound(n: u32) -> PyResult<(BigUint, String)> {
    let (v, w) = bounds::lower_bound(n).map_err(value_err)?;
    Ok((v, w.to_string()))
}

#[pyfunction]
fn upper_bound(n: u32) -> PyResult<(BigUint, String)> {
    let (v, p) = bounds::upper_bound(n).map_err(value_err)?;
    Ok((v, p.to_string()))
}

/// `(n, lb, lb_witness, ub, ub_split, ratio)`
type TableRow = (u32, BigUint, String, BigUint, String, f64);

#[pyfunction]
#[pyo3(signature = (n_max, mode = "best-known"))]
fn bounds_table(n_max: u32, mode: &str) -> PyResult<Vec<TableRow>> {
    let mode: TableMode = mode.parse().map_err(value_err)?;
    let rows = bounds::bounds_table(n_max, mode).map_err(value_err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.n, r.lower, r.lower_witness, r.upper, r.upper_split.to_string(), r.ratio.as_f64()))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n_max, mode = "best-known"))]
fn bounds_csv(n_max: u32, mode: &str) -> PyResult<String> {
    let mode: TableMode = mode.parse().map_err(value_err)?;
    Ok(bounds::table_to_csv(&bounds::bounds_table(n_max, mode).map_err(value_err)?))
}

#[pyfunction]
#[pyo3(signature = (n, minutes = 1.0))]
fn filibuster_years(n: u32, minutes: f64) -> PyResult<f64> {
    Ok(bounds::filibuster_duration(n, minutes).map_err(value_err)?.years)
}

/// Returns `(status, best_size, witness, explored)`.
#[pyfunction]
#[pyo3(signature = (n, time_limit = None, threads = None, symmetry = false))]
fn max_union_free(
    py: Python<'_>,
    n: u32,
    time_limit: Option<f64>,
    threads: Option<usize>,
    symmetry: bool,
) -> PyResult<(String, usize, PyFamily, u64)> {
    let time_limit = match time_limit {
        Some(s) if !(s.is_finite() && s > 0.0) => {
            return Err(PyValueError::new_err("time_limit must be a positive number of seconds"))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let config = SearchConfig { n, time_limit, thread_hint: threads, symmetry };
    let r = py.detach(|| exact::max_union_free(&config)).map_err(value_err)?;
    Ok((r.status.to_string(), r.best_size, r.witness.into(), r.explored))
}

#[pyfunction]
fn exhaustive_bound_check(n: u32, bound: usize) -> PyResult<bool> {
    exact::exhaustive_bound_check(n, bound).map_err(value_err)
}

#[pyfunction]
fn stirling_binom(k: u32, j: u32) -> PyResult<f64> {
    approx::stirling_binom(k, j).map_err(value_err)
}

#[pyfunction]
fn central_binom_approx(n: u32) -> f64 {
    approx::central_binom_approx(n)
}

#[pyfunction]
fn dominance_ratio(n: u32) -> PyResult<(f64, f64)> {
    approx::dominance_ratio(n).map_err(value_err)
}

#[pyfunction]
fn cushion_split_estimate(n: u32, t: u32) -> PyResult<f64> {
    approx::cushion_split_estimate(n, t).map_err(value_err)
}

#[pymodule]
fn unionfree(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(chain_family, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_chain, m)?)?;
    m.add_function(wrap_pyfunction!(q_size, m)?)?;
    m.add_function(wrap_pyfunction!(best_chain, m)?)?;
    m.add_function(wrap_pyfunction!(cushion_family, m)?)?;
    m.add_function(wrap_pyfunction!(layered_compose, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_table, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_csv, m)?)?;
    m.add_function(wrap_pyfunction!(filibuster_years, m)?)?;
    m.add_function(wrap_pyfunction!(max_union_free, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_binom, m)?)?;
    m.add_function(wrap_pyfunction!(central_binom_approx, m)?)?;
    m.add_function(wrap_pyfunction!(dominance_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(cushion_split_estimate, m)?)?;
    Ok(())
}
