//! Python bindings: Hopf algebras of finite groups, partial coactions and
//! actions built from example specs, Morita contexts, and the report runner.
//!
//! Scalars cross the boundary as strings such as `"1/2"`.

use std::path::Path;

use parhopf::action::PartialAction;
use parhopf::coaction::PartialCoaction;
use parhopf::group::{Cyclic, Symmetric3, TableGroup};
use parhopf::hopf::{modular_element, verify_hopf, verify_modular, FiniteHopf, FunctionAlgebra, GroupAlgebra};
use parhopf::linalg::Vector;
use parhopf::morita::{check_galois_equivalence, coinvariants, galois_map, MoritaContext};
use parhopf::report::{Check, Scope, Status};
use parhopf::runner::{action_dual_of, action_of, coaction_of, run_file, run_spec, Command, RunOptions};
use parhopf::scalar::{Field, Scalar};
use parhopf::spec::{ExampleSpec, Overrides};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_vec(field: Field, v: &[String], n: usize) -> PyResult<Vector> {
    if v.len() != n {
        return Err(err(format!("expected {n} coefficients, got {}", v.len())));
    }
    v.iter().map(|s| field.parse_scalar(s).map_err(err)).collect()
}

fn show(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

type CheckRow = (String, String, String, Option<String>);

fn rows(checks: &[Check]) -> Vec<CheckRow> {
    checks
        .iter()
        .map(|c| {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::SampleVerified => "sample-verified",
            };
            (c.name.clone(), c.anchor.clone(), status.to_string(), c.witness.clone())
        })
        .collect()
}

fn command(name: &str) -> PyResult<Command> {
    Command::parse(name).ok_or_else(|| err(format!("unknown command `{name}`")))
}

/// A finite-dimensional multiplier Hopf algebra `A_G` or `𝕜G`.
#[pyclass(module = "parhopf_py", frozen)]
struct Hopf {
    inner: FiniteHopf,
}

#[pymethods]
impl Hopf {
    /// `group` is `"cyclic:<n>"` or `"s3"`; `kind` is `"function-algebra"`
    /// or `"group-algebra"`.
    #[new]
    #[pyo3(signature = (group, kind = "function-algebra", field = "rational"))]
    fn new(group: &str, kind: &str, field: &str) -> PyResult<Hopf> {
        let field = Field::parse(field).map_err(err)?;
        let g = match group.split_once(':') {
            Some(("cyclic", n)) => {
                let n: u32 = n.parse().map_err(err)?;
                if n == 0 {
                    return Err(err("cyclic group of order 0"));
                }
                TableGroup::of(&Cyclic::new(n))
            }
            None if group == "s3" => TableGroup::of(&Symmetric3),
            _ => None,
        }
        .ok_or_else(|| err(format!("unknown group `{group}`")))?;
        let inner = match kind {
            "function-algebra" => FiniteHopf::materialize(&FunctionAlgebra::new(g, field)),
            "group-algebra" => FiniteHopf::materialize(&GroupAlgebra::new(g, field)),
            _ => return Err(err(format!("unknown kind `{kind}`"))),
        }
        .map_err(err)?;
        Ok(Hopf { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn mul(&self, a: Vec<String>, b: Vec<String>) -> PyResult<Vec<String>> {
        let f = self.inner.field_of();
        let n = self.inner.dim();
        Ok(show(&self.inner.mul(&parse_vec(f, &a, n)?, &parse_vec(f, &b, n)?)))
    }

    /// `Δ(a)` as coefficients on `e_i⊗e_j`, index `i·n + j`.
    fn coproduct(&self, a: Vec<String>) -> PyResult<Vec<String>> {
        let a = parse_vec(self.inner.field_of(), &a, self.inner.dim())?;
        Ok(show(&self.inner.coproduct(&a)))
    }

    fn counit(&self, a: Vec<String>) -> PyResult<String> {
        let a = parse_vec(self.inner.field_of(), &a, self.inner.dim())?;
        Ok(self.inner.counit(&a).to_string())
    }

    fn antipode(&self, a: Vec<String>) -> PyResult<Vec<String>> {
        let a = parse_vec(self.inner.field_of(), &a, self.inner.dim())?;
        Ok(show(&self.inner.antipode(&a)))
    }

    /// Values of the left integral on the basis.
    fn integral(&self) -> Option<Vec<String>> {
        self.inner.integral_vector().map(|v| show(v))
    }

    fn modular_element(&self) -> PyResult<Vec<String>> {
        Ok(show(&modular_element(&self.inner).map_err(err)?.delta))
    }

    fn format(&self, a: Vec<String>) -> PyResult<String> {
        let a = parse_vec(self.inner.field_of(), &a, self.inner.dim())?;
        Ok(self.inner.format(&a))
    }

    /// Axioms, integral and modular element checks as
    /// `(name, anchor, status, witness)`.
    fn verify(&self) -> PyResult<Vec<CheckRow>> {
        let h = &self.inner;
        let basis = (0..h.dim()).collect::<Vec<_>>();
        let mut checks = verify_hopf(h, &basis, &Scope::Exhaustive);
        checks.extend(verify_modular(h, &modular_element(h).map_err(err)?));
        Ok(rows(&checks))
    }
}

/// A partial coaction `(R, ρ, E)` built from an example spec.
#[pyclass(module = "parhopf_py", frozen)]
struct Coaction {
    inner: PartialCoaction,
}

#[pymethods]
impl Coaction {
    /// From the `[coaction]` table of a spec file.
    #[staticmethod]
    fn from_spec(path: &str) -> PyResult<Coaction> {
        let spec = ExampleSpec::load(Path::new(path)).map_err(err)?;
        Ok(Coaction { inner: coaction_of(&spec).map_err(err)? })
    }

    /// The coaction dual to the `[action]` table of a spec file.
    #[staticmethod]
    fn dual_of_action(path: &str) -> PyResult<Coaction> {
        let spec = ExampleSpec::load(Path::new(path)).map_err(err)?;
        Ok(Coaction { inner: action_dual_of(&spec).map_err(err)?.coaction })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn dim_r(&self) -> usize {
        self.inner.dim_r()
    }

    #[getter]
    fn dim_a(&self) -> usize {
        self.inner.dim_a()
    }

    #[getter]
    fn symmetric(&self) -> bool {
        self.inner.symmetric
    }

    /// Whether `E = 1⊗1`.
    fn is_global(&self) -> bool {
        self.inner.e().is_identity()
    }

    /// `ρ(x)` as coefficients on `r_i⊗a_k`, index `i·dim A + k`.
    fn rho(&self, x: Vec<String>) -> PyResult<Vec<String>> {
        let x = parse_vec(self.inner.hopf.field_of(), &x, self.inner.dim_r())?;
        Ok(show(&self.inner.rho(&x)))
    }

    /// `E(u)` for `u ∈ R⊗A`.
    fn e(&self, u: Vec<String>) -> PyResult<Vec<String>> {
        let u = parse_vec(self.inner.hopf.field_of(), &u, self.inner.dim_r() * self.inner.dim_a())?;
        Ok(show(&self.inner.e().apply_left(&u)))
    }

    fn verify(&self) -> Vec<CheckRow> {
        let mut checks = self.inner.verify();
        if self.inner.symmetric {
            checks.extend(self.inner.verify_extension());
        }
        rows(&checks)
    }

    /// Dimension of `R^{coA}`; fails if the two characterizations differ.
    fn coinvariants_dim(&self) -> PyResult<usize> {
        let co = coinvariants(&self.inner).map_err(err)?;
        if !co.agree() {
            return Err(err("coinvariant characterizations disagree"));
        }
        Ok(co.dim())
    }

    fn morita(&self) -> PyResult<Morita> {
        Ok(Morita { inner: MoritaContext::build(&self.inner).map_err(err)? })
    }
}

/// A partial action `(R, ·, 𝔢)` built from an example spec.
#[pyclass(module = "parhopf_py", frozen)]
struct Action {
    inner: PartialAction,
}

#[pymethods]
impl Action {
    #[staticmethod]
    fn from_spec(path: &str) -> PyResult<Action> {
        let spec = ExampleSpec::load(Path::new(path)).map_err(err)?;
        Ok(Action { inner: action_of(&spec).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn dim_r(&self) -> usize {
        self.inner.dim_r()
    }

    #[getter]
    fn dim_a(&self) -> usize {
        self.inner.dim_a()
    }

    fn is_global(&self) -> bool {
        self.inner.is_global()
    }

    /// `a·x`.
    fn act(&self, a: Vec<String>, x: Vec<String>) -> PyResult<Vec<String>> {
        let f = self.inner.hopf.field_of();
        let a = parse_vec(f, &a, self.inner.dim_a())?;
        let x = parse_vec(f, &x, self.inner.dim_r())?;
        Ok(show(&self.inner.act(&a, &x)))
    }

    /// `𝔢(a)x`.
    fn e(&self, a: Vec<String>, x: Vec<String>) -> PyResult<Vec<String>> {
        let f = self.inner.hopf.field_of();
        let a = parse_vec(f, &a, self.inner.dim_a())?;
        let x = parse_vec(f, &x, self.inner.dim_r())?;
        Ok(show(&self.inner.e_of(&a).apply_left(&x)))
    }

    fn verify(&self) -> Vec<CheckRow> {
        let mut checks = self.inner.verify();
        checks.extend(self.inner.verify_ar());
        rows(&checks)
    }
}

/// The Morita context of a restrict symmetric partial coaction.
#[pyclass(module = "parhopf_py", frozen)]
struct Morita {
    inner: MoritaContext,
}

#[pymethods]
impl Morita {
    /// `(dim R, dim Â·R, dim (Â·R)#Â, dim B)`.
    fn dims(&self) -> (usize, usize, usize, usize) {
        let c = &self.inner;
        (c.dim_r(), c.dim_p(), c.dim_s(), c.dim_b())
    }

    /// `(x, y) ∈ R` for `x, y ∈ Â·R` given in coordinates of `R`.
    fn pairing(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let f = self.inner.coaction.hopf.field_of();
        let r = self.inner.dim_r();
        let (x, y) = (parse_vec(f, &x, r)?, parse_vec(f, &y, r)?);
        if !self.inner.space.contains(&x) || !self.inner.space.contains(&y) {
            return Err(err("arguments must lie in Â·R"));
        }
        Ok(show(&self.inner.pairing(&x, &y)))
    }

    fn verify(&self) -> Vec<CheckRow> {
        rows(&self.inner.verify())
    }

    /// `"bijective"`, `"surjective-only"` or `"neither"`.
    fn galois_verdict(&self) -> PyResult<String> {
        Ok(galois_map(&self.inner).map_err(err)?.verdict.as_str().to_string())
    }

    /// The independently computed predicates
    /// `(β surjective, [ , ] surjective, β bijective)`.
    fn galois_predicates(&self) -> PyResult<(bool, bool, bool)> {
        let eq = check_galois_equivalence(&self.inner).map_err(err)?;
        Ok((eq.beta_surjective, eq.bracket_surjective, eq.beta_bijective))
    }
}

/// Runs a subcommand on a spec file; returns `(exit code, report JSON)`.
#[pyfunction]
#[pyo3(signature = (path, command = "all", field = None, window = None, jobs = None))]
fn run(path: &str, command: &str, field: Option<String>, window: Option<u32>, jobs: Option<usize>) -> PyResult<(i32, String)> {
    let opts = RunOptions { overrides: Overrides { field, window }, jobs };
    let o = run_file(Path::new(path), self::command(command)?, &opts);
    Ok((o.exit.code(), o.report.to_json()))
}

/// Like `run`, for spec text.
#[pyfunction]
#[pyo3(signature = (text, command = "all"))]
fn run_text(text: &str, command: &str) -> PyResult<(i32, String)> {
    let spec = ExampleSpec::parse(text).map_err(err)?;
    let o = run_spec(&spec, self::command(command)?, None);
    Ok((o.exit.code(), o.report.to_json()))
}

/// Fingerprint of a spec file.
#[pyfunction]
fn fingerprint(path: &str) -> PyResult<String> {
    Ok(ExampleSpec::load(Path::new(path)).map_err(err)?.fingerprint())
}

#[pymodule]
fn parhopf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hopf>()?;
    m.add_class::<Coaction>()?;
    m.add_class::<Action>()?;
    m.add_class::<Morita>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(run_text, m)?)?;
    m.add_function(wrap_pyfunction!(fingerprint, m)?)?;
    Ok(())
}
