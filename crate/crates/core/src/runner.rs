//! Runs verification suites for example specifications and assembles
//! reports.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::action::{
    function_algebra_on_group_algebra, group_algebra_on_function_algebra, subgroup_average, PartialAction,
};
use crate::algebra::{FiniteAlgebra, Multiplier};
use crate::coaction::PartialCoaction;
use crate::duality::{dualize_action, dualize_coaction, roundtrip, ActionDual, DualizeOptions, PsiChoice};
use crate::error::{Error, Result};
use crate::group::{Cyclic, Group, Integers, Symmetric3, TableGroup};
use crate::hopf::{
    modular_element, verify_dual_identities, verify_hopf, verify_modular, verify_theta, verify_trivial_modular,
    DualHopf, FiniteHopf, FunctionAlgebra, GroupAlgebra, HopfInstance,
};
use crate::linalg::{self, unit_vector, zeros, Mat, Vector};
use crate::morita::{check_galois_equivalence, coinvariants, galois_map, invariants, MoritaContext};
use crate::report::{Check, Report, Scope, Section};
use crate::scalar::{Field, Scalar};
use crate::spec::{
    ActionRecipe, AlgebraSpec, CoactionRecipe, ElementSpec, ExampleSpec, GroupSpec, HopfKind, Label, Overrides,
    WitnessSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    VerifyMhopf,
    VerifyCoaction,
    VerifyAction,
    Dualize,
    Morita,
    Galois,
    All,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::VerifyMhopf,
        Command::VerifyCoaction,
        Command::VerifyAction,
        Command::Dualize,
        Command::Morita,
        Command::Galois,
        Command::All,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyMhopf => "verify-mhopf",
            Command::VerifyCoaction => "verify-coaction",
            Command::VerifyAction => "verify-action",
            Command::Dualize => "dualize",
            Command::Morita => "morita",
            Command::Galois => "galois",
            Command::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Failed = 1,
    Parse = 2,
    Refused = 3,
    CrossCheck = 4,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn severity(self) -> u8 {
        match self {
            Exit::Ok => 0,
            Exit::Failed => 1,
            Exit::Refused => 2,
            Exit::CrossCheck => 3,
            Exit::Parse => 4,
        }
    }

    /// The more severe of two outcomes; parse errors dominate.
    pub fn worst(self, other: Exit) -> Exit {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }

    fn of_error(e: &Error) -> Exit {
        match e {
            Error::Spec(_) | Error::Unsupported(_) => Exit::Parse,
            Error::Hypothesis { .. } => Exit::Refused,
            Error::CrossCheck(_) | Error::Linalg(_) | Error::Algebra(_) | Error::Scalar(_) => Exit::CrossCheck,
        }
    }

    fn of_checks<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Exit {
        checks.into_iter().filter(|c| !c.passed()).fold(Exit::Ok, |acc, c| {
            let cross = c.anchor.contains("cross-check") || c.anchor == "duality.action.psi-side";
            acc.worst(if cross { Exit::CrossCheck } else { Exit::Failed })
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: Report,
    pub exit: Exit,
}

/// Options shared by every run.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub overrides: Overrides,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

pub fn run_file(path: &Path, command: Command, opts: &RunOptions) -> RunOutcome {
    match ExampleSpec::load(path).and_then(|s| s.with_overrides(&opts.overrides)) {
        Ok(spec) => run_spec(&spec, command, opts.jobs),
        Err(e) => {
            let mut s = Section::new("specification");
            s.value("error", &e);
            let field = opts.overrides.field.clone().unwrap_or_default();
            finish(Report::new(&path.display().to_string(), "", &field, command.name(), vec![s]), Exit::Parse)
        }
    }
}

/// Runs every `.toml` spec of `dir` in file-name order.
pub fn run_dir(dir: &Path, command: Command, opts: &RunOptions) -> Result<Vec<(PathBuf, RunOutcome)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Spec(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    Ok(paths.into_iter().map(|p| {
        let out = run_file(&p, command, opts);
        (p, out)
    }).collect())
}

pub fn run_spec(spec: &ExampleSpec, command: Command, jobs: Option<usize>) -> RunOutcome {
    let go = || run_inner(spec, command);
    match jobs.map(|n| rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build()) {
        Some(Ok(pool)) => pool.install(go),
        _ => go(),
    }
}

/// The coaction described by the `[coaction]` table of `spec`.
pub fn coaction_of(spec: &ExampleSpec) -> Result<PartialCoaction> {
    Instance::new(spec)?.build_coaction()
}

/// The action described by the `[action]` table of `spec`.
pub fn action_of(spec: &ExampleSpec) -> Result<PartialAction> {
    Instance::new(spec)?.build_action()
}

/// The action of `spec` dualized with the options of `[action.dual]`.
pub fn action_dual_of(spec: &ExampleSpec) -> Result<ActionDual> {
    let inst = Instance::new(spec)?;
    inst.action_dual().cloned()
}

fn finish(mut report: Report, exit: Exit) -> RunOutcome {
    report.exit_code = exit.code();
    RunOutcome { report, exit }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stage {
    Hopf,
    Coaction,
    Action,
    Dualize,
    Morita,
    Galois,
    MoritaGalois,
}

fn run_inner(spec: &ExampleSpec, command: Command) -> RunOutcome {
    let field_label = spec.field.clone();
    let fail = |e: Error| {
        let mut s = Section::new("specification");
        s.value("error", &e);
        let exit = Exit::of_error(&e);
        finish(Report::new(&spec.name, &spec.fingerprint(), &field_label, command.name(), vec![s]), exit)
    };
    let inst = match Instance::new(spec) {
        Ok(i) => i,
        Err(e) => return fail(e),
    };
    let stages = match inst.stages(command) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let results: Vec<(Vec<Section>, Exit)> = stages.par_iter().map(|&s| inst.run_stage(s)).collect();
    let exit = results.iter().fold(Exit::Ok, |acc, (_, e)| acc.worst(*e));
    let sections = results.into_iter().flat_map(|(s, _)| s).collect();
    finish(Report::new(&spec.name, &spec.fingerprint(), &field_label, command.name(), sections), exit)
}

struct Instance<'a> {
    spec: &'a ExampleSpec,
    field: Field,
    group: Option<TableGroup>,
    hopf: Option<FiniteHopf>,
    coaction: OnceLock<Result<PartialCoaction>>,
    action: OnceLock<Result<PartialAction>>,
    action_dual: OnceLock<Result<ActionDual>>,
}

impl<'a> Instance<'a> {
    fn new(spec: &'a ExampleSpec) -> Result<Instance<'a>> {
        let field = spec.field()?;
        let group = match spec.group {
            GroupSpec::Cyclic { order } => TableGroup::of(&Cyclic::new(order)),
            GroupSpec::Symmetric { .. } => TableGroup::of(&Symmetric3),
            GroupSpec::Integers => None,
        };
        let mut inst = Instance {
            spec,
            field,
            group,
            hopf: None,
            coaction: OnceLock::new(),
            action: OnceLock::new(),
            action_dual: OnceLock::new(),
        };
        if inst.group.is_some() {
            inst.hopf = Some(inst.hopf_of(spec.hopf.kind)?);
        }
        Ok(inst)
    }

    fn stages(&self, command: Command) -> Result<Vec<Stage>> {
        let spec = self.spec;
        let finite = |s: Stage| if self.group.is_some() { Ok(s) } else { Err(Error::Spec("needs a finite group".into())) };
        let has_dual_source = spec.coaction.as_ref().is_some_and(|c| c.symmetric) || spec.action.is_some();
        let morita_source = spec.coaction.is_some() || spec.action.is_some();
        let missing = |what: &str| Error::Spec(format!("`{}` needs a [{what}] table", command.name()));
        Ok(match command {
            Command::VerifyMhopf => vec![Stage::Hopf],
            Command::VerifyCoaction if spec.coaction.is_some() => vec![Stage::Coaction],
            Command::VerifyCoaction => return Err(missing("coaction")),
            Command::VerifyAction if spec.action.is_some() => vec![Stage::Action],
            Command::VerifyAction => return Err(missing("action")),
            Command::Dualize if has_dual_source => vec![finite(Stage::Dualize)?],
            Command::Dualize => return Err(missing("coaction] or [action")),
            Command::Morita if morita_source => vec![Stage::Morita],
            Command::Galois if morita_source => vec![Stage::Galois],
            Command::Morita | Command::Galois => return Err(missing("coaction] or [action")),
            Command::All => {
                let mut s = vec![Stage::Hopf];
                if spec.coaction.is_some() {
                    s.push(Stage::Coaction);
                }
                if spec.action.is_some() {
                    s.push(Stage::Action);
                }
                if has_dual_source {
                    s.push(Stage::Dualize);
                }
                if spec.coaction.as_ref().is_some_and(|c| c.restrict_witness.is_some()) {
                    s.push(Stage::MoritaGalois);
                }
                s
            }
        })
    }

    fn run_stage(&self, stage: Stage) -> (Vec<Section>, Exit) {
        let (title, result) = match stage {
            Stage::Hopf => ("multiplier Hopf algebra", self.stage_hopf()),
            Stage::Coaction => ("partial coaction", self.stage_coaction()),
            Stage::Action => ("partial action", self.stage_action()),
            Stage::Dualize => ("duality", self.stage_dualize()),
            Stage::Morita => ("Morita context", self.stage_morita(false)),
            Stage::Galois => ("Galois map", self.stage_morita(true).map(|mut s| s.split_off(1))),
            Stage::MoritaGalois => ("Morita context", self.stage_morita(true)),
        };
        match result {
            Ok(sections) => {
                let exit = Exit::of_checks(sections.iter().flat_map(|s| &s.checks));
                (sections, exit)
            }
            Err(e) => (vec![refusal(title, &e)], Exit::of_error(&e)),
        }
    }

    fn group(&self) -> Result<&TableGroup> {
        self.group.as_ref().ok_or_else(|| Error::Unsupported("infinite group".into()))
    }

    fn hopf(&self) -> Result<&FiniteHopf> {
        self.hopf.as_ref().ok_or_else(|| Error::Unsupported("infinite group".into()))
    }

    fn hopf_of(&self, kind: HopfKind) -> Result<FiniteHopf> {
        let g = self.group()?.clone();
        match kind {
            HopfKind::FunctionAlgebra => FiniteHopf::materialize(&FunctionAlgebra::new(g, self.field)),
            HopfKind::GroupAlgebra => FiniteHopf::materialize(&GroupAlgebra::new(g, self.field)),
        }
    }

    fn other_kind(&self) -> HopfKind {
        match self.spec.hopf.kind {
            HopfKind::FunctionAlgebra => HopfKind::GroupAlgebra,
            HopfKind::GroupAlgebra => HopfKind::FunctionAlgebra,
        }
    }

    fn indices(&self, labels: &[Label]) -> Result<Vec<usize>> {
        let g = self.group()?;
        let mut out: Vec<usize> = labels
            .iter()
            .map(|l| g.parse(&l.text()).ok_or_else(|| Error::Spec(format!("unknown group element `{}`", l.text()))))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn indicator(&self, idx: &[usize]) -> Result<Vector> {
        let n = self.group()?.order().expect("finite");
        Ok((0..n).map(|i| if idx.contains(&i) { self.field.one() } else { self.field.zero() }).collect())
    }

    /// The indicator of `N` in `A_G`, the average `(1/|N|)Σ n` in `𝕜G`.
    fn idempotent(&self, kind: HopfKind, labels: &[Label]) -> Result<Vector> {
        let idx = self.indices(labels)?;
        match kind {
            HopfKind::FunctionAlgebra => self.indicator(&idx),
            HopfKind::GroupAlgebra => subgroup_average(self.group()?, self.field, &idx),
        }
    }

    fn scalars(&self, v: &[String]) -> Result<Vector> {
        v.iter().map(|s| self.field.parse_scalar(s).map_err(|e| Error::Spec(e.to_string()))).collect()
    }

    fn matrix(&self, rows: &[Vec<String>], n: usize) -> Result<Mat> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Spec(format!("expected a {n}×{n} matrix")));
        }
        Ok(Mat::from_rows(rows.iter().map(|r| self.scalars(r)).collect::<Result<_>>()?, n)?)
    }

    fn element(&self, e: &ElementSpec) -> Result<Vector> {
        let kind = self.spec.hopf.kind;
        match (&e.basis, &e.subset, &e.coefficients) {
            (Some(b), None, None) => self.indicator(&self.indices(b)?),
            (None, Some(s), None) => self.idempotent(kind, s),
            (None, None, Some(c)) => {
                let v = self.scalars(c)?;
                if v.len() != self.hopf()?.dim() {
                    return Err(Error::Spec(format!("element needs {} coefficients", self.hopf()?.dim())));
                }
                Ok(v)
            }
            _ => Err(Error::Spec("an element takes exactly one of `basis`, `subset`, `coefficients`".into())),
        }
    }

    fn algebra(&self, a: Option<&AlgebraSpec>) -> Result<FiniteAlgebra> {
        let named = match a {
            None => "scalars",
            Some(AlgebraSpec::Named(s)) => s.as_str(),
            Some(AlgebraSpec::Constants { dim, products }) => {
                let mut c = vec![vec![zeros(*dim); *dim]; *dim];
                for (i, j, k, v) in products {
                    if *i >= *dim || *j >= *dim || *k >= *dim {
                        return Err(Error::Spec(format!("structure constant index out of range in ({i}, {j}, {k})")));
                    }
                    c[*i][*j][*k] = self.field.parse_scalar(v).map_err(|e| Error::Spec(e.to_string()))?;
                }
                let labels = (1..=*dim).map(|i| format!("e{i}")).collect();
                return Ok(FiniteAlgebra::from_constants(labels, &c)?);
            }
        };
        match named {
            "scalars" => Ok(FiniteAlgebra::scalars()),
            "matrices2" => Ok(FiniteAlgebra::matrices2()),
            "row" => Ok(FiniteAlgebra::row_algebra()),
            "function-algebra" => Ok(self.hopf_of(HopfKind::FunctionAlgebra)?.algebra().clone()),
            "group-algebra" => Ok(self.hopf_of(HopfKind::GroupAlgebra)?.algebra().clone()),
            s => match s.strip_prefix("diagonal:").and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n > 0 => Ok(FiniteAlgebra::diagonal(n)),
                _ => Err(Error::Spec(format!("unknown algebra `{s}`"))),
            },
        }
    }

    fn coaction(&self) -> Result<&PartialCoaction> {
        self.coaction.get_or_init(|| self.build_coaction()).as_ref().map_err(Clone::clone)
    }

    fn build_coaction(&self) -> Result<PartialCoaction> {
        let cs = self.spec.coaction.as_ref().ok_or_else(|| Error::Spec("no [coaction] table".into()))?;
        let h = self.hopf()?;
        let subset = || cs.subset.as_deref().ok_or_else(|| Error::Spec("missing `subset`".into()));
        let mut c = match cs.recipe {
            CoactionRecipe::Projection => {
                let m = self.idempotent(self.spec.hopf.kind, subset()?)?;
                PartialCoaction::from_projection(h, &self.algebra(cs.algebra.as_ref())?, &m, cs.symmetric)?
            }
            CoactionRecipe::Induced => {
                let unit = self.idempotent(self.spec.hopf.kind, subset()?)?;
                PartialCoaction::induced(&PartialCoaction::global_self(h)?, &unit)?
            }
            CoactionRecipe::Global => PartialCoaction::global_self(h)?,
            CoactionRecipe::Explicit => {
                let alg = self.algebra(cs.algebra.as_ref())?;
                let rho = cs.rho.as_deref().unwrap_or_default().iter().map(|v| self.scalars(v)).collect::<Result<Vec<_>>>()?;
                let e = self.scalars(cs.e.as_deref().unwrap_or_default())?;
                if e.len() != alg.dim() * h.dim() {
                    return Err(Error::Spec(format!("`e` needs {} coefficients", alg.dim() * h.dim())));
                }
                let ra = alg.tensor(h.algebra());
                let e = Multiplier::element(&ra, &e);
                PartialCoaction::new(self.spec.name.clone(), h.clone(), alg, rho, e, cs.symmetric)?
            }
        };
        c.symmetric &= cs.symmetric;
        c.reduced = cs.reduced_check;
        c.restrict_witness = match &cs.restrict_witness {
            None => None,
            Some(WitnessSpec::Auto(_)) => c.find_restrict_witness(),
            Some(WitnessSpec::Element(e)) => Some(self.element(e)?),
        };
        Ok(c)
    }

    fn action(&self) -> Result<&PartialAction> {
        self.action.get_or_init(|| self.build_action()).as_ref().map_err(Clone::clone)
    }

    fn build_action(&self) -> Result<PartialAction> {
        let spec = self.spec.action.as_ref().ok_or_else(|| Error::Spec("no [action] table".into()))?;
        let h = self.hopf()?;
        let g = self.group()?;
        let kind = self.spec.hopf.kind;
        let subset = || spec.subset.as_deref().ok_or_else(|| Error::Spec("missing `subset`".into()));
        let mut p = match spec.recipe {
            ActionRecipe::Functional => {
                let lambda = match (&spec.lambda, &spec.subset) {
                    (Some(l), _) => self.scalars(l)?,
                    (None, Some(s)) => match kind {
                        HopfKind::FunctionAlgebra => subgroup_average(g, self.field, &self.indices(s)?)?,
                        HopfKind::GroupAlgebra => self.indicator(&self.indices(s)?)?,
                    },
                    (None, None) => return Err(Error::Spec("missing `lambda`".into())),
                };
                if lambda.len() != h.dim() {
                    return Err(Error::Spec(format!("`lambda` needs {} values", h.dim())));
                }
                PartialAction::from_functional(h, &self.algebra(spec.algebra.as_ref())?, &lambda, spec.symmetric)?
            }
            ActionRecipe::DualIdempotent => {
                let dual = DualHopf::new(h)?;
                PartialAction::from_dual_idempotent(g, &dual, &self.indices(subset()?)?, &self.algebra(spec.algebra.as_ref())?)?
            }
            ActionRecipe::Induced => {
                let carrier = self.hopf_of(self.other_kind())?;
                let act = match kind {
                    HopfKind::FunctionAlgebra => function_algebra_on_group_algebra(g)?,
                    HopfKind::GroupAlgebra => group_algebra_on_function_algebra(g)?,
                };
                let unit = self.idempotent(self.other_kind(), subset()?)?;
                let global = PartialAction::global(format!("{} on {}", h.name(), carrier.name()), h.clone(), carrier.algebra().clone(), act)?;
                PartialAction::induced(&global, &unit)?
            }
            ActionRecipe::Explicit => {
                let alg = self.algebra(spec.algebra.as_ref())?;
                let r = alg.dim();
                let mats = |m: &Option<Vec<Vec<Vec<String>>>>| -> Result<Vec<Mat>> {
                    let m = m.as_deref().unwrap_or_default();
                    if m.len() != h.dim() {
                        return Err(Error::Spec(format!("expected {} matrices", h.dim())));
                    }
                    m.iter().map(|rows| self.matrix(rows, r)).collect()
                };
                let act = mats(&spec.act)?;
                let e = mats(&spec.e_left)?.into_iter().zip(mats(&spec.e_right)?).map(|(left, right)| Multiplier { left, right }).collect();
                PartialAction::new(self.spec.name.clone(), h.clone(), alg, act, e, spec.symmetric)?
            }
        };
        p.symmetric &= spec.symmetric;
        Ok(p)
    }

    /// Elements are read in the basis of the acting algebra, which for the
    /// dual-idempotent recipe is `φ(_ δ_g)`.
    fn dualize_options(&self, p: &PartialAction) -> Result<DualizeOptions> {
        let mut opts = DualizeOptions::trivial(&p.hopf);
        if let Some(d) = self.spec.action.as_ref().and_then(|a| a.dual.as_ref()) {
            if let Some(b) = &d.b {
                opts.b = self.element(b)?;
            }
            if let Some(k) = &d.k {
                opts.k = self.element(k)?;
            }
            if let Some(psi) = &d.psi {
                opts.psi = PsiChoice::parse(psi).ok_or_else(|| Error::Spec(format!("unknown psi `{psi}`")))?;
            }
        }
        Ok(opts)
    }

    fn action_dual(&self) -> Result<&ActionDual> {
        self.action_dual
            .get_or_init(|| {
                let p = self.action()?;
                dualize_action(p, &self.dualize_options(p)?)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn stage_hopf(&self) -> Result<Vec<Section>> {
        let kind = self.spec.hopf.kind;
        let Some(g) = &self.group else {
            return Ok(vec![self.sampled_hopf(kind)]);
        };
        let ex = Scope::Exhaustive;
        let checks = match kind {
            HopfKind::FunctionAlgebra => {
                let i = FunctionAlgebra::new(g.clone(), self.field);
                verify_hopf(&i, &i.basis().expect("finite"), &ex)
            }
            HopfKind::GroupAlgebra => {
                let i = GroupAlgebra::new(g.clone(), self.field);
                verify_hopf(&i, &i.basis().expect("finite"), &ex)
            }
        };
        let h = self.hopf()?;
        let mut axioms = Section::with_checks("multiplier Hopf algebra", checks);
        axioms.value("instance", h.name());
        axioms.value("dim", h.dim());
        let m = modular_element(h)?;
        let mut modular = Section::with_checks("integral and modular element", verify_modular(h, &m));
        if let Some(phi) = h.integral_vector() {
            modular.value("φ", format_functional(h, phi));
        }
        modular.value("δ", h.format(&m.delta));
        modular.value("δ trivial", m.is_trivial(h));
        let d = DualHopf::new(h)?;
        let model = self.hopf_of(self.other_kind())?;
        let mut checks = verify_dual_identities(&d);
        checks.extend(verify_theta(&d, &model));
        let mut dual = Section::with_checks("dual multiplier Hopf algebra", checks);
        dual.value("θ target", model.name());
        Ok(vec![axioms, modular, dual])
    }

    fn sampled_hopf(&self, kind: HopfKind) -> Section {
        let w = self.spec.window();
        let scope = Scope::Sample(format!("window {{-{w}..{w}}}"));
        let (name, checks) = match kind {
            HopfKind::FunctionAlgebra => {
                let i = FunctionAlgebra::new(Integers, self.field);
                let win = i.window(w);
                let mut c = verify_hopf(&i, &win, &scope);
                c.push(verify_trivial_modular(&i, &win, &scope));
                (i.name(), c)
            }
            HopfKind::GroupAlgebra => {
                let i = GroupAlgebra::new(Integers, self.field);
                let win = i.window(w);
                let mut c = verify_hopf(&i, &win, &scope);
                c.push(verify_trivial_modular(&i, &win, &scope));
                (i.name(), c)
            }
        };
        let mut s = Section::with_checks("multiplier Hopf algebra", checks);
        s.value("instance", name);
        s.value("window", w);
        s
    }

    fn stage_coaction(&self) -> Result<Vec<Section>> {
        let c = self.coaction()?;
        let mut checks = c.verify();
        if c.symmetric {
            checks.extend(c.verify_extension());
        }
        if c.algebra.unit().is_some() {
            checks.push(unital_check("coaction.unital-equivalence", c.check_unital_equivalence()));
        }
        let valid = checks.iter().all(Check::passed);
        let mut s = Section::with_checks("partial coaction", checks);
        s.value("coaction", &c.name);
        s.value("dim R", c.dim_r());
        s.value("Hopf algebra", c.hopf.name());
        s.value("global", c.e().is_identity());
        if let Some((at, value)) = c.non_global_witness() {
            s.value("non-global witness", format!("{at} = {value}"));
        }
        if let Some(a) = &c.restrict_witness {
            s.value("restrict witness", c.hopf.format(a));
        }
        let mut out = vec![s];
        if c.symmetric && valid {
            let co = coinvariants(c)?;
            let mut s = Section::with_checks("coinvariants", vec![co.check()]);
            s.value("dim", co.dim());
            if let Some(one) = c.algebra.unit() {
                let elems: Vec<String> = co.basis.iter().map(|m| c.algebra.format(&m.apply_left(&one))).collect();
                s.value("basis", elems.join(", "));
            }
            out.push(s);
        }
        Ok(out)
    }

    fn stage_action(&self) -> Result<Vec<Section>> {
        let p = self.action()?;
        let mut checks = p.verify();
        checks.extend(p.verify_ar());
        if p.symmetric {
            checks.extend(p.verify_extension());
        }
        if p.algebra.unit().is_some() {
            checks.push(unital_check("action.unital-equivalence", p.check_unital_equivalence()));
        }
        let valid = checks.iter().all(Check::passed);
        let mut s = Section::with_checks("partial action", checks);
        s.value("action", &p.name);
        s.value("dim R", p.dim_r());
        s.value("Hopf algebra", p.hopf.name());
        s.value("global", p.is_global());
        let n = p.dim_a();
        let witnesses: Vec<String> = (0..n)
            .filter(|&a| *p.e(a) != Multiplier::identity(p.dim_r()).scale(&p.hopf.counit(&unit_vector(n, a))))
            .map(|a| p.hopf.labels()[a].clone())
            .collect();
        if !witnesses.is_empty() {
            s.value("𝔢(a) ≠ ε(a)·1 at", witnesses.join(", "));
        }
        let mut out = vec![s];
        if valid && p.symmetric && p.compute_ar().nondegenerate {
            let inv = invariants(p)?;
            let mut s = Section::with_checks("invariants", inv.checks.clone());
            s.value("dim", inv.space.dim());
            out.push(s);
        }
        Ok(out)
    }

    fn stage_dualize(&self) -> Result<Vec<Section>> {
        let mut out = Vec::new();
        if self.spec.coaction.as_ref().is_some_and(|c| c.symmetric) {
            let c = self.coaction()?;
            let cd = dualize_coaction(c)?;
            let mut s = Section::with_checks("action dual to the coaction", cd.action.verify());
            s.value("acting algebra", cd.dual.hopf.name());
            s.value("global", cd.action.is_global());
            out.push(s);
        }
        if self.spec.action.is_some() {
            let p = self.action()?;
            let bridge = self.action_dual()?;
            let mut hyp = bridge.hypotheses.clone();
            hyp.push(bridge.psi_side.clone());
            let mut s = Section::with_checks("dualization hypotheses", hyp);
            s.value("ψ", bridge.psi.describe());
            out.push(s);
            let c = &bridge.coaction;
            let mut checks = c.verify();
            checks.extend(c.verify_extension());
            let co = coinvariants(c)?;
            checks.push(co.check());
            let mut s = Section::with_checks("coaction dual to the action", checks);
            s.value("dim A·R", bridge.space.dim());
            s.value("global", c.e().is_identity());
            s.value("coinvariants dim", co.dim());
            out.push(s);
            out.push(Section::with_checks("round trip", roundtrip(p, bridge)));
        }
        Ok(out)
    }

    fn morita_source(&self) -> Result<&PartialCoaction> {
        if self.spec.coaction.is_some() {
            self.coaction()
        } else {
            Ok(&self.action_dual()?.coaction)
        }
    }

    fn stage_morita(&self, galois: bool) -> Result<Vec<Section>> {
        let c = self.morita_source()?;
        let ctx = MoritaContext::build(c)?;
        let mut s = Section::with_checks("Morita context", ctx.verify());
        s.value("dim R", ctx.dim_r());
        s.value("dim Â·R", ctx.dim_p());
        s.value("dim (Â·R)#Â", ctx.dim_s());
        s.value("dim B", ctx.dim_b());
        s.value("coinvariants dim", ctx.coinvariants.dim());
        s.value("restrict witness", c.hopf.format(&ctx.restrict_witness));
        if let Some((at, value)) = ctx.sample_pairing() {
            s.value("sample pairing", format!("{at} = {value}"));
        }
        let mut out = vec![s];
        if galois {
            let map = galois_map(&ctx)?;
            let eq = check_galois_equivalence(&ctx)?;
            let mut checks = map.checks.clone();
            checks.extend(eq.checks.iter().cloned());
            let mut s = Section::with_checks("Galois map", checks);
            s.value("verdict", map.verdict);
            s.value("rank β", map.rank);
            s.value("dim domain", map.domain.dim());
            s.value("dim codomain", map.codomain.dim());
            s.value("β surjective", eq.beta_surjective);
            s.value("[ , ] surjective", eq.bracket_surjective);
            s.value("β bijective", eq.beta_bijective);
            s.value("( , ) surjective", eq.round_surjective);
            out.push(s);
        }
        Ok(out)
    }
}

fn refusal(title: &str, e: &Error) -> Section {
    let mut s = Section::new(title);
    match e {
        Error::Hypothesis { identity, witness } => {
            s.value("refused", identity);
            s.value("witness", witness);
        }
        other => s.value("error", other),
    }
    s
}

fn unital_check(anchor: &str, outcome: std::result::Result<bool, String>) -> Check {
    Check::run("unital and multiplier definitions agree", anchor, &Scope::Exhaustive, || match outcome {
        Ok(true) => Ok(()),
        Ok(false) => Err("the two definitions disagree".into()),
        Err(w) => Err(w),
    })
}

fn format_functional(h: &FiniteHopf, f: &[Scalar]) -> String {
    let terms: Vec<String> = linalg::support(f)
        .map(|(i, c)| if c.is_one() { format!("{}*", h.labels()[i]) } else { format!("{c}·{}*", h.labels()[i]) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
