//! TOML example specifications.
//!
//! ```toml
//! name = "induced coaction on f_N·A_G"
//! field = "rational"
//!
//! [group]
//! kind = "cyclic"
//! order = 4
//!
//! [hopf]
//! kind = "function-algebra"
//!
//! [coaction]
//! recipe = "induced"
//! subset = [0, 2]
//! restrict_witness = { basis = [0] }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scalar::Field;

pub const DEFAULT_WINDOW: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default = "default_field")]
    pub field: String,
    pub group: GroupSpec,
    pub hopf: HopfSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coaction: Option<CoactionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
}

fn default_field() -> String {
    "rational".into()
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic { order: u32 },
    Symmetric { degree: u32 },
    Integers,
}

impl GroupSpec {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic { order } => Some(*order as usize),
            GroupSpec::Symmetric { .. } => Some(6),
            GroupSpec::Integers => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopfKind {
    /// `A_G`
    FunctionAlgebra,
    /// `𝕜G`
    GroupAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    pub kind: HopfKind,
    /// Radius of the witness window for infinite groups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

/// A group element written as an integer or a label string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl Label {
    pub fn text(&self) -> String {
        match self {
            Label::Int(i) => i.to_string(),
            Label::Text(s) => s.clone(),
        }
    }
}

/// The algebra `R` acted or coacted upon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    /// `scalars`, `diagonal:<n>`, `matrices2`, `function-algebra`,
    /// `group-algebra`.
    Named(String),
    /// Structure constants `e_i e_j = Σ c e_k` as `[i, j, k, "c"]`.
    Constants { dim: usize, products: Vec<(usize, usize, usize, String)> },
}

impl Default for AlgebraSpec {
    fn default() -> Self {
        AlgebraSpec::Named("scalars".into())
    }
}

/// An element of the Hopf algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    /// Sum of the listed basis elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Label>>,
    /// The idempotent of a subgroup: its indicator in `A_G`, its average
    /// in `𝕜G`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessSpec {
    /// `"auto"`: search the basis.
    Auto(String),
    Element(ElementSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoactionRecipe {
    /// `ρ(x) = x⊗m` with `m` the subgroup idempotent of `subset`.
    Projection,
    /// Induced from the self-coaction on the ideal cut out by `subset`.
    Induced,
    /// The coaction of the Hopf algebra on itself.
    Global,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoactionSpec {
    pub recipe: CoactionRecipe,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default = "yes")]
    pub symmetric: bool,
    /// Include the reduced conditions in the verification.
    #[serde(default = "yes")]
    pub reduced_check: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict_witness: Option<WitnessSpec>,
    /// Explicit: column `x` is `ρ(e_x)` in `R⊗A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Vec<String>>>,
    /// Explicit: `E` as an element of `R⊗A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ActionRecipe {
    /// `a·x = λ(a)x`.
    Functional,
    /// `φ(_ h)·x = φ(fh)x` for the dual Hopf algebra, `f` the indicator of
    /// `subset`.
    DualIdempotent,
    /// Induced from the global action on the other group-Hopf algebra.
    Induced,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub recipe: ActionRecipe,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default = "yes")]
    pub symmetric: bool,
    /// Explicit: `act[a]` as a list of rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<Vec<Vec<Vec<String>>>>,
    /// Explicit: `𝔢(e_a)` as left and right multiplication matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_left: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_right: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSpec>,
}

/// Data for dualizing an action: `𝔢 = 𝔢(_ b)`, `𝔢(k) = 1`, choice of `ψ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<String>,
}

/// Command-line overrides applied after parsing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub field: Option<String>,
    pub window: Option<u32>,
}

impl ExampleSpec {
    pub fn parse(text: &str) -> Result<ExampleSpec> {
        let spec: ExampleSpec = toml::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<ExampleSpec> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))?;
        ExampleSpec::parse(&text)
    }

    pub fn with_overrides(mut self, o: &Overrides) -> Result<ExampleSpec> {
        if let Some(f) = &o.field {
            self.field = f.clone();
        }
        if let Some(w) = o.window {
            self.hopf.window = Some(w);
        }
        self.validate()?;
        Ok(self)
    }

    pub fn field(&self) -> Result<Field> {
        Field::parse(&self.field).map_err(|e| Error::Spec(format!("field `{}`: {e}", self.field)))
    }

    pub fn window(&self) -> u32 {
        self.hopf.window.unwrap_or(DEFAULT_WINDOW)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("specs serialize");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn validate(&self) -> Result<()> {
        let field = self.field()?;
        if let GroupSpec::Symmetric { degree } = self.group {
            if degree != 3 {
                return Err(Error::Spec(format!("symmetric group of degree {degree}: only degree 3 is available")));
            }
        }
        if let GroupSpec::Cyclic { order: 0 } = self.group {
            return Err(Error::Spec("cyclic group of order 0".into()));
        }
        let finite = self.group.order().is_some();
        if !finite && (self.coaction.is_some() || self.action.is_some()) {
            return Err(Error::Spec("coactions and actions need a finite group".into()));
        }
        let p = field.characteristic();
        let average_ok = |subset: &Option<Vec<Label>>, what: &str| -> Result<()> {
            if let (Some(s), true) = (subset, p != 0) {
                if s.len() as u64 % p == 0 {
                    return Err(Error::Spec(format!("{what} uses 1/|N| with |N| = {} divisible by char 𝕜 = {p}", s.len())));
                }
            }
            Ok(())
        };
        let need = |ok: bool, what: &str| if ok { Ok(()) } else { Err(Error::Spec(what.to_string())) };
        if let Some(c) = &self.coaction {
            match c.recipe {
                CoactionRecipe::Projection | CoactionRecipe::Induced => {
                    need(c.subset.is_some(), "coaction recipe needs `subset`")?;
                    if self.hopf.kind == HopfKind::GroupAlgebra {
                        average_ok(&c.subset, "coaction recipe")?;
                    }
                }
                CoactionRecipe::Global => {}
                CoactionRecipe::Explicit => {
                    need(c.rho.is_some() && c.e.is_some(), "explicit coaction needs `rho` and `e`")?;
                }
            }
            if let Some(WitnessSpec::Auto(s)) = &c.restrict_witness {
                need(s == "auto", "restrict_witness must be \"auto\" or an element table")?;
            }
        }
        if let Some(a) = &self.action {
            match a.recipe {
                ActionRecipe::Functional => {
                    need(a.lambda.is_some() != a.subset.is_some(), "functional action needs exactly one of `lambda` and `subset`")?;
                    if self.hopf.kind == HopfKind::FunctionAlgebra {
                        average_ok(&a.subset, "functional action")?;
                    }
                }
                ActionRecipe::DualIdempotent => {
                    need(a.subset.is_some(), "dual-idempotent action needs `subset`")?;
                    need(self.hopf.kind == HopfKind::FunctionAlgebra, "dual-idempotent action needs the function-algebra Hopf instance")?;
                }
                ActionRecipe::Induced => {
                    need(a.subset.is_some(), "induced action needs `subset`")?;
                    if self.hopf.kind == HopfKind::FunctionAlgebra {
                        average_ok(&a.subset, "induced action")?;
                    }
                }
                ActionRecipe::Explicit => {
                    need(a.act.is_some() && a.e_left.is_some() && a.e_right.is_some(), "explicit action needs `act`, `e_left` and `e_right`")?;
                }
            }
            if let Some(psi) = a.dual.as_ref().and_then(|d| d.psi.as_deref()) {
                need(crate::duality::PsiChoice::parse(psi).is_some(), "psi must be `left` or `right`")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INDUCED: &str = r#"
name = "induced"
[group]
kind = "cyclic"
order = 4
[hopf]
kind = "function-algebra"
[coaction]
recipe = "induced"
subset = [0, 2]
restrict_witness = { basis = [0] }
"#;

    #[test]
    fn parses_and_fingerprints() {
        let s = ExampleSpec::parse(INDUCED).unwrap();
        assert_eq!(s.field, "rational");
        assert_eq!(s.window(), DEFAULT_WINDOW);
        let c = s.coaction.as_ref().unwrap();
        assert!(c.symmetric && c.reduced_check);
        assert_eq!(c.subset, Some(vec![Label::Int(0), Label::Int(2)]));
        assert_eq!(s.fingerprint(), ExampleSpec::parse(INDUCED).unwrap().fingerprint());
        let other = s.clone().with_overrides(&Overrides { field: Some("gf:5".into()), window: None }).unwrap();
        assert_ne!(other.fingerprint(), s.fingerprint());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(ExampleSpec::parse("name = 1"), Err(Error::Spec(_))));
        let unknown = INDUCED.replace("recipe = \"induced\"", "recipe = \"induced\"\ncolour = 3");
        assert!(matches!(ExampleSpec::parse(&unknown), Err(Error::Spec(_))));
        let infinite = INDUCED.replace("kind = \"cyclic\"\norder = 4", "kind = \"integers\"");
        assert!(matches!(ExampleSpec::parse(&infinite), Err(Error::Spec(_))));
    }

    #[test]
    fn characteristic_must_not_divide_the_subgroup_order() {
        let spec = r#"
name = "lambda"
field = "gf:2"
[group]
kind = "cyclic"
order = 4
[hopf]
kind = "function-algebra"
[action]
recipe = "functional"
subset = [0, 2]
"#;
        let err = ExampleSpec::parse(spec).unwrap_err();
        assert!(err.to_string().contains("divisible by char"), "{err}");
        assert!(ExampleSpec::parse(&spec.replace("gf:2", "gf:3")).is_ok());
    }
}
