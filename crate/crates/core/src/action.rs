//! Partial module algebras `(R, ·, 𝔢)` over a finite-dimensional
//! multiplier Hopf algebra.
//!
//! Sweedler legs are compiled to the covered maps:
//! `a₍₁₎ ⊗ a₍₂₎b = T1(a⊗b)`, `a₍₁₎ ⊗ S(a₍₂₎)b = T1⁻¹(a⊗b)`,
//! `a₍₁₎b ⊗ a₍₂₎ = X(b⊗a)` and `S⁻¹(a₍₁₎)b ⊗ a₍₂₎ = X⁻¹(b⊗a)` where
//! `X(b⊗a) = Δ(a)(b⊗1)`.

use crate::algebra::{operator_from_spanning, FiniteAlgebra, Multiplier};
use crate::coaction::pivot_selector;
use crate::error::{Error, Result};
use crate::group::{is_subgroup, Group};
use crate::hopf::{DualHopf, FiniteHopf};
use crate::linalg::{self, kron, support, unit_vector, zeros, Mat, Subspace, Vector};
use crate::report::{first_failure, Check, Scope};
use crate::scalar::{Field, Scalar};

/// A finite family `(a_i), (x_j)` for the local-unit axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub a: Vec<Vector>,
    pub x: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct PartialAction {
    pub name: String,
    pub hopf: FiniteHopf,
    pub algebra: FiniteAlgebra,
    /// `act[a]` is `x ↦ e_a·x`.
    act: Vec<Mat>,
    e: Vec<Multiplier>,
    pub symmetric: bool,
    /// Families for the local-unit axiom; empty means all singletons.
    pub families: Vec<Family>,
    t1_inv: Mat,
    x: Mat,
    x_inv: Mat,
}

impl PartialAction {
    pub fn new(
        name: impl Into<String>,
        hopf: FiniteHopf,
        algebra: FiniteAlgebra,
        act: Vec<Mat>,
        e: Vec<Multiplier>,
        symmetric: bool,
    ) -> Result<PartialAction> {
        let (n, r) = (hopf.dim(), algebra.dim());
        if act.len() != n || e.len() != n || act.iter().any(|m| m.rows() != r || m.cols() != r) || e.iter().any(|m| m.dim() != r) {
            return Err(Error::Spec(format!("action data does not match dim A = {n}, dim R = {r}")));
        }
        if let Err(w) = algebra.check_nondegenerate() {
            return Err(Error::hypothesis("R nondegenerate", format!("annihilator {}", algebra.format(&w))));
        }
        let t1_inv = hopf.t1_matrix().inverse().ok_or_else(|| Error::hypothesis("T1 bijective", "singular"))?;
        let x = delta_cover_left(&hopf);
        let x_inv = x.inverse().ok_or_else(|| Error::hypothesis("Δ(a)(b⊗1) bijective", "singular"))?;
        Ok(PartialAction { name: name.into(), hopf, algebra, act, e, symmetric, families: Vec::new(), t1_inv, x, x_inv })
    }

    /// A global action `▷` with `𝔢(a) = ε(a)·1`.
    pub fn global(name: impl Into<String>, hopf: FiniteHopf, algebra: FiniteAlgebra, act: Vec<Mat>) -> Result<PartialAction> {
        let r = algebra.dim();
        let e = (0..hopf.dim()).map(|a| Multiplier::identity(r).scale(&hopf.counit(&unit_vector(hopf.dim(), a)))).collect();
        PartialAction::new(name, hopf, algebra, act, e, true)
    }

    /// `a·x = λ(a)x`, `𝔢(a) = λ(a)·1`, refusing unless `λ` satisfies the
    /// functional identities (and the symmetric one when asked).
    pub fn from_functional(hopf: &FiniteHopf, algebra: &FiniteAlgebra, lambda: &[Scalar], symmetric: bool) -> Result<PartialAction> {
        let n = hopf.dim();
        let basis = hopf.algebra().basis();
        let lam = |v: &[Scalar]| linalg::dot(lambda, v);
        let pair = |u: &[Scalar]| -> Scalar {
            support(u).fold(Scalar::zero(), |acc, (k, c)| &acc + &(c * &(&lambda[k / n] * &lambda[k % n])))
        };
        for a in 0..n {
            for b in 0..n {
                let lhs = &lambda[a] * &lambda[b];
                let rhs = pair(&hopf.t1_apply(&kron(&basis[a], &basis[b])));
                if lhs != rhs {
                    return Err(Error::hypothesis(
                        "λ(a)λ(b) = λ(a₍₁₎)λ(a₍₂₎b)",
                        format!("a={}, b={}: {lhs} vs {rhs}", hopf.labels()[a], hopf.labels()[b]),
                    ));
                }
                if symmetric {
                    let rhs = pair(&delta_cover_left(hopf).apply(&kron(&basis[b], &basis[a])));
                    if lhs != rhs {
                        return Err(Error::hypothesis(
                            "λ(a)λ(b) = λ(a₍₁₎b)λ(a₍₂₎)",
                            format!("a={}, b={}: {lhs} vs {rhs}", hopf.labels()[a], hopf.labels()[b]),
                        ));
                    }
                }
            }
            if local_unit_with(hopf, &[basis[a].clone()], |b| &lambda[a] * &lam(b) == lambda[a]).is_none() {
                return Err(Error::hypothesis(
                    "λ(a_i)λ(b) = λ(a_i) for a local unit b",
                    format!("a={}", hopf.labels()[a]),
                ));
            }
        }
        let r = algebra.dim();
        let act = lambda.iter().map(|l| Mat::identity(r).scale(l)).collect();
        let e = lambda.iter().map(|l| Multiplier::identity(r).scale(l)).collect();
        PartialAction::new(format!("λ-action of {} on {}-dim algebra", hopf.name(), r), hopf.clone(), algebra.clone(), act, e, symmetric)
    }

    /// The dual-idempotent action of `Â_G` on `R`: `φ(_h)·x = φ(fh)x` with
    /// `f` the indicator of `subset`.
    pub fn from_dual_idempotent<G: Group>(group: &G, dual: &DualHopf, subset: &[G::Elem], algebra: &FiniteAlgebra) -> Result<PartialAction> {
        let elems = group.elements().ok_or_else(|| Error::Unsupported("infinite group".into()))?;
        let source = &dual.source;
        let f: Vector = elems.iter().map(|g| if subset.contains(g) { Scalar::one() } else { Scalar::zero() }).collect();
        let lhs = source.tensor_mul(&kron(&f, source.unit()), &source.coproduct(&f));
        if lhs != kron(&f, &f) {
            return Err(Error::hypothesis("(f⊗1)Δ(f) = f⊗f", format!("(f⊗1)Δ(f) = {}", source.format2(&lhs))));
        }
        let phi = source.integral_vector().ok_or_else(|| Error::Unsupported("no integral".into()))?;
        // λ(φ(_e_i)) = φ(f·e_i)
        let lambda: Vector = (0..source.dim()).map(|i| linalg::dot(phi, &source.mul(&f, &unit_vector(source.dim(), i)))).collect();
        let mut p = PartialAction::from_functional(&dual.hopf, algebra, &lambda, true)?;
        p.name = format!("dual-idempotent action of {} for N = {{{}}}", dual.hopf.name(), labels(group, subset));
        Ok(p)
    }

    /// The partial action induced on `L = 1_L·R` by a global action:
    /// `a·x = 1_L(a▷x)`, `𝔢(a) = a·1_L`.
    pub fn induced(global: &PartialAction, unit_l: &[Scalar]) -> Result<PartialAction> {
        if let Some(c) = global.verify().into_iter().find(|c| !c.passed()) {
            return Err(Error::hypothesis("source action verified", format!("{}: {}", c.name, c.witness.unwrap_or_default())));
        }
        if !global.is_global() {
            return Err(Error::hypothesis("source action is global", "𝔢(a) ≠ ε(a)·1"));
        }
        let rr = &global.algebra;
        let r = rr.dim();
        if global.action_image().dim() != r {
            return Err(Error::hypothesis("A▷R = R", "the action is not unitary"));
        }
        if rr.mul(unit_l, unit_l) != unit_l {
            return Err(Error::hypothesis("1_L idempotent", format!("1_L² = {}", rr.format(&rr.mul(unit_l, unit_l)))));
        }
        let space = Subspace::from_vectors(r, rr.basis().iter().map(|x| rr.mul(unit_l, x)));
        if space.basis().iter().any(|x| rr.mul(x, unit_l) != *x) {
            return Err(Error::hypothesis("1_L is the unit of L", "x·1_L ≠ x for some x ∈ L"));
        }
        let sub = rr.subalgebra(&space).map_err(|_| Error::hypothesis("L is a subalgebra", "1_L·R not closed"))?;
        let central = rr.basis().iter().all(|x| rr.mul(unit_l, x) == rr.mul(x, unit_l));
        let l = space.dim();
        let left_unit = rr.left_matrix(unit_l);
        let act: Vec<Mat> = global
            .act
            .iter()
            .map(|m| {
                let cols: Vec<Vector> =
                    space.basis().iter().map(|x| space.coordinates(&left_unit.apply(&m.apply(x))).expect("1_L·R ⊆ L")).collect();
                Mat::from_columns(&cols, l)
            })
            .collect();
        let unit_coords = space.coordinates(unit_l).expect("1_L ∈ L");
        let e = act.iter().map(|m| Multiplier::element(&sub.algebra, &m.apply(&unit_coords))).collect();
        PartialAction::new(
            format!("action induced on ({})·R", rr.format(unit_l)),
            global.hopf.clone(),
            sub.algebra,
            act,
            e,
            central,
        )
    }

    pub fn dim_a(&self) -> usize {
        self.hopf.dim()
    }

    pub fn dim_r(&self) -> usize {
        self.algebra.dim()
    }

    pub fn action_matrix(&self, a: usize) -> &Mat {
        &self.act[a]
    }

    pub fn e(&self, a: usize) -> &Multiplier {
        &self.e[a]
    }

    pub fn with_e(&self, e: Vec<Multiplier>) -> PartialAction {
        PartialAction { e, ..self.clone() }
    }

    /// `a·x` for arbitrary `a`.
    pub fn act(&self, a: &[Scalar], x: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim_r());
        for (k, c) in support(a) {
            linalg::axpy(&mut out, c, &self.act[k].apply(x));
        }
        out
    }

    /// `𝔢(a)` for arbitrary `a`.
    pub fn e_of(&self, a: &[Scalar]) -> Multiplier {
        Multiplier::combine(self.dim_r(), a, &self.e)
    }

    /// `Σ c_pq f(p, q)` over the support of a tensor in `A⊗A`.
    fn sum2(&self, u: &[Scalar], mut f: impl FnMut(usize, usize) -> Vector) -> Vector {
        let n = self.dim_a();
        let mut out = zeros(self.dim_r());
        for (k, c) in support(u) {
            linalg::axpy(&mut out, c, &f(k / n, k % n));
        }
        out
    }

    fn pair(&self, a: usize, b: usize) -> Vector {
        kron(&unit_vector(self.dim_a(), a), &unit_vector(self.dim_a(), b))
    }

    pub fn is_global(&self) -> bool {
        let r = self.dim_r();
        (0..self.dim_a()).all(|a| self.e[a] == Multiplier::identity(r).scale(&self.hopf.counit(&unit_vector(self.dim_a(), a))))
    }

    /// `A·R`.
    pub fn action_image(&self) -> Subspace {
        let r = self.dim_r();
        Subspace::from_vectors(r, self.act.iter().flat_map(|m| m.columns()))
    }

    /// `𝔢(A)R`.
    pub fn e_left_image(&self) -> Subspace {
        Subspace::from_vectors(self.dim_r(), self.e.iter().flat_map(|m| m.left.columns()))
    }

    /// `R𝔢(A)`.
    pub fn e_right_image(&self) -> Subspace {
        Subspace::from_vectors(self.dim_r(), self.e.iter().flat_map(|m| m.right.columns()))
    }

    fn families(&self) -> Vec<Family> {
        if !self.families.is_empty() {
            return self.families.clone();
        }
        let (n, r) = (self.dim_a(), self.dim_r());
        (0..n)
            .flat_map(|a| (0..r).map(move |x| Family { a: vec![unit_vector(n, a)], x: vec![unit_vector(r, x)] }))
            .collect()
    }

    /// A `b` with `a_i b = a_i = b a_i` and `a_i·(b·x_j) = a_i·x_j`.
    pub fn local_unit_for(&self, family: &Family) -> Option<Vector> {
        let n = self.dim_a();
        let am = self.hopf.algebra();
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        for ai in &family.a {
            for m in [am.left_matrix(ai), am.right_matrix(ai)] {
                for (i, row) in (0..n).map(|i| (i, m.row(i).to_vec())) {
                    rows.push(row);
                    rhs.push(ai[i].clone());
                }
            }
            for xj in &family.x {
                // b ↦ a_i·(b·x_j), column k is a_i·(e_k·x_j)
                let cols: Vec<Vector> = (0..n).map(|k| self.act(ai, &self.act[k].apply(xj))).collect();
                let m = Mat::from_columns(&cols, self.dim_r());
                let target = self.act(ai, xj);
                for i in 0..self.dim_r() {
                    rows.push(m.row(i).to_vec());
                    rhs.push(target[i].clone());
                }
            }
        }
        let m = Mat::from_rows(rows, n).expect("rows have length n");
        linalg::solve(&m, &rhs).expect("shapes agree")
    }

    /// The full verification suite.
    pub fn verify(&self) -> Vec<Check> {
        let (n, r) = (self.dim_a(), self.dim_r());
        let ex = Scope::Exhaustive;
        let br = self.algebra.basis();
        let ba = self.hopf.algebra().basis();
        let al = |a: usize| self.hopf.labels()[a].clone();
        let rl = |x: usize| self.algebra.labels()[x].clone();
        let quads = || {
            (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..r).flat_map(move |x| (0..r).map(move |y| (a, b, x, y)))))
        };
        let triples = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..r).map(move |x| (a, b, x))));
        let fmt = |v: &[Scalar]| self.algebra.format(v);
        let mut checks = Vec::new();

        checks.push(Check::run("axiom (i)", "action.axiom-i", &ex, || {
            first_failure(quads(), |&(a, b, x, y)| {
                let lhs = self.act(&ba[a], &self.algebra.mul(&br[x], &self.act[b].apply(&br[y])));
                let rhs = self.sum2(&self.hopf.t1_apply(&self.pair(a, b)), |p, q| {
                    self.algebra.mul(&self.act[p].apply(&br[x]), &self.act[q].apply(&br[y]))
                });
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, x={}, y={}: {} vs {}", al(a), al(b), rl(x), rl(y), fmt(&lhs), fmt(&rhs)))
                }
            })
        }));

        checks.push(Check::run("axiom (ii): 𝔢(a)(b·x) = a₍₁₎·(S(a₍₂₎)b·x)", "action.axiom-ii", &ex, || {
            first_failure(triples(), |&(a, b, x)| {
                let lhs = self.e[a].apply_left(&self.act[b].apply(&br[x]));
                let rhs = self.sum2(&self.t1_inv.apply(&self.pair(a, b)), |p, q| self.act[p].apply(&self.act[q].apply(&br[x])));
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, x={}: {} vs {}", al(a), al(b), rl(x), fmt(&lhs), fmt(&rhs)))
                }
            })
        }));
        let ar = self.action_image();
        checks.push(Check::run("axiom (ii): 𝔢(A)R ⊆ A·R", "action.axiom-ii", &ex, || {
            let img = self.e_left_image();
            match img.first_outside(&ar) {
                None => Ok(()),
                Some(v) => Err(fmt(v)),
            }
        }));

        let families = self.families();
        let scope = Scope::Sample(if self.families.is_empty() {
            "declared families: all singletons (a_i, x_j)".to_string()
        } else {
            format!("{} declared families", families.len())
        });
        checks.push(Check::run("axiom (iii): local units", "action.axiom-iii", &scope, || {
            first_failure(families.iter().enumerate(), |(k, fam)| match self.local_unit_for(fam) {
                Some(_) => Ok(()),
                None => Err(format!(
                    "family {k}: a = [{}], x = [{}]",
                    fam.a.iter().map(|a| self.hopf.format(a)).collect::<Vec<_>>().join(", "),
                    fam.x.iter().map(|x| fmt(x)).collect::<Vec<_>>().join(", ")
                )),
            })
        }));

        checks.push(Check::run("axiom (iv): nondegenerate action", "action.axiom-iv", &ex, || {
            let stacked = self.act.iter().fold(Mat::zeros(0, r), |acc, m| acc.vstack(m));
            match stacked.kernel().basis().first() {
                None => Ok(()),
                Some(w) => Err(format!("A·x = 0 for x = {}", fmt(w))),
            }
        }));

        checks.push(Check::run("𝔢(a) multiplier of R", "action.e-multiplier", &ex, || {
            first_failure(0..n, |&a| match self.e[a].compatibility_failure(&self.algebra) {
                None => Ok(()),
                Some((i, j)) => Err(format!("a={}, x={}, y={}", al(a), rl(i), rl(j))),
            })
        }));

        if self.symmetric {
            checks.push(Check::run("axiom (v)", "action.axiom-v", &ex, || {
                first_failure(quads(), |&(a, b, x, y)| {
                    let lhs = self.act(&ba[a], &self.algebra.mul(&self.act[b].apply(&br[x]), &br[y]));
                    let rhs = self.sum2(&self.x.apply(&self.pair(b, a)), |p, q| {
                        self.algebra.mul(&self.act[p].apply(&br[x]), &self.act[q].apply(&br[y]))
                    });
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("a={}, b={}, x={}, y={}", al(a), al(b), rl(x), rl(y)))
                    }
                })
            }));
            checks.push(Check::run("axiom (vi)", "action.axiom-vi", &ex, || {
                first_failure(triples(), |&(a, b, x)| {
                    let lhs = self.e[a].apply_right(&self.act[b].apply(&br[x]));
                    let rhs =
                        self.sum2(&self.x_inv.apply(&self.pair(b, a)), |p, q| self.act[q].apply(&self.act[p].apply(&br[x])));
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("a={}, b={}, x={}: {} vs {}", al(a), al(b), rl(x), fmt(&lhs), fmt(&rhs)))
                    }
                })
            }));
            checks.push(Check::run("axiom (vii): R𝔢(A) ⊆ A·R", "action.axiom-vii", &ex, || {
                match self.e_right_image().first_outside(&ar) {
                    None => Ok(()),
                    Some(v) => Err(fmt(v)),
                }
            }));
            checks.push(Check::run("mixed associativity", "action.mixed-associativity", &ex, || {
                first_failure(quads(), |&(a, b, x, y)| {
                    let lhs = self.algebra.mul(&self.act[a].apply(&br[x]), &self.act[b].apply(&br[y]));
                    let first = self.sum2(&self.t1_inv.apply(&self.pair(a, b)), |p, q| {
                        self.act[p].apply(&self.algebra.mul(&br[x], &self.act[q].apply(&br[y])))
                    });
                    let second = self.sum2(&self.x_inv.apply(&self.pair(a, b)), |p, q| {
                        self.act[q].apply(&self.algebra.mul(&self.act[p].apply(&br[x]), &br[y]))
                    });
                    if lhs != first {
                        Err(format!("a₍₁₎ form at a={}, b={}, x={}, y={}", al(a), al(b), rl(x), rl(y)))
                    } else if lhs != second {
                        Err(format!("b₍₂₎ form at a={}, b={}, x={}, y={}", al(a), al(b), rl(x), rl(y)))
                    } else {
                        Ok(())
                    }
                })
            }));
        }
        checks
    }

    /// `A·R` with its product, after checking `A·R = 𝔢(A)R = R𝔢(A)`.
    pub fn compute_ar(&self) -> ActionImage {
        let space = self.action_image();
        let algebra = self.algebra.subalgebra(&space).ok().map(|s| s.algebra);
        let nondegenerate = algebra.as_ref().map(|a| a.is_nondegenerate()).unwrap_or(false);
        ActionImage {
            equals_e_left: space == self.e_left_image(),
            equals_e_right: space == self.e_right_image(),
            space,
            algebra,
            nondegenerate,
        }
    }

    pub fn verify_ar(&self) -> Vec<Check> {
        let ar = self.compute_ar();
        vec![
            Check::of_bool("A·R = 𝔢(A)R", "action.image.e-left", ar.equals_e_left, || {
                format!("dim A·R = {}, dim 𝔢(A)R = {}", ar.space.dim(), self.e_left_image().dim())
            }),
            Check::of_bool("A·R = R𝔢(A)", "action.image.e-right", ar.equals_e_right, || {
                format!("dim A·R = {}, dim R𝔢(A) = {}", ar.space.dim(), self.e_right_image().dim())
            }),
            Check::of_bool("A·R subalgebra with nondegenerate product", "action.image.nondegenerate", ar.nondegenerate, || {
                if ar.algebra.is_none() { "A·R is not closed under the product".into() } else { "product on A·R is degenerate".into() }
            }),
        ]
    }

    /// The extension `A⊗M(R) → M(A·R)`.
    pub fn extension(&self) -> Result<ActionExtension<'_>> {
        let ar = self.compute_ar();
        let algebra = match (&ar.algebra, ar.nondegenerate) {
            (Some(a), true) => a.clone(),
            _ => return Err(Error::hypothesis("A·R nondegenerate", "product on A·R is degenerate or not closed")),
        };
        let (n, r) = (self.dim_a(), self.dim_r());
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..r).map(move |x| (c, x))).collect();
        let sources: Vec<Vector> = pairs.iter().map(|&(c, x)| self.act[c].apply(&unit_vector(r, x))).collect();
        Ok(ActionExtension { p: self, select: pivot_selector(&ar.space), space: ar.space, algebra, pairs, sources })
    }

    pub fn verify_extension(&self) -> Vec<Check> {
        let ex = Scope::Exhaustive;
        let ext = match self.extension() {
            Ok(e) => e,
            Err(e) => return vec![Check::of_bool("A·R nondegenerate", "action.extension", false, || e.to_string())],
        };
        let (n, r) = (self.dim_a(), self.dim_r());
        let mr = self.algebra.multiplier_algebra();
        let ba = self.hopf.algebra().basis();
        let al = |a: usize| self.hopf.labels()[a].clone();
        let mut checks = Vec::new();
        checks.push(Check::run("a·m multiplier of A·R", "action.extension.compatible", &ex, || {
            first_failure((0..n).flat_map(|a| (0..mr.dim()).map(move |k| (a, k))), |&(a, k)| {
                let am = ext.apply(&ba[a], &mr.basis()[k])?;
                match am.compatibility_failure(&ext.algebra) {
                    None => Ok(()),
                    Some((i, j)) => Err(format!("a={}, m = M(R) basis {k}, pair ({i}, {j})", al(a))),
                }
            })
        }));
        checks.push(Check::run("𝔢(a) on A·R equals a·1", "action.extension.e-equals-a-one", &ex, || {
            first_failure(0..n, |&a| {
                let one = ext.apply(&ba[a], &Multiplier::identity(r))?;
                match self.e[a].restrict(&ext.space) {
                    Some(e) if e == one => Ok(()),
                    Some(_) => Err(format!("a={}", al(a))),
                    None => Err(format!("𝔢({}) does not preserve A·R", al(a))),
                }
            })
        }));
        let d = mr.dim();
        let grid = move || {
            (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..d).flat_map(move |i| (0..d).map(move |j| (a, b, i, j)))))
        };
        checks.push(Check::run("a·(m(b·n)) = (a₍₁₎·m)(a₍₂₎b·n)", "action.extension.left-product", &ex, || {
            first_failure(grid(), |&(a, b, i, j)| {
                let (m, nn) = (&mr.basis()[i], &mr.basis()[j]);
                let inner = m.left.mul(&ext.left(&ba[b], &nn.left)?);
                let lhs = ext.left(&ba[a], &inner)?;
                let mut rhs = Mat::zeros(r, r);
                for (k, c) in support(&self.hopf.t1_apply(&self.pair(a, b))) {
                    let (p, q) = (k / n, k % n);
                    let term = ext.left(&ba[p], &m.left)?.mul(&ext.left(&ba[q], &nn.left)?);
                    rhs = rhs.add(&term.scale(c));
                }
                if ext.on_space(&lhs) == ext.on_space(&rhs) {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, M(R) basis ({i}, {j})", al(a), al(b)))
                }
            })
        }));
        checks.push(Check::run("a·((b·m)n) = (a₍₁₎b·m)(a₍₂₎·n)", "action.extension.right-product", &ex, || {
            first_failure(grid(), |&(a, b, i, j)| {
                let (m, nn) = (&mr.basis()[i], &mr.basis()[j]);
                // right operators compose in reverse: (c·x)(W) with W = (b·m)n
                let inner = nn.right.mul(&ext.right(&ba[b], &m.right)?);
                let lhs = ext.right(&ba[a], &inner)?;
                let mut rhs = Mat::zeros(r, r);
                for (k, c) in support(&self.x.apply(&self.pair(b, a))) {
                    let (p, q) = (k / n, k % n);
                    let term = ext.right(&ba[q], &nn.right)?.mul(&ext.right(&ba[p], &m.right)?);
                    rhs = rhs.add(&term.scale(c));
                }
                if ext.on_space(&lhs) == ext.on_space(&rhs) {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, M(R) basis ({i}, {j})", al(a), al(b)))
                }
            })
        }));
        checks
    }

    /// For unital `R`: `1_A·x = x`, `𝔢(a) = a·1_R`, and the unital items
    /// hold exactly when the multiplier-form axioms do.
    pub fn check_unital_equivalence(&self) -> std::result::Result<bool, String> {
        let one_r = self.algebra.unit().ok_or("R is not unital")?;
        let (n, r) = (self.dim_a(), self.dim_r());
        let br = self.algebra.basis();
        let ba = self.hopf.algebra().basis();
        let one_a = self.hopf.unit();
        let unit_acts = (0..r).all(|x| self.act(one_a, &br[x]) == br[x]);
        let e_ok = (0..n).all(|a| self.e[a] == Multiplier::element(&self.algebra, &self.act[a].apply(&one_r)));
        let a1 = |a: usize| self.act[a].apply(&one_r);
        let unital_items = unit_acts
            && (0..n).all(|a| {
                let d = self.hopf.coproduct(&ba[a]);
                (0..r).all(|x| {
                    (0..r).all(|y| {
                        let lhs = self.act[a].apply(&self.algebra.mul(&br[x], &br[y]));
                        let rhs = self.sum2(&d, |p, q| self.algebra.mul(&self.act[p].apply(&br[x]), &self.act[q].apply(&br[y])));
                        lhs == rhs
                    }) && (0..n).all(|b| {
                        let lhs = self.act[a].apply(&self.act[b].apply(&br[x]));
                        let iii = self.sum2(&self.hopf.t1_apply(&self.pair(a, b)), |p, q| {
                            self.algebra.mul(&a1(p), &self.act[q].apply(&br[x]))
                        });
                        let iv = !self.symmetric
                            || lhs
                                == self.sum2(&self.x.apply(&self.pair(b, a)), |p, q| {
                                    self.algebra.mul(&self.act[p].apply(&br[x]), &a1(q))
                                });
                        lhs == iii && iv
                    })
                })
            });
        let multiplier_ok = self.verify().iter().all(Check::passed);
        Ok(unit_acts && e_ok && unital_items == multiplier_ok)
    }
}

/// `A·R` together with the equalities it must satisfy.
#[derive(Clone, Debug)]
pub struct ActionImage {
    pub space: Subspace,
    pub algebra: Option<FiniteAlgebra>,
    pub nondegenerate: bool,
    pub equals_e_left: bool,
    pub equals_e_right: bool,
}

/// `a·m ∈ M(A·R)` for `a ∈ A`, `m ∈ M(R)`. Operators are `r×r` matrices
/// meaningful on `A·R`.
#[derive(Clone, Debug)]
pub struct ActionExtension<'a> {
    p: &'a PartialAction,
    pub space: Subspace,
    pub algebra: FiniteAlgebra,
    select: Mat,
    pairs: Vec<(usize, usize)>,
    sources: Vec<Vector>,
}

impl ActionExtension<'_> {
    /// `(c·x) ↦ a₍₁₎·(L(S(a₍₂₎)c·x))`.
    pub fn left(&self, a: &[Scalar], op: &Mat) -> std::result::Result<Mat, String> {
        let p = self.p;
        let r = p.dim_r();
        let targets: Vec<Vector> = self
            .pairs
            .iter()
            .map(|&(c, x)| {
                let mut out = zeros(r);
                for (k, coef) in support(a) {
                    let t = p.sum2(&p.t1_inv.apply(&p.pair(k, c)), |s, q| p.act[s].apply(&op.apply(&p.act[q].apply(&unit_vector(r, x)))));
                    linalg::axpy(&mut out, coef, &t);
                }
                out
            })
            .collect();
        let t = operator_from_spanning(&self.space, &self.sources, &targets, r).ok_or("a·m is not well defined on A·R")?;
        Ok(t.mul(&self.select))
    }

    /// `(c·x) ↦ a₍₂₎·(R(S⁻¹(a₍₁₎)c·x))`.
    pub fn right(&self, a: &[Scalar], op: &Mat) -> std::result::Result<Mat, String> {
        let p = self.p;
        let r = p.dim_r();
        let targets: Vec<Vector> = self
            .pairs
            .iter()
            .map(|&(c, x)| {
                let mut out = zeros(r);
                for (k, coef) in support(a) {
                    let t = p.sum2(&p.x_inv.apply(&p.pair(c, k)), |s, q| p.act[q].apply(&op.apply(&p.act[s].apply(&unit_vector(r, x)))));
                    linalg::axpy(&mut out, coef, &t);
                }
                out
            })
            .collect();
        let t = operator_from_spanning(&self.space, &self.sources, &targets, r).ok_or("a·m is not well defined on A·R")?;
        Ok(t.mul(&self.select))
    }

    /// `a·m` as a multiplier of `A·R` in its echelon coordinates.
    pub fn apply(&self, a: &[Scalar], m: &Multiplier) -> std::result::Result<Multiplier, String> {
        Ok(Multiplier { left: self.on_space(&self.left(a, &m.left)?), right: self.on_space(&self.right(a, &m.right)?) })
    }

    /// Restriction of an operator on `R` that preserves `A·R`.
    pub fn on_space(&self, op: &Mat) -> Mat {
        self.select.mul(op).mul(&self.space.basis_matrix().transpose())
    }
}

/// `b⊗a ↦ Δ(a)(b⊗1)`, index `b·n + a`.
pub fn delta_cover_left(hopf: &FiniteHopf) -> Mat {
    let n = hopf.dim();
    let cols: Vec<Vector> = (0..n * n)
        .map(|k| {
            let (b, a) = (k / n, k % n);
            hopf.tensor_mul(&hopf.coproduct(&unit_vector(n, a)), &kron(&unit_vector(n, b), hopf.unit()))
        })
        .collect();
    Mat::from_columns(&cols, n * n)
}

/// A `b` with `a_i b = a_i = b a_i` satisfying an extra predicate, searched
/// among the sums of basis elements in the supports of the `a_i`, then the
/// unit.
fn local_unit_with(
    hopf: &FiniteHopf,
    set: &[Vector],
    ok: impl Fn(&[Scalar]) -> bool,
) -> Option<Vector> {
    let alg = hopf.algebra();
    let is_unit_for = |b: &[Scalar]| set.iter().all(|a| alg.mul(a, b) == *a && alg.mul(b, a) == *a);
    let mut candidates = Vec::new();
    if let Some(b) = alg.find_local_unit(set) {
        candidates.push(b);
    }
    candidates.push(hopf.unit().clone());
    candidates.into_iter().find(|b| is_unit_for(b) && ok(b))
}

fn labels<G: Group>(group: &G, set: &[G::Elem]) -> String {
    set.iter().map(|g| group.label(g)).collect::<Vec<_>>().join(", ")
}

/// `λ(δ_g) = 1/|N|` on `N`, zero elsewhere.
pub fn subgroup_average<G: Group>(group: &G, field: Field, subset: &[G::Elem]) -> Result<Vector> {
    if !is_subgroup(group, subset) {
        return Err(Error::hypothesis("N is a subgroup", format!("N = {{{}}}", labels(group, subset))));
    }
    let elems = group.elements().ok_or_else(|| Error::Unsupported("infinite group".into()))?;
    let w = field.ratio(1, subset.len() as i64).map_err(|_| {
        Error::hypothesis("char 𝕜 ∤ |N|", format!("|N| = {} in {field}", subset.len()))
    })?;
    Ok(elems.iter().map(|g| if subset.contains(g) { w.clone() } else { Scalar::zero() }).collect())
}

/// `δ_p▷h = δ_p(h)h`: the global action of `A_G` on `𝕜G`.
pub fn function_algebra_on_group_algebra<G: Group>(group: &G) -> Result<Vec<Mat>> {
    let elems = group.elements().ok_or_else(|| Error::Unsupported("infinite group".into()))?;
    let n = elems.len();
    Ok((0..n).map(|p| Mat::from_fn(n, n, |i, j| if i == p && j == p { Scalar::one() } else { Scalar::zero() })).collect())
}

/// `g▷δ_h = δ_{gh}`: the global action of `𝕜G` on `A_G`.
pub fn group_algebra_on_function_algebra<G: Group>(group: &G) -> Result<Vec<Mat>> {
    let elems = group.elements().ok_or_else(|| Error::Unsupported("infinite group".into()))?;
    let n = elems.len();
    let idx = |g: &G::Elem| elems.iter().position(|e| e == g).expect("closed");
    Ok(elems
        .iter()
        .map(|g| {
            let cols: Vec<Vector> = elems.iter().map(|h| unit_vector(n, idx(&group.op(g, h)))).collect();
            Mat::from_columns(&cols, n)
        })
        .collect())
}

/// `f_N = (1/|N|) Σ_{n∈N} n` in `𝕜G`.
pub fn group_algebra_average<G: Group>(group: &G, field: Field, subset: &[G::Elem]) -> Result<Vector> {
    subgroup_average(group, field, subset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Cyclic;
    use crate::hopf::{FunctionAlgebra, GroupAlgebra};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn a_z(n: u32) -> FiniteHopf {
        FiniteHopf::materialize(&FunctionAlgebra::new(Cyclic::new(n), Field::Rational)).unwrap()
    }

    #[test]
    fn lambda_actions_verify() {
        let g = Cyclic::new(4);
        let a = a_z(4);
        let r = FiniteAlgebra::diagonal(2);
        let lambda = subgroup_average(&g, Field::Rational, &[0, 2]).unwrap();
        let p = PartialAction::from_functional(&a, &r, &lambda, true).unwrap();
        let checks = p.verify();
        assert!(checks.iter().all(Check::passed), "{checks:#?}");
        assert!(!p.is_global());
        let eps = a.counit_vector().clone();
        let glob = PartialAction::from_functional(&a, &r, &eps, true).unwrap();
        assert!(glob.is_global());
        assert!(glob.verify().iter().all(Check::passed));
        let g2 = Cyclic::new(2);
        let lambda = subgroup_average(&g2, Field::Rational, &[0, 1]).unwrap();
        assert_eq!(lambda, vec![q(1, 2), q(1, 2)]);
        assert!(PartialAction::from_functional(&a_z(2), &r, &lambda, true).is_ok());
    }

    #[test]
    fn corrupted_e_fails_axiom_ii() {
        let a = a_z(4);
        let r = FiniteAlgebra::diagonal(2);
        let lambda = subgroup_average(&Cyclic::new(4), Field::Rational, &[0, 2]).unwrap();
        let p = PartialAction::from_functional(&a, &r, &lambda, true).unwrap();
        let broken = p.with_e(vec![Multiplier::zero(2); 4]);
        let failing: Vec<String> = broken.verify().into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failing.iter().any(|n| n.starts_with("axiom (ii)")), "{failing:?}");
    }

    #[test]
    fn induced_on_group_algebra() {
        let g = Cyclic::new(4);
        let a = a_z(4);
        let kg = FiniteHopf::materialize(&GroupAlgebra::new(g.clone(), Field::Rational)).unwrap();
        let glob = PartialAction::global("▷", a, kg.algebra().clone(), function_algebra_on_group_algebra(&g).unwrap()).unwrap();
        assert!(glob.verify().iter().all(Check::passed));
        let f_n = group_algebra_average(&g, Field::Rational, &[0, 2]).unwrap();
        let p = PartialAction::induced(&glob, &f_n).unwrap();
        assert!(p.symmetric);
        assert!(p.verify().iter().all(Check::passed), "{:#?}", p.verify());
        assert!(!p.is_global());
        assert!(p.verify_ar().iter().all(Check::passed));
        assert!(p.verify_extension().iter().all(Check::passed), "{:#?}", p.verify_extension());
        assert_eq!(p.check_unital_equivalence(), Ok(true));
    }

    #[test]
    fn translation_on_function_algebra() {
        let g = Cyclic::new(4);
        let kg = FiniteHopf::materialize(&GroupAlgebra::new(g.clone(), Field::Rational)).unwrap();
        let ag = a_z(4);
        let glob = PartialAction::global("▷", kg, ag.algebra().clone(), group_algebra_on_function_algebra(&g).unwrap()).unwrap();
        assert!(glob.verify().iter().all(Check::passed), "{:#?}", glob.verify());
        let one_u: Vector = (0..4).map(|i| if i < 2 { Scalar::one() } else { Scalar::zero() }).collect();
        let p = PartialAction::induced(&glob, &one_u).unwrap();
        assert!(p.verify().iter().all(Check::passed), "{:#?}", p.verify());
        assert!(p.verify_extension().iter().all(Check::passed));
    }
}
