//! Duality between partial coactions of `A` and partial actions of `Â`.

use crate::action::PartialAction;
use crate::algebra::{operator_from_spanning, Multiplier};
use crate::coaction::PartialCoaction;
use crate::error::{Error, Result};
use crate::hopf::{DualHopf, FiniteHopf};
use crate::linalg::{self, kron, support, unit_vector, zeros, Mat, Subspace, Vector};
use crate::report::{first_failure, Check, Scope};
use crate::scalar::Scalar;

/// `(ι⊗χ)` on `R⊗A`.
fn slice(r: usize, chi: &[Scalar]) -> Mat {
    Mat::identity(r).kron(&Mat::from_rows(vec![chi.to_vec()], chi.len()).expect("row"))
}

/// `b` with `χ(b c) = χ(c a)` for all `c`, so that `χ(_ a) = χ(b _)`.
fn left_shift(hopf: &FiniteHopf, chi: &[Scalar], a: &[Scalar]) -> Option<Vector> {
    let n = hopf.dim();
    let basis = hopf.algebra().basis();
    let m = Mat::from_fn(n, n, |c, k| linalg::dot(chi, &hopf.mul(&basis[k], &basis[c])));
    let rhs: Vector = basis.iter().map(|c| linalg::dot(chi, &hopf.mul(c, a))).collect();
    linalg::solve(&m, &rhs).expect("square")
}

/// The `Â`-action obtained from a symmetric partial coaction.
#[derive(Clone, Debug)]
pub struct CoactionDual {
    pub dual: DualHopf,
    pub action: PartialAction,
}

/// `φ(_ a)·x = (ι⊗φ)(ρ(x)(1⊗a))`, `𝔢(φ(_ a))x = (ι⊗φ)(E(x⊗a))`,
/// `x𝔢(φ(b _)) = (ι⊗φ)((x⊗b)E)`.
pub fn dualize_coaction(c: &PartialCoaction) -> Result<CoactionDual> {
    if !c.symmetric {
        return Err(Error::hypothesis("source coaction symmetric", "symmetric = false"));
    }
    let phi = c.hopf.integral_vector().cloned().ok_or_else(|| Error::Unsupported("A has no integral".into()))?;
    let dual = DualHopf::new(&c.hopf)?;
    let (act, e) = coaction_to_action_tables(c, &phi)?;
    let action = PartialAction::new(format!("dual of {}", c.name), dual.hopf.clone(), c.algebra.clone(), act, e, true)?;
    Ok(CoactionDual { dual, action })
}

/// Action and `𝔢` tables of `χ(_ e_i)` for a functional `χ` on `A`.
fn coaction_to_action_tables(c: &PartialCoaction, chi: &[Scalar]) -> Result<(Vec<Mat>, Vec<Multiplier>)> {
    let (r, n) = (c.dim_r(), c.dim_a());
    let sl = slice(r, chi);
    let br = c.algebra.basis();
    let ba = c.hopf.algebra().basis();
    let mut act = Vec::with_capacity(n);
    let mut e = Vec::with_capacity(n);
    for (i, a) in ba.iter().enumerate() {
        let cols: Vec<Vector> = br.iter().map(|x| sl.apply(&c.rho_t1(x, a))).collect();
        act.push(Mat::from_columns(&cols, r));
        let left: Vec<Vector> = br.iter().map(|x| sl.apply(&c.e().apply_left(&kron(x, a)))).collect();
        let b = left_shift(&c.hopf, chi, a).ok_or_else(|| {
            Error::hypothesis("χ(_ a) = χ(b _) solvable", format!("a = {}", c.hopf.labels()[i]))
        })?;
        let right: Vec<Vector> = br.iter().map(|x| sl.apply(&c.e().apply_right(&kron(x, &b)))).collect();
        e.push(Multiplier { left: Mat::from_columns(&left, r), right: Mat::from_columns(&right, r) });
    }
    Ok((act, e))
}

/// Which integral plays the role of `ψ` in the right-hand formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PsiChoice {
    /// `ψ = φ`, the left integral.
    #[default]
    Left,
    /// `ψ = φ∘S`, a right integral.
    Right,
}

impl PsiChoice {
    pub fn parse(s: &str) -> Option<PsiChoice> {
        match s {
            "left" | "phi" => Some(PsiChoice::Left),
            "right" | "phi-antipode" => Some(PsiChoice::Right),
            _ => None,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            PsiChoice::Left => "ψ = φ (left integral)",
            PsiChoice::Right => "ψ = φ∘S (right integral)",
        }
    }
}

/// Data exhibiting `𝔢 = f(_ b)` and the unit-like `k`.
#[derive(Clone, Debug)]
pub struct DualizeOptions {
    /// `f` on the basis of `A`; `None` means `f = 𝔢`.
    pub f: Option<Vec<Multiplier>>,
    pub b: Vector,
    pub k: Vector,
    pub psi: PsiChoice,
}

impl DualizeOptions {
    /// `f = 𝔢`, `b = k = 1_A`, `ψ = φ`.
    pub fn trivial(hopf: &FiniteHopf) -> DualizeOptions {
        DualizeOptions { f: None, b: hopf.unit().clone(), k: hopf.unit().clone(), psi: PsiChoice::Left }
    }
}

/// The partial `Â`-coaction on `A·R` obtained from a symmetric partial
/// action.
#[derive(Clone, Debug)]
pub struct ActionDual {
    pub dual: DualHopf,
    pub coaction: PartialCoaction,
    /// `A·R` inside `R`; the coaction uses its echelon coordinates.
    pub space: Subspace,
    pub hypotheses: Vec<Check>,
    pub psi: PsiChoice,
    /// Agreement of the `ψ`-side formula for `(1⊗ψ(_ b))ρ(a·x)`.
    pub psi_side: Check,
}

/// Checks the hypotheses for dualizing `p`.
pub fn dualize_action_hypotheses(p: &PartialAction, opts: &DualizeOptions) -> Vec<Check> {
    let ex = Scope::Exhaustive;
    let (n, r) = (p.dim_a(), p.dim_r());
    let hopf = &p.hopf;
    let ba = hopf.algebra().basis();
    let al = |a: usize| hopf.labels()[a].clone();
    let e_of = |v: &[Scalar]| p.e_of(v);
    let ar = p.compute_ar();
    let mut checks = Vec::new();
    checks.push(Check::of_bool("A·R nondegenerate", "duality.action.nondegenerate-image", ar.nondegenerate, || {
        "product on A·R is degenerate or not closed".into()
    }));
    checks.push(Check::run("𝔢 = f(_ b)", "duality.action.e-factor", &ex, || {
        first_failure(0..n, |&a| {
            let ab = hopf.mul(&ba[a], &opts.b);
            let fab = match &opts.f {
                None => e_of(&ab),
                Some(f) => Multiplier::combine(r, &ab, f),
            };
            if fab == *p.e(a) {
                Ok(())
            } else {
                Err(format!("a={}", al(a)))
            }
        })
    }));
    checks.push(Check::run("𝔢(a₍₁₎)𝔢(a₍₂₎) = 𝔢(a)", "duality.action.e-convolution", &ex, || {
        first_failure(0..n, |&a| {
            let mut conv = Multiplier::zero(r);
            for (k, c) in support(&hopf.coproduct(&ba[a])) {
                conv = conv.add(&p.e(k / n).mul(p.e(k % n)).scale(c));
            }
            if conv == *p.e(a) {
                Ok(())
            } else {
                Err(format!("a={}", al(a)))
            }
        })
    }));
    checks.push(Check::run("𝔢(k) = 1 on A·R", "duality.action.e-unit", &ex, || {
        if hopf.mul(&opts.k, &opts.b) != opts.b || hopf.mul(&opts.b, &opts.k) != opts.b {
            return Err(format!("kb = b = bk fails for k = {}", hopf.format(&opts.k)));
        }
        match e_of(&opts.k).restrict(&ar.space) {
            Some(m) if m.is_identity() => Ok(()),
            _ => Err(format!("𝔢({}) ≠ 1 on A·R", hopf.format(&opts.k))),
        }
    }));
    checks
}

/// `ρ(a·x)(1⊗φ(_ c)) = 𝔢(S⁻¹(c₍₂₎))(S⁻¹(c₍₁₎)a·x)⊗φ(_ c₍₃₎)` and
/// `E(1⊗φ(_ c)) = 𝔢(S⁻¹(c₍₁₎))⊗φ(_ c₍₂₎)`, with the right-hand `E` from
/// `(1⊗ψ(_ c))E = 𝔢(S(c₍₂₎))⊗ψ(_ c₍₁₎)`.
pub fn dualize_action(p: &PartialAction, opts: &DualizeOptions) -> Result<ActionDual> {
    if !p.symmetric {
        return Err(Error::hypothesis("source action symmetric", "symmetric = false"));
    }
    let hypotheses = dualize_action_hypotheses(p, opts);
    if let Some(c) = hypotheses.iter().find(|c| !c.passed()) {
        return Err(Error::hypothesis(c.name.clone(), c.witness.clone().unwrap_or_default()));
    }
    let hopf = &p.hopf;
    let dual = DualHopf::new(hopf)?;
    let (n, r) = (p.dim_a(), p.dim_r());
    let ext = p.extension()?;
    let space = ext.space.clone();
    let palg = ext.algebra.clone();
    let d = space.dim();
    let ba = hopf.algebra().basis();
    let br = p.algebra.basis();
    let to_p = |v: &[Scalar]| space.coordinates(v).ok_or_else(|| Error::CrossCheck("value leaves A·R".into()));
    let e_p: Vec<Multiplier> = (0..n)
        .map(|a| p.e(a).restrict(&space).ok_or_else(|| Error::hypothesis("𝔢(a) preserves A·R", hopf.labels()[a].clone())))
        .collect::<Result<_>>()?;
    let s_inv = |v: &[Scalar]| hopf.antipode_inv(v);

    // ρ(a·x)(1⊗φ(_ c)) in P⊗Â coordinates.
    let rho_cover = |a: &[Scalar], x: &[Scalar], c: &[Scalar]| -> Result<Vector> {
        let mut out = zeros(d * n);
        for (idx, coef) in support(&hopf.coproduct3(c)) {
            let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
            let inner = p.act(&hopf.mul(&s_inv(&ba[i]), a), x);
            let v = to_p(&p.e_of(&s_inv(&ba[j])).apply_left(&inner))?;
            linalg::axpy(&mut out, coef, &kron(&v, &ba[k]));
        }
        Ok(out)
    };
    // 1_Â = φ(_ u)
    let unit_hat = dual.hopf.unit().clone();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..r).map(move |x| (a, x))).collect();
    let sources: Vec<Vector> = pairs.iter().map(|&(a, x)| p.act(&ba[a], &br[x])).collect();
    let targets: Vec<Vector> =
        pairs.iter().map(|&(a, x)| rho_cover(&ba[a], &br[x], &unit_hat)).collect::<Result<_>>()?;
    let rho = operator_from_spanning(&space, &sources, &targets, d * n)
        .ok_or_else(|| Error::CrossCheck("ρ(a·x) depends on more than a·x".into()))?;
    let rho_cols = rho.columns();

    // E on P⊗Â.
    let pb = palg.basis();
    let mut e_left_cols = Vec::with_capacity(d * n);
    for y in &pb {
        for c in &ba {
            let mut out = zeros(d * n);
            for (idx, coef) in support(&hopf.coproduct(c)) {
                let (i, j) = (idx / n, idx % n);
                let m = Multiplier::combine(d, &s_inv(&ba[i]), &e_p);
                linalg::axpy(&mut out, coef, &kron(&m.apply_left(y), &ba[j]));
            }
            e_left_cols.push(out);
        }
    }
    let psi = psi_functional(hopf, opts.psi)?;
    // ψ(_ e_b) in Â coordinates, and its inverse.
    let psi_cols: Vec<Vector> = ba.iter().map(|b| dual.from_values(&ba.iter().map(|c| linalg::dot(&psi, &hopf.mul(c, b))).collect::<Vector>())).collect();
    let psi_mat = Mat::from_columns(&psi_cols, n);
    let psi_inv = psi_mat.inverse().ok_or_else(|| Error::hypothesis("a ↦ ψ(_ a) bijective", "singular"))?;
    let mut e_right_cols = Vec::with_capacity(d * n);
    for y in &pb {
        for w in 0..n {
            // φ(_ e_w) = Σ_b β_b ψ(_ e_b)
            let beta = psi_inv.column(w);
            let mut out = zeros(d * n);
            for (b, cb) in support(&beta) {
                for (idx, coef) in support(&hopf.coproduct(&ba[b])) {
                    let (i, j) = (idx / n, idx % n);
                    let m = Multiplier::combine(d, &hopf.antipode(&ba[j]), &e_p);
                    let term = kron(&m.apply_right(y), &psi_cols[i]);
                    linalg::axpy(&mut out, &(cb * coef), &term);
                }
            }
            e_right_cols.push(out);
        }
    }
    let e = Multiplier { left: Mat::from_columns(&e_left_cols, d * n), right: Mat::from_columns(&e_right_cols, d * n) };
    let mut coaction = PartialCoaction::new(format!("dual of {}", p.name), dual.hopf.clone(), palg, rho_cols, e, true)?;
    coaction.reduced = false;

    let psi_side = Check::run("ψ-side formula for (1⊗ψ(_ b))ρ(a·x)", "duality.action.psi-side", &Scope::Exhaustive, || {
        first_failure(pairs.iter(), |&&(a, x)| {
            let y = to_p(&p.act(&ba[a], &br[x])).map_err(|e| e.to_string())?;
            first_failure(0..n, |&b| {
                let lhs = coaction.rho_t2(&psi_cols[b], &y);
                let mut rhs = zeros(d * n);
                for (idx, coef) in support(&hopf.coproduct3(&ba[b])) {
                    let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
                    let inner = p.act(&hopf.mul(&hopf.antipode(&ba[k]), &ba[a]), &br[x]);
                    let v = to_p(&p.e_of(&hopf.antipode(&ba[j])).apply_right(&inner)).map_err(|e| e.to_string())?;
                    linalg::axpy(&mut rhs, coef, &kron(&v, &psi_cols[i]));
                }
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, x={}, b={}", hopf.labels()[a], p.algebra.labels()[x], hopf.labels()[b]))
                }
            })
        })
    });
    Ok(ActionDual { dual, coaction, space, hypotheses, psi: opts.psi, psi_side })
}

fn psi_functional(hopf: &FiniteHopf, choice: PsiChoice) -> Result<Vector> {
    let phi = hopf.integral_vector().cloned().ok_or_else(|| Error::Unsupported("A has no integral".into()))?;
    Ok(match choice {
        PsiChoice::Left => phi,
        PsiChoice::Right => hopf.antipode_matrix().transpose().apply(&phi),
    })
}

/// Dualizes the coaction of `bridge` back with `ψ̂` and compares with the
/// original action on `A·R`: `b·y = (ι⊗ψ̂)(ρ(y)(1⊗φ(_ S(b))))` and
/// `𝔢(b)y = (ι⊗ψ̂)(E(y⊗φ(_ S(b))))`.
pub fn roundtrip(p: &PartialAction, bridge: &ActionDual) -> Vec<Check> {
    let c = &bridge.coaction;
    let hopf = &p.hopf;
    let (n, d) = (hopf.dim(), bridge.space.dim());
    let sl = slice(d, bridge.dual.psi_hat_vector());
    let pb: Vec<Vector> = bridge.space.basis().to_vec();
    let coords = |v: &[Scalar]| bridge.space.coordinates(v);
    let ex = Scope::Exhaustive;
    let al = |b: usize| hopf.labels()[b].clone();
    let action = Check::run("round trip reproduces the action", "duality.roundtrip.action", &ex, || {
        first_failure(0..n, |&b| {
            let w = hopf.antipode(&unit_vector(n, b));
            first_failure(0..d, |&k| {
                let lhs = sl.apply(&c.rho_t1(&unit_vector(d, k), &w));
                let rhs = coords(&p.act(&unit_vector(n, b), &pb[k])).ok_or("b·y leaves A·R")?;
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("b={}, y = A·R basis {k}", al(b)))
                }
            })
        })
    });
    let e = Check::run("round trip reproduces 𝔢", "duality.roundtrip.e", &ex, || {
        first_failure(0..n, |&b| {
            let w = hopf.antipode(&unit_vector(n, b));
            first_failure(0..d, |&k| {
                let lhs = sl.apply(&c.e().apply_left(&kron(&unit_vector(d, k), &w)));
                let rhs = coords(&p.e(b).apply_left(&pb[k])).ok_or("𝔢(b)y leaves A·R")?;
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("b={}, y = A·R basis {k}", al(b)))
                }
            })
        })
    });
    vec![action, e]
}
