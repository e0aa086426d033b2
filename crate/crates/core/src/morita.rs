//! Smash products, (co)invariants, the Morita context of a restrict
//! symmetric partial coaction and the partial Galois map.
//!
//! Elements of `R#H` are vectors indexed by `(x, t) ↦ x·h + t`. Inside
//! the context, `P = Â·R` carries its echelon coordinates and
//! `S = P#Â` the coordinates `(i, t) ↦ i·n + t`.

use crate::action::PartialAction;
use crate::algebra::{FiniteAlgebra, Multiplier, MultiplierAlgebra};
use crate::coaction::PartialCoaction;
use crate::duality::dualize_coaction;
use crate::error::{Error, Result};
use crate::hopf::{modular_element, DualHopf, ModularElement};
use crate::linalg::{self, kron, support, unit_vector, zeros, Mat, Quotient, Subspace, Vector};
use crate::report::{first_failure, Check, Scope};
use crate::scalar::Scalar;

/// `R#H` for a partial action of `H` on `R`.
#[derive(Clone, Debug)]
pub struct SmashProduct {
    labels: Vec<String>,
    r: usize,
    h: usize,
    products: Vec<Vector>,
}

/// `(x#a)(y#b) = x(a₍₁₎·y)#a₍₂₎b`, with `a₍₁₎⊗a₍₂₎b = T1(a⊗b)`.
pub fn build_smash(p: &PartialAction) -> SmashProduct {
    let (r, h) = (p.dim_r(), p.dim_a());
    let d = r * h;
    let br = p.algebra.basis();
    let ba = p.hopf.algebra().basis();
    // a₍₁₎·y for every (a, b, y), shared across x
    let mut products = Vec::with_capacity(d * d);
    for i in 0..d {
        let (x, a) = (i / h, i % h);
        for j in 0..d {
            let (y, b) = (j / h, j % h);
            let mut out = zeros(d);
            for (k, c) in support(&p.hopf.t1_apply(&kron(&ba[a], &ba[b]))) {
                let (s, t) = (k / h, k % h);
                let xy = p.algebra.mul(&br[x], &p.action_matrix(s).apply(&br[y]));
                for (z, v) in support(&xy) {
                    out[z * h + t] = &out[z * h + t] + &(c * v);
                }
            }
            products.push(out);
        }
    }
    let labels = (0..d).map(|i| format!("{}#{}", p.algebra.labels()[i / h], p.hopf.labels()[i % h])).collect();
    SmashProduct { labels, r, h, products }
}

impl SmashProduct {
    pub fn dim(&self) -> usize {
        self.r * self.h
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = zeros(d);
        for (i, a) in support(u) {
            for (j, b) in support(v) {
                linalg::axpy(&mut out, &(a * b), &self.products[i * d + j]);
            }
        }
        out
    }

    /// `x#a`.
    pub fn element(&self, x: &[Scalar], a: &[Scalar]) -> Vector {
        kron(x, a)
    }

    pub fn format(&self, u: &[Scalar]) -> String {
        crate::algebra::format_combination(&self.labels, u)
    }

    /// Nonzero `u` with `vu = 0` for every basis `v`, if any.
    pub fn left_annihilator(&self) -> Option<Vector> {
        let d = self.dim();
        let basis: Vec<Vector> = (0..d).map(|i| unit_vector(d, i)).collect();
        let rows: Vec<Vector> = basis
            .iter()
            .flat_map(|v| {
                let m = Mat::from_columns(&basis.iter().map(|u| self.mul(v, u)).collect::<Vec<_>>(), d);
                (0..d).map(move |k| m.row(k).to_vec())
            })
            .collect();
        let stacked = Mat::from_rows(rows, d).expect("rows");
        stacked.kernel().basis().first().cloned()
    }

    pub fn verify(&self) -> Vec<Check> {
        let d = self.dim();
        let e = |i: usize| unit_vector(d, i);
        let ex = Scope::Exhaustive;
        vec![
            Check::run("smash product associative", "smash.associative", &ex, || {
                first_failure((0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k)))), |&(i, j, k)| {
                    let lhs = self.mul(&self.products[i * d + j], &e(k));
                    let rhs = self.mul(&e(i), &self.products[j * d + k]);
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("({})({})({})", self.labels[i], self.labels[j], self.labels[k]))
                    }
                })
            }),
            Check::run("smash product left nondegenerate", "smash.left-nondegenerate", &ex, || match self.left_annihilator() {
                None => Ok(()),
                Some(u) => Err(format!("v·u = 0 for all v at u = {}", self.format(&u))),
            }),
        ]
    }

    pub fn algebra(&self) -> Result<FiniteAlgebra> {
        let d = self.dim();
        Ok(FiniteAlgebra::from_fn(self.labels.clone(), |i, j| self.products[i * d + j].clone())?)
    }
}

/// Kernel of a linear map `m ↦ residual(m)` over the basis of `M(R)`,
/// in `M(R)` coordinates.
fn solve_over(mr: &MultiplierAlgebra, residual: impl Fn(&Multiplier) -> Vector) -> Subspace {
    let cols: Vec<Vector> = mr.basis().iter().map(residual).collect();
    let rows = cols.first().map(Vec::len).unwrap_or(0);
    if rows == 0 {
        return Subspace::full(mr.dim());
    }
    Mat::from_columns(&cols, rows).kernel()
}

fn flat(ms: &[Mat]) -> Vector {
    ms.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// `m⊗1` as a multiplier of `R⊗A`.
fn tensor_one(m: &Multiplier, n: usize) -> Multiplier {
    Multiplier { left: m.left.kron(&Mat::identity(n)), right: m.right.kron(&Mat::identity(n)) }
}

/// `R^{coA}` in the coordinates of `M(R)`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    /// Solutions of `w·(mx) = m(w·x)`, `w·(xm) = (w·x)m`.
    pub space: Subspace,
    /// Solutions of `ρ(m) = (m⊗1)E = E(m⊗1)`.
    pub by_definition: Subspace,
    pub basis: Vec<Multiplier>,
}

impl Coinvariants {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn agree(&self) -> bool {
        self.space == self.by_definition
    }

    pub fn contains(&self, mr: &MultiplierAlgebra, m: &Multiplier) -> bool {
        mr.coordinates(m).is_some_and(|c| self.space.contains(&c))
    }

    pub fn check(&self) -> Check {
        Check::of_bool("coinvariant characterizations agree", "coinvariants.cross-check", self.agree(), || {
            format!("action system gives dim {}, ρ(m) = (m⊗1)E = E(m⊗1) gives dim {}", self.space.dim(), self.by_definition.dim())
        })
    }
}

/// Coinvariants of a symmetric partial coaction, solved through the dual
/// action and cross-checked against `ρ(m) = (m⊗1)E = E(m⊗1)`.
pub fn coinvariants(c: &PartialCoaction) -> Result<Coinvariants> {
    let dual = dualize_coaction(c)?;
    coinvariants_with(c, &dual.action, &c.algebra.multiplier_algebra())
}

fn coinvariants_with(c: &PartialCoaction, act: &PartialAction, mr: &MultiplierAlgebra) -> Result<Coinvariants> {
    let n = c.dim_a();
    let ops: Vec<&Mat> = (0..n).map(|w| act.action_matrix(w)).collect();
    let space = solve_over(mr, |m| {
        let parts: Vec<Mat> = ops
            .iter()
            .flat_map(|w| [w.mul(&m.left).sub(&m.left.mul(w)), w.mul(&m.right).sub(&m.right.mul(w))])
            .collect();
        flat(&parts)
    });
    let ext = c.extension()?;
    let images: Vec<Multiplier> = mr.basis().iter().map(|m| ext.apply(m)).collect::<std::result::Result<_, _>>().map_err(Error::CrossCheck)?;
    let residuals: Vec<Vector> = mr
        .basis()
        .iter()
        .zip(&images)
        .map(|(m, rm)| {
            let m1 = tensor_one(m, n);
            let a = rm.flatten();
            let b = m1.mul(c.e()).flatten();
            let e = c.e().mul(&m1).flatten();
            linalg::sub(&a, &b).into_iter().chain(linalg::sub(&a, &e)).collect()
        })
        .collect();
    let by_definition = match residuals.first() {
        Some(v) => Mat::from_columns(&residuals, v.len()).kernel(),
        None => Subspace::full(0),
    };
    let basis = space.basis().iter().map(|v| mr.combine(v)).collect();
    Ok(Coinvariants { space, by_definition, basis })
}

/// `R^{A̲}` in the coordinates of `M(R)`.
#[derive(Clone, Debug)]
pub struct Invariants {
    pub space: Subspace,
    pub basis: Vec<Multiplier>,
    pub checks: Vec<Check>,
}

/// `{m : a·m = m|_{A·R}(a·1) = (a·1)m|_{A·R}}` for a symmetric partial
/// action; refuses when `A·R` is degenerate.
pub fn invariants(p: &PartialAction) -> Result<Invariants> {
    if !p.symmetric {
        return Err(Error::hypothesis("action symmetric", "symmetric = false"));
    }
    let ext = p.extension()?;
    let mr = p.algebra.multiplier_algebra();
    let (n, r) = (p.dim_a(), p.dim_r());
    let ba = p.hopf.algebra().basis();
    let one = Multiplier::identity(r);
    let a_one: Vec<Multiplier> = ba.iter().map(|a| ext.apply(a, &one)).collect::<std::result::Result<_, _>>().map_err(Error::CrossCheck)?;
    let a_m: Vec<Vec<Multiplier>> = mr
        .basis()
        .iter()
        .map(|m| ba.iter().map(|a| ext.apply(a, m)).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<_, _>>()
        .map_err(Error::CrossCheck)?;
    let restricted: Vec<Multiplier> = mr
        .basis()
        .iter()
        .map(|m| m.restrict(&ext.space).ok_or_else(|| Error::CrossCheck("m does not preserve A·R".into())))
        .collect::<Result<_>>()?;
    let cols: Vec<Vector> = (0..mr.dim())
        .map(|k| {
            let m = &restricted[k];
            (0..n)
                .flat_map(|a| {
                    let am = a_m[k][a].flatten();
                    let l = linalg::sub(&am, &m.mul(&a_one[a]).flatten());
                    let rr = linalg::sub(&am, &a_one[a].mul(m).flatten());
                    l.into_iter().chain(rr)
                })
                .collect()
        })
        .collect();
    let space = match cols.first() {
        Some(v) if !v.is_empty() => Mat::from_columns(&cols, v.len()).kernel(),
        _ => Subspace::full(mr.dim()),
    };

    // {m : a·(xm) = (a·x)m, a·(mx) = m(a·x)}
    let ops: Vec<&Mat> = (0..n).map(|a| p.action_matrix(a)).collect();
    let strong = solve_over(&mr, |m| {
        let parts: Vec<Mat> =
            ops.iter().flat_map(|w| [w.mul(&m.left).sub(&m.left.mul(w)), w.mul(&m.right).sub(&m.right.mul(w))]).collect();
        flat(&parts)
    });
    // a·(m(1·x)) = m(a·x), over the pairs where a·(1·x) = a·x
    let one_h = p.hopf.unit().clone();
    let br = p.algebra.basis();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..r).map(move |x| (a, x)))
        .filter(|&(a, x)| p.act(&ba[a], &p.act(&one_h, &br[x])) == p.act(&ba[a], &br[x]))
        .collect();
    let weak = solve_over(&mr, |m| {
        pairs
            .iter()
            .flat_map(|&(a, x)| {
                let lhs = p.act(&ba[a], &m.left.apply(&p.act(&one_h, &br[x])));
                let rhs = m.left.apply(&p.act(&ba[a], &br[x]));
                linalg::sub(&lhs, &rhs)
            })
            .collect()
    });
    let checks = vec![
        Check::of_bool("equivariant multipliers are invariant", "invariants.lower-bound", strong.is_subspace_of(&space), || {
            format!("M(R) coordinates {:?}", strong.first_outside(&space).map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
        }),
        Check::of_bool("invariants satisfy a·(m(1·x)) = m(a·x)", "invariants.upper-bound", space.is_subspace_of(&weak), || {
            format!("M(R) coordinates {:?}", space.first_outside(&weak).map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()))
        }),
    ];
    let basis = space.basis().iter().map(|v| mr.combine(v)).collect();
    Ok(Invariants { space, basis, checks })
}

/// The Morita context of a restrict symmetric partial coaction.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    pub coaction: PartialCoaction,
    pub dual: DualHopf,
    /// The `Â`-action on `R`.
    pub action: PartialAction,
    pub modular: ModularElement,
    pub restrict_witness: Vector,
    pub multipliers: MultiplierAlgebra,
    pub coinvariants: Coinvariants,
    /// `P = Â·R`.
    pub space: Subspace,
    pub smash: SmashProduct,
    /// `V = E(P⊗A)`.
    pub corner: Subspace,
    /// `B = S/K` with `K` the elements vanishing on `V`.
    pub b: Quotient,
    pub hypotheses: Vec<Check>,
    phi: Vector,
    /// `S⁻¹(â_t^δ)` in dual coordinates.
    twisted: Vec<Vector>,
    /// Values `â_t(e_k)`, column `t`.
    evaluation: Mat,
    /// Dual coordinates of `φ(e_k _)`.
    left_hat: Vec<Vector>,
}

impl MoritaContext {
    /// Builds the context, refusing unless the coaction is symmetric,
    /// reduced and restrict, `R² = R`, and `Â·R` is nondegenerate.
    pub fn build(c: &PartialCoaction) -> Result<MoritaContext> {
        let (r, n) = (c.dim_r(), c.dim_a());
        if !c.symmetric {
            return Err(Error::hypothesis("coaction symmetric", "symmetric = false"));
        }
        let products = Subspace::from_vectors(r, {
            let b = c.algebra.basis();
            b.iter().flat_map(|x| b.iter().map(|y| c.algebra.mul(x, y))).collect::<Vec<_>>()
        });
        if products.dim() != r {
            return Err(Error::hypothesis("R² = R", format!("dim R² = {} < dim R = {r}", products.dim())));
        }
        let br = c.algebra.basis();
        let ba = c.hopf.algebra().basis();
        let reduced_target = Subspace::from_vectors(
            r * n,
            br.iter().flat_map(|x| ba.iter().map(move |a| kron(x, a))).map(|u| c.e().apply_right(&u)).collect::<Vec<_>>(),
        );
        for (x, ex) in br.iter().enumerate() {
            for (y, ey) in br.iter().enumerate() {
                let v = c.tensor_algebra().mul(&kron(ex, c.hopf.unit()), &c.rho(ey));
                if !reduced_target.contains(&v) {
                    return Err(Error::hypothesis(
                        "(R⊗1)ρ(R) ⊆ (R⊗A)E",
                        format!("x = {}, y = {}", c.algebra.labels()[x], c.algebra.labels()[y]),
                    ));
                }
            }
        }
        let multipliers = c.algebra.multiplier_algebra();
        let restrict_witness = match &c.restrict_witness {
            Some(a) => {
                c.check_restrict_witness(a, &multipliers).map_err(|w| Error::hypothesis("(ι⊗φ)(E(1⊗a)) = 1 on Ω", w))?;
                a.clone()
            }
            None => c
                .find_restrict_witness()
                .ok_or_else(|| Error::hypothesis("(ι⊗φ)(E(1⊗a)) = 1 on Ω", "no basis element of A is a witness"))?,
        };
        let cd = dualize_coaction(c)?;
        let (dual, action) = (cd.dual, cd.action);
        let ar = action.compute_ar();
        if !ar.nondegenerate {
            return Err(Error::hypothesis("Â·R nondegenerate", "product on Â·R is degenerate or not closed"));
        }
        let space = ar.space.clone();
        let coinvariants = coinvariants_with(c, &action, &multipliers)?;
        let modular = modular_element(&c.hopf)?;
        let phi = c.hopf.integral_vector().cloned().ok_or_else(|| Error::Unsupported("no integral".into()))?;
        let twisted = (0..n).map(|t| dual.hopf.antipode_inv(&dual.twist(&ba[t], &modular))).collect();
        let evaluation = Mat::from_columns(&(0..n).map(|t| dual.evaluate(&ba[t])).collect::<Vec<_>>(), n);
        let left_hat =
            (0..n).map(|k| dual.from_values(&ba.iter().map(|x| linalg::dot(&phi, &c.hopf.mul(&ba[k], x))).collect::<Vec<_>>())).collect();
        let smash = build_smash(&action);
        let corner = Subspace::from_vectors(
            r * n,
            space.basis().iter().flat_map(|p| ba.iter().map(move |a| kron(p, a))).map(|u| c.e().apply_left(&u)).collect::<Vec<_>>(),
        );
        let mut ctx = MoritaContext {
            coaction: c.clone(),
            dual,
            action,
            modular,
            restrict_witness,
            multipliers,
            coinvariants,
            space,
            smash,
            corner,
            b: Quotient::new(0, Subspace::zero(0))?,
            hypotheses: Vec::new(),
            phi,
            twisted,
            evaluation,
            left_hat,
        };
        let s = ctx.dim_s();
        let cols: Vec<Vector> = (0..s).map(|i| ctx.on_corner(&ctx.embed_s(&unit_vector(s, i)))).collect();
        let rows = ctx.corner.dim() * r;
        let kernel = if rows == 0 { Subspace::full(s) } else { Mat::from_columns(&cols, rows).kernel() };
        ctx.b = Quotient::new(s, kernel)?;
        ctx.hypotheses = vec![
            Check::of_bool("coaction symmetric", "morita.hypothesis.symmetric", true, String::new),
            Check::of_bool("coaction reduced", "morita.hypothesis.reduced", true, String::new),
            Check::of_bool("R² = R", "morita.hypothesis.idempotent", true, String::new),
            Check::of_bool("coaction restrict", "morita.hypothesis.restrict", true, String::new),
            Check::of_bool("Â·R nondegenerate", "morita.hypothesis.nondegenerate", true, String::new),
        ];
        Ok(ctx)
    }

    pub fn dim_r(&self) -> usize {
        self.coaction.dim_r()
    }

    pub fn dim_a(&self) -> usize {
        self.coaction.dim_a()
    }

    pub fn dim_p(&self) -> usize {
        self.space.dim()
    }

    /// `dim P#Â`.
    pub fn dim_s(&self) -> usize {
        self.dim_p() * self.dim_a()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    /// `P#Â` coordinates to `R#Â` coordinates.
    pub fn embed_s(&self, u: &[Scalar]) -> Vector {
        let n = self.dim_a();
        let mut out = zeros(self.dim_r() * n);
        for (k, c) in support(u) {
            let (i, t) = (k / n, k % n);
            for (x, v) in support(&self.space.basis()[i]) {
                out[x * n + t] = &out[x * n + t] + &(c * v);
            }
        }
        out
    }

    /// `R#Â` coordinates to `P#Â` coordinates, if the first legs lie in `P`.
    pub fn to_s(&self, u: &[Scalar]) -> Option<Vector> {
        let (r, n, dp) = (self.dim_r(), self.dim_a(), self.dim_p());
        let mut out = zeros(dp * n);
        for t in 0..n {
            let col: Vector = (0..r).map(|x| u[x * n + t].clone()).collect();
            let coords = self.space.coordinates(&col)?;
            for (i, c) in coords.into_iter().enumerate() {
                out[i * n + t] = c;
            }
        }
        Some(out)
    }

    /// The class in `B` of an element of `R#Â` with first legs in `P`.
    pub fn to_b(&self, u: &[Scalar]) -> Option<Vector> {
        self.to_s(u).map(|s| self.b.project(&s))
    }

    /// Representative in `R#Â` of an element of `B`.
    pub fn from_b(&self, q: &[Scalar]) -> Vector {
        self.embed_s(&self.b.section(q))
    }

    /// Columns of `u ∈ R#Â`, one per dual basis element.
    fn legs(&self, u: &[Scalar]) -> Vec<Vector> {
        let (r, n) = (self.dim_r(), self.dim_a());
        (0..n).map(|t| (0..r).map(|x| u[x * n + t].clone()).collect()).collect()
    }

    fn mul_r(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.coaction.algebra.mul(x, y)
    }

    /// `x#f` acting on `V`: `v = Σ v_k⊗e_k ↦ Σ x v_k f(e_k)`, flattened
    /// over the basis of `V`.
    pub fn on_corner(&self, u: &[Scalar]) -> Vector {
        let (r, n) = (self.dim_r(), self.dim_a());
        let legs = self.legs(u);
        self.corner
            .basis()
            .iter()
            .flat_map(|v| {
                let mut out = zeros(r);
                for (t, x) in legs.iter().enumerate() {
                    if linalg::is_zero(x) {
                        continue;
                    }
                    for k in 0..n {
                        let f = self.evaluation.get(k, t);
                        if f.is_zero() {
                            continue;
                        }
                        let vk: Vector = (0..r).map(|y| v[y * n + k].clone()).collect();
                        linalg::axpy(&mut out, f, &self.mul_r(x, &vk));
                    }
                }
                out
            })
            .collect()
    }

    /// Product in `B`.
    pub fn mul_b(&self, p: &[Scalar], q: &[Scalar]) -> Vector {
        let prod = self.smash.mul(&self.from_b(p), &self.from_b(q));
        self.to_b(&prod).expect("P#Â is closed under the product")
    }

    /// `(x#â)▷y = x(â·y)`.
    pub fn act_left(&self, u: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim_r());
        for (t, x) in self.legs(u).iter().enumerate() {
            if !linalg::is_zero(x) {
                let ay = self.action.action_matrix(t).apply(y);
                out = linalg::add(&out, &self.mul_r(x, &ay));
            }
        }
        out
    }

    /// `x◁(y#â) = S⁻¹(â^δ)·(xy)`.
    pub fn act_right(&self, x: &[Scalar], u: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim_r());
        for (t, y) in self.legs(u).iter().enumerate() {
            if !linalg::is_zero(y) {
                out = linalg::add(&out, &self.action.act(&self.twisted[t], &self.mul_r(x, y)));
            }
        }
        out
    }

    /// `(x, y) = (ι⊗φ)ρ(xy)`, an element of `R`.
    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim_a();
        let rho = self.coaction.rho(&self.mul_r(x, y));
        (0..self.dim_r()).map(|i| linalg::dot(&rho[i * n..(i + 1) * n], &self.phi)).collect()
    }

    /// `[x, y] = xy⁽⁰⁾#φ(y⁽¹⁾ _)` in `R#Â` coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let (r, n) = (self.dim_r(), self.dim_a());
        let u = self.coaction.tensor_algebra().mul(&kron(x, self.coaction.hopf.unit()), &self.coaction.rho(y));
        let mut out = zeros(r * n);
        for k in 0..n {
            let leg: Vector = (0..r).map(|i| u[i * n + k].clone()).collect();
            if !linalg::is_zero(&leg) {
                out = linalg::add(&out, &kron(&leg, &self.left_hat[k]));
            }
        }
        out
    }

    /// `β(x⊗y) = (x⊗1)ρ(y)`.
    pub fn beta(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.coaction.tensor_algebra().mul(&kron(x, self.coaction.hopf.unit()), &self.coaction.rho(y))
    }

    /// `α((x⊗a)E) = x#φ(a _)` applied to an element of `(P⊗A)E`.
    pub fn alpha(&self, w: &[Scalar]) -> Vector {
        let (r, n) = (self.dim_r(), self.dim_a());
        let mut out = zeros(r * n);
        for k in 0..n {
            let leg: Vector = (0..r).map(|i| w[i * n + k].clone()).collect();
            if !linalg::is_zero(&leg) {
                out = linalg::add(&out, &kron(&leg, &self.left_hat[k]));
            }
        }
        out
    }

    /// `(P⊗A)E`.
    pub fn e_image(&self) -> Subspace {
        let ba = self.coaction.hopf.algebra().basis();
        Subspace::from_vectors(
            self.dim_r() * self.dim_a(),
            self.space.basis().iter().flat_map(|p| ba.iter().map(move |a| kron(p, a))).map(|u| self.coaction.e().apply_right(&u)).collect::<Vec<_>>(),
        )
    }

    fn p_basis(&self) -> &[Vector] {
        self.space.basis()
    }

    fn s_basis(&self) -> Vec<Vector> {
        let s = self.dim_s();
        (0..s).map(|i| self.embed_s(&unit_vector(s, i))).collect()
    }

    fn label_r(&self, x: &[Scalar]) -> String {
        self.coaction.algebra.format(x)
    }

    fn in_coinvariants(&self, v: &[Scalar]) -> bool {
        self.coinvariants.contains(&self.multipliers, &Multiplier::element(&self.coaction.algebra, v))
    }

    /// `(P⊗P)/span{xm⊗y − x⊗my}`, over `P` coordinates.
    pub fn balanced_over_coinvariants(&self) -> Result<Quotient> {
        let dp = self.dim_p();
        let pb = self.p_basis();
        let mut rels = Vec::new();
        for m in &self.coinvariants.basis {
            for x in pb {
                let xm = self.space.coordinates(&m.apply_right(x)).ok_or_else(|| Error::CrossCheck("Pm ⊄ P".into()))?;
                for (j, y) in pb.iter().enumerate() {
                    let my = self.space.coordinates(&m.apply_left(y)).ok_or_else(|| Error::CrossCheck("mP ⊄ P".into()))?;
                    let xc = self.space.coordinates(x).expect("basis");
                    rels.push(linalg::sub(&kron(&xm, &unit_vector(dp, j)), &kron(&xc, &my)));
                }
            }
        }
        Ok(Quotient::new(dp * dp, Subspace::from_vectors(dp * dp, rels))?)
    }

    /// `(P⊗P)/span{x◁u⊗z − x⊗u▷z}`, over `P` coordinates.
    pub fn balanced_over_b(&self) -> Result<Quotient> {
        let dp = self.dim_p();
        let pb = self.p_basis();
        let mut rels = Vec::new();
        for u in self.s_basis() {
            for x in pb {
                let xu = self.space.coordinates(&self.act_right(x, &u)).ok_or_else(|| Error::CrossCheck("P◁B ⊄ P".into()))?;
                let xc = self.space.coordinates(x).expect("basis");
                for z in pb {
                    let uz = self.space.coordinates(&self.act_left(&u, z)).ok_or_else(|| Error::CrossCheck("B▷P ⊄ P".into()))?;
                    let zc = self.space.coordinates(z).expect("basis");
                    rels.push(linalg::sub(&kron(&xu, &zc), &kron(&xc, &uz)));
                }
            }
        }
        Ok(Quotient::new(dp * dp, Subspace::from_vectors(dp * dp, rels))?)
    }

    /// `f(p_i, p_j)` as columns at `i·dp + j`.
    fn on_pairs(&self, rows: usize, f: impl Fn(&[Scalar], &[Scalar]) -> Vector) -> Mat {
        let pb = self.p_basis();
        let cols: Vec<Vector> = pb.iter().flat_map(|x| pb.iter().map(|y| f(x, y)).collect::<Vec<_>>()).collect();
        Mat::from_columns(&cols, rows)
    }

    /// `[ , ]` on `P⊗P` into `B`.
    pub fn bracket_matrix(&self) -> Result<Mat> {
        let cols: Option<Vec<Vector>> =
            self.p_basis().iter().flat_map(|x| self.p_basis().iter().map(move |y| (x, y))).map(|(x, y)| self.to_b(&self.bracket(x, y))).collect();
        let cols = cols.ok_or_else(|| Error::CrossCheck("[P, P] ⊄ P#Â".into()))?;
        Ok(Mat::from_columns(&cols, self.dim_b()))
    }

    /// `( , )` on `P⊗P` into `R^{coA}` coordinates.
    pub fn pairing_matrix(&self) -> Result<Mat> {
        let mut cols = Vec::new();
        for x in self.p_basis() {
            for y in self.p_basis() {
                let m = Multiplier::element(&self.coaction.algebra, &self.pairing(x, y));
                let c = self
                    .multipliers
                    .coordinates(&m)
                    .and_then(|c| self.coinvariants.space.coordinates(&c))
                    .ok_or_else(|| Error::CrossCheck(format!("({}, {}) is not coinvariant", self.label_r(x), self.label_r(y))))?;
                cols.push(c);
            }
        }
        Ok(Mat::from_columns(&cols, self.coinvariants.dim()))
    }

    /// Every identity of the context on basis elements.
    pub fn verify(&self) -> Vec<Check> {
        let ex = Scope::Exhaustive;
        let (r, n) = (self.dim_r(), self.dim_a());
        let pb: &[Vector] = self.p_basis();
        let sb_owned = self.s_basis();
        let sb: &[Vector] = &sb_owned;
        let mb: &[Multiplier] = &self.coinvariants.basis;
        let ba = self.coaction.hopf.algebra().basis();
        let lr = |x: &[Scalar]| self.label_r(x);
        let ls = |u: &[Scalar]| self.smash.format(u);
        let in_p = |v: &[Scalar]| self.space.contains(v);
        let mut checks = self.hypotheses.clone();

        checks.push(Check::run("(Â·R)#Â subalgebra of R#Â", "morita.smash.subalgebra", &ex, || {
            first_failure(sb.iter().flat_map(|u| sb.iter().map(move |v| (u, v))), |(u, v)| {
                let w = self.smash.mul(u, v);
                if self.to_s(&w).is_some() { Ok(()) } else { Err(format!("({})({})", ls(u), ls(v))) }
            })
        }));
        let kernel: Vec<Vector> = self.b.relations().basis().iter().map(|k| self.embed_s(k)).collect();
        checks.push(Check::run("elements vanishing on E((Â·R)⊗A) form an ideal", "morita.b.ideal", &ex, || {
            first_failure(kernel.iter().flat_map(|k| sb.iter().map(move |u| (k, u))), |(k, u)| {
                let zero = zeros(r * self.corner.dim());
                if self.on_corner(&self.smash.mul(k, u)) != zero {
                    return Err(format!("k·u with k = {}, u = {}", ls(k), ls(u)));
                }
                if self.on_corner(&self.smash.mul(u, k)) != zero {
                    return Err(format!("u·k with u = {}, k = {}", ls(u), ls(k)));
                }
                Ok(())
            })
        }));
        checks.push(Check::run("B associative", "morita.b.associative", &ex, || {
            let d = self.dim_b();
            let e = |i: usize| unit_vector(d, i);
            first_failure((0..d).flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k)))), |&(i, j, k)| {
                if self.mul_b(&self.mul_b(&e(i), &e(j)), &e(k)) == self.mul_b(&e(i), &self.mul_b(&e(j), &e(k))) {
                    Ok(())
                } else {
                    Err(format!("B basis ({i}, {j}, {k})"))
                }
            })
        }));
        checks.push(Check::run("B▷(Â·R) and (Â·R)◁B well defined", "morita.b.actions-well-defined", &ex, || {
            first_failure(kernel.iter().flat_map(|k| pb.iter().map(move |x| (k, x))), |(k, x)| {
                if !linalg::is_zero(&self.act_left(k, x)) {
                    return Err(format!("k▷x ≠ 0 for k = {}, x = {}", ls(k), lr(x)));
                }
                if !linalg::is_zero(&self.act_right(x, k)) {
                    return Err(format!("x◁k ≠ 0 for x = {}, k = {}", lr(x), ls(k)));
                }
                Ok(())
            })
        }));

        // the first bimodule
        checks.push(Check::run("(u v)▷z = u▷(v▷z)", "morita.bimodule-left.module", &ex, || {
            first_failure(sb.iter().flat_map(|u| sb.iter().flat_map(move |v| pb.iter().map(move |z| (u, v, z)))), |(u, v, z)| {
                let inner = self.act_left(v, z);
                if !in_p(&inner) {
                    return Err(format!("v▷z ∉ Â·R for v = {}, z = {}", ls(v), lr(z)));
                }
                if self.act_left(&self.smash.mul(u, v), z) == self.act_left(u, &inner) {
                    Ok(())
                } else {
                    Err(format!("u = {}, v = {}, z = {}", ls(u), ls(v), lr(z)))
                }
            })
        }));
        checks.push(Check::run("(z◁m)◁m′ = z◁(mm′), z◁1 = z", "morita.bimodule-left.right-module", &ex, || {
            first_failure(pb.iter().flat_map(|z| mb.iter().flat_map(move |m| mb.iter().map(move |m2| (z, m, m2)))), |(z, m, m2)| {
                let zm = m.apply_right(z);
                if !in_p(&zm) {
                    return Err(format!("zm ∉ Â·R for z = {}", lr(z)));
                }
                if m2.apply_right(&zm) != m.mul(m2).apply_right(z) {
                    return Err(format!("z = {}", lr(z)));
                }
                Ok(())
            })?;
            if self.coinvariants.contains(&self.multipliers, &Multiplier::identity(r)) {
                Ok(())
            } else {
                Err("1 ∉ R^{coA}".into())
            }
        }));
        checks.push(Check::run("(u▷z)◁m = u▷(z◁m)", "morita.bimodule-left.bimodule", &ex, || {
            first_failure(sb.iter().flat_map(|u| pb.iter().flat_map(move |z| mb.iter().map(move |m| (u, z, m)))), |(u, z, m)| {
                if m.apply_right(&self.act_left(u, z)) == self.act_left(u, &m.apply_right(z)) {
                    Ok(())
                } else {
                    Err(format!("u = {}, z = {}", ls(u), lr(z)))
                }
            })
        }));
        checks.push(Check::run("B▷(Â·R) = Â·R", "morita.bimodule-left.unitary", &ex, || {
            let span = Subspace::from_vectors(r, sb.iter().flat_map(|u| pb.iter().map(move |z| self.act_left(u, z))).collect::<Vec<_>>());
            if span == self.space { Ok(()) } else { Err(format!("dim B▷P = {}, dim P = {}", span.dim(), self.dim_p())) }
        }));

        // the second bimodule
        checks.push(Check::run("(x◁u)◁v = x◁(u v)", "morita.bimodule-right.module", &ex, || {
            first_failure(pb.iter().flat_map(|x| sb.iter().flat_map(move |u| sb.iter().map(move |v| (x, u, v)))), |(x, u, v)| {
                let inner = self.act_right(x, u);
                if !in_p(&inner) {
                    return Err(format!("x◁u ∉ Â·R for x = {}, u = {}", lr(x), ls(u)));
                }
                if self.act_right(&inner, v) == self.act_right(x, &self.smash.mul(u, v)) {
                    Ok(())
                } else {
                    Err(format!("x = {}, u = {}, v = {}", lr(x), ls(u), ls(v)))
                }
            })
        }));
        checks.push(Check::run("m▷(m′▷x) = (mm′)▷x", "morita.bimodule-right.left-module", &ex, || {
            first_failure(mb.iter().flat_map(|m| mb.iter().flat_map(move |m2| pb.iter().map(move |x| (m, m2, x)))), |(m, m2, x)| {
                let inner = m2.apply_left(x);
                if !in_p(&inner) {
                    return Err(format!("mx ∉ Â·R for x = {}", lr(x)));
                }
                if m.apply_left(&inner) == m.mul(m2).apply_left(x) { Ok(()) } else { Err(format!("x = {}", lr(x))) }
            })
        }));
        checks.push(Check::run("(m▷x)◁u = m▷(x◁u)", "morita.bimodule-right.bimodule", &ex, || {
            first_failure(mb.iter().flat_map(|m| pb.iter().flat_map(move |x| sb.iter().map(move |u| (m, x, u)))), |(m, x, u)| {
                if self.act_right(&m.apply_left(x), u) == m.apply_left(&self.act_right(x, u)) {
                    Ok(())
                } else {
                    Err(format!("x = {}, u = {}", lr(x), ls(u)))
                }
            })
        }));
        checks.push(Check::run("(Â·R)◁B = Â·R", "morita.bimodule-right.unitary", &ex, || {
            let span = Subspace::from_vectors(r, pb.iter().flat_map(|x| sb.iter().map(move |u| self.act_right(x, u))).collect::<Vec<_>>());
            if span == self.space { Ok(()) } else { Err(format!("dim P◁B = {}, dim P = {}", span.dim(), self.dim_p())) }
        }));

        // ( , )
        checks.push(Check::run("(x, y) ∈ R^{coA}", "morita.round.coinvariant", &ex, || {
            first_failure(pb.iter().flat_map(|x| pb.iter().map(move |y| (x, y))), |(x, y)| {
                if self.in_coinvariants(&self.pairing(x, y)) { Ok(()) } else { Err(format!("x = {}, y = {}", lr(x), lr(y))) }
            })
        }));
        checks.push(Check::run("(m▷x, y) = m(x, y), (x, y◁m) = (x, y)m", "morita.round.bilinear", &ex, || {
            first_failure(mb.iter().flat_map(|m| pb.iter().flat_map(move |x| pb.iter().map(move |y| (m, x, y)))), |(m, x, y)| {
                let v = self.pairing(x, y);
                if self.pairing(&m.apply_left(x), y) != m.apply_left(&v) {
                    return Err(format!("left, x = {}, y = {}", lr(x), lr(y)));
                }
                if self.pairing(x, &m.apply_right(y)) != m.apply_right(&v) {
                    return Err(format!("right, x = {}, y = {}", lr(x), lr(y)));
                }
                Ok(())
            })
        }));
        checks.push(Check::run("(x◁u, z) = (x, u▷z)", "morita.round.balanced", &ex, || {
            first_failure(pb.iter().flat_map(|x| sb.iter().flat_map(move |u| pb.iter().map(move |z| (x, u, z)))), |(x, u, z)| {
                if self.pairing(&self.act_right(x, u), z) == self.pairing(x, &self.act_left(u, z)) {
                    Ok(())
                } else {
                    Err(format!("x = {}, u = {}, z = {}", lr(x), ls(u), lr(z)))
                }
            })
        }));

        // [ , ]
        let b_of = |u: &[Scalar]| self.to_b(u);
        checks.push(Check::run("[x, y] ∈ (Â·R)#Â", "morita.square.range", &ex, || {
            first_failure(pb.iter().flat_map(|x| pb.iter().map(move |y| (x, y))), |(x, y)| {
                if self.to_s(&self.bracket(x, y)).is_some() { Ok(()) } else { Err(format!("x = {}, y = {}", lr(x), lr(y))) }
            })
        }));
        checks.push(Check::run("u[y, z] = [u▷y, z], [y, z]u = [y, z◁u]", "morita.square.bilinear", &ex, || {
            first_failure(sb.iter().flat_map(|u| pb.iter().flat_map(move |y| pb.iter().map(move |z| (u, y, z)))), |(u, y, z)| {
                let yz = self.bracket(y, z);
                if b_of(&self.smash.mul(u, &yz)) != b_of(&self.bracket(&self.act_left(u, y), z)) {
                    return Err(format!("left, u = {}, y = {}, z = {}", ls(u), lr(y), lr(z)));
                }
                if b_of(&self.smash.mul(&yz, u)) != b_of(&self.bracket(y, &self.act_right(z, u))) {
                    return Err(format!("right, u = {}, y = {}, z = {}", ls(u), lr(y), lr(z)));
                }
                Ok(())
            })
        }));
        checks.push(Check::run("[x◁m, y] = [x, m▷y]", "morita.square.balanced", &ex, || {
            first_failure(pb.iter().flat_map(|x| mb.iter().flat_map(move |m| pb.iter().map(move |y| (x, m, y)))), |(x, m, y)| {
                if b_of(&self.bracket(&m.apply_right(x), y)) == b_of(&self.bracket(x, &m.apply_left(y))) {
                    Ok(())
                } else {
                    Err(format!("x = {}, y = {}", lr(x), lr(y)))
                }
            })
        }));

        let triples = || pb.iter().flat_map(|x| pb.iter().flat_map(move |y| pb.iter().map(move |z| (x, y, z))));
        checks.push(Check::run("[x, y]▷z = x◁(y, z)", "morita.compatibility.first", &ex, || {
            first_failure(triples(), |(x, y, z)| {
                let lhs = self.act_left(&self.bracket(x, y), z);
                let rhs = self.mul_r(x, &self.pairing(y, z));
                if lhs == rhs { Ok(()) } else { Err(format!("x = {}, y = {}, z = {}: {} vs {}", lr(x), lr(y), lr(z), lr(&lhs), lr(&rhs))) }
            })
        }));
        checks.push(Check::run("(x, y)▷z = x◁[y, z]", "morita.compatibility.second", &ex, || {
            first_failure(triples(), |(x, y, z)| {
                let lhs = self.mul_r(&self.pairing(x, y), z);
                let rhs = self.act_right(x, &self.bracket(y, z));
                if lhs == rhs { Ok(()) } else { Err(format!("x = {}, y = {}, z = {}: {} vs {}", lr(x), lr(y), lr(z), lr(&lhs), lr(&rhs))) }
            })
        }));

        let hopf = &self.coaction.hopf;
        checks.push(Check::run("φ(S(a)) = φ(aδ)", "morita.modular.phi-antipode", &ex, || {
            first_failure(0..n, |&a| {
                let lhs = linalg::dot(&self.phi, &hopf.antipode(&ba[a]));
                let rhs = linalg::dot(&self.phi, &hopf.mul(&ba[a], &self.modular.delta));
                if lhs == rhs { Ok(()) } else { Err(format!("a = {}: {lhs} vs {rhs}", hopf.labels()[a])) }
            })
        }));
        checks.push(Check::run("â^δ = φ(_ δa)", "morita.modular.twist", &ex, || {
            first_failure(0..n, |&a| {
                let tw = self.dual.twist(&ba[a], &self.modular);
                let values = self.dual.evaluate(&tw);
                let expected: Vector = ba.iter().map(|c| linalg::dot(&self.phi, &hopf.mul(c, &hopf.mul(&self.modular.delta, &ba[a])))).collect();
                if values == expected { Ok(()) } else { Err(format!("a = {}", hopf.labels()[a])) }
            })
        }));
        checks
    }

    /// `(x, y)` for the first basis element `x` of `Â·R`.
    pub fn sample_pairing(&self) -> Option<(String, String)> {
        let x = self.p_basis().first()?;
        Some((format!("({}, {})", self.label_r(x), self.label_r(x)), self.label_r(&self.pairing(x, x))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Bijective,
    SurjectiveOnly,
    Neither,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Bijective => "bijective",
            Verdict::SurjectiveOnly => "surjective-only",
            Verdict::Neither => "neither",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `β : P⊗_{R^{coA}}P → (P⊗A)E` on computed bases.
#[derive(Clone, Debug)]
pub struct GaloisMap {
    pub domain: Quotient,
    pub codomain: Subspace,
    /// Columns are `β` of the quotient basis in codomain coordinates.
    pub matrix: Mat,
    pub rank: usize,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
}

impl GaloisMap {
    pub fn surjective(&self) -> bool {
        self.rank == self.codomain.dim()
    }

    pub fn bijective(&self) -> bool {
        self.surjective() && self.rank == self.domain.dim()
    }
}

pub fn galois_map(ctx: &MoritaContext) -> Result<GaloisMap> {
    let domain = ctx.balanced_over_coinvariants()?;
    let codomain = ctx.e_image();
    let rn = ctx.dim_r() * ctx.dim_a();
    let full = ctx.on_pairs(rn, |x, y| ctx.beta(x, y));
    let dp = ctx.dim_p();
    let lands = (0..dp * dp).find(|&k| !codomain.contains(&full.column(k)));
    let well_defined = domain.relations().basis().iter().find(|v| !linalg::is_zero(&full.apply(v)));
    let checks = vec![
        Check::of_bool("β lands in ((Â·R)⊗A)E", "galois.beta.range", lands.is_none(), || {
            let k = lands.unwrap_or(0);
            format!("x = {}, y = {}", ctx.label_r(&ctx.p_basis()[k / dp]), ctx.label_r(&ctx.p_basis()[k % dp]))
        }),
        Check::of_bool("β well defined on the balanced tensor", "galois.beta.balanced", well_defined.is_none(), || {
            "a relation xm⊗y − x⊗my maps to a nonzero element".into()
        }),
    ];
    if lands.is_some() {
        return Err(Error::CrossCheck("β leaves ((Â·R)⊗A)E".into()));
    }
    let cols: Vec<Vector> = (0..domain.dim())
        .map(|q| codomain.coordinates(&full.apply(&domain.section(&unit_vector(domain.dim(), q)))).expect("checked above"))
        .collect();
    let matrix = Mat::from_columns(&cols, codomain.dim());
    let rank = matrix.rank();
    let verdict = if rank == codomain.dim() {
        if rank == domain.dim() { Verdict::Bijective } else { Verdict::SurjectiveOnly }
    } else {
        Verdict::Neither
    };
    Ok(GaloisMap { domain, codomain, matrix, rank, verdict, checks })
}

/// The three Galois predicates computed independently.
#[derive(Clone, Debug)]
pub struct GaloisEquivalence {
    pub beta_surjective: bool,
    pub bracket_surjective: bool,
    pub beta_bijective: bool,
    pub round_surjective: bool,
    pub checks: Vec<Check>,
}

impl GaloisEquivalence {
    pub fn consistent(&self) -> bool {
        self.beta_surjective == self.bracket_surjective && self.bracket_surjective == self.beta_bijective
    }
}

pub fn check_galois_equivalence(ctx: &MoritaContext) -> Result<GaloisEquivalence> {
    let beta = galois_map(ctx)?;
    let domain = &beta.domain;
    let bracket_full = ctx.bracket_matrix()?;
    let bracket = bracket_full.mul(&domain.section_matrix());
    let bracket_rank = bracket.rank();
    let bracket_surjective = bracket_rank == ctx.dim_b();
    let bracket_balanced = domain.relations().basis().iter().all(|v| linalg::is_zero(&bracket_full.apply(v)));

    // α on the codomain of β, [ , ] = α∘β
    let alpha_cols: Option<Vec<Vector>> = beta.codomain.basis().iter().map(|w| ctx.to_b(&ctx.alpha(w))).collect();
    let alpha = alpha_cols.map(|c| Mat::from_columns(&c, ctx.dim_b()));
    let factorization = alpha.as_ref().map(|a| a.mul(&beta.matrix) == bracket);
    let alpha_bijective = alpha.as_ref().map(|a| a.rows() == a.cols() && a.rank() == a.cols());

    let round_domain = ctx.balanced_over_b()?;
    let round_full = ctx.pairing_matrix()?;
    let round = round_full.mul(&round_domain.section_matrix());
    let round_rank = round.rank();
    let round_surjective = round_rank == ctx.coinvariants.dim();
    let round_balanced = round_domain.relations().basis().iter().all(|v| linalg::is_zero(&round_full.apply(v)));

    let beta_surjective = beta.surjective();
    let beta_bijective = beta.bijective();
    let mut checks = beta.checks.clone();
    checks.push(Check::of_bool("[ , ] well defined on the balanced tensor", "galois.square.balanced", bracket_balanced, || {
        "a relation xm⊗y − x⊗my maps to a nonzero element of B".into()
    }));
    checks.push(Check::of_bool("( , ) well defined on the balanced tensor", "galois.round.balanced", round_balanced, || {
        "a relation x◁u⊗z − x⊗u▷z maps to a nonzero coinvariant".into()
    }));
    checks.push(Check::of_bool("[ , ] = α∘β", "galois.alpha.factorization", factorization == Some(true), || match factorization {
        None => "α leaves (Â·R)#Â".into(),
        _ => "matrices differ".into(),
    }));
    checks.push(Check::of_bool("α bijective", "galois.alpha.bijective", alpha_bijective == Some(true), || {
        format!("dim ((Â·R)⊗A)E = {}, dim B = {}", beta.codomain.dim(), ctx.dim_b())
    }));
    checks.push(Check::of_bool(
        "β surjective ⇔ [ , ] surjective ⇔ β bijective",
        "galois.equivalence",
        beta_surjective == bracket_surjective && bracket_surjective == beta_bijective,
        || format!("β surjective = {beta_surjective}, [ , ] surjective = {bracket_surjective}, β bijective = {beta_bijective}"),
    ));
    let both = bracket_surjective && round_surjective;
    checks.push(Check::of_bool("surjective pairings are injective", "galois.pairings.injective", !both || (bracket_rank == domain.dim() && round_rank == round_domain.dim()), || {
        format!("rank [ , ] = {bracket_rank} of {}, rank ( , ) = {round_rank} of {}", domain.dim(), round_domain.dim())
    }));
    Ok(GaloisEquivalence { beta_surjective, bracket_surjective, beta_bijective, round_surjective, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::group_algebra_on_function_algebra;
    use crate::group::Cyclic;
    use crate::hopf::{FiniteHopf, FunctionAlgebra, GroupAlgebra};
    use crate::scalar::Field;

    fn a_z(n: u32) -> FiniteHopf {
        FiniteHopf::materialize(&FunctionAlgebra::new(Cyclic::new(n), Field::Rational)).unwrap()
    }

    fn indicator(n: usize, set: &[usize]) -> Vector {
        (0..n).map(|i| if set.contains(&i) { Scalar::one() } else { Scalar::zero() }).collect()
    }

    fn concrete() -> PartialCoaction {
        let g = PartialCoaction::global_self(&a_z(4)).unwrap();
        PartialCoaction::induced(&g, &indicator(4, &[0, 2])).unwrap()
    }

    #[test]
    fn smash_of_half_lambda_action() {
        let a = a_z(2);
        let half = Scalar::from_ratio(1, 2);
        let r = FiniteAlgebra::diagonal(2);
        let p = PartialAction::from_functional(&a, &r, &[half.clone(), half.clone()], true).unwrap();
        let s = build_smash(&p);
        assert!(s.verify().iter().all(Check::passed));
        // oracle: (x#δ_p)(y#δ_q) = λ(δ_{p−q}) xy#δ_q = (1/2) xy#δ_q
        for (x, y, pp, q) in [(0, 0, 0, 1), (1, 1, 1, 0), (0, 1, 1, 1)] {
            let (ex, ey) = (unit_vector(2, x), unit_vector(2, y));
            let lhs = s.mul(&s.element(&ex, &unit_vector(2, pp)), &s.element(&ey, &unit_vector(2, q)));
            let rhs = linalg::scale(&half, &s.element(&r.mul(&ex, &ey), &unit_vector(2, q)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn smash_of_zero_algebra_is_empty() {
        let a = a_z(2);
        let r = FiniteAlgebra::zero_product(0);
        let p = PartialAction::from_functional(&a, &r, &[Scalar::one(), Scalar::zero()], true).unwrap();
        assert_eq!(build_smash(&p).dim(), 0);
    }

    #[test]
    fn coinvariants_of_concrete_example_are_the_unit() {
        let c = concrete();
        let co = coinvariants(&c).unwrap();
        assert!(co.agree());
        assert_eq!(co.dim(), 1);
        assert_eq!(co.basis[0], Multiplier::identity(2).scale(&co.basis[0].left.get(0, 0).clone()));
    }

    #[test]
    fn coinvariants_of_global_and_trivial_coactions() {
        let a = a_z(4);
        let g = PartialCoaction::global_self(&a).unwrap();
        let co = coinvariants(&g).unwrap();
        assert!(co.agree());
        assert_eq!(co.dim(), 1);
        // ρ(x) = x⊗δ_e: every multiplier is coinvariant
        let r = FiniteAlgebra::diagonal(2);
        let t = PartialCoaction::from_projection(&a, &r, &indicator(4, &[0]), true).unwrap();
        let co = coinvariants(&t).unwrap();
        assert!(co.agree());
        assert_eq!(co.dim(), r.multiplier_algebra().dim());
    }

    #[test]
    fn invariants_of_lambda_and_global_actions() {
        let a = a_z(2);
        let half = Scalar::from_ratio(1, 2);
        let r = FiniteAlgebra::diagonal(2);
        let p = PartialAction::from_functional(&a, &r, &[half.clone(), half], true).unwrap();
        let inv = invariants(&p).unwrap();
        assert_eq!(inv.space.dim(), r.multiplier_algebra().dim());
        assert!(inv.checks.iter().all(Check::passed));

        // 𝕜ℤ/4 translating functions on ℤ/4: classical invariants are the constants
        let g = Cyclic::new(4);
        let kg = FiniteHopf::materialize(&GroupAlgebra::new(g.clone(), Field::Rational)).unwrap();
        let fa = a_z(4);
        let act = group_algebra_on_function_algebra(&g).unwrap();
        let p = PartialAction::global("translation", kg.clone(), fa.algebra().clone(), act).unwrap();
        let inv = invariants(&p).unwrap();
        assert!(inv.checks.iter().all(Check::passed));
        // oracle: R is unital, so m = m·1 and the condition reads a▷m = ε(a)m
        let mr = fa.algebra().multiplier_algebra();
        let one = fa.algebra().unit().unwrap();
        let classical = solve_over(&mr, |m| {
            let v = m.left.apply(&one);
            (0..4)
                .flat_map(|k| linalg::sub(&p.action_matrix(k).apply(&v), &linalg::scale(&kg.counit(&unit_vector(4, k)), &v)))
                .collect()
        });
        assert_eq!(inv.space, classical);
        assert_eq!(inv.space.dim(), 1);
    }

    #[test]
    fn concrete_example_context() {
        let c = concrete();
        let ctx = MoritaContext::build(&c).unwrap();
        let checks = ctx.verify();
        assert!(checks.iter().all(Check::passed), "{:#?}", checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        // (δ0, δ0) = (ι⊗φ)(δ0⊗δ0 + δ2⊗δ2) = f_N, the unit of L
        assert_eq!(ctx.pairing(&unit_vector(2, 0), &unit_vector(2, 0)), indicator(2, &[0, 1]));
        let eq = check_galois_equivalence(&ctx).unwrap();
        assert!(eq.checks.iter().all(Check::passed), "{:#?}", eq.checks);
        // coinvariants are contained in the invariants of the dual action
        let inv = invariants(&ctx.action).unwrap();
        assert!(ctx.coinvariants.space.is_subspace_of(&inv.space));
    }

    #[test]
    fn global_context_is_galois() {
        let g = PartialCoaction::global_self(&a_z(4)).unwrap();
        let ctx = MoritaContext::build(&g).unwrap();
        assert!(ctx.verify().iter().all(Check::passed));
        assert_eq!(ctx.dim_b(), 16);
        let beta = galois_map(&ctx).unwrap();
        assert_eq!(beta.verdict, Verdict::Bijective);
        let eq = check_galois_equivalence(&ctx).unwrap();
        assert!(eq.consistent() && eq.beta_bijective);
        assert!(eq.checks.iter().all(Check::passed));
    }

    #[test]
    fn corner_toy_is_not_galois() {
        let a = a_z(4);
        let c = PartialCoaction::from_projection(&a, &FiniteAlgebra::scalars(), &indicator(4, &[0, 2]), true).unwrap();
        let ctx = MoritaContext::build(&c).unwrap();
        assert!(ctx.verify().iter().all(Check::passed));
        let eq = check_galois_equivalence(&ctx).unwrap();
        assert!(!eq.beta_surjective && !eq.bracket_surjective && !eq.beta_bijective);
        assert!(eq.checks.iter().all(Check::passed));
    }

    #[test]
    fn trivial_coaction_context() {
        let a = a_z(4);
        let c = PartialCoaction::from_projection(&a, &FiniteAlgebra::diagonal(2), &indicator(4, &[0]), true).unwrap();
        let ctx = MoritaContext::build(&c).unwrap();
        assert!(ctx.verify().iter().all(Check::passed));
        let eq = check_galois_equivalence(&ctx).unwrap();
        assert!(eq.consistent());
        assert!(eq.checks.iter().all(Check::passed));
    }
}
