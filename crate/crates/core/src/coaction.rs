//! Partial comodule algebras `(R, ρ, E)` over a finite-dimensional
//! multiplier Hopf algebra.
//!
//! `R⊗A` is indexed by `(i, k) ↦ i·n + k` and `R⊗A⊗A` by
//! `(i, p, q) ↦ (i·n + p)·n + q`. Since `A` is unital, `ρ(x)` itself lies
//! in `R⊗A` and is stored as a column.

use crate::algebra::{operator_from_spanning, FiniteAlgebra, Multiplier, MultiplierAlgebra};
use crate::error::{Error, Result};
use crate::hopf::FiniteHopf;
use crate::linalg::{self, kron, unit_vector, zeros, Mat, Subspace, Vector};
use crate::report::{first_failure, Check, Scope};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct PartialCoaction {
    pub name: String,
    pub hopf: FiniteHopf,
    pub algebra: FiniteAlgebra,
    /// Column `x` is `ρ(e_x)` in `R⊗A`.
    rho: Mat,
    e: Multiplier,
    pub symmetric: bool,
    /// Whether the reduced conditions are part of the claim.
    pub reduced: bool,
    pub restrict_witness: Option<Vector>,
    ra: FiniteAlgebra,
}

/// `X = Σ_k m_k ⊗ e_k` with `m_k ∈ M(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMultiplier {
    pub legs: Vec<Multiplier>,
}

impl PartialCoaction {
    pub fn new(
        name: impl Into<String>,
        hopf: FiniteHopf,
        algebra: FiniteAlgebra,
        rho: Vec<Vector>,
        e: Multiplier,
        symmetric: bool,
    ) -> Result<PartialCoaction> {
        let (r, n) = (algebra.dim(), hopf.dim());
        if rho.len() != r || rho.iter().any(|v| v.len() != r * n) || e.dim() != r * n {
            return Err(Error::Spec(format!("coaction data does not match dim R = {r}, dim A = {n}")));
        }
        if let Err(w) = algebra.check_nondegenerate() {
            return Err(Error::hypothesis("R nondegenerate", format!("annihilator {}", algebra.format(&w))));
        }
        let ra = algebra.tensor(hopf.algebra());
        Ok(PartialCoaction {
            name: name.into(),
            rho: Mat::from_columns(&rho, r * n),
            hopf,
            algebra,
            e,
            symmetric,
            reduced: false,
            restrict_witness: None,
            ra,
        })
    }

    /// The coaction `ρ = Δ` of `A` on itself, with `E = 1⊗1`.
    pub fn global_self(hopf: &FiniteHopf) -> Result<PartialCoaction> {
        let n = hopf.dim();
        let rho = (0..n).map(|x| hopf.coproduct(&unit_vector(n, x))).collect();
        let mut c = PartialCoaction::new(
            format!("global self-coaction of {}", hopf.name()),
            hopf.clone(),
            hopf.algebra().clone(),
            rho,
            Multiplier::identity(n * n),
            true,
        )?;
        c.reduced = true;
        Ok(c)
    }

    /// `ρ(x) = x⊗m`, `E = 1⊗m`, refusing unless `m⊗m = (m⊗1)Δ(m)` and
    /// `m² = m` (and `m⊗m = Δ(m)(m⊗1)` when `symmetric`).
    pub fn from_projection(hopf: &FiniteHopf, algebra: &FiniteAlgebra, m: &[Scalar], symmetric: bool) -> Result<PartialCoaction> {
        if linalg::is_zero(m) {
            return Err(Error::hypothesis("m ≠ 0", "m = 0"));
        }
        let eps = hopf.counit(m);
        let mm = kron(m, m);
        let basis = hopf.algebra().basis();
        // covered: (m⊗1)Δ(m)(1⊗b) = (m⊗1)T1(m⊗b)
        for (bi, b) in basis.iter().enumerate() {
            let lhs = hopf.tensor_mul(&kron(m, hopf.unit()), &hopf.t1_apply(&kron(m, b)));
            if lhs != hopf.tensor_mul(&mm, &kron(hopf.unit(), b)) {
                return Err(Error::hypothesis(
                    "m⊗m = (m⊗1)Δ(m)",
                    format!("covered by 1⊗{}: (m⊗1)Δ(m)(1⊗b) = {}, ε(m) = {eps}", hopf.labels()[bi], hopf.format2(&lhs)),
                ));
            }
        }
        if hopf.mul(m, m) != m {
            return Err(Error::hypothesis("m² = m", format!("m² = {}, ε(m) = {eps}", hopf.format(&hopf.mul(m, m)))));
        }
        if symmetric {
            let lhs = hopf.tensor_mul(&hopf.coproduct(m), &kron(m, hopf.unit()));
            if lhs != mm {
                return Err(Error::hypothesis("m⊗m = Δ(m)(m⊗1)", format!("Δ(m)(m⊗1) = {}", hopf.format2(&lhs))));
            }
        }
        let r = algebra.dim();
        let rho = (0..r).map(|x| kron(&unit_vector(r, x), m)).collect();
        let e = Multiplier {
            left: Mat::identity(r).kron(&hopf.algebra().left_matrix(m)),
            right: Mat::identity(r).kron(&hopf.algebra().right_matrix(m)),
        };
        let mut c = PartialCoaction::new(
            format!("projection coaction x ↦ x⊗({})", hopf.format(m)),
            hopf.clone(),
            algebra.clone(),
            rho,
            e,
            symmetric,
        )?;
        c.reduced = true;
        Ok(c)
    }

    /// The partial coaction induced on `L = 1_L·R` by a global coaction:
    /// `ρ_L(l) = (1_L⊗1)ρ(l)`, `E = (1_L⊗1)ρ(1_L)`.
    pub fn induced(global: &PartialCoaction, unit_l: &[Scalar]) -> Result<PartialCoaction> {
        if !global.e.is_identity() {
            return Err(Error::hypothesis("source coaction is global", "E ≠ 1⊗1"));
        }
        if let Some(c) = global.verify().into_iter().find(|c| !c.passed()) {
            return Err(Error::hypothesis("source coaction verified", format!("{}: {}", c.name, c.witness.unwrap_or_default())));
        }
        let rr = &global.algebra;
        let (r, n) = (rr.dim(), global.hopf.dim());
        if rr.mul(unit_l, unit_l) != unit_l {
            return Err(Error::hypothesis("1_L idempotent", format!("1_L² = {}", rr.format(&rr.mul(unit_l, unit_l)))));
        }
        let space = Subspace::from_vectors(r, rr.basis().iter().map(|x| rr.mul(unit_l, x)));
        let sub = rr.subalgebra(&space).map_err(|_| Error::hypothesis("L is a subalgebra", "1_L·R not closed"))?;
        let l = space.dim();
        if space.basis().iter().any(|x| rr.mul(unit_l, x) != *x || rr.mul(x, unit_l) != *x) {
            return Err(Error::hypothesis("1_L is the unit of L", "1_L·x ≠ x for some x ∈ L"));
        }
        let central = rr.basis().iter().all(|x| rr.mul(unit_l, x) == rr.mul(x, unit_l));
        let to_l = |u: &[Scalar]| -> Result<Vector> {
            let mut out = zeros(l * n);
            for k in 0..n {
                let slice: Vector = (0..r).map(|i| u[i * n + k].clone()).collect();
                let c = space
                    .coordinates(&slice)
                    .ok_or_else(|| Error::hypothesis("(1_L⊗1)ρ(L) ⊆ L⊗A", "a leg leaves L"))?;
                for (i, v) in c.into_iter().enumerate() {
                    out[i * n + k] = v;
                }
            }
            Ok(out)
        };
        let left_l = rr.left_matrix(unit_l).kron(&Mat::identity(n));
        let rho = space
            .basis()
            .iter()
            .map(|x| to_l(&left_l.apply(&global.rho(x))))
            .collect::<Result<Vec<_>>>()?;
        let e_elem = to_l(&left_l.apply(&global.rho(unit_l)))?;
        let la = sub.algebra.tensor(global.hopf.algebra());
        let e = Multiplier::element(&la, &e_elem);
        let mut c = PartialCoaction::new(
            format!("coaction induced on ({})·R", rr.format(unit_l)),
            global.hopf.clone(),
            sub.algebra.clone(),
            rho,
            e,
            central,
        )?;
        c.reduced = central;
        Ok(c)
    }

    pub fn dim_r(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.hopf.dim()
    }

    pub fn tensor_algebra(&self) -> &FiniteAlgebra {
        &self.ra
    }

    pub fn e(&self) -> &Multiplier {
        &self.e
    }

    pub fn with_e(&self, e: Multiplier) -> PartialCoaction {
        PartialCoaction { e, ..self.clone() }
    }

    pub fn rho_matrix(&self) -> &Mat {
        &self.rho
    }

    pub fn rho(&self, x: &[Scalar]) -> Vector {
        self.rho.apply(x)
    }

    pub fn rho_multiplier(&self, x: &[Scalar]) -> Multiplier {
        Multiplier::element(&self.ra, &self.rho(x))
    }

    /// `u ↦ u(1⊗a)`.
    pub fn cover_right(&self, a: &[Scalar]) -> Mat {
        Mat::identity(self.dim_r()).kron(&self.hopf.algebra().right_matrix(a))
    }

    /// `u ↦ (1⊗a)u`.
    pub fn cover_left(&self, a: &[Scalar]) -> Mat {
        Mat::identity(self.dim_r()).kron(&self.hopf.algebra().left_matrix(a))
    }

    /// `ρ(x)(1⊗a)`.
    pub fn rho_t1(&self, x: &[Scalar], a: &[Scalar]) -> Vector {
        self.cover_right(a).apply(&self.rho(x))
    }

    /// `(1⊗a)ρ(x)`.
    pub fn rho_t2(&self, a: &[Scalar], x: &[Scalar]) -> Vector {
        self.cover_left(a).apply(&self.rho(x))
    }

    /// Columns `ρ(e_x)(1⊗e_a)` at `x·n + a`.
    pub fn rho_t1_matrix(&self) -> Mat {
        let (r, n) = (self.dim_r(), self.dim_a());
        let cols: Vec<Vector> = (0..r * n).map(|k| self.rho_t1(&unit_vector(r, k / n), &unit_vector(n, k % n))).collect();
        Mat::from_columns(&cols, r * n)
    }

    /// Columns `(1⊗e_a)ρ(e_x)` at `x·n + a`.
    pub fn rho_t2_matrix(&self) -> Mat {
        let (r, n) = (self.dim_r(), self.dim_a());
        let cols: Vec<Vector> = (0..r * n).map(|k| self.rho_t2(&unit_vector(n, k % n), &unit_vector(r, k / n))).collect();
        Mat::from_columns(&cols, r * n)
    }

    /// `ρ⊗ι` on `R⊗A`.
    pub fn rho_leg(&self) -> Mat {
        self.rho.kron(&Mat::identity(self.dim_a()))
    }

    /// `ι⊗Δ` on `R⊗A`.
    pub fn delta_leg(&self) -> Mat {
        let n = self.dim_a();
        let cols: Vec<Vector> = (0..n).map(|a| self.hopf.coproduct(&unit_vector(n, a))).collect();
        Mat::identity(self.dim_r()).kron(&Mat::from_columns(&cols, n * n))
    }

    fn format_ra(&self, u: &[Scalar]) -> String {
        self.ra.format(u)
    }

    fn format_raa(&self, u: &[Scalar]) -> String {
        let n = self.dim_a();
        let labels: Vec<String> = (0..self.dim_r() * n * n)
            .map(|k| format!("{}⊗{}", self.ra.labels()[k / n], self.hopf.labels()[k % n]))
            .collect();
        crate::algebra::format_combination(&labels, u)
    }

    /// Writes a multiplier of `R⊗A` as `Σ m_k⊗e_k` with `m_k ∈ M(R)`.
    pub fn decompose(&self, x: &Multiplier, mr: &MultiplierAlgebra) -> std::result::Result<TensorMultiplier, String> {
        let (r, n) = (self.dim_r(), self.dim_a());
        let one = self.hopf.unit();
        let basis_r = self.algebra.basis();
        let mut lefts = vec![Mat::zeros(r, r); n];
        let mut rights = vec![Mat::zeros(r, r); n];
        for (y, ey) in basis_r.iter().enumerate() {
            let yl = x.apply_left(&kron(ey, one));
            let yr = x.apply_right(&kron(ey, one));
            for k in 0..n {
                for i in 0..r {
                    lefts[k].set(i, y, yl[i * n + k].clone());
                    rights[k].set(i, y, yr[i * n + k].clone());
                }
            }
        }
        let legs: Vec<Multiplier> =
            lefts.into_iter().zip(rights).map(|(left, right)| Multiplier { left, right }).collect();
        let rebuilt = self.tensor_of(&legs);
        if rebuilt.left != x.left {
            return Err("left part is not of the form Σ m_k⊗e_k".into());
        }
        if rebuilt.right != x.right {
            return Err("right part is not of the form Σ m_k⊗e_k".into());
        }
        if let Some(k) = legs.iter().position(|m| !mr.contains(m)) {
            return Err(format!("leg at {} is not a multiplier of R", self.hopf.labels()[k]));
        }
        Ok(TensorMultiplier { legs })
    }

    /// `Σ m_k⊗e_k` as a multiplier of `R⊗A`.
    pub fn tensor_of(&self, legs: &[Multiplier]) -> Multiplier {
        let (r, n) = (self.dim_r(), self.dim_a());
        let mut out = Multiplier::zero(r * n);
        for (k, m) in legs.iter().enumerate() {
            let ek = unit_vector(n, k);
            let a = self.hopf.algebra();
            out = out.add(&Multiplier { left: m.left.kron(&a.left_matrix(&ek)), right: m.right.kron(&a.right_matrix(&ek)) });
        }
        out
    }

    /// `(ι⊗f)(Σ m_k⊗e_k) = Σ f(e_k)m_k` for a functional `f` on `A`.
    pub fn slice(&self, t: &TensorMultiplier, f: &[Scalar]) -> Multiplier {
        Multiplier::combine(self.dim_r(), f, &t.legs)
    }

    /// `j(1⊗a)` as a multiplier of `R⊗A`.
    pub fn one_tensor(&self, a: &[Scalar]) -> Multiplier {
        Multiplier { left: self.cover_left(a), right: self.cover_right(a) }
    }

    /// First basis pair with `E(y⊗a) ≠ y⊗a`, with the value of `E(y⊗a)`.
    pub fn non_global_witness(&self) -> Option<(String, String)> {
        let rn = self.dim_r() * self.dim_a();
        (0..rn).find_map(|k| {
            let v = unit_vector(rn, k);
            let ev = self.e.apply_left(&v);
            (ev != v).then(|| (format!("E({})", self.ra.labels()[k]), self.format_ra(&ev)))
        })
    }

    /// Ω = span{(ι⊗φ)(ρ(x)(1⊗a))}.
    pub fn omega(&self) -> Result<Subspace> {
        let (r, n) = (self.dim_r(), self.dim_a());
        let phi = self.hopf.integral_vector().ok_or_else(|| Error::Unsupported("no integral".into()))?.clone();
        let slice = Mat::identity(r).kron(&Mat::from_rows(vec![phi], n).expect("row"));
        Ok(Subspace::from_vectors(r, self.rho_t1_matrix().columns().iter().map(|c| slice.apply(c))))
    }

    /// `(ι⊗φ)(E(1⊗a))` as a multiplier of `R`.
    pub fn restrict_multiplier(&self, a: &[Scalar], mr: &MultiplierAlgebra) -> std::result::Result<Multiplier, String> {
        let phi = self.hopf.integral_vector().ok_or("no integral")?.clone();
        let t = self.decompose(&self.e.mul(&self.one_tensor(a)), mr)?;
        Ok(self.slice(&t, &phi))
    }

    pub fn check_restrict_witness(&self, a: &[Scalar], mr: &MultiplierAlgebra) -> std::result::Result<(), String> {
        let m = self.restrict_multiplier(a, mr)?;
        let omega = self.omega().map_err(|e| e.to_string())?;
        for w in omega.basis() {
            if m.apply_left(w) != *w {
                return Err(format!("(ι⊗φ)(E(1⊗a))·y ≠ y at y = {}", self.algebra.format(w)));
            }
            if m.apply_right(w) != *w {
                return Err(format!("y·(ι⊗φ)(E(1⊗a)) ≠ y at y = {}", self.algebra.format(w)));
            }
        }
        Ok(())
    }

    /// The first basis element of `A` witnessing the restrict condition.
    pub fn find_restrict_witness(&self) -> Option<Vector> {
        let mr = self.algebra.multiplier_algebra();
        let n = self.dim_a();
        (0..n).map(|i| unit_vector(n, i)).find(|a| self.check_restrict_witness(a, &mr).is_ok())
    }

    /// The full verification suite.
    pub fn verify(&self) -> Vec<Check> {
        let (r, n) = (self.dim_r(), self.dim_a());
        let rn = r * n;
        let ex = Scope::Exhaustive;
        let br = self.algebra.basis();
        let ba = self.hopf.algebra().basis();
        let rl = |x: usize| &self.algebra.labels()[x];
        let al = |a: usize| &self.hopf.labels()[a];
        let pairs = |p: usize, q: usize| (0..p).flat_map(move |i| (0..q).map(move |j| (i, j)));
        let mr = self.algebra.multiplier_algebra();
        let mut checks = Vec::new();

        checks.push(Check::run("ρ injective", "coaction.injective", &ex, || {
            let k = self.rho.kernel();
            match k.basis().first() {
                None => Ok(()),
                Some(w) => Err(format!("ρ({}) = 0", self.algebra.format(w))),
            }
        }));

        checks.push(Check::run("ρ multiplicative", "coaction.homomorphism", &ex, || {
            first_failure(pairs(r, r), |&(x, y)| {
                first_failure(0..n, |&a| {
                    let lhs = self.rho_t1(&self.algebra.mul(&br[x], &br[y]), &ba[a]);
                    let rhs = self.ra.mul(&self.rho(&br[x]), &self.rho_t1(&br[y], &ba[a]));
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("x={}, y={}, a={}", rl(x), rl(y), al(a)))
                    }
                })
            })
        }));

        checks.push(Check::run("E idempotent", "coaction.idempotent", &ex, || {
            if self.e.mul(&self.e) == self.e {
                Ok(())
            } else {
                Err("E² ≠ E".into())
            }
        }));

        checks.push(Check::run("E multiplier of R⊗A", "coaction.idempotent", &ex, || match self.e.compatibility_failure(&self.ra) {
            None => Ok(()),
            Some((i, j)) => Err(format!("u={}, v={}", self.ra.labels()[i], self.ra.labels()[j])),
        }));

        checks.push(Check::run("axiom (i): (1⊗A)E in M(R)⊗A", "coaction.axiom-i", &ex, || {
            first_failure(0..n, |&a| {
                self.decompose(&self.one_tensor(&ba[a]).mul(&self.e), &mr).map(|_| ()).map_err(|w| format!("a={}: {w}", al(a)))
            })
        }));
        checks.push(Check::run("axiom (i): E(1⊗A) in M(R)⊗A", "coaction.axiom-i", &ex, || {
            first_failure(0..n, |&a| {
                self.decompose(&self.e.mul(&self.one_tensor(&ba[a])), &mr).map(|_| ()).map_err(|w| format!("a={}: {w}", al(a)))
            })
        }));

        let t1 = self.rho_t1_matrix();
        let t2 = self.rho_t2_matrix();
        let img_t1 = t1.image();
        let img_t2 = t2.image();
        let img_el = self.e.left.image();
        let img_er = self.e.right.image();
        let fmt_out = |v: Option<&Vector>| v.map(|w| self.format_ra(w)).unwrap_or_default();
        checks.push(Check::run("axiom (ii): ρ(R)(1⊗A) ⊆ E(R⊗A)", "coaction.axiom-ii", &ex, || {
            if img_t1.is_subspace_of(&img_el) {
                Ok(())
            } else {
                Err(fmt_out(img_t1.first_outside(&img_el)))
            }
        }));
        checks.push(Check::run("axiom (ii): (1⊗A)ρ(R) ⊆ (R⊗A)E", "coaction.axiom-ii", &ex, || {
            if img_t2.is_subspace_of(&img_er) {
                Ok(())
            } else {
                Err(fmt_out(img_t2.first_outside(&img_er)))
            }
        }));

        let rho_leg = self.rho_leg();
        let delta_leg = self.delta_leg();
        let e_l1 = self.e.left.kron(&Mat::identity(n));
        let e_r1 = self.e.right.kron(&Mat::identity(n));
        let b_right = |b: usize| Mat::identity(rn).kron(&self.hopf.algebra().right_matrix(&ba[b]));
        let b_left = |b: usize| Mat::identity(rn).kron(&self.hopf.algebra().left_matrix(&ba[b]));
        let coassoc = |name: &str, anchor: &str, form: u8| {
            Check::run(name, anchor, &ex, || {
                first_failure(pairs(r, n), |&(x, b)| {
                    let rx = self.rho(&br[x]);
                    let dx = delta_leg.apply(&rx);
                    let (lhs, rhs) = match form {
                        1 => (rho_leg.apply(&self.rho_t1(&br[x], &ba[b])), b_right(b).apply(&e_l1.apply(&dx))),
                        2 => (rho_leg.apply(&self.rho_t2(&ba[b], &br[x])), b_left(b).apply(&e_l1.apply(&dx))),
                        3 => (rho_leg.apply(&self.rho_t1(&br[x], &ba[b])), b_right(b).apply(&e_r1.apply(&dx))),
                        _ => (rho_leg.apply(&self.rho_t2(&ba[b], &br[x])), b_left(b).apply(&e_r1.apply(&dx))),
                    };
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("x={}, b={}: {} vs {}", rl(x), al(b), self.format_raa(&lhs), self.format_raa(&rhs)))
                    }
                })
            })
        };
        checks.push(coassoc("axiom (iii): covered on the right", "coaction.axiom-iii.right-cover", 1));
        checks.push(coassoc("axiom (iii): covered on the left", "coaction.axiom-iii.left-cover", 2));
        if self.symmetric {
            checks.push(coassoc("axiom (iv): covered on the right", "coaction.axiom-iv.right-cover", 3));
            checks.push(coassoc("axiom (iv): covered on the left", "coaction.axiom-iv.left-cover", 4));
        }

        checks.push(Check::run("E absorbs ρ", "coaction.e-absorbs-rho", &ex, || {
            first_failure(0..r, |&x| {
                let m = self.rho_multiplier(&br[x]);
                if self.e.mul(&m) != m {
                    Err(format!("Eρ({}) ≠ ρ({})", rl(x), rl(x)))
                } else if m.mul(&self.e) != m {
                    Err(format!("ρ({})E ≠ ρ({})", rl(x), rl(x)))
                } else {
                    Ok(())
                }
            })
        }));

        checks.push(Check::run("counit law", "coaction.counit", &ex, || {
            let slice = Mat::identity(r).kron(&Mat::from_rows(vec![self.hopf.counit_vector().clone()], n).expect("row"));
            first_failure(0..r, |&x| {
                let v = slice.apply(&self.rho(&br[x]));
                if v == br[x] {
                    Ok(())
                } else {
                    Err(format!("(ι⊗ε)ρ({}) = {}", rl(x), self.algebra.format(&v)))
                }
            })
        }));

        checks.push(Check::run("ρ(R)(1⊗A) = E(R⊗A)", "coaction.image-equality", &ex, || {
            if img_t1 == img_el {
                Ok(())
            } else {
                Err(format!("dims {} vs {}; outside: {}", img_t1.dim(), img_el.dim(), fmt_out(img_el.first_outside(&img_t1))))
            }
        }));
        if self.symmetric {
            checks.push(Check::run("(1⊗A)ρ(R) = (R⊗A)E", "coaction.image-equality", &ex, || {
                if img_t2 == img_er {
                    Ok(())
                } else {
                    Err(format!("dims {} vs {}", img_t2.dim(), img_er.dim()))
                }
            }));
        }

        let global_axioms = img_t1.dim() == rn
            && img_t2.dim() == rn
            && (0..r).all(|x| {
                let rx = self.rho(&br[x]);
                rho_leg.apply(&rx) == delta_leg.apply(&rx)
            });
        checks.push(Check::of_bool("E = 1⊗1 iff global", "coaction.global-characterization", self.e.is_identity() == global_axioms, || {
            format!("E = 1⊗1 is {}, global axioms hold is {global_axioms}", self.e.is_identity())
        }));

        if self.reduced {
            checks.extend(self.verify_reduced(&mr));
        }
        if let Some(a) = &self.restrict_witness {
            checks.push(Check::run("restrict witness", "coaction.restrict", &ex, || {
                self.check_restrict_witness(a, &mr).map_err(|w| format!("a = {}: {w}", self.hopf.format(a)))
            }));
        }
        checks
    }

    fn verify_reduced(&self, _mr: &MultiplierAlgebra) -> Vec<Check> {
        let (r, n) = (self.dim_r(), self.dim_a());
        let ex = Scope::Exhaustive;
        let br = self.algebra.basis();
        let rl = |x: usize| &self.algebra.labels()[x];
        let left_r = |y: &[Scalar]| self.algebra.left_matrix(y).kron(&Mat::identity(n));
        let right_r = |y: &[Scalar]| self.algebra.right_matrix(y).kron(&Mat::identity(n));
        let img_el = self.e.left.image();
        let img_er = self.e.right.image();
        let mut checks = Vec::new();
        checks.push(Check::run("reduced: (R⊗1)ρ(R) ⊆ (R⊗A)E", "coaction.reduced", &ex, || {
            first_failure((0..r).flat_map(|y| (0..r).map(move |x| (y, x))), |&(y, x)| {
                if img_er.contains(&left_r(&br[y]).apply(&self.rho(&br[x]))) {
                    Ok(())
                } else {
                    Err(format!("y={}, x={}", rl(y), rl(x)))
                }
            })
        }));
        checks.push(Check::run("reduced: ρ(R)(R⊗1) ⊆ E(R⊗A)", "coaction.reduced", &ex, || {
            first_failure((0..r).flat_map(|y| (0..r).map(move |x| (y, x))), |&(y, x)| {
                if img_el.contains(&right_r(&br[y]).apply(&self.rho(&br[x]))) {
                    Ok(())
                } else {
                    Err(format!("x={}, y={}", rl(x), rl(y)))
                }
            })
        }));
        if !self.symmetric {
            return checks;
        }
        let rho_leg = self.rho_leg();
        let delta_leg = self.delta_leg();
        let raa = self.ra.tensor(self.hopf.algebra());
        let ba = self.hopf.algebra().basis();
        let one = self.hopf.unit().clone();
        checks.push(Check::run("reduced three-leg identity", "coaction.reduced-three-leg", &ex, || {
            first_failure((0..r).flat_map(|x| (0..r).map(move |y| (x, y))), |&(x, y)| {
                first_failure(0..n, |&a| {
                    // (ρ⊗ι)(ρ(x)(y⊗1))(1⊗a⊗1)
                    let inner = right_r(&br[y]).apply(&self.rho(&br[x]));
                    let cover = Mat::identity(r).kron(&self.hopf.algebra().right_matrix(&ba[a])).kron(&Mat::identity(n));
                    let lhs = cover.apply(&rho_leg.apply(&inner));
                    let mut rhs = zeros(r * n * n);
                    for (k, c) in linalg::support(&self.rho_t1(&br[y], &ba[a])) {
                        let (zj, bj) = (k / n, k % n);
                        let d = delta_leg.apply(&right_r(&br[zj]).apply(&self.rho(&br[x])));
                        let cov = Mat::identity(r).kron(&self.hopf.algebra().right_matrix(&ba[bj])).kron(&Mat::identity(n));
                        linalg::axpy(&mut rhs, c, &cov.apply(&d));
                    }
                    if lhs == rhs {
                        Ok(())
                    } else {
                        Err(format!("x={}, y={}, a={}", rl(x), rl(y), self.hopf.labels()[a]))
                    }
                })
            })
        }));
        checks.push(Check::run("reduced coassociativity with left factor", "coaction.reduced-left-factor", &ex, || {
            first_failure((0..r).flat_map(|x| (0..r).map(move |y| (x, y))), |&(x, y)| {
                let lhs = rho_leg.apply(&left_r(&br[x]).apply(&self.rho(&br[y])));
                let rhs = raa.mul(&kron(&self.rho(&br[x]), &one), &delta_leg.apply(&self.rho(&br[y])));
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("x={}, y={}", rl(x), rl(y)))
                }
            })
        }));
        checks
    }

    /// The extension `m ↦ ρ(m)` to `M(R)`, defined through
    /// `ρ(m)ρ(x)(1⊗b) = ρ(mx)(1⊗b)` and `(1⊗b)ρ(x)ρ(m) = (1⊗b)ρ(xm)`.
    pub fn extension(&self) -> Result<CoactionExtension<'_>> {
        if !self.symmetric {
            return Err(Error::Unsupported("the extension to M(R) needs a symmetric coaction".into()));
        }
        Ok(CoactionExtension { c: self, img_l: self.e.left.image(), img_r: self.e.right.image() })
    }

    pub fn verify_extension(&self) -> Vec<Check> {
        let ex = Scope::Exhaustive;
        let ext = match self.extension() {
            Ok(e) => e,
            Err(e) => return vec![Check::of_bool("ρ extends to M(R)", "coaction.extension", false, || e.to_string())],
        };
        let r = self.dim_r();
        let mr = self.algebra.multiplier_algebra();
        let mut checks = Vec::new();
        checks.push(Check::run("ρ(1) = E", "coaction.extension.unit", &ex, || {
            let one = ext.apply(&Multiplier::identity(r))?;
            if one == self.e {
                Ok(())
            } else {
                Err("ρ(1_{M(R)}) ≠ E".into())
            }
        }));
        checks.push(Check::run("extension agrees on R", "coaction.extension.restriction", &ex, || {
            first_failure(0..r, |&x| {
                let ex_x = Multiplier::element(&self.algebra, &unit_vector(r, x));
                if ext.apply(&ex_x)? == self.rho_multiplier(&unit_vector(r, x)) {
                    Ok(())
                } else {
                    Err(format!("x={}", self.algebra.labels()[x]))
                }
            })
        }));
        checks.push(Check::run("extension multiplicative", "coaction.extension.homomorphism", &ex, || {
            let imgs: Vec<Multiplier> = mr.basis().iter().map(|m| ext.apply(m)).collect::<std::result::Result<_, _>>()?;
            first_failure(0..mr.dim(), |&i| {
                first_failure(0..mr.dim(), |&j| {
                    let prod = ext.apply(&mr.basis()[i].mul(&mr.basis()[j]))?;
                    if prod == imgs[i].mul(&imgs[j]) {
                        Ok(())
                    } else {
                        Err(format!("M(R) basis pair ({i}, {j})"))
                    }
                })
            })
        }));
        checks.push(Check::run("extension injective", "coaction.extension.injective", &ex, || {
            let imgs: Vec<Vector> =
                mr.basis().iter().map(|m| ext.apply(m).map(|x| x.flatten())).collect::<std::result::Result<_, _>>()?;
            let len = imgs.first().map(Vec::len).unwrap_or(0);
            let rank = Mat::from_columns(&imgs, len).rank();
            if rank == mr.dim() {
                Ok(())
            } else {
                Err(format!("rank {rank} < dim M(R) = {}", mr.dim()))
            }
        }));
        checks
    }

    /// Checks the unital definition (with `E = ρ(1_R)`) against the
    /// multiplier-form axioms.
    pub fn check_unital_equivalence(&self) -> std::result::Result<bool, String> {
        let one_r = self.algebra.unit().ok_or("R is not unital")?;
        let (r, n) = (self.dim_r(), self.dim_a());
        let br = self.algebra.basis();
        let rho1 = self.rho(&one_r);
        let e_is_rho1 = self.e == Multiplier::element(&self.ra, &rho1);
        let counit = Mat::identity(r).kron(&Mat::from_rows(vec![self.hopf.counit_vector().clone()], n).expect("row"));
        let raa = self.ra.tensor(self.hopf.algebra());
        let rho_leg = self.rho_leg();
        let delta_leg = self.delta_leg();
        let rho1_1 = kron(&rho1, self.hopf.unit());
        let unital_ok = (0..r).all(|x| {
            let rx = self.rho(&br[x]);
            let mult = (0..r).all(|y| self.rho(&self.algebra.mul(&br[x], &br[y])) == self.ra.mul(&rx, &self.rho(&br[y])));
            let lhs = rho_leg.apply(&rx);
            let d = delta_leg.apply(&rx);
            let iii = lhs == raa.mul(&rho1_1, &d);
            let iv = !self.symmetric || lhs == raa.mul(&d, &rho1_1);
            mult && counit.apply(&rx) == br[x] && iii && iv
        }) && self.rho.rank() == r;
        let multiplier_ok = self.verify().iter().all(Check::passed);
        Ok(e_is_rho1 && unital_ok == multiplier_ok)
    }
}

/// The extension of a symmetric coaction to `M(R)`.
#[derive(Clone, Debug)]
pub struct CoactionExtension<'a> {
    c: &'a PartialCoaction,
    img_l: Subspace,
    img_r: Subspace,
}

impl CoactionExtension<'_> {
    /// `ρ(m)` as a multiplier of `R⊗A`; `Err` when the assignment is not
    /// well defined.
    pub fn apply(&self, m: &Multiplier) -> std::result::Result<Multiplier, String> {
        let c = self.c;
        let (r, n) = (c.dim_r(), c.dim_a());
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|x| (0..n).map(move |b| (x, b))).collect();
        let ex = |x: usize| unit_vector(r, x);
        let eb = |b: usize| unit_vector(n, b);
        let src_l: Vec<Vector> = pairs.iter().map(|&(x, b)| c.rho_t1(&ex(x), &eb(b))).collect();
        let tgt_l: Vec<Vector> = pairs.iter().map(|&(x, b)| c.rho_t1(&m.apply_left(&ex(x)), &eb(b))).collect();
        let src_r: Vec<Vector> = pairs.iter().map(|&(x, b)| c.rho_t2(&eb(b), &ex(x))).collect();
        let tgt_r: Vec<Vector> = pairs.iter().map(|&(x, b)| c.rho_t2(&eb(b), &m.apply_right(&ex(x)))).collect();
        let tl = operator_from_spanning(&self.img_l, &src_l, &tgt_l, r * n)
            .ok_or("ρ(m) is not well defined on E(R⊗A)")?;
        let tr = operator_from_spanning(&self.img_r, &src_r, &tgt_r, r * n)
            .ok_or("ρ(m) is not well defined on (R⊗A)E")?;
        Ok(Multiplier {
            left: tl.mul(&pivot_selector(&self.img_l)).mul(&c.e.left),
            right: tr.mul(&pivot_selector(&self.img_r)).mul(&c.e.right),
        })
    }
}

/// Echelon coordinates of vectors known to lie in `space`.
pub(crate) fn pivot_selector(space: &Subspace) -> Mat {
    let p = space.pivots();
    Mat::from_fn(space.dim(), space.ambient(), |k, j| if p[k] == j { Scalar::one() } else { Scalar::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Cyclic;
    use crate::hopf::FunctionAlgebra;
    use crate::scalar::Field;

    fn a_z4() -> FiniteHopf {
        FiniteHopf::materialize(&FunctionAlgebra::new(Cyclic::new(4), Field::Rational)).unwrap()
    }

    fn indicator(n: usize, set: &[usize]) -> Vector {
        (0..n).map(|i| if set.contains(&i) { Scalar::one() } else { Scalar::zero() }).collect()
    }

    #[test]
    fn global_self_coaction_verifies() {
        let c = PartialCoaction::global_self(&a_z4()).unwrap();
        let checks = c.verify();
        assert!(checks.iter().all(Check::passed), "{checks:#?}");
        assert!(c.non_global_witness().is_none());
    }

    #[test]
    fn projection_hypotheses() {
        let a = a_z4();
        let r = FiniteAlgebra::scalars();
        assert!(PartialCoaction::from_projection(&a, &r, &indicator(4, &[0, 2]), true).is_ok());
        assert!(PartialCoaction::from_projection(&a, &r, &indicator(4, &[0]), true).is_ok());
        let err = PartialCoaction::from_projection(&a, &r, &indicator(4, &[0, 1]), true).unwrap_err();
        assert!(matches!(err, Error::Hypothesis { ref identity, .. } if identity == "m⊗m = (m⊗1)Δ(m)"));
        let err = PartialCoaction::from_projection(&a, &r, &indicator(4, &[1]), true).unwrap_err();
        assert!(err.to_string().contains("ε(m) = 0"), "{err}");
    }

    #[test]
    fn induced_coaction_is_partial_not_global() {
        let a = a_z4();
        let g = PartialCoaction::global_self(&a).unwrap();
        let c = PartialCoaction::induced(&g, &indicator(4, &[0, 2])).unwrap();
        assert_eq!(c.dim_r(), 2);
        assert!(c.verify().iter().all(Check::passed), "{:#?}", c.verify());
        // L basis is δ0, δ2; E(δ2⊗δ1) = 0
        let v = kron(&unit_vector(2, 1), &unit_vector(4, 1));
        assert!(linalg::is_zero(&c.e().apply_left(&v)));
        let v = kron(&unit_vector(2, 0), &unit_vector(4, 2));
        assert_eq!(c.e().apply_left(&v), v);
        let broken = c.with_e(Multiplier::identity(8));
        let failing: Vec<String> = broken.verify().into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failing.iter().any(|n| n.starts_with("axiom (iii)")), "{failing:?}");
    }

    #[test]
    fn extension_and_unital_equivalence() {
        let a = a_z4();
        let g = PartialCoaction::global_self(&a).unwrap();
        let c = PartialCoaction::induced(&g, &indicator(4, &[0, 2])).unwrap();
        let ext = c.extension().unwrap();
        assert_eq!(ext.apply(&Multiplier::identity(2)).unwrap(), *c.e());
        assert!(c.verify_extension().iter().all(Check::passed), "{:#?}", c.verify_extension());
        assert_eq!(c.check_unital_equivalence(), Ok(true));
        assert_eq!(g.check_unital_equivalence(), Ok(true));
        assert_eq!(c.with_e(Multiplier::zero(8)).check_unital_equivalence(), Ok(false));
    }

    #[test]
    fn restrict_witness_search() {
        let a = a_z4();
        let g = PartialCoaction::global_self(&a).unwrap();
        assert_eq!(g.find_restrict_witness(), Some(unit_vector(4, 0)));
        let c = PartialCoaction::induced(&g, &indicator(4, &[0, 2])).unwrap();
        let w = c.find_restrict_witness();
        assert!(w.is_some());
        let mut c = c;
        c.restrict_witness = w;
        assert!(c.verify().iter().all(Check::passed));
    }
}
