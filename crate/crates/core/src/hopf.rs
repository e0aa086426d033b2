//! Regular multiplier Hopf algebras with integrals, presented through the
//! covered comultiplication maps `T1(a⊗b) = Δ(a)(1⊗b)` and
//! `T2(a⊗b) = (a⊗1)Δ(b)`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::algebra::{FiniteAlgebra, Multiplier};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::linalg::{self, kron, solve, support, unit_vector, zeros, Mat, Sparse, Vector};
use crate::report::{first_failure, Check, Scope};
use crate::scalar::{Field, Scalar};

type Pair<L> = (L, L);

/// A regular multiplier Hopf algebra described on a basis. Every map is
/// given on basis labels and extended linearly.
pub trait HopfInstance: Send + Sync {
    type Label: Clone + Ord + Debug + Send + Sync;

    fn name(&self) -> String;
    fn field(&self) -> Field;
    fn label(&self, a: &Self::Label) -> String;
    fn mul(&self, a: &Self::Label, b: &Self::Label) -> Sparse<Self::Label>;
    /// `Δ(a)(1⊗b)`
    fn t1(&self, a: &Self::Label, b: &Self::Label) -> Sparse<Pair<Self::Label>>;
    /// `(a⊗1)Δ(b)`
    fn t2(&self, a: &Self::Label, b: &Self::Label) -> Sparse<Pair<Self::Label>>;
    fn t1_inv(&self, a: &Self::Label, b: &Self::Label) -> Sparse<Pair<Self::Label>>;
    fn t2_inv(&self, a: &Self::Label, b: &Self::Label) -> Sparse<Pair<Self::Label>>;
    fn counit(&self, a: &Self::Label) -> Scalar;
    fn antipode(&self, a: &Self::Label) -> Sparse<Self::Label>;
    fn antipode_inv(&self, a: &Self::Label) -> Sparse<Self::Label>;
    /// The left integral, when the instance carries one.
    fn integral(&self, a: &Self::Label) -> Option<Scalar>;
    /// The whole basis, for finite-dimensional instances.
    fn basis(&self) -> Option<Vec<Self::Label>>;
    /// A finite witness sample of basis labels.
    fn window(&self, radius: u32) -> Vec<Self::Label>;
    /// Exact invertibility of T1 and T2 as matrices, when available.
    fn t_ranks_full(&self) -> Option<(bool, bool)> {
        None
    }
}

fn fmt_sparse<H: HopfInstance>(h: &H, x: &Sparse<H::Label>) -> String {
    let terms: Vec<String> = x
        .iter()
        .map(|(l, c)| if c.is_one() { h.label(l) } else { format!("{c}·{}", h.label(l)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn fmt_sparse2<H: HopfInstance>(h: &H, x: &Sparse<Pair<H::Label>>) -> String {
    let terms: Vec<String> = x
        .iter()
        .map(|((a, b), c)| {
            let t = format!("{}⊗{}", h.label(a), h.label(b));
            if c.is_one() {
                t
            } else {
                format!("{c}·{t}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn single<L: Ord + Clone>(l: L) -> Sparse<L> {
    Sparse::single(l, Scalar::one())
}

/// `Δ(a)(1⊗b)` written as `Σ a₍₁₎ ⊗ a₍₂₎b`.
pub fn cover_right<H: HopfInstance>(h: &H, a: &H::Label, b: &H::Label) -> Sparse<Pair<H::Label>> {
    h.t1(a, b)
}

/// `(a⊗1)Δ(b)` written as `Σ ab₍₁₎ ⊗ b₍₂₎`.
pub fn cover_left<H: HopfInstance>(h: &H, a: &H::Label, b: &H::Label) -> Sparse<Pair<H::Label>> {
    h.t2(a, b)
}

/// Verifies the multiplier Hopf algebra axioms on all pairs and triples
/// drawn from `w`.
pub fn verify_hopf<H: HopfInstance>(h: &H, w: &[H::Label], scope: &Scope) -> Vec<Check> {
    let pairs: Vec<(H::Label, H::Label)> =
        w.iter().flat_map(|a| w.iter().map(move |b| (a.clone(), b.clone()))).collect();
    let lab = |a: &H::Label| h.label(a);
    let mut checks = Vec::new();

    let ranks = h.t_ranks_full();
    let bij = |name: &str, fwd: &dyn Fn(&H::Label, &H::Label) -> Sparse<Pair<H::Label>>,
               inv: &dyn Fn(&H::Label, &H::Label) -> Sparse<Pair<H::Label>>,
               rank_ok: Option<bool>| {
        Check::run(name, "hopf.t-maps-bijective", scope, || {
            if rank_ok == Some(false) {
                return Err("matrix is singular".into());
            }
            first_failure(&pairs, |(a, b)| {
                let id = single((a.clone(), b.clone()));
                let there = fwd(a, b).map(|(p, q)| inv(p, q));
                let back = inv(a, b).map(|(p, q)| fwd(p, q));
                if there == id && back == id {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}", lab(a), lab(b)))
                }
            })
        })
    };
    checks.push(bij("T1 bijective", &|a, b| h.t1(a, b), &|a, b| h.t1_inv(a, b), ranks.map(|r| r.0)));
    checks.push(bij("T2 bijective", &|a, b| h.t2(a, b), &|a, b| h.t2_inv(a, b), ranks.map(|r| r.1)));

    checks.push(Check::run("counit law for T1", "hopf.counit", scope, || {
        first_failure(&pairs, |(a, b)| {
            let lhs = h.t1(a, b).map(|(p, q)| {
                let mut s = Sparse::new();
                s.add_term(q.clone(), &h.counit(p));
                s
            });
            if lhs == h.mul(a, b) {
                Ok(())
            } else {
                Err(format!("(ε⊗ι)T1({}⊗{}) = {}", lab(a), lab(b), fmt_sparse(h, &lhs)))
            }
        })
    }));
    checks.push(Check::run("counit law for T2", "hopf.counit", scope, || {
        first_failure(&pairs, |(a, b)| {
            let lhs = h.t2(a, b).map(|(p, q)| {
                let mut s = Sparse::new();
                s.add_term(p.clone(), &h.counit(q));
                s
            });
            if lhs == h.mul(a, b) {
                Ok(())
            } else {
                Err(format!("(ι⊗ε)T2({}⊗{}) = {}", lab(a), lab(b), fmt_sparse(h, &lhs)))
            }
        })
    }));

    checks.push(Check::run("antipode law for T1", "hopf.antipode", scope, || {
        first_failure(&pairs, |(a, b)| {
            let lhs = h.t1(a, b).map(|(p, q)| h.antipode(p).map(|s| h.mul(s, q)));
            let rhs = Sparse::single(b.clone(), h.counit(a));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("m(S⊗ι)T1({}⊗{}) = {}", lab(a), lab(b), fmt_sparse(h, &lhs)))
            }
        })
    }));
    checks.push(Check::run("antipode law for T2", "hopf.antipode", scope, || {
        first_failure(&pairs, |(a, b)| {
            let lhs = h.t2(a, b).map(|(p, q)| h.antipode(q).map(|s| h.mul(p, s)));
            let rhs = Sparse::single(a.clone(), h.counit(b));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("m(ι⊗S)T2({}⊗{}) = {}", lab(a), lab(b), fmt_sparse(h, &lhs)))
            }
        })
    }));

    checks.push(Check::run("antipode invertible", "hopf.antipode-regular", scope, || {
        first_failure(w, |a| {
            let id = single((*a).clone());
            let ss = h.antipode_inv(a).map(|x| h.antipode(x));
            let ss2 = h.antipode(a).map(|x| h.antipode_inv(x));
            if ss == id && ss2 == id {
                Ok(())
            } else {
                Err(format!("a={}", lab(a)))
            }
        })
    }));

    checks.push(Check::run("coassociativity", "hopf.coassociativity", scope, || {
        first_failure(w, |a| {
            first_failure(&pairs, |(b, c)| {
                let mut lhs: Sparse<(H::Label, H::Label, H::Label)> = Sparse::new();
                for ((p, q), s) in h.t1(b, c).iter() {
                    for ((x, y), t) in h.t2(a, p).iter() {
                        lhs.add_term((x.clone(), y.clone(), q.clone()), &(s * t));
                    }
                }
                let mut rhs: Sparse<(H::Label, H::Label, H::Label)> = Sparse::new();
                for ((r, s_), s) in h.t2(a, b).iter() {
                    for ((x, y), t) in h.t1(s_, c).iter() {
                        rhs.add_term((r.clone(), x.clone(), y.clone()), &(s * t));
                    }
                }
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, c={}", lab(a), lab(b), lab(c)))
                }
            })
        })
    }));

    checks.push(Check::run("T1 and T2 share one comultiplication", "hopf.covering-consistency", scope, || {
        first_failure(w, |a| {
            first_failure(&pairs, |(b, c)| {
                let lhs = h.t1(b, c).map(|(p, q)| {
                    h.mul(a, p).iter().map(|(x, s)| ((x.clone(), q.clone()), s.clone())).collect()
                });
                let rhs = h.t2(a, b).map(|(p, q)| {
                    h.mul(q, c).iter().map(|(y, s)| ((p.clone(), y.clone()), s.clone())).collect()
                });
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, c={}", lab(a), lab(b), lab(c)))
                }
            })
        })
    }));

    checks.push(Check::run("comultiplication multiplicative", "hopf.comultiplication-homomorphism", scope, || {
        first_failure(w, |a| {
            first_failure(&pairs, |(b, c)| {
                let lhs = h.mul(a, b).map(|ab| h.t1(ab, c));
                // Δ(a)·(x⊗y) = T1(a⊗y)·(x⊗1) applied to T1(b⊗c).
                let rhs = h.t1(b, c).map(|(x, y)| {
                    h.t1(a, y).map(|(p, q)| {
                        h.mul(p, x).iter().map(|(r, s)| ((r.clone(), q.clone()), s.clone())).collect()
                    })
                });
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}, c={}: {} vs {}", lab(a), lab(b), lab(c), fmt_sparse2(h, &lhs), fmt_sparse2(h, &rhs)))
                }
            })
        })
    }));

    if w.first().map(|a| h.integral(a).is_some()).unwrap_or(false) {
        checks.push(Check::run("integral left invariance", "hopf.left-integral", scope, || {
            first_failure(&pairs, |(b, a)| {
                let lhs = h.t2(b, a).map(|(p, q)| Sparse::single(p.clone(), h.integral(q).unwrap()));
                let rhs = Sparse::single(b.clone(), h.integral(a).unwrap());
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("(ι⊗φ)T2({}⊗{}) = {}", lab(b), lab(a), fmt_sparse(h, &lhs)))
                }
            })
        }));
    }
    checks
}

/// Checks `(φ⊗ι)(Δ(a)(1⊗b)) = φ(a)·b` on a witness window, i.e. that the
/// modular element is trivial there.
pub fn verify_trivial_modular<H: HopfInstance>(h: &H, w: &[H::Label], scope: &Scope) -> Check {
    Check::run("modular element is 1", "hopf.modular-element", scope, || {
        first_failure(w, |a| {
            first_failure(w, |b| {
                let lhs = h.t1(a, b).map(|(p, q)| Sparse::single(q.clone(), h.integral(p).unwrap_or_else(Scalar::zero)));
                let rhs = Sparse::single((*b).clone(), h.integral(a).unwrap_or_else(Scalar::zero));
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}", h.label(a), h.label(b)))
                }
            })
        })
    })
}

/// `A_G`: finitely supported functions on `G` with pointwise product and
/// `Δ(f)(p,q) = f(pq)`.
#[derive(Clone, Debug)]
pub struct FunctionAlgebra<G: Group> {
    pub group: G,
    field: Field,
}

impl<G: Group> FunctionAlgebra<G> {
    pub fn new(group: G, field: Field) -> Self {
        FunctionAlgebra { group, field }
    }

    /// Sum of the δ_g over the supports of `set`.
    pub fn local_unit(&self, set: &[Sparse<G::Elem>]) -> Sparse<G::Elem> {
        let mut out = Sparse::new();
        for x in set {
            for (g, _) in x.iter() {
                if out.get(g).is_zero() {
                    out.add_term(g.clone(), &self.field.one());
                }
            }
        }
        out
    }
}

impl<G: Group> HopfInstance for FunctionAlgebra<G> {
    type Label = G::Elem;

    fn name(&self) -> String {
        format!("A_{}", self.group.name())
    }
    fn field(&self) -> Field {
        self.field
    }
    fn label(&self, a: &G::Elem) -> String {
        format!("δ{}", self.group.label(a))
    }
    fn mul(&self, a: &G::Elem, b: &G::Elem) -> Sparse<G::Elem> {
        if a == b {
            Sparse::single(a.clone(), self.field.one())
        } else {
            Sparse::new()
        }
    }
    fn t1(&self, r: &G::Elem, q: &G::Elem) -> Sparse<Pair<G::Elem>> {
        let g = &self.group;
        Sparse::single((g.op(r, &g.inv(q)), q.clone()), self.field.one())
    }
    fn t2(&self, r: &G::Elem, q: &G::Elem) -> Sparse<Pair<G::Elem>> {
        let g = &self.group;
        Sparse::single((r.clone(), g.op(&g.inv(r), q)), self.field.one())
    }
    fn t1_inv(&self, p: &G::Elem, q: &G::Elem) -> Sparse<Pair<G::Elem>> {
        Sparse::single((self.group.op(p, q), q.clone()), self.field.one())
    }
    fn t2_inv(&self, r: &G::Elem, s: &G::Elem) -> Sparse<Pair<G::Elem>> {
        Sparse::single((r.clone(), self.group.op(r, s)), self.field.one())
    }
    fn counit(&self, a: &G::Elem) -> Scalar {
        if *a == self.group.identity() {
            self.field.one()
        } else {
            self.field.zero()
        }
    }
    fn antipode(&self, a: &G::Elem) -> Sparse<G::Elem> {
        Sparse::single(self.group.inv(a), self.field.one())
    }
    fn antipode_inv(&self, a: &G::Elem) -> Sparse<G::Elem> {
        self.antipode(a)
    }
    fn integral(&self, _a: &G::Elem) -> Option<Scalar> {
        Some(self.field.one())
    }
    fn basis(&self) -> Option<Vec<G::Elem>> {
        self.group.elements()
    }
    fn window(&self, radius: u32) -> Vec<G::Elem> {
        self.group.window(radius)
    }
}

/// `𝕜G` with convolution product and group-like comultiplication.
#[derive(Clone, Debug)]
pub struct GroupAlgebra<G: Group> {
    pub group: G,
    field: Field,
}

impl<G: Group> GroupAlgebra<G> {
    pub fn new(group: G, field: Field) -> Self {
        GroupAlgebra { group, field }
    }

    /// 𝕜G is unital, so the identity element serves every finite set.
    pub fn local_unit(&self, _set: &[Sparse<G::Elem>]) -> Sparse<G::Elem> {
        Sparse::single(self.group.identity(), self.field.one())
    }
}

impl<G: Group> HopfInstance for GroupAlgebra<G> {
    type Label = G::Elem;

    fn name(&self) -> String {
        format!("k{}", self.group.name())
    }
    fn field(&self) -> Field {
        self.field
    }
    fn label(&self, a: &G::Elem) -> String {
        format!("[{}]", self.group.label(a))
    }
    fn mul(&self, a: &G::Elem, b: &G::Elem) -> Sparse<G::Elem> {
        Sparse::single(self.group.op(a, b), self.field.one())
    }
    fn t1(&self, g: &G::Elem, h: &G::Elem) -> Sparse<Pair<G::Elem>> {
        Sparse::single((g.clone(), self.group.op(g, h)), self.field.one())
    }
    fn t2(&self, g: &G::Elem, h: &G::Elem) -> Sparse<Pair<G::Elem>> {
        Sparse::single((self.group.op(g, h), h.clone()), self.field.one())
    }
    fn t1_inv(&self, g: &G::Elem, k: &G::Elem) -> Sparse<Pair<G::Elem>> {
        Sparse::single((g.clone(), self.group.op(&self.group.inv(g), k)), self.field.one())
    }
    fn t2_inv(&self, k: &G::Elem, h: &G::Elem) -> Sparse<Pair<G::Elem>> {
        Sparse::single((self.group.op(k, &self.group.inv(h)), h.clone()), self.field.one())
    }
    fn counit(&self, _a: &G::Elem) -> Scalar {
        self.field.one()
    }
    fn antipode(&self, a: &G::Elem) -> Sparse<G::Elem> {
        Sparse::single(self.group.inv(a), self.field.one())
    }
    fn antipode_inv(&self, a: &G::Elem) -> Sparse<G::Elem> {
        self.antipode(a)
    }
    fn integral(&self, a: &G::Elem) -> Option<Scalar> {
        Some(if *a == self.group.identity() { self.field.one() } else { self.field.zero() })
    }
    fn basis(&self) -> Option<Vec<G::Elem>> {
        self.group.elements()
    }
    fn window(&self, radius: u32) -> Vec<G::Elem> {
        self.group.window(radius)
    }
}

/// A finite-dimensional multiplier Hopf algebra (hence a Hopf algebra)
/// held as dense matrices. Tensor index `(i, j) ↦ i·n + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHopf {
    name: String,
    field: Field,
    algebra: FiniteAlgebra,
    t1: Mat,
    t2: Mat,
    t1_inv: Mat,
    t2_inv: Mat,
    counit: Vector,
    antipode: Mat,
    antipode_inv: Mat,
    integral: Option<Vector>,
    unit: Vector,
}

impl FiniteHopf {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: String,
        field: Field,
        algebra: FiniteAlgebra,
        t1: Mat,
        t2: Mat,
        counit: Vector,
        antipode: Mat,
        antipode_inv: Mat,
        integral: Option<Vector>,
    ) -> Result<FiniteHopf> {
        let unit = algebra
            .unit()
            .ok_or_else(|| Error::Unsupported("finite-dimensional carrier without a unit".into()))?;
        let singular = |what: &str| Error::hypothesis(format!("{what} bijective"), "matrix is singular");
        let t1_inv = t1.inverse().ok_or_else(|| singular("T1"))?;
        let t2_inv = t2.inverse().ok_or_else(|| singular("T2"))?;
        Ok(FiniteHopf {
            name,
            field,
            algebra,
            t1,
            t2,
            t1_inv,
            t2_inv,
            counit,
            antipode,
            antipode_inv,
            integral,
            unit,
        })
    }

    /// Dense copy of a finite instance, basis in the instance's order.
    pub fn materialize<H: HopfInstance>(h: &H) -> Result<FiniteHopf> {
        let basis = h
            .basis()
            .ok_or_else(|| Error::Unsupported(format!("{} is infinite-dimensional", h.name())))?;
        let n = basis.len();
        let index: BTreeMap<H::Label, usize> =
            basis.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let dense1 = |x: &Sparse<H::Label>| {
            let mut v = zeros(n);
            for (l, c) in x.iter() {
                v[index[l]] = c.clone();
            }
            v
        };
        let dense2 = |x: &Sparse<Pair<H::Label>>| {
            let mut v = zeros(n * n);
            for ((a, b), c) in x.iter() {
                v[index[a] * n + index[b]] = c.clone();
            }
            v
        };
        let labels = basis.iter().map(|l| h.label(l)).collect();
        let algebra = FiniteAlgebra::from_fn(labels, |i, j| dense1(&h.mul(&basis[i], &basis[j])))?;
        let tmat = |f: &dyn Fn(&H::Label, &H::Label) -> Sparse<Pair<H::Label>>| {
            let cols: Vec<Vector> = (0..n * n).map(|k| dense2(&f(&basis[k / n], &basis[k % n]))).collect();
            Mat::from_columns(&cols, n * n)
        };
        let t1 = tmat(&|a, b| h.t1(a, b));
        let t2 = tmat(&|a, b| h.t2(a, b));
        let smat = |f: &dyn Fn(&H::Label) -> Sparse<H::Label>| {
            let cols: Vec<Vector> = basis.iter().map(|a| dense1(&f(a))).collect();
            Mat::from_columns(&cols, n)
        };
        let antipode = smat(&|a| h.antipode(a));
        let antipode_inv = smat(&|a| h.antipode_inv(a));
        let counit = basis.iter().map(|a| h.counit(a)).collect();
        let integral: Option<Vector> = basis.iter().map(|a| h.integral(a)).collect();
        FiniteHopf::from_parts(h.name(), h.field(), algebra, t1, t2, counit, antipode, antipode_inv, integral)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field_of(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.algebra.mul(a, b)
    }

    /// Product in `A⊗A`.
    pub fn tensor_mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n * n);
        for (i, x) in support(u) {
            for (j, y) in support(v) {
                let c = x * y;
                let (a, b) = (i / n, i % n);
                let (p, q) = (j / n, j % n);
                for (s, cs) in self.algebra.basis_product(a, p) {
                    for (t, ct) in self.algebra.basis_product(b, q) {
                        out[s * n + t] = &out[s * n + t] + &(&c * &(cs * ct));
                    }
                }
            }
        }
        out
    }

    pub fn t1_apply(&self, v: &[Scalar]) -> Vector {
        self.t1.apply(v)
    }

    pub fn t2_apply(&self, v: &[Scalar]) -> Vector {
        self.t2.apply(v)
    }

    pub fn t1_matrix(&self) -> &Mat {
        &self.t1
    }

    pub fn t2_matrix(&self) -> &Mat {
        &self.t2
    }

    /// `Δ(a)`, covered on the right by the unit: `T1(a⊗1)`.
    pub fn coproduct(&self, a: &[Scalar]) -> Vector {
        self.t1.apply(&kron(a, &self.unit))
    }

    /// `(Δ⊗ι)Δ(a)` in `A⊗A⊗A`, index `(i, j, k) ↦ (i·n + j)·n + k`.
    pub fn coproduct3(&self, a: &[Scalar]) -> Vector {
        let n = self.dim();
        let d = self.coproduct(a);
        let mut out = zeros(n * n * n);
        for (idx, c) in support(&d) {
            let (p, q) = (idx / n, idx % n);
            let dp = self.coproduct(&unit_vector(n, p));
            for (jk, s) in support(&dp) {
                out[jk * n + q] = &out[jk * n + q] + &(c * s);
            }
        }
        out
    }

    pub fn counit(&self, a: &[Scalar]) -> Scalar {
        linalg::dot(&self.counit, a)
    }

    pub fn counit_vector(&self) -> &Vector {
        &self.counit
    }

    pub fn antipode(&self, a: &[Scalar]) -> Vector {
        self.antipode.apply(a)
    }

    pub fn antipode_inv(&self, a: &[Scalar]) -> Vector {
        self.antipode_inv.apply(a)
    }

    pub fn antipode_matrix(&self) -> &Mat {
        &self.antipode
    }

    pub fn antipode_inv_matrix(&self) -> &Mat {
        &self.antipode_inv
    }

    pub fn integral_vector(&self) -> Option<&Vector> {
        self.integral.as_ref()
    }

    pub fn phi(&self, a: &[Scalar]) -> Result<Scalar> {
        let f = self.integral.as_ref().ok_or_else(|| Error::Unsupported(format!("{} has no integral", self.name)))?;
        Ok(linalg::dot(f, a))
    }

    pub fn format(&self, a: &[Scalar]) -> String {
        self.algebra.format(a)
    }

    pub fn format2(&self, v: &[Scalar]) -> String {
        let n = self.dim();
        let labels: Vec<String> = (0..n * n)
            .map(|k| format!("{}⊗{}", self.labels()[k / n], self.labels()[k % n]))
            .collect();
        crate::algebra::format_combination(&labels, v)
    }

    /// The `b` with `f(a·c) = f(c·b)` for every `c`, for a functional `f`;
    /// with `f = φ` this rewrites `φ(a _)` as `φ(_ b)`.
    pub fn shift_functional(&self, f: &[Scalar], a: &[Scalar]) -> Option<Vector> {
        let n = self.dim();
        let basis = self.algebra.basis();
        let m = Mat::from_fn(n, n, |c, k| linalg::dot(f, &self.mul(&basis[c], &basis[k])));
        let rhs: Vector = basis.iter().map(|c| linalg::dot(f, &self.mul(a, c))).collect();
        solve(&m, &rhs).expect("square system")
    }

    /// `b` with `φ(a _) = φ(_ b)`.
    pub fn integral_shift(&self, a: &[Scalar]) -> Result<Vector> {
        let f = self.integral.clone().ok_or_else(|| Error::Unsupported("no integral".into()))?;
        self.shift_functional(&f, a).ok_or_else(|| {
            Error::hypothesis("φ(a _) = φ(_ b) solvable", format!("a = {}", self.format(a)))
        })
    }

    /// Every left integral, as a subspace of functionals.
    pub fn left_integrals(&self) -> linalg::Subspace {
        // (ι⊗φ)Δ(e_a) = φ(e_a)·1, linear in φ.
        let n = self.dim();
        let mut rows = Vec::new();
        for a in 0..n {
            let d = self.coproduct(&unit_vector(n, a));
            for t in 0..n {
                let mut row = zeros(n);
                for q in 0..n {
                    row[q] = d[t * n + q].clone();
                }
                row[a] = &row[a] - &self.unit[t];
                rows.push(row);
            }
        }
        Mat::from_rows(rows, n).expect("rows").kernel()
    }
}

impl HopfInstance for FiniteHopf {
    type Label = usize;

    fn name(&self) -> String {
        self.name.clone()
    }
    fn field(&self) -> Field {
        self.field
    }
    fn label(&self, a: &usize) -> String {
        self.labels()[*a].clone()
    }
    fn mul(&self, a: &usize, b: &usize) -> Sparse<usize> {
        self.algebra.basis_product(*a, *b).iter().cloned().collect()
    }
    fn t1(&self, a: &usize, b: &usize) -> Sparse<Pair<usize>> {
        column_pairs(&self.t1, a * self.dim() + b, self.dim())
    }
    fn t2(&self, a: &usize, b: &usize) -> Sparse<Pair<usize>> {
        column_pairs(&self.t2, a * self.dim() + b, self.dim())
    }
    fn t1_inv(&self, a: &usize, b: &usize) -> Sparse<Pair<usize>> {
        column_pairs(&self.t1_inv, a * self.dim() + b, self.dim())
    }
    fn t2_inv(&self, a: &usize, b: &usize) -> Sparse<Pair<usize>> {
        column_pairs(&self.t2_inv, a * self.dim() + b, self.dim())
    }
    fn counit(&self, a: &usize) -> Scalar {
        self.counit[*a].clone()
    }
    fn antipode(&self, a: &usize) -> Sparse<usize> {
        support(&self.antipode.column(*a)).map(|(i, c)| (i, c.clone())).collect()
    }
    fn antipode_inv(&self, a: &usize) -> Sparse<usize> {
        support(&self.antipode_inv.column(*a)).map(|(i, c)| (i, c.clone())).collect()
    }
    fn integral(&self, a: &usize) -> Option<Scalar> {
        self.integral.as_ref().map(|f| f[*a].clone())
    }
    fn basis(&self) -> Option<Vec<usize>> {
        Some((0..self.dim()).collect())
    }
    fn window(&self, _radius: u32) -> Vec<usize> {
        (0..self.dim()).collect()
    }
    fn t_ranks_full(&self) -> Option<(bool, bool)> {
        let full = self.dim() * self.dim();
        Some((self.t1.rank() == full, self.t2.rank() == full))
    }
}

fn column_pairs(m: &Mat, col: usize, n: usize) -> Sparse<Pair<usize>> {
    support(&m.column(col)).map(|(k, c)| ((k / n, k % n), c.clone())).collect()
}

/// The modular element `δ`, `(φ⊗ι)Δ(a) = φ(a)δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularElement {
    pub delta: Vector,
    pub delta_inverse: Vector,
    pub pivot: usize,
}

impl ModularElement {
    pub fn is_trivial(&self, h: &FiniteHopf) -> bool {
        &self.delta == h.unit()
    }

    pub fn multiplier(&self, h: &FiniteHopf) -> Multiplier {
        Multiplier::element(h.algebra(), &self.delta)
    }
}

/// `δ·b = (φ⊗ι)(T1(a⊗b)) / φ(a)` for the first basis `a` with `φ(a) ≠ 0`.
fn delta_from_pivot(h: &FiniteHopf, phi: &[Scalar], pivot: usize) -> Vector {
    let n = h.dim();
    let d = h.t1_apply(&kron(&unit_vector(n, pivot), h.unit()));
    let mut out = zeros(n);
    for (k, c) in support(&d) {
        let (p, q) = (k / n, k % n);
        out[q] = &out[q] + &(c * &phi[p]);
    }
    let inv = phi[pivot].inv().expect("pivot has φ ≠ 0");
    linalg::scale(&inv, &out)
}

pub fn modular_element(h: &FiniteHopf) -> Result<ModularElement> {
    let phi = h.integral_vector().ok_or_else(|| Error::Unsupported("no integral".into()))?;
    let pivot = phi
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Unsupported("φ vanishes on the basis; δ is undetermined".into()))?;
    let delta = delta_from_pivot(h, phi, pivot);
    let delta_inverse = h.antipode(&delta);
    Ok(ModularElement { delta, delta_inverse, pivot })
}

pub fn verify_modular(h: &FiniteHopf, m: &ModularElement) -> Vec<Check> {
    let n = h.dim();
    let phi = h.integral_vector().cloned().unwrap_or_else(|| zeros(n));
    let ex = Scope::Exhaustive;
    let basis = h.algebra().basis();
    let mut checks = Vec::new();
    checks.push(Check::run("modular element defining identity", "hopf.modular-element", &ex, || {
        first_failure(0..n, |&a| {
            first_failure(0..n, |&b| {
                let d = h.t1_apply(&kron(&basis[a], &basis[b]));
                let mut lhs = zeros(n);
                for (k, c) in support(&d) {
                    lhs[k % n] = &lhs[k % n] + &(c * &phi[k / n]);
                }
                let rhs = linalg::scale(&phi[a], &h.mul(&m.delta, &basis[b]));
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(format!("a={}, b={}", h.labels()[a], h.labels()[b]))
                }
            })
        })
    }));
    checks.push(Check::run("modular element independent of pivot", "hopf.modular-element", &ex, || {
        first_failure((0..n).filter(|&a| !phi[a].is_zero()), |&a| {
            if delta_from_pivot(h, &phi, a) == m.delta {
                Ok(())
            } else {
                Err(format!("pivot {}", h.labels()[a]))
            }
        })
    }));
    checks.push(Check::run("modular element group-like", "hopf.modular-element", &ex, || {
        let lhs = h.coproduct(&m.delta);
        if lhs == kron(&m.delta, &m.delta) {
            Ok(())
        } else {
            Err(format!("Δ(δ) = {}", h.format2(&lhs)))
        }
    }));
    checks.push(Check::run("modular element inverse", "hopf.modular-element", &ex, || {
        let l = h.mul(&m.delta, &m.delta_inverse);
        let r = h.mul(&m.delta_inverse, &m.delta);
        if &l == h.unit() && &r == h.unit() {
            Ok(())
        } else {
            Err(format!("δ·S(δ) = {}", h.format(&l)))
        }
    }));
    checks.push(Check::run("integral of antipode", "hopf.integral-antipode-twist", &ex, || {
        first_failure(0..n, |&a| {
            let lhs = linalg::dot(&phi, &h.antipode(&basis[a]));
            let rhs = linalg::dot(&phi, &h.mul(&basis[a], &m.delta));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("a={}: φ(S(a))={lhs}, φ(aδ)={rhs}", h.labels()[a]))
            }
        })
    }));
    checks
}

/// The dual `Â = {φ(_ a)}` of a finite instance, with basis
/// `â_i = φ(_ e_i)`; the coordinates of `φ(_ a)` are those of `a`.
#[derive(Clone, Debug)]
pub struct DualHopf {
    pub hopf: FiniteHopf,
    pub source: FiniteHopf,
    /// Column `i` holds the values `â_i(e_j)`.
    evaluation: Mat,
    evaluation_inv: Mat,
}

impl DualHopf {
    pub fn new(source: &FiniteHopf) -> Result<DualHopf> {
        let n = source.dim();
        let phi = source
            .integral_vector()
            .cloned()
            .ok_or_else(|| Error::Unsupported(format!("{} has no integral", source.name())))?;
        let basis = source.algebra().basis();
        let f = Mat::from_fn(n, n, |j, i| linalg::dot(&phi, &source.mul(&basis[j], &basis[i])));
        let finv = f
            .inverse()
            .ok_or_else(|| Error::hypothesis("a ↦ φ(_ a) injective", "the integral pairing is singular"))?;
        let ff = f.kron(&f);
        let ffinv = finv.kron(&finv);

        // (â_i â_k)(e_j) = (â_i⊗â_k)Δ(e_j)
        let coproducts: Vec<Vector> = basis.iter().map(|e| source.coproduct(e)).collect();
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let col = ff.column(i * n + k);
                let values: Vector = coproducts.iter().map(|d| linalg::dot(d, &col)).collect();
                products.push(finv.apply(&values));
            }
        }
        let labels = source.labels().iter().map(|l| format!("φ(_{l})")).collect();
        let algebra = FiniteAlgebra::from_fn(labels, |i, k| products[i * n + k].clone())?;

        // (Δ̂(w)(1⊗u))(c⊗d) = (w⊗u)(T2(c⊗d)); ((u⊗1)Δ̂(w))(c⊗d) = (u⊗w)(T1(c⊗d))
        let t1 = ffinv.mul(&source.t2_matrix().transpose()).mul(&ff);
        let t2 = ffinv.mul(&source.t1_matrix().transpose()).mul(&ff);
        let counit = phi.clone();
        let antipode = finv.mul(&source.antipode_matrix().transpose()).mul(&f);
        let antipode_inv = finv.mul(&source.antipode_inv_matrix().transpose()).mul(&f);
        // φ̂ = ψ̂∘Ŝ with ψ̂(φ(_ a)) = ε(a).
        let integral = antipode.transpose().apply(source.counit_vector());
        let hopf = FiniteHopf::from_parts(
            format!("dual({})", source.name()),
            source.field_of(),
            algebra,
            t1,
            t2,
            counit,
            antipode,
            antipode_inv,
            Some(integral),
        )?;
        Ok(DualHopf { hopf, source: source.clone(), evaluation: f, evaluation_inv: finv })
    }

    /// Values `w(e_j)` of a dual element given in dual coordinates.
    pub fn evaluate(&self, w: &[Scalar]) -> Vector {
        self.evaluation.apply(w)
    }

    /// Dual coordinates of a functional given by its values.
    pub fn from_values(&self, values: &[Scalar]) -> Vector {
        self.evaluation_inv.apply(values)
    }

    /// `ψ̂(φ(_ a)) = ε(a)`.
    pub fn psi_hat(&self, w: &[Scalar]) -> Scalar {
        self.source.counit(w)
    }

    pub fn psi_hat_vector(&self) -> &Vector {
        self.source.counit_vector()
    }

    /// `â^δ = φ(_ δa)` for `â = φ(_ a)`.
    pub fn twist(&self, w: &[Scalar], m: &ModularElement) -> Vector {
        self.source.mul(&m.delta, w)
    }

    /// Matrix of `θ`, sending `w` to the model element with coordinates
    /// `w(e_g)`; the model must index its basis like the source.
    pub fn theta_matrix(&self) -> &Mat {
        &self.evaluation
    }
}

pub fn verify_dual_identities(d: &DualHopf) -> Vec<Check> {
    let a = &d.source;
    let h = &d.hopf;
    let n = a.dim();
    let basis = a.algebra().basis();
    let ex = Scope::Exhaustive;
    let mut checks = Vec::new();

    checks.push(Check::run("dual product is convolution", "dual.product", &ex, || {
        first_failure(0..n * n, |&ik| {
            let (i, k) = (ik / n, ik % n);
            let prod = h.mul(&basis[i], &basis[k]);
            let values = d.evaluate(&prod);
            let (wi, wk) = (d.evaluate(&basis[i]), d.evaluate(&basis[k]));
            let expected: Vector = basis.iter().map(|e| linalg::dot(&a.coproduct(e), &kron(&wi, &wk))).collect();
            if values == expected {
                Ok(())
            } else {
                Err(format!("{}·{}", h.labels()[i], h.labels()[k]))
            }
        })
    }));

    checks.push(Check::run("dual comultiplication covered on the right", "dual.comultiplication-right-cover", &ex, || {
        first_failure(0..n * n, |&ab| {
            let (ia, ib) = (ab / n, ab % n);
            let lhs = h.t1_apply(&kron(&basis[ia], &basis[ib]));
            let mut rhs = zeros(n * n);
            for (k, c) in support(&a.coproduct(&basis[ib])) {
                let (p, q) = (k / n, k % n);
                let left = a.mul(&a.antipode_inv(&basis[p]), &basis[ia]);
                linalg::axpy(&mut rhs, c, &kron(&left, &basis[q]));
            }
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("a={}, b={}", a.labels()[ia], a.labels()[ib]))
            }
        })
    }));

    checks.push(Check::run("dual comultiplication covered on the left", "dual.comultiplication-left-cover", &ex, || {
        let one = h.unit().clone();
        first_failure(0..n * n, |&ab| {
            let (ia, ib) = (ab / n, ab % n);
            let cop = h.t1_apply(&kron(&basis[ia], &one));
            let cover = kron(&one, &h.antipode_inv(&basis[ib]));
            let prod = h.tensor_mul(&cover, &cop);
            let lhs = Mat::identity(n).kron(h.antipode_matrix()).apply(&prod);
            let mut rhs = zeros(n * n);
            for (k, c) in support(&a.coproduct(&basis[ib])) {
                let (p, q) = (k / n, k % n);
                linalg::axpy(&mut rhs, c, &kron(&a.mul(&basis[p], &basis[ia]), &basis[q]));
            }
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("a={}, b={}", a.labels()[ia], a.labels()[ib]))
            }
        })
    }));

    checks.push(Check::run("dual counit is the integral", "dual.counit", &ex, || {
        first_failure(0..n, |&i| {
            let phi = a.phi(&basis[i]).map_err(|e| e.to_string())?;
            if h.counit(&basis[i]) == phi {
                Ok(())
            } else {
                Err(format!("a={}", a.labels()[i]))
            }
        })
    }));

    checks.push(Check::run("dual right integral pairs with the counit", "dual.right-integral", &ex, || {
        first_failure(0..n, |&b| {
            let w = a.antipode(&basis[b]);
            if d.psi_hat(&w) == a.counit(&basis[b]) {
                Ok(())
            } else {
                Err(format!("b={}", a.labels()[b]))
            }
        })
    }));

    checks.push(Check::run("dual right integral invariance", "dual.right-integral", &ex, || {
        // (ψ̂⊗ι)Δ̂(w) = ψ̂(w)1
        let one = h.unit().clone();
        first_failure(0..n, |&i| {
            let cop = h.t1_apply(&kron(&basis[i], &one));
            let mut lhs = zeros(n);
            for (k, c) in support(&cop) {
                lhs[k % n] = &lhs[k % n] + &(c * &d.psi_hat(&basis[k / n]));
            }
            if lhs == linalg::scale(&d.psi_hat(&basis[i]), &one) {
                Ok(())
            } else {
                Err(format!("w={}", h.labels()[i]))
            }
        })
    }));
    checks
}

/// Checks that `θ` is a bijective algebra map onto `model` that also
/// intertwines counits and comultiplications.
pub fn verify_theta(d: &DualHopf, model: &FiniteHopf) -> Vec<Check> {
    let h = &d.hopf;
    let n = h.dim();
    let theta = d.theta_matrix();
    let basis = h.algebra().basis();
    let ex = Scope::Exhaustive;
    let mut checks = Vec::new();
    checks.push(Check::of_bool("theta bijective", "dual.theta", model.dim() == n && theta.rank() == n, || {
        format!("rank {} of {}", theta.rank(), n)
    }));
    checks.push(Check::run("theta multiplicative", "dual.theta", &ex, || {
        first_failure(0..n * n, |&ik| {
            let (i, k) = (ik / n, ik % n);
            let lhs = theta.apply(&h.mul(&basis[i], &basis[k]));
            let rhs = model.mul(&theta.apply(&basis[i]), &theta.apply(&basis[k]));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("w={}, u={}", h.labels()[i], h.labels()[k]))
            }
        })
    }));
    checks.push(Check::run("theta preserves comultiplication", "dual.theta", &ex, || {
        let tt = theta.kron(theta);
        first_failure(0..n * n, |&ik| {
            let (i, k) = (ik / n, ik % n);
            let lhs = tt.apply(&h.t1_apply(&kron(&basis[i], &basis[k])));
            let rhs = model.t1_apply(&kron(&theta.apply(&basis[i]), &theta.apply(&basis[k])));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("w={}, u={}", h.labels()[i], h.labels()[k]))
            }
        })
    }));
    checks.push(Check::run("theta preserves counit", "dual.theta", &ex, || {
        first_failure(0..n, |&i| {
            if h.counit(&basis[i]) == model.counit(&theta.apply(&basis[i])) {
                Ok(())
            } else {
                Err(format!("w={}", h.labels()[i]))
            }
        })
    }));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Cyclic, Integers};

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn function_algebra_t1_on_z4() {
        let a = FunctionAlgebra::new(Cyclic::new(4), q());
        assert_eq!(a.t1(&3, &1), Sparse::single((2, 1), Scalar::one()));
        assert_eq!(a.t2(&1, &3), Sparse::single((1, 2), Scalar::one()));
        assert_eq!(a.counit(&0), Scalar::one());
        assert_eq!(a.counit(&1), Scalar::zero());
    }

    #[test]
    fn integers_cover_and_antipode() {
        let a = FunctionAlgebra::new(Integers, q());
        assert_eq!(cover_right(&a, &5, &2), Sparse::single((3, 2), Scalar::one()));
        assert_eq!(a.antipode(&5), Sparse::single(-5, Scalar::one()));
    }

    #[test]
    fn group_algebra_integral() {
        let g = GroupAlgebra::new(Cyclic::new(4), q());
        let h = FiniteHopf::materialize(&g).unwrap();
        let x = vec![Scalar::from_ratio(2, 1), Scalar::from_ratio(3, 1), Scalar::zero(), Scalar::zero()];
        assert_eq!(h.phi(&x).unwrap(), Scalar::from_ratio(2, 1));
        assert_eq!(cover_left(&g, &1, &2), Sparse::single((3, 2), Scalar::one()));
    }

    #[test]
    fn finite_instances_verify() {
        let h = FiniteHopf::materialize(&FunctionAlgebra::new(Cyclic::new(4), q())).unwrap();
        let checks = verify_hopf(&h, &(0..4).collect::<Vec<_>>(), &Scope::Exhaustive);
        assert!(checks.iter().all(Check::passed), "{checks:?}");
        let m = modular_element(&h).unwrap();
        assert!(m.is_trivial(&h));
        assert!(verify_modular(&h, &m).iter().all(Check::passed));
    }

    #[test]
    fn left_integral_is_unique_up_to_scale() {
        let h = FiniteHopf::materialize(&GroupAlgebra::new(Cyclic::new(3), q())).unwrap();
        let ints = h.left_integrals();
        assert_eq!(ints.dim(), 1);
        assert!(ints.contains(h.integral_vector().unwrap()));
    }

    #[test]
    fn dual_identities_and_theta() {
        use crate::group::Symmetric3;
        let a = FiniteHopf::materialize(&FunctionAlgebra::new(Cyclic::new(4), q())).unwrap();
        let kg = FiniteHopf::materialize(&GroupAlgebra::new(Cyclic::new(4), q())).unwrap();
        let d = DualHopf::new(&a).unwrap();
        assert!(verify_dual_identities(&d).iter().all(Check::passed));
        assert!(verify_hopf(&d.hopf, &(0..4).collect::<Vec<_>>(), &Scope::Exhaustive).iter().all(Check::passed));
        assert!(verify_theta(&d, &kg).iter().all(Check::passed));
        let dk = DualHopf::new(&kg).unwrap();
        assert!(verify_theta(&dk, &a).iter().all(Check::passed));
        for h in [
            FiniteHopf::materialize(&FunctionAlgebra::new(Symmetric3, q())).unwrap(),
            FiniteHopf::materialize(&GroupAlgebra::new(Symmetric3, q())).unwrap(),
        ] {
            let d = DualHopf::new(&h).unwrap();
            let checks = verify_dual_identities(&d);
            assert!(checks.iter().all(Check::passed), "{checks:?}");
            let w: Vec<usize> = (0..6).collect();
            assert!(verify_hopf(&d.hopf, &w, &Scope::Exhaustive).iter().all(Check::passed));
        }
    }
}
