//! Finite-dimensional associative algebras given by structure constants,
//! their multipliers, and operational multipliers of function algebras.

use std::sync::Arc;

use thiserror::Error;

use crate::group::Group;
use crate::linalg::{self, axpy, is_zero, solve, support, unit_vector, zeros, Mat, Sparse, Subspace, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("structure constants are not associative at ({0}·{1})·{2}")]
    NotAssociative(String, String, String),
    #[error("product is degenerate: {0} annihilates the algebra")]
    Degenerate(String),
    #[error("subspace is not closed under the product")]
    NotSubalgebra,
    #[error("expected {expected} structure-constant entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("multiplier equality on a sparse space needs a nonempty witness set")]
    EmptyWitnessSet,
}

/// An associative algebra with a fixed ordered basis; `e_i·e_j` is stored
/// sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl FiniteAlgebra {
    /// `product(i, j)` returns the coordinates of `e_i·e_j`. Fails fast on
    /// non-associative input.
    pub fn from_fn(
        labels: Vec<String>,
        product: impl Fn(usize, usize) -> Vector,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = product(i, j);
                if v.len() != n {
                    return Err(AlgebraError::Shape { expected: n, found: v.len() });
                }
                table.push(support(&v).map(|(k, c)| (k, c.clone())).collect());
            }
        }
        let alg = FiniteAlgebra { labels, table };
        alg.check_associative()?;
        Ok(alg)
    }

    /// Structure constants `c[i][j][k]` with `e_i e_j = Σ_k c[i][j][k] e_k`.
    pub fn from_constants(
        labels: Vec<String>,
        c: &[Vec<Vec<Scalar>>],
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let n = labels.len();
        if c.len() != n || c.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Shape { expected: n * n, found: c.iter().map(Vec::len).sum() });
        }
        Self::from_fn(labels, |i, j| c[i][j].clone())
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ei = unit_vector(n, i);
                    let ej = unit_vector(n, j);
                    let ek = unit_vector(n, k);
                    let lhs = self.mul(&self.mul(&ei, &ej), &ek);
                    let rhs = self.mul(&ei, &self.mul(&ej, &ek));
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-dimensional algebra 𝕜.
    pub fn scalars() -> FiniteAlgebra {
        Self::from_fn(vec!["1".into()], |_, _| vec![Scalar::one()]).expect("associative")
    }

    /// `𝕜^n` with pointwise product.
    pub fn diagonal(n: usize) -> FiniteAlgebra {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Self::from_fn(labels, |i, j| if i == j { unit_vector(n, i) } else { zeros(n) })
            .expect("associative")
    }

    /// All products zero.
    pub fn zero_product(n: usize) -> FiniteAlgebra {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Self::from_fn(labels, |_, _| zeros(n)).expect("associative")
    }

    /// `span{E11, E12}` inside 2×2 matrices: nondegenerate without a unit.
    pub fn row_algebra() -> FiniteAlgebra {
        Self::from_fn(vec!["E11".into(), "E12".into()], |i, j| match (i, j) {
            (0, 0) => unit_vector(2, 0),
            (0, 1) => unit_vector(2, 1),
            _ => zeros(2),
        })
        .expect("associative")
    }

    /// Full 2×2 matrix algebra, basis `E11, E12, E21, E22`.
    pub fn matrices2() -> FiniteAlgebra {
        let labels = ["E11", "E12", "E21", "E22"].map(String::from).to_vec();
        Self::from_fn(labels, |i, j| {
            let (a, b) = (i / 2, i % 2);
            let (c, d) = (j / 2, j % 2);
            if b == c {
                unit_vector(4, 2 * a + d)
            } else {
                zeros(4)
            }
        })
        .expect("associative")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| unit_vector(self.dim(), i)).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zeros(n);
        let bs: Vec<(usize, &Scalar)> = support(b).collect();
        for (i, x) in support(a) {
            for (j, y) in &bs {
                let c = x * *y;
                for (k, s) in self.basis_product(i, *j) {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_matrix(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = self.basis().iter().map(|e| self.mul(a, e)).collect();
        Mat::from_columns(&cols, self.dim())
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_matrix(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = self.basis().iter().map(|e| self.mul(e, a)).collect();
        Mat::from_columns(&cols, self.dim())
    }

    /// Human-readable linear combination of basis labels.
    pub fn format(&self, v: &[Scalar]) -> String {
        format_combination(&self.labels, v)
    }

    /// `Ok` when no nonzero `a` has `aA = 0 = Aa`; otherwise the first
    /// annihilating vector of the canonical kernel basis.
    pub fn check_nondegenerate(&self) -> Result<(), Vector> {
        let n = self.dim();
        let cols: Vec<Vector> = self
            .basis()
            .iter()
            .map(|a| {
                let mut c = Vec::with_capacity(2 * n * n);
                for e in self.basis() {
                    c.extend(self.mul(a, &e));
                }
                for e in self.basis() {
                    c.extend(self.mul(&e, a));
                }
                c
            })
            .collect();
        let k = Mat::from_columns(&cols, 2 * n * n).kernel();
        match k.basis().first() {
            None => Ok(()),
            Some(w) => Err(w.clone()),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.check_nondegenerate().is_ok()
    }

    /// Some `e` with `e·s = s = s·e` for every `s` in `set`.
    pub fn find_local_unit(&self, set: &[Vector]) -> Option<Vector> {
        let n = self.dim();
        if set.is_empty() {
            return Some(zeros(n));
        }
        let mut cols = vec![Vec::new(); n];
        let mut rhs = Vec::new();
        for s in set {
            for (i, e) in self.basis().iter().enumerate() {
                cols[i].extend(self.mul(e, s));
                cols[i].extend(self.mul(s, e));
            }
            rhs.extend(s.iter().cloned());
            rhs.extend(s.iter().cloned());
        }
        let a = Mat::from_columns(&cols, rhs.len());
        solve(&a, &rhs).expect("consistent shapes")
    }

    pub fn unit(&self) -> Option<Vector> {
        self.find_local_unit(&self.basis())
    }

    /// Basis of M(A) as compatible operator pairs.
    pub fn multiplier_algebra(&self) -> MultiplierAlgebra {
        let n = self.dim();
        let nn = n * n;
        // Unknowns: u[k][i] at k*n+i, v[k][i] at nn+k*n+i, meaning
        // U(e_i) = Σ_k u[k][i] e_k.
        let mut rows: Vec<Vector> = Vec::new();
        let u = |k: usize, i: usize| k * n + i;
        let v = |k: usize, i: usize| nn + k * n + i;
        for a in 0..n {
            for b in 0..n {
                let ab = self.basis_product(a, b);
                let mut eq_u = vec![zeros(2 * nn); n];
                let mut eq_v = vec![zeros(2 * nn); n];
                let mut eq_c = vec![zeros(2 * nn); n];
                for t in 0..n {
                    for (c, s) in ab {
                        eq_u[t][u(t, *c)] = &eq_u[t][u(t, *c)] + s;
                        eq_v[t][v(t, *c)] = &eq_v[t][v(t, *c)] + s;
                    }
                }
                for k in 0..n {
                    // U(e_a) e_b and V(e_a) e_b
                    for (t, s) in self.basis_product(k, b) {
                        eq_u[*t][u(k, a)] = &eq_u[*t][u(k, a)] - s;
                        eq_c[*t][v(k, a)] = &eq_c[*t][v(k, a)] + s;
                    }
                    // e_a V(e_b) and e_a U(e_b)
                    for (t, s) in self.basis_product(a, k) {
                        eq_v[*t][v(k, b)] = &eq_v[*t][v(k, b)] - s;
                        eq_c[*t][u(k, b)] = &eq_c[*t][u(k, b)] - s;
                    }
                }
                rows.extend(eq_u.into_iter().chain(eq_v).chain(eq_c).filter(|r| !is_zero(r)));
            }
        }
        let space = if rows.is_empty() {
            Subspace::full(2 * nn)
        } else {
            Mat::from_rows(rows, 2 * nn).expect("uniform rows").kernel()
        };
        let basis = space.basis().iter().map(|x| Multiplier::from_flat(n, x)).collect();
        MultiplierAlgebra { n, space, basis }
    }

    /// `A ⊗ B` with componentwise product; basis index `(i, j) ↦ i·dim B + j`.
    pub fn tensor(&self, other: &FiniteAlgebra) -> FiniteAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let mut table = Vec::with_capacity(n * m * n * m);
        for i in 0..n {
            for k in 0..m {
                for j in 0..n {
                    for l in 0..m {
                        let mut entry = Vec::new();
                        for (p, s) in self.basis_product(i, j) {
                            for (q, t) in other.basis_product(k, l) {
                                entry.push((p * m + q, s * t));
                            }
                        }
                        table.push(entry);
                    }
                }
            }
        }
        FiniteAlgebra { labels, table }
    }

    /// The subalgebra spanned by `space`, with basis the echelon basis of
    /// `space`.
    pub fn subalgebra(&self, space: &Subspace) -> Result<Subalgebra, AlgebraError> {
        let basis = space.basis().to_vec();
        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                let p = self.mul(x, y);
                products.push(space.coordinates(&p).ok_or(AlgebraError::NotSubalgebra)?);
            }
        }
        let d = basis.len();
        let labels = basis.iter().map(|b| self.format(b)).collect();
        let algebra = FiniteAlgebra::from_fn(labels, |i, j| products[i * d + j].clone())?;
        Ok(Subalgebra { algebra, space: space.clone() })
    }
}

/// Renders `Σ c_i label_i`.
pub fn format_combination(labels: &[String], v: &[Scalar]) -> String {
    let terms: Vec<String> = support(v)
        .map(|(i, c)| {
            if c.is_one() {
                labels[i].clone()
            } else {
                format!("{c}·{}", labels[i])
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// A subalgebra together with its embedding.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: FiniteAlgebra,
    pub space: Subspace,
}

impl Subalgebra {
    pub fn embed(&self, coords: &[Scalar]) -> Vector {
        self.space.combine(coords)
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        self.space.coordinates(v)
    }
}

/// A pair `(L, R)` of operators, left and right multiplication by a
/// virtual element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub left: Mat,
    pub right: Mat,
}

impl Multiplier {
    pub fn identity(n: usize) -> Multiplier {
        Multiplier { left: Mat::identity(n), right: Mat::identity(n) }
    }

    pub fn zero(n: usize) -> Multiplier {
        Multiplier { left: Mat::zeros(n, n), right: Mat::zeros(n, n) }
    }

    /// `j(a)`.
    pub fn element(alg: &FiniteAlgebra, a: &[Scalar]) -> Multiplier {
        Multiplier { left: alg.left_matrix(a), right: alg.right_matrix(a) }
    }

    fn from_flat(n: usize, x: &[Scalar]) -> Multiplier {
        let nn = n * n;
        let left = Mat::from_fn(n, n, |k, i| x[k * n + i].clone());
        let right = Mat::from_fn(n, n, |k, i| x[nn + k * n + i].clone());
        Multiplier { left, right }
    }

    /// Flattened `(L, R)` in the unknown order of `multiplier_algebra`.
    pub fn flatten(&self) -> Vector {
        self.left.entries().iter().chain(self.right.entries()).cloned().collect()
    }

    pub fn dim(&self) -> usize {
        self.left.rows()
    }

    pub fn apply_left(&self, x: &[Scalar]) -> Vector {
        self.left.apply(x)
    }

    pub fn apply_right(&self, x: &[Scalar]) -> Vector {
        self.right.apply(x)
    }

    /// `(U,V)(U′,V′) = (U∘U′, V′∘V)`.
    pub fn mul(&self, other: &Multiplier) -> Multiplier {
        Multiplier { left: self.left.mul(&other.left), right: other.right.mul(&self.right) }
    }

    pub fn add(&self, other: &Multiplier) -> Multiplier {
        Multiplier { left: self.left.add(&other.left), right: self.right.add(&other.right) }
    }

    pub fn scale(&self, c: &Scalar) -> Multiplier {
        Multiplier { left: self.left.scale(c), right: self.right.scale(c) }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_identity() && self.right.is_identity()
    }

    /// First basis pair `(a, b)` where `a·L(b) ≠ R(a)·b`.
    pub fn compatibility_failure(&self, alg: &FiniteAlgebra) -> Option<(usize, usize)> {
        let basis = alg.basis();
        for (i, a) in basis.iter().enumerate() {
            let ra = self.apply_right(a);
            for (j, b) in basis.iter().enumerate() {
                if alg.mul(a, &self.apply_left(b)) != alg.mul(&ra, b) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Linear combination `Σ c_i m_i`.
    pub fn combine(n: usize, coeffs: &[Scalar], ms: &[Multiplier]) -> Multiplier {
        let mut out = Multiplier::zero(n);
        for (c, m) in coeffs.iter().zip(ms) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    /// Restriction to an invariant subspace, in the subspace's echelon
    /// coordinates; `None` if the subspace is not preserved.
    pub fn restrict(&self, space: &Subspace) -> Option<Multiplier> {
        let restrict_op = |op: &Mat| {
            let cols: Option<Vec<Vector>> =
                space.basis().iter().map(|b| space.coordinates(&op.apply(b))).collect();
            cols.map(|c| Mat::from_columns(&c, space.dim()))
        };
        Some(Multiplier { left: restrict_op(&self.left)?, right: restrict_op(&self.right)? })
    }
}

/// `M(A)` for a finite-dimensional `A`.
#[derive(Clone, Debug)]
pub struct MultiplierAlgebra {
    n: usize,
    space: Subspace,
    basis: Vec<Multiplier>,
}

impl MultiplierAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Multiplier] {
        &self.basis
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn coordinates(&self, m: &Multiplier) -> Option<Vector> {
        self.space.coordinates(&m.flatten())
    }

    pub fn contains(&self, m: &Multiplier) -> bool {
        self.space.contains(&m.flatten())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Multiplier {
        Multiplier::combine(self.n, coeffs, &self.basis)
    }

    /// Coordinates of the identity pair.
    pub fn unit(&self) -> Vector {
        self.coordinates(&Multiplier::identity(self.n)).expect("identity is a multiplier")
    }

    /// Structure constants of M(A) in its own basis.
    pub fn as_algebra(&self) -> FiniteAlgebra {
        let labels = (0..self.dim()).map(|i| format!("m{i}")).collect();
        FiniteAlgebra::from_fn(labels, |i, j| {
            self.coordinates(&self.basis[i].mul(&self.basis[j])).expect("M(A) is closed")
        })
        .expect("composition is associative")
    }
}

/// A multiplier of the function algebra `A_G` given by pointwise
/// multiplication with an arbitrary function on `G`.
#[derive(Clone)]
pub struct FunctionMultiplier<G: Group> {
    f: Arc<dyn Fn(&G::Elem) -> Scalar + Send + Sync>,
}

impl<G: Group> FunctionMultiplier<G> {
    pub fn new(f: impl Fn(&G::Elem) -> Scalar + Send + Sync + 'static) -> Self {
        FunctionMultiplier { f: Arc::new(f) }
    }

    pub fn value(&self, g: &G::Elem) -> Scalar {
        (self.f)(g)
    }

    /// Both the left and the right action: `x ↦ f·x`.
    pub fn apply(&self, x: &Sparse<G::Elem>) -> Sparse<G::Elem> {
        x.iter().map(|(g, c)| (g.clone(), c * &self.value(g))).collect()
    }

    pub fn mul(&self, other: &FunctionMultiplier<G>) -> FunctionMultiplier<G>
    where
        G: 'static,
    {
        let (f, g) = (self.f.clone(), other.f.clone());
        FunctionMultiplier::new(move |x| f(x) * g(x))
    }

    /// Points of `window` where the function is nonzero.
    pub fn support_in(&self, window: &[G::Elem]) -> Vec<G::Elem> {
        window.iter().filter(|g| !self.value(g).is_zero()).cloned().collect()
    }
}

/// Compares two function multipliers on a witness set of elements of `A_G`.
pub fn multiplier_eq<G: Group>(
    m1: &FunctionMultiplier<G>,
    m2: &FunctionMultiplier<G>,
    witnesses: &[Sparse<G::Elem>],
) -> Result<bool, AlgebraError> {
    if witnesses.is_empty() {
        return Err(AlgebraError::EmptyWitnessSet);
    }
    Ok(witnesses.iter().all(|w| m1.apply(w) == m2.apply(w)))
}

/// Exhaustive equality of two finite-dimensional multipliers.
pub fn finite_multiplier_eq(m1: &Multiplier, m2: &Multiplier) -> bool {
    m1 == m2
}

/// `Σ c_i v_i`
pub fn span_combination(coeffs: &[Scalar], vs: &[Vector], n: usize) -> Vector {
    let mut out = zeros(n);
    for (c, v) in coeffs.iter().zip(vs) {
        axpy(&mut out, c, v);
    }
    out
}

/// The operator `T` on `space` with `T(s_k) = t_k` for a spanning family
/// `s_k`, as a matrix in the echelon coordinates of `space`, or `None`
/// when no linear map fits (the assignment is not well defined).
pub fn operator_from_spanning(space: &Subspace, sources: &[Vector], targets: &[Vector], target_dim: usize) -> Option<Mat> {
    let d = space.dim();
    let src: Option<Vec<Vector>> = sources.iter().map(|s| space.coordinates(s)).collect();
    let src = Mat::from_columns(&src?, d);
    // Solve X·S = T, i.e. Sᵀ·Xᵀ = Tᵀ.
    let t = Mat::from_columns(targets, target_dim);
    let xt = linalg::solve_many(&src.transpose(), &t.transpose()).expect("shapes agree")?;
    Some(xt.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_product_is_degenerate() {
        let z = FiniteAlgebra::zero_product(2);
        assert_eq!(z.check_nondegenerate(), Err(unit_vector(2, 0)));
        assert_eq!(z.find_local_unit(&[unit_vector(2, 0)]), None);
    }

    #[test]
    fn row_algebra_is_nondegenerate_and_not_unital() {
        let r = FiniteAlgebra::row_algebra();
        assert!(r.is_nondegenerate());
        assert_eq!(r.unit(), None);
        let m = r.multiplier_algebra();
        // Oracle: the idealizer of span{E11, E12} in 2×2 matrices is the
        // upper triangular matrices, acting by left and right multiplication.
        assert_eq!(m.dim(), 3);
        let left_e11 = Multiplier::element(&r, &unit_vector(2, 0));
        assert!(m.contains(&left_e11));
        assert!(m.contains(&Multiplier::identity(2)));
        let e22 = Multiplier {
            left: Mat::from_rows(vec![vec![Scalar::zero(); 2]; 2], 2).unwrap(),
            right: Mat::from_fn(2, 2, |i, j| if i == 1 && j == 1 { Scalar::one() } else { Scalar::zero() }),
        };
        assert!(m.contains(&e22));
    }

    #[test]
    fn unital_multiplier_algebra_matches() {
        let a = FiniteAlgebra::matrices2();
        assert_eq!(a.multiplier_algebra().dim(), 4);
        assert!(a.multiplier_algebra().contains(&Multiplier::identity(4)));
    }

    #[test]
    fn non_associative_input_is_rejected() {
        // e0·e0 = e1, everything else zero except e1·e0 = e0
        let bad = FiniteAlgebra::from_fn(vec!["a".into(), "b".into()], |i, j| match (i, j) {
            (0, 0) => unit_vector(2, 1),
            (1, 0) => unit_vector(2, 0),
            _ => zeros(2),
        });
        assert!(matches!(bad, Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn operator_from_spanning_detects_inconsistency() {
        let space = Subspace::full(1);
        let s = vec![vec![Scalar::one()], vec![Scalar::one()]];
        let ok = vec![vec![Scalar::one()], vec![Scalar::one()]];
        let bad = vec![vec![Scalar::one()], vec![Scalar::zero()]];
        assert!(operator_from_spanning(&space, &s, &ok, 1).is_some());
        assert!(operator_from_spanning(&space, &s, &bad, 1).is_none());
    }
}
