use proptest::prelude::*;

use parhopf::action::{function_algebra_on_group_algebra, group_algebra_average, subgroup_average, PartialAction};
use parhopf::algebra::FiniteAlgebra;
use parhopf::coaction::PartialCoaction;
use parhopf::group::{Cyclic, Group, Symmetric3, TableGroup};
use parhopf::hopf::{FiniteHopf, FunctionAlgebra, GroupAlgebra};
use parhopf::linalg::{self, Mat, Vector};
use parhopf::morita::MoritaContext;
use parhopf::scalar::{Field, Scalar};
use parhopf::spec::ExampleSpec;

const Q: Field = Field::Rational;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(rational(), n)
}

fn residue(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p as i64).prop_map(move |n| Field::Prime(p).int(n))
}

fn a_z(n: u32) -> FiniteHopf {
    FiniteHopf::materialize(&FunctionAlgebra::new(Cyclic::new(n), Q)).unwrap()
}

fn k_z(n: u32) -> FiniteHopf {
    FiniteHopf::materialize(&GroupAlgebra::new(Cyclic::new(n), Q)).unwrap()
}

fn indicator(n: usize, set: &[usize]) -> Vector {
    (0..n).map(|i| if set.contains(&i) { Scalar::one() } else { Scalar::zero() }).collect()
}

fn induced_coaction() -> PartialCoaction {
    let g = PartialCoaction::global_self(&a_z(4)).unwrap();
    PartialCoaction::induced(&g, &indicator(4, &[0, 2])).unwrap()
}

fn sum(xs: impl IntoIterator<Item = Scalar>) -> Scalar {
    xs.into_iter().fold(Scalar::zero(), |a, b| a + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 5, 7, 101]), seed in any::<[u16; 3]>()) {
        let f = Field::Prime(p);
        let [a, b, c] = seed.map(|s| f.int(s as i64));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let sum_p = (0..p).fold(f.zero(), |acc, _| &acc + &a);
        prop_assert!(sum_p.is_zero());
        match a.inv() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn gf7_inverse_table(a in residue(7)) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..5, entries in proptest::collection::vec(rational(), 25)) {
        let m = Mat::from_fn(rows, cols, |i, j| entries[i * 5 + j].clone());
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.dim(), cols);
        for v in kernel.basis() {
            prop_assert!(linalg::is_zero(&m.apply(v)));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn inverse_and_solve(entries in proptest::collection::vec(rational(), 16), b in vector(4)) {
        let m = Mat::from_fn(4, 4, |i, j| entries[i * 4 + j].clone());
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                let x = linalg::solve(&m, &b).unwrap().unwrap();
                prop_assert_eq!(m.apply(&x), b);
            }
            None => prop_assert!(m.rank() < 4),
        }
    }

    #[test]
    fn function_algebra_coproduct_is_translation(n in 2u32..7, f in vector(6), g in vector(6)) {
        let n_ = n as usize;
        let (f, g) = (&f[..n_], &g[..n_]);
        let h = a_z(n);
        // Δ(f)(x, y) = f(x + y)
        let delta = h.coproduct(f);
        for x in 0..n_ {
            for y in 0..n_ {
                prop_assert_eq!(&delta[x * n_ + y], &f[(x + y) % n_]);
            }
        }
        prop_assert_eq!(h.coproduct(&h.mul(f, g)), h.tensor_mul(&h.coproduct(f), &h.coproduct(g)));
        prop_assert_eq!(h.counit(f), f[0].clone());
        // S(f)(x) = f(-x)
        let s = h.antipode(f);
        for x in 0..n_ {
            prop_assert_eq!(&s[x], &f[(n_ - x) % n_]);
        }
    }

    #[test]
    fn group_algebra_product_is_convolution(n in 2u32..7, a in vector(6), b in vector(6)) {
        let n_ = n as usize;
        let (a, b) = (&a[..n_], &b[..n_]);
        let h = k_z(n);
        let ab = h.mul(a, b);
        for k in 0..n_ {
            let want = sum((0..n_).map(|i| &a[i] * &b[(k + n_ - i) % n_]));
            prop_assert_eq!(&ab[k], &want);
        }
        prop_assert_eq!(h.counit(&ab), &h.counit(a) * &h.counit(b));
        prop_assert_eq!(h.antipode(&ab), h.mul(&h.antipode(b), &h.antipode(a)));
        prop_assert_eq!(h.coproduct(&ab), h.tensor_mul(&h.coproduct(a), &h.coproduct(b)));
    }

    #[test]
    fn s3_antipode_antimultiplicative(a in vector(6), b in vector(6)) {
        for h in [
            FiniteHopf::materialize(&FunctionAlgebra::new(Symmetric3, Q)).unwrap(),
            FiniteHopf::materialize(&GroupAlgebra::new(Symmetric3, Q)).unwrap(),
        ] {
            let ab = h.mul(&a, &b);
            prop_assert_eq!(h.antipode(&ab), h.mul(&h.antipode(&b), &h.antipode(&a)));
            prop_assert_eq!(h.antipode_inv(&h.antipode(&a)), a.clone());
            prop_assert_eq!(h.coproduct(&ab), h.tensor_mul(&h.coproduct(&a), &h.coproduct(&b)));
        }
    }

    #[test]
    fn induced_coaction_is_multiplicative(x in vector(2), y in vector(2)) {
        let c = induced_coaction();
        let ra = c.tensor_algebra();
        let xy = c.algebra.mul(&x, &y);
        prop_assert_eq!(c.rho(&xy), ra.mul(&c.rho(&x), &c.rho(&y)));
        // ρ(x) = E ρ(x), and E is idempotent
        prop_assert_eq!(c.e().apply_left(&c.rho(&x)), c.rho(&x));
        prop_assert_eq!(c.e().mul(c.e()), c.e().clone());
        // ρ(x) = (f_N⊗1)Δ(x) with f_N the unit of L: x on δ0, δ2
        let h = a_z(4);
        let embedded = vec![x[0].clone(), Scalar::zero(), x[1].clone(), Scalar::zero()];
        let delta = h.coproduct(&embedded);
        let want: Vector = [0usize, 2].iter().flat_map(|&g| delta[g * 4..g * 4 + 4].to_vec()).collect();
        prop_assert_eq!(c.rho(&x), want);
    }

    #[test]
    fn lambda_action_is_scaling(a in vector(4), x in vector(2)) {
        let g = Cyclic::new(4);
        let lambda = subgroup_average(&g, Q, &[0, 2]).unwrap();
        let p = PartialAction::from_functional(&a_z(4), &FiniteAlgebra::diagonal(2), &lambda, true).unwrap();
        prop_assert_eq!(p.act(&a, &x), linalg::scale(&linalg::dot(&a, &lambda), &x));
        prop_assert_eq!(p.e_of(&a).apply_left(&x), linalg::scale(&linalg::dot(&a, &lambda), &x));
    }

    #[test]
    fn induced_action_formula(a in vector(4), x in vector(2)) {
        let g = Cyclic::new(4);
        let glob = PartialAction::global("▷", a_z(4), k_z(4).algebra().clone(), function_algebra_on_group_algebra(&g).unwrap()).unwrap();
        let p = PartialAction::induced(&glob, &group_algebra_average(&g, Q, &[0, 2]).unwrap()).unwrap();
        // δ_p·u_j = ½u_j when p ≡ j mod 2
        let half = Scalar::from_ratio(1, 2);
        let want: Vector = (0..2).map(|j| &half * &(&(&a[j] + &a[j + 2]) * &x[j])).collect();
        prop_assert_eq!(p.act(&a, &x), want);
    }

    #[test]
    fn table_group_matches_source(i in 0usize..6, j in 0usize..6) {
        let t = TableGroup::of(&Symmetric3).unwrap();
        let e = Symmetric3.elements().unwrap();
        let k = t.op(&i, &j);
        prop_assert_eq!(&e[k], &Symmetric3.op(&e[i], &e[j]));
        prop_assert_eq!(t.op(&i, &t.inv(&i)), t.identity());
    }

    #[test]
    fn fingerprint_tracks_content(n in 2u32..12, m in 2u32..12) {
        let text = |n: u32| format!("name = \"z\"\n[group]\nkind = \"cyclic\"\norder = {n}\n[hopf]\nkind = \"group-algebra\"\n");
        let reordered = format!("name = \"z\"\n[hopf]\nkind = \"group-algebra\"\n[group]\norder = {n}\nkind = \"cyclic\"\n");
        let a = ExampleSpec::parse(&text(n)).unwrap();
        prop_assert_eq!(a.fingerprint(), ExampleSpec::parse(&text(n)).unwrap().fingerprint());
        prop_assert_eq!(a.fingerprint(), ExampleSpec::parse(&reordered).unwrap().fingerprint());
        prop_assert_eq!(n == m, a.fingerprint() == ExampleSpec::parse(&text(m)).unwrap().fingerprint());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn morita_pairings_are_bilinear_and_compatible(cx in vector(2), cy in vector(2), cz in vector(2), s in rational()) {
        let ctx = MoritaContext::build(&induced_coaction()).unwrap();
        let (x, y, z) = (ctx.space.combine(&cx), ctx.space.combine(&cy), ctx.space.combine(&cz));
        let r = &ctx.coaction.algebra;
        let sx = linalg::add(&linalg::scale(&s, &x), &z);
        prop_assert_eq!(ctx.pairing(&sx, &y), linalg::add(&linalg::scale(&s, &ctx.pairing(&x, &y)), &ctx.pairing(&z, &y)));
        prop_assert_eq!(ctx.bracket(&sx, &y), linalg::add(&linalg::scale(&s, &ctx.bracket(&x, &y)), &ctx.bracket(&z, &y)));
        // [x, y]▷z = x(y, z) and x◁[y, z] = (x, y)z
        prop_assert_eq!(ctx.act_left(&ctx.bracket(&x, &y), &z), r.mul(&x, &ctx.pairing(&y, &z)));
        prop_assert_eq!(ctx.act_right(&x, &ctx.bracket(&y, &z)), r.mul(&ctx.pairing(&x, &y), &z));
        // β lands in the E-corner
        let b = ctx.beta(&x, &y);
        prop_assert_eq!(ctx.coaction.e().apply_left(&b), b.clone());
        prop_assert!(ctx.corner.contains(&b));
    }
}
