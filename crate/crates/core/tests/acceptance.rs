//! Acceptance suite: one exact check per criterion, one line of output each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use parhopf::action::{function_algebra_on_group_algebra, group_algebra_average, subgroup_average, PartialAction};
use parhopf::algebra::{FiniteAlgebra, Multiplier};
use parhopf::coaction::PartialCoaction;
use parhopf::duality::{dualize_action, roundtrip, DualizeOptions};
use parhopf::group::{Cyclic, Group, Integers, Symmetric3};
use parhopf::hopf::{
    modular_element, verify_dual_identities, verify_hopf, verify_modular, verify_theta, verify_trivial_modular,
    DualHopf, FiniteHopf, FunctionAlgebra, GroupAlgebra, HopfInstance,
};
use parhopf::linalg::{self, kron, unit_vector, Vector};
use parhopf::morita::{check_galois_equivalence, coinvariants, galois_map, MoritaContext, Verdict};
use parhopf::report::{Check, Scope, Status};
use parhopf::runner::{action_dual_of, coaction_of, run_dir, Command, Exit, RunOptions};
use parhopf::scalar::{Field, Scalar};
use parhopf::spec::ExampleSpec;

type Outcome = Result<String, String>;

const Q: Field = Field::Rational;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(what: &str, checks: &[Check]) -> Result<usize, String> {
    match checks.iter().find(|c| !c.passed()) {
        Some(c) => Err(format!("{what}: {} [{}] failed: {}", c.name, c.anchor, c.witness.as_deref().unwrap_or(""))),
        None if checks.is_empty() => Err(format!("{what}: no checks ran")),
        None => Ok(checks.len()),
    }
}

fn indicator(n: usize, set: &[usize]) -> Vector {
    (0..n).map(|i| if set.contains(&i) { Scalar::one() } else { Scalar::zero() }).collect()
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

fn a_g<G: Group + Clone>(g: &G) -> FiniteHopf {
    FiniteHopf::materialize(&FunctionAlgebra::new(g.clone(), Q)).unwrap()
}

fn k_g<G: Group + Clone>(g: &G) -> FiniteHopf {
    FiniteHopf::materialize(&GroupAlgebra::new(g.clone(), Q)).unwrap()
}

fn gallery_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../gallery")
}

fn gallery() -> Vec<(String, ExampleSpec)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(gallery_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), ExampleSpec::load(&p).unwrap()))
        .collect()
}

/// `f_N·A_G` for `G = ℤ/4`, `N = {0, 2}`, with `L` on the basis `δ0, δ2`.
fn induced_coaction() -> PartialCoaction {
    let g = PartialCoaction::global_self(&a_g(&Cyclic::new(4))).unwrap();
    PartialCoaction::induced(&g, &indicator(4, &[0, 2])).unwrap()
}

/// `A_G` acting on `f_N·𝕜G` for `G = ℤ/4`, `N = {0, 2}`; `L` has echelon
/// basis `n0 + n2`, `n1 + n3`.
fn induced_action() -> PartialAction {
    let g = Cyclic::new(4);
    let glob =
        PartialAction::global("▷", a_g(&g), k_g(&g).algebra().clone(), function_algebra_on_group_algebra(&g).unwrap())
            .unwrap();
    PartialAction::induced(&glob, &group_algebra_average(&g, Q, &[0, 2]).unwrap()).unwrap()
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{label} took {elapsed:?}, over {limit:?}"))
}

fn hopf_axioms() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut anchors = std::collections::BTreeSet::new();
    fn finite<H: HopfInstance>(h: &H, total: &mut usize, anchors: &mut std::collections::BTreeSet<String>) -> Result<(), String> {
        let checks = verify_hopf(h, &h.basis().unwrap(), &Scope::Exhaustive);
        ensure(checks.iter().all(|c| c.status == Status::Pass), || format!("{} not exhaustive", h.name()))?;
        *total += all_pass(&h.name(), &checks)?;
        anchors.extend(checks.into_iter().map(|c| c.anchor));
        Ok(())
    }
    for n in [2, 4, 6] {
        finite(&FunctionAlgebra::new(Cyclic::new(n), Q), &mut total, &mut anchors)?;
        finite(&GroupAlgebra::new(Cyclic::new(n), Q), &mut total, &mut anchors)?;
    }
    finite(&FunctionAlgebra::new(Symmetric3, Q), &mut total, &mut anchors)?;
    finite(&GroupAlgebra::new(Symmetric3, Q), &mut total, &mut anchors)?;
    for family in [
        "hopf.t-maps-bijective",
        "hopf.counit",
        "hopf.antipode",
        "hopf.antipode-regular",
        "hopf.coassociativity",
        "hopf.comultiplication-homomorphism",
    ] {
        ensure(anchors.contains(family), || format!("no {family} checks"))?;
    }

    // Δ(δ1) = Σ_h δ_h⊗δ_{1-h} on ℤ/4; Δ(n_g) = n_g⊗n_g
    let a = a_g(&Cyclic::new(4));
    let expected: Vector = (0..16).map(|k| if [1, 4, 11, 14].contains(&k) { Scalar::one() } else { Scalar::zero() }).collect();
    ensure(a.coproduct(&unit_vector(4, 1)) == expected, || "Δ(δ1) on A_ℤ/4".into())?;
    let kg = k_g(&Cyclic::new(6));
    for g in 0..6 {
        ensure(kg.coproduct(&unit_vector(6, g)) == unit_vector(36, g * 6 + g), || format!("Δ(n{g}) on 𝕜ℤ/6"))?;
    }

    let scope = Scope::Sample("window {-8..8}".into());
    let mut sampled = 0;
    let fa = FunctionAlgebra::new(Integers, Q);
    let mut c = verify_hopf(&fa, &fa.window(8), &scope);
    c.push(verify_trivial_modular(&fa, &fa.window(8), &scope));
    let ga = GroupAlgebra::new(Integers, Q);
    c.extend(verify_hopf(&ga, &ga.window(8), &scope));
    c.push(verify_trivial_modular(&ga, &ga.window(8), &scope));
    ensure(c.iter().all(|c| c.status == Status::SampleVerified), || "ℤ checks not all sample-verified".into())?;
    sampled += c.len();
    within("criterion 1", start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{total} exhaustive checks on 8 finite instances, {sampled} sample-verified on ℤ window 8"))
}

fn integral_and_modular() -> Outcome {
    let start = Instant::now();
    let hopfs = [
        a_g(&Cyclic::new(2)),
        a_g(&Cyclic::new(4)),
        a_g(&Cyclic::new(6)),
        a_g(&Symmetric3),
        k_g(&Cyclic::new(2)),
        k_g(&Cyclic::new(4)),
        k_g(&Cyclic::new(6)),
        k_g(&Symmetric3),
    ];
    for h in &hopfs {
        let n = h.dim();
        let phi = h.integral_vector().ok_or_else(|| format!("{} has no integral", h.name()))?;
        let one = h.unit().clone();
        for i in 0..n {
            let a = unit_vector(n, i);
            // (ι⊗φ)Δ(a) computed from the coproduct table
            let delta = h.coproduct(&a);
            let slice: Vector = (0..n).map(|r| linalg::dot(&delta[r * n..(r + 1) * n], phi)).collect();
            ensure(slice == linalg::scale(&linalg::dot(&a, phi), &one), || format!("{}: left invariance at {i}", h.name()))?;
        }
        let m = modular_element(h).map_err(|e| e.to_string())?;
        ensure(m.delta == one, || format!("{}: δ = {}", h.name(), h.format(&m.delta)))?;
        ensure(h.mul(&m.delta, &h.antipode(&m.delta)) == one, || format!("{}: δ·S(δ) ≠ 1", h.name()))?;
        for i in 0..n {
            let a = unit_vector(n, i);
            ensure(h.phi(&h.antipode(&a)).unwrap() == h.phi(&h.mul(&a, &m.delta)).unwrap(), || {
                format!("{}: φ(S(a)) ≠ φ(aδ) at {i}", h.name())
            })?;
        }
        all_pass(&h.name(), &verify_modular(h, &m))?;
    }
    within("criterion 2", start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("δ = 1 on {} instances", hopfs.len()))
}

fn dual_identities() -> Outcome {
    let g = Cyclic::new(4);
    let (a, kg) = (a_g(&g), k_g(&g));
    let d = DualHopf::new(&a).map_err(|e| e.to_string())?;
    let mut n = all_pass("dual of A_ℤ/4", &verify_dual_identities(&d))?;
    n += all_pass("θ: dual of 𝕜ℤ/4 to A_ℤ/4", &verify_theta(&DualHopf::new(&kg).map_err(|e| e.to_string())?, &a))?;
    n += all_pass("θ: dual of A_ℤ/4 to 𝕜ℤ/4", &verify_theta(&d, &kg))?;
    // φ(_S(δ_g)) = φ(_δ_{-g}) is the dual basis element â_{-g}; ψ̂ of it is ε(δ_g)
    for b in 0..4 {
        let w = unit_vector(4, (4 - b) % 4);
        ensure(d.psi_hat(&w) == a.counit(&unit_vector(4, b)), || format!("ψ̂(φ(_S(δ{b}))) ≠ ε(δ{b})"))?;
    }
    Ok(format!("{n} checks, ψ̂(φ(_S(b))) = ε(b) on all 4 basis elements"))
}

fn coaction_suite() -> Outcome {
    let c = induced_coaction();
    let mut n = all_pass("axioms", &c.verify())?;
    n += all_pass("extension", &c.verify_extension())?;
    ensure(c.check_unital_equivalence() == Ok(true), || format!("unital equivalence: {:?}", c.check_unital_equivalence()))?;
    // E = (f_N⊗1)Δ(f_N): E(δ_a⊗δ_b) = δ_a⊗δ_b iff b ∈ N, else 0
    for (ai, a) in [0, 2].into_iter().enumerate() {
        for b in 0..4 {
            let v = kron(&unit_vector(2, ai), &unit_vector(4, b));
            let want = if b % 2 == 0 { v.clone() } else { linalg::zeros(8) };
            ensure(c.e().apply_left(&v) == want, || format!("E(δ{a}⊗δ{b})"))?;
        }
    }
    let v = kron(&unit_vector(2, 1), &unit_vector(4, 1));
    ensure(linalg::is_zero(&c.e().apply_left(&v)), || "E(δ2⊗δ1) ≠ 0".into())?;
    ensure(!c.e().is_identity(), || "E = 1⊗1".into())?;
    let (at, value) = c.non_global_witness().ok_or("no non-global witness")?;
    Ok(format!("{n} checks, E(δ2⊗δ1) = 0, engine witness {at} = {value}"))
}

fn action_suite() -> Outcome {
    let g = Cyclic::new(4);
    let a = a_g(&g);
    let r = FiniteAlgebra::diagonal(2);
    let x = vec![Scalar::from_ratio(3, 1), Scalar::from_ratio(-5, 1)];

    let lambda = subgroup_average(&g, Q, &[0, 2]).unwrap();
    let p = PartialAction::from_functional(&a, &r, &lambda, true).map_err(|e| e.to_string())?;
    let mut n = all_pass("λ-action", &p.verify())?;
    for k in 0..4 {
        let want = if k % 2 == 0 { linalg::scale(&half(), &x) } else { linalg::zeros(2) };
        ensure(p.act(&unit_vector(4, k), &x) == want, || format!("λ-action: δ{k}·x"))?;
    }

    // a = φ(_δ_g) acts by φ(f δ_g) = [g ∈ N]
    let d = DualHopf::new(&a).map_err(|e| e.to_string())?;
    let q = PartialAction::from_dual_idempotent(&g, &d, &[0, 2], &r).map_err(|e| e.to_string())?;
    n += all_pass("dual-idempotent action", &q.verify())?;
    for k in 0..4 {
        let want = if k % 2 == 0 { x.clone() } else { linalg::zeros(2) };
        ensure(q.act(&unit_vector(4, k), &x) == want, || format!("dual-idempotent action: φ(_δ{k})·x"))?;
    }

    let p = induced_action();
    n += all_pass("induced action", &p.verify())?;
    n += all_pass("induced A·R", &p.verify_ar())?;
    n += all_pass("induced extension", &p.verify_extension())?;
    // δ_p·u_j = f_N(δ_p▷u_j) = ½u_j when p ≡ j mod 2
    for k in 0..4 {
        for j in 0..2 {
            let want = if k % 2 == j { linalg::scale(&half(), &unit_vector(2, j)) } else { linalg::zeros(2) };
            ensure(p.act(&unit_vector(4, k), &unit_vector(2, j)) == want, || format!("induced: δ{k}·u{j}"))?;
        }
    }
    // 𝔢(δ_p) = f_N(δ_p▷f_N) = ½·1_L for p ∈ N, 0 otherwise
    let eps = |k: usize| a.counit(&unit_vector(4, k));
    let e2 = p.e_of(&unit_vector(4, 2));
    ensure(e2 == Multiplier::identity(2).scale(&half()), || "𝔢(δ2) ≠ ½·f_N".into())?;
    ensure(e2 != Multiplier::identity(2).scale(&eps(2)), || "𝔢(δ2) = ε(δ2)f_N".into())?;
    let e1 = p.e_of(&unit_vector(4, 1));
    ensure(e1 == Multiplier::identity(2).scale(&eps(1)), || "𝔢(δ1) ≠ 0".into())?;
    ensure(!p.is_global(), || "induced action reported global".into())?;
    Ok(format!(
        "{n} checks, 𝔢(δ2) = ½f_N ≠ 0 = ε(δ2)f_N; at p = 1 ∉ N both sides vanish, so p = 2 ∈ N∖{{0}} is the certifying element"
    ))
}

fn duality_round_trip() -> Outcome {
    let p = induced_action();
    let a = a_g(&Cyclic::new(4));
    let opts = DualizeOptions { b: indicator(4, &[0, 2]), ..DualizeOptions::trivial(&a) };
    let bridge = dualize_action(&p, &opts).map_err(|e| e.to_string())?;
    let mut n = all_pass("hypotheses", &bridge.hypotheses)?;
    n += all_pass("ψ-side", std::slice::from_ref(&bridge.psi_side))?;
    n += all_pass("dual coaction axioms", &bridge.coaction.verify())?;
    n += all_pass("dual coaction extension", &bridge.coaction.verify_extension())?;
    ensure(bridge.coaction.check_unital_equivalence() == Ok(true), || "dual coaction unital equivalence".into())?;
    n += all_pass("round trip", &roundtrip(&p, &bridge))?;
    let again = dualize_action(&p, &opts).map_err(|e| e.to_string())?;
    ensure(again.coaction.rho_matrix() == bridge.coaction.rho_matrix() && again.coaction.e() == bridge.coaction.e(), || {
        "dualization not reproducible".into()
    })?;
    Ok(format!("{n} checks"))
}

fn coinvariant_characterizations() -> Outcome {
    let c = induced_coaction();
    let co = coinvariants(&c).map_err(|e| e.to_string())?;
    ensure(co.dim() == 1, || format!("dim R^coA = {}", co.dim()))?;
    // f_N is the unit of L
    ensure(co.contains(&c.algebra.multiplier_algebra(), &Multiplier::identity(2)), || "f_N not coinvariant".into())?;
    ensure(co.agree(), || "characterizations differ on the induced coaction".into())?;
    let mut instances = 1;
    for (name, spec) in gallery() {
        let mut sources = Vec::new();
        if spec.coaction.as_ref().is_some_and(|c| c.symmetric) {
            sources.push(coaction_of(&spec).map_err(|e| format!("{name}: {e}"))?);
        }
        if spec.action.as_ref().is_some_and(|a| a.symmetric) {
            sources.push(action_dual_of(&spec).map_err(|e| format!("{name}: {e}"))?.coaction);
        }
        for s in sources {
            let co = coinvariants(&s).map_err(|e| format!("{name}: {e}"))?;
            ensure(co.agree(), || format!("{name}: dims {} vs {}", co.space.dim(), co.by_definition.dim()))?;
            instances += 1;
        }
    }
    Ok(format!("R^coA = span{{f_N}}, characterizations identical on {instances} coactions"))
}

fn contexts() -> Result<Vec<(String, MoritaContext)>, String> {
    let mut out = Vec::new();
    for q in [0, 2] {
        let mut c = induced_coaction();
        c.check_restrict_witness(&unit_vector(4, q), &c.algebra.multiplier_algebra())
            .map_err(|e| format!("δ{q} is not a restrict witness: {e}"))?;
        c.restrict_witness = Some(unit_vector(4, q));
        out.push((format!("induced, witness δ{q}"), MoritaContext::build(&c).map_err(|e| e.to_string())?));
    }
    let mut g = PartialCoaction::global_self(&a_g(&Cyclic::new(4))).unwrap();
    g.restrict_witness = g.find_restrict_witness();
    out.push(("global self-coaction".into(), MoritaContext::build(&g).map_err(|e| e.to_string())?));
    for (name, spec) in gallery() {
        if spec.coaction.as_ref().is_some_and(|c| c.restrict_witness.is_some()) {
            let c = coaction_of(&spec).map_err(|e| format!("{name}: {e}"))?;
            out.push((name.clone(), MoritaContext::build(&c).map_err(|e| format!("{name}: {e}"))?));
        }
    }
    Ok(out)
}

fn morita_context() -> Outcome {
    let start = Instant::now();
    let ctxs = contexts()?;
    let mut n = 0;
    for (name, ctx) in &ctxs {
        n += all_pass(name, &ctx.hypotheses)?;
        n += all_pass(name, &ctx.verify())?;
    }
    let (_, induced) = &ctxs[0];
    let f_n = indicator(2, &[0, 1]);
    ensure(induced.pairing(&unit_vector(2, 0), &unit_vector(2, 0)) == f_n, || "(δ0, δ0) ≠ f_N".into())?;
    ensure(induced.dim_b() == 4, || format!("dim B = {}", induced.dim_b()))?;
    within("criterion 8", start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{n} checks over {} contexts, (δ0, δ0) = f_N", ctxs.len()))
}

fn galois_equivalence() -> Outcome {
    let ctxs = contexts()?;
    let mut verdicts = Vec::new();
    for (name, ctx) in &ctxs {
        let eq = check_galois_equivalence(ctx).map_err(|e| format!("{name}: {e}"))?;
        all_pass(name, &eq.checks)?;
        ensure(eq.consistent(), || format!("{name}: predicates disagree"))?;
        let beta = galois_map(ctx).map_err(|e| format!("{name}: {e}"))?;
        ensure(beta.bijective() == eq.beta_bijective, || format!("{name}: β bijectivity disagrees"))?;
        verdicts.push(format!("{name}: {}", beta.verdict));
    }
    let global = galois_map(&ctxs[2].1).map_err(|e| e.to_string())?;
    ensure(global.verdict == Verdict::Bijective, || format!("global verdict {}", global.verdict))?;
    Ok(verdicts.join("; "))
}

fn determinism() -> Outcome {
    let run = |jobs| {
        let opts = RunOptions { jobs, ..RunOptions::default() };
        run_dir(&gallery_dir(), Command::All, &opts).map_err(|e| e.to_string()).map(|runs| {
            let exits: Vec<Exit> = runs.iter().map(|(_, o)| o.exit).collect();
            let text: Vec<String> = runs.into_iter().map(|(_, o)| o.report.without_timing().to_json()).collect();
            (exits, text)
        })
    };
    let (exits, first) = run(None)?;
    let (_, second) = run(Some(1))?;
    ensure(exits.iter().all(|e| *e == Exit::Ok), || format!("gallery exits {exits:?}"))?;
    ensure(first == second, || "reports differ between runs".into())?;
    Ok(format!("{} reports byte-identical", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("multiplier Hopf axioms", hopf_axioms),
        ("integral and modular element", integral_and_modular),
        ("dual identities and θ", dual_identities),
        ("partial coaction suite", coaction_suite),
        ("partial action suite", action_suite),
        ("duality round trip", duality_round_trip),
        ("coinvariants", coinvariant_characterizations),
        ("Morita context", morita_context),
        ("Galois equivalence", galois_equivalence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title} ({ms} ms): {why}", i + 1)
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria pass");
}
