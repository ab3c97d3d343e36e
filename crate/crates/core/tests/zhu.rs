use fieldalg::conformal::fixtures::{free_boson, virasoro};
use fieldalg::envelope::{build_envelope, Envelope, EnvelopeOptions};
use fieldalg::scalar::{self, int, rat};
use fieldalg::sfc::construct::algebras::mat2;
use fieldalg::sfc::{tensor_sfc, trivial_sfc, FAModule};
use fieldalg::zhu::*;
use fieldalg::{Linear, Vector};

fn heisenberg(w: i64) -> Envelope {
    build_envelope(&free_boson(), EnvelopeOptions::new(w).central("K", scalar::one())).unwrap()
}

#[test]
fn translation_rule_on_the_boson() {
    let e = heisenberg(4);
    let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
    let a = e.letter("a", 0).unwrap();
    let ea = Vector::single(a);
    // with (Ta)_(n) = −n a_(n−1):
    // (Ta)*a = (Ta)_(−1)a + 2(Ta)_(0)a + (Ta)_(1)a
    //        = a_(−2)a + 0 − a_(0)a = a_(−2)a
    let ta_star_a = e.sfc.apply(a, -2, &ea).unwrap();
    let mut want = ta_star_a.clone();
    want.add_assign_ref(&ctx.star(&ea, &ea, -1).unwrap().unwrap());
    assert_eq!(ctx.star(&ea, &ea, -2).unwrap(), Some(want));
    let t = e.sfc.t(&ea).unwrap();
    assert_eq!(ctx.star(&t, &ea, -1).unwrap(), Some(ta_star_a));
}

#[test]
fn heisenberg_zhu_is_polynomial_at_cutoff() {
    let e = heisenberg(4);
    let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
    for r in check_star_identities(&ctx, &StarRanges::default()) {
        assert!(r.passed(), "{}", r.text());
    }
    let q = zhu_algebra(&ctx, Hypothesis::Envelope).unwrap();
    for r in &q.reports {
        assert!(r.passed(), "{}", r.text());
    }
    assert!(check_commutative(&ctx, &q).passed());
    // ℚ[x] filtered by degree: one new coset per weight
    assert_eq!(q.dim(), 5);
    let a = e.letter("a", 0).unwrap();
    let powers = star_powers(&ctx, a, 4).unwrap();
    for (k, p) in powers.iter().enumerate() {
        let mut want = vec![scalar::zero(); 5];
        want[k] = scalar::one();
        assert_eq!(q.coords(p), want, "a^{k}");
    }
    assert!(check_independent_powers(&ctx, &q, a, 4).passed());
}

#[test]
fn quotient_contains_the_translation_image() {
    // a *_{−2} |0⟩ = Ta + a, so Ta ≡ −a
    let e = heisenberg(4);
    let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
    let q = zhu_algebra(&ctx, Hypothesis::Envelope).unwrap();
    let a = e.letter("a", 0).unwrap();
    let mut v = e.sfc.t(&Vector::single(a)).unwrap();
    v.add_term(a, int(1));
    assert!(q.contains(&v));
    assert!(!q.contains(&Vector::single(a)));
}

#[test]
fn virasoro_zhu_is_commutative_at_cutoff() {
    let e = build_envelope(&virasoro(rat(1, 2)), EnvelopeOptions::new(6).central("C", rat(1, 2))).unwrap();
    let ctx = ZhuContext::new(&e.sfc, 6).unwrap();
    for r in check_star_identities(&ctx, &StarRanges::default()) {
        assert!(r.passed(), "{}", r.text());
    }
    let q = zhu_algebra(&ctx, Hypothesis::Envelope).unwrap();
    assert!(check_commutative(&ctx, &q).passed());
    let l = e.letter("L", 0).unwrap();
    assert!(check_independent_powers(&ctx, &q, l, 3).passed());
}

#[test]
fn zero_modes_on_regular_modules() {
    let e = heisenberg(4);
    let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
    for r in check_zero_modes(&ctx, &FAModule::regular(&e.sfc), &StarRanges::default()) {
        assert!(r.passed(), "{}", r.text());
    }
    let v = tensor_sfc(&e.sfc, &trivial_sfc(&mat2()).unwrap());
    let cv = ZhuContext::new(&v, 4).unwrap();
    for r in check_zero_modes(&cv, &FAModule::regular(&v), &StarRanges::default()) {
        assert!(r.passed(), "{}", r.text());
    }
}

#[test]
fn tensor_with_mat2() {
    let e = heisenberg(4);
    let ctx = ZhuContext::new(&e.sfc, 4).unwrap();
    let m = trivial_sfc(&mat2()).unwrap();
    let v = tensor_sfc(&e.sfc, &m);
    let cv = ZhuContext::new(&v, 4).unwrap();
    let q = zhu_algebra(&cv, Hypothesis::TensorWithAlgebra).unwrap();
    assert_eq!(q.dim(), 5 * 4);
    let emb = |i: usize, j: usize| v.carrier().find(&format!("{}⊗{}", e.sfc.label(i), m.label(j)));
    let r = check_tensor_isomorphism(&ctx, &mat2(), &cv, emb);
    assert!(r.passed(), "{}", r.text());
    // Mat₂ is not commutative, and neither is the quotient
    assert!(!check_commutative(&cv, &q).passed());
}
