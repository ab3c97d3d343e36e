use std::sync::Arc;

use fieldalg::fields::*;
use fieldalg::scalar::{binomial, int, rat, sign};
use fieldalg::{Carrier, Entry, Linear, Vector};
use proptest::prelude::*;

fn boson(e: i64) -> (Arc<Carrier>, EndField) {
    build_free_boson(e)
}

/// Mutually local fields of the free boson.
fn local_pool(e: i64) -> Vec<EndField> {
    let (c, a) = boson(e);
    let a2 = normal_order(&a, &a).unwrap();
    vec![EndField::identity(c), a.clone(), a.derivative(), a.derivative().derivative(), a2]
}

/// Res_x [a(x),b(z)](x−z)^n, modewise Σ_j C(n,j)(−1)^{n−j} [a_(j), b_(n+k−j)].
fn residue_product(a: &EndField, b: &EndField, n: i64, k: i64, v: usize) -> Entry {
    let mut out: Entry = Some(Vector::new());
    for j in 0..=n {
        out.add_scaled(&commutator_mode(a, b, j, n + k - j, v), &(binomial(n, j as u64) * sign(n - j)));
    }
    out
}

fn agrees(lhs: &EndField, rhs: impl Fn(i64, usize) -> Entry) -> (u64, bool) {
    let c = lhs.carrier().clone();
    let mut certified = 0;
    for v in 0..c.dim() {
        let (lo, hi) = lhs.window(v);
        for k in lo..=hi {
            if let (Some(x), Some(y)) = (lhs.mode(k, v), rhs(k, v)) {
                certified += 1;
                if x != y {
                    return (certified, false);
                }
            }
        }
    }
    (certified, true)
}

#[test]
fn fock_dimensions_are_partition_counts() {
    // p(0..8)
    let p = [1, 1, 2, 3, 5, 7, 11, 15, 22];
    let (c, _) = boson(8);
    let dims: Vec<usize> = c.graded_dims().into_iter().map(|(_, d)| d).collect();
    assert_eq!(dims, p);
}

#[test]
fn boson_modes_satisfy_heisenberg_relations() {
    let (c, a) = boson(6);
    let mut certified = 0;
    for v in 0..c.dim() {
        for m in -8..=8 {
            for n in -8..=8 {
                if let Some(x) = commutator_mode(&a, &a, m, n, v) {
                    certified += 1;
                    let want = if m == -n { Vector::term(v, int(m)) } else { Vector::new() };
                    assert_eq!(x, want, "m={m} n={n} v={}", c.label(v));
                }
            }
        }
    }
    assert!(certified > 1000);
}

#[test]
fn square_against_a_commutator_expansion() {
    let (c, a) = boson(6);
    let a2 = normal_order(&a, &a).unwrap();
    // [:a²:_(m), a_(n)] = −2n a_(m+n−1), from the Heisenberg relations
    for v in 0..c.dim() {
        for m in -6..=6 {
            for n in -6..=6 {
                if let (Some(x), Some(y)) = (commutator_mode(&a2, &a, m, n, v), a.mode(m + n - 1, v)) {
                    assert_eq!(x, y.scaled(&int(-2 * n)));
                }
            }
        }
    }
    let (terms, rep) = commutator_expansion(&a2, &a, 6).unwrap();
    assert!(rep.passed(), "{}", rep.text());
    let js: Vec<u32> = terms.iter().map(|t| t.0).collect();
    assert_eq!(js, vec![0, 1]);
    assert!(compare_fields("", &terms[0].1, &a.derivative().scaled(&int(2))).passed());
    assert!(compare_fields("", &terms[1].1, &a.scaled(&int(2))).passed());
}

#[test]
fn negative_products_are_normal_ordered_derivatives() {
    let (_, a) = boson(5);
    let a2 = normal_order(&a, &a).unwrap();
    for (x, y) in [(&a, &a), (&a, &a2), (&a2, &a)] {
        let mut d = x.clone();
        let mut fact = int(1);
        for k in 0..3i64 {
            if k > 0 {
                d = d.derivative();
                fact *= int(k);
            }
            let want = normal_order(&d, y).unwrap().scaled(&(int(1) / fact.clone()));
            let rep = compare_fields("", &nth_product_fields(x, y, -k - 1).unwrap(), &want);
            assert!(rep.passed(), "{}", rep.text());
        }
    }
}

#[test]
fn residue_against_delta_reproduces_the_field() {
    for f in local_pool(5) {
        let id = EndField::identity(f.carrier().clone());
        assert!(compare_fields("", &nth_product_fields(&f, &id, -1).unwrap(), &f).passed());
        assert!(compare_fields("", &nth_product_fields(&id, &f, -1).unwrap(), &f).passed());
    }
}

#[test]
fn free_boson_squared_is_virasoro() {
    let (c, a) = boson(6);
    let l = normal_order(&a, &a).unwrap().scaled(&rat(1, 2));
    let (terms, rep) = commutator_expansion(&l, &l, 6).unwrap();
    assert!(rep.passed());
    let js: Vec<u32> = terms.iter().map(|t| t.0).collect();
    assert_eq!(js, vec![0, 1, 3]);
    assert!(compare_fields("", &terms[0].1, &l.derivative()).passed());
    assert!(compare_fields("", &terms[1].1, &l.scaled(&int(2))).passed());
    assert!(compare_fields("", &terms[2].1, &EndField::identity(c).scaled(&rat(1, 2))).passed());
}

fn combo(pool: &[EndField], pick: usize, coef: i64) -> EndField {
    let f = &pool[pick % pool.len()];
    if coef == 0 {
        f.clone()
    } else {
        f.scaled(&rat(coef, 3))
    }
}

fn refuted(r: &LocalityResult) -> bool {
    r.order.is_none() && r.report.witness.is_some()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn products_match_residues(i in 0usize..5, j in 0usize..5, n in 0i64..4, c in -3i64..4) {
        let pool = local_pool(4);
        let (a, b) = (combo(&pool, i, c), pool[j].clone());
        let p = nth_product_fields(&a, &b, n).unwrap();
        let (certified, ok) = agrees(&p, |k, v| residue_product(&a, &b, n, k, v));
        prop_assert!(ok);
        prop_assert!(certified > 0);
    }

    #[test]
    fn locality_is_symmetric(i in 0usize..5, j in 0usize..5) {
        let pool = local_pool(4);
        let x = locality_order(&pool[i], &pool[j], LocalityMode::Local, 6).unwrap();
        let y = locality_order(&pool[j], &pool[i], LocalityMode::Local, 6).unwrap();
        prop_assert!(x.order.is_some() && y.order.is_some());
        prop_assert_eq!(x.order, y.order);
    }

    #[test]
    fn dong_products_stay_local(i in 0usize..5, j in 0usize..5, k in 0usize..5, n in -3i64..4) {
        let pool = local_pool(4);
        let (a, b, c) = (&pool[i], &pool[j], &pool[k]);
        prop_assume!(locality_order(a, b, LocalityMode::Weak, 6).unwrap().order.is_some());
        let p = nth_product_fields(a, b, n).unwrap();
        let r = locality_order(&p, c, LocalityMode::Local, 8).unwrap();
        prop_assert!(!refuted(&r), "{}", r.report.text());
    }

    #[test]
    fn dong_weak_locality(i in 0usize..5, j in 0usize..5, k in 0usize..5, n in 0i64..4, m in -2i64..3) {
        let (car, a) = boson(4);
        let pool = [EndField::identity(car), a.clone(), a.derivative(), a.plus_part(), a.minus_part()];
        let (x, y, z) = (&pool[i], &pool[j], &pool[k]);
        let weak = |p: &EndField, q: &EndField| locality_order(p, q, LocalityMode::Weak, 4).unwrap().order.is_some();
        prop_assume!(weak(x, y) && weak(x, z) && weak(y, z));
        let left = locality_order(&nth_product_fields(x, y, n).unwrap(), z, LocalityMode::Weak, 6).unwrap();
        prop_assert!(!refuted(&left), "{}", left.report.text());
        let right = locality_order(x, &nth_product_fields(y, z, m).unwrap(), LocalityMode::Weak, 6).unwrap();
        prop_assert!(!refuted(&right), "{}", right.report.text());
    }
}

#[test]
fn local_on_the_vacuum() {
    let (c, a) = boson(5);
    let b = EndField::single_mode("b", c.clone(), 0, 0, |v| a.mode(1, v));
    let r = locality_order(&a, &a, LocalityMode::OnVector(0), 4).unwrap();
    assert_eq!(r.order, Some(2));
    // [a(z), b(w)] = −w^{−1} is killed by no power of (z−w)
    let r = locality_order(&a, &b, LocalityMode::Local, 4).unwrap();
    assert!(refuted(&r));
    assert!(matches!(commutator_expansion(&a, &b, 4), Err(FieldError::NotLocal(..))));
}
