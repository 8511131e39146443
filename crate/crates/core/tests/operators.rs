//! Operator-level checks against independent expansions.

use cgybe::model::{cg_op, cg_twisted_op, eta, g_op, permutation_op, CGParams};
use cgybe::tensor::{basis, compose_all, Vector};
use cgybe::verify::{check_compatibility, check_ybe};
use cgybe::{Endo2, Endo3, LaurentQP};

type Triple = [i64; 3];

fn add(v: &mut std::collections::BTreeMap<Triple, i64>, t: Triple, c: i64) {
    if c != 0 {
        *v.entry(t).or_default() += c;
    }
}

fn to_vector(v: std::collections::BTreeMap<Triple, i64>) -> Vector<LaurentQP, 3> {
    v.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(t, c)| {
            let idx = t.map(|x| usize::try_from(x).expect("index stays positive"));
            (idx, LaurentQP::from_int(c))
        })
        .collect()
}

/// The six-term triple sums for g₁₂g₂₃P₁₂ + g₁₂P₂₃g₁₂ + P₁₂g₂₃g₁₂ and its
/// mirror, with s, t ranging over a padded integer interval.
fn expanded_sides(n: i64, [i, j, k]: Triple) -> (Vector<LaurentQP, 3>, Vector<LaurentQP, 3>) {
    let range = || -2..n + 3;
    let mut left = std::collections::BTreeMap::new();
    let mut right = std::collections::BTreeMap::new();
    for s in range() {
        for t in range() {
            add(&mut left, [s, j + t - s, i + k - t], eta(i, k, t) * eta(j, t, s));
            add(&mut left, [t, s + k - t, i + j - s], eta(i, j, s) * eta(s, k, t));
            add(&mut left, [t, s, i + j + k - s - t], eta(i, j, s) * eta(i + j - s, k, t));

            add(&mut right, [s, t, i + j + k - s - t], eta(i, k, s) * eta(k + i - s, j, t));
            add(&mut right, [s, t, i + j + k - t - s], eta(j, k, s) * eta(i, j + k - s, t));
            // P₂₃g₁₂g₂₃: the g₂₃ factor is η(j,k,t), not η(j,k,s)
            add(&mut right, [s, j + k - t, i + t - s], eta(j, k, t) * eta(i, t, s));
        }
    }
    (to_vector(left), to_vector(right))
}

#[test]
fn compatibility_sides_match_triple_sum_expansion() {
    for n in 1..=4usize {
        let g = g_op(n);
        let p = permutation_op(n);
        let (g12, g23, p12, p23) = (g.lift12(), g.lift23(), p.lift12(), p.lift23());
        let dl = [
            compose_all(&[&g12, &g23, &p12]).unwrap(),
            compose_all(&[&g12, &p23, &g12]).unwrap(),
            compose_all(&[&p12, &g23, &g12]).unwrap(),
        ];
        let dr = [
            compose_all(&[&g23, &g12, &p23]).unwrap(),
            compose_all(&[&g23, &p12, &g23]).unwrap(),
            compose_all(&[&p23, &g12, &g23]).unwrap(),
        ];
        let sum = |ops: &[Endo3; 3]| ops[0].add(&ops[1]).unwrap().add(&ops[2]).unwrap();
        let (dl, dr) = (sum(&dl), sum(&dr));
        for t in basis::<3>(n) {
            let (left, right) = expanded_sides(n as i64, t.map(|x| x as i64));
            assert_eq!(dl.apply(t).unwrap(), left, "d_l at {t:?}");
            assert_eq!(dr.apply(t).unwrap(), right, "d_r at {t:?}");
        }
        assert_eq!(dl, dr);
    }
}

#[test]
fn lifted_g_examples() {
    let g = g_op(3);
    let one = LaurentQP::one;
    let v12: Vector<LaurentQP, 3> = [([1, 3, 2], one()), ([2, 2, 2], one())].into_iter().collect();
    assert_eq!(g.lift12().apply([1, 3, 2]).unwrap(), v12);
    let v23: Vector<LaurentQP, 3> = [([2, 1, 3], one()), ([2, 2, 2], one())].into_iter().collect();
    assert_eq!(g.lift23().apply([2, 1, 3]).unwrap(), v23);
}

#[test]
fn compositions_of_g() {
    let g = g_op(4);
    let p = permutation_op(4);
    assert_eq!(g.compose(&g).unwrap(), g);
    assert_eq!(g.compose(&p).unwrap(), g.scale(&LaurentQP::from_int(-1)));
    let g_p_minus_i = g.add(&p).unwrap().sub(&Endo2::identity(4)).unwrap();
    assert!(p.compose(&g).unwrap().first_difference(&g_p_minus_i).unwrap().is_none());
}

#[test]
fn symbolic_solutions_small_n() {
    for n in 1..=4 {
        assert!(check_ybe(&g_op(n)).passed, "g, n = {n}");
        assert!(check_compatibility(&g_op(n)).passed, "compat, n = {n}");
        assert!(check_ybe(&cg_op(&CGParams::hecke(n).unwrap())).passed, "cg, n = {n}");
        assert!(check_ybe(&cg_twisted_op(n)).passed, "cg2, n = {n}");
    }
}

#[test]
fn generic_alpha_beta_with_symbolic_q() {
    // neither the Hecke choice nor a unit determinant
    let alpha: LaurentQP = "2*q + p".parse().unwrap();
    let beta: LaurentQP = "q^-1 - 3".parse().unwrap();
    let c = cg_op(&CGParams::new(3, alpha, beta).unwrap());
    assert!(check_ybe(&c).passed);
}
