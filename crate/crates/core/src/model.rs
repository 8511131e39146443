//! The concrete operators.
//!
//! `η(i,j,k)` is `1` when `i ≤ k < j`, `−1` when `j ≤ k < i` and `0`
//! otherwise. The operator `g` sends `e_i⊗e_j` to `Σ_k η(i,j,k) e_k⊗e_{i+j−k}`
//! and `P` is the flip. The one-parameter Cremmer-Gervais matrix is
//! `qP + (q − q⁻¹)g`; the two-parameter one weights the flip by `p^{i−j}` and
//! the `g`-part by `p^{i−k}`.

use crate::error::{Error, Result};
use crate::ring::{LaurentQP, Rational};
use crate::tensor::{basis, Coeff, Endo2};

/// `1` if `i ≤ k < j`, `−1` if `j ≤ k < i`, else `0`. Defined on all of ℤ³.
pub fn eta(i: i64, j: i64, k: i64) -> i64 {
    if i <= k && k < j {
        1
    } else if j <= k && k < i {
        -1
    } else {
        0
    }
}

/// Unit step: `1` for `x ≥ 0`, `0` for `x < 0`.
pub fn step_u(x: i64) -> i64 {
    i64::from(x >= 0)
}

pub fn kron_delta(x: i64) -> i64 {
    i64::from(x == 0)
}

/// The half-open range `[min(a,b), max(a,b))` outside which `η(a,b,·)` vanishes.
pub fn eta_support(a: i64, b: i64) -> std::ops::Range<i64> {
    a.min(b)..a.max(b)
}

/// Parameters of `αP + βg` on a rank-`n` space.
#[derive(Clone, Debug, PartialEq)]
pub struct CGParams {
    pub n: usize,
    pub alpha: LaurentQP,
    pub beta: LaurentQP,
}

impl CGParams {
    pub fn new(n: usize, alpha: LaurentQP, beta: LaurentQP) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self { n, alpha, beta })
    }

    /// `α = q`, `β = q − q⁻¹`.
    pub fn hecke(n: usize) -> Result<Self> {
        Self::new(n, LaurentQP::q(), LaurentQP::q_minus_q_inv())
    }
}

fn idx(i: i64) -> usize {
    usize::try_from(i).expect("basis label is positive")
}

/// Calls `f(i, j, k, η(i,j,k))` for every nonzero term of `g` on a rank-`n` space.
fn for_each_g_term(n: usize, mut f: impl FnMut(i64, i64, i64, i64)) {
    for [i, j] in basis::<2>(n) {
        let (i, j) = (i as i64, j as i64);
        for k in eta_support(i, j) {
            f(i, j, k, eta(i, j, k));
        }
    }
}

/// The flip `e_i⊗e_j ↦ e_j⊗e_i`.
pub fn permutation_op(n: usize) -> Endo2 {
    permutation_in(n)
}

/// [`permutation_op`] over any coefficient type.
pub fn permutation_in<C: Coeff>(n: usize) -> Endo2<C> {
    let mut out = Endo2::zero(n);
    for [i, j] in basis::<2>(n) {
        out.add_entry([i, j], [j, i], C::one());
    }
    out
}

pub fn g_op(n: usize) -> Endo2 {
    g_in(n)
}

/// [`g_op`] over any coefficient type.
pub fn g_in<C: Coeff>(n: usize) -> Endo2<C> {
    let mut out = Endo2::zero(n);
    for_each_g_term(n, |i, j, k, e| {
        let c = if e > 0 { C::one() } else { -C::one() };
        out.add_entry([idx(i), idx(j)], [idx(k), idx(i + j - k)], c);
    });
    out
}

/// `αP + βg`.
pub fn cg_op(params: &CGParams) -> Endo2 {
    Endo2::linear_combo(
        &params.alpha,
        &permutation_op(params.n),
        &params.beta,
        &g_op(params.n),
    )
    .expect("P and g share a rank")
}

/// The two-parameter matrix
/// `e_i⊗e_j ↦ q p^{i−j} e_j⊗e_i + Σ_k (q − q⁻¹) p^{i−k} η(i,j,k) e_k⊗e_{i+j−k}`.
pub fn cg_twisted_op(n: usize) -> Endo2 {
    let one = Rational::from_integer(1.into());
    let hecke = LaurentQP::q_minus_q_inv();
    let mut out = Endo2::zero(n);
    for [i, j] in basis::<2>(n) {
        let shift = i as i64 - j as i64;
        out.add_entry([i, j], [j, i], LaurentQP::monomial(one.clone(), 1, shift));
    }
    for_each_g_term(n, |i, j, k, e| {
        let weight = LaurentQP::monomial(Rational::from_integer(e.into()), 0, i - k);
        out.add_entry([idx(i), idx(j)], [idx(k), idx(i + j - k)], &hecke * &weight);
    });
    out
}

/// Inverse of `R = αP + βg` from the quadratic relation
/// `R² = βR + α(α−β)I`, i.e. `R⁻¹ = (R − βI)·(α(α−β))⁻¹`.
///
/// `r` is assumed to be `αP + βg` for the given parameters. The closed form
/// stays in the Laurent ring only when `α(α−β)` is a single term.
pub fn cg_inverse(r: &Endo2, alpha: &LaurentQP, beta: &LaurentQP) -> Result<Endo2> {
    if alpha == beta {
        return Err(Error::NotInvertible(
            "alpha equals beta, so R(R - beta) = 0 with R - beta nonzero".into(),
        ));
    }
    let det = alpha * &(alpha - beta);
    if det.is_zero() {
        return Err(Error::NotInvertible("alpha(alpha - beta) is zero".into()));
    }
    let inv = det.inverse()?;
    let shifted = r.sub(&Endo2::scalar(r.n(), beta))?;
    Ok(shifted.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;
    use crate::tensor::Vector;

    fn lq(s: &str) -> LaurentQP {
        s.parse().unwrap()
    }

    fn vector(items: &[([usize; 2], &str)]) -> Vector<LaurentQP, 2> {
        items.iter().map(|(t, c)| (*t, lq(c))).collect()
    }

    #[test]
    fn eta_cases() {
        assert_eq!(eta(1, 3, 2), 1);
        assert_eq!(eta(3, 1, 2), -1);
        assert_eq!(eta(2, 2, 2), 0);
        assert_eq!(eta(1, 3, 3), 0);
        assert_eq!(eta(3, 1, 1), -1);
    }

    #[test]
    fn step_and_delta() {
        assert_eq!(step_u(0), 1);
        assert_eq!(step_u(5), 1);
        assert_eq!(step_u(-1), 0);
        assert_eq!(kron_delta(0), 1);
        assert_eq!(kron_delta(3), 0);
        assert_eq!(kron_delta(-3), 0);
    }

    #[test]
    fn eta_is_a_difference_of_steps() {
        // forces u(x) = 0 for x < 0
        for i in -4..=5 {
            for j in -4..=5 {
                for k in -4..=5 {
                    assert_eq!(eta(i, j, k), step_u(k - i) - step_u(k - j), "({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn step_identities() {
        for x in -6..=6 {
            assert_eq!(step_u(x) + step_u(-x), 1 + kron_delta(x));
            for y in -6..=6 {
                assert_eq!(
                    step_u(x + y) * (step_u(x) + step_u(y)),
                    step_u(x) * step_u(y) + step_u(x + y)
                );
            }
        }
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permutation_op(1), Endo2::identity(1));
        assert_eq!(permutation_op(2).apply([1, 2]).unwrap(), vector(&[([2, 1], "1")]));
        let p = permutation_op(2);
        assert_eq!(p.compose(&p).unwrap(), Endo2::identity(2));
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_op(2).apply([1, 2]).unwrap(), vector(&[([1, 2], "1")]));
        for n in 1..=4 {
            for i in 1..=n {
                assert!(g_op(n).apply([i, i]).unwrap().is_empty());
            }
        }
        assert_eq!(g_op(3).apply([3, 1]).unwrap(), vector(&[([1, 3], "-1"), ([2, 2], "-1")]));
        assert_eq!(g_op(3).apply([1, 3]).unwrap(), vector(&[([1, 3], "1"), ([2, 2], "1")]));
        assert!(g_op(1).is_zero());
    }

    #[test]
    fn g_conserves_weight() {
        for n in 1..=6 {
            for (i, o, _) in g_op(n).entries() {
                assert_eq!(i[0] + i[1], o[0] + o[1]);
            }
        }
    }

    #[test]
    fn cg_examples() {
        let c = cg_op(&CGParams::hecke(2).unwrap());
        assert_eq!(c.apply([1, 2]).unwrap(), vector(&[([2, 1], "q"), ([1, 2], "q - q^-1")]));
        assert_eq!(c.apply([2, 1]).unwrap(), vector(&[([1, 2], "q^-1")]));
        let c5 = cg_op(&CGParams::hecke(5).unwrap());
        for i in 1..=5 {
            assert_eq!(c5.apply([i, i]).unwrap(), vector(&[([i, i], "q")]));
        }
    }

    #[test]
    fn twisted_examples() {
        let c = cg_twisted_op(2);
        assert_eq!(
            c.apply([1, 2]).unwrap(),
            vector(&[([2, 1], "q*p^-1"), ([1, 2], "q - q^-1")])
        );
        assert_eq!(c.apply([2, 1]).unwrap(), vector(&[([1, 2], "q^-1*p")]));
    }

    #[test]
    fn twisted_at_p_one_is_hecke_cg() {
        for n in 1..=5 {
            let flat = cg_twisted_op(n).try_map(|c| Ok::<_, Error>(c.at_p_one())).unwrap();
            assert_eq!(flat, cg_op(&CGParams::hecke(n).unwrap()));
            let at_one = cg_twisted_op(n)
                .try_map(|c| {
                    let v = c.eval(&rational(3, 1), &rational(1, 1))?;
                    Ok::<_, Error>(v)
                })
                .unwrap();
            let direct = cg_op(&CGParams::hecke(n).unwrap())
                .try_map(|c| c.eval(&rational(3, 1), &rational(1, 1)))
                .unwrap();
            assert_eq!(at_one, direct);
        }
    }

    #[test]
    fn inverse_hecke_point() {
        let params = CGParams::hecke(3).unwrap();
        let r = cg_op(&params);
        let inv = cg_inverse(&r, &params.alpha, &params.beta).unwrap();
        let shifted = r.sub(&Endo2::scalar(3, &params.beta)).unwrap();
        assert_eq!(inv, shifted);
        assert_eq!(r.compose(&inv).unwrap(), Endo2::identity(3));
        assert_eq!(inv.compose(&r).unwrap(), Endo2::identity(3));
    }

    #[test]
    fn inverse_of_permutation() {
        let p = permutation_op(3);
        let inv = cg_inverse(&p, &LaurentQP::one(), &LaurentQP::zero()).unwrap();
        assert_eq!(inv, p);
    }

    #[test]
    fn inverse_errors() {
        let one = LaurentQP::one();
        let r = cg_op(&CGParams::new(2, one.clone(), one.clone()).unwrap());
        assert!(matches!(cg_inverse(&r, &one, &one), Err(Error::NotInvertible(_))));
        // α(α−β) = q(q − 1) has two terms
        let (a, b) = (LaurentQP::q(), LaurentQP::one());
        let r = cg_op(&CGParams::new(2, a.clone(), b.clone()).unwrap());
        assert!(matches!(cg_inverse(&r, &a, &b), Err(Error::NotUnit(_))));
        let z = LaurentQP::zero();
        assert!(matches!(cg_inverse(&r, &z, &one), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn params_reject_zero_rank() {
        assert_eq!(CGParams::hecke(0), Err(Error::ZeroRank));
    }
}
