//! Exact operator-level checks.
//!
//! Each check forms the difference of the two sides of an operator identity
//! and passes iff that difference is the zero operator. A failure carries the
//! lexicographically smallest `(input, output)` entry of the difference, so
//! reports are deterministic.

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{g_in, permutation_in, CGParams};
use crate::ring::LaurentQP;
use crate::tensor::export::CoeffFormat;
use crate::tensor::{compose_all, Coeff, Endo2, Endo3, Operator, Witness};

/// A failing entry: input tuple, output tuple and `left − right` there.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportWitness<C = LaurentQP> {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    pub diff: C,
}

impl<C, const K: usize> From<Witness<C, K>> for ReportWitness<C> {
    fn from(w: Witness<C, K>) -> Self {
        Self {
            input: w.input.to_vec(),
            output: w.output.to_vec(),
            diff: w.diff,
        }
    }
}

/// Outcome of one check. `passed` holds exactly when `witness` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport<C = LaurentQP> {
    pub name: String,
    pub passed: bool,
    pub witness: Option<ReportWitness<C>>,
    pub elapsed: Duration,
}

impl<C> CheckReport<C> {
    fn timed(name: &str, f: impl FnOnce() -> Option<ReportWitness<C>>) -> Self {
        let start = Instant::now();
        let witness = f();
        Self {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
            elapsed: start.elapsed(),
        }
    }
}

#[derive(Serialize)]
struct WitnessRepr<'a, R> {
    input: &'a [usize],
    output: &'a [usize],
    diff: R,
}

#[derive(Serialize)]
struct ReportRepr<'a, R> {
    name: &'a str,
    passed: bool,
    witness: Option<WitnessRepr<'a, R>>,
    elapsed_ms: f64,
}

impl<C: CoeffFormat> Serialize for CheckReport<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ReportRepr {
            name: &self.name,
            passed: self.passed,
            witness: self.witness.as_ref().map(|w| WitnessRepr {
                input: &w.input,
                output: &w.output,
                diff: w.diff.to_repr(),
            }),
            elapsed_ms: self.elapsed.as_micros() as f64 / 1e3,
        }
        .serialize(serializer)
    }
}

fn sum3<C: Coeff>(terms: [Endo3<C>; 3]) -> Endo3<C> {
    let [a, b, c] = terms;
    a.add(&b).and_then(|ab| ab.add(&c)).expect("lifts share a rank")
}

fn triple<C: Coeff>(a: &Endo3<C>, b: &Endo3<C>, c: &Endo3<C>) -> Endo3<C> {
    compose_all(&[a, b, c]).expect("lifts share a rank")
}

fn first_diff<C: Coeff, const K: usize>(
    left: &Operator<C, K>,
    right: &Operator<C, K>,
) -> Option<ReportWitness<C>> {
    left.first_difference(right)
        .expect("both sides share a rank")
        .map(ReportWitness::from)
}

/// Both sides of the braid relation `c₁₂c₂₃c₁₂ = c₂₃c₁₂c₂₃`.
pub fn ybe_sides<C: Coeff>(c: &Endo2<C>) -> (Endo3<C>, Endo3<C>) {
    let (c12, c23) = (c.lift12(), c.lift23());
    (triple(&c12, &c23, &c12), triple(&c23, &c12, &c23))
}

pub fn check_ybe<C: Coeff>(c: &Endo2<C>) -> CheckReport<C> {
    CheckReport::timed("ybe", || {
        let (left, right) = ybe_sides(c);
        first_diff(&left, &right)
    })
}

/// Both sides of `f₁₂g₂₃g₁₂ + g₁₂f₂₃g₁₂ + g₁₂g₂₃f₁₂ = f₂₃g₁₂g₂₃ + g₂₃f₁₂g₂₃ + g₂₃g₁₂f₂₃`.
pub fn mixed_sides<C: Coeff>(f: &Endo2<C>, g: &Endo2<C>) -> Result<(Endo3<C>, Endo3<C>)> {
    if f.n() != g.n() {
        return Err(Error::RankMismatch {
            left: f.n(),
            right: g.n(),
        });
    }
    let (f12, f23, g12, g23) = (f.lift12(), f.lift23(), g.lift12(), g.lift23());
    let left = sum3([
        triple(&f12, &g23, &g12),
        triple(&g12, &f23, &g12),
        triple(&g12, &g23, &f12),
    ]);
    let right = sum3([
        triple(&f23, &g12, &g23),
        triple(&g23, &f12, &g23),
        triple(&g23, &g12, &f23),
    ]);
    Ok((left, right))
}

/// The compatibility condition
/// `g₁₂g₂₃P₁₂ + g₁₂P₂₃g₁₂ + P₁₂g₂₃g₁₂ = g₂₃g₁₂P₂₃ + g₂₃P₁₂g₂₃ + P₂₃g₁₂g₂₃`.
pub fn check_compatibility<C: Coeff>(g: &Endo2<C>) -> CheckReport<C> {
    CheckReport::timed("compat", || {
        let p = permutation_in::<C>(g.n());
        let (left, right) = mixed_sides(&p, g).expect("same rank");
        first_diff(&left, &right)
    })
}

/// Both mixed cubic conditions: the one above, and the one with `f` and `g`
/// exchanged.
pub fn check_mixed_conditions<C: Coeff>(f: &Endo2<C>, g: &Endo2<C>) -> Result<CheckReport<C>> {
    let (first, second) = (mixed_sides(f, g)?, mixed_sides(g, f)?);
    Ok(CheckReport::timed("mixed", || {
        first_diff(&first.0, &first.1).or_else(|| first_diff(&second.0, &second.1))
    }))
}

/// `(R − q)(R + q⁻¹) = 0` for the given scalar `q`.
pub fn check_hecke(r: &Endo2, qscalar: &LaurentQP) -> Result<CheckReport> {
    let qinv = qscalar.inverse()?;
    let n = r.n();
    Ok(CheckReport::timed("hecke", || {
        let left = r.sub(&Endo2::scalar(n, qscalar)).unwrap();
        let right = r.add(&Endo2::scalar(n, &qinv)).unwrap();
        let product = left.compose(&right).unwrap();
        first_diff(&product, &Endo2::zero(n))
    }))
}

/// `g² = g`, `gP = −g` and `Pg = g + P − I`.
pub fn check_gp_relations(n: usize) -> CheckReport {
    CheckReport::timed("gp", || {
        let g = g_in::<LaurentQP>(n);
        let p = permutation_in::<LaurentQP>(n);
        let id = Endo2::identity(n);
        let relations = [
            (g.compose(&g).unwrap(), g.clone()),
            (g.compose(&p).unwrap(), g.scale(&-LaurentQP::one())),
            (p.compose(&g).unwrap(), g.add(&p).unwrap().sub(&id).unwrap()),
        ];
        relations.iter().find_map(|(l, r)| first_diff(l, r))
    })
}

/// `R² = βR + α(α−β)I` for `R = αP + βg`.
pub fn check_quadratic(n: usize, alpha: &LaurentQP, beta: &LaurentQP) -> Result<CheckReport> {
    let params = CGParams::new(n, alpha.clone(), beta.clone())?;
    Ok(CheckReport::timed("quadratic", || {
        let r = crate::model::cg_op(&params);
        let left = r.compose(&r).unwrap();
        let unit = alpha * &(alpha - beta);
        let right = Endo2::linear_combo(beta, &r, &unit, &Endo2::identity(n)).unwrap();
        first_diff(&left, &right)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{cg_op, g_op, permutation_op};
    use crate::ring::{rational, Rational};

    fn lq(s: &str) -> LaurentQP {
        s.parse().unwrap()
    }

    fn cg(n: usize, alpha: &str, beta: &str) -> Endo2 {
        cg_op(&CGParams::new(n, lq(alpha), lq(beta)).unwrap())
    }

    #[test]
    fn ybe_examples() {
        assert!(check_ybe(&cg(3, "q", "hecke")).passed);
        assert!(check_ybe(&permutation_op(3)).passed);
    }

    /// Smallest non-solution found by exhausting {0, ±1}-valued
    /// weight-preserving operators at n = 2 in lexicographic order.
    #[test]
    fn ybe_regression_fixture() {
        let mut h = Endo2::<Rational>::zero(2);
        h.add_entry([2, 1], [2, 1], rational(1, 1));
        h.add_entry([2, 2], [2, 2], rational(-1, 1));
        let report = check_ybe(&h);
        assert!(!report.passed);
        let w = report.witness.unwrap();
        assert_eq!((w.input, w.output, w.diff), (vec![2, 2, 1], vec![2, 2, 1], rational(2, 1)));
    }

    #[test]
    fn compatibility_examples() {
        assert!(check_compatibility(&g_op(4)).passed);
        assert!(check_compatibility(&permutation_op(3)).passed);
        let report = check_compatibility(&Endo2::<LaurentQP>::identity(2));
        assert!(!report.passed);
    }

    #[test]
    fn compatibility_with_identity_expands_as_expected() {
        // with g = I the sides are 2P₁₂ + P₂₃ and 2P₂₃ + P₁₂
        let id = Endo2::<Rational>::identity(2);
        let p = permutation_in::<Rational>(2);
        let (left, right) = mixed_sides(&p, &id).unwrap();
        let two = rational(2, 1);
        let one = rational(1, 1);
        let expect_l = Endo3::linear_combo(&two, &p.lift12(), &one, &p.lift23()).unwrap();
        let expect_r = Endo3::linear_combo(&two, &p.lift23(), &one, &p.lift12()).unwrap();
        assert_eq!(left, expect_l);
        assert_eq!(right, expect_r);
    }

    #[test]
    fn mixed_examples() {
        assert!(check_mixed_conditions(&permutation_op(3), &g_op(3)).unwrap().passed);
        let c = cg(3, "q", "hecke");
        assert!(check_mixed_conditions(&c, &c).unwrap().passed);
        let id = Endo2::<LaurentQP>::identity(2);
        assert!(check_mixed_conditions(&id, &id).unwrap().passed);
        assert!(matches!(
            check_mixed_conditions(&permutation_op(2), &g_op(3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn hecke_examples() {
        assert!(check_hecke(&cg(3, "q", "hecke"), &LaurentQP::q()).unwrap().passed);
        assert!(!check_hecke(&cg(2, "q", "1"), &LaurentQP::q()).unwrap().passed);
        let r = Endo2::scalar(1, &LaurentQP::q());
        assert!(check_hecke(&r, &LaurentQP::q()).unwrap().passed);
        assert!(matches!(
            check_hecke(&r, &LaurentQP::q_minus_q_inv()),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn gp_relations() {
        for n in 1..=4 {
            assert!(check_gp_relations(n).passed, "n = {n}");
        }
        // Pg(e1⊗e3) = e3⊗e1 + e2⊗e2 = (g + P − I)(e1⊗e3)
        let g = g_op(3);
        let p = permutation_op(3);
        let lhs = p.compose(&g).unwrap().apply([1, 3]).unwrap();
        let rhs = g.add(&p).unwrap().sub(&Endo2::identity(3)).unwrap().apply([1, 3]).unwrap();
        let expect = [([3, 1], LaurentQP::one()), ([2, 2], LaurentQP::one())].into_iter().collect();
        assert_eq!(lhs, expect);
        assert_eq!(rhs, expect);
    }

    #[test]
    fn quadratic_examples() {
        assert!(check_quadratic(3, &lq("q"), &lq("hecke")).unwrap().passed);
        assert!(check_quadratic(2, &lq("1"), &lq("0")).unwrap().passed);
        // at the Hecke point the relation reads R² = (q − q⁻¹)R + I
        let r = cg(3, "q", "hecke");
        let rhs = Endo2::linear_combo(&lq("hecke"), &r, &LaurentQP::one(), &Endo2::identity(3)).unwrap();
        assert_eq!(r.compose(&r).unwrap(), rhs);
        assert_eq!(check_quadratic(0, &lq("q"), &lq("1")), Err(Error::ZeroRank));
    }

    #[test]
    fn report_json_shape() {
        let mut report = check_hecke(&cg(2, "q", "1"), &LaurentQP::q()).unwrap();
        report.elapsed = Duration::from_millis(3);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"name":"hecke","passed":false,"witness":{"input":[1,2],"output":[1,2],"diff":["#));
        assert!(json.ends_with(r#""elapsed_ms":3.0}"#));
        let ok = check_gp_relations(1);
        let json = serde_json::to_value(&ok).unwrap();
        assert_eq!(json["witness"], serde_json::Value::Null);
        assert_eq!(json["passed"], true);
    }
}
