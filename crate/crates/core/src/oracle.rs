//! Exhaustive integer-window checks of the scalar identities behind the
//! operator results.
//!
//! The identities quantify over all integers; here each one is checked on
//! every tuple of a finite window `[lo, hi]^arity`. `η`, `u` and `δ` are
//! integer valued, so everything runs on `i64`. Sums over an unbounded index
//! are truncated to the support `[min, max)` of the `η` factor that governs
//! them; [`check_summation_padding`] confirms that widening those ranges
//! changes nothing.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{eta, eta_support, kron_delta as delta, step_u as u};

/// The integer box `[lo, hi]^arity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntWindow {
    pub lo: i64,
    pub hi: i64,
    pub arity: usize,
}

impl IntWindow {
    pub fn new(lo: i64, hi: i64, arity: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        assert!(arity >= 1, "window arity must be positive");
        Ok(Self { lo, hi, arity })
    }

    /// Same bounds, different arity.
    pub fn with_arity(self, arity: usize) -> Self {
        Self { arity, ..self }
    }

    pub fn len(&self) -> u64 {
        ((self.hi - self.lo + 1) as u64).pow(self.arity as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `idx`-th tuple in lexicographic order.
    pub fn tuple(&self, mut idx: u64) -> Vec<i64> {
        let side = (self.hi - self.lo + 1) as u64;
        let mut t = vec![0; self.arity];
        for slot in t.iter_mut().rev() {
            *slot = self.lo + (idx % side) as i64;
            idx /= side;
        }
        t
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.len()).map(|i| self.tuple(i))
    }
}

/// Outcome of one identity over one window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub window: IntWindow,
    pub passed: bool,
    /// First failing tuple in lexicographic order.
    pub counterexample: Option<Vec<i64>>,
    pub tuples_checked: u64,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_micros() as f64 / 1e3)
}

fn run(name: &str, window: IntWindow, holds: impl Fn(&[i64]) -> bool + Sync) -> OracleReport {
    let start = Instant::now();
    let counterexample = (0..window.len())
        .into_par_iter()
        .find_first(|&idx| !holds(&window.tuple(idx)))
        .map(|idx| window.tuple(idx));
    OracleReport {
        name: name.to_string(),
        window,
        passed: counterexample.is_none(),
        counterexample,
        tuples_checked: window.len(),
        elapsed: start.elapsed(),
    }
}

/// `Σ_{x ∈ [min(a,b) − pad, max(a,b) + pad)} f(x)`.
fn support_sum(a: i64, b: i64, pad: i64, f: impl Fn(i64) -> i64) -> i64 {
    let r = eta_support(a, b);
    (r.start - pad..r.end + pad).map(f).sum()
}

fn zeta_padded(i: i64, j: i64, k: i64, c: i64, h: i64, pad: i64) -> i64 {
    support_sum(j, k, pad, |a| {
        eta(j, k, a) * eta(i, a, c) * eta(i + a - c, j + k - a, h)
    })
}

/// `ζ(i,j,k,c,h) = Σ_a η(j,k,a) η(i,a,c) η(i+a−c, j+k−a, h)`.
pub fn zeta(i: i64, j: i64, k: i64, c: i64, h: i64) -> i64 {
    zeta_padded(i, j, k, c, h, 0)
}

/// `Σ_s η(i,j,s) η(i+j−s, k, h+c−s) η(s, h+c−s, c)`, the other side of the
/// `g`-braid coefficient identity.
fn cond2_rhs(i: i64, j: i64, k: i64, c: i64, h: i64, pad: i64) -> i64 {
    support_sum(i, j, pad, |s| {
        eta(i, j, s) * eta(i + j - s, k, h + c - s) * eta(s, h + c - s, c)
    })
}

fn prexi_lhs(t: i64, s: i64, b: i64, d: i64, h: i64, pad: i64) -> i64 {
    support_sum(t, s, pad, |a| eta(t, s, a) * eta(b + a, d - a, h))
}

fn g_square_sum(i: i64, j: i64, l: i64, pad: i64) -> i64 {
    support_sum(i, j, pad, |k| eta(i, j, k) * eta(k, i + j - k, l))
}

// -- coefficient conditions -------------------------------------------------

/// Coefficient form of the compatibility condition, over `(i, j, k, a, b)`.
pub fn check_cond1(w: IntWindow) -> OracleReport {
    run("cond1", w.with_arity(5), |t| {
        let [i, j, k, a, b] = [t[0], t[1], t[2], t[3], t[4]];
        let lhs = eta(i, k, a + b - j) * eta(j, a + b - j, a)
            + eta(i, j, b + a - k) * eta(b + a - k, k, a)
            + eta(i, j, b) * eta(i + j - b, k, a);
        let rhs = eta(i, k, a) * eta(i + k - a, j, b)
            + eta(j, k, a) * eta(i, j + k - a, b)
            + eta(j, k, j + k - b) * eta(i, j + k - b, a);
        lhs == rhs
    })
}

/// Coefficient form of the braid relation for `g`, over `(i, j, k, c, h)`.
pub fn check_cond2(w: IntWindow) -> OracleReport {
    run("cond2", w.with_arity(5), |t| {
        let [i, j, k, c, h] = [t[0], t[1], t[2], t[3], t[4]];
        zeta(i, j, k, c, h) == cond2_rhs(i, j, k, c, h, 0)
    })
}

/// The step-function identity, over `(a, b, i, j, k)`.
pub fn check_uid(w: IntWindow) -> OracleReport {
    run("uid", w.with_arity(5), |t| {
        let [a, b, i, j, k] = [t[0], t[1], t[2], t[3], t[4]];
        let lhs = u(a + b - i - j) * (u(a - j) + u(b - i) - u(b - j) - u(j - b))
            + u(k - b) * u(a + b - i - k);
        let rhs = u(a - i) * (u(k - b) - u(j - b) - u(b - j) + u(b + a - i - k)) + u(b - i) * u(a - j);
        lhs == rhs
    })
}

/// `η(i,j,k) = u(k−i) − u(k−j)`, over `(i, j, k)`.
pub fn check_eta_step(w: IntWindow) -> OracleReport {
    run("eta_step", w.with_arity(3), |t| {
        eta(t[0], t[1], t[2]) == u(t[2] - t[0]) - u(t[2] - t[1])
    })
}

// -- the nine η-identities --------------------------------------------------

/// Names accepted by [`check_ids_one`].
pub const IDS_NAMES: [&str; 9] = [
    "ids1", "ids2", "ids3", "ids4", "ids5", "ids6", "ids7", "ids8", "ids9",
];

/// One of the nine `η` identities, numbered 1 to 9:
///
/// 1. `η(a+d, b+d, c+d) = η(a,b,c)`
/// 2. `η(a,b,c) = −η(b,a,c)`
/// 3. `η(a,b,c) = η(−b,−a,−c−1) = η(a,b,a+b−c−1)`
/// 4. `η(a,a+1,c) = δ(a−c)`
/// 5. `Σ_x η(b,c,x) = c − b`
/// 6. `η(a,b,d) + η(b,c,d) = η(a,c,d)`
/// 7. `η(a,b+1,c) η(c,a,b) = 0`
/// 8. `η(a,b,c) η(c,b,d) = η(a,b,d) η(a,d+1,c)`
/// 9. `η(a,b,c) η(d,c,e) = η(a,b,c) η(d,a,e) + η(a,b,e) η(e+1,b,c)`
pub fn check_ids_one(number: usize, w: IntWindow) -> Option<OracleReport> {
    let name = IDS_NAMES.get(number.checked_sub(1)?)?;
    let report = match number {
        1 => run(name, w.with_arity(4), |t| {
            let [a, b, c, d] = [t[0], t[1], t[2], t[3]];
            eta(a + d, b + d, c + d) == eta(a, b, c)
        }),
        2 => run(name, w.with_arity(3), |t| eta(t[0], t[1], t[2]) == -eta(t[1], t[0], t[2])),
        3 => run(name, w.with_arity(3), |t| {
            let [a, b, c] = [t[0], t[1], t[2]];
            let x = eta(a, b, c);
            x == eta(-b, -a, -c - 1) && x == eta(a, b, a + b - c - 1)
        }),
        4 => run(name, w.with_arity(2), |t| eta(t[0], t[0] + 1, t[1]) == delta(t[0] - t[1])),
        5 => run(name, w.with_arity(2), |t| {
            let [b, c] = [t[0], t[1]];
            support_sum(b, c, 0, |x| eta(b, c, x)) == c - b
        }),
        6 => run(name, w.with_arity(4), |t| {
            let [a, b, c, d] = [t[0], t[1], t[2], t[3]];
            eta(a, b, d) + eta(b, c, d) == eta(a, c, d)
        }),
        7 => run(name, w.with_arity(3), |t| {
            let [a, b, c] = [t[0], t[1], t[2]];
            eta(a, b + 1, c) * eta(c, a, b) == 0
        }),
        8 => run(name, w.with_arity(4), |t| {
            let [a, b, c, d] = [t[0], t[1], t[2], t[3]];
            eta(a, b, c) * eta(c, b, d) == eta(a, b, d) * eta(a, d + 1, c)
        }),
        9 => run(name, w.with_arity(5), |t| {
            let [a, b, c, d, e] = [t[0], t[1], t[2], t[3], t[4]];
            eta(a, b, c) * eta(d, c, e) == eta(a, b, c) * eta(d, a, e) + eta(a, b, e) * eta(e + 1, b, c)
        }),
        _ => unreachable!(),
    };
    Some(report)
}

/// All nine `η` identities, in order.
pub fn check_ids_suite(w: IntWindow) -> Vec<OracleReport> {
    (1..=9).filter_map(|k| check_ids_one(k, w)).collect()
}

// -- summation lemmas -------------------------------------------------------

/// `Σ_a η(t,s,a) η(b+a, d−a, h) = (s−t)η(b+t,d−t,h) + (d−h−s)η(d−s,d−t,h)
/// + (h−b−s+1)η(b+t,b+s,h)`, over `(t, s, b, d, h)`.
pub fn check_prexi(w: IntWindow) -> OracleReport {
    run("prexi", w.with_arity(5), |x| {
        let [t, s, b, d, h] = [x[0], x[1], x[2], x[3], x[4]];
        prexi_lhs(t, s, b, d, h, 0) == prexi_rhs(t, s, b, d, h)
    })
}

fn prexi_rhs(t: i64, s: i64, b: i64, d: i64, h: i64) -> i64 {
    (s - t) * eta(b + t, d - t, h) + (d - h - s) * eta(d - s, d - t, h) + (h - b - s + 1) * eta(b + t, b + s, h)
}

fn xi_rhs(i: i64, j: i64, k: i64, c: i64, h: i64) -> i64 {
    eta(j, k, c)
        * ((k - c - 1) * eta(i - c + k, j + k - c, h)
            + (j - h) * eta(j, j + k - c, h)
            + (h - i) * eta(i, i + k - c, h))
        + eta(i, j, c)
            * ((c - i + 1) * eta(i + j - c, i + k - c, h)
                + (h - j) * eta(i + j - c, j, h)
                + (k - h) * eta(i + k - c, k, h))
}

/// Closed form of `ζ`, over `(i, j, k, c, h)`.
pub fn check_xi(w: IntWindow) -> OracleReport {
    run("xi", w.with_arity(5), |t| {
        let [i, j, k, c, h] = [t[0], t[1], t[2], t[3], t[4]];
        zeta(i, j, k, c, h) == xi_rhs(i, j, k, c, h)
    })
}

/// The right side of the `g`-braid coefficient identity equals
/// `ζ(i+j−k, i, j, h+c−k, i+j−h)`.
pub fn check_zeta_symmetry(w: IntWindow) -> OracleReport {
    run("zeta_symmetry", w.with_arity(5), |t| {
        let [i, j, k, c, h] = [t[0], t[1], t[2], t[3], t[4]];
        cond2_rhs(i, j, k, c, h, 0) == zeta(i + j - k, i, j, h + c - k, i + j - h)
    })
}

/// `Σ_k η(i,j,k) η(k, i+j−k, l) = η(i,j,l)` together with
/// `η(j,i,l) = −η(i,j,l)` and `η(i,j,i+j−l) = η(i,j,l) + δ(l−j) − δ(l−i)`,
/// over `(i, j, l)`.
pub fn check_g_idempotent_identity(w: IntWindow) -> OracleReport {
    run("g_idempotent", w.with_arity(3), |t| {
        let [i, j, l] = [t[0], t[1], t[2]];
        g_square_sum(i, j, l, 0) == eta(i, j, l)
            && eta(j, i, l) == -eta(i, j, l)
            && eta(i, j, i + j - l) == eta(i, j, l) + delta(l - j) - delta(l - i)
    })
}

/// Widening every truncated sum by `pad` on both sides leaves it unchanged.
pub fn check_summation_padding(w: IntWindow, pad: i64) -> OracleReport {
    run("padding", w.with_arity(5), |x| {
        let [a, b, c, d, e] = [x[0], x[1], x[2], x[3], x[4]];
        zeta_padded(a, b, c, d, e, 0) == zeta_padded(a, b, c, d, e, pad)
            && cond2_rhs(a, b, c, d, e, 0) == cond2_rhs(a, b, c, d, e, pad)
            && prexi_lhs(a, b, c, d, e, 0) == prexi_lhs(a, b, c, d, e, pad)
            && g_square_sum(a, b, c, 0) == g_square_sum(a, b, c, pad)
            && support_sum(a, b, 0, |t| eta(a, b, t)) == support_sum(a, b, pad, |t| eta(a, b, t))
    })
}

/// Names of every identity run by [`check_all`], in output order.
pub const ALL_NAMES: [&str; 18] = [
    "cond1",
    "cond2",
    "eta_step",
    "g_idempotent",
    "ids1",
    "ids2",
    "ids3",
    "ids4",
    "ids5",
    "ids6",
    "ids7",
    "ids8",
    "ids9",
    "padding",
    "prexi",
    "uid",
    "xi",
    "zeta_symmetry",
];

/// Runs one identity by name; `None` if the name is unknown.
pub fn check_named(name: &str, w: IntWindow) -> Option<OracleReport> {
    let report = match name {
        "cond1" => check_cond1(w),
        "cond2" => check_cond2(w),
        "eta_step" => check_eta_step(w),
        "g_idempotent" => check_g_idempotent_identity(w),
        "padding" => check_summation_padding(w, 3),
        "prexi" => check_prexi(w),
        "uid" => check_uid(w),
        "xi" => check_xi(w),
        "zeta_symmetry" => check_zeta_symmetry(w),
        other => {
            let number = other.strip_prefix("ids")?.parse().ok()?;
            return check_ids_one(number, w);
        }
    };
    Some(report)
}

/// Every identity over the same bounds, sorted by name.
pub fn check_all(w: IntWindow) -> Vec<OracleReport> {
    ALL_NAMES
        .iter()
        .map(|name| check_named(name, w).expect("known name"))
        .collect()
}
