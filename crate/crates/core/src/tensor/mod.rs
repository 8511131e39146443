//! Sparse linear operators on `V⊗V` and `V⊗V⊗V`.
//!
//! An [`Operator`] stores, for every basis input `e_{i₁}⊗…⊗e_{i_K}`, the sparse
//! image vector. Basis labels are 1-based. Entries are kept canonical: a
//! coefficient that becomes zero is removed, so derived equality is operator
//! equality.
//!
//! The coefficient type is generic. Symbolic work uses
//! [`LaurentQP`](crate::ring::LaurentQP); numeric specializations use
//! [`Rational`](crate::ring::Rational).

pub mod export;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{AddAssign, Mul, Neg, Sub};

use num::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::{LaurentQP, Rational};

/// Anything usable as a matrix coefficient.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + AddAssign
        + Send
        + Sync
{
}

/// A basis tensor `e_{t[0]} ⊗ … ⊗ e_{t[K-1]}`, 1-based.
pub type Basis<const K: usize> = [usize; K];

/// A sparse vector in `V^{⊗K}`.
pub type Vector<C, const K: usize> = BTreeMap<Basis<K>, C>;

/// Linear operator on `V^{⊗K}` for a rank-`n` space `V`.
#[derive(Clone, PartialEq)]
pub struct Operator<C, const K: usize> {
    n: usize,
    columns: BTreeMap<Basis<K>, Vector<C, K>>,
}

pub type Endo2<C = LaurentQP> = Operator<C, 2>;
pub type Endo3<C = LaurentQP> = Operator<C, 3>;

/// A single entry where two operators disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<C, const K: usize> {
    pub input: Basis<K>,
    pub output: Basis<K>,
    /// `left − right` at this entry; never zero.
    pub diff: C,
}

fn add_into<C: Coeff, const K: usize>(v: &mut Vector<C, K>, key: Basis<K>, c: C) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match v.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Every basis tensor of `V^{⊗K}` in lexicographic order.
pub fn basis<const K: usize>(n: usize) -> impl Iterator<Item = Basis<K>> {
    let total = n.pow(K as u32);
    (0..total).map(move |mut idx| {
        let mut t = [0; K];
        for slot in t.iter_mut().rev() {
            *slot = idx % n + 1;
            idx /= n;
        }
        t
    })
}

/// Row-major flat position of a basis tensor, 0-based.
pub fn flat_index<const K: usize>(n: usize, t: &Basis<K>) -> usize {
    t.iter().fold(0, |acc, &i| acc * n + (i - 1))
}

impl<C: Coeff, const K: usize> Operator<C, K> {
    /// The zero operator. Panics if `n == 0`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        Self {
            n,
            columns: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zero(n);
        for t in basis::<K>(n) {
            out.add_entry(t, t, C::one());
        }
        out
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: &C) -> Self {
        Self::identity(n).scale(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_basis(&self, t: &Basis<K>) -> Result<()> {
        match t.iter().find(|&&i| i == 0 || i > self.n) {
            Some(&index) => Err(Error::IndexOutOfRange { index, n: self.n }),
            None => Ok(()),
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Adds `c` to the coefficient of `output` in the image of `input`.
    ///
    /// Panics if an index is outside `1..=n`.
    pub fn add_entry(&mut self, input: Basis<K>, output: Basis<K>, c: C) {
        self.check_basis(&input).and_then(|_| self.check_basis(&output)).unwrap();
        if c.is_zero() {
            return;
        }
        let col = self.columns.entry(input).or_default();
        add_into(col, output, c);
        if col.is_empty() {
            self.columns.remove(&input);
        }
    }

    pub fn get(&self, input: &Basis<K>, output: &Basis<K>) -> Option<&C> {
        self.columns.get(input).and_then(|col| col.get(output))
    }

    /// All nonzero entries as `(input, output, coeff)`, sorted by `(input, output)`.
    pub fn entries(&self) -> impl Iterator<Item = (Basis<K>, Basis<K>, &C)> + '_ {
        self.columns
            .iter()
            .flat_map(|(i, col)| col.iter().map(move |(o, c)| (*i, *o, c)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    /// The image of a basis tensor.
    pub fn apply(&self, input: Basis<K>) -> Result<Vector<C, K>> {
        self.check_basis(&input)?;
        Ok(self.columns.get(&input).cloned().unwrap_or_default())
    }

    /// The image of an arbitrary sparse vector.
    pub fn apply_vec(&self, v: &Vector<C, K>) -> Vector<C, K> {
        let mut out = Vector::new();
        for (t, c) in v {
            if let Some(col) = self.columns.get(t) {
                for (o, d) in col {
                    add_into(&mut out, *o, c.clone() * d.clone());
                }
            }
        }
        out
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check_rank(rhs)?;
        let columns: BTreeMap<_, _> = rhs
            .columns
            .par_iter()
            .map(|(input, col)| (*input, self.apply_vec(col)))
            .filter(|(_, col)| !col.is_empty())
            .collect();
        Ok(Self { n: self.n, columns })
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (i, o, v) in self.entries() {
            out.add_entry(i, o, c.clone() * v.clone());
        }
        out
    }

    /// `a·f + b·g`.
    pub fn linear_combo(a: &C, f: &Self, b: &C, g: &Self) -> Result<Self> {
        f.check_rank(g)?;
        let mut out = f.scale(a);
        for (i, o, v) in g.entries() {
            out.add_entry(i, o, b.clone() * v.clone());
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combo(&C::one(), self, &C::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combo(&C::one(), self, &-C::one(), other)
    }

    /// The lexicographically smallest `(input, output)` entry where `self`
    /// and `other` differ, or `None` if they are equal.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Witness<C, K>>> {
        let diff = self.sub(other)?;
        let first = diff.entries().next().map(|(input, output, c)| Witness {
            input,
            output,
            diff: c.clone(),
        });
        Ok(first)
    }

    /// Entrywise coefficient map, e.g. numeric evaluation of a symbolic operator.
    pub fn try_map<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> Result<D, E>) -> Result<Operator<D, K>, E> {
        let mut out = Operator::zero(self.n);
        for (i, o, c) in self.entries() {
            out.add_entry(i, o, f(c)?);
        }
        Ok(out)
    }

    /// Dense matrix: row = flattened input, column = flattened output.
    pub fn to_dense(&self) -> Vec<Vec<C>> {
        let dim = self.n.pow(K as u32);
        let mut rows = vec![vec![C::zero(); dim]; dim];
        for (i, o, c) in self.entries() {
            rows[flat_index(self.n, &i)][flat_index(self.n, &o)] = c.clone();
        }
        rows
    }
}

impl<const K: usize> Operator<LaurentQP, K> {
    /// Substitutes nonzero rationals for `q` and `p` in every entry.
    pub fn eval(&self, q: &Rational, p: &Rational) -> Result<Operator<Rational, K>> {
        self.try_map(|c| c.eval(q, p))
    }
}

impl<C: Coeff> Operator<C, 2> {
    /// `f ⊗ Id`: acts on tensor factors 1 and 2.
    pub fn lift12(&self) -> Operator<C, 3> {
        let mut out = Operator::zero(self.n);
        for (i, o, c) in self.entries() {
            for k in 1..=self.n {
                out.add_entry([i[0], i[1], k], [o[0], o[1], k], c.clone());
            }
        }
        out
    }

    /// `Id ⊗ f`: acts on tensor factors 2 and 3.
    pub fn lift23(&self) -> Operator<C, 3> {
        let mut out = Operator::zero(self.n);
        for (i, o, c) in self.entries() {
            for k in 1..=self.n {
                out.add_entry([k, i[0], i[1]], [k, o[0], o[1]], c.clone());
            }
        }
        out
    }
}

impl<C: Debug, const K: usize> Debug for Operator<C, K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for (i, col) in &self.columns {
            for (o, c) in col {
                m.entry(&(i, o), c);
            }
        }
        m.finish()
    }
}

/// Composes `ops` right to left: `compose_all(&[a, b, c]) = a∘b∘c`.
pub fn compose_all<C: Coeff, const K: usize>(ops: &[&Operator<C, K>]) -> Result<Operator<C, K>> {
    let (last, rest) = ops.split_last().expect("at least one operator");
    rest.iter()
        .rev()
        .try_fold((*last).clone(), |acc, op| op.compose(&acc))
}
