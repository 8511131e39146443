//! JSON, CSV and LaTeX renderings of operators.
//!
//! JSON: `{"n": …, "arity": 2|3, "entries": [{"out": […], "in": […], "coeff": …}]}`
//! with entries sorted by `(in, out)`. CSV and LaTeX are dense, with rows
//! indexed by the flattened input tuple and columns by the flattened output
//! tuple, both in row-major 1-based order.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{basis, flat_index, Coeff, Operator};
use crate::error::Error;
use crate::ring::{parse_rational, rational_to_string, LaurentQP, Rational};

/// Coefficient types with a stable textual form.
pub trait CoeffFormat: Coeff {
    type Repr: Serialize + DeserializeOwned;

    fn to_repr(&self) -> Self::Repr;
    fn from_repr(repr: Self::Repr) -> Result<Self, Error>;
    /// Cell text for CSV output.
    fn to_cell(&self) -> String;
    fn to_latex(&self) -> String;
}

impl CoeffFormat for LaurentQP {
    type Repr = LaurentQP;

    fn to_repr(&self) -> LaurentQP {
        self.clone()
    }

    fn from_repr(repr: LaurentQP) -> Result<Self, Error> {
        Ok(repr)
    }

    fn to_cell(&self) -> String {
        self.to_string()
    }

    fn to_latex(&self) -> String {
        LaurentQP::to_latex(self)
    }
}

impl CoeffFormat for Rational {
    type Repr = String;

    fn to_repr(&self) -> String {
        rational_to_string(self)
    }

    fn from_repr(repr: String) -> Result<Self, Error> {
        parse_rational(&repr)
    }

    fn to_cell(&self) -> String {
        self.to_string()
    }

    fn to_latex(&self) -> String {
        LaurentQP::constant(self.clone()).to_latex()
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr<R> {
    out: Vec<usize>,
    #[serde(rename = "in")]
    input: Vec<usize>,
    coeff: R,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr<R> {
    n: usize,
    arity: usize,
    entries: Vec<EntryRepr<R>>,
}

impl<C: CoeffFormat, const K: usize> Serialize for Operator<C, K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .entries()
            .map(|(i, o, c)| EntryRepr {
                out: o.to_vec(),
                input: i.to_vec(),
                coeff: c.to_repr(),
            })
            .collect();
        OperatorRepr {
            n: self.n,
            arity: K,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de, C: CoeffFormat, const K: usize> Deserialize<'de> for Operator<C, K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = OperatorRepr::<C::Repr>::deserialize(deserializer)?;
        if repr.arity != K {
            return Err(D::Error::custom(format!("expected arity {K}, found {}", repr.arity)));
        }
        if repr.n == 0 {
            return Err(D::Error::custom(Error::ZeroRank));
        }
        let tuple = |v: Vec<usize>| -> Result<[usize; K], D::Error> {
            let t: [usize; K] = v
                .try_into()
                .map_err(|_| D::Error::custom(format!("index tuple must have {K} entries")))?;
            if let Some(&index) = t.iter().find(|&&i| i == 0 || i > repr.n) {
                return Err(D::Error::custom(Error::IndexOutOfRange { index, n: repr.n }));
            }
            Ok(t)
        };
        let mut op = Operator::zero(repr.n);
        for e in repr.entries {
            let c = C::from_repr(e.coeff).map_err(D::Error::custom)?;
            op.add_entry(tuple(e.input)?, tuple(e.out)?, c);
        }
        Ok(op)
    }
}

fn label<const K: usize>(t: &[usize; K]) -> String {
    t.iter().map(usize::to_string).collect::<Vec<_>>().join("-")
}

impl<C: CoeffFormat, const K: usize> Operator<C, K> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("operator serialization is infallible")
    }

    /// Dense CSV with a header row of output labels and a leading column of
    /// input labels (`i-j` or `i-j-k`).
    pub fn to_csv(&self) -> String {
        let all: Vec<_> = basis::<K>(self.n).collect();
        let dense = self.to_dense();
        let mut out = String::from("in\\out");
        for t in &all {
            out.push(',');
            out.push_str(&label(t));
        }
        out.push('\n');
        for t in &all {
            out.push_str(&label(t));
            for c in &dense[flat_index(self.n, t)] {
                out.push(',');
                let cell = c.to_cell();
                if cell.contains(',') || cell.contains(' ') {
                    out.push('"');
                    out.push_str(&cell);
                    out.push('"');
                } else {
                    out.push_str(&cell);
                }
            }
            out.push('\n');
        }
        out
    }

    /// A `pmatrix` in the same row/column convention as [`Self::to_csv`].
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{pmatrix}\n");
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(CoeffFormat::to_latex).collect();
            out.push_str("  ");
            out.push_str(&cells.join(" & "));
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{pmatrix}\n");
        out
    }
}
