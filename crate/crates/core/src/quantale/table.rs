use std::sync::Arc;

use rand::Rng;
use serde_json::Value;

use super::{Carrier, Quantale, QuantaleError};
use crate::lattice::{shapes, FiniteLattice};

/// A quantale on a finite lattice given by a row-major multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableQuantale {
    lattice: Arc<FiniteLattice>,
    tensor: Vec<usize>,
    unit: usize,
}

impl TableQuantale {
    /// Checks only the table shape; the quantale laws are left to
    /// [`crate::verify::check_quantale_laws`].
    pub fn new(
        lattice: Arc<FiniteLattice>,
        tensor: Vec<usize>,
        unit: usize,
    ) -> Result<Self, QuantaleError> {
        check_table(&lattice, &tensor, "tensor")?;
        if unit >= lattice.len() {
            return Err(QuantaleError::UnknownElement(unit.to_string()));
        }
        Ok(TableQuantale {
            lattice,
            tensor,
            unit,
        })
    }

    /// Builds a table from a binary operation on element indices.
    pub fn from_fn<F>(lattice: Arc<FiniteLattice>, unit: usize, op: F) -> Self
    where
        F: Fn(usize, usize) -> usize,
    {
        let n = lattice.len();
        let tensor = (0..n * n).map(|i| op(i / n, i % n)).collect();
        Self::new(lattice, tensor, unit).expect("operation stays inside the carrier")
    }

    /// Builds a table from element names, as in the JSON format.
    pub fn from_named(
        lattice: Arc<FiniteLattice>,
        rows: &[Vec<String>],
        unit: &str,
    ) -> Result<Self, QuantaleError> {
        let tensor = named_table(&lattice, rows)?;
        let unit = lattice.index_of(unit)?;
        Self::new(lattice, tensor, unit)
    }

    /// `({0, 1}, ∧, 1)`.
    pub fn boolean() -> Self {
        let l = Arc::new(shapes::chain(&["0", "1"]));
        Self::meet_frame(l)
    }

    /// The lattice itself with multiplication = meet and unit = top.
    pub fn meet_frame(lattice: Arc<FiniteLattice>) -> Self {
        let top = lattice.top();
        let l = lattice.clone();
        Self::from_fn(lattice, top, move |a, b| l.meet(a, b))
    }

    /// The one-element quantale.
    pub fn trivial() -> Self {
        let l = Arc::new(FiniteLattice::build::<&str>(&["*"], &[]).expect("one point"));
        Self::from_fn(l, 0, |_, _| 0)
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn table(&self) -> &[usize] {
        &self.tensor
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elem(&self, name: &str) -> Result<usize, QuantaleError> {
        self.lattice
            .index_of(name)
            .map_err(|_| QuantaleError::UnknownElement(name.to_string()))
    }

    /// A copy with one table entry replaced.
    pub fn with_entry(&self, a: usize, b: usize, value: usize) -> Self {
        let mut out = self.clone();
        let n = self.len();
        out.tensor[a * n + b] = value;
        out
    }

    /// Names of the rows of the multiplication table, for serialization.
    pub fn named_rows(&self) -> Vec<Vec<String>> {
        rows_of(&self.lattice, &self.tensor)
    }
}

pub(crate) fn check_table(
    lattice: &FiniteLattice,
    table: &[usize],
    what: &str,
) -> Result<(), QuantaleError> {
    let n = lattice.len();
    if table.len() != n * n {
        return Err(QuantaleError::Shape(format!(
            "{what} table has {} entries, expected {}",
            table.len(),
            n * n
        )));
    }
    if let Some(bad) = table.iter().find(|&&v| v >= n) {
        return Err(QuantaleError::UnknownElement(bad.to_string()));
    }
    Ok(())
}

pub(crate) fn named_table(
    lattice: &FiniteLattice,
    rows: &[Vec<String>],
) -> Result<Vec<usize>, QuantaleError> {
    let n = lattice.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(QuantaleError::Shape(format!("expected a {n}x{n} table")));
    }
    rows.iter()
        .flatten()
        .map(|s| {
            lattice
                .index_of(s)
                .map_err(|_| QuantaleError::UnknownElement(s.clone()))
        })
        .collect()
}

pub(crate) fn rows_of(lattice: &FiniteLattice, table: &[usize]) -> Vec<Vec<String>> {
    let n = lattice.len();
    table
        .chunks(n)
        .map(|row| row.iter().map(|&v| lattice.name(v).to_string()).collect())
        .collect()
}

pub(crate) fn decode_finite(lattice: &FiniteLattice, v: &Value) -> Result<usize, QuantaleError> {
    let name = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(QuantaleError::UnknownElement(other.to_string())),
    };
    lattice
        .index_of(&name)
        .map_err(|_| QuantaleError::UnknownElement(name))
}

impl Carrier for TableQuantale {
    type Elem = usize;

    fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }
    fn bottom(&self) -> usize {
        self.lattice.bottom()
    }
    fn top(&self) -> usize {
        self.lattice.top()
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn domain(&self, _window: i64) -> Vec<usize> {
        (0..self.len()).collect()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, _window: i64) -> usize {
        rng.gen_range(0..self.len())
    }
    fn shrink_elem(&self, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if a != self.bottom() {
            out.push(self.bottom());
        }
        out.extend(self.lattice.lower_covers(a).iter().filter(|&&c| c != self.bottom()));
        out
    }
    fn render(&self, a: usize) -> String {
        self.lattice.name(a).to_string()
    }
    fn encode(&self, a: usize) -> Value {
        Value::String(self.lattice.name(a).to_string())
    }
    fn decode(&self, v: &Value) -> Result<usize, QuantaleError> {
        decode_finite(&self.lattice, v)
    }
}

impl Quantale for TableQuantale {
    #[inline]
    fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a * self.len() + b]
    }
    fn unit(&self) -> usize {
        self.unit
    }
}
