use std::sync::Arc;

use super::{QuantaleError, TableLd, TableQuantale};
use crate::lattice::FiniteLattice;

/// A finite monoid given by its element names and row-major addition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    elements: Vec<String>,
    table: Vec<usize>,
}

impl MonoidTable {
    /// Checks only the shape; algebraic properties are checked by
    /// [`shift_completion`].
    pub fn new<S: AsRef<str>>(elements: &[S], rows: &[Vec<S>]) -> Result<Self, QuantaleError> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let n = elements.len();
        if n == 0 || rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(QuantaleError::Shape(format!("expected a {n}x{n} monoid table")));
        }
        let index = |s: &str| {
            elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| QuantaleError::UnknownElement(s.to_string()))
        };
        let table = rows
            .iter()
            .flatten()
            .map(|s| index(s.as_ref()))
            .collect::<Result<_, _>>()?;
        Ok(MonoidTable { elements, table })
    }

    /// `Z/n` with elements `"e"`, `"g"`, `"g2"`, ... and `gi + gj = g(i+j mod n)`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let name = |i: usize| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        };
        MonoidTable {
            elements: (0..n).map(name).collect(),
            table: (0..n * n).map(|k| (k / n + k % n) % n).collect(),
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, QuantaleError> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| QuantaleError::UnknownElement(name.to_string()))
    }

    fn pair(&self, a: usize, b: usize) -> String {
        format!("({}, {})", self.elements[a], self.elements[b])
    }

    fn unit(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|a| self.add(e, a) == a && self.add(a, e) == a))
    }

    fn validate(&self) -> Result<usize, QuantaleError> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(QuantaleError::NotCommutative(self.pair(a, b)));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(QuantaleError::NotAssociative(format!(
                            "({}, {}, {})",
                            self.elements[a], self.elements[b], self.elements[c]
                        )));
                    }
                }
            }
        }
        let unit = self.unit().ok_or(QuantaleError::NoUnit)?;
        for a in 0..n {
            for b in 0..n {
                for c in (b + 1)..n {
                    if self.add(a, b) == self.add(a, c) {
                        return Err(QuantaleError::NotCancellative(format!(
                            "{} + {} = {} + {}",
                            self.elements[a], self.elements[b], self.elements[a], self.elements[c]
                        )));
                    }
                }
            }
        }
        Ok(unit)
    }
}

/// The completion `M⁺`: the monoid as an antichain between an adjoined bottom
/// `"0"` and top `"1"`, with `x + y` as tensor (unit `e`) and
/// `x · y = x + y - shift` as par (unit `shift`).
///
/// Tensor: `0` absorbs everything, then `1` absorbs the rest.
/// Par: `1` absorbs everything, then `0` absorbs the rest.
pub fn shift_completion(monoid: &MonoidTable, shift: &str) -> Result<TableLd, QuantaleError> {
    let unit = monoid.validate()?;
    let shift = monoid.index_of(shift)?;
    let n = monoid.len();
    let inverse = (0..n)
        .find(|&b| monoid.add(shift, b) == unit)
        .ok_or_else(|| QuantaleError::ShiftNotInvertible(monoid.elements[shift].clone()))?;
    if monoid.elements.iter().any(|e| e == "0" || e == "1") {
        return Err(QuantaleError::Shape(
            "monoid element names `0` and `1` are reserved".to_string(),
        ));
    }

    // Index 0 is the bottom, 1..=n the monoid, n + 1 the top.
    let (bottom, top) = (0, n + 1);
    let mut names = vec!["0".to_string()];
    names.extend(monoid.elements.iter().cloned());
    names.push("1".to_string());
    let covers: Vec<(String, String)> = monoid
        .elements
        .iter()
        .flat_map(|e| [("0".to_string(), e.clone()), (e.clone(), "1".to_string())])
        .collect();
    let lattice = Arc::new(FiniteLattice::build(&names, &covers)?);

    let tensor = TableQuantale::from_fn(lattice, unit + 1, |a, b| {
        if a == bottom || b == bottom {
            bottom
        } else if a == top || b == top {
            top
        } else {
            monoid.add(a - 1, b - 1) + 1
        }
    });
    Ok(TableLd::from_fn(tensor, shift + 1, |a, b| {
        if a == top || b == top {
            top
        } else if a == bottom || b == bottom {
            bottom
        } else {
            monoid.add(monoid.add(a - 1, b - 1), inverse) + 1
        }
    }))
}
