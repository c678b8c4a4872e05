//! Finite hyperoperation tables and their extension to subsets.

use std::collections::HashSet;

use crate::error::{Error, Line, Result};
use crate::set::{CarrierIndex, ElementSet, MAX_ORDER};

/// An order-`n` carrier with a hyperoperation `n × n → non-empty subsets`.
///
/// Cells are stored row-major; `cell(a, b)` is `a · b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperTable {
    names: Vec<String>,
    cells: Vec<ElementSet>,
}

/// Something `validate_table` tolerated but wants reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    DuplicateMember {
        row: usize,
        col: usize,
        label: String,
    },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::DuplicateMember { row, col, label } => {
                write!(f, "cell ({row}, {col}) lists {label:?} more than once")
            }
        }
    }
}

impl HyperTable {
    /// Builds a table from names and row-major cells, checking every invariant.
    pub fn new(names: Vec<String>, cells: Vec<ElementSet>) -> Result<Self> {
        let n = names.len();
        check_names(&names)?;
        if cells.len() != n * n {
            return Err(Error::CarrierMismatch {
                expected: n * n,
                found: cells.len(),
            });
        }
        let full = ElementSet::full(n);
        for (k, &c) in cells.iter().enumerate() {
            let (row, col) = (k / n, k % n);
            if c.is_empty() {
                return Err(Error::EmptyCell { row, col });
            }
            if !c.is_subset(full) {
                return Err(Error::IndexOutOfRange {
                    index: (c - full).first().unwrap_or(n),
                    order: n,
                });
            }
        }
        Ok(HyperTable { names, cells })
    }

    /// Table with names `"0", "1", ..`.
    pub fn from_cells(order: usize, cells: Vec<ElementSet>) -> Result<Self> {
        Self::new(default_names(order), cells)
    }

    /// Builds a table from a cell function.
    pub fn from_fn(
        names: Vec<String>,
        mut f: impl FnMut(CarrierIndex, CarrierIndex) -> ElementSet,
    ) -> Result<Self> {
        let n = names.len();
        let cells = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(names, cells)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: CarrierIndex) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<CarrierIndex> {
        self.names.iter().position(|n| n == label)
    }

    #[inline]
    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    /// Stored cell `a · b`. Panics on out-of-range indices; see [`HyperTable::product`].
    #[inline]
    pub fn cell(&self, a: CarrierIndex, b: CarrierIndex) -> ElementSet {
        self.cells[a * self.order() + b]
    }

    pub fn cells(&self) -> &[ElementSet] {
        &self.cells
    }

    /// `a · b`, with range checking.
    pub fn product(&self, a: CarrierIndex, b: CarrierIndex) -> Result<ElementSet> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.cell(a, b))
    }

    pub fn check_index(&self, i: CarrierIndex) -> Result<()> {
        if i < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                order: self.order(),
            })
        }
    }

    pub fn check_set(&self, s: ElementSet) -> Result<()> {
        if s.fits(self.order()) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: (s - self.carrier()).first().unwrap_or(0),
                order: self.order(),
            })
        }
    }

    /// Union extension `A · B = ⋃ { a · b : a ∈ A, b ∈ B }`.
    ///
    /// Empty when either operand is empty. Members outside the carrier are a
    /// caller bug; use [`HyperTable::try_set_product`] at API boundaries.
    #[inline]
    pub fn set_product(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        let n = self.order();
        let mut acc = ElementSet::EMPTY;
        for x in a {
            let row = &self.cells[x * n..x * n + n];
            for y in b {
                acc |= row[y];
            }
        }
        acc
    }

    pub fn try_set_product(&self, a: ElementSet, b: ElementSet) -> Result<ElementSet> {
        self.check_set(a)?;
        self.check_set(b)?;
        Ok(self.set_product(a, b))
    }

    /// `a · B` for a single left factor.
    #[inline]
    pub fn left_mul(&self, a: CarrierIndex, b: ElementSet) -> ElementSet {
        let n = self.order();
        let row = &self.cells[a * n..a * n + n];
        b.iter().fold(ElementSet::EMPTY, |acc, y| acc | row[y])
    }

    /// `A · b` for a single right factor.
    #[inline]
    pub fn right_mul(&self, a: ElementSet, b: CarrierIndex) -> ElementSet {
        a.iter()
            .fold(ElementSet::EMPTY, |acc, x| acc | self.cell(x, b))
    }

    /// Union of the cells in row `x`, i.e. `x · H`.
    pub fn row_union(&self, x: CarrierIndex) -> ElementSet {
        self.left_mul(x, self.carrier())
    }

    /// Union of the cells in column `x`, i.e. `H · x`.
    pub fn column_union(&self, x: CarrierIndex) -> ElementSet {
        self.right_mul(self.carrier(), x)
    }

    /// True when every cell is a singleton, i.e. an ordinary groupoid.
    pub fn is_singleton_table(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Same cells under new labels.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self> {
        Self::new(names, self.cells.clone())
    }

    /// Labels of the members of `s`.
    pub fn labels(&self, s: ElementSet) -> Vec<&str> {
        s.iter().map(|i| self.name(i)).collect()
    }

    /// `{a, b}` style rendering with element names.
    pub fn format_set(&self, s: ElementSet) -> String {
        if s.is_empty() {
            return "∅".into();
        }
        format!("{{{}}}", self.labels(s).join(", "))
    }
}

pub(crate) fn default_names(order: usize) -> Vec<String> {
    (0..order).map(|i| i.to_string()).collect()
}

pub(crate) fn check_names(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    if names.len() > MAX_ORDER {
        return Err(Error::OrderTooLarge(names.len()));
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Validates a raw table of element labels against the declared carrier.
///
/// Repeated labels inside a cell collapse to one member and produce a warning.
pub fn validate_table<S: AsRef<str>>(
    names: &[String],
    raw: &[Vec<Vec<S>>],
) -> Result<(HyperTable, Vec<Warning>)> {
    validate_field(names, raw, "op")
}

/// `validate_table` for a table stored under `field`, which prefixes error locations.
pub(crate) fn validate_field<S: AsRef<str>>(
    names: &[String],
    raw: &[Vec<Vec<S>>],
    field: &str,
) -> Result<(HyperTable, Vec<Warning>)> {
    check_names(names)?;
    let n = names.len();
    if raw.len() != n {
        return Err(Error::Parse {
            location: field.into(),
            message: format!("expected {n} rows, found {}", raw.len()),
        });
    }
    let mut warnings = Vec::new();
    let mut cells = Vec::with_capacity(n * n);
    for (row, r) in raw.iter().enumerate() {
        if r.len() != n {
            return Err(Error::Parse {
                location: format!("{field}[{row}]"),
                message: format!("expected {n} cells, found {}", r.len()),
            });
        }
        for (col, labels) in r.iter().enumerate() {
            let mut cell = ElementSet::EMPTY;
            for label in labels {
                let label = label.as_ref();
                let i =
                    names
                        .iter()
                        .position(|x| x == label)
                        .ok_or_else(|| Error::UnknownElement {
                            label: label.to_string(),
                            location: format!("{field}[{row}][{col}]"),
                        })?;
                if cell.contains(i) {
                    warnings.push(Warning::DuplicateMember {
                        row,
                        col,
                        label: label.to_string(),
                    });
                }
                cell.insert(i);
            }
            if cell.is_empty() {
                return Err(Error::EmptyCell { row, col });
            }
            cells.push(cell);
        }
    }
    Ok((HyperTable::new(names.to_vec(), cells)?, warnings))
}

/// Left (`\`) and right (`/`) division tables over the same carrier as a base table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisionPair {
    pub left: HyperTable,
    pub right: HyperTable,
}

impl DivisionPair {
    pub fn new(base: &HyperTable, left: HyperTable, right: HyperTable) -> Result<Self> {
        for t in [&left, &right] {
            if t.order() != base.order() {
                return Err(Error::CarrierMismatch {
                    expected: base.order(),
                    found: t.order(),
                });
            }
            if t.names() != base.names() {
                return Err(Error::Parse {
                    location: "division".into(),
                    message: "division table names differ from the base table".into(),
                });
            }
        }
        Ok(DivisionPair { left, right })
    }
}

/// Canonical divisions `x\z = {y : z ∈ x·y}` and `z/y = {x : z ∈ x·y}`.
///
/// Fails when some row or column of `t` misses an element, since the
/// corresponding division cell would be empty.
pub fn derive_divisions(t: &HyperTable) -> Result<DivisionPair> {
    let n = t.order();
    let full = t.carrier();
    for x in 0..n {
        let missing = full - t.row_union(x);
        if !missing.is_empty() {
            return Err(Error::NotDivisible {
                element: x,
                line: Line::Row,
                missing,
            });
        }
        let missing = full - t.column_union(x);
        if !missing.is_empty() {
            return Err(Error::NotDivisible {
                element: x,
                line: Line::Column,
                missing,
            });
        }
    }
    let mut left = vec![ElementSet::EMPTY; n * n];
    let mut right = vec![ElementSet::EMPTY; n * n];
    for x in 0..n {
        for y in 0..n {
            for z in t.cell(x, y) {
                left[x * n + z].insert(y);
                right[z * n + y].insert(x);
            }
        }
    }
    Ok(DivisionPair {
        left: HyperTable::new(t.names().to_vec(), left)?,
        right: HyperTable::new(t.names().to_vec(), right)?,
    })
}
