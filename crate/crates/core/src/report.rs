//! Check reports: named pass/fail items with basis-level witnesses.
//!
//! Axiom checkers return a [`CheckReport`] rather than a bare boolean so the
//! CLI can say *which* diagram broke and at which basis vector.

use crate::linmap::LinMap;
use std::fmt;

/// Location and values of the first disagreement between two maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    /// Multi-index of the offending domain basis vector.
    pub domain_index: Vec<usize>,
    /// Multi-index of the offending codomain basis vector.
    pub codomain_index: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at basis {:?} -> {:?}: lhs={} rhs={}",
            self.domain_index, self.codomain_index, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport::default()
    }

    pub fn items(&self) -> &[CheckItem] {
        &self.items
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.pass)
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn push_flag(&mut self, name: &str, pass: bool, note: Option<String>) {
        self.items.push(CheckItem {
            name: name.to_string(),
            pass,
            witness: None,
            note,
        });
    }

    /// Records equality of two maps under `name`, with a witness on failure.
    pub fn push_eq(&mut self, name: &str, lhs: &LinMap, rhs: &LinMap) {
        debug_assert_eq!(lhs.domain().dim(), rhs.domain().dim(), "{name}");
        debug_assert_eq!(lhs.codomain().dim(), rhs.codomain().dim(), "{name}");
        let diff = lhs.matrix().first_difference(rhs.matrix());
        let item = match diff {
            None => CheckItem {
                name: name.to_string(),
                pass: true,
                witness: None,
                note: None,
            },
            Some((row, col, a, b)) => CheckItem {
                name: name.to_string(),
                pass: false,
                witness: Some(Witness {
                    row,
                    col,
                    domain_index: lhs.domain().decode(col),
                    codomain_index: lhs.codomain().decode(row),
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                }),
                note: None,
            },
        };
        self.items.push(item);
    }

    /// Appends every item of `other`, prefixing names with `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut item in other.items {
            item.name = format!("{prefix}.{}", item.name);
            self.items.push(item);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            let status = if item.pass { "ok" } else { "FAIL" };
            write!(f, "{status:4} {}", item.name)?;
            if let Some(w) = &item.witness {
                write!(f, " [{w}]")?;
            }
            if let Some(n) = &item.note {
                write!(f, " ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
