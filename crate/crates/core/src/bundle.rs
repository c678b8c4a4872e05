use crate::error::{Error, Result};
use crate::set::CarrierIndex;
use crate::table::{DivisionPair, HyperTable};

/// A hyperoperation table together with the optional data that makes it a
/// polyquasigroup, polyloop or polygroup: divisions, identity and inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureBundle {
    pub name: String,
    pub table: HyperTable,
    pub divisions: Option<DivisionPair>,
    pub identity: Option<CarrierIndex>,
    pub inverse: Option<Vec<CarrierIndex>>,
    pub provenance: Option<String>,
}

impl StructureBundle {
    pub fn new(name: impl Into<String>, table: HyperTable) -> Self {
        StructureBundle {
            name: name.into(),
            table,
            divisions: None,
            identity: None,
            inverse: None,
            provenance: None,
        }
    }

    pub fn with_divisions(mut self, divisions: DivisionPair) -> Self {
        self.divisions = Some(divisions);
        self
    }

    pub fn with_identity(mut self, e: CarrierIndex) -> Self {
        self.identity = Some(e);
        self
    }

    pub fn with_inverse(mut self, inverse: Vec<CarrierIndex>) -> Self {
        self.inverse = Some(inverse);
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    /// Checks that every optional component agrees with the table's carrier.
    pub fn validate(&self) -> Result<()> {
        let t = &self.table;
        if let Some(d) = &self.divisions {
            DivisionPair::new(t, d.left.clone(), d.right.clone())?;
        }
        if let Some(e) = self.identity {
            t.check_index(e)?;
        }
        if let Some(inv) = &self.inverse {
            if inv.len() != t.order() {
                return Err(Error::CarrierMismatch {
                    expected: t.order(),
                    found: inv.len(),
                });
            }
            for &y in inv {
                t.check_index(y)?;
            }
        }
        Ok(())
    }
}
