use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Short inline symbol name, used for fresh symbols introduced by substitution
/// files (conjugate fields, constant parameters).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymbolName {
    len: u8,
    bytes: [u8; 15],
}

impl SymbolName {
    pub const MAX_LEN: usize = 15;

    pub fn new(name: &str) -> Result<Self, Error> {
        let valid = !name.is_empty()
            && name.len() <= Self::MAX_LEN
            && name.as_bytes()[0].is_ascii_alphabetic()
            && name.bytes().all(|c| c.is_ascii_alphanumeric() || c == b'_');
        if !valid {
            return Err(Error::InvalidArgument(format!(
                "invalid symbol name `{name}`"
            )));
        }
        let mut bytes = [0u8; 15];
        bytes[..name.len()].copy_from_slice(name.as_bytes());
        Ok(Self {
            len: name.len() as u8,
            bytes,
        })
    }

    pub fn as_str(&self) -> &str {
        // constructed from a validated ASCII &str
        std::str::from_utf8(&self.bytes[..self.len as usize]).unwrap()
    }
}

impl PartialOrd for SymbolName {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SymbolName {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str().cmp(other.as_str())
    }
}

impl fmt::Debug for SymbolName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

/// Kind of a differential generator.
///
/// `B` and `C` are the hierarchy fields. `Sym` is a fresh differentiable
/// symbol and `Param` a constant parameter (its derivative is zero); both only
/// appear after user substitutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    B,
    C,
    Sym(SymbolName),
    Param(SymbolName),
}

/// A generator `u_index` differentiated `dorder` times with respect to the
/// distinguished time.
///
/// Ordered by kind (`b < c`), then index, then derivative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVar {
    pub kind: FieldKind,
    pub index: u32,
    pub dorder: u32,
}

impl FieldVar {
    pub fn new(kind: FieldKind, index: u32, dorder: u32) -> Self {
        Self {
            kind,
            index,
            dorder,
        }
    }

    pub fn b(index: u32) -> Self {
        Self::new(FieldKind::B, index, 0)
    }

    pub fn c(index: u32) -> Self {
        Self::new(FieldKind::C, index, 0)
    }

    pub fn symbol(name: &str) -> Result<Self, Error> {
        Ok(Self::new(FieldKind::Sym(SymbolName::new(name)?), 0, 0))
    }

    pub fn param(name: &str) -> Result<Self, Error> {
        Ok(Self::new(FieldKind::Param(SymbolName::new(name)?), 0, 0))
    }

    /// The underived generator.
    pub fn base(self) -> Self {
        Self { dorder: 0, ..self }
    }

    pub fn with_dorder(self, dorder: u32) -> Self {
        Self { dorder, ..self }
    }

    /// `None` for constant parameters.
    pub fn derivative(self) -> Option<Self> {
        match self.kind {
            FieldKind::Param(_) => None,
            _ => Some(Self {
                dorder: self.dorder + 1,
                ..self
            }),
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self.kind, FieldKind::Param(_))
    }

    /// Ranking used by formal integration: derivative order first.
    pub(crate) fn rank_key(self) -> (u32, FieldKind, u32) {
        (self.dorder, self.kind, self.index)
    }
}

impl fmt::Display for FieldVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::B => write!(f, "b{}", self.index)?,
            FieldKind::C => write!(f, "c{}", self.index)?,
            FieldKind::Sym(name) | FieldKind::Param(name) => write!(f, "{}", name.as_str())?,
        }
        for _ in 0..self.dorder {
            f.write_str("'")?;
        }
        Ok(())
    }
}
