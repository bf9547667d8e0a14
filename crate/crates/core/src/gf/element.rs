use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldSpec, GfError};

/// An element tied to its field. Binary operators panic when the operands come
/// from different fields; the `checked_*` methods report it instead.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    value: u32,
}

impl<'f> FieldElement<'f> {
    pub fn new(field: &'f FieldSpec, value: u32) -> Result<Self, GfError> {
        if !field.contains(value) {
            return Err(GfError::OutOfRange {
                value,
                q: field.q(),
            });
        }
        Ok(FieldElement { field, value })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> &'f FieldSpec {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            })
        }
    }

    fn with(self, value: u32) -> Self {
        FieldElement {
            field: self.field,
            value,
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.add(self.value, rhs.value)))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, GfError> {
        self.same_field(rhs)?;
        Ok(self.with(self.field.mul(self.value, rhs.value)))
    }

    pub fn inv(self) -> Result<Self, GfError> {
        self.field
            .checked_inv(self.value)
            .map(|v| self.with(v))
            .ok_or(GfError::ZeroInverse)
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.q())
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'f> $trait for FieldElement<'f> {
            type Output = FieldElement<'f>;
            fn $method(self, rhs: Self) -> Self::Output {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<'f> Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self::Output {
        self.with(self.field.neg(self.value))
    }
}
