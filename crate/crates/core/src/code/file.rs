//! JSON matrix file format:
//! `{"p", "m", "modulus"?, "params": {"n","k","delta"}, "kind", "coeffs"}` where
//! `coeffs[i]` holds the row-major coefficient of `z^i`.

use serde::{Deserialize, Serialize};

use crate::gf::FieldSpec;

use super::{CodeError, CodeParams, Generator, ParityCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    ParityCheck,
    Generator,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub params: CodeParams,
    pub kind: CodeKind,
    pub coeffs: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Code {
    Parity(ParityCheck),
    Generator(Generator),
}

impl Code {
    pub fn params(&self) -> CodeParams {
        match self {
            Code::Parity(h) => h.params(),
            Code::Generator(g) => g.params(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        match self {
            Code::Parity(h) => h.field(),
            Code::Generator(g) => g.field(),
        }
    }

    pub fn parse(json: &str) -> Result<Code, CodeError> {
        let file: CodeFile = serde_json::from_str(json).map_err(|e| CodeError::File(e.to_string()))?;
        file.into_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CodeFile::from_code(self)).expect("code files always serialize")
    }
}

impl CodeFile {
    pub fn into_code(self) -> Result<Code, CodeError> {
        let field = match &self.modulus {
            Some(modulus) => FieldSpec::with_modulus(self.p, self.m, modulus.clone())?,
            None => FieldSpec::new(self.p, self.m)?,
        };
        if self.coeffs.is_empty() {
            return Err(CodeError::File("no coefficient matrices".into()));
        }
        Ok(match self.kind {
            CodeKind::ParityCheck => Code::Parity(ParityCheck::from_nested(&field, self.params, &self.coeffs)?),
            CodeKind::Generator => Code::Generator(Generator::from_nested(&field, self.params, &self.coeffs)?),
        })
    }

    pub fn from_code(code: &Code) -> CodeFile {
        let field = code.field();
        let (kind, coeffs) = match code {
            Code::Parity(h) => (CodeKind::ParityCheck, h.to_nested()),
            Code::Generator(g) => (CodeKind::Generator, g.to_nested()),
        };
        CodeFile {
            p: field.p(),
            m: field.m(),
            modulus: (field.m() > 1).then(|| field.modulus().to_vec()),
            params: code.params(),
            kind,
            coeffs,
        }
    }
}
