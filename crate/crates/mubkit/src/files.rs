//! Interchange formats. The exact format stores exponent arrays at a
//! common root order so exactness survives serialization; the float
//! format stores 17-significant-digit decimal pairs for numeric tools
//! and can only be verified in float mode.

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mub::{Basis, MubFamily, PhaseVector};
use crate::verify::basis_to_complex;

pub const FORMAT_VERSION: u32 = 1;
pub const EXACT_KIND: &str = "mub-exponents";
pub const FLOAT_KIND: &str = "mub-float";

/// Exact family file: entries of basis b are zeta_m^e / sqrt(N), with e
/// from the exponent array. Round-trips bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyFile {
    pub version: u32,
    pub kind: String,
    pub dimension: usize,
    pub root_order: u64,
    /// Entries are zeta^e divided by sqrt of this (always = dimension).
    pub scale_denominator: usize,
    pub bases: Vec<BasisRepr>,
    pub provenance: String,
}

/// Either the token "standard" or an N x N exponent array.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum BasisRepr {
    Token(String),
    Exponents(Vec<Vec<u64>>),
}

impl FamilyFile {
    pub fn from_family(family: &MubFamily) -> FamilyFile {
        let mut m: u64 = 1;
        for b in &family.bases {
            if let Basis::Phase { root, .. } = b {
                m = m.lcm(root);
            }
        }
        let bases = family
            .bases
            .iter()
            .map(|b| match b {
                Basis::Standard { .. } => BasisRepr::Token("standard".into()),
                Basis::Phase { root, vectors, .. } => {
                    let s = m / root;
                    BasisRepr::Exponents(
                        vectors
                            .iter()
                            .map(|v| v.exps.iter().map(|&e| e * s % m).collect())
                            .collect(),
                    )
                }
            })
            .collect();
        FamilyFile {
            version: FORMAT_VERSION,
            kind: EXACT_KIND.into(),
            dimension: family.dim,
            root_order: m,
            scale_denominator: family.dim,
            bases,
            provenance: family.provenance.clone(),
        }
    }

    pub fn to_family(&self) -> Result<MubFamily> {
        self.validate()?;
        let bases = self
            .bases
            .iter()
            .map(|b| match b {
                BasisRepr::Token(_) => Basis::Standard { dim: self.dimension },
                BasisRepr::Exponents(rows) => Basis::Phase {
                    dim: self.dimension,
                    root: self.root_order,
                    vectors: rows
                        .iter()
                        .map(|r| PhaseVector { exps: r.clone() })
                        .collect(),
                },
            })
            .collect();
        Ok(MubFamily {
            dim: self.dimension,
            bases,
            provenance: self.provenance.clone(),
        })
    }

    fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {}", self.version)));
        }
        if self.kind != EXACT_KIND {
            return Err(Error::Format(format!("unexpected kind '{}'", self.kind)));
        }
        if self.dimension == 0 || self.root_order == 0 {
            return Err(Error::Format("dimension and root order must be positive".into()));
        }
        if self.scale_denominator != self.dimension {
            return Err(Error::Format(format!(
                "scale denominator {} does not match dimension {}",
                self.scale_denominator, self.dimension
            )));
        }
        let n = self.dimension;
        let mut standards = 0;
        for (i, b) in self.bases.iter().enumerate() {
            match b {
                BasisRepr::Token(t) if t == "standard" => standards += 1,
                BasisRepr::Token(t) => {
                    return Err(Error::Format(format!("basis {i}: unknown token '{t}'")));
                }
                BasisRepr::Exponents(rows) => {
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        return Err(Error::Format(format!(
                            "basis {i}: exponent array is not {n} x {n}"
                        )));
                    }
                    if rows.iter().flatten().any(|&e| e >= self.root_order) {
                        return Err(Error::Format(format!(
                            "basis {i}: exponent out of range [0, {})",
                            self.root_order
                        )));
                    }
                }
            }
        }
        if standards > 1 {
            return Err(Error::Format("more than one standard basis".into()));
        }
        Ok(())
    }
}

/// Float family file: complex entries as (re, im) decimal-text pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FloatFamilyFile {
    pub version: u32,
    pub kind: String,
    pub dimension: usize,
    /// bases[b][vector][component] = (re, im) as decimal strings.
    pub bases: Vec<Vec<Vec<(String, String)>>>,
    pub provenance: String,
}

impl FloatFamilyFile {
    pub fn from_family(family: &MubFamily) -> FloatFamilyFile {
        let fmt = |x: f64| format!("{x:.16e}");
        let bases = family
            .bases
            .iter()
            .map(|b| {
                basis_to_complex(b)
                    .into_iter()
                    .map(|v| v.into_iter().map(|z| (fmt(z.re), fmt(z.im))).collect())
                    .collect()
            })
            .collect();
        FloatFamilyFile {
            version: FORMAT_VERSION,
            kind: FLOAT_KIND.into(),
            dimension: family.dim,
            bases,
            provenance: family.provenance.clone(),
        }
    }

    pub fn to_vectors(&self) -> Result<Vec<Vec<Vec<Complex64>>>> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {}", self.version)));
        }
        if self.kind != FLOAT_KIND {
            return Err(Error::Format(format!("unexpected kind '{}'", self.kind)));
        }
        let n = self.dimension;
        let parse = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Format(format!("bad decimal '{s}'")))
        };
        let mut out = Vec::with_capacity(self.bases.len());
        for (i, basis) in self.bases.iter().enumerate() {
            if basis.len() != n || basis.iter().any(|v| v.len() != n) {
                return Err(Error::Format(format!("basis {i}: array is not {n} x {n}")));
            }
            let mut rows = Vec::with_capacity(n);
            for v in basis {
                let mut row = Vec::with_capacity(n);
                for (re, im) in v {
                    row.push(Complex64::new(parse(re)?, parse(im)?));
                }
                rows.push(row);
            }
            out.push(rows);
        }
        Ok(out)
    }
}

/// A parsed family file of either kind, dispatched on the "kind" field.
#[derive(Debug, Clone)]
pub enum AnyFamilyFile {
    Exact(FamilyFile),
    Float(FloatFamilyFile),
}

pub fn load_any(text: &str) -> Result<AnyFamilyFile> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("not valid JSON: {e}")))?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some(EXACT_KIND) => {
            let f: FamilyFile = serde_json::from_value(value)
                .map_err(|e| Error::Format(format!("malformed exact family file: {e}")))?;
            f.validate()?;
            Ok(AnyFamilyFile::Exact(f))
        }
        Some(FLOAT_KIND) => {
            let f: FloatFamilyFile = serde_json::from_value(value)
                .map_err(|e| Error::Format(format!("malformed float family file: {e}")))?;
            Ok(AnyFamilyFile::Float(f))
        }
        Some(other) => Err(Error::Format(format!("unknown kind '{other}'"))),
        None => Err(Error::Format("missing 'kind' field".into())),
    }
}

pub fn to_json(file: &impl Serialize) -> String {
    serde_json::to_string_pretty(file).expect("serializable")
}
