//! Operation signatures: named generators with an arity and a coarity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One named operation symbol with `arity` inputs and `coarity` outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub arity: u32,
    pub coarity: u32,
}

/// A finite set of generators with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Signature {
    generators: Vec<Generator>,
}

/// Names the parser reserves for structural atoms.
pub const RESERVED_NAMES: [&str; 3] = ["id", "tau", "tau_inv"];

impl Signature {
    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn new<I>(gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, u32, u32)>,
    {
        let mut sig = Signature::default();
        for (name, arity, coarity) in gens {
            sig.add(Generator {
                name,
                arity,
                coarity,
            })?;
        }
        Ok(sig)
    }

    pub fn add(&mut self, gen: Generator) -> Result<()> {
        if RESERVED_NAMES.contains(&gen.name.as_str()) {
            return Err(Error::Signature(format!(
                "`{}` is a reserved name",
                gen.name
            )));
        }
        if gen.name.is_empty()
            || !gen.name.chars().next().unwrap().is_ascii_alphabetic() && !gen.name.starts_with('_')
            || !gen
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Error::Signature(format!(
                "`{}` is not a valid identifier",
                gen.name
            )));
        }
        if self.lookup(&gen.name).is_some() {
            return Err(Error::Signature(format!(
                "duplicate generator `{}`",
                gen.name
            )));
        }
        self.generators.push(gen);
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn max_coarity(&self) -> u32 {
        self.generators.iter().map(|g| g.coarity).max().unwrap_or(0)
    }

    /// The dual signature: arities and coarities swapped, names starred.
    pub fn dual(&self) -> Signature {
        Signature {
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    name: dual_name(&g.name),
                    arity: g.coarity,
                    coarity: g.arity,
                })
                .collect(),
        }
    }
}

/// Starring is an involution: `mu` ↦ `mu_star` ↦ `mu`.
pub fn dual_name(name: &str) -> String {
    match name.strip_suffix("_star") {
        Some(base) => base.to_string(),
        None => format!("{name}_star"),
    }
}

/// The Hopf signature `{mu, u, Delta, eps, S}`.
pub fn hopf_signature() -> Signature {
    Signature::new([
        ("mu".into(), 2, 1),
        ("u".into(), 0, 1),
        ("Delta".into(), 1, 2),
        ("eps".into(), 1, 0),
        ("S".into(), 1, 1),
    ])
    .expect("static signature")
}
