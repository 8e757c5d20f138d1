//! Core and winding materials.
//!
//! A [`CoreMaterial`] is a named relative permeability plus, for winding
//! metals, a resistivity. The built-in catalog carries the materials used in
//! the reference design tables (air, Fe, Ni, NdFeB, Cu and the generic
//! `mu30`/`mu40`/`mu50` entries). Handbook permeability defaults are
//! documentation, not ground truth, and can be overridden by registering a
//! replacement entry with the same name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum MaterialError {
    #[error("unknown material `{name}`; available: {}", available.join(", "))]
    NotFound { name: String, available: Vec<String> },
    #[error("material `{name}`: {field} must be positive and finite, got {value}")]
    InvalidProperty {
        name: String,
        field: &'static str,
        value: f64,
    },
    #[error("material name must not be empty")]
    EmptyName,
}

/// A named magnetic (or winding) material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreMaterial {
    name: String,
    mu_r: f64,
    resistivity: Option<f64>,
}

impl CoreMaterial {
    /// Builds a material, validating `mu_r > 0` and, when present,
    /// `resistivity > 0`.
    pub fn new(
        name: impl Into<String>,
        mu_r: f64,
        resistivity: Option<f64>,
    ) -> Result<Self, MaterialError> {
        let name = name.into();
        if name.is_empty() {
            return Err(MaterialError::EmptyName);
        }
        if mu_r <= 0.0 || !mu_r.is_finite() {
            return Err(MaterialError::InvalidProperty {
                name,
                field: "mu_r",
                value: mu_r,
            });
        }
        if let Some(rho) = resistivity {
            if rho <= 0.0 || !rho.is_finite() {
                return Err(MaterialError::InvalidProperty {
                    name,
                    field: "resistivity",
                    value: rho,
                });
            }
        }
        Ok(Self {
            name,
            mu_r,
            resistivity,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Relative permeability (dimensionless, > 0).
    pub fn mu_r(&self) -> f64 {
        self.mu_r
    }

    /// Resistivity in ohm-metres; `None` for entries that are not winding
    /// metals.
    pub fn resistivity(&self) -> Option<f64> {
        self.resistivity
    }
}

/// Catalog of materials with case-insensitive lookup.
#[derive(Debug, Clone)]
pub struct MaterialCatalog {
    // keyed by lowercased name so lookups are case-insensitive and listing
    // order is deterministic
    entries: BTreeMap<String, CoreMaterial>,
}

impl MaterialCatalog {
    /// The built-in set. Permeabilities for Fe/Ni/NdFeB are conventional
    /// handbook values; `mu30`/`mu40`/`mu50` match the generic cores of the
    /// reference coil table.
    pub fn builtin() -> Self {
        let mut catalog = Self {
            entries: BTreeMap::new(),
        };
        let builtins = [
            ("air", 1.0, None),
            ("Cu", 1.0, Some(1.68e-8)),
            ("Fe", 4000.0, Some(9.71e-8)),
            ("Ni", 600.0, Some(6.99e-8)),
            ("NdFeB", 1.05, Some(1.44e-6)),
            ("mu30", 30.0, None),
            ("mu40", 40.0, None),
            ("mu50", 50.0, None),
        ];
        for (name, mu_r, rho) in builtins {
            let mat = CoreMaterial::new(name, mu_r, rho).expect("builtin materials are valid");
            catalog.register(mat);
        }
        catalog
    }

    /// Adds or replaces an entry (matched case-insensitively by name).
    pub fn register(&mut self, material: CoreMaterial) {
        self.entries
            .insert(material.name.to_lowercase(), material);
    }

    /// Case-insensitive lookup.
    pub fn lookup(&self, name: &str) -> Result<&CoreMaterial, MaterialError> {
        self.entries
            .get(&name.to_lowercase())
            .ok_or_else(|| MaterialError::NotFound {
                name: name.to_string(),
                available: self.names(),
            })
    }

    /// Names of all entries, sorted.
    pub fn names(&self) -> Vec<String> {
        self.entries.values().map(|m| m.name.clone()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CoreMaterial> {
        self.entries.values()
    }
}

impl Default for MaterialCatalog {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Looks a material up in the built-in catalog.
pub fn lookup_material(name: &str) -> Result<CoreMaterial, MaterialError> {
    MaterialCatalog::builtin().lookup(name).cloned()
}
