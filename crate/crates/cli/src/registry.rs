//! Named base manifolds: the built-in presets plus an optional registry file.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use s1deg_core::bundles::{presets, BaseManifold};

use crate::error::{CliError, CliResult, FieldError};
use crate::json::{self, Bases};

/// Environment variable naming a registry file.
pub const REGISTRY_ENV: &str = "S1DEG_PRESETS";

#[derive(Debug, Clone)]
pub struct Registry {
    bases: Bases,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn builtin() -> Self {
        let bases = presets::builtin().into_iter().map(|b| (b.name().to_string(), Arc::new(b))).collect();
        Self { bases }
    }

    /// Built-ins, then the file named by `path` or by [`REGISTRY_ENV`].
    /// File entries replace built-ins of the same name.
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let mut reg = Self::builtin();
        let env = std::env::var_os(REGISTRY_ENV);
        let path = path.or(env.as_deref().map(Path::new));
        if let Some(p) = path {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Io { path: p.display().to_string(), message: e.to_string() })?;
            reg.extend_from_json(&json::parse(&text)?)?;
        }
        Ok(reg)
    }

    pub fn extend_from_json(&mut self, v: &Value) -> Result<(), FieldError> {
        if let Some(version) = json::opt_field(v, "", "schemaVersion")? {
            let n = json::decode_usize(version, "/schemaVersion")?;
            if n as u64 != json::SCHEMA_VERSION {
                return Err(FieldError::new("/schemaVersion", format!("unsupported schema version {n}")));
            }
        }
        for (i, b) in json::array(json::field(v, "", "bases")?, "/bases")?.iter().enumerate() {
            let base = json::decode_base_manifold(b, &format!("/bases/{i}"))?;
            self.bases.insert(base.name().to_string(), Arc::new(base));
        }
        Ok(())
    }

    /// Resolves a name or a built-in alias.
    pub fn get(&self, name: &str) -> Option<Arc<BaseManifold>> {
        if let Some(b) = self.bases.get(name) {
            return Some(b.clone());
        }
        let canonical = presets::ALIASES.iter().find(|(a, _)| *a == name)?.1;
        self.bases.get(canonical).cloned()
    }

    pub fn require(&self, name: &str) -> CliResult<Arc<BaseManifold>> {
        self.get(name).ok_or_else(|| CliError::Usage(format!("unknown preset `{name}`")))
    }

    /// All bases, including alias names, for resolving manifold expressions.
    pub fn bases(&self) -> Bases {
        let mut out = self.bases.clone();
        for (alias, target) in presets::ALIASES {
            if let Some(b) = self.bases.get(*target) {
                out.entry((*alias).to_string()).or_insert_with(|| b.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schemaVersion": json::SCHEMA_VERSION,
            "bases": self.bases.values().map(|b| json::base_manifold(b)).collect::<Vec<_>>(),
        })
    }
}
