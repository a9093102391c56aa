use alloc::{
    collections::{BTreeMap, BTreeSet},
    format,
    string::{String, ToString},
};
use core::{fmt, str::FromStr};

use num_rational::BigRational;
use num_traits::Signed;

use crate::abelian::{FgAbelianGroup, GroupElement};
use crate::{Error, Result};

/// A declared hypothesis on a base manifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Aspherical,
    /// Every finite-index subgroup of π₁ has trivial center.
    ScfPi1,
    Hyperbolic,
    /// `D(N) = {0, 1}`.
    DSelfIs01,
    /// `D(N)` is finite.
    DSelfFinite,
    /// Every degree-one self-map fixes the named class.
    FixesClass(String),
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::Aspherical => f.write_str("aspherical"),
            Flag::ScfPi1 => f.write_str("scf_pi1"),
            Flag::Hyperbolic => f.write_str("hyperbolic"),
            Flag::DSelfIs01 => f.write_str("d_self_is_01"),
            Flag::DSelfFinite => f.write_str("d_self_finite"),
            Flag::FixesClass(label) => write!(f, "fixes_class:{label}"),
        }
    }
}

impl FromStr for Flag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "aspherical" => Flag::Aspherical,
            "scf_pi1" => Flag::ScfPi1,
            "hyperbolic" => Flag::Hyperbolic,
            "d_self_is_01" => Flag::DSelfIs01,
            "d_self_finite" => Flag::DSelfFinite,
            _ => match s.strip_prefix("fixes_class:") {
                Some(label) if !label.is_empty() => Flag::FixesClass(label.to_string()),
                _ => return Err(Error::InvalidInput(format!("unknown flag `{s}`"))),
            },
        })
    }
}

/// A closed oriented base manifold, described only by the data the degree
/// rules consume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseManifold {
    name: String,
    dim: u32,
    h2: FgAbelianGroup,
    classes: BTreeMap<String, GroupElement>,
    flags: BTreeSet<Flag>,
    simplicial_volume: Option<BigRational>,
}

impl BaseManifold {
    /// Validates the declaration and closes the flags under
    /// `hyperbolic ⇒ aspherical ∧ scf_pi1 ∧ d_self_finite` and
    /// `d_self_is_01 ⇒ d_self_finite`.
    pub fn new(
        name: impl Into<String>,
        dim: u32,
        h2: FgAbelianGroup,
        classes: BTreeMap<String, GroupElement>,
        flags: impl IntoIterator<Item = Flag>,
        simplicial_volume: Option<BigRational>,
    ) -> Result<Self> {
        let name = name.into();
        if dim < 2 {
            return Err(Error::InvalidInput(format!("base `{name}` has dimension {dim}, must be at least 2")));
        }
        for (label, class) in &classes {
            if class.group() != &h2 {
                return Err(Error::InvalidInput(format!("class `{label}` of base `{name}` is not in its H²")));
            }
        }
        if let Some(v) = &simplicial_volume {
            if v.is_negative() {
                return Err(Error::InvalidInput(format!("base `{name}` has negative simplicial volume")));
            }
        }
        let mut flags: BTreeSet<Flag> = flags.into_iter().collect();
        for flag in &flags {
            if let Flag::FixesClass(label) = flag {
                match classes.get(label) {
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "flag `{flag}` on base `{name}` names an undeclared class"
                        )))
                    }
                    Some(c) if c.is_torsion() => {
                        return Err(Error::InvalidInput(format!(
                            "flag `{flag}` on base `{name}` names a torsion class"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        if flags.contains(&Flag::Hyperbolic) {
            flags.extend([Flag::Aspherical, Flag::ScfPi1, Flag::DSelfFinite]);
        }
        if flags.contains(&Flag::DSelfIs01) {
            flags.insert(Flag::DSelfFinite);
        }
        Ok(Self { name, dim, h2, classes, flags, simplicial_volume })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn h2(&self) -> &FgAbelianGroup {
        &self.h2
    }

    pub fn classes(&self) -> &BTreeMap<String, GroupElement> {
        &self.classes
    }

    pub fn class(&self, label: &str) -> Result<&GroupElement> {
        self.classes
            .get(label)
            .ok_or_else(|| Error::InvalidInput(format!("base `{}` declares no class `{label}`", self.name)))
    }

    pub fn flags(&self) -> &BTreeSet<Flag> {
        &self.flags
    }

    pub fn has(&self, flag: &Flag) -> bool {
        self.flags.contains(flag)
    }

    pub fn simplicial_volume(&self) -> Option<&BigRational> {
        self.simplicial_volume.as_ref()
    }

    pub(crate) fn require(&self, flag: Flag) -> Result<()> {
        if self.has(&flag) {
            Ok(())
        } else {
            Err(Error::MissingHypothesis { base: self.name.clone(), flag: flag.to_string() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn z_with_b() -> (FgAbelianGroup, BTreeMap<String, GroupElement>) {
        let g = FgAbelianGroup::free(1);
        let mut classes = BTreeMap::new();
        classes.insert("b".to_string(), g.element(&[1], &[] as &[i64]).unwrap());
        (g, classes)
    }

    #[test]
    fn hyperbolic_closure() {
        let (g, classes) = z_with_b();
        let base = BaseManifold::new("n", 3, g, classes, [Flag::Hyperbolic], None).unwrap();
        assert!(base.has(&Flag::Aspherical) && base.has(&Flag::ScfPi1) && base.has(&Flag::DSelfFinite));
    }

    #[test]
    fn fixes_class_validation() {
        let (g, classes) = z_with_b();
        let missing = BaseManifold::new("n", 3, g.clone(), classes.clone(), [Flag::FixesClass("c".into())], None);
        assert!(missing.is_err());

        let t = FgAbelianGroup::new(1, alloc::vec![num_bigint::BigInt::from(2)]).unwrap();
        let mut tc = BTreeMap::new();
        tc.insert("t".to_string(), t.element(&[0], &[1]).unwrap());
        assert!(BaseManifold::new("n", 3, t, tc, [Flag::FixesClass("t".into())], None).is_err());
    }

    #[test]
    fn flag_strings_round_trip() {
        let flags = [
            Flag::Aspherical,
            Flag::ScfPi1,
            Flag::Hyperbolic,
            Flag::DSelfIs01,
            Flag::DSelfFinite,
            Flag::FixesClass("b".into()),
        ];
        let parsed: Vec<Flag> = flags.iter().map(|f| f.to_string().parse().unwrap()).collect();
        assert_eq!(parsed, flags);
        assert!("fixes_class:".parse::<Flag>().is_err());
        assert!("spherical".parse::<Flag>().is_err());
    }

    #[test]
    fn low_dimension_rejected() {
        let (g, classes) = z_with_b();
        assert!(BaseManifold::new("c", 1, g, classes, [], None).is_err());
    }
}
