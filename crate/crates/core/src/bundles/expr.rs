use alloc::{boxed::Box, format, string::String, sync::Arc, vec::Vec};

use super::BaseManifold;
use crate::abelian::GroupElement;
use crate::{Error, Result};

/// A symbolic closed oriented manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    /// Oriented circle bundle over `base` with Euler class `euler ∈ H²(base)`.
    CircleBundle {
        base: Arc<BaseManifold>,
        euler: GroupElement,
    },
    /// `S^{dim−1} × S¹`.
    SphereProduct {
        dim: u32,
    },
    ConnectedSum(Vec<ManifoldExpr>),
    /// `#^count summand` where the count is a named symbol with no known value.
    Repeated {
        summand: Box<ManifoldExpr>,
        count: String,
    },
    /// A manifold of dimension `dim(inner) + shift` with the same mapping
    /// degree sets as `inner`.
    Stabilized {
        inner: Box<ManifoldExpr>,
        shift: u32,
    },
}

impl ManifoldExpr {
    pub fn circle_bundle(base: Arc<BaseManifold>, euler: GroupElement) -> Result<Self> {
        if euler.group() != base.h2() {
            return Err(Error::InvalidInput(format!("Euler class does not lie in H² of base `{}`", base.name())));
        }
        Ok(Self::CircleBundle { base, euler })
    }

    pub fn sphere_product(dim: u32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidInput(format!("S^{{n-1}} x S^1 needs n >= 2, got {dim}")));
        }
        Ok(Self::SphereProduct { dim })
    }

    /// Connected sum; a single summand is returned unchanged.
    pub fn connected_sum(mut summands: Vec<ManifoldExpr>) -> Result<Self> {
        let Some(first) = summands.first() else {
            return Err(Error::InvalidInput("connected sum needs at least one summand".into()));
        };
        let dim = first.dim();
        if let Some(bad) = summands.iter().position(|s| s.dim() != dim) {
            return Err(Error::InvalidInput(format!(
                "connected-sum summand {bad} has dimension {}, expected {dim}",
                summands[bad].dim()
            )));
        }
        if summands.len() == 1 {
            return Ok(summands.remove(0));
        }
        Ok(Self::ConnectedSum(summands))
    }

    pub fn repeated(summand: ManifoldExpr, count: impl Into<String>) -> Self {
        Self::Repeated { summand: Box::new(summand), count: count.into() }
    }

    pub fn stabilized(inner: ManifoldExpr, shift: u32) -> Self {
        Self::Stabilized { inner: Box::new(inner), shift }
    }

    pub fn dim(&self) -> u32 {
        match self {
            Self::CircleBundle { base, .. } => base.dim() + 1,
            Self::SphereProduct { dim } => *dim,
            Self::ConnectedSum(parts) => parts.first().map_or(0, Self::dim),
            Self::Repeated { summand, .. } => summand.dim(),
            Self::Stabilized { inner, shift } => inner.dim() + shift,
        }
    }

    /// Summands of a connected sum, or the expression itself.
    pub fn summands(&self) -> &[ManifoldExpr] {
        match self {
            Self::ConnectedSum(parts) => parts,
            other => core::slice::from_ref(other),
        }
    }

    pub fn as_bundle(&self) -> Option<(&Arc<BaseManifold>, &GroupElement)> {
        match self {
            Self::CircleBundle { base, euler } => Some((base, euler)),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::presets;
    use alloc::vec;
    use num_bigint::BigInt;

    #[test]
    fn dimensions() {
        let base = Arc::new(presets::knot_gluing_3());
        let b = base.class("b").unwrap().clone();
        let e = ManifoldExpr::circle_bundle(base.clone(), b.scale(&BigInt::from(3))).unwrap();
        assert_eq!(e.dim(), 4);
        let s = ManifoldExpr::sphere_product(4).unwrap();
        let sum = ManifoldExpr::connected_sum(vec![e.clone(), ManifoldExpr::repeated(s, "l")]).unwrap();
        assert_eq!(sum.dim(), 4);
        assert_eq!(ManifoldExpr::stabilized(sum, 3).dim(), 7);
        assert_eq!(ManifoldExpr::connected_sum(vec![e.clone()]).unwrap(), e);
    }

    #[test]
    fn rejects_mixed_dimensions_and_foreign_classes() {
        let base = Arc::new(presets::knot_gluing_3());
        let b = base.class("b").unwrap().clone();
        let e = ManifoldExpr::circle_bundle(base, b).unwrap();
        assert!(ManifoldExpr::connected_sum(vec![e, ManifoldExpr::sphere_product(5).unwrap()]).is_err());
        assert!(ManifoldExpr::connected_sum(vec![]).is_err());

        let surface = Arc::new(presets::hyperbolic_surface());
        let foreign = crate::abelian::FgAbelianGroup::free(2).zero();
        assert!(ManifoldExpr::circle_bundle(surface, foreign).is_err());
    }
}
