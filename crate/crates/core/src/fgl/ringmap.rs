use std::sync::Arc;

use crate::algebra::{GradedPolynomial, Ring};
use crate::error::{Error, Result};

/// A ring homomorphism given by the images of the source generators.
///
/// Generators without an image may still be mapped as long as they never
/// occur in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<Option<GradedPolynomial>>,
}

impl RingMap {
    pub fn new(
        source: &Arc<Ring>,
        target: &Arc<Ring>,
        assignments: impl IntoIterator<Item = (String, GradedPolynomial)>,
    ) -> Result<Self> {
        let mut images = vec![None; source.len()];
        for (name, img) in assignments {
            let i = source.index_of(&name).ok_or(Error::UnknownVariable(name))?;
            if img.ring() != target {
                return Err(Error::RingMismatch { left: img.ring().to_string(), right: target.to_string() });
            }
            images[i] = Some(img);
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn image(&self, name: &str) -> Option<&GradedPolynomial> {
        self.source.index_of(name).and_then(|i| self.images[i].as_ref())
    }

    pub fn apply(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        if p.ring() != &self.source {
            return Err(Error::RingMismatch { left: p.ring().to_string(), right: self.source.to_string() });
        }
        for (m, _) in p.terms() {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 && self.images[i].is_none() {
                    return Err(Error::UnassignedVariable(self.source.var(i).name.clone()));
                }
            }
        }
        let images: Vec<GradedPolynomial> =
            self.images.iter().map(|img| img.clone().unwrap_or_else(|| GradedPolynomial::zero(&self.target))).collect();
        p.substitute(&self.target, &images)
    }

    /// `other ∘ self`: first this map, then `other`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap> {
        if other.source != self.target {
            return Err(Error::RingMismatch { left: self.target.to_string(), right: other.source.to_string() });
        }
        let images = self
            .images
            .iter()
            .map(|img| match img {
                Some(p) => match other.apply(p) {
                    Ok(q) => Ok(Some(q)),
                    Err(Error::UnassignedVariable(_)) => Ok(None),
                    Err(e) => Err(e),
                },
                None => Ok(None),
            })
            .collect::<Result<_>>()?;
        Ok(RingMap { source: self.source.clone(), target: other.target.clone(), images })
    }
}
