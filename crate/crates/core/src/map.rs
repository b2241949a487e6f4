use std::collections::BTreeMap;

use crate::error::PresentationError;
use crate::presentation::Presentation;
use crate::word::{Generator, Word};

/// A homomorphism between presented groups, given by the image of every
/// source generator. Images are stored freely reduced.
///
/// Nothing here checks that relators go to the identity; see
/// [`crate::linalg::verify_map_abelianized`] for the abelianized check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
}

impl GroupMap {
    /// `images` must assign exactly one target word to each source generator.
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: BTreeMap<Generator, Word>,
    ) -> Result<Self, PresentationError> {
        for g in images.keys() {
            if !source.contains(g) {
                return Err(PresentationError::UnknownImage(g.to_string()));
            }
        }
        let mut ordered = Vec::with_capacity(source.generator_count());
        for g in source.generators() {
            let w = images
                .get(g)
                .ok_or_else(|| PresentationError::MissingImage(g.to_string()))?;
            target.check_word(w)?;
            ordered.push(w.free_reduce());
        }
        Ok(GroupMap {
            source,
            target,
            images: ordered,
        })
    }

    /// Images listed in source-generator order.
    pub fn from_images(
        source: Presentation,
        target: Presentation,
        images: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        if images.len() != source.generator_count() {
            let missing = source
                .generators()
                .get(images.len())
                .map(|g| g.to_string())
                .unwrap_or_default();
            return Err(PresentationError::MissingImage(missing));
        }
        let map = source.generators().iter().cloned().zip(images).collect();
        GroupMap::new(source, target, map)
    }

    pub fn identity(p: &Presentation) -> Self {
        GroupMap {
            source: p.clone(),
            target: p.clone(),
            images: p.generators().iter().map(Word::generator).collect(),
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image_of(&self, g: &Generator) -> Option<&Word> {
        self.source.index_of(g).map(|i| &self.images[i])
    }

    /// Substitutes images into `w` and freely reduces.
    pub fn apply(&self, w: &Word) -> Result<Word, PresentationError> {
        self.source.check_word(w)?;
        Ok(w.substitute(|g| {
            self.image_of(g)
                .cloned()
                .expect("word was checked against the source")
        }))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupMap) -> Result<GroupMap, PresentationError> {
        let images = self
            .images
            .iter()
            .map(|w| other.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        GroupMap::from_images(self.source.clone(), other.target.clone(), images)
    }
}
