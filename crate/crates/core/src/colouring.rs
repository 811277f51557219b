//! Total or partial vertex colourings.

use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::Vertex;

/// Colours are arbitrary naturals.
pub type Colour = u64;

/// A map `vertex → colour` that may leave vertices uncoloured.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    colour: Vec<Option<Colour>>,
}

impl Colouring {
    pub fn uncoloured(n: usize) -> Self {
        Colouring {
            colour: vec![None; n],
        }
    }

    pub fn from_total(colours: Vec<Colour>) -> Self {
        Colouring {
            colour: colours.into_iter().map(Some).collect(),
        }
    }

    pub fn from_partial(colours: Vec<Option<Colour>>) -> Self {
        Colouring { colour: colours }
    }

    pub fn len(&self) -> usize {
        self.colour.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colour.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Colour> {
        self.colour[v]
    }

    pub fn set(&mut self, v: Vertex, colour: Colour) {
        self.colour[v] = Some(colour);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.colour[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colour.iter().all(Option::is_some)
    }

    /// First uncoloured vertex, if any.
    pub fn first_uncoloured(&self) -> Option<Vertex> {
        self.colour.iter().position(Option::is_none)
    }

    pub fn as_slice(&self) -> &[Option<Colour>] {
        &self.colour
    }

    /// Coloured vertices with their colours, in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Colour)> + '_ {
        self.colour
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }
}
