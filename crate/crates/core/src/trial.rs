use serde::{Deserialize, Serialize};

/// One evaluation of `f` and `f'`.
///
/// `birth` is the 1-based iteration that produced the point; the position in
/// the sorted trial list is a separate, iteration-dependent numbering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub x: f64,
    pub z: f64,
    pub dz: f64,
    pub birth: usize,
}

impl Trial {
    pub fn new(x: f64, z: f64, dz: f64, birth: usize) -> Self {
        Self { x, z, dz, birth }
    }
}
