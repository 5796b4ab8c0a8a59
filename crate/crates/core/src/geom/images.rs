//! Modular images of a whole point set, shared by the predicates and the
//! similar-copy counter.

use alloc::vec::Vec;

use crate::exactnum::modular::{with_hasher, ModKey, ModularHasher};
use crate::exactnum::CycloNum;

pub(crate) struct SetImages {
    pub hasher: &'static ModularHasher,
    pub keys: Vec<ModKey>,
    pub conj_keys: Vec<ModKey>,
}

impl SetImages {
    /// Images of `points` under the first prime pair that can represent all
    /// of them, plus whatever else `extra` needs to succeed with the same pair.
    pub fn compute<T>(
        order: u32,
        points: &[CycloNum],
        mut extra: impl FnMut(&SetImages) -> Option<T>,
    ) -> (SetImages, T) {
        with_hasher(order, |hasher| {
            let keys = points.iter().map(|p| hasher.key(p)).collect::<Option<Vec<_>>>()?;
            let conj_keys = points.iter().map(|p| hasher.conj_key(p)).collect::<Option<Vec<_>>>()?;
            let images = SetImages { hasher, keys, conj_keys };
            let t = extra(&images)?;
            Some((images, t))
        })
    }

    /// Key of the direction class of `p_j - p_i`: `d / conj(d)` is unchanged by
    /// real scaling of `d`, including `d ↦ -d`.
    #[inline]
    pub fn direction(&self, i: usize, j: usize) -> Option<ModKey> {
        let h = self.hasher;
        let d = h.sub(self.keys[j], self.keys[i]);
        let dc = h.sub(self.conj_keys[j], self.conj_keys[i]);
        h.div(d, dc)
    }
}
