//! A zeta oracle that can be shared between verification workers.

use std::collections::HashMap;
use std::sync::RwLock;

use azbk_core::mzv::{digits_to_bits, polylog_half, zeta_by_split, Real, ZetaOracle};
use azbk_core::{Result, Word};

/// Split-at-`1/2` evaluation with memo tables behind read-write locks. The
/// two factors of each product are both polylogarithms at `1/2`, so a single
/// table serves both sides.
#[derive(Debug)]
pub struct SharedMzv {
    bits: u32,
    pi: Real,
    li: RwLock<HashMap<Word, Real>>,
    zeta: RwLock<HashMap<Word, Real>>,
}

impl SharedMzv {
    pub fn with_digits(digits: u32) -> Self {
        let bits = digits_to_bits(digits);
        SharedMzv {
            bits,
            pi: Real::pi(bits),
            li: RwLock::new(HashMap::new()),
            zeta: RwLock::new(HashMap::new()),
        }
    }

    fn li(&self, w: &Word) -> Result<Real> {
        if let Some(x) = self.li.read().expect("poisoned").get(w) {
            return Ok(x.clone());
        }
        let x = polylog_half(w, self.bits)?;
        self.li.write().expect("poisoned").insert(w.clone(), x.clone());
        Ok(x)
    }
}

impl ZetaOracle for SharedMzv {
    fn bits(&self) -> u32 {
        self.bits
    }

    fn zeta(&self, w: &Word) -> Result<Real> {
        if let Some(x) = self.zeta.read().expect("poisoned").get(w) {
            return Ok(x.clone());
        }
        let x = zeta_by_split(w, &mut |u| self.li(u), &mut |u| self.li(u))?;
        self.zeta.write().expect("poisoned").insert(w.clone(), x.clone());
        Ok(x)
    }

    fn pi(&self) -> Real {
        self.pi.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use azbk_core::mzv::MzvEngine;

    #[test]
    fn agrees_with_the_core_engine() {
        let shared = SharedMzv::with_digits(30);
        let engine = MzvEngine::with_digits(30);
        for s in ["X0.X1", "X0.X0.X1", "X0.X1.X1", "X0.X1.X0.X1"] {
            let w: Word = s.parse().unwrap();
            assert_eq!(shared.zeta(&w).unwrap(), engine.zeta(&w).unwrap());
        }
    }
}
