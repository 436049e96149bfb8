//! Transport from `U̇` into `Ḣ` along `E_i ↦ u_i⁺`, `F_i ↦ u_i⁻`, `v ↦ √q`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{HdotElement, HdotError, Hdot};
use crate::coeffring::specialize;
use crate::fquot::Word;
use crate::hallalg::HallElement;
use crate::udot::UElement;

pub struct Transport {
    hdot: Arc<Hdot>,
    words: Mutex<HashMap<Word, HallElement>>,
}

impl Transport {
    pub fn new(hdot: Arc<Hdot>) -> Self {
        Self {
            hdot,
            words: Mutex::new(HashMap::new()),
        }
    }

    pub fn hdot(&self) -> &Arc<Hdot> {
        &self.hdot
    }

    /// `u_{w_1} ⋯ u_{w_k}` in `⟨M⟩`-coefficients.
    pub fn word(&self, w: &[u8]) -> Result<HallElement, HdotError> {
        if let Some(x) = self.words.lock().unwrap().get(w) {
            return Ok(x.clone());
        }
        let h = self.hdot.hall();
        let mut acc = h.unit();
        for &l in w {
            acc = h.mul(&acc, &h.simple(l as usize))?;
        }
        let out = h.to_angle_coeffs(&acc)?;
        self.words.lock().unwrap().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    pub fn element(&self, x: &UElement) -> Result<HdotElement, HdotError> {
        let mut out = HdotElement::zero();
        for (m, c) in x {
            let c = specialize(c, self.hdot.q())?;
            let t = self.hdot.from_parts(&self.word(&m.plus)?, &m.zeta, &self.word(&m.minus)?);
            out.add_scaled(&t, &c);
        }
        Ok(out)
    }
}
