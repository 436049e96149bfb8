//! Quiver and Cartan configuration files plus the built-in presets.
//!
//! Vertices are numbered from 1 in config files and on the command line.

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, CartanError};
use crate::quiverrep::{is_prime, Arrow, QuiverError, ValuedQuiver};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("config has neither a quiver nor a Cartan matrix")]
    NoCartan,
    #[error("config has no quiver; this command needs representations")]
    NoQuiver,
    #[error("vertex {0} is out of range")]
    Vertex(usize),
    #[error("{0} is not a prime")]
    Field(u64),
    #[error("the Cartan matrix does not match the quiver")]
    Mismatch,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    /// `[src, dst, d_{src,dst}]`, 1-based.
    pub arrows: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteToggles {
    #[serde(default)]
    pub enable_g2_braid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub name: String,
    #[serde(default)]
    pub quiver: Option<QuiverSpec>,
    /// Needed only when there is no quiver; otherwise derived from it.
    #[serde(default)]
    pub cartan: Option<Vec<Vec<i64>>>,
    pub eps: Vec<i64>,
    #[serde(default = "default_fields")]
    pub fields: Vec<u64>,
    /// Total dimension cap per field; a missing entry means 6 over `F_2`, 4 otherwise.
    #[serde(default)]
    pub caps: Vec<(u64, usize)>,
    /// Bound on `|ζ(h_i)|` for weight sweeps.
    #[serde(default = "default_weight_cap")]
    pub weight_cap: i64,
    /// Total weight cap for `f` and `U̇`.
    #[serde(default = "default_f_cap")]
    pub f_cap: usize,
    #[serde(default)]
    pub suite: SuiteToggles,
}

fn default_fields() -> Vec<u64> {
    vec![2]
}

fn default_weight_cap() -> i64 {
    2
}

fn default_f_cap() -> usize {
    10
}

pub const PRESETS: [&str; 6] = ["A2", "A2-rev", "A3", "A1xA1", "B2", "G2"];

fn quiver(vertices: usize, arrows: &[[i64; 3]]) -> Option<QuiverSpec> {
    Some(QuiverSpec {
        vertices,
        arrows: arrows.to_vec(),
    })
}

impl Config {
    pub fn preset(name: &str) -> Result<Self, ConfigError> {
        let (q, cartan, eps) = match name {
            "A2" => (quiver(2, &[[1, 2, 1]]), None, vec![1, 1]),
            "A2-rev" => (quiver(2, &[[2, 1, 1]]), None, vec![1, 1]),
            "A3" => (quiver(3, &[[1, 2, 1], [2, 3, 1]]), None, vec![1, 1, 1]),
            "A1xA1" => (None, Some(vec![vec![2, 0], vec![0, 2]]), vec![1, 1]),
            "B2" => (quiver(2, &[[1, 2, 1]]), None, vec![1, 2]),
            "G2" => (quiver(2, &[[1, 2, 1]]), None, vec![1, 3]),
            _ => return Err(ConfigError::UnknownPreset(name.into())),
        };
        Ok(Self {
            name: name.into(),
            quiver: q,
            cartan,
            eps,
            fields: default_fields(),
            caps: Vec::new(),
            weight_cap: default_weight_cap(),
            f_cap: default_f_cap(),
            suite: SuiteToggles::default(),
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let c: Config = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let c = self.cartan_datum()?;
        if let Some(q) = &self.quiver {
            let from_quiver = self.valued_quiver()?.cartan()?;
            if q.vertices != c.n() || from_quiver.matrix() != c.matrix() {
                return Err(ConfigError::Mismatch);
            }
        }
        if let Some(&p) = self.fields.iter().find(|&&p| !is_prime(p)) {
            return Err(ConfigError::Field(p));
        }
        Ok(())
    }

    pub fn valued_quiver(&self) -> Result<ValuedQuiver, ConfigError> {
        let q = self.quiver.as_ref().ok_or(ConfigError::NoQuiver)?;
        let vertex = |x: i64| -> Result<usize, ConfigError> {
            if x < 1 || x as usize > q.vertices {
                return Err(ConfigError::Vertex(x.max(0) as usize));
            }
            Ok(x as usize - 1)
        };
        let arrows = q
            .arrows
            .iter()
            .map(|&[s, d, v]| Ok(Arrow { src: vertex(s)?, dst: vertex(d)?, value: v }))
            .collect::<Result<Vec<_>, ConfigError>>()?;
        Ok(ValuedQuiver::new(q.vertices, arrows, self.eps.clone())?)
    }

    pub fn cartan_datum(&self) -> Result<CartanDatum, ConfigError> {
        match (&self.cartan, &self.quiver) {
            (Some(a), _) => Ok(CartanDatum::new(a.clone(), self.eps.clone(), None)?),
            (None, Some(_)) => Ok(self.valued_quiver()?.cartan()?),
            (None, None) => Err(ConfigError::NoCartan),
        }
    }

    pub fn cap_for(&self, q: u64) -> usize {
        self.caps
            .iter()
            .find(|(p, _)| *p == q)
            .map(|(_, c)| *c)
            .unwrap_or(if q == 2 { 6 } else { 4 })
    }

    /// The field to use: the override if given, else the first listed.
    pub fn field(&self, over: Option<u64>) -> Result<u64, ConfigError> {
        let q = over.unwrap_or(self.fields[0]);
        if !is_prime(q) {
            return Err(ConfigError::Field(q));
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in PRESETS {
            let c = Config::preset(name).unwrap();
            c.validate().unwrap();
            let want = CartanDatum::preset(name.trim_end_matches("-rev")).unwrap();
            assert_eq!(c.cartan_datum().unwrap().matrix(), want.matrix(), "{name}");
        }
    }

    #[test]
    fn round_trip_and_rejects() {
        let c = Config::preset("A3").unwrap();
        let back: Config = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        let mut bad = Config::preset("A2").unwrap();
        bad.cartan = Some(vec![vec![2, -2], vec![-1, 2]]);
        assert!(matches!(bad.validate(), Err(ConfigError::Mismatch | ConfigError::Cartan(_))));
        let mut bad = Config::preset("A2").unwrap();
        bad.fields = vec![4];
        assert!(matches!(bad.validate(), Err(ConfigError::Field(4))));
        assert!(Config::preset("E8").is_err());
    }
}
