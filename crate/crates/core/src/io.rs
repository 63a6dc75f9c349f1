//! JSON file format for morphisms of persistence modules.
//!
//! Matrices are nested row arrays of integers, reduced mod p on read. Their
//! shapes follow from the dimension lists, so a `0 x k` matrix is `[]` and a
//! `k x 0` matrix is `k` empty rows.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::FieldMatrix;
use crate::persmod::{Morphism, PersistenceModule};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleData {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderFile {
    pub version: u32,
    pub prime: u32,
    pub n: usize,
    pub source: ModuleData,
    pub target: ModuleData,
    pub morphism: Vec<Vec<Vec<i64>>>,
}

fn rows_of(m: &FieldMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| x as i64).collect())
        .collect()
}

fn matrix(field: PrimeField, rows: usize, cols: usize, data: &[Vec<i64>], what: &str) -> Result<FieldMatrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Malformed(format!("{what} should be {rows}x{cols}")));
    }
    let flat: Vec<i64> = data.iter().flatten().copied().collect();
    FieldMatrix::from_i64(field, rows, cols, &flat)
}

fn module_data(m: &PersistenceModule) -> ModuleData {
    ModuleData {
        dims: m.dims().to_vec(),
        maps: m.maps().iter().map(rows_of).collect(),
    }
}

fn build_module(field: PrimeField, n: usize, d: &ModuleData, side: &str) -> Result<PersistenceModule> {
    if d.dims.len() != n {
        return Err(Error::Malformed(format!("{side}: {} dims for n = {n}", d.dims.len())));
    }
    if d.maps.len() != n.saturating_sub(1) {
        return Err(Error::Malformed(format!("{side}: {} maps for n = {n}", d.maps.len())));
    }
    let maps = d
        .maps
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(field, d.dims[k + 1], d.dims[k], m, &format!("{side} map {}", k + 1)))
        .collect::<Result<Vec<_>>>()?;
    PersistenceModule::new(field, d.dims.clone(), maps)
}

impl LadderFile {
    pub fn from_morphism(f: &Morphism) -> Self {
        LadderFile {
            version: FORMAT_VERSION,
            prime: f.field().prime(),
            n: f.n(),
            source: module_data(f.source()),
            target: module_data(f.target()),
            morphism: f.comps().iter().map(rows_of).collect(),
        }
    }

    /// Checks the header, shapes and naturality.
    pub fn to_morphism(&self) -> Result<Morphism> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Malformed(format!("unsupported version {}", self.version)));
        }
        let field = PrimeField::new(self.prime)?;
        let v = build_module(field, self.n, &self.source, "source")?;
        let u = build_module(field, self.n, &self.target, "target")?;
        if self.morphism.len() != self.n {
            return Err(Error::Malformed(format!(
                "{} morphism components for n = {}",
                self.morphism.len(),
                self.n
            )));
        }
        let comps = self
            .morphism
            .iter()
            .enumerate()
            .map(|(k, m)| matrix(field, u.dims()[k], v.dims()[k], m, &format!("component {}", k + 1)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(v, u, comps)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladders::{enumerate_catalog, random_ladder};

    #[test]
    fn round_trips() {
        for (_, f) in enumerate_catalog(PrimeField::GF2) {
            let file = LadderFile::from_morphism(&f);
            let back = LadderFile::from_json(&file.to_json()).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.to_morphism().unwrap(), f);
        }
        let f = random_ladder(5, 3, PrimeField::new(5).unwrap(), 3);
        let file = LadderFile::from_morphism(&f);
        assert_eq!(LadderFile::from_json(&file.to_json()).unwrap().to_morphism().unwrap(), f);
    }

    #[test]
    fn reduces_entries_mod_p() {
        let text = r#"{"version":1,"prime":3,"n":1,
            "source":{"dims":[1],"maps":[]},
            "target":{"dims":[1],"maps":[]},
            "morphism":[[[-1]]]}"#;
        let f = LadderFile::from_json(text).unwrap().to_morphism().unwrap();
        assert_eq!(f.comp(1).get(0, 0), 2);
    }

    #[test]
    fn rejects_bad_shapes_and_naturality() {
        let text = r#"{"version":1,"prime":2,"n":2,
            "source":{"dims":[1,1],"maps":[[[1]]]},
            "target":{"dims":[1,1],"maps":[[[0]]]},
            "morphism":[[[1]],[[1]]]}"#;
        let file = LadderFile::from_json(text).unwrap();
        assert_eq!(file.to_morphism(), Err(Error::Naturality { t: 1 }));

        let text = r#"{"version":1,"prime":2,"n":1,
            "source":{"dims":[2],"maps":[]},
            "target":{"dims":[1],"maps":[]},
            "morphism":[[[1]]]}"#;
        let file = LadderFile::from_json(text).unwrap();
        assert!(matches!(file.to_morphism(), Err(Error::Malformed(_))));
        assert!(LadderFile::from_json("{\"version\":").is_err());
    }
}
