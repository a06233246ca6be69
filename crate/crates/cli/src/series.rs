//! JSON form of a truncated t-expansion: a fixed header followed by the
//! ordered list of non-zero coefficients in the canonical text
//! serialization of the coefficient ring, so files diff cleanly and
//! round-trip exactly.

use drinfeld_core::field::Gf;
use drinfeld_core::graded::GradedElem;
use drinfeld_core::texp::TExp;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub q: u32,
    pub r: u32,
    pub form: String,
    pub weight: i64,
    #[serde(rename = "type")]
    pub typ: i64,
    pub order: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesJson {
    pub header: Header,
    pub coefficients: Vec<(i64, String)>,
}

impl SeriesJson {
    pub fn from_texp(q: u32, r: u32, form: &str, f: &TExp) -> SeriesJson {
        SeriesJson {
            header: Header {
                q,
                r,
                form: form.to_string(),
                weight: f.weight(),
                typ: f.typ(),
                order: f.n_max(),
            },
            coefficients: f.coeffs().map(|(n, c)| (n, c.to_string())).collect(),
        }
    }

    pub fn to_texp(&self, field: &Gf) -> Result<TExp, String> {
        if self.header.r < 2 {
            return Err("rank below 2".into());
        }
        let s = self.header.r - 1;
        let mut pairs = Vec::with_capacity(self.coefficients.len());
        for (n, text) in &self.coefficients {
            let c = GradedElem::parse(field, s, text).map_err(|e| e.to_string())?;
            pairs.push((*n, c));
        }
        TExp::from_parts(
            field,
            s,
            self.header.weight,
            self.header.typ,
            self.header.order,
            pairs,
        )
        .map_err(|e| e.to_string())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("serializable");
        out.push(b'\n');
        out
    }
}
