//! The JSON surface-description format.
//!
//! ```json
//! {
//!   "label": "catenoid",
//!   "g": { "num": [[0, 0], [1, 0]], "den": [[1, 0]] },
//!   "omega_hat": { "num": [[1, 0]], "den": [[0, 0], [0, 0], [1, 0]] },
//!   "punctures": [[0, 0], "inf"],
//!   "base_point": [1, 0]
//! }
//! ```
//!
//! Coefficients are `[re, im]` pairs, lowest degree first.

use maxface_core::{Complex64, Extended, Polynomial, RationalMap, Tolerances, WeierstrassData};
use serde::Serialize;
use serde_json::Value;

use crate::InputError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalSpec {
    pub num: Vec<[f64; 2]>,
    pub den: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PunctureSpec {
    Finite([f64; 2]),
    Infinity(&'static str),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceDescription {
    pub label: String,
    pub g: RationalSpec,
    pub omega_hat: RationalSpec,
    pub punctures: Vec<PunctureSpec>,
    pub base_point: [f64; 2],
}

fn field(name: &str, message: impl Into<String>) -> InputError {
    InputError::Field {
        field: name.to_string(),
        message: message.into(),
    }
}

fn pair(v: &Value, name: &str) -> Result<[f64; 2], InputError> {
    let bad = || field(name, format!("expected an [re, im] pair of numbers, found {v}"));
    let items = v.as_array().ok_or_else(bad)?;
    match items.as_slice() {
        [re, im] => Ok([re.as_f64().ok_or_else(bad)?, im.as_f64().ok_or_else(bad)?]),
        _ => Err(bad()),
    }
}

fn rational(v: Option<&Value>, name: &str) -> Result<RationalSpec, InputError> {
    let v = v.ok_or_else(|| field(name, "missing"))?;
    let obj = v
        .as_object()
        .ok_or_else(|| field(name, format!("expected {{\"num\": [...], \"den\": [...]}} of coefficient pairs, found {v}")))?;
    if let Some(extra) = obj.keys().find(|k| *k != "num" && *k != "den") {
        return Err(field(&format!("{name}.{extra}"), "unknown field"));
    }
    let coeffs = |part: &str| -> Result<Vec<[f64; 2]>, InputError> {
        let path = format!("{name}.{part}");
        let list = obj.get(part).ok_or_else(|| field(&path, "missing"))?;
        let list = list
            .as_array()
            .ok_or_else(|| field(&path, format!("expected a list of [re, im] pairs, found {list}")))?;
        if list.is_empty() {
            return Err(field(&path, "needs at least one coefficient"));
        }
        list.iter()
            .enumerate()
            .map(|(i, c)| pair(c, &format!("{path}[{i}]")))
            .collect()
    };
    Ok(RationalSpec {
        num: coeffs("num")?,
        den: coeffs("den")?,
    })
}

impl SurfaceDescription {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let root: Value = serde_json::from_str(text)?;
        let obj = root
            .as_object()
            .ok_or_else(|| field("(root)", "expected a JSON object"))?;
        const KNOWN: [&str; 5] = ["label", "g", "omega_hat", "punctures", "base_point"];
        if let Some(extra) = obj.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(field(extra, "unknown field"));
        }
        let label = match obj.get("label") {
            None => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(v) => return Err(field("label", format!("expected a string, found {v}"))),
        };
        let punctures = obj
            .get("punctures")
            .ok_or_else(|| field("punctures", "missing"))?
            .as_array()
            .ok_or_else(|| field("punctures", "expected a list of [re, im] pairs or \"inf\""))?
            .iter()
            .enumerate()
            .map(|(i, p)| match p {
                Value::String(s) if s == "inf" => Ok(PunctureSpec::Infinity("inf")),
                _ => pair(p, &format!("punctures[{i}]")).map(PunctureSpec::Finite),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            label,
            g: rational(obj.get("g"), "g")?,
            omega_hat: rational(obj.get("omega_hat"), "omega_hat")?,
            punctures,
            base_point: pair(obj.get("base_point").ok_or_else(|| field("base_point", "missing"))?, "base_point")?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptions serialize")
    }

    pub fn to_data(&self, tol: &Tolerances) -> Result<WeierstrassData, InputError> {
        let map = |spec: &RationalSpec, name: &str| {
            let poly = |c: &[[f64; 2]]| Polynomial::new(c.iter().map(|&[re, im]| Complex64::new(re, im)).collect());
            RationalMap::new(poly(&spec.num), poly(&spec.den), tol.zero).map_err(|e| field(name, e.to_string()))
        };
        let punctures = self
            .punctures
            .iter()
            .map(|p| match p {
                PunctureSpec::Finite([re, im]) => Extended::Finite(Complex64::new(*re, *im)),
                PunctureSpec::Infinity(_) => Extended::Infinity,
            })
            .collect();
        let [re, im] = self.base_point;
        Ok(WeierstrassData::new(
            map(&self.g, "g")?,
            map(&self.omega_hat, "omega_hat")?,
            punctures,
            Complex64::new(re, im),
            self.label.clone(),
            tol,
        )?)
    }

    pub fn from_data(data: &WeierstrassData) -> Self {
        let coeffs = |p: &Polynomial| p.coeffs().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>();
        let spec = |f: &RationalMap| RationalSpec {
            num: if f.num().is_zero() { vec![[0.0, 0.0]] } else { coeffs(f.num()) },
            den: coeffs(f.den()),
        };
        Self {
            label: data.label().to_string(),
            g: spec(data.g()),
            omega_hat: spec(data.omega_hat()),
            punctures: data
                .punctures()
                .iter()
                .map(|p| match p {
                    Extended::Finite(z) => PunctureSpec::Finite([z.re, z.im]),
                    Extended::Infinity => PunctureSpec::Infinity("inf"),
                })
                .collect(),
            base_point: [data.base_point().re, data.base_point().im],
        }
    }
}
