//! Map specifications: `kind:key=value;key=value` inline, or JSON with the
//! same keys plus a `kind` tag.
//!
//! Coefficient lists are comma separated complex literals (`0.5`, `1-2i`).
//! Lists for `h`, `g`, `F` and the Schwarz function of `q-subordinate`
//! start at `z¹`; the shear dilatation `phi` starts at `z⁰`.

use std::collections::BTreeMap;

use harmonic_atlas::harmonic::{harmonic_koebe, shear_construct, HarmonicMap};
use harmonic_atlas::modular_q::q_coefficients;
use harmonic_atlas::subordination::{subordinate_to_q, SchwarzCandidate};
use harmonic_atlas::{Complex64, TruncatedSeries};
use serde::{Deserialize, Serialize};

/// Longest coefficient list accepted inline.
pub const INLINE_LIST_MAX: usize = 16;

pub const DEFAULT_ORDER: usize = 64;
pub const KOEBE_DEFAULT_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapSpec {
    Identity,
    KoebeHarmonic {
        #[serde(default = "koebe_order")]
        order: usize,
    },
    Shear {
        phi: Vec<Complex64>,
        #[serde(rename = "F")]
        big_f: Vec<Complex64>,
        #[serde(default = "default_order")]
        order: usize,
    },
    QSubordinate {
        a: Complex64,
        phi: Vec<Complex64>,
        #[serde(default = "default_order")]
        order: usize,
    },
    Polynomial {
        h: Vec<Complex64>,
        #[serde(default)]
        g: Vec<Complex64>,
    },
}

fn koebe_order() -> usize {
    KOEBE_DEFAULT_ORDER
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if let Some((re, im)) = t.split_once(',') {
        let p = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("bad number {v:?}: {e}"));
        return finite(Complex64::new(p(re)?, p(im)?));
    }
    let z = t
        .replace(' ', "")
        .parse::<Complex64>()
        .map_err(|_| format!("bad complex literal {t:?}"))?;
    finite(z)
}

fn finite(z: Complex64) -> Result<Complex64, String> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite value {z}"))
    }
}

/// Comma separated list of complex literals.
pub fn parse_list(s: &str) -> Result<Vec<Complex64>, String> {
    let items: Vec<Complex64> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let z = t
                .trim()
                .parse::<Complex64>()
                .map_err(|_| format!("bad complex literal {t:?}"))?;
            finite(z)
        })
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err("empty coefficient list".into());
    }
    if items.len() > INLINE_LIST_MAX {
        return Err(format!(
            "{} coefficients inline; lists longer than {INLINE_LIST_MAX} go in --spec-file",
            items.len()
        ));
    }
    Ok(items)
}

impl std::str::FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for pair in rest.split(';').filter(|p| !p.trim().is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {pair:?}"))?;
            if params.insert(k.trim().to_owned(), v.trim().to_owned()).is_some() {
                return Err(format!("duplicate key {k:?}"));
            }
        }
        let allowed: &[&str] = match kind.trim() {
            "identity" => &[],
            "koebe-harmonic" => &["order"],
            "shear" => &["phi", "F", "order"],
            "q-subordinate" => &["a", "phi", "order"],
            "polynomial" => &["h", "g"],
            other => {
                return Err(format!(
                    "unknown map kind {other:?} (expected identity, koebe-harmonic, shear, q-subordinate or polynomial)"
                ))
            }
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(format!("unknown key {k:?} for {kind}"));
        }
        let list = |k: &str| {
            params
                .get(k)
                .ok_or_else(|| format!("{kind} needs {k}="))
                .and_then(|v| parse_list(v))
        };
        let order = |default: usize| match params.get("order") {
            Some(v) => v.parse::<usize>().map_err(|e| format!("bad order {v:?}: {e}")),
            None => Ok(default),
        };
        Ok(match kind.trim() {
            "identity" => Self::Identity,
            "koebe-harmonic" => Self::KoebeHarmonic {
                order: order(KOEBE_DEFAULT_ORDER)?,
            },
            "shear" => Self::Shear {
                phi: list("phi")?,
                big_f: list("F")?,
                order: order(DEFAULT_ORDER)?,
            },
            "q-subordinate" => Self::QSubordinate {
                a: parse_complex(params.get("a").ok_or("q-subordinate needs a=")?)?,
                phi: list("phi")?,
                order: order(DEFAULT_ORDER)?,
            },
            _ => Self::Polynomial {
                h: list("h")?,
                g: if params.contains_key("g") { list("g")? } else { Vec::new() },
            },
        })
    }
}

/// Coefficients of `z¹, z², …` into a series of the given order.
fn from_z1(c: &[Complex64], order: usize) -> Result<TruncatedSeries, String> {
    let mut v = vec![Complex64::new(0.0, 0.0)];
    v.extend_from_slice(c);
    TruncatedSeries::new(v)
        .map(|s| s.truncate(order.max(c.len())))
        .map_err(|e| e.to_string())
}

impl MapSpec {
    pub fn build(&self) -> Result<HarmonicMap, String> {
        match self {
            Self::Identity => Ok(HarmonicMap::identity(1)),
            Self::KoebeHarmonic { order } => {
                if *order < 2 {
                    return Err("koebe-harmonic needs order ≥ 2".into());
                }
                Ok(harmonic_koebe(*order))
            }
            Self::Shear { phi, big_f, order } => {
                let order = (*order).max(big_f.len()).max(phi.len());
                let phi = TruncatedSeries::new(phi.clone()).map_err(|e| e.to_string())?.truncate(order);
                let f = from_z1(big_f, order)?;
                shear_construct(&phi, &f).map_err(|e| e.to_string())
            }
            Self::QSubordinate { a, phi, order } => {
                let order = (*order).max(phi.len());
                let cand = SchwarzCandidate::from_series(from_z1(phi, order)?).map_err(|e| e.to_string())?;
                let q = q_coefficients(order);
                let h = subordinate_to_q(*a, &cand, &q).map_err(|e| e.to_string())?;
                Ok(HarmonicMap::analytic(h))
            }
            Self::Polynomial { h, g } => {
                let order = h.len().max(g.len()).max(1);
                let h = from_z1(h, order)?;
                let g = if g.is_empty() {
                    TruncatedSeries::zero(order)
                } else {
                    from_z1(g, order)?
                };
                Ok(HarmonicMap::new(h, g))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_json_agree() {
        let inline: MapSpec = "shear:phi=0,0.5;F=1;order=32".parse().unwrap();
        let json: MapSpec = serde_json::from_str(r#"{"kind":"shear","phi":[[0,0],[0.5,0]],"F":[[1,0]],"order":32}"#).unwrap();
        assert_eq!(inline, json);
        let f = inline.build().unwrap();
        assert!((f.b(2) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!("square:h=1".parse::<MapSpec>().is_err());
        assert!("polynomial:h=1;k=2".parse::<MapSpec>().is_err());
        assert!("polynomial:h=nan".parse::<MapSpec>().is_err());
        assert!("shear:phi=0.5".parse::<MapSpec>().is_err());
        let long = vec!["0.01"; 17].join(",");
        assert!(format!("polynomial:h={long}").parse::<MapSpec>().is_err());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1,0").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("0.5-2i").unwrap(), Complex64::new(0.5, -2.0));
        assert!(parse_complex("inf").is_err());
    }
}
