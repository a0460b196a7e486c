//! Reference values stored as JSON and compared exactly against the
//! implementation.
//!
//! A golden file names a semigroup and lists polynomials and sequences by
//! key:
//!
//! | key                  | meaning                                        |
//! |----------------------|------------------------------------------------|
//! | `phi_s`              | `φ_s` (graph models)                           |
//! | `psi_s`              | `ψ_s`, coefficient of the count ratio          |
//! | `nu_s_t`             | `ν_{s,t}`                                      |
//! | `tau_<F>_M<m>_s`     | `τ_s` for function `F` and moment `m`          |
//! | `counts`, `primes`   | `G_n`, `G_n^+` from `n = 0`                    |
//! | `beta`               | inverse of the count series from `n = 0`       |
//! | `totals_<F>`         | `F_n` from `n = 0`; `<F>` may be `name^m`      |
//! | `xi_<F>_M<m>`        | `ξ_s` from `s = 0`                             |
//!
//! Polynomials are coefficient lists in increasing degree; all numbers are
//! `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arithfun::{fn_totals, WarlimontFn};
use crate::asymptotics::{compute_nu, compute_xi, moment_expansion};
use crate::polyasym::Poly;
use crate::rat::{self, Rat};
use crate::semigroups::Semigroup;
use crate::triples::derive_beta;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFile {
    pub semigroup: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default)]
    pub polys: BTreeMap<String, Poly>,
    #[serde(default)]
    pub sequences: BTreeMap<String, Vec<String>>,
}

/// A key whose computed value differs from the stored one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub file: String,
    pub key: String,
    pub expected: String,
    pub actual: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}: expected {}, got {}", self.file, self.key, self.expected, self.actual)
    }
}

const BUILTIN: [(&str, &str); 5] = [
    ("graphs.json", include_str!("../golden/graphs.json")),
    ("even-graphs.json", include_str!("../golden/even-graphs.json")),
    ("fq-poly-2-2.json", include_str!("../golden/fq-poly-2-2.json")),
    ("fq-poly-3-2.json", include_str!("../golden/fq-poly-3-2.json")),
    ("fq-poly-2-3.json", include_str!("../golden/fq-poly-2-3.json")),
];

/// The golden files shipped with the crate.
pub fn builtin() -> Vec<(String, GoldenFile)> {
    BUILTIN
        .iter()
        .map(|(name, text)| (name.to_string(), parse(text).expect("bundled golden file is valid")))
        .collect()
}

pub fn parse(text: &str) -> Result<GoldenFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn load(path: &Path) -> Result<GoldenFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse(&text)
}

impl GoldenFile {
    pub fn model(&self) -> Result<Semigroup> {
        Semigroup::from_name(&self.semigroup, self.q, self.k)
    }

    /// Every key that does not match; empty when the file is reproduced.
    pub fn verify(&self, file: &str) -> Result<Vec<Mismatch>> {
        let model = self.model()?;
        let mut out = Vec::new();
        for (key, expected) in &self.polys {
            let actual = poly_value(&model, key)?;
            if &actual != expected {
                out.push(Mismatch {
                    file: file.to_string(),
                    key: key.clone(),
                    expected: expected.to_string(),
                    actual: actual.to_string(),
                });
            }
        }
        for (key, raw) in &self.sequences {
            let expected = raw.iter().map(|s| rat::parse(s)).collect::<Result<Vec<_>>>()?;
            let len = expected.len();
            if len == 0 {
                continue;
            }
            let actual = sequence_value(&model, key, len)?;
            if actual != expected {
                out.push(Mismatch {
                    file: file.to_string(),
                    key: key.clone(),
                    expected: join(&expected),
                    actual: join(&actual),
                });
            }
        }
        Ok(out)
    }

    /// Number of stored values.
    pub fn len(&self) -> usize {
        self.polys.len() + self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn join(v: &[Rat]) -> String {
    v.iter().map(rat::to_string).collect::<Vec<_>>().join(", ")
}

fn bad_key(key: &str) -> Error {
    Error::Parse(format!("unrecognized golden key `{key}`"))
}

fn index(part: &str, key: &str) -> Result<usize> {
    part.parse().map_err(|_| bad_key(key))
}

fn moment_index(part: &str, key: &str) -> Result<u32> {
    part.strip_prefix('M').and_then(|m| m.parse().ok()).ok_or_else(|| bad_key(key))
}

/// `name` or `name^m`.
fn function(key: &str) -> Result<WarlimontFn> {
    match key.split_once('^') {
        Some((name, m)) => {
            let m: u32 = m.parse().map_err(|_| Error::UnknownFunction(key.to_string()))?;
            Ok(WarlimontFn::from_name(name, None)?.power(m))
        }
        None => WarlimontFn::from_name(key, None),
    }
}

fn poly_value(model: &Semigroup, key: &str) -> Result<Poly> {
    let parts: Vec<&str> = key.split('_').collect();
    match parts.as_slice() {
        ["phi", s] => {
            let s = index(s, key)?;
            let phi = model
                .phi(s)
                .ok_or_else(|| Error::InvalidParameter(format!("{} has no φ polynomials", model.name())))?;
            Ok(phi[s].clone())
        }
        ["psi", s] => {
            let s = index(s, key)?;
            Ok(model.ratio_expansion(s + 1)?.term(s).clone())
        }
        ["nu", s, t] => {
            let (s, t) = (index(s, key)?, index(t, key)?);
            if t == 0 || t > s {
                return Err(bad_key(key));
            }
            let psi = model.ratio_expansion(s + 1)?;
            Ok(compute_nu(&psi, s + 1)?.get(s, t).clone())
        }
        ["tau", f, m, s] => {
            let s = index(s, key)?;
            let e = moment_expansion(&function(f)?, model, moment_index(m, key)?, s + 1)?;
            Ok(e.tau.term(s).clone())
        }
        _ => Err(bad_key(key)),
    }
}

fn sequence_value(model: &Semigroup, key: &str, len: usize) -> Result<Vec<Rat>> {
    let n_max = len - 1;
    let parts: Vec<&str> = key.split('_').collect();
    match parts.as_slice() {
        ["counts"] => model.counts_rat(n_max),
        ["primes"] => Ok(model.primes(n_max)?.iter().map(rat::from_big).collect()),
        ["beta"] => Ok(derive_beta(&model.counts_rat(n_max)?)),
        ["totals", f] => fn_totals(&function(f)?, &model.primes(n_max)?, n_max),
        ["xi", f, m] => Ok(compute_xi(&function(f)?, model, moment_index(m, key)?, len)?.xi),
        _ => Err(bad_key(key)),
    }
}
