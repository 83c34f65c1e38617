//! Vertex metrics: nonnegative weights with volumes and path lengths.
//!
//! A metric is either binary64 ("real") or exact rational; the two are never
//! mixed within one metric. Tiling metrics are rational, solver output is
//! real. Volume is the n-norm of the weight vector.

use std::collections::{BTreeMap, BTreeSet};

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::boxes::Indexed;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Nonnegative weight per vertex, tagged by representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    Real(BTreeMap<String, f64>),
    Rational(BTreeMap<String, Rat>),
}

impl Metric {
    pub fn uniform<I, S>(vertices: I, weight: f64) -> Metric
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Metric::Real(vertices.into_iter().map(|v| (v.into(), weight)).collect())
    }

    pub fn real_from_pairs<I, S>(pairs: I) -> Metric
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        Metric::Real(pairs.into_iter().map(|(v, w)| (v.into(), w)).collect())
    }

    pub fn rational_from_pairs<I, S>(pairs: I) -> Metric
    where
        I: IntoIterator<Item = (S, Rat)>,
        S: Into<String>,
    {
        Metric::Rational(pairs.into_iter().map(|(v, w)| (v.into(), w)).collect())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Metric::Rational(_))
    }

    pub fn len(&self) -> usize {
        match self {
            Metric::Real(m) => m.len(),
            Metric::Rational(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> impl Iterator<Item = &String> {
        match self {
            Metric::Real(m) => Either::A(m.keys()),
            Metric::Rational(m) => Either::B(m.keys()),
        }
    }

    pub fn get(&self, v: &str) -> Option<f64> {
        match self {
            Metric::Real(m) => m.get(v).copied(),
            Metric::Rational(m) => m.get(v).map(Rat::to_f64),
        }
    }

    /// Exact value; binary64 weights embed exactly as dyadic rationals.
    pub fn get_exact(&self, v: &str) -> Option<Rat> {
        match self {
            Metric::Real(m) => m.get(v).and_then(|&w| Rat::from_f64_exact(w)),
            Metric::Rational(m) => m.get(v).cloned(),
        }
    }

    /// All weights finite and nonnegative.
    pub fn validate(&self) -> Result<()> {
        match self {
            Metric::Real(m) => {
                for (v, &w) in m {
                    if !w.is_finite() || w < 0.0 {
                        return Err(Error::BadWeight { vertex: v.clone() });
                    }
                }
            }
            Metric::Rational(m) => {
                for (v, w) in m {
                    if w.is_negative() {
                        return Err(Error::BadWeight { vertex: v.clone() });
                    }
                }
            }
        }
        Ok(())
    }

    /// Weight vector aligned with an indexed box; every vertex must be covered
    /// and no extra entries are allowed.
    pub fn weights_f64(&self, idx: &Indexed) -> Result<Vec<f64>> {
        self.check_domain(idx)?;
        idx.bx
            .vertices
            .iter()
            .map(|v| self.get(v).ok_or_else(|| Error::MissingWeight(v.clone())))
            .collect()
    }

    /// Exact weight vector aligned with an indexed box.
    pub fn weights_rat(&self, idx: &Indexed) -> Result<Vec<Rat>> {
        self.check_domain(idx)?;
        idx.bx
            .vertices
            .iter()
            .map(|v| {
                self.get_exact(v)
                    .ok_or_else(|| Error::MissingWeight(v.clone()))
            })
            .collect()
    }

    fn check_domain(&self, idx: &Indexed) -> Result<()> {
        self.validate()?;
        for v in self.vertices() {
            if !idx.index_of.contains_key(v.as_str()) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        Ok(())
    }

    /// Every weight multiplied by `c`; result is always binary64.
    pub fn scaled(&self, c: f64) -> Metric {
        match self {
            Metric::Real(m) => Metric::Real(m.iter().map(|(v, &w)| (v.clone(), w * c)).collect()),
            Metric::Rational(m) => {
                Metric::Real(m.iter().map(|(v, w)| (v.clone(), w.to_f64() * c)).collect())
            }
        }
    }

    /// Exact rescale of a rational metric.
    pub fn scaled_exact(&self, c: &Rat) -> Result<Metric> {
        match self {
            Metric::Rational(m) => Ok(Metric::Rational(
                m.iter().map(|(v, w)| (v.clone(), w * c)).collect(),
            )),
            Metric::Real(_) => Err(Error::MixedWeights),
        }
    }

    /// Scaled copy with volume 1 (binary64). Zero metrics are returned as-is.
    pub fn unit_volume(&self, n: usize) -> Metric {
        let vol = metric_volume(self, n);
        if vol > 0.0 {
            self.scaled(1.0 / vol)
        } else {
            self.scaled(1.0)
        }
    }

    /// `Σ_v w(v)^n` as an exact rational (binary64 embeds exactly).
    pub fn volume_pow_exact(&self, n: usize) -> Rat {
        assert!(n >= 1, "volume needs n >= 1");
        match self {
            Metric::Real(m) => m
                .values()
                .filter_map(|&w| Rat::from_f64_exact(w))
                .map(|w| w.pow(n as i32))
                .sum(),
            Metric::Rational(m) => m.values().map(|w| w.pow(n as i32)).sum(),
        }
    }

    /// Largest absolute pointwise difference, over the union of domains.
    pub fn sup_distance(&self, other: &Metric) -> f64 {
        let keys: BTreeSet<&String> = self.vertices().chain(other.vertices()).collect();
        keys.into_iter()
            .map(|v| (self.get(v).unwrap_or(0.0) - other.get(v).unwrap_or(0.0)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metric serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(format!("metric file: {e}")))
    }
}

enum Either<A, B> {
    A(A),
    B(B),
}

impl<A: Iterator<Item = T>, B: Iterator<Item = T>, T> Iterator for Either<A, B> {
    type Item = T;
    fn next(&mut self) -> Option<T> {
        match self {
            Either::A(a) => a.next(),
            Either::B(b) => b.next(),
        }
    }
}

/// `(Σ_v m(v)^n)^(1/n)`.
pub fn metric_volume(m: &Metric, n: usize) -> f64 {
    assert!(n >= 1, "volume needs n >= 1");
    let sum: f64 = match m {
        Metric::Real(w) => w.values().map(|v| v.powi(n as i32)).sum(),
        Metric::Rational(w) => w.values().map(|v| v.to_f64().powi(n as i32)).sum(),
    };
    sum.powf(1.0 / n as f64)
}

/// Sum of weights along a vertex list, duplicates counted as listed.
pub fn path_length(m: &Metric, path: &[String]) -> Result<f64> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    path.iter()
        .map(|v| m.get(v).ok_or_else(|| Error::UnknownVertex(v.clone())))
        .sum()
}

/// Exact path length; binary64 weights embed exactly.
pub fn path_length_exact(m: &Metric, path: &[String]) -> Result<Rat> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    path.iter()
        .map(|v| {
            m.get_exact(v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))
        })
        .sum()
}

/// A metric plus a path carrying `t` of extra weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedMetric {
    pub base: Metric,
    pub path: Vec<String>,
    pub t: f64,
}

impl PerturbedMetric {
    pub fn materialize(&self) -> Metric {
        perturbed_metric(&self.base, &self.path, self.t)
    }
}

/// `m(v) + t` on the path, `m(v)` elsewhere. Vertices listed more than once
/// still receive the increment exactly once.
pub fn perturbed_metric(m: &Metric, path: &[String], t: f64) -> Metric {
    assert!(t >= 0.0, "perturbation weight must be nonnegative");
    let on_path: BTreeSet<&str> = path.iter().map(String::as_str).collect();
    match m {
        Metric::Real(w) => Metric::Real(
            w.iter()
                .map(|(v, &x)| {
                    let x = if on_path.contains(v.as_str()) { x + t } else { x };
                    (v.clone(), x)
                })
                .collect(),
        ),
        Metric::Rational(w) => {
            let t = Rat::from_f64_exact(t).expect("finite t");
            Metric::Rational(
                w.iter()
                    .map(|(v, x)| {
                        let x = if on_path.contains(v.as_str()) {
                            x + &t
                        } else {
                            x.clone()
                        };
                        (v.clone(), x)
                    })
                    .collect(),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// JSON schema: {"weights": {vertex: number-or-rational-string}}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFile {
    weights: BTreeMap<String, WeightValue>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightValue {
    Real(f64),
    Rational(String),
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let weights = match self {
            Metric::Real(m) => m
                .iter()
                .map(|(v, &w)| (v.clone(), WeightValue::Real(w)))
                .collect(),
            Metric::Rational(m) => m
                .iter()
                .map(|(v, w)| (v.clone(), WeightValue::Rational(w.to_string())))
                .collect(),
        };
        MetricFile { weights }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Metric {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = MetricFile::deserialize(deserializer)?;
        let mut real = BTreeMap::new();
        let mut rational = BTreeMap::new();
        for (v, w) in file.weights {
            match w {
                WeightValue::Real(x) => {
                    real.insert(v, x);
                }
                WeightValue::Rational(s) => {
                    let r: Rat = s.parse().map_err(de::Error::custom)?;
                    rational.insert(v, r);
                }
            }
        }
        match (real.is_empty(), rational.is_empty()) {
            (_, true) => Ok(Metric::Real(real)),
            (true, false) => Ok(Metric::Rational(rational)),
            (false, false) => Err(de::Error::custom(
                "metric mixes rational strings and plain numbers",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn path_length_examples() {
        let q4 = fixtures::q4();
        let zero = Metric::uniform(q4.vertices.iter().cloned(), 0.0);
        let half = Metric::uniform(q4.vertices.iter().cloned(), 0.5);
        let path = vec!["a".to_string(), "c".to_string()];
        assert_eq!(path_length(&zero, &path).unwrap(), 0.0);
        assert_eq!(path_length(&half, &path).unwrap(), 1.0);
        let single = Metric::real_from_pairs([("a", 0.75)]);
        assert_eq!(path_length(&single, &["a".to_string()]).unwrap(), 0.75);
        assert!(path_length(&half, &["zz".to_string()]).is_err());
        assert!(matches!(path_length(&half, &[]), Err(Error::EmptyPath)));
    }

    #[test]
    fn volume_examples() {
        let q4 = fixtures::q4();
        let k8 = fixtures::k8();
        let zero = Metric::uniform(q4.vertices.iter().cloned(), 0.0);
        assert_eq!(metric_volume(&zero, 2), 0.0);
        let half4 = Metric::uniform(q4.vertices.iter().cloned(), 0.5);
        assert!((metric_volume(&half4, 2) - 1.0).abs() < 1e-15);
        let half8 = Metric::uniform(k8.vertices.iter().cloned(), 0.5);
        assert!((metric_volume(&half8, 3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perturbation_examples() {
        let q4 = fixtures::q4();
        let half = Metric::uniform(q4.vertices.iter().cloned(), 0.5);
        assert_eq!(perturbed_metric(&half, &["a".into(), "b".into()], 0.0), half);

        let p = perturbed_metric(&half, &["a".into(), "b".into()], 0.25);
        assert_eq!(p.get("a"), Some(0.75));
        assert_eq!(p.get("b"), Some(0.75));
        assert_eq!(p.get("c"), Some(0.5));
        assert_eq!(p.get("d"), Some(0.5));

        let zero = Metric::uniform(q4.vertices.iter().cloned(), 0.0);
        let all: Vec<String> = q4.vertices.clone();
        let one = perturbed_metric(&zero, &all, 1.0);
        assert!(q4.vertices.iter().all(|v| one.get(v) == Some(1.0)));

        // Duplicate vertices in the path receive the increment once.
        let dup = perturbed_metric(&half, &["a".into(), "a".into()], 0.25);
        assert_eq!(dup.get("a"), Some(0.75));

        let view = PerturbedMetric {
            base: half,
            path: vec!["a".into()],
            t: 0.25,
        };
        assert_eq!(view.materialize().get("a"), Some(0.75));
    }

    #[test]
    fn metric_json_round_trip_both_representations() {
        let real = Metric::real_from_pairs([("a", 0.5), ("b", 0.1)]);
        let back = Metric::from_json(&real.to_json()).unwrap();
        assert_eq!(back, real);

        let rational =
            Metric::rational_from_pairs([("a", Rat::new(1, 3)), ("b", Rat::from_int(2))]);
        let back = Metric::from_json(&rational.to_json()).unwrap();
        assert_eq!(back, rational);

        assert!(Metric::from_json(r#"{"weights":{"a":0.5,"b":"1/3"}}"#).is_err());
        assert!(Metric::from_json(r#"{"weights":{"a":"1/3"},"extra":0}"#).is_err());
    }

    #[test]
    fn validation_rejects_negative_and_non_finite() {
        let bad = Metric::real_from_pairs([("a", -0.5)]);
        assert!(bad.validate().is_err());
        let bad = Metric::real_from_pairs([("a", f64::NAN)]);
        assert!(bad.validate().is_err());
        let bad = Metric::rational_from_pairs([("a", Rat::new(-1, 2))]);
        assert!(bad.validate().is_err());
    }
}
