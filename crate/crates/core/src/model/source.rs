use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::scalar::{NumericMode, Scalar, Weight, Weights, DEFAULT_EPSILON};
use super::symbols::SymbolSet;
use crate::error::{Error, Result};

/// A finite memoryless source: strictly positive probabilities summing to one,
/// in the caller's symbol order.
#[derive(Debug, Clone, PartialEq)]
pub struct Source<T = Rational> {
    probabilities: Vec<T>,
    labels: Option<Vec<String>>,
    epsilon: f64,
}

impl<T: Scalar> Source<T> {
    /// Validates and wraps `probabilities` using the default tolerance for `T`
    /// (zero for exact values).
    pub fn new(probabilities: Vec<T>) -> Result<Self> {
        let eps = if T::EXACT { 0.0 } else { DEFAULT_EPSILON };
        Self::with_epsilon(probabilities, eps)
    }

    pub fn with_epsilon(probabilities: Vec<T>, epsilon: f64) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::EmptySource);
        }
        if let Some((index, p)) = probabilities
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_positive())
        {
            return Err(Error::NonPositiveProbability {
                index,
                value: p.to_string(),
            });
        }
        let total = probabilities
            .iter()
            .cloned()
            .fold(<T as Weight>::zero(), |acc, p| acc + p);
        let eps = if T::EXACT { 0.0 } else { epsilon };
        if matches!(
            (total.clone() - T::one()).sign(eps),
            Some(std::cmp::Ordering::Less | std::cmp::Ordering::Greater)
        ) {
            return Err(Error::BadTotal {
                total: total.to_string(),
            });
        }
        Ok(Source {
            probabilities,
            labels: None,
            epsilon: eps,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::LabelCount {
                count: labels.len(),
                n: self.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn p(&self, index: usize) -> &T {
        &self.probabilities[index]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Some(l) => l[index].clone(),
            None => index.to_string(),
        }
    }

    /// Comparison tolerance; zero in exact mode.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn mode(&self) -> NumericMode {
        if T::EXACT {
            NumericMode::Exact
        } else {
            NumericMode::Float {
                epsilon: self.epsilon,
            }
        }
    }

    /// Every probability is a power of 1/2.
    pub fn is_dyadic(&self) -> bool {
        self.probabilities
            .iter()
            .all(|p| p.is_power_of_half(self.epsilon))
    }

    /// Sum of the member probabilities.
    pub fn probability(&self, set: &SymbolSet) -> T {
        set.iter()
            .filter(|&i| i < self.len())
            .fold(<T as Weight>::zero(), |acc, i| {
                acc + self.probabilities[i].clone()
            })
    }

    /// Shannon entropy in bits, always evaluated in floating point.
    pub fn entropy(&self) -> f64 {
        self.probabilities
            .iter()
            .map(|p| {
                let p = p.to_f64();
                -p * p.log2()
            })
            .sum::<f64>()
            .max(0.0)
    }

    /// Non-increasing order check.
    pub fn is_sorted_descending(&self) -> bool {
        self.probabilities
            .windows(2)
            .all(|w| w[0].total_cmp(&w[1]) != std::cmp::Ordering::Less)
    }

    pub(crate) fn weights(&self) -> Weights {
        T::to_weights(&self.probabilities, self.epsilon)
    }
}

impl Source<Rational> {
    /// Parses probabilities given as rational strings such as `"1/3"`.
    pub fn parse<S: AsRef<str>>(values: &[S]) -> Result<Self> {
        let probs = values
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<Rational>>>()?;
        Source::new(probs)
    }

    pub fn to_float(&self) -> Source<f64> {
        Source {
            probabilities: self.probabilities.iter().map(Rational::to_f64).collect(),
            labels: self.labels.clone(),
            epsilon: DEFAULT_EPSILON,
        }
    }
}

/// `make_source`: validate a list of probabilities in the given mode.
pub fn make_source(probs: &[&str], mode: NumericMode) -> Result<AnySource> {
    match mode {
        NumericMode::Exact => Source::parse(probs).map(AnySource::Exact),
        NumericMode::Float { epsilon } => {
            let values = probs
                .iter()
                .map(|s| {
                    f64::parse_value(s).ok_or_else(|| Error::Parse {
                        what: "probability",
                        input: s.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Source::with_epsilon(values, epsilon).map(AnySource::Float)
        }
    }
}

/// A source in either numeric mode, as read from JSON or the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySource {
    Exact(Source<Rational>),
    Float(Source<f64>),
}

#[derive(Debug, Serialize, Deserialize)]
struct SourceJson {
    #[serde(default = "default_mode")]
    mode: String,
    probabilities: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
}

fn default_mode() -> String {
    "exact".into()
}

fn value_text(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse {
            what: "probability",
            input: other.to_string(),
        }),
    }
}

impl AnySource {
    pub fn len(&self) -> usize {
        match self {
            AnySource::Exact(s) => s.len(),
            AnySource::Float(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Reads the JSON form
    /// `{"mode": "exact"|"float", "probabilities": [...], "labels": [...]}`.
    /// A bare JSON array of probabilities is accepted as an exact source.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let doc: SourceJson = if value.is_array() {
            SourceJson {
                mode: default_mode(),
                probabilities: serde_json::from_value(value)?,
                labels: None,
                epsilon: None,
            }
        } else {
            serde_json::from_value(value)?
        };
        let texts = doc
            .probabilities
            .iter()
            .map(value_text)
            .collect::<Result<Vec<_>>>()?;
        let texts: Vec<&str> = texts.iter().map(String::as_str).collect();
        let mode = match doc.mode.as_str() {
            "exact" => NumericMode::Exact,
            "float" => NumericMode::Float {
                epsilon: doc.epsilon.unwrap_or(DEFAULT_EPSILON),
            },
            other => {
                return Err(Error::Parse {
                    what: "numeric mode",
                    input: other.to_string(),
                })
            }
        };
        let source = make_source(&texts, mode)?;
        match doc.labels {
            None => Ok(source),
            Some(labels) => match source {
                AnySource::Exact(s) => Ok(AnySource::Exact(s.with_labels(labels)?)),
                AnySource::Float(s) => Ok(AnySource::Float(s.with_labels(labels)?)),
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = match self {
            AnySource::Exact(s) => SourceJson {
                mode: "exact".into(),
                probabilities: s
                    .probabilities()
                    .iter()
                    .map(|p| serde_json::Value::String(p.to_string()))
                    .collect(),
                labels: s.labels.clone(),
                epsilon: None,
            },
            AnySource::Float(s) => SourceJson {
                mode: "float".into(),
                probabilities: s
                    .probabilities()
                    .iter()
                    .map(|p| serde_json::json!(p))
                    .collect(),
                labels: s.labels.clone(),
                epsilon: (s.epsilon != DEFAULT_EPSILON).then_some(s.epsilon),
            },
        };
        serde_json::to_value(doc).expect("source JSON is always serializable")
    }
}

impl Serialize for Source<Rational> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AnySource::Exact(self.clone())
            .to_json()
            .serialize(serializer)
    }
}

impl Serialize for Source<f64> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AnySource::Float(self.clone())
            .to_json()
            .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rational::q;

    fn src(v: &[(i64, i64)]) -> Source {
        Source::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn make_source_examples() {
        let s = make_source(&["1/3", "1/3", "1/6", "1/6"], NumericMode::Exact).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(make_source(&["1"], NumericMode::Exact).unwrap().len(), 1);
        assert!(matches!(
            make_source(&["1/2", "1/2", "1/2"], NumericMode::Exact),
            Err(Error::BadTotal { .. })
        ));
        assert!(matches!(
            make_source(&["1", "0"], NumericMode::Exact),
            Err(Error::NonPositiveProbability { index: 1, .. })
        ));
        assert!(matches!(
            make_source(&[], NumericMode::Exact),
            Err(Error::EmptySource)
        ));
    }

    #[test]
    fn input_order_is_kept() {
        let s = src(&[(1, 6), (1, 2), (1, 3)]);
        assert_eq!(s.probabilities(), &[q(1, 6), q(1, 2), q(1, 3)]);
        assert!(!s.is_sorted_descending());
    }

    #[test]
    fn float_total_uses_tolerance() {
        assert!(Source::new(vec![0.1, 0.2, 0.7]).is_ok());
        assert!(Source::new(vec![0.1, 0.2, 0.7 + 1e-9]).is_err());
        assert!(Source::with_epsilon(vec![0.1, 0.2, 0.7 + 1e-9], 1e-6).is_ok());
    }

    #[test]
    fn dyadic_examples() {
        assert!(src(&[(1, 2), (1, 4), (1, 8), (1, 8)]).is_dyadic());
        assert!(!src(&[(1, 3), (1, 3), (1, 6), (1, 6)]).is_dyadic());
        assert!(src(&[(1, 1)]).is_dyadic());
    }

    #[test]
    fn probability_examples() {
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        assert_eq!(s.probability(&SymbolSet::from([0, 1])), q(2, 3));
        assert_eq!(s.probability(&SymbolSet::new()), q(0, 1));
        assert_eq!(s.probability(&SymbolSet::full(4)), q(1, 1));
        let s = src(&[(1, 3), (1, 3), (1, 9), (1, 9), (1, 18), (1, 18)]);
        assert_eq!(s.probability(&SymbolSet::from([3, 4, 5])), q(2, 9));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(src(&[(1, 2), (1, 2)]).entropy(), 1.0);
        assert_eq!(src(&[(1, 1)]).entropy(), 0.0);
        assert!((src(&[(1, 2), (1, 4), (1, 8), (1, 8)]).entropy() - 1.75).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"mode":"exact","probabilities":["1/3","1/3","1/6","1/6"],"labels":["a","b","c","d"]}"#;
        let s = AnySource::from_json(text).unwrap();
        let AnySource::Exact(inner) = &s else {
            panic!("expected exact source")
        };
        assert_eq!(inner.label(2), "c");
        let back = AnySource::from_json(&s.to_json().to_string()).unwrap();
        assert_eq!(back, s);

        let bare = AnySource::from_json(r#"["1/2","1/2"]"#).unwrap();
        assert!(matches!(bare, AnySource::Exact(_)));

        let float =
            AnySource::from_json(r#"{"mode":"float","probabilities":[0.25,0.75]}"#).unwrap();
        assert!(matches!(float, AnySource::Float(_)));
        assert_eq!(
            AnySource::from_json(&float.to_json().to_string()).unwrap(),
            float
        );
    }

    #[test]
    fn label_count_must_match() {
        let s = src(&[(1, 2), (1, 2)]);
        assert!(s.with_labels(vec!["a".into()]).is_err());
    }
}
