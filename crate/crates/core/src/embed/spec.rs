use serde::{Deserialize, Serialize};

use crate::linalg::{fmt_rational, parse_rational, q};
use crate::rootdata::AlgebraSpec;
use crate::{Error, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    /// Nodes are removed from the extended Dynkin diagram of `g` (node 0 is `-theta`).
    /// `keep` overrides `drop` with an explicit list of surviving nodes.
    Regular { drop: Vec<usize>, keep: Option<Vec<usize>> },
    /// Simple roots of `a` given directly in the epsilon basis of `g`, in the Dynkin order of `a`.
    Special { embedded_simple_roots: Vec<Vec<Rational>>, projection: Option<Vec<Vec<Rational>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEmbedding", into = "RawEmbedding")]
pub struct EmbeddingSpec {
    pub g: AlgebraSpec,
    pub a: AlgebraSpec,
    pub kind: EmbeddingKind,
}

impl EmbeddingSpec {
    pub fn regular(g: &str, a: &str, drop: &[usize]) -> Result<Self, Error> {
        Ok(EmbeddingSpec { g: g.parse()?, a: a.parse()?, kind: EmbeddingKind::Regular { drop: drop.to_vec(), keep: None } })
    }

    pub fn regular_keep(g: &str, a: &str, keep: &[usize]) -> Result<Self, Error> {
        Ok(EmbeddingSpec {
            g: g.parse()?,
            a: a.parse()?,
            kind: EmbeddingKind::Regular { drop: Vec::new(), keep: Some(keep.to_vec()) },
        })
    }

    pub fn special(g: &str, a: &str, embedded_simple_roots: Vec<Vec<Rational>>) -> Result<Self, Error> {
        Ok(EmbeddingSpec {
            g: g.parse()?,
            a: a.parse()?,
            kind: EmbeddingKind::Special { embedded_simple_roots, projection: None },
        })
    }

    /// Principal `A1` in `A2`, acting on the defining representation as spin 1.
    pub fn principal_a1_in_a2(affine: bool) -> Self {
        let hat = if affine { "^" } else { "" };
        let half = Rational::new(1.into(), 2.into());
        EmbeddingSpec {
            g: format!("A2{hat}").parse().unwrap(),
            a: format!("A1{hat}").parse().unwrap(),
            kind: EmbeddingKind::Special {
                embedded_simple_roots: vec![vec![half.clone(), q(0), -half]],
                projection: Some(vec![vec![q(1), q(0), q(-1)], vec![q(-1), q(0), q(1)]]),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("embedding serializes")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

impl RawRational {
    fn parse(&self) -> Result<Rational, Error> {
        match self {
            RawRational::Int(n) => Ok(q(*n)),
            RawRational::Text(s) => parse_rational(s),
        }
    }

    fn from_rational(x: &Rational) -> Self {
        match crate::linalg::to_i64(x) {
            Some(n) => RawRational::Int(n),
            None => RawRational::Text(fmt_rational(x)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawEmbedding {
    g: String,
    kind: String,
    a: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    drop: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    keep: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    projection: Option<Vec<Vec<RawRational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embedded_simple_roots: Option<Vec<Vec<RawRational>>>,
}

fn parse_matrix(m: &[Vec<RawRational>]) -> Result<Vec<Vec<Rational>>, Error> {
    m.iter().map(|row| row.iter().map(RawRational::parse).collect()).collect()
}

fn raw_matrix(m: &[Vec<Rational>]) -> Vec<Vec<RawRational>> {
    m.iter().map(|row| row.iter().map(RawRational::from_rational).collect()).collect()
}

impl TryFrom<RawEmbedding> for EmbeddingSpec {
    type Error = Error;

    fn try_from(raw: RawEmbedding) -> Result<Self, Error> {
        let kind = match raw.kind.as_str() {
            "regular" => EmbeddingKind::Regular { drop: raw.drop, keep: raw.keep },
            "special" => {
                let roots = raw
                    .embedded_simple_roots
                    .ok_or_else(|| Error::Parse("special embedding needs `embedded_simple_roots`".into()))?;
                EmbeddingKind::Special {
                    embedded_simple_roots: parse_matrix(&roots)?,
                    projection: raw.projection.as_deref().map(parse_matrix).transpose()?,
                }
            }
            other => return Err(Error::Parse(format!("unknown embedding kind `{other}`"))),
        };
        Ok(EmbeddingSpec { g: raw.g.parse()?, a: raw.a.parse()?, kind })
    }
}

impl From<EmbeddingSpec> for RawEmbedding {
    fn from(e: EmbeddingSpec) -> Self {
        let mut raw = RawEmbedding {
            g: e.g.to_string(),
            kind: String::new(),
            a: e.a.to_string(),
            drop: Vec::new(),
            keep: None,
            projection: None,
            embedded_simple_roots: None,
        };
        match e.kind {
            EmbeddingKind::Regular { drop, keep } => {
                raw.kind = "regular".into();
                raw.drop = drop;
                raw.keep = keep;
            }
            EmbeddingKind::Special { embedded_simple_roots, projection } => {
                raw.kind = "special".into();
                raw.embedded_simple_roots = Some(raw_matrix(&embedded_simple_roots));
                raw.projection = projection.as_deref().map(raw_matrix);
            }
        }
        raw
    }
}
