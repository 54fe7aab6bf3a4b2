use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which Kashiwara operator: ordinary or starred, raising or lowering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "e*")]
    EStar,
    #[serde(rename = "f*")]
    FStar,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::E, Kind::F, Kind::EStar, Kind::FStar];

    pub fn is_star(self) -> bool {
        matches!(self, Kind::EStar | Kind::FStar)
    }

    pub fn is_raising(self) -> bool {
        matches!(self, Kind::E | Kind::EStar)
    }

    /// The operator undoing this one.
    pub fn inverse(self) -> Kind {
        match self {
            Kind::E => Kind::F,
            Kind::F => Kind::E,
            Kind::EStar => Kind::FStar,
            Kind::FStar => Kind::EStar,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::E => "e",
            Kind::F => "f",
            Kind::EStar => "e*",
            Kind::FStar => "f*",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "e" => Ok(Kind::E),
            "f" => Ok(Kind::F),
            "e*" => Ok(Kind::EStar),
            "f*" => Ok(Kind::FStar),
            other => Err(Error::Parse(format!("unknown operator {:?}", other))),
        }
    }
}

/// Parses an operator word such as `f*0,f*1,e0` into `(kind, index)` pairs,
/// in application order (leftmost applied first).
pub fn parse_word(text: &str) -> Result<Vec<(Kind, i64)>, Error> {
    let mut out = Vec::new();
    for raw in text.split(',') {
        let tok = raw.trim();
        if tok.is_empty() {
            continue;
        }
        let split = tok
            .find(|c: char| c.is_ascii_digit() || c == '-')
            .ok_or_else(|| Error::Parse(format!("operator token {:?} has no index", tok)))?;
        let (name, idx) = tok.split_at(split);
        let kind: Kind = name.parse()?;
        let idx: i64 =
            idx.parse().map_err(|_| Error::Parse(format!("bad index in operator token {:?}", tok)))?;
        out.push((kind, idx));
    }
    Ok(out)
}

pub fn format_word(word: &[(Kind, i64)]) -> String {
    word.iter().map(|(k, i)| format!("{}{}", k, i)).collect::<Vec<_>>().join(",")
}
