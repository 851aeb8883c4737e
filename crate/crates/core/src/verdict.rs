//! Outcome types shared by the decision procedures.

use std::fmt;

use serde::Serialize;

/// A verdict that is only definitive when it can be certified finitely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail")]
pub enum TriState {
    Proved,
    /// Carries a human-readable witness.
    Refuted(String),
    /// Carries the reason no definitive answer was reached.
    Unknown(String),
}

impl TriState {
    pub fn is_proved(&self) -> bool {
        matches!(self, TriState::Proved)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, TriState::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown(_))
    }

    pub fn is_definitive(&self) -> bool {
        !self.is_unknown()
    }

    pub fn label(&self) -> &'static str {
        match self {
            TriState::Proved => "Proved",
            TriState::Refuted(_) => "Refuted",
            TriState::Unknown(_) => "Unknown",
        }
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            TriState::Proved => None,
            TriState::Refuted(s) | TriState::Unknown(s) => Some(s),
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.detail() {
            None => write!(f, "{}", self.label()),
            Some(d) => write!(f, "{} ({d})", self.label()),
        }
    }
}

/// Outcome of a bounded search for a witness of type `W`.
#[derive(Clone, Debug)]
pub enum SearchResult<W, C> {
    Found(W),
    /// No witness exists; `C` is a finite certificate that can be replayed.
    NoneExists(C),
    Unknown { reason: String, bound: u32 },
}

impl<W, C> SearchResult<W, C> {
    pub fn label(&self) -> &'static str {
        match self {
            SearchResult::Found(_) => "Found",
            SearchResult::NoneExists(_) => "NoneExists",
            SearchResult::Unknown { .. } => "Unknown",
        }
    }

    pub fn found(&self) -> Option<&W> {
        match self {
            SearchResult::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            SearchResult::NoneExists(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchResult::Found(_))
    }

    pub fn is_none_exists(&self) -> bool {
        matches!(self, SearchResult::NoneExists(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_serialization() {
        assert_eq!(TriState::Proved.to_string(), "Proved");
        assert_eq!(TriState::Refuted("y*x = 0".into()).to_string(), "Refuted (y*x = 0)");
        let json = serde_json::to_string(&TriState::Unknown("bound".into())).unwrap();
        assert_eq!(json, r#"{"verdict":"Unknown","detail":"bound"}"#);
        let r: SearchResult<u8, ()> = SearchResult::Unknown { reason: "budget".into(), bound: 3 };
        assert_eq!(r.label(), "Unknown");
    }
}
