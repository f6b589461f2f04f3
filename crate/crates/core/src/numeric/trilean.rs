use std::fmt;

/// Outcome of a decision made from interval endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trilean {
    True,
    False,
    Unknown,
}

impl Trilean {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Trilean::True
        } else {
            Trilean::False
        }
    }

    /// `None` when undecided.
    pub fn known(self) -> Option<bool> {
        match self {
            Trilean::True => Some(true),
            Trilean::False => Some(false),
            Trilean::Unknown => None,
        }
    }

    pub fn is_unknown(self) -> bool {
        self == Trilean::Unknown
    }

    pub fn not(self) -> Self {
        match self {
            Trilean::True => Trilean::False,
            Trilean::False => Trilean::True,
            Trilean::Unknown => Trilean::Unknown,
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Trilean) -> Self {
        match (self, other) {
            (Trilean::False, _) | (_, Trilean::False) => Trilean::False,
            (Trilean::True, Trilean::True) => Trilean::True,
            _ => Trilean::Unknown,
        }
    }
}

impl fmt::Display for Trilean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Trilean::True => "true",
            Trilean::False => "false",
            Trilean::Unknown => "unknown",
        };
        f.write_str(s)
    }
}
