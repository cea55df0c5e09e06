//! User-declared homotopy-level facts that unlock bound rules.
//!
//! None of these are decided from a triangulation. The only automatic
//! additions are contractibility of a single simplex and the implications
//! applied by [`SpaceAssertions::normalized`] / [`MapAssertions::normalized`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssertionError {
    #[error("unknown assertion '{0}'")]
    Unknown(String),
    #[error("assertion '{0}' needs a non-negative integer argument")]
    BadArgument(String),
    #[error("'{0}' is a map assertion and cannot be applied to a space")]
    NotASpaceAssertion(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceAssertions {
    pub contractible: bool,
    pub simply_connected: bool,
    pub h_group: bool,
    /// Asserted homotopy connectivity; checked against homology.
    pub connectivity: Option<u32>,
}

impl SpaceAssertions {
    pub fn normalized(mut self) -> Self {
        if self.contractible {
            self.simply_connected = true;
        }
        self
    }

    pub fn merge(&mut self, other: &SpaceAssertions) {
        self.contractible |= other.contractible;
        self.simply_connected |= other.simply_connected;
        self.h_group |= other.h_group;
        if other.connectivity.is_some() {
            self.connectivity = other.connectivity.max(self.connectivity);
        }
    }

    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.contractible {
            out.push("contractible".to_string());
        }
        if self.simply_connected {
            out.push("simply-connected".to_string());
        }
        if self.h_group {
            out.push("h-group".to_string());
        }
        if let Some(c) = self.connectivity {
            out.push(format!("connectivity:{c}"));
        }
        out
    }

    pub fn apply(&mut self, a: &Assertion) -> Result<(), AssertionError> {
        match a {
            Assertion::Contractible => self.contractible = true,
            Assertion::SimplyConnected => self.simply_connected = true,
            Assertion::HGroup => self.h_group = true,
            Assertion::Connectivity(c) => self.connectivity = Some((*c).max(self.connectivity.unwrap_or(0))),
            other => return Err(AssertionError::NotASpaceAssertion(other.to_string())),
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapAssertions {
    pub fibration: bool,
    pub section: bool,
    pub homotopy_section: bool,
    pub categorical_fibre: bool,
    pub covering: bool,
    pub covering_sheets: Option<u32>,
    pub universal_cover: bool,
    pub domain: SpaceAssertions,
    pub codomain: SpaceAssertions,
}

impl MapAssertions {
    pub fn normalized(mut self) -> Self {
        if self.universal_cover || self.covering_sheets.is_some() {
            self.covering = true;
        }
        if self.section {
            self.homotopy_section = true;
        }
        // Homotopy lifting turns a homotopy section of a fibration into a section.
        if self.fibration && self.homotopy_section {
            self.section = true;
        }
        self.domain = self.domain.normalized();
        self.codomain = self.codomain.normalized();
        self
    }

    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::new();
        let flags = [
            (self.fibration, "fibration"),
            (self.section, "section"),
            (self.homotopy_section, "homotopy-section"),
            (self.categorical_fibre, "categorical-fibre"),
        ];
        out.extend(flags.iter().filter(|(on, _)| *on).map(|(_, n)| n.to_string()));
        match self.covering_sheets {
            Some(k) => out.push(format!("covering:{k}")),
            None if self.covering => out.push("covering".to_string()),
            None => {}
        }
        if self.universal_cover {
            out.push("universal-cover".to_string());
        }
        out.extend(self.domain.tokens().into_iter().map(|t| format!("domain:{t}")));
        out.extend(self.codomain.tokens().into_iter().map(|t| format!("codomain:{t}")));
        out
    }

    pub fn apply(&mut self, a: &Assertion) -> Result<(), AssertionError> {
        match a {
            Assertion::Fibration => self.fibration = true,
            Assertion::Section => self.section = true,
            Assertion::HomotopySection => self.homotopy_section = true,
            Assertion::CategoricalFibre => self.categorical_fibre = true,
            Assertion::Covering(k) => {
                self.covering = true;
                if k.is_some() {
                    self.covering_sheets = *k;
                }
            }
            Assertion::UniversalCover => self.universal_cover = true,
            Assertion::Domain(inner) => self.domain.apply(inner)?,
            Assertion::Codomain(inner) => self.codomain.apply(inner)?,
            // Unprefixed space facts on a map refer to the domain.
            space => self.domain.apply(space)?,
        }
        Ok(())
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, AssertionError> {
        let mut out = MapAssertions::default();
        for t in tokens {
            out.apply(&t.as_ref().parse()?)?;
        }
        Ok(out.normalized())
    }
}

/// One parsed assertion token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assertion {
    Contractible,
    SimplyConnected,
    HGroup,
    Connectivity(u32),
    Fibration,
    Section,
    HomotopySection,
    CategoricalFibre,
    Covering(Option<u32>),
    UniversalCover,
    Domain(Box<Assertion>),
    Codomain(Box<Assertion>),
}

impl FromStr for Assertion {
    type Err = AssertionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("domain:") {
            return Ok(Assertion::Domain(Box::new(rest.parse()?)));
        }
        if let Some(rest) = t.strip_prefix("codomain:") {
            return Ok(Assertion::Codomain(Box::new(rest.parse()?)));
        }
        let (head, arg) = match t.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (t, None),
        };
        let number = |a: &str| a.parse::<u32>().map_err(|_| AssertionError::BadArgument(t.to_string()));
        let parsed = match (head, arg) {
            ("contractible", None) => Assertion::Contractible,
            ("simply-connected", None) => Assertion::SimplyConnected,
            ("h-group", None) => Assertion::HGroup,
            ("connectivity", Some(a)) => Assertion::Connectivity(number(a)?),
            ("connectivity", None) => return Err(AssertionError::BadArgument(t.to_string())),
            ("fibration", None) => Assertion::Fibration,
            ("section", None) => Assertion::Section,
            ("homotopy-section", None) => Assertion::HomotopySection,
            ("categorical-fibre", None) => Assertion::CategoricalFibre,
            ("covering", None) => Assertion::Covering(None),
            ("covering", Some(a)) => Assertion::Covering(Some(number(a)?)),
            ("universal-cover", None) => Assertion::UniversalCover,
            _ => return Err(AssertionError::Unknown(t.to_string())),
        };
        Ok(parsed)
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Contractible => write!(f, "contractible"),
            Assertion::SimplyConnected => write!(f, "simply-connected"),
            Assertion::HGroup => write!(f, "h-group"),
            Assertion::Connectivity(c) => write!(f, "connectivity:{c}"),
            Assertion::Fibration => write!(f, "fibration"),
            Assertion::Section => write!(f, "section"),
            Assertion::HomotopySection => write!(f, "homotopy-section"),
            Assertion::CategoricalFibre => write!(f, "categorical-fibre"),
            Assertion::Covering(None) => write!(f, "covering"),
            Assertion::Covering(Some(k)) => write!(f, "covering:{k}"),
            Assertion::UniversalCover => write!(f, "universal-cover"),
            Assertion::Domain(a) => write!(f, "domain:{a}"),
            Assertion::Codomain(a) => write!(f, "codomain:{a}"),
        }
    }
}

pub fn space_assertions_from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<SpaceAssertions, AssertionError> {
    let mut out = SpaceAssertions::default();
    for t in tokens {
        out.apply(&t.as_ref().parse()?)?;
    }
    Ok(out.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for t in [
            "fibration",
            "section",
            "homotopy-section",
            "h-group",
            "contractible",
            "simply-connected",
            "categorical-fibre",
            "covering:3",
            "covering",
            "universal-cover",
            "connectivity:2",
            "domain:contractible",
            "codomain:h-group",
        ] {
            assert_eq!(t.parse::<Assertion>().unwrap().to_string(), t);
        }
        assert!(matches!("wat".parse::<Assertion>(), Err(AssertionError::Unknown(_))));
        assert!(matches!(
            "covering:x".parse::<Assertion>(),
            Err(AssertionError::BadArgument(_))
        ));
    }

    #[test]
    fn implications() {
        let s = space_assertions_from_tokens(&["contractible"]).unwrap();
        assert!(s.simply_connected);
        let m = MapAssertions::from_tokens(&["universal-cover"]).unwrap();
        assert!(m.covering);
        let m = MapAssertions::from_tokens(&["covering:2", "domain:contractible"]).unwrap();
        assert!(m.covering && m.domain.simply_connected);
        assert_eq!(m.covering_sheets, Some(2));
        assert!(space_assertions_from_tokens(&["fibration"]).is_err());
    }

    #[test]
    fn tokens_reparse() {
        let m = MapAssertions::from_tokens(&["fibration", "covering:2", "codomain:h-group"]).unwrap();
        assert_eq!(MapAssertions::from_tokens(&m.tokens()).unwrap(), m);
    }
}
