use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Type of a simply-laced Dynkin diagram, equivalently of a finite subgroup of SL₂(ℂ).
///
/// `A(n)` is the cyclic group of order `n + 1`, `D(n)` the binary dihedral group of
/// order `4(n - 2)`, and `E6`/`E7`/`E8` the binary tetrahedral, octahedral and
/// icosahedral groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeLabel {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl AdeLabel {
    /// Number of vertices of the finite diagram.
    pub fn rank(self) -> usize {
        match self {
            AdeLabel::A(n) | AdeLabel::D(n) => n as usize,
            AdeLabel::E6 => 6,
            AdeLabel::E7 => 7,
            AdeLabel::E8 => 8,
        }
    }

    pub fn group_order(self) -> usize {
        match self {
            AdeLabel::A(n) => n as usize + 1,
            AdeLabel::D(n) => 4 * (n as usize - 2),
            AdeLabel::E6 => 24,
            AdeLabel::E7 => 48,
            AdeLabel::E8 => 120,
        }
    }

    /// Determinant of the Cartan matrix of the finite diagram.
    pub fn cartan_determinant(self) -> i64 {
        match self {
            AdeLabel::A(n) => n as i64 + 1,
            AdeLabel::D(_) => 4,
            AdeLabel::E6 => 3,
            AdeLabel::E7 => 2,
            AdeLabel::E8 => 1,
        }
    }

    /// A₁..A₁₀, D₄..D₁₀, E₆, E₇, E₈.
    pub fn standard_suite() -> Vec<AdeLabel> {
        let mut out: Vec<AdeLabel> = (1..=10).map(AdeLabel::A).collect();
        out.extend((4..=10).map(AdeLabel::D));
        out.extend([AdeLabel::E6, AdeLabel::E7, AdeLabel::E8]);
        out
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A{n}"),
            AdeLabel::D(n) => write!(f, "D{n}"),
            AdeLabel::E6 => write!(f, "E6"),
            AdeLabel::E7 => write!(f, "E7"),
            AdeLabel::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for AdeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let trimmed = s.trim();
        let mut chars = trimmed.chars();
        let family = chars.next().map(|c| c.to_ascii_uppercase());
        let digits = chars.as_str().trim_start_matches('_');
        let n: u32 = match digits.parse() {
            Ok(n) => n,
            Err(_) => return Err(Error::UnknownLabel(s.to_string())),
        };
        match (family, n) {
            (Some('A'), n) if n >= 1 => Ok(AdeLabel::A(n)),
            (Some('D'), n) if n >= 4 => Ok(AdeLabel::D(n)),
            (Some('D'), n) => Err(Error::DynkinTooSmall(n)),
            (Some('E'), 6) => Ok(AdeLabel::E6),
            (Some('E'), 7) => Ok(AdeLabel::E7),
            (Some('E'), 8) => Ok(AdeLabel::E8),
            _ => Err(Error::UnknownLabel(s.to_string())),
        }
    }
}

impl Serialize for AdeLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AdeLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["A1", "A10", "D4", "D10", "E6", "E7", "E8"] {
            assert_eq!(s.parse::<AdeLabel>().unwrap().to_string(), s);
        }
        assert_eq!("a_3".parse::<AdeLabel>().unwrap(), AdeLabel::A(3));
        assert_eq!("D3".parse::<AdeLabel>(), Err(Error::DynkinTooSmall(3)));
        assert!(matches!("E9".parse::<AdeLabel>(), Err(Error::UnknownLabel(_))));
        assert!(matches!("A0".parse::<AdeLabel>(), Err(Error::UnknownLabel(_))));
        assert!(matches!("X".parse::<AdeLabel>(), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn orders() {
        assert_eq!(AdeLabel::A(1).group_order(), 2);
        assert_eq!(AdeLabel::D(4).group_order(), 8);
        assert_eq!(AdeLabel::D(10).group_order(), 32);
        assert_eq!(AdeLabel::E8.group_order(), 120);
        assert_eq!(AdeLabel::standard_suite().len(), 20);
    }
}
