//! Sets of forbidden patterns and the registry of the nineteen classes
//! studied for complete hosts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// A set of forbidden induced patterns. Kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Pattern>", into = "Vec<Pattern>")]
pub struct ClassSpec {
    forbidden: Vec<Pattern>,
}

impl From<Vec<Pattern>> for ClassSpec {
    fn from(mut forbidden: Vec<Pattern>) -> Self {
        forbidden.sort();
        forbidden.dedup();
        ClassSpec { forbidden }
    }
}

impl From<ClassSpec> for Vec<Pattern> {
    fn from(c: ClassSpec) -> Self {
        c.forbidden
    }
}

impl ClassSpec {
    pub fn new(patterns: impl IntoIterator<Item = Pattern>) -> Self {
        ClassSpec::from(patterns.into_iter().collect::<Vec<_>>())
    }

    /// The unrestricted class (any bipartite template).
    pub fn unrestricted() -> Self {
        ClassSpec::default()
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn is_empty(&self) -> bool {
        self.forbidden.is_empty()
    }

    pub fn forbids(&self, p: &Pattern) -> bool {
        self.forbidden.contains(p)
    }

    /// Hyphenated canonical name, e.g. `2K2-C4-P4`; `none` for the empty set.
    pub fn name(&self) -> String {
        if self.forbidden.is_empty() {
            return "none".into();
        }
        self.forbidden
            .iter()
            .map(Pattern::name)
            .collect::<Vec<_>>()
            .join("-")
    }

    /// The nineteen classes with results for `K_n`, in a fixed order.
    pub fn registry() -> Vec<ClassSpec> {
        use Pattern::*;
        let sets: [&[Pattern]; 19] = [
            &[],
            &[P3],
            &[K2K1],
            &[K2K1, P3],
            &[P4],
            &[C4],
            &[TwoK2],
            &[S4],
            &[TwoK2, C4],
            &[TwoK2, C4, P4],
            &[C4, P4, S4],
            &[C4, P4],
            &[P4, TwoK2],
            &[TwoK2, S4],
            &[TwoK2, S4, P4],
            &[C4, S4],
            &[P4, S4],
            &[C4, S4, TwoK2],
            &[C4, P4, S4, TwoK2],
        ];
        sets.iter().map(|s| ClassSpec::new(s.iter().cloned())).collect()
    }

    pub fn is_registered(&self) -> bool {
        ClassSpec::registry().contains(self)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    /// Accepts hyphenated pattern lists in any order (`S4-2K2`), `none`
    /// or the empty string. `K2+K1` keeps its `+`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("none") {
            return Ok(ClassSpec::unrestricted());
        }
        let patterns = s
            .split(|c| c == '-' || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Pattern>>>()?;
        Ok(ClassSpec::from(patterns))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_nineteen_distinct_classes() {
        let reg = ClassSpec::registry();
        assert_eq!(reg.len(), 19);
        let mut names: Vec<String> = reg.iter().map(ClassSpec::name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 19);
    }

    #[test]
    fn names_are_canonical() {
        let c: ClassSpec = "S4-2K2".parse().unwrap();
        assert_eq!(c.name(), "2K2-S4");
        let c: ClassSpec = "P3-K2+K1".parse().unwrap();
        assert_eq!(c.name(), "K2+K1-P3");
        assert_eq!("none".parse::<ClassSpec>().unwrap(), ClassSpec::unrestricted());
        for c in ClassSpec::registry() {
            assert_eq!(c.name().parse::<ClassSpec>().unwrap(), c);
        }
        assert!("2K2-Q7".parse::<ClassSpec>().is_err());
    }
}
