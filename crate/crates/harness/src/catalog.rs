//! The group catalog mined by the suite.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dsl;
use crate::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub expr: String,
    /// Entries with `mine = false` are only used for engine checks.
    #[serde(default = "yes")]
    pub mine: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<CatalogEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Text(String),
    Full(CatalogEntry),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CatalogRepr {
    List(Vec<EntryRepr>),
    Object { groups: Vec<EntryRepr> },
}

impl Catalog {
    pub fn from_exprs<S: AsRef<str>>(exprs: &[S]) -> Self {
        Catalog {
            groups: exprs
                .iter()
                .map(|s| CatalogEntry {
                    expr: s.as_ref().to_string(),
                    mine: true,
                })
                .collect(),
        }
    }

    /// The built-in catalog.
    pub fn default_catalog() -> Self {
        let mut groups = Vec::new();
        let mut push = |e: String, mine: bool| groups.push(CatalogEntry { expr: e, mine });
        for n in 1..=24 {
            push(format!("C({n})"), true);
        }
        for n in 2..=12 {
            push(format!("D({})", 2 * n), true);
        }
        for e in [
            "Q(8)",
            "S(3)",
            "S(4)",
            "A(4)",
            "SL(2,3)",
            "F(21)",
            "C(3) wr C(2)",
            "D(8) x C(2)",
            "Q(8) x C(2)",
            "C(4) x C(2)",
            "C(4) x C(4)",
            "C(2) x C(2) x C(2)",
            "C(4) x C(2) x C(2)",
            "D(8) x C(3)",
            "Q(8) x C(3)",
            "S(3) x C(2)",
            "S(3) x S(3)",
            "A(4) x C(2)",
            "Q(12)",
            "Q(16)",
            "sd(C(5), C(4), pow(2))",
            "C(3) wr C(2) x C(2)",
        ] {
            push(e.to_string(), true);
        }
        push("A(5)".to_string(), false);
        Catalog { groups }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let repr: CatalogRepr =
            serde_json::from_str(text).map_err(|e| HarnessError::Format(e.to_string()))?;
        let list = match repr {
            CatalogRepr::List(v) => v,
            CatalogRepr::Object { groups } => groups,
        };
        let groups = list
            .into_iter()
            .map(|e| match e {
                EntryRepr::Text(expr) => CatalogEntry { expr, mine: true },
                EntryRepr::Full(c) => c,
            })
            .collect();
        Ok(Catalog { groups })
    }

    /// `default` or a JSON file.
    pub fn load(spec: &str) -> Result<Self> {
        if spec == "default" {
            return Ok(Self::default_catalog());
        }
        let text = std::fs::read_to_string(Path::new(spec))
            .map_err(|e| HarnessError::Io(format!("{spec}: {e}")))?;
        Self::parse_json(&text)
    }

    /// Parses every entry, reporting the first DSL error.
    pub fn validate(&self) -> Result<()> {
        for e in &self.groups {
            dsl::parse(&e.expr)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parses() {
        let c = Catalog::default_catalog();
        c.validate().unwrap();
        assert!(c.groups.iter().any(|e| e.expr == "A(5)" && !e.mine));
        for e in &c.groups {
            assert_eq!(dsl::parse(&e.expr).unwrap().render(), e.expr);
        }
    }

    #[test]
    fn json_forms() {
        let a = Catalog::parse_json(r#"["C(2)", {"expr": "A(5)", "mine": false}]"#).unwrap();
        let b = Catalog::parse_json(r#"{"groups": ["C(2)", {"expr": "A(5)", "mine": false}]}"#)
            .unwrap();
        assert_eq!(a, b);
        assert!(a.groups[0].mine);
    }
}
