use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::arith::FactoredInt;
use crate::codegree::{cod_from_data, CodegreeSet, DegreeData};

/// Degree data for one fixed group plus the facts the case analysis cites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    #[serde(flatten)]
    pub data: DegreeData,
    #[serde(default)]
    pub display: String,
    #[serde(default)]
    pub tags: Vec<String>,
    pub schur_multiplier: Option<u64>,
    pub class_count: Option<usize>,
    /// Literature lower bound on `|cd(G)|` for partial records.
    pub cd_count_min: Option<usize>,
}

impl GroupRecord {
    pub fn from_toml(src: &str, origin: &str) -> Result<Self, CatalogError> {
        let rec: Self =
            toml::from_str(src).map_err(|e| CatalogError::Parse { file: origin.to_string(), reason: e.to_string() })?;
        rec.validate()?;
        Ok(rec)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let src = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src, &path.display().to_string())
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn display_name(&self) -> &str {
        if self.display.is_empty() {
            &self.data.name
        } else {
            &self.display
        }
    }

    pub fn order(&self) -> &FactoredInt {
        &self.data.order
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn distinct_degrees(&self) -> BTreeSet<u64> {
        self.data.distinct_degrees()
    }

    /// `|cd(G)|` counted from the degrees; for partial records a lower
    /// bound, raised to `cd_count_min` when that is larger. The flag is true
    /// when the value rests on the recorded (trusted) bound.
    pub fn cd_count(&self) -> (usize, bool) {
        let listed = self.distinct_degrees().len();
        match self.cd_count_min {
            Some(m) if self.data.partial && m > listed => (m, true),
            _ => (listed, false),
        }
    }

    pub fn cod(&self) -> Result<CodegreeSet, CatalogError> {
        cod_from_data(&self.data).map_err(|e| self.invalid(e.to_string()))
    }

    fn invalid(&self, reason: impl Into<String>) -> CatalogError {
        CatalogError::Validation { name: self.data.name.clone(), reason: reason.into() }
    }

    /// Load-time invariants: 1 is a degree, every degree divides `|G|`,
    /// `Σ d² = |G|` unless partial, kernels consistent, class count matches.
    pub fn validate(&self) -> Result<(), CatalogError> {
        let d = &self.data;
        if !d.degrees.contains(&1) {
            return Err(self.invalid("degree list lacks 1"));
        }
        for &deg in &d.degrees {
            let f = FactoredInt::factorize(deg).map_err(|e| self.invalid(e.to_string()))?;
            if !d.order.is_divisible_by(&f) {
                return Err(self.invalid(format!("degree {deg} does not divide |G| = {}", d.order)));
            }
        }
        if !d.partial {
            let sum = d.sum_of_squares().map_err(|e| self.invalid(e.to_string()))?;
            let order = d.order.value().map(u128::from);
            if order != Some(sum) {
                return Err(self.invalid(format!("sum of squared degrees is {sum}, but |G| = {}", d.order.decimal())));
            }
            if let Some(cc) = self.class_count {
                if cc != d.degrees.len() {
                    return Err(self.invalid(format!("{} degrees for {cc} classes", d.degrees.len())));
                }
            }
        }
        if let Some(k) = &d.kernels {
            if k.len() != d.degrees.len() {
                return Err(self.invalid("kernel list length differs from degree list"));
            }
            if d.simple && d.degrees.iter().zip(k).any(|(&deg, &ko)| deg > 1 && ko != 1) {
                return Err(self.invalid("a simple group has a nonfaithful nontrivial character"));
            }
        }
        if d.simple && !d.partial && d.degrees.iter().filter(|&&x| x == 1).count() != 1 {
            return Err(self.invalid("a simple group has exactly one linear character"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const U42: &str = r#"
name = "U4_2"
order = "2^6.3^4.5"
simple = true
degrees = [1, 5, 5, 6, 10, 10, 15, 15, 20, 24, 30, 30, 30, 40, 40, 45, 45, 60, 64, 81]
class_count = 20
schur_multiplier = 2
"#;

    #[test]
    fn loads_and_validates() {
        let r = GroupRecord::from_toml(U42, "inline").unwrap();
        assert_eq!(r.cd_count(), (13, false));
        assert_eq!(r.cod().unwrap().len(), 13);
        assert_eq!(r.schur_multiplier, Some(2));
    }

    #[test]
    fn missing_degree_fails_sum_of_squares() {
        let broken = U42.replace("[1, 5, 5,", "[1, 5,");
        let err = GroupRecord::from_toml(&broken, "inline").unwrap_err();
        assert!(err.to_string().contains("sum of squared degrees"), "{err}");
    }

    #[test]
    fn partial_record_counts() {
        let src = "name = \"X\"\norder = \"2^7.3^5.5.17.19\"\nsimple = true\npartial = true\ndegrees = [1, 85]\n";
        assert_eq!(GroupRecord::from_toml(src, "inline").unwrap().cd_count(), (2, false));
        let ok = format!("{src}cd_count_min = 13\n");
        assert_eq!(GroupRecord::from_toml(&ok, "inline").unwrap().cd_count(), (13, true));
        let bad = src.replace("85]", "86]");
        assert!(GroupRecord::from_toml(&bad, "inline").is_err());
    }
}
