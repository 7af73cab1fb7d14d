use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CatalogError;
use crate::arith::{is_prime_power, Env, Expr, FactoredInt, RationalExpr};

/// The prime-power parameter of a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub var: String,
    pub min: i64,
    /// Required characteristic, e.g. 2 for `q = 2^f`.
    pub characteristic: Option<u64>,
    /// Odd characteristic only.
    #[serde(default)]
    pub odd: bool,
    /// `q = p^f` with `f` odd.
    #[serde(default)]
    pub odd_exponent: bool,
}

/// The rank parameter of a two-parameter family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterSpec {
    pub var: String,
    pub min: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Derived {
    pub name: String,
    pub expr: Expr,
}

/// One codegree of the family, given directly, through the degree of the
/// character, or both (then `cod · degree = |G|` is checked).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodEntry {
    pub label: String,
    pub expr: Option<Expr>,
    pub degree: Option<Expr>,
    /// Entries with a variant tag belong to that variant only.
    pub variant: Option<String>,
    /// Copied as printed in the literature: evaluated exactly but not
    /// required to divide `|G|`.
    #[serde(default)]
    pub transcribed_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointNote {
    #[serde(with = "point_serde")]
    pub point: Env,
    pub reason: String,
}

/// A parameter point at which the family yields one of the targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Identification {
    #[serde(with = "point_serde")]
    pub point: Env,
    pub group: String,
    pub note: String,
}

/// Two formulas that must agree as rational functions of the grid variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Identity {
    pub left: Expr,
    pub right: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFamily {
    pub name: String,
    pub display: String,
    #[serde(default = "yes")]
    pub simple: bool,
    pub grid: GridSpec,
    pub outer: Option<OuterSpec>,
    pub order: Expr,
    /// Exponent of the defining characteristic's Sylow part: `|G| ≥ q^N`.
    pub q_exponent: Option<Expr>,
    #[serde(default)]
    pub derived: Vec<Derived>,
    /// True when the entries (plus 1) are all of `cod(G)`.
    #[serde(default)]
    pub complete: bool,
    #[serde(default)]
    pub cod: Vec<CodEntry>,
    #[serde(default)]
    pub exclusions: Vec<PointNote>,
    #[serde(default)]
    pub identifications: Vec<Identification>,
    #[serde(default)]
    pub identities: Vec<Identity>,
    /// Literature lower bound on `|cod(G)|`, a trusted input.
    pub cod_count_min: Option<usize>,
    #[serde(default)]
    pub provenance: String,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodValue {
    pub label: String,
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub transcribed_only: bool,
    pub value: FactoredInt,
    pub degree: Option<FactoredInt>,
}

/// Exact values of a family at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub family: String,
    pub point: Env,
    pub order: FactoredInt,
    pub cods: Vec<CodValue>,
}

impl FamilyPoint {
    /// Codegrees that belong to the given variant (untagged entries always do).
    pub fn cods_for<'a>(&'a self, variant: Option<&'a str>) -> impl Iterator<Item = &'a CodValue> + 'a {
        self.cods.iter().filter(move |c| c.variant.is_none() || variant.is_none() || c.variant.as_deref() == variant)
    }
}

pub fn format_point(point: &Env) -> String {
    point.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

impl GroupFamily {
    pub fn from_toml(src: &str, origin: &str) -> Result<Self, CatalogError> {
        let f: Self =
            toml::from_str(src).map_err(|e| CatalogError::Parse { file: origin.to_string(), reason: e.to_string() })?;
        f.validate()?;
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let src = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&src, &path.display().to_string())
    }

    fn invalid(&self, reason: impl Into<String>) -> CatalogError {
        CatalogError::Validation { name: self.name.clone(), reason: reason.into() }
    }

    pub fn vars(&self) -> Vec<&str> {
        let mut v = vec![self.grid.var.as_str()];
        if let Some(o) = &self.outer {
            v.push(o.var.as_str());
        }
        v
    }

    pub fn variants(&self) -> BTreeSet<String> {
        self.cod.iter().filter_map(|c| c.variant.clone()).collect()
    }

    pub fn order_rational(&self) -> RationalExpr {
        RationalExpr::from_expr(&self.order)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let mut known: BTreeSet<String> = self.vars().into_iter().map(String::from).collect();
        for d in &self.derived {
            check_vars(&d.expr, &known)
                .map_err(|v| self.invalid(format!("derived `{}` uses unknown `{v}`", d.name)))?;
            known.insert(d.name.clone());
        }
        check_vars(&self.order, &known).map_err(|v| self.invalid(format!("order uses unknown `{v}`")))?;
        for c in &self.cod {
            if c.expr.is_none() && c.degree.is_none() {
                return Err(self.invalid(format!("cod entry `{}` has neither expr nor degree", c.label)));
            }
            for e in c.expr.iter().chain(&c.degree) {
                check_vars(e, &known).map_err(|v| self.invalid(format!("`{}` uses unknown `{v}`", c.label)))?;
            }
        }
        let params: BTreeSet<String> = self.vars().into_iter().map(String::from).collect();
        for p in self.exclusions.iter().map(|e| &e.point).chain(self.identifications.iter().map(|i| &i.point)) {
            let keys: BTreeSet<String> = p.keys().cloned().collect();
            if keys != params {
                return Err(self.invalid(format!("point {} does not name exactly the parameters", format_point(p))));
            }
        }
        let env = Env::new();
        for id in &self.identities {
            let same = RationalExpr::from_expr(&id.left).same_function(
                &RationalExpr::from_expr(&id.right),
                &self.grid.var,
                &env,
            )?;
            if !same {
                return Err(self.invalid(format!("identity {} = {} fails", id.left, id.right)));
            }
        }
        Ok(())
    }

    /// Parameter constraints only; exclusions are checked separately.
    pub fn admissible(&self, point: &Env) -> Result<(), String> {
        let g = &self.grid;
        let q = *point.get(&g.var).ok_or_else(|| format!("missing parameter `{}`", g.var))?;
        if q < g.min as i128 {
            return Err(format!("{} = {q} is below {}", g.var, g.min));
        }
        let (p, f) = u64::try_from(q)
            .ok()
            .and_then(is_prime_power)
            .ok_or_else(|| format!("{} = {q} is not a prime power", g.var))?;
        if let Some(c) = g.characteristic {
            if p != c {
                return Err(format!("{} = {q} is not a power of {c}", g.var));
            }
        }
        if g.odd && p == 2 {
            return Err(format!("{} = {q} is even", g.var));
        }
        if g.odd_exponent && f % 2 == 0 {
            return Err(format!("{} = {q} is an even power of {p}", g.var));
        }
        if let Some(o) = &self.outer {
            let n = *point.get(&o.var).ok_or_else(|| format!("missing parameter `{}`", o.var))?;
            if n < o.min as i128 {
                return Err(format!("{} = {n} is below {}", o.var, o.min));
            }
        }
        if point.len() != self.vars().len() {
            return Err("unexpected parameters".into());
        }
        Ok(())
    }

    pub fn exclusion(&self, point: &Env) -> Option<&PointNote> {
        self.exclusions.iter().find(|e| &e.point == point)
    }

    pub fn identification(&self, point: &Env) -> Option<&Identification> {
        self.identifications.iter().find(|i| &i.point == point)
    }

    /// Admissible, non-excluded values of the grid variable in `[lo, hi]`
    /// with the other parameters fixed by `base`.
    pub fn grid_values(&self, base: &Env, lo: i128, hi: i128) -> Vec<i128> {
        (lo.max(self.grid.min as i128)..=hi)
            .filter(|&q| {
                let mut pt = base.clone();
                pt.insert(self.grid.var.clone(), q);
                self.admissible(&pt).is_ok() && self.exclusion(&pt).is_none()
            })
            .collect()
    }

    /// The point plus every derived variable.
    pub fn environment(&self, point: &Env) -> Result<Env, CatalogError> {
        let mut env = point.clone();
        for d in &self.derived {
            let v = d.expr.eval_int(&env).map_err(|e| self.point_error(point, format!("derived `{}`: {e}", d.name)))?;
            env.insert(d.name.clone(), v);
        }
        Ok(env)
    }

    fn point_error(&self, point: &Env, reason: String) -> CatalogError {
        CatalogError::Point { family: self.name.clone(), point: format_point(point), reason }
    }

    pub fn eval_order(&self, point: &Env) -> Result<FactoredInt, CatalogError> {
        let env = self.environment(point)?;
        self.order.eval_factored(&env).map_err(|e| self.point_error(point, format!("order: {e}")))
    }

    pub fn eval(&self, point: &Env) -> Result<FamilyPoint, CatalogError> {
        self.admissible(point).map_err(|r| self.point_error(point, r))?;
        if let Some(ex) = self.exclusion(point) {
            return Err(self.point_error(point, format!("excluded: {}", ex.reason)));
        }
        let env = self.environment(point)?;
        let order = self.eval_order(point)?;
        let mut cods = Vec::with_capacity(self.cod.len());
        for c in &self.cod {
            let ev =
                |e: &Expr| e.eval_factored(&env).map_err(|err| self.point_error(point, format!("{}: {err}", c.label)));
            let degree = c.degree.as_ref().map(ev).transpose()?;
            let value = match (&c.expr, &degree) {
                (Some(e), _) => ev(e)?,
                (None, Some(d)) => order
                    .div_exact(d)
                    .map_err(|_| self.point_error(point, format!("{}: degree {d} does not divide |G|", c.label)))?,
                (None, None) => unreachable!("validated at load"),
            };
            if let Some(d) = &degree {
                if value.mul(d) != order {
                    return Err(self.point_error(
                        point,
                        format!("{}: cod {} times degree {} is not |G| = {}", c.label, value, d, order),
                    ));
                }
            }
            if !c.transcribed_only && !order.is_divisible_by(&value) {
                return Err(self.point_error(point, format!("{}: cod {value} does not divide |G|", c.label)));
            }
            cods.push(CodValue {
                label: c.label.clone(),
                variant: c.variant.clone(),
                transcribed_only: c.transcribed_only,
                value,
                degree,
            });
        }
        Ok(FamilyPoint { family: self.name.clone(), point: point.clone(), order, cods })
    }
}

/// Points are written with 64-bit integers; the format has no wider type.
mod point_serde {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    use crate::arith::Env;

    pub fn serialize<S: Serializer>(env: &Env, s: S) -> Result<S::Ok, S::Error> {
        let narrow: BTreeMap<&String, i64> =
            env.iter().map(|(k, &v)| (k, i64::try_from(v).unwrap_or(i64::MAX))).collect();
        narrow.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Env, D::Error> {
        let narrow = BTreeMap::<String, i64>::deserialize(d).map_err(D::Error::custom)?;
        Ok(narrow.into_iter().map(|(k, v)| (k, v as i128)).collect())
    }
}

fn check_vars(e: &Expr, known: &BTreeSet<String>) -> Result<(), String> {
    match e.free_vars().into_iter().find(|v| !known.contains(v)) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUZUKI: &str = r#"
name = "Suzuki"
display = "2B2(q2)"
grid = { var = "q2", min = 8, characteristic = 2, odd_exponent = true }
order = "q2^2*(q2^2+1)*(q2-1)"
complete = true
derived = [{ name = "r", expr = "sqrt(2*q2)" }]
cod = [
  { label = "a", degree = "q2^2" },
  { label = "b", degree = "q2^2+1" },
  { label = "c", expr = "q2^2*(q2^2+1)/(q2-r+1)", degree = "(q2-r+1)*(q2-1)" },
  { label = "d", expr = "q2^2*(q2^2+1)/(q2+r+1)", degree = "(q2+r+1)*(q2-1)" },
  { label = "e", expr = "2*q2^2*(q2^2+1)/r", degree = "r*(q2-1)/2" },
]
"#;

    fn pt(pairs: &[(&str, i128)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn suzuki_at_eight() {
        let f = GroupFamily::from_toml(SUZUKI, "inline").unwrap();
        let p = f.eval(&pt(&[("q2", 8)])).unwrap();
        assert_eq!(p.order.value(), Some(29120));
        let vals: Vec<u64> = p.cods.iter().map(|c| c.value.value().unwrap()).collect();
        assert_eq!(vals, vec![455, 448, 832, 320, 2080]);
    }

    #[test]
    fn admissibility() {
        let f = GroupFamily::from_toml(SUZUKI, "inline").unwrap();
        assert!(f.admissible(&pt(&[("q2", 32)])).is_ok());
        assert!(f.admissible(&pt(&[("q2", 16)])).unwrap_err().contains("even power"));
        assert!(f.admissible(&pt(&[("q2", 27)])).unwrap_err().contains("power of 2"));
        assert!(f.admissible(&pt(&[("q2", 2)])).is_err());
        assert_eq!(f.grid_values(&Env::new(), 1, 600), vec![8, 32, 128, 512]);
    }

    #[test]
    fn transcription_errors_surface() {
        let bad = SUZUKI.replace("degree = \"q2^2+1\"", "degree = \"q2^2+3\"");
        let f = GroupFamily::from_toml(&bad, "inline").unwrap();
        assert!(f.eval(&pt(&[("q2", 8)])).is_err());
        let unknown = SUZUKI.replace("(q2-r+1)*(q2-1)\"", "(q2-s+1)*(q2-1)\"");
        assert!(GroupFamily::from_toml(&unknown, "inline").is_err());
    }

    #[test]
    fn identities_are_checked_at_load() {
        let src = format!("{SUZUKI}identities = [{{ left = \"(q2^4-1)\", right = \"(q2^2+1)*(q2-1)*(q2+1)\" }}]\n");
        assert!(GroupFamily::from_toml(&src, "inline").is_ok());
        let wrong = src.replace("(q2-1)*(q2+1)\"", "(q2-1)*(q2+2)\"");
        assert!(GroupFamily::from_toml(&wrong, "inline").is_err());
    }
}
