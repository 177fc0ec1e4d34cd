//! Run configuration: group choice, exact parameters and command options,
//! read from JSON or from command-line literals.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{GroupKind, ReflectionGroup};
use crate::params::{kappa_inverse, ParamC, ParamK};

/// Output rendering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(Error::Config(format!("unknown format {s:?} (json, table)"))),
        }
    }
}

/// An exact scalar literal: a string in the cyclotomic literal syntax, or a
/// JSON integer. Floats are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Lit(pub String);

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(de) {
            Ok(Raw::Int(k)) => Ok(Lit(k.to_string())),
            Ok(Raw::Str(s)) => Ok(Lit(s)),
            Err(_) => {
                Err(serde::de::Error::custom("parameters must be integers or exact literal strings such as \"3/2\""))
            }
        }
    }
}

impl From<&str> for Lit {
    fn from(s: &str) -> Self {
        Lit(s.to_string())
    }
}

/// `c` parameters either keyed by class name or listed in class order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CSpec {
    Named(std::collections::BTreeMap<String, Lit>),
    Listed(Vec<Lit>),
}

/// `k` parameters: one list per hyperplane orbit, or a single list when
/// there is one orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KSpec {
    Single(Vec<Lit>),
    PerOrbit(Vec<Vec<Lit>>),
}

/// Everything a command needs. Parameters are exact literals only.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// `cyclic`, `b2` or `dihedral`.
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<CSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<KSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    /// Degree cap for the Dunkl checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl RunConfig {
    /// Parses a JSON document; syntax errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn build_group(&self) -> Result<ReflectionGroup> {
        let need =
            |x: Option<u32>, flag: &str| x.ok_or_else(|| Error::Config(format!("group {} needs {flag}", self.group)));
        match self.group.to_ascii_lowercase().as_str() {
            "cyclic" => ReflectionGroup::cyclic(need(self.d, "d")?),
            "b2" => ReflectionGroup::weyl_b2(),
            "dihedral" => ReflectionGroup::dihedral(need(self.m, "m")?),
            other => Err(Error::Config(format!("unknown group {other:?} (cyclic, b2, dihedral)"))),
        }
        .map_err(|e| match e {
            Error::InvalidArgument(msg) => Error::Config(msg),
            e => e,
        })
    }

    /// The `c` parameter, from `c` directly or from `k` through `κ^{-1}`.
    /// Exactly one of the two must be present.
    pub fn params(&self, g: &ReflectionGroup) -> Result<ParamC> {
        match (&self.c, &self.k) {
            (Some(_), Some(_)) => Err(Error::Config("give either c or k, not both".into())),
            (None, None) => Err(Error::Config("parameters missing: give c or k".into())),
            (Some(c), None) => c_from_spec(g, c),
            (None, Some(k)) => Ok(kappa_inverse(g, &k_from_spec(g, k)?)),
        }
    }

    /// The seed, which every numeric command requires.
    pub fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| Error::Config("this command needs a seed".into()))
    }
}

fn literal(l: &Lit) -> Result<Cyclotomic> {
    let s = &l.0;
    Cyclotomic::parse(s.trim()).map_err(|e| Error::Config(format!("parameter {s:?}: {e}")))
}

fn c_from_spec(g: &ReflectionGroup, c: &CSpec) -> Result<ParamC> {
    let n = g.n_classes_ref();
    let values = match c {
        CSpec::Listed(v) => v.iter().map(literal).collect::<Result<Vec<_>>>()?,
        CSpec::Named(map) => {
            let mut out = vec![None; n];
            for (name, val) in map {
                let i = g.class_by_name(name).ok_or_else(|| {
                    Error::Config(format!(
                        "{} has no reflection class {name:?} (classes {:?})",
                        g.kind.label(),
                        g.class_names
                    ))
                })?;
                out[i] = Some(literal(val)?);
            }
            out.into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| Error::Config(format!("missing value for class {}", g.class_names[i]))))
                .collect::<Result<Vec<_>>>()?
        }
    };
    ParamC::new(g, values).map_err(|e| Error::Config(e.to_string()))
}

fn k_from_spec(g: &ReflectionGroup, k: &KSpec) -> Result<ParamK> {
    let lists: Vec<Vec<Lit>> = match k {
        KSpec::Single(v) if g.orbits.len() == 1 => vec![v.clone()],
        KSpec::Single(_) => {
            return Err(Error::Config(format!(
                "{} has {} hyperplane orbits: give one k list per orbit",
                g.kind.label(),
                g.orbits.len()
            )))
        }
        KSpec::PerOrbit(v) => v.clone(),
    };
    let values = lists.iter().map(|l| l.iter().map(literal).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    ParamK::new(g, values).map_err(|e| Error::Config(e.to_string()))
}

/// Reads `a=1,b=2` (keyed) or `1,2` (in class order).
pub fn parse_c_arg(s: &str) -> Result<CSpec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.is_empty() {
        return Err(Error::Config("empty c parameter list".into()));
    }
    if parts.iter().all(|p| p.contains('=')) {
        let mut map = std::collections::BTreeMap::new();
        for p in parts {
            let (k, v) = p.split_once('=').expect("checked above");
            if map.insert(k.trim().to_string(), Lit(v.trim().to_string())).is_some() {
                return Err(Error::Config(format!("class {k:?} given twice")));
            }
        }
        Ok(CSpec::Named(map))
    } else if parts.iter().any(|p| p.contains('=')) {
        Err(Error::Config("mix of keyed and positional c values".into()))
    } else {
        Ok(CSpec::Listed(parts.into_iter().map(Lit::from).collect()))
    }
}

/// Reads `1,1,-2`, or `1,-1;2,-2` with one group per hyperplane orbit.
pub fn parse_k_arg(s: &str) -> Result<KSpec> {
    let groups: Vec<Vec<Lit>> = s
        .split(';')
        .map(|grp| grp.split(',').map(str::trim).filter(|p| !p.is_empty()).map(Lit::from).collect())
        .collect();
    if groups.iter().any(Vec::is_empty) {
        return Err(Error::Config("empty k parameter list".into()));
    }
    Ok(if groups.len() == 1 {
        KSpec::Single(groups.into_iter().next().expect("one group"))
    } else {
        KSpec::PerOrbit(groups)
    })
}

/// Short machine name of a group, as used in configs.
pub fn group_key(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::Cyclic(_) => "cyclic",
        GroupKind::B2 => "b2",
        GroupKind::Dihedral(_) => "dihedral",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_configs() {
        let cfg = RunConfig::from_json(r#"{"group":"b2","c":{"a":"1","b":"2"},"seed":7}"#).unwrap();
        let g = cfg.build_group().unwrap();
        assert_eq!(g.order(), 8);
        let c = cfg.params(&g).unwrap();
        assert_eq!(c.values[g.class_by_name("b").unwrap()], Cyclotomic::from_int(2));

        let cfg = RunConfig::from_json(r#"{"group":"cyclic","d":3,"k":[1,"1",-2]}"#).unwrap();
        let g = cfg.build_group().unwrap();
        assert!(!cfg.params(&g).unwrap().is_zero());
        assert!(matches!(cfg.seed(), Err(Error::Config(_))));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = RunConfig::from_json("{\"group\": \"b2\",\n  \"d\": }").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(matches!(RunConfig::from_json(r#"{"group":"b2","bogus":1}"#), Err(Error::Config(_))));
        assert!(matches!(RunConfig::from_json(r#"{"group":"b2","c":[0.5,1]}"#), Err(Error::Config(_))));
    }

    #[test]
    fn parameter_errors() {
        let both = RunConfig {
            group: "b2".into(),
            c: Some(CSpec::Listed(vec!["1".into(), "2".into()])),
            k: Some(KSpec::Single(vec![])),
            ..Default::default()
        };
        let g = both.build_group().unwrap();
        assert!(matches!(both.params(&g), Err(Error::Config(_))));
        let neither = RunConfig { group: "b2".into(), ..Default::default() };
        assert!(matches!(neither.params(&g), Err(Error::Config(_))));
        let bad = RunConfig { group: "b2".into(), c: Some(parse_c_arg("a=1,q=2").unwrap()), ..Default::default() };
        assert!(matches!(bad.params(&g), Err(Error::Config(_))));
        assert!(matches!(
            RunConfig { group: "cyclic".into(), ..Default::default() }.build_group(),
            Err(Error::Config(_))
        ));
        assert!(matches!(RunConfig { group: "e8".into(), ..Default::default() }.build_group(), Err(Error::Config(_))));
    }

    #[test]
    fn command_line_literals() {
        assert_eq!(parse_c_arg("1, 2").unwrap(), CSpec::Listed(vec!["1".into(), "2".into()]));
        assert!(matches!(parse_c_arg("a=1,b=2").unwrap(), CSpec::Named(m) if m.len() == 2));
        assert!(parse_c_arg("a=1,2").is_err());
        assert_eq!(parse_k_arg("1,1,-2").unwrap(), KSpec::Single(vec!["1".into(), "1".into(), "-2".into()]));
        assert!(matches!(parse_k_arg("1,-1;2,-2").unwrap(), KSpec::PerOrbit(v) if v.len() == 2));
    }
}
