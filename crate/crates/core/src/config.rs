//! Job files. Rationals are written as `"p/q"` strings and never as floats;
//! integers may be TOML integers or decimal strings (for values beyond `i64`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::densify::{enumerate_neighborhoods, StagePlan};
use crate::group::{CoordinateMap, GroupElement, GroupPresentation};
use crate::torus::{parse_rational, Arc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("cannot parse job file: {0}")]
    Parse(String),
    #[error("invalid job: {0}")]
    Invalid(String),
}

fn invalid(e: impl fmt::Display) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

/// An exact rational in a job or report file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational written as \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
                Err(E::custom(format!("float {v} rejected; write the value as \"p/q\"")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_rational(v).map(Rational).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// An integer of any size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
                Err(E::custom(format!("float {v} rejected where an integer is expected")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(Int)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(v.into())
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int(v)
    }
}

fn ints(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

/// Either invariant factors, or generators with relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariant_factors: Vec<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    /// Coordinates over the group's generators.
    Explicit { elements: Vec<Vec<Int>> },
    /// `n²·e_0` for `n = 1..=bound`.
    Squares { bound: u64 },
    /// `p·e_0` for primes `p <= bound`.
    Primes { bound: u64 },
    /// `n·e_0` for `start <= n <= end`.
    Range { start: Int, end: Int },
    /// Every element whose free coordinates equal `free`.
    TorsionFiber { free: Vec<Int> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcSpec {
    pub start: Rational,
    pub length: Rational,
}

impl ArcSpec {
    pub fn to_arc(&self) -> Result<Arc, ConfigError> {
        Arc::new(self.start.0.clone(), self.length.0.clone()).map_err(invalid)
    }

    pub fn from_arc(a: &Arc) -> Self {
        ArcSpec {
            start: Rational(a.start().clone()),
            length: Rational(a.length().clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ArcFamilySpec {
    Explicit { arcs: Vec<ArcSpec> },
    /// `count` arcs of the given length starting at `j/count`.
    Grid { count: u64, length: Rational },
}

fn default_blocks() -> usize {
    1
}

fn default_resolution() -> usize {
    256
}

fn default_max_n() -> u64 {
    10
}

fn is_default_blocks(v: &usize) -> bool {
    *v == default_blocks()
}

fn is_default_resolution(v: &usize) -> bool {
    *v == default_resolution()
}

fn is_default_max_n(v: &u64) -> bool {
    *v == default_max_n()
}

fn is_false(v: &bool) -> bool {
    !v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub k: usize,
    pub budget: u64,
    #[serde(default = "default_blocks", skip_serializing_if = "is_default_blocks")]
    pub max_blocks: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(default = "default_resolution", skip_serializing_if = "is_default_resolution")]
    pub grid_resolution: usize,
    /// Allow stages to be certified by an element already in the subgroup.
    #[serde(default, skip_serializing_if = "is_false")]
    pub reuse: bool,
    /// Largest `n` for the wideness analysis.
    #[serde(default = "default_max_n", skip_serializing_if = "is_default_max_n")]
    pub max_n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub group: GroupSpec,
    pub set: SetSpec,
    pub arcs: ArcFamilySpec,
    /// Subsets `S'` for the wideness analysis, as explicit element lists.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<Vec<Vec<Int>>>,
}

/// A job with every field turned into library objects.
#[derive(Clone, Debug)]
pub struct Job {
    pub group: GroupPresentation,
    pub set: Vec<GroupElement>,
    pub plan: StagePlan,
    pub probes: Vec<Vec<GroupElement>>,
}

/// Largest set a generator expression may produce.
pub const MAX_SET_SIZE: u64 = 1 << 20;

fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

impl JobConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: JobConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("job configs serialize")
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.k == 0 {
            return Err(invalid("k must be positive"));
        }
        if self.budget == 0 {
            return Err(invalid("budget must be positive"));
        }
        if self.max_n == 0 {
            return Err(invalid("max_n must be positive"));
        }
        if self.grid_resolution == 0 {
            return Err(invalid("grid_resolution must be positive"));
        }
        Ok(())
    }

    pub fn presentation(&self) -> Result<(GroupPresentation, Option<CoordinateMap>), ConfigError> {
        let g = &self.group;
        match &g.relations {
            None => {
                if g.generators.is_some() {
                    return Err(invalid("`generators` only goes with `relations`"));
                }
                let p = GroupPresentation::new(g.free_rank, ints(&g.invariant_factors)).map_err(invalid)?;
                Ok((p, None))
            }
            Some(rows) => {
                if g.free_rank != 0 || !g.invariant_factors.is_empty() {
                    return Err(invalid("give either invariant factors or relations, not both"));
                }
                let ngens = g
                    .generators
                    .or_else(|| rows.first().map(Vec::len))
                    .ok_or_else(|| invalid("relations need `generators` when the list is empty"))?;
                let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| ints(r)).collect();
                let (p, map) = GroupPresentation::from_relations(ngens, &rows).map_err(invalid)?;
                Ok((p, Some(map)))
            }
        }
    }

    pub fn arc_family(&self) -> Result<Vec<Arc>, ConfigError> {
        match &self.arcs {
            ArcFamilySpec::Explicit { arcs } => {
                if arcs.is_empty() {
                    return Err(invalid("arc family is empty"));
                }
                arcs.iter().map(ArcSpec::to_arc).collect()
            }
            ArcFamilySpec::Grid { count, length } => {
                if *count == 0 {
                    return Err(invalid("grid needs at least one arc"));
                }
                (0..*count)
                    .map(|j| {
                        Arc::new(BigRational::new(j.into(), (*count).into()), length.0.clone())
                            .map_err(invalid)
                    })
                    .collect()
            }
        }
    }

    fn element(
        group: &GroupPresentation,
        map: Option<&CoordinateMap>,
        coords: Vec<BigInt>,
    ) -> Result<GroupElement, ConfigError> {
        match map {
            Some(m) => m.apply(group, &coords).map_err(invalid),
            None => group.element(coords).map_err(invalid),
        }
    }

    fn input_width(group: &GroupPresentation, map: Option<&CoordinateMap>) -> usize {
        map.map_or(group.width(), CoordinateMap::ngens)
    }

    fn axis_elements(
        group: &GroupPresentation,
        map: Option<&CoordinateMap>,
        values: impl Iterator<Item = BigInt>,
    ) -> Result<Vec<GroupElement>, ConfigError> {
        let width = Self::input_width(group, map);
        if width == 0 {
            return Err(invalid("the trivial group has no first generator"));
        }
        values
            .map(|v| {
                let mut c = vec![BigInt::zero(); width];
                c[0] = v;
                Self::element(group, map, c)
            })
            .collect()
    }

    pub fn elements(&self) -> Result<(GroupPresentation, Vec<GroupElement>), ConfigError> {
        let (group, map) = self.presentation()?;
        let map = map.as_ref();
        let set = match &self.set {
            SetSpec::Explicit { elements } => elements
                .iter()
                .map(|e| Self::element(&group, map, ints(e)))
                .collect::<Result<Vec<_>, _>>()?,
            SetSpec::Squares { bound } => {
                if *bound > MAX_SET_SIZE {
                    return Err(invalid("squares bound is too large"));
                }
                Self::axis_elements(&group, map, (1..=*bound).map(|n| BigInt::from(n) * n))?
            }
            SetSpec::Primes { bound } => {
                if *bound > MAX_SET_SIZE * 16 {
                    return Err(invalid("primes bound is too large"));
                }
                Self::axis_elements(&group, map, primes_up_to(*bound).into_iter().map(BigInt::from))?
            }
            SetSpec::Range { start, end } => {
                let len = &end.0 - &start.0 + 1;
                if len > BigInt::from(MAX_SET_SIZE) {
                    return Err(invalid("range is too long"));
                }
                let mut values = Vec::new();
                let mut v = start.0.clone();
                while v <= end.0 {
                    values.push(v.clone());
                    v += 1;
                }
                Self::axis_elements(&group, map, values.into_iter())?
            }
            SetSpec::TorsionFiber { free } => {
                if map.is_some() {
                    return Err(invalid("torsion_fiber needs an invariant-factor group"));
                }
                if free.len() != group.free_rank() {
                    return Err(invalid(format!(
                        "torsion_fiber gives {} free coordinates, the group has {}",
                        free.len(),
                        group.free_rank()
                    )));
                }
                let torsion = group.torsion_part();
                let size = torsion.order();
                if size.finite().is_none_or(|n| n > &BigInt::from(MAX_SET_SIZE)) {
                    return Err(invalid("torsion part is too large to enumerate"));
                }
                torsion
                    .enumerate()
                    .expect("finite torsion")
                    .into_iter()
                    .map(|t| {
                        let mut c = ints(free);
                        c.extend(t.into_coords());
                        Self::element(&group, None, c)
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        if set.is_empty() {
            return Err(invalid("S is empty"));
        }
        Ok((group, set))
    }

    pub fn resolve(&self) -> Result<Job, ConfigError> {
        self.validate()?;
        let (group, set) = self.elements()?;
        let (_, map) = self.presentation()?;
        let probes = self
            .probes
            .iter()
            .map(|p| {
                p.iter()
                    .map(|e| Self::element(&group, map.as_ref(), ints(e)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let family = self.arc_family()?;
        let plan = enumerate_neighborhoods(self.k, &family, self.max_blocks, self.budget).map_err(invalid)?;
        Ok(Job {
            group,
            set,
            plan,
            probes,
        })
    }

    /// `G = Z`, `S` the squares up to `bound²`, `k = 1`, one stage per arc of a
    /// `1/grid` partition of the circle.
    pub fn weyl(bound: u64, grid: u64, resolution: usize) -> Self {
        JobConfig {
            k: 1,
            budget: grid + 1,
            max_blocks: 1,
            epsilon: Some(Rational(BigRational::new(BigInt::one(), 100.into()))),
            grid_resolution: resolution,
            reuse: true,
            max_n: default_max_n(),
            output: None,
            group: GroupSpec {
                free_rank: 1,
                ..GroupSpec::default()
            },
            set: SetSpec::Squares { bound },
            arcs: ArcFamilySpec::Grid {
                count: grid,
                length: Rational(BigRational::new(BigInt::one(), grid.into())),
            },
            probes: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEYL: &str = r#"
k = 1
budget = 17
reuse = true
epsilon = "1/100"

[group]
free_rank = 1

[set]
kind = "squares"
bound = 50

[arcs]
kind = "grid"
count = 16
length = "1/8"
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = JobConfig::from_toml(WEYL).unwrap();
        assert_eq!(cfg.k, 1);
        let again = JobConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
        let job = cfg.resolve().unwrap();
        assert_eq!(job.set.len(), 50);
        assert_eq!(job.plan.len(), 17);
    }

    #[test]
    fn floats_are_rejected() {
        let bad = WEYL.replace("\"1/8\"", "0.125");
        let err = JobConfig::from_toml(&bad).unwrap_err();
        assert!(err.to_string().contains("float"), "{err}");
        let bad = WEYL.replace("\"1/8\"", "\"0.125\"");
        assert!(JobConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn relations_and_big_integers() {
        let text = r#"
k = 2
budget = 3

[group]
relations = [[2, 0], [0, 3]]

[set]
kind = "explicit"
elements = [[1, 0], [0, "100000000000000000000000000001"]]

[arcs]
kind = "explicit"
arcs = [{ start = "0", length = "1/2" }]
"#;
        let cfg = JobConfig::from_toml(text).unwrap();
        let (g, set) = cfg.elements().unwrap();
        assert_eq!(g.to_string(), "Z/6");
        assert_eq!(set.len(), 2);
        assert_eq!(JobConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn torsion_fiber_and_primes() {
        let mut cfg = JobConfig::weyl(10, 4, 64);
        cfg.set = SetSpec::Primes { bound: 30 };
        assert_eq!(cfg.elements().unwrap().1.len(), 10);
        cfg.group = GroupSpec {
            free_rank: 1,
            invariant_factors: vec![2.into(), 2.into()],
            ..GroupSpec::default()
        };
        cfg.set = SetSpec::TorsionFiber { free: vec![1.into()] };
        assert_eq!(cfg.elements().unwrap().1.len(), 4);
    }

    #[test]
    fn validation_errors() {
        let bad = WEYL.replace("k = 1", "k = 0");
        assert!(matches!(JobConfig::from_toml(&bad), Err(ConfigError::Invalid(_))));
        let bad = WEYL.replace("budget = 17", "budget = 1000");
        assert!(JobConfig::from_toml(&bad).unwrap().resolve().is_err());
        assert!(matches!(JobConfig::from_toml("k = ["), Err(ConfigError::Parse(_))));
    }
}
