//! Input documents and canonical JSON rendering.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

/// Largest magnitude written as a bare JSON number.
const MAX_SAFE: i64 = (1 << 53) - 1;

/// Integer read from a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

/// Rational read from an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

pub fn int_value(x: &BigInt) -> Value {
    if x.abs() <= BigInt::from(MAX_SAFE) {
        let small: i64 = x.try_into().expect("within the safe range");
        Value::from(small)
    } else {
        Value::String(x.to_string())
    }
}

pub fn rat_value(q: &BigRational) -> Value {
    if q.is_integer() {
        int_value(q.numer())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        int_value(&self.0).serialize(s)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rat_value(&self.0).serialize(s)
    }
}

struct NumberVisitor;

impl Visitor<'_> for NumberVisitor {
    type Value = BigRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a string \"p\" or \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        Ok(BigRational::from_integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok(BigRational::from_integer(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        parse_rational(v).ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(NumberVisitor).map(Rat)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let q = d.deserialize_any(NumberVisitor)?;
        if !q.is_integer() {
            return Err(de::Error::custom(format!("expected an integer, got {q}")));
        }
        Ok(Int(q.to_integer()))
    }
}

pub type Rows = Vec<Vec<Int>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<FlagsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iteration: Option<IterationSection>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<GroupSpec>,
    /// Classes to remove, in ambient coordinates of `ambient`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<MapSpec>,
}

/// Either a presentation matrix or `free_rank` plus cyclic orders.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: GroupSpec,
    pub target: GroupSpec,
    /// Rows indexed by target coordinates.
    pub matrix: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[Rat; 2]>>,
    pub exponent_vectors: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Int>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub almost_homogeneous: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complexity_one: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units_constant: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spherical: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_factorial_projective: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_invariants_constant: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IterationSection {
    pub config: Vec<ConfigEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profiles: Option<Vec<ProfileEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    pub vector: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileEntry {
    pub degree: Int,
    /// Points not listed are unramified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<FiberEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberEntry {
    pub point: Int,
    pub fiber_size: Int,
    pub multiplicities: Vec<Int>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Sorted keys, two-space indent, trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    // serde_json's default map is a BTreeMap, so keys come out sorted
    let value = serde_json::to_value(value).expect("documents serialize to JSON");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}
