//! JSON form: an array of four decimal strings `["a","b","c","d"]`.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BinaryCubic;

impl<S: Display> Serialize for BinaryCubic<S> {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut t = serializer.serialize_tuple(4)?;
        for x in [&self.a, &self.b, &self.c, &self.d] {
            t.serialize_element(&x.to_string())?;
        }
        t.end()
    }
}

impl<'de, S: FromStr> Deserialize<'de> for BinaryCubic<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: [String; 4] = Deserialize::deserialize(deserializer)?;
        let parse = |s: &String| s.parse::<S>().map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")));
        Ok(BinaryCubic { a: parse(&raw[0])?, b: parse(&raw[1])?, c: parse(&raw[2])?, d: parse(&raw[3])? })
    }
}
