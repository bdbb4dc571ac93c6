//! Serde helpers writing rationals as `"p/q"` strings.

pub mod ratio {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(|_| serde::de::Error::custom(format!("malformed rational `{s}`")))
    }
}

pub mod opt_ratio {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.trim().parse().map_err(|_| serde::de::Error::custom(format!("malformed rational `{s}`"))))
            .transpose()
    }
}
