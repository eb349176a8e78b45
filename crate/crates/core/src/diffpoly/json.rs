//! JSON form: a list of `{coeff: "num/den", vars: [{kind, index, dorder, exp}]}`.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{DiffPoly, FieldKind, FieldVar, Monomial, Rational, SymbolName};

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    vars: Vec<VarJson>,
}

#[derive(Serialize, Deserialize)]
struct VarJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    index: u32,
    dorder: u32,
    exp: u32,
}

impl VarJson {
    fn from_var(v: FieldVar, exp: u32) -> Self {
        let (kind, name) = match v.kind {
            FieldKind::B => ("b", None),
            FieldKind::C => ("c", None),
            FieldKind::Sym(n) => ("sym", Some(n.as_str().to_string())),
            FieldKind::Param(n) => ("param", Some(n.as_str().to_string())),
        };
        Self {
            kind: kind.to_string(),
            name,
            index: v.index,
            dorder: v.dorder,
            exp,
        }
    }

    fn to_var(&self) -> Result<FieldVar, String> {
        let name = || -> Result<SymbolName, String> {
            let n = self.name.as_deref().ok_or("symbol without name")?;
            SymbolName::new(n).map_err(|e| e.to_string())
        };
        let kind = match self.kind.as_str() {
            "b" => FieldKind::B,
            "c" => FieldKind::C,
            "sym" => FieldKind::Sym(name()?),
            "param" => FieldKind::Param(name()?),
            other => return Err(format!("unknown field kind `{other}`")),
        };
        if matches!(kind, FieldKind::B | FieldKind::C) && self.index == 0 {
            return Err("field index must be >= 1".into());
        }
        if self.exp == 0 {
            return Err("zero exponent".into());
        }
        Ok(FieldVar::new(kind, self.index, self.dorder))
    }
}

pub(crate) fn rational_to_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub(crate) fn rational_from_str(s: &str) -> Result<Rational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

impl Serialize for DiffPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(m, c)| TermJson {
                coeff: rational_to_string(c),
                vars: m
                    .factors()
                    .iter()
                    .map(|&(v, e)| VarJson::from_var(v, e))
                    .collect(),
            })
            .collect();
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DiffPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(de)?;
        let mut out = DiffPoly::zero();
        for t in terms {
            let c = rational_from_str(&t.coeff).map_err(D::Error::custom)?;
            let mut m = Monomial::one();
            for v in &t.vars {
                m.mul_var(v.to_var().map_err(D::Error::custom)?, v.exp);
            }
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl Serialize for FieldVar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldVar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        super::parse_field_var(&s).map_err(D::Error::custom)
    }
}
