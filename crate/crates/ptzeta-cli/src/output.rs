//! A small value tree serialized as JSON with 17 significant digits, or as CSV rows.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA: &str = "ptzeta/1";

#[derive(Clone, Debug)]
pub enum Out {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Out>),
    Obj(Vec<(String, Out)>),
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

impl Out {
    pub fn obj() -> Self {
        Out::Obj(Vec::new())
    }

    pub fn with(mut self, key: &str, v: impl Into<Out>) -> Self {
        if let Out::Obj(ref mut m) = self {
            m.push((key.to_string(), v.into()));
        }
        self
    }

    pub fn complex(z: Complex64) -> Self {
        Out::obj().with("re", z.re).with("im", z.im)
    }

    pub fn nums(v: &[f64]) -> Self {
        Out::Arr(v.iter().map(|&x| Out::Num(x)).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable tree")
    }
}

impl From<f64> for Out {
    fn from(x: f64) -> Self {
        Out::Num(x)
    }
}

impl From<bool> for Out {
    fn from(x: bool) -> Self {
        Out::Bool(x)
    }
}

impl From<i64> for Out {
    fn from(x: i64) -> Self {
        Out::Int(x)
    }
}

impl From<usize> for Out {
    fn from(x: usize) -> Self {
        Out::Int(x as i64)
    }
}

impl From<u32> for Out {
    fn from(x: u32) -> Self {
        Out::Int(x as i64)
    }
}

impl From<&str> for Out {
    fn from(x: &str) -> Self {
        Out::Str(x.to_string())
    }
}

impl From<String> for Out {
    fn from(x: String) -> Self {
        Out::Str(x)
    }
}

impl From<Complex64> for Out {
    fn from(z: Complex64) -> Self {
        Out::complex(z)
    }
}

impl<T: Into<Out>> From<Option<T>> for Out {
    fn from(x: Option<T>) -> Self {
        x.map_or(Out::Null, Into::into)
    }
}

impl<T: Into<Out>> From<Vec<T>> for Out {
    fn from(v: Vec<T>) -> Self {
        Out::Arr(v.into_iter().map(Into::into).collect())
    }
}

impl Serialize for Out {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Out::Null => s.serialize_unit(),
            Out::Bool(b) => s.serialize_bool(*b),
            Out::Int(i) => s.serialize_i64(*i),
            Out::Num(x) => RawValue::from_string(num(*x)).expect("valid number").serialize(s),
            Out::Str(t) => s.serialize_str(t),
            Out::Arr(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for x in v {
                    seq.serialize_element(x)?;
                }
                seq.end()
            }
            Out::Obj(m) => {
                let mut map = s.serialize_map(Some(m.len()))?;
                for (k, v) in m {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
    }
}

/// Rows for `--format csv`.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
