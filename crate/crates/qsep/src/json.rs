//! Number formatting shared by state files and reports.
//!
//! Every float is written with 17 significant digits in lowercase
//! scientific notation (`-5.3084159999999998e-2`), so identical values always
//! produce identical bytes and parse back to the same `f64`.

use qsep_core::{CMatrix, Complex};
use serde::ser::{Error as _, SerializeMap};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::{CompactFormatter, Formatter};
use std::io;

/// An `f64` serialized in the fixed report format. Non-finite values become
/// `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        // fold -0.0 into 0.0
        let v = if self.0 == 0.0 { 0.0 } else { self.0 };
        let n: serde_json::Number = format!("{v:.16e}").parse().map_err(S::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        f64::deserialize(d).map(Real)
    }
}

/// A complex number as the two-element array `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cnum(pub f64, pub f64);

impl Cnum {
    pub fn to_complex(self) -> Complex {
        Complex::new(self.0, self.1)
    }
}

impl From<Complex> for Cnum {
    fn from(z: Complex) -> Self {
        Cnum(z.re, z.im)
    }
}

impl From<f64> for Cnum {
    fn from(x: f64) -> Self {
        Cnum(x, 0.0)
    }
}

impl Serialize for Cnum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [Real(self.0), Real(self.1)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cnum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Cnum(re, im))
    }
}

pub type Rows = Vec<Vec<Cnum>>;

pub fn matrix_rows(m: &CMatrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().map(|&z| Cnum::from(z)).collect()).collect()
}

pub fn reals(values: &[f64]) -> Vec<Real> {
    values.iter().map(|&x| Real(x)).collect()
}

/// Name/value pairs serialized as a JSON object in insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMap<T>(pub Vec<(String, T)>);

impl<T> Default for NamedMap<T> {
    fn default() -> Self {
        NamedMap(Vec::new())
    }
}

impl<T> NamedMap<T> {
    pub fn push(&mut self, name: impl Into<String>, value: T) {
        self.0.push((name.into(), value));
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<T: Serialize> Serialize for NamedMap<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<T> FromIterator<(String, T)> for NamedMap<T> {
    fn from_iter<I: IntoIterator<Item = (String, T)>>(iter: I) -> Self {
        NamedMap(iter.into_iter().collect())
    }
}

/// Pretty JSON with arrays of scalars kept on one line, so a complex number
/// prints as `[re, im]` and a real spectrum as a single row.
pub fn to_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, CompactLeaves::default());
    value.serialize(&mut ser).expect("report values always serialize");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

struct Frame {
    has_container: bool,
    empty: bool,
}

#[derive(Default)]
struct CompactLeaves {
    stack: Vec<Frame>,
    /// Set between `begin_array_value` and the first write of that value;
    /// holds whether it is the first element.
    pending: Option<bool>,
}

impl CompactLeaves {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.stack.len() {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    fn before_value<W: ?Sized + io::Write>(&mut self, w: &mut W, container: bool) -> io::Result<()> {
        let Some(first) = self.pending.take() else { return Ok(()) };
        let frame = self.stack.last_mut().expect("array values live inside an array");
        if !first {
            w.write_all(b",")?;
        }
        if container || frame.has_container {
            frame.has_container = true;
            self.newline(w)
        } else if !first {
            w.write_all(b" ")
        } else {
            Ok(())
        }
    }
}

macro_rules! scalar_writes {
    ($($name:ident: $t:ty),*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W, value: $t) -> io::Result<()> {
                self.before_value(w, false)?;
                CompactFormatter.$name(w, value)
            }
        )*
    };
}

impl Formatter for CompactLeaves {
    scalar_writes!(
        write_bool: bool, write_i8: i8, write_i16: i16, write_i32: i32, write_i64: i64, write_i128: i128,
        write_u8: u8, write_u16: u16, write_u32: u32, write_u64: u64, write_u128: u128,
        write_f32: f32, write_f64: f64, write_number_str: &str, write_raw_fragment: &str
    );

    fn write_null<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(b"null")
    }

    fn begin_string<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, false)?;
        w.write_all(b"\"")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, true)?;
        self.stack.push(Frame { has_container: false, empty: true });
        w.write_all(b"[")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W, first: bool) -> io::Result<()> {
        if let Some(f) = self.stack.last_mut() {
            f.empty = false;
        }
        self.pending = Some(first);
        Ok(())
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        Ok(())
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        let frame = self.stack.pop().expect("balanced arrays");
        if frame.has_container {
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.before_value(w, true)?;
        self.stack.push(Frame { has_container: true, empty: true });
        w.write_all(b"{")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if let Some(f) = self.stack.last_mut() {
            f.empty = false;
        }
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        Ok(())
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        let frame = self.stack.pop().expect("balanced objects");
        if !frame.empty {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }
}
