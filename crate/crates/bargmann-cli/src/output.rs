//! Serialization helpers: JSON with 17-significant-digit floats and the
//! matching CSV cell format, so every file round-trips doubles exactly.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

/// JSON formatter that writes every float as `{:.16e}` (17 significant
/// digits, enough to reproduce any f64 bit pattern on parse).
pub struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.8e}")
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        CompactFormatter.begin_array_value(writer, first)
    }
}

/// Serializes to a JSON string with exact float formatting and a trailing
/// newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// One CSV cell with 17 significant digits.
pub fn csv_cell(value: f64) -> String {
    format!("{value:.16e}")
}
