//! Minimal CSV writer for sweep output.

use std::io::{self, Write};

/// Formats `v` with 17 significant digits in positional notation when the
/// exponent is moderate, and in scientific notation otherwise. Independent
/// of locale; always uses `.` as the decimal separator.
pub fn sig17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.16e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific format carries an exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

pub struct CsvWriter<W: Write> {
    out: W,
    columns: usize,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W, header: &[&str]) -> io::Result<Self> {
        out.write_all(header.join(",").as_bytes())?;
        out.write_all(b"\n")?;
        Ok(Self {
            out,
            columns: header.len(),
        })
    }

    pub fn row(&mut self, values: &[f64]) -> io::Result<()> {
        assert_eq!(values.len(), self.columns, "row width must match header");
        let line: Vec<String> = values.iter().map(|&v| sig17(v)).collect();
        self.out.write_all(line.join(",").as_bytes())?;
        self.out.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        assert_eq!(sig17(0.0), "0");
        assert_eq!(sig17(1.0), "1.0000000000000000");
        assert_eq!(sig17(0.25), "0.25000000000000000");
        for v in [0.07, 1.0 / 3.0, 0.1887218755408671, 1e-9, 123456.789, -2.5e-300] {
            let s = sig17(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
            let digits = s
                .split('e')
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .collect::<String>();
            assert_eq!(digits.trim_start_matches('0').len(), 17, "{s}");
        }
    }

    #[test]
    fn header_and_rows() {
        let mut buf = Vec::new();
        let mut w = CsvWriter::new(&mut buf, &["a", "b"]).unwrap();
        w.row(&[0.0, 0.5]).unwrap();
        w.finish().unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n0,0.50000000000000000\n");
    }
}
