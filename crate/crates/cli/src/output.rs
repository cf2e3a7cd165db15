//! Deterministic numeric formatting and CSV assembly.

/// Format with 12 significant digits: plain decimal in a sane exponent
/// range, scientific outside it. Locale-free and byte-stable across runs.
pub fn fmt_g(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        format!("{v:.11e}")
    } else {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    }
}

/// RFC-4180-style CSV: comma separation, LF line endings, no quoting
/// needed for purely numeric tables.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Self { buf }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_plain_and_stable() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1.00000000000");
        assert_eq!(fmt_g(0.15), "0.150000000000");
        assert_eq!(fmt_g(-2.5), "-2.50000000000");
        assert_eq!(fmt_g(1e15), "1.00000000000e15");
        assert_eq!(fmt_g(3.25e-9), "3.25000000000e-9");
        assert_eq!(fmt_g(f64::INFINITY), "inf");
        assert_eq!(fmt_g(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn twelve_significant_digits_survive_round_trip() {
        for &v in &[0.1234567890123, 987654.321, 4.2e-4, 7.0 / 3.0] {
            let parsed: f64 = fmt_g(v).parse().unwrap();
            assert!(((parsed - v) / v).abs() < 1e-11, "{v} -> {}", fmt_g(v));
        }
    }

    #[test]
    fn csv_layout() {
        let mut c = Csv::new(&["a", "b"]);
        c.row(&["1".into(), "2".into()]);
        assert_eq!(c.into_string(), "a,b\n1,2\n");
    }
}
