//! Plot-ready CSV output: fixed notation, six significant digits, `\n` line
//! endings.

use std::fmt::Write as _;

const SIG_DIGITS: i32 = 6;

/// Format `x` in fixed notation with six significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return format!("{:.*}", (SIG_DIGITS - 1) as usize, 0.0);
    }
    let decimals = |v: f64| (SIG_DIGITS - 1 - v.abs().log10().floor() as i32).max(0) as usize;
    let mut d = decimals(x);
    let s = format!("{x:.d$}");
    // Rounding may carry into a new leading digit (9.999996 -> 10.00000).
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded != 0.0 && decimals(rounded) < d {
        d = decimals(rounded);
    }
    let s = format!("{x:.d$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

#[derive(Debug, Default)]
pub struct CsvBuf {
    text: String,
}

impl CsvBuf {
    pub fn with_header(header: &str) -> Self {
        let mut b = Self::default();
        b.line(header);
        b
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.text.push(',');
            }
            first = false;
            self.text.push_str(f.as_ref());
        }
        self.text.push('\n');
    }

    pub fn line(&mut self, s: &str) {
        let _ = writeln!(self.text, "{s}");
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits_fixed() {
        assert_eq!(fmt_num(0.85), "0.850000");
        assert_eq!(fmt_num(1.9078), "1.90780");
        assert_eq!(fmt_num(123.456789), "123.457");
        assert_eq!(fmt_num(1234567.0), "1234567");
        assert_eq!(fmt_num(0.000123456789), "0.000123457");
        assert_eq!(fmt_num(-0.5), "-0.500000");
        assert_eq!(fmt_num(0.0), "0.00000");
        assert_eq!(fmt_num(-0.0), "0.00000");
        assert_eq!(fmt_num(9.9999996), "10.0000");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_opt(None), "");
    }

    #[test]
    fn rows_are_comma_joined() {
        let mut b = CsvBuf::with_header("a,b");
        b.row(["1", ""]);
        assert_eq!(b.into_string(), "a,b\n1,\n");
    }
}
