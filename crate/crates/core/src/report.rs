//! Text formatting shared by CSV and JSON writers.

/// Shortest `%.12g`-style rendering: 12 significant digits, trailing zeros trimmed.
pub fn fmt_g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_fraction(&s)
    } else {
        let s = format!("{x:.11e}");
        match s.split_once('e') {
            Some((mantissa, e)) => format!("{}e{}", trim_fraction(mantissa), e),
            None => s,
        }
    }
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_g12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_g12(1.0), "1");
        assert_eq!(fmt_g12(-0.25), "-0.25");
        assert_eq!(fmt_g12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(1.5e-9), "1.5e-9");
        assert_eq!(fmt_g12(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn parses_back_within_relative_precision() {
        for &x in &[0.123456789012345, -7.77e-3, 2f64.sqrt(), 1e-7 / 3.0] {
            let y: f64 = fmt_g12(x).parse().unwrap();
            assert!(((x - y) / x).abs() < 1e-11);
        }
    }
}
