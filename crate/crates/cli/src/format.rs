//! Fixed, locale-free number formatting for CSV and console output.

/// Significant digits in every printed real.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`: fixed notation for decimal exponents in `[-5, 12)`, scientific
/// otherwise, trailing zeros removed.
pub fn real(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::real;

    #[test]
    fn matches_printf_g() {
        assert_eq!(real(-0.5409883534346632), "-0.540988353435");
        assert_eq!(real(-0.25), "-0.25");
        assert_eq!(real(0.0), "0");
        assert_eq!(real(10.0), "10");
        assert_eq!(real(1e-7), "1e-07");
        assert_eq!(real(1.5e-13), "1.5e-13");
        assert_eq!(real(123456789012345.0), "1.23456789012e+14");
        assert_eq!(real(0.0001234), "0.0001234");
        assert_eq!(real(-5.0), "-5");
        assert_eq!(real(f64::NAN), "nan");
        assert_eq!(real(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        assert_eq!(real(9.9999999999999), "10");
        assert_eq!(real(0.99999999999999), "1");
    }
}
