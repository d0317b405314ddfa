//! Shortest-round-trip-safe decimal output with 17 significant digits.

/// Formats `x` like C's `%.17g`: 17 significant digits, trailing zeros
/// stripped, scientific notation outside `[1e-4, 1e17)`.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        strip_zeros(format!("{:.*}", decimals, x))
    } else {
        let m = strip_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g17() {
        assert_eq!(sig17(1.5), "1.5");
        assert_eq!(sig17(1.0), "1");
        assert_eq!(sig17(0.1), "0.10000000000000001");
        assert_eq!(sig17(-2.0), "-2");
        assert_eq!(sig17(1e20), "1e+20");
        assert_eq!(sig17(1.25e-7), "1.2499999999999999e-07");
        assert_eq!(sig17(16384.0), "16384");
    }

    #[test]
    fn round_trips() {
        for &x in &[0.1, 1.0 / 3.0, std::f64::consts::PI * 1e5, 6.02e23, 1e-300, 0.4844] {
            let back: f64 = sig17(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits());
        }
    }
}
