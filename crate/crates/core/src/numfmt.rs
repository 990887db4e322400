/// Render `x` with `digits` significant digits in the style of C's `%g`:
/// plain notation for moderate exponents, scientific otherwise, trailing
/// zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::format_sig;

    #[test]
    fn nine_digits() {
        assert_eq!(format_sig(11.0 / 18.0, 9), "0.611111111");
        assert_eq!(format_sig(0.25, 9), "0.25");
        assert_eq!(format_sig(3.0, 9), "3");
        assert_eq!(format_sig(-1.5, 9), "-1.5");
        assert_eq!(format_sig(1.0e-7, 9), "1e-7");
        assert_eq!(format_sig(123456789012.0, 9), "1.23456789e11");
        assert_eq!(format_sig(0.0, 9), "0");
    }
}
