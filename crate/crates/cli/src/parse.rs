//! Argument parsers for complex and rational values.

use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;

/// `"re,im"`, a bare real, or the `num_complex` form `"a+bi"`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let z = if let Some((re, im)) = t.split_once(',') {
        let re = re.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?;
        let im = im.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?;
        Complex64::new(re, im)
    } else {
        Complex64::from_str(t).map_err(|_| format!("`{s}` is not a complex number (use re,im)"))?
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|_| format!("`{s}` is not a rational number (use p/q)"))
}

/// `0 < |q0| < 1`.
pub fn parse_q0(s: &str) -> Result<Complex64, String> {
    let z = parse_complex(s)?;
    let r = z.norm();
    if r > 0.0 && r < 1.0 {
        Ok(z)
    } else {
        Err(format!("q0 = {z} must satisfy 0 < |q0| < 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.5,-0.25").unwrap(), Complex64::new(0.5, -0.25));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("inf,0").is_err());
        assert!(parse_q0("1,0").is_err());
        assert!(parse_q0("0,0").is_err());
        assert_eq!(parse_rational("3/2").unwrap(), BigRational::new(3.into(), 2.into()));
    }
}
