use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::Scalar;

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn parse_decimal(text: &str) -> Result<Scalar> {
    let bad = || Error::InvalidArgument(format!("not a decimal number: `{text}`"));
    let t = text.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    let all = format!("{int_part}{frac_part}");
    if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if exp.unsigned_abs() > 4000 {
        return Err(bad());
    }
    let n: BigInt = all.parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut q = if shift >= 0 {
        Scalar::from_integer(n * num_traits::pow(ten, shift as usize))
    } else {
        Scalar::new(n, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Exact real and imaginary parts of `re`, `re+imi`, `re-imi` or `imi`.
pub fn parse_complex_exact(text: &str) -> Result<(Scalar, Scalar)> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix('i') else {
        return Ok((parse_decimal(&t)?, Scalar::zero()));
    };
    let b = body.as_bytes();
    let split = (1..b.len())
        .rev()
        .find(|&k| matches!(b[k], b'+' | b'-') && !matches!(b[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_decimal(&body[..k])?, &body[k..]),
        None => (Scalar::zero(), body),
    };
    let im = match im {
        "" | "+" => crate::ring::int(1),
        "-" => crate::ring::int(-1),
        s => parse_decimal(s)?,
    };
    Ok((re, im))
}

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let (re, im) = parse_complex_exact(text)?;
    let f = |q: &Scalar| {
        q.to_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::InvalidArgument(format!("`{text}` is out of range")))
    };
    Ok(Complex64::new(f(&re)?, f(&im)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("0").unwrap(), q(0, 1));
        assert_eq!(parse_decimal("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_decimal("1e9").unwrap(), q(1_000_000_000, 1));
        assert_eq!(parse_decimal("2.5E-2").unwrap(), q(1, 40));
        assert_eq!(parse_decimal(".5").unwrap(), q(1, 2));
        for bad in ["", "-", "1.2.3", "abc", "1e", "inf", "nan", "1e99999"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex_exact("0").unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(parse_complex_exact("0.5+0.25i").unwrap(), (q(1, 2), q(1, 4)));
        assert_eq!(parse_complex_exact("-1-2i").unwrap(), (q(-1, 1), q(-2, 1)));
        assert_eq!(parse_complex_exact("2i").unwrap(), (q(0, 1), q(2, 1)));
        assert_eq!(parse_complex_exact("-i").unwrap(), (q(0, 1), q(-1, 1)));
        assert_eq!(parse_complex_exact("1e-3+1e+2i").unwrap(), (q(1, 1000), q(100, 1)));
        assert_eq!(parse_complex("3 - i").unwrap(), Complex64::new(3.0, -1.0));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("1+2j").is_err());
    }
}
