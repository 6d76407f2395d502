//! Complex literals on the command line: `re`, `imi`, `re+imi`, `re-imi`.

use heun_ghf::Complex64;

pub const GRAMMAR: &str =
    "Complex values: `re`, `imi`, `re+imi` or `re-imi`, e.g. `2`, `-0.5i`, `1.5-2e-3i`.";

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a complex literal ({GRAMMAR})");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        return Ok(Complex64::new(re, 0.0));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepted_forms() {
        let c = Complex64::new;
        assert_eq!(parse_complex("2").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("-1").unwrap(), c(-1.0, 0.0));
        assert_eq!(parse_complex("1.5+2i").unwrap(), c(1.5, 2.0));
        assert_eq!(parse_complex("1.5-2e-3i").unwrap(), c(1.5, -2e-3));
        assert_eq!(parse_complex("-1e-2+3E+1i").unwrap(), c(-1e-2, 30.0));
        assert_eq!(parse_complex("-0.5i").unwrap(), c(0.0, -0.5));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("2-i").unwrap(), c(2.0, -1.0));
    }

    #[test]
    fn rejected_forms() {
        for s in ["", "abc", "1+2", "1+2j", "1++2i", "i2"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }
}
