//! Complex literals of the form `re+imi`.

use crate::coeffalg::C64;
use crate::error::{Error, Result};

/// Parses `3`, `-2.5i`, `i`, `1e-3-2i`, `0.5+0.25i`, `inf` is rejected.
pub fn parse_complex(text: &str) -> Result<C64> {
    let t = text.trim();
    let bad = |msg: &str| Error::parse("complex literal", 0, format!("{msg} in `{t}`"));
    if t.is_empty() {
        return Err(bad("empty literal"));
    }
    let z = if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        // split at the last sign that does not belong to an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            s => s,
        };
        let re: f64 = re.parse().map_err(|_| bad("bad real part"))?;
        let im: f64 = im
            .strip_prefix('+')
            .unwrap_or(im)
            .parse()
            .map_err(|_| bad("bad imaginary part"))?;
        C64::new(re, im)
    } else {
        C64::new(t.parse().map_err(|_| bad("bad number"))?, 0.0)
    };
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(bad("non-finite value"));
    }
    Ok(z)
}

/// Shortest text that parses back to the same value.
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im.is_sign_negative() {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
