//! Decimal literals for points and grids, parsed at the context precision.

use genli_core::{BigComplex, BigContext, BigReal, Real};

/// `x`, `x+yi`, `x-yi`, `yi`, `i`, `-i`. Exponents (`1e-3`) are allowed in either part.
pub fn parse_complex(text: &str, ctx: &BigContext) -> Result<BigComplex, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex literal '{text}' (expected x, x+yi or yi)");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'I']) else {
        return Ok(BigComplex::new(ctx.parse(&s).map_err(|_| bad())?, ctx.zero()));
    };
    // Split at the last sign that does not belong to an exponent or the leading position.
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
    let re = ctx.parse(re).map_err(|_| bad())?;
    let im = ctx.parse(im.strip_prefix('+').unwrap_or(im)).map_err(|_| bad())?;
    Ok(BigComplex::new(re, im))
}

/// Comma-separated values; each item is a decimal or an inclusive
/// `start:stop:step` range.
pub fn parse_grid(text: &str, ctx: &BigContext) -> Result<Vec<BigReal>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [x] => out.push(parse_real(x, ctx)?),
            [a, b, step] => {
                let (a, b, step) = (parse_real(a, ctx)?, parse_real(b, ctx)?, parse_real(step, ctx)?);
                if !(step > ctx.zero()) {
                    return Err(format!("range '{item}' needs a positive step"));
                }
                let slack = step.clone() * ctx.real(1e-9);
                let count = ((b.clone() - &a) / &step).to_f64().floor();
                if count > 10_000.0 {
                    return Err(format!("range '{item}' has more than 10000 points"));
                }
                let mut k = 0i64;
                loop {
                    let x = a.clone() + step.clone() * ctx.int(k);
                    if x > b.clone() + &slack {
                        break;
                    }
                    out.push(x);
                    k += 1;
                }
            }
            _ => return Err(format!("invalid grid item '{item}' (expected x or start:stop:step)")),
        }
    }
    if out.is_empty() {
        return Err(format!("empty grid '{text}'"));
    }
    Ok(out)
}

pub fn parse_real(text: &str, ctx: &BigContext) -> Result<BigReal, String> {
    ctx.parse(text.trim()).map_err(|_| format!("invalid number '{text}'"))
}
