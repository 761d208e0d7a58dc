//! Micro-grammar for function expressions on the command line and in
//! experiment configs.
//!
//! ```text
//! function   := polynomial | "quadpow(" a "," eps0 "," p ")" | "quadnoise(" a "," eta "," seed ")"
//! polynomial := term (("+" | "-") term)*
//! term       := ["-"] coeff ["*"] ["x" ["^" int]] | ["-"] "x" ["^" int]
//! coeff      := decimal ["/" decimal]
//! ```

use num_traits::{One, Zero};

use super::expr::FunctionExpr;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Poly1, Rational};

pub fn parse_function(text: &str) -> Result<FunctionExpr> {
    let compact: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if let Some(args) = call_args(&compact, "quadpow") {
        let [a, eps0, p] = numbers::<3>(&args, "quadpow")?;
        return FunctionExpr::quad_plus_power(a, eps0, p);
    }
    if let Some(args) = call_args(&compact, "quadnoise") {
        if args.len() != 3 {
            return Err(Error::Parse("quadnoise takes (a, eta, seed)".into()));
        }
        let [a, eta] = numbers::<2>(&args[..2], "quadnoise")?;
        let seed = args[2]
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("quadnoise seed '{}' is not an unsigned integer", args[2])))?;
        return FunctionExpr::quad_plus_noise(a, eta, seed);
    }
    FunctionExpr::polynomial(parse_polynomial(text)?)
}

fn call_args(text: &str, name: &str) -> Option<Vec<String>> {
    let inner = text.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::to_string).collect())
}

fn numbers<const N: usize>(args: &[String], name: &str) -> Result<[f64; N]> {
    if args.len() != N {
        return Err(Error::Parse(format!("{name} takes {N} numeric arguments")));
    }
    let mut out = [0.0; N];
    for (slot, arg) in out.iter_mut().zip(args) {
        *slot = arg
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("{name}: '{arg}' is not a number")))?;
    }
    Ok(out)
}

/// Parses a polynomial in `x` with exact rational coefficients, e.g.
/// `3/2*x^2 - x`.
pub fn parse_polynomial(text: &str) -> Result<Poly1> {
    let compact: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut poly = Poly1::zero();
    for (negative, term) in split_terms(&compact)? {
        let (coeff, degree) = parse_term(term)?;
        let coeff = if negative { -coeff } else { coeff };
        poly = &poly + &Poly1::monomial(coeff, degree);
    }
    Ok(poly)
}

fn split_terms(text: &str) -> Result<Vec<(bool, &str)>> {
    let mut terms = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    if matches!(bytes.first(), Some(b'+') | Some(b'-')) {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let ch = bytes[i];
        // a sign directly after '^' or '/' belongs to the number
        let glued = i > start && matches!(bytes[i - 1], b'^' | b'/' | b'*');
        if (ch == b'+' || ch == b'-') && !glued {
            if i == start {
                return Err(Error::Parse(format!("empty term in '{text}'")));
            }
            terms.push((negative, &text[start..i]));
            negative = ch == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= text.len() {
        return Err(Error::Parse(format!("dangling sign in '{text}'")));
    }
    terms.push((negative, &text[start..]));
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(Rational, u32)> {
    let bad = || Error::Parse(format!("cannot parse term '{term}'"));
    let Some(pos) = term.find('x') else {
        return Ok((parse_rational(term).ok_or_else(bad)?, 0));
    };
    let coeff_text = term[..pos].trim_end_matches('*');
    let coeff = if coeff_text.is_empty() {
        Rational::one()
    } else {
        parse_rational(coeff_text).ok_or_else(bad)?
    };
    let rest = &term[pos + 1..];
    let degree = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|d| d.parse::<u32>().ok())
            .ok_or_else(bad)?
    };
    if coeff.is_zero() {
        return Ok((Rational::zero(), 0));
    }
    Ok((coeff, degree))
}
