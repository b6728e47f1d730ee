//! Parser for inner-function specs:
//!
//! ```text
//! spec     := factor ('*' factor)*
//! factor   := 'exp:' kv (',' kv)*          kv := ('kappa' | 'theta') '=' float
//!           | 'blaschke:' zero (';' zero)* zero := float ('+' | '-') float 'i'
//! ```

use super::{InnerError, InnerFunction};
use crate::scalar::Real;
use num_complex::Complex;
use std::fmt;
use thiserror::Error;

/// Parse failure, naming the offending token and its byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {position}: {message} (token `{token}`)")]
pub struct ParseError {
    pub position: usize,
    pub token: String,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, token: &str, message: impl fmt::Display) -> Self {
        Self { position, token: token.to_owned(), message: message.to_string() }
    }
}

/// Splits `s` (starting at byte `base` of the full spec) on `sep`,
/// keeping offsets.
fn split_at<'a>(s: &'a str, base: usize, sep: char) -> impl Iterator<Item = (usize, &'a str)> {
    let mut offset = base;
    s.split(sep).map(move |part| {
        let here = offset;
        offset += part.len() + sep.len_utf8();
        (here, part)
    })
}

fn parse_float<T: Real>(pos: usize, tok: &str) -> Result<T, ParseError> {
    let v: f64 = tok
        .trim()
        .parse()
        .map_err(|_| ParseError::new(pos, tok, "expected a number"))?;
    if !v.is_finite() {
        return Err(ParseError::new(pos, tok, "number must be finite"));
    }
    Ok(T::lit(v))
}

fn parse_complex<T: Real>(pos: usize, tok: &str) -> Result<Complex<T>, ParseError> {
    let body = tok
        .strip_suffix('i')
        .ok_or_else(|| ParseError::new(pos, tok, "complex zero must end in 'i'"))?;
    // split at the last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(|| ParseError::new(pos, tok, "expected <re>+<im>i"))?;
    let re = parse_float(pos, &body[..split])?;
    let (im_pos, im_tok) = match body[split..].strip_prefix('+') {
        Some(t) => (pos + split + 1, t),
        None => (pos + split, &body[split..]),
    };
    if im_tok.is_empty() || im_tok == "-" {
        return Err(ParseError::new(im_pos, tok, "missing imaginary part"));
    }
    let im = parse_float(im_pos, im_tok)?;
    Ok(Complex::new(re, im))
}

fn parse_factor<T: Real>(pos: usize, tok: &str) -> Result<InnerFunction<T>, ParseError> {
    let (head, rest) = tok
        .split_once(':')
        .ok_or_else(|| ParseError::new(pos, tok, "expected `exp:` or `blaschke:`"))?;
    let body_pos = pos + head.len() + 1;
    let invalid = |e: InnerError| ParseError::new(pos, tok, e);
    match head.trim() {
        "exp" => {
            let mut kappa = None;
            let mut theta = None;
            for (p, kv) in split_at(rest, body_pos, ',') {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| ParseError::new(p, kv, "expected key=value"))?;
                let vpos = p + k.len() + 1;
                let slot = match k.trim() {
                    "kappa" => &mut kappa,
                    "theta" => &mut theta,
                    _ => return Err(ParseError::new(p, k, "unknown key (expected kappa or theta)")),
                };
                if slot.is_some() {
                    return Err(ParseError::new(p, k, "duplicate key"));
                }
                *slot = Some(parse_float::<T>(vpos, v)?);
            }
            InnerFunction::exponential(kappa.unwrap_or(T::zero()), theta.unwrap_or(T::zero())).map_err(invalid)
        }
        "blaschke" => {
            let zeros = split_at(rest, body_pos, ';')
                .map(|(p, z)| parse_complex::<T>(p, z.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            InnerFunction::blaschke(zeros).map_err(invalid)
        }
        other => Err(ParseError::new(pos, other, "unknown inner-function kind")),
    }
}

/// Parses a spec such as `exp:kappa=1,theta=0*blaschke:0+1i;1+2i`.
pub fn parse_inner<T: Real>(spec: &str) -> Result<InnerFunction<T>, ParseError> {
    if spec.trim().is_empty() {
        return Err(ParseError::new(0, spec, "empty spec"));
    }
    let mut factors = split_at(spec, 0, '*')
        .map(|(p, f)| {
            if f.trim().is_empty() {
                Err(ParseError::new(p, f, "empty factor"))
            } else {
                parse_factor(p, f)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if factors.len() == 1 { factors.remove(0) } else { InnerFunction::Product(factors) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Phi = InnerFunction<f64>;

    #[test]
    fn parses_each_variant() {
        assert_eq!(parse_inner::<f64>("exp:kappa=1,theta=0").unwrap(), Phi::exponential(1.0, 0.0).unwrap());
        assert_eq!(parse_inner::<f64>("exp:kappa=2").unwrap(), Phi::exponential(2.0, 0.0).unwrap());
        assert_eq!(
            parse_inner::<f64>("blaschke:0+1i").unwrap(),
            Phi::blaschke(vec![Complex::new(0.0, 1.0)]).unwrap()
        );
        assert_eq!(
            parse_inner::<f64>("blaschke:1+1i;-2+0.5i").unwrap(),
            Phi::blaschke(vec![Complex::new(1.0, 1.0), Complex::new(-2.0, 0.5)]).unwrap()
        );
        let prod = parse_inner::<f64>("exp:kappa=0.5*blaschke:1e-1+2e0i").unwrap();
        assert_eq!(
            prod,
            Phi::Product(vec![
                Phi::exponential(0.5, 0.0).unwrap(),
                Phi::blaschke(vec![Complex::new(0.1, 2.0)]).unwrap()
            ])
        );
    }

    #[test]
    fn errors_name_the_token() {
        let e = parse_inner::<f64>("exp:kapa=1").unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (4, "kapa"));
        let e = parse_inner::<f64>("blaschke:0+1i;3+xi").unwrap_err();
        assert_eq!(e.position, 16);
        let e = parse_inner::<f64>("exp:kappa=1*gauss:1").unwrap_err();
        assert_eq!((e.position, e.token.as_str()), (12, "gauss"));
        let e = parse_inner::<f64>("blaschke:1-1i").unwrap_err();
        assert!(e.message.contains("upper half-plane"), "{e}");
        let e = parse_inner::<f64>("exp:kappa=-1").unwrap_err();
        assert!(e.message.contains("kappa"), "{e}");
        assert!(parse_inner::<f64>("").is_err());
        assert!(parse_inner::<f64>("exp:kappa=1**exp:kappa=2").is_err());
        assert!(parse_inner::<f64>("blaschke:1+2").is_err());
        assert!(parse_inner::<f64>("exp:kappa=1,kappa=2").is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(kappa in 0.0f64..10.0, theta in -3.0f64..3.0,
                               re in -5.0f64..5.0, im in 0.01f64..5.0) {
            let phi = Phi::Product(vec![
                Phi::exponential(kappa, theta).unwrap(),
                Phi::blaschke(vec![Complex::new(re, im), Complex::new(-re, im * 2.0)]).unwrap(),
            ]);
            let back = parse_inner::<f64>(&phi.to_string()).unwrap();
            prop_assert_eq!(back, phi);
        }
    }
}
