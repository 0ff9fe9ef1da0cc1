use num_bigint::BigInt;
use thiserror::Error;

use super::{Int, MultiPoly, Rat, UniPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected character {0:?} at position {1}")]
    Unexpected(char, usize),
    #[error("bad integer literal {0:?}")]
    BadInt(String),
    #[error("variable x{0} out of range for {1} variables")]
    VarOutOfRange(usize, usize),
    #[error("the variable t is not allowed here")]
    TNotAllowed,
    #[error("variables x<k> are not allowed here")]
    XNotAllowed,
    #[error("bad JSON polynomial: {0}")]
    BadJson(String),
}

#[derive(Debug, Clone)]
struct RawTerm {
    coeff: Int,
    // (variable index, exponent); index 0 is `t`, index k >= 1 is `x<k>`.
    factors: Vec<(usize, u32)>,
}

/// Tokenize the shared grammar: terms joined by `+`/`-`, each term a `*`
/// separated product of an optional integer coefficient and powers
/// `x<k>^<e>` or `t^<e>`.
fn parse_terms(s: &str) -> Result<Vec<RawTerm>, ParseError> {
    let bytes: Vec<char> = s.chars().collect();
    let n = bytes.len();
    let mut i = 0;
    let mut terms = Vec::new();
    let mut sign: i32 = 1;
    let mut seen_any = false;

    fn skip_ws(bytes: &[char], i: &mut usize) {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    }

    fn read_uint(bytes: &[char], i: &mut usize) -> Option<String> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i > start {
            Some(bytes[start..*i].iter().collect())
        } else {
            None
        }
    }

    loop {
        skip_ws(&bytes, &mut i);
        if i >= n {
            break;
        }
        // Sign prefix of the term.
        while i < n && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&bytes, &mut i);
        }
        if i >= n {
            return Err(ParseError::Empty);
        }
        let mut coeff = Int::from(sign);
        sign = 1;
        let mut factors: Vec<(usize, u32)> = Vec::new();
        let mut expect_factor = true;
        while expect_factor {
            skip_ws(&bytes, &mut i);
            if i >= n {
                return Err(ParseError::Empty);
            }
            let c = bytes[i];
            if c.is_ascii_digit() {
                let lit = read_uint(&bytes, &mut i).unwrap();
                let v: BigInt = lit.parse().map_err(|_| ParseError::BadInt(lit.clone()))?;
                coeff *= v;
            } else if c == 'x' || c == 't' {
                i += 1;
                let var = if c == 't' {
                    0usize
                } else {
                    let lit = read_uint(&bytes, &mut i)
                        .ok_or(ParseError::Unexpected('x', i.saturating_sub(1)))?;
                    lit.parse::<usize>().map_err(|_| ParseError::BadInt(lit))?
                };
                let mut exp = 1u32;
                skip_ws(&bytes, &mut i);
                if i < n && bytes[i] == '^' {
                    i += 1;
                    skip_ws(&bytes, &mut i);
                    let lit = read_uint(&bytes, &mut i)
                        .ok_or_else(|| ParseError::Unexpected('^', i.saturating_sub(1)))?;
                    exp = lit.parse::<u32>().map_err(|_| ParseError::BadInt(lit))?;
                }
                factors.push((var, exp));
            } else {
                return Err(ParseError::Unexpected(c, i));
            }
            skip_ws(&bytes, &mut i);
            if i < n && bytes[i] == '*' {
                i += 1;
                expect_factor = true;
            } else if i < n && (bytes[i] == 'x' || bytes[i] == 't') {
                // Implicit product like `3x1` or `x1 x2`.
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        terms.push(RawTerm { coeff, factors });
        seen_any = true;
        skip_ws(&bytes, &mut i);
        if i >= n {
            break;
        }
        if bytes[i] != '+' && bytes[i] != '-' {
            return Err(ParseError::Unexpected(bytes[i], i));
        }
    }
    if !seen_any {
        return Err(ParseError::Empty);
    }
    Ok(terms)
}

/// Parse a multivariate polynomial in x1..xm. When `m` is 0 the variable
/// count is inferred from the largest index present.
pub fn parse_multipoly(s: &str, m: usize) -> Result<MultiPoly, ParseError> {
    let terms = parse_terms(s)?;
    let mut max_var = 0usize;
    for t in &terms {
        for &(v, _) in &t.factors {
            if v == 0 {
                return Err(ParseError::TNotAllowed);
            }
            max_var = max_var.max(v);
        }
    }
    let m = if m == 0 { max_var.max(1) } else { m };
    if max_var > m {
        return Err(ParseError::VarOutOfRange(max_var, m));
    }
    let mut out = MultiPoly::zero(m);
    for t in terms {
        let mut e = vec![0u32; m];
        for (v, exp) in t.factors {
            e[v - 1] += exp;
        }
        out.add_term(e, t.coeff);
    }
    Ok(out)
}

/// Parse a univariate polynomial in `t`.
pub fn parse_unipoly(s: &str) -> Result<UniPoly, ParseError> {
    let terms = parse_terms(s)?;
    let mut coeffs: Vec<Rat> = Vec::new();
    for t in terms {
        let mut e = 0u32;
        for (v, exp) in t.factors {
            if v != 0 {
                return Err(ParseError::XNotAllowed);
            }
            e += exp;
        }
        let idx = e as usize;
        if coeffs.len() <= idx {
            coeffs.resize(idx + 1, Rat::from_integer(Int::from(0)));
        }
        coeffs[idx] += Rat::from_integer(t.coeff);
    }
    Ok(UniPoly::from_rats(coeffs))
}

/// Parse the JSON form: a list of `[[e1,...,em], coeff]` pairs.
pub fn parse_multipoly_json(s: &str) -> Result<MultiPoly, ParseError> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| ParseError::BadJson(e.to_string()))?;
    let arr = v
        .as_array()
        .ok_or_else(|| ParseError::BadJson("expected a list of [exponents, coeff]".into()))?;
    let mut terms: Vec<(Vec<u32>, Int)> = Vec::new();
    let mut m = 0usize;
    for item in arr {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| ParseError::BadJson("each term must be [exponents, coeff]".into()))?;
        let exps: Vec<u32> = pair[0]
            .as_array()
            .ok_or_else(|| ParseError::BadJson("exponents must be a list".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as u32)
                    .ok_or_else(|| ParseError::BadJson("exponents must be nonnegative ints".into()))
            })
            .collect::<Result<_, _>>()?;
        let coeff = match (pair[1].as_i64(), pair[1].as_str()) {
            (Some(c), _) => Int::from(c),
            (None, Some(s)) => s
                .parse::<BigInt>()
                .map_err(|_| ParseError::BadInt(s.to_string()))?,
            _ => return Err(ParseError::BadJson("coeff must be an integer".into())),
        };
        m = m.max(exps.len());
        terms.push((exps, coeff));
    }
    if m == 0 {
        m = 1;
    }
    let mut out = MultiPoly::zero(m);
    for (mut e, c) in terms {
        e.resize(m, 0);
        out.add_term(e, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let f = parse_multipoly("x1^2*x2 - 3*x3^3", 3).unwrap();
        assert_eq!(f.coeff(&[2, 1, 0]), Int::from(1));
        assert_eq!(f.coeff(&[0, 0, 3]), Int::from(-3));
        let g = parse_unipoly("t^2 - 2").unwrap();
        assert_eq!(g, UniPoly::from_ints(&[-2, 0, 1]));
        let h = parse_unipoly("-t + 4").unwrap();
        assert_eq!(h, UniPoly::from_ints(&[4, -1]));
        assert!(parse_multipoly("t^2", 1).is_err());
        assert!(parse_unipoly("x1", ).is_err());
    }

    #[test]
    fn json_form() {
        let f = parse_multipoly_json("[[[2,0],1],[[0,2],-2]]").unwrap();
        assert_eq!(f, parse_multipoly("x1^2 - 2*x2^2", 2).unwrap());
    }

    #[test]
    fn display_round_trip() {
        let f = parse_multipoly("2*x1^2 - x2^2 + x1*x2", 2).unwrap();
        let s = format!("{}", f);
        assert_eq!(parse_multipoly(&s, 2).unwrap(), f);
        let g = parse_unipoly("3*t^4 - t - 7").unwrap();
        assert_eq!(parse_unipoly(&format!("{}", g)).unwrap(), g);
    }
}
