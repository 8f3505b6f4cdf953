//! Integer polynomials used as dynamical maps, and the shared polynomial text format.
//!
//! The text format is `x^3+2x+1` style: decimal coefficients, `^` exponents, `+`/`-`
//! separators, whitespace ignored. Moduli and field elements use the letter `x`; maps use `t`.
//! Canonical rendering lists powers in descending order, omits zero terms, and omits unit
//! coefficients except on the constant term.

use std::fmt;

use crate::error::{Error, Result};

/// Variable letter for moduli and field elements.
pub const FIELD_VAR: char = 'x';
/// Variable letter for dynamical maps.
pub const MAP_VAR: char = 't';

/// Largest exponent accepted by the parser; polynomials are stored densely.
pub const MAX_PARSE_DEGREE: usize = 1 << 20;

/// A polynomial with integer coefficients, constant term first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// The identity map `t`.
    pub fn identity() -> Self {
        Self::monomial(1)
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        Self { coeffs }
    }

    /// `t^exponent + c`.
    pub fn monomial_plus(exponent: usize, c: i64) -> Self {
        let mut coeffs = vec![0; exponent + 1];
        coeffs[exponent] = 1;
        coeffs[0] += c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients reduced into `{0, .., p-1}`, trimmed.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
            .collect();
        crate::fp_poly::trim(&mut out);
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_var(text, MAP_VAR)
    }

    pub fn parse_with_var(text: &str, var: char) -> Result<Self> {
        parse_coeffs(text, var).map(Self::new)
    }

    pub fn render(&self, var: char) -> String {
        render_terms(self.coeffs.iter().map(|&c| c as i128), var)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(MAP_VAR))
    }
}

/// Renders reduced F_p coefficients (constant first) in `x`.
pub fn render_fp(coeffs: &[u64], var: char) -> String {
    render_terms(coeffs.iter().map(|&c| c as i128), var)
}

fn render_terms(coeffs: impl DoubleEndedIterator<Item = i128> + ExactSizeIterator, var: char) -> String {
    let mut out = String::new();
    let len = coeffs.len();
    for (rev_i, c) in coeffs.rev().enumerate() {
        let power = len - 1 - rev_i;
        if c == 0 {
            continue;
        }
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.unsigned_abs();
        if power == 0 || mag != 1 {
            out.push_str(&mag.to_string());
        }
        match power {
            0 => {}
            1 => out.push(var),
            k => {
                out.push(var);
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses polynomial text into dense integer coefficients (constant first, untrimmed).
/// Repeated powers are summed. Positions in errors are 1-based character columns.
pub fn parse_coeffs(text: &str, var: char) -> Result<Vec<i64>> {
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + 1, c))
        .collect();
    let err = |message: &str, at: usize| -> Error {
        let (position, token) = match chars.get(at) {
            Some(&(pos, c)) => (pos, c.to_string()),
            None => (text.chars().count() + 1, "end of input".to_string()),
        };
        Error::Parse {
            message: message.to_string(),
            token,
            position,
        }
    };
    if chars.is_empty() {
        return Err(err("empty polynomial", 0));
    }

    let mut acc: Vec<i128> = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < chars.len() {
        let mut sign: i128 = 1;
        match chars[i].1 {
            '+' | '-' => {
                if chars[i].1 == '-' {
                    sign = -1;
                }
                i += 1;
            }
            _ if !first => return Err(err("expected '+' or '-'", i)),
            _ => {}
        }
        first = false;

        let digits_start = i;
        while i < chars.len() && chars[i].1.is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i128> = if i > digits_start {
            let s: String = chars[digits_start..i].iter().map(|&(_, c)| c).collect();
            Some(
                s.parse::<i128>()
                    .ok()
                    .filter(|v| *v <= i64::MAX as i128)
                    .ok_or_else(|| err("coefficient too large", digits_start))?,
            )
        } else {
            None
        };

        let power = if i < chars.len() && chars[i].1 == var {
            i += 1;
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                let exp_start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if i == exp_start {
                    return Err(err("expected exponent after '^'", i));
                }
                let s: String = chars[exp_start..i].iter().map(|&(_, c)| c).collect();
                s.parse::<usize>()
                    .ok()
                    .filter(|&e| e <= MAX_PARSE_DEGREE)
                    .ok_or_else(|| err("exponent too large", exp_start))?
            } else {
                1
            }
        } else if coeff.is_none() {
            let message = match chars.get(i) {
                Some((_, c)) if c.is_ascii_alphabetic() => format!("unexpected variable (expected '{var}')"),
                Some(_) => "unexpected character".to_string(),
                None => "expected a term".to_string(),
            };
            return Err(err(&message, i));
        } else {
            0
        };

        if acc.len() <= power {
            acc.resize(power + 1, 0);
        }
        acc[power] += sign * coeff.unwrap_or(1);
    }

    acc.into_iter()
        .map(|c| i64::try_from(c).map_err(|_| err("coefficient too large", 0)))
        .collect()
}
