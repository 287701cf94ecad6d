//! Parser for the textual cyclotomic form, e.g. `3/2*z^3 - z + 1`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coeff ['*' power] | power
//! coeff := int ['/' int]
//! power := 'z' ['^' int]
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Cyclotomic, ExactError, Rational};

pub(crate) fn parse_cyclotomic(src: &str, order: u32) -> Result<Cyclotomic, ExactError> {
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| ExactError::Parse(format!("{msg} in {src:?}"));
    if s.is_empty() {
        return Err(err("empty expression"));
    }
    let mut pos = 0usize;
    let mut raw: Vec<Rational> = vec![Rational::zero(); order as usize];
    let mut first = true;
    while pos < s.len() {
        let mut sign = Rational::one();
        if s[pos] == '+' || s[pos] == '-' {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if !first {
            return Err(err("expected '+' or '-'"));
        }
        first = false;

        let mut coeff: Option<Rational> = None;
        if pos < s.len() && s[pos].is_ascii_digit() {
            let num = read_int(&s, &mut pos).ok_or_else(|| err("bad integer"))?;
            let mut q = Rational::from_integer(num);
            if pos < s.len() && s[pos] == '/' {
                pos += 1;
                let den = read_int(&s, &mut pos).ok_or_else(|| err("bad denominator"))?;
                if den.is_zero() {
                    return Err(err("zero denominator"));
                }
                q = Rational::new(q.to_integer(), den);
            }
            coeff = Some(q);
            if pos < s.len() && s[pos] == '*' {
                pos += 1;
                if pos >= s.len() || s[pos] != 'z' {
                    return Err(err("expected 'z' after '*'"));
                }
            }
        }
        let mut power: i64 = 0;
        if pos < s.len() && s[pos] == 'z' {
            pos += 1;
            power = 1;
            if pos < s.len() && s[pos] == '^' {
                pos += 1;
                let e = read_int(&s, &mut pos).ok_or_else(|| err("bad exponent"))?;
                power = i64::try_from(e).map_err(|_| err("exponent too large"))?;
            }
        } else if coeff.is_none() {
            return Err(err("expected a term"));
        }
        let c = coeff.unwrap_or_else(Rational::one) * sign;
        let idx = power.rem_euclid(order as i64) as usize;
        raw[idx] += c;
    }
    Ok(Cyclotomic::from_coeffs(order, raw))
}

fn read_int(s: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return None;
    }
    let txt: String = s[start..*pos].iter().collect();
    txt.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let c = parse_cyclotomic("3/2*z^3 - z + 1", 8).unwrap();
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(c.coeffs()[0], q(1, 1));
        assert_eq!(c.coeffs()[1], q(-1, 1));
        assert_eq!(c.coeffs()[3], q(3, 2));
    }

    #[test]
    fn reduces_high_powers() {
        assert_eq!(
            parse_cyclotomic("z^5", 8).unwrap(),
            Cyclotomic::root_of_unity(8, 5)
        );
        assert_eq!(parse_cyclotomic("-z^4", 8).unwrap(), Cyclotomic::one(8));
        assert_eq!(parse_cyclotomic(" - 2 z", 8).unwrap().to_string(), "-2*z");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "z^", "1/0", "x", "+-z", "1/", "z*2"] {
            assert!(parse_cyclotomic(bad, 8).is_err(), "{bad}");
        }
    }
}
