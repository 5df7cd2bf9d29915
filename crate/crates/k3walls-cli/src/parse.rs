//! Parsers for command-line values: slopes, divisor expressions over the
//! elliptic basis, start vectors for twist chains, and continued-fraction
//! term lists.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use k3walls::arith::Rational;
use k3walls::lattice::{DivisorClass, NSLattice};
use k3walls::mukai::MukaiVector;

/// Parse a slope given as "n/m" or as a plain integer.
pub fn fraction(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("cannot parse slope '{s}': expected 'n/m' or an integer");
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(format!("slope '{s}' has denominator zero"));
        }
        Ok(Rational::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(num))
    }
}

/// Parse a divisor expression over the elliptic basis, e.g. "2e-2s",
/// "-s+8e", or "sigma". The section class may be written "s" or "sigma";
/// "0" denotes the zero divisor.
pub fn divisor(expr: &str) -> Result<DivisorClass, String> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty divisor expression".into());
    }
    let chars: Vec<char> = compact.chars().collect();
    let mut p = BigInt::zero();
    let mut q = BigInt::zero();
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        if chars[i] == '+' {
            i += 1;
        } else if chars[i] == '-' {
            negative = true;
            i += 1;
        }
        if i >= chars.len() {
            return Err(format!("dangling sign in divisor expression '{expr}'"));
        }
        let digits_start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let digits: String = chars[digits_start..i].iter().collect();
        let label_start = i;
        while i < chars.len() && chars[i].is_ascii_alphabetic() {
            i += 1;
        }
        let label: String = chars[label_start..i].iter().collect();

        let mut coeff = if digits.is_empty() {
            BigInt::one()
        } else {
            digits
                .parse::<BigInt>()
                .expect("digit runs parse as integers")
        };
        if negative {
            coeff = -coeff;
        }
        match label.as_str() {
            "s" | "sigma" => p += coeff,
            "e" => q += coeff,
            "" if digits.is_empty() => {
                return Err(format!(
                    "unexpected character '{}' in divisor expression '{expr}'",
                    chars[i]
                ));
            }
            "" => {
                if !coeff.is_zero() {
                    return Err(format!(
                        "numeric term '{digits}' in '{expr}' has no basis label (use e, s, or sigma)"
                    ));
                }
            }
            other => {
                return Err(format!(
                    "unknown basis label '{other}' in '{expr}' (use e, s, or sigma)"
                ));
            }
        }
    }
    DivisorClass::new(NSLattice::elliptic(), vec![p, q]).map_err(|e| e.to_string())
}

/// Parse a start vector "rk,c1,s" where c1 is a divisor expression,
/// e.g. "1,2e-2s,-7".
pub fn mukai_vector(s: &str) -> Result<MukaiVector, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "cannot parse vector '{s}': expected 'rk,c1,s' with a divisor expression for c1"
        ));
    }
    let rk: BigInt = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse rank '{}' in vector '{s}'", parts[0]))?;
    let c1 = divisor(parts[1])?;
    let ch: BigInt = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse last component '{}' in vector '{s}'", parts[2]))?;
    Ok(MukaiVector::new(rk, c1, ch))
}

/// Parse a continued-fraction term list "[a1,a2,...]" (brackets optional).
pub fn cf_terms(s: &str) -> Result<Vec<u64>, String> {
    let inner = s
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .trim();
    if inner.is_empty() {
        return Err("continued fraction needs at least one term".into());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("cannot parse continued-fraction term '{}'", t.trim()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_forms() {
        assert_eq!(fraction("3/8").unwrap(), Rational::new(3.into(), 8.into()));
        assert_eq!(fraction("5").unwrap(), Rational::from_integer(5.into()));
        assert_eq!(
            fraction("-2/6").unwrap(),
            Rational::new((-1).into(), 3.into())
        );
        assert!(fraction("abc").is_err());
        assert!(fraction("1/0").is_err());
        assert!(fraction("").is_err());
    }

    #[test]
    fn divisor_expressions() {
        let d = divisor("2e-2s").unwrap();
        assert_eq!(d.coeff(0), &BigInt::from(-2));
        assert_eq!(d.coeff(1), &BigInt::from(2));
        let d = divisor("sigma").unwrap();
        assert_eq!(d.coeff(0), &BigInt::from(1));
        assert_eq!(d.coeff(1), &BigInt::from(0));
        let d = divisor("-s + 8e").unwrap();
        assert_eq!(d.coeff(0), &BigInt::from(-1));
        assert_eq!(d.coeff(1), &BigInt::from(8));
        let d = divisor("0").unwrap();
        assert_eq!(d.coeff(0), &BigInt::from(0));
        assert!(divisor("3").is_err());
        assert!(divisor("2x").is_err());
        assert!(divisor("e+").is_err());
        assert!(divisor("*").is_err());
    }

    #[test]
    fn vectors_and_terms() {
        let v = mukai_vector("1,2e-2s,-7").unwrap();
        assert_eq!(v.rk(), &BigInt::from(1));
        assert_eq!(v.s(), &BigInt::from(-7));
        assert!(mukai_vector("1,2e").is_err());
        assert_eq!(cf_terms("[2,3]").unwrap(), vec![2, 3]);
        assert_eq!(cf_terms("2, 3").unwrap(), vec![2, 3]);
        assert!(cf_terms("[]").is_err());
        assert!(cf_terms("[2,x]").is_err());
    }
}
