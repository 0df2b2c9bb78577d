//! Canonical text form of cyclotomic numbers, e.g. `3/2 + 1/2*z12^2`.
//!
//! `zN` denotes ζ_N = e^{2πi/N}. The rendering lists the reduced power-basis
//! coefficients in increasing degree; the parser accepts any sum of such
//! terms, with mixed orders, and reduces it.

use std::fmt;
use std::str::FromStr;

use super::{Cyc, Cyclotomic, Rational, ScalarError};

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.raw_coeffs();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let n = self.order();
        let mut first = true;
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if k == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "z{n}")?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

fn parse_term(t: &str) -> Result<Cyc, ScalarError> {
    let bad = || ScalarError::Parse(format!("bad term {t:?}"));
    let (coef, root) = match t.find('z') {
        None => (t, None),
        Some(pos) => {
            let c = t[..pos].trim().trim_end_matches('*').trim();
            (c, Some(&t[pos + 1..]))
        }
    };
    let c: Rational = if coef.is_empty() { Rational::ONE } else { coef.parse()? };
    let mut v = Cyc::from_rational(c);
    if let Some(r) = root {
        let (n, k) = match r.split_once('^') {
            Some((n, k)) => (n.trim(), k.trim()),
            None => (r.trim(), "1"),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        v = &v * &Cyc::root_of_unity(n, k);
    }
    Ok(v)
}

impl FromStr for Cyclotomic {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarError::Parse("empty scalar".into()));
        }
        let mut acc = Cyc::zero();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut prev_caret = false;
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            if (ch == '+' || ch == '-') && !prev_caret {
                if !cur.is_empty() {
                    let t = parse_term(&cur)?;
                    acc = if sign < 0 { &acc - &t } else { &acc + &t };
                    cur.clear();
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
            } else {
                cur.push(ch);
            }
            prev_caret = ch == '^';
        }
        if cur.is_empty() {
            return Err(ScalarError::Parse(format!("dangling sign in {s:?}")));
        }
        let t = parse_term(&cur)?;
        Ok(if sign < 0 { &acc - &t } else { &acc + &t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn renders_canonically() {
        let x = &Cyc::frac(3, 2) + &(&Cyc::frac(1, 2) * &Cyc::root_of_unity(12, 2));
        assert_eq!(x.to_string(), "3/2 + 1/2*z12^2");
        assert_eq!((-Cyc::i()).to_string(), "-z4");
        assert_eq!(Cyc::zero().to_string(), "0");
        assert_eq!(Cyc::frac(-7, 3).to_string(), "-7/3");
    }

    #[test]
    fn parses_mixed_orders() {
        let x: Cyc = "z4 - z12^3".parse().unwrap();
        assert!(x.is_zero());
        let y: Cyc = "z6^6".parse().unwrap();
        assert!(y.is_one());
        let w: Cyc = "2*z12^-1".parse().unwrap();
        assert_eq!(w, &Cyc::from_int(2) * &Cyc::root_of_unity(12, 11));
        assert!("1.5".parse::<Cyc>().is_err());
        assert!("3 +".parse::<Cyc>().is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(x in crate::scalars::strategies::cyc()) {
            let back: Cyc = x.to_string().parse().unwrap();
            prop_assert_eq!(back.coefficients(), x.coefficients());
            prop_assert_eq!(back.order(), x.order());
        }
    }
}
