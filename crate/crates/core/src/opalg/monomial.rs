use std::fmt;

pub const MAX_VARS: usize = 4;

/// Exponent vector packed into bytes; variable 0 occupies the top byte, so
/// integer order is lexicographic with x₁ most significant.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u32);

#[inline]
fn shift(i: usize) -> u32 {
    debug_assert!(i < MAX_VARS);
    8 * (MAX_VARS - 1 - i) as u32
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(i: usize) -> Mono {
        Mono(1 << shift(i))
    }

    pub fn from_exps(e: &[u32]) -> Mono {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = 0u32;
        for (i, &x) in e.iter().enumerate() {
            assert!(x < 256, "exponent overflow");
            m |= x << shift(i);
        }
        Mono(m)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        (self.0 >> shift(i)) & 0xff
    }

    pub fn exps(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        self.0.to_le_bytes().iter().map(|&b| b as u32).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        let s = self.0.wrapping_add(o.0);
        debug_assert!((0..MAX_VARS).all(|i| self.exp(i) + o.exp(i) < 256), "exponent overflow");
        Mono(s)
    }

    /// `self / o` if every exponent of `o` is at most that of `self`.
    pub fn div(self, o: Mono) -> Option<Mono> {
        if (0..MAX_VARS).all(|i| self.exp(i) >= o.exp(i)) {
            Some(Mono(self.0 - o.0))
        } else {
            None
        }
    }

    pub fn with_exp(self, i: usize, e: u32) -> Mono {
        assert!(e < 256, "exponent overflow");
        Mono((self.0 & !(0xff << shift(i))) | (e << shift(i)))
    }

    /// All monomials dividing `self`.
    pub fn divisors(self) -> Vec<Mono> {
        let mut out = vec![Mono::ONE];
        for i in 0..MAX_VARS {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            let prev = std::mem::take(&mut out);
            for m in prev {
                for k in 0..=e {
                    out.push(m.with_exp(i, k));
                }
            }
        }
        out
    }

    /// Monomials of total degree `d` in `nvars` variables.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
        fn rec(i: usize, nvars: usize, left: u32, cur: Mono, out: &mut Vec<Mono>) {
            if i + 1 == nvars {
                out.push(cur.with_exp(i, left));
                return;
            }
            for e in (0..=left).rev() {
                rec(i + 1, nvars, left - e, cur.with_exp(i, e), out);
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Mono::ONE);
            }
            return out;
        }
        rec(0, nvars, d, Mono::ONE, &mut out);
        out
    }

    pub fn fmt_with(self, names: &[&str], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, name) in names.iter().enumerate() {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{name}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps(MAX_VARS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing() {
        let m = Mono::from_exps(&[2, 0, 5]);
        assert_eq!(m.exp(0), 2);
        assert_eq!(m.exp(2), 5);
        assert_eq!(m.degree(), 7);
        assert_eq!(m.mul(Mono::var(1)).exps(3), vec![2, 1, 5]);
        assert_eq!(m.div(Mono::var(1)), None);
        assert_eq!(m.div(Mono::var(0)).unwrap().exps(3), vec![1, 0, 5]);
        assert!(Mono::var(0) > Mono::var(1));
        assert_eq!(Mono::from_exps(&[1, 2]).divisors().len(), 6);
        assert_eq!(Mono::all_of_degree(3, 2).len(), 6);
    }
}
