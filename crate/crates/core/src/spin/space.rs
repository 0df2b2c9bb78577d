//! The tensor space (C^N)^{⊗sites}; site 0 is the most significant digit.

use super::matrix::SparseMatrix;
use super::SpinError;
use crate::scalars::Cyc;

pub type SpinMatrix = SparseMatrix<Cyc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinSpace {
    pub n: usize,
    pub sites: usize,
}

impl SpinSpace {
    pub fn new(n: usize, sites: usize) -> Self {
        assert!(n >= 1);
        SpinSpace { n, sites }
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.sites as u32)
    }

    /// The same space with `extra` sites appended.
    pub fn with_extra(&self, extra: usize) -> Self {
        SpinSpace { n: self.n, sites: self.sites + extra }
    }

    fn stride(&self, site: usize) -> usize {
        self.n.pow((self.sites - 1 - site) as u32)
    }

    pub fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.stride(site)) % self.n
    }

    pub fn set_digit(&self, index: usize, site: usize, d: usize) -> usize {
        let s = self.stride(site);
        index - self.digit(index, site) * s + d * s
    }

    fn check(&self, site: usize) -> Result<(), SpinError> {
        if site >= self.sites {
            return Err(SpinError::IndexOutOfRange { site, sites: self.sites });
        }
        Ok(())
    }

    /// Basis permutation placing the factor at site i onto site perm[i].
    pub fn site_permutation_map(&self, perm: &[u32]) -> Vec<u32> {
        (0..self.dim())
            .map(|e| {
                let mut out = 0;
                for (i, &p) in perm.iter().enumerate() {
                    out += self.digit(e, i) * self.stride(p as usize);
                }
                for site in perm.len()..self.sites {
                    out += self.digit(e, site) * self.stride(site);
                }
                out as u32
            })
            .collect()
    }

    /// R v_1⊗…⊗v_M with v_i moved to site perm[i]; sites beyond perm.len() fixed.
    pub fn site_permutation(&self, perm: &[u32]) -> Result<SpinMatrix, SpinError> {
        for &p in perm {
            self.check(p as usize)?;
        }
        let map = self.site_permutation_map(perm);
        Ok(SparseMatrix::from_entries(self.dim(), map.iter().enumerate().map(|(c, &r)| (r as usize, c, Cyc::one()))))
    }

    /// P_{ij}, swapping sites i and j.
    pub fn transposition(&self, i: usize, j: usize) -> Result<SpinMatrix, SpinError> {
        self.check(i)?;
        self.check(j)?;
        let mut perm: Vec<u32> = (0..self.sites as u32).collect();
        perm.swap(i, j);
        self.site_permutation(&perm)
    }

    /// Q acting at one site.
    pub fn local(&self, q: &SpinMatrix, site: usize) -> Result<SpinMatrix, SpinError> {
        self.check(site)?;
        if q.dim() != self.n {
            return Err(SpinError::ShapeMismatch(format!("local matrix of size {} on sites of dimension {}", q.dim(), self.n)));
        }
        let mut out = SparseMatrix::zero(self.dim());
        for e in 0..self.dim() {
            let d = self.digit(e, site);
            for (r, c, x) in q.entries() {
                if c == d {
                    out.add_entry(self.set_digit(e, site, r), e, x.clone());
                }
            }
        }
        Ok(out)
    }

    /// E_{ij} at one site (0-based i, j).
    pub fn unit(&self, i: usize, j: usize, site: usize) -> Result<SpinMatrix, SpinError> {
        let e = SparseMatrix::from_entries(self.n, [(i, j, Cyc::one())]);
        self.local(&e, site)
    }

    /// (Tr_site X) ⊗ I_site.
    pub fn partial_trace<T: crate::algebra::Coeff>(&self, x: &SparseMatrix<T>, site: usize) -> SparseMatrix<T> {
        let mut out = SparseMatrix::zero(self.dim());
        for (r, c, t) in x.entries() {
            if self.digit(r, site) != self.digit(c, site) {
                continue;
            }
            for d in 0..self.n {
                out.add_entry(self.set_digit(r, site, d), self.set_digit(c, site, d), t.clone());
            }
        }
        out
    }
}
