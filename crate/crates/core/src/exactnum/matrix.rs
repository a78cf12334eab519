//! Dense square matrices over a single cyclotomic field.

use rayon::prelude::*;

use super::{nt, Cyclotomic, ExactError};

/// Row-major square matrix; every entry is kept at the same conductor so
/// products never re-coerce.
#[derive(Clone, Debug)]
pub struct Matrix {
    n: usize,
    conductor: u32,
    data: Vec<Cyclotomic>,
}

/// Entrywise equality of the values, whatever conductors they are stored at.
impl PartialEq for Matrix {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.data == o.data
    }
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, ExactError> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(ExactError::DimensionMismatch(n, r.len()));
            }
        }
        Self::from_vec(n, rows.into_iter().flatten().collect())
    }

    fn from_vec(n: usize, data: Vec<Cyclotomic>) -> Result<Self, ExactError> {
        let l = data
            .iter()
            .fold(1u64, |acc, x| nt::lcm(acc, x.conductor() as u64));
        if l > super::max_conductor() as u64 {
            return Err(ExactError::ConductorOverflow {
                conductor: l,
                cap: super::max_conductor(),
            });
        }
        let conductor = l as u32;
        let data = data
            .into_iter()
            .map(|x| x.lift(conductor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { n, conductor, data })
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        Self::diagonal(&vec![Cyclotomic::one(conductor); n]).expect("identity is well formed")
    }

    pub fn diagonal(d: &[Cyclotomic]) -> Result<Self, ExactError> {
        let n = d.len();
        let c = d.first().map_or(1, |x| x.conductor());
        let mut data = vec![Cyclotomic::zero(c); n * n];
        for (i, x) in d.iter().enumerate() {
            data[i * n + i] = x.clone();
        }
        Self::from_vec(n, data)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<Cyclotomic> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, x: Cyclotomic) -> Result<Self, ExactError> {
        let mut data = self.data.clone();
        data[i * self.n + j] = x;
        Self::from_vec(self.n, data)
    }

    pub fn lift(&self, conductor: u32) -> Result<Self, ExactError> {
        let data = self
            .data
            .iter()
            .map(|x| x.lift(conductor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            n: self.n,
            conductor,
            data,
        })
    }

    fn aligned(&self, o: &Self) -> Result<(Self, Self), ExactError> {
        if self.n != o.n {
            return Err(ExactError::DimensionMismatch(self.n, o.n));
        }
        if self.conductor == o.conductor {
            return Ok((self.clone(), o.clone()));
        }
        let l = nt::lcm(self.conductor as u64, o.conductor as u64);
        if l > super::max_conductor() as u64 {
            return Err(ExactError::ConductorOverflow {
                conductor: l,
                cap: super::max_conductor(),
            });
        }
        Ok((self.lift(l as u32)?, o.lift(l as u32)?))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ExactError> {
        let (a, b) = self.aligned(o)?;
        let n = a.n;
        let c = a.conductor;
        let data: Vec<Cyclotomic> = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = Cyclotomic::zero(c);
                for k in 0..n {
                    let x = a.get(i, k);
                    let y = b.get(k, j);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = &acc + &(x * y);
                }
                acc
            })
            .collect();
        Ok(Matrix {
            n,
            conductor: c,
            data,
        })
    }

    /// `self · diag(d)`.
    pub fn mul_diag(&self, d: &[Cyclotomic]) -> Result<Self, ExactError> {
        if d.len() != self.n {
            return Err(ExactError::DimensionMismatch(self.n, d.len()));
        }
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, x)| x.checked_mul(&d[idx % n]))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_vec(n, data)
    }

    /// `diag(d) · self`.
    pub fn diag_mul(&self, d: &[Cyclotomic]) -> Result<Self, ExactError> {
        if d.len() != self.n {
            return Err(ExactError::DimensionMismatch(self.n, d.len()));
        }
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, x)| x.checked_mul(&d[idx / n]))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_vec(n, data)
    }

    pub fn pow(&self, e: u32) -> Result<Self, ExactError> {
        let mut acc = Self::identity(self.n, self.conductor);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self, ExactError> {
        let data = self
            .data
            .iter()
            .map(|x| x.checked_mul(c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_vec(self.n, data)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n)
            .map(|idx| self.get(idx % n, idx / n).clone())
            .collect();
        Matrix {
            n,
            conductor: self.conductor,
            data,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn conj(&self) -> Self {
        self.map(Cyclotomic::conj)
    }

    pub fn galois(&self, k: i64) -> Result<Self, ExactError> {
        let data = self
            .data
            .iter()
            .map(|x| x.galois(k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            n: self.n,
            conductor: self.conductor,
            data,
        })
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        Matrix {
            n: self.n,
            conductor: self.conductor,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `P·self·Pᵀ` for the permutation sending index `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[perm[i] * n + perm[j]] = self.get(i, j).clone();
            }
        }
        Matrix {
            n,
            conductor: self.conductor,
            data,
        }
    }

    pub fn kron(&self, o: &Self) -> Result<Self, ExactError> {
        let (a, b) = (self, o);
        let n = a.n * b.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = a.get(i / b.n, j / b.n);
                let y = b.get(i % b.n, j % b.n);
                data.push(x.checked_mul(y)?);
            }
        }
        Self::from_vec(n, data)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Result<Self, ExactError> {
        let n = self.n + o.n;
        let l = nt::lcm(self.conductor as u64, o.conductor as u64) as u32;
        let mut data = vec![Cyclotomic::zero(l); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                data[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..o.n {
            for j in 0..o.n {
                data[(self.n + i) * n + self.n + j] = o.get(i, j).clone();
            }
        }
        Self::from_vec(n, data)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }
}
