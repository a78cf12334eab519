//! Explicit SL(2,Z) representations: the `(p+1)/2`-dimensional Eholzer
//! representations, the 3-dimensional level-4 representation `ρ′`, direct
//! sums and signed block conjugations.

use serde::{Deserialize, Serialize};

use crate::exactnum::{gauss_sqrt, nt, quadratic_gauss_sum, ratio, Cyclotomic, Matrix};
use crate::{invalid, Error, Result};

/// Images `s`, `t` of the generators, with `t` diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RepJson", into = "RepJson")]
pub struct SL2Rep {
    s: Matrix,
    t: Vec<Cyclotomic>,
    level: u64,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    dim: usize,
    level: u64,
    s: Matrix,
    t: Vec<Cyclotomic>,
}

impl From<SL2Rep> for RepJson {
    fn from(r: SL2Rep) -> Self {
        RepJson {
            dim: r.dim(),
            level: r.level,
            s: r.s,
            t: r.t,
        }
    }
}

impl TryFrom<RepJson> for SL2Rep {
    type Error = Error;
    fn try_from(j: RepJson) -> Result<Self> {
        let r = SL2Rep::new(j.s, j.t)?;
        if r.dim() != j.dim || r.level != j.level {
            return Err(invalid("dim or level disagrees with the matrices"));
        }
        Ok(r)
    }
}

/// Multiplicative order of a diagonal of roots of unity.
pub fn t_order(t: &[Cyclotomic]) -> Option<u64> {
    t.iter()
        .try_fold(1u64, |acc, x| x.root_of_unity_order().map(|o| nt::lcm(acc, o)))
}

impl SL2Rep {
    /// Validates shapes and that `t` consists of roots of unity.
    pub fn new(s: Matrix, t: Vec<Cyclotomic>) -> Result<Self> {
        if s.dim() != t.len() || t.is_empty() {
            return Err(invalid(format!(
                "s is {0}x{0} but t has {1} entries",
                s.dim(),
                t.len()
            )));
        }
        let level = t_order(&t).ok_or_else(|| invalid("t has an entry that is not a root of unity"))?;
        Ok(SL2Rep { s, t, level })
    }

    pub fn trivial() -> Self {
        SL2Rep {
            s: Matrix::identity(1, 1),
            t: vec![Cyclotomic::one(1)],
            level: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn t(&self) -> &[Cyclotomic] {
        &self.t
    }

    /// Same `t`, different `s` (for perturbation experiments).
    pub fn with_s(&self, s: Matrix) -> Result<Self> {
        SL2Rep::new(s, self.t.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub s4_ok: bool,
    pub braid_ok: bool,
    pub t_order: Option<u64>,
}

impl RelationReport {
    pub fn passes(&self) -> bool {
        self.s4_ok && self.braid_ok && self.t_order.is_some()
    }
}

/// Exact checks of `s⁴ = 1` and `(st)³ = s²`.
pub fn verify_sl2_relations(r: &SL2Rep) -> Result<RelationReport> {
    let s2 = r.s.mul(&r.s)?;
    let s4 = s2.mul(&s2)?;
    let st = r.s.mul_diag(&r.t)?;
    let st3 = st.mul(&st)?.mul(&st)?;
    Ok(RelationReport {
        s4_ok: s4.is_identity(),
        braid_ok: st3 == s2,
        t_order: t_order(&r.t),
    })
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !nt::is_odd_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    if 8 * p > crate::exactnum::max_conductor() as u64 {
        return Err(invalid(format!("{p} needs conductor {} above the cap", 8 * p)));
    }
    Ok(())
}

fn residue(a: i64, p: u64) -> Result<i8> {
    match nt::legendre(a, p)? {
        0 => Err(invalid(format!("{a} is not coprime to {p}"))),
        s => Ok(s),
    }
}

/// `β_p = (a/p)/g_p` with `g_p` the quadratic Gauss sum, at conductor `8p`.
pub fn eholzer_beta(p: u64, a: i64) -> Result<Cyclotomic> {
    check_odd_prime(p)?;
    let l = residue(a, p)?;
    let n = (8 * p) as u32;
    // 1/g_p = conj(g_p)/p
    let g = quadratic_gauss_sum(p, n)?;
    Ok(g.conj().scale(&ratio(l as i64, p as i64)))
}

/// The irreducible representation of dimension `(p+1)/2` attached to the
/// residue class of `a` modulo `p`.
pub fn build_eholzer(p: u64, a: i64) -> Result<SL2Rep> {
    let beta = eholzer_beta(p, a)?;
    let n = beta.conductor();
    let m = ((p - 1) / 2) as usize;
    let zp = |k: i64| Cyclotomic::root_of_unity(p as u32, k, n);
    let sqrt2_beta = &gauss_sqrt(2, n)? * &beta;
    let mut rows = vec![vec![Cyclotomic::zero(n); m + 1]; m + 1];
    rows[0][0] = beta.clone();
    for j in 1..=m {
        rows[0][j] = sqrt2_beta.clone();
        rows[j][0] = sqrt2_beta.clone();
        for k in 1..=m {
            let e = 2 * a * (j * k) as i64;
            // 2cos(4πajk/p)
            rows[j][k] = &beta * &(&zp(e)? + &zp(-e)?);
        }
    }
    let t = (0..=m as i64)
        .map(|j| zp(a * j * j))
        .collect::<Result<Vec<_>, _>>()?;
    SL2Rep::new(Matrix::from_rows(rows)?, t)
}

/// Central charge `Σ_j ζ_p^{aj²} / √p` of the pointed datum on `Z_p`.
pub fn pointed_central_charge(p: u64, a: i64) -> Result<Cyclotomic> {
    check_odd_prime(p)?;
    residue(a, p)?;
    let n = (4 * p) as u32;
    let sum: Cyclotomic = (0..p as i64)
        .map(|j| Cyclotomic::root_of_unity(p as u32, a * j * j, n))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(Cyclotomic::zero(n), |acc, x| &acc + &x);
    let root = gauss_sqrt(p, n)?;
    Ok((&sum * &root).scale(&ratio(1, p as i64)))
}

/// Which square root `ξ₁` of `±ξ` goes on the diagonal of `ρ′(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XiBranch {
    /// `+√ξ`
    PlusRootXi,
    /// `-√ξ`
    MinusRootXi,
    /// `+√(-ξ)`
    PlusRootNegXi,
    /// `-√(-ξ)`
    MinusRootNegXi,
}

impl XiBranch {
    pub const ALL: [XiBranch; 4] = [
        XiBranch::PlusRootXi,
        XiBranch::MinusRootXi,
        XiBranch::PlusRootNegXi,
        XiBranch::MinusRootNegXi,
    ];
}

/// Principal square root (argument in `(-π/2, π/2]`) of a root of unity.
pub(crate) fn principal_sqrt(x: &Cyclotomic) -> Result<Cyclotomic> {
    let (m, j) = x
        .root_of_unity_exponent()
        .ok_or_else(|| Error::Inconsistent("expected a root of unity".into()))?;
    let j = if 2 * j > m { j as i64 - m as i64 } else { j as i64 };
    Ok(Cyclotomic::zeta((2 * m) as u32, j)?)
}

/// `ξ₁` for the given branch, expressed at conductor `8p`.
pub fn rho_prime_xi1(p: u64, a: i64, branch: XiBranch) -> Result<Cyclotomic> {
    let xi = pointed_central_charge(p, a)?;
    let base = match branch {
        XiBranch::PlusRootXi | XiBranch::MinusRootXi => xi,
        _ => -xi,
    };
    let r = principal_sqrt(&base)?.lift((8 * p) as u32)?;
    Ok(match branch {
        XiBranch::PlusRootXi | XiBranch::PlusRootNegXi => r,
        _ => -r,
    })
}

fn rho_prime_unchecked(p: u64, a: i64, branch: XiBranch) -> Result<SL2Rep> {
    let n = (8 * p) as u32;
    // μ_p = β_p·√p, the inverse of the central charge
    let mu = pointed_central_charge(p, a)?.conj().lift(n)?;
    let half_root2 = gauss_sqrt(2, n)?.scale(&ratio(1, 2));
    let h = Cyclotomic::from_rational(&ratio(1, 2), n);
    let zero = Cyclotomic::zero(n);
    let r = vec![
        vec![zero, half_root2.clone(), half_root2.clone()],
        vec![half_root2.clone(), -&h, h.clone()],
        vec![half_root2, h.clone(), -&h],
    ];
    let s = Matrix::from_rows(r)?.scale(&mu)?;
    let xi1 = rho_prime_xi1(p, a, branch)?;
    let t = vec![Cyclotomic::one(n), xi1.clone(), -xi1];
    SL2Rep::new(s, t)
}

/// The 3-dimensional representation `ρ′` for one `ξ₁` branch; fails when the
/// branch does not satisfy the SL(2,Z) relations.
pub fn build_rho_prime(p: u64, a: i64, branch: XiBranch) -> Result<SL2Rep> {
    check_odd_prime(p)?;
    let r = rho_prime_unchecked(p, a, branch)?;
    if !verify_sl2_relations(&r)?.passes() {
        return Err(invalid(format!(
            "xi1 branch {branch:?} violates the SL(2,Z) relations for p = {p}, a = {a}"
        )));
    }
    Ok(r)
}

/// Every `ξ₁` branch passing the relations, in [`XiBranch::ALL`] order.
pub fn rho_prime_branches(p: u64, a: i64) -> Result<Vec<(XiBranch, SL2Rep)>> {
    check_odd_prime(p)?;
    let mut out = Vec::new();
    for b in XiBranch::ALL {
        let r = rho_prime_unchecked(p, a, b)?;
        if verify_sl2_relations(&r)?.passes() {
            out.push((b, r));
        }
    }
    if out.is_empty() {
        return Err(Error::Inconsistent(format!(
            "no xi1 branch satisfies the relations for p = {p}, a = {a}"
        )));
    }
    Ok(out)
}

pub fn direct_sum(r1: &SL2Rep, r2: &SL2Rep) -> Result<SL2Rep> {
    let s = r1.s.direct_sum(&r2.s)?;
    let t = r1.t.iter().chain(&r2.t).cloned().collect();
    SL2Rep::new(s, t)
}

/// `ν` and `V = diag(1, ε₁, …)` for the signed block conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVector {
    pub nu: i8,
    /// `ε₁ … ε_{(p+q)/2}`; the leading 1 of `V` is implicit.
    pub eps: Vec<i8>,
    /// Row (1 or 2) taken as the unit object.
    pub unit_row: u8,
}

impl SignVector {
    pub fn all_plus(len: usize, unit_row: u8) -> Self {
        SignVector {
            nu: 1,
            eps: vec![1; len],
            unit_row,
        }
    }

    /// `diag(1, ε₁, …)`.
    pub fn v(&self) -> Vec<i8> {
        std::iter::once(1).chain(self.eps.iter().copied()).collect()
    }

    fn validate(&self) -> Result<()> {
        let ok = |x: i8| x == 1 || x == -1;
        if !ok(self.nu) || !self.eps.iter().all(|e| ok(*e)) {
            return Err(invalid("sign entries must be +1 or -1"));
        }
        if self.unit_row != 1 && self.unit_row != 2 {
            return Err(invalid("unit_row must be 1 or 2"));
        }
        Ok(())
    }
}

/// Rotates the two `t = 1` corner vectors of `ρ_p ⊕ ρ_q` by
/// `U = [[1, -ν], [ν, 1]]/√2`, orders the basis as
/// `(u₀, u₁, Z₁…, W₁…)` and conjugates by `V`.
pub fn conjugate_signed(r: &SL2Rep, sv: &SignVector, p: u64, q: u64) -> Result<SL2Rep> {
    sv.validate()?;
    let m1 = ((p - 1) / 2) as usize;
    let m2 = ((q - 1) / 2) as usize;
    let dim = m1 + m2 + 2;
    if r.dim() != dim {
        return Err(Error::Exact(crate::ExactError::DimensionMismatch(dim, r.dim())));
    }
    if sv.eps.len() != dim - 1 {
        return Err(Error::Exact(crate::ExactError::DimensionMismatch(
            dim - 1,
            sv.eps.len(),
        )));
    }
    let c = m1 + 1;
    if !r.t[0].is_one() || !r.t[c].is_one() {
        return Err(invalid("corner vectors must have t = 1"));
    }
    let n = nt::lcm(r.s.conductor() as u64, 8) as u32;
    let h = gauss_sqrt(2, n)?.scale(&ratio(1, 2));
    let nu = sv.nu as i64;
    let v = sv.v();
    // rows of V·Q in the old basis
    let mut rows = vec![vec![Cyclotomic::zero(n); dim]; dim];
    rows[0][0] = h.clone();
    rows[0][c] = h.scale_int(-nu);
    rows[1][0] = h.scale_int(nu * v[1] as i64);
    rows[1][c] = h.scale_int(v[1] as i64);
    let mut t = vec![Cyclotomic::one(n), Cyclotomic::one(n)];
    let others = (1..=m1).chain(c + 1..dim);
    for (i, old) in others.enumerate() {
        rows[i + 2][old] = Cyclotomic::from_int(v[i + 2] as i64, n);
        t.push(r.t[old].clone());
    }
    let vq = Matrix::from_rows(rows)?;
    let s = vq.mul(&r.s)?.mul(&vq.transpose())?;
    SL2Rep::new(s, t)
}
