//! Candidate modular data `(S, T)`: constructors, axiom checks, the Verlinde
//! formula and the arithmetic gates.
//!
//! `S` is stored unnormalized with `S[0][i]` the categorical dimension of
//! object `i` (so `S[0][0] = 1`); the `1/√dim` normalization only happens in
//! [`to_sl2rep`].

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::{
    gauss_sqrt, is_algebraic_unit, nt, quad_norm, ratio, real_sign, to_float, to_quadratic,
    Cyclotomic, Matrix, QuadraticNumber, Rational,
};
use crate::fusionring::FusionRing;
use crate::slrep::{
    build_eholzer, conjugate_signed, direct_sum, principal_sqrt, rho_prime_xi1, t_order, SL2Rep,
    SignVector, XiBranch,
};
use crate::{invalid, Error, Result};

/// Bits used for the advisory float columns when none are requested.
pub const DEFAULT_FLOAT_PRECISION: u64 = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularDatum {
    labels: Vec<String>,
    s: Matrix,
    t: Vec<Cyclotomic>,
}

/// Serialized form; `floats` is advisory and ignored when reading.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumJson {
    pub rank: usize,
    pub labels: Vec<String>,
    #[serde(rename = "S")]
    pub s: Matrix,
    #[serde(rename = "T")]
    pub t: Vec<Cyclotomic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floats: Option<FloatTable>,
}

/// `[re, im]` pairs rounded to 12 significant digits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatTable {
    #[serde(rename = "S")]
    pub s: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "T")]
    pub t: Vec<[f64; 2]>,
}

impl FloatTable {
    pub fn new(s: &Matrix, t: &[Cyclotomic], precision: u64) -> Self {
        FloatTable {
            s: s
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| float_pair(x, precision)).collect())
                .collect(),
            t: t.iter().map(|x| float_pair(x, precision)).collect(),
        }
    }
}

fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn float_pair(x: &Cyclotomic, precision: u64) -> [f64; 2] {
    let a = to_float(x, precision);
    [round12(a.re), round12(a.im)]
}

impl ModularDatum {
    /// Checks shapes only; [`check_axioms`] reports on everything else.
    pub fn new(labels: Vec<String>, s: Matrix, t: Vec<Cyclotomic>) -> Result<Self> {
        let r = labels.len();
        if r == 0 || s.dim() != r || t.len() != r {
            return Err(invalid(format!(
                "{r} labels, {0}x{0} S and {1} twists",
                s.dim(),
                t.len()
            )));
        }
        Ok(ModularDatum { labels, s, t })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn s(&self) -> &Matrix {
        &self.s
    }

    pub fn t(&self) -> &[Cyclotomic] {
        &self.t
    }

    /// Row 0 of `S`.
    pub fn dims(&self) -> &[Cyclotomic] {
        self.s.row(0)
    }

    pub fn float_table(&self, precision: u64) -> FloatTable {
        FloatTable::new(&self.s, &self.t, precision)
    }

    pub fn to_json(&self, precision: Option<u64>) -> DatumJson {
        DatumJson {
            rank: self.rank(),
            labels: self.labels.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
            floats: precision.map(|p| self.float_table(p)),
        }
    }
}

impl Serialize for ModularDatum {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json(Some(DEFAULT_FLOAT_PRECISION)).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ModularDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DatumJson::deserialize(d)?;
        if j.rank != j.labels.len() {
            return Err(serde::de::Error::custom("rank disagrees with labels"));
        }
        ModularDatum::new(j.labels, j.s, j.t).map_err(serde::de::Error::custom)
    }
}

/// Quadratic form `η(g^j) = ζ_n^{a j²}` on `Z_n`, `n` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticFormSpec {
    pub n: u64,
    pub a: i64,
}

fn group_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect()
}

/// `S[j][k] = ζ_n^{2ajk}`, `T[j] = ζ_n^{aj²}`.
pub fn build_pointed(spec: QuadraticFormSpec) -> Result<ModularDatum> {
    let n = spec.n;
    if n == 0 || n.is_multiple_of(2) {
        return Err(invalid(format!("pointed datum needs odd n, got {n}")));
    }
    if nt::gcd(spec.a.unsigned_abs() % n, n) != 1 && n > 1 {
        return Err(invalid(format!("{} is not coprime to {n}", spec.a)));
    }
    if n > crate::exactnum::max_conductor() as u64 {
        return Err(invalid(format!("{n} exceeds the conductor cap")));
    }
    let c = n as u32;
    let a = spec.a;
    let z = |e: i64| Cyclotomic::zeta(c, e);
    let rows = (0..n as i64)
        .map(|j| (0..n as i64).map(|k| z(2 * a * j * k)).collect())
        .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
    let t = (0..n as i64)
        .map(|j| z(a * j * j))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ModularDatum::new(group_labels(n as usize), Matrix::from_rows(rows)?, t)
}

/// Which of the two families of `(p, p+4)` candidates to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// `(a₁/p)(a₂/q) = +1`; dimensions carry `ε⁻¹`.
    One,
    /// `(a₁/p)(a₂/q) = -1`; dimensions carry `ε`.
    Two,
}

impl Case {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Case::One),
            2 => Ok(Case::Two),
            _ => Err(invalid(format!("case must be 1 or 2, got {n}"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }

    /// The case forced by the residue classes of `a₁` mod `p` and `a₂` mod `q`.
    pub fn of_residues(p: u64, q: u64, a1: i64, a2: i64) -> Result<Self> {
        Ok(if residue(a1, p)? * residue(a2, q)? == 1 {
            Case::One
        } else {
            Case::Two
        })
    }
}

fn residue(a: i64, p: u64) -> Result<i8> {
    if !nt::is_odd_prime(p) {
        return Err(invalid(format!("{p} is not an odd prime")));
    }
    match nt::legendre(a, p)? {
        0 => Err(invalid(format!("{a} is not coprime to {p}"))),
        s => Ok(s),
    }
}

fn check_pair(p: u64, q: u64) -> Result<()> {
    if !nt::is_odd_prime(p) || !nt::is_odd_prime(q) {
        return Err(invalid(format!("({p}, {q}) are not both odd primes")));
    }
    if q != p + 4 {
        return Err(invalid(format!("q - p must be 4, got ({p}, {q})")));
    }
    let n = 8 * p * q;
    if n > crate::exactnum::max_conductor() as u64 {
        return Err(invalid(format!("({p}, {q}) needs conductor {n} above the cap")));
    }
    Ok(())
}

/// `ζ_p^e + ζ_p^{-e}` at conductor `n`.
fn two_cos(p: u64, e: i64, n: u32) -> Result<Cyclotomic> {
    let z = |k| Cyclotomic::root_of_unity(p as u32, k, n);
    Ok(&z(e)? + &z(-e)?)
}

fn candidate_labels(p: u64, q: u64) -> Vec<String> {
    let mut l = vec!["1".to_string(), "X".to_string()];
    l.extend((1..=(p - 1) / 2).map(|j| format!("Z{j}")));
    l.extend((1..=(q - 1) / 2).map(|j| format!("W{j}")));
    l
}

/// Categorical dimensions `(x, d₁, d₂)` of `X`, `Z_j`, `W_j` for the case,
/// with `ε = (√p+√q)/2`: Case 1 `(ε⁻², √q/ε, √p/ε)`, Case 2 `(ε², √q·ε, √p·ε)`.
pub fn candidate_dimensions(p: u64, q: u64, case: Case) -> Result<[QuadraticNumber; 3]> {
    check_pair(p, q)?;
    let d = p * q;
    let (p, q) = (p as i64, q as i64);
    let sg = match case {
        Case::One => -1,
        Case::Two => 1,
    };
    let quad = |a: Rational, b: Rational| QuadraticNumber::new(d, a, b);
    Ok([
        quad(ratio(p + q, 4), ratio(sg, 2))?,
        quad(ratio(q, 2), ratio(sg, 2))?,
        quad(ratio(sg * p, 2), ratio(1, 2))?,
    ])
}

/// The rank `p+3` candidate for `q = p+4`, ordered `(1, X, Z₁…, W₁…)`.
pub fn build_candidate(p: u64, q: u64, case: Case, a1: i64, a2: i64) -> Result<ModularDatum> {
    check_pair(p, q)?;
    if Case::of_residues(p, q, a1, a2)? != case {
        return Err(invalid(format!(
            "residues of a1 = {a1} mod {p} and a2 = {a2} mod {q} do not match case {}",
            case.number()
        )));
    }
    let n = (4 * p * q) as u32;
    let [x, d1, d2] = candidate_dimensions(p, q, case)?;
    let (x, d1, d2) = (x.to_cyclotomic(n)?, d1.to_cyclotomic(n)?, d2.to_cyclotomic(n)?);
    // signs on W in row 0, row 1, and the W block
    let (w0, w1, wb) = match case {
        Case::One => (-1, 1, 1),
        Case::Two => (1, -1, -1),
    };
    let m1 = ((p - 1) / 2) as usize;
    let m2 = ((q - 1) / 2) as usize;
    let r = m1 + m2 + 2;
    let mut rows = vec![vec![Cyclotomic::zero(n); r]; r];
    rows[0][0] = Cyclotomic::one(n);
    rows[1][1] = Cyclotomic::one(n);
    rows[0][1] = x.clone();
    rows[1][0] = x;
    for j in 1..=m1 {
        for u in 0..2 {
            rows[u][1 + j] = d1.clone();
            rows[1 + j][u] = d1.clone();
        }
        for k in 1..=m1 {
            rows[1 + j][1 + k] = &d1 * &two_cos(p, 2 * a1 * (j * k) as i64, n)?;
        }
    }
    for j in 1..=m2 {
        let w = 1 + m1 + j;
        rows[0][w] = d2.scale_int(w0);
        rows[w][0] = d2.scale_int(w0);
        rows[1][w] = d2.scale_int(w1);
        rows[w][1] = d2.scale_int(w1);
        for k in 1..=m2 {
            rows[w][1 + m1 + k] = (&d2 * &two_cos(q, 2 * a2 * (j * k) as i64, n)?).scale_int(wb);
        }
    }
    let mut t = vec![Cyclotomic::one(n), Cyclotomic::one(n)];
    for j in 1..=m1 as i64 {
        t.push(Cyclotomic::root_of_unity(p as u32, a1 * j * j, n)?);
    }
    for j in 1..=m2 as i64 {
        t.push(Cyclotomic::root_of_unity(q as u32, a2 * j * j, n)?);
    }
    ModularDatum::new(candidate_labels(p, q), Matrix::from_rows(rows)?, t)
}

/// A single Eholzer representation read as modular data: `S = s/s[0][0]`,
/// `T = t/t[0]`.
pub fn eholzer_datum(p: u64, a: i64) -> Result<ModularDatum> {
    let r = build_eholzer(p, a)?;
    let inv = r.s().get(0, 0).inverse()?;
    let t0 = r.t()[0].inverse()?;
    let t = r.t().iter().map(|x| x * &t0).collect();
    let mut labels = vec!["1".to_string()];
    labels.extend((1..r.dim()).map(|j| format!("Y{j}")));
    ModularDatum::new(labels, r.s().scale(&inv)?, t)
}

/// The rank `(p+1)/2 + 3` candidate of global dimension `4p`, ordered
/// `(1, g, Y₁…, M, gM)` with `T = (1, 1, ζ_p^{aj²}…, ξ₁, -ξ₁)`.
pub fn build_ty_candidate(p: u64, a: i64, branch: XiBranch) -> Result<ModularDatum> {
    residue(a, p)?;
    let xi1 = rho_prime_xi1(p, a, branch)?;
    let n = (8 * p) as u32;
    let m = ((p - 1) / 2) as usize;
    let r = m + 4;
    let (mo, mg) = (m + 2, m + 3);
    let root = gauss_sqrt(p, n)?;
    let mut rows = vec![vec![Cyclotomic::zero(n); r]; r];
    for u in 0..2 {
        for v in 0..2 {
            rows[u][v] = Cyclotomic::one(n);
        }
        for j in 1..=m {
            rows[u][1 + j] = Cyclotomic::from_int(2, n);
            rows[1 + j][u] = Cyclotomic::from_int(2, n);
        }
        let sg = if u == 0 { 1 } else { -1 };
        for c in [mo, mg] {
            rows[u][c] = root.scale_int(sg);
            rows[c][u] = root.scale_int(sg);
        }
    }
    for j in 1..=m {
        for k in 1..=m {
            rows[1 + j][1 + k] = two_cos(p, 2 * a * (j * k) as i64, n)?.scale_int(2);
        }
    }
    rows[mo][mo] = -&root;
    rows[mg][mg] = -&root;
    rows[mo][mg] = root.clone();
    rows[mg][mo] = root;
    let mut t = vec![Cyclotomic::one(n), Cyclotomic::one(n)];
    for j in 1..=m as i64 {
        t.push(Cyclotomic::root_of_unity(p as u32, a * j * j, n)?);
    }
    t.push(xi1.clone());
    t.push(-xi1);
    let mut labels = vec!["1".to_string(), "g".to_string()];
    labels.extend((1..=m).map(|j| format!("Y{j}")));
    labels.push("M".into());
    labels.push("gM".into());
    ModularDatum::new(labels, Matrix::from_rows(rows)?, t)
}

/// Kronecker product; object `(i, j)` sits at index `i·rank₂ + j`.
pub fn deligne_product(m1: &ModularDatum, m2: &ModularDatum) -> Result<ModularDatum> {
    let s = m1.s.kron(&m2.s)?;
    let mut labels = Vec::with_capacity(m1.rank() * m2.rank());
    let mut t = Vec::with_capacity(labels.capacity());
    for (l1, t1) in m1.labels.iter().zip(&m1.t) {
        for (l2, t2) in m2.labels.iter().zip(&m2.t) {
            labels.push(match (l1.as_str(), l2.as_str()) {
                ("1", _) => l2.clone(),
                (_, "1") => l1.clone(),
                _ => format!("{l1}⊠{l2}"),
            });
            t.push(t1.checked_mul(t2)?);
        }
    }
    ModularDatum::new(labels, s, t)
}

/// Complex conjugate of `S` and `T`.
pub fn reverse_braiding(m: &ModularDatum) -> ModularDatum {
    ModularDatum {
        labels: m.labels.clone(),
        s: m.s.conj(),
        t: m.t.iter().map(Cyclotomic::conj).collect(),
    }
}

/// `Σ_i S[0][i]·conj(S[0][i])`.
pub fn global_dimension(m: &ModularDatum) -> Cyclotomic {
    m.dims()
        .iter()
        .fold(Cyclotomic::zero(m.s.conductor()), |acc, d| &acc + &(d * &d.conj()))
}

/// `Σ_i S[0][i]²`, the scalar in `S² = dim·C`.
fn dim_from_square(m: &ModularDatum) -> Cyclotomic {
    m.dims()
        .iter()
        .fold(Cyclotomic::zero(m.s.conductor()), |acc, d| &acc + &(d * d))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussSums {
    pub plus: Cyclotomic,
    pub minus: Cyclotomic,
    pub central_charge: Cyclotomic,
}

fn tau(m: &ModularDatum, conj: bool) -> Cyclotomic {
    m.dims()
        .iter()
        .zip(&m.t)
        .fold(Cyclotomic::zero(m.s.conductor()), |acc, (d, t)| {
            let t = if conj { t.conj() } else { t.clone() };
            &acc + &(&(d * d) * &t)
        })
}

/// `τ± = Σ d_i² θ_i^{±1}` and `τ⁺/√dim`.
pub fn gauss_sums(m: &ModularDatum) -> Result<GaussSums> {
    let plus = tau(m, false);
    let minus = tau(m, true);
    let root = sqrt_global_dimension(m)?;
    let central_charge = (&plus * &root).checked_div(&dim_from_square(m))?;
    Ok(GaussSums {
        plus,
        minus,
        central_charge,
    })
}

/// The positive square root of `dim = Σ d_i²` as a cyclotomic number.
///
/// Rational dimensions use [`gauss_sqrt`]; otherwise `√dim = τ⁺/ξ` where the
/// root of unity `ξ` is the square root of `τ⁺²/dim` making the quotient
/// positive.
pub fn sqrt_global_dimension(m: &ModularDatum) -> Result<Cyclotomic> {
    let d = dim_from_square(m);
    if let Some(r) = d.to_rational() {
        if !r.is_positive() {
            return Err(Error::Inconsistent(format!("global dimension {r} is not positive")));
        }
        let prod = (r.numer() * r.denom())
            .to_u64()
            .ok_or_else(|| invalid("global dimension too large for a square root"))?;
        let (s, k) = nt::square_part(prod);
        let n = nt::lcm(d.conductor() as u64, QuadraticNumber::min_conductor(k)) as u32;
        let root = if k == 1 {
            Cyclotomic::one(n)
        } else {
            gauss_sqrt(k, n)?
        };
        return Ok(root.scale(&Rational::new(s.into(), r.denom().clone())));
    }
    let plus = tau(m, false);
    let w = (&plus * &plus).checked_div(&d)?;
    let xi = principal_sqrt(&w)
        .map_err(|_| Error::Inconsistent("τ⁺²/dim is not a root of unity".into()))?;
    for cand in [xi.clone(), -&xi] {
        let root = plus.checked_mul(&cand.conj())?;
        if root.is_real() && real_sign(&root)? > 0 {
            return Ok(root);
        }
    }
    Err(Error::Inconsistent("no positive square root of the global dimension".into()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub symmetric: bool,
    /// `S[0][0] = 1` and `T[0] = 1`.
    pub unit_normalized: bool,
    pub dims_nonzero: bool,
    pub t_roots_of_unity: bool,
    /// Duality read off `S² = dim·C`, when `C` is an involutive permutation
    /// fixing the unit.
    pub charge_conjugation: Option<Vec<usize>>,
    pub nondegenerate: bool,
    /// `(S̄·T)³ = τ⁺·S̄²`. `S` holds double-braiding traces, so the
    /// representation acts through its conjugate; real data are unaffected.
    pub modular_relation: bool,
    pub global_dimension: Cyclotomic,
    pub t_order: Option<u64>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.symmetric
            && self.unit_normalized
            && self.dims_nonzero
            && self.t_roots_of_unity
            && self.charge_conjugation.is_some()
            && self.nondegenerate
            && self.modular_relation
    }
}

/// Reads the permutation `C` from `S² = dim·C`.
fn charge_conjugation(s2: &Matrix, dim: &Cyclotomic) -> Option<Vec<usize>> {
    let r = s2.dim();
    if dim.is_zero() {
        return None;
    }
    let mut perm = Vec::with_capacity(r);
    for i in 0..r {
        let nz: Vec<usize> = (0..r).filter(|j| !s2.get(i, *j).is_zero()).collect();
        if nz.len() != 1 || s2.get(i, nz[0]) != dim {
            return None;
        }
        perm.push(nz[0]);
    }
    let involutive = (0..r).all(|i| perm[perm[i]] == i);
    (involutive && perm[0] == 0).then_some(perm)
}

/// Exact checks of the modular data axioms; failures are data, not errors.
pub fn check_axioms(m: &ModularDatum) -> Result<AxiomReport> {
    let s = &m.s;
    let s2 = s.mul(s)?;
    let dim = dim_from_square(m);
    let charge = charge_conjugation(&s2, &dim);
    let sbar = s.conj();
    let st = sbar.mul_diag(&m.t)?;
    let st3 = st.mul(&st)?.mul(&st)?;
    let order = t_order(&m.t);
    Ok(AxiomReport {
        symmetric: s.is_symmetric(),
        unit_normalized: s.get(0, 0).is_one() && m.t[0].is_one(),
        dims_nonzero: m.dims().iter().all(|d| !d.is_zero()),
        t_roots_of_unity: order.is_some(),
        nondegenerate: charge.is_some(),
        charge_conjugation: charge,
        modular_relation: st3 == s2.conj().scale(&tau(m, false))?,
        global_dimension: global_dimension(m),
        t_order: order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessReason {
    NonIntegral,
    Negative,
}

/// First `(x, y, z)` in lexicographic order whose Verlinde coefficient is not
/// a non-negative integer; `value` is exact and rational whenever the
/// coefficient is.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerlindeWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub value: Cyclotomic,
    pub reason: WitnessReason,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum VerlindeOutcome {
    Ring(FusionRing),
    NonIntegral(VerlindeWitness),
}

/// `N_{xy}^z = (1/dim) Σ_w S_xw S_yw S_{z*w} / S_0w`.
pub fn verlinde(m: &ModularDatum) -> Result<VerlindeOutcome> {
    let r = m.rank();
    let s = &m.s;
    if !s.is_symmetric() {
        return Err(invalid("Verlinde formula needs a symmetric S"));
    }
    let dim = dim_from_square(m);
    let charge = charge_conjugation(&s.mul(s)?, &dim)
        .ok_or_else(|| invalid("S² is not a multiple of a charge-conjugation permutation"))?;
    let inv_dim = dim.inverse()?;
    // 1/(dim·S_0w)
    let weight = m
        .dims()
        .par_iter()
        .map(|d| Ok(d.inverse()?.checked_mul(&inv_dim)?))
        .collect::<Result<Vec<_>>>()?;
    let dual_rows: Vec<usize> = charge.clone();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|x| (x..r).map(move |y| (x, y))).collect();
    let values = pairs
        .par_iter()
        .map(|&(x, y)| {
            let a: Vec<Cyclotomic> = (0..r)
                .map(|w| &(s.get(x, w) * s.get(y, w)) * &weight[w])
                .collect();
            (0..r)
                .map(|z| {
                    let zs = dual_rows[z];
                    (0..r).fold(Cyclotomic::zero(s.conductor()), |acc, w| {
                        let b = s.get(zs, w);
                        if b.is_zero() || a[w].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[w] * b)
                        }
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let mut table = vec![None; r * r * r];
    for (idx, &(x, y)) in pairs.iter().enumerate() {
        for (z, v) in values[idx].iter().enumerate() {
            table[(x * r + y) * r + z] = Some(v);
            table[(y * r + x) * r + z] = Some(v);
        }
    }
    let mut n = vec![0u32; r * r * r];
    for (idx, v) in table.into_iter().enumerate() {
        let v = v.expect("every triple is filled by symmetry");
        let (x, y, z) = (idx / (r * r), (idx / r) % r, idx % r);
        let witness = |reason| {
            Ok(VerlindeOutcome::NonIntegral(VerlindeWitness {
                x,
                y,
                z,
                value: v.clone(),
                reason,
            }))
        };
        match v.to_integer() {
            None => return witness(WitnessReason::NonIntegral),
            Some(k) if k.is_negative() => return witness(WitnessReason::Negative),
            Some(k) => {
                n[idx] = u32::try_from(k)
                    .map_err(|_| Error::Inconsistent("fusion coefficient overflows u32".into()))?;
            }
        }
    }
    Ok(VerlindeOutcome::Ring(FusionRing::new(
        m.labels.clone(),
        0,
        charge,
        n,
    )?))
}

/// Entrywise Galois image, with the row now holding FP dimensions (if any).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaloisConjugate {
    pub datum: ModularDatum,
    pub fpdim_row: Option<usize>,
}

pub fn galois_conjugate(m: &ModularDatum, k: i64) -> Result<GaloisConjugate> {
    let s = m.s.galois(k)?;
    let t = m
        .t
        .iter()
        .map(|x| x.galois(k))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let datum = ModularDatum::new(m.labels.clone(), s, t)?;
    let fpdim_row = fpdim_vector(&datum).ok().map(|f| f.row);
    Ok(GaloisConjugate { datum, fpdim_row })
}

/// A row of `S` whose ratios to its unit entry are all real and positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FpDims {
    pub row: usize,
    pub values: Vec<Cyclotomic>,
}

pub fn fpdim_vector(m: &ModularDatum) -> Result<FpDims> {
    for row in 0..m.rank() {
        let r = m.s.row(row);
        if r[0].is_zero() {
            continue;
        }
        // sign(a/b) = sign(a·conj(b)) when a/b is real
        let positive = r.iter().try_fold(true, |ok, x| -> Result<bool> {
            if !ok {
                return Ok(false);
            }
            let y = x * &r[0].conj();
            Ok(y.is_real() && real_sign(&y)? > 0)
        })?;
        if positive {
            let inv = r[0].inverse()?;
            let values = r.iter().map(|x| x * &inv).collect();
            return Ok(FpDims { row, values });
        }
    }
    Err(Error::Inconsistent(
        "no row of S has all-positive ratios; the data is not pseudo-unitarizable".into(),
    ))
}

pub fn trivial_twist_count(m: &ModularDatum) -> usize {
    m.t.iter().filter(|x| x.is_one()).count()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub p: u64,
    pub q: u64,
    pub unit_candidate: QuadraticNumber,
    #[serde(with = "crate::exactnum::rational_str")]
    pub norm: Rational,
    pub is_integer: bool,
    pub is_unit: bool,
    pub accepted: bool,
    /// `accepted ⇔ q − p = 4`.
    pub agrees_with_gap: bool,
}

/// Tests whether `((p+q)/2 + √pq)/2` is an algebraic unit.
pub fn gate_q_minus_p(p: u64, q: u64) -> Result<GateReport> {
    if !nt::is_odd_prime(p) || !nt::is_odd_prime(q) || p >= q {
        return Err(invalid(format!("gate needs odd primes p < q, got ({p}, {q})")));
    }
    let u = QuadraticNumber::new(p * q, ratio((p + q) as i64, 4), ratio(1, 2))?;
    let is_unit = is_algebraic_unit(&u);
    Ok(GateReport {
        p,
        q,
        norm: quad_norm(&u),
        is_integer: u.is_algebraic_integer(),
        is_unit,
        accepted: is_unit,
        agrees_with_gap: is_unit == (q - p == 4),
        unit_candidate: u,
    })
}

/// Every odd prime pair `p < q ≤ max`, in `(p, q)` order.
pub fn gate_scan(max: u64) -> Result<Vec<GateReport>> {
    let primes = nt::odd_primes_up_to(max);
    let pairs: Vec<(u64, u64)> = primes
        .iter()
        .enumerate()
        .flat_map(|(i, p)| primes[i + 1..].iter().map(move |q| (*p, *q)))
        .collect();
    pairs.par_iter().map(|&(p, q)| gate_q_minus_p(p, q)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyReport {
    /// Squarefree `d` with `dim ∈ Q(√d)`.
    pub field: u64,
    pub global_dimension: QuadraticNumber,
    #[serde(with = "crate::exactnum::rational_str")]
    pub norm: Rational,
    pub t_order: Option<u64>,
    /// Primes dividing the norm but not `ord(T)`.
    pub offending_primes: Vec<u64>,
}

impl CauchyReport {
    pub fn passes(&self) -> bool {
        self.t_order.is_some() && self.offending_primes.is_empty()
    }
}

/// Every prime dividing the norm of the global dimension must divide `ord(T)`.
pub fn cauchy_check(m: &ModularDatum) -> Result<CauchyReport> {
    let dim = global_dimension(m);
    let n = nt::lcm(dim.conductor() as u64, 4);
    let mut fields: Vec<u64> = nt::divisors(n).into_iter().filter(|d| nt::is_squarefree(*d)).collect();
    fields.sort_unstable();
    let (field, q) = fields
        .iter()
        .find_map(|d| to_quadratic(&dim, *d).ok().map(|q| (*d, q)))
        .ok_or_else(|| invalid("global dimension does not lie in a quadratic field"))?;
    let norm = quad_norm(&q);
    let order = t_order(&m.t);
    let mut primes: Vec<u64> = Vec::new();
    for part in [norm.numer(), norm.denom()] {
        let v = u64::try_from(part.abs())
            .map_err(|_| invalid("norm too large to factor"))?;
        primes.extend(nt::factorize(v).into_iter().map(|(pr, _)| pr));
    }
    primes.sort_unstable();
    primes.dedup();
    let offending = primes
        .into_iter()
        .filter(|pr| order.is_none_or(|o| o % pr != 0))
        .collect();
    Ok(CauchyReport {
        field,
        global_dimension: q,
        norm,
        t_order: order,
        offending_primes: offending,
    })
}

/// Cube root of a root of unity with the smallest multiplicative order.
fn minimal_cube_root(x: &Cyclotomic) -> Result<Cyclotomic> {
    let (m, j) = x
        .root_of_unity_exponent()
        .ok_or_else(|| Error::Inconsistent("expected a root of unity".into()))?;
    let best = (0..3)
        .map(|k| j + k * m)
        .min_by_key(|e| (3 * m / nt::gcd(*e, 3 * m), *e))
        .expect("three candidates");
    Ok(Cyclotomic::zeta((3 * m) as u32, best as i64)?)
}

/// Linear `SL(2,Z)` representation from the datum: `s = S̄/√dim`, `t = T`,
/// with the projective phase `ξ = τ⁺/√dim` absorbed into `s` when `ξ⁴ = 1`
/// and into `t` (as a cube root of `ξ⁻¹`) otherwise.
pub fn to_sl2rep(m: &ModularDatum) -> Result<SL2Rep> {
    let root = sqrt_global_dimension(m)?;
    let inv_root = root.checked_div(&dim_from_square(m))?;
    let xi = tau(m, false).checked_mul(&inv_root)?;
    let s = m.s.conj().scale(&inv_root)?;
    if xi.pow(4).is_one() {
        SL2Rep::new(s.scale(&xi.conj())?, m.t.clone())
    } else {
        let zeta = minimal_cube_root(&xi.conj())?;
        let t = m
            .t
            .iter()
            .map(|x| x.checked_mul(&zeta))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        SL2Rep::new(s, t)
    }
}

/// `1/x` for `x` with `|x|² ∈ Q(√d)`, avoiding a full Galois-orbit norm.
fn inverse_via_quadratic(x: &Cyclotomic, d: u64) -> Result<Cyclotomic> {
    let abs2 = to_quadratic(&(x * &x.conj()), d)?;
    let inv = abs2.inverse()?.to_cyclotomic(x.conductor())?;
    Ok(&x.conj() * &inv)
}

/// `V·(U ⊕ 1)·(ρ_p ⊕ ρ_q)(s)·(U ⊕ 1)ᵀ·V` for the given signs.
fn signed_block(p: u64, q: u64, a1: i64, a2: i64, sv: &SignVector) -> Result<SL2Rep> {
    let r = direct_sum(&build_eholzer(p, a1)?, &build_eholzer(q, a2)?)?;
    conjugate_signed(&r, sv, p, q)
}

/// Signs making every Frobenius-Perron dimension positive when row
/// `unit_row` (1 or 2) of the signed block matrix is the unit.
///
/// The FP row is the one of the first two whose global dimension is the
/// larger Galois conjugate in `Q(√pq)`; `ν` is fixed to `+1`.
pub fn resolve_signs(p: u64, q: u64, a1: i64, a2: i64, unit_row: u8) -> Result<SignVector> {
    check_pair(p, q)?;
    let dim = ((p + q) / 2 + 1) as usize;
    let plus = SignVector::all_plus(dim - 1, unit_row);
    let m = signed_block(p, q, a1, a2, &plus)?;
    let s = m.s();
    let u = (unit_row - 1) as usize;
    let d = p * q;
    // global dimension with row u as the unit: Σ_i (M_ui/M_uu)²
    let num = s
        .row(u)
        .iter()
        .fold(Cyclotomic::zero(s.conductor()), |acc, x| &acc + &(x * x));
    let den = s.get(u, u) * s.get(u, u);
    let w = to_quadratic(&(&num * &den.conj()), d)?;
    let abs2 = to_quadratic(&(&den * &den.conj()), d)?;
    let dim_u = w.checked_div(&abs2)?;
    let fp = match dim_u.b().cmp(&Rational::zero()) {
        std::cmp::Ordering::Greater => u,
        std::cmp::Ordering::Less => 1 - u,
        std::cmp::Ordering::Equal => {
            return Err(Error::Inconsistent("global dimension is rational".into()))
        }
    };
    let sign_of_ratio = |i: usize, j: usize| -> Result<i8> {
        let y = s.get(fp, i) * &s.get(fp, j).conj();
        match real_sign(&y)? {
            0 => Err(Error::Inconsistent(format!("zero entry at ({fp}, {i})"))),
            sg => Ok(sg),
        }
    };
    let mut v = vec![1i8; dim];
    if u == 0 {
        for (i, vi) in v.iter_mut().enumerate().skip(1) {
            *vi = sign_of_ratio(i, 0)?;
        }
    } else {
        let e1 = sign_of_ratio(0, 1)?;
        v[1] = e1;
        for (i, vi) in v.iter_mut().enumerate().skip(2) {
            *vi = e1 * sign_of_ratio(i, 1)?;
        }
    }
    Ok(SignVector {
        nu: 1,
        eps: v[1..].to_vec(),
        unit_row,
    })
}

/// The signed block matrix rescaled by its unit entry, with the unit moved
/// to index 0.
pub fn candidate_from_signs(
    p: u64,
    q: u64,
    a1: i64,
    a2: i64,
    sv: &SignVector,
) -> Result<ModularDatum> {
    check_pair(p, q)?;
    let rep = signed_block(p, q, a1, a2, sv)?;
    let u = (sv.unit_row - 1) as usize;
    let inv = inverse_via_quadratic(rep.s().get(u, u), p * q)?;
    let mut s = rep.s().scale(&inv)?;
    let mut t = rep.t().to_vec();
    if u == 1 {
        let mut perm: Vec<usize> = (0..s.dim()).collect();
        perm.swap(0, 1);
        s = s.permute(&perm);
        t.swap(0, 1);
    }
    ModularDatum::new(candidate_labels(p, q), s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::SurdSum;
    use crate::fusionring::{fusion_subrings, verify_axioms};
    use crate::slrep::verify_sl2_relations;

    fn pointed(n: u64, a: i64) -> ModularDatum {
        build_pointed(QuadraticFormSpec { n, a }).unwrap()
    }

    fn q21(a: (i64, i64), b: (i64, i64)) -> QuadraticNumber {
        QuadraticNumber::new(21, ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    fn case2_37() -> ModularDatum {
        let a2 = nt::smallest_nonresidue(7).unwrap() as i64;
        build_candidate(3, 7, Case::Two, 1, a2).unwrap()
    }

    fn ring(o: VerlindeOutcome) -> FusionRing {
        match o {
            VerlindeOutcome::Ring(r) => r,
            VerlindeOutcome::NonIntegral(w) => panic!("non-integral: {w:?}"),
        }
    }

    #[test]
    fn pointed_three() {
        let m = pointed(3, 1);
        let z = |k| Cyclotomic::zeta(3, k).unwrap();
        assert_eq!(m.t(), &[z(0), z(1), z(1)]);
        assert_eq!(m.s().get(1, 2), &z(4));
        let ss = m.s().mul(&m.s().conj()).unwrap();
        assert_eq!(ss, Matrix::identity(3, 3).scale(&Cyclotomic::from_int(3, 3)).unwrap());
        assert!(check_axioms(&m).unwrap().passes());
        assert_eq!(pointed(1, 1).rank(), 1);
        assert!(build_pointed(QuadraticFormSpec { n: 9, a: 3 }).is_err());
        assert!(build_pointed(QuadraticFormSpec { n: 4, a: 1 }).is_err());
    }

    #[test]
    fn pointed_verlinde_is_group_ring() {
        for (n, a) in [(5, 1), (5, 2), (7, 3), (9, 2)] {
            let m = pointed(n, a);
            assert!(check_axioms(&m).unwrap().passes());
            let r = ring(verlinde(&m).unwrap());
            for i in 0..n as usize {
                for j in 0..n as usize {
                    assert_eq!(r.product(i, j), vec![((i + j) % n as usize, 1)]);
                }
            }
            // j² ≡ 0 mod n has only j = 0 when n is squarefree
            let expected = if n == 9 { 3 } else { 1 };
            assert_eq!(trivial_twist_count(&m), expected);
            let c = cauchy_check(&m).unwrap();
            assert!(c.passes(), "{c:?}");
        }
        let c = cauchy_check(&pointed(5, 1)).unwrap();
        assert_eq!(c.norm, ratio(25, 1));
    }

    #[test]
    fn pointed_gauss_sums() {
        let g = gauss_sums(&pointed(3, 1)).unwrap();
        let z3 = Cyclotomic::zeta(3, 1).unwrap();
        assert_eq!(g.plus, &Cyclotomic::one(3) + &z3.scale_int(2));
        assert_eq!(&g.plus * &g.minus, Cyclotomic::from_int(3, 3));
        for (p, a) in [(3u64, 1i64), (5, 2), (7, 1), (11, 2)] {
            let g = gauss_sums(&pointed(p, a)).unwrap();
            let mu = crate::slrep::pointed_central_charge(p, a).unwrap();
            assert_eq!(g.central_charge, mu, "p={p} a={a}");
        }
    }

    #[test]
    fn reverse_of_pointed() {
        let r = reverse_braiding(&pointed(3, 1));
        assert_eq!(r.s(), pointed(3, 2).s());
        assert_eq!(r.t(), pointed(3, 2).t());
        assert_eq!(reverse_braiding(&r), pointed(3, 1));
    }

    #[test]
    fn case_two_three_seven() {
        let m = case2_37();
        assert_eq!(m.rank(), 6);
        let n = m.s().conductor();
        let dims: Vec<QuadraticNumber> = vec![
            QuadraticNumber::from_int(1),
            q21((5, 2), (1, 2)),
            q21((7, 2), (1, 2)),
            q21((3, 2), (1, 2)),
            q21((3, 2), (1, 2)),
            q21((3, 2), (1, 2)),
        ];
        let want: Vec<Cyclotomic> = dims.iter().map(|d| d.to_cyclotomic(n).unwrap()).collect();
        assert_eq!(m.dims(), &want[..]);
        let rep = check_axioms(&m).unwrap();
        assert!(rep.passes(), "{rep:?}");
        let d = q21((105, 2), (21, 2)).to_cyclotomic(n).unwrap();
        assert_eq!(rep.global_dimension, d);
        let sum: SurdSum = dims.iter().map(|x| {
            let s = SurdSum::from(x);
            &s * &s
        }).sum();
        assert_eq!(sum, SurdSum::from(q21((105, 2), (21, 2))));
        let r = ring(verlinde(&m).unwrap());
        assert!(verify_axioms(&r).passes());
        assert_eq!(fusion_subrings(&r).unwrap(), vec![vec![0], (0..6).collect()]);
        assert_eq!(trivial_twist_count(&m), 2);
        assert!(cauchy_check(&m).unwrap().passes());
        assert_eq!(fpdim_vector(&m).unwrap().row, 0);
    }

    #[test]
    fn case_one_dimensions() {
        let m = build_candidate(3, 7, Case::One, 1, 1).unwrap();
        let n = m.s().conductor();
        // d₁ = √7(√7-√3)/2 = (7-√21)/2, d₂ = (√21-3)/2
        assert_eq!(m.dims()[2], q21((7, 2), (-1, 2)).to_cyclotomic(n).unwrap());
        assert_eq!(m.dims()[3], q21((3, 2), (-1, 2)).to_cyclotomic(n).unwrap());
        assert!(check_axioms(&m).unwrap().passes());
        let fp = fpdim_vector(&m).unwrap();
        assert_eq!(fp.row, 1);
        // σ: √21 ↦ -√21 fixes ζ₄ (k ≡ 1 mod 4) and ζ₇, moves √3
        let k = (1..84).find(|k| {
            nt::gcd(*k, 84) == 1 && k % 4 == 1 && k % 7 == 1 && k % 3 == 2
        }).unwrap();
        let g = galois_conjugate(&m, k as i64).unwrap();
        assert_eq!(g.fpdim_row, Some(0));
        assert_eq!(ring(verlinde(&g.datum).unwrap()), ring(verlinde(&m).unwrap()));
    }

    #[test]
    fn candidate_parameter_errors() {
        assert!(build_candidate(3, 11, Case::One, 1, 1).is_err());
        assert!(build_candidate(3, 7, Case::Two, 1, 1).is_err());
        assert!(build_candidate(3, 7, Case::One, 1, 3).is_err());
        assert!(build_candidate(9, 13, Case::One, 1, 1).is_err());
    }

    #[test]
    fn perturbed_entry_is_caught() {
        let m = case2_37();
        let x = -m.s().get(0, 2);
        let bad = ModularDatum::new(
            m.labels().to_vec(),
            m.s().with_entry(0, 2, x).unwrap(),
            m.t().to_vec(),
        )
        .unwrap();
        let rep = check_axioms(&bad).unwrap();
        assert!(!rep.symmetric && !rep.passes());
        assert!(verlinde(&bad).is_err());
    }

    #[test]
    fn gate_examples() {
        let g = gate_q_minus_p(3, 7).unwrap();
        assert!(g.accepted && g.agrees_with_gap);
        assert_eq!(g.norm, ratio(1, 1));
        let g = gate_q_minus_p(3, 11).unwrap();
        assert!(!g.accepted && g.is_integer);
        assert_eq!(g.norm, ratio(4, 1));
        let g = gate_q_minus_p(3, 5).unwrap();
        assert!(!g.is_integer && !g.accepted);
        assert_eq!(g.norm, ratio(1, 4));
        assert!(gate_q_minus_p(7, 3).is_err());
        assert!(gate_q_minus_p(3, 9).is_err());
    }

    #[test]
    fn gate_scan_small() {
        let acc: Vec<(u64, u64)> = gate_scan(50)
            .unwrap()
            .into_iter()
            .filter(|g| g.accepted)
            .map(|g| (g.p, g.q))
            .collect();
        assert_eq!(acc, vec![(3, 7), (7, 11), (13, 17), (19, 23), (37, 41), (43, 47)]);
        assert!(gate_scan(6).unwrap().iter().all(|g| !g.accepted));
    }

    #[test]
    fn cauchy_counterexample() {
        let n = 21;
        let s = Matrix::from_rows(vec![
            vec![Cyclotomic::one(n), Cyclotomic::from_int(2, n)],
            vec![Cyclotomic::from_int(2, n), Cyclotomic::from_int(-1, n)],
        ])
        .unwrap();
        let t = vec![Cyclotomic::one(n), Cyclotomic::zeta(n, 1).unwrap()];
        let m = ModularDatum::new(vec!["1".into(), "A".into()], s, t).unwrap();
        let c = cauchy_check(&m).unwrap();
        assert_eq!(c.offending_primes, vec![5]);
        assert!(!c.passes());
    }

    #[test]
    fn eholzer_is_not_integral() {
        for p in [5u64, 7] {
            let m = eholzer_datum(p, 1).unwrap();
            match verlinde(&m).unwrap() {
                VerlindeOutcome::NonIntegral(w) => assert_eq!(w.reason, WitnessReason::NonIntegral),
                VerlindeOutcome::Ring(_) => panic!("p = {p} gave a ring"),
            }
        }
    }

    #[test]
    fn ty_candidates() {
        for p in [3u64, 5, 7] {
            let m = build_ty_candidate(p, 1, XiBranch::PlusRootNegXi).unwrap();
            assert_eq!(m.rank(), (p as usize).div_ceil(2) + 3);
            let rep = check_axioms(&m).unwrap();
            assert!(rep.passes(), "p={p} {rep:?}");
            assert_eq!(rep.global_dimension, Cyclotomic::from_int(4 * p as i64, 1));
            let r = ring(verlinde(&m).unwrap());
            assert!(verify_axioms(&r).passes());
            let fp = fpdim_vector(&m).unwrap();
            let root = gauss_sqrt(p, 4 * p as u32).unwrap();
            assert_eq!(fp.values.iter().filter(|x| **x == root).count(), 2);
        }
    }

    #[test]
    fn ty_branch_sensitivity() {
        for b in [XiBranch::PlusRootNegXi, XiBranch::MinusRootNegXi] {
            assert!(check_axioms(&build_ty_candidate(5, 2, b).unwrap()).unwrap().passes());
        }
        for b in [XiBranch::PlusRootXi, XiBranch::MinusRootXi] {
            assert!(!check_axioms(&build_ty_candidate(5, 2, b).unwrap()).unwrap().passes());
        }
    }

    #[test]
    fn deligne_and_twists() {
        let m = case2_37();
        let d = deligne_product(&m, &reverse_braiding(&pointed(3, 1))).unwrap();
        assert_eq!(d.rank(), 18);
        assert_eq!(trivial_twist_count(&d), 4);
        let gd = global_dimension(&d);
        assert_eq!(gd, &global_dimension(&m) * &Cyclotomic::from_int(3, 1));
        let triv = pointed(1, 1);
        assert_eq!(deligne_product(&m, &triv).unwrap(), m);
        assert_eq!(d.labels()[4], "X⊠g");
        assert_eq!(d.labels()[7], "Z1⊠g");
    }

    #[test]
    fn sl2_from_candidate() {
        let m = case2_37();
        let r = to_sl2rep(&m).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.level(), 21);
        assert!(verify_sl2_relations(&r).unwrap().passes());
        let r3 = to_sl2rep(&pointed(3, 1)).unwrap();
        assert!(verify_sl2_relations(&r3).unwrap().passes());
    }

    #[test]
    fn sl2_matches_signed_eholzer_sum() {
        for (case, a2) in [(Case::Two, 3i64), (Case::One, 1)] {
            let m = build_candidate(3, 7, case, 1, a2).unwrap();
            let r = to_sl2rep(&m).unwrap();
            let sv = resolve_signs(3, 7, 1, a2, 1).unwrap();
            let direct = direct_sum(&build_eholzer(3, 1).unwrap(), &build_eholzer(7, a2).unwrap()).unwrap();
            let c = conjugate_signed(&direct, &sv, 3, 7).unwrap();
            assert_eq!(r.t(), c.t(), "{case:?}");
            assert_eq!(r.s(), c.s(), "{case:?}");
        }
    }

    #[test]
    fn signs_reproduce_candidates() {
        for (p, q) in [(3u64, 7u64), (7, 11)] {
            let nr = nt::smallest_nonresidue(q).unwrap() as i64;
            for (case, a2) in [(Case::One, 1i64), (Case::Two, nr)] {
                let want = build_candidate(p, q, case, 1, a2).unwrap();
                for unit_row in [1u8, 2] {
                    let sv = resolve_signs(p, q, 1, a2, unit_row).unwrap();
                    let got = candidate_from_signs(p, q, 1, a2, &sv).unwrap();
                    let fp = fpdim_vector(&got).unwrap();
                    assert!(fp.values.iter().all(|x| real_sign(x).unwrap() > 0));
                    assert_eq!(got, want, "({p},{q}) {case:?} unit_row {unit_row}");
                    let m1 = ((p - 1) / 2) as usize;
                    let w_sign = if unit_row == 1 { 1 } else { -1 };
                    let expect: Vec<i8> = std::iter::repeat_n(1, 1 + m1)
                        .chain(std::iter::repeat_n(w_sign, ((q - 1) / 2) as usize))
                        .collect();
                    assert_eq!(sv.eps, expect);
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let m = case2_37();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"floats\""));
        let back: ModularDatum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let f = m.float_table(256);
        assert!((f.s[0][1][0] - 4.79128784748).abs() < 1e-10);
    }
}
