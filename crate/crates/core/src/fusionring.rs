//! Fusion rings as dense structure-constant tensors.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactnum::{ratio, SurdSum};
use crate::{invalid, Error, Result};

/// Largest rank accepted by [`fusion_subrings`].
pub const MAX_SUBRING_RANK: usize = 24;
/// Failures kept verbatim in an [`AxiomReport`]; the rest are only counted.
pub const MAX_REPORTED_FAILURES: usize = 64;

/// `N[i][j][k]` is the multiplicity of `k` in `i ⊗ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RingJson", into = "RingJson")]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    n: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    rank: usize,
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<[u64; 4]>,
}

impl From<FusionRing> for RingJson {
    fn from(r: FusionRing) -> Self {
        RingJson {
            rank: r.rank(),
            n: r
                .nonzero()
                .map(|(i, j, k, v)| [i as u64, j as u64, k as u64, v as u64])
                .collect(),
            labels: r.labels,
            unit: r.unit,
            dual: r.dual,
        }
    }
}

impl TryFrom<RingJson> for FusionRing {
    type Error = Error;
    fn try_from(j: RingJson) -> Result<Self> {
        let r = j.rank;
        let mut n = vec![0u32; r * r * r];
        for [i, a, k, v] in j.n {
            let (i, a, k) = (i as usize, a as usize, k as usize);
            if i >= r || a >= r || k >= r {
                return Err(invalid("structure constant index out of range"));
            }
            n[(i * r + a) * r + k] =
                u32::try_from(v).map_err(|_| invalid("structure constant too large"))?;
        }
        FusionRing::new(j.labels, j.unit, j.dual, n)
    }
}

impl FusionRing {
    /// Checks shapes only; use [`verify_axioms`] for the ring axioms.
    pub fn new(labels: Vec<String>, unit: usize, dual: Vec<usize>, n: Vec<u32>) -> Result<Self> {
        let r = labels.len();
        if r == 0 || unit >= r || dual.len() != r || n.len() != r * r * r {
            return Err(invalid("fusion ring shapes disagree"));
        }
        if dual.iter().any(|d| *d >= r) {
            return Err(invalid("dual index out of range"));
        }
        Ok(FusionRing {
            labels,
            unit,
            dual,
            n,
        })
    }

    /// Builds a ring from a product rule returning `(k, multiplicity)` pairs.
    pub fn from_rule(
        labels: Vec<String>,
        unit: usize,
        dual: Vec<usize>,
        rule: impl Fn(usize, usize) -> Vec<(usize, u32)>,
    ) -> Result<Self> {
        let r = labels.len();
        let mut n = vec![0u32; r * r * r];
        for i in 0..r {
            for j in 0..r {
                for (k, v) in rule(i, j) {
                    n[(i * r + j) * r + k] += v;
                }
            }
        }
        Self::new(labels, unit, dual, n)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        let r = self.rank();
        self.n[(i * r + j) * r + k]
    }

    /// Copy with `N[i][j][k]` replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, v: u32) -> Self {
        let r = self.rank();
        let mut out = self.clone();
        out.n[(i * r + j) * r + k] = v;
        out
    }

    /// Nonzero `(i, j, k, N)` in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, u32)> + '_ {
        let r = self.rank();
        self.n
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(move |(idx, v)| (idx / (r * r), (idx / r) % r, idx % r, *v))
    }

    /// Support of `i ⊗ j` as `(k, N)`.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        let r = self.rank();
        let base = (i * r + j) * r;
        (0..r)
            .filter_map(|k| {
                let v = self.n[base + k];
                (v != 0).then_some((k, v))
            })
            .collect()
    }

    fn supports(&self) -> Vec<Vec<(usize, u32)>> {
        let r = self.rank();
        (0..r * r).map(|ij| self.product(ij / r, ij % r)).collect()
    }

    /// The based subring on `indices` (which must be closed), relabeled in order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let pos = |x: usize| indices.iter().position(|y| *y == x);
        let unit = pos(self.unit).ok_or_else(|| invalid("subset misses the unit"))?;
        let dual = indices
            .iter()
            .map(|i| pos(self.dual[*i]).ok_or_else(|| invalid("subset not closed under duality")))
            .collect::<Result<Vec<_>>>()?;
        let s = indices.len();
        let mut n = vec![0u32; s * s * s];
        for (a, i) in indices.iter().enumerate() {
            for (b, j) in indices.iter().enumerate() {
                for (k, v) in self.product(*i, *j) {
                    let c = pos(k).ok_or_else(|| invalid("subset not closed under fusion"))?;
                    n[(a * s + b) * s + c] = v;
                }
            }
        }
        let labels = indices.iter().map(|i| self.labels[*i].clone()).collect();
        Self::new(labels, unit, dual, n)
    }

    /// Relabels by sending index `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|p| *p >= r || std::mem::replace(&mut seen[*p], true)) {
            return Err(invalid("not a permutation"));
        }
        let mut labels = vec![String::new(); r];
        let mut dual = vec![0; r];
        let mut n = vec![0u32; r * r * r];
        for i in 0..r {
            labels[perm[i]] = self.labels[i].clone();
            dual[perm[i]] = perm[self.dual[i]];
            for j in 0..r {
                for k in 0..r {
                    n[(perm[i] * r + perm[j]) * r + perm[k]] = self.get(i, j, k);
                }
            }
        }
        Self::new(labels, perm[self.unit], dual, n)
    }

    /// CSV fusion table with header `X,Y,Z,N`, nonzero entries only.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let io = |e: csv::Error| Error::Inconsistent(e.to_string());
        w.write_record(["X", "Y", "Z", "N"]).map_err(io)?;
        for (i, j, k, v) in self.nonzero() {
            w.write_record([
                self.labels[i].as_str(),
                self.labels[j].as_str(),
                self.labels[k].as_str(),
                &v.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Inconsistent(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Inconsistent(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomFailure {
    /// `N[unit][j][k]` or `N[j][unit][k]` differs from `δ_jk`.
    Unit { j: usize, k: usize },
    /// `dual` is not an involution at `i`.
    DualInvolution { i: usize },
    /// `N[i][j][unit]` differs from `δ_{j,dual(i)}`.
    Dual { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize, lhs: u64, rhs: u64 },
    Frobenius { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub unit_ok: bool,
    pub dual_ok: bool,
    pub associativity_ok: bool,
    pub frobenius_ok: bool,
    pub failure_count: usize,
    /// The first [`MAX_REPORTED_FAILURES`] failures in scan order.
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.failure_count == 0
    }
}

/// Exhaustive check of unit, duality, associativity and Frobenius reciprocity.
pub fn verify_axioms(r: &FusionRing) -> AxiomReport {
    let rk = r.rank();
    let u = r.unit;
    let mut unit = Vec::new();
    for j in 0..rk {
        for k in 0..rk {
            let want = (j == k) as u32;
            if r.get(u, j, k) != want || r.get(j, u, k) != want {
                unit.push(AxiomFailure::Unit { j, k });
            }
        }
    }
    let mut dual = Vec::new();
    for i in 0..rk {
        if r.dual[r.dual[i]] != i {
            dual.push(AxiomFailure::DualInvolution { i });
        }
        for j in 0..rk {
            if r.get(i, j, u) != (j == r.dual[i]) as u32 {
                dual.push(AxiomFailure::Dual { i, j });
            }
        }
    }
    let mut frob = Vec::new();
    for i in 0..rk {
        for j in 0..rk {
            for k in 0..rk {
                let v = r.get(i, j, k);
                if v != r.get(r.dual[i], k, j) || v != r.get(k, r.dual[j], i) {
                    frob.push(AxiomFailure::Frobenius { i, j, k });
                }
            }
        }
    }
    let sup = r.supports();
    let assoc: Vec<AxiomFailure> = (0..rk)
        .into_par_iter()
        .flat_map_iter(|i| {
            let sup = &sup;
            let mut out = Vec::new();
            let mut lhs = vec![0u64; rk];
            let mut rhs = vec![0u64; rk];
            for j in 0..rk {
                for k in 0..rk {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    // (i⊗j)⊗k
                    for &(m, a) in &sup[i * rk + j] {
                        for &(l, b) in &sup[m * rk + k] {
                            lhs[l] += a as u64 * b as u64;
                        }
                    }
                    // i⊗(j⊗k)
                    for &(m, a) in &sup[j * rk + k] {
                        for &(l, b) in &sup[i * rk + m] {
                            rhs[l] += a as u64 * b as u64;
                        }
                    }
                    for l in 0..rk {
                        if lhs[l] != rhs[l] {
                            out.push(AxiomFailure::Associativity {
                                i,
                                j,
                                k,
                                l,
                                lhs: lhs[l],
                                rhs: rhs[l],
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();
    let report_flags = (unit.is_empty(), dual.is_empty(), assoc.is_empty(), frob.is_empty());
    let all: Vec<AxiomFailure> = unit.into_iter().chain(dual).chain(assoc).chain(frob).collect();
    AxiomReport {
        unit_ok: report_flags.0,
        dual_ok: report_flags.1,
        associativity_ok: report_flags.2,
        frobenius_ok: report_flags.3,
        failure_count: all.len(),
        failures: all.into_iter().take(MAX_REPORTED_FAILURES).collect(),
    }
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

/// Basis `Z_n ∪ {X}` with `gX = Xg = X` and `X⊗X = Σ_g g + m·X`.
pub fn near_group(n: usize, m: u32) -> Result<FusionRing> {
    if n == 0 {
        return Err(invalid("near-group order must be positive"));
    }
    let mut labels = group_labels(n);
    labels.push("X".into());
    let x = n;
    let dual = (0..n).map(|i| (n - i) % n).chain([x]).collect();
    FusionRing::from_rule(labels, 0, dual, |i, j| match (i == x, j == x) {
        (false, false) => vec![((i + j) % n, 1)],
        (true, false) | (false, true) => vec![(x, 1)],
        (true, true) => (0..n).map(|g| (g, 1)).chain([(x, m)]).filter(|e| e.1 > 0).collect(),
    })
}

/// The `Z_2`-extension of `near_group(n, n)`: basis
/// `g^0…g^{n-1}, X, Y_0…Y_{n-1}, M` with
/// `g^iY_j = Y_{i+j}`, `Y_jg^i = Y_{j-i}`, `Y_jY_l = g^{j-l} + X`, `MM = Σg`,
/// `gM = Mg = M`, `MY = YM = X`, `MX = XM = ΣY`, `XY = YX = M + ΣY`.
pub fn extension_ring(n: usize) -> Result<FusionRing> {
    if n == 0 {
        return Err(invalid("extension order must be positive"));
    }
    let x = n;
    let y = |j: usize| n + 1 + j % n;
    let m = 2 * n + 1;
    let mut labels = group_labels(n);
    labels.push("X".into());
    labels.extend((0..n).map(|j| format!("Y{j}")));
    labels.push("M".into());
    let dual = (0..n)
        .map(|i| (n - i) % n)
        .chain(x..=m)
        .collect();
    #[derive(Clone, Copy)]
    enum B {
        G(usize),
        X,
        Y(usize),
        M,
    }
    let kind = |i: usize| {
        if i < n {
            B::G(i)
        } else if i == x {
            B::X
        } else if i == m {
            B::M
        } else {
            B::Y(i - n - 1)
        }
    };
    let all_g = || (0..n).map(|g| (g, 1u32));
    let all_y = move || (0..n).map(move |j| (y(j), 1u32));
    FusionRing::from_rule(labels, 0, dual, |i, j| match (kind(i), kind(j)) {
        (B::G(a), B::G(b)) => vec![((a + b) % n, 1)],
        (B::G(_), B::X) | (B::X, B::G(_)) => vec![(x, 1)],
        (B::G(a), B::Y(b)) => vec![(y(a + b), 1)],
        (B::Y(b), B::G(a)) => vec![(y(b + n - a), 1)],
        (B::G(_), B::M) | (B::M, B::G(_)) => vec![(m, 1)],
        (B::X, B::X) => all_g().chain([(x, n as u32)]).collect(),
        (B::X, B::Y(_)) | (B::Y(_), B::X) => std::iter::once((m, 1)).chain(all_y()).collect(),
        (B::X, B::M) | (B::M, B::X) => all_y().collect(),
        (B::Y(a), B::Y(b)) => vec![((a + n - b) % n, 1), (x, 1)],
        (B::Y(_), B::M) | (B::M, B::Y(_)) => vec![(x, 1)],
        (B::M, B::M) => all_g().collect(),
    })
}

/// Exact candidate values of a dimension function, one per basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCharacter {
    pub values: Vec<SurdSum>,
}

impl DimensionCharacter {
    /// `d(g) = 1`, `d(X) = (m + √(m² + 4n))/2`.
    pub fn near_group(n: usize, m: u32) -> Self {
        let m = m as i64;
        let dx = &SurdSum::from_int(m) + &SurdSum::sqrt((m * m + 4 * n as i64) as u64);
        let mut values = vec![SurdSum::from_int(1); n];
        values.push(dx.scale(&ratio(1, 2)));
        DimensionCharacter { values }
    }

    /// Adds `d(Y) = (√n + √(n+4))/2` and `d(M) = √n` to the near-group values.
    pub fn extension(n: usize) -> Self {
        let mut d = Self::near_group(n, n as u32);
        let dy = (&SurdSum::sqrt(n as u64) + &SurdSum::sqrt(n as u64 + 4)).scale(&ratio(1, 2));
        d.values.extend(std::iter::repeat_n(dy, n));
        d.values.push(SurdSum::sqrt(n as u64));
        d
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(SurdSum::to_f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub unit_ok: bool,
    pub positive: bool,
    /// Pairs `(i, j)` where `d_i d_j ≠ Σ_k N_ij^k d_k`, capped.
    pub multiplicative_failures: Vec<(usize, usize)>,
    /// `Σ d_i²`.
    pub total: SurdSum,
}

impl DimensionReport {
    pub fn holds(&self) -> bool {
        self.unit_ok && self.positive && self.multiplicative_failures.is_empty()
    }
}

/// Exact check that `d` is a positive ring homomorphism to the reals.
pub fn verify_dimension_character(r: &FusionRing, d: &DimensionCharacter) -> Result<DimensionReport> {
    let rk = r.rank();
    if d.values.len() != rk {
        return Err(invalid(format!(
            "{} dimension values for a rank-{rk} ring",
            d.values.len()
        )));
    }
    let v = &d.values;
    let failures: Vec<(usize, usize)> = (0..rk * rk)
        .into_par_iter()
        .filter(|ij| {
            let (i, j) = (ij / rk, ij % rk);
            let lhs = &v[i] * &v[j];
            let rhs: SurdSum = r
                .product(i, j)
                .into_iter()
                .map(|(k, c)| v[k].scale(&ratio(c as i64, 1)))
                .sum();
            lhs != rhs
        })
        .map(|ij| (ij / rk, ij % rk))
        .collect();
    Ok(DimensionReport {
        unit_ok: v[r.unit] == SurdSum::from_int(1),
        positive: v.iter().all(SurdSum::is_positive),
        multiplicative_failures: failures.into_iter().take(MAX_REPORTED_FAILURES).collect(),
        total: v.iter().map(|x| x * x).sum(),
    })
}

/// Perron eigenvector of `I + Σ_i L_i`, normalized at the unit.
pub fn fpdim_numeric(r: &FusionRing) -> Result<Vec<f64>> {
    let rk = r.rank();
    // A[k][j] = δ_kj + Σ_i N_ij^k
    let mut a = vec![0f64; rk * rk];
    for (i, j, k, v) in r.nonzero() {
        let _ = i;
        a[k * rk + j] += v as f64;
    }
    for k in 0..rk {
        a[k * rk + k] += 1.0;
    }
    let mut x = vec![1f64; rk];
    for _ in 0..100_000 {
        let mut y = vec![0f64; rk];
        for k in 0..rk {
            y[k] = (0..rk).map(|j| a[k * rk + j] * x[j]).sum();
        }
        let norm = y[r.unit];
        if !(norm.is_finite() && norm > 0.0) {
            break;
        }
        y.iter_mut().for_each(|v| *v /= norm);
        let delta = x
            .iter()
            .zip(&y)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        x = y;
        if delta < 1e-14 {
            return Ok(x);
        }
    }
    Err(Error::Inconsistent("Perron iteration did not converge".into()))
}

pub fn is_commutative(r: &FusionRing) -> bool {
    let rk = r.rank();
    (0..rk).all(|i| (i + 1..rk).all(|j| (0..rk).all(|k| r.get(i, j, k) == r.get(j, i, k))))
}

fn closure(r: &FusionRing, mut set: u32) -> u32 {
    let rk = r.rank();
    loop {
        let mut next = set;
        for i in (0..rk).filter(|i| set >> i & 1 == 1) {
            next |= 1 << r.dual[i];
            for j in (0..rk).filter(|j| set >> j & 1 == 1) {
                for (k, _) in r.product(i, j) {
                    next |= 1 << k;
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Every based subring, as sorted index lists ordered by size then content.
pub fn fusion_subrings(r: &FusionRing) -> Result<Vec<Vec<usize>>> {
    let rk = r.rank();
    if rk > MAX_SUBRING_RANK {
        return Err(invalid(format!(
            "rank {rk} exceeds the subring search bound {MAX_SUBRING_RANK}"
        )));
    }
    let start = closure(r, 1 << r.unit);
    let mut found = vec![start];
    let mut queue = vec![start];
    while let Some(s) = queue.pop() {
        for x in (0..rk).filter(|x| s >> x & 1 == 0) {
            let c = closure(r, s | 1 << x);
            if !found.contains(&c) {
                found.push(c);
                queue.push(c);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found
        .into_iter()
        .map(|s| (0..rk).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

/// A faithful grading by `Z_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Z2Grading {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// Universal grading: components and the group multiplication on them.
fn universal_grading(r: &FusionRing) -> (Vec<usize>, Vec<Vec<usize>>) {
    let rk = r.rank();
    let mut parent: Vec<usize> = (0..rk).collect();
    let sup = r.supports();
    for s in &sup {
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0].0), find(&mut parent, w[1].0));
            parent[a] = b;
        }
    }
    loop {
        // a product of two components must land in a single component
        let mut merged = false;
        let comp: Vec<usize> = (0..rk).map(|i| find(&mut parent, i)).collect();
        let mut target = std::collections::HashMap::new();
        for i in 0..rk {
            for j in 0..rk {
                for &(k, _) in &sup[i * rk + j] {
                    let key = (comp[i], comp[j]);
                    let c = find(&mut parent, k);
                    match target.get(&key) {
                        None => {
                            target.insert(key, c);
                        }
                        Some(&t) => {
                            let t = find(&mut parent, t);
                            if t != c {
                                parent[c] = t;
                                merged = true;
                            }
                        }
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }
    let roots: Vec<usize> = (0..rk).map(|i| find(&mut parent, i)).collect();
    let mut ids: Vec<usize> = Vec::new();
    let comp: Vec<usize> = roots
        .iter()
        .map(|c| match ids.iter().position(|x| x == c) {
            Some(p) => p,
            None => {
                ids.push(*c);
                ids.len() - 1
            }
        })
        .collect();
    let g = ids.len();
    let mut table = vec![vec![0; g]; g];
    for i in 0..rk {
        for j in 0..rk {
            if let Some(&(k, _)) = sup[i * rk + j].first() {
                table[comp[i]][comp[j]] = comp[k];
            }
        }
    }
    (comp, table)
}

fn generated(table: &[Vec<usize>], gens: &[usize], e: usize) -> Vec<bool> {
    let g = table.len();
    let mut inside = vec![false; g];
    inside[e] = true;
    let mut frontier = vec![e];
    while let Some(a) = frontier.pop() {
        for &s in gens {
            let b = table[a][s];
            if !inside[b] {
                inside[b] = true;
                frontier.push(b);
            }
        }
    }
    inside
}

/// A faithful `Z_2`-grading, if the universal grading group has an index-2
/// subgroup. The even block is the kernel containing the unit.
pub fn detect_z2_grading(r: &FusionRing) -> Option<Z2Grading> {
    let (comp, table) = universal_grading(r);
    let g = table.len();
    let e = comp[r.unit];
    // an index-2 subgroup contains every square; G/⟨squares⟩ is elementary abelian
    let squares: Vec<usize> = (0..g).map(|a| table[a][a]).collect();
    let mut gens = squares;
    let mut h = generated(&table, &gens, e);
    let avoid = (0..g).find(|a| !h[*a])?;
    for y in 0..g {
        if h[y] {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(y);
        let t = generated(&table, &trial, e);
        if !t[avoid] {
            gens = trial;
            h = t;
        }
    }
    let (even, odd): (Vec<usize>, Vec<usize>) = (0..r.rank()).partition(|i| h[comp[*i]]);
    Some(Z2Grading { even, odd })
}
