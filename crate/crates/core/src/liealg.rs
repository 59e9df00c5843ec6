//! Root data for the classical families and their affine extensions.
//!
//! Besides the Cartan data this module hosts the two Lie-theoretic oracles
//! that every generated crystal is checked against: the Weyl dimension
//! formula and Freudenthal's multiplicity recursion.  Both are written
//! directly from the root system and share no code with the Young wall
//! machinery.

// Cartan-matrix arithmetic reads most clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by root-datum construction and weight manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("rank {rank} is not supported for family {family} (minimum {minimum})")]
    RankTooSmall {
        family: Family,
        rank: usize,
        minimum: usize,
    },
    #[error("expected {expected} weight coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight coefficient {index} is negative ({value}); the weight is not dominant")]
    NotDominant { index: usize, value: i64 },
    #[error("node index {index} is out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown family `{0}` (expected A, B, C or D)")]
    UnknownFamily(String),
}

/// The four classical families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// Smallest rank for which the family is accepted by the wall models.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 3,
            Family::D => 4,
        }
    }

    /// The affine algebra whose level-one walls carry this family's crystals.
    pub fn affine_kind(self) -> AffineKind {
        match self {
            Family::A => AffineKind::Untwisted,
            Family::B => AffineKind::B,
            Family::C => AffineKind::Twisted,
            Family::D => AffineKind::D,
        }
    }

    /// Checks `rank` against [`Family::min_rank`].
    pub fn check_rank(self, rank: usize) -> Result<(), LieError> {
        if rank < self.min_rank() {
            Err(LieError::RankTooSmall {
                family: self,
                rank,
                minimum: self.min_rank(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(LieError::UnknownFamily(other.to_string())),
        }
    }
}

/// Classical Cartan matrix, `a[i][j] = <h_i, alpha_j>`, nodes `0..rank`
/// standing for the simple roots `1..=rank`.
pub fn cartan_matrix(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, ij: i64, ji: i64| {
        a[i][j] = ij;
        a[j][i] = ji;
    };
    match family {
        Family::A => {
            for i in 1..n {
                link(i - 1, i, -1, -1);
            }
        }
        Family::B => {
            for i in 1..n.saturating_sub(1) {
                link(i - 1, i, -1, -1);
            }
            if n >= 2 {
                // alpha_n is short: <h_n, alpha_{n-1}> = -2.
                link(n - 2, n - 1, -1, -2);
            }
        }
        Family::C => {
            for i in 1..n.saturating_sub(1) {
                link(i - 1, i, -1, -1);
            }
            if n >= 2 {
                // alpha_n is long: <h_{n-1}, alpha_n> = -2.
                link(n - 2, n - 1, -2, -1);
            }
        }
        Family::D => {
            for i in 1..n.saturating_sub(1) {
                link(i - 1, i, -1, -1);
            }
            if n >= 3 {
                link(n - 3, n - 1, -1, -1);
            }
        }
    }
    a
}

/// Symmetrizing weights `d_i` (half squared root lengths, scaled to
/// coprime positive integers) with `d_i a_ij = d_j a_ji`.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    if n == 0 {
        return Vec::new();
    }
    // Rational propagation along the (connected) Dynkin diagram.
    let mut num = vec![0i64; n];
    let mut den = vec![0i64; n];
    num[0] = 1;
    den[0] = 1;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && cartan[i][j] != 0 && num[j] == 0 {
                // d_j = d_i a_ij / a_ji
                num[j] = num[i] * cartan[i][j];
                den[j] = den[i] * cartan[j][i];
                let g = gcd(num[j].abs(), den[j].abs());
                num[j] /= g;
                den[j] /= g;
                if den[j] < 0 {
                    num[j] = -num[j];
                    den[j] = -den[j];
                }
                stack.push(j);
            }
        }
    }
    let l = den.iter().fold(1i64, |acc, &d| acc / gcd(acc, d) * d);
    let mut d: Vec<i64> = (0..n).map(|i| num[i] * (l / den[i])).collect();
    let g = d.iter().fold(0i64, |acc, &x| gcd(acc, x));
    for x in &mut d {
        *x /= g;
    }
    d
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Cartan matrix, positive roots and invariant form of a classical algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    /// `cartan[i][j] = <h_i, alpha_j>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2`, scaled so the short roots have weight 1.
    pub root_lengths: Vec<i64>,
}

impl RootDatum {
    /// Builds the datum for any rank `>= 1`.  (The wall models impose larger
    /// minimum ranks; the oracles do not.)
    pub fn new(family: Family, rank: usize) -> Result<Self, LieError> {
        if rank == 0 {
            return Err(LieError::RankTooSmall {
                family,
                rank,
                minimum: 1,
            });
        }
        let cartan = cartan_matrix(family, rank);
        let root_lengths = symmetrizer(&cartan);
        let positive_roots = positive_roots_by_closure(&cartan);
        Ok(RootDatum {
            family,
            rank,
            cartan,
            positive_roots,
            root_lengths,
        })
    }

    /// `<h_j, beta>` for `beta` in simple-root coordinates.
    pub fn coroot_pairing(&self, j: usize, beta: &[i64]) -> i64 {
        beta.iter()
            .zip(&self.cartan[j])
            .map(|(b, a)| b * a)
            .sum()
    }

    /// Converts simple-root coordinates into pairing coordinates.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        Weight((0..self.rank).map(|j| self.coroot_pairing(j, beta)).collect())
    }

    /// Invariant form `(beta, gamma)` of two elements of the root lattice.
    pub fn form_roots(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += beta[i] * gamma[j] * self.root_lengths[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// Invariant form `(mu, beta)` of a weight (pairing coordinates) with an
    /// element of the root lattice.
    pub fn form_weight_root(&self, mu: &[i64], beta: &[i64]) -> i64 {
        (0..self.rank)
            .map(|i| mu[i] * beta[i] * self.root_lengths[i])
            .sum()
    }
}

/// Generates positive roots from the simple ones by string closure: if `beta`
/// is a root and its `alpha_i`-string extends `q > 0` steps upward, then
/// `beta + alpha_i` is a root.
fn positive_roots_by_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = how far the string extends downward.
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

/// The four affine types that host level-one Young walls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AffineKind {
    /// `A_n^(1)`.
    #[serde(rename = "A1")]
    Untwisted,
    /// `A_{2n-1}^(2)`, hosting `C_n`.
    #[serde(rename = "A2tw")]
    Twisted,
    /// `B_n^(1)`.
    #[serde(rename = "B1")]
    B,
    /// `D_n^(1)`.
    #[serde(rename = "D1")]
    D,
}

impl AffineKind {
    /// The tag used in the wall JSON encoding.
    pub fn tag(self) -> &'static str {
        match self {
            AffineKind::Untwisted => "A1",
            AffineKind::Twisted => "A2tw",
            AffineKind::B => "B1",
            AffineKind::D => "D1",
        }
    }

    /// The classical family obtained by deleting node 0.
    pub fn classical(self) -> Family {
        match self {
            AffineKind::Untwisted => Family::A,
            AffineKind::Twisted => Family::C,
            AffineKind::B => Family::B,
            AffineKind::D => Family::D,
        }
    }

    /// All four kinds, in a fixed order.
    pub fn all() -> [AffineKind; 4] {
        [
            AffineKind::Untwisted,
            AffineKind::Twisted,
            AffineKind::B,
            AffineKind::D,
        ]
    }
}

impl fmt::Display for AffineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Affine Cartan matrix (nodes `0..=rank`) together with the null-root marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineDatum {
    pub kind: AffineKind,
    pub rank: usize,
    /// `cartan[i][j] = <h_i, alpha_j>`, `i, j` in `0..=rank`.
    pub cartan: Vec<Vec<i64>>,
    /// Coefficients `a_i` of the null root `delta = sum a_i alpha_i`.
    pub marks: Vec<i64>,
}

impl AffineDatum {
    pub fn new(kind: AffineKind, rank: usize) -> Result<Self, LieError> {
        let family = kind.classical();
        family.check_rank(rank)?;
        let n = rank;
        let classical = cartan_matrix(family, n);
        let mut cartan = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                cartan[i + 1][j + 1] = classical[i][j];
            }
        }
        cartan[0][0] = 2;
        let marks = match kind {
            AffineKind::Untwisted => {
                if n == 1 {
                    cartan[0][1] = -2;
                    cartan[1][0] = -2;
                } else {
                    cartan[0][1] = -1;
                    cartan[1][0] = -1;
                    cartan[0][n] = -1;
                    cartan[n][0] = -1;
                }
                vec![1; n + 1]
            }
            AffineKind::Twisted | AffineKind::B | AffineKind::D => {
                cartan[0][2] = -1;
                cartan[2][0] = -1;
                let mut m = vec![2i64; n + 1];
                m[0] = 1;
                m[1] = 1;
                match kind {
                    AffineKind::Twisted => m[n] = 1,
                    AffineKind::D => {
                        m[n - 1] = 1;
                        m[n] = 1;
                    }
                    _ => {}
                }
                m
            }
        };
        Ok(AffineDatum {
            kind,
            rank,
            cartan,
            marks,
        })
    }

    /// `<h_j, alpha_i>` for `j` in `1..=rank`: the classical restriction of
    /// the affine simple root `alpha_i`, in pairing coordinates.
    pub fn classical_root(&self, i: usize) -> Weight {
        Weight((1..=self.rank).map(|j| self.cartan[j][i]).collect())
    }

    /// Classical restriction of the fundamental weight `Lambda_index`.
    pub fn classical_fundamental(&self, index: usize) -> Weight {
        Weight(
            (1..=self.rank)
                .map(|j| if j == index { 1 } else { 0 })
                .collect(),
        )
    }

    /// Affine fundamental weights admissible as ground states.
    pub fn level_one_weights(&self) -> Vec<usize> {
        let n = self.rank;
        match self.kind {
            AffineKind::Untwisted => (0..=n).collect(),
            AffineKind::Twisted => vec![0, 1],
            AffineKind::B => vec![0, 1, n],
            AffineKind::D => vec![0, 1, n - 1, n],
        }
    }
}

/// A weight in pairing coordinates `<h_j, .>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len])
    }

    /// `<h_j, self>`, with `j` indexing the stored coordinates.
    pub fn pairing(&self, j: usize) -> Result<i64, LieError> {
        self.0.get(j).copied().ok_or(LieError::IndexOutOfRange {
            index: j,
            len: self.0.len(),
        })
    }

    pub fn add_scaled(&mut self, other: &Weight, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }

    /// Applies the simple reflection `s_j` (classical index `j`, 0-based):
    /// `s_j(mu) = mu - <h_j, mu> alpha_j`.
    pub fn reflect(&self, datum: &RootDatum, j: usize) -> Weight {
        let k = self.0[j];
        Weight(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &x)| x - k * datum.cartan[i][j])
                .collect(),
        )
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dominant integral weight, given by its coefficients on the fundamental
/// weights `lambda_1, ..., lambda_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight(Vec<u32>);

impl DominantWeight {
    /// Validates that every coefficient is nonnegative.
    pub fn new(coefficients: &[i64]) -> Result<Self, LieError> {
        coefficients
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u32::try_from(value).map_err(|_| LieError::NotDominant { index, value })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DominantWeight)
    }

    pub fn from_unsigned(coefficients: Vec<u32>) -> Self {
        DominantWeight(coefficients)
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn as_weight(&self) -> Weight {
        Weight(self.0.iter().map(|&c| i64::from(c)).collect())
    }

    fn check_rank(&self, rank: usize) -> Result<(), LieError> {
        if self.0.len() != rank {
            Err(LieError::LengthMismatch {
                expected: rank,
                got: self.0.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// The extra fundamental weight that is not a sum of `omega`s: `lambda_n`
/// for `B_n`, `lambda_{n-1}` or `lambda_n` for `D_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Spin {
    None,
    /// `lambda_n` of `B_n`.
    Short,
    /// `lambda_{n-1}` of `D_n`.
    Minus,
    /// `lambda_n` of `D_n`.
    Plus,
}

/// `lambda = omega_{i_1} + ... + omega_{i_t} (+ spin part)`, with the
/// `omega` tables of each family:
///
/// * `A_n`, `C_n`: `omega_i = lambda_i`;
/// * `B_n`: `omega_i = lambda_i` for `i < n`, `omega_n = 2 lambda_n`;
/// * `D_n`: `omega_i = lambda_i` for `i <= n-2`,
///   `omega_{n-1} = lambda_{n-1} + lambda_n`, `omega_n = 2 lambda_n`,
///   `omega_{n+1} = 2 lambda_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OmegaDecomposition {
    /// `i_1 <= ... <= i_t`.
    pub parts: Vec<usize>,
    pub spin: Spin,
}

impl OmegaDecomposition {
    /// Expands the decomposition back into fundamental-weight coefficients.
    pub fn reconstruct(&self, family: Family, rank: usize) -> DominantWeight {
        let n = rank;
        let mut c = vec![0u32; n];
        for &i in &self.parts {
            match (family, i) {
                (Family::B, i) if i == n => c[n - 1] += 2,
                (Family::D, i) if i == n - 1 => {
                    c[n - 2] += 1;
                    c[n - 1] += 1;
                }
                (Family::D, i) if i == n => c[n - 1] += 2,
                (Family::D, i) if i == n + 1 => c[n - 2] += 2,
                (_, i) => c[i - 1] += 1,
            }
        }
        match self.spin {
            Spin::None => {}
            Spin::Short | Spin::Plus => c[n - 1] += 1,
            Spin::Minus => c[n - 2] += 1,
        }
        DominantWeight(c)
    }

    /// Number of `omega` parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty() && self.spin == Spin::None
    }
}

impl fmt::Display for OmegaDecomposition {
    /// `2 omega_1 + omega_3 + lambda_n`, or `0` for the zero weight.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for run in self.parts.chunk_by(|a, b| a == b) {
            match run.len() {
                1 => terms.push(format!("omega_{}", run[0])),
                k => terms.push(format!("{k} omega_{}", run[0])),
            }
        }
        match self.spin {
            Spin::None => {}
            Spin::Short | Spin::Plus => terms.push("lambda_n".into()),
            Spin::Minus => terms.push("lambda_{n-1}".into()),
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Splits a dominant weight into `omega` parts and a spin flag.
pub fn decompose(
    family: Family,
    rank: usize,
    lambda: &DominantWeight,
) -> Result<OmegaDecomposition, LieError> {
    lambda.check_rank(rank)?;
    let n = rank;
    let c: Vec<usize> = lambda.0.iter().map(|&x| x as usize).collect();
    let mut parts = Vec::new();
    let mut spin = Spin::None;
    let mut push = |i: usize, times: usize| parts.extend(std::iter::repeat_n(i, times));
    match family {
        Family::A | Family::C => {
            for (k, &ck) in c.iter().enumerate() {
                push(k + 1, ck);
            }
        }
        Family::B => {
            for (k, &ck) in c.iter().enumerate().take(n - 1) {
                push(k + 1, ck);
            }
            push(n, c[n - 1] / 2);
            if c[n - 1] % 2 == 1 {
                spin = Spin::Short;
            }
        }
        Family::D => {
            for (k, &ck) in c.iter().enumerate().take(n - 2) {
                push(k + 1, ck);
            }
            let (minus, plus) = (c[n - 2], c[n - 1]);
            push(n - 1, minus.min(plus));
            if plus > minus {
                let d = plus - minus;
                push(n, d / 2);
                if d % 2 == 1 {
                    spin = Spin::Plus;
                }
            } else {
                let d = minus - plus;
                push(n + 1, d / 2);
                if d % 2 == 1 {
                    spin = Spin::Minus;
                }
            }
        }
    }
    parts.sort_unstable();
    Ok(OmegaDecomposition { parts, spin })
}

/// Picks the level-one affine weight `Lambda_index` whose wall space contains
/// the crystal of the decomposed weight.
///
/// For `B`, `C` and `D` the parity rule is the one forced by the classical
/// weights of the ground states: `Lambda_1` restricts to `lambda_1`, so an
/// odd total picks `Lambda_1` and an even total picks `Lambda_0`.
pub fn choose_level_one(family: Family, rank: usize, dec: &OmegaDecomposition) -> usize {
    let n = rank;
    let total: usize = dec
        .parts
        .iter()
        .map(|&i| if family == Family::D && i == n + 1 { n } else { i })
        .sum();
    match (family, dec.spin) {
        (Family::A, _) => total % (n + 1),
        (_, Spin::Short) => n,
        // Adding an odd number of boxes moves lambda_n into the congruence
        // class of lambda_{n-1} (and back), so the spin ground flips with the
        // parity of the omega parts.
        (_, Spin::Plus) => if total.is_multiple_of(2) { n } else { n - 1 },
        (_, Spin::Minus) => if total.is_multiple_of(2) { n - 1 } else { n },
        (_, Spin::None) => total % 2,
    }
}

/// Weyl's dimension formula, evaluated exactly:
/// `prod_{alpha > 0} (lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(datum: &RootDatum, lambda: &DominantWeight) -> Result<BigUint, LieError> {
    lambda.check_rank(datum.rank)?;
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for alpha in &datum.positive_roots {
        let mut top = 0u64;
        let mut bottom = 0u64;
        for i in 0..datum.rank {
            let w = (alpha[i] * datum.root_lengths[i]) as u64;
            top += (u64::from(lambda.0[i]) + 1) * w;
            bottom += w;
        }
        numerator *= top;
        denominator *= bottom;
    }
    Ok(numerator / denominator)
}

/// Weight multiplicities of the irreducible module of highest weight
/// `lambda`, by Freudenthal's recursion
/// `((lambda+rho)^2 - (mu+rho)^2) m(mu) = 2 sum_{alpha>0} sum_{k>=1} m(mu+k alpha) (mu+k alpha, alpha)`.
///
/// Weights are processed level by level below `lambda`; the result maps each
/// weight (pairing coordinates) to its multiplicity.
pub fn freudenthal_multiplicities(
    datum: &RootDatum,
    lambda: &DominantWeight,
) -> Result<BTreeMap<Weight, u64>, LieError> {
    lambda.check_rank(datum.rank)?;
    let n = datum.rank;
    let top = lambda.as_weight();
    // lambda + rho in pairing coordinates.
    let shifted: Vec<i64> = top.0.iter().map(|x| x + 1).collect();
    // Multiplicities keyed by depth beta (lambda - mu, simple-root coords).
    let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
    mult.insert(vec![0; n], 1);
    let mut layer: Vec<Vec<i64>> = vec![vec![0; n]];
    while !layer.is_empty() {
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        let mut seen = HashSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut next = beta.clone();
                next[i] += 1;
                if seen.insert(next.clone()) {
                    candidates.push(next);
                }
            }
        }
        candidates.sort();
        let mut next_layer = Vec::new();
        for beta in candidates {
            // mu = lambda - beta
            let mu: Vec<i64> = (0..n)
                .map(|j| top.0[j] - datum.coroot_pairing(j, &beta))
                .collect();
            let gap = 2 * datum.form_weight_root(&shifted, &beta) - datum.form_roots(&beta, &beta);
            if gap <= 0 {
                continue;
            }
            let mut sum = 0i64;
            for alpha in &datum.positive_roots {
                let mu_alpha = datum.form_weight_root(&mu, alpha);
                let alpha_alpha = datum.form_roots(alpha, alpha);
                let mut k = 1;
                loop {
                    let up: Vec<i64> = (0..n).map(|i| beta[i] - k * alpha[i]).collect();
                    if up.iter().any(|&x| x < 0) {
                        break;
                    }
                    if let Some(&m) = mult.get(&up) {
                        sum += m * (mu_alpha + k * alpha_alpha);
                    }
                    k += 1;
                }
            }
            let value = 2 * sum;
            debug_assert_eq!(value % gap, 0, "Freudenthal quotient must be integral");
            let m = value / gap;
            if m > 0 {
                mult.insert(beta.clone(), m);
                next_layer.push(beta);
            }
        }
        layer = next_layer;
    }
    let mut out = BTreeMap::new();
    for (beta, m) in mult {
        let mut mu = top.clone();
        mu.add_scaled(&datum.root_to_weight(&beta), -1);
        out.insert(mu, m as u64);
    }
    Ok(out)
}
