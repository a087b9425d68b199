//! Noncommutative Schur Q-functions `𝔖_α`.
//!
//! The vertex-operator path [`nsqf`] is the reference and accepts any integer
//! vector. [`nsqf_recursive`] is the memoized fast path for compositions; the
//! Pfaffian and raising-operator expansions are independent cross-checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{is_peak_composition, peak_compositions, Composition, IntVector};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::nsym::{add_scaled, add_term, concat_product, BasisTag, NSymElement, Terms};
use crate::peak::{q_to_pi, to_pi};
use crate::rational::{int, pow2, sign, Rational};
use crate::tableaux::{pct_weight_sum, supersets_s};

/// All `β ∈ ℕ₀^parts` with `|β| = total` and `β_j ≤ bound[j]`.
fn bounded_weak_compositions(total: u32, bound: &[u32]) -> Vec<Vec<u32>> {
    fn go(total: u32, bound: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let j = cur.len();
        if j == bound.len() {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = bound[j + 1..].iter().fold(0u32, |acc, &b| acc.saturating_add(b));
        let lo = total.saturating_sub(rest);
        for b in lo..=total.min(bound[j]) {
            cur.push(b);
            go(total - b, bound, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, bound, &mut Vec::new(), &mut out);
    out
}

fn q_single(m: i64) -> Terms {
    match m {
        m if m < 0 => Terms::new(),
        0 => [(Composition::empty(), Rational::one())].into(),
        m => [(Composition::from_parts_unchecked(vec![m as u32]), Rational::one())].into(),
    }
}

fn expect_q(a: &NSymElement, op: &str) -> Result<()> {
    if a.basis() != BasisTag::Q {
        return Err(Error::Basis(format!("{op} expects a Q-basis element")));
    }
    Ok(())
}

fn kperp_terms(n: u32, a: &Terms) -> Terms {
    let mut out = Terms::new();
    for (alpha, c) in a {
        for beta in bounded_weak_compositions(n, alpha.parts()) {
            let positive = beta.iter().filter(|&&b| b > 0).count();
            let rest: Vec<u32> = alpha.parts().iter().zip(&beta).map(|(a, b)| a - b).filter(|&p| p > 0).collect();
            add_term(&mut out, Composition::from_parts_unchecked(rest), c * pow2(positive as i64));
        }
    }
    out
}

/// `Σ_{β ∈ ℕ₀^{ℓ(α)}, |β| = n} 2^{ℓ(β)} Q_{α-β}`, extended linearly.
pub fn kperp(n: u32, a: &NSymElement) -> Result<NSymElement> {
    expect_q(a, "kperp")?;
    Ok(NSymElement::from_map(BasisTag::Q, kperp_terms(n, a.terms())))
}

fn y_terms(m: i64, a: &Terms) -> Terms {
    let mut out = Terms::new();
    let degree = a.keys().map(Composition::size).max().unwrap_or(0);
    for i in 0..=degree {
        let left = q_single(m + i as i64);
        if left.is_empty() {
            continue;
        }
        let lowered = kperp_terms(i, a);
        add_scaled(&mut out, &concat_product(&left, &lowered), &sign(i % 2 == 1));
    }
    out
}

/// The vertex operator `𝕐_{-m}`: `a ↦ Σ_i (-1)^i Q_{m+i} K^⊥_i(a)`.
pub fn y_operator(m: i64, a: &NSymElement) -> Result<NSymElement> {
    expect_q(a, "Y")?;
    Ok(NSymElement::from_map(BasisTag::Q, y_terms(m, a.terms())))
}

/// `𝔖_α = 𝕐_{-α_1} ⋯ 𝕐_{-α_r}(1)` in the `Q` basis.
pub fn nsqf(alpha: &IntVector) -> NSymElement {
    let mut acc = q_single(0);
    for &m in alpha.entries().iter().rev() {
        acc = y_terms(m, &acc);
        if acc.is_empty() {
            break;
        }
    }
    NSymElement::from_map(BasisTag::Q, acc)
}

fn recursive_cache() -> &'static Mutex<HashMap<Composition, Arc<Terms>>> {
    static CACHE: OnceLock<Mutex<HashMap<Composition, Arc<Terms>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn recursive_terms(alpha: &Composition) -> Arc<Terms> {
    if let Some(t) = recursive_cache().lock().expect("cache poisoned").get(alpha) {
        return t.clone();
    }
    let parts = alpha.parts();
    let result = match parts.len() {
        0 => q_single(0),
        1 => q_single(parts[0] as i64),
        r => {
            let head = &parts[..r - 1];
            let last = parts[r - 1];
            let unbounded = vec![u32::MAX; r - 1];
            let mut out = Terms::new();
            for i in 0..=last {
                let tail = q_single((last - i) as i64);
                for beta in bounded_weak_compositions(i, &unbounded) {
                    let mut coeff = int(1);
                    for &b in &beta {
                        if b > 0 {
                            coeff *= sign(b % 2 == 1) * int(2);
                        }
                    }
                    let shifted = Composition::from_parts_unchecked(head.iter().zip(&beta).map(|(a, b)| a + b).collect());
                    let prefix = recursive_terms(&shifted);
                    add_scaled(&mut out, &concat_product(&prefix, &tail), &coeff);
                }
            }
            out
        }
    };
    let result = Arc::new(result);
    recursive_cache().lock().expect("cache poisoned").insert(alpha.clone(), result.clone());
    result
}

/// `𝔖_α` for a composition via the last-part recursion, memoized.
pub fn nsqf_recursive(alpha: &Composition) -> Result<NSymElement> {
    Ok(NSymElement::from_map(BasisTag::Q, (*recursive_terms(alpha)).clone()))
}

/// Appends a zero part to odd-length vectors; `𝔖_{(α,0)} = 𝔖_α`.
pub fn pad_even(alpha: &IntVector) -> IntVector {
    let mut v = alpha.0.clone();
    if v.len() % 2 == 1 {
        v.push(0);
    }
    IntVector(v)
}

fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for idx in 0..free.len() {
            let b = free.remove(idx);
            cur.push((a, b));
            go(free, cur, out);
            cur.pop();
            free.insert(idx, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

fn matching_sign(m: &[(usize, usize)]) -> bool {
    let word: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut inversions = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Pfaffian expansion over perfect matchings; requires even length.
pub fn nsqf_pfaffian(alpha: &IntVector) -> Result<NSymElement> {
    if alpha.len() % 2 == 1 {
        return invalid(format!("Pfaffian expansion needs even length, got {}", alpha.len()));
    }
    let entries = alpha.entries();
    let mut out = Terms::new();
    for matching in perfect_matchings(entries.len()) {
        let parity = sign(matching_sign(&matching));
        // every pair (a, b) moves k from position b to position a
        let mut partial: Vec<(Vec<i64>, Rational)> = vec![(entries.to_vec(), parity)];
        for &(a, b) in &matching {
            let mut next = Vec::new();
            for (idx, coeff) in &partial {
                let lo = (-idx[a]).max(0);
                for k in lo..=idx[b] {
                    let mut shifted = idx.clone();
                    shifted[a] += k;
                    shifted[b] -= k;
                    let factor = if k == 0 { int(1) } else { sign(k % 2 == 1) * int(2) };
                    next.push((shifted, coeff * factor));
                }
            }
            partial = next;
        }
        for (idx, coeff) in partial {
            add_scaled(&mut out, &NSymElement::word(BasisTag::Q, &idx)?.into_terms(), &coeff);
        }
    }
    Ok(NSymElement::from_map(BasisTag::Q, out))
}

/// `∏_{i<j} (1 - R_ij)(1 + R_ij)^{-1} Q_α` by enumerating raising exponents,
/// columns processed right to left.
pub fn nsqf_raising(alpha: &IntVector) -> NSymElement {
    fn column(j: usize, idx: &mut Vec<i64>, coeff: Rational, out: &mut Terms) {
        if j == 0 {
            if idx[0] >= 0 {
                let word = NSymElement::word(BasisTag::Q, idx).expect("Q is multiplicative");
                add_scaled(out, word.terms(), &coeff);
            }
            return;
        }
        if idx[j] < 0 {
            return;
        }
        let available = idx[j] as u32;
        for total in 0..=available {
            for ks in bounded_weak_compositions(total, &vec![total; j]) {
                let mut c = coeff.clone();
                for (i, &k) in ks.iter().enumerate() {
                    idx[i] += k as i64;
                    if k > 0 {
                        c *= sign(k % 2 == 1) * int(2);
                    }
                }
                idx[j] -= total as i64;
                column(j - 1, idx, c, out);
                idx[j] += total as i64;
                for (i, &k) in ks.iter().enumerate() {
                    idx[i] -= k as i64;
                }
            }
        }
    }
    let mut out = Terms::new();
    let mut idx = alpha.0.clone();
    if idx.is_empty() {
        return NSymElement::one(BasisTag::Q);
    }
    let last = idx.len() - 1;
    column(last, &mut idx, int(1), &mut out);
    NSymElement::from_map(BasisTag::Q, out)
}

/// `Σ_{i=1}^{n-1} 𝔖_{(α, i, n-i)}` in the `S` basis; always zero.
pub fn key_relation(alpha: &Composition, n: u32) -> Result<NSymElement> {
    if n < 2 {
        return invalid("key relation needs n ≥ 2");
    }
    let terms = (1..n).map(|i| (alpha.concat(&Composition::from_parts_unchecked(vec![i, n - i])), int(1)));
    Ok(NSymElement::from_terms(BasisTag::S, terms))
}

/// Evaluates an `S`-basis element over arbitrary compositions in `Q`.
pub fn s_to_q(a: &NSymElement) -> Result<NSymElement> {
    if a.basis() != BasisTag::S {
        return Err(Error::Basis("expected an S-basis element".into()));
    }
    let mut out = Terms::new();
    for (k, c) in a.terms() {
        add_scaled(&mut out, &recursive_terms(k), c);
    }
    Ok(NSymElement::from_map(BasisTag::Q, out))
}

fn grown_parts(alpha: &Composition, beta: &Composition) -> usize {
    alpha.parts().iter().zip(beta.parts()).filter(|(a, b)| b > a).count()
}

/// Right Pieri rule: `𝔖_α Q_s = Σ_{α ⊂_s β} 2^{ℓ(β' - α)} 𝔖_β`.
pub fn pieri(alpha: &Composition, s: u32) -> Result<NSymElement> {
    if s == 0 {
        return invalid("Pieri rule needs s ≥ 1");
    }
    let terms = supersets_s(alpha, s).into_iter().map(|b| {
        let e = grown_parts(alpha, &b);
        (b, pow2(e as i64))
    });
    Ok(NSymElement::from_terms(BasisTag::S, terms))
}

/// Pieri rule restricted to peak compositions, with the correction for a
/// trailing part 1.
pub fn pieri_peak(alpha: &Composition, s: u32) -> Result<NSymElement> {
    if s == 0 {
        return invalid("Pieri rule needs s ≥ 1");
    }
    if !is_peak_composition(alpha) {
        return invalid(format!("{alpha} is not a peak composition"));
    }
    let ends_in_one = alpha.last() == Some(1);
    let terms = supersets_s(alpha, s).into_iter().filter(is_peak_composition).map(|b| {
        let mut e = grown_parts(alpha, &b) as i64;
        if ends_in_one && b.len() > alpha.len() {
            e -= 1;
        }
        (b, pow2(e))
    });
    Ok(NSymElement::from_terms(BasisTag::S, terms))
}

/// `Q_α` over `{𝔖_β : β ∈ 𝒫𝒞}` with tableau-weighted coefficients.
pub fn q_to_nsqf(alpha: &Composition) -> Result<NSymElement> {
    if alpha.is_empty() {
        return Ok(NSymElement::one(BasisTag::S));
    }
    let mut out = Terms::new();
    for beta in peak_compositions(alpha.size())? {
        if &beta < alpha {
            continue;
        }
        let w = pct_weight_sum(&beta, alpha)?;
        add_term(&mut out, beta, w);
    }
    Ok(NSymElement::from_map(BasisTag::S, out))
}

/// `Q_α` over `{𝔖_β : β ∈ 𝒫𝒞}` by chaining peak Pieri steps from `𝔖_{α_1}`.
pub fn q_to_nsqf_chain(alpha: &Composition) -> Result<NSymElement> {
    let parts = alpha.parts();
    if parts.is_empty() {
        return Ok(NSymElement::one(BasisTag::S));
    }
    let mut acc: Terms = [(Composition::from_parts_unchecked(vec![parts[0]]), int(1))].into();
    for &s in &parts[1..] {
        let mut next = Terms::new();
        for (k, c) in &acc {
            add_scaled(&mut next, pieri_peak(k, s)?.terms(), c);
        }
        acc = next;
    }
    Ok(NSymElement::from_map(BasisTag::S, acc))
}

/// Rows: `𝔖_β` for `β ∈ 𝒫𝒞_n` in `Π` coordinates; and the inverse.
struct NsqfPiTable {
    index: Vec<Composition>,
    matrix: Matrix,
    inverse: Matrix,
}

fn nsqf_pi_table(n: u32) -> Result<Arc<NsqfPiTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<NsqfPiTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let index = peak_compositions(n)?;
    let rows = index
        .iter()
        .map(|b| {
            let pi = to_pi(&nsqf_recursive(b)?)?;
            Ok(index.iter().map(|c| pi.coeff(c)).collect())
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    let matrix = Matrix::from_rows(rows);
    let inverse = matrix
        .inverse()
        .map_err(|_| Error::Internal(format!("peak-indexed NSQF of degree {n} are dependent")))?;
    let table = Arc::new(NsqfPiTable { index, matrix, inverse });
    cache.lock().expect("cache poisoned").insert(n, table.clone());
    Ok(table)
}

/// Coordinates of a homogeneous degree-`n` element of the peak algebra over
/// `{𝔖_β : β ∈ 𝒫𝒞_n}`.
pub fn expand_in_nsqf(a: &NSymElement, n: u32) -> Result<NSymElement> {
    if a.terms().keys().any(|k| k.size() != n) {
        return invalid(format!("element is not homogeneous of degree {n}"));
    }
    if a.is_zero() {
        return Ok(NSymElement::zero(BasisTag::S));
    }
    if n == 0 {
        return Ok(NSymElement::from_map(BasisTag::S, a.terms().clone()));
    }
    let a = if a.basis() == BasisTag::S { s_to_q(a)? } else { a.clone() };
    let pi = to_pi(&a)?;
    let table = nsqf_pi_table(n)?;
    let mut out = Terms::new();
    for (j, beta) in table.index.iter().enumerate() {
        let mut c = Rational::zero();
        for (i, gamma) in table.index.iter().enumerate() {
            let x = pi.coeff(gamma);
            if !x.is_zero() {
                c += x * table.inverse.get(i, j);
            }
        }
        add_term(&mut out, beta.clone(), c);
    }
    Ok(NSymElement::from_map(BasisTag::S, out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixBasis {
    Q,
    S,
    Pi,
    Sbar,
    SbarStar,
    K,
}

impl MatrixBasis {
    pub fn name(self) -> &'static str {
        match self {
            MatrixBasis::Q => "Q",
            MatrixBasis::S => "S",
            MatrixBasis::Pi => "Pi",
            MatrixBasis::Sbar => "Sbar",
            MatrixBasis::SbarStar => "SbarStar",
            MatrixBasis::K => "K",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixPair {
    QS,
    QPi,
    SbarPi,
    PiSbar,
    SbarStarK,
}

impl MatrixPair {
    pub const ALL: [MatrixPair; 5] =
        [MatrixPair::QS, MatrixPair::QPi, MatrixPair::SbarPi, MatrixPair::PiSbar, MatrixPair::SbarStarK];

    pub fn bases(self) -> (MatrixBasis, MatrixBasis) {
        use MatrixBasis::*;
        match self {
            MatrixPair::QS => (Q, S),
            MatrixPair::QPi => (Q, Pi),
            MatrixPair::SbarPi => (Sbar, Pi),
            MatrixPair::PiSbar => (Pi, Sbar),
            MatrixPair::SbarStarK => (SbarStar, K),
        }
    }
}

impl fmt::Display for MatrixPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, c) = self.bases();
        write!(f, "{},{}", r.name(), c.name())
    }
}

impl FromStr for MatrixPair {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let normalized: String = s.chars().filter(|c| !c.is_whitespace() && !"()".contains(*c)).collect();
        MatrixPair::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(&normalized))
            .ok_or_else(|| Error::InvalidInput(format!("unknown matrix pair {s:?}; expected one of Q,S Q,Pi Sbar,Pi Pi,Sbar SbarStar,K")))
    }
}

/// A transition matrix over `𝒫𝒞_n` in lexicographic order; row `i` holds the
/// expansion of the `i`-th row-basis element in the column basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    pub n: u32,
    pub rows: MatrixBasis,
    pub cols: MatrixBasis,
    pub index: Vec<Composition>,
    #[serde(with = "matrix_strings")]
    pub entries: Matrix,
}

mod matrix_strings {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::Matrix;
    use crate::rational;

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(rational::format).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| rational::parse(x).map_err(serde::de::Error::custom)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(Matrix::from_rows(parsed))
    }
}

impl TransitionMatrix {
    pub fn pair(&self) -> Option<MatrixPair> {
        MatrixPair::ALL.into_iter().find(|p| p.bases() == (self.rows, self.cols))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index");
        for c in &self.index {
            out.push_str(&format!(",\"{c}\""));
        }
        out.push('\n');
        for (c, row) in self.index.iter().zip(self.entries.rows()) {
            out.push_str(&format!("\"{c}\""));
            for x in row {
                out.push(',');
                out.push_str(&crate::rational::format(x));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let labels: Vec<String> = self.index.iter().map(|c| c.parts().iter().map(u32::to_string).collect()).collect();
        let cells: Vec<Vec<String>> =
            self.entries.rows().iter().map(|r| r.iter().map(crate::rational::format).collect()).collect();
        let width = labels.iter().chain(cells.iter().flatten()).map(String::len).max().unwrap_or(1);
        let mut out = format!("M_{}({}, {})\n", self.n, self.rows.name(), self.cols.name());
        out.push_str(&format!("{:>width$}", ""));
        for l in &labels {
            out.push_str(&format!(" {l:>width$}"));
        }
        out.push('\n');
        for (l, row) in labels.iter().zip(&cells) {
            out.push_str(&format!("{l:>width$}"));
            for x in row {
                out.push_str(&format!(" {x:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

fn build_matrix(n: u32, pair: MatrixPair) -> Result<TransitionMatrix> {
    let index = peak_compositions(n)?;
    let expand_rows = |f: &dyn Fn(&Composition) -> Result<NSymElement>| -> Result<Matrix> {
        let rows = index
            .iter()
            .map(|a| {
                let e = f(a)?;
                Ok(index.iter().map(|b| e.coeff(b)).collect())
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Ok(Matrix::from_rows(rows))
    };
    let sbar_pi = || -> Result<Matrix> {
        let table = nsqf_pi_table(n)?;
        let rows = index
            .iter()
            .enumerate()
            .map(|(i, a)| table.matrix.rows()[i].iter().map(|x| x * pow2(-(a.len() as i64))).collect())
            .collect();
        Ok(Matrix::from_rows(rows))
    };
    let entries = match pair {
        MatrixPair::QS => expand_rows(&q_to_nsqf)?,
        MatrixPair::QPi => expand_rows(&q_to_pi)?,
        MatrixPair::SbarPi => sbar_pi()?,
        MatrixPair::PiSbar => sbar_pi()?.inverse()?,
        MatrixPair::SbarStarK => sbar_pi()?.inverse()?.transpose(),
    };
    let (rows, cols) = pair.bases();
    Ok(TransitionMatrix { n, rows, cols, index, entries })
}

type MatrixCache = Mutex<HashMap<(u32, MatrixPair), Arc<TransitionMatrix>>>;

/// Cached per `(n, pair)`.
pub fn transition_matrix(n: u32, pair: MatrixPair) -> Result<Arc<TransitionMatrix>> {
    static CACHE: OnceLock<MatrixCache> = OnceLock::new();
    if n == 0 {
        return invalid("transition matrices need n ≥ 1");
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache poisoned").get(&(n, pair)) {
        return Ok(m.clone());
    }
    let m = Arc::new(build_matrix(n, pair)?);
    cache.lock().expect("cache poisoned").insert((n, pair), m.clone());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::combinatorics::{compositions, fibonacci};
    use crate::linalg::sparse_rank;
    use crate::nsym::{equals, is_zero_element, multiply};
    use proptest::prelude::*;

    fn q(terms: &[(i64, &[u32])]) -> NSymElement {
        NSymElement::from_int_terms(BasisTag::Q, terms)
    }

    fn s(terms: &[(i64, &[u32])]) -> NSymElement {
        NSymElement::from_int_terms(BasisTag::S, terms)
    }

    fn iv(v: &[i64]) -> IntVector {
        IntVector(v.to_vec())
    }

    #[test]
    fn kperp_examples() {
        assert_eq!(kperp(1, &q(&[(1, &[2])])).unwrap(), q(&[(2, &[1])]));
        assert_eq!(kperp(1, &q(&[(1, &[2, 2])])).unwrap(), q(&[(2, &[1, 2]), (2, &[2, 1])]));
        assert_eq!(kperp(2, &q(&[(1, &[2, 2])])).unwrap(), q(&[(4, &[2]), (4, &[1, 1])]));
        let a = q(&[(3, &[2, 1]), (-1, &[4])]);
        assert_eq!(kperp(0, &a).unwrap(), a);
        assert!(kperp(0, &NSymElement::one(BasisTag::H)).is_err());
    }

    #[test]
    fn y_examples() {
        assert_eq!(y_operator(3, &NSymElement::one(BasisTag::Q)).unwrap(), q(&[(1, &[3])]));
        assert_eq!(y_operator(1, &q(&[(1, &[1])])).unwrap(), q(&[(1, &[1, 1]), (-2, &[2])]));
        assert_eq!(y_operator(2, &q(&[(1, &[2])])).unwrap(), q(&[(1, &[2, 2]), (-2, &[3, 1]), (2, &[4])]));
    }

    #[test]
    fn nsqf_examples() {
        assert!(is_zero_element(&nsqf(&iv(&[1, 1]))).unwrap());
        assert_eq!(nsqf(&iv(&[3, 2])), q(&[(1, &[3, 2]), (-2, &[4, 1]), (2, &[5])]));
        assert_eq!(nsqf(&iv(&[2, 3])), q(&[(1, &[2, 3]), (-2, &[3, 2]), (2, &[4, 1]), (-2, &[5])]));
        assert_eq!(nsqf(&iv(&[])), NSymElement::one(BasisTag::Q));
        assert!(nsqf(&iv(&[2, -1])).is_zero());
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(nsqf_recursive(&comp![4]).unwrap(), q(&[(1, &[4])]));
        assert_eq!(nsqf_recursive(&comp![2, 1]).unwrap(), q(&[(1, &[2, 1]), (-2, &[3])]));
        let expected = q(&[(1, &[2, 2, 1]), (-2, &[2, 3]), (-2, &[3, 2]), (2, &[4, 1])]);
        assert!(equals(&nsqf_recursive(&comp![2, 2, 1]).unwrap(), &expected).unwrap());
    }

    #[test]
    fn pfaffian_examples() {
        for (m, n) in [(1i64, 1i64), (3, 2), (2, 4), (0, 3), (-1, 3)] {
            let mut expected = NSymElement::word(BasisTag::Q, &[m, n]).unwrap();
            for i in 1..=n.max(0) {
                let w = NSymElement::word(BasisTag::Q, &[m + i, n - i]).unwrap();
                expected.add_assign_scaled(&w, &(sign(i % 2 == 1) * int(2))).unwrap();
            }
            assert_eq!(nsqf_pfaffian(&iv(&[m, n])).unwrap(), expected, "({m},{n})");
        }
        assert_eq!(nsqf_pfaffian(&iv(&[1, 1])).unwrap(), q(&[(1, &[1, 1]), (-2, &[2])]));
        assert!(equals(&nsqf_pfaffian(&iv(&[2, 2, 1, 0])).unwrap(), &nsqf(&iv(&[2, 2, 1]))).unwrap());
        assert!(nsqf_pfaffian(&iv(&[2, 2, 1])).is_err());
    }

    #[test]
    fn raising_examples() {
        assert_eq!(nsqf_raising(&iv(&[3])), q(&[(1, &[3])]));
        assert_eq!(nsqf_raising(&iv(&[3, 2])), q(&[(1, &[3, 2]), (-2, &[4, 1]), (2, &[5])]));
        assert!(equals(&nsqf_raising(&iv(&[2, 1, 2])), &nsqf(&iv(&[2, 1, 2]))).unwrap());
    }

    fn agree(v: &IntVector) {
        let reference = nsqf(v);
        assert!(equals(&reference, &nsqf_pfaffian(&pad_even(v)).unwrap()).unwrap(), "pfaffian {v:?}");
        assert!(equals(&reference, &nsqf_raising(v)).unwrap(), "raising {v:?}");
        if v.entries().iter().all(|&x| x > 0) {
            let c = Composition::new(v.entries().iter().map(|&x| x as u32).collect()).unwrap();
            assert!(equals(&reference, &nsqf_recursive(&c).unwrap()).unwrap(), "recursive {v:?}");
        }
    }

    #[test]
    fn oracles_agree_on_compositions() {
        for n in 1..=6 {
            for c in compositions(n).unwrap() {
                agree(&IntVector::from(&c));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn oracles_agree_on_integer_vectors(v in proptest::collection::vec(-2i64..=4, 0..=4)) {
            agree(&IntVector(v));
        }
    }

    #[test]
    fn key_relations_vanish() {
        assert_eq!(key_relation(&Composition::empty(), 2).unwrap(), s(&[(1, &[1, 1])]));
        assert_eq!(key_relation(&comp![2], 3).unwrap(), s(&[(1, &[2, 1, 2]), (1, &[2, 2, 1])]));
        for m in 0..=3 {
            let alphas = if m == 0 { vec![Composition::empty()] } else { compositions(m).unwrap() };
            for a in alphas {
                for n in 2..=(7 - m).min(6) {
                    let rel = s_to_q(&key_relation(&a, n).unwrap()).unwrap();
                    assert!(is_zero_element(&rel).unwrap(), "{a} {n}");
                }
            }
        }
        assert!(key_relation(&comp![1], 1).is_err());
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri(&comp![2], 1).unwrap(), s(&[(1, &[2, 1]), (2, &[3])]));
        assert_eq!(pieri(&comp![2, 2], 1).unwrap(), s(&[(1, &[2, 2, 1]), (2, &[3, 2]), (2, &[2, 3])]));
        assert_eq!(pieri(&comp![3], 2).unwrap(), s(&[(1, &[3, 2]), (2, &[4, 1]), (2, &[5])]));
        assert!(pieri(&comp![3], 0).is_err());
        assert_eq!(pieri_peak(&comp![2], 1).unwrap(), s(&[(1, &[2, 1]), (2, &[3])]));
        assert!(pieri_peak(&comp![1, 2], 1).is_err());
        for b in pieri_peak(&comp![2, 2, 1], 2).unwrap().terms().keys() {
            assert!(is_peak_composition(b) && b.size() == 7);
        }
    }

    #[test]
    fn pieri_soundness() {
        for m in 1..=4 {
            for a in compositions(m).unwrap() {
                for s_ in 1..=3 {
                    let lhs = multiply(&nsqf_recursive(&a).unwrap(), &q(&[(1, &[s_])])).unwrap();
                    let rhs = s_to_q(&pieri(&a, s_).unwrap()).unwrap();
                    assert!(equals(&lhs, &rhs).unwrap(), "{a} {s_}");
                    if is_peak_composition(&a) {
                        let peak = pieri_peak(&a, s_).unwrap();
                        assert_eq!(expand_in_nsqf(&lhs, m + s_).unwrap(), peak, "{a} {s_}");
                    }
                }
            }
        }
    }

    #[test]
    fn q_to_nsqf_examples() {
        assert_eq!(q_to_nsqf(&comp![2, 1]).unwrap(), s(&[(1, &[2, 1]), (2, &[3])]));
        assert_eq!(q_to_nsqf(&comp![5]).unwrap(), s(&[(1, &[5])]));
        assert_eq!(
            q_to_nsqf(&comp![2, 2, 2]).unwrap(),
            s(&[
                (1, &[2, 2, 2]),
                (2, &[2, 3, 1]),
                (2, &[2, 4]),
                (4, &[3, 2, 1]),
                (4, &[6]),
                (8, &[3, 3]),
                (8, &[5, 1]),
                (12, &[4, 2]),
            ])
        );
    }

    #[test]
    fn tableau_and_chain_expansions_agree() {
        for n in 1..=7 {
            for a in compositions(n).unwrap() {
                let t = q_to_nsqf(&a).unwrap();
                assert_eq!(t, q_to_nsqf_chain(&a).unwrap(), "{a}");
                if n <= 5 {
                    assert!(equals(&s_to_q(&t).unwrap(), &q(&[(1, a.parts())])).unwrap(), "{a}");
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let e = |v: &[i64]| expand_in_nsqf(&nsqf(&iv(v)), v.iter().sum::<i64>() as u32).unwrap();
        assert_eq!(e(&[1, 2]), s(&[(-1, &[2, 1])]));
        assert_eq!(e(&[1, 2, 1]), s(&[(-2, &[2, 2])]));
        assert_eq!(expand_in_nsqf(&q(&[(1, &[2, 2])]), 4).unwrap(), s(&[(1, &[2, 2]), (2, &[3, 1]), (2, &[4])]));
        let h = NSymElement::from_int_terms(BasisTag::H, &[(1, &[2])]);
        assert!(matches!(expand_in_nsqf(&h, 2), Err(Error::NotInPeakAlgebra(_))));
        assert!(expand_in_nsqf(&q(&[(1, &[2])]), 3).is_err());
    }

    #[test]
    fn peak_nsqf_have_full_rank() {
        for n in 1..=10 {
            let rows: Vec<_> = peak_compositions(n)
                .unwrap()
                .iter()
                .map(|b| crate::nsym::to_h(&nsqf_recursive(b).unwrap()).unwrap().into_terms())
                .collect();
            assert_eq!(sparse_rank(&rows) as u64, fibonacci(n - 1), "n = {n}");
        }
    }

    #[test]
    fn matrices() {
        let m = transition_matrix(3, MatrixPair::QS).unwrap();
        assert_eq!(m.entries, Matrix::from_i64(&[&[1, 2], &[0, 1]]));
        let qs = transition_matrix(6, MatrixPair::QS).unwrap();
        assert!(qs.entries.is_unitriangular());
        let sp = transition_matrix(6, MatrixPair::SbarPi).unwrap();
        assert_eq!(sp.entries.rows()[0], Matrix::from_i64(&[&[1, -1, 0, -1, 0, 1, -1, 0]]).rows()[0]);
        let ps = transition_matrix(4, MatrixPair::PiSbar).unwrap();
        let sp4 = transition_matrix(4, MatrixPair::SbarPi).unwrap();
        assert_eq!(ps.entries.mul(&sp4.entries), Matrix::identity(3));
        let k = transition_matrix(4, MatrixPair::SbarStarK).unwrap();
        assert_eq!(k.entries, ps.entries.transpose());
        assert!(transition_matrix(0, MatrixPair::QS).is_err());
    }

    #[test]
    fn matrix_serialization() {
        let m = transition_matrix(3, MatrixPair::QPi).unwrap();
        let json = serde_json::to_string(&*m).unwrap();
        assert_eq!(json, r#"{"n":3,"rows":"Q","cols":"Pi","index":[[2,1],[3]],"entries":[["4","4"],["0","2"]]}"#);
        let back: TransitionMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, *m);
        assert_eq!(m.to_csv(), "index,\"2,1\",\"3\"\n\"2,1\",4,4\n\"3\",0,2\n");
        assert_eq!("Sbar,Pi".parse::<MatrixPair>().unwrap(), MatrixPair::SbarPi);
        assert_eq!("(q, s)".parse::<MatrixPair>().unwrap(), MatrixPair::QS);
        assert!("Q,K".parse::<MatrixPair>().is_err());
    }
}
