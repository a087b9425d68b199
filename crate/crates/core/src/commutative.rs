//! Commutative images: the forgetful map to symmetric functions, and a
//! truncated polynomial evaluator used as an independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::combinatorics::{is_peak_composition, rearrangement, Composition, IntVector, Partition};
use crate::error::{invalid, Error, Result};
use crate::nsqf::nsqf;
use crate::nsym::{BasisTag, NSymElement};
use crate::qsym::{qsqf_star_m, QBasis, QSymElement};
use crate::rational::{pow2, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    H,
    Q,
}

impl Generator {
    fn letter(self) -> &'static str {
        match self {
            Generator::H => "h",
            Generator::Q => "q",
        }
    }
}

/// A polynomial in the commuting generators `h_n` or `q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    generator: Generator,
    terms: BTreeMap<Partition, Rational>,
}

impl SymElement {
    pub fn zero(generator: Generator) -> Self {
        SymElement { generator, terms: BTreeMap::new() }
    }

    pub fn from_terms(generator: Generator, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut out = SymElement::zero(generator);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, key: Partition, c: Rational) {
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        if self.generator != other.generator {
            return Err(Error::Basis("cannot add h- and q-polynomials".into()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> SymElement {
        SymElement::from_terms(self.generator, self.terms.iter().map(|(k, c)| (k.clone(), c * factor)))
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", crate::rational::format(&abs))?;
            }
            write!(f, "{}({k})", self.generator.letter())?;
        }
        Ok(())
    }
}

/// `π`: sorts each `H`/`Q` word into a partition.
pub fn forget(a: &NSymElement) -> Result<SymElement> {
    let generator = match a.basis() {
        BasisTag::H => Generator::H,
        BasisTag::Q => Generator::Q,
        other => return Err(Error::Basis(format!("forget expects H or Q, got {}; convert first", other.name()))),
    };
    let terms = a.terms().iter().map(|(k, c)| Ok((Partition::sorted(k.parts().to_vec())?, c.clone())));
    Ok(SymElement::from_terms(generator, terms.collect::<Result<Vec<_>>>()?))
}

/// `θ: h_n ↦ q_n`.
pub fn theta_sym(a: &SymElement) -> Result<SymElement> {
    if a.generator != Generator::H {
        return Err(Error::Basis("theta_sym expects an h-polynomial".into()));
    }
    Ok(SymElement { generator: Generator::Q, terms: a.terms.clone() })
}

/// A polynomial in `x_1..x_k` with terms above `max_degree` discarded.
/// Equality ignores the bound.
#[derive(Clone, Debug)]
pub struct TruncatedPolynomial {
    k: usize,
    max_degree: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PartialEq for TruncatedPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.terms == other.terms
    }
}

impl Eq for TruncatedPolynomial {}

impl TruncatedPolynomial {
    pub fn zero(k: usize, max_degree: u32) -> Self {
        TruncatedPolynomial { k, max_degree, terms: BTreeMap::new() }
    }

    pub fn one(k: usize, max_degree: u32) -> Self {
        let mut p = Self::zero(k, max_degree);
        p.terms.insert(vec![0; k], Rational::one());
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() || exp.iter().sum::<u32>() > self.max_degree {
            return;
        }
        let e = self.terms.entry(exp.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add_scaled(&mut self, other: &TruncatedPolynomial, factor: &Rational) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * factor);
        }
    }

    /// The product, truncated at the sum of the two bounds.
    pub fn mul(&self, other: &TruncatedPolynomial) -> TruncatedPolynomial {
        let max_degree = self.max_degree + other.max_degree;
        let mut out = TruncatedPolynomial::zero(self.k, max_degree);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > max_degree {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Serialize for TruncatedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exp: &'a [u32],
            coeff: String,
        }
        let terms: Vec<Term> =
            self.terms.iter().map(|(e, c)| Term { exp: e, coeff: crate::rational::format(c) }).collect();
        let mut st = s.serialize_struct("TruncatedPolynomial", 2)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Exponent vectors of length `k` and total `r`.
fn exponents(r: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(r: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == k {
            cur.push(r);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=r).rev() {
            cur.push(a);
            go(r - a, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if r == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(r, k, &mut Vec::new(), &mut out);
    out
}

/// Degree-`r` coefficient of `∏_{i ≤ k} (1 + x_i z)/(1 - x_i z)`; each factor
/// contributes `2 x_i^a` for `a > 0`.
pub fn q_gen_poly(r: u32, k: usize) -> TruncatedPolynomial {
    let mut p = TruncatedPolynomial::zero(k, r);
    for e in exponents(r, k) {
        let nonzero = e.iter().filter(|&&a| a > 0).count();
        p.add_term(e, pow2(nonzero as i64));
    }
    p
}

/// Complete homogeneous `h_r(x_1..x_k)`.
pub fn h_gen_poly(r: u32, k: usize) -> TruncatedPolynomial {
    let mut p = TruncatedPolynomial::zero(k, r);
    for e in exponents(r, k) {
        p.add_term(e, Rational::one());
    }
    p
}

fn product_poly(generator: Generator, lambda: &Partition, k: usize) -> Arc<TruncatedPolynomial> {
    type Key = (bool, Vec<u32>, usize);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<TruncatedPolynomial>>>> = OnceLock::new();
    let key = (generator == Generator::Q, lambda.parts().to_vec(), k);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&key) {
        return p.clone();
    }
    let degree = lambda.size();
    let mut acc = TruncatedPolynomial::one(k, degree);
    for &part in lambda.parts() {
        let g = match generator {
            Generator::H => h_gen_poly(part, k),
            Generator::Q => q_gen_poly(part, k),
        };
        acc = acc.mul(&g);
    }
    let acc = Arc::new(acc);
    cache.lock().expect("cache poisoned").insert(key, acc.clone());
    acc
}

fn degree_check(degree: u32, k: usize) -> Result<()> {
    if (k as u32) < degree {
        return invalid(format!("{k} variables cannot separate degree-{degree} functions"));
    }
    Ok(())
}

fn max_degree(keys: impl Iterator<Item = u32>) -> u32 {
    keys.max().unwrap_or(0)
}

/// Evaluates in `k` variables; `k` must be at least the degree.
pub fn eval_sym(a: &SymElement, k: usize) -> Result<TruncatedPolynomial> {
    let degree = max_degree(a.terms.keys().map(Partition::size));
    degree_check(degree, k)?;
    let mut out = TruncatedPolynomial::zero(k, degree);
    for (lambda, c) in &a.terms {
        out.add_scaled(&product_poly(a.generator, lambda, k), c);
    }
    Ok(out)
}

fn strictly_increasing_positions(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, k, &mut Vec::new(), &mut out);
    out
}

/// Evaluates an `M`-basis element: `M_α = Σ_{i_1 < ⋯ < i_r} x_{i_1}^{α_1} ⋯`.
pub fn eval_qsym(a: &QSymElement, k: usize) -> Result<TruncatedPolynomial> {
    if a.basis() != QBasis::M {
        return Err(Error::Basis("eval_qsym expects an M-basis element".into()));
    }
    let degree = max_degree(a.terms().keys().map(Composition::size));
    degree_check(degree, k)?;
    let mut out = TruncatedPolynomial::zero(k, degree);
    for (alpha, c) in a.terms() {
        for pos in strictly_increasing_positions(alpha.len(), k) {
            let mut e = vec![0; k];
            for (&p, &part) in pos.iter().zip(alpha.parts()) {
                e[p] = part;
            }
            out.add_term(e, c.clone());
        }
    }
    Ok(out)
}

/// Strict `λ ⊇ μ` with `λ/μ` a horizontal `s`-strip, paired with the
/// exponent of 2 in `S_μ q_s = Σ 2^{e} S_λ`.
///
/// `e = a(λ/μ) - (ℓ(λ) - ℓ(μ))`, where `a` counts columns `i` holding a strip
/// box while column `i + 1` holds none.
pub fn horizontal_strips(mu: &Partition, s: u32) -> Result<Vec<(Partition, u32)>> {
    if !mu.is_strict() {
        return invalid(format!("{mu} is not strict"));
    }
    let mut out = Vec::new();
    for lambda in crate::combinatorics::strict_partitions(mu.size() + s) {
        let l = lambda.parts();
        let m = |i: usize| mu.parts().get(i).copied().unwrap_or(0);
        if l.len() < mu.len() || l.len() > mu.len() + 1 {
            continue;
        }
        // interlacing λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ ⋯
        if (0..l.len()).any(|i| l[i] < m(i) || (i + 1 < l.len() && l[i + 1] > m(i))) {
            continue;
        }
        let mut columns = std::collections::BTreeSet::new();
        for (i, &li) in l.iter().enumerate() {
            columns.extend(m(i) + 1..=li);
        }
        let a = columns.iter().filter(|&&c| !columns.contains(&(c + 1))).count() as u32;
        out.push((lambda.clone(), a - (l.len() - mu.len()) as u32));
    }
    Ok(out)
}

fn schur_q_image(lambda: &Partition) -> Result<SymElement> {
    forget(&nsqf(&IntVector::from(&lambda.to_composition())))
}

/// `Σ 2^{b(λ/μ)} S_λ` for `S_μ q_s`, with `S_λ := π(𝔖_λ)` in the `q` generators.
pub fn classical_pieri(mu: &Partition, s: u32) -> Result<SymElement> {
    let mut out = SymElement::zero(Generator::Q);
    for (lambda, b) in horizontal_strips(mu, s)? {
        out = out.add(&schur_q_image(&lambda)?.scale(&pow2(b as i64)))?;
    }
    Ok(out)
}

/// Compares `S_μ · q_s` with the classical Pieri sum in `|μ| + s` variables.
pub fn classical_pieri_check(mu: &Partition, s: u32) -> Result<bool> {
    let k = (mu.size() + s) as usize;
    let lhs = eval_sym(&schur_q_image(mu)?, k)?.mul(&q_gen_poly(s, k));
    let rhs = eval_sym(&classical_pieri(mu, s)?, k)?;
    Ok(lhs == rhs)
}

fn distinct_permutations(parts: &[u32]) -> Vec<Vec<u32>> {
    if parts.len() <= 1 {
        return vec![parts.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..parts.len() {
        let mut rest = parts.to_vec();
        let head = rest.remove(i);
        for mut tail in distinct_permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// `2^{-ℓ(λ)} π(𝔖_λ) = Σ ± 𝔖*_α` over peak-composition rearrangements `α`
/// of `λ`, compared as polynomials in `k` variables.
pub fn schur_p_refinement_check(lambda: &Partition, k: usize) -> Result<bool> {
    if !lambda.is_strict() {
        return invalid(format!("{lambda} is not strict"));
    }
    let lhs = eval_sym(&schur_q_image(lambda)?.scale(&pow2(-(lambda.len() as i64))), k)?;
    let mut rhs = TruncatedPolynomial::zero(k, lambda.size());
    for perm in distinct_permutations(lambda.parts()) {
        let alpha = Composition::new(perm)?;
        if !is_peak_composition(&alpha) {
            continue;
        }
        let (_, sgn) = rearrangement(&alpha)?;
        rhs.add_scaled(&eval_qsym(&qsqf_star_m(&alpha)?, k)?, &Rational::from_integer(sgn.into()));
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{compositions, strict_partitions};
    use crate::comp;
    use crate::linalg::sparse_rank;
    use crate::nsym::NSymElement;
    use crate::peak::theta;
    use crate::rational::int;
    use proptest::prelude::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn sym(g: Generator, terms: &[(i64, &[u32])]) -> SymElement {
        SymElement::from_terms(g, terms.iter().map(|(c, p)| (part(p), int(*c))))
    }

    fn poly(k: usize, terms: &[(i64, &[u32])]) -> BTreeMap<Vec<u32>, Rational> {
        let _ = k;
        terms.iter().map(|(c, e)| (e.to_vec(), int(*c))).collect()
    }

    #[test]
    fn forget_examples() {
        let a = NSymElement::from_int_terms(BasisTag::H, &[(1, &[1, 2]), (1, &[2, 1])]);
        assert_eq!(forget(&a).unwrap(), sym(Generator::H, &[(2, &[2, 1])]));
        let s21 = nsqf(&IntVector(vec![2, 1]));
        assert_eq!(forget(&s21).unwrap(), sym(Generator::Q, &[(1, &[2, 1]), (-2, &[3])]));
        let sum = forget(&nsqf(&IntVector(vec![3, 2]))).unwrap().add(&forget(&nsqf(&IntVector(vec![2, 3]))).unwrap());
        assert!(sum.unwrap().is_zero());
        assert!(forget(&NSymElement::one(BasisTag::R)).is_err());
    }

    #[test]
    fn generating_polynomials() {
        assert_eq!(q_gen_poly(1, 1).terms(), &poly(1, &[(2, &[1])]));
        assert_eq!(q_gen_poly(2, 1).terms(), &poly(1, &[(2, &[2])]));
        assert_eq!(q_gen_poly(2, 2).terms(), &poly(2, &[(2, &[2, 0]), (4, &[1, 1]), (2, &[0, 2])]));
        assert_eq!(q_gen_poly(0, 3), TruncatedPolynomial::one(3, 0));
    }

    #[test]
    fn evaluation_examples() {
        let m2 = QSymElement::from_int_terms(QBasis::M, &[(1, &[2])]).unwrap();
        assert_eq!(eval_qsym(&m2, 2).unwrap().terms(), &poly(2, &[(1, &[2, 0]), (1, &[0, 2])]));
        let q11 = sym(Generator::Q, &[(1, &[1, 1])]);
        assert_eq!(eval_sym(&q11, 2).unwrap().coeff(&[2, 0]), int(4));
        let h2 = sym(Generator::H, &[(1, &[2])]);
        assert_eq!(eval_sym(&h2, 2).unwrap().terms(), &poly(2, &[(1, &[2, 0]), (1, &[1, 1]), (1, &[0, 2])]));
        assert!(eval_sym(&h2, 1).is_err());
    }

    #[test]
    fn theta_on_generators() {
        assert_eq!(theta_sym(&sym(Generator::H, &[(1, &[2, 1])])).unwrap(), sym(Generator::Q, &[(1, &[2, 1])]));
        assert!(theta_sym(&sym(Generator::Q, &[(1, &[3])])).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn theta_commutes_with_forget(words in proptest::collection::vec((proptest::collection::vec(1u32..=3, 1..=3), -3i64..=3), 1..=4)) {
            let terms: Vec<(Composition, Rational)> = words.into_iter().map(|(w, c)| (Composition::new(w).unwrap(), int(c))).collect();
            let a = NSymElement::from_terms(BasisTag::H, terms);
            prop_assert_eq!(theta_sym(&forget(&a).unwrap()).unwrap(), forget(&theta(&a).unwrap()).unwrap());
        }
    }

    #[test]
    fn antisymmetry() {
        for n in 1..=6 {
            for alpha in compositions(n).unwrap() {
                let base = forget(&nsqf(&IntVector::from(&alpha))).unwrap();
                let p = alpha.parts();
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] == p[j] {
                            continue;
                        }
                        let mut swapped = p.to_vec();
                        swapped.swap(i, j);
                        let other = forget(&nsqf(&IntVector(swapped.iter().map(|&x| x as i64).collect()))).unwrap();
                        let sum = base.add(&other).unwrap();
                        assert!(eval_sym(&sum, n as usize).unwrap().is_zero(), "{alpha} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn pieri_strips() {
        let strips = |m: &[u32], s| horizontal_strips(&part(m), s).unwrap();
        assert_eq!(strips(&[2], 1), vec![(part(&[2, 1]), 0), (part(&[3]), 1)]);
        assert_eq!(strips(&[2, 1], 1), vec![(part(&[3, 1]), 1)]);
        assert_eq!(strips(&[3], 2), vec![(part(&[3, 2]), 0), (part(&[4, 1]), 1), (part(&[5]), 1)]);
        assert_eq!(strips(&[1], 2), vec![(part(&[2, 1]), 0), (part(&[3]), 1)]);
        assert!(horizontal_strips(&part(&[2, 2]), 1).is_err());
    }

    #[test]
    fn classical_pieri_holds() {
        for size in 1..=5 {
            for mu in strict_partitions(size) {
                for s in 1..=3 {
                    assert!(classical_pieri_check(&mu, s).unwrap(), "{mu} {s}");
                }
            }
        }
    }

    #[test]
    fn refinement_into_star_functions() {
        for n in 1..=6 {
            for lambda in strict_partitions(n) {
                assert!(schur_p_refinement_check(&lambda, n as usize).unwrap(), "{lambda}");
            }
        }
        assert!(schur_p_refinement_check(&part(&[2, 2]), 4).is_err());
    }

    #[test]
    fn monomial_evaluation_is_faithful() {
        for n in 1..=6 {
            let rows: Vec<_> = compositions(n)
                .unwrap()
                .into_iter()
                .map(|c| eval_qsym(&QSymElement::basis_element(QBasis::M, c).unwrap(), n as usize).unwrap().terms().clone())
                .collect();
            assert_eq!(sparse_rank(&rows), rows.len());
        }
    }

    #[test]
    fn polynomial_json() {
        let p = q_gen_poly(1, 2);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"k":2,"terms":[{"exp":[0,1],"coeff":"2"},{"exp":[1,0],"coeff":"2"}]}"#
        );
        let _ = comp![1];
    }
}
