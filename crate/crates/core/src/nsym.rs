//! Noncommutative symmetric functions over exact rationals.
//!
//! Elements are finite sparse maps from compositions to coefficients tagged
//! with a basis. The complete basis `H` is free, so its coordinates serve as
//! the normal form for equality; every other basis converts into it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{coarsenings, odd_compositions, Composition};
use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, pow2, Rational};

pub type Terms = BTreeMap<Composition, Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    H,
    E,
    R,
    Q,
    Pi,
    S,
}

impl BasisTag {
    /// Bases in which the product of basis words is index concatenation.
    pub fn is_multiplicative(self) -> bool {
        matches!(self, BasisTag::H | BasisTag::E | BasisTag::Q)
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisTag::H => "H",
            BasisTag::E => "E",
            BasisTag::R => "R",
            BasisTag::Q => "Q",
            BasisTag::Pi => "Pi",
            BasisTag::S => "S",
        }
    }
}

impl std::str::FromStr for BasisTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => BasisTag::H,
            "E" => BasisTag::E,
            "R" => BasisTag::R,
            "Q" => BasisTag::Q,
            "Pi" => BasisTag::Pi,
            "S" => BasisTag::S,
            _ => return invalid(format!("unknown NSym basis {s:?}")),
        })
    }
}

pub(crate) fn add_term(terms: &mut Terms, key: Composition, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn add_scaled(into: &mut Terms, from: &Terms, factor: &Rational) {
    if factor.is_zero() {
        return;
    }
    for (k, c) in from {
        add_term(into, k.clone(), c * factor);
    }
}

/// Bilinear extension of index concatenation.
pub(crate) fn concat_product(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            add_term(&mut out, ka.concat(kb), ca * cb);
        }
    }
    out
}

/// An element of NSym (or of the peak algebra) in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSymElement {
    basis: BasisTag,
    terms: Terms,
}

impl NSymElement {
    pub fn zero(basis: BasisTag) -> Self {
        NSymElement { basis, terms: Terms::new() }
    }

    /// The unit, indexed by the empty composition.
    pub fn one(basis: BasisTag) -> Self {
        NSymElement::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: BasisTag, index: Composition) -> Self {
        NSymElement { basis, terms: [(index, Rational::one())].into() }
    }

    /// A word `X_{w_1} ⋯ X_{w_r}` in a multiplicative basis: zero letters are
    /// units and any negative letter annihilates the word.
    pub fn word(basis: BasisTag, word: &[i64]) -> Result<Self> {
        if !basis.is_multiplicative() {
            return Err(Error::Basis(format!("{} is not multiplicative", basis.name())));
        }
        if word.iter().any(|&w| w < 0) {
            return Ok(NSymElement::zero(basis));
        }
        let parts = word.iter().filter(|&&w| w > 0).map(|&w| w as u32).collect();
        Ok(NSymElement::basis_element(basis, Composition::from_parts_unchecked(parts)))
    }

    pub fn from_terms(basis: BasisTag, terms: impl IntoIterator<Item = (Composition, Rational)>) -> Self {
        let mut out = Terms::new();
        for (k, c) in terms {
            add_term(&mut out, k, c);
        }
        NSymElement { basis, terms: out }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(basis: BasisTag, terms: &[(i64, &[u32])]) -> Self {
        NSymElement::from_terms(
            basis,
            terms.iter().map(|(c, k)| (Composition::new(k.to_vec()).expect("positive parts"), int(*c))),
        )
    }

    pub(crate) fn from_map(basis: BasisTag, terms: Terms) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        NSymElement { basis, terms }
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn coeff(&self, index: &Composition) -> Rational {
        self.terms.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same_basis(&self, other: &NSymElement) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Basis(format!(
                "cannot combine {} and {} elements",
                self.basis.name(),
                other.basis.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &NSymElement) -> Result<NSymElement> {
        self.check_same_basis(other)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &Rational::one());
        Ok(NSymElement { basis: self.basis, terms })
    }

    pub fn sub(&self, other: &NSymElement) -> Result<NSymElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> NSymElement {
        let mut terms = Terms::new();
        add_scaled(&mut terms, &self.terms, factor);
        NSymElement { basis: self.basis, terms }
    }

    pub fn add_assign_scaled(&mut self, other: &NSymElement, factor: &Rational) -> Result<()> {
        self.check_same_basis(other)?;
        add_scaled(&mut self.terms, &other.terms, factor);
        Ok(())
    }

    /// Relabels the basis tag without touching coordinates.
    pub fn with_basis(self, basis: BasisTag) -> NSymElement {
        NSymElement { basis, terms: self.terms }
    }

    /// Every key has this size, or `None` for zero or mixed-degree elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut sizes = self.terms.keys().map(Composition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

impl fmt::Display for NSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.basis.name(), &self.terms)
    }
}

pub(crate) fn write_linear_combination(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    terms: &Terms,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if !abs.is_one() {
            write!(f, "{}*", rational::format(&abs))?;
        }
        write!(f, "{name}({k})")?;
    }
    Ok(())
}

pub fn multiply(a: &NSymElement, b: &NSymElement) -> Result<NSymElement> {
    a.check_same_basis(b)?;
    if !a.basis.is_multiplicative() {
        return Err(Error::Basis(format!("{} is not multiplicative; convert first", a.basis.name())));
    }
    Ok(NSymElement { basis: a.basis, terms: concat_product(&a.terms, &b.terms) })
}

// Per-degree expansions of single generators, grown on demand.
struct GeneratorTable {
    e_in_h: Vec<Terms>,
    h_in_e: Vec<Terms>,
    q_in_h: Vec<Terms>,
}

fn tables() -> &'static Mutex<GeneratorTable> {
    static TABLE: OnceLock<Mutex<GeneratorTable>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let unit: Terms = [(Composition::empty(), Rational::one())].into();
        Mutex::new(GeneratorTable { e_in_h: vec![unit.clone()], h_in_e: vec![unit.clone()], q_in_h: vec![unit] })
    })
}

fn single(n: u32) -> Terms {
    [(Composition::from_parts_unchecked(vec![n]), Rational::one())].into()
}

/// Solves `Σ_{i=0}^n (-1)^i X_i Y_{n-i} = δ_{n,0}` for `X_n` in the `Y` basis,
/// given `X_0..X_{n-1}` in the `Y` basis. The relation is symmetric in `X`/`Y`.
fn next_by_alternating_recurrence(lower: &[Terms], n: u32) -> Terms {
    // X_n = (-1)^{n+1} Σ_{i<n} (-1)^i X_i Y_{n-i}
    let mut out = Terms::new();
    for (i, xi) in lower.iter().enumerate() {
        let sign = if (n as usize + 1 + i).is_multiple_of(2) { int(1) } else { int(-1) };
        add_scaled(&mut out, &concat_product(xi, &single(n - i as u32)), &sign);
    }
    out
}

fn generator_in_h(kind: BasisTag, n: u32) -> Terms {
    let mut t = tables().lock().expect("generator table poisoned");
    while t.e_in_h.len() <= n as usize {
        let k = t.e_in_h.len() as u32;
        let next = next_by_alternating_recurrence(&t.e_in_h, k);
        t.e_in_h.push(next);
    }
    match kind {
        BasisTag::E => t.e_in_h[n as usize].clone(),
        BasisTag::Q => {
            while t.q_in_h.len() <= n as usize {
                let k = t.q_in_h.len() as u32;
                // Q_k = Σ_{j=0}^k E_j H_{k-j}
                let mut q = Terms::new();
                for j in 0..=k {
                    let h = if j == k { [(Composition::empty(), Rational::one())].into() } else { single(k - j) };
                    add_scaled(&mut q, &concat_product(&t.e_in_h[j as usize], &h), &Rational::one());
                }
                t.q_in_h.push(q);
            }
            t.q_in_h[n as usize].clone()
        }
        _ => unreachable!("only E and Q generators are tabulated in H"),
    }
}

fn h_generator_in_e(n: u32) -> Terms {
    let mut t = tables().lock().expect("generator table poisoned");
    while t.h_in_e.len() <= n as usize {
        let k = t.h_in_e.len() as u32;
        let next = next_by_alternating_recurrence(&t.h_in_e, k);
        t.h_in_e.push(next);
    }
    t.h_in_e[n as usize].clone()
}

fn word_expansion(index: &Composition, letter: impl Fn(u32) -> Terms) -> Terms {
    let mut acc: Terms = [(Composition::empty(), Rational::one())].into();
    for &p in index.parts() {
        acc = concat_product(&acc, &letter(p));
    }
    acc
}

/// Expands `Q_α` in the `H` basis.
pub fn q_word_in_h(index: &Composition) -> Terms {
    word_expansion(index, |p| generator_in_h(BasisTag::Q, p))
}

/// The unique `H`-basis expansion, the normal form used for equality.
/// `Pi` and `S` elements are routed through the peak-algebra modules.
pub fn to_h(a: &NSymElement) -> Result<NSymElement> {
    let mut out = Terms::new();
    match a.basis {
        BasisTag::H => return Ok(a.clone()),
        BasisTag::E => {
            for (k, c) in &a.terms {
                add_scaled(&mut out, &word_expansion(k, |p| generator_in_h(BasisTag::E, p)), c);
            }
        }
        BasisTag::Q => {
            for (k, c) in &a.terms {
                add_scaled(&mut out, &q_word_in_h(k), c);
            }
        }
        BasisTag::R => {
            // R_α = Σ_{β ≥ α} (-1)^{ℓ(β)-ℓ(α)} H_β over coarsenings β
            for (k, c) in &a.terms {
                for beta in coarsenings(k) {
                    let sign = if (k.len() - beta.len()) % 2 == 0 { c.clone() } else { -c };
                    add_term(&mut out, beta, sign);
                }
            }
        }
        BasisTag::Pi => {
            for (k, c) in &a.terms {
                let ribbons = crate::peak::pi_in_ribbons(&crate::peak::peak_set_of(k)?);
                add_scaled(&mut out, &to_h(&ribbons)?.terms, c);
            }
        }
        BasisTag::S => {
            for (k, c) in &a.terms {
                let q = crate::nsqf::nsqf_recursive(k)?;
                add_scaled(&mut out, &to_h(&q)?.terms, c);
            }
        }
    }
    Ok(NSymElement { basis: BasisTag::H, terms: out })
}

/// `H`-basis element rewritten in ribbons: `H_α = Σ_{β ≥ α} R_β`.
pub fn h_to_r(a: &NSymElement) -> Result<NSymElement> {
    if a.basis != BasisTag::H {
        return Err(Error::Basis("h_to_r expects an H-basis element".into()));
    }
    let mut out = Terms::new();
    for (k, c) in &a.terms {
        for beta in coarsenings(k) {
            add_term(&mut out, beta, c.clone());
        }
    }
    Ok(NSymElement { basis: BasisTag::R, terms: out })
}

/// `H`-basis element rewritten in the elementary basis.
pub fn h_to_e(a: &NSymElement) -> Result<NSymElement> {
    if a.basis != BasisTag::H {
        return Err(Error::Basis("h_to_e expects an H-basis element".into()));
    }
    let mut out = Terms::new();
    for (k, c) in &a.terms {
        add_scaled(&mut out, &word_expansion(k, h_generator_in_e), c);
    }
    Ok(NSymElement { basis: BasisTag::E, terms: out })
}

pub fn equals(a: &NSymElement, b: &NSymElement) -> Result<bool> {
    Ok(to_h(a)?.terms == to_h(b)?.terms)
}

pub fn is_zero_element(a: &NSymElement) -> Result<bool> {
    Ok(to_h(a)?.is_zero())
}

/// `Σ_{i+j=n} (-1)^i H_i H_j` for even `n`, a generator of the kernel of `Θ`.
pub fn euler_element(n: u32) -> Result<NSymElement> {
    if n < 2 || n % 2 == 1 {
        return invalid(format!("euler_element needs an even n >= 2, got {n}"));
    }
    let mut out = NSymElement::zero(BasisTag::H);
    for i in 0..=n as i64 {
        let w = NSymElement::word(BasisTag::H, &[i, n as i64 - i])?;
        out.add_assign_scaled(&w, &int(if i % 2 == 0 { 1 } else { -1 }))?;
    }
    Ok(out)
}

/// `Σ_{r+s=n} (-1)^r Q_r Q_s` in the `Q` basis; zero in NSym for every `n ≥ 1`.
pub fn euler_relation(n: u32) -> NSymElement {
    let mut out = Terms::new();
    for r in 0..=n {
        let w = NSymElement::word(BasisTag::Q, &[r as i64, (n - r) as i64]).expect("Q is multiplicative");
        add_scaled(&mut out, &w.terms, &int(if r % 2 == 0 { 1 } else { -1 }));
    }
    NSymElement { basis: BasisTag::Q, terms: out }
}

pub fn catalan(k: u32) -> BigInt {
    binomial(BigInt::from(2 * k), BigInt::from(k)) / BigInt::from(k + 1)
}

/// Expresses `Q_n` (even `n`) over odd compositions through Catalan numbers.
pub fn q_even_expansion(n: u32) -> Result<NSymElement> {
    if n == 0 || n % 2 == 1 {
        return invalid(format!("q_even_expansion needs a positive even n, got {n}"));
    }
    let mut terms = Terms::new();
    for alpha in odd_compositions(n)? {
        let l = alpha.len() as i64;
        let half = (l / 2 - 1) as u32;
        let sign = if half.is_multiple_of(2) { int(1) } else { int(-1) };
        let coeff = sign * Rational::from_integer(catalan(half)) * pow2(1 - l);
        add_term(&mut terms, alpha, coeff);
    }
    Ok(NSymElement { basis: BasisTag::Q, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use proptest::prelude::*;

    fn q(k: &[u32]) -> NSymElement {
        NSymElement::basis_element(BasisTag::Q, Composition::new(k.to_vec()).unwrap())
    }

    fn h(terms: &[(i64, &[u32])]) -> NSymElement {
        NSymElement::from_int_terms(BasisTag::H, terms)
    }

    #[test]
    fn products_concatenate() {
        assert_eq!(multiply(&q(&[2]), &q(&[2, 1])).unwrap(), q(&[2, 2, 1]));
        let sum = q(&[1]).add(&q(&[2])).unwrap();
        let expected = NSymElement::from_int_terms(BasisTag::Q, &[(1, &[1, 1]), (1, &[2, 1])]);
        assert_eq!(multiply(&sum, &q(&[1])).unwrap(), expected);
        let r = NSymElement::basis_element(BasisTag::R, comp![1]);
        assert!(matches!(multiply(&r, &r), Err(Error::Basis(_))));
        assert!(matches!(multiply(&q(&[1]), &h(&[(1, &[1])])), Err(Error::Basis(_))));
    }

    #[test]
    fn h_square_in_ribbons() {
        // inverting R_α = Σ_{β≥α} (-1)^{ℓ(β)-ℓ(α)} H_β at n = 2
        let h11 = multiply(&h(&[(1, &[1])]), &h(&[(1, &[1])])).unwrap();
        let ribbons = NSymElement::from_int_terms(BasisTag::R, &[(1, &[1, 1]), (1, &[2])]);
        assert!(equals(&h11, &ribbons).unwrap());
        assert_eq!(h_to_r(&h11).unwrap(), ribbons);
    }

    #[test]
    fn normal_forms() {
        let e2 = NSymElement::basis_element(BasisTag::E, comp![2]);
        assert_eq!(to_h(&e2).unwrap(), h(&[(1, &[1, 1]), (-1, &[2])]));
        assert_eq!(to_h(&q(&[1])).unwrap(), h(&[(2, &[1])]));
        let r21 = NSymElement::basis_element(BasisTag::R, comp![2, 1]);
        assert_eq!(to_h(&r21).unwrap(), h(&[(1, &[2, 1]), (-1, &[3])]));
    }

    #[test]
    fn equality_examples() {
        assert!(equals(&q(&[1, 1]), &q(&[2]).scale(&int(2))).unwrap());
        let e1 = NSymElement::basis_element(BasisTag::E, comp![1]);
        assert!(equals(&h(&[(1, &[1])]), &e1).unwrap());
        assert!(equals(&q(&[2, 1]), &q(&[1, 2])).unwrap());
        assert!(!equals(&h(&[(1, &[2, 1])]), &h(&[(1, &[1, 2])])).unwrap());
    }

    #[test]
    fn word_conventions() {
        assert_eq!(NSymElement::word(BasisTag::Q, &[2, 0, 1]).unwrap(), q(&[2, 1]));
        assert!(NSymElement::word(BasisTag::Q, &[2, -1]).unwrap().is_zero());
        assert!(NSymElement::word(BasisTag::R, &[2]).is_err());
    }

    #[test]
    fn euler_elements() {
        assert_eq!(euler_element(2).unwrap(), h(&[(2, &[2]), (-1, &[1, 1])]));
        // i = 0..4 expanded directly
        assert_eq!(
            euler_element(4).unwrap(),
            h(&[(2, &[4]), (-1, &[1, 3]), (1, &[2, 2]), (-1, &[3, 1])])
        );
        assert!(euler_element(3).is_err());
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!(catalan(0), BigInt::from(1));
        assert_eq!(catalan(1), BigInt::from(1));
        assert_eq!(catalan(4), BigInt::from(14));
    }

    #[test]
    fn even_q_over_odd_compositions() {
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(q_even_expansion(2).unwrap(), q(&[1, 1]).scale(&half));
        let four = q_even_expansion(4).unwrap();
        assert_eq!(four.coeff(&comp![1, 3]), half);
        assert_eq!(four.coeff(&comp![3, 1]), half);
        // from Q1Q3 - Q2Q2 + Q3Q1 = 2Q4 with Q2 = Q11/2
        assert_eq!(four.coeff(&comp![1, 1, 1, 1]), Rational::new((-1).into(), 8.into()));
        assert_eq!(four.len(), 3);
        assert_eq!(q_even_expansion(6).unwrap().len(), 8);
        for n in (2..=10).step_by(2) {
            assert!(equals(&q_even_expansion(n).unwrap(), &q(&[n])).unwrap(), "n = {n}");
        }
        assert!(q_even_expansion(5).is_err());
    }

    fn euler_sum(n: u32, from: u32, to: u32, odd_form: bool) -> NSymElement {
        let mut acc = NSymElement::zero(BasisTag::Q);
        for r in from..=to {
            let w = NSymElement::word(BasisTag::Q, &[r as i64, (n - r) as i64]).unwrap();
            let positive = if odd_form { (r - 1) % 2 == 0 } else { r % 2 == 0 };
            acc.add_assign_scaled(&w, &int(if positive { 1 } else { -1 })).unwrap();
        }
        acc
    }

    #[test]
    fn euler_relations() {
        for n in 1..=12 {
            assert!(is_zero_element(&euler_sum(n, 0, n, false)).unwrap(), "n = {n}");
            assert_eq!(euler_relation(n), euler_sum(n, 0, n, false));
        }
        for n in (3..=11).step_by(2) {
            assert!(is_zero_element(&euler_sum(n, 1, n - 1, true)).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn round_trips_through_h() {
        for n in 1..=8 {
            for alpha in crate::combinatorics::compositions(n).unwrap() {
                let ha = NSymElement::basis_element(BasisTag::H, alpha.clone());
                assert_eq!(to_h(&h_to_r(&ha).unwrap()).unwrap(), ha);
                assert_eq!(to_h(&h_to_e(&ha).unwrap()).unwrap(), ha);
            }
        }
    }

    #[test]
    fn odd_q_words_are_independent() {
        for n in 1..=10 {
            let vectors: Vec<Terms> =
                odd_compositions(n).unwrap().iter().map(q_word_in_h).collect();
            assert_eq!(
                crate::linalg::sparse_rank(&vectors) as u64,
                crate::combinatorics::fibonacci(n - 1),
                "n = {n}"
            );
        }
    }

    fn small_element() -> impl Strategy<Value = NSymElement> {
        prop::collection::vec((prop::collection::vec(1u32..3, 0..3), -3i64..4), 1..3).prop_map(|ts| {
            NSymElement::from_terms(
                BasisTag::H,
                ts.into_iter().map(|(k, c)| (Composition::new(k).unwrap(), int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn multiplication_is_associative_and_graded(a in small_element(), b in small_element(), c in small_element()) {
            let ab_c = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            if let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) {
                let ab = multiply(&a, &b).unwrap();
                if !ab.is_zero() {
                    prop_assert_eq!(ab.homogeneous_degree(), Some(da + db));
                }
            }
        }
    }
}
