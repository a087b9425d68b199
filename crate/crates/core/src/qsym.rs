//! Quasisymmetric functions: monomial, fundamental and peak bases, the
//! quasisymmetric Schur `P`/`Q`-functions, and the pairings with NSym.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    coarsenings, compositions, composition_from_descents, descent_set, is_peak_composition, peak_compositions,
    peak_set, refinements, Composition,
};
use crate::error::{invalid, Error, Result};
use crate::linalg::solve_in_span;
use crate::nsym::{add_scaled, add_term, write_linear_combination, BasisTag, NSymElement, Terms};
use crate::rational::{pow2, sign, Rational};
use crate::tableaux::pct_weight_sum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QBasis {
    M,
    F,
    K,
    SStar,
    SBarStar,
}

impl QBasis {
    pub fn name(self) -> &'static str {
        match self {
            QBasis::M => "M",
            QBasis::F => "F",
            QBasis::K => "K",
            QBasis::SStar => "SStar",
            QBasis::SBarStar => "SBarStar",
        }
    }

    fn peak_indexed(self) -> bool {
        matches!(self, QBasis::K | QBasis::SStar | QBasis::SBarStar)
    }
}

impl std::str::FromStr for QBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "M" => QBasis::M,
            "F" => QBasis::F,
            "K" => QBasis::K,
            "SStar" => QBasis::SStar,
            "SBarStar" => QBasis::SBarStar,
            _ => return invalid(format!("unknown QSym basis {s:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymElement {
    basis: QBasis,
    terms: Terms,
}

impl QSymElement {
    pub fn zero(basis: QBasis) -> Self {
        QSymElement { basis, terms: Terms::new() }
    }

    /// Rejects non-peak keys in peak-indexed bases.
    pub fn from_terms(basis: QBasis, terms: impl IntoIterator<Item = (Composition, Rational)>) -> Result<Self> {
        let mut map = Terms::new();
        for (k, c) in terms {
            if basis.peak_indexed() && !k.is_empty() && !is_peak_composition(&k) {
                return invalid(format!("{} is indexed by peak compositions, got {k}", basis.name()));
            }
            add_term(&mut map, k, c);
        }
        Ok(QSymElement { basis, terms: map })
    }

    pub fn basis_element(basis: QBasis, index: Composition) -> Result<Self> {
        Self::from_terms(basis, [(index, Rational::one())])
    }

    pub fn from_int_terms(basis: QBasis, terms: &[(i64, &[u32])]) -> Result<Self> {
        Self::from_terms(
            basis,
            terms.iter().map(|(c, k)| (Composition::new(k.to_vec()).expect("valid composition"), Rational::from_integer((*c).into()))),
        )
    }

    fn from_map(basis: QBasis, terms: Terms) -> Self {
        QSymElement { basis, terms }
    }

    pub fn basis(&self) -> QBasis {
        self.basis
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
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

    pub fn scale(&self, factor: &Rational) -> QSymElement {
        let mut out = Terms::new();
        add_scaled(&mut out, &self.terms, factor);
        QSymElement { basis: self.basis, terms: out }
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.basis.name(), &self.terms)
    }
}

fn require_peak(alpha: &Composition) -> Result<()> {
    if !is_peak_composition(alpha) {
        return invalid(format!("{alpha} is not a peak composition"));
    }
    Ok(())
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|x| big.contains(x))
}

/// `F_α = Σ_{D(β) ⊇ D(α)} M_β`.
pub fn f_to_m(alpha: &Composition) -> QSymElement {
    QSymElement::from_map(QBasis::M, refinements(alpha).into_iter().map(|b| (b, Rational::one())).collect())
}

/// `K_P = 2^{|P|+1} Σ_{P ⊆ D(β) △ (D(β)+1)} F_β`.
pub fn k_to_f(alpha: &Composition) -> Result<QSymElement> {
    require_peak(alpha)?;
    let p = descent_set(alpha);
    let factor = pow2(p.len() as i64 + 1);
    let mut out = Terms::new();
    for beta in compositions(alpha.size())? {
        let d = descent_set(&beta);
        let sym: Vec<u32> = (1..=alpha.size()).filter(|&i| d.contains(&i) != (i > 1 && d.contains(&(i - 1)))).collect();
        if is_subset(&p, &sym) {
            add_term(&mut out, beta, factor.clone());
        }
    }
    Ok(QSymElement::from_map(QBasis::F, out))
}

/// `K_P = Σ_{P ⊆ D(β) ∪ (D(β)+1)} 2^{ℓ(β)} M_β`.
pub fn k_to_m(alpha: &Composition) -> Result<QSymElement> {
    require_peak(alpha)?;
    let p = descent_set(alpha);
    let mut out = Terms::new();
    for beta in compositions(alpha.size())? {
        let d = descent_set(&beta);
        if p.iter().all(|&x| d.contains(&x) || d.contains(&(x - 1))) {
            let ell = beta.len() as i64;
            add_term(&mut out, beta, pow2(ell));
        }
    }
    Ok(QSymElement::from_map(QBasis::M, out))
}

/// `ϑ: F_α ↦ K_{P(α)}`.
pub fn vartheta(a: &QSymElement) -> Result<QSymElement> {
    if a.basis != QBasis::F {
        return Err(Error::Basis("vartheta expects an F-basis element".into()));
    }
    let mut out = Terms::new();
    for (k, c) in &a.terms {
        let key = if k.is_empty() {
            k.clone()
        } else {
            let p = peak_set(k);
            composition_from_descents(p.elems(), p.n())?
        };
        add_term(&mut out, key, c.clone());
    }
    Ok(QSymElement::from_map(QBasis::K, out))
}

/// `𝔖*_α = Σ_β (Σ_{T ∈ PCT(α, β)} 2^{p(T)-m(T)}) M_β`.
pub fn qsqf_star_m(alpha: &Composition) -> Result<QSymElement> {
    require_peak(alpha)?;
    let mut out = Terms::new();
    for beta in compositions(alpha.size())? {
        if &beta > alpha {
            continue;
        }
        let w = pct_weight_sum(alpha, &beta)?;
        add_term(&mut out, beta, w);
    }
    Ok(QSymElement::from_map(QBasis::M, out))
}

/// `𝔖*_α` over `F` by Möbius inversion of the `M`-coefficients.
pub fn qsqf_star_f(alpha: &Composition) -> Result<QSymElement> {
    let m = qsqf_star_m(alpha)?;
    let mut out = Terms::new();
    for beta in compositions(alpha.size())? {
        let mut c = Rational::zero();
        for gamma in coarsenings(&beta) {
            let x = m.coeff(&gamma);
            if !x.is_zero() {
                c += sign((beta.len() - gamma.len()) % 2 == 1) * x;
            }
        }
        add_term(&mut out, beta, c);
    }
    Ok(QSymElement::from_map(QBasis::F, out))
}

/// `𝔖̄*_α = 2^{ℓ(α)} 𝔖*_α`, in `M`.
pub fn qsqf_bar_star(alpha: &Composition) -> Result<QSymElement> {
    Ok(qsqf_star_m(alpha)?.scale(&pow2(alpha.len() as i64)))
}

/// Expansion in the monomial basis.
pub fn to_m(a: &QSymElement) -> Result<QSymElement> {
    let mut out = Terms::new();
    for (k, c) in &a.terms {
        if k.is_empty() {
            add_term(&mut out, k.clone(), c.clone());
            continue;
        }
        let e = match a.basis {
            QBasis::M => QSymElement::from_map(QBasis::M, [(k.clone(), Rational::one())].into()),
            QBasis::F => f_to_m(k),
            QBasis::K => k_to_m(k)?,
            QBasis::SStar => qsqf_star_m(k)?,
            QBasis::SBarStar => qsqf_bar_star(k)?,
        };
        add_scaled(&mut out, &e.terms, c);
    }
    Ok(QSymElement::from_map(QBasis::M, out))
}

/// Expansion in the fundamental basis by Möbius inversion of `F_α = Σ M_β`.
pub fn to_f(a: &QSymElement) -> Result<QSymElement> {
    if a.basis == QBasis::F {
        return Ok(a.clone());
    }
    let m = to_m(a)?;
    let degrees: std::collections::BTreeSet<u32> = m.terms.keys().map(Composition::size).collect();
    let mut out = Terms::new();
    for n in degrees {
        if n == 0 {
            add_term(&mut out, Composition::empty(), m.coeff(&Composition::empty()));
            continue;
        }
        for beta in compositions(n)? {
            let mut c = Rational::zero();
            for gamma in coarsenings(&beta) {
                let x = m.coeff(&gamma);
                if !x.is_zero() {
                    c += sign((beta.len() - gamma.len()) % 2 == 1) * x;
                }
            }
            add_term(&mut out, beta, c);
        }
    }
    Ok(QSymElement::from_map(QBasis::F, out))
}

type KTable = Arc<(Vec<Composition>, Vec<Terms>)>;

/// `K_α` for `α ∈ 𝒫𝒞_n` in `M` coordinates, cached per degree.
fn k_basis_in_m(n: u32) -> Result<KTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, KTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let index = peak_compositions(n)?;
    let vectors = index.iter().map(|a| Ok(k_to_m(a)?.terms)).collect::<Result<Vec<_>>>()?;
    let table = Arc::new((index, vectors));
    cache.lock().expect("cache poisoned").insert(n, table.clone());
    Ok(table)
}

/// Coordinates over `{K_α}` of a homogeneous degree-`n` element of the peak
/// subalgebra of QSym.
pub fn to_k(a: &QSymElement, n: u32) -> Result<QSymElement> {
    if a.basis == QBasis::K {
        return Ok(a.clone());
    }
    let m = to_m(a)?;
    if m.terms.keys().any(|k| k.size() != n) {
        return invalid(format!("element is not homogeneous of degree {n}"));
    }
    if m.is_zero() {
        return Ok(QSymElement::zero(QBasis::K));
    }
    let table = k_basis_in_m(n)?;
    let coords = solve_in_span(&table.1, &m.terms)
        .ok_or_else(|| Error::NotInPeakAlgebra("element is not in the span of the peak functions".into()))?;
    Ok(QSymElement::from_map(QBasis::K, table.0.iter().cloned().zip(coords).filter(|(_, c)| !c.is_zero()).collect()))
}

fn kronecker(left: &Terms, right: &Terms) -> Rational {
    left.iter().filter_map(|(k, c)| right.get(k).map(|d| c * d)).sum()
}

fn check_pairing(a: &NSymElement, expected: BasisTag, f: &QSymElement, dual: QBasis) -> Result<()> {
    if a.basis() != expected || f.basis != dual {
        return Err(Error::Basis(format!(
            "pairing expects {} against {}, got {} against {}",
            expected.name(),
            dual.name(),
            a.basis().name(),
            f.basis.name()
        )));
    }
    Ok(())
}

/// `⟨H_α, M_β⟩ = δ_{αβ}`.
pub fn pairing_hm(a: &NSymElement, f: &QSymElement) -> Result<Rational> {
    check_pairing(a, BasisTag::H, f, QBasis::M)?;
    Ok(kronecker(a.terms(), &f.terms))
}

/// `⟨R_α, F_β⟩ = δ_{αβ}`.
pub fn pairing_rf(a: &NSymElement, f: &QSymElement) -> Result<Rational> {
    check_pairing(a, BasisTag::R, f, QBasis::F)?;
    Ok(kronecker(a.terms(), &f.terms))
}

/// `[Π_α, K_β] = δ_{αβ}` over peak compositions.
pub fn pairing_pik(a: &NSymElement, f: &QSymElement) -> Result<Rational> {
    check_pairing(a, BasisTag::Pi, f, QBasis::K)?;
    Ok(kronecker(a.terms(), &f.terms))
}

pub type TensorTerms = BTreeMap<(Composition, Composition), Rational>;

/// The degree-`n` part of `Σ_α M_α ⊗ Q_α` and of `Σ_P K_P ⊗ Π_P`, both in
/// `M ⊗ (odd Q)` coordinates.
pub fn dual_bases_sides(n: u32) -> Result<(TensorTerms, TensorTerms)> {
    let mut lhs = BTreeMap::new();
    for alpha in compositions(n)? {
        let q = crate::peak::odd_q_coordinates(&NSymElement::basis_element(BasisTag::Q, alpha.clone()))?;
        for (g, c) in q.terms() {
            lhs.insert((alpha.clone(), g.clone()), c.clone());
        }
    }
    let mut rhs: BTreeMap<(Composition, Composition), Rational> = BTreeMap::new();
    for alpha in peak_compositions(n)? {
        let k = k_to_m(&alpha)?;
        let pi = crate::peak::pi_in_q_odd(&crate::peak::peak_set_of(&alpha)?)?;
        for (m, c) in &k.terms {
            for (g, d) in pi.terms() {
                let e = rhs.entry((m.clone(), g.clone())).or_insert_with(Rational::zero);
                *e += c * d;
            }
        }
    }
    rhs.retain(|_, v| !v.is_zero());
    lhs.retain(|_, v| !v.is_zero());
    Ok((lhs, rhs))
}
