//! The peak subalgebra: the `Π` basis, the projection `Θ`, and closed-form
//! conversions between `Q` words and `Π`.
//!
//! `Π` elements are indexed by peak compositions, `Π_α := Π_{D(α)}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::combinatorics::{
    compositions, descent_set, is_peak_composition, odd_compositions, peak_compositions, peak_set, Composition,
    PeakSet,
};
use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::nsym::{self, add_scaled, add_term, BasisTag, NSymElement, Terms};
use crate::rational::{pow2, Rational};

/// The peak set indexed by a peak composition.
pub fn peak_set_of(alpha: &Composition) -> Result<PeakSet> {
    if !is_peak_composition(alpha) {
        return invalid(format!("{alpha} is not a peak composition"));
    }
    PeakSet::new(alpha.size(), descent_set(alpha))
}

/// `Π_P = Σ_{P(α)=P} R_α`.
pub fn pi_in_ribbons(p: &PeakSet) -> NSymElement {
    let terms = compositions(p.n())
        .unwrap_or_default()
        .into_iter()
        .filter(|a| &peak_set(a) == p)
        .map(|a| (a, Rational::from_integer(1.into())));
    NSymElement::from_terms(BasisTag::R, terms)
}

/// `Θ: H_α ↦ Q_α`.
pub fn theta(a: &NSymElement) -> Result<NSymElement> {
    if a.basis() != BasisTag::H {
        return Err(Error::Basis("theta expects an H-basis element".into()));
    }
    Ok(a.clone().with_basis(BasisTag::Q))
}

/// `D + 1` restricted to `[n-1]`.
fn shifted(d: &[u32], n: u32) -> Vec<u32> {
    d.iter().map(|x| x + 1).filter(|&x| x < n).collect()
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// `Θ(R_α) = Σ_{β∈𝒫𝒞, D(β) ⊆ D(α) △ (D(α)+1)} 2^{ℓ(β)} Π_β`.
pub fn theta_ribbon(alpha: &Composition) -> Result<NSymElement> {
    let n = alpha.size();
    let d = descent_set(alpha);
    let d1 = shifted(&d, n);
    let mut sym: Vec<u32> = d
        .iter()
        .filter(|x| d1.binary_search(x).is_err())
        .chain(d1.iter().filter(|x| d.binary_search(x).is_err()))
        .copied()
        .collect();
    sym.sort_unstable();
    let terms = peak_compositions(n)?
        .into_iter()
        .filter(|b| is_subset(&descent_set(b), &sym))
        .map(|b| {
            let c = pow2(b.len() as i64);
            (b, c)
        });
    Ok(NSymElement::from_terms(BasisTag::Pi, terms))
}

/// `Q_α = 2^{ℓ(α)} Σ_{β∈𝒫𝒞, D(β) ⊆ D(α) ∪ (D(α)+1)} Π_β`.
pub fn q_to_pi(alpha: &Composition) -> Result<NSymElement> {
    if alpha.is_empty() {
        return Ok(NSymElement::one(BasisTag::Pi));
    }
    let n = alpha.size();
    let d = descent_set(alpha);
    let mut union = d.clone();
    union.extend(shifted(&d, n));
    union.sort_unstable();
    union.dedup();
    let c = pow2(alpha.len() as i64);
    let terms = peak_compositions(n)?
        .into_iter()
        .filter(|b| is_subset(&descent_set(b), &union))
        .map(|b| (b, c.clone()));
    Ok(NSymElement::from_terms(BasisTag::Pi, terms))
}

/// `Π`-coordinates of a `Q`-basis element through the closed form.
pub fn q_element_to_pi(a: &NSymElement) -> Result<NSymElement> {
    if a.basis() != BasisTag::Q {
        return Err(Error::Basis("expected a Q-basis element".into()));
    }
    let mut out = Terms::new();
    for (k, c) in a.terms() {
        add_scaled(&mut out, q_to_pi(k)?.terms(), c);
    }
    Ok(NSymElement::from_map(BasisTag::Pi, out))
}

/// `Π`-coordinates read off the ribbon expansion: an element lies in the
/// peak algebra iff its `R`-coefficients are constant on peak-set classes.
pub fn pi_coordinates_via_ribbons(a: &NSymElement) -> Result<NSymElement> {
    let ribbons = nsym::h_to_r(&nsym::to_h(a)?)?;
    let mut out = Terms::new();
    let mut by_degree: BTreeMap<u32, Vec<(&Composition, &Rational)>> = BTreeMap::new();
    for (k, c) in ribbons.terms() {
        by_degree.entry(k.size()).or_default().push((k, c));
    }
    for (n, terms) in by_degree {
        if n == 0 {
            for (k, c) in terms {
                add_term(&mut out, k.clone(), c.clone());
            }
            continue;
        }
        let coeffs: HashMap<&Composition, &Rational> = terms.into_iter().collect();
        let zero = Rational::zero();
        for alpha in compositions(n)? {
            let c = coeffs.get(&alpha).copied().unwrap_or(&zero);
            let rep = peak_set(&alpha).to_composition();
            let rc = coeffs.get(&rep).copied().unwrap_or(&zero);
            if c != rc {
                return Err(Error::NotInPeakAlgebra(format!(
                    "R({alpha}) has coefficient {c} but R({rep}) has {rc}"
                )));
            }
            if alpha == rep {
                add_term(&mut out, alpha, c.clone());
            }
        }
    }
    Ok(NSymElement::from_map(BasisTag::Pi, out))
}

/// `Π`-coordinates of any element of the peak algebra.
pub fn to_pi(a: &NSymElement) -> Result<NSymElement> {
    match a.basis() {
        BasisTag::Pi => Ok(a.clone()),
        BasisTag::Q => q_element_to_pi(a),
        BasisTag::S => {
            let mut out = NSymElement::zero(BasisTag::Pi);
            for (k, c) in a.terms() {
                out.add_assign_scaled(&q_element_to_pi(&crate::nsqf::nsqf_recursive(k)?)?, c)?;
            }
            Ok(out)
        }
        _ => pi_coordinates_via_ribbons(a),
    }
}

/// Rows: `Q_γ` for odd `γ ⊨ n` in `Π`-coordinates over `𝒫𝒞_n`, and its inverse.
struct OddQTable {
    odd: Vec<Composition>,
    peak: Vec<Composition>,
    inverse: Matrix,
}

fn odd_q_table(n: u32) -> Result<Arc<OddQTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<OddQTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let odd = odd_compositions(n)?;
    let peak = peak_compositions(n)?;
    let rows = odd
        .iter()
        .map(|g| {
            let pi = q_to_pi(g)?;
            Ok(peak.iter().map(|b| pi.coeff(b)).collect())
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    let inverse = Matrix::from_rows(rows)
        .inverse()
        .map_err(|_| Error::Internal(format!("odd Q words of degree {n} are not a basis")))?;
    let table = Arc::new(OddQTable { odd, peak, inverse });
    cache.lock().expect("cache poisoned").insert(n, table.clone());
    Ok(table)
}

/// Coordinates of `Π_P` over `{Q_α : α odd}`.
pub fn pi_in_q_odd(p: &PeakSet) -> Result<NSymElement> {
    let table = odd_q_table(p.n())?;
    let row = table
        .peak
        .iter()
        .position(|b| b == &p.to_composition())
        .ok_or_else(|| Error::Internal(format!("{p} missing from its degree table")))?;
    let terms = table.odd.iter().enumerate().map(|(j, g)| (g.clone(), table.inverse.get(row, j).clone()));
    Ok(NSymElement::from_terms(BasisTag::Q, terms))
}

/// Coordinates of a peak-algebra element over odd-composition `Q` words.
pub fn odd_q_coordinates(a: &NSymElement) -> Result<NSymElement> {
    let pi = to_pi(a)?;
    let mut out = Terms::new();
    for (k, c) in pi.terms() {
        if k.is_empty() {
            add_term(&mut out, k.clone(), c.clone());
            continue;
        }
        add_scaled(&mut out, pi_in_q_odd(&peak_set_of(k)?)?.terms(), c);
    }
    Ok(NSymElement::from_map(BasisTag::Q, out))
}

/// The matrix `M_n(Q, Π)` over `𝒫𝒞_n` in lexicographic order.
pub fn q_pi_matrix(n: u32) -> Result<Matrix> {
    let index = peak_compositions(n)?;
    let rows = index
        .iter()
        .map(|a| {
            let pi = q_to_pi(a)?;
            Ok(index.iter().map(|b| pi.coeff(b)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::linalg::sparse_rank;
    use crate::rational::int;

    fn pi(terms: &[(i64, &[u32])]) -> NSymElement {
        NSymElement::from_int_terms(BasisTag::Pi, terms)
    }

    #[test]
    fn pi_as_ribbons() {
        let r = |t: &[(i64, &[u32])]| NSymElement::from_int_terms(BasisTag::R, t);
        assert_eq!(pi_in_ribbons(&PeakSet::empty(2)), r(&[(1, &[2]), (1, &[1, 1])]));
        assert_eq!(pi_in_ribbons(&PeakSet::new(3, vec![2]).unwrap()), r(&[(1, &[2, 1])]));
    }

    #[test]
    fn q_n_is_twice_pi_empty() {
        for n in 1..=8 {
            let qn = NSymElement::basis_element(BasisTag::Q, comp![n]);
            let twice = pi_in_ribbons(&PeakSet::empty(n)).scale(&int(2));
            assert!(nsym::equals(&qn, &twice).unwrap());
            assert!(nsym::equals(&theta(&NSymElement::basis_element(BasisTag::H, comp![n])).unwrap(), &twice).unwrap());
        }
    }

    #[test]
    fn theta_examples() {
        let h21 = NSymElement::basis_element(BasisTag::H, comp![2, 1]);
        assert_eq!(theta(&h21).unwrap(), NSymElement::basis_element(BasisTag::Q, comp![2, 1]));
        let killed = theta(&nsym::euler_element(2).unwrap()).unwrap();
        assert!(nsym::is_zero_element(&killed).unwrap());
        let r21 = NSymElement::basis_element(BasisTag::R, comp![2, 1]);
        let expected = NSymElement::from_int_terms(BasisTag::Q, &[(1, &[2, 1]), (-1, &[3])]);
        assert_eq!(theta(&nsym::to_h(&r21).unwrap()).unwrap(), expected);
        assert!(theta(&r21).is_err());
    }

    #[test]
    fn theta_kills_even_euler_elements() {
        for n in (2..=10).step_by(2) {
            assert!(nsym::is_zero_element(&theta(&nsym::euler_element(n).unwrap()).unwrap()).unwrap());
        }
    }

    #[test]
    fn theta_of_ribbons() {
        assert_eq!(theta_ribbon(&comp![3]).unwrap(), pi(&[(2, &[3])]));
        assert_eq!(theta_ribbon(&comp![2, 1]).unwrap(), pi(&[(4, &[2, 1]), (2, &[3])]));
        // Θ(R_11) = Q_11 - Q_2 through both paths
        let r11 = NSymElement::basis_element(BasisTag::R, comp![1, 1]);
        let via_q = q_element_to_pi(&theta(&nsym::to_h(&r11).unwrap()).unwrap()).unwrap();
        assert_eq!(theta_ribbon(&comp![1, 1]).unwrap(), via_q);
    }

    #[test]
    fn theta_ribbon_matches_theta() {
        for n in 1..=7 {
            for a in compositions(n).unwrap() {
                let r = NSymElement::basis_element(BasisTag::R, a.clone());
                let q = theta(&nsym::to_h(&r).unwrap()).unwrap();
                assert_eq!(theta_ribbon(&a).unwrap(), q_element_to_pi(&q).unwrap(), "{a}");
            }
        }
    }

    #[test]
    fn q_in_pi_examples() {
        assert_eq!(q_to_pi(&comp![2, 2]).unwrap(), pi(&[(4, &[2, 2]), (4, &[3, 1]), (4, &[4])]));
        assert_eq!(q_to_pi(&comp![6]).unwrap(), pi(&[(2, &[6])]));
        assert_eq!(
            q_to_pi(&comp![2, 2, 1]).unwrap(),
            pi(&[(8, &[2, 2, 1]), (8, &[2, 3]), (8, &[3, 2]), (8, &[4, 1]), (8, &[5])])
        );
    }

    #[test]
    fn closed_form_agrees_with_ribbon_reading() {
        for n in 1..=7 {
            for a in compositions(n).unwrap() {
                let q = NSymElement::basis_element(BasisTag::Q, a.clone());
                assert_eq!(q_to_pi(&a).unwrap(), pi_coordinates_via_ribbons(&q).unwrap(), "{a}");
            }
        }
    }

    #[test]
    fn ribbon_reading_rejects_non_peak_elements() {
        let h2 = NSymElement::basis_element(BasisTag::H, comp![2]);
        assert!(matches!(pi_coordinates_via_ribbons(&h2), Err(Error::NotInPeakAlgebra(_))));
    }

    #[test]
    fn pi_over_odd_q() {
        for n in [1u32, 3, 5, 7] {
            let half = Rational::new(1.into(), 2.into());
            let expected = NSymElement::basis_element(BasisTag::Q, comp![n]).scale(&half);
            assert_eq!(pi_in_q_odd(&PeakSet::empty(n)).unwrap(), expected);
        }
        for n in 1..=8 {
            for p in crate::combinatorics::peak_sets(n).unwrap() {
                let coords = pi_in_q_odd(&p).unwrap();
                let back = q_element_to_pi(&coords).unwrap();
                assert_eq!(back, NSymElement::basis_element(BasisTag::Pi, p.to_composition()));
                assert!(nsym::equals(&coords, &pi_in_ribbons(&p)).unwrap());
            }
        }
    }

    #[test]
    fn pi_basis_is_independent() {
        for n in 1..=8 {
            let vectors: Vec<Terms> = crate::combinatorics::peak_sets(n)
                .unwrap()
                .iter()
                .map(|p| nsym::to_h(&pi_in_ribbons(p)).unwrap().into_terms())
                .collect();
            assert_eq!(sparse_rank(&vectors) as u64, crate::combinatorics::fibonacci(n - 1));
        }
    }

    #[test]
    fn q_pi_matrix_is_upper_triangular() {
        for n in 1..=8 {
            assert!(q_pi_matrix(n).unwrap().is_upper_triangular());
        }
    }
}
